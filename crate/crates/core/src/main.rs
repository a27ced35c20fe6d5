use clap::Parser;
use hodge_covers::cli::{run, Cli, EXIT_INPUT};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // usage errors are input errors; --help and --version are not
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let (out, err, code) = run(&cli);
    print!("{out}");
    eprint!("{err}");
    std::process::exit(code);
}
