//! Character tables of symmetric groups by the Murnaghan–Nakayama rule on
//! beta-sets.

use std::collections::HashMap;

/// Partitions of `n` in reverse lexicographic order, `[n]` first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Size of the conjugacy class of cycle type `mu` in `S_n`: `n! / z_mu`.
pub fn class_size(mu: &[usize]) -> u64 {
    let n: usize = mu.iter().sum();
    let mut z: u64 = 1;
    let mut i = 0;
    while i < mu.len() {
        let part = mu[i];
        let mult = mu[i..].iter().take_while(|&&x| x == part).count();
        z *= (part as u64).pow(mult as u32) * (1..=mult as u64).product::<u64>();
        i += mult;
    }
    (1..=n as u64).product::<u64>() / z
}

/// `chi^lambda(mu)`.
pub fn mn_character(lambda: &[usize], mu: &[usize]) -> i64 {
    let len = lambda.len();
    // beta-set of lambda with `len` beads
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i).collect();
    let mut memo = HashMap::new();
    mn(beta, mu, &mut memo)
}

fn mn(beta: Vec<usize>, mu: &[usize], memo: &mut HashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    if let Some(&v) = memo.get(&(beta.clone(), mu.len())) {
        return v;
    }
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        // removing a rim hook of length r moves bead b to b - r; the leg
        // length is the number of beads jumped over
        let jumped = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut next = beta.clone();
        next[idx] = b - r;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        total += sign * mn(next, rest, memo);
    }
    memo.insert((beta, mu.len()), total);
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn s3_table() {
        let ps = partitions(3);
        let table: Vec<Vec<i64>> = ps.iter().map(|l| ps.iter().map(|m| mn_character(l, m)).collect()).collect();
        // rows [3], [2,1], [1,1,1]; columns 3-cycles, transpositions, identity
        assert_eq!(table, vec![vec![1, 1, 1], vec![-1, 0, 2], vec![1, -1, 1]]);
        assert_eq!(ps.iter().map(|m| class_size(m)).collect::<Vec<_>>(), vec![2, 3, 1]);
    }

    #[test]
    fn degrees_are_hook_lengths() {
        // chi^lambda(1^n) squared sums to n!
        for n in 1..=7 {
            let id = vec![1; n];
            let s: i64 = partitions(n).iter().map(|l| mn_character(l, &id).pow(2)).sum();
            assert_eq!(s, (1..=n as i64).product::<i64>());
        }
    }
}
