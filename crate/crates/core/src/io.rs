//! JSON input documents.
//!
//! ```json
//! {
//!   "arrangement": { "dim": 2, "hyperplanes": [ { "normal": ["1", "0", "0"], "multiplicity": 1 } ] },
//!   "base": { "type": "projective_space", "dim": 2 },
//!   "cover": { "type": "cyclic", "degree": 5 },
//!   "monodromy": [[1], [1], [1], [1], [1]],
//!   "options": { "format": "json" }
//! }
//! ```
//!
//! `base` defaults to the projective space of the arrangement; `monodromy`
//! defaults, for cyclic covers, to the multiplicities mod `d` (and to `1` at
//! every point of a product of lines). Rationals are strings.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, Hyperplane};
use crate::cover::{AbelianGroup, Base, CoverSpec};
use crate::{Error, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrangement: Option<ArrangementBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseBlock>,
    pub cover: CoverBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementBlock {
    pub dim: usize,
    pub hyperplanes: Vec<HyperplaneBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HyperplaneBlock {
    pub normal: Vec<Rational>,
    #[serde(default = "one")]
    pub multiplicity: u64,
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BaseBlock {
    ProjectiveSpace { dim: usize },
    ProductP1 { points_per_factor: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoverBlock {
    Cyclic { degree: u64 },
    Abelian { orders: Vec<u64> },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Output format when `--format` is not given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

fn field_error(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("field `{field}`: {msg}"))
}

/// Parses a document, reporting `source:line:column: field `path`: message`
/// on schema errors.
pub fn parse_document(text: &str, source: &str) -> Result<InputDocument, Error> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let (line, column) = (inner.line(), inner.column());
        let msg = inner.to_string();
        let msg = msg.strip_suffix(&format!(" at line {line} column {column}")).unwrap_or(&msg);
        if path == "." {
            Error::Input(format!("{source}:{line}:{column}: {msg}"))
        } else {
            Error::Input(format!("{source}:{line}:{column}: field `{path}`: {msg}"))
        }
    })
}

impl InputDocument {
    /// Cross-validates the blocks and builds the cover.
    pub fn to_spec(&self) -> Result<CoverSpec, Error> {
        let base = match (&self.base, &self.arrangement) {
            (Some(BaseBlock::ProductP1 { .. }), Some(_)) => {
                return Err(field_error("arrangement", "not allowed with a product_p1 base"));
            }
            (Some(BaseBlock::ProductP1 { points_per_factor }), None) => {
                if points_per_factor.is_empty() {
                    return Err(field_error("base.points_per_factor", "need at least one factor"));
                }
                Base::ProductP1 { points_per_factor: points_per_factor.clone() }
            }
            (Some(BaseBlock::ProjectiveSpace { .. }), None) | (None, None) => {
                return Err(field_error("arrangement", "required for a projective_space base"));
            }
            (b, Some(a)) => {
                if let Some(BaseBlock::ProjectiveSpace { dim }) = b {
                    if *dim != a.dim {
                        return Err(field_error("base.dim", format!("{dim} differs from arrangement.dim {}", a.dim)));
                    }
                }
                Base::ProjectiveSpace(build_arrangement(a)?)
            }
        };
        let group = match &self.cover {
            CoverBlock::Cyclic { degree } => {
                AbelianGroup::cyclic(*degree).map_err(|e| field_error("cover.degree", e))?
            }
            CoverBlock::Abelian { orders } => {
                AbelianGroup::new(orders.clone()).map_err(|e| field_error("cover.orders", e))?
            }
        };
        let monodromy = match (&self.monodromy, &self.cover, &base) {
            (Some(m), _, _) => {
                for (j, g) in m.iter().enumerate() {
                    if g.len() != group.rank() {
                        return Err(field_error(
                            &format!("monodromy[{j}]"),
                            format!("has {} entries, the group has rank {}", g.len(), group.rank()),
                        ));
                    }
                }
                m.clone()
            }
            (None, CoverBlock::Cyclic { .. }, Base::ProjectiveSpace(a)) => {
                a.multiplicities().iter().map(|&m| vec![m as i64]).collect()
            }
            (None, CoverBlock::Cyclic { .. }, Base::ProductP1 { .. }) => vec![vec![1]; base.component_count()],
            (None, CoverBlock::Abelian { .. }, _) => {
                return Err(field_error("monodromy", "required for abelian covers"));
            }
        };
        if monodromy.len() != base.component_count() {
            return Err(field_error(
                "monodromy",
                format!("{} elements for {} branch components", monodromy.len(), base.component_count()),
            ));
        }
        CoverSpec::new(base, group, monodromy).map_err(|e| match e {
            Error::InvalidCover(m) | Error::Argument(m) => field_error("monodromy", m),
            other => other,
        })
    }

    /// The document with defaults filled in and monodromy reduced, for
    /// echoing.
    pub fn resolved(&self, spec: &CoverSpec) -> InputDocument {
        let mut doc = self.clone();
        doc.base = Some(match spec.base() {
            Base::ProjectiveSpace(a) => BaseBlock::ProjectiveSpace { dim: a.dim() },
            Base::ProductP1 { points_per_factor } => BaseBlock::ProductP1 { points_per_factor: points_per_factor.clone() },
        });
        doc.monodromy = Some(spec.monodromy().iter().map(|g| g.iter().map(|&x| x as i64).collect()).collect());
        doc
    }

    pub fn from_spec(spec: &CoverSpec) -> InputDocument {
        let arrangement = spec.arrangement().map(|a| ArrangementBlock {
            dim: a.dim(),
            hyperplanes: a
                .hyperplanes()
                .iter()
                .map(|h| HyperplaneBlock { normal: h.normal().to_vec(), multiplicity: h.multiplicity() })
                .collect(),
        });
        let cover = match spec.group().cyclic_order() {
            Some(d) => CoverBlock::Cyclic { degree: d },
            None => CoverBlock::Abelian { orders: spec.group().orders().to_vec() },
        };
        let doc = InputDocument { arrangement, base: None, cover, monodromy: None, options: Options::default() };
        doc.resolved(spec)
    }
}

fn build_arrangement(a: &ArrangementBlock) -> Result<Arrangement, Error> {
    let hs = a
        .hyperplanes
        .iter()
        .enumerate()
        .map(|(j, h)| {
            let field = format!("arrangement.hyperplanes[{j}]");
            if h.normal.len() != a.dim + 1 {
                return Err(field_error(
                    &format!("{field}.normal"),
                    format!("{} coordinates, expected dim + 1 = {}", h.normal.len(), a.dim + 1),
                ));
            }
            Hyperplane::new(h.normal.clone(), h.multiplicity).map_err(|e| field_error(&field, e))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Arrangement::new(a.dim, hs).map_err(|e| match e {
        Error::ScaleExceeded(_) => e,
        other => field_error("arrangement", other),
    })
}

/// Reads, parses and validates a document.
pub fn load(path: &Path) -> Result<(InputDocument, CoverSpec), Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: cannot read: {e}", path.display())))?;
    let doc = parse_document(&text, &path.display().to_string())?;
    let spec = doc
        .to_spec()
        .map_err(|e| match e {
            Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
            other => other,
        })?;
    Ok((doc, spec))
}
