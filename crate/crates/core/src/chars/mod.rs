//! Character tables, Galois orbits of characters, the invariant `Phi` and the
//! rational span `sigma` of a complex representation.
//!
//! Abelian groups are handled automatically (Schur indices 1). Other groups
//! come from built-in tables (symmetric groups, the quaternion group) or from
//! a JSON file; Schur indices are then part of the input.

pub mod symmetric;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::number::lcm;
use crate::algebra::{Cyclotomic, Rational};
use crate::cover::AbelianGroup;
use crate::Error;

/// A conjugacy class: label and size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub label: String,
    pub size: u64,
}

/// One irreducible complex character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleCharacter {
    pub label: String,
    /// Values on the classes, in table order.
    pub values: Vec<Cyclotomic>,
    pub degree: u64,
    pub schur_index: u64,
}

/// A verified character table. The first class is the identity.
#[derive(Clone, Debug)]
pub struct CharTable {
    name: String,
    order: u64,
    classes: Vec<ConjugacyClass>,
    characters: Vec<IrreducibleCharacter>,
    /// `orbit_of[i]`: index into `orbits`.
    orbit_of: Vec<usize>,
    orbits: Vec<GaloisOrbit>,
}

/// A Galois orbit of irreducible characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisOrbit {
    /// Character indices, increasing.
    pub members: Vec<usize>,
    /// lcm of the conductors of the values.
    pub conductor: u64,
    /// `[Q(chi) : Q]`.
    pub size: u64,
    pub schur_index: u64,
    pub degree: u64,
    /// `|orbit| m chi(1)`: dimension of the irreducible rational
    /// representation carrying the orbit.
    pub sigma: u64,
}

impl CharTable {
    /// Builds a table and verifies it: identity class first, both
    /// orthogonality relations, `sum chi(1)^2 = |G|`, Galois stability, and
    /// Schur indices positive, dividing `chi(1)` and constant on orbits.
    pub fn new(
        name: impl Into<String>,
        classes: Vec<ConjugacyClass>,
        characters: Vec<IrreducibleCharacter>,
    ) -> Result<Self, Error> {
        let reject = |msg: String| Err(Error::TableRejected(msg));
        if classes.is_empty() || characters.len() != classes.len() {
            return reject(format!("{} characters for {} classes", characters.len(), classes.len()));
        }
        if classes[0].size != 1 {
            return reject("the first class must be the identity".into());
        }
        if classes.iter().any(|c| c.size == 0) {
            return reject("class sizes must be positive".into());
        }
        let order: u64 = classes.iter().map(|c| c.size).sum();
        let conductor = characters
            .iter()
            .flat_map(|c| c.values.iter().map(Cyclotomic::conductor))
            .fold(1, lcm);
        let lift = |x: &Cyclotomic| x.embed(conductor).expect("conductor is a common multiple");
        let mut rows: Vec<Vec<Cyclotomic>> = Vec::with_capacity(characters.len());
        for c in &characters {
            if c.values.len() != classes.len() {
                return reject(format!("character {} has {} values for {} classes", c.label, c.values.len(), classes.len()));
            }
            if c.values[0] != Cyclotomic::rational(1, Rational::from(c.degree as i64)) || c.degree == 0 {
                return reject(format!("character {}: value at the identity must equal its degree", c.label));
            }
            if c.schur_index == 0 || c.degree % c.schur_index != 0 {
                return reject(format!("character {}: Schur index must be positive and divide the degree", c.label));
            }
            rows.push(c.values.iter().map(lift).collect());
        }
        if characters.iter().map(|c| c.degree * c.degree).sum::<u64>() != order {
            return reject("sum of squared degrees differs from the group order".into());
        }

        let inner = |a: &[Cyclotomic], b: &[Cyclotomic], weights: &dyn Fn(usize) -> u64| -> Cyclotomic {
            let mut acc = Cyclotomic::zero(conductor);
            for k in 0..a.len() {
                let w = Cyclotomic::rational(conductor, Rational::from(weights(k) as i64));
                acc = &acc + &(&w * &(&a[k] * &b[k].conj()));
            }
            acc
        };
        // rows: sum_C |C| chi(C) conj(psi(C)) = |G| delta
        for i in 0..rows.len() {
            for j in i..rows.len() {
                let v = inner(&rows[i], &rows[j], &|k| classes[k].size);
                let expected = if i == j { order } else { 0 };
                if v != Cyclotomic::rational(conductor, Rational::from(expected as i64)) {
                    return reject(format!(
                        "row orthogonality fails for {} and {}",
                        characters[i].label, characters[j].label
                    ));
                }
            }
        }
        // columns: sum_chi chi(g) conj(chi(h)) = |C_G(g)| delta
        let cols: Vec<Vec<Cyclotomic>> = (0..classes.len()).map(|k| rows.iter().map(|r| r[k].clone()).collect()).collect();
        for a in 0..cols.len() {
            for b in a..cols.len() {
                let v = inner(&cols[a], &cols[b], &|_| 1);
                let expected = if a == b { order / classes[a].size } else { 0 };
                if v != Cyclotomic::rational(conductor, Rational::from(expected as i64)) {
                    return reject(format!(
                        "column orthogonality fails for classes {} and {}",
                        classes[a].label, classes[b].label
                    ));
                }
            }
        }

        let (orbit_of, orbits) = galois_orbits_of(&characters, &rows, conductor)?;
        Ok(CharTable { name: name.into(), order, classes, characters, orbit_of, orbits })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn characters(&self) -> &[IrreducibleCharacter] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.characters.iter().position(|c| c.label == label)
    }

    /// Index of the trivial character.
    pub fn trivial(&self) -> usize {
        self.characters
            .iter()
            .position(|c| c.values.iter().all(|v| *v == Cyclotomic::one(1)))
            .expect("a verified table contains the trivial character")
    }

    pub fn orbit_of(&self, i: usize) -> &GaloisOrbit {
        &self.orbits[self.orbit_of[i]]
    }

    /// Reads a table from JSON (see [`TableFile`]) and verifies it.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let file: TableFile =
            serde_json::from_str(text).map_err(|e| Error::TableRejected(format!("line {}, column {}: {e}", e.line(), e.column())))?;
        file.into_table()
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_file(&self) -> TableFile {
        TableFile {
            name: self.name.clone(),
            classes: self.classes.clone(),
            characters: self
                .characters
                .iter()
                .map(|c| CharacterFile {
                    label: c.label.clone(),
                    degree: Some(c.degree),
                    schur_index: c.schur_index,
                    values: c.values.iter().map(ValueFile::from).collect(),
                })
                .collect(),
        }
    }
}

fn galois_orbits_of(
    characters: &[IrreducibleCharacter],
    rows: &[Vec<Cyclotomic>],
    conductor: u64,
) -> Result<(Vec<usize>, Vec<GaloisOrbit>), Error> {
    let units: Vec<i64> = (1..=conductor as i64).filter(|&t| num_integer::Integer::gcd(&t, &(conductor as i64)) == 1).collect();
    let mut orbit_of = vec![usize::MAX; rows.len()];
    let mut orbits = Vec::new();
    for i in 0..rows.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut members = vec![i];
        for &t in &units {
            let image: Vec<Cyclotomic> = rows[i].iter().map(|v| v.galois_conjugate(t).expect("unit")).collect();
            let j = rows.iter().position(|r| *r == image).ok_or_else(|| {
                Error::TableRejected(format!("table is not Galois-stable at {}", characters[i].label))
            })?;
            if !members.contains(&j) {
                members.push(j);
            }
        }
        members.sort_unstable();
        let m = characters[i].schur_index;
        if members.iter().any(|&j| characters[j].schur_index != m) {
            return Err(Error::TableRejected(format!("Schur index is not constant on the orbit of {}", characters[i].label)));
        }
        let row_conductor = characters[i].values.iter().map(Cyclotomic::conductor).fold(1, lcm);
        let size = members.len() as u64;
        let degree = characters[i].degree;
        for &j in &members {
            orbit_of[j] = orbits.len();
        }
        orbits.push(GaloisOrbit { members, conductor: row_conductor, size, schur_index: m, degree, sigma: size * m * degree });
    }
    Ok((orbit_of, orbits))
}

/// JSON form of a character table.
///
/// ```json
/// { "name": "Q8",
///   "classes": [ { "label": "1", "size": 1 }, … ],
///   "characters": [ { "label": "chi5", "schur_index": 2,
///                     "values": [ "2", "-2", "0", "0", "0" ] } ] }
/// ```
///
/// A value is a rational string or `{ "conductor": N, "coeffs": [...] }` in
/// the power basis of `Q(zeta_N)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFile {
    pub name: String,
    pub classes: Vec<ConjugacyClass>,
    pub characters: Vec<CharacterFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterFile {
    pub label: String,
    /// Optional; checked against the value at the identity class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(default = "one")]
    pub schur_index: u64,
    pub values: Vec<ValueFile>,
}

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ValueFile {
    Rational(Rational),
    Cyclotomic { conductor: u64, coeffs: Vec<Rational> },
}

impl From<&Cyclotomic> for ValueFile {
    fn from(x: &Cyclotomic) -> Self {
        match x.as_rational() {
            Some(q) => ValueFile::Rational(q),
            None => ValueFile::Cyclotomic { conductor: x.conductor(), coeffs: x.coeffs().to_vec() },
        }
    }
}

impl TableFile {
    pub fn into_table(self) -> Result<CharTable, Error> {
        let characters = self
            .characters
            .into_iter()
            .map(|c| {
                let values = c
                    .values
                    .into_iter()
                    .map(|v| match v {
                        ValueFile::Rational(q) => Ok(Cyclotomic::rational(1, q)),
                        ValueFile::Cyclotomic { conductor, coeffs } => Cyclotomic::from_coeffs(conductor, coeffs),
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| Error::TableRejected(format!("character {}: {e}", c.label)))?;
                let degree = values
                    .first()
                    .and_then(Cyclotomic::as_rational)
                    .and_then(|q| q.to_i64())
                    .filter(|&d| d > 0)
                    .ok_or_else(|| Error::TableRejected(format!("character {}: degree must be a positive integer", c.label)))?;
                if c.degree.is_some_and(|d| d != degree as u64) {
                    return Err(Error::TableRejected(format!(
                        "character {}: stated degree {} but value {degree} at the identity",
                        c.label,
                        c.degree.unwrap_or_default()
                    )));
                }
                Ok(IrreducibleCharacter { label: c.label, values, degree: degree as u64, schur_index: c.schur_index })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        CharTable::new(self.name, self.classes, characters)
    }
}

/// All characters of an abelian group, in the order of
/// [`AbelianGroup::characters`], labelled as there. Classes are the group
/// elements.
pub fn characters_abelian(group: &AbelianGroup) -> Result<CharTable, Error> {
    let elements = group.elements();
    let exponent = group.exponent();
    let classes = elements
        .iter()
        .map(|g| ConjugacyClass { label: format!("{g:?}"), size: 1 })
        .collect();
    let characters = group
        .characters()
        .into_iter()
        .map(|chi| {
            let values = elements
                .iter()
                .map(|g| {
                    let k = chi.phase(g) * Rational::from(exponent as i64);
                    Cyclotomic::zeta_pow(exponent, k.to_i64().expect("phase denominator divides the exponent"))
                })
                .collect();
            IrreducibleCharacter { label: chi.label(), values, degree: 1, schur_index: 1 }
        })
        .collect();
    let name = format!("abelian{:?}", group.orders());
    CharTable::new(name, classes, characters)
}

/// Largest `N` for which [`symmetric_group`] builds a table.
pub const MAX_SYMMETRIC_DEGREE: usize = 10;

/// `S_N` by Murnaghan–Nakayama: classes and characters indexed by
/// partitions, all values rational, Schur indices 1.
pub fn symmetric_group(n: usize) -> Result<CharTable, Error> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::ScaleExceeded(format!("symmetric groups are built for 1 <= N <= {MAX_SYMMETRIC_DEGREE}, got {n}")));
    }
    let parts = symmetric::partitions(n);
    // identity class (1^n), the last partition, first
    let cycle_types: Vec<Vec<usize>> = parts.last().into_iter().chain(&parts[..parts.len() - 1]).cloned().collect();
    let fmt_part = |p: &[usize]| p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let classes = cycle_types
        .iter()
        .map(|mu| ConjugacyClass { label: format!("({})", fmt_part(mu)), size: symmetric::class_size(mu) })
        .collect();
    let characters = parts
        .iter()
        .map(|lambda| {
            let values: Vec<Cyclotomic> = cycle_types
                .iter()
                .map(|mu| Cyclotomic::rational(1, Rational::from(symmetric::mn_character(lambda, mu))))
                .collect();
            let degree = symmetric::mn_character(lambda, &cycle_types[0]) as u64;
            IrreducibleCharacter { label: format!("[{}]", fmt_part(lambda)), values, degree, schur_index: 1 }
        })
        .collect();
    CharTable::new(format!("S{n}"), classes, characters)
}

/// The quaternion group `{±1, ±i, ±j, ±k}`; the 2-dimensional character has
/// rational values and Schur index 2.
pub fn quaternion_group() -> CharTable {
    let class = |label: &str, size| ConjugacyClass { label: label.into(), size };
    let classes = vec![class("1", 1), class("-1", 1), class("±i", 2), class("±j", 2), class("±k", 2)];
    let row = |label: &str, v: [i64; 5], m| IrreducibleCharacter {
        label: label.into(),
        values: v.iter().map(|&x| Cyclotomic::rational(1, Rational::from(x))).collect(),
        degree: v[0] as u64,
        schur_index: m,
    };
    let characters = vec![
        row("1", [1, 1, 1, 1, 1], 1),
        row("chi_i", [1, 1, 1, -1, -1], 1),
        row("chi_j", [1, 1, -1, 1, -1], 1),
        row("chi_k", [1, 1, -1, -1, 1], 1),
        row("chi_2", [2, -2, 0, 0, 0], 2),
    ];
    CharTable::new("Q8", classes, characters).expect("built-in table is valid")
}

/// Galois orbits of all characters (the trivial character is a singleton
/// orbit), ordered by smallest member.
pub fn galois_orbits(table: &CharTable) -> &[GaloisOrbit] {
    &table.orbits
}

/// `Phi(chi) = m(chi) [Q(chi) : Q]`.
pub fn phi_invariant(table: &CharTable, chi: usize) -> u64 {
    let o = table.orbit_of(chi);
    o.schur_index * o.size
}

/// One orbit's share of a rational span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitContribution {
    pub members: Vec<String>,
    pub sigma_orbit: u64,
    /// `max_(chi in orbit) ceil(n_chi / m)`.
    pub copies: u64,
    pub contribution: u64,
}

/// `sigma = sum_orbits sigma(orbit) max ceil(n_chi / m(orbit))`, with the
/// per-orbit terms.
pub fn rational_span_breakdown(n: &[u64], table: &CharTable) -> Result<(u64, Vec<OrbitContribution>), Error> {
    if n.len() != table.len() {
        return Err(Error::Argument(format!("{} multiplicities for {} characters", n.len(), table.len())));
    }
    let mut total = 0;
    let mut parts = Vec::new();
    for o in &table.orbits {
        let copies = o.members.iter().map(|&i| n[i].div_ceil(o.schur_index)).max().unwrap_or(0);
        let contribution = copies * o.sigma;
        total += contribution;
        parts.push(OrbitContribution {
            members: o.members.iter().map(|&i| table.characters[i].label.clone()).collect(),
            sigma_orbit: o.sigma,
            copies,
            contribution,
        });
    }
    Ok((total, parts))
}

/// Dimension of the smallest rational representation containing
/// `sum_chi n_chi chi`.
pub fn rational_span(n: &[u64], table: &CharTable) -> Result<u64, Error> {
    rational_span_breakdown(n, table).map(|(s, _)| s)
}
