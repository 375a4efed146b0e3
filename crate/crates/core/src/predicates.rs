//! Group-theoretic predicates on tables: inverse sets, reversibility,
//! involutivity, ★-involutivity and the coset criterion for the order-3
//! `(0,k,k+1), (1,k,k), (1,k,k), (0,k+1,k)` family.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::classify::{free_rows, Bijection};
use crate::error::{Error, Result};
use crate::normal::normalize;
use crate::table::MValTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseReport {
    /// `inv_sets[x]` lists every `y` with `e` in both `x*y` and `y*x`, ascending.
    pub inv_sets: Vec<Vec<usize>>,
    pub is_group: bool,
    /// Number of maps choosing one inverse per element.
    pub inv_map_count: u64,
}

pub fn inverse_sets(table: &MValTable) -> InverseReport {
    let k = table.order();
    let inv_sets: Vec<Vec<usize>> = (0..k)
        .map(|x| {
            (0..k)
                .filter(|&y| table.mult(x, y, 0) > 0 && table.mult(y, x, 0) > 0)
                .collect()
        })
        .collect();
    let is_group = inv_sets.iter().all(|s| !s.is_empty());
    let inv_map_count = inv_sets
        .iter()
        .map(|s| s.len() as u64)
        .try_fold(1u64, |acc, c| acc.checked_mul(c))
        .unwrap_or(u64::MAX);
    InverseReport {
        inv_sets,
        is_group,
        inv_map_count,
    }
}

pub fn is_group(table: &MValTable) -> bool {
    inverse_sets(table).is_group
}

pub fn is_commutative(table: &MValTable) -> bool {
    table.is_commutative()
}

/// Every element has exactly one inverse.
pub fn is_reversible(table: &MValTable) -> bool {
    inverse_sets(table).inv_sets.iter().all(|s| s.len() == 1)
}

/// Every element is its own unique inverse: `Inv(x) = {x}`.
pub fn is_involutive(table: &MValTable) -> bool {
    inverse_sets(table)
        .inv_sets
        .iter()
        .enumerate()
        .all(|(x, s)| s.as_slice() == [x])
}

/// An involutive inverse map satisfying the three ★-conditions, together with
/// the multiplicities `m(x)` of the unit in `x * inv(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    pub involution: Bijection,
    #[serde(rename = "m")]
    pub multiplicities: Vec<u64>,
}

fn satisfies_star(table: &MValTable, inv: &Bijection) -> Option<Vec<u64>> {
    let k = table.order();
    // (i) x*y contains e exactly when y = inv(x)
    for x in 0..k {
        for y in 0..k {
            if (table.mult(x, y, 0) > 0) != (y == inv.apply(x)) {
                return None;
            }
        }
    }
    // (ii) m(x) = m(inv(x))
    let m: Vec<u64> = (0..k).map(|x| table.mult(x, inv.apply(x), 0)).collect();
    if (0..k).any(|x| m[x] != m[inv.apply(x)]) {
        return None;
    }
    // (iii) inv(x*y) = inv(y)*inv(x), inv applied elementwise
    for x in 0..k {
        for y in 0..k {
            let lhs = table.product(x, y).relabel(inv.map());
            if &lhs != table.product(inv.apply(y), inv.apply(x)) {
                return None;
            }
        }
    }
    Some(m)
}

/// Searches the unit-fixing involutions in lexicographic order (identity
/// first) for one satisfying the ★-conditions. Non-groups have none.
pub fn star_involutive_witness(table: &MValTable) -> Option<StarWitness> {
    if !is_group(table) {
        return None;
    }
    Bijection::all(table.order())
        .into_iter()
        .filter(|phi| phi.then(phi).is_identity())
        .find_map(|inv| {
            satisfies_star(table, &inv).map(|multiplicities| StarWitness {
                involution: inv,
                multiplicities,
            })
        })
}

/// `true` iff `m = p^a` for a prime `p` and `a >= 1`.
pub fn is_prime_power(m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgument("is_prime_power is undefined at 0".into()));
    }
    if m == 1 {
        return Ok(false);
    }
    let p = smallest_factor(m);
    let mut rest = m;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    Ok(rest == 1)
}

fn smallest_factor(m: u64) -> u64 {
    if m.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Coset {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coset::Yes => "Yes",
            Coset::No => "No",
            Coset::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetStatus {
    pub verdict: Coset,
    pub reason: String,
}

/// If the table is proportional to the `(2k+1)`-valued matrix
/// `(0,k,k+1), (1,k,k), (1,k,k), (0,k+1,k)`, returns `k`.
pub fn coset_shape_parameter(table: &MValTable) -> Option<u64> {
    let p = normalize(table).to_table();
    let [a, b, d, c] = free_rows(&p).ok()?;
    let n = p.n();
    if n.is_multiple_of(2) {
        return None;
    }
    let k = n / 2;
    let shape = [[0, k, k + 1], [1, k, k], [1, k, k], [0, k + 1, k]];
    ([a, b, d, c] == shape).then_some(k)
}

/// Coset recognition: coset groups are ★-involutive; within the shape
/// recognized by [`coset_shape_parameter`] a table is a coset group iff
/// `4k + 3` is a prime power. Other ★-involutive tables are undecided.
pub fn coset_status(table: &MValTable) -> CosetStatus {
    if star_involutive_witness(table).is_none() {
        return CosetStatus {
            verdict: Coset::No,
            reason: "not star-involutive, and every coset group is".into(),
        };
    }
    match coset_shape_parameter(table) {
        Some(k) => {
            let q = 4 * k + 3;
            let prime_power = is_prime_power(q).unwrap_or(false);
            CosetStatus {
                verdict: if prime_power { Coset::Yes } else { Coset::No },
                reason: format!(
                    "proportional to the (0,k,k+1),(1,k,k),(1,k,k),(0,k+1,k) shape with k = {k}; \
                     4k+3 = {q} is {}a prime power",
                    if prime_power { "" } else { "not " }
                ),
            }
        }
        None => CosetStatus {
            verdict: Coset::Unknown,
            reason: "star-involutive outside the recognized shape; no decision procedure".into(),
        },
    }
}

/// Everything `check` reports about a monoid table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredicateReport {
    pub group: bool,
    pub commutative: bool,
    pub reversible: bool,
    pub involutive: bool,
    pub star_involutive: Option<StarWitness>,
    pub coset: CosetStatus,
    pub inverses: InverseReport,
}

impl PredicateReport {
    pub fn of(table: &MValTable) -> Self {
        let inverses = inverse_sets(table);
        PredicateReport {
            group: inverses.is_group,
            commutative: table.is_commutative(),
            reversible: inverses.inv_sets.iter().all(|s| s.len() == 1),
            involutive: inverses
                .inv_sets
                .iter()
                .enumerate()
                .all(|(x, s)| s.as_slice() == [x]),
            star_involutive: star_involutive_witness(table),
            coset: coset_status(table),
            inverses,
        }
    }
}

impl Serialize for PredicateReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            group: bool,
            commutative: bool,
            reversible: bool,
            involutive: bool,
            star_involutive: &'a Option<StarWitness>,
            coset: Coset,
            coset_reason: &'a str,
            inv_sets: BTreeMap<String, &'a [usize]>,
            inv_map_count: u64,
        }
        // Keys sort as strings; orders above 10 would interleave, so pad.
        let width = self.inverses.inv_sets.len().saturating_sub(1).to_string().len();
        let inv_sets = self
            .inverses
            .inv_sets
            .iter()
            .enumerate()
            .skip(1)
            .map(|(x, s)| (format!("{x:0width$}"), s.as_slice()))
            .collect();
        Json {
            group: self.group,
            commutative: self.commutative,
            reversible: self.reversible,
            involutive: self.involutive,
            star_involutive: &self.star_involutive,
            coset: self.coset.verdict,
            coset_reason: &self.coset.reason,
            inv_sets,
            inv_map_count: self.inverses.inv_map_count,
        }
        .serialize(serializer)
    }
}
