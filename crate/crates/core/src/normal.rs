//! Primitive forms: tables reduced by the gcd of the valuedness and all
//! multiplicities. Two tables related by the identity bijection are isomorphic
//! exactly when their primitive forms agree.

use num_integer::Integer;
use serde::Serialize;

use crate::error::Result;
use crate::multiset::Multiset;
use crate::table::MValTable;

/// A gcd-reduced table. Ordered row-major lexicographically on `rows`, then by
/// `n`; since `rows[0][0]` holds `n` itself, the row order decides.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimitiveForm {
    rows: Vec<Vec<Multiset>>,
    n: u64,
}

impl PrimitiveForm {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn rows(&self) -> &[Vec<Multiset>] {
        &self.rows
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// The primitive form viewed as an `n`-valued table.
    pub fn to_table(&self) -> MValTable {
        MValTable::from_parts_unchecked(self.n, self.rows.clone())
    }

    /// Scales back up to an `m * n`-valued table.
    pub fn scaled(&self, m: u64) -> Result<MValTable> {
        self.to_table().diagonal(m)
    }
}

/// Divides `n` and every multiplicity by their common gcd.
pub fn normalize(table: &MValTable) -> PrimitiveForm {
    let g = table
        .rows()
        .iter()
        .flatten()
        .flat_map(|m| m.counts().iter().copied())
        .fold(table.n(), |g, c| g.gcd(&c));
    PrimitiveForm {
        rows: table
            .rows()
            .iter()
            .map(|row| row.iter().map(|m| m.divide_exact(g)).collect())
            .collect(),
        n: table.n() / g,
    }
}
