//! Multiplication tables of n-valued magmas and monoids, and the axiom checkers.
//!
//! A table of order `k` and valuedness `n` stores, for every ordered pair
//! `(x, y)`, the multiplicity vector of the product `x * y`. Element `0` is
//! always the unit. Products extend bilinearly to multisets, so the two sides
//! of the associativity law for a triple are `n^2`-multisets and are compared
//! as multiplicity vectors.

use std::fmt;

use crate::error::{Error, Result};
use crate::multiset::Multiset;

/// Largest valuedness accepted by table constructors. Keeps every count that
/// arises inside the associativity check (at most `n^2`) inside `u64`.
pub const MAX_VALUEDNESS: u64 = u32::MAX as u64;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MValTable {
    n: u64,
    rows: Vec<Vec<Multiset>>,
}

/// A broken unit law at `left * right`, where one of the two is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitViolation {
    pub left: usize,
    pub right: usize,
    pub found: Multiset,
    pub expected: Multiset,
}

/// A triple on which `(x*y)*z` and `x*(y*z)` differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub triple: (usize, usize, usize),
    pub lhs: Multiset,
    pub rhs: Multiset,
}

/// Checks the unit law `0*j = j*0 = n.j` on raw rows. Violations are listed in
/// row-major order of the offending cell.
pub fn check_unit(n: u64, rows: &[Vec<Multiset>]) -> Vec<UnitViolation> {
    let k = rows.len();
    let cells = (0..k).map(|j| (0, j)).chain((1..k).map(|j| (j, 0)));
    let mut out: Vec<UnitViolation> = cells
        .filter_map(|(l, r)| {
            let found = rows.get(l)?.get(r)?;
            let expected = Multiset::singleton(k, l.max(r), n);
            (*found != expected).then(|| UnitViolation {
                left: l,
                right: r,
                found: found.clone(),
                expected,
            })
        })
        .collect();
    out.sort_by_key(|v| (v.left, v.right));
    out
}

impl MValTable {
    /// Validates and builds a unital table.
    pub fn new(n: u64, rows: Vec<Vec<Multiset>>) -> Result<Self> {
        let table = Self::new_magma(n, rows)?;
        if let Some(v) = table.check_unit().into_iter().next() {
            return Err(Error::Malformed(format!(
                "unit law fails at x{} * x{}: found {:?}, expected {:?}",
                v.left,
                v.right,
                v.found.counts(),
                v.expected.counts()
            )));
        }
        Ok(table)
    }

    /// Builds a table without requiring the unit law. Dimensions and row sums
    /// are still validated.
    pub fn new_magma(n: u64, rows: Vec<Vec<Multiset>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Malformed("valuedness n must be at least 1".into()));
        }
        if n > MAX_VALUEDNESS {
            return Err(Error::Malformed(format!(
                "valuedness {n} exceeds the supported maximum {MAX_VALUEDNESS}"
            )));
        }
        let k = rows.len();
        if k == 0 {
            return Err(Error::Malformed("order must be at least 1".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Malformed(format!(
                    "row {i} has {} entries, expected {k}",
                    row.len()
                )));
            }
            for (j, m) in row.iter().enumerate() {
                if m.universe() != k {
                    return Err(Error::Malformed(format!(
                        "entry ({i},{j}) has {} multiplicities, expected {k}",
                        m.universe()
                    )));
                }
                let size = m.checked_size()?;
                if size != n {
                    return Err(Error::Malformed(format!(
                        "entry ({i},{j}) sums to {size}, expected n = {n}"
                    )));
                }
            }
        }
        Ok(MValTable { n, rows })
    }

    /// Builds a table from plain nested count vectors.
    pub fn from_counts(n: u64, rows: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        Self::new(n, Self::wrap(rows))
    }

    pub fn magma_from_counts(n: u64, rows: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        Self::new_magma(n, Self::wrap(rows))
    }

    fn wrap(rows: Vec<Vec<Vec<u64>>>) -> Vec<Vec<Multiset>> {
        rows.into_iter()
            .map(|row| row.into_iter().map(Multiset::from_counts).collect())
            .collect()
    }

    /// Order-3 table from its four free entries `x1*x1`, `x1*x2`, `x2*x1`,
    /// `x2*x2`; the unit row and column are filled in.
    pub fn order3(n: u64, a: [u64; 3], b: [u64; 3], d: [u64; 3], c: [u64; 3]) -> Result<Self> {
        let e = |i: usize| {
            let mut v = vec![0; 3];
            v[i] = n;
            v
        };
        Self::from_counts(
            n,
            vec![
                vec![e(0), e(1), e(2)],
                vec![e(1), a.to_vec(), b.to_vec()],
                vec![e(2), d.to_vec(), c.to_vec()],
            ],
        )
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Multiset>] {
        &self.rows
    }

    /// The product `x * y`.
    pub fn product(&self, x: usize, y: usize) -> &Multiset {
        &self.rows[x][y]
    }

    /// Multiplicity of `z` in `x * y`.
    pub fn mult(&self, x: usize, y: usize, z: usize) -> u64 {
        self.rows[x][y].get(z)
    }

    pub fn check_unit(&self) -> Vec<UnitViolation> {
        check_unit(self.n, &self.rows)
    }

    /// Bilinear extension of the product to multisets:
    /// `A * B = sum_{u,v} A[u] B[v] (u * v)`.
    pub fn extend_product(&self, a: &Multiset, b: &Multiset) -> Result<Multiset> {
        let k = self.order();
        for (name, m) in [("left", a), ("right", b)] {
            if m.universe() != k {
                return Err(Error::Malformed(format!(
                    "{name} operand ranges over {} elements, table has order {k}",
                    m.universe()
                )));
            }
        }
        let mut out = Multiset::zero(k);
        for (u, au) in a.support() {
            for (v, bv) in b.support() {
                let factor = au.checked_mul(bv).ok_or(Error::Overflow("extended product"))?;
                out.checked_add_scaled(&self.rows[u][v], factor)?;
            }
        }
        Ok(out)
    }

    /// `(x*y)*z` as a multiplicity vector.
    fn left_assoc(&self, x: usize, y: usize, z: usize, out: &mut [u64]) {
        out.iter_mut().for_each(|c| *c = 0);
        for (w, m) in self.rows[x][y].support() {
            for (t, &c) in self.rows[w][z].counts().iter().enumerate() {
                out[t] += m * c;
            }
        }
    }

    /// `x*(y*z)` as a multiplicity vector.
    fn right_assoc(&self, x: usize, y: usize, z: usize, out: &mut [u64]) {
        out.iter_mut().for_each(|c| *c = 0);
        for (w, m) in self.rows[y][z].support() {
            for (t, &c) in self.rows[x][w].counts().iter().enumerate() {
                out[t] += m * c;
            }
        }
    }

    /// Checks associativity on all `k^3` triples, unit triples included, and
    /// returns the lexicographically first violation.
    pub fn check_associativity(&self) -> Option<Violation> {
        let k = self.order();
        let mut lhs = vec![0u64; k];
        let mut rhs = vec![0u64; k];
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    self.left_assoc(x, y, z, &mut lhs);
                    self.right_assoc(x, y, z, &mut rhs);
                    if lhs != rhs {
                        return Some(Violation {
                            triple: (x, y, z),
                            lhs: Multiset::from_counts(lhs),
                            rhs: Multiset::from_counts(rhs),
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.check_associativity().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.order();
        (0..k).all(|i| (i + 1..k).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    /// The diagonal construction: every multiplicity multiplied by `m`, giving
    /// an `m*n`-valued table on the same set.
    pub fn diagonal(&self, m: u64) -> Result<MValTable> {
        if m == 0 {
            return Err(Error::InvalidArgument("diagonal factor must be at least 1".into()));
        }
        let n = self.n.checked_mul(m).ok_or(Error::Overflow("diagonal valuedness"))?;
        if n > MAX_VALUEDNESS {
            return Err(Error::Overflow("diagonal valuedness"));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|e| e.checked_scale(m)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(MValTable { n, rows })
    }

    /// The table transported along `map`: the result has `map[z]` with the
    /// multiplicity `z` has in `x*y`, at cell `(map[x], map[y])`.
    pub fn relabel(&self, map: &[usize]) -> MValTable {
        let k = self.order();
        let mut rows = vec![vec![Multiset::zero(k); k]; k];
        for x in 0..k {
            for y in 0..k {
                rows[map[x]][map[y]] = self.rows[x][y].relabel(map);
            }
        }
        MValTable { n: self.n, rows }
    }

    pub(crate) fn from_parts_unchecked(n: u64, rows: Vec<Vec<Multiset>>) -> MValTable {
        MValTable { n, rows }
    }
}

impl fmt::Display for MValTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.order();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|m| {
                        let parts: Vec<String> = m.counts().iter().map(|c| c.to_string()).collect();
                        format!("({})", parts.join(","))
                    })
                    .collect()
            })
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(0);
        writeln!(f, "n = {}, order = {}, unit = x0", self.n, k)?;
        write!(f, "{:>4}", "*")?;
        for j in 0..k {
            write!(f, " {:>width$}", format!("x{j}"))?;
        }
        writeln!(f)?;
        for (i, row) in cells.iter().enumerate() {
            write!(f, "{:>4}", format!("x{i}"))?;
            for cell in row {
                write!(f, " {cell:>width$}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x3() -> MValTable {
        MValTable::order3(3, [1, 0, 2], [1, 1, 1], [1, 1, 1], [1, 2, 0]).unwrap()
    }

    fn z3() -> MValTable {
        MValTable::order3(1, [0, 0, 1], [1, 0, 0], [1, 0, 0], [0, 1, 0]).unwrap()
    }

    fn el(i: usize) -> Multiset {
        Multiset::singleton(3, i, 1)
    }

    #[test]
    fn extend_product_examples() {
        let t = x3();
        assert_eq!(t.extend_product(&el(1), &el(2)).unwrap().counts(), &[1, 1, 1]);
        assert_eq!(t.extend_product(&el(0), &el(1)).unwrap().counts(), &[0, 3, 0]);
        let x1x1 = t.product(1, 1).clone();
        let lhs = t.extend_product(&x1x1, &el(2)).unwrap();
        assert_eq!(lhs.counts(), &[2, 4, 3]);
        let x1x2 = t.product(1, 2).clone();
        assert_eq!(t.extend_product(&el(1), &x1x2).unwrap(), lhs);
    }

    #[test]
    fn extend_product_rejects_wrong_universe() {
        let t = x3();
        let bad = Multiset::from_counts(vec![1, 0]);
        assert!(matches!(t.extend_product(&bad, &el(1)), Err(Error::Malformed(_))));
    }

    #[test]
    fn unit_violation_reported() {
        let mut rows: Vec<Vec<Multiset>> = x3().rows().to_vec();
        rows[0][1] = Multiset::from_counts(vec![0, 1, 2]);
        let v = check_unit(3, &rows);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].left, v[0].right), (0, 1));
        assert!(MValTable::new(3, rows.clone()).is_err());
        assert!(MValTable::new_magma(3, rows).is_ok());
        assert!(x3().check_unit().is_empty());
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        assert!(MValTable::from_counts(0, vec![vec![vec![0]]]).is_err());
        assert!(MValTable::from_counts(2, vec![vec![vec![1]]]).is_err());
        assert!(MValTable::from_counts(1, vec![vec![vec![1, 0]], vec![]]).is_err());
        assert!(MValTable::order3(3, [1, 0, 1], [1, 1, 1], [1, 1, 1], [1, 2, 0]).is_err());
    }

    #[test]
    fn associativity_examples() {
        assert!(x3().is_associative());
        assert!(z3().is_associative());
        let b1 = MValTable::order3(4, [2, 2, 0], [0, 0, 4], [0, 0, 4], [1, 2, 1]).unwrap();
        assert!(b1.is_associative());
        // Breaking commutativity of Z/3 by hand breaks associativity too.
        let bad = MValTable::order3(1, [0, 0, 1], [1, 0, 0], [0, 0, 1], [0, 1, 0]).unwrap();
        assert!(bad.check_associativity().is_some());
    }

    #[test]
    fn diagonal_scales_entries() {
        let d = z3().diagonal(2).unwrap();
        assert_eq!(d.n(), 2);
        assert_eq!(d.product(1, 1).counts(), &[0, 0, 2]);
        assert!(d.is_associative());
        assert_eq!(z3().diagonal(1).unwrap(), z3());
        assert!(matches!(z3().diagonal(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn relabel_swap_is_involutive() {
        let t = MValTable::order3(2, [1, 1, 0], [0, 0, 2], [0, 0, 2], [0, 1, 1]).unwrap();
        let s = t.relabel(&[0, 2, 1]);
        assert_eq!(s.product(2, 2).counts(), &[1, 0, 1]);
        assert_eq!(s.relabel(&[0, 2, 1]), t);
    }

    #[test]
    fn display_is_aligned() {
        let s = z3().to_string();
        assert!(s.starts_with("n = 1, order = 3"));
        assert_eq!(s.lines().count(), 5);
    }
}
