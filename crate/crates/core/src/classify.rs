//! Classification of order-3 monoids into the six series `B1`..`B6`, unit-fixing
//! bijections, isomorphism testing and canonical keys.
//!
//! An order-3 table is determined by its four free rows
//! `x1*x1 = (a0,a1,a2)`, `x1*x2 = (b0,b1,b2)`, `x2*x1 = (d0,d1,d2)` and
//! `x2*x2 = (c0,c1,c2)`. Each series is a matrix template in a few free
//! parameters; the remaining entries are formulas in those parameters and `n`
//! that must evaluate to non-negative integers.

use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::normal::{normalize, PrimitiveForm};
use crate::table::MValTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Series {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
}

impl Series {
    pub const ALL: [Series; 6] = [
        Series::B1,
        Series::B2,
        Series::B3,
        Series::B4,
        Series::B5,
        Series::B6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Series::B1 => "B1",
            Series::B2 => "B2",
            Series::B3 => "B3",
            Series::B4 => "B4",
            Series::B5 => "B5",
            Series::B6 => "B6",
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Membership of a table in one series, with the extracted free parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesMatch {
    B1 { a0: u64, c0: u64 },
    B2 { a0: u64, a1: u64, b0: u64, b1: u64 },
    B3 { c0: u64, c1: u64 },
    B4 { c1: u64 },
    B5,
    B6,
}

/// The four free rows `x1*x1`, `x1*x2`, `x2*x1`, `x2*x2`.
pub type FreeRows = [[u64; 3]; 4];

impl SeriesMatch {
    pub fn series(&self) -> Series {
        match self {
            SeriesMatch::B1 { .. } => Series::B1,
            SeriesMatch::B2 { .. } => Series::B2,
            SeriesMatch::B3 { .. } => Series::B3,
            SeriesMatch::B4 { .. } => Series::B4,
            SeriesMatch::B5 => Series::B5,
            SeriesMatch::B6 => Series::B6,
        }
    }

    pub fn params(&self) -> Vec<(&'static str, u64)> {
        match *self {
            SeriesMatch::B1 { a0, c0 } => vec![("a0", a0), ("c0", c0)],
            SeriesMatch::B2 { a0, a1, b0, b1 } => {
                vec![("a0", a0), ("a1", a1), ("b0", b0), ("b1", b1)]
            }
            SeriesMatch::B3 { c0, c1 } => vec![("c0", c0), ("c1", c1)],
            SeriesMatch::B4 { c1 } => vec![("c1", c1)],
            SeriesMatch::B5 | SeriesMatch::B6 => vec![],
        }
    }

    /// Evaluates the series template at valuedness `n`. `None` when a side
    /// condition fails: a vanishing denominator, a non-integral quotient or a
    /// negative entry.
    pub fn template(&self, n: u64) -> Option<FreeRows> {
        let n = n as i128;
        let rows: [[i128; 3]; 4] = match *self {
            SeriesMatch::B1 { a0, c0 } => {
                let (a0, c0) = (a0 as i128, c0 as i128);
                if a0 <= 0 || (c0 * n) % a0 != 0 {
                    return None;
                }
                let c1 = c0 * n / a0;
                [
                    [a0, n - a0, 0],
                    [0, 0, n],
                    [0, 0, n],
                    [c0, c1, n - c0 - c1],
                ]
            }
            SeriesMatch::B2 { a0, a1, b0, b1 } => {
                let (a0, a1, b0, b1) = (a0 as i128, a1 as i128, b0 as i128, b1 as i128);
                let a2 = n - a0 - a1;
                let b2 = n - b0 - b1;
                if a2 <= 0 {
                    return None;
                }
                let num = [
                    b0 * b2 + a0 * b1 - a1 * b0,
                    (b0 + b1) * (n - b1),
                    b2 * b2 + n * (b1 - a0 - a1) + a1 * b0 - a0 * b1,
                ];
                if num.iter().any(|&v| v % a2 != 0) {
                    return None;
                }
                let c = num.map(|v| v / a2);
                [[a0, a1, a2], [b0, b1, b2], [b0, b1, b2], c]
            }
            SeriesMatch::B3 { c0, c1 } => {
                let (c0, c1) = (c0 as i128, c1 as i128);
                [[0, n, 0], [0, n, 0], [0, n, 0], [c0, c1, n - c0 - c1]]
            }
            SeriesMatch::B4 { c1 } => {
                let c1 = c1 as i128;
                [[0, n, 0], [0, 0, n], [0, 0, n], [0, c1, n - c1]]
            }
            SeriesMatch::B5 => [[0, n, 0], [0, n, 0], [0, 0, n], [0, 0, n]],
            SeriesMatch::B6 => [[0, n, 0], [0, 0, n], [0, n, 0], [0, 0, n]],
        };
        let mut out = [[0u64; 3]; 4];
        for (o, r) in out.iter_mut().zip(rows.iter()) {
            if r.iter().any(|&v| v < 0) || r.iter().sum::<i128>() != n {
                return None;
            }
            *o = r.map(|v| v as u64);
        }
        Some(out)
    }

    /// Builds the order-3 table of this series at valuedness `n`.
    pub fn build(&self, n: u64) -> Option<MValTable> {
        let [a, b, d, c] = self.template(n)?;
        MValTable::order3(n, a, b, d, c).ok()
    }
}

impl fmt::Display for SeriesMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.series())?;
        let params = self.params();
        if !params.is_empty() {
            let parts: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", parts.join(", "))?;
        }
        Ok(())
    }
}

struct Params<'a>(&'a [(&'static str, u64)]);

impl Serialize for Params<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for SeriesMatch {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SeriesMatch", 2)?;
        s.serialize_field("series", self.series().name())?;
        s.serialize_field("params", &Params(&self.params()))?;
        s.end()
    }
}

/// The four free rows of an order-3 table.
pub fn free_rows(table: &MValTable) -> Result<FreeRows> {
    if table.order() != 3 {
        return Err(Error::UnsupportedOrder(table.order()));
    }
    let row = |x: usize, y: usize| {
        let c = table.product(x, y).counts();
        [c[0], c[1], c[2]]
    };
    Ok([row(1, 1), row(1, 2), row(2, 1), row(2, 2)])
}

/// Every series whose template reproduces the table verbatim, in series order.
pub fn match_series(table: &MValTable) -> Result<Vec<SeriesMatch>> {
    let rows = free_rows(table)?;
    let [a, b, _, c] = rows;
    let candidates = [
        SeriesMatch::B1 { a0: a[0], c0: c[0] },
        SeriesMatch::B2 {
            a0: a[0],
            a1: a[1],
            b0: b[0],
            b1: b[1],
        },
        SeriesMatch::B3 { c0: c[0], c1: c[1] },
        SeriesMatch::B4 { c1: c[1] },
        SeriesMatch::B5,
        SeriesMatch::B6,
    ];
    Ok(candidates
        .into_iter()
        .filter(|m| m.template(table.n()) == Some(rows))
        .collect())
}

/// Every valid parameter instantiation of every series at valuedness `n`.
pub fn instantiations(n: u64) -> Vec<SeriesMatch> {
    let mut out = Vec::new();
    for a0 in 1..=n {
        for c0 in 0..=n {
            out.push(SeriesMatch::B1 { a0, c0 });
        }
    }
    for a0 in 0..n {
        for a1 in 0..n - a0 {
            for b0 in 0..=n {
                for b1 in 0..=n - b0 {
                    out.push(SeriesMatch::B2 { a0, a1, b0, b1 });
                }
            }
        }
    }
    for c0 in 0..=n {
        for c1 in 0..=n - c0 {
            out.push(SeriesMatch::B3 { c0, c1 });
        }
    }
    for c1 in 0..=n {
        out.push(SeriesMatch::B4 { c1 });
    }
    out.push(SeriesMatch::B5);
    out.push(SeriesMatch::B6);
    out.retain(|m| m.template(n).is_some());
    out
}

/// A permutation of `0..k` fixing the unit `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Bijection(Vec<usize>);

impl Bijection {
    pub fn identity(k: usize) -> Self {
        Bijection((0..k).collect())
    }

    /// Exchanges `x1` and `x2` on a set of order 3.
    pub fn swap() -> Self {
        Bijection(vec![0, 2, 1])
    }

    pub fn from_map(map: Vec<usize>) -> Result<Self> {
        let k = map.len();
        let mut seen = vec![false; k];
        for &i in &map {
            if i >= k || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidArgument(format!("{map:?} is not a permutation")));
            }
        }
        if k > 0 && map[0] != 0 {
            return Err(Error::InvalidArgument(format!("{map:?} moves the unit")));
        }
        Ok(Bijection(map))
    }

    /// All unit-fixing bijections of `0..k` in lexicographic order, so the
    /// identity comes first.
    pub fn all(k: usize) -> Vec<Bijection> {
        fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Bijection>) {
            if prefix.len() == used.len() {
                out.push(Bijection(prefix.clone()));
                return;
            }
            for i in 1..used.len() {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    extend(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        if k == 0 {
            return vec![Bijection(vec![])];
        }
        let mut used = vec![false; k];
        used[0] = true;
        let mut out = Vec::new();
        extend(&mut vec![0], &mut used, &mut out);
        out
    }

    pub fn map(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Bijection {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Bijection(inv)
    }

    /// `other` after `self`.
    pub fn then(&self, other: &Bijection) -> Bijection {
        Bijection(self.0.iter().map(|&i| other.0[i]).collect())
    }

    /// Transports a table along the bijection.
    pub fn transport(&self, table: &MValTable) -> MValTable {
        table.relabel(&self.0)
    }
}

/// Finds a unit-fixing bijection `phi` carrying `t1` onto `t2` up to the
/// valuedness normalization: the multiplicity of `z` in `x*y` over `n1` equals
/// that of `phi(z)` in `phi(x)*phi(y)` over `n2`. The identity is tried first.
pub fn find_isomorphism(t1: &MValTable, t2: &MValTable) -> Result<Option<Bijection>> {
    if t1.order() != t2.order() {
        return Err(Error::InvalidArgument(format!(
            "orders differ: {} vs {}",
            t1.order(),
            t2.order()
        )));
    }
    let target = normalize(t2);
    Ok(Bijection::all(t1.order())
        .into_iter()
        .find(|phi| normalize(&phi.transport(t1)) == target))
}

/// The minimum primitive form over all relabelings, with a bijection attaining it.
pub fn canonical_labeling(table: &MValTable) -> (PrimitiveForm, Bijection) {
    Bijection::all(table.order())
        .into_iter()
        .map(|phi| (normalize(&phi.transport(table)), phi))
        .min()
        .expect("at least one bijection")
}

/// Isomorphism-invariant key: equal keys exactly for isomorphic tables.
pub fn canonical_key(table: &MValTable) -> PrimitiveForm {
    canonical_labeling(table).0
}

/// The self-dual condition on a `B2` table: `b0 = n - 2a0 - 2a1`,
/// `b1 = b2 = a0 + a1`. Such tables are fixed by the swap.
pub fn is_self_dual(n: u64, m: &SeriesMatch) -> bool {
    match *m {
        SeriesMatch::B2 { a0, a1, b0, b1 } => {
            let (n, s, b0, b1) = (n as i128, (a0 + a1) as i128, b0 as i128, b1 as i128);
            b0 == n - 2 * s && b1 == s && n - b0 - b1 == s
        }
        _ => false,
    }
}

/// The stated condition for a table of one series to be isomorphic to a
/// table of another, for the four series pairs that admit overlaps. `None`
/// for any other pair. Arguments may be given in either order.
pub fn cross_series_clause(n1: u64, m1: &SeriesMatch, n2: u64, m2: &SeriesMatch) -> Option<bool> {
    use SeriesMatch::*;
    match (*m1, *m2) {
        (B3 { .. }, B1 { .. }) | (B3 { .. }, B2 { .. }) | (B4 { .. }, B2 { .. }) | (B4 { .. }, B3 { .. }) => {
            cross_series_clause(n2, m2, n1, m1)
        }
        (B1 { a0, c0 }, B3 { c0: c0p, c1: c1p }) => {
            let [n1, n2, a0, c0p] = [n1, n2, a0, c0p].map(i128::from);
            // a0 / (n - a0) = c0' / (n' - c0'), cross-multiplied
            Some(c0 == 0 && c1p == 0 && a0 * (n2 - c0p) == c0p * (n1 - a0))
        }
        (B2 { a0, a1, b0, b1 }, B3 { c0: c0p, c1: c1p }) => {
            let [n1, n2, a0, a1, c0p, c1p] = [n1, n2, a0, a1, c0p, c1p].map(i128::from);
            let a2 = n1 - a0 - a1;
            let c2p = n2 - c0p - c1p;
            // a0 : a1 : a2 proportional to c0' : c2' : c1'
            Some(
                b0 == 0
                    && b1 == 0
                    && a0 * c2p == a1 * c0p
                    && a1 * c1p == a2 * c2p
                    && a0 * c1p == a2 * c0p,
            )
        }
        (B2 { a0, a1, b0, b1 }, B4 { c1: c1p }) => {
            let literal = a1 == n1 && b1 == 0 && c1p == 0;
            let [n1, n2, a1, c1p] = [n1, n2, a1, c1p].map(i128::from);
            // a1 / (n - a1) = (n' - c1') / c1', cross-multiplied
            let swapped = a0 == 0 && b0 == 0 && i128::from(b1) == n1 && a1 * c1p == (n2 - c1p) * (n1 - a1);
            Some(literal || swapped)
        }
        (B3 { c0, c1 }, B4 { c1: c1p }) => Some(c0 == 0 && c1 == 0 && c1p == 0),
        _ => None,
    }
}

/// Serializes a primitive form in the interchange table layout.
pub(crate) struct KeyJson<'a>(pub &'a PrimitiveForm);

impl Serialize for KeyJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PrimitiveForm", 2)?;
        s.serialize_field("n", &self.0.n())?;
        s.serialize_field("rows", self.0.rows())?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: u64, rows: FreeRows) -> MValTable {
        MValTable::order3(n, rows[0], rows[1], rows[2], rows[3]).unwrap()
    }

    fn x3() -> MValTable {
        t(3, [[1, 0, 2], [1, 1, 1], [1, 1, 1], [1, 2, 0]])
    }

    fn b2tilde1() -> MValTable {
        t(3, [[0, 1, 2], [1, 1, 1], [1, 1, 1], [0, 2, 1]])
    }

    #[test]
    fn match_examples() {
        assert_eq!(
            match_series(&x3()).unwrap(),
            vec![SeriesMatch::B2 { a0: 1, a1: 0, b0: 1, b1: 1 }]
        );
        let z3 = t(1, [[0, 0, 1], [1, 0, 0], [1, 0, 0], [0, 1, 0]]);
        assert_eq!(
            match_series(&z3).unwrap(),
            vec![SeriesMatch::B2 { a0: 0, a1: 0, b0: 1, b1: 0 }]
        );
        let b1 = t(4, [[2, 2, 0], [0, 0, 4], [0, 0, 4], [1, 2, 1]]);
        assert_eq!(match_series(&b1).unwrap(), vec![SeriesMatch::B1 { a0: 2, c0: 1 }]);
    }

    #[test]
    fn match_rejects_other_orders() {
        let t1 = MValTable::from_counts(2, vec![vec![vec![2]]]).unwrap();
        assert_eq!(match_series(&t1), Err(Error::UnsupportedOrder(1)));
    }

    #[test]
    fn b2_requires_positive_denominator() {
        let m = SeriesMatch::B2 { a0: 0, a1: 1, b0: 0, b1: 0 };
        assert_eq!(m.template(1), None);
    }

    #[test]
    fn b1_requires_integrality() {
        assert_eq!(SeriesMatch::B1 { a0: 2, c0: 1 }.template(3), None);
        assert!(SeriesMatch::B1 { a0: 2, c0: 1 }.template(4).is_some());
        assert_eq!(SeriesMatch::B1 { a0: 0, c0: 0 }.template(3), None);
    }

    #[test]
    fn series_match_json() {
        let m = SeriesMatch::B2 { a0: 1, a1: 0, b0: 1, b1: 1 };
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"{"series":"B2","params":{"a0":1,"a1":0,"b0":1,"b1":1}}"#
        );
        assert_eq!(
            serde_json::to_string(&SeriesMatch::B5).unwrap(),
            r#"{"series":"B5","params":{}}"#
        );
    }

    #[test]
    fn bijections() {
        assert_eq!(Bijection::all(3), vec![Bijection::identity(3), Bijection::swap()]);
        assert_eq!(Bijection::all(1).len(), 1);
        assert_eq!(Bijection::all(4).len(), 6);
        let p = Bijection::from_map(vec![0, 2, 3, 1]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert!(Bijection::from_map(vec![1, 0]).is_err());
        assert!(Bijection::from_map(vec![0, 1, 1]).is_err());
    }

    #[test]
    fn isomorphism_examples() {
        let b = b2tilde1();
        assert_eq!(
            find_isomorphism(&b, &Bijection::swap().transport(&b)).unwrap(),
            Some(Bijection::identity(3))
        );
        assert_eq!(Bijection::swap().transport(&b), b);
        assert_eq!(
            find_isomorphism(&x3(), &x3().diagonal(2).unwrap()).unwrap(),
            Some(Bijection::identity(3))
        );
        assert_eq!(find_isomorphism(&x3(), &b).unwrap(), None);
        let t2 = MValTable::from_counts(1, vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]]])
            .unwrap();
        assert!(matches!(find_isomorphism(&x3(), &t2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn isomorphism_needs_swap() {
        let b1 = t(1, [[1, 0, 0], [0, 0, 1], [0, 0, 1], [0, 0, 1]]);
        let swapped = Bijection::swap().transport(&b1);
        assert_eq!(match_series(&swapped).unwrap(), vec![SeriesMatch::B3 { c0: 1, c1: 0 }]);
        assert_eq!(find_isomorphism(&b1, &swapped).unwrap(), Some(Bijection::swap()));
    }

    #[test]
    fn canonical_key_examples() {
        let x = x3();
        assert_eq!(canonical_key(&x), canonical_key(&x.diagonal(4).unwrap()));
        assert_eq!(canonical_key(&x), canonical_key(&Bijection::swap().transport(&x)));
        assert_ne!(canonical_key(&x), canonical_key(&b2tilde1()));
    }

    #[test]
    fn self_dual_condition() {
        assert!(is_self_dual(3, &SeriesMatch::B2 { a0: 0, a1: 1, b0: 1, b1: 1 }));
        // X3 is self-dual as well
        assert!(is_self_dual(3, &SeriesMatch::B2 { a0: 1, a1: 0, b0: 1, b1: 1 }));
        assert!(!is_self_dual(2, &SeriesMatch::B2 { a0: 0, a1: 0, b0: 1, b1: 1 }));
        assert!(!is_self_dual(3, &SeriesMatch::B3 { c0: 0, c1: 0 }));
    }

    #[test]
    fn instantiations_build_valid_tables() {
        for n in 1..=3 {
            for m in instantiations(n) {
                let table = m.build(n).unwrap();
                assert!(match_series(&table).unwrap().contains(&m), "{m} at n={n}");
            }
        }
        assert_eq!(
            instantiations(1).iter().filter(|m| m.series() == Series::B5).count(),
            1
        );
    }

    #[test]
    fn clause_b3_b4() {
        let b3 = SeriesMatch::B3 { c0: 0, c1: 0 };
        let b4 = SeriesMatch::B4 { c1: 0 };
        assert_eq!(cross_series_clause(2, &b3, 1, &b4), Some(true));
        assert_eq!(cross_series_clause(1, &b4, 2, &b3), Some(true));
        assert_eq!(cross_series_clause(1, &SeriesMatch::B5, 2, &b3), None);
    }
}
