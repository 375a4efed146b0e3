//! Named tables: the non-reversible family `X_n`, the mod-`n` magma that fails
//! associativity, the seven single-valued monoids of order 3 and the
//! ★-involutive shapes.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::multiset::Multiset;
use crate::table::MValTable;

/// The `n`-valued group on `{0, 1, 2}` with
/// `1*1 = 0 + (n-1).2`, `1*2 = 2*1 = 0 + 1 + (n-2).2`, `2*2 = 0 + 2.1 + (n-3).2`.
/// Every product contains the unit, so both `1` and `2` invert both.
pub fn make_xn(n: u64) -> Result<MValTable> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "X_n needs n >= 3 (x2*x2 has n-3 copies of x2), got {n}"
        )));
    }
    MValTable::order3(n, [1, 0, n - 1], [1, 1, n - 2], [1, 1, n - 2], [1, 2, n - 3])
}

/// Residues mod `n` with `x*y = [x + y mod n, |x - y| mod n]`. The unit law
/// holds with unit `0`; associativity fails for `n >= 4`.
pub fn make_borovik(n: u64) -> Result<MValTable> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "the mod-n magma needs n >= 3, got {n}"
        )));
    }
    let k = usize::try_from(n).map_err(|_| Error::InvalidArgument(format!("n = {n} too large")))?;
    let rows = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| Multiset::from_elements(k, &[(x + y) % k, x.abs_diff(y) % k]))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    MValTable::new_magma(2, rows)
}

/// The seven single-valued monoids of order 3, one per isomorphism class,
/// listed as `B1, B2 (Z/3), B2, B4, B4, B5, B6`.
pub fn single_valued_order3() -> Vec<MValTable> {
    const TABLES: [[[u64; 3]; 4]; 7] = [
        [[1, 0, 0], [0, 0, 1], [0, 0, 1], [0, 0, 1]],
        [[0, 0, 1], [1, 0, 0], [1, 0, 0], [0, 1, 0]],
        [[0, 0, 1], [0, 0, 1], [0, 0, 1], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [0, 0, 1], [0, 1, 0]],
        [[0, 1, 0], [0, 0, 1], [0, 0, 1], [0, 0, 1]],
        [[0, 1, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [0, 1, 0], [0, 0, 1]],
    ];
    TABLES
        .iter()
        .map(|[a, b, d, c]| MValTable::order3(1, *a, *b, *d, *c).expect("valid single-valued table"))
        .collect()
}

/// The `(2k+1)`-valued table with rows `(0,k,k+1), (1,k,k), (1,k,k), (0,k+1,k)`.
pub fn make_b2tilde_4k3(k: u64) -> Result<MValTable> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let n = k
        .checked_mul(2)
        .and_then(|v| v.checked_add(1))
        .ok_or(Error::Overflow("2k+1"))?;
    MValTable::order3(n, [0, k, k + 1], [1, k, k], [1, k, k], [0, k + 1, k])
}

/// Parameters of a ★-involutive shape: `m1 = m(x1)`, `m2 = m(x2)` are the
/// unit multiplicities in `x_i * inv(x_i)` and `a1 = a(x1)` is the `x1`
/// multiplicity in `x1*x1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarFormParams {
    pub m1: u64,
    pub m2: u64,
    pub a1: u64,
    pub n: u64,
}

/// The derived quantities of the `~B1` shape, all exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarFormDerived {
    pub r: Ratio<u64>,
    pub a12: u64,
    pub a2: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarShape {
    /// Identity inverse map; `x1*x2 = x2*x1` avoids the unit.
    B1Tilde,
    /// Swap inverse map; only `a1` and `n` are free.
    B2Tilde,
}

impl StarFormParams {
    /// `~B2` parameters: both unit multiplicities equal `n - 2a`.
    pub fn b2(a: u64, n: u64) -> Result<Self> {
        let m = n
            .checked_sub(2 * a)
            .ok_or_else(|| Error::InvalidArgument(format!("n - 2a(x1) = {n} - {} is negative", 2 * a)))?;
        Ok(StarFormParams { m1: m, m2: m, a1: a, n })
    }

    /// `r = m2/m1`, `a12 = r(n - m1 - a1)`, `a2 = r(n - a12)`.
    pub fn derive_b1(&self) -> Result<StarFormDerived> {
        let StarFormParams { m1, m2, a1, n } = *self;
        if m1 == 0 {
            return Err(Error::InvalidArgument("r = m(x2)/m(x1) is undefined for m(x1) = 0".into()));
        }
        let r = Ratio::new(m2, m1);
        let rest = n.checked_sub(m1 + a1).ok_or_else(|| {
            Error::InvalidArgument(format!("n - m(x1) - a(x1) = {n} - {m1} - {a1} is negative"))
        })?;
        let a12 = r * rest;
        if !a12.is_integer() {
            return Err(Error::InvalidArgument(format!(
                "a(x1,x2) = r(n - m(x1) - a(x1)) = {a12} is not an integer"
            )));
        }
        let a12 = a12.to_integer();
        let rest = n.checked_sub(a12).ok_or_else(|| {
            Error::InvalidArgument(format!("n - a(x1,x2) = {n} - {a12} is negative"))
        })?;
        let a2 = r * rest;
        if !a2.is_integer() {
            return Err(Error::InvalidArgument(format!(
                "a(x2) = r(n - a(x1,x2)) = {a2} is not an integer"
            )));
        }
        let a2 = a2.to_integer();
        if m2 + a2 > n {
            return Err(Error::InvalidArgument(format!(
                "n - m(x2) - a(x2) = {n} - {m2} - {a2} is negative"
            )));
        }
        Ok(StarFormDerived { r, a12, a2 })
    }
}

/// Builds the `~B1` or `~B2` table. The shape alone does not guarantee
/// associativity; callers check it.
pub fn make_star_form(p: &StarFormParams, shape: StarShape) -> Result<MValTable> {
    let StarFormParams { m1, m2, a1, n } = *p;
    match shape {
        StarShape::B1Tilde => {
            let d = p.derive_b1()?;
            MValTable::order3(
                n,
                [m1, a1, n - m1 - a1],
                [0, d.a12, n - d.a12],
                [0, d.a12, n - d.a12],
                [m2, d.a2, n - m2 - d.a2],
            )
        }
        StarShape::B2Tilde => {
            let m = n.checked_sub(2 * a1).ok_or_else(|| {
                Error::InvalidArgument(format!("n - 2a(x1) = {n} - {} is negative", 2 * a1))
            })?;
            if m1 != m || m2 != m {
                return Err(Error::InvalidArgument(format!(
                    "~B2 forces m(x1) = m(x2) = n - 2a(x1) = {m}, got {m1} and {m2}"
                )));
            }
            MValTable::order3(n, [0, a1, n - a1], [m, a1, a1], [m, a1, a1], [0, n - a1, a1])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(t: &MValTable) -> Vec<Vec<u64>> {
        [(1, 1), (1, 2), (2, 1), (2, 2)]
            .iter()
            .map(|&(x, y)| t.product(x, y).counts().to_vec())
            .collect()
    }

    #[test]
    fn xn_rows() {
        assert_eq!(
            free(&make_xn(3).unwrap()),
            vec![vec![1, 0, 2], vec![1, 1, 1], vec![1, 1, 1], vec![1, 2, 0]]
        );
        assert_eq!(
            free(&make_xn(4).unwrap()),
            vec![vec![1, 0, 3], vec![1, 1, 2], vec![1, 1, 2], vec![1, 2, 1]]
        );
        assert!(matches!(make_xn(2), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn borovik_entries() {
        let t = make_borovik(5).unwrap();
        assert_eq!(t.order(), 5);
        assert_eq!(t.n(), 2);
        assert!(t.check_unit().is_empty());
        assert_eq!(t.product(2, 3).elements(), vec![0, 1]);
        assert_eq!(t.product(1, 1).elements(), vec![0, 2]);
        assert!(make_borovik(2).is_err());
    }

    #[test]
    fn borovik_violation_at_five() {
        let v = make_borovik(5).unwrap().check_associativity().unwrap();
        assert_eq!(v.triple, (1, 1, 4));
        assert_eq!(v.lhs, Multiset::from_elements(5, &[4, 4, 1, 2]).unwrap());
        assert_eq!(v.rhs, Multiset::from_elements(5, &[1, 1, 4, 2]).unwrap());
    }

    #[test]
    fn single_valued_second_is_z3() {
        let tables = single_valued_order3();
        assert_eq!(tables.len(), 7);
        assert_eq!(
            free(&tables[1]),
            vec![vec![0, 0, 1], vec![1, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]
        );
        assert_eq!(
            free(&tables[5]),
            vec![vec![0, 1, 0], vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 1]]
        );
        assert!(tables.iter().all(|t| t.is_associative()));
    }

    #[test]
    fn b2tilde_rows() {
        assert_eq!(
            free(&make_b2tilde_4k3(1).unwrap()),
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![1, 1, 1], vec![0, 2, 1]]
        );
        let t = make_b2tilde_4k3(2).unwrap();
        assert_eq!(t.n(), 5);
        assert_eq!(
            free(&t),
            vec![vec![0, 2, 3], vec![1, 2, 2], vec![1, 2, 2], vec![0, 3, 2]]
        );
        assert!(make_b2tilde_4k3(0).is_err());
    }

    #[test]
    fn star_b1_example() {
        let p = StarFormParams { m1: 2, m2: 1, a1: 2, n: 4 };
        let d = p.derive_b1().unwrap();
        assert_eq!(d.r, Ratio::new(1, 2));
        assert_eq!((d.a12, d.a2), (0, 2));
        let t = make_star_form(&p, StarShape::B1Tilde).unwrap();
        assert_eq!(
            free(&t),
            vec![vec![2, 2, 0], vec![0, 0, 4], vec![0, 0, 4], vec![1, 2, 1]]
        );
    }

    #[test]
    fn star_b1_rejects_fractional_entry() {
        let p = StarFormParams { m1: 2, m2: 1, a1: 1, n: 4 };
        let err = make_star_form(&p, StarShape::B1Tilde).unwrap_err();
        assert!(err.to_string().contains("a(x1,x2)"), "{err}");
        let p = StarFormParams { m1: 0, m2: 1, a1: 1, n: 4 };
        assert!(make_star_form(&p, StarShape::B1Tilde).is_err());
    }

    #[test]
    fn star_b2_matches_eq8_at_k1() {
        let p = StarFormParams::b2(1, 3).unwrap();
        assert_eq!(
            make_star_form(&p, StarShape::B2Tilde).unwrap(),
            make_b2tilde_4k3(1).unwrap()
        );
        let bad = StarFormParams { m1: 2, m2: 1, a1: 1, n: 3 };
        assert!(make_star_form(&bad, StarShape::B2Tilde).is_err());
        assert!(StarFormParams::b2(2, 3).is_err());
    }
}
