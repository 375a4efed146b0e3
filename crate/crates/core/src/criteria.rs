//! Parameter criteria relating series membership to the group predicates,
//! evaluated over labeled tables.
//!
//! For `B1` tables the group condition is `a0 c0 > 0`. For `B2` tables, with
//! `s = b0(n - b0 - b1) + a0 b1 - a1 b0` (the numerator of `c0`):
//!
//! * group iff `b0 + a0 s > 0`;
//! * a group is non-reversible iff `b0 (a0 + s) > 0`;
//! * a group is involutive iff `b0 = 0`; every `B1` group is involutive.
//!
//! The ★-involutivity predicate is implemented literally, under which `B1`
//! groups carry the identity as a witness. Those are reported separately by
//! the enumerator rather than treated as failures.

use crate::classify::SeriesMatch;
use crate::enumerate::CheckOutcome;
use crate::predicates::{Coset, PredicateReport};
use crate::table::MValTable;

fn b2_core(n: u64, a0: u64, a1: u64, b0: u64, b1: u64) -> i128 {
    let [n, a0, a1, b0, b1] = [n, a0, a1, b0, b1].map(i128::from);
    b0 * (n - b0 - b1) + a0 * b1 - a1 * b0
}

/// The group condition read off the parameters, for `B1` and `B2` matches.
pub fn group_condition(n: u64, m: &SeriesMatch) -> Option<bool> {
    match *m {
        SeriesMatch::B1 { a0, c0 } => Some(a0 * c0 > 0),
        SeriesMatch::B2 { a0, a1, b0, b1 } => {
            Some(i128::from(b0) + i128::from(a0) * b2_core(n, a0, a1, b0, b1) > 0)
        }
        _ => None,
    }
}

/// Non-reversibility condition of a `B2` group.
pub fn nonreversible_condition(n: u64, m: &SeriesMatch) -> Option<bool> {
    match *m {
        SeriesMatch::B2 { a0, a1, b0, b1 } => {
            Some(i128::from(b0) * (i128::from(a0) + b2_core(n, a0, a1, b0, b1)) > 0)
        }
        _ => None,
    }
}

/// Involutivity condition of a group from its matches.
pub fn involutive_condition(matches: &[SeriesMatch]) -> bool {
    matches.iter().any(|m| match m {
        SeriesMatch::B1 { .. } => true,
        SeriesMatch::B2 { b0, .. } => *b0 == 0,
        _ => false,
    })
}

pub type Labeled<'a> = (&'a MValTable, &'a [SeriesMatch], &'a PredicateReport);

fn short(t: &MValTable, m: &[SeriesMatch]) -> String {
    let tags: Vec<String> = m.iter().map(|m| m.to_string()).collect();
    let free: Vec<String> = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .map(|&(x, y)| format!("{:?}", t.product(x, y).counts()))
        .collect();
    format!("n={} {} [{}]", t.n(), free.join(" "), tags.join(", "))
}

pub fn groups_in_b1_b2<'a>(items: impl Iterator<Item = Labeled<'a>>) -> CheckOutcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (t, m, _) in items.filter(|(_, _, r)| r.group) {
        checked += 1;
        if !m.iter().any(|m| group_condition(t.n(), m).is_some()) {
            bad.push(short(t, m));
        }
    }
    CheckOutcome::new("every group lies in B1 or B2", bad, checked)
}

pub fn group_criterion<'a>(items: impl Iterator<Item = Labeled<'a>>) -> CheckOutcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (t, ms, r) in items {
        for m in ms {
            if let Some(expected) = group_condition(t.n(), m) {
                checked += 1;
                if expected != r.group {
                    bad.push(format!("{} group={}", short(t, ms), r.group));
                }
            }
        }
    }
    CheckOutcome::new("group iff a0c0 > 0 (B1) / b0 + a0 s > 0 (B2)", bad, checked)
}

pub fn groups_commutative<'a>(items: impl Iterator<Item = Labeled<'a>>) -> CheckOutcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (t, m, r) in items.filter(|(_, _, r)| r.group) {
        checked += 1;
        if !r.commutative {
            bad.push(short(t, m));
        }
    }
    CheckOutcome::new("every group is commutative", bad, checked)
}

pub fn reversibility_criterion<'a>(items: impl Iterator<Item = Labeled<'a>>) -> CheckOutcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (t, ms, r) in items.filter(|(_, _, r)| r.group) {
        checked += 1;
        let expected = ms
            .iter()
            .any(|m| nonreversible_condition(t.n(), m) == Some(true));
        if expected == r.reversible {
            bad.push(format!("{} reversible={}", short(t, ms), r.reversible));
        }
    }
    CheckOutcome::new("a group is non-reversible iff B2 with b0(a0 + s) > 0", bad, checked)
}

pub fn involutivity_criterion<'a>(items: impl Iterator<Item = Labeled<'a>>) -> CheckOutcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (t, ms, r) in items.filter(|(_, _, r)| r.group) {
        checked += 1;
        if involutive_condition(ms) != r.involutive {
            bad.push(format!("{} involutive={}", short(t, ms), r.involutive));
        }
    }
    CheckOutcome::new("a group is involutive iff B1, or B2 with b0 = 0", bad, checked)
}

pub fn inclusion_chain<'a>(items: impl Iterator<Item = Labeled<'a>>) -> CheckOutcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (t, ms, r) in items {
        checked += 1;
        let star = r.star_involutive.is_some();
        if r.coset.verdict == Coset::Yes && !star {
            bad.push(format!("{} coset without star witness", short(t, ms)));
        }
        if star && !r.reversible {
            bad.push(format!("{} star witness but not reversible", short(t, ms)));
        }
        if r.involutive && !star {
            bad.push(format!("{} involutive without star witness", short(t, ms)));
        }
    }
    CheckOutcome::new("coset => star-involutive => reversible; involutive => star-involutive", bad, checked)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conditions_on_named_tables() {
        // X3 is a non-reversible B2 group
        let xn = SeriesMatch::B2 { a0: 1, a1: 0, b0: 1, b1: 1 };
        assert_eq!(group_condition(3, &xn), Some(true));
        assert_eq!(nonreversible_condition(3, &xn), Some(true));
        // Z/3
        let z3 = SeriesMatch::B2 { a0: 0, a1: 0, b0: 1, b1: 0 };
        assert_eq!(group_condition(1, &z3), Some(true));
        assert_eq!(nonreversible_condition(1, &z3), Some(false));
        assert!(!involutive_condition(&[z3]));
        assert_eq!(group_condition(4, &SeriesMatch::B1 { a0: 2, c0: 1 }), Some(true));
        assert_eq!(group_condition(4, &SeriesMatch::B1 { a0: 2, c0: 0 }), Some(false));
        assert_eq!(group_condition(1, &SeriesMatch::B5), None);
        assert!(involutive_condition(&[SeriesMatch::B1 { a0: 2, c0: 1 }]));
    }
}
