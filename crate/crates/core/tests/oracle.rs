//! Cross-checks the enumerator against a deliberately naive brute force that
//! shares no code with the library.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use nvalued::enumerate::{enumerate_classes_with, enumerate_monoids_with, EnumOptions};
use nvalued::{classify::instantiations, match_series};

type Table = [[[u64; 3]; 3]; 3];

fn comps(n: u64) -> Vec<[u64; 3]> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            out.push([a, b, n - a - b]);
        }
    }
    out
}

fn build(n: u64, free: [[u64; 3]; 4]) -> Table {
    let mut t = [[[0; 3]; 3]; 3];
    for j in 0..3 {
        t[0][j][j] = n;
        t[j][0][j] = n;
    }
    t[1][1] = free[0];
    t[1][2] = free[1];
    t[2][1] = free[2];
    t[2][2] = free[3];
    t
}

/// Expands products as explicit lists of elements and compares sorted lists.
fn associative(t: &Table) -> bool {
    let expand = |m: &[u64; 3]| -> Vec<usize> {
        (0..3).flat_map(|z| std::iter::repeat_n(z, m[z] as usize)).collect()
    };
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                let mut lhs = Vec::new();
                for w in expand(&t[x][y]) {
                    lhs.extend(expand(&t[w][z]));
                }
                let mut rhs = Vec::new();
                for w in expand(&t[y][z]) {
                    rhs.extend(expand(&t[x][w]));
                }
                lhs.sort();
                rhs.sort();
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smallest of the gcd-reduced table and its `x1 <-> x2` relabeling.
fn key(n: u64, t: &Table) -> (u64, Vec<u64>) {
    let g = t.iter().flatten().flatten().fold(n, |g, &c| gcd(g, c));
    let p = [0usize, 2, 1];
    let mut s = [[[0; 3]; 3]; 3];
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                s[p[x]][p[y]][p[z]] = t[x][y][z];
            }
        }
    }
    let flat = |t: &Table| t.iter().flatten().flatten().map(|c| c / g).collect::<Vec<_>>();
    (n / g, flat(t).min(flat(&s)))
}

fn brute(n: u64) -> Vec<Table> {
    let c = comps(n);
    let mut out = Vec::new();
    for a in &c {
        for b in &c {
            for d in &c {
                for e in &c {
                    let t = build(n, [*a, *b, *d, *e]);
                    if associative(&t) {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

fn as_array(t: &nvalued::MValTable) -> Table {
    let mut out = [[[0; 3]; 3]; 3];
    for x in 0..3 {
        for y in 0..3 {
            out[x][y].copy_from_slice(t.product(x, y).counts());
        }
    }
    out
}

#[test]
fn raw_tables_agree_with_brute_force() {
    for n in 1..=3 {
        let expected: BTreeSet<Table> = brute(n).into_iter().collect();
        let got: BTreeSet<Table> = enumerate_monoids_with(n, &EnumOptions::default())
            .unwrap()
            .iter()
            .map(as_array)
            .collect();
        assert_eq!(got, expected, "n={n}");
    }
}

#[test]
fn class_counts_agree_with_brute_force() {
    for n in 1..=3 {
        // Isomorphism at a fixed n only needs gcd reduction and the swap.
        let keys: BTreeSet<_> = brute(n).iter().map(|t| key(n, t)).collect();
        let classes = enumerate_classes_with(n, &EnumOptions::default()).unwrap();
        assert_eq!(classes.len(), keys.len(), "n={n}");
        let members: usize = classes.iter().map(|c| c.members).sum();
        assert_eq!(members, brute(n).len(), "n={n}");
    }
}

#[test]
fn frozen_counts() {
    let expected = [(1, 11, 7), (2, 25, 15), (3, 43, 24), (4, 76, 42), (5, 100, 54), (6, 154, 83)];
    for (n, raw, classes) in expected {
        let opts = EnumOptions::default();
        assert_eq!(enumerate_monoids_with(n, &opts).unwrap().len(), raw, "raw n={n}");
        assert_eq!(enumerate_classes_with(n, &opts).unwrap().len(), classes, "classes n={n}");
    }
}

#[test]
fn every_instantiation_is_associative_and_rematches() {
    for n in 1..=6 {
        for m in instantiations(n) {
            let t = m.build(n).expect("instantiation builds");
            assert!(associative(&as_array(&t)), "{m} at n={n}");
            assert!(match_series(&t).unwrap().contains(&m), "{m} at n={n}");
        }
    }
}
