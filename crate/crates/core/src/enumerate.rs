//! Exhaustive enumeration of the `n`-valued monoids of order 3.
//!
//! The unit row and column are forced, so a candidate is determined by the
//! four free entries `x1*x1`, `x1*x2`, `x2*x1`, `x2*x2`, each a size-`n`
//! multiset on three elements. Entries are assigned in that order; after each
//! assignment every non-unit triple whose two sides only touch assigned
//! entries is checked, and failing branches are cut. Survivors are re-checked
//! with the full `k^3` checker before they are emitted.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{canonical_labeling, instantiations, match_series, Bijection, KeyJson, Series, SeriesMatch};
use crate::criteria;
use crate::error::{Error, Result};
use crate::families::single_valued_order3;
use crate::normal::PrimitiveForm;
use crate::predicates::{Coset, PredicateReport};
use crate::table::MValTable;

/// Largest `n` enumerated without an explicit override.
pub const DEFAULT_MAX_N: u64 = 30;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumOptions {
    /// Worker threads; `0` uses the global pool.
    pub jobs: usize,
    /// Lifts the [`DEFAULT_MAX_N`] limit.
    pub allow_large: bool,
}

/// `C(n+2, 2)^4`, the number of candidate tables.
pub fn candidate_count(n: u64) -> u128 {
    let per_entry = (n as u128 + 2) * (n as u128 + 1) / 2;
    per_entry.pow(4)
}

/// All size-`n` multisets on three elements, lexicographically ascending.
pub fn compositions(n: u64) -> Vec<[u64; 3]> {
    (0..=n)
        .flat_map(|a| (0..=n - a).map(move |b| [a, b, n - a - b]))
        .collect()
}

type Cell = Option<[u64; 3]>;

/// A table under construction; `free[0..4]` are `x1*x1, x1*x2, x2*x1, x2*x2`.
struct Partial {
    n: u64,
    free: [Cell; 4],
}

impl Partial {
    fn entry(&self, x: usize, y: usize) -> Cell {
        match (x, y) {
            (0, y) => Some(unit_row(self.n, y)),
            (x, 0) => Some(unit_row(self.n, x)),
            (x, y) => self.free[2 * (x - 1) + (y - 1)],
        }
    }

    /// `sum_w outer[w] * entry(w, z)` (or `entry(x, w)` when `left` is false);
    /// `None` if a needed entry is unassigned.
    fn expand(&self, outer: [u64; 3], fixed: usize, left: bool) -> Option<[u64; 3]> {
        let mut out = [0u64; 3];
        for (w, &m) in outer.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let e = if left { self.entry(w, fixed)? } else { self.entry(fixed, w)? };
            for t in 0..3 {
                out[t] += m * e[t];
            }
        }
        Some(out)
    }

    /// `Some(ok)` when the triple only involves assigned entries.
    fn triple(&self, x: usize, y: usize, z: usize) -> Option<bool> {
        let lhs = self.expand(self.entry(x, y)?, z, true)?;
        let rhs = self.expand(self.entry(y, z)?, x, false)?;
        Some(lhs == rhs)
    }

    fn consistent(&self) -> bool {
        for x in 1..3 {
            for y in 1..3 {
                for z in 1..3 {
                    if self.triple(x, y, z) == Some(false) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn unit_row(n: u64, x: usize) -> [u64; 3] {
    let mut r = [0; 3];
    r[x] = n;
    r
}

fn search(p: &mut Partial, level: usize, comps: &[[u64; 3]], out: &mut Vec<MValTable>) {
    if level == 4 {
        let [a, b, d, c] = p.free.map(|e| e.expect("all entries assigned"));
        let table = MValTable::order3(p.n, a, b, d, c).expect("compositions give valid rows");
        if table.is_associative() {
            out.push(table);
        }
        return;
    }
    for comp in comps {
        p.free[level] = Some(*comp);
        if p.consistent() {
            search(p, level + 1, comps, out);
        }
    }
    p.free[level] = None;
}

fn check_capacity(n: u64, opts: &EnumOptions) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > DEFAULT_MAX_N && !opts.allow_large {
        return Err(Error::Capacity {
            n,
            candidates: candidate_count(n),
            limit: DEFAULT_MAX_N,
        });
    }
    Ok(())
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Every associative order-3 `n`-valued table with unit `0`, in lexicographic
/// order of the free entries.
pub fn enumerate_monoids(n: u64) -> Result<Vec<MValTable>> {
    enumerate_monoids_with(n, &EnumOptions::default())
}

pub fn enumerate_monoids_with(n: u64, opts: &EnumOptions) -> Result<Vec<MValTable>> {
    check_capacity(n, opts)?;
    let comps = compositions(n);
    let chunks: Vec<Vec<MValTable>> = with_pool(opts.jobs, || {
        comps
            .par_iter()
            .map(|first| {
                let mut p = Partial {
                    n,
                    free: [Some(*first), None, None, None],
                };
                let mut out = Vec::new();
                if p.consistent() {
                    search(&mut p, 1, &comps, &mut out);
                }
                out
            })
            .collect()
    });
    Ok(chunks.into_iter().flatten().collect())
}

/// Series matches of one relabeling of a class representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Labeling {
    #[serde(rename = "map")]
    pub bijection: Bijection,
    pub matches: Vec<SeriesMatch>,
}

/// One isomorphism class of `n`-valued monoids of order 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassEntry {
    pub key: PrimitiveForm,
    /// The key scaled back to valuedness `n`, in canonical labeling.
    pub representative: MValTable,
    /// Labeled tables at this `n` falling into the class.
    pub members: usize,
    pub labelings: Vec<Labeling>,
    pub predicates: PredicateReport,
}

impl ClassEntry {
    /// Matches of the representative itself.
    pub fn matches(&self) -> &[SeriesMatch] {
        &self.labelings[0].matches
    }

    /// Series reached under some unit-fixing relabeling.
    pub fn series(&self) -> BTreeSet<Series> {
        self.labelings
            .iter()
            .flat_map(|l| l.matches.iter().map(|m| m.series()))
            .collect()
    }

    fn from_members(key: PrimitiveForm, members: usize, n: u64) -> Result<Self> {
        let representative = key.scaled(n / key.n())?;
        let labelings = Bijection::all(representative.order())
            .into_iter()
            .map(|phi| {
                let matches = match_series(&phi.transport(&representative))?;
                Ok(Labeling {
                    bijection: phi,
                    matches,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let predicates = PredicateReport::of(&representative);
        Ok(ClassEntry {
            key,
            representative,
            members,
            labelings,
            predicates,
        })
    }
}

impl Serialize for ClassEntry {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            key: KeyJson<'a>,
            representative: crate::io::TableJson,
            members: usize,
            series: BTreeSet<Series>,
            matches: &'a [SeriesMatch],
            labelings: &'a [Labeling],
            predicates: &'a PredicateReport,
        }
        Json {
            key: KeyJson(&self.key),
            representative: crate::io::TableJson::from(&self.representative),
            members: self.members,
            series: self.series(),
            matches: self.matches(),
            labelings: &self.labelings,
            predicates: &self.predicates,
        }
        .serialize(serializer)
    }
}

/// Groups labeled tables into isomorphism classes sorted by canonical key.
pub fn classes_of(tables: &[MValTable], n: u64, jobs: usize) -> Result<Vec<ClassEntry>> {
    let keys: Vec<PrimitiveForm> = with_pool(jobs, || {
        tables.par_iter().map(|t| canonical_labeling(t).0).collect()
    });
    let mut counts: BTreeMap<PrimitiveForm, usize> = BTreeMap::new();
    for key in keys {
        *counts.entry(key).or_default() += 1;
    }
    let entries: Vec<(PrimitiveForm, usize)> = counts.into_iter().collect();
    with_pool(jobs, || {
        entries
            .into_par_iter()
            .map(|(key, members)| ClassEntry::from_members(key, members, n))
            .collect()
    })
}

pub fn enumerate_classes(n: u64) -> Result<Vec<ClassEntry>> {
    enumerate_classes_with(n, &EnumOptions::default())
}

pub fn enumerate_classes_with(n: u64, opts: &EnumOptions) -> Result<Vec<ClassEntry>> {
    let tables = enumerate_monoids_with(n, opts)?;
    classes_of(&tables, n, opts.jobs)
}

/// A named invariant evaluated during verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    pub fn new(name: impl Into<String>, failures: Vec<String>, checked: usize) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{checked} checked")
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!("{} of {checked} failed: {}", failures.len(), shown.join("; "))
        };
        CheckOutcome {
            name: name.into(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumReport {
    pub n: u64,
    pub raw_count: usize,
    pub class_count: usize,
    /// Classes reaching each series under some relabeling.
    pub per_series: BTreeMap<Series, usize>,
    #[serde(serialize_with = "crate::io::serialize_tables")]
    pub unmatched: Vec<MValTable>,
    pub group_count: usize,
    pub commutative_group_count: usize,
    pub reversible_count: usize,
    pub involutive_count: usize,
    pub star_count: usize,
    pub coset_yes_count: usize,
    /// `B1` groups carrying a literal ★-witness; see [`criteria`].
    #[serde(serialize_with = "crate::io::serialize_tables")]
    pub b1_star_groups: Vec<MValTable>,
    pub checks: Vec<CheckOutcome>,
}

impl EnumReport {
    /// The classification is complete at this `n` and every invariant held.
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

/// Canonical keys of the two noncommutative single-valued monoids.
pub fn noncommutative_keys() -> [PrimitiveForm; 2] {
    let sv = single_valued_order3();
    [canonical_labeling(&sv[5]).0, canonical_labeling(&sv[6]).0]
}

/// Runs the full pipeline at `n` and evaluates the classification and its
/// corollaries on every labeled table and class.
pub fn verify_proposition(n: u64) -> Result<EnumReport> {
    verify_proposition_with(n, &EnumOptions::default())
}

pub fn verify_proposition_with(n: u64, opts: &EnumOptions) -> Result<EnumReport> {
    let tables = enumerate_monoids_with(n, opts)?;
    let classes = classes_of(&tables, n, opts.jobs)?;
    let matched: Vec<Vec<SeriesMatch>> = tables
        .iter()
        .map(match_series)
        .collect::<Result<Vec<_>>>()?;

    let unmatched: Vec<MValTable> = tables
        .iter()
        .zip(&matched)
        .filter(|(_, m)| m.is_empty())
        .map(|(t, _)| t.clone())
        .collect();

    let mut per_series: BTreeMap<Series, usize> = Series::ALL.iter().map(|&s| (s, 0)).collect();
    for class in &classes {
        for s in class.series() {
            *per_series.entry(s).or_default() += 1;
        }
    }

    let count = |f: &dyn Fn(&ClassEntry) -> bool| classes.iter().filter(|c| f(c)).count();
    let group_count = count(&|c| c.predicates.group);
    let commutative_group_count = count(&|c| c.predicates.group && c.predicates.commutative);

    let mut checks = Vec::new();

    let table_set: HashSet<&MValTable> = tables.iter().collect();
    let inst = instantiations(n);
    let missing: Vec<String> = inst
        .iter()
        .filter(|m| !m.build(n).is_some_and(|t| table_set.contains(&t)))
        .map(|m| m.to_string())
        .collect();
    checks.push(CheckOutcome::new("every series instantiation is enumerated", missing, inst.len()));

    let mut reports = Vec::with_capacity(tables.len());
    for t in &tables {
        reports.push(PredicateReport::of(t));
    }
    let labeled = || tables.iter().zip(&matched).zip(&reports).map(|((t, m), r)| (t, m.as_slice(), r));

    checks.push(criteria::groups_in_b1_b2(labeled()));
    checks.push(criteria::group_criterion(labeled()));
    checks.push(criteria::groups_commutative(labeled()));
    checks.push(criteria::reversibility_criterion(labeled()));
    checks.push(criteria::involutivity_criterion(labeled()));
    checks.push(criteria::inclusion_chain(labeled()));

    let nc_keys = noncommutative_keys();
    let noncomm: Vec<&ClassEntry> = classes.iter().filter(|c| !c.predicates.commutative).collect();
    let bad: Vec<String> = noncomm
        .iter()
        .filter(|c| !nc_keys.contains(&c.key))
        .map(|c| format!("{:?}", crate::io::TableJson::from(&c.representative)))
        .chain((noncomm.len() > 2).then(|| format!("{} noncommutative classes", noncomm.len())))
        .collect();
    checks.push(CheckOutcome::new(
        "noncommutative classes are diagonals of the two single-valued ones",
        bad,
        noncomm.len(),
    ));

    let mut bad = Vec::new();
    for s in [Series::B5, Series::B6] {
        let c = per_series[&s];
        if c != 1 {
            bad.push(format!("{s}: {c} classes"));
        }
    }
    checks.push(CheckOutcome::new("B5 and B6 each form one class", bad, 2));

    let b1_star_groups = tables
        .iter()
        .zip(&matched)
        .zip(&reports)
        .filter(|((_, m), r)| {
            r.group && r.star_involutive.is_some() && m.iter().any(|m| m.series() == Series::B1)
        })
        .map(|((t, _), _)| t.clone())
        .collect();

    Ok(EnumReport {
        n,
        raw_count: tables.len(),
        class_count: classes.len(),
        per_series,
        unmatched,
        group_count,
        commutative_group_count,
        reversible_count: count(&|c| c.predicates.group && c.predicates.reversible),
        involutive_count: count(&|c| c.predicates.involutive),
        star_count: count(&|c| c.predicates.star_involutive.is_some()),
        coset_yes_count: count(&|c| c.predicates.coset.verdict == Coset::Yes),
        b1_star_groups,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_are_lexicographic() {
        assert_eq!(compositions(1), vec![[0, 0, 1], [0, 1, 0], [1, 0, 0]]);
        assert_eq!(compositions(4).len(), 15);
    }

    #[test]
    fn candidate_counts() {
        assert_eq!(candidate_count(1), 81);
        assert_eq!(candidate_count(2), 1296);
        assert_eq!(candidate_count(6), 28u128.pow(4));
    }

    #[test]
    fn rejects_zero_and_large() {
        assert!(matches!(enumerate_monoids(0), Err(Error::InvalidArgument(_))));
        match enumerate_monoids(31) {
            Err(Error::Capacity { candidates, .. }) => assert_eq!(candidates, 528u128.pow(4)),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn pruned_search_agrees_with_plain_filter() {
        for n in 1..=3 {
            let comps = compositions(n);
            let mut plain = Vec::new();
            for a in &comps {
                for b in &comps {
                    for d in &comps {
                        for c in &comps {
                            let t = MValTable::order3(n, *a, *b, *d, *c).unwrap();
                            if t.is_associative() {
                                plain.push(t);
                            }
                        }
                    }
                }
            }
            assert_eq!(enumerate_monoids(n).unwrap(), plain, "n = {n}");
        }
    }

    #[test]
    fn n1_has_seven_classes() {
        let classes = enumerate_classes(1).unwrap();
        assert_eq!(classes.len(), 7);
        assert_eq!(classes.iter().map(|c| c.members).sum::<usize>(), 11);
    }

    #[test]
    fn classes_are_sorted_by_key() {
        let classes = enumerate_classes(3).unwrap();
        assert!(classes.windows(2).all(|w| w[0].key < w[1].key));
    }

    #[test]
    fn jobs_do_not_change_output() {
        let one = enumerate_classes_with(3, &EnumOptions { jobs: 1, allow_large: false }).unwrap();
        let many = enumerate_classes_with(3, &EnumOptions { jobs: 4, allow_large: false }).unwrap();
        assert_eq!(one, many);
    }
}
