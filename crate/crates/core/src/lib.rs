//! Exact construction, enumeration and classification of n-valued monoids and
//! groups of order 3.
//!
//! An n-valued monoid on a finite set assigns to each ordered pair a multiset
//! of `n` elements, subject to associativity of the bilinearly extended
//! product and a unit `e` with `e*x = x*e = n.x`. Tables are stored as
//! multiplicity vectors; all arithmetic is exact.
//!
//! * [`table`], [`multiset`], [`normal`]: values, axiom checkers, diagonals
//!   and gcd normalization.
//! * [`classify`]: the series `B1`..`B6`, isomorphism and canonical keys.
//! * [`predicates`]: inverses, reversibility, involutivity, ★-involutivity and
//!   coset recognition.
//! * [`families`]: named tables.
//! * [`enumerate`]: exhaustive search, class census and verification.
//! * [`report`], [`cli`]: the corollary report and the command line.

pub mod classify;
pub mod cli;
pub mod criteria;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod io;
pub mod multiset;
pub mod normal;
pub mod predicates;
pub mod report;
pub mod table;

pub use classify::{canonical_key, find_isomorphism, match_series, Bijection, Series, SeriesMatch};
pub use enumerate::{enumerate_classes, enumerate_monoids, verify_proposition, ClassEntry, EnumReport};
pub use error::{Error, Result};
pub use multiset::Multiset;
pub use normal::{normalize, PrimitiveForm};
pub use predicates::{
    coset_status, inverse_sets, is_commutative, is_group, is_involutive, is_prime_power, is_reversible,
    star_involutive_witness, Coset, InverseReport, StarWitness,
};
pub use table::{check_unit, MValTable, Violation};
