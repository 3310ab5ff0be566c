//! Exact calculator for cohomological dimensions of complements of the sink
//! (or source) of a `G_m`-action, for varieties with an affine-bundle
//! stratification.
//!
//! * [`exactlin`]: exact rational linear algebra used everywhere else.
//! * [`toric`]: Bialynicki-Birula decompositions of simplicial toric varieties.
//! * [`rootsys`] and [`bruhat`]: root data, Weyl groups and Bruhat cells on `G/P`.
//! * [`strat`]: the generic stratification bound and its equality criterion.
//! * [`ratmap`]: image dimension of a rational map, bounding cd of a zero-locus complement.
//! * [`cli`]: job documents, builtin examples and report rendering.

pub mod bruhat;
pub mod cli;
pub mod exactlin;
pub mod ratmap;
pub mod rootsys;
pub mod strat;
pub mod toric;

use serde::ser::{SerializeSeq, Serializer};

use exactlin::{IntVector, Rational};

pub(crate) fn serialize_rationals<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}

pub(crate) fn serialize_int_vector<S: Serializer>(v: &IntVector, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for c in v.coords() {
        seq.serialize_element(&c.to_string())?;
    }
    seq.end()
}
