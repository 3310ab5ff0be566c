//! Sparse multivariate polynomials over the rationals and the generic rank of
//! the Jacobian of a map between projective spaces.
//!
//! The image dimension of `f: P^n --> P^m` is one less than the generic rank of
//! the Jacobian of its affine cone. The rank is estimated by exact evaluation at
//! random integer points (Schwartz-Zippel), so the result is a lower bound that
//! equals the generic value with high probability.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{RatMatrix, Rational};

/// Default number of random evaluation points.
pub const DEFAULT_TRIALS: usize = 5;

/// Half-width of the first sampling box; it doubles with every trial.
const INITIAL_RANGE: i64 = 10;

/// Resampling attempts per trial when a point lands in the base locus.
const BASE_LOCUS_RETRIES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatMapError {
    #[error("expected {expected} components for a map to P^{m}, got {found}", expected = m + 1)]
    ComponentCount { m: usize, found: usize },
    #[error("component {component} has {found} variables, expected {expected}")]
    VariableCount { component: usize, expected: usize, found: usize },
    #[error("term exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },
    #[error("component {component} is not homogeneous")]
    NotHomogeneous { component: usize },
    #[error("component {component} has degree {found}, expected {expected}")]
    DegreeMismatch { component: usize, expected: u32, found: u32 },
    #[error("all components are identically zero")]
    ZeroMap,
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("every sampled point in {trials} trials lies in the base locus; try more trials")]
    BaseLocus { trials: usize },
}

/// Sparse polynomial: exponent vector -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, RatMapError> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(RatMapError::ExponentLength { expected: nvars, found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// The common degree of all terms, or `None` if the terms disagree or the
    /// polynomial is zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).dedup().exactly_one().ok()
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for ((e1, c1), (e2, c2)) in self.terms.iter().cartesian_product(&other.terms) {
            let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            out.add_term(e, c1 * c2);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, c * Rational::from_integer(BigInt::from(e[var])));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
            })
            .sum()
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        let nvars = images.first().map_or(self.nvars, MultiPoly::nvars);
        let mut out = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut term = Self::constant(nvars, c.clone());
            for (img, &k) in images.iter().zip(e) {
                for _ in 0..k {
                    term = term.mul(img);
                }
            }
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let body = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
                    .join("*");
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono,
                    (false, false) => format!("{c}*{mono}"),
                }
            })
            .join(" + ");
        write!(f, "{body}")
    }
}

/// A map `P^n --> P^m` given by `m + 1` homogeneous components of equal degree
/// in `n + 1` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMapSpec {
    n: usize,
    m: usize,
    components: Vec<MultiPoly>,
    degree: u32,
}

impl RationalMapSpec {
    pub fn new(n: usize, m: usize, components: Vec<MultiPoly>) -> Result<Self, RatMapError> {
        if components.len() != m + 1 {
            return Err(RatMapError::ComponentCount { m, found: components.len() });
        }
        let mut degree = None;
        for (component, p) in components.iter().enumerate() {
            if p.nvars() != n + 1 {
                return Err(RatMapError::VariableCount { component, expected: n + 1, found: p.nvars() });
            }
            if p.is_zero() {
                continue;
            }
            let d = p.homogeneous_degree().ok_or(RatMapError::NotHomogeneous { component })?;
            match degree {
                None => degree = Some(d),
                Some(expected) if expected != d => {
                    return Err(RatMapError::DegreeMismatch { component, expected, found: d })
                }
                _ => {}
            }
        }
        let degree = degree.ok_or(RatMapError::ZeroMap)?;
        Ok(RationalMapSpec { n, m, components, degree })
    }

    pub fn source_dim(&self) -> usize {
        self.n
    }

    pub fn target_dim(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    /// Precomposes with the linear substitution `x_i -> Σ_j a_ij x_j`.
    pub fn reparametrize(&self, a: &[Vec<i64>]) -> RationalMapSpec {
        let k = self.n + 1;
        let images: Vec<MultiPoly> = a
            .iter()
            .map(|row| {
                (0..k).fold(MultiPoly::zero(k), |acc, j| {
                    acc.add(&MultiPoly::var(k, j).scale(&Rational::from_integer(row[j].into())))
                })
            })
            .collect();
        RationalMapSpec {
            n: self.n,
            m: self.m,
            components: self.components.iter().map(|p| p.compose(&images)).collect(),
            degree: self.degree,
        }
    }
}

/// `(m+1) x (n+1)` matrix of partial derivatives.
pub fn jacobian(map: &RationalMapSpec) -> Vec<Vec<MultiPoly>> {
    map.components.iter().map(|f| (0..=map.n).map(|i| f.derivative(i)).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageDimension {
    /// Projective dimension of the image.
    pub dim: usize,
    /// Largest Jacobian rank seen.
    pub rank: usize,
    /// Jacobian rank at the point sampled in each trial (`None` when every
    /// attempt in that trial hit the base locus).
    pub ranks: Vec<Option<usize>>,
    pub seed: u64,
}

/// Estimates the image dimension from the maximal Jacobian rank over
/// `trials` random integer points. Trial `t` samples coordinates from
/// `[-10·2^t, 10·2^t]`; points in the base locus are resampled.
pub fn image_dimension(map: &RationalMapSpec, trials: usize, seed: u64) -> Result<ImageDimension, RatMapError> {
    sample_ranks(map, trials, seed, INITIAL_RANGE)
}

fn sample_ranks(
    map: &RationalMapSpec,
    trials: usize,
    seed: u64,
    initial_range: i64,
) -> Result<ImageDimension, RatMapError> {
    if trials == 0 {
        return Err(RatMapError::NoTrials);
    }
    let jac = jacobian(map);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = Vec::with_capacity(trials);
    for t in 0..trials {
        let bound = initial_range << t.min(40);
        let mut rank = None;
        for _ in 0..BASE_LOCUS_RETRIES {
            let point: Vec<Rational> =
                (0..=map.n).map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into())).collect();
            if map.components.iter().all(|f| f.eval(&point).is_zero()) {
                continue;
            }
            let entries = jac.iter().flat_map(|row| row.iter().map(|p| p.eval(&point))).collect();
            let m = RatMatrix::new(map.m + 1, map.n + 1, entries).expect("jacobian shape");
            rank = Some(m.rank());
            break;
        }
        ranks.push(rank);
    }
    let Some(rank) = ranks.iter().flatten().copied().max() else {
        return Err(RatMapError::BaseLocus { trials });
    };
    // degree-0 maps are constant and have zero Jacobian
    Ok(ImageDimension { dim: rank.max(1) - 1, rank, ranks, seed })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroLocusBound {
    pub bound: usize,
    pub image: ImageDimension,
    pub note: String,
}

/// Upper bound on `cd(X ∖ Z)` by the image dimension of the map `f` whose
/// components the caller supplies.
pub fn cd_bound_zero_locus(map: &RationalMapSpec, trials: usize, seed: u64) -> Result<ZeroLocusBound, RatMapError> {
    let image = image_dimension(map, trials, seed)?;
    Ok(ZeroLocusBound {
        bound: image.dim,
        note: "upper bound only; it can be strict (for the complement of a general plane-quadric \
               intersection in P^3 the true cd is 1)"
            .into(),
        image,
    })
}

/// Sign-aware rational parser for `"p"` or `"p/q"` strings.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    let r = Rational::new(num, den);
    debug_assert!(r.denom().is_positive());
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn x(nvars: usize, i: usize) -> MultiPoly {
        MultiPoly::var(nvars, i)
    }

    fn identity(n: usize) -> RationalMapSpec {
        RationalMapSpec::new(n, n, (0..=n).map(|i| x(n + 1, i)).collect()).unwrap()
    }

    fn veronese() -> RationalMapSpec {
        let (a, b) = (x(2, 0), x(2, 1));
        RationalMapSpec::new(1, 2, vec![a.mul(&a), a.mul(&b), b.mul(&b)]).unwrap()
    }

    /// `[x0 s1 : x1 s1 : x2 s1 : x3 s1 : s2]` with `s1 = Σ x_i`, `s2 = Σ x_i²`.
    fn plane_quadric() -> RationalMapSpec {
        let s1 = (0..4).fold(MultiPoly::zero(4), |acc, i| acc.add(&x(4, i)));
        let s2 = (0..4).fold(MultiPoly::zero(4), |acc, i| acc.add(&x(4, i).mul(&x(4, i))));
        let mut comps: Vec<MultiPoly> = (0..4).map(|i| x(4, i).mul(&s1)).collect();
        comps.push(s2);
        RationalMapSpec::new(3, 4, comps).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian(&identity(1));
        assert_eq!(j[0][0], MultiPoly::constant(2, q(1)));
        assert!(j[0][1].is_zero() && j[1][0].is_zero());
        assert_eq!(j[1][1], MultiPoly::constant(2, q(1)));

        let j = jacobian(&veronese());
        assert_eq!(j[0][0], x(2, 0).scale(&q(2)));
        assert!(j[0][1].is_zero());
        assert_eq!(j[1][0], x(2, 1));
        assert_eq!(j[1][1], x(2, 0));
        assert!(j[2][0].is_zero());
        assert_eq!(j[2][1], x(2, 1).scale(&q(2)));

        let j = jacobian(&plane_quadric());
        assert_eq!((j.len(), j[0].len()), (5, 4));
        // ∂(x0 s1)/∂x0 = s1 + x0
        assert_eq!(j[0][0].to_string(), "2*x0 + x1 + x2 + x3");
    }

    #[test]
    fn image_dimension_examples() {
        for n in 1..=4 {
            assert_eq!(image_dimension(&identity(n), 5, 0).unwrap().dim, n);
        }
        assert_eq!(image_dimension(&veronese(), 5, 0).unwrap().dim, 1);
    }

    #[test]
    fn plane_quadric_map_is_generically_finite() {
        // the first four components recover [x] wherever s1 != 0, so the
        // image is three-dimensional
        let d = image_dimension(&plane_quadric(), 5, 0).unwrap();
        assert_eq!((d.rank, d.dim), (4, 3));
    }

    #[test]
    fn zero_locus_bound_examples() {
        // [x0 : 2 x0] collapses P^1 to a point
        let constant = RationalMapSpec::new(1, 1, vec![x(2, 0), x(2, 0).scale(&q(2))]).unwrap();
        assert_eq!(cd_bound_zero_locus(&constant, 5, 1).unwrap().bound, 0);
        // P^2 -> P^2 through the line spanned by two linear forms
        let (a, b) = (x(3, 0).add(&x(3, 1)), x(3, 1).add(&x(3, 2).scale(&q(-3))));
        let through_line = RationalMapSpec::new(2, 2, vec![a.clone(), b.clone(), a.add(&b)]).unwrap();
        assert_eq!(cd_bound_zero_locus(&through_line, 5, 1).unwrap().bound, 1);
        let degree_zero =
            RationalMapSpec::new(1, 1, vec![MultiPoly::constant(2, q(1)), MultiPoly::constant(2, q(2))]).unwrap();
        assert_eq!(image_dimension(&degree_zero, 2, 0).unwrap().dim, 0);
    }

    #[test]
    fn spec_errors() {
        assert!(matches!(RationalMapSpec::new(1, 1, vec![x(2, 0)]), Err(RatMapError::ComponentCount { .. })));
        assert!(matches!(
            RationalMapSpec::new(1, 1, vec![x(2, 0), x(3, 0)]),
            Err(RatMapError::VariableCount { component: 1, .. })
        ));
        let inhom = x(2, 0).add(&x(2, 0).mul(&x(2, 1)));
        assert!(matches!(
            RationalMapSpec::new(1, 1, vec![x(2, 0), inhom]),
            Err(RatMapError::NotHomogeneous { component: 1 })
        ));
        assert!(matches!(
            RationalMapSpec::new(1, 1, vec![x(2, 0), x(2, 0).mul(&x(2, 1))]),
            Err(RatMapError::DegreeMismatch { .. })
        ));
        assert_eq!(RationalMapSpec::new(1, 1, vec![MultiPoly::zero(2), MultiPoly::zero(2)]), Err(RatMapError::ZeroMap));
        assert_eq!(image_dimension(&identity(1), 0, 0), Err(RatMapError::NoTrials));
    }

    #[test]
    fn base_locus_everywhere_is_reported() {
        // a zero-width sampling box only ever produces the origin
        let err = sample_ranks(&identity(2), 3, 7, 0).unwrap_err();
        assert_eq!(err, RatMapError::BaseLocus { trials: 3 });
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/6"), Some(Rational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("-4"), Some(q(-4)));
        assert_eq!(parse_rational("1/-2"), Some(Rational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn euler_identity_on_examples() {
        for map in [veronese(), plane_quadric(), identity(3)] {
            let k = map.source_dim() + 1;
            for f in map.components() {
                let lhs = (0..k).fold(MultiPoly::zero(k), |acc, i| acc.add(&x(k, i).mul(&f.derivative(i))));
                assert_eq!(lhs, f.scale(&q(map.degree() as i64)));
            }
        }
    }

    fn poly_strategy(nvars: usize, degree: u32) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..=degree, nvars), -5i64..=5), 1..6).prop_map(move |terms| {
            // force homogeneity by putting the leftover degree on the last variable
            let terms = terms.into_iter().filter_map(|(mut e, c)| {
                let head: u32 = e[..nvars - 1].iter().sum();
                if head > degree {
                    return None;
                }
                e[nvars - 1] = degree - head;
                Some((e, q(c)))
            });
            MultiPoly::from_terms(nvars, terms).unwrap()
        })
    }

    /// Product of elementary integer matrices, so determinant ±1.
    fn unimodular(k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec((0..k, 0..k, -2i64..=2), 0..6).prop_map(move |ops| {
            let mut a: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
            for (r, s, c) in ops {
                if r != s {
                    let src = a[s].clone();
                    for (x, y) in a[r].iter_mut().zip(src) {
                        *x += c * y;
                    }
                }
            }
            a
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn euler_identity(f in poly_strategy(3, 3)) {
            prop_assume!(!f.is_zero());
            let lhs = (0..3).fold(MultiPoly::zero(3), |acc, i| acc.add(&x(3, i).mul(&f.derivative(i))));
            prop_assert_eq!(lhs, f.scale(&q(3)));
        }

        #[test]
        fn image_dimension_invariant_under_reparametrization(a in unimodular(3), seed in 0u64..1000) {
            let (u, v, w) = (x(3, 0), x(3, 1), x(3, 2));
            let map = RationalMapSpec::new(2, 3, vec![u.mul(&u), u.mul(&v), v.mul(&w), u.mul(&v).add(&v.mul(&w))]).unwrap();
            let base = image_dimension(&map, 5, seed).unwrap().dim;
            prop_assert_eq!(image_dimension(&map.reparametrize(&a), 5, seed).unwrap().dim, base);
            prop_assert!(base <= 2);
        }

        #[test]
        fn more_trials_never_lower_the_estimate(seed in 0u64..1000, trials in 1usize..5) {
            let map = plane_quadric();
            let fewer = image_dimension(&map, trials, seed).unwrap().dim;
            let more = image_dimension(&map, trials + 1, seed).unwrap().dim;
            prop_assert!(more >= fewer);
        }

        #[test]
        fn veronese_family_is_generically_finite(d in 1u32..5) {
            let comps = (0..=d).map(|i| MultiPoly::from_terms(2, [(vec![d - i, i], q(1))]).unwrap()).collect();
            let map = RationalMapSpec::new(1, d as usize, comps).unwrap();
            prop_assert_eq!(image_dimension(&map, 3, u64::from(d)).unwrap().dim, 1);
        }
    }
}
