//! Simplicial fans, the fixed components of a one-parameter subgroup acting on
//! the associated toric variety, and the cohomological dimension of the
//! complement of the sink (or source).
//!
//! A cocharacter `λ ∈ N` decomposes uniquely along the rays of any cone whose
//! linear span contains it. The fixed components are indexed by the cones in
//! which every coefficient is nonzero; positive coefficients cut down the minus
//! cell and negative ones the plus cell.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactlin::{self, IntVector, LinAlgError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("fan rank must be positive")]
    ZeroRank,
    #[error("ray {index} has length {found}, expected lattice rank {expected}")]
    RayLength { index: usize, expected: usize, found: usize },
    #[error("ray {index} is the zero vector")]
    ZeroRay { index: usize },
    #[error("ray {index} = {ray} is not primitive (gcd {gcd})")]
    NonPrimitiveRay { index: usize, ray: IntVector, gcd: BigInt },
    #[error("rays {first} and {second} coincide after normalization")]
    DuplicateRay { first: usize, second: usize },
    #[error("maximal cone {cone} refers to ray {ray}, but only {count} rays exist")]
    RayIndex { cone: usize, ray: usize, count: usize },
    #[error("maximal cone {cone} has {found} rays, a simplicial complete fan of rank {rank} needs exactly {rank}")]
    NotFullDimensional { cone: usize, found: usize, rank: usize },
    #[error("maximal cone {cone} {rays} has linearly dependent rays")]
    DependentRays { cone: usize, rays: Cone },
    #[error("maximal cones {first} and {second} are listed twice")]
    DuplicateCone { first: usize, second: usize },
    #[error("maximal cones {first} and {second} meet outside their common face {common}")]
    NonFaceIntersection { first: usize, second: usize, common: Cone },
    #[error("wall {wall} lies in {count} maximal cones, a complete fan needs exactly 2")]
    WallCount { wall: Cone, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("cocharacter has length {found}, expected lattice rank {expected}")]
    LambdaLength { expected: usize, found: usize },
    #[error("cocharacter is zero, the action is not effective")]
    ZeroLambda,
    #[error("found {count} {role} components, expected exactly one")]
    SinkSource { role: &'static str, count: usize },
    #[error("component {cone}: {detail}")]
    Consistency { cone: Cone, detail: String },
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A cone of the fan, stored as the sorted list of its ray indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Cone(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|i| other.0.binary_search(i).is_ok())
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// A ray replaced by its primitive generator: `(index, input, gcd)`.
pub type NormalizedRay = (usize, IntVector, BigInt);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<IntVector>,
    max_cones: Vec<Cone>,
}

impl Fan {
    /// Builds a fan, rejecting non-primitive rays.
    pub fn new(rank: usize, rays: Vec<IntVector>, max_cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        let (fan, normalized) = Self::normalized(rank, rays, max_cones)?;
        if let Some(&(index, ref ray, ref gcd)) = normalized.first() {
            return Err(FanError::NonPrimitiveRay { index, ray: ray.clone(), gcd: gcd.clone() });
        }
        Ok(fan)
    }

    /// Builds a fan, replacing each non-primitive ray by its primitive
    /// generator. The replaced rays are returned as `(index, input, gcd)`.
    pub fn normalized(
        rank: usize,
        rays: Vec<IntVector>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<(Self, Vec<NormalizedRay>), FanError> {
        if rank == 0 {
            return Err(FanError::ZeroRank);
        }
        let mut normalized = Vec::new();
        let mut prim = Vec::with_capacity(rays.len());
        for (index, ray) in rays.into_iter().enumerate() {
            if ray.len() != rank {
                return Err(FanError::RayLength { index, expected: rank, found: ray.len() });
            }
            let p = exactlin::primitive(&ray).map_err(|_| FanError::ZeroRay { index })?;
            if p != ray {
                let gcd = ray.content();
                normalized.push((index, ray, gcd));
            }
            prim.push(p);
        }
        for (first, second) in (0..prim.len()).tuple_combinations() {
            if prim[first] == prim[second] {
                return Err(FanError::DuplicateRay { first, second });
            }
        }
        let count = prim.len();
        let mut cones = Vec::with_capacity(max_cones.len());
        for (cone, idx) in max_cones.into_iter().enumerate() {
            if let Some(&ray) = idx.iter().find(|&&r| r >= count) {
                return Err(FanError::RayIndex { cone, ray, count });
            }
            cones.push(Cone::new(idx));
        }
        Ok((Fan { rank, rays: prim, max_cones: cones }, normalized))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[IntVector] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn cone_rays(&self, cone: &Cone) -> Vec<IntVector> {
        cone.indices().iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Standard fan of projective space of dimension `n`.
    pub fn projective_space(n: usize) -> Fan {
        let mut rays: Vec<IntVector> = (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                IntVector::from(v)
            })
            .collect();
        rays.push(IntVector::from(vec![-1i64; n]));
        let max_cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
        Fan::new(n, rays, max_cones).expect("standard projective fan")
    }

    /// Hirzebruch surface F_a: rays (1,0), (0,1), (-1,a), (0,-1).
    pub fn hirzebruch(a: i64) -> Fan {
        let rays = [[1, 0], [0, 1], [-1, a], [0, -1]].iter().map(|r| IntVector::from_i64s(r)).collect();
        Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).expect("Hirzebruch fan")
    }

    /// Checks that the fan is pure, simplicial and complete: each maximal cone
    /// has `rank` independent rays, any two maximal cones meet along a common
    /// face, and every wall bounds exactly two maximal cones.
    pub fn validate(&self) -> Result<(), FanError> {
        let d = self.rank;
        for (i, cone) in self.max_cones.iter().enumerate() {
            if cone.len() != d {
                return Err(FanError::NotFullDimensional { cone: i, found: cone.len(), rank: d });
            }
            if exactlin::int_rank(&self.cone_rays(cone)) != d {
                return Err(FanError::DependentRays { cone: i, rays: cone.clone() });
            }
        }
        for (first, second) in (0..self.max_cones.len()).tuple_combinations() {
            self.check_pair(first, second)?;
        }
        let mut walls: BTreeMap<Cone, usize> = BTreeMap::new();
        for cone in &self.max_cones {
            for wall in cone.indices().iter().copied().combinations(d - 1) {
                *walls.entry(Cone::new(wall)).or_default() += 1;
            }
        }
        if let Some((wall, &count)) = walls.iter().find(|(_, &c)| c != 2) {
            return Err(FanError::WallCount { wall: wall.clone(), count });
        }
        Ok(())
    }

    /// Two full-dimensional simplicial cones meet in their common face iff,
    /// modulo the span of the shared rays, the cones spanned by the remaining
    /// rays meet only at the origin.
    fn check_pair(&self, first: usize, second: usize) -> Result<(), FanError> {
        let a = &self.max_cones[first];
        let b = &self.max_cones[second];
        let common = Cone::new(a.indices().iter().copied().filter(|i| b.indices().contains(i)).collect());
        let own: Vec<usize> = a.indices().iter().copied().filter(|i| !common.0.contains(i)).collect();
        let other: Vec<usize> = b.indices().iter().copied().filter(|i| !common.0.contains(i)).collect();
        if own.is_empty() {
            return Err(FanError::DuplicateCone { first, second });
        }
        // column j of `columns` = coordinates of other[j] along own, modulo common
        let basis = self.cone_rays(a);
        let mut columns = Vec::with_capacity(other.len());
        for &v in &other {
            let c = exactlin::solve_unique(&basis, &self.rays[v])
                .expect("validated cone has independent rays")
                .expect("full-dimensional cone spans the lattice");
            let projected: Vec<Rational> =
                a.indices().iter().zip(c).filter(|(i, _)| !common.0.contains(i)).map(|(_, x)| x).collect();
            columns.push(projected);
        }
        let k = own.len();
        let rows: Vec<Vec<Rational>> = (0..k).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
        if exactlin::feasible_on_simplex(&rows, k) {
            return Err(FanError::NonFaceIntersection { first, second, common });
        }
        Ok(())
    }

    /// All nonempty faces of the maximal cones, deduplicated and ordered by
    /// size then lexicographically.
    pub fn faces(&self) -> Vec<Cone> {
        let mut faces = BTreeSet::new();
        for cone in &self.max_cones {
            for size in 1..=cone.len() {
                for subset in cone.indices().iter().copied().combinations(size) {
                    faces.insert(Cone(subset));
                }
            }
        }
        faces.into_iter().sorted_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y))).collect()
    }
}

/// A connected component of the fixed locus of the cocharacter action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricFixedComponent {
    pub cone: Cone,
    #[serde(serialize_with = "crate::serialize_rationals")]
    pub coefficients: Vec<Rational>,
    pub dim_y: usize,
    pub dim_plus: usize,
    pub dim_minus: usize,
    pub is_sink: bool,
    pub is_source: bool,
}

impl ToricFixedComponent {
    pub fn positive_rays(&self) -> usize {
        self.coefficients.iter().filter(|c| c.is_positive()).count()
    }

    pub fn negative_rays(&self) -> usize {
        self.coefficients.iter().filter(|c| c.is_negative()).count()
    }
}

fn check_lambda(fan: &Fan, lambda: &IntVector) -> Result<(), ToricError> {
    if lambda.len() != fan.rank() {
        return Err(ToricError::LambdaLength { expected: fan.rank(), found: lambda.len() });
    }
    if lambda.is_zero() {
        return Err(ToricError::ZeroLambda);
    }
    Ok(())
}

/// Enumerates the fixed components: every cone over which `λ` decomposes
/// with all coefficients nonzero. A cone with a zero coefficient is never
/// minimal, since the face dropping that ray already spans `λ`.
pub fn fixed_components(fan: &Fan, lambda: &IntVector) -> Result<Vec<ToricFixedComponent>, ToricError> {
    check_lambda(fan, lambda)?;
    let d = fan.rank();
    let mut out = Vec::new();
    for cone in fan.faces() {
        let Some(coefficients) = exactlin::solve_unique(&fan.cone_rays(&cone), lambda)? else {
            continue;
        };
        if coefficients.iter().any(Zero::is_zero) {
            continue;
        }
        let pos = coefficients.iter().filter(|c| c.is_positive()).count();
        let neg = coefficients.len() - pos;
        out.push(ToricFixedComponent {
            dim_y: d - cone.len(),
            dim_plus: d - neg,
            dim_minus: d - pos,
            is_sink: pos == 0,
            is_source: neg == 0,
            cone,
            coefficients,
        });
    }
    Ok(out)
}

/// Indices of the sink (all coefficients negative) and the source (all
/// positive) in `components`.
pub fn identify_sink_source(components: &[ToricFixedComponent]) -> Result<(usize, usize), ToricError> {
    let find = |role: &'static str, pred: &dyn Fn(&ToricFixedComponent) -> bool| {
        let hits: Vec<usize> = components.iter().positions(pred).collect();
        match hits.as_slice() {
            [one] => Ok(*one),
            _ => Err(ToricError::SinkSource { role, count: hits.len() }),
        }
    };
    let sink = find("sink", &|c| c.coefficients.iter().all(Signed::is_negative))?;
    let source = find("source", &|c| c.coefficients.iter().all(Signed::is_positive))?;
    Ok((sink, source))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToricReport {
    pub rank: usize,
    #[serde(serialize_with = "crate::serialize_int_vector")]
    pub lambda: IntVector,
    pub components: Vec<ToricFixedComponent>,
    pub sink: usize,
    pub source: usize,
    pub cd_minus_sink: usize,
    pub cd_minus_source: usize,
    pub assumptions: Vec<String>,
}

impl ToricReport {
    pub fn sink_component(&self) -> &ToricFixedComponent {
        &self.components[self.sink]
    }

    pub fn source_component(&self) -> &ToricFixedComponent {
        &self.components[self.source]
    }
}

/// Validates the fan and computes the full fixed-point report.
pub fn analyze(fan: &Fan, lambda: &IntVector) -> Result<ToricReport, ToricError> {
    check_lambda(fan, lambda)?;
    fan.validate()?;
    let components = fixed_components(fan, lambda)?;
    let (sink, source) = identify_sink_source(&components)?;
    let d = fan.rank();
    for (i, c) in components.iter().enumerate() {
        if c.dim_plus + c.dim_minus != c.dim_y + d {
            return Err(ToricError::Consistency {
                cone: c.cone.clone(),
                detail: format!("dim+ {} + dim- {} != dim Y {} + {d}", c.dim_plus, c.dim_minus, c.dim_y),
            });
        }
        if (c.dim_minus == d) != (i == sink) || (c.dim_plus == d) != (i == source) {
            return Err(ToricError::Consistency {
                cone: c.cone.clone(),
                detail: "open cell does not match the sink/source sign pattern".into(),
            });
        }
    }
    let cd_minus_sink =
        components.iter().enumerate().filter(|&(i, _)| i != sink).map(|(_, c)| c.dim_minus).max().unwrap_or(0);
    let cd_minus_source =
        components.iter().enumerate().filter(|&(i, _)| i != source).map(|(_, c)| c.dim_plus).max().unwrap_or(0);
    Ok(ToricReport {
        rank: d,
        lambda: lambda.clone(),
        components,
        sink,
        source,
        cd_minus_sink,
        cd_minus_source,
        assumptions: vec!["fan is projective (asserted by the user, not verified)".into()],
    })
}

/// cd of the complement of the sink: the largest minus cell among the
/// non-sink components.
pub fn cd_complement_of_sink(fan: &Fan, lambda: &IntVector) -> Result<usize, ToricError> {
    Ok(analyze(fan, lambda)?.cd_minus_sink)
}

/// cd of the complement of the source: the largest plus cell among the
/// non-source components.
pub fn cd_complement_of_source(fan: &Fan, lambda: &IntVector) -> Result<usize, ToricError> {
    Ok(analyze(fan, lambda)?.cd_minus_source)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> IntVector {
        IntVector::from_i64s(c)
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn p1() -> Fan {
        Fan::projective_space(1)
    }

    fn affine_plane() -> Fan {
        Fan::new(2, vec![v(&[1, 0]), v(&[0, 1])], vec![vec![0, 1]]).unwrap()
    }

    fn dims(c: &ToricFixedComponent) -> (usize, usize, usize) {
        (c.dim_y, c.dim_plus, c.dim_minus)
    }

    #[test]
    fn validate_examples() {
        assert_eq!(p1().validate(), Ok(()));
        assert_eq!(Fan::projective_space(2).validate(), Ok(()));
        assert!(matches!(affine_plane().validate(), Err(FanError::WallCount { count: 1, .. })));
    }

    #[test]
    fn dependent_rays_rejected() {
        let fan = Fan::new(2, vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1])], vec![vec![0, 1]]).unwrap();
        assert!(matches!(fan.validate(), Err(FanError::DependentRays { cone: 0, .. })));
    }

    #[test]
    fn overlapping_cones_rejected() {
        // cone(e1, e2) and cone(e1 + e2, -e1) overlap in a full-dimensional region
        let fan =
            Fan::new(2, vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[-1, 0])], vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(fan.validate(), Err(FanError::NonFaceIntersection { first: 0, second: 1, .. })));
    }

    #[test]
    fn doubly_covering_fan_rejected() {
        // six cones winding twice around the origin: every wall is in two
        // cones, but adjacent-but-one cones overlap
        let rays = vec![v(&[1, 0]), v(&[-1, 1]), v(&[0, -1]), v(&[1, 1]), v(&[-1, 0]), v(&[1, -2])];
        let cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 0]];
        let fan = Fan::new(2, rays, cones).unwrap();
        assert!(matches!(fan.validate(), Err(FanError::NonFaceIntersection { .. })));
    }

    #[test]
    fn non_primitive_rays() {
        let err = Fan::new(1, vec![v(&[2]), v(&[-1])], vec![vec![0], vec![1]]).unwrap_err();
        assert!(matches!(err, FanError::NonPrimitiveRay { index: 0, .. }));
        let (fan, normalized) = Fan::normalized(1, vec![v(&[2]), v(&[-1])], vec![vec![0], vec![1]]).unwrap();
        assert_eq!(fan.rays(), p1().rays());
        assert_eq!(normalized.len(), 1);
        assert_eq!(normalized[0].0, 0);
    }

    #[test]
    fn input_shape_errors() {
        assert!(matches!(Fan::new(2, vec![v(&[1])], vec![]), Err(FanError::RayLength { index: 0, .. })));
        assert!(matches!(Fan::new(1, vec![v(&[0])], vec![]), Err(FanError::ZeroRay { index: 0 })));
        assert!(matches!(Fan::new(1, vec![v(&[1]), v(&[-1])], vec![vec![2]]), Err(FanError::RayIndex { ray: 2, .. })));
        assert!(matches!(
            Fan::normalized(1, vec![v(&[1]), v(&[3])], vec![]),
            Err(FanError::DuplicateRay { first: 0, second: 1 })
        ));
    }

    #[test]
    fn p1_components() {
        let comps = fixed_components(&p1(), &v(&[1])).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].cone, Cone::new(vec![0]));
        assert_eq!(comps[0].coefficients, vec![q(1)]);
        assert_eq!((comps[0].dim_plus, comps[0].dim_minus), (1, 0));
        assert!(comps[0].is_source);
        assert_eq!(comps[1].coefficients, vec![q(-1)]);
        assert!(comps[1].is_sink);
        assert_eq!(comps[1].dim_minus, 1);
        assert_eq!(identify_sink_source(&comps).unwrap(), (1, 0));
    }

    #[test]
    fn p2_components() {
        let comps = fixed_components(&Fan::projective_space(2), &v(&[1, 2])).unwrap();
        assert_eq!(comps.len(), 3);
        let by_cone: BTreeMap<Vec<usize>, &ToricFixedComponent> =
            comps.iter().map(|c| (c.cone.indices().to_vec(), c)).collect();
        assert_eq!(by_cone[&vec![0, 1]].coefficients, vec![q(1), q(2)]);
        assert_eq!(dims(by_cone[&vec![0, 1]]), (0, 2, 0));
        assert_eq!(by_cone[&vec![1, 2]].coefficients, vec![q(1), q(-1)]);
        assert_eq!(dims(by_cone[&vec![1, 2]]), (0, 1, 1));
        assert_eq!(by_cone[&vec![0, 2]].coefficients, vec![q(-1), q(-2)]);
        assert_eq!(dims(by_cone[&vec![0, 2]]), (0, 0, 2));
        let (sink, source) = identify_sink_source(&comps).unwrap();
        assert_eq!(comps[sink].cone, Cone::new(vec![0, 2]));
        assert_eq!(comps[source].cone, Cone::new(vec![0, 1]));
    }

    #[test]
    fn hirzebruch_components() {
        let comps = fixed_components(&Fan::hirzebruch(1), &v(&[0, 1])).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].cone, Cone::new(vec![1]));
        assert!(comps[0].is_source);
        assert_eq!(comps[0].dim_y, 1);
        assert_eq!(comps[1].cone, Cone::new(vec![3]));
        assert!(comps[1].is_sink);
        assert_eq!(comps[1].dim_y, 1);
    }

    #[test]
    fn cd_examples() {
        assert_eq!(cd_complement_of_sink(&p1(), &v(&[1])).unwrap(), 0);
        assert_eq!(cd_complement_of_sink(&Fan::projective_space(2), &v(&[1, 2])).unwrap(), 1);
        assert_eq!(cd_complement_of_sink(&Fan::hirzebruch(1), &v(&[0, 1])).unwrap(), 1);
        assert_eq!(cd_complement_of_source(&Fan::hirzebruch(1), &v(&[0, 1])).unwrap(), 1);
    }

    #[test]
    fn lambda_errors() {
        assert_eq!(fixed_components(&p1(), &v(&[0])), Err(ToricError::ZeroLambda));
        assert!(matches!(fixed_components(&p1(), &v(&[1, 0])), Err(ToricError::LambdaLength { .. })));
        assert!(matches!(analyze(&affine_plane(), &v(&[1, 1])), Err(ToricError::Fan(_))));
    }

    #[test]
    fn sink_source_errors_on_incomplete_data() {
        let comps = fixed_components(&affine_plane(), &v(&[1, 1])).unwrap();
        assert!(matches!(identify_sink_source(&comps), Err(ToricError::SinkSource { role: "sink", count: 0 })));
    }

    #[test]
    fn lambda_on_a_wall_gives_positive_dimensional_sink() {
        let report = analyze(&Fan::projective_space(2), &v(&[1, 0])).unwrap();
        let sink = report.sink_component();
        assert_eq!(sink.cone, Cone::new(vec![1, 2]));
        assert_eq!(sink.dim_y, 0);
        let source = report.source_component();
        assert_eq!(source.cone, Cone::new(vec![0]));
        assert_eq!(source.dim_y, 1);
        assert_eq!(report.cd_minus_sink, 1);
    }

    #[test]
    fn pn_generic_lambda() {
        for n in 1..=4usize {
            let lambda: Vec<i64> = (1..=n as i64).collect();
            let report = analyze(&Fan::projective_space(n), &v(&lambda)).unwrap();
            assert_eq!(report.components.len(), n + 1);
            assert!(report.components.iter().all(|c| c.dim_y == 0));
            assert_eq!(report.cd_minus_sink, n - 1);
        }
    }
}
