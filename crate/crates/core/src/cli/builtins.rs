//! Bundled example jobs.

use serde::Serialize;

use super::{
    CartanDoc, Coefficient, FlagDoc, JobSpec, Options, Payload, RatMapDoc, StratDoc, StratumDoc, TermDoc, ToricDoc,
};
use crate::ratmap::MultiPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Builtin {
    pub name: String,
    pub description: String,
    pub job: JobSpec,
}

fn job(payload: Payload) -> JobSpec {
    JobSpec { payload, options: Options::default() }
}

fn projective_space(n: usize, lambda: Vec<i64>) -> Payload {
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    rays.push(vec![-1; n]);
    let max_cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
    Payload::Toric(ToricDoc { rank: n, rays, max_cones, lambda })
}

fn hirzebruch(a: i64) -> Payload {
    Payload::Toric(ToricDoc {
        rank: 2,
        rays: vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        max_cones: vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        lambda: vec![0, 1],
    })
}

fn flag(cartan: &str, parabolic: Vec<usize>, lambda_pairings: Vec<i64>) -> Payload {
    Payload::Flag(FlagDoc { cartan: CartanDoc::Name(cartan.into()), parabolic, lambda_pairings })
}

fn terms(p: &MultiPoly) -> Vec<TermDoc> {
    p.terms()
        .map(|(e, c)| TermDoc {
            exponents: e.to_vec(),
            coefficient: if c.is_integer() {
                Coefficient::Int(i64::try_from(c.to_integer()).expect("small coefficient"))
            } else {
                Coefficient::Text(c.to_string())
            },
        })
        .collect()
}

/// `[x0 s1 : x1 s1 : x2 s1 : x3 s1 : s2]` on P^3 with the plane
/// `s1 = x0 + x1 + x2 + x3` and the quadric `s2 = x0² + x1² + x2² + x3²`.
fn plane_quadric() -> Payload {
    let x = |i| MultiPoly::var(4, i);
    let s1 = (0..4).fold(MultiPoly::zero(4), |acc, i| acc.add(&x(i)));
    let s2 = (0..4).fold(MultiPoly::zero(4), |acc, i| acc.add(&x(i).mul(&x(i))));
    let mut components: Vec<Vec<TermDoc>> = (0..4).map(|i| terms(&x(i).mul(&s1))).collect();
    components.push(terms(&s2));
    Payload::Ratmap(RatMapDoc { n: 3, m: 4, components, trials: None })
}

/// The plus-decomposition of P^2 under a generic cocharacter.
fn strat_p2() -> Payload {
    let stratum = |codim, dim_z| StratumDoc { codim, cd_y: 0, dim_y: Some(0), dim_z: Some(dim_z) };
    Payload::Strat(StratDoc {
        dim_x: 2,
        strata: vec![stratum(2, 0), stratum(1, 1), stratum(0, 2)],
        witness: Some(vec![1, 0]),
    })
}

pub fn builtins() -> Vec<Builtin> {
    let b = |name: &str, description: &str, payload| Builtin {
        name: name.into(),
        description: description.into(),
        job: job(payload),
    };
    vec![
        b("p1-lambda", "P^1 with lambda = (1)", projective_space(1, vec![1])),
        b("p2-lambda-generic", "P^2 with lambda = (1,2)", projective_space(2, vec![1, 2])),
        b("p3-lambda-generic", "P^3 with lambda = (1,2,3)", projective_space(3, vec![1, 2, 3])),
        b("p4-lambda-generic", "P^4 with lambda = (1,2,3,4)", projective_space(4, vec![1, 2, 3, 4])),
        b("hirzebruch-f1", "Hirzebruch surface F_1 with lambda = (0,1)", hirzebruch(1)),
        b("hirzebruch-f2", "Hirzebruch surface F_2 with lambda = (0,1)", hirzebruch(2)),
        b("flag-a1-borel", "SL2/B = P^1, lambda pairing (2)", flag("A1", vec![], vec![2])),
        b("flag-a2-borel", "SL3/B, regular dominant lambda (1,1)", flag("A2", vec![], vec![1, 1])),
        b(
            "flag-a3-gr24",
            "Gr(2,4) = SL4/P_{1,3}, regular dominant lambda (1,1,1)",
            flag("A3", vec![1, 3], vec![1, 1, 1]),
        ),
        b("strat-p2", "BB plus-stratification of P^2 with equality witness", strat_p2()),
        b(
            "expl-strict",
            "map P^3 --> P^4 from a plane s1 and quadric s2: [x0 s1 : x1 s1 : x2 s1 : x3 s1 : s2]",
            plane_quadric(),
        ),
    ]
}

pub fn builtin(name: &str) -> Option<Builtin> {
    builtins().into_iter().find(|b| b.name == name)
}
