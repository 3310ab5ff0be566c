//! Bruhat cells and Bialynicki-Birula cells on `G/P` for a dominant
//! cocharacter `λ`.
//!
//! The fixed components of `λ` on `G/P` are indexed by double cosets
//! `W_λ \ W / W_P`, where `W_λ` is the Weyl group of the centralizer `G(λ)`.
//! Cell dimensions are computed twice, by counting roots of `P(-λ)` whose
//! translate leaves `R(P)` and by reading the `λ`-weights of the tangent space
//! at every torus-fixed point; the two must agree.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::rootsys::{self, CartanSpec, FlagCocharacter, ParabolicSpec, Root, RootError, RootSystem, Sign, WeylGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruhatError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("internal consistency failure at double coset {coset}: {detail}")]
    Consistency { coset: String, detail: String },
    #[error("{word} is not of minimal length in its double coset")]
    NotMinimal { word: String },
}

/// A class of `W_left \ W / W_right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetClass {
    pub min_rep: usize,
    pub elements: Vec<usize>,
}

/// Partitions `W` into double cosets `W_left \ W / W_right`, ordered by the
/// length of their minimal representative.
pub fn coset_classes(
    rs: &RootSystem,
    weyl: &WeylGroup,
    left: &ParabolicSpec,
    right: &ParabolicSpec,
) -> Vec<CosetClass> {
    let mut class = vec![usize::MAX; weyl.len()];
    let mut classes = Vec::new();
    for start in 0..weyl.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut elements = vec![start];
        class[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(w) = queue.pop_front() {
            let neighbours = left
                .iter()
                .map(|i| weyl.left_mul(rs, i, w))
                .chain(right.iter().map(|j| weyl.right_mul(w, j)))
                .collect::<Vec<_>>();
            for v in neighbours {
                if class[v] == usize::MAX {
                    class[v] = id;
                    elements.push(v);
                    queue.push_back(v);
                }
            }
        }
        elements.sort_unstable();
        let min_rep = *elements.iter().min_by_key(|&&w| (weyl.element(w).length(), w)).unwrap();
        classes.push(CosetClass { min_rep, elements });
    }
    classes.sort_by_key(|c| (weyl.element(c.min_rep).length(), c.min_rep));
    classes
}

/// Whether `w` is the minimal representative of `W_left w W_right`:
/// `w⁻¹` keeps the simple roots of `left` positive and `w` keeps those of
/// `right` positive.
pub fn is_minimal_double_rep(
    rs: &RootSystem,
    weyl: &WeylGroup,
    w: usize,
    left: &ParabolicSpec,
    right: &ParabolicSpec,
) -> bool {
    let n = rs.rank();
    let winv = weyl.inverse(w);
    left.iter().all(|i| weyl.apply(rs, winv, &Root::simple(n, i)).is_positive())
        && right.iter().all(|j| weyl.apply(rs, w, &Root::simple(n, j)).is_positive())
}

/// Dimension of the orbit `Q·wP/P`: the number of roots `α` of `Q` with
/// `w⁻¹α ∉ R(P)`.
pub fn cell_dim_root_count(
    rs: &RootSystem,
    weyl: &WeylGroup,
    w: usize,
    q_roots: &[Root],
    p_roots: &HashSet<Root>,
) -> usize {
    let winv = weyl.inverse(w);
    q_roots.iter().filter(|a| !p_roots.contains(&weyl.apply(rs, winv, a))).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TangentDims {
    pub component_dim: usize,
    pub dim_plus: usize,
    pub dim_minus: usize,
}

/// Reads the BB dimensions at the fixed point `wP` off the `λ`-weights of the
/// tangent roots `w(Φ⁻ ∖ Φ_J⁻)`.
pub fn cell_dim_tangent_weights(
    rs: &RootSystem,
    weyl: &WeylGroup,
    w: usize,
    j_p: &ParabolicSpec,
    lambda: &FlagCocharacter,
) -> TangentDims {
    let mut dims = TangentDims { component_dim: 0, dim_plus: 0, dim_minus: 0 };
    for beta in rs.negative_roots().iter().filter(|r| !r.supported_on(j_p)) {
        let weight = lambda.pair(&weyl.apply(rs, w, beta));
        dims.component_dim += usize::from(weight == 0);
        dims.dim_plus += usize::from(weight >= 0);
        dims.dim_minus += usize::from(weight <= 0);
    }
    dims
}

/// `ℓ(w) + |Φ_{J_Q}⁺| - |Φ_K⁺|` with `Φ_K = Φ_{J_Q} ∩ w(Φ_{J_P})`, the
/// dimension of `P_{J_Q} w P_{J_P} / P_{J_P}` for a minimal representative `w`.
pub fn kilmoyer_dim_check(
    rs: &RootSystem,
    weyl: &WeylGroup,
    w: usize,
    j_q: &ParabolicSpec,
    j_p: &ParabolicSpec,
) -> Result<usize, BruhatError> {
    if !is_minimal_double_rep(rs, weyl, w, j_q, j_p) {
        return Err(BruhatError::NotMinimal { word: weyl.element(w).word_string() });
    }
    let q_levi_pos = rs.positive_roots().iter().filter(|r| r.supported_on(j_q)).count();
    let k_pos = rs
        .positive_roots()
        .iter()
        .filter(|r| r.supported_on(j_p))
        .map(|r| weyl.apply(rs, w, r))
        .filter(|r| r.is_positive() && r.supported_on(j_q))
        .count();
    Ok(weyl.element(w).length() + q_levi_pos - k_pos)
}

/// A fixed component of `λ` on `G/P` together with its BB cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleCoset {
    #[serde(skip)]
    pub min_rep: usize,
    #[serde(rename = "min_rep")]
    pub min_rep_word: String,
    pub min_rep_length: usize,
    /// Fixed points `wP` in the component, as minimal coset representatives.
    #[serde(skip)]
    pub members: Vec<usize>,
    #[serde(rename = "members")]
    pub member_words: Vec<String>,
    pub component_dim: usize,
    pub cell_dim_plus: usize,
    pub cell_dim_minus: usize,
    /// `dim P(-λ)wP/P` by root counting; equals `cell_dim_minus`.
    pub root_count_dim_minus: usize,
    pub is_sink: bool,
    pub is_source: bool,
}

/// Enumerates `W_λ \ W / W_P` for a dominant `λ` and computes each component's
/// cell dimensions by both methods, failing if they disagree anywhere.
pub fn double_cosets(
    rs: &RootSystem,
    weyl: &WeylGroup,
    j_p: &ParabolicSpec,
    lambda: &FlagCocharacter,
) -> Result<Vec<DoubleCoset>, BruhatError> {
    let n = rs.rank();
    let j_lambda = lambda.levi_spec();
    let q_roots = rootsys::p_lambda_roots(rs, lambda, Sign::Minus);
    let p_roots: HashSet<Root> = rootsys::parabolic_roots(rs, j_p).parabolic.into_iter().collect();
    let mut out = Vec::new();
    for class in coset_classes(rs, weyl, &j_lambda, j_p) {
        let label = weyl.element(class.min_rep).word_string();
        let members: Vec<usize> = class
            .elements
            .iter()
            .copied()
            .filter(|&w| j_p.iter().all(|j| weyl.apply(rs, w, &Root::simple(n, j)).is_positive()))
            .collect();
        let dims = cell_dim_tangent_weights(rs, weyl, class.min_rep, j_p, lambda);
        let root_count = cell_dim_root_count(rs, weyl, class.min_rep, &q_roots, &p_roots);
        for &m in &members {
            let here = cell_dim_tangent_weights(rs, weyl, m, j_p, lambda);
            if here != dims {
                return Err(BruhatError::Consistency {
                    coset: label,
                    detail: format!(
                        "tangent dimensions {here:?} at {} differ from {dims:?} at the minimal representative",
                        weyl.element(m).word_string()
                    ),
                });
            }
            let rc = cell_dim_root_count(rs, weyl, m, &q_roots, &p_roots);
            if rc != dims.dim_minus {
                return Err(BruhatError::Consistency {
                    coset: label,
                    detail: format!("root count {rc} != tangent-weight minus dimension {}", dims.dim_minus),
                });
            }
        }
        if root_count != dims.dim_minus {
            return Err(BruhatError::Consistency {
                coset: label,
                detail: format!("root count {root_count} != tangent-weight minus dimension {}", dims.dim_minus),
            });
        }
        out.push(DoubleCoset {
            min_rep: class.min_rep,
            min_rep_length: weyl.element(class.min_rep).length(),
            min_rep_word: label,
            member_words: members.iter().map(|&m| weyl.element(m).word_string()).collect(),
            members,
            component_dim: dims.component_dim,
            cell_dim_plus: dims.dim_plus,
            cell_dim_minus: dims.dim_minus,
            root_count_dim_minus: root_count,
            is_sink: class.elements.contains(&weyl.identity()),
            is_source: false,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagReport {
    pub cartan: String,
    pub rank: usize,
    /// 1-based simple roots of the Levi of `P`.
    pub parabolic: Vec<usize>,
    pub input_pairings: Vec<i64>,
    pub dominant_pairings: Vec<i64>,
    /// Word `w` (1-based letters) with dominant `λ = w·λ_input`.
    pub conjugating_word: String,
    pub dim_gp: usize,
    pub cosets: Vec<DoubleCoset>,
    pub sink: usize,
    pub source: usize,
    /// cd of `G/P` minus the sink.
    pub cd_value: usize,
    /// cd of `G/P` minus the source.
    pub cd_source_value: usize,
    /// `dim G(λ)/(G(λ) ∩ P)`, the dimension of the sink.
    pub sink_dim: usize,
    pub weyl_order: usize,
    pub assumptions: Vec<String>,
}

/// Full pipeline for `G/P` with cocharacter pairings `pairings`.
pub fn cd_flag_complement_of_sink(
    spec: &CartanSpec,
    j_p: &ParabolicSpec,
    pairings: &[i64],
    weyl_cap: usize,
) -> Result<FlagReport, BruhatError> {
    let rs = rootsys::generate_roots(spec)?;
    let input = FlagCocharacter::new(pairings.to_vec(), rs.rank())?;
    let (lambda, word) = input.to_dominant(&rs);
    let weyl = rootsys::generate_weyl(&rs, weyl_cap)?;
    let dim_gp = rootsys::parabolic_roots(&rs, j_p).dim_quotient;
    let mut cosets = double_cosets(&rs, &weyl, j_p, &lambda)?;

    let sinks: Vec<usize> = (0..cosets.len()).filter(|&i| cosets[i].is_sink).collect();
    let open_minus: Vec<usize> = (0..cosets.len()).filter(|&i| cosets[i].cell_dim_minus == dim_gp).collect();
    if sinks.len() != 1 || open_minus != sinks {
        return Err(BruhatError::Consistency {
            coset: "e".into(),
            detail: format!("identity coset {sinks:?} is not the unique open minus cell {open_minus:?}"),
        });
    }
    let open_plus: Vec<usize> = (0..cosets.len()).filter(|&i| cosets[i].cell_dim_plus == dim_gp).collect();
    let [source] = open_plus[..] else {
        return Err(BruhatError::Consistency {
            coset: "source".into(),
            detail: format!("{} cosets have an open plus cell", open_plus.len()),
        });
    };
    cosets[source].is_source = true;
    for c in &cosets {
        if c.cell_dim_plus + c.cell_dim_minus != c.component_dim + dim_gp {
            return Err(BruhatError::Consistency {
                coset: c.min_rep_word.clone(),
                detail: "dim+ + dim- != component dim + dim G/P".into(),
            });
        }
    }
    let sink = sinks[0];
    let cd_value = cosets.iter().filter(|c| !c.is_sink).map(|c| c.cell_dim_minus).max().unwrap_or(0);
    let cd_source_value = cosets.iter().filter(|c| !c.is_source).map(|c| c.cell_dim_plus).max().unwrap_or(0);

    let mut assumptions = vec!["G treated as semisimple; central tori do not affect root counts".to_string()];
    if !word.is_empty() {
        assumptions.push("λ was conjugated into the dominant chamber".into());
    }
    let conj: Vec<usize> = word.iter().rev().copied().collect();
    let conjugating_word = if conj.is_empty() {
        "e".into()
    } else {
        conj.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(".")
    };
    Ok(FlagReport {
        cartan: rs.label().to_string(),
        rank: rs.rank(),
        parabolic: j_p.one_based(),
        input_pairings: pairings.to_vec(),
        dominant_pairings: lambda.pairings().to_vec(),
        conjugating_word,
        dim_gp,
        sink_dim: cosets[sink].component_dim,
        cosets,
        sink,
        source,
        cd_value,
        cd_source_value,
        weyl_order: weyl.len(),
        assumptions,
    })
}
