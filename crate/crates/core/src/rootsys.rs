//! Root systems from Cartan data, Weyl groups, parabolic root subsets and
//! cocharacter pairings.
//!
//! Conventions: roots are integer vectors in the basis of simple roots, and the
//! Cartan matrix entry `(i, j)` is `<α_i^∨, α_j>`, so the simple reflection
//! `s_i` sends `α_j` to `α_j - a_ij α_i`. Named types follow Bourbaki labelling.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

/// Default cap on the order of a generated Weyl group.
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// Positive-root closure stops here; no finite root system comes close.
const ROOT_BOUND: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unknown Cartan type {0:?} (expected e.g. A3, B2, G2 or a product like A1xB2)")]
    UnknownType(String),
    #[error("type {family}{rank} does not exist")]
    BadRank { family: char, rank: usize },
    #[error("Cartan matrix must be square and nonempty (row {row} has {found} entries, expected {expected})")]
    NotSquare { row: usize, expected: usize, found: usize },
    #[error("Cartan matrix diagonal entry ({i},{i}) is {value}, expected 2")]
    Diagonal { i: usize, value: i64 },
    #[error("Cartan matrix entry ({i},{j}) is {value}, off-diagonal entries must be <= 0")]
    OffDiagonal { i: usize, j: usize, value: i64 },
    #[error("Cartan matrix zero pattern is not symmetric at ({i},{j})")]
    ZeroPattern { i: usize, j: usize },
    #[error("Cartan matrix is not of finite type (more than {bound} positive roots)")]
    NotFiniteType { bound: usize },
    #[error("Weyl group exceeds the configured cap of {cap} elements")]
    WeylCap { cap: usize },
    #[error("simple root index {index} out of range 1..={rank}")]
    ParabolicIndex { index: usize, rank: usize },
    #[error("cocharacter has {found} pairings, expected rank {expected}")]
    PairingLength { expected: usize, found: usize },
    #[error("cocharacter pairings are all zero, the action is not effective")]
    ZeroCocharacter,
}

/// A root written in the basis of simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Root {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|&c| c <= 0) && self.0.iter().any(|&c| c < 0)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn negated(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    /// True when every simple root with a nonzero coefficient lies in `j`.
    pub fn supported_on(&self, j: &ParabolicSpec) -> bool {
        self.0.iter().enumerate().all(|(i, &c)| c == 0 || j.contains(i))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Either a named Cartan type (possibly a product such as `A1xB2`) or an
/// explicit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CartanSpec {
    Named(Vec<(char, usize)>),
    Matrix(Vec<Vec<i64>>),
}

impl FromStr for CartanSpec {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut factors = Vec::new();
        for part in s.split(['x', '×', '*']) {
            let part = part.trim();
            let mut chars = part.chars();
            let family = chars.next().map(|c| c.to_ascii_uppercase());
            let rank = chars.as_str().parse::<usize>().ok();
            match (family, rank) {
                (Some(f @ ('A' | 'B' | 'C' | 'D' | 'E' | 'F' | 'G')), Some(r)) => factors.push((f, r)),
                _ => return Err(RootError::UnknownType(s.to_string())),
            }
        }
        Ok(CartanSpec::Named(factors))
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanSpec::Named(factors) => {
                write!(f, "{}", factors.iter().map(|(c, r)| format!("{c}{r}")).join("x"))
            }
            CartanSpec::Matrix(m) => write!(f, "{m:?}"),
        }
    }
}

impl CartanSpec {
    /// The validated Cartan matrix.
    pub fn matrix(&self) -> Result<CartanMatrix, RootError> {
        let m = match self {
            CartanSpec::Named(factors) => {
                let blocks = factors.iter().map(|&(f, r)| named_matrix(f, r)).collect::<Result<Vec<_>, _>>()?;
                block_diagonal(&blocks)
            }
            CartanSpec::Matrix(m) => m.clone(),
        };
        CartanMatrix::new(m)
    }
}

fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut m = vec![vec![0; n]; n];
    let mut offset = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[offset + i][offset + j] = x;
            }
        }
        offset += b.len();
    }
    m
}

fn named_matrix(family: char, n: usize) -> Result<Vec<Vec<i64>>, RootError> {
    let bad = || RootError::BadRank { family, rank: n };
    let valid = match family {
        'A' => n >= 1,
        'B' | 'C' => n >= 2,
        'D' => n >= 3,
        'E' => (6..=8).contains(&n),
        'F' => n == 4,
        'G' => n == 2,
        _ => false,
    };
    if !valid {
        return Err(bad());
    }
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, a_ij: i64, a_ji: i64| {
        m[i][j] = a_ij;
        m[j][i] = a_ji;
    };
    match family {
        'A' => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        'B' => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // α_n short
            link(n - 2, n - 1, -1, -2);
        }
        'C' => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // α_n long
            link(n - 2, n - 1, -2, -1);
        }
        'D' => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        'E' => {
            // 1-3-4-5-..-n chain with 2 attached to 4
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        'F' => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        'G' => link(0, 1, -1, -3),
        _ => unreachable!(),
    }
    Ok(m)
}

/// A validated generalized Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix(Vec<Vec<i64>>);

impl CartanMatrix {
    pub fn new(m: Vec<Vec<i64>>) -> Result<Self, RootError> {
        let n = m.len();
        if n == 0 {
            return Err(RootError::NotSquare { row: 0, expected: 1, found: 0 });
        }
        for (row, r) in m.iter().enumerate() {
            if r.len() != n {
                return Err(RootError::NotSquare { row, expected: n, found: r.len() });
            }
        }
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            if m[i][i] != 2 {
                return Err(RootError::Diagonal { i, value: m[i][i] });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if m[i][j] > 0 {
                    return Err(RootError::OffDiagonal { i, j, value: m[i][j] });
                }
                if (m[i][j] == 0) != (m[j][i] == 0) {
                    return Err(RootError::ZeroPattern { i, j });
                }
            }
        }
        Ok(CartanMatrix(m))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.0
    }
}

/// The full root system: positive roots sorted by height, followed by their
/// negatives in the same order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    label: String,
    cartan: CartanMatrix,
    roots: Vec<Root>,
    index: HashMap<Root, usize>,
    n_pos: usize,
}

impl RootSystem {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_pos]
    }

    pub fn negative_roots(&self) -> &[Root] {
        &self.roots[self.n_pos..]
    }

    pub fn root_index(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.index.contains_key(r)
    }

    /// `<α_i^∨, β>`.
    pub fn coroot_pairing(&self, i: usize, beta: &Root) -> i64 {
        self.cartan.0[i].iter().zip(beta.coords()).map(|(a, n)| a * n).sum()
    }

    pub fn reflect(&self, i: usize, beta: &Root) -> Root {
        let k = self.coroot_pairing(i, beta);
        let mut v = beta.0.clone();
        v[i] -= k;
        Root(v)
    }
}

/// Generates every root by closing the simple roots under simple reflections.
pub fn generate_roots(spec: &CartanSpec) -> Result<RootSystem, RootError> {
    let cartan = spec.matrix()?;
    let n = cartan.rank();
    let mut rs = RootSystem { label: spec.to_string(), cartan, roots: Vec::new(), index: HashMap::new(), n_pos: 0 };
    // simple roots come out in index order within each height
    let mut positive: BTreeSet<(i64, Reverse<Root>)> = BTreeSet::new();
    let mut queue: VecDeque<Root> = (0..n).map(|i| Root::simple(n, i)).collect();
    for r in &queue {
        positive.insert((1, Reverse(r.clone())));
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let image = rs.reflect(i, &beta);
            if !image.is_positive() {
                continue;
            }
            if positive.insert((image.height(), Reverse(image.clone()))) {
                if positive.len() > ROOT_BOUND {
                    return Err(RootError::NotFiniteType { bound: ROOT_BOUND });
                }
                queue.push_back(image);
            }
        }
    }
    let pos: Vec<Root> = positive.into_iter().map(|(_, Reverse(r))| r).collect();
    rs.n_pos = pos.len();
    rs.roots = pos.iter().cloned().chain(pos.iter().map(Root::negated)).collect();
    rs.index = rs.roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    Ok(rs)
}

/// A Weyl group element, identified by where it sends the simple roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Root-table indices of `w(α_1), ..., w(α_n)`.
    images: Vec<u32>,
    length: usize,
    /// A reduced word `[i_1, ..., i_k]` with `w = s_{i_1} ... s_{i_k}`.
    word: Vec<usize>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The images of the simple roots.
    pub fn images<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = &'a Root> + 'a {
        self.images.iter().map(move |&i| &rs.roots[i as usize])
    }

    /// The reduced word, 1-based and dot-separated (`"e"` for the identity).
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".into()
        } else {
            self.word.iter().map(|i| format!("s{}", i + 1)).join(".")
        }
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    lookup: HashMap<Vec<u32>, usize>,
    right: Vec<Vec<usize>>,
}

/// Breadth-first enumeration of the Weyl group by right multiplication with
/// simple reflections. Index 0 is the identity.
pub fn generate_weyl(rs: &RootSystem, cap: usize) -> Result<WeylGroup, RootError> {
    let n = rs.rank();
    let identity: Vec<u32> = (0..n).map(|i| rs.root_index(&Root::simple(n, i)).unwrap() as u32).collect();
    let mut group = WeylGroup { elements: Vec::new(), lookup: HashMap::new(), right: Vec::new() };
    group.push(rs, identity, Vec::new(), cap)?;
    let mut next = 0;
    while next < group.elements.len() {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            // (w s_j)(α_k) = w(α_k) - a_jk w(α_j)
            let w = &group.elements[next];
            let wj = &rs.roots[w.images[j] as usize];
            let images: Vec<u32> = (0..n)
                .map(|k| {
                    let wk = &rs.roots[w.images[k] as usize];
                    let a = rs.cartan.entry(j, k);
                    let v = Root(wk.0.iter().zip(&wj.0).map(|(x, y)| x - a * y).collect());
                    rs.root_index(&v).expect("Weyl group permutes roots") as u32
                })
                .collect();
            let idx = match group.lookup.get(&images) {
                Some(&idx) => idx,
                None => {
                    let mut word = w.word.clone();
                    word.push(j);
                    group.push(rs, images, word, cap)?
                }
            };
            row.push(idx);
        }
        group.right.push(row);
        next += 1;
    }
    Ok(group)
}

impl WeylGroup {
    fn push(&mut self, rs: &RootSystem, images: Vec<u32>, word: Vec<usize>, cap: usize) -> Result<usize, RootError> {
        if self.elements.len() >= cap {
            return Err(RootError::WeylCap { cap });
        }
        let idx = self.elements.len();
        let mut element = WeylElement { images: images.clone(), length: 0, word };
        element.length =
            rs.positive_roots().iter().filter(|a| self.apply_element(rs, &element, a).is_negative()).count();
        self.lookup.insert(images, idx);
        self.elements.push(element);
        Ok(idx)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the longest element.
    pub fn longest(&self) -> usize {
        (0..self.len()).max_by_key(|&i| self.elements[i].length).unwrap_or(0)
    }

    fn apply_element(&self, rs: &RootSystem, w: &WeylElement, beta: &Root) -> Root {
        let mut v = vec![0i64; rs.rank()];
        for (&n, &img) in beta.0.iter().zip(&w.images) {
            if n == 0 {
                continue;
            }
            for (acc, x) in v.iter_mut().zip(&rs.roots[img as usize].0) {
                *acc += n * x;
            }
        }
        Root(v)
    }

    /// `w(β)` for the element at `idx`.
    pub fn apply(&self, rs: &RootSystem, idx: usize, beta: &Root) -> Root {
        self.apply_element(rs, &self.elements[idx], beta)
    }

    /// `w s_j`.
    pub fn right_mul(&self, idx: usize, j: usize) -> usize {
        self.right[idx][j]
    }

    /// `s_i w`.
    pub fn left_mul(&self, rs: &RootSystem, i: usize, idx: usize) -> usize {
        let images: Vec<u32> = self.elements[idx]
            .images
            .iter()
            .map(|&r| rs.root_index(&rs.reflect(i, &rs.roots[r as usize])).unwrap() as u32)
            .collect();
        self.lookup[&images]
    }

    pub fn inverse(&self, idx: usize) -> usize {
        self.elements[idx].word.iter().rev().fold(self.identity(), |acc, &j| self.right_mul(acc, j))
    }

    /// Element index from a word in the simple reflections (0-based letters).
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity(), |acc, &j| self.right_mul(acc, j))
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, rs: &RootSystem, idx: usize) -> usize {
        rs.positive_roots().iter().filter(|a| self.apply(rs, idx, a).is_negative()).count()
    }
}

/// A set `J` of simple-root indices (0-based internally).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParabolicSpec(BTreeSet<usize>);

impl ParabolicSpec {
    pub fn borel() -> Self {
        ParabolicSpec(BTreeSet::new())
    }

    pub fn from_zero_based(indices: impl IntoIterator<Item = usize>) -> Self {
        ParabolicSpec(indices.into_iter().collect())
    }

    /// Parses 1-based simple root indices, as used in input documents.
    pub fn from_one_based(indices: &[usize], rank: usize) -> Result<Self, RootError> {
        let mut set = BTreeSet::new();
        for &i in indices {
            if i == 0 || i > rank {
                return Err(RootError::ParabolicIndex { index: i, rank });
            }
            set.insert(i - 1);
        }
        Ok(ParabolicSpec(set))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    /// Every subset of `{0, .., rank - 1}`.
    pub fn all(rank: usize) -> Vec<ParabolicSpec> {
        (0..1usize << rank).map(|mask| ParabolicSpec((0..rank).filter(|i| mask >> i & 1 == 1).collect())).collect()
    }
}

/// Root data of the standard parabolic `P_J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicRoots {
    /// `Φ_J`: roots supported on `J`.
    pub levi: Vec<Root>,
    /// `R(P_J) = Φ⁺ ∪ (Φ_J ∩ Φ⁻)`.
    pub parabolic: Vec<Root>,
    /// `dim G/P_J = |Φ⁺| - |Φ_J⁺|`.
    pub dim_quotient: usize,
}

pub fn parabolic_roots(rs: &RootSystem, j: &ParabolicSpec) -> ParabolicRoots {
    let levi: Vec<Root> = rs.roots().iter().filter(|r| r.supported_on(j)).cloned().collect();
    let parabolic = rs.roots().iter().filter(|r| r.is_positive() || r.supported_on(j)).cloned().collect();
    let levi_pos = levi.iter().filter(|r| r.is_positive()).count();
    ParabolicRoots { dim_quotient: rs.positive_roots().len() - levi_pos, levi, parabolic }
}

/// A cocharacter, given by its pairings `<α_i, λ>` with the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FlagCocharacter(Vec<i64>);

impl FlagCocharacter {
    pub fn new(pairings: Vec<i64>, rank: usize) -> Result<Self, RootError> {
        if pairings.len() != rank {
            return Err(RootError::PairingLength { expected: rank, found: pairings.len() });
        }
        if pairings.iter().all(|&p| p == 0) {
            return Err(RootError::ZeroCocharacter);
        }
        Ok(FlagCocharacter(pairings))
    }

    /// Pairings 1 off `J` and 0 on `J`; realizes `P_J` as `P(λ)` when `J` is proper.
    pub fn for_parabolic(j: &ParabolicSpec, rank: usize) -> Result<Self, RootError> {
        Self::new((0..rank).map(|i| i64::from(!j.contains(i))).collect(), rank)
    }

    pub fn pairings(&self) -> &[i64] {
        &self.0
    }

    pub fn pair(&self, root: &Root) -> i64 {
        root.0.iter().zip(&self.0).map(|(n, p)| n * p).sum()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&p| p >= 0)
    }

    /// Indices with zero pairing: the simple roots of the centralizer's Levi.
    pub fn levi_spec(&self) -> ParabolicSpec {
        ParabolicSpec((0..self.0.len()).filter(|&i| self.0[i] == 0).collect())
    }

    /// Moves `λ` into the dominant chamber. Returns the dominant cocharacter
    /// and the word `[i_1, .., i_k]` with `λ_dom = s_{i_k} ... s_{i_1} λ`.
    pub fn to_dominant(&self, rs: &RootSystem) -> (FlagCocharacter, Vec<usize>) {
        let mut p = self.0.clone();
        let mut word = Vec::new();
        while let Some(i) = p.iter().position(|&x| x < 0) {
            // <α_j, s_i λ> = <s_i α_j, λ> = p_j - a_ij p_i
            let pi = p[i];
            for (j, pj) in p.iter_mut().enumerate() {
                *pj -= rs.cartan.entry(i, j) * pi;
            }
            word.push(i);
        }
        (FlagCocharacter(p), word)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `R(P(λ)) = {α : <α,λ> >= 0}` for `Sign::Plus`, `R(P(-λ)) = {α : <α,λ> <= 0}`
/// for `Sign::Minus`.
pub fn p_lambda_roots(rs: &RootSystem, lambda: &FlagCocharacter, sign: Sign) -> Vec<Root> {
    rs.roots()
        .iter()
        .filter(|r| match sign {
            Sign::Plus => lambda.pair(r) >= 0,
            Sign::Minus => lambda.pair(r) <= 0,
        })
        .cloned()
        .collect()
}

/// Roots of the centralizer `G(λ)`.
pub fn levi_roots(rs: &RootSystem, lambda: &FlagCocharacter) -> Vec<Root> {
    rs.roots().iter().filter(|r| lambda.pair(r) == 0).cloned().collect()
}
