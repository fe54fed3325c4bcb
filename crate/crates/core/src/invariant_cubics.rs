//! Del Pezzo lattice combinatorics, the Cartan cubic on the 27 lines, its
//! hyperplane restriction, a model cubic on `C² ⊗ C⁶ ⊕ Λ²C⁶`, and support
//! isomorphism of cubic monomial hypergraphs.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cubic_family::{CubicForm, FamilyError};
use crate::exactnum::{q, SparsePoly};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CubicsError {
    #[error("only r = 5 or r = 6 blow-ups are supported, got {0}")]
    BadBlowups(usize),
    #[error("monomial {0:?} references a variable out of range")]
    OutOfRange([usize; 3]),
    #[error("monomial {0:?} listed twice")]
    Repeated([usize; 3]),
    #[error("{labels} labels for {kinds} kinds")]
    LabelMismatch { labels: usize, kinds: usize },
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// `d·h − Σ mᵢ·eᵢ` in `Pic` of `P²` blown up at `r` points, with form
/// `diag(1, −1, …, −1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PicClass {
    pub d: i64,
    pub m: Vec<i64>,
}

impl PicClass {
    pub fn new(d: i64, m: Vec<i64>) -> Self {
        Self { d, m }
    }

    /// Exceptional class `eᵢ` (1-based).
    pub fn exceptional(r: usize, i: usize) -> Self {
        let mut m = vec![0; r];
        m[i - 1] = -1;
        Self { d: 0, m }
    }

    /// Canonical class `K = (−3; −1, …, −1)`.
    pub fn canonical(r: usize) -> Self {
        Self { d: -3, m: vec![-1; r] }
    }

    pub fn r(&self) -> usize {
        self.m.len()
    }

    pub fn dot(&self, o: &Self) -> i64 {
        self.d * o.d - self.m.iter().zip(&o.m).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn self_intersection(&self) -> i64 {
        self.dot(self)
    }

    pub fn k_degree(&self) -> i64 {
        self.dot(&Self::canonical(self.r()))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            d: self.d + o.d,
            m: self.m.iter().zip(&o.m).map(|(a, b)| a + b).collect(),
        }
    }

    /// Relabels the points: `eᵢ ↦ e_{σ(i)}`.
    pub fn permuted(&self, sigma: &[usize]) -> Self {
        let mut m = vec![0; self.r()];
        for (i, &s) in sigma.iter().enumerate() {
            m[s] = self.m[i];
        }
        Self { d: self.d, m }
    }
}

impl fmt::Display for PicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.d {
            0 => {}
            1 => parts.push("h".to_string()),
            d => parts.push(format!("{d}h")),
        }
        for (i, &c) in self.m.iter().enumerate() {
            let e = format!("e{}", i + 1);
            let term = match -c {
                0 => continue,
                1 => format!("+{e}"),
                -1 => format!("-{e}"),
                k if k > 0 => format!("+{k}{e}"),
                k => format!("{k}{e}"),
            };
            parts.push(term);
        }
        let s = parts.concat();
        f.write_str(s.strip_prefix('+').unwrap_or(if s.is_empty() { "0" } else { &s }))
    }
}

/// Classes with the given self-intersection and `K`-degree, `0 ≤ d ≤ 3`,
/// `|mᵢ| ≤ 2`.
///
/// For `r ≤ 6` these bounds are exhaustive for lines and conic pencils:
/// Cauchy–Schwarz on `Σmᵢ = 3d + K·ℓ` and `Σmᵢ² = d² − ℓ²` gives
/// `0 ≤ d ≤ 2` and then `mᵢ² ≤ d² + 1 ≤ 5`.
fn enumerate_classes(r: usize, square: i64, kdeg: i64) -> Vec<PicClass> {
    let mut out = Vec::new();
    for d in 0..=3 {
        for m in (0..r).map(|_| -2..=2i64).multi_cartesian_product() {
            let c = PicClass::new(d, m);
            if c.self_intersection() == square && c.k_degree() == kdeg {
                out.push(c);
            }
        }
    }
    out.sort();
    out
}

/// Lines: `ℓ² = −1`, `ℓ·K = −1`.
pub fn dp_lines(r: usize) -> Result<Vec<PicClass>, CubicsError> {
    if r != 5 && r != 6 {
        return Err(CubicsError::BadBlowups(r));
    }
    Ok(enumerate_classes(r, -1, -1))
}

/// Conic pencils on the degree-four surface: `C² = 0`, `C·K = −2`.
pub fn dp_conic_pencils() -> Vec<PicClass> {
    enumerate_classes(5, 0, -2)
}

/// Unordered triples of distinct lines (indices into `dp_lines(6)`) summing
/// to `−K`.
pub fn tritangent_triples() -> Vec<[usize; 3]> {
    let lines = dp_lines(6).expect("r = 6");
    let minus_k = PicClass::new(3, vec![1; 6]);
    (0..lines.len())
        .tuple_combinations()
        .filter(|&(a, b, c)| lines[a].add(&lines[b]).add(&lines[c]) == minus_k)
        .map(|(a, b, c)| [a, b, c])
        .collect()
}

/// Role of a cubic-model variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Line,
    Conic,
    Tensor,
}

/// A cubic given by labeled variables and squarefree-or-not monomials
/// `coeff·x_a·x_b·x_c` (indices sorted).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicModel {
    labels: Vec<String>,
    kinds: Vec<VarKind>,
    monomials: Vec<([usize; 3], i64)>,
}

impl CubicModel {
    pub fn new(
        labels: Vec<String>,
        kinds: Vec<VarKind>,
        monomials: Vec<([usize; 3], i64)>,
    ) -> Result<Self, CubicsError> {
        if labels.len() != kinds.len() {
            return Err(CubicsError::LabelMismatch {
                labels: labels.len(),
                kinds: kinds.len(),
            });
        }
        let mut seen = BTreeSet::new();
        let mut mons = Vec::with_capacity(monomials.len());
        for (mut idx, c) in monomials {
            idx.sort_unstable();
            if idx[2] >= labels.len() {
                return Err(CubicsError::OutOfRange(idx));
            }
            if !seen.insert(idx) {
                return Err(CubicsError::Repeated(idx));
            }
            mons.push((idx, c));
        }
        Ok(Self {
            labels,
            kinds,
            monomials: mons,
        })
    }

    pub fn nvars(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kinds(&self) -> &[VarKind] {
        &self.kinds
    }

    pub fn monomials(&self) -> &[([usize; 3], i64)] {
        &self.monomials
    }

    /// Number of monomials containing each variable.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nvars()];
        for (idx, _) in &self.monomials {
            for v in idx.iter().dedup() {
                deg[*v] += 1;
            }
        }
        deg
    }

    /// The common degree if every variable has the same one.
    pub fn regularity(&self) -> Option<usize> {
        let deg = self.degrees();
        deg.iter().all_equal().then(|| deg.first().copied()).flatten()
    }

    pub fn count_kind(&self, kind: VarKind) -> usize {
        self.kinds.iter().filter(|k| **k == kind).count()
    }

    /// The monomial support as sorted index triples.
    pub fn support(&self) -> BTreeSet<[usize; 3]> {
        self.monomials.iter().map(|(i, _)| *i).collect()
    }

    pub fn to_poly(&self) -> SparsePoly<crate::exactnum::Rational> {
        let n = self.nvars();
        SparsePoly::from_terms(
            n,
            self.monomials.iter().map(|(idx, c)| {
                let mut e = vec![0u32; n];
                for &v in idx {
                    e[v] += 1;
                }
                (e, q(*c))
            }),
        )
    }

    pub fn to_cubic_form(&self) -> Result<CubicForm, CubicsError> {
        Ok(CubicForm::new(self.nvars(), self.to_poly())?)
    }

    pub fn summary_json(&self) -> Value {
        json!({
            "variables": self.nvars(),
            "monomials": self.monomials.len(),
            "regular": self.regularity(),
        })
    }
}

/// `Φ = Σ_{tritangents} x_a x_b x_c` on the 27 lines, all coefficients `+1`.
pub fn cartan_cubic() -> CubicModel {
    let lines = dp_lines(6).expect("r = 6");
    let labels = lines.iter().map(ToString::to_string).collect();
    let kinds = vec![VarKind::Line; lines.len()];
    let mons = tritangent_triples().into_iter().map(|t| (t, 1)).collect();
    CubicModel::new(labels, kinds, mons).expect("tritangents are distinct triples")
}

/// `Φ` restricted to `x_{e₆} = 0`; the remaining lines are split by
/// `ℓ·e₆ ∈ {0, 1}` into lines and conic classes of the degree-four surface.
pub fn restrict_cartan() -> CubicModel {
    let lines = dp_lines(6).expect("r = 6");
    let e6 = PicClass::exceptional(6, 6);
    let keep: Vec<usize> = (0..lines.len()).filter(|&i| lines[i] != e6).collect();
    let new_index = |old: usize| keep.iter().position(|&k| k == old);
    let labels = keep.iter().map(|&i| lines[i].to_string()).collect();
    let kinds = keep
        .iter()
        .map(|&i| {
            if lines[i].dot(&e6) == 0 {
                VarKind::Line
            } else {
                VarKind::Conic
            }
        })
        .collect();
    let mons = tritangent_triples()
        .into_iter()
        .filter_map(|t| {
            let mapped: Option<Vec<usize>> = t.iter().map(|&v| new_index(v)).collect();
            mapped.map(|m| ([m[0], m[1], m[2]], 1))
        })
        .collect();
    CubicModel::new(labels, kinds, mons).expect("subset of distinct triples")
}

/// Sign of the permutation given as a sequence of distinct integers.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let inv = (0..p.len())
        .tuple_combinations()
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Perfect matchings of `0..2k` as sorted pair lists.
pub fn perfect_matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let first = points[0];
    let mut out = Vec::new();
    for k in 1..points.len() {
        let rest: Vec<usize> = points[1..]
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k - 1)
            .map(|(_, &x)| x)
            .collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, (first, points[k]));
            out.push(m);
        }
    }
    out
}

/// Index of `ξ_{ij}` (`i < j`, 0-based) in [`su26_cubic`].
pub fn xi_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    let pos = (0..6usize).tuple_combinations::<(usize, usize)>().position(|p| p == (i, j)).expect("i < j < 6");
    12 + pos
}

/// `Φ₀ + Φ₁` on `x_{a,i}` (`a ∈ {1,2}`, `i ∈ 1..6`) and `ξ_{ij}`:
/// `Φ₀ = Σ ξ_{ij}(x_{1i}x_{2j} − x_{1j}x_{2i})`, `Φ₁ = Pf(ξ)`.
pub fn su26_cubic() -> CubicModel {
    let mut labels: Vec<String> = Vec::new();
    for a in 1..=2 {
        for i in 1..=6 {
            labels.push(format!("x{a}{i}"));
        }
    }
    for (i, j) in (1..=6).tuple_combinations() {
        labels.push(format!("xi{i}{j}"));
    }
    let kinds = vec![VarKind::Tensor; labels.len()];
    let mut mons = Vec::new();
    for (i, j) in (0..6usize).tuple_combinations() {
        let xi = xi_index(i, j);
        mons.push(([xi, i, 6 + j], 1));
        mons.push(([xi, j, 6 + i], -1));
    }
    for m in perfect_matchings(&[0, 1, 2, 3, 4, 5]) {
        let perm: Vec<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
        let vars = [xi_index(m[0].0, m[0].1), xi_index(m[1].0, m[1].1), xi_index(m[2].0, m[2].1)];
        mons.push((vars, permutation_sign(&perm)));
    }
    CubicModel::new(labels, kinds, mons).expect("distinct monomials")
}

struct Hypergraph {
    n: usize,
    edges: BTreeSet<[usize; 3]>,
    incident: Vec<Vec<[usize; 3]>>,
    codeg: Vec<Vec<usize>>,
    invariant: Vec<(usize, Vec<usize>)>,
}

impl Hypergraph {
    fn of(c: &CubicModel) -> Self {
        let n = c.nvars();
        let edges = c.support();
        let mut incident = vec![Vec::new(); n];
        let mut codeg = vec![vec![0; n]; n];
        for e in &edges {
            for v in e.iter().dedup() {
                incident[*v].push(*e);
            }
            for (a, b) in e.iter().dedup().tuple_combinations() {
                codeg[*a][*b] += 1;
                codeg[*b][*a] += 1;
            }
        }
        let invariant = (0..n)
            .map(|v| {
                let mut row = codeg[v].clone();
                row.sort_unstable();
                (incident[v].len(), row)
            })
            .collect();
        Self {
            n,
            edges,
            incident,
            codeg,
            invariant,
        }
    }

    /// Vertices ordered so each one has as many earlier co-neighbors as possible.
    fn search_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = Vec::with_capacity(self.n);
        let mut placed = vec![false; self.n];
        while order.len() < self.n {
            let next = (0..self.n)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = order.iter().filter(|&&u: &&usize| self.codeg[u][v] > 0).count();
                    (links, std::cmp::Reverse(v))
                })
                .expect("an unplaced vertex remains");
            placed[next] = true;
            order.push(next);
        }
        order
    }
}

struct Search<'a> {
    a: &'a Hypergraph,
    b: &'a Hypergraph,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, v: usize, cand: usize) -> bool {
        if self.a.invariant[v] != self.b.invariant[cand] {
            return false;
        }
        for (u, img) in self.map.iter().enumerate() {
            if let Some(w) = img {
                if self.a.codeg[u][v] != self.b.codeg[*w][cand] {
                    return false;
                }
            }
        }
        self.a.incident[v].iter().all(|e| {
            let image: Option<Vec<usize>> = e
                .iter()
                .map(|&x| if x == v { Some(cand) } else { self.map[x] })
                .collect();
            match image {
                Some(mut img) => {
                    img.sort_unstable();
                    self.b.edges.contains(&[img[0], img[1], img[2]])
                }
                None => true,
            }
        })
    }

    fn run(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        for cand in 0..self.b.n {
            if self.used[cand] || !self.consistent(v, cand) {
                continue;
            }
            self.map[v] = Some(cand);
            self.used[cand] = true;
            if self.run(pos + 1) {
                return true;
            }
            self.map[v] = None;
            self.used[cand] = false;
        }
        false
    }
}

/// A variable bijection carrying the monomial support of `c1` onto that of
/// `c2`, or `None` once the search is exhausted.
pub fn support_isomorphism(c1: &CubicModel, c2: &CubicModel) -> Option<Vec<usize>> {
    if c1.nvars() != c2.nvars() || c1.monomials().len() != c2.monomials().len() {
        return None;
    }
    let a = Hypergraph::of(c1);
    let b = Hypergraph::of(c2);
    let mut ia = a.invariant.clone();
    let mut ib = b.invariant.clone();
    ia.sort();
    ib.sort();
    if ia != ib {
        return None;
    }
    let mut s = Search {
        order: a.search_order(),
        a: &a,
        b: &b,
        map: vec![None; a.n],
        used: vec![false; a.n],
    };
    if !s.run(0) {
        return None;
    }
    let map: Vec<usize> = s.map.into_iter().map(|x| x.expect("complete")).collect();
    debug_assert!(is_support_isomorphism(c1, c2, &map));
    Some(map)
}

/// Checks that `map` is a bijection carrying the support of `c1` onto `c2`.
pub fn is_support_isomorphism(c1: &CubicModel, c2: &CubicModel, map: &[usize]) -> bool {
    if map.len() != c1.nvars() || c1.nvars() != c2.nvars() || !map.iter().all_unique() {
        return false;
    }
    if map.iter().any(|&x| x >= c2.nvars()) {
        return false;
    }
    let image: BTreeSet<[usize; 3]> = c1
        .support()
        .iter()
        .map(|e| {
            let mut t = e.map(|v| map[v]);
            t.sort_unstable();
            t
        })
        .collect();
    image == c2.support()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic_family::{TubeCondition, TubeModel};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn line_counts() {
        let l6 = dp_lines(6).unwrap();
        assert_eq!(l6.len(), 27);
        let l5 = dp_lines(5).unwrap();
        assert_eq!(l5.len(), 16);
        assert!(dp_lines(4).is_err());
        for sigma in [[1, 0, 2, 3, 4, 5], [5, 4, 3, 2, 1, 0], [1, 2, 3, 4, 5, 0]] {
            let mut p: Vec<PicClass> = l6.iter().map(|c| c.permuted(&sigma)).collect();
            p.sort();
            assert_eq!(p, l6);
        }
        assert!(l6.contains(&PicClass::exceptional(6, 1)));
        assert!(l6.contains(&PicClass::new(2, vec![0, 1, 1, 1, 1, 1])));
    }

    #[test]
    fn conic_pencils() {
        let c = dp_conic_pencils();
        assert_eq!(c.len(), 10);
        assert!(c.contains(&PicClass::new(1, vec![1, 0, 0, 0, 0])));
        let mut p: Vec<PicClass> = c.iter().map(|x| x.permuted(&[4, 0, 1, 2, 3])).collect();
        p.sort();
        assert_eq!(p, c);
    }

    #[test]
    fn tritangents() {
        let t = tritangent_triples();
        assert_eq!(t.len(), 45);
        let lines = dp_lines(6).unwrap();
        let mut count = [0; 27];
        for tri in &t {
            for &v in tri {
                count[v] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 5));
        let idx = |c: PicClass| lines.iter().position(|l| *l == c).unwrap();
        let e1 = idx(PicClass::exceptional(6, 1));
        let c12 = idx(PicClass::new(1, vec![1, 1, 0, 0, 0, 0]));
        let b2 = idx(PicClass::new(2, vec![0, 1, 1, 1, 1, 1]));
        let b1 = idx(PicClass::new(2, vec![1, 0, 1, 1, 1, 1]));
        let sorted = |mut x: [usize; 3]| {
            x.sort();
            x
        };
        assert!(!t.contains(&sorted([e1, c12, b2])));
        assert!(t.contains(&sorted([e1, c12, b1])));
    }

    #[test]
    fn cartan_and_restriction() {
        let c = cartan_cubic();
        assert_eq!((c.nvars(), c.monomials().len(), c.regularity()), (27, 45, Some(5)));
        let r = restrict_cartan();
        assert_eq!(r.nvars(), 26);
        assert_eq!(r.monomials().len(), 40);
        assert_eq!((r.count_kind(VarKind::Line), r.count_kind(VarKind::Conic)), (16, 10));
        for (idx, _) in r.monomials() {
            let lines = idx.iter().filter(|&&v| r.kinds()[v] == VarKind::Line).count();
            assert_eq!(lines, 2);
        }
    }

    #[test]
    fn su26_shape() {
        let s = su26_cubic();
        assert_eq!((s.nvars(), s.monomials().len(), s.regularity()), (27, 45, Some(5)));
        assert_eq!(perfect_matchings(&[0, 1, 2, 3, 4, 5]).len(), 15);
    }

    fn wedge_sign(seq: &[usize]) -> i64 {
        if seq.iter().all_unique() {
            permutation_sign(seq)
        } else {
            0
        }
    }

    #[test]
    fn pfaffian_matches_wedge_cube() {
        // (Σ ξ_{ij} eᵢ∧eⱼ)³ = 3!·Pf(ξ)·e₁∧…∧e₆.
        let s = su26_cubic();
        let pairs: Vec<(usize, usize)> = (0..6usize).tuple_combinations().collect();
        let mut coeff: std::collections::BTreeMap<[usize; 3], i64> = Default::default();
        for p in pairs.iter().cartesian_product(&pairs).cartesian_product(&pairs) {
            let ((a, b), c) = p;
            let seq = [a.0, a.1, b.0, b.1, c.0, c.1];
            let sgn = wedge_sign(&seq);
            if sgn != 0 {
                let mut key = [xi_index(a.0, a.1), xi_index(b.0, b.1), xi_index(c.0, c.1)];
                key.sort();
                *coeff.entry(key).or_default() += sgn;
            }
        }
        let pf: Vec<([usize; 3], i64)> = s
            .monomials()
            .iter()
            .filter(|(idx, _)| idx.iter().all(|&v| v >= 12))
            .cloned()
            .collect();
        assert_eq!(pf.len(), 15);
        for (idx, c) in pf {
            assert_eq!(coeff[&idx], 6 * c);
        }
    }

    #[test]
    fn isomorphisms() {
        let c = cartan_cubic();
        let id = support_isomorphism(&c, &c).unwrap();
        assert!(is_support_isomorphism(&c, &c, &id));
        let s = su26_cubic();
        let m = support_isomorphism(&c, &s).unwrap();
        assert!(is_support_isomorphism(&c, &s, &m));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut edges = BTreeSet::new();
        while edges.len() < 45 {
            let mut e = [rng.gen_range(0..27), rng.gen_range(0..27), rng.gen_range(0..27)];
            e.sort();
            if e.iter().all_unique() {
                edges.insert(e);
            }
        }
        let r = CubicModel::new(
            (0..27).map(|i| format!("y{i}")).collect(),
            vec![VarKind::Tensor; 27],
            edges.into_iter().map(|e| (e, 1)).collect(),
        )
        .unwrap();
        assert!(support_isomorphism(&c, &r).is_none());
    }

    #[test]
    fn cartan_condition_iv() {
        let m = TubeModel::from_cubic(&cartan_cubic().to_cubic_form().unwrap());
        let w: Vec<_> = (0..27).map(|i| q((i % 5) as i64 - 2)).collect();
        assert_ne!(m.cubic(&w), q(0));
        assert!(m.condition_check(&w, TubeCondition::IV).unwrap());
    }

    #[test]
    fn model_validation() {
        let l = vec!["a".to_string(), "b".to_string()];
        let k = vec![VarKind::Tensor; 2];
        assert_eq!(
            CubicModel::new(l.clone(), k.clone(), vec![([0, 1, 2], 1)]),
            Err(CubicsError::OutOfRange([0, 1, 2]))
        );
        assert_eq!(
            CubicModel::new(l, k, vec![([0, 0, 1], 1), ([1, 0, 0], 2)]),
            Err(CubicsError::Repeated([0, 0, 1]))
        );
        assert_eq!(PicClass::new(2, vec![0, 1, 1, 1, 1, 1]).to_string(), "2h-e2-e3-e4-e5-e6");
        assert_eq!(PicClass::exceptional(6, 1).to_string(), "e1");
    }
}
