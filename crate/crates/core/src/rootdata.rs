//! Root systems, cominuscule representations and their Hodge numbers.
//!
//! Roots are labeled as in Bourbaki and indices are 1-based throughout the
//! public API. Weights are kept in the fundamental-weight basis as exact
//! rationals; the cocharacter `H₀` attached to a special root `αᵢ` is the
//! fundamental coweight dual to `αᵢ`, so `μ(H₀)` is the `αᵢ`-coefficient of
//! `μ` in the simple-root basis.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactnum::{fmt_rational, q, qf, Matrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("no root system {0}{1}")]
    InvalidRank(RootType, usize),
    #[error("index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),
    #[error("α{0} is not a special root")]
    NotSpecial(usize),
    #[error("unsupported representation: {0}")]
    Unsupported(String),
    #[error("a twist is only meaningful in the non-tube case")]
    TwistInTube,
    #[error("the operation needs a non-tube domain")]
    TubeCase,
    #[error("resulting Hodge structure is not effective")]
    NonEffective,
    #[error("weights are not compatible with an integral Hodge decomposition")]
    NonIntegral,
    #[error("conjugate parts are not conjugate-symmetric")]
    NotConjugate,
}

/// Cartan–Killing type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Weight in the fundamental-weight basis.
pub type WeightVec = Vec<Rational>;

/// An irreducible reduced root system with its Bourbaki realization.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystem {
    kind: RootType,
    rank: usize,
    simple: Vec<Vec<Rational>>,
    cartan: Matrix<Rational>,
    cartan_inv: Matrix<Rational>,
    positive: Vec<Vec<i64>>,
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[i] = q(1);
    v
}

fn diff(dim: usize, i: usize, j: usize) -> Vec<Rational> {
    let mut v = unit(dim, i);
    v[j] = q(-1);
    v
}

fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn e8_simple() -> Vec<Vec<Rational>> {
    let half = qf(1, 2);
    let mut a1 = vec![-half.clone(); 8];
    a1[0] = half.clone();
    a1[7] = half;
    let mut a2 = unit(8, 0);
    a2[1] = q(1);
    let mut out = vec![a1, a2];
    for k in 1..7 {
        out.push(diff(8, k, k - 1));
    }
    out
}

impl RootSystem {
    /// `A_n (n ≥ 1)`, `B_n (n ≥ 2)`, `C_n (n ≥ 2)`, `D_n (n ≥ 3)`,
    /// `E_6`, `E_7`, `E_8`, `F_4`, `G_2`.
    pub fn new(kind: RootType, n: usize) -> Result<Self, RootError> {
        let bad = Err(RootError::InvalidRank(kind, n));
        let simple: Vec<Vec<Rational>> = match kind {
            RootType::A if n >= 1 => (0..n).map(|i| diff(n + 1, i, i + 1)).collect(),
            RootType::B if n >= 2 => {
                let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                s.push(unit(n, n - 1));
                s
            }
            RootType::C if n >= 2 => {
                let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                s.push(unit(n, n - 1).iter().map(|x| x * q(2)).collect());
                s
            }
            RootType::D if n >= 3 => {
                let mut s: Vec<_> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                let mut last = unit(n, n - 2);
                last[n - 1] = q(1);
                s.push(last);
                s
            }
            RootType::E if (6..=8).contains(&n) => e8_simple().into_iter().take(n).collect(),
            RootType::F if n == 4 => {
                let h = qf(1, 2);
                vec![
                    diff(4, 1, 2),
                    diff(4, 2, 3),
                    unit(4, 3),
                    vec![h.clone(), -h.clone(), -h.clone(), -h],
                ]
            }
            RootType::G if n == 2 => vec![diff(3, 0, 1), vec![q(-2), q(1), q(1)]],
            _ => return bad,
        };
        let mut cartan = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = q(2) * dot(&simple[i], &simple[j]) / dot(&simple[j], &simple[j]);
                cartan.set(i, j, c);
            }
        }
        let cartan_inv = cartan.inverse().expect("Cartan matrices are invertible");
        let mut rs = Self {
            kind,
            rank: n,
            simple,
            cartan,
            cartan_inv,
            positive: Vec::new(),
        };
        rs.positive = rs.enumerate_positive_roots();
        Ok(rs)
    }

    pub fn kind(&self) -> RootType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Label such as `E7`.
    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    /// `C[i][j] = 2(αᵢ, αⱼ)/(αⱼ, αⱼ)` (0-based storage).
    pub fn cartan(&self) -> &Matrix<Rational> {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<Rational>] {
        &self.simple
    }

    /// Positive roots in simple-root coordinates.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    fn cartan_int(&self, i: usize, j: usize) -> i64 {
        let c = self.cartan.get(i, j);
        debug_assert!(c.is_integer());
        c.to_integer().try_into().expect("small Cartan entry")
    }

    /// `⟨β, αⱼ^∨⟩` for `β` in simple-root coordinates.
    fn pairing_coroot(&self, beta: &[i64], j: usize) -> i64 {
        beta.iter()
            .enumerate()
            .map(|(i, b)| b * self.cartan_int(i, j))
            .sum()
    }

    fn enumerate_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut layer: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        roots.extend(layer.iter().cloned());
        while !layer.is_empty() {
            let mut next = BTreeSet::new();
            for beta in &layer {
                for j in 0..n {
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[j] -= 1;
                        if roots.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let qq = p - self.pairing_coroot(beta, j);
                    if qq > 0 {
                        let mut up = beta.clone();
                        up[j] += 1;
                        if !roots.contains(&up) {
                            next.insert(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().cloned());
            layer = next.into_iter().collect();
        }
        let mut out: Vec<Vec<i64>> = roots.into_iter().collect();
        out.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        out
    }

    /// Coefficients `nᵢ` of the highest root.
    pub fn highest_root(&self) -> Vec<i64> {
        self.positive.last().cloned().expect("nonempty root system")
    }

    fn check_index(&self, i: usize) -> Result<usize, RootError> {
        if i == 0 || i > self.rank {
            Err(RootError::IndexOutOfRange(i, self.rank))
        } else {
            Ok(i - 1)
        }
    }

    /// `ϖᵢ` as a weight vector.
    pub fn fundamental(&self, i: usize) -> Result<WeightVec, RootError> {
        let k = self.check_index(i)?;
        Ok(unit(self.rank, k))
    }

    /// `n·ϖᵢ`.
    pub fn multiple_of_fundamental(&self, i: usize, n: i64) -> Result<WeightVec, RootError> {
        Ok(self.fundamental(i)?.into_iter().map(|x| x * q(n)).collect())
    }

    /// Simple reflection `s_j` (1-based) on a weight.
    pub fn reflect(&self, j: usize, mu: &[Rational]) -> WeightVec {
        let k = j - 1;
        let c = mu[k].clone();
        mu.iter()
            .enumerate()
            .map(|(t, x)| x - &c * self.cartan.get(k, t))
            .collect()
    }

    /// Weyl orbit of a weight.
    pub fn orbit(&self, mu: &[Rational]) -> BTreeSet<WeightVec> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([mu.to_vec()]);
        seen.insert(mu.to_vec());
        while let Some(x) = queue.pop_front() {
            for j in 1..=self.rank {
                if x[j - 1].is_zero() {
                    continue;
                }
                let y = self.reflect(j, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Converts a Euclidean vector to fundamental-weight coordinates.
    pub fn euclidean_to_weight(&self, x: &[Rational]) -> WeightVec {
        self.simple
            .iter()
            .map(|a| q(2) * dot(x, a) / dot(a, a))
            .collect()
    }
}

/// Indices `i` with `nᵢ = 1`.
pub fn special_roots(r: &RootSystem) -> Vec<usize> {
    r.highest_root()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == 1)
        .map(|(i, _)| i + 1)
        .collect()
}

fn check_special(r: &RootSystem, i: usize) -> Result<usize, RootError> {
    let k = r.check_index(i)?;
    if !special_roots(r).contains(&i) {
        return Err(RootError::NotSpecial(i));
    }
    Ok(k)
}

/// `μ(H₀)` for the special root `αᵢ`: the `αᵢ`-coefficient of `μ`.
pub fn h0_eval(r: &RootSystem, i: usize, mu: &[Rational]) -> Result<Rational, RootError> {
    let k = check_special(r, i)?;
    Ok(h0_unchecked(r, k, mu))
}

fn h0_unchecked(r: &RootSystem, k: usize, mu: &[Rational]) -> Rational {
    mu.iter()
        .enumerate()
        .map(|(t, m)| m * r.cartan_inv.get(t, k))
        .sum()
}

/// Diagram automorphism induced by `τ = −w₀` (1-based indices).
pub fn opposition_permutation(r: &RootSystem) -> Vec<usize> {
    let n = r.rank;
    let id: Vec<usize> = (1..=n).collect();
    match r.kind {
        RootType::A => (1..=n).map(|i| n + 1 - i).collect(),
        RootType::D if n % 2 == 1 => {
            let mut p = id;
            p.swap(n - 2, n - 1);
            p
        }
        RootType::E if n == 6 => vec![6, 2, 5, 4, 3, 1],
        _ => id,
    }
}

/// `τμ = −w₀μ`.
pub fn opposition_weight(r: &RootSystem, mu: &[Rational]) -> WeightVec {
    let p = opposition_permutation(r);
    let mut out = vec![Rational::zero(); r.rank];
    for (j, x) in mu.iter().enumerate() {
        out[p[j] - 1] = x.clone();
    }
    out
}

/// `−w₀μ` for dominant `μ`, computed by reflecting down to the
/// antidominant chamber.
pub fn opposition_by_reflection(r: &RootSystem, mu: &[Rational]) -> WeightVec {
    let mut x = mu.to_vec();
    while let Some(j) = x.iter().position(Signed::is_positive) {
        x = r.reflect(j + 1, &x);
    }
    x.into_iter().map(|c| -c).collect()
}

/// Checks the per-type opposition against reflections on every `ϖⱼ`.
pub fn verify_opposition(r: &RootSystem) -> bool {
    (1..=r.rank).all(|j| {
        let w = r.fundamental(j).expect("in range");
        opposition_weight(r, &w) == opposition_by_reflection(r, &w)
    })
}

/// Multiset of weights with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    map: BTreeMap<WeightVec, usize>,
}

impl WeightMultiset {
    pub fn add(&mut self, w: WeightVec, m: usize) {
        if m > 0 {
            *self.map.entry(w).or_insert(0) += m;
        }
    }

    pub fn total(&self) -> usize {
        self.map.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.map.len()
    }

    pub fn multiplicity(&self, w: &[Rational]) -> usize {
        self.map.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeightVec, &usize)> {
        self.map.iter()
    }

    /// `self − other`, failing if a multiplicity would go negative.
    pub fn difference(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for (w, &m) in &other.map {
            let e = out.map.get_mut(w)?;
            *e = e.checked_sub(m)?;
            if *e == 0 {
                out.map.remove(w);
            }
        }
        Some(out)
    }
}

fn exterior_power(weights: &[WeightVec], k: usize, rank: usize) -> WeightMultiset {
    let mut out = WeightMultiset::default();
    for combo in weights.iter().combinations(k) {
        let mut s = vec![Rational::zero(); rank];
        for w in combo {
            for (a, b) in s.iter_mut().zip(w) {
                *a += b;
            }
        }
        out.add(s, 1);
    }
    out
}

/// Weights of the irreducible representation with highest weight `n·ϖᵢ`.
///
/// Supported: minuscule `ϖᵢ` (orbit), `B_n ϖ₁` (orbit plus zero weight),
/// `C_n ϖ_n` (`Λⁿ − Λⁿ⁻²` of the standard representation) and `n·ϖ₁`
/// for `A₁`.
pub fn rep_weights(r: &RootSystem, i: usize, n: i64) -> Result<WeightMultiset, RootError> {
    let k = check_special(r, i)?;
    let mut out = WeightMultiset::default();
    if n < 1 {
        return Err(RootError::Unsupported(format!("multiple {n}")));
    }
    if n > 1 {
        if r.kind == RootType::A && r.rank == 1 {
            for j in 0..=n {
                out.add(vec![q(n - 2 * j)], 1);
            }
            return Ok(out);
        }
        return Err(RootError::Unsupported(format!(
            "{}ϖ{} of {}: higher multiples only for A1",
            n,
            i,
            r.label()
        )));
    }
    let lambda = unit(r.rank, k);
    match r.kind {
        RootType::B => {
            for w in r.orbit(&lambda) {
                out.add(w, 1);
            }
            out.add(vec![Rational::zero(); r.rank], 1);
        }
        RootType::C => {
            let std: Vec<WeightVec> = (0..r.rank)
                .flat_map(|t| {
                    let e = unit(r.rank, t);
                    let neg: Vec<Rational> = e.iter().map(|x| -x).collect();
                    [r.euclidean_to_weight(&e), r.euclidean_to_weight(&neg)]
                })
                .collect();
            let top = exterior_power(&std, r.rank, r.rank);
            let lower = if r.rank >= 2 {
                exterior_power(&std, r.rank - 2, r.rank)
            } else {
                WeightMultiset::default()
            };
            out = top
                .difference(&lower)
                .ok_or_else(|| RootError::Unsupported("exterior difference".into()))?;
        }
        _ => {
            for w in r.orbit(&lambda) {
                out.add(w, 1);
            }
        }
    }
    Ok(out)
}

/// `k = ϖᵢ(H₀) + τϖᵢ(H₀)`.
pub fn real_rank(r: &RootSystem, i: usize) -> Result<Rational, RootError> {
    let w = r.fundamental(i)?;
    Ok(h0_eval(r, i, &w)? + h0_eval(r, i, &opposition_weight(r, &w))?)
}

/// True iff `τϖᵢ = ϖᵢ`.
pub fn is_tube(r: &RootSystem, i: usize) -> Result<bool, RootError> {
    let w = r.fundamental(i)?;
    Ok(opposition_weight(r, &w) == w)
}

/// `c = ½(λ(H₀) − τλ(H₀)) − ½`.
pub fn minimal_twist(r: &RootSystem, i: usize, lambda: &[Rational]) -> Result<Rational, RootError> {
    if is_tube(r, i)? {
        return Err(RootError::TubeCase);
    }
    let a = h0_eval(r, i, lambda)?;
    let b = h0_eval(r, i, &opposition_weight(r, lambda))?;
    Ok((a - b) * qf(1, 2) - qf(1, 2))
}

/// Hodge numbers `h^{p,q}` keyed by `(p, q)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HodgeDiamond {
    weight: i64,
    dims: BTreeMap<(i64, i64), usize>,
}

impl HodgeDiamond {
    /// From an explicit list; every key must have `p + q = weight`.
    pub fn new(weight: i64, dims: BTreeMap<(i64, i64), usize>) -> Result<Self, RootError> {
        if dims.keys().any(|(p, q)| p + q != weight) {
            return Err(RootError::NonIntegral);
        }
        let dims = dims.into_iter().filter(|(_, m)| *m > 0).collect();
        Ok(Self { weight, dims })
    }

    /// `h^{n,0}, h^{n−1,1}, …, h^{0,n}`.
    pub fn from_numbers(numbers: &[usize]) -> Self {
        let weight = numbers.len() as i64 - 1;
        let dims = numbers
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > 0)
            .map(|(j, &m)| ((weight - j as i64, j as i64), m))
            .collect();
        Self { weight, dims }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn h(&self, p: i64, q: i64) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<(i64, i64), usize> {
        &self.dims
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.dims.keys().all(|&(p, q)| p >= 0 && q >= 0)
    }

    /// Calabi–Yau type: effective with `h^{n,0} = 1`.
    pub fn is_cy(&self) -> bool {
        self.is_effective() && self.h(self.weight, 0) == 1
    }

    pub fn is_symmetric(&self) -> bool {
        self.dims.iter().all(|(&(p, q), &m)| self.h(q, p) == m)
    }

    /// `h^{p,q}` for `p = weight, …, 0` (effective diamonds).
    pub fn numbers(&self) -> Vec<usize> {
        (0..=self.weight.max(0)).map(|j| self.h(self.weight - j, j)).collect()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = BTreeMap::new();
        for (&(p, q), &m) in &self.dims {
            for (&(r, s), &k) in &other.dims {
                *dims.entry((p + r, q + s)).or_insert(0) += m * k;
            }
        }
        Self {
            weight: self.weight + other.weight,
            dims,
        }
    }

    fn merge(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        for (&k, &m) in &other.dims {
            *dims.entry(k).or_insert(0) += m;
        }
        Self {
            weight: self.weight,
            dims,
        }
    }

    pub fn to_json(&self) -> Value {
        json!(self.numbers())
    }
}

/// A pair of conjugate complex Hodge structures `V₊ ⊕ V₋`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPair {
    pub plus: HodgeDiamond,
    pub minus: HodgeDiamond,
}

impl ComplexPair {
    pub fn new(plus: HodgeDiamond, minus: HodgeDiamond) -> Result<Self, RootError> {
        let pair = Self { plus, minus };
        let conj_ok = pair.plus.weight == pair.minus.weight
            && pair
                .plus
                .dims
                .iter()
                .all(|(&(p, q), &m)| pair.minus.h(q, p) == m)
            && pair.plus.total() == pair.minus.total();
        if !conj_ok {
            return Err(RootError::NotConjugate);
        }
        Ok(pair)
    }

    /// The real Hodge structure `V₊ ⊕ V₋`.
    pub fn total(&self) -> HodgeDiamond {
        self.plus.merge(&self.minus)
    }

    /// Swaps `V₊` and `V₋`.
    pub fn conjugate(&self) -> Self {
        Self {
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        }
    }
}

/// `V{−a/2} = V₊⟨−a/2| ⊕ V₋|−a/2⟩`: `V₊^{p,q} ↦ (p+a, q)`, `V₋^{p,q} ↦ (p, q+a)`.
pub fn half_twist(pair: &ComplexPair, a: i64) -> Result<ComplexPair, RootError> {
    let shift = |d: &HodgeDiamond, dp: i64, dq: i64| HodgeDiamond {
        weight: d.weight + a,
        dims: d.dims.iter().map(|(&(p, q), &m)| ((p + dp, q + dq), m)).collect(),
    };
    let out = ComplexPair {
        plus: shift(&pair.plus, a, 0),
        minus: shift(&pair.minus, 0, a),
    };
    if !out.total().is_effective() {
        return Err(RootError::NonEffective);
    }
    Ok(out)
}

fn bucket(
    weights: impl Iterator<Item = (Rational, usize)>,
    top: &Rational,
) -> Result<HodgeDiamond, RootError> {
    let n = integral(top)?;
    let mut dims = BTreeMap::new();
    for (w, m) in weights {
        let twice_p = integral(&(top + &w))?;
        let twice_q = integral(&(top - &w))?;
        if twice_p % 2 != 0 || twice_q % 2 != 0 {
            return Err(RootError::NonIntegral);
        }
        *dims.entry((twice_p / 2, twice_q / 2)).or_insert(0) += m;
    }
    HodgeDiamond::new(n, dims)
}

fn integral(x: &Rational) -> Result<i64, RootError> {
    if !x.is_integer() {
        return Err(RootError::NonIntegral);
    }
    x.to_integer().try_into().map_err(|_| RootError::NonIntegral)
}

/// Conjugate pair with `V₊` weights `2(ϖ(H₀) − c)` and `V₋` their negatives.
///
/// Does not check the tube condition; [`hodge_diamond`] does.
pub fn complex_pair(r: &RootSystem, i: usize, n: i64, c: &Rational) -> Result<ComplexPair, RootError> {
    let ws = rep_weights(r, i, n)?;
    let k = i - 1;
    let shifted: Vec<(Rational, usize)> = ws
        .iter()
        .map(|(w, &m)| (q(2) * (h0_unchecked(r, k, w) - c), m))
        .collect();
    let top = shifted
        .iter()
        .map(|(w, _)| w.abs())
        .max()
        .unwrap_or_else(Rational::zero);
    let plus = bucket(shifted.iter().cloned(), &top)?;
    let minus = bucket(shifted.iter().map(|(w, m)| (-w.clone(), *m)), &top)?;
    ComplexPair::new(plus, minus)
}

/// Hodge diamond of `(R, αᵢ; n·ϖᵢ)`, with the given shift `c` in the
/// non-tube case (minimal twist when omitted).
pub fn hodge_diamond(
    r: &RootSystem,
    i: usize,
    n: i64,
    twist: Option<&Rational>,
) -> Result<HodgeDiamond, RootError> {
    check_special(r, i)?;
    if is_tube(r, i)? {
        if twist.is_some() {
            return Err(RootError::TwistInTube);
        }
        let ws = rep_weights(r, i, n)?;
        let weights: Vec<(Rational, usize)> = ws
            .iter()
            .map(|(w, &m)| (q(2) * h0_unchecked(r, i - 1, w), m))
            .collect();
        let top = weights.iter().map(|(w, _)| w.clone()).max().unwrap_or_else(Rational::zero);
        return bucket(weights.into_iter(), &top);
    }
    let lambda = r.multiple_of_fundamental(i, n)?;
    let c = match twist {
        Some(c) => c.clone(),
        None => minimal_twist(r, i, &lambda)?,
    };
    Ok(complex_pair(r, i, n, &c)?.total())
}

/// Weight-space dimensions of `V₊` and `V₋` under `scale·ϖ(H₀)` (and its
/// negative), keyed by weight in decreasing order.
pub fn weight_table(
    r: &RootSystem,
    i: usize,
    scale: &Rational,
) -> Result<Vec<(Rational, usize, usize)>, RootError> {
    let ws = rep_weights(r, i, 1)?;
    let mut t: BTreeMap<Rational, (usize, usize)> = BTreeMap::new();
    for (w, &m) in ws.iter() {
        let x = scale * h0_eval(r, i, w)?;
        t.entry(x.clone()).or_insert((0, 0)).0 += m;
        t.entry(-x).or_insert((0, 0)).1 += m;
    }
    Ok(t.into_iter().rev().map(|(w, (a, b))| (w, a, b)).collect())
}

/// `2d·ϖ(H₀)` with `d = det C` (the lifted untwisted weights).
pub fn lifted_weight_table(r: &RootSystem, i: usize) -> Result<Vec<(Rational, usize, usize)>, RootError> {
    let d = r.cartan().det().expect("square");
    weight_table(r, i, &(q(2) * d))
}

/// `|{β > 0 : nᵢ(β) > 0}|`, half the number of non-compact roots.
pub fn noncompact_half(r: &RootSystem, i: usize) -> usize {
    r.positive_roots().iter().filter(|b| b[i - 1] > 0).count()
}

/// The seven families of irreducible Hermitian symmetric domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainFamily {
    /// `I_{p,q}`.
    I(usize, usize),
    /// `II_n`.
    II(usize),
    /// `III_n`.
    III(usize),
    /// `IV_{2n−1}`.
    IVOdd(usize),
    /// `IV_{2n}`.
    IVEven(usize),
    EIII,
    EVII,
}

impl DomainFamily {
    pub fn label(&self) -> String {
        match *self {
            Self::I(p, q) => format!("I_{{{p},{q}}}"),
            Self::II(n) => format!("II_{n}"),
            Self::III(n) => format!("III_{n}"),
            Self::IVOdd(n) => format!("IV_{}", 2 * n - 1),
            Self::IVEven(n) => format!("IV_{}", 2 * n),
            Self::EIII => "EIII".into(),
            Self::EVII => "EVII".into(),
        }
    }

    /// Root datum `(R, αᵢ)`.
    pub fn root_datum(&self) -> Result<(RootSystem, usize), RootError> {
        Ok(match *self {
            Self::I(p, q) => (RootSystem::new(RootType::A, p + q - 1)?, p),
            Self::II(n) => (RootSystem::new(RootType::D, n)?, n),
            Self::III(n) => (RootSystem::new(RootType::C, n)?, n),
            Self::IVOdd(n) => (RootSystem::new(RootType::B, n)?, 1),
            Self::IVEven(n) => (RootSystem::new(RootType::D, n + 1)?, 1),
            Self::EIII => (RootSystem::new(RootType::E, 6)?, 1),
            Self::EVII => (RootSystem::new(RootType::E, 7)?, 7),
        })
    }

    /// The closed-form real rank listed for the family.
    pub fn listed_rank(&self) -> usize {
        match *self {
            Self::I(p, q) => p.min(q),
            Self::II(n) => n / 2,
            Self::III(n) => n,
            Self::IVOdd(_) | Self::IVEven(_) | Self::EIII => 2,
            Self::EVII => 3,
        }
    }

    pub fn groups(&self) -> (&'static str, &'static str) {
        match self {
            Self::I(..) => ("SU(p,q)", "S(U(p)xU(q))"),
            Self::II(_) => ("SO*(2n)", "U(n)"),
            Self::III(_) => ("Sp(n,R)", "U(n)"),
            Self::IVOdd(_) => ("Spin(2,2n-1)", "Spin(2)xSpin(2n-1)"),
            Self::IVEven(_) => ("Spin(2,2n)", "Spin(2)xSpin(2n)"),
            Self::EIII => ("E6(-14)", "U(1)xSpin(10)"),
            Self::EVII => ("E7(-25)", "U(1)xE6"),
        }
    }
}

/// One row of the domain table, with the real rank computed.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainDescriptor {
    pub family: DomainFamily,
    pub label: String,
    pub root: String,
    pub alpha: usize,
    pub group: String,
    pub compact: String,
    pub rank: Rational,
    pub tube: bool,
}

impl DomainDescriptor {
    pub fn of(family: DomainFamily) -> Result<Self, RootError> {
        let (r, i) = family.root_datum()?;
        let (g, k) = family.groups();
        Ok(Self {
            family,
            label: family.label(),
            root: r.label(),
            alpha: i,
            group: g.into(),
            compact: k.into(),
            rank: real_rank(&r, i)?,
            tube: is_tube(&r, i)?,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "R": self.root,
            "alpha": self.alpha,
            "group": self.group,
            "compact": self.compact,
            "rank": fmt_rational(&self.rank),
            "tube": self.tube,
        })
    }
}

/// Representatives of the seven families.
pub fn domain_table() -> Vec<DomainDescriptor> {
    [
        DomainFamily::I(2, 5),
        DomainFamily::II(6),
        DomainFamily::III(3),
        DomainFamily::IVOdd(3),
        DomainFamily::IVEven(3),
        DomainFamily::EIII,
        DomainFamily::EVII,
    ]
    .into_iter()
    .map(|f| DomainDescriptor::of(f).expect("valid family parameters"))
    .collect()
}

/// Which part of the weight-three list an entry belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogClass {
    Primitive,
    Reembedding,
    Complex,
    Reducible,
}

impl fmt::Display for CatalogClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Primitive => "primitive",
            Self::Reembedding => "reembedding",
            Self::Complex => "complex",
            Self::Reducible => "reducible",
        };
        f.write_str(s)
    }
}

/// A weight-three Calabi–Yau entry with its computed diamond.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub class: CatalogClass,
    pub label: String,
    pub root: String,
    pub alpha: Vec<usize>,
    pub highest_weight: String,
    pub tube: bool,
    pub rank: Rational,
    pub diamond: HodgeDiamond,
    pub twist: Option<Rational>,
}

impl CatalogEntry {
    pub fn to_json(&self) -> Value {
        json!({
            "class": self.class.to_string(),
            "label": self.label,
            "R": self.root,
            "alpha": self.alpha,
            "lambda": self.highest_weight,
            "tube": self.tube,
            "rank": fmt_rational(&self.rank),
            "weight": self.diamond.weight(),
            "diamond": self.diamond.numbers(),
            "twist": self.twist.as_ref().map(fmt_rational),
        })
    }
}

fn tube_entry(
    class: CatalogClass,
    label: &str,
    kind: RootType,
    rank: usize,
    i: usize,
    n: i64,
) -> Result<CatalogEntry, RootError> {
    let r = RootSystem::new(kind, rank)?;
    let lambda = if n == 1 { format!("w{i}") } else { format!("{n}w{i}") };
    Ok(CatalogEntry {
        class,
        label: label.into(),
        root: r.label(),
        alpha: vec![i],
        highest_weight: lambda,
        tube: true,
        rank: real_rank(&r, i)?,
        diamond: hodge_diamond(&r, i, n, None)?,
        twist: None,
    })
}

fn complex_entry(label: String, kind: RootType, rank: usize, i: usize, c: Rational) -> Result<CatalogEntry, RootError> {
    let r = RootSystem::new(kind, rank)?;
    Ok(CatalogEntry {
        class: CatalogClass::Complex,
        label,
        root: r.label(),
        alpha: vec![i],
        highest_weight: format!("w{i}"),
        tube: is_tube(&r, i)?,
        rank: real_rank(&r, i)?,
        diamond: complex_pair(&r, i, 1, &c)?.total(),
        twist: Some(c),
    })
}

/// `I_{1,n}` at weight three: shift `−(n+3)/(2(n+1))`.
pub fn ball_entry(n: usize) -> Result<CatalogEntry, RootError> {
    let n_i = n as i64;
    let c = qf(-(n_i + 3), 2 * (n_i + 1));
    complex_entry(format!("I_{{1,{n}}}"), RootType::A, n, 1, c)
}

/// `I_{2,n}` at weight three: shift `(n−6)/(2(n+2))`.
pub fn grassmann_entry(n: usize) -> Result<CatalogEntry, RootError> {
    let n_i = n as i64;
    let c = qf(n_i - 6, 2 * (n_i + 2));
    complex_entry(format!("I_{{2,{n}}}"), RootType::A, n + 1, 2, c)
}

/// Upper half-plane `(A₁, α₁; ϖ₁)`: weight one, `(1, 1)`.
fn upper_half_plane() -> Result<HodgeDiamond, RootError> {
    let r = RootSystem::new(RootType::A, 1)?;
    hodge_diamond(&r, 1, 1, None)
}

fn reducible_entry(label: String, root: String, alpha: Vec<usize>, parts: &[(HodgeDiamond, Rational)]) -> CatalogEntry {
    let mut diamond = HodgeDiamond::from_numbers(&[1]);
    let mut rank = Rational::zero();
    for (d, k) in parts {
        diamond = diamond.tensor(d);
        rank += k;
    }
    CatalogEntry {
        class: CatalogClass::Reducible,
        label,
        root,
        alpha,
        highest_weight: "tensor".into(),
        tube: false,
        rank,
        diamond,
        twist: None,
    }
}

/// Ranges used by [`weight3_catalog`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogRanges {
    pub ball_max: usize,
    pub grassmann_max: usize,
    pub type_iv_max: usize,
}

impl Default for CatalogRanges {
    fn default() -> Self {
        Self {
            ball_max: 8,
            grassmann_max: 6,
            type_iv_max: 8,
        }
    }
}

/// The weight-three Calabi–Yau list with computed diamonds and ranks.
pub fn weight3_catalog(ranges: CatalogRanges) -> Result<Vec<CatalogEntry>, RootError> {
    use CatalogClass::*;
    let mut out = vec![
        tube_entry(Primitive, "I_{3,3}", RootType::A, 5, 3, 1)?,
        tube_entry(Primitive, "III_3", RootType::C, 3, 3, 1)?,
        tube_entry(Primitive, "II_6", RootType::D, 6, 6, 1)?,
        tube_entry(Primitive, "EVII", RootType::E, 7, 7, 1)?,
        tube_entry(Reembedding, "H", RootType::A, 1, 1, 3)?,
    ];
    for n in 1..=ranges.ball_max {
        out.push(ball_entry(n)?);
    }
    for n in 1..=ranges.grassmann_max {
        out.push(grassmann_entry(n)?);
    }
    out.push(complex_entry("II_5".into(), RootType::D, 5, 5, qf(-1, 4))?);
    out.push(complex_entry("EIII".into(), RootType::E, 6, 1, qf(-1, 6))?);

    let h = upper_half_plane()?;
    let one = q(1);
    out.push(reducible_entry(
        "H x H x H".into(),
        "A1 x A1 x A1".into(),
        vec![1, 1, 1],
        &[(h.clone(), one.clone()), (h.clone(), one.clone()), (h.clone(), one.clone())],
    ));
    for n in 3..=ranges.type_iv_max {
        let family = if n % 2 == 1 {
            DomainFamily::IVOdd(n.div_ceil(2))
        } else {
            DomainFamily::IVEven(n / 2)
        };
        let (r, i) = family.root_datum()?;
        let k3 = hodge_diamond(&r, i, 1, None)?;
        out.push(reducible_entry(
            format!("H x IV_{n}"),
            format!("A1 x {}", r.label()),
            vec![1, i],
            &[(h.clone(), one.clone()), (k3, real_rank(&r, i)?)],
        ));
    }
    for n in 2..=ranges.ball_max {
        let r = RootSystem::new(RootType::A, n)?;
        let lambda = r.fundamental(1)?;
        let c = minimal_twist(&r, 1, &lambda)?;
        let k3 = complex_pair(&r, 1, 1, &c)?.total();
        out.push(reducible_entry(
            format!("H x I_{{1,{n}}}"),
            format!("A1 x {}", r.label()),
            vec![1, 1],
            &[(h.clone(), one.clone()), (k3, real_rank(&r, 1)?)],
        ));
    }
    Ok(out)
}

/// Positive-integer check used for real ranks.
pub fn is_positive_integer(x: &Rational) -> bool {
    x.is_integer() && x.is_positive()
}

impl fmt::Display for HodgeDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nums = self.numbers().iter().map(ToString::to_string).join(",");
        write!(f, "({nums})")
    }
}
