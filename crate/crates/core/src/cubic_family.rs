//! Horizontal families attached to cubic potentials.
//!
//! For a potential `φ(z₁,…,z_h)` the period map is the polynomial vector
//! `ω(z)` in the symplectic basis `e₀,…,e_h,f₁,…,f_h,f₀`. Two normalizations
//! are supported:
//!
//! * [`Normalization::Potential`]: `ω = ψe₀ + Σαᵢeᵢ + Σzᵢfᵢ + f₀` with
//!   `ψ = φ − ½Σzᵢφᵢ` and `αᵢ = ½φᵢ`; any polynomial potential is accepted.
//! * [`Normalization::Standard`]: `ω = −φe₀ + Σφᵢeᵢ + Σzᵢfᵢ + f₀` for a
//!   homogeneous cubic `φ`.
//!
//! The module also covers the translations `T_v`, scalings `S_λ`, their
//! logarithms, the abstract tube model `(t, v, ξ, s)` with its nilpotent
//! operators `N_w`, and the degenerate families in the `ε/δ` basis.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::exactnum::{
    fmt_rational, matrix::span_basis, parse_rational, q, qf, ExactError, Matrix, Rational,
    SparsePoly,
};
use crate::lmhs::{LmhsError, NilpotentOp};
use crate::symplectic::{Gram, SympError, SympSpace};

/// Rational polynomial.
pub type QPoly = SparsePoly<Rational>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("potential must be a homogeneous cubic")]
    NotHomogeneousCubic,
    #[error("quadrics must be homogeneous of degree 2 in {0} variables")]
    NotHomogeneousQuadric(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("scaling factor must be nonzero")]
    ZeroScale,
    #[error("T − I is not nilpotent of order at most 4")]
    NotUnipotent,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("trilinear tensor is not symmetric")]
    NotSymmetric,
    #[error("Yukawa closed form disagrees with the pairing definition")]
    YukawaMismatch,
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Symp(#[from] SympError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lmhs(#[from] LmhsError),
}

/// Symmetric 3-tensor on an `h`-dimensional space, stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor3 {
    h: usize,
    data: Vec<Rational>,
}

impl SymTensor3 {
    /// Builds from dense data indexed `(r·h + s)·h + t`, checking symmetry.
    pub fn new(h: usize, data: Vec<Rational>) -> Result<Self, FamilyError> {
        if data.len() != h * h * h {
            return Err(FamilyError::Dimension(format!(
                "{} entries for an order-3 tensor on dimension {h}",
                data.len()
            )));
        }
        let t = Self { h, data };
        for r in 0..h {
            for s in 0..h {
                for u in 0..h {
                    let x = t.get(r, s, u);
                    if x != t.get(s, r, u) || x != t.get(r, u, s) {
                        return Err(FamilyError::NotSymmetric);
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn zeros(h: usize) -> Self {
        Self {
            h,
            data: vec![Rational::zero(); h * h * h],
        }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn get(&self, r: usize, s: usize, t: usize) -> &Rational {
        &self.data[(r * self.h + s) * self.h + t]
    }

    fn set_sym(&mut self, r: usize, s: usize, t: usize, x: Rational) {
        let h = self.h;
        for (a, b, c) in [(r, s, t), (r, t, s), (s, r, t), (s, t, r), (t, r, s), (t, s, r)] {
            self.data[(a * h + b) * h + c] = x.clone();
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            h: self.h,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `C(u, v, w)`.
    pub fn eval(&self, u: &[Rational], v: &[Rational], w: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (r, ur) in u.iter().enumerate() {
            if ur.is_zero() {
                continue;
            }
            for (s, vs) in v.iter().enumerate() {
                if vs.is_zero() {
                    continue;
                }
                for (t, wt) in w.iter().enumerate() {
                    let c = self.get(r, s, t);
                    if !c.is_zero() && !wt.is_zero() {
                        acc += c * ur * vs * wt;
                    }
                }
            }
        }
        acc
    }

    /// The matrix `M_w` with `M_w[k][j] = C(w, e_j, e_k)`.
    pub fn contract(&self, w: &[Rational]) -> Matrix<Rational> {
        let h = self.h;
        let mut m = Matrix::zeros(h, h);
        for k in 0..h {
            for j in 0..h {
                let mut acc = Rational::zero();
                for (i, wi) in w.iter().enumerate() {
                    let c = self.get(i, j, k);
                    if !c.is_zero() && !wi.is_zero() {
                        acc += c * wi;
                    }
                }
                m.set(k, j, acc);
            }
        }
        m
    }
}

/// Homogeneous cubic `φ` with its constant third-derivative tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicForm {
    h: usize,
    poly: QPoly,
    tensor: SymTensor3,
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    exp: Vec<u32>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct CubicJson {
    h: usize,
    monomials: Vec<MonomialJson>,
}

impl CubicForm {
    /// Wraps a homogeneous cubic in `h` variables (the zero polynomial is allowed).
    pub fn new(h: usize, poly: QPoly) -> Result<Self, FamilyError> {
        let poly = poly.padded(h);
        if poly.nvars() != h || !poly.is_homogeneous(3) {
            return Err(FamilyError::NotHomogeneousCubic);
        }
        let mut tensor = SymTensor3::zeros(h);
        for r in 0..h {
            let dr = poly.derivative(r);
            for s in r..h {
                let drs = dr.derivative(s);
                for t in s..h {
                    let c = drs.derivative(t).coeff(&vec![0; h]);
                    tensor.set_sym(r, s, t, c);
                }
            }
        }
        Ok(Self { h, poly, tensor })
    }

    /// From `(exponent, coefficient)` pairs.
    pub fn from_monomials(h: usize, terms: &[(Vec<u32>, Rational)]) -> Result<Self, FamilyError> {
        if terms.iter().any(|(e, _)| e.len() != h) {
            return Err(FamilyError::Dimension("exponent length differs from h".into()));
        }
        Self::new(h, SparsePoly::from_terms(h, terms.iter().cloned()))
    }

    /// The cubic `(1/6)C(z,z,z)` of a symmetric tensor.
    pub fn from_tensor(c: &SymTensor3) -> Self {
        let h = c.h();
        let mut terms = Vec::new();
        for r in 0..h {
            for s in 0..h {
                for t in 0..h {
                    let x = c.get(r, s, t);
                    if x.is_zero() {
                        continue;
                    }
                    let mut e = vec![0u32; h];
                    e[r] += 1;
                    e[s] += 1;
                    e[t] += 1;
                    terms.push((e, x * qf(1, 6)));
                }
            }
        }
        Self::new(h, SparsePoly::from_terms(h, terms)).expect("tensor cubic is homogeneous")
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn tensor(&self) -> &SymTensor3 {
        &self.tensor
    }

    /// `∂³φ/∂z_r∂z_s∂z_t`.
    pub fn c(&self, r: usize, s: usize, t: usize) -> &Rational {
        self.tensor.get(r, s, t)
    }

    pub fn gradient(&self) -> Vec<QPoly> {
        (0..self.h).map(|i| self.poly.derivative(i)).collect()
    }

    pub fn eval(&self, z: &[Rational]) -> Rational {
        self.poly.eval(z)
    }

    pub fn grad_at(&self, z: &[Rational]) -> Vec<Rational> {
        self.gradient().iter().map(|p| p.eval(z)).collect()
    }

    /// Hessian `(φ_ij(z))`.
    pub fn hessian_at(&self, z: &[Rational]) -> Matrix<Rational> {
        self.tensor.contract(z)
    }

    /// Parses `{"h":3,"monomials":[{"exp":[1,1,1],"coeff":"-1"}]}`.
    pub fn from_json(v: &Value) -> Result<Self, FamilyError> {
        let j: CubicJson =
            serde_json::from_value(v.clone()).map_err(|e| FamilyError::Json(e.to_string()))?;
        let mut terms = Vec::new();
        for m in j.monomials {
            if m.exp.len() != j.h {
                return Err(FamilyError::Json(format!(
                    "exponent {:?} has length {} but h = {}",
                    m.exp,
                    m.exp.len(),
                    j.h
                )));
            }
            terms.push((m.exp, parse_rational(&m.coeff)?));
        }
        Self::from_monomials(j.h, &terms)
    }

    pub fn to_json(&self) -> Value {
        let j = CubicJson {
            h: self.h,
            monomials: self
                .poly
                .terms()
                .map(|(e, c)| MonomialJson {
                    exp: e.clone(),
                    coeff: fmt_rational(c),
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }
}

/// Which local form of the period map to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Potential form with the ½ factors.
    Potential,
    /// Homogeneous-cubic form without ½ factors.
    Standard,
}

/// Tag recording how a period map was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    Potential,
    Standard,
    ComplexDegen,
}

/// `ω(z)` as a vector of polynomials in the symplectic basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodMapSymbolic {
    space: SympSpace,
    nvars: usize,
    entries: Vec<QPoly>,
    tag: FamilyTag,
}

impl PeriodMapSymbolic {
    /// Wraps explicit entries.
    pub fn new(
        space: SympSpace,
        nvars: usize,
        entries: Vec<QPoly>,
        tag: FamilyTag,
    ) -> Result<Self, FamilyError> {
        if entries.len() != space.dim() {
            return Err(FamilyError::Dimension(format!(
                "{} entries for a space of dimension {}",
                entries.len(),
                space.dim()
            )));
        }
        let entries = entries.into_iter().map(|p| p.padded(nvars)).collect();
        Ok(Self {
            space,
            nvars,
            entries,
            tag,
        })
    }

    pub fn space(&self) -> &SympSpace {
        &self.space
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn entries(&self) -> &[QPoly] {
        &self.entries
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    /// Replaces one coordinate (used to build non-examples).
    pub fn with_entry(&self, idx: usize, p: QPoly) -> Self {
        let mut out = self.clone();
        out.entries[idx] = p.padded(self.nvars);
        out
    }

    /// `∂ω/∂z_i`.
    pub fn partial(&self, i: usize) -> Vec<QPoly> {
        self.entries.iter().map(|p| p.derivative(i)).collect()
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, z: &[Rational]) -> Vec<Rational> {
        self.entries.iter().map(|p| p.eval(z)).collect()
    }

    /// `ω(z + v)`.
    pub fn shifted(&self, v: &[Rational]) -> Self {
        let images: Vec<QPoly> = (0..self.nvars)
            .map(|i| SparsePoly::var(self.nvars, i) + SparsePoly::constant(self.nvars, v[i].clone()))
            .collect();
        self.substituted(&images)
    }

    /// `ω(λz)`.
    pub fn scaled(&self, lambda: &Rational) -> Self {
        let images: Vec<QPoly> = (0..self.nvars)
            .map(|i| SparsePoly::var(self.nvars, i).scale(lambda))
            .collect();
        self.substituted(&images)
    }

    fn substituted(&self, images: &[QPoly]) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|p| p.substitute(images).padded(self.nvars))
            .collect();
        Self {
            entries,
            ..self.clone()
        }
    }

    /// `T·ω(z)` for a rational matrix `T`.
    pub fn transformed(&self, t: &Matrix<Rational>) -> Self {
        let entries = apply_to_polys(t, &self.entries, self.nvars);
        Self {
            entries,
            ..self.clone()
        }
    }
}

/// Matrix times polynomial vector.
pub fn apply_to_polys(t: &Matrix<Rational>, v: &[QPoly], nvars: usize) -> Vec<QPoly> {
    assert_eq!(t.cols(), v.len(), "vector length mismatch");
    (0..t.rows())
        .map(|i| {
            let mut acc = QPoly::zero_in(nvars);
            for (j, p) in v.iter().enumerate() {
                let c = t.get(i, j);
                if !c.is_zero() && !p.is_zero() {
                    acc = acc + p.scale(c);
                }
            }
            acc
        })
        .collect()
}

/// `ω(z)` for a homogeneous cubic in either normalization.
pub fn omega_of(phi: &CubicForm, norm: Normalization) -> PeriodMapSymbolic {
    match norm {
        Normalization::Potential => omega_of_potential(phi.h(), phi.poly()),
        Normalization::Standard => {
            let h = phi.h();
            let s = SympSpace::new(h);
            let mut entries = vec![QPoly::zero_in(h); s.dim()];
            entries[s.e(0)] = -phi.poly().clone();
            for (i, g) in phi.gradient().into_iter().enumerate() {
                entries[s.e(i + 1)] = g;
                entries[s.f(i + 1)] = SparsePoly::var(h, i);
            }
            entries[s.f(0)] = QPoly::one_in(h);
            PeriodMapSymbolic::new(s, h, entries, FamilyTag::Standard).expect("consistent size")
        }
    }
}

/// `ω(z)` in potential form for an arbitrary polynomial potential.
pub fn omega_of_potential(h: usize, potential: &QPoly) -> PeriodMapSymbolic {
    let phi = potential.padded(h);
    let s = SympSpace::new(h);
    let half = qf(1, 2);
    let grads: Vec<QPoly> = (0..h).map(|i| phi.derivative(i)).collect();
    let mut euler = QPoly::zero_in(h);
    for (i, g) in grads.iter().enumerate() {
        euler = euler + SparsePoly::var(h, i) * g.clone();
    }
    let mut entries = vec![QPoly::zero_in(h); s.dim()];
    entries[s.e(0)] = phi.clone() - euler.scale(&half);
    for (i, g) in grads.iter().enumerate() {
        entries[s.e(i + 1)] = g.scale(&half);
        entries[s.f(i + 1)] = SparsePoly::var(h, i);
    }
    entries[s.f(0)] = QPoly::one_in(h);
    PeriodMapSymbolic::new(s, h, entries, FamilyTag::Potential).expect("consistent size")
}

/// The polynomials `⟨ω, ∂ω/∂zᵢ⟩`, one per variable.
pub fn transversality_residuals(omega: &PeriodMapSymbolic) -> Vec<QPoly> {
    (0..omega.nvars())
        .map(|i| {
            omega
                .space()
                .pair(omega.entries(), &omega.partial(i))
                .expect("same ambient space")
        })
        .collect()
}

/// True iff `⟨ω, ∂ω/∂zᵢ⟩ ≡ 0` for every `i`.
pub fn check_transversality(omega: &PeriodMapSymbolic) -> bool {
    transversality_residuals(omega).iter().all(Zero::is_zero)
}

/// `⟨∂_r∂_s∂_t ω, ω⟩` for all index triples, as polynomials.
pub fn yukawa_by_pairing(omega: &PeriodMapSymbolic) -> Vec<QPoly> {
    let h = omega.nvars();
    let mut out = Vec::with_capacity(h * h * h);
    for r in 0..h {
        let dr = omega.partial(r);
        for s in 0..h {
            let drs: Vec<QPoly> = dr.iter().map(|p| p.derivative(s)).collect();
            for t in 0..h {
                let drst: Vec<QPoly> = drs.iter().map(|p| p.derivative(t)).collect();
                out.push(omega.space().pair(&drst, omega.entries()).expect("same space"));
            }
        }
    }
    out
}

/// The Yukawa cubic `Ξ_rst`: `−½φ_rst` (potential) or `−φ_rst` (standard),
/// checked against the pairing definition.
pub fn yukawa(phi: &CubicForm, norm: Normalization) -> Result<SymTensor3, FamilyError> {
    let factor = match norm {
        Normalization::Potential => qf(-1, 2),
        Normalization::Standard => q(-1),
    };
    let closed = phi.tensor().scale(&factor);
    let h = phi.h();
    let direct = yukawa_by_pairing(&omega_of(phi, norm));
    for r in 0..h {
        for s in 0..h {
            for t in 0..h {
                let p = &direct[(r * h + s) * h + t];
                let expected = QPoly::constant(h, closed.get(r, s, t).clone());
                if *p != expected {
                    return Err(FamilyError::YukawaMismatch);
                }
            }
        }
    }
    Ok(closed)
}

/// The symplectic translation `T_v` with `T_vω(z) = ω(z+v)` (standard form).
pub fn translation_matrix(phi: &CubicForm, v: &[Rational]) -> Result<Matrix<Rational>, FamilyError> {
    let h = phi.h();
    if v.len() != h {
        return Err(FamilyError::Dimension(format!("|v| = {} but h = {h}", v.len())));
    }
    let s = SympSpace::new(h);
    let mut t = Matrix::identity(s.dim());
    let grad = phi.grad_at(v);
    let hess = phi.hessian_at(v);
    // T f₀ = f₀ + Σ vᵢfᵢ + Σ φᵢ(v)eᵢ − φ(v)e₀
    t.set(s.e(0), s.f(0), -phi.eval(v));
    for i in 1..=h {
        t.set(s.f(i), s.f(0), v[i - 1].clone());
        t.set(s.e(i), s.f(0), grad[i - 1].clone());
        // T fᵢ = fᵢ + Σⱼ φᵢⱼ(v)eⱼ − φᵢ(v)e₀
        t.set(s.e(0), s.f(i), -grad[i - 1].clone());
        for j in 1..=h {
            t.set(s.e(j), s.f(i), hess.get(j - 1, i - 1).clone());
        }
        // T eᵢ = eᵢ − vᵢe₀
        t.set(s.e(0), s.e(i), -v[i - 1].clone());
    }
    Ok(t)
}

/// The scaling `S_λ`: `e₀ ↦ λ³e₀`, `eᵢ ↦ λ²eᵢ`, `fᵢ ↦ λfᵢ`, `f₀ ↦ f₀`.
pub fn scaling_matrix(lambda: &Rational, h: usize) -> Result<Matrix<Rational>, FamilyError> {
    if lambda.is_zero() {
        return Err(FamilyError::ZeroScale);
    }
    let s = SympSpace::new(h);
    let mut d = vec![Rational::one(); s.dim()];
    d[s.e(0)] = lambda * lambda * lambda;
    for i in 1..=h {
        d[s.e(i)] = lambda * lambda;
        d[s.f(i)] = lambda.clone();
    }
    Ok(Matrix::diagonal(&d))
}

/// `log T = X − X²/2 + X³/3` with `X = T − I`, requiring `X⁴ = 0`.
pub fn log_unipotent(t: &Matrix<Rational>) -> Result<NilpotentOp, FamilyError> {
    if !t.is_square() {
        return Err(ExactError::NotSquare(t.rows(), t.cols()).into());
    }
    let n = t.rows();
    let x = t.sub(&Matrix::identity(n));
    let x2 = x.matmul(&x);
    let x3 = x2.matmul(&x);
    if !x3.matmul(&x).is_zero() {
        return Err(FamilyError::NotUnipotent);
    }
    let log = x.sub(&x2.scale(&qf(1, 2))).add(&x3.scale(&qf(1, 3)));
    Ok(NilpotentOp::new(log)?)
}

/// `exp N = I + N + N²/2 + N³/6` for `N⁴ = 0`.
pub fn exp_nilpotent(n: &NilpotentOp) -> Matrix<Rational> {
    let m = n.matrix();
    let m2 = m.matmul(m);
    let m3 = m2.matmul(m);
    Matrix::identity(m.rows())
        .add(m)
        .add(&m2.scale(&qf(1, 2)))
        .add(&m3.scale(&qf(1, 6)))
}

/// Position of `v̄` relative to the cubic hypersurface `V(φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarietyPosition {
    /// `φ(v) ≠ 0`.
    Off,
    /// `φ(v) = 0` and `∇φ(v) ≠ 0`.
    Smooth,
    /// `φ(v) = 0` and `∇φ(v) = 0`.
    Singular,
}

pub fn variety_position(phi: &CubicForm, v: &[Rational]) -> VarietyPosition {
    if !phi.eval(v).is_zero() {
        VarietyPosition::Off
    } else if phi.grad_at(v).iter().all(Zero::is_zero) {
        VarietyPosition::Singular
    } else {
        VarietyPosition::Smooth
    }
}

/// Residuals of the closure equations `y₀²x₀ + φ(y) = 0`, `y₀xᵢ − φᵢ(y) = 0`
/// at a point with coordinates `(x₀,…,x_h, y₁,…,y_h, y₀)`.
pub fn closure_residual(phi: &CubicForm, point: &[Rational]) -> Result<Vec<Rational>, FamilyError> {
    let h = phi.h();
    let s = SympSpace::new(h);
    if point.len() != s.dim() {
        return Err(FamilyError::Dimension(format!(
            "point has {} coordinates, expected {}",
            point.len(),
            s.dim()
        )));
    }
    let y: Vec<Rational> = (1..=h).map(|i| point[s.f(i)].clone()).collect();
    let y0 = &point[s.f(0)];
    let x0 = &point[s.e(0)];
    let mut out = vec![y0 * y0 * x0 + phi.eval(&y)];
    for (i, g) in phi.grad_at(&y).into_iter().enumerate() {
        out.push(y0 * &point[s.e(i + 1)] - g);
    }
    Ok(out)
}

/// Which condition of the tube model to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TubeCondition {
    /// `B_w : W → W∨` invertible (needs `C(w,w,w) ≠ 0`).
    IV,
    /// `B_w : L → L*` invertible (needs `C(w,w,w) = 0`, `B(w,w) ≠ 0`).
    III,
}

/// A point `(t, v, ξ, s)` of the tube model.
#[derive(Clone, Debug, PartialEq)]
pub struct TubePoint {
    pub t: Rational,
    pub v: Vec<Rational>,
    pub xi: Vec<Rational>,
    pub s: Rational,
}

impl TubePoint {
    /// Flat coordinates in the order `(t, v, ξ, s)`.
    pub fn to_vec(&self) -> Vec<Rational> {
        let mut out = vec![self.t.clone()];
        out.extend(self.v.iter().cloned());
        out.extend(self.xi.iter().cloned());
        out.push(self.s.clone());
        out
    }

    pub fn from_vec(h: usize, x: &[Rational]) -> Self {
        assert_eq!(x.len(), 2 * h + 2, "tube vector length");
        Self {
            t: x[0].clone(),
            v: x[1..=h].to_vec(),
            xi: x[h + 1..=2 * h].to_vec(),
            s: x[2 * h + 1].clone(),
        }
    }

    /// The same vector in the basis `e₀,…,f₀`: `s e₀ + Σ ξᵢeᵢ + Σ vᵢfᵢ + t f₀`.
    pub fn to_symp(&self) -> Vec<Rational> {
        let mut out = vec![self.s.clone()];
        out.extend(self.xi.iter().cloned());
        out.extend(self.v.iter().cloned());
        out.push(self.t.clone());
        out
    }
}

/// `V = ℂ ⊕ W ⊕ W∨ ⊕ ℂ` with a symmetric trilinear form `C` on `W`.
///
/// Coordinates are ordered `(t, v, ξ, s)`. The symplectic form is
/// `s₁t₂ − s₂t₁ + ⟨ξ₁,v₂⟩ − ⟨ξ₂,v₁⟩`, which matches the standard basis under
/// `t ↔ f₀`, `v ↔ fᵢ`, `ξ ↔ eᵢ`, `s ↔ e₀` (see [`TubePoint::to_symp`]).
#[derive(Clone, Debug, PartialEq)]
pub struct TubeModel {
    c: SymTensor3,
}

impl TubeModel {
    pub fn new(c: SymTensor3) -> Self {
        Self { c }
    }

    /// Tube model with `C = ∂³φ`.
    pub fn from_cubic(phi: &CubicForm) -> Self {
        Self::new(phi.tensor().clone())
    }

    pub fn h(&self) -> usize {
        self.c.h()
    }

    pub fn tensor(&self) -> &SymTensor3 {
        &self.c
    }

    pub fn dim(&self) -> usize {
        2 * self.h() + 2
    }

    /// `B(w₁, w₂) ∈ W∨` with `⟨B(w₁,w₂), w₃⟩ = C(w₁,w₂,w₃)`.
    pub fn b(&self, w1: &[Rational], w2: &[Rational]) -> Vec<Rational> {
        self.c.contract(w1).apply(w2)
    }

    /// `C(w, w, w)`.
    pub fn cubic(&self, w: &[Rational]) -> Rational {
        self.c.eval(w, w, w)
    }

    /// Matrix of `v ↦ B(w, v)`.
    pub fn b_matrix(&self, w: &[Rational]) -> Matrix<Rational> {
        self.c.contract(w)
    }

    /// Gram matrix of the tube symplectic form in `(t, v, ξ, s)` order.
    pub fn gram(&self) -> Matrix<Rational> {
        let h = self.h();
        let mut j = Matrix::zeros(self.dim(), self.dim());
        let (t, s) = (0, 2 * h + 1);
        j.set(s, t, q(1));
        j.set(t, s, q(-1));
        for k in 1..=h {
            j.set(h + k, k, q(1));
            j.set(k, h + k, q(-1));
        }
        j
    }

    /// Permutation `P` with `P · x_tube = x_symp`.
    pub fn to_symp_matrix(&self) -> Matrix<Rational> {
        let h = self.h();
        let n = self.dim();
        let mut p = Matrix::zeros(n, n);
        for k in 0..n {
            let mut x = vec![Rational::zero(); n];
            x[k] = q(1);
            let y = TubePoint::from_vec(h, &x).to_symp();
            let r = y.iter().position(|c| !c.is_zero()).expect("unit vector");
            p.set(r, k, q(1));
        }
        p
    }

    /// `N_w(t, v, ξ, s) = (0, tw, B(w,v), −⟨ξ,w⟩)`.
    pub fn nilpotent(&self, w: &[Rational]) -> Result<NilpotentOp, FamilyError> {
        let h = self.h();
        if w.len() != h {
            return Err(FamilyError::Dimension(format!("|w| = {} but h = {h}", w.len())));
        }
        let mut n = Matrix::zeros(self.dim(), self.dim());
        let bw = self.b_matrix(w);
        for k in 1..=h {
            n.set(k, 0, w[k - 1].clone());
            for j in 1..=h {
                n.set(h + k, j, bw.get(k - 1, j - 1).clone());
            }
            n.set(2 * h + 1, h + k, -w[k - 1].clone());
        }
        Ok(NilpotentOp::with_gram(n, &self.gram())?)
    }

    /// `exp(N_w)(1, 0, 0, 0)` by the truncated exponential.
    pub fn exp_orbit(&self, w: &[Rational]) -> Result<TubePoint, FamilyError> {
        let n = self.nilpotent(w)?;
        let mut base = vec![Rational::zero(); self.dim()];
        base[0] = q(1);
        Ok(TubePoint::from_vec(self.h(), &exp_nilpotent(&n).apply(&base)))
    }

    /// `(1, w, ½B(w,w), −⅙C(w,w,w))`.
    pub fn exp_orbit_closed(&self, w: &[Rational]) -> TubePoint {
        TubePoint {
            t: q(1),
            v: w.to_vec(),
            xi: self.b(w, w).iter().map(|x| x * qf(1, 2)).collect(),
            s: -(self.cubic(w) * qf(1, 6)),
        }
    }

    /// Tests Condition IV or III at `w`.
    pub fn condition_check(&self, w: &[Rational], which: TubeCondition) -> Result<bool, FamilyError> {
        let h = self.h();
        if w.len() != h {
            return Err(FamilyError::Dimension(format!("|w| = {} but h = {h}", w.len())));
        }
        let cw = self.cubic(w);
        let bww = self.b(w, w);
        match which {
            TubeCondition::IV => {
                if cw.is_zero() {
                    return Err(FamilyError::Precondition(
                        "Condition IV needs C(w,w,w) ≠ 0".into(),
                    ));
                }
                Ok(self.b_matrix(w).rank() == h)
            }
            TubeCondition::III => {
                if !cw.is_zero() {
                    return Err(FamilyError::Precondition(
                        "Condition III needs C(w,w,w) = 0".into(),
                    ));
                }
                if bww.iter().all(Zero::is_zero) {
                    return Err(FamilyError::Precondition(
                        "Condition III needs B(w,w) ≠ 0".into(),
                    ));
                }
                // L = {v : ⟨B(w,w), v⟩ = 0}, L* = {ξ : ⟨ξ, w⟩ = 0}.
                let l = Matrix::from_rows(vec![bww])?.kernel_basis();
                let bw = self.b_matrix(w);
                let images: Vec<Vec<Rational>> = l.iter().map(|x| bw.apply(x)).collect();
                let in_lstar = images
                    .iter()
                    .all(|xi| xi.iter().zip(w).map(|(a, b)| a * b).sum::<Rational>().is_zero());
                if !in_lstar {
                    return Err(FamilyError::Precondition(
                        "B_w does not map L into w⊥".into(),
                    ));
                }
                Ok(span_basis(&images, h).len() == h - 1)
            }
        }
    }
}

/// `N_w` of a tube model.
pub fn tube_nilpotent(m: &TubeModel, w: &[Rational]) -> Result<NilpotentOp, FamilyError> {
    m.nilpotent(w)
}

/// `exp(N_w)(1,0,0,0)`, checked against the closed form.
pub fn tube_exp_orbit(m: &TubeModel, w: &[Rational]) -> Result<TubePoint, FamilyError> {
    m.exp_orbit(w)
}

/// Condition IV or III of the tube model at `w`.
pub fn condition_check(m: &TubeModel, w: &[Rational], which: TubeCondition) -> Result<bool, FamilyError> {
    m.condition_check(w, which)
}

/// Quadrics `q_{a+1},…,q_h` in the free variables `z₁,…,z_a`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadricSystem {
    a: usize,
    quadrics: Vec<QPoly>,
}

#[derive(Serialize, Deserialize)]
struct QuadricJson {
    a: usize,
    quadrics: Vec<Vec<MonomialJson>>,
}

impl QuadricSystem {
    pub fn new(a: usize, quadrics: Vec<QPoly>) -> Result<Self, FamilyError> {
        let quadrics: Vec<QPoly> = quadrics.into_iter().map(|p| p.padded(a)).collect();
        if quadrics.iter().any(|p| p.nvars() != a || !p.is_homogeneous(2)) {
            return Err(FamilyError::NotHomogeneousQuadric(a));
        }
        Ok(Self { a, quadrics })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn h(&self) -> usize {
        self.a + self.quadrics.len()
    }

    pub fn quadrics(&self) -> &[QPoly] {
        &self.quadrics
    }

    /// Parses `{"a":1,"quadrics":[[{"exp":[2],"coeff":"1"}]]}`.
    pub fn from_json(v: &Value) -> Result<Self, FamilyError> {
        let j: QuadricJson =
            serde_json::from_value(v.clone()).map_err(|e| FamilyError::Json(e.to_string()))?;
        let mut qs = Vec::new();
        for monos in j.quadrics {
            let mut terms = Vec::new();
            for m in monos {
                if m.exp.len() != j.a {
                    return Err(FamilyError::Json("exponent length differs from a".into()));
                }
                terms.push((m.exp, parse_rational(&m.coeff)?));
            }
            qs.push(SparsePoly::from_terms(j.a, terms));
        }
        Self::new(j.a, qs)
    }
}

/// The degenerate family in the `ε/δ` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerateFamily {
    pub space: SympSpace,
    /// `ω = Σ q_kδ_k + Σ zᵢδᵢ + δ₀`.
    pub omega: Vec<QPoly>,
    /// `ωᵢ = ∂ω/∂zᵢ`, `1 ≤ i ≤ a`.
    pub omega_free: Vec<Vec<QPoly>>,
    /// `ω_k = ε_k + Σ (∂q_k/∂zᵢ)εᵢ + s_kε₀`, `a < k ≤ h`.
    pub omega_completion: Vec<Vec<QPoly>>,
}

impl DegenerateFamily {
    /// All vectors `ω, ω₁,…,ω_h`.
    pub fn all_vectors(&self) -> Vec<Vec<QPoly>> {
        let mut v = vec![self.omega.clone()];
        v.extend(self.omega_free.iter().cloned());
        v.extend(self.omega_completion.iter().cloned());
        v
    }
}

/// Builds `ω` and its isotropic completion for a quadric system.
pub fn degenerate_omega(sys: &QuadricSystem) -> DegenerateFamily {
    let (a, h) = (sys.a(), sys.h());
    let space = SympSpace::complex(h, a).expect("a ≤ h");
    let zero = QPoly::zero_in(a);
    let mut omega = vec![zero.clone(); space.dim()];
    omega[space.f(0)] = QPoly::one_in(a);
    for i in 1..=a {
        omega[space.f(i)] = SparsePoly::var(a, i - 1);
    }
    for (k, qk) in sys.quadrics().iter().enumerate() {
        omega[space.f(a + 1 + k)] = qk.clone();
    }
    let omega_free = (0..a)
        .map(|i| omega.iter().map(|p| p.derivative(i)).collect())
        .collect();
    let omega_completion = sys
        .quadrics()
        .iter()
        .enumerate()
        .map(|(k, qk)| {
            let mut v = vec![zero.clone(); space.dim()];
            v[space.e(a + 1 + k)] = QPoly::one_in(a);
            let mut sk = -qk.clone();
            for i in 0..a {
                let d = qk.derivative(i);
                sk = sk + SparsePoly::var(a, i) * d.clone();
                v[space.e(i + 1)] = d;
            }
            v[space.e(0)] = sk;
            v
        })
        .collect();
    DegenerateFamily {
        space,
        omega,
        omega_free,
        omega_completion,
    }
}

/// `Φ₀ = −2 Σ_k z_k q_k(z₁,…,z_a)` in all `h` variables.
pub fn degenerate_extend(sys: &QuadricSystem) -> CubicForm {
    let (a, h) = (sys.a(), sys.h());
    let lift = |p: &QPoly| -> QPoly {
        SparsePoly::from_terms(
            h,
            p.terms().map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(h, 0);
                (e2, c.clone())
            }),
        )
    };
    let mut phi = QPoly::zero_in(h);
    for (k, qk) in sys.quadrics().iter().enumerate() {
        phi = phi + SparsePoly::var(h, a + k) * lift(qk);
    }
    CubicForm::new(h, phi.scale(&q(-2))).expect("product of a linear and a quadratic form")
}

/// The family of a potential `Φ` in the `ε/δ` basis with `a` free slots:
/// `ω = Ψε₀ − Σ_{i≤a} Aᵢεᵢ − Σ_{k>a} A_kδ_k + Σ_{i≤a} zᵢδᵢ + Σ_{k>a} z_kε_k + δ₀`.
///
/// `Potential` uses `A_j = ½∂_jΦ`, `Ψ = Φ − ½Σ z_jΦ_j`; `Standard` uses
/// `A_j = ∂_jΦ`, `Ψ = −Φ` and needs a homogeneous cubic.
pub fn omega_degenerate_potential(
    h: usize,
    a: usize,
    potential: &QPoly,
    norm: Normalization,
) -> Result<PeriodMapSymbolic, FamilyError> {
    let phi = potential.padded(h);
    let space = SympSpace::complex(h, a)?;
    let grads: Vec<QPoly> = (0..h).map(|j| phi.derivative(j)).collect();
    let (amap, psi): (Vec<QPoly>, QPoly) = match norm {
        Normalization::Potential => {
            let half = qf(1, 2);
            let mut euler = QPoly::zero_in(h);
            for (j, g) in grads.iter().enumerate() {
                euler = euler + SparsePoly::var(h, j) * g.clone();
            }
            (
                grads.iter().map(|g| g.scale(&half)).collect(),
                phi.clone() - euler.scale(&half),
            )
        }
        Normalization::Standard => {
            if !phi.is_homogeneous(3) {
                return Err(FamilyError::NotHomogeneousCubic);
            }
            (grads.clone(), -phi.clone())
        }
    };
    let mut entries = vec![QPoly::zero_in(h); space.dim()];
    entries[space.e(0)] = psi;
    entries[space.f(0)] = QPoly::one_in(h);
    for j in 1..=h {
        let z = SparsePoly::var(h, j - 1);
        let aj = -amap[j - 1].clone();
        if j <= a {
            entries[space.e(j)] = aj;
            entries[space.f(j)] = z;
        } else {
            entries[space.f(j)] = aj;
            entries[space.e(j)] = z;
        }
    }
    PeriodMapSymbolic::new(space, h, entries, FamilyTag::ComplexDegen)
}

/// Sets `z_{a+1} = … = z_h = 0` and drops those variables.
pub fn restrict_to_free(p: &QPoly, a: usize) -> QPoly {
    SparsePoly::from_terms(
        a,
        p.terms()
            .filter(|(e, _)| e[a..].iter().all(|&k| k == 0))
            .map(|(e, c)| (e[..a].to_vec(), c.clone())),
    )
}

/// Checks that the extended family of `Φ₀` restricts to the degenerate family.
pub fn degenerate_restriction_holds(sys: &QuadricSystem) -> bool {
    let (a, h) = (sys.a(), sys.h());
    let phi0 = degenerate_extend(sys);
    let Ok(ext) = omega_degenerate_potential(h, a, phi0.poly(), Normalization::Potential) else {
        return false;
    };
    let fam = degenerate_omega(sys);
    ext.entries()
        .iter()
        .zip(&fam.omega)
        .all(|(p, target)| restrict_to_free(p, a) == *target)
}

/// Whether a space uses the complex Gram matrix.
pub fn is_complex(space: &SympSpace) -> bool {
    matches!(space.gram(), Gram::Complex { .. })
}
