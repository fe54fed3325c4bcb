//! Hodge–Riemann positivity for cubic-potential families.
//!
//! For `ω(z) = −φe₀ + Σφᵢeᵢ + Σzᵢfᵢ + f₀` and `y = Im z` one has
//! `√−1⟨ω, ω̄⟩ = −8φ(y)`. A point lies in the period domain iff `φ(y) < 0`
//! and the Hessian `(φᵢⱼ(y))` has signature `(h−1, 1)`, equivalently iff the
//! Gram matrix `√−1⟨ψᵢ, ψ̄ⱼ⟩` of the `(2,1)`-vectors is negative definite.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cubic_family::{omega_of, CubicForm, Normalization, PeriodMapSymbolic};
use crate::exactnum::{
    fmt_rational, parse_rational, q, signature, ExactError, Field, Gaussian, Matrix, QuadScalar,
    Rational,
};
use crate::symplectic::SympError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HrError {
    #[error("point has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("φ(y) = 0: the (2,1)-vectors are undefined")]
    Degenerate,
    #[error("internal mismatch: {0}")]
    Mismatch(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Symp(#[from] SympError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// `z = re + √−1·im` with rational parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoint {
    pub re: Vec<Rational>,
    pub im: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    re: Vec<String>,
    im: Vec<String>,
}

impl ComplexPoint {
    pub fn new(re: Vec<Rational>, im: Vec<Rational>) -> Result<Self, HrError> {
        if re.len() != im.len() {
            return Err(HrError::Dimension {
                expected: re.len(),
                got: im.len(),
            });
        }
        Ok(Self { re, im })
    }

    /// Purely imaginary point `√−1·y`.
    pub fn imaginary(y: Vec<Rational>) -> Self {
        Self {
            re: vec![Rational::zero(); y.len()],
            im: y,
        }
    }

    pub fn len(&self) -> usize {
        self.re.len()
    }

    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    pub fn coords(&self) -> Vec<Gaussian> {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(a, b)| Gaussian::gaussian(a.clone(), b.clone()))
            .collect()
    }

    /// Parses `{"re":["0","0"],"im":["1","1"]}`.
    pub fn from_json(v: &Value) -> Result<Self, HrError> {
        let p: PointJson =
            serde_json::from_value(v.clone()).map_err(|e| HrError::Json(e.to_string()))?;
        let parse = |xs: &[String]| -> Result<Vec<Rational>, HrError> {
            xs.iter()
                .map(|s| parse_rational(s).map_err(HrError::from))
                .collect()
        };
        Self::new(parse(&p.re)?, parse(&p.im)?)
    }

    pub fn to_json(&self) -> Value {
        let p = PointJson {
            re: self.re.iter().map(fmt_rational).collect(),
            im: self.im.iter().map(fmt_rational).collect(),
        };
        serde_json::to_value(p).expect("serializable")
    }
}

fn check_len(phi: &CubicForm, z: &ComplexPoint) -> Result<(), HrError> {
    if z.len() != phi.h() {
        return Err(HrError::Dimension {
            expected: phi.h(),
            got: z.len(),
        });
    }
    Ok(())
}

type QuadQ = QuadScalar<Rational>;

fn eval_vec(v: &[crate::cubic_family::QPoly], z: &[QuadQ]) -> Vec<QuadQ> {
    v.iter()
        .map(|p| p.eval_with(z, QuadQ::from_rational))
        .collect()
}

fn conj_vec(v: &[QuadQ]) -> Vec<QuadQ> {
    v.iter().map(Field::conj).collect()
}

fn sqrt_minus_one() -> Gaussian {
    Gaussian::gaussian(q(0), q(1))
}

fn real_part(x: &Gaussian, what: &str) -> Result<Rational, HrError> {
    if !x.im_coeff().is_zero() {
        return Err(HrError::Mismatch(format!("{what} is not real")));
    }
    Ok(x.re().clone())
}

/// `√−1⟨ω, ω̄⟩`, computed by direct pairing and checked against `−8φ(y)`.
pub fn hr_first(phi: &CubicForm, z: &ComplexPoint) -> Result<Rational, HrError> {
    check_len(phi, z)?;
    let omega = omega_of(phi, Normalization::Standard);
    let w = eval_vec(omega.entries(), &z.coords());
    let direct = sqrt_minus_one() * omega.space().pair(&w, &conj_vec(&w))?;
    let direct = real_part(&direct, "√−1⟨ω, ω̄⟩")?;
    let closed = phi.eval(&z.im) * q(-8);
    if direct != closed {
        return Err(HrError::Mismatch(format!(
            "direct pairing {direct} differs from −8φ(y) = {closed}"
        )));
    }
    Ok(closed)
}

/// `ψᵢ = ∂ᵢω + aᵢω` with `aᵢ = −⟨∂ᵢω, ω̄⟩ / ⟨ω, ω̄⟩`, spanning `V^{2,1}` at `z`.
///
/// Works over any imaginary quadratic field carried by `z`.
pub fn v21_basis(omega: &PeriodMapSymbolic, z: &[QuadQ]) -> Result<Vec<Vec<QuadQ>>, HrError> {
    if z.len() != omega.nvars() {
        return Err(HrError::Dimension {
            expected: omega.nvars(),
            got: z.len(),
        });
    }
    let s = omega.space();
    let w = eval_vec(omega.entries(), z);
    let wbar = conj_vec(&w);
    let norm = s.pair(&w, &wbar)?;
    let inv = norm.inv().ok_or(HrError::Degenerate)?;
    (0..omega.nvars())
        .map(|i| {
            let wi = eval_vec(&omega.partial(i), z);
            let a = -(s.pair(&wi, &wbar)? * inv.clone());
            Ok(wi
                .into_iter()
                .zip(&w)
                .map(|(x, y)| x + a.clone() * y.clone())
                .collect())
        })
        .collect()
}

/// `H = (√−1⟨ψᵢ, ψ̄ⱼ⟩)`, computed by direct pairing and checked against
/// `−(2/φ)(−φᵢφⱼ + φφᵢⱼ)` at `y`.
pub fn hr_psi_gram(phi: &CubicForm, z: &ComplexPoint) -> Result<Matrix<Rational>, HrError> {
    check_len(phi, z)?;
    let y = &z.im;
    let f = phi.eval(y);
    if f.is_zero() {
        return Err(HrError::Degenerate);
    }
    let omega = omega_of(phi, Normalization::Standard);
    let psi = v21_basis(&omega, &z.coords())?;
    let h = phi.h();
    let closed = psi_gram_closed(phi, y)?;
    let mut direct = Matrix::zeros(h, h);
    for i in 0..h {
        for j in 0..h {
            let v = sqrt_minus_one() * omega.space().pair(&psi[i], &conj_vec(&psi[j]))?;
            direct.set(i, j, real_part(&v, "ψ-Gram entry")?);
        }
    }
    if direct != closed {
        return Err(HrError::Mismatch("ψ-Gram differs from its closed form".into()));
    }
    Ok(direct)
}

/// `−(2/φ)(−φᵢφⱼ + φφᵢⱼ)` at a real point with `φ(y) ≠ 0`.
pub fn psi_gram_closed(phi: &CubicForm, y: &[Rational]) -> Result<Matrix<Rational>, HrError> {
    let f = phi.eval(y);
    if f.is_zero() {
        return Err(HrError::Degenerate);
    }
    let m = proof_matrix(phi, y);
    Ok(m.scale(&(q(-2) / f)))
}

/// `(−φᵢφⱼ + φφᵢⱼ)(y)`.
pub fn proof_matrix(phi: &CubicForm, y: &[Rational]) -> Matrix<Rational> {
    let h = phi.h();
    let f = phi.eval(y);
    let g = phi.grad_at(y);
    let hess = phi.hessian_at(y);
    let mut m = Matrix::zeros(h, h);
    for i in 0..h {
        for j in 0..h {
            m.set(i, j, &f * hess.get(i, j) - &g[i] * &g[j]);
        }
    }
    m
}

/// Outcome of the period-domain test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HrStatus {
    /// Inside the open region.
    Member,
    /// `φ(y) ≠ 0`, nondegenerate Hessian, criterion fails.
    Outside,
    /// `φ(y) = 0` or the Hessian is degenerate.
    Boundary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HrVerdict {
    pub status: HrStatus,
    pub phi_y: Rational,
    /// `(n_pos, n_neg, n_zero)` of the Hessian at `y`.
    pub hessian_signature: (usize, usize, usize),
}

impl HrVerdict {
    pub fn member(&self) -> bool {
        self.status == HrStatus::Member
    }

    pub fn to_json(&self) -> Value {
        let status = match self.status {
            HrStatus::Member => "member",
            HrStatus::Outside => "outside",
            HrStatus::Boundary => "boundary",
        };
        serde_json::json!({
            "phi_y": fmt_rational(&self.phi_y),
            "hessian_signature": [self.hessian_signature.0, self.hessian_signature.1],
            "member": self.member(),
            "status": status,
        })
    }
}

/// `φ(y) < 0` and Hessian signature `(h−1, 1)`.
pub fn theorem_criterion(phi: &CubicForm, y: &[Rational]) -> bool {
    let h = phi.h();
    let sig = signature(&phi.hessian_at(y)).expect("Hessian is symmetric");
    h >= 1 && phi.eval(y).is_negative() && sig == (h - 1, 1, 0)
}

/// The ψ-Gram matrix is negative definite (false when `φ(y) = 0`).
pub fn proof_criterion(phi: &CubicForm, y: &[Rational]) -> bool {
    match psi_gram_closed(phi, y) {
        Ok(g) => {
            let h = phi.h();
            signature(&g).expect("symmetric") == (0, h, 0)
        }
        Err(_) => false,
    }
}

/// Period-domain membership, cross-checked against the ψ-Gram criterion.
pub fn in_period_domain(phi: &CubicForm, z: &ComplexPoint) -> Result<HrVerdict, HrError> {
    check_len(phi, z)?;
    let y = &z.im;
    let phi_y = phi.eval(y);
    let sig = signature(&phi.hessian_at(y))?;
    let theorem = theorem_criterion(phi, y);
    if !phi_y.is_zero() {
        let gram = hr_psi_gram(phi, z)?;
        let proof = signature(&gram)? == (0, phi.h(), 0);
        if proof != theorem {
            return Err(HrError::Mismatch(
                "Hessian criterion and ψ-Gram criterion disagree".into(),
            ));
        }
    }
    let status = if theorem {
        HrStatus::Member
    } else if phi_y.is_zero() || sig.2 > 0 {
        HrStatus::Boundary
    } else {
        HrStatus::Outside
    };
    Ok(HrVerdict {
        status,
        phi_y,
        hessian_signature: sig,
    })
}

/// `Σ|zᵢ|² < 1`.
pub fn unit_ball_member(z: &ComplexPoint) -> bool {
    let s: Rational = z
        .re
        .iter()
        .zip(&z.im)
        .map(|(a, b)| a * a + b * b)
        .sum();
    s < Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::poly::rational_poly;
    use crate::exactnum::qf;

    fn diag3() -> CubicForm {
        CubicForm::new(3, rational_poly(3, &[(&[1, 1, 1], -1)])).unwrap()
    }

    fn cube(c: i64) -> CubicForm {
        CubicForm::new(1, rational_poly(1, &[(&[3], c)])).unwrap()
    }

    fn ipt(y: &[i64]) -> ComplexPoint {
        ComplexPoint::imaginary(y.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn first_relation() {
        assert_eq!(hr_first(&diag3(), &ipt(&[1, 1, 1])).unwrap(), q(8));
        let real = ComplexPoint::new(vec![q(1), q(2), q(3)], vec![q(0); 3]).unwrap();
        assert_eq!(hr_first(&diag3(), &real).unwrap(), q(0));
        assert_eq!(hr_first(&cube(-1), &ipt(&[1])).unwrap(), q(8));
    }

    #[test]
    fn psi_gram_examples() {
        let g = hr_psi_gram(&diag3(), &ipt(&[1, 1, 1])).unwrap();
        assert_eq!(signature(&g).unwrap(), (0, 3, 0));
        let g1 = hr_psi_gram(&cube(-1), &ipt(&[1])).unwrap();
        assert!(g1.get(0, 0).is_negative());
        let shifted = ComplexPoint::new(vec![q(5), qf(-1, 2), q(3)], vec![q(1); 3]).unwrap();
        assert_eq!(hr_psi_gram(&diag3(), &shifted).unwrap(), g);
        assert_eq!(
            hr_psi_gram(&diag3(), &ipt(&[1, 0, 1])),
            Err(HrError::Degenerate)
        );
    }

    #[test]
    fn membership_examples() {
        let v = in_period_domain(&diag3(), &ipt(&[1, 1, 1])).unwrap();
        assert!(v.member());
        assert_eq!(v.phi_y, q(-1));
        assert_eq!(v.hessian_signature, (2, 1, 0));
        let v = in_period_domain(&diag3(), &ipt(&[-1, -1, -1])).unwrap();
        assert!(!v.member());
        assert_eq!(v.status, HrStatus::Outside);
        assert!(in_period_domain(&cube(-1), &ipt(&[1])).unwrap().member());
        assert_eq!(
            in_period_domain(&diag3(), &ipt(&[1, 0, 0])).unwrap().status,
            HrStatus::Boundary
        );
    }

    #[test]
    fn positive_phi_with_negative_proof_matrix() {
        // φ = z³ at y = 1: (−φ'² + φφ'') = −3 < 0 while φ(y) > 0.
        let phi = cube(1);
        assert!(proof_matrix(&phi, &[q(1)]).get(0, 0).is_negative());
        assert!(!theorem_criterion(&phi, &[q(1)]));
        assert!(!proof_criterion(&phi, &[q(1)]));
    }

    #[test]
    fn unit_ball() {
        assert!(unit_ball_member(&ipt(&[0, 0])));
        let edge = ComplexPoint::new(vec![q(1), q(0)], vec![q(0), q(0)]).unwrap();
        assert!(!unit_ball_member(&edge));
        let half = ComplexPoint::new(vec![qf(1, 2), qf(1, 2)], vec![q(0), q(0)]).unwrap();
        assert!(unit_ball_member(&half));
    }

    #[test]
    fn point_json() {
        let v = serde_json::json!({"re":["0","0","0"],"im":["1","1","1"]});
        let p = ComplexPoint::from_json(&v).unwrap();
        assert_eq!(p, ipt(&[1, 1, 1]));
        assert_eq!(p.to_json(), v);
        assert!(ComplexPoint::from_json(&serde_json::json!({"re":["0"],"im":[]})).is_err());
    }
}
