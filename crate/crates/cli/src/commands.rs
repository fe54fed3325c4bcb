//! Subcommand implementations. Each returns a JSON report and a pass flag.

use std::fs;
use std::path::Path;

use hodgecy::cubic_family::{
    check_transversality, exp_nilpotent, log_unipotent, omega_of, scaling_matrix,
    translation_matrix, yukawa, CubicForm, FamilyError, Normalization, TubeCondition, TubeModel,
};
use hodgecy::exactnum::{fmt_rational, parse_rational, parse_rational_list, q, Rational};
use hodgecy::hodge_riemann::{hr_first, in_period_domain, unit_ball_member, ComplexPoint, HrError};
use hodgecy::hodgestar::{algebra_type, HermitianDiagSpace, StarError};
use hodgecy::invariant_cubics::{
    cartan_cubic, dp_conic_pencils, dp_lines, restrict_cartan, su26_cubic, support_isomorphism,
    tritangent_triples, CubicModel, VarKind,
};
use hodgecy::lmhs::{weight_filtration, LmhsVerdict};
use hodgecy::rootdata::{domain_table, weight3_catalog, CatalogClass, CatalogRanges};
use hodgecy::sampling::Sampler;
use hodgecy::symplectic::SympSpace;
use num_traits::Zero;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::{Cli, Command, CubicsAction, FamilyAction, NormArg};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failed(String),
}

/// Command result: the report and whether every check passed.
pub struct Report {
    pub value: Value,
    pub passed: bool,
}

impl Report {
    fn pass(value: Value) -> Self {
        Self { value, passed: true }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_cubic(path: &Path) -> Result<CubicForm, CliError> {
    CubicForm::from_json(&read_json(path)?).map_err(input)
}

fn parse_vec(s: &str, h: usize, what: &str) -> Result<Vec<Rational>, CliError> {
    let v = parse_rational_list(s).map_err(input)?;
    if v.len() != h {
        return Err(CliError::Input(format!("{what} has {} entries, expected {h}", v.len())));
    }
    Ok(v)
}

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Classify { weight, table } => classify(*weight, *table),
        Command::Family {
            action,
            cubic,
            v,
            w,
            lambda,
            norm,
        } => {
            let phi = load_cubic(cubic)?;
            match action {
                FamilyAction::Check => family_check(&phi),
                FamilyAction::Yukawa => family_yukawa(&phi, *norm),
                FamilyAction::Symmetry => {
                    family_symmetry(&phi, v.as_deref(), w.as_deref(), lambda.as_deref(), cli.seed)
                }
            }
        }
        Command::Hr { cubic, point, ball } => {
            let z = ComplexPoint::from_json(&read_json(point)?).map_err(input)?;
            match (ball, cubic) {
                (true, _) => Ok(ball_membership(&z)),
                (false, Some(c)) => hr(&load_cubic(c)?, &z),
                (false, None) => Err(CliError::Input("--cubic or --ball is required".into())),
            }
        }
        Command::Lmhs { cubic, v } => {
            let phi = load_cubic(cubic)?;
            let v = parse_vec(v, phi.h(), "--v")?;
            lmhs(&phi, &v)
        }
        Command::Cubics {
            action,
            verify,
            samples,
        } => match action {
            CubicsAction::Cartan => cubics_cartan(*verify, *samples, cli.seed),
            CubicsAction::Su26 => cubics_su26(*verify, *samples, cli.seed),
            CubicsAction::Match => cubics_match(),
        },
        Command::Star { n, diag, e, height } => star(*n, diag, *e, *height),
    }
}

fn classify(weight: Option<u32>, table: bool) -> Result<Report, CliError> {
    let mut out = Map::new();
    let want_catalog = weight.is_some() || !table;
    if let Some(w) = weight {
        if w != 3 {
            return Err(CliError::Input(format!("only weight 3 is catalogued, got {w}")));
        }
    }
    if want_catalog {
        let cat = weight3_catalog(CatalogRanges::default()).map_err(|e| CliError::Failed(e.to_string()))?;
        out.insert("weight".into(), json!(3));
        for class in [
            CatalogClass::Primitive,
            CatalogClass::Reembedding,
            CatalogClass::Complex,
            CatalogClass::Reducible,
        ] {
            let rows: Vec<Value> = cat
                .iter()
                .filter(|e| e.class == class)
                .map(|e| e.to_json())
                .collect();
            out.insert(class.to_string(), Value::Array(rows));
        }
    }
    if table {
        let rows: Vec<Value> = domain_table().iter().map(|d| d.to_json()).collect();
        out.insert("domains".into(), Value::Array(rows));
    }
    Ok(Report::pass(Value::Object(out)))
}

fn family_check(phi: &CubicForm) -> Result<Report, CliError> {
    let a = check_transversality(&omega_of(phi, Normalization::Potential));
    let b = check_transversality(&omega_of(phi, Normalization::Standard));
    Ok(Report {
        value: json!({"transversal": a && b, "potential": a, "standard": b}),
        passed: a && b,
    })
}

fn norm_of(n: NormArg) -> (Normalization, &'static str) {
    match n {
        NormArg::Potential => (Normalization::Potential, "potential"),
        NormArg::Standard => (Normalization::Standard, "standard"),
    }
}

fn family_yukawa(phi: &CubicForm, norm: NormArg) -> Result<Report, CliError> {
    let (n, name) = norm_of(norm);
    match yukawa(phi, n) {
        Ok(t) => {
            let h = phi.h();
            let mut entries = Vec::new();
            for r in 0..h {
                for s in r..h {
                    for u in s..h {
                        let x = t.get(r, s, u);
                        if !x.is_zero() {
                            entries.push(json!({"index": [r + 1, s + 1, u + 1], "value": fmt_rational(x)}));
                        }
                    }
                }
            }
            Ok(Report::pass(json!({
                "normalization": name,
                "yukawa": entries,
                "matches_pairing": true,
            })))
        }
        Err(FamilyError::YukawaMismatch) => Ok(Report {
            value: json!({"normalization": name, "matches_pairing": false}),
            passed: false,
        }),
        Err(e) => Err(CliError::Failed(e.to_string())),
    }
}

fn family_symmetry(
    phi: &CubicForm,
    v: Option<&str>,
    w: Option<&str>,
    lambda: Option<&str>,
    seed: u64,
) -> Result<Report, CliError> {
    let h = phi.h();
    let mut rng = Sampler::new(seed);
    let v = match v {
        Some(s) => parse_vec(s, h, "--v")?,
        None => rng.rational_vec(h, 5),
    };
    let w = match w {
        Some(s) => parse_vec(s, h, "--w")?,
        None => rng.rational_vec(h, 5),
    };
    let lambda = match lambda {
        Some(s) => parse_rational(s).map_err(input)?,
        None => rng.nonzero_rational(5),
    };
    let failed = |e: FamilyError| CliError::Failed(e.to_string());
    let om = omega_of(phi, Normalization::Standard);
    let tv = translation_matrix(phi, &v).map_err(input)?;
    let tw = translation_matrix(phi, &w).map_err(input)?;
    let vw: Vec<Rational> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
    let tvw = translation_matrix(phi, &vw).map_err(failed)?;
    let s = scaling_matrix(&lambda, h).map_err(input)?;
    let space = SympSpace::new(h);
    let translation = om.transformed(&tv) == om.shifted(&v);
    let scaling = om.transformed(&s) == om.scaled(&lambda);
    let symplectic = space.is_symplectic_matrix(&tv).map_err(input)?
        && space.is_symplectic_matrix(&tw).map_err(input)?;
    let cube = &lambda * &lambda * &lambda;
    let conformal = space.conformal_factor(&s).map_err(input)? == Some(cube);
    let composition = tv.matmul(&tw) == tvw;
    let log_exp = exp_nilpotent(&log_unipotent(&tv).map_err(failed)?) == tv;
    let all = translation && scaling && symplectic && conformal && composition && log_exp;
    Ok(Report {
        value: json!({
            "v": fmt_vec(&v),
            "w": fmt_vec(&w),
            "lambda": fmt_rational(&lambda),
            "translation": translation,
            "scaling": scaling,
            "symplectic": symplectic,
            "scaling_conformal": conformal,
            "composition": composition,
            "log_exp": log_exp,
            "all": all,
        }),
        passed: all,
    })
}

fn hr(phi: &CubicForm, z: &ComplexPoint) -> Result<Report, CliError> {
    let verdict = in_period_domain(phi, z).map_err(|e| match e {
        HrError::Mismatch(m) => CliError::Failed(m),
        other => input(other),
    })?;
    let mut value = verdict.to_json();
    let pairing = hr_first(phi, z).map_err(|e| CliError::Failed(e.to_string()))?;
    value["pairing"] = json!(fmt_rational(&pairing));
    Ok(Report {
        value,
        passed: verdict.member(),
    })
}

fn ball_membership(z: &ComplexPoint) -> Report {
    let s: Rational = z.re.iter().zip(&z.im).map(|(a, b)| a * a + b * b).sum();
    let member = unit_ball_member(z);
    Report {
        value: json!({"norm_squared": fmt_rational(&s), "member": member}),
        passed: member,
    }
}

fn lmhs(phi: &CubicForm, v: &[Rational]) -> Result<Report, CliError> {
    let t = translation_matrix(phi, v).map_err(input)?;
    let n = log_unipotent(&t).map_err(|e| CliError::Failed(e.to_string()))?;
    let omega0 = omega_of(phi, Normalization::Standard).eval(&vec![q(0); phi.h()]);
    let verdict = LmhsVerdict::of(&n, Some(&omega0));
    if !weight_filtration(&n).verify(&n) {
        return Err(CliError::Failed("weight filtration fails its defining properties".into()));
    }
    let mut value = verdict.to_json();
    value["picard_lefschetz"] = json!(verdict.picard_lefschetz.unwrap_or(false));
    Ok(Report::pass(value))
}

fn condition_iv_samples(model: &CubicModel, samples: usize, seed: u64) -> Result<(usize, bool), CliError> {
    let phi = model.to_cubic_form().map_err(|e| CliError::Failed(e.to_string()))?;
    let tube = TubeModel::from_cubic(&phi);
    let mut rng = Sampler::new(seed);
    let mut ok = true;
    let mut done = 0;
    while done < samples {
        let w = rng.int_vec(model.nvars(), 2);
        if tube.cubic(&w).is_zero() {
            continue;
        }
        done += 1;
        ok &= tube
            .condition_check(&w, TubeCondition::IV)
            .map_err(|e| CliError::Failed(e.to_string()))?;
    }
    Ok((done, ok))
}

fn cubics_cartan(verify: bool, samples: usize, seed: u64) -> Result<Report, CliError> {
    let lines = dp_lines(6).map_err(input)?.len();
    let tritangents = tritangent_triples().len();
    let cartan = cartan_cubic();
    let restricted = restrict_cartan();
    let pattern = restricted.monomials().iter().all(|(idx, _)| {
        idx.iter()
            .filter(|&&v| restricted.kinds()[v] == VarKind::Line)
            .count()
            == 2
    });
    let mut value = json!({
        "lines": lines,
        "tritangents": tritangents,
        "regular": cartan.regularity(),
        "variables": cartan.nvars(),
        "monomials": cartan.monomials().len(),
        "restriction": {
            "monomials": restricted.monomials().len(),
            "lines": restricted.count_kind(VarKind::Line),
            "conics": restricted.count_kind(VarKind::Conic),
            "two_lines_one_conic": pattern,
        },
        "quartic_del_pezzo": {
            "lines": dp_lines(5).map_err(input)?.len(),
            "conic_pencils": dp_conic_pencils().len(),
        },
    });
    let mut passed = true;
    if verify {
        let (n, cond) = condition_iv_samples(&cartan, samples, seed)?;
        value["condition_iv"] = json!({"samples": n, "holds": cond});
        passed = lines == 27
            && tritangents == 45
            && cartan.regularity() == Some(5)
            && restricted.monomials().len() == 40
            && restricted.count_kind(VarKind::Line) == 16
            && restricted.count_kind(VarKind::Conic) == 10
            && pattern
            && cond;
        value["verified"] = json!(passed);
    }
    Ok(Report { value, passed })
}

fn cubics_su26(verify: bool, samples: usize, seed: u64) -> Result<Report, CliError> {
    let s = su26_cubic();
    let pfaffian = s
        .monomials()
        .iter()
        .filter(|(idx, _)| idx.iter().all(|&v| v >= 12))
        .count();
    let mixed = s.monomials().len() - pfaffian;
    let mut value = json!({
        "variables": s.nvars(),
        "monomials": s.monomials().len(),
        "mixed_terms": mixed,
        "pfaffian_terms": pfaffian,
        "regular": s.regularity(),
    });
    let mut passed = true;
    if verify {
        let (n, cond) = condition_iv_samples(&s, samples, seed)?;
        value["condition_iv"] = json!({"samples": n, "holds": cond});
        passed = s.nvars() == 27
            && s.monomials().len() == 45
            && mixed == 30
            && pfaffian == 15
            && s.regularity() == Some(5)
            && cond;
        value["verified"] = json!(passed);
    }
    Ok(Report { value, passed })
}

fn cubics_match() -> Result<Report, CliError> {
    let c = cartan_cubic();
    let s = su26_cubic();
    Ok(match support_isomorphism(&c, &s) {
        Some(map) => {
            let mut bij = Map::new();
            for (i, &j) in map.iter().enumerate() {
                bij.insert(c.labels()[i].clone(), json!(s.labels()[j]));
            }
            Report::pass(json!({"isomorphic": true, "bijection": bij}))
        }
        None => Report {
            value: json!({"isomorphic": false, "bijection": "none"}),
            passed: false,
        },
    })
}

fn star(n: usize, diag: &str, e: i64, height: i64) -> Result<Report, CliError> {
    let d = parse_rational_list(diag).map_err(input)?;
    let s = HermitianDiagSpace::new(n, d, e).map_err(input)?;
    let expected = s.expected_square();
    let (value_str, law) = match s.star_square() {
        Ok(c) => (fmt_rational(c.a()), true),
        Err(StarError::LawViolation { got, .. }) => (got, false),
        Err(StarError::NonScalar) => ("non-scalar".to_string(), false),
        Err(other) => return Err(CliError::Failed(other.to_string())),
    };
    let identity = s.defining_identity_holds();
    let algebra = algebra_type(&s, height);
    Ok(Report {
        value: json!({
            "star_square": value_str,
            "expected": fmt_rational(&expected),
            "law": law,
            "law_holds": law,
            "defining_identity": identity,
            "algebra": algebra.as_str(),
        }),
        passed: law && identity,
    })
}
