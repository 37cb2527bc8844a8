//! Per-record processing and the JSON report lines.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use super::input::{Mode, PairInput};
use crate::canonical::{canonicalize_typed, CanonicalPair, CanonicalParams};
use crate::error::{ModuliError, Result};
use crate::oracle::{exact_classify, ExactMatrix};
use crate::pairs::{check_combination, classify_pair, commutator_norm, make_pair, CoarseCombo, CommutingPair};
use crate::sl2::{make_sl2, Mat2, SL2Matrix, Sign, SpectralType, ToleranceConfig};

/// A validated pair with its spectral types, plus the exact matrices in
/// rational mode.
pub struct Prepared {
    pub pair: CommutingPair,
    pub types: (SpectralType, SpectralType),
    pub exact: Option<(ExactMatrix, ExactMatrix)>,
}

fn exact_commute(u1: &ExactMatrix, u2: &ExactMatrix) -> bool {
    u1.mul(u2) == u2.mul(u1)
}

pub fn prepare(input: &PairInput, cfg: &ToleranceConfig) -> Result<Prepared> {
    match input {
        PairInput::Float(u1, u2) => {
            let pair = make_pair(to_sl2(u1, cfg)?, to_sl2(u2, cfg)?, cfg)?;
            let types = classify_pair(&pair, cfg)?;
            Ok(Prepared {
                pair,
                types,
                exact: None,
            })
        }
        PairInput::Rational(e1, e2) => {
            let t1 = exact_classify(e1)?;
            let t2 = exact_classify(e2)?;
            let m1 = SL2Matrix::from_mat_unchecked(e1.to_mat2());
            let m2 = SL2Matrix::from_mat_unchecked(e2.to_mat2());
            if !exact_commute(e1, e2) {
                return Err(ModuliError::NotCommuting {
                    norm: commutator_norm(&m1, &m2),
                });
            }
            check_combination(t1.tag(), t2.tag())?;
            Ok(Prepared {
                pair: CommutingPair::new_unchecked(m1, m2),
                types: (t1, t2),
                exact: Some((e1.clone(), e2.clone())),
            })
        }
    }
}

fn to_sl2(m: &Mat2, cfg: &ToleranceConfig) -> Result<SL2Matrix> {
    make_sl2(m.a, m.b, m.c, m.d, cfg)
}

pub fn canonical(prepared: &Prepared, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    canonicalize_typed(&prepared.pair, &prepared.types.0, &prepared.types.1, cfg)
}

fn sign_json(s: Sign) -> Value {
    json!(s.as_i8())
}

fn matrix_json(m: &Mat2) -> Value {
    json!([[m.a, m.b], [m.c, m.d]])
}

pub fn type_json(t: &SpectralType) -> Value {
    match *t {
        SpectralType::A { lambda, directions } => json!({"tag": "A", "lambda": lambda, "directions": directions}),
        SpectralType::B { eps } => json!({"tag": "B", "eps": sign_json(eps)}),
        SpectralType::C { eps, direction } => json!({"tag": "C", "eps": sign_json(eps), "direction": direction}),
        SpectralType::D { theta } => json!({"tag": "D", "theta": theta}),
    }
}

/// `"sector"` followed by the parameters as flat fields.
pub fn params_fields(params: &CanonicalParams, out: &mut Map<String, Value>) {
    out.insert("sector".into(), json!(params.sector().as_str()));
    for (name, s) in params.discrete() {
        out.insert(name.into(), sign_json(s));
    }
    for (name, x) in params.continuous() {
        out.insert(name.into(), json!(x));
    }
}

fn canonical_fields(c: &CanonicalPair, exact: Option<&(ExactMatrix, ExactMatrix)>, out: &mut Map<String, Value>) {
    params_fields(&c.params, out);
    out.insert("witness".into(), matrix_json(c.witness.mat()));
    let t = &c.trace;
    out.insert(
        "trace".into(),
        json!({
            "joint_eigendirections": t.joint_eigendirections,
            "c": t.c,
            "det_sprime_sign": t.det_sprime_sign.map(Sign::as_i8),
            "branch_notes": t.branch_notes,
        }),
    );
    if let Some((e1, e2)) = exact {
        out.insert("exact".into(), exact_canonical(&c.params, e1, e2));
    }
}

fn record_head(id: &str, mode: Mode) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("id".into(), json!(id));
    m.insert("mode".into(), json!(mode.as_str()));
    m
}

pub fn error_json(e: &ModuliError) -> Value {
    json!({"code": e.code(), "message": e.to_string()})
}

/// Report line of `classify`.
pub fn classify_line(id: &str, input: &PairInput, cfg: &ToleranceConfig) -> (Value, Option<ModuliError>) {
    let mut out = record_head(id, input.mode());
    match prepare(input, cfg) {
        Ok(p) => {
            out.insert("status".into(), json!("ok"));
            let combo = CoarseCombo {
                first: p.types.0.tag(),
                second: p.types.1.tag(),
            };
            out.insert("combo".into(), json!(combo.to_string()));
            out.insert("types".into(), json!([type_json(&p.types.0), type_json(&p.types.1)]));
            if let Some((e1, e2)) = &p.exact {
                out.insert(
                    "exact".into(),
                    json!({"traces": [e1.trace().to_string(), e2.trace().to_string()]}),
                );
            }
            (Value::Object(out), None)
        }
        Err(e) => failed(out, e),
    }
}

fn failed(mut out: Map<String, Value>, e: ModuliError) -> (Value, Option<ModuliError>) {
    out.insert("status".into(), json!("error"));
    out.insert("error".into(), error_json(&e));
    (Value::Object(out), Some(e))
}

/// Report line of `canon`.
pub fn canon_line(id: &str, input: &PairInput, cfg: &ToleranceConfig) -> (Value, Option<ModuliError>) {
    let out = record_head(id, input.mode());
    match prepare(input, cfg).and_then(|p| canonical(&p, cfg).map(|c| (p, c))) {
        Ok((p, c)) => {
            let mut out = out;
            out.insert("status".into(), json!("ok"));
            canonical_fields(&c, p.exact.as_ref(), &mut out);
            (Value::Object(out), None)
        }
        Err(e) => failed(out, e),
    }
}

/// Report line of `equiv`.
pub fn equiv_line(id: &str, left: &PairInput, right: &PairInput, cfg: &ToleranceConfig) -> (Value, Option<ModuliError>) {
    let mut out = Map::new();
    out.insert("id".into(), json!(id));
    let side = |input: &PairInput| prepare(input, cfg).and_then(|p| canonical(&p, cfg).map(|c| (p, c)));
    let (l, r) = match (side(left), side(right)) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) => {
            out.insert("side".into(), json!("left"));
            return failed(out, e);
        }
        (_, Err(e)) => {
            out.insert("side".into(), json!("right"));
            return failed(out, e);
        }
    };
    out.insert("status".into(), json!("ok"));
    let same = l.1.params.approx_eq(&r.1.params, cfg.param_tol);
    out.insert("verdict".into(), json!(if same { "EQUIVALENT" } else { "DISTINCT" }));
    for (name, (p, c), input) in [("left", &l, left), ("right", &r, right)] {
        let mut m = Map::new();
        m.insert("mode".into(), json!(input.mode().as_str()));
        canonical_fields(c, p.exact.as_ref(), &mut m);
        out.insert(name.into(), Value::Object(m));
    }
    (Value::Object(out), None)
}

/// Rational eigenvalues of a hyperbolic matrix, if `tr² − 4` is a square.
fn rational_eigenvalues(m: &ExactMatrix) -> Option<[BigRational; 2]> {
    let tr = m.trace();
    let four = BigRational::from_integer(BigInt::from(4));
    let disc = &tr * &tr - four;
    if !disc.is_positive() {
        return None;
    }
    let (n, d) = (disc.numer(), disc.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) != n || &(&rd * &rd) != d {
        return None;
    }
    let root = BigRational::new(rn, rd);
    let two = BigRational::from_integer(BigInt::from(2));
    Some([(&tr - &root) / &two, (&tr + &root) / &two])
}

/// The exact eigenvalue closest to the floating-point parameter `x`.
fn exact_match(m: &ExactMatrix, x: f64) -> Option<String> {
    rational_eigenvalues(m)?
        .into_iter()
        .find(|r| r.to_f64().is_some_and(|v| (v - x).abs() <= 1e-9 * x.abs().max(1.0)))
        .map(|r| r.to_string())
}

fn half_trace(m: &ExactMatrix) -> String {
    (m.trace() / BigRational::from_integer(BigInt::from(2))).to_string()
}

/// The nilpotent parts of a CC pair are proportional, `N₂ = c N₁`; the sign
/// of `det S′` is the sign of the upper-right entry of `N₁`, or of minus its
/// lower-left entry when that vanishes.
fn exact_cc(e1: &ExactMatrix, e2: &ExactMatrix, eps1: Sign, eps2: Sign) -> (BigRational, Sign) {
    let shift = |e: &ExactMatrix, s: Sign| {
        let k = BigRational::from_integer(BigInt::from(s.as_i8()));
        [&e.a - &k, e.b.clone(), e.c.clone(), &e.d - &k]
    };
    let n1 = shift(e1, eps1);
    let n2 = shift(e2, eps2);
    let k = n1.iter().position(|x| !x.is_zero()).expect("parabolic matrix has a nonzero nilpotent part");
    let c = &n2[k] / &n1[k];
    let det_sign = if !n1[1].is_zero() {
        Sign::of(n1[1].to_f64().unwrap_or(0.0))
    } else {
        Sign::of(-n1[2].to_f64().unwrap_or(0.0))
    };
    (c, det_sign)
}

fn exact_canonical(params: &CanonicalParams, e1: &ExactMatrix, e2: &ExactMatrix) -> Value {
    let mut m = Map::new();
    m.insert("traces".into(), json!([e1.trace().to_string(), e2.trace().to_string()]));
    use CanonicalParams::*;
    match *params {
        AA1 { lambda, mu } | AA2 { lambda, mu } => {
            m.insert("lambda".into(), json!(exact_match(e1, lambda)));
            m.insert("mu".into(), json!(exact_match(e2, mu)));
        }
        AB { lambda, .. } => {
            m.insert("lambda".into(), json!(exact_match(e1, lambda)));
        }
        BA { mu, .. } => {
            m.insert("mu".into(), json!(exact_match(e2, mu)));
        }
        BD { .. } => {
            m.insert("cos_phi".into(), json!(half_trace(e2)));
        }
        DB { .. } => {
            m.insert("cos_theta".into(), json!(half_trace(e1)));
        }
        DD { .. } => {
            m.insert("cos_theta".into(), json!(half_trace(e1)));
            m.insert("cos_phi".into(), json!(half_trace(e2)));
        }
        CC { eps1, eps2, .. } => {
            let (c, s) = exact_cc(e1, e2, eps1, eps2);
            m.insert("c".into(), json!(c.to_string()));
            m.insert("det_sprime_sign".into(), sign_json(s));
        }
        BB { .. } | BC { .. } | CB { .. } => {}
    }
    Value::Object(m)
}
