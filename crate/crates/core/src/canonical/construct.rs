//! Case-by-case construction of canonical forms and their witnesses.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{CanonTrace, CanonicalPair, CanonicalParams};
use crate::error::{ModuliError, Result};
use crate::pairs::{check_combination, classify_pair, CommutingPair};
use crate::sl2::{
    canonical_direction, near_excluded_angle, normalize_angle, Mat2, SL2Matrix, Sign, SpectralTag, SpectralType,
    ToleranceConfig, Vec2,
};

/// Puts a commuting pair into its unique canonical form.
pub fn canonicalize(p: &CommutingPair, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    let (t1, t2) = classify_pair(p, cfg)?;
    canonicalize_typed(p, &t1, &t2, cfg)
}

/// Canonicalization with the spectral types supplied by the caller, e.g.
/// from exact rational classification.
pub fn canonicalize_typed(
    p: &CommutingPair,
    t1: &SpectralType,
    t2: &SpectralType,
    cfg: &ToleranceConfig,
) -> Result<CanonicalPair> {
    let mut notes = Vec::new();
    let t1 = snap_boundary_angle(*t1, cfg, "U1", &mut notes);
    let t2 = snap_boundary_angle(*t2, cfg, "U2", &mut notes);
    check_combination(t1.tag(), t2.tag())?;

    use SpectralTag::*;
    let mut result = match (t1.tag(), t2.tag()) {
        (A, A) => aa(p, &t1),
        (A, B) | (B, A) | (B, B) => scalar_partner(p, &t1, &t2),
        (B, C) | (C, B) => bc_cb(p, &t1, &t2),
        (B, D) | (D, B) => bd_db(p, &t1, &t2),
        (C, C) => cc(p, &t1, &t2, cfg),
        (D, D) => dd(p, &t1, cfg),
        (x, y) => Err(ModuliError::ForbiddenCombo(x, y)),
    }?;
    notes.append(&mut result.trace.branch_notes);
    result.trace.branch_notes = notes;
    Ok(result)
}

/// Elliptic angles within `class_tol` of 0 or π are treated as ±I.
fn snap_boundary_angle(t: SpectralType, cfg: &ToleranceConfig, which: &str, notes: &mut Vec<String>) -> SpectralType {
    match t {
        SpectralType::D { theta } if near_excluded_angle(theta, cfg.class_tol) => {
            notes.push(format!("{which}: boundary angle {theta} reclassified as B"));
            SpectralType::B {
                eps: Sign::of(theta.cos()),
            }
        }
        other => other,
    }
}

fn typed_for(
    p: &CommutingPair,
    cfg: &ToleranceConfig,
    expected: &'static str,
    accept: impl Fn(SpectralTag, SpectralTag) -> bool,
) -> Result<(SpectralType, SpectralType)> {
    let (t1, t2) = classify_pair(p, cfg)?;
    if accept(t1.tag(), t2.tag()) {
        Ok((t1, t2))
    } else {
        Err(ModuliError::WrongCombo {
            expected,
            found: (t1.tag(), t2.tag()),
        })
    }
}

/// Combination (A,A): simultaneous diagonalization.
pub fn canon_aa(p: &CommutingPair, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    let (t1, _) = typed_for(p, cfg, "(A,A)", |a, b| (a, b) == (SpectralTag::A, SpectralTag::A))?;
    aa(p, &t1)
}

/// Combinations (A,B), (B,A), (B,B): the scalar member is untouched.
pub fn canon_scalar_partner(p: &CommutingPair, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    use SpectralTag::*;
    let (t1, t2) = typed_for(p, cfg, "(A,B), (B,A) or (B,B)", |a, b| {
        matches!((a, b), (A, B) | (B, A) | (B, B))
    })?;
    scalar_partner(p, &t1, &t2)
}

/// Combinations (B,C), (C,B): Jordan form of the parabolic member.
pub fn canon_bc_cb(p: &CommutingPair, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    use SpectralTag::*;
    let (t1, t2) = typed_for(p, cfg, "(B,C) or (C,B)", |a, b| matches!((a, b), (B, C) | (C, B)))?;
    bc_cb(p, &t1, &t2)
}

/// Combinations (B,D), (D,B): rotation form of the elliptic member.
pub fn canon_bd_db(p: &CommutingPair, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    use SpectralTag::*;
    let (t1, t2) = typed_for(p, cfg, "(B,D) or (D,B)", |a, b| matches!((a, b), (B, D) | (D, B)))?;
    bd_db(p, &t1, &t2)
}

/// Combination (C,C).
pub fn canon_cc(p: &CommutingPair, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    let (t1, t2) = typed_for(p, cfg, "(C,C)", |a, b| (a, b) == (SpectralTag::C, SpectralTag::C))?;
    cc(p, &t1, &t2, cfg)
}

/// Combination (D,D).
pub fn canon_dd(p: &CommutingPair, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    let (t1, _) = typed_for(p, cfg, "(D,D)", |a, b| (a, b) == (SpectralTag::D, SpectralTag::D))?;
    dd(p, &t1, cfg)
}

/// A unit-determinant basis together with what was learned building it.
struct Frame {
    s: Mat2,
    det_sprime: f64,
    directions: Vec<Vec2>,
    notes: Vec<String>,
}

impl Frame {
    fn witness(&self) -> SL2Matrix {
        SL2Matrix::from_mat_unchecked(self.s)
    }

    fn into_canonical(self, params: CanonicalParams, c: Option<f64>) -> CanonicalPair {
        CanonicalPair {
            params,
            witness: SL2Matrix::from_mat_unchecked(self.s),
            trace: CanonTrace {
                joint_eigendirections: self.directions,
                c,
                det_sprime_sign: Some(Sign::of(self.det_sprime)),
                branch_notes: self.notes,
            },
        }
    }
}

/// Diagonalizing frame of a hyperbolic matrix with `|λ| < 1` in the first slot.
fn hyperbolic_frame(u: &Mat2, directions: [Vec2; 2]) -> Frame {
    let [small, big] = directions;
    // Columns ordered to stay close to the coordinate axes; the quarter turn
    // below fixes the eigenvalue order afterwards.
    let (first, second) = if big[0].abs() > small[0].abs() {
        (big, small)
    } else {
        (small, big)
    };
    let sprime = Mat2::from_columns(first, second);
    let det = sprime.det();
    let mut s = Mat2::from_columns([first[0] / det, first[1] / det], second);
    let mut notes = vec!["S' from eigenvectors, first column rescaled by 1/det S'".to_string()];
    if u.conjugate_by(&s).a.abs() > 1.0 {
        s = s.mul(&Mat2::QUARTER_TURN);
        notes.push("post-conjugated by [[0,-1],[1,0]]".to_string());
    }
    Frame {
        s,
        det_sprime: det,
        directions: vec![first, second],
        notes,
    }
}

fn hyperbolic_directions(t: &SpectralType) -> [Vec2; 2] {
    match t {
        SpectralType::A { directions, .. } => *directions,
        _ => unreachable!("hyperbolic member expected"),
    }
}

fn eps_of(t: &SpectralType) -> Sign {
    t.eps().expect("B or C member expected")
}

fn aa(p: &CommutingPair, t1: &SpectralType) -> Result<CanonicalPair> {
    let mut frame = hyperbolic_frame(p.first().mat(), hyperbolic_directions(t1));
    let m1 = p.first().conjugate_by(&frame.witness());
    let m2 = p.second().conjugate_by(&frame.witness());
    let lambda = m1.a();
    let mu_first = m2.a();
    let params = if mu_first.abs() < 1.0 {
        frame.notes.push("U2 first diagonal entry has modulus < 1: AA1".to_string());
        CanonicalParams::AA1 { lambda, mu: mu_first }
    } else {
        frame.notes.push("U2 first diagonal entry has modulus > 1: AA2".to_string());
        CanonicalParams::AA2 {
            lambda,
            mu: m2.d(),
        }
    };
    Ok(frame.into_canonical(params, None))
}

fn scalar_partner(p: &CommutingPair, t1: &SpectralType, t2: &SpectralType) -> Result<CanonicalPair> {
    Ok(match (t1, t2) {
        (SpectralType::A { directions, .. }, SpectralType::B { eps }) => {
            let frame = hyperbolic_frame(p.first().mat(), *directions);
            let lambda = p.first().conjugate_by(&frame.witness()).a();
            frame.into_canonical(CanonicalParams::AB { lambda, eps2: *eps }, None)
        }
        (SpectralType::B { eps }, SpectralType::A { directions, .. }) => {
            let frame = hyperbolic_frame(p.second().mat(), *directions);
            let mu = p.second().conjugate_by(&frame.witness()).a();
            frame.into_canonical(CanonicalParams::BA { eps1: *eps, mu }, None)
        }
        (SpectralType::B { eps: e1 }, SpectralType::B { eps: e2 }) => CanonicalPair {
            params: CanonicalParams::BB { eps1: *e1, eps2: *e2 },
            witness: SL2Matrix::identity(),
            trace: CanonTrace {
                branch_notes: vec!["both scalar, no conjugation".to_string()],
                ..CanonTrace::default()
            },
        },
        _ => unreachable!("dispatch guarantees a scalar partner"),
    })
}

/// Jordan basis `[N v₂, v₂]` of a parabolic matrix, `N = U − εI`, with `v₂`
/// the coordinate vector whose image under `N` is largest.
fn jordan_basis(u: &Mat2, eps: Sign) -> (Vec2, Vec2) {
    let n = u.sub(&Mat2::scalar(eps.value()));
    let c0 = n.column(0);
    let c1 = n.column(1);
    if c0[0].hypot(c0[1]) > c1[0].hypot(c1[1]) {
        (c0, [1.0, 0.0])
    } else {
        (c1, [0.0, 1.0])
    }
}

/// Frame bringing a parabolic matrix to `[[ε, ±1], [0, ε]]`; the returned
/// sign is the off-diagonal entry reached.
fn parabolic_frame(u: &Mat2, eps: Sign) -> (Frame, Sign) {
    let (v1, v2) = jordan_basis(u, eps);
    let sprime = Mat2::from_columns(v1, v2);
    let det = sprime.det();
    let (s, off, note) = if det > 0.0 {
        (sprime.scale(1.0 / det.sqrt()), Sign::Plus, "det S' > 0: S = S'/sqrt(det S')")
    } else {
        (
            sprime.mul(&Mat2::new(-1.0, 0.0, 0.0, 1.0)).scale(1.0 / (-det).sqrt()),
            Sign::Minus,
            "det S' < 0: S = S' diag(-1,1)/sqrt(-det S'), alternative form",
        )
    };
    let frame = Frame {
        s,
        det_sprime: det,
        directions: vec![canonical_direction(v1)],
        notes: vec![note.to_string()],
    };
    (frame, off)
}

fn bc_cb(p: &CommutingPair, t1: &SpectralType, t2: &SpectralType) -> Result<CanonicalPair> {
    Ok(match (t1.tag(), t2.tag()) {
        (SpectralTag::B, SpectralTag::C) => {
            let (frame, eps4) = parabolic_frame(p.second().mat(), eps_of(t2));
            frame.into_canonical(
                CanonicalParams::BC {
                    eps1: eps_of(t1),
                    eps2: eps_of(t2),
                    eps4,
                },
                None,
            )
        }
        (SpectralTag::C, SpectralTag::B) => {
            let (frame, eps3) = parabolic_frame(p.first().mat(), eps_of(t1));
            frame.into_canonical(
                CanonicalParams::CB {
                    eps1: eps_of(t1),
                    eps2: eps_of(t2),
                    eps3,
                },
                None,
            )
        }
        _ => unreachable!("dispatch guarantees (B,C) or (C,B)"),
    })
}

/// Real rotation basis of an elliptic matrix, built from its complex
/// eigenvector `u` for `e^{iθ₀}`, `θ₀ ∈ (0, π)`.
struct RotationFrame {
    frame: Frame,
    angle: f64,
    eigenvector: [Complex64; 2],
}

fn elliptic_theta(t: &SpectralType) -> f64 {
    match t {
        SpectralType::D { theta } => *theta,
        _ => unreachable!("elliptic member expected"),
    }
}

/// Angle of a matrix that is a rotation up to rounding.
fn rotation_angle(m: &Mat2) -> f64 {
    normalize_angle((0.5 * (m.c - m.b)).atan2(0.5 * (m.a + m.d)))
}

fn rotation_frame(u: &Mat2, theta: f64) -> RotationFrame {
    let theta0 = if theta < PI { theta } else { 2.0 * PI - theta };
    let w = Complex64::from_polar(1.0, theta0);
    let cand1 = [Complex64::new(u.b, 0.0), w - u.a];
    let cand2 = [w - u.d, Complex64::new(u.c, 0.0)];
    let norm = |v: &[Complex64; 2]| (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let ev = if norm(&cand2) > norm(&cand1) * (1.0 + 1e-12) {
        cand2
    } else {
        cand1
    };
    // v₁ = u + ū and v₂ = −iu + iū, up to the common factor 2.
    let v1 = [ev[0].re, ev[1].re];
    let v2 = [ev[0].im, ev[1].im];
    let sprime = Mat2::from_columns(v1, v2);
    let det = sprime.det();
    let (s, note) = if det > 0.0 {
        (sprime.scale(1.0 / det.sqrt()), "det S' > 0: S = S'/sqrt(det S')")
    } else {
        (
            Mat2::from_columns([-v1[0], -v1[1]], v2).scale(1.0 / (-det).sqrt()),
            "det S' < 0: v1 -> -v1, angles reflected",
        )
    };
    let angle = rotation_angle(&u.conjugate_by(&s));
    RotationFrame {
        frame: Frame {
            s,
            det_sprime: det,
            directions: Vec::new(),
            notes: vec![note.to_string()],
        },
        angle,
        eigenvector: ev,
    }
}

fn bd_db(p: &CommutingPair, t1: &SpectralType, t2: &SpectralType) -> Result<CanonicalPair> {
    Ok(match (t1.tag(), t2.tag()) {
        (SpectralTag::B, SpectralTag::D) => {
            let rf = rotation_frame(p.second().mat(), elliptic_theta(t2));
            rf.frame.into_canonical(
                CanonicalParams::BD {
                    eps1: eps_of(t1),
                    phi: rf.angle,
                },
                None,
            )
        }
        (SpectralTag::D, SpectralTag::B) => {
            let rf = rotation_frame(p.first().mat(), elliptic_theta(t1));
            rf.frame.into_canonical(
                CanonicalParams::DB {
                    theta: rf.angle,
                    eps2: eps_of(t2),
                },
                None,
            )
        }
        _ => unreachable!("dispatch guarantees (B,D) or (D,B)"),
    })
}

fn cc(p: &CommutingPair, t1: &SpectralType, t2: &SpectralType, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    let eps1 = eps_of(t1);
    let eps2 = eps_of(t2);
    let (v1, v2) = jordan_basis(p.first().mat(), eps1);
    let det = Mat2::from_columns(v1, v2).det();

    let n2 = p.second().mat().sub(&Mat2::scalar(eps2.value()));
    let w = n2.apply(v2);
    let c = (w[0] * v1[0] + w[1] * v1[1]) / (v1[0] * v1[0] + v1[1] * v1[1]);
    if !(c.abs() > cfg.param_tol) {
        return Err(ModuliError::DegenerateCC { c });
    }

    let cos_alpha = Sign::of(det).value() / c.hypot(1.0);
    let sin_alpha = c * cos_alpha;
    let alpha = normalize_angle(sin_alpha.atan2(cos_alpha));

    let tilde = Mat2::from_columns([v1[0] / cos_alpha, v1[1] / cos_alpha], v2);
    let s = tilde
        .normalized_to_unit_det()
        .expect("rescaled Jordan basis has positive determinant");
    let frame = Frame {
        s,
        det_sprime: det,
        directions: vec![canonical_direction(v1)],
        notes: vec![
            "S' = [N1 v2', v2'] brings U1 to Jordan form".to_string(),
            "tan alpha = c, sgn cos alpha = sgn det S', v1 rescaled by 1/cos alpha".to_string(),
        ],
    };
    Ok(frame.into_canonical(CanonicalParams::CC { eps1, eps2, alpha }, Some(c)))
}

fn dd(p: &CommutingPair, t1: &SpectralType, cfg: &ToleranceConfig) -> Result<CanonicalPair> {
    let rf = rotation_frame(p.first().mat(), elliptic_theta(t1));

    // The complex eigenvector of U₁ must also be one of U₂.
    let u2 = p.second().mat();
    let ev = rf.eigenvector;
    let image = [u2.a * ev[0] + u2.b * ev[1], u2.c * ev[0] + u2.d * ev[1]];
    let ev_norm2 = ev[0].norm_sqr() + ev[1].norm_sqr();
    let rho = (ev[0].conj() * image[0] + ev[1].conj() * image[1]) / ev_norm2;
    let residual = ((image[0] - rho * ev[0]).norm_sqr() + (image[1] - rho * ev[1]).norm_sqr()).sqrt() / ev_norm2.sqrt();
    if residual > 10.0 * cfg.class_tol * u2.max_abs().max(1.0) {
        return Err(ModuliError::NotJointEigenvector { residual });
    }

    let phi = rotation_angle(&u2.conjugate_by(&rf.frame.s));
    let mut frame = rf.frame;
    frame
        .notes
        .insert(0, "joint complex eigenvector from U1, validated on U2".to_string());
    Ok(frame.into_canonical(
        CanonicalParams::DD {
            theta: rf.angle,
            phi,
        },
        None,
    ))
}
