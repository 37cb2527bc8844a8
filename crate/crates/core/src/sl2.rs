//! 2×2 real matrix arithmetic and the spectral classification of a single
//! SL(2,R) matrix into the four types A (hyperbolic), B (±I), C (parabolic
//! Jordan block) and D (elliptic).

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ModuliError, Result};

/// A real 2-vector.
pub type Vec2 = [f64; 2];

/// Tolerances for floating-point classification.
///
/// Determinant and commutator tests are relative: the slack is scaled by the
/// magnitude of the products involved, so conjugates with large entries are
/// not rejected for rounding noise alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub det_tol: f64,
    pub class_tol: f64,
    pub comm_tol: f64,
    pub param_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            det_tol: 1e-9,
            class_tol: 1e-9,
            comm_tol: 1e-9,
            param_tol: 1e-8,
        }
    }
}

impl ToleranceConfig {
    /// Returns `None` unless every tolerance is strictly positive and finite.
    pub fn new(det_tol: f64, class_tol: f64, comm_tol: f64, param_tol: f64) -> Option<Self> {
        let cfg = ToleranceConfig {
            det_tol,
            class_tol,
            comm_tol,
            param_tol,
        };
        cfg.is_valid().then_some(cfg)
    }

    pub fn is_valid(&self) -> bool {
        [self.det_tol, self.class_tol, self.comm_tol, self.param_tol]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0)
    }
}

/// Sign ±1, used for the discrete parameters ε of the canonical forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// Sign of `x`; zero counts as positive.
    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// General real 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2::new(1.0, 0.0, 0.0, 1.0);
    /// The quarter-turn `[[0, -1], [1, 0]]`.
    pub const QUARTER_TURN: Mat2 = Mat2::new(0.0, -1.0, 1.0, 0.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Mat2 {
        Mat2::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn from_columns(c1: Vec2, c2: Vec2) -> Mat2 {
        Mat2::new(c1[0], c2[0], c1[1], c2[1])
    }

    pub fn scalar(s: f64) -> Mat2 {
        Mat2::new(s, 0.0, 0.0, s)
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn column(&self, j: usize) -> Vec2 {
        match j {
            0 => [self.a, self.c],
            _ => [self.b, self.d],
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// Inverse via the adjugate; `None` for a singular matrix.
    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        Some(Mat2::new(self.d / det, -self.b / det, -self.c / det, self.a / det))
    }

    /// `S⁻¹ · self · S`. Panics if `s` is singular.
    pub fn conjugate_by(&self, s: &Mat2) -> Mat2 {
        let inv = s.inverse().expect("conjugating matrix must be invertible");
        inv.mul(self).mul(s)
    }

    pub fn max_abs(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn max_abs_diff(&self, o: &Mat2) -> f64 {
        self.sub(o).max_abs()
    }

    pub fn frobenius_dot(&self, o: &Mat2) -> f64 {
        self.a * o.a + self.b * o.b + self.c * o.c + self.d * o.d
    }

    /// Rescales to unit determinant; `None` unless `det > 0`.
    pub fn normalized_to_unit_det(&self) -> Option<Mat2> {
        let det = self.det();
        (det > 0.0 && det.is_finite()).then(|| self.scale(1.0 / det.sqrt()))
    }
}

/// A real 2×2 matrix with unit determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SL2Matrix(Mat2);

impl SL2Matrix {
    /// Checked constructor, see [`make_sl2`].
    pub fn new(a: f64, b: f64, c: f64, d: f64, cfg: &ToleranceConfig) -> Result<SL2Matrix> {
        make_sl2(a, b, c, d, cfg)
    }

    /// Wraps a matrix already known to lie in SL(2,R) up to rounding.
    pub(crate) fn from_mat_unchecked(m: Mat2) -> SL2Matrix {
        SL2Matrix(m)
    }

    pub fn from_mat(m: Mat2, cfg: &ToleranceConfig) -> Result<SL2Matrix> {
        make_sl2(m.a, m.b, m.c, m.d, cfg)
    }

    pub fn identity() -> SL2Matrix {
        SL2Matrix(Mat2::IDENTITY)
    }

    pub fn scalar(eps: Sign) -> SL2Matrix {
        SL2Matrix(Mat2::scalar(eps.value()))
    }

    /// `diag(λ, 1/λ)`; `λ` must be nonzero.
    pub fn diagonal(lambda: f64) -> SL2Matrix {
        SL2Matrix(Mat2::new(lambda, 0.0, 0.0, 1.0 / lambda))
    }

    /// `[[ε, x], [0, ε]]`.
    pub fn upper(eps: Sign, x: f64) -> SL2Matrix {
        SL2Matrix(Mat2::new(eps.value(), x, 0.0, eps.value()))
    }

    /// Rotation `[[cos θ, −sin θ], [sin θ, cos θ]]`.
    pub fn rotation(theta: f64) -> SL2Matrix {
        let (s, c) = theta.sin_cos();
        SL2Matrix(Mat2::new(c, -s, s, c))
    }

    /// The Iwasawa-style product `R(t) · diag(e^s, e^-s) · [[1, h], [0, 1]]`.
    pub fn iwasawa(t: f64, s: f64, h: f64) -> SL2Matrix {
        let r = SL2Matrix::rotation(t).0;
        let (es, ens) = (s.exp(), (-s).exp());
        let scaled = Mat2::new(r.a * es, r.b * ens, r.c * es, r.d * ens);
        SL2Matrix(scaled.mul(&Mat2::new(1.0, h, 0.0, 1.0)))
    }

    pub fn mat(&self) -> &Mat2 {
        &self.0
    }

    pub fn a(&self) -> f64 {
        self.0.a
    }
    pub fn b(&self) -> f64 {
        self.0.b
    }
    pub fn c(&self) -> f64 {
        self.0.c
    }
    pub fn d(&self) -> f64 {
        self.0.d
    }

    pub fn rows(&self) -> [[f64; 2]; 2] {
        self.0.rows()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn det(&self) -> f64 {
        self.0.det()
    }

    pub fn mul(&self, o: &SL2Matrix) -> SL2Matrix {
        SL2Matrix(self.0.mul(&o.0))
    }

    /// Exact inverse for unit determinant: the adjugate divided by the determinant.
    pub fn inverse(&self) -> SL2Matrix {
        SL2Matrix(self.0.inverse().expect("SL2 matrix is invertible"))
    }

    pub fn transpose(&self) -> SL2Matrix {
        SL2Matrix(self.0.transpose())
    }

    pub fn neg(&self) -> SL2Matrix {
        SL2Matrix(self.0.scale(-1.0))
    }

    /// `S⁻¹ · self · S`.
    pub fn conjugate_by(&self, s: &SL2Matrix) -> SL2Matrix {
        SL2Matrix(self.0.conjugate_by(&s.0))
    }

    pub fn max_abs_diff(&self, o: &SL2Matrix) -> f64 {
        self.0.max_abs_diff(&o.0)
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a(), self.b(), self.c(), self.d())
    }
}

/// Builds an SL(2,R) matrix, rejecting inputs whose determinant is not 1
/// within `det_tol` (relative to `|ad| + |bc|` when that exceeds 1).
/// Entries are stored as given.
pub fn make_sl2(a: f64, b: f64, c: f64, d: f64, cfg: &ToleranceConfig) -> Result<SL2Matrix> {
    let m = Mat2::new(a, b, c, d);
    let det = m.det();
    let scale = (a * d).abs() + (b * c).abs();
    if !det.is_finite() || (det - 1.0).abs() > cfg.det_tol * scale.max(1.0) {
        return Err(ModuliError::Determinant { det });
    }
    Ok(SL2Matrix(m))
}

/// Spectral type label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpectralTag {
    A,
    B,
    C,
    D,
}

impl SpectralTag {
    pub const ALL: [SpectralTag; 4] = [SpectralTag::A, SpectralTag::B, SpectralTag::C, SpectralTag::D];

    pub fn as_str(self) -> &'static str {
        match self {
            SpectralTag::A => "A",
            SpectralTag::B => "B",
            SpectralTag::C => "C",
            SpectralTag::D => "D",
        }
    }
}

impl fmt::Display for SpectralTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Spectral type of a single SL(2,R) matrix together with its spectral data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralType {
    /// Two real eigenvalues `λ`, `1/λ` with `0 < |λ| < 1`; `directions[0]`
    /// belongs to `λ`, `directions[1]` to `1/λ`.
    A { lambda: f64, directions: [Vec2; 2] },
    /// `U = ε I`.
    B { eps: Sign },
    /// Eigenvalue `ε` with a one-dimensional eigenspace spanned by `direction`.
    C { eps: Sign, direction: Vec2 },
    /// Eigenvalues `e^{±iθ}`, `θ ∈ (0, π) ∪ (π, 2π)`, oriented so that the
    /// matrix is SL(2,R)-conjugate to the rotation by `θ`.
    D { theta: f64 },
}

impl SpectralType {
    pub fn tag(&self) -> SpectralTag {
        match self {
            SpectralType::A { .. } => SpectralTag::A,
            SpectralType::B { .. } => SpectralTag::B,
            SpectralType::C { .. } => SpectralTag::C,
            SpectralType::D { .. } => SpectralTag::D,
        }
    }

    pub fn eps(&self) -> Option<Sign> {
        match self {
            SpectralType::B { eps } | SpectralType::C { eps, .. } => Some(*eps),
            _ => None,
        }
    }
}

/// Coarse trace class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceClass {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl TraceClass {
    /// The trace class a spectral tag belongs to.
    pub fn of_tag(tag: SpectralTag) -> TraceClass {
        match tag {
            SpectralTag::A => TraceClass::Hyperbolic,
            SpectralTag::B | SpectralTag::C => TraceClass::Parabolic,
            SpectralTag::D => TraceClass::Elliptic,
        }
    }
}

/// Coarse partition by `|tr U|` against 2, banded by `class_tol`.
pub fn trace_class(u: &SL2Matrix, cfg: &ToleranceConfig) -> TraceClass {
    let excess = u.trace().abs() - 2.0;
    if excess > cfg.class_tol {
        TraceClass::Hyperbolic
    } else if excess < -cfg.class_tol {
        TraceClass::Elliptic
    } else {
        TraceClass::Parabolic
    }
}

/// Distance (to first order) of `n` from the cone of nilpotent matrices,
/// measured on its traceless part.
pub(crate) fn nilpotent_defect(n: &Mat2) -> f64 {
    let h = 0.5 * (n.a - n.d);
    let g = h * h + n.b * n.c;
    let grad = (2.0 * h * h + n.b * n.b + n.c * n.c).sqrt();
    if grad == 0.0 {
        0.0
    } else {
        g.abs() / grad
    }
}

/// Classifies `u` into spectral type A, B, C or D.
///
/// Inside the parabolic band `||tr| − 2| ≤ class_tol`, `u` is B when
/// `u ∓ I` vanishes within `class_tol`, C when `u ∓ I` is within `class_tol`
/// of a nonzero nilpotent matrix, and ambiguous otherwise.
pub fn classify(u: &SL2Matrix, cfg: &ToleranceConfig) -> Result<SpectralType> {
    let m = u.mat();
    let tr = m.trace();
    match trace_class(u, cfg) {
        TraceClass::Hyperbolic => {
            let (lambda, big) = real_eigenvalues(tr);
            Ok(SpectralType::A {
                lambda,
                directions: [eigendirection(m, lambda), eigendirection(m, big)],
            })
        }
        TraceClass::Elliptic => Ok(SpectralType::D {
            theta: elliptic_angle(m),
        }),
        TraceClass::Parabolic => {
            let eps = Sign::of(tr);
            let n = m.sub(&Mat2::scalar(eps.value()));
            if n.max_abs() <= cfg.class_tol {
                return Ok(SpectralType::B { eps });
            }
            let defect = nilpotent_defect(&n);
            if defect <= cfg.class_tol {
                Ok(SpectralType::C {
                    eps,
                    direction: kernel_direction(&n),
                })
            } else {
                Err(ModuliError::ClassificationAmbiguous {
                    abs_trace: tr.abs(),
                    defect,
                })
            }
        }
    }
}

/// Returns `(λ, 1/λ)` with `|λ| < 1` for a hyperbolic trace.
fn real_eigenvalues(tr: f64) -> (f64, f64) {
    let disc = ((tr - 2.0) * (tr + 2.0)).max(0.0).sqrt();
    let big = 0.5 * (tr + tr.signum() * disc);
    (1.0 / big, big)
}

/// Angle in `(0, π) ∪ (π, 2π)` of an elliptic matrix: `cos θ = tr/2`, and
/// `sin θ` carries the sign of `c − b`, which is invariant under SL(2,R)
/// conjugation.
pub(crate) fn elliptic_angle(m: &Mat2) -> f64 {
    let tr = m.trace();
    let cos = 0.5 * tr;
    let sin_abs = 0.5 * ((2.0 - tr) * (2.0 + tr)).max(0.0).sqrt();
    let sin = if m.c - m.b < 0.0 { -sin_abs } else { sin_abs };
    normalize_angle(sin.atan2(cos))
}

/// Maps an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// True if `theta` is within `tol` of one of the excluded angles 0, π, 2π.
pub fn near_excluded_angle(theta: f64, tol: f64) -> bool {
    theta.abs() <= tol || (theta - PI).abs() <= tol || (theta - TAU).abs() <= tol
}

/// Deterministic sign convention for directions: first nonzero component positive.
pub(crate) fn canonical_direction(v: Vec2) -> Vec2 {
    let norm = v[0].hypot(v[1]);
    if norm == 0.0 {
        return [1.0, 0.0];
    }
    let mut u = [v[0] / norm, v[1] / norm];
    let tiny = 1e-14;
    if u[0] < -tiny || (u[0].abs() <= tiny && u[1] < 0.0) {
        u = [-u[0], -u[1]];
    }
    if u[0].abs() <= tiny {
        u[0] = 0.0;
    }
    if u[1].abs() <= tiny {
        u[1] = 0.0;
    }
    u
}

/// Eigendirection of `m` for the real eigenvalue `mu`.
pub(crate) fn eigendirection(m: &Mat2, mu: f64) -> Vec2 {
    let v1 = [m.b, mu - m.a];
    let v2 = [mu - m.d, m.c];
    let n1 = v1[0].hypot(v1[1]);
    let n2 = v2[0].hypot(v2[1]);
    canonical_direction(if n2 > n1 { v2 } else { v1 })
}

/// Unit vector spanning the kernel of a rank-one matrix `n`.
pub(crate) fn kernel_direction(n: &Mat2) -> Vec2 {
    let r1 = [n.b, -n.a];
    let r2 = [n.d, -n.c];
    let n1 = r1[0].hypot(r1[1]);
    let n2 = r2[0].hypot(r2[1]);
    canonical_direction(if n2 > n1 { r2 } else { r1 })
}

/// A real eigenvalue with a unit eigendirection. `full_plane` marks the
/// scalar case, where every vector is an eigenvector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub direction: Vec2,
    pub full_plane: bool,
}

/// Real eigenvalues and eigendirections of `u`, modulus-below-one eigenvalue first.
pub fn eigen_data(u: &SL2Matrix, cfg: &ToleranceConfig) -> Result<Vec<EigenPair>> {
    Ok(match classify(u, cfg)? {
        SpectralType::A { lambda, directions } => vec![
            EigenPair {
                value: lambda,
                direction: directions[0],
                full_plane: false,
            },
            EigenPair {
                value: 1.0 / lambda,
                direction: directions[1],
                full_plane: false,
            },
        ],
        SpectralType::B { eps } => vec![EigenPair {
            value: eps.value(),
            direction: [1.0, 0.0],
            full_plane: true,
        }],
        SpectralType::C { eps, direction } => vec![EigenPair {
            value: eps.value(),
            direction,
            full_plane: false,
        }],
        SpectralType::D { .. } => return Err(ModuliError::NoRealEigenvalues),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_3;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn m(a: f64, b: f64, c: f64, d: f64) -> SL2Matrix {
        make_sl2(a, b, c, d, &cfg()).unwrap()
    }

    #[test]
    fn make_sl2_examples() {
        assert_eq!(m(1.0, 0.0, 0.0, 1.0), SL2Matrix::identity());
        let diag = m(2.0, 0.0, 0.0, 0.5);
        assert_eq!(diag.det(), 1.0);
        assert_eq!(diag.rows(), [[2.0, 0.0], [0.0, 0.5]]);
        match make_sl2(1.0, 1.0, 1.0, 1.0, &cfg()) {
            Err(ModuliError::Determinant { det }) => assert_eq!(det, 0.0),
            other => panic!("expected determinant error, got {other:?}"),
        }
    }

    #[test]
    fn make_sl2_keeps_entries_unmodified() {
        let u = make_sl2(2.0, 0.0, 0.0, 0.5 + 1e-12, &cfg()).unwrap();
        assert_eq!(u.d(), 0.5 + 1e-12);
    }

    #[test]
    fn tolerance_config_rejects_nonpositive() {
        assert!(ToleranceConfig::new(1e-9, 0.0, 1e-9, 1e-8).is_none());
        assert!(ToleranceConfig::new(1e-9, 1e-9, 1e-9, f64::NAN).is_none());
        assert!(ToleranceConfig::default().is_valid());
    }

    #[test]
    fn classify_examples() {
        match classify(&m(2.0, 0.0, 0.0, 0.5), &cfg()).unwrap() {
            SpectralType::A { lambda, directions } => {
                assert_eq!(lambda, 0.5);
                assert_eq!(directions, [[0.0, 1.0], [1.0, 0.0]]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            classify(&m(-1.0, 0.0, 0.0, -1.0), &cfg()).unwrap(),
            SpectralType::B { eps: Sign::Minus }
        );
        assert_eq!(
            classify(&m(1.0, 1.0, 0.0, 1.0), &cfg()).unwrap(),
            SpectralType::C {
                eps: Sign::Plus,
                direction: [1.0, 0.0]
            }
        );
        match classify(&SL2Matrix::rotation(FRAC_PI_3), &cfg()).unwrap() {
            SpectralType::D { theta } => assert!((theta - FRAC_PI_3).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn classify_negative_hyperbolic_keeps_signed_lambda() {
        match classify(&m(-4.0, 0.0, 0.0, -0.25), &cfg()).unwrap() {
            SpectralType::A { lambda, .. } => assert_eq!(lambda, -0.25),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rotation_transpose_has_reflected_angle() {
        let r = SL2Matrix::rotation(2.0).transpose();
        match classify(&r, &cfg()).unwrap() {
            SpectralType::D { theta } => assert!((theta - (TAU - 2.0)).abs() < 1e-14),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn near_identity_but_not_parabolic_is_ambiguous() {
        // Trace within the band, far from ±I, but not near any Jordan block.
        let x = 3e-5;
        let u = m(1.0 + x, 0.0, 0.0, 1.0 / (1.0 + x));
        assert!(u.trace() - 2.0 <= 1e-9);
        assert!(matches!(
            classify(&u, &cfg()),
            Err(ModuliError::ClassificationAmbiguous { .. })
        ));
        assert_eq!(trace_class(&u, &cfg()), TraceClass::Parabolic);
    }

    #[test]
    fn tiny_scalar_perturbation_is_b() {
        let u = m(1.0 + 1e-12, 0.0, 0.0, 1.0);
        assert_eq!(classify(&u, &cfg()).unwrap(), SpectralType::B { eps: Sign::Plus });
    }

    #[test]
    fn trace_class_examples() {
        assert_eq!(trace_class(&m(3.0, 0.0, 0.0, 1.0 / 3.0), &cfg()), TraceClass::Hyperbolic);
        assert_eq!(trace_class(&m(-1.0, 1.0, 0.0, -1.0), &cfg()), TraceClass::Parabolic);
        assert_eq!(
            trace_class(&SL2Matrix::rotation(std::f64::consts::FRAC_PI_2), &cfg()),
            TraceClass::Elliptic
        );
    }

    #[test]
    fn eigen_data_examples() {
        let e = eigen_data(&m(2.0, 0.0, 0.0, 0.5), &cfg()).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!((e[0].value, e[0].direction), (0.5, [0.0, 1.0]));
        assert_eq!((e[1].value, e[1].direction), (2.0, [1.0, 0.0]));

        let e = eigen_data(&m(1.0, 1.0, 0.0, 1.0), &cfg()).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!((e[0].value, e[0].direction), (1.0, [1.0, 0.0]));

        let e = eigen_data(&SL2Matrix::identity(), &cfg()).unwrap();
        assert!(e[0].full_plane);

        assert_eq!(
            eigen_data(&SL2Matrix::rotation(FRAC_PI_3), &cfg()),
            Err(ModuliError::NoRealEigenvalues)
        );
    }

    #[test]
    fn iwasawa_has_unit_determinant() {
        let s = SL2Matrix::iwasawa(1.3, -1.7, 2.0);
        assert!((s.det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalize_angle_range() {
        assert_eq!(normalize_angle(-0.5), TAU - 0.5);
        assert_eq!(normalize_angle(TAU), 0.0);
        assert!(near_excluded_angle(PI + 1e-12, 1e-9));
        assert!(!near_excluded_angle(2.0, 1e-9));
    }
}
