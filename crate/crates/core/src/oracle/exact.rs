//! Exact rational classification, deciding the B/C boundary without tolerances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{ModuliError, Result};
use crate::sl2::{canonical_direction, elliptic_angle, eigendirection, Mat2, Sign, SpectralType};

/// A 2×2 matrix with rational entries `[[a, b], [c, d]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

/// Rational from a numerator/denominator pair; `None` for a zero denominator.
pub fn ratio(num: i64, den: i64) -> Option<BigRational> {
    (den != 0).then(|| BigRational::new(BigInt::from(num), BigInt::from(den)))
}

impl ExactMatrix {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> ExactMatrix {
        ExactMatrix { a, b, c, d }
    }

    /// From `[numerator, denominator]` pairs in row-major order.
    pub fn from_ratios(entries: [[i64; 2]; 4]) -> Option<ExactMatrix> {
        let [a, b, c, d] = entries;
        Some(ExactMatrix {
            a: ratio(a[0], a[1])?,
            b: ratio(b[0], b[1])?,
            c: ratio(c[0], c[1])?,
            d: ratio(d[0], d[1])?,
        })
    }

    pub fn det(&self) -> BigRational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.d
    }

    /// Nearest floating-point matrix.
    pub fn to_mat2(&self) -> Mat2 {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        Mat2::new(f(&self.a), f(&self.b), f(&self.c), f(&self.d))
    }

    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        ExactMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn is_scalar(&self, s: &BigRational) -> bool {
        self.b.is_zero() && self.c.is_zero() && &self.a == s && &self.d == s
    }
}

/// Exact classification: the sign of `tr² − 4` separates A from D, and on
/// `tr = ±2` the matrix is B exactly when it equals `±I`.
pub fn exact_classify(m: &ExactMatrix) -> Result<SpectralType> {
    let one = BigRational::one();
    let det = m.det();
    if det != one {
        return Err(ModuliError::ExactDeterminant { det: det.to_string() });
    }
    let tr = m.trace();
    let two = BigRational::from_integer(BigInt::from(2));
    let disc = &tr * &tr - &two * &two;
    let approx = m.to_mat2();

    if disc.is_positive() {
        let t = tr.to_f64().unwrap_or(f64::NAN);
        let root = ((t - 2.0) * (t + 2.0)).sqrt();
        let big = 0.5 * (t + t.signum() * root);
        let lambda = 1.0 / big;
        return Ok(SpectralType::A {
            lambda,
            directions: [eigendirection(&approx, lambda), eigendirection(&approx, big)],
        });
    }
    if disc.is_negative() {
        let mut theta = elliptic_angle(&approx);
        // The orientation sign is decided exactly.
        let sin_positive = (&m.c - &m.b).is_positive();
        if sin_positive != (theta < std::f64::consts::PI) {
            theta = std::f64::consts::TAU - theta;
        }
        return Ok(SpectralType::D { theta });
    }

    let eps = if tr.is_positive() { Sign::Plus } else { Sign::Minus };
    let e = if eps == Sign::Plus { one } else { -one };
    if m.is_scalar(&e) {
        return Ok(SpectralType::B { eps });
    }
    // Kernel of N = U − εI from its nonzero row.
    let (na, nb, nc, nd) = (&m.a - &e, m.b.clone(), m.c.clone(), &m.d - &e);
    let (x, y) = if !na.is_zero() || !nb.is_zero() {
        (nb, -na)
    } else {
        (nd, -nc)
    };
    let direction = canonical_direction([x.to_f64().unwrap_or(f64::NAN), y.to_f64().unwrap_or(f64::NAN)]);
    Ok(SpectralType::C { eps, direction })
}
