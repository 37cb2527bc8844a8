//! Map from canonical parameters into R³, reproducing the pictures of the
//! A/B sheets, the B/D torus and the B/C circles with shared BB anchors.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use super::layout::*;
use crate::canonical::{CanonicalParams, PairSector};
use crate::error::Result;
use crate::sl2::Sign;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddedPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub sector: PairSector,
    pub params: CanonicalParams,
}

impl EmbeddedPoint {
    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

/// Where BB(ε₁, ε₂) sits: the torus point at `θ, φ ∈ {0, π}` and the
/// corner `(ε₁, ε₂)` of the A/B square.
pub fn bb_anchor(eps1: Sign, eps2: Sign) -> [f64; 3] {
    [eps1.value() * TORUS_MAJOR_RADIUS, eps2.value() * TORUS_MINOR_RADIUS, 0.0]
}

/// Torus with axis along y, passing through the BB anchors.
pub fn torus_point(theta: f64, phi: f64) -> [f64; 3] {
    let ring = TORUS_MAJOR_RADIUS + TORUS_MINOR_RADIUS * phi.sin();
    [ring * theta.cos(), TORUS_MINOR_RADIUS * phi.cos(), ring * theta.sin()]
}

fn sheet_point(lambda: f64, mu: f64, upper: bool) -> [f64; 3] {
    let h = SHEET_HEIGHT * (1.0 - lambda.abs()) * (1.0 - mu.abs());
    [
        TORUS_MAJOR_RADIUS * lambda,
        TORUS_MINOR_RADIUS * mu,
        if upper { h } else { -h },
    ]
}

/// Point of the B/C circle for `(ε₁, ε₂)` at angle `alpha`; the circle lies
/// in the vertical plane through the anchor's outward diagonal.
pub fn circle_point(eps1: Sign, eps2: Sign, alpha: f64) -> [f64; 3] {
    let anchor = bb_anchor(eps1, eps2);
    let w = [eps1.value() / SQRT_2, eps2.value() / SQRT_2];
    let along = CIRCLE_GAP + CIRCLE_RADIUS * (1.0 + alpha.cos());
    [
        anchor[0] + along * w[0],
        anchor[1] + along * w[1],
        CIRCLE_RADIUS * alpha.sin(),
    ]
}

fn sign_angle(s: Sign) -> f64 {
    match s {
        Sign::Plus => 0.0,
        Sign::Minus => PI,
    }
}

/// Embeds a canonical parameter record.
pub fn embed(params: &CanonicalParams) -> Result<EmbeddedPoint> {
    params.validate()?;
    use CanonicalParams::*;
    let [x, y, z] = match *params {
        AA1 { lambda, mu } => sheet_point(lambda, mu, true),
        AA2 { lambda, mu } => sheet_point(lambda, mu, false),
        AB { lambda, eps2 } => [TORUS_MAJOR_RADIUS * lambda, eps2.value() * TORUS_MINOR_RADIUS, 0.0],
        BA { eps1, mu } => [eps1.value() * TORUS_MAJOR_RADIUS, TORUS_MINOR_RADIUS * mu, 0.0],
        BB { eps1, eps2 } => bb_anchor(eps1, eps2),
        BC { eps1, eps2, eps4 } => {
            circle_point(eps1, eps2, if eps4 == Sign::Plus { FRAC_PI_2 } else { 3.0 * FRAC_PI_2 })
        }
        CB { eps1, eps2, eps3 } => circle_point(eps1, eps2, sign_angle(eps3)),
        CC { eps1, eps2, alpha } => circle_point(eps1, eps2, alpha),
        BD { eps1, phi } => torus_point(sign_angle(eps1), phi),
        DB { theta, eps2 } => torus_point(theta, sign_angle(eps2)),
        DD { theta, phi } => torus_point(theta, phi),
    };
    Ok(EmbeddedPoint {
        x,
        y,
        z,
        sector: params.sector(),
        params: *params,
    })
}
