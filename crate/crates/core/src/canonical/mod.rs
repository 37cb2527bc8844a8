//! Canonical representatives of commuting pairs under simultaneous SL(2,R)
//! conjugation: eleven sectors, each with its parameter record, plus the
//! conjugating witness and the intermediate data of the construction.

mod construct;

pub use construct::{
    canon_aa, canon_bc_cb, canon_bd_db, canon_cc, canon_dd, canon_scalar_partner, canonicalize,
    canonicalize_typed,
};

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ModuliError, Result};
use crate::pairs::CommutingPair;
use crate::sl2::{SL2Matrix, Sign, ToleranceConfig, Vec2};

/// The eleven canonical-form sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairSector {
    AA1,
    AA2,
    AB,
    BA,
    BB,
    BC,
    CB,
    BD,
    DB,
    CC,
    DD,
}

impl PairSector {
    pub const ALL: [PairSector; 11] = [
        PairSector::AA1,
        PairSector::AA2,
        PairSector::AB,
        PairSector::BA,
        PairSector::BB,
        PairSector::BC,
        PairSector::CB,
        PairSector::BD,
        PairSector::DB,
        PairSector::CC,
        PairSector::DD,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PairSector::AA1 => "AA1",
            PairSector::AA2 => "AA2",
            PairSector::AB => "AB",
            PairSector::BA => "BA",
            PairSector::BB => "BB",
            PairSector::BC => "BC",
            PairSector::CB => "CB",
            PairSector::BD => "BD",
            PairSector::DB => "DB",
            PairSector::CC => "CC",
            PairSector::DD => "DD",
        }
    }
}

impl fmt::Display for PairSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown sector {0:?} (expected one of AA1, AA2, AB, BA, BB, BC, CB, BD, DB, CC, DD)")]
pub struct UnknownSector(pub String);

impl FromStr for PairSector {
    type Err = UnknownSector;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        PairSector::ALL
            .iter()
            .copied()
            .find(|sec| sec.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownSector(s.to_string()))
    }
}

/// Parameters of a canonical form, one variant per sector.
///
/// Hyperbolic parameters `lambda`, `mu` satisfy `0 < |x| < 1`; the angles
/// `theta`, `phi` lie in `(0, π) ∪ (π, 2π)`; `alpha` lies in `(0, 2π)`
/// minus `{π/2, π, 3π/2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CanonicalParams {
    AA1 { lambda: f64, mu: f64 },
    AA2 { lambda: f64, mu: f64 },
    AB { lambda: f64, eps2: Sign },
    BA { eps1: Sign, mu: f64 },
    BB { eps1: Sign, eps2: Sign },
    BC { eps1: Sign, eps2: Sign, eps4: Sign },
    CB { eps1: Sign, eps2: Sign, eps3: Sign },
    BD { eps1: Sign, phi: f64 },
    DB { theta: f64, eps2: Sign },
    CC { eps1: Sign, eps2: Sign, alpha: f64 },
    DD { theta: f64, phi: f64 },
}

impl CanonicalParams {
    pub fn sector(&self) -> PairSector {
        match self {
            CanonicalParams::AA1 { .. } => PairSector::AA1,
            CanonicalParams::AA2 { .. } => PairSector::AA2,
            CanonicalParams::AB { .. } => PairSector::AB,
            CanonicalParams::BA { .. } => PairSector::BA,
            CanonicalParams::BB { .. } => PairSector::BB,
            CanonicalParams::BC { .. } => PairSector::BC,
            CanonicalParams::CB { .. } => PairSector::CB,
            CanonicalParams::BD { .. } => PairSector::BD,
            CanonicalParams::DB { .. } => PairSector::DB,
            CanonicalParams::CC { .. } => PairSector::CC,
            CanonicalParams::DD { .. } => PairSector::DD,
        }
    }

    /// Continuous parameters in a fixed per-sector order.
    pub fn continuous(&self) -> Vec<(&'static str, f64)> {
        match *self {
            CanonicalParams::AA1 { lambda, mu } | CanonicalParams::AA2 { lambda, mu } => {
                vec![("lambda", lambda), ("mu", mu)]
            }
            CanonicalParams::AB { lambda, .. } => vec![("lambda", lambda)],
            CanonicalParams::BA { mu, .. } => vec![("mu", mu)],
            CanonicalParams::BD { phi, .. } => vec![("phi", phi)],
            CanonicalParams::DB { theta, .. } => vec![("theta", theta)],
            CanonicalParams::CC { alpha, .. } => vec![("alpha", alpha)],
            CanonicalParams::DD { theta, phi } => vec![("theta", theta), ("phi", phi)],
            CanonicalParams::BB { .. } | CanonicalParams::BC { .. } | CanonicalParams::CB { .. } => vec![],
        }
    }

    /// Discrete sign parameters in a fixed per-sector order.
    pub fn discrete(&self) -> Vec<(&'static str, Sign)> {
        match *self {
            CanonicalParams::AA1 { .. } | CanonicalParams::AA2 { .. } | CanonicalParams::DD { .. } => vec![],
            CanonicalParams::AB { eps2, .. } => vec![("eps2", eps2)],
            CanonicalParams::BA { eps1, .. } => vec![("eps1", eps1)],
            CanonicalParams::BB { eps1, eps2 } => vec![("eps1", eps1), ("eps2", eps2)],
            CanonicalParams::BC { eps1, eps2, eps4 } => vec![("eps1", eps1), ("eps2", eps2), ("eps4", eps4)],
            CanonicalParams::CB { eps1, eps2, eps3 } => vec![("eps1", eps1), ("eps2", eps2), ("eps3", eps3)],
            CanonicalParams::BD { eps1, .. } => vec![("eps1", eps1)],
            CanonicalParams::DB { eps2, .. } => vec![("eps2", eps2)],
            CanonicalParams::CC { eps1, eps2, .. } => vec![("eps1", eps1), ("eps2", eps2)],
        }
    }

    /// Checks every parameter against its open range.
    pub fn validate(&self) -> Result<()> {
        for (name, value) in self.continuous() {
            let ok = match name {
                "lambda" | "mu" => value.is_finite() && value != 0.0 && value.abs() < 1.0,
                "theta" | "phi" => angle_in_range(value),
                "alpha" => alpha_in_range(value),
                _ => unreachable!("unknown parameter {name}"),
            };
            if !ok {
                return Err(ModuliError::ParamOutOfRange { name, value });
            }
        }
        Ok(())
    }

    /// The literal canonical matrices of the sector.
    pub fn matrices(&self) -> (SL2Matrix, SL2Matrix) {
        use CanonicalParams::*;
        match *self {
            AA1 { lambda, mu } => (SL2Matrix::diagonal(lambda), SL2Matrix::diagonal(mu)),
            AA2 { lambda, mu } => (SL2Matrix::diagonal(lambda), SL2Matrix::diagonal(1.0 / mu)),
            AB { lambda, eps2 } => (SL2Matrix::diagonal(lambda), SL2Matrix::scalar(eps2)),
            BA { eps1, mu } => (SL2Matrix::scalar(eps1), SL2Matrix::diagonal(mu)),
            BB { eps1, eps2 } => (SL2Matrix::scalar(eps1), SL2Matrix::scalar(eps2)),
            BC { eps1, eps2, eps4 } => (SL2Matrix::scalar(eps1), SL2Matrix::upper(eps2, eps4.value())),
            CB { eps1, eps2, eps3 } => (SL2Matrix::upper(eps1, eps3.value()), SL2Matrix::scalar(eps2)),
            BD { eps1, phi } => (SL2Matrix::scalar(eps1), SL2Matrix::rotation(phi)),
            DB { theta, eps2 } => (SL2Matrix::rotation(theta), SL2Matrix::scalar(eps2)),
            CC { eps1, eps2, alpha } => {
                let (s, c) = alpha.sin_cos();
                (SL2Matrix::upper(eps1, c), SL2Matrix::upper(eps2, s))
            }
            DD { theta, phi } => (SL2Matrix::rotation(theta), SL2Matrix::rotation(phi)),
        }
    }

    /// Same sector, identical discrete parameters, continuous parameters
    /// within `tol` of each other.
    pub fn approx_eq(&self, other: &CanonicalParams, tol: f64) -> bool {
        self.sector() == other.sector()
            && self.discrete() == other.discrete()
            && self
                .continuous()
                .iter()
                .zip(other.continuous())
                .all(|((_, x), (_, y))| (x - y).abs() <= tol)
    }
}

fn angle_in_range(x: f64) -> bool {
    x.is_finite() && x > 0.0 && x < TAU && x != PI
}

fn alpha_in_range(x: f64) -> bool {
    angle_in_range(x) && x != FRAC_PI_2 && x != 3.0 * FRAC_PI_2
}

/// Quantities produced along the way to a canonical form, kept for audit.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CanonTrace {
    /// Real joint eigendirections used to build the basis (empty for the
    /// elliptic cases, whose joint eigenvector is complex).
    pub joint_eigendirections: Vec<Vec2>,
    /// CC only: the scalar `c` with `U₂v₂′ − ε₂v₂′ = c v₁′`.
    pub c: Option<f64>,
    /// Sign of `det S′` for the basis matrix before the SL(2,R) repair.
    pub det_sprime_sign: Option<Sign>,
    /// Which construction branches fired.
    pub branch_notes: Vec<String>,
}

/// A canonical representative with its witness: `S⁻¹UᵢS` equals the
/// canonical matrices for `S = witness`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalPair {
    pub params: CanonicalParams,
    pub witness: SL2Matrix,
    pub trace: CanonTrace,
}

impl CanonicalPair {
    pub fn sector(&self) -> PairSector {
        self.params.sector()
    }

    /// The canonical matrices, see [`reconstruct`].
    pub fn reconstruct(&self) -> Result<CommutingPair> {
        reconstruct(&self.params)
    }
}

/// Builds the canonical pair for a parameter record.
pub fn reconstruct(params: &CanonicalParams) -> Result<CommutingPair> {
    params.validate()?;
    let (u1, u2) = params.matrices();
    Ok(CommutingPair::new_unchecked(u1, u2))
}

/// `(S⁻¹U₁S, S⁻¹U₂S)`.
pub fn apply_conjugation(p: &CommutingPair, s: &SL2Matrix) -> CommutingPair {
    p.conjugate_by(s)
}

/// Decides simultaneous SL(2,R)-conjugacy by comparing canonical forms.
pub fn equivalent(p: &CommutingPair, q: &CommutingPair, cfg: &ToleranceConfig) -> Result<bool> {
    let cp = canonicalize(p, cfg)?;
    let cq = canonicalize(q, cfg)?;
    Ok(cp.params.approx_eq(&cq.params, cfg.param_tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sector_names_round_trip() {
        for s in PairSector::ALL {
            assert_eq!(s.as_str().parse::<PairSector>().unwrap(), s);
        }
        assert_eq!("dd".parse::<PairSector>().unwrap(), PairSector::DD);
        assert!("AC".parse::<PairSector>().is_err());
        assert_eq!(PairSector::ALL.len(), 11);
    }

    #[test]
    fn reconstruct_examples() {
        let p = reconstruct(&CanonicalParams::BB {
            eps1: Sign::Plus,
            eps2: Sign::Minus,
        })
        .unwrap();
        assert_eq!(p.first().rows(), [[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(p.second().rows(), [[-1.0, 0.0], [0.0, -1.0]]);

        let p = reconstruct(&CanonicalParams::CC {
            eps1: Sign::Plus,
            eps2: Sign::Plus,
            alpha: std::f64::consts::FRAC_PI_4,
        })
        .unwrap();
        let h = std::f64::consts::SQRT_2 / 2.0;
        assert!(p.first().max_abs_diff(&SL2Matrix::upper(Sign::Plus, h)) < 1e-15);
        assert!(p.second().max_abs_diff(&SL2Matrix::upper(Sign::Plus, h)) < 1e-15);

        let p = reconstruct(&CanonicalParams::DD {
            theta: FRAC_PI_2,
            phi: 3.0 * FRAC_PI_2,
        })
        .unwrap();
        assert!(p.first().max_abs_diff(&SL2Matrix::from_mat_unchecked(crate::sl2::Mat2::new(0.0, -1.0, 1.0, 0.0))) < 1e-15);
        assert!(p.second().max_abs_diff(&SL2Matrix::from_mat_unchecked(crate::sl2::Mat2::new(0.0, 1.0, -1.0, 0.0))) < 1e-15);
    }

    #[test]
    fn reconstruct_rejects_out_of_range() {
        let bad = [
            CanonicalParams::AA1 { lambda: 1.0, mu: 0.5 },
            CanonicalParams::AB {
                lambda: 0.0,
                eps2: Sign::Plus,
            },
            CanonicalParams::DD { theta: PI, phi: 1.0 },
            CanonicalParams::BD {
                eps1: Sign::Plus,
                phi: TAU,
            },
            CanonicalParams::CC {
                eps1: Sign::Plus,
                eps2: Sign::Minus,
                alpha: FRAC_PI_2,
            },
            CanonicalParams::DB {
                theta: f64::NAN,
                eps2: Sign::Plus,
            },
        ];
        for p in bad {
            assert!(
                matches!(reconstruct(&p), Err(ModuliError::ParamOutOfRange { .. })),
                "{p:?}"
            );
        }
    }

    #[test]
    fn approx_eq_requires_same_discrete_data() {
        let a = CanonicalParams::BC {
            eps1: Sign::Plus,
            eps2: Sign::Plus,
            eps4: Sign::Plus,
        };
        let b = CanonicalParams::BC {
            eps1: Sign::Plus,
            eps2: Sign::Plus,
            eps4: Sign::Minus,
        };
        assert!(a.approx_eq(&a, 0.0));
        assert!(!a.approx_eq(&b, 1.0));
        let x = CanonicalParams::DD { theta: 2.0, phi: 5.0 };
        let y = CanonicalParams::DD {
            theta: 2.0 + 1e-9,
            phi: 5.0,
        };
        assert!(x.approx_eq(&y, 1e-8));
        assert!(!x.approx_eq(&y, 1e-10));
    }
}
