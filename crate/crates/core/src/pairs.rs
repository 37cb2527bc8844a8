//! Ordered commuting pairs and their joint spectral types.

use std::fmt;

use crate::error::{ModuliError, Result};
use crate::sl2::{classify, SL2Matrix, SpectralTag, SpectralType, ToleranceConfig};

/// An ordered pair `(U₁, U₂)` of commuting SL(2,R) matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommutingPair {
    first: SL2Matrix,
    second: SL2Matrix,
}

/// Max-abs entry norm of `U₁U₂ − U₂U₁`.
pub fn commutator_norm(u1: &SL2Matrix, u2: &SL2Matrix) -> f64 {
    let ab = u1.mat().mul(u2.mat());
    let ba = u2.mat().mul(u1.mat());
    ab.max_abs_diff(&ba)
}

/// Builds the ordered pair, rejecting inputs whose commutator exceeds
/// `comm_tol` (scaled by `‖U₁‖·‖U₂‖` when that product exceeds 1).
pub fn make_pair(u1: SL2Matrix, u2: SL2Matrix, cfg: &ToleranceConfig) -> Result<CommutingPair> {
    let norm = commutator_norm(&u1, &u2);
    let scale = u1.mat().max_abs() * u2.mat().max_abs();
    if !norm.is_finite() || norm > cfg.comm_tol * scale.max(1.0) {
        return Err(ModuliError::NotCommuting { norm });
    }
    Ok(CommutingPair { first: u1, second: u2 })
}

impl CommutingPair {
    pub fn new(u1: SL2Matrix, u2: SL2Matrix, cfg: &ToleranceConfig) -> Result<CommutingPair> {
        make_pair(u1, u2, cfg)
    }

    /// For pairs known to commute by construction (canonical forms, conjugates).
    pub(crate) fn new_unchecked(first: SL2Matrix, second: SL2Matrix) -> CommutingPair {
        CommutingPair { first, second }
    }

    pub fn first(&self) -> &SL2Matrix {
        &self.first
    }

    pub fn second(&self) -> &SL2Matrix {
        &self.second
    }

    /// The pair with its entries swapped.
    pub fn reversed(&self) -> CommutingPair {
        CommutingPair {
            first: self.second,
            second: self.first,
        }
    }

    /// `(S⁻¹U₁S, S⁻¹U₂S)`.
    pub fn conjugate_by(&self, s: &SL2Matrix) -> CommutingPair {
        CommutingPair {
            first: self.first.conjugate_by(s),
            second: self.second.conjugate_by(s),
        }
    }

    pub fn max_abs_diff(&self, other: &CommutingPair) -> f64 {
        self.first
            .max_abs_diff(&other.first)
            .max(self.second.max_abs_diff(&other.second))
    }
}

/// Joint coarse type `(t₁, t₂)` of a commuting pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoarseCombo {
    pub first: SpectralTag,
    pub second: SpectralTag,
}

impl CoarseCombo {
    pub fn reversed(self) -> CoarseCombo {
        CoarseCombo {
            first: self.second,
            second: self.first,
        }
    }
}

impl fmt::Display for CoarseCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.first, self.second)
    }
}

/// Whether a type combination can occur for a commuting pair: (A,A), (C,C),
/// (D,D), and anything paired with B.
pub fn allowed_combination(t1: SpectralTag, t2: SpectralTag) -> bool {
    use SpectralTag::*;
    matches!((t1, t2), (A, A) | (C, C) | (D, D) | (B, _) | (_, B))
}

/// Classifies both members of the pair.
pub fn classify_pair(p: &CommutingPair, cfg: &ToleranceConfig) -> Result<(SpectralType, SpectralType)> {
    let t1 = classify(p.first(), cfg)?;
    let t2 = classify(p.second(), cfg)?;
    check_combination(t1.tag(), t2.tag())?;
    Ok((t1, t2))
}

pub(crate) fn check_combination(t1: SpectralTag, t2: SpectralTag) -> Result<()> {
    if allowed_combination(t1, t2) {
        Ok(())
    } else {
        Err(ModuliError::ForbiddenCombo(t1, t2))
    }
}

/// Coarse combination of the pair. A forbidden combination contradicts
/// commutativity and is reported as an error.
pub fn coarse_combo(p: &CommutingPair, cfg: &ToleranceConfig) -> Result<CoarseCombo> {
    let (t1, t2) = classify_pair(p, cfg)?;
    Ok(CoarseCombo {
        first: t1.tag(),
        second: t2.tag(),
    })
}
