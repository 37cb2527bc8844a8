//! Random canonical pairs, optionally disguised by a random conjugation.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::domain::parameter_domain;
use crate::canonical::{reconstruct, CanonicalParams, PairSector};
use crate::pairs::CommutingPair;
use crate::sl2::{SL2Matrix, Sign};

/// Distance kept from every excluded boundary value when sampling.
pub const SAMPLE_MARGIN: f64 = 0.05;

/// A sampled pair with the data it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub params: CanonicalParams,
    pub pair: CommutingPair,
    /// The conjugator applied to the canonical pair, if any.
    pub conjugator: Option<SL2Matrix>,
}

/// Deterministic generator for a seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Uniform draw from a random interval, shrunk by the sampling margin.
fn draw_axis<R: Rng + ?Sized>(rng: &mut R, intervals: &[(f64, f64)]) -> f64 {
    let (lo, hi) = intervals[rng.gen_range(0..intervals.len())];
    rng.gen_range(lo + SAMPLE_MARGIN..=hi - SAMPLE_MARGIN)
}

/// Parameters drawn uniformly from the truncated sector domain.
pub fn sample_params<R: Rng + ?Sized>(sector: PairSector, rng: &mut R) -> CanonicalParams {
    let domain = parameter_domain(sector);
    let mut cont = domain
        .continuous_axes
        .iter()
        .map(|axis| draw_axis(rng, &axis.intervals))
        .collect::<Vec<_>>()
        .into_iter();
    let mut next = || cont.next().expect("axis count matches sector");
    use PairSector::*;
    match sector {
        AA1 => CanonicalParams::AA1 {
            lambda: next(),
            mu: next(),
        },
        AA2 => CanonicalParams::AA2 {
            lambda: next(),
            mu: next(),
        },
        AB => CanonicalParams::AB {
            lambda: next(),
            eps2: random_sign(rng),
        },
        BA => CanonicalParams::BA {
            mu: next(),
            eps1: random_sign(rng),
        },
        BB => CanonicalParams::BB {
            eps1: random_sign(rng),
            eps2: random_sign(rng),
        },
        BC => CanonicalParams::BC {
            eps1: random_sign(rng),
            eps2: random_sign(rng),
            eps4: random_sign(rng),
        },
        CB => CanonicalParams::CB {
            eps1: random_sign(rng),
            eps2: random_sign(rng),
            eps3: random_sign(rng),
        },
        BD => CanonicalParams::BD {
            phi: next(),
            eps1: random_sign(rng),
        },
        DB => CanonicalParams::DB {
            theta: next(),
            eps2: random_sign(rng),
        },
        CC => CanonicalParams::CC {
            alpha: next(),
            eps1: random_sign(rng),
            eps2: random_sign(rng),
        },
        DD => CanonicalParams::DD {
            theta: next(),
            phi: next(),
        },
    }
}

/// `R(t)·diag(e^s, e^-s)·[[1,h],[0,1]]` with `t ∈ [0, 2π)`, `s, h ∈ [−2, 2]`.
pub fn random_conjugator<R: Rng + ?Sized>(rng: &mut R) -> SL2Matrix {
    let t = rng.gen_range(0.0..TAU);
    let s = rng.gen_range(-2.0..=2.0);
    let h = rng.gen_range(-2.0..=2.0);
    SL2Matrix::iwasawa(t, s, h)
}

/// Draws a sample from `rng`.
pub fn draw_sample<R: Rng + ?Sized>(sector: PairSector, rng: &mut R, conjugate: bool) -> Sample {
    let params = sample_params(sector, rng);
    let canonical = reconstruct(&params).expect("sampled parameters are in range");
    let conjugator = conjugate.then(|| random_conjugator(rng));
    let pair = match &conjugator {
        Some(s) => canonical.conjugate_by(s),
        None => canonical,
    };
    Sample {
        params,
        pair,
        conjugator,
    }
}

/// A commuting pair of the given sector, deterministic in `seed`.
pub fn sample_sector(sector: PairSector, seed: u64, conjugate: bool) -> CommutingPair {
    draw_sample(sector, &mut seeded_rng(seed), conjugate).pair
}

/// All parameter records of a sector without continuous parameters, in a
/// fixed order; `None` for the other sectors.
pub fn enumerate_finite(sector: PairSector) -> Option<Vec<CanonicalParams>> {
    let mut out = Vec::new();
    for e1 in Sign::BOTH {
        for e2 in Sign::BOTH {
            match sector {
                PairSector::BB => out.push(CanonicalParams::BB { eps1: e1, eps2: e2 }),
                PairSector::BC => {
                    for e4 in Sign::BOTH {
                        out.push(CanonicalParams::BC {
                            eps1: e1,
                            eps2: e2,
                            eps4: e4,
                        });
                    }
                }
                PairSector::CB => {
                    for e3 in Sign::BOTH {
                        out.push(CanonicalParams::CB {
                            eps1: e1,
                            eps2: e2,
                            eps3: e3,
                        });
                    }
                }
                _ => return None,
            }
        }
    }
    Some(out)
}
