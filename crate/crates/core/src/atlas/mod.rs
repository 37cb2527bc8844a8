//! The moduli space as a parametrized object.
//!
//! Two topologies are exposed and never mixed: the depiction in R³
//! ([`incidence`], [`embed`]), where sectors are glued along their limits,
//! and the separated topology ([`sector_distance`]), where every component of
//! every sector is its own clopen piece.

mod domain;
mod embed;
mod incidence;
pub mod layout;
mod sample;

pub use domain::{component_of, parameter_domain, params_in_cell, CellId, ContinuousAxis, DiscreteAxis, SectorDomain};
pub use embed::{bb_anchor, circle_point, embed, torus_point, EmbeddedPoint};
pub use incidence::{incidence, Attachment, CellIncidence, OpenEdge};
pub use sample::{
    draw_sample, enumerate_finite, random_conjugator, sample_params, sample_sector, seeded_rng, Sample,
    SAMPLE_MARGIN,
};

use crate::canonical::CanonicalParams;

/// Distance in the separated topology.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SectorDistance {
    /// Different sectors, different discrete parameters, or different
    /// interval components.
    Separated,
    Within(f64),
}

impl SectorDistance {
    pub fn value(self) -> Option<f64> {
        match self {
            SectorDistance::Separated => None,
            SectorDistance::Within(d) => Some(d),
        }
    }
}

/// Euclidean distance in the continuous parameters when both records lie in
/// the same component, `Separated` otherwise. Angles are compared as plain
/// values inside their open interval, so no path wraps through 0 or π.
pub fn sector_distance(c1: &CanonicalParams, c2: &CanonicalParams) -> SectorDistance {
    match (component_of(c1), component_of(c2)) {
        (Ok(k1), Ok(k2)) if k1 == k2 => SectorDistance::Within(
            c1.continuous()
                .iter()
                .zip(c2.continuous())
                .map(|((_, x), (_, y))| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
        ),
        _ => SectorDistance::Separated,
    }
}
