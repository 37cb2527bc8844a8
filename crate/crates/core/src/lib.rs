//! Canonical forms for commuting pairs of SL(2,R) matrices under simultaneous
//! conjugation, and the resulting moduli space of flat SL(2,R) connections on
//! the torus.
//!
//! - [`sl2`]: matrix arithmetic and single-matrix spectral types A–D.
//! - [`pairs`]: commuting pairs and their allowed type combinations.
//! - [`canonical`]: the eleven canonical sectors, witnesses, equivalence.
//! - [`oracle`]: construction-free checks (conjugator search, exact classification).
//! - [`atlas`]: parameter domains, sector separation, cell incidence, embedding, sampling.
//! - [`cli`]: the `torus-moduli` command line tool.

pub mod atlas;
pub mod canonical;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod pairs;
pub mod sl2;

pub use canonical::{canonicalize, equivalent, CanonicalPair, CanonicalParams, PairSector};
pub use error::{ModuliError, Result};
pub use pairs::{make_pair, CommutingPair};
pub use sl2::{classify, make_sl2, SL2Matrix, Sign, SpectralTag, SpectralType, ToleranceConfig};
