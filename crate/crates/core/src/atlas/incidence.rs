//! Cell structure of the moduli space as pictured in R³: 2-cells AA and DD
//! attached to 1-cells AB, BA, BD, DB, which attach to the 0-cells BB; and,
//! separately, 1-cells CC attached to the 0-cells BC and CB.

use std::f64::consts::{PI, TAU};

use super::domain::{parameter_domain, CellId};
use crate::canonical::PairSector;
use crate::sl2::Sign;

/// Boundary attachment of one cell onto a lower-dimensional one.
#[derive(Debug, Clone, PartialEq)]
pub struct Attachment {
    pub higher: CellId,
    pub boundary: CellId,
    pub description: String,
}

/// An unattached boundary piece of a cell.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenEdge {
    pub cell: CellId,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellIncidence {
    pub cells: Vec<CellId>,
    pub attachments: Vec<Attachment>,
    pub open_edges: Vec<OpenEdge>,
}

impl CellIncidence {
    pub fn cells_of(&self, sector: PairSector) -> impl Iterator<Item = &CellId> {
        self.cells.iter().filter(move |c| c.sector == sector)
    }

    /// Cells `cell` is attached to.
    pub fn boundary_of<'a>(&'a self, cell: &'a CellId) -> impl Iterator<Item = &'a CellId> + 'a {
        self.attachments
            .iter()
            .filter(move |a| &a.higher == cell)
            .map(|a| &a.boundary)
    }

    pub fn is_open(&self, cell: &CellId) -> bool {
        self.open_edges.iter().any(|e| &e.cell == cell)
    }
}

fn cell(sector: PairSector, signs: &[(&'static str, Sign)], intervals: &[(&'static str, usize)]) -> CellId {
    CellId {
        sector,
        signs: signs.to_vec(),
        intervals: intervals.to_vec(),
    }
}

/// Sign of the hyperbolic parameter on interval `i` of `(−1,0) ∪ (0,1)`;
/// this is the scalar reached as `|x| → 1`.
fn hyperbolic_sign(i: usize) -> Sign {
    if i == 0 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// Endpoints of angle interval `i` of `(0,π) ∪ (π,2π)`.
fn angle_endpoints(i: usize) -> [f64; 2] {
    if i == 0 {
        [0.0, PI]
    } else {
        [PI, TAU]
    }
}

/// The incidence table of the R³ depiction.
pub fn incidence() -> CellIncidence {
    use PairSector::*;
    let cells: Vec<CellId> = PairSector::ALL
        .iter()
        .flat_map(|&s| parameter_domain(s).components())
        .collect();
    let mut attachments = Vec::new();
    let mut open_edges = Vec::new();
    let mut attach = |higher: &CellId, boundary: CellId, description: String| {
        attachments.push(Attachment {
            higher: higher.clone(),
            boundary,
            description,
        })
    };

    for c in &cells {
        match c.sector {
            AA1 | AA2 => {
                let li = c.interval("lambda").unwrap();
                let mi = c.interval("mu").unwrap();
                attach(
                    c,
                    cell(AB, &[("eps2", hyperbolic_sign(mi))], &[("lambda", li)]),
                    "|mu| -> 1".into(),
                );
                attach(
                    c,
                    cell(BA, &[("eps1", hyperbolic_sign(li))], &[("mu", mi)]),
                    "|lambda| -> 1".into(),
                );
                open_edges.push(OpenEdge {
                    cell: c.clone(),
                    description: "lambda -> 0 and mu -> 0".into(),
                });
            }
            AB => {
                let li = c.interval("lambda").unwrap();
                let eps2 = c.sign("eps2").unwrap();
                attach(
                    c,
                    cell(BB, &[("eps1", hyperbolic_sign(li)), ("eps2", eps2)], &[]),
                    "|lambda| -> 1".into(),
                );
                open_edges.push(OpenEdge {
                    cell: c.clone(),
                    description: "lambda -> 0".into(),
                });
            }
            BA => {
                let mi = c.interval("mu").unwrap();
                let eps1 = c.sign("eps1").unwrap();
                attach(
                    c,
                    cell(BB, &[("eps1", eps1), ("eps2", hyperbolic_sign(mi))], &[]),
                    "|mu| -> 1".into(),
                );
                open_edges.push(OpenEdge {
                    cell: c.clone(),
                    description: "mu -> 0".into(),
                });
            }
            DD => {
                let ti = c.interval("theta").unwrap();
                let pi_ = c.interval("phi").unwrap();
                for e in angle_endpoints(ti) {
                    attach(
                        c,
                        cell(BD, &[("eps1", Sign::of(e.cos()))], &[("phi", pi_)]),
                        format!("theta -> {e:.4}"),
                    );
                }
                for e in angle_endpoints(pi_) {
                    attach(
                        c,
                        cell(DB, &[("eps2", Sign::of(e.cos()))], &[("theta", ti)]),
                        format!("phi -> {e:.4}"),
                    );
                }
            }
            BD => {
                let eps1 = c.sign("eps1").unwrap();
                for e in angle_endpoints(c.interval("phi").unwrap()) {
                    attach(
                        c,
                        cell(BB, &[("eps1", eps1), ("eps2", Sign::of(e.cos()))], &[]),
                        format!("phi -> {e:.4}"),
                    );
                }
            }
            DB => {
                let eps2 = c.sign("eps2").unwrap();
                for e in angle_endpoints(c.interval("theta").unwrap()) {
                    attach(
                        c,
                        cell(BB, &[("eps1", Sign::of(e.cos())), ("eps2", eps2)], &[]),
                        format!("theta -> {e:.4}"),
                    );
                }
            }
            CC => {
                let eps1 = c.sign("eps1").unwrap();
                let eps2 = c.sign("eps2").unwrap();
                let k = c.interval("alpha").unwrap();
                let axis = &parameter_domain(CC).continuous_axes[0];
                let (lo, hi) = axis.intervals[k];
                for e in [lo, hi] {
                    // At the endpoint one of cos α, sin α vanishes.
                    let (s, co) = e.sin_cos();
                    let boundary = if co.abs() < 0.5 {
                        cell(BC, &[("eps1", eps1), ("eps2", eps2), ("eps4", Sign::of(s))], &[])
                    } else {
                        cell(CB, &[("eps1", eps1), ("eps2", eps2), ("eps3", Sign::of(co))], &[])
                    };
                    attach(c, boundary, format!("alpha -> {e:.4}"));
                }
            }
            BB | BC | CB => {}
        }
    }

    CellIncidence {
        cells,
        attachments,
        open_edges,
    }
}
