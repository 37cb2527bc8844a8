use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use crate::canonical::{CanonicalParams, PairSector};
use crate::error::{ModuliError, Result};
use crate::sl2::Sign;

/// A continuous parameter and the disjoint open intervals it ranges over.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousAxis {
    pub name: &'static str,
    pub intervals: Vec<(f64, f64)>,
}

impl ContinuousAxis {
    /// Index of the open interval containing `x`.
    pub fn interval_of(&self, x: f64) -> Option<usize> {
        self.intervals.iter().position(|&(lo, hi)| x > lo && x < hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteAxis {
    pub name: &'static str,
    pub values: Vec<Sign>,
}

/// Parameter domain of one sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorDomain {
    pub sector: PairSector,
    pub continuous_axes: Vec<ContinuousAxis>,
    pub discrete_axes: Vec<DiscreteAxis>,
    pub dimension: usize,
}

fn hyperbolic(name: &'static str) -> ContinuousAxis {
    ContinuousAxis {
        name,
        intervals: vec![(-1.0, 0.0), (0.0, 1.0)],
    }
}

fn angle(name: &'static str) -> ContinuousAxis {
    ContinuousAxis {
        name,
        intervals: vec![(0.0, PI), (PI, TAU)],
    }
}

fn alpha() -> ContinuousAxis {
    ContinuousAxis {
        name: "alpha",
        intervals: vec![
            (0.0, FRAC_PI_2),
            (FRAC_PI_2, PI),
            (PI, 3.0 * FRAC_PI_2),
            (3.0 * FRAC_PI_2, TAU),
        ],
    }
}

fn sign(name: &'static str) -> DiscreteAxis {
    DiscreteAxis {
        name,
        values: Sign::BOTH.to_vec(),
    }
}

/// The parameter ranges of a sector. Axis order matches
/// [`CanonicalParams::continuous`] and [`CanonicalParams::discrete`].
pub fn parameter_domain(sector: PairSector) -> SectorDomain {
    use PairSector::*;
    let (continuous_axes, discrete_axes) = match sector {
        AA1 | AA2 => (vec![hyperbolic("lambda"), hyperbolic("mu")], vec![]),
        AB => (vec![hyperbolic("lambda")], vec![sign("eps2")]),
        BA => (vec![hyperbolic("mu")], vec![sign("eps1")]),
        BB => (vec![], vec![sign("eps1"), sign("eps2")]),
        BC => (vec![], vec![sign("eps1"), sign("eps2"), sign("eps4")]),
        CB => (vec![], vec![sign("eps1"), sign("eps2"), sign("eps3")]),
        BD => (vec![angle("phi")], vec![sign("eps1")]),
        DB => (vec![angle("theta")], vec![sign("eps2")]),
        CC => (vec![alpha()], vec![sign("eps1"), sign("eps2")]),
        DD => (vec![angle("theta"), angle("phi")], vec![]),
    };
    SectorDomain {
        sector,
        dimension: continuous_axes.len(),
        continuous_axes,
        discrete_axes,
    }
}

/// One connected component of a sector: fixed discrete parameters and a
/// fixed open interval on every continuous axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId {
    pub sector: PairSector,
    pub signs: Vec<(&'static str, Sign)>,
    pub intervals: Vec<(&'static str, usize)>,
}

impl CellId {
    pub fn dimension(&self) -> usize {
        self.intervals.len()
    }

    pub fn sign(&self, name: &str) -> Option<Sign> {
        self.signs.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
    }

    pub fn interval(&self, name: &str) -> Option<usize> {
        self.intervals.iter().find(|(n, _)| *n == name).map(|(_, i)| *i)
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.sector)?;
        let mut first = true;
        for (name, s) in &self.signs {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{name}={s}")?;
            first = false;
        }
        for (name, i) in &self.intervals {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{name}#{i}")?;
            first = false;
        }
        f.write_str(")")
    }
}

impl SectorDomain {
    /// Every component of the sector.
    pub fn components(&self) -> Vec<CellId> {
        let mut sign_choices: Vec<Vec<(&'static str, Sign)>> = vec![vec![]];
        for axis in &self.discrete_axes {
            sign_choices = sign_choices
                .into_iter()
                .flat_map(|prefix| {
                    axis.values.iter().map(move |&v| {
                        let mut next = prefix.clone();
                        next.push((axis.name, v));
                        next
                    })
                })
                .collect();
        }
        let mut interval_choices: Vec<Vec<(&'static str, usize)>> = vec![vec![]];
        for axis in &self.continuous_axes {
            interval_choices = interval_choices
                .into_iter()
                .flat_map(|prefix| {
                    (0..axis.intervals.len()).map(move |i| {
                        let mut next = prefix.clone();
                        next.push((axis.name, i));
                        next
                    })
                })
                .collect();
        }
        sign_choices
            .iter()
            .flat_map(|signs| {
                interval_choices.iter().map(move |intervals| CellId {
                    sector: self.sector,
                    signs: signs.clone(),
                    intervals: intervals.clone(),
                })
            })
            .collect()
    }
}

/// The component a parameter record lies in.
pub fn component_of(params: &CanonicalParams) -> Result<CellId> {
    let domain = parameter_domain(params.sector());
    let intervals = domain
        .continuous_axes
        .iter()
        .zip(params.continuous())
        .map(|(axis, (name, value))| {
            axis.interval_of(value)
                .map(|i| (name, i))
                .ok_or(ModuliError::ParamOutOfRange { name, value })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CellId {
        sector: params.sector(),
        signs: params.discrete(),
        intervals,
    })
}

/// The parameter record of `cell` with continuous values given in axis
/// order; `None` if a value lies outside the cell or a sign is missing.
pub fn params_in_cell(cell: &CellId, values: &[f64]) -> Option<CanonicalParams> {
    let domain = parameter_domain(cell.sector);
    if values.len() != domain.dimension || cell.intervals.len() != domain.dimension {
        return None;
    }
    for ((axis, &(_, i)), &x) in domain.continuous_axes.iter().zip(&cell.intervals).zip(values) {
        if axis.interval_of(x) != Some(i) {
            return None;
        }
    }
    let s = |name| cell.sign(name);
    use PairSector::*;
    let params = match cell.sector {
        AA1 => CanonicalParams::AA1 {
            lambda: values[0],
            mu: values[1],
        },
        AA2 => CanonicalParams::AA2 {
            lambda: values[0],
            mu: values[1],
        },
        AB => CanonicalParams::AB {
            lambda: values[0],
            eps2: s("eps2")?,
        },
        BA => CanonicalParams::BA {
            eps1: s("eps1")?,
            mu: values[0],
        },
        BB => CanonicalParams::BB {
            eps1: s("eps1")?,
            eps2: s("eps2")?,
        },
        BC => CanonicalParams::BC {
            eps1: s("eps1")?,
            eps2: s("eps2")?,
            eps4: s("eps4")?,
        },
        CB => CanonicalParams::CB {
            eps1: s("eps1")?,
            eps2: s("eps2")?,
            eps3: s("eps3")?,
        },
        BD => CanonicalParams::BD {
            eps1: s("eps1")?,
            phi: values[0],
        },
        DB => CanonicalParams::DB {
            theta: values[0],
            eps2: s("eps2")?,
        },
        CC => CanonicalParams::CC {
            eps1: s("eps1")?,
            eps2: s("eps2")?,
            alpha: values[0],
        },
        DD => CanonicalParams::DD {
            theta: values[0],
            phi: values[1],
        },
    };
    params.validate().ok().map(|_| params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domain_examples() {
        let aa1 = parameter_domain(PairSector::AA1);
        assert_eq!(aa1.dimension, 2);
        assert_eq!(aa1.continuous_axes[0].intervals, vec![(-1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(aa1.continuous_axes[1].name, "mu");

        let bb = parameter_domain(PairSector::BB);
        assert_eq!(bb.dimension, 0);
        assert_eq!(bb.discrete_axes.len(), 2);

        let cc = parameter_domain(PairSector::CC);
        assert_eq!(cc.dimension, 1);
        let a = &cc.continuous_axes[0];
        assert_eq!(a.intervals.len(), 4);
        for excluded in [FRAC_PI_2, PI, 3.0 * FRAC_PI_2] {
            assert_eq!(a.interval_of(excluded), None);
        }
    }

    #[test]
    fn dimensions_per_sector() {
        use PairSector::*;
        for s in PairSector::ALL {
            let expected = match s {
                AA1 | AA2 | DD => 2,
                AB | BA | BD | DB | CC => 1,
                BB | BC | CB => 0,
            };
            assert_eq!(parameter_domain(s).dimension, expected, "{s}");
        }
    }

    /// Component counts by enumerating sign choices and interval components.
    #[test]
    fn component_counts() {
        use PairSector::*;
        let count = |s| parameter_domain(s).components().len();
        assert_eq!(count(AA1), 4);
        assert_eq!(count(AA2), 4);
        assert_eq!(count(AB), 4);
        assert_eq!(count(BA), 4);
        assert_eq!(count(BB), 4);
        assert_eq!(count(BC), 8);
        assert_eq!(count(CB), 8);
        assert_eq!(count(BD), 4);
        assert_eq!(count(DB), 4);
        assert_eq!(count(CC), 16);
        assert_eq!(count(DD), 4);
    }

    #[test]
    fn params_in_cell_inverts_component_of() {
        for sector in PairSector::ALL {
            for cell in parameter_domain(sector).components() {
                let mids: Vec<f64> = parameter_domain(sector)
                    .continuous_axes
                    .iter()
                    .zip(&cell.intervals)
                    .map(|(axis, &(_, i))| 0.5 * (axis.intervals[i].0 + axis.intervals[i].1))
                    .collect();
                let p = params_in_cell(&cell, &mids).unwrap();
                assert_eq!(component_of(&p).unwrap(), cell);
            }
        }
        let cell = component_of(&CanonicalParams::DD { theta: 1.0, phi: 1.0 }).unwrap();
        assert!(params_in_cell(&cell, &[4.0, 1.0]).is_none());
    }

    #[test]
    fn component_of_matches_axes() {
        let id = component_of(&CanonicalParams::CC {
            eps1: Sign::Plus,
            eps2: Sign::Minus,
            alpha: 4.0,
        })
        .unwrap();
        assert_eq!(id.interval("alpha"), Some(2));
        assert_eq!(id.sign("eps2"), Some(Sign::Minus));
        assert_eq!(id.to_string(), "CC(eps1=+1,eps2=-1,alpha#2)");
        assert!(component_of(&CanonicalParams::DD { theta: PI, phi: 1.0 }).is_err());
    }
}
