//! Figures: the embedded cells sampled on a grid, written as an SVG
//! projection plus a CSV of every sampled point.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use crate::atlas::layout::{CAMERA_AZIMUTH, CAMERA_ELEVATION};
use crate::atlas::{embed, incidence, parameter_domain, params_in_cell, CellId};
use crate::canonical::{CanonicalParams, PairSector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Ab,
    Bc,
    Bd,
    Overall,
}

impl FigureName {
    pub fn as_str(self) -> &'static str {
        match self {
            FigureName::Ab => "ab",
            FigureName::Bc => "bc",
            FigureName::Bd => "bd",
            FigureName::Overall => "overall",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Sheet,
    Patch,
    Arc,
    Vertex,
    Point,
}

impl ElementKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ElementKind::Sheet => "sheet",
            ElementKind::Patch => "patch",
            ElementKind::Arc => "arc",
            ElementKind::Vertex => "vertex",
            ElementKind::Point => "point",
        }
    }
}

/// One embedded cell, sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    pub group: String,
    pub kind: ElementKind,
    pub cell: CellId,
    pub samples: Vec<(CanonicalParams, [f64; 3])>,
    /// Polylines through `samples`, by index.
    pub strokes: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub name: FigureName,
    pub elements: Vec<Element>,
}

/// A CSV row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotRow {
    pub figure: &'static str,
    pub group: String,
    pub kind: ElementKind,
    pub element: String,
    pub sector: &'static str,
    pub params: String,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

fn grid_values(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64).collect()
}

fn axis_values(cell: &CellId, resolution: usize) -> Vec<Vec<f64>> {
    parameter_domain(cell.sector)
        .continuous_axes
        .iter()
        .zip(&cell.intervals)
        .map(|(axis, &(_, i))| {
            let (lo, hi) = axis.intervals[i];
            grid_values(lo, hi, resolution)
        })
        .collect()
}

fn point(cell: &CellId, values: &[f64]) -> (CanonicalParams, [f64; 3]) {
    let params = params_in_cell(cell, values).expect("grid values lie inside the cell");
    let p = embed(&params).expect("grid parameters are valid");
    (params, p.coords())
}

/// Samples `cell` on a `resolution`-point grid per continuous axis.
fn element(cell: &CellId, kind: ElementKind, group: String, resolution: usize) -> Element {
    let axes = axis_values(cell, resolution);
    let (samples, strokes) = match axes.as_slice() {
        [] => (vec![point(cell, &[])], vec![]),
        [xs] => {
            let samples: Vec<_> = xs.iter().map(|&x| point(cell, &[x])).collect();
            (samples, vec![(0..xs.len()).collect()])
        }
        [xs, ys] => {
            let mut samples = Vec::with_capacity(xs.len() * ys.len());
            for &x in xs {
                for &y in ys {
                    samples.push(point(cell, &[x, y]));
                }
            }
            let n = ys.len();
            let mut strokes: Vec<Vec<usize>> = (0..xs.len()).map(|i| (0..n).map(|j| i * n + j).collect()).collect();
            strokes.extend((0..n).map(|j| (0..xs.len()).map(|i| i * n + j).collect()));
            (samples, strokes)
        }
        _ => unreachable!("cells have dimension at most 2"),
    };
    Element {
        group,
        kind,
        cell: cell.clone(),
        samples,
        strokes,
    }
}

fn circle_group(cell: &CellId) -> String {
    format!(
        "circle(eps1={},eps2={})",
        cell.sign("eps1").expect("circle cells carry eps1"),
        cell.sign("eps2").expect("circle cells carry eps2")
    )
}

/// Cells of `figure` with their group and kind.
fn layout(figure: FigureName) -> Vec<(CellId, ElementKind, String)> {
    use PairSector::*;
    let inc = incidence();
    let of = |s: PairSector, kind: ElementKind, group: &dyn Fn(&CellId) -> String| {
        inc.cells_of(s).map(|c| (c.clone(), kind, group(c))).collect::<Vec<_>>()
    };
    let anchors = || of(BB, ElementKind::Vertex, &|_| "anchors".into());
    match figure {
        FigureName::Ab => [
            of(AA1, ElementKind::Sheet, &|_| "AA1 sheet".into()),
            of(AA2, ElementKind::Sheet, &|_| "AA2 sheet".into()),
            of(AB, ElementKind::Arc, &|_| "scalar edges".into()),
            of(BA, ElementKind::Arc, &|_| "scalar edges".into()),
            anchors(),
        ]
        .concat(),
        FigureName::Bd => [
            of(DD, ElementKind::Patch, &|_| "torus".into()),
            of(BD, ElementKind::Arc, &|_| "torus".into()),
            of(DB, ElementKind::Arc, &|_| "torus".into()),
            anchors(),
        ]
        .concat(),
        FigureName::Bc => [
            of(CC, ElementKind::Arc, &circle_group),
            of(BC, ElementKind::Point, &circle_group),
            of(CB, ElementKind::Point, &circle_group),
            anchors(),
        ]
        .concat(),
        FigureName::Overall => {
            let mut seen = BTreeSet::new();
            [FigureName::Ab, FigureName::Bd, FigureName::Bc]
                .into_iter()
                .flat_map(layout)
                .filter(|(cell, _, _)| seen.insert(cell.clone()))
                .collect()
        }
    }
}

pub fn build_figure(name: FigureName, resolution: usize) -> Figure {
    let resolution = resolution.max(1);
    Figure {
        name,
        elements: layout(name)
            .into_iter()
            .map(|(cell, kind, group)| element(&cell, kind, group, resolution))
            .collect(),
    }
}

fn params_text(p: &CanonicalParams) -> String {
    p.discrete()
        .iter()
        .map(|(n, s)| format!("{n}={s}"))
        .chain(p.continuous().iter().map(|(n, x)| format!("{n}={x}")))
        .collect::<Vec<_>>()
        .join(";")
}

impl Figure {
    pub fn rows(&self) -> Vec<PlotRow> {
        self.elements
            .iter()
            .flat_map(|e| {
                e.samples.iter().map(move |(params, [x, y, z])| PlotRow {
                    figure: self.name.as_str(),
                    group: e.group.clone(),
                    kind: e.kind,
                    element: e.cell.to_string(),
                    sector: e.cell.sector.as_str(),
                    params: params_text(params),
                    x: *x,
                    y: *y,
                    z: *z,
                })
            })
            .collect()
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.rows() {
            w.serialize(row)?;
        }
        w.into_inner().map_err(|e| e.into_error().into())
    }

    pub fn to_svg(&self) -> String {
        render_svg(self)
    }
}

/// Orthographic projection: rotate about z by the azimuth, tilt by the
/// elevation, drop depth. Screen y points up.
pub fn project([x, y, z]: [f64; 3]) -> [f64; 2] {
    let (sa, ca) = CAMERA_AZIMUTH.sin_cos();
    let (se, ce) = CAMERA_ELEVATION.sin_cos();
    let u = x * ca - y * sa;
    let depth = x * sa + y * ca;
    [u, z * ce - depth * se]
}

fn color(sector: PairSector) -> &'static str {
    use PairSector::*;
    match sector {
        AA1 => "#4c72b0",
        AA2 => "#55a868",
        AB | BA => "#222222",
        BB => "#000000",
        BC => "#c44e52",
        CB => "#8172b2",
        CC => "#dd8452",
        BD | DB => "#222222",
        DD => "#64b5cd",
    }
}

const SVG_SIZE: f64 = 800.0;
const SVG_MARGIN: f64 = 40.0;

fn render_svg(fig: &Figure) -> String {
    let projected: Vec<Vec<[f64; 2]>> = fig
        .elements
        .iter()
        .map(|e| e.samples.iter().map(|(_, p)| project(*p)).collect())
        .collect();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in projected.iter().flatten() {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let scale = (SVG_SIZE - 2.0 * SVG_MARGIN) / span;
    let screen = |p: [f64; 2]| {
        (
            SVG_MARGIN + (p[0] - lo[0]) * scale,
            SVG_SIZE - SVG_MARGIN - (p[1] - lo[1]) * scale,
        )
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, "<title>figure {}</title>", fig.name.as_str());
    // Higher-dimensional cells first so that vertices stay visible.
    let mut order: Vec<usize> = (0..fig.elements.len()).collect();
    order.sort_by_key(|&i| fig.elements[i].kind);
    for i in order {
        let e = &fig.elements[i];
        let pts = &projected[i];
        let col = color(e.cell.sector);
        let _ = writeln!(
            s,
            r#"<g class="{}" data-group="{}" data-element="{}">"#,
            e.kind.as_str(),
            e.group,
            e.cell
        );
        match e.kind {
            ElementKind::Sheet | ElementKind::Patch | ElementKind::Arc => {
                let width = if e.kind == ElementKind::Arc { 2.0 } else { 0.6 };
                for stroke in &e.strokes {
                    let path: Vec<String> = stroke
                        .iter()
                        .map(|&k| {
                            let (x, y) = screen(pts[k]);
                            format!("{x:.2},{y:.2}")
                        })
                        .collect();
                    let _ = writeln!(
                        s,
                        r#"<polyline points="{}" fill="none" stroke="{col}" stroke-width="{width}"/>"#,
                        path.join(" ")
                    );
                }
            }
            ElementKind::Vertex | ElementKind::Point => {
                let r = if e.kind == ElementKind::Vertex { 5.0 } else { 4.0 };
                for &p in pts {
                    let (x, y) = screen(p);
                    let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{col}"/>"#);
                }
            }
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}
