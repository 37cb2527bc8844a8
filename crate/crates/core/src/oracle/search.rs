//! Direct numerical search for a simultaneous conjugator, independent of the
//! canonical-form construction.

use std::f64::consts::TAU;

use crate::pairs::CommutingPair;
use crate::sl2::SL2Matrix;

/// Residual at or below which a search is declared converged.
pub const CONVERGENCE_THRESHOLD: f64 = 1e-8;

/// Starts of the multi-start grid: rotation × log-scale × shear.
const ROTATION_STARTS: usize = 5;
const SCALE_STARTS: usize = 5;
const SHEAR_STARTS: usize = 4;
pub const START_COUNT: usize = ROTATION_STARTS * SCALE_STARTS * SHEAR_STARTS;

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatorSearchReport {
    pub best_s: SL2Matrix,
    /// Max-abs entry distance between `S⁻¹pS` and `q` at `best_s`.
    pub residual: f64,
    /// Local-descent iterations used across all starts.
    pub iterations: usize,
    pub converged: bool,
}

fn conjugator(x: &[f64; 3]) -> SL2Matrix {
    SL2Matrix::iwasawa(x[0], x[1], x[2])
}

/// Max-abs residual of conjugating `p` into `q` by `s`.
pub fn conjugation_residual(p: &CommutingPair, q: &CommutingPair, s: &SL2Matrix) -> f64 {
    p.conjugate_by(s).max_abs_diff(q)
}

/// Bound on the log-scale coordinate; beyond it the conjugator is numerically
/// meaningless.
const MAX_LOG_SCALE: f64 = 15.0;

fn objective(p: &CommutingPair, q: &CommutingPair, x: &[f64; 3]) -> f64 {
    residual_vector(p, q, x).map_or(f64::INFINITY, |r| r.iter().map(|v| v * v).sum())
}

fn residual_vector(p: &CommutingPair, q: &CommutingPair, x: &[f64; 3]) -> Option<[f64; 8]> {
    if !(x[1].abs() <= MAX_LOG_SCALE && x[0].is_finite() && x[2].is_finite()) {
        return None;
    }
    let c = p.conjugate_by(&conjugator(x));
    let d1 = c.first().mat().sub(q.first().mat());
    let d2 = c.second().mat().sub(q.second().mat());
    Some([d1.a, d1.b, d1.c, d1.d, d2.a, d2.b, d2.c, d2.d])
}

fn solve3(m: [[f64; 3]; 3], rhs: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(&m);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut mk = m;
        for (row, &r) in mk.iter_mut().zip(&rhs) {
            row[k] = r;
        }
        *slot = det(&mk) / d;
    }
    Some(out)
}

/// Levenberg–Marquardt refinement with a central-difference Jacobian.
fn polish(p: &CommutingPair, q: &CommutingPair, start: [f64; 3], iterations: usize) -> [f64; 3] {
    let cost = |r: &[f64; 8]| r.iter().map(|v| v * v).sum::<f64>();
    let mut x = start;
    let Some(mut r) = residual_vector(p, q, &x) else {
        return x;
    };
    let mut damping = 1e-3;
    for _ in 0..iterations {
        let mut jac = [[0.0; 3]; 8];
        for k in 0..3 {
            let h = 1e-7 * x[k].abs().max(1.0);
            let (mut xp, mut xm) = (x, x);
            xp[k] += h;
            xm[k] -= h;
            let (Some(rp), Some(rm)) = (residual_vector(p, q, &xp), residual_vector(p, q, &xm)) else {
                return x;
            };
            for i in 0..8 {
                jac[i][k] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let mut jtj = [[0.0; 3]; 3];
        let mut jtr = [0.0; 3];
        for i in 0..8 {
            for a in 0..3 {
                jtr[a] -= jac[i][a] * r[i];
                for b in 0..3 {
                    jtj[a][b] += jac[i][a] * jac[i][b];
                }
            }
        }
        let mut improved = false;
        while damping < 1e12 {
            let mut m = jtj;
            for (a, row) in m.iter_mut().enumerate() {
                row[a] += damping * jtj[a][a].max(1e-12);
            }
            let Some(delta) = solve3(m, jtr) else { break };
            let trial = [x[0] + delta[0], x[1] + delta[1], x[2] + delta[2]];
            match residual_vector(p, q, &trial) {
                Some(rt) if cost(&rt) < cost(&r) => {
                    x = trial;
                    r = rt;
                    damping = (damping * 0.1).max(1e-15);
                    improved = true;
                    break;
                }
                _ => damping *= 10.0,
            }
        }
        if !improved {
            break;
        }
    }
    x
}

/// Pattern-search results with a residual above this are not worth polishing.
const POLISH_BELOW: f64 = 1e-2;
const POLISH_ITERATIONS: usize = 50;

fn start_points() -> impl Iterator<Item = [f64; 3]> {
    (0..ROTATION_STARTS).flat_map(|i| {
        (0..SCALE_STARTS).flat_map(move |j| {
            (0..SHEAR_STARTS).map(move |k| {
                let t = TAU * i as f64 / ROTATION_STARTS as f64;
                let s = -2.5 + 5.0 * j as f64 / (SCALE_STARTS - 1) as f64;
                let h = -2.0 + 4.0 * k as f64 / (SHEAR_STARTS - 1) as f64;
                [t, s, h]
            })
        })
    })
}

/// Hooke–Jeeves pattern search: coordinate probes with shrinking step,
/// followed by pattern moves along the last successful displacement.
fn pattern_search(f: impl Fn(&[f64; 3]) -> f64, start: [f64; 3], budget: usize, stop_below: f64) -> ([f64; 3], usize) {
    let mut base = start;
    let mut f_base = f(&base);
    let mut step = 0.5;
    let mut iterations = 0;

    let explore = |point: [f64; 3], f_point: f64, step: f64| -> ([f64; 3], f64) {
        let mut x = point;
        let mut fx = f_point;
        for i in 0..3 {
            for dir in [1.0, -1.0] {
                let mut trial = x;
                trial[i] += dir * step;
                let ft = f(&trial);
                if ft < fx {
                    x = trial;
                    fx = ft;
                    break;
                }
            }
        }
        (x, fx)
    };

    while iterations < budget && step > 1e-15 && f_base > stop_below {
        iterations += 1;
        let (x, fx) = explore(base, f_base, step);
        if fx < f_base {
            // Pattern moves while they keep paying off.
            let mut prev = base;
            let mut cur = x;
            let mut f_cur = fx;
            loop {
                let pattern = [2.0 * cur[0] - prev[0], 2.0 * cur[1] - prev[1], 2.0 * cur[2] - prev[2]];
                let f_pattern = f(&pattern);
                let (y, fy) = explore(pattern, f_pattern, step);
                if fy < f_cur {
                    prev = cur;
                    cur = y;
                    f_cur = fy;
                    iterations += 1;
                    if iterations >= budget {
                        break;
                    }
                } else {
                    break;
                }
            }
            base = cur;
            f_base = f_cur;
        } else {
            step *= 0.5;
        }
    }
    (base, iterations)
}

/// Searches SL(2,R) for `S` with `S⁻¹pS = q`, using 100 starts and at most
/// `budget` descent iterations per start, each promising start finished by a
/// damped Gauss–Newton polish. Stops at the first converged start.
pub fn search_conjugator(p: &CommutingPair, q: &CommutingPair, budget: usize) -> ConjugatorSearchReport {
    let f = |x: &[f64; 3]| objective(p, q, x);
    // Squared-norm target comfortably below the max-abs threshold.
    let stop_below = (0.01 * CONVERGENCE_THRESHOLD).powi(2);

    let mut best: Option<(SL2Matrix, f64)> = None;
    let mut iterations = 0;
    for start in start_points() {
        let (mut x, used) = pattern_search(f, start, budget, stop_below);
        iterations += used;
        if conjugation_residual(p, q, &conjugator(&x)) <= POLISH_BELOW {
            x = polish(p, q, x, POLISH_ITERATIONS);
        }
        let s = conjugator(&x);
        let residual = conjugation_residual(p, q, &s);
        if best.as_ref().map_or(true, |(_, r)| residual < *r) {
            best = Some((s, residual));
        }
        if residual <= CONVERGENCE_THRESHOLD {
            break;
        }
    }
    let (best_s, residual) = best.expect("at least one start");
    ConjugatorSearchReport {
        best_s,
        residual,
        iterations,
        converged: residual <= CONVERGENCE_THRESHOLD,
    }
}
