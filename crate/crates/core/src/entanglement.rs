//! Geometric measure of entanglement for symmetric states.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binom::Pascal;
use crate::dense::{product_state_optimize, DenseState};
use crate::error::{Error, Result};
use crate::hypergraph::{build_symmetric, classify_cardinalities, HypergraphSpec, StabilizerClass, SymmetricState};
use crate::numeric::{golden_section_max, periodic_local_maxima};
use crate::transforms::SingleQubitOp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    SymmetricNumeric,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoMeasureResult {
    pub value: f64,
    pub theta: f64,
    pub phi: f64,
    pub method: Method,
    pub residual_vs_alternate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsResult {
    pub lower: f64,
    pub upper: f64,
    pub numeric: Option<f64>,
}

impl BoundsResult {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lower - tol && x <= self.upper + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    ThreeUniformX,
    ThreeUniformY,
    FiveUniformX,
    FiveUniformY,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    Exact(GeoMeasureResult),
    Bounds(BoundsResult),
}

pub const THETA_GRID: usize = 4096;
pub const PLANE_GRID: usize = 512;
pub const REFINE_TOL: f64 = 1e-12;
const SEEDS: usize = 6;

/// `<psi|(cos t|0> + e^{ip} sin t|1>)^N>`.
pub fn symmetric_overlap(s: &SymmetricState, theta: f64, phi: f64) -> Complex64 {
    let n = s.n_qubits();
    let pascal = Pascal::new(n);
    overlap_with(&pascal, s.amplitudes(), theta, phi)
}

fn overlap_with(pascal: &Pascal, amp: &[Complex64], theta: f64, phi: f64) -> Complex64 {
    let n = amp.len() - 1;
    let (sn, cs) = theta.sin_cos();
    let b = Complex64::from_polar(sn, phi);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut bw = Complex64::new(1.0, 0.0);
    for (w, a) in amp.iter().enumerate() {
        acc += a.conj() * bw * cs.powi((n - w) as i32) * pascal.get(n, w);
        bw *= b;
    }
    acc
}

fn maximize_theta<F: Fn(f64) -> f64 + Sync>(f: F) -> (f64, f64) {
    let h = PI / THETA_GRID as f64;
    let grid: Vec<f64> = (0..THETA_GRID).into_par_iter().map(|i| f(i as f64 * h)).collect();
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in periodic_local_maxima(&grid, SEEDS) {
        let t0 = i as f64 * h;
        let (t, v) = golden_section_max(&f, t0 - h, t0 + h, REFINE_TOL);
        let t = t.rem_euclid(PI);
        if v > best.1 + 1e-15 || (v > best.1 - 1e-15 && t < best.0) {
            best = (t, v);
        }
    }
    best
}

/// Golden-section line searches along the principal axes of a finite-difference
/// Hessian; follows curved ridges where coordinate search stalls.
fn principal_axis_polish<F: Fn(f64, f64) -> f64>(f: &F, mut t: f64, mut p: f64, mut v: f64, mut radius: f64) -> (f64, f64, f64) {
    let h = 1e-4;
    for _ in 0..500 {
        let htt = (f(t + h, p) - 2.0 * v + f(t - h, p)) / (h * h);
        let hpp = (f(t, p + h) - 2.0 * v + f(t, p - h)) / (h * h);
        let htp = (f(t + h, p + h) - f(t + h, p - h) - f(t - h, p + h) + f(t - h, p - h)) / (4.0 * h * h);
        let angle = 0.5 * (2.0 * htp).atan2(htt - hpp);
        let mut moved: f64 = 0.0;
        let start = v;
        for dir in [angle, angle + 0.5 * PI] {
            let (dt, dp) = (dir.cos(), dir.sin());
            let (s, sv) = golden_section_max(|x| f(t + x * dt, p + x * dp), -radius, radius, REFINE_TOL);
            if sv > v {
                t += s * dt;
                p += s * dp;
                v = sv;
                moved = moved.max(s.abs());
            }
        }
        radius = (4.0 * moved).max(1e-9).min(radius);
        if moved < 1e-11 || (v - start < 1e-17 && moved < 1e-8) {
            break;
        }
    }
    (t, p, v)
}

fn maximize_plane<F: Fn(f64, f64) -> f64 + Sync>(f: F) -> (f64, f64, f64) {
    let ht = PI / PLANE_GRID as f64;
    let hp = 2.0 * PI / PLANE_GRID as f64;
    let grid: Vec<(usize, usize, f64)> = (0..PLANE_GRID * PLANE_GRID)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / PLANE_GRID, k % PLANE_GRID);
            (i, j, f(i as f64 * ht, j as f64 * hp))
        })
        .collect();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[b].2.total_cmp(&grid[a].2).then(a.cmp(&b)));
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for &k in order.iter().take(SEEDS) {
        let (mut t, mut p) = (grid[k].0 as f64 * ht, grid[k].1 as f64 * hp);
        let mut v = grid[k].2;
        let (mut st, mut sp) = (ht, hp);
        for _ in 0..2000 {
            let (t1, _) = golden_section_max(|x| f(x, p), t - st, t + st, REFINE_TOL);
            let (p1, v1) = golden_section_max(|y| f(t1, y), p - sp, p + sp, REFINE_TOL);
            let moved = (t1 - t).abs().max((p1 - p).abs());
            let gain = v1 - v;
            t = t1;
            p = p1;
            v = v.max(v1);
            st = (2.0 * moved).clamp(1e-9, ht);
            sp = (2.0 * moved).clamp(1e-9, hp);
            if gain.abs() < 1e-16 && moved < 1e-10 {
                break;
            }
        }
        let (t, p, v) = principal_axis_polish(&f, t, p, v, ht);
        let t = t.rem_euclid(PI);
        let p = p.rem_euclid(2.0 * PI);
        if v > best.2 + 1e-15 || (v > best.2 - 1e-15 && t < best.0) {
            best = (t, p, v);
        }
    }
    best
}

/// `1 - max |<psi|phi^{(x)N}>|^2` over symmetric product states.
pub fn geomeasure_symmetric_numeric(s: &SymmetricState, allow_phase: bool) -> Result<GeoMeasureResult> {
    let n = s.n_qubits();
    if n < 3 {
        return Err(Error::Precondition(format!("symmetric optimum needs N >= 3, got {n}")));
    }
    let pascal = Pascal::new(n);
    let amp = s.amplitudes();
    let (theta, phi, best) = if allow_phase {
        maximize_plane(|t, p| overlap_with(&pascal, amp, t, p).norm_sqr())
    } else {
        let (t, v) = maximize_theta(|t| overlap_with(&pascal, amp, t, 0.0).norm_sqr());
        (t, 0.0, v)
    };
    Ok(GeoMeasureResult {
        value: 1.0 - best,
        theta,
        phi,
        method: Method::SymmetricNumeric,
        residual_vs_alternate: None,
    })
}

/// Multi-start dense optimization over all product states.
pub fn geomeasure_oracle(d: &DenseState, restarts: usize, seed: u64) -> Result<GeoMeasureResult> {
    let real = d.is_real(1e-14);
    let opt = product_state_optimize(d, restarts, real, seed)?;
    Ok(GeoMeasureResult {
        value: opt.geometric_measure,
        theta: opt.thetas.first().copied().unwrap_or(0.0),
        phi: opt.phis.first().copied().unwrap_or(0.0),
        method: Method::Oracle,
        residual_vs_alternate: None,
    })
}

/// `(cos^N(pi/8) - sin^N(pi/8)) / sqrt 2`.
pub fn five_uniform_lambda(n: usize) -> f64 {
    let (s, c) = (PI / 8.0).sin_cos();
    (c.powi(n as i32) - s.powi(n as i32)) / std::f64::consts::SQRT_2
}

pub fn closed_form_family(n: usize, k: &[usize]) -> Option<Family> {
    match (k, n % 8) {
        ([3], 2) | ([3], 6) => Some(Family::ThreeUniformX),
        ([3], 0) | ([3], 4) => Some(Family::ThreeUniformY),
        ([5], 4) => Some(Family::FiveUniformX),
        ([5], 0) => Some(Family::FiveUniformY),
        _ => None,
    }
}

/// Exact values or bounds for the covered three- and five-uniform families.
pub fn geomeasure_closed(spec: &HypergraphSpec) -> Result<ClosedForm> {
    let n = spec.n_qubits();
    let k = spec
        .cardinalities()
        .ok_or_else(|| Error::Precondition("closed forms need a cardinality-vector spec".into()))?;
    let fam = closed_form_family(n, k).ok_or_else(|| Error::UnsupportedFamily { n, k: k.to_vec() })?;
    let expect = match fam {
        Family::ThreeUniformX | Family::FiveUniformX => StabilizerClass::PlusX,
        _ => StabilizerClass::PlusY,
    };
    debug_assert_eq!(classify_cardinalities(n, k), expect);
    let nf = n as f64;
    let inv_sqrt = 2f64.powf(-nf / 2.0);
    let inv = 2f64.powf(-nf);
    let exact = |value: f64, theta: f64| {
        ClosedForm::Exact(GeoMeasureResult {
            value,
            theta,
            phi: 0.0,
            method: Method::ClosedForm,
            residual_vs_alternate: None,
        })
    };
    Ok(match fam {
        Family::ThreeUniformX => exact(0.75 - inv_sqrt - inv, PI / 4.0),
        Family::ThreeUniformY => ClosedForm::Bounds(BoundsResult {
            lower: 0.75 - inv - inv_sqrt,
            upper: 0.75 - inv,
            numeric: None,
        }),
        Family::FiveUniformX => {
            let l = five_uniform_lambda(n);
            exact(0.75 - l - l * l, PI / 8.0)
        }
        Family::FiveUniformY => {
            let l = five_uniform_lambda(n);
            ClosedForm::Bounds(BoundsResult { lower: 0.75 - l - l * l, upper: 0.75, numeric: None })
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureBound {
    pub label: &'static str,
    pub r: u32,
    pub n: usize,
    pub lambda: f64,
    pub bound: f64,
}

/// Conjectured lower bound `3/4 - lambda - lambda^2` for `(2^{r-1}+1)`-uniform
/// X-stabilized states. Never asserted; reported for comparison only.
pub fn conjecture_lambda(r: u32, n: usize) -> Result<ConjectureBound> {
    let p = 1usize << r;
    if r < 3 || n % p != p / 2 || n < p / 2 + 1 {
        return Err(Error::Precondition(format!(
            "conjecture needs r >= 3 and N = {} mod {p} with N >= k (r={r}, N={n})",
            p / 2
        )));
    }
    let pf = p as f64;
    let mut lambda = 0.0;
    for j in (1..p).step_by(2) {
        let x = PI * j as f64 / pf;
        lambda += x.cos().signum() * (PI / 4.0 - x).cos().powi(n as i32) / (2.0 * x).cos().abs();
    }
    lambda *= 2.0 / pf;
    Ok(ConjectureBound { label: "CONJECTURE", r, n, lambda, bound: 0.75 - lambda - lambda * lambda })
}

/// State with a single hyperedge on all `N` qubits, optimized over real
/// symmetric product states.
pub fn single_edge_geomeasure(n: usize) -> Result<GeoMeasureResult> {
    if n < 3 {
        return Err(Error::Precondition(format!("single-edge family needs N >= 3, got {n}")));
    }
    let nf = n as i32;
    let scale = 2f64.powi(-nf);
    let f = |t: f64| {
        let (b, a) = t.sin_cos();
        let v = (a + b).powi(nf) - 2.0 * b.powi(nf);
        v * v * scale
    };
    let (theta, best) = maximize_theta(f);
    Ok(GeoMeasureResult {
        value: 1.0 - best,
        theta,
        phi: 0.0,
        method: Method::SymmetricNumeric,
        residual_vs_alternate: None,
    })
}

/// Rotation angle taking the four-qubit three-uniform state to nonnegative form.
pub fn h43_rotation_angle() -> f64 {
    0.5 * (0.5 * (5f64.sqrt() - 1.0)).atan()
}

pub fn h43_rotation() -> SingleQubitOp {
    SingleQubitOp::rotation(h43_rotation_angle())
}

pub fn h43_exact() -> f64 {
    (25.0 - 3.0 * 5f64.sqrt()) / 32.0
}

pub fn h43_rotated() -> Result<SymmetricState> {
    let s = build_symmetric(&HypergraphSpec::uniform(4, &[3])?)?;
    crate::transforms::apply_tensor_power(&s, &h43_rotation())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CyclicMaxReport {
    pub holds: bool,
    pub grid_max: f64,
    pub lattice_value: f64,
    pub argmax: f64,
}

/// Scans `f(x) = sum_j cos^N(x + pi j/2^r)` over one period and checks that
/// no grid value exceeds the value on the lattice `pi/2^r Z`.
pub fn cyclic_cos_max_check(r: u32, n: usize, grid: usize) -> Result<CyclicMaxReport> {
    if n % 2 == 1 || r < 1 || grid == 0 {
        return Err(Error::Precondition(format!("needs even N, r >= 1, grid > 0 (r={r}, N={n})")));
    }
    let p = 1usize << r;
    let step = PI / p as f64;
    let f = |x: f64| (0..p).map(|j| (x + step * j as f64).cos().powi(n as i32)).sum::<f64>();
    let lattice_value = f(0.0);
    let mut grid_max = f64::NEG_INFINITY;
    let mut argmax = 0.0;
    for i in 0..grid {
        let x = step * i as f64 / grid as f64;
        let v = f(x);
        if v > grid_max {
            grid_max = v;
            argmax = x;
        }
    }
    Ok(CyclicMaxReport { holds: grid_max <= lattice_value + 1e-9, grid_max, lattice_value, argmax })
}
