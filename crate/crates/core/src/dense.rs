//! Brute-force statevector oracle. Qubit 0 is the most significant bit.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{HypergraphSpec, NORM_TOL};
use crate::transforms::{Pauli, SingleQubitOp};

pub const DEFAULT_DENSE_CAP: usize = 24;
pub const DENSE_CAP_ENV: &str = "HYPERSTATE_DENSE_CAP";

/// Largest qubit count allowed on dense paths (`HYPERSTATE_DENSE_CAP` overrides).
pub fn dense_cap() -> usize {
    std::env::var(DENSE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DENSE_CAP)
}

fn check_cap(n: usize) -> Result<()> {
    let cap = dense_cap();
    if n > cap {
        return Err(Error::DenseCapExceeded { n, cap });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amp: Vec<Complex64>,
}

impl DenseState {
    pub fn new(n: usize, amp: Vec<Complex64>) -> Result<Self> {
        check_cap(n)?;
        if amp.len() != 1usize << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, got: amp.len() });
        }
        let s = DenseState { n, amp };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(s)
    }

    /// Amplitude vector without the norm check, e.g. the image of a
    /// non-unitary operator.
    pub fn from_vector(n: usize, amp: Vec<Complex64>) -> Result<Self> {
        check_cap(n)?;
        if amp.len() != 1usize << n {
            return Err(Error::DimensionMismatch { expected: 1 << n, got: amp.len() });
        }
        Ok(DenseState { n, amp })
    }

    pub(crate) fn from_raw(n: usize, amp: Vec<Complex64>) -> Self {
        DenseState { n, amp }
    }

    pub fn uniform(n: usize) -> Result<Self> {
        check_cap(n)?;
        let a = Complex64::new(2f64.powf(-(n as f64) / 2.0), 0.0);
        Ok(DenseState { n, amp: vec![a; 1 << n] })
    }

    pub fn ghz(n: usize) -> Result<Self> {
        check_cap(n)?;
        let mut amp = vec![Complex64::new(0.0, 0.0); 1 << n];
        amp[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amp[(1 << n) - 1] += Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Ok(DenseState { n, amp })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amp.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.amp.iter().all(|a| a.im.abs() <= tol)
    }

    fn bit(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    /// Applies the generalized controlled-Z on the qubits of `mask`.
    pub fn apply_controlled_z(&mut self, mask: u64) {
        let mask = mask as usize;
        for (x, a) in self.amp.iter_mut().enumerate() {
            if x & mask == mask {
                *a = -*a;
            }
        }
    }

    fn apply_single(&mut self, op: &SingleQubitOp, site: usize) {
        let b = self.bit(site);
        for x in 0..self.amp.len() {
            if x & b == 0 {
                let v = op.apply([self.amp[x], self.amp[x | b]]);
                self.amp[x] = v[0];
                self.amp[x | b] = v[1];
            }
        }
    }
}

/// `prod_e C_e |+>^N`.
pub fn build_dense(spec: &HypergraphSpec) -> Result<DenseState> {
    let n = spec.n_qubits();
    check_cap(n)?;
    let dim = 1usize << n;
    // parity of the number of hyperedges contained in each basis label
    let mut parity = vec![0u8; dim];
    for m in spec.edge_masks() {
        parity[m as usize] ^= 1;
    }
    for i in 0..n {
        let b = 1usize << i;
        for x in 0..dim {
            if x & b != 0 {
                parity[x] ^= parity[x ^ b];
            }
        }
    }
    let a = 2f64.powf(-(n as f64) / 2.0);
    let amp = parity
        .into_iter()
        .map(|p| Complex64::new(if p == 1 { -a } else { a }, 0.0))
        .collect();
    Ok(DenseState { n, amp })
}

/// Applies `ops[i]` on qubit `sites[i]`.
pub fn apply_local(state: &DenseState, ops: &[SingleQubitOp], sites: &[usize]) -> Result<DenseState> {
    if ops.len() != sites.len() {
        return Err(Error::DimensionMismatch { expected: ops.len(), got: sites.len() });
    }
    let mut seen = vec![false; state.n];
    for &s in sites {
        if s >= state.n {
            return Err(Error::DimensionMismatch { expected: state.n, got: s });
        }
        if seen[s] {
            return Err(Error::Precondition(format!("site {s} listed twice")));
        }
        seen[s] = true;
    }
    let mut out = state.clone();
    for (op, &s) in ops.iter().zip(sites) {
        out.apply_single(op, s);
    }
    Ok(out)
}

/// `op^{(x)N}` on every qubit.
pub fn apply_all(state: &DenseState, op: &SingleQubitOp) -> DenseState {
    let mut out = state.clone();
    for q in 0..state.n {
        out.apply_single(op, q);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliString {
    pub letters: Vec<Pauli>,
    pub prefactor: Complex64,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliString { letters, prefactor: Complex64::new(1.0, 0.0) }
    }

    pub fn with_prefactor(mut self, z: Complex64) -> Self {
        self.prefactor = z;
        self
    }

    pub fn parse(s: &str) -> Option<Self> {
        s.chars()
            .map(|c| Pauli::parse(&c.to_string()))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }
}

/// `<psi|p|psi>`.
pub fn pauli_string_expectation(state: &DenseState, p: &PauliString) -> Result<Complex64> {
    let n = state.n;
    if p.letters.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.letters.len() });
    }
    let mut flip = 0usize;
    let mut ymask = 0usize;
    let mut zmask = 0usize;
    for (q, l) in p.letters.iter().enumerate() {
        let b = 1 << (n - 1 - q);
        match l {
            Pauli::I => {}
            Pauli::X => flip |= b,
            Pauli::Y => {
                flip |= b;
                ymask |= b;
            }
            Pauli::Z => zmask |= b,
        }
    }
    let ny = ymask.count_ones() as usize;
    let base = match ny % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, a) in state.amp.iter().enumerate() {
        // Y|b> = i(-1)^b |1-b>, Z|b> = (-1)^b |b>
        let minus = ((x & ymask).count_ones() + (x & zmask).count_ones()) % 2 == 1;
        let v = if minus { -*a } else { *a };
        acc += state.amp[x ^ flip].conj() * v;
    }
    Ok(acc * base * p.prefactor)
}

/// `<a|b>`.
pub fn overlap(a: &DenseState, b: &DenseState) -> Result<Complex64> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch { expected: a.n, got: b.n });
    }
    Ok(a.amp.iter().zip(&b.amp).map(|(x, y)| x.conj() * y).sum())
}

pub fn equal_up_to_global_phase(a: &DenseState, b: &DenseState, tol: f64) -> Result<bool> {
    Ok((overlap(a, b)?.norm() - 1.0).abs() < tol)
}

/// `h_i = X_i prod_{e containing i} C_{e \ i}`, with `C_{{}} = -1`.
pub fn apply_nonlocal_stabilizer(state: &DenseState, spec: &HypergraphSpec, vertex: usize) -> Result<DenseState> {
    let n = state.n;
    if spec.n_qubits() != n || vertex >= n {
        return Err(Error::DimensionMismatch { expected: n, got: vertex });
    }
    let b = 1u64 << (n - 1 - vertex);
    let reduced: Vec<u64> = spec.edge_masks().into_iter().filter(|m| m & b != 0).map(|m| m & !b).collect();
    let mut out = state.clone();
    for m in reduced {
        if m == 0 {
            for a in out.amp.iter_mut() {
                *a = -*a;
            }
        } else {
            out.apply_controlled_z(m);
        }
    }
    out.apply_single(&Pauli::X.matrix(), vertex);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductOptimum {
    pub geometric_measure: f64,
    pub overlap: f64,
    /// Per-qubit local states `(cos t, e^{i p} sin t)`.
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    pub restarts: usize,
    pub converged_restarts: usize,
    pub seed: u64,
    pub iterations: usize,
}

pub const ALS_TOL: f64 = 1e-13;
pub const ALS_MAX_ITER: usize = 10_000;
pub const DEFAULT_RESTARTS: usize = 32;

/// Contracts `psi` against `conj(v_p)` for every site except `q`.
fn environment(amp: &[Complex64], n: usize, locals: &[[Complex64; 2]], q: usize) -> [Complex64; 2] {
    let mut cur: Vec<Complex64> = amp.to_vec();
    // trailing sites: lowest bit first
    for p in (q + 1..n).rev() {
        let v = locals[p];
        let (c0, c1) = (v[0].conj(), v[1].conj());
        cur = cur.chunks_exact(2).map(|c| c0 * c[0] + c1 * c[1]).collect();
    }
    // leading sites: highest bit first
    for v in locals.iter().take(q) {
        let half = cur.len() / 2;
        let (c0, c1) = (v[0].conj(), v[1].conj());
        cur = (0..half).map(|i| c0 * cur[i] + c1 * cur[half + i]).collect();
    }
    [cur[0], cur[1]]
}

fn normalize2(v: [Complex64; 2]) -> Option<[Complex64; 2]> {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    (n > 1e-300).then(|| [v[0] / n, v[1] / n])
}

struct Run {
    overlap: f64,
    locals: Vec<[Complex64; 2]>,
    converged: bool,
    iterations: usize,
}

fn als_run(amp: &[Complex64], n: usize, mut locals: Vec<[Complex64; 2]>, real_only: bool) -> Run {
    let mut last = 0.0;
    for it in 1..=ALS_MAX_ITER {
        let mut cur = 0.0;
        for q in 0..n {
            let mut e = environment(amp, n, &locals, q);
            if real_only {
                e = [Complex64::new(e[0].re, 0.0), Complex64::new(e[1].re, 0.0)];
            }
            match normalize2(e) {
                Some(v) => {
                    cur = (e[0].norm_sqr() + e[1].norm_sqr()).sqrt();
                    locals[q] = v;
                }
                None => cur = 0.0,
            }
        }
        if (cur - last).abs() < ALS_TOL && it > 1 {
            return Run { overlap: cur, locals, converged: true, iterations: it };
        }
        last = cur;
    }
    Run { overlap: last, locals, converged: false, iterations: ALS_MAX_ITER }
}

fn random_locals(n: usize, rng: &mut ChaCha8Rng, real_only: bool) -> Vec<[Complex64; 2]> {
    (0..n)
        .map(|_| {
            if real_only {
                let t: f64 = rng.random_range(0.0..std::f64::consts::PI);
                [Complex64::new(t.cos(), 0.0), Complex64::new(t.sin(), 0.0)]
            } else {
                let z: f64 = rng.random_range(-1.0..1.0);
                let phi: f64 = rng.random_range(0.0..2.0 * std::f64::consts::PI);
                let t = z.acos() / 2.0;
                [Complex64::new(t.cos(), 0.0), Complex64::from_polar(t.sin(), phi)]
            }
        })
        .collect()
}

fn local_angles(v: [Complex64; 2]) -> (f64, f64) {
    let theta = v[1].norm().atan2(v[0].norm());
    let phi = if v[0].norm() < 1e-15 || v[1].norm() < 1e-15 {
        0.0
    } else {
        (v[1].arg() - v[0].arg()).rem_euclid(2.0 * std::f64::consts::PI)
    };
    (theta, phi)
}

/// Alternating rank-1 approximation, best over seeded random restarts.
pub fn product_state_optimize(state: &DenseState, restarts: usize, real_only: bool, seed: u64) -> Result<ProductOptimum> {
    let n = state.n;
    check_cap(n)?;
    if restarts == 0 {
        return Err(Error::Precondition("at least one restart is needed".into()));
    }
    if real_only && !state.is_real(1e-14) {
        return Err(Error::Precondition("real-only optimization needs a real state".into()));
    }
    let runs: Vec<Run> = (0..restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let init = random_locals(n, &mut rng, real_only);
            als_run(&state.amp, n, init, real_only)
        })
        .collect();
    let converged = runs.iter().filter(|r| r.converged).count();
    if converged == 0 {
        return Err(Error::NotConverged { iterations: ALS_MAX_ITER });
    }
    let mut best = 0;
    for (i, r) in runs.iter().enumerate() {
        if r.overlap > runs[best].overlap {
            best = i;
        }
    }
    let b = &runs[best];
    let (thetas, phis) = b.locals.iter().map(|&v| local_angles(v)).unzip();
    Ok(ProductOptimum {
        geometric_measure: 1.0 - b.overlap * b.overlap,
        overlap: b.overlap,
        thetas,
        phis,
        restarts,
        converged_restarts: converged,
        seed,
        iterations: b.iterations,
    })
}

/// Local states of a product optimum as vectors.
pub fn local_states(opt: &ProductOptimum) -> Vec<[Complex64; 2]> {
    opt.thetas
        .iter()
        .zip(&opt.phis)
        .map(|(&t, &p)| [Complex64::new(t.cos(), 0.0), Complex64::from_polar(t.sin(), p)])
        .collect()
}
