//! Hypergraph specifications, symmetric states and local Pauli stabilizers.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::binom::{binomial_is_odd, Pascal};
use crate::dense::{dense_cap, DenseState};
use crate::error::{Error, Result};
use crate::numeric::KahanSum;

pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Edges {
    /// Every hyperedge of each listed cardinality, sorted ascending.
    Cardinalities(Vec<usize>),
    /// Explicit hyperedges, each a sorted vertex list.
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphSpec {
    n: usize,
    edges: Edges,
}

impl HypergraphSpec {
    /// Complete hypergraph containing every edge of each cardinality in `k`.
    pub fn uniform(n: usize, k: &[usize]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n_qubits must be at least 1".into()));
        }
        let mut ks = k.to_vec();
        ks.sort_unstable();
        for w in ks.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidSpec(format!("duplicate cardinality {}", w[0])));
            }
        }
        if let Some(&bad) = ks.iter().find(|&&ki| ki == 0 || ki > n) {
            return Err(Error::InvalidSpec(format!(
                "cardinality {bad} outside 1..={n}"
            )));
        }
        Ok(HypergraphSpec { n, edges: Edges::Cardinalities(ks) })
    }

    /// Hypergraph from an explicit edge list; repeated edges cancel in pairs.
    pub fn explicit(n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n_qubits must be at least 1".into()));
        }
        let mut counts: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for e in edges {
            if e.is_empty() {
                return Err(Error::InvalidSpec("empty hyperedge".into()));
            }
            let mut e = e.clone();
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidSpec(format!("repeated vertex in edge {e:?}")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidSpec(format!("vertex {v} out of range for n={n}")));
            }
            *counts.entry(e).or_insert(0) += 1;
        }
        let kept = counts
            .into_iter()
            .filter(|(_, c)| c % 2 == 1)
            .map(|(e, _)| e)
            .collect();
        Ok(HypergraphSpec { n, edges: Edges::Explicit(kept) })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &Edges {
        &self.edges
    }

    pub fn cardinalities(&self) -> Option<&[usize]> {
        match &self.edges {
            Edges::Cardinalities(k) => Some(k),
            Edges::Explicit(_) => None,
        }
    }

    fn require_cardinalities(&self) -> Result<&[usize]> {
        self.cardinalities().ok_or_else(|| {
            Error::Precondition("operation needs a cardinality-vector spec".into())
        })
    }

    /// Bit masks of every hyperedge, qubit 0 being the most significant bit.
    pub fn edge_masks(&self) -> Vec<u64> {
        let n = self.n;
        let bit = |v: usize| 1u64 << (n - 1 - v);
        match &self.edges {
            Edges::Explicit(es) => es.iter().map(|e| e.iter().map(|&v| bit(v)).sum()).collect(),
            Edges::Cardinalities(ks) => {
                assert!(n < 64, "edge enumeration needs n < 64");
                (0u64..1 << n)
                    .filter(|x| ks.contains(&(x.count_ones() as usize)))
                    .collect()
            }
        }
    }
}

impl fmt::Display for HypergraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.edges {
            Edges::Cardinalities(k) => write!(f, "H(n={}, k={:?})", self.n, k),
            Edges::Explicit(e) => write!(f, "H(n={}, edges={:?})", self.n, e),
        }
    }
}

/// `f(w) = sum_i C(w, k_i) mod 2`.
pub fn weight_sign(k: &[usize], w: usize) -> u8 {
    k.iter().filter(|&&ki| binomial_is_odd(w, ki)).count() as u8 % 2
}

/// Per-basis-element amplitudes indexed by Hamming weight.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricState {
    n: usize,
    amp: Vec<Complex64>,
}

pub fn symmetric_norm_sqr(amp: &[Complex64]) -> f64 {
    let n = amp.len() - 1;
    let pascal = Pascal::new(n);
    let mut s = KahanSum::new();
    for (w, a) in amp.iter().enumerate() {
        s.add(pascal.get(n, w) * a.norm_sqr());
    }
    s.value()
}

impl SymmetricState {
    pub fn new(amp: Vec<Complex64>) -> Result<Self> {
        if amp.len() < 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: amp.len() });
        }
        let norm = symmetric_norm_sqr(&amp);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(SymmetricState { n: amp.len() - 1, amp })
    }

    /// Rescales arbitrary nonzero weight amplitudes to unit norm.
    pub fn normalized(amp: Vec<Complex64>) -> Result<Self> {
        if amp.len() < 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: amp.len() });
        }
        let norm = symmetric_norm_sqr(&amp).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(amp.into_iter().map(|a| a / norm).collect())
    }

    pub fn ghz(n: usize) -> Result<Self> {
        let mut amp = vec![Complex64::new(0.0, 0.0); n + 1];
        amp[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amp[n] += Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::normalized(amp)
    }

    /// `|+>^n`.
    pub fn plus(n: usize) -> Result<Self> {
        let a = Complex64::new(2f64.powf(-(n as f64) / 2.0), 0.0);
        Self::new(vec![a; n + 1])
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amp
    }

    pub fn norm_sqr(&self) -> f64 {
        symmetric_norm_sqr(&self.amp)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &SymmetricState) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        let pascal = Pascal::new(self.n);
        Ok(self
            .amp
            .iter()
            .zip(&other.amp)
            .enumerate()
            .map(|(w, (a, b))| a.conj() * b * pascal.get(self.n, w))
            .sum())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.amp.iter().all(|a| a.im.abs() <= tol)
    }
}

/// `amp[w] = (-1)^{f(w)} / sqrt(2^N)`.
pub fn build_symmetric(spec: &HypergraphSpec) -> Result<SymmetricState> {
    let k = spec.require_cardinalities()?;
    let n = spec.n_qubits();
    let mag = 2f64.powf(-(n as f64) / 2.0);
    let amp = (0..=n)
        .map(|w| {
            let s = if weight_sign(k, w) == 1 { -mag } else { mag };
            Complex64::new(s, 0.0)
        })
        .collect();
    SymmetricState::new(amp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilizerClass {
    #[serde(rename = "+X")]
    PlusX,
    #[serde(rename = "-X")]
    MinusX,
    #[serde(rename = "+Y")]
    PlusY,
    #[serde(rename = "none")]
    Unstabilized,
}

impl StabilizerClass {
    pub fn label(self) -> &'static str {
        match self {
            StabilizerClass::PlusX => "+X",
            StabilizerClass::MinusX => "-X",
            StabilizerClass::PlusY => "+Y",
            StabilizerClass::Unstabilized => "none",
        }
    }

    /// `(pauli, eigenvalue)` of the stabilizer, if any.
    pub fn stabilizer(self) -> Option<(crate::transforms::Pauli, i8)> {
        use crate::transforms::Pauli;
        match self {
            StabilizerClass::PlusX => Some((Pauli::X, 1)),
            StabilizerClass::MinusX => Some((Pauli::X, -1)),
            StabilizerClass::PlusY => Some((Pauli::Y, 1)),
            StabilizerClass::Unstabilized => None,
        }
    }
}

impl fmt::Display for StabilizerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Palindrome test on the weight sign function.
pub fn classify_cardinalities(n: usize, k: &[usize]) -> StabilizerClass {
    let f: Vec<u8> = (0..=n).map(|w| weight_sign(k, w)).collect();
    if (0..=n).all(|w| f[w] == f[n - w]) {
        return StabilizerClass::PlusX;
    }
    if (0..=n).all(|w| f[w] != f[n - w]) {
        return StabilizerClass::MinusX;
    }
    if n.is_multiple_of(2) && (0..=n).all(|w| f[w] == (f[n - w] + ((w + n / 2) % 2) as u8) % 2) {
        return StabilizerClass::PlusY;
    }
    StabilizerClass::Unstabilized
}

pub fn classify_stabilizer(spec: &HypergraphSpec) -> Result<StabilizerClass> {
    let k = spec.require_cardinalities()?;
    Ok(classify_cardinalities(spec.n_qubits(), k))
}

/// Pauli stabilizers `+X`, `-X`, `+Y` found by applying `P^N` to a dense state.
pub fn oracle_stabilizers(d: &DenseState) -> Vec<StabilizerClass> {
    use crate::dense::{apply_all, overlap};
    use crate::transforms::Pauli;
    let one = Complex64::new(1.0, 0.0);
    let x = overlap(d, &apply_all(d, &Pauli::X.matrix())).expect("same size");
    let y = overlap(d, &apply_all(d, &Pauli::Y.matrix())).expect("same size");
    let mut out = Vec::new();
    if (x - one).norm() < 1e-10 {
        out.push(StabilizerClass::PlusX);
    }
    if (x + one).norm() < 1e-10 {
        out.push(StabilizerClass::MinusX);
    }
    if (y - one).norm() < 1e-10 {
        out.push(StabilizerClass::PlusY);
    }
    out
}

/// Adds cardinality 2 to the spec, or removes it if present.
pub fn toggle_pairwise_edges(spec: &HypergraphSpec) -> Result<HypergraphSpec> {
    let k = spec.require_cardinalities()?;
    let n = spec.n_qubits();
    if n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "pairwise toggling needs an even qubit count, got {n}"
        )));
    }
    let mut ks: Vec<usize> = k.iter().copied().filter(|&x| x != 2).collect();
    if ks.len() == k.len() {
        ks.push(2);
    }
    HypergraphSpec::uniform(n, &ks)
}

pub fn symmetric_to_dense(s: &SymmetricState) -> Result<DenseState> {
    let n = s.n_qubits();
    let cap = dense_cap();
    if n > cap {
        return Err(Error::DenseCapExceeded { n, cap });
    }
    let amp = (0u64..1 << n)
        .map(|x| s.amplitudes()[x.count_ones() as usize])
        .collect();
    Ok(DenseState::from_raw(n, amp))
}

/// Averages dense amplitudes over each weight class; the second value is the
/// largest deviation from that average (zero for symmetric states).
pub fn dense_weight_projection(d: &DenseState) -> (Vec<Complex64>, f64) {
    let n = d.n_qubits();
    let mut sums = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut counts = vec![0usize; n + 1];
    for (x, a) in d.amplitudes().iter().enumerate() {
        let w = (x as u64).count_ones() as usize;
        sums[w] += a;
        counts[w] += 1;
    }
    let avg: Vec<Complex64> = sums
        .iter()
        .zip(&counts)
        .map(|(s, &c)| s / c as f64)
        .collect();
    let spread = d
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(x, a)| (a - avg[(x as u64).count_ones() as usize]).norm())
        .fold(0.0, f64::max);
    (avg, spread)
}
