//! Mermin-type Bell operators evaluated by weight contraction.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::binom::Pascal;
use crate::dense::{apply_all, overlap, pauli_string_expectation, DenseState, PauliString};
use crate::error::{Error, Result};
use crate::hypergraph::{build_symmetric, classify_cardinalities, HypergraphSpec, StabilizerClass, SymmetricState};
use crate::numeric::ComplexKahanSum;
use crate::transforms::{
    ghz_odd_decompose, sqrt_pauli, tensor_power_amplitudes, transfer_matrix, Branch, GhzBasis, Pauli, SingleQubitOp,
    CONTRACTION_CAP,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

pub const IMAG_TOL: f64 = 1e-9;
pub const MERMIN_REL_TOL: f64 = 1e-8;

/// `<s| M_a^{(x)(N-k)} (x) M_b^{(x)k} |s>`, splitting the weight between the
/// leading `N-k` and trailing `k` sites.
pub fn grouped_tensor_power_expectation(
    s: &SymmetricState,
    ma: &SingleQubitOp,
    mb: &SingleQubitOp,
    k: usize,
) -> Result<Complex64> {
    let n = s.n_qubits();
    if k >= n {
        return Err(Error::Precondition(format!("trailing group size {k} must be below N={n}")));
    }
    if n > CONTRACTION_CAP {
        return Err(Error::ContractionCapExceeded { n, cap: CONTRACTION_CAP });
    }
    let a = n - k;
    let pascal = Pascal::new(n);
    let ta = transfer_matrix(a, ma, &pascal);
    let tb = transfer_matrix(k, mb, &pascal);
    let amp = s.amplitudes();
    let mut total = ComplexKahanSum::new();
    for ua in 0..=a {
        let g: Vec<Complex64> = (0..=k)
            .map(|wb| {
                let mut acc = ComplexKahanSum::new();
                for wa in 0..=a {
                    acc.add(ta[ua][wa] * amp[wa + wb]);
                }
                acc.value()
            })
            .collect();
        for ub in 0..=k {
            let mut inner = ComplexKahanSum::new();
            for wb in 0..=k {
                inner.add(tb[ub][wb] * g[wb]);
            }
            let mult = pascal.get(a, ua) * pascal.get(k, ub);
            total.add(amp[ua + ub].conj() * inner.value() * mult);
        }
    }
    Ok(total.value())
}

fn p_plus_minus_iz(p: Pauli, sign: f64) -> SingleQubitOp {
    p.matrix().add(&Pauli::Z.matrix().scale(I * sign))
}

/// `<B^P_N> = 1/2 <(P+iZ)^N> + 1/2 <(P-iZ)^N>` on a symmetric state.
pub fn mermin_expectation(s: &SymmetricState, p: Pauli) -> Result<Complex64> {
    let id = SingleQubitOp::identity();
    let plus = grouped_tensor_power_expectation(s, &p_plus_minus_iz(p, 1.0), &id, 0)?;
    let minus = grouped_tensor_power_expectation(s, &p_plus_minus_iz(p, -1.0), &id, 0)?;
    Ok((plus + minus) * 0.5)
}

/// Dense `<B^P_N>` from the two tensor powers.
pub fn mermin_oracle_tensor(d: &DenseState, p: Pauli) -> Complex64 {
    let plus = apply_all(d, &p_plus_minus_iz(p, 1.0));
    let minus = apply_all(d, &p_plus_minus_iz(p, -1.0));
    let a = overlap(d, &plus).expect("same size");
    let b = overlap(d, &minus).expect("same size");
    (a + b) * 0.5
}

/// Dense `<B^P_N>` summed over its `2^{N-1}` Pauli strings `i^m Z..Z P..P`.
pub fn mermin_oracle_pauli_sum(d: &DenseState, p: Pauli) -> Complex64 {
    signed_pauli_sum(d, p, |m| (m % 2 == 0).then(|| I.powu(m as u32)))
}

/// Sums `coef(|S|) <Z_S P_rest>` over subsets `S` of the qubits where the
/// coefficient is defined.
fn signed_pauli_sum<F: Fn(usize) -> Option<Complex64>>(d: &DenseState, p: Pauli, coef: F) -> Complex64 {
    let n = d.n_qubits();
    let mut acc = Complex64::new(0.0, 0.0);
    for sub in 0u64..1 << n {
        let m = sub.count_ones() as usize;
        if let Some(c) = coef(m) {
            let letters = (0..n).map(|q| if sub >> (n - 1 - q) & 1 == 1 { Pauli::Z } else { p }).collect();
            acc += c * pauli_string_expectation(d, &PauliString::new(letters)).expect("same size");
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BellMethod {
    Contraction,
    Decomposition,
    Oracle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BellReport {
    pub n: usize,
    pub pauli: Pauli,
    pub quantum_value: f64,
    pub imag_residue: f64,
    pub classical_bound: f64,
    pub separability_bound: f64,
    /// `log2(quantum_value / classical_bound)`.
    pub ratio_log2: f64,
    pub method: BellMethod,
    pub stabilizer: StabilizerClass,
    pub hypothesis_holds: bool,
    pub decomposition_residual: Option<f64>,
    /// `2^{N-1}(|d_0|^2 + |d_N|^2)` after `sqrt(P)_+^N`, valid for `+P`-stabilized states.
    pub decomposition_value: Option<f64>,
    /// `2^{N-2}` when the GHZ-plus-odd hypothesis holds.
    pub predicted: Option<f64>,
}

/// Mermin quantum value on a complete hypergraph state, with the GHZ-plus-odd
/// hypothesis checked rather than assumed.
pub fn mermin_quantum_value(spec: &HypergraphSpec, p: Pauli) -> Result<BellReport> {
    if !matches!(p, Pauli::X | Pauli::Y) {
        return Err(Error::Precondition("Mermin operator needs P in {X, Y}".into()));
    }
    let k = spec
        .cardinalities()
        .ok_or_else(|| Error::Precondition("contraction needs a cardinality-vector spec".into()))?;
    let n = spec.n_qubits();
    let s = build_symmetric(spec)?;
    let value = mermin_expectation(&s, p)?;
    if value.im.abs() > IMAG_TOL * value.re.abs().max(1.0) {
        return Err(Error::CrossCheck { what: "imaginary part of Mermin value".into(), a: value.im, b: 0.0 });
    }
    let class = classify_cardinalities(n, k);
    let matches_p = matches!((class, p), (StabilizerClass::PlusX, Pauli::X) | (StabilizerClass::PlusY, Pauli::Y));
    let mut hypothesis_holds = false;
    let mut decomposition_residual = None;
    let mut decomposition_value = None;
    if matches_p {
        let t = tensor_power_amplitudes(s.amplitudes(), &sqrt_pauli(p, Branch::Plus))?;
        decomposition_value = Some(2f64.powi(n as i32 - 1) * (t[0].norm_sqr() + t[n].norm_sqr()));
        let ts = SymmetricState::new(t)?;
        match ghz_odd_decompose(&ts) {
            Ok(d) => {
                decomposition_residual = Some(d.residual);
                hypothesis_holds = d.basis == GhzBasis::Z;
            }
            Err(Error::NotGhzOddForm { residual }) => decomposition_residual = Some(residual),
            Err(Error::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let predicted = hypothesis_holds.then(|| 2f64.powi(n as i32 - 2));
    if let Some(dv) = decomposition_value {
        if (dv - value.re).abs() > MERMIN_REL_TOL * dv.abs().max(1.0) {
            return Err(Error::CrossCheck { what: "Mermin contraction vs decomposition".into(), a: value.re, b: dv });
        }
    }
    if let Some(pv) = predicted {
        if (pv - value.re).abs() > MERMIN_REL_TOL * pv {
            return Err(Error::CrossCheck { what: "Mermin value vs 2^(N-2)".into(), a: value.re, b: pv });
        }
    }
    let classical = 2f64.powf(n as f64 / 2.0);
    Ok(BellReport {
        n,
        pauli: p,
        quantum_value: value.re,
        imag_residue: value.im.abs(),
        classical_bound: classical,
        separability_bound: std::f64::consts::SQRT_2,
        ratio_log2: (value.re / classical).log2(),
        method: BellMethod::Contraction,
        stabilizer: class,
        hypothesis_holds,
        decomposition_residual,
        decomposition_value,
        predicted,
    })
}

fn odd_correction_precondition(r: u32, n: usize) -> Result<()> {
    let p = 1usize << r;
    if r < 3 || n % p != p / 2 || n <= p / 2 {
        return Err(Error::Precondition(format!(
            "needs r >= 3 and N = {} mod {p} with N >= {} (r={r}, N={n})",
            p / 2,
            p / 2 + 1
        )));
    }
    Ok(())
}

/// Odd-weight contribution to `<B^Y_N>` on X-stabilized `(2^{r-1}+1)`-uniform states.
pub fn mermin_odd_correction(r: u32, n: usize) -> Result<f64> {
    odd_correction_precondition(r, n)?;
    let p = (1usize << r) as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for l in (1..1usize << r).step_by(2) {
        let x = l as f64 * PI / p;
        acc += I.powu(l as u32) * (x.cos() + x.sin()).powi(n as i32) / (2.0 * x).cos();
    }
    Ok(-4.0 / (p * p) * acc.norm_sqr())
}

/// `2^{N-2} + correction`.
pub fn mermin_y_on_x_family(r: u32, n: usize) -> Result<f64> {
    Ok(2f64.powi(n as i32 - 2) + mermin_odd_correction(r, n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RobustnessVariant {
    Auto,
    M0,
    M1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MerminKind {
    M0,
    M1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RobustnessRow {
    /// `N = 2 mod 4`, `k` odd.
    NTwoKOdd,
    /// `N = 0 mod 4`, `k` even.
    NZeroKEven,
    /// `N - k = 2 mod 4`.
    RestTwo,
    /// `N - k = 0 mod 4`.
    RestZero,
    /// `N = 2 mod 4`, `k` even.
    NTwoKEven,
    /// `N = 0 mod 4`, `k` odd.
    NZeroKOdd,
}

/// Table rows applying to `(N, k)`, in row order, with their closed-form values.
pub fn robustness_candidates(n: usize, k: usize) -> Vec<(RobustnessRow, MerminKind, f64)> {
    let base = 2f64.powf((n as f64 - 2.0 * k as f64) / 2.0);
    let ang = PI * k as f64 / 4.0;
    let mut out = Vec::new();
    if n % 4 == 2 && k % 2 == 1 {
        out.push((RobustnessRow::NTwoKOdd, MerminKind::M0, base));
    }
    if n.is_multiple_of(4) && k.is_multiple_of(2) {
        out.push((RobustnessRow::NZeroKEven, MerminKind::M1, base));
    }
    if k < n && (n - k) % 4 == 2 {
        out.push((RobustnessRow::RestTwo, MerminKind::M1, snap(ang.sin().abs()) * base));
    }
    if k < n && (n - k).is_multiple_of(4) {
        out.push((RobustnessRow::RestZero, MerminKind::M1, snap(ang.cos().abs()) * base));
    }
    if n % 4 == 2 && k.is_multiple_of(2) {
        out.push((RobustnessRow::NTwoKEven, MerminKind::M0, 0.5));
    }
    if n.is_multiple_of(4) && k % 2 == 1 {
        out.push((RobustnessRow::NZeroKOdd, MerminKind::M1, 0.0));
    }
    out
}

/// Rounds `|sin|`/`|cos|` of multiples of `pi/4` to their exact values.
fn snap(x: f64) -> f64 {
    if x < 1e-12 {
        0.0
    } else if (x - 1.0).abs() < 1e-12 {
        1.0
    } else {
        x
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub n: usize,
    pub lost: usize,
    pub operator: MerminKind,
    pub row: Option<RobustnessRow>,
    /// Signed expectation from the contraction.
    pub quantum_value: f64,
    pub closed_form: Option<f64>,
    pub residual: Option<f64>,
    pub separability_bound: f64,
    pub violates_separability: bool,
}

/// `<M^i_{N-k} (x) 1^k>` on the three-uniform complete state by contraction.
pub fn robustness_contraction(n: usize, lost: usize, op: MerminKind) -> Result<f64> {
    if n < 3 || lost == 0 || lost >= n {
        return Err(Error::Precondition(format!("needs N >= 3 and 1 <= k < N (N={n}, k={lost})")));
    }
    let s = build_symmetric(&HypergraphSpec::uniform(n, &[3])?)?;
    let id = SingleQubitOp::identity();
    let plus = grouped_tensor_power_expectation(&s, &p_plus_minus_iz(Pauli::X, 1.0), &id, lost)?;
    let minus = grouped_tensor_power_expectation(&s, &p_plus_minus_iz(Pauli::X, -1.0), &id, lost)?;
    let v = match op {
        MerminKind::M0 => (plus + minus) * 0.5,
        MerminKind::M1 => (plus - minus) / (I * 2.0),
    };
    if v.im.abs() > IMAG_TOL * v.re.abs().max(1.0) {
        return Err(Error::CrossCheck { what: "imaginary part of robustness value".into(), a: v.im, b: 0.0 });
    }
    Ok(v.re)
}

/// Dense expectation of the signed Pauli expansion of `M^i_{N-k}` on the
/// leading `N-k` qubits.
pub fn robustness_oracle(d: &DenseState, lost: usize, op: MerminKind) -> Result<f64> {
    let n = d.n_qubits();
    if lost >= n {
        return Err(Error::Precondition(format!("k={lost} must be below N={n}")));
    }
    let kept = n - lost;
    let mut acc = 0.0;
    for sub in 0u64..1 << kept {
        let m = sub.count_ones() as usize;
        let sign = match (op, m % 4) {
            (MerminKind::M0, 0) | (MerminKind::M1, 1) => 1.0,
            (MerminKind::M0, 2) | (MerminKind::M1, 3) => -1.0,
            _ => continue,
        };
        let letters = (0..n)
            .map(|q| {
                if q >= kept {
                    Pauli::I
                } else if sub >> (kept - 1 - q) & 1 == 1 {
                    Pauli::Z
                } else {
                    Pauli::X
                }
            })
            .collect();
        acc += sign * pauli_string_expectation(d, &PauliString::new(letters))?.re;
    }
    Ok(acc)
}

pub const ROBUSTNESS_TOL: f64 = 1e-9;

/// Loss-robustness value of the three-uniform complete state after losing the
/// last `lost` qubits.
pub fn robustness_value(n: usize, lost: usize, variant: RobustnessVariant) -> Result<RobustnessReport> {
    let cands = robustness_candidates(n, lost);
    let pick = |filter: Option<MerminKind>| {
        let mut best: Option<(RobustnessRow, MerminKind, f64)> = None;
        for &c in cands.iter().filter(|c| filter.is_none_or(|f| c.1 == f)) {
            if best.is_none_or(|b| c.2 > b.2) {
                best = Some(c);
            }
        }
        best
    };
    let (operator, row, closed) = match variant {
        RobustnessVariant::Auto => {
            let (row, op, v) = pick(None).ok_or_else(|| {
                Error::UnsupportedCase(format!("no robustness row for N={n}, k={lost}"))
            })?;
            (op, Some(row), Some(v))
        }
        RobustnessVariant::M0 | RobustnessVariant::M1 => {
            let op = if variant == RobustnessVariant::M0 { MerminKind::M0 } else { MerminKind::M1 };
            match pick(Some(op)) {
                Some((row, _, v)) => (op, Some(row), Some(v)),
                None => (op, None, None),
            }
        }
    };
    let value = robustness_contraction(n, lost, operator)?;
    let residual = closed.map(|c| (value.abs() - c).abs());
    if let (Some(c), Some(r)) = (closed, residual) {
        if r > ROBUSTNESS_TOL * c.max(1.0) {
            return Err(Error::CrossCheck { what: "robustness contraction vs table".into(), a: value, b: c });
        }
    }
    let sep = std::f64::consts::SQRT_2;
    Ok(RobustnessReport {
        n,
        lost,
        operator,
        row,
        quantum_value: value,
        closed_form: closed,
        residual,
        separability_bound: sep,
        violates_separability: value.abs() > sep + 1e-12,
    })
}

/// For each `k <= floor((N-4)/2)`, some table row at `k' >= k` exceeds the
/// separability bound. Returns the witnessing `k'` per `k`.
pub fn entanglement_persistence(n: usize) -> Result<Vec<(usize, Option<usize>)>> {
    if n < 4 {
        return Ok(Vec::new());
    }
    let kmax = (n - 4) / 2;
    let exceeds: Vec<bool> = (1..n)
        .map(|k| robustness_value(n, k, RobustnessVariant::Auto).is_ok_and(|r| r.violates_separability))
        .collect();
    Ok((1..=kmax)
        .map(|k| (k, (k..n).find(|&kp| exceeds[kp - 1])))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Family {
    pub k: Vec<usize>,
    pub m: usize,
    pub r: u32,
    pub modulus: usize,
    pub residue: usize,
    pub stabilizer: StabilizerClass,
    pub with_pairwise: bool,
}

impl Table1Family {
    /// Qubit counts `N <= max_n` in the family's residue class with `N >= max k`.
    pub fn members(&self, max_n: usize) -> Vec<usize> {
        let kmax = self.k.iter().copied().max().unwrap_or(1);
        (kmax.max(1)..=max_n).filter(|n| n % self.modulus == self.residue).collect()
    }

    /// Members whose classification differs from the predicted stabilizer.
    pub fn inconsistencies(&self, max_n: usize) -> Vec<(usize, StabilizerClass)> {
        self.members(max_n)
            .into_iter()
            .map(|n| (n, classify_cardinalities(n, &self.k)))
            .filter(|&(_, c)| c != self.stabilizer)
            .collect()
    }
}

/// Residue class and stabilizer for cardinalities `{3, 5, ..., 2^m+1}`,
/// optionally with `2`.
pub fn table1_families(k: &[usize]) -> Result<Table1Family> {
    let mut ks = k.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let with_pairwise = ks.first() == Some(&2);
    let odd: Vec<usize> = ks.iter().copied().filter(|&x| x != 2).collect();
    let m = odd.len();
    let admissible = m > 0 && odd.iter().enumerate().all(|(i, &x)| x == (1 << (i + 1)) + 1);
    if !admissible || ks.len() != k.len() {
        return Err(Error::Precondition(format!(
            "k={k:?} is not of the form (2^m+1, ..., 5, 3) optionally with 2"
        )));
    }
    let r = m as u32;
    let modulus = 1usize << (r + 1);
    let residue = if m % 2 == 1 { 0 } else { modulus / 2 };
    let stabilizer = if with_pairwise { StabilizerClass::PlusX } else { StabilizerClass::PlusY };
    Ok(Table1Family { k: ks, m, r, modulus, residue, stabilizer, with_pairwise })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::symmetric_to_dense;

    fn sym(n: usize, k: &[usize]) -> SymmetricState {
        build_symmetric(&HypergraphSpec::uniform(n, k).unwrap()).unwrap()
    }

    #[test]
    fn identity_expectation_is_norm() {
        let id = SingleQubitOp::identity();
        for k in 0..5 {
            let v = grouped_tensor_power_expectation(&sym(5, &[3]), &id, &id, k).unwrap();
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn z_parity_on_six_qubits() {
        let z = Pauli::Z.matrix();
        let v = grouped_tensor_power_expectation(&sym(6, &[3]), &z, &z, 2).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn grouped_matches_dense() {
        let s = sym(7, &[2, 3]);
        let d = symmetric_to_dense(&s).unwrap();
        let ma = SingleQubitOp::euler(0.3, 1.1, -0.7);
        let mb = p_plus_minus_iz(Pauli::Y, -1.0);
        for k in 0..7 {
            let ops: Vec<SingleQubitOp> = (0..7).map(|q| if q < 7 - k { ma } else { mb }).collect();
            let sites: Vec<usize> = (0..7).collect();
            let t = crate::dense::apply_local(&d, &ops, &sites).unwrap();
            let want = overlap(&d, &t).unwrap();
            let got = grouped_tensor_power_expectation(&s, &ma, &mb, k).unwrap();
            assert!((want - got).norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn mermin_six_qubits() {
        let r = mermin_quantum_value(&HypergraphSpec::uniform(6, &[3]).unwrap(), Pauli::X).unwrap();
        assert!((r.quantum_value - 16.0).abs() < 1e-10);
        assert!((r.classical_bound - 8.0).abs() < 1e-12);
        assert!(r.hypothesis_holds);
    }

    #[test]
    fn mermin_hypothesis_failure_is_reported() {
        let r = mermin_quantum_value(&HypergraphSpec::uniform(6, &[3]).unwrap(), Pauli::Y).unwrap();
        assert!(!r.hypothesis_holds);
        assert!(r.predicted.is_none());
    }

    #[test]
    fn odd_correction_is_negative() {
        for (r, n) in [(3, 12), (3, 20), (4, 24), (5, 48)] {
            assert!(mermin_odd_correction(r, n).unwrap() < 0.0);
        }
        assert!(mermin_odd_correction(3, 8).is_err());
        assert!(mermin_odd_correction(2, 6).is_err());
    }

    #[test]
    fn robustness_examples() {
        let v = |n, k| robustness_value(n, k, RobustnessVariant::Auto).unwrap();
        assert!((v(6, 1).quantum_value.abs() - 4.0).abs() < 1e-10);
        assert_eq!(v(6, 1).operator, MerminKind::M0);
        let r = v(7, 1);
        assert_eq!(r.row, Some(RobustnessRow::RestTwo));
        assert!((r.quantum_value.abs() - 4.0).abs() < 1e-10);
        assert!((v(8, 2).quantum_value.abs() - 4.0).abs() < 1e-10);
        let r = v(6, 2);
        assert_eq!(r.row, Some(RobustnessRow::NTwoKEven));
        assert!((r.quantum_value - 0.5).abs() < 1e-12);
        assert!(matches!(robustness_value(5, 2, RobustnessVariant::Auto), Err(Error::UnsupportedCase(_))));
        let r = robustness_value(5, 2, RobustnessVariant::M0).unwrap();
        assert!(r.closed_form.is_none());
    }

    #[test]
    fn persistence_up_to_floor() {
        for n in 4..=16 {
            for (k, w) in entanglement_persistence(n).unwrap() {
                assert!(w.is_some(), "N={n} k={k}");
            }
        }
    }

    #[test]
    fn table1_examples() {
        let f = table1_families(&[3]).unwrap();
        assert_eq!((f.residue, f.modulus, f.stabilizer), (0, 4, StabilizerClass::PlusY));
        let f = table1_families(&[3, 2]).unwrap();
        assert_eq!((f.residue, f.modulus, f.stabilizer), (0, 4, StabilizerClass::PlusX));
        let f = table1_families(&[5, 3]).unwrap();
        assert_eq!((f.residue, f.modulus, f.stabilizer), (4, 8, StabilizerClass::PlusY));
        assert!(table1_families(&[9, 3]).is_err());
        assert!(table1_families(&[2]).is_err());
        assert!(table1_families(&[4]).is_err());
    }
}
