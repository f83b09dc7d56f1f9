//! Local square-root-of-Pauli transforms in the weight representation.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::binom::{binomial, Pascal};
use crate::hypergraph::{classify_cardinalities, weight_sign, StabilizerClass, SymmetricState};
use crate::error::{Error, Result};
use crate::numeric::ComplexKahanSum;

pub const CONTRACTION_CAP: usize = 128;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> SingleQubitOp {
        match self {
            Pauli::I => SingleQubitOp::identity(),
            Pauli::X => SingleQubitOp::new([[ZERO, ONE], [ONE, ZERO]]),
            Pauli::Y => SingleQubitOp::new([[ZERO, -I], [I, ZERO]]),
            Pauli::Z => SingleQubitOp::new([[ONE, ZERO], [ZERO, -ONE]]),
        }
    }

    pub fn parse(s: &str) -> Option<Pauli> {
        match s.trim() {
            "I" | "i" => Some(Pauli::I),
            "X" | "x" => Some(Pauli::X),
            "Y" | "y" => Some(Pauli::Y),
            "Z" | "z" => Some(Pauli::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        };
        f.write_str(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

/// A 2x2 complex matrix, `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitOp {
    pub m: [[Complex64; 2]; 2],
}

impl SingleQubitOp {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        SingleQubitOp { m }
    }

    pub fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new([[h, h], [h, -h]])
    }

    /// Real rotation `[[cos t, sin t], [-sin t, cos t]]`.
    pub fn rotation(t: f64) -> Self {
        let (s, c) = t.sin_cos();
        Self::new([
            [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
            [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
        ])
    }

    /// Generic single-qubit unitary from Euler angles, `Rz(a) Ry(b) Rz(c)`.
    pub fn euler(a: f64, b: f64, c: f64) -> Self {
        let (sb, cb) = (b / 2.0).sin_cos();
        let e = |x: f64| Complex64::from_polar(1.0, x);
        Self::new([
            [e(-(a + c) / 2.0) * cb, -e(-(a - c) / 2.0) * sb],
            [e((a - c) / 2.0) * sb, e((a + c) / 2.0) * cb],
        ])
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut m = self.m;
        for row in &mut m {
            for x in row {
                *x *= z;
            }
        }
        Self::new(m)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.m;
        for (r, row) in m.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x += other.m[r][c];
            }
        }
        Self::new(m)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut m = [[ZERO; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = self.m[r][0] * other.m[0][c] + self.m[r][1] * other.m[1][c];
            }
        }
        Self::new(m)
    }

    pub fn dagger(&self) -> Self {
        let m = self.m;
        Self::new([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        d
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.dagger().matmul(self).max_abs_diff(&Self::identity()) <= tol
    }
}

/// `1/2((1 +- i) 1 + (1 -+ i) P)`: squares to `P`, eigenvalue 1 on its +1
/// eigenspace and `+-i` on the -1 eigenspace.
pub fn sqrt_pauli(p: Pauli, branch: Branch) -> SingleQubitOp {
    let s = match branch {
        Branch::Plus => 1.0,
        Branch::Minus => -1.0,
    };
    let a = Complex64::new(0.5, 0.5 * s);
    let b = Complex64::new(0.5, -0.5 * s);
    SingleQubitOp::identity().scale(a).add(&p.matrix().scale(b))
}

fn check_contraction_cap(n: usize) -> Result<()> {
    if n > CONTRACTION_CAP {
        return Err(Error::ContractionCapExceeded { n, cap: CONTRACTION_CAP });
    }
    Ok(())
}

fn powers(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut p = Vec::with_capacity(n + 1);
    let mut acc = ONE;
    for _ in 0..=n {
        p.push(acc);
        acc *= z;
    }
    p
}

/// `T[u][w]`: sum of `<y|M^{(x)n}|x>` over all `x` of weight `w`, for a fixed
/// `y` of weight `u`.
pub fn transfer_matrix(n: usize, op: &SingleQubitOp, pascal: &Pascal) -> Vec<Vec<Complex64>> {
    let p00 = powers(op.m[0][0], n);
    let p01 = powers(op.m[0][1], n);
    let p10 = powers(op.m[1][0], n);
    let p11 = powers(op.m[1][1], n);
    let mut t = vec![vec![ZERO; n + 1]; n + 1];
    for (u, row) in t.iter_mut().enumerate() {
        for (w, entry) in row.iter_mut().enumerate() {
            let lo = (u + w).saturating_sub(n);
            let hi = u.min(w);
            let mut acc = ComplexKahanSum::new();
            for s in lo..=hi {
                let mult = pascal.get(u, s) * pascal.get(n - u, w - s);
                acc.add(p11[s] * p10[u - s] * p01[w - s] * p00[n + s - u - w] * mult);
            }
            *entry = acc.value();
        }
    }
    t
}

/// Weight amplitudes of `M^{(x)N}|s>` without normalization checks.
pub fn tensor_power_amplitudes(amp: &[Complex64], op: &SingleQubitOp) -> Result<Vec<Complex64>> {
    let n = amp.len() - 1;
    check_contraction_cap(n)?;
    let pascal = Pascal::new(n);
    let t = transfer_matrix(n, op, &pascal);
    Ok(t
        .iter()
        .map(|row| {
            let mut acc = ComplexKahanSum::new();
            for (tw, a) in row.iter().zip(amp) {
                acc.add(tw * a);
            }
            acc.value()
        })
        .collect())
}

/// `M^{(x)N}|s>` for a unitary `M`.
pub fn apply_tensor_power(s: &SymmetricState, op: &SingleQubitOp) -> Result<SymmetricState> {
    if !op.is_unitary(1e-14) {
        return Err(Error::Precondition("tensor power operator must be unitary".into()));
    }
    SymmetricState::new(tensor_power_amplitudes(s.amplitudes(), op)?)
}

/// Which closed-form expression to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffPath {
    /// Sum over all weights with exact integer arithmetic.
    General,
    /// Trigonometric sum over one period of the weight sign function.
    Periodic,
    /// Dedicated formulas for single cardinalities `3` and `2^{r-1}+1`.
    Special,
}

/// Smallest `r >= 2` with `2^r > max k`; the weight sign function is `2^r`-periodic.
pub fn sign_period_exponent(k: &[usize]) -> u32 {
    let kmax = k.iter().copied().max().unwrap_or(1);
    let mut r = 2;
    while (1usize << r) <= kmax {
        r += 1;
    }
    r
}

fn krawtchouk(n: usize, e: usize, w: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for m in 0..=e.min(w) {
        if w - m > n - e {
            continue;
        }
        let term = BigInt::from(binomial(n - e, w - m) * binomial(e, m));
        if m % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `i^q` for a residue `q` mod 4.
fn i_pow(q: usize) -> Complex64 {
    match q % 4 {
        0 => ONE,
        1 => I,
        2 => -ONE,
        _ => -I,
    }
}

/// Gaussian integer `(1+i)^N (-i)^p / 2^{floor(N/2)}` as integer parts.
fn one_plus_i_pow_times(n: usize, p: usize) -> (i64, i64) {
    let h = n / 2;
    let u = i_pow(h + 3 * p);
    let z = if n % 2 == 1 { u * Complex64::new(1.0, 1.0) } else { u };
    (z.re.round() as i64, z.im.round() as i64)
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `2^{floor(N/2)} / (2 sqrt 2)^N`.
fn general_prefactor(n: usize) -> f64 {
    2f64.powf((n / 2) as f64 - 1.5 * n as f64)
}

fn coeff_general_x(n: usize, k: &[usize], e: usize, minus: bool) -> Complex64 {
    let mut acc = BigInt::zero();
    for w in 0..=n {
        let (re, im) = one_plus_i_pow_times(n, w + e);
        let part = if minus { im } else { re };
        if part == 0 {
            continue;
        }
        let sgn = if weight_sign(k, w) == 1 { -part } else { part };
        acc += krawtchouk(n, e, w) * sgn;
    }
    let v = bigint_to_f64(&acc) * general_prefactor(n);
    if minus {
        Complex64::new(0.0, v)
    } else {
        Complex64::new(v, 0.0)
    }
}

fn coeff_general_y(n: usize, k: &[usize], e: usize) -> Complex64 {
    let mut acc = BigInt::zero();
    for w in 0..=n {
        let kr = krawtchouk(n, e, w);
        if (weight_sign(k, w) as usize + w) % 2 == 1 {
            acc -= kr;
        } else {
            acc += kr;
        }
    }
    let (re, im) = one_plus_i_pow_times(n, 0);
    Complex64::new(re as f64, im as f64) * (bigint_to_f64(&acc) * general_prefactor(n))
}

fn coeff_periodic(n: usize, k: &[usize], class: StabilizerClass, e: usize) -> Complex64 {
    let r = sign_period_exponent(k);
    let p = 1usize << r;
    let nf = n as f64;
    let quarter = Complex64::from_polar(1.0, PI * nf / 4.0);
    let mut acc = ComplexKahanSum::new();
    for j in 0..p {
        let x = PI * j as f64 / p as f64;
        let cc = x.cos().powi((n - e) as i32) * x.sin().powi(e as i32);
        if cc == 0.0 {
            continue;
        }
        let mut inner = ComplexKahanSum::new();
        for q in 0..p {
            let fq = weight_sign(k, q) as usize;
            let phase = Complex64::from_polar(1.0, PI * j as f64 * (nf - 2.0 * q as f64) / p as f64);
            let trig = (phase * i_pow(3 * e)).re;
            let term = match class {
                StabilizerClass::PlusX => {
                    let z = quarter * i_pow(3 * (q + e));
                    Complex64::new(z.re * trig, 0.0)
                }
                StabilizerClass::MinusX => {
                    let z = quarter * i_pow(3 * (q + e));
                    Complex64::new(0.0, z.im * trig)
                }
                _ => {
                    let sgn = if (fq + q) % 2 == 1 { -1.0 } else { 1.0 };
                    inner.add(Complex64::new(sgn * trig, 0.0));
                    continue;
                }
            };
            inner.add(if fq == 1 { -term } else { term });
        }
        acc.add(inner.value() * cc);
    }
    let v = acc.value() / p as f64;
    if class == StabilizerClass::PlusY {
        v * quarter
    } else {
        v
    }
}

/// `r` with `k = 2^{r-1}+1`, if `k` has that form with `r >= 3`.
pub fn power_uniform_exponent(k: &[usize]) -> Option<u32> {
    match k {
        [k0] if *k0 >= 5 && (k0 - 1).is_power_of_two() => Some((k0 - 1).trailing_zeros() + 1),
        _ => None,
    }
}

/// Odd-weight amplitude after `sqrt(X)_+^N` for `k = 2^{r-1}+1`, `N = 2^{r-1} mod 2^r`.
pub fn x_power_uniform_odd_coeff(r: u32, n: usize, w: usize) -> Result<f64> {
    let p = 1usize << r;
    if r < 3 || n % p != p / 2 || w.is_multiple_of(2) || w > n {
        return Err(Error::Precondition(format!(
            "needs r>=3, N = {} mod {p}, odd w <= N (got r={r}, N={n}, w={w})",
            p / 2
        )));
    }
    let l = (n - p / 2) / p;
    let mut acc = 0.0;
    for j in (1..p).step_by(2) {
        let x = PI * j as f64 / p as f64;
        let den = (2.0 * x).cos();
        assert!(den.abs() > 1e-12, "vanishing denominator at j={j}");
        let sgn = if (j - 1) / 2 % 2 == 0 { 1.0 } else { -1.0 };
        acc += sgn * x.cos().powi((n - w) as i32) * x.sin().powi(w as i32) / den;
    }
    let sign = if (n / 4 + l + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * 2.0 / p as f64 * acc)
}

/// Odd-weight amplitude after `sqrt(Y)_+^N` for `k = 2^{r-1}+1`, `N = 0 mod 2^r`.
pub fn y_power_uniform_odd_coeff(r: u32, n: usize, w: usize) -> Result<Complex64> {
    let p = 1usize << r;
    if r < 3 || !n.is_multiple_of(p) || n == 0 || w.is_multiple_of(2) || w > n {
        return Err(Error::Precondition(format!(
            "needs r>=3, N = 0 mod {p}, odd w <= N (got r={r}, N={n}, w={w})"
        )));
    }
    let l = n / p;
    let mut acc = 0.0;
    for j in (1..p).step_by(2) {
        let x = PI * j as f64 / p as f64;
        acc += x.cos().powi((n - w) as i32) * x.sin().powi(w as i32) / (2.0 * x).sin();
    }
    let sign = if l.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(i_pow(w - 1) * (sign * 2.0 / p as f64 * acc))
}

/// Simplified odd amplitude for `k = 5`, `N = 4 mod 8`.
pub fn five_uniform_odd_coeff(n: usize, w: usize) -> Result<f64> {
    if n % 8 != 4 || w.is_multiple_of(2) || w > n {
        return Err(Error::Precondition(format!("needs N = 4 mod 8 and odd w (N={n}, w={w})")));
    }
    let l = (n - 4) / 8;
    let (s, c) = (PI / 8.0).sin_cos();
    let v = (c.powi((n - w) as i32) * s.powi(w as i32) + s.powi((n - w) as i32) * c.powi(w as i32))
        / std::f64::consts::SQRT_2;
    Ok(if l.is_multiple_of(2) { v } else { -v })
}

fn coeff_special(n: usize, k: &[usize], class: StabilizerClass, w: usize) -> Result<Complex64> {
    let inv = 2f64.powf(-(n as f64) / 2.0);
    if k == [3] {
        return match class {
            StabilizerClass::PlusX => Ok(if w % 2 == 1 {
                Complex64::new(inv, 0.0)
            } else if w == 0 || w == n {
                Complex64::new(if n % 8 == 6 { -0.5 } else { 0.5 }, 0.0)
            } else {
                ZERO
            }),
            StabilizerClass::PlusY => Ok(if w % 2 == 1 {
                i_pow(3 * (w - 1)) * inv
            } else if w == 0 || w == n {
                Complex64::new(if n % 8 == 4 { -0.5 } else { 0.5 }, 0.0)
            } else {
                ZERO
            }),
            _ => Err(Error::Precondition(format!("no special form for k=(3), {class}"))),
        };
    }
    let r = power_uniform_exponent(k)
        .ok_or_else(|| Error::Precondition(format!("no special form for k={k:?}")))?;
    match class {
        StabilizerClass::PlusX => {
            if w.is_multiple_of(2) {
                Ok(Complex64::new(inv, 0.0))
            } else {
                Ok(Complex64::new(x_power_uniform_odd_coeff(r, n, w)?, 0.0))
            }
        }
        StabilizerClass::PlusY => {
            if w % 2 == 1 {
                y_power_uniform_odd_coeff(r, n, w)
            } else if w == 0 || w == n {
                Ok(Complex64::new(0.5, 0.0))
            } else {
                Ok(ZERO)
            }
        }
        _ => Err(Error::Precondition(format!("no special form for k={k:?}, {class}"))),
    }
}

/// Amplitude of weight `w` after `sqrt(P)_+^N` for a `P`-stabilized complete
/// hypergraph state.
pub fn coeff_closed_form(
    n: usize,
    k: &[usize],
    class: StabilizerClass,
    w: usize,
    path: CoeffPath,
) -> Result<Complex64> {
    check_contraction_cap(n)?;
    if w > n {
        return Err(Error::Precondition(format!("weight {w} exceeds N={n}")));
    }
    let actual = classify_cardinalities(n, k);
    if actual != class || class == StabilizerClass::Unstabilized {
        return Err(Error::Precondition(format!(
            "k={k:?}, N={n} is {actual}, not {class}"
        )));
    }
    match path {
        CoeffPath::General => Ok(match class {
            StabilizerClass::PlusX => coeff_general_x(n, k, w, false),
            StabilizerClass::MinusX => coeff_general_x(n, k, w, true),
            _ => coeff_general_y(n, k, w),
        }),
        CoeffPath::Periodic => Ok(coeff_periodic(n, k, class, w)),
        CoeffPath::Special => coeff_special(n, k, class, w),
    }
}

/// All `N+1` closed-form amplitudes along one path.
pub fn closed_form_amplitudes(
    n: usize,
    k: &[usize],
    class: StabilizerClass,
    path: CoeffPath,
) -> Result<Vec<Complex64>> {
    (0..=n).map(|w| coeff_closed_form(n, k, class, w, path)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GhzBasis {
    Z,
    X,
}

/// `(phase/sqrt 2)|GHZ> + |odd>/sqrt 2` split of a transformed state.
#[derive(Debug, Clone, PartialEq)]
pub struct GhzOddDecomposition {
    pub basis: GhzBasis,
    /// Complex prefactor of the normalized GHZ part times `sqrt 2`.
    pub ghz_phase: Complex64,
    /// `+1` or `-1` when the GHZ prefactor is real.
    pub ghz_sign: Option<i8>,
    /// Ratio of the `|1..1>` to the `|0..0>` amplitude (always `+1` in the X basis).
    pub relative_sign: i8,
    /// Amplitudes at odd weights; even entries are zero.
    pub odd_amp: Vec<Complex64>,
    pub residual: f64,
}

pub const DECOMPOSE_TOL: f64 = 1e-10;

fn z_basis_fit(amp: &[Complex64]) -> (f64, Complex64, i8) {
    let n = amp.len() - 1;
    let d0 = amp[0];
    let dn = amp[n];
    let rel: i8 = if (dn / d0).re >= 0.0 { 1 } else { -1 };
    let mut res = (d0.norm() - 0.5).abs().max((dn.norm() - 0.5).abs());
    res = res.max((dn - d0 * rel as f64).norm());
    for a in amp.iter().take(n).skip(2).step_by(2) {
        res = res.max(a.norm());
    }
    (res, d0 * 2.0, rel)
}

fn x_basis_fit(amp: &[Complex64]) -> (f64, Complex64) {
    let n = amp.len() - 1;
    let scale = 2f64.powf(n as f64 / 2.0);
    let a = amp[0];
    let mut res = (a.norm() * scale - 1.0).abs() / scale;
    for d in amp.iter().step_by(2) {
        res = res.max((d - a).norm());
    }
    (res, a * scale)
}

fn real_sign(z: Complex64) -> Option<i8> {
    if z.im.abs() <= DECOMPOSE_TOL {
        Some(if z.re >= 0.0 { 1 } else { -1 })
    } else {
        None
    }
}

/// Splits a transformed even-qubit state into a GHZ part (computational or X
/// basis) and odd-weight content.
pub fn ghz_odd_decompose(s: &SymmetricState) -> Result<GhzOddDecomposition> {
    let n = s.n_qubits();
    if n % 2 == 1 {
        return Err(Error::Precondition(format!("GHZ plus odd split needs even N, got {n}")));
    }
    let amp = s.amplitudes();
    let odd_amp: Vec<Complex64> = amp
        .iter()
        .enumerate()
        .map(|(w, a)| if w % 2 == 1 { *a } else { ZERO })
        .collect();
    let (rz, pz, rel) = z_basis_fit(amp);
    let (rx, px) = x_basis_fit(amp);
    let (basis, residual, phase, rel) = if rz <= rx { (GhzBasis::Z, rz, pz, rel) } else { (GhzBasis::X, rx, px, 1) };
    if residual > DECOMPOSE_TOL {
        return Err(Error::NotGhzOddForm { residual });
    }
    Ok(GhzOddDecomposition {
        basis,
        ghz_phase: phase,
        ghz_sign: real_sign(phase),
        relative_sign: rel,
        odd_amp,
        residual,
    })
}

/// Largest deviation of the odd amplitudes from the three-uniform profile:
/// `1/sqrt(2)^N` for `P = X`, `(-i)^{w-1}/sqrt(2)^N` for `P = Y`.
pub fn three_uniform_odd_residual(dec: &GhzOddDecomposition, p: Pauli) -> f64 {
    let n = dec.odd_amp.len() - 1;
    let inv = 2f64.powf(-(n as f64) / 2.0);
    (1..=n)
        .step_by(2)
        .map(|w| {
            let want = match p {
                Pauli::Y => i_pow(3 * (w - 1)) * inv,
                _ => Complex64::new(inv, 0.0),
            };
            (dec.odd_amp[w] - want).norm()
        })
        .fold(0.0, f64::max)
}

/// `sum_{w = q mod n} C(N, w)` from the trigonometric closed form.
pub fn mod_binom_sum(big_n: usize, q: usize, n: usize) -> f64 {
    assert!(n > 0, "modulus must be positive");
    let nf = n as f64;
    let mut acc = 0.0;
    for j in 0..n {
        let x = PI * j as f64 / nf;
        acc += (2.0 * x.cos()).powi(big_n as i32)
            * (PI * j as f64 * (big_n as f64 - 2.0 * q as f64) / nf).cos();
    }
    acc / nf
}

/// Exact `sum_{w = q mod n} C(N, w)`.
pub fn mod_binom_sum_exact(big_n: usize, q: usize, n: usize) -> BigUint {
    (0..=big_n).filter(|w| w % n == q % n).map(|w| binomial(big_n, w)).sum()
}

/// `Re(e^{i pi a/b} (-2i sin(pi/b))^M)`.
pub fn alternating_cos_sum(m: u32, alpha: f64, beta: f64) -> f64 {
    assert!(beta != 0.0, "beta must be nonzero");
    let base = Complex64::new(0.0, -2.0 * (PI / beta).sin());
    (Complex64::from_polar(1.0, PI * alpha.rem_euclid(2.0 * beta) / beta) * base.powu(m)).re
}

/// `sum_m (-1)^m C(M, m) cos(pi (2m - M + a)/b)` by direct summation.
pub fn alternating_cos_sum_direct(m: u32, alpha: f64, beta: f64) -> f64 {
    let mf = m as f64;
    (0..=m)
        .map(|j| {
            let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
            let c = crate::binom::binomial_f64(m as usize, j as usize);
            sgn * c * (PI * (2.0 * j as f64 - mf + alpha).rem_euclid(2.0 * beta) / beta).cos()
        })
        .sum()
}
