use hyperstate::binom::binomial_f64;
use hyperstate::dense::{apply_all, apply_local, build_dense};
use hyperstate::hypergraph::{build_symmetric, classify_stabilizer, dense_weight_projection, HypergraphSpec, StabilizerClass, SymmetricState};
use hyperstate::transforms::*;
use hyperstate::Complex64;
use proptest::prelude::*;

fn subsets(pool: &[usize]) -> Vec<Vec<usize>> {
    (1u32..1 << pool.len())
        .map(|m| pool.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &k)| k).collect())
        .collect()
}

fn pauli_of(class: StabilizerClass) -> Pauli {
    match class {
        StabilizerClass::PlusY => Pauli::Y,
        _ => Pauli::X,
    }
}

/// Largest per-amplitude distance after removing one common phase.
fn phase_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let ip: Complex64 = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
    let ph = if ip.norm() > 0.0 { ip / ip.norm() } else { Complex64::new(1.0, 0.0) };
    a.iter().zip(b).map(|(x, y)| (x * ph - y).norm()).fold(0.0, f64::max)
}

fn special_applies(n: usize, k: &[usize], class: StabilizerClass) -> bool {
    if k == [3] {
        return true;
    }
    match power_uniform_exponent(k) {
        Some(r) => {
            let p = 1usize << r;
            match class {
                StabilizerClass::PlusX => n % p == p / 2,
                StabilizerClass::PlusY => n.is_multiple_of(p),
                _ => false,
            }
        }
        None => false,
    }
}

#[test]
fn closed_forms_match_contraction_and_dense() {
    let mut checked = 0;
    for k in subsets(&[2, 3, 5, 9]) {
        for n in *k.iter().max().unwrap()..=12 {
            let spec = HypergraphSpec::uniform(n, &k).unwrap();
            let class = classify_stabilizer(&spec).unwrap();
            if class == StabilizerClass::Unstabilized {
                continue;
            }
            let sq = sqrt_pauli(pauli_of(class), Branch::Plus);
            let s = build_symmetric(&spec).unwrap();
            let fast = apply_tensor_power(&s, &sq).unwrap();
            let (dense, spread) = dense_weight_projection(&apply_all(&build_dense(&spec).unwrap(), &sq));
            assert!(spread < 1e-12);
            assert!(phase_distance(fast.amplitudes(), &dense) < 1e-10, "k={k:?} N={n}");
            let mut paths = vec![CoeffPath::General, CoeffPath::Periodic];
            if special_applies(n, &k, class) {
                paths.push(CoeffPath::Special);
            }
            for path in paths {
                let c = closed_form_amplitudes(n, &k, class, path).unwrap();
                let exact = c.iter().zip(fast.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                assert!(exact < 1e-10, "k={k:?} N={n} {path:?}: {exact}");
            }
            checked += 1;
        }
    }
    assert!(checked > 20);
}

#[test]
fn closed_form_rejects_wrong_class() {
    assert!(coeff_closed_form(6, &[3], StabilizerClass::PlusY, 0, CoeffPath::General).is_err());
}

#[test]
fn general_and_periodic_agree_beyond_dense_range() {
    for (k, n) in [(vec![5], 20), (vec![5], 24), (vec![3, 5, 9], 16), (vec![9], 40), (vec![17], 48), (vec![2, 3, 5], 28)] {
        let class = hyperstate::hypergraph::classify_cardinalities(n, &k);
        assert_ne!(class, StabilizerClass::Unstabilized, "k={k:?} N={n}");
        let s = build_symmetric(&HypergraphSpec::uniform(n, &k).unwrap()).unwrap();
        let t = apply_tensor_power(&s, &sqrt_pauli(pauli_of(class), Branch::Plus)).unwrap();
        for path in [CoeffPath::General, CoeffPath::Periodic] {
            let c = closed_form_amplitudes(n, &k, class, path).unwrap();
            let d = c.iter().zip(t.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(d < 1e-10, "k={k:?} N={n} {path:?}: {d}");
        }
    }
}

fn decompose(n: usize, k: &[usize]) -> GhzOddDecomposition {
    let spec = HypergraphSpec::uniform(n, k).unwrap();
    let class = classify_stabilizer(&spec).unwrap();
    let s = build_symmetric(&spec).unwrap();
    let t = apply_tensor_power(&s, &sqrt_pauli(pauli_of(class), Branch::Plus)).unwrap();
    ghz_odd_decompose(&t).unwrap()
}

#[test]
fn three_uniform_decompositions() {
    for n in [4, 6, 8, 10, 12] {
        let d = decompose(n, &[3]);
        assert_eq!(d.basis, GhzBasis::Z);
        assert!(d.residual < 1e-12, "N={n}");
        let p = if n % 4 == 0 { Pauli::Y } else { Pauli::X };
        assert!(three_uniform_odd_residual(&d, p) < 1e-12);
        let negative = matches!(n % 8, 4 | 6);
        assert_eq!(d.ghz_sign, Some(if negative { -1 } else { 1 }), "N={n}");
    }
}

#[test]
fn three_two_decompositions() {
    for n in [4, 8, 12] {
        let d = decompose(n, &[2, 3]);
        assert_eq!(d.basis, GhzBasis::Z);
        assert_eq!(d.ghz_sign, Some(if (n / 4) % 2 == 1 { -1 } else { 1 }));
        assert!(d.residual < 1e-10);
    }
    for n in [6, 10] {
        let d = decompose(n, &[2, 3]);
        assert_eq!(d.basis, GhzBasis::Z);
        assert_eq!(d.relative_sign, -1);
        assert!(d.residual < 1e-10);
        let inv = 2f64.powf(-(n as f64) / 2.0);
        for w in (1..=n).step_by(2) {
            let want = Complex64::new(0.0, 1.0).powu(w as u32) * inv;
            assert!((d.odd_amp[w] - want).norm() < 1e-12);
        }
    }
}

#[test]
fn power_uniform_decompositions() {
    let d = decompose(12, &[5]);
    assert_eq!(d.basis, GhzBasis::X);
    assert!(d.residual < 1e-10);
    for n in [8, 16] {
        let d = decompose(n, &[5]);
        assert_eq!(d.basis, GhzBasis::Z);
        assert!(d.residual < 1e-10);
    }
    let d = decompose(16, &[9]);
    assert_eq!(d.basis, GhzBasis::Z);
    let d = decompose(16, &[3, 5, 9]);
    assert_eq!(d.basis, GhzBasis::Z);
    assert!(d.residual < 1e-10);
}

#[test]
fn five_uniform_odd_profile() {
    let n = 12;
    let (s, c) = (std::f64::consts::PI / 8.0).sin_cos();
    let d = decompose(n, &[5]);
    for w in (1..n).step_by(2) {
        let want = -(c.powi((n - w) as i32) * s.powi(w as i32) + s.powi((n - w) as i32) * c.powi(w as i32))
            / std::f64::consts::SQRT_2;
        assert!((d.odd_amp[w].re - want).abs() < 1e-12, "w={w}");
        assert!((five_uniform_odd_coeff(n, w).unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn sqrt_pauli_examples() {
    let sz = sqrt_pauli(Pauli::Z, Branch::Plus);
    let i = Complex64::new(0.0, 1.0);
    let diag = SingleQubitOp::new([[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), i]]);
    assert!(sz.max_abs_diff(&diag) < 1e-15);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let plus_y = [Complex64::new(r, 0.0), Complex64::new(0.0, r)];
    let out = sqrt_pauli(Pauli::X, Branch::Plus).apply(plus_y);
    assert!((out[0] - Complex64::new(r, r)).norm() < 1e-15);
    assert!(out[1].norm() < 1e-15);
    let z = Pauli::Z.matrix();
    for p in [Pauli::X, Pauli::Y] {
        for (b, s) in [(Branch::Plus, 1.0), (Branch::Minus, -1.0)] {
            let q = sqrt_pauli(p, b);
            assert!(q.matmul(&q).max_abs_diff(&p.matrix()) < 1e-15);
            assert!(q.is_unitary(1e-14));
            assert!(q.matmul(&z).matmul(&q).max_abs_diff(&z.scale(i * s)) < 1e-15);
        }
    }
}

#[test]
fn twice_sqrt_x_on_a_site_is_x() {
    let d = build_dense(&HypergraphSpec::uniform(4, &[3]).unwrap()).unwrap();
    let sx = sqrt_pauli(Pauli::X, Branch::Plus);
    let a = apply_local(&apply_local(&d, &[sx], &[2]).unwrap(), &[sx], &[2]).unwrap();
    let b = apply_local(&d, &[Pauli::X.matrix()], &[2]).unwrap();
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        assert!((x - y).norm() < 1e-15);
    }
}

#[test]
fn hadamard_on_single_edge_is_real() {
    let s = build_symmetric(&HypergraphSpec::uniform(4, &[4]).unwrap()).unwrap();
    assert!(apply_tensor_power(&s, &SingleQubitOp::hadamard()).unwrap().is_real(1e-15));
}

#[test]
fn aux_identities_exhaustive() {
    for big_n in 1..=40 {
        for n in [2usize, 4, 8, 16].into_iter().filter(|&n| n <= big_n) {
            for q in 0..n {
                let exact: f64 = (0..=big_n).filter(|w| w % n == q).map(|w| binomial_f64(big_n, w)).sum();
                let v = mod_binom_sum(big_n, q, n);
                assert!((v - exact).abs() <= 1e-6 * exact.max(1.0), "N={big_n} q={q} n={n}");
            }
        }
    }
    for m in 0..=20 {
        for alpha in 0..12 {
            for beta in [1.0, 2.0, 3.0, 4.0, 8.0, 16.0] {
                let a = alternating_cos_sum(m, alpha as f64, beta);
                let b = alternating_cos_sum_direct(m, alpha as f64, beta);
                assert!((a - b).abs() <= 1e-9 * b.abs().max(1.0), "M={m} a={alpha} b={beta}");
            }
        }
    }
}

#[test]
fn aux_examples() {
    assert!((mod_binom_sum(6, 1, 4) - 12.0).abs() < 1e-9);
    assert!((mod_binom_sum(7, 0, 1) - 128.0).abs() < 1e-9);
    assert!((mod_binom_sum(4, 0, 2) - 8.0).abs() < 1e-9);
    assert!(alternating_cos_sum(1, 0.0, 4.0).abs() < 1e-12);
}

fn symmetric_state(max_n: usize) -> impl Strategy<Value = SymmetricState> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n + 1).prop_filter_map("nonzero", |v| {
            let amp: Vec<Complex64> = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
            SymmetricState::normalized(amp).ok()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sqrt_twice_is_pauli(s in symmetric_state(20), p in prop_oneof![Just(Pauli::X), Just(Pauli::Y), Just(Pauli::Z)], minus in any::<bool>()) {
        let b = if minus { Branch::Minus } else { Branch::Plus };
        let q = sqrt_pauli(p, b);
        let twice = apply_tensor_power(&apply_tensor_power(&s, &q).unwrap(), &q).unwrap();
        let once = apply_tensor_power(&s, &p.matrix()).unwrap();
        for (a, c) in twice.amplitudes().iter().zip(once.amplitudes()) {
            prop_assert!((a - c).norm() < 1e-12);
        }
        prop_assert!((twice.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn contraction_matches_dense(s in symmetric_state(10), a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        let u = SingleQubitOp::euler(a, b, c);
        let fast = apply_tensor_power(&s, &u).unwrap();
        prop_assert!((fast.norm_sqr() - 1.0).abs() < 1e-12);
        let d = hyperstate::symmetric_to_dense(&s).unwrap();
        let (proj, spread) = dense_weight_projection(&apply_all(&d, &u));
        prop_assert!(spread < 1e-12);
        for (x, y) in proj.iter().zip(fast.amplitudes()) {
            prop_assert!((x - y).norm() < 1e-11);
        }
    }
}
