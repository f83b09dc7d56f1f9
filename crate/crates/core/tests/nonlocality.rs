use hyperstate::dense::{apply_all, build_dense, overlap, DenseState};
use hyperstate::hypergraph::{build_symmetric, classify_cardinalities, symmetric_to_dense, HypergraphSpec, SymmetricState};
use hyperstate::nonlocality::*;
use hyperstate::transforms::{apply_tensor_power, ghz_odd_decompose, sqrt_pauli, Branch, Pauli, SingleQubitOp};
use hyperstate::Complex64;
use proptest::prelude::*;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn one() -> SingleQubitOp {
    SingleQubitOp::identity()
}

fn spec(n: usize, k: &[usize]) -> HypergraphSpec {
    HypergraphSpec::uniform(n, k).unwrap()
}

fn table1_instances() -> Vec<(usize, Vec<usize>, Pauli)> {
    vec![
        (6, vec![3], Pauli::X),
        (4, vec![2, 3], Pauli::X),
        (8, vec![2, 3], Pauli::X),
        (12, vec![2, 3], Pauli::X),
        (8, vec![3], Pauli::Y),
        (12, vec![3, 5], Pauli::Y),
        (12, vec![2, 3, 5], Pauli::X),
    ]
}

#[test]
fn mermin_values_match_oracles() {
    for (n, k, p) in table1_instances() {
        let r = mermin_quantum_value(&spec(n, &k), p).unwrap();
        assert!(r.hypothesis_holds, "N={n} k={k:?}");
        let want = 2f64.powi(n as i32 - 2);
        assert!((r.quantum_value - want).abs() < 1e-9, "N={n} k={k:?}: {}", r.quantum_value);
        assert!(r.imag_residue < 1e-9);
        assert!((r.classical_bound - 2f64.powf(n as f64 / 2.0)).abs() < 1e-12);
        let d = build_dense(&spec(n, &k)).unwrap();
        let t = mermin_oracle_tensor(&d, p);
        let s = mermin_oracle_pauli_sum(&d, p);
        assert!((t.re - r.quantum_value).abs() < 1e-9 && t.im.abs() < 1e-9);
        assert!((s.re - r.quantum_value).abs() < 1e-9 && s.im.abs() < 1e-9);
    }
}

#[test]
fn table1_members_are_consistent() {
    for k in [vec![3], vec![3, 2], vec![5, 3], vec![5, 3, 2], vec![9, 5, 3], vec![9, 5, 3, 2]] {
        let f = table1_families(&k).unwrap();
        assert!(f.inconsistencies(16).is_empty(), "k={k:?}: {:?}", f.inconsistencies(16));
        assert!(!f.members(16).is_empty());
    }
}

#[test]
fn table1_contraction_values() {
    for k in [vec![3], vec![3, 2], vec![5, 3], vec![5, 3, 2]] {
        let f = table1_families(&k).unwrap();
        let p = if f.with_pairwise { Pauli::X } else { Pauli::Y };
        for n in f.members(40) {
            let r = mermin_quantum_value(&spec(n, &k), p).unwrap();
            assert!(r.hypothesis_holds, "N={n} k={k:?}");
            assert!((r.quantum_value / 2f64.powi(n as i32 - 2) - 1.0).abs() < 1e-8);
        }
    }
}

#[test]
fn odd_correction_matches_contraction_and_oracle() {
    let n = 12;
    let d = build_dense(&spec(n, &[5])).unwrap();
    let o = mermin_oracle_tensor(&d, Pauli::Y).re;
    let closed = mermin_y_on_x_family(3, n).unwrap();
    assert!((o - closed).abs() < 1e-6 * closed.abs());
    let mut rel = Vec::new();
    for n in [12, 20, 28] {
        let c = mermin_odd_correction(3, n).unwrap();
        assert!(c < 0.0);
        let v = mermin_expectation(&build_symmetric(&spec(n, &[5])).unwrap(), Pauli::Y).unwrap();
        let base = 2f64.powi(n as i32 - 2);
        assert!((v.re - (base + c)).abs() < 1e-9 * base, "N={n}");
        rel.push(c.abs() / base);
    }
    assert!(rel.windows(2).all(|w| w[1] < w[0]), "{rel:?}");
    for (r, n) in [(4, 24), (4, 40), (5, 48)] {
        let k = (1usize << (r - 1)) + 1;
        let v = mermin_expectation(&build_symmetric(&spec(n, &[k])).unwrap(), Pauli::Y).unwrap();
        let c = mermin_y_on_x_family(r, n).unwrap();
        assert!((v.re - c).abs() < 1e-9 * c.abs(), "r={r} N={n}");
    }
}

#[test]
fn robustness_rows_match_oracle() {
    for n in 3..=12 {
        let d = build_dense(&spec(n, &[3])).unwrap();
        for k in 1..n {
            for (row, op, value) in robustness_candidates(n, k) {
                let o = robustness_oracle(&d, k, op).unwrap();
                assert!((o.abs() - value).abs() < 1e-9, "N={n} k={k} {row:?}: {o} vs {value}");
                let c = robustness_contraction(n, k, op).unwrap();
                assert!((c - o).abs() < 1e-9);
            }
            match robustness_value(n, k, RobustnessVariant::Auto) {
                Ok(r) => assert!(r.residual.unwrap() < 1e-9),
                Err(hyperstate::Error::UnsupportedCase(_)) => assert!(robustness_candidates(n, k).is_empty()),
                Err(e) => panic!("N={n} k={k}: {e}"),
            }
        }
    }
}

#[test]
fn robustness_examples() {
    let v = |n, k| robustness_value(n, k, RobustnessVariant::Auto).unwrap();
    for (n, k, want) in [(6, 1, 4.0), (7, 1, 4.0), (8, 2, 4.0), (6, 2, 0.5)] {
        let r = v(n, k);
        assert!((r.quantum_value.abs() - want).abs() < 1e-10, "N={n} k={k}");
        assert_eq!(r.closed_form, Some(want));
    }
    assert!(v(6, 1).violates_separability);
    assert!(!v(6, 2).violates_separability);
    let zero = robustness_value(8, 1, RobustnessVariant::M1).unwrap();
    assert_eq!(zero.row, Some(RobustnessRow::NZeroKOdd));
    assert!(zero.quantum_value.abs() < 1e-12);
}

#[test]
fn mermin_pieces_expand_to_signed_pauli_sums() {
    for n in 1..=6usize {
        for m in 0..=n {
            let plus = I.powu(m as u32);
            let minus = (-I).powu(m as u32);
            let m0 = (plus + minus) * 0.5;
            let m1 = (plus - minus) / (I * 2.0);
            let (w0, w1) = if m % 2 == 0 {
                (if m % 4 == 0 { 1.0 } else { -1.0 }, 0.0)
            } else {
                (0.0, if m % 4 == 1 { 1.0 } else { -1.0 })
            };
            assert_eq!((m0.re, m0.im, m1.re, m1.im), (w0, 0.0, w1, 0.0));
        }
    }
}

#[test]
fn ghz_cross_term_vanishes() {
    for n in [4, 6, 8, 10, 12] {
        let p = if n % 4 == 0 { Pauli::Y } else { Pauli::X };
        let s = build_symmetric(&spec(n, &[3])).unwrap();
        let t = apply_tensor_power(&s, &sqrt_pauli(p, Branch::Plus)).unwrap();
        let dec = ghz_odd_decompose(&t).unwrap();
        let odd = symmetric_to_dense(&SymmetricState::normalized(dec.odd_amp.clone()).unwrap()).unwrap();
        let ghz = DenseState::ghz(n).unwrap();
        let b = b_tilde(&odd, &one().add(&Pauli::Z.matrix()), &one().add(&Pauli::Z.matrix().scale(Complex64::new(-1.0, 0.0))));
        assert!(overlap(&ghz, &b).unwrap().norm() < 1e-12, "N={n}");
    }
}

/// `1/2 (A^N + B^N)|psi>` as an unnormalized amplitude vector.
fn b_tilde(psi: &DenseState, a: &SingleQubitOp, b: &SingleQubitOp) -> DenseState {
    let x = apply_all(psi, a);
    let y = apply_all(psi, b);
    let amp = x.amplitudes().iter().zip(y.amplitudes()).map(|(u, v)| (u + v) * 0.5).collect();
    DenseState::from_vector(psi.n_qubits(), amp).unwrap()
}

fn random_dense(n: usize, seed: &[(f64, f64)]) -> DenseState {
    let amp: Vec<Complex64> = (0..1usize << n)
        .map(|i| {
            let (a, b) = seed[i % seed.len()];
            Complex64::new(a + 0.1 * (i as f64).sin(), b + 0.1 * (i as f64 * 1.7).cos())
        })
        .collect();
    let norm = amp.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    DenseState::new(n, amp.into_iter().map(|z| z / norm).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_identities(n in 2usize..=8, seed in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..16), py in any::<bool>()) {
        let psi = random_dense(n, &seed);
        let chi = random_dense(n, &seed.iter().rev().map(|&(a, b)| (b, -a)).collect::<Vec<_>>());
        let p = if py { Pauli::Y } else { Pauli::X };
        let pm = p.matrix().add(&Pauli::Z.matrix().scale(I));
        let mm = p.matrix().add(&Pauli::Z.matrix().scale(-I));
        let z = Pauli::Z.matrix();
        let zp = one().add(&z);
        let zm = one().add(&z.scale(Complex64::new(-1.0, 0.0)));

        let sp = sqrt_pauli(p, Branch::Minus);
        let lhs = apply_all(&b_tilde(&apply_all(&psi, &sp), &pm, &mm), &sp);
        let rhs = b_tilde(&psi, &zp, &zm);
        prop_assert!((overlap(&chi, &lhs).unwrap() - overlap(&chi, &rhs).unwrap()).norm() < 1e-11);
        prop_assert!((overlap(&psi, &lhs).unwrap() - overlap(&psi, &rhs).unwrap()).norm() < 1e-11);

        if n % 2 == 0 {
            let sz = sqrt_pauli(Pauli::Z, Branch::Minus);
            let lhs = apply_all(&b_tilde(&apply_all(&psi, &sz), &pm, &mm), &sz);
            let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let pp = one().add(&p.matrix());
            let pn = one().add(&p.matrix().scale(Complex64::new(-1.0, 0.0)));
            let rhs = b_tilde(&psi, &pp, &pn);
            let a = overlap(&chi, &lhs).unwrap();
            let b = overlap(&chi, &rhs).unwrap() * sign;
            prop_assert!((a - b).norm() < 1e-11);
        }
    }

    #[test]
    fn grouped_contraction_matches_dense(n in 2usize..=10, k in 0usize..10, e in proptest::collection::vec(-3.0f64..3.0, 6), c in proptest::collection::vec(0usize..3, 1..4)) {
        let k = k % n;
        let pool = [2usize, 3, 5];
        let mut card: Vec<usize> = c.iter().map(|&i| pool[i]).filter(|&x| x <= n).collect();
        card.sort_unstable();
        card.dedup();
        prop_assume!(!card.is_empty());
        let s = build_symmetric(&spec(n, &card)).unwrap();
        let ma = SingleQubitOp::euler(e[0], e[1], e[2]).add(&Pauli::Z.matrix().scale(I));
        let mb = SingleQubitOp::euler(e[3], e[4], e[5]);
        let got = grouped_tensor_power_expectation(&s, &ma, &mb, k).unwrap();
        let d = symmetric_to_dense(&s).unwrap();
        let ops: Vec<SingleQubitOp> = (0..n).map(|q| if q < n - k { ma } else { mb }).collect();
        let sites: Vec<usize> = (0..n).collect();
        let t = hyperstate::dense::apply_local(&d, &ops, &sites).unwrap();
        let want = overlap(&d, &t).unwrap();
        prop_assert!((got - want).norm() < 1e-10 * want.norm().max(1.0));
    }
}

#[test]
fn classification_of_odd_correction_family() {
    for n in [12, 20, 28] {
        assert_eq!(classify_cardinalities(n, &[5]), hyperstate::StabilizerClass::PlusX);
    }
}
