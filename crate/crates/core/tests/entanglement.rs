use hyperstate::dense::{apply_local, build_dense, local_states, product_state_optimize, DenseState};
use hyperstate::entanglement::*;
use hyperstate::hypergraph::{build_symmetric, symmetric_to_dense, HypergraphSpec, SymmetricState};
use hyperstate::transforms::{apply_tensor_power, SingleQubitOp};
use hyperstate::Complex64;
use proptest::prelude::*;

fn spec(n: usize, k: &[usize]) -> HypergraphSpec {
    HypergraphSpec::uniform(n, k).unwrap()
}

fn exact(n: usize, k: &[usize]) -> f64 {
    match geomeasure_closed(&spec(n, k)).unwrap() {
        ClosedForm::Exact(r) => r.value,
        ClosedForm::Bounds(_) => panic!("expected an exact value"),
    }
}

fn bounds(n: usize, k: &[usize]) -> BoundsResult {
    match geomeasure_closed(&spec(n, k)).unwrap() {
        ClosedForm::Bounds(b) => b,
        ClosedForm::Exact(_) => panic!("expected bounds"),
    }
}

fn numeric(n: usize, k: &[usize]) -> f64 {
    let s = build_symmetric(&spec(n, k)).unwrap();
    geomeasure_symmetric_numeric(&s, true).unwrap().value
}

#[test]
fn closed_forms_agree_with_numeric_and_oracle() {
    for (n, k) in [(6, vec![3]), (10, vec![3]), (14, vec![3]), (12, vec![5])] {
        let c = exact(n, &k);
        let v = numeric(n, &k);
        assert!((c - v).abs() < 1e-9, "N={n} k={k:?}: {c} vs {v}");
        let o = geomeasure_oracle(&build_dense(&spec(n, &k)).unwrap(), 32, 7).unwrap().value;
        assert!((c - o).abs() < 1e-7, "N={n} k={k:?}: {c} vs oracle {o}");
    }
    assert!((exact(6, &[3]) - 39.0 / 64.0).abs() < 1e-15);
}

#[test]
fn bounds_sandwich_numeric() {
    for (n, k) in [(4, vec![3]), (8, vec![3]), (12, vec![3]), (8, vec![5]), (16, vec![5])] {
        let b = bounds(n, &k);
        let v = numeric(n, &k);
        assert!(b.contains(v, 1e-9), "N={n} k={k:?}: {v} not in [{}, {}]", b.lower, b.upper);
    }
}

#[test]
fn approach_to_three_quarters_is_monotone() {
    for (k, ns) in [(vec![3], vec![6, 10, 14, 18, 22]), (vec![5], vec![12, 20, 28, 36])] {
        let gaps: Vec<f64> = ns.iter().map(|&n| 0.75 - exact(n, &k)).collect();
        assert!(gaps.iter().all(|&g| g > 0.0));
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    }
}

#[test]
fn unsupported_family() {
    assert!(matches!(
        geomeasure_closed(&spec(9, &[3])),
        Err(hyperstate::Error::UnsupportedFamily { .. })
    ));
}

#[test]
fn h43_both_routes() {
    let e = h43_exact();
    assert!((e - 0.571_618_6).abs() < 1e-7);
    let s = h43_rotated().unwrap();
    assert!(s.is_real(1e-14));
    let r = geomeasure_symmetric_numeric(&s, false).unwrap();
    assert!((r.value - e).abs() < 1e-9);
    let o = geomeasure_oracle(&build_dense(&spec(4, &[3])).unwrap(), 32, 1).unwrap();
    assert!((o.value - e).abs() < 1e-9);
}

#[test]
fn two_edge_state() {
    let hs = HypergraphSpec::explicit(4, &[vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
    let d = build_dense(&hs).unwrap();
    let h = SingleQubitOp::hadamard();
    let t = apply_local(&d, &[h, h], &[0, 1]).unwrap();
    let want = [0b0000, 0b0001, 0b0010, 0b1111];
    for (x, a) in t.amplitudes().iter().enumerate() {
        let expect = if want.contains(&x) { 0.5 } else { 0.0 };
        assert!((a - Complex64::new(expect, 0.0)).norm() < 1e-15, "x={x:04b}");
    }
    let exact = (5.0 - 5f64.sqrt()) / 8.0;
    let o = geomeasure_oracle(&t, 32, 3).unwrap();
    assert!((o.value - exact).abs() < 1e-9);
    let xx = hyperstate::PauliString::parse("XXII").unwrap();
    let v = hyperstate::dense::pauli_string_expectation(&d, &xx).unwrap();
    assert!((v.re - 1.0).abs() < 1e-14);
}

#[test]
fn ghz_is_one_half() {
    for n in 3..=8 {
        let o = geomeasure_oracle(&DenseState::ghz(n).unwrap(), 32, 11).unwrap();
        assert!((o.value - 0.5).abs() < 1e-9, "N={n}");
        let s = geomeasure_symmetric_numeric(&SymmetricState::ghz(n).unwrap(), true).unwrap();
        assert!((s.value - 0.5).abs() < 1e-9, "N={n}");
    }
    let p = geomeasure_symmetric_numeric(&SymmetricState::plus(5).unwrap(), false).unwrap();
    assert!(p.value.abs() < 1e-12);
}

#[test]
fn symmetric_states_have_symmetric_optima() {
    for (n, k) in [(4, vec![3]), (6, vec![3]), (7, vec![2, 3])] {
        let opt = product_state_optimize(&build_dense(&spec(n, &k)).unwrap(), 32, false, 5).unwrap();
        let locals = local_states(&opt);
        for a in &locals {
            for b in &locals {
                let ov = (a[0].conj() * b[0] + a[1].conj() * b[1]).norm();
                assert!((ov - 1.0).abs() < 1e-6, "N={n} k={k:?}");
            }
        }
    }
}

#[test]
fn single_edge_family() {
    let vals: Vec<f64> = (3..=10).map(|n| single_edge_geomeasure(n).unwrap().value).collect();
    assert!(vals.windows(2).all(|w| w[1] < w[0]), "{vals:?}");
    for n in 3..=10 {
        let hs = HypergraphSpec::explicit(n, &[(0..n).collect()]).unwrap();
        let o = geomeasure_oracle(&build_dense(&hs).unwrap(), 32, 2).unwrap().value;
        assert!((o - vals[n - 3]).abs() < 1e-8, "N={n}: {o} vs {}", vals[n - 3]);
        let complex = geomeasure_symmetric_numeric(&build_symmetric(&spec(n, &[n])).unwrap(), true).unwrap().value;
        assert!((complex - vals[n - 3]).abs() < 1e-9, "N={n}");
    }
}

#[test]
fn conjecture_is_reported_not_asserted() {
    let c = conjecture_lambda(4, 24).unwrap();
    assert_eq!(c.label, "CONJECTURE");
    assert!(c.bound < 0.75);
}

#[test]
fn cyclic_max_lattice() {
    for r in 1..=3 {
        for n in [2, 6, 12] {
            let rep = cyclic_cos_max_check(r, n, 100_000).unwrap();
            assert!(rep.holds, "r={r} N={n}: {rep:?}");
        }
    }
}

fn symmetric_state(lo: usize, hi: usize) -> impl Strategy<Value = SymmetricState> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n + 1).prop_filter_map("nonzero", |v| {
            SymmetricState::normalized(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).ok()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn local_unitaries_preserve_geomeasure(s in symmetric_state(3, 7), a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0) {
        let u = SingleQubitOp::euler(a, b, c);
        let t = apply_tensor_power(&s, &u).unwrap();
        prop_assert!((t.norm_sqr() - 1.0).abs() < 1e-12);
        let e0 = geomeasure_symmetric_numeric(&s, true).unwrap().value;
        let e1 = geomeasure_symmetric_numeric(&t, true).unwrap().value;
        prop_assert!((e0 - e1).abs() < 1e-10, "{} vs {}", e0, e1);
    }

    #[test]
    fn dense_optimizer_matches_symmetric(s in symmetric_state(3, 6)) {
        let d = symmetric_to_dense(&s).unwrap();
        let o = geomeasure_oracle(&d, 32, 9).unwrap().value;
        let v = geomeasure_symmetric_numeric(&s, true).unwrap().value;
        prop_assert!((o - v).abs() < 1e-7, "{} vs {}", o, v);
    }
}
