use hyperstate::dense::{apply_all, apply_local, build_dense};
use hyperstate::entanglement::{
    geomeasure_closed, geomeasure_oracle, geomeasure_symmetric_numeric, h43_exact, h43_rotated, single_edge_geomeasure,
    ClosedForm,
};
use hyperstate::hypergraph::{
    build_symmetric, classify_cardinalities, Edges, classify_stabilizer, dense_weight_projection, oracle_stabilizers,
    HypergraphSpec, StabilizerClass,
};
use hyperstate::nonlocality::{
    mermin_oracle_tensor, mermin_quantum_value, robustness_oracle, robustness_value, table1_families,
    RobustnessVariant,
};
use hyperstate::transforms::{
    apply_tensor_power, closed_form_amplitudes, ghz_odd_decompose, mod_binom_sum, sqrt_pauli,
    three_uniform_odd_residual, Branch, CoeffPath, Pauli, SingleQubitOp,
};
use hyperstate::{Error, Result};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::output::{complex, complex_list};
use crate::{BranchArg, MethodArg, PauliArg, StateArgs, VariantArg};

/// Largest N for which `all` also runs the dense oracle.
const AUTO_ORACLE_MAX_N: usize = 14;

#[derive(Deserialize)]
struct StateJson {
    n: usize,
    #[serde(default)]
    k: Option<Vec<usize>>,
    #[serde(default)]
    edges: Option<Vec<Vec<usize>>>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSpec(msg.into())
}

pub fn spec_of(a: &StateArgs) -> Result<HypergraphSpec> {
    if let Some(s) = &a.state {
        let text = match s.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {path}: {e}")))?,
            None => s.clone(),
        };
        let st: StateJson = serde_json::from_str(&text).map_err(|e| invalid(format!("bad state JSON: {e}")))?;
        return match (st.k, st.edges) {
            (Some(k), None) => HypergraphSpec::uniform(st.n, &k),
            (None, Some(e)) => HypergraphSpec::explicit(st.n, &e),
            _ => Err(invalid("state JSON needs exactly one of \"k\" or \"edges\"")),
        };
    }
    let n = a.n.ok_or_else(|| invalid("--n is required"))?;
    match (&a.edges, a.k.is_empty()) {
        (Some(e), true) => {
            let edges: Vec<Vec<usize>> =
                serde_json::from_str(e).map_err(|err| invalid(format!("bad --edges JSON: {err}")))?;
            HypergraphSpec::explicit(n, &edges)
        }
        (None, false) => HypergraphSpec::uniform(n, &a.k),
        (Some(_), false) => Err(invalid("give either --k or --edges, not both")),
        (None, true) => Err(invalid("--k or --edges is required")),
    }
}

fn echo(spec: &HypergraphSpec) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(spec.n_qubits()));
    match spec.edges() {
        Edges::Cardinalities(k) => m.insert("k".into(), json!(k)),
        Edges::Explicit(e) => m.insert("edges".into(), json!(e)),
    };
    m
}

fn pauli_of(p: PauliArg) -> Pauli {
    match p {
        PauliArg::X => Pauli::X,
        PauliArg::Y => Pauli::Y,
        PauliArg::Z => Pauli::Z,
    }
}

fn stabilizer_pauli(c: StabilizerClass) -> Pauli {
    if c == StabilizerClass::PlusY {
        Pauli::Y
    } else {
        Pauli::X
    }
}

fn max_diff(a: &[hyperstate::Complex64], b: &[hyperstate::Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn cross(what: &str, a: f64, b: f64) -> Error {
    Error::CrossCheck { what: what.into(), a, b }
}

pub fn classify(state: &StateArgs, method: Option<MethodArg>) -> Result<Map<String, Value>> {
    let spec = spec_of(state)?;
    let mut m = echo(&spec);
    let oracle_wanted = matches!(method, Some(MethodArg::Oracle | MethodArg::All)) || spec.cardinalities().is_none();
    let oracle = if oracle_wanted { Some(oracle_stabilizers(&build_dense(&spec)?)) } else { None };
    match spec.cardinalities() {
        Some(_) if method != Some(MethodArg::Oracle) => {
            let class = classify_stabilizer(&spec)?;
            m.insert("stabilizer".into(), json!(class.label()));
            m.insert("method".into(), json!("closed_form"));
            if let Some(o) = &oracle {
                m.insert("oracle".into(), json!(o.iter().map(|c| c.label()).collect::<Vec<_>>()));
                let agrees = if class == StabilizerClass::Unstabilized { o.is_empty() } else { o.contains(&class) };
                if !agrees {
                    return Err(cross(&format!("classification {class} vs oracle {o:?}"), 0.0, 1.0));
                }
            }
        }
        _ => {
            let o = oracle.unwrap_or_default();
            let label = o.first().map(|c| c.label()).unwrap_or("none");
            m.insert("stabilizer".into(), json!(label));
            m.insert("stabilizers".into(), json!(o.iter().map(|c| c.label()).collect::<Vec<_>>()));
            m.insert("method".into(), json!("oracle"));
        }
    }
    Ok(m)
}

pub fn build(state: &StateArgs, method: Option<MethodArg>, tol: f64) -> Result<Map<String, Value>> {
    let spec = spec_of(state)?;
    let mut m = echo(&spec);
    if spec.cardinalities().is_some() && method != Some(MethodArg::Oracle) {
        let s = build_symmetric(&spec)?;
        m.insert("representation".into(), json!("symmetric"));
        m.insert("method".into(), json!("closed_form"));
        m.insert("amplitudes".into(), complex_list(s.amplitudes()));
        m.insert("norm_sqr".into(), json!(s.norm_sqr()));
        if method == Some(MethodArg::All) {
            let (proj, spread) = dense_weight_projection(&build_dense(&spec)?);
            let r = max_diff(&proj, s.amplitudes()).max(spread);
            m.insert("residual".into(), json!(r));
            if r > tol {
                return Err(cross("symmetric vs dense amplitudes", r, 0.0));
            }
        }
    } else {
        let d = build_dense(&spec)?;
        m.insert("representation".into(), json!("dense"));
        m.insert("method".into(), json!("oracle"));
        m.insert("amplitudes".into(), complex_list(d.amplitudes()));
        m.insert("norm_sqr".into(), json!(d.norm_sqr()));
    }
    Ok(m)
}

pub fn transform(state: &StateArgs, pauli: Option<PauliArg>, branch: BranchArg, tol: f64) -> Result<Map<String, Value>> {
    let spec = spec_of(state)?;
    let k = spec
        .cardinalities()
        .ok_or_else(|| Error::Precondition("transform needs a cardinality-vector spec".into()))?
        .to_vec();
    let n = spec.n_qubits();
    let class = classify_stabilizer(&spec)?;
    let p = pauli.map(pauli_of).unwrap_or(stabilizer_pauli(class));
    let b = if branch == BranchArg::Plus { Branch::Plus } else { Branch::Minus };
    let s = build_symmetric(&spec)?;
    let op = sqrt_pauli(p, b);
    let t = apply_tensor_power(&s, &op)?;
    let mut m = echo(&spec);
    m.insert("pauli".into(), json!(p.to_string()));
    m.insert("branch".into(), json!(if b == Branch::Plus { "plus" } else { "minus" }));
    m.insert("stabilizer".into(), json!(class.label()));
    m.insert("method".into(), json!("contraction"));
    m.insert("amplitudes".into(), complex_list(t.amplitudes()));
    let mut residuals = Map::new();
    if class.stabilizer().map(|(q, _)| q) == Some(p) && b == Branch::Plus {
        for (name, path) in [("general", CoeffPath::General), ("periodic", CoeffPath::Periodic)] {
            let c = closed_form_amplitudes(n, &k, class, path)?;
            let r = max_diff(&c, t.amplitudes());
            residuals.insert(name.into(), json!(r));
            if r > tol {
                return Err(cross(&format!("{name} closed form vs contraction"), r, 0.0));
            }
        }
        if let Ok(c) = closed_form_amplitudes(n, &k, class, CoeffPath::Special) {
            residuals.insert("special".into(), json!(max_diff(&c, t.amplitudes())));
        }
    }
    if n <= AUTO_ORACLE_MAX_N {
        let (proj, _) = dense_weight_projection(&apply_all(&build_dense(&spec)?, &op));
        let r = max_diff(&proj, t.amplitudes());
        residuals.insert("oracle".into(), json!(r));
        if r > tol {
            return Err(cross("dense vs contraction", r, 0.0));
        }
    }
    m.insert("residuals".into(), Value::Object(residuals));
    Ok(m)
}

pub fn decompose(state: &StateArgs, pauli: Option<PauliArg>) -> Result<Map<String, Value>> {
    let spec = spec_of(state)?;
    let class = classify_stabilizer(&spec)?;
    let p = pauli.map(pauli_of).unwrap_or(stabilizer_pauli(class));
    let s = build_symmetric(&spec)?;
    let t = apply_tensor_power(&s, &sqrt_pauli(p, Branch::Plus))?;
    let d = ghz_odd_decompose(&t)?;
    let mut m = echo(&spec);
    m.insert("pauli".into(), json!(p.to_string()));
    m.insert("stabilizer".into(), json!(class.label()));
    m.insert("basis".into(), json!(d.basis));
    m.insert("ghz_phase".into(), complex(d.ghz_phase));
    m.insert("ghz_sign".into(), json!(d.ghz_sign));
    m.insert("relative_sign".into(), json!(d.relative_sign));
    m.insert("residual".into(), json!(d.residual));
    m.insert("odd_amp".into(), complex_list(&d.odd_amp));
    if spec.cardinalities() == Some(&[3][..]) {
        m.insert("three_uniform_odd_residual".into(), json!(three_uniform_odd_residual(&d, p)));
    }
    Ok(m)
}

pub fn geomeasure(
    state: &StateArgs,
    method: MethodArg,
    restarts: usize,
    seed: u64,
    hadamard: &[usize],
    tol: f64,
) -> Result<Map<String, Value>> {
    let spec = spec_of(state)?;
    let n = spec.n_qubits();
    let symmetric = spec.cardinalities().is_some();
    let mut m = echo(&spec);
    let mut values = Map::new();
    let mut chosen: Option<(f64, &str)> = None;
    let mut exact = None;
    let mut bounds = None;

    if symmetric && matches!(method, MethodArg::Closed | MethodArg::All) {
        match geomeasure_closed(&spec) {
            Ok(ClosedForm::Exact(r)) => {
                values.insert("closed_form".into(), json!(r.value));
                exact = Some(r.value);
                chosen = Some((r.value, "closed_form"));
            }
            Ok(ClosedForm::Bounds(b)) => {
                m.insert("lower".into(), json!(b.lower));
                m.insert("upper".into(), json!(b.upper));
                bounds = Some(b);
            }
            Err(e @ Error::UnsupportedFamily { .. }) if method == MethodArg::All => {
                m.insert("closed_form".into(), json!(e.to_string()));
            }
            Err(e) => return Err(e),
        }
    }
    let mut numeric = None;
    let numeric_wanted = method == MethodArg::Numeric
        || (method == MethodArg::All && symmetric)
        || (method == MethodArg::Closed && bounds.is_some());
    if numeric_wanted {
        let s = build_symmetric(&spec)?;
        let r = geomeasure_symmetric_numeric(&s, true)?;
        values.insert("numeric_opt".into(), json!(r.value));
        m.insert("theta".into(), json!(r.theta));
        m.insert("phi".into(), json!(r.phi));
        numeric = Some(r.value);
        if chosen.is_none() {
            chosen = Some((r.value, "numeric_opt"));
        }
    }
    let oracle_wanted = method == MethodArg::Oracle || (method == MethodArg::All && (n <= AUTO_ORACLE_MAX_N || !symmetric));
    let mut oracle = None;
    if oracle_wanted {
        let mut d = build_dense(&spec)?;
        if !hadamard.is_empty() {
            let ops = vec![SingleQubitOp::hadamard(); hadamard.len()];
            d = apply_local(&d, &ops, hadamard)?;
        }
        let r = geomeasure_oracle(&d, restarts, seed)?;
        values.insert("oracle".into(), json!(r.value));
        m.insert("restarts".into(), json!(restarts));
        m.insert("seed".into(), json!(seed));
        oracle = Some(r.value);
        if chosen.is_none() {
            chosen = Some((r.value, "oracle"));
        }
    }
    let (value, tag) = chosen.ok_or_else(|| Error::Precondition("no method applies to this state".into()))?;
    m.insert("value".into(), json!(value));
    m.insert("method".into(), json!(tag));
    m.insert("values".into(), Value::Object(values));

    let mut residual: f64 = 0.0;
    if let (Some(e), Some(v)) = (exact, numeric) {
        residual = residual.max((e - v).abs());
        if (e - v).abs() > tol {
            return Err(cross("closed form vs numeric", e, v));
        }
    }
    let reference = exact.or(numeric);
    if let (Some(e), Some(o)) = (reference, oracle) {
        residual = residual.max((e - o).abs());
        if (e - o).abs() > tol.max(1e-7) {
            return Err(cross("oracle vs symmetric value", o, e));
        }
    }
    if let Some(b) = &bounds {
        for v in [numeric, oracle].into_iter().flatten() {
            if !b.contains(v, tol) {
                return Err(cross("value outside closed-form bounds", v, b.lower));
            }
        }
        let inside = numeric.or(oracle).map(|v| b.contains(v, tol));
        m.insert("within_bounds".into(), json!(inside));
    }
    m.insert("residual".into(), json!(residual));
    Ok(m)
}

pub fn single_edge(n: usize, method: MethodArg, restarts: usize, seed: u64, tol: f64) -> Result<Map<String, Value>> {
    let r = single_edge_geomeasure(n)?;
    let mut m = Map::new();
    m.insert("n".into(), json!(n));
    m.insert("value".into(), json!(r.value));
    m.insert("theta".into(), json!(r.theta));
    m.insert("method".into(), json!("numeric_opt"));
    let mut residual: f64 = 0.0;
    if matches!(method, MethodArg::All | MethodArg::Numeric) {
        let s = build_symmetric(&HypergraphSpec::uniform(n, &[n])?)?;
        let c = geomeasure_symmetric_numeric(&s, true)?.value;
        m.insert("complex_value".into(), json!(c));
        residual = residual.max((c - r.value).abs());
        if (c - r.value).abs() > tol {
            return Err(cross("real vs complex optimization", r.value, c));
        }
    }
    if matches!(method, MethodArg::All | MethodArg::Oracle) {
        let spec = HypergraphSpec::explicit(n, &[(0..n).collect()])?;
        let o = geomeasure_oracle(&build_dense(&spec)?, restarts, seed)?.value;
        m.insert("oracle".into(), json!(o));
        m.insert("restarts".into(), json!(restarts));
        m.insert("seed".into(), json!(seed));
        residual = residual.max((o - r.value).abs());
        if (o - r.value).abs() > tol.max(1e-8) {
            return Err(cross("single edge vs oracle", r.value, o));
        }
    }
    m.insert("residual".into(), json!(residual));
    Ok(m)
}

fn flatten(v: Value, m: &mut Map<String, Value>) {
    if let Value::Object(o) = v {
        for (k, x) in o {
            m.insert(k, x);
        }
    }
}

pub fn mermin(state: &StateArgs, pauli: PauliArg, method: MethodArg, tol: f64) -> Result<Map<String, Value>> {
    let spec = spec_of(state)?;
    let p = pauli_of(pauli);
    let r = mermin_quantum_value(&spec, p)?;
    let mut m = echo(&spec);
    flatten(serde_json::to_value(&r).expect("serializable"), &mut m);
    m.insert("stabilizer".into(), json!(r.stabilizer.label()));
    let oracle_wanted = method == MethodArg::Oracle || (method == MethodArg::All && spec.n_qubits() <= AUTO_ORACLE_MAX_N);
    if oracle_wanted {
        let o = mermin_oracle_tensor(&build_dense(&spec)?, p);
        m.insert("oracle_value".into(), json!(o.re));
        let d = (o.re - r.quantum_value).abs();
        m.insert("residual".into(), json!(d));
        if d > tol * r.quantum_value.abs().max(1.0) {
            return Err(cross("Mermin contraction vs oracle", r.quantum_value, o.re));
        }
    }
    Ok(m)
}

pub fn robustness(n: usize, lost: usize, variant: VariantArg, method: MethodArg, tol: f64) -> Result<Map<String, Value>> {
    let v = match variant {
        VariantArg::Auto => RobustnessVariant::Auto,
        VariantArg::M0 => RobustnessVariant::M0,
        VariantArg::M1 => RobustnessVariant::M1,
    };
    let r = robustness_value(n, lost, v)?;
    let mut m = Map::new();
    flatten(serde_json::to_value(&r).expect("serializable"), &mut m);
    m.insert("expectation".into(), json!(r.quantum_value));
    m.insert("quantum_value".into(), json!(r.quantum_value.abs()));
    m.insert("variant".into(), json!(format!("{variant:?}").to_lowercase()));
    m.insert("method".into(), json!("contraction"));
    let oracle_wanted = method == MethodArg::Oracle || (method == MethodArg::All && n <= AUTO_ORACLE_MAX_N);
    if oracle_wanted {
        let d = build_dense(&HypergraphSpec::uniform(n, &[3])?)?;
        let o = robustness_oracle(&d, lost, r.operator)?;
        m.insert("oracle_value".into(), json!(o));
        if (o - r.quantum_value).abs() > tol * o.abs().max(1.0) {
            return Err(cross("robustness contraction vs oracle", r.quantum_value, o));
        }
    }
    Ok(m)
}

pub fn families(k: &[usize], max_n: usize) -> Result<Map<String, Value>> {
    let f = table1_families(k)?;
    let mut m = Map::new();
    m.insert("k".into(), json!(f.k));
    m.insert("m".into(), json!(f.m));
    m.insert("r".into(), json!(f.r));
    m.insert("modulus".into(), json!(f.modulus));
    m.insert("residue".into(), json!(f.residue));
    m.insert("stabilizer".into(), json!(f.stabilizer.label()));
    m.insert("with_pairwise".into(), json!(f.with_pairwise));
    m.insert("max_n".into(), json!(max_n));
    m.insert("members".into(), json!(f.members(max_n)));
    let bad = f.inconsistencies(max_n);
    m.insert("consistent".into(), json!(bad.is_empty()));
    if let Some(&(n, c)) = bad.first() {
        return Err(cross(&format!("family predicts {} but N={n} is {c}", f.stabilizer), n as f64, 0.0));
    }
    Ok(m)
}

struct CheckRow {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check<F: FnOnce() -> Result<(bool, String)>>(name: &'static str, f: F) -> CheckRow {
    match f() {
        Ok((pass, detail)) => CheckRow { name, pass, detail },
        Err(e) => CheckRow { name, pass: false, detail: e.to_string() },
    }
}

pub fn verify() -> Result<Map<String, Value>> {
    let rows = [check("classification examples", || {
            let got = [
                classify_cardinalities(6, &[3]),
                classify_cardinalities(4, &[3]),
                classify_cardinalities(4, &[3, 2]),
                classify_cardinalities(5, &[3]),
            ];
            let want = [StabilizerClass::PlusX, StabilizerClass::PlusY, StabilizerClass::PlusX, StabilizerClass::Unstabilized];
            Ok((got == want, format!("{:?}", got.map(|c| c.label()))))
        }),
        check("H4^3 rotated optimum", || {
            let v = geomeasure_symmetric_numeric(&h43_rotated()?, false)?.value;
            Ok(((v - h43_exact()).abs() < 1e-9, format!("{v} vs {}", h43_exact())))
        }),
        check("three-uniform N=6 closed vs numeric", || {
            let spec = HypergraphSpec::uniform(6, &[3])?;
            let v = geomeasure_symmetric_numeric(&build_symmetric(&spec)?, true)?.value;
            Ok(((v - 39.0 / 64.0).abs() < 1e-9, format!("{v} vs 39/64")))
        }),
        check("Mermin N=6", || {
            let r = mermin_quantum_value(&HypergraphSpec::uniform(6, &[3])?, Pauli::X)?;
            let o = mermin_oracle_tensor(&build_dense(&HypergraphSpec::uniform(6, &[3])?)?, Pauli::X).re;
            Ok(((r.quantum_value - 16.0).abs() < 1e-9 && (o - 16.0).abs() < 1e-9, format!("{} / oracle {o}", r.quantum_value)))
        }),
        check("robustness N=6 k=1", || {
            let r = robustness_value(6, 1, RobustnessVariant::Auto)?;
            Ok(((r.quantum_value.abs() - 4.0).abs() < 1e-9, format!("{}", r.quantum_value)))
        }),
        check("binomial residue sum", || {
            let v = mod_binom_sum(6, 1, 4);
            Ok(((v - 12.0).abs() < 1e-9, format!("{v}")))
        }),
        check("Table family (3,2)", || {
            let f = table1_families(&[3, 2])?;
            Ok((f.inconsistencies(16).is_empty(), format!("N = {} mod {}", f.residue, f.modulus)))
        })];
    let failed = rows.iter().filter(|r| !r.pass).count();
    let mut m = Map::new();
    m.insert(
        "checks".into(),
        Value::Array(rows.iter().map(|r| json!({ "name": r.name, "pass": r.pass, "detail": r.detail })).collect()),
    );
    m.insert("passed".into(), json!(rows.len() - failed));
    m.insert("failed".into(), json!(failed));
    if failed > 0 {
        let names: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.name).collect();
        return Err(cross(&format!("verify: {}", names.join(", ")), failed as f64, 0.0));
    }
    Ok(m)
}
