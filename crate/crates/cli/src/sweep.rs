use hyperstate::dense::build_dense;
use hyperstate::entanglement::{
    conjecture_lambda, geomeasure_closed, geomeasure_oracle, geomeasure_symmetric_numeric, single_edge_geomeasure,
    ClosedForm,
};
use hyperstate::hypergraph::{build_symmetric, classify_cardinalities, HypergraphSpec, StabilizerClass};
use hyperstate::nonlocality::{mermin_expectation, mermin_y_on_x_family};
use hyperstate::transforms::Pauli;
use hyperstate::{Error, Result};
use rayon::prelude::*;

use crate::output::csv_float;
use crate::{Figure, MethodArg, Panel};

pub struct SweepConfig {
    pub figure: Figure,
    pub from: Option<usize>,
    pub to: Option<usize>,
    pub r: Vec<u32>,
    pub panel: Panel,
    pub method: MethodArg,
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub series: String,
    pub n: usize,
    pub value: f64,
    pub method: &'static str,
    pub residual: Option<f64>,
}

enum Job {
    SingleEdge(usize),
    Mermin { r: u32, n: usize },
    Gem { series: String, k: Vec<usize>, n: usize, gap: bool },
    Conjecture(usize),
}

fn range(cfg: &SweepConfig, from: usize, to: usize) -> Result<(usize, usize)> {
    let (a, b) = (cfg.from.unwrap_or(from), cfg.to.unwrap_or(to));
    if a > b {
        return Err(Error::Precondition(format!("empty range {a}..{b}")));
    }
    Ok((a, b))
}

fn jobs(cfg: &SweepConfig) -> Result<Vec<Job>> {
    let mut out = Vec::new();
    match cfg.figure {
        Figure::Fig2 => {
            let (a, b) = range(cfg, 3, 10)?;
            if a < 3 {
                return Err(Error::Precondition("fig2 needs N >= 3".into()));
            }
            out.extend((a..=b).map(Job::SingleEdge));
        }
        Figure::Fig3 => {
            let (a, b) = range(cfg, 1, 64)?;
            let rs = if cfg.r.is_empty() { vec![3, 4, 5] } else { cfg.r.clone() };
            for r in rs {
                if !(3..=6).contains(&r) {
                    return Err(Error::Precondition(format!("fig3 needs 3 <= r <= 6, got {r}")));
                }
                let p = 1usize << r;
                let k = p / 2 + 1;
                out.extend((a.max(k)..=b).filter(|n| n % p == p / 2).map(|n| Job::Mermin { r, n }));
            }
        }
        Figure::FigGem => {
            let (a, b) = range(cfg, 3, 40)?;
            let add = |out: &mut Vec<Job>, series: &str, k: &[usize], want: StabilizerClass, gap: bool| {
                let kmax = *k.iter().max().expect("non-empty");
                for n in a.max(kmax)..=b {
                    if classify_cardinalities(n, k) == want {
                        out.push(Job::Gem { series: series.into(), k: k.to_vec(), n, gap });
                    }
                }
            };
            if matches!(cfg.panel, Panel::A | Panel::Both) {
                add(&mut out, "a_y3", &[3], StabilizerClass::PlusY, false);
                add(&mut out, "a_y5", &[5], StabilizerClass::PlusY, false);
                add(&mut out, "a_y9", &[9], StabilizerClass::PlusY, false);
                out.extend((a.max(9)..=b).filter(|n| n % 16 == 8).map(Job::Conjecture));
            }
            if matches!(cfg.panel, Panel::B | Panel::Both) {
                add(&mut out, "b_x3", &[3], StabilizerClass::PlusX, true);
                add(&mut out, "b_y3", &[3], StabilizerClass::PlusY, true);
                add(&mut out, "b_x5", &[5], StabilizerClass::PlusX, true);
                add(&mut out, "b_y5", &[5], StabilizerClass::PlusY, true);
            }
        }
    }
    Ok(out)
}

fn single_edge_row(cfg: &SweepConfig, n: usize) -> Result<Row> {
    let v = single_edge_geomeasure(n)?.value;
    let alt = if cfg.method == MethodArg::Oracle {
        let spec = HypergraphSpec::explicit(n, &[(0..n).collect()])?;
        geomeasure_oracle(&build_dense(&spec)?, cfg.restarts, cfg.seed)?.value
    } else {
        let s = build_symmetric(&HypergraphSpec::uniform(n, &[n])?)?;
        geomeasure_symmetric_numeric(&s, true)?.value
    };
    let residual = (v - alt).abs();
    if residual > cfg.tol.max(1e-8) {
        return Err(Error::CrossCheck { what: format!("single edge N={n}"), a: v, b: alt });
    }
    Ok(Row { series: "single_edge".into(), n, value: v, method: "numeric_opt", residual: Some(residual) })
}

fn mermin_row(r: u32, n: usize) -> Result<Row> {
    let k = (1usize << (r - 1)) + 1;
    let s = build_symmetric(&HypergraphSpec::uniform(n, &[k])?)?;
    let qv = mermin_expectation(&s, Pauli::Y)?.re;
    let closed = mermin_y_on_x_family(r, n)?;
    let residual = (qv - closed).abs() / closed.abs();
    if residual > 1e-8 {
        return Err(Error::CrossCheck { what: format!("B^Y on N={n}, k={k}"), a: qv, b: closed });
    }
    Ok(Row { series: format!("r{r}"), n, value: qv.log2(), method: "contraction", residual: Some(residual) })
}

fn gem_row(cfg: &SweepConfig, series: &str, k: &[usize], n: usize, gap: bool) -> Result<Row> {
    let spec = HypergraphSpec::uniform(n, k)?;
    let numeric = geomeasure_symmetric_numeric(&build_symmetric(&spec)?, true)?.value;
    let (value, method, residual) = match geomeasure_closed(&spec) {
        Ok(ClosedForm::Exact(c)) => {
            let d = (c.value - numeric).abs();
            if d > cfg.tol {
                return Err(Error::CrossCheck { what: format!("closed vs numeric, k={k:?} N={n}"), a: c.value, b: numeric });
            }
            if cfg.method == MethodArg::Closed {
                (c.value, "closed_form", d)
            } else {
                (numeric, "numeric_opt", d)
            }
        }
        Ok(ClosedForm::Bounds(b)) => {
            let outside = (b.lower - numeric).max(numeric - b.upper).max(0.0);
            if outside > cfg.tol {
                return Err(Error::CrossCheck { what: format!("bounds, k={k:?} N={n}"), a: numeric, b: b.lower });
            }
            (numeric, "numeric_opt", outside)
        }
        Err(Error::UnsupportedFamily { .. }) => (numeric, "numeric_opt", 0.0),
        Err(e) => return Err(e),
    };
    let value = if gap { 0.75 - value } else { value };
    Ok(Row { series: series.into(), n, value, method, residual: Some(residual) })
}

fn run_job(cfg: &SweepConfig, job: &Job) -> Result<Row> {
    match job {
        Job::SingleEdge(n) => single_edge_row(cfg, *n),
        Job::Mermin { r, n } => mermin_row(*r, *n),
        Job::Gem { series, k, n, gap } => gem_row(cfg, series, k, *n, *gap),
        Job::Conjecture(n) => {
            let c = conjecture_lambda(4, *n)?;
            Ok(Row { series: "a_conj9".into(), n: *n, value: c.bound, method: "closed_form", residual: None })
        }
    }
}

pub fn rows(cfg: &SweepConfig) -> Result<Vec<Row>> {
    let jobs = jobs(cfg)?;
    let mut rows = jobs.par_iter().map(|j| run_job(cfg, j)).collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.series.cmp(&b.series).then(a.n.cmp(&b.n)));
    Ok(rows)
}

pub fn run(cfg: &SweepConfig) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Precondition(format!("csv: {e}"));
    w.write_record(["series", "n", "value", "method", "residual"]).map_err(io)?;
    for r in rows(cfg)? {
        let residual = r.residual.map(csv_float).unwrap_or_default();
        w.write_record([r.series, r.n.to_string(), csv_float(r.value), r.method.to_string(), residual])
            .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Precondition(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
