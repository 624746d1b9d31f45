use std::f64::consts::TAU;

use rayon::prelude::*;

use super::format::{Cell, Table};
use super::RunConfig;
use crate::error::{Error, Result};
use crate::phases::{
    ballistic_set, classify, diffusion_constant, moments_case_a, moments_case_b,
    moments_case_c_asymptotic, sigma_limit_with, PhaseKind, PhaseReport, PhaseSubcase,
};
use crate::simulate::{distribution, moments, trajectory};
use crate::smallmat::PolyCoeffs;
use crate::spectral::spectrum;
use crate::walk::WalkParameters;

/// Trace and positivity slack for the per-run invariant checks.
const INVARIANT_TOL: f64 = 1e-9;

/// Largest acceptable coefficient mismatch in the spectrum factorization.
const FACTORIZATION_TOL: f64 = 1e-9;

pub fn cmd_simulate(cfg: &RunConfig) -> Result<Table> {
    let params = cfg.params()?;
    let state = crate::simulate::evolve(&params, cfg.t);
    state
        .check_invariants(INVARIANT_TOL)
        .map_err(Error::InvariantViolation)?;
    let mut table = Table::new(&["x", "probability"]);
    for (x, prob) in distribution(&state).entries {
        table.push(vec![Cell::Int(x), Cell::Float(prob)]);
    }
    Ok(table)
}

/// Closed-form or asymptotic `(e1, e2, σ)` at `t`, where the class has one.
type ClosedForm = Box<dyn Fn(usize) -> Result<[Option<f64>; 3]>>;

fn closed_form(params: &WalkParameters, eps: f64) -> Result<ClosedForm> {
    let class = classify(params, eps);
    let pr = *params;
    Ok(match (class.kind, class.subcase) {
        (PhaseKind::BallisticCaseA | PhaseKind::DiffusiveCaseAC1Zero, _) => Box::new(move |t| {
            let m = moments_case_a(&pr, t)?;
            Ok([Some(m.e1), Some(m.e2), Some(m.sigma)])
        }),
        (_, PhaseSubcase::ParityS0C1Zero) => Box::new(move |t| {
            let m = moments_case_b(&pr, t)?;
            Ok([Some(m.e1), Some(m.e2), Some(m.sigma)])
        }),
        (_, PhaseSubcase::C0Zero) => {
            let a = moments_case_c_asymptotic(params)?;
            Box::new(move |t| {
                Ok([
                    Some(a.e1_limit),
                    Some(a.e2_slope * t as f64 + a.e2_offset),
                    Some(a.sigma(t)),
                ])
            })
        }
        _ => {
            // only the leading order is known: E(X_t) = O(1), σ ~ D√t
            let d = diffusion_constant(params)?;
            Box::new(move |t| Ok([None, Some(d * d * t as f64), Some(d * (t as f64).sqrt())]))
        }
    })
}

pub fn cmd_moments(cfg: &RunConfig) -> Result<Table> {
    let params = cfg.params()?;
    let closed = closed_form(&params, cfg.eps)?;
    let mut table = Table::new(&[
        "t",
        "e1",
        "e2",
        "sigma",
        "e1_closed",
        "e2_closed",
        "sigma_closed",
        "sigma_over_t",
        "sigma_over_sqrt_t",
    ]);
    for state in trajectory(&params).take(cfg.t + 1).step_by(cfg.stride) {
        state
            .check_invariants(INVARIANT_TOL)
            .map_err(Error::InvariantViolation)?;
        let m = moments(&state);
        let [e1c, e2c, sc] = closed(m.t)?;
        let tf = m.t as f64;
        let ratios = if m.t == 0 {
            [None, None]
        } else {
            [Some(m.sigma / tf), Some(m.sigma / tf.sqrt())]
        };
        table.push(vec![
            Cell::Int(m.t as i64),
            m.e1.into(),
            m.e2.into(),
            m.sigma.into(),
            e1c.into(),
            e2c.into(),
            sc.into(),
            ratios[0].into(),
            ratios[1].into(),
        ]);
    }
    Ok(table)
}

pub fn cmd_classify(cfg: &RunConfig) -> Result<PhaseReport> {
    sigma_limit_with(&cfg.params()?, cfg.eps)
}

pub(super) fn classify_table(report: &PhaseReport) -> Table {
    let mut table = Table::new(&[
        "theta0",
        "theta1",
        "p",
        "case",
        "subcase",
        "scaling_exponent",
        "limit_constant",
        "bounded_motion",
    ]);
    table.push(vec![
        report.theta0.into(),
        report.theta1.into(),
        report.p.into(),
        report.class.kind.label().into(),
        report.class.subcase.label().into(),
        report.scaling_exponent.into(),
        report.limit_constant.into(),
        Cell::Text(report.bounded_motion().to_string()),
    ]);
    table
}

/// Rows `quantity,index,re,im`: the four eigenvalues, the characteristic
/// polynomial (ascending), the cubic factor when there is one, and the
/// factorization residual.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Table> {
    let params = cfg.params()?;
    let k = cfg
        .k
        .ok_or_else(|| Error::InvalidParameter("spectrum needs --k".into()))?;
    let report = spectrum(&params, k)?;
    let residual = report.factorization_residual().unwrap_or_else(|| {
        report
            .char_poly
            .max_coeff_diff(&PolyCoeffs::from_roots(&report.eigenvalues))
    });
    if residual.is_nan() || residual > FACTORIZATION_TOL {
        return Err(Error::InvariantViolation(format!(
            "factorization residual {residual:e}"
        )));
    }

    let mut table = Table::new(&["quantity", "index", "re", "im"]);
    let mut push = |name: &str, i: usize, re: f64, im: Option<f64>| {
        table.push(vec![name.into(), Cell::Int(i as i64), re.into(), im.into()]);
    };
    for (j, l) in report.eigenvalues.iter().enumerate() {
        push("eigenvalue", j, l.re, Some(l.im));
    }
    for (j, c) in report.char_poly.coeffs().iter().enumerate() {
        push("char_poly", j, c.re, Some(c.im));
    }
    if let Some(g) = &report.cubic_factor {
        for (j, c) in g.coeffs().iter().enumerate() {
            push("cubic_factor", j, c.re, Some(c.im));
        }
    }
    push("factorization_residual", 0, residual, None);
    Ok(table)
}

/// The phase grid and the analytic ballistic curve sampled on the same θ0 nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutput {
    pub cells: Table,
    pub curve: Table,
}

pub const SWEEP_COLUMNS: [&str; 4] = ["theta0", "theta1", "case", "limit_constant"];

pub fn cmd_sweep(cfg: &RunConfig) -> Result<SweepOutput> {
    let n = cfg.grid;
    let node = |i: usize| TAU * i as f64 / n as f64;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;

    let rows: Vec<Vec<Vec<Cell>>> = pool.install(|| {
        (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let params = WalkParameters::new(node(i), node(j), cfg.p)?;
                        let report = sigma_limit_with(&params, cfg.eps)?;
                        Ok(vec![
                            node(i).into(),
                            node(j).into(),
                            report.class.kind.label().into(),
                            report.limit_constant.into(),
                        ])
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut cells = Table::new(&SWEEP_COLUMNS);
    cells.rows = rows.into_iter().flatten().collect();

    let mut curve = Table::new(&["theta0", "theta1"]);
    for i in 0..n {
        for t1 in ballistic_set(node(i)) {
            curve.push(vec![node(i).into(), t1.into()]);
        }
    }
    Ok(SweepOutput { cells, curve })
}
