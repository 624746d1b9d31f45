//! Exact position-space evolution of the walk's density operator.
//!
//! The full operator is evolved, so every distribution and moment is exact up
//! to floating-point rounding. This module is the reference every other route
//! is checked against.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::smallmat::{is_hermitian_psd, Mat2};
use crate::walk::{build_kraus, KrausPair, WalkParameters};

/// The walker's state at time `t`: one 2×2 coin matrix per site of
/// `{−t, −t+2, …, t}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityState {
    t: usize,
    // sites[i] lives at x = −t + 2i
    sites: Vec<Mat2>,
}

impl DensityState {
    pub fn t(&self) -> usize {
        self.t
    }

    /// Position of storage slot `i`.
    fn position(&self, i: usize) -> i64 {
        2 * i as i64 - self.t as i64
    }

    /// Coin matrix at `x`, or `None` off the parity lattice `[−t, t]`.
    pub fn site(&self, x: i64) -> Option<&Mat2> {
        let offset = x + self.t as i64;
        if offset < 0 || offset % 2 != 0 {
            return None;
        }
        self.sites.get((offset / 2) as usize)
    }

    /// Occupied sites in increasing position.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Mat2)> + '_ {
        self.sites
            .iter()
            .enumerate()
            .map(|(i, m)| (self.position(i), m))
    }

    pub fn total_trace(&self) -> f64 {
        let mut sum = NeumaierSum::default();
        for m in &self.sites {
            sum.add(m.trace().re);
        }
        sum.value()
    }

    /// Checks Hermiticity/positivity of every site and total trace one.
    pub fn check_invariants(&self, tol: f64) -> Result<(), String> {
        if let Some((x, _)) = self.iter().find(|(_, m)| !is_hermitian_psd(m, tol)) {
            return Err(format!("site {x} at t = {} is not Hermitian PSD", self.t));
        }
        let total = self.total_trace();
        if (total - 1.0).abs() > tol {
            return Err(format!("total probability {total} at t = {}", self.t));
        }
        Ok(())
    }
}

/// `ℙ(X_t = x)` for every occupied site.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Distribution {
    pub entries: BTreeMap<i64, f64>,
}

impl Distribution {
    pub fn get(&self, x: i64) -> f64 {
        self.entries.get(&x).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        let mut sum = NeumaierSum::default();
        for &v in self.entries.values() {
            sum.add(v);
        }
        sum.value()
    }

    /// Largest pointwise difference over the union of both supports.
    pub fn max_abs_diff(&self, other: &Distribution) -> f64 {
        self.entries
            .keys()
            .chain(other.entries.keys())
            .map(|&x| (self.get(x) - other.get(x)).abs())
            .fold(0.0, f64::max)
    }

    pub fn moments(&self, t: usize) -> MomentReport {
        let mut e1 = NeumaierSum::default();
        let mut e2 = NeumaierSum::default();
        for (&x, &prob) in &self.entries {
            let x = x as f64;
            e1.add(x * prob);
            e2.add(x * x * prob);
        }
        MomentReport::new(t, e1.value(), e2.value())
    }
}

/// First two moments and standard deviation at one time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentReport {
    pub t: usize,
    pub e1: f64,
    pub e2: f64,
    pub sigma: f64,
}

impl MomentReport {
    pub fn new(t: usize, e1: f64, e2: f64) -> Self {
        Self {
            t,
            e1,
            e2,
            sigma: (e2 - e1 * e1).max(0.0).sqrt(),
        }
    }
}

/// `D_0`: the walker at the origin with coin `diag(p, 1−p)`.
pub fn initial_state(params: &WalkParameters) -> DensityState {
    let p = params.p();
    DensityState {
        t: 0,
        sites: vec![Mat2::from_real([[p, 0.0], [0.0, 1.0 - p]])],
    }
}

/// One step: `ρ'(x) = P ρ(x+1) P† + Q ρ(x−1) Q†`.
pub fn step(state: &DensityState, kraus: &KrausPair) -> DensityState {
    let n = state.sites.len();
    let p_dag = kraus.p.adjoint();
    let q_dag = kraus.q.adjoint();
    let sites = (0..=n)
        .map(|j| {
            // new slot j is x' = −(t+1) + 2j; x'+1 is old slot j, x'−1 is old slot j−1
            let mut m = Mat2::zeros();
            if let Some(from_right) = state.sites.get(j) {
                m = m + kraus.p * *from_right * p_dag;
            }
            if j > 0 {
                m = m + kraus.q * state.sites[j - 1] * q_dag;
            }
            m
        })
        .collect();
    DensityState {
        t: state.t + 1,
        sites,
    }
}

/// `t` steps from [`initial_state`].
pub fn evolve(params: &WalkParameters, t: usize) -> DensityState {
    let kraus = build_kraus(params);
    let mut state = initial_state(params);
    for _ in 0..t {
        state = step(&state, &kraus);
    }
    state
}

/// Iterator over successive states `D_0, D_1, …`.
pub fn trajectory(params: &WalkParameters) -> impl Iterator<Item = DensityState> {
    let kraus = build_kraus(params);
    std::iter::successors(Some(initial_state(params)), move |s| Some(step(s, &kraus)))
}

pub fn distribution(state: &DensityState) -> Distribution {
    Distribution {
        entries: state.iter().map(|(x, m)| (x, m.trace().re)).collect(),
    }
}

pub fn moments(state: &DensityState) -> MomentReport {
    let mut e1 = NeumaierSum::default();
    let mut e2 = NeumaierSum::default();
    for (x, m) in state.iter() {
        let prob = m.trace().re;
        let x = x as f64;
        e1.add(x * prob);
        e2.add(x * x * prob);
    }
    MomentReport::new(state.t, e1.value(), e2.value())
}

/// Compensated (Neumaier) summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}
