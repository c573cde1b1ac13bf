//! The counterexample: a function whose total modulus is of the critical
//! order `M_n^{-(alpha+beta)}` yet whose means do not converge in `L^1`.

use serde::Serialize;

use super::workload::{check_counterexample_orders, f0_series, f0_tail_bound, GridWorkload, Workload};
use crate::analysis::Exponent;
use crate::cesaro::CesaroWeightTable;
use crate::error::{range, Error, Result};
use crate::group::VilenkinBase;

/// Smallest acceptable `L^1` error across the sweep.
pub const ERROR_FLOOR: f64 = 0.01;

/// How the moduli and norms are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Engine {
    /// Full `M_N x M_N` grid.
    Grid,
    /// One-variable reduction of `f(x, y) = h(x + y)`.
    Diagonal,
}

/// The mean degree is taken as `M_n` itself (not a separate subsequence
/// index), with the error coefficient probed at `(M_n, M_n)`.
pub const NOTE: &str = "mean degree n = m = M_k; coefficient probed at (M_k, M_k)";

/// Row for degree `n = m = M_k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem4Row {
    pub k: usize,
    pub degree: usize,
    /// `||sigma_{M_k,M_k} f_0 - f_0||_1`.
    pub error1: f64,
    /// `|coefficient (M_k, M_k) of sigma_{M_k,M_k} f_0 - f_0|`, measured.
    pub probe: f64,
    /// `(1 / (A_{M_k}^{-alpha} A_{M_k}^{-beta}) - 1) M_k^{-(alpha+beta)}`.
    pub lower_bound: f64,
    /// `omega(f_0, 1/M_k)` in sup norm.
    pub modulus: f64,
    /// `M_k^{alpha+beta} omega(f_0, 1/M_k)`.
    pub modulus_product: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem4Report {
    pub alpha: f64,
    pub beta: f64,
    pub base: String,
    pub engine: Engine,
    /// How the degree and the probed coefficient are tied together.
    pub note: &'static str,
    /// Largest `j` kept in the series.
    pub truncation: usize,
    /// Sup-norm bound for the dropped terms.
    pub tail_bound: f64,
    pub rows: Vec<Theorem4Row>,
    pub min_error1: f64,
    pub min_modulus_product: f64,
    pub max_modulus_product: f64,
}

impl Theorem4Report {
    /// Every row must have `error1 >= lower_bound - tail_bound` and
    /// `error1 > ERROR_FLOOR`.
    pub fn check(&self) -> Result<()> {
        for row in &self.rows {
            if row.error1 < row.lower_bound - self.tail_bound {
                return Err(Error::Assertion(format!(
                    "k = {}: error {} is below the lower bound {} minus the tail {}",
                    row.k, row.error1, row.lower_bound, self.tail_bound
                )));
            }
            if row.error1 <= ERROR_FLOOR {
                return Err(Error::Assertion(format!(
                    "k = {}: error {} does not exceed the floor {ERROR_FLOOR}",
                    row.k, row.error1
                )));
            }
        }
        Ok(())
    }
}

/// Builds `f_0` on `base` and evaluates the scales `k in scales`.
pub fn run_theorem4(
    alpha: f64,
    beta: f64,
    base: &VilenkinBase,
    scales: std::ops::Range<usize>,
    engine: Engine,
) -> Result<Theorem4Report> {
    check_counterexample_orders(alpha, beta)?;
    let series = f0_series(alpha, beta, base)?;
    if scales.start == 0 || scales.end > base.resolution() || scales.is_empty() {
        return Err(range("scale", scales.end, base.resolution() - 1));
    }
    let grid;
    let w: &dyn Workload = match engine {
        Engine::Diagonal => &series,
        Engine::Grid => {
            grid = GridWorkload::new(series.to_grid());
            &grid
        }
    };
    let s = alpha + beta;
    let mut rows = Vec::new();
    for k in scales {
        let mk = base.scale(k);
        let a = CesaroWeightTable::new(-alpha, mk)?.get(mk);
        let b = CesaroWeightTable::new(-beta, mk)?.get(mk);
        let lower_bound = (1.0 / (a * b) - 1.0) * (mk as f64).powf(-s);
        let modulus = w.omega_total(k, Exponent::Infinity)?;
        rows.push(Theorem4Row {
            k,
            degree: mk,
            error1: w.mean_error(alpha, beta, mk, mk, Exponent::ONE)?,
            probe: w.mean_error_coefficient(alpha, beta, mk, mk, (mk, mk))?.norm(),
            lower_bound,
            modulus,
            modulus_product: (mk as f64).powf(s) * modulus,
        });
    }
    let fold = |f: fn(f64, f64) -> f64, init: f64, g: fn(&Theorem4Row) -> f64| {
        rows.iter().map(g).fold(init, f)
    };
    Ok(Theorem4Report {
        alpha,
        beta,
        base: base.to_string(),
        engine,
        note: NOTE,
        truncation: base.resolution() - 1,
        tail_bound: f0_tail_bound(alpha, beta, base),
        min_error1: fold(f64::min, f64::INFINITY, |r| r.error1),
        min_modulus_product: fold(f64::min, f64::INFINITY, |r| r.modulus_product),
        max_modulus_product: fold(f64::max, 0.0, |r| r.modulus_product),
        rows,
    })
}
