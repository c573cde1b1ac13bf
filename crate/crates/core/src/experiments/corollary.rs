//! Per-scale hypothesis quantities and mean errors.

use serde::Serialize;

use super::workload::Workload;
use crate::analysis::Exponent;
use crate::cesaro::check_exponent;
use crate::error::{range, Error, Result};

/// Quantities at scale `k`.
///
/// `hyp_*` are `None` when the corresponding modulus enumeration exceeds the
/// workload's pair budget. `hyp2_first` evaluates the second-variable
/// hypothesis with `omega_1` in place of `omega_2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryRow {
    pub k: usize,
    pub scale: usize,
    /// `M_k^alpha omega_1(1/M_k)`.
    pub hyp1: Option<f64>,
    /// `M_k^beta omega_2(1/M_k)`.
    pub hyp2: Option<f64>,
    pub hyp2_first: Option<f64>,
    /// `M_k^{alpha+beta} omega_12(1/M_k, 1/M_k)`.
    pub hyp12: Option<f64>,
    /// `M_k^{alpha+beta} omega(1/M_k)`.
    pub hyp_total: Option<f64>,
    /// Error at `n = m = M_k`.
    pub error_on_scale: f64,
    /// Error at `n = m = M_k + M_{k-1}`, when below `M_N`.
    pub error_off_scale: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorollaryScan {
    pub alpha: f64,
    pub beta: f64,
    pub p: Exponent,
    pub base: String,
    pub rows: Vec<CorollaryRow>,
    pub hypotheses_decay: bool,
    pub error_decays: bool,
}

/// Decreasing up to a 10% rise per step, ending at most half the start.
pub(crate) fn decays(series: &[f64]) -> bool {
    if series.len() < 2 {
        return false;
    }
    let steady = series.windows(2).all(|w| w[1] <= 1.1 * w[0]);
    steady && series[series.len() - 1] <= 0.5 * series[0]
}

fn within_budget(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Budget { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Scans scales `k in scales` (each in `1..N`).
pub fn run_corollary_scan<W: Workload + ?Sized>(
    w: &W,
    alpha: f64,
    beta: f64,
    p: Exponent,
    scales: std::ops::Range<usize>,
) -> Result<CorollaryScan> {
    check_exponent("alpha", alpha)?;
    check_exponent("beta", beta)?;
    let base = w.base();
    if scales.start == 0 || scales.end > base.resolution() || scales.is_empty() {
        return Err(range("scale", scales.end, base.resolution() - 1));
    }
    let mut rows = Vec::new();
    for k in scales {
        let mk = base.scale(k);
        let mkf = mk as f64;
        let o1 = w.omega1(k, p)?;
        let o2 = w.omega2(k, p)?;
        let o12 = within_budget(w.omega12(k, k, p))?;
        let ot = within_budget(w.omega_total(k, p))?;
        let off = mk + base.scale(k - 1);
        rows.push(CorollaryRow {
            k,
            scale: mk,
            hyp1: Some(mkf.powf(alpha) * o1),
            hyp2: Some(mkf.powf(beta) * o2),
            hyp2_first: Some(mkf.powf(beta) * o1),
            hyp12: o12.map(|v| mkf.powf(alpha + beta) * v),
            hyp_total: ot.map(|v| mkf.powf(alpha + beta) * v),
            error_on_scale: w.mean_error(alpha, beta, mk, mk, p)?,
            error_off_scale: if off < base.size() {
                Some(w.mean_error(alpha, beta, off, off, p)?)
            } else {
                None
            },
        });
    }
    let total: Vec<f64> = rows.iter().filter_map(|r| r.hyp_total).collect();
    let hyp1: Vec<f64> = rows.iter().filter_map(|r| r.hyp1).collect();
    let hyp2: Vec<f64> = rows.iter().filter_map(|r| r.hyp2).collect();
    let hypotheses_decay = if total.len() >= 2 {
        decays(&total)
    } else {
        decays(&hyp1) && decays(&hyp2)
    };
    let errors: Vec<f64> = rows.iter().map(|r| r.error_on_scale).collect();
    Ok(CorollaryScan {
        alpha,
        beta,
        p,
        base: base.to_string(),
        rows,
        hypotheses_decay,
        error_decays: decays(&errors),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cesaro::CesaroWeightTable;
    use crate::experiments::workload::{f0_series, finite_polynomial, holder_series, GridWorkload};
    use crate::group::VilenkinBase;

    #[test]
    fn decay_predicate() {
        assert!(decays(&[1.0, 0.8, 0.85, 0.4]));
        assert!(!decays(&[1.0, 0.8, 0.95, 0.4]));
        assert!(!decays(&[1.0, 0.9, 0.8]));
        assert!(!decays(&[1.0]));
    }

    #[test]
    fn holder_series_decays_and_f0_does_not() {
        let base: VilenkinBase = "2x9".parse().unwrap();
        let h = run_corollary_scan(&holder_series(0.9, &base).unwrap(), 0.3, 0.3, Exponent::ONE, 1..9).unwrap();
        assert!(h.hypotheses_decay);
        assert!(h.error_decays);
        let f = run_corollary_scan(&f0_series(0.3, 0.3, &base).unwrap(), 0.3, 0.3, Exponent::ONE, 1..9).unwrap();
        assert!(!f.hypotheses_decay);
        assert!(!f.error_decays);
        for row in &f.rows {
            assert!(row.error_on_scale > 0.01);
        }
    }

    #[test]
    fn polynomial_error_is_zero_only_for_partial_sums() {
        let base: VilenkinBase = "2x5".parse().unwrap();
        let w = GridWorkload::new(finite_polynomial(&base, 2, 9).unwrap());
        let partial = run_corollary_scan(&w, 0.0, 0.0, Exponent::ONE, 2..5).unwrap();
        for row in &partial.rows {
            assert!(row.error_on_scale < 1e-12);
        }
        let mean = run_corollary_scan(&w, 0.3, 0.3, Exponent::ONE, 2..5).unwrap();
        for row in &mean.rows {
            assert!(row.error_on_scale > 0.0);
            assert!(row.error_on_scale * row.scale as f64 <= 20.0);
        }
        assert!(mean.error_decays);
    }

    #[test]
    fn f0_on_scale_error_has_the_coefficient_floor() {
        let base: VilenkinBase = "2x8".parse().unwrap();
        let w = f0_series(0.3, 0.3, &base).unwrap();
        let scan = run_corollary_scan(&w, 0.3, 0.3, Exponent::ONE, 1..8).unwrap();
        for row in &scan.rows {
            let a = CesaroWeightTable::new(-0.3, row.scale).unwrap().get(row.scale);
            let floor = (1.0 / (a * a) - 1.0) * (row.scale as f64).powf(-0.6);
            assert!(row.error_on_scale >= floor - 1e-12);
        }
    }

    #[test]
    fn over_budget_moduli_are_omitted() {
        let base: VilenkinBase = "2x6".parse().unwrap();
        let w = GridWorkload::with_options(
            finite_polynomial(&base, 2, 1).unwrap(),
            crate::analysis::ModulusOptions {
                budget: 100,
                approximate: None,
            },
        );
        let scan = run_corollary_scan(&w, 0.3, 0.3, Exponent::ONE, 1..6).unwrap();
        assert!(scan.rows[0].hyp12.is_none());
        assert!(scan.rows[4].hyp12.is_some());
        assert!(run_corollary_scan(&w, 0.3, 0.3, Exponent::ONE, 0..3).is_err());
    }
}
