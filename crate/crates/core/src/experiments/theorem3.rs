//! Mean error against the five-term modulus bound, over a sweep of degrees.

use std::collections::HashMap;

use serde::Serialize;

use super::workload::Workload;
use crate::analysis::Exponent;
use crate::cesaro::check_exponent;
use crate::error::{range, Error, Result};
use crate::group::VilenkinBase;

/// One `(n, m)` row: `lhs = ||sigma_{n,m} f - f||_p`, the bound terms and
/// `ratio = lhs / rhs`.
///
/// With `M_k <= n < M_{k+1}`, `M_l <= m < M_{l+1}` the terms are
/// `omega_1(1/M_{k-1}) M_k^alpha`, `omega_2(1/M_{l-1}) M_l^beta`,
/// `omega_12(1/M_{k-1}, 1/M_{l-1}) M_k^alpha M_l^beta`,
/// `sum_{r<=k-2} (M_r/M_k) omega_1(1/M_r)` and
/// `sum_{s<=l-2} (M_s/M_l) omega_2(1/M_s)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem3Row {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub l: usize,
    pub lhs: f64,
    pub rhs_terms: [f64; 5],
    pub rhs: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem3Report {
    pub alpha: f64,
    pub beta: f64,
    pub p: Exponent,
    pub base: String,
    pub rows: Vec<Theorem3Row>,
    pub sup_ratio: f64,
}

/// `{M_k, M_k + M_{k-1}}` for `k >= 1`, limited to degrees below `M_N`.
pub fn default_degrees(base: &VilenkinBase) -> Vec<usize> {
    let mut out = Vec::new();
    for k in 1..base.resolution() {
        out.push(base.scale(k));
        let off = base.scale(k) + base.scale(k - 1);
        if off < base.size() {
            out.push(off);
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

struct Moduli<'a, W: Workload + ?Sized> {
    w: &'a W,
    p: Exponent,
    first: HashMap<usize, f64>,
    second: HashMap<usize, f64>,
    mixed: HashMap<(usize, usize), f64>,
}

impl<'a, W: Workload + ?Sized> Moduli<'a, W> {
    fn new(w: &'a W, p: Exponent) -> Self {
        Self {
            w,
            p,
            first: HashMap::new(),
            second: HashMap::new(),
            mixed: HashMap::new(),
        }
    }

    fn first(&mut self, k: usize) -> Result<f64> {
        if let Some(&v) = self.first.get(&k) {
            return Ok(v);
        }
        let v = self.w.omega1(k, self.p)?;
        self.first.insert(k, v);
        Ok(v)
    }

    fn second(&mut self, k: usize) -> Result<f64> {
        if let Some(&v) = self.second.get(&k) {
            return Ok(v);
        }
        let v = self.w.omega2(k, self.p)?;
        self.second.insert(k, v);
        Ok(v)
    }

    fn mixed(&mut self, k: usize, l: usize) -> Result<f64> {
        if let Some(&v) = self.mixed.get(&(k, l)) {
            return Ok(v);
        }
        let v = self.w.omega12(k, l, self.p)?;
        self.mixed.insert((k, l), v);
        Ok(v)
    }
}

/// Evaluates every pair in `degrees x degrees`. Degrees must satisfy
/// `M_1 <= d < M_N`.
pub fn run_theorem3<W: Workload + ?Sized>(
    w: &W,
    alpha: f64,
    beta: f64,
    p: Exponent,
    degrees: &[usize],
) -> Result<Theorem3Report> {
    check_exponent("alpha", alpha)?;
    check_exponent("beta", beta)?;
    let base = w.base();
    if base.resolution() < 2 {
        return Err(Error::Domain("the sweep needs resolution >= 2".into()));
    }
    for &d in degrees {
        if d < base.scale(1) || d >= base.size() {
            return Err(range("degree", d, base.size() - 1));
        }
    }
    let roundoff = 1e-12 * w.sup_norm().max(1.0);
    let mut moduli = Moduli::new(w, p);
    let mut rows = Vec::with_capacity(degrees.len() * degrees.len());
    for &n in degrees {
        for &m in degrees {
            let k = base.level_of(n).expect("degree checked above");
            let l = base.level_of(m).expect("degree checked above");
            let (mk, ml) = (base.scale(k) as f64, base.scale(l) as f64);
            let (ka, lb) = (mk.powf(alpha), ml.powf(beta));
            let mut terms = [
                moduli.first(k - 1)? * ka,
                moduli.second(l - 1)? * lb,
                moduli.mixed(k - 1, l - 1)? * ka * lb,
                0.0,
                0.0,
            ];
            for r in 0..k.saturating_sub(1) {
                terms[3] += base.scale(r) as f64 / mk * moduli.first(r)?;
            }
            for s in 0..l.saturating_sub(1) {
                terms[4] += base.scale(s) as f64 / ml * moduli.second(s)?;
            }
            let lhs = w.mean_error(alpha, beta, n, m, p)?;
            let rhs: f64 = terms.iter().sum();
            // A vanishing bound forces a constant function, whose means are
            // exact up to rounding.
            let ratio = if rhs > 0.0 {
                lhs / rhs
            } else if lhs <= roundoff {
                0.0
            } else {
                f64::INFINITY
            };
            rows.push(Theorem3Row {
                n,
                m,
                k,
                l,
                lhs,
                rhs_terms: terms,
                rhs,
                ratio,
            });
        }
    }
    let sup_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    Ok(Theorem3Report {
        alpha,
        beta,
        p,
        base: base.to_string(),
        rows,
        sup_ratio,
    })
}
