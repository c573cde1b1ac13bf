//! Averages of Dirichlet kernels with random coefficients.
//!
//! `sum_{k=1}^n a_k D_k = sum_{j<n} c_j psi_j` with `c_j = sum_{k>j} a_k`, so
//! one inverse transform gives the whole combination.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{lp_norm_1d, Exponent};
use crate::error::{range, Result};
use crate::group::VilenkinBase;
use crate::transform::{inverse_1d, Spectrum1D};

/// `ratio = (1/n) ||sum a_k D_k||_1 / (n^{-1/2} ||a||_2)`, averaged over trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Row {
    pub n: usize,
    pub ratio: f64,
    pub max_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Lemma1Report {
    pub base: String,
    pub trials: usize,
    pub seed: u64,
    pub rows: Vec<Lemma1Row>,
    /// Least-squares slope of `ratio` against `log2 n`.
    pub slope: f64,
}

/// `(1/n) ||sum_{k=1}^n a_k D_k||_1` for one coefficient vector.
pub fn kernel_average_norm(base: &VilenkinBase, a: &[f64]) -> Result<f64> {
    let n = a.len();
    if n >= base.size() {
        return Err(range("n", n, base.size() - 1));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); base.size()];
    let mut tail = 0.0;
    for j in (0..n).rev() {
        tail += a[j];
        coeffs[j] = Complex64::new(tail, 0.0);
    }
    let g = inverse_1d(&Spectrum1D::new(base.clone(), coeffs)?);
    Ok(lp_norm_1d(&g, Exponent::ONE) / n as f64)
}

/// Coefficients uniform on `[-1, 1]`.
pub fn run_lemma1(base: &VilenkinBase, degrees: &[usize], trials: usize, seed: u64) -> Result<Lemma1Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for &n in degrees {
        if n == 0 {
            return Err(range("n", 0, base.size() - 1));
        }
        let (mut sum, mut max) = (0.0, 0.0f64);
        for _ in 0..trials.max(1) {
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let l2 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
            let r = kernel_average_norm(base, &a)? / (l2 / (n as f64).sqrt());
            sum += r;
            max = max.max(r);
        }
        rows.push(Lemma1Row {
            n,
            ratio: sum / trials.max(1) as f64,
            max_ratio: max,
        });
    }
    Ok(Lemma1Report {
        base: base.to_string(),
        trials: trials.max(1),
        seed,
        slope: slope(&rows),
        rows,
    })
}

fn slope(rows: &[Lemma1Row]) -> f64 {
    if rows.len() < 2 {
        return 0.0;
    }
    let xs: Vec<f64> = rows.iter().map(|r| (r.n as f64).log2()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = rows.iter().map(|r| r.ratio).sum::<f64>() / k;
    let (mut num, mut den) = (0.0, 0.0);
    for (x, r) in xs.iter().zip(rows) {
        num += (x - mx) * (r.ratio - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}
