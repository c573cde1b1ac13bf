//! Two-variable test functions together with the quantities the experiments
//! evaluate on them: mean errors and moduli of continuity.
//!
//! [`GridWorkload`] works on the full `M_N x M_N` grid. [`DiagonalSeries`]
//! covers functions of the form `f(x, y) = h(x + y)`; since
//! `(x, y) -> (x + y, y)` preserves Haar measure, every `L^p` norm of such a
//! function (and of its means and translates, which keep the form) equals a
//! one-variable norm of a function of `x + y`, so the same numbers are
//! obtained from `M_N` samples instead of `M_N^2`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{self, lp_norm_1d, lp_norm_2d, Exponent, ModulusOptions};
use crate::cesaro::{axis_weights, cesaro_mean_2d, check_exponent, CesaroMeanParams};
use crate::error::{range, Error, Result};
use crate::group::VilenkinBase;
use crate::transform::{
    forward_1d, forward_2d, inverse_1d, GridFunction1D, GridFunction2D, Spectrum1D, Spectrum2D,
};

/// Moduli already computed, keyed by `(kind, k, l, p)`.
#[derive(Debug, Default)]
struct Memo(Mutex<HashMap<(u8, usize, usize, u64), f64>>);

impl Memo {
    fn get(&self, kind: u8, k: usize, l: usize, p: Exponent, f: impl FnOnce() -> Result<f64>) -> Result<f64> {
        let key = (
            kind,
            k,
            l,
            match p {
                Exponent::Finite(q) => q.to_bits(),
                Exponent::Infinity => u64::MAX,
            },
        );
        if let Some(&v) = self.0.lock().expect("memo lock").get(&key) {
            return Ok(v);
        }
        let v = f()?;
        self.0.lock().expect("memo lock").insert(key, v);
        Ok(v)
    }
}

impl Clone for Memo {
    fn clone(&self) -> Self {
        Memo(Mutex::new(self.0.lock().expect("memo lock").clone()))
    }
}

/// Quantities an experiment needs from a two-variable function.
pub trait Workload: Sync {
    fn base(&self) -> &VilenkinBase;

    /// `|| sigma_{n,m}^{-alpha,-beta}(f) - f ||_p`.
    fn mean_error(&self, alpha: f64, beta: f64, n: usize, m: usize, p: Exponent) -> Result<f64>;

    /// The `(n1, n2)` Fourier coefficient of `sigma_{n,m}^{-alpha,-beta}(f) - f`.
    fn mean_error_coefficient(&self, alpha: f64, beta: f64, n: usize, m: usize, at: (usize, usize)) -> Result<Complex64>;

    /// `f^(n1, n2)`.
    fn coefficient(&self, n1: usize, n2: usize) -> Complex64;

    fn omega1(&self, k: usize, p: Exponent) -> Result<f64>;
    fn omega2(&self, k: usize, p: Exponent) -> Result<f64>;
    fn omega12(&self, k: usize, l: usize, p: Exponent) -> Result<f64>;
    fn omega_total(&self, k: usize, p: Exponent) -> Result<f64>;
    fn sup_norm(&self) -> f64;
}

/// A function stored on the full grid together with its spectrum.
pub struct GridWorkload {
    f: GridFunction2D,
    spec: Spectrum2D,
    opts: ModulusOptions,
    memo: Memo,
}

impl GridWorkload {
    pub fn new(f: GridFunction2D) -> Self {
        Self::with_options(f, ModulusOptions::default())
    }

    pub fn with_options(f: GridFunction2D, opts: ModulusOptions) -> Self {
        let spec = forward_2d(&f);
        Self {
            f,
            spec,
            opts,
            memo: Memo::default(),
        }
    }

    pub fn function(&self) -> &GridFunction2D {
        &self.f
    }

    pub fn spectrum(&self) -> &Spectrum2D {
        &self.spec
    }

    pub fn mean(&self, alpha: f64, beta: f64, n: usize, m: usize) -> Result<GridFunction2D> {
        cesaro_mean_2d(&self.spec, &CesaroMeanParams::new(alpha, beta, n, m)?)
    }
}

impl Workload for GridWorkload {
    fn base(&self) -> &VilenkinBase {
        self.f.base()
    }

    fn mean_error(&self, alpha: f64, beta: f64, n: usize, m: usize, p: Exponent) -> Result<f64> {
        let diff = self.mean(alpha, beta, n, m)?.sub(&self.f)?;
        Ok(lp_norm_2d(&diff, p))
    }

    fn mean_error_coefficient(&self, alpha: f64, beta: f64, n: usize, m: usize, at: (usize, usize)) -> Result<Complex64> {
        let diff = self.mean(alpha, beta, n, m)?.sub(&self.f)?;
        Ok(forward_2d(&diff).at(at.0, at.1))
    }

    fn coefficient(&self, n1: usize, n2: usize) -> Complex64 {
        self.spec.at(n1, n2)
    }

    fn omega1(&self, k: usize, p: Exponent) -> Result<f64> {
        self.memo.get(0, k, k, p, || Ok(analysis::omega1(&self.f, k, p)?.value))
    }

    fn omega2(&self, k: usize, p: Exponent) -> Result<f64> {
        self.memo.get(1, k, k, p, || Ok(analysis::omega2(&self.f, k, p)?.value))
    }

    fn omega12(&self, k: usize, l: usize, p: Exponent) -> Result<f64> {
        self.memo
            .get(2, k, l, p, || Ok(analysis::omega12(&self.f, k, l, p, &self.opts)?.value))
    }

    fn omega_total(&self, k: usize, p: Exponent) -> Result<f64> {
        self.memo
            .get(3, k, k, p, || Ok(analysis::omega_total(&self.f, k, p, &self.opts)?.value))
    }

    fn sup_norm(&self) -> f64 {
        lp_norm_2d(&self.f, Exponent::Infinity)
    }
}

/// `f(x, y) = h(x + y)`, stored through `h`.
#[derive(Clone, Debug)]
pub struct DiagonalSeries {
    h: GridFunction1D,
    spec: Spectrum1D,
    opts: ModulusOptions,
    memo: Memo,
}

impl DiagonalSeries {
    pub fn new(h: GridFunction1D) -> Self {
        let spec = forward_1d(&h);
        Self {
            h,
            spec,
            opts: ModulusOptions::default(),
            memo: Memo::default(),
        }
    }

    pub fn with_options(mut self, opts: ModulusOptions) -> Self {
        self.opts = opts;
        self.memo = Memo::default();
        self
    }

    /// `h = sum_{j in levels} c_j r_j`, i.e. `f = sum_j c_j r_j ⊗ r_j`.
    pub fn rademacher_series(base: &VilenkinBase, levels: std::ops::Range<usize>, coeff: impl Fn(usize) -> f64) -> Result<Self> {
        if levels.end > base.resolution() {
            return Err(range("series level", levels.end, base.resolution()));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); base.size()];
        for j in levels {
            coeffs[base.scale(j)] = Complex64::new(coeff(j), 0.0);
        }
        let h = inverse_1d(&Spectrum1D::new(base.clone(), coeffs)?);
        Ok(Self::new(h))
    }

    pub fn profile(&self) -> &GridFunction1D {
        &self.h
    }

    /// The function on the full two-variable grid.
    pub fn to_grid(&self) -> GridFunction2D {
        let base = self.h.base();
        let s = self.h.samples();
        GridFunction2D::from_fn(base, |x, y| s[base.add_index(x, y)])
    }

    /// Profile `g` of `sigma_{n,m}(f) - f = g(x + y)`.
    fn error_profile(&self, alpha: f64, beta: f64, n: usize, m: usize) -> Result<Spectrum1D> {
        let size = self.h.base().size();
        check_exponent("alpha", alpha)?;
        check_exponent("beta", beta)?;
        if n >= size {
            return Err(range("n", n, size - 1));
        }
        if m >= size {
            return Err(range("m", m, size - 1));
        }
        let (wx, nx) = axis_weights(alpha, n, size)?;
        let (wy, ny) = axis_weights(beta, m, size)?;
        let norm = nx * ny;
        let coeffs = self
            .spec
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * (wx[i] * wy[i] / norm - 1.0))
            .collect();
        Spectrum1D::new(self.h.base().clone(), coeffs)
    }
}

impl Workload for DiagonalSeries {
    fn base(&self) -> &VilenkinBase {
        self.h.base()
    }

    fn mean_error(&self, alpha: f64, beta: f64, n: usize, m: usize, p: Exponent) -> Result<f64> {
        let g = inverse_1d(&self.error_profile(alpha, beta, n, m)?);
        Ok(lp_norm_1d(&g, p))
    }

    fn mean_error_coefficient(&self, alpha: f64, beta: f64, n: usize, m: usize, at: (usize, usize)) -> Result<Complex64> {
        let g = self.error_profile(alpha, beta, n, m)?;
        Ok(if at.0 == at.1 {
            g.coeffs()[at.0]
        } else {
            Complex64::new(0.0, 0.0)
        })
    }

    fn coefficient(&self, n1: usize, n2: usize) -> Complex64 {
        if n1 == n2 {
            self.spec.coeffs()[n1]
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn omega1(&self, k: usize, p: Exponent) -> Result<f64> {
        self.memo.get(0, k, k, p, || Ok(analysis::omega_1d(&self.h, k, p)?.0))
    }

    fn omega2(&self, k: usize, p: Exponent) -> Result<f64> {
        self.omega1(k, p)
    }

    fn omega12(&self, k: usize, l: usize, p: Exponent) -> Result<f64> {
        self.memo
            .get(2, k, l, p, || Ok(analysis::mixed_omega_1d(&self.h, k, l, p, &self.opts)?.0))
    }

    /// `u + v` runs over all of `I_k` when `u, v` do.
    fn omega_total(&self, k: usize, p: Exponent) -> Result<f64> {
        self.omega1(k, p)
    }

    fn sup_norm(&self) -> f64 {
        lp_norm_1d(&self.h, Exponent::Infinity)
    }
}

/// Checks `alpha, beta in (0, 1)` and `alpha + beta < 1`.
pub(crate) fn check_counterexample_orders(alpha: f64, beta: f64) -> Result<()> {
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::Domain(format!("{name} = {v} is outside (0, 1)")));
        }
    }
    if alpha + beta >= 1.0 {
        return Err(Error::Domain(format!(
            "alpha + beta = {} must be below 1",
            alpha + beta
        )));
    }
    Ok(())
}

/// `sum_{j >= N} M_j^{-s}` bounded through `M_j >= M_N 2^{j - N}` (every
/// radix is at least 2), summed term by term until the terms vanish.
pub fn rademacher_tail(base: &VilenkinBase, s: f64) -> f64 {
    let mut term = (base.size() as f64).powf(-s);
    let ratio = 2f64.powf(-s);
    let mut sum = 0.0;
    while term > f64::EPSILON * sum || sum == 0.0 {
        sum += term;
        term *= ratio;
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// The counterexample `f_0 = sum_{j=1}^{N-1} M_j^{-(alpha+beta)} r_j ⊗ r_j`,
/// kept in diagonal form.
pub fn f0_series(alpha: f64, beta: f64, base: &VilenkinBase) -> Result<DiagonalSeries> {
    check_counterexample_orders(alpha, beta)?;
    if base.resolution() < 2 {
        return Err(Error::Domain("the counterexample needs resolution >= 2".into()));
    }
    let s = alpha + beta;
    DiagonalSeries::rademacher_series(base, 1..base.resolution(), |j| (base.scale(j) as f64).powf(-s))
}

/// `f_0` sampled on the full grid. Terms with `j >= N` are not representable;
/// their sup-norm contribution is at most [`f0_tail_bound`].
pub fn build_f0(alpha: f64, beta: f64, base: &VilenkinBase) -> Result<GridFunction2D> {
    Ok(f0_series(alpha, beta, base)?.to_grid())
}

/// `2 sum_{j >= N} M_j^{-(alpha+beta)}`.
pub fn f0_tail_bound(alpha: f64, beta: f64, base: &VilenkinBase) -> f64 {
    2.0 * rademacher_tail(base, alpha + beta)
}

/// `sum_{j=1}^{N-1} M_j^{-exponent} r_j ⊗ r_j`, whose total modulus decays
/// like `M_n^{-exponent}`.
pub fn holder_series(exponent: f64, base: &VilenkinBase) -> Result<DiagonalSeries> {
    if exponent <= 0.0 {
        return Err(Error::Domain(format!("exponent {exponent} must be positive")));
    }
    DiagonalSeries::rademacher_series(base, 1..base.resolution(), |j| (base.scale(j) as f64).powf(-exponent))
}

/// A level-`level` step function: seeded random coefficients on the
/// frequencies `[0, M_level)^2`, zero elsewhere.
pub fn finite_polynomial(base: &VilenkinBase, level: usize, seed: u64) -> Result<GridFunction2D> {
    if level > base.resolution() {
        return Err(range("polynomial level", level, base.resolution()));
    }
    let side = base.size();
    let top = base.scale(level);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); side * side];
    for n1 in 0..top {
        for n2 in 0..top {
            coeffs[n1 * side + n2] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    Ok(crate::transform::inverse_2d(&Spectrum2D::new(base.clone(), coeffs)?))
}

/// Seeded random step function with independent cell values.
pub fn random_step_function(base: &VilenkinBase, seed: u64) -> GridFunction2D {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = base.size();
    let samples: Vec<Complex64> = (0..side * side)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    GridFunction2D::new(base.clone(), samples).expect("sample count matches the grid")
}
