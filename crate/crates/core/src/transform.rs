//! Characters of the group, Dirichlet kernels, and the Vilenkin-Fourier
//! transform on level-`N` step functions.
//!
//! Forward transforms carry the Haar weight `1/M_N`, so a coefficient is the
//! integral `f^(n) = ∫ f conj(psi_n) dmu`; synthesis carries no weight.
//! The fast path is a mixed-radix butterfly: one `m_k`-point DFT per digit
//! level, each evaluated by direct summation. Because `psi_n(x)` factors as
//! `prod_k exp(2 pi i n_k x_k / m_k)` there are no twiddle factors between
//! stages.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{range, Error, Result};
use crate::group::{GroupPoint, VilenkinBase};

/// One of the two coordinate axes of `G_m x G_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    First,
    Second,
}

/// A step function on `G_m`, one sample per level-`N` cell in index order.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction1D {
    base: VilenkinBase,
    samples: Vec<Complex64>,
}

/// A step function on `G_m x G_m`, row-major: sample `x * M_N + y`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction2D {
    base: VilenkinBase,
    samples: Vec<Complex64>,
}

/// Coefficients `f^(n)` for `0 <= n < M_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum1D {
    base: VilenkinBase,
    coeffs: Vec<Complex64>,
}

/// Coefficients `f^(n1, n2)`, row-major in `n1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum2D {
    base: VilenkinBase,
    coeffs: Vec<Complex64>,
}

fn check_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::Validation(format!(
            "{what} has {got} values, expected {want}"
        )));
    }
    Ok(())
}

impl GridFunction1D {
    pub fn new(base: VilenkinBase, samples: Vec<Complex64>) -> Result<Self> {
        check_len("1D grid function", samples.len(), base.size())?;
        Ok(Self { base, samples })
    }

    pub fn from_fn(base: &VilenkinBase, f: impl Fn(usize) -> Complex64) -> Self {
        let samples = (0..base.size()).map(f).collect();
        Self {
            base: base.clone(),
            samples,
        }
    }

    pub fn constant(base: &VilenkinBase, c: Complex64) -> Self {
        Self::from_fn(base, |_| c)
    }

    pub fn base(&self) -> &VilenkinBase {
        &self.base
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// `∫ f dmu`.
    pub fn integral(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.base.size() as f64
    }

    /// Largest pointwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.samples, &other.samples)
    }
}

impl GridFunction2D {
    pub fn new(base: VilenkinBase, samples: Vec<Complex64>) -> Result<Self> {
        check_len("2D grid function", samples.len(), base.size() * base.size())?;
        Ok(Self { base, samples })
    }

    pub fn from_fn(base: &VilenkinBase, f: impl Fn(usize, usize) -> Complex64 + Sync) -> Self {
        let size = base.size();
        let samples = (0..size * size)
            .into_par_iter()
            .map(|i| f(i / size, i % size))
            .collect();
        Self {
            base: base.clone(),
            samples,
        }
    }

    pub fn constant(base: &VilenkinBase, c: Complex64) -> Self {
        Self::from_fn(base, |_, _| c)
    }

    /// `(g ⊗ h)(x, y) = g(x) h(y)`.
    pub fn outer(g: &GridFunction1D, h: &GridFunction1D) -> Result<Self> {
        if g.base != h.base {
            return Err(Error::Validation("outer product of different bases".into()));
        }
        Ok(Self::from_fn(&g.base, |x, y| g.samples[x] * h.samples[y]))
    }

    pub fn base(&self) -> &VilenkinBase {
        &self.base
    }

    /// Side length `M_N`.
    pub fn side(&self) -> usize {
        self.base.size()
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> Complex64 {
        self.samples[x * self.side() + y]
    }

    pub fn integral(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.samples.len() as f64
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.samples, &other.samples)
    }

    /// `self - other`, pointwise.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::Validation("difference of different bases".into()));
        }
        let samples = self
            .samples
            .par_iter()
            .zip(&other.samples)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            base: self.base.clone(),
            samples,
        })
    }

    /// `a * self + b * other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::Validation("combination of different bases".into()));
        }
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(Self {
            base: self.base.clone(),
            samples,
        })
    }
}

impl Spectrum1D {
    pub fn new(base: VilenkinBase, coeffs: Vec<Complex64>) -> Result<Self> {
        check_len("1D spectrum", coeffs.len(), base.size())?;
        Ok(Self { base, coeffs })
    }

    /// Spectrum with a single unit coefficient at `n`.
    pub fn delta(base: &VilenkinBase, n: usize) -> Result<Self> {
        if n >= base.size() {
            return Err(range("frequency", n, base.size()));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); base.size()];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Ok(Self {
            base: base.clone(),
            coeffs,
        })
    }

    pub fn base(&self) -> &VilenkinBase {
        &self.base
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.coeffs, &other.coeffs)
    }

    /// `sum |f^(n)|^2`.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

impl Spectrum2D {
    pub fn new(base: VilenkinBase, coeffs: Vec<Complex64>) -> Result<Self> {
        check_len("2D spectrum", coeffs.len(), base.size() * base.size())?;
        Ok(Self { base, coeffs })
    }

    pub fn base(&self) -> &VilenkinBase {
        &self.base
    }

    pub fn side(&self) -> usize {
        self.base.size()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    #[inline]
    pub fn at(&self, n1: usize, n2: usize) -> Complex64 {
        self.coeffs[n1 * self.side() + n2]
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.coeffs, &other.coeffs)
    }

    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `r_k(x) = exp(2 pi i x_k / m_k)`.
pub fn rademacher(base: &VilenkinBase, k: usize, x: &GroupPoint) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x.digit(k) as f64 / base.radix(k) as f64)
}

/// `psi_n(x) = prod_k r_k(x)^{n_k}`, evaluated factor by factor.
pub fn vilenkin_psi(base: &VilenkinBase, n: usize, x: &GroupPoint) -> Result<Complex64> {
    if n >= base.size() {
        return Err(range("frequency", n, base.size()));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 0..base.resolution() {
        let nk = base.digit(n, k);
        if nk != 0 {
            // r_k^{n_k}, reduced mod m_k before the exponential
            let m = base.radix(k);
            let e = (nk * x.digit(k)) % m;
            acc *= Complex64::from_polar(1.0, TAU * e as f64 / m as f64);
        }
    }
    Ok(acc)
}

/// Character values `psi_n(x)` on linear indices, via a single table of
/// `M_N`-th roots of unity. Used by the direct-summation oracle.
pub struct CharacterTable {
    base: VilenkinBase,
    digits: Vec<usize>,
    weights: Vec<usize>,
    roots: Vec<Complex64>,
}

impl CharacterTable {
    pub fn new(base: &VilenkinBase) -> Self {
        let size = base.size();
        let levels = base.resolution();
        let mut digits = Vec::with_capacity(size * levels);
        for n in 0..size {
            digits.extend((0..levels).map(|k| base.digit(n, k)));
        }
        let weights = base.radices().iter().map(|&m| size / m).collect();
        let roots = (0..size)
            .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / size as f64))
            .collect();
        Self {
            base: base.clone(),
            digits,
            weights,
            roots,
        }
    }

    /// `psi_n(x)`; the phase `sum_k n_k x_k / m_k` is accumulated exactly in
    /// units of `1/M_N`.
    #[inline]
    pub fn psi(&self, n: usize, x: usize) -> Complex64 {
        let levels = self.base.resolution();
        let dn = &self.digits[n * levels..(n + 1) * levels];
        let dx = &self.digits[x * levels..(x + 1) * levels];
        let size = self.base.size();
        let mut phase = 0usize;
        for k in 0..levels {
            let m = self.base.radix(k);
            phase += ((dn[k] * dx[k]) % m) * self.weights[k];
        }
        self.roots[phase % size]
    }
}

/// `D_n = sum_{k<n} psi_k` sampled on the grid (synthesis of the indicator
/// spectrum of `[0, n)`).
pub fn dirichlet_kernel(base: &VilenkinBase, n: usize) -> Result<GridFunction1D> {
    if n == 0 || n > base.size() {
        return Err(range("kernel order", n, base.size()));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); base.size()];
    coeffs[..n].fill(Complex64::new(1.0, 0.0));
    Ok(inverse_1d(&Spectrum1D {
        base: base.clone(),
        coeffs,
    }))
}

/// Per-level root tables for the butterfly.
struct Plan {
    stages: Vec<Stage>,
}

struct Stage {
    radix: usize,
    stride: usize,
    roots: Vec<Complex64>,
}

impl Plan {
    fn new(base: &VilenkinBase, sign: f64) -> Self {
        let stages = (0..base.resolution())
            .map(|k| {
                let m = base.radix(k);
                Stage {
                    radix: m,
                    stride: base.scale(k),
                    roots: (0..m)
                        .map(|j| Complex64::from_polar(1.0, sign * TAU * j as f64 / m as f64))
                        .collect(),
                }
            })
            .collect();
        Self { stages }
    }

    /// Applies every digit-level DFT in place, least significant level first.
    fn run(&self, data: &mut [Complex64]) {
        let mut gather = Vec::new();
        for st in &self.stages {
            let (m, s) = (st.radix, st.stride);
            let block = m * s;
            gather.resize(m, Complex64::new(0.0, 0.0));
            for start in (0..data.len()).step_by(block) {
                for off in 0..s {
                    let lane = start + off;
                    for j in 0..m {
                        gather[j] = data[lane + j * s];
                    }
                    for t in 0..m {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for (j, v) in gather.iter().enumerate() {
                            acc += v * st.roots[(t * j) % m];
                        }
                        data[lane + t * s] = acc;
                    }
                }
            }
        }
    }
}

pub fn forward_1d(f: &GridFunction1D) -> Spectrum1D {
    let mut coeffs = f.samples.clone();
    Plan::new(&f.base, -1.0).run(&mut coeffs);
    let w = f.base.cell_measure();
    coeffs.iter_mut().for_each(|c| *c *= w);
    Spectrum1D {
        base: f.base.clone(),
        coeffs,
    }
}

pub fn inverse_1d(spec: &Spectrum1D) -> GridFunction1D {
    let mut samples = spec.coeffs.clone();
    Plan::new(&spec.base, 1.0).run(&mut samples);
    GridFunction1D {
        base: spec.base.clone(),
        samples,
    }
}

fn transpose(data: &[Complex64], side: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    out.par_chunks_mut(side).enumerate().for_each(|(c, row)| {
        for (r, v) in row.iter_mut().enumerate() {
            *v = data[r * side + c];
        }
    });
    out
}

/// Rows, then columns; each row is reduced in a fixed order, so the result
/// does not depend on the thread count.
fn separable(base: &VilenkinBase, data: Vec<Complex64>, sign: f64) -> Vec<Complex64> {
    let side = base.size();
    let plan = Plan::new(base, sign);
    let mut data = data;
    data.par_chunks_mut(side).for_each(|row| plan.run(row));
    let mut t = transpose(&data, side);
    t.par_chunks_mut(side).for_each(|row| plan.run(row));
    transpose(&t, side)
}

pub fn forward_2d(f: &GridFunction2D) -> Spectrum2D {
    let mut coeffs = separable(&f.base, f.samples.clone(), -1.0);
    let w = f.base.cell_measure() * f.base.cell_measure();
    coeffs.par_iter_mut().for_each(|c| *c *= w);
    Spectrum2D {
        base: f.base.clone(),
        coeffs,
    }
}

pub fn inverse_2d(spec: &Spectrum2D) -> GridFunction2D {
    GridFunction2D {
        base: spec.base.clone(),
        samples: separable(&spec.base, spec.coeffs.clone(), 1.0),
    }
}

fn naive_rows(table: &CharacterTable, data: &[Complex64], side: usize, conj: bool) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); data.len()];
    out.par_chunks_mut(side)
        .zip(data.par_chunks(side))
        .for_each(|(dst, src)| {
            for (n, d) in dst.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (x, v) in src.iter().enumerate() {
                    let c = table.psi(n, x);
                    acc += v * if conj { c.conj() } else { c };
                }
                *d = acc;
            }
        });
    out
}

/// Direct summation of the defining integral, `O(M_N^2)`.
pub fn naive_1d(f: &GridFunction1D) -> Spectrum1D {
    let table = CharacterTable::new(&f.base);
    let w = f.base.cell_measure();
    let mut coeffs = naive_rows(&table, &f.samples, f.base.size(), true);
    coeffs.iter_mut().for_each(|c| *c *= w);
    Spectrum1D {
        base: f.base.clone(),
        coeffs,
    }
}

/// Direct summation along rows and then columns, `O(M_N^3)`.
pub fn naive_2d(f: &GridFunction2D) -> Spectrum2D {
    let side = f.side();
    let table = CharacterTable::new(&f.base);
    let rows = naive_rows(&table, &f.samples, side, true);
    let cols = naive_rows(&table, &transpose(&rows, side), side, true);
    let mut coeffs = transpose(&cols, side);
    let w = f.base.cell_measure() * f.base.cell_measure();
    coeffs.iter_mut().for_each(|c| *c *= w);
    Spectrum2D {
        base: f.base.clone(),
        coeffs,
    }
}

/// `S_{n1,n2}(f) = sum_{k1<n1, k2<n2} f^(k1,k2) psi_k1 ⊗ psi_k2`.
pub fn partial_sum_2d(spec: &Spectrum2D, n1: usize, n2: usize) -> Result<GridFunction2D> {
    let side = spec.side();
    if n1 > side {
        return Err(range("n1", n1, side));
    }
    if n2 > side {
        return Err(range("n2", n2, side));
    }
    let mut coeffs = spec.coeffs.clone();
    coeffs.par_chunks_mut(side).enumerate().for_each(|(k1, row)| {
        if k1 >= n1 {
            row.fill(Complex64::new(0.0, 0.0));
        } else {
            row[n2..].fill(Complex64::new(0.0, 0.0));
        }
    });
    Ok(inverse_2d(&Spectrum2D {
        base: spec.base.clone(),
        coeffs,
    }))
}

/// `S_n^(1)` (truncation in the first variable only) or `S_n^(2)`.
pub fn partial_sum_marginal(spec: &Spectrum2D, axis: Axis, n: usize) -> Result<GridFunction2D> {
    let side = spec.side();
    match axis {
        Axis::First => partial_sum_2d(spec, n, side),
        Axis::Second => partial_sum_2d(spec, side, n),
    }
}
