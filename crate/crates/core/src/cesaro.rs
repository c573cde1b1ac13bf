//! Cesàro numbers `A_n^a` of real order and the `(C, -alpha, -beta)` means of
//! Vilenkin-Fourier series.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{range, Error, Result};
use crate::transform::{inverse_1d, inverse_2d, GridFunction1D, GridFunction2D, Spectrum1D, Spectrum2D};

/// `A_0^a .. A_n^a` for a fixed real order `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct CesaroWeightTable {
    order: f64,
    values: Vec<f64>,
}

/// Orders that are negative integers other than `-1` are rejected.
fn check_order(order: f64) -> Result<()> {
    if !order.is_finite() {
        return Err(Error::Domain(format!("order {order} is not finite")));
    }
    if order <= -2.0 && order.fract() == 0.0 {
        return Err(Error::Domain(format!(
            "order {order} is a negative integer"
        )));
    }
    Ok(())
}

impl CesaroWeightTable {
    /// Builds the table with `A_k = A_{k-1} (a + k) / k`.
    pub fn new(order: f64, n: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self::build(order, 0.0, n))
    }

    /// Table at order `a + shift` for an integer `shift`; the factors are
    /// formed as `a + (shift + k)` so the integer part is added exactly.
    ///
    /// The running product is carried in double-double arithmetic, so each
    /// stored value is within about one ulp of the exact product even for
    /// `n` near `10^6`.
    fn build(order: f64, shift: f64, n: usize) -> Self {
        let mut values = Vec::with_capacity(n + 1);
        let mut a = DoubleDouble::ONE;
        values.push(1.0);
        for k in 1..=n {
            let factor = DoubleDouble::sum(order, shift + k as f64);
            a = a.mul(factor).div_f64(k as f64);
            values.push(a.hi + a.lo);
        }
        Self {
            order: order + shift,
            values,
        }
    }

    /// The table of order `a - 1` with the same length.
    pub fn companion(&self) -> Result<Self> {
        check_order(self.order - 1.0)?;
        Ok(Self::build(self.order, -1.0, self.len() - 1))
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `A_k`.
    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.values[k]
    }

    /// Number of stored values, `n + 1`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest index `n`.
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Clone, Copy, Debug)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    /// Exact `a + b`.
    fn sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self::quick(s, err)
    }

    fn quick(a: f64, b: f64) -> Self {
        let s = a + b;
        Self { hi: s, lo: b - (s - a) }
    }

    fn mul(self, o: Self) -> Self {
        let p = self.hi * o.hi;
        let err = self.hi.mul_add(o.hi, -p);
        Self::quick(p, err + (self.hi * o.lo + self.lo * o.hi))
    }

    fn div_f64(self, d: f64) -> Self {
        let q1 = self.hi / d;
        // remainder self - q1 * d, exact via fma
        let p = q1 * d;
        let perr = q1.mul_add(d, -p);
        let r = ((self.hi - p) - perr) + self.lo;
        Self::quick(q1, r / d)
    }
}

/// `A_n^a = sum_k A_k^{a-1}`, `A_n^a - A_{n-1}^a = A_n^{a-1}`, and the growth
/// of `A_n^a / n^a`, checked on one table.
#[derive(Clone, Debug, Serialize)]
pub struct WeightIdentityReport {
    pub order: f64,
    pub degree: usize,
    /// Largest `|A_n^a - sum_{k<=n} A_k^{a-1}| / |A_n^a|`.
    pub prefix_sum_max_rel: f64,
    /// Largest `|(A_n^a - A_{n-1}^a) - A_n^{a-1}| / max(|A_n^a|, |A_{n-1}^a|)`.
    pub difference_max_rel: f64,
    /// Smallest and largest `A_n^a / n^a` over `16 <= n <= degree`.
    pub growth_ratio_min: f64,
    pub growth_ratio_max: f64,
    /// `(n, A_n^a / n^a)` at `n = 16, 32, 64, ...`.
    pub growth_samples: Vec<(usize, f64)>,
}

pub fn verify_weight_identities(table: &CesaroWeightTable) -> Result<WeightIdentityReport> {
    let lower = table.companion()?;
    let a = table.values();
    let b = lower.values();

    // Neumaier-compensated prefix sums
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut prefix_sum_max_rel = 0.0f64;
    for (n, &term) in b.iter().enumerate() {
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        let rel = ((sum + comp) - a[n]).abs() / a[n].abs();
        prefix_sum_max_rel = prefix_sum_max_rel.max(rel);
    }

    let mut difference_max_rel = 0.0f64;
    for n in 1..a.len() {
        let scale = a[n].abs().max(a[n - 1].abs());
        let rel = ((a[n] - a[n - 1]) - b[n]).abs() / scale;
        difference_max_rel = difference_max_rel.max(rel);
    }

    let order = table.order();
    let ratio = |n: usize| a[n] / (n as f64).powf(order);
    let mut growth_ratio_min = f64::INFINITY;
    let mut growth_ratio_max = f64::NEG_INFINITY;
    for n in 16..a.len() {
        let r = ratio(n);
        growth_ratio_min = growth_ratio_min.min(r);
        growth_ratio_max = growth_ratio_max.max(r);
    }
    let growth_samples = std::iter::successors(Some(16usize), |&n| n.checked_mul(2))
        .take_while(|&n| n < a.len())
        .map(|n| (n, ratio(n)))
        .collect();

    Ok(WeightIdentityReport {
        order,
        degree: table.degree(),
        prefix_sum_max_rel,
        difference_max_rel,
        growth_ratio_min,
        growth_ratio_max,
        growth_samples,
    })
}

/// Orders and degrees of `sigma_{n,m}^{-alpha,-beta}`.
///
/// `alpha` and `beta` must lie in `[0, 1)`; zero reduces the mean to a
/// rectangular partial sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CesaroMeanParams {
    pub alpha: f64,
    pub beta: f64,
    pub n: usize,
    pub m: usize,
}

pub(crate) fn check_exponent(name: &str, v: f64) -> Result<()> {
    if !(0.0..1.0).contains(&v) {
        return Err(Error::Domain(format!("{name} = {v} is outside [0, 1)")));
    }
    Ok(())
}

impl CesaroMeanParams {
    pub fn new(alpha: f64, beta: f64, n: usize, m: usize) -> Result<Self> {
        check_exponent("alpha", alpha)?;
        check_exponent("beta", beta)?;
        Ok(Self { alpha, beta, n, m })
    }
}

/// Per-frequency weights `A_{n-i}^{-a}` for `i <= n` (zero beyond `n`),
/// together with the normaliser `A_n^{-a}`.
pub(crate) fn axis_weights(alpha: f64, n: usize, len: usize) -> Result<(Vec<f64>, f64)> {
    let table = CesaroWeightTable::new(-alpha, n)?;
    let mut w = vec![0.0; len];
    for (i, wi) in w.iter_mut().enumerate().take(n + 1) {
        *wi = table.get(n - i);
    }
    Ok((w, table.get(n)))
}

/// `sigma_{n,m}^{-alpha,-beta}(f)` from the spectrum of `f`.
pub fn cesaro_mean_2d(spec: &Spectrum2D, params: &CesaroMeanParams) -> Result<GridFunction2D> {
    let side = spec.side();
    check_exponent("alpha", params.alpha)?;
    check_exponent("beta", params.beta)?;
    if params.n >= side {
        return Err(range("n", params.n, side - 1));
    }
    if params.m >= side {
        return Err(range("m", params.m, side - 1));
    }
    let (wx, nx) = axis_weights(params.alpha, params.n, side)?;
    let (wy, ny) = axis_weights(params.beta, params.m, side)?;
    let mut coeffs = spec.coeffs().to_vec();
    coeffs.par_chunks_mut(side).enumerate().for_each(|(i, row)| {
        for (c, &w) in row.iter_mut().zip(&wy) {
            *c *= wx[i] * w;
        }
    });
    let weighted = Spectrum2D::new(spec.base().clone(), coeffs)?;
    let mut out = inverse_2d(&weighted);
    let scale = 1.0 / (nx * ny);
    out.samples_mut().par_iter_mut().for_each(|v| *v *= scale);
    Ok(out)
}

/// `sigma_n^{-alpha}(f)` from a one-dimensional spectrum.
pub fn cesaro_mean_1d(spec: &Spectrum1D, n: usize, alpha: f64) -> Result<GridFunction1D> {
    let size = spec.base().size();
    check_exponent("alpha", alpha)?;
    if n >= size {
        return Err(range("n", n, size - 1));
    }
    let (w, norm) = axis_weights(alpha, n, size)?;
    let coeffs: Vec<Complex64> = spec.coeffs().iter().zip(&w).map(|(c, &w)| c * w).collect();
    let mut out = inverse_1d(&Spectrum1D::new(spec.base().clone(), coeffs)?);
    out.samples_mut().iter_mut().for_each(|v| *v /= norm);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::VilenkinBase;
    use crate::transform::{forward_1d, forward_2d, partial_sum_2d, vilenkin_psi};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_2d(base: &VilenkinBase, seed: u64) -> GridFunction2D {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let side = base.size();
        let samples = (0..side * side)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        GridFunction2D::new(base.clone(), samples).unwrap()
    }

    #[test]
    fn weight_examples() {
        for order in [-0.7, -0.3, 0.0, 0.5, 2.25] {
            assert_eq!(CesaroWeightTable::new(order, 5).unwrap().get(0), 1.0);
        }
        let t = CesaroWeightTable::new(-1.0, 6).unwrap();
        assert!(t.values()[1..].iter().all(|&v| v == 0.0));
        let t = CesaroWeightTable::new(0.5, 2).unwrap();
        assert!((t.get(2) - 1.5 * 2.5 / 2.0).abs() < 1e-15);
        assert!((t.get(2) - 1.875).abs() < 1e-15);
        assert!(CesaroWeightTable::new(-2.0, 3).is_err());
        assert!(CesaroWeightTable::new(-5.0, 3).is_err());
        assert!(CesaroWeightTable::new(f64::NAN, 3).is_err());
    }

    #[test]
    fn weights_match_the_product_formula() {
        // A_n = (a+1)...(a+n)/n!, evaluated independently for small n
        for order in [-0.3, 0.7, 1.5] {
            let t = CesaroWeightTable::new(order, 12).unwrap();
            for n in 0..=12 {
                let num: f64 = (1..=n).map(|j| order + j as f64).product();
                let den: f64 = (1..=n).map(|j| j as f64).product();
                assert!((t.get(n) - num / den).abs() <= 1e-14 * (num / den).abs().max(1.0));
            }
        }
    }

    #[test]
    fn negative_orders_give_positive_decreasing_weights() {
        for order in [-0.9, -0.5, -0.1] {
            let t = CesaroWeightTable::new(order, 1000).unwrap();
            assert!(t.values().iter().all(|&v| v > 0.0));
            assert!(t.values().windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn identities_small_range() {
        let r = verify_weight_identities(&CesaroWeightTable::new(-0.3, 2000).unwrap()).unwrap();
        assert!(r.prefix_sum_max_rel < 1e-12);
        assert!(r.difference_max_rel < 1e-12);
        assert!(r.growth_ratio_min >= 0.5 && r.growth_ratio_max <= 2.0);
    }

    #[test]
    fn constant_is_reproduced() {
        let b: VilenkinBase = "2,3,2".parse().unwrap();
        let f = GridFunction2D::constant(&b, Complex64::new(3.0, -2.0));
        let s = forward_2d(&f);
        for (n, m) in [(0, 0), (3, 7), (11, 11)] {
            let p = CesaroMeanParams::new(0.3, 0.6, n, m).unwrap();
            assert!(cesaro_mean_2d(&s, &p).unwrap().max_abs_diff(&f) < 1e-12);
        }
        let g = GridFunction1D::constant(&b, Complex64::new(1.5, 0.0));
        let m = cesaro_mean_1d(&forward_1d(&g), 7, 0.4).unwrap();
        assert!(m.max_abs_diff(&g) < 1e-12);
    }

    #[test]
    fn order_zero_is_a_partial_sum() {
        let b: VilenkinBase = "3,2,2".parse().unwrap();
        let s = forward_2d(&random_2d(&b, 3));
        for (n, m) in [(0, 0), (4, 9), (11, 2)] {
            let p = CesaroMeanParams::new(0.0, 0.0, n, m).unwrap();
            let want = partial_sum_2d(&s, n + 1, m + 1).unwrap();
            assert!(cesaro_mean_2d(&s, &p).unwrap().max_abs_diff(&want) < 1e-12);
        }
        let s1 = forward_1d(&GridFunction1D::from_fn(&b, |x| Complex64::new(x as f64, 1.0)));
        let m = cesaro_mean_1d(&s1, 5, 0.0).unwrap();
        let mut trunc = s1.clone();
        trunc.coeffs_mut()[6..].fill(Complex64::new(0.0, 0.0));
        assert!(m.max_abs_diff(&inverse_1d(&trunc)) < 1e-12);
    }

    #[test]
    fn single_coefficient_propagation() {
        let b: VilenkinBase = "2,3,2".parse().unwrap();
        let (a, bb, n, m) = (5usize, 3usize, 9usize, 4usize);
        let f = GridFunction2D::from_fn(&b, |x, y| {
            let px = vilenkin_psi(&b, a, &b.index_to_digits(x).unwrap()).unwrap();
            let py = vilenkin_psi(&b, bb, &b.index_to_digits(y).unwrap()).unwrap();
            px * py
        });
        let (alpha, beta) = (0.3, 0.45);
        let p = CesaroMeanParams::new(alpha, beta, n, m).unwrap();
        let got = cesaro_mean_2d(&forward_2d(&f), &p).unwrap();
        // naive weighted sum of the literal definition
        let ta = CesaroWeightTable::new(-alpha, n).unwrap();
        let tb = CesaroWeightTable::new(-beta, m).unwrap();
        let w = ta.get(n - a) * tb.get(m - bb) / (ta.get(n) * tb.get(m));
        for i in 0..b.size() * b.size() {
            assert!((got.samples()[i] - f.samples()[i] * w).norm() < 1e-12);
        }
        // degrees below the frequency drop it entirely
        let p = CesaroMeanParams::new(alpha, beta, a - 1, m).unwrap();
        let got = cesaro_mean_2d(&forward_2d(&f), &p).unwrap();
        assert!(got.samples().iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn mean_1d_is_the_marginal_of_mean_2d() {
        let b: VilenkinBase = "2,2,3".parse().unwrap();
        let g = GridFunction1D::from_fn(&b, |x| Complex64::new((x as f64 * 0.7).cos(), x as f64 * 0.01));
        let f = GridFunction2D::from_fn(&b, |x, _| g.samples()[x]);
        let one = cesaro_mean_1d(&forward_1d(&g), 7, 0.35).unwrap();
        let two = cesaro_mean_2d(&forward_2d(&f), &CesaroMeanParams::new(0.35, 0.2, 7, 5).unwrap()).unwrap();
        for x in 0..b.size() {
            for y in 0..b.size() {
                assert!((two.at(x, y) - one.samples()[x]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn mean_rejects_bad_arguments() {
        let b: VilenkinBase = "2,2".parse().unwrap();
        let s = forward_2d(&GridFunction2D::constant(&b, Complex64::new(1.0, 0.0)));
        assert!(CesaroMeanParams::new(1.0, 0.2, 1, 1).is_err());
        assert!(CesaroMeanParams::new(-0.1, 0.2, 1, 1).is_err());
        let p = CesaroMeanParams { alpha: 0.3, beta: 0.3, n: 4, m: 1 };
        assert!(cesaro_mean_2d(&s, &p).is_err());
        let s1 = forward_1d(&GridFunction1D::constant(&b, Complex64::new(1.0, 0.0)));
        assert!(cesaro_mean_1d(&s1, 4, 0.3).is_err());
    }

    #[test]
    fn linearity() {
        let b: VilenkinBase = "2,3,2".parse().unwrap();
        let (f, g) = (random_2d(&b, 1), random_2d(&b, 2));
        let (ca, cb) = (Complex64::new(0.5, -1.0), Complex64::new(2.0, 0.25));
        let h = f.combine(ca, &g, cb).unwrap();
        let p = CesaroMeanParams::new(0.3, 0.7, 8, 10).unwrap();
        let lhs = cesaro_mean_2d(&forward_2d(&h), &p).unwrap();
        let rhs = cesaro_mean_2d(&forward_2d(&f), &p)
            .unwrap()
            .combine(ca, &cesaro_mean_2d(&forward_2d(&g), &p).unwrap(), cb)
            .unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn full_degree_at_order_zero_is_exact() {
        let b: VilenkinBase = "3,2,2".parse().unwrap();
        let f = random_2d(&b, 9);
        let top = b.size() - 1;
        let p = CesaroMeanParams::new(0.0, 0.0, top, top).unwrap();
        assert!(cesaro_mean_2d(&forward_2d(&f), &p).unwrap().max_abs_diff(&f) < 1e-12);
    }
}
