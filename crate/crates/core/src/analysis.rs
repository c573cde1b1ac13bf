//! `L^p` norms, group translations, and the dyadic moduli of continuity of
//! step functions.
//!
//! A shift `u` in `I_k` acts on a level-`N` step function only through its
//! digits `k..N-1`, so every supremum below runs over the finite set
//! `{t M_k : 0 <= t < M_N / M_k}` and is exact.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{range, Error, Result};
use crate::group::{GroupPoint, VilenkinBase};
use crate::transform::{GridFunction1D, GridFunction2D};

/// Norm exponent `p` in `[1, inf]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub const ONE: Exponent = Exponent::Finite(1.0);
    pub const TWO: Exponent = Exponent::Finite(2.0);

    pub fn finite(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::Domain(format!("norm exponent {p} is below 1")));
        }
        if p.is_infinite() {
            return Ok(Exponent::Infinity);
        }
        Ok(Exponent::Finite(p))
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "C" => Ok(Exponent::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad norm exponent '{other}'")))?;
                Exponent::finite(p)
            }
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `sum |f(i)|^p` over `0..len` (the largest `|f(i)|` for `p = inf`), with
/// the exponent dispatched once outside the loop.
#[inline]
fn power_sum(p: Exponent, len: usize, f: impl Fn(usize) -> Complex64) -> f64 {
    match p {
        Exponent::Infinity => (0..len).map(|i| f(i).norm_sqr()).fold(0.0, f64::max).sqrt(),
        Exponent::Finite(1.0) => (0..len).map(|i| f(i).norm_sqr().sqrt()).sum(),
        Exponent::Finite(2.0) => (0..len).map(|i| f(i).norm_sqr()).sum(),
        Exponent::Finite(q) => {
            let h = q / 2.0;
            (0..len).map(|i| f(i).norm_sqr().powf(h)).sum()
        }
    }
}

/// Turns a power sum over `count` equally weighted cells into the norm.
fn finish(p: Exponent, sum: f64, count: usize) -> f64 {
    match p {
        Exponent::Infinity => sum,
        Exponent::Finite(1.0) => sum / count as f64,
        Exponent::Finite(2.0) => (sum / count as f64).sqrt(),
        Exponent::Finite(q) => (sum / count as f64).powf(1.0 / q),
    }
}

/// `(mean |f(i)|^p)^{1/p}` over `0..len`.
#[inline]
fn lp_of(p: Exponent, len: usize, f: impl Fn(usize) -> Complex64) -> f64 {
    finish(p, power_sum(p, len, f), len)
}

/// `(mean |v|^p)^{1/p}`, or the largest modulus for `p = inf`.
pub fn lp_norm_samples(samples: &[Complex64], p: Exponent) -> f64 {
    lp_of(p, samples.len(), |i| samples[i])
}

pub fn lp_norm_1d(f: &GridFunction1D, p: Exponent) -> f64 {
    lp_norm_samples(f.samples(), p)
}

pub fn lp_norm_2d(f: &GridFunction2D, p: Exponent) -> f64 {
    // row partial sums in fixed order, then combined in row order
    let side = f.side();
    let rows: Vec<f64> = f
        .samples()
        .par_chunks(side)
        .map(|row| power_sum(p, row.len(), |i| row[i]))
        .collect();
    let sum = match p {
        Exponent::Infinity => rows.iter().cloned().fold(0.0, f64::max),
        _ => rows.iter().sum(),
    };
    finish(p, sum, f.samples().len())
}

/// `x -> f(x - u)`.
pub fn translate_1d(f: &GridFunction1D, u: &GroupPoint) -> Result<GridFunction1D> {
    let base = f.base();
    let u = base.digits_to_index(u)?;
    let table = base.shift_table(u);
    GridFunction1D::new(base.clone(), table.iter().map(|&i| f.samples()[i]).collect())
}

/// `(x, y) -> f(x - u, y - v)`.
pub fn translate_2d(f: &GridFunction2D, u: &GroupPoint, v: &GroupPoint) -> Result<GridFunction2D> {
    let base = f.base();
    let (tu, tv) = (
        base.shift_table(base.digits_to_index(u)?),
        base.shift_table(base.digits_to_index(v)?),
    );
    let side = f.side();
    Ok(GridFunction2D::from_fn(base, |x, y| f.samples()[tu[x] * side + tv[y]]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModulusKind {
    Omega1,
    Omega2,
    Omega12,
    OmegaTotal,
}

impl fmt::Display for ModulusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModulusKind::Omega1 => "omega1",
            ModulusKind::Omega2 => "omega2",
            ModulusKind::Omega12 => "omega12",
            ModulusKind::OmegaTotal => "omega_total",
        })
    }
}

/// A modulus value with the shift that attains it.
///
/// `shift` holds the linear indices `(u, v)`; the unused one is zero.
/// `sampled` is `Some(count)` when the supremum was estimated from random
/// shifts instead of the full enumeration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModulusReport {
    pub kind: ModulusKind,
    pub k: usize,
    pub l: usize,
    pub p: Exponent,
    pub value: f64,
    pub shift: (usize, usize),
    pub sampled: Option<usize>,
}

impl ModulusReport {
    /// CSV row `kind,k,l,p,value,shift_index`; the shift index is
    /// `u * M_N + v`.
    pub fn csv_row(&self, side: usize) -> String {
        format!(
            "{},{},{},{},{:.17e},{}",
            self.kind,
            self.k,
            self.l,
            self.p,
            self.value,
            self.shift.0 * side + self.shift.1
        )
    }
}

pub const MODULUS_CSV_HEADER: &str = "kind,k,l,p,value,shift_index";

/// Controls the product enumerations of `omega12` and `omega_total`.
#[derive(Clone, Copy, Debug)]
pub struct ModulusOptions {
    /// Largest number of shift pairs enumerated exactly.
    pub budget: u128,
    /// When set, pair enumerations over budget fall back to this many random
    /// pairs drawn from the given seed.
    pub approximate: Option<(usize, u64)>,
}

impl Default for ModulusOptions {
    fn default() -> Self {
        Self {
            budget: 1 << 20,
            approximate: None,
        }
    }
}

fn check_level(base: &VilenkinBase, level: usize) -> Result<()> {
    if level > base.resolution() {
        return Err(range("level", level, base.resolution()));
    }
    Ok(())
}

/// Best `(value, index)` with ties going to the lowest index, so the
/// reduction is independent of how the work is split.
fn better(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn shift_tables(base: &VilenkinBase, level: usize) -> Vec<(usize, Vec<usize>)> {
    base.coset_representatives(level)
        .map(|u| (u, base.shift_table(u)))
        .collect()
}

fn merge(p: Exponent, a: f64, b: f64) -> f64 {
    match p {
        Exponent::Infinity => a.max(b),
        _ => a + b,
    }
}

/// `|| f(. - u, . - v) - f ||_p` with `None` meaning no shift on that axis.
fn shifted_difference(f: &GridFunction2D, tu: Option<&[usize]>, tv: Option<&[usize]>, p: Exponent) -> f64 {
    let side = f.side();
    let s = f.samples();
    let mut sum = 0.0;
    for x in 0..side {
        let sx = tu.map_or(x, |t| t[x]) * side;
        let row = &s[x * side..(x + 1) * side];
        let srow = &s[sx..sx + side];
        let part = match tv {
            Some(tv) => power_sum(p, side, |y| srow[tv[y]] - row[y]),
            None => power_sum(p, side, |y| srow[y] - row[y]),
        };
        sum = merge(p, sum, part);
    }
    finish(p, sum, side * side)
}

/// `|| f(.-u,.-v) - f(.-u,.) - f(.,.-v) + f ||_p`.
fn mixed_difference(f: &GridFunction2D, tu: &[usize], tv: &[usize], p: Exponent) -> f64 {
    let side = f.side();
    let s = f.samples();
    let mut sum = 0.0;
    for x in 0..side {
        let sx = tu[x] * side;
        let row = &s[x * side..(x + 1) * side];
        let srow = &s[sx..sx + side];
        let part = power_sum(p, side, |y| srow[tv[y]] - srow[y] - row[tv[y]] + row[y]);
        sum = merge(p, sum, part);
    }
    finish(p, sum, side * side)
}

fn partial_modulus(f: &GridFunction2D, level: usize, p: Exponent, kind: ModulusKind) -> Result<ModulusReport> {
    let base = f.base();
    check_level(base, level)?;
    let reps: Vec<usize> = base.coset_representatives(level).collect();
    let (value, idx) = reps
        .par_iter()
        .enumerate()
        .map(|(i, &u)| {
            let t = base.shift_table(u);
            let v = match kind {
                ModulusKind::Omega1 => shifted_difference(f, Some(&t), None, p),
                _ => shifted_difference(f, None, Some(&t), p),
            };
            (v, i)
        })
        .reduce(|| (f64::NEG_INFINITY, usize::MAX), better);
    let shift = match kind {
        ModulusKind::Omega1 => (reps[idx], 0),
        _ => (0, reps[idx]),
    };
    Ok(ModulusReport {
        kind,
        k: level,
        l: level,
        p,
        value,
        shift,
        sampled: None,
    })
}

/// `omega_1(f, 1/M_k)_p = sup_{u in I_k} || f(. - u, .) - f ||_p`.
pub fn omega1(f: &GridFunction2D, k: usize, p: Exponent) -> Result<ModulusReport> {
    partial_modulus(f, k, p, ModulusKind::Omega1)
}

/// `omega_2(f, 1/M_k)_p = sup_{v in I_k} || f(., . - v) - f ||_p`.
pub fn omega2(f: &GridFunction2D, k: usize, p: Exponent) -> Result<ModulusReport> {
    partial_modulus(f, k, p, ModulusKind::Omega2)
}

/// Pairs `(i, j)` to visit: the full product, or a seeded sample when the
/// product exceeds the budget and sampling is allowed.
type PairPlan = (Vec<(usize, usize)>, Option<usize>);

fn pair_plan(nu: usize, nv: usize, opts: &ModulusOptions) -> Result<PairPlan> {
    let pairs = nu as u128 * nv as u128;
    if pairs <= opts.budget {
        let all = (0..nu).flat_map(|i| (0..nv).map(move |j| (i, j))).collect();
        return Ok((all, None));
    }
    match opts.approximate {
        Some((count, seed)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picks: Vec<(usize, usize)> = (0..count)
                .map(|_| (rng.gen_range(0..nu), rng.gen_range(0..nv)))
                .collect();
            picks.push((0, 0));
            Ok((picks, Some(count)))
        }
        None => Err(Error::Budget {
            pairs,
            budget: opts.budget,
        }),
    }
}

fn pair_modulus(
    f: &GridFunction2D,
    k: usize,
    l: usize,
    p: Exponent,
    kind: ModulusKind,
    opts: &ModulusOptions,
) -> Result<ModulusReport> {
    let base = f.base();
    check_level(base, k)?;
    check_level(base, l)?;
    let tu = shift_tables(base, k);
    let tv = shift_tables(base, l);
    let (pairs, sampled) = pair_plan(tu.len(), tv.len(), opts)?;
    let (value, idx) = pairs
        .par_iter()
        .enumerate()
        .map(|(n, &(i, j))| {
            let v = match kind {
                ModulusKind::Omega12 => mixed_difference(f, &tu[i].1, &tv[j].1, p),
                _ => shifted_difference(f, Some(&tu[i].1), Some(&tv[j].1), p),
            };
            (v, n)
        })
        .reduce(|| (f64::NEG_INFINITY, usize::MAX), better);
    let (i, j) = pairs[idx];
    Ok(ModulusReport {
        kind,
        k,
        l,
        p,
        value,
        shift: (tu[i].0, tv[j].0),
        sampled,
    })
}

/// Mixed modulus `omega_{1,2}(f, 1/M_k, 1/M_l)_p`.
pub fn omega12(f: &GridFunction2D, k: usize, l: usize, p: Exponent, opts: &ModulusOptions) -> Result<ModulusReport> {
    pair_modulus(f, k, l, p, ModulusKind::Omega12, opts)
}

/// Total modulus `omega(f, 1/M_k)_p`, joint shifts over `I_k x I_k`.
pub fn omega_total(f: &GridFunction2D, k: usize, p: Exponent, opts: &ModulusOptions) -> Result<ModulusReport> {
    pair_modulus(f, k, k, p, ModulusKind::OmegaTotal, opts)
}

/// One-variable modulus `sup_{u in I_k} || h(. - u) - h ||_p`; returns the
/// value and the maximising shift.
pub fn omega_1d(h: &GridFunction1D, k: usize, p: Exponent) -> Result<(f64, usize)> {
    let base = h.base();
    check_level(base, k)?;
    let s = h.samples();
    let reps: Vec<usize> = base.coset_representatives(k).collect();
    let (value, i) = reps
        .par_iter()
        .enumerate()
        .map(|(i, &u)| {
            let t = base.shift_table(u);
            (lp_of(p, s.len(), |x| s[t[x]] - s[x]), i)
        })
        .reduce(|| (f64::NEG_INFINITY, usize::MAX), better);
    Ok((value, reps[i]))
}

/// `sup_{u in I_k, v in I_l} || h(.-u-v) - h(.-u) - h(.-v) + h ||_p`.
pub fn mixed_omega_1d(h: &GridFunction1D, k: usize, l: usize, p: Exponent, opts: &ModulusOptions) -> Result<(f64, (usize, usize))> {
    let base = h.base();
    check_level(base, k)?;
    check_level(base, l)?;
    let s = h.samples();
    let tu = shift_tables(base, k);
    let tv = shift_tables(base, l);
    let (pairs, _) = pair_plan(tu.len(), tv.len(), opts)?;
    let (value, n) = pairs
        .par_iter()
        .enumerate()
        .map(|(n, &(i, j))| {
            let (a, b) = (&tu[i].1, &tv[j].1);
            (lp_of(p, s.len(), |x| s[a[b[x]]] - s[a[x]] - s[b[x]] + s[x]), n)
        })
        .reduce(|| (f64::NEG_INFINITY, usize::MAX), better);
    let (i, j) = pairs[n];
    Ok((value, (tu[i].0, tv[j].0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cesaro::{cesaro_mean_2d, CesaroMeanParams};
    use crate::transform::{dirichlet_kernel, forward_2d, rademacher, vilenkin_psi};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_step(base: &VilenkinBase, seed: u64) -> GridFunction2D {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let side = base.size();
        let samples = (0..side * side)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        GridFunction2D::new(base.clone(), samples).unwrap()
    }

    #[test]
    fn exponent_parsing() {
        assert_eq!("inf".parse::<Exponent>().unwrap(), Exponent::Infinity);
        assert_eq!("2".parse::<Exponent>().unwrap(), Exponent::TWO);
        assert!("0.5".parse::<Exponent>().is_err());
        assert!(Exponent::finite(0.99).is_err());
    }

    #[test]
    fn norms_of_characters_and_kernels() {
        let b: VilenkinBase = "2,3,2".parse().unwrap();
        for n in [0, 1, 5, 11] {
            let psi = GridFunction1D::from_fn(&b, |x| vilenkin_psi(&b, n, &b.index_to_digits(x).unwrap()).unwrap());
            for p in [Exponent::ONE, Exponent::TWO, Exponent::Finite(3.5), Exponent::Infinity] {
                assert!((lp_norm_1d(&psi, p) - 1.0).abs() < 1e-14);
            }
        }
        for k in 0..=3 {
            let d = dirichlet_kernel(&b, b.scale(k)).unwrap();
            assert!((lp_norm_1d(&d, Exponent::ONE) - 1.0).abs() < 1e-12);
            assert!((lp_norm_1d(&d, Exponent::Infinity) - b.scale(k) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn lp_monotone_in_p() {
        let f = random_step(&"2,3,2".parse().unwrap(), 4);
        let ps = [1.0, 1.5, 2.0, 3.0, 7.0];
        let vals: Vec<f64> = ps.iter().map(|&p| lp_norm_2d(&f, Exponent::Finite(p))).collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1] + 1e-15));
        assert!(*vals.last().unwrap() <= lp_norm_2d(&f, Exponent::Infinity) + 1e-15);
    }

    #[test]
    fn translation_examples() {
        let b: VilenkinBase = "2,3,2".parse().unwrap();
        let h = GridFunction1D::from_fn(&b, |x| Complex64::new(x as f64, (x * x) as f64));
        let zero = GroupPoint::zero(&b);
        assert_eq!(translate_1d(&h, &zero).unwrap(), h);
        for u in 0..b.size() {
            let up = b.index_to_digits(u).unwrap();
            let t = translate_1d(&h, &up).unwrap();
            assert!((lp_norm_1d(&t, Exponent::TWO) - lp_norm_1d(&h, Exponent::TWO)).abs() < 1e-12);
            for w in 0..b.size() {
                let wp = b.index_to_digits(w).unwrap();
                let twice = translate_1d(&t, &wp).unwrap();
                let once = translate_1d(&h, &b.add(&up, &wp).unwrap()).unwrap();
                assert_eq!(twice, once);
            }
        }
        let f = random_step(&b, 1);
        assert_eq!(translate_2d(&f, &zero, &zero).unwrap(), f);
        assert!(translate_1d(&h, &GroupPoint::zero(&"2,2".parse().unwrap())).is_err());
    }

    #[test]
    fn mean_commutes_with_translation() {
        let b: VilenkinBase = "2,3,2".parse().unwrap();
        let f = random_step(&b, 8);
        let (u, v) = (b.index_to_digits(7).unwrap(), b.index_to_digits(4).unwrap());
        let p = CesaroMeanParams::new(0.3, 0.5, 9, 6).unwrap();
        let lhs = cesaro_mean_2d(&forward_2d(&translate_2d(&f, &u, &v).unwrap()), &p).unwrap();
        let rhs = translate_2d(&cesaro_mean_2d(&forward_2d(&f), &p).unwrap(), &u, &v).unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn moduli_of_simple_functions() {
        let b: VilenkinBase = "2x5".parse().unwrap();
        let opts = ModulusOptions::default();
        let k = GridFunction2D::constant(&b, c(4.0));
        for level in 0..=5 {
            assert_eq!(omega1(&k, level, Exponent::ONE).unwrap().value, 0.0);
            assert_eq!(omega_total(&k, level, Exponent::Infinity, &opts).unwrap().value, 0.0);
        }
        let j = 2;
        let r = GridFunction2D::from_fn(&b, |x, _| rademacher(&b, j, &b.index_to_digits(x).unwrap()));
        for level in 0..=5 {
            let w = omega1(&r, level, Exponent::Infinity).unwrap().value;
            if level > j {
                assert_eq!(w, 0.0);
            } else {
                assert!((w - 2.0).abs() < 1e-14);
            }
            assert_eq!(omega2(&r, level, Exponent::Infinity).unwrap().value, 0.0);
        }
        assert!(omega1(&r, 6, Exponent::ONE).is_err());
    }

    #[test]
    fn mixed_difference_kills_separable_sums() {
        let b: VilenkinBase = "2,3,2".parse().unwrap();
        let f = GridFunction2D::from_fn(&b, |x, y| c((x as f64).sin() + (y * y) as f64));
        let opts = ModulusOptions::default();
        for k in 0..=3 {
            for l in 0..=3 {
                assert!(omega12(&f, k, l, Exponent::Infinity, &opts).unwrap().value < 1e-12);
            }
        }
    }

    #[test]
    fn modulus_inequalities_and_monotonicity() {
        let b: VilenkinBase = "2,3,2".parse().unwrap();
        let opts = ModulusOptions::default();
        for seed in 0..4 {
            let f = random_step(&b, seed);
            for p in [Exponent::ONE, Exponent::TWO, Exponent::Infinity] {
                let w1: Vec<f64> = (0..=3).map(|k| omega1(&f, k, p).unwrap().value).collect();
                let w2: Vec<f64> = (0..=3).map(|k| omega2(&f, k, p).unwrap().value).collect();
                let wt: Vec<f64> = (0..=3).map(|k| omega_total(&f, k, p, &opts).unwrap().value).collect();
                assert!(w1.windows(2).all(|w| w[1] <= w[0]));
                assert!(wt.windows(2).all(|w| w[1] <= w[0]));
                assert_eq!(w1[3], 0.0);
                for k in 0..=3 {
                    assert!(w1[k] <= wt[k] + 1e-12 && w2[k] <= wt[k] + 1e-12);
                    for (l, &w2l) in w2.iter().enumerate().take(4) {
                        let w12 = omega12(&f, k, l, p, &opts).unwrap().value;
                        assert!(w12 <= w1[k] + w2l + 1e-12);
                        assert!(w12 <= 2.0 * w1[k].min(w2l) + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let b: VilenkinBase = "2x4".parse().unwrap();
        let f = random_step(&b, 2);
        let tight = ModulusOptions { budget: 10, approximate: None };
        assert!(matches!(omega12(&f, 0, 0, Exponent::ONE, &tight), Err(Error::Budget { .. })));
        let sampled = ModulusOptions { budget: 10, approximate: Some((50, 3)) };
        let est = omega12(&f, 0, 0, Exponent::ONE, &sampled).unwrap();
        let exact = omega12(&f, 0, 0, Exponent::ONE, &ModulusOptions::default()).unwrap();
        assert_eq!(est.sampled, Some(50));
        assert!(est.value <= exact.value + 1e-15);
    }

    #[test]
    fn argmax_shift_attains_value() {
        let b: VilenkinBase = "3,2,2".parse().unwrap();
        let f = random_step(&b, 5);
        let r = omega_total(&f, 1, Exponent::TWO, &ModulusOptions::default()).unwrap();
        let u = b.index_to_digits(r.shift.0).unwrap();
        let v = b.index_to_digits(r.shift.1).unwrap();
        let d = translate_2d(&f, &u, &v).unwrap().sub(&f).unwrap();
        assert!((lp_norm_2d(&d, Exponent::TWO) - r.value).abs() < 1e-12);
        assert_eq!(r.shift.0 % b.scale(1), 0);
        assert_eq!(
            r.csv_row(b.size()).split(',').next().unwrap(),
            "omega_total"
        );
    }

    #[test]
    fn one_dimensional_moduli() {
        let b: VilenkinBase = "2,3,2".parse().unwrap();
        let h = GridFunction1D::from_fn(&b, |x| c(((x * 5) % 7) as f64));
        let f = GridFunction2D::from_fn(&b, |x, _| h.samples()[x]);
        let opts = ModulusOptions::default();
        for k in 0..=3 {
            let (w, _) = omega_1d(&h, k, Exponent::ONE).unwrap();
            assert!((w - omega1(&f, k, Exponent::ONE).unwrap().value).abs() < 1e-12);
            let (m, _) = mixed_omega_1d(&h, k, k, Exponent::Infinity, &opts).unwrap();
            assert!(m <= 2.0 * omega_1d(&h, k, Exponent::Infinity).unwrap().0 + 1e-12);
        }
    }
}
