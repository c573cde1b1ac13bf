//! Mixed-radix arithmetic on a bounded Vilenkin group truncated to a finite
//! number of digit levels.
//!
//! A point is a digit vector `x = (x_0, ..., x_{N-1})` with `0 <= x_k < m_k`,
//! stored little-endian. Its linear index is `sum_k x_k M_k`, where
//! `M_0 = 1` and `M_{k+1} = m_k M_k`. Digits at levels `>= N` are implicitly
//! zero, so a base of resolution `N` describes a grid of `M_N` cells.

use std::fmt;
use std::str::FromStr;

use crate::error::{range, Error, Result};

/// Radix sequence `m_0..m_{N-1}` together with the scales `M_0..M_N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VilenkinBase {
    radices: Vec<usize>,
    scales: Vec<usize>,
}

impl VilenkinBase {
    /// Validates the radices (each `>= 2`) and precomputes the scales.
    pub fn new(radices: Vec<usize>) -> Result<Self> {
        if radices.is_empty() {
            return Err(Error::Validation("a base needs at least one radix".into()));
        }
        if let Some(&bad) = radices.iter().find(|&&m| m < 2) {
            return Err(Error::Validation(format!("radix {bad} is below 2")));
        }
        let mut scales = Vec::with_capacity(radices.len() + 1);
        scales.push(1usize);
        for &m in &radices {
            let last = *scales.last().unwrap();
            let next = last
                .checked_mul(m)
                .ok_or_else(|| Error::Validation("grid size overflows usize".into()))?;
            scales.push(next);
        }
        Ok(Self { radices, scales })
    }

    /// Uniform base `m` repeated `levels` times.
    pub fn uniform(m: usize, levels: usize) -> Result<Self> {
        Self::new(vec![m; levels])
    }

    /// Returns a base with exactly `levels` digit levels: truncates, or extends
    /// by repeating the radix list cyclically.
    pub fn with_resolution(&self, levels: usize) -> Result<Self> {
        if levels == 0 {
            return Err(Error::Validation("resolution must be at least 1".into()));
        }
        let radices = (0..levels)
            .map(|k| self.radices[k % self.radices.len()])
            .collect();
        Self::new(radices)
    }

    /// Number of digit levels `N`.
    pub fn resolution(&self) -> usize {
        self.radices.len()
    }

    /// Number of grid cells `M_N`.
    pub fn size(&self) -> usize {
        self.scales[self.radices.len()]
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn radix(&self, k: usize) -> usize {
        self.radices[k]
    }

    /// `M_0..M_N`.
    pub fn scales(&self) -> &[usize] {
        &self.scales
    }

    /// `M_k` for `k <= N`.
    pub fn scale(&self, k: usize) -> usize {
        self.scales[k]
    }

    /// Largest `k <= N` with `M_k <= n`, i.e. `|n|` for `n >= 1`.
    /// Returns `None` for `n == 0`.
    pub fn level_of(&self, n: usize) -> Option<usize> {
        if n == 0 {
            return None;
        }
        Some(self.scales.iter().rposition(|&s| s <= n).unwrap())
    }

    /// Digit `k` of the index `n`.
    #[inline]
    pub fn digit(&self, n: usize, k: usize) -> usize {
        (n / self.scales[k]) % self.radices[k]
    }

    pub fn index_to_digits(&self, n: usize) -> Result<GroupPoint> {
        if n >= self.size() {
            return Err(range("index", n, self.size()));
        }
        let mut rest = n;
        let digits = self
            .radices
            .iter()
            .map(|&m| {
                let d = rest % m;
                rest /= m;
                d
            })
            .collect();
        Ok(GroupPoint { digits })
    }

    pub fn digits_to_index(&self, x: &GroupPoint) -> Result<usize> {
        self.check(x)?;
        Ok(x.digits
            .iter()
            .zip(&self.scales)
            .map(|(&d, &s)| d * s)
            .sum())
    }

    /// Digitwise sum modulo the radices.
    pub fn add(&self, x: &GroupPoint, y: &GroupPoint) -> Result<GroupPoint> {
        self.check(x)?;
        self.check(y)?;
        let digits = x
            .digits
            .iter()
            .zip(&y.digits)
            .zip(&self.radices)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        Ok(GroupPoint { digits })
    }

    /// Digitwise difference modulo the radices.
    pub fn sub(&self, x: &GroupPoint, y: &GroupPoint) -> Result<GroupPoint> {
        self.check(x)?;
        self.check(y)?;
        let digits = x
            .digits
            .iter()
            .zip(&y.digits)
            .zip(&self.radices)
            .map(|((&a, &b), &m)| (a + m - b) % m)
            .collect();
        Ok(GroupPoint { digits })
    }

    /// Group sum on linear indices. Both indices must lie in `[0, M_N)`.
    #[inline]
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b, mut out) = (a, b, 0);
        for (&m, &s) in self.radices.iter().zip(&self.scales) {
            if a == 0 && b == 0 {
                break;
            }
            out += ((a % m + b % m) % m) * s;
            a /= m;
            b /= m;
        }
        out
    }

    /// Group difference on linear indices. Both indices must lie in `[0, M_N)`.
    #[inline]
    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b, mut out) = (a, b, 0);
        for (&m, &s) in self.radices.iter().zip(&self.scales) {
            if a == 0 && b == 0 {
                break;
            }
            out += ((a % m + m - b % m) % m) * s;
            a /= m;
            b /= m;
        }
        out
    }

    /// Table `t[x] = index(x - u)` for every grid index `x`.
    pub fn shift_table(&self, u: usize) -> Vec<usize> {
        // built one digit at a time: the table for digits below j+1 is m_j
        // shifted copies of the table for digits below j
        let mut table = Vec::with_capacity(self.size());
        table.push(0);
        for (j, (&m, &s)) in self.radices.iter().zip(&self.scales).enumerate() {
            let uj = self.digit(u, j);
            let prev = table.len();
            for d in 1..m {
                let offset = ((d + m - uj) % m) * s;
                for r in 0..prev {
                    let v = table[r] + offset;
                    table.push(v);
                }
            }
            let offset = ((m - uj) % m) * s;
            table[..prev].iter_mut().for_each(|v| *v += offset);
        }
        table
    }

    /// Whether `x` lies in the coset `I_k(center)`: the first `k` digits agree.
    pub fn in_coset(&self, x: &GroupPoint, center: &GroupPoint, level: usize) -> Result<bool> {
        if level > self.resolution() {
            return Err(range("level", level, self.resolution()));
        }
        self.check(x)?;
        self.check(center)?;
        Ok(x.digits[..level] == center.digits[..level])
    }

    /// Index form of [`in_coset`](Self::in_coset).
    #[inline]
    pub fn in_coset_index(&self, x: usize, center: usize, level: usize) -> bool {
        x % self.scales[level] == center % self.scales[level]
    }

    /// Haar measure of one level-`N` cell, `1 / M_N`.
    pub fn cell_measure(&self) -> f64 {
        1.0 / self.size() as f64
    }

    /// Indices of the representatives of `I_k` modulo shifts that act trivially
    /// on level-`N` step functions: `{t M_k : 0 <= t < M_N / M_k}`.
    pub fn coset_representatives(&self, level: usize) -> impl Iterator<Item = usize> + '_ {
        let step = self.scales[level];
        (0..self.size()).step_by(step)
    }

    fn check(&self, x: &GroupPoint) -> Result<()> {
        if x.digits.len() != self.resolution() {
            return Err(Error::Validation(format!(
                "point has {} digits, base has {} levels",
                x.digits.len(),
                self.resolution()
            )));
        }
        for (k, (&d, &m)) in x.digits.iter().zip(&self.radices).enumerate() {
            if d >= m {
                return Err(Error::Validation(format!(
                    "digit {d} at level {k} is not below radix {m}"
                )));
            }
        }
        Ok(())
    }
}

impl FromStr for VilenkinBase {
    type Err = Error;

    /// Parses `(<int>['x'<count>])(','...)*`, e.g. `2x8` or `2,3,2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let mut radices = Vec::new();
        for item in s.split(',') {
            let item = item.trim();
            let (radix, count) = match item.split_once('x') {
                Some((r, c)) => (r, c),
                None => (item, "1"),
            };
            let radix: usize = radix
                .parse()
                .map_err(|_| Error::Parse(format!("bad radix in '{item}'")))?;
            let count: usize = count
                .parse()
                .map_err(|_| Error::Parse(format!("bad repeat count in '{item}'")))?;
            if count == 0 {
                return Err(Error::Parse(format!("zero repeat count in '{item}'")));
            }
            radices.extend(std::iter::repeat_n(radix, count));
        }
        Self::new(radices)
    }
}

impl fmt::Display for VilenkinBase {
    /// Canonical spec string with runs compressed, e.g. `2x3,3,2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.radices.len() {
            let m = self.radices[i];
            let run = self.radices[i..].iter().take_while(|&&r| r == m).count();
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if run == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{m}x{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// A point of the truncated group, as its little-endian digit vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPoint {
    digits: Vec<usize>,
}

impl GroupPoint {
    /// Builds a point, checking every digit against the base.
    pub fn new(base: &VilenkinBase, digits: Vec<usize>) -> Result<Self> {
        let x = Self { digits };
        base.check(&x)?;
        Ok(x)
    }

    pub fn zero(base: &VilenkinBase) -> Self {
        Self {
            digits: vec![0; base.resolution()],
        }
    }

    /// `e_k`: a single 1 at level `k`.
    pub fn unit(base: &VilenkinBase, k: usize) -> Result<Self> {
        if k >= base.resolution() {
            return Err(range("level", k, base.resolution()));
        }
        let mut digits = vec![0; base.resolution()];
        digits[k] = 1;
        Ok(Self { digits })
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn digit(&self, k: usize) -> usize {
        self.digits[k]
    }
}
