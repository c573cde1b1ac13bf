//! Text format for grid functions and spectra.
//!
//! ```text
//! # base=2x3 resolution=3 dims=2
//! 0.5,0
//! ...
//! ```
//!
//! One `re,im` line per cell in index order (row-major for two dimensions).
//! Spectra use the same layout with `kind=spectrum` appended to the header.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::VilenkinBase;
use crate::transform::{GridFunction1D, GridFunction2D, Spectrum1D, Spectrum2D};

#[derive(Clone, Debug, PartialEq)]
pub enum GridFile {
    Grid1(GridFunction1D),
    Grid2(GridFunction2D),
    Spectrum1(Spectrum1D),
    Spectrum2(Spectrum2D),
}

impl GridFile {
    pub fn base(&self) -> &VilenkinBase {
        match self {
            GridFile::Grid1(f) => f.base(),
            GridFile::Grid2(f) => f.base(),
            GridFile::Spectrum1(s) => s.base(),
            GridFile::Spectrum2(s) => s.base(),
        }
    }

    fn parts(&self) -> (usize, bool, &[Complex64]) {
        match self {
            GridFile::Grid1(f) => (1, false, f.samples()),
            GridFile::Grid2(f) => (2, false, f.samples()),
            GridFile::Spectrum1(s) => (1, true, s.coeffs()),
            GridFile::Spectrum2(s) => (2, true, s.coeffs()),
        }
    }

    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        let (dims, spectrum, values) = self.parts();
        let base = self.base();
        write!(w, "# base={} resolution={} dims={}", base, base.resolution(), dims)?;
        if spectrum {
            write!(w, " kind=spectrum")?;
        }
        writeln!(w)?;
        for v in values {
            writeln!(w, "{},{}", v.re, v.im)?;
        }
        Ok(())
    }

    pub fn read_from(r: impl BufRead) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty grid file".into()))??;
        let header = header
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("grid file must start with a '#' header".into()))?;
        let fields: HashMap<&str, &str> = header
            .split_whitespace()
            .filter_map(|t| t.split_once('='))
            .collect();
        let field = |key: &str| {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| Error::Parse(format!("header lacks '{key}='")))
        };
        let base: VilenkinBase = field("base")?.parse()?;
        let resolution: usize = field("resolution")?
            .parse()
            .map_err(|_| Error::Parse("bad resolution".into()))?;
        let base = base.with_resolution(resolution)?;
        let dims = field("dims")?;
        let spectrum = match fields.get("kind") {
            None | Some(&"grid") => false,
            Some(&"spectrum") => true,
            Some(other) => return Err(Error::Parse(format!("unknown kind '{other}'"))),
        };
        let mut values = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (re, im) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("line {}: expected 're,im'", i + 2)))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("line {}: bad number '{s}'", i + 2)))
            };
            values.push(Complex64::new(parse(re)?, parse(im)?));
        }
        Ok(match (dims, spectrum) {
            ("1", false) => GridFile::Grid1(GridFunction1D::new(base, values)?),
            ("2", false) => GridFile::Grid2(GridFunction2D::new(base, values)?),
            ("1", true) => GridFile::Spectrum1(Spectrum1D::new(base, values)?),
            ("2", true) => GridFile::Spectrum2(Spectrum2D::new(base, values)?),
            (d, _) => return Err(Error::Parse(format!("dims must be 1 or 2, got '{d}'"))),
        })
    }
}
