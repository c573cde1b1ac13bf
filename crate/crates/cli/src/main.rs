//! `vilenkin`: transforms, means, moduli and the approximation experiments
//! from the command line.
//!
//! Exit status: 0 on success, 1 on bad input or usage, 2 when a verification
//! step fails.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use vilenkin::analysis::{self, Exponent, ModulusOptions, ModulusReport, MODULUS_CSV_HEADER};
use vilenkin::cesaro::{cesaro_mean_2d, CesaroMeanParams, CesaroWeightTable};
use vilenkin::experiments::report::{write_csv, write_json, write_plot_data, Tabular};
use vilenkin::experiments::{self as exp, Engine, GridWorkload, Workload};
use vilenkin::io::GridFile;
use vilenkin::transform::{self, GridFunction1D, GridFunction2D};
use vilenkin::{Error, VilenkinBase};

#[derive(Parser)]
#[command(name = "vilenkin", version, about = "Harmonic analysis on bounded Vilenkin groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Radices, e.g. "2x8" or "2,3,2,3"
    #[arg(long, global = true)]
    base: Option<String>,
    /// Number of levels N; the radix list is truncated or repeated cyclically
    #[arg(long, global = true)]
    resolution: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    alpha: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    beta: Option<f64>,
    /// Norm exponent: a number >= 1 or "inf"
    #[arg(long, global = true, default_value = "1")]
    p: String,
    /// Output file (standard output when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Seed for random test functions and sampling
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample this many random shift pairs when a modulus exceeds the pair budget
    #[arg(long, global = true, num_args = 0..=1, default_missing_value = "4096")]
    approximate: Option<usize>,
    /// Directory for two-column plot files, one per series
    #[arg(long, global = true)]
    plot_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TestFunction {
    /// Seeded level-2 step function
    Polynomial,
    /// sum M_j^{-0.9} r_j(x) r_j(y)
    Holder,
    /// sum M_j^{-(alpha+beta)} r_j(x) r_j(y)
    F0,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Grid,
    Diagonal,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModulusArg {
    Omega1,
    Omega2,
    Omega12,
    OmegaTotal,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Forward or inverse transform of a grid file (or of a seeded random function)
    Transform {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Dimension of the seeded random function when no input is given
        #[arg(long, default_value_t = 1)]
        dims: usize,
    },
    /// Dirichlet kernel D_n
    Kernel {
        #[arg(short = 'n')]
        n: usize,
        /// Check D_{M_k} = M_k 1_{I_k}; n must be a scale M_k
        #[arg(long)]
        check_eq1: bool,
    },
    /// Cesaro numbers A_0..A_n of order --alpha
    Weights {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Two-variable mean sigma_{n,m}^{-alpha,-beta}
    Mean {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Moduli of continuity of a two-variable grid function
    Moduli {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModulusArg::All)]
        kind: ModulusArg,
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(short = 'l')]
        l: Option<usize>,
    },
    /// Mean error against the modulus bound over a degree sweep
    Theorem3 {
        #[arg(long, value_enum, default_value_t = TestFunction::Polynomial)]
        function: TestFunction,
        /// Comma-separated degrees (default: M_k and M_k + M_{k-1})
        #[arg(long, value_delimiter = ',')]
        degrees: Option<Vec<usize>>,
    },
    /// Per-scale hypothesis quantities and errors
    Corollary {
        #[arg(long, value_enum, default_value_t = TestFunction::Holder)]
        function: TestFunction,
    },
    /// Counterexample sweep with its lower bound
    Theorem4 {
        #[arg(long, default_value_t = 2)]
        from: usize,
        /// Last scale (default N - 1)
        #[arg(long)]
        to: Option<usize>,
        #[arg(long, value_enum, default_value_t = EngineArg::Grid)]
        engine: EngineArg,
    },
    /// Averages of Dirichlet kernels with random coefficients
    Lemma1 {
        #[arg(long, default_value_t = 3)]
        from: usize,
        /// Last level (default N - 1)
        #[arg(long)]
        to: Option<usize>,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

impl Common {
    fn base(&self, default: &str) -> anyhow::Result<VilenkinBase> {
        let base: VilenkinBase = self.base.as_deref().unwrap_or(default).parse()?;
        Ok(match self.resolution {
            Some(n) => base.with_resolution(n)?,
            None => base,
        })
    }

    fn p(&self) -> anyhow::Result<Exponent> {
        Ok(self.p.parse()?)
    }

    fn orders(&self, default: f64) -> (f64, f64) {
        (self.alpha.unwrap_or(default), self.beta.unwrap_or(default))
    }

    fn modulus_options(&self) -> ModulusOptions {
        ModulusOptions {
            approximate: self.approximate.map(|count| (count, self.seed)),
            ..ModulusOptions::default()
        }
    }

    fn writer(&self) -> anyhow::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            )),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn emit<T: Tabular>(&self, report: &T, prefix: &str) -> anyhow::Result<()> {
        let mut w = self.writer()?;
        match self.format {
            Format::Csv => write_csv(report, &mut w)?,
            Format::Json => write_json(report, &mut w)?,
        }
        w.flush()?;
        if let Some(dir) = &self.plot_dir {
            write_plot_data(report, dir, prefix)?;
        }
        Ok(())
    }
}

fn read_grid(path: &Path) -> anyhow::Result<GridFile> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(GridFile::read_from(BufReader::new(file))?)
}

fn input_2d(input: &Option<PathBuf>, common: &Common) -> anyhow::Result<GridFunction2D> {
    match input {
        Some(path) => match read_grid(path)? {
            GridFile::Grid2(f) => Ok(f),
            GridFile::Spectrum2(s) => Ok(transform::inverse_2d(&s)),
            _ => bail!("{} does not hold a two-variable grid", path.display()),
        },
        None => Ok(exp::random_step_function(&common.base("2x4")?, common.seed)),
    }
}

fn test_function(which: TestFunction, base: &VilenkinBase, alpha: f64, beta: f64, seed: u64, opts: ModulusOptions) -> anyhow::Result<Box<dyn Workload>> {
    Ok(match which {
        TestFunction::Polynomial => Box::new(GridWorkload::with_options(
            exp::finite_polynomial(base, 2.min(base.resolution()), seed)?,
            opts,
        )),
        TestFunction::Holder => Box::new(exp::holder_series(0.9, base)?.with_options(opts)),
        TestFunction::F0 => Box::new(exp::f0_series(alpha, beta, base)?.with_options(opts)),
    })
}

fn write_moduli(common: &Common, reports: &[ModulusReport], side: usize) -> anyhow::Result<()> {
    let mut w = common.writer()?;
    match common.format {
        Format::Csv => {
            writeln!(w, "{MODULUS_CSV_HEADER}")?;
            for r in reports {
                writeln!(w, "{}", r.csv_row(side))?;
            }
        }
        Format::Json => write_json(&reports, &mut w)?,
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let c = &cli.common;
    match &cli.command {
        Command::Transform { input, dims } => {
            let out = match input {
                Some(path) => match read_grid(path)? {
                    GridFile::Grid1(f) => GridFile::Spectrum1(transform::forward_1d(&f)),
                    GridFile::Grid2(f) => GridFile::Spectrum2(transform::forward_2d(&f)),
                    GridFile::Spectrum1(s) => GridFile::Grid1(transform::inverse_1d(&s)),
                    GridFile::Spectrum2(s) => GridFile::Grid2(transform::inverse_2d(&s)),
                },
                None => {
                    let base = c.base("2x4")?;
                    let f = exp::random_step_function(&base, c.seed);
                    match dims {
                        1 => {
                            let row = GridFunction1D::new(base.clone(), f.samples()[..base.size()].to_vec())?;
                            GridFile::Spectrum1(transform::forward_1d(&row))
                        }
                        2 => GridFile::Spectrum2(transform::forward_2d(&f)),
                        d => bail!(Error::Validation(format!("--dims must be 1 or 2, got {d}"))),
                    }
                }
            };
            let mut w = c.writer()?;
            out.write_to(&mut w)?;
            w.flush()?;
        }
        Command::Kernel { n, check_eq1 } => {
            let base = c.base("2x4")?;
            let d = transform::dirichlet_kernel(&base, *n)?;
            if *check_eq1 {
                let Some(k) = (0..=base.resolution()).find(|&k| base.scale(k) == *n) else {
                    bail!(Error::Validation(format!("{n} is not a scale M_k of base {base}")));
                };
                let err = d
                    .samples()
                    .iter()
                    .enumerate()
                    .map(|(x, v)| {
                        let want = if base.in_coset_index(x, 0, k) { *n as f64 } else { 0.0 };
                        (v - vilenkin::Complex64::new(want, 0.0)).norm()
                    })
                    .fold(0.0, f64::max);
                eprintln!("D_{n} vs {n} 1_I{k}: max error {err:e}");
                if err > 1e-10 {
                    bail!(Error::Assertion(format!("kernel identity off by {err:e}")));
                }
            }
            let mut w = c.writer()?;
            GridFile::Grid1(d).write_to(&mut w)?;
            w.flush()?;
        }
        Command::Weights { n } => {
            let Some(alpha) = c.alpha else {
                bail!(Error::Validation("--alpha is required".into()));
            };
            let table = CesaroWeightTable::new(alpha, *n)?;
            let mut w = c.writer()?;
            match c.format {
                Format::Csv => {
                    writeln!(w, "k,value")?;
                    for (k, v) in table.values().iter().enumerate() {
                        writeln!(w, "{k},{v}")?;
                    }
                }
                Format::Json => write_json(&table.values(), &mut w)?,
            }
            w.flush()?;
        }
        Command::Mean { input, n, m } => {
            let f = input_2d(input, c)?;
            let (alpha, beta) = c.orders(0.0);
            let out = cesaro_mean_2d(&transform::forward_2d(&f), &CesaroMeanParams::new(alpha, beta, *n, *m)?)?;
            let mut w = c.writer()?;
            GridFile::Grid2(out).write_to(&mut w)?;
            w.flush()?;
        }
        Command::Moduli { input, kind, k, l } => {
            let f = input_2d(input, c)?;
            let base = f.base().clone();
            let p = c.p()?;
            let opts = c.modulus_options();
            let levels: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => (0..=base.resolution()).collect(),
            };
            let mut reports = Vec::new();
            for &k in &levels {
                let l = l.unwrap_or(k);
                if matches!(kind, ModulusArg::Omega1 | ModulusArg::All) {
                    reports.push(analysis::omega1(&f, k, p)?);
                }
                if matches!(kind, ModulusArg::Omega2 | ModulusArg::All) {
                    reports.push(analysis::omega2(&f, k, p)?);
                }
                if matches!(kind, ModulusArg::Omega12 | ModulusArg::All) {
                    reports.push(analysis::omega12(&f, k, l, p, &opts)?);
                }
                if matches!(kind, ModulusArg::OmegaTotal | ModulusArg::All) {
                    reports.push(analysis::omega_total(&f, k, p, &opts)?);
                }
            }
            for r in &reports {
                if let Some(count) = r.sampled {
                    eprintln!("{} at ({}, {}): estimated from {count} sampled shift pairs", r.kind, r.k, r.l);
                }
            }
            write_moduli(c, &reports, base.size())?;
        }
        Command::Theorem3 { function, degrees } => {
            let base = c.base("2x6")?;
            let (alpha, beta) = c.orders(0.3);
            let w = test_function(*function, &base, alpha, beta, c.seed, c.modulus_options())?;
            let degrees = degrees.clone().unwrap_or_else(|| exp::default_degrees(&base));
            let report = exp::run_theorem3(w.as_ref(), alpha, beta, c.p()?, &degrees)?;
            eprintln!("sup ratio {:e}", report.sup_ratio);
            c.emit(&report, "theorem3")?;
        }
        Command::Corollary { function } => {
            let base = c.base("2x10")?;
            let (alpha, beta) = c.orders(0.3);
            let w = test_function(*function, &base, alpha, beta, c.seed, c.modulus_options())?;
            if base.resolution() < 2 {
                bail!(Error::Validation("the scan needs resolution >= 2".into()));
            }
            let scan = exp::run_corollary_scan(w.as_ref(), alpha, beta, c.p()?, 1..base.resolution())?;
            eprintln!(
                "hypotheses decay: {}; error decays: {}",
                scan.hypotheses_decay, scan.error_decays
            );
            c.emit(&scan, "corollary")?;
        }
        Command::Theorem4 { from, to, engine } => {
            let base = c.base("2x8")?;
            let (alpha, beta) = c.orders(0.3);
            let to = to.unwrap_or(base.resolution().saturating_sub(1));
            let engine = match engine {
                EngineArg::Grid => Engine::Grid,
                EngineArg::Diagonal => Engine::Diagonal,
            };
            let report = exp::run_theorem4(alpha, beta, &base, *from..to + 1, engine)?;
            c.emit(&report, "theorem4")?;
            report.check()?;
            eprintln!(
                "min error1 {:e}; modulus product in [{:e}, {:e}]",
                report.min_error1, report.min_modulus_product, report.max_modulus_product
            );
        }
        Command::Lemma1 { from, to, trials } => {
            let base = c.base("2x10")?;
            let to = to.unwrap_or(base.resolution().saturating_sub(1));
            if *from > to || to >= base.resolution() {
                bail!(Error::Validation(format!(
                    "levels {from}..={to} must lie below the resolution {}",
                    base.resolution()
                )));
            }
            let degrees: Vec<usize> = (*from..=to).map(|k| base.scale(k)).collect();
            let report = exp::run_lemma1(&base, &degrees, *trials, c.seed)?;
            c.emit(&report, "lemma1")?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Assertion(_)) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
