//! Numerical experiments built on the transforms, means and moduli.

mod corollary;
mod lemma1;
pub mod report;
mod theorem3;
mod theorem4;
mod workload;

pub use corollary::{run_corollary_scan, CorollaryRow, CorollaryScan};
pub use lemma1::{run_lemma1, Lemma1Report, Lemma1Row};
pub use theorem3::{default_degrees, run_theorem3, Theorem3Report, Theorem3Row};
pub use theorem4::{run_theorem4, Engine, Theorem4Report, Theorem4Row, ERROR_FLOOR, NOTE};
pub use workload::{
    build_f0, f0_series, f0_tail_bound, finite_polynomial, holder_series, rademacher_tail,
    random_step_function, DiagonalSeries, GridWorkload, Workload,
};
