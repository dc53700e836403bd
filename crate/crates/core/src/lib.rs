//! Opposition structures, defeasible-logic proof tags, and validation of
//! structured debate corpora against them.
//!
//! * [`opposition`]: judgments, levels and relation edges, with exhaustive
//!   world semantics.
//! * [`defeasible`]: facts, rules and superiority; the six proof tags.
//! * [`dsl`]: the `.nop` and `.dlt` text formats.
//! * [`debate`]: corpus loading and per-argument validation.
//! * [`analysis`]: repartition, compliance, genres and summaries.
//! * [`cli`]: the `oppositio` command line.

pub mod analysis;
pub mod cli;
pub mod debate;
pub mod defeasible;
pub mod dsl;
pub mod opposition;
