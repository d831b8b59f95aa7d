//! S5 modal logic with local and global assumptions.
//!
//! * [`formula`]: syntax, parser, printer.
//! * [`semantics`]: Kripke models and the consequence decision procedure.
//! * [`proof`]: two-part Hilbert derivations and their checker.
//! * [`casebook`]: the bundled ontological-argument cases.
//! * [`cli`]: the `modal` command line.

pub mod casebook;
pub mod cli;
pub mod formula;
pub mod proof;
pub mod semantics;
