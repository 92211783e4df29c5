//! Net description language, process expressions, Graphviz export and the
//! `catnet` command line, on top of `catnet-core`.

pub mod cli;
pub mod dot;
pub mod dsl;
pub mod expr;
pub mod syntax;

pub use dsl::{parse_net, print_net, NetDocument};
pub use expr::{parse_marking, parse_term, parse_typed_term};
pub use syntax::{Diagnostic, Location};
