//! Command-line front end: scenario files, command implementations and
//! the mapping of failures to exit statuses.

// `!(x > 0.0)` deliberately rejects NaN along with nonpositive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod scenario;
