//! Model files, commands and reports behind the `s1yamabe` binary.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod model;
pub mod report;
