//! Output formatting for the `yamabe` command-line tool.
//!
//! The binary itself only parses arguments and dispatches into
//! [`yamabe_core`]; everything about how results are presented lives here so
//! that the integration tests (and the golden-file tests) can exercise the
//! exact bytes the tool emits.

pub mod json;
pub mod render;
