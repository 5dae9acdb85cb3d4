//! Support library for the `innodyn` binary: figure documents and their
//! SVG rendering, kept as a library target so geometry is unit-testable.

pub mod plot;
