//! Restricted Lie algebras in characteristic two and Lie solvability of their
//! restricted enveloping algebras.

pub mod scalar;
pub mod exactla;
pub mod resla;
pub mod envelope;
pub mod families;
pub mod classify;
pub mod ordinary;
pub mod cli;
