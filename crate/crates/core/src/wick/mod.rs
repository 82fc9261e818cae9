//! Brute-force Wick oracle: symbolic Gaussian expectations of traces.

mod albert;
mod spin;
mod sympoly;

pub use albert::{
    fully_nested_power, generic_albert, oracle_albert_mixed, oracle_albert_moment, trace_power_direct,
    trace_power_expansion, trace_power_sym, HermOctMatrix,
};
pub use spin::{
    generic_spin, oracle_spin_mixed, oracle_spin_mixed_symbolic, oracle_spin_moment, oracle_spin_moment_symbolic,
    SpinElement,
};
pub use sympoly::{monomial_expectation, Monomial, SymPoly, Variable};
