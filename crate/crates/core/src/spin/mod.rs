//! Barbell diagrams for moments of the spin factor.
//!
//! Elements are `x = (x0, x)` with `x0` and the `n` coordinates of `x`
//! independent standard Gaussians, and `Tr x^k` is the scalar part of the
//! `k`-th Jordan power.

pub mod barbell;
pub mod connected;
pub mod mixed;
pub mod moments;

pub use barbell::{
    barbell_graph_sum, barbell_group_order, barbell_orbit_sum, BarbellGraph, OrbitInventory, OrbitRecord, GRAPH_MAX_M,
    ORBIT_MAX_M,
};
pub use connected::{barbell_series, connected_closed_form, connected_series, ConnectedSeries};
pub use mixed::{
    block_group_order, spin_mixed_moment, spin_mixed_moment_structures, spin_perturb_coefficient,
    spin_symmetry_factor, BlockComplex, SPIN_MIXED_MAX,
};
pub use moments::{
    circle_distribution, codegree_one, norm_moment, spin_moment_closed, spin_moment_enum, spin_moment_gf,
    spin_moment_gf_series, BarbellStructure, SpinEnumeration, SpinTally, SPIN_ENUM_MAX_K,
};
