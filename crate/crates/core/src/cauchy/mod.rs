//! Cauchy problem for circular nets and Ribaucour pairs: Miquel completion of
//! 3-cells, lattice fills from 2D coordinate subnets, hypercube fills and
//! seed generators.

mod fill;
mod frames;
mod hypercube;
mod initial;
mod miquel;
mod seed;

pub use fill::{fill_lattice, fill_pair_lattice, CellRecord, CompletionReport, Discrepancy, FillParams};
pub use frames::{fill_frame_lattice, FrameFillReport};
pub use hypercube::{hypercube_fill, hypercube_lattice, HypercubeFill};
pub use initial::{is_initial, InitialData, Subnet2};
pub use miquel::{complete_cell_3d, complete_cell_3d_with_tol, CellResidual, SevenPoints};
pub use seed::{seed_grid, seed_random_circular, seed_random_pair, CircularSeedParams, PairSeedParams, ParameterField};

#[cfg(test)]
mod tests;
