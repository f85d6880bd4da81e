//! Three-layer lattice cell, grid numbering and global assembly.

pub mod assemble;
pub mod cell;
pub mod grid;

pub use assemble::{
    assemble_global, assemble_stiffness, fresh_truss_states, recover_truss_stresses,
    MaterialParams, SystemMatrices,
};
pub use cell::{
    build_cell_topology, cell_coupling_matrix, cell_mass_matrix, cell_permeability_matrix,
    truss_element_stiffness, CellTopology, Truss, TrussDirection, TRUSSES_PER_CELL,
};
pub use grid::LatticeGrid;
