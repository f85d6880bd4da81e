//! Rectangular grid of cells with shared nodes and global DOF numbering.
//!
//! Displacement nodes live on the fine (a/2) grid and are shared between
//! neighboring cells; pressure nodes sit on cell corners. Trusses are
//! per-cell entities: a bond on a shared edge belongs to each adjacent cell
//! separately, each with its own damage state. Global truss ids are
//! cell-major: `truss_id = 20 * cell_id + local_index`.

use crate::error::{Error, Result};
use crate::lattice::cell::{build_cell_topology, CellTopology, TRUSSES_PER_CELL};

#[derive(Debug, Clone)]
pub struct LatticeGrid {
    pub nx: usize,
    pub ny: usize,
    /// Cell side a, mm.
    pub cell_size: f64,
    topology: CellTopology,
}

impl LatticeGrid {
    pub fn new(nx: usize, ny: usize, cell_size: f64) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidParameter(
                "grid must have at least one cell per direction".into(),
            ));
        }
        let topology = build_cell_topology(cell_size)?;
        Ok(Self {
            nx,
            ny,
            cell_size,
            topology,
        })
    }

    pub fn topology(&self) -> &CellTopology {
        &self.topology
    }

    pub fn n_cells(&self) -> usize {
        self.nx * self.ny
    }

    pub fn n_trusses(&self) -> usize {
        self.n_cells() * TRUSSES_PER_CELL
    }

    /// Displacement nodes per direction on the fine grid.
    pub fn u_nodes_x(&self) -> usize {
        2 * self.nx + 1
    }

    pub fn u_nodes_y(&self) -> usize {
        2 * self.ny + 1
    }

    pub fn n_unodes(&self) -> usize {
        self.u_nodes_x() * self.u_nodes_y()
    }

    pub fn n_pnodes(&self) -> usize {
        (self.nx + 1) * (self.ny + 1)
    }

    pub fn n_udofs(&self) -> usize {
        2 * self.n_unodes()
    }

    /// Total DOFs of the coupled vector [u, p].
    pub fn n_dofs(&self) -> usize {
        self.n_udofs() + self.n_pnodes()
    }

    pub fn unode_id(&self, ix: usize, iy: usize) -> usize {
        debug_assert!(ix < self.u_nodes_x() && iy < self.u_nodes_y());
        iy * self.u_nodes_x() + ix
    }

    pub fn unode_coords(&self, id: usize) -> [f64; 2] {
        let ix = id % self.u_nodes_x();
        let iy = id / self.u_nodes_x();
        let h = self.cell_size / 2.0;
        [ix as f64 * h, iy as f64 * h]
    }

    pub fn pnode_id(&self, px: usize, py: usize) -> usize {
        debug_assert!(px <= self.nx && py <= self.ny);
        py * (self.nx + 1) + px
    }

    pub fn pnode_coords(&self, id: usize) -> [f64; 2] {
        let px = id % (self.nx + 1);
        let py = id / (self.nx + 1);
        [px as f64 * self.cell_size, py as f64 * self.cell_size]
    }

    /// Pressure DOF index in the global coupled vector.
    pub fn p_dof(&self, pnode: usize) -> usize {
        self.n_udofs() + pnode
    }

    pub fn u_dofs(&self, unode: usize) -> [usize; 2] {
        [2 * unode, 2 * unode + 1]
    }

    pub fn cell_id(&self, cx: usize, cy: usize) -> usize {
        debug_assert!(cx < self.nx && cy < self.ny);
        cy * self.nx + cx
    }

    pub fn cell_coords(&self, cell: usize) -> (usize, usize) {
        (cell % self.nx, cell / self.nx)
    }

    /// Global displacement nodes of a cell, in local row-major order.
    pub fn cell_unodes(&self, cell: usize) -> [usize; 9] {
        let (cx, cy) = self.cell_coords(cell);
        let (x0, y0) = (2 * cx, 2 * cy);
        let mut out = [0; 9];
        for j in 0..3 {
            for i in 0..3 {
                out[j * 3 + i] = self.unode_id(x0 + i, y0 + j);
            }
        }
        out
    }

    /// Global pressure nodes of a cell, in the local corner order
    /// (0,0), (a,0), (0,a), (a,a).
    pub fn cell_pnodes(&self, cell: usize) -> [usize; 4] {
        let (cx, cy) = self.cell_coords(cell);
        [
            self.pnode_id(cx, cy),
            self.pnode_id(cx + 1, cy),
            self.pnode_id(cx, cy + 1),
            self.pnode_id(cx + 1, cy + 1),
        ]
    }

    /// Global displacement-node endpoints of a truss.
    pub fn truss_endpoints(&self, truss_id: usize) -> (usize, usize) {
        let cell = truss_id / TRUSSES_PER_CELL;
        let local = truss_id % TRUSSES_PER_CELL;
        let unodes = self.cell_unodes(cell);
        let t = &self.topology.trusses[local];
        (unodes[t.n1], unodes[t.n2])
    }

    pub fn truss_local_index(&self, truss_id: usize) -> usize {
        truss_id % TRUSSES_PER_CELL
    }

    /// Midpoint of a truss, mm. Used for field snapshots.
    pub fn truss_midpoint(&self, truss_id: usize) -> [f64; 2] {
        let (n1, n2) = self.truss_endpoints(truss_id);
        let p1 = self.unode_coords(n1);
        let p2 = self.unode_coords(n2);
        [(p1[0] + p2[0]) / 2.0, (p1[1] + p2[1]) / 2.0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_and_dof_counts() {
        let g = LatticeGrid::new(16, 16, 1.0).unwrap();
        assert_eq!(g.n_unodes(), 33 * 33);
        assert_eq!(g.n_pnodes(), 17 * 17);
        assert_eq!(g.n_udofs(), 2 * 33 * 33);
        assert_eq!(g.n_dofs(), 2 * 33 * 33 + 17 * 17);
        assert_eq!(g.n_trusses(), 16 * 16 * 20);
    }

    #[test]
    fn neighbor_cells_share_edge_nodes() {
        let g = LatticeGrid::new(2, 1, 1.0).unwrap();
        let left = g.cell_unodes(0);
        let right = g.cell_unodes(1);
        // Right column of the left cell is the left column of the right cell.
        assert_eq!(left[2], right[0]);
        assert_eq!(left[5], right[3]);
        assert_eq!(left[8], right[6]);
        let lp = g.cell_pnodes(0);
        let rp = g.cell_pnodes(1);
        assert_eq!(lp[1], rp[0]);
        assert_eq!(lp[3], rp[2]);
    }

    #[test]
    fn truss_endpoints_are_consistent_with_geometry() {
        let g = LatticeGrid::new(3, 2, 2.0).unwrap();
        for t in 0..g.n_trusses() {
            let (n1, n2) = g.truss_endpoints(t);
            let p1 = g.unode_coords(n1);
            let p2 = g.unode_coords(n2);
            let len = ((p2[0] - p1[0]).powi(2) + (p2[1] - p1[1]).powi(2)).sqrt();
            let (local_len, _) = g.topology().truss_geometry(g.truss_local_index(t));
            assert!((len - local_len).abs() < 1e-12);
        }
    }
}
