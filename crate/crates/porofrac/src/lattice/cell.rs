//! The three-layer unit cell: a 20-truss square lattice for the skeleton,
//! a 9-node plane element feeding the solid-fluid coupling matrix, and a
//! 4-node bilinear element for the flow matrix.
//!
//! The nine displacement nodes form a 3x3 sub-grid with spacing a/2, numbered
//! row-major from the lower-left corner:
//!
//! ```text
//!   6 - 7 - 8
//!   | X | X |      20 trusses: 6 horizontal + 6 vertical + 8 diagonal
//!   3 - 4 - 5      (each sub-square carries both diagonals)
//!   | X | X |
//!   0 - 1 - 2
//! ```
//!
//! Pressure lives on the four corners 0, 2, 6, 8.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrussDirection {
    Horizontal,
    Vertical,
    Diagonal,
}

/// One bond between two local nodes of the cell.
#[derive(Debug, Clone, Copy)]
pub struct Truss {
    pub n1: usize,
    pub n2: usize,
    pub direction: TrussDirection,
}

/// Geometry of the unit cell shared by every cell of a grid.
#[derive(Debug, Clone)]
pub struct CellTopology {
    /// Cell side length a, mm.
    pub cell_size: f64,
    /// Local node coordinates, mm, row-major 3x3.
    pub node_coords: [[f64; 2]; 9],
    /// The 20 bonds, ordered horizontals, verticals, diagonals.
    pub trusses: Vec<Truss>,
    /// Local node ids of the four pressure corners, in the order
    /// (0,0), (a,0), (0,a), (a,a).
    pub p_nodes: [usize; 4],
}

pub const TRUSSES_PER_CELL: usize = 20;

/// Build the 9-node, 20-truss cell of side `a`.
pub fn build_cell_topology(a: f64) -> Result<CellTopology> {
    if !(a > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cell size must be positive, got {a}"
        )));
    }
    let h = a / 2.0;
    let mut node_coords = [[0.0; 2]; 9];
    for j in 0..3 {
        for i in 0..3 {
            node_coords[j * 3 + i] = [i as f64 * h, j as f64 * h];
        }
    }
    use TrussDirection::*;
    let pairs: [(usize, usize, TrussDirection); TRUSSES_PER_CELL] = [
        // horizontal, bottom row to top row
        (0, 1, Horizontal),
        (1, 2, Horizontal),
        (3, 4, Horizontal),
        (4, 5, Horizontal),
        (6, 7, Horizontal),
        (7, 8, Horizontal),
        // vertical, left column to right column
        (0, 3, Vertical),
        (3, 6, Vertical),
        (1, 4, Vertical),
        (4, 7, Vertical),
        (2, 5, Vertical),
        (5, 8, Vertical),
        // diagonals, one sub-square at a time (lower-left, lower-right,
        // upper-left, upper-right), rising then falling diagonal
        (0, 4, Diagonal),
        (1, 3, Diagonal),
        (1, 5, Diagonal),
        (2, 4, Diagonal),
        (3, 7, Diagonal),
        (4, 6, Diagonal),
        (4, 8, Diagonal),
        (5, 7, Diagonal),
    ];
    let trusses = pairs
        .iter()
        .map(|&(n1, n2, direction)| Truss { n1, n2, direction })
        .collect();
    Ok(CellTopology {
        cell_size: a,
        node_coords,
        trusses,
        p_nodes: [0, 2, 6, 8],
    })
}

impl CellTopology {
    /// Length and unit direction vector of truss `idx`.
    pub fn truss_geometry(&self, idx: usize) -> (f64, [f64; 2]) {
        let t = &self.trusses[idx];
        let p1 = self.node_coords[t.n1];
        let p2 = self.node_coords[t.n2];
        let dx = p2[0] - p1[0];
        let dy = p2[1] - p1[1];
        let len = (dx * dx + dy * dy).sqrt();
        (len, [dx / len, dy / len])
    }
}

/// Axial-bar stiffness on the 4 DOFs (u1x, u1y, u2x, u2y):
/// k = (E A / L) [d d^T, -d d^T; -d d^T, d d^T], N/mm.
pub fn truss_element_stiffness(
    length: f64,
    direction: [f64; 2],
    e_modulus: f64,
    area: f64,
) -> Result<[[f64; 4]; 4]> {
    if !(length > 0.0) {
        return Err(Error::Geometry(format!(
            "truss length must be positive, got {length}"
        )));
    }
    if e_modulus < 0.0 || !(area > 0.0) {
        return Err(Error::InvalidParameter(
            "modulus must be non-negative and area positive".into(),
        ));
    }
    let coef = e_modulus * area / length;
    let d = direction;
    let mut k = [[0.0; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            let v = coef * d[i] * d[j];
            k[i][j] = v;
            k[i + 2][j + 2] = v;
            k[i][j + 2] = -v;
            k[i + 2][j] = -v;
        }
    }
    Ok(k)
}

/// 3-point Gauss-Legendre rule on [0, 1].
const GAUSS3: [(f64, f64); 3] = [
    (0.112701665379258311482073460022, 5.0 / 18.0),
    (0.5, 8.0 / 18.0),
    (0.887298334620741688517926539978, 5.0 / 18.0),
];

/// 1D quadratic Lagrange shapes on [0,1] with nodes {0, 1/2, 1}.
fn quad_shape(xi: f64) -> [f64; 3] {
    [
        2.0 * xi * xi - 3.0 * xi + 1.0,
        4.0 * xi - 4.0 * xi * xi,
        2.0 * xi * xi - xi,
    ]
}

fn quad_shape_deriv(xi: f64) -> [f64; 3] {
    [4.0 * xi - 3.0, 4.0 - 8.0 * xi, 4.0 * xi - 1.0]
}

fn lin_shape(xi: f64) -> [f64; 2] {
    [1.0 - xi, xi]
}

/// Solid-fluid coupling matrix of one cell, 18x4:
/// Q[i][c] = integral of (volumetric-strain operator of the 9-node
/// biquadratic displacement field) times the c-th bilinear pressure shape,
/// by a 3x3 Gauss rule (exact for these polynomial degrees).
pub fn cell_coupling_matrix(topology: &CellTopology) -> [[f64; 4]; 18] {
    let a = topology.cell_size;
    let mut q = [[0.0; 4]; 18];
    for &(xi, wx) in &GAUSS3 {
        for &(eta, wy) in &GAUSS3 {
            let lx = quad_shape(xi);
            let ly = quad_shape(eta);
            let dlx = quad_shape_deriv(xi);
            let dly = quad_shape_deriv(eta);
            let bx = lin_shape(xi);
            let by = lin_shape(eta);
            // Jacobian: x = a xi, y = a eta -> dOmega = a^2 dxi deta,
            // d/dx = (1/a) d/dxi.
            let w = wx * wy * a;
            for nj in 0..3 {
                for ni in 0..3 {
                    let node = nj * 3 + ni;
                    let dndx = dlx[ni] * ly[nj];
                    let dndy = lx[ni] * dly[nj];
                    for cj in 0..2 {
                        for ci in 0..2 {
                            let corner = cj * 2 + ci;
                            let np = bx[ci] * by[cj];
                            q[2 * node][corner] += w * dndx * np;
                            q[2 * node + 1][corner] += w * dndy * np;
                        }
                    }
                }
            }
        }
    }
    q
}

/// Flow matrix of one cell, 4x4: H = (k/mu) * integral of grad(Np)^T grad(Np).
/// Independent of the cell size in 2D; rows sum to zero.
pub fn cell_permeability_matrix(k_over_mu: f64, a: f64) -> Result<[[f64; 4]; 4]> {
    if !(k_over_mu > 0.0) || !(a > 0.0) {
        return Err(Error::InvalidParameter(
            "permeability ratio and cell size must be positive".into(),
        ));
    }
    // 2-point Gauss is exact for products of bilinear gradients.
    let g2 = [
        (0.5 - 1.0 / (2.0 * 3.0f64.sqrt()), 0.5),
        (0.5 + 1.0 / (2.0 * 3.0f64.sqrt()), 0.5),
    ];
    let mut h = [[0.0; 4]; 4];
    for &(xi, wx) in &g2 {
        for &(eta, wy) in &g2 {
            let bx = lin_shape(xi);
            let by = lin_shape(eta);
            let dbx = [-1.0, 1.0];
            let dby = [-1.0, 1.0];
            // gradients carry 1/a each; dOmega brings a^2: net a-independent.
            let w = wx * wy * k_over_mu;
            let mut grad = [[0.0; 2]; 4];
            for cj in 0..2 {
                for ci in 0..2 {
                    let corner = cj * 2 + ci;
                    grad[corner] = [dbx[ci] * by[cj], bx[ci] * dby[cj]];
                }
            }
            for r in 0..4 {
                for c in 0..4 {
                    h[r][c] += w * (grad[r][0] * grad[c][0] + grad[r][1] * grad[c][1]);
                }
            }
        }
    }
    Ok(h)
}

/// Lumped mass of one cell: 18 diagonal entries (x and y per node), obtained
/// by row-summing the consistent biquadratic mass. Total per direction is
/// rho * a^2 at unit thickness.
pub fn cell_mass_matrix(rho: f64, a: f64) -> Result<[f64; 18]> {
    if rho < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "density must be non-negative, got {rho}"
        )));
    }
    // Row sums of the consistent mass reduce to the shape-function integrals
    // (Simpson weights per direction).
    let w1 = [1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0];
    let mut m = [0.0; 18];
    for nj in 0..3 {
        for ni in 0..3 {
            let node = nj * 3 + ni;
            let mass = rho * a * a * w1[ni] * w1[nj];
            m[2 * node] = mass;
            m[2 * node + 1] = mass;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_has_the_right_bond_counts_and_lengths() {
        let topo = build_cell_topology(1.0).unwrap();
        assert_eq!(topo.trusses.len(), 20);
        let count = |d: TrussDirection| topo.trusses.iter().filter(|t| t.direction == d).count();
        assert_eq!(count(TrussDirection::Horizontal), 6);
        assert_eq!(count(TrussDirection::Vertical), 6);
        assert_eq!(count(TrussDirection::Diagonal), 8);
        for (i, t) in topo.trusses.iter().enumerate() {
            let (len, _) = topo.truss_geometry(i);
            match t.direction {
                TrussDirection::Horizontal | TrussDirection::Vertical => {
                    assert!((len - 0.5).abs() < 1e-15)
                }
                TrussDirection::Diagonal => {
                    assert!((len - 0.5 * 2.0f64.sqrt()).abs() < 1e-15)
                }
            }
        }
        // Every node is tied into the lattice by at least two bonds.
        let mut touch = [0usize; 9];
        for t in &topo.trusses {
            touch[t.n1] += 1;
            touch[t.n2] += 1;
        }
        assert!(touch.iter().all(|&c| c >= 2), "touch counts {touch:?}");
        assert!(build_cell_topology(0.0).is_err());
        assert!(build_cell_topology(-1.0).is_err());
    }

    #[test]
    fn scaling_the_cell_scales_coordinates_only() {
        let t1 = build_cell_topology(1.0).unwrap();
        let t2 = build_cell_topology(2.0).unwrap();
        for n in 0..9 {
            assert_eq!(t2.node_coords[n][0], 2.0 * t1.node_coords[n][0]);
            assert_eq!(t2.node_coords[n][1], 2.0 * t1.node_coords[n][1]);
        }
        for (a, b) in t1.trusses.iter().zip(&t2.trusses) {
            assert_eq!((a.n1, a.n2), (b.n1, b.n2));
            assert_eq!(a.direction, b.direction);
        }
    }

    #[test]
    fn horizontal_bar_axial_stiffness() {
        let k = truss_element_stiffness(0.5, [1.0, 0.0], 100.0, 1.0).unwrap();
        // EA/L = 200 on the aligned DOFs, nothing elsewhere.
        assert_eq!(k[0][0], 200.0);
        assert_eq!(k[2][2], 200.0);
        assert_eq!(k[0][2], -200.0);
        assert_eq!(k[1][1], 0.0);
        assert_eq!(k[0][1], 0.0);
    }

    #[test]
    fn broken_bond_contributes_nothing() {
        let k = truss_element_stiffness(0.5, [1.0, 0.0], 0.0, 1.0).unwrap();
        assert!(k.iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn diagonal_bar_entries() {
        let s = 0.5f64.sqrt();
        let l = 2.0f64.sqrt() / 2.0;
        let k = truss_element_stiffness(l, [s, s], 100.0, 1.0).unwrap();
        let half = 100.0 / l / 2.0;
        for i in 0..4 {
            for j in 0..4 {
                assert!(
                    (k[i][j].abs() - half).abs() < 1e-12,
                    "entry ({i},{j}) = {}",
                    k[i][j]
                );
            }
        }
        // Symmetric PSD of rank 1: k * perpendicular = 0.
        let perp = [-s, s, s, -s];
        for i in 0..4 {
            let dot: f64 = (0..4).map(|j| k[i][j] * perp[j]).sum();
            assert!(dot.abs() < 1e-12);
        }
        assert!(truss_element_stiffness(0.0, [1.0, 0.0], 1.0, 1.0).is_err());
    }

    #[test]
    fn coupling_kills_rigid_translations() {
        let topo = build_cell_topology(1.0).unwrap();
        let q = cell_coupling_matrix(&topo);
        for dir in 0..2 {
            for c in 0..4 {
                let sum: f64 = (0..9).map(|n| q[2 * n + dir][c]).sum();
                assert!(sum.abs() < 1e-14, "direction {dir}, corner {c}: {sum}");
            }
        }
    }

    #[test]
    fn coupling_uniform_dilation_gives_quarter_areas() {
        // u = (x, 0): volumetric strain 1 on the unit cell.
        let topo = build_cell_topology(1.0).unwrap();
        let q = cell_coupling_matrix(&topo);
        let mut u = [0.0; 18];
        for n in 0..9 {
            u[2 * n] = topo.node_coords[n][0];
        }
        for c in 0..4 {
            let v: f64 = (0..18).map(|i| u[i] * q[i][c]).sum();
            assert!((v - 0.25).abs() < 1e-14, "corner {c}: {v}");
        }
    }

    /// Divergence-theorem consistency of the coupling integrals: summing
    /// the x-rows of one pressure-shape column equals
    /// -int(dNp/dx) + boundary int(Np nx), both evaluated by independent
    /// quadrature; by the divergence theorem those cancel, so the column sum
    /// must vanish. Same in y.
    #[test]
    fn coupling_column_sums_match_divergence_theorem() {
        let topo = build_cell_topology(1.0).unwrap();
        let q = cell_coupling_matrix(&topo);
        // Independent quadrature: midpoint rule with 200 panels.
        let np = |c: usize, x: f64, y: f64| -> f64 {
            let bx = [1.0 - x, x];
            let by = [1.0 - y, y];
            bx[c % 2] * by[c / 2]
        };
        let n_panels = 200;
        let hp = 1.0 / n_panels as f64;
        for c in 0..4 {
            // interior: -int dNp/dx over the cell (central differences)
            let mut interior = 0.0;
            for i in 0..n_panels {
                for j in 0..n_panels {
                    let x = (i as f64 + 0.5) * hp;
                    let y = (j as f64 + 0.5) * hp;
                    let d = (np(c, x + 1e-6, y) - np(c, x - 1e-6, y)) / 2e-6;
                    interior -= d * hp * hp;
                }
            }
            // boundary: int Np nx over left (nx=-1) and right (nx=+1) edges
            let mut boundary = 0.0;
            for j in 0..n_panels {
                let y = (j as f64 + 0.5) * hp;
                boundary += (np(c, 1.0, y) - np(c, 0.0, y)) * hp;
            }
            let column_sum: f64 = (0..9).map(|n| q[2 * n][c]).sum();
            assert!(
                (column_sum - (interior + boundary)).abs() < 1e-6,
                "corner {c}: column {column_sum}, interior {interior}, boundary {boundary}"
            );
        }
    }

    #[test]
    fn permeability_matches_exact_bilinear_integrals() {
        let h = cell_permeability_matrix(1.0, 1.0).unwrap();
        let expect = [
            [2.0 / 3.0, -1.0 / 6.0, -1.0 / 6.0, -1.0 / 3.0],
            [-1.0 / 6.0, 2.0 / 3.0, -1.0 / 3.0, -1.0 / 6.0],
            [-1.0 / 6.0, -1.0 / 3.0, 2.0 / 3.0, -1.0 / 6.0],
            [-1.0 / 3.0, -1.0 / 6.0, -1.0 / 6.0, 2.0 / 3.0],
        ];
        for r in 0..4 {
            for c in 0..4 {
                assert!((h[r][c] - expect[r][c]).abs() < 1e-14, "({r},{c})");
            }
        }
        // Constant-pressure null mode and linearity in k.
        for r in 0..4 {
            let sum: f64 = h[r].iter().sum();
            assert!(sum.abs() < 1e-14);
        }
        let h2 = cell_permeability_matrix(2.0, 3.0).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                assert!((h2[r][c] - 2.0 * h[r][c]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn lumped_mass_conserves_total_mass() {
        let m = cell_mass_matrix(1.0, 1.0).unwrap();
        let sx: f64 = (0..9).map(|n| m[2 * n]).sum();
        let sy: f64 = (0..9).map(|n| m[2 * n + 1]).sum();
        assert!((sx - 1.0).abs() < 1e-14);
        assert!((sy - 1.0).abs() < 1e-14);
        assert!(m.iter().all(|&v| v > 0.0));
        let z = cell_mass_matrix(0.0, 1.0).unwrap();
        assert!(z.iter().all(|&v| v == 0.0));
    }
}
