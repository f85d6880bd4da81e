//! Global assembly of the coupled system blocks and truss stress recovery.
//!
//! K gathers the axial stiffness of every unbroken truss; M is the lumped
//! mixture mass; Q couples volumetric strain to the corner pressures; H is
//! the flow matrix. Q, H and M do not depend on damage, so time-stepping
//! loops reassemble only K.

use crate::damage::TrussState;
use crate::error::{Error, Result};
use crate::lattice::cell::{
    cell_coupling_matrix, cell_mass_matrix, cell_permeability_matrix, truss_element_stiffness,
};
use crate::lattice::grid::LatticeGrid;
use crate::solver::sparse::{Coo, Csr};

/// Material constants shared by every cell.
#[derive(Debug, Clone, Copy)]
pub struct MaterialParams {
    /// Initial truss Young modulus, MPa.
    pub e0_mpa: f64,
    /// Truss cross-section, mm^2 (unit out-of-plane thickness).
    pub area_mm2: f64,
    /// Intrinsic permeability over fluid viscosity, mm^2/(MPa s).
    pub k_over_mu: f64,
    /// Intrinsic solid density, mass/mm^3 in a unit system coherent with
    /// mm, N, MPa and s (so that force = mass * mm / s^2).
    pub rho_s: f64,
    /// Intrinsic fluid density, same units.
    pub rho_w: f64,
    /// Porosity, dimensionless in (0, 1).
    pub porosity: f64,
    /// Gravity, mm/s^2. Zero in all bundled scenarios.
    pub gravity: [f64; 2],
}

impl Default for MaterialParams {
    fn default() -> Self {
        Self {
            e0_mpa: 100.0,
            area_mm2: 1.0,
            k_over_mu: 1e-3,
            rho_s: 2.0e-9,
            rho_w: 1.0e-9,
            porosity: 0.3,
            gravity: [0.0, 0.0],
        }
    }
}

impl MaterialParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.e0_mpa > 0.0)
            || !(self.area_mm2 > 0.0)
            || !(self.k_over_mu > 0.0)
            || self.rho_s < 0.0
            || self.rho_w < 0.0
        {
            return Err(Error::InvalidParameter(
                "material constants must be positive".into(),
            ));
        }
        if !(self.porosity > 0.0 && self.porosity < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "porosity {} outside (0, 1)",
                self.porosity
            )));
        }
        Ok(())
    }

    /// Averaged mixture density (1-n) rho_s + n rho_w.
    pub fn mixture_density(&self) -> f64 {
        (1.0 - self.porosity) * self.rho_s + self.porosity * self.rho_w
    }
}

/// Assembled global blocks.
#[derive(Debug, Clone)]
pub struct SystemMatrices {
    /// Stiffness, n_udofs x n_udofs, N/mm.
    pub k: Csr,
    /// Lumped mass diagonal, n_udofs entries.
    pub m_diag: Vec<f64>,
    /// Coupling, n_udofs x n_pnodes.
    pub q: Csr,
    /// Flow, n_pnodes x n_pnodes.
    pub h: Csr,
    pub n_udofs: usize,
    pub n_pdofs: usize,
}

/// Assemble the stiffness block only.
pub fn assemble_stiffness(
    grid: &LatticeGrid,
    states: &[TrussState],
    params: &MaterialParams,
) -> Result<Csr> {
    if states.len() != grid.n_trusses() {
        return Err(Error::Consistency(format!(
            "{} truss states for {} trusses",
            states.len(),
            grid.n_trusses()
        )));
    }
    let topo = grid.topology();
    let n_udofs = grid.n_udofs();
    let mut k = Coo::with_capacity(n_udofs, n_udofs, grid.n_trusses() * 16);
    for truss_id in 0..grid.n_trusses() {
        let st = &states[truss_id];
        let e = st.effective_modulus();
        if e == 0.0 {
            continue;
        }
        let local = grid.truss_local_index(truss_id);
        let (len, dir) = topo.truss_geometry(local);
        let ke = truss_element_stiffness(len, dir, e, params.area_mm2)?;
        let (n1, n2) = grid.truss_endpoints(truss_id);
        let dofs = [2 * n1, 2 * n1 + 1, 2 * n2, 2 * n2 + 1];
        for (i, &gi) in dofs.iter().enumerate() {
            for (j, &gj) in dofs.iter().enumerate() {
                k.push(gi, gj, ke[i][j]);
            }
        }
    }
    Ok(k.to_csr())
}

/// Assemble every global block.
pub fn assemble_global(
    grid: &LatticeGrid,
    states: &[TrussState],
    params: &MaterialParams,
) -> Result<SystemMatrices> {
    params.validate()?;
    let k = assemble_stiffness(grid, states, params)?;

    let n_udofs = grid.n_udofs();
    let n_pdofs = grid.n_pnodes();
    let topo = grid.topology();

    let q_cell = cell_coupling_matrix(topo);
    let h_cell = cell_permeability_matrix(params.k_over_mu, grid.cell_size)?;
    let m_cell = cell_mass_matrix(params.mixture_density(), grid.cell_size)?;

    let mut q = Coo::with_capacity(n_udofs, n_pdofs, grid.n_cells() * 72);
    let mut h = Coo::with_capacity(n_pdofs, n_pdofs, grid.n_cells() * 16);
    let mut m_diag = vec![0.0; n_udofs];

    for cell in 0..grid.n_cells() {
        let unodes = grid.cell_unodes(cell);
        let pnodes = grid.cell_pnodes(cell);
        for (ln, &gn) in unodes.iter().enumerate() {
            let gdofs = [2 * gn, 2 * gn + 1];
            for d in 0..2 {
                m_diag[gdofs[d]] += m_cell[2 * ln + d];
                for (lp, &gp) in pnodes.iter().enumerate() {
                    q.push(gdofs[d], gp, q_cell[2 * ln + d][lp]);
                }
            }
        }
        for (lr, &gr) in pnodes.iter().enumerate() {
            for (lc, &gc) in pnodes.iter().enumerate() {
                h.push(gr, gc, h_cell[lr][lc]);
            }
        }
    }

    Ok(SystemMatrices {
        k,
        m_diag,
        q: q.to_csr(),
        h: h.to_csr(),
        n_udofs,
        n_pdofs,
    })
}

/// Axial stress of every truss for the displacement vector `u`
/// (length n_udofs). Tension positive; broken trusses report zero.
pub fn recover_truss_stresses(
    grid: &LatticeGrid,
    u: &[f64],
    states: &[TrussState],
) -> Result<Vec<f64>> {
    if u.len() != grid.n_udofs() {
        return Err(Error::Consistency(format!(
            "displacement vector has {} entries, expected {}",
            u.len(),
            grid.n_udofs()
        )));
    }
    if states.len() != grid.n_trusses() {
        return Err(Error::Consistency("truss state count mismatch".into()));
    }
    let topo = grid.topology();
    let mut sigma = vec![0.0; grid.n_trusses()];
    for truss_id in 0..grid.n_trusses() {
        let st = &states[truss_id];
        if st.broken {
            continue;
        }
        let local = grid.truss_local_index(truss_id);
        let (len, dir) = topo.truss_geometry(local);
        let (n1, n2) = grid.truss_endpoints(truss_id);
        let du = [u[2 * n2] - u[2 * n1], u[2 * n2 + 1] - u[2 * n1 + 1]];
        let elongation = du[0] * dir[0] + du[1] * dir[1];
        sigma[truss_id] = st.e_cur * elongation / len;
    }
    Ok(sigma)
}

/// Fresh (undamaged) truss states for a whole grid, thresholds drawn in
/// truss-id order so a fixed seed fixes the disorder realization.
pub fn fresh_truss_states(
    grid: &LatticeGrid,
    params: &MaterialParams,
    rng: &mut crate::rng::SeededRng,
) -> Vec<TrussState> {
    (0..grid.n_trusses())
        .map(|_| TrussState::fresh(params.e0_mpa, rng))
        .collect()
}
