//! Block operators of the coupled second-order system
//!
//! ```text
//! [M 0] [u..]   [0   0] [u.]   [K  -Q] [u]   [f_u]
//! [0 0] [p..] + [Q^T 0] [p.] + [0   H] [p] = [f_p]
//! ```
//!
//! collapsed to `M_hat a.. + C_hat a. + K_hat a = f` over the stacked vector
//! a = [u, p]. K_hat is unsymmetric by construction whenever Q is nonzero.

use crate::error::{Error, Result};
use crate::lattice::SystemMatrices;
use crate::solver::sparse::{Coo, Csr};

#[derive(Debug, Clone)]
pub struct BlockSystem {
    /// Diagonal of M_hat (zeros on the pressure block).
    pub m_hat: Vec<f64>,
    /// C_hat: Q^T in the (p, u) block.
    pub c_hat: Csr,
    /// K_hat: [[K, -Q], [0, H]].
    pub k_hat: Csr,
    pub n_udofs: usize,
    pub n: usize,
}

pub fn build_block_system(mats: &SystemMatrices) -> Result<BlockSystem> {
    let nu = mats.n_udofs;
    let np = mats.n_pdofs;
    if mats.k.nrows() != nu
        || mats.k.ncols() != nu
        || mats.q.nrows() != nu
        || mats.q.ncols() != np
        || mats.h.nrows() != np
        || mats.h.ncols() != np
        || mats.m_diag.len() != nu
    {
        return Err(Error::Consistency(format!(
            "block dimensions disagree: K {}x{}, Q {}x{}, H {}x{}, M {}",
            mats.k.nrows(),
            mats.k.ncols(),
            mats.q.nrows(),
            mats.q.ncols(),
            mats.h.nrows(),
            mats.h.ncols(),
            mats.m_diag.len()
        )));
    }
    let n = nu + np;

    let mut m_hat = vec![0.0; n];
    m_hat[..nu].copy_from_slice(&mats.m_diag);

    let mut c_hat = Coo::with_capacity(n, n, mats.q.nnz());
    for r in 0..nu {
        let (cols, vals) = mats.q.row(r);
        for (c, v) in cols.iter().zip(vals) {
            // Q^T entry: row = pressure DOF, col = displacement DOF.
            c_hat.push(nu + c, r, *v);
        }
    }

    let mut k_hat = Coo::with_capacity(n, n, mats.k.nnz() + mats.q.nnz() + mats.h.nnz());
    for r in 0..nu {
        let (cols, vals) = mats.k.row(r);
        for (c, v) in cols.iter().zip(vals) {
            k_hat.push(r, *c, *v);
        }
        let (qcols, qvals) = mats.q.row(r);
        for (c, v) in qcols.iter().zip(qvals) {
            k_hat.push(r, nu + c, -v);
        }
    }
    for r in 0..np {
        let (cols, vals) = mats.h.row(r);
        for (c, v) in cols.iter().zip(vals) {
            k_hat.push(nu + r, nu + c, *v);
        }
    }

    Ok(BlockSystem {
        m_hat,
        c_hat: c_hat.to_csr(),
        k_hat: k_hat.to_csr(),
        n_udofs: nu,
        n,
    })
}
