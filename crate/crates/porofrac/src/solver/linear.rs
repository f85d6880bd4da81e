//! Direct sparse solve of square unsymmetric systems.
//!
//! Backed by a sparse LU factorization (faer). Factorization is kept
//! separate from the solve so time-stepping loops can reuse it across many
//! right-hand sides. Every solve is followed by a residual check; a
//! factorization that "succeeds" on a numerically singular matrix is caught
//! there rather than silently producing garbage.

use faer::prelude::*;
use faer::sparse::{SparseColMat, Triplet};

use crate::error::{Error, Result};
use crate::solver::sparse::{Coo, Csr};

/// Relative residual bound enforced on every solve.
pub const RESIDUAL_RTOL: f64 = 1e-10;

fn force_sequential() {
    // Deterministic factorization regardless of machine thread count.
    static ONCE: std::sync::Once = std::sync::Once::new();
    ONCE.call_once(|| faer::set_global_parallelism(faer::Par::Seq));
}

/// Reusable LU factorization of a square sparse matrix.
pub struct LuSolver {
    csr: Csr,
    lu: faer::sparse::linalg::solvers::Lu<usize, f64>,
}

impl LuSolver {
    pub fn factor(csr: Csr) -> Result<Self> {
        force_sequential();
        csr.check_structurally_nonsingular()?;
        let n = csr.nrows();
        let mut triplets = Vec::with_capacity(csr.nnz());
        for r in 0..n {
            let (cols, vals) = csr.row(r);
            for (c, v) in cols.iter().zip(vals) {
                triplets.push(Triplet::new(r, *c, *v));
            }
        }
        let mat = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &triplets)
            .map_err(|e| Error::Consistency(format!("sparse build failed: {e:?}")))?;
        let lu = mat
            .sp_lu()
            .map_err(|e| Error::NumericalSingularity(format!("LU factorization failed: {e:?}")))?;
        Ok(Self { csr, lu })
    }

    pub fn n(&self) -> usize {
        self.csr.nrows()
    }

    pub fn matrix(&self) -> &Csr {
        &self.csr
    }

    /// Solve A x = b and verify the residual.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n();
        assert_eq!(b.len(), n);
        let rhs = Mat::from_fn(n, 1, |i, _| b[i]);
        let sol = self.lu.solve(&rhs);
        let x: Vec<f64> = (0..n).map(|i| sol[(i, 0)]).collect();
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NumericalSingularity(
                "solution contains non-finite values".into(),
            ));
        }
        let ax = self.csr.matvec(&x);
        let mut res: f64 = 0.0;
        let mut bnorm: f64 = 0.0;
        for i in 0..n {
            res = res.max((ax[i] - b[i]).abs());
            bnorm = bnorm.max(b[i].abs());
        }
        let scale = bnorm.max(self.csr.max_abs() * x.iter().fold(0.0f64, |m, v| m.max(v.abs())));
        if res > RESIDUAL_RTOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NumericalSingularity(format!(
                "residual {res:.3e} exceeds {RESIDUAL_RTOL:.0e} * {scale:.3e}; \
                 the system is numerically singular or severely ill-conditioned"
            )));
        }
        Ok(x)
    }
}

/// One-shot solve of A x = b.
pub fn solve_linear(a: &Coo, b: &[f64]) -> Result<Vec<f64>> {
    LuSolver::factor(a.to_csr())?.solve(b)
}
