//! Dirichlet constraints by row/column elimination.
//!
//! The constrained system keeps full-size vectors at the interface: callers
//! hand in full right-hand sides and get back full solution vectors in which
//! every prescribed DOF holds its prescribed value exactly. Internally the
//! free equations are extracted, the prescribed columns moved to the right
//! hand side, and the reduced square system factorized once and reused.
//! Prescribed *values* may change between solves (ramped drives); the
//! constrained *set* is fixed per factorization.

use crate::error::{Error, Result};
use crate::solver::linear::LuSolver;
use crate::solver::sparse::{Coo, Csr};

/// Set of prescribed DOFs and their current values.
#[derive(Debug, Clone)]
pub struct Constraints {
    prescribed: Vec<Option<f64>>,
}

impl Constraints {
    pub fn none(n: usize) -> Self {
        Self {
            prescribed: vec![None; n],
        }
    }

    pub fn n(&self) -> usize {
        self.prescribed.len()
    }

    pub fn fix(&mut self, dof: usize, value: f64) {
        self.prescribed[dof] = Some(value);
    }

    /// Update the value of an already-fixed DOF (drive ramps).
    pub fn set_value(&mut self, dof: usize, value: f64) {
        assert!(
            self.prescribed[dof].is_some(),
            "DOF {dof} is not constrained"
        );
        self.prescribed[dof] = Some(value);
    }

    pub fn is_fixed(&self, dof: usize) -> bool {
        self.prescribed[dof].is_some()
    }

    pub fn value(&self, dof: usize) -> Option<f64> {
        self.prescribed[dof]
    }

    pub fn fixed_count(&self) -> usize {
        self.prescribed.iter().filter(|p| p.is_some()).count()
    }

    /// Write prescribed values into a full-size vector.
    pub fn apply_to(&self, x: &mut [f64]) {
        for (i, p) in self.prescribed.iter().enumerate() {
            if let Some(v) = *p {
                x[i] = v;
            }
        }
    }

    pub fn fixed_dofs(&self) -> impl Iterator<Item = usize> + '_ {
        self.prescribed
            .iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|_| i))
    }
}

/// Factorized reduced system for one constraint set.
pub struct ReducedSystem {
    full: Csr,
    free: Vec<usize>,
    pos: Vec<Option<usize>>,
    fixed_set: Vec<bool>,
    lu: LuSolver,
}

impl ReducedSystem {
    pub fn factor(a: &Csr, cons: &Constraints) -> Result<Self> {
        if a.nrows() != cons.n() || a.ncols() != cons.n() {
            return Err(Error::Consistency(format!(
                "matrix is {}x{} but constraint set covers {} DOFs",
                a.nrows(),
                a.ncols(),
                cons.n()
            )));
        }
        let n = a.nrows();
        let fixed_set: Vec<bool> = (0..n).map(|i| cons.is_fixed(i)).collect();
        let free: Vec<usize> = (0..n).filter(|&i| !fixed_set[i]).collect();
        let mut pos = vec![None; n];
        for (k, &dof) in free.iter().enumerate() {
            pos[dof] = Some(k);
        }
        let m = free.len();
        let mut red = Coo::with_capacity(m, m, a.nnz());
        for (k, &dof) in free.iter().enumerate() {
            let (cols, vals) = a.row(dof);
            for (c, v) in cols.iter().zip(vals) {
                if let Some(j) = pos[*c] {
                    red.push(k, j, *v);
                }
            }
        }
        let lu = LuSolver::factor(red.to_csr())?;
        Ok(Self {
            full: a.clone(),
            free,
            pos,
            fixed_set,
            lu,
        })
    }

    pub fn matrix(&self) -> &Csr {
        &self.full
    }

    /// Solve with the current prescribed values. `b_full` is the full-size
    /// load vector; entries at constrained DOFs are ignored.
    pub fn solve(&self, b_full: &[f64], cons: &Constraints) -> Result<Vec<f64>> {
        let n = self.full.nrows();
        assert_eq!(b_full.len(), n);
        for i in 0..n {
            if cons.is_fixed(i) != self.fixed_set[i] {
                return Err(Error::Consistency(format!(
                    "constraint set changed since factorization (DOF {i}); refactor required"
                )));
            }
        }
        let mut b_red = vec![0.0; self.free.len()];
        for (k, &dof) in self.free.iter().enumerate() {
            let mut acc = b_full[dof];
            let (cols, vals) = self.full.row(dof);
            for (c, v) in cols.iter().zip(vals) {
                if self.fixed_set[*c] {
                    acc -= v * cons.value(*c).unwrap();
                }
            }
            b_red[k] = acc;
        }
        let x_red = self.lu.solve(&b_red)?;
        let mut x = vec![0.0; n];
        cons.apply_to(&mut x);
        for (k, &dof) in self.free.iter().enumerate() {
            x[dof] = x_red[k];
        }
        Ok(x)
    }

    /// Reaction forces at constrained DOFs: (A x - b) restricted to the
    /// constrained rows; zero elsewhere.
    pub fn reactions(&self, x_full: &[f64], b_full: &[f64]) -> Vec<f64> {
        let ax = self.full.matvec(x_full);
        (0..self.full.nrows())
            .map(|i| {
                if self.fixed_set[i] {
                    ax[i] - b_full[i]
                } else {
                    0.0
                }
            })
            .collect()
    }

    pub fn free_dofs(&self) -> &[usize] {
        &self.free
    }

    pub fn reduced_index(&self, dof: usize) -> Option<usize> {
        self.pos[dof]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 3-DOF chain: [2 -1 0; -1 2 -1; 0 -1 2], fix x0 = 1, b = 0.
    /// Eliminated system: x1, x2 from [2 -1; -1 2] [x1 x2]^T = [1, 0]^T
    /// -> x1 = 2/3, x2 = 1/3.
    #[test]
    fn chain_with_prescribed_end() {
        let mut a = Coo::new(3, 3);
        for i in 0..3 {
            a.push(i, i, 2.0);
        }
        a.push(0, 1, -1.0);
        a.push(1, 0, -1.0);
        a.push(1, 2, -1.0);
        a.push(2, 1, -1.0);
        let mut cons = Constraints::none(3);
        cons.fix(0, 1.0);
        let sys = ReducedSystem::factor(&a.to_csr(), &cons).unwrap();
        let x = sys.solve(&[0.0; 3], &cons).unwrap();
        assert_eq!(x[0], 1.0);
        assert!((x[1] - 2.0 / 3.0).abs() < 1e-14);
        assert!((x[2] - 1.0 / 3.0).abs() < 1e-14);

        // Reaction at the fixed DOF balances the forces it transmits.
        let r = sys.reactions(&x, &[0.0; 3]);
        assert!((r[0] - (2.0 * 1.0 - x[1])).abs() < 1e-14);
        assert_eq!(r[1], 0.0);
    }

    #[test]
    fn prescribed_values_can_ramp_without_refactor() {
        let mut a = Coo::new(2, 2);
        a.push(0, 0, 1.0);
        a.push(1, 1, 2.0);
        a.push(0, 1, 1.0);
        a.push(1, 0, 1.0);
        let mut cons = Constraints::none(2);
        cons.fix(0, 0.5);
        let sys = ReducedSystem::factor(&a.to_csr(), &cons).unwrap();
        for step in 0..5 {
            let v = 0.5 * step as f64;
            cons.set_value(0, v);
            let x = sys.solve(&[0.0, 0.0], &cons).unwrap();
            assert_eq!(x[0], v);
            assert!((x[1] + v / 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn changed_constraint_set_is_rejected() {
        let mut a = Coo::new(2, 2);
        a.push(0, 0, 1.0);
        a.push(1, 1, 1.0);
        let mut cons = Constraints::none(2);
        cons.fix(0, 0.0);
        let sys = ReducedSystem::factor(&a.to_csr(), &cons).unwrap();
        let mut cons2 = Constraints::none(2);
        cons2.fix(1, 0.0);
        assert!(sys.solve(&[0.0, 0.0], &cons2).is_err());
    }
}
