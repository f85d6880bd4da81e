//! Generalized unknown vector of the coupled problem.

/// State of the coupled vector a = [u, p] with its first and second time
/// derivatives and the simulation clock.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    /// Generalized unknowns: displacements (mm) then pressures (MPa).
    pub a: Vec<f64>,
    /// First time derivative.
    pub da: Vec<f64>,
    /// Second time derivative.
    pub dda: Vec<f64>,
    /// Time, s.
    pub t: f64,
}

impl SimState {
    pub fn zeros(n: usize) -> Self {
        Self {
            a: vec![0.0; n],
            da: vec![0.0; n],
            dda: vec![0.0; n],
            t: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// Displacement block view.
    pub fn u(&self, n_udofs: usize) -> &[f64] {
        &self.a[..n_udofs]
    }

    /// Pressure block view.
    pub fn p(&self, n_udofs: usize) -> &[f64] {
        &self.a[n_udofs..]
    }
}
