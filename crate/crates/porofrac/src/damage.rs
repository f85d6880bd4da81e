//! Annealed continuous-damage rule for lattice trusses.
//!
//! Every truss starts at the shared initial modulus with a failure threshold
//! drawn uniformly from (0, 1) MPa. Each time the axial stress exceeds the
//! local threshold the modulus is multiplied by 0.9, the threshold is
//! redrawn (annealed disorder), and after thirty damage events the truss is
//! broken and removed from the stiffness assembly for good.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Modulus retained per damage event: E <- (1 - D) E with D = 0.1.
pub const DAMAGE_RETENTION: f64 = 0.9;
/// Damage events before final failure.
pub const MAX_DAMAGE_COUNT: u32 = 30;

/// Elastic state of one truss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrussState {
    /// Current Young modulus, MPa. Meaningless once broken.
    pub e_cur: f64,
    /// Current failure threshold, MPa, in (0, 1).
    pub threshold: f64,
    /// Number of damage events so far, 0..=30.
    pub damage_count: u32,
    pub broken: bool,
}

impl TrussState {
    pub fn fresh(e0: f64, rng: &mut SeededRng) -> Self {
        Self {
            e_cur: e0,
            threshold: draw_threshold(rng),
            damage_count: 0,
            broken: false,
        }
    }

    /// Modulus seen by the assembly: zero once broken.
    pub fn effective_modulus(&self) -> f64 {
        if self.broken {
            0.0
        } else {
            self.e_cur
        }
    }
}

/// Uniform threshold draw from the open interval (0, 1) MPa.
pub fn draw_threshold(rng: &mut SeededRng) -> f64 {
    rng.open01()
}

/// One damage event: reduce the modulus, redraw the threshold, break the
/// truss when the count reaches its cap.
pub fn apply_damage(state: &mut TrussState, rng: &mut SeededRng) -> Result<()> {
    if state.broken {
        return Err(Error::Logic("damage applied to a broken truss".into()));
    }
    state.e_cur *= DAMAGE_RETENTION;
    state.damage_count += 1;
    state.threshold = draw_threshold(rng);
    if state.damage_count >= MAX_DAMAGE_COUNT {
        state.broken = true;
    }
    Ok(())
}

/// Which stress component triggers damage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DamageTrigger {
    /// Only tensile stress can damage (default; mode-I opening).
    TensionOnly,
    /// |stress| compared against the threshold.
    Absolute,
}

/// All trusses whose stress exceeds the local threshold, in index order.
/// No cap on how many may fail in one sweep.
pub fn damage_sweep(stresses: &[f64], states: &[TrussState], trigger: DamageTrigger) -> Vec<usize> {
    assert_eq!(stresses.len(), states.len());
    let mut hit = Vec::new();
    for (i, (sigma, st)) in stresses.iter().zip(states).enumerate() {
        if st.broken {
            continue;
        }
        let s = match trigger {
            DamageTrigger::TensionOnly => *sigma,
            DamageTrigger::Absolute => sigma.abs(),
        };
        if s > st.threshold {
            hit.push(i);
        }
    }
    hit
}

/// Log of one time station: the damaged-truss lists of every inner sweep.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AvalancheRecord {
    /// Physical time of the station, s.
    pub t: f64,
    /// One id list per inner iteration, in sweep order.
    pub sweeps: Vec<Vec<usize>>,
    /// Avalanche size: total damage events at this station.
    pub s: usize,
}

impl AvalancheRecord {
    pub fn new(t: f64) -> Self {
        Self {
            t,
            sweeps: Vec::new(),
            s: 0,
        }
    }

    pub fn push_sweep(&mut self, ids: Vec<usize>) {
        self.s += ids.len();
        self.sweeps.push(ids);
    }
}
