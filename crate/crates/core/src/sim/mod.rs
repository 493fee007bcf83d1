//! Statevector simulation of the quantum subroutines.
//!
//! The simulator supports exactly what the decision pipeline needs: Hadamard
//! layers, XOR and phase oracles, inversion about the mean, controlled Grover
//! iterates, the (inverse) Fourier transform on a register, and seeded
//! Born-rule measurement. On top of these sit Deutsch-Jozsa, Grover search
//! with an unknown number of solutions, and quantum counting.

mod algorithms;
mod rng;
mod state;

use serde::{Deserialize, Serialize};

pub(crate) use algorithms::deutsch_jozsa_run;
pub use algorithms::{
    counting_estimate, deutsch_jozsa, grover_search_unknown, quantum_counting, CountingEstimate,
    GroverOutcome,
};
pub use rng::{derive_seed, SimRng};
pub use state::{StateVector, DEFAULT_QUBIT_CAP};

use crate::error::{Error, Result};

/// Run parameters shared by the simulator and the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Seed of the measurement RNG.
    pub seed: u64,
    /// Growth factor of the Grover iteration bound between attempts.
    pub growth: f64,
    /// Number of independent Grover rounds before giving up.
    pub restarts: u32,
    /// Deutsch-Jozsa runs per balance/constancy test.
    pub dj_repetitions: u32,
    /// Accept only `y = 2^{t-2}` in the counting step.
    pub strict: bool,
    /// Counting register width; `None` uses `max(2, ⌈n/2⌉)`.
    pub counting_width: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            growth: 6.0 / 5.0,
            restarts: 20,
            dj_repetitions: 1,
            strict: false,
            counting_width: None,
        }
    }
}

impl SimConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.growth > 1.0 && self.growth.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "growth factor must exceed 1, got {}",
                self.growth
            )));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig(
                "restart budget must be at least 1".into(),
            ));
        }
        if self.dj_repetitions == 0 {
            return Err(Error::InvalidConfig(
                "dj repetitions must be at least 1".into(),
            ));
        }
        if let Some(t) = self.counting_width {
            if t < 2 {
                return Err(Error::WidthTooSmall(t));
            }
        }
        Ok(())
    }
}
