use serde::{Deserialize, Serialize};

/// Why a decision procedure answered the way it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    /// Deutsch-Jozsa on `f` measured `z = 0`.
    NotBalanced,
    /// Deutsch-Jozsa on `h` measured `z ≠ 0`.
    HNotConstantZero,
    /// The counting measurement did not encode `2^{n-1}` solutions.
    CountMismatch,
    /// A verified input violating (self-)duality was found.
    WitnessFound,
    /// Two implicants fail to intersect.
    IntersectionViolated,
    AllTestsPassed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub answer: bool,
    pub reason: Reason,
    pub witness: Option<u64>,
}

impl Verdict {
    pub fn accept() -> Self {
        Self {
            answer: true,
            reason: Reason::AllTestsPassed,
            witness: None,
        }
    }

    pub fn reject(reason: Reason) -> Self {
        debug_assert!(reason != Reason::AllTestsPassed);
        Self {
            answer: false,
            reason,
            witness: None,
        }
    }

    /// Rejection certified by an input; only meaningful for
    /// [`Reason::WitnessFound`] and [`Reason::IntersectionViolated`].
    pub fn reject_with(reason: Reason, witness: u64) -> Self {
        debug_assert!(matches!(
            reason,
            Reason::WitnessFound | Reason::IntersectionViolated
        ));
        Self {
            answer: false,
            reason,
            witness: Some(witness),
        }
    }
}
