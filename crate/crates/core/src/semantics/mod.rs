//! Kripke semantics: models, truth, frame classes, and the consequence
//! decision procedure.

mod decide;
mod model;
mod query;

use std::fmt;
use std::str::FromStr;

pub use decide::{
    decide, decide_with_budget, enumerate_models, small_model_bound, Verdict, DEFAULT_BUDGET,
    DEFAULT_MAX_WORLDS, MAX_ENUMERATION_ATOMS,
};
pub use model::{
    check_frame, eval, holds_globally, FrameCondition, KmError, KripkeModel, ModelError, Violation,
};
pub use query::{Query, QueryError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Logic {
    K,
    T,
    S4,
    S5,
}

impl Logic {
    pub const ALL: [Logic; 4] = [Logic::K, Logic::T, Logic::S4, Logic::S5];

    pub fn frame_conditions(self) -> &'static [FrameCondition] {
        use FrameCondition::*;
        match self {
            Logic::K => &[],
            Logic::T => &[Reflexivity],
            Logic::S4 => &[Reflexivity, Transitivity],
            Logic::S5 => &[Reflexivity, Transitivity, Symmetry],
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::K => "K",
            Logic::T => "T",
            Logic::S4 => "S4",
            Logic::S5 => "S5",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown logic `{0}` (expected K, T, S4 or S5)")]
pub struct UnknownLogic(pub String);

impl FromStr for Logic {
    type Err = UnknownLogic;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K" => Ok(Logic::K),
            "T" => Ok(Logic::T),
            "S4" => Ok(Logic::S4),
            "S5" => Ok(Logic::S5),
            other => Err(UnknownLogic(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemanticsError {
    #[error("world {world} is outside the model (it has {world_count} worlds)")]
    WorldOutOfRange { world: usize, world_count: usize },
    #[error("world bound must be at least 1")]
    InvalidBound,
    #[error("search space of {candidates} candidate models exceeds the budget of {budget}")]
    BoundTooLarge { candidates: u128, budget: u64 },
    #[error("{count} atoms exceed the enumeration limit of {max}")]
    TooManyAtoms { count: usize, max: usize },
}
