use std::fmt;

use serde::{Deserialize, Serialize};

use super::StoreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tier {
    Easy,
    Medium,
    Hard,
}

impl Tier {
    pub const ALL: [Tier; 3] = [Tier::Easy, Tier::Medium, Tier::Hard];

    pub fn as_str(self) -> &'static str {
        match self {
            Tier::Easy => "Easy",
            Tier::Medium => "Medium",
            Tier::Hard => "Hard",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Half-open difficulty cut points: Easy below `easy_upper`, Medium below
/// `medium_upper`, Hard otherwise. The defaults (3.0, 6.0) are a local
/// convention, not a published threshold; reports always print the tiering
/// they used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifficultyTiering {
    pub easy_upper: f64,
    pub medium_upper: f64,
}

impl Default for DifficultyTiering {
    fn default() -> Self {
        Self { easy_upper: 3.0, medium_upper: 6.0 }
    }
}

impl DifficultyTiering {
    pub fn new(easy_upper: f64, medium_upper: f64) -> Result<Self, StoreError> {
        let t = Self { easy_upper, medium_upper };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), StoreError> {
        if 1.0 < self.easy_upper && self.easy_upper < self.medium_upper && self.medium_upper <= 10.0 {
            Ok(())
        } else {
            Err(StoreError::InvalidTiering {
                easy_upper: self.easy_upper,
                medium_upper: self.medium_upper,
            })
        }
    }

    pub fn tier_of(&self, difficulty: f64) -> Tier {
        tier_of(difficulty, self)
    }
}

pub fn tier_of(difficulty: f64, tiering: &DifficultyTiering) -> Tier {
    if difficulty < tiering.easy_upper {
        Tier::Easy
    } else if difficulty < tiering.medium_upper {
        Tier::Medium
    } else {
        Tier::Hard
    }
}
