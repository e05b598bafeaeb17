use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MagnitudeClass {
    Infinitesimal,
    AppreciableLimited,
    Infinite,
}

/// Order-of-magnitude class together with the sign.
///
/// Zero is `Infinitesimal` with sign `Zero`; no other value has sign `Zero`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Magnitude {
    pub class: MagnitudeClass,
    pub sign: Sign,
}

impl Magnitude {
    pub fn is_limited(&self) -> bool {
        self.class != MagnitudeClass::Infinite
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.class == MagnitudeClass::Infinitesimal
    }

    pub fn is_infinite(&self) -> bool {
        self.class == MagnitudeClass::Infinite
    }
}

impl fmt::Display for MagnitudeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MagnitudeClass::Infinitesimal => "Infinitesimal",
            MagnitudeClass::AppreciableLimited => "AppreciableLimited",
            MagnitudeClass::Infinite => "Infinite",
        })
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}", self.class, self.sign)
    }
}
