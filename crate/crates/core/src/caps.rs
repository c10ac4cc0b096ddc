use serde::{Deserialize, Serialize};

use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};

/// Search limits shared by all enumerations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Largest group order any enumeration may touch.
    pub group_order: usize,
    /// Largest number of subgroups collected by one lattice enumeration.
    pub subgroups: usize,
    /// Largest power tried when computing element orders.
    pub order: usize,
    /// Largest number of classes in a group closure.
    pub closure: usize,
    /// Largest number of cochain coordinates in one bar-complex degree.
    pub cochains: usize,
    /// Largest number of candidate endomorphisms in automorphism searches.
    pub endomorphisms: usize,
    /// Largest number of forms produced by one enumeration.
    pub forms: usize,
    /// Largest order of metric groups tried by the stabilization fallback;
    /// zero disables the fallback.
    pub stabilize: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            group_order: 4096,
            subgroups: 200_000,
            order: 12,
            closure: 256,
            cochains: 8192,
            endomorphisms: 1 << 20,
            forms: 1 << 20,
            stabilize: 0,
        }
    }
}

impl Caps {
    pub(crate) fn check_group(&self, g: &FinAbGroup) -> Result<()> {
        if g.order() > self.group_order {
            return Err(Error::cap("group order", g.order(), self.group_order));
        }
        Ok(())
    }
}
