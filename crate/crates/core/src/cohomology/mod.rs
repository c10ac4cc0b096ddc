//! Finite-group cohomology with finite twisted coefficients and with ℂˣ
//! coefficients, by the periodic resolution for cyclic groups and the
//! normalized bar complex in general.

mod bar;
mod cup;
mod cyclic;
mod gmodule;
mod local;
mod torus;

use serde::Serialize;

pub use bar::{coboundary, cohomology_bar, Cochain};
pub use cup::{cup_square, torus_coboundary, CupSquare};
pub use cyclic::{cohomology_cyclic, periodic_operators};
pub use gmodule::{GModule, SmallGroup};
pub use torus::{cohomology_torus, cohomology_torus_with, torus_bar, torus_periodic, TorusMethod};

use crate::abelian::{FinAbGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Representatives {
    /// Elements of M in the periodic resolution.
    Periodic(Vec<GroupElement>),
    /// Normalized bar cocycles, stored only when `|G|^d ≤ 2¹⁶`.
    Bar(Vec<Cochain>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub degree: usize,
    /// Invariant-factor form.
    pub group: FinAbGroup,
    pub representatives: Option<Representatives>,
    /// Order of each representative (a cyclic decomposition, not necessarily
    /// the invariant one).
    pub rep_orders: Vec<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;

    #[test]
    fn periodic_and_bar_agree() {
        let caps = Caps::default();
        let cases: &[(usize, &str, usize)] = &[
            (2, "Z2+Z2:swap", 6),
            (2, "Z2", 6),
            (2, "Z4:neg", 6),
            (2, "Z4+Z4:swap", 6),
            (3, "Z3", 6),
            (3, "Z9+Z3", 5),
            (4, "Z4+Z4:S", 4),
            (4, "Z2", 6),
            (4, "Z4:neg", 6),
        ];
        for &(n, lit, top) in cases {
            let m = GModule::parse(&SmallGroup::cyclic(n), lit).unwrap();
            for d in 0..=top {
                let a = cohomology_cyclic(&m, d, &caps).unwrap().group;
                let b = cohomology_bar(&m, d, &caps).unwrap().group;
                assert_eq!(a, b, "Z{n} {lit} degree {d}");
            }
        }
    }

    #[test]
    fn periodicity() {
        let caps = Caps::default();
        for (n, lit) in [(2, "Z2+Z2:swap"), (4, "Z4+Z4:S"), (6, "Z6:neg"), (3, "Z9")] {
            let m = GModule::parse(&SmallGroup::cyclic(n), lit).unwrap();
            for d in 1..6 {
                assert_eq!(
                    cohomology_cyclic(&m, d, &caps).unwrap().group,
                    cohomology_cyclic(&m, d + 2, &caps).unwrap().group
                );
            }
        }
    }
}
