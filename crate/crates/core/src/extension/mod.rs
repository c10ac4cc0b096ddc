//! Bimodule forms on `A ⊕ A`, their filters and twists, the induced actions
//! on the center, extension ledgers and symbolic fusion tables.

mod bimodule;
mod center;
mod classify;
mod fusion;
mod twist;

pub use bimodule::{
    enumerate_bimodule_forms, filter_order_four, filter_order_two, filter_viable, BimoduleForm,
};
pub use center::{
    alt_sign, induced_center_action, invert, pairing_map, s_matrix, swap_matrix, CenterAction,
};
pub use classify::{classify_extension, ExtensionAction, ExtensionReport, LedgerEntry};
pub use fusion::{generalized_ty_fusion_table, Coefficient, Defect, FusionRow, FusionTable};
pub use twist::{twist_group, twist_orbits, Orbit, Twist};
