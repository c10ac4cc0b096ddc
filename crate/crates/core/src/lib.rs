//! Exact arithmetic for graded premetric groups, their twisted Witt classes,
//! finite group cohomology and duality-defect extension data.

pub mod abelian;
pub mod caps;
pub mod cohomology;
pub mod error;
pub mod extension;
pub mod forms;
pub mod io;
pub mod qz;
pub mod verify;
pub mod witt;

pub use abelian::{FinAbGroup, GroupElement, GroupHom, Subgroup};
pub use caps::Caps;
pub use error::{Error, Result};
pub use forms::{AlternatingForm, Bicharacter, MetricGroup, QuadraticForm};
pub use qz::Qz;
