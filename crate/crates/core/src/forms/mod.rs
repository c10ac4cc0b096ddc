//! Quadratic, bilinear and alternating forms on finite abelian groups.

mod bicharacter;
mod enumerate;
mod quadratic;

pub use bicharacter::{AlternatingForm, Bicharacter};
pub use enumerate::{
    canonical_sigma, em_h5_b3, enumerate_alternating_forms, enumerate_quadratic_forms,
    h6_b3_order, metric_candidates, quadratic_form_count, two_torsion_characters,
};
pub use quadratic::{gen_value_bound, pair_index, MetricGroup, QuadraticForm};

use crate::abelian::FinAbGroup;
use crate::error::{Error, Result};

/// `Bil(q)₁₂(a, b) = Bil(q)((a,0),(0,b))` for a form on `A ⊕ A`.
pub fn bil12(q: &QuadraticForm) -> Result<Bicharacter> {
    let g = q.group();
    let k = g.rank();
    if !k.is_multiple_of(2) || g.factors()[..k / 2] != g.factors()[k / 2..] {
        return Err(Error::NotAProduct);
    }
    let h = k / 2;
    let a = FinAbGroup::new(g.factors()[..h].to_vec())?;
    let m = (0..h)
        .map(|i| (0..h).map(|j| q.off(i, h + j)).collect())
        .collect();
    Bicharacter::on(&a, m)
}

/// Gauss sum of a form; see [`QuadraticForm::gauss_sum`].
pub fn gauss_sum(q: &QuadraticForm) -> num_complex::Complex64 {
    q.gauss_sum()
}
