//! The worked elements over `A = Z/2 ⊕ Z/2` with `s(a,b) = 1/2`.

use super::graded::{GradedPremetricGroup, SyllepticContext};
use crate::abelian::{FinAbGroup, GroupHom};
use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::qz::Qz;

fn z2_graded(degree: [i64; 2], q: Qz) -> GradedPremetricGroup {
    let ctx = SyllepticContext::klein();
    let g = FinAbGroup::cyclic(2);
    let f = GroupHom::new(g.clone(), ctx.a().clone(), vec![vec![degree[0]], vec![degree[1]]])
        .expect("Z2 maps anywhere in a 2-group");
    let form = QuadraticForm::new(g, vec![q], vec![]).expect("value of order ≤ 4");
    GradedPremetricGroup::new(ctx, f, form).expect("consistent")
}

/// Graded semion on `a`, `q(1) = 1/4` (or `3/4` with `minus`).
pub fn semion_a(minus: bool) -> GradedPremetricGroup {
    z2_graded([1, 0], Qz::new(if minus { 3 } else { 1 }, 4))
}

/// Graded semion on `b`.
pub fn semion_b(minus: bool) -> GradedPremetricGroup {
    z2_graded([0, 1], Qz::new(if minus { 3 } else { 1 }, 4))
}

/// `Z/2` graded by `a+b`, `q(1) = 0` (or `1/2` with `minus`).
pub fn element_c(minus: bool) -> GradedPremetricGroup {
    z2_graded([1, 1], if minus { Qz::HALF } else { Qz::ZERO })
}

fn klein_form(values: Qz) -> QuadraticForm {
    // q(1,0) = q(0,1) = q(1,1) = v means off = −v
    let g = FinAbGroup::new(vec![2, 2]).expect("valid");
    QuadraticForm::new(g, vec![values, values], vec![-values]).expect("order-2 values")
}

/// `C`: trivially graded `Z/2 ⊕ Z/2` with all nonzero values `1/2`.
pub fn metric_c() -> GradedPremetricGroup {
    GradedPremetricGroup::trivially_graded(&SyllepticContext::klein(), klein_form(Qz::HALF))
}

/// `L`: trivially graded `Z/2 ⊕ Z/2` with the zero form.
pub fn metric_l() -> GradedPremetricGroup {
    GradedPremetricGroup::trivially_graded(&SyllepticContext::klein(), klein_form(Qz::ZERO))
}

/// Names accepted by [`preset`].
pub const PRESET_NAMES: &[&str] = &[
    "a", "a-", "b", "b-", "c", "c-", "ab", "a2b", "C", "L", "z", "trivial", "ab-generators",
];

/// A named element (or generator list for `ab-generators`).
pub fn preset(name: &str) -> Result<Vec<GradedPremetricGroup>> {
    let one = |x: GradedPremetricGroup| Ok(vec![x]);
    match name {
        "a" => one(semion_a(false)),
        "a-" => one(semion_a(true)),
        "b" => one(semion_b(false)),
        "b-" => one(semion_b(true)),
        "c" => one(element_c(false)),
        "c-" => one(element_c(true)),
        "ab" => one(semion_a(false).twisted_product(&semion_b(false))?),
        "a2b" => one(
            semion_a(false)
                .twisted_product(&semion_a(false))?
                .twisted_product(&semion_b(false))?,
        ),
        "C" | "z" => one(metric_c()),
        "L" => one(metric_l()),
        "trivial" => one(GradedPremetricGroup::unit(&SyllepticContext::klein())),
        "ab-generators" => Ok(vec![semion_a(false), semion_b(false)]),
        _ => Err(Error::parse(format!(
            "unknown preset {name:?}; known: {}",
            PRESET_NAMES.join(", ")
        ))),
    }
}
