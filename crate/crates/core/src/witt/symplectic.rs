use serde::Serialize;

use super::graded::SyllepticContext;
use crate::abelian::{automorphisms, FinAbGroup, GroupHom};
use crate::caps::Caps;
use crate::error::Result;
use crate::forms::{em_h5_b3, AlternatingForm};

/// `φ` preserves `λ`: `λ(φx, φy) = λ(x, y)` on all generator pairs.
pub fn preserves(phi: &GroupHom, lambda: &AlternatingForm) -> bool {
    let g = phi.source();
    let gens = g.generators();
    let images: Vec<_> = gens.iter().map(|e| phi.apply(e)).collect();
    (0..gens.len()).all(|i| {
        (0..gens.len()).all(|j| lambda.eval(&images[i], &images[j]) == lambda.eval(&gens[i], &gens[j]))
    })
}

/// Automorphisms of the grading group preserving `Alt(s)`.
pub fn symplectic_automorphisms(ctx: &SyllepticContext, caps: &Caps) -> Result<Vec<GroupHom>> {
    let alt = ctx.alt();
    Ok(automorphisms(ctx.a(), caps)?
        .into_iter()
        .filter(|phi| preserves(phi, &alt))
        .collect())
}

/// Order bookkeeping for the sequence
/// `Witt → Witt(B, s) → Aut^syp(B, Alt s) ⋉ H⁵(B[3];ℂˣ) → Z/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub aut_syp: usize,
    pub h5: FinAbGroup,
    /// `|Aut^syp| · |H⁵|`.
    pub product: usize,
    /// Order of the computed quotient by metric classes, when supplied.
    pub computed: Option<usize>,
    /// `Some(true)` when the computed order equals the product (last map
    /// zero), `Some(false)` when it is half of it (last map onto).
    pub final_map_zero: Option<bool>,
    pub consistent: Option<bool>,
}

pub fn exact_sequence_report(
    ctx: &SyllepticContext,
    computed: Option<usize>,
    caps: &Caps,
) -> Result<ExactSequenceReport> {
    let aut_syp = symplectic_automorphisms(ctx, caps)?.len();
    let h5 = em_h5_b3(ctx.a());
    let product = aut_syp * h5.order();
    let final_map_zero = computed.and_then(|c| {
        if c == product {
            Some(true)
        } else if 2 * c == product {
            Some(false)
        } else {
            None
        }
    });
    Ok(ExactSequenceReport {
        aut_syp,
        h5,
        product,
        computed,
        consistent: computed.map(|_| final_map_zero.is_some()),
        final_map_zero,
    })
}
