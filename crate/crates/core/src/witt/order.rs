use serde::{Deserialize, Serialize};

use super::graded::GradedPremetricGroup;
use super::reduction::{
    is_trivial_mod_witt, reduce_mod_witt, reduce_raw, Decision, ReductionStep, ReductionTrace,
};
use super::triviality::{is_a_trivial, is_s_invertible};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// One power `Xⁿ`, formed from the reduced `Xⁿ⁻¹` and reduced again.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerRecord {
    pub n: usize,
    pub unreduced_order: usize,
    pub steps: Vec<ReductionStep>,
    pub reduced: GradedPremetricGroup,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderReport {
    pub order: usize,
    /// Powers `1..order-1` that were not trivial.
    pub powers: Vec<PowerRecord>,
    /// Triviality trace of the final power.
    pub verdict: ReductionTrace,
}

fn require_invertible(x: &GradedPremetricGroup, caps: &Caps) -> Result<()> {
    if !is_s_invertible(x, caps)? {
        return Err(Error::NotInvertible);
    }
    Ok(())
}

/// Least `n ≥ 1` with `Xⁿ` trivial modulo metric groups.
pub fn order_mod_witt(x: &GradedPremetricGroup, caps: &Caps) -> Result<OrderReport> {
    require_invertible(x, caps)?;
    let mut cur = GradedPremetricGroup::unit(x.context());
    let mut powers = Vec::new();
    for n in 1..=caps.order {
        let prod = cur.twisted_product(x)?;
        if let Some(verdict) = is_trivial_mod_witt(&prod, caps)? {
            return Ok(OrderReport {
                order: n,
                powers,
                verdict,
            });
        }
        let (reduced, steps) = reduce_mod_witt(&prod, caps)?;
        powers.push(PowerRecord {
            n,
            unreduced_order: prod.order(),
            steps,
            reduced: reduced.clone(),
        });
        cur = reduced;
    }
    Err(Error::OrderCapExceeded { cap: caps.order })
}

/// Least `n ≥ 1` with `Xⁿ` A-trivial.
pub fn order_raw(x: &GradedPremetricGroup, caps: &Caps) -> Result<OrderReport> {
    require_invertible(x, caps)?;
    let mut cur = GradedPremetricGroup::unit(x.context());
    let mut powers = Vec::new();
    for n in 1..=caps.order {
        let prod = cur.twisted_product(x)?;
        let (reduced, steps) = reduce_raw(&prod, caps)?;
        if let Some(certificate) = is_a_trivial(&reduced, caps)? {
            return Ok(OrderReport {
                order: n,
                powers,
                verdict: ReductionTrace {
                    input: prod,
                    steps,
                    final_object: reduced,
                    certificate,
                    decided_by: Decision::Primary,
                },
            });
        }
        powers.push(PowerRecord {
            n,
            unreduced_order: prod.order(),
            steps,
            reduced: reduced.clone(),
        });
        cur = reduced;
    }
    Err(Error::OrderCapExceeded { cap: caps.order })
}

/// `[X] = [Y]`: `X ⊠ Y^{s-op}` is A-trivial (after condensation).
pub fn classes_equal(
    x: &GradedPremetricGroup,
    y: &GradedPremetricGroup,
    caps: &Caps,
) -> Result<Option<ReductionTrace>> {
    let prod = x.twisted_product(&y.s_opposite())?;
    let (reduced, steps) = reduce_raw(&prod, caps)?;
    Ok(is_a_trivial(&reduced, caps)?.map(|certificate| ReductionTrace {
        input: prod,
        steps,
        final_object: reduced,
        certificate,
        decided_by: Decision::Primary,
    }))
}

/// `[X] = [Y]` modulo metric groups.
pub fn classes_equal_mod_witt(
    x: &GradedPremetricGroup,
    y: &GradedPremetricGroup,
    caps: &Caps,
) -> Result<Option<ReductionTrace>> {
    let prod = x.twisted_product(&y.s_opposite())?;
    is_trivial_mod_witt(&prod, caps)
}
