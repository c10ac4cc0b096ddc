use serde::Serialize;

use crate::abelian::FinAbGroup;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::forms::{bil12, enumerate_quadratic_forms, Bicharacter, QuadraticForm};
use crate::qz::Qz;

/// A quadratic form on `A ⊕ A` with its two slices and cross pairing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BimoduleForm {
    a: FinAbGroup,
    q: QuadraticForm,
    q1: QuadraticForm,
    q2: QuadraticForm,
    bil12: Bicharacter,
}

impl BimoduleForm {
    pub fn new(a: &FinAbGroup, q: QuadraticForm) -> Result<Self> {
        if q.group() != &a.direct_sum(a) {
            return Err(Error::NotAProduct);
        }
        let k = a.rank();
        let inl = crate::abelian::GroupHom::new(
            a.clone(),
            q.group().clone(),
            (0..2 * k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect(),
        )?;
        let inr = crate::abelian::GroupHom::new(
            a.clone(),
            q.group().clone(),
            (0..2 * k).map(|i| (0..k).map(|j| i64::from(i == j + k)).collect()).collect(),
        )?;
        Ok(BimoduleForm {
            a: a.clone(),
            q1: q.pullback(&inl)?,
            q2: q.pullback(&inr)?,
            bil12: bil12(&q)?,
            q,
        })
    }

    pub fn a(&self) -> &FinAbGroup {
        &self.a
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.q
    }

    /// `a ↦ q(a,0)`.
    pub fn q1(&self) -> &QuadraticForm {
        &self.q1
    }

    /// `b ↦ q(0,b)`.
    pub fn q2(&self) -> &QuadraticForm {
        &self.q2
    }

    pub fn bil12(&self) -> &Bicharacter {
        &self.bil12
    }

    /// `q(a,b)` for `a, b ∈ A`.
    pub fn value(&self, a: &[i64], b: &[i64]) -> Qz {
        let mut c = a.to_vec();
        c.extend_from_slice(b);
        self.q.value(&self.q.group().element(&c).expect("coordinates"))
    }

    /// `a ↦ Bil(q)₁₂(a,−)` is an isomorphism `A → Â`.
    pub fn is_viable(&self) -> bool {
        self.bil12.is_nondegenerate()
    }

    /// `q(a,b) = q(b,a)` throughout.
    pub fn is_symmetric(&self) -> bool {
        let els: Vec<_> = self.a.elements().collect();
        els.iter().all(|x| {
            els.iter()
                .all(|y| self.value(x.coords(), y.coords()) == self.value(y.coords(), x.coords()))
        })
    }

    /// Both slices vanish and the cross pairing is antisymmetric and nondegenerate.
    pub fn is_order_four_type(&self) -> bool {
        self.q1 == QuadraticForm::zero(&self.a)
            && self.q2 == QuadraticForm::zero(&self.a)
            && self.bil12 == self.bil12.transpose().negate()
            && self.bil12.is_nondegenerate()
    }
}

/// Every quadratic form on `A ⊕ A`, in enumeration order.
pub fn enumerate_bimodule_forms(a: &FinAbGroup, caps: &Caps) -> Result<Vec<BimoduleForm>> {
    let b = a.direct_sum(a);
    if b.order() > caps.group_order {
        return Err(Error::cap("group order", b.order(), caps.group_order));
    }
    enumerate_quadratic_forms(&b, caps)?
        .into_iter()
        .map(|q| BimoduleForm::new(a, q))
        .collect()
}

pub fn filter_viable(forms: &[BimoduleForm]) -> Vec<BimoduleForm> {
    forms.iter().filter(|f| f.is_viable()).cloned().collect()
}

/// Symmetric viable forms. Whether the stacked braided category has Witt
/// order at most two is the caller's declaration and not checked here.
pub fn filter_order_two(viable: &[BimoduleForm]) -> Vec<BimoduleForm> {
    viable.iter().filter(|f| f.is_symmetric()).cloned().collect()
}

pub fn filter_order_four(viable: &[BimoduleForm]) -> Vec<BimoduleForm> {
    viable.iter().filter(|f| f.is_order_four_type()).cloned().collect()
}
