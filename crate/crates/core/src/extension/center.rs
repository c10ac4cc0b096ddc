//! Automorphisms of `A ⊕ Â` induced on the center, and the symplectic check
//! against `Alt(ς)`.

use serde::Serialize;

use super::bimodule::BimoduleForm;
use crate::abelian::{FinAbGroup, GroupElement, GroupHom};
use crate::error::{Error, Result};
use crate::forms::{canonical_sigma, Bicharacter};

/// `a ↦ b(a,−)` as a map `A → Â`, with `Â` presented like the right group.
pub fn pairing_map(b: &Bicharacter) -> GroupHom {
    let right = b.right();
    let images: Vec<GroupElement> = b
        .left()
        .generators()
        .iter()
        .map(|x| {
            let c: Vec<i64> = right
                .generators()
                .iter()
                .zip(right.factors())
                .map(|(y, &n)| {
                    let v = b.eval(x, y);
                    v.num() * (n / v.den())
                })
                .collect();
            right.element(&c).expect("character coordinates")
        })
        .collect();
    GroupHom::from_images(b.left().clone(), right.clone(), &images).expect("bicharacter is bilinear")
}

/// Inverse of a bijective homomorphism.
pub fn invert(h: &GroupHom) -> Result<GroupHom> {
    let (src, tgt) = (h.source(), h.target());
    if src.order() != tgt.order() {
        return Err(Error::InvalidHom("not a bijection".into()));
    }
    let mut pre: Vec<Option<GroupElement>> = vec![None; tgt.order()];
    for x in src.elements() {
        let i = tgt.index_of(&h.apply(&x));
        if pre[i].is_some() {
            return Err(Error::InvalidHom("not injective".into()));
        }
        pre[i] = Some(x);
    }
    let images: Vec<_> = tgt
        .generators()
        .iter()
        .map(|g| pre[tgt.index_of(g)].clone().expect("bijective"))
        .collect();
    GroupHom::from_images(tgt.clone(), src.clone(), &images)
}

/// `[[p, q], [r, s]]` as an endomorphism of `A ⊕ A`.
pub fn block(a: &FinAbGroup, p: &GroupHom, q: &GroupHom, r: &GroupHom, s: &GroupHom) -> GroupHom {
    let k = a.rank();
    let m: Vec<Vec<i64>> = (0..2 * k)
        .map(|i| {
            (0..2 * k)
                .map(|j| {
                    let blk = match (i < k, j < k) {
                        (true, true) => p,
                        (true, false) => q,
                        (false, true) => r,
                        (false, false) => s,
                    };
                    blk.matrix()[i % k][j % k]
                })
                .collect()
        })
        .collect();
    GroupHom::new(a.direct_sum(a), a.direct_sum(a), m).expect("blocks are homomorphisms")
}

fn negate(h: &GroupHom) -> GroupHom {
    GroupHom::new(
        h.source().clone(),
        h.target().clone(),
        h.matrix().iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
    )
    .expect("negation")
}

/// `+1` if `m` preserves `Alt(ς)` on `A ⊕ Â`, `−1` if it reverses it, and
/// `None` otherwise. At exponent two the answer is `+1`.
pub fn alt_sign(a: &FinAbGroup, m: &GroupHom) -> Option<i8> {
    let alt = canonical_sigma(a).alt().expect("alternation");
    let gens = m.source().generators();
    let (mut plus, mut minus) = (true, true);
    for x in &gens {
        for y in &gens {
            let before = alt.eval(x, y);
            let after = alt.eval(&m.apply(x), &m.apply(y));
            plus &= after == before;
            minus &= after == -before;
        }
    }
    match (plus, minus) {
        (true, _) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterAction {
    pub matrix: GroupHom,
    pub order: usize,
    pub square_is_minus_identity: bool,
    /// How `Alt(ς)` transforms; see [`alt_sign`].
    pub alt_sign: Option<i8>,
}

impl CenterAction {
    pub fn of(a: &FinAbGroup, matrix: GroupHom) -> Self {
        let sq = matrix.compose(&matrix).expect("endomorphism");
        let minus = negate(&GroupHom::identity(&a.direct_sum(a)));
        CenterAction {
            order: matrix.endo_order(64).unwrap_or(0),
            square_is_minus_identity: sq == minus,
            alt_sign: alt_sign(a, &matrix),
            matrix,
        }
    }
}

/// The block matrix `[[0, B̂⁻¹], [B, 0]]` with `B = Bil(q)₁₂ : A → Â` and
/// `B̂ : a ↦ Bil(q)₁₂(−,a)` its dual.
pub fn induced_center_action(form: &BimoduleForm, order4_case: bool) -> Result<CenterAction> {
    if !form.is_viable() {
        return Err(Error::HypothesisViolated("Bil(q)₁₂ is degenerate".into()));
    }
    if order4_case && !form.is_order_four_type() {
        return Err(Error::HypothesisViolated(
            "order-four case needs trivial slices and antisymmetric Bil(q)₁₂".into(),
        ));
    }
    let a = form.a();
    let b = pairing_map(form.bil12());
    let b_hat = pairing_map(&form.bil12().transpose());
    let zero = GroupHom::zero(a.clone(), a.clone());
    let m = block(a, &zero, &invert(&b_hat)?, &b, &zero);
    Ok(CenterAction::of(a, m))
}

/// `(a, λ) ↦ (ι⁻¹λ, −ιa)` with `ι : A → Â` from a nondegenerate symmetric pairing.
pub fn s_matrix(a: &FinAbGroup, pairing: &Bicharacter) -> Result<GroupHom> {
    let iota = identification(a, pairing)?;
    let zero = GroupHom::zero(a.clone(), a.clone());
    Ok(block(a, &zero, &invert(&iota)?, &negate(&iota), &zero))
}

/// `(a, λ) ↦ (ι⁻¹λ, ιa)`.
pub fn swap_matrix(a: &FinAbGroup, pairing: &Bicharacter) -> Result<GroupHom> {
    let iota = identification(a, pairing)?;
    let zero = GroupHom::zero(a.clone(), a.clone());
    Ok(block(a, &zero, &invert(&iota)?, &iota, &zero))
}

fn identification(a: &FinAbGroup, pairing: &Bicharacter) -> Result<GroupHom> {
    if pairing.left() != a || pairing.right() != a {
        return Err(Error::InvalidForm("pairing lives on another group".into()));
    }
    if !pairing.is_symmetric() || !pairing.is_nondegenerate() {
        return Err(Error::InvalidForm("identification needs a nondegenerate symmetric pairing".into()));
    }
    Ok(pairing_map(pairing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::extension::{enumerate_bimodule_forms, filter_order_four, filter_order_two, filter_viable};
    use crate::forms::{pair_index, QuadraticForm};
    use crate::qz::Qz;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn s_and_swap_over_z4() {
        let a = g("Z4");
        let ev = Bicharacter::evaluation(&a);
        let s = CenterAction::of(&a, s_matrix(&a, &ev).unwrap());
        assert_eq!(s.order, 4);
        assert!(s.square_is_minus_identity);
        assert_eq!(s.alt_sign, Some(1));
        let w = CenterAction::of(&a, swap_matrix(&a, &ev).unwrap());
        assert_eq!(w.order, 2);
        assert_eq!(w.alt_sign, Some(-1));
        let w2 = CenterAction::of(&g("Z2"), swap_matrix(&g("Z2"), &Bicharacter::evaluation(&g("Z2"))).unwrap());
        assert_eq!(w2.alt_sign, Some(1));
    }

    #[test]
    fn order_two_survivors_swap() {
        let caps = Caps::default();
        let viable = filter_viable(&enumerate_bimodule_forms(&g("Z2"), &caps).unwrap());
        for f in filter_order_two(&viable) {
            let c = induced_center_action(&f, false).unwrap();
            assert_eq!(c.order, 2);
            assert_eq!(c.alt_sign, Some(1));
        }
        for f in filter_order_four(&viable) {
            let c = induced_center_action(&f, true).unwrap();
            assert!(c.square_is_minus_identity);
            assert_eq!(c.alt_sign, Some(1));
        }
        let zero = crate::extension::BimoduleForm::new(&g("Z2"), QuadraticForm::zero(&g("Z2+Z2"))).unwrap();
        assert!(matches!(induced_center_action(&zero, false), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn antisymmetric_cross_pairing_gives_order_four() {
        let a = g("Z4+Z4");
        let h = Qz::new(1, 4);
        let mut off = vec![Qz::ZERO; 6];
        off[pair_index(4, 0, 3)] = h;
        off[pair_index(4, 1, 2)] = -h;
        let q = QuadraticForm::new(a.direct_sum(&a), vec![Qz::ZERO; 4], off).unwrap();
        let f = crate::extension::BimoduleForm::new(&a, q).unwrap();
        let c = induced_center_action(&f, true).unwrap();
        assert_eq!(c.order, 4);
        assert!(c.square_is_minus_identity);
        // the block matrix reverses Alt(ς) once the exponent exceeds two
        assert_eq!(c.alt_sign, Some(-1));
    }
}
