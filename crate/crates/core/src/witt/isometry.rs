use super::graded::GradedPremetricGroup;
use crate::abelian::{GroupElement, GroupHom, Subgroup};

/// A grading- and form-preserving isomorphism `x → y`, if any.
pub fn graded_isometry(x: &GradedPremetricGroup, y: &GradedPremetricGroup) -> Option<GroupHom> {
    if x.context() != y.context() || x.order() != y.order() {
        return None;
    }
    let gx = x.group();
    let gy = y.group();
    let bx = x.form().bil();
    let by = y.form().bil();
    let k = gx.rank();
    let candidates: Vec<Vec<GroupElement>> = (0..k)
        .map(|i| {
            let e = gx.generator(i);
            let n = gx.factors()[i];
            let fe = x.grading().apply(&e);
            let qe = x.form().value(&e);
            gy.elements()
                .filter(|c| {
                    gy.scale(n, c).is_zero()
                        && y.grading().apply(c) == fe
                        && y.form().value(c) == qe
                })
                .collect()
        })
        .collect();
    let mut chosen: Vec<GroupElement> = Vec::with_capacity(k);
    fn rec(
        i: usize,
        chosen: &mut Vec<GroupElement>,
        candidates: &[Vec<GroupElement>],
        x: &GradedPremetricGroup,
        y: &GradedPremetricGroup,
        bx: &crate::forms::Bicharacter,
        by: &crate::forms::Bicharacter,
    ) -> bool {
        let k = candidates.len();
        if i == k {
            return Subgroup::span_size(y.group(), chosen) == y.order();
        }
        for c in &candidates[i] {
            let ok = (0..i).all(|j| {
                by.eval(c, &chosen[j]) == bx.eval(&x.group().generator(i), &x.group().generator(j))
            });
            if !ok {
                continue;
            }
            chosen.push(c.clone());
            if rec(i + 1, chosen, candidates, x, y, bx, by) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if rec(0, &mut chosen, &candidates, x, y, &bx, &by) {
        GroupHom::from_images(gx.clone(), gy.clone(), &chosen).ok()
    } else {
        None
    }
}
