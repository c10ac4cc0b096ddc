//! Finite abelian groups, homomorphisms and subgroup lattices.

mod group;
mod hom;
pub mod smith;
mod subgroup;
mod quotient;

pub use group::{FinAbGroup, GroupElement};
pub use hom::{automorphisms, GroupHom};
pub use quotient::{quotient, Quotient};
pub use subgroup::{enumerate_subgroups, Subgroup};

use crate::forms::Bicharacter;

/// Pontryagin dual `Â` with its evaluation pairing `ev: A × Â → ℚ/ℤ`.
///
/// Each factor `Z/n` is self-dual via `ev(x, λ) = xλ/n`.
pub fn dual_group(group: &FinAbGroup) -> (FinAbGroup, Bicharacter) {
    let ev = Bicharacter::evaluation(group);
    (group.clone(), ev)
}

/// Every abelian group of order `n` in invariant-factor form, in
/// lexicographic order of the factor lists.
pub fn abelian_groups_of_order(n: usize) -> Vec<FinAbGroup> {
    fn rec(rest: i64, min: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        // next factor must be a multiple of the previous and divide what is left
        let mut d = min;
        while d <= rest {
            if rest % d == 0 && acc.last().is_none_or(|&p| d % p == 0) {
                acc.push(d);
                rec(rest / d, d, acc, out);
                acc.pop();
            }
            d += 1;
        }
    }
    if n <= 1 {
        return vec![FinAbGroup::trivial()];
    }
    let mut out = Vec::new();
    rec(n as i64, 2, &mut Vec::new(), &mut out);
    // the remaining factors must all be divisible by the current one
    out.retain(|f| f.windows(2).all(|w| w[1] % w[0] == 0));
    out.sort();
    out.into_iter()
        .map(|f| FinAbGroup::new(f).expect("factors at least 2"))
        .collect()
}
