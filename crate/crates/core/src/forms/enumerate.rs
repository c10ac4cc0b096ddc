use num_integer::Integer;

use super::quadratic::{gen_value_bound, pair_index, QuadraticForm};
use super::{AlternatingForm, Bicharacter};
use crate::abelian::FinAbGroup;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::qz::Qz;

/// `|Quad(B)| = Π nᵢ·gcd(2,nᵢ) · Π_{i<j} gcd(nᵢ,nⱼ)`, which is `|H⁴(B[2];ℂˣ)|`.
pub fn quadratic_form_count(b: &FinAbGroup) -> usize {
    let n = b.factors();
    let mut c: usize = n.iter().map(|&x| gen_value_bound(x) as usize).product();
    for i in 0..n.len() {
        for j in i + 1..n.len() {
            c *= n[i].gcd(&n[j]) as usize;
        }
    }
    c
}

fn odometer(radices: &[i64], mut visit: impl FnMut(&[i64])) {
    let mut digits = vec![0i64; radices.len()];
    loop {
        visit(&digits);
        let mut j = radices.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            digits[j] += 1;
            if digits[j] < radices[j] {
                break;
            }
            digits[j] = 0;
        }
    }
}

/// Every quadratic form on `b` once, lexicographic in the stored values.
pub fn enumerate_quadratic_forms(b: &FinAbGroup, caps: &Caps) -> Result<Vec<QuadraticForm>> {
    caps.check_group(b)?;
    let total = quadratic_form_count(b);
    if total > caps.forms {
        return Err(Error::cap("quadratic form enumeration", total, caps.forms));
    }
    let n = b.factors();
    let k = n.len();
    let mut radices: Vec<i64> = n.iter().map(|&x| gen_value_bound(x)).collect();
    for i in 0..k {
        for j in i + 1..k {
            radices.push(n[i].gcd(&n[j]));
        }
    }
    let mut out = Vec::with_capacity(total);
    odometer(&radices, |d| {
        let gen = (0..k).map(|i| Qz::new(d[i], radices[i])).collect();
        let off = (k..radices.len()).map(|i| Qz::new(d[i], radices[i])).collect();
        out.push(QuadraticForm::new(b.clone(), gen, off).expect("enumerated values respect bounds"));
    });
    Ok(out)
}

/// Nondegenerate forms on every group of order `2..=bound`, smallest groups
/// first.
pub fn metric_candidates(bound: usize, caps: &Caps) -> Result<Vec<QuadraticForm>> {
    let mut out = Vec::new();
    for n in 2..=bound {
        for g in crate::abelian::abelian_groups_of_order(n) {
            out.extend(
                enumerate_quadratic_forms(&g, caps)?
                    .into_iter()
                    .filter(|q| q.is_nondegenerate()),
            );
        }
    }
    Ok(out)
}

/// Every alternating bicharacter on `b` (the group `Λ̂²B`).
pub fn enumerate_alternating_forms(b: &FinAbGroup, caps: &Caps) -> Result<Vec<AlternatingForm>> {
    caps.check_group(b)?;
    let n = b.factors();
    let k = n.len();
    let radices: Vec<i64> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| n[i].gcd(&n[j])))
        .collect();
    let total: usize = radices.iter().map(|&r| r as usize).product();
    if total > caps.forms {
        return Err(Error::cap("alternating form enumeration", total, caps.forms));
    }
    let mut out = Vec::with_capacity(total);
    odometer(&radices, |d| {
        let mut m = vec![vec![Qz::ZERO; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let p = pair_index(k, i, j);
                m[i][j] = Qz::new(d[p], radices[p]);
                m[j][i] = -m[i][j];
            }
        }
        let bc = Bicharacter::on(b, m).expect("gcd-bounded entries");
        out.push(AlternatingForm::new(bc).expect("antisymmetric with zero diagonal"));
    });
    Ok(out)
}

/// `Â₂`, the characters of order dividing 2.
pub fn two_torsion_characters(b: &FinAbGroup) -> FinAbGroup {
    let twos = b.factors().iter().filter(|&&n| n % 2 == 0).count();
    FinAbGroup::new(vec![2; twos]).expect("factors of 2")
}

/// `|H⁶(B[3];ℂˣ)| = |Â₂| · |Λ̂²B|`.
pub fn h6_b3_order(b: &FinAbGroup) -> usize {
    let n = b.factors();
    let mut lam = 1usize;
    for i in 0..n.len() {
        for j in i + 1..n.len() {
            lam *= n[i].gcd(&n[j]) as usize;
        }
    }
    two_torsion_characters(b).order() * lam
}

/// `H⁵(B[3];ℂˣ)`, computed as `Hom(B/2B, ℂˣ) ≅ B/2B`.
pub fn em_h5_b3(b: &FinAbGroup) -> FinAbGroup {
    two_torsion_characters(b)
}

/// The pairing `ς((a₁,λ₁),(a₂,λ₂)) = ev(a₂,λ₁)` on `A ⊕ Â`, whose
/// alternation is `ev(a₂,λ₁) − ev(a₁,λ₂)`.
pub fn canonical_sigma(a: &FinAbGroup) -> Bicharacter {
    let k = a.rank();
    let g = a.direct_sum(a);
    let mut m = vec![vec![Qz::ZERO; 2 * k]; 2 * k];
    for i in 0..k {
        m[k + i][i] = Qz::new(1, a.factors()[i]);
    }
    Bicharacter::on(&g, m).expect("evaluation entries")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn form_counts() {
        let caps = Caps::default();
        assert_eq!(enumerate_quadratic_forms(&g("Z2"), &caps).unwrap().len(), 4);
        assert_eq!(enumerate_quadratic_forms(&g("Z2+Z2"), &caps).unwrap().len(), 32);
        assert_eq!(enumerate_quadratic_forms(&g("0"), &caps).unwrap().len(), 1);
        assert_eq!(enumerate_quadratic_forms(&g("Z3"), &caps).unwrap().len(), 3);
        assert_eq!(enumerate_quadratic_forms(&g("Z4"), &caps).unwrap().len(), 8);
        let values: Vec<Qz> = enumerate_quadratic_forms(&g("Z2"), &caps)
            .unwrap()
            .iter()
            .map(|q| q.gen_values()[0])
            .collect();
        assert_eq!(values, vec![Qz::ZERO, Qz::new(1, 4), Qz::HALF, Qz::new(3, 4)]);
    }

    /// Independent oracle: functions G → ℚ/ℤ (values in (1/2N)ℤ/ℤ) with
    /// q(−x)=q(x), bilinear polarization, and q(nx)=n²q(x).
    fn brute_quadratic_count(grp: &FinAbGroup) -> usize {
        let n = grp.order();
        let level = 2 * grp.exponent();
        let els: Vec<_> = grp.elements().collect();
        let mut count = 0;
        let mut vals = vec![0i64; n];
        fn rec(
            pos: usize,
            vals: &mut Vec<i64>,
            level: i64,
            grp: &FinAbGroup,
            els: &[crate::abelian::GroupElement],
            count: &mut usize,
        ) {
            if pos == vals.len() {
                let q = |i: usize| Qz::new(vals[i], level);
                if !q(0).is_zero() {
                    return;
                }
                for (i, x) in els.iter().enumerate() {
                    if q(grp.index_of(&grp.neg(x))) != q(i) {
                        return;
                    }
                    for (j, y) in els.iter().enumerate() {
                        let bxy = |z: &crate::abelian::GroupElement| {
                            q(grp.index_of(&grp.add(x, z))) - q(i) - q(grp.index_of(z))
                        };
                        let lhs = bxy(&grp.add(y, y));
                        let _ = j;
                        if lhs != bxy(y) + bxy(y) {
                            return;
                        }
                        for z in els {
                            if bxy(&grp.add(y, z)) != bxy(y) + bxy(z) {
                                return;
                            }
                        }
                    }
                }
                *count += 1;
                return;
            }
            for v in 0..level {
                vals[pos] = v;
                rec(pos + 1, vals, level, grp, els, count);
            }
        }
        rec(0, &mut vals, level, grp, &els, &mut count);
        count
    }

    #[test]
    fn counts_match_function_search() {
        let caps = Caps::default();
        for s in ["Z2", "Z3", "Z4", "Z2+Z2"] {
            let grp = g(s);
            assert_eq!(
                enumerate_quadratic_forms(&grp, &caps).unwrap().len(),
                brute_quadratic_count(&grp),
                "{s}"
            );
        }
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let caps = Caps::default();
        let grp = g("Z2+Z4");
        let forms = enumerate_quadratic_forms(&grp, &caps).unwrap();
        let tables: HashSet<Vec<Qz>> = forms
            .iter()
            .map(|q| grp.elements().map(|x| q.value(&x)).collect())
            .collect();
        assert_eq!(tables.len(), forms.len());
        assert_eq!(forms.len(), quadratic_form_count(&grp));
    }

    #[test]
    fn em_closed_forms() {
        let caps = Caps::default();
        assert_eq!(enumerate_alternating_forms(&g("Z2"), &caps).unwrap().len(), 1);
        assert_eq!(two_torsion_characters(&g("Z2")), g("Z2"));
        assert_eq!(h6_b3_order(&g("Z2")), 2);
        assert_eq!(enumerate_alternating_forms(&g("Z2+Z2"), &caps).unwrap().len(), 2);
        assert_eq!(two_torsion_characters(&g("Z2+Z2")).order(), 4);
        assert_eq!(h6_b3_order(&g("Z2+Z2")), 8);
        assert_eq!(h6_b3_order(&g("Z3")), 1);
        assert_eq!(em_h5_b3(&g("Z2+Z2")), g("Z2+Z2"));
        assert!(em_h5_b3(&g("Z3")).is_trivial());
        assert_eq!(em_h5_b3(&g("Z4")), g("Z2"));
    }

    #[test]
    fn sigma_alternation() {
        let z2 = g("Z2");
        let s = canonical_sigma(&z2);
        let alt = s.alt().unwrap();
        let v = s.left().clone();
        let x = v.element(&[1, 0]).unwrap();
        let y = v.element(&[0, 1]).unwrap();
        assert_eq!(alt.eval(&x, &y), Qz::HALF);
        let z4 = g("Z4+Z2");
        let s = canonical_sigma(&z4);
        let alt = s.alt().unwrap();
        let ev = Bicharacter::evaluation(&z4);
        let big = s.left().clone();
        for p in big.elements() {
            for r in big.elements() {
                let (a1, l1) = p.coords().split_at(2);
                let (a2, l2) = r.coords().split_at(2);
                let e = |a: &[i64], l: &[i64]| {
                    ev.eval(&z4.element(a).unwrap(), &z4.element(l).unwrap())
                };
                assert_eq!(alt.eval(&p, &r), e(a2, l1) - e(a1, l2));
            }
        }
    }
}
