use super::presets::*;
use super::*;
use crate::abelian::{GroupHom, Subgroup};
use crate::caps::Caps;
use crate::error::Error;
use crate::forms::QuadraticForm;
use crate::qz::Qz;

fn q(n: i64, d: i64) -> Qz {
    Qz::new(n, d)
}

fn value(x: &GradedPremetricGroup, c: &[i64]) -> Qz {
    x.form().value(&x.group().element(c).unwrap())
}

fn span(x: &GradedPremetricGroup, gens: &[&[i64]]) -> Subgroup {
    let els: Vec<_> = gens.iter().map(|c| x.group().element(c).unwrap()).collect();
    Subgroup::generated_by(x.group(), &els).unwrap()
}

#[test]
fn products_match_worked_values() {
    let a = semion_a(false);
    let b = semion_b(false);
    let aa = a.twisted_product(&a).unwrap();
    assert_eq!(value(&aa, &[1, 0]), q(1, 4));
    assert_eq!(value(&aa, &[0, 1]), q(1, 4));
    assert_eq!(value(&aa, &[1, 1]), Qz::HALF);
    let ab = a.twisted_product(&b).unwrap();
    assert_eq!(value(&ab, &[1, 1]), Qz::ZERO);
    let unit = GradedPremetricGroup::unit(a.context());
    assert_eq!(a.twisted_product(&unit).unwrap(), a);
    assert_eq!(unit.twisted_product(&a).unwrap(), a);
}

#[test]
fn a2b_values() {
    let x = &preset("a2b").unwrap()[0];
    let expect = [
        ([1, 0, 0], q(1, 4)),
        ([0, 1, 0], q(1, 4)),
        ([0, 0, 1], q(1, 4)),
        ([1, 1, 0], Qz::HALF),
        ([1, 0, 1], Qz::ZERO),
        ([0, 1, 1], Qz::ZERO),
        ([1, 1, 1], q(3, 4)),
    ];
    for (c, v) in expect {
        assert_eq!(value(x, &c), v, "{c:?}");
    }
}

#[test]
fn context_mismatch_rejected() {
    let a = semion_a(false);
    let other = GradedPremetricGroup::unit(&SyllepticContext::untwisted(a.context().a().clone()));
    assert_eq!(a.twisted_product(&other), Err(Error::ContextMismatch));
}

#[test]
fn opposites() {
    assert_eq!(value(&semion_a(false).s_opposite(), &[1]), q(3, 4));
    assert_eq!(value(&element_c(false).s_opposite(), &[1]), Qz::HALF);
    let c = metric_c();
    assert_eq!(c.s_opposite().form(), &c.form().negate());
    // s(x,x) has order ≤ 2 here, so the opposite is an involution
    for name in ["a", "b", "c", "ab", "a2b"] {
        let x = &preset(name).unwrap()[0];
        assert_eq!(&x.s_opposite().s_opposite(), x);
    }
}

#[test]
fn a_trivial_examples() {
    let caps = Caps::default();
    let a = semion_a(false);
    let p = a.twisted_product(&a.s_opposite()).unwrap();
    let cert = is_a_trivial(&p, &caps).unwrap().unwrap();
    assert_eq!(cert.lagrangian.elements(), span(&p, &[&[1, 1]]).elements());
    assert!(is_a_trivial(&metric_c(), &caps).unwrap().is_none());
    let unit = GradedPremetricGroup::unit(a.context());
    assert!(is_a_trivial(&unit, &caps).unwrap().is_some());
}

#[test]
fn invertibility() {
    let caps = Caps::default();
    assert!(is_s_invertible(&semion_a(false), &caps).unwrap());
    let zero = GradedPremetricGroup::new(
        SyllepticContext::klein(),
        semion_a(false).grading().clone(),
        QuadraticForm::zero(&"Z2".parse().unwrap()),
    )
    .unwrap();
    assert!(!is_s_invertible(&zero, &caps).unwrap());
    assert!(is_s_invertible(&GradedPremetricGroup::unit(&SyllepticContext::klein()), &caps).unwrap());
    for name in ["a", "a-", "b", "b-", "c", "c-", "ab", "a2b"] {
        assert!(is_s_invertible(&preset(name).unwrap()[0], &caps).unwrap(), "{name}");
    }
}

#[test]
fn split_of_a_fourth_power() {
    let caps = Caps::default();
    let a4 = semion_a(false).power(4).unwrap();
    let h = span(&a4, &[&[1, 1, 0, 0], &[0, 1, 1, 0]]);
    let (metric, rest) = split_metric(&a4, &h, &caps).unwrap();
    let grp = metric.group().clone();
    let vals: Vec<Qz> = grp.elements().skip(1).map(|x| metric.form().value(&x)).collect();
    assert_eq!(vals, vec![Qz::HALF; 3]);
    assert_eq!(rest.order(), 4);
    let (m, r) = split_metric(&a4, &Subgroup::trivial(a4.group()), &caps).unwrap();
    assert!(m.group().is_trivial());
    assert_eq!(r.order(), a4.order());
    // not in the kernel
    let bad = span(&a4, &[&[1, 0, 0, 0]]);
    assert_eq!(split_metric(&a4, &bad, &caps).unwrap_err(), Error::NotInKernel);
    // isotropic, so degenerate
    let iso = span(&a4, &[&[1, 1, 1, 1]]);
    assert_eq!(split_metric(&a4, &iso, &caps).unwrap_err(), Error::DegenerateRestriction);
}

#[test]
fn split_of_a2b_square() {
    let caps = Caps::default();
    let x = preset("a2b").unwrap()[0].power(2).unwrap();
    assert_eq!(value(&x, &[0, 1, 0, 0, 1, 0]), Qz::HALF);
    assert_eq!(value(&x, &[0, 0, 1, 0, 0, 1]), Qz::HALF);
    let h = span(&x, &[&[0, 1, 0, 0, 1, 0], &[0, 0, 1, 0, 0, 1]]);
    let (metric, _) = split_metric(&x, &h, &caps).unwrap();
    assert_eq!(metric.group().order(), 4);
}

#[test]
fn ab_square_complement() {
    let caps = Caps::default();
    let ab = &preset("ab").unwrap()[0];
    let sq = ab.power(2).unwrap();
    let zero_part = span(&sq, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
    for c in [[1, 0, 1, 0], [0, 1, 0, 1], [1, 1, 1, 1]] {
        assert_eq!(value(&sq, &c), Qz::HALF);
    }
    let perp = sq.form().bil().orthogonal_complement(&zero_part);
    let has = |c: &[i64]| perp.contains(&sq.group().element(c).unwrap());
    assert!(has(&[1, 1, 0, 1]) && has(&[1, 0, 1, 1]) && has(&[0, 1, 1, 0]));
    // (0,1,1,1) pairs to 1/2 with (0,1,0,1), so it sits outside
    assert!(!has(&[0, 1, 1, 1]) && !has(&[1, 1, 1, 0]));
    assert_eq!(value(&sq, &[1, 1, 0, 1]), q(3, 4));
    assert_eq!(value(&sq, &[1, 0, 1, 1]), q(3, 4));
    let (_, rest) = split_metric(&sq, &zero_part, &caps).unwrap();
    let ctx = SyllepticContext::klein();
    let g: crate::abelian::FinAbGroup = "Z2+Z2".parse().unwrap();
    let expected = GradedPremetricGroup::new(
        ctx.clone(),
        GroupHom::identity(&g),
        QuadraticForm::new(g.clone(), vec![q(3, 4), q(3, 4)], vec![Qz::ZERO]).unwrap(),
    )
    .unwrap();
    assert_eq!(value(&expected, &[1, 1]), Qz::HALF);
    assert!(graded_isometry(&rest, &expected).is_some());
}

#[test]
fn condensation() {
    let caps = Caps::default();
    let a = semion_a(false);
    let p = a.twisted_product(&a.s_opposite()).unwrap();
    let l = span(&p, &[&[1, 1]]);
    let c = condense(&p, &l, &caps).unwrap();
    assert!(c.group().is_trivial());
    assert_eq!(condense(&p, &Subgroup::trivial(p.group()), &caps).unwrap(), p);
    let not_iso = span(&p, &[&[1, 0]]);
    assert!(condense(&p, &not_iso, &caps).is_err());
    let c_metric = metric_c();
    let h = span(&c_metric, &[&[1, 0]]);
    assert_eq!(condense(&c_metric, &h, &caps).unwrap_err(), Error::NotIsotropic);
}

#[test]
fn condensation_preserves_gauss_sum() {
    let caps = Caps::default();
    let x = semion_a(false).power(4).unwrap();
    let h = span(&x, &[&[1, 1, 1, 1]]);
    let c = condense(&x, &h, &caps).unwrap();
    assert_eq!(c.order() * h.order() * h.order(), x.order());
    assert!((c.gauss_sum() - x.gauss_sum()).norm() < 1e-9);
}

#[test]
fn mod_witt_verdicts() {
    let caps = Caps::default();
    let a4 = semion_a(false).power(4).unwrap();
    let trace = is_trivial_mod_witt(&a4, &caps).unwrap().unwrap();
    trace.verify(&caps).unwrap();
    let residues = trace.residues();
    assert_eq!(residues.len(), 1);
    let (m, s) = residues[0];
    let vals: Vec<Qz> = m.group().elements().skip(1).map(|x| m.form().value(&x)).collect();
    assert_eq!(vals, vec![Qz::HALF; 3]);
    assert!((s.re + 1.0).abs() < 1e-9);
    let ab3 = preset("ab").unwrap()[0].power(3).unwrap();
    is_trivial_mod_witt(&ab3, &caps).unwrap().unwrap().verify(&caps).unwrap();
    assert!(is_trivial_mod_witt(&semion_a(false), &caps).unwrap().is_none());
}

#[test]
fn direct_search_agrees_with_reduction() {
    let caps = Caps::default();
    let gens = [semion_a(false), semion_b(false), element_c(false), element_c(true)];
    let mut words = vec![GradedPremetricGroup::unit(&SyllepticContext::klein())];
    for _ in 0..3 {
        let mut next = Vec::new();
        for w in &words {
            for g in &gens {
                next.push(w.twisted_product(g).unwrap());
            }
        }
        for w in &next {
            let direct = split_then_lagrangian(w, &caps).unwrap().is_some();
            let reduced = is_trivial_mod_witt(w, &caps).unwrap().is_some();
            assert_eq!(direct, reduced, "{w:?}");
        }
        words = next;
    }
}

#[test]
fn element_orders() {
    let caps = Caps::default();
    for (name, m, raw) in [
        ("a", 4, 8),
        ("a-", 4, 8),
        ("b", 4, 8),
        ("c", 4, 8),
        ("c-", 4, 8),
        ("ab", 3, 6),
        ("a2b", 2, 0),
    ] {
        let x = &preset(name).unwrap()[0];
        let r = order_mod_witt(x, &caps).unwrap();
        assert_eq!(r.order, m, "{name}");
        r.verdict.verify(&caps).unwrap();
        if raw > 0 {
            assert_eq!(order_raw(x, &caps).unwrap().order, raw, "{name} raw");
        }
    }
}

#[test]
fn class_equality() {
    let caps = Caps::default();
    let a = semion_a(false);
    assert!(classes_equal(&a, &a, &caps).unwrap().is_some());
    let a2 = a.power(2).unwrap();
    let b2 = semion_b(false).power(2).unwrap();
    assert!(classes_equal_mod_witt(&a2, &b2, &caps).unwrap().is_none());
    let a4 = a.power(4).unwrap();
    let unit = GradedPremetricGroup::unit(a.context());
    assert!(classes_equal_mod_witt(&a4, &unit, &caps).unwrap().is_some());
}

#[test]
fn s4_closure() {
    let caps = Caps::default();
    let ctx = SyllepticContext::klein();
    let gs = group_structure(&ctx, &preset("ab-generators").unwrap(), &caps).unwrap();
    assert_eq!(gs.fingerprint.order, 24);
    let h: Vec<(usize, usize)> = gs.fingerprint.histogram.iter().map(|(&a, &b)| (a, b)).collect();
    assert_eq!(h, vec![(1, 1), (2, 9), (3, 8), (4, 6)]);
    assert_eq!(gs.label, "S4");
    assert!(gs.table.is_group());
    let single = group_structure(&ctx, &[semion_a(false)], &caps).unwrap();
    assert_eq!(single.label, "Z4");
    let empty = group_structure(&ctx, &[], &caps).unwrap();
    assert_eq!(empty.fingerprint.order, 1);
}

#[test]
fn symplectic_counts() {
    let caps = Caps::default();
    let ctx = SyllepticContext::klein();
    assert_eq!(symplectic_automorphisms(&ctx, &caps).unwrap().len(), 6);
    let plain = SyllepticContext::untwisted(ctx.a().clone());
    assert_eq!(symplectic_automorphisms(&plain, &caps).unwrap().len(), 6);
    let r = exact_sequence_report(&ctx, Some(24), &caps).unwrap();
    assert_eq!(r.product, 24);
    assert_eq!(r.final_map_zero, Some(true));
    let t = SyllepticContext::untwisted(crate::abelian::FinAbGroup::trivial());
    assert_eq!(exact_sequence_report(&t, Some(1), &caps).unwrap().product, 1);
}
