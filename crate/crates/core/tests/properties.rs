//! Randomized invariants over small groups, forms and graded objects.

use proptest::prelude::*;
use tycat_core::forms::gen_value_bound;
use tycat_core::io::{from_json, to_json};
use tycat_core::witt::{
    is_s_invertible, is_trivial_mod_witt, order_mod_witt, GradedPremetricGroup, SyllepticContext,
};
use tycat_core::{Caps, FinAbGroup, GroupElement, GroupHom, QuadraticForm, Qz, Subgroup};

const GROUPS: &[&str] = &["Z2", "Z3", "Z4", "Z2+Z2", "Z2+Z4", "Z6", "Z8", "Z4+Z4"];

fn group() -> impl Strategy<Value = FinAbGroup> {
    prop::sample::select(GROUPS).prop_map(|s| s.parse().unwrap())
}

/// Raw numerators; reduced against the right denominators in `build_form`.
fn form_on(g: FinAbGroup) -> impl Strategy<Value = QuadraticForm> {
    let k = g.rank();
    (
        prop::collection::vec(0i64..64, k),
        prop::collection::vec(0i64..64, k * k.saturating_sub(1) / 2),
    )
        .prop_map(move |(gen, off)| build_form(&g, &gen, &off))
}

fn build_form(g: &FinAbGroup, gen: &[i64], off: &[i64]) -> QuadraticForm {
    let n = g.factors();
    let gen = n
        .iter()
        .zip(gen)
        .map(|(&m, &v)| {
            let d = gen_value_bound(m);
            Qz::new(v % d, d)
        })
        .collect();
    let mut offs = Vec::new();
    let mut p = 0;
    for i in 0..n.len() {
        for j in i + 1..n.len() {
            let d = num_gcd(n[i], n[j]);
            offs.push(Qz::new(off[p] % d, d));
            p += 1;
        }
    }
    QuadraticForm::new(g.clone(), gen, offs).unwrap()
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn group_and_form() -> impl Strategy<Value = QuadraticForm> {
    group().prop_flat_map(form_on)
}

/// A graded object over the Klein context; odd factors grade to zero.
fn graded() -> impl Strategy<Value = GradedPremetricGroup> {
    let small: &[&str] = &["Z2", "Z4", "Z2+Z2", "Z3", "Z6"];
    prop::sample::select(small)
        .prop_map(|s| s.parse::<FinAbGroup>().unwrap())
        .prop_flat_map(|g| {
            let k = g.rank();
            (form_on(g.clone()), prop::collection::vec(0usize..4, k), Just(g))
        })
        .prop_map(|(q, degs, g)| {
            let ctx = SyllepticContext::klein();
            let a = ctx.a().clone();
            let images: Vec<GroupElement> = g
                .factors()
                .iter()
                .zip(&degs)
                .map(|(&n, &d)| if n % 2 == 0 { a.element_at(d) } else { a.zero() })
                .collect();
            let f = GroupHom::from_images(g.clone(), a, &images).unwrap();
            GradedPremetricGroup::new(ctx, f, q).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_is_quadratic(q in group_and_form(), k in -5i64..6) {
        let g = q.group().clone();
        for x in g.elements() {
            let kx = g.scale(k, &x);
            prop_assert_eq!(q.value(&kx), q.value(&x).mul_int(k * k));
        }
    }

    #[test]
    fn polarization_is_bilinear(q in group_and_form()) {
        let g = q.group().clone();
        let b = q.bil();
        for x in g.elements() {
            for y in g.elements() {
                let xy = g.add(&x, &y);
                prop_assert_eq!(q.value(&xy) - q.value(&x) - q.value(&y), b.eval(&x, &y));
                prop_assert_eq!(b.eval(&x, &y), b.eval(&y, &x));
            }
        }
    }

    #[test]
    fn gauss_sums_multiply(q in group_and_form(), r in group_and_form()) {
        let s = q.direct_sum(&r).gauss_sum();
        let p = q.gauss_sum() * r.gauss_sum();
        prop_assert!((s - p).norm() < 1e-9, "{s} vs {p}");
    }

    #[test]
    fn generated_subgroups_divide(g in group(), picks in prop::collection::vec(0usize..64, 0..3)) {
        let gens: Vec<GroupElement> = picks.iter().map(|&i| g.element_at(i % g.order())).collect();
        let h = Subgroup::generated_by(&g, &gens).unwrap();
        prop_assert_eq!(g.order() % h.order(), 0);
        for x in &gens {
            prop_assert!(h.contains(x));
        }
    }

    #[test]
    fn twisted_product_associates(x in graded(), y in graded(), z in graded()) {
        let l = x.twisted_product(&y).unwrap().twisted_product(&z).unwrap();
        let r = x.twisted_product(&y.twisted_product(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn objects_round_trip_through_json(x in graded()) {
        let back: GradedPremetricGroup = from_json(&to_json(&x)).unwrap();
        prop_assert_eq!(back, x);
    }

    /// Nondegenerate is not enough for invertibility here; given a right
    /// inverse, the opposite is also a left inverse and has the same order.
    #[test]
    fn opposite_is_a_two_sided_inverse(x in graded()) {
        let caps = Caps::default();
        prop_assume!(is_s_invertible(&x, &caps).unwrap());
        let op = x.s_opposite();
        let left = op.twisted_product(&x).unwrap();
        prop_assert!(is_trivial_mod_witt(&left, &caps).unwrap().is_some());
        if let Ok(r) = order_mod_witt(&x, &caps) {
            prop_assert_eq!(order_mod_witt(&op, &caps).unwrap().order, r.order);
        }
    }
}
