//! Cohomology with coefficients in ℂˣ ≅ ℚ/ℤ, approximated by `(1/N)ℤ/ℤ`.
//!
//! For `d ≥ 1` the image of `H^d(G; ℤ/N) → H^d(G; ℤ/N|G|)` induced by the
//! inclusion `x ↦ |G|x` is `H^d(G; ℚ/ℤ)` as soon as `|G|` divides `N`: its
//! kernel is the Bockstein image, which is all that separates the two. The
//! periodic route computes that image literally. The bar route reads it off
//! the elementary divisors of `Δ_d` mod N, which are the torsion of
//! `coker Δ_d = H^{d+1}(G;ℤ)`, the same group by the universal coefficient
//! sequence.

use super::bar::{delta_matrix, normalized_count, primary_parts};
use super::cyclic::{periodic_pair, subquotient};
use super::gmodule::{GModule, SmallGroup};
use super::local::torsion_valuations;
use super::CohomologyGroup;
use crate::abelian::{FinAbGroup, GroupHom, Subgroup};
use crate::caps::Caps;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusMethod {
    Periodic,
    Bar,
}

/// Image of the inclusion-induced map, periodic resolution.
pub fn torus_periodic(n: usize, d: usize, big: i64, caps: &Caps) -> Result<FinAbGroup> {
    let grp = SmallGroup::cyclic(n);
    let small = GModule::trivial(grp.clone(), FinAbGroup::cyclic(big));
    let large = GModule::trivial(grp, FinAbGroup::cyclic(big * n as i64));
    let (k1, _) = periodic_pair(&small, d, caps)?;
    let (_, i2) = periodic_pair(&large, d, caps)?;
    let incl = GroupHom::new(small.module().clone(), large.module().clone(), vec![vec![n as i64]])?;
    let images: Vec<_> = k1.generators().iter().map(|x| incl.apply(x)).collect();
    let img = Subgroup::generated_by(large.module(), &images)?.join(&i2);
    Ok(subquotient(&img, &i2, caps)?.0)
}

/// Torsion of `coker Δ_d` read mod `big`, bar resolution.
pub fn torus_bar(g: &SmallGroup, d: usize, big: i64, caps: &Caps) -> Result<FinAbGroup> {
    let size = normalized_count(g.order(), d + 1);
    if size > caps.cochains {
        return Err(Error::cap("cochain coordinates", size, caps.cochains));
    }
    let mut orders = Vec::new();
    for part in primary_parts(&FinAbGroup::cyclic(big)) {
        if !(g.order() as u64).is_multiple_of(part.ring.p) {
            continue;
        }
        let m = GModule::trivial(g.clone(), FinAbGroup::cyclic(part.ring.m as i64));
        let part = primary_parts(m.module()).remove(0);
        let a = delta_matrix(&m, &part, d);
        let cols = normalized_count(g.order(), d);
        for v in torsion_valuations(&part.ring, a, cols) {
            orders.push((part.ring.p as i64).pow(v));
        }
    }
    Ok(FinAbGroup::from_orders(&orders)?.canonicalize())
}

/// `H^d(G;ℂˣ)` for `d ≥ 1`, computed at `N = |G|²` and confirmed at `N·|G|`.
pub fn cohomology_torus_with(
    g: &SmallGroup,
    d: usize,
    method: TorusMethod,
    caps: &Caps,
) -> Result<CohomologyGroup> {
    if d == 0 {
        return Err(Error::Degree(0));
    }
    let n = g.order() as i64;
    let run = |big: i64| -> Result<FinAbGroup> {
        if n == 1 {
            return Ok(FinAbGroup::trivial());
        }
        match (method, g.cyclic) {
            (TorusMethod::Periodic, Some(c)) => torus_periodic(c, d, big, caps),
            (TorusMethod::Periodic, None) => Err(Error::HypothesisViolated(
                "periodic resolution needs a cyclic group".into(),
            )),
            (TorusMethod::Bar, _) => torus_bar(g, d, big, caps),
        }
    };
    let small = n * n;
    let a = run(small)?;
    let b = run(small * n)?;
    if a != b {
        return Err(Error::StabilizationFailure {
            small: small as u64,
            large: (small * n) as u64,
        });
    }
    Ok(CohomologyGroup {
        degree: d,
        rep_orders: a.factors().to_vec(),
        group: a,
        representatives: None,
    })
}

/// Periodic route for cyclic groups, bar route otherwise.
pub fn cohomology_torus(g: &SmallGroup, d: usize, caps: &Caps) -> Result<CohomologyGroup> {
    let method = if g.cyclic.is_some() {
        TorusMethod::Periodic
    } else {
        TorusMethod::Bar
    };
    cohomology_torus_with(g, d, method, caps)
}
