//! Cohomology of ℤ/n from the two-periodic resolution: with σ the generator
//! action, `T = σ − 1` and `N = Σ σⁱ`,
//! `H⁰ = ker T`, `H^{2k} = ker T / im N`, `H^{2k+1} = ker N / im T`.

use super::gmodule::GModule;
use super::{CohomologyGroup, Representatives};
use crate::abelian::{quotient, FinAbGroup, GroupElement, GroupHom, Subgroup};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Structure of `k / i` for `i ⊆ k`, with one lift per invariant factor.
pub(crate) fn subquotient(
    k: &Subgroup,
    i: &Subgroup,
    caps: &Caps,
) -> Result<(FinAbGroup, Vec<GroupElement>)> {
    let parent = k.parent();
    let e = k.embedding();
    let proj = quotient(parent, i, caps)?.projection;
    let phi = proj.compose(&e)?;
    let q = quotient(e.source(), &phi.kernel(caps)?, caps)?;
    let reps = q
        .group
        .generators()
        .iter()
        .map(|g| e.apply(&q.lift(g)))
        .collect();
    Ok((q.group, reps))
}

/// `(σ − 1, Σ σⁱ)` for a module over a cyclic group.
pub fn periodic_operators(m: &GModule) -> Result<(GroupHom, GroupHom)> {
    let n = m
        .group()
        .cyclic
        .ok_or_else(|| Error::ActionInvalid("group is not presented as cyclic".into()))?;
    let module = m.module();
    let id = GroupHom::identity(module);
    let sigma = if n == 1 { id.clone() } else { m.generator_action()[0].clone() };
    let minus = GroupHom::new(
        module.clone(),
        module.clone(),
        id.matrix().iter().map(|r| r.iter().map(|x| -x).collect()).collect(),
    )?;
    let t = sigma.add(&minus)?;
    let mut norm = GroupHom::zero(module.clone(), module.clone());
    let mut power = id;
    for _ in 0..n {
        norm = norm.add(&power)?;
        power = sigma.compose(&power)?;
    }
    Ok((t, norm))
}

/// The pair `(cycles, boundaries)` whose quotient is `H^d`.
pub(crate) fn periodic_pair(m: &GModule, d: usize, caps: &Caps) -> Result<(Subgroup, Subgroup)> {
    let (t, norm) = periodic_operators(m)?;
    Ok(match d {
        0 => (t.kernel(caps)?, Subgroup::trivial(m.module())),
        _ if d.is_multiple_of(2) => (t.kernel(caps)?, norm.image(caps)?),
        _ => (norm.kernel(caps)?, t.image(caps)?),
    })
}

/// `H^d(ℤ/n; M)` with representatives in `M` (the periodic cochains).
pub fn cohomology_cyclic(m: &GModule, d: usize, caps: &Caps) -> Result<CohomologyGroup> {
    caps.check_group(m.module())?;
    let (k, i) = periodic_pair(m, d, caps)?;
    let (group, reps) = subquotient(&k, &i, caps)?;
    Ok(CohomologyGroup {
        degree: d,
        rep_orders: group.factors().to_vec(),
        group,
        representatives: Some(Representatives::Periodic(reps)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::SmallGroup;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn operators_compose_to_zero() {
        for (n, lit) in [(2, "Z2+Z2:swap"), (4, "Z4+Z4:S"), (3, "Z9"), (2, "Z4:neg")] {
            let m = GModule::parse(&SmallGroup::cyclic(n), lit).unwrap();
            let (t, norm) = periodic_operators(&m).unwrap();
            let zero = GroupHom::zero(m.module().clone(), m.module().clone());
            assert_eq!(t.compose(&norm).unwrap(), zero);
            assert_eq!(norm.compose(&t).unwrap(), zero);
        }
    }

    #[test]
    fn known_groups() {
        let caps = Caps::default();
        let z2 = SmallGroup::cyclic(2);
        let sw = GModule::parse(&z2, "Z2+Z2:swap").unwrap();
        assert_eq!(cohomology_cyclic(&sw, 0, &caps).unwrap().group, g("Z2"));
        for d in 1..7 {
            assert!(cohomology_cyclic(&sw, d, &caps).unwrap().group.is_trivial(), "{d}");
        }
        let triv = GModule::trivial(SmallGroup::cyclic(6), g("Z4"));
        assert_eq!(cohomology_cyclic(&triv, 0, &caps).unwrap().group, g("Z4"));
        assert_eq!(cohomology_cyclic(&triv, 1, &caps).unwrap().group, g("Z2"));
        assert_eq!(cohomology_cyclic(&triv, 2, &caps).unwrap().group, g("Z2"));
        let neg = GModule::parse(&z2, "Z4:neg").unwrap();
        // ker(1+σ) = Z4, im(σ−1) = 2Z4 ; ker(σ−1) = {0,2}, im(1+σ) = 0
        assert_eq!(cohomology_cyclic(&neg, 1, &caps).unwrap().group, g("Z2"));
        assert_eq!(cohomology_cyclic(&neg, 2, &caps).unwrap().group, g("Z2"));
    }
}
