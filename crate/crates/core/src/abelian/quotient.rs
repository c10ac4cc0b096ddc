use super::group::{FinAbGroup, GroupElement};
use super::hom::GroupHom;
use super::smith::smith;
use super::subgroup::Subgroup;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// `parent / sub` in invariant-factor form, with projection and a section.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FinAbGroup,
    pub projection: GroupHom,
    /// Lexicographically least representative of each coset, indexed by the
    /// quotient element index.
    section: Vec<GroupElement>,
}

impl Quotient {
    pub fn lift(&self, x: &GroupElement) -> GroupElement {
        self.section[self.group.index_of(x)].clone()
    }

    pub fn section(&self) -> &[GroupElement] {
        &self.section
    }
}

pub fn quotient(parent: &FinAbGroup, sub: &Subgroup, caps: &Caps) -> Result<Quotient> {
    if sub.parent() != parent {
        return Err(Error::InvalidGroup("subgroup belongs to another group".into()));
    }
    caps.check_group(parent)?;
    let k = parent.rank();
    let gens = sub.generators();
    let rows: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            let mut r: Vec<i64> = gens.iter().map(|g| g.coords()[i]).collect();
            r.extend((0..k).map(|j| if i == j { parent.factors()[i] } else { 0 }));
            r
        })
        .collect();
    let s = smith(&rows, gens.len() + k);
    let keep: Vec<usize> = (0..k).filter(|&i| s.d[i] > 1).collect();
    let group = FinAbGroup::new(keep.iter().map(|&i| s.d[i]).collect())?;
    let matrix: Vec<Vec<i64>> = keep.iter().map(|&i| s.u[i].clone()).collect();
    let projection = GroupHom::new(parent.clone(), group.clone(), matrix)?;
    let mut section: Vec<Option<GroupElement>> = vec![None; group.order()];
    let mut filled = 0;
    for x in parent.elements() {
        let i = group.index_of(&projection.apply(&x));
        if section[i].is_none() {
            section[i] = Some(x);
            filled += 1;
            if filled == group.order() {
                break;
            }
        }
    }
    let section = section
        .into_iter()
        .map(|s| s.expect("projection is onto"))
        .collect();
    Ok(Quotient {
        group,
        projection,
        section,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::enumerate_subgroups;
    use std::collections::HashSet;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn diagonal_quotient() {
        let caps = Caps::default();
        let grp = g("Z2+Z2");
        let diag = Subgroup::generated_by(&grp, &[grp.element(&[1, 1]).unwrap()]).unwrap();
        let q = quotient(&grp, &diag, &caps).unwrap();
        assert_eq!(q.group, g("Z2"));
        assert_eq!(q.lift(&q.group.element(&[1]).unwrap()).coords(), &[0, 1]);
        assert!(q.projection.apply(&grp.element(&[1, 1]).unwrap()).is_zero());
    }

    #[test]
    fn orders_multiply_and_cosets_match() {
        let caps = Caps::default();
        for s in ["Z4+Z2", "Z2+Z2+Z2", "Z3+Z6"] {
            let grp = g(s);
            for sub in enumerate_subgroups(&grp, None, &caps).unwrap() {
                let q = quotient(&grp, &sub, &caps).unwrap();
                assert_eq!(sub.order() * q.group.order(), grp.order());
                assert!(q.group.is_canonical());
                // coset-enumeration oracle: x, y share a coset iff x - y in sub
                let mut classes = HashSet::new();
                for x in grp.elements() {
                    let rep = grp
                        .elements()
                        .find(|y| sub.contains(&grp.sub(&x, y)))
                        .unwrap();
                    classes.insert(rep.clone());
                    assert_eq!(q.lift(&q.projection.apply(&x)), rep);
                }
                assert_eq!(classes.len(), q.group.order());
            }
        }
    }
}
