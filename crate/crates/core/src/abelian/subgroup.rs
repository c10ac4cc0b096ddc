use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::Serialize;

use super::group::{FinAbGroup, GroupElement};
use super::hom::GroupHom;
use super::smith::{integer_kernel, smith};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// A subgroup stored as its sorted set of element indices in the parent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: FinAbGroup,
    members: Vec<usize>,
    basis: Vec<GroupElement>,
    orders: Vec<i64>,
}

impl Subgroup {
    pub fn trivial(parent: &FinAbGroup) -> Subgroup {
        Subgroup {
            parent: parent.clone(),
            members: vec![0],
            basis: Vec::new(),
            orders: Vec::new(),
        }
    }

    pub fn whole(parent: &FinAbGroup) -> Subgroup {
        Self::from_sorted_members(parent.clone(), (0..parent.order()).collect())
    }

    pub fn generated_by(parent: &FinAbGroup, gens: &[GroupElement]) -> Result<Subgroup> {
        for g in gens {
            if g.coords().len() != parent.rank() {
                return Err(Error::InvalidElement(format!("{g} is not in {parent}")));
            }
        }
        let gens: Vec<usize> = gens
            .iter()
            .map(|g| parent.index_of(&parent.reduce(g.coords().to_vec())))
            .collect();
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        let mut members = vec![0usize];
        for &g in &gens {
            extend(parent, &mut mask, &mut members, g);
        }
        members.sort_unstable();
        Ok(Self::from_sorted_members(parent.clone(), members))
    }

    /// Validates closure of an explicit element set.
    pub fn from_elements(parent: &FinAbGroup, elements: &[GroupElement]) -> Result<Subgroup> {
        let mut members: Vec<usize> = elements
            .iter()
            .map(|e| {
                if e.coords().len() != parent.rank() {
                    return Err(Error::InvalidElement(format!("{e} is not in {parent}")));
                }
                Ok(parent.index_of(&parent.reduce(e.coords().to_vec())))
            })
            .collect::<Result<_>>()?;
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(Error::NotClosed);
        }
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        for &a in &members {
            if !mask[parent.neg_idx(a)] {
                return Err(Error::NotClosed);
            }
            for &b in &members {
                if !mask[parent.add_idx(a, b)] {
                    return Err(Error::NotClosed);
                }
            }
        }
        Ok(Self::from_sorted_members(parent.clone(), members))
    }

    pub(crate) fn from_sorted_members(parent: FinAbGroup, members: Vec<usize>) -> Subgroup {
        let (basis, orders) = independent_basis(&parent, &members);
        Subgroup {
            parent,
            members,
            basis,
            orders,
        }
    }

    pub fn parent(&self) -> &FinAbGroup {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.members
            .binary_search(&self.parent.index_of(g))
            .is_ok()
    }

    pub(crate) fn contains_idx(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub(crate) fn member_indices(&self) -> &[usize] {
        &self.members
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.members
            .iter()
            .map(|&i| self.parent.element_at(i))
            .collect()
    }

    /// Minimal generating list; it is a basis: the subgroup is the internal
    /// direct sum of the cyclic groups it generates, in invariant-factor order.
    pub fn generators(&self) -> &[GroupElement] {
        &self.basis
    }

    /// Orders of [`Subgroup::generators`].
    pub fn generator_orders(&self) -> &[i64] {
        &self.orders
    }

    /// Abstract group `Z/o₁ ⊕ …` matching the generator basis.
    pub fn structure(&self) -> FinAbGroup {
        FinAbGroup::new(self.orders.clone()).expect("basis orders are at least 2")
    }

    /// Inclusion of [`Subgroup::structure`] into the parent.
    pub fn embedding(&self) -> GroupHom {
        GroupHom::from_images(self.structure(), self.parent.clone(), &self.basis)
            .expect("basis respects orders")
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.iter().all(|&m| other.contains_idx(m))
    }

    /// `self + other` as a subgroup.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut mask = vec![false; self.parent.order()];
        let mut members = self.members.clone();
        for &m in &members {
            mask[m] = true;
        }
        for g in &other.basis {
            extend(&self.parent, &mut mask, &mut members, self.parent.index_of(g));
        }
        members.sort_unstable();
        Self::from_sorted_members(self.parent.clone(), members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&m| other.contains_idx(m))
            .collect();
        Self::from_sorted_members(self.parent.clone(), members)
    }

    /// Size of the span of `gens` without building the subgroup.
    pub fn span_size(parent: &FinAbGroup, gens: &[GroupElement]) -> usize {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        let mut members = vec![0usize];
        for g in gens {
            extend(parent, &mut mask, &mut members, parent.index_of(g));
        }
        members.len()
    }

    fn sort_key(&self) -> (usize, &[GroupElement]) {
        (self.order(), &self.basis)
    }
}

/// Adds the cyclic group generated by `g` to the subgroup held in `mask`/`members`.
fn extend(parent: &FinAbGroup, mask: &mut [bool], members: &mut Vec<usize>, g: usize) {
    if mask[g] {
        return;
    }
    let base: Vec<usize> = members.clone();
    let mut shift = g;
    while !mask[shift] {
        for &b in &base {
            let x = parent.add_idx(b, shift);
            mask[x] = true;
            members.push(x);
        }
        shift = parent.add_idx(shift, g);
    }
}

/// Invariant-factor basis of the subgroup with the given members.
fn independent_basis(parent: &FinAbGroup, members: &[usize]) -> (Vec<GroupElement>, Vec<i64>) {
    if members.len() <= 1 {
        return (Vec::new(), Vec::new());
    }
    // greedy lexicographic generating set keeps the relation matrix small
    let mut mask = vec![false; parent.order()];
    mask[0] = true;
    let mut span = vec![0usize];
    let mut gens = Vec::new();
    for &m in members {
        if span.len() == members.len() {
            break;
        }
        if !mask[m] {
            extend(parent, &mut mask, &mut span, m);
            gens.push(parent.element_at(m));
        }
    }
    let k = parent.rank();
    let m = gens.len();
    // relations: kernel of [gens | diag(n)]
    let a: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            let mut row: Vec<i64> = gens.iter().map(|g| g.coords()[i]).collect();
            row.extend((0..k).map(|j| if i == j { parent.factors()[i] } else { 0 }));
            row
        })
        .collect();
    let ker = integer_kernel(&a, m + k);
    let rel: Vec<Vec<i64>> = (0..m)
        .map(|i| ker.iter().map(|v| v[i]).collect())
        .collect();
    let s = smith(&rel, ker.len());
    let mut basis = Vec::new();
    let mut orders = Vec::new();
    for (i, &d) in s.d.iter().enumerate() {
        assert!(d != 0, "finite subgroup has full-rank relations");
        if d == 1 {
            continue;
        }
        let mut c = vec![0i64; k];
        for (j, g) in gens.iter().enumerate() {
            for (t, x) in c.iter_mut().enumerate() {
                *x += s.u_inv[j][i] * g.coords()[t];
            }
        }
        basis.push(parent.reduce(c));
        orders.push(d);
    }
    (basis, orders)
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "> (order {})", self.order())
    }
}

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subgroup", 3)?;
        st.serialize_field("parent", &self.parent)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("generators", &self.basis)?;
        st.end()
    }
}

#[derive(serde::Deserialize)]
struct SubgroupSpec {
    parent: FinAbGroup,
    order: Option<usize>,
    generators: Vec<GroupElement>,
}

impl<'de> serde::Deserialize<'de> for Subgroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let spec = SubgroupSpec::deserialize(d)?;
        let h = Subgroup::generated_by(&spec.parent, &spec.generators).map_err(D::Error::custom)?;
        match spec.order {
            Some(n) if n != h.order() => Err(D::Error::custom(format!(
                "generators span a subgroup of order {}, not {n}",
                h.order()
            ))),
            _ => Ok(h),
        }
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.members.cmp(&other.members))
    }
}

/// Every subgroup of `group` (or of `only_inside`) exactly once, sorted by
/// order and then by generator list.
pub fn enumerate_subgroups(
    group: &FinAbGroup,
    only_inside: Option<&Subgroup>,
    caps: &Caps,
) -> Result<Vec<Subgroup>> {
    caps.check_group(group)?;
    let pool: Vec<usize> = match only_inside {
        Some(s) => {
            if s.parent() != group {
                return Err(Error::InvalidGroup("restriction subgroup has another parent".into()));
            }
            s.members.clone()
        }
        None => (0..group.order()).collect(),
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(vec![0]);
    queue.push_back(vec![0usize]);
    let mut found = Vec::new();
    let mut mask = vec![false; group.order()];
    while let Some(members) = queue.pop_front() {
        for &m in &members {
            mask[m] = true;
        }
        for &g in &pool {
            if mask[g] {
                continue;
            }
            let mut next = members.clone();
            let mut m2 = mask.clone();
            extend(group, &mut m2, &mut next, g);
            next.sort_unstable();
            if seen.insert(next.clone()) {
                if seen.len() > caps.subgroups {
                    return Err(Error::cap("subgroup lattice", seen.len(), caps.subgroups));
                }
                queue.push_back(next);
            }
        }
        for &m in &members {
            mask[m] = false;
        }
        found.push(members);
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|m| Subgroup::from_sorted_members(group.clone(), m))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    fn brute_count(group: &FinAbGroup) -> usize {
        // closure of every subset of elements, deduplicated
        let n = group.order();
        let mut seen = HashSet::new();
        for mask in 0u64..(1 << n) {
            let gens: Vec<_> = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| group.element_at(i))
                .collect();
            seen.insert(Subgroup::generated_by(group, &gens).unwrap().members);
        }
        seen.len()
    }

    #[test]
    fn subgroup_counts() {
        let caps = Caps::default();
        assert_eq!(enumerate_subgroups(&g("Z2+Z2"), None, &caps).unwrap().len(), 5);
        assert_eq!(enumerate_subgroups(&g("Z4"), None, &caps).unwrap().len(), 3);
        assert_eq!(enumerate_subgroups(&g("0"), None, &caps).unwrap().len(), 1);
        assert_eq!(enumerate_subgroups(&g("Z2+Z2+Z2"), None, &caps).unwrap().len(), 16);
        for s in ["Z4+Z2", "Z2+Z2+Z2", "Z6", "Z3+Z3"] {
            let grp = g(s);
            assert_eq!(
                enumerate_subgroups(&grp, None, &caps).unwrap().len(),
                brute_count(&grp),
                "{s}"
            );
        }
        // Z2^6 has 2825 subspaces
        assert_eq!(enumerate_subgroups(&g("Z2+Z2+Z2+Z2+Z2+Z2"), None, &caps).unwrap().len(), 2825);
    }

    #[test]
    fn subgroups_are_closed_and_sorted() {
        let caps = Caps::default();
        let grp = g("Z4+Z2+Z2");
        let subs = enumerate_subgroups(&grp, None, &caps).unwrap();
        for w in subs.windows(2) {
            assert!(w[0].order() <= w[1].order());
        }
        for s in &subs {
            assert_eq!(grp.order() % s.order(), 0);
            let els = s.elements();
            assert!(Subgroup::from_elements(&grp, &els).is_ok());
            let prod: i64 = s.generator_orders().iter().product();
            assert_eq!(prod as usize, s.order());
            assert_eq!(Subgroup::generated_by(&grp, s.generators()).unwrap(), *s);
        }
    }

    #[test]
    fn restricted_enumeration() {
        let caps = Caps::default();
        let grp = g("Z2+Z2+Z2");
        let inside = Subgroup::generated_by(&grp, &[grp.generator(0), grp.generator(1)]).unwrap();
        let subs = enumerate_subgroups(&grp, Some(&inside), &caps).unwrap();
        assert_eq!(subs.len(), 5);
        assert!(subs.iter().all(|s| s.is_subgroup_of(&inside)));
    }

    #[test]
    fn non_closed_sets_rejected() {
        let grp = g("Z4");
        let els = [grp.element(&[0]).unwrap(), grp.element(&[1]).unwrap()];
        assert_eq!(Subgroup::from_elements(&grp, &els), Err(Error::NotClosed));
    }

    #[test]
    fn basis_is_minimal() {
        let grp = g("Z2+Z3");
        let s = Subgroup::whole(&grp);
        assert_eq!(s.generators().len(), 1);
        assert_eq!(s.generator_orders(), &[6]);
        let grp = g("Z4+Z2");
        let s = Subgroup::whole(&grp);
        assert_eq!(s.structure().canonicalize(), g("Z2+Z4"));
        assert_eq!(Subgroup::span_size(&grp, s.generators()), 8);
    }
}
