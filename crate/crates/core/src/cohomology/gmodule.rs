use serde::{Deserialize, Serialize};
use std::str::FromStr;

use crate::abelian::{FinAbGroup, GroupElement, GroupHom};
use crate::error::{Error, Result};
use crate::witt::CayleyTable;

/// A finite group of small order given by its multiplication table, with
/// element 0 the identity and a list of generating elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallGroup {
    pub label: String,
    pub table: CayleyTable,
    pub gens: Vec<usize>,
    /// `Some(n)` when the group is cyclic of order n and `gens == [g]` with g
    /// a generator.
    pub cyclic: Option<usize>,
}

impl SmallGroup {
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        SmallGroup {
            label: if n == 1 { "0".into() } else { format!("Z{n}") },
            table: CayleyTable { table },
            gens: if n == 1 { vec![] } else { vec![1] },
            cyclic: Some(n),
        }
    }

    /// An abelian group, elements indexed as in `g`.
    pub fn from_abelian(g: &FinAbGroup) -> Self {
        let canon = g.canonicalize();
        if canon.rank() <= 1 {
            return SmallGroup::cyclic(g.order());
        }
        let n = g.order();
        let table = (0..n)
            .map(|a| (0..n).map(|b| g.add_idx(a, b)).collect())
            .collect();
        SmallGroup {
            label: g.to_string(),
            table: CayleyTable { table },
            gens: g.generators().iter().map(|x| g.index_of(x)).collect(),
            cyclic: None,
        }
    }

    /// Closure of permutations of `0..k`; the generators become elements 1, 2, ….
    pub fn from_permutations(label: &str, k: usize, gens: &[Vec<usize>]) -> Self {
        let mut els: Vec<Vec<usize>> = vec![(0..k).collect()];
        for g in gens {
            if !els.contains(g) {
                els.push(g.clone());
            }
        }
        let mut i = 0;
        while i < els.len() {
            for g in gens {
                let c: Vec<usize> = (0..k).map(|x| els[i][g[x]]).collect();
                if !els.contains(&c) {
                    els.push(c);
                }
            }
            i += 1;
        }
        let find = |p: &Vec<usize>| els.iter().position(|e| e == p).unwrap();
        let table = els
            .iter()
            .map(|a| {
                els.iter()
                    .map(|b| find(&(0..k).map(|x| a[b[x]]).collect()))
                    .collect()
            })
            .collect();
        SmallGroup {
            label: label.into(),
            table: CayleyTable { table },
            gens: gens.iter().map(find).collect(),
            cyclic: None,
        }
    }

    pub fn quaternion() -> Self {
        // ±1, ±i, ±j, ±k acting on themselves by left multiplication
        let unit = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let idx = |neg: bool, u: usize| u + 4 * usize::from(neg);
        let perm = |g: usize| -> Vec<usize> {
            (0..8)
                .map(|x| {
                    let (n, u) = unit(g % 4, x % 4);
                    idx(n ^ (g >= 4) ^ (x >= 4), u)
                })
                .collect()
        };
        SmallGroup::from_permutations("Q8", 8, &[perm(1), perm(2)])
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mul(a, b)
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.table.inverse(a)
    }

    /// A word in the generators for every element, from a breadth-first walk.
    pub fn words(&self) -> Vec<Vec<usize>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order()];
        words[0] = Some(vec![]);
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in self.gens.iter().enumerate() {
                let y = self.mul(x, g);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(k);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words.into_iter().map(|w| w.expect("generators generate")).collect()
    }
}

impl FromStr for SmallGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Ok(match t {
            "S3" | "D3" => SmallGroup::from_permutations("S3", 3, &[vec![1, 2, 0], vec![1, 0, 2]]),
            "D4" => SmallGroup::from_permutations("D4", 4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]),
            "Q8" => SmallGroup::quaternion(),
            _ => SmallGroup::from_abelian(&t.parse::<FinAbGroup>()?),
        })
    }
}

/// A finite abelian group with an action of a small group, given on the
/// generators and extended along words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GModule {
    group: SmallGroup,
    module: FinAbGroup,
    action: Vec<GroupHom>,
    full: Vec<GroupHom>,
    label: String,
}

impl GModule {
    pub fn new(group: SmallGroup, module: FinAbGroup, action: Vec<GroupHom>) -> Result<Self> {
        if action.len() != group.gens.len() {
            return Err(Error::ActionInvalid(format!(
                "{} generators but {} action matrices",
                group.gens.len(),
                action.len()
            )));
        }
        for a in &action {
            if a.source() != &module || a.target() != &module {
                return Err(Error::ActionInvalid("action matrix on a different module".into()));
            }
        }
        let id = GroupHom::identity(&module);
        let full: Vec<GroupHom> = group
            .words()
            .iter()
            .map(|w| {
                w.iter()
                    .fold(id.clone(), |acc, &k| acc.compose(&action[k]).expect("same module"))
            })
            .collect();
        for a in 0..group.order() {
            for b in 0..group.order() {
                let ab = full[a].compose(&full[b]).expect("same module");
                if ab != full[group.mul(a, b)] {
                    return Err(Error::ActionInvalid(
                        "action does not respect the group relations".into(),
                    ));
                }
            }
        }
        Ok(GModule {
            label: format!("{module}"),
            group,
            module,
            action,
            full,
        })
    }

    pub fn trivial(group: SmallGroup, module: FinAbGroup) -> Self {
        let action = vec![GroupHom::identity(&module); group.gens.len()];
        let mut m = GModule::new(group, module, action).expect("trivial action");
        m.label = format!("{}:trivial", m.module);
        m
    }

    /// Literals `M`, `M:trivial`, `M:swap` (exchange the two halves of
    /// `M = B+B`), `M:neg`, and `M:S` (`(x,y) ↦ (y,−x)` on `B+B`). Every
    /// generator of the group acts by the named automorphism.
    pub fn parse(group: &SmallGroup, literal: &str) -> Result<Self> {
        let (m, kind) = match literal.split_once(':') {
            Some((m, k)) => (m, k.trim()),
            None => (literal, "trivial"),
        };
        let module: FinAbGroup = m.parse()?;
        let k = module.rank();
        let halves = || -> Result<usize> {
            if k % 2 == 1 || module.factors()[..k / 2] != module.factors()[k / 2..] {
                return Err(Error::parse(format!("{m} is not of the form B+B")));
            }
            Ok(k / 2)
        };
        let matrix: Vec<Vec<i64>> = match kind {
            "trivial" => return Ok(GModule::trivial(group.clone(), module)),
            "neg" => (0..k)
                .map(|i| (0..k).map(|j| if i == j { -1 } else { 0 }).collect())
                .collect(),
            "swap" => {
                let h = halves()?;
                (0..k)
                    .map(|i| (0..k).map(|j| i64::from(j == (i + h) % k)).collect())
                    .collect()
            }
            "S" => {
                let h = halves()?;
                (0..k)
                    .map(|i| {
                        (0..k)
                            .map(|j| match (i < h, j == (i + h) % k) {
                                (true, true) => 1,
                                (false, true) => -1,
                                _ => 0,
                            })
                            .collect()
                    })
                    .collect()
            }
            other => return Err(Error::parse(format!("unknown action '{other}'"))),
        };
        let a = GroupHom::new(module.clone(), module.clone(), matrix)?;
        let mut gm = GModule::new(group.clone(), module, vec![a; group.gens.len()])?;
        gm.label = literal.trim().to_string();
        Ok(gm)
    }

    pub fn group(&self) -> &SmallGroup {
        &self.group
    }

    pub fn module(&self) -> &FinAbGroup {
        &self.module
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn generator_action(&self) -> &[GroupHom] {
        &self.action
    }

    /// The automorphism by which element `g` acts.
    pub fn acting(&self, g: usize) -> &GroupHom {
        &self.full[g]
    }

    pub fn act(&self, g: usize, x: &GroupElement) -> GroupElement {
        self.full[g].apply(x)
    }

    pub fn is_trivial_action(&self) -> bool {
        self.action.iter().all(|a| a.is_identity())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witt::Fingerprint;

    #[test]
    fn small_groups() {
        for (s, order, label) in [
            ("Z2", 2, "Z2"),
            ("Z4", 4, "Z4"),
            ("Z2+Z2", 4, "Z2+Z2"),
            ("S3", 6, "S3"),
            ("D4", 8, "D4"),
            ("Q8", 8, "Q8"),
        ] {
            let g: SmallGroup = s.parse().unwrap();
            assert_eq!(g.order(), order);
            assert!(g.table.is_group());
            assert_eq!(Fingerprint::of(&g.table).label().unwrap(), label);
            assert_eq!(g.words().len(), order);
        }
        assert_eq!("Z2+Z3".parse::<SmallGroup>().unwrap().cyclic, Some(6));
    }

    #[test]
    fn module_literals() {
        let z2 = SmallGroup::cyclic(2);
        let sw = GModule::parse(&z2, "Z2+Z2:swap").unwrap();
        let x = sw.module().element(&[1, 0]).unwrap();
        assert_eq!(sw.act(1, &x).coords(), &[0, 1]);
        // the S action has order 4, so it is not a Z2-action
        assert!(matches!(GModule::parse(&z2, "Z4+Z4:S"), Err(Error::ActionInvalid(_))));
        let z4 = SmallGroup::cyclic(4);
        let s = GModule::parse(&z4, "Z4+Z4:S").unwrap();
        assert_eq!(s.act(1, &s.module().element(&[1, 0]).unwrap()).coords(), &[0, 3]);
        assert!(GModule::parse(&z2, "Z2+Z4:swap").is_err());
        assert!(GModule::parse(&z2, "Z2").unwrap().is_trivial_action());
    }
}
