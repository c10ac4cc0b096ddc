use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graded::GradedPremetricGroup;
use super::order::classes_equal_mod_witt;
use super::reduction::reduce_mod_witt;
use super::triviality::is_s_invertible;
use crate::abelian::FinAbGroup;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// A finite group given by its multiplication table, identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CayleyTable {
    pub table: Vec<Vec<usize>>,
}

impl CayleyTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == 0)
            .expect("group table has inverses")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut p = a;
        let mut n = 1;
        while p != 0 {
            p = self.mul(p, a);
            n += 1;
        }
        n
    }

    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for a in 0..self.order() {
            *h.entry(self.element_order(a)).or_insert(0) += 1;
        }
        h
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center_order(&self) -> usize {
        (0..self.order())
            .filter(|&a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
            .count()
    }

    pub fn derived_order(&self) -> usize {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0];
        for a in 0..n {
            for b in 0..n {
                let c = self.mul(
                    self.mul(a, b),
                    self.mul(self.inverse(a), self.inverse(b)),
                );
                if !inside[c] {
                    inside[c] = true;
                    members.push(c);
                }
            }
        }
        // close under multiplication
        let mut i = 0;
        while i < members.len() {
            for j in 0..members.len() {
                let c = self.mul(members[i], members[j]);
                if !inside[c] {
                    inside[c] = true;
                    members.push(c);
                }
            }
            i += 1;
        }
        members.len()
    }

    /// Checks associativity, identity and inverses.
    pub fn is_group(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a)
            && (0..n).all(|a| (0..n).any(|b| self.mul(a, b) == 0))
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))
                })
            })
    }
}

/// Invariants used to name a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    /// Element order to count; written as a list of pairs.
    #[serde(with = "pairs")]
    pub histogram: BTreeMap<usize, usize>,
    pub abelian: bool,
    pub center_order: usize,
    pub derived_order: usize,
}

mod pairs {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, usize>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, usize>, D::Error> {
        Ok(Vec::<(usize, usize)>::deserialize(d)?.into_iter().collect())
    }
}

impl Fingerprint {
    pub fn of(t: &CayleyTable) -> Self {
        Fingerprint {
            order: t.order(),
            histogram: t.histogram(),
            abelian: t.is_abelian(),
            center_order: t.center_order(),
            derived_order: t.derived_order(),
        }
    }

    /// A name for the group, or `None` when the fingerprint is not in the
    /// built-in table.
    pub fn label(&self) -> Option<String> {
        if self.abelian {
            return Some(abelian_label(self.order, &self.histogram));
        }
        let hist: Vec<(usize, usize)> = self.histogram.iter().map(|(&k, &v)| (k, v)).collect();
        let key = (self.order, self.center_order, self.derived_order);
        let name = match (key, hist.as_slice()) {
            ((6, 1, 3), [(1, 1), (2, 3), (3, 2)]) => "S3",
            ((8, 2, 2), [(1, 1), (2, 5), (4, 2)]) => "D4",
            ((8, 2, 2), [(1, 1), (2, 1), (4, 6)]) => "Q8",
            ((10, 1, 5), [(1, 1), (2, 5), (5, 4)]) => "D5",
            ((12, 1, 4), [(1, 1), (2, 3), (3, 8)]) => "A4",
            ((12, 2, 3), [(1, 1), (2, 7), (3, 2), (6, 2)]) => "D6",
            ((12, 2, 3), [(1, 1), (2, 1), (3, 2), (4, 6), (6, 2)]) => "Dic3",
            ((14, 1, 7), [(1, 1), (2, 7), (7, 6)]) => "D7",
            ((16, 4, 2), [(1, 1), (2, 11), (4, 4)]) => "D4xZ2",
            ((16, 2, 4), [(1, 1), (2, 9), (4, 2), (8, 4)]) => "D8",
            ((16, 2, 4), [(1, 1), (2, 1), (4, 10), (8, 4)]) => "Q16",
            ((16, 2, 4), [(1, 1), (2, 5), (4, 6), (8, 4)]) => "SD16",
            ((18, 1, 9), [(1, 1), (2, 9), (3, 2), (9, 6)]) => "D9",
            ((18, 2, 3), [(1, 1), (2, 3), (3, 8), (6, 6)]) => "S3xZ3",
            ((18, 1, 9), [(1, 1), (2, 9), (3, 8)]) => "(Z3xZ3):Z2",
            ((20, 1, 5), [(1, 1), (2, 5), (4, 10), (5, 4)]) => "F20",
            ((20, 2, 5), [(1, 1), (2, 11), (5, 4), (10, 4)]) => "D10",
            ((21, 1, 7), [(1, 1), (3, 14), (7, 6)]) => "Z7:Z3",
            ((24, 1, 12), [(1, 1), (2, 9), (3, 8), (4, 6)]) => "S4",
            ((24, 2, 8), [(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]) => "SL(2,3)",
            ((24, 2, 4), [(1, 1), (2, 7), (3, 8), (6, 8)]) => "A4xZ2",
            ((60, 1, 60), [(1, 1), (2, 15), (3, 20), (5, 24)]) => "A5",
            _ => return None,
        };
        Some(name.to_string())
    }
}

/// Invariant-factor name of an abelian group from its order statistics.
fn abelian_label(order: usize, hist: &BTreeMap<usize, usize>) -> String {
    let divides_count = |m: usize| -> usize {
        hist.iter()
            .filter(|(&o, _)| m.is_multiple_of(o))
            .map(|(_, &c)| c)
            .sum()
    };
    let mut prime_powers = Vec::new();
    let mut rest = order;
    let mut p = 2;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            // c_k = log_p #{x : p^k x = 0}; #{factors ≥ p^k} = c_k − c_{k−1}
            let log_p = |mut v: usize| {
                let mut l = 0;
                while v > 1 {
                    v /= p;
                    l += 1;
                }
                l
            };
            let mut c = vec![0usize];
            let mut pk = 1;
            while *c.last().unwrap() < e {
                pk *= p;
                c.push(log_p(divides_count(pk)));
            }
            let at_least: Vec<usize> = c.windows(2).map(|w| w[1] - w[0]).collect();
            for k in 1..=at_least.len() {
                let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
                for _ in 0..exactly {
                    prime_powers.push(p.pow(k as u32) as i64);
                }
            }
        }
        p += 1;
    }
    let g = FinAbGroup::from_orders(&prime_powers).expect("prime powers");
    g.canonicalize().to_string()
}

/// Closure of a set of classes under the twisted product.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupStructure {
    pub fingerprint: Fingerprint,
    pub label: String,
    pub table: CayleyTable,
    /// Shortest generator word (left to right) reaching each class.
    pub words: Vec<Vec<usize>>,
    /// Reduced representative of each class.
    pub representatives: Vec<GradedPremetricGroup>,
}

/// Closes `generators` under the twisted product, identifying classes
/// modulo metric groups.
pub fn group_structure(
    context: &crate::witt::SyllepticContext,
    generators: &[GradedPremetricGroup],
    caps: &Caps,
) -> Result<GroupStructure> {
    for g in generators {
        if g.context() != context {
            return Err(Error::ContextMismatch);
        }
        if !is_s_invertible(g, caps)? {
            return Err(Error::NotInvertible);
        }
    }
    let mut reps = vec![GradedPremetricGroup::unit(context)];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut by_gen: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    while next < reps.len() {
        let mut row = Vec::with_capacity(generators.len());
        for (gi, g) in generators.iter().enumerate() {
            let (p, _) = reduce_mod_witt(&reps[next].twisted_product(g)?, caps)?;
            let mut hit = None;
            for (i, r) in reps.iter().enumerate() {
                if classes_equal_mod_witt(&p, r, caps)?.is_some() {
                    hit = Some(i);
                    break;
                }
            }
            let idx = match hit {
                Some(i) => i,
                None => {
                    if reps.len() >= caps.closure {
                        return Err(Error::ClosureCapExceeded { cap: caps.closure });
                    }
                    let mut w = words[next].clone();
                    w.push(gi);
                    words.push(w);
                    reps.push(p);
                    reps.len() - 1
                }
            };
            row.push(idx);
        }
        by_gen.push(row);
        next += 1;
    }
    let n = reps.len();
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| words[b].iter().fold(a, |c, &g| by_gen[c][g]))
                .collect()
        })
        .collect();
    let table = CayleyTable { table };
    let fingerprint = Fingerprint::of(&table);
    let label = fingerprint
        .label()
        .unwrap_or_else(|| format!("unidentified(order {n})"));
    Ok(GroupStructure {
        fingerprint,
        label,
        table,
        words,
        representatives: reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> CayleyTable {
        CayleyTable {
            table: (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(),
        }
    }

    fn product(x: &CayleyTable, y: &CayleyTable) -> CayleyTable {
        let (n, m) = (x.order(), y.order());
        CayleyTable {
            table: (0..n * m)
                .map(|a| {
                    (0..n * m)
                        .map(|b| x.mul(a / m, b / m) * m + y.mul(a % m, b % m))
                        .collect()
                })
                .collect(),
        }
    }

    /// Permutation group on `k` points generated by the given permutations.
    fn perm_group(k: usize, gens: &[Vec<usize>]) -> CayleyTable {
        let id: Vec<usize> = (0..k).collect();
        let mut els = vec![id];
        let mut i = 0;
        while i < els.len() {
            for g in gens {
                let c: Vec<usize> = (0..k).map(|x| g[els[i][x]]).collect();
                if !els.contains(&c) {
                    els.push(c);
                }
            }
            i += 1;
        }
        let table = els
            .iter()
            .map(|a| {
                els.iter()
                    .map(|b| {
                        let c: Vec<usize> = (0..k).map(|x| a[b[x]]).collect();
                        els.iter().position(|e| *e == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        CayleyTable { table }
    }

    #[test]
    fn abelian_labels() {
        assert_eq!(Fingerprint::of(&cyclic(4)).label().unwrap(), "Z4");
        assert_eq!(Fingerprint::of(&product(&cyclic(2), &cyclic(2))).label().unwrap(), "Z2+Z2");
        assert_eq!(Fingerprint::of(&product(&cyclic(2), &cyclic(6))).label().unwrap(), "Z2+Z6");
        assert_eq!(Fingerprint::of(&product(&cyclic(4), &cyclic(2))).label().unwrap(), "Z2+Z4");
        assert_eq!(Fingerprint::of(&cyclic(1)).label().unwrap(), "0");
        assert_eq!(Fingerprint::of(&cyclic(9)).label().unwrap(), "Z9");
    }

    #[test]
    fn permutation_groups() {
        let s4 = perm_group(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]);
        assert!(s4.is_group());
        let f = Fingerprint::of(&s4);
        assert_eq!(f.order, 24);
        assert_eq!(f.center_order, 1);
        assert_eq!(f.derived_order, 12);
        assert_eq!(f.label().unwrap(), "S4");
        let s3 = perm_group(3, &[vec![1, 0, 2], vec![1, 2, 0]]);
        assert_eq!(Fingerprint::of(&s3).label().unwrap(), "S3");
        let a4 = perm_group(4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]]);
        assert_eq!(Fingerprint::of(&a4).label().unwrap(), "A4");
        let d4 = perm_group(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]);
        assert_eq!(Fingerprint::of(&d4).label().unwrap(), "D4");
        let a5 = perm_group(5, &[vec![1, 2, 0, 3, 4], vec![1, 2, 3, 4, 0]]);
        assert_eq!(Fingerprint::of(&a5).label().unwrap(), "A5");
    }
}
