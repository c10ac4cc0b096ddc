use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{FinAbGroup, GroupElement};
use super::subgroup::Subgroup;
use crate::caps::Caps;
use crate::error::{Error, Result};

/// Homomorphism given by an integer matrix; column `j` is the image of source
/// generator `j`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GroupHomSpec")]
pub struct GroupHom {
    source: FinAbGroup,
    target: FinAbGroup,
    /// `matrix[i][j]`: coordinate `i` of the image of generator `j`.
    matrix: Vec<Vec<i64>>,
}

impl GroupHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != target.rank() || matrix.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::InvalidHom(format!(
                "matrix shape does not match {source} -> {target}"
            )));
        }
        let mut matrix = matrix;
        for (row, &t) in matrix.iter_mut().zip(target.factors()) {
            for x in row.iter_mut() {
                *x = x.rem_euclid(t);
            }
        }
        for (j, &n) in source.factors().iter().enumerate() {
            for (i, &t) in target.factors().iter().enumerate() {
                if (n as i128 * matrix[i][j] as i128) % t as i128 != 0 {
                    return Err(Error::InvalidHom(format!(
                        "generator {j} of order {n} cannot map to coordinate value {} mod {t}",
                        matrix[i][j]
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    /// Builds the map sending generator `j` to `images[j]`.
    pub fn from_images(
        source: FinAbGroup,
        target: FinAbGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidHom("wrong number of generator images".into()));
        }
        let matrix = (0..target.rank())
            .map(|i| images.iter().map(|e| e.coords()[i]).collect())
            .collect();
        Self::new(source, target, matrix)
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let matrix = vec![vec![0; source.rank()]; target.rank()];
        GroupHom {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        let k = g.rank();
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// Image of generator `j`.
    pub fn column(&self, j: usize) -> GroupElement {
        GroupElement(self.matrix.iter().map(|r| r[j]).collect())
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let c = self
            .matrix
            .iter()
            .zip(self.target.factors())
            .map(|(row, &t)| {
                let s: i128 = row
                    .iter()
                    .zip(x.coords())
                    .map(|(&m, &v)| m as i128 * v as i128)
                    .sum();
                s.rem_euclid(t as i128) as i64
            })
            .collect();
        GroupElement(c)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GroupHom) -> Result<GroupHom> {
        if other.target != self.source {
            return Err(Error::InvalidHom("composition of incompatible maps".into()));
        }
        let images: Vec<_> = (0..other.source.rank())
            .map(|j| self.apply(&other.column(j)))
            .collect();
        GroupHom::from_images(other.source.clone(), self.target.clone(), &images)
    }

    /// Pointwise sum of two maps with equal source and target.
    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidHom("sum of incompatible maps".into()));
        }
        let images: Vec<_> = (0..self.source.rank())
            .map(|j| self.target.add(&self.column(j), &other.column(j)))
            .collect();
        GroupHom::from_images(self.source.clone(), self.target.clone(), &images)
    }

    pub fn kernel(&self, caps: &Caps) -> Result<Subgroup> {
        caps.check_group(&self.source)?;
        let members: Vec<usize> = (0..self.source.order())
            .filter(|&i| self.apply(&self.source.element_at(i)).is_zero())
            .collect();
        Ok(Subgroup::from_sorted_members(self.source.clone(), members))
    }

    pub fn image(&self, caps: &Caps) -> Result<Subgroup> {
        caps.check_group(&self.target)?;
        let cols: Vec<_> = (0..self.source.rank()).map(|j| self.column(j)).collect();
        Subgroup::generated_by(&self.target, &cols)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == GroupHom::identity(&self.source)
    }

    /// Multiplicative order of an endomorphism, if it is invertible with order
    /// at most `cap`.
    pub fn endo_order(&self, cap: usize) -> Option<usize> {
        let mut p = self.clone();
        for n in 1..=cap {
            if p.is_identity() {
                return Some(n);
            }
            p = p.compose(self).ok()?;
        }
        None
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.matrix)
    }
}

/// All automorphisms of `g`, in lexicographic order of their generator images.
pub fn automorphisms(g: &FinAbGroup, caps: &Caps) -> Result<Vec<GroupHom>> {
    caps.check_group(g)?;
    let choices: Vec<Vec<GroupElement>> = g
        .factors()
        .iter()
        .map(|&n| g.torsion_elements(n))
        .collect();
    let total = choices
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len()))
        .unwrap_or(usize::MAX);
    if total > caps.endomorphisms {
        return Err(Error::cap("endomorphism search", total, caps.endomorphisms));
    }
    let k = g.rank();
    let mut out = Vec::new();
    let mut pick = vec![0usize; k];
    loop {
        let images: Vec<GroupElement> = (0..k).map(|j| choices[j][pick[j]].clone()).collect();
        if Subgroup::span_size(g, &images) == g.order() {
            out.push(GroupHom::from_images(g.clone(), g.clone(), &images)?);
        }
        // odometer, last generator fastest
        let mut j = k;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            pick[j] += 1;
            if pick[j] < choices[j].len() {
                break;
            }
            pick[j] = 0;
        }
    }
}

#[derive(Deserialize)]
struct GroupHomSpec {
    source: FinAbGroup,
    target: FinAbGroup,
    matrix: Vec<Vec<i64>>,
}

impl TryFrom<GroupHomSpec> for GroupHom {
    type Error = Error;

    fn try_from(r: GroupHomSpec) -> Result<Self> {
        GroupHom::new(r.source, r.target, r.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn well_definedness() {
        assert!(GroupHom::new(g("Z2"), g("Z4"), vec![vec![2]]).is_ok());
        assert!(GroupHom::new(g("Z2"), g("Z4"), vec![vec![1]]).is_err());
        assert!(GroupHom::new(g("Z4"), g("Z2"), vec![vec![1]]).is_ok());
        assert!(GroupHom::new(g("Z4"), g("Z2"), vec![vec![1, 0]]).is_err());
    }

    #[test]
    fn kernel_and_image() {
        let caps = Caps::default();
        let src = g("Z2+Z2+Z2+Z2");
        // every generator maps to the first basis vector of Z2+Z2
        let f = GroupHom::new(src, g("Z2+Z2"), vec![vec![1, 1, 1, 1], vec![0, 0, 0, 0]]).unwrap();
        let k = f.kernel(&caps).unwrap();
        assert_eq!(k.order(), 8);
        for c in [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]] {
            assert!(k.contains(&f.source().element(&c).unwrap()));
        }
        assert_eq!(f.image(&caps).unwrap().order(), 2);
        let z = GroupHom::zero(g("Z4+Z2"), g("Z3"));
        assert_eq!(z.kernel(&caps).unwrap().order(), 8);
    }

    #[test]
    fn composition() {
        let a = GroupHom::new(g("Z4"), g("Z4"), vec![vec![3]]).unwrap();
        assert!(a.compose(&a).unwrap().is_identity());
        assert_eq!(a.endo_order(10), Some(2));
    }

    #[test]
    fn automorphism_counts() {
        let caps = Caps::default();
        assert_eq!(automorphisms(&g("Z2"), &caps).unwrap().len(), 1);
        assert_eq!(automorphisms(&g("Z2+Z2"), &caps).unwrap().len(), 6);
        assert_eq!(automorphisms(&g("Z4"), &caps).unwrap().len(), 2);
        assert_eq!(automorphisms(&g("Z4+Z2"), &caps).unwrap().len(), 8);
        assert_eq!(automorphisms(&g("0"), &caps).unwrap().len(), 1);
    }

    #[test]
    fn automorphisms_closed_under_composition() {
        let caps = Caps::default();
        let auts = automorphisms(&g("Z2+Z4"), &caps).unwrap();
        for x in &auts {
            for y in &auts {
                assert!(auts.contains(&x.compose(y).unwrap()));
            }
        }
    }
}
