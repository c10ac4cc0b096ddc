use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::{FinAbGroup, GroupElement, GroupHom, Subgroup};
use crate::error::{Error, Result};
use crate::qz::Qz;

/// Bilinear pairing `b: G × H → ℚ/ℤ` stored on generators.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "BicharacterSpec")]
pub struct Bicharacter {
    left: FinAbGroup,
    right: FinAbGroup,
    /// `m[i][j] = b(e_i, e'_j)`.
    m: Vec<Vec<Qz>>,
}

impl Bicharacter {
    pub fn new(left: FinAbGroup, right: FinAbGroup, m: Vec<Vec<Qz>>) -> Result<Self> {
        if m.len() != left.rank() || m.iter().any(|r| r.len() != right.rank()) {
            return Err(Error::InvalidForm(format!(
                "pairing matrix shape does not match {left} x {right}"
            )));
        }
        for (i, &ni) in left.factors().iter().enumerate() {
            for (j, &nj) in right.factors().iter().enumerate() {
                if ni.gcd(&nj) % m[i][j].order() != 0 {
                    return Err(Error::InvalidForm(format!(
                        "b(e{i},e{j}) = {} has order not dividing gcd({ni},{nj})",
                        m[i][j]
                    )));
                }
            }
        }
        Ok(Bicharacter { left, right, m })
    }

    /// Pairing of a group with itself.
    pub fn on(group: &FinAbGroup, m: Vec<Vec<Qz>>) -> Result<Self> {
        Self::new(group.clone(), group.clone(), m)
    }

    pub fn zero(left: &FinAbGroup, right: &FinAbGroup) -> Self {
        Bicharacter {
            left: left.clone(),
            right: right.clone(),
            m: vec![vec![Qz::ZERO; right.rank()]; left.rank()],
        }
    }

    /// `ev(x, λ) = Σ xᵢλᵢ/nᵢ` on `G × Ĝ`, with `Ĝ` presented like `G`.
    pub fn evaluation(group: &FinAbGroup) -> Self {
        let k = group.rank();
        let m = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            Qz::new(1, group.factors()[i])
                        } else {
                            Qz::ZERO
                        }
                    })
                    .collect()
            })
            .collect();
        Bicharacter {
            left: group.clone(),
            right: group.clone(),
            m,
        }
    }

    pub fn left(&self) -> &FinAbGroup {
        &self.left
    }

    pub fn right(&self) -> &FinAbGroup {
        &self.right
    }

    pub fn matrix(&self) -> &[Vec<Qz>] {
        &self.m
    }

    pub fn value(&self, i: usize, j: usize) -> Qz {
        self.m[i][j]
    }

    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> Qz {
        let mut acc = Qz::ZERO;
        for (i, &xi) in x.coords().iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coords().iter().enumerate() {
                if yj != 0 {
                    acc += self.m[i][j].mul_int(xi * yj);
                }
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.left == self.right && self.m == self.transpose().m
    }

    pub fn transpose(&self) -> Bicharacter {
        let m = (0..self.right.rank())
            .map(|j| (0..self.left.rank()).map(|i| self.m[i][j]).collect())
            .collect();
        Bicharacter {
            left: self.right.clone(),
            right: self.left.clone(),
            m,
        }
    }

    pub fn add(&self, other: &Bicharacter) -> Result<Bicharacter> {
        if self.left != other.left || self.right != other.right {
            return Err(Error::InvalidForm("sum of pairings on different groups".into()));
        }
        let m = self
            .m
            .iter()
            .zip(&other.m)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x + *y).collect())
            .collect();
        Ok(Bicharacter {
            left: self.left.clone(),
            right: self.right.clone(),
            m,
        })
    }

    pub fn negate(&self) -> Bicharacter {
        Bicharacter {
            left: self.left.clone(),
            right: self.right.clone(),
            m: self.m.iter().map(|r| r.iter().map(|x| -*x).collect()).collect(),
        }
    }

    /// `(x, y) ↦ b(φx, ψy)`.
    pub fn pullback(&self, phi: &GroupHom, psi: &GroupHom) -> Result<Bicharacter> {
        if phi.target() != &self.left || psi.target() != &self.right {
            return Err(Error::InvalidForm("pullback along maps into other groups".into()));
        }
        let m = (0..phi.source().rank())
            .map(|i| {
                let x = phi.column(i);
                (0..psi.source().rank())
                    .map(|j| self.eval(&x, &psi.column(j)))
                    .collect()
            })
            .collect();
        Bicharacter::new(phi.source().clone(), psi.source().clone(), m)
    }

    /// `{x : b(x, −) = 0}`.
    pub fn left_radical(&self) -> Subgroup {
        let gens = self.right.generators();
        let members = (0..self.left.order())
            .filter(|&i| {
                let x = self.left.element_at(i);
                gens.iter().all(|y| self.eval(&x, y).is_zero())
            })
            .collect();
        Subgroup::from_sorted_members(self.left.clone(), members)
    }

    /// `{y : b(−, y) = 0}`.
    pub fn right_radical(&self) -> Subgroup {
        self.transpose().left_radical()
    }

    /// Radical of a pairing on one group (the left radical).
    pub fn radical(&self) -> Subgroup {
        self.left_radical()
    }

    /// Both adjoint maps are injective.
    pub fn is_nondegenerate(&self) -> bool {
        self.left.order() == self.right.order()
            && self.left_radical().is_trivial()
            && self.right_radical().is_trivial()
    }

    /// `{g : b(g, h) = 0 for all h ∈ H}` for `H` in the right group.
    pub fn orthogonal_complement(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generators();
        let members = (0..self.left.order())
            .filter(|&i| {
                let x = self.left.element_at(i);
                gens.iter().all(|y| self.eval(&x, y).is_zero())
            })
            .collect();
        Subgroup::from_sorted_members(self.left.clone(), members)
    }

    /// Restriction to `H × H`, presented on the basis of `H`.
    pub fn restrict(&self, h: &Subgroup) -> Result<Bicharacter> {
        let e = h.embedding();
        self.pullback(&e, &e)
    }

    /// `Alt(b)(x, y) = b(x, y) − b(y, x)`.
    pub fn alt(&self) -> Result<AlternatingForm> {
        AlternatingForm::new(self.add(&self.transpose().negate())?)
    }
}

impl fmt::Debug for Bicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {} {:?}", self.left, self.right, self.m)
    }
}

/// Bicharacter with `λ(g, g) = 0` for every `g`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Bicharacter")]
pub struct AlternatingForm(Bicharacter);

impl TryFrom<Bicharacter> for AlternatingForm {
    type Error = Error;

    fn try_from(b: Bicharacter) -> Result<Self> {
        AlternatingForm::new(b)
    }
}

impl AlternatingForm {
    pub fn new(b: Bicharacter) -> Result<Self> {
        if b.left != b.right {
            return Err(Error::InvalidForm("alternating form needs one group".into()));
        }
        let k = b.left.rank();
        for i in 0..k {
            if !b.m[i][i].is_zero() {
                return Err(Error::InvalidForm(format!("λ(e{i},e{i}) = {}", b.m[i][i])));
            }
            for j in i + 1..k {
                if b.m[i][j] != -b.m[j][i] {
                    return Err(Error::InvalidForm(format!("λ(e{i},e{j}) ≠ −λ(e{j},e{i})")));
                }
            }
        }
        Ok(AlternatingForm(b))
    }

    pub fn bicharacter(&self) -> &Bicharacter {
        &self.0
    }

    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> Qz {
        self.0.eval(x, y)
    }

    pub fn is_zero(&self) -> bool {
        self.0.m.iter().flatten().all(|x| x.is_zero())
    }
}

impl fmt::Debug for AlternatingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alt{:?}", self.0)
    }
}

#[derive(Deserialize)]
struct BicharacterSpec {
    left: FinAbGroup,
    right: FinAbGroup,
    m: Vec<Vec<Qz>>,
}

impl TryFrom<BicharacterSpec> for Bicharacter {
    type Error = Error;

    fn try_from(r: BicharacterSpec) -> Result<Self> {
        Bicharacter::new(r.left, r.right, r.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Qz {
        Qz::new(n, d)
    }

    #[test]
    fn order_constraints() {
        assert!(Bicharacter::on(&g("Z2+Z4"), vec![vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(1, 4)]]).is_ok());
        assert!(Bicharacter::on(&g("Z2+Z4"), vec![vec![q(1, 2), q(1, 4)], vec![q(0, 1), q(0, 1)]]).is_err());
        assert!(Bicharacter::new(g("Z2"), g("Z3"), vec![vec![q(1, 2)]]).is_err());
    }

    #[test]
    fn bilinear_extension() {
        let grp = g("Z4+Z4");
        let b = Bicharacter::on(&grp, vec![vec![q(1, 4), q(1, 2)], vec![q(0, 1), q(3, 4)]]).unwrap();
        for x in grp.elements() {
            for y in grp.elements() {
                for z in grp.elements() {
                    assert_eq!(b.eval(&grp.add(&x, &y), &z), b.eval(&x, &z) + b.eval(&y, &z));
                    assert_eq!(b.eval(&z, &grp.add(&x, &y)), b.eval(&z, &x) + b.eval(&z, &y));
                }
            }
        }
    }

    #[test]
    fn alternating_of_syllepsis() {
        let a = g("Z2+Z2");
        let s = Bicharacter::on(&a, vec![vec![q(0, 1), q(1, 2)], vec![q(0, 1), q(0, 1)]]).unwrap();
        let alt = s.alt().unwrap();
        assert_eq!(alt.bicharacter().value(0, 1), Qz::HALF);
        assert_eq!(alt.bicharacter().value(1, 0), Qz::HALF);
        let sym = Bicharacter::on(&a, vec![vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(0, 1)]]).unwrap();
        assert!(sym.alt().unwrap().is_zero());
    }

    #[test]
    fn radicals_and_complements() {
        let a = g("Z2+Z2");
        let b = Bicharacter::on(&a, vec![vec![q(0, 1), q(1, 2)], vec![q(1, 2), q(0, 1)]]).unwrap();
        assert!(b.is_nondegenerate());
        let z = Bicharacter::zero(&a, &a);
        assert_eq!(z.radical().order(), 4);
        let h = Subgroup::generated_by(&a, &[a.generator(0)]).unwrap();
        let perp = b.orthogonal_complement(&h);
        assert_eq!(perp, h);
        assert_eq!(h.order() * perp.order(), a.order());
    }
}
