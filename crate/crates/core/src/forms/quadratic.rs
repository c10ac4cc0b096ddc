use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::Bicharacter;
use crate::abelian::{FinAbGroup, GroupElement, GroupHom, Subgroup};
use crate::error::{Error, Result};
use crate::qz::Qz;

/// `q(x) = Σ xᵢ² tᵢ + Σ_{i<j} xᵢxⱼ bᵢⱼ` with `tᵢ = gen[i]` and `bᵢⱼ` stored
/// row-major in `offdiag` for pairs `(0,1), (0,2), …, (1,2), …`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadraticFormSpec")]
pub struct QuadraticForm {
    group: FinAbGroup,
    gen: Vec<Qz>,
    offdiag: Vec<Qz>,
}

/// Position of the pair `(i, j)`, `i < j`, in the row-major off-diagonal list.
pub fn pair_index(k: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < k);
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

/// Largest order a generator value may have on a cyclic factor of order `n`.
pub fn gen_value_bound(n: i64) -> i64 {
    n * n.gcd(&2)
}

impl QuadraticForm {
    pub fn new(group: FinAbGroup, gen: Vec<Qz>, offdiag: Vec<Qz>) -> Result<Self> {
        let k = group.rank();
        if gen.len() != k || offdiag.len() != k * k.saturating_sub(1) / 2 {
            return Err(Error::InvalidForm(format!(
                "{} generator values and {} off-diagonal values do not fit {group}",
                gen.len(),
                offdiag.len()
            )));
        }
        let n = group.factors();
        for (i, t) in gen.iter().enumerate() {
            if gen_value_bound(n[i]) % t.order() != 0 {
                return Err(Error::InvalidForm(format!(
                    "q(e{i}) = {t} is not well defined on Z{}",
                    n[i]
                )));
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let b = offdiag[pair_index(k, i, j)];
                if n[i].gcd(&n[j]) % b.order() != 0 {
                    return Err(Error::InvalidForm(format!(
                        "b(e{i},e{j}) = {b} has order not dividing gcd({},{})",
                        n[i], n[j]
                    )));
                }
            }
        }
        Ok(QuadraticForm {
            group,
            gen,
            offdiag,
        })
    }

    pub fn zero(group: &FinAbGroup) -> Self {
        let k = group.rank();
        QuadraticForm {
            group: group.clone(),
            gen: vec![Qz::ZERO; k],
            offdiag: vec![Qz::ZERO; k * k.saturating_sub(1) / 2],
        }
    }

    /// Recovers the stored data from a value function and checks it on every
    /// element.
    pub fn from_values(group: &FinAbGroup, f: impl Fn(&GroupElement) -> Qz) -> Result<Self> {
        let k = group.rank();
        let gens = group.generators();
        let gen: Vec<Qz> = gens.iter().map(&f).collect();
        let mut offdiag = Vec::with_capacity(k * k.saturating_sub(1) / 2);
        for i in 0..k {
            for j in i + 1..k {
                offdiag.push(f(&group.add(&gens[i], &gens[j])) - gen[i] - gen[j]);
            }
        }
        let q = Self::new(group.clone(), gen, offdiag)?;
        for x in group.elements() {
            if q.value(&x) != f(&x) {
                return Err(Error::InvalidForm(format!(
                    "values are not quadratic at {x}"
                )));
            }
        }
        Ok(q)
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn gen_values(&self) -> &[Qz] {
        &self.gen
    }

    pub fn offdiag(&self) -> &[Qz] {
        &self.offdiag
    }

    pub fn off(&self, i: usize, j: usize) -> Qz {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.offdiag[pair_index(self.group.rank(), i, j)],
            std::cmp::Ordering::Greater => self.offdiag[pair_index(self.group.rank(), j, i)],
            std::cmp::Ordering::Equal => self.gen[i].mul_int(2),
        }
    }

    /// Common denominator of all stored values.
    pub fn level(&self) -> i64 {
        self.gen
            .iter()
            .chain(&self.offdiag)
            .fold(1, |l, x| l.lcm(&x.den()))
    }

    pub fn value(&self, x: &GroupElement) -> Qz {
        let c = x.coords();
        let k = c.len();
        let mut acc = Qz::ZERO;
        for i in 0..k {
            if c[i] == 0 {
                continue;
            }
            acc += self.gen[i].mul_int(c[i] * c[i]);
            for j in i + 1..k {
                if c[j] != 0 {
                    acc += self.offdiag[pair_index(k, i, j)].mul_int(c[i] * c[j]);
                }
            }
        }
        acc
    }

    /// Numerators of all values over [`QuadraticForm::level`], by element index.
    pub fn value_table(&self) -> (i64, Vec<i64>) {
        let level = self.level();
        let k = self.group.rank();
        let t: Vec<i128> = self.gen.iter().map(|x| x.over(level) as i128).collect();
        let b: Vec<i128> = self.offdiag.iter().map(|x| x.over(level) as i128).collect();
        let l = level as i128;
        let table = (0..self.group.order())
            .map(|idx| {
                let x = self.group.element_at(idx);
                let c: Vec<i128> = x.coords().iter().map(|&v| v as i128).collect();
                let mut acc: i128 = 0;
                for i in 0..k {
                    if c[i] == 0 {
                        continue;
                    }
                    acc += c[i] * c[i] % l * t[i];
                    for j in i + 1..k {
                        acc += c[i] * c[j] % l * b[pair_index(k, i, j)];
                    }
                    acc %= l;
                }
                acc.rem_euclid(l) as i64
            })
            .collect();
        (level, table)
    }

    /// `Bil(q)(x, y) = q(x+y) − q(x) − q(y)`.
    pub fn bil(&self) -> Bicharacter {
        let k = self.group.rank();
        let m = (0..k)
            .map(|i| (0..k).map(|j| self.off(i, j)).collect())
            .collect();
        Bicharacter::on(&self.group, m).expect("bilinear part of a well-formed form")
    }

    /// `x ↦ q(φx)` on the source of `φ`.
    pub fn pullback(&self, phi: &GroupHom) -> Result<QuadraticForm> {
        if phi.target() != &self.group {
            return Err(Error::InvalidForm("pullback along a map into another group".into()));
        }
        let src = phi.source();
        let k = src.rank();
        let cols: Vec<GroupElement> = (0..k).map(|j| phi.column(j)).collect();
        let b = self.bil();
        let gen = cols.iter().map(|c| self.value(c)).collect();
        let mut offdiag = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                offdiag.push(b.eval(&cols[i], &cols[j]));
            }
        }
        QuadraticForm::new(src.clone(), gen, offdiag)
    }

    /// Restriction to `H`, presented on the basis of `H`.
    pub fn restrict(&self, h: &Subgroup) -> Result<QuadraticForm> {
        self.pullback(&h.embedding())
    }

    /// Orthogonal direct sum on `G ⊕ H`.
    pub fn direct_sum(&self, other: &QuadraticForm) -> QuadraticForm {
        let group = self.group.direct_sum(&other.group);
        let (k1, k2) = (self.group.rank(), other.group.rank());
        let k = k1 + k2;
        let mut gen = self.gen.clone();
        gen.extend_from_slice(&other.gen);
        let mut offdiag = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                offdiag.push(if j < k1 {
                    self.off(i, j)
                } else if i >= k1 {
                    other.off(i - k1, j - k1)
                } else {
                    Qz::ZERO
                });
            }
        }
        QuadraticForm::new(group, gen, offdiag).expect("direct sum of well-formed forms")
    }

    pub fn negate(&self) -> QuadraticForm {
        QuadraticForm {
            group: self.group.clone(),
            gen: self.gen.iter().map(|x| -*x).collect(),
            offdiag: self.offdiag.iter().map(|x| -*x).collect(),
        }
    }

    pub fn add(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.group != other.group {
            return Err(Error::InvalidForm("sum of forms on different groups".into()));
        }
        QuadraticForm::new(
            self.group.clone(),
            self.gen.iter().zip(&other.gen).map(|(a, b)| *a + *b).collect(),
            self.offdiag
                .iter()
                .zip(&other.offdiag)
                .map(|(a, b)| *a + *b)
                .collect(),
        )
    }

    pub fn radical(&self) -> Subgroup {
        self.bil().radical()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.radical().is_trivial()
    }

    /// `q` vanishes on all of `H`.
    pub fn is_isotropic(&self, h: &Subgroup) -> bool {
        let gens = h.generators();
        let b = self.bil();
        gens.iter().all(|g| self.value(g).is_zero())
            && gens
                .iter()
                .enumerate()
                .all(|(i, x)| gens[i + 1..].iter().all(|y| b.eval(x, y).is_zero()))
    }

    /// `σ(q) = |G|^{-1/2} Σ exp(2πi q(g))`.
    pub fn gauss_sum(&self) -> Complex64 {
        let (level, table) = self.value_table();
        let mut counts = vec![0u64; level as usize];
        for v in table {
            counts[v as usize] += 1;
        }
        let tau = std::f64::consts::TAU;
        let s: Complex64 = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| Complex64::from_polar(c as f64, tau * v as f64 / level as f64))
            .sum();
        s / (self.group.order() as f64).sqrt()
    }
}

impl fmt::Debug for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q on {}: gen {:?} off {:?}", self.group, self.gen, self.offdiag)
    }
}

/// A quadratic form whose bilinear part is nondegenerate.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MetricGroupSpec")]
pub struct MetricGroup {
    form: QuadraticForm,
}

impl MetricGroup {
    pub fn new(form: QuadraticForm) -> Result<Self> {
        if !form.is_nondegenerate() {
            return Err(Error::InvalidForm("bilinear form is degenerate".into()));
        }
        Ok(MetricGroup { form })
    }

    pub fn group(&self) -> &FinAbGroup {
        self.form.group()
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn gauss_sum(&self) -> Complex64 {
        self.form.gauss_sum()
    }
}

impl fmt::Debug for MetricGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Metric({:?})", self.form)
    }
}

#[derive(Deserialize)]
struct QuadraticFormSpec {
    group: FinAbGroup,
    gen: Vec<Qz>,
    offdiag: Vec<Qz>,
}

impl TryFrom<QuadraticFormSpec> for QuadraticForm {
    type Error = Error;

    fn try_from(r: QuadraticFormSpec) -> Result<Self> {
        QuadraticForm::new(r.group, r.gen, r.offdiag)
    }
}

#[derive(Deserialize)]
struct MetricGroupSpec {
    form: QuadraticForm,
}

impl TryFrom<MetricGroupSpec> for MetricGroup {
    type Error = Error;

    fn try_from(r: MetricGroupSpec) -> Result<Self> {
        MetricGroup::new(r.form)
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

    fn form_c() -> QuadraticForm {
        QuadraticForm::new(g("Z2+Z2"), vec![Qz::HALF, Qz::HALF], vec![Qz::HALF]).unwrap()
    }

    #[test]
    fn well_formedness() {
        assert!(QuadraticForm::new(g("Z2"), vec![q(1, 4)], vec![]).is_ok());
        assert!(QuadraticForm::new(g("Z2"), vec![q(1, 8)], vec![]).is_err());
        assert!(QuadraticForm::new(g("Z3"), vec![q(1, 3)], vec![]).is_ok());
        // 1/6 on Z3 would give q(3e) = 1/2
        assert!(QuadraticForm::new(g("Z3"), vec![q(1, 6)], vec![]).is_err());
        assert!(QuadraticForm::new(g("Z2+Z4"), vec![Qz::ZERO, Qz::ZERO], vec![q(1, 4)]).is_err());
    }

    #[test]
    fn pair_indices() {
        let k = 4;
        let mut n = 0;
        for i in 0..k {
            for j in i + 1..k {
                assert_eq!(pair_index(k, i, j), n);
                n += 1;
            }
        }
    }

    #[test]
    fn semion_bilinear() {
        let s = QuadraticForm::new(g("Z2"), vec![q(1, 4)], vec![]).unwrap();
        assert_eq!(s.bil().value(0, 0), Qz::HALF);
        assert!(s.is_nondegenerate());
        let z = QuadraticForm::zero(&g("Z2+Z2"));
        assert_eq!(z.radical().order(), 4);
    }

    #[test]
    fn form_c_data() {
        let c = form_c();
        let grp = c.group().clone();
        assert_eq!(c.value(&grp.element(&[1, 1]).unwrap()), Qz::HALF);
        assert_eq!(c.bil().eval(&grp.generator(0), &grp.generator(1)), Qz::HALF);
        assert!(c.is_nondegenerate());
        let s = c.gauss_sum();
        assert!((s.re + 1.0).abs() < 1e-12 && s.im.abs() < 1e-12);
        let l = QuadraticForm::zero(&grp);
        assert!((l.gauss_sum().re - 2.0).abs() < 1e-12);
        assert!((QuadraticForm::zero(&g("0")).gauss_sum().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bil_diagonal_is_twice_q() {
        let f = QuadraticForm::new(g("Z4+Z2"), vec![q(3, 8), q(3, 4)], vec![Qz::HALF]).unwrap();
        let b = f.bil();
        for x in f.group().elements() {
            assert_eq!(b.eval(&x, &x), f.value(&x).mul_int(2));
            for y in f.group().elements() {
                let s = f.group().add(&x, &y);
                assert_eq!(b.eval(&x, &y), f.value(&s) - f.value(&x) - f.value(&y));
            }
        }
    }

    #[test]
    fn value_table_matches() {
        let f = QuadraticForm::new(g("Z4+Z6"), vec![q(1, 8), q(1, 12)], vec![Qz::HALF]).unwrap();
        let (level, t) = f.value_table();
        for (i, v) in t.iter().enumerate() {
            assert_eq!(Qz::new(*v, level), f.value(&f.group().element_at(i)));
        }
    }

    #[test]
    fn round_trip_through_values() {
        let f = QuadraticForm::new(g("Z4+Z2+Z2"), vec![q(5, 8), q(1, 4), Qz::HALF], vec![q(1, 2), Qz::ZERO, Qz::HALF]).unwrap();
        let back = QuadraticForm::from_values(f.group(), |x| f.value(x)).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn gauss_sum_multiplicative() {
        let a = QuadraticForm::new(g("Z2"), vec![q(1, 4)], vec![]).unwrap();
        let c = form_c();
        let s = a.direct_sum(&c).gauss_sum();
        let t = a.gauss_sum() * c.gauss_sum();
        assert!((s - t).norm() < 1e-9);
    }
}
