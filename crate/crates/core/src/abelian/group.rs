use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::smith::smith;
use crate::error::{Error, Result};

/// A finite abelian group `Z/n₁ ⊕ … ⊕ Z/n_k` in a fixed presentation.
///
/// The presentation is kept as given; [`FinAbGroup::canonicalize`] returns the
/// invariant-factor form. The empty factor list is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    factors: Vec<i64>,
}

/// Coordinates of an element, entry `i` reduced mod factor `i` of its group.
///
/// Elements do not carry their group; every operation goes through the
/// [`FinAbGroup`] that reduces them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub(crate) Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    /// Parses `(1,0,1)`; `()` is the element of the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(format!("element literal {s:?} must be parenthesized")))?;
        if inner.trim().is_empty() {
            return Ok(GroupElement(Vec::new()));
        }
        inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::parse(format!("bad coordinate {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(GroupElement)
    }
}

impl FinAbGroup {
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        if let Some(&n) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("factor {n} is below 2")));
        }
        let order = factors
            .iter()
            .try_fold(1i64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::InvalidGroup("order overflows".into()))?;
        if order > 1 << 40 {
            return Err(Error::InvalidGroup(format!("order {order} is absurdly large")));
        }
        Ok(FinAbGroup { factors })
    }

    pub fn trivial() -> Self {
        FinAbGroup { factors: Vec::new() }
    }

    pub fn cyclic(n: i64) -> Self {
        if n == 1 {
            return Self::trivial();
        }
        Self::new(vec![n]).expect("cyclic order must be positive")
    }

    /// Drops factors equal to 1; rejects nonpositive ones.
    pub fn from_orders(orders: &[i64]) -> Result<Self> {
        if orders.iter().any(|&n| n < 1) {
            return Err(Error::InvalidGroup("nonpositive factor".into()));
        }
        Self::new(orders.iter().copied().filter(|&n| n > 1).collect())
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<i64>() as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self) -> i64 {
        self.factors.iter().fold(1, |a, b| a.lcm(b))
    }

    /// Direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        FinAbGroup { factors }
    }

    /// Invariant-factor normal form `d₁ | d₂ | …`.
    pub fn canonicalize(&self) -> FinAbGroup {
        let k = self.rank();
        let rows: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { self.factors[i] } else { 0 }).collect())
            .collect();
        let s = smith(&rows, k);
        FinAbGroup {
            factors: s.d.into_iter().filter(|&d| d > 1).collect(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.factors.windows(2).all(|w| w[1] % w[0] == 0)
    }

    pub fn is_isomorphic(&self, other: &FinAbGroup) -> bool {
        self.canonicalize() == other.canonicalize()
    }

    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        Ok(self.reduce(coords.to_vec()))
    }

    pub(crate) fn reduce(&self, mut c: Vec<i64>) -> GroupElement {
        for (x, &n) in c.iter_mut().zip(&self.factors) {
            *x = x.rem_euclid(n);
        }
        GroupElement(c)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Standard generator `e_i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        c[i] = 1;
        GroupElement(c)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &n)| ((x as i128 * k as i128).rem_euclid(n as i128)) as i64)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> i64 {
        a.0.iter()
            .zip(&self.factors)
            .fold(1, |acc, (&x, &n)| acc.lcm(&(n / x.gcd(&n))))
    }

    /// Mixed-radix index; index order equals lexicographic coordinate order.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        self.encode(&a.0)
    }

    pub(crate) fn encode(&self, c: &[i64]) -> usize {
        c.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&x, &n)| acc * n as usize + x as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut c = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let n = self.factors[i] as usize;
            c[i] = (idx % n) as i64;
            idx /= n;
        }
        GroupElement(c)
    }

    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0usize;
        let mut mult = 1usize;
        for &n in self.factors.iter().rev() {
            let n = n as usize;
            let s = (a % n + b % n) % n;
            out += s * mult;
            mult *= n;
            a /= n;
            b /= n;
        }
        out
    }

    pub(crate) fn neg_idx(&self, a: usize) -> usize {
        let mut a = a;
        let mut out = 0usize;
        let mut mult = 1usize;
        for &n in self.factors.iter().rev() {
            let n = n as usize;
            let x = a % n;
            out += ((n - x) % n) * mult;
            mult *= n;
            a /= n;
        }
        out
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// `n`-torsion subgroup elements `{g : n·g = 0}` in lexicographic order.
    pub fn torsion_elements(&self, n: i64) -> Vec<GroupElement> {
        self.elements()
            .filter(|g| self.scale(n, g).is_zero())
            .collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (i, n) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "Z{n}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FinAbGroup {
    type Err = Error;

    /// Parses `Z2+Z4`; `0`, `1` and `trivial` denote the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if matches!(t, "0" | "1" | "trivial" | "Z1") {
            return Ok(FinAbGroup::trivial());
        }
        let mut factors = Vec::new();
        for (pos, part) in t.split('+').enumerate() {
            let p = part.trim();
            let n = p
                .strip_prefix('Z')
                .and_then(|d| d.parse::<i64>().ok())
                .ok_or_else(|| Error::Parse {
                    message: format!("bad cyclic factor {p:?} in group literal {s:?}"),
                    line: 1,
                    column: 1 + t.split('+').take(pos).map(|x| x.len() + 1).sum::<usize>(),
                })?;
            if n >= 2 {
                factors.push(n);
            } else if n < 1 {
                return Err(Error::parse(format!("factor Z{n} in {s:?}")));
            }
        }
        FinAbGroup::new(factors)
    }
}

impl Serialize for FinAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FinAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
