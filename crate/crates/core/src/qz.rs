//! Elements of ℚ/ℤ, used as exponents of roots of unity.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A value `num/den` in ℚ/ℤ, standing for the root of unity `exp(2πi·num/den)`.
///
/// Always reduced: `gcd(num, den) = 1` and `0 <= num < den`; zero is `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Qz {
    num: i64,
    den: i64,
}

impl Qz {
    pub const ZERO: Qz = Qz { num: 0, den: 1 };
    pub const HALF: Qz = Qz { num: 1, den: 2 };

    pub fn new(num: i64, den: i64) -> Qz {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        if num == 0 {
            den = 1;
        }
        Qz { num, den }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    /// Order in ℚ/ℤ, which is the denominator.
    pub fn order(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn mul_int(self, k: i64) -> Qz {
        let k = k.rem_euclid(self.den) as i128;
        Qz::new(((self.num as i128 * k) % self.den as i128) as i64, self.den)
    }

    /// Numerator of `self` over the common denominator `level` (which must be
    /// a multiple of `den`).
    pub fn over(self, level: i64) -> i64 {
        debug_assert_eq!(level % self.den, 0);
        self.num * (level / self.den)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Qz {
    fn default() -> Self {
        Qz::ZERO
    }
}

impl Add for Qz {
    type Output = Qz;
    fn add(self, rhs: Qz) -> Qz {
        let l = self.den.lcm(&rhs.den);
        Qz::new(self.over(l) + rhs.over(l), l)
    }
}

impl Sub for Qz {
    type Output = Qz;
    fn sub(self, rhs: Qz) -> Qz {
        self + (-rhs)
    }
}

impl Neg for Qz {
    type Output = Qz;
    fn neg(self) -> Qz {
        Qz::new(-self.num, self.den)
    }
}

impl AddAssign for Qz {
    fn add_assign(&mut self, rhs: Qz) {
        *self = *self + rhs;
    }
}

impl SubAssign for Qz {
    fn sub_assign(&mut self, rhs: Qz) {
        *self = *self - rhs;
    }
}

impl Sum for Qz {
    fn sum<I: Iterator<Item = Qz>>(iter: I) -> Qz {
        iter.fold(Qz::ZERO, |a, b| a + b)
    }
}

// Ordered by value in [0, 1).
impl Ord for Qz {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Qz {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Qz {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || Error::parse(format!("bad Q/Z value {s:?}"));
        match t.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Qz::new(n, d))
            }
            None => {
                let n: i64 = t.parse().map_err(|_| bad())?;
                Ok(Qz::new(n, 1))
            }
        }
    }
}

impl Serialize for Qz {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Qz {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        assert_eq!(Qz::new(3, 4), Qz::new(-1, 4));
        assert_eq!(Qz::new(2, 4), Qz::HALF);
        assert_eq!(Qz::new(5, 5), Qz::ZERO);
        assert_eq!(Qz::new(1, -3), Qz::new(2, 3));
        assert_eq!(Qz::ZERO.den(), 1);
    }

    #[test]
    fn arithmetic_and_order() {
        let i = Qz::new(1, 4);
        assert_eq!(i + i, Qz::HALF);
        assert_eq!(i + i + i + i, Qz::ZERO);
        assert_eq!(-i, Qz::new(3, 4));
        assert_eq!(i.order(), 4);
        assert_eq!(Qz::new(1, 6) + Qz::new(1, 3), Qz::HALF);
        assert_eq!(i.mul_int(-1), Qz::new(3, 4));
        assert_eq!(i.mul_int(9), i);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("1/4".parse::<Qz>().unwrap(), Qz::new(1, 4));
        assert_eq!("0".parse::<Qz>().unwrap(), Qz::ZERO);
        assert_eq!("-1/2".parse::<Qz>().unwrap(), Qz::HALF);
        assert!("1/0".parse::<Qz>().is_err());
        assert!("x".parse::<Qz>().is_err());
        assert_eq!(Qz::new(3, 4).to_string(), "3/4");
        assert!(Qz::new(1, 4) < Qz::HALF);
    }
}
