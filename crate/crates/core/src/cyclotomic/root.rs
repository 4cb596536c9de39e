//! Roots of unity kept as exact rational exponents.

use std::fmt;
use std::ops::{Div, Mul};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::CycloNumber;

/// `exp(2πi·num/den)` with `0 ≤ num < den` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    /// `ζ_n^s`.
    pub fn new(s: i64, n: u64) -> Self {
        assert!(n >= 1, "root of unity order must be positive");
        let s = s.rem_euclid(n as i64) as u64;
        let g = s.gcd(&n);
        RootOfUnity { num: s / g, den: n / g }
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// `(num, den)` with the value `exp(2πi·num/den)`.
    pub fn fraction(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    /// `k` with `self = ζ_n^k`, if the order divides `n`.
    pub fn exponent_at(&self, n: u64) -> Option<u64> {
        (n % self.den == 0).then(|| self.num * (n / self.den))
    }

    pub fn inverse(&self) -> Self {
        Self::new(-(self.num as i64), self.den)
    }

    pub fn pow(&self, e: i64) -> Self {
        let den = self.den as i128;
        let s = (self.num as i128 * e as i128).rem_euclid(den);
        Self::new(s as i64, self.den)
    }

    pub fn to_cyclo(&self) -> CycloNumber {
        CycloNumber::root_of_unity(self.num as i64, self.den as u32)
    }

    /// The value in `Q(ζ_n)`, if it lies there.
    pub fn to_cyclo_at(&self, n: u32) -> Option<CycloNumber> {
        let k = self.exponent_at(n as u64)?;
        Some(CycloNumber::root_of_unity(k as i64, n))
    }

    pub fn to_float(&self) -> num_complex::Complex64 {
        let t = 2.0 * std::f64::consts::PI * self.num as f64 / self.den as f64;
        num_complex::Complex64::from_polar(1.0, t)
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;
    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let l = self.den.lcm(&rhs.den);
        let s = self.num * (l / self.den) + rhs.num * (l / rhs.den);
        RootOfUnity::new((s % l) as i64, l)
    }
}

impl Div for RootOfUnity {
    type Output = RootOfUnity;
    fn div(self, rhs: RootOfUnity) -> RootOfUnity {
        self * rhs.inverse()
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "1")
        } else {
            write!(f, "exp(2*pi*i*{}/{})", self.num, self.den)
        }
    }
}
