//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycloNumber`] is stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` of
//! `Q[x]/Φ_N(x)` as integer numerators over one common positive denominator,
//! reduced by their gcd. Small values live in machine integers; anything that
//! would overflow is promoted to `BigInt`, so results never depend on which
//! path was taken.

mod accumulate;
pub(crate) mod poly;
mod root;
mod serde_impl;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use accumulate::PhaseSum;
pub use root::RootOfUnity;

use crate::error::{Error, Result};
use poly::{euler_phi, field};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An exact element of `Q(ζ_N)` in canonical form.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    order: u32,
    repr: Repr,
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    let l = (a as u64).lcm(&(b as u64));
    u32::try_from(l).expect("cyclotomic order overflow")
}

fn bits(x: i64) -> u32 {
    64 - x.unsigned_abs().leading_zeros()
}

impl CycloNumber {
    fn from_i128(order: u32, mut num: Vec<i128>, mut den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            den = -den;
            for c in num.iter_mut() {
                *c = -*c;
            }
        }
        let mut g = den;
        for &c in &num {
            if g == 1 {
                break;
            }
            if c != 0 {
                g = g.gcd(&c);
            }
        }
        if g != 1 {
            den /= g;
            for c in num.iter_mut() {
                *c /= g;
            }
        }
        if num.iter().all(|&c| c == 0) {
            den = 1;
        }
        let fits = i64::try_from(den).is_ok() && num.iter().all(|&c| i64::try_from(c).is_ok());
        let repr = if fits {
            Repr::Small {
                num: num.into_iter().map(|c| c as i64).collect(),
                den: den as i64,
            }
        } else {
            Repr::Big {
                num: num.into_iter().map(BigInt::from).collect(),
                den: BigInt::from(den),
            }
        };
        CycloNumber { order, repr }
    }

    fn from_big(order: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                *c /= &g;
            }
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        let small: Option<Vec<i64>> = num.iter().map(ToPrimitive::to_i64).collect();
        let repr = match (small, den.to_i64()) {
            (Some(num), Some(den)) => Repr::Small { num, den },
            _ => Repr::Big { num, den },
        };
        CycloNumber { order, repr }
    }

    /// Builds a value from a (not necessarily reduced) polynomial in `ζ_order`
    /// with integer coefficients, divided by `den`.
    pub fn from_poly(order: u32, coeffs: &[i64], den: i64) -> Self {
        assert!(order >= 1, "order must be positive");
        let f = field(order);
        let mut c: Vec<i128> = vec![0; coeffs.len().max(f.phi)];
        for (j, &x) in coeffs.iter().enumerate() {
            c[j] = x as i128;
        }
        match f.reduce_i128(&mut c) {
            Some(()) => Self::from_i128(order, c, den as i128),
            None => {
                let mut b: Vec<BigInt> = coeffs.iter().map(|&x| BigInt::from(x)).collect();
                b.resize(b.len().max(f.phi), BigInt::zero());
                f.reduce_big(&mut b);
                Self::from_big(order, b, BigInt::from(den))
            }
        }
    }

    /// Builds a value from power-basis coordinates (length `φ(order)`).
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidInput("cyclotomic order must be positive".into()));
        }
        let phi = euler_phi(order);
        if coeffs.len() != phi {
            return Err(Error::InvalidInput(format!(
                "order {order} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::from_big(order, num, den))
    }

    pub fn zero() -> Self {
        Self::from_i128(1, vec![0], 1)
    }

    pub fn one() -> Self {
        Self::from_i128(1, vec![1], 1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(1, vec![n as i128], 1)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i128(1, vec![num as i128], den as i128)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_big(1, vec![r.numer().clone()], r.denom().clone())
    }

    /// `ζ_N^s`, with `s` reduced mod `N`.
    pub fn root_of_unity(s: i64, n: u32) -> Self {
        assert!(n >= 1, "root of unity order must be positive");
        let k = s.rem_euclid(n as i64) as usize;
        let mut c = vec![0i64; k + 1];
        c[k] = 1;
        Self::from_poly(n, &c, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { num, den } => (
                num.iter().map(|&c| BigInt::from(c)).collect(),
                BigInt::from(*den),
            ),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    /// Power-basis coordinates as exact rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let (num, den) = self.big_parts();
        num.into_iter()
            .map(|c| BigRational::new(c, den.clone()))
            .collect()
    }

    /// The common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.big_parts().1
    }

    /// The value as a rational number, if it lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        let (num, den) = self.big_parts();
        if num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(num[0].clone(), den))
        } else {
            None
        }
    }

    /// The value as a machine integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        let r = self.to_rational()?;
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Re-expresses the value in `Q(ζ_target)`; `target` must be a multiple of the order.
    pub fn lift_to(&self, target: u32) -> Self {
        assert!(
            target % self.order == 0,
            "cannot lift order {} to {target}",
            self.order
        );
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        self.substitute(target, |j| j * step)
    }

    /// Maps `ζ_order^j ↦ ζ_target^{idx(j)}` and reduces.
    fn substitute(&self, target: u32, idx: impl Fn(usize) -> usize) -> Self {
        let f = field(target);
        let len = target as usize;
        match &self.repr {
            Repr::Small { num, den } => {
                let mut c = vec![0i128; len.max(f.phi)];
                for (j, &x) in num.iter().enumerate() {
                    if x != 0 {
                        c[idx(j) % len] += x as i128;
                    }
                }
                if f.reduce_i128(&mut c).is_some() {
                    return Self::from_i128(target, c, *den as i128);
                }
            }
            Repr::Big { .. } => {}
        }
        let (num, den) = self.big_parts();
        let mut c = vec![BigInt::zero(); len.max(f.phi)];
        for (j, x) in num.iter().enumerate() {
            if !x.is_zero() {
                c[idx(j) % len] += x;
            }
        }
        f.reduce_big(&mut c);
        Self::from_big(target, c, den)
    }

    /// Both values at order `lcm(order(a), order(b))`.
    pub fn lift_to_common_order(a: &Self, b: &Self) -> (Self, Self) {
        let l = lcm_u32(a.order, b.order);
        (a.lift_to(l), b.lift_to(l))
    }

    /// The Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the order).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.order as i64;
        assert!(k.gcd(&n) == 1, "{k} is not a unit mod {n}");
        let k = k.rem_euclid(n) as usize;
        self.substitute(self.order, |j| j * k)
    }

    /// Complex conjugate: `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(-1)
    }

    /// Multiplies by `ζ_order^s` (no lifting).
    pub fn mul_root(&self, s: i64) -> Self {
        let n = self.order as usize;
        let s = s.rem_euclid(n as i64) as usize;
        if s == 0 {
            return self.clone();
        }
        self.substitute(self.order, |j| j + s)
    }

    /// Multiplies by the root of unity `r`, lifting if needed.
    pub fn mul_unit(&self, r: RootOfUnity) -> Self {
        let target = lcm_u32(self.order, r.order() as u32);
        let lifted = self.lift_to(target);
        let s = r.exponent_at(target as u64).expect("order divides lcm");
        lifted.mul_root(s as i64)
    }

    /// Multiplies by the rational `num/den`.
    pub fn scale(&self, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        if let Repr::Small { num: v, den: d } = &self.repr {
            let d2 = (*d as i128) * den as i128;
            let v2: Vec<i128> = v.iter().map(|&x| x as i128 * num as i128).collect();
            return Self::from_i128(self.order, v2, d2);
        }
        let (v, d) = self.big_parts();
        let v2 = v.into_iter().map(|x| x * num).collect();
        Self::from_big(self.order, v2, d * den)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        let (v, d) = self.big_parts();
        let v2 = v.into_iter().map(|x| x * r.numer()).collect();
        Self::from_big(self.order, v2, d * r.denom())
    }

    fn add_same(&self, other: &Self, sign: i64) -> Self {
        debug_assert_eq!(self.order, other.order);
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.repr, &other.repr)
        {
            let da = *da as i128;
            let db = *db as i128;
            let l = da.lcm(&db);
            let (fa, fb) = (l / da, (l / db) * sign as i128);
            // |a_i fa| and |b_i fb| are below 2^126, so the sum fits.
            let num = a
                .iter()
                .zip(b)
                .map(|(&x, &y)| x as i128 * fa + y as i128 * fb)
                .collect();
            return Self::from_i128(self.order, num, l);
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let l = da.lcm(&db);
        let fa = &l / &da;
        let fb = (&l / &db) * sign;
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| x * &fa + y * &fb)
            .collect();
        Self::from_big(self.order, num, l)
    }

    fn mul_same(&self, other: &Self) -> Self {
        debug_assert_eq!(self.order, other.order);
        let f = field(self.order);
        let phi = f.phi;
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.repr, &other.repr)
        {
            let nz_a = a.iter().filter(|&&x| x != 0).count();
            let nz_b = b.iter().filter(|&&x| x != 0).count();
            let (a, b, nz) = if nz_a <= nz_b { (a, b, nz_a) } else { (b, a, nz_b) };
            let ma = a.iter().map(|&x| bits(x)).max().unwrap_or(0);
            let mb = b.iter().map(|&x| bits(x)).max().unwrap_or(0);
            let mterms = 64 - (nz as u64).leading_zeros();
            if ma + mb + mterms <= 120 {
                let mut c = vec![0i128; 2 * phi];
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let x = x as i128;
                    for (slot, &y) in c[i..i + phi].iter_mut().zip(b) {
                        *slot += x * y as i128;
                    }
                }
                if f.reduce_i128(&mut c).is_some() {
                    return Self::from_i128(self.order, c, *da as i128 * *db as i128);
                }
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let mut c = vec![BigInt::zero(); 2 * phi];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        f.reduce_big(&mut c);
        Self::from_big(self.order, c, da * db)
    }

    fn binary(&self, other: &Self, op: impl Fn(&Self, &Self) -> Self) -> Self {
        if self.order == other.order {
            op(self, other)
        } else {
            let (a, b) = Self::lift_to_common_order(self, other);
            op(&a, &b)
        }
    }

    /// Multiplicative inverse.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            let (n, d) = (r.numer().clone(), r.denom().clone());
            let mut num = vec![BigInt::zero(); euler_phi(self.order)];
            num[0] = d;
            return Ok(Self::from_big(self.order, num, n));
        }
        let f = field(self.order);
        let modulus: Vec<BigRational> = f
            .dense()
            .into_iter()
            .map(|c| BigRational::from_integer(c.into()))
            .collect();
        let a: Vec<BigRational> = self.coeffs();
        let s = poly_inverse_mod(&a, &modulus);
        let inv = Self::from_coeffs(self.order, pad(s, f.phi))?;
        debug_assert!((&inv * self).is_one());
        Ok(inv)
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&c| c == 0),
            Repr::Big { .. } => false,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one().lift_to(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `Σ_k x_k y_k`, reducing modulo `Φ` once instead of once per term.
    pub fn dot<'a>(xs: impl IntoIterator<Item = &'a Self>, ys: impl IntoIterator<Item = &'a Self>) -> Self {
        let pairs: Vec<(&Self, &Self)> = xs
            .into_iter()
            .zip(ys)
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .collect();
        if pairs.is_empty() {
            return Self::zero();
        }
        let order = pairs
            .iter()
            .fold(1u32, |acc, (x, y)| lcm_u32(acc, lcm_u32(x.order, y.order)));
        if let Some(v) = Self::dot_small(order, &pairs) {
            return v;
        }
        pairs.iter().fold(Self::zero(), |acc, (x, y)| acc + *x * *y)
    }

    fn dot_small(order: u32, pairs: &[(&Self, &Self)]) -> Option<Self> {
        let f = field(order);
        let phi = f.phi;
        let mut den: i128 = 1;
        let mut lifted = Vec::with_capacity(pairs.len());
        for (x, y) in pairs {
            let x = x.lift_to(order);
            let y = y.lift_to(order);
            match (&x.repr, &y.repr) {
                (Repr::Small { den: dx, .. }, Repr::Small { den: dy, .. }) => {
                    let d = (*dx as i128).checked_mul(*dy as i128)?;
                    den = den.lcm(&d);
                    if den > 1 << 62 {
                        return None;
                    }
                }
                _ => return None,
            }
            lifted.push((x, y));
        }
        let mut acc = vec![0i128; 2 * phi];
        for (x, y) in &lifted {
            let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&x.repr, &y.repr)
            else {
                unreachable!()
            };
            let factor = den / (*da as i128 * *db as i128);
            let ma = a.iter().map(|&v| bits(v)).max().unwrap_or(0);
            let mb = b.iter().map(|&v| bits(v)).max().unwrap_or(0);
            let mf = 128 - factor.unsigned_abs().leading_zeros();
            // Each slot receives at most phi products per pair.
            if ma + mb + mf + 8 + 8 > 110 {
                return None;
            }
            for (i, &u) in a.iter().enumerate() {
                if u == 0 {
                    continue;
                }
                let u = u as i128 * factor;
                for (slot, &v) in acc[i..i + phi].iter_mut().zip(b) {
                    *slot = slot.checked_add(u * v as i128)?;
                }
            }
        }
        f.reduce_i128(&mut acc)?;
        Some(Self::from_i128(order, acc, den))
    }

    /// `Σ_k c_k x_k` for integer `c_k`.
    pub fn linear_combination<'a>(terms: impl IntoIterator<Item = (i64, &'a Self)>) -> Self {
        let terms: Vec<(i64, &Self)> = terms.into_iter().filter(|(c, x)| *c != 0 && !x.is_zero()).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let order = terms.iter().fold(1u32, |acc, (_, x)| lcm_u32(acc, x.order));
        let phi = euler_phi(order);
        let mut den: i128 = 1;
        let mut acc = vec![0i128; phi];
        let mut ok = true;
        let lifted: Vec<(i64, Self)> = terms.iter().map(|(c, x)| (*c, x.lift_to(order))).collect();
        for (_, x) in &lifted {
            match &x.repr {
                Repr::Small { den: d, .. } => {
                    den = den.lcm(&(*d as i128));
                    if den > 1 << 62 {
                        ok = false;
                    }
                }
                Repr::Big { .. } => ok = false,
            }
        }
        if ok {
            'outer: for (c, x) in &lifted {
                let Repr::Small { num, den: d } = &x.repr else { unreachable!() };
                let factor = (den / *d as i128).checked_mul(*c as i128);
                let Some(factor) = factor else {
                    ok = false;
                    break;
                };
                for (slot, &v) in acc.iter_mut().zip(num) {
                    match factor.checked_mul(v as i128).and_then(|t| slot.checked_add(t)) {
                        Some(s) => *slot = s,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        if ok {
            return Self::from_i128(order, acc, den);
        }
        lifted
            .iter()
            .fold(Self::zero(), |acc, (c, x)| acc + x.scale(*c, 1))
    }

    /// Numerical image under `ζ_N ↦ e^{2πi/N}`. For display only.
    pub fn to_float(&self) -> Complex64 {
        let n = self.order as f64;
        let (num, den) = self.big_parts();
        let den = den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::from_polar(c, 2.0 * std::f64::consts::PI * j as f64 / n);
        }
        acc / den
    }

    /// Compares with a canonical order first, used for deterministic interning.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (a, b) = Self::lift_to_common_order(self, other);
        let (na, da) = a.big_parts();
        let (nb, db) = b.big_parts();
        da.cmp(&db).then_with(|| na.cmp(&nb))
    }
}

fn pad(mut v: Vec<BigRational>, len: usize) -> Vec<BigRational> {
    v.resize(len, BigRational::zero());
    v
}

fn trim(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() <= db {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut c = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        c[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        c[i] -= x;
    }
    trim(&mut c);
    c
}

/// Extended Euclid: `s` with `a·s ≡ 1 (mod m)`, for `a` coprime to `m`.
fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant since Φ is irreducible.
    let c = r0[0].clone();
    let s: Vec<BigRational> = s0.into_iter().map(|x| x / &c).collect();
    poly_divmod(&s, m).1
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.repr == other.repr;
        }
        let (a, b) = Self::lift_to_common_order(self, other);
        a.repr == b.repr
    }
}

impl Eq for CycloNumber {}

impl Default for CycloNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycloNumber {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<RootOfUnity> for CycloNumber {
    fn from(r: RootOfUnity) -> Self {
        r.to_cyclo()
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        self.binary(rhs, |a, b| a.add_same(b, 1))
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        self.binary(rhs, |a, b| a.add_same(b, -1))
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        self.binary(rhs, CycloNumber::mul_same)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $f(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $f(self, rhs: &CycloNumber) -> CycloNumber {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycloNumber> for CycloNumber {
    fn add_assign(&mut self, rhs: &CycloNumber) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycloNumber> for CycloNumber {
    fn sub_assign(&mut self, rhs: &CycloNumber) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycloNumber> for CycloNumber {
    fn mul_assign(&mut self, rhs: &CycloNumber) {
        *self = &*self * rhs;
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        self.scale(-1, 1)
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        self.scale(-1, 1)
    }
}

impl std::iter::Sum for CycloNumber {
    fn sum<I: Iterator<Item = CycloNumber>>(iter: I) -> Self {
        iter.fold(CycloNumber::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for CycloNumber {
    /// Power-basis form, e.g. `1/55 - 2/55*z^3 (z = zeta_275)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (j, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{j}")?,
                (_, false) => write!(f, "{mag}*z^{j}")?,
            }
        }
        write!(f, " (z = zeta_{})", self.order)
    }
}
