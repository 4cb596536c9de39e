//! Cyclotomic polynomials and reduction of integer polynomials modulo them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

/// Data for reducing polynomials modulo `Φ_order`.
#[derive(Debug)]
pub(crate) struct Field {
    /// Degree of `Φ_order`, i.e. `φ(order)`.
    pub phi: usize,
    /// Nonzero coefficients `(j, c_j)` of `Φ_order` below the leading term.
    pub lower: Vec<(usize, i64)>,
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Coefficients of `Φ_n`, lowest degree first.
pub(crate) fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let n = n as usize;
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num: Vec<i128> = vec![0; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in divisors(n as u32) {
        if d as usize == n {
            continue;
        }
        let div = cyclotomic_poly(d);
        num = exact_div_monic(&num, &div);
    }
    num.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

fn exact_div_monic(num: &[i128], den: &[i64]) -> Vec<i128> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quo = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj as i128;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

pub(crate) fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<Field>>>> = OnceLock::new();

pub(crate) fn field(order: u32) -> Arc<Field> {
    let cache = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&order) {
        return f.clone();
    }
    let poly = cyclotomic_poly(order);
    let phi = poly.len() - 1;
    debug_assert_eq!(phi, euler_phi(order));
    let lower = poly[..phi]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .collect();
    let f = Arc::new(Field { phi, lower });
    cache.lock().unwrap().entry(order).or_insert(f).clone()
}

impl Field {
    /// Reduces `c` in place modulo `Φ`, truncating it to length `phi`.
    /// Returns `None` if an intermediate value overflows.
    pub fn reduce_i128(&self, c: &mut Vec<i128>) -> Option<()> {
        let phi = self.phi;
        for k in (phi..c.len()).rev() {
            let top = c[k];
            if top == 0 {
                continue;
            }
            let base = k - phi;
            for &(j, pj) in &self.lower {
                let slot = &mut c[base + j];
                *slot = slot.checked_sub(top.checked_mul(pj as i128)?)?;
            }
        }
        c.resize(phi, 0);
        Some(())
    }

    pub fn reduce_big(&self, c: &mut Vec<BigInt>) {
        let phi = self.phi;
        for k in (phi..c.len()).rev() {
            if c[k].is_zero() {
                continue;
            }
            let top = std::mem::take(&mut c[k]);
            let base = k - phi;
            for &(j, pj) in &self.lower {
                c[base + j] -= &top * pj;
            }
        }
        c.resize(phi, BigInt::zero());
    }

    /// `Φ` as a dense coefficient vector (lowest first), including the leading 1.
    pub fn dense(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.phi + 1];
        for &(j, c) in &self.lower {
            v[j] = c;
        }
        v[self.phi] = 1;
        v
    }
}
