//! Fusion coefficients from the Verlinde formula.
//!
//! Candidates are computed in `F_P` for a prime `P ≡ 1 (mod N)`, with `ζ_N` sent
//! to a primitive `N`-th root of unity, then certified exactly by checking
//! `Σ_c N_{ab}^c S_{cz} = S_{az} S_{bz} / S_{0z}` for every `a, b, z`. Since `S`
//! is invertible this pins down `N_{ab}^c`.

use num_prime::nt_funcs::{factorize64, is_prime64};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ModularData;
use crate::cyclotomic::poly::field;
use crate::cyclotomic::CycloNumber;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTable {
    rank: usize,
    /// `n[(a * rank + b) * rank + c] = N_{ab}^c`.
    n: Vec<u32>,
}

impl FusionTable {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> u32 {
        self.n[(a * self.rank + b) * self.rank + c]
    }

    /// Nonzero `(c, N_{ab}^c)`.
    pub fn product(&self, a: usize, b: usize) -> Vec<(usize, u32)> {
        (0..self.rank)
            .map(|c| (c, self.get(a, b, c)))
            .filter(|&(_, m)| m != 0)
            .collect()
    }

    /// `Σ_c N_{ab}^c d_c = d_a d_b` for all `a, b`.
    pub fn respects_dimensions(&self, dims: &[i64]) -> bool {
        (0..self.rank).all(|a| {
            (0..self.rank).all(|b| {
                let lhs: i64 = (0..self.rank).map(|c| self.get(a, b, c) as i64 * dims[c]).sum();
                lhs == dims[a] * dims[b]
            })
        })
    }
}

/// `N_{ab}^c = Σ_z S_{az} S_{bz} conj(S_{cz}) / S_{0z}`, evaluated exactly.
pub fn verlinde(md: &ModularData, a: usize, b: usize, c: usize) -> Result<u64> {
    let n = md.rank();
    for &i in &[a, b, c] {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
    }
    let mut acc = CycloNumber::zero();
    for z in 0..n {
        let s = &md.s;
        if s[a][z].is_zero() || s[b][z].is_zero() || s[c][z].is_zero() {
            continue;
        }
        let term = &(&(&s[a][z] * &s[b][z]) * &s[c][z].conjugate()) * &s[0][z].inverse()?;
        acc += &term;
    }
    acc.to_integer()
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::Verification(format!("Verlinde sum for ({a},{b},{c}) is {acc}, not a natural number")))
}

/// Sparse integer coefficients of `D · S_{xz}` in the power basis of `ζ_N`.
type Sparse = Vec<(usize, i64)>;

fn sparse_scaled(md: &ModularData) -> Result<Vec<Vec<Sparse>>> {
    md.s.iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let scaled = v.lift_to(md.order).scale(md.total_dim, 1);
                    scaled
                        .coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(j, c)| {
                            c.to_integer()
                                .to_i64()
                                .filter(|_| c.is_integer())
                                .map(|c| (j, c))
                                .ok_or_else(|| Error::Verification(format!("D·S entry {v} is not integral")))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

/// A prime `P ≡ 1 (mod order)` below `2^62` and a primitive `order`-th root of unity mod `P`.
fn prime_with_root(order: u64, skip: usize) -> (u64, u64) {
    let mut k = ((1u64 << 62) - 1) / order;
    let mut found = 0;
    loop {
        let p = k * order + 1;
        if is_prime64(p) {
            if found == skip {
                let factors: Vec<u64> = factorize64(order).into_keys().collect();
                for g in 2.. {
                    let alpha = pow_mod(g, (p - 1) / order, p);
                    if factors.iter().all(|&r| pow_mod(alpha, order / r, p) != 1) {
                        return (p, alpha);
                    }
                }
            }
            found += 1;
        }
        k -= 1;
    }
}

fn candidates(md: &ModularData, h: &[Vec<Sparse>], p: u64, alpha: u64) -> Option<Vec<u64>> {
    let n = md.rank();
    let m = md.order as u64;
    let powers: Vec<u64> = (0..m).map(|j| pow_mod(alpha, j, p)).collect();
    let to_fp = |c: i64| if c >= 0 { c as u64 % p } else { p - (c.unsigned_abs() % p) };
    let image = |s: &Sparse, conj: bool| {
        s.iter().fold(0u64, |acc, &(j, c)| {
            let j = if conj { (m - j as u64) % m } else { j as u64 };
            (acc + mul_mod(to_fp(c), powers[j as usize], p)) % p
        })
    };
    let img: Vec<Vec<u64>> = h.iter().map(|r| r.iter().map(|s| image(s, false)).collect()).collect();
    let img_conj: Vec<Vec<u64>> = h.iter().map(|r| r.iter().map(|s| image(s, true)).collect()).collect();
    // S_az S_bz conj(S_cz) / S_0z = H_az H_bz conj(H_cz) / (D² d_z).
    let d2 = to_fp(md.total_dim * md.total_dim);
    let mut weight = Vec::with_capacity(n);
    for z in 0..n {
        let w = mul_mod(d2, to_fp(md.dims[z]), p);
        if w == 0 {
            return None;
        }
        weight.push(pow_mod(w, p - 2, p));
    }
    let mut out = vec![0u64; n * n * n];
    let mut v = vec![0u64; n];
    for a in 0..n {
        for b in 0..n {
            for z in 0..n {
                v[z] = mul_mod(mul_mod(img[a][z], img[b][z], p), weight[z], p);
            }
            for c in 0..n {
                let mut acc = 0u128;
                for z in 0..n {
                    acc += v[z] as u128 * img_conj[c][z] as u128;
                    if z % 8 == 7 {
                        acc %= p as u128;
                    }
                }
                out[(a * n + b) * n + c] = (acc % p as u128) as u64;
            }
        }
    }
    Some(out)
}

/// All fusion coefficients, certified exactly.
pub fn fusion_table(md: &ModularData) -> Result<FusionTable> {
    let n = md.rank();
    let h = sparse_scaled(md)?;
    let mut raw = None;
    for skip in 0..4 {
        let (p, alpha) = prime_with_root(md.order as u64, skip);
        if let Some(c) = candidates(md, &h, p, alpha) {
            raw = Some((p, c));
            break;
        }
    }
    let (p, raw) = raw.ok_or_else(|| Error::Verification("no usable prime for Verlinde candidates".into()))?;
    let mut table = Vec::with_capacity(raw.len());
    for (idx, &r) in raw.iter().enumerate() {
        let (a, b) = (idx / (n * n), idx / n % n);
        let bound = (md.dims[a] * md.dims[b]) as u64;
        if r > bound {
            let c = idx % n;
            let shown = if r > p / 2 { format!("-{}", p - r) } else { r.to_string() };
            return Err(Error::Verification(format!(
                "Verlinde candidate N_{{{a}{b}}}^{c} = {shown} mod P is not in 0..={bound}"
            )));
        }
        table.push(r as u32);
    }
    let table = FusionTable { rank: n, n: table };
    certify(md, &h, &table)?;
    Ok(table)
}

/// Checks `d_z Σ_c N_{ab}^c H_{cz} = H_{az} H_{bz}` in `Z[ζ_N]`, where `H = D·S`.
fn certify(md: &ModularData, h: &[Vec<Sparse>], table: &FusionTable) -> Result<()> {
    let n = md.rank();
    let f = field(md.order);
    let phi = f.phi;
    let mut acc = vec![0i128; 2 * phi];
    for a in 0..n {
        for b in 0..n {
            let prod = table.product(a, b);
            for z in 0..n {
                acc.iter_mut().for_each(|x| *x = 0);
                acc.resize(2 * phi, 0);
                for &(i, x) in &h[a][z] {
                    for &(j, y) in &h[b][z] {
                        acc[i + j] += x as i128 * y as i128;
                    }
                }
                for &(c, mult) in &prod {
                    let w = mult as i128 * md.dims[z] as i128;
                    for &(j, y) in &h[c][z] {
                        acc[j] -= w * y as i128;
                    }
                }
                let ok = f.reduce_i128(&mut acc).is_some() && acc.iter().all(|&x| x == 0);
                if !ok {
                    return Err(Error::Verification(format!(
                        "fusion certificate fails at a = {a}, b = {b}, z = {z}"
                    )));
                }
            }
        }
    }
    Ok(())
}
