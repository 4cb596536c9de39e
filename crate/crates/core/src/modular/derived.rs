//! Invariants computed from `(S, T)` and fusion rules: two-strand closures,
//! R-symbol traces, Frobenius-Schur indicators and lens spaces.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::fusion::FusionTable;
use super::ModularData;
use crate::braid::{framed_invariant, BraidWord, ColoredBraid};
use crate::cyclotomic::{CycloNumber, RootOfUnity};
use crate::double::DoubleModel;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    /// `σ_1^{2n}`, a two-component link.
    Even,
    /// `σ_1^{2n+1}`, a knot.
    Odd,
}

/// `ρ(θ)^n` as a root of unity, for `ρ = θ_c/(θ_a θ_b)` or `θ_c/θ_a²`.
fn ratio_pow(md: &ModularData, c: usize, a: usize, b: usize, n: i64) -> RootOfUnity {
    (md.twists[c] / (md.twists[a] * md.twists[b])).pow(n)
}

/// Even: `Σ_c d_c N_{ab}^c (θ_c/(θ_a θ_b))^n`. Odd (`b = a`): `Σ_c d_c r(a,c) (θ_c/θ_a²)^n`
/// with `r` from [`r_symbol_sum`].
pub fn two_strand_closure(
    md: &ModularData,
    fusion: &FusionTable,
    a: usize,
    b: usize,
    n: i64,
    parity: Parity,
) -> Result<CycloNumber> {
    match parity {
        Parity::Even => Ok(fusion
            .product(a, b)
            .into_iter()
            .map(|(c, m)| CycloNumber::from_integer(m as i64 * md.dims[c]).mul_unit(ratio_pow(md, c, a, b, n)))
            .sum()),
        Parity::Odd => {
            if a != b {
                return Err(Error::InvalidInput("a two-strand knot has a single color".into()));
            }
            let r = r_symbol_sums(md, fusion, a)?;
            Ok((0..md.rank())
                .filter(|&c| !r[c].is_zero())
                .map(|c| r[c].scale(md.dims[c], 1).mul_unit(ratio_pow(md, c, a, a, n)))
                .sum())
        }
    }
}

/// The same invariant from the braid engine: the framed closure of `σ_1^{2n}` or `σ_1^{2n+1}`.
pub fn two_strand_engine(model: &DoubleModel, a: usize, b: usize, n: i64, parity: Parity) -> Result<CycloNumber> {
    let len = match parity {
        Parity::Even => 2 * n,
        Parity::Odd => 2 * n + 1,
    };
    let letter = if len >= 0 { 1 } else { -1 };
    let word = BraidWord::new(2, vec![letter; len.unsigned_abs() as usize])?;
    let colored = ColoredBraid::new(model, word, vec![a, b])?;
    Ok(framed_invariant(model, &colored))
}

/// `r(a,c) = Σ_μ [R^{aa}_c]_{μμ}` for every `c`, as
/// `Σ_{x,y,z} θ_y²/(θ_a θ_x²) · S_{0y} S_{az} S*_{xz} S*_{cx} S*_{yz} / S_{0z}`.
///
/// The `z`-sum is `N_{a x̄}^y` by Verlinde (using `S_{x̄z} = S*_{xz}`), leaving
/// `r(a,c) = (1/D) Σ_x S*_{cx} Σ_y N_{a x̄}^y d_y θ_y² / (θ_a θ_x²)`.
pub fn r_symbol_sums(md: &ModularData, fusion: &FusionTable, a: usize) -> Result<Vec<CycloNumber>> {
    let n = md.rank();
    let duals = md
        .duals()
        .ok_or_else(|| Error::Verification("S² is not a permutation matrix".into()))?;
    let t = &md.twists;
    let q: Vec<CycloNumber> = (0..n)
        .map(|x| {
            fusion
                .product(a, duals[x])
                .into_iter()
                .map(|(y, m)| {
                    CycloNumber::from_integer(m as i64 * md.dims[y]).mul_unit(t[y].pow(2) / (t[a] * t[x].pow(2)))
                })
                .sum()
        })
        .collect();
    Ok((0..n)
        .map(|c| {
            let conj: Vec<CycloNumber> = md.s[c].iter().map(CycloNumber::conjugate).collect();
            CycloNumber::dot(conj.iter(), q.iter()).scale(1, md.total_dim)
        })
        .collect())
}

pub fn r_symbol_sum(md: &ModularData, fusion: &FusionTable, a: usize, c: usize) -> Result<CycloNumber> {
    Ok(r_symbol_sums(md, fusion, a)?.swap_remove(c))
}

/// `Λ_{a,c} = r(a,c) θ_a / θ_c^{1/2}` with `θ_c^{1/2} = e^{πi s/N}` for `θ_c = e^{2πi s/N}`, `0 ≤ s < N`.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaEntry {
    pub a: usize,
    pub c: usize,
    /// `None` if the quotient is not a rational integer.
    pub value: Option<i64>,
    /// The sign flips with the other square root; only `θ_c = 1` is unambiguous.
    pub branch_sensitive: bool,
}

pub fn lambda_signatures(md: &ModularData, fusion: &FusionTable, a: usize) -> Result<Vec<LambdaEntry>> {
    let r = r_symbol_sums(md, fusion, a)?;
    Ok((0..md.rank())
        .filter(|&c| fusion.get(a, a, c) > 0)
        .map(|c| {
            let (s, n) = md.twists[c].fraction();
            let half = RootOfUnity::new(s as i64, 2 * n);
            let v = r[c].mul_unit(md.twists[a] / half);
            let value = v.to_integer();
            LambdaEntry { a, c, value, branch_sensitive: value != Some(0) && !md.twists[c].is_one() }
        })
        .collect())
}

/// `ν_a^n = (1/D²) Σ_{x,y} N_{ax}^y d_x d_y (θ_y/θ_x)^n`.
pub fn fs_indicator(md: &ModularData, fusion: &FusionTable, a: usize, n: i64) -> CycloNumber {
    let d = md.total_dim;
    let mut acc = crate::PhaseSum::new(md.order);
    for x in 0..md.rank() {
        for (y, m) in fusion.product(a, x) {
            let e = (md.twists[y] / md.twists[x])
                .pow(n)
                .exponent_at(md.order as u64)
                .expect("twists live in the model order");
            acc.add(e as i64, m as i64 * md.dims[x] * md.dims[y]);
        }
    }
    acc.to_cyclo_over(d * d)
}

/// `p/q = a_n - 1/(a_{n-1} - … - 1/a_1)` with `a_i = ⌈·⌉`, so every `a_i ≥ 2` except possibly `a_n`.
/// Returned as `[a_1, …, a_n]`.
pub fn continued_fraction(p: i64, q: i64) -> Result<Vec<i64>> {
    if q == 0 || p.gcd(&q) != 1 {
        return Err(Error::InvalidInput(format!("L({p},{q}) needs coprime p, q with q != 0")));
    }
    let mut x = Rational64::new(p, q);
    let mut out = Vec::new();
    loop {
        let a = x.ceil();
        out.push(a.to_integer());
        if a == x {
            break;
        }
        x = (a - x).recip();
    }
    out.reverse();
    Ok(out)
}

/// Signature of the tridiagonal matrix with diagonal `a` and `-1` off the diagonal.
///
/// Symmetric Gaussian elimination; a zero pivot is paired with the next row
/// into a 2×2 block of signature 0 that leaves the following pivot unchanged.
pub fn chain_signature(a: &[i64]) -> i64 {
    let mut sig = 0;
    let mut i = 0;
    let mut prev: Option<Rational64> = None;
    while i < a.len() {
        let d = match prev {
            Some(p) => Rational64::from(a[i]) - p.recip(),
            None => Rational64::from(a[i]),
        };
        if d.is_zero() {
            if i + 1 < a.len() {
                i += 2;
                prev = None;
                continue;
            }
            break;
        }
        sig += d.signum().to_integer();
        prev = Some(d);
        i += 1;
    }
    sig
}

#[derive(Clone, Debug, Serialize)]
pub struct LensSpaceValue {
    pub p: i64,
    pub q: i64,
    pub continued_fraction: Vec<i64>,
    pub signature: i64,
    pub value: CycloNumber,
}

fn lens_phase(md: &ModularData, sig: i64) -> Result<RootOfUnity> {
    let c = md
        .c_mod_8
        .ok_or_else(|| Error::Verification("Gauss sum is not an 8th root of unity".into()))?;
    Ok(RootOfUnity::new(-(c as i64) * sig, 8))
}

/// `Z(L(p,q)) = e^{-iπcσ/4} D^{-n-1} Σ_x Π_j d_{x_j} θ_{x_j}^{a_j} ⟨chain(x)⟩`, where the
/// unnormalized chain invariant is `S̃_{x_1x_2} S̃_{x_2x_3} ⋯ / (d_{x_2} ⋯ d_{x_{n-1}})`
/// with `S̃ = D S`, or `d_{x_1}` for a single unknot.
pub fn lens_space_invariant(md: &ModularData, p: i64, q: i64) -> Result<LensSpaceValue> {
    let cf = continued_fraction(p, q)?;
    let signature = chain_signature(&cf);
    let n = md.rank();
    let dd = md.total_dim;
    let weight = |j: usize, x: usize| CycloNumber::from_integer(md.dims[x]).mul_unit(md.twists[x].pow(cf[j]));
    // v[x] = sum over x_1..x_j with x_j = x, including the weight of x_j.
    let mut v: Vec<CycloNumber> = (0..n).map(|x| weight(0, x)).collect();
    for j in 1..cf.len() {
        v = (0..n)
            .map(|y| {
                let col: Vec<CycloNumber> = (0..n).map(|x| md.s[x][y].scale(dd, 1)).collect();
                let mut s = CycloNumber::dot(v.iter(), col.iter()) * weight(j, y);
                if j + 1 < cf.len() {
                    s = s.scale(1, md.dims[y]);
                }
                s
            })
            .collect();
    }
    let total: CycloNumber = if cf.len() == 1 {
        v.iter().enumerate().map(|(x, w)| w.scale(md.dims[x], 1)).sum()
    } else {
        v.into_iter().sum()
    };
    let value = total
        .scale(1, dd.pow(cf.len() as u32 + 1))
        .mul_unit(lens_phase(md, signature)?);
    Ok(LensSpaceValue { p, q, continued_fraction: cf, signature, value })
}

/// The same value with the chain evaluated by the braid engine as the closure of
/// `σ_1^{-2} σ_2^{-2} ⋯ σ_{n-1}^{-2}`. Costs `rank^n` traces.
pub fn lens_space_engine(model: &DoubleModel, md: &ModularData, p: i64, q: i64) -> Result<CycloNumber> {
    let cf = continued_fraction(p, q)?;
    let len = cf.len();
    let letters: Vec<i32> = (1..len as i32).flat_map(|i| [-i, -i]).collect();
    let word = BraidWord::new(len, letters)?;
    let n = md.rank();
    let mut total = CycloNumber::zero();
    let mut colors = vec![0usize; len];
    loop {
        let colored = ColoredBraid::new(model, word.clone(), colors.clone())?;
        let chain = framed_invariant(model, &colored);
        let w = colors.iter().zip(&cf).fold(RootOfUnity::one(), |acc, (&x, &a)| acc * md.twists[x].pow(a));
        let d: i64 = colors.iter().map(|&x| md.dims[x]).product();
        total += &chain.scale(d, 1).mul_unit(w);
        let mut k = len;
        loop {
            if k == 0 {
                let sig = chain_signature(&cf);
                return Ok(total
                    .scale(1, md.total_dim.pow(len as u32 + 1))
                    .mul_unit(lens_phase(md, sig)?));
            }
            k -= 1;
            colors[k] += 1;
            if colors[k] < n {
                break;
            }
            colors[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::CocycleParams;
    use crate::group::GroupSpec;
    use crate::modular::fusion_table;

    #[test]
    fn continued_fractions() {
        assert_eq!(continued_fraction(5, 2).unwrap(), vec![2, 3]);
        assert_eq!(continued_fraction(5, 1).unwrap(), vec![5]);
        assert_eq!(continued_fraction(0, 1).unwrap(), vec![0]);
        assert_eq!(continued_fraction(7, 3).unwrap(), vec![2, 2, 3]);
        assert!(continued_fraction(4, 2).is_err());
    }

    #[test]
    fn signatures() {
        assert_eq!(chain_signature(&[2, 3]), 2);
        assert_eq!(chain_signature(&[0]), 0);
        assert_eq!(chain_signature(&[-1]), -1);
        // [[0,-1],[-1,0]] has eigenvalues ±1.
        assert_eq!(chain_signature(&[0, 0]), 0);
        // [[0,-1,0],[-1,0,-1],[0,-1,2]]: det = -2, trace 2.
        assert_eq!(chain_signature(&[0, 0, 2]), 1);
        assert_eq!(chain_signature(&[1, 1]), 1);
    }

    #[test]
    fn derived_u1() {
        let m = DoubleModel::new(CocycleParams::new(GroupSpec::default(), 1).unwrap());
        let md = ModularData::compute(&m);
        let f = fusion_table(&md).unwrap();
        for (a, b) in [(0, 0), (5, 9), (29, 40), (12, 44)] {
            for n in 1..3 {
                assert_eq!(
                    two_strand_closure(&md, &f, a, b, n, Parity::Even).unwrap(),
                    two_strand_engine(&m, a, b, n, Parity::Even).unwrap()
                );
            }
        }
        for a in [0, 5, 12, 33] {
            assert_eq!(
                two_strand_closure(&md, &f, a, a, 1, Parity::Odd).unwrap(),
                two_strand_engine(&m, a, a, 1, Parity::Odd).unwrap()
            );
        }
        let r0 = r_symbol_sums(&md, &f, 0).unwrap();
        assert!(r0[0].is_one() && r0[1..].iter().all(CycloNumber::is_zero));
        for a in [3, 17, 40] {
            assert!(lambda_signatures(&md, &f, a).unwrap().iter().all(|e| e.value.is_some()));
            assert!(fs_indicator(&md, &f, a, 1).is_zero());
        }
        assert!(fs_indicator(&md, &f, 0, 3).is_one());
        assert!(lens_space_invariant(&md, 0, 1).unwrap().value.is_one());
        assert_eq!(lens_space_invariant(&md, 1, 1).unwrap().value, CycloNumber::from_ratio(1, 55));
        assert_eq!(
            lens_space_invariant(&md, 5, 2).unwrap().value,
            lens_space_engine(&m, &md, 5, 2).unwrap()
        );
    }
}
