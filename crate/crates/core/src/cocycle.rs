//! The 3-cocycles `ω_u` on `G(q,p;n)` and the 2-cochains `θ`, `γ` they induce.
//!
//! `ω_u(g,h,k) = exp(2πi u k_b (g_b + h_b - [g_b + h_b]_p) / p²)` depends only on
//! the `b`-exponents of its arguments. Conjugation preserves `b`-exponents, so
//! `θ` and `γ` do as well; [`CocycleParams::omega_exp`] and friends exploit this.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloNumber, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::{conjugate, inverse, multiply, GroupElement, GroupSpec};

/// A group together with the cohomology label `u ∈ Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CocycleParams {
    pub spec: GroupSpec,
    u: u32,
}

impl CocycleParams {
    pub fn new(spec: GroupSpec, u: u32) -> Result<Self> {
        if u >= spec.p() {
            return Err(Error::InvalidInput(format!("u = {u} must be below p = {}", spec.p())));
        }
        Ok(CocycleParams { spec, u })
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    /// `ω` as an exponent of `ζ_p`, from `b`-exponents.
    pub fn omega_exp(&self, gb: u32, hb: u32, kb: u32) -> u32 {
        let p = self.spec.p();
        if gb + hb >= p {
            self.u * kb % p
        } else {
            0
        }
    }

    /// `θ_g(x,y)` as an exponent of `ζ_p`, from `b`-exponents.
    pub fn theta_exp(&self, gb: u32, xb: u32, yb: u32) -> u32 {
        let p = self.spec.p();
        (self.omega_exp(gb, xb, yb) + self.omega_exp(xb, yb, gb) + p
            - self.omega_exp(xb, gb, yb))
            % p
    }

    /// `γ_h(x,y)` as an exponent of `ζ_p`, from `b`-exponents.
    pub fn gamma_exp(&self, hb: u32, xb: u32, yb: u32) -> u32 {
        let p = self.spec.p();
        (self.omega_exp(xb, yb, hb) + self.omega_exp(hb, xb, yb) + p
            - self.omega_exp(xb, hb, yb))
            % p
    }

    fn root(&self, e: u32) -> RootOfUnity {
        RootOfUnity::new(e as i64, self.spec.p() as u64)
    }
}

pub fn omega(params: &CocycleParams, g: GroupElement, h: GroupElement, k: GroupElement) -> RootOfUnity {
    params.root(params.omega_exp(g.m, h.m, k.m))
}

/// `θ_g(x,y) = ω(g,x,y) ω(x,y,(xy)^{-1}gxy) / ω(x,x^{-1}gx,y)`.
pub fn theta(params: &CocycleParams, g: GroupElement, x: GroupElement, y: GroupElement) -> RootOfUnity {
    let s = &params.spec;
    let xy = multiply(x, y, s);
    let g_xy = conjugate(inverse(xy, s), g, s);
    let g_x = conjugate(inverse(x, s), g, s);
    omega(params, g, x, y) * omega(params, x, y, g_xy) / omega(params, x, g_x, y)
}

/// `γ_h(x,y) = ω(x,y,h) ω(h,h^{-1}xh,h^{-1}yh) / ω(x,h,h^{-1}yh)`.
pub fn gamma(params: &CocycleParams, h: GroupElement, x: GroupElement, y: GroupElement) -> RootOfUnity {
    let s = &params.spec;
    let hi = inverse(h, s);
    let x_h = conjugate(hi, x, s);
    let y_h = conjugate(hi, y, s);
    omega(params, x, y, h) * omega(params, h, x_h, y_h) / omega(params, x, h, y_h)
}

/// The `θ_t`-projective character of `C_G(t)` with label `s`, satisfying
/// `π(xy) θ_t(x,y) = π(x) π(y)`.
///
/// For `t = b^k` this is `π(b^j) = ζ_{p²}^{(sp + uk) j}` (`0 ≤ j < p`); for `t = a^l`
/// the linear character `a^j ↦ ζ_q^{sj}`; for `t = e` the character of the
/// `s`-th irrep of `G` (where `θ_e ≡ 1`).
pub fn projective_character(
    params: &CocycleParams,
    t: GroupElement,
    s: usize,
    x: GroupElement,
) -> Result<CycloNumber> {
    if t.m != 0 {
        let sp = &params.spec;
        if s >= sp.p() as usize {
            return Err(Error::IndexOutOfRange { index: s, bound: sp.p() as usize });
        }
        if x.l != 0 {
            return Err(Error::NotInCentralizer(x.to_string(), t.to_string()));
        }
        Ok(b_character(params, t.m, s as u32, x.m).to_cyclo())
    } else {
        crate::group::centralizer_character(t, s, &params.spec)?.value(x)
    }
}

/// `π_k^s(b^j)` as a root of unity.
pub(crate) fn b_character(params: &CocycleParams, k: u32, s: u32, j: u32) -> RootOfUnity {
    let p = params.spec.p() as i64;
    RootOfUnity::new((s as i64 * p + params.u as i64 * k as i64) * j as i64, (p * p) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(l: u32, m: u32) -> GroupElement {
        GroupElement { l, m }
    }

    fn params(u: u32) -> CocycleParams {
        CocycleParams::new(GroupSpec::default(), u).unwrap()
    }

    #[test]
    fn omega_examples() {
        let p1 = params(1);
        let e = g(0, 0);
        assert!(omega(&p1, e, g(3, 2), g(1, 4)).is_one());
        assert_eq!(omega(&p1, g(0, 2), g(0, 4), g(0, 1)), RootOfUnity::new(1, 5));
        assert!(omega(&p1, g(0, 1), g(0, 1), g(0, 1)).is_one());
    }

    #[test]
    fn omega_matches_defining_formula() {
        for u in 0..5 {
            let pr = params(u);
            for gb in 0..5u32 {
                for hb in 0..5u32 {
                    for kb in 0..5u32 {
                        let carry = (gb + hb - (gb + hb) % 5) as i64;
                        let direct = RootOfUnity::new(u as i64 * kb as i64 * carry, 25);
                        assert_eq!(omega(&pr, g(7, gb), g(2, hb), g(5, kb)), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn theta_examples() {
        let p1 = params(1);
        assert!(theta(&p1, g(3, 1), g(0, 0), g(2, 3)).is_one());
        assert_eq!(theta(&p1, g(0, 1), g(0, 3), g(0, 4)), RootOfUnity::new(1, 5));
        let p0 = params(0);
        let el = p0.spec.elements();
        for &a in el.iter().step_by(7) {
            for &b in &el {
                assert!(theta(&p0, a, b, g(4, 2)).is_one());
            }
        }
    }

    #[test]
    fn gamma_examples() {
        let p1 = params(1);
        let el = p1.spec.elements();
        for &x in &el {
            assert!(gamma(&p1, g(0, 0), x, g(3, 3)).is_one());
            assert!(gamma(&p1, x, g(0, 0), g(1, 2)).is_one());
        }
        let (b, b3) = (g(0, 1), g(0, 3));
        let expect = omega(&p1, b3, b3, b) * omega(&p1, b, b3, b3) / omega(&p1, b3, b, b3);
        assert_eq!(gamma(&p1, b, b3, b3), expect);
    }

    #[test]
    fn b_part_tables_agree_with_full_formulas() {
        let pr = params(3);
        let s = pr.spec;
        for x in s.elements() {
            for y in s.elements().into_iter().step_by(3) {
                let t = g(4, 2);
                assert_eq!(theta(&pr, t, x, y), pr.root(pr.theta_exp(t.m, x.m, y.m)));
                assert_eq!(gamma(&pr, t, x, y), pr.root(pr.gamma_exp(t.m, x.m, y.m)));
            }
        }
    }

    #[test]
    fn projective_character_examples() {
        let p1 = params(1);
        assert_eq!(
            projective_character(&p1, g(0, 1), 0, g(0, 1)).unwrap(),
            CycloNumber::root_of_unity(1, 25)
        );
        let p0 = params(0);
        assert_eq!(
            projective_character(&p0, g(0, 2), 1, g(0, 2)).unwrap(),
            CycloNumber::root_of_unity(2, 5)
        );
        for l in 0..11 {
            assert_eq!(
                projective_character(&p1, g(1, 0), 7, g(l, 0)).unwrap(),
                CycloNumber::root_of_unity(7 * l as i64, 11)
            );
        }
        assert!(projective_character(&p1, g(0, 1), 0, g(1, 0)).is_err());
    }
}
