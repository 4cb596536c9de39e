//! Exhaustive checks shared by the property suite and the acceptance harness.

use dwinv_core::cocycle::{projective_character, theta, CocycleParams};
use dwinv_core::group::{conjugacy_data, multiply, GroupSpec};

/// Violations of the 3-cocycle identity and of normalization, over all `b`-exponents and `u`.
pub fn cocycle_failures(spec: GroupSpec) -> Vec<String> {
    let p = spec.p();
    let mut out = Vec::new();
    for u in 0..p {
        let c = CocycleParams::new(spec, u).expect("u below p");
        for g in 0..p {
            for h in 0..p {
                for k in 0..p {
                    for l in 0..p {
                        let lhs = c.omega_exp(h, k, l) + c.omega_exp(g, (h + k) % p, l) + c.omega_exp(g, h, k);
                        let rhs = c.omega_exp((g + h) % p, k, l) + c.omega_exp(g, h, (k + l) % p);
                        if lhs % p != rhs % p {
                            out.push(format!("u={u} cocycle ({g},{h},{k},{l})"));
                        }
                    }
                }
                if c.omega_exp(0, g, h) + c.omega_exp(g, 0, h) + c.omega_exp(g, h, 0) != 0 {
                    out.push(format!("u={u} normalization ({g},{h})"));
                }
            }
        }
    }
    out
}

/// Violations of `π(xy) θ_t(x,y) = π(x) π(y)` over every centralizer, for all `u`.
///
/// Only the first `p` characters of the identity class are linear; the others are
/// characters of higher-dimensional irreps and are skipped.
pub fn projectivity_failures(spec: GroupSpec) -> Vec<String> {
    let mut out = Vec::new();
    for u in 0..spec.p() {
        let params = CocycleParams::new(spec, u).expect("u below p");
        for class in conjugacy_data(&spec) {
            let t = class.representative;
            let labels = if t.m == 0 && !t.is_identity() { spec.q() } else { spec.p() } as usize;
            for s in 0..labels {
                let pi = |z| projective_character(&params, t, s, z).expect("z centralizes t");
                for &x in &class.centralizer {
                    for &y in &class.centralizer {
                        let lhs = pi(multiply(x, y, &spec)).mul_unit(theta(&params, t, x, y));
                        if lhs != &pi(x) * &pi(y) {
                            out.push(format!("u={u} t={t} s={s} x={x} y={y}"));
                        }
                    }
                }
            }
        }
    }
    out
}
