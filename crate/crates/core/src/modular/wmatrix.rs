//! Colored Whitehead-link invariants.

use serde::{Deserialize, Serialize};

use super::{Matrix, ModularData};
use crate::braid::{closure_structure, framed_trace, BraidWord, ColoredBraid};
use crate::cyclotomic::{CycloNumber, RootOfUnity};
use crate::double::{twist, CharKind, DoubleModel};
use crate::error::{Error, Result};

/// `σ_2^{-2} σ_1 σ_2^{-1} σ_1`.
pub fn whitehead_b5() -> BraidWord {
    BraidWord::new(3, vec![-2, -2, 1, -2, 1]).expect("valid word")
}

/// `σ_2^{-2} σ_1^{-1} σ_2^2 σ_1^2`.
pub fn whitehead_b7() -> BraidWord {
    BraidWord::new(3, vec![-2, -2, -1, 2, 2, 1, 1]).expect("valid word")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WMatrix {
    pub braid: String,
    /// Symmetric: `W_{ab} = (θ_a/θ_b) W̃_{ab}`.
    pub w: Matrix,
    pub w_tilde: Matrix,
}

pub fn w_matrix(model: &DoubleModel) -> Result<WMatrix> {
    w_matrix_from(model, &whitehead_b5())
}

/// `a` colors the component through strand 1, `b` the other one.
///
/// With `Z⁰_{ab}` the 0-framed closure invariant, `W̃_{ab} = θ_a^{-2} Z⁰_{ab}`, so
/// `W_{ab} = Z⁰_{ab} / (θ_a θ_b)`.
pub fn w_matrix_from(model: &DoubleModel, word: &BraidWord) -> Result<WMatrix> {
    let cs = closure_structure(word);
    if cs.components.len() != 2 {
        return Err(Error::InvalidInput(format!(
            "{word} closes to {} components, expected 2",
            cs.components.len()
        )));
    }
    let first = cs.component_of[0];
    let (wa, wb) = (cs.components[first].self_writhe, cs.components[1 - first].self_writhe);
    let n = model.len();
    let twists: Vec<RootOfUnity> = (0..n).map(|a| twist(model, a)).collect();
    let mut w = vec![Vec::with_capacity(n); n];
    let mut w_tilde = vec![Vec::with_capacity(n); n];
    for a in 0..n {
        for b in 0..n {
            let mut per = [0; 2];
            per[first] = a;
            per[1 - first] = b;
            let colored = ColoredBraid::from_components(model, word.clone(), &per)?;
            let framed = framed_trace(model, &colored).to_cyclo();
            let z0 = twists[a].pow(-wa) * twists[b].pow(-wb);
            w_tilde[a].push(framed.mul_unit(z0 * twists[a].pow(-2)));
            w[a].push(framed.mul_unit(z0 / (twists[a] * twists[b])));
        }
    }
    Ok(WMatrix { braid: word.to_string(), w, w_tilde })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct WIdentityReport {
    pub asymmetric: Vec<(usize, usize)>,
    /// Pairs failing `W_{ab} = (θ_a/θ_b) W̃_{ab}`.
    pub definition: Vec<(usize, usize)>,
    /// Pairs failing `θ_a² W̃_{ax} = θ_x² W̃_{x ā}`.
    pub identity1: Vec<(usize, usize)>,
    /// Pairs failing `W̃_{ax} = W̃_{a x̄}`.
    pub identity2: Vec<(usize, usize)>,
}

impl WIdentityReport {
    pub fn holds(&self) -> bool {
        self.asymmetric.is_empty() && self.definition.is_empty() && self.identity1.is_empty() && self.identity2.is_empty()
    }
}

pub fn w_identities(md: &ModularData, wm: &WMatrix, duals: &[usize]) -> WIdentityReport {
    let n = md.rank();
    let t = &md.twists;
    let (w, wt) = (&wm.w, &wm.w_tilde);
    let mut r = WIdentityReport::default();
    for a in 0..n {
        for x in 0..n {
            if w[a][x] != w[x][a] {
                r.asymmetric.push((a, x));
            }
            if w[a][x] != wt[a][x].mul_unit(t[a] / t[x]) {
                r.definition.push((a, x));
            }
            if wt[a][x].mul_unit(t[a].pow(2)) != wt[x][duals[a]].mul_unit(t[x].pow(2)) {
                r.identity1.push((a, x));
            }
            if wt[a][x] != wt[a][duals[x]] {
                r.identity2.push((a, x));
            }
        }
    }
    r
}

/// Trace of the diagonal block of the punctured S-matrix for boundary `z` and object `a`:
/// `(d_a / (θ_a D²)) Σ_x S_{zx} θ_x W_{ax}`.
pub fn punctured_s_trace(md: &ModularData, wm: &WMatrix, z: usize, a: usize) -> CycloNumber {
    let n = md.rank();
    let terms: Vec<CycloNumber> = (0..n).map(|x| wm.w[a][x].mul_unit(md.twists[x])).collect();
    let sum = CycloNumber::dot(md.s[z].iter(), terms.iter());
    let d = md.total_dim;
    sum.scale(md.dims[a], d * d).mul_unit(md.twists[a].inverse())
}

/// `W_{ab} = (θ_a D² / (θ_b d_a)) Σ_x conj(S_{bx}) tr_x(a)`, with `traces[x][a]` the punctured traces.
pub fn w_from_punctured_traces(md: &ModularData, traces: &Matrix) -> Matrix {
    let n = md.rank();
    let d = md.total_dim;
    (0..n)
        .map(|a| {
            let col: Vec<CycloNumber> = (0..n).map(|x| traces[x][a].clone()).collect();
            (0..n)
                .map(|b| {
                    let conj: Vec<CycloNumber> = md.s[b].iter().map(CycloNumber::conjugate).collect();
                    CycloNumber::dot(conj.iter(), col.iter())
                        .scale(d * d, md.dims[a])
                        .mul_unit(md.twists[a] / md.twists[b])
                })
                .collect()
        })
        .collect()
}

/// `D (-1)^{x} (θ_A^{[k²]_p/2} θ_B)^{-1}` with `x = l m [k²]_p`, for `B = B_{k,s}` and `A = A_{l,m}`.
/// Roots follow `(e^{2πi s/N})^t = e^{2πi st/N}` with `θ_A = e^{2πi lm/q}`.
pub fn ba_closed_form(model: &DoubleModel, b: usize, a: usize) -> Option<CycloNumber> {
    let objs = model.objects();
    let (ob, oa) = (objs.get(b)?, objs.get(a)?);
    let (CharKind::ZpChar(_), CharKind::ZqChar(m)) = (ob.kind, oa.kind) else {
        return None;
    };
    let spec = model.spec();
    let k = ob.class_rep.m as i64;
    let l = oa.class_rep.l as i64;
    let x = l * m as i64 * ((k * k) % spec.p() as i64);
    let q = spec.q() as u64;
    // (-1)^x e^{-2πi x/(2q)} = e^{2πi x (q-1)/(2q)}.
    let phase = RootOfUnity::new(x * (q as i64 - 1), 2 * q) * twist(model, b).inverse();
    Some(CycloNumber::from_integer(spec.order() as i64).mul_unit(phase))
}
