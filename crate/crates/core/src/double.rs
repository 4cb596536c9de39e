//! Simple objects of `D^ω(G)`, their induced representations, and the
//! elementary braiding and associator moves on pairs of basis vectors.
//!
//! Every simple object is realized on the basis `|r_i⟩ ⊗ |v_a⟩` (coset index `i`,
//! internal index `a`), flattened as `i * char_dim + a`. All internal
//! representations used here are monomial, so every group element maps a basis
//! vector to a single basis vector times a root of unity. Phases are stored as
//! exponents of `ζ_M` with `M = p²q`.

use std::fmt;

use serde::Serialize;

use crate::cocycle::{b_character, theta, CocycleParams};
use crate::cyclotomic::{CycloNumber, RootOfUnity};
use crate::error::{Error, Result};
use crate::group::{
    conjugacy_data, conjugate, inverse, irreps_of_g, multiply, unit_orbit_reps, ConjClassInfo,
    GroupElement, GroupSpec, MonomialRep,
};

/// The character part of an object label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CharKind {
    /// The `j`-th irrep of `G` (flux `e`).
    GIrrep(usize),
    /// `a^j ↦ ζ_q^{mj}` on `C_G(a^l) = Z_q`.
    ZqChar(u32),
    /// The projective character `π_k^s` on `C_G(b^k) = Z_p`.
    ZpChar(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleObject {
    pub index: usize,
    pub class_index: usize,
    pub class_rep: GroupElement,
    pub kind: CharKind,
    pub label: String,
    pub class_size: usize,
    pub char_dim: usize,
}

impl SimpleObject {
    /// Dimension of the induced representation, equal to the quantum dimension.
    pub fn dim(&self) -> usize {
        self.class_size * self.char_dim
    }
}

impl fmt::Display for SimpleObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// `I_0 … I_{p-1}` (characters of `Z_p`), then the `p`-dimensional irreps,
/// then `A_{l,m}` per `[a^l]` class, then `B_{k,s}`.
pub fn enumerate_simples(params: &CocycleParams) -> Vec<SimpleObject> {
    let spec = &params.spec;
    let classes = conjugacy_data(spec);
    let n_irreps = spec.p() as usize + unit_orbit_reps(spec).len();
    let mut out = Vec::new();
    for (ci, c) in classes.iter().enumerate() {
        let t = c.representative;
        let push = |out: &mut Vec<SimpleObject>, kind, label: String, char_dim| {
            out.push(SimpleObject {
                index: out.len(),
                class_index: ci,
                class_rep: t,
                kind,
                label,
                class_size: c.size(),
                char_dim,
            })
        };
        if t.is_identity() {
            for j in 0..n_irreps {
                let dim = if j < spec.p() as usize { 1 } else { spec.p() as usize };
                push(&mut out, CharKind::GIrrep(j), format!("I_{j}"), dim);
            }
        } else if t.m == 0 {
            for m in 0..spec.q() {
                push(&mut out, CharKind::ZqChar(m), format!("A_{{{},{m}}}", t.l), 1);
            }
        } else {
            for s in 0..spec.p() {
                push(&mut out, CharKind::ZpChar(s), format!("B_{{{},{s}}}", t.m), 1);
            }
        }
    }
    out
}

/// Per-object lookup tables for the DPR-induced action.
#[derive(Clone, Debug)]
pub(crate) struct ObjectTable {
    pub dim: usize,
    /// Flux of each basis vector.
    pub flux: Vec<GroupElement>,
    /// `b`-exponent of each flux.
    pub flux_b: Vec<u32>,
    /// Group index of each flux and of its inverse.
    pub flux_idx: Vec<u32>,
    pub flux_inv_idx: Vec<u32>,
    /// `action[g_index * dim + v] = (target, phase exponent of ζ_M)`.
    pub action: Vec<(u32, u32)>,
}

/// All data needed to evaluate braid representations for one `(q,p,n,u)`.
#[derive(Clone, Debug)]
pub struct DoubleModel {
    params: CocycleParams,
    classes: Vec<ConjClassInfo>,
    irreps: Vec<MonomialRep>,
    objects: Vec<SimpleObject>,
    pub(crate) tables: Vec<ObjectTable>,
    order: u32,
    /// `ω` exponents of `ζ_M`, indexed by `b`-parts `[(f1 * p + f2) * p + f3]`.
    pub(crate) omega_tab: Vec<u32>,
    /// `θ_h(g, g^{-1})` exponents of `ζ_M`, indexed by `[h_b * p + g_b]`.
    pub(crate) theta_inv_tab: Vec<u32>,
}

impl DoubleModel {
    pub fn new(params: CocycleParams) -> Self {
        let spec = params.spec;
        let classes = conjugacy_data(&spec);
        let irreps = irreps_of_g(&spec);
        let objects = enumerate_simples(&params);
        let p = spec.p();
        let order = p * p * spec.q();
        let to_m = order / p;
        let mut omega_tab = vec![0; (p * p * p) as usize];
        let mut theta_inv_tab = vec![0; (p * p) as usize];
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    omega_tab[((a * p + b) * p + c) as usize] = params.omega_exp(a, b, c) * to_m;
                }
                theta_inv_tab[(a * p + b) as usize] = params.theta_exp(a, b, (p - b) % p) * to_m;
            }
        }
        let mut model = DoubleModel {
            params,
            classes,
            irreps,
            objects,
            tables: Vec::new(),
            order,
            omega_tab,
            theta_inv_tab,
        };
        model.tables = (0..model.objects.len()).map(|i| model.build_table(i)).collect();
        model
    }

    pub fn params(&self) -> &CocycleParams {
        &self.params
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.params.spec
    }

    pub fn objects(&self) -> &[SimpleObject] {
        &self.objects
    }

    pub fn classes(&self) -> &[ConjClassInfo] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// The order `M = p²q` of all phases produced by the model.
    pub fn phase_order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self, obj: usize) -> usize {
        self.tables[obj].dim
    }

    /// Flux `r_i t r_i^{-1}` of a basis vector.
    pub fn flux(&self, obj: usize, v: usize) -> GroupElement {
        self.tables[obj].flux[v]
    }

    /// Looks up an object by label. Accepts `B_{1,0}`, `B_1_0`, `B1,0`, `I_5`, `I5`.
    pub fn find(&self, label: &str) -> Result<usize> {
        let key = normalize_label(label).ok_or_else(|| Error::UnknownLabel(label.into()))?;
        self.objects
            .iter()
            .position(|o| normalize_label(&o.label).as_ref() == Some(&key))
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    /// Image of basis vector `a` of the internal space under `s ∈ C_G(t)`.
    fn internal(&self, obj: &SimpleObject, s: GroupElement, a: usize) -> (usize, RootOfUnity) {
        let spec = self.spec();
        match obj.kind {
            CharKind::GIrrep(j) => self.irreps[j].act(s, a, spec),
            CharKind::ZqChar(m) => (0, RootOfUnity::new((m * s.l) as i64, spec.q() as u64)),
            CharKind::ZpChar(sv) => (0, b_character(&self.params, obj.class_rep.m, sv, s.m)),
        }
    }

    fn build_table(&self, idx: usize) -> ObjectTable {
        let obj = &self.objects[idx];
        let spec = self.spec();
        let class = &self.classes[obj.class_index];
        let cd = obj.char_dim;
        let dim = obj.dim();
        let mut flux = Vec::with_capacity(dim);
        for &m in &class.members {
            flux.extend(std::iter::repeat(m).take(cd));
        }
        let flux_b = flux.iter().map(|f| f.m).collect();
        let flux_idx = flux.iter().map(|&f| spec.index(f) as u32).collect();
        let flux_inv_idx = flux.iter().map(|&f| spec.index(inverse(f, spec)) as u32).collect();
        let m = self.order as u64;
        let mut action = Vec::with_capacity(spec.order() * dim);
        for y in spec.elements() {
            for i in 0..class.size() {
                let ti = class.members[i];
                let tj = conjugate(y, ti, spec);
                let j = class.position(tj).expect("conjugate stays in class");
                let (ri, rj) = (class.coset_reps[i], class.coset_reps[j]);
                let s = multiply(inverse(rj, spec), multiply(y, ri, spec), spec);
                for a in 0..cd {
                    let (a2, ph) = self.internal(obj, s, a);
                    let ph = ph * theta(&self.params, tj, y, ri) / theta(&self.params, tj, rj, s);
                    let e = ph.exponent_at(m).expect("phase order divides p^2 q");
                    action.push(((j * cd + a2) as u32, e as u32));
                }
            }
        }
        ObjectTable { dim, flux, flux_b, flux_idx, flux_inv_idx, action }
    }

    /// `(target, exponent)` for `y` acting on basis vector `v` of `obj`.
    #[inline]
    pub(crate) fn act_exp(&self, obj: usize, y: GroupElement, v: usize) -> (usize, u32) {
        let t = &self.tables[obj];
        let (w, e) = t.action[self.spec().index(y) * t.dim + v];
        (w as usize, e)
    }

    fn root(&self, e: u32) -> RootOfUnity {
        RootOfUnity::new(e as i64, self.order as u64)
    }
}

fn normalize_label(s: &str) -> Option<(char, Vec<u32>)> {
    let s = s.trim();
    let mut chars = s.chars();
    let head = chars.next()?.to_ascii_uppercase();
    if !matches!(head, 'I' | 'A' | 'B') {
        return None;
    }
    let rest: String = chars.collect();
    let nums: Vec<u32> = rest
        .split(|c: char| !c.is_ascii_digit())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().ok())
        .collect::<Option<_>>()?;
    let want = if head == 'I' { 1 } else { 2 };
    (nums.len() == want).then_some((head, nums))
}

/// Quantum dimension `|class| · dim(char)`.
pub fn qdim(obj: &SimpleObject) -> CycloNumber {
    CycloNumber::from_integer(obj.dim() as i64)
}

/// Twist `θ = tr π(t) / dim π`; the representative acts on the internal space as a scalar.
pub fn twist(model: &DoubleModel, obj: usize) -> RootOfUnity {
    let o = &model.objects[obj];
    let (a, ph) = model.internal(o, o.class_rep, 0);
    debug_assert_eq!(a, 0);
    ph
}

/// `P_x y` applied to basis vector `v` of `obj`: `None` when the resulting flux is not `x`.
pub fn dpr_action(
    model: &DoubleModel,
    x: GroupElement,
    y: GroupElement,
    obj: usize,
    v: usize,
) -> Option<(usize, RootOfUnity)> {
    let (w, e) = model.act_exp(obj, y, v);
    (model.flux(obj, w) == x).then(|| (w, model.root(e)))
}

/// `c_{X,Y}: |i⟩_X ⊗ |k⟩_Y ↦ phase · |l⟩_Y ⊗ |i⟩_X`: the flux of the first vector acts on the second.
pub fn sigma_action(
    model: &DoubleModel,
    colors: (usize, usize),
    basis: (usize, usize),
) -> ((usize, usize), RootOfUnity) {
    let (x, y) = colors;
    let (i, k) = basis;
    let g = model.flux(x, i);
    let (l, e) = model.act_exp(y, g, k);
    ((l, i), model.root(e))
}

/// Inverse braiding `c_{X,Y}^{-1}: |k⟩_Y ⊗ |i⟩_X ↦ phase · |i⟩_X ⊗ |l⟩_Y`, where `g^{-1}`
/// (`g` the flux of the `X` vector) acts on the `Y` vector with the extra
/// factor `θ_{ghg^{-1}}(g, g^{-1})^{-1}`.
pub fn sigma_inverse_action(
    model: &DoubleModel,
    colors: (usize, usize),
    basis: (usize, usize),
) -> ((usize, usize), RootOfUnity) {
    let (y, x) = colors;
    let (k, i) = basis;
    let spec = model.spec();
    let g = model.flux(x, i);
    let h_conj = model.flux(y, k);
    let (l, e) = model.act_exp(y, inverse(g, spec), k);
    let extra = theta(model.params(), h_conj, g, inverse(g, spec));
    ((i, l), model.root(e) / extra)
}

/// `ω(f1,f2,f3)^{-1}`, the associator on a basis vector with fluxes `f1, f2, f3`.
pub fn associator_scalar(
    params: &CocycleParams,
    fluxes: (GroupElement, GroupElement, GroupElement),
) -> RootOfUnity {
    crate::cocycle::omega(params, fluxes.0, fluxes.1, fluxes.2).inverse()
}
