//! Modular data `(S, T)` of the twisted double, with exact checks.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::braid::{framed_trace, BraidWord, ColoredBraid};
use crate::cocycle::CocycleParams;
use crate::cyclotomic::{CycloNumber, RootOfUnity};
use crate::double::{twist, DoubleModel};

pub mod derived;
pub mod fusion;
pub mod io;
pub mod search;
pub mod wmatrix;

pub use fusion::{fusion_table, verlinde, FusionTable};
pub use wmatrix::{w_matrix, w_matrix_from, WMatrix};

pub type Matrix = Vec<Vec<CycloNumber>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModularData {
    pub params: CocycleParams,
    pub labels: Vec<String>,
    pub dims: Vec<i64>,
    pub twists: Vec<RootOfUnity>,
    /// Normalized: `S_{00} = 1/D`.
    pub s: Matrix,
    pub total_dim: i64,
    pub c_mod_8: Option<u32>,
    /// Cyclotomic order all entries live in.
    pub order: u32,
    #[serde(skip)]
    duals: OnceLock<Option<Vec<usize>>>,
}

impl ModularData {
    pub fn compute(model: &DoubleModel) -> Self {
        let total_dim = model.spec().order() as i64;
        let dims: Vec<i64> = (0..model.len()).map(|a| model.dim(a) as i64).collect();
        let twists = t_matrix(model);
        let s = s_matrix(model);
        let c_mod_8 = central_charge_mod8(&dims, &twists, total_dim);
        ModularData {
            params: *model.params(),
            labels: model.objects().iter().map(|o| o.label.clone()).collect(),
            dims,
            twists,
            s,
            total_dim,
            c_mod_8,
            order: model.phase_order(),
            duals: OnceLock::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn t(&self, a: usize) -> CycloNumber {
        self.twists[a].to_cyclo()
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Charge conjugation read off from `S²`, if it is a permutation matrix.
    /// Computed on the first call; later edits to `s` are not seen.
    pub fn duals(&self) -> Option<Vec<usize>> {
        self.duals.get_or_init(|| permutation_of(&mat_mul(&self.s, &self.s))).clone()
    }
}

/// Twists `θ_a`, the diagonal of `T`.
pub fn t_matrix(model: &DoubleModel) -> Vec<RootOfUnity> {
    (0..model.len()).map(|a| twist(model, a)).collect()
}

/// `S_{ab} = Tr(c_{b,a} c_{a,b})^{-1} / D`, from the closure of `σ_1^{-2}` colored `(a, b)`.
pub fn s_matrix(model: &DoubleModel) -> Matrix {
    let d = model.spec().order() as i64;
    let word = BraidWord::new(2, vec![-1, -1]).expect("valid word");
    let n = model.len();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let colored = ColoredBraid::new(model, word.clone(), vec![a, b]).expect("two components");
                    framed_trace(model, &colored).to_cyclo_over(d)
                })
                .collect()
        })
        .collect()
}

/// `c mod 8` from `(1/D) Σ_a d_a² θ_a = e^{2πi c/8}`, when that sum is an 8th root of unity.
pub fn central_charge_mod8(dims: &[i64], twists: &[RootOfUnity], total_dim: i64) -> Option<u32> {
    let gauss: CycloNumber = dims
        .iter()
        .zip(twists)
        .map(|(&d, t)| t.to_cyclo().scale(d * d, total_dim))
        .sum();
    (0..8).find(|&c| gauss == CycloNumber::root_of_unity(c as i64, 8))
}

pub fn mat_mul(x: &Matrix, y: &Matrix) -> Matrix {
    let cols: Vec<Vec<&CycloNumber>> = (0..y[0].len()).map(|j| y.iter().map(|r| &r[j]).collect()).collect();
    x.iter()
        .map(|row| cols.iter().map(|c| CycloNumber::dot(row.iter(), c.iter().copied())).collect())
        .collect()
}

pub fn conjugate_transpose(x: &Matrix) -> Matrix {
    (0..x[0].len()).map(|j| x.iter().map(|r| r[j].conjugate()).collect()).collect()
}

/// If `x` is a permutation matrix, the permutation `i ↦ j` with `x_{ij} = 1`.
pub fn permutation_of(x: &Matrix) -> Option<Vec<usize>> {
    let mut perm = Vec::with_capacity(x.len());
    for row in x {
        let ones: Vec<usize> = (0..row.len()).filter(|&j| row[j].is_one()).collect();
        if ones.len() != 1 || row.iter().filter(|v| !v.is_zero()).count() != 1 {
            return None;
        }
        perm.push(ones[0]);
    }
    let mut seen = vec![false; perm.len()];
    for &j in &perm {
        if std::mem::replace(&mut seen[j], true) {
            return None;
        }
    }
    Some(perm)
}

fn is_identity(x: &Matrix) -> bool {
    x.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() }))
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularityReport {
    pub symmetric: bool,
    pub unitary: bool,
    /// `a ↦ ā` when `S²` is a permutation matrix.
    pub duals: Option<Vec<usize>>,
    pub self_dual: Vec<usize>,
    /// `(ST)³ = e^{2πi c/8} S²`.
    pub st_cubed: bool,
    /// `S_{āb} = conj(S_{ab})`.
    pub conjugate_rows: bool,
    pub unit_is_first: bool,
}

impl ModularityReport {
    pub fn holds(&self) -> bool {
        self.symmetric && self.unitary && self.duals.is_some() && self.st_cubed && self.conjugate_rows && self.unit_is_first
    }
}

pub fn check_modularity(md: &ModularData) -> ModularityReport {
    let n = md.rank();
    let s = &md.s;
    let symmetric = (0..n).all(|a| (0..a).all(|b| s[a][b] == s[b][a]));
    let unitary = is_identity(&mat_mul(s, &conjugate_transpose(s)));
    let s2 = mat_mul(s, s);
    let duals = permutation_of(&s2);
    let self_dual = duals
        .as_ref()
        .map(|d| (0..n).filter(|&a| d[a] == a).collect())
        .unwrap_or_default();
    let st: Matrix = s
        .iter()
        .map(|row| row.iter().zip(&md.twists).map(|(v, t)| v.mul_unit(*t)).collect())
        .collect();
    let st2 = mat_mul(&st, &st);
    let st3 = mat_mul(&st2, &st);
    let st_cubed = match md.c_mod_8 {
        Some(c) => {
            let phase = RootOfUnity::new(c as i64, 8);
            st3.iter().zip(&s2).all(|(r3, r2)| r3.iter().zip(r2).all(|(x, y)| *x == y.mul_unit(phase)))
        }
        None => false,
    };
    let conjugate_rows = duals
        .as_ref()
        .is_some_and(|d| (0..n).all(|a| (0..n).all(|b| s[d[a]][b] == s[a][b].conjugate())));
    let unit_is_first = md.dims[0] == 1
        && md.twists[0].is_one()
        && (0..n).all(|b| s[0][b] == CycloNumber::from_ratio(md.dims[b], md.total_dim));
    ModularityReport { symmetric, unitary, duals, self_dual, st_cubed, conjugate_rows, unit_is_first }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    pub(crate) fn data(u: u32) -> ModularData {
        let m = DoubleModel::new(CocycleParams::new(GroupSpec::default(), u).unwrap());
        ModularData::compute(&m)
    }

    #[test]
    fn modular_data_u1() {
        let md = data(1);
        assert_eq!(md.rank(), 49);
        assert_eq!(md.c_mod_8, Some(0));
        let r = check_modularity(&md);
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.self_dual, vec![0]);
    }

    #[test]
    fn fusion_u1() {
        let md = data(1);
        let f = fusion_table(&md).unwrap();
        assert!(f.respects_dimensions(&md.dims));
        for (a, b, c) in [(7, 7, 0), (29, 48, 5), (3, 18, 18)] {
            assert_eq!(verlinde(&md, a, b, c).unwrap(), f.get(a, b, c) as u64);
        }
    }
}
