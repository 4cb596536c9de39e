//! The metacyclic groups `G(q,p;n) = Z_q ⋊_n Z_p`, with `b a b^{-1} = a^n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloNumber, PhaseSum, RootOfUnity};
use crate::error::{Error, Result};

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut b = base % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Family parameters `(q, p, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    q: u32,
    p: u32,
    n: u32,
}

impl GroupSpec {
    pub fn new(q: u32, p: u32, n: u32) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if q % 2 == 0 || !is_prime(q) {
            return bad(format!("q = {q} must be an odd prime"));
        }
        if p % 2 == 0 || !is_prime(p) {
            return bad(format!("p = {p} must be an odd prime"));
        }
        if (q - 1) % p != 0 {
            return bad(format!("p = {p} does not divide q - 1 = {}", q - 1));
        }
        let n_red = n % q;
        if n_red == 0 || n_red == 1 {
            return bad(format!("n = {n} must be a unit different from 1 mod {q}"));
        }
        if pow_mod(n_red as u64, p as u64, q as u64) != 1 {
            let ord = (1..q).find(|&k| pow_mod(n_red as u64, k as u64, q as u64) == 1).unwrap();
            return bad(format!(
                "n = {n} has multiplicative order {ord} mod {q}, expected {p}"
            ));
        }
        Ok(GroupSpec { q, p, n: n_red })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> usize {
        (self.q * self.p) as usize
    }

    /// `n^k mod q` for any integer `k`.
    pub fn n_pow(&self, k: i64) -> u32 {
        let e = k.rem_euclid(self.p as i64) as u64;
        pow_mod(self.n as u64, e, self.q as u64) as u32
    }

    /// Inverse of a unit mod `q`.
    pub fn inv_mod_q(&self, x: u32) -> u32 {
        pow_mod(x as u64, (self.q - 2) as u64, self.q as u64) as u32
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { l: 0, m: 0 }
    }

    pub fn element(&self, l: i64, m: i64) -> GroupElement {
        GroupElement {
            l: l.rem_euclid(self.q as i64) as u32,
            m: m.rem_euclid(self.p as i64) as u32,
        }
    }

    /// All elements in lexicographic `(l, m)` order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.q)
            .flat_map(|l| (0..self.p).map(move |m| GroupElement { l, m }))
            .collect()
    }

    /// Position of `g` in [`GroupSpec::elements`].
    pub fn index(&self, g: GroupElement) -> usize {
        (g.l * self.p + g.m) as usize
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        g.l < self.q && g.m < self.p
    }
}

impl Default for GroupSpec {
    fn default() -> Self {
        GroupSpec { q: 11, p: 5, n: 4 }
    }
}

/// The element `a^l b^m`.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default,
)]
pub struct GroupElement {
    pub l: u32,
    pub m: u32,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.l == 0 && self.m == 0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.l, self.m) {
            (0, 0) => write!(f, "e"),
            (l, 0) => write!(f, "a^{l}"),
            (0, m) => write!(f, "b^{m}"),
            (l, m) => write!(f, "a^{l} b^{m}"),
        }
    }
}

/// `(a^l b^m)(a^{l'} b^{m'}) = a^{l + n^m l'} b^{m + m'}`.
pub fn multiply(g: GroupElement, h: GroupElement, spec: &GroupSpec) -> GroupElement {
    let q = spec.q as u64;
    GroupElement {
        l: ((g.l as u64 + spec.n_pow(g.m as i64) as u64 * h.l as u64) % q) as u32,
        m: (g.m + h.m) % spec.p,
    }
}

pub fn inverse(g: GroupElement, spec: &GroupSpec) -> GroupElement {
    // (a^l b^m)^{-1} = b^{-m} a^{-l} = a^{-n^{-m} l} b^{-m}
    let q = spec.q as u64;
    let l = (q - g.l as u64) % q * spec.n_pow(-(g.m as i64)) as u64 % q;
    GroupElement { l: l as u32, m: (spec.p - g.m) % spec.p }
}

/// `g h g^{-1}`.
pub fn conjugate(g: GroupElement, h: GroupElement, spec: &GroupSpec) -> GroupElement {
    multiply(multiply(g, h, spec), inverse(g, spec), spec)
}

/// A conjugacy class with its centralizer and coset representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjClassInfo {
    pub representative: GroupElement,
    /// Members in lexicographic order; `members[0]` is the representative.
    pub members: Vec<GroupElement>,
    pub centralizer: Vec<GroupElement>,
    /// `coset_reps[i]` is the lexicographically least `r` with `r t r^{-1} = members[i]`.
    pub coset_reps: Vec<GroupElement>,
}

impl ConjClassInfo {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn position(&self, g: GroupElement) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }
}

/// Conjugacy classes ordered by `(m, l)` of their lexicographically least member:
/// `[e]`, the `[a^l]` classes, then `[b], …, [b^{p-1}]`.
pub fn conjugacy_data(spec: &GroupSpec) -> Vec<ConjClassInfo> {
    let elems = spec.elements();
    let mut seen = vec![false; elems.len()];
    let mut reps: Vec<GroupElement> = Vec::new();
    for &g in &elems {
        if seen[spec.index(g)] {
            continue;
        }
        for &x in &elems {
            seen[spec.index(conjugate(x, g, spec))] = true;
        }
        reps.push(g);
    }
    reps.sort_by_key(|g| (g.m, g.l));
    reps.into_iter()
        .map(|t| {
            let mut members: Vec<GroupElement> =
                elems.iter().map(|&x| conjugate(x, t, spec)).collect();
            members.sort();
            members.dedup();
            let coset_reps = members
                .iter()
                .map(|&c| *elems.iter().find(|&&x| conjugate(x, t, spec) == c).unwrap())
                .collect();
            let centralizer = elems
                .iter()
                .copied()
                .filter(|&x| multiply(x, t, spec) == multiply(t, x, spec))
                .collect();
            ConjClassInfo { representative: t, members, centralizer, coset_reps }
        })
        .collect()
}

/// A representation in which every group element acts by a monomial matrix:
/// `g·e_j = phase(g, j) e_{target(g, j)}`.
#[derive(Clone, Debug)]
pub struct MonomialRep {
    dim: usize,
    /// Indexed by `[spec.index(g) * dim + j]`.
    images: Vec<(usize, RootOfUnity)>,
}

impl MonomialRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn act(&self, g: GroupElement, j: usize, spec: &GroupSpec) -> (usize, RootOfUnity) {
        self.images[spec.index(g) * self.dim + j]
    }

    /// Dense matrix of `g` (column `j` is the image of `e_j`).
    pub fn matrix(&self, g: GroupElement, spec: &GroupSpec) -> Vec<Vec<CycloNumber>> {
        let mut m = vec![vec![CycloNumber::zero(); self.dim]; self.dim];
        for j in 0..self.dim {
            let (i, ph) = self.act(g, j, spec);
            m[i][j] = ph.to_cyclo();
        }
        m
    }

    pub fn character(&self, g: GroupElement, spec: &GroupSpec) -> CycloNumber {
        let order = spec.p * spec.q;
        let mut acc = PhaseSum::new(order);
        for j in 0..self.dim {
            let (i, ph) = self.act(g, j, spec);
            if i == j {
                acc.add(ph.exponent_at(order as u64).unwrap() as i64, 1);
            }
        }
        acc.to_cyclo()
    }
}

/// Least representatives of the orbits of `<n>` acting on `Z_q^*` by multiplication.
pub fn unit_orbit_reps(spec: &GroupSpec) -> Vec<u32> {
    let mut seen = vec![false; spec.q as usize];
    let mut reps = Vec::new();
    for l in 1..spec.q {
        if seen[l as usize] {
            continue;
        }
        reps.push(l);
        for k in 0..spec.p {
            seen[(l as u64 * spec.n_pow(k as i64) as u64 % spec.q as u64) as usize] = true;
        }
    }
    reps
}

/// The irreducible representations of `G`: the `p` characters `χ_j(a^l b^m) = ζ_p^{jm}`,
/// followed by the `p`-dimensional representations induced from `a ↦ ζ_q^r`,
/// one for each orbit representative `r` of [`unit_orbit_reps`].
pub fn irreps_of_g(spec: &GroupSpec) -> Vec<MonomialRep> {
    let p = spec.p as usize;
    let elems = spec.elements();
    let mut reps = Vec::new();
    for j in 0..spec.p {
        let images = elems
            .iter()
            .map(|g| (0, RootOfUnity::new((j * g.m) as i64, spec.p as u64)))
            .collect();
        reps.push(MonomialRep { dim: 1, images });
    }
    for r in unit_orbit_reps(spec) {
        let mut images = Vec::with_capacity(elems.len() * p);
        for g in &elems {
            for j in 0..spec.p {
                // g b^j = b^c a^{n^{-c} l} with c = j + m.
                let c = (j + g.m) % spec.p;
                let h = spec.n_pow(-(c as i64)) as u64 * g.l as u64 % spec.q as u64;
                let ph = RootOfUnity::new((h * r as u64) as i64, spec.q as u64);
                images.push((c as usize, ph));
            }
        }
        reps.push(MonomialRep { dim: p, images });
    }
    reps
}

/// A linear character of the centralizer of a class representative, or the
/// character of an irrep of `G` when the representative is the identity.
#[derive(Clone, Debug)]
pub struct CentralizerCharacter {
    spec: GroupSpec,
    t: GroupElement,
    index: u32,
    irrep: Option<MonomialRep>,
}

impl CentralizerCharacter {
    pub fn value(&self, x: GroupElement) -> Result<CycloNumber> {
        let s = &self.spec;
        if multiply(x, self.t, s) != multiply(self.t, x, s) {
            return Err(Error::NotInCentralizer(x.to_string(), self.t.to_string()));
        }
        if let Some(rep) = &self.irrep {
            return Ok(rep.character(x, s));
        }
        Ok(if self.t.m == 0 {
            CycloNumber::root_of_unity((x.l * self.index) as i64, s.q)
        } else {
            CycloNumber::root_of_unity((x.m * self.index) as i64, s.p)
        })
    }
}

/// Character number `index` of `C_G(t)`: for `t = e` the `index`-th irrep of `G`,
/// for `t = a^l` the character `a^{l'} ↦ ζ_q^{l' index}`, for `t = b^k` the
/// character `b^j ↦ ζ_p^{j index}`.
pub fn centralizer_character(
    t: GroupElement,
    index: usize,
    spec: &GroupSpec,
) -> Result<CentralizerCharacter> {
    let bound = if t.is_identity() {
        spec.p as usize + unit_orbit_reps(spec).len()
    } else if t.m == 0 {
        spec.q as usize
    } else {
        spec.p as usize
    };
    if index >= bound {
        return Err(Error::IndexOutOfRange { index, bound });
    }
    let irrep = t.is_identity().then(|| irreps_of_g(spec).swap_remove(index));
    Ok(CentralizerCharacter { spec: *spec, t, index: index as u32, irrep })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(l: u32, m: u32) -> GroupElement {
        GroupElement { l, m }
    }

    #[test]
    fn spec_validation() {
        assert!(GroupSpec::new(11, 5, 4).is_ok());
        assert!(GroupSpec::new(11, 5, 3).is_ok());
        assert!(matches!(GroupSpec::new(11, 5, 2), Err(Error::InvalidSpec(_))));
        assert!(GroupSpec::new(11, 5, 1).is_err());
        assert!(GroupSpec::new(13, 5, 4).is_err());
        assert!(GroupSpec::new(7, 3, 2).is_ok());
        assert!(GroupSpec::new(9, 2, 8).is_err());
    }

    /// `a^l b^m` acting on `Z_q × Z_p` by `(x, y) ↦ (l + n^m x, m + y)`, composed as permutations.
    fn perm_product(s: &GroupSpec, x: GroupElement, y: GroupElement) -> GroupElement {
        let act = |g: GroupElement, (u, v): (u32, u32)| {
            ((g.l + s.n_pow(g.m as i64) * u) % s.q(), (g.m + v) % s.p())
        };
        // The image of the origin determines the element since the action is regular.
        let (l, m) = act(x, act(y, (0, 0)));
        g(l, m)
    }

    #[test]
    fn multiplication_examples() {
        let s = GroupSpec::default();
        let e = s.identity();
        assert_eq!(multiply(e, g(3, 2), &s), g(3, 2));
        assert_eq!(multiply(g(1, 1), g(1, 0), &s), g(5, 1));
        assert_eq!(multiply(g(1, 1), g(8, 4), &s), e);
        for x in s.elements() {
            for y in s.elements() {
                assert_eq!(multiply(x, y, &s), perm_product(&s, x, y));
            }
        }
    }

    #[test]
    fn inverse_examples() {
        let s = GroupSpec::default();
        assert_eq!(inverse(g(0, 0), &s), g(0, 0));
        assert_eq!(inverse(g(1, 1), &s), g(8, 4));
        assert_eq!(inverse(g(3, 0), &s), g(8, 0));
        for x in s.elements() {
            let brute = s.elements().into_iter().find(|&y| multiply(x, y, &s).is_identity());
            assert_eq!(Some(inverse(x, &s)), brute);
        }
    }

    #[test]
    fn group_axioms() {
        let s = GroupSpec::default();
        let el = s.elements();
        for &x in &el {
            assert_eq!(multiply(x, s.identity(), &s), x);
            for &y in &el {
                for &z in &el {
                    assert_eq!(
                        multiply(multiply(x, y, &s), z, &s),
                        multiply(x, multiply(y, z, &s), &s)
                    );
                }
            }
        }
    }

    #[test]
    fn classes_of_default_group() {
        let s = GroupSpec::default();
        let cls = conjugacy_data(&s);
        let reps: Vec<_> = cls.iter().map(|c| c.representative).collect();
        assert_eq!(reps, vec![g(0, 0), g(1, 0), g(2, 0), g(0, 1), g(0, 2), g(0, 3), g(0, 4)]);
        let a_class: Vec<u32> = cls[1].members.iter().map(|x| x.l).collect();
        assert_eq!(a_class, vec![1, 3, 4, 5, 9]);
        assert_eq!(cls[3].members, (0..11).map(|l| g(l, 1)).collect::<Vec<_>>());
        for c in &cls {
            assert_eq!(c.members.len() * c.centralizer.len(), 55);
            assert!(c.coset_reps[0].is_identity());
            for (m, r) in c.members.iter().zip(&c.coset_reps) {
                assert_eq!(conjugate(*r, c.representative, &s), *m);
            }
        }
        let total: usize = cls.iter().map(|c| c.size()).sum();
        assert_eq!(total, 55);
    }

    fn sigma() -> CycloNumber {
        [1, 3, 4, 5, 9].iter().map(|&j| CycloNumber::root_of_unity(j, 11)).sum()
    }

    #[test]
    fn character_table() {
        let s = GroupSpec::default();
        let irr = irreps_of_g(&s);
        assert_eq!(irr.len(), 7);
        assert_eq!(irr[1].character(g(0, 1), &s), CycloNumber::root_of_unity(1, 5));
        assert_eq!(irr[5].character(g(1, 0), &s), sigma());
        assert_eq!(irr[6].character(g(1, 0), &s), sigma().conjugate());
        for k in 1..5 {
            assert!(irr[5].character(g(0, k), &s).is_zero());
        }
        // Homomorphism property on monomial matrices.
        for rep in &irr {
            for x in s.elements() {
                for y in s.elements() {
                    let xy = multiply(x, y, &s);
                    for j in 0..rep.dim() {
                        let (j1, p1) = rep.act(y, j, &s);
                        let (j2, p2) = rep.act(x, j1, &s);
                        assert_eq!(rep.act(xy, j, &s), (j2, p1 * p2));
                    }
                }
            }
        }
    }

    #[test]
    fn column_orthogonality() {
        let s = GroupSpec::default();
        let irr = irreps_of_g(&s);
        let cls = conjugacy_data(&s);
        for c1 in &cls {
            for c2 in &cls {
                let sum: CycloNumber = irr
                    .iter()
                    .map(|r| r.character(c1.representative, &s) * r.character(c2.representative, &s).conjugate())
                    .sum();
                let expect = if c1 == c2 { c1.centralizer.len() as i64 } else { 0 };
                assert_eq!(sum, CycloNumber::from_integer(expect));
            }
        }
    }

    #[test]
    fn centralizer_characters() {
        let s = GroupSpec::default();
        let chi = centralizer_character(g(1, 0), 3, &s).unwrap();
        assert_eq!(chi.value(g(2, 0)).unwrap(), CycloNumber::root_of_unity(6, 11));
        let chi = centralizer_character(g(0, 2), 3, &s).unwrap();
        assert_eq!(chi.value(g(0, 4)).unwrap(), CycloNumber::root_of_unity(12, 5));
        let triv = centralizer_character(g(0, 1), 0, &s).unwrap();
        assert!(triv.value(g(0, 3)).unwrap().is_one());
        assert!(matches!(triv.value(g(1, 0)), Err(Error::NotInCentralizer(..))));
        assert!(centralizer_character(g(0, 1), 5, &s).is_err());
        let e_char = centralizer_character(s.identity(), 5, &s).unwrap();
        assert_eq!(e_char.value(g(1, 0)).unwrap(), sigma());
    }
}
