//! Braid words, their closures, and colored braid representations.
//!
//! A colored braid acts on the ordered tensor product of the induced
//! representations of its top colors, always parenthesized to the left.
//! The generator `σ_i` is conjugated by the associator that brings strands
//! `i, i+1` together; on a basis vector this is the scalar
//! `ω(F, f_i, f_{i+1})^{-1}` before the braiding and `ω(F, f'_i, f'_{i+1})`
//! after it, with `F` the product of the fluxes of strands `1..i-1`.
//! Since `ω` only sees `b`-exponents, `F` is tracked by its `b`-exponent alone.

use std::fmt;

use serde::Serialize;

use crate::cyclotomic::{CycloNumber, PhaseSum};
use crate::double::{twist, DoubleModel};
use crate::error::{Error, Result};
use crate::group::{multiply, GroupElement};

/// A word in the Artin generators `σ_1 … σ_{strands-1}` and their inverses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::MalformedBraid("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::MalformedBraid(format!(
                    "generator {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Exponent sum.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// `perm[s]` is the bottom position reached by the strand starting at top position `s`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &BraidWord) -> Self {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    /// The same word on `strands + extra` strands.
    pub fn widen(&self, extra: usize) -> Self {
        BraidWord { strands: self.strands + extra, letters: self.letters.clone() }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut idx = 0;
        while idx < self.letters.len() {
            let l = self.letters[idx];
            let run = self.letters[idx..].iter().take_while(|&&x| x == l).count();
            let e = run as i64 * l.signum() as i64;
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "s{}", l.abs())?;
            } else {
                write!(f, "s{}^{e}", l.abs())?;
            }
            idx += run;
        }
        Ok(())
    }
}

/// Parses `s2^-2 s1 s2^-1 s1`, a JSON array `[-2,-2,1,-2,1]`, or plain signed integers.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord> {
    let text = text.trim();
    if text.starts_with('[') {
        let letters: Vec<i32> = serde_json::from_str(text)
            .map_err(|e| Error::MalformedBraid(format!("bad JSON braid: {e}")))?;
        return BraidWord::new(strands, letters);
    }
    let mut letters = Vec::new();
    for tok in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        let bad = || Error::MalformedBraid(format!("bad token {tok:?}"));
        if let Some(rest) = tok.strip_prefix(['s', 'S']) {
            let (k, e) = match rest.split_once('^') {
                Some((k, e)) => (k, e.parse::<i64>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            let k: i32 = k.parse().map_err(|_| bad())?;
            if k <= 0 || e == 0 {
                return Err(bad());
            }
            let sign = if e > 0 { 1 } else { -1 };
            letters.extend(std::iter::repeat(sign * k).take(e.unsigned_abs() as usize));
        } else {
            letters.push(tok.parse::<i32>().map_err(|_| bad())?);
        }
    }
    BraidWord::new(strands, letters)
}

/// One component of a braid closure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    /// Top positions (1-based) of the strands forming the component.
    pub strands: Vec<usize>,
    /// Signed count of crossings between two pieces of this component.
    pub self_writhe: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureStructure {
    pub components: Vec<Component>,
    /// Exponent sum of the word.
    pub writhe: i64,
    /// `linking[c][d]` for distinct components (half the signed inter-component crossings).
    pub linking: Vec<Vec<i64>>,
    /// Component index of each top strand (0-based positions).
    pub component_of: Vec<usize>,
}

pub fn closure_structure(word: &BraidWord) -> ClosureStructure {
    let n = word.strands();
    let perm = word.permutation();
    let mut component_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if component_of[s] != usize::MAX {
            continue;
        }
        let c = members.len();
        let mut cyc = Vec::new();
        let mut x = s;
        while component_of[x] == usize::MAX {
            component_of[x] = c;
            cyc.push(x + 1);
            x = perm[x];
        }
        cyc.sort_unstable();
        members.push(cyc);
    }
    let nc = members.len();
    let mut self_writhe = vec![0i64; nc];
    let mut cross = vec![vec![0i64; nc]; nc];
    let mut at: Vec<usize> = (0..n).collect();
    for &l in word.letters() {
        let i = l.unsigned_abs() as usize - 1;
        let (c1, c2) = (component_of[at[i]], component_of[at[i + 1]]);
        let sign = l.signum() as i64;
        if c1 == c2 {
            self_writhe[c1] += sign;
        } else {
            cross[c1][c2] += sign;
            cross[c2][c1] += sign;
        }
        at.swap(i, i + 1);
    }
    let linking = cross.iter().map(|row| row.iter().map(|x| x / 2).collect()).collect();
    ClosureStructure {
        components: members
            .into_iter()
            .zip(self_writhe)
            .map(|(strands, self_writhe)| Component { strands, self_writhe })
            .collect(),
        writhe: word.writhe(),
        linking,
        component_of,
    }
}

/// A braid word with a simple object on every top strand, constant along closure components.
#[derive(Clone, Debug)]
pub struct ColoredBraid {
    word: BraidWord,
    colors: Vec<usize>,
}

impl ColoredBraid {
    pub fn new(model: &DoubleModel, word: BraidWord, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != word.strands() {
            return Err(Error::InvalidInput(format!(
                "{} colors for {} strands",
                colors.len(),
                word.strands()
            )));
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= model.len()) {
            return Err(Error::IndexOutOfRange { index: bad, bound: model.len() });
        }
        let cs = closure_structure(&word);
        for comp in &cs.components {
            let first = colors[comp.strands[0] - 1];
            if comp.strands.iter().any(|&s| colors[s - 1] != first) {
                return Err(Error::InconsistentColoring {
                    strands: comp.strands.clone(),
                    colors: comp
                        .strands
                        .iter()
                        .map(|&s| model.objects()[colors[s - 1]].label.clone())
                        .collect(),
                });
            }
        }
        Ok(ColoredBraid { word, colors })
    }

    /// Colors given per closure component, in the order of [`closure_structure`].
    pub fn from_components(model: &DoubleModel, word: BraidWord, per_component: &[usize]) -> Result<Self> {
        let cs = closure_structure(&word);
        if per_component.len() != cs.components.len() {
            return Err(Error::InvalidInput(format!(
                "{} component colors for {} components",
                per_component.len(),
                cs.components.len()
            )));
        }
        let colors = cs.component_of.iter().map(|&c| per_component[c]).collect();
        Self::new(model, word, colors)
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }
}

/// A monomial matrix: basis vector `v` maps to `ζ_order^{phases[v]} e_{targets[v]}`.
///
/// Basis vectors of the tensor product are indexed in mixed radix with the
/// first strand most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOperator {
    colors: Vec<usize>,
    dims: Vec<usize>,
    order: u32,
    targets: Vec<u32>,
    phases: Vec<u32>,
}

impl MonomialOperator {
    pub fn dim(&self) -> usize {
        self.targets.len()
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn apply(&self, v: usize) -> (usize, u32) {
        (self.targets[v] as usize, self.phases[v])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_identity(&self) -> bool {
        self.targets.iter().enumerate().all(|(i, &t)| t as usize == i)
            && self.phases.iter().all(|&p| p == 0)
    }

    /// Per-strand basis indices of a tensor basis vector.
    pub fn decode(&self, v: usize) -> Vec<usize> {
        decode(&self.dims, v)
    }

    pub fn trace(&self) -> CycloNumber {
        let mut acc = PhaseSum::new(self.order);
        for (v, (&t, &p)) in self.targets.iter().zip(&self.phases).enumerate() {
            if t as usize == v {
                acc.add(p as i64, 1);
            }
        }
        acc.to_cyclo()
    }
}

fn decode(dims: &[usize], mut v: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in out.iter_mut().zip(dims).rev() {
        *slot = v % d;
        v /= d;
    }
    out
}

fn encode(dims: &[usize], st: &[u32]) -> usize {
    st.iter().zip(dims).fold(0, |acc, (&s, &d)| acc * d + s as usize)
}

/// Ordered product of the strand fluxes of a basis vector.
pub fn total_flux(model: &DoubleModel, colors: &[usize], state: &[usize]) -> GroupElement {
    colors
        .iter()
        .zip(state)
        .fold(model.spec().identity(), |acc, (&c, &v)| {
            multiply(acc, model.flux(c, v), model.spec())
        })
}

/// Precomputed per-letter data for running a colored word over basis vectors.
struct Runner<'a> {
    model: &'a DoubleModel,
    p: usize,
    m: u64,
    /// `(position, sign, colors at positions before the letter)`.
    steps: Vec<(usize, bool, Vec<usize>)>,
}

impl<'a> Runner<'a> {
    fn new(model: &'a DoubleModel, colored: &ColoredBraid) -> Self {
        let mut cols = colored.colors.clone();
        let mut steps = Vec::with_capacity(colored.word.letters.len());
        for &l in &colored.word.letters {
            let i = l.unsigned_abs() as usize - 1;
            steps.push((i, l > 0, cols.clone()));
            cols.swap(i, i + 1);
        }
        Runner {
            model,
            p: model.spec().p() as usize,
            m: model.phase_order() as u64,
            steps,
        }
    }

    /// Runs the word on `st` in place and returns the accumulated phase exponent.
    #[inline]
    fn run(&self, st: &mut [u32]) -> u64 {
        let model = self.model;
        let tables = &model.tables;
        let p = self.p;
        let mut ph: u64 = 0;
        for (i, pos_sign, cols) in &self.steps {
            let (i, positive) = (*i, *pos_sign);
            let mut fb = 0usize;
            for j in 0..i {
                fb += tables[cols[j]].flux_b[st[j] as usize] as usize;
            }
            fb %= p;
            let (tx, ty) = (&tables[cols[i]], &tables[cols[i + 1]]);
            let (vx, vy) = (st[i] as usize, st[i + 1] as usize);
            let (b1, b2) = (tx.flux_b[vx] as usize, ty.flux_b[vy] as usize);
            ph += self.m - model.omega_tab[(fb * p + b1) * p + b2] as u64;
            if positive {
                let g = tx.flux_idx[vx] as usize;
                let (w, e) = ty.action[g * ty.dim + vy];
                st[i] = w;
                st[i + 1] = vx as u32;
                ph += e as u64;
            } else {
                let gi = ty.flux_inv_idx[vy] as usize;
                let (w, e) = tx.action[gi * tx.dim + vx];
                st[i] = vy as u32;
                st[i + 1] = w;
                ph += e as u64 + self.m - model.theta_inv_tab[b1 * p + b2] as u64;
            }
            ph += model.omega_tab[(fb * p + b2) * p + b1] as u64;
        }
        ph % self.m
    }
}

pub fn representation_operator(model: &DoubleModel, colored: &ColoredBraid) -> MonomialOperator {
    let dims: Vec<usize> = colored.colors.iter().map(|&c| model.dim(c)).collect();
    let total: usize = dims.iter().product();
    let runner = Runner::new(model, colored);
    let mut targets = Vec::with_capacity(total);
    let mut phases = Vec::with_capacity(total);
    for v in 0..total {
        let mut st: Vec<u32> = decode(&dims, v).into_iter().map(|x| x as u32).collect();
        let ph = runner.run(&mut st);
        targets.push(encode(&dims, &st) as u32);
        phases.push(ph as u32);
    }
    MonomialOperator {
        colors: colored.colors.clone(),
        dims,
        order: model.phase_order(),
        targets,
        phases,
    }
}

/// Trace of the representation operator: the blackboard-framed invariant of the closure.
pub fn framed_invariant(model: &DoubleModel, colored: &ColoredBraid) -> CycloNumber {
    framed_trace(model, colored).to_cyclo()
}

/// The trace as an exponent histogram.
pub fn framed_trace(model: &DoubleModel, colored: &ColoredBraid) -> PhaseSum {
    let dims: Vec<usize> = colored.colors.iter().map(|&c| model.dim(c)).collect();
    let total: usize = dims.iter().product();
    let runner = Runner::new(model, colored);
    let mut acc = PhaseSum::new(model.phase_order());
    let mut start = vec![0u32; dims.len()];
    let mut st = vec![0u32; dims.len()];
    for _ in 0..total {
        st.copy_from_slice(&start);
        let ph = runner.run(&mut st);
        if st == start {
            acc.add(ph as i64, 1);
        }
        // Odometer increment, last strand fastest.
        for (s, &d) in start.iter_mut().zip(&dims).rev() {
            *s += 1;
            if (*s as usize) < d {
                break;
            }
            *s = 0;
        }
    }
    acc
}

/// The framed invariant times `θ_c^{-w_c}` for every component `c` with self-writhe `w_c`.
pub fn zero_framed_invariant(model: &DoubleModel, colored: &ColoredBraid) -> CycloNumber {
    let framed = framed_invariant(model, colored);
    framed.mul_unit(framing_correction(model, colored))
}

/// `Π_c θ_c^{-w_c}` over closure components.
pub fn framing_correction(model: &DoubleModel, colored: &ColoredBraid) -> crate::RootOfUnity {
    let cs = closure_structure(&colored.word);
    cs.components.iter().fold(crate::RootOfUnity::one(), |acc, c| {
        let color = colored.colors[c.strands[0] - 1];
        acc * twist(model, color).pow(-c.self_writhe)
    })
}
