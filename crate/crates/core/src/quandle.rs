//! Alexander quandles `x ▷ y = (1-t)x + t y` on `Z_q` and braid-closure coloring counts.

use serde::Serialize;

use crate::braid::{closure_structure, framed_invariant, BraidWord, ColoredBraid};
use crate::cyclotomic::CycloNumber;
use crate::double::{twist, DoubleModel};
use crate::error::{Error, Result};
use crate::group::GroupSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AlexanderQuandle {
    q: u32,
    t: u32,
}

impl AlexanderQuandle {
    pub fn new(q: u32, t: u32) -> Result<Self> {
        if q < 2 || t % q == 0 {
            return Err(Error::InvalidInput(format!("t = {t} must be a unit mod {q}")));
        }
        Ok(AlexanderQuandle { q, t: t % q })
    }

    /// The quandle of the class `[b^k]`, with `t = n^k`.
    pub fn of_class(spec: &GroupSpec, k: u32) -> Self {
        AlexanderQuandle { q: spec.q(), t: spec.n_pow(k as i64) }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    fn t_inv(&self) -> u64 {
        let (q, t) = (self.q as u64, self.t as u64);
        (1..q).find(|x| x * t % q == 1).expect("t is a unit")
    }
}

pub fn quandle_op(quandle: &AlexanderQuandle, x: u32, y: u32) -> u32 {
    let (q, t) = (quandle.q as u64, quandle.t as u64);
    (((q + 1 - t) * (x as u64 % q) + t * (y as u64 % q)) % q) as u32
}

/// Number of tuples in `Q^strands` fixed by the braid, with `σ_i: (x,y) ↦ (x▷y, x)`.
pub fn coloring_count(quandle: &AlexanderQuandle, word: &BraidWord) -> u64 {
    let n = word.strands();
    let q = quandle.q as u64;
    let t_inv = quandle.t_inv();
    let total = (q as u128).pow(n as u32);
    let mut count = 0;
    let mut start = vec![0u32; n];
    let mut st = vec![0u32; n];
    for _ in 0..total {
        st.copy_from_slice(&start);
        for &l in word.letters() {
            let i = l.unsigned_abs() as usize - 1;
            let (x, y) = (st[i], st[i + 1]);
            if l > 0 {
                st[i] = quandle_op(quandle, x, y);
                st[i + 1] = x;
            } else {
                // Inverse of (x,y) ↦ (x▷y, x): (u,v) ↦ (v, t^{-1}(u - (1-t)v)).
                let one_minus_t = (q + 1 - quandle.t as u64) % q;
                let w = (x as u64 + q * q - one_minus_t * y as u64 % q) % q * t_inv % q;
                st[i] = y;
                st[i + 1] = w as u32;
            }
        }
        if st == start {
            count += 1;
        }
        for s in start.iter_mut().rev() {
            *s += 1;
            if (*s as u64) < q {
                break;
            }
            *s = 0;
        }
    }
    count
}

#[derive(Clone, Debug, Serialize)]
pub struct SingleColorReport {
    pub label: String,
    pub writhe: i64,
    pub coloring_count: u64,
    pub framed: CycloNumber,
    pub predicted: CycloNumber,
    pub holds: bool,
}

/// Checks `framed_invariant = θ^{writhe} · #colorings` with every strand colored `B_{k,s}`.
pub fn single_color_check(model: &DoubleModel, word: &BraidWord, k: u32, s: u32) -> Result<SingleColorReport> {
    let label = format!("B_{{{k},{s}}}");
    let obj = model.find(&label)?;
    let colored = ColoredBraid::new(model, word.clone(), vec![obj; word.strands()])?;
    let framed = framed_invariant(model, &colored);
    let quandle = AlexanderQuandle::of_class(model.spec(), k);
    let count = coloring_count(&quandle, word);
    let writhe = closure_structure(word).writhe;
    let predicted = CycloNumber::from_integer(count as i64).mul_unit(twist(model, obj).pow(writhe));
    let holds = framed == predicted;
    Ok(SingleColorReport { label, writhe, coloring_count: count, framed, predicted, holds })
}
