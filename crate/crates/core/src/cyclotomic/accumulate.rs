//! Integer combinations of roots of unity of a fixed order.

use num_bigint::BigInt;

use super::poly::field;
use super::CycloNumber;

/// A sum `Σ_k c_k ζ_N^k` with integer `c_k`, accumulated as an exponent histogram.
///
/// Traces of monomial operators and most closed formulas are of this form;
/// collecting counts first and reducing once is far cheaper than adding
/// [`CycloNumber`]s term by term.
#[derive(Clone, Debug)]
pub struct PhaseSum {
    order: u32,
    counts: Vec<i128>,
}

impl PhaseSum {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1);
        PhaseSum { order, counts: vec![0; order as usize] }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Adds `c·ζ_N^k`.
    pub fn add(&mut self, k: i64, c: i64) {
        let idx = k.rem_euclid(self.order as i64) as usize;
        self.counts[idx] += c as i128;
    }

    pub fn add_assign(&mut self, other: &PhaseSum) {
        assert_eq!(self.order, other.order);
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn counts(&self) -> &[i128] {
        &self.counts
    }

    pub fn to_cyclo(&self) -> CycloNumber {
        self.to_cyclo_over(1)
    }

    /// The sum divided by `den`.
    pub fn to_cyclo_over(&self, den: i64) -> CycloNumber {
        let f = field(self.order);
        let mut c = self.counts.clone();
        c.resize(c.len().max(f.phi), 0);
        if f.reduce_i128(&mut c).is_some() {
            return CycloNumber::from_i128(self.order, c, den as i128);
        }
        let mut b: Vec<BigInt> = self.counts.iter().map(|&x| BigInt::from(x)).collect();
        b.resize(b.len().max(f.phi), BigInt::from(0));
        f.reduce_big(&mut b);
        CycloNumber::from_big(self.order, b, BigInt::from(den))
    }
}
