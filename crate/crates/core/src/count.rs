//! Exact counters: a `u128` fast path that promotes itself to a big integer
//! on overflow.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

pub type Count = BigUint;

#[derive(Clone, Debug, Default)]
pub struct Tally {
    small: u128,
    big: Option<BigUint>,
}

impl Tally {
    pub fn new() -> Self {
        Tally::default()
    }

    #[inline]
    pub fn add(&mut self, x: u128) {
        match self.small.checked_add(x) {
            Some(s) => self.small = s,
            None => {
                let big = self.big.get_or_insert_with(BigUint::zero);
                *big += self.small;
                *big += x;
                self.small = 0;
            }
        }
    }

    pub fn add_big(&mut self, x: &BigUint) {
        match x.to_u128() {
            Some(v) => self.add(v),
            None => *self.big.get_or_insert_with(BigUint::zero) += x,
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.add(other.small);
        if let Some(b) = other.big {
            self.add_big(&b);
        }
        self
    }

    pub fn finish(self) -> BigUint {
        match self.big {
            Some(b) => b + self.small,
            None => BigUint::from(self.small),
        }
    }
}

/// Falling factorial `k (k-1) ... (k-t+1)`, i.e. `t! · C(k, t)`.
pub fn falling_factorial(k: u64, t: u64) -> BigUint {
    if t > k {
        return BigUint::zero();
    }
    (0..t).fold(BigUint::from(1u8), |acc, i| acc * (k - i))
}

/// Natural logarithm of a big count; `-inf` for zero.
pub fn ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Serializes a count as a decimal string.
pub fn as_decimal<S: serde::Serializer>(c: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(c)
}

pub fn factorial(n: u64) -> u64 {
    (1..=n).product()
}
