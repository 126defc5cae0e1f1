use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::numtheory::gcd;

/// Nonnegative rational in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rat {
    num: u64,
    den: u64,
}

impl Rat {
    /// Panics on a zero denominator.
    pub fn new(num: u64, den: u64) -> Rat {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Rat { num: num / g, den: den / g }
    }

    pub fn integer(n: u64) -> Rat {
        Rat { num: n, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn checked_add(&self, other: &Rat) -> Option<Rat> {
        let g = gcd(self.den, other.den);
        let den = (self.den / g).checked_mul(other.den)?;
        let num = self.num.checked_mul(other.den / g)?.checked_add(other.num.checked_mul(self.den / g)?)?;
        Some(Rat::new(num, den))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}
