use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::intmat::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Finite abelian group `Z/d1 x ... x Z/dk` with `d1 | d2 | ... | dk`,
/// every `di >= 2`. The empty list is the trivial group.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FinAbGroup {
    divisors: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup::default()
    }

    /// Builds the group from an invariant-factor list; entries equal to 1
    /// are dropped.
    pub fn new(divisors: Vec<BigInt>) -> Result<Self> {
        let divisors: Vec<BigInt> = divisors.into_iter().filter(|d| !d.is_one()).collect();
        if divisors.iter().any(|d| d <= &BigInt::zero()) {
            return Err(Error::Dimension("invariant factors must be positive".into()));
        }
        if divisors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::Dimension("invariant factors must form a divisor chain".into()));
        }
        Ok(FinAbGroup { divisors })
    }

    /// Torsion part of the cokernel of an integer matrix, together with the
    /// free rank of that cokernel.
    pub fn cokernel(m: &IntMatrix) -> (Self, usize) {
        let s = smith_normal_form(m);
        let divs = s.divisors();
        let free = m.rows() - divs.len();
        let g = FinAbGroup { divisors: divs.into_iter().filter(|d| !d.is_one()).collect() };
        (g, free)
    }

    pub fn divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// Direct sum, renormalised to invariant factors.
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let all: Vec<BigInt> = self.divisors.iter().chain(&other.divisors).cloned().collect();
        let mut m = IntMatrix::zeros(all.len(), all.len());
        for (i, d) in all.into_iter().enumerate() {
            m.set(i, i, d);
        }
        FinAbGroup::cokernel(&m).0
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}
