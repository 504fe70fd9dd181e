use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, lcm_of_denominators, parse_rat, MPoly, Rat};

/// A plane cubic given by a ternary form in `x, y, z`.
pub trait PlaneCubic {
    /// The defining homogeneous cubic form.
    fn form(&self) -> MPoly;
}

/// The curve `a x^3 + b y^3 + c z^3 = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalCubic {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl DiagonalCubic {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Result<Self> {
        if a.is_zero() || b.is_zero() || c.is_zero() {
            return Err(Error::Singular("a*b*c = 0".into()));
        }
        Ok(DiagonalCubic { a, b, c })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c))
    }

    /// Parses `"a,b,c"` with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                offset: 0,
                message: format!("expected a,b,c, got `{s}`"),
            });
        }
        Self::new(parse_rat(parts[0])?, parse_rat(parts[1])?, parse_rat(parts[2])?)
    }

    pub fn coefficients(&self) -> [&Rat; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Coefficients scaled to coprime integers (same curve).
    pub fn integer_coefficients(&self) -> [BigInt; 3] {
        let l = lcm_of_denominators([&self.a, &self.b, &self.c]);
        let ints = [&self.a, &self.b, &self.c].map(|x| (x * Rat::from_integer(l.clone())).to_integer());
        let g = ints.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
        ints.map(|x| x / &g)
    }

    /// Integer coefficients as `i64`, when they fit.
    pub fn small_coefficients(&self) -> Option<[i64; 3]> {
        let [a, b, c] = self.integer_coefficients();
        Some([a.try_into().ok()?, b.try_into().ok()?, c.try_into().ok()?])
    }
}

impl PlaneCubic for DiagonalCubic {
    fn form(&self) -> MPoly {
        let m = |c: &Rat, v: &str| MPoly::monomial(c.clone(), &[(v, 3)]);
        &(&m(&self.a, "x") + &m(&self.b, "y")) + &m(&self.c, "z")
    }
}

impl fmt::Display for DiagonalCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", fmt_rat(&self.a), fmt_rat(&self.b), fmt_rat(&self.c))
    }
}

/// The curve `y^2 z = x^3 + A x z^2 + B z^3`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeierstrassCubic {
    a: Rat,
    b: Rat,
}

impl WeierstrassCubic {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        let four: Rat = Rat::from_integer(4.into());
        let tt: Rat = Rat::from_integer(27.into());
        if (&four * &a * &a * &a + &tt * &b * &b).is_zero() {
            return Err(Error::Singular("4A^3 + 27B^2 = 0".into()));
        }
        Ok(WeierstrassCubic { a, b })
    }

    /// Parses `"A;B"` with rational entries.
    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(';').ok_or_else(|| Error::Parse {
            offset: 0,
            message: format!("expected A;B, got `{s}`"),
        })?;
        Self::new(parse_rat(a)?, parse_rat(b)?)
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }
}

impl PlaneCubic for WeierstrassCubic {
    fn form(&self) -> MPoly {
        let y2z = MPoly::monomial(Rat::one(), &[("y", 2), ("z", 1)]);
        let x3 = MPoly::monomial(Rat::one(), &[("x", 3)]);
        let axz = MPoly::monomial(self.a.clone(), &[("x", 1), ("z", 2)]);
        let bz = MPoly::monomial(self.b.clone(), &[("z", 3)]);
        &(&(&y2z - &x3) - &axz) - &bz
    }
}

impl fmt::Display for WeierstrassCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", fmt_rat(&self.a), fmt_rat(&self.b))
    }
}
