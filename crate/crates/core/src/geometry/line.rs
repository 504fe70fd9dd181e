use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, int, lcm_of_denominators, Rat};

/// Scales a nonzero rational triple to coprime integers with first nonzero
/// entry positive.
fn primitive(v: [&Rat; 3]) -> Option<[BigInt; 3]> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let l = lcm_of_denominators(v);
    let ints = v.map(|x| (x * Rat::from_integer(l.clone())).to_integer());
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let neg = ints.iter().find(|x| !x.is_zero()).expect("nonzero").is_negative();
    Some(ints.map(|x| if neg { -(x / &g) } else { x / &g }))
}

/// The line `r x + s y + t z = 0`, stored in canonical primitive form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProjLine {
    coeffs: [BigInt; 3],
}

impl ProjLine {
    pub fn new(r: Rat, s: Rat, t: Rat) -> Result<Self> {
        primitive([&r, &s, &t])
            .map(|coeffs| ProjLine { coeffs })
            .ok_or_else(|| Error::InvalidLine("all coefficients are zero".into()))
    }

    pub fn from_ints(r: i64, s: i64, t: i64) -> Result<Self> {
        Self::new(int(r), int(s), int(t))
    }

    /// Parses `"r,s,t"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse { offset: 0, message: format!("expected r,s,t, got `{s}`") });
        }
        let p = |x: &str| crate::exact::parse_rat(x);
        Self::new(p(parts[0])?, p(parts[1])?, p(parts[2])?)
    }

    pub fn coeffs(&self) -> &[BigInt; 3] {
        &self.coeffs
    }
}

impl fmt::Display for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r, s, t] = &self.coeffs;
        write!(f, "({r},{s},{t})")
    }
}

/// A point `[x : y : z]` of the projective plane.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoint {
    coords: [Rat; 3],
}

impl ProjPoint {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Result<Self> {
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(Error::NotOnCurve("[0:0:0]".into()));
        }
        Ok(ProjPoint { coords: [x, y, z] })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Self> {
        Self::new(int(x), int(y), int(z))
    }

    pub fn coords(&self) -> &[Rat; 3] {
        &self.coords
    }

    /// Equality as points of the projective plane.
    pub fn same_point(&self, other: &ProjPoint) -> bool {
        let (a, b) = (&self.coords, &other.coords);
        (0..3).all(|i| (0..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.coords;
        write!(f, "[{}:{}:{}]", fmt_rat(x), fmt_rat(y), fmt_rat(z))
    }
}
