use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always stored in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = |m: &str| Error::Parse {
        offset: 0,
        message: format!("{m}: `{s}`"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad("bad numerator"))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(
            BigInt::from_str(s).map_err(|_| bad("bad integer"))?,
        )),
    }
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Returns a nonnegative square root when `x` is the square of a rational.
pub fn is_square_rat(x: &Rat) -> Option<Rat> {
    let n = isqrt_exact(x.numer())?;
    let d = isqrt_exact(x.denom())?;
    Some(Rat::new(n, d))
}

/// Prime factorisation of `|n|` as a sorted map prime -> exponent.
/// The factorisation of 0 and of ±1 is empty.
pub fn factor_integer(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut out = BTreeMap::new();
    let m = n.abs();
    if m <= BigInt::one() {
        return out;
    }
    if let Some(small) = m.to_u128() {
        for (p, e) in num_prime::nt_funcs::factorize128(small) {
            out.insert(BigInt::from(p), e as u32);
        }
        return out;
    }
    let big: BigUint = m.to_biguint().expect("nonnegative");
    for (p, e) in num_prime::nt_funcs::factorize(big) {
        out.insert(BigInt::from_biguint(Sign::Plus, p), e as u32);
    }
    out
}

pub fn is_prime(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    match n.to_u64() {
        Some(small) => num_prime::nt_funcs::is_prime64(small),
        None => {
            let big: BigUint = n.to_biguint().expect("positive");
            num_prime::nt_funcs::is_prime(&big, None).probably()
        }
    }
}

/// All positive divisors of `|n|`, ascending. `n` must be nonzero.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_integer(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = d.clone();
            next.push(pk.clone());
            for _ in 0..e {
                pk *= &p;
                next.push(pk.clone());
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

pub(crate) fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}
