use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::curves::DiagonalCubic;
use crate::error::{Error, Result};
use crate::exact::{factor_integer, is_prime};

/// Sorted distinct primes dividing `3abc`, for the coprime integer model.
pub fn bad_primes(curve: &DiagonalCubic) -> Vec<BigInt> {
    let [a, b, c] = curve.integer_coefficients();
    factor_integer(&(BigInt::from(3) * a * b * c)).into_keys().collect()
}

fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    if n.is_zero() {
        return u32::MAX;
    }
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Divides out cubes of `p` from each coefficient; the resulting form has a
/// nontrivial `p`-adic zero iff the original does.
fn cube_free(abc: [BigInt; 3], p: &BigInt) -> [BigInt; 3] {
    let p3 = p * p * p;
    abc.map(|mut x| {
        while x.is_multiple_of(&p3) {
            x /= &p3;
        }
        x
    })
}

struct Solver {
    abc: [BigInt; 3],
    p: BigInt,
    max_level: u32,
}

impl Solver {
    fn value(&self, x: &[BigInt; 3]) -> BigInt {
        (0..3).map(|i| &self.abc[i] * &x[i] * &x[i] * &x[i]).sum()
    }

    /// Hensel: `v(F(x)) > 2 v(dF/dx_i (x))` for some `i` gives a `p`-adic zero.
    fn certified(&self, x: &[BigInt; 3], fx: &BigInt) -> bool {
        if fx.is_zero() {
            return true;
        }
        let vf = valuation(fx, &self.p);
        (0..3).any(|i| {
            let d = BigInt::from(3) * &self.abc[i] * &x[i] * &x[i];
            !d.is_zero() && vf > 2 * valuation(&d, &self.p)
        })
    }

    /// Depth-first lifting of `x` (a zero modulo `p^level`); `fixed` marks
    /// the coordinate held at 1.
    fn search(&self, x: [BigInt; 3], level: u32, fixed: usize) -> bool {
        let fx = self.value(&x);
        if self.certified(&x, &fx) {
            return true;
        }
        if level >= self.max_level {
            return true;
        }
        let pk = self.p.pow(level);
        let modulus = &pk * &self.p;
        let free: Vec<usize> = (0..3).filter(|&i| i != fixed).collect();
        let p = self.p.to_u64().expect("small prime");
        for d0 in 0..p {
            for d1 in 0..p {
                let mut y = x.clone();
                y[free[0]] += &pk * d0;
                y[free[1]] += &pk * d1;
                if self.value(&y).is_multiple_of(&modulus) && self.search(y, level + 1, fixed) {
                    return true;
                }
            }
        }
        false
    }
}

/// Whether `a x^3 + b y^3 + c z^3 = 0` has a nontrivial zero over `Q_p`.
pub fn local_solvable_at(curve: &DiagonalCubic, p: &BigInt) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let abc = cube_free(curve.integer_coefficients(), p);
    let m: u32 = abc.iter().map(|x| valuation(x, p)).sum::<u32>() + valuation(&BigInt::from(3), p);
    if m == 0 {
        // smooth reduction: a point over F_p exists and lifts
        return Ok(true);
    }
    if p.to_u64().is_none() {
        return Err(Error::Unsupported(format!("bad prime {p} is too large for exhaustive lifting")));
    }
    let solver = Solver { abc, p: p.clone(), max_level: 2 * m + 3 };
    let pu = p.to_u64().expect("checked");
    let zero = BigInt::zero;
    let one = BigInt::one;
    for fixed in 0..3 {
        // coordinates before `fixed` are divisible by p, `fixed` is 1
        for d0 in 0..pu {
            for d1 in 0..pu {
                let mut x = [zero(), zero(), zero()];
                x[fixed] = one();
                let free: Vec<usize> = (0..3).filter(|&i| i != fixed).collect();
                let digits = [d0, d1];
                if free.iter().zip(digits).any(|(&i, d)| i < fixed && d != 0) {
                    continue;
                }
                for (&i, d) in free.iter().zip(digits) {
                    x[i] = BigInt::from(d);
                }
                if solver.value(&x).is_multiple_of(p) && solver.search(x, 1, fixed) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Per-prime verdicts at the bad primes; every other place is solvable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReport {
    pub verdicts: Vec<(BigInt, bool)>,
}

impl LocalReport {
    pub fn solvable(&self) -> bool {
        self.verdicts.iter().all(|(_, ok)| *ok)
    }

    pub fn failing_primes(&self) -> Vec<BigInt> {
        self.verdicts.iter().filter(|(_, ok)| !ok).map(|(p, _)| p.clone()).collect()
    }

    pub fn to_json(&self, curve: &DiagonalCubic) -> Value {
        json!({
            "curve": curve.to_string(),
            "primes": self.verdicts.iter().map(|(p, ok)| json!({"p": p.to_string(), "solvable": ok})).collect::<Vec<_>>(),
            "real": true,
            "everywhere_locally_solvable": self.solvable(),
        })
    }
}

pub fn local_report(curve: &DiagonalCubic) -> Result<LocalReport> {
    let verdicts = bad_primes(curve)
        .into_iter()
        .map(|p| local_solvable_at(curve, &p).map(|ok| (p, ok)))
        .collect::<Result<_>>()?;
    Ok(LocalReport { verdicts })
}

/// Solvability over every completion of `Q`.
pub fn everywhere_locally_solvable(curve: &DiagonalCubic) -> Result<bool> {
    Ok(local_report(curve)?.solvable())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solvable(a: i64, b: i64, c: i64, p: i64) -> bool {
        local_solvable_at(&DiagonalCubic::from_ints(a, b, c).unwrap(), &p.into()).unwrap()
    }

    #[test]
    fn known_verdicts() {
        for p in [2, 3, 5] {
            assert!(solvable(3, 4, 5, p));
        }
        assert!(!solvable(1, 3, 9, 3));
        assert!(solvable(1, 1, 1, 3));
        assert!(local_solvable_at(&DiagonalCubic::from_ints(1, 1, 1).unwrap(), &BigInt::from(9)).is_err());
    }

    #[test]
    fn bad_prime_sets() {
        let bp = |a, b, c| bad_primes(&DiagonalCubic::from_ints(a, b, c).unwrap());
        assert_eq!(bp(3, 4, 5), [2, 3, 5].map(BigInt::from));
        assert_eq!(bp(1, 1, 1), [BigInt::from(3)]);
        assert_eq!(bp(1, 3, 9), [BigInt::from(3)]);
    }

    #[test]
    fn cube_factors_removed() {
        let p = BigInt::from(2);
        assert_eq!(cube_free([8, -16, 3].map(BigInt::from), &p), [1, -2, 3].map(BigInt::from));
    }
}
