use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::MPoly;
use super::rat::{divisors, fmt_rat, lcm_of_denominators, Rat};
use crate::error::{Error, Result};

/// Coefficient ring for [`UPoly`]: an integral domain with exact division.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn exact_div(&self, other: &Self) -> Option<Self>;
}

impl Coeff for Rat {
    fn zero_elem() -> Self {
        Zero::zero()
    }
    fn one_elem() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(n.into())
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
}

impl Coeff for MPoly {
    fn zero_elem() -> Self {
        MPoly::zero()
    }
    fn one_elem() -> Self {
        MPoly::one()
    }
    fn from_i64(n: i64) -> Self {
        MPoly::int(n)
    }
    fn is_zero_elem(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        MPoly::exact_div(self, o)
    }
}

/// Dense univariate polynomial, coefficients indexed by degree.
///
/// The leading coefficient is nonzero unless the polynomial is zero, in
/// which case the coefficient list is empty.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<C: Coeff = Rat> {
    coeffs: Vec<C>,
}

impl<C: Coeff> UPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(C::zero_elem)
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&C::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero_elem(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        UPoly::new(out)
    }

    pub fn eval(&self, x: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero_elem(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// Sylvester matrix of `self` (degree m) and `other` (degree n), of size
    /// (m+n) x (m+n).
    pub fn sylvester(&self, other: &Self) -> Vec<Vec<C>> {
        let m = self.degree().unwrap_or(0);
        let n = other.degree().unwrap_or(0);
        let size = m + n;
        let mut rows = Vec::with_capacity(size);
        for shift in 0..n {
            let mut row = vec![C::zero_elem(); size];
            for (k, c) in self.coeffs.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
        for shift in 0..m {
            let mut row = vec![C::zero_elem(); size];
            for (k, c) in other.coeffs.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
        rows
    }

    pub fn resultant(&self, other: &Self) -> Result<C> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(determinant(self.sylvester(other)))
    }

    /// `(-1)^(n(n-1)/2) * res(p, p') / lc(p)`; for a monic cubic this is
    /// the product of squared root differences.
    pub fn discriminant(&self) -> Result<C> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        if n < 2 {
            return Err(Error::DegreeTooSmall(n));
        }
        let res = self.resultant(&self.derivative())?;
        let lc = self.leading().expect("nonzero");
        let q = res
            .exact_div(lc)
            .ok_or_else(|| Error::InexactDivision("resultant by leading coefficient".into()))?;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { q.neg_ref() } else { q })
    }
}

impl UPoly<Rat> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|c| Rat::from_integer((*c).into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        UPoly::new(coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }

    /// Primitive integer model: same roots, coprime integer coefficients,
    /// positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = lcm_of_denominators(&self.coeffs);
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        let sign = if ints.last().expect("nonzero").is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        for c in &mut ints {
            *c = &*c / &g * &sign;
        }
        ints
    }

    pub fn to_mpoly(&self, var: &str) -> MPoly {
        let x = MPoly::var(var);
        self.coeffs
            .iter()
            .rev()
            .fold(MPoly::zero(), |acc, c| &(&acc * &x) + &MPoly::constant(c.clone()))
    }

    pub fn display_in(&self, var: &str) -> String {
        self.to_mpoly(var).to_string()
    }
}

impl fmt::Display for UPoly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(fmt_rat).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Fraction-free (Bareiss) determinant over an integral domain.
pub fn determinant<C: Coeff>(mut m: Vec<Vec<C>>) -> C {
    let n = m.len();
    if n == 0 {
        return C::one_elem();
    }
    let mut negate = false;
    let mut prev = C::one_elem();
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return C::zero_elem(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul_ref(&m[k][k]).sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = C::zero_elem();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg_ref()
    } else {
        d
    }
}

/// All rational roots with multiplicity, largest first, found by divisor
/// enumeration on the primitive integer model.
pub fn rational_roots(p: &UPoly<Rat>) -> Vec<Rat> {
    let mut roots = Vec::new();
    let mut a = p.primitive_integer();
    if a.is_empty() {
        return roots;
    }
    while a.len() > 1 && a[0].is_zero() {
        roots.push(Rat::zero());
        a.remove(0);
    }
    if a.len() <= 1 {
        return roots;
    }
    let lead = a.last().expect("nonempty").clone();
    let nums = divisors(&a[0]);
    let dens = divisors(&lead);
    let mut candidates: Vec<Rat> = Vec::new();
    for q in &dens {
        for pn in &nums {
            if pn.gcd(q).is_one() {
                candidates.push(Rat::new(pn.clone(), q.clone()));
                candidates.push(Rat::new(-pn.clone(), q.clone()));
            }
        }
    }
    for cand in candidates {
        let (num, den) = (cand.numer().clone(), cand.denom().clone());
        while a.len() > 1 && eval_homogeneous(&a, &num, &den).is_zero() {
            a = divide_linear(&a, &num, &den);
            roots.push(cand.clone());
        }
    }
    roots.sort_by(|x, y| y.cmp(x));
    roots
}

fn eval_homogeneous(a: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    // sum a_i p^i q^(n-i)
    let n = a.len() - 1;
    let mut acc = BigInt::zero();
    let mut qpow = BigInt::one();
    let mut terms = vec![BigInt::zero(); n + 1];
    for i in (0..=n).rev() {
        terms[i] = qpow.clone();
        qpow *= q;
    }
    let mut ppow = BigInt::one();
    for i in 0..=n {
        acc += &a[i] * &ppow * &terms[i];
        ppow *= p;
    }
    acc
}

/// Exact quotient of an integer polynomial by `q*x - p` (which divides it).
fn divide_linear(a: &[BigInt], p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    // a(x) = (q x - p) b(x); solve from the top coefficient down.
    let n = a.len() - 1;
    let mut b = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for k in (1..=n).rev() {
        // coefficient of x^k: q*b[k-1] - p*b[k] = a[k]
        let num = &a[k] + &carry;
        b[k - 1] = num.div_floor(q);
        debug_assert!((&b[k - 1] * q) == num);
        carry = p * &b[k - 1];
    }
    b
}
