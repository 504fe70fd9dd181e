use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rat::{fmt_rat, Rat};
use super::upoly::UPoly;

/// A named polynomial variable.
///
/// Variables carry a fixed global order: plane and dual-plane coordinates
/// come first, then algebraic symbols, then curve parameters, then any other
/// name alphabetically. Lexicographic term order and the canonical
/// serialization both follow this order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Var(String);

const VAR_ORDER: &[&str] = &[
    "r", "s", "t", "u", "x", "y", "z", "X", "Y", "Z", "zeta", "alpha", "beta", "gamma", "A", "B",
    "a", "b", "c",
];

impl Var {
    pub fn new(name: impl Into<String>) -> Self {
        Var(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Plane or dual-plane coordinate; printed after parameters in a term.
    fn is_coordinate(&self) -> bool {
        self.rank() < 10
    }

    fn rank(&self) -> usize {
        VAR_ORDER
            .iter()
            .position(|v| *v == self.0)
            .unwrap_or(VAR_ORDER.len())
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank()
            .cmp(&other.rank())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Exponent vector aligned with the owning polynomial's variable list.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Invariants: `vars` is sorted and every listed variable occurs in some
/// term; no stored coefficient is zero. Structural equality is therefore
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rat::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Rat::one(), &[(name, 1)])
    }

    /// `c * prod(v^e)`; repeated variables multiply.
    pub fn monomial(c: Rat, powers: &[(&str, u32)]) -> Self {
        let mut vars: Vec<Var> = powers.iter().map(|(v, _)| Var::new(*v)).collect();
        vars.sort();
        vars.dedup();
        let mut exps = vec![0u32; vars.len()];
        for (v, e) in powers {
            let i = vars.binary_search(&Var::new(*v)).expect("present");
            exps[i] += e;
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { vars, terms }.compact()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Terms as `(coefficient, [(variable, exponent)])`, largest first.
    pub fn term_list(&self) -> Vec<(Rat, Vec<(String, u32)>)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let powers = self
                    .vars
                    .iter()
                    .zip(m)
                    .filter(|(_, e)| **e > 0)
                    .map(|(v, e)| (v.0.clone(), *e))
                    .collect();
                (c.clone(), powers)
            })
            .collect()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 if self.vars.is_empty() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    pub fn has_var(&self, name: &str) -> bool {
        self.vars.iter().any(|v| v.0 == name)
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.0 == name)
    }

    fn compact(mut self) -> Self {
        let used: Vec<bool> = (0..self.vars.len())
            .map(|i| self.terms.keys().any(|m| m[i] > 0))
            .collect();
        if used.iter().all(|u| *u) {
            return self;
        }
        let vars = self
            .vars
            .iter()
            .zip(&used)
            .filter(|(_, u)| **u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| {
                let m: Monomial = m
                    .into_iter()
                    .zip(&used)
                    .filter(|(_, u)| **u)
                    .map(|(e, _)| e)
                    .collect();
                (m, c)
            })
            .collect();
        MPoly { vars, terms }
    }

    fn from_map(vars: Vec<Var>, map: HashMap<Monomial, Rat>) -> Self {
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MPoly { vars, terms }.compact()
    }

    /// Remaps this polynomial's exponent vectors onto a sorted superset of
    /// its variables.
    fn aligned_terms(&self, vars: &[Var]) -> Vec<(Monomial, Rat)> {
        if self.vars == vars {
            return self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        }
        let pos: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("superset"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; vars.len()];
                for (i, k) in m.iter().enumerate() {
                    e[pos[i]] = *k;
                }
                (e, c.clone())
            })
            .collect()
    }

    fn merged_vars(&self, other: &MPoly) -> Vec<Var> {
        if self.vars == other.vars {
            return self.vars.clone();
        }
        let mut v: Vec<Var> = self.vars.iter().chain(&other.vars).cloned().collect();
        v.sort();
        v.dedup();
        v
    }

    fn combine(&self, other: &MPoly, sign: bool) -> MPoly {
        let vars = self.merged_vars(other);
        let mut map: HashMap<Monomial, Rat> = self.aligned_terms(&vars).into_iter().collect();
        for (m, c) in other.aligned_terms(&vars) {
            let entry = map.entry(m).or_insert_with(Rat::zero);
            if sign {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
        Self::from_map(vars, map)
    }

    fn product(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        let vars = self.merged_vars(other);
        let a = self.aligned_terms(&vars);
        let b = other.aligned_terms(&vars);
        let mut map: HashMap<Monomial, Rat> = HashMap::with_capacity(a.len() * b.len());
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                *map.entry(m).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        Self::from_map(vars, map)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplies by the monomial `prod(v^e)`.
    pub fn shift(&self, powers: &[(&str, u32)]) -> MPoly {
        self * &MPoly::monomial(Rat::one(), powers)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.index_of(name) {
            Some(i) => self.terms.keys().map(|m| m[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Total degree counted over the named variables only; `None` for zero.
    pub fn total_degree_in(&self, names: &[&str]) -> Option<u32> {
        let idx: Vec<usize> = names.iter().filter_map(|n| self.index_of(n)).collect();
        self.terms
            .keys()
            .map(|m| idx.iter().map(|i| m[*i]).sum())
            .max()
    }

    /// Degree when every term has the same degree in the named variables.
    pub fn homogeneous_degree(&self, names: &[&str]) -> Option<u32> {
        let idx: Vec<usize> = names.iter().filter_map(|n| self.index_of(n)).collect();
        let mut degs = self.terms.keys().map(|m| idx.iter().map(|i| m[*i]).sum::<u32>());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Coefficient of `name^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, name: &str, k: u32) -> MPoly {
        let Some(i) = self.index_of(name) else {
            return if k == 0 { self.clone() } else { MPoly::zero() };
        };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] == k)
            .map(|(m, c)| {
                let mut m = m.clone();
                m[i] = 0;
                (m, c.clone())
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
        .compact()
    }

    /// Partial derivative with respect to `name`.
    pub fn derivative(&self, name: &str) -> MPoly {
        let Some(i) = self.index_of(name) else {
            return MPoly::zero();
        };
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] > 0)
            .map(|(m, c)| {
                let mut m = m.clone();
                let k = m[i];
                m[i] -= 1;
                (m, c * Rat::from_integer(k.into()))
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
        .compact()
    }

    /// Views the polynomial as univariate in `name` with polynomial
    /// coefficients.
    pub fn to_upoly(&self, name: &str) -> UPoly<MPoly> {
        let d = self.degree_in(name);
        UPoly::new((0..=d).map(|k| self.coeff_in(name, k)).collect())
    }

    pub fn from_upoly(p: &UPoly<MPoly>, name: &str) -> MPoly {
        let x = MPoly::var(name);
        let mut acc = MPoly::zero();
        for c in p.coeffs().iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, bindings: &HashMap<String, MPoly>) -> MPoly {
        // Unbound variables stay as themselves.
        let images: Vec<MPoly> = self
            .vars
            .iter()
            .map(|v| {
                bindings
                    .get(&v.0)
                    .cloned()
                    .unwrap_or_else(|| MPoly::var(&v.0))
            })
            .collect();
        let mut cache: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut result = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, e) in m.iter().enumerate() {
                if *e > 0 {
                    let p = cache.entry((i, *e)).or_insert_with(|| images[i].pow(*e));
                    t = &t * &*p;
                }
            }
            result = &result + &t;
        }
        result
    }

    pub fn subst(&self, name: &str, value: &MPoly) -> MPoly {
        let mut b = HashMap::new();
        b.insert(name.to_string(), value.clone());
        self.substitute(&b)
    }

    /// Evaluates the named variables at rational values.
    pub fn eval(&self, values: &[(&str, Rat)]) -> MPoly {
        let b = values
            .iter()
            .map(|(n, v)| (n.to_string(), MPoly::constant(v.clone())))
            .collect();
        self.substitute(&b)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let vars = self.merged_vars(d);
        let dt: Vec<(Monomial, Rat)> = d.aligned_terms(&vars);
        let (dm, dc) = dt.iter().max_by(|a, b| a.0.cmp(&b.0)).cloned()?;
        let mut rem: BTreeMap<Monomial, Rat> = self.aligned_terms(&vars).into_iter().collect();
        let mut quot: HashMap<Monomial, Rat> = HashMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if m.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let qc = &c / &dc;
            for (tm, tc) in &dt {
                let key: Monomial = tm.iter().zip(&qm).map(|(a, b)| a + b).collect();
                let entry = rem.entry(key.clone()).or_insert_with(Rat::zero);
                *entry -= &qc * tc;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert(qm, qc);
        }
        Some(Self::from_map(vars, quot))
    }

    /// Pseudo-remainder of `self` by `divisor` with respect to `name`:
    /// `lc^k * self - q * divisor` with degree in `name` below that of the
    /// divisor.
    pub fn pseudo_rem(&self, divisor: &MPoly, name: &str) -> crate::Result<MPoly> {
        let m = divisor.degree_in(name);
        if m == 0 {
            return Err(crate::Error::ZeroDivisor(name.to_string()));
        }
        let lc = divisor.coeff_in(name, m);
        let mut e = self.clone();
        loop {
            let k = e.degree_in(name);
            if e.is_zero() || k < m {
                return Ok(e);
            }
            let lc_e = e.coeff_in(name, k);
            let t = lc_e.shift(&[(name, k - m)]);
            e = &(&lc * &e) - &(&t * divisor);
        }
    }

    /// Sum of the absolute values of the numerators; a cheap size measure.
    pub fn height(&self) -> Rat {
        self.terms.values().map(|c| c.abs()).fold(Rat::zero(), |a, b| a + b)
    }
}

impl fmt::Display for MPoly {
    /// Canonical serialization: terms in descending lexicographic order,
    /// coefficients as `p` or `p/q`, e.g. `4*B*r^6 - 4*A*r^5*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.iter().all(|e| *e == 0);
            if !a.is_one() || is_const {
                factors.push(fmt_rat(&a));
            }
            let (coords, params): (Vec<_>, Vec<_>) =
                self.vars.iter().zip(m).partition(|(v, _)| v.is_coordinate());
            for (v, e) in params.into_iter().chain(coords) {
                match e {
                    0 => {}
                    1 => factors.push(v.0.clone()),
                    _ => factors.push(format!("{}^{}", v.0, e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                let f: fn(&MPoly, &MPoly) -> MPoly = $body;
                f(self, rhs)
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                let f: fn(&MPoly, &MPoly) -> MPoly = $body;
                f(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &'a MPoly) -> MPoly {
                let f: fn(&MPoly, &MPoly) -> MPoly = $body;
                f(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.combine(b, true));
forward_binop!(Sub, sub, |a, b| a.combine(b, false));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::rat::{int, rat};
    use super::*;

    fn v(n: &str) -> MPoly {
        MPoly::var(n)
    }

    #[test]
    fn difference_of_squares() {
        let (x, y) = (v("x"), v("y"));
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x.pow(2) - &y.pow(2));
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(&p + &MPoly::zero(), p);
    }

    #[test]
    fn cancellation_drops_variables() {
        let p = &(&v("x") + &v("y")) - &v("y");
        assert_eq!(p.vars().len(), 1);
        assert_eq!(p, v("x"));
    }

    #[test]
    fn substitution() {
        let p = &v("x").pow(2) + &MPoly::one();
        let q = p.subst("x", &(&v("t") - &MPoly::one()));
        assert_eq!(q.to_string(), "t^2 - 2*t + 2");
        let sum = &(&v("r") + &v("s")) + &v("t");
        let t = -(&v("r") + &v("s"));
        assert!(sum.subst("t", &t).is_zero());
    }

    #[test]
    fn exact_division() {
        let (x, y) = (v("x"), v("y"));
        let f = &(&x.pow(3) - &y.pow(3)) * &MPoly::int(5);
        let g = &x - &y;
        let q = f.exact_div(&g).unwrap();
        assert_eq!(&q * &g, f);
        assert!((&x + &MPoly::one()).exact_div(&y).is_none());
        assert_eq!(f.exact_div(&MPoly::int(5)).unwrap(), &x.pow(3) - &y.pow(3));
    }

    #[test]
    fn pseudo_remainder() {
        let (t, s) = (v("t"), v("s"));
        let d = &t.pow(2) - &s;
        assert_eq!(t.pow(2).pseudo_rem(&d, "t").unwrap(), s);
        assert!(d.pseudo_rem(&d, "t").unwrap().is_zero());
        assert!(s.pseudo_rem(&s, "t").is_err());
    }

    #[test]
    fn canonical_text() {
        let p = &(&MPoly::monomial(int(4), &[("B", 1), ("r", 6)])
            - &MPoly::monomial(int(4), &[("A", 1), ("r", 5), ("t", 1)]))
            + &MPoly::monomial(rat(-1, 2), &[]);
        assert_eq!(p.to_string(), "4*B*r^6 - 4*A*r^5*t - 1/2");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!((-v("x")).to_string(), "-x");
    }

    #[test]
    fn degrees_and_coefficients() {
        let p = &(&v("x").pow(3) * &v("y")) + &v("y").pow(2);
        assert_eq!(p.degree_in("x"), 3);
        assert_eq!(p.coeff_in("x", 3), v("y"));
        assert_eq!(p.homogeneous_degree(&["x", "y"]), None);
        assert_eq!(p.total_degree_in(&["x", "y"]), Some(4));
        let u = p.to_upoly("x");
        assert_eq!(MPoly::from_upoly(&u, "x"), p);
    }
}
