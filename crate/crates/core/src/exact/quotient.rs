use std::collections::BTreeSet;

use super::mpoly::MPoly;
use crate::error::{Error, Result};

/// Monic rewriting rule `var^degree = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub var: String,
    pub degree: u32,
    pub rhs: MPoly,
}

/// Polynomial ring modulo a triangular family of monic univariate
/// relations, e.g. `zeta^2 = -zeta - 1`, `alpha^3 = -c/b`.
///
/// Rule `i` may mention only its own variable (below its degree), the
/// variables of earlier rules and free parameters. Exhaustive rewriting,
/// last rule first, then yields a unique normal form.
#[derive(Clone, Debug, Default)]
pub struct QuotientRing {
    variables: Vec<String>,
    rules: Vec<Rule>,
}

impl QuotientRing {
    /// `variables` lists every name allowed in elements (free parameters
    /// included); rules are given in tower order.
    pub fn new(variables: &[&str], rules: Vec<Rule>) -> Result<Self> {
        let declared: BTreeSet<&str> = variables.iter().copied().collect();
        for (i, rule) in rules.iter().enumerate() {
            if !declared.contains(rule.var.as_str()) {
                return Err(Error::MissingRule(rule.var.clone()));
            }
            if rule.degree == 0 || rule.rhs.degree_in(&rule.var) >= rule.degree {
                return Err(Error::NotTriangular(rule.var.clone()));
            }
            for later in &rules[i + 1..] {
                if rule.rhs.has_var(&later.var) || later.var == rule.var {
                    return Err(Error::NotTriangular(rule.var.clone()));
                }
            }
            for v in rule.rhs.vars() {
                if !declared.contains(v.name()) {
                    return Err(Error::MissingRule(v.name().to_string()));
                }
            }
        }
        Ok(QuotientRing {
            variables: variables.iter().map(|s| s.to_string()).collect(),
            rules,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    /// Unique reduced representative; zero exactly for ideal members.
    pub fn normal_form(&self, e: &MPoly) -> Result<MPoly> {
        for v in e.vars() {
            if !self.variables.iter().any(|d| d == v.name()) {
                return Err(Error::MissingRule(v.name().to_string()));
            }
        }
        let mut cur = e.clone();
        for rule in self.rules.iter().rev() {
            cur = reduce_var(&cur, rule);
        }
        Ok(cur)
    }

    pub fn is_zero(&self, e: &MPoly) -> Result<bool> {
        Ok(self.normal_form(e)?.is_zero())
    }
}

fn reduce_var(e: &MPoly, rule: &Rule) -> MPoly {
    let n = rule.degree;
    let mut cur = e.clone();
    let mut powers: Vec<MPoly> = vec![MPoly::one()];
    loop {
        let d = cur.degree_in(&rule.var);
        if d < n {
            return cur;
        }
        // Rewrite every coefficient of var^k with k >= n in one sweep.
        let mut next = MPoly::zero();
        for k in 0..=d {
            let c = cur.coeff_in(&rule.var, k);
            if c.is_zero() {
                continue;
            }
            let q = k / n;
            while powers.len() <= q as usize {
                let p = powers.last().expect("nonempty") * &rule.rhs;
                powers.push(p);
            }
            let term = &c.shift(&[(&rule.var, k % n)]) * &powers[q as usize];
            next = &next + &term;
        }
        cur = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::int;

    fn zeta_ring() -> QuotientRing {
        let z = MPoly::var("zeta");
        QuotientRing::new(
            &["zeta"],
            vec![Rule {
                var: "zeta".into(),
                degree: 2,
                rhs: &(-&z) - &MPoly::one(),
            }],
        )
        .unwrap()
    }

    #[test]
    fn cube_roots_of_unity() {
        let r = zeta_ring();
        let z = MPoly::var("zeta");
        assert_eq!(r.normal_form(&z.pow(3)).unwrap(), MPoly::one());
        let s = &(&MPoly::one() + &z) + &z.pow(2);
        assert!(r.is_zero(&s).unwrap());
        assert_eq!(r.normal_form(&z.pow(5)).unwrap(), &(-&z) - &MPoly::one());
    }

    #[test]
    fn symbolic_cube_root() {
        let rhs = -&(&MPoly::var("c") * &MPoly::var("binv"));
        let r = QuotientRing::new(
            &["alpha", "b", "c", "binv"],
            vec![Rule {
                var: "alpha".into(),
                degree: 3,
                rhs: rhs.clone(),
            }],
        )
        .unwrap();
        let a = MPoly::var("alpha");
        assert_eq!(r.normal_form(&a.pow(3)).unwrap(), rhs);
        assert_eq!(r.normal_form(&a.pow(7)).unwrap(), &a * &rhs.pow(2));
    }

    #[test]
    fn rejects_bad_input() {
        let r = zeta_ring();
        assert!(matches!(
            r.normal_form(&MPoly::var("w")),
            Err(Error::MissingRule(_))
        ));
        let bad = Rule {
            var: "zeta".into(),
            degree: 2,
            rhs: MPoly::var("zeta").pow(2),
        };
        assert!(QuotientRing::new(&["zeta"], vec![bad]).is_err());
        assert_eq!(r.normal_form(&MPoly::int(3)).unwrap(), MPoly::constant(int(3)));
    }
}
