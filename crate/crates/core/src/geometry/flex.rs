use num_traits::{One, Zero};

use super::curves::{DiagonalCubic, PlaneCubic, WeierstrassCubic};
use super::line::ProjPoint;
use crate::error::{Error, Result};
use crate::exact::{determinant, int, MPoly, QuotientRing, Rat, Rule, UPoly};

const VARS: [&str; 3] = ["x", "y", "z"];

/// Hessian determinant of a ternary form.
pub fn hessian(form: &MPoly) -> MPoly {
    let rows = VARS
        .iter()
        .map(|u| VARS.iter().map(|v| form.derivative(u).derivative(v)).collect())
        .collect();
    determinant(rows)
}

fn eval_at(form: &MPoly, p: &ProjPoint) -> Rat {
    let [x, y, z] = p.coords().clone();
    form.eval(&[("x", x), ("y", y), ("z", z)]).as_constant().expect("form in x, y, z")
}

fn gradient_at(form: &MPoly, p: &ProjPoint) -> [Rat; 3] {
    VARS.map(|v| eval_at(&form.derivative(v), p))
}

fn dot(u: &[Rat; 3], v: &[Rat; 3]) -> Rat {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Whether `P + Q + R` is cut out by a line: three distinct points on a
/// line, two equal points with the third on the tangent, or a flex taken
/// three times.
pub fn collinear<C: PlaneCubic>(curve: &C, p: &ProjPoint, q: &ProjPoint, r: &ProjPoint) -> Result<bool> {
    let form = curve.form();
    for pt in [p, q, r] {
        if !eval_at(&form, pt).is_zero() {
            return Err(Error::NotOnCurve(pt.to_string()));
        }
    }
    let (pq, qr, pr) = (p.same_point(q), q.same_point(r), p.same_point(r));
    Ok(match (pq, qr, pr) {
        (true, true, _) => eval_at(&hessian(&form), p).is_zero(),
        (true, false, _) => dot(&gradient_at(&form, p), r.coords()).is_zero(),
        (false, true, _) => dot(&gradient_at(&form, q), p.coords()).is_zero(),
        (false, false, true) => dot(&gradient_at(&form, p), q.coords()).is_zero(),
        (false, false, false) => {
            let rows = [p, q, r].map(|pt| pt.coords().to_vec()).to_vec();
            determinant(rows).is_zero()
        }
    })
}

/// The nine flexes of a diagonal cubic over the ring
/// `Q[zeta, alpha, beta]` with `zeta^2 + zeta + 1 = 0`, `alpha^3 = -c/b`,
/// `beta^3 = -a/c`.
#[derive(Clone, Debug)]
pub struct DiagonalFlexes {
    pub ring: QuotientRing,
    pub gamma: MPoly,
    pub points: Vec<[MPoly; 3]>,
}

pub fn flexes_diagonal(curve: &DiagonalCubic) -> Result<DiagonalFlexes> {
    let [a, b, c] = curve.coefficients().map(Clone::clone);
    let ring = QuotientRing::new(
        &["zeta", "alpha", "beta"],
        vec![
            Rule { var: "zeta".into(), degree: 2, rhs: &MPoly::var("zeta").scale(&int(-1)) - &MPoly::one() },
            Rule { var: "alpha".into(), degree: 3, rhs: MPoly::constant(-&c / &b) },
            Rule { var: "beta".into(), degree: 3, rhs: MPoly::constant(-&a / &c) },
        ],
    )?;
    // gamma = -1/(alpha beta) = -(b/a) alpha^2 beta^2
    let gamma = MPoly::monomial(-&b / &a, &[("alpha", 2), ("beta", 2)]);
    let alpha = MPoly::var("alpha");
    let beta = MPoly::var("beta");
    let mut points = Vec::with_capacity(9);
    for i in 0..3 {
        let zi = MPoly::var("zeta").pow(i);
        points.push([MPoly::zero(), alpha.clone(), zi.clone()]);
        points.push([zi.clone(), MPoly::zero(), beta.clone()]);
        points.push([gamma.clone(), zi, MPoly::zero()]);
    }
    Ok(DiagonalFlexes { ring, gamma, points })
}

impl DiagonalFlexes {
    /// Evaluates a ternary form at a flex and reduces.
    pub fn evaluate(&self, form: &MPoly, point: &[MPoly; 3]) -> Result<MPoly> {
        let bindings = VARS.iter().zip(point).map(|(v, e)| (v.to_string(), e.clone())).collect();
        self.ring.normal_form(&form.substitute(&bindings))
    }
}

/// `u^8 + 18 A u^4 + 108 B u^2 - 27 A^2` with symbolic `A, B`.
pub fn flex_slope_poly_symbolic() -> MPoly {
    let m = |c: i64, pw: &[(&str, u32)]| MPoly::monomial(int(c), pw);
    [
        m(1, &[("u", 8)]),
        m(18, &[("A", 1), ("u", 4)]),
        m(108, &[("B", 1), ("u", 2)]),
        m(-27, &[("A", 2)]),
    ]
    .iter()
    .fold(MPoly::zero(), |acc, t| &acc + t)
}

/// The flex slope polynomial of a numeric Weierstrass cubic: its roots
/// `alpha` give the flexes `(alpha^2/3, (alpha^4 + 3A)/(6 alpha))`.
pub fn flex_slope_poly(curve: &WeierstrassCubic) -> UPoly<Rat> {
    let p = flex_slope_poly_symbolic().eval(&[("A", curve.a().clone()), ("B", curve.b().clone())]);
    UPoly::new((0..=8).map(|k| p.coeff_in("u", k).as_constant().expect("numeric")).collect())
}

/// The flex attached to a root `alpha` of the slope polynomial, as
/// `(x, y numerator, y denominator)` in `alpha, A, B`.
pub fn weierstrass_flex() -> (MPoly, MPoly, MPoly) {
    let x = MPoly::monomial(Rat::new(1.into(), 3.into()), &[("alpha", 2)]);
    let num = &MPoly::monomial(Rat::one(), &[("alpha", 4)]) + &MPoly::monomial(int(3), &[("A", 1)]);
    let den = MPoly::monomial(int(6), &[("alpha", 1)]);
    (x, num, den)
}

/// `Q[A, B][alpha] / (F(alpha))` for the slope polynomial `F`.
pub fn weierstrass_flex_ring() -> Result<QuotientRing> {
    let f = flex_slope_poly_symbolic().subst("u", &MPoly::var("alpha"));
    let lead = MPoly::monomial(Rat::one(), &[("alpha", 8)]);
    QuotientRing::new(
        &["alpha", "A", "B"],
        vec![Rule { var: "alpha".into(), degree: 8, rhs: &lead - &f }],
    )
}

/// Checks symbolically that `(alpha^2/3, (alpha^4+3A)/(6 alpha))` lies on
/// `y^2 = x^3 + A x + B` whenever `F(alpha) = 0`.
pub fn flex_on_curve_check() -> Result<bool> {
    let ring = weierstrass_flex_ring()?;
    let (x, num, den) = weierstrass_flex();
    let rhs = &(&x.pow(3) + &(&MPoly::var("A") * &x)) + &MPoly::var("B");
    let e = &num.pow(2) - &(&den.pow(2) * &rhs);
    ring.is_zero(&e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_flexes_on_curve() {
        let c = DiagonalCubic::from_ints(3, 4, 5).unwrap();
        let fl = flexes_diagonal(&c).unwrap();
        let form = c.form();
        let h = hessian(&form);
        for p in &fl.points {
            assert!(fl.evaluate(&form, p).unwrap().is_zero());
            assert!(fl.evaluate(&h, p).unwrap().is_zero());
        }
        let g3 = fl.ring.normal_form(&fl.gamma.pow(3)).unwrap();
        assert_eq!(g3, MPoly::constant(Rat::new((-4).into(), 3.into())));
    }

    #[test]
    fn weierstrass_flex_identity() {
        assert!(flex_on_curve_check().unwrap());
        let c = WeierstrassCubic::new(int(0), int(1)).unwrap();
        assert_eq!(flex_slope_poly(&c), UPoly::from_ints(&[0, 0, 108, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn collinearity_cases() {
        let c = DiagonalCubic::from_ints(1, 1, 1).unwrap();
        let p = |x, y, z| ProjPoint::from_ints(x, y, z).unwrap();
        assert!(collinear(&c, &p(1, -1, 0), &p(0, 1, -1), &p(1, 0, -1)).unwrap());
        let f = p(1, -1, 0);
        assert!(collinear(&c, &f, &f, &f).unwrap());
        assert!(collinear(&c, &p(1, 1, 1), &p(0, 1, -1), &p(1, 0, -1)).is_err());
    }
}
