use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{curves::PlaneCubic, line::ProjLine, WeierstrassCubic};
use crate::error::{Error, Result};
use crate::exact::{is_square_rat, rational_roots, MPoly, Rat, UPoly};

const VARS: [&str; 3] = ["x", "y", "z"];

/// Field of definition of the three points cut out by a line.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum PointClass {
    Rational,
    CyclicCubic,
    NonGalois,
    Degenerate,
}

impl PointClass {
    pub const ALL: [PointClass; 4] = [
        PointClass::Rational,
        PointClass::CyclicCubic,
        PointClass::NonGalois,
        PointClass::Degenerate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PointClass::Rational => "Rational",
            PointClass::CyclicCubic => "CyclicCubic",
            PointClass::NonGalois => "NonGalois",
            PointClass::Degenerate => "Degenerate",
        }
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A classification together with its witness: the intersection cubic and
/// its discriminant.
#[derive(Clone, PartialEq, Debug)]
pub struct CubicPointClass {
    pub tag: PointClass,
    pub poly: UPoly<Rat>,
    pub disc: BigInt,
    pub sqrt_disc: Option<BigInt>,
}

impl CubicPointClass {
    pub fn to_json(&self, line: &ProjLine) -> Value {
        let coords: Vec<Value> = line.coeffs().iter().map(int_json).collect();
        json!({
            "line": coords,
            "class": self.tag.name(),
            "disc": self.disc.to_string(),
            "sqrt_disc": self.sqrt_disc.as_ref().map(|s| s.to_string()),
        })
    }
}

fn int_json(n: &BigInt) -> Value {
    i64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string()))
}

/// Which coordinate a line is solved for before restricting the cubic.
pub trait EliminationChoice {
    fn eliminate(&self, line: &ProjLine) -> usize {
        last_nonzero(line)
    }
}

fn last_nonzero(line: &ProjLine) -> usize {
    (0..3).rev().find(|&i| !line.coeffs()[i].is_zero()).expect("nonzero line")
}

impl EliminationChoice for super::DiagonalCubic {}

impl EliminationChoice for WeierstrassCubic {
    fn eliminate(&self, line: &ProjLine) -> usize {
        if line.coeffs()[1].is_zero() {
            last_nonzero(line)
        } else {
            1
        }
    }
}

/// Restriction of a ternary cubic to a line, as the coefficients of
/// `X^3, X^2 Y, X Y^2, Y^3` in the two remaining coordinates.
pub fn binary_form(form: &MPoly, line: &ProjLine, elim: usize) -> Result<([&'static str; 2], [Rat; 4])> {
    let c = line.coeffs();
    if c[elim].is_zero() {
        return Err(Error::InvalidLine(format!("cannot solve {line} for {}", VARS[elim])));
    }
    let rest: Vec<usize> = (0..3).filter(|&i| i != elim).collect();
    let (xi, yi) = (rest[0], rest[1]);
    let ce = Rat::from_integer(c[elim].clone());
    let value = &MPoly::monomial(-Rat::from_integer(c[xi].clone()) / &ce, &[(VARS[xi], 1)])
        + &MPoly::monomial(-Rat::from_integer(c[yi].clone()) / &ce, &[(VARS[yi], 1)]);
    let g = form.subst(VARS[elim], &value);
    let mut out: [Rat; 4] = Default::default();
    for (i, slot) in out.iter_mut().enumerate() {
        let part = g.coeff_in(VARS[xi], 3 - i as u32).coeff_in(VARS[yi], i as u32);
        *slot = part.as_constant().ok_or_else(|| Error::NotOnCurve(format!("form is not a cubic in x, y, z: {g}")))?;
    }
    Ok(([VARS[xi], VARS[yi]], out))
}

/// Primitive integer model of a polynomial, as a polynomial with integer
/// rational coefficients.
fn primitive(p: &UPoly<Rat>) -> UPoly<Rat> {
    UPoly::from_bigints(&p.primitive_integer())
}

fn chart_polys(f: &[Rat; 4]) -> [UPoly<Rat>; 2] {
    // X/Y with Y = 1, then Y/X with X = 1
    let first = UPoly::new(vec![f[3].clone(), f[2].clone(), f[1].clone(), f[0].clone()]);
    let second = UPoly::new(f.to_vec());
    [first, second]
}

/// The intersection polynomial of a line with a cubic in an affine
/// parameter of the line. The first chart is `X/Y` where `X, Y` are the
/// coordinates left after solving the line for one of them; the second
/// chart `Y/X` is used when a point lies at `Y = 0`.
pub fn intersect_line<C: PlaneCubic + EliminationChoice>(curve: &C, line: &ProjLine) -> Result<UPoly<Rat>> {
    let (_, f) = binary_form(&curve.form(), line, curve.eliminate(line))?;
    chart_polys(&f)
        .into_iter()
        .find(|p| p.degree() == Some(3))
        .map(|p| primitive(&p))
        .ok_or_else(|| Error::Degenerate(format!("{line} meets the curve only at chart seams")))
}

/// A degree three chart of a binary cubic, shifting `Y -> Y + kX` if both
/// coordinate charts lose a root at infinity.
fn witness(f: &[Rat; 4]) -> UPoly<Rat> {
    if let Some(p) = chart_polys(f).into_iter().find(|p| p.degree() == Some(3)) {
        return primitive(&p);
    }
    let g = UPoly::new(vec![f[3].clone(), f[2].clone(), f[1].clone(), f[0].clone()]);
    // f(X, Y + kX) at Y = 1 has leading coefficient f(1, k)
    let mut k = Rat::from_integer(1.into());
    loop {
        if !g.eval(&k).is_zero() {
            let x = UPoly::new(vec![Rat::zero(), Rat::from_integer(1.into())]);
            let yk = UPoly::new(vec![Rat::from_integer(1.into()), k.clone()]);
            let mut acc = UPoly::zero();
            for (i, c) in f.iter().enumerate() {
                let mut term = UPoly::new(vec![c.clone()]);
                for _ in 0..3 - i {
                    term = term.mul(&x);
                }
                for _ in 0..i {
                    term = term.mul(&yk);
                }
                acc = add(&acc, &term);
            }
            return primitive(&acc);
        }
        k += Rat::from_integer(1.into());
    }
}

fn add(p: &UPoly<Rat>, q: &UPoly<Rat>) -> UPoly<Rat> {
    let n = p.coeffs().len().max(q.coeffs().len());
    UPoly::new((0..n).map(|i| p.coeff(i) + q.coeff(i)).collect())
}

/// Classifies a binary cubic by the field of definition of its roots.
pub fn classify_binary(f: &[Rat; 4]) -> CubicPointClass {
    let poly = witness(f);
    let disc = poly.discriminant().expect("degree three").to_integer();
    let has_root = f[0].is_zero() || f[3].is_zero() || !rational_roots(&poly).is_empty();
    let sqrt_disc = if disc.is_negative() {
        None
    } else {
        is_square_rat(&Rat::from_integer(disc.clone())).map(|s| s.to_integer())
    };
    let tag = if disc.is_zero() {
        PointClass::Degenerate
    } else if has_root {
        PointClass::Rational
    } else if sqrt_disc.is_some() {
        PointClass::CyclicCubic
    } else {
        PointClass::NonGalois
    };
    CubicPointClass { tag, poly, disc, sqrt_disc }
}

/// Classifies the three points where `line` meets `curve`.
pub fn classify_line<C: PlaneCubic + EliminationChoice>(curve: &C, line: &ProjLine) -> CubicPointClass {
    let (_, f) = binary_form(&curve.form(), line, curve.eliminate(line)).expect("eliminated coefficient is nonzero");
    classify_binary(&f)
}
