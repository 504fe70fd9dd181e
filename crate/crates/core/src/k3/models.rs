use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{int, parse_mpoly, MPoly, QuotientRing, Rat, Rule};
use crate::geometry::{flexes_diagonal, DiagonalCubic};
use crate::lattice::GramLattice;

const COORDS: [&str; 3] = ["r", "s", "t"];

fn p(src: &str) -> MPoly {
    parse_mpoly(src).expect("well-formed constant expression")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelKind {
    Weierstrass,
    Diagonal,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Weierstrass => "weierstrass",
            ModelKind::Diagonal => "diagonal",
        }
    }
}

/// A double cover `lhs = rhs` of the plane in weighted projective space
/// `P(1,1,1,3)` with coordinates `r, s, t, u`.
#[derive(Clone, Debug, PartialEq)]
pub struct K3Model {
    pub kind: ModelKind,
    pub lhs: MPoly,
    pub rhs: MPoly,
    /// How `u` relates to `d = (x1-x2)(x2-x3)(x3-x1)`.
    pub scaling: &'static str,
}

impl K3Model {
    fn new(kind: ModelKind, lhs: MPoly, rhs: MPoly, scaling: &'static str) -> Result<Self> {
        if rhs.homogeneous_degree(&COORDS) != Some(6) {
            return Err(Error::Derivation(format!("right-hand side is not a sextic in r, s, t: {rhs}")));
        }
        Ok(K3Model { kind, lhs, rhs, scaling })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "terms": self.rhs.num_terms(),
            "u": self.scaling,
        })
    }
}

impl fmt::Display for K3Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

fn numeric(x: &MPoly) -> Option<Rat> {
    x.as_constant()
}

/// Discriminant in `x` of the cubic cut out on `y^2 = x^3 + A x + B` by
/// the line `r x + s y + t = 0`, cleared of denominators:
/// `u^2 = s^6 disc`, i.e. `u = s^3 d`.
pub fn derive_weierstrass_model(a: &MPoly, b: &MPoly) -> Result<K3Model> {
    if let (Some(a), Some(b)) = (numeric(a), numeric(b)) {
        if (int(4) * &a * &a * &a + int(27) * &b * &b).is_zero() {
            return Err(Error::Singular("4A^3 + 27B^2 = 0".into()));
        }
    }
    // s^2 (x^3 + A x + B) - (r x + t)^2
    let s2 = p("s^2");
    let cubic = &(&s2 * &(&(&p("x^3") + &(a * &p("x"))) + b)) - &p("(r*x + t)^2");
    let disc = cubic.to_upoly("x").discriminant()?;
    let rhs = disc
        .exact_div(&s2)
        .ok_or_else(|| Error::Derivation("discriminant is not divisible by s^2".into()))?;
    K3Model::new(ModelKind::Weierstrass, p("u^2"), rhs, "u = s^3 d")
}

/// The same construction for `a x^3 + b y^3 + c = 0`. With `q` the
/// intersection cubic and `lc` its leading coefficient in `x`,
/// `3 u^2 = disc(q) / (27 s^6)`, i.e. `u = lc^2 d / (9 s^3)`.
pub fn derive_diagonal_model(a: &MPoly, b: &MPoly, c: &MPoly) -> Result<K3Model> {
    if [a, b, c].iter().any(|x| x.is_zero()) {
        return Err(Error::Singular("a*b*c = 0".into()));
    }
    let s3 = p("s^3");
    let cubic = &(&(a * &(&s3 * &p("x^3"))) - &(b * &p("(r*x + t)^3"))) + &(c * &s3);
    let disc = cubic.to_upoly("x").discriminant()?;
    let rhs = disc
        .exact_div(&p("27*s^6"))
        .ok_or_else(|| Error::Derivation("discriminant is not divisible by 27 s^6".into()))?;
    K3Model::new(ModelKind::Diagonal, p("3*u^2"), rhs, "u = lc^2 d / (9 s^3)")
}

/// `F = alpha^8 + 18 A alpha^4 + 108 B alpha^2 - 27 A^2` as a rewriting
/// rule, optionally with `beta` a root of `F / (u^2 - alpha^2)`.
fn alpha_ring(with_beta: bool) -> Result<QuotientRing> {
    let mut rules = vec![Rule {
        var: "alpha".into(),
        degree: 8,
        rhs: p("-18*A*alpha^4 - 108*B*alpha^2 + 27*A^2"),
    }];
    if with_beta {
        rules.push(Rule {
            var: "beta".into(),
            degree: 6,
            rhs: p("-(alpha^2*beta^4 + (alpha^4 + 18*A)*beta^2 + alpha^6 + 18*A*alpha^2 + 108*B)"),
        });
    }
    QuotientRing::new(&["alpha", "beta", "A", "B", "r", "s", "t", "u"], rules)
}

fn at_point(e: &MPoly, point: &[MPoly; 3]) -> MPoly {
    let bindings = COORDS.iter().zip(point).map(|(v, x)| (v.to_string(), x.clone())).collect();
    e.substitute(&bindings)
}

/// Cusps of the Weierstrass branch sextic: `[0:0:1]` and
/// `[6 alpha^2 : -6 alpha : 3A - alpha^4]` for the roots `alpha` of `F`.
pub fn weierstrass_cusps() -> Vec<[MPoly; 3]> {
    vec![
        [MPoly::zero(), MPoly::zero(), MPoly::one()],
        [p("6*alpha^2"), p("-6*alpha"), p("3*A - alpha^4")],
    ]
}

/// Every Weierstrass cusp lies on the branch sextic modulo `F(alpha)`.
pub fn weierstrass_cusps_on_branch_locus() -> Result<bool> {
    let model = derive_weierstrass_model(&MPoly::var("A"), &MPoly::var("B"))?;
    let ring = alpha_ring(false)?;
    for cusp in weierstrass_cusps() {
        if !ring.is_zero(&at_point(&model.rhs, &cusp))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cusps `[0:-zeta^i:alpha]`, `[beta:0:-zeta^i]`, `[-zeta^i:gamma:0]` of
/// the diagonal branch sextic, over the ring of the curve's flexes.
pub fn diagonal_cusps(curve: &DiagonalCubic) -> Result<(QuotientRing, Vec<[MPoly; 3]>)> {
    let flexes = flexes_diagonal(curve)?;
    let mut cusps = Vec::with_capacity(9);
    for i in 0..3 {
        let z = -&MPoly::var("zeta").pow(i);
        cusps.push([MPoly::zero(), z.clone(), MPoly::var("alpha")]);
        cusps.push([MPoly::var("beta"), MPoly::zero(), z.clone()]);
        cusps.push([z, flexes.gamma.clone(), MPoly::zero()]);
    }
    Ok((flexes.ring, cusps))
}

/// Each diagonal cusp lies on `rst = 0` and on the branch sextic.
pub fn diagonal_cusps_on_branch_locus(curve: &DiagonalCubic) -> Result<bool> {
    let [a, b, c] = curve.coefficients().map(|x| MPoly::constant(x.clone()));
    let model = derive_diagonal_model(&a, &b, &c)?;
    let (ring, cusps) = diagonal_cusps(curve)?;
    let rst = p("r*s*t");
    for cusp in &cusps {
        if !ring.is_zero(&at_point(&rst, cusp))? || !ring.is_zero(&at_point(&model.rhs, cusp))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The conic through the six cusps attached to the roots of
/// `f_alpha = F / (u^2 - alpha^2)`.
pub fn special_conic() -> MPoly {
    p("27*t^2 - 6*alpha^2*r*t + (alpha^4 + 18*A)*r^2 + (alpha^6 + 21*A*alpha^2 + 81*B)*s^2")
}

/// The six cusps `[6 beta^2 : -6 beta : 3A - beta^4]`, `f_alpha(beta) = 0`,
/// lie on the special conic.
pub fn special_conic_contains_cusps() -> Result<bool> {
    let ring = alpha_ring(true)?;
    let cusp = [p("6*beta^2"), p("-6*beta"), p("3*A - beta^4")];
    ring.is_zero(&at_point(&special_conic(), &cusp))
}

/// The cubic whose square is `alpha^2` times the branch sextic along the
/// special conic.
pub fn conic_square_root() -> MPoly {
    p("A*r^3 + 9*B*r*s^2 + 3*r*t^2 - 6*A*s^2*t")
}

/// Whether `alpha^2 * sextic - root^2` vanishes on the special conic
/// modulo `F(alpha)`, for the model with parameters `a, b`.
pub fn verify_conic_splitting_with(root: &MPoly, a: &MPoly, b: &MPoly) -> Result<bool> {
    let model = derive_weierstrass_model(&MPoly::var("A"), &MPoly::var("B"))?;
    let mut bind = std::collections::HashMap::new();
    bind.insert("A".to_string(), a.clone());
    bind.insert("B".to_string(), b.clone());
    let e = &(&p("alpha^2") * &model.rhs) - &root.pow(2);
    let e = e.substitute(&bind);
    let conic = special_conic().substitute(&bind);
    let rem = e.pseudo_rem(&conic, "t")?;
    let ring = alpha_ring(false)?;
    let ring = if a.has_var("A") || b.has_var("B") {
        ring
    } else {
        let rule = &ring.rules()[0];
        QuotientRing::new(
            &["alpha", "r", "s", "t"],
            vec![Rule { var: rule.var.clone(), degree: rule.degree, rhs: rule.rhs.substitute(&bind) }],
        )?
    };
    ring.is_zero(&rem)
}

pub fn verify_conic_splitting(a: &MPoly, b: &MPoly) -> Result<bool> {
    verify_conic_splitting_with(&conic_square_root(), a, b)
}

/// `(a, b, c)` with `t = -r - s`: `a = r^2 + rs + s^2`,
/// `b = -3rs(r + s)`, `c = r^3 + 3r^2 s - s^3`.
pub fn singularity_polys() -> [MPoly; 3] {
    [p("r^2 + r*s + s^2"), p("-3*r*s*(r + s)"), p("r^3 + 3*r^2*s - s^3")]
}

/// `a^3 - b^2 - bc - c^2` for the polynomials above.
pub fn singularity_residual() -> MPoly {
    let [a, b, c] = singularity_polys();
    &(&(&a.pow(3) - &b.pow(2)) - &(&b * &c)) - &c.pow(2)
}

pub fn singularity_identity_check() -> bool {
    singularity_residual().is_zero()
}

/// `D^2 = 2 m^2 - 2 sum a_P^2` and `p_a = D^2 / 2 + 1` for
/// `D = m H - sum a_P Theta_P`.
pub fn divisor_selfint(m: i64, multiplicities: &[i64]) -> (i64, i64) {
    let d2 = 2 * m * m - 2 * multiplicities.iter().map(|a| a * a).sum::<i64>();
    (d2, d2 / 2 + 1)
}

/// Gram matrix of four classes with `D_i^2 = 0` and `D_i . D_j = 1`.
pub fn cxc_gram() -> GramLattice {
    let g: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i != j)).collect()).collect();
    GramLattice::from_ints(&["D1", "D2", "D3", "D4"], &g).expect("square")
}

/// Index, discriminant and the `<H>` extension of the lattice obtained by
/// gluing nine copies of `A2(-1)` along a code of functions `(Z/3)^2 -> Z/3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    pub base_disc: Rat,
    pub index: BigInt,
    pub disc: Rat,
    pub even: bool,
    pub with_h_rank: usize,
    pub with_h_disc: Rat,
}

impl GlueReport {
    pub fn to_json(&self) -> Value {
        json!({
            "base_disc": self.base_disc.to_string(),
            "index": self.index.to_string(),
            "disc": self.disc.to_string(),
            "even": self.even,
            "with_h": {"rank": self.with_h_rank, "disc": self.with_h_disc.to_string()},
        })
    }
}

/// `L = (+)_9 A2(-1)`, one block per point `(i, j)` of `F_3^2`.
pub fn cusp_lattice() -> GramLattice {
    let mut labels = Vec::new();
    let mut gram = vec![vec![Rat::zero(); 18]; 18];
    for k in 0..9 {
        let (i, j) = (k / 3, k % 3);
        labels.push(format!("P{i}{j}.1"));
        labels.push(format!("P{i}{j}.2"));
        gram[2 * k][2 * k] = int(-2);
        gram[2 * k + 1][2 * k + 1] = int(-2);
        gram[2 * k][2 * k + 1] = int(1);
        gram[2 * k + 1][2 * k] = int(1);
    }
    GramLattice::new(labels, gram).expect("square")
}

/// The glue vector `sum_P f(P) (x_P1 + 2 x_P2) / 3` of `f(i, j) = u i + v j + w`.
pub fn glue_vector(u: i64, v: i64, w: i64) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); 18];
    for k in 0..9 {
        let (i, j) = (k as i64 / 3, k as i64 % 3);
        let f = (u * i + v * j + w).rem_euclid(3);
        out[2 * k] = Rat::new(f.into(), 3.into());
        out[2 * k + 1] = Rat::new((2 * f).into(), 3.into());
    }
    out
}

/// Glues `L` along the given functions.
pub fn glue_by(functions: &[(i64, i64, i64)]) -> Result<GlueReport> {
    let base = cusp_lattice();
    let glue: Vec<Vec<Rat>> = functions.iter().map(|&(u, v, w)| glue_vector(u, v, w)).collect();
    let glued = base.glue(&glue)?;
    let reduced = glued.radical_quotient().lattice;
    let (base_disc, disc) = (base.discriminant(), reduced.discriminant());
    let ratio = &base_disc / &disc;
    let index = crate::exact::is_square_rat(&ratio)
        .filter(|r| r.is_integer())
        .ok_or_else(|| Error::Derivation(format!("disc ratio {ratio} is not a square")))?
        .to_integer();
    let h = GramLattice::from_ints(&["H"], &[vec![2]])?;
    let with_h = h.direct_sum(&reduced);
    Ok(GlueReport {
        base_disc,
        index,
        disc,
        even: reduced.is_even(),
        with_h_rank: with_h.rank(),
        with_h_disc: with_h.discriminant(),
    })
}

/// Glue by all 27 affine functions.
pub fn glue_lambda_check() -> Result<GlueReport> {
    let all: Vec<(i64, i64, i64)> =
        (0..27).map(|k| (k / 9, k / 3 % 3, k % 3)).collect();
    glue_by(&all)
}

/// Glue by the 9 linear functions only.
pub fn glue_linear_only() -> Result<GlueReport> {
    let linear: Vec<(i64, i64, i64)> = (0..9).map(|k| (k / 3, k % 3, 0)).collect();
    glue_by(&linear)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_fermat_specialization() {
        let one = MPoly::one();
        let m = derive_diagonal_model(&one, &one, &one).unwrap();
        assert_eq!(m.rhs, p("2*(r^3*s^3 + r^3*t^3 + s^3*t^3) - r^6 - s^6 - t^6"));
        assert!(derive_diagonal_model(&one, &MPoly::zero(), &one).is_err());
    }

    #[test]
    fn degenerate_weierstrass_rejected() {
        assert!(derive_weierstrass_model(&MPoly::zero(), &MPoly::zero()).is_err());
    }

    #[test]
    fn divisor_arithmetic() {
        assert_eq!(divisor_selfint(2, &[1; 6]), (-4, -1));
        assert_eq!(divisor_selfint(1, &[1; 3]).0, -4);
        assert_eq!(divisor_selfint(1, &[]), (2, 2));
    }

    #[test]
    fn singularity() {
        assert!(singularity_identity_check());
    }
}
