//! Registry of named checks run by `verify-paper`.
//!
//! Each check belongs to a suite and carries an anchor: the statement it
//! verifies. Golden data is embedded at build time and may be replaced by
//! a directory of files with the same names.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{int, parse_mpoly, rat, MPoly, UPoly};
use crate::geometry::{
    classify_line, collinear, everywhere_locally_solvable, flex_on_curve_check, flex_slope_poly_symbolic,
    flexes_diagonal, local_solvable_at, DiagonalCubic, PointClass, ProjLine, ProjPoint,
};
use crate::k3::{
    cxc_gram, derive_diagonal_model, derive_weierstrass_model, diagonal_cusps_on_branch_locus, divisor_selfint,
    glue_lambda_check, glue_linear_only, h1_scan, ns_catalog, prop_generators, singularity_identity_check,
    special_conic, special_conic_contains_cusps, theta_labels, verify_conic_splitting,
    weierstrass_cusps_on_branch_locus, Family, GenLabel, H1Report, NSCatalog, Sign, GENERATOR_NAMES,
};
use crate::lattice::IntMatrix;
use crate::par::Strategy;

/// Golden file names.
pub const GOLDEN_FILES: [&str; 7] = [
    "weierstrass_sextic.txt",
    "diagonal_sextic.txt",
    "conic.txt",
    "flex_poly.txt",
    "gram.json",
    "galois.json",
    "h1_scan.json",
];

const EMBEDDED: [&str; 7] = [
    include_str!("../golden/weierstrass_sextic.txt"),
    include_str!("../golden/diagonal_sextic.txt"),
    include_str!("../golden/conic.txt"),
    include_str!("../golden/flex_poly.txt"),
    include_str!("../golden/gram.json"),
    include_str!("../golden/galois.json"),
    include_str!("../golden/h1_scan.json"),
];

#[derive(Clone, Debug)]
pub struct Golden {
    files: BTreeMap<&'static str, std::result::Result<String, String>>,
}

impl Golden {
    pub fn embedded() -> Self {
        Golden { files: GOLDEN_FILES.into_iter().zip(EMBEDDED.map(|t| Ok(t.to_string()))).collect() }
    }

    /// Reads the golden files from `dir`. A missing or unreadable file
    /// fails only the checks that use it.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        if !dir.is_dir() {
            return Err(Error::Golden(format!("{} is not a directory", dir.display())));
        }
        let files = GOLDEN_FILES
            .into_iter()
            .map(|name| {
                let path = dir.join(name);
                (name, std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display())))
            })
            .collect();
        Ok(Golden { files })
    }

    fn compare(&self, name: &str, actual: &str) -> std::result::Result<(), String> {
        match self.files.get(name) {
            Some(Ok(text)) if text == actual => Ok(()),
            Some(Ok(_)) => Err(format!("golden mismatch in {name}")),
            Some(Err(e)) => Err(e.clone()),
            None => Err(format!("unknown golden file {name}")),
        }
    }
}

fn matrix_json(m: &IntMatrix) -> Value {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| i64::try_from(x).expect("small")).collect::<Vec<_>>())
        .collect()
}

/// Current serialization of every golden artifact, in [`GOLDEN_FILES`] order.
pub fn render_golden(strategy: Strategy) -> Result<Vec<(&'static str, String)>> {
    let cat = ns_catalog()?;
    let report = h1_scan(&cat, strategy)?;
    render_with(&cat, &report)
}

fn render_with(cat: &NSCatalog, report: &H1Report) -> Result<Vec<(&'static str, String)>> {
    let w = derive_weierstrass_model(&MPoly::var("A"), &MPoly::var("B"))?;
    let d = derive_diagonal_model(&MPoly::var("a"), &MPoly::var("b"), &MPoly::var("c"))?;
    let galois: Value = GENERATOR_NAMES
        .iter()
        .zip(cat.galois_matrices())
        .map(|(n, m)| json!({"name": n, "matrix": matrix_json(&m)}))
        .collect();
    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("serializable") + "\n";
    let texts = [
        format!("{}\n", w.rhs),
        format!("{}\n", d.rhs),
        format!("{}\n", special_conic()),
        format!("{}\n", flex_slope_poly_symbolic()),
        pretty(&cat.lattice().to_json()),
        pretty(&galois),
        pretty(&report.to_json()),
    ];
    Ok(GOLDEN_FILES.into_iter().zip(texts).collect())
}

/// Shared, lazily computed inputs of the checks.
pub struct Context {
    golden: Golden,
    strategy: Strategy,
    catalog: OnceLock<Result<NSCatalog>>,
    h1: OnceLock<Result<H1Report>>,
    rendered: OnceLock<Result<Vec<(&'static str, String)>>>,
}

impl Context {
    pub fn new(golden: Golden, strategy: Strategy) -> Self {
        Context { golden, strategy, catalog: OnceLock::new(), h1: OnceLock::new(), rendered: OnceLock::new() }
    }

    fn catalog(&self) -> std::result::Result<&NSCatalog, String> {
        self.catalog.get_or_init(ns_catalog).as_ref().map_err(|e| e.to_string())
    }

    fn h1(&self) -> std::result::Result<&H1Report, String> {
        let cat = self.catalog()?;
        self.h1.get_or_init(|| h1_scan(cat, self.strategy)).as_ref().map_err(|e| e.to_string())
    }

    fn rendered(&self, name: &str) -> std::result::Result<&str, String> {
        let cat = self.catalog()?;
        let h1 = self.h1()?;
        let all = self.rendered.get_or_init(|| render_with(cat, h1)).as_ref().map_err(|e| e.to_string())?;
        Ok(all.iter().find(|(n, _)| *n == name).map(|(_, t)| t.as_str()).unwrap_or(""))
    }

    fn golden(&self, name: &str) -> std::result::Result<(), String> {
        self.golden.compare(name, self.rendered(name)?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Suite {
    Models,
    Geometry,
    Lattice,
    Ns,
    H1,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Models, Suite::Geometry, Suite::Lattice, Suite::Ns, Suite::H1];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Models => "models",
            Suite::Geometry => "geometry",
            Suite::Lattice => "lattice",
            Suite::Ns => "ns",
            Suite::H1 => "h1",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

type Outcome = std::result::Result<String, String>;

pub struct Check {
    pub name: &'static str,
    pub suite: Suite,
    pub anchor: &'static str,
    run: fn(&Context) -> Outcome,
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub suite: Suite,
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

fn ensure(cond: bool, detail: impl Into<String>) -> Outcome {
    let detail = detail.into();
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn p(src: &str) -> MPoly {
    parse_mpoly(src).expect("well-formed")
}

fn selmer() -> DiagonalCubic {
    DiagonalCubic::from_ints(3, 4, 5).expect("smooth")
}

fn selmer_line(r: i64, s: i64, t: i64) -> Outcome {
    let l = ProjLine::from_ints(r, s, t).map_err(err)?;
    let k = classify_line(&selmer(), &l);
    let square = k.sqrt_disc.as_ref().is_some_and(|q| q * q == k.disc) && !k.disc.is_zero();
    ensure(k.tag == PointClass::CyclicCubic && square, format!("{l}: {} disc {}", k.tag, k.disc))
}

fn rank_disc(ctx: &Context, labels: &[GenLabel], rank: usize, disc: i64) -> Outcome {
    let (r, d) = ctx.catalog()?.rank_disc(labels);
    ensure(r == rank && d == int(disc), format!("rank {r}, disc {d}"))
}

const WEIERSTRASS_SEXTIC: &str = "4*B*r^6 - 4*A*r^5*t + A^2*r^4*s^2 + 36*B*r^3*s^2*t - 4*r^3*t^3 \
    - 18*A*B*r^2*s^4 - 30*A*r^2*s^2*t^2 + 24*A^2*r*s^4*t - (4*A^3 + 27*B^2)*s^6 + 54*B*s^4*t^2 - 27*s^2*t^4";

/// Every registered check, in report order.
pub fn registry() -> Vec<Check> {
    use Suite::*;
    vec![
        Check {
            name: "weierstrass-sextic",
            suite: Models,
            anchor: "u^2 = 4Br^6 - 4Ar^5t + A^2r^4s^2 + ... - 27s^2t^4, u = s^3 d",
            run: |ctx| {
                let m = derive_weierstrass_model(&MPoly::var("A"), &MPoly::var("B")).map_err(err)?;
                ensure(m.rhs == p(WEIERSTRASS_SEXTIC), m.rhs.to_string())?;
                ctx.golden("weierstrass_sextic.txt")?;
                Ok(format!("{} terms", m.rhs.num_terms()))
            },
        },
        Check {
            name: "weierstrass-smoothness-guard",
            suite: Models,
            anchor: "4A^3 + 27B^2 != 0",
            run: |_| ensure(derive_weierstrass_model(&MPoly::zero(), &MPoly::zero()).is_err(), "A = B = 0 rejected"),
        },
        Check {
            name: "diagonal-sextic",
            suite: Models,
            anchor: "3u^2 = 2abc(cr^3s^3+br^3t^3+as^3t^3) - b^2c^2r^6 - a^2c^2s^6 - a^2b^2t^6",
            run: |ctx| {
                let m = derive_diagonal_model(&MPoly::var("a"), &MPoly::var("b"), &MPoly::var("c")).map_err(err)?;
                let expected = p("2*a*b*c*(c*r^3*s^3 + b*r^3*t^3 + a*s^3*t^3) - b^2*c^2*r^6 - a^2*c^2*s^6 - a^2*b^2*t^6");
                ensure(m.rhs == expected && m.lhs == p("3*u^2"), m.to_string())?;
                ctx.golden("diagonal_sextic.txt")?;
                Ok(m.scaling.to_string())
            },
        },
        Check {
            name: "flex-slope-polynomial",
            suite: Models,
            anchor: "F = u^8 + 18Au^4 + 108Bu^2 - 27A^2",
            run: |ctx| {
                let f = flex_slope_poly_symbolic();
                ensure(f == p("u^8 + 18*A*u^4 + 108*B*u^2 - 27*A^2"), f.to_string())?;
                ctx.golden("flex_poly.txt")?;
                Ok(f.to_string())
            },
        },
        Check {
            name: "flex-on-curve",
            suite: Models,
            anchor: "(alpha^2/3, (alpha^4 + 3A)/(6 alpha)) is a flex",
            run: |_| ensure(flex_on_curve_check().map_err(err)?, "reduces to 0 modulo F(alpha)"),
        },
        Check {
            name: "weierstrass-cusps",
            suite: Models,
            anchor: "cusps [0:0:1] and [6 alpha^2 : -6 alpha : 3A - alpha^4]",
            run: |_| ensure(weierstrass_cusps_on_branch_locus().map_err(err)?, "on the branch sextic"),
        },
        Check {
            name: "diagonal-cusps",
            suite: Models,
            anchor: "the nine cusps lie on rst = 0",
            run: |_| ensure(diagonal_cusps_on_branch_locus(&selmer()).map_err(err)?, "(3,4,5): on rst = 0 and the sextic"),
        },
        Check {
            name: "special-conic",
            suite: Models,
            anchor: "27t^2 - 6 alpha^2 rt + (alpha^4+18A)r^2 + (alpha^6+21A alpha^2+81B)s^2 = 0",
            run: |ctx| {
                ensure(special_conic_contains_cusps().map_err(err)?, "six cusps from f_alpha on the conic")?;
                ctx.golden("conic.txt")?;
                Ok(special_conic().to_string())
            },
        },
        Check {
            name: "conic-splitting",
            suite: Models,
            anchor: "alpha^2 u^2 = (Ar^3 + 9Brs^2 + 3rt^2 - 6As^2t)^2",
            run: |_| ensure(verify_conic_splitting(&MPoly::var("A"), &MPoly::var("B")).map_err(err)?, "identity holds on the conic"),
        },
        Check {
            name: "singularity-identity",
            suite: Models,
            anchor: "a^3 = b^2 + bc + c^2",
            run: |_| ensure(singularity_identity_check(), "polynomial identity"),
        },
        Check {
            name: "selmer-line-711",
            suite: Geometry,
            anchor: "711x + 172y + 785z cuts cyclic cubic points on 3x^3+4y^3+5z^3",
            run: |_| selmer_line(711, 172, 785),
        },
        Check {
            name: "selmer-line-657",
            suite: Geometry,
            anchor: "657x + 124y + 815z cuts cyclic cubic points on 3x^3+4y^3+5z^3",
            run: |_| selmer_line(657, 124, 815),
        },
        Check {
            name: "selmer-line-4329",
            suite: Geometry,
            anchor: "4329x + 3988y + 2495z cuts cyclic cubic points on 3x^3+4y^3+5z^3",
            run: |_| selmer_line(4329, 3988, 2495),
        },
        Check {
            name: "fermat-rational-point",
            suite: Geometry,
            anchor: "x^3+y^3+z^3 contains the point [0:-1:1]",
            run: |_| {
                let c = DiagonalCubic::from_ints(1, 1, 1).map_err(err)?;
                let k = classify_line(&c, &ProjLine::from_ints(1, 0, 0).map_err(err)?);
                ensure(k.tag == PointClass::Rational, k.tag.to_string())
            },
        },
        Check {
            name: "selmer-locally-solvable",
            suite: Geometry,
            anchor: "3x^3+4y^3+5z^3 has points everywhere locally",
            run: |_| ensure(everywhere_locally_solvable(&selmer()).map_err(err)?, "p = 2, 3, 5 and the real place"),
        },
        Check {
            name: "local-obstruction-at-3",
            suite: Geometry,
            anchor: "x^3+3y^3+9z^3 has no 3-adic point",
            run: |_| {
                let c = DiagonalCubic::from_ints(1, 3, 9).map_err(err)?;
                ensure(!local_solvable_at(&c, &BigInt::from(3)).map_err(err)?, "not solvable at 3")
            },
        },
        Check {
            name: "diagonal-flexes",
            suite: Geometry,
            anchor: "flexes [0:alpha:zeta^i], [zeta^i:0:beta], [gamma:zeta^i:0] with gamma^3 = -b/a",
            run: |_| {
                let c = selmer();
                let fl = flexes_diagonal(&c).map_err(err)?;
                for pt in &fl.points {
                    ensure(fl.evaluate(&crate::geometry::PlaneCubic::form(&c), pt).map_err(err)?.is_zero(), "flex off the curve")?;
                }
                let g3 = fl.ring.normal_form(&fl.gamma.pow(3)).map_err(err)?;
                ensure(g3 == MPoly::constant(rat(-4, 3)), format!("gamma^3 = {g3}"))
            },
        },
        Check {
            name: "flex-tangent-collinearity",
            suite: Geometry,
            anchor: "the third intersection point of C with the tangent at a flex is the flex",
            run: |_| {
                let c = DiagonalCubic::from_ints(1, 1, 1).map_err(err)?;
                let f = ProjPoint::from_ints(1, -1, 0).map_err(err)?;
                ensure(collinear(&c, &f, &f, &f).map_err(err)?, "[1:-1:0] taken three times")
            },
        },
        Check {
            name: "glue-index",
            suite: Lattice,
            anchor: "[Lambda : L] = 27 and disc Lambda = 27",
            run: |_| {
                let g = glue_lambda_check().map_err(err)?;
                let lin = glue_linear_only().map_err(err)?;
                ensure(
                    g.index == BigInt::from(27) && g.disc == int(27) && lin.index < g.index,
                    format!("index {}, disc {}, linear-only index {}", g.index, g.disc, lin.index),
                )
            },
        },
        Check {
            name: "h-plus-lambda",
            suite: Lattice,
            anchor: "<H> + Lambda has rank 19 and discriminant 27 * 2 = 54",
            run: |_| {
                let g = glue_lambda_check().map_err(err)?;
                ensure(g.with_h_rank == 19 && g.with_h_disc == int(54), format!("rank {}, disc {}", g.with_h_rank, g.with_h_disc))
            },
        },
        Check {
            name: "conic-self-intersection",
            suite: Lattice,
            anchor: "D = 2H - sum of six Theta_P: D^2 = -4, p_a(D) = -1",
            run: |_| {
                let (d2, pa) = divisor_selfint(2, &[1; 6]);
                ensure((d2, pa) == (-4, -1), format!("D^2 = {d2}, p_a = {pa}"))
            },
        },
        Check {
            name: "split-line-self-intersection",
            suite: Lattice,
            anchor: "D = H - three Theta_P: D^2 = -4 < -2",
            run: |_| {
                let (d2, _) = divisor_selfint(1, &[1; 3]);
                ensure(d2 == -4, format!("D^2 = {d2}"))
            },
        },
        Check {
            name: "cxc-gram",
            suite: Lattice,
            anchor: "D_i^2 = 0, D_i.D_j = 1: rank 4 and discriminant -3",
            run: |_| {
                let g = cxc_gram();
                ensure(g.rank() == 4 && g.discriminant() == int(-3) && g.entry(0, 0).is_zero(), format!("disc {}", g.discriminant()))
            },
        },
        Check {
            name: "gram-table",
            suite: Ns,
            anchor: "H^2 = 2, H.D^+- = 2, D_v.Theta = 1 iff same family and omega, D^+.D^- = 0",
            run: |ctx| {
                let cat = ctx.catalog()?;
                let spot = [
                    (GenLabel::H, GenLabel::H, 2),
                    (GenLabel::H, GenLabel::Dconic(0, 0, Sign::Plus), 2),
                    (GenLabel::Dline(Family::R, 1), GenLabel::Theta(Family::R, 0, 1), 1),
                    (GenLabel::Dconic(0, 0, Sign::Plus), GenLabel::Dconic(1, 0, Sign::Minus), 0),
                ];
                for (a, b, v) in spot {
                    ensure(cat.gram_entry(a, b) == v, format!("{a}.{b} = {}", cat.gram_entry(a, b)))?;
                }
                ensure(cat.lattice().is_even(), "even")?;
                ctx.golden("gram.json")?;
                Ok("43 x 43, even".into())
            },
        },
        Check {
            name: "ns-rank-disc-29",
            suite: Ns,
            anchor: "the 29 generators span a lattice of rank 20 and discriminant -27",
            run: |ctx| rank_disc(ctx, &prop_generators(), 20, -27),
        },
        Check {
            name: "ns-rank-disc-43",
            suite: Ns,
            anchor: "all 43 classes span the same rank 20, discriminant -27 lattice",
            run: |ctx| rank_disc(ctx, &GenLabel::all(), 20, -27),
        },
        Check {
            name: "theta-rank-disc",
            suite: Ns,
            anchor: "disc L = 3^9",
            run: |ctx| rank_disc(ctx, &theta_labels(), 18, 19683),
        },
        Check {
            name: "galois-preserves-gram",
            suite: Ns,
            anchor: "(alpha, beta, zeta) -> (zeta alpha, beta, zeta) and its companions act by isometries",
            run: |ctx| {
                let cat = ctx.catalog()?;
                for &g in cat.group().generators() {
                    ensure(cat.preserves_gram(cat.permutation(g)), format!("{} fails", cat.group().word(g)))?;
                    ensure(cat.radical_stable(cat.permutation(g)), "radical not stable")?;
                }
                ctx.golden("galois.json")?;
                Ok("rho, sigma, tau".into())
            },
        },
        Check {
            name: "generators-invariant",
            suite: Ns,
            anchor: "the 29 generators form a Galois-invariant set",
            run: |ctx| ensure(ctx.catalog()?.is_invariant(&prop_generators()), "setwise stable"),
        },
        Check {
            name: "galois-group",
            suite: Ns,
            anchor: "<rho, sigma, tau> has order 18, (Z/3)^2 x| Z/2",
            run: |ctx| {
                let cat = ctx.catalog()?;
                ensure(cat.has_expected_structure(), format!("order {}", cat.group().order()))
            },
        },
        Check {
            name: "relations",
            suite: Ns,
            anchor: "D_r^zeta + D_r^zeta^2 ~ H - sum of Theta_P over P on L_r",
            run: |ctx| {
                let rels = ctx.catalog()?.relation_check();
                let bad: Vec<&str> = rels.iter().filter(|r| !r.in_radical).map(|r| r.name.as_str()).collect();
                ensure(bad.is_empty(), format!("{} relations, failing: {bad:?}", rels.len()))
            },
        },
        Check {
            name: "h1-containment",
            suite: H1,
            anchor: "every subgroup with nontrivial H^1 is contained in <rho sigma, tau>",
            run: |ctx| {
                let v = ctx.h1()?.violations();
                ensure(v.is_empty(), if v.is_empty() { "holds".to_string() } else { format!("outside: {}", v.join("; ")) })
            },
        },
        Check {
            name: "h1-containment-up-to-conjugacy",
            suite: H1,
            anchor: "every subgroup with nontrivial H^1 is contained in a conjugate of <rho sigma, tau>",
            run: |ctx| {
                let v = ctx.h1()?.violations_up_to_conjugacy();
                ensure(v.is_empty(), format!("{} violations", v.len()))
            },
        },
        Check {
            name: "h1-full-group",
            suite: H1,
            anchor: "H^1 of the full group is trivial",
            run: |ctx| {
                let report = ctx.h1()?;
                let full = report.entries.iter().find(|e| e.subgroup.order() == 18).ok_or("no full group")?;
                let triv = report.entries.iter().find(|e| e.subgroup.order() == 1).ok_or("no trivial group")?;
                ensure(full.h1.is_trivial() && triv.h1.is_trivial(), format!("full {}, trivial {}", full.h1, triv.h1))
            },
        },
        Check {
            name: "h1-golden",
            suite: H1,
            anchor: "recorded H^1 values of all 28 subgroups",
            run: |ctx| {
                ctx.golden("h1_scan.json")?;
                Ok(format!("{} subgroups", ctx.h1()?.entries.len()))
            },
        },
    ]
}

/// Runs the checks of the selected suites (all if `only` is empty).
pub fn run_checks(ctx: &Context, only: &[Suite]) -> Vec<CheckResult> {
    registry()
        .into_iter()
        .filter(|c| only.is_empty() || only.contains(&c.suite))
        .map(|c| {
            let start = Instant::now();
            let out = (c.run)(ctx);
            let millis = start.elapsed().as_millis();
            let (passed, detail) = match out {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckResult { name: c.name, suite: c.suite, anchor: c.anchor, passed, detail, millis }
        })
        .collect()
}

/// JSON report; timings are left out so that reports are byte-stable.
pub fn report_json(results: &[CheckResult]) -> Value {
    let passed = results.iter().filter(|r| r.passed).count();
    json!({
        "checks": results.iter().map(|r| json!({
            "name": r.name,
            "suite": r.suite.name(),
            "anchor": r.anchor,
            "passed": r.passed,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
        "total": results.len(),
        "passed": passed,
        "failed": results.len() - passed,
    })
}

/// The flex slope polynomial at a numeric `(A, B)`, for cross-checks.
pub fn flex_poly_at(a: i64, b: i64) -> UPoly {
    let c = crate::geometry::WeierstrassCubic::new(int(a), int(b)).expect("smooth");
    crate::geometry::flex_slope_poly(&c)
}
