use std::collections::HashMap;
use std::time::Instant;

use cubic_k3::exact::{int, parse_mpoly, rat, MPoly};
use cubic_k3::geometry::DiagonalCubic;
use cubic_k3::k3::{
    conic_square_root, cxc_gram, derive_diagonal_model, derive_weierstrass_model, diagonal_cusps_on_branch_locus,
    glue_lambda_check, glue_linear_only, singularity_polys, special_conic, special_conic_contains_cusps,
    verify_conic_splitting, verify_conic_splitting_with, weierstrass_cusps_on_branch_locus,
};

fn p(s: &str) -> MPoly {
    parse_mpoly(s).unwrap()
}

const WEIERSTRASS_SEXTIC: &str = "4*B*r^6 - 4*A*r^5*t + A^2*r^4*s^2 + 36*B*r^3*s^2*t - 4*r^3*t^3 - 18*A*B*r^2*s^4 \
     - 30*A*r^2*s^2*t^2 + 24*A^2*r*s^4*t - (4*A^3 + 27*B^2)*s^6 + 54*B*s^4*t^2 - 27*s^2*t^4";
const DIAGONAL_SEXTIC: &str =
    "2*a*b*c*(c*r^3*s^3 + b*r^3*t^3 + a*s^3*t^3) - b^2*c^2*r^6 - a^2*c^2*s^6 - a^2*b^2*t^6";

#[test]
fn weierstrass_sextic() {
    let t = Instant::now();
    let m = derive_weierstrass_model(&MPoly::var("A"), &MPoly::var("B")).unwrap();
    assert!(t.elapsed().as_secs_f64() < 1.0);
    assert_eq!(m.rhs, p(WEIERSTRASS_SEXTIC));
    assert_eq!(m.rhs.num_terms(), 12);
    assert_eq!(m.rhs.homogeneous_degree(&["r", "s", "t"]), Some(6));
    let golden = include_str!("../golden/weierstrass_sextic.txt");
    assert_eq!(m.rhs.to_string(), golden.trim_end());
}

#[test]
fn weierstrass_specialization_commutes() {
    let special = derive_weierstrass_model(&MPoly::int(-1), &MPoly::zero()).unwrap();
    let general = derive_weierstrass_model(&MPoly::var("A"), &MPoly::var("B")).unwrap();
    let mut bind = HashMap::new();
    bind.insert("A".to_string(), MPoly::int(-1));
    bind.insert("B".to_string(), MPoly::zero());
    assert_eq!(special.rhs, general.rhs.substitute(&bind));
}

#[test]
fn diagonal_sextic() {
    let (a, b, c) = (MPoly::var("a"), MPoly::var("b"), MPoly::var("c"));
    let m = derive_diagonal_model(&a, &b, &c).unwrap();
    assert_eq!(m.rhs, p(DIAGONAL_SEXTIC));
    assert_eq!(m.lhs, p("3*u^2"));
    let golden = include_str!("../golden/diagonal_sextic.txt");
    assert_eq!(m.rhs.to_string(), golden.trim_end());
    // swapping (a, r) with (b, s)
    let mut swap = HashMap::new();
    for (x, y) in [("a", "b"), ("b", "a"), ("r", "s"), ("s", "r")] {
        swap.insert(x.to_string(), MPoly::var(y));
    }
    assert_eq!(m.rhs.substitute(&swap), m.rhs);
}

#[test]
fn cusps_lie_on_branch_curves() {
    assert!(weierstrass_cusps_on_branch_locus().unwrap());
    for abc in [[1, 1, 1], [3, 4, 5], [2, -1, 7]] {
        let c = DiagonalCubic::from_ints(abc[0], abc[1], abc[2]).unwrap();
        assert!(diagonal_cusps_on_branch_locus(&c).unwrap(), "{abc:?}");
    }
    // the real cusp [0 : -1 : -1] of the Fermat case, by direct evaluation
    let one = MPoly::one();
    let m = derive_diagonal_model(&one, &one, &one).unwrap();
    let v = m.rhs.eval(&[("r", int(0)), ("s", int(-1)), ("t", int(-1))]);
    assert!(v.is_zero());
    let w = m.rhs.eval(&[("r", int(0)), ("s", int(-1)), ("t", int(1))]);
    assert_eq!(w.as_constant(), Some(int(-4)));
}

#[test]
fn conic() {
    assert_eq!(
        special_conic(),
        p("27*t^2 - 6*alpha^2*r*t + (alpha^4+18*A)*r^2 + (alpha^6+21*A*alpha^2+81*B)*s^2")
    );
    assert!(special_conic_contains_cusps().unwrap());
    let golden = include_str!("../golden/conic.txt");
    assert_eq!(special_conic().to_string(), golden.trim_end());
}

#[test]
fn conic_splitting() {
    let t = Instant::now();
    assert!(verify_conic_splitting(&MPoly::var("A"), &MPoly::var("B")).unwrap());
    assert!(t.elapsed().as_secs_f64() < 30.0);
    assert!(verify_conic_splitting(&MPoly::one(), &MPoly::one()).unwrap());
    assert!(verify_conic_splitting(&MPoly::zero(), &MPoly::one()).unwrap());
    let perturbed = &conic_square_root() + &p("r^3");
    assert!(!verify_conic_splitting_with(&perturbed, &MPoly::var("A"), &MPoly::var("B")).unwrap());
}

#[test]
fn singularity_identity() {
    let [a, b, c] = singularity_polys();
    let lhs = a.pow(3);
    let rhs = &(&b.pow(2) + &(&b * &c)) + &c.pow(2);
    assert_eq!(lhs, rhs);
    let at = |e: &MPoly| e.eval(&[("r", int(1)), ("s", int(1))]).as_constant().unwrap();
    assert_eq!(at(&lhs), at(&rhs));
    assert_eq!(at(&a), int(3));
    let without_bc = &b.pow(2) + &c.pow(2);
    assert_ne!(lhs, without_bc);
}

#[test]
fn glue_lattice() {
    let full = glue_lambda_check().unwrap();
    assert_eq!(full.base_disc, int(19683));
    assert_eq!(full.index, 27.into());
    assert_eq!(full.disc, int(27));
    assert!(full.even);
    assert_eq!((full.with_h_rank, full.with_h_disc.clone()), (19, int(54)));
    let linear = glue_linear_only().unwrap();
    assert!(linear.index < full.index);
    assert_eq!(linear.index, 9.into());
}

#[test]
fn cxc_lattice() {
    let g = cxc_gram();
    assert_eq!(g.discriminant(), int(-3));
    assert_eq!(g.restrict(&[0, 1, 2]).discriminant(), int(2));
    assert_eq!(*g.entry(0, 0), rat(0, 1));
}
