use std::time::Instant;

use cubic_k3::exact::rat;
use cubic_k3::k3::{h1_scan, ns_catalog, prop_generators, theta_labels, GenLabel};
use cubic_k3::par::Strategy;

#[test]
fn ranks_and_discriminants() {
    let cat = ns_catalog().unwrap();
    assert_eq!(cat.rank_disc(&GenLabel::all()), (20, rat(-27, 1)));
    assert_eq!(cat.rank_disc(&prop_generators()), (20, rat(-27, 1)));
    assert_eq!(prop_generators().len(), 29);
    assert_eq!(cat.rank_disc(&theta_labels()), (18, rat(19683, 1)));
    assert!(cat.lattice().is_even());
}

#[test]
fn galois_action() {
    let cat = ns_catalog().unwrap();
    assert!(cat.has_expected_structure());
    for &g in cat.group().generators() {
        assert!(cat.preserves_gram(cat.permutation(g)));
        assert!(cat.radical_stable(cat.permutation(g)));
    }
    assert!(cat.action().is_homomorphism(cat.group()));
    assert!(cat.is_invariant(&prop_generators()));
    let subs = cat.group().enumerate_subgroups();
    let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
    assert_eq!(
        orders,
        [1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 9, 18]
    );
}

#[test]
fn relations() {
    let cat = ns_catalog().unwrap();
    for r in cat.relation_check() {
        assert!(r.in_radical, "{}", r.name);
    }
}

#[test]
fn h1_values() {
    let cat = ns_catalog().unwrap();
    let t = Instant::now();
    let report = h1_scan(&cat, Strategy::Sequential).unwrap();
    eprintln!("scan took {:?}", t.elapsed());
    let nontrivial: Vec<(usize, String, bool)> = report
        .entries
        .iter()
        .filter(|e| !e.h1.is_trivial())
        .map(|e| (e.subgroup.order(), e.h1.to_string(), e.contained_in_rho_sigma_tau))
        .collect();
    eprintln!("{nontrivial:?}");
    assert!(report.violations_up_to_conjugacy().is_empty());
}
