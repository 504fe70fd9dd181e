mod common;

use num_bigint::BigInt;
use num_traits::Zero;

use cubic_k3::exact::{int, rat, Rat, UPoly};
use cubic_k3::geometry::{
    classify_line, everywhere_locally_solvable, intersect_line, local_solvable_at, search_cubic_lines,
    search_lines, DiagonalCubic, FastClassifier, PointClass, ProjLine, SearchOptions,
};
use cubic_k3::par::Strategy;

use common::solvable_mod_p3;

fn selmer() -> DiagonalCubic {
    DiagonalCubic::from_ints(3, 4, 5).unwrap()
}

#[test]
fn selmer_lines_are_cyclic() {
    for (r, s, t) in [(711, 172, 785), (657, 124, 815), (4329, 3988, 2495)] {
        let l = ProjLine::from_ints(r, s, t).unwrap();
        let k = classify_line(&selmer(), &l);
        assert_eq!(k.tag, PointClass::CyclicCubic, "{l}");
        let sq = k.sqrt_disc.clone().unwrap();
        assert_eq!(&sq * &sq, k.disc);
        assert!(!k.disc.is_zero());
        assert_eq!(FastClassifier::for_curve(&selmer()).unwrap().classify(&l), Some(PointClass::CyclicCubic));
    }
}

#[test]
fn intersection_cubic_by_substitution() {
    let l = ProjLine::from_ints(711, 172, 785).unwrap();
    let poly = intersect_line(&selmer(), &l).unwrap();
    assert_eq!(poly.degree(), Some(3));
    // points (k : 1 : -(711k + 172)/785) of the line
    let mut ratio: Option<Rat> = None;
    for k in 0..6 {
        let x = int(k);
        let z = -(int(711) * &x + int(172)) / int(785);
        let value = int(3) * &x * &x * &x + int(4) + int(5) * &z * &z * &z;
        let q = value / poly.eval(&x);
        assert_eq!(*ratio.get_or_insert(q.clone()), q);
    }
    let fermat = DiagonalCubic::from_ints(1, 1, 1).unwrap();
    let x0 = ProjLine::from_ints(1, 0, 0).unwrap();
    assert_eq!(intersect_line(&fermat, &x0).unwrap(), UPoly::from_ints(&[1, 0, 0, 1]));
}

#[test]
fn selmer_coordinate_line_is_not_galois() {
    let k = classify_line(&selmer(), &ProjLine::from_ints(1, 0, 0).unwrap());
    assert_eq!(k.tag, PointClass::NonGalois);
    assert_eq!(k.disc, BigInt::from(-10800));
}

#[test]
fn fast_path_matches_exact_classification() {
    for abc in [[3, 4, 5], [1, 1, 1], [1, 2, 3], [1, 1, -2], [2, -7, 9]] {
        let c = DiagonalCubic::from_ints(abc[0], abc[1], abc[2]).unwrap();
        let fast = FastClassifier::for_curve(&c).unwrap();
        let all = search_cubic_lines(&c, 4).unwrap();
        for (l, k) in &all {
            assert_eq!(*k, classify_line(&c, l));
            if let Some(tag) = fast.classify(l) {
                assert_eq!(tag, k.tag, "{abc:?} {l}");
            }
            assert_eq!(k.tag == PointClass::Degenerate, k.disc.is_zero());
        }
    }
}

#[test]
fn search_is_strategy_independent() {
    let c = DiagonalCubic::from_ints(1, 2, 3).unwrap();
    let opts = SearchOptions::new(12);
    let a = search_lines(&c, &opts, Strategy::Sequential).unwrap();
    let b = search_lines(&c, &opts, Strategy::Parallel).unwrap();
    assert_eq!(a.summary, b.summary);
    let lines = |r: &cubic_k3::geometry::SearchResult| r.hits.iter().map(|(l, _)| l.clone()).collect::<Vec<_>>();
    assert_eq!(lines(&a), lines(&b));
    let total: u64 = a.summary.counts.values().sum();
    assert_eq!(total, a.summary.lines);
}

#[test]
fn windowed_search_finds_large_line() {
    let opts = SearchOptions { window: Some([(4329, 4329), (3980, 3990), (2490, 2500)]), ..SearchOptions::new(4329) };
    let res = search_lines(&selmer(), &opts, Strategy::Sequential).unwrap();
    let target = ProjLine::from_ints(4329, 3988, 2495).unwrap();
    assert!(res.hits.iter().any(|(l, k)| *l == target && k.tag == PointClass::CyclicCubic));
}

#[test]
fn height_one_enumeration() {
    // oracle: primitive triples in {-1,0,1}^3 up to sign
    let mut expected = 0;
    for r in -1i64..=1 {
        for s in -1i64..=1 {
            for t in -1i64..=1 {
                let first = [r, s, t].into_iter().find(|&v| v != 0);
                if first == Some(1) {
                    expected += 1;
                }
            }
        }
    }
    let lines = search_cubic_lines(&DiagonalCubic::from_ints(1, 1, 1).unwrap(), 1).unwrap();
    assert_eq!(lines.len(), expected);
}

#[test]
fn local_solvability_verdicts() {
    assert!(everywhere_locally_solvable(&selmer()).unwrap());
    let c139 = DiagonalCubic::from_ints(1, 3, 9).unwrap();
    assert!(!local_solvable_at(&c139, &BigInt::from(3)).unwrap());
    assert!(!everywhere_locally_solvable(&c139).unwrap());
    assert!(everywhere_locally_solvable(&DiagonalCubic::from_ints(1, 1, -2).unwrap()).unwrap());
    assert!(local_solvable_at(&selmer(), &BigInt::from(4)).is_err());
    let scaled = DiagonalCubic::new(rat(3, 2), int(2), rat(5, 2)).unwrap();
    assert!(everywhere_locally_solvable(&scaled).unwrap());
}

#[test]
fn local_solvability_matches_mod_p3_search() {
    for p in [2i64, 3, 5, 7] {
        for a in 1..=6i64 {
            for b in -6..=6i64 {
                for c in -6..=6i64 {
                    if b == 0 || c == 0 {
                        continue;
                    }
                    let curve = DiagonalCubic::from_ints(a, b, c).unwrap();
                    let ours = local_solvable_at(&curve, &BigInt::from(p)).unwrap();
                    let abc = curve.small_coefficients().unwrap();
                    assert_eq!(ours, solvable_mod_p3(abc, p), "({a},{b},{c}) at {p}");
                }
            }
        }
    }
}
