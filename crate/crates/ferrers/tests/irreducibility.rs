use std::collections::BTreeSet;

use ferrers::diagram::{enumerate_order, families};
use ferrers::irreducibility::{
    d3_families_check, d3_family, digraph_sources, digraph_verdict, enumerate_irreducible, is_irreducible_classified,
    is_irreducible_local, is_n_irreducible_local, Classified, Method, PointKind,
};
use ferrers::young_digraph::build;
use ferrers::{DiagramPair, Error, FerrersDiagram};

fn diag(cols: &[usize]) -> FerrersDiagram {
    FerrersDiagram::new(cols.to_vec()).unwrap()
}

fn pair(cols: &[usize], d: usize) -> DiagramPair {
    DiagramPair::new(diag(cols), d).unwrap()
}

fn local(cols: &[usize], d: usize) -> bool {
    is_irreducible_local(&pair(cols, d)).irreducible
}

#[test]
fn empty_diagram_is_irreducible() {
    for d in 2..8 {
        assert!(local(&[], d));
    }
}

#[test]
fn rectangles_are_irreducible_only_as_large_squares() {
    for a in 1..7 {
        for b in 1..7 {
            for d in 2..6 {
                assert_eq!(local(&vec![a; b], d), a == b && a >= d, "a={a} b={b} d={d}");
            }
        }
    }
}

#[test]
fn reducible_example_with_balanced_profile() {
    let p = pair(&[5, 5, 4, 3, 2], 5);
    let v = is_irreducible_local(&p);
    assert!(!v.irreducible);
    assert_eq!(v.nu_profile, vec![2, 3, 3, 3, 2]);
    assert_eq!(v.method, Method::Local);
    let w = v.witness.unwrap();
    let changed = match w.kind {
        PointKind::Addible => p.diagram.with_point(w.point).unwrap().nu_min_value(5) == 3,
        PointKind::Removable => p.diagram.without_point(w.point).unwrap().nu_min_value(5) == 2,
    };
    assert!(changed);
    // (d-1, d-1) = (4,4) is not in the diagram, so the theorem does not apply.
    assert_eq!(is_irreducible_classified(&p).unwrap(), Classified::PremiseNotMet);
}

#[test]
fn classified_examples() {
    for d in 3..8 {
        let t = families::triangle(2 * d - 3);
        let c = is_irreducible_classified(&DiagramPair::new(t, d).unwrap()).unwrap();
        assert!(c.verdict().unwrap().irreducible, "d={d}");
    }
    // Both examples miss (4,4), so the theorem is silent; the local test decides.
    for (cols, profile) in [(&[6, 6, 3, 3, 3], [4, 3, 3, 4, 3]), (&[5, 5, 5, 3, 3], [3, 4, 5, 4, 3])] {
        let p = pair(cols, 5);
        assert_eq!(is_irreducible_classified(&p).unwrap(), Classified::PremiseNotMet);
        let v = is_irreducible_local(&p);
        assert!(v.irreducible);
        assert_eq!(v.nu_profile, profile.to_vec());
    }
    assert!(matches!(is_irreducible_classified(&pair(&[2], 1)), Err(Error::Domain(_))));
}

#[test]
fn three_way_agreement_to_order_six() {
    for d in 2..=6 {
        let g = build(6, d, false).unwrap();
        for dg in enumerate_order(6, &FerrersDiagram::empty()) {
            let p = DiagramPair::new(dg.clone(), d).unwrap();
            let by_local = is_irreducible_local(&p).irreducible;
            let by_graph = digraph_verdict(&g, &dg).unwrap().irreducible;
            assert_eq!(by_local, by_graph, "({dg}, {d})");
            if let Classified::Verdict(v) = is_irreducible_classified(&p).unwrap() {
                assert_eq!(v.irreducible, by_local, "({dg}, {d})");
            }
        }
    }
}

#[test]
fn n_irreducible_matches_global_test() {
    for d in 2..=5 {
        for dg in enumerate_order(6, &FerrersDiagram::empty()) {
            let p = DiagramPair::new(dg.clone(), d).unwrap();
            let global = is_irreducible_local(&p).irreducible;
            for n in dg.proper_order().max(1)..=6 {
                assert_eq!(is_n_irreducible_local(&p, n).unwrap().irreducible, global, "({dg}, {d}) n={n}");
            }
        }
    }
    assert!(is_n_irreducible_local(&pair(&[3, 3], 2), 2).is_err());
}

#[test]
fn transpose_invariance_and_triangle_containment() {
    for d in 1..=5 {
        for dg in enumerate_order(6, &FerrersDiagram::empty()) {
            let irr = local(dg.columns(), d);
            assert_eq!(irr, local(dg.transpose().columns(), d));
            if irr && !dg.is_empty() {
                assert!(families::triangle(d).is_subset_of(&dg));
                assert!(dg.nu_min_value(d) > 0);
            }
            if irr && dg.nu_min_value(d) == 0 {
                assert!(dg.is_empty());
            }
        }
    }
}

#[test]
fn triangle_classification() {
    for d in 2..=7 {
        for n in 1..=2 * d - 1 {
            let irr = is_irreducible_local(&DiagramPair::new(families::triangle(n), d).unwrap()).irreducible;
            assert_eq!(irr, d <= n && n <= 2 * d - 3, "n={n} d={d}");
        }
    }
}

#[test]
fn enumeration_examples() {
    let got: BTreeSet<_> = enumerate_irreducible(5, 5).unwrap().into_iter().collect();
    let expected: BTreeSet<_> =
        [&[5, 5, 5, 5, 5][..], &[5, 5, 5, 3, 3], &[5, 5, 4, 2, 2], &[5, 5, 3, 3, 2], &[5, 4, 3, 2, 1]].iter().map(|c| diag(c)).collect();
    assert_eq!(got, expected);

    let got: BTreeSet<_> = enumerate_irreducible(3, 5).unwrap().into_iter().collect();
    let expected: BTreeSet<_> = d3_family(5).into_iter().collect();
    assert_eq!(got, expected);
    assert!(got.contains(&families::g(3).unwrap()));
    assert!(got.contains(&families::e(5).unwrap()));
    assert!(got.contains(&families::f(5).unwrap()));
}

#[test]
fn distance_one_has_no_global_irreducibles() {
    // nu_min = |D| at d = 1, so every addible point raises it.
    for dg in enumerate_order(5, &FerrersDiagram::empty()) {
        assert!(!local(dg.columns(), 1), "({dg})");
    }
    // Inside [n] x [n] only the full square survives.
    for n in 1..=5 {
        assert!(is_n_irreducible_local(&DiagramPair::new(families::square(n), 1).unwrap(), n).unwrap().irreducible);
        assert_eq!(digraph_sources(n, 1, false).unwrap(), vec![families::square(n)]);
    }
}

#[test]
fn enumeration_at_distance_one_gives_squares() {
    let got = enumerate_irreducible(1, 2).unwrap();
    assert_eq!(got, vec![diag(&[1]), diag(&[2, 2])]);
}

#[test]
fn enumeration_matches_restricted_sources() {
    for d in 2..=5 {
        for n in d..=7 {
            let by_enum: BTreeSet<_> = enumerate_irreducible(d, n).unwrap().into_iter().collect();
            let by_graph: BTreeSet<_> = (d..=n)
                .flat_map(|m| digraph_sources(m, d, true).unwrap())
                .collect();
            assert_eq!(by_enum, by_graph, "d={d} n={n}");
        }
    }
}

#[test]
fn d3_families() {
    for n in [3, 4, 5, 6, 7, 8] {
        assert!(d3_families_check(n).unwrap(), "max_n={n}");
    }
}

#[test]
fn enumeration_guard() {
    assert!(matches!(enumerate_irreducible(3, 15), Err(Error::Resource(_))));
    assert!(enumerate_irreducible(0, 3).is_err());
}

#[test]
fn verdict_json_shape() {
    let v = serde_json::to_value(is_irreducible_local(&pair(&[4, 3, 3, 1], 3))).unwrap();
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["method"], "local");
    assert!(v["standard_form"].is_object());
}
