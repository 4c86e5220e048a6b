use std::collections::BTreeSet;

use ferrers::diagram::families;
use ferrers::exec::RunOptions;
use ferrers::irreducibility::is_irreducible_local;
use ferrers::polytope::{
    build_pd, build_pd_ab, chess_bijection_check, delta_split, embed_e1, f_vector, incidence_isomorphic,
    integer_points, integer_points_with, pd_f_vector, product_of_triangles_fvector, psi, psi_inverse,
    structured_matrix_checks, tau, triangle_product_incidence, vertex_facet_incidence, vertices_closed_form,
    vertices_generic, vertices_generic_with, Constraint, PdabSet, Rational, RationalPolytope, StructuredMatrices,
};
use ferrers::{DiagramPair, FerrersDiagram};
use proptest::prelude::*;

fn r(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

fn to_rational(points: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    points.iter().map(|p| p.iter().map(|&v| r(v)).collect()).collect()
}

/// Plain scan of the whole box; the oracle for the pruned sweep.
fn brute_force_points(p: &RationalPolytope) -> Vec<Vec<i64>> {
    let bounds: Vec<(i64, i64)> = p
        .bounding_box
        .iter()
        .map(|(lo, hi)| (lo.ceil().to_integer() as i64, hi.floor().to_integer() as i64))
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    'outer: loop {
        if p.contains_int(&cur) {
            out.push(cur.clone());
        }
        for i in (0..cur.len()).rev() {
            if cur[i] < bounds[i].1 {
                cur[i] += 1;
                continue 'outer;
            }
            cur[i] = bounds[i].0;
        }
        break;
    }
    out
}

fn diag(cols: &[usize]) -> FerrersDiagram {
    FerrersDiagram::new(cols.to_vec()).unwrap()
}

#[test]
fn p3_integer_points() {
    let pts = integer_points(&build_pd(3).unwrap()).unwrap();
    assert_eq!(pts, vec![vec![0, 0, 0], vec![0, 2, 1], vec![1, 1, 0], vec![2, 0, -1]]);
}

#[test]
fn sweep_agrees_with_brute_force() {
    for d in [3, 4] {
        let p = build_pd(d).unwrap();
        assert_eq!(integer_points(&p).unwrap(), brute_force_points(&p), "d={d}");
    }
}

#[test]
fn integer_point_counts_and_delta_split() {
    let expected: [(usize, usize, &[usize]); 4] = [
        (3, 4, &[1, 2, 1]),
        (4, 22, &[2, 5, 8, 5, 2]),
        (5, 155, &[5, 17, 34, 43, 34, 17, 5]),
        (6, 1301, &[16, 66, 159, 257, 305, 257, 159, 66, 16]),
    ];
    for (d, count, split) in expected {
        let pts = integer_points(&build_pd(d).unwrap()).unwrap();
        assert_eq!(pts.len(), count, "d={d}");
        let s: Vec<usize> = delta_split(&pts).into_values().collect();
        assert_eq!(s, split, "d={d}");
        assert!(delta_split(&pts).keys().all(|&z| z.unsigned_abs() as usize <= d - 2));
    }
}

#[test]
fn sequential_sweep_matches_parallel() {
    let p = build_pd(5).unwrap();
    assert_eq!(integer_points_with(&p, RunOptions::sequential()).unwrap(), integer_points(&p).unwrap());
}

#[test]
fn d4_points_by_delta() {
    let table: [(i64, &[[i64; 4]]); 5] = [
        (-2, &[[4, 2, 0, 0], [3, 3, 0, 0]]),
        (-1, &[[3, 2, 1, 1], [2, 2, 1, 0], [3, 1, 1, 0], [2, 1, 0, 0], [3, 0, 0, 0]]),
        (0, &[[2, 2, 2, 2], [1, 1, 1, 1], [2, 1, 2, 1], [2, 0, 1, 1], [1, 1, 2, 0], [2, 0, 2, 0], [1, 0, 1, 0], [0, 0, 0, 0]]),
        (1, &[[1, 1, 3, 2], [1, 0, 2, 2], [1, 0, 3, 1], [0, 0, 2, 1], [0, 0, 3, 0]]),
        (2, &[[0, 0, 4, 2], [0, 0, 3, 3]]),
    ];
    for (delta, rows) in table {
        let a = 5;
        let b = (a as i64 + delta) as usize;
        let got: BTreeSet<Vec<i64>> = build_pd_ab(4, a, b).unwrap().integer_points().unwrap().into_iter().collect();
        let want: BTreeSet<Vec<i64>> = rows.iter().map(|p| p.to_vec()).collect();
        assert_eq!(got, want, "delta={delta}");
    }
}

#[test]
fn d3_slice_is_a_segment() {
    let pts = build_pd_ab(3, 4, 4).unwrap().integer_points().unwrap();
    assert_eq!(pts, vec![vec![0, 0], vec![1, 1]]);
}

#[test]
fn corner_case_is_a_union() {
    match build_pd_ab(4, 3, 3).unwrap() {
        PdabSet::Union(ms) => assert_eq!(ms.len(), 2),
        PdabSet::Polytope(_) => panic!("expected a union"),
    }
    assert!(matches!(build_pd_ab(4, 4, 3).unwrap(), PdabSet::Polytope(_)));
    assert!(build_pd_ab(4, 2, 5).is_err());
    assert!(build_pd(2).is_err());
}

#[test]
fn slices_recover_the_full_point_set() {
    for d in 3..=5 {
        let k = 2 * (d - 2);
        let full = integer_points(&build_pd(d).unwrap()).unwrap();
        let dd = d as i64;
        for delta in -(dd - 2)..=(dd - 2) {
            let (a, b) = if delta >= 0 { (d, d + delta as usize) } else { (d + (-delta) as usize, d) };
            let slice = build_pd_ab(d, a, b).unwrap().integer_points().unwrap();
            let from_full: Vec<Vec<i64>> =
                full.iter().filter(|p| p[k] == delta).map(|p| p[..k].to_vec()).collect();
            assert_eq!(slice, from_full, "d={d} delta={delta}");
            // (x, y) -> (y, x) swaps the slice with its mirror.
            let mirror = build_pd_ab(d, b, a).unwrap();
            let half = d - 2;
            for p in &slice {
                let swapped: Vec<i64> = p[half..].iter().chain(&p[..half]).copied().collect();
                assert!(mirror.contains_int(&swapped));
            }
        }
    }
}

#[test]
fn p3_vertices_both_ways() {
    let want = vec![vec![0, 0, 0], vec![0, 2, 1], vec![2, 0, -1]];
    assert_eq!(vertices_closed_form(3).unwrap(), want);
    assert_eq!(vertices_generic(&build_pd(3).unwrap()).unwrap(), to_rational(&want));
}

#[test]
fn p4_vertices_match_listing() {
    let listed = [
        [0, 0, 0, 0, 0],
        [3, 0, 0, 0, -1],
        [3, 3, 0, 0, -2],
        [0, 0, 3, 3, 2],
        [0, 0, 3, 0, 1],
        [4, 2, 0, 0, -2],
        [2, 0, 2, 0, 0],
        [2, 2, 2, 2, 0],
        [0, 0, 4, 2, 2],
    ];
    let mut want: Vec<Vec<i64>> = listed.iter().map(|v| v.to_vec()).collect();
    want.sort();
    assert_eq!(vertices_closed_form(4).unwrap(), want);
    assert_eq!(vertices_generic(&build_pd(4).unwrap()).unwrap(), to_rational(&want));
}

#[test]
fn p5_closed_form_equals_generic() {
    let closed = vertices_closed_form(5).unwrap();
    assert_eq!(closed.len(), 27);
    let generic = vertices_generic_with(&build_pd(5).unwrap(), RunOptions::sequential()).unwrap();
    assert_eq!(generic, to_rational(&closed));
}

#[test]
fn closed_form_counts_and_membership() {
    for d in 3..=7 {
        let v = vertices_closed_form(d).unwrap();
        let distinct: BTreeSet<_> = v.iter().collect();
        assert_eq!(distinct.len(), 3usize.pow(d as u32 - 2));
        let p = build_pd(d).unwrap();
        assert!(v.iter().all(|x| p.contains_int(x)));
    }
}

#[test]
fn generic_vertices_of_a_square() {
    let square = RationalPolytope {
        dim: 2,
        inequalities: vec![
            Constraint::from_ints(&[1, 0], 0),
            Constraint::from_ints(&[0, 1], 0),
            Constraint::from_ints(&[-1, 0], -1),
            Constraint::from_ints(&[0, -1], -1),
        ],
        equalities: vec![],
        bounding_box: vec![(r(0), r(1)); 2],
    };
    let v = vertices_generic(&square).unwrap();
    assert_eq!(v, to_rational(&[vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]));
}

#[test]
fn generic_guard_trips_on_large_systems() {
    assert!(vertices_generic(&build_pd(8).unwrap()).is_err());
}

#[test]
fn tau_on_small_covers() {
    assert_eq!(tau(1, &[1], &[1]).unwrap(), vec![0, 0]);
    assert_eq!(tau(1, &[], &[1]).unwrap(), vec![2, 0]);
    assert_eq!(tau(1, &[1], &[]).unwrap(), vec![0, 2]);
    // Index 2 is flanked by one shared index on each side.
    assert_eq!(tau(3, &[1, 3], &[1, 2, 3]).unwrap(), vec![0, 4, 0, 0, 0, 0]);
    assert!(tau(2, &[1], &[1]).is_err());
    assert_eq!(embed_e1(&[2, 0]), vec![r(2), r(0), r(-1)]);
}

#[test]
fn structured_matrices() {
    for k in 1..=8 {
        assert!(structured_matrix_checks(k).unwrap(), "k={k}");
    }
    let s = StructuredMatrices::new(2).unwrap();
    assert_eq!(s.b_vec, vec![2, 2]);
    assert_eq!(s.b, vec![vec![2, 1], vec![1, 2]]);
    assert_eq!(StructuredMatrices::new(1).unwrap().b, vec![vec![1]]);
    assert!(StructuredMatrices::new(0).is_err());
}

#[test]
fn f_vectors_match_table() {
    let table: [(usize, &[u64]); 3] =
        [(3, &[3, 3, 1]), (4, &[9, 18, 15, 6, 1]), (5, &[27, 81, 108, 81, 36, 9, 1])];
    for (d, row) in table {
        let p = build_pd(d).unwrap();
        let v = to_rational(&vertices_closed_form(d).unwrap());
        assert_eq!(f_vector(&p, &v).unwrap(), row, "d={d}");
        assert_eq!(product_of_triangles_fvector(d).unwrap(), row, "d={d}");
    }
    assert_eq!(
        product_of_triangles_fvector(7).unwrap(),
        vec![243, 1215, 2835, 4050, 3915, 2673, 1305, 450, 105, 15, 1]
    );
    assert_eq!(pd_f_vector(6, RunOptions::default()).unwrap(), product_of_triangles_fvector(6).unwrap());
    assert!(pd_f_vector(9, RunOptions::default()).is_err());
}

#[test]
fn incidence_matches_triangle_product() {
    for d in 3..=5 {
        let p = build_pd(d).unwrap();
        let v = to_rational(&vertices_closed_form(d).unwrap());
        let inc = vertex_facet_incidence(&p, &v).unwrap();
        assert_eq!(inc.facets.len(), 3 * (d - 2));
        assert!(incidence_isomorphic(&inc, &triangle_product_incidence(d - 2)), "d={d}");
    }
    assert!(!incidence_isomorphic(&triangle_product_incidence(1), &triangle_product_incidence(2)));
}

#[test]
fn chess_counts() {
    for (d, n) in [(3, 1), (4, 2), (5, 5), (6, 16)] {
        let rep = chess_bijection_check(d).unwrap();
        assert!(rep.bijective, "d={d}");
        assert_eq!((rep.x_count, rep.p_count, rep.polytope_count), (n, n, n), "d={d}");
    }
}

#[test]
fn psi_examples() {
    let cases = [
        (vec![0, 0, 0], diag(&[3, 3, 3]), diag(&[4, 4, 4, 4])),
        (vec![1, 1, 0], families::g(4).unwrap(), families::g(5).unwrap()),
        (vec![2, 0, -1], families::e(5).unwrap(), families::e(6).unwrap()),
        (vec![0, 2, 1], families::f(5).unwrap(), families::f(6).unwrap()),
    ];
    for (pt, mu3, mu4) in cases {
        assert_eq!(psi(3, 3, &pt).unwrap().diagram, mu3);
        assert_eq!(psi(3, 4, &pt).unwrap().diagram, mu4);
    }
    assert!(psi(3, 3, &[5, 5, 5]).is_err());
    assert!(psi(3, 2, &[0, 0, 0]).is_err());
}

#[test]
fn psi_round_trip_and_irreducible() {
    for d in 3..=5 {
        for pt in integer_points(&build_pd(d).unwrap()).unwrap() {
            for mu in [d, d + 1] {
                let pair = psi(d, mu, &pt).unwrap();
                assert_eq!(psi_inverse(&pair).unwrap(), (mu, pt.clone()));
                assert!(is_irreducible_local(&pair).irreducible, "{} d={d}", pair.diagram);
            }
        }
    }
}

#[test]
fn psi_inverse_rejects_pairs_outside_the_image() {
    let pair = DiagramPair::new(diag(&[2, 1]), 3).unwrap();
    assert!(psi_inverse(&pair).is_err());
}

#[test]
fn hrep_text() {
    let p = build_pd(3).unwrap();
    let rows = p.hrep_strings();
    assert_eq!(rows.len(), p.inequalities.len() + 1);
    assert!(rows.iter().any(|s| s == "v1 >= 0"));
    assert!(rows.last().unwrap().ends_with("= 0"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sweep_points_are_feasible(d in 3usize..=5, seed in 0usize..1000) {
        let p = build_pd(d).unwrap();
        let pts = integer_points(&p).unwrap();
        let pt = &pts[seed % pts.len()];
        prop_assert!(p.contains_int(pt));
        prop_assert!(pt.iter().take(2 * (d - 2)).all(|&c| (0..=2 * d as i64 - 4).contains(&c)));
    }

    #[test]
    fn psi_images_are_in_standard_form(d in 3usize..=5, seed in 0usize..1000, extra in 0usize..3) {
        let pts = integer_points(&build_pd(d).unwrap()).unwrap();
        let pt = &pts[seed % pts.len()];
        let pair = psi(d, d + extra, pt).unwrap();
        let sf = pair.standard_form().unwrap().unwrap();
        prop_assert_eq!(sf.a.min(sf.b), d + extra);
        prop_assert_eq!(sf.b as i64 - sf.a as i64, pt[2 * (d - 2)]);
    }
}

#[test]
fn report_shape() {
    let r = ferrers::polytope::report(4, false, RunOptions::default()).unwrap();
    assert_eq!(r.n_integer_points, 22);
    assert_eq!(r.vertices.len(), 9);
    assert_eq!(r.f_vector.as_deref(), Some(&[9, 18, 15, 6, 1][..]));
    assert!(r.integer_points.is_none());
    let v = serde_json::to_value(&r).unwrap();
    assert!(v.get("integer_points").is_none());
    assert_eq!(v["delta_split"]["-2"], 2);
    // Past the face-lattice guard the f-vector is omitted, not an error.
    assert!(ferrers::polytope::report(8, true, RunOptions::default()).unwrap().f_vector.is_none());
}
