use ferrers::codes::{
    gabidulin_mrd, gn_construction, has_distance_with, include, information_set_matrices, is_mfd, min_rank_distance,
    min_rank_distance_with, punct_inclusion_search, punct_inclusion_search_from, punct_inclusion_search_with, puncture_row, reduce_along_path,
    row_to_top, shorten, MatrixCode, SearchOutcome,
};
use ferrers::diagram::families;
use ferrers::exec::{Exec, RunOptions};
use ferrers::gf::{Field, Matrix};
use ferrers::{Error, FerrersDiagram};
use proptest::prelude::*;

fn diag(cols: &[usize]) -> FerrersDiagram {
    FerrersDiagram::new(cols.to_vec()).unwrap()
}

/// Every codeword listed by brute force over coefficient vectors.
fn codewords(code: &MatrixCode) -> Vec<Matrix> {
    let f = code.field();
    let basis = code.basis();
    let (rows, cols) = code.shape();
    let q = f.q() as usize;
    let total = q.pow(basis.len() as u32);
    (0..total)
        .map(|mut c| {
            let mut m = Matrix::zeros(rows, cols);
            for b in &basis {
                m.add_scaled(f, (c % q) as u32, b);
                c /= q;
            }
            m
        })
        .collect()
}

/// Oracle for the distance engine.
fn brute_distance(code: &MatrixCode) -> Option<usize> {
    let f = code.field().clone();
    codewords(code).iter().filter(|m| !m.is_zero()).map(|m| m.rank(&f)).min()
}

#[test]
fn identity_code_has_distance_three() {
    let f = Field::new(2).unwrap();
    let code = MatrixCode::new(&f, families::square(3), 3, 3, &[Matrix::identity(3)]).unwrap();
    assert_eq!(min_rank_distance(&code).unwrap(), Some(3));
}

#[test]
fn code_with_unit_matrix_has_distance_one() {
    let f = Field::new(3).unwrap();
    let mut e = Matrix::zeros(3, 3);
    e.set(1, 2, 1);
    let code = MatrixCode::new(&f, families::square(3), 3, 3, &[Matrix::identity(3), e]).unwrap();
    assert_eq!(min_rank_distance(&code).unwrap(), Some(1));
}

#[test]
fn zero_code_has_no_distance_and_is_not_mfd() {
    let f = Field::new(2).unwrap();
    let code = MatrixCode::zero(&f, families::square(3), 3, 3).unwrap();
    assert_eq!(min_rank_distance(&code).unwrap(), None);
    assert!(!is_mfd(&code, 2).unwrap());
}

#[test]
fn generators_off_support_are_rejected() {
    let f = Field::new(2).unwrap();
    let err = MatrixCode::new(&f, diag(&[2, 1]), 2, 2, &[Matrix::identity(2)]).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
}

#[test]
fn gabidulin_4x4_distance_three() {
    let code = gabidulin_mrd(4, 4, 3, 2).unwrap();
    assert_eq!(code.dim(), 8);
    assert_eq!(min_rank_distance(&code).unwrap(), Some(3));
    assert_eq!(brute_distance(&code), Some(3));
}

#[test]
fn gabidulin_small_examples() {
    let c = gabidulin_mrd(3, 3, 3, 2).unwrap();
    assert_eq!(c.dim(), 3);
    let f = Field::new(2).unwrap();
    assert!(codewords(&c).iter().filter(|m| !m.is_zero()).all(|m| m.rank(&f) == 3));
    assert_eq!(gabidulin_mrd(4, 3, 3, 2).unwrap().dim(), 4);
    assert_eq!(gabidulin_mrd(2, 2, 1, 2).unwrap().dim(), 4);
}

#[test]
fn gabidulin_is_mrd_for_small_sizes() {
    for q in [2, 3] {
        for n in 1..=4 {
            for d in 1..=n {
                if q == 3 && n == 4 && d == 1 {
                    continue; // 3^16 codewords, beyond the guard
                }
                let code = gabidulin_mrd(n, n, d, q).unwrap();
                assert_eq!(code.dim(), n * (n - d + 1), "n={n} d={d} q={q}");
                assert!(is_mfd(&code, d).unwrap(), "n={n} d={d} q={q}");
            }
        }
    }
}

#[test]
fn gabidulin_rectangular_both_orientations() {
    for (m, n) in [(4, 3), (3, 4), (2, 4)] {
        for d in 1..=m.min(n) {
            let code = gabidulin_mrd(m, n, d, 2).unwrap();
            assert_eq!(code.shape(), (m, n));
            assert_eq!(min_rank_distance(&code).unwrap(), Some(d), "{m}x{n} d={d}");
        }
    }
}

#[test]
fn gabidulin_over_gf4_matches_brute_force() {
    let code = gabidulin_mrd(3, 3, 2, 4).unwrap();
    assert_eq!(code.dim(), 6);
    assert_eq!(min_rank_distance(&code).unwrap(), Some(2));
    let small = gabidulin_mrd(2, 2, 2, 4).unwrap();
    assert_eq!(brute_distance(&small), min_rank_distance(&small).unwrap());
}

#[test]
fn gabidulin_rejects_bad_distance() {
    assert!(gabidulin_mrd(3, 3, 0, 2).is_err());
    assert!(gabidulin_mrd(3, 3, 4, 2).is_err());
}

#[test]
fn enumeration_guard_and_force() {
    let code = gabidulin_mrd(5, 5, 1, 2).unwrap();
    assert_eq!(code.dim(), 25);
    let err = min_rank_distance(&code).unwrap_err();
    assert!(matches!(err, Error::Resource(_)));
    // A forced scan stops at the first rank-1 word.
    assert_eq!(min_rank_distance_with(&code, RunOptions::default().forced()).unwrap(), Some(1));
}

#[test]
fn sequential_and_parallel_scans_agree() {
    for (n, d, q) in [(4, 2, 2), (3, 2, 3), (4, 3, 3)] {
        let code = gabidulin_mrd(n, n, d, q).unwrap();
        let seq = min_rank_distance_with(&code, RunOptions::sequential()).unwrap();
        let par = min_rank_distance_with(&code, RunOptions { exec: Exec::Parallel, force: false }).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq, Some(d));
    }
}

#[test]
fn gn_construction_examples() {
    for (n, q, k) in [(4, 2, 4), (5, 2, 9), (4, 3, 4), (3, 2, 1)] {
        let code = gn_construction(n, q).unwrap();
        assert_eq!(code.support(), &families::g(n).unwrap());
        assert_eq!(code.dim(), k, "n={n} q={q}");
        assert!(is_mfd(&code, 3).unwrap(), "n={n} q={q}");
    }
    assert_eq!(brute_distance(&gn_construction(4, 2).unwrap()), Some(3));
}

#[test]
fn gn_construction_rank_structure() {
    // Codewords using A have rank 2 + rank of the central block.
    let f = Field::new(2).unwrap();
    let n = 5;
    let code = gn_construction(n, 2).unwrap();
    for m in codewords(&code) {
        if m.get(0, n - 1) == 1 {
            let centre = m.block(1, 1, n - 2, n - 2);
            assert_eq!(m.rank(&f), 2 + centre.rank(&f));
        }
    }
}

#[test]
fn gn_construction_needs_n_at_least_three() {
    assert!(gn_construction(2, 2).is_err());
}

#[test]
fn shorten_examples() {
    let mrd = gabidulin_mrd(3, 3, 2, 2).unwrap();
    let s = shorten(&mrd, (3, 3)).unwrap();
    assert_eq!(s.support(), &diag(&[3, 3, 2]));
    assert_eq!(s.dim(), 5);
    assert!(is_mfd(&s, 2).unwrap());
    assert!(shorten(&mrd, (2, 2)).is_err());

    // No basis matrix touches (3,3): nothing is lost.
    let f = Field::new(2).unwrap();
    let code = MatrixCode::new(&f, families::square(3), 3, 3, &[Matrix::from_rows(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]).unwrap()]).unwrap();
    assert_eq!(shorten(&code, (3, 3)).unwrap().dim(), 1);
}

#[test]
fn include_into_g4_is_not_mfd() {
    let mrd = gabidulin_mrd(3, 3, 3, 2).unwrap();
    let g4 = families::g(4).unwrap();
    let c = include(&mrd, &g4).unwrap();
    assert_eq!(c.shape(), (4, 4));
    assert_eq!(c.dim(), 3);
    assert!(has_distance_with(&c, 3, RunOptions::default()).unwrap());
    assert_eq!(g4.nu_min_value(3), 4);
    assert!(!is_mfd(&c, 3).unwrap());
    assert!(include(&mrd, &diag(&[2, 2])).is_err());
}

#[test]
fn reduce_along_path_examples() {
    let mrd = gabidulin_mrd(3, 3, 3, 2).unwrap();
    let a3 = families::square(3);
    assert_eq!(reduce_along_path(&mrd, std::slice::from_ref(&a3), 3).unwrap(), mrd);

    // nu_min((3,3,2),3) = min(2,3,2) = 2 and nu_min((3,2,2),3) = min(1,2,2) = 1,
    // so both steps shorten.
    assert_eq!(diag(&[3, 3, 2]).nu_profile(3), vec![2, 3, 2]);
    assert_eq!(diag(&[3, 2, 2]).nu_profile(3), vec![1, 2, 2]);
    let c = reduce_along_path(&mrd, &[a3.clone(), diag(&[3, 3, 2])], 3).unwrap();
    assert_eq!(c.dim(), 2);
    assert!(is_mfd(&c, 3).unwrap());

    let c = reduce_along_path(&mrd, &[a3.clone(), diag(&[3, 3, 2]), diag(&[3, 2, 2])], 3).unwrap();
    assert_eq!(c.dim(), 1);
    assert_eq!(c.support(), &diag(&[3, 2, 2]));

    // (3,3,2) -> (3,3,3) is against the orientation.
    let small = reduce_along_path(&mrd, &[a3.clone(), diag(&[3, 3, 2])], 3).unwrap();
    assert!(reduce_along_path(&small, &[diag(&[3, 3, 2]), a3], 3).is_err());
}

#[test]
fn information_sets_of_g4() {
    let code = gn_construction(4, 2).unwrap();
    let sets = information_set_matrices(&code, 3).unwrap();
    let keys: Vec<_> = sets.keys().copied().collect();
    assert_eq!(keys, vec![(1, 4), (4, 1)]);
    let m14 = &sets[&(1, 4)];
    assert_eq!(m14.get(0, 3), 1);
    assert_eq!(m14.get(3, 0), 1);
    for m in sets.values() {
        assert!(code.contains(m).unwrap());
    }
}

#[test]
fn information_sets_of_a_square_are_empty() {
    let code = gabidulin_mrd(4, 4, 3, 2).unwrap();
    assert!(information_set_matrices(&code, 3).unwrap().is_empty());
}

#[test]
fn puncturing_gabidulin() {
    let c = gabidulin_mrd(4, 3, 3, 2).unwrap();
    let p = puncture_row(&c, 1).unwrap();
    assert_eq!(p.shape(), (3, 3));
    assert_eq!(p.dim(), 4);
    assert_eq!(min_rank_distance(&p).unwrap(), Some(2));
    for q in [2, 3] {
        let c = gabidulin_mrd(4, 3, 3, q).unwrap();
        for row in 1..=4 {
            let p = puncture_row(&c, row).unwrap();
            assert_eq!(p.dim(), 4);
            assert_eq!(min_rank_distance(&p).unwrap(), Some(2), "q={q} row={row}");
        }
    }
}

#[test]
fn puncturing_a_zero_row_keeps_the_code() {
    let f = Field::new(2).unwrap();
    let m = Matrix::from_rows(&[vec![1, 1], vec![0, 1], vec![0, 0]]).unwrap();
    let code = MatrixCode::new(&f, families::rectangle(3, 2), 3, 2, std::slice::from_ref(&m)).unwrap();
    let p = puncture_row(&code, 3).unwrap();
    assert_eq!(p.basis(), vec![m.without_row(2)]);
}

#[test]
fn row_to_top_permutes_rows() {
    let c = gabidulin_mrd(4, 3, 3, 2).unwrap();
    let moved = row_to_top(&c, 3).unwrap();
    assert_eq!(moved.dim(), c.dim());
    assert_eq!(puncture_row(&moved, 1).unwrap(), puncture_row(&c, 3).unwrap());
}

#[test]
fn conjecture_trivial_case() {
    let report = punct_inclusion_search(3, 2, 2).unwrap();
    let w = report.witness().expect("the full space always extends");
    assert_eq!(w.extension.len(), 1);
    assert!(w.mfd_verified && w.recovered_mrd && w.recovered_extension);
}

/// A `[4 x 3, 4, 3]` MRD code over GF(2) outside the Gabidulin orbit, found
/// by exhaustive search over all MFD codes on `(4,4,4,1,1)`. Row `i` of a
/// generator is bits `3i..3i+2`.
fn non_gabidulin_base() -> MatrixCode {
    let f = Field::new(2).unwrap();
    let gens: Vec<Matrix> = [84u32, 770, 1320, 2211]
        .iter()
        .map(|&bits| {
            let mut m = Matrix::zeros(4, 3);
            for i in 0..4 {
                for j in 0..3 {
                    m.set(i, j, bits >> (3 * i + j) & 1);
                }
            }
            m
        })
        .collect();
    MatrixCode::new(&f, families::rectangle(4, 3), 4, 3, &gens).unwrap()
}

#[test]
fn gabidulin_orbit_has_no_witness_at_n4_d3_q2() {
    let report = punct_inclusion_search(4, 3, 2).unwrap();
    assert!(matches!(report.outcome, SearchOutcome::Exhausted));
    // One base per hyperplane of GF(2)^4.
    assert_eq!(report.bases_tried, 15);
}

#[test]
fn non_gabidulin_base_extends() {
    let base = non_gabidulin_base();
    assert!(is_mfd(&base, 3).unwrap());
    let report = punct_inclusion_search_from(&base, 3, RunOptions::default()).unwrap();
    let w = report.witness().expect("this base extends");
    assert_eq!(w.normal, vec![1, 0, 0, 0]);
    assert_eq!(w.mfd_code.support(), &families::e_kdr(3, 3, 1).unwrap());
    assert_eq!(w.mfd_code.dim(), 6);
    assert!(w.mfd_verified && w.recovered_mrd && w.recovered_extension);
    assert_eq!(brute_distance(&w.mfd_code), Some(3));
    assert_eq!(information_set_matrices(&w.mfd_code, 3).unwrap().len(), 2);
}

#[test]
fn supplied_base_is_validated() {
    let f = Field::new(2).unwrap();
    let not_mrd = MatrixCode::new(&f, families::rectangle(4, 3), 4, 3, &[gabidulin_mrd(4, 3, 3, 2).unwrap().basis()[0].clone()]).unwrap();
    assert!(matches!(punct_inclusion_search_from(&not_mrd, 3, RunOptions::default()), Err(Error::Domain(_))));
    assert!(punct_inclusion_search_from(&gabidulin_mrd(4, 4, 3, 2).unwrap(), 3, RunOptions::default()).is_err());
}

#[test]
fn conjecture_parallel_matches_sequential() {
    let a = punct_inclusion_search_with(4, 3, 2, RunOptions::sequential()).unwrap();
    let b = punct_inclusion_search_with(4, 3, 2, RunOptions::default()).unwrap();
    assert_eq!(
        a.witness().map(|w| (w.normal.clone(), w.extension.clone())),
        b.witness().map(|w| (w.normal.clone(), w.extension.clone()))
    );
}

#[test]
fn conjecture_rejects_bad_parameters() {
    assert!(punct_inclusion_search(4, 4, 2).is_err());
    assert!(punct_inclusion_search(4, 1, 2).is_err());
}

#[test]
fn code_json_shape() {
    let code = gn_construction(4, 2).unwrap();
    let v = serde_json::to_value(&code).unwrap();
    assert_eq!(v["field"]["p"], 2);
    assert_eq!(v["support"], "4,3,3,1");
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
}

fn random_code(q: u32, rows: usize, cols: usize, k: usize, seed: u64) -> MatrixCode {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let f = Field::new(q).unwrap();
    let gens: Vec<Matrix> = (0..k)
        .map(|_| Matrix::from_vec(rows, cols, (0..rows * cols).map(|_| rng.random_range(0..q)).collect()).unwrap())
        .collect();
    MatrixCode::new(&f, families::rectangle(rows, cols), rows, cols, &gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn distance_engine_matches_brute_force(q in prop::sample::select(vec![2u32, 3, 4]), rows in 1usize..4, cols in 1usize..4, k in 0usize..4, seed in any::<u64>()) {
        let code = random_code(q, rows, cols, k, seed);
        prop_assert_eq!(min_rank_distance(&code).unwrap(), brute_distance(&code));
    }

    #[test]
    fn singleton_bound_holds(rows in 1usize..4, cols in 1usize..4, k in 1usize..6, seed in any::<u64>()) {
        let code = random_code(2, rows, cols, k, seed);
        if let Some(d) = min_rank_distance(&code).unwrap() {
            prop_assert!(code.dim() <= code.support().nu_min_value(d));
        }
    }

    #[test]
    fn shortening_drops_at_most_one(k in 1usize..6, seed in any::<u64>()) {
        let code = random_code(3, 3, 3, k, seed);
        let s = shorten(&code, (3, 3)).unwrap();
        prop_assert!(code.dim() - s.dim() <= 1);
        for m in s.basis() {
            prop_assert_eq!(m.get(2, 2), 0);
            prop_assert!(code.contains(&m).unwrap());
        }
    }
}
