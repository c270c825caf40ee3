use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankred::algebra::{Ring, Scalar};
use rankred::oracle::{padded_rank_lower_bound, symmetric_rank_bruteforce, SearchBudget};
use rankred::symmetric::{
    build_curly_t, duplicate_index, embed_s, map_decomposition, monomial_transform, remove_twin,
    remove_twin_decomposition, scale, scale_decomposition, sym_pair_decompose, symmetric_upper_witness,
    symmetric_witness, verify_sym_decomposition, waring_gadget, Layout, SymDecomposition, SymTensor, SymTerm,
};
use rankred::tensor::{Decomposition, Rank1Term, SparseVector, Tensor3};
use rankred::Error;

fn gf(p: u64) -> Ring {
    Ring::gf(p).unwrap()
}

fn srank(t: &SymTensor) -> usize {
    let res = symmetric_rank_bruteforce(t, &SearchBudget::default()).unwrap();
    assert!(res.exhausted);
    res.value.unwrap()
}

fn random_sym(r: Ring, dim: usize, rng: &mut ChaCha8Rng) -> SymTensor {
    let p = r.cardinality().unwrap() as i64;
    let mut entries = Vec::new();
    for a in 0..dim {
        for b in a..dim {
            for c in b..dim {
                entries.push(([a, b, c], Scalar::from_i64(r, rng.gen_range(0..p))));
            }
        }
    }
    SymTensor::from_entries(r, (1..=dim).map(|i| i.to_string()).collect(), entries).unwrap()
}

/// Dense cube sum of a symmetric decomposition, entry by entry.
fn dense_sum(d: &SymDecomposition, ring: Ring, dim: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(ring); dim * dim * dim];
    for t in &d.terms {
        let v = t.v.to_dense();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    out[(i * dim + j) * dim + k] += &(&(&(&t.s * &v[i]) * &v[j]) * &v[k]);
                }
            }
        }
    }
    out
}

fn dense(t: &SymTensor) -> Vec<Scalar> {
    let n = t.dim();
    (0..n * n * n).map(|x| t.get(x / (n * n), x / n % n, x % n)).collect()
}

proptest! {
    #[test]
    fn waring_gadget_sums_to_the_gadget(a in 0i64..13) {
        let a = Scalar::from_i64(gf(13), a);
        let d = waring_gadget(&a).unwrap();
        prop_assert_eq!(d.len(), 3);
        let expected = rankred::symmetric::gadget_tensor(&a).unwrap();
        prop_assert_eq!(dense_sum(&d, gf(13), 2), dense(&expected));
    }

    #[test]
    fn pair_decomposition_sums_correctly(u in proptest::collection::vec(-3i64..4, 4),
                                         w in proptest::collection::vec(-3i64..4, 4),
                                         a in -5i64..6) {
        let q = Ring::Rationals;
        let u = SparseVector::from_dense(q, u.into_iter().map(|x| Scalar::from_i64(q, x)).collect()).unwrap();
        let w = SparseVector::from_dense(q, w.into_iter().map(|x| Scalar::from_i64(q, x)).collect()).unwrap();
        let a = Scalar::from_i64(q, a);
        match sym_pair_decompose(&u, &w, &a) {
            Ok(d) => {
                prop_assert!(d.len() <= 3);
                let (ud, wd) = (u.to_dense(), w.to_dense());
                let mut expected = vec![Scalar::zero(q); 64];
                for i in 0..4 {
                    for j in 0..4 {
                        for k in 0..4 {
                            let mut x = &(&(&a * &ud[i]) * &ud[j]) * &ud[k];
                            x += &(&(&ud[i] * &ud[j]) * &wd[k]);
                            x += &(&(&ud[i] * &wd[j]) * &ud[k]);
                            x += &(&(&wd[i] * &ud[j]) * &ud[k]);
                            expected[(i * 4 + j) * 4 + k] = x;
                        }
                    }
                }
                prop_assert_eq!(dense_sum(&d, q, 4), expected);
            }
            Err(Error::Structure(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

#[test]
fn small_fields_are_refused() {
    assert!(matches!(waring_gadget(&Scalar::zero(gf(5))), Err(Error::SmallField(_))));
    assert!(matches!(waring_gadget(&Scalar::zero(Ring::Integers)), Err(Error::NoDivision(_))));
}

#[test]
fn monomial_transform_preserves_symmetric_rank() {
    let r = gf(5);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..8 {
        let t = random_sym(r, 2, &mut rng);
        let f = [Scalar::from_i64(r, rng.gen_range(1..5)), Scalar::from_i64(r, rng.gen_range(1..5))];
        let moved = monomial_transform(&t, &[1, 0], &f).unwrap();
        assert_eq!(srank(&moved), srank(&t));
        let d = symmetric_rank_bruteforce(&t, &SearchBudget::default()).unwrap().witness.unwrap();
        let mapped = map_decomposition(&d, &[1, 0], &f).unwrap();
        assert_eq!(verify_sym_decomposition(&moved, &mapped).unwrap(), None);
    }
}

#[test]
fn scaling_carries_decompositions() {
    let r = gf(7);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let t = random_sym(r, 3, &mut rng);
    let v = SparseVector::from_dense(r, vec![Scalar::one(r), Scalar::from_i64(r, 3), Scalar::zero(r)]).unwrap();
    let d = SymDecomposition::new(vec![SymTerm::new(Scalar::from_i64(r, 2), v).unwrap()]).unwrap();
    let cube = d.sum(r, t.names().to_vec()).unwrap();
    let s = Scalar::from_i64(r, 4);
    let scaled = scale(&cube, &s).unwrap();
    assert_eq!(verify_sym_decomposition(&scaled, &scale_decomposition(&d, &s).unwrap()).unwrap(), None);
}

#[test]
fn twins_do_not_change_symmetric_rank() {
    let r = gf(5);
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..5 {
        let t = random_sym(r, 2, &mut rng);
        let doubled = duplicate_index(&t, 0, "1'").unwrap();
        assert_eq!(srank(&doubled), srank(&t));
        assert_eq!(remove_twin(&doubled, 2, 0).unwrap(), t);
        let d = symmetric_rank_bruteforce(&doubled, &SearchBudget::default()).unwrap().witness.unwrap();
        let dropped = remove_twin_decomposition(&d, 2).unwrap();
        assert_eq!(verify_sym_decomposition(&t, &dropped).unwrap(), None);
    }
    let t = random_sym(r, 3, &mut rng);
    if t.get(0, 0, 0) != t.get(1, 1, 1) {
        assert!(matches!(remove_twin(&t, 1, 0), Err(Error::NotTwin { .. })));
    }
}

#[test]
fn orbit_disagreement_is_rejected() {
    let r = Ring::Rationals;
    let entries = [([0, 1, 1], Scalar::one(r)), ([1, 0, 1], Scalar::from_i64(r, 2))];
    assert!(SymTensor::from_entries(r, vec!["a".into(), "b".into()], entries).is_err());
}

#[test]
fn one_dimensional_tensor_needs_exactly_ten_terms() {
    let r = gf(11);
    let c = Scalar::from_i64(r, 3);
    let t = Tensor3::from_entries(r, [1, 1, 1], [([0, 0, 0], c.clone())]).unwrap();
    let one = SparseVector::unit(r, 1, 0);
    let d = Decomposition::new(vec![Rank1Term::new(one.scale(&c), one.clone(), one).unwrap()]).unwrap();
    let w = symmetric_witness(&t, &d).unwrap();
    assert_eq!(w.len(), 10);
    let curly = build_curly_t(&embed_s(&t).unwrap(), 1).unwrap();
    let bound = padded_rank_lower_bound(&curly, 1, &SearchBudget::default()).unwrap();
    assert_eq!((bound.pair_slices, bound.block_rank, bound.bound), (3, 1, 10));
}

#[test]
fn zero_tensor_upper_witness_fits_the_bound() {
    let layout = Layout::new(2).unwrap();
    let u = SymTensor::zeros(gf(11), layout.h_names()).unwrap();
    let d = symmetric_upper_witness(&u, 2).unwrap();
    assert!(d.len() <= 27, "{} terms", d.len());
    let curly = build_curly_t(&u, 2).unwrap();
    assert_eq!(verify_sym_decomposition(&curly, &d).unwrap(), None);
}

#[test]
fn curly_t_has_unit_pair_slices() {
    let layout = Layout::new(2).unwrap();
    let u = SymTensor::zeros(Ring::Rationals, layout.h_names()).unwrap();
    let curly = build_curly_t(&u, 2).unwrap();
    assert_eq!(curly.dim(), 15);
    let at = curly.index_of("pair_J_1_2").unwrap();
    let (j1, j2) = (curly.index_of("j1").unwrap(), curly.index_of("j2").unwrap());
    for a in 0..6 {
        for b in 0..6 {
            let inside = [j1, j2].contains(&a) && [j1, j2].contains(&b);
            assert_eq!(curly.get(at, a, b).is_one(), inside);
        }
    }
    // per letter: one stored entry for (1,1) and (2,2), three for (1,2)
    assert_eq!(curly.nnz(), 3 * (1 + 3 + 1));
}
