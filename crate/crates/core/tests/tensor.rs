use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankred::algebra::{DenseMatrix, Ring, Scalar};
use rankred::oracle::{min_completion_rank, slice_lemma_check, tensor_rank_bruteforce, SearchBudget};
use rankred::sigma::IncompleteMatrix;
use rankred::tensor::{
    build_derksen, derksen_witness, slice_reduce, verify_decomposition, Axis, Decomposition, Rank1Term,
    Tensor3,
};

fn gf(p: u64) -> Ring {
    Ring::gf(p).unwrap()
}

fn from_bits(r: Ring, dims: [usize; 3], bits: &[i64]) -> Tensor3 {
    Tensor3::from_fn(r, dims, |i, j, k| Scalar::from_i64(r, bits[(i * dims[1] + j) * dims[2] + k])).unwrap()
}

fn rank(t: &Tensor3) -> usize {
    let res = tensor_rank_bruteforce(t, &SearchBudget::default()).unwrap();
    assert!(res.exhausted);
    let value = res.value.unwrap();
    if let Some(w) = &res.witness {
        assert_eq!(w.len(), value);
        assert_eq!(verify_decomposition(t, w).unwrap(), None);
    }
    value
}

#[test]
fn classical_small_ranks() {
    for p in [2, 3] {
        let r = gf(p);
        // e1⊗e1⊗e2 + e1⊗e2⊗e1 + e2⊗e1⊗e1
        let w = from_bits(r, [2, 2, 2], &[0, 1, 1, 0, 1, 0, 0, 0]);
        assert_eq!(rank(&w), 3, "GF({p})");
        let diag = from_bits(r, [2, 2, 2], &[1, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(rank(&diag), 2);
        assert_eq!(rank(&Tensor3::zeros(r, [2, 2, 2]).unwrap()), 0);
    }
}

#[test]
fn flat_tensor_rank_is_matrix_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let bits: Vec<i64> = (0..9).map(|_| rng.gen_range(0..3)).collect();
        let t = from_bits(gf(3), [3, 3, 1], &bits);
        assert_eq!(rank(&t), t.slice(Axis::Third, 0).unwrap().rank());
    }
}

#[test]
fn rank_invariant_under_change_of_basis() {
    let r = gf(3);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..15 {
        let bits: Vec<i64> = (0..8).map(|_| rng.gen_range(0..3)).collect();
        let t = from_bits(r, [2, 2, 2], &bits);
        let g = loop {
            let g = DenseMatrix::from_fn(r, 2, 2, |_, _| Scalar::from_i64(r, rng.gen_range(0..3))).unwrap();
            if g.rank() == 2 {
                break g;
            }
        };
        let moved = Tensor3::from_fn(r, [2, 2, 2], |i, j, k| {
            (0..2).fold(Scalar::zero(r), |acc, a| &acc + &(g.get(i, a) * &t.get(a, j, k)))
        })
        .unwrap();
        assert_eq!(rank(&moved), rank(&t), "{bits:?}");
    }
}

#[test]
fn tensor_rank_is_tau_plus_min_completion_rank_on_2x3() {
    let r = gf(2);
    let budget = SearchBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..24 {
        let star = rng.gen_range(0..6);
        let cells: Vec<Option<i64>> = (0..6)
            .map(|c| (c != star).then(|| rng.gen_range(0..2)))
            .collect();
        let b = IncompleteMatrix::from_ints(r, &[cells[..3].to_vec(), cells[3..].to_vec()]).unwrap();
        let inst = build_derksen(&b, 100).unwrap();
        assert_eq!(inst.tau, 1);
        let min = min_completion_rank(&b, &budget).unwrap();
        assert!(min.exhausted);
        assert_eq!(rank(&inst.tensor), 1 + min.value.unwrap(), "{b:?}");
    }
}

#[test]
fn derksen_witness_from_a_rank_one_completion() {
    let r = gf(5);
    let b = IncompleteMatrix::from_ints(r, &[vec![Some(1), Some(2)], vec![None, Some(4)]]).unwrap();
    let inst = build_derksen(&b, 100).unwrap();
    let w = b.complete(&[Scalar::from_i64(r, 2)]).unwrap();
    assert_eq!(w.rank(), 1);
    // P, L are 3×n with Pᵀ L = W
    let p = DenseMatrix::from_ints(r, &[vec![1, 2], vec![0, 0], vec![0, 0]]).unwrap();
    let l = DenseMatrix::from_ints(r, &[vec![1, 2], vec![0, 0], vec![0, 0]]).unwrap();
    let d = derksen_witness(&inst, &w, &p, &l).unwrap();
    assert_eq!(d.len(), inst.tau + 3);
    assert_eq!(verify_decomposition(&inst.tensor, &d).unwrap(), None);
    assert!(derksen_witness(&inst, &b.complete(&[Scalar::from_i64(r, 3)]).unwrap(), &p, &l).is_err());
}

#[test]
fn slice_lemma_on_random_gf3_tensors() {
    let r = gf(3);
    let budget = SearchBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut done = 0;
    while done < 6 {
        let payload: Vec<i64> = (0..4).map(|_| rng.gen_range(0..3)).collect();
        let vecs: Vec<i64> = (0..8).map(|_| rng.gen_range(0..3)).collect();
        let t = Tensor3::from_fn(r, [2, 2, 3], |i, j, k| {
            let v = match k {
                0 => payload[2 * i + j],
                g => vecs[4 * (g - 1) + i] * vecs[4 * (g - 1) + 2 + j],
            };
            Scalar::from_i64(r, v)
        })
        .unwrap();
        match slice_lemma_check(&t, 1, &budget) {
            Ok(rep) => {
                assert!(rep.holds, "{t:?}: {rep:?}");
                done += 1;
            }
            Err(rankred::Error::Hypothesis(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn slice_reduce_subtracts_combinations() {
    let r = Ring::Rationals;
    let t = Tensor3::from_fn(r, [2, 2, 3], |i, j, k| Scalar::from_i64(r, (i + 2 * j + 5 * k) as i64)).unwrap();
    let lambda = DenseMatrix::from_ints(r, &[vec![2, -1]]).unwrap();
    let out = slice_reduce(&t, 1, &lambda).unwrap();
    assert_eq!(out.dims(), [2, 2, 1]);
    for i in 0..2 {
        for j in 0..2 {
            let base = (i + 2 * j) as i64;
            let expected = base - 2 * (base + 5) + (base + 10);
            assert_eq!(out.get(i, j, 0), Scalar::from_i64(r, expected));
        }
    }
}

#[test]
fn verify_reports_the_first_mismatch() {
    let r = Ring::Rationals;
    let one = |n: usize, i: usize| (0..n).map(|x| Scalar::from_i64(r, (x == i) as i64)).collect::<Vec<_>>();
    let d = Decomposition::new(vec![Rank1Term::from_dense(r, one(2, 0), one(2, 1), one(2, 1)).unwrap()]).unwrap();
    let t = d.sum(r, [2, 2, 2]).unwrap();
    assert_eq!(verify_decomposition(&t, &d).unwrap(), None);
    let other = Tensor3::from_entries(r, [2, 2, 2], [([1, 1, 1], Scalar::one(r))]).unwrap();
    let m = verify_decomposition(&other, &d).unwrap().unwrap();
    assert_eq!(m.index, [0, 1, 1]);
    assert!(m.found.is_one() && m.expected.is_zero());
}
