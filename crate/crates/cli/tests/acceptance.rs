//! Acceptance suite: each criterion prints one PASS or FAIL line. Every
//! check is exact; runtimes are compared against the pinned limits below.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rankred::algebra::{DenseMatrix, Ring, Scalar};
use rankred::oracle::{
    min_completion_rank, slice_lemma_check, solve_system_bruteforce, symmetric_rank_bruteforce,
    tensor_rank_bruteforce, SearchBudget,
};
use rankred::poly::{encode_3sat, Assignment, CnfFormula, PolySystem};
use rankred::sigma::{CompletionGadget, IncompleteMatrix, DEFAULT_GUARD};
use rankred::symmetric::{
    build_l_pi, embed_s, gadget_tensor, symmetric_witness, waring_gadget, Layout, SymTensor,
};
use rankred::tensor::{build_derksen, derksen_witness, Axis, Decomposition, Rank1Term, SparseVector, Tensor3};
use sha2::{Digest, Sha256};

type Check = Result<String, String>;

/// Number, name, check, time limit in seconds.
type Criterion = (u32, &'static str, fn() -> Check, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gf(p: u64) -> Ring {
    Ring::gf(p).unwrap()
}

fn int(r: Ring, v: i64) -> Scalar {
    Scalar::from_i64(r, v)
}

/// Σ s_t (1, r_t)^{⊗3} entry by entry, indexed by the number of 2s.
fn gadget_entries(terms: &[(Scalar, Scalar)], ring: Ring) -> [Scalar; 4] {
    let mut out = [0, 1, 2, 3].map(|_| Scalar::zero(ring));
    for (s, r) in terms {
        for (twos, slot) in out.iter_mut().enumerate() {
            *slot += &(s * &r.pow(twos as u32));
        }
    }
    out
}

fn waring_terms(a: &Scalar) -> Result<Vec<(Scalar, Scalar)>, String> {
    let d = waring_gadget(a).map_err(|e| format!("a = {a}: {e}"))?;
    ensure!(d.len() == 3, "a = {a}: {} terms", d.len());
    d.terms
        .iter()
        .map(|t| {
            ensure!(t.v.get(0).is_one(), "a = {a}: term vector does not start with 1");
            Ok((t.s.clone(), t.v.get(1)))
        })
        .collect()
}

fn criterion_1() -> Check {
    let mut checked = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut values: Vec<Scalar> = (0..11).map(|a| int(gf(11), a)).collect();
    for _ in 0..50 {
        values.push(Scalar::rational(rng.gen_range(-60..=60), rng.gen_range(1..=25)).unwrap());
    }
    for a in &values {
        let ring = a.ring();
        let terms = waring_terms(a)?;
        let sums = gadget_entries(&terms, ring);
        let expected = [a.clone(), Scalar::one(ring), Scalar::zero(ring), Scalar::zero(ring)];
        ensure!(sums == expected, "a = {a}: moments {sums:?}");
        checked += 1;
    }
    let zero = waring_terms(&Scalar::zero(Ring::Rationals))?;
    let q = |n, d| Scalar::rational(n, d).unwrap();
    let s: Vec<Scalar> = zero.iter().map(|t| t.0.clone()).collect();
    let r: Vec<Scalar> = zero.iter().map(|t| t.1.clone()).collect();
    ensure!(s == [q(-27, 40), q(-1, 8), q(4, 5)], "a = 0: s = {s:?}");
    ensure!(r == [q(-2, 3), q(2, 1), q(1, 1)], "a = 0: r = {r:?}");
    Ok(format!("{checked} values, a = 0 gives s = (-27/40, -1/8, 4/5)"))
}

fn criterion_2() -> Check {
    let p = 11u64;
    // s·(x, y)^{⊗3} as (x³, x²y, xy², y³) times s; (x, y) normalised
    let mut cands = Vec::new();
    let dirs: Vec<(u64, u64)> = (0..p).map(|t| (1, t)).chain([(0, 1)]).collect();
    for &(x, y) in &dirs {
        for s in 1..p {
            cands.push([x * x * x, x * x * y, x * y * y, y * y * y].map(|m| s * m % p));
        }
    }
    ensure!(cands.len() == 120, "{} candidates", cands.len());
    let target = [0, 1, 0, 0];
    let add = |a: &[u64; 4], b: &[u64; 4]| [0, 1, 2, 3].map(|i| (a[i] + b[i]) % p);
    for (i, a) in cands.iter().enumerate() {
        ensure!(*a != target, "one term suffices: {a:?}");
        for b in &cands[i + 1..] {
            ensure!(add(a, b) != target, "two terms suffice: {a:?} + {b:?}");
        }
    }
    let a = gadget_tensor(&Scalar::zero(gf(11))).unwrap();
    let budget = SearchBudget {
        max_rank: 2,
        ..SearchBudget::default()
    };
    let res = symmetric_rank_bruteforce(&a, &budget).map_err(|e| e.to_string())?;
    ensure!(res.lower_bound == 3 && !res.exhausted, "library search: {res:?}");
    let witness = waring_gadget(&Scalar::zero(gf(11))).map_err(|e| e.to_string())?;
    ensure!(witness.len() == 3, "witness has {} terms", witness.len());
    Ok(format!("{} pairs ruled out, 3-term witness", 120 * 119 / 2))
}

struct Case {
    system: PolySystem,
    solutions: Vec<Assignment>,
    sigma: usize,
}

fn cases() -> Vec<Case> {
    let budget = SearchBudget::default();
    let gf11 = gf(11);
    let mut out = Vec::new();
    for (ring, text, sigma) in [(Ring::Rationals, "x1^2 - x1", 9), (gf11, "x1^2 - x1 - 1", 11)] {
        let system = PolySystem::parse(ring, 1, &[text]).unwrap();
        let over_gf11 = PolySystem::parse(gf11, 1, &[text]).unwrap();
        let found = solve_system_bruteforce(&over_gf11, &budget).unwrap();
        let solutions = found
            .iter()
            .map(|a| {
                let v = a.values()[0].residue().unwrap() as i64;
                Assignment::from_i64(ring, &[v])
            })
            .collect();
        out.push(Case { system, solutions, sigma });
    }
    out
}

fn criterion_3() -> Check {
    let mut summary = Vec::new();
    for case in cases() {
        let expected: Vec<i64> = if case.sigma == 9 { vec![0, 1] } else { vec![4, 8] };
        let got: Vec<i64> = case
            .solutions
            .iter()
            .map(|a| a.values()[0].to_string().parse().unwrap())
            .collect();
        ensure!(got == expected, "solutions {got:?}, expected {expected:?}");
        let g = CompletionGadget::build(&case.system, DEFAULT_GUARD).map_err(|e| e.to_string())?;
        let m = g.sigma().len();
        ensure!(m == case.sigma, "|sigma| = {m}");
        let h = g.labels().len();
        ensure!(h == m.pow(3) - (m - 2).pow(3), "|H| = {h} for |sigma| = {m}");
        for xi in &case.solutions {
            let w = g.completion_witness(xi).map_err(|e| e.to_string())?;
            let b = g.matrix();
            for i in 0..h {
                for j in 0..h {
                    if let Some(v) = b.get(i, j) {
                        let v = v.embed(w.completion.ring()).unwrap();
                        ensure!(*w.completion.get(i, j) == v, "entry ({i}, {j}) differs");
                    }
                }
            }
            ensure!(w.completion.rank() == 3, "rank {}", w.completion.rank());
        }
        summary.push(format!("|H| = {h}"));
    }
    Ok(summary.join(", "))
}

fn random_invertible(ring: Ring, rng: &mut ChaCha8Rng) -> DenseMatrix {
    loop {
        let g = DenseMatrix::from_fn(ring, 3, 3, |_, _| {
            if ring == Ring::Rationals {
                Scalar::rational(rng.gen_range(-9..=9), rng.gen_range(1..=4)).unwrap()
            } else {
                int(ring, rng.gen_range(0..11))
            }
        })
        .unwrap();
        if g.rank() == 3 {
            return g;
        }
    }
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut rounds = 0;
    for case in cases() {
        let g = CompletionGadget::build(&case.system, DEFAULT_GUARD).map_err(|e| e.to_string())?;
        for xi in &case.solutions {
            let w = g.completion_witness(xi).map_err(|e| e.to_string())?;
            let ring = w.factor.ring();
            for _ in 0..20 {
                let m = random_invertible(ring, &mut rng);
                let p = m.inverse().unwrap().transpose().mul(&w.factor).unwrap();
                let l = m.mul(&w.factor).unwrap();
                let y = g.extract_solution(&p, &l).map_err(|e| e.to_string())?;
                ensure!(y == w.assignment, "recovered {:?} instead of {:?}", y, w.assignment);
                rounds += 1;
            }
        }
    }
    Ok(format!("{rounds} scrambled factor pairs"))
}

fn criterion_5() -> Check {
    let mut summary = Vec::new();
    for case in cases() {
        let g = CompletionGadget::build(&case.system, DEFAULT_GUARD).map_err(|e| e.to_string())?;
        let inst = build_derksen(g.matrix(), DEFAULT_GUARD).map_err(|e| e.to_string())?;
        let b = g.matrix();
        ensure!(inst.tensor.slice(Axis::Third, 0).unwrap() == b.zero_filled(), "slice 0 is not B with zeros");
        for xi in &case.solutions {
            let w = g.completion_witness(xi).map_err(|e| e.to_string())?;
            let d = derksen_witness(&inst, &w.completion, &w.factor, &w.factor).map_err(|e| e.to_string())?;
            ensure!(d.len() == inst.tau + 3, "{} terms for tau = {}", d.len(), inst.tau);
            // independent re-summation
            let ring = w.completion.ring();
            let mut acc: HashMap<[usize; 3], Scalar> = HashMap::new();
            for t in &d.terms {
                for (i, x) in t.a.nonzeros() {
                    for (j, y) in t.b.nonzeros() {
                        for (k, z) in t.c.nonzeros() {
                            *acc.entry([*i, *j, *k]).or_insert_with(|| Scalar::zero(ring)) += &(&(x * y) * z);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            let mut expected: HashMap<[usize; 3], Scalar> = HashMap::new();
            for (idx, v) in inst.tensor.nonzeros() {
                expected.insert(*idx, v.embed(ring).unwrap());
            }
            ensure!(acc == expected, "sum of terms differs from the tensor");
        }
        summary.push(format!("tau = {}", inst.tau));
    }
    Ok(summary.join(", "))
}

fn small_incomplete(stars: usize) -> Vec<IncompleteMatrix> {
    let r = gf(2);
    let mut out = Vec::new();
    for mask in 0u32..16 {
        if mask.count_ones() as usize != stars {
            continue;
        }
        let free: Vec<usize> = (0..4).filter(|i| mask & (1 << i) == 0).collect();
        for fill in 0u32..(1 << free.len()) {
            let mut cells = [None; 4];
            for (b, &i) in free.iter().enumerate() {
                cells[i] = Some(((fill >> b) & 1) as i64);
            }
            out.push(IncompleteMatrix::from_ints(r, &[vec![cells[0], cells[1]], vec![cells[2], cells[3]]]).unwrap());
        }
    }
    out
}

fn criterion_6() -> Check {
    let budget = SearchBudget::default();
    let mut count = 0;
    for stars in [1, 2] {
        for b in small_incomplete(stars) {
            let inst = build_derksen(&b, DEFAULT_GUARD).map_err(|e| e.to_string())?;
            let rank = tensor_rank_bruteforce(&inst.tensor, &budget).map_err(|e| e.to_string())?;
            let min = min_completion_rank(&b, &budget).map_err(|e| e.to_string())?;
            ensure!(rank.exhausted && min.exhausted, "search not exhausted for {b:?}");
            let (r, m) = (rank.value.unwrap(), min.value.unwrap());
            ensure!(r == inst.tau + m, "{b:?}: rank {r}, tau {} + min rank {m}", inst.tau);
            count += 1;
        }
    }
    ensure!(count == 32 + 24, "{count} matrices");
    Ok(format!("{count} matrices"))
}

fn criterion_7() -> Check {
    let r = gf(2);
    let budget = SearchBudget::default();
    let mut count = 0;
    for payload in 0u32..16 {
        for u in 1u32..4 {
            for v in 1u32..4 {
                let t = Tensor3::from_fn(r, [2, 2, 2], |i, j, k| {
                    let bit = if k == 0 {
                        (payload >> (2 * i + j)) & 1
                    } else {
                        ((u >> i) & 1) * ((v >> j) & 1)
                    };
                    int(r, bit as i64)
                })
                .unwrap();
                let rep = slice_lemma_check(&t, 1, &budget).map_err(|e| e.to_string())?;
                ensure!(rep.holds, "payload {payload:04b}, gadget {u:02b}x{v:02b}: {rep:?}");
                count += 1;
            }
        }
    }
    Ok(format!("{count} tensors"))
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> SparseVector {
    let q = Ring::Rationals;
    SparseVector::from_dense(q, (0..n).map(|_| int(q, rng.gen_range(-3..=3))).collect()).unwrap()
}

/// 𝒯(S(T)) on 15 indices straight from the definitions, looked up by name.
fn padded_from_definition(t: &Tensor3, names: &[String]) -> HashMap<[usize; 3], Scalar> {
    let pos = |name: String| names.iter().position(|n| *n == name).unwrap();
    let n = t.dims()[0];
    let mut out = HashMap::new();
    let mut put = |idx: [usize; 3], v: Scalar| {
        let mut perms = vec![
            [idx[0], idx[1], idx[2]],
            [idx[0], idx[2], idx[1]],
            [idx[1], idx[0], idx[2]],
            [idx[1], idx[2], idx[0]],
            [idx[2], idx[0], idx[1]],
            [idx[2], idx[1], idx[0]],
        ];
        perms.dedup();
        for p in perms {
            out.insert(p, v.clone());
        }
    };
    for (&[i, j, k], v) in t.nonzeros() {
        put([pos(format!("i{}", i + 1)), pos(format!("j{}", j + 1)), pos(format!("k{}", k + 1))], v.clone());
    }
    for (letter, prefix) in [("I", "i"), ("J", "j"), ("K", "k")] {
        for p in 1..=n {
            for q in p..=n {
                let pi = pos(format!("pair_{letter}_{p}_{q}"));
                let (x, y) = (pos(format!("{prefix}{p}")), pos(format!("{prefix}{q}")));
                for (a, b) in [(x, x), (x, y), (y, y)] {
                    put([pi, a, b], Scalar::one(Ring::Rationals));
                }
            }
        }
    }
    out
}

fn criterion_8() -> Check {
    let q = Ring::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let layout = Layout::new(2).unwrap();
    let names = layout.names();
    let mut worst = 0;
    for run in 0..10 {
        let r = rng.gen_range(1..=3);
        let terms: Vec<Rank1Term> = (0..r)
            .map(|_| Rank1Term::new(random_vector(&mut rng, 2), random_vector(&mut rng, 2), random_vector(&mut rng, 2)).unwrap())
            .collect();
        let d = Decomposition::new(terms).unwrap();
        let t = d.sum(q, [2, 2, 2]).unwrap();
        let w = symmetric_witness(&t, &d).map_err(|e| format!("run {run}: {e}"))?;
        ensure!(w.len() <= r + 27, "run {run}: {} terms for r = {r}", w.len());
        worst = worst.max(w.len());
        // independent dense re-summation against the definition
        let mut sum: HashMap<[usize; 3], Scalar> = HashMap::new();
        for term in &w.terms {
            let v = term.v.to_dense();
            for i in 0..15 {
                for j in 0..15 {
                    for k in 0..15 {
                        let x = &(&(&term.s * &v[i]) * &v[j]) * &v[k];
                        if !x.is_zero() {
                            *sum.entry([i, j, k]).or_insert_with(|| Scalar::zero(q)) += &x;
                        }
                    }
                }
            }
        }
        sum.retain(|_, v| !v.is_zero());
        ensure!(sum == padded_from_definition(&t, &names), "run {run}: witness sum differs from the padded tensor");
        // remainder after the pair blocks only has repeated-index entries
        let s = embed_s(&t).unwrap();
        let mut lifted = Vec::new();
        for x in &d.terms {
            let mut dense = x.a.to_dense();
            dense.extend(x.b.to_dense());
            dense.extend(x.c.to_dense());
            lifted.push(dense);
        }
        let mut u = s.clone();
        for v in &lifted {
            for i in 0..6 {
                for j in i..6 {
                    for k in j..6 {
                        let x = &(&v[i] * &v[j]) * &v[k];
                        u.add_at([i, j, k], &-&x).unwrap();
                    }
                }
            }
        }
        let mut rest: HashMap<[usize; 3], Scalar> = padded_from_definition(&Tensor3::zeros(q, [2, 2, 2]).unwrap(), &names);
        for (&[i, j, k], v) in u.nonzeros() {
            rest.insert([i, j, k], v.clone());
        }
        let mut rest_sym = SymTensor::zeros(q, names.clone()).unwrap();
        for (idx, v) in &rest {
            rest_sym.set(*idx, v.clone()).unwrap();
        }
        for pi in layout.strict_pairs() {
            let (l, _) = build_l_pi(&u, layout, pi).map_err(|e| format!("run {run}: {e}"))?;
            rest_sym = rest_sym.checked_sub(&l).unwrap();
        }
        for (&[a, b, c], _) in rest_sym.nonzeros() {
            ensure!(a == b || b == c, "run {run}: remainder nonzero at distinct indices ({a}, {b}, {c})");
        }
    }
    Ok(format!("10 tensors, at most {worst} terms"))
}

fn formulas() -> Vec<CnfFormula> {
    vec![
        CnfFormula::new(3, vec![vec![1, 2, 3]], vec![]).unwrap(),
        CnfFormula::new(3, vec![vec![1, 2]], vec![(1, 2), (2, 3)]).unwrap(),
        CnfFormula::new(4, vec![vec![1, 2, 3], vec![2, 4]], vec![(1, 4)]).unwrap(),
        CnfFormula::new(2, vec![vec![1]], vec![(1, 2), (2, 1)]).unwrap(),
        CnfFormula::new(4, vec![vec![1, 2, 3], vec![4]], vec![(1, 2), (2, 3), (1, 3)]).unwrap(),
    ]
}

fn bits(mask: u32, n: usize) -> Vec<bool> {
    (0..n).map(|i| mask & (1 << i) != 0).collect()
}

fn criterion_9() -> Check {
    let z = Ring::Integers;
    // clause polynomials on every 0/1 point
    for clause in [vec![1, 2, 3], vec![1, 1, 2], vec![2, 3], vec![3]] {
        let f = CnfFormula::new(3, vec![clause.clone()], vec![]).unwrap();
        let poly = encode_3sat(&f).polynomials()[3].clone();
        for mask in 0..8 {
            let b = bits(mask, 3);
            let point: Vec<Scalar> = b.iter().map(|&x| int(z, x as i64)).collect();
            let vanishes = poly.evaluate(&point).unwrap().is_zero();
            ensure!(vanishes == f.satisfied_by(&b), "clause {clause:?} at {b:?}");
        }
    }
    let f = CnfFormula::new(2, vec![], vec![(1, 2)]).unwrap();
    let poly = encode_3sat(&f).polynomials()[2].clone();
    for mask in 0..4 {
        let b = bits(mask, 2);
        let point: Vec<Scalar> = b.iter().map(|&x| int(z, x as i64)).collect();
        ensure!(poly.evaluate(&point).unwrap().is_zero() == (b[0] != b[1]), "disequality at {b:?}");
    }
    let budget = SearchBudget::default();
    for (n, phi) in formulas().iter().enumerate() {
        let direct: Vec<Vec<i64>> = (0..1u32 << phi.num_vars)
            .map(|m| bits(m, phi.num_vars))
            .filter(|b| phi.satisfied_by(b))
            .map(|b| b.iter().map(|&x| x as i64).collect())
            .collect();
        let mut direct = direct;
        // lexicographic order with the first variable most significant
        direct.sort();
        for p in [2, 11] {
            let system = encode_3sat(phi).embed(gf(p)).unwrap();
            let sols: Vec<Vec<i64>> = solve_system_bruteforce(&system, &budget)
                .unwrap()
                .iter()
                .map(|a| a.values().iter().map(|v| v.residue().unwrap() as i64).collect())
                .collect();
            ensure!(sols == direct, "formula {n} over GF({p}): {sols:?} vs {direct:?}");
        }
    }
    Ok("4 clauses, 1 disequality, 5 formulas over GF(2) and GF(11)".into())
}

fn sha(path: &Path) -> Vec<u8> {
    Sha256::digest(std::fs::read(path).unwrap()).to_vec()
}

fn run_reduce(stage: &str, input: &Path, out: &Path, threads: usize) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_rankred"))
        .args(["--threads", &threads.to_string(), "reduce", stage])
        .arg(input)
        .arg("--out")
        .arg(out)
        .stderr(std::process::Stdio::null())
        .status()
        .map_err(|e| e.to_string())?;
    ensure!(status.success(), "reduce {stage} {} exited with {status}", input.display());
    Ok(())
}

fn criterion_10() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut jobs: Vec<(&str, std::path::PathBuf)> = Vec::new();
    let write = |name: String, text: String| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    for (i, case) in cases().into_iter().enumerate() {
        let p = write(format!("system{i}.json"), rankred::format::Document::PolySystem(case.system).to_json());
        jobs.push(("completion", p.clone()));
        jobs.push(("tensor", p));
    }
    for (i, b) in small_incomplete(1).into_iter().chain(small_incomplete(2)).enumerate() {
        let doc = rankred::format::Document::Completion(rankred::format::CompletionInstance {
            system: None,
            labels: Vec::new(),
            matrix: b,
        });
        jobs.push(("tensor", write(format!("matrix{i}.json"), doc.to_json())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..10 {
        let d = Decomposition::new(
            (0..3)
                .map(|_| Rank1Term::new(random_vector(&mut rng, 2), random_vector(&mut rng, 2), random_vector(&mut rng, 2)).unwrap())
                .collect(),
        )
        .unwrap();
        let t = d.sum(Ring::Rationals, [2, 2, 2]).unwrap();
        let doc = rankred::format::Document::Tensor(rankred::format::TensorInstance {
            system: None,
            tensor: t,
            tau: 0,
            target_rank: None,
        });
        jobs.push(("symmetric", write(format!("tensor{i}.json"), doc.to_json())));
    }
    for (k, (stage, input)) in jobs.iter().enumerate() {
        let a = dir.path().join(format!("out{k}a.json"));
        let b = dir.path().join(format!("out{k}b.json"));
        run_reduce(stage, input, &a, 1)?;
        run_reduce(stage, input, &b, 4)?;
        ensure!(sha(&a) == sha(&b), "reduce {stage} {} differs across thread counts", input.display());
    }
    Ok(format!("{} reductions, identical hashes", jobs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "waring gadget identity", criterion_1, 1),
        (2, "gadget symmetric rank is 3 over GF(11)", criterion_2, 60),
        (3, "rank-3 completions from solutions", criterion_3, 120),
        (4, "factor extraction round trip", criterion_4, 30),
        (5, "tensor witness with tau + 3 terms", criterion_5, 60),
        (6, "tensor rank = tau + min completion rank", criterion_6, 300),
        (7, "slice reduction identity", criterion_7, 300),
        (8, "symmetric witness size and sum", criterion_8, 600),
        (9, "3-SAT encoder fidelity", criterion_9, 10),
        (10, "deterministic reduce output", criterion_10, 600),
    ];
    let mut failed = 0;
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(limit) => {
                Err(format!("{detail}; took {:.1}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} ({:.2}s)", elapsed.as_secs_f64()),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {detail} ({:.2}s)", elapsed.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
