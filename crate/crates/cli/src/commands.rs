use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use rankred::algebra::Ring;
use rankred::format::{
    self, CompletionInstance, CompletionWitnessFile, Document, SymmetricInstance, TensorInstance,
};
use rankred::oracle::{self, OracleResult, SearchBudget};
use rankred::poly::{encode_3sat, Assignment, CnfFormula, PolySystem};
use rankred::sigma::{CompletionGadget, IncompleteMatrix};
use rankred::symmetric::{
    build_curly_t, embed_s, pad_cubical, pad_decomposition, symmetric_witness, verify_sym_decomposition, Layout,
    SymDecomposition, SymTensor,
};
use rankred::tensor::{build_derksen, derksen_witness, verify_decomposition, Decomposition, Mismatch, Tensor3};
use rankred::Error;
use serde_json::{json, Value};

use crate::report::Report;
use crate::{OracleTask, Stage};

fn read(path: &Path) -> Result<Document> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Document::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn parse_ring(text: &str) -> Result<Ring> {
    Ok(text.parse::<Ring>()?)
}

pub fn encode(cnf: &Path, ring: &str, out: Option<&Path>) -> Result<u8> {
    let mut report = Report::new("encode-3sat");
    let text = fs::read_to_string(cnf).with_context(|| format!("reading {}", cnf.display()))?;
    let formula = CnfFormula::parse_dimacs(&text).with_context(|| format!("parsing {}", cnf.display()))?;
    let system = encode_3sat(&formula).embed(parse_ring(ring)?)?;
    report.add("variables", system.num_vars());
    report.add("polynomials", system.len());
    emit(&Document::PolySystem(system).to_json(), out)?;
    report.print();
    Ok(0)
}

/// Builds 𝓑(F) and records its sizes.
fn completion_stage(system: &PolySystem, guard: usize, report: &mut Report) -> Result<CompletionGadget> {
    let g = CompletionGadget::build(system, guard)?;
    report.add("sigma", g.sigma().len());
    report.add("labels", g.labels().len());
    report.add("stars", g.matrix().tau());
    Ok(g)
}

fn label_texts(g: &CompletionGadget) -> Vec<[String; 3]> {
    g.labels()
        .iter()
        .map(|&l| g.label_polynomials(l).map(ToString::to_string))
        .collect()
}

fn tensor_stage(
    system: Option<&PolySystem>,
    matrix: &IncompleteMatrix,
    guard: usize,
    report: &mut Report,
) -> Result<TensorInstance> {
    let inst = build_derksen(matrix, guard)?;
    report.add("tau", inst.tau);
    report.add("target_rank", inst.target_rank);
    Ok(TensorInstance {
        system: system.cloned(),
        tensor: inst.tensor,
        tau: inst.tau,
        target_rank: Some(inst.target_rank),
    })
}

/// Pads the payload to a cube and builds 𝒯(S(T)); the target rank grows by
/// 4.5(n² + n).
fn symmetric_stage(payload: TensorInstance, guard: usize, report: &mut Report) -> Result<SymmetricInstance> {
    let n = *payload.tensor.dims().iter().max().expect("three dims");
    let layout = Layout::new(n)?;
    if layout.len() > guard {
        return Err(Error::Guard {
            size: layout.len(),
            bound: guard,
        }
        .into());
    }
    let cube = pad_cubical(&payload.tensor)?;
    let tensor = build_curly_t(&embed_s(&cube)?, n)?;
    let target_rank = payload.target_rank.map(|r| r + 9 * n * (n + 1) / 2);
    report.add("n", n);
    report.add("indices", layout.len());
    if let Some(r) = target_rank {
        report.add("target_rank", r);
    }
    Ok(SymmetricInstance {
        system: payload.system,
        n,
        tensor,
        target_rank,
    })
}

pub fn reduce(stage: Stage, input: &Path, guard: usize, ring: Option<&str>, out: Option<&Path>) -> Result<u8> {
    let mut report = Report::new("reduce");
    let doc = read(input)?;
    let embed = |f: PolySystem| -> Result<PolySystem> {
        match ring {
            Some(r) => Ok(f.embed(parse_ring(r)?)?),
            None => Ok(f),
        }
    };
    let result = match (stage, doc) {
        (Stage::Completion, Document::PolySystem(f)) => {
            let f = embed(f)?;
            let g = completion_stage(&f, guard, &mut report)?;
            Document::Completion(CompletionInstance {
                labels: label_texts(&g),
                matrix: g.matrix().clone(),
                system: Some(f),
            })
        }
        (Stage::Tensor, Document::PolySystem(f)) => {
            let f = embed(f)?;
            let g = completion_stage(&f, guard, &mut report)?;
            Document::Tensor(tensor_stage(Some(&f), g.matrix(), guard, &mut report)?)
        }
        (Stage::Tensor, Document::Completion(c)) => {
            Document::Tensor(tensor_stage(c.system.as_ref(), &c.matrix, guard, &mut report)?)
        }
        (Stage::Symmetric, Document::PolySystem(f)) => {
            let f = embed(f)?;
            let g = completion_stage(&f, guard, &mut report)?;
            let t = tensor_stage(Some(&f), g.matrix(), guard, &mut report)?;
            Document::Symmetric(symmetric_stage(t, guard, &mut report)?)
        }
        (Stage::Symmetric, Document::Completion(c)) => {
            let t = tensor_stage(c.system.as_ref(), &c.matrix, guard, &mut report)?;
            Document::Symmetric(symmetric_stage(t, guard, &mut report)?)
        }
        (Stage::Symmetric, Document::Tensor(t)) => Document::Symmetric(symmetric_stage(t, guard, &mut report)?),
        (_, doc) => {
            return Err(Error::Format(format!("cannot reduce a {} document to this stage", doc.kind())).into())
        }
    };
    emit(&result.to_json(), out)?;
    report.print();
    Ok(0)
}

fn solution_for(system: &PolySystem, solution: Option<&str>) -> Result<Assignment> {
    let text = solution.ok_or_else(|| anyhow!("this instance needs --solution"))?;
    Ok(Assignment::parse(system.ring(), text)?)
}

fn rebuild(system: &PolySystem) -> Result<CompletionGadget> {
    Ok(CompletionGadget::build(system, usize::MAX)?)
}

/// The derksen witness for the system's gadget, checked against `tensor`.
fn tensor_witness(system: &PolySystem, solution: Option<&str>, tensor: &Tensor3) -> Result<Decomposition> {
    let g = rebuild(system)?;
    let w = g.completion_witness(&solution_for(system, solution)?)?;
    let inst = build_derksen(g.matrix(), usize::MAX)?;
    if inst.tensor != *tensor {
        return Err(Error::Verification("instance tensor differs from the one its system produces".into()).into());
    }
    Ok(derksen_witness(&inst, &w.completion, &w.factor, &w.factor)?)
}

fn mismatch_error(m: Mismatch) -> anyhow::Error {
    Error::Verification(format!(
        "mismatch at ({}, {}, {}): expected {}, found {}",
        m.index[0], m.index[1], m.index[2], m.expected, m.found
    ))
    .into()
}

pub fn witness(
    instance: &Path,
    solution: Option<&str>,
    decomposition: Option<&Path>,
    out: Option<&Path>,
) -> Result<u8> {
    let mut report = Report::new("witness");
    let result = match read(instance)? {
        Document::Completion(c) => {
            let system = c.system.ok_or_else(|| anyhow!("completion instance has no system"))?;
            let g = rebuild(&system)?;
            if *g.matrix() != c.matrix {
                return Err(Error::Verification("instance matrix differs from the one its system produces".into()).into());
            }
            let w = g.completion_witness(&solution_for(&system, solution)?)?;
            report.add("rank", w.completion.rank());
            report.verdict("completion", Ok(()));
            Document::CompletionWitness(CompletionWitnessFile {
                assignment: w.assignment,
                completion: w.completion,
                factor: Some(w.factor),
            })
        }
        Document::Tensor(t) => {
            let system = t.system.ok_or_else(|| anyhow!("tensor instance has no system"))?;
            let d = tensor_witness(&system, solution, &t.tensor)?;
            if let Some(m) = verify_decomposition(&t.tensor, &d)? {
                return Err(mismatch_error(m));
            }
            report.add("terms", d.len());
            report.verdict("decomposition", Ok(()));
            Document::Decomposition(d)
        }
        Document::Symmetric(s) => {
            let n = s.n;
            let payload = Tensor3::from_fn(s.tensor.ring(), [n, n, n], |i, j, k| s.tensor.get(i, n + j, 2 * n + k))?;
            let d = match (decomposition, &s.system) {
                (Some(path), _) => match read(path)? {
                    Document::Decomposition(d) => d,
                    other => bail!("expected a decomposition, got a {} document", other.kind()),
                },
                (None, Some(system)) => {
                    let g = rebuild(system)?;
                    let t = build_derksen(g.matrix(), usize::MAX)?;
                    let d = tensor_witness(system, solution, &t.tensor)?;
                    pad_decomposition(&d, n)?
                }
                (None, None) => bail!("this instance needs --decomposition"),
            };
            let w = symmetric_witness(&payload, &d)?;
            if let Some(m) = verify_sym_decomposition(&s.tensor, &w)? {
                return Err(mismatch_error(m));
            }
            report.add("payload_terms", d.len());
            report.add("terms", w.len());
            report.verdict("symmetric_decomposition", Ok(()));
            Document::SymDecomposition(w)
        }
        other => return Err(Error::Format(format!("no witness for a {} document", other.kind())).into()),
    };
    emit(&result.to_json(), out)?;
    report.print();
    Ok(0)
}

fn result_value<W>(r: &OracleResult<W>, witness: impl FnOnce(&W) -> Value) -> Value {
    json!({
        "format_version": format::FORMAT_VERSION,
        "kind": "oracle_result",
        "value": r.value,
        "lower_bound": r.lower_bound,
        "exhausted": r.exhausted,
        "witness": r.witness.as_ref().map_or(Value::Null, witness),
    })
}

fn sym_tensor_of(doc: Document) -> Result<SymTensor> {
    match doc {
        Document::Symmetric(s) => Ok(s.tensor),
        Document::Tensor(t) => {
            let n = t.tensor.dims()[0];
            Ok(SymTensor::from_tensor(&t.tensor, (1..=n).map(|i| i.to_string()).collect())?)
        }
        other => Err(Error::Format(format!("expected a symmetric tensor, got a {} document", other.kind())).into()),
    }
}

pub fn oracle(task: OracleTask, input: &Path, budget: &str, out: Option<&Path>) -> Result<u8> {
    let mut report = Report::new("oracle");
    let budget: SearchBudget = budget.parse()?;
    let doc = read(input)?;
    let (value, exhausted) = match task {
        OracleTask::Solve => {
            let Document::PolySystem(f) = doc else {
                return Err(Error::Format(format!("expected a polynomial system, got a {} document", doc.kind())).into());
            };
            let sols = oracle::solve_system_bruteforce(&f, &budget)?;
            report.add("solutions", sols.len());
            let list: Vec<Vec<String>> = sols
                .iter()
                .map(|a| a.values().iter().map(ToString::to_string).collect())
                .collect();
            let v = json!({
                "format_version": format::FORMAT_VERSION,
                "kind": "oracle_result",
                "value": list,
                "exhausted": true,
                "witness": Value::Null,
            });
            (v, true)
        }
        OracleTask::Minrank => {
            let Document::Completion(c) = doc else {
                return Err(Error::Format(format!("expected an incomplete matrix, got a {} document", doc.kind())).into());
            };
            let r = oracle::min_completion_rank(&c.matrix, &budget)?;
            (result_value(&r, format::matrix_to), r.exhausted)
        }
        OracleTask::Rank => {
            let Document::Tensor(t) = doc else {
                return Err(Error::Format(format!("expected a tensor, got a {} document", doc.kind())).into());
            };
            let r = oracle::tensor_rank_bruteforce(&t.tensor, &budget)?;
            (result_value(&r, |d| Document::Decomposition(d.clone()).to_value()), r.exhausted)
        }
        OracleTask::Srank => {
            let t = sym_tensor_of(doc)?;
            let r = oracle::symmetric_rank_bruteforce(&t, &budget)?;
            (result_value(&r, |d| Document::SymDecomposition(d.clone()).to_value()), r.exhausted)
        }
    };
    emit(&format::to_text(&value), out)?;
    if exhausted {
        report.add("search", "exhausted");
    } else {
        report.skipped("search");
    }
    report.print();
    Ok(if exhausted { 0 } else { 5 })
}

pub fn verify(instance: &Path, witness: &Path) -> Result<u8> {
    let mut report = Report::new("verify");
    let inst = read(instance)?;
    let wit = read(witness)?;
    let outcome: Option<Mismatch> = match (inst, wit) {
        (Document::Completion(c), Document::CompletionWitness(w)) => {
            if let Some(f) = &c.system {
                f.embed(w.assignment.ring().unwrap_or(f.ring()))
                    .and_then(|f| f.check_solution(&w.assignment))?;
            }
            c.matrix.check_completion(&w.completion)?;
            let rank = w.completion.rank();
            if rank > 3 {
                return Err(Error::Verification(format!("completion has rank {rank}")).into());
            }
            report.add("rank", rank);
            None
        }
        (Document::Tensor(t), Document::Decomposition(d)) => verify_decomposition(&t.tensor, &d)?,
        (Document::Symmetric(s), Document::SymDecomposition(d)) => verify_sym_decomposition(&s.tensor, &d)?,
        (Document::Symmetric(s), Document::Decomposition(d)) if d.is_empty() => {
            verify_sym_decomposition(&s.tensor, &SymDecomposition::default())?
        }
        (i, w) => {
            return Err(Error::Format(format!("cannot check a {} against a {}", w.kind(), i.kind())).into())
        }
    };
    match outcome {
        None => {
            report.verdict("witness", Ok(()));
            emit("verified\n", None)?;
            report.print();
            Ok(0)
        }
        Some(m) => {
            report.verdict("witness", Err(format!("{:?}", m.index)));
            report.print();
            Err(mismatch_error(m))
        }
    }
}
