//! JSON files read and written by the command-line tool.
//!
//! Every file carries `"format_version"` and a `"kind"`; bare objects in
//! the shapes below are also accepted on input and recognised by their
//! keys. Scalars are strings (`"3"`, `"-1/2"`, residues for GF(p)); plain
//! JSON integers are accepted on input.
//!
//! | kind | keys |
//! |---|---|
//! | `polysystem` | `ring`, `num_vars`, `polynomials` |
//! | `completion` | `ring`, `labels`, `entries` (null for a star), `stars`, `system`? |
//! | `tensor` | `ring`, `dims`, `entries` (`[i, j, k, "v"]`), `target_rank`?, `tau`?, `system`? |
//! | `symmetric` | `ring`, `names`, `entries` (sorted `i ≤ j ≤ k`), `n`, `target_rank`?, `system`? |
//! | `completion_witness` | `ring`, `assignment`, `completion`, `factor`? |
//! | `decomposition` | `ring`, `terms` (`{"a", "b", "c"}`) |
//! | `sym_decomposition` | `ring`, `terms` (`{"s", "v"}`) |
//!
//! Vectors are arrays, or `{"len": n, "nz": [[i, "v"], …]}` when sparse.

use serde_json::{json, Map, Value};

use crate::algebra::{DenseMatrix, Ring, Scalar};
use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, Assignment, PolySystem};
use crate::sigma::IncompleteMatrix;
use crate::symmetric::{SymDecomposition, SymTensor, SymTerm};
use crate::tensor::{Decomposition, Rank1Term, SparseVector, Tensor3};

pub const FORMAT_VERSION: u64 = 1;

/// Serialized size above which output is written without indentation.
const PRETTY_LIMIT: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionInstance {
    pub system: Option<PolySystem>,
    pub labels: Vec<[String; 3]>,
    pub matrix: IncompleteMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorInstance {
    pub system: Option<PolySystem>,
    pub tensor: Tensor3,
    /// Number of trailing 3-slices that are star units (0 for a bare tensor).
    pub tau: usize,
    pub target_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricInstance {
    pub system: Option<PolySystem>,
    /// Side of the cubical tensor in the (I|J|K) block.
    pub n: usize,
    pub tensor: SymTensor,
    pub target_rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionWitnessFile {
    pub assignment: Assignment,
    pub completion: DenseMatrix,
    pub factor: Option<DenseMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    PolySystem(PolySystem),
    Completion(CompletionInstance),
    Tensor(TensorInstance),
    Symmetric(SymmetricInstance),
    CompletionWitness(CompletionWitnessFile),
    Decomposition(Decomposition),
    SymDecomposition(SymDecomposition),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::PolySystem(_) => "polysystem",
            Document::Completion(_) => "completion",
            Document::Tensor(_) => "tensor",
            Document::Symmetric(_) => "symmetric",
            Document::CompletionWitness(_) => "completion_witness",
            Document::Decomposition(_) => "decomposition",
            Document::SymDecomposition(_) => "sym_decomposition",
        }
    }

    pub fn parse(text: &str) -> Result<Document> {
        let value: Value = serde_json::from_str(text)?;
        Document::from_value(&value)
    }

    pub fn from_value(v: &Value) -> Result<Document> {
        let obj = object(v, "document")?;
        if let Some(version) = obj.get("format_version") {
            if version.as_u64() != Some(FORMAT_VERSION) {
                return Err(Error::Format(format!("unsupported format_version {version}")));
            }
        }
        let kind = match obj.get("kind") {
            Some(k) => k
                .as_str()
                .ok_or_else(|| Error::Format("kind must be a string".into()))?
                .to_string(),
            None => guess_kind(obj)?.to_string(),
        };
        match kind.as_str() {
            "polysystem" => Ok(Document::PolySystem(polysystem_from(obj)?)),
            "completion" => completion_from(obj).map(Document::Completion),
            "tensor" => tensor_instance_from(obj).map(Document::Tensor),
            "symmetric" => symmetric_from(obj).map(Document::Symmetric),
            "completion_witness" => completion_witness_from(obj).map(Document::CompletionWitness),
            "decomposition" => decomposition_from(obj, None).map(Document::Decomposition),
            "sym_decomposition" => sym_decomposition_from(obj, None).map(Document::SymDecomposition),
            other => Err(Error::Format(format!("unknown kind {other:?}"))),
        }
    }

    pub fn to_value(&self) -> Value {
        let mut obj = match self {
            Document::PolySystem(f) => polysystem_to(f),
            Document::Completion(c) => completion_to(c),
            Document::Tensor(t) => tensor_instance_to(t),
            Document::Symmetric(s) => symmetric_to(s),
            Document::CompletionWitness(w) => completion_witness_to(w),
            Document::Decomposition(d) => decomposition_to(d),
            Document::SymDecomposition(d) => sym_decomposition_to(d),
        };
        obj.insert("format_version".into(), json!(FORMAT_VERSION));
        obj.insert("kind".into(), json!(self.kind()));
        Value::Object(obj)
    }

    /// Deterministic text: keys sorted, indented unless large, newline at
    /// the end.
    pub fn to_json(&self) -> String {
        to_text(&self.to_value())
    }
}

/// Renders a value the way [`Document::to_json`] does.
pub fn to_text(v: &Value) -> String {
    let compact = v.to_string();
    let mut out = if compact.len() < PRETTY_LIMIT {
        let mut s = String::new();
        write_indented(v, 0, &mut s);
        s
    } else {
        compact
    };
    out.push('\n');
    out
}

/// Indented JSON, except that arrays of plain values stay on one line.
fn write_indented(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_indented(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_indented(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn guess_kind(obj: &Map<String, Value>) -> Result<&'static str> {
    let has = |k: &str| obj.contains_key(k);
    Ok(if has("polynomials") {
        "polysystem"
    } else if has("dims") {
        "tensor"
    } else if has("names") {
        "symmetric"
    } else if has("assignment") {
        "completion_witness"
    } else if has("entries") {
        "completion"
    } else if let Some(terms) = obj.get("terms") {
        let symmetric = terms
            .as_array()
            .and_then(|t| t.first())
            .and_then(Value::as_object)
            .is_some_and(|t| t.contains_key("s"));
        if symmetric {
            "sym_decomposition"
        } else {
            "decomposition"
        }
    } else {
        return Err(Error::Format("cannot tell what kind of document this is".into()));
    })
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Format(format!("{what} must be an object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Format(format!("missing key {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Format(format!("{what} must be an array")))
}

fn count(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Format(format!("{what} must be a non-negative integer")))
}

fn ring_of(obj: &Map<String, Value>) -> Result<Ring> {
    field(obj, "ring")?
        .as_str()
        .ok_or_else(|| Error::Format("ring must be a string".into()))?
        .parse()
}

fn ring_or(obj: &Map<String, Value>, default: Option<Ring>) -> Result<Ring> {
    match (obj.contains_key("ring"), default) {
        (false, Some(r)) => Ok(r),
        _ => ring_of(obj),
    }
}

fn scalar(v: &Value, ring: Ring) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse(ring, s),
        Value::Number(n) if n.is_i64() || n.is_u64() => Scalar::parse(ring, &n.to_string()),
        other => Err(Error::Format(format!("{other} is not a scalar"))),
    }
}

fn scalars(v: &Value, ring: Ring) -> Result<Vec<Scalar>> {
    array(v, "scalar list")?.iter().map(|x| scalar(x, ring)).collect()
}

fn text(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

fn vector_to(v: &SparseVector) -> Value {
    if 2 * v.nnz() < v.len() {
        json!({
            "len": v.len(),
            "nz": v.nonzeros().iter().map(|(i, x)| json!([i, x.to_string()])).collect::<Vec<_>>(),
        })
    } else {
        Value::Array(v.to_dense().iter().map(text).collect())
    }
}

fn vector_from(v: &Value, ring: Ring) -> Result<SparseVector> {
    match v {
        Value::Array(_) => SparseVector::from_dense(ring, scalars(v, ring)?),
        Value::Object(obj) => {
            let len = count(field(obj, "len")?, "len")?;
            let nz = array(field(obj, "nz")?, "nz")?
                .iter()
                .map(|pair| match pair.as_array().map(Vec::as_slice) {
                    Some([i, x]) => Ok((count(i, "position")?, scalar(x, ring)?)),
                    _ => Err(Error::Format("sparse entries are [index, value]".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some((i, _)) = nz.iter().find(|(i, _)| *i >= len) {
                return Err(Error::Dimension(format!("position {i} in a vector of length {len}")));
            }
            SparseVector::from_entries(ring, len, nz)
        }
        other => Err(Error::Format(format!("{other} is not a vector"))),
    }
}

pub fn matrix_to(m: &DenseMatrix) -> Value {
    json!({
        "ring": m.ring().to_string(),
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": (0..m.rows()).map(|i| m.row(i).iter().map(text).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn matrix_from(v: &Value) -> Result<DenseMatrix> {
    let obj = object(v, "matrix")?;
    let ring = ring_of(obj)?;
    let rows = array(field(obj, "entries")?, "entries")?
        .iter()
        .map(|r| scalars(r, ring))
        .collect::<Result<Vec<_>>>()?;
    let m = DenseMatrix::from_rows(ring, rows)?;
    let declared = (
        obj.get("rows").map(|x| count(x, "rows")).transpose()?,
        obj.get("cols").map(|x| count(x, "cols")).transpose()?,
    );
    if declared.0.is_some_and(|r| r != m.rows()) || declared.1.is_some_and(|c| c != m.cols()) {
        return Err(Error::Dimension("matrix size disagrees with its entries".into()));
    }
    Ok(m)
}

fn polysystem_to(f: &PolySystem) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("ring".into(), json!(f.ring().to_string()));
    obj.insert("num_vars".into(), json!(f.num_vars()));
    obj.insert(
        "polynomials".into(),
        json!(f.polynomials().iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    obj
}

fn polysystem_from(obj: &Map<String, Value>) -> Result<PolySystem> {
    let ring = ring_of(obj)?;
    let n = count(field(obj, "num_vars")?, "num_vars")?;
    let polys = array(field(obj, "polynomials")?, "polynomials")?
        .iter()
        .map(|p| {
            let s = p
                .as_str()
                .ok_or_else(|| Error::Format("polynomials are strings".into()))?;
            parse_polynomial(s, n, ring)
        })
        .collect::<Result<Vec<_>>>()?;
    PolySystem::new(ring, n, polys)
}

fn embedded_system(obj: &Map<String, Value>) -> Result<Option<PolySystem>> {
    match obj.get("system") {
        None | Some(Value::Null) => Ok(None),
        Some(v) => polysystem_from(object(v, "system")?).map(Some),
    }
}

fn put_system(obj: &mut Map<String, Value>, system: &Option<PolySystem>) {
    if let Some(f) = system {
        obj.insert("system".into(), Value::Object(polysystem_to(f)));
    }
}

fn completion_to(c: &CompletionInstance) -> Map<String, Value> {
    let m = &c.matrix;
    let mut obj = Map::new();
    obj.insert("ring".into(), json!(m.ring().to_string()));
    obj.insert("labels".into(), json!(c.labels));
    obj.insert(
        "entries".into(),
        Value::Array(
            (0..m.rows())
                .map(|i| {
                    Value::Array((0..m.cols()).map(|j| m.get(i, j).map_or(Value::Null, text)).collect())
                })
                .collect(),
        ),
    );
    obj.insert("stars".into(), json!(m.stars().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>()));
    put_system(&mut obj, &c.system);
    obj
}

fn completion_from(obj: &Map<String, Value>) -> Result<CompletionInstance> {
    let ring = ring_of(obj)?;
    let rows = array(field(obj, "entries")?, "entries")?;
    let cols = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    let mut entries = Vec::new();
    for r in rows {
        let r = array(r, "row")?;
        if r.len() != cols {
            return Err(Error::Dimension("ragged rows".into()));
        }
        for e in r {
            entries.push(if e.is_null() { None } else { Some(scalar(e, ring)?) });
        }
    }
    let matrix = IncompleteMatrix::new(ring, rows.len(), cols, entries)?;
    if let Some(stars) = obj.get("stars") {
        let listed = array(stars, "stars")?
            .iter()
            .map(|s| match s.as_array().map(Vec::as_slice) {
                Some([i, j]) => Ok((count(i, "star row")?, count(j, "star column")?)),
                _ => Err(Error::Format("stars are [row, column]".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        if listed != matrix.stars() {
            return Err(Error::Format("star list disagrees with the null entries".into()));
        }
    }
    let labels = match obj.get("labels") {
        None => Vec::new(),
        Some(v) => serde_json::from_value(v.clone())?,
    };
    Ok(CompletionInstance {
        system: embedded_system(obj)?,
        labels,
        matrix,
    })
}

fn tensor_entries_to(t: &Tensor3) -> Value {
    Value::Array(
        t.nonzeros()
            .map(|(&[i, j, k], v)| json!([i, j, k, v.to_string()]))
            .collect(),
    )
}

fn index_entries(v: &Value, ring: Ring) -> Result<Vec<([usize; 3], Scalar)>> {
    array(v, "entries")?
        .iter()
        .map(|e| match e.as_array().map(Vec::as_slice) {
            Some([i, j, k, x]) => Ok((
                [count(i, "index")?, count(j, "index")?, count(k, "index")?],
                scalar(x, ring)?,
            )),
            _ => Err(Error::Format("tensor entries are [i, j, k, value]".into())),
        })
        .collect()
}

pub fn tensor_to(t: &Tensor3) -> Value {
    json!({
        "ring": t.ring().to_string(),
        "dims": t.dims(),
        "entries": tensor_entries_to(t),
    })
}

fn tensor_from(obj: &Map<String, Value>) -> Result<Tensor3> {
    let ring = ring_of(obj)?;
    let dims: [usize; 3] = serde_json::from_value(field(obj, "dims")?.clone())
        .map_err(|_| Error::Format("dims must be three counts".into()))?;
    Tensor3::from_entries(ring, dims, index_entries(field(obj, "entries")?, ring)?)
}

fn tensor_instance_to(t: &TensorInstance) -> Map<String, Value> {
    let mut obj = match tensor_to(&t.tensor) {
        Value::Object(o) => o,
        _ => unreachable!(),
    };
    obj.insert("tau".into(), json!(t.tau));
    if let Some(r) = t.target_rank {
        obj.insert("target_rank".into(), json!(r));
    }
    put_system(&mut obj, &t.system);
    obj
}

fn tensor_instance_from(obj: &Map<String, Value>) -> Result<TensorInstance> {
    let tensor = tensor_from(obj)?;
    Ok(TensorInstance {
        system: embedded_system(obj)?,
        tau: obj.get("tau").map(|v| count(v, "tau")).transpose()?.unwrap_or(0),
        target_rank: obj.get("target_rank").map(|v| count(v, "target_rank")).transpose()?,
        tensor,
    })
}

pub fn sym_tensor_to(t: &SymTensor) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("ring".into(), json!(t.ring().to_string()));
    obj.insert("names".into(), json!(t.names()));
    obj.insert(
        "entries".into(),
        Value::Array(
            t.nonzeros()
                .map(|(&[i, j, k], v)| json!([i, j, k, v.to_string()]))
                .collect(),
        ),
    );
    obj
}

fn symmetric_to(s: &SymmetricInstance) -> Map<String, Value> {
    let mut obj = sym_tensor_to(&s.tensor);
    obj.insert("n".into(), json!(s.n));
    if let Some(r) = s.target_rank {
        obj.insert("target_rank".into(), json!(r));
    }
    put_system(&mut obj, &s.system);
    obj
}

fn symmetric_from(obj: &Map<String, Value>) -> Result<SymmetricInstance> {
    let ring = ring_of(obj)?;
    let names: Vec<String> = serde_json::from_value(field(obj, "names")?.clone())
        .map_err(|_| Error::Format("names must be strings".into()))?;
    let tensor = SymTensor::from_entries(ring, names, index_entries(field(obj, "entries")?, ring)?)?;
    Ok(SymmetricInstance {
        system: embedded_system(obj)?,
        n: count(field(obj, "n")?, "n")?,
        tensor,
        target_rank: obj.get("target_rank").map(|v| count(v, "target_rank")).transpose()?,
    })
}

fn completion_witness_to(w: &CompletionWitnessFile) -> Map<String, Value> {
    let mut obj = Map::new();
    obj.insert("ring".into(), json!(w.completion.ring().to_string()));
    obj.insert("assignment".into(), Value::Array(w.assignment.values().iter().map(text).collect()));
    obj.insert("completion".into(), matrix_to(&w.completion));
    if let Some(f) = &w.factor {
        obj.insert("factor".into(), matrix_to(f));
    }
    obj
}

fn completion_witness_from(obj: &Map<String, Value>) -> Result<CompletionWitnessFile> {
    let ring = ring_of(obj)?;
    Ok(CompletionWitnessFile {
        assignment: Assignment::new(scalars(field(obj, "assignment")?, ring)?)?,
        completion: matrix_from(field(obj, "completion")?)?,
        factor: obj.get("factor").map(matrix_from).transpose()?,
    })
}

fn decomposition_to(d: &Decomposition) -> Map<String, Value> {
    let mut obj = Map::new();
    if let Some(t) = d.terms.first() {
        obj.insert("ring".into(), json!(t.ring().to_string()));
    }
    obj.insert(
        "terms".into(),
        Value::Array(
            d.terms
                .iter()
                .map(|t| json!({"a": vector_to(&t.a), "b": vector_to(&t.b), "c": vector_to(&t.c)}))
                .collect(),
        ),
    );
    obj
}

/// Reads a decomposition; `ring` is used when the file names none.
pub fn decomposition_from(obj: &Map<String, Value>, ring: Option<Ring>) -> Result<Decomposition> {
    let terms = array(field(obj, "terms")?, "terms")?;
    if terms.is_empty() {
        return Ok(Decomposition::default());
    }
    let ring = ring_or(obj, ring)?;
    let terms = terms
        .iter()
        .map(|t| {
            let t = object(t, "term")?;
            Rank1Term::new(
                vector_from(field(t, "a")?, ring)?,
                vector_from(field(t, "b")?, ring)?,
                vector_from(field(t, "c")?, ring)?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Decomposition::new(terms)
}

fn sym_decomposition_to(d: &SymDecomposition) -> Map<String, Value> {
    let mut obj = Map::new();
    if let Some(t) = d.terms.first() {
        obj.insert("ring".into(), json!(t.ring().to_string()));
    }
    obj.insert(
        "terms".into(),
        Value::Array(
            d.terms
                .iter()
                .map(|t| json!({"s": t.s.to_string(), "v": vector_to(&t.v)}))
                .collect(),
        ),
    );
    obj
}

/// Reads a symmetric decomposition; `ring` is used when the file names none.
pub fn sym_decomposition_from(obj: &Map<String, Value>, ring: Option<Ring>) -> Result<SymDecomposition> {
    let terms = array(field(obj, "terms")?, "terms")?;
    if terms.is_empty() {
        return Ok(SymDecomposition::default());
    }
    let ring = ring_or(obj, ring)?;
    let terms = terms
        .iter()
        .map(|t| {
            let t = object(t, "term")?;
            SymTerm::new(scalar(field(t, "s")?, ring)?, vector_from(field(t, "v")?, ring)?)
        })
        .collect::<Result<Vec<_>>>()?;
    SymDecomposition::new(terms)
}
