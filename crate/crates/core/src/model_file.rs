//! JSON model files.
//!
//! ```json
//! {
//!   "dimension": 6,
//!   "gram": "split(3,3)",
//!   "terms": [[4, 5, 6, "1"]],
//!   "structure": { "epsilon": 1, "preset": "split-para(3)" },
//!   "lattice_scale": "1"
//! }
//! ```
//!
//! Indices are 1-based. `gram` is a preset (`split(k,l)`, `diag(k,l)`) or a
//! matrix of rational strings; `structure` takes a preset (`split-para(m)`,
//! `standard-para-C(m)`, `complex-block(k)`) or a `matrix`. Rationals are
//! strings `"p"` or `"p/q"` (plain JSON integers are accepted too).

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactlin::{rational, Matrix, Rational};
use crate::multilinear::{ScalarProduct, ThreeVector};
use crate::structures::{make_structure, presets, CompatibleStructure, Sign};

/// Default cap on the dimension accepted from files.
pub const DEFAULT_MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GramSpec {
    Split(usize, usize),
    Diagonal(usize, usize),
    Explicit(Matrix),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureSpec {
    SplitPara(usize),
    StandardParaC(usize),
    ComplexBlock(usize),
    Explicit(Matrix),
}

/// A parsed and validated model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub dimension: usize,
    pub gram_spec: GramSpec,
    pub g: ScalarProduct,
    pub eta: ThreeVector,
    pub structure_spec: Option<(Sign, StructureSpec)>,
    pub structure: Option<CompatibleStructure>,
    pub lattice_scale: Option<Rational>,
}

fn err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        message: message.into(),
    }
}

fn parse_rational_value(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse_rational(s).map_err(|m| err(path, m)),
        Value::Number(n) => n
            .as_i64()
            .map(rational::int)
            .ok_or_else(|| err(path, "numbers must be integers; write fractions as \"p/q\"")),
        _ => Err(err(path, "expected a rational string")),
    }
}

fn parse_usize(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| err(path, "expected a non-negative integer"))
}

/// Parses `name(a,b,...)` into its arguments.
fn parse_call<'a>(text: &'a str, name: &str) -> Option<Vec<&'a str>> {
    let rest = text.trim().strip_prefix(name)?.trim_start();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).collect())
}

fn call_args(text: &str, name: &str, arity: usize, path: &str) -> Result<Option<Vec<usize>>> {
    match parse_call(text, name) {
        None => Ok(None),
        Some(args) if args.len() == arity => args
            .iter()
            .map(|a| a.parse::<usize>().map_err(|_| err(path, format!("bad argument {a:?} in {text:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(Some),
        Some(args) => Err(err(path, format!("{name} takes {arity} arguments, got {}", args.len()))),
    }
}

fn parse_matrix(v: &Value, n: usize, path: &str) -> Result<Matrix> {
    let rows = v.as_array().ok_or_else(|| err(path, "expected a matrix (array of rows)"))?;
    if rows.len() != n {
        return Err(err(path, format!("expected {n} rows, got {}", rows.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let row = row.as_array().ok_or_else(|| err(&rp, "expected a row array"))?;
        if row.len() != n {
            return Err(err(&rp, format!("expected {n} entries, got {}", row.len())));
        }
        out.push(
            row.iter()
                .enumerate()
                .map(|(j, x)| parse_rational_value(x, &format!("{rp}[{j}]")))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(Matrix::from_rows(out))
}

fn parse_gram(v: &Value, n: usize) -> Result<(GramSpec, ScalarProduct)> {
    let path = "gram";
    let wrap = |e: Error| match e {
        Error::Parse { .. } => e,
        other => err(path, other.to_string()),
    };
    let spec = match v {
        Value::String(s) => {
            if let Some(a) = call_args(s, "split", 2, path)? {
                GramSpec::Split(a[0], a[1])
            } else if let Some(a) = call_args(s, "diag", 2, path)? {
                GramSpec::Diagonal(a[0], a[1])
            } else {
                return Err(err(path, format!("unknown preset {s:?}")));
            }
        }
        _ => GramSpec::Explicit(parse_matrix(v, n, path)?),
    };
    let g = match &spec {
        GramSpec::Split(k, l) | GramSpec::Diagonal(k, l) if k + l != n => {
            return Err(err(path, format!("preset has dimension {} but the model has {n}", k + l)))
        }
        GramSpec::Split(k, l) => ScalarProduct::split(*k, *l),
        GramSpec::Diagonal(k, l) => ScalarProduct::diagonal(*k, *l),
        GramSpec::Explicit(m) => ScalarProduct::new(m.clone()),
    }
    .map_err(wrap)?;
    Ok((spec, g))
}

fn parse_terms(v: &Value, n: usize) -> Result<ThreeVector> {
    let terms = v.as_array().ok_or_else(|| err("terms", "expected an array of [i, j, k, coefficient]"))?;
    let mut eta = ThreeVector::zero(n);
    let mut seen = std::collections::BTreeMap::new();
    for (t, term) in terms.iter().enumerate() {
        let path = format!("terms[{t}]");
        let parts = term
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| err(&path, "expected [i, j, k, coefficient]"))?;
        let mut idx = [0usize; 3];
        for a in 0..3 {
            let ip = format!("{path}[{a}]");
            let i = parse_usize(&parts[a], &ip)?;
            if i == 0 || i > n {
                return Err(err(&ip, format!("index {i} out of range 1..={n}")));
            }
            idx[a] = i - 1;
        }
        let c = parse_rational_value(&parts[3], &format!("{path}[3]"))?;
        let mut key = idx;
        key.sort_unstable();
        if key[0] == key[1] || key[1] == key[2] {
            return Err(err(&path, format!("repeated index {}", key[1] + 1)));
        }
        if let Some(prev) = seen.insert(key, t) {
            return Err(err(&path, format!("duplicate of terms[{prev}]")));
        }
        eta.add_term(idx[0], idx[1], idx[2], c).map_err(|e| err(&path, e.to_string()))?;
    }
    Ok(eta)
}

fn parse_structure(v: &Value, n: usize, g: &ScalarProduct) -> Result<(Sign, StructureSpec, CompatibleStructure)> {
    let obj = v.as_object().ok_or_else(|| err("structure", "expected an object"))?;
    let eps_v = obj.get("epsilon").ok_or_else(|| err("structure.epsilon", "missing"))?;
    let eps = eps_v
        .as_i64()
        .and_then(Sign::from_i64)
        .ok_or_else(|| err("structure.epsilon", "expected 1 or -1"))?;
    let spec = match (obj.get("preset"), obj.get("matrix")) {
        (Some(_), Some(_)) => return Err(err("structure", "give either preset or matrix, not both")),
        (None, None) => return Err(err("structure", "missing preset or matrix")),
        (Some(p), None) => {
            let path = "structure.preset";
            let s = p.as_str().ok_or_else(|| err(path, "expected a string"))?;
            if let Some(a) = call_args(s, "split-para", 1, path)? {
                StructureSpec::SplitPara(a[0])
            } else if let Some(a) = call_args(s, "standard-para-C", 1, path)? {
                StructureSpec::StandardParaC(a[0])
            } else if let Some(a) = call_args(s, "complex-block", 1, path)? {
                StructureSpec::ComplexBlock(a[0])
            } else {
                return Err(err(path, format!("unknown preset {s:?}")));
            }
        }
        (None, Some(m)) => StructureSpec::Explicit(parse_matrix(m, n, "structure.matrix")?),
    };
    let structure = build_structure(&spec, eps, n, g).map_err(|e| match e {
        Error::Parse { .. } => e,
        other => err("structure", other.to_string()),
    })?;
    Ok((eps, spec, structure))
}

fn build_structure(spec: &StructureSpec, eps: Sign, n: usize, g: &ScalarProduct) -> Result<CompatibleStructure> {
    let (dim, preset_eps) = match spec {
        StructureSpec::SplitPara(m) | StructureSpec::StandardParaC(m) => (2 * m, Some(Sign::Plus)),
        StructureSpec::ComplexBlock(k) => (2 * k, Some(Sign::Minus)),
        StructureSpec::Explicit(_) => (n, None),
    };
    if dim != n {
        return Err(err("structure", format!("preset has dimension {dim} but the model has {n}")));
    }
    if let Some(pe) = preset_eps {
        if pe != eps {
            return Err(err("structure.epsilon", format!("preset requires epsilon = {pe}")));
        }
    }
    match spec {
        StructureSpec::SplitPara(m) => presets::split_para(*m, g),
        StructureSpec::StandardParaC(m) => presets::standard_para_c(*m, g),
        StructureSpec::ComplexBlock(k) => presets::complex_block(*k, g),
        StructureSpec::Explicit(j) => make_structure(j.clone(), g, eps),
    }
}

impl ModelFile {
    /// Parses and validates `text`, rejecting dimensions above `max_dim`.
    pub fn parse(text: &str, max_dim: usize) -> Result<Self> {
        let root: Value = serde_json::from_str(text)
            .map_err(|e| err(&format!("line {} column {}", e.line(), e.column()), e.to_string()))?;
        let obj = root.as_object().ok_or_else(|| err("$", "expected a JSON object"))?;
        for key in obj.keys() {
            if !["dimension", "gram", "terms", "structure", "lattice_scale"].contains(&key.as_str()) {
                return Err(err(key, "unknown field"));
            }
        }
        let n = parse_usize(obj.get("dimension").ok_or_else(|| err("dimension", "missing"))?, "dimension")?;
        if n == 0 || n > max_dim {
            return Err(err("dimension", format!("dimension {n} outside 1..={max_dim}")));
        }
        let (gram_spec, g) = parse_gram(obj.get("gram").ok_or_else(|| err("gram", "missing"))?, n)?;
        let eta = match obj.get("terms") {
            Some(v) => parse_terms(v, n)?,
            None => return Err(err("terms", "missing")),
        };
        let (structure_spec, structure) = match obj.get("structure") {
            None | Some(Value::Null) => (None, None),
            Some(v) => {
                let (eps, spec, s) = parse_structure(v, n, &g)?;
                (Some((eps, spec)), Some(s))
            }
        };
        let lattice_scale = match obj.get("lattice_scale") {
            None | Some(Value::Null) => None,
            Some(v) => {
                let s = parse_rational_value(v, "lattice_scale")?;
                if s <= rational::zero() {
                    return Err(err("lattice_scale", "must be positive"));
                }
                Some(s)
            }
        };
        Ok(ModelFile {
            dimension: n,
            gram_spec,
            g,
            eta,
            structure_spec,
            structure,
            lattice_scale,
        })
    }

    /// Assembles a model from already validated parts.
    pub fn from_parts(
        gram_spec: GramSpec,
        eta: ThreeVector,
        structure_spec: Option<(Sign, StructureSpec)>,
        lattice_scale: Option<Rational>,
    ) -> Result<Self> {
        let n = eta.dim();
        let g = match &gram_spec {
            GramSpec::Split(k, l) => ScalarProduct::split(*k, *l)?,
            GramSpec::Diagonal(k, l) => ScalarProduct::diagonal(*k, *l)?,
            GramSpec::Explicit(m) => ScalarProduct::new(m.clone())?,
        };
        if g.dim() != n {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: n });
        }
        let structure = match &structure_spec {
            Some((eps, spec)) => Some(build_structure(spec, *eps, n, &g)?),
            None => None,
        };
        Ok(ModelFile {
            dimension: n,
            gram_spec,
            g,
            eta,
            structure_spec,
            structure,
            lattice_scale,
        })
    }

    pub fn to_value(&self) -> Value {
        let matrix = |m: &Matrix| -> Value {
            Value::Array(
                (0..m.rows())
                    .map(|i| Value::Array((0..m.cols()).map(|j| json!(rational::to_string(&m[(i, j)]))).collect()))
                    .collect(),
            )
        };
        let mut obj = Map::new();
        obj.insert("dimension".into(), json!(self.dimension));
        obj.insert(
            "gram".into(),
            match &self.gram_spec {
                GramSpec::Split(k, l) => json!(format!("split({k},{l})")),
                GramSpec::Diagonal(k, l) => json!(format!("diag({k},{l})")),
                GramSpec::Explicit(m) => matrix(m),
            },
        );
        let terms: Vec<Value> = self
            .eta
            .terms()
            .map(|([i, j, k], c)| json!([i + 1, j + 1, k + 1, rational::to_string(c)]))
            .collect();
        obj.insert("terms".into(), Value::Array(terms));
        if let Some((eps, spec)) = &self.structure_spec {
            let mut s = Map::new();
            s.insert("epsilon".into(), json!(eps.as_i8()));
            match spec {
                StructureSpec::SplitPara(m) => s.insert("preset".into(), json!(format!("split-para({m})"))),
                StructureSpec::StandardParaC(m) => s.insert("preset".into(), json!(format!("standard-para-C({m})"))),
                StructureSpec::ComplexBlock(k) => s.insert("preset".into(), json!(format!("complex-block({k})"))),
                StructureSpec::Explicit(m) => s.insert("matrix".into(), matrix(m)),
            };
            obj.insert("structure".into(), Value::Object(s));
        }
        if let Some(s) = &self.lattice_scale {
            obj.insert("lattice_scale".into(), json!(rational::to_string(s)));
        }
        Value::Object(obj)
    }

    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values serialize")
    }
}
