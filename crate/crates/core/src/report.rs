//! Command dispatch and deterministic JSON reports.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exactlin::{rational, Matrix, Subspace, Vector};
use crate::flatgroup::{build_model, FlatGroupModel};
use crate::lattice::{centralizer_space, closure_witness, find_lattice, LatticeBasis};
use crate::model_file::ModelFile;
use crate::multilinear::{classify_cone, ConeReport, ScalarProduct, ThreeVector};
use crate::random::{gen_random, Sample};
use crate::structures::{classify_regular, derham_split, make_field, CompatibleStructure, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Check,
    Construct,
    Classify,
    VerifyNpk,
    Derham,
    Lattice,
    Centralizer,
    Mul { x: Vector, y: Vector },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Construct => "construct",
            Command::Classify => "classify",
            Command::VerifyNpk => "verify-npk",
            Command::Derham => "derham",
            Command::Lattice => "lattice",
            Command::Centralizer => "centralizer",
            Command::Mul { .. } => "mul",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub signature: (usize, usize),
    pub type_pq: (usize, usize),
    pub epsilon: Sign,
    pub count: usize,
    pub seed: u64,
}

/// Outcome of a command: a JSON document plus the overall verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("values serialize")
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

pub fn rational_json(r: &rational::Rational) -> Value {
    json!(rational::to_string(r))
}

pub fn vector_json(v: &Vector) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.row_vectors().iter().map(vector_json).collect())
}

pub fn subspace_json(s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis_vectors().iter().map(vector_json).collect::<Vec<_>>(),
    })
}

fn pair_json(p: Option<(usize, usize)>) -> Value {
    p.map_or(Value::Null, |(i, j)| json!([i + 1, j + 1]))
}

pub fn error_json(e: &Error) -> Value {
    let witness = match e {
        Error::NotInCone { pair } | Error::LatticeNotClosed { pair } => json!([pair.0, pair.1]),
        Error::NotAnticommuting { index } | Error::RepeatedIndex { index } => json!(index),
        Error::Inconsistency { check, .. } => json!(check),
        _ => Value::Null,
    };
    json!({ "message": e.to_string(), "witness": witness })
}

fn cone_json(r: &ConeReport) -> Value {
    json!({
        "support": subspace_json(&r.support),
        "support_dim": r.support_dim,
        "isotropic": r.isotropic,
        "composition_zero": r.composition_zero,
        "composition_witness": pair_json(r.composition_witness),
        "in_cone": r.in_cone,
        "anticommutes": r.anticommutes,
        "anticommute_witness": r.anticommute_witness.map(|i| i + 1),
        "type_pq": r.type_pq.map(|(p, q)| json!([p, q])),
        "pure_plus": r.pure_plus,
        "pure_minus": r.pure_minus,
        "support_invariant": r.support_invariant,
        "regular": r.regular,
        "strict": r.strict,
    })
}

/// A report section: its JSON and whether its checks passed.
type Section = (Value, bool);

fn section(result: Result<Section>) -> Section {
    result.unwrap_or_else(|e| (json!({ "error": error_json(&e) }), false))
}

fn brackets_json(m: &FlatGroupModel) -> Value {
    let n = m.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = m.brackets().basis_bracket(i, j);
            if !v.is_zero() {
                out.push(json!({ "i": i + 1, "j": j + 1, "bracket": vector_json(v) }));
            }
        }
    }
    Value::Array(out)
}

fn algebra_section(eta: &ThreeVector, g: &ScalarProduct) -> Result<(Section, FlatGroupModel)> {
    let m = build_model(eta, g)?;
    let r = m.algebra_report();
    let ideal = m.translation_ideal();
    let pass = r.antisymmetric && r.jacobi && r.nilpotency_class.is_some() && r.biinvariant && r.flat;
    let v = json!({
        "antisymmetric": r.antisymmetric,
        "jacobi": r.jacobi,
        "nilpotency_class": r.nilpotency_class,
        "biinvariant": r.biinvariant,
        "flat": r.flat,
        "translation_ideal": subspace_json(&ideal),
    });
    Ok(((v, pass), m))
}

fn npk_section(eta: &ThreeVector, g: &ScalarProduct, s: &CompatibleStructure) -> Result<Section> {
    let field = make_field(eta, s, g)?;
    let r = field.npk_report(g)?;
    let v = json!({
        "nearly": r.nearly,
        "nabla_j_zero": r.nabla_j_zero,
        "nabla_g_zero": r.nabla_g_zero,
        "torsion_minus_2eta": r.torsion_minus_2eta,
        "torsion_skew": r.torsion_skew,
        "eta_recovered": r.eta_recovered,
        "j_squared": r.j_squared,
        "j_skew": r.j_skew,
        "flat_identity": r.flat_identity,
        "eta_parallel": r.eta_parallel,
        "strict": r.strict,
    });
    Ok((v, r.all_pass()))
}

fn regular_section(eta: &ThreeVector, g: &ScalarProduct, s: &CompatibleStructure) -> Result<Section> {
    let r = classify_regular(eta, g, s)?;
    Ok((
        json!({ "type_pq": [r.type_pq.0, r.type_pq.1], "regular": r.regular, "s": r.s }),
        true,
    ))
}

fn derham_section(eta: &ThreeVector, g: &ScalarProduct, s: &CompatibleStructure) -> Result<Section> {
    let d = derham_split(eta, g, s)?;
    Ok((
        json!({
            "l": subspace_json(&d.l),
            "l_prime": subspace_json(&d.l_prime),
            "v0": subspace_json(&d.v0),
        }),
        true,
    ))
}

fn lattice_for(model: &ModelFile) -> Result<LatticeBasis> {
    match &model.lattice_scale {
        Some(s) => LatticeBasis::scaled(model.dimension, s.clone()),
        None => find_lattice(&model.eta, &model.g),
    }
}

fn lattice_section(model: &ModelFile, m: &FlatGroupModel) -> Result<Section> {
    let lat = lattice_for(model)?;
    let witness = closure_witness(m, &lat);
    let r = m.algebra_report();
    Ok((
        json!({
            "scale": rational_json(lat.scale()),
            "closed": witness.is_none(),
            "closure_witness": witness.map(|(i, j)| json!([i, j])),
            "quotient": {
                "compact": true,
                "flat": r.flat,
                "homogeneous": r.biinvariant,
            },
        }),
        witness.is_none(),
    ))
}

fn centralizer_section(model: &ModelFile, m: &FlatGroupModel) -> Result<Section> {
    let lat = lattice_for(model)?;
    let sol = centralizer_space(m, &lat)?;
    let n = model.dimension;
    let family: Vec<Value> = (0..n)
        .map(|b| {
            let v = Vector::basis(n, b);
            let a = sol.member(&v);
            json!({ "v": vector_json(&v), "linear": matrix_json(&a.linear) })
        })
        .collect();
    Ok((
        json!({
            "dimension": sol.dim(),
            "linear_part": "Id - eta_v",
            "basis_members": family,
        }),
        sol.dim() == n,
    ))
}

fn need_structure(model: &ModelFile) -> Result<&CompatibleStructure> {
    model
        .structure
        .as_ref()
        .ok_or_else(|| Error::InvalidStructure("model file has no structure".into()))
}

/// Runs one command on a parsed model.
pub fn run(command: &Command, model: &ModelFile) -> Result<Report> {
    let eta = &model.eta;
    let g = &model.g;
    let mut doc = Map::new();
    doc.insert("command".into(), json!(command.name()));
    doc.insert("input".into(), model.to_value());
    let mut pass = true;
    let mut add = |doc: &mut Map<String, Value>, key: &str, (v, ok): Section| {
        doc.insert(key.into(), v);
        pass &= ok;
    };
    match command {
        Command::Classify => {
            let cone = classify_cone(eta, g, model.structure.as_ref())?;
            let ok = cone.in_cone && cone.anticommutes != Some(false);
            add(&mut doc, "cone", (cone_json(&cone), ok));
            if let Some(s) = model.structure.as_ref().filter(|s| s.epsilon() == Sign::Plus) {
                if ok {
                    add(&mut doc, "regular", section(regular_section(eta, g, s)));
                }
            }
        }
        Command::Construct => {
            let m = build_model(eta, g);
            match m {
                Ok(m) => {
                    let gens: Vec<Value> = (0..model.dimension)
                        .map(|i| {
                            let a = m.affine_rep(&Vector::basis(model.dimension, i));
                            json!({ "x": i + 1, "linear": matrix_json(&a.linear), "translation": vector_json(&a.translation) })
                        })
                        .collect();
                    add(&mut doc, "brackets", (brackets_json(&m), true));
                    add(&mut doc, "affine_generators", (Value::Array(gens), true));
                }
                Err(e) => add(&mut doc, "brackets", (json!({ "error": error_json(&e) }), false)),
            }
        }
        Command::VerifyNpk => {
            let s = need_structure(model)?;
            add(&mut doc, "npk", section(npk_section(eta, g, s)));
        }
        Command::Derham => {
            let s = need_structure(model)?;
            add(&mut doc, "derham", section(derham_section(eta, g, s)));
        }
        Command::Lattice | Command::Centralizer => match build_model(eta, g) {
            Ok(m) => {
                add(&mut doc, "lattice", section(lattice_section(model, &m)));
                if *command == Command::Centralizer {
                    add(&mut doc, "centralizer", section(centralizer_section(model, &m)));
                }
            }
            Err(e) => add(&mut doc, "lattice", (json!({ "error": error_json(&e) }), false)),
        },
        Command::Mul { x, y } => {
            let n = model.dimension;
            for v in [x, y] {
                if v.dim() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
                }
            }
            match build_model(eta, g) {
                Ok(m) => {
                    let xy = m.group_mul(x, y);
                    let oracle = m.affine_rep(x).compose(&m.affine_rep(y)) == m.affine_rep(&xy);
                    add(
                        &mut doc,
                        "product",
                        (json!({ "x": vector_json(x), "y": vector_json(y), "xy": vector_json(&xy), "affine_agrees": oracle }), oracle),
                    );
                }
                Err(e) => add(&mut doc, "product", (json!({ "error": error_json(&e) }), false)),
            }
        }
        Command::Check => {
            let cone = classify_cone(eta, g, model.structure.as_ref())?;
            let ok = cone.in_cone && cone.anticommutes != Some(false);
            add(&mut doc, "cone", (cone_json(&cone), ok));
            match algebra_section(eta, g) {
                Ok((sec, m)) => {
                    add(&mut doc, "algebra", sec);
                    add(&mut doc, "brackets", (brackets_json(&m), true));
                    add(&mut doc, "lattice", section(lattice_section(model, &m)));
                    add(&mut doc, "centralizer", section(centralizer_section(model, &m)));
                }
                Err(e) => add(&mut doc, "algebra", (json!({ "error": error_json(&e) }), false)),
            }
            if let Some(s) = &model.structure {
                add(&mut doc, "npk", section(npk_section(eta, g, s)));
                add(&mut doc, "derham", section(derham_section(eta, g, s)));
                if s.epsilon() == Sign::Plus {
                    add(&mut doc, "regular", section(regular_section(eta, g, s)));
                }
            }
        }
    }
    doc.insert("pass".into(), json!(pass));
    Ok(Report {
        value: Value::Object(doc),
        pass,
    })
}

fn suite_entry(seed: u64, cfg: &SuiteConfig) -> (Value, bool) {
    let sample: Sample = match gen_random(seed, cfg.signature, cfg.type_pq, cfg.epsilon) {
        Ok(s) => s,
        Err(e) => return (json!({ "seed": seed, "error": error_json(&e) }), false),
    };
    let s = sample.structure.as_ref().expect("structured sample");
    let mut entry = Map::new();
    let mut pass = true;
    entry.insert("seed".into(), json!(seed));
    entry.insert(
        "terms".into(),
        Value::Array(
            sample
                .eta
                .terms()
                .map(|([i, j, k], c)| json!([i + 1, j + 1, k + 1, rational::to_string(c)]))
                .collect(),
        ),
    );
    let mut add = |key: &str, (v, ok): Section| {
        entry.insert(key.into(), v);
        pass &= ok;
    };
    match classify_cone(&sample.eta, &sample.g, Some(s)) {
        Ok(c) => {
            let ok = c.in_cone && c.anticommutes == Some(true);
            add(
                "cone",
                (
                    json!({ "in_cone": c.in_cone, "anticommutes": c.anticommutes, "support_dim": c.support_dim, "type_pq": c.type_pq.map(|(p, q)| json!([p, q])) }),
                    ok,
                ),
            );
        }
        Err(e) => add("cone", (json!({ "error": error_json(&e) }), false)),
    }
    match algebra_section(&sample.eta, &sample.g) {
        Ok((sec, _)) => add("algebra", sec),
        Err(e) => add("algebra", (json!({ "error": error_json(&e) }), false)),
    }
    add("npk", section(npk_section(&sample.eta, &sample.g, s)));
    add("derham", section(derham_section(&sample.eta, &sample.g, s)));
    if s.epsilon() == Sign::Plus {
        add("regular", section(regular_section(&sample.eta, &sample.g, s)));
    }
    entry.insert("pass".into(), json!(pass));
    (Value::Object(entry), pass)
}

/// Runs `count` independent samples with seeds `seed, seed+1, ...`, in
/// parallel; entries are reported in seed order.
pub fn random_suite(cfg: &SuiteConfig) -> Report {
    let entries: Vec<(Value, bool)> = (0..cfg.count as u64)
        .into_par_iter()
        .map(|i| suite_entry(cfg.seed.wrapping_add(i), cfg))
        .collect();
    let passed = entries.iter().filter(|(_, ok)| *ok).count();
    let pass = passed == entries.len();
    let value = json!({
        "command": "random-suite",
        "signature": [cfg.signature.0, cfg.signature.1],
        "type_pq": [cfg.type_pq.0, cfg.type_pq.1],
        "epsilon": cfg.epsilon.as_i8(),
        "count": cfg.count,
        "seed": cfg.seed,
        "passed": passed,
        "samples": entries.into_iter().map(|(v, _)| v).collect::<Vec<_>>(),
        "pass": pass,
    });
    Report { value, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model_file::DEFAULT_MAX_DIM;

    fn example() -> ModelFile {
        ModelFile::parse(
            r#"{"dimension": 6, "gram": "split(3,3)", "terms": [[4,5,6,"1"]],
                "structure": {"epsilon": 1, "preset": "split-para(3)"}}"#,
            DEFAULT_MAX_DIM,
        )
        .unwrap()
    }

    #[test]
    fn check_example_passes() {
        let r = run(&Command::Check, &example()).unwrap();
        assert!(r.pass, "{}", r.to_json());
        assert_eq!(r.value["centralizer"]["dimension"], json!(6));
        assert_eq!(r.value["regular"]["type_pq"], json!([3, 0]));
    }

    #[test]
    fn mixed_type_fails_npk_with_witness() {
        let m = ModelFile::parse(
            r#"{"dimension": 6, "gram": "split(3,3)", "terms": [[1,2,6,"1"]],
                "structure": {"epsilon": 1, "preset": "split-para(3)"}}"#,
            DEFAULT_MAX_DIM,
        )
        .unwrap();
        let r = run(&Command::VerifyNpk, &m).unwrap();
        assert!(!r.pass);
        assert!(r.value["npk"]["error"]["witness"].is_number());
    }

    #[test]
    fn mul_example() {
        let x = Vector::basis(6, 0);
        let y = Vector::basis(6, 1);
        let r = run(&Command::Mul { x, y }, &example()).unwrap();
        assert!(r.pass);
        assert_eq!(r.value["product"]["xy"], json!(["1", "1", "0", "0", "0", "1"]));
    }

    #[test]
    fn suite_is_deterministic() {
        let cfg = SuiteConfig { signature: (3, 3), type_pq: (3, 0), epsilon: Sign::Plus, count: 4, seed: 7 };
        let a = random_suite(&cfg);
        assert!(a.pass, "{}", a.to_json());
        assert_eq!(a.to_json(), random_suite(&cfg).to_json());
    }
}
