//! The versioned JSON fixture corpus: worked examples shipped with the crate
//! and read back by `selftest` and the integration tests.
//!
//! Files live in `fixtures/` next to the manifest unless `QPMUT_FIXTURES`
//! points elsewhere. [`generate`] rebuilds every document from the catalog.

use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::json::{
    element_terms, morphism_from_json, morphism_to_json, parse_value, qp_from_json, qp_to_json, quiver_from_json,
    quiver_to_json, rep_from_json, rep_to_json,
};
use crate::path_algebra::Element;
use crate::qp::{mutate, Qp};
use crate::quiver::Quiver;
use crate::rational::q;
use crate::representation::{RepMorphism, Representation};

pub const FIXTURE_VERSION: u64 = 1;
pub const ENV_VAR: &str = "QPMUT_FIXTURES";

pub fn fixture_dir() -> PathBuf {
    match std::env::var_os(ENV_VAR) {
        Some(dir) => PathBuf::from(dir),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
    }
}

pub fn read(name: &str) -> Result<Value> {
    let path = fixture_dir().join(name);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::io(format!("cannot read fixture: {e}")).with_datum(path.display().to_string()))?;
    parse_value(&text).map_err(|e| e.with_datum(name.to_string()))
}

/// Checks the corpus version recorded in `index.json`.
pub fn check_version() -> Result<()> {
    let index = read("index.json")?;
    match index.get("version").and_then(Value::as_u64) {
        Some(FIXTURE_VERSION) => Ok(()),
        other => Err(Error::parse("unsupported fixture version").with_datum(format!("{other:?}"))),
    }
}

pub fn load_qp(name: &str, truncation: Option<usize>) -> Result<Qp> {
    qp_from_json(&read(name)?, truncation)
}

fn field<'a>(v: &'a Value, key: &str, file: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::parse(format!("fixture lacks \"{key}\"")).with_datum(file.to_string()))
}

fn str_field<'a>(v: &'a Value, key: &str, file: &str) -> Result<&'a str> {
    field(v, key, file)?
        .as_str()
        .ok_or_else(|| Error::parse(format!("\"{key}\" is not a string")).with_datum(file.to_string()))
}

/// A QP fixture together with named representations over it.
pub fn load_reps(name: &str) -> Result<(Qp, Vec<(String, Representation)>)> {
    let doc = read(name)?;
    let p = load_qp(str_field(&doc, "qp", name)?, None)?;
    let list = field(&doc, "representations", name)?
        .as_array()
        .ok_or_else(|| Error::parse("\"representations\" is not a list").with_datum(name.to_string()))?;
    let mut out = Vec::new();
    for item in list {
        let label = str_field(item, "name", name)?.to_string();
        out.push((label, rep_from_json(field(item, "rep", name)?, p.quiver())?));
    }
    Ok((p, out))
}

/// A morphism fixture: (QP, vertex to mutate at, morphism).
pub fn load_morphism(name: &str) -> Result<(Qp, usize, RepMorphism)> {
    let doc = read(name)?;
    let p = load_qp(str_field(&doc, "qp", name)?, None)?;
    let k = p.quiver().require_vertex(str_field(&doc, "at", name)?)?;
    let f = morphism_from_json(field(&doc, "morphism", name)?, p.quiver())?;
    Ok((p, k, f))
}

#[derive(Clone, Debug)]
pub struct CoxeterFixture {
    pub base: Quiver,
    pub word: Vec<String>,
    pub displayed: Arc<Quiver>,
    pub frozen: Vec<String>,
    /// The displayed stable potential, on the displayed quiver minus the frozen vertices.
    pub stable_potential: Element,
}

pub fn load_coxeter(name: &str, truncation: usize) -> Result<CoxeterFixture> {
    let doc = read(name)?;
    let base = quiver_from_json(field(&doc, "base", name)?)?;
    let strings = |key: &str| -> Result<Vec<String>> {
        field(&doc, key, name)?
            .as_array()
            .and_then(|xs| xs.iter().map(|x| x.as_str().map(str::to_string)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| Error::parse(format!("\"{key}\" is not a list of strings")).with_datum(name.to_string()))
    };
    let word = strings("word")?;
    let frozen = strings("frozen")?;
    let displayed = Arc::new(quiver_from_json(field(&doc, "displayed_quiver", name)?)?);
    let stable = Arc::new(displayed.full_subquiver(|v| !frozen.iter().any(|f| f == displayed.vertex_name(v))));
    let terms: Vec<crate::json::TermDoc> = serde_json::from_value(field(&doc, "displayed_stable_potential", name)?.clone())
        .map_err(|e| Error::parse(e.to_string()).with_datum(name.to_string()))?;
    let stable_potential = crate::json::element_from_terms(&stable, truncation, &terms)?;
    Ok(CoxeterFixture { base, word, displayed, frozen, stable_potential })
}

/// Every fixture document, keyed by file name, in a fixed order.
pub fn generate() -> Result<Vec<(&'static str, Value)>> {
    let n = crate::qp::DEFAULT_TRUNCATION;
    let a3 = catalog::a3(n)?;
    let tri = catalog::three_cycle(n)?;
    let mut docs: Vec<(&'static str, &'static str, Value)> = vec![
        ("a3.json", "qp", qp_to_json(&a3)),
        ("a3_mu2.json", "qp", qp_to_json(mutate(&a3, 1)?.reduced())),
        ("three_cycle.json", "qp", qp_to_json(&tri)),
        ("three_cycle_zero.json", "qp", qp_to_json(&catalog::three_cycle_zero(n)?)),
        ("reduction_example.json", "qp", qp_to_json(&catalog::reduction_example(8)?)),
        ("two_cycle.json", "qp", qp_to_json(&catalog::two_cycle(n)?)),
    ];

    let displayed = Arc::new(catalog::coxeter_displayed_quiver()?);
    let frozen = ["1_4", "3_3", "2_4"];
    let stable = Arc::new(displayed.full_subquiver(|v| !frozen.contains(&displayed.vertex_name(v))));
    let terms: Vec<(crate::rational::Q, &[&str])> = catalog::COXETER_DISPLAYED_W.iter().map(|&(c, p)| (q(c), p)).collect();
    let w = Element::from_terms(stable, n, &terms)?;
    docs.push((
        "coxeter_example.json",
        "coxeter",
        json!({
            "base": quiver_to_json(&catalog::coxeter_base()?),
            "word": catalog::COXETER_WORD,
            "frozen": frozen,
            "displayed_quiver": quiver_to_json(&displayed),
            "displayed_stable_potential": element_terms(&w),
        }),
    ));

    let reps: Vec<Value> = catalog::three_cycle_indecomposables(&tri)?
        .iter()
        .map(|(name, m)| json!({"name": name, "rep": rep_to_json(m)}))
        .collect();
    docs.push((
        "three_cycle_indecomposables.json",
        "representations",
        json!({"qp": "three_cycle.json", "representations": reps}),
    ));
    let f = catalog::defect_example(&tri)?;
    let example_reps = vec![
        json!({"name": "M", "rep": rep_to_json(f.source())}),
        json!({"name": "M'", "rep": rep_to_json(f.target())}),
    ];
    docs.push((
        "mutation_example.json",
        "representations",
        json!({"qp": "three_cycle.json", "at": "2", "representations": example_reps}),
    ));
    docs.push((
        "defect_morphism.json",
        "morphism",
        json!({"qp": "three_cycle.json", "at": "2", "morphism": morphism_to_json(&f)}),
    ));

    let listing: Vec<Value> = docs.iter().map(|(file, kind, _)| json!({"file": file, "kind": kind})).collect();
    let mut out = vec![("index.json", json!({"version": FIXTURE_VERSION, "fixtures": listing}))];
    out.extend(docs.into_iter().map(|(file, _, v)| (file, v)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json::render;

    /// Set QPMUT_REGENERATE_FIXTURES=1 to rewrite the shipped files.
    #[test]
    fn shipped_fixtures_match_the_catalog() {
        let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
        let regenerate = std::env::var_os("QPMUT_REGENERATE_FIXTURES").is_some();
        for (name, value) in generate().unwrap() {
            let text = render(&value, true);
            let path = dir.join(name);
            if regenerate {
                std::fs::create_dir_all(&dir).unwrap();
                std::fs::write(&path, &text).unwrap();
            }
            let shipped = std::fs::read_to_string(&path).unwrap_or_default();
            assert_eq!(shipped, text, "{name} is stale; regenerate with QPMUT_REGENERATE_FIXTURES=1");
        }
    }

    #[test]
    fn loaders_read_the_corpus() {
        check_version().unwrap();
        let (p, reps) = load_reps("three_cycle_indecomposables.json").unwrap();
        assert_eq!(reps.len(), 6);
        assert_eq!(p, catalog::three_cycle(12).unwrap());
        let (_, k, f) = load_morphism("defect_morphism.json").unwrap();
        assert_eq!(k, 1);
        assert_eq!(f.target().dims(), &[0, 0, 1]);
        let c = load_coxeter("coxeter_example.json", 12).unwrap();
        assert_eq!(c.word.len(), 11);
        assert_eq!(c.displayed.num_arrows(), 24);
        assert_eq!(c.stable_potential.num_terms(), 7);
        assert_eq!(load_qp("reduction_example.json", None).unwrap().truncation(), 8);
    }
}
