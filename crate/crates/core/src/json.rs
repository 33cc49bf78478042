//! JSON documents for quivers, QPs, representations and morphisms.
//! Rationals are strings in lowest terms ("-3/2", "4").

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::path_algebra::{Element, Path};
use crate::qp::{Qp, DEFAULT_TRUNCATION};
use crate::quiver::{Arrow, Quiver};
use crate::rational::{format_q, parse_q};
use crate::representation::{RepMorphism, Representation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coeff: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub path: Vec<String>,
    /// Set for a trivial path e_v.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QpDoc {
    pub quiver: QuiverDoc,
    #[serde(default)]
    pub potential: Vec<TermDoc>,
    #[serde(default)]
    pub frozen: Vec<String>,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
}

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::parse("malformed JSON document").with_datum(e.to_string())
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(parse_err)
}

pub fn quiver_doc(q: &Quiver) -> QuiverDoc {
    QuiverDoc {
        vertices: q.vertices().to_vec(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowDoc {
                name: a.name.clone(),
                from: q.vertex_name(a.source).to_string(),
                to: q.vertex_name(a.target).to_string(),
            })
            .collect(),
    }
}

pub fn quiver_from_doc(doc: &QuiverDoc) -> Result<Quiver> {
    let index = |v: &str| {
        doc.vertices
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| Error::structural("arrow endpoint is not a vertex").with_datum(v.to_string()))
    };
    let arrows = doc
        .arrows
        .iter()
        .map(|a| Ok(Arrow { name: a.name.clone(), source: index(&a.from)?, target: index(&a.to)? }))
        .collect::<Result<Vec<_>>>()?;
    Quiver::new(doc.vertices.clone(), arrows)
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    serde_json::to_value(quiver_doc(q)).expect("serializable")
}

pub fn quiver_from_json(v: &Value) -> Result<Quiver> {
    let doc: QuiverDoc = serde_json::from_value(v.clone()).map_err(parse_err)?;
    quiver_from_doc(&doc)
}

pub fn element_terms(x: &Element) -> Vec<TermDoc> {
    let q = x.quiver();
    x.terms()
        .iter()
        .map(|(p, c)| TermDoc {
            coeff: format_q(c),
            path: p.names(q),
            vertex: p.is_trivial().then(|| q.vertex_name(p.start()).to_string()),
        })
        .collect()
}

/// Terms of length above `n` are dropped.
pub fn element_from_terms(q: &Arc<Quiver>, n: usize, terms: &[TermDoc]) -> Result<Element> {
    let mut x = Element::zero(q.clone(), n);
    for t in terms {
        let path = match (&t.vertex, t.path.is_empty()) {
            (Some(v), true) => Path::trivial(q.require_vertex(v)?),
            (None, false) => {
                let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
                Path::from_names(q, &names)?
            }
            _ => return Err(Error::parse("a term needs exactly one of path and vertex").with_datum(t.coeff.clone())),
        };
        if path.len() <= n {
            x.add_term(path, parse_q(&t.coeff)?);
        }
    }
    Ok(x)
}

pub fn qp_doc(p: &Qp) -> QpDoc {
    let q = p.quiver();
    QpDoc {
        quiver: quiver_doc(q),
        potential: element_terms(p.potential()),
        frozen: p.frozen().iter().map(|&v| q.vertex_name(v).to_string()).collect(),
        truncation: p.truncation(),
    }
}

pub fn qp_to_json(p: &Qp) -> Value {
    serde_json::to_value(qp_doc(p)).expect("serializable")
}

/// A QP document; `truncation` overrides the one stored in the document.
pub fn qp_from_json(v: &Value, truncation: Option<usize>) -> Result<Qp> {
    let doc: QpDoc = serde_json::from_value(v.clone()).map_err(parse_err)?;
    let n = truncation.unwrap_or(doc.truncation);
    if n < 3 {
        return Err(Error::precondition("truncation must be at least 3").with_datum(n.to_string()));
    }
    let q = Arc::new(quiver_from_doc(&doc.quiver)?);
    let w = element_from_terms(&q, n, &doc.potential)?;
    let frozen = doc.frozen.iter().map(|v| q.require_vertex(v)).collect::<Result<BTreeSet<_>>>()?;
    Qp::new(q, w, frozen)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(format_q(x))).collect())).collect(),
    )
}

/// A rows × cols matrix; entries may be strings or integers.
pub fn matrix_from_json(v: &Value, rows: usize, cols: usize) -> Result<Matrix> {
    let bad = || Error::parse("matrix must be a list of rows").with_datum(v.to_string());
    let list = v.as_array().ok_or_else(bad)?;
    // a matrix with no columns may be written as []
    if cols == 0 && list.is_empty() {
        return Ok(Matrix::zeros(rows, 0));
    }
    if list.len() != rows {
        return Err(Error::structural("matrix has the wrong number of rows")
            .with_datum(format!("{} rows, expected {rows}", list.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for r in list {
        let r = r.as_array().ok_or_else(bad)?;
        if r.len() != cols {
            return Err(Error::structural("matrix row has the wrong length")
                .with_datum(format!("{} entries, expected {cols}", r.len())));
        }
        let row = r
            .iter()
            .map(|x| match x {
                Value::String(s) => parse_q(s),
                Value::Number(n) if n.is_i64() => Ok(crate::rational::q(n.as_i64().unwrap())),
                other => Err(Error::parse("matrix entry must be a rational string").with_datum(other.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        out.push(row);
    }
    Ok(Matrix::from_rows(out, cols))
}

pub fn rep_to_json(m: &Representation) -> Value {
    let q = m.quiver();
    let mut dims = Map::new();
    for v in 0..q.num_vertices() {
        dims.insert(q.vertex_name(v).to_string(), json!(m.dim(v)));
    }
    let mut mats = Map::new();
    for a in 0..q.num_arrows() {
        mats.insert(q.arrow_name(a).to_string(), matrix_to_json(m.map(a)));
    }
    json!({"dims": dims, "matrices": mats})
}

/// Missing vertices have dimension 0 and missing arrows act by zero.
pub fn rep_from_json(v: &Value, q: &Arc<Quiver>) -> Result<Representation> {
    let obj = v.as_object().ok_or_else(|| Error::parse("representation must be an object"))?;
    if let Some(k) = obj.keys().find(|k| *k != "dims" && *k != "matrices") {
        return Err(Error::parse("unknown field in representation").with_datum(k.clone()));
    }
    let mut dims = vec![0; q.num_vertices()];
    if let Some(d) = obj.get("dims") {
        let d = d.as_object().ok_or_else(|| Error::parse("dims must be an object"))?;
        for (name, n) in d {
            let n = n.as_u64().ok_or_else(|| Error::parse("dimension must be a natural number").with_datum(name.clone()))?;
            dims[q.require_vertex(name)?] = n as usize;
        }
    }
    let mut maps: Vec<Matrix> = q.arrows().iter().map(|a| Matrix::zeros(dims[a.target], dims[a.source])).collect();
    if let Some(m) = obj.get("matrices") {
        let m = m.as_object().ok_or_else(|| Error::parse("matrices must be an object"))?;
        for (name, mat) in m {
            let a = q.require_arrow(name)?;
            maps[a] = matrix_from_json(mat, dims[q.target(a)], dims[q.source(a)])
                .map_err(|e| Error::structural(e.message().to_string()).with_datum(name.clone()))?;
        }
    }
    Representation::new(q.clone(), dims, maps)
}

pub fn morphism_to_json(f: &RepMorphism) -> Value {
    let q = f.source().quiver();
    let mut maps = Map::new();
    for v in 0..q.num_vertices() {
        maps.insert(q.vertex_name(v).to_string(), matrix_to_json(f.map(v)));
    }
    json!({"source": rep_to_json(f.source()), "target": rep_to_json(f.target()), "maps": maps})
}

/// {"source": rep, "target": rep, "maps": {"v": matrix}}; missing vertices map by zero.
pub fn morphism_from_json(v: &Value, q: &Arc<Quiver>) -> Result<RepMorphism> {
    let field = |k: &str| v.get(k).ok_or_else(|| Error::parse("morphism field missing").with_datum(k.to_string()));
    let m = rep_from_json(field("source")?, q)?;
    let n = rep_from_json(field("target")?, q)?;
    let mut maps: Vec<Matrix> = (0..q.num_vertices()).map(|v| Matrix::zeros(n.dim(v), m.dim(v))).collect();
    if let Some(obj) = v.get("maps") {
        let obj = obj.as_object().ok_or_else(|| Error::parse("maps must be an object"))?;
        for (name, mat) in obj {
            let x = q.require_vertex(name)?;
            maps[x] = matrix_from_json(mat, n.dim(x), m.dim(x))?;
        }
    }
    RepMorphism::new(m, n, maps)
}

/// Pretty or compact rendering with a trailing newline.
pub fn render(v: &Value, pretty: bool) -> String {
    let mut s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) }.expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::random;

    #[test]
    fn qp_round_trip() {
        for p in [catalog::a3(8).unwrap(), catalog::three_cycle(8).unwrap(), catalog::reduction_example(9).unwrap()] {
            let v = qp_to_json(&p);
            let back = qp_from_json(&parse_value(&render(&v, false)).unwrap(), None).unwrap();
            assert_eq!(back, p);
            assert_eq!(qp_to_json(&back), v);
        }
    }

    #[test]
    fn element_terms_round_trip() {
        let p = catalog::three_cycle(6).unwrap();
        let q = p.quiver();
        let mut x = Element::vertex(q.clone(), 6, 1);
        x.add_term(Path::from_names(q, &["a", "b"]).unwrap(), crate::rational::frac(-3, 2));
        let terms = element_terms(&x);
        assert_eq!(terms[0].vertex.as_deref(), Some("2"));
        assert_eq!(element_from_terms(q, 6, &terms).unwrap(), x);
        let both = TermDoc { coeff: "1".into(), path: vec!["a".into()], vertex: Some("1".into()) };
        assert!(element_from_terms(q, 6, &[both]).is_err());
    }

    #[test]
    fn quiver_schema() {
        let v = parse_value(r#"{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}]}"#).unwrap();
        let q = quiver_from_json(&v).unwrap();
        assert_eq!(q.num_arrows(), 1);
        assert_eq!(quiver_to_json(&q), v);
        let bad = parse_value(r#"{"vertices":["1"],"arrows":[{"name":"a","from":"1","to":"9"}]}"#).unwrap();
        assert!(quiver_from_json(&bad).is_err());
    }

    #[test]
    fn rep_schema_and_round_trip() {
        let q = Arc::new(quiver_from_json(&parse_value(r#"{"vertices":["1","2"],"arrows":[{"name":"a","from":"1","to":"2"}]}"#).unwrap()).unwrap());
        let v = parse_value(r#"{"dims":{"1":1,"2":1},"matrices":{"a":[["1/2"]]}}"#).unwrap();
        let r = rep_from_json(&v, &q).unwrap();
        assert_eq!(r.map(0)[(0, 0)], crate::rational::frac(1, 2));
        assert_eq!(rep_to_json(&r), v);
        let p = catalog::three_cycle(8).unwrap();
        let parts: Vec<_> = catalog::three_cycle_indecomposables(&p).unwrap().into_iter().map(|x| x.1).collect();
        let mut rng = random::rng(2);
        for _ in 0..5 {
            let m = random::random_sum(&mut rng, &parts, 4);
            assert_eq!(rep_from_json(&rep_to_json(&m), p.quiver()).unwrap(), m);
        }
        let bad = parse_value(r#"{"dims":{"1":1,"2":1},"matrices":{"a":[["1","2"]]}}"#).unwrap();
        assert!(rep_from_json(&bad, &q).is_err());
    }

    #[test]
    fn morphism_round_trip() {
        let p = catalog::three_cycle(8).unwrap();
        let f = catalog::defect_example(&p).unwrap();
        let v = morphism_to_json(&f);
        assert_eq!(morphism_from_json(&v, p.quiver()).unwrap(), f);
    }
}
