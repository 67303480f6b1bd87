//! The JSON bundle format: one document per structure, scalars as
//! strings, all indices 0-based, object keys sorted. Sparse tables carry
//! entries `[i_1, ..., i_n, target, "p/q"]`; anchors and representation
//! maps pair a multi-index with a dense matrix of scalar strings.

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::base_algebra::CommAlgebra;
use crate::crossed::{CrossedModule, LieModule};
use crate::error::Error;
use crate::exact::{format_scalar, parse_scalar, Matrix, Scalar, Vector};
use crate::ext::AlternatingMap;
use crate::nlie::NLieAlgebra;
use crate::rep::Representation;
use crate::rinehart::NLieRinehart;

/// A parsed bundle: the structure itself plus the optional payload blocks
/// the commands feed on.
#[derive(Debug)]
pub struct Bundle {
    pub rinehart: NLieRinehart,
    pub representation: Option<Representation>,
    pub theta: Option<AlternatingMap>,
    pub phi: Option<AlternatingMap>,
    pub crossed: Option<CrossedModule>,
}

fn bad(path: &str, what: &str) -> Error {
    Error::Bundle(format!("{path}: {what}"))
}

fn as_obj<'v>(v: &'v Value, path: &str) -> Result<&'v Map<String, Value>, Error> {
    v.as_object().ok_or_else(|| bad(path, "expected an object"))
}

fn as_arr<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>, Error> {
    v.as_array().ok_or_else(|| bad(path, "expected an array"))
}

fn as_usize(v: &Value, path: &str) -> Result<usize, Error> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(path, "expected a non-negative integer"))
}

fn get<'v>(obj: &'v Map<String, Value>, key: &str, path: &str) -> Result<&'v Value, Error> {
    obj.get(key)
        .ok_or_else(|| bad(path, &format!("missing field `{key}`")))
}

fn parse_scalar_at(v: &Value, path: &str) -> Result<Scalar, Error> {
    let s = v
        .as_str()
        .ok_or_else(|| bad(path, "expected a scalar string"))?;
    parse_scalar(s).map_err(|e| bad(path, &e.to_string()))
}

fn parse_vector(v: &Value, path: &str) -> Result<Vector, Error> {
    let arr = as_arr(v, path)?;
    let mut out = Vec::with_capacity(arr.len());
    for (i, x) in arr.iter().enumerate() {
        out.push(parse_scalar_at(x, &format!("{path}[{i}]"))?);
    }
    Ok(Vector::new(out))
}

fn parse_matrix(v: &Value, path: &str) -> Result<Matrix, Error> {
    let rows = as_arr(v, path)?;
    let mut parsed = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        parsed.push(parse_vector(row, &format!("{path}[{i}]"))?);
    }
    if parsed.is_empty() {
        return Ok(Matrix::zero(0, 0));
    }
    let cols = parsed[0].dim();
    for (i, row) in parsed.iter().enumerate() {
        if row.dim() != cols {
            return Err(bad(&format!("{path}[{i}]"), "ragged matrix"));
        }
    }
    Ok(Matrix::from_rows(parsed))
}

fn parse_index_list(v: &Value, path: &str) -> Result<Vec<usize>, Error> {
    let arr = as_arr(v, path)?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| as_usize(x, &format!("{path}[{i}]")))
        .collect()
}

/// Sparse rows `[i_1, ..., i_k, target, "p/q"]` accumulated into
/// `(tuple, value vector)` entries.
fn parse_sparse_table(
    v: &Value,
    tuple_len: usize,
    target_dim: usize,
    path: &str,
) -> Result<Vec<(Vec<usize>, Vector)>, Error> {
    let rows = as_arr(v, path)?;
    let mut acc: std::collections::BTreeMap<Vec<usize>, Vector> = Default::default();
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let row = as_arr(row, &rp)?;
        if row.len() != tuple_len + 2 {
            return Err(bad(
                &rp,
                &format!("expected {} entries (tuple, target, scalar)", tuple_len + 2),
            ));
        }
        let mut tuple = Vec::with_capacity(tuple_len);
        for k in 0..tuple_len {
            tuple.push(as_usize(&row[k], &format!("{rp}[{k}]"))?);
        }
        let target = as_usize(&row[tuple_len], &format!("{rp}[{tuple_len}]"))?;
        if target >= target_dim {
            return Err(bad(
                &rp,
                &format!("target {target} out of range {target_dim}"),
            ));
        }
        let c = parse_scalar_at(&row[tuple_len + 1], &format!("{rp}[{}]", tuple_len + 1))?;
        let entry = acc.entry(tuple).or_insert_with(|| Vector::zero(target_dim));
        let cur = &entry[target] + &c;
        entry.set(target, cur);
    }
    Ok(acc.into_iter().collect())
}

fn parse_indexed_matrices(v: &Value, path: &str) -> Result<Vec<(Vec<usize>, Matrix)>, Error> {
    let rows = as_arr(v, path)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let pair = as_arr(row, &rp)?;
        if pair.len() != 2 {
            return Err(bad(&rp, "expected [multi-index, matrix]"));
        }
        let idx = parse_index_list(&pair[0], &format!("{rp}[0]"))?;
        let mat = parse_matrix(&pair[1], &format!("{rp}[1]"))?;
        out.push((idx, mat));
    }
    Ok(out)
}

fn parse_matrices(v: &Value, path: &str) -> Result<Vec<Matrix>, Error> {
    let rows = as_arr(v, path)?;
    rows.iter()
        .enumerate()
        .map(|(i, m)| parse_matrix(m, &format!("{path}[{i}]")))
        .collect()
}

fn parse_base_algebra(v: &Value, path: &str) -> Result<CommAlgebra, Error> {
    let obj = as_obj(v, path)?;
    let dim = as_usize(get(obj, "dim", path)?, &format!("{path}.dim"))?;
    let unit = parse_vector(get(obj, "unit", path)?, &format!("{path}.unit"))?;
    let rows = as_arr(get(obj, "product", path)?, &format!("{path}.product"))?;
    let mut entries = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}.product[{i}]");
        let row = as_arr(row, &rp)?;
        if row.len() != 3 {
            return Err(bad(&rp, "expected [i, j, coordinates]"));
        }
        let a = as_usize(&row[0], &format!("{rp}[0]"))?;
        let b = as_usize(&row[1], &format!("{rp}[1]"))?;
        let coords = parse_vector(&row[2], &format!("{rp}[2]"))?;
        entries.push((a, b, coords));
    }
    CommAlgebra::new(dim, unit, &entries).map_err(|e| bad(path, &e.to_string()))
}

fn parse_representation_block(
    r: &NLieRinehart,
    v: &Value,
    path: &str,
) -> Result<Representation, Error> {
    let obj = as_obj(v, path)?;
    let dim = as_usize(
        get(obj, "carrier_dim", path)?,
        &format!("{path}.carrier_dim"),
    )?;
    let a_action = parse_matrices(get(obj, "a_action", path)?, &format!("{path}.a_action"))?;
    let psi = parse_indexed_matrices(get(obj, "psi", path)?, &format!("{path}.psi"))?;
    Representation::new(r, dim, a_action, &psi).map_err(|e| bad(path, &e.to_string()))
}

impl Bundle {
    pub fn from_json(text: &str) -> Result<Bundle, Error> {
        let doc: Value = serde_json::from_str(text)?;
        let root = as_obj(&doc, "$")?;

        let base = parse_base_algebra(get(root, "base_algebra", "$")?, "$.base_algebra")?;
        let module = as_obj(get(root, "module", "$")?, "$.module")?;
        let dim = as_usize(get(module, "dim", "$.module")?, "$.module.dim")?;
        let arity = as_usize(get(module, "n", "$.module")?, "$.module.n")?;
        if arity < 2 {
            return Err(bad("$.module.n", "arity must be at least 2"));
        }
        let a_action = parse_matrices(get(module, "a_action", "$.module")?, "$.module.a_action")?;
        let bracket_entries =
            parse_sparse_table(get(root, "bracket", "$")?, arity, dim, "$.bracket")?;
        let lie = NLieAlgebra::new(dim, arity, &bracket_entries)
            .map_err(|e| bad("$.bracket", &e.to_string()))?;
        let anchor = parse_indexed_matrices(get(root, "anchor", "$")?, "$.anchor")?;
        let rinehart = NLieRinehart::new(base, lie, a_action, &anchor)
            .map_err(|e| bad("$", &e.to_string()))?;

        let representation = match root.get("representation") {
            None => None,
            Some(v) => Some(parse_representation_block(
                &rinehart,
                v,
                "$.representation",
            )?),
        };

        let theta = match root.get("theta") {
            None => None,
            Some(v) => {
                let rep = representation
                    .as_ref()
                    .ok_or_else(|| bad("$.theta", "a theta block needs a representation block"))?;
                let entries = parse_sparse_table(v, arity, rep.dim(), "$.theta")?;
                Some(
                    AlternatingMap::new(dim, arity, rep.dim(), &entries)
                        .map_err(|e| bad("$.theta", &e.to_string()))?,
                )
            }
        };

        let phi = match root.get("phi") {
            None => None,
            Some(v) => {
                let entries = parse_sparse_table(v, arity, 1, "$.phi")?;
                Some(
                    AlternatingMap::new(dim, arity, 1, &entries)
                        .map_err(|e| bad("$.phi", &e.to_string()))?,
                )
            }
        };

        let crossed = match root.get("crossed") {
            None => None,
            Some(v) => {
                let obj = as_obj(v, "$.crossed")?;
                let m_alg = as_obj(get(obj, "m_algebra", "$.crossed")?, "$.crossed.m_algebra")?;
                let m_dim = as_usize(
                    get(m_alg, "dim", "$.crossed.m_algebra")?,
                    "$.crossed.m_algebra.dim",
                )?;
                let m_bracket_entries = parse_sparse_table(
                    get(m_alg, "bracket", "$.crossed.m_algebra")?,
                    arity,
                    m_dim,
                    "$.crossed.m_algebra.bracket",
                )?;
                let m_bracket = NLieAlgebra::new(m_dim, arity, &m_bracket_entries)
                    .map_err(|e| bad("$.crossed.m_algebra.bracket", &e.to_string()))?;
                let m_action = parse_matrices(
                    get(m_alg, "a_action", "$.crossed.m_algebra")?,
                    "$.crossed.m_algebra.a_action",
                )?;
                let psi = parse_indexed_matrices(get(obj, "psi", "$.crossed")?, "$.crossed.psi")?;
                let rep = Representation::new(&rinehart, m_dim, m_action, &psi)
                    .map_err(|e| bad("$.crossed", &e.to_string()))?;
                let lie_module =
                    LieModule::new(m_bracket, rep).map_err(|e| bad("$.crossed", &e.to_string()))?;
                let boundary =
                    parse_matrix(get(obj, "boundary", "$.crossed")?, "$.crossed.boundary")?;
                Some(
                    CrossedModule::new(&rinehart, lie_module, boundary)
                        .map_err(|e| bad("$.crossed", &e.to_string()))?,
                )
            }
        };

        Ok(Bundle {
            rinehart,
            representation,
            theta,
            phi,
            crossed,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut doc = rinehart_to_json(&self.rinehart);
        let obj = doc.as_object_mut().expect("rinehart serializes to object");
        if let Some(rep) = &self.representation {
            obj.insert(
                "representation".into(),
                representation_to_json(&self.rinehart, rep),
            );
        }
        if let Some(theta) = &self.theta {
            obj.insert("theta".into(), alternating_to_json(theta));
        }
        if let Some(phi) = &self.phi {
            obj.insert("phi".into(), alternating_to_json(phi));
        }
        if let Some(crossed) = &self.crossed {
            obj.insert("crossed".into(), crossed_to_json(&self.rinehart, crossed));
        }
        doc
    }
}

fn vector_to_json(v: &Vector) -> Value {
    Value::Array(v.iter().map(|x| json!(format_scalar(x))).collect())
}

fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| json!(format_scalar(m.get(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn sparse_table_to_json<'e>(entries: impl Iterator<Item = (&'e Vec<usize>, &'e Vector)>) -> Value {
    let mut rows = Vec::new();
    for (tuple, value) in entries {
        for t in 0..value.dim() {
            if value[t].is_zero() {
                continue;
            }
            let mut row: Vec<Value> = tuple.iter().map(|&i| json!(i)).collect();
            row.push(json!(t));
            row.push(json!(format_scalar(&value[t])));
            rows.push(Value::Array(row));
        }
    }
    Value::Array(rows)
}

pub fn base_algebra_to_json(a: &CommAlgebra) -> Value {
    let mut product = Vec::new();
    for i in 0..a.dim() {
        for j in i..a.dim() {
            let v = a.basis_product(i, j);
            if !v.is_zero() {
                product.push(json!([i, j, vector_to_json(v)]));
            }
        }
    }
    json!({
        "dim": a.dim(),
        "unit": vector_to_json(a.unit()),
        "product": product,
    })
}

pub fn rinehart_to_json(r: &NLieRinehart) -> Value {
    let anchor: Vec<Value> = r
        .blocks()
        .blocks()
        .iter()
        .enumerate()
        .filter(|(pos, _)| !r.anchor_block(*pos).is_zero())
        .map(|(pos, b)| json!([b.indices(), matrix_to_json(r.anchor_block(pos))]))
        .collect();
    json!({
        "base_algebra": base_algebra_to_json(r.base()),
        "module": {
            "dim": r.dim(),
            "n": r.arity(),
            "a_action": Value::Array(
                r.action_matrices().iter().map(matrix_to_json).collect()
            ),
        },
        "bracket": sparse_table_to_json(r.lie().entries()),
        "anchor": anchor,
    })
}

/// Serialize a representation against its owning structure so psi entries
/// carry explicit multi-indices.
pub fn representation_to_json(r: &NLieRinehart, rep: &Representation) -> Value {
    json!({
        "carrier_dim": rep.dim(),
        "a_action": Value::Array(rep.action_matrices().iter().map(matrix_to_json).collect()),
        "psi": Value::Array(
            rep.psi_matrices()
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_zero())
                .map(|(pos, m)| {
                    json!([r.blocks().block(pos).indices(), matrix_to_json(m)])
                })
                .collect(),
        ),
    })
}

pub fn alternating_to_json(map: &AlternatingMap) -> Value {
    sparse_table_to_json(map.entries())
}

pub fn crossed_to_json(r: &NLieRinehart, x: &CrossedModule) -> Value {
    json!({
        "m_algebra": {
            "dim": x.module().dim(),
            "bracket": sparse_table_to_json(x.module().bracket().entries()),
            "a_action": Value::Array(
                x.module().rep().action_matrices().iter().map(matrix_to_json).collect()
            ),
        },
        "psi": Value::Array(
            x.module()
                .rep()
                .psi_matrices()
                .iter()
                .enumerate()
                .filter(|(_, m)| !m.is_zero())
                .map(|(pos, m)| {
                    json!([r.blocks().block(pos).indices(), matrix_to_json(m)])
                })
                .collect(),
        ),
        "boundary": matrix_to_json(x.boundary()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rinehart_roundtrip() {
        for (name, r) in fixtures::all() {
            let doc = rinehart_to_json(&r);
            let text = serde_json::to_string_pretty(&doc).unwrap();
            let parsed = Bundle::from_json(&text).unwrap();
            assert_eq!(parsed.rinehart, r, "{name}");
        }
    }

    #[test]
    fn truncated_document_is_rejected() {
        let r = fixtures::dual();
        let text = serde_json::to_string(&rinehart_to_json(&r)).unwrap();
        let truncated = &text[..text.len() / 2];
        assert!(Bundle::from_json(truncated).is_err());
    }

    #[test]
    fn missing_fields_are_located() {
        let err = Bundle::from_json("{}").unwrap_err().to_string();
        assert!(err.contains("base_algebra"), "{err}");
    }
}
