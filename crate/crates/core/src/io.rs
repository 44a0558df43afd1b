//! JSON encoding shared by structure, tensor, metric, subbundle and
//! pre-symplectic files. Indices are 1-based and scalars are expression
//! strings in the declared variables.

use serde_json::{json, Map, Value};

use crate::algebroid::{Algebroid, Kind, Labels};
use crate::bialgebroid::{Candidate, SymTensor};
use crate::calculus::tensor::Tensor;
use crate::error::{Error, Result};
use crate::hessian::FlatConnection;
use crate::linalg::Matrix;
use crate::presymplectic::{from_symplectic, PreSymplectic, Source, Subbundle};
use crate::scalar::{Scalar, Vars, VectorField};

pub const SCHEMA_VERSION: u64 = 1;

fn schema(pointer: &str, msg: impl Into<String>) -> Error {
    Error::Schema {
        pointer: if pointer.is_empty() {
            "/".into()
        } else {
            pointer.into()
        },
        msg: msg.into(),
    }
}

fn field<'a>(v: &'a Value, ptr: &str, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| schema(ptr, format!("missing field `{key}`")))
}

fn as_object<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema(ptr, "expected an object"))
}

fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(ptr, "expected an array"))
}

fn as_str<'a>(v: &'a Value, ptr: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| schema(ptr, "expected a string"))
}

fn as_usize(v: &Value, ptr: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| schema(ptr, "expected a non-negative integer"))
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// Reads a 1-based index in `1..=n`.
fn index(text: &str, n: usize, ptr: &str) -> Result<usize> {
    match text.trim().parse::<usize>() {
        Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
        _ => Err(schema(ptr, format!("index `{text}` is not in 1..={n}"))),
    }
}

fn check_version(v: &Value) -> Result<()> {
    match v.get("$schema_version") {
        None => Ok(()),
        Some(x) if x.as_u64() == Some(SCHEMA_VERSION) => Ok(()),
        Some(_) => Err(schema(
            "/$schema_version",
            format!("expected {SCHEMA_VERSION}"),
        )),
    }
}

/// Parsing context: variables and the degree guard.
#[derive(Clone, Debug)]
pub struct Reader {
    pub vars: Vars,
    pub max_degree: u32,
}

impl Reader {
    pub fn new(vars: Vars, max_degree: u32) -> Self {
        Reader { vars, max_degree }
    }

    pub fn scalar(&self, v: &Value, ptr: &str) -> Result<Scalar> {
        let s = match v {
            Value::String(s) => self.vars.parse(s),
            Value::Number(n) => self.vars.parse(&n.to_string()),
            _ => return Err(schema(ptr, "expected a scalar string")),
        }
        .map_err(|e| schema(ptr, e.to_string()))?;
        s.check_degree(self.max_degree)
            .map_err(|e| schema(ptr, e.to_string()))?;
        Ok(s)
    }

    fn vector(&self, v: &Value, len: usize, ptr: &str) -> Result<Vec<Scalar>> {
        let items = as_array(v, ptr)?;
        if items.len() != len {
            return Err(schema(
                ptr,
                format!("expected {len} entries, got {}", items.len()),
            ));
        }
        items
            .iter()
            .enumerate()
            .map(|(i, x)| self.scalar(x, &format!("{ptr}/{i}")))
            .collect()
    }

    /// `{"k": scalar}` with 1-based keys into a dense vector.
    fn sparse(&self, v: &Value, len: usize, ptr: &str) -> Result<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); len];
        for (k, x) in as_object(v, ptr)? {
            let p = format!("{ptr}/{}", escape(k));
            out[index(k, len, &p)?] = self.scalar(x, &p)?;
        }
        Ok(out)
    }

    pub fn matrix(&self, v: &Value, n: usize, ptr: &str) -> Result<Matrix> {
        let rows = as_array(v, ptr)?;
        if rows.len() != n {
            return Err(schema(
                ptr,
                format!("expected {n} rows, got {}", rows.len()),
            ));
        }
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| self.vector(r, n, &format!("{ptr}/{i}")))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn tensor(&self, v: &Value, rank: usize, ptr: &str) -> Result<Tensor> {
        check_version(v)?;
        let degree = as_usize(field(v, ptr, "degree")?, &format!("{ptr}/degree"))?;
        if let Some(r) = v.get("rank") {
            if as_usize(r, &format!("{ptr}/rank"))? != rank {
                return Err(schema(
                    &format!("{ptr}/rank"),
                    format!("expected rank {rank}"),
                ));
            }
        }
        let mut t = Tensor::zero(rank, degree);
        let tp = format!("{ptr}/terms");
        for (key, x) in as_object(field(v, ptr, "terms")?, &tp)? {
            let p = format!("{tp}/{}", escape(key));
            let (wedge, last) = key
                .split_once('|')
                .ok_or_else(|| schema(&p, "key must read `i1,…,in|k`"))?;
            let w: Vec<usize> = if wedge.trim().is_empty() {
                Vec::new()
            } else {
                wedge
                    .split(',')
                    .map(|s| index(s, rank, &p))
                    .collect::<Result<_>>()?
            };
            if w.len() != degree || w.windows(2).any(|p| p[0] >= p[1]) {
                return Err(schema(
                    &p,
                    format!("wedge indices must be {degree} strictly increasing entries"),
                ));
            }
            let k = index(last, rank, &p)?;
            t.set(&w, k, self.scalar(x, &p)?);
        }
        Ok(t)
    }

    pub fn sym_tensor(&self, v: &Value, n: usize, ptr: &str) -> Result<SymTensor> {
        check_version(v)?;
        let mp = format!("{ptr}/matrix");
        let m = self.matrix(field(v, ptr, "matrix")?, n, &mp)?;
        SymTensor::new(m).map_err(|e| schema(&mp, e.to_string()))
    }

    pub fn subbundle(&self, v: &Value, dim: usize, ptr: &str) -> Result<Subbundle> {
        check_version(v)?;
        let sp = format!("{ptr}/sections");
        let rows = as_array(field(v, ptr, "sections")?, &sp)?;
        let sections = rows
            .iter()
            .enumerate()
            .map(|(i, r)| self.vector(r, dim, &format!("{sp}/{i}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subbundle::new(sections))
    }

    /// `{"i,j": {"k": scalar}}` for `n` variables.
    pub fn christoffel(&self, v: &Value, ptr: &str) -> Result<FlatConnection> {
        let n = self.vars.base_count();
        let mut gamma = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (key, x) in as_object(v, ptr)? {
            let p = format!("{ptr}/{}", escape(key));
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| schema(&p, "key must read `i,j`"))?;
            gamma[index(i, n, &p)?][index(j, n, &p)?] = self.sparse(x, n, &p)?;
        }
        FlatConnection::new(self.vars.clone(), gamma)
    }
}

fn names(v: Option<&Value>, ptr: &str) -> Result<Vec<String>> {
    match v {
        None => Ok(Vec::new()),
        Some(v) => as_array(v, ptr)?
            .iter()
            .enumerate()
            .map(|(i, x)| as_str(x, &format!("{ptr}/{i}")).map(str::to_string))
            .collect(),
    }
}

/// Variables declared by a structure file.
pub fn read_vars(v: &Value) -> Result<Vars> {
    let base = names(v.get("variables"), "/variables")?;
    let params = names(v.get("parameters"), "/parameters")?;
    Vars::new(base, params).map_err(|e| schema("/variables", e.to_string()))
}

pub fn read_algebroid(v: &Value, max_degree: u32) -> Result<Algebroid> {
    read_algebroid_at(v, max_degree, "")
}

fn read_algebroid_at(v: &Value, max_degree: u32, ptr: &str) -> Result<Algebroid> {
    check_version(v)?;
    as_object(v, ptr)?;
    let base = names(v.get("variables"), &format!("{ptr}/variables"))?;
    let params = names(v.get("parameters"), &format!("{ptr}/parameters"))?;
    let vars =
        Vars::new(base, params).map_err(|e| schema(&format!("{ptr}/variables"), e.to_string()))?;
    let rd = Reader::new(vars.clone(), max_degree);
    let rank = as_usize(field(v, ptr, "rank")?, &format!("{ptr}/rank"))?;
    if rank == 0 {
        return Err(schema(&format!("{ptr}/rank"), "rank must be positive"));
    }
    let kind = match v
        .get("kind")
        .map(|k| as_str(k, &format!("{ptr}/kind")))
        .transpose()?
    {
        None | Some("left-symmetric") => Kind::LeftSymmetric,
        Some("lie") => Kind::Lie,
        Some(other) => {
            return Err(schema(
                &format!("{ptr}/kind"),
                format!("unknown kind `{other}`"),
            ))
        }
    };
    let mut alg = Algebroid::abelian(kind, vars.clone(), rank);
    if let Some(p) = v.get("products") {
        let pp = format!("{ptr}/products");
        for (key, x) in as_object(p, &pp)? {
            let kp = format!("{pp}/{}", escape(key));
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| schema(&kp, "key must read `i,j`"))?;
            let (i, j) = (index(i, rank, &kp)?, index(j, rank, &kp)?);
            alg.set_product(i, j, rd.sparse(x, rank, &kp)?);
        }
    }
    if let Some(a) = v.get("anchor") {
        let ap = format!("{ptr}/anchor");
        let n = vars.base_count();
        for (key, x) in as_object(a, &ap)? {
            let kp = format!("{ap}/{}", escape(key));
            let i = index(key, rank, &kp)?;
            let mut field = vec![Scalar::zero(); n];
            for (name, c) in as_object(x, &kp)? {
                let cp = format!("{kp}/{}", escape(name));
                let mu = vars
                    .base_index(name)
                    .map_err(|_| schema(&cp, format!("`{name}` is not a base variable")))?;
                field[mu as usize] = rd.scalar(c, &cp)?;
            }
            alg.set_anchor(i, VectorField(field));
        }
    }
    if let Some(l) = v.get("labels") {
        let lp = format!("{ptr}/labels");
        let section = as_str(field(l, &lp, "section")?, &format!("{lp}/section"))?.to_string();
        let dual = as_str(field(l, &lp, "dual")?, &format!("{lp}/dual"))?.to_string();
        alg = alg.with_labels(Labels { section, dual });
    }
    Algebroid::new(
        kind,
        vars,
        rank,
        alg.table().clone(),
        alg.anchors().to_vec(),
    )
    .map(|a| a.with_labels(alg.labels().clone()))
    .map_err(|e| match e {
        Error::InvalidStructure(m) => schema(&format!("{ptr}/products"), m),
        other => other,
    })
}

fn key2(i: usize, j: usize) -> String {
    format!("{},{}", i + 1, j + 1)
}

fn sparse_json(vars: &Vars, v: &[Scalar]) -> Value {
    let mut m = Map::new();
    for (k, c) in v.iter().enumerate() {
        if !c.is_zero() {
            m.insert((k + 1).to_string(), Value::String(vars.print(c)));
        }
    }
    Value::Object(m)
}

fn names_json(items: &[String]) -> Value {
    Value::Array(items.iter().map(|s| Value::String(s.clone())).collect())
}

pub fn algebroid_json(alg: &Algebroid) -> Value {
    let vars = alg.vars();
    let mut products = Map::new();
    for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            if !alg.product(i, j).iter().all(Scalar::is_zero) {
                products.insert(key2(i, j), sparse_json(vars, alg.product(i, j)));
            }
        }
    }
    let mut anchor = Map::new();
    for i in 0..alg.rank() {
        let mut m = Map::new();
        for (mu, c) in alg.anchor(i).0.iter().enumerate() {
            if !c.is_zero() {
                m.insert(vars.base_names()[mu].clone(), Value::String(vars.print(c)));
            }
        }
        if !m.is_empty() {
            anchor.insert((i + 1).to_string(), Value::Object(m));
        }
    }
    json!({
        "$schema_version": SCHEMA_VERSION,
        "kind": match alg.kind() { Kind::LeftSymmetric => "left-symmetric", Kind::Lie => "lie" },
        "variables": names_json(vars.base_names()),
        "parameters": names_json(vars.param_names()),
        "rank": alg.rank(),
        "labels": {"section": alg.labels().section, "dual": alg.labels().dual},
        "products": products,
        "anchor": anchor,
    })
}

pub fn tensor_json(vars: &Vars, t: &Tensor) -> Value {
    let mut terms = Map::new();
    for ((w, k), c) in t.terms() {
        if c.is_zero() {
            continue;
        }
        let wedge: Vec<String> = w.iter().map(|i| (i + 1).to_string()).collect();
        terms.insert(
            format!("{}|{}", wedge.join(","), k + 1),
            Value::String(vars.print(c)),
        );
    }
    json!({"$schema_version": SCHEMA_VERSION, "degree": t.degree(), "rank": t.rank(), "terms": terms})
}

pub fn matrix_json(vars: &Vars, m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| Value::String(vars.print(c))).collect()))
            .collect(),
    )
}

pub fn sym_tensor_json(vars: &Vars, h: &SymTensor) -> Value {
    json!({"$schema_version": SCHEMA_VERSION, "matrix": matrix_json(vars, h.matrix())})
}

pub fn subbundle_json(vars: &Vars, f: &Subbundle) -> Value {
    let rows = f
        .sections
        .iter()
        .map(|s| Value::Array(s.iter().map(|c| Value::String(vars.print(c))).collect()))
        .collect();
    json!({"$schema_version": SCHEMA_VERSION, "sections": Value::Array(rows)})
}

/// Pre-symplectic file with constituents inline.
pub fn presymplectic_json(e: &PreSymplectic) -> Result<Value> {
    let vars = e.vars();
    Ok(match e.source() {
        Source::Bialgebroid(c) => json!({
            "$schema_version": SCHEMA_VERSION,
            "source": "bialgebroid",
            "a": algebroid_json(&c.a),
            "astar": algebroid_json(&c.astar),
        }),
        Source::Symplectic { lie, omega } => json!({
            "$schema_version": SCHEMA_VERSION,
            "source": "symplectic",
            "lie": algebroid_json(lie),
            "omega": tensor_json(vars, &Tensor::from_matrix(omega)),
        }),
        Source::Explicit { table } => {
            let n = e.dim();
            let mut products = Map::new();
            for (a, row) in table.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    if !v.iter().all(Scalar::is_zero) {
                        products.insert(key2(a, b), sparse_json(vars, v));
                    }
                }
            }
            let mut anchor = Map::new();
            for a in 0..n {
                let mut m = Map::new();
                for (mu, c) in e.anchor(a).0.iter().enumerate() {
                    if !c.is_zero() {
                        m.insert(vars.base_names()[mu].clone(), Value::String(vars.print(c)));
                    }
                }
                if !m.is_empty() {
                    anchor.insert((a + 1).to_string(), Value::Object(m));
                }
            }
            json!({
                "$schema_version": SCHEMA_VERSION,
                "source": "explicit",
                "variables": names_json(vars.base_names()),
                "parameters": names_json(vars.param_names()),
                "rank": n,
                "products": products,
                "anchor": anchor,
                "omega": matrix_json(vars, e.omega()),
            })
        }
        Source::Truncated(_) => {
            return Err(Error::InvalidStructure(
                "the truncated double has no file form".into(),
            ));
        }
    })
}

/// Resolves a constituent given inline or as a path.
pub type Resolve<'a> = dyn Fn(&str) -> Result<Value> + 'a;

fn part(v: &Value, key: &str, resolve: &Resolve) -> Result<Value> {
    match field(v, "", key)? {
        Value::String(path) => resolve(path),
        other => Ok(other.clone()),
    }
}

fn with_pointer(e: Error, prefix: &str) -> Error {
    match e {
        Error::Schema { pointer, msg } => Error::Schema {
            pointer: format!(
                "/{prefix}{}",
                if pointer == "/" {
                    String::new()
                } else {
                    pointer
                }
            ),
            msg,
        },
        other => other,
    }
}

pub fn read_candidate(a: &Value, astar: &Value, max_degree: u32) -> Result<Candidate> {
    let a = read_algebroid(a, max_degree)?;
    let astar = read_algebroid(astar, max_degree)?;
    Candidate::new(a, astar)
}

pub fn read_presymplectic(v: &Value, max_degree: u32, resolve: &Resolve) -> Result<PreSymplectic> {
    check_version(v)?;
    let source = as_str(field(v, "", "source")?, "/source")?;
    match source {
        "bialgebroid" => {
            let a = part(v, "a", resolve)?;
            let s = part(v, "astar", resolve)?;
            let a = read_algebroid(&a, max_degree).map_err(|e| with_pointer(e, "a"))?;
            let s = read_algebroid(&s, max_degree).map_err(|e| with_pointer(e, "astar"))?;
            Ok(PreSymplectic::double_unchecked(&Candidate::new(a, s)?))
        }
        "symplectic" => {
            let lie = part(v, "lie", resolve)?;
            let lie = read_algebroid(&lie, max_degree).map_err(|e| with_pointer(e, "lie"))?;
            let om = part(v, "omega", resolve)?;
            let omega =
                Reader::new(lie.vars().clone(), max_degree).tensor(&om, lie.rank(), "/omega")?;
            from_symplectic(&lie, &omega)
        }
        "explicit" => {
            let vars = read_vars(v)?;
            let rd = Reader::new(vars.clone(), max_degree);
            let n = as_usize(field(v, "", "rank")?, "/rank")?;
            let mut table = vec![vec![vec![Scalar::zero(); n]; n]; n];
            if let Some(p) = v.get("products") {
                for (key, x) in as_object(p, "/products")? {
                    let kp = format!("/products/{}", escape(key));
                    let (i, j) = key
                        .split_once(',')
                        .ok_or_else(|| schema(&kp, "key must read `i,j`"))?;
                    table[index(i, n, &kp)?][index(j, n, &kp)?] = rd.sparse(x, n, &kp)?;
                }
            }
            let mut anchor = vec![VectorField::zero(vars.base_count()); n];
            if let Some(a) = v.get("anchor") {
                for (key, x) in as_object(a, "/anchor")? {
                    let kp = format!("/anchor/{}", escape(key));
                    let i = index(key, n, &kp)?;
                    for (name, c) in as_object(x, &kp)? {
                        let cp = format!("{kp}/{}", escape(name));
                        let mu = vars
                            .base_index(name)
                            .map_err(|_| schema(&cp, format!("`{name}` is not a base variable")))?;
                        anchor[i].0[mu as usize] = rd.scalar(c, &cp)?;
                    }
                }
            }
            let omega = rd.matrix(field(v, "", "omega")?, n, "/omega")?;
            PreSymplectic::explicit(vars, table, anchor, omega)
        }
        other => Err(schema("/source", format!("unknown source `{other}`"))),
    }
}
