use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use super::entry::{is_identifier, zero_grid, EntrySpec, Grid};
use crate::error::{Error, Result};
use crate::polyalg::{parse_rational_constant, Expr, Rational};

/// Signal names; used by drop lists, subnet selections and reports.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Labels {
    pub nodes: Vec<String>,
    pub r: Vec<String>,
    pub e: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Assumptions {
    /// User-asserted: the spectrum of `u = (r, e)` is positive definite.
    pub input_spectrum_positive_definite: bool,
}

/// How a B-node enters the identification problem of a sub-network.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureMode {
    /// `w_b` itself is measured.
    Node,
    /// Only the combinations `-P_AB w_B` and `R_yB w_B` are measured.
    Combinations,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubnetMode {
    MeasureBNodes,
    MeasureCombinations,
    /// Per B-node choice, keyed by node label.
    Mixed(BTreeMap<String, MeasureMode>),
}

impl SubnetMode {
    pub fn for_node(&self, label: &str) -> Option<MeasureMode> {
        match self {
            SubnetMode::MeasureBNodes => Some(MeasureMode::Node),
            SubnetMode::MeasureCombinations => Some(MeasureMode::Combinations),
            SubnetMode::Mixed(m) => m.get(label).copied(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "nodes" => Ok(SubnetMode::MeasureBNodes),
            "combinations" => Ok(SubnetMode::MeasureCombinations),
            _ => {
                let mut m = BTreeMap::new();
                for part in s.split(',').filter(|p| !p.is_empty()) {
                    let (k, v) = part.split_once('=').ok_or_else(|| {
                        Error::MalformedInput(format!(
                            "mode `{s}`: expected nodes, combinations or NODE=nodes|combinations,..."
                        ))
                    })?;
                    m.insert(k.trim().to_string(), parse_measure(v.trim())?);
                }
                Ok(SubnetMode::Mixed(m))
            }
        }
    }

    fn to_json(&self) -> Value {
        match self {
            SubnetMode::MeasureBNodes => json!("nodes"),
            SubnetMode::MeasureCombinations => json!("combinations"),
            SubnetMode::Mixed(m) => Value::Object(
                m.iter()
                    .map(|(k, v)| {
                        let s = if *v == MeasureMode::Node { "nodes" } else { "combinations" };
                        (k.clone(), json!(s))
                    })
                    .collect(),
            ),
        }
    }
}

fn parse_measure(v: &str) -> Result<MeasureMode> {
    match v {
        "nodes" | "node" => Ok(MeasureMode::Node),
        "combinations" | "combination" => Ok(MeasureMode::Combinations),
        _ => Err(Error::MalformedInput(format!("unknown measurement mode `{v}`"))),
    }
}

/// Optional identification defaults carried by a network file.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Identification {
    pub a_nodes: Option<Vec<String>>,
    pub mode: Option<SubnetMode>,
    /// Input labels of the closed-loop columns to keep.
    pub gc_columns: Option<Vec<String>>,
    /// `(output label, input label)` closed-loop entries to keep.
    pub gc_entries: Option<Vec<(String, String)>>,
}

impl Identification {
    pub fn is_empty(&self) -> bool {
        *self == Identification::default()
    }
}

/// A validated network description `P w = Qr r + Qe e`,
/// `y = Ry w + Syr r + Sye e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkSpec {
    pub name: String,
    pub n: usize,
    pub m_r: usize,
    pub m_e: usize,
    pub p_y: usize,
    pub labels: Labels,
    pub p: Grid,
    pub qr: Grid,
    pub qe: Grid,
    pub ry: Grid,
    pub syr: Grid,
    pub sye: Grid,
    pub constraints: Vec<String>,
    pub knowns: Vec<(String, Rational)>,
    pub assumptions: Assumptions,
    pub identification: Identification,
    /// Informational findings, e.g. shared free names.
    pub notices: Vec<String>,
}

impl NetworkSpec {
    pub fn from_json(src: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(src).map_err(|e| Error::Parse {
            offset: e.column(),
            message: format!("line {}: {e}", e.line()),
        })?;
        validate_spec(&v)
    }

    pub fn grids(&self) -> [(&'static str, &Grid); 6] {
        [
            ("P", &self.p),
            ("Qr", &self.qr),
            ("Qe", &self.qe),
            ("Ry", &self.ry),
            ("Syr", &self.syr),
            ("Sye", &self.sye),
        ]
    }

    fn grids_mut(&mut self) -> [&mut Grid; 6] {
        [
            &mut self.p,
            &mut self.qr,
            &mut self.qe,
            &mut self.ry,
            &mut self.syr,
            &mut self.sye,
        ]
    }

    /// Every free name, in first-appearance order over all grids.
    pub fn free_names(&self) -> Vec<String> {
        names_in(self.grids().iter().map(|(_, g)| *g))
    }

    /// Names of the free entries of `(P, Qr, Ry, Syr)` that are not known:
    /// the unknowns of the identification problem.
    pub fn x_names(&self) -> Vec<String> {
        let known: BTreeSet<&str> = self.knowns.iter().map(|(k, _)| k.as_str()).collect();
        names_in([&self.p, &self.qr, &self.ry, &self.syr])
            .into_iter()
            .filter(|n| !known.contains(n.as_str()))
            .collect()
    }

    /// The spec with every known name replaced by its value. Knowns stay
    /// listed so that constraints can be substituted too.
    pub fn with_knowns_applied(&self) -> NetworkSpec {
        let mut s = self.clone();
        let knowns = self.knowns.clone();
        for g in s.grids_mut() {
            for row in g.iter_mut() {
                for e in row.iter_mut() {
                    for (k, v) in &knowns {
                        *e = e.substitute(k, v);
                    }
                }
            }
        }
        s
    }

    pub fn known_value(&self, name: &str) -> Option<&Rational> {
        self.knowns.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    /// Canonical JSON document; reparses to an equal spec.
    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        let mut fields: Vec<String> = Vec::new();
        fields.push(format!("  \"name\": {}", json!(self.name)));
        fields.push(format!(
            "  \"dims\": {}",
            json!({"n": self.n, "m_r": self.m_r, "m_e": self.m_e, "p_y": self.p_y})
        ));
        fields.push(format!(
            "  \"labels\": {}",
            json!({"nodes": self.labels.nodes, "r": self.labels.r, "e": self.labels.e, "y": self.labels.y})
        ));
        for (name, g) in self.grids() {
            let rows: Vec<String> = g
                .iter()
                .map(|row| {
                    let v = Value::Array(row.iter().map(EntrySpec::to_json).collect());
                    format!("    {v}")
                })
                .collect();
            if rows.is_empty() {
                fields.push(format!("  \"{name}\": []"));
            } else {
                fields.push(format!("  \"{name}\": [\n{}\n  ]", rows.join(",\n")));
            }
        }
        fields.push(format!("  \"constraints\": {}", json!(self.constraints)));
        let knowns: Map<String, Value> = self
            .knowns
            .iter()
            .map(|(k, v)| (k.clone(), json!(v.to_string())))
            .collect();
        fields.push(format!("  \"knowns\": {}", Value::Object(knowns)));
        fields.push(format!(
            "  \"assumptions\": {}",
            json!({"input_spectrum_positive_definite": self.assumptions.input_spectrum_positive_definite})
        ));
        if !self.identification.is_empty() {
            let id = &self.identification;
            let mut m = Map::new();
            if let Some(a) = &id.a_nodes {
                m.insert("a_nodes".into(), json!(a));
            }
            if let Some(mode) = &id.mode {
                m.insert("mode".into(), mode.to_json());
            }
            if let Some(c) = &id.gc_columns {
                m.insert("gc_columns".into(), json!(c));
            }
            if let Some(e) = &id.gc_entries {
                m.insert("gc_entries".into(), json!(e));
            }
            fields.push(format!("  \"identification\": {}", Value::Object(m)));
        }
        out.push_str(&fields.join(",\n"));
        out.push_str("\n}\n");
        out
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }
}

fn names_in<'a>(grids: impl IntoIterator<Item = &'a Grid>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in grids {
        for row in g {
            for e in row {
                if let Some(n) = e.free_name() {
                    if seen.insert(n.to_string()) {
                        out.push(n.to_string());
                    }
                }
            }
        }
    }
    out
}

fn dim(v: &Value, key: &str, errs: &mut Vec<String>) -> usize {
    match v.get("dims").and_then(|d| d.get(key)) {
        Some(x) => match x.as_u64() {
            Some(k) => k as usize,
            None => {
                errs.push(format!("dims.{key} must be a non-negative integer"));
                0
            }
        },
        None => {
            errs.push(format!("dims.{key} missing"));
            0
        }
    }
}

fn string_list(v: Option<&Value>, what: &str, errs: &mut Vec<String>) -> Option<Vec<String>> {
    let v = v?;
    match v.as_array() {
        Some(a) => {
            let mut out = Vec::new();
            for x in a {
                match x.as_str() {
                    Some(s) => out.push(s.to_string()),
                    None => errs.push(format!("{what}: expected a string, got {x}")),
                }
            }
            Some(out)
        }
        None => {
            errs.push(format!("{what} must be a list of strings"));
            None
        }
    }
}

fn grid(v: &Value, name: &str, rows: usize, cols: usize, required: bool, errs: &mut Vec<String>) -> Grid {
    let Some(g) = v.get(name) else {
        if required && rows * cols > 0 {
            errs.push(format!("block {name} missing (expected {rows}x{cols})"));
        }
        return zero_grid(rows, cols);
    };
    let Some(a) = g.as_array() else {
        errs.push(format!("block {name} must be a list of rows"));
        return zero_grid(rows, cols);
    };
    let ncols: Vec<usize> = a.iter().map(|r| r.as_array().map_or(usize::MAX, |x| x.len())).collect();
    if a.len() != rows || ncols.iter().any(|&c| c != cols) {
        let shape = if ncols.iter().all(|&c| c == ncols.first().copied().unwrap_or(0)) {
            format!("{}x{}", a.len(), ncols.first().map_or(0, |c| if *c == usize::MAX { 0 } else { *c }))
        } else {
            format!("{} ragged rows", a.len())
        };
        errs.push(format!("block {name} is {shape}, expected {rows}x{cols}"));
        return zero_grid(rows, cols);
    }
    let mut out = Vec::with_capacity(rows);
    for (i, r) in a.iter().enumerate() {
        let mut row = Vec::with_capacity(cols);
        for (j, x) in r.as_array().unwrap().iter().enumerate() {
            match EntrySpec::from_json(x) {
                Ok(e) => row.push(e),
                Err(m) => {
                    errs.push(format!("{name}[{}][{}]: {m}", i + 1, j + 1));
                    row.push(EntrySpec::Zero);
                }
            }
        }
        out.push(row);
    }
    out
}

/// Default output label: the node a unit row of `Ry` picks out, when the
/// output has no direct feedthrough.
fn derived_y_label(i: usize, ry: &Grid, syr: &Grid, sye: &Grid, nodes: &[String]) -> String {
    let nz: Vec<usize> = (0..ry[i].len()).filter(|&j| !ry[i][j].is_zero()).collect();
    let direct = syr[i].iter().chain(&sye[i]).any(|e| !e.is_zero());
    if nz.len() == 1 && ry[i][nz[0]] == EntrySpec::One && !direct {
        nodes[nz[0]].clone()
    } else {
        format!("y{}", i + 1)
    }
}

/// Checks a parsed network document and collects every violation.
pub fn validate_spec(v: &Value) -> Result<NetworkSpec> {
    let mut errs = Vec::new();
    if !v.is_object() {
        return Err(Error::Validation(vec!["network file must be a JSON object".into()]));
    }
    let known_keys = [
        "name", "dims", "labels", "P", "Qr", "Qe", "Ry", "Syr", "Sye", "constraints", "knowns",
        "assumptions", "identification",
    ];
    for k in v.as_object().unwrap().keys() {
        if !known_keys.contains(&k.as_str()) {
            errs.push(format!("unknown top-level key {k:?}"));
        }
    }
    let n = dim(v, "n", &mut errs);
    let m_r = dim(v, "m_r", &mut errs);
    let m_e = dim(v, "m_e", &mut errs);
    let p_y = dim(v, "p_y", &mut errs);
    if n == 0 {
        errs.push("dims.n must be positive".into());
    }
    let p = grid(v, "P", n, n, true, &mut errs);
    let qr = grid(v, "Qr", n, m_r, true, &mut errs);
    let qe = grid(v, "Qe", n, m_e, false, &mut errs);
    let ry = grid(v, "Ry", p_y, n, true, &mut errs);
    let syr = grid(v, "Syr", p_y, m_r, false, &mut errs);
    let sye = grid(v, "Sye", p_y, m_e, false, &mut errs);

    let lab = v.get("labels");
    let label_list = |key: &str, len: usize, prefix: &str, errs: &mut Vec<String>| {
        match string_list(lab.and_then(|l| l.get(key)), &format!("labels.{key}"), errs) {
            Some(l) if l.len() != len => {
                errs.push(format!("labels.{key} has {} names, expected {len}", l.len()));
                (1..=len).map(|i| format!("{prefix}{i}")).collect()
            }
            Some(l) => l,
            None => (1..=len).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>(),
        }
    };
    let nodes = label_list("nodes", n, "w", &mut errs);
    let r = label_list("r", m_r, "r", &mut errs);
    let e = label_list("e", m_e, "e", &mut errs);
    let y = match string_list(lab.and_then(|l| l.get("y")), "labels.y", &mut errs) {
        Some(l) if l.len() == p_y => l,
        Some(l) => {
            errs.push(format!("labels.y has {} names, expected {p_y}", l.len()));
            (1..=p_y).map(|i| format!("y{i}")).collect()
        }
        None if errs.is_empty() => (0..p_y)
            .map(|i| derived_y_label(i, &ry, &syr, &sye, &nodes))
            .collect(),
        None => (1..=p_y).map(|i| format!("y{i}")).collect(),
    };
    for l in nodes.iter().chain(&r).chain(&e).chain(&y) {
        if !is_identifier(l) {
            errs.push(format!("label {l:?} is not an identifier"));
        }
    }
    let mut seen = BTreeSet::new();
    for l in nodes.iter().chain(&r).chain(&e) {
        if !seen.insert(l) {
            errs.push(format!("signal label {l:?} used twice"));
        }
    }
    let mut seen = BTreeSet::new();
    for l in y.iter().chain(&r) {
        if !seen.insert(l) {
            errs.push(format!("predictor row label {l:?} used twice"));
        }
    }

    let mut spec = NetworkSpec {
        name: v.get("name").and_then(Value::as_str).unwrap_or("network").to_string(),
        n,
        m_r,
        m_e,
        p_y,
        labels: Labels { nodes, r, e, y },
        p,
        qr,
        qe,
        ry,
        syr,
        sye,
        constraints: Vec::new(),
        knowns: Vec::new(),
        assumptions: Assumptions::default(),
        identification: Identification::default(),
        notices: Vec::new(),
    };
    let registry: BTreeSet<String> = spec.free_names().into_iter().collect();

    let mut positions: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    for (gname, g) in spec.grids() {
        for (i, row) in g.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if let Some(nm) = x.free_name() {
                    positions.entry(nm).or_default().push(format!("{gname}[{}][{}]", i + 1, j + 1));
                }
            }
        }
    }
    let notices: Vec<String> = positions
        .iter()
        .filter(|(_, p)| p.len() > 1)
        .map(|(nm, p)| format!("shared entry: {nm} appears at {}", p.join(", ")))
        .collect();
    spec.notices = notices;

    if let Some(c) = string_list(v.get("constraints"), "constraints", &mut errs) {
        for s in &c {
            match Expr::parse(s) {
                Ok(expr) => {
                    for id in expr.identifiers() {
                        if !registry.contains(&id) {
                            errs.push(format!("constraint {s:?}: unknown variable {id}"));
                        }
                    }
                }
                Err(e) => errs.push(format!("constraint {s:?}: {e}")),
            }
        }
        spec.constraints = c;
    }
    match v.get("knowns") {
        None => {}
        Some(Value::Object(m)) => {
            for (k, x) in m {
                if !registry.contains(k) {
                    errs.push(format!("known {k:?} is not a free entry"));
                }
                let parsed = match x {
                    Value::String(s) => parse_rational_constant(s).map_err(|e| e.to_string()),
                    Value::Number(num) => num
                        .as_i64()
                        .map(|i| Rational::from_integer(i.into()))
                        .ok_or_else(|| format!("non-integer {num}")),
                    other => Err(format!("unsupported value {other}")),
                };
                match parsed {
                    Ok(q) => spec.knowns.push((k.clone(), q)),
                    Err(m) => errs.push(format!("known {k:?}: malformed rational constant: {m}")),
                }
            }
        }
        Some(_) => errs.push("knowns must be an object of name: value".into()),
    }
    if let Some(a) = v.get("assumptions") {
        match a.get("input_spectrum_positive_definite") {
            None => {}
            Some(Value::Bool(b)) => spec.assumptions.input_spectrum_positive_definite = *b,
            Some(x) => errs.push(format!("assumptions.input_spectrum_positive_definite must be a boolean, got {x}")),
        }
    }
    if let Some(id) = v.get("identification") {
        let ident = &mut spec.identification;
        ident.a_nodes = string_list(id.get("a_nodes"), "identification.a_nodes", &mut errs);
        if let Some(a) = &ident.a_nodes {
            if a.is_empty() {
                errs.push("identification.a_nodes is empty".into());
            }
            for x in a {
                if !spec.labels.nodes.contains(x) {
                    errs.push(format!("identification.a_nodes: unknown node {x:?}"));
                }
            }
        }
        match id.get("mode") {
            None => {}
            Some(Value::String(s)) => match SubnetMode::parse(s) {
                Ok(m) => ident.mode = Some(m),
                Err(e) => errs.push(format!("identification.mode: {e}")),
            },
            Some(Value::Object(m)) => {
                let mut out = BTreeMap::new();
                for (k, x) in m {
                    if !spec.labels.nodes.contains(k) {
                        errs.push(format!("identification.mode: unknown node {k:?}"));
                    }
                    match x.as_str().map(parse_measure) {
                        Some(Ok(mm)) => {
                            out.insert(k.clone(), mm);
                        }
                        _ => errs.push(format!("identification.mode.{k}: expected \"nodes\" or \"combinations\"")),
                    }
                }
                ident.mode = Some(SubnetMode::Mixed(out));
            }
            Some(x) => errs.push(format!("identification.mode: unsupported value {x}")),
        }
        ident.gc_columns = string_list(id.get("gc_columns"), "identification.gc_columns", &mut errs);
        if let Some(x) = id.get("gc_entries") {
            let mut out = Vec::new();
            match x.as_array() {
                Some(a) => {
                    for pair in a {
                        match pair.as_array().map(|p| p.iter().map(Value::as_str).collect::<Vec<_>>()) {
                            Some(p) if p.len() == 2 && p.iter().all(Option::is_some) => {
                                out.push((p[0].unwrap().to_string(), p[1].unwrap().to_string()))
                            }
                            _ => errs.push(format!("identification.gc_entries: expected [output, input], got {pair}")),
                        }
                    }
                }
                None => errs.push("identification.gc_entries must be a list".into()),
            }
            ident.gc_entries = Some(out);
        }
    }
    if errs.is_empty() {
        Ok(spec)
    } else {
        Err(Error::Validation(errs))
    }
}
