//! Strict JSON forms for groups, braces, triples, triplets and extensions,
//! with a byte-stable writer.
//!
//! Wire formats:
//! - group `{"n", "table"}`
//! - brace `{"n", "add", "circ"}`
//! - triple `{"nu", "mu", "sigma"}`, each a list of image arrays
//! - triplet `{"chi", "beta", "tau"}`
//! - extension `{"e", "h", "i", "inj", "proj"}`
//!
//! A file holds either a bare payload or a catalog entry
//! `{"name", "kind", "payload", "provenance", "warnings"}`.

use std::fmt::{self, Write as _};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::brace::SkewBrace;
use crate::extension::{Cochain, Extension, Triplet};
use crate::group::{find_identity, swap_labels, FiniteGroup};
use crate::perm::Perm;
use crate::split::ActionTriple;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("{path}: {detail}")]
    Read { path: String, detail: String },
    #[error("{path}: schema error at `{field}`: {detail}")]
    Schema { path: String, field: String, detail: String },
    #[error("{path}: invalid {kind}: {detail}")]
    Validation { path: String, kind: Kind, detail: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Group,
    Brace,
    Triple,
    Triplet,
    Extension,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Group => "group",
            Kind::Brace => "brace",
            Kind::Triple => "triple",
            Kind::Triplet => "triplet",
            Kind::Extension => "extension",
        })
    }
}

/// Where a fixture comes from: a numbered worked example, a derived
/// micro-fixture, a trivial construction, or user input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Provenance {
    Example(u8),
    Derived,
    Trivial,
    User,
}

impl From<Provenance> for String {
    fn from(p: Provenance) -> String {
        match p {
            Provenance::Example(n) => format!("example-{n}"),
            Provenance::Derived => "derived".into(),
            Provenance::Trivial => "trivial".into(),
            Provenance::User => "user".into(),
        }
    }
}

impl TryFrom<String> for Provenance {
    type Error = String;

    fn try_from(s: String) -> Result<Provenance, String> {
        match s.as_str() {
            "derived" => Ok(Provenance::Derived),
            "trivial" => Ok(Provenance::Trivial),
            "user" => Ok(Provenance::User),
            other => other
                .strip_prefix("example-")
                .and_then(|n| n.parse().ok())
                .map(Provenance::Example)
                .ok_or_else(|| format!("unknown provenance `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Group(FiniteGroup),
    Brace(SkewBrace),
    Triple(ActionTriple),
    Triplet(Triplet),
    Extension(Extension),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::Group(_) => Kind::Group,
            Payload::Brace(_) => Kind::Brace,
            Payload::Triple(_) => Kind::Triple,
            Payload::Triplet(_) => Kind::Triplet,
            Payload::Extension(_) => Kind::Extension,
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Payload::Group(g) => group_value(g),
            Payload::Brace(b) => brace_value(b),
            Payload::Triple(t) => triple_value(t),
            Payload::Triplet(t) => triplet_value(t),
            Payload::Extension(e) => extension_value(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub payload: Payload,
    pub provenance: Provenance,
    /// Notes produced on load, such as identity relabelling.
    pub warnings: Vec<String>,
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, payload: Payload, provenance: Provenance) -> CatalogEntry {
        CatalogEntry { name: name.into(), payload, provenance, warnings: Vec::new() }
    }

    pub fn kind(&self) -> Kind {
        self.payload.kind()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "name": self.name,
            "kind": self.kind(),
            "payload": self.payload.to_value(),
            "provenance": self.provenance,
            "warnings": self.warnings,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupJson {
    n: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BraceJson {
    n: usize,
    add: Vec<Vec<usize>>,
    circ: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleJson {
    nu: Vec<Vec<usize>>,
    mu: Vec<Vec<usize>>,
    sigma: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripletJson {
    chi: TripleJson,
    beta: Vec<Vec<usize>>,
    tau: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionJson {
    e: BraceJson,
    h: BraceJson,
    i: BraceJson,
    inj: Vec<usize>,
    proj: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    name: String,
    kind: Kind,
    payload: Value,
    provenance: Provenance,
    #[serde(default)]
    warnings: Vec<String>,
}

pub fn group_value(g: &FiniteGroup) -> Value {
    json!({ "n": g.order(), "table": g.rows() })
}

pub fn brace_value(b: &SkewBrace) -> Value {
    json!({ "n": b.order(), "add": b.additive().rows(), "circ": b.circle().rows() })
}

fn perms_value(ps: &[Perm]) -> Value {
    json!(ps.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>())
}

pub fn triple_value(t: &ActionTriple) -> Value {
    json!({ "nu": perms_value(&t.nu), "mu": perms_value(&t.mu), "sigma": perms_value(&t.sigma) })
}

pub fn triplet_value(t: &Triplet) -> Value {
    json!({ "chi": triple_value(&t.chi), "beta": t.beta.rows(), "tau": t.tau.rows() })
}

pub fn extension_value(e: &Extension) -> Value {
    json!({
        "e": brace_value(e.e()),
        "h": brace_value(e.h()),
        "i": brace_value(e.i()),
        "inj": e.inj_map(),
        "proj": e.proj_map(),
    })
}

/// Deterministic text: sorted keys, two-space indent, arrays of scalars on
/// one line, trailing newline.
pub fn canonical_string(v: &Value) -> String {
    let mut s = String::new();
    write_value(&mut s, v, 0);
    s.push('\n');
    s
}

fn write_value(s: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) => {
            if map.is_empty() {
                s.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            s.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                let _ = write!(s, "{}{}: ", pad(indent + 1), Value::String((*key).clone()));
                write_value(s, &map[key.as_str()], indent + 1);
                s.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            let _ = write!(s, "{}}}", pad(indent));
        }
        Value::Array(items) => {
            if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
                let _ = write!(s, "[{}]", parts.join(", "));
                return;
            }
            s.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                s.push_str(&pad(indent + 1));
                write_value(s, item, indent + 1);
                s.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(s, "{}]", pad(indent));
        }
        other => s.push_str(&other.to_string()),
    }
}

fn parse<T: DeserializeOwned>(path: &str, prefix: &str, v: Value) -> Result<T, IoError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        let field = match (prefix.is_empty(), inner == ".") {
            (true, _) => inner,
            (false, true) => prefix.to_string(),
            (false, false) => format!("{prefix}.{inner}"),
        };
        IoError::Schema { path: path.into(), field, detail: e.into_inner().to_string() }
    })
}

fn schema(path: &str, field: impl Into<String>, detail: impl Into<String>) -> IoError {
    IoError::Schema { path: path.into(), field: field.into(), detail: detail.into() }
}

fn check_square(path: &str, field: &str, n: usize, rows: &[Vec<usize>]) -> Result<(), IoError> {
    if rows.len() != n {
        return Err(schema(path, field, format!("expected {n} rows, found {}", rows.len())));
    }
    if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
        return Err(schema(path, format!("{field}[{r}]"), format!("expected {n} entries, found {}", row.len())));
    }
    if let Some(bad) = rows.iter().flatten().find(|&&x| x >= n) {
        return Err(schema(path, field, format!("entry {bad} is out of range 0..{n}")));
    }
    Ok(())
}

/// Moves the identity of a table to label 0; returns the swap if one was needed.
fn normalize_identity(path: &str, field: &str, rows: &[Vec<usize>]) -> Result<(Vec<Vec<usize>>, Option<usize>), IoError> {
    let e = find_identity(rows).ok_or_else(|| schema(path, field, "table has no identity element"))?;
    if e == 0 {
        Ok((rows.to_vec(), None))
    } else {
        Ok((swap_labels(rows, e), Some(e)))
    }
}

fn swap_perm(n: usize, e: Option<usize>) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    if let Some(e) = e {
        images.swap(0, e);
    }
    Perm::from_images(images).expect("transposition")
}

fn build_group(path: &str, field: &str, g: GroupJson, warnings: &mut Vec<String>) -> Result<FiniteGroup, IoError> {
    check_square(path, &format!("{field}table"), g.n, &g.table)?;
    let (rows, swapped) = normalize_identity(path, &format!("{field}table"), &g.table)?;
    if let Some(e) = swapped {
        warnings.push(format!("{field}table: identity was element {e}; labels 0 and {e} swapped"));
    }
    FiniteGroup::from_table(&rows)
        .map_err(|err| IoError::Validation { path: path.into(), kind: Kind::Group, detail: err.to_string() })
}

/// Returns the brace with its identity at 0 and the relabelling applied.
fn build_brace(path: &str, field: &str, b: BraceJson, warnings: &mut Vec<String>) -> Result<(SkewBrace, Perm), IoError> {
    check_square(path, &format!("{field}add"), b.n, &b.add)?;
    check_square(path, &format!("{field}circ"), b.n, &b.circ)?;
    let e_add = find_identity(&b.add).ok_or_else(|| schema(path, format!("{field}add"), "table has no identity element"))?;
    let e_circ = find_identity(&b.circ).ok_or_else(|| schema(path, format!("{field}circ"), "table has no identity element"))?;
    if e_add != e_circ {
        return Err(IoError::Validation {
            path: path.into(),
            kind: Kind::Brace,
            detail: format!("identities differ: {e_add} for +, {e_circ} for ∘"),
        });
    }
    let swapped = (e_add != 0).then_some(e_add);
    let (add, circ) = match swapped {
        Some(e) => {
            warnings.push(format!("{field}: identity was element {e}; labels 0 and {e} swapped"));
            (swap_labels(&b.add, e), swap_labels(&b.circ, e))
        }
        None => (b.add, b.circ),
    };
    let brace = SkewBrace::from_tables(&add, &circ)
        .map_err(|err| IoError::Validation { path: path.into(), kind: Kind::Brace, detail: err.to_string() })?;
    Ok((brace, swap_perm(b.n, swapped)))
}

fn build_perms(path: &str, field: &str, rows: Vec<Vec<usize>>) -> Result<Vec<Perm>, IoError> {
    rows.into_iter()
        .enumerate()
        .map(|(k, r)| Perm::from_images(r).ok_or_else(|| schema(path, format!("{field}[{k}]"), "not a permutation")))
        .collect()
}

fn build_triple(path: &str, field: &str, t: TripleJson) -> Result<ActionTriple, IoError> {
    let triple = ActionTriple {
        nu: build_perms(path, &format!("{field}nu"), t.nu)?,
        mu: build_perms(path, &format!("{field}mu"), t.mu)?,
        sigma: build_perms(path, &format!("{field}sigma"), t.sigma)?,
    };
    let (hn, deg) = (triple.nu.len(), triple.nu.first().map(Perm::degree).unwrap_or(0));
    for (name, c) in [("mu", &triple.mu), ("sigma", &triple.sigma), ("nu", &triple.nu)] {
        if c.len() != hn || c.iter().any(|p| p.degree() != deg) {
            return Err(schema(path, format!("{field}{name}"), "components must share length and degree"));
        }
    }
    Ok(triple)
}

fn build_triplet(path: &str, t: TripletJson) -> Result<Triplet, IoError> {
    let chi = build_triple(path, "chi.", t.chi)?;
    let n = chi.nu.len();
    let cochain = |field: &str, rows: Vec<Vec<usize>>| -> Result<Cochain, IoError> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(schema(path, field, format!("expected a {n}×{n} array")));
        }
        Ok(Cochain::from_rows(&rows).expect("square"))
    };
    Ok(Triplet { beta: cochain("beta", t.beta)?, tau: cochain("tau", t.tau)?, chi })
}

fn build_extension(path: &str, x: ExtensionJson, warnings: &mut Vec<String>) -> Result<Extension, IoError> {
    let (e, pe) = build_brace(path, "e.", x.e, warnings)?;
    let (h, ph) = build_brace(path, "h.", x.h, warnings)?;
    let (i, pi) = build_brace(path, "i.", x.i, warnings)?;
    if x.inj.len() != i.order() || x.inj.iter().any(|&v| v >= e.order()) {
        return Err(schema(path, "inj", "must map every element of I into E"));
    }
    if x.proj.len() != e.order() || x.proj.iter().any(|&v| v >= h.order()) {
        return Err(schema(path, "proj", "must map every element of E into H"));
    }
    let mut inj = vec![0; i.order()];
    for (y, &v) in x.inj.iter().enumerate() {
        inj[pi.apply(y)] = pe.apply(v);
    }
    let mut proj = vec![0; e.order()];
    for (v, &p) in x.proj.iter().enumerate() {
        proj[pe.apply(v)] = ph.apply(p);
    }
    Extension::new(e, h, i, inj, proj)
        .map_err(|err| IoError::Validation { path: path.into(), kind: Kind::Extension, detail: err.to_string() })
}

fn infer_kind(v: &Value) -> Option<Kind> {
    let obj = v.as_object()?;
    let has = |k: &str| obj.contains_key(k);
    if has("table") {
        Some(Kind::Group)
    } else if has("add") || has("circ") {
        Some(Kind::Brace)
    } else if has("chi") {
        Some(Kind::Triplet)
    } else if has("nu") {
        Some(Kind::Triple)
    } else if has("inj") || has("proj") || has("e") {
        Some(Kind::Extension)
    } else {
        None
    }
}

/// Parses a payload of the given kind from a JSON value.
pub fn payload_from_value(path: &str, kind: Kind, v: Value, warnings: &mut Vec<String>) -> Result<Payload, IoError> {
    Ok(match kind {
        Kind::Group => Payload::Group(build_group(path, "", parse(path, "", v)?, warnings)?),
        Kind::Brace => Payload::Brace(build_brace(path, "", parse(path, "", v)?, warnings)?.0),
        Kind::Triple => Payload::Triple(build_triple(path, "", parse(path, "", v)?)?),
        Kind::Triplet => Payload::Triplet(build_triplet(path, parse(path, "", v)?)?),
        Kind::Extension => Payload::Extension(build_extension(path, parse(path, "", v)?, warnings)?),
    })
}

/// Parses a catalog entry or a bare payload from text.
pub fn entry_from_str(path: &str, text: &str) -> Result<CatalogEntry, IoError> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema(path, ".", e.to_string()))?;
    let is_entry = v.as_object().is_some_and(|o| o.contains_key("kind") && o.contains_key("payload"));
    if is_entry {
        let entry: EntryJson = parse(path, "", v)?;
        let mut warnings = entry.warnings;
        let payload = payload_from_value(path, entry.kind, entry.payload, &mut warnings)?;
        return Ok(CatalogEntry { name: entry.name, payload, provenance: entry.provenance, warnings });
    }
    let kind = infer_kind(&v).ok_or_else(|| schema(path, ".", "cannot determine the kind of this document"))?;
    let mut warnings = Vec::new();
    let payload = payload_from_value(path, kind, v, &mut warnings)?;
    let name = Path::new(path).file_stem().and_then(|s| s.to_str()).unwrap_or("unnamed").to_string();
    Ok(CatalogEntry { name, payload, provenance: Provenance::User, warnings })
}

pub fn load(path: &Path) -> Result<CatalogEntry, IoError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read { path: shown.clone(), detail: e.to_string() })?;
    entry_from_str(&shown, &text)
}

/// Loads a file and requires a particular kind.
pub fn load_as(path: &Path, kind: Kind) -> Result<CatalogEntry, IoError> {
    let entry = load(path)?;
    if entry.kind() != kind {
        return Err(schema(&path.display().to_string(), "kind", format!("expected {kind}, found {}", entry.kind())));
    }
    Ok(entry)
}

pub fn save(entry: &CatalogEntry, path: &Path) -> Result<(), IoError> {
    std::fs::write(path, canonical_string(&entry.to_value()))
        .map_err(|e| IoError::Read { path: path.display().to_string(), detail: e.to_string() })
}

/// Writes a bare payload.
pub fn save_payload(payload: &Payload, path: &Path) -> Result<(), IoError> {
    std::fs::write(path, canonical_string(&payload.to_value()))
        .map_err(|e| IoError::Read { path: path.display().to_string(), detail: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn round_trip(entry: &CatalogEntry) {
        let text = canonical_string(&entry.to_value());
        let back = entry_from_str("mem", &text).unwrap();
        assert_eq!(&back, entry);
        assert_eq!(canonical_string(&back.to_value()), text);
    }

    #[test]
    fn fixtures_round_trip_byte_identically() {
        round_trip(&CatalogEntry::new("z4", Payload::Group(FiniteGroup::cyclic(4)), Provenance::Trivial));
        round_trip(&CatalogEntry::new("b", Payload::Brace(catalog::s3_z6_brace()), Provenance::Example(3)));
        round_trip(&CatalogEntry::new("t", Payload::Triple(catalog::example3_triple()), Provenance::Example(3)));
        for (name, ext) in catalog::extension_fixtures() {
            let t = crate::extension::triplet(&ext, &ext.canonical_section());
            round_trip(&CatalogEntry::new(name, Payload::Triplet(t), Provenance::Derived));
            round_trip(&CatalogEntry::new(name, Payload::Extension(ext), Provenance::Derived));
        }
    }

    #[test]
    fn identity_not_at_zero_is_relabelled() {
        // Z2 with identity at label 1.
        let text = r#"{"n": 2, "table": [[1, 0], [0, 1]]}"#;
        let entry = entry_from_str("g.json", text).unwrap();
        assert_eq!(entry.payload, Payload::Group(FiniteGroup::cyclic(2)));
        assert_eq!(entry.warnings.len(), 1);
        let text = r#"{"n": 2, "add": [[1, 0], [0, 1]], "circ": [[1, 0], [0, 1]]}"#;
        let entry = entry_from_str("b.json", text).unwrap();
        assert_eq!(entry.payload, Payload::Brace(catalog::trivial_brace(2)));
        assert!(entry.warnings[0].contains("swapped"));
    }

    #[test]
    fn malformed_inputs_are_schema_errors() {
        let err = entry_from_str("g.json", r#"{"n": 2, "table": [[0, 1]]}"#).unwrap_err();
        assert!(matches!(err, IoError::Schema { ref field, .. } if field == "table"));
        let err = entry_from_str("g.json", r#"{"n": 2, "table": [[0, 1], [1, 0]], "extra": 1}"#).unwrap_err();
        assert!(matches!(err, IoError::Schema { .. }), "{err}");
        let err = entry_from_str("g.json", r#"{"n": 2, "table": [[0, "x"], [1, 0]]}"#).unwrap_err();
        assert!(matches!(err, IoError::Schema { ref field, .. } if field.starts_with("table")), "{err}");
        let err = entry_from_str("b.json", r#"{"n": 2, "add": [[0, 1], [1, 0]], "circ": [[0, 1], [1, 1]]}"#).unwrap_err();
        assert!(matches!(err, IoError::Validation { kind: Kind::Brace, .. }), "{err}");
        let err = entry_from_str("x.json", r#"{"foo": 1}"#).unwrap_err();
        assert!(matches!(err, IoError::Schema { .. }));
    }

    #[test]
    fn provenance_strings() {
        for p in [Provenance::Example(5), Provenance::Derived, Provenance::Trivial, Provenance::User] {
            assert_eq!(Provenance::try_from(String::from(p.clone())).unwrap(), p);
        }
        assert!(Provenance::try_from("elsewhere".to_string()).is_err());
    }
}
