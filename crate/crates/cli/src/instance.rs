//! Instance files: one JSON object holding an element, a measure, a
//! symmetric tensor or a polynomial. The kind is read off the keys.

use std::fmt;
use std::path::Path;

use riesz_lab::forms::{Measure, Polynomial, SymTensor};
use riesz_lab::lattice::Element;
use riesz_lab::localisation::LocalObject;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Instance {
    Element(Element),
    Measure(Measure),
    SymTensor(SymTensor),
    Polynomial(Polynomial),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Element(_) => "element",
            Instance::Measure(_) => "measure",
            Instance::SymTensor(_) => "tensor",
            Instance::Polynomial(_) => "polynomial",
        }
    }

    pub fn into_local(self) -> Option<LocalObject> {
        match self {
            Instance::Element(_) => None,
            Instance::Measure(mu) => Some(LocalObject::Measure(mu)),
            Instance::SymTensor(t) => Some(LocalObject::Tensor(t)),
            Instance::Polynomial(p) => Some(LocalObject::Polynomial(p)),
        }
    }
}

/// Where and why an instance failed to load.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub source: String,
    pub line: usize,
    pub column: usize,
    /// Dotted path to the offending field, empty at the top level.
    pub field: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.source, self.line, self.column)?;
        if !self.field.is_empty() {
            write!(f, ": field `{}`", self.field)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ParseError {}

/// serde_json appends " at line L column C"; keep the message bare.
fn bare_message(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

fn typed<T: DeserializeOwned>(text: &str, source: &str) -> Result<T, ParseError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let result: Result<T, _> = serde_path_to_error::deserialize(&mut de);
    let value = result.map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        ParseError {
            source: source.to_string(),
            line: inner.line(),
            column: inner.column(),
            field: if field == "." { String::new() } else { field },
            message: bare_message(&inner),
        }
    })?;
    de.end().map_err(|e| ParseError {
        source: source.to_string(),
        line: e.line(),
        column: e.column(),
        field: String::new(),
        message: bare_message(&e),
    })?;
    Ok(value)
}

fn detect(obj: &Map<String, Value>) -> Option<&'static str> {
    if obj.contains_key("kind") {
        Some("polynomial")
    } else if obj.contains_key("entries") {
        Some("tensor")
    } else if obj.contains_key("atoms") || obj.contains_key("limit_atom") {
        Some("measure")
    } else if ["values", "prefix", "tail"].iter().any(|k| obj.contains_key(*k)) {
        Some("element")
    } else {
        None
    }
}

/// Parses and validates one instance; `source` names it in diagnostics.
pub fn parse_instance_str(text: &str, source: &str) -> Result<Instance, ParseError> {
    let raw: Value = typed(text, source)?;
    let Value::Object(obj) = &raw else {
        return Err(ParseError {
            source: source.to_string(),
            line: 1,
            column: 1,
            field: String::new(),
            message: "expected a JSON object".into(),
        });
    };
    match detect(obj) {
        Some("polynomial") => typed(text, source).map(Instance::Polynomial),
        Some("tensor") => typed(text, source).map(Instance::SymTensor),
        Some("measure") => typed(text, source).map(Instance::Measure),
        Some(_) => typed(text, source).map(Instance::Element),
        None => Err(ParseError {
            source: source.to_string(),
            line: 1,
            column: 1,
            field: String::new(),
            message: "cannot tell the instance kind: expected a polynomial (\"kind\"), tensor (\"entries\"), \
                      measure (\"atoms\") or element (\"values\"/\"prefix\")"
                .into(),
        }),
    }
}

/// `parseInstanceFile`.
pub fn parse_instance_file(path: &Path) -> Result<Instance, ParseError> {
    let source = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        source: source.clone(),
        line: 0,
        column: 0,
        field: String::new(),
        message: e.to_string(),
    })?;
    parse_instance_str(&text, &source)
}
