//! The model JSON document and its loading paths: a file, standard input
//! (`-`), or a named built-in table.

use std::io::Read;

use serde::{Deserialize, Serialize};
use typea_core::{CanonicalModel, ChristoffelSymbols, ModelKind};

use crate::error::{CliError, CliResult};

/// JSON document for a symbol table. The keys make the lower-index symmetry
/// unrepresentable; unknown keys are rejected.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub christoffel: ChristoffelTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChristoffelTable {
    #[serde(rename = "111")]
    pub c111: f64,
    #[serde(rename = "112")]
    pub c112: f64,
    #[serde(rename = "121")]
    pub c121: f64,
    #[serde(rename = "122")]
    pub c122: f64,
    #[serde(rename = "221")]
    pub c221: f64,
    #[serde(rename = "222")]
    pub c222: f64,
}

impl ModelDocument {
    pub fn from_symbols(c: &ChristoffelSymbols, name: Option<String>) -> Self {
        let [c111, c112, c121, c122, c221, c222] = c.components();
        ModelDocument {
            christoffel: ChristoffelTable {
                c111,
                c112,
                c121,
                c122,
                c221,
                c222,
            },
            name,
        }
    }

    pub fn symbols(&self) -> CliResult<ChristoffelSymbols> {
        let t = &self.christoffel;
        Ok(ChristoffelSymbols::new(
            t.c111, t.c112, t.c121, t.c122, t.c221, t.c222,
        )?)
    }
}

fn parse_builtin(spec: &str) -> CliResult<CanonicalModel> {
    if let Some(delta) = spec.strip_prefix("m-plus:") {
        let d: f64 = delta
            .parse()
            .map_err(|_| CliError::Input(format!("bad delta in builtin model {spec:?}")))?;
        return Ok(CanonicalModel::MPlus(d));
    }
    if let Some(delta) = spec.strip_prefix("m-minus:") {
        let d: f64 = delta
            .parse()
            .map_err(|_| CliError::Input(format!("bad delta in builtin model {spec:?}")))?;
        return Ok(CanonicalModel::MMinus(d));
    }
    match spec {
        "m1" => Ok(CanonicalModel::M1),
        "m2" => Ok(CanonicalModel::M2),
        "m3" => Ok(CanonicalModel::M3),
        other => Err(CliError::Input(format!(
            "unknown builtin model {other:?}; use m1, m2, m3, m-plus:<delta>, m-minus:<delta>"
        ))),
    }
}

fn read_document(arg: &str) -> CliResult<ModelDocument> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(arg)
            .map_err(|e| CliError::Input(format!("cannot read model file {arg:?}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

/// Loads a constant model from a path, `-`, or `builtin:<name>`.
pub fn load_constant(arg: &str) -> CliResult<(ChristoffelSymbols, Option<String>)> {
    if let Some(spec) = arg.strip_prefix("builtin:") {
        let model = parse_builtin(spec)?;
        return Ok((model.christoffel()?, Some(spec.to_string())));
    }
    let doc = read_document(arg)?;
    Ok((doc.symbols()?, doc.name))
}

/// Loads a model for integration; also accepts `builtin:m3-tilde`, the
/// variable-coefficient complete cover.
pub fn load_kind(arg: &str) -> CliResult<(ModelKind, Option<String>)> {
    if arg == "builtin:m3-tilde" {
        return Ok((ModelKind::TildeM3, Some("m3-tilde".to_string())));
    }
    let (c, name) = load_constant(arg)?;
    Ok((ModelKind::Constant(c), name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trip_is_canonical() {
        let text = r#"{ "christoffel": {"111": 0.5, "112": -1.0,
            "121": 0.25, "122": 0.0, "221": 2.0, "222": 0.125},
            "name": "sample" }"#;
        let doc: ModelDocument = serde_json::from_str(text).unwrap();
        let canonical = serde_json::to_string(&doc).unwrap();
        let doc2: ModelDocument = serde_json::from_str(&canonical).unwrap();
        assert_eq!(canonical, serde_json::to_string(&doc2).unwrap());
    }

    #[test]
    fn unknown_and_missing_keys_are_rejected() {
        let extra = r#"{"christoffel": {"111":0,"112":0,"121":0,"122":0,"221":0,"222":0,"333":1}}"#;
        assert!(serde_json::from_str::<ModelDocument>(extra).is_err());
        let missing = r#"{"christoffel": {"111":0,"112":0,"121":0,"122":0,"222":0}}"#;
        assert!(serde_json::from_str::<ModelDocument>(missing).is_err());
    }

    #[test]
    fn builtin_names_resolve() {
        assert!(load_constant("builtin:m2").is_ok());
        assert!(load_constant("builtin:m-minus:1.5").is_ok());
        assert!(load_constant("builtin:m-minus:-1").is_err());
        assert!(load_constant("builtin:m9").is_err());
        assert!(load_kind("builtin:m3-tilde").is_ok());
    }
}
