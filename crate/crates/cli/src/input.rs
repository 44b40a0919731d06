//! Space definitions, built-in aliases and matrix arguments.

use std::path::Path;

use numindex_core::scalar::parse_rational;
use numindex_core::{FloatMatrix, Operator, RatMatrix, Rational, Space};
use serde_json::Value;

use crate::CliError;

/// A parsed space plus any warnings raised while canonicalizing it.
pub struct LoadedSpace {
    pub space: Space,
    pub warnings: Vec<String>,
}

fn schema(source: &str, field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{source}: field `{field}`: {msg}"))
}

fn parse_alias(arg: &str) -> Option<Result<Space, CliError>> {
    let parts: Vec<&str> = arg.split(':').collect();
    let dim = |s: &str| s.parse::<usize>().map_err(|_| CliError::Input(format!("alias `{arg}`: bad dimension `{s}`")));
    let result = match parts.as_slice() {
        ["octagon"] => Ok(Space::octagon()),
        ["linf", n] => dim(n).and_then(|n| Space::linf(n).map_err(CliError::from)),
        ["l1", n] => dim(n).and_then(|n| Space::l1(n).map_err(CliError::from)),
        ["l2", n] => dim(n).and_then(|n| Space::lp(n, 2.0).map_err(CliError::from)),
        ["lp", n, p] => dim(n).and_then(|n| {
            let p = parse_p(p).ok_or_else(|| CliError::Input(format!("alias `{arg}`: bad exponent `{p}`")))?;
            Space::lp(n, p).map_err(CliError::from)
        }),
        _ => return None,
    };
    Some(result)
}

fn parse_p(s: &str) -> Option<f64> {
    match s {
        "inf" | "infinity" => Some(f64::INFINITY),
        _ => s.parse::<f64>().ok().filter(|p| p.is_finite()),
    }
}

/// Resolves a built-in alias or reads a space definition file.
pub fn load_space(arg: &str, symmetrize: bool) -> Result<LoadedSpace, CliError> {
    if let Some(space) = parse_alias(arg) {
        return Ok(LoadedSpace { space: space?, warnings: Vec::new() });
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("space");
    parse_space_json(&text, arg, stem, symmetrize)
}

fn rational_field(v: &Value, source: &str, field: &str) -> Result<Rational, CliError> {
    let parsed = match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => None,
    };
    parsed.ok_or_else(|| schema(source, field, format!("expected a rational (\"p/q\" or integer), got {v}")))
}

/// Parses a space definition document. `source` labels diagnostics.
pub fn parse_space_json(text: &str, source: &str, default_name: &str, symmetrize: bool) -> Result<LoadedSpace, CliError> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("{source}: line {}, column {}: {e}", e.line(), e.column())))?;
    let obj = doc.as_object().ok_or_else(|| CliError::Input(format!("{source}: top level must be an object")))?;

    let name = match obj.get("name") {
        None => default_name.to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => return Err(schema(source, "name", format!("expected a string, got {other}"))),
    };
    let dim = obj
        .get("dim")
        .ok_or_else(|| schema(source, "dim", "missing"))?
        .as_u64()
        .filter(|&d| d > 0)
        .ok_or_else(|| schema(source, "dim", "expected a positive integer"))? as usize;
    let kind = obj
        .get("kind")
        .ok_or_else(|| schema(source, "kind", "missing"))?
        .as_str()
        .ok_or_else(|| schema(source, "kind", "expected \"polytope\" or \"lp\""))?;
    let symmetrize = symmetrize || obj.get("symmetrize").and_then(Value::as_bool).unwrap_or(false);

    match kind {
        "lp" => {
            let p = match obj.get("p") {
                Some(Value::Number(n)) => n.as_f64(),
                Some(Value::String(s)) => parse_p(s),
                Some(_) => None,
                None => return Err(schema(source, "p", "required when kind is \"lp\"")),
            }
            .ok_or_else(|| schema(source, "p", "expected a number or \"inf\""))?;
            let space = Space::lp(dim, p).map_err(|e| schema(source, "p", e))?;
            Ok(LoadedSpace { space: space.renamed(name), warnings: Vec::new() })
        }
        "polytope" => {
            let rows = obj
                .get("vertices")
                .ok_or_else(|| schema(source, "vertices", "required when kind is \"polytope\""))?
                .as_array()
                .ok_or_else(|| schema(source, "vertices", "expected an array of points"))?;
            let mut vertices = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let field = format!("vertices[{i}]");
                let coords = row.as_array().ok_or_else(|| schema(source, &field, "expected an array"))?;
                if coords.len() != dim {
                    return Err(schema(source, &field, format!("has {} coordinates, dim is {dim}", coords.len())));
                }
                let point = coords
                    .iter()
                    .enumerate()
                    .map(|(j, c)| rational_field(c, source, &format!("vertices[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                vertices.push(point);
            }
            if symmetrize {
                let (space, added) = Space::polytope_symmetrized(name, vertices).map_err(|e| schema(source, "vertices", e))?;
                let warnings = if added {
                    vec![format!("{source}: vertex set completed by negation closure")]
                } else {
                    Vec::new()
                };
                Ok(LoadedSpace { space, warnings })
            } else {
                let space = Space::polytope(name, vertices).map_err(|e| schema(source, "vertices", e))?;
                Ok(LoadedSpace { space, warnings: Vec::new() })
            }
        }
        other => Err(schema(source, "kind", format!("unknown kind `{other}`"))),
    }
}

/// Reads a matrix from a file path or an inline JSON array. Any float entry
/// turns the operator into a floating one.
pub fn load_matrix(arg: &str) -> Result<Operator, CliError> {
    let (text, source) = if Path::new(arg).is_file() {
        (std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?, arg.to_string())
    } else {
        (arg.to_string(), "inline matrix".to_string())
    };
    let doc: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{source}: line {}, column {}: {e}", e.line(), e.column())))?;
    let rows = doc.as_array().ok_or_else(|| CliError::Input(format!("{source}: expected a 2-D array")))?;
    let n = rows.len();
    let mut exact = Vec::with_capacity(n * n);
    let mut approx = Vec::with_capacity(n * n);
    let mut floating = false;
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| CliError::Input(format!("{source}: row {i} is not an array")))?;
        if row.len() != n {
            return Err(CliError::Input(format!("{source}: row {i} has {} entries, expected {n}", row.len())));
        }
        for (j, entry) in row.iter().enumerate() {
            let bad = || CliError::Input(format!("{source}: entry [{i}][{j}] must be an integer, \"p/q\" or a float, got {entry}"));
            match entry {
                Value::Number(num) if num.is_i64() || num.is_u64() => {
                    let r = parse_rational(&num.to_string()).ok_or_else(bad)?;
                    approx.push(numindex_core::scalar::to_f64(&r));
                    exact.push(r);
                }
                Value::Number(num) => {
                    floating = true;
                    approx.push(num.as_f64().ok_or_else(bad)?);
                }
                Value::String(s) => {
                    let r = parse_rational(s).ok_or_else(bad)?;
                    approx.push(numindex_core::scalar::to_f64(&r));
                    exact.push(r);
                }
                _ => return Err(bad()),
            }
        }
    }
    if n == 0 {
        return Err(CliError::Input(format!("{source}: empty matrix")));
    }
    Ok(if floating {
        Operator::Approx(FloatMatrix::from_flat(n, approx)?)
    } else {
        Operator::Exact(RatMatrix::from_flat(n, exact)?)
    })
}

pub fn load_exact_matrix(arg: &str) -> Result<RatMatrix, CliError> {
    match load_matrix(arg)? {
        Operator::Exact(m) => Ok(m),
        Operator::Approx(_) => Err(CliError::Input(format!("{arg}: this command needs exact entries (integers or \"p/q\")"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases() {
        assert_eq!(load_space("linf:2", false).unwrap().space.dim(), 2);
        assert_eq!(load_space("octagon", false).unwrap().space.extreme_points().unwrap().len(), 8);
        assert!(!load_space("lp:3:1.5", false).unwrap().space.is_exact());
        assert!(load_space("lp:3:inf", false).is_ok());
        assert!(load_space("linf:x", false).is_err());
    }

    #[test]
    fn half_given_vertices() {
        let doc = r#"{"name": "sq", "dim": 2, "kind": "polytope", "vertices": [[1, 1], [1, -1]]}"#;
        assert!(parse_space_json(doc, "t", "t", false).is_err());
        let loaded = parse_space_json(doc, "t", "t", true).unwrap();
        assert_eq!(loaded.space.extreme_points().unwrap().len(), 4);
        assert_eq!(loaded.warnings.len(), 1);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let doc = r#"{"dim": 2, "kind": "polytope", "vertices": [[1, 0], [0, "x"]]}"#;
        let msg = parse_space_json(doc, "f.json", "f", false).err().unwrap().to_string();
        assert!(msg.contains("vertices[1][1]"), "{msg}");
        let msg = parse_space_json("{\"dim\": 2,\n  \"kind\": }", "f.json", "f", false).err().unwrap().to_string();
        assert!(msg.contains("line 2"), "{msg}");
        let msg = parse_space_json(r#"{"dim": 2, "kind": "lp"}"#, "f.json", "f", false).err().unwrap().to_string();
        assert!(msg.contains("`p`"), "{msg}");
    }

    #[test]
    fn matrices() {
        assert!(matches!(load_matrix("[[1, \"1/2\"], [0, -3]]").unwrap(), Operator::Exact(_)));
        assert!(matches!(load_matrix("[[1, 0.5], [0, -3]]").unwrap(), Operator::Approx(_)));
        assert!(load_matrix("[[1, 2], [3]]").is_err());
        assert!(load_exact_matrix("[[0.5]]").is_err());
    }
}
