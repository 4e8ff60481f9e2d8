//! JSON run configs. A config is a flat object whose `command` names the
//! subcommand and whose other keys are flag names without the leading dashes:
//!
//! ```json
//! { "command": "area", "R": 1.25, "tol": 1e-4 }
//! ```
//!
//! It is turned into the equivalent argument list so that flags and config
//! files share one parser and one set of defaults.

use serde_json::Value;

pub fn config_to_args(text: &str) -> Result<Vec<String>, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| format!("config is not valid JSON: {e}"))?;
    let Value::Object(map) = value else {
        return Err("config must be a JSON object".into());
    };
    let command = match map.get("command") {
        Some(Value::String(c)) if c != "run" => c.clone(),
        Some(_) => return Err("`command` must name a subcommand other than run".into()),
        None => return Err("config has no `command`".into()),
    };
    let mut args = vec!["tractrix".to_string(), command];
    for (key, v) in &map {
        if key == "command" {
            continue;
        }
        let flag = format!("--{key}");
        match v {
            Value::Bool(true) => args.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Number(n) => {
                args.push(flag);
                args.push(n.to_string());
            }
            Value::String(s) => {
                args.push(flag);
                args.push(s.clone());
            }
            Value::Array(items) => {
                let parts = items
                    .iter()
                    .map(|item| match item {
                        Value::Number(n) => Ok(n.to_string()),
                        Value::String(s) => Ok(s.clone()),
                        _ => Err(format!("`{key}`: arrays may hold numbers or strings only")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                args.push(flag);
                args.push(parts.join(","));
            }
            Value::Object(_) => return Err(format!("`{key}`: nested objects are not allowed")),
        }
    }
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_object_becomes_flags() {
        let args = config_to_args(r#"{"command":"area","R":1.25,"tol":1e-4,"regime":"supercritical"}"#).unwrap();
        assert_eq!(args[..2], ["tractrix", "area"]);
        let rest = args[2..].join(" ");
        assert!(rest.contains("--R 1.25"));
        assert!(rest.contains("--tol 0.0001"));
        assert!(rest.contains("--regime supercritical"));
    }

    #[test]
    fn arrays_and_booleans() {
        let args = config_to_args(r#"{"command":"rear-track","x0":[1,0.5,-2],"flag":true,"off":false}"#).unwrap();
        assert!(args.join(" ").contains("--x0 1,0.5,-2"));
        assert!(args.contains(&"--flag".to_string()));
        assert!(!args.contains(&"--off".to_string()));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(config_to_args("[1,2]").is_err());
        assert!(config_to_args(r#"{"R":2}"#).is_err());
        assert!(config_to_args(r#"{"command":"run"}"#).is_err());
        assert!(config_to_args(r#"{"command":"area","R":{"a":1}}"#).is_err());
        assert!(config_to_args("{").is_err());
    }
}
