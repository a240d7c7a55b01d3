//! Minimal flag parsing: `--name value` or `--name=value` pairs plus
//! positional arguments, with typed getters. Every parse failure is an input
//! error (exit 1); nothing here ever panics on user input.

use std::collections::BTreeMap;

use crate::error::{CliError, CliResult};

#[derive(Debug, Default)]
pub struct Flags {
    positional: Vec<String>,
    values: BTreeMap<String, String>,
}

impl Flags {
    pub fn parse(args: &[String], allowed: &[&str]) -> CliResult<Self> {
        let mut out = Flags::default();
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            if let Some(name) = arg.strip_prefix("--") {
                let (key, inline) = match name.split_once('=') {
                    Some((k, v)) => (k.to_string(), Some(v.to_string())),
                    None => (name.to_string(), None),
                };
                if !allowed.contains(&key.as_str()) {
                    return Err(CliError::Input(format!("unknown flag --{key}")));
                }
                let value = match inline {
                    Some(v) => v,
                    None => it
                        .next()
                        .ok_or_else(|| CliError::Input(format!("flag --{key} needs a value")))?
                        .clone(),
                };
                if out.values.insert(key.clone(), value).is_some() {
                    return Err(CliError::Input(format!("flag --{key} given twice")));
                }
            } else {
                out.positional.push(arg.clone());
            }
        }
        Ok(out)
    }

    pub fn positional(&self) -> &[String] {
        &self.positional
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|s| s.as_str())
    }

    pub fn get_f64(&self, name: &str, default: f64) -> CliResult<f64> {
        match self.get(name) {
            None => Ok(default),
            Some(raw) => raw
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    CliError::Input(format!("flag --{name} expects a finite number, got {raw:?}"))
                }),
        }
    }

    pub fn get_usize(&self, name: &str, default: usize) -> CliResult<usize> {
        match self.get(name) {
            None => Ok(default),
            Some(raw) => raw.parse::<usize>().map_err(|_| {
                CliError::Input(format!("flag --{name} expects a non-negative integer, got {raw:?}"))
            }),
        }
    }

    pub fn get_u64(&self, name: &str, default: u64) -> CliResult<u64> {
        match self.get(name) {
            None => Ok(default),
            Some(raw) => raw.parse::<u64>().map_err(|_| {
                CliError::Input(format!("flag --{name} expects a non-negative integer, got {raw:?}"))
            }),
        }
    }

    /// "a,b" pair of finite numbers.
    pub fn get_pair(&self, name: &str) -> CliResult<Option<[f64; 2]>> {
        let Some(raw) = self.get(name) else {
            return Ok(None);
        };
        let parts: Vec<&str> = raw.split(',').collect();
        if parts.len() != 2 {
            return Err(CliError::Input(format!(
                "flag --{name} expects \"A,B\", got {raw:?}"
            )));
        }
        let mut out = [0.0; 2];
        for (slot, part) in out.iter_mut().zip(parts.iter()) {
            *slot = part.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(
                || CliError::Input(format!("flag --{name}: {part:?} is not a finite number")),
            )?;
        }
        Ok(Some(out))
    }

    /// "a:b" range of finite numbers.
    pub fn get_range(&self, name: &str, default: (f64, f64)) -> CliResult<(f64, f64)> {
        let Some(raw) = self.get(name) else {
            return Ok(default);
        };
        let nums = parse_colon_list(name, raw, 2)?;
        Ok((nums[0], nums[1]))
    }

    /// "umin:umax:vmin:vmax" window.
    pub fn get_window(&self, name: &str, default: [f64; 4]) -> CliResult<[f64; 4]> {
        let Some(raw) = self.get(name) else {
            return Ok(default);
        };
        let nums = parse_colon_list(name, raw, 4)?;
        Ok([nums[0], nums[1], nums[2], nums[3]])
    }
}

fn parse_colon_list(name: &str, raw: &str, n: usize) -> CliResult<Vec<f64>> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != n {
        return Err(CliError::Input(format!(
            "flag --{name} expects {n} colon-separated numbers, got {raw:?}"
        )));
    }
    parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    CliError::Input(format!("flag --{name}: {p:?} is not a finite number"))
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_pairs_and_positionals() {
        let f = Flags::parse(&args(&["model.json", "--tol", "1e-8", "--n=5"]), &["tol", "n"])
            .unwrap();
        assert_eq!(f.positional(), &["model.json".to_string()]);
        assert_eq!(f.get_f64("tol", 0.0).unwrap(), 1e-8);
        assert_eq!(f.get_usize("n", 0).unwrap(), 5);
    }

    #[test]
    fn rejects_unknown_and_duplicate_flags() {
        assert!(Flags::parse(&args(&["--bogus", "1"]), &["tol"]).is_err());
        assert!(Flags::parse(&args(&["--tol", "1", "--tol", "2"]), &["tol"]).is_err());
        assert!(Flags::parse(&args(&["--tol"]), &["tol"]).is_err());
    }

    #[test]
    fn typed_getters_validate() {
        let f = Flags::parse(&args(&["--x0", "1,2", "--w", "0:1:0:2"]), &["x0", "w"]).unwrap();
        assert_eq!(f.get_pair("x0").unwrap(), Some([1.0, 2.0]));
        assert_eq!(f.get_window("w", [0.0; 4]).unwrap(), [0.0, 1.0, 0.0, 2.0]);
        let bad = Flags::parse(&args(&["--x0", "1;2"]), &["x0"]).unwrap();
        assert!(bad.get_pair("x0").is_err());
    }
}
