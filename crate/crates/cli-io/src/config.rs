use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::emit::write_json;
use crate::CliError;

/// Parse a `key=value` override; values that are not JSON are strings.
pub fn parse_set(s: &str) -> Result<(String, Value), CliError> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("--set expects key=value, got `{s}`")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(CliError::Config(format!("empty key in `{s}`")));
    }
    let v = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
    Ok((k.to_string(), v))
}

/// Resolved experiment: flat parameters, seed, replications and output path.
#[derive(Debug)]
pub struct Context {
    map: Map<String, Value>,
    seed: Option<u64>,
    pub replications: u64,
    pub out: Option<PathBuf>,
}

fn take_u64(map: &mut Map<String, Value>, key: &str) -> Result<Option<u64>, CliError> {
    match map.remove(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v.as_u64().map(Some).ok_or_else(|| {
            CliError::Config(format!("`{key}` must be a nonnegative integer, got {v}"))
        }),
    }
}

impl Context {
    /// Config file, then `--set` overrides, then dedicated flags.
    pub fn load(
        config: Option<&Path>,
        sets: &[String],
        flags: Vec<(&str, Value)>,
        seed: Option<u64>,
        replications: Option<u64>,
        out: Option<PathBuf>,
    ) -> Result<Self, CliError> {
        let mut map = match config {
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
                match serde_json::from_str(&text) {
                    Ok(Value::Object(m)) => m,
                    Ok(_) => {
                        return Err(CliError::Config(format!(
                            "{} is not a JSON object",
                            p.display()
                        )))
                    }
                    Err(e) => return Err(CliError::Config(format!("{}: {e}", p.display()))),
                }
            }
            None => Map::new(),
        };
        for s in sets {
            let (k, v) = parse_set(s)?;
            map.insert(k, v);
        }
        for (k, v) in flags {
            map.insert(k.to_string(), v);
        }
        let file_seed = take_u64(&mut map, "seed")?;
        let file_reps = take_u64(&mut map, "replications")?;
        let replications = replications.or(file_reps).unwrap_or(1);
        if replications == 0 {
            return Err(CliError::Config("replications must be at least 1".into()));
        }
        Ok(Context {
            map,
            seed: seed.or(file_seed),
            replications,
            out,
        })
    }

    /// Fill `key` when absent.
    pub fn default_key(&mut self, key: &str, value: Value) {
        self.map.entry(key).or_insert(value);
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.map.get(key)
    }

    /// Typed parameters; keys the parsed value does not echo are unknown.
    pub fn params<T: DeserializeOwned + Serialize>(&self) -> Result<T, CliError> {
        let t: T = serde_json::from_value(Value::Object(self.map.clone()))
            .map_err(|e| CliError::Config(e.to_string()))?;
        if let Value::Object(known) = serde_json::to_value(&t)? {
            if let Some(k) = self.map.keys().find(|k| !known.contains_key(*k)) {
                return Err(CliError::Config(format!("unknown key `{k}`")));
            }
        }
        Ok(t)
    }

    /// The given seed, or a fresh one that the sidecar records.
    pub fn seed(&mut self) -> u64 {
        *self.seed.get_or_insert_with(rand::random)
    }

    /// Echo the resolved parameters next to the output.
    pub fn write_sidecar<T: Serialize>(
        &self,
        resolved: &T,
        randomized: bool,
    ) -> Result<(), CliError> {
        let Some(out) = &self.out else {
            if randomized {
                eprintln!("seed: {}", self.seed.unwrap_or_default());
            }
            return Ok(());
        };
        let mut v = serde_json::to_value(resolved)?;
        if let (Value::Object(m), true) = (&mut v, randomized) {
            m.insert("seed".into(), self.seed.into());
            m.insert("replications".into(), self.replications.into());
        }
        write_json(Some(&sidecar_path(out)), &v)
    }

    /// Output of replication `r`: `out` itself for a single replication,
    /// `stem.r.ext` otherwise.
    pub fn artifact(&self, r: u64) -> Result<Option<PathBuf>, CliError> {
        match &self.out {
            None if self.replications > 1 => Err(CliError::Config(
                "more than one replication needs --out".into(),
            )),
            None => Ok(None),
            Some(p) if self.replications == 1 => Ok(Some(p.clone())),
            Some(p) => {
                let stem = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                let name = match p.extension() {
                    Some(ext) => format!("{stem}.{r}.{}", ext.to_string_lossy()),
                    None => format!("{stem}.{r}"),
                };
                Ok(Some(p.with_file_name(name)))
            }
        }
    }

    /// Summaries go to stdout when the artifact has its own file.
    pub fn summary<T: Serialize>(&self, value: &T) -> Result<(), CliError> {
        if self.out.is_some() {
            write_json(None, value)
        } else {
            eprintln!("{}", serde_json::to_string_pretty(value)?);
            Ok(())
        }
    }
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".config.json");
    PathBuf::from(s)
}
