//! Effective CLI configuration.
//!
//! Precedence: command-line flags over config file over environment
//! variables over built-in defaults. The config file is a flat
//! `key=value` text file; `#` starts a comment line.

use std::collections::BTreeMap;
use std::path::Path;

use pmllm::LlmConfig;

/// Keys understood in the config file and as `PMLLM_<KEY>` env variables.
const KEYS: [&str; 7] = [
    "base_url",
    "model",
    "api_key_env",
    "timeout_seconds",
    "max_retries",
    "renderer",
    "max_chars",
];

#[derive(Debug, Clone)]
pub struct CliConfig {
    pub base_url: Option<String>,
    pub model: String,
    pub api_key_env: String,
    pub timeout_seconds: u64,
    pub max_retries: u32,
    pub renderer: Option<String>,
    pub max_chars: usize,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            base_url: None,
            model: "gpt-4o".to_string(),
            api_key_env: "OPENAI_API_KEY".to_string(),
            timeout_seconds: 60,
            max_retries: 2,
            renderer: None,
            max_chars: 10_000,
        }
    }
}

/// Flag values that override everything else.
#[derive(Debug, Default, Clone)]
pub struct ConfigOverrides {
    pub base_url: Option<String>,
    pub model: Option<String>,
    pub api_key_env: Option<String>,
    pub timeout_seconds: Option<u64>,
    pub max_retries: Option<u32>,
    pub renderer: Option<String>,
    pub max_chars: Option<usize>,
}

impl CliConfig {
    pub fn resolve(file: Option<&Path>, overrides: &ConfigOverrides) -> Result<Self, String> {
        let mut values: BTreeMap<String, String> = BTreeMap::new();
        for key in KEYS {
            if let Ok(v) = std::env::var(format!("PMLLM_{}", key.to_uppercase())) {
                values.insert(key.to_string(), v);
            }
        }
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            for (no, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((key, value)) = line.split_once('=') else {
                    return Err(format!("config line {} lacks `=`: {line}", no + 1));
                };
                let key = key.trim();
                if !KEYS.contains(&key) {
                    return Err(format!("unknown config key `{key}`"));
                }
                values.insert(key.to_string(), value.trim().to_string());
            }
        }

        let defaults = CliConfig::default();
        let parse_u64 = |values: &BTreeMap<String, String>, key: &str, fallback: u64| {
            values
                .get(key)
                .map(|v| v.parse::<u64>().map_err(|_| format!("bad {key}: {v}")))
                .transpose()
                .map(|v| v.unwrap_or(fallback))
        };

        let mut cfg = CliConfig {
            base_url: values.get("base_url").cloned().or(defaults.base_url),
            model: values.get("model").cloned().unwrap_or(defaults.model),
            api_key_env: values
                .get("api_key_env")
                .cloned()
                .unwrap_or(defaults.api_key_env),
            timeout_seconds: parse_u64(&values, "timeout_seconds", defaults.timeout_seconds)?,
            max_retries: parse_u64(&values, "max_retries", defaults.max_retries as u64)? as u32,
            renderer: values.get("renderer").cloned().or(defaults.renderer),
            max_chars: parse_u64(&values, "max_chars", defaults.max_chars as u64)? as usize,
        };

        if let Some(v) = &overrides.base_url {
            cfg.base_url = Some(v.clone());
        }
        if let Some(v) = &overrides.model {
            cfg.model = v.clone();
        }
        if let Some(v) = &overrides.api_key_env {
            cfg.api_key_env = v.clone();
        }
        if let Some(v) = overrides.timeout_seconds {
            cfg.timeout_seconds = v;
        }
        if let Some(v) = overrides.max_retries {
            cfg.max_retries = v;
        }
        if let Some(v) = &overrides.renderer {
            cfg.renderer = Some(v.clone());
        }
        if let Some(v) = overrides.max_chars {
            cfg.max_chars = v;
        }
        Ok(cfg)
    }

    pub fn llm_config(&self) -> Result<LlmConfig, String> {
        let base_url = self
            .base_url
            .clone()
            .ok_or("no base_url configured (flag --base-url, config file, or PMLLM_BASE_URL)")?;
        let mut llm = LlmConfig::new(base_url, self.model.clone());
        llm.api_key_env = self.api_key_env.clone();
        llm.timeout_seconds = self.timeout_seconds;
        llm.max_retries = self.max_retries;
        Ok(llm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn flags_override_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# endpoint\nmodel = file-model\nmax_chars = 500").unwrap();
        let overrides = ConfigOverrides {
            model: Some("flag-model".into()),
            ..Default::default()
        };
        let cfg = CliConfig::resolve(Some(f.path()), &overrides).unwrap();
        assert_eq!(cfg.model, "flag-model");
        assert_eq!(cfg.max_chars, 500);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "nope = 1").unwrap();
        assert!(CliConfig::resolve(Some(f.path()), &ConfigOverrides::default()).is_err());
    }

    #[test]
    fn defaults_apply_without_sources() {
        let cfg = CliConfig::resolve(None, &ConfigOverrides::default()).unwrap();
        assert_eq!(cfg.max_chars, 10_000);
        assert_eq!(cfg.timeout_seconds, 60);
        assert!(cfg.llm_config().is_err());
    }
}
