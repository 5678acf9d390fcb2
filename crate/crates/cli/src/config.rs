//! Run configuration: built-in defaults, then an optional `key=value` file,
//! then explicit command-line flags.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub digits: u32,
    pub format: Format,
    /// worker threads; `None` lets rayon decide
    pub parallelism: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { digits: 50, format: Format::Text, parallelism: None }
    }
}

fn parse_digits(v: &str) -> Result<u32> {
    let d: u32 = v.parse().map_err(|_| anyhow!("digits must be a positive integer, got `{v}`"))?;
    if d < 10 {
        bail!("digits must be at least 10, got {d}");
    }
    Ok(d)
}

impl RunConfig {
    /// Applies a config file. Blank lines and `#` comments are ignored; any
    /// key other than `digits`, `format` and `parallelism` is an error.
    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        self.apply_str(&text)
    }

    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {}: expected key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "digits" => self.digits = parse_digits(value)?,
                "format" => {
                    self.format = Format::from_str(value, true)
                        .map_err(|_| anyhow!("config line {}: unknown format `{value}`", lineno + 1))?
                }
                "parallelism" => {
                    let p: usize = value
                        .parse()
                        .map_err(|_| anyhow!("config line {}: parallelism must be an integer", lineno + 1))?;
                    self.parallelism = (p > 0).then_some(p);
                }
                other => bail!("config line {}: unknown key `{other}`", lineno + 1),
            }
        }
        Ok(())
    }

    pub fn override_with(&mut self, digits: Option<u32>, format: Option<Format>, parallelism: Option<usize>) -> Result<()> {
        if let Some(d) = digits {
            self.digits = parse_digits(&d.to_string())?;
        }
        if let Some(f) = format {
            self.format = f;
        }
        if let Some(p) = parallelism {
            self.parallelism = (p > 0).then_some(p);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_overrides_defaults() {
        let mut c = RunConfig::default();
        c.apply_str("# run settings\ndigits = 30\nformat=json\n\nparallelism=2\n").unwrap();
        assert_eq!(c, RunConfig { digits: 30, format: Format::Json, parallelism: Some(2) });
        c.override_with(Some(40), None, None).unwrap();
        assert_eq!(c.digits, 40);
    }

    #[test]
    fn rejects_unknown_keys_and_low_precision() {
        assert!(RunConfig::default().apply_str("colour = blue").is_err());
        assert!(RunConfig::default().apply_str("digits = 5").is_err());
        assert!(RunConfig::default().apply_str("digits").is_err());
    }
}
