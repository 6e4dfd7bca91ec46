//! `key=value` configuration files. Blank lines and `#` comments are
//! skipped; later keys override earlier ones.

use std::collections::HashMap;

const KEYS: [&str; 4] = ["beta-poly", "beta-interval", "alpha-expr", "max-iter"];

#[derive(Debug, Default)]
pub struct Config {
    values: HashMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, String> {
        let mut values = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
            let k = k.trim().replace('_', "-");
            if !KEYS.contains(&k.as_str()) {
                return Err(format!("config line {}: unknown key {k:?}", i + 1));
            }
            values.insert(k, v.trim().to_owned());
        }
        Ok(Config { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}
