use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Everything needed to reproduce a run; serialized into every output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub version: String,
    pub seed: u64,
    pub alpha: String,
    pub cap: usize,
    pub jobs: usize,
    pub format: Option<String>,
    pub out: Option<String>,
    /// arguments after the program name, `--timestamp` removed
    pub argv: Vec<String>,
}

pub const CONFIG_PREFIX: &str = "# config: ";

impl RunConfig {
    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn comment_line(&self) -> String {
        format!("{CONFIG_PREFIX}{}", self.json())
    }
}

/// Finds the embedded config in a JSON document or in a `# config:` line.
pub fn extract(text: &str) -> Result<RunConfig, CliError> {
    if let Some(line) = text.lines().find_map(|l| l.strip_prefix(CONFIG_PREFIX)) {
        return serde_json::from_str(line).map_err(|e| CliError::Usage(format!("bad config line: {e}")));
    }
    let doc: serde_json::Value =
        serde_json::from_str(text).map_err(|_| CliError::Usage("no embedded config found".into()))?;
    let cfg = doc.get("config").ok_or_else(|| CliError::Usage("no `config` field".into()))?;
    serde_json::from_value(cfg.clone()).map_err(|e| CliError::Usage(format!("bad config: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig {
            version: "0".into(),
            seed: 3,
            alpha: "1/2".into(),
            cap: 20,
            jobs: 1,
            format: None,
            out: None,
            argv: vec!["construct".into(), "core".into(), "--s".into(), "4".into()],
        }
    }

    #[test]
    fn comment_and_json_forms() {
        let c = cfg();
        let text = format!("{}\n4 3\n0 1\n", c.comment_line());
        assert_eq!(extract(&text).unwrap(), c);
        let doc = serde_json::json!({ "config": c, "result": 1 }).to_string();
        assert_eq!(extract(&doc).unwrap(), c);
        assert!(extract("4 3\n").is_err());
    }
}
