use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use crate::{Common, Format};

/// One artifact: text body or JSON value, with the run settings echoed.
pub struct Artifact {
    pub command: String,
    pub text: String,
    pub json: Value,
}

impl Artifact {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            text: String::new(),
            json: json!({}),
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn set(&mut self, key: &str, v: Value) {
        self.json[key] = v;
    }

    fn header(&self, c: &Common) -> String {
        let mut h = String::new();
        let _ = writeln!(h, "# detci {}", self.command);
        let _ = writeln!(h, "# seed {}", c.seed);
        let _ = writeln!(h, "# trials {}", c.trials);
        let _ = writeln!(h, "# max_pairs {}", c.max_pairs);
        let _ = writeln!(h, "# max_degree {}", c.max_degree);
        h
    }

    pub fn render(&self, c: &Common) -> String {
        if c.json {
            let mut v = json!({
                "command": self.command,
                "seed": c.seed,
                "trials": c.trials,
                "max_pairs": c.max_pairs,
                "max_degree": c.max_degree,
            });
            if let Value::Object(m) = &self.json {
                for (k, x) in m {
                    v[k] = x.clone();
                }
            }
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        } else {
            self.header(c) + &self.text
        }
    }

    /// Print to stdout and, with `--out`, write `DIR/<command>.<ext>`.
    pub fn emit(&self, c: &Common) -> std::io::Result<()> {
        let body = self.render(c);
        print!("{body}");
        if let Some(dir) = &c.out {
            std::fs::create_dir_all(dir)?;
            let ext = if c.json {
                "json"
            } else if c.format == Format::Cas {
                "cas"
            } else {
                "txt"
            };
            let name = self.command.replace(' ', "-");
            std::fs::write(Path::new(dir).join(format!("{name}.{ext}")), body)?;
        }
        Ok(())
    }
}
