//! Two-mode report rendering: human-readable lines, or a flat key=value
//! document with a versioned schema field for scripting. Machine output is
//! byte-stable: keys appear in insertion order and carry no timestamps.

pub struct Doc {
    schema: &'static str,
    kvs: Vec<(String, String)>,
    lines: Vec<String>,
}

impl Doc {
    pub fn new(schema: &'static str) -> Doc {
        Doc {
            schema,
            kvs: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn kv(&mut self, key: impl Into<String>, value: impl ToString) {
        self.kvs.push((key.into(), value.to_string()));
    }

    pub fn human(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        if machine {
            out.push_str(&format!("schema=groupcode.{}.v1\n", self.schema));
            for (k, v) in &self.kvs {
                out.push_str(&format!("{k}={v}\n"));
            }
        } else {
            for l in &self.lines {
                out.push_str(l);
                out.push('\n');
            }
        }
        out
    }
}
