use std::process::ExitCode;

use godel_t::normalize::NormalizeError;
use serde_json::{json, Map, Value};

/// An error with a category from the module error types.
#[derive(Debug)]
pub struct Failure {
    pub category: &'static str,
    pub message: String,
    pub partial: Option<Box<Report>>,
}

impl Failure {
    pub fn new(category: &'static str, message: impl Into<String>) -> Failure {
        Failure { category, message: message.into(), partial: None }
    }

    pub fn usage(message: impl Into<String>) -> Failure {
        Failure::new("usage", message)
    }

    pub fn normalize(e: NormalizeError) -> Failure {
        let category = match e {
            NormalizeError::BudgetExhausted { .. } => "budget",
            NormalizeError::IllTyped(_) | NormalizeError::TypeMismatch { .. } => "type",
            _ => "normalize",
        };
        Failure::new(category, e.to_string())
    }
}

#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
    fields: Map<String, Value>,
    pub steps: u64,
    pub nodes: u64,
    pub wall_ms: f64,
    failure: Option<(&'static str, String)>,
}

impl Report {
    pub fn text(&mut self, line: String) {
        self.lines.push(line);
    }

    /// A line printed as a comment so the output stays parseable.
    pub fn text_comment(&mut self, line: String) {
        self.lines.push(format!("-- {line}"));
    }

    pub fn field(&mut self, key: &str, value: Value) {
        self.fields.insert(key.to_string(), value);
    }

    /// Keeps the rows collected so far and marks the report failed.
    pub fn into_failure(self, category: &'static str, message: String) -> Failure {
        Failure { category, message, partial: Some(Box::new(self)) }
    }

    pub fn error(f: Failure) -> Report {
        let mut r = f.partial.map(|b| *b).unwrap_or_default();
        r.failure = Some((f.category, f.message));
        r
    }

    pub fn print(self, command: &str, as_json: bool) -> ExitCode {
        let code = match &self.failure {
            None => ExitCode::SUCCESS,
            Some(("usage", _)) => ExitCode::from(2),
            Some(_) => ExitCode::from(1),
        };
        if as_json {
            let mut obj = Map::new();
            obj.insert("command".into(), json!(command));
            match &self.failure {
                None => {
                    obj.insert("status".into(), json!("ok"));
                }
                Some((category, message)) => {
                    obj.insert("status".into(), json!("error"));
                    obj.insert("category".into(), json!(category));
                    obj.insert("message".into(), json!(message));
                }
            }
            obj.insert("result".into(), Value::Object(self.fields));
            obj.insert(
                "metrics".into(),
                json!({"steps": self.steps, "nodes": self.nodes, "wall_ms": self.wall_ms}),
            );
            println!("{}", Value::Object(obj));
        } else {
            for line in &self.lines {
                println!("{line}");
            }
            if let Some((category, message)) = &self.failure {
                eprintln!("error ({category}): {message}");
            }
        }
        code
    }
}
