//! Command output: human text plus `key<TAB>value` lines.

use std::fmt::Display;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    human: Vec<String>,
    machine: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.human.push(text.into());
        self
    }

    pub fn field(&mut self, key: &str, value: impl Display) -> &mut Self {
        let value = value.to_string();
        assert!(
            !key.contains(['\t', '\n']) && !value.contains(['\t', '\n']),
            "bad report field {key}"
        );
        self.machine.push((key.to_string(), value));
        self
    }

    /// Adds a human line and the same value as a field.
    pub fn both(&mut self, key: &str, value: impl Display) -> &mut Self {
        let value = value.to_string();
        self.human.push(format!("{key}: {value}"));
        self.field(key, value)
    }

    pub fn human(&self) -> String {
        self.human.iter().map(|l| format!("{l}\n")).collect()
    }

    pub fn machine(&self) -> String {
        self.machine.iter().map(|(k, v)| format!("{k}\t{v}\n")).collect()
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.machine.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}
