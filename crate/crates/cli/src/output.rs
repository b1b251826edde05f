//! Text and line-delimited JSON output.

use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Jsonl,
}

/// One machine-readable record. Every key is always present.
#[derive(Debug, Serialize)]
pub struct Record {
    pub command: String,
    pub answer: Option<String>,
    pub k: Option<usize>,
    pub ns_per_edge: Option<f64>,
}

impl Record {
    pub fn new(command: &str) -> Self {
        Record { command: command.to_string(), answer: None, k: None, ns_per_edge: None }
    }

    pub fn answer(mut self, a: &str) -> Self {
        self.answer = Some(a.to_string());
        self
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn ns_per_edge(mut self, ns: Option<f64>) -> Self {
        self.ns_per_edge = ns;
        self
    }

    pub fn emit(&self) {
        println!("{}", serde_json::to_string(self).expect("record serializes"));
    }
}

/// Outcome of one decision query.
#[derive(Debug)]
pub struct Answer {
    pub yes: bool,
    pub k: usize,
    pub ns: u128,
}

impl Answer {
    pub fn ns_per_edge(&self) -> Option<f64> {
        (self.k > 0).then(|| self.ns as f64 / self.k as f64)
    }
}

/// Prints one line per answer; exit 0 when all are yes, 1 otherwise.
pub fn answers(command: &str, answers: &[Answer], fmt: Format) -> ExitCode {
    for a in answers {
        let word = if a.yes { "yes" } else { "no" };
        match fmt {
            Format::Text => println!("{word}"),
            Format::Jsonl => Record::new(command).answer(word).k(a.k).ns_per_edge(a.ns_per_edge()).emit(),
        }
    }
    if answers.iter().all(|a| a.yes) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn write_to(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
