//! Text and JSON rendering of command results.

use serde::Serialize;

use crate::{Format, RunConfig, SCHEMA_VERSION};

/// A command result that renders in both output formats from the same data.
pub trait Report: Serialize {
    const COMMAND: &'static str;

    fn text(&self) -> String;

    fn passed(&self) -> bool {
        true
    }
}

#[derive(Serialize)]
struct Envelope<'a, R> {
    schema_version: u32,
    command: &'static str,
    config: &'a RunConfig,
    passed: bool,
    result: &'a R,
}

/// Rendered output and whether the command succeeded.
pub fn emit<R: Report>(config: &RunConfig, report: &R) -> (String, bool) {
    let passed = report.passed();
    let out = match config.format {
        Format::Text => report.text(),
        Format::Json => {
            let env = Envelope {
                schema_version: SCHEMA_VERSION,
                command: R::COMMAND,
                config,
                passed,
                result: report,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
            s.push('\n');
            s
        }
    };
    (out, passed)
}

pub(crate) fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
