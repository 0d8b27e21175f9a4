//! Output formats. JSON and CSV are byte-stable for a given invocation.

use serde::Serialize;

use crate::commands::Outcome;
use crate::{Format, Invocation};

#[derive(Serialize)]
struct Document<'a> {
    version: &'static str,
    invocation: &'a Invocation,
    reports: &'a [serde_json::Value],
    summary: &'a serde_json::Value,
    pass: bool,
}

pub fn render(format: Format, inv: &Invocation, outcome: &Outcome) -> String {
    match format {
        Format::Json => {
            let doc = Document {
                version: env!("CARGO_PKG_VERSION"),
                invocation: inv,
                reports: &outcome.reports,
                summary: &outcome.summary,
                pass: outcome.pass,
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&outcome.csv_header)
                .expect("in-memory write");
            for row in &outcome.csv_rows {
                w.write_record(row).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
        }
        Format::Human => {
            let mut s = outcome.human.clone();
            for f in &outcome.failures {
                s.push_str(&format!(
                    "FAIL {}: {}\n  reproduce: {}\n",
                    f.check, f.counterexample, f.reproduce
                ));
            }
            s.push_str(if outcome.pass {
                "result: PASS\n"
            } else {
                "result: FAIL\n"
            });
            s
        }
    }
}
