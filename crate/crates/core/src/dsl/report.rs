//! JSON summary report.

use serde::{Deserialize, Serialize};

use super::{parse_formula, parse_literal, DslError, EventType};
use crate::summarize::{Subject, SummaryInfo, SummaryTable};

/// One event type's summary as it appears in the report. Literals and the
/// precondition are in s-expression form; `"epsilon"` marks a missing
/// precondition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    // fields in key order, so the JSON comes out sorted
    pub mentioned: Vec<String>,
    pub must: Vec<String>,
    pub params: Vec<String>,
    pub precondition: String,
    pub subject: String,
}

#[derive(Serialize, Deserialize)]
struct Report {
    summaries: Vec<ReportEntry>,
}

pub const EPSILON: &str = "epsilon";

impl From<&SummaryInfo> for ReportEntry {
    fn from(info: &SummaryInfo) -> Self {
        let sorted = |ls: &std::collections::BTreeSet<crate::logic::Literal>| {
            let mut v: Vec<String> = ls.iter().map(ToString::to_string).collect();
            v.sort();
            v
        };
        ReportEntry {
            subject: info.subject.to_string(),
            params: info.params.iter().map(|p| format!("?{p}")).collect(),
            precondition: info
                .precondition
                .as_ref()
                .map_or_else(|| EPSILON.to_string(), ToString::to_string),
            must: sorted(&info.must),
            mentioned: sorted(&info.mentioned),
        }
    }
}

/// Pretty-printed report, entries sorted by subject.
pub fn emit_report(table: &SummaryTable) -> String {
    let mut summaries: Vec<ReportEntry> = table.iter().map(ReportEntry::from).collect();
    summaries.sort_by(|a, b| a.subject.cmp(&b.subject));
    let mut out = serde_json::to_string_pretty(&Report { summaries }).expect("report serialises");
    out.push('\n');
    out
}

fn parse_subject(s: &str) -> Result<EventType, DslError> {
    let bad = || DslError::Report(format!("subject {s:?} is not name/arity"));
    let (name, arity) = s.rsplit_once('/').ok_or_else(bad)?;
    let arity = arity.parse().map_err(|_| bad())?;
    Ok(EventType::new(name, arity))
}

/// Reads a report back into a summary table.
pub fn parse_report(text: &str) -> Result<SummaryTable, DslError> {
    let report: Report = serde_json::from_str(text).map_err(|e| DslError::Report(e.to_string()))?;
    let mut table = SummaryTable::new();
    for entry in report.summaries {
        let e = parse_subject(&entry.subject)?;
        let params = entry
            .params
            .iter()
            .map(|p| {
                p.strip_prefix('?')
                    .map(str::to_string)
                    .ok_or_else(|| DslError::Report(format!("parameter {p:?} is not a variable")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if params.len() != e.arity {
            return Err(DslError::Report(format!("{} lists {} parameters", entry.subject, params.len())));
        }
        let precondition = if entry.precondition == EPSILON {
            None
        } else {
            Some(parse_formula(&entry.precondition)?)
        };
        let must = entry.must.iter().map(|l| parse_literal(l)).collect::<Result<_, _>>()?;
        let mentioned = entry.mentioned.iter().map(|l| parse_literal(l)).collect::<Result<_, _>>()?;
        table.insert(SummaryInfo {
            subject: Subject::Event(e),
            params,
            precondition,
            must,
            mentioned,
        });
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_domain;
    use crate::summarize::analyze;

    #[test]
    fn empty_table_report() {
        let text = emit_report(&SummaryTable::new());
        assert_eq!(serde_json::from_str::<serde_json::Value>(&text).unwrap(), serde_json::json!({"summaries": []}));
        assert!(text.ends_with('\n'));
        assert!(parse_report(&text).unwrap().is_empty());
    }

    #[test]
    fn report_round_trips() {
        let d = parse_domain(
            "(action (move ?x ?y) (pre true) (add (at ?y)) (del (at ?x)))
             (plan-rule (event go ?a ?b) (context (and (at ?a) (!= ?a ?b))) (body (act move ?a ?b)))
             (plan-rule (event go ?a ?b) (context (at ?b)) (body (test true)))",
        )
        .unwrap();
        let table = analyze(&d).unwrap().table;
        let text = emit_report(&table);
        assert_eq!(parse_report(&text).unwrap(), table);
    }

    #[test]
    fn malformed_reports_are_rejected() {
        assert!(parse_report("{").is_err());
        assert!(parse_report(r#"{"summaries":[{"subject":"e","params":[],"precondition":"true","must":[],"mentioned":[]}]}"#).is_err());
    }
}
