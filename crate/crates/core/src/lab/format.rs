//! Text renderings of suite reports.
//!
//! The machine format is one `key=value` record per line, floats printed with
//! 17 significant digits, so identical runs produce identical bytes.

use std::fmt::Write;

use crate::io::fmt_f64;
use crate::lab::suite::{Outcome, SuiteReport};

fn quote(s: &str) -> String {
    format!("{s:?}")
}

/// Every trial record, then per-cell summaries, per-check aggregates and a
/// total line.
pub fn machine(report: &SuiteReport) -> String {
    let mut out = String::new();
    for rec in &report.records {
        let norm = rec.norm.as_deref().unwrap_or("-");
        match &rec.outcome {
            Outcome::Reports(rs) => {
                for r in rs {
                    let _ = writeln!(
                        out,
                        "record check={} ensemble={} norm={} trial={} seed={} name={} tag={} lhs={} rhs={} slack={} holds={} tolerance={} digest={}",
                        rec.check,
                        rec.ensemble,
                        norm,
                        rec.trial,
                        rec.seed,
                        r.name,
                        r.tag,
                        fmt_f64(r.lhs),
                        fmt_f64(r.rhs),
                        fmt_f64(r.slack),
                        r.holds,
                        fmt_f64(r.tolerance),
                        r.input_digest
                    );
                }
            }
            Outcome::Inapplicable(h) => {
                let _ = writeln!(
                    out,
                    "inapplicable check={} ensemble={} norm={} trial={} seed={} requires={}",
                    rec.check,
                    rec.ensemble,
                    norm,
                    rec.trial,
                    rec.seed,
                    quote(&h.to_string())
                );
            }
        }
    }
    for cell in &report.cells {
        let norm = cell.norm.as_deref().unwrap_or("-");
        if let Some(e) = &cell.error {
            let _ = writeln!(
                out,
                "error check={} ensemble={} norm={} message={}",
                cell.check,
                cell.ensemble,
                norm,
                quote(e)
            );
        }
        for l in &cell.links {
            let _ = writeln!(
                out,
                "summary check={} ensemble={} norm={} name={} count={} min_slack={} min_abs_slack={} failures={}",
                cell.check,
                cell.ensemble,
                norm,
                l.name,
                l.count,
                fmt_f64(l.min_slack),
                fmt_f64(l.min_abs_slack),
                l.failures
            );
        }
        for f in &cell.failures {
            let _ = writeln!(
                out,
                "failure check={} ensemble={} norm={} name={} trial={} seed={} slack={} digest={}",
                cell.check,
                cell.ensemble,
                norm,
                f.name,
                f.trial,
                f.seed,
                fmt_f64(f.slack),
                f.input_digest
            );
        }
    }
    for n in &report.near_equalities {
        let _ = writeln!(
            out,
            "near_equality check=omega_equality ensemble={} seed={} deviation={} digest={}",
            n.ensemble,
            n.seed,
            fmt_f64(n.deviation),
            n.input_digest
        );
    }
    for (check, (min_slack, failures)) in report.per_check() {
        let _ = writeln!(out, "check check={check} min_slack={} failures={failures}", fmt_f64(min_slack));
    }
    let _ = writeln!(
        out,
        "total records={} failures={} errors={}",
        report.records.len(),
        report.failure_count(),
        report.error_count()
    );
    out
}

/// A readable summary: one line per cell, failure witnesses, and totals.
pub fn human(report: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:<15} {:<11} {:>6} {:>26} {:>8}",
        "check", "ensemble", "norm", "trials", "min slack", "failures"
    );
    for cell in &report.cells {
        let min = cell.links.iter().map(|l| l.min_slack).fold(f64::INFINITY, f64::min);
        let min = if cell.links.is_empty() { "-".to_string() } else { fmt_f64(min) };
        let _ = writeln!(
            out,
            "{:<20} {:<15} {:<11} {:>6} {:>26} {:>8}",
            cell.check.id(),
            cell.ensemble,
            cell.norm.as_deref().unwrap_or("-"),
            cell.trials,
            min,
            cell.failure_count()
        );
        if let Some(h) = &cell.hypothesis {
            let _ = writeln!(out, "    inapplicable in {} trials: requires {h}", cell.inapplicable);
        }
        if let Some(e) = &cell.error {
            let _ = writeln!(out, "    error: {e}");
        }
        for f in &cell.failures {
            let _ = writeln!(
                out,
                "    FAIL {} trial {} seed {} slack {} input {}",
                f.name,
                f.trial,
                f.seed,
                fmt_f64(f.slack),
                f.input_digest
            );
        }
    }
    for n in &report.near_equalities {
        let _ = writeln!(
            out,
            "near equality (omega_equality): {} seed {} deviation {} input {}",
            n.ensemble,
            n.seed,
            fmt_f64(n.deviation),
            n.input_digest
        );
    }
    let _ = writeln!(
        out,
        "{} records, {} failures, {} errors: {}",
        report.records.len(),
        report.failure_count(),
        report.error_count(),
        if report.passed() { "PASS" } else { "FAIL" }
    );
    out
}
