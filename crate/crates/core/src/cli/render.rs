use std::fmt::Write;

use itertools::Itertools;

use super::{Format, Report};
use crate::strat::Verdict;

/// Renders a report; the JSON form is stable for identical inputs.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Human => human(report),
    }
}

fn human(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Toric(r) => {
            let t = &r.report;
            writeln!(out, "toric variety of dimension {}, lambda = {}", t.rank, t.lambda).unwrap();
            writeln!(out, "{:<16} {:<20} {:>5} {:>5} {:>5}  role", "cone", "coefficients", "dimY", "dim+", "dim-")
                .unwrap();
            for c in &t.components {
                let role = match (c.is_sink, c.is_source) {
                    (true, _) => "sink",
                    (_, true) => "source",
                    _ => "",
                };
                writeln!(
                    out,
                    "{:<16} {:<20} {:>5} {:>5} {:>5}  {role}",
                    c.cone.to_string(),
                    c.coefficients.iter().join(","),
                    c.dim_y,
                    c.dim_plus,
                    c.dim_minus
                )
                .unwrap();
            }
            writeln!(out, "cd(X \\ sink)   = {}", t.cd_minus_sink).unwrap();
            writeln!(out, "cd(X \\ source) = {}", t.cd_minus_source).unwrap();
            for w in &r.warnings {
                writeln!(out, "warning: {w}").unwrap();
            }
            for a in &t.assumptions {
                writeln!(out, "assumption: {a}").unwrap();
            }
        }
        Report::Flag(f) => {
            writeln!(
                out,
                "G/P for {} with P = P_{{{}}}, dim G/P = {}, |W| = {}",
                f.cartan,
                f.parabolic.iter().join(","),
                f.dim_gp,
                f.weyl_order
            )
            .unwrap();
            writeln!(
                out,
                "lambda pairings {:?} -> dominant {:?} (conjugated by {})",
                f.input_pairings, f.dominant_pairings, f.conjugating_word
            )
            .unwrap();
            writeln!(
                out,
                "{:<20} {:>5} {:>5} {:>5} {:>9}  fixed points",
                "min rep", "dimY", "dim+", "dim-", "rootcount"
            )
            .unwrap();
            for c in &f.cosets {
                let role = if c.is_sink {
                    " (sink)"
                } else if c.is_source {
                    " (source)"
                } else {
                    ""
                };
                writeln!(
                    out,
                    "{:<20} {:>5} {:>5} {:>5} {:>9}  {}{role}",
                    c.min_rep_word,
                    c.component_dim,
                    c.cell_dim_plus,
                    c.cell_dim_minus,
                    c.root_count_dim_minus,
                    c.member_words.join(" ")
                )
                .unwrap();
            }
            writeln!(out, "sink dimension  = {}", f.sink_dim).unwrap();
            writeln!(out, "cd(G/P \\ sink)   = {}", f.cd_value).unwrap();
            writeln!(out, "cd(G/P \\ source) = {}", f.cd_source_value).unwrap();
            for a in &f.assumptions {
                writeln!(out, "assumption: {a}").unwrap();
            }
        }
        Report::Strat(s) => {
            writeln!(out, "dim X = {}", s.dim_x).unwrap();
            writeln!(out, "cd(X \\ Z_1) <= {} (attained at stratum {})", s.bound.value, s.bound.argmax).unwrap();
            match &s.equality {
                Some(Verdict::EqualityCertified) => writeln!(out, "equality certified").unwrap(),
                Some(Verdict::BoundOnly { failing_strata }) => {
                    writeln!(out, "bound only; witness fails at strata {}", failing_strata.iter().join(",")).unwrap()
                }
                None => {}
            }
            for w in &s.bound.warnings {
                writeln!(out, "warning: {w}").unwrap();
            }
            for a in &s.assumptions {
                writeln!(out, "assumption: {a}").unwrap();
            }
        }
        Report::Ratmap(r) => {
            let ranks = r.image.ranks.iter().map(|x| x.map_or("-".to_string(), |v| v.to_string())).join(",");
            writeln!(out, "jacobian ranks per trial: {ranks} (seed {})", r.image.seed).unwrap();
            writeln!(out, "image dimension = {}", r.image.dim).unwrap();
            writeln!(out, "cd(X \\ Z) <= {}", r.bound).unwrap();
            writeln!(out, "note: {}", r.note).unwrap();
        }
    }
    out
}
