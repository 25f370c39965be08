//! Subcommand bodies. Each returns the complete output so nothing partial is
//! printed when a later step fails.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use qec_core::analytic::{l_matrix, GammaTable};
use qec_core::oracle::{channel_decompose, observed_class, DEFAULT_TOLERANCE};
use qec_core::{
    decide, reduce_encoded, BlochVector, Error, Family, InformativenessClass, Limits, PauliSum, ReducedOperator,
    SubsetSpec, VerificationReport,
};

use crate::{CliError, Format};

/// Dense matrices are printed for reduced states of at most this many qubits.
const DENSE_PRINT_QUBITS: usize = 3;

fn json_text<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| CliError::new("--format", e))
}

#[derive(Serialize)]
struct ClassifyRow {
    subset: SubsetSpec,
    class: InformativenessClass,
    rule_path: String,
}

pub fn classify(n: usize, include_a: bool, format: Format) -> Result<String, CliError> {
    let rows: Vec<ClassifyRow> = SubsetSpec::enumerate(n, include_a)
        .map_err(|e| CliError::new("--n", e))?
        .map(|s| {
            let d = decide(&s);
            ClassifyRow { subset: s, class: d.class, rule_path: d.path_string() }
        })
        .collect();
    let family = if include_a { Family::WithA } else { Family::Storage };
    Ok(match format {
        Format::Json => json_text(&json!({ "n": n, "family": family, "results": rows }))?,
        Format::Csv => {
            let mut out = String::from("subset,class,rule_path\n");
            for r in &rows {
                let _ = writeln!(out, "\"{}\",{},{}", r.subset, r.class, r.rule_path);
            }
            out
        }
        Format::Text => {
            let width = rows.iter().map(|r| r.subset.to_string().len()).max().unwrap_or(2);
            let mut out = format!("# n = {n}, family = {}, {} subsets\n", family.name(), rows.len());
            for r in &rows {
                let _ = writeln!(out, "{:<width$}  {:<23}  {}", r.subset.to_string(), r.class.name(), r.rule_path);
            }
            out
        }
    })
}

fn keep_error(e: Error) -> CliError {
    CliError::new("--keep", e)
}

fn coefficient_text(re: f64, im: f64) -> String {
    let (re, im) = (clean(re), clean(im));
    if im == 0.0 {
        number_text(re)
    } else if re == 0.0 {
        format!("{}i", number_text(im))
    } else {
        format!("{}{}i", number_text(re), number_text(im))
    }
}

/// Signed, at most 12 decimals, trailing zeros dropped: the text view is for
/// reading; JSON keeps full precision.
fn number_text(x: f64) -> String {
    let s = format!("{:+.12}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "+0".into()
    } else {
        s.into()
    }
}

pub fn reduce(n: usize, keep: &str, input: &BlochVector, format: Format, limits: &Limits) -> Result<String, CliError> {
    let subset = SubsetSpec::parse(n, keep).map_err(keep_error)?;
    if subset.is_empty() {
        return Err(CliError::new("--keep", "subset is empty"));
    }
    let reduced = reduce_encoded(n, input, &subset, limits).map_err(keep_error)?;
    let pauli = reduced.to_pauli().map_err(keep_error)?;
    let decomposition = channel_decompose(n, &subset, limits).map_err(keep_error)?;
    let channels = decomposition.active_string(DEFAULT_TOLERANCE);
    let observed = observed_class(&decomposition, DEFAULT_TOLERANCE);
    let predicted = decide(&subset);
    let labels: Vec<String> = subset.labels().iter().map(ToString::to_string).collect();
    let dense = if labels.len() <= DENSE_PRINT_QUBITS {
        Some(reduced.to_dense(DENSE_PRINT_QUBITS).map_err(keep_error)?)
    } else {
        None
    };
    let path = match reduced {
        ReducedOperator::Dense(_) => "dense",
        ReducedOperator::Pauli(_) => "pauli",
    };
    Ok(match format {
        Format::Json => json_text(&json!({
            "n": n,
            "keep": subset,
            "labels": labels,
            "input": input,
            "path": path,
            "terms": pauli,
            "channels": channels,
            "norms": decomposition.norms,
            "predicted": predicted.class,
            "observed": observed,
            "dense": dense,
        }))?,
        Format::Csv => {
            let mut out = String::from("string,re,im\n");
            for (letters, c) in pauli.iter() {
                let s: String = letters.iter().map(|l| l.as_char()).collect();
                let _ = writeln!(out, "{s},{},{}", c.re, c.im);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "# n = {n}, keep = {subset}, input = ({}, {}, {}), path = {path}",
                input.x, input.y, input.z
            );
            let _ = writeln!(out, "labels: {}", labels.join(" "));
            write_terms(&mut out, &pauli);
            let _ = writeln!(out, "channels: {}", if channels.is_empty() { "none" } else { channels.as_str() });
            let _ = writeln!(out, "observed: {observed}");
            let _ = writeln!(out, "predicted: {} ({})", predicted.class, predicted.path_string());
            if let Some(d) = dense {
                let _ = writeln!(out, "matrix:");
                for row in 0..d.dim() {
                    let cells: Vec<String> = (0..d.dim())
                        .map(|col| {
                            let v = d.get(row, col);
                            format!("{:>10}", coefficient_text(v.re, v.im))
                        })
                        .collect();
                    let _ = writeln!(out, "  {}", cells.join(" "));
                }
            }
            out
        }
    })
}

/// Rounds away floating dust below 1e-15 so the text view stays readable.
fn clean(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

fn write_terms(out: &mut String, p: &PauliSum) {
    let _ = writeln!(out, "terms: {}", p.len());
    for (letters, c) in p.iter() {
        let s: String = letters.iter().map(|l| l.as_char()).collect();
        let _ = writeln!(out, "  {s}  {}", coefficient_text(c.re, c.im));
    }
}

pub fn gamma(n: usize, q: usize, format: Format) -> Result<String, CliError> {
    let table = GammaTable::new(n, q).map_err(|e| CliError::new("--q", e))?;
    let ls = (1..=3).map(|j| l_matrix(n, q, j)).collect::<Result<Vec<_>, _>>().map_err(|e| CliError::new("--q", e))?;
    Ok(match format {
        Format::Json => json_text(&json!({
            "n": n,
            "q": q,
            "l_matrices": ls,
            "gamma": table.entries,
        }))?,
        Format::Csv => {
            let mut out = String::from("sector,component,coefficient,letter\n");
            for e in &table.entries {
                let _ = writeln!(out, "{},{},{},{}", e.sector, e.component, e.coefficient, e.letter);
            }
            out
        }
        Format::Text => {
            let mut out = format!("# n = {n}, q = {q}\n");
            for (j, l) in ls.iter().enumerate() {
                let _ = writeln!(out, "L_{}:\n{l}", j + 1);
            }
            for e in &table.entries {
                let _ = writeln!(out, "Gamma_{},{} = {:+}{}", e.sector, e.component, e.coefficient, e.letter);
            }
            out
        }
    })
}

pub fn render_report(report: &VerificationReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_text(report),
        Format::Csv => report.to_csv().map_err(|e| CliError::new("--format", e)),
        Format::Text => Ok(report_text(report)),
    }
}

fn report_text(report: &VerificationReport) -> String {
    use InformativenessClass::*;
    let m = &report.meta;
    let mut out =
        format!("# verify: n <= {}, tol = {:e}, seed = {}, samples = {}\n", m.n_max, m.tol, m.seed, m.samples);
    for a in &m.assumptions {
        let _ = writeln!(out, "# assumption: {a}");
    }
    let _ = writeln!(
        out,
        "{:>2}  {:<5}  {:<8}  {:>6}  {:>5}  {:>5}  {:>5}  {:>10}",
        "n", "path", "family", "total", "FI", "PI", "CU", "mismatches"
    );
    for (i, path) in m.paths.iter().enumerate() {
        let n = i + 1;
        for family in [Family::Storage, Family::WithA] {
            let rows: Vec<_> = report.results.iter().filter(|r| r.n == n && r.family == family).collect();
            let count = |c| rows.iter().filter(|r| r.observed == c).count();
            let bad = rows.iter().filter(|r| r.is_mismatch(m.tol)).count();
            let _ = writeln!(
                out,
                "{:>2}  {:<5}  {:<8}  {:>6}  {:>5}  {:>5}  {:>5}  {:>10}",
                n,
                path.name(),
                family.name(),
                rows.len(),
                count(FullyInformative),
                count(PartiallyInformative),
                count(CompletelyUninformative),
                bad
            );
        }
    }
    for r in report.mismatched_rows() {
        let _ = writeln!(
            out,
            "MISMATCH n={} {} predicted={} observed={} channels={} norms={:?} max_err={:e}",
            r.n, r.subset, r.predicted, r.observed, r.channels, r.norms, r.max_err
        );
    }
    if let Some(ms) = m.duration_ms {
        let _ = writeln!(out, "duration: {ms} ms");
    }
    let _ =
        writeln!(out, "subsets: {}, mismatches: {}, max error: {:e}", m.subset_count, m.mismatches, report.max_error());
    let _ = writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" });
    out
}
