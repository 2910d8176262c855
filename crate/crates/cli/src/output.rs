// SPDX-License-Identifier: Apache-2.0

//! Rendering of reports as JSON, CSV or plain text.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use exactq_core::Params;
use serde::Serialize;

use crate::args::{Common, Format};
use crate::report::{ConstantsReport, GammaReport, PolyReport, VerifyReport};
use crate::Failure;

pub trait Render: Serialize {
    /// Header and records, RFC 4180.
    fn csv(&self, verbose: bool) -> Vec<Vec<String>>;
    fn text(&self, verbose: bool) -> String;
}

pub fn params_string(p: &Params) -> String {
    let mut parts = vec![format!("n={}", p.n)];
    let opts = [("k", p.k), ("l", p.l), ("d", p.d), ("u", p.u), ("w", p.w), ("g", p.g)];
    parts.extend(opts.iter().filter_map(|(k, v)| v.map(|v| format!("{k}={v}"))));
    if let Some(a) = &p.a {
        parts.push(format!("a={a}"));
    }
    parts.join(" ")
}

pub fn render<R: Render>(report: &R, format: Format, verbose: bool) -> Result<String, Failure> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).map_err(|e| Failure::Input(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in report.csv(verbose) {
                w.write_record(&row).map_err(|e| Failure::Input(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Failure::Input(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Failure::Input(e.to_string()))
        }
        Format::Text => Ok(report.text(verbose)),
    }
}

/// Writes the rendered report once, to `--out` or standard output.
pub fn emit<R: Render>(common: &Common, report: &R) -> Result<(), Failure> {
    let body = render(report, common.format, common.verbose)?;
    match &common.out {
        Some(path) => fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn row<const N: usize>(cells: [String; N]) -> Vec<String> {
    cells.into()
}

impl Render for VerifyReport {
    fn csv(&self, verbose: bool) -> Vec<Vec<String>> {
        if verbose {
            let mut rows = vec![row(["x".into(), "expected".into(), "accept".into(), "queries".into()])];
            for r in self.inputs.iter().flatten() {
                let accept = r.accept.map(|p| p.to_string()).unwrap_or_default();
                rows.push(row([r.x.clone(), (r.expected as u8).to_string(), accept, r.queries.to_string()]));
            }
            return rows;
        }
        let header = [
            "family", "params", "exact", "within_claim", "worst_case_queries", "claimed_bound",
            "structural_depth", "inputs_checked", "inputs_skipped", "max_error", "max_norm_residual", "tool_version",
        ];
        vec![
            header.iter().map(|s| s.to_string()).collect(),
            row([
                self.family.clone(),
                params_string(&self.params),
                self.exact.to_string(),
                self.within_claim.to_string(),
                self.worst_case_queries.to_string(),
                self.claimed_bound.to_string(),
                self.structural_depth.to_string(),
                self.inputs_checked.to_string(),
                self.inputs_skipped.to_string(),
                self.max_error.to_string(),
                self.max_norm_residual.to_string(),
                self.tool_version.clone(),
            ]),
        ]
    }

    fn text(&self, verbose: bool) -> String {
        let mut s = String::new();
        let verdict = if self.exact { "exact" } else { "NOT exact" };
        let _ = writeln!(s, "{} ({}): {verdict}", self.family, params_string(&self.params));
        let _ = writeln!(
            s,
            "queries: worst {} claimed {} structural {}",
            self.worst_case_queries, self.claimed_bound, self.structural_depth
        );
        let _ = writeln!(
            s,
            "inputs: {} checked, {} skipped; max error {:.3e}, max norm residual {:.3e}",
            self.inputs_checked, self.inputs_skipped, self.max_error, self.max_norm_residual
        );
        for c in &self.counterexamples {
            let out = c.output.map_or("lost".to_string(), |b| (b as u8).to_string());
            let _ = writeln!(s, "counterexample x={} expected {} got {out} with p={:.3e}", c.x, c.expected as u8, c.norm2);
        }
        if verbose {
            for r in self.inputs.iter().flatten() {
                let p = r.accept.map_or("-".to_string(), |p| format!("{p:.12}"));
                let _ = writeln!(s, "{} f={} P[1]={p} queries={}", r.x, r.expected as u8, r.queries);
            }
        }
        s
    }
}

impl Render for GammaReport {
    fn csv(&self, _verbose: bool) -> Vec<Vec<String>> {
        let mut rows = vec![row(["n".into(), "gamma".into(), "within_inverse_n".into()])];
        for e in &self.rows {
            rows.push(row([e.n.to_string(), e.gamma.to_string(), e.within_inverse_n.to_string()]));
        }
        rows
    }

    fn text(&self, _verbose: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "d={} k0={} n_init={} decays={}", self.d, self.k0, self.n_init, self.decays);
        for e in &self.rows {
            let mark = if e.within_inverse_n { "<= 1/n" } else { "" };
            let _ = writeln!(s, "{:>4}  {:.12}  {mark}", e.n, e.gamma);
        }
        s
    }
}

impl Render for PolyReport {
    fn csv(&self, verbose: bool) -> Vec<Vec<String>> {
        if verbose {
            let mut rows = vec![row(["path".into(), "label".into(), "degree".into(), "queries".into()])];
            for l in self.leaves.iter().flatten() {
                rows.push(row([l.path.clone(), l.label.clone(), l.degree.to_string(), l.queries.to_string()]));
            }
            return rows;
        }
        let mut rows = vec![row(["monomial".into(), "re".into(), "im".into()])];
        for c in &self.acceptance {
            rows.push(row([c.monomial.clone(), c.re.to_string(), c.im.to_string()]));
        }
        rows
    }

    fn text(&self, verbose: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} ({})", self.family, params_string(&self.params));
        let _ = writeln!(s, "acceptance polynomial, degree {}:", self.acceptance_degree);
        for c in &self.acceptance {
            let _ = writeln!(s, "  {:+.12} {}", c.re, c.monomial);
        }
        let q: Vec<String> = self.q_values.iter().map(|v| format!("{v:.6}")).collect();
        let _ = writeln!(s, "q(s), s = 0..n: {}", q.join(" "));
        let _ = writeln!(s, "deg q = {}", self.q_degree);
        let _ = writeln!(
            s,
            "degree audit: {} leaves, max degree {}, {} violations",
            self.audit_leaves, self.audit_max_degree, self.audit_violations
        );
        if verbose {
            for l in self.leaves.iter().flatten() {
                let _ = writeln!(s, "  [{}] {} degree {} <= {}", l.path, l.label, l.degree, l.queries);
            }
        }
        s
    }
}

impl Render for ConstantsReport {
    fn csv(&self, _verbose: bool) -> Vec<Vec<String>> {
        let mut rows = vec![row(["kind".into(), "name".into(), "value".into()])];
        rows.push(row(["gamma".into(), "gamma".into(), self.gamma.to_string()]));
        for c in &self.constants {
            rows.push(row(["constant".into(), c.name.clone(), c.value.to_string()]));
        }
        for r in &self.residuals {
            rows.push(row(["residual".into(), r.name.clone(), r.value.to_string()]));
        }
        rows
    }

    fn text(&self, _verbose: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n={} d={} gamma={:.12}", self.n, self.d, self.gamma);
        for c in &self.constants {
            let _ = writeln!(s, "  {:<4} {:+.12}", c.name, c.value);
        }
        if !self.sign_adjusted.is_empty() {
            let _ = writeln!(s, "sign flipped from reference table: {}", self.sign_adjusted.join(", "));
        }
        let _ = writeln!(s, "max residual {:.3e}", self.max_residual);
        s
    }
}
