//! Reports for each subcommand, as JSON values or plain text.

use std::fmt::Write as _;

use certiroot::{ApproxVector, Certificate, Disk, MethodKind, PExponent, SolveResult};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub certificate: Option<Certificate>,
    pub converged: bool,
    pub roots: ApproxVector,
    pub disks: Vec<Disk>,
    pub iterations: usize,
    pub order_estimate: Option<f64>,
}

impl From<&SolveResult> for SolveReport {
    fn from(r: &SolveResult) -> Self {
        SolveReport {
            certificate: r.certificate.clone(),
            converged: r.converged,
            roots: r.final_iterate.clone(),
            disks: r.disks.clone(),
            iterations: r.iterations(),
            order_estimate: r.order_estimate,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisksReport {
    pub disks: Vec<Disk>,
    pub disjoint: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub method: MethodKind,
    pub p: PExponent,
    /// `None` where no ready-made threshold exists.
    pub threshold: Option<f64>,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdTable {
    pub n: usize,
    pub rows: Vec<ThresholdRow>,
}

fn complex(z: certiroot::Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{:.16e} - {:.16e}i", z.re, -z.im)
    } else {
        format!("{:.16e} + {:.16e}i", z.re, z.im)
    }
}

pub fn certificate_text(c: &Certificate) -> String {
    let mut out = String::new();
    let state = match (c.issued, c.strict) {
        (true, true) => format!("issued, strict, order {}", c.order.unwrap_or(3)),
        (true, false) => "issued (phi(E0) = 1, order not guaranteed)".to_string(),
        (false, _) => "not issued".to_string(),
    };
    let _ = writeln!(out, "certificate  {state}");
    let _ = writeln!(out, "  method {} with p = {}", c.method, c.ctx.p);
    let _ = write!(out, "  E0 = {:.6e}, tau = {:.6e}", c.e0, c.tau);
    if let Some(phi) = c.phi0 {
        let _ = write!(out, ", phi(E0) = {phi:.6e}");
    }
    if let Some(theta) = c.theta {
        let _ = write!(out, ", theta = {theta:.6e}");
    }
    out.push('\n');
    if let Some(rho) = &c.rho {
        let _ = writeln!(out, "  ball radius max rho_i = {:.6e}", rho.max());
    }
    out
}

pub fn disks_text(disks: &[Disk], disjoint: bool) -> String {
    let mut out = format!("disks        {} ({})\n", disks.len(), if disjoint { "disjoint" } else { "not shown disjoint" });
    for (i, d) in disks.iter().enumerate() {
        let _ = writeln!(out, "  {:>3}  {}  r = {:.3e}", i + 1, complex(d.center), d.radius);
    }
    out
}

pub fn solve_text(r: &SolveResult) -> String {
    let mut out = String::new();
    if let Some(c) = &r.certificate {
        out.push_str(&certificate_text(c));
    }
    let _ = writeln!(
        out,
        "converged    {} after {} iteration{}",
        if r.converged { "yes" } else { "no" },
        r.iterations(),
        if r.iterations() == 1 { "" } else { "s" }
    );
    match r.order_estimate {
        Some(o) => {
            let _ = writeln!(out, "order        {o:.3}");
        }
        None => out.push_str("order        not estimated\n"),
    }
    out.push_str("roots\n");
    for (i, z) in r.final_iterate.iter().enumerate() {
        let _ = writeln!(out, "  {:>3}  {}", i + 1, complex(*z));
    }
    if !r.disks.is_empty() {
        out.push_str(&disks_text(&r.disks, r.disks_disjoint));
    }
    out
}

pub fn thresholds_text(t: &ThresholdTable) -> String {
    let mut out = format!("ready-made bounds on E_f(x0) for n = {}\n", t.n);
    let _ = writeln!(out, "{:<15} {:<5} bound", "method", "p");
    for row in &t.rows {
        let bound = match row.threshold {
            Some(v) if row.strict => format!("<  {v}"),
            Some(v) => format!("<= {v}"),
            None => "none".to_string(),
        };
        let _ = writeln!(out, "{:<15} {:<5} {bound}", row.method.name(), row.p.to_string());
    }
    out
}
