//! Report serialization: CSV with one line per sweep point, and Markdown
//! tables mirroring the published layout (error columns, rate last).

use std::io::{self, Write};

use fracl1::{ConvergenceReport, OperatorKind, Sweep};

pub const CSV_HEADER: &str = "problem,alpha,beta,ic,t,M,N,error_raw,error_normalized,rate";

/// 9 significant digits, the wire format for every float column.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

fn problem_tag(op: OperatorKind) -> &'static str {
    match op {
        OperatorKind::Laplacian => "subdiffusion",
        OperatorKind::RiemannLiouville { .. } => "space_time_fractional",
    }
}

fn sweep_point(sweep: &Sweep, i: usize) -> (f64, usize) {
    match sweep {
        Sweep::ByTimeSteps { t_target, n_list } => (*t_target, n_list[i]),
        Sweep::ByTargetTime { n, t_list } => (t_list[i], *n),
    }
}

pub fn write_csv<W: Write>(reports: &[(String, ConvergenceReport)], w: &mut W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for (_, report) in reports {
        let beta = match report.operator {
            OperatorKind::Laplacian => String::new(),
            OperatorKind::RiemannLiouville { beta } => sig9(beta),
        };
        for i in 0..report.errors_raw.len() {
            let (t, n) = sweep_point(&report.sweep, i);
            let rate = if i == 0 {
                String::new()
            } else {
                sig9(report.rates[i - 1])
            };
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                problem_tag(report.operator),
                sig9(report.alpha),
                beta,
                report.ic,
                sig9(t),
                report.m,
                n,
                sig9(report.errors_raw[i]),
                sig9(report.errors_normalized[i]),
                rate
            )?;
        }
    }
    Ok(())
}

/// Markdown table: one row per report, error columns across the sweep, the
/// headline rate in the last column. `normalized` picks which error column
/// the table displays.
pub fn write_markdown<W: Write>(
    reports: &[(String, ConvergenceReport)],
    normalized: bool,
    w: &mut W,
) -> io::Result<()> {
    if reports.is_empty() {
        return Ok(());
    }
    let sweep = &reports[0].1.sweep;
    let mut header = String::from("| config |");
    let mut rule = String::from("|---|");
    match sweep {
        Sweep::ByTimeSteps { n_list, .. } => {
            for n in n_list {
                header.push_str(&format!(" N={n} |"));
                rule.push_str("---|");
            }
        }
        Sweep::ByTargetTime { t_list, .. } => {
            for t in t_list {
                header.push_str(&format!(" t={t:.0e} |"));
                rule.push_str("---|");
            }
        }
    }
    header.push_str(" rate |");
    rule.push_str("---|");
    writeln!(w, "{header}")?;
    writeln!(w, "{rule}")?;
    for (label, report) in reports {
        let errors = if normalized {
            &report.errors_normalized
        } else {
            &report.errors_raw
        };
        let mut line = format!("| {label} |");
        for e in errors {
            line.push_str(&format!(" {:.2e} |", e));
        }
        match report.table_rate() {
            Some(r) => line.push_str(&format!(" {r:.2} |")),
            None => line.push_str(" - |"),
        }
        writeln!(w, "{line}")?;
    }
    for (label, report) in reports {
        for note in &report.notes {
            writeln!(w, "<!-- {label}: {note} -->")?;
        }
    }
    Ok(())
}
