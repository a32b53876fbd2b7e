use std::io::Write;
use std::path::{Path, PathBuf};

use super::{ComparisonReport, ConvergenceRow};
use crate::error::Result;
use crate::solvers::{SpectralRow, Variant};

pub const CONVERGENCE_HEADER: [&str; 9] =
    ["dof", "h_x", "h_t_max", "h_t_min", "L2_error", "L2_eoc", "H1_error", "H1_eoc", "solve_seconds"];
pub const SPECTRAL_HEADER: [&str; 7] = ["N_t", "h_max", "h_min", "minReLambda", "sigma_min", "sigma_max", "kappa2"];
pub const COMPARISON_HEADER: [&str; 7] = ["level", "dof", "first", "second", "rel_diff", "tolerance", "flagged"];

/// Scientific notation with `digits` significant digits and a two-digit
/// exponent, e.g. `3.326e-01`.
pub fn format_sci(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn convergence_record(r: &ConvergenceRow) -> [String; 9] {
    [
        r.dof.to_string(),
        format!("{:.5}", r.h_x),
        format!("{:.5}", r.h_t_max),
        format!("{:.5}", r.h_t_min),
        format_sci(r.l2_error, 4),
        format!("{:.2}", r.l2_eoc),
        format_sci(r.h1_error, 4),
        format!("{:.2}", r.h1_eoc),
        format!("{:.1}", r.solve_seconds),
    ]
}

fn spectral_record(r: &SpectralRow) -> [String; 7] {
    [
        r.n_t.to_string(),
        format!("{:.5}", r.h_max),
        format!("{:.5}", r.h_min),
        format_sci(r.min_re_lambda, 4),
        format_sci(r.sigma_min, 4),
        format_sci(r.sigma_max, 4),
        format_sci(r.kappa2, 4),
    ]
}

pub fn write_convergence_csv<W: Write>(rows: &[ConvergenceRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CONVERGENCE_HEADER)?;
    for r in rows {
        w.write_record(convergence_record(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_spectral_csv<W: Write>(rows: &[SpectralRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SPECTRAL_HEADER)?;
    for r in rows {
        w.write_record(spectral_record(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_comparison_csv<W: Write>(report: &ComparisonReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(COMPARISON_HEADER)?;
    for p in &report.pairs {
        w.write_record([
            p.level.to_string(),
            p.dof.to_string(),
            p.first.clone(),
            p.second.clone(),
            format_sci(p.rel_diff, 3),
            format_sci(p.tolerance, 1),
            p.flagged.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `out.csv` → `out_bs-real.csv`, for one file per solver.
pub fn variant_path(path: &Path, variant: Variant) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_{variant}.{ext}"),
        None => format!("{stem}_{variant}"),
    };
    path.with_file_name(name)
}

fn markdown<const N: usize>(header: [&str; N], rows: impl Iterator<Item = [String; N]>) -> String {
    let mut s = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(N));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    s
}

pub fn convergence_markdown(rows: &[ConvergenceRow]) -> String {
    markdown(CONVERGENCE_HEADER, rows.iter().map(convergence_record))
}

pub fn spectral_markdown(rows: &[SpectralRow]) -> String {
    markdown(SPECTRAL_HEADER, rows.iter().map(spectral_record))
}
