use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stheat::experiments::{
    compare_solvers, convergence_markdown, format_sci, parse_solvers, run_convergence, run_eigstudy, spectral_markdown,
    variant_path, write_comparison_csv, write_convergence_csv, write_spectral_csv, ExperimentConfig,
};

#[derive(Parser)]
#[command(name = "stheat", version, about = "Space-time finite element experiments for the heat equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Error table over uniform refinement levels, one per solver.
    Convergence(Common),
    /// Spectral statistics of the temporal pencil for N_t = 4·2^level.
    Eigstudy(Common),
    /// Pairwise solution differences between solvers and the dense oracle.
    Compare(Common),
}

#[derive(Args)]
struct Common {
    /// Key-value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    max_level: Option<usize>,
    /// Comma separated subset of bs-real, bs-complex, fd.
    #[arg(long)]
    solver: Option<String>,
    /// Explicitly summed terms of the temporal series.
    #[arg(long)]
    jmax: Option<usize>,
    /// Worker threads (0: one per core).
    #[arg(long)]
    threads: Option<usize>,
    /// CSV output path (one file per solver for `convergence`).
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> stheat::Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(l) = self.max_level {
            cfg.max_level = l;
        }
        if let Some(s) = &self.solver {
            cfg.solvers = parse_solvers(s)?;
        }
        if let Some(j) = self.jmax {
            cfg.j_max = j;
        }
        if let Some(t) = self.threads {
            cfg.threads = t;
        }
        if let Some(o) = &self.out {
            cfg.out = Some(o.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn create(path: &Path) -> stheat::Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(BufWriter::new(File::create(path)?))
}

fn convergence(cfg: &ExperimentConfig) -> stheat::Result<bool> {
    let tables = run_convergence(cfg)?;
    let mut ok = true;
    for table in &tables {
        println!("## {}  (h_x = sqrt of the largest element area)\n", table.variant);
        print!("{}", convergence_markdown(&table.rows));
        if let Some(reason) = &table.aborted {
            println!("\naborted: {reason}");
            ok = false;
        }
        for r in table.reports.iter().filter(|r| r.fallback.is_some()) {
            println!("dof {}: {}", r.dof, r.fallback.as_deref().unwrap_or_default());
        }
        println!();
        if let Some(out) = &cfg.out {
            let path = if tables.len() > 1 { variant_path(out, table.variant) } else { out.clone() };
            write_convergence_csv(&table.rows, create(&path)?)?;
        }
    }
    Ok(ok)
}

fn eigstudy(cfg: &ExperimentConfig) -> stheat::Result<bool> {
    let rows = run_eigstudy(cfg)?;
    print!("{}", spectral_markdown(&rows));
    if let Some(out) = &cfg.out {
        write_spectral_csv(&rows, create(out)?)?;
    }
    Ok(true)
}

fn compare(cfg: &ExperimentConfig) -> stheat::Result<bool> {
    let report = compare_solvers(cfg)?;
    for p in &report.pairs {
        println!(
            "level {} dof {:>8}  {:>10} vs {:<10} {}  (tol {}){}",
            p.level,
            p.dof,
            p.first,
            p.second,
            format_sci(p.rel_diff, 3),
            format_sci(p.tolerance, 1),
            if p.flagged { "  EXCEEDED" } else { "" }
        );
    }
    for (level, r) in &report.reports {
        println!("level {level} {:<12} residual {}", r.variant_label(), format_sci(r.residual, 3));
    }
    if let Some(out) = &cfg.out {
        write_comparison_csv(&report, create(out)?)?;
    }
    Ok(!report.any_flagged())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Convergence(c) => c.config().and_then(|cfg| convergence(&cfg)),
        Command::Eigstudy(c) => c.config().and_then(|cfg| eigstudy(&cfg)),
        Command::Compare(c) => c.config().and_then(|cfg| compare(&cfg)),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
