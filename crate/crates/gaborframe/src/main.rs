//! `gaborframe`: frame decisions, dual windows, obstruction curves, and
//! frame-set atlases for compactly supported piecewise-polynomial windows,
//! all in exact rational arithmetic.
//!
//! Exit codes: 0 success, 2 parameters outside the characterized region,
//! 1 any error (including a `verify` run exceeding its tolerance).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gaborframe::io;
use gaborframe::svg;
use gaborframe_core::analysis::Verdict;
use gaborframe_core::atlas::{atlas_grid, classify_bspline_point_with, AtlasConfig};
use gaborframe_core::rat::{parse_rational, to_f64, Rat};
use gaborframe_core::window::Window;
use gaborframe_core::{candidate_curves, check_frame, construct_dual, make_bspline};

#[derive(Parser)]
#[command(
    name = "gaborframe",
    about = "Gabor frame analysis for compactly supported piecewise-polynomial windows",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WindowSource {
    /// Window document (JSON with exact rational coefficients).
    #[arg(long, conflicts_with = "bspline")]
    window: Option<PathBuf>,
    /// Use the B-spline of this order instead of a window file.
    #[arg(long)]
    bspline: Option<i64>,
}

impl WindowSource {
    fn load(&self) -> Result<(Window, Option<i64>), String> {
        match (&self.window, self.bspline) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                let w = io::window_from_json(&text).map_err(|e| e.to_string())?;
                Ok((w, None))
            }
            (None, Some(n)) => {
                let w = make_bspline(n).map_err(|e| e.to_string())?;
                Ok((w, Some(n)))
            }
            (None, None) => Err("exactly one of --window or --bspline is required".into()),
            (Some(_), Some(_)) => Err("use either --window or --bspline, not both".into()),
        }
    }
}

#[derive(Args)]
struct LatticeArgs {
    /// Translation step (rational "p/q", integer, or exact decimal).
    #[arg(long, value_parser = parse_rat_arg)]
    a: Rat,
    /// Modulation step.
    #[arg(long, value_parser = parse_rat_arg)]
    b: Rat,
}

fn parse_rat_arg(s: &str) -> Result<Rat, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Decide the frame property of (window, a, b).
    Check {
        #[command(flatten)]
        source: WindowSource,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Construct the compactly supported dual window.
    Dual {
        #[command(flatten)]
        source: WindowSource,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Sample count for the CSV export.
        #[arg(long, default_value_t = 2000)]
        grid: usize,
        /// Write (x, h) samples to this CSV file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the exact case tree to this JSON file.
        #[arg(long)]
        cases: Option<PathBuf>,
    },
    /// Construct the dual and verify the duality identities numerically.
    Verify {
        #[command(flatten)]
        source: WindowSource,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Samples per duality band.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
        /// Maximum acceptable residual.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Estimate the lower frame bound on Zak-domain fiber grids.
    Zzbound {
        #[command(flatten)]
        source: WindowSource,
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Fiber-offset grid size.
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// Phase grid size (defaults to --grid).
        #[arg(long)]
        nu_grid: Option<usize>,
    },
    /// Enumerate candidate obstruction curves.
    Curves {
        #[command(flatten)]
        source: WindowSource,
        /// Largest witness index enumerated.
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        /// Write the curve table to this CSV file (stdout otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the curves over the region rectangle.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Classify a B-spline parameter grid against the frame-set rules.
    Atlas {
        /// B-spline order.
        #[arg(long)]
        bspline: i64,
        #[arg(long, value_parser = parse_rat_arg)]
        amin: Rat,
        #[arg(long, value_parser = parse_rat_arg)]
        amax: Rat,
        #[arg(long, value_parser = parse_rat_arg)]
        bmin: Rat,
        #[arg(long, value_parser = parse_rat_arg)]
        bmax: Rat,
        /// Cells per axis.
        #[arg(long, default_value_t = 100)]
        res: u32,
        /// Denominator cap for the a = k/p rule.
        #[arg(long, default_value_t = 32)]
        pcap: u64,
        /// Write cells to this CSV file (stdout otherwise).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Render the sweep to this SVG file.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Print to stdout, exiting quietly when the reading end has gone away
/// (e.g. piped into `head`).
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn emit_line(text: &str) {
    emit(text);
    emit("\n");
}

/// Cap sweep parallelism with GABOR_THREADS (single-threaded fallback on
/// parse failure is deliberate: determinism beats speed).
fn configure_threads() {
    if let Ok(v) = std::env::var("GABOR_THREADS") {
        let n = v.parse::<usize>().unwrap_or(1).max(1);
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check {
            source,
            lattice,
            json,
        } => {
            let (w, bspline) = source.load()?;
            let decision =
                check_frame(&w, &lattice.a, &lattice.b).map_err(|e| e.to_string())?;
            let atlas_label = bspline.map(|n| {
                classify_bspline_point_with(n, &lattice.a, &lattice.b, &AtlasConfig::default())
                    .to_string()
            });
            if json {
                let report = io::check_report(&decision, atlas_label);
                emit_line(&serde_json::to_string_pretty(&report).unwrap());
            } else {
                emit_line(&format!("window: {}", w.describe()));
                match &decision.verdict {
                    Verdict::Frame => emit_line("verdict: Frame"),
                    Verdict::NotFrame => emit_line("verdict: NotFrame"),
                    Verdict::OutOfScope(r) => emit_line(&format!("verdict: OutOfScope ({r})")),
                }
                if let Some(p) = &decision.params {
                    emit_line(&format!("M = {}", p.m));
                    emit_line(&format!("kappa = {}", p.kappa));
                }
                if let Some(c) = decision.failed_condition() {
                    emit_line(&format!("failed condition: {c}"));
                }
                for wit in &decision.witnesses {
                    emit_line(&format!(
                        "witness: side={:?} n={} y={}{}",
                        wit.side,
                        wit.n,
                        io::format_exact(&wit.zero),
                        if wit.one_sided { " (one-sided)" } else { "" }
                    ));
                }
                if let Some(label) = atlas_label {
                    emit_line(&format!("atlas: {label}"));
                }
            }
            Ok(exit_for(&decision.verdict))
        }
        Command::Dual {
            source,
            lattice,
            grid,
            out,
            cases,
        } => {
            let (w, _) = source.load()?;
            let decision =
                check_frame(&w, &lattice.a, &lattice.b).map_err(|e| e.to_string())?;
            if let Verdict::OutOfScope(r) = &decision.verdict {
                eprintln!("out of scope: {r}");
                return Ok(ExitCode::from(2));
            }
            let h = construct_dual(&w, &lattice.a, &lattice.b).map_err(|e| e.to_string())?;
            let file = io::dual_cases_file(&h);
            emit_line(&format!(
                "dual constructed: M = {}, kappa = {}, supp h within [-{r}, {r}]",
                file.m,
                file.kappa,
                r = file.support_radius
            ));
            emit_line(&format!(
                "epsilon = {}, delta = {}, base bound = {}, sampled sup = {:.6}",
                file.epsilon, file.delta, file.base_bound, file.sup_sampled
            ));
            if let Some(path) = out {
                let mut buf = Vec::new();
                io::write_dual_samples(&mut buf, &h, grid).map_err(|e| e.to_string())?;
                fs::write(&path, buf).map_err(|e| e.to_string())?;
                emit_line(&format!("samples written to {}", path.display()));
            }
            if let Some(path) = cases {
                let json = serde_json::to_string_pretty(&file).unwrap();
                fs::write(&path, json).map_err(|e| e.to_string())?;
                emit_line(&format!("case tree written to {}", path.display()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            source,
            lattice,
            grid,
            tol,
        } => {
            let (w, _) = source.load()?;
            let decision =
                check_frame(&w, &lattice.a, &lattice.b).map_err(|e| e.to_string())?;
            if let Verdict::OutOfScope(r) = &decision.verdict {
                eprintln!("out of scope: {r}");
                return Ok(ExitCode::from(2));
            }
            let h = construct_dual(&w, &lattice.a, &lattice.b).map_err(|e| e.to_string())?;
            let report = gaborframe::duality_residual(&w, &h, h.params(), grid)
                .map_err(|e| e.to_string())?;
            emit_line(&serde_json::to_string_pretty(&report).unwrap());
            if report.overall <= tol {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "residual {} exceeds tolerance {tol}",
                    report.overall
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::Zzbound {
            source,
            lattice,
            grid,
            nu_grid,
        } => {
            let (w, _) = source.load()?;
            let nu = nu_grid.unwrap_or(grid);
            let est = gaborframe::zz_lower_bound(&w, &lattice.a, &lattice.b, grid, nu);
            emit_line(
                &serde_json::json!({
                    "schema": io::SCHEMA,
                    "estimate": est,
                    "x_grid": grid,
                    "nu_grid": nu,
                })
                .to_string(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Curves {
            source,
            nmax,
            out,
            svg: svg_path,
        } => {
            let (w, _) = source.load()?;
            let curves = candidate_curves(&w, nmax);
            let mut buf = Vec::new();
            io::write_curves_csv(&mut buf, &curves).map_err(|e| e.to_string())?;
            match out {
                Some(path) => {
                    fs::write(&path, buf).map_err(|e| e.to_string())?;
                    emit_line(&format!("{} curves written to {}", curves.len(), path.display()));
                }
                None => emit(&String::from_utf8(buf).unwrap()),
            }
            if let Some(path) = svg_path {
                let b_max = to_f64(&w.alpha().recip()) * 1.1;
                let rendered = svg::curves_svg(&curves, w.alpha(), b_max);
                fs::write(&path, rendered).map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Atlas {
            bspline,
            amin,
            amax,
            bmin,
            bmax,
            res,
            pcap,
            out,
            svg: svg_path,
        } => {
            if bspline < 2 {
                return Err("B-spline order must be >= 2".into());
            }
            let cfg = AtlasConfig {
                prop_vi_denominator_cap: pcap,
            };
            let cells = atlas_grid(bspline, (&amin, &amax), (&bmin, &bmax), res, &cfg);
            let mut buf = Vec::new();
            io::write_atlas_csv(&mut buf, &cells).map_err(|e| e.to_string())?;
            match out {
                Some(path) => {
                    fs::write(&path, buf).map_err(|e| e.to_string())?;
                    emit_line(&format!("{} cells written to {}", cells.len(), path.display()));
                }
                None => emit(&String::from_utf8(buf).unwrap()),
            }
            if let Some(path) = svg_path {
                let rendered = svg::atlas_svg(&cells, (&amin, &amax), (&bmin, &bmax), res);
                fs::write(&path, rendered).map_err(|e| e.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn exit_for(verdict: &Verdict) -> ExitCode {
    match verdict {
        Verdict::Frame | Verdict::NotFrame => ExitCode::SUCCESS,
        Verdict::OutOfScope(_) => ExitCode::from(2),
    }
}
