//! The `tiling` command line.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{format_table2, table2, RHO5_PUBLISHED};
use crate::families::croft::croft_optimize;
use crate::families::k6::{VariantFlags, VoidCorners};
use crate::instance::Family;
use crate::optimizer::{maximize_rho, table1_rows, OptimizationResult, OptimizeError, TABLE1_PUBLISHED};
use crate::params::{evaluate_file, ParamsFile};
use crate::render::{render, RenderOptions};
use crate::verifier::{verify, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

/// Published rho_6, used by `bounds` when no six-colour result is supplied.
const RHO6_PUBLISHED: f64 = 6992.1655504123;

#[derive(Parser, Debug)]
#[command(name = "tiling", version, about = "Partial tilings of the plane under the unit-distance rule")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Maximise rho for a family and print the result as JSON.
    Optimize {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        /// k = 6 variant: `full`, `pritikin`, or a comma list of
        /// `rhombus|dodeca`, `arrows`, `wavy`, `curved`, `colors=N`.
        #[arg(long, value_parser = parse_flags)]
        flags: Option<VariantFlags>,
        /// Parameter file to start from.
        #[arg(long)]
        init: Option<PathBuf>,
        /// Number of colours for the Croft family.
        #[arg(long, default_value_t = 4)]
        k: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metrics and constraint residuals at a parameter file, without optimising.
    Eval {
        #[arg(long, value_parser = parse_family)]
        family: Option<Family>,
        #[arg(long)]
        params: PathBuf,
    },
    /// Check properness; exit code 1 when a violation is found.
    Verify {
        #[arg(long)]
        params: PathBuf,
        /// Monte Carlo samples for the void fraction; 0 skips the estimate.
        #[arg(long, default_value_t = 0)]
        mc_samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Draw a 3 x 3 window of cells as SVG.
    Render {
        #[arg(long)]
        params: PathBuf,
        /// Magnification of every void about its centroid.
        #[arg(long, default_value_t = 1.0)]
        zoom: f64,
        #[arg(long)]
        constraints: bool,
        #[arg(long)]
        no_outline: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pigeonhole bounds from rho_1..rho_6.
    Bounds {
        /// Directory of optimisation results (`*.json`) to take rho values from.
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Reoptimise cells of the variant table and compare with the published values.
    Table1 {
        /// Row positions, comma separated; all rows by default.
        #[arg(long, value_delimiter = ',')]
        rows: Option<Vec<usize>>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    serde_json::from_value(json!(s)).map_err(|_| format!("unknown family {s:?}; expected croft, k5, k6 or k7"))
}

/// Variant flags from `full`, `pritikin`, `k7` or a comma list.
pub fn parse_flags(s: &str) -> Result<VariantFlags, String> {
    let preset = match s {
        "full" => Some(VariantFlags::FULL),
        "pritikin" => Some(VariantFlags::PRITIKIN),
        "k7" => Some(VariantFlags::K7),
        _ => None,
    };
    let flags = match preset {
        Some(f) => f,
        None => {
            let mut f = VariantFlags { void_corners: VoidCorners::Rhombus4, arrowheads: false, wavy: false, curved: false, proper_colors: 0 };
            for word in s.split(',').map(str::trim).filter(|w| !w.is_empty()) {
                match word {
                    "rhombus" => f.void_corners = VoidCorners::Rhombus4,
                    "dodeca" => f.void_corners = VoidCorners::Dodeca12,
                    "arrows" => f.arrowheads = true,
                    "wavy" => f.wavy = true,
                    "curved" => f.curved = true,
                    w => match w.strip_prefix("colors=").map(str::parse::<u8>) {
                        Some(Ok(n)) => f.proper_colors = n,
                        _ => return Err(format!("unknown flag {w:?}")),
                    },
                }
            }
            if f.proper_colors == 0 {
                f.proper_colors = if f.arrowheads { 9 } else { 8 };
            }
            f
        }
    };
    flags.validate().map_err(|e| e.to_string())?;
    Ok(flags)
}

/// Failure carrying an exit code and a machine-readable body for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub body: serde_json::Value,
}

impl Failure {
    fn usage(kind: &str, message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, body: json!({ "error": kind, "message": message.to_string() }) }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialisable")
}

fn load(path: &Path) -> Result<ParamsFile, Failure> {
    ParamsFile::load(path).map_err(|e| Failure::usage("params", e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))
}

/// Runs one command; the returned text goes to standard output.
pub fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Optimize { family, flags, init, k, seed, out } => {
            let mut start = init.as_deref().map(load).transpose()?.map(|f| f.params);
            if family == Family::Croft {
                start.get_or_insert_with(BTreeMap::new).entry("k".into()).or_insert(k as f64);
            }
            let result = match maximize_rho(family, flags.as_ref(), start.as_ref(), seed) {
                Ok(r) => r,
                Err(OptimizeError::NotConverged { best, residual }) => {
                    return Err(Failure {
                        code: EXIT_CONVERGENCE,
                        body: json!({ "error": "not_converged", "residual": residual, "best": *best }),
                    })
                }
                Err(OptimizeError::Infeasible(m)) => {
                    return Err(Failure { code: EXIT_CONVERGENCE, body: json!({ "error": "infeasible", "message": m }) })
                }
                Err(e) => return Err(Failure::usage("optimize", e)),
            };
            let text = to_json(&result);
            if let Some(p) = out {
                write(&p, &text)?;
            }
            Ok(text)
        }
        Command::Eval { family, params } => {
            let file = load(&params)?;
            if let Some(f) = family {
                if f != file.family {
                    return Err(Failure::usage("family", format!("file holds {} parameters, not {f}", file.family)));
                }
            }
            let report = evaluate_file(&file).map_err(|e| Failure::usage("build", e))?;
            Ok(to_json(&report))
        }
        Command::Verify { params, mc_samples, seed, tol } => {
            let inst = load(&params)?.build().map_err(|e| Failure::usage("build", e))?;
            let mc = (mc_samples > 0).then_some((mc_samples, seed));
            let report = verify(&inst, tol, mc).map_err(|e| Failure::usage("verify", e))?;
            let text = to_json(&report);
            if report.proper {
                Ok(text)
            } else {
                Err(Failure { code: EXIT_VERIFY, body: serde_json::to_value(&report).expect("serialisable") })
            }
        }
        Command::Render { params, zoom, constraints, no_outline, out } => {
            if !(zoom >= 1.0 && zoom.is_finite()) {
                return Err(Failure::usage("zoom", format!("zoom {zoom} must be at least 1")));
            }
            let inst = load(&params)?.build().map_err(|e| Failure::usage("build", e))?;
            let svg = render(&inst, &RenderOptions { void_zoom: zoom, show_constraints: constraints, cell_outline: !no_outline });
            write(&out, &svg)?;
            Ok(to_json(&json!({ "out": out.display().to_string(), "bytes": svg.len() })))
        }
        Command::Bounds { from, json: as_json } => {
            let (rhos, sources) = collect_rhos(from.as_deref())?;
            let rows = table2(&rhos).map_err(|e| Failure::usage("bounds", e))?;
            if as_json {
                Ok(to_json(&json!({ "rows": rows, "sources": sources })))
            } else {
                Ok(format_table2(&rows))
            }
        }
        Command::Table1 { rows, seed, json: as_json } => {
            let rows = rows.unwrap_or_else(|| (0..TABLE1_PUBLISHED.len()).collect());
            let cells = table1_rows(&rows, seed);
            if let Some(Err(e)) = cells.iter().find(|c| c.is_err()) {
                return Err(Failure { code: EXIT_CONVERGENCE, body: json!({ "error": "table1", "message": e }) });
            }
            let cells: Vec<_> = cells.into_iter().map(Result::unwrap).collect();
            if as_json {
                return Ok(to_json(&cells));
            }
            let mut text = format!("{:<56}{:>16}{:>16}{:>10}\n", "variant", "rho", "published", "rel err");
            for c in &cells {
                text += &format!("{:<56}{:>16.6}{:>16.6}{:>10.1e}\n", c.variant, c.rho, c.published, c.rel_error);
            }
            Ok(text)
        }
    }
}

/// rho_1..rho_6: Croft values computed, the rest from `dir` where present, else published.
fn collect_rhos(dir: Option<&Path>) -> Result<(BTreeMap<u8, f64>, BTreeMap<u8, String>), Failure> {
    let mut rhos = BTreeMap::new();
    let mut sources = BTreeMap::new();
    for k in 1..=4 {
        rhos.insert(k, croft_optimize(k).map_err(|e| Failure::usage("croft", e))?.rho_k);
        sources.insert(k, "computed".to_string());
    }
    if let Some(dir) = dir {
        let entries = std::fs::read_dir(dir).map_err(|e| Failure::usage("io", format!("{}: {e}", dir.display())))?;
        let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "json")).collect();
        paths.sort();
        for p in paths {
            let text = std::fs::read_to_string(&p).map_err(|e| Failure::usage("io", format!("{}: {e}", p.display())))?;
            // other JSON files in the directory are not results
            let Ok(r) = serde_json::from_str::<OptimizationResult>(&text) else { continue };
            let k = match r.family {
                Family::Croft => r.params.get("k").copied().unwrap_or(4.0) as u8,
                Family::K5 => 5,
                Family::K6 => 6,
                Family::K7 => continue,
            };
            if r.family != Family::Croft && rhos.get(&k).is_none_or(|&old| r.rho > old) {
                rhos.insert(k, r.rho);
                sources.insert(k, p.display().to_string());
            }
        }
    }
    for (k, rho) in [(5, RHO5_PUBLISHED), (6, RHO6_PUBLISHED)] {
        if !rhos.contains_key(&k) {
            rhos.insert(k, rho);
            sources.insert(k, "published".to_string());
        }
    }
    Ok((rhos, sources))
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                print!("{e}");
                return EXIT_OK;
            }
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string() }));
            return EXIT_USAGE;
        }
    };
    match run(cli) {
        Ok(text) => {
            use std::io::Write;
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
            EXIT_OK
        }
        Err(f) => {
            let text = serde_json::to_string_pretty(&f.body).expect("serialisable");
            // an improper tiling is still a report; only errors go to stderr
            if f.code == EXIT_VERIFY {
                use std::io::Write;
                let _ = writeln!(std::io::stdout(), "{text}");
            } else {
                eprintln!("{text}");
            }
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_presets_and_lists() {
        assert_eq!(parse_flags("full"), Ok(VariantFlags::FULL));
        assert_eq!(parse_flags("rhombus"), Ok(VariantFlags::PRITIKIN));
        assert_eq!(parse_flags("dodeca,arrows,wavy,curved"), Ok(VariantFlags::FULL));
        assert_eq!(parse_flags("dodeca,wavy,curved,colors=7"), Ok(VariantFlags::K7));
        assert!(parse_flags("arrows,colors=7").is_err());
        assert!(parse_flags("spiky").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(main_with_args(["tiling", "optimize", "--family", "k9"]), EXIT_USAGE);
        assert_eq!(main_with_args(["tiling", "frobnicate"]), EXIT_USAGE);
    }
}
