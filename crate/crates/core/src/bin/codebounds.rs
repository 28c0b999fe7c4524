use clap::{Args, Parser, Subcommand};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use codebounds::harness::{rows_to_csv, rows_to_json, stats_to_csv, stats_to_json, REFERENCE_Q_VALUES};
use codebounds::table3::table3_report;
use codebounds::{
    aq_exact_bruteforce, aq_upper, bound_a, bound_b_max_k, classical, compute_stats, k_form,
    litsyn_laihonen, run_sweep, weak_bound_b_max_k, BoundOracle, CodeParams, Competitor,
    DeltaMode, KnownValuesSource, Nat, OutputFormat, PuncturingParams, SweepConfig,
};

const EXIT_INVALID: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "codebounds", version, about = "Exact upper bounds on the size of error-correcting codes")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// How the ball-ratio correction is evaluated: floor or exact
    #[arg(long, global = true, default_value = "floor")]
    delta_mode: DeltaMode,
    /// CSV of exact A_q(n,d) values (header q,n,d,A); defaults to the bundled binary table
    #[arg(long, global = true, env = "CODEBOUNDS_KNOWN_VALUES")]
    known_values: Option<PathBuf>,
    /// Ignore all tabulated values and use computed bounds only
    #[arg(long, global = true, conflicts_with = "known_values")]
    no_known_values: bool,
    /// Output format: csv or json
    #[arg(long, global = true, default_value = "csv")]
    format: OutputFormat,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    #[arg(short = 'q')]
    q: u32,
    #[arg(short = 'n')]
    n: u32,
    #[arg(short = 'd')]
    d: u32,
}

#[derive(Args, Debug, Clone)]
struct GridArgs {
    /// Comma-separated alphabet sizes
    #[arg(long, value_delimiter = ',', default_values_t = REFERENCE_Q_VALUES.to_vec())]
    q_list: Vec<u32>,
    #[arg(long, default_value_t = 3)]
    n_min: u32,
    #[arg(long, default_value_t = 100)]
    n_max: u32,
    /// Comma-separated bounds to compare
    #[arg(
        long,
        value_delimiter = ',',
        default_values = ["boundB", "johnson", "hamming", "griesmer", "elias", "singleton"]
    )]
    bounds: Vec<Competitor>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one bound
    Bound {
        /// singleton, hamming, plotkin, griesmer, johnson, elias, boundB,
        /// weakBoundB, boundA, litsynLaihonen or aq
        name: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Punctured coordinates (boundA, litsynLaihonen)
        #[arg(short = 't')]
        t: Option<u32>,
        /// Inner radius (boundA, litsynLaihonen)
        #[arg(short = 'r')]
        r: Option<u32>,
    },
    /// Evaluate every comparison bound and report the winners
    Best {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_delimiter = ',', default_values = ["boundB", "johnson", "hamming", "griesmer", "elias", "singleton", "plotkin"])]
        bounds: Vec<Competitor>,
    },
    /// Exact A_q(n,d) by exhaustive search (q^n <= 2^20)
    Exact {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Emit one comparison row per (q, n, d) cell
    Sweep {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Emit win/draw statistics per alphabet
    Stats {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Recompute the reference comparison cells and diff them
    Table3 {
        /// Exit with status 3 if any column is outside its tolerance
        #[arg(long)]
        strict: bool,
    },
}

fn known_source(g: &GlobalOpts) -> KnownValuesSource {
    if g.no_known_values {
        KnownValuesSource::Disabled
    } else if let Some(path) = &g.known_values {
        KnownValuesSource::Path(path.clone())
    } else {
        KnownValuesSource::Builtin
    }
}

fn emit(g: &GlobalOpts, text: &str) -> Result<(), String> {
    match &g.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn params(a: ParamArgs) -> Result<CodeParams, String> {
    CodeParams::new(a.q, a.n, a.d).map_err(|e| e.to_string())
}

fn size_line(label: &str, size: &Nat, q: u32) -> String {
    format!("{label}: A <= {size}, k <= {}\n", k_form(size, q))
}

fn run_bound(
    g: &GlobalOpts,
    name: &str,
    p: CodeParams,
    t: Option<u32>,
    r: Option<u32>,
) -> Result<String, String> {
    let table = known_source(g).load().map_err(|e| e.to_string())?;
    let oracle = BoundOracle::new(&table);
    let q = p.q();
    let puncturing = || -> Result<PuncturingParams, String> {
        let (t, r) = match (t, r) {
            (Some(t), Some(r)) => (t, r),
            _ => return Err(format!("{name} needs -t and -r")),
        };
        PuncturingParams::new(p, t, r).map_err(|e| e.to_string())
    };
    let out = match name.to_ascii_lowercase().as_str() {
        "singleton" => size_line("singleton", &classical::singleton_bound(p), q),
        "hamming" => size_line("hamming", &classical::hamming_bound(p), q),
        "johnson" => size_line("johnson", &classical::johnson_bound(p), q),
        "elias" => size_line("elias", &classical::elias_bassalygo_bound(p), q),
        "griesmer" => {
            let k = classical::griesmer_max_k(p);
            format!("griesmer (linear codes): k <= {k}\n")
        }
        "plotkin" => match classical::plotkin_bound(p) {
            Some(v) => size_line("plotkin", &v, q),
            None => "plotkin: not applicable (need q*d > (q-1)*n)\n".to_string(),
        },
        "aq" => {
            let e = aq_upper(p, &table);
            format!(
                "A_q(n,d) <= {} (source {}), k <= {}\n",
                e.value,
                e.source,
                k_form(&e.value, q)
            )
        }
        "boundb" => {
            let w = bound_b_max_k(p, &oracle, g.delta_mode);
            let mut s = format!("boundB (systematic codes): k <= {}\n", w.k);
            for c in &w.checks {
                s.push_str(&format!(
                    "  r={} |B(r,k)|={} <= {} (delta={}, inner {})\n",
                    c.r, c.lhs, c.rhs, c.delta, c.inner_source
                ));
            }
            if let Some(b) = &w.binding {
                s.push_str(&format!(
                    "  k={} fails at r={}: {} > {} (delta={}, inner {})\n",
                    w.k + 1,
                    b.r,
                    b.lhs,
                    b.rhs,
                    b.delta,
                    b.inner_source
                ));
            }
            s
        }
        "weakboundb" => format!(
            "weak boundB (systematic codes): k <= {}\n",
            weak_bound_b_max_k(p, &oracle)
        ),
        "litsynlaihonen" => {
            let pp = puncturing()?;
            size_line("litsynLaihonen", &litsyn_laihonen(p, pp, &oracle), q)
        }
        "bounda" => {
            let pp = puncturing()?;
            let v = bound_a(p, pp, &oracle, g.delta_mode).map_err(|e| e.to_string())?;
            size_line("boundA (systematic-embedding codes)", &v, q)
        }
        other => return Err(format!("unknown bound '{other}'")),
    };
    Ok(out)
}

fn run_best(g: &GlobalOpts, p: CodeParams, bounds: &[Competitor]) -> Result<String, String> {
    let table = known_source(g).load().map_err(|e| e.to_string())?;
    let grid = codebounds::OracleGrid::build(p.q(), p.n(), &table);
    let row = codebounds::harness::compare_cell(p, bounds, &grid, g.delta_mode);
    Ok(match g.format {
        OutputFormat::Json => serde_json::to_string_pretty(&row).expect("row serialises") + "\n",
        OutputFormat::Csv => {
            let mut s = String::new();
            for (c, k) in &row.k {
                s.push_str(&format!("{:<10} k <= {k}\n", c.name()));
            }
            let winners: Vec<&str> = row.winners.iter().map(|c| c.name()).collect();
            s.push_str(&format!("best k = {}, winners: {}\n", row.best_k, winners.join(", ")));
            s
        }
    })
}

fn sweep_config(g: &GlobalOpts, grid: &GridArgs) -> SweepConfig {
    SweepConfig {
        q_list: grid.q_list.clone(),
        n_min: grid.n_min,
        n_max: grid.n_max,
        enabled: grid.bounds.clone(),
        delta_mode: g.delta_mode,
        known_values: known_source(g),
        format: g.format,
        workers: g.workers,
    }
}

fn run(cli: Cli) -> Result<ExitCode, (u8, String)> {
    let g = &cli.global;
    let invalid = |e: String| (EXIT_INVALID, e);
    let failed = |e: String| (1u8, e);
    match &cli.command {
        Command::Bound { name, params: a, t, r } => {
            let p = params(*a).map_err(invalid)?;
            let text = run_bound(g, name, p, *t, *r).map_err(invalid)?;
            emit(g, &text).map_err(failed)?;
        }
        Command::Best { params: a, bounds } => {
            let p = params(*a).map_err(invalid)?;
            let text = run_best(g, p, bounds).map_err(failed)?;
            emit(g, &text).map_err(failed)?;
        }
        Command::Exact { params: a } => {
            let p = params(*a).map_err(invalid)?;
            let v = aq_exact_bruteforce(p).map_err(|e| invalid(e.to_string()))?;
            emit(g, &format!("A_{}({},{}) = {v}\n", p.q(), p.n(), p.d())).map_err(failed)?;
        }
        Command::Sweep { grid } => {
            let cfg = sweep_config(g, grid);
            cfg.validate().map_err(invalid)?;
            let rows = run_sweep(&cfg).map_err(|e| failed(e.to_string()))?;
            let text = match cfg.format {
                OutputFormat::Csv => rows_to_csv(&rows),
                OutputFormat::Json => rows_to_json(&rows),
            };
            emit(g, &text).map_err(failed)?;
        }
        Command::Stats { grid } => {
            let cfg = sweep_config(g, grid);
            cfg.validate().map_err(invalid)?;
            let rows = run_sweep(&cfg).map_err(|e| failed(e.to_string()))?;
            let stats = compute_stats(&rows);
            eprintln!("note: percentages use the full grid size as denominator; the reference tables also counted the Levenshtein bound");
            let text = match cfg.format {
                OutputFormat::Csv => stats_to_csv(&stats),
                OutputFormat::Json => stats_to_json(&stats),
            };
            emit(g, &text).map_err(failed)?;
        }
        Command::Table3 { strict } => {
            let table = known_source(g).load().map_err(|e| failed(e.to_string()))?;
            let report = table3_report(&table, g.delta_mode);
            let text = match g.format {
                OutputFormat::Json => serde_json::to_string_pretty(&report).expect("report serialises") + "\n",
                OutputFormat::Csv => report.render(),
            };
            emit(g, &text).map_err(failed)?;
            if *strict && !report.passes() {
                return Ok(ExitCode::from(EXIT_MISMATCH));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
