//! Command-line front end: enumeration of path families, Hasse diagram
//! export, exhaustive verification suites, the no-bijection table and the
//! in/out cardinality sweep.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nutamari_core::degrees::{
    area_algorithm, in_degree, max_in_set, max_out_set, out_degree, staircase_algorithm,
};
use nutamari_core::paths::{count_nu_dyck, enumerate_nu_dyck, parse_path, Nu, NuDyckPath};
use nutamari_core::verify::{self, CheckOutcome};
use num_bigint::BigUint;

#[derive(Parser)]
#[command(name = "nutamari", version, about = "Lattice-path Tamari orders toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for commands that support it.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for sweeps (0 = automatic). Defaults to the
    /// NUTAMARI_JOBS environment variable when set.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Raise the resource caps for expensive cells and sweeps.
    #[arg(long, global = true)]
    deep: bool,

    /// Also print the descent trace where applicable.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List every path weakly above the boundary with its area vector,
    /// degree statistics and counts.
    Enumerate {
        /// Boundary word over {N, E}; whitespace is ignored.
        nu_word: String,
    },
    /// Count, per endpoint shape, the boundaries whose maximal in-degree
    /// set is not in bijection with any weakly-above path family.
    Table {
        /// Largest east-step count.
        #[arg(long, default_value_t = 6)]
        a_max: usize,
        /// Largest north-step count.
        #[arg(long, default_value_t = 6)]
        b_max: usize,
    },
    /// Sweep all boundaries up to a step bound and compare the sizes of
    /// the maximal in-degree and maximal out-degree sets.
    Conjecture {
        #[arg(long, default_value_t = 10)]
        max_steps: usize,
    },
    /// Run one of the exhaustive verification suites.
    Verify {
        /// One of: same-algo, maxdeg, out-iso, in-iso, distance-tamari,
        /// distance-greedy, cover-update, phibar-update, reversal-iso.
        theorem: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
        #[arg(long)]
        max_steps: Option<usize>,
    },
    /// Emit a Hasse diagram in DOT syntax.
    Hasse {
        nu_word: String,
        #[arg(long, value_enum, default_value_t = Which::Tamari)]
        which: Which,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Which {
    Tamari,
    Greedy,
    InSub,
    OutSub,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.or_else(|| {
        std::env::var("NUTAMARI_JOBS").ok().and_then(|v| v.parse().ok())
    });
    if let Some(jobs) = jobs.filter(|&j| j > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: could not configure {jobs} workers: {e}");
            return ExitCode::from(2);
        }
    }

    let outcome = match &cli.command {
        Command::Enumerate { nu_word } => cmd_enumerate(&cli, nu_word),
        Command::Table { a_max, b_max } => cmd_table(&cli, *a_max, *b_max),
        Command::Conjecture { max_steps } => cmd_conjecture(&cli, *max_steps),
        Command::Verify { theorem, n, m, height, max_steps } => {
            cmd_verify(&cli, theorem, *n, *m, *height, *max_steps)
        }
        Command::Hasse { nu_word, which } => cmd_hasse(nu_word, *which),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn path_json(d: &NuDyckPath) -> serde_json::Value {
    let mut v = serde_json::json!({
        "nu": d.nu().path().to_string(),
        "word": d.word().to_string(),
        "la": d.left_area().entries(),
    });
    // Distance vectors exist only over the staircase boundary.
    if d.nu().is_staircase() {
        v["dt"] = nutamari_core::distance::touch_distance_vector(d)
            .map(|t| serde_json::json!(t.entries))
            .unwrap_or(serde_json::Value::Null);
        v["dh"] = nutamari_core::distance::hit_distance_vector(d)
            .map(|h| serde_json::json!(h.entries))
            .unwrap_or(serde_json::Value::Null);
    }
    v
}

fn cmd_enumerate(cli: &Cli, nu_word: &str) -> Result<ExitCode, nutamari_core::Error> {
    let nu = Nu::shared(parse_path(nu_word)?);
    let count = count_nu_dyck(&nu);
    let cap = nutamari_core::verify::DESK_SIZE_CAP;
    if count > BigUint::from(cap) && !cli.deep {
        return Err(nutamari_core::Error::SizeCapExceeded { size: usize::MAX, cap });
    }
    let paths: Vec<NuDyckPath> = enumerate_nu_dyck(&nu).collect();
    let sigma = staircase_algorithm(&nu).size;
    let mut in_hist = vec![0usize; sigma + 1];
    let mut out_hist = vec![0usize; sigma + 1];
    let rows: Vec<(String, Vec<usize>, usize, usize)> = paths
        .iter()
        .map(|d| {
            let (i, o) = (in_degree(d), out_degree(d));
            in_hist[i] += 1;
            out_hist[o] += 1;
            (d.word().to_string(), d.left_area().entries().to_vec(), i, o)
        })
        .collect();

    match cli.format {
        Format::Json => {
            let out = serde_json::json!({
                "nu": nu.path().to_string(),
                "count": count.to_string(),
                "sigma": sigma,
                "in_degree_histogram": in_hist,
                "out_degree_histogram": out_hist,
                "paths": paths.iter().map(path_json).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("word,la,in_degree,out_degree");
            for (w, la, i, o) in &rows {
                let la: Vec<String> = la.iter().map(|v| v.to_string()).collect();
                println!("{w},{},{i},{o}", la.join(" "));
            }
        }
        _ => {
            println!("boundary {} with {} paths, sigma = {sigma}", nu.path(), count);
            for (w, la, i, o) in &rows {
                let la: Vec<String> = la.iter().map(|v| v.to_string()).collect();
                println!("  {w}  la=({})  in={i} out={o}", la.join(","));
            }
            println!("in-degree histogram:  {in_hist:?}");
            println!("out-degree histogram: {out_hist:?}");
            if cli.trace {
                let (_, trace) = area_algorithm(&nu);
                println!("descent trace ({} steps):", trace.len());
                for s in &trace.steps {
                    println!("  i={} j={} h={} ra={}", s.i, s.j, s.h, s.ra);
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(cli: &Cli, a_max: usize, b_max: usize) -> Result<ExitCode, nutamari_core::Error> {
    const SHALLOW_LIMIT: usize = 6;
    if (a_max > SHALLOW_LIMIT || b_max > SHALLOW_LIMIT) && !cli.deep {
        return Err(nutamari_core::Error::SizeCapExceeded {
            size: a_max.max(b_max),
            cap: SHALLOW_LIMIT,
        });
    }
    let mut cells = Vec::new();
    for a in 1..=a_max {
        for b in 1..=b_max {
            cells.push(verify::table_cell(a, b));
        }
    }
    match cli.format {
        Format::Json => {
            let out: Vec<serde_json::Value> = cells
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "a": c.easts,
                        "b": c.norths,
                        "count": c.count,
                        "witnesses": c.witnesses,
                    })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            println!("a,b,count");
            for c in &cells {
                println!("{},{},{}", c.easts, c.norths, c.count);
            }
        }
        _ => {
            print!("a\\b");
            for b in 1..=b_max {
                print!("{b:>6}");
            }
            println!();
            for a in 1..=a_max {
                print!("{a:>3}");
                for b in 1..=b_max {
                    let c = &cells[(a - 1) * b_max + (b - 1)];
                    print!("{:>6}", c.count);
                }
                println!();
            }
            for c in &cells {
                if !c.witnesses.is_empty() {
                    println!(
                        "({},{}): {}",
                        c.easts,
                        c.norths,
                        c.witnesses.join(" ")
                    );
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Sweeps double per step; cap them unless the caller insists.
fn check_sweep_bound(max_steps: usize, deep: bool) -> Result<(), nutamari_core::Error> {
    let cap = if deep { 20 } else { 14 };
    if max_steps > cap {
        return Err(nutamari_core::Error::SizeCapExceeded { size: max_steps, cap });
    }
    Ok(())
}

fn cmd_conjecture(cli: &Cli, max_steps: usize) -> Result<ExitCode, nutamari_core::Error> {
    check_sweep_bound(max_steps, cli.deep)?;
    let report = verify::conjecture_sweep(max_steps);
    match cli.format {
        Format::Json => {
            let out = serde_json::json!({
                "max_steps": report.max_steps,
                "boundaries_checked": report.boundaries_checked,
                "tallies": report.shape_tallies,
                "counterexamples": report.counterexamples,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Csv => {
            // One census row per boundary.
            println!("nu,sigma,max_in,max_out,total");
            let mut rows = Vec::new();
            for p in verify::all_boundary_paths(max_steps) {
                let nu = Nu::shared(p);
                let row = verify::census(&nu)?;
                rows.push(format!(
                    "{},{},{},{},{}",
                    row.nu_word, row.sigma, row.max_in, row.max_out, row.total
                ));
            }
            rows.sort();
            for r in rows {
                println!("{r}");
            }
        }
        _ => {
            println!(
                "checked {} boundaries with at most {} steps",
                report.boundaries_checked, report.max_steps
            );
            for (a, b, c) in &report.shape_tallies {
                println!("  shape ({a},{b}): {c} boundaries");
            }
            if report.counterexamples.is_empty() {
                println!("no counterexamples: |max in set| = |max out set| everywhere");
            } else {
                println!("counterexamples:");
                for w in &report.counterexamples {
                    println!("  {w}");
                }
            }
        }
    }
    Ok(if report.counterexamples.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn default_pairs() -> Vec<(usize, usize)> {
    vec![(3, 2), (3, 3), (4, 2), (4, 3), (5, 2)]
}

fn report(cli: &Cli, outcomes: &[CheckOutcome]) -> ExitCode {
    if cli.format == Format::Json {
        let out: Vec<serde_json::Value> = outcomes
            .iter()
            .map(|o| {
                serde_json::json!({
                    "name": o.name,
                    "ok": o.pass,
                    "detail": o.detail,
                    "witness": o.witness,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        for o in outcomes {
            let tag = if o.pass { "pass" } else { "FAIL" };
            match &o.witness {
                Some(w) => println!("[{tag}] {}: {} (witness: {w})", o.name, o.detail),
                None => println!("[{tag}] {}: {}", o.name, o.detail),
            }
        }
    }
    if outcomes.iter().all(|o| o.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cmd_verify(
    cli: &Cli,
    theorem: &str,
    n: Option<usize>,
    m: Option<usize>,
    height: Option<usize>,
    max_steps: Option<usize>,
) -> Result<ExitCode, nutamari_core::Error> {
    let pairs = match (n, m) {
        (Some(n), Some(m)) => vec![(n, m)],
        (None, None) => default_pairs(),
        _ => return Err(nutamari_core::Error::UnknownTheorem("--n and --m go together".into())),
    };
    let heights: Vec<usize> = match height {
        Some(h) => vec![h],
        None => vec![3, 4, 5],
    };
    if matches!(theorem, "out-iso" | "in-iso") && cli.format == Format::Json {
        // One record per bijection check.
        let mut records = Vec::new();
        let mut all_ok = true;
        for &(n, m) in &pairs {
            let outcome = if theorem == "out-iso" {
                verify::verify_out_iso(n, m)?
            } else {
                verify::verify_in_iso(n, m)?
            };
            all_ok &= outcome.pass;
            records.push(serde_json::json!({
                "nm": [n, m],
                "direction": if theorem == "out-iso" { "out" } else { "in" },
                "ok": outcome.pass,
                "witness": outcome.witness,
            }));
        }
        println!("{}", serde_json::to_string_pretty(&records).unwrap());
        return Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
    }

    if let Some(steps) = max_steps {
        check_sweep_bound(steps, cli.deep)?;
    }
    let outcomes: Vec<CheckOutcome> = match theorem {
        "same-algo" => vec![verify::verify_same_algo(max_steps.unwrap_or(12))],
        "maxdeg" => vec![verify::verify_max_degrees(max_steps.unwrap_or(12))],
        "out-iso" => pairs
            .iter()
            .map(|&(n, m)| verify::verify_out_iso(n, m))
            .collect::<Result<_, _>>()?,
        "in-iso" => pairs
            .iter()
            .map(|&(n, m)| verify::verify_in_iso(n, m))
            .collect::<Result<_, _>>()?,
        "distance-tamari" => vec![verify::verify_distance_tamari(&heights)],
        "distance-greedy" => vec![verify::verify_distance_greedy(&heights)],
        "cover-update" => vec![verify::verify_cover_update(height.unwrap_or(5))],
        "phibar-update" => {
            let pairs = if n.is_some() { pairs } else { vec![(3, 2)] };
            pairs
                .into_iter()
                .map(|(n, m)| verify::verify_phibar_update(n, m))
                .collect::<Result<_, _>>()?
        }
        "reversal-iso" => {
            let steps = max_steps.unwrap_or(8);
            vec![verify::verify_reversal_iso(steps), verify::verify_reversal_dual_iso(steps)]
        }
        other => return Err(nutamari_core::Error::UnknownTheorem(other.to_string())),
    };
    Ok(report(cli, &outcomes))
}

fn cmd_hasse(nu_word: &str, which: Which) -> Result<ExitCode, nutamari_core::Error> {
    let nu = Nu::shared(parse_path(nu_word)?);
    let dot = match which {
        Which::Tamari => labeled_dot("tamari", &nu, nutamari_core::tamari::up_covers)?,
        Which::Greedy => labeled_dot("greedy", &nu, nutamari_core::greedy::greedy_up_covers)?,
        Which::InSub => {
            let poset = nutamari_core::tamari::tamari_poset(&nu)?;
            let keep: Vec<_> =
                max_in_set(&nu)?.iter().map(|d| d.left_area().clone()).collect();
            poset.restrict(&keep)?.to_dot("in_sub", |la| la.to_string())
        }
        Which::OutSub => {
            let poset = nutamari_core::tamari::tamari_poset(&nu)?;
            let keep: Vec<_> =
                max_out_set(&nu)?.iter().map(|d| d.left_area().clone()).collect();
            poset.restrict(&keep)?.to_dot("out_sub", |la| la.to_string())
        }
    };
    print!("{dot}");
    Ok(ExitCode::SUCCESS)
}

/// DOT export of a cover graph with row-index edge labels; one node per
/// area vector, nodes in lexicographic order.
fn labeled_dot<F>(name: &str, nu: &std::sync::Arc<Nu>, moves: F) -> Result<String, nutamari_core::Error>
where
    F: Fn(&NuDyckPath) -> Vec<(usize, NuDyckPath)>,
{
    use std::fmt::Write;
    let count = count_nu_dyck(nu);
    let cap = nutamari_core::verify::DESK_SIZE_CAP;
    if count > BigUint::from(cap) {
        return Err(nutamari_core::Error::SizeCapExceeded { size: usize::MAX, cap });
    }
    let paths: Vec<NuDyckPath> = enumerate_nu_dyck(nu).collect();
    let index: std::collections::HashMap<_, _> =
        paths.iter().enumerate().map(|(k, d)| (d.left_area().clone(), k)).collect();
    let mut s = String::new();
    writeln!(s, "digraph {name} {{").unwrap();
    writeln!(s, "  rankdir=BT;").unwrap();
    for (k, d) in paths.iter().enumerate() {
        writeln!(s, "  v{k} [label=\"{}\"];", d.left_area()).unwrap();
    }
    let mut edges = Vec::new();
    for (k, d) in paths.iter().enumerate() {
        for (row, up) in moves(d) {
            edges.push((k, index[up.left_area()], row));
        }
    }
    edges.sort_unstable();
    for (lo, hi, row) in edges {
        writeln!(s, "  v{lo} -> v{hi} [label=\"{row}\"];").unwrap();
    }
    writeln!(s, "}}").unwrap();
    Ok(s)
}
