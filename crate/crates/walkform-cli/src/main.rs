//! Command-line front end: construct walk matrices, compute Smith normal
//! forms and ranks, verify the Dynkin-graph identities, and emit
//! machine-readable reports.
//!
//! Exit codes: 0 when everything passed, 1 on check failures or internal
//! cross-check inconsistencies, 2 on bad configuration.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use walkform::graph::{Graph, MAX_VERTICES};
use walkform::graph6::parse_graph6;
use walkform::smith::smith_normal_form;
use walkform::verify::{claim_jobs, negative_controls, run_job, Claim, Job, SweepConfig};
use walkform::walk::walk_matrix;

#[derive(Parser)]
#[command(name = "walkform", version, about = "Walk matrices, Smith normal forms, and Dynkin graph checks")]
struct Cli {
    /// Output format (the table command always emits CSV).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form, determinantal factors, and ranks of a walk matrix.
    Snf(SnfArgs),
    /// Run theorem checks over a range of n and report pass/fail per claim.
    Verify(VerifyArgs),
    /// CSV summary table (n, SNF pattern, ranks, Delta_{n-2}) for Dynkin graphs.
    Table(TableArgs),
}

#[derive(Parser)]
struct SnfArgs {
    /// Graph family to construct.
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Number of vertices for --family.
    #[arg(long)]
    n: Option<usize>,
    /// Inline graph6 string instead of a family.
    #[arg(long)]
    graph6: Option<String>,
    /// File containing a graph6 string.
    #[arg(long)]
    graph6_file: Option<String>,
    /// Edge probability for --family random.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Seed for --family random.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Also report the rank over F_p for this prime modulus.
    #[arg(long)]
    modulus: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    DynkinD,
    Path,
    Random,
}

#[derive(Parser)]
struct VerifyArgs {
    /// Claim to check: all, snf, rank2, disjoint, droot, intertwine,
    /// walk-eq, eigen, prodsin, e-xi, vandermonde, det-wb, lemma-odd0,
    /// lemma-m2e.
    #[arg(long, default_value = "all")]
    claim: String,
    /// Single n (shorthand for --n-min N --n-max N).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 64)]
    n_max: usize,
    /// Seed for the randomized batch claims.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Trial count for the randomized batch claims.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Largest size for the exhaustive symmetric-matrix sweep.
    #[arg(long, default_value_t = 4)]
    exhaustive: usize,
    #[arg(long)]
    eigen_tol: Option<f64>,
    #[arg(long)]
    exi_tol: Option<f64>,
    #[arg(long)]
    exi_factor_tol: Option<f64>,
    #[arg(long)]
    prodsin_tol: Option<f64>,
    #[arg(long)]
    vandermonde_tol: Option<f64>,
    #[arg(long)]
    lemma33_tol: Option<f64>,
    /// Include elapsed milliseconds in the output (off by default so that
    /// identical configurations produce byte-identical output).
    #[arg(long)]
    timings: bool,
}

#[derive(Parser)]
struct TableArgs {
    #[arg(long, default_value_t = 4)]
    n_min: usize,
    #[arg(long, default_value_t = 16)]
    n_max: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct ReportRow {
    claim: String,
    params: String,
    status: String,
    witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct VerifyDocument {
    reports: Vec<ReportRow>,
    pass: usize,
    fail: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct SnfDocument {
    source: String,
    n: usize,
    edges: usize,
    d: Vec<String>,
    delta: Vec<String>,
    rank: usize,
    rank2: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank_p: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(message) = install_thread_pool() {
        eprintln!("error: {message}");
        return ExitCode::from(2);
    }
    let outcome = match cli.command {
        Command::Snf(args) => cmd_snf(&args, cli.format),
        Command::Verify(args) => cmd_verify(&args, cli.format),
        Command::Table(args) => cmd_table(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// WALKFORM_THREADS caps the sweep parallelism.
fn install_thread_pool() -> Result<(), String> {
    if let Ok(raw) = std::env::var("WALKFORM_THREADS") {
        let threads: usize = raw
            .parse()
            .map_err(|_| format!("WALKFORM_THREADS must be a positive integer, got {raw:?}"))?;
        if threads == 0 {
            return Err("WALKFORM_THREADS must be positive".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_snf(args: &SnfArgs, format: Format) -> Result<ExitCode, String> {
    let sources =
        usize::from(args.family.is_some()) + usize::from(args.graph6.is_some()) + usize::from(args.graph6_file.is_some());
    if sources != 1 {
        return Err("exactly one of --family, --graph6, --graph6-file is required".into());
    }
    let (graph, source) = if let Some(family) = args.family {
        let n = args.n.ok_or("--family requires --n")?;
        if n > MAX_VERTICES {
            return Err(format!("n must be at most {MAX_VERTICES}"));
        }
        match family {
            Family::DynkinD => (
                Graph::dynkin_d(n).map_err(|e| e.to_string())?,
                format!("dynkin-d n={n}"),
            ),
            Family::Path => (
                Graph::path(n).map_err(|e| e.to_string())?,
                format!("path n={n}"),
            ),
            Family::Random => {
                let g = Graph::random(n, args.p, args.seed).map_err(|e| e.to_string())?;
                (g, format!("random n={n} p={} seed={}", args.p, args.seed))
            }
        }
    } else if let Some(text) = &args.graph6 {
        (
            parse_graph6(text).map_err(|e| e.to_string())?,
            format!("graph6 {text:?}"),
        )
    } else {
        let path = args.graph6_file.as_ref().unwrap();
        let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        (
            parse_graph6(&text).map_err(|e| e.to_string())?,
            format!("graph6-file {path}"),
        )
    };

    let n = graph.vertex_count();
    let w = walk_matrix(&graph);
    let snf = smith_normal_form(w.matrix(), false);
    let d = snf.invariant_factors();
    let rank = snf.rank();
    let rank2 = snf.rank_mod(&BigInt::from(2));
    // Cross-check the SNF-derived GF(2) rank against packed elimination.
    let rank2_direct = w.matrix().to_bit_matrix().rank();
    if rank2 != rank2_direct {
        eprintln!(
            "internal inconsistency: rank2 from SNF is {rank2}, from elimination {rank2_direct}"
        );
        return Ok(ExitCode::from(1));
    }
    let rank_p = args.modulus.map(|p| snf.rank_mod(&BigInt::from(p)));

    let doc = SnfDocument {
        source,
        n,
        edges: graph.edge_count(),
        d: d.iter().map(BigInt::to_string).collect(),
        delta: snf
            .determinantal_factors()
            .iter()
            .map(BigInt::to_string)
            .collect(),
        rank,
        rank2,
        modulus: args.modulus,
        rank_p,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc).unwrap()),
        Format::Csv => {
            println!("source,n,edges,rank,rank2,rank_p,d,delta");
            println!(
                "{},{},{},{},{},{},{},{}",
                csv_field(&doc.source),
                doc.n,
                doc.edges,
                doc.rank,
                doc.rank2,
                doc.rank_p.map_or(String::new(), |r| r.to_string()),
                doc.d.join(" "),
                doc.delta.join(" ")
            );
        }
        Format::Text => {
            println!("graph: {} ({} vertices, {} edges)", doc.source, doc.n, doc.edges);
            println!("d     = {}", doc.d.join(" "));
            println!("delta = {}", doc.delta.join(" "));
            println!("rank  = {}", doc.rank);
            println!("rank2 = {}", doc.rank2);
            if let (Some(p), Some(rp)) = (doc.modulus, doc.rank_p) {
                println!("rank_{p} = {rp}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<ExitCode, String> {
    let (n_min, n_max) = match args.n {
        Some(n) => (n, n),
        None => (args.n_min, args.n_max),
    };
    if n_min < 4 {
        return Err(format!("n-min must be at least 4, got {n_min}"));
    }
    if n_max > MAX_VERTICES {
        return Err(format!("n-max must be at most {MAX_VERTICES}, got {n_max}"));
    }
    let defaults = SweepConfig::default();
    let cfg = SweepConfig {
        n_min,
        n_max,
        eigen_tol: args.eigen_tol.unwrap_or(defaults.eigen_tol),
        exi_rel_tol: args.exi_tol.unwrap_or(defaults.exi_rel_tol),
        exi_factor_tol: args.exi_factor_tol.unwrap_or(defaults.exi_factor_tol),
        prodsin_rel_tol: args.prodsin_tol.unwrap_or(defaults.prodsin_rel_tol),
        vandermonde_rel_tol: args.vandermonde_tol.unwrap_or(defaults.vandermonde_rel_tol),
        lemma33_rel_tol: args.lemma33_tol.unwrap_or(defaults.lemma33_rel_tol),
        seed: args.seed,
        trials: args.trials,
        exhaustive_max: args.exhaustive,
    };

    let claims: Vec<Claim> = if args.claim == "all" {
        Claim::ALL.to_vec()
    } else {
        vec![Claim::from_id(&args.claim)
            .ok_or_else(|| format!("unknown claim {:?}", args.claim))?]
    };
    let jobs: Vec<Job> = if n_min > n_max {
        Vec::new() // empty range: nothing to run
    } else {
        claims.iter().flat_map(|&c| claim_jobs(c, &cfg)).collect()
    };

    // Jobs are pure and independent; run them in parallel and report in the
    // prearranged (claim, parameter) order. Progress goes to stderr.
    let mut reports: Vec<_> = jobs
        .par_iter()
        .map(|&job| {
            let report = run_job(job, &cfg);
            eprintln!("done claim={} {}", report.claim, report.params);
            report
        })
        .collect();
    if args.claim == "all" {
        if let Some(n) = (n_min.max(8)..=n_max).find(|&n| n % 4 == 0) {
            reports.extend(negative_controls(n).expect("preconditions hold"));
        }
    }

    let rows: Vec<ReportRow> = reports
        .iter()
        .map(|r| ReportRow {
            claim: r.claim.to_string(),
            params: r.params.clone(),
            status: r.status().to_string(),
            witness: r.witness.clone(),
            elapsed_ms: args.timings.then_some(r.elapsed.as_millis() as u64),
        })
        .collect();
    let pass = reports.iter().filter(|r| r.pass).count();
    let fail = reports.len() - pass;

    match format {
        Format::Json => {
            let doc = VerifyDocument { reports: rows, pass, fail };
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            eprintln!("RESULT pass={pass} fail={fail}");
        }
        Format::Csv => {
            if args.timings {
                println!("claim,params,status,witness,elapsed_ms");
            } else {
                println!("claim,params,status,witness");
            }
            for row in &rows {
                let mut line = format!(
                    "{},{},{},{}",
                    csv_field(&row.claim),
                    csv_field(&row.params),
                    row.status,
                    csv_field(&row.witness)
                );
                if let Some(ms) = row.elapsed_ms {
                    line.push_str(&format!(",{ms}"));
                }
                println!("{line}");
            }
            eprintln!("RESULT pass={pass} fail={fail}");
        }
        Format::Text => {
            for (row, report) in rows.iter().zip(&reports) {
                let mut line = report.to_string();
                if let Some(ms) = row.elapsed_ms {
                    line.push_str(&format!(" elapsed_ms={ms}"));
                }
                println!("{line}");
            }
            println!("RESULT pass={pass} fail={fail}");
        }
    }
    Ok(if fail == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_table(args: &TableArgs) -> Result<ExitCode, String> {
    if args.n_min < 4 {
        return Err(format!("n-min must be at least 4, got {}", args.n_min));
    }
    if args.n_max > MAX_VERTICES {
        return Err(format!("n-max must be at most {MAX_VERTICES}, got {}", args.n_max));
    }
    println!("n,ones,twos,zeros,rank,rank2,delta_{{n-2}}");
    if args.n_min > args.n_max {
        return Ok(ExitCode::SUCCESS); // empty range: header only
    }
    let rows: Vec<String> = (args.n_min..=args.n_max)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            let g = Graph::dynkin_d(n).expect("n >= 4");
            let w = walk_matrix(&g);
            let snf = smith_normal_form(w.matrix(), false);
            let d = snf.invariant_factors();
            let two = BigInt::from(2);
            let ones = d.iter().filter(|x| **x == BigInt::from(1)).count();
            let twos = d.iter().filter(|x| **x == two).count();
            let zeros = d.iter().filter(|x| x.is_zero()).count();
            let rank2 = w.matrix().to_bit_matrix().rank();
            let delta: BigInt = d.iter().take(n - 2).product();
            format!("{n},{ones},{twos},{zeros},{},{rank2},{delta}", snf.rank())
        })
        .collect();
    for row in rows {
        println!("{row}");
    }
    Ok(ExitCode::SUCCESS)
}
