use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use propb_core::classic::{goldberg_russell_at, random_coloring_ceil};
use propb_core::discrete::discrete_lower_bound;
use propb_core::locked::{locked_scan, theorem1, CascadeOptions, SelectionStrategy, DEFAULT_V_MAX};
use propb_core::oracle::{
    enumerate_orderings, gamma_exact, is_two_colorable, monte_carlo_failure, Hypergraph, ENUMERATION_LIMIT,
};
use propb_core::query::{evaluate, replay, table1, BoundRequest, Method, TABLE1_UPPER};
use propb_core::{
    perm_bound, schoenheim, theorem2_certify, CertVerdict, Certificate, DiscreteBoundQuery,
    Error, Rational,
};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SOUNDNESS: u8 = 3;

#[derive(Parser)]
#[command(name = "propb", version, about = "Exact lower bounds for hypergraphs without property B")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the table of first lower bounds for n = 5..9.
    Table1 {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate one bound and print its certificate.
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        v: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        method: Method,
        #[arg(long)]
        gamma: Option<u64>,
        #[arg(long)]
        strategy: Option<SelectionStrategy>,
    },
    /// Per-v lower bounds on m(n, v) and their minimum.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        v_min: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_V_MAX)]
        v_max: u64,
        #[arg(long, default_value = "discrete")]
        method: Method,
        #[arg(long)]
        strategy: Option<SelectionStrategy>,
        /// Worker threads; the output does not depend on it.
        #[arg(long, env = "PROPB_JOBS")]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Certify the lock-cascade bounds for n = 5..9 and the 2n+1 vertex
    /// bounds for n in {6, 8, 14, 30, 32}.
    Theorems {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Greedy-coloring statistics for a small hypergraph file.
    Oracle {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, conflicts_with = "mc")]
        exact: bool,
        #[arg(long, requires = "trials")]
        mc: bool,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recompute certificates and compare them byte for byte.
    Replay {
        /// Files holding a certificate, a list of them, or a bundle with a
        /// "certificates" field.
        files: Vec<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Mismatch(String),
    Soundness(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Certification { .. } => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Table1 { format } => cmd_table1(format),
        Command::Bound { n, v, m, method, gamma, strategy } => {
            cmd_bound(&BoundRequest { method, n, v, m, gamma, strategy })
        }
        Command::Scan { n, v_min, v_max, method, strategy, jobs, format } => {
            cmd_scan(n, v_min, v_max, method, strategy, jobs, format)
        }
        Command::Theorems { format } => cmd_theorems(format),
        Command::Oracle { file, exact, mc, trials, seed } => cmd_oracle(&file, exact, mc, trials, seed),
        Command::Replay { files } => cmd_replay(&files),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(Failure::Soundness(msg)) => {
            eprintln!("soundness violation: {msg}");
            ExitCode::from(EXIT_SOUNDNESS)
        }
    }
}

fn json_text(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn cmd_table1(format: Format) -> Outcome {
    let t = table1()?;
    let rows: [(&str, &[u64]); 4] = [
        ("Goldberg and Russell", &t.goldberg_russell),
        ("Cherkashin and Kozik", &t.cherkashin_kozik),
        ("Discrete greedy", &t.discrete),
        ("Current upper bound [cited]", &TABLE1_UPPER),
    ];
    match format {
        Format::Text => {
            let mut out = format!("{:<28}", "n");
            for n in &t.n {
                write!(out, "{n:>6}").unwrap();
            }
            println!("{out}");
            for (name, vals) in rows {
                let mut line = format!("{name:<28}");
                for x in vals {
                    write!(line, "{x:>6}").unwrap();
                }
                println!("{line}");
            }
            println!("[cited] reference values, not computed here");
        }
        Format::Csv => {
            let header: Vec<String> = t.n.iter().map(|n| format!("n={n}")).collect();
            println!("row,{}", header.join(","));
            for (name, vals) in rows {
                let cells: Vec<String> = vals.iter().map(u64::to_string).collect();
                println!("\"{name}\",{}", cells.join(","));
            }
        }
        Format::Json => println!("{}", json_text(&t)),
    }
    let bad = t.mismatches();
    if bad.is_empty() {
        Ok(())
    } else {
        let detail: Vec<String> =
            bad.iter().map(|(row, n, got, want)| format!("{row} n={n}: got {got}, expected {want}")).collect();
        Err(Failure::Mismatch(detail.join("; ")))
    }
}

fn cmd_bound(req: &BoundRequest) -> Outcome {
    let cert = evaluate(req)?;
    println!("{}", cert.to_json());
    Ok(())
}

#[derive(serde::Serialize)]
struct ScanRow {
    v: u64,
    bound: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<Value>,
}

fn scan_min_v(n: u32, method: Method) -> Result<u64, Failure> {
    let nn = n as u64;
    match method {
        Method::Schoenheim | Method::Gr | Method::Random => Ok(2 * nn - 1),
        Method::Discrete | Method::Locked1 | Method::Locked2 | Method::Locked3 => Ok(2 * nn + 1),
        other => Err(Failure::Usage(format!("method {other} has no per-v scan"))),
    }
}

fn scan_rows(
    n: u32,
    v_min: u64,
    v_max: u64,
    method: Method,
    strategy: Option<SelectionStrategy>,
) -> Result<(Vec<ScanRow>, Value), Failure> {
    use rayon::prelude::*;
    let per_v = |f: &(dyn Fn(u64) -> Rational + Sync)| -> Vec<ScanRow> {
        (v_min..=v_max).into_par_iter().map(|v| ScanRow { v, bound: f(v), detail: None }).collect()
    };
    let rows = match method {
        Method::Schoenheim => per_v(&|v| Rational::from(schoenheim(n, v))),
        Method::Random => per_v(&|v| Rational::from_natural(random_coloring_ceil(n, v).expect("v >= 2n - 1"))),
        Method::Gr => per_v(&|v| Rational::from_natural(goldberg_russell_at(n, v).expect("v >= 2n - 1"))),
        Method::Discrete => discrete_lower_bound(n, v_min, v_max)?
            .rows
            .into_iter()
            .map(|r| ScanRow {
                v: r.v,
                bound: Rational::from(r.bound),
                detail: Some(json!({
                    "schoenheim": r.schoenheim,
                    "random_coloring": r.random_coloring,
                    "permutation": r.permutation,
                })),
            })
            .collect(),
        Method::Locked1 | Method::Locked2 | Method::Locked3 => {
            let locks = match method {
                Method::Locked1 => 1,
                Method::Locked2 => 2,
                _ => 3,
            };
            if locks == 1 && strategy.is_some() {
                return Err(Failure::Usage("method locked1 does not take --strategy".into()));
            }
            let strat = strategy.unwrap_or(SelectionStrategy::A);
            let s = locked_scan(n, CascadeOptions::locks(locks, strat), v_min, v_max)?;
            let rows = s
                .rows
                .iter()
                .map(|r| ScanRow {
                    v: r.v,
                    // rows not open at the overall bound are refuted through it
                    bound: Rational::from(r.open_at.unwrap_or(s.bound + 1).max(r.start)),
                    detail: Some(json!({ "discrete": r.start })),
                })
                .collect();
            return Ok((rows, json!({ "strategy": strat })));
        }
        _ => unreachable!("checked by scan_min_v"),
    };
    Ok((rows, Value::Null))
}

fn cmd_scan(
    n: u32,
    v_min: Option<u64>,
    v_max: u64,
    method: Method,
    strategy: Option<SelectionStrategy>,
    jobs: Option<usize>,
    format: Format,
) -> Outcome {
    if n < 2 {
        return Err(Failure::Usage("need n >= 2".into()));
    }
    let least = scan_min_v(n, method)?;
    let v_min = v_min.unwrap_or(least);
    if v_min < least {
        return Err(Failure::Usage(format!("method {method} needs --v-min >= {least}")));
    }
    if v_max < v_min {
        return Err(Failure::Usage(format!("need --v-max >= --v-min, got {v_min}..{v_max}")));
    }
    if strategy.is_some() && !matches!(method, Method::Locked2 | Method::Locked3) {
        return Err(Failure::Usage(format!("method {method} does not take --strategy")));
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(Failure::Usage("--jobs must be positive".into()));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
    let (rows, extra) = pool.install(|| scan_rows(n, v_min, v_max, method, strategy))?;
    let best = rows.iter().min_by(|a, b| a.bound.cmp(&b.bound).then(a.v.cmp(&b.v))).expect("nonempty range");
    match format {
        Format::Text => {
            println!("{:>6} {:>24}", "v", method.name());
            for r in &rows {
                println!("{:>6} {:>24}", r.v, r.bound.to_string());
            }
            println!("min over v in {v_min}..={v_max}: {} at v = {}", best.bound, best.v);
        }
        Format::Csv => {
            println!("v,{}", method.name());
            for r in &rows {
                println!("{},{}", r.v, r.bound);
            }
        }
        Format::Json => println!(
            "{}",
            json_text(&json!({
                "n": n,
                "method": method,
                "v_min": v_min,
                "v_max": v_max,
                "rows": rows,
                "bound": best.bound,
                "v_star": best.v,
                "options": extra,
            }))
        ),
    }
    Ok(())
}

fn cmd_theorems(format: Format) -> Outcome {
    let mut certs: Vec<Certificate> = Vec::new();
    let mut lines = Vec::new();
    let mut failed = Vec::new();
    for n in 5..=9u32 {
        let target = propb_core::locked::theorem1_target(n).expect("n in range");
        match theorem1(n) {
            Ok((value, cert)) => {
                let status = match cert.verdict {
                    CertVerdict::Certified if value >= target => "certified",
                    _ => "PARTIAL",
                };
                lines.push(format!("m({n}) >= {value:<5} target {target:<5} {status}"));
                if status != "certified" && n <= 7 {
                    failed.push(format!("n = {n}: {value} < {target}"));
                }
                if status != "certified" {
                    let open = cert.witnesses.iter().find_map(|w| w.get("open")).cloned().unwrap_or(Value::Null);
                    for case in open.as_array().into_iter().flatten() {
                        let open = &case["open"];
                        lines.push(format!(
                            "    open: v = {}, m = {}, {} surviving {} profile(s)",
                            case["v"],
                            case["m"],
                            open["survivors"].as_array().map_or(0, Vec::len),
                            open["locks"].as_str().unwrap_or("?"),
                        ));
                    }
                }
                certs.push(cert);
            }
            Err(e) => {
                lines.push(format!("m({n}): error: {e}"));
                if n <= 7 {
                    failed.push(format!("n = {n}: {e}"));
                }
            }
        }
    }
    for n in [6u32, 8, 14, 30, 32] {
        match theorem2_certify(n) {
            Ok((b, cert)) => {
                lines.push(format!("m({n}, {}) >= {b}  certified", 2 * n + 1));
                certs.push(cert);
            }
            Err(e) => {
                lines.push(format!("m({n}, {}): error: {e}", 2 * n + 1));
                failed.push(format!("steiner n = {n}: {e}"));
            }
        }
    }
    match format {
        Format::Json => println!("{}", json_text(&json!({ "certificates": certs }))),
        Format::Csv => {
            println!("method,n,value,verdict");
            for c in &certs {
                let verdict = serde_json::to_value(c.verdict).expect("json");
                println!("{},{},{},{}", c.method, c.inputs["n"], c.value, verdict.as_str().unwrap_or(""));
            }
        }
        Format::Text => {
            for l in lines {
                println!("{l}");
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(failed.join("; ")))
    }
}

fn cmd_oracle(file: &PathBuf, exact: bool, mc: bool, trials: Option<u64>, seed: u64) -> Outcome {
    if exact == mc {
        return Err(Failure::Usage("choose one of --exact or --mc".into()));
    }
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    let h = Hypergraph::parse(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    println!("v = {}, n = {}, m = {}", h.v(), h.n(), h.m());
    match is_two_colorable(&h) {
        Ok(Some(_)) => println!("2-colorable: yes"),
        Ok(None) => println!("2-colorable: no"),
        Err(e) => println!("2-colorable: not checked ({e})"),
    }
    let gamma = gamma_exact(&h);
    println!("gamma = {gamma}");
    let q = DiscreteBoundQuery { n: h.n() as u32, v: h.v() as u64, m: h.m() as u64, gamma };
    let perm = perm_bound(&q)?;
    println!("permutation bound = {perm} ~ {:.6}", perm.to_f64_approx());
    if exact {
        if h.v() > ENUMERATION_LIMIT {
            return Err(Failure::Usage(format!(
                "exact enumeration supports at most {ENUMERATION_LIMIT} vertices, got {}",
                h.v()
            )));
        }
        let c = enumerate_orderings(&h, &[])?;
        let fail = c.failure_probability();
        let crit = c.critical_probability();
        println!("orderings = {}", c.orderings);
        println!("failure probability = {fail} ~ {:.6}", fail.to_f64_approx());
        println!("critical probability = {crit} ~ {:.6}", crit.to_f64_approx());
        let mut problems = Vec::new();
        if fail > crit {
            problems.push(format!("failure {fail} > critical {crit}"));
        }
        if crit > perm {
            problems.push(format!("critical {crit} > permutation bound {perm}"));
        }
        if c.red_edge_runs > 0 {
            problems.push(format!("{} runs ended with an all-red edge", c.red_edge_runs));
        }
        if c.failing_without_critical > 0 {
            problems.push(format!("{} failing runs had no critical vertex", c.failing_without_critical));
        }
        if !problems.is_empty() {
            return Err(Failure::Soundness(problems.join("; ")));
        }
        println!("sandwich failure <= critical <= permutation bound: ok");
    } else {
        let trials = trials.ok_or_else(|| Failure::Usage("--mc needs --trials".into()))?;
        let r = monte_carlo_failure(&h, trials, seed)?;
        println!(
            "failure probability ~ {:.6} (99% interval {:.6}..{:.6}, {} of {} trials, seed {})",
            r.estimate, r.low, r.high, r.failures, r.trials, r.seed
        );
        if r.low > perm.to_f64_approx() {
            return Err(Failure::Soundness(format!(
                "estimated failure probability interval starts above the permutation bound {perm}"
            )));
        }
        println!("sandwich estimate <= permutation bound: ok");
    }
    Ok(())
}

fn certificates_in(value: Value) -> Result<Vec<Certificate>, String> {
    let list = match value {
        Value::Array(xs) => xs,
        Value::Object(mut o) if o.contains_key("certificates") => match o.remove("certificates") {
            Some(Value::Array(xs)) => xs,
            _ => return Err("\"certificates\" must be a list".into()),
        },
        v @ Value::Object(_) => vec![v],
        _ => return Err("expected a certificate object or a list".into()),
    };
    list.into_iter().map(|v| serde_json::from_value(v).map_err(|e| e.to_string())).collect()
}

fn cmd_replay(files: &[PathBuf]) -> Outcome {
    if files.is_empty() {
        return Err(Failure::Usage("no certificate files given".into()));
    }
    let mut bad = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(f).map_err(|e| Failure::Usage(format!("{}: {e}", f.display())))?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", f.display())))?;
        let certs = certificates_in(value).map_err(|e| Failure::Usage(format!("{}: {e}", f.display())))?;
        for (i, c) in certs.iter().enumerate() {
            let ok = replay(c).map_err(|e| Failure::Usage(format!("{} #{i}: {e}", f.display())))?;
            println!("{} #{i} {} n={}: {}", f.display(), c.method, c.inputs.get("n").unwrap_or(&Value::Null), if ok { "ok" } else { "MISMATCH" });
            if !ok {
                bad.push(format!("{} #{i}", f.display()));
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("certificates not reproduced: {}", bad.join(", "))))
    }
}
