//! Command-line front end for the `repvar` classifier.
//!
//! Exit codes: `0` when every requested answer was decided, `2` when some
//! outcome stayed undecided within the search budget, `1` on usage or
//! parse errors.

use anyhow::{anyhow, bail, Context};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use repvar::components::{allocate, classify, generic_gamma, Classification};
use repvar::config::{derive_seed, Config};
use repvar::field::Prime;
use repvar::filt::{gamma, has_filtration, FiltOutcome, GammaReport};
use repvar::quiver::{
    enumerate_sequences, is_realizable, Algebra, DimVector, SemisimpleSequence,
};
use repvar::rep::{dualize, path_ranks, theta, theta_plus, RepPoint};
use repvar::skeleta::{enumerate_skeleta, generic_module, to_dot};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "repvar",
    version,
    about = "Irreducible components of module varieties over truncated path algebras"
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GlobalOpts {
    /// Field characteristic for generic modules (a prime below 2^31).
    #[arg(long, global = true, env = "REPVAR_PRIME", default_value_t = 101)]
    prime: u64,

    /// Base seed for every randomized construction; echoed in all reports.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Generic modules sampled per containment decision.
    #[arg(long, global = true, default_value_t = 4)]
    retries: u32,

    /// Cap on the subspace choices a single filtration search may enumerate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: u64,

    /// Cross-check a classification over several primes (components only).
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Vec<u64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Run library searches on a single thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the irreducible components of a module variety.
    Components {
        /// Algebra file (see `realizable --help` for the format).
        algebra: PathBuf,
        /// Dimension vector, e.g. `2,2`.
        #[arg(long)]
        dim: String,
    },
    /// Decide whether a semisimple sequence is realizable.
    Realizable {
        algebra: PathBuf,
        /// Semisimple sequence, e.g. `1,0;0,1;1,0;0,1`.
        #[arg(long)]
        seq: String,
    },
    /// List the semisimple sequences with a given dimension vector.
    Sequences {
        algebra: PathBuf,
        #[arg(long)]
        dim: String,
        /// Keep only realizable sequences.
        #[arg(long)]
        realizable: bool,
    },
    /// List the skeleta compatible with a semisimple sequence.
    Skeleta {
        algebra: PathBuf,
        #[arg(long)]
        seq: String,
    },
    /// Build a generic module for a stratum and print its presentation.
    Generic {
        algebra: PathBuf,
        #[arg(long)]
        seq: String,
        /// Also write the hypergraph as Graphviz DOT to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Count the sequences governing a module (the invariant Γ).
    Gamma {
        algebra: PathBuf,
        /// Module file; mutually exclusive with --seq.
        #[arg(long)]
        module: Option<PathBuf>,
        /// Stratum whose generic module should be measured instead.
        #[arg(long)]
        seq: Option<String>,
    },
    /// Search for a filtration of a module governed by a sequence.
    Filt {
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        seq: String,
    },
    /// Locate a module among the irreducible components of its variety.
    Allocate {
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        dim: String,
    },
    /// Print the layering invariants of a module.
    Theta {
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
        /// Include path ranks of the module and of its dual.
        #[arg(long)]
        plus: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(Outcome::Decided) => ExitCode::SUCCESS,
        Ok(Outcome::Undecided) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

enum Outcome {
    Decided,
    Undecided,
}

impl Outcome {
    fn when(decided: bool) -> Outcome {
        if decided {
            Outcome::Decided
        } else {
            Outcome::Undecided
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let opts = &cli.opts;
    if !opts.primes.is_empty() && !matches!(cli.cmd, Cmd::Components { .. }) {
        bail!("--primes is only honored by `components`; use --prime here");
    }
    match &cli.cmd {
        Cmd::Components { algebra, dim } => cmd_components(opts, algebra, dim),
        Cmd::Realizable { algebra, seq } => cmd_realizable(opts, algebra, seq),
        Cmd::Sequences {
            algebra,
            dim,
            realizable,
        } => cmd_sequences(opts, algebra, dim, *realizable),
        Cmd::Skeleta { algebra, seq } => cmd_skeleta(opts, algebra, seq),
        Cmd::Generic { algebra, seq, dot } => cmd_generic(opts, algebra, seq, dot.as_deref()),
        Cmd::Gamma {
            algebra,
            module,
            seq,
        } => cmd_gamma(opts, algebra, module.as_deref(), seq.as_deref()),
        Cmd::Filt {
            algebra,
            module,
            seq,
        } => cmd_filt(opts, algebra, module, seq),
        Cmd::Allocate {
            algebra,
            module,
            dim,
        } => cmd_allocate(opts, algebra, module, dim),
        Cmd::Theta {
            algebra,
            module,
            plus,
        } => cmd_theta(opts, algebra, module, *plus),
    }
}

fn config(opts: &GlobalOpts, prime: u64) -> anyhow::Result<Config> {
    let mut cfg = Config::new(prime)?
        .with_seed(opts.seed)
        .with_retries(opts.retries)
        .with_budget(opts.budget);
    cfg.parallel = !opts.sequential;
    Ok(cfg)
}

fn load_algebra(path: &Path) -> anyhow::Result<Arc<Algebra>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let alg = Algebra::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok(Arc::new(alg))
}

fn load_module(
    alg: &Arc<Algebra>,
    prime: Prime,
    path: &Path,
) -> anyhow::Result<RepPoint> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    RepPoint::parse(alg.clone(), prime, &text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn parse_dim(alg: &Algebra, text: &str) -> anyhow::Result<DimVector> {
    let d = DimVector::parse(text)?;
    if d.len() != alg.vertex_count() {
        bail!(
            "dimension vector {text} has {} entries, the algebra has {} vertices",
            d.len(),
            alg.vertex_count()
        );
    }
    Ok(d)
}

fn parse_seq(alg: &Algebra, text: &str) -> anyhow::Result<SemisimpleSequence> {
    Ok(SemisimpleSequence::parse(alg, text)?)
}

fn emit(opts: &GlobalOpts, value: &Value, human: &str) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = match opts.format {
        Format::Json => writeln!(out, "{value}"),
        Format::Human => writeln!(out, "{human}"),
    };
    if let Err(e) = result {
        // A closed reader (`repvar ... | head`) is a normal way to stop
        // consuming output, not an error worth a panic or a message.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

/// Per-stratum verdict of one classification run, for multi-prime merging.
#[derive(Clone, PartialEq, Eq)]
enum Status {
    Component,
    Rejected { governed_by: String, witness_seed: u64 },
    Undetermined,
}

fn statuses(c: &Classification) -> BTreeMap<String, Status> {
    let mut map = BTreeMap::new();
    for comp in &c.components {
        map.insert(comp.layering.to_string(), Status::Component);
    }
    for r in &c.rejected {
        map.insert(
            r.layering.to_string(),
            Status::Rejected {
                governed_by: r.governed_by.to_string(),
                witness_seed: r.witness_seed,
            },
        );
    }
    for s in &c.undetermined {
        map.insert(s.to_string(), Status::Undetermined);
    }
    map
}

fn cmd_components(opts: &GlobalOpts, algebra: &Path, dim: &str) -> anyhow::Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let d = parse_dim(&alg, dim)?;
    let primes = if opts.primes.is_empty() {
        vec![opts.prime]
    } else {
        opts.primes.clone()
    };
    let mut runs = Vec::new();
    for &p in &primes {
        let cfg = config(opts, p)?;
        runs.push((cfg.clone(), classify(&alg, &d, &cfg)?));
    }

    // A stratum survives only when every prime agrees on its verdict kind
    // (the witnessing certificate itself may differ between primes).
    let other_maps: Vec<BTreeMap<String, Status>> =
        runs[1..].iter().map(|(_, c)| statuses(c)).collect();
    let agreed = |layering: &str, status: &Status| {
        other_maps
            .iter()
            .all(|m| std::mem::discriminant(&m[layering]) == std::mem::discriminant(status))
    };
    let first = &runs[0].1;
    let mut components = Vec::new();
    let mut rejected = Vec::new();
    let mut undetermined = Vec::new();
    for c in &first.components {
        let l = c.layering.to_string();
        if agreed(&l, &Status::Component) {
            components.push(l);
        } else {
            undetermined.push(l);
        }
    }
    for r in &first.rejected {
        let l = r.layering.to_string();
        let status = Status::Rejected {
            governed_by: r.governed_by.to_string(),
            witness_seed: r.witness_seed,
        };
        if agreed(&l, &status) {
            rejected.push((l, r.governed_by.to_string(), r.witness_seed));
        } else {
            undetermined.push(l);
        }
    }
    for s in &first.undetermined {
        undetermined.push(s.to_string());
    }

    let value = if primes.len() == 1 {
        first.to_json(&alg, &runs[0].0)
    } else {
        json!({
            "algebra": alg.to_string(),
            "dims": d.to_string(),
            "primes": primes,
            "seed": opts.seed,
            "retries": opts.retries,
            "budget": opts.budget,
            "components": components,
            "rejected": rejected.iter().map(|(l, g, w)| json!({
                "layering": l, "governed_by": g, "witness_seed": w,
            })).collect::<Vec<_>>(),
            "undetermined": undetermined,
            "runs": runs.iter().map(|(cfg, c)| c.to_json(&alg, cfg)).collect::<Vec<_>>(),
        })
    };

    let mut out = String::new();
    out.push_str(&format!("algebra: {}\n", algebra.display()));
    out.push_str(&format!("dims: {d}\n"));
    if primes.len() == 1 {
        out.push_str(&format!("prime: {}\n", primes[0]));
    } else {
        let list: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
        out.push_str(&format!("primes: {}\n", list.join(",")));
    }
    out.push_str(&format!("seed: {}\n", opts.seed));
    out.push_str(&format!("components: {}\n", components.len()));
    for l in &components {
        out.push_str(&format!("  {l}\n"));
    }
    out.push_str(&format!("rejected: {}\n", rejected.len()));
    for (l, g, w) in &rejected {
        out.push_str(&format!("  {l}  inside  {g}  (witness seed {w})\n"));
    }
    out.push_str(&format!("undetermined: {}", undetermined.len()));
    for l in &undetermined {
        out.push_str(&format!("\n  {l}"));
    }
    emit(opts, &value, &out);
    Ok(Outcome::when(undetermined.is_empty()))
}

fn cmd_realizable(opts: &GlobalOpts, algebra: &Path, seq: &str) -> anyhow::Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let s = parse_seq(&alg, seq)?;
    let yes = is_realizable(&alg, &s);
    let value = json!({
        "algebra": alg.to_string(),
        "seq": s.to_string(),
        "realizable": yes,
        "seed": opts.seed,
    });
    emit(opts, &value, &format!("{yes}"));
    Ok(Outcome::Decided)
}

fn cmd_sequences(
    opts: &GlobalOpts,
    algebra: &Path,
    dim: &str,
    realizable: bool,
) -> anyhow::Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let d = parse_dim(&alg, dim)?;
    let seqs = enumerate_sequences(&alg, &d, realizable);
    let listed: Vec<String> = seqs.iter().map(|s| s.to_string()).collect();
    let value = json!({
        "algebra": alg.to_string(),
        "dims": d.to_string(),
        "realizable_only": realizable,
        "sequences": listed,
        "seed": opts.seed,
    });
    let mut out = format!("sequences: {}", listed.len());
    for s in &listed {
        out.push_str(&format!("\n{s}"));
    }
    emit(opts, &value, &out);
    Ok(Outcome::Decided)
}

fn cmd_skeleta(opts: &GlobalOpts, algebra: &Path, seq: &str) -> anyhow::Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let s = parse_seq(&alg, seq)?;
    let skeleta = enumerate_skeleta(&alg, &s);
    let listed: Vec<String> = skeleta.iter().map(|k| k.format(&alg)).collect();
    let value = json!({
        "algebra": alg.to_string(),
        "seq": s.to_string(),
        "skeleta": listed,
        "seed": opts.seed,
    });
    let mut out = format!("skeleta: {}", listed.len());
    for k in &listed {
        out.push_str(&format!("\n{k}"));
    }
    emit(opts, &value, &out);
    Ok(Outcome::Decided)
}

fn cmd_generic(
    opts: &GlobalOpts,
    algebra: &Path,
    seq: &str,
    dot: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let s = parse_seq(&alg, seq)?;
    let skeleta = enumerate_skeleta(&alg, &s);
    let Some(skel) = skeleta.first() else {
        bail!("{s} is not realizable; no generic module exists");
    };
    let seed = derive_seed(opts.seed, &s.to_string(), 0);
    let g = generic_module(&alg, Prime::new(opts.prime)?, skel, seed)?;
    let dot_text = to_dot(&g.hypergraph, &alg);
    if let Some(path) = dot {
        std::fs::write(path, &dot_text)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let value = json!({
        "algebra": alg.to_string(),
        "seq": s.to_string(),
        "skeleton": skel.format(&alg),
        "module": g.point.to_text(),
        "hypergraph": g.hypergraph.format(&alg),
        "dot": dot_text,
        "seed": opts.seed,
        "generic_seed": g.seed,
    });
    let mut out = format!(
        "seed: {}\ngeneric seed: {}\nskeleton: {}\n\n{}\nhypergraph:\n{}",
        opts.seed,
        g.seed,
        skel.format(&alg),
        g.point.to_text(),
        g.hypergraph.format(&alg),
    );
    if let Some(path) = dot {
        out.push_str(&format!("\ndot written to {}", path.display()));
    }
    emit(opts, &value, &out);
    Ok(Outcome::Decided)
}

fn gamma_value(opts: &GlobalOpts, alg: &Algebra, g: &GammaReport, extra: Value) -> (Value, String) {
    let governed: Vec<String> = g.governed.iter().map(|s| s.to_string()).collect();
    let undecided: Vec<String> = g.undecided.iter().map(|s| s.to_string()).collect();
    let mut value = json!({
        "algebra": alg.to_string(),
        "gamma_min": g.min(),
        "gamma_max": g.max(),
        "exact": g.is_exact(),
        "governed": governed,
        "undecided": undecided,
        "seed": opts.seed,
    });
    if let Value::Object(extra) = extra {
        value.as_object_mut().unwrap().extend(extra);
    }
    let mut out = if g.is_exact() {
        format!("gamma: {}", g.min())
    } else {
        format!("gamma: between {} and {}", g.min(), g.max())
    };
    out.push_str(&format!("\nseed: {}", opts.seed));
    for s in &g.governed {
        out.push_str(&format!("\n  governed by {s}"));
    }
    for s in &g.undecided {
        out.push_str(&format!("\n  undecided   {s}"));
    }
    (value, out)
}

fn cmd_gamma(
    opts: &GlobalOpts,
    algebra: &Path,
    module: Option<&Path>,
    seq: Option<&str>,
) -> anyhow::Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let report = match (module, seq) {
        (Some(path), None) => {
            let m = load_module(&alg, Prime::new(opts.prime)?, path)?;
            gamma(&m, opts.budget, !opts.sequential)?
        }
        (None, Some(text)) => {
            let s = parse_seq(&alg, text)?;
            generic_gamma(&alg, &s, &config(opts, opts.prime)?)?
        }
        _ => bail!("pass exactly one of --module or --seq"),
    };
    let (value, out) = gamma_value(opts, &alg, &report, json!({}));
    emit(opts, &value, &out);
    Ok(Outcome::when(report.is_exact()))
}

fn cmd_filt(
    opts: &GlobalOpts,
    algebra: &Path,
    module: &Path,
    seq: &str,
) -> anyhow::Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let m = load_module(&alg, Prime::new(opts.prime)?, module)?;
    let s = parse_seq(&alg, seq)?;
    let outcome = has_filtration(&m, &s, opts.budget)?;
    let (word, chain, decided) = match &outcome {
        FiltOutcome::Witness(f) => {
            let chain: Vec<String> = f.spaces().iter().map(|w| w.dims().to_string()).collect();
            ("yes", chain, true)
        }
        FiltOutcome::No => ("no", Vec::new(), true),
        FiltOutcome::Undecided => ("undecided", Vec::new(), false),
    };
    let value = json!({
        "algebra": alg.to_string(),
        "seq": s.to_string(),
        "outcome": word,
        "chain": chain,
        "seed": opts.seed,
    });
    let mut out = format!("{word}\nseed: {}", opts.seed);
    if !chain.is_empty() {
        out.push_str(&format!("\nchain: {}", chain.join(" > ")));
    }
    emit(opts, &value, &out);
    Ok(Outcome::when(decided))
}

fn cmd_allocate(
    opts: &GlobalOpts,
    algebra: &Path,
    module: &Path,
    dim: &str,
) -> anyhow::Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let d = parse_dim(&alg, dim)?;
    let cfg = config(opts, opts.prime)?;
    let m = load_module(&alg, cfg.prime, module)?;
    if m.dims() != &d {
        bail!("module has dimension vector {}, expected {d}", m.dims());
    }
    let c = classify(&alg, &d, &cfg)?;
    let comps = c.component_layerings();
    let a = allocate(&m, &comps, opts.budget)?;
    let listed: Vec<String> = comps.iter().map(|s| s.to_string()).collect();
    let contained: Vec<String> = a.contained.iter().map(|&i| listed[i].clone()).collect();
    let undecided: Vec<String> = a.undecided.iter().map(|&i| listed[i].clone()).collect();
    let unresolved: Vec<String> = c.undetermined.iter().map(|s| s.to_string()).collect();
    let value = json!({
        "algebra": alg.to_string(),
        "dims": d.to_string(),
        "components": listed,
        "contained_in": contained,
        "undecided": undecided,
        "unclassified_strata": unresolved,
        "seed": opts.seed,
    });
    let mut out = format!("components: {}\nseed: {}", listed.len(), opts.seed);
    for (i, l) in listed.iter().enumerate() {
        let mark = if a.contained.contains(&i) {
            "inside "
        } else if a.undecided.contains(&i) {
            "undecided"
        } else {
            "outside"
        };
        out.push_str(&format!("\n  {mark}  {l}"));
    }
    for l in &unresolved {
        out.push_str(&format!("\n  unclassified stratum {l}"));
    }
    emit(opts, &value, &out);
    Ok(Outcome::when(a.undecided.is_empty() && unresolved.is_empty()))
}

fn cmd_theta(
    opts: &GlobalOpts,
    algebra: &Path,
    module: &Path,
    plus: bool,
) -> anyhow::Result<Outcome> {
    let alg = load_algebra(algebra)?;
    let m = load_module(&alg, Prime::new(opts.prime)?, module)?;
    let t = theta(&m);
    let mut value = json!({
        "algebra": alg.to_string(),
        "dims": m.dims().to_string(),
        "radical": t.radical.to_string(),
        "socle": t.socle.to_string(),
        "seed": opts.seed,
    });
    let mut out = format!(
        "radical: {}\nsocle: {}\nseed: {}",
        t.radical, t.socle, opts.seed
    );
    if plus {
        let tp = theta_plus(&m);
        let ranks: Vec<Value> = path_ranks(&m)
            .iter()
            .map(|(p, r)| json!({"path": p.format(&alg), "rank": r}))
            .collect();
        let dual = dualize(&m);
        let dual_ranks: Vec<Value> = path_ranks(&dual)
            .iter()
            .map(|(p, r)| json!({"path": p.format(dual.alg()), "rank": r}))
            .collect();
        out.push_str("\npath ranks:");
        for (p, r) in path_ranks(&m) {
            out.push_str(&format!("\n  {}: {r}", p.format(&alg)));
        }
        out.push_str("\ndual path ranks:");
        for (p, r) in path_ranks(&dual) {
            out.push_str(&format!("\n  {}: {r}", p.format(dual.alg())));
        }
        let obj = value.as_object_mut().unwrap();
        obj.insert("path_ranks".into(), Value::Array(ranks));
        obj.insert("dual_path_ranks".into(), Value::Array(dual_ranks));
        obj.insert(
            "neg_path_ranks".into(),
            json!(tp.neg_path_ranks),
        );
        obj.insert(
            "neg_dual_path_ranks".into(),
            json!(tp.neg_dual_path_ranks),
        );
    }
    emit(opts, &value, &out);
    Ok(Outcome::Decided)
}
