//! Subcommands of the `comstar` binary, kept in a library so tests can call
//! them without spawning processes.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use comstar::components::{max_component_size, solve_cc, solve_td_deg, MAX_COMPONENT};
use comstar::eptas::{solve_eptas, EptasConfig};
use comstar::fpt::{solve_h, ColorCodingConfig, EmbedMode, Trials};
use comstar::matching::min_vertex_cover;
use comstar::oracle::{opt_common_brute, DEFAULT_LIMIT};
use comstar::reductions::{
    certificate_from_partition, gen_domset, gen_kway_pw4, gen_kway_td5, gen_p3, kway_brute,
    rescale, KwayInstance, LabeledInstance,
};
use comstar::treewidth::{heuristic_decomposition, solve_tw};
use comstar::vc::solve_vc;
use comstar::{parse_graph, parse_instance, Certificate, Error, Instance};

/// Failure of a subcommand, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    Verify(String),
    Parse(String),
    Precondition(String),
    Resource(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Resource(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Verify(m) => write!(f, "verification failed: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Precondition(m) => write!(f, "precondition failed: {m}"),
            CliError::Resource(m) => write!(f, "resource limit: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(p) => CliError::Parse(p.to_string()),
            Error::Precondition(m) => CliError::Precondition(m),
            Error::Resource(m) => CliError::Resource(m),
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algo {
    Auto,
    Oracle,
    FptH,
    Vc,
    Cc,
    TdDeg,
    Tw,
    Eptas,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Auto => "auto",
            Algo::Oracle => "oracle",
            Algo::FptH => "fpt-h",
            Algo::Vc => "vc",
            Algo::Cc => "cc",
            Algo::TdDeg => "td-deg",
            Algo::Tw => "tw",
            Algo::Eptas => "eptas",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Randomized,
}

/// An optimum size, or the yes/no of a decision query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Answer {
    Size(usize),
    Decision(String),
}

impl std::fmt::Display for Answer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Answer::Size(s) => write!(f, "{s}"),
            Answer::Decision(d) => f.write_str(d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub instance_digest: String,
    pub algorithm: String,
    pub answer: Answer,
    /// Star sizes of the witness, non-increasing.
    pub vector: Vec<usize>,
    pub elapsed_ms: u64,
    pub seed: u64,
    pub parameters: BTreeMap<String, String>,
}

#[derive(Clone, Debug, clap::Args)]
pub struct SolveOpts {
    #[arg(long, value_enum, default_value = "auto")]
    pub algo: Algo,
    /// Vertex cover bound for `vc`, component bound for `cc`.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    /// Embedding mode for `fpt-h`; exact up to h = 12 when omitted.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Colour-coding trials; derived from the failure probability when
    /// omitted.
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 0.01)]
    pub failure_probability: f64,
    #[arg(long, env = "COMSTAR_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Write the tree decompositions used by `tw` to this file.
    #[arg(long)]
    pub dump_decomposition: Option<PathBuf>,
    /// Write the `fpt-h` certificate to this file when the answer is yes.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}

impl Default for SolveOpts {
    fn default() -> Self {
        SolveOpts {
            algo: Algo::Auto,
            k: None,
            epsilon: 0.5,
            mode: None,
            trials: None,
            failure_probability: 0.01,
            seed: 0,
            dump_decomposition: None,
            certificate: None,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "comstar",
    version,
    about = "Maximum common star forest solvers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve an instance and print a JSON report.
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        opts: SolveOpts,
    },
    /// Check a certificate against an instance.
    Verify {
        instance: PathBuf,
        certificate: PathBuf,
    },
    /// Generate an instance from a reduction.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Instance output path; labels go to `<out>.labels.json`.
        #[arg(long, global = true, default_value = "instance.txt")]
        out: PathBuf,
    },
    /// Run several algorithms over every instance file in a directory and
    /// print CSV.
    Bench {
        dir: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "auto")]
        algos: Vec<Algo>,
        #[arg(long, env = "COMSTAR_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Dominating set of size k in the graph file.
    Domset {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Partition of the graph file into paths on three vertices.
    P3 { graph: PathBuf },
    /// k-way partition into trees of treedepth 5.
    KwayTd5(KwayArgs),
    /// k-way partition into bounded-degree trees of pathwidth 4.
    KwayPw4(KwayArgs),
}

#[derive(Clone, Debug, clap::Args)]
pub struct KwayArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub items: Vec<usize>,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub capacity: usize,
    /// Scale items by 2k + 10 first.
    #[arg(long)]
    pub rescale: bool,
    /// If a partition exists, write the resulting certificate here.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn load_instance(path: &Path) -> CliResult<(Instance, String)> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    let text = String::from_utf8_lossy(&bytes);
    let inst =
        parse_instance(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok((inst, digest(&bytes)))
}

/// Which exact solver `auto` uses for an instance.
pub fn auto_choice(inst: &Instance) -> Algo {
    let (g1, g2) = (&inst.g1, &inst.g2);
    if g1.vertex_count() <= DEFAULT_LIMIT && g2.vertex_count() <= DEFAULT_LIMIT {
        Algo::Oracle
    } else if max_component_size(g1, g2) <= MAX_COMPONENT {
        Algo::Cc
    } else if min_vertex_cover(g1, 3).is_some() && min_vertex_cover(g2, 3).is_some() {
        Algo::Vc
    } else {
        Algo::Tw
    }
}

pub fn cmd_solve(path: &Path, opts: &SolveOpts) -> CliResult<RunReport> {
    let (inst, instance_digest) = load_instance(path)?;
    solve_instance(&inst, instance_digest, opts)
}

pub fn solve_instance(
    inst: &Instance,
    instance_digest: String,
    opts: &SolveOpts,
) -> CliResult<RunReport> {
    let start = Instant::now();
    let mut params = BTreeMap::new();
    let algo = match opts.algo {
        Algo::Auto => {
            let a = auto_choice(inst);
            params.insert("dispatch".into(), a.name().into());
            a
        }
        a => a,
    };
    let (g1, g2) = (&inst.g1, &inst.g2);
    let (answer, vector) = match algo {
        Algo::Auto => unreachable!("auto resolves to a concrete algorithm"),
        Algo::Oracle => {
            let s = opt_common_brute(g1, g2, DEFAULT_LIMIT)?;
            (Answer::Size(s.size), s.vector.to_forest().sizes().to_vec())
        }
        Algo::FptH => {
            let cfg = ColorCodingConfig {
                trials: opts.trials.map_or(Trials::Auto, Trials::Fixed),
                failure_probability: opts.failure_probability,
                rng_seed: opts.seed,
            };
            cfg.validate()?;
            let mode = opts.mode.map(|m| match m {
                ModeArg::Exact => EmbedMode::Exact,
                ModeArg::Randomized => EmbedMode::Randomized,
            });
            let resolved = mode.unwrap_or(EmbedMode::default_for(inst.h));
            params.insert("h".into(), inst.h.to_string());
            params.insert("mode".into(), format!("{resolved:?}").to_lowercase());
            if resolved == EmbedMode::Randomized {
                params.insert("trials".into(), cfg.trial_count(inst.h).to_string());
            }
            let d = solve_h(inst, &cfg, Some(resolved))?;
            let sizes = d
                .certificate
                .as_ref()
                .map(|c| c.star_sizes.clone())
                .unwrap_or_default();
            if let (Some(path), Some(cert)) = (&opts.certificate, &d.certificate) {
                let json = serde_json::to_string_pretty(cert).expect("certificate serialises");
                fs::write(path, json).map_err(io_err(path))?;
            }
            let yes = if d.answer { "yes" } else { "no" };
            (Answer::Decision(yes.into()), sizes)
        }
        Algo::Vc => {
            let k = opts.k.unwrap_or(3);
            params.insert("k".into(), k.to_string());
            let s = solve_vc(g1, g2, k)?;
            (Answer::Size(s.size), s.forest.sizes().to_vec())
        }
        Algo::Cc => {
            let k = opts.k.unwrap_or(MAX_COMPONENT);
            params.insert("k".into(), k.to_string());
            let s = solve_cc(g1, g2, k)?;
            (Answer::Size(s.size), s.forest.sizes().to_vec())
        }
        Algo::TdDeg => {
            params.insert("k".into(), max_component_size(g1, g2).to_string());
            let s = solve_td_deg(g1, g2)?;
            (Answer::Size(s.size), s.forest.sizes().to_vec())
        }
        Algo::Tw => {
            if let Some(path) = &opts.dump_decomposition {
                let text = format!(
                    "# G1\n{}# G2\n{}",
                    heuristic_decomposition(g1).to_text(),
                    heuristic_decomposition(g2).to_text()
                );
                fs::write(path, text).map_err(io_err(path))?;
            }
            let (size, v) = solve_tw(g1, g2);
            (Answer::Size(size), v.to_forest().sizes().to_vec())
        }
        Algo::Eptas => {
            let cfg = EptasConfig::new(opts.epsilon)?;
            let s = solve_eptas(g1, g2, cfg);
            params.insert("epsilon".into(), opts.epsilon.to_string());
            params.insert("shift".into(), format!("{},{}", s.shift.0, s.shift.1));
            (Answer::Size(s.size), s.vector.to_forest().sizes().to_vec())
        }
    };
    Ok(RunReport {
        instance_digest,
        algorithm: algo.name().into(),
        answer,
        vector,
        elapsed_ms: start.elapsed().as_millis() as u64,
        seed: opts.seed,
        parameters: params,
    })
}

pub fn cmd_verify(instance: &Path, certificate: &Path) -> CliResult<()> {
    let (inst, _) = load_instance(instance)?;
    let text = fs::read_to_string(certificate).map_err(io_err(certificate))?;
    let cert: Certificate = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", certificate.display())))?;
    cert.verify(&inst.g1, &inst.g2).map_err(CliError::Verify)
}

fn load_graph(path: &Path) -> CliResult<comstar::Graph> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_graph(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Path of the label sidecar written next to an instance file.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".labels.json");
    PathBuf::from(s)
}

pub fn cmd_gen(kind: &GenKind, out: &Path) -> CliResult<LabeledInstance> {
    let li = match kind {
        GenKind::Domset { graph, k } => gen_domset(&load_graph(graph)?, *k)?,
        GenKind::P3 { graph } => gen_p3(&load_graph(graph)?)?,
        GenKind::KwayTd5(args) | GenKind::KwayPw4(args) => {
            let mut kw = KwayInstance::new(args.items.clone(), args.k, args.capacity)?;
            if args.rescale {
                kw = rescale(&kw);
            }
            let li = if matches!(kind, GenKind::KwayTd5(_)) {
                gen_kway_td5(&kw)?
            } else {
                gen_kway_pw4(&kw)?
            };
            if let Some(path) = &args.certificate {
                match kway_brute(&kw)? {
                    Some(part) => {
                        let cert = certificate_from_partition(&li, &part)?;
                        let json = serde_json::to_string(&cert).expect("certificate serialises");
                        fs::write(path, json).map_err(io_err(path))?;
                    }
                    None => log::warn!("no partition exists; certificate not written"),
                }
            }
            li
        }
    };
    fs::write(out, li.instance.to_text()).map_err(io_err(out))?;
    let side = sidecar_path(out);
    fs::write(&side, li.sidecar_json()).map_err(io_err(&side))?;
    Ok(li)
}

pub const CSV_HEADER: [&str; 6] = ["digest", "algo", "answer", "vector", "elapsed_ms", "seed"];

/// Solves every regular file in `dir` (sorted by name) with each algorithm
/// and writes one CSV row per run. Failed runs put `error:<exit code>` in
/// the answer column.
pub fn cmd_bench(dir: &Path, algos: &[Algo], seed: u64, out: impl Write) -> CliResult<usize> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err(dir))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && !p.to_string_lossy().ends_with(".json"))
        .collect();
    files.sort();
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    let mut rows = 0;
    for file in &files {
        let (inst, dig) = load_instance(file)?;
        for &algo in algos {
            let opts = SolveOpts {
                algo,
                seed,
                ..SolveOpts::default()
            };
            let (answer, vector, ms) = match solve_instance(&inst, dig.clone(), &opts) {
                Ok(r) => (r.answer.to_string(), format_vector(&r.vector), r.elapsed_ms),
                Err(e) => (format!("error:{}", e.exit_code()), String::new(), 0),
            };
            w.write_record([
                dig.as_str(),
                algo.name(),
                &answer,
                &vector,
                &ms.to_string(),
                &seed.to_string(),
            ])
            .map_err(csv_err)?;
            rows += 1;
        }
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(rows)
}

fn format_vector(v: &[usize]) -> String {
    v.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs a parsed command line, printing results to `out`; returns the exit
/// code.
pub fn run(cli: Cli, mut out: impl Write) -> i32 {
    let result = match cli.command {
        Command::Solve { instance, opts } => cmd_solve(&instance, &opts).map(|r| {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&r).expect("report serialises")
            );
        }),
        Command::Verify {
            instance,
            certificate,
        } => cmd_verify(&instance, &certificate).map(|()| {
            let _ = writeln!(out, "certificate ok");
        }),
        Command::Gen { kind, out: path } => cmd_gen(&kind, &path).map(|li| {
            let _ = writeln!(
                out,
                "wrote {} ({} + {} vertices, h = {}) and {}",
                path.display(),
                li.instance.g1.vertex_count(),
                li.instance.g2.vertex_count(),
                li.instance.h,
                sidecar_path(&path).display()
            );
        }),
        Command::Bench { dir, algos, seed } => cmd_bench(&dir, &algos, seed, &mut out).map(|_| ()),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("comstar: {e}");
            e.exit_code()
        }
    }
}
