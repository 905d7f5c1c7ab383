use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use msd::bounds::geometric_ladder;
use msd::report::BaselineSelection;
use msd::{
    audit, convergence_run, count_terms, export_mio, fit_encoding, load_csv, msdd_enumerate,
    sample, AuditOptions, BinaryDataset, ColumnKind, DistanceKind, MioOptions, MsdError,
    MsddConfig, Population, PopulationSpec, Result, SolverConfig, Term,
};

/// Maximum subgroup discrepancy between two samples.
#[derive(Parser)]
#[command(name = "msd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find the most discrepant subgroup of a CSV and bound the estimate.
    Audit(AuditArgs),
    /// Brute-force maximum subgroup distribution distance.
    Msdd(MsddArgs),
    /// Solve subsamples of growing size.
    Converge(ConvergeArgs),
    /// Write a planted-subgroup population and a sample from it.
    Synth(SynthArgs),
    /// Write the mixed-integer model in LP format.
    ExportMio(ExportArgs),
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seconds; 0 disables the limit.
    #[arg(long, default_value_t = 600.0)]
    time_limit: f64,
    #[arg(long, default_value_t = 10)]
    min_support: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

impl Common {
    fn time_limit(&self) -> Option<Duration> {
        (self.time_limit > 0.0).then(|| Duration::from_secs_f64(self.time_limit))
    }

    fn solver(&self) -> SolverConfig {
        SolverConfig::default()
            .with_min_support(self.min_support)
            .with_time_limit(self.time_limit())
            .with_threads(self.threads)
    }
}

#[derive(Args)]
struct DataArgs {
    #[arg(long)]
    csv: PathBuf,
    /// Column holding the two group labels.
    #[arg(long)]
    group: String,
    /// Protected columns; all other columns when omitted.
    #[arg(long, value_delimiter = ',')]
    protected: Vec<String>,
    /// `name=kind` pairs (continuous, categorical, binary).
    #[arg(long, value_delimiter = ',')]
    kinds: Vec<String>,
    /// File with one `name=kind` pair per line.
    #[arg(long)]
    kinds_file: Option<PathBuf>,
    /// Kind of protected columns not listed in the kinds.
    #[arg(long, default_value = "categorical")]
    default_kind: ColumnKind,
}

impl DataArgs {
    fn load(&self) -> Result<BinaryDataset> {
        let protected = if self.protected.is_empty() {
            let file = fs::File::open(&self.csv).map_err(|e| io_err(&self.csv, e))?;
            let mut rdr = csv::Reader::from_reader(file);
            rdr.headers()?
                .iter()
                .map(|h| h.trim().to_string())
                .filter(|h| *h != self.group)
                .collect()
        } else {
            self.protected.clone()
        };
        let mut kinds: HashMap<String, ColumnKind> = protected
            .iter()
            .map(|c| (c.clone(), self.default_kind))
            .collect();
        let mut pairs = self.kinds.clone();
        if let Some(path) = &self.kinds_file {
            let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            pairs.extend(
                text.lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty() && !l.starts_with('#'))
                    .map(String::from),
            );
        }
        for pair in pairs {
            let (name, kind) = pair.split_once('=').ok_or_else(|| {
                MsdError::InvalidConfig(format!("expected name=kind, got `{pair}`"))
            })?;
            kinds.insert(name.trim().to_string(), kind.parse()?);
        }
        let table = load_csv(&self.csv, &self.group, &protected, &kinds)?;
        let schema = fit_encoding(&table)?;
        let encoded = schema.encode(&table)?;
        Ok(encoded.dataset)
    }
}

fn io_err(path: &Path, e: io::Error) -> MsdError {
    MsdError::Io {
        path: path.to_path_buf(),
        source: e,
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => fs::write(p, text).map_err(|e| io_err(p, e)),
        _ => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| io_err(Path::new("<stdout>"), e)),
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Baselines {
    None,
    All,
    Tv,
    Linf,
    Mmd,
}

#[derive(Args)]
struct AuditArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, value_delimiter = ',', default_value = "none")]
    baselines: Vec<Baselines>,
    /// Write the JSON report here (`-` for stdout instead of the text report).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include wall-clock time in the JSON report.
    #[arg(long)]
    timing: bool,
}

fn cmd_audit(args: AuditArgs) -> Result<ExitCode> {
    let data = args.data.load()?;
    let mut sel = BaselineSelection::default();
    for b in &args.baselines {
        match b {
            Baselines::None => {}
            Baselines::All => sel = BaselineSelection::all(),
            Baselines::Tv => sel.tv = true,
            Baselines::Linf => sel.linf = true,
            Baselines::Mmd => sel.mmd = true,
        }
    }
    let opts = AuditOptions {
        solver: args.common.solver(),
        delta: args.delta,
        baselines: sel,
        include_timing: args.timing,
    };
    let report = audit(&data, &opts)?;
    let to_stdout = args.json.as_deref() == Some(Path::new("-"));
    if let Some(path) = &args.json {
        write_output(Some(path), &(report.to_json()? + "\n"))?;
    }
    if !to_stdout {
        print!("{}", report.render_text());
    }
    Ok(status(report.proven_optimal))
}

fn status(complete: bool) -> ExitCode {
    if complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

#[derive(Args)]
struct MsddArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    common: Common,
    /// tv, mmd, msd or mass.
    #[arg(long, default_value = "tv")]
    distance: DistanceKind,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct MsddOutput {
    distance: String,
    best_distance: f64,
    best_term: Option<Term>,
    best_description: Option<String>,
    subgroups_considered: u64,
    subgroups_skipped_small: u64,
    subgroups_skipped_one_sided: u64,
    term_space: String,
    completed: bool,
}

fn cmd_msdd(args: MsddArgs) -> Result<ExitCode> {
    let data = args.data.load()?;
    let mut inner = args.common.solver();
    inner.time_limit = None;
    let dist = args.distance.build(&inner);
    let cfg = MsddConfig {
        min_support: args.common.min_support,
        time_limit: args.common.time_limit(),
    };
    let r = msdd_enumerate(&data, dist.as_ref(), &cfg)?;
    let out = MsddOutput {
        distance: dist.name().to_string(),
        best_distance: r.best_distance,
        best_description: r.best_term.as_ref().map(|t| data.describe(t)),
        best_term: r.best_term.clone(),
        subgroups_considered: r.subgroups_considered,
        subgroups_skipped_small: r.subgroups_skipped_small,
        subgroups_skipped_one_sided: r.subgroups_skipped_one_sided,
        term_space: count_terms(data.n_features()).to_string(),
        completed: r.completed,
    };
    write_output(
        args.out.as_deref(),
        &(serde_json::to_string_pretty(&out)? + "\n"),
    )?;
    Ok(status(r.completed))
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long, requires = "csv")]
    group: Option<String>,
    #[arg(long, value_delimiter = ',')]
    protected: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    kinds: Vec<String>,
    #[arg(long)]
    kinds_file: Option<PathBuf>,
    #[arg(long, default_value = "categorical")]
    default_kind: ColumnKind,
    /// Population spec to sample from instead of a CSV; the default
    /// benchmark when neither is given.
    #[arg(long, conflicts_with = "csv")]
    population: Option<PathBuf>,
    /// Samples per group drawn from the population.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1000)]
    start: usize,
    #[arg(long, default_value_t = 5)]
    points: usize,
    #[arg(long, default_value_t = 5)]
    seeds: u64,
    /// Dataset name written to the CSV.
    #[arg(long)]
    name: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_converge(args: ConvergeArgs) -> Result<ExitCode> {
    let (data, name) = match &args.csv {
        Some(csv) => {
            let d = DataArgs {
                csv: csv.clone(),
                group: args.group.clone().ok_or_else(|| {
                    MsdError::InvalidConfig("--group is required with --csv".into())
                })?,
                protected: args.protected.clone(),
                kinds: args.kinds.clone(),
                kinds_file: args.kinds_file.clone(),
                default_kind: args.default_kind,
            };
            let stem = csv.file_stem().map(|s| s.to_string_lossy().into_owned());
            (d.load()?, stem.unwrap_or_else(|| "data".into()))
        }
        None => {
            let spec = match &args.population {
                Some(p) => {
                    PopulationSpec::from_json(&fs::read_to_string(p).map_err(|e| io_err(p, e))?)?
                }
                None => PopulationSpec::default_benchmark(),
            };
            let pop = Population::from_spec(spec)?;
            (
                sample(&pop, args.samples, args.samples, args.common.seed)?,
                "synth".into(),
            )
        }
    };
    let ladder = geometric_ladder(args.start, data.n_rows(), args.points)?;
    let seeds: Vec<u64> = (args.common.seed..args.common.seed + args.seeds).collect();
    let run = convergence_run(&data, &args.common.solver(), &seeds, &ladder)?;
    let mut buf = Vec::new();
    run.write_csv(args.name.as_deref().unwrap_or(&name), &mut buf)?;
    write_output(args.out.as_deref(), &String::from_utf8_lossy(&buf))?;
    Ok(status(run.points.iter().all(|p| p.proven_optimal)))
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Plants `f0 = 1 AND … AND f{k-1} = 1`.
    #[arg(long, default_value_t = 4, conflicts_with = "planted")]
    k: usize,
    /// Planted term, e.g. "f2 = 1 AND f5 = 0".
    #[arg(long)]
    planted: Option<String>,
    #[arg(long, default_value_t = 0.15)]
    mass: f64,
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    /// Samples per group.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Population spec output (stdout when omitted).
    #[arg(long)]
    population: Option<PathBuf>,
    /// Sampled dataset output; no sample is drawn when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn cmd_synth(args: SynthArgs) -> Result<ExitCode> {
    let planted = match &args.planted {
        Some(text) => {
            let zeros = [vec![0u8; args.n]];
            BinaryDataset::from_groups(&zeros, &zeros)?.parse_description(text)?
        }
        None => Term::new((0..args.k).map(msd::Literal::positive))?,
    };
    let spec = PopulationSpec {
        n: args.n,
        planted,
        subgroup_mass: args.mass,
        gamma: args.gamma,
        seed: args.seed,
    };
    let pop = Population::from_spec(spec)?;
    eprintln!(
        "true msd {:.6} on {}{}",
        pop.true_msd(),
        pop.true_argmax(),
        if pop.verified_by_enumeration() {
            " (checked by enumeration)"
        } else {
            ""
        }
    );
    write_output(args.population.as_deref(), &(pop.spec().to_json()? + "\n"))?;
    if let Some(path) = &args.csv {
        let data = sample(&pop, args.samples, args.samples, args.seed)?;
        let names: Vec<String> = (0..args.n).map(|j| format!("f{j}")).collect();
        let file = fs::File::create(path).map_err(|e| io_err(path, e))?;
        data.write_csv(io::BufWriter::new(file), &names, "group")?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    out: PathBuf,
    /// Also let the model pick negative literals.
    #[arg(long)]
    negated_literals: bool,
}

fn cmd_export(args: ExportArgs) -> Result<ExitCode> {
    let data = args.data.load()?;
    let opts = MioOptions {
        negated_literals: args.negated_literals,
    };
    let stats = export_mio(&data, &args.common.solver(), &args.out, opts)?;
    eprintln!(
        "{} variables ({} binary), {} constraints",
        stats.variables, stats.binary_variables, stats.constraints
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Audit(a) => cmd_audit(a),
        Command::Msdd(a) => cmd_msdd(a),
        Command::Converge(a) => cmd_converge(a),
        Command::Synth(a) => cmd_synth(a),
        Command::ExportMio(a) => cmd_export(a),
    };
    res.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::FAILURE
    })
}
