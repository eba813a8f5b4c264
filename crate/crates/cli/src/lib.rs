//! Command-line driver: parses flags into a [`RunConfig`], runs the requested
//! experiment and writes `<out>.csv` / `<out>_<label>.csv` histograms plus an
//! `<out>.json` manifest.

mod output;

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use entangler::experiments::{
    cnot_mixed_distance, delta_e_distribution, dw_distribution, entangling_power,
    multiqubit_delta_e, perturbation_sweep, power_law_fit, random_pair_distribution,
    ExperimentReport, SamplingPlan, SweepBase, DEFAULT_CHUNK_SIZE,
};
use entangler::gates::GateSpec;
use entangler::histogram::BinSpec;
use entangler::metrics::MetricKind;

pub use output::{write_csv, CsvMeta};
use output::{curve_path, write_json, CurveEntry, Manifest, SweepPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7a,
    Fig7b,
    Epower,
    Custom,
}

impl ExperimentId {
    pub fn name(self) -> &'static str {
        match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Fig5 => "fig5",
            Self::Fig6 => "fig6",
            Self::Fig7a => "fig7a",
            Self::Fig7b => "fig7b",
            Self::Epower => "epower",
            Self::Custom => "custom",
        }
    }

    fn default_samples(self) -> u64 {
        match self {
            Self::Fig2 => 10_000,
            _ => 100_000,
        }
    }

    fn default_bins(self) -> usize {
        match self {
            Self::Fig4 | Self::Fig5 => 200,
            Self::Fig6 | Self::Epower | Self::Fig2 => 100,
            _ => 201,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Bures,
    Hs,
}

impl From<MetricArg> for MetricKind {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Bures => MetricKind::Bures,
            MetricArg::Hs => MetricKind::HilbertSchmidt,
        }
    }
}

/// Monte Carlo experiments on the entangling action of quantum gates.
#[derive(Debug, Parser)]
#[command(name = "entangler", version)]
pub struct Cli {
    /// Experiment to run.
    #[arg(value_enum)]
    pub experiment: ExperimentId,

    /// Samples per histogram (per point for fig2).
    #[arg(long)]
    pub samples: Option<u64>,

    /// Number of histogram bins.
    #[arg(long)]
    pub bins: Option<usize>,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    #[arg(long, default_value_t = 1)]
    pub workers: usize,

    /// Samples per RNG substream. Results depend on it, not on --workers.
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE)]
    pub chunk_size: u64,

    /// Gate: `cnot`, `utheta:<rad>` or `canon:<l1>,<l2>,<l3>` (fig1, epower, custom).
    #[arg(long)]
    pub gate: Option<String>,

    /// Qudit dimension N_A for fig3 (default: all of 2..=6).
    #[arg(long)]
    pub na: Option<usize>,

    /// Distance for fig4/fig5 (default: bures for fig4, hs for fig5).
    #[arg(long, value_enum)]
    pub metric: Option<MetricArg>,

    /// Sweep points for fig2, comma separated, each in (-π/4, π/4].
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub xs: Option<Vec<f64>>,

    /// Bins of the four-qubit curve of fig7b.
    #[arg(long, default_value_t = 2001)]
    pub n4_bins: usize,

    /// Output path prefix (default: the experiment id).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Validated run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub experiment: ExperimentId,
    pub gate: Option<GateSpec>,
    pub samples: u64,
    pub bins: usize,
    pub seed: u64,
    pub workers: usize,
    pub chunk_size: u64,
    pub na: Option<usize>,
    pub metric: Option<MetricKind>,
    pub xs: Vec<f64>,
    pub n4_bins: usize,
    pub out: PathBuf,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Numerical(#[from] entangler::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for configuration errors, 1 for everything that fails at run time.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => 2,
            _ => 1,
        }
    }
}

fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Default fig2 grid.
pub fn default_sweep_points() -> Vec<f64> {
    let mut xs = vec![0.0, 0.025, 0.05, 0.075, 0.1, 0.125, 0.15, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7];
    xs.push(FRAC_PI_4);
    xs
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        use ExperimentId::*;
        let e = cli.experiment;
        let refuse = |flag: &str, allowed: &[ExperimentId]| -> Result<(), CliError> {
            if allowed.contains(&e) {
                Ok(())
            } else {
                Err(config(format!("{flag} is not used by {}", e.name())))
            }
        };
        if cli.gate.is_some() {
            refuse("--gate", &[Fig1, Epower, Custom])?;
        }
        if cli.na.is_some() {
            refuse("--na", &[Fig3])?;
        }
        if cli.metric.is_some() {
            refuse("--metric", &[Fig4, Fig5])?;
        }
        if cli.xs.is_some() {
            refuse("--xs", &[Fig2])?;
        }

        let gate = cli
            .gate
            .as_deref()
            .map(|g| g.parse::<GateSpec>().map_err(|err| config(err.to_string())))
            .transpose()?;
        if e == Custom && gate.is_none() {
            return Err(config("custom needs --gate"));
        }
        let samples = cli.samples.unwrap_or(e.default_samples());
        if samples == 0 {
            return Err(config("--samples must be at least 1"));
        }
        let bins = cli.bins.unwrap_or(e.default_bins());
        if bins == 0 || cli.n4_bins == 0 {
            return Err(config("bin counts must be at least 1"));
        }
        if cli.workers == 0 {
            return Err(config("--workers must be at least 1"));
        }
        if cli.chunk_size == 0 {
            return Err(config("--chunk-size must be at least 1"));
        }
        if let Some(na) = cli.na {
            if !(2..=6).contains(&na) {
                return Err(config(format!("--na must be in 2..=6, got {na}")));
            }
        }
        let xs = cli.xs.unwrap_or_else(default_sweep_points);
        if let Some(x) = xs.iter().find(|&&x| !(x > -FRAC_PI_4 && x <= FRAC_PI_4 + 1e-12)) {
            return Err(config(format!("sweep point {x} outside (-π/4, π/4]")));
        }
        if xs.is_empty() {
            return Err(config("--xs needs at least one point"));
        }
        let metric = cli.metric.map(MetricKind::from).or(match e {
            Fig4 => Some(MetricKind::Bures),
            Fig5 => Some(MetricKind::HilbertSchmidt),
            _ => None,
        });
        Ok(Self {
            experiment: e,
            gate,
            samples,
            bins,
            seed: cli.seed,
            workers: cli.workers,
            chunk_size: cli.chunk_size,
            na: cli.na,
            metric,
            xs,
            n4_bins: cli.n4_bins,
            out: cli.out.unwrap_or_else(|| PathBuf::from(e.name())),
        })
    }

    fn plan(&self) -> SamplingPlan {
        SamplingPlan::new(self.samples, self.seed)
            .with_workers(self.workers)
            .with_chunk_size(self.chunk_size)
    }

    fn csv_meta(&self, gate: Option<&GateSpec>, bins: usize) -> CsvMeta {
        CsvMeta {
            experiment: self.experiment.name().to_string(),
            seed: self.seed,
            samples: self.samples,
            gate: gate.map_or_else(|| "none".to_string(), ToString::to_string),
            bins,
            curve: None,
        }
    }

    fn manifest(&self, gate: Option<&GateSpec>, bins: usize) -> Manifest {
        Manifest {
            experiment: self.experiment.name().to_string(),
            seed: self.seed,
            samples: self.samples,
            workers: self.workers,
            chunk_size: self.chunk_size,
            bins,
            gate: gate.map(ToString::to_string),
            wall_time_seconds: 0.0,
            scalars: BTreeMap::new(),
            curves: Vec::new(),
            sweeps: BTreeMap::new(),
        }
    }
}

/// Gates of the five fig1 curves, plus the identity.
pub fn fig1_gates() -> Vec<(&'static str, GateSpec)> {
    let p4 = FRAC_PI_4;
    let p8 = p4 / 2.0;
    let p16 = p8 / 2.0;
    vec![
        ("curve1", GateSpec::Canonical([p4, p8, 0.0])),
        ("curve2", GateSpec::Canonical([p4, p8, p16])),
        ("curve3", GateSpec::Canonical([p4, 0.0, 0.0])),
        ("curve4", GateSpec::Canonical([p4, p8, -p8])),
        ("curve5", GateSpec::Canonical([p8, p8, p8])),
        ("identity", GateSpec::identity()),
    ]
}

/// Files written by a run.
#[derive(Debug, Clone, Default)]
pub struct Outputs {
    pub csv: Vec<PathBuf>,
    pub json: PathBuf,
}

struct Writer<'a> {
    cfg: &'a RunConfig,
    manifest: Manifest,
    outputs: Outputs,
}

impl Writer<'_> {
    /// Adds a report as a curve: its histogram and companions each get a CSV.
    fn curve(&mut self, label: &str, report: &ExperimentReport, gate: Option<&GateSpec>) -> Result<(), CliError> {
        let bins = report.histogram.spec().n_bins();
        let mut meta = self.cfg.csv_meta(gate, bins);
        meta.curve = Some(label.to_string());
        let path = curve_path(&self.cfg.out, label);
        write_csv(&report.histogram, &meta, &path)?;
        self.manifest.curves.push(CurveEntry::new(label, &path, bins, report.scalars.clone()));
        self.outputs.csv.push(path);
        for c in &report.companions {
            let sub = if label == "all" {
                c.label.clone()
            } else {
                format!("{label}_{}", c.label)
            };
            meta.curve = Some(sub.clone());
            let path = curve_path(&self.cfg.out, &sub);
            write_csv(&c.histogram, &meta, &path)?;
            self.manifest.curves.push(CurveEntry::new(&sub, &path, bins, BTreeMap::new()));
            self.outputs.csv.push(path);
        }
        Ok(())
    }

    /// Writes a single-histogram report to `<out>.csv`.
    fn single(&mut self, report: &ExperimentReport, gate: Option<&GateSpec>) -> Result<(), CliError> {
        let bins = report.histogram.spec().n_bins();
        let path = self.cfg.out.with_extension_appended("csv");
        write_csv(&report.histogram, &self.cfg.csv_meta(gate, bins), &path)?;
        self.manifest.scalars.extend(report.scalars.clone());
        self.outputs.csv.push(path);
        Ok(())
    }

    fn finish(mut self, started: std::time::Instant) -> Result<Outputs, CliError> {
        self.manifest.wall_time_seconds = started.elapsed().as_secs_f64();
        let path = self.cfg.out.with_extension_appended("json");
        write_json(&self.manifest, &path)?;
        self.outputs.json = path;
        Ok(self.outputs)
    }
}

trait AppendExtension {
    fn with_extension_appended(&self, ext: &str) -> PathBuf;
}

impl AppendExtension for PathBuf {
    fn with_extension_appended(&self, ext: &str) -> PathBuf {
        let mut s = self.clone().into_os_string();
        s.push(".");
        s.push(ext);
        PathBuf::from(s)
    }
}

/// Runs the experiment described by `cfg` and writes its outputs.
pub fn run(cfg: &RunConfig) -> Result<Outputs, CliError> {
    use ExperimentId::*;
    let started = std::time::Instant::now();
    let plan = cfg.plan();
    let bins = cfg.bins;
    let delta = BinSpec::delta_e(bins)?;
    let mut w = Writer {
        cfg,
        manifest: cfg.manifest(cfg.gate.as_ref(), bins),
        outputs: Outputs::default(),
    };

    match cfg.experiment {
        Fig1 => match &cfg.gate {
            Some(g) => w.single(&delta_e_distribution(g, delta, &plan)?, Some(g))?,
            None => {
                for (label, g) in fig1_gates() {
                    let r = delta_e_distribution(&g, delta, &plan)?;
                    w.curve(label, &r, Some(&g))?;
                }
            }
        },
        Fig2 => {
            for base in [SweepBase::Cnot, SweepBase::Pi8] {
                let reports = perturbation_sweep(base, &cfg.xs, BinSpec::unit(bins)?, &plan)?;
                let points: Vec<SweepPoint> = reports.iter().map(SweepPoint::from_report).collect();
                let path = curve_path(&cfg.out, base.name());
                output::write_sweep_csv(&points, &cfg.csv_meta(None, bins), base.name(), &path)?;
                w.outputs.csv.push(path);
                w.manifest.sweeps.insert(base.name().to_string(), points);
            }
        }
        Fig3 => {
            let dims: Vec<usize> = cfg.na.map_or_else(|| (2..=6).collect(), |n| vec![n]);
            let mut widths = Vec::new();
            for &na in &dims {
                let r = random_pair_distribution(na, delta, &plan)?;
                widths.push(r.scalar("width").expect("width is always reported"));
                w.curve(&format!("na{na}"), &r, None)?;
            }
            if dims.len() >= 3 {
                let ns: Vec<f64> = dims.iter().map(|&n| n as f64).collect();
                let fit = power_law_fit(&ns, &widths)?;
                w.manifest.scalars.insert("alpha".into(), fit.alpha);
                w.manifest.scalars.insert("prefactor".into(), fit.prefactor);
                w.manifest.scalars.insert("r_squared".into(), fit.r_squared);
            }
        }
        Fig4 | Fig5 => {
            let metric = cfg.metric.expect("set for fig4 and fig5");
            let r = cnot_mixed_distance(metric, BinSpec::distance(bins)?, &plan)?;
            w.curve("all", &r, None)?;
            w.manifest.scalars.extend(r.scalars.clone());
            w.manifest.scalars.insert(
                "metric_is_bures".into(),
                if metric == MetricKind::Bures { 1.0 } else { 0.0 },
            );
        }
        Fig6 => w.single(&dw_distribution(BinSpec::unit(bins)?, &plan)?, None)?,
        Fig7a => {
            w.curve("n3", &multiqubit_delta_e(3, delta, &plan)?, None)?;
            w.curve("n2", &multiqubit_delta_e(2, delta, &plan)?, None)?;
        }
        Fig7b => {
            let mut widths = BTreeMap::new();
            for (n, spec) in [(2, delta), (3, delta), (4, BinSpec::delta_e(cfg.n4_bins)?)] {
                let r = multiqubit_delta_e(n, spec, &plan)?;
                widths.insert(format!("width_n{n}"), r.scalar("width").expect("width is always reported"));
                let mut only_ab = r.clone();
                only_ab.companions.clear();
                w.curve(&format!("n{n}"), &only_ab, None)?;
            }
            w.manifest.scalars.extend(widths);
        }
        Epower => {
            let g = cfg.gate.clone().unwrap_or(GateSpec::Cnot);
            w.manifest.gate = Some(g.to_string());
            w.single(&entangling_power(&g, BinSpec::unit(bins)?, &plan)?, Some(&g))?;
        }
        Custom => {
            let g = cfg.gate.as_ref().expect("validated");
            w.single(&delta_e_distribution(g, delta, &plan)?, Some(g))?;
            let ep = entangling_power(g, BinSpec::unit(100)?, &plan)?;
            w.manifest.scalars.extend(ep.scalars);
        }
    }
    w.finish(started)
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    let result = RunConfig::from_cli(cli).and_then(|cfg| run(&cfg));
    match result {
        Ok(out) => {
            for p in out.csv.iter().chain(std::iter::once(&out.json)) {
                println!("wrote {}", p.display());
            }
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
