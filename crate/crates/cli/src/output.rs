use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use entangler::experiments::ExperimentReport;
use entangler::histogram::Histogram;
use serde::Serialize;

use crate::CliError;

/// Header lines of a histogram CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvMeta {
    pub experiment: String,
    pub seed: u64,
    pub samples: u64,
    pub gate: String,
    pub bins: usize,
    pub curve: Option<String>,
}

impl CsvMeta {
    fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "# experiment={}", self.experiment)?;
        writeln!(w, "# seed={}", self.seed)?;
        writeln!(w, "# samples={}", self.samples)?;
        writeln!(w, "# gate={}", self.gate)?;
        writeln!(w, "# bins={}", self.bins)?;
        if let Some(c) = &self.curve {
            writeln!(w, "# curve={c}")?;
        }
        Ok(())
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn create(path: &Path) -> Result<BufWriter<fs::File>, CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    Ok(BufWriter::new(fs::File::create(path).map_err(io_err(path))?))
}

/// Writes `bin_center,density`, one row per bin.
pub fn write_csv(hist: &Histogram, meta: &CsvMeta, path: &Path) -> Result<(), CliError> {
    let mut w = create(path)?;
    let body = |w: &mut BufWriter<fs::File>| -> std::io::Result<()> {
        meta.write_to(w)?;
        writeln!(w, "bin_center,density")?;
        for (x, d) in hist.centers().iter().zip(hist.density()) {
            writeln!(w, "{x:.16e},{d:.16e}")?;
        }
        w.flush()
    };
    body(&mut w).map_err(io_err(path))
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepPoint {
    pub x: f64,
    pub epsilon_p: f64,
    pub epsilon_p_stderr: f64,
    pub gain: f64,
    pub gain_stderr: f64,
}

impl SweepPoint {
    pub fn from_report(r: &ExperimentReport) -> Self {
        let s = |k: &str| r.scalar(k).expect("sweep scalar");
        Self {
            x: s("x"),
            epsilon_p: s("epsilon_p"),
            epsilon_p_stderr: s("epsilon_p_stderr"),
            gain: s("gain"),
            gain_stderr: s("gain_stderr"),
        }
    }
}

pub fn write_sweep_csv(points: &[SweepPoint], meta: &CsvMeta, base: &str, path: &Path) -> Result<(), CliError> {
    let mut w = create(path)?;
    let body = |w: &mut BufWriter<fs::File>| -> std::io::Result<()> {
        meta.write_to(w)?;
        writeln!(w, "# base={base}")?;
        writeln!(w, "x,epsilon_p,epsilon_p_stderr,gain,gain_stderr")?;
        for p in points {
            writeln!(
                w,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                p.x, p.epsilon_p, p.epsilon_p_stderr, p.gain, p.gain_stderr
            )?;
        }
        w.flush()
    };
    body(&mut w).map_err(io_err(path))
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveEntry {
    pub label: String,
    pub path: String,
    pub bins: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub scalars: BTreeMap<String, f64>,
}

impl CurveEntry {
    pub fn new(label: &str, path: &Path, bins: usize, scalars: BTreeMap<String, f64>) -> Self {
        Self {
            label: label.to_string(),
            path: path.file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned()),
            bins,
            scalars,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub experiment: String,
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
    pub chunk_size: u64,
    pub bins: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate: Option<String>,
    pub wall_time_seconds: f64,
    pub scalars: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub curves: Vec<CurveEntry>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub sweeps: BTreeMap<String, Vec<SweepPoint>>,
}

pub fn write_json(manifest: &Manifest, path: &Path) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, manifest)
        .map_err(std::io::Error::from)
        .and_then(|()| writeln!(w))
        .and_then(|()| w.flush())
        .map_err(io_err(path))
}

/// `<out>_<label>.csv`
pub fn curve_path(out: &Path, label: &str) -> PathBuf {
    let mut s = out.as_os_str().to_os_string();
    s.push(format!("_{label}.csv"));
    PathBuf::from(s)
}
