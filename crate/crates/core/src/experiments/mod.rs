//! Monte Carlo experiments. Each one samples through a [`SamplingPlan`] and
//! returns an [`ExperimentReport`]: a primary histogram, optional companion
//! histograms, and named scalar estimates with their standard errors.

mod engine;
mod fit;
mod mixed;
mod multiqubit;
mod pure;
mod tripartite;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

pub use engine::{map_chunks, SamplingPlan, DEFAULT_CHUNK_SIZE};
pub use fit::{power_law_fit, PowerLawFit};
pub use mixed::cnot_mixed_distance;
pub use multiqubit::multiqubit_delta_e;
pub use pure::{
    delta_e_distribution, entangling_power, perturbation_sweep, random_pair_distribution,
    SweepBase,
};
pub use tripartite::dw_distribution;

use crate::error::Result;
use crate::gates::GateSpec;
use crate::histogram::{width_half_height, BinSpec, Histogram, HistogramMeta};
use crate::metrics::MetricKind;
use crate::stats::MeanAccumulator;

/// A labelled histogram accompanying the primary one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    pub label: String,
    pub histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub histogram: Histogram,
    pub companions: Vec<Curve>,
    pub scalars: BTreeMap<String, f64>,
    pub runtime_seconds: f64,
}

impl ExperimentReport {
    pub fn scalar(&self, name: &str) -> Option<f64> {
        self.scalars.get(name).copied()
    }

    pub fn companion(&self, label: &str) -> Option<&Histogram> {
        self.companions
            .iter()
            .find(|c| c.label == label)
            .map(|c| &c.histogram)
    }
}

/// Everything needed to run one histogram experiment.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentSpec {
    DeltaE { gate: GateSpec, bins: BinSpec },
    RandomPair { n_a: usize, bins: BinSpec },
    EntanglingPower { gate: GateSpec, bins: BinSpec },
    CnotMixedDistance { metric: MetricKind, bins: BinSpec },
    DwDistribution { bins: BinSpec },
    MultiqubitDeltaE { n: usize, bins: BinSpec },
}

/// Runs `spec` on `workers` threads. For a fixed `(seed, samples)` the
/// histogram counts do not depend on `workers`.
pub fn run_parallel(
    spec: &ExperimentSpec,
    samples: u64,
    workers: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    let plan = SamplingPlan::new(samples, seed).with_workers(workers);
    match spec {
        ExperimentSpec::DeltaE { gate, bins } => delta_e_distribution(gate, *bins, &plan),
        ExperimentSpec::RandomPair { n_a, bins } => random_pair_distribution(*n_a, *bins, &plan),
        ExperimentSpec::EntanglingPower { gate, bins } => entangling_power(gate, *bins, &plan),
        ExperimentSpec::CnotMixedDistance { metric, bins } => {
            cnot_mixed_distance(*metric, *bins, &plan)
        }
        ExperimentSpec::DwDistribution { bins } => dw_distribution(*bins, &plan),
        ExperimentSpec::MultiqubitDeltaE { n, bins } => multiqubit_delta_e(*n, *bins, &plan),
    }
}

/// Per-chunk histograms and accumulators, merged in chunk order.
#[derive(Debug, Clone)]
pub(crate) struct Tally {
    pub hists: Vec<Histogram>,
    pub accs: Vec<MeanAccumulator>,
}

impl Tally {
    pub fn new(hists: Vec<Histogram>, n_accs: usize) -> Self {
        Self {
            hists,
            accs: vec![MeanAccumulator::new(); n_accs],
        }
    }

    fn merge(&mut self, other: &Tally) -> Result<()> {
        for (a, b) in self.hists.iter_mut().zip(&other.hists) {
            a.merge(b)?;
        }
        for (a, b) in self.accs.iter_mut().zip(&other.accs) {
            a.merge(b);
        }
        Ok(())
    }

    pub fn fold(parts: Vec<Tally>) -> Result<Tally> {
        let mut it = parts.into_iter();
        let mut acc = it.next().expect("a validated plan has at least one chunk");
        for t in it {
            acc.merge(&t)?;
        }
        Ok(acc)
    }
}

pub(crate) fn meta(experiment: &str, plan: &SamplingPlan) -> HistogramMeta {
    HistogramMeta::new(experiment, plan.seed).with_param("samples", plan.samples)
}

/// Stores `mean` and `mean_stderr` style pairs.
pub(crate) fn insert_mean(scalars: &mut BTreeMap<String, f64>, name: &str, acc: &MeanAccumulator) {
    scalars.insert(name.to_string(), acc.mean());
    scalars.insert(format!("{name}_stderr"), acc.stderr());
}

/// Stores the half-height width of `h` under `name`, plus its reference
/// height and a 0/1 flag for a global maximum more than 10% above `P(0)`.
pub(crate) fn insert_width(
    scalars: &mut BTreeMap<String, f64>,
    name: &str,
    h: &Histogram,
) -> Result<()> {
    let w = width_half_height(h)?;
    scalars.insert(name.to_string(), w.width);
    scalars.insert(format!("{name}_reference_density"), w.reference_density);
    scalars.insert(format!("{name}_global_max_density"), w.global_max);
    scalars.insert(
        format!("{name}_reference_warning"),
        if w.reference_is_not_mode() { 1.0 } else { 0.0 },
    );
    Ok(())
}

pub(crate) struct Timer(Instant);

impl Timer {
    pub fn start() -> Self {
        Self(Instant::now())
    }

    pub fn seconds(&self) -> f64 {
        self.0.elapsed().as_secs_f64()
    }
}
