use std::collections::BTreeMap;

use super::{insert_mean, map_chunks, meta, ExperimentReport, SamplingPlan, Tally, Timer};
use crate::error::{Error, Result};
use crate::histogram::{BinSpec, Histogram};
use crate::linalg::FactoredDims;
use crate::measures::CkwTerms;
use crate::random::haar_pure_state_factored;
use crate::tolerance;

/// Distribution of the CKW residual `d_W` over Haar three-qubit states.
///
/// Raw residuals outside `[-1e-9, 1 + 1e-9]` abort the run; the rest are
/// clamped into `[0, 1]` before binning.
pub fn dw_distribution(bins: BinSpec, plan: &SamplingPlan) -> Result<ExperimentReport> {
    let timer = Timer::start();
    let dims = FactoredDims::qubits(3);
    let meta = meta("dw_distribution", plan);
    let parts = map_chunks(plan, |rng, n| {
        let mut t = Tally::new(vec![Histogram::new(bins, meta.clone())], 2);
        for _ in 0..n {
            let psi = haar_pure_state_factored(&dims, rng);
            let raw = CkwTerms::of(&psi)?.residual();
            let slack = tolerance::RESIDUAL_RANGE;
            if !(-slack..=1.0 + slack).contains(&raw) {
                return Err(Error::InvariantViolation(format!(
                    "CKW residual {raw} outside [0, 1]"
                )));
            }
            let dw = raw.clamp(0.0, 1.0);
            t.hists[0].add(dw)?;
            t.accs[0].push(dw);
            t.accs[1].push(raw);
        }
        Ok(t)
    })?;
    let Tally { mut hists, accs } = Tally::fold(parts)?;
    let histogram = hists.remove(0);

    let mut scalars = BTreeMap::new();
    insert_mean(&mut scalars, "mean_dw", &accs[0]);
    scalars.insert("mode_dw".into(), histogram.mode());
    scalars.insert("min_dw_raw".into(), accs[1].min());
    scalars.insert("max_dw_raw".into(), accs[1].max());
    Ok(ExperimentReport {
        experiment: "dw_distribution".into(),
        histogram,
        companions: Vec::new(),
        scalars,
        runtime_seconds: timer.seconds(),
    })
}
