//! How far CNOT moves separable two-qubit mixed states.

use std::collections::BTreeMap;

use super::{insert_mean, map_chunks, meta, Curve, ExperimentReport, SamplingPlan, Tally, Timer};
use crate::error::{Error, Result};
use crate::gates::cnot;
use crate::histogram::{BinSpec, Histogram};
use crate::metrics::{bures_ball_radius, hs_ball_radius, separable_ball_contains, MetricKind};
use crate::random::separable_mixed_2q_counted;
use crate::tolerance;

const ALL: usize = 0;
const REGION_I: usize = 1;
const REGION_II: usize = 2;
const CANDIDATES: usize = 3;
const IN_BALL: usize = 4;
const DRIFT: usize = 5;
const MIN_PT: usize = 6;

/// Distribution of `d(ρ, CNOT ρ CNOT†)` over separable states drawn from the
/// product measure.
///
/// The primary histogram covers all of `S′`; companions `region_i`
/// (`Tr ρ² <= 1/3`) and `region_ii` split it, each normalized on its own.
/// Every sample is checked for purity conservation, and every region-I
/// sample for staying PPT after the gate; a violation aborts the run.
pub fn cnot_mixed_distance(
    metric: MetricKind,
    bins: BinSpec,
    plan: &SamplingPlan,
) -> Result<ExperimentReport> {
    let timer = Timer::start();
    let u = cnot();
    let base = meta("cnot_mixed_distance", plan).with_param("metric", metric.name());
    let metas = ["all", "region_i", "region_ii"].map(|r| base.clone().with_param("region", r));

    let parts = map_chunks(plan, |rng, n| {
        let hists = metas.iter().map(|m| Histogram::new(bins, m.clone())).collect();
        let mut t = Tally::new(hists, 7);
        for _ in 0..n {
            let (rho, candidates) = separable_mixed_2q_counted(rng);
            let out = rho.evolve(&u)?;
            let drift = (out.purity() - rho.purity()).abs();
            if drift > tolerance::PURITY_CONSERVATION {
                return Err(Error::InvariantViolation(format!(
                    "CNOT changed the purity by {drift:e}"
                )));
            }
            let in_ball = separable_ball_contains(&rho);
            let region = if in_ball {
                let min_pt = out.min_partial_transpose_eigenvalue()?;
                if min_pt < -tolerance::PPT {
                    return Err(Error::InvariantViolation(format!(
                        "state in the separable ball left it entangled (min PT eigenvalue {min_pt:e})"
                    )));
                }
                t.accs[MIN_PT].push(min_pt);
                REGION_I
            } else {
                REGION_II
            };
            let d = metric.distance(&rho, &out)?.value();
            t.hists[ALL].add(d)?;
            t.hists[region].add(d)?;
            t.accs[ALL].push(d);
            t.accs[region].push(d);
            t.accs[CANDIDATES].push(candidates as f64);
            t.accs[IN_BALL].push(if in_ball { 1.0 } else { 0.0 });
            t.accs[DRIFT].push(drift);
        }
        Ok(t)
    })?;
    let Tally { hists, accs } = Tally::fold(parts)?;

    let mut scalars = BTreeMap::new();
    insert_mean(&mut scalars, "mean_distance", &accs[ALL]);
    insert_mean(&mut scalars, "mean_distance_region_i", &accs[REGION_I]);
    insert_mean(&mut scalars, "mean_distance_region_ii", &accs[REGION_II]);
    insert_mean(&mut scalars, "fraction_region_i", &accs[IN_BALL]);
    insert_mean(&mut scalars, "candidates_per_sample", &accs[CANDIDATES]);
    scalars.insert("acceptance_rate".into(), 1.0 / accs[CANDIDATES].mean());
    scalars.insert("samples_region_i".into(), accs[REGION_I].count() as f64);
    scalars.insert("samples_region_ii".into(), accs[REGION_II].count() as f64);
    scalars.insert("max_purity_drift".into(), accs[DRIFT].max());
    if accs[MIN_PT].count() > 0 {
        scalars.insert("min_pt_eigenvalue_region_i".into(), accs[MIN_PT].min());
    }
    let radius = match metric {
        MetricKind::Bures => bures_ball_radius(),
        MetricKind::HilbertSchmidt => hs_ball_radius(),
    };
    scalars.insert("ball_radius".into(), radius);

    let mut hists = hists.into_iter();
    let histogram = hists.next().expect("full-set histogram");
    let companions = ["region_i", "region_ii"]
        .into_iter()
        .zip(hists)
        .map(|(l, h)| Curve {
            label: l.into(),
            histogram: h,
        })
        .collect();
    Ok(ExperimentReport {
        experiment: "cnot_mixed_distance".into(),
        histogram,
        companions,
        scalars,
        runtime_seconds: timer.seconds(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regions_partition_the_samples() {
        let bins = BinSpec::distance(200).unwrap();
        let r = cnot_mixed_distance(MetricKind::HilbertSchmidt, bins, &SamplingPlan::new(300, 8)).unwrap();
        let i = r.companion("region_i").unwrap();
        let ii = r.companion("region_ii").unwrap();
        assert_eq!(i.total() + ii.total(), 300);
        assert_eq!(r.histogram.total(), 300);
        assert!(r.scalar("max_purity_drift").unwrap() <= 1e-12);
    }
}
