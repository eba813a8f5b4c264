//! CNOT on qubits A and B of a Haar `n`-qubit state, `n ∈ {2, 3, 4}`.

use std::collections::BTreeMap;

use super::{insert_mean, insert_width, map_chunks, meta, Curve, ExperimentReport, SamplingPlan, Tally, Timer};
use crate::error::{Error, Result};
use crate::gates::{cnot, embed_gate};
use crate::histogram::{compare_histograms, BinSpec, Histogram};
use crate::linalg::FactoredDims;
use crate::measures::entanglement_of_formation;
use crate::random::haar_pure_state_factored;
use crate::state::PureState;

fn pair_eof(psi: &PureState, pair: [usize; 2]) -> Result<f64> {
    Ok(entanglement_of_formation(&psi.reduced(&pair)?)?.value())
}

/// `ΔE` of pair AB under `CNOT_AB ⊗ I`, measured by the entanglement of
/// formation of `ρ_AB`.
///
/// For `n = 3` the report also carries the companions `ac` and `bc` (the
/// same step seen by the spectator pairs) and `random` (AB entanglement of
/// two independent Haar states, no gate).
pub fn multiqubit_delta_e(n: usize, bins: BinSpec, plan: &SamplingPlan) -> Result<ExperimentReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("n must be 2, 3 or 4, got {n}")));
    }
    let timer = Timer::start();
    let dims = FactoredDims::qubits(n);
    let u = embed_gate(&cnot(), (0, 1), n)?;
    let labels: &[&str] = if n == 3 { &["ab", "ac", "bc", "random"] } else { &["ab"] };
    let metas: Vec<_> = labels
        .iter()
        .map(|l| meta("multiqubit_delta_e", plan).with_param("n", n).with_param("pair", l))
        .collect();

    let parts = map_chunks(plan, |rng, count| {
        let hists = metas.iter().map(|m| Histogram::new(bins, m.clone())).collect();
        let mut t = Tally::new(hists, labels.len());
        for _ in 0..count {
            let psi = haar_pure_state_factored(&dims, rng);
            let out = psi.evolve(&u)?;
            let mut deltas = vec![pair_eof(&out, [0, 1])? - pair_eof(&psi, [0, 1])?];
            if n == 3 {
                deltas.push(pair_eof(&out, [0, 2])? - pair_eof(&psi, [0, 2])?);
                deltas.push(pair_eof(&out, [1, 2])? - pair_eof(&psi, [1, 2])?);
                let other = haar_pure_state_factored(&dims, rng);
                deltas.push(pair_eof(&other, [0, 1])? - pair_eof(&psi, [0, 1])?);
            }
            for (k, d) in deltas.into_iter().enumerate() {
                t.hists[k].add(d)?;
                t.accs[k].push(d);
            }
        }
        Ok(t)
    })?;
    let Tally { hists, accs } = Tally::fold(parts)?;

    let mut scalars = BTreeMap::new();
    scalars.insert("n".into(), n as f64);
    scalars.insert("bin_width".into(), bins.bin_width());
    for (k, label) in labels.iter().enumerate() {
        let suffix = if k == 0 { String::new() } else { format!("_{label}") };
        insert_mean(&mut scalars, &format!("mean_delta_e{suffix}"), &accs[k]);
        insert_width(&mut scalars, &format!("width{suffix}"), &hists[k])?;
    }
    if n == 3 {
        let c = compare_histograms(&hists[1], &hists[2])?;
        scalars.insert("ac_bc_sup_difference".into(), c.sup_difference);
        scalars.insert("ac_bc_combined_stderr".into(), c.combined_stderr);
    }

    let mut hists = hists.into_iter();
    let histogram = hists.next().expect("ab histogram");
    let companions = labels[1..]
        .iter()
        .zip(hists)
        .map(|(l, h)| Curve {
            label: l.to_string(),
            histogram: h,
        })
        .collect();
    Ok(ExperimentReport {
        experiment: "multiqubit_delta_e".into(),
        histogram,
        companions,
        scalars,
        runtime_seconds: timer.seconds(),
    })
}
