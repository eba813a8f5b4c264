//! Pure-state experiments on two parties: gate-induced `ΔE`, random pairs,
//! entangling power and its perturbation sweep.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;
use std::str::FromStr;

use super::{insert_mean, insert_width, map_chunks, meta, ExperimentReport, SamplingPlan, Tally, Timer};
use crate::error::{Error, Result};
use crate::gates::{canonical_gate, GateSpec};
use crate::histogram::{BinSpec, Histogram};
use crate::linalg::FactoredDims;
use crate::measures::pure_state_entanglement;
use crate::random::{haar_product_pure, haar_pure_state_factored};

/// `P(ΔE)` for `ΔE = E(Uψ) - E(ψ)` over Haar two-qubit states.
pub fn delta_e_distribution(
    gate: &GateSpec,
    bins: BinSpec,
    plan: &SamplingPlan,
) -> Result<ExperimentReport> {
    let timer = Timer::start();
    let u = gate.matrix();
    let dims = FactoredDims::qubits(2);
    let meta = meta("delta_e", plan).with_param("gate", gate);
    let parts = map_chunks(plan, |rng, n| {
        let mut t = Tally::new(vec![Histogram::new(bins, meta.clone())], 1);
        for _ in 0..n {
            let psi = haar_pure_state_factored(&dims, rng);
            let before = pure_state_entanglement(&psi)?.value();
            let after = pure_state_entanglement(&psi.evolve(&u)?)?.value();
            let d = after - before;
            t.hists[0].add(d)?;
            t.accs[0].push(d);
        }
        Ok(t)
    })?;
    let Tally { mut hists, accs } = Tally::fold(parts)?;
    let histogram = hists.remove(0);

    let mut scalars = BTreeMap::new();
    insert_mean(&mut scalars, "mean_delta_e", &accs[0]);
    scalars.insert("max_abs_delta_e".into(), accs[0].max().abs().max(accs[0].min().abs()));
    scalars.insert("bin_width".into(), histogram.bin_width());
    insert_width(&mut scalars, "width", &histogram)?;
    Ok(ExperimentReport {
        experiment: "delta_e".into(),
        histogram,
        companions: Vec::new(),
        scalars,
        runtime_seconds: timer.seconds(),
    })
}

/// `P(ΔE)` for `ΔE = E(ψ₂) - E(ψ₁)` with two independent Haar states of an
/// `n_a × n_a` system and `E` the entropy normalized by `log N_A`.
pub fn random_pair_distribution(
    n_a: usize,
    bins: BinSpec,
    plan: &SamplingPlan,
) -> Result<ExperimentReport> {
    if !(2..=6).contains(&n_a) {
        return Err(Error::InvalidArgument(format!("n_a must be in 2..=6, got {n_a}")));
    }
    let timer = Timer::start();
    let dims = FactoredDims::bipartite(n_a, n_a);
    let meta = meta("random_pair", plan).with_param("n_a", n_a);
    let parts = map_chunks(plan, |rng, n| {
        let mut t = Tally::new(vec![Histogram::new(bins, meta.clone())], 2);
        for _ in 0..n {
            let e1 = pure_state_entanglement(&haar_pure_state_factored(&dims, rng))?.value();
            let e2 = pure_state_entanglement(&haar_pure_state_factored(&dims, rng))?.value();
            t.hists[0].add(e2 - e1)?;
            t.accs[0].push(e2 - e1);
            t.accs[1].push(e1);
            t.accs[1].push(e2);
        }
        Ok(t)
    })?;
    let Tally { mut hists, accs } = Tally::fold(parts)?;
    let histogram = hists.remove(0);

    let mut scalars = BTreeMap::new();
    insert_mean(&mut scalars, "mean_delta_e", &accs[0]);
    insert_mean(&mut scalars, "mean_entanglement", &accs[1]);
    scalars.insert("n_a".into(), n_a as f64);
    scalars.insert("bin_width".into(), histogram.bin_width());
    insert_width(&mut scalars, "width", &histogram)?;
    Ok(ExperimentReport {
        experiment: "random_pair".into(),
        histogram,
        companions: Vec::new(),
        scalars,
        runtime_seconds: timer.seconds(),
    })
}

/// `ε_P`: mean entanglement of `U|a>⊗|b>` over independent Haar qubits
/// `|a>`, `|b>`. The histogram is the distribution of that entanglement.
pub fn entangling_power(
    gate: &GateSpec,
    bins: BinSpec,
    plan: &SamplingPlan,
) -> Result<ExperimentReport> {
    let timer = Timer::start();
    let u = gate.matrix();
    let meta = meta("entangling_power", plan).with_param("gate", gate);
    let parts = map_chunks(plan, |rng, n| {
        let mut t = Tally::new(vec![Histogram::new(bins, meta.clone())], 1);
        for _ in 0..n {
            let psi = haar_product_pure(2, 2, rng);
            let e = pure_state_entanglement(&psi.evolve(&u)?)?.value();
            t.hists[0].add(e)?;
            t.accs[0].push(e);
        }
        Ok(t)
    })?;
    let Tally { mut hists, accs } = Tally::fold(parts)?;
    let mut scalars = BTreeMap::new();
    insert_mean(&mut scalars, "epsilon_p", &accs[0]);
    Ok(ExperimentReport {
        experiment: "entangling_power".into(),
        histogram: hists.remove(0),
        companions: Vec::new(),
        scalars,
        runtime_seconds: timer.seconds(),
    })
}

/// Unperturbed gate of a sweep: `(π/4, 0, 0)` (locally equivalent to CNOT)
/// or `(π/8, 0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepBase {
    Cnot,
    Pi8,
}

impl SweepBase {
    pub fn lambda1(self) -> f64 {
        match self {
            Self::Cnot => FRAC_PI_4,
            Self::Pi8 => FRAC_PI_4 / 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Cnot => "cnot",
            Self::Pi8 => "pi8",
        }
    }
}

impl FromStr for SweepBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cnot" => Ok(Self::Cnot),
            "pi8" => Ok(Self::Pi8),
            other => Err(Error::InvalidArgument(format!("unknown sweep base `{other}`"))),
        }
    }
}

/// `ε_P(λ₁, x, x)` for each `x`, one report per point.
///
/// Every product state is pushed through the base gate and through all the
/// perturbed gates, so `gain = ε_P(x) - ε_P(base)` is estimated from paired
/// samples and its standard error is that of the paired difference.
pub fn perturbation_sweep(
    base: SweepBase,
    xs: &[f64],
    bins: BinSpec,
    plan: &SamplingPlan,
) -> Result<Vec<ExperimentReport>> {
    if let Some(&x) = xs
        .iter()
        .find(|&&x| !(x > -FRAC_PI_4 && x <= FRAC_PI_4 + 1e-12))
    {
        return Err(Error::InvalidArgument(format!("sweep point {x} outside (-π/4, π/4]")));
    }
    if xs.is_empty() {
        return Err(Error::InvalidArgument("sweep needs at least one point".into()));
    }
    let timer = Timer::start();
    let l1 = base.lambda1();
    let u0 = canonical_gate(l1, 0.0, 0.0);
    let us: Vec<_> = xs.iter().map(|&x| canonical_gate(l1, x, x)).collect();
    let metas: Vec<_> = xs
        .iter()
        .map(|&x| {
            meta("perturbation_sweep", plan)
                .with_param("base", base.name())
                .with_param("x", x)
        })
        .collect();

    // accs: [base, (value, gain) per x]
    let parts = map_chunks(plan, |rng, n| {
        let hists = metas.iter().map(|m| Histogram::new(bins, m.clone())).collect();
        let mut t = Tally::new(hists, 1 + 2 * xs.len());
        for _ in 0..n {
            let psi = haar_product_pure(2, 2, rng);
            let e0 = pure_state_entanglement(&psi.evolve(&u0)?)?.value();
            t.accs[0].push(e0);
            for (k, u) in us.iter().enumerate() {
                let e = pure_state_entanglement(&psi.evolve(u)?)?.value();
                t.hists[k].add(e)?;
                t.accs[1 + 2 * k].push(e);
                t.accs[2 + 2 * k].push(e - e0);
            }
        }
        Ok(t)
    })?;
    let Tally { hists, accs } = Tally::fold(parts)?;
    let runtime_seconds = timer.seconds();

    Ok(hists
        .into_iter()
        .enumerate()
        .map(|(k, histogram)| {
            let mut scalars = BTreeMap::new();
            insert_mean(&mut scalars, "epsilon_p", &accs[1 + 2 * k]);
            insert_mean(&mut scalars, "epsilon_p_base", &accs[0]);
            insert_mean(&mut scalars, "gain", &accs[2 + 2 * k]);
            scalars.insert("x".into(), xs[k]);
            scalars.insert("lambda1".into(), l1);
            ExperimentReport {
                experiment: "perturbation_sweep".into(),
                histogram,
                companions: Vec::new(),
                scalars,
                runtime_seconds,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::swap;
    use crate::histogram::width_half_height;

    #[test]
    fn identity_gives_a_delta() {
        let bins = BinSpec::delta_e(201).unwrap();
        let r = delta_e_distribution(&GateSpec::identity(), bins, &SamplingPlan::new(500, 1)).unwrap();
        assert_eq!(r.histogram.counts()[100], 500);
        assert_eq!(width_half_height(&r.histogram).unwrap().width, bins.bin_width());
        assert_eq!(r.scalar("width"), Some(bins.bin_width()));
    }

    #[test]
    fn trivial_entangling_powers() {
        let bins = BinSpec::unit(100).unwrap();
        let plan = SamplingPlan::new(2000, 3);
        let id = entangling_power(&GateSpec::identity(), bins, &plan).unwrap();
        assert_eq!(id.scalar("epsilon_p"), Some(0.0));
        let sw = entangling_power(&GateSpec::explicit(swap()).unwrap(), bins, &plan).unwrap();
        assert_eq!(sw.scalar("epsilon_p"), Some(0.0));
        assert_eq!(sw.scalar("epsilon_p_stderr"), Some(0.0));
    }

    #[test]
    fn sweep_rejects_points_outside_domain() {
        let bins = BinSpec::unit(10).unwrap();
        let plan = SamplingPlan::new(10, 0);
        assert!(perturbation_sweep(SweepBase::Cnot, &[1.0], bins, &plan).is_err());
        assert!(perturbation_sweep(SweepBase::Cnot, &[-FRAC_PI_4], bins, &plan).is_err());
        assert!(perturbation_sweep(SweepBase::Cnot, &[], bins, &plan).is_err());
        assert!(perturbation_sweep(SweepBase::Pi8, &[FRAC_PI_4], bins, &plan).is_ok());
    }

    #[test]
    fn sweep_at_zero_has_zero_gain() {
        let bins = BinSpec::unit(10).unwrap();
        let r = perturbation_sweep(SweepBase::Cnot, &[0.0], bins, &SamplingPlan::new(300, 2)).unwrap();
        assert_eq!(r[0].scalar("gain"), Some(0.0));
        assert_eq!(r[0].scalar("epsilon_p"), r[0].scalar("epsilon_p_base"));
    }

    #[test]
    fn random_pair_rejects_bad_dimension() {
        let bins = BinSpec::delta_e(201).unwrap();
        assert!(random_pair_distribution(1, bins, &SamplingPlan::new(10, 0)).is_err());
        assert!(random_pair_distribution(7, bins, &SamplingPlan::new(10, 0)).is_err());
    }

    #[test]
    fn delta_e_rejects_empty_plan() {
        let bins = BinSpec::delta_e(201).unwrap();
        assert!(delta_e_distribution(&GateSpec::Cnot, bins, &SamplingPlan::new(0, 0)).is_err());
    }
}
