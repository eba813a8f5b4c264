//! Fixed-bin histograms, their density view, half-height widths and a
//! two-sample comparison.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerance;

/// `n_bins` equal bins on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinSpec {
    lo: f64,
    hi: f64,
    n_bins: usize,
}

impl BinSpec {
    pub fn new(lo: f64, hi: f64, n_bins: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidArgument(format!("bad bin range [{lo}, {hi}]")));
        }
        if n_bins == 0 {
            return Err(Error::InvalidArgument("histogram needs at least one bin".into()));
        }
        Ok(Self { lo, hi, n_bins })
    }

    /// `n_bins` bins on `[-1, 1]`; 201 by default.
    pub fn delta_e(n_bins: usize) -> Result<Self> {
        Self::new(-1.0, 1.0, n_bins)
    }

    /// `n_bins` bins on `[0, √2]`; 200 by default.
    pub fn distance(n_bins: usize) -> Result<Self> {
        Self::new(0.0, std::f64::consts::SQRT_2, n_bins)
    }

    /// `n_bins` bins on `[0, 1]`; 100 by default.
    pub fn unit(n_bins: usize) -> Result<Self> {
        Self::new(0.0, 1.0, n_bins)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn n_bins(&self) -> usize {
        self.n_bins
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.n_bins as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        self.lo + (i as f64 + 0.5) * self.bin_width()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_bins).map(|i| self.center(i)).collect()
    }

    /// Bin of `x`. Values within `BIN_EDGE` outside the range land in the
    /// edge bins; the upper edge belongs to the last bin.
    pub fn index_of(&self, x: f64) -> Result<usize> {
        let slack = tolerance::BIN_EDGE;
        if x.is_nan() || x < self.lo - slack || x > self.hi + slack {
            return Err(Error::BinOverflow {
                value: x,
                lo: self.lo,
                hi: self.hi,
            });
        }
        let t = ((x - self.lo) / self.bin_width()).floor();
        Ok((t.max(0.0) as usize).min(self.n_bins - 1))
    }
}

/// Where a histogram came from.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct HistogramMeta {
    pub experiment: String,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
}

impl HistogramMeta {
    pub fn new(experiment: impl Into<String>, seed: u64) -> Self {
        Self {
            experiment: experiment.into(),
            seed,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    spec: BinSpec,
    counts: Vec<u64>,
    total: u64,
    meta: HistogramMeta,
}

impl Histogram {
    pub fn new(spec: BinSpec, meta: HistogramMeta) -> Self {
        Self {
            spec,
            counts: vec![0; spec.n_bins],
            total: 0,
            meta,
        }
    }

    /// Counts one sample. Out-of-range samples are errors and leave the
    /// histogram unchanged.
    pub fn add(&mut self, x: f64) -> Result<()> {
        let i = self.spec.index_of(x)?;
        self.counts[i] += 1;
        self.total += 1;
        Ok(())
    }

    /// Adds the counts of `other`, which must use the same bins.
    pub fn merge(&mut self, other: &Histogram) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::DimensionMismatch(format!(
                "cannot merge histograms with bins {:?} and {:?}",
                self.spec, other.spec
            )));
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        Ok(())
    }

    pub fn spec(&self) -> &BinSpec {
        &self.spec
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn meta(&self) -> &HistogramMeta {
        &self.meta
    }

    pub fn meta_mut(&mut self) -> &mut HistogramMeta {
        &mut self.meta
    }

    pub fn bin_width(&self) -> f64 {
        self.spec.bin_width()
    }

    pub fn centers(&self) -> Vec<f64> {
        self.spec.centers()
    }

    /// `count_i / (total Δ)`; all zeros for an empty histogram.
    pub fn density(&self) -> Vec<f64> {
        if self.total == 0 {
            return vec![0.0; self.counts.len()];
        }
        let norm = self.total as f64 * self.bin_width();
        self.counts.iter().map(|&c| c as f64 / norm).collect()
    }

    /// Per-bin binomial standard error of the density.
    pub fn density_stderr(&self) -> Vec<f64> {
        if self.total == 0 {
            return vec![0.0; self.counts.len()];
        }
        let n = self.total as f64;
        let dx = self.bin_width();
        self.counts
            .iter()
            .map(|&c| {
                let p = c as f64 / n;
                (p * (1.0 - p) / n).sqrt() / dx
            })
            .collect()
    }

    /// `Σ density_i Δ`: 1 for any non-empty histogram.
    pub fn integral(&self) -> f64 {
        let dx = self.bin_width();
        self.density().iter().map(|d| d * dx).sum()
    }

    /// Center of the highest bin.
    pub fn mode(&self) -> f64 {
        let (i, _) = self
            .counts
            .iter()
            .enumerate()
            .fold((0, 0), |best, (i, &c)| if c > best.1 { (i, c) } else { best });
        self.spec.center(i)
    }
}

/// Result of [`width_half_height`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WidthEstimate {
    /// `W_ΔE`, at least one bin wide.
    pub width: f64,
    /// `P(0)`, the density of the bin containing zero.
    pub reference_density: f64,
    pub global_max: f64,
    /// Outermost bin centers at or above `P(0)/2`.
    pub left: f64,
    pub right: f64,
}

impl WidthEstimate {
    /// True when the global maximum exceeds `P(0)` by more than 10%, i.e.
    /// the literal `P(0)` reading and a mode-based reading differ.
    pub fn reference_is_not_mode(&self) -> bool {
        self.global_max > 1.1 * self.reference_density
    }
}

/// Half-height width of a distribution centred on zero.
///
/// The reference height is the density `P(0)` of the bin containing zero.
/// Taking the outermost bin centers `c_L`, `c_R` whose density is at least
/// `P(0)/2`, the width is `(c_R - c_L) / 2`, floored at one bin width so a
/// delta distribution reports its resolution instead of zero.
pub fn width_half_height(h: &Histogram) -> Result<WidthEstimate> {
    let z = h.spec.index_of(0.0).map_err(|_| {
        Error::InvalidArgument("half-height width needs zero inside the bin range".into())
    })?;
    if h.counts[z] == 0 {
        return Err(Error::EmptyReference);
    }
    let density = h.density();
    let p0 = density[z];
    let half = p0 / 2.0;
    let above: Vec<usize> = (0..density.len()).filter(|&i| density[i] >= half).collect();
    let left = h.spec.center(above[0]);
    let right = h.spec.center(*above.last().expect("bin z qualifies"));
    let global_max = density.iter().copied().fold(0.0, f64::max);
    Ok(WidthEstimate {
        width: ((right - left) / 2.0).max(h.bin_width()),
        reference_density: p0,
        global_max,
        left,
        right,
    })
}

/// Sup-norm distance between two density estimates and the Monte Carlo
/// noise it should be compared with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramComparison {
    pub sup_difference: f64,
    /// `sqrt(se_a² + se_b²)` with `se` the largest per-bin standard error
    /// of each histogram.
    pub combined_stderr: f64,
}

impl HistogramComparison {
    /// `sup_difference < sigmas * combined_stderr`.
    pub fn agrees_within(&self, sigmas: f64) -> bool {
        self.sup_difference < sigmas * self.combined_stderr
    }
}

pub fn compare_histograms(a: &Histogram, b: &Histogram) -> Result<HistogramComparison> {
    if a.spec != b.spec {
        return Err(Error::DimensionMismatch(format!(
            "cannot compare histograms with bins {:?} and {:?}",
            a.spec, b.spec
        )));
    }
    let sup_difference = a
        .density()
        .iter()
        .zip(b.density())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let max_se = |h: &Histogram| h.density_stderr().into_iter().fold(0.0, f64::max);
    let combined_stderr = max_se(a).hypot(max_se(b));
    Ok(HistogramComparison {
        sup_difference,
        combined_stderr,
    })
}
