//! Empirical probability measures on the circle, stored as sorted samples:
//! arc masses, supports at a resolution, quantiles and a circle-adapted
//! Kolmogorov distance.

use serde::Serialize;

use crate::circle::{Arc, CirclePoint};
use crate::error::{Error, Result};
use crate::num::Real;

/// A probability measure given by its (multiset of) samples, kept sorted.
#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalMeasure<R: Real> {
    samples: Vec<R>,
}

impl<R: Real> EmpiricalMeasure<R> {
    pub fn from_points(points: impl IntoIterator<Item = CirclePoint<R>>) -> Result<Self> {
        let mut samples: Vec<R> = points.into_iter().map(|p| p.value()).collect();
        if samples.is_empty() {
            return Err(Error::EmptySampleSet);
        }
        samples.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite samples"));
        Ok(EmpiricalMeasure { samples })
    }

    /// Pools several measures into one (sorted merge).
    pub fn pooled<'a>(parts: impl IntoIterator<Item = &'a EmpiricalMeasure<R>>) -> Result<Self> {
        let mut samples = Vec::new();
        for m in parts {
            samples.extend_from_slice(&m.samples);
        }
        if samples.is_empty() {
            return Err(Error::EmptySampleSet);
        }
        samples.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite samples"));
        Ok(EmpiricalMeasure { samples })
    }

    pub fn count(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[R] {
        &self.samples
    }

    pub fn point(&self, rank: usize) -> CirclePoint<R> {
        CirclePoint::new(self.samples[rank])
    }

    /// The `q`-quantile sample (by rank), `q ∈ [0, 1]`.
    pub fn quantile(&self, q: R) -> CirclePoint<R> {
        let n = self.samples.len();
        let r = (q * R::count(n)).floor().to_usize().unwrap_or(0).min(n - 1);
        self.point(r)
    }

    /// Number of samples with value `<= x` (cut-at-origin CDF numerator).
    fn rank_at(&self, x: R) -> usize {
        self.samples.partition_point(|&s| s <= x)
    }

    fn count_closed(&self, lo: R, hi: R) -> usize {
        // closed [lo, hi] on the line, both in [0, 1)
        self.samples.partition_point(|&s| s <= hi)
            - self.samples.partition_point(|&s| s < lo)
    }

    /// Samples inside the closed arc.
    pub fn arc_count(&self, arc: &Arc<R>) -> usize {
        if arc.is_full() {
            return self.samples.len();
        }
        let tol = R::point_tol();
        let lo = arc.start().value() - tol;
        let hi = arc.start().value() + arc.length() + tol;
        if hi < R::one() {
            if lo >= R::zero() {
                self.count_closed(lo, hi)
            } else {
                self.count_closed(R::zero(), hi) + self.count_closed(lo + R::one(), R::one())
            }
        } else {
            self.count_closed(lo, R::one()) + self.count_closed(R::zero(), hi - R::one())
        }
    }

    /// Fraction of samples inside the closed arc.
    pub fn arc_mass(&self, arc: &Arc<R>) -> R {
        R::count(self.arc_count(arc)) / R::count(self.samples.len())
    }

    /// Indices of the grid cells (circle cut into `resolution` equal arcs)
    /// holding strictly more than `threshold` samples.
    pub fn support_cells(&self, resolution: usize, threshold: R) -> Vec<usize> {
        let mut counts = vec![0usize; resolution];
        let m = R::count(resolution);
        for &s in &self.samples {
            let mut j = (s * m).floor().to_usize().unwrap_or(0);
            if j >= resolution {
                j = resolution - 1;
            }
            counts[j] += 1;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| R::count(c) > threshold)
            .map(|(j, _)| j)
            .collect()
    }

    /// Support at a resolution: grid cells holding more than `threshold`
    /// samples, merged into maximal arcs.
    pub fn support_arcs(&self, resolution: usize, threshold: R) -> Vec<Arc<R>> {
        let cells = self.support_cells(resolution, threshold);
        merge_cells(&cells, resolution)
    }

    /// Circle-adapted Kolmogorov distance with the circle cut at 0: the
    /// sup-norm distance between the two cumulative functions.
    pub fn distance(&self, other: &EmpiricalMeasure<R>) -> R {
        let na = R::count(self.samples.len());
        let nb = R::count(other.samples.len());
        let mut best = R::zero();
        for &v in self.samples.iter().chain(other.samples.iter()) {
            let fa = R::count(self.rank_at(v)) / na;
            let fb = R::count(other.rank_at(v)) / nb;
            best = best.max((fa - fb).abs());
            // just before the jump
            let ga = R::count(self.samples.partition_point(|&s| s < v)) / na;
            let gb = R::count(other.samples.partition_point(|&s| s < v)) / nb;
            best = best.max((ga - gb).abs());
        }
        best
    }

    /// Rotation-minimizing variant: minimizes the cut-at-origin distance over
    /// cuts at every sample point. O(N²); diagnostics only.
    pub fn distance_min_rotation(&self, other: &EmpiricalMeasure<R>) -> R {
        let mut best = self.distance(other);
        for &cut in self.samples.iter().chain(other.samples.iter()) {
            let a = self.recut(cut);
            let b = other.recut(cut);
            best = best.min(a.distance(&b));
        }
        best
    }

    fn recut(&self, cut: R) -> EmpiricalMeasure<R> {
        let mut samples: Vec<R> = self
            .samples
            .iter()
            .map(|&s| crate::num::frac(s - cut))
            .collect();
        samples.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite samples"));
        EmpiricalMeasure { samples }
    }

    /// One sample per line under a `sample` header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("sample\n");
        for s in &self.samples {
            out.push_str(&format!("{s}\n"));
        }
        out
    }

    /// Parses the `sample`-per-line format written by [`Self::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line == "sample") {
                continue;
            }
            let v: f64 = line
                .parse()
                .map_err(|_| Error::MalformedCsv(line.to_string()))?;
            points.push(CirclePoint::new(R::of(v)));
        }
        Self::from_points(points)
    }
}

/// Merge sorted active cell indices into maximal circular arcs.
fn merge_cells<R: Real>(cells: &[usize], resolution: usize) -> Vec<Arc<R>> {
    if cells.is_empty() {
        return Vec::new();
    }
    if cells.len() == resolution {
        return vec![Arc::full()];
    }
    let m = R::count(resolution);
    let mut runs: Vec<(usize, usize)> = Vec::new(); // (first cell, cell count)
    for &j in cells {
        match runs.last_mut() {
            Some((start, len)) if *start + *len == j => *len += 1,
            _ => runs.push((j, 1)),
        }
    }
    // circular merge of the last run into the first
    if runs.len() > 1 {
        let (first_start, _) = runs[0];
        let (last_start, last_len) = *runs.last().unwrap();
        if first_start == 0 && last_start + last_len == resolution {
            let (_, first_len) = runs.remove(0);
            let last = runs.last_mut().unwrap();
            last.1 += first_len;
        }
    }
    runs.iter()
        .map(|&(start, len)| {
            Arc::new(
                CirclePoint::new(R::count(start) / m),
                R::count(len) / m,
            )
        })
        .collect()
}
