//! Monte-Carlo estimators for the central quantities of the random walk:
//! contraction exponent, stationary measures and their ergodic
//! decomposition, approximated Jacobian and entropy, and the
//! synchronization test.

use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{circle_dist, Arc, CirclePoint};
use crate::error::{Error, Result};
use crate::grid::GridFunction;
use crate::homeo::Homeo;
use crate::measure::EmpiricalMeasure;
use crate::num::Real;
use crate::walk::{uniform_at, GeneratorSet};

/// Substream bases keeping estimator draws disjoint from trajectory draws.
const BASIN_STREAM_BASE: u64 = 1 << 32;
const PROBE_STREAM_BASE: u64 = 1 << 33;
const LAMBDA_STREAM_BASE: u64 = 1 << 34;

fn median<R: Real>(values: &mut [R]) -> R {
    if values.is_empty() {
        return R::zero();
    }
    values.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite"));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / R::of(2.0)
    }
}

/// Ordinary least squares of `y` against the window index; returns
/// `(slope, r2)`.
fn ols<R: Real>(ys: &[R]) -> (R, R) {
    let n = ys.len();
    if n < 2 {
        return (R::zero(), R::zero());
    }
    let nf = R::count(n);
    let mean_x = (nf - R::one()) / R::of(2.0);
    let mean_y = ys.iter().fold(R::zero(), |a, &b| a + b) / nf;
    let mut sxx = R::zero();
    let mut sxy = R::zero();
    let mut syy = R::zero();
    for (k, &y) in ys.iter().enumerate() {
        let dx = R::count(k) - mean_x;
        let dy = y - mean_y;
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    let slope = sxy / sxx;
    let r2 = if syy > R::zero() {
        (sxy * sxy) / (sxx * syy)
    } else {
        R::one()
    };
    (slope, r2)
}

/// Parameters of the contraction-exponent estimator.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentParams<R: Real> {
    pub steps: usize,
    pub trajectories: usize,
    /// Decreasing probe scales in (0, 1/4).
    pub probe_scales: Vec<R>,
    /// Minimum regression-window length.
    pub min_window: usize,
    /// Base trajectory index of the substream.
    pub trajectory_offset: u64,
}

impl<R: Real> Default for ExponentParams<R> {
    fn default() -> Self {
        ExponentParams {
            steps: 2000,
            trajectories: 16,
            probe_scales: [0.2, 0.1, 0.05, 0.02, 0.01]
                .iter()
                .map(|&s| R::of(s))
                .collect(),
            min_window: 8,
            trajectory_offset: 0,
        }
    }
}

/// Estimated contraction exponent at a point.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentEstimate<R: Real> {
    pub point: CirclePoint<R>,
    /// Median per-step slope of `log dist` (natural log) across trajectories.
    pub slope: R,
    pub r2: R,
    pub steps_used: usize,
    pub trajectories: usize,
    /// Mean slope across trajectories (non-contracted ones contribute 0);
    /// the Monte-Carlo analogue of the exponent averaged over the noise.
    pub mean_slope: R,
    /// Probe scale the report is taken at.
    pub scale: Option<R>,
    /// Set when no probe scale produced a contracted window.
    pub no_contraction: bool,
}

struct WindowFit<R> {
    slope: R,
    r2: R,
    len: usize,
    adequate: bool,
}

fn fit_window<R: Real>(dists: &[R], scale: R, min_window: usize) -> WindowFit<R> {
    let n = dists.len() - 1;
    // a genuine drop below the scale, robust to representation noise
    let open = scale * R::of(0.999);
    let floor = R::dist_floor();
    let start = dists.iter().position(|&d| d < open);
    let Some(start) = start else {
        return WindowFit { slope: R::zero(), r2: R::zero(), len: 0, adequate: false };
    };
    let mut end = start;
    while end <= n && dists[end] >= floor && dists[end] > R::zero() {
        end += 1;
    }
    let floored = end <= n;
    let len = end - start;
    // when the floor is never reached the window must span half the walk,
    // which is the only regime where that demand is meaningful
    let adequate = len >= min_window && (floored || len >= n.div_ceil(2));
    if !adequate || len < 2 {
        return WindowFit { slope: R::zero(), r2: R::zero(), len, adequate: false };
    }
    let logs: Vec<R> = dists[start..end].iter().map(|d| d.ln()).collect();
    let (slope, r2) = ols(&logs);
    WindowFit { slope, r2, len, adequate: true }
}

/// Contraction exponent of the pair walk started at `x`: iterate the pair
/// `(x, x + s)` for each probe scale, regress `log dist` over the contracted
/// window, and report at the smallest scale with adequate coverage.
pub fn estimate_lambda_con<R: Real>(
    gs: &GeneratorSet<R>,
    x: CirclePoint<R>,
    params: &ExponentParams<R>,
) -> ExponentEstimate<R> {
    assert!(params.steps >= 100, "exponent estimation needs >= 100 steps");
    assert!(params.trajectories >= 1);
    let mut scales = params.probe_scales.clone();
    scales.sort_unstable_by(|a, b| b.partial_cmp(a).expect("finite"));
    let t_count = params.trajectories;

    // fits[scale][trajectory]
    let fits: Vec<Vec<WindowFit<R>>> = (0..t_count as u64)
        .into_par_iter()
        .map(|t| {
            let stream = gs.stream(params.trajectory_offset + t);
            scales
                .iter()
                .map(|&s| {
                    let pairs = stream.iterate_pair(x, x.offset(s), params.steps);
                    let dists: Vec<R> =
                        pairs.iter().map(|&(a, b)| circle_dist(a, b)).collect();
                    fit_window(&dists, s, params.min_window)
                })
                .collect()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            (0..scales.len()).map(|_| Vec::new()).collect::<Vec<_>>(),
            |mut acc, per_traj: Vec<WindowFit<R>>| {
                for (si, fit) in per_traj.into_iter().enumerate() {
                    acc[si].push(fit);
                }
                acc
            },
        );

    let majority = t_count / 2 + 1;
    let mut chosen: Option<usize> = None;
    for (si, per) in fits.iter().enumerate() {
        if per.iter().filter(|f| f.adequate).count() >= majority {
            chosen = Some(si); // keep scanning: later scales are smaller
        }
    }

    match chosen {
        None => ExponentEstimate {
            point: x,
            slope: R::zero(),
            r2: R::zero(),
            steps_used: 0,
            trajectories: t_count,
            mean_slope: R::zero(),
            scale: None,
            no_contraction: true,
        },
        Some(si) => {
            let per = &fits[si];
            let mut slopes: Vec<R> =
                per.iter().filter(|f| f.adequate).map(|f| f.slope).collect();
            let mut r2s: Vec<R> = per.iter().filter(|f| f.adequate).map(|f| f.r2).collect();
            let mut lens: Vec<R> = per
                .iter()
                .filter(|f| f.adequate)
                .map(|f| R::count(f.len))
                .collect();
            let mean_slope = per
                .iter()
                .map(|f| if f.adequate { f.slope } else { R::zero() })
                .fold(R::zero(), |a, b| a + b)
                / R::count(t_count);
            ExponentEstimate {
                point: x,
                slope: median(&mut slopes),
                r2: median(&mut r2s),
                steps_used: median(&mut lens).to_usize().unwrap_or(0),
                trajectories: t_count,
                mean_slope,
                scale: Some(scales[si]),
                no_contraction: false,
            }
        }
    }
}

/// Empirical measure of `f_ω^n(x0)` for `n ∈ (burn_in, burn_in + samples]`
/// along the trajectory `trajectory_index`.
pub fn estimate_stationary<R: Real>(
    gs: &GeneratorSet<R>,
    x0: CirclePoint<R>,
    burn_in: usize,
    samples: usize,
    trajectory_index: u64,
) -> Result<EmpiricalMeasure<R>> {
    assert!(samples >= 1);
    let stream = gs.stream(trajectory_index);
    let mut cur = x0;
    let mut collected = Vec::with_capacity(samples);
    for k in 0..(burn_in + samples) as u64 {
        cur = gs.map(stream.index_at(k)).eval(cur);
        if k >= burn_in as u64 {
            collected.push(cur);
        }
    }
    EmpiricalMeasure::from_points(collected)
}

/// Pools stationary samples across several independent words from the same
/// start. The pooled measure loses the consecutive-visit correlation of a
/// single orbit, which the order-statistics windows of the Jacobian
/// estimator are sensitive to.
pub fn estimate_stationary_pooled<R: Real>(
    gs: &GeneratorSet<R>,
    x0: CirclePoint<R>,
    burn_in: usize,
    samples_per_trajectory: usize,
    trajectories: usize,
    trajectory_offset: u64,
) -> Result<EmpiricalMeasure<R>> {
    let runs: Vec<EmpiricalMeasure<R>> = (0..trajectories as u64)
        .into_par_iter()
        .map(|t| {
            estimate_stationary(
                gs,
                x0,
                burn_in,
                samples_per_trajectory,
                trajectory_offset + t,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    EmpiricalMeasure::pooled(runs.iter())
}

/// Parameters for the ergodic decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct DecomposeParams<R: Real> {
    pub starts: Vec<CirclePoint<R>>,
    pub burn_in: usize,
    pub samples: usize,
    /// Support-detection resolution.
    pub resolution: usize,
    /// Support cell count threshold.
    pub threshold: R,
    /// Grid resolution of the basin functions (0 skips basin estimation).
    pub basin_resolution: usize,
    /// Independent repeats per basin grid node.
    pub basin_repeats: usize,
    pub basin_steps: usize,
}

impl<R: Real> Default for DecomposeParams<R> {
    fn default() -> Self {
        DecomposeParams {
            starts: default_starts(8),
            burn_in: 500,
            samples: 4000,
            resolution: 256,
            threshold: R::zero(),
            basin_resolution: 64,
            basin_repeats: 64,
            basin_steps: 400,
        }
    }
}

/// `count` starts spread evenly over the circle.
pub fn default_starts<R: Real>(count: usize) -> Vec<CirclePoint<R>> {
    (0..count)
        .map(|j| CirclePoint::new(R::count(j) / R::count(count)))
        .collect()
}

/// The finitely many ergodic stationary measures found by support clustering,
/// with their supports and basin functions.
#[derive(Debug, Clone, Serialize)]
pub struct ErgodicDecomposition<R: Real> {
    pub measures: Vec<EmpiricalMeasure<R>>,
    pub supports: Vec<Vec<Arc<R>>>,
    pub d: usize,
    pub basin_estimates: Vec<GridFunction<R>>,
    pub warning: Option<String>,
}

/// Runs one stationary estimate per start, merges runs with overlapping
/// supports, and estimates the basin function of each class on a grid.
pub fn decompose_ergodic<R: Real>(
    gs: &GeneratorSet<R>,
    params: &DecomposeParams<R>,
) -> Result<ErgodicDecomposition<R>> {
    assert!(params.starts.len() >= 2, "need several starts to cluster");
    let runs: Vec<EmpiricalMeasure<R>> = params
        .starts
        .par_iter()
        .enumerate()
        .map(|(i, &x0)| {
            estimate_stationary(gs, x0, params.burn_in, params.samples, i as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    let run_supports: Vec<Vec<Arc<R>>> = runs
        .iter()
        .map(|m| m.support_arcs(params.resolution, params.threshold))
        .collect();

    // union-find merge on support overlap
    let n = runs.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let mut any_disjoint_pair = false;
    for i in 0..n {
        for j in (i + 1)..n {
            let overlap = run_supports[i]
                .iter()
                .any(|a| run_supports[j].iter().any(|b| a.intersects(b)));
            if overlap {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            } else {
                any_disjoint_pair = true;
            }
        }
    }

    let mut class_of = vec![0usize; n];
    let mut reps: Vec<usize> = Vec::new();
    for (i, slot) in class_of.iter_mut().enumerate() {
        let r = find(&mut parent, i);
        let c = match reps.iter().position(|&q| q == r) {
            Some(c) => c,
            None => {
                reps.push(r);
                reps.len() - 1
            }
        };
        *slot = c;
    }
    let d = reps.len();

    let mut measures = Vec::with_capacity(d);
    for c in 0..d {
        let parts: Vec<&EmpiricalMeasure<R>> = runs
            .iter()
            .zip(class_of.iter())
            .filter(|(_, &cc)| cc == c)
            .map(|(m, _)| m)
            .collect();
        measures.push(EmpiricalMeasure::pooled(parts)?);
    }
    let supports: Vec<Vec<Arc<R>>> = measures
        .iter()
        .map(|m| m.support_arcs(params.resolution, params.threshold))
        .collect();

    let warning = if d == 1 && any_disjoint_pair {
        Some("resolution too coarse".to_string())
    } else {
        None
    };

    // basin functions: fraction of independent repeats from each grid node
    // that end within 1/resolution of each class support
    let mut basin_estimates = Vec::new();
    if params.basin_repeats > 0 && params.basin_resolution >= 8 {
        let close = R::one() / R::count(params.resolution);
        let grid_m = params.basin_resolution;
        let per_node: Vec<Vec<R>> = (0..grid_m)
            .into_par_iter()
            .map(|jn| {
                let x = CirclePoint::new(R::count(jn) / R::count(grid_m));
                let mut hits = vec![0usize; d];
                for r in 0..params.basin_repeats {
                    let traj = BASIN_STREAM_BASE + (jn * params.basin_repeats + r) as u64;
                    let stream = gs.stream(traj);
                    let mut cur = x;
                    for k in 0..params.basin_steps as u64 {
                        cur = gs.map(stream.index_at(k)).eval(cur);
                    }
                    let mut best: Option<(usize, R)> = None;
                    for (c, arcs) in supports.iter().enumerate() {
                        let dist = arcs
                            .iter()
                            .map(|a| a.dist_to(cur))
                            .fold(R::one(), R::min);
                        if best.is_none_or(|(_, bd)| dist < bd) {
                            best = Some((c, dist));
                        }
                    }
                    if let Some((c, dist)) = best {
                        if dist <= close {
                            hits[c] += 1;
                        }
                    }
                }
                hits.iter()
                    .map(|&h| R::count(h) / R::count(params.basin_repeats))
                    .collect()
            })
            .collect();
        for c in 0..d {
            basin_estimates.push(GridFunction::new(
                per_node.iter().map(|row| row[c]).collect(),
            ));
        }
    }

    Ok(ErgodicDecomposition {
        measures,
        supports,
        d,
        basin_estimates,
        warning,
    })
}

/// Approximated Jacobian at `x` for one generator: over sample-index windows
/// of `j` consecutive order statistics with mass between ε/2 and ε whose
/// spanned arc contains `x`, the ratio of the Laplace-smoothed image mass to
/// the window mass `j/N`; positions at equal size are averaged and the
/// estimate is the maximum over sizes.
///
/// Windows spanning more than half the circle are excluded: their arcs sweep
/// the mass-free complement and their images capture bulk mass, which says
/// nothing about the local distortion the Jacobian measures.
pub fn estimate_j_eps<R: Real>(
    mu: &EmpiricalMeasure<R>,
    f: &Homeo<R>,
    x: CirclePoint<R>,
    eps: R,
) -> Result<R> {
    let n = mu.count();
    let k = (eps * R::count(n)).floor().to_usize().unwrap_or(0);
    assert!(k >= 4, "estimate_j_eps requires eps * N >= 4");

    // effective-support guard: the nearest sample must sit within eps
    let nearest = (0..n)
        .map(|r| circle_dist(mu.point(r), x))
        .fold(R::one(), R::min);
    // (linear scan is fine: n is bounded by the sampling budget)
    if nearest > eps {
        return Err(Error::OutsideSupport);
    }

    let p = mu.samples().partition_point(|&s| s <= x.value());
    let j_lo = (k / 2).max(2);
    let j_stride = ((k - j_lo) / 31).max(1);
    let nf = R::count(n);
    let smooth_den = R::count(n + 1);
    let half = R::of(0.5);

    let mut best: Option<R> = None;
    let mut j = j_lo;
    loop {
        let pos_stride = (j / 63).max(1);
        let mut acc = R::zero();
        let mut hits = 0usize;
        let mut off = 0usize;
        loop {
            // window start p - j + off (wrapped); the final candidate at
            // off = j - 1 always covers x's own rank
            let i = (p + n - (j - off)) % n;
            let start = mu.point(i);
            let end = mu.point((i + j - 1) % n);
            let length = start.ccw_to(end);
            if length <= half {
                let arc = Arc::new(start, length);
                if arc.contains(x) {
                    let image = f.push_arc(&arc)?;
                    let count = mu.arc_count(&image);
                    let ratio = (R::count(count + 1) / smooth_den) / (R::count(j) / nf);
                    acc = acc + ratio;
                    hits += 1;
                }
            }
            if off == j - 1 {
                break;
            }
            off = (off + pos_stride).min(j - 1);
        }
        if hits > 0 {
            let mean = acc / R::count(hits);
            best = Some(best.map_or(mean, |b: R| b.max(mean)));
        }
        if j >= k {
            break;
        }
        j = (j + j_stride).min(k);
    }
    best.ok_or(Error::OutsideSupport)
}

/// Convenience wrapper resolving the generator by label.
pub fn estimate_j_eps_for_label<R: Real>(
    gs: &GeneratorSet<R>,
    mu: &EmpiricalMeasure<R>,
    label: &str,
    x: CirclePoint<R>,
    eps: R,
) -> Result<R> {
    let idx = gs
        .index_of(label)
        .unwrap_or_else(|| panic!("unknown generator label `{label}`"));
    estimate_j_eps(mu, gs.map(idx), x, eps)
}

/// Approximated-entropy estimate with the contraction bound check.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyEstimate<R: Real> {
    pub epsilon: R,
    /// Reported entropy (non-negative; raw value kept alongside).
    pub h_eps: R,
    pub h_raw: R,
    pub jacobian_samples: usize,
    pub skip_fraction: R,
    /// Mean contraction exponent over 16 μ-sampled start points.
    pub lambda_bar: R,
    pub lambda_bound_satisfied: bool,
}

/// Parameters for [`estimate_entropy`].
#[derive(Debug, Clone, Serialize)]
pub struct EntropyParams<R: Real> {
    pub eps: R,
    pub probes: usize,
    /// Exponent-estimation settings for the bound check.
    pub exponent: ExponentParams<R>,
    pub lambda_points: usize,
}

impl<R: Real> Default for EntropyParams<R> {
    fn default() -> Self {
        EntropyParams {
            eps: R::of(0.05),
            probes: 200,
            exponent: ExponentParams {
                steps: 600,
                trajectories: 4,
                ..ExponentParams::default()
            },
            lambda_points: 16,
        }
    }
}

/// One draw of the entropy estimator: `x ~ μ`, `f ~ ν`, and the resulting
/// `log J_ε` (absent when the point fell outside the effective support).
#[derive(Debug, Clone, Serialize)]
pub struct JacobianProbe<R: Real> {
    pub generator: String,
    pub x: CirclePoint<R>,
    pub log_j: Option<R>,
}

/// The probe draws behind [`estimate_entropy`], exposed for inspection.
pub fn jacobian_probes<R: Real>(
    gs: &GeneratorSet<R>,
    mu: &EmpiricalMeasure<R>,
    eps: R,
    probes: usize,
) -> Result<Vec<JacobianProbe<R>>> {
    let n = mu.count();
    let mut out = Vec::with_capacity(probes);
    for probe in 0..probes as u64 {
        let u1 = R::of(uniform_at(gs.seed(), PROBE_STREAM_BASE + probe, 0));
        let u2 = R::of(uniform_at(gs.seed(), PROBE_STREAM_BASE + probe, 1));
        let rank = (u1 * R::count(n)).floor().to_usize().unwrap_or(0).min(n - 1);
        let x = mu.point(rank);
        let gi = gs.pick_index(u2);
        let log_j = match estimate_j_eps(mu, gs.map(gi), x, eps) {
            Ok(j) => Some(j.ln()),
            Err(Error::OutsideSupport) => None,
            Err(e) => return Err(e),
        };
        out.push(JacobianProbe {
            generator: gs.label(gi).to_string(),
            x,
            log_j,
        });
    }
    Ok(out)
}

/// `h_ε = −mean log J_ε` over probes drawing `x ~ μ` and `f ~ ν`, plus the
/// check `λ̄_con ≤ −h_ε + 0.05`.
pub fn estimate_entropy<R: Real>(
    gs: &GeneratorSet<R>,
    mu: &EmpiricalMeasure<R>,
    params: &EntropyParams<R>,
) -> Result<EntropyEstimate<R>> {
    assert!(params.probes >= 100, "entropy estimation needs >= 100 probes");
    let draws = jacobian_probes(gs, mu, params.eps, params.probes)?;
    let mut sum_log = R::zero();
    let mut ok = 0usize;
    let mut skipped = 0usize;
    for d in &draws {
        match d.log_j {
            Some(lj) => {
                sum_log = sum_log + lj;
                ok += 1;
            }
            None => skipped += 1,
        }
    }
    let skip_fraction = R::count(skipped) / R::count(params.probes);
    if skip_fraction > R::of(0.2) {
        return Err(Error::EntropyUnreliable {
            skipped,
            probes: params.probes,
        });
    }
    let h_raw = -(sum_log / R::count(ok.max(1)));
    let h_eps = h_raw.max(R::zero());

    // mean contraction exponent over μ-sampled start points
    let mut lambda_sum = R::zero();
    let points = params.lambda_points.max(1);
    for i in 0..points {
        let q = (R::count(i) + R::of(0.5)) / R::count(points);
        let x = mu.quantile(q);
        let mut exp_params = params.exponent.clone();
        exp_params.trajectory_offset =
            LAMBDA_STREAM_BASE + (i * params.exponent.trajectories) as u64;
        let est = estimate_lambda_con(gs, x, &exp_params);
        lambda_sum = lambda_sum + est.mean_slope;
    }
    let lambda_bar = lambda_sum / R::count(points);
    let lambda_bound_satisfied = lambda_bar <= -h_eps + R::of(0.05);

    Ok(EntropyEstimate {
        epsilon: params.eps,
        h_eps,
        h_raw,
        jacobian_samples: ok,
        skip_fraction,
        lambda_bar,
        lambda_bound_satisfied,
    })
}

/// Outcome of one tracked pair.
#[derive(Debug, Clone, Serialize)]
pub struct PairOutcome<R: Real> {
    pub x: CirclePoint<R>,
    pub y: CirclePoint<R>,
    pub final_dist: R,
    pub synced: bool,
    pub rate: Option<R>,
}

/// Outcome of the two-point synchronization test.
#[derive(Debug, Clone, Serialize)]
pub struct SyncReport<R: Real> {
    pub pairs: usize,
    pub synced: usize,
    pub fraction_synced: R,
    pub median_rate: R,
    pub outcomes: Vec<PairOutcome<R>>,
}

/// Runs the pair walk on every listed pair; a pair is synced when its final
/// distance falls below `tol`, and the rate is the regression slope of
/// `log dist` down to the distance floor.
pub fn sync_test<R: Real>(
    gs: &GeneratorSet<R>,
    pairs: &[(CirclePoint<R>, CirclePoint<R>)],
    n: usize,
    tol: R,
) -> SyncReport<R> {
    assert!(n >= 100 && !pairs.is_empty());
    let outcomes: Vec<PairOutcome<R>> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, &(x, y))| {
            let orbit = gs.stream(i as u64).iterate_pair(x, y, n);
            let dists: Vec<R> = orbit.iter().map(|&(a, b)| circle_dist(a, b)).collect();
            let final_dist = *dists.last().unwrap();
            let synced = final_dist < tol;
            let end = dists
                .iter()
                .position(|&d| d < R::dist_floor() || d <= R::zero())
                .unwrap_or(dists.len());
            let rate = if synced && end >= 2 {
                let logs: Vec<R> = dists[..end].iter().map(|d| d.ln()).collect();
                Some(ols(&logs).0)
            } else {
                None
            };
            PairOutcome {
                x,
                y,
                final_dist,
                synced,
                rate,
            }
        })
        .collect();
    let synced = outcomes.iter().filter(|o| o.synced).count();
    let mut rates: Vec<R> = outcomes.iter().filter_map(|o| o.rate).collect();
    SyncReport {
        pairs: pairs.len(),
        synced,
        fraction_synced: R::count(synced) / R::count(pairs.len()),
        median_rate: median(&mut rates),
        outcomes,
    }
}

/// Deterministic uniform pairs for synchronization experiments.
pub fn uniform_pairs<R: Real>(seed: u64, count: usize) -> Vec<(CirclePoint<R>, CirclePoint<R>)> {
    const PAIR_SALT: u64 = 0x7379_6e63_7061_6972;
    (0..count as u64)
        .map(|i| {
            (
                CirclePoint::new(R::of(uniform_at(seed ^ PAIR_SALT, i, 0))),
                CirclePoint::new(R::of(uniform_at(seed ^ PAIR_SALT, i, 1))),
            )
        })
        .collect()
}
