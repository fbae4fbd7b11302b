//! Transfer-operator iteration on grid functions, decomposability/period
//! detection on the arc-transition graph, staircase profiles of long
//! compositions, an invariant-measure residual, and the trichotomy
//! classifier built from these diagnostics.

use serde::Serialize;

use crate::circle::{Arc, CirclePoint};
use crate::estimators::{
    decompose_ergodic, estimate_lambda_con, DecomposeParams, ExponentParams,
};
use crate::grid::GridFunction;
use crate::num::Real;
use crate::walk::GeneratorSet;

/// One application of the transfer operator: node `j` receives the weighted
/// average of `φ(f_i(j/m))`; exact in the weights since ν has finite support.
pub fn transfer_apply<R: Real>(gs: &GeneratorSet<R>, phi: &GridFunction<R>) -> GridFunction<R> {
    let m = phi.resolution();
    let mf = R::count(m);
    let values = (0..m)
        .map(|j| {
            let x = CirclePoint::new(R::count(j) / mf);
            gs.generators()
                .iter()
                .fold(R::zero(), |acc, g| acc + g.weight * phi.eval(g.map.eval(x)))
        })
        .collect();
    GridFunction::new(values)
}

/// All iterates `φ, Pφ, …, Pⁿφ`.
pub fn transfer_orbit<R: Real>(
    gs: &GeneratorSet<R>,
    phi: &GridFunction<R>,
    n: usize,
) -> Vec<GridFunction<R>> {
    let mut orbit = Vec::with_capacity(n + 1);
    orbit.push(phi.clone());
    for _ in 0..n {
        let next = transfer_apply(gs, orbit.last().unwrap());
        orbit.push(next);
    }
    orbit
}

#[derive(Debug, Clone, Serialize)]
pub struct TransferIterate<R: Real> {
    /// Sup-norm distance of each iterate to the Cesàro average.
    pub iterates_norms: Vec<R>,
    /// Average of iterates `0..n-1`.
    pub cesaro: GridFunction<R>,
    pub last: GridFunction<R>,
}

pub fn transfer_iterate<R: Real>(
    gs: &GeneratorSet<R>,
    phi: &GridFunction<R>,
    n: usize,
) -> TransferIterate<R> {
    assert!(n >= 1);
    let orbit = transfer_orbit(gs, phi, n);
    let mut cesaro = GridFunction::constant(phi.resolution(), R::zero());
    for it in &orbit[..n] {
        cesaro = cesaro.add(it);
    }
    let cesaro = cesaro.scale(R::count(n).recip());
    let iterates_norms = orbit.iter().map(|it| it.sup_dist(&cesaro)).collect();
    TransferIterate {
        iterates_norms,
        cesaro,
        last: orbit.into_iter().last().unwrap(),
    }
}

/// Arc-transition graph: node `j` is the grid arc `[j/m, (j+1)/m]`, and
/// `j → k` under a generator when the image arc overlaps arc `k` with
/// positive length.
#[derive(Debug, Clone, Serialize)]
pub struct ArcGraph {
    pub resolution: usize,
    /// `edges[g][j]` lists the targets of node `j` under generator `g`.
    pub edges: Vec<Vec<Vec<usize>>>,
}

/// Cells overlapping the image arc with positive length.
fn image_cells<R: Real>(image: &Arc<R>, m: usize) -> Vec<usize> {
    let mf = R::count(m);
    let guard = R::of(1e-9) / mf;
    let a = image.start().value();
    let len = image.length().max(guard + guard);
    let b = a + len;
    let first = ((a + guard) * mf).floor().to_isize().unwrap_or(0);
    let last = ((b - guard) * mf).floor().to_isize().unwrap_or(0);
    let mut cells = Vec::new();
    let mut c = first;
    while c <= last && cells.len() < m {
        cells.push(c.rem_euclid(m as isize) as usize);
        c += 1;
    }
    if cells.is_empty() {
        cells.push(first.rem_euclid(m as isize) as usize);
    }
    cells
}

pub fn build_arc_graph<R: Real>(gs: &GeneratorSet<R>, resolution: usize) -> ArcGraph {
    let m = resolution;
    let mf = R::count(m);
    let mut edges = Vec::with_capacity(gs.len());
    for g in gs.generators() {
        let mut per_gen = Vec::with_capacity(m);
        for j in 0..m {
            let arc = Arc::new(CirclePoint::new(R::count(j) / mf), mf.recip());
            let targets = match g.map.push_arc(&arc) {
                Ok(image) => image_cells(&image, m),
                Err(_) => (0..m).collect(),
            };
            per_gen.push(targets);
        }
        edges.push(per_gen);
    }
    ArcGraph {
        resolution: m,
        edges,
    }
}

impl ArcGraph {
    /// Union relation over generators, deduplicated.
    pub fn union_adjacency(&self) -> Vec<Vec<usize>> {
        let m = self.resolution;
        let mut adj = vec![Vec::new(); m];
        for per_gen in &self.edges {
            for (j, targets) in per_gen.iter().enumerate() {
                adj[j].extend_from_slice(targets);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// `generator,src,dst` rows.
    pub fn to_csv<R: Real>(&self, gs: &GeneratorSet<R>) -> String {
        let mut out = String::from("generator,src,dst\n");
        for (gi, per_gen) in self.edges.iter().enumerate() {
            for (j, targets) in per_gen.iter().enumerate() {
                for &k in targets {
                    out.push_str(&format!("{},{j},{k}\n", gs.label(gi)));
                }
            }
        }
        out
    }
}

/// Strongly connected components (iterative Kosaraju); returned as lists of
/// node indices.
fn sccs(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        // iterative post-order
        let mut stack = vec![(s, 0usize)];
        seen[s] = true;
        while let Some(frame) = stack.last_mut() {
            let v = frame.0;
            if frame.1 < adj[v].len() {
                let w = adj[v][frame.1];
                frame.1 += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    let mut radj = vec![Vec::new(); n];
    for (v, targets) in adj.iter().enumerate() {
        for &w in targets {
            radj[w].push(v);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &s in order.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let c = comps.len();
        let mut members = vec![s];
        comp[s] = c;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &radj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = c;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        comps.push(members);
    }
    comps
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Graph period of one strongly connected class: gcd of `level(u)+1-level(v)`
/// over internal edges, with levels from a breadth-first labeling.
fn class_period(adj: &[Vec<usize>], members: &[usize]) -> (usize, Vec<i64>) {
    let n = adj.len();
    let mut level = vec![i64::MIN; n];
    let root = members[0];
    level[root] = 0;
    let mut queue = std::collections::VecDeque::from([root]);
    let in_class: std::collections::HashSet<usize> = members.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if in_class.contains(&w) && level[w] == i64::MIN {
                level[w] = level[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut g = 0usize;
    for &v in members {
        for &w in &adj[v] {
            if in_class.contains(&w) {
                let diff = (level[v] + 1 - level[w]).unsigned_abs() as usize;
                g = gcd(g, diff);
            }
        }
    }
    (g.max(1), level)
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodReport {
    /// 1 is the indecomposable verdict at this resolution.
    pub period: usize,
    /// Cyclic partition of the witnessing recurrent class when period >= 2.
    pub classes: Vec<Vec<usize>>,
}

/// Builds the arc graph, restricts the union relation to its closed strongly
/// connected classes, and returns the minimal class period.
pub fn decomposability_period<R: Real>(gs: &GeneratorSet<R>, resolution: usize) -> PeriodReport {
    assert!(resolution >= 8);
    let graph = build_arc_graph(gs, resolution);
    let adj = graph.union_adjacency();
    let comps = sccs(&adj);
    let mut comp_of = vec![0usize; adj.len()];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut best: Option<(usize, Vec<Vec<usize>>)> = None;
    for members in &comps {
        let closed = members
            .iter()
            .all(|&v| adj[v].iter().all(|&w| comp_of[w] == comp_of[members[0]]));
        if !closed {
            continue;
        }
        let (p, level) = class_period(&adj, members);
        let classes = if p >= 2 {
            let mut parts = vec![Vec::new(); p];
            for &v in members {
                let l = level[v].rem_euclid(p as i64) as usize;
                parts[l].push(v);
            }
            for part in &mut parts {
                part.sort_unstable();
            }
            parts
        } else {
            Vec::new()
        };
        if best.as_ref().is_none_or(|(bp, _)| p < *bp) {
            best = Some((p, classes));
        }
    }
    let (period, classes) = best.unwrap_or((1, Vec::new()));
    PeriodReport {
        period,
        classes: if period >= 2 { classes } else { Vec::new() },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StaircaseProfile<R: Real> {
    pub plateau_count: usize,
    pub jump_locations: Vec<CirclePoint<R>>,
    /// False when no image gap reaches the jump threshold and the images
    /// have not collapsed either (no contraction visible yet at this n).
    pub resolved: bool,
    /// Image of node `j/m` under the sampled composition.
    pub node_images: Vec<R>,
}

/// Evaluates `f_ω^n` at all grid nodes and counts jumps: circular neighbour
/// pairs whose image gap reaches `jump_threshold`.
pub fn staircase_profile<R: Real>(
    gs: &GeneratorSet<R>,
    trajectory_index: u64,
    n: usize,
    resolution: usize,
    jump_threshold: R,
) -> StaircaseProfile<R> {
    assert!(n >= 100 && resolution >= 256);
    let m = resolution;
    let mf = R::count(m);
    let stream = gs.stream(trajectory_index);
    let mut points: Vec<CirclePoint<R>> = (0..m)
        .map(|j| CirclePoint::new(R::count(j) / mf))
        .collect();
    for k in 0..n as u64 {
        let f = gs.map(stream.index_at(k));
        for q in points.iter_mut() {
            *q = f.eval(*q);
        }
    }
    let mut jump_gaps = Vec::new();
    for j in 0..m {
        let gap = points[j].ccw_to(points[(j + 1) % m]);
        if gap >= jump_threshold {
            jump_gaps.push(j);
        }
    }
    // group circularly consecutive jump gaps: one expanding point can
    // straddle neighbouring node pairs (e.g. a repeller on a grid node)
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for &j in &jump_gaps {
        match groups.last_mut() {
            Some((s, l)) if (*s + *l) % m == j => *l += 1,
            _ => groups.push((j, 1)),
        }
    }
    if groups.len() > 1 {
        let (fs, fl) = groups[0];
        let &(ls, ll) = groups.last().unwrap();
        if fs == 0 && (ls + ll) % m == 0 {
            groups.remove(0);
            groups.last_mut().unwrap().1 += fl;
        }
    }
    let jumps: Vec<CirclePoint<R>> = groups
        .iter()
        .map(|&(s, l)| {
            CirclePoint::new(
                (R::count(s) + R::of(0.5) + R::count(l - 1) / R::of(2.0)) / mf,
            )
        })
        .collect();
    let node_images: Vec<R> = points.iter().map(|q| q.value()).collect();
    if jumps.is_empty() {
        // no visible jump: either every node image collapsed onto one
        // plateau, or nothing has contracted yet
        let diam = crate::circle::diam_points(&points).expect("grid is nonempty");
        let collapsed = diam < jump_threshold;
        return StaircaseProfile {
            plateau_count: usize::from(collapsed),
            jump_locations: Vec::new(),
            resolved: collapsed,
            node_images,
        };
    }
    StaircaseProfile {
        plateau_count: jumps.len(),
        jump_locations: jumps,
        resolved: true,
        node_images,
    }
}

/// Default jump threshold for a staircase at resolution `m`.
pub fn default_jump_threshold<R: Real>(resolution: usize) -> R {
    R::of(16.0) / R::count(resolution)
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantCheck<R: Real> {
    /// `max_i ‖M_i w − w‖₁` for the averaged-pushforward fixed point `w`.
    pub residual: R,
    pub candidate: Vec<R>,
}

/// Sparse column map of the Ulam pushforward matrix of one generator.
fn ulam_columns<R: Real>(gs: &GeneratorSet<R>, gi: usize, m: usize) -> Vec<Vec<(usize, R)>> {
    let mf = R::count(m);
    let mut cols = Vec::with_capacity(m);
    for j in 0..m {
        let arc = Arc::new(CirclePoint::new(R::count(j) / mf), mf.recip());
        let image = gs.map(gi).push_arc(&arc).expect("cell arcs are proper");
        let a = image.start().value();
        let len = image.length();
        if len <= R::zero() {
            let cell = (a * mf).floor().to_usize().unwrap_or(0).min(m - 1);
            cols.push(vec![(cell, R::one())]);
            continue;
        }
        let b = a + len;
        let first = (a * mf).floor();
        let last = (b * mf).floor();
        let mut col = Vec::new();
        let mut c = first;
        while c <= last {
            let lo = a.max(c / mf);
            let hi = b.min((c + R::one()) / mf);
            let overlap = hi - lo;
            if overlap > R::zero() {
                let cell = c.to_isize().unwrap_or(0).rem_euclid(m as isize) as usize;
                col.push((cell, overlap / len));
            }
            c = c + R::one();
        }
        cols.push(col);
    }
    cols
}

fn apply_columns<R: Real>(cols: &[Vec<(usize, R)>], w: &[R]) -> Vec<R> {
    let mut out = vec![R::zero(); w.len()];
    for (j, col) in cols.iter().enumerate() {
        for &(k, share) in col {
            out[k] = out[k] + w[j] * share;
        }
    }
    out
}

/// Iterates the averaged Ulam pushforward from the uniform weight vector and
/// reports how far the fixed point is from being invariant under every
/// single generator.
pub fn invariant_measure_residual<R: Real>(
    gs: &GeneratorSet<R>,
    resolution: usize,
    iterations: usize,
) -> InvariantCheck<R> {
    assert!(resolution >= 32);
    let m = resolution;
    let cols: Vec<Vec<Vec<(usize, R)>>> =
        (0..gs.len()).map(|gi| ulam_columns(gs, gi, m)).collect();
    let mut w = vec![R::count(m).recip(); m];
    for _ in 0..iterations {
        let mut mean = vec![R::zero(); m];
        for (gi, g) in gs.generators().iter().enumerate() {
            let pushed = apply_columns(&cols[gi], &w);
            for (acc, v) in mean.iter_mut().zip(pushed.iter()) {
                *acc = *acc + g.weight * *v;
            }
        }
        let total = mean.iter().fold(R::zero(), |a, &b| a + b);
        for v in mean.iter_mut() {
            *v = *v / total;
        }
        w = mean;
    }
    let mut residual = R::zero();
    for col in &cols {
        let pushed = apply_columns(col, &w);
        let l1 = pushed
            .iter()
            .zip(w.iter())
            .map(|(&a, &b)| (a - b).abs())
            .fold(R::zero(), |a, b| a + b);
        residual = residual.max(l1);
    }
    InvariantCheck {
        residual,
        candidate: w,
    }
}

/// Trichotomy verdict for a generator set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    LocallyContracting,
    IsometryLike,
    FiniteOrbitLike,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::LocallyContracting => "locally-contracting",
            Verdict::IsometryLike => "isometry-like",
            Verdict::FiniteOrbitLike => "finite-orbit-like",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// Thresholds of the (explicitly heuristic) trichotomy classifier.
#[derive(Debug, Clone, Serialize)]
pub struct ClassifyParams<R: Real> {
    pub support_resolution: usize,
    pub max_support_cells: usize,
    pub residual_tolerance: R,
    pub residual_resolution: usize,
    pub residual_iterations: usize,
    /// Slope below `-slope_tolerance` counts as clear contraction.
    pub slope_tolerance: R,
    pub probe_point: CirclePoint<R>,
    pub decompose: DecomposeParams<R>,
    pub exponent: ExponentParams<R>,
}

impl<R: Real> Default for ClassifyParams<R> {
    fn default() -> Self {
        ClassifyParams {
            support_resolution: 256,
            max_support_cells: 3,
            residual_tolerance: R::of(0.02),
            residual_resolution: 128,
            residual_iterations: 400,
            slope_tolerance: R::of(0.02),
            probe_point: CirclePoint::new(R::of(0.2137)),
            decompose: DecomposeParams {
                samples: 2000,
                basin_repeats: 0,
                ..DecomposeParams::default()
            },
            exponent: ExponentParams {
                steps: 1000,
                trajectories: 8,
                ..ExponentParams::default()
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrichotomyReport<R: Real> {
    pub verdict: Verdict,
    pub residual: R,
    pub slope: R,
    pub no_contraction: bool,
    pub d: usize,
    /// Cell count of the smallest finite-orbit candidate class, if any.
    pub smallest_support_cells: Option<usize>,
}

/// Decision tree: (a) a stationary class concentrated on at most
/// `max_support_cells` grid cells whose points stay inside the support under
/// every generator means a finite orbit; else (b) a small invariance residual
/// together with no observed contraction means an isometry-like walk; else
/// (c) local contraction, cross-checked by a negative slope.
pub fn classify_trichotomy<R: Real>(
    gs: &GeneratorSet<R>,
    params: &ClassifyParams<R>,
) -> TrichotomyReport<R> {
    let mut dec_params = params.decompose.clone();
    dec_params.resolution = params.support_resolution;
    let dec = decompose_ergodic(gs, &dec_params).expect("decomposition with >= 2 starts");

    let mut smallest: Option<usize> = None;
    let mut finite_orbit = false;
    let close = R::count(params.support_resolution).recip();
    for (mu, arcs) in dec.measures.iter().zip(dec.supports.iter()) {
        let cells = mu
            .support_cells(params.support_resolution, R::zero())
            .len();
        smallest = Some(smallest.map_or(cells, |s: usize| s.min(cells)));
        if cells == 0 || cells > params.max_support_cells {
            continue;
        }
        // orbit check on representative samples: every generator must keep
        // them within the detected support
        let reps: Vec<CirclePoint<R>> = (0..8)
            .map(|i| mu.quantile((R::count(i) + R::of(0.5)) / R::of(8.0)))
            .collect();
        let stays = gs.generators().iter().all(|g| {
            reps.iter().all(|&x| {
                let y = g.map.eval(x);
                arcs.iter().any(|a| a.dist_to(y) <= close)
            })
        });
        if stays {
            finite_orbit = true;
        }
    }

    let inv = invariant_measure_residual(gs, params.residual_resolution, params.residual_iterations);
    let exp = estimate_lambda_con(gs, params.probe_point, &params.exponent);

    let verdict = if finite_orbit {
        Verdict::FiniteOrbitLike
    } else if inv.residual <= params.residual_tolerance && exp.no_contraction {
        Verdict::IsometryLike
    } else if inv.residual <= params.residual_tolerance && exp.slope < -params.slope_tolerance {
        // conflicting evidence: an invariant candidate but clear contraction
        Verdict::Inconclusive
    } else if exp.slope < R::zero() {
        Verdict::LocallyContracting
    } else {
        Verdict::Inconclusive
    };

    TrichotomyReport {
        verdict,
        residual: inv.residual,
        slope: exp.slope,
        no_contraction: exp.no_contraction,
        d: dec.d,
        smallest_support_cells: smallest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homeo::Homeo;

    fn p(x: f64) -> CirclePoint<f64> {
        CirclePoint::new(x)
    }

    fn rotation_half() -> GeneratorSet<f64> {
        GeneratorSet::new(vec![("half", Homeo::rotation(0.5), 1.0)], 0).unwrap()
    }

    #[test]
    fn transfer_negates_cosine_under_half_rotation() {
        let gs = rotation_half();
        let phi = GridFunction::cosine(256);
        let out = transfer_apply(&gs, &phi);
        for (a, b) in out.values().iter().zip(phi.values().iter()) {
            assert!((a + b).abs() < 1e-3);
        }
    }

    #[test]
    fn transfer_preserves_constants() {
        let gs = GeneratorSet::new(
            vec![
                ("ns", Homeo::north_south(p(0.25), p(0.75), 0.5).unwrap(), 0.5),
                ("rot", Homeo::rotation(0.3), 0.5),
            ],
            1,
        )
        .unwrap();
        let phi = GridFunction::constant(128, 0.7);
        let out = transfer_apply(&gs, &phi);
        for &v in out.values() {
            assert!((v - 0.7).abs() < 1e-12);
        }
        // constants are harmonic: all iterates equal phi
        let it = transfer_iterate(&gs, &phi, 5);
        assert!(it.last.sup_dist(&phi) < 1e-12);
    }

    #[test]
    fn transfer_averages_to_zero_for_id_and_half() {
        let gs = GeneratorSet::new(
            vec![
                ("id", Homeo::<f64>::identity(), 0.5),
                ("half", Homeo::rotation(0.5), 0.5),
            ],
            0,
        )
        .unwrap();
        let phi = GridFunction::cosine(256);
        let out = transfer_apply(&gs, &phi);
        assert!(out.sup_norm() < 1e-3);
    }

    #[test]
    fn transfer_is_linear_positive_contracting() {
        let gs = rotation_half();
        let phi = GridFunction::cosine(128);
        let psi = GridFunction::from_fn(128, |x: CirclePoint<f64>| (x.value() - 0.5).abs());
        let combo = phi.scale(2.0).add(&psi.scale(-3.0));
        let lhs = transfer_apply(&gs, &combo);
        let rhs = transfer_apply(&gs, &phi)
            .scale(2.0)
            .add(&transfer_apply(&gs, &psi).scale(-3.0));
        assert!(lhs.sup_dist(&rhs) < 1e-12);
        // positivity and sup-norm contraction
        let pos = transfer_apply(&gs, &psi);
        assert!(pos.values().iter().all(|&v| v >= -1e-15));
        assert!(pos.sup_norm() <= psi.sup_norm() + 1e-15);
    }

    #[test]
    fn cesaro_converges_for_half_rotation() {
        // exact alternation: plain iterates keep sup-norm ~1, Cesàro dies
        let gs = rotation_half();
        let phi = GridFunction::cosine(256);
        let it = transfer_iterate(&gs, &phi, 200);
        assert!(it.cesaro.sup_norm() <= 2e-3);
        assert!(it.last.sup_norm() > 0.9);
    }

    #[test]
    fn period_of_rotation_set_is_one() {
        let gs = GeneratorSet::new(
            vec![
                ("quarter", Homeo::<f64>::rotation(0.25), 0.5),
                ("root5", Homeo::rotation(5.0f64.sqrt() - 2.0), 0.5),
            ],
            0,
        )
        .unwrap();
        let report = decomposability_period(&gs, 64);
        assert_eq!(report.period, 1);
    }

    #[test]
    fn period_of_single_north_south_is_one() {
        let ns = Homeo::north_south(p(0.25), p(0.75), 0.5).unwrap();
        let gs = GeneratorSet::new(vec![("ns", ns, 1.0)], 0).unwrap();
        assert_eq!(decomposability_period(&gs, 128).period, 1);
    }

    #[test]
    fn staircase_of_single_north_south() {
        let ns = Homeo::north_south(p(0.25), p(0.75), 0.5).unwrap();
        let gs = GeneratorSet::new(vec![("ns", ns, 1.0)], 0).unwrap();
        let prof = staircase_profile(&gs, 0, 200, 512, 0.05);
        assert!(prof.resolved);
        assert_eq!(prof.plateau_count, 1);
        // the jump sits at the repeller
        assert!(crate::circle::circle_dist(prof.jump_locations[0], p(0.75)) < 0.01);
    }

    #[test]
    fn staircase_unresolved_for_rotations() {
        let gs = GeneratorSet::new(
            vec![
                ("quarter", Homeo::<f64>::rotation(0.25), 0.5),
                ("root5", Homeo::rotation(5.0f64.sqrt() - 2.0), 0.5),
            ],
            0,
        )
        .unwrap();
        let prof = staircase_profile(&gs, 0, 200, 512, default_jump_threshold(512));
        assert!(!prof.resolved);
    }

    #[test]
    fn residual_of_rotations_is_small() {
        let gs = GeneratorSet::new(
            vec![
                ("quarter", Homeo::<f64>::rotation(0.25), 0.5),
                ("root5", Homeo::rotation(5.0f64.sqrt() - 2.0), 0.5),
            ],
            0,
        )
        .unwrap();
        let inv = invariant_measure_residual(&gs, 128, 400);
        assert!(inv.residual <= 0.02, "residual {}", inv.residual);
        let uniform = 1.0 / 128.0;
        for &w in &inv.candidate {
            assert!((w - uniform).abs() < 1e-3);
        }
    }

    #[test]
    fn residual_of_pingpong_is_large() {
        // no common invariant measure: each branch moves the bulk of the
        // stationary candidate into its own cylinder
        let f1 = crate::homeo::IntervalMap::affine(1.0 / 3.0, 0.0, 0.5).unwrap();
        let f2 = crate::homeo::IntervalMap::affine(1.0 / 3.0, 2.0 / 3.0, 0.5).unwrap();
        let gs = GeneratorSet::new(
            vec![
                ("low", f1.homeo().clone(), 0.5),
                ("high", f2.homeo().clone(), 0.5),
            ],
            0,
        )
        .unwrap();
        let inv = invariant_measure_residual(&gs, 128, 400);
        assert!(inv.residual >= 0.2, "residual {}", inv.residual);
    }

    #[test]
    fn residual_of_identity_is_zero() {
        let gs = GeneratorSet::new(vec![("id", Homeo::<f64>::identity(), 1.0)], 0).unwrap();
        let inv = invariant_measure_residual(&gs, 64, 50);
        assert_eq!(inv.residual, 0.0);
        for &w in &inv.candidate {
            assert!((w - 1.0 / 64.0).abs() < 1e-15);
        }
    }

    #[test]
    fn stationarity_duality_at_finite_resolution() {
        // |<mean_i M_i w, φ> - <w, Pφ>| <= 2 Lip(φ) / m
        let gs = GeneratorSet::new(
            vec![
                ("ns", Homeo::north_south(p(0.2), p(0.7), 0.5).unwrap(), 0.5),
                ("rot", Homeo::rotation(0.41), 0.5),
            ],
            3,
        )
        .unwrap();
        let m = 128;
        let inv = invariant_measure_residual(&gs, m, 200);
        let phi = GridFunction::cosine(m);
        let pair = |w: &[f64]| -> f64 {
            w.iter()
                .enumerate()
                .map(|(j, &wj)| wj * phi.eval(p((j as f64 + 0.5) / m as f64)))
                .sum()
        };
        let cols: Vec<_> = (0..gs.len()).map(|gi| ulam_columns(&gs, gi, m)).collect();
        let mut pushed = vec![0.0; m];
        for (gi, g) in gs.generators().iter().enumerate() {
            for (acc, v) in pushed.iter_mut().zip(apply_columns(&cols[gi], &inv.candidate)) {
                *acc += g.weight * v;
            }
        }
        let pphi = transfer_apply(&gs, &phi);
        let wpphi: f64 = inv
            .candidate
            .iter()
            .enumerate()
            .map(|(j, &wj)| wj * pphi.eval(p((j as f64 + 0.5) / m as f64)))
            .sum();
        let lip = std::f64::consts::TAU;
        assert!((pair(&pushed) - wpphi).abs() <= 2.0 * lip / m as f64);
    }

    #[test]
    fn classify_rotations_as_isometry_like() {
        let gs = GeneratorSet::new(
            vec![
                ("quarter", Homeo::<f64>::rotation(0.25), 0.5),
                ("root5", Homeo::rotation(5.0f64.sqrt() - 2.0), 0.5),
            ],
            7,
        )
        .unwrap();
        let report = classify_trichotomy(&gs, &ClassifyParams::default());
        assert_eq!(report.verdict, Verdict::IsometryLike);
    }

    #[test]
    fn classify_common_fixed_point_as_finite_orbit() {
        // both generators fix 0, one attracts it
        let g1 = Homeo::piecewise_linear(vec![(0.0, 0.0), (0.5, 0.3)]).unwrap();
        let g2 = Homeo::piecewise_linear(vec![(0.0, 0.0), (0.5, 0.4)]).unwrap();
        let gs = GeneratorSet::new(vec![("a", g1, 0.5), ("b", g2, 0.5)], 5).unwrap();
        let report = classify_trichotomy(&gs, &ClassifyParams::default());
        assert_eq!(report.verdict, Verdict::FiniteOrbitLike);
    }
}
