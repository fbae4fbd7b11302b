//! Sampling of random words and reproducible iteration of points, arcs and
//! pairs under the sampled compositions.
//!
//! The generator drawn at step `n` of trajectory `t` is a pure function of
//! `(seed, t, n)` through a counter-based hash, so trajectory batches can run
//! in parallel in any order and still reproduce bit-for-bit.

use serde::Serialize;

use crate::circle::{Arc, CirclePoint};
use crate::error::{Error, Result};
use crate::homeo::Homeo;
use crate::num::Real;

/// One weighted generator of the driving measure.
#[derive(Debug, Clone, Serialize)]
pub struct Generator<R: Real> {
    pub label: String,
    pub map: Homeo<R>,
    pub weight: R,
}

/// The finitely supported driving measure: weighted generators plus the seed
/// discipline for reproducible sampling.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSet<R: Real> {
    generators: Vec<Generator<R>>,
    cumulative: Vec<R>,
    seed: u64,
}

impl<R: Real> GeneratorSet<R> {
    /// Normalizes weights to sum to 1; labels must be unique.
    pub fn new(generators: Vec<(impl Into<String>, Homeo<R>, R)>, seed: u64) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        let mut gens = Vec::with_capacity(generators.len());
        let mut total = R::zero();
        for (label, map, weight) in generators {
            let label = label.into();
            if weight <= R::zero() {
                return Err(Error::NonPositiveWeight);
            }
            if gens.iter().any(|g: &Generator<R>| g.label == label) {
                return Err(Error::DuplicateLabel(label));
            }
            total = total + weight;
            gens.push(Generator { label, map, weight });
        }
        for g in &mut gens {
            g.weight = g.weight / total;
        }
        let mut cumulative = Vec::with_capacity(gens.len());
        let mut acc = R::zero();
        for g in &gens {
            acc = acc + g.weight;
            cumulative.push(acc);
        }
        *cumulative.last_mut().unwrap() = R::one();
        Ok(GeneratorSet {
            generators: gens,
            cumulative,
            seed,
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator<R>] {
        &self.generators
    }

    pub fn map(&self, index: usize) -> &Homeo<R> {
        &self.generators[index].map
    }

    pub fn label(&self, index: usize) -> &str {
        &self.generators[index].label
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }

    /// Cumulative-weight inversion of a uniform deviate.
    pub(crate) fn pick_index(&self, u: R) -> usize {
        self.cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(self.generators.len() - 1)
    }

    /// The stream of trajectory `trajectory_index`.
    pub fn stream(&self, trajectory_index: u64) -> WalkStream<'_, R> {
        WalkStream {
            source: self,
            trajectory_index,
        }
    }

    /// Evaluates an explicit word (generator indices, applied in order).
    pub fn iterate_with_indices(
        &self,
        word: &[usize],
        x: CirclePoint<R>,
    ) -> Vec<CirclePoint<R>> {
        let mut orbit = Vec::with_capacity(word.len() + 1);
        orbit.push(x);
        let mut cur = x;
        for &i in word {
            cur = self.generators[i].map.eval(cur);
            orbit.push(cur);
        }
        orbit
    }
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based uniform deviate in `[0, 1)` for `(seed, trajectory, step)`.
pub(crate) fn uniform_at(seed: u64, trajectory: u64, step: u64) -> f64 {
    let a = mix64(seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(trajectory.wrapping_add(1)));
    let b = mix64(a ^ 0xd1b5_4a32_d192_ed03u64.wrapping_mul(step.wrapping_add(1)));
    (b >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// A reproducible trajectory of the random walk.
#[derive(Debug, Clone, Copy)]
pub struct WalkStream<'a, R: Real> {
    source: &'a GeneratorSet<R>,
    trajectory_index: u64,
}

impl<'a, R: Real> WalkStream<'a, R> {
    pub fn trajectory_index(&self) -> u64 {
        self.trajectory_index
    }

    pub fn source(&self) -> &'a GeneratorSet<R> {
        self.source
    }

    /// Generator index drawn at step `n`.
    pub fn index_at(&self, n: u64) -> usize {
        let u = uniform_at(self.source.seed, self.trajectory_index, n);
        self.source.pick_index(R::of(u))
    }

    /// First `n` generator indices of the word.
    pub fn sample_indices(&self, n: usize) -> Vec<usize> {
        (0..n as u64).map(|k| self.index_at(k)).collect()
    }

    /// First `n` generator labels of the word.
    pub fn sample_word(&self, n: usize) -> Vec<&'a str> {
        (0..n as u64)
            .map(|k| self.source.label(self.index_at(k)))
            .collect()
    }

    /// Orbit `[x, f_ω¹(x), …, f_ωⁿ(x)]`.
    pub fn iterate_point(&self, x: CirclePoint<R>, n: usize) -> Vec<CirclePoint<R>> {
        let mut orbit = Vec::with_capacity(n + 1);
        orbit.push(x);
        let mut cur = x;
        for k in 0..n as u64 {
            cur = self.source.map(self.index_at(k)).eval(cur);
            orbit.push(cur);
        }
        orbit
    }

    /// Arc images `[A, f_ω¹(A), …, f_ωⁿ(A)]` via repeated pushforward.
    pub fn iterate_interval(&self, arc: Arc<R>, n: usize) -> Result<Vec<Arc<R>>> {
        let mut arcs = Vec::with_capacity(n + 1);
        arcs.push(arc);
        let mut cur = arc;
        for k in 0..n as u64 {
            cur = self.source.map(self.index_at(k)).push_arc(&cur)?;
            arcs.push(cur);
        }
        Ok(arcs)
    }

    /// Two-point motion driven by the common noise.
    pub fn iterate_pair(
        &self,
        x: CirclePoint<R>,
        y: CirclePoint<R>,
        n: usize,
    ) -> Vec<(CirclePoint<R>, CirclePoint<R>)> {
        let mut orbit = Vec::with_capacity(n + 1);
        orbit.push((x, y));
        let (mut cx, mut cy) = (x, y);
        for k in 0..n as u64 {
            let f = self.source.map(self.index_at(k));
            cx = f.eval(cx);
            cy = f.eval(cy);
            orbit.push((cx, cy));
        }
        orbit
    }
}
