//! Piecewise-linear functions on a uniform circle grid: the carrier for
//! transfer-operator iterates and basin functions.

use serde::Serialize;

use crate::circle::CirclePoint;
use crate::num::Real;

/// Values at the nodes `j/m`; evaluation elsewhere interpolates linearly
/// around the circle, so the function is 1-periodic by construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridFunction<R: Real> {
    values: Vec<R>,
}

impl<R: Real> GridFunction<R> {
    pub fn new(values: Vec<R>) -> Self {
        assert!(values.len() >= 8, "grid resolution must be at least 8");
        GridFunction { values }
    }

    pub fn constant(resolution: usize, c: R) -> Self {
        GridFunction::new(vec![c; resolution])
    }

    pub fn from_fn(resolution: usize, f: impl Fn(CirclePoint<R>) -> R) -> Self {
        let m = R::count(resolution);
        GridFunction::new(
            (0..resolution)
                .map(|j| f(CirclePoint::new(R::count(j) / m)))
                .collect(),
        )
    }

    /// The test function `cos 2πx`.
    pub fn cosine(resolution: usize) -> Self {
        let tau = R::of(std::f64::consts::TAU);
        GridFunction::from_fn(resolution, |x: CirclePoint<R>| (x.value() * tau).cos())
    }

    pub fn resolution(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[R] {
        &self.values
    }

    pub fn eval(&self, x: CirclePoint<R>) -> R {
        let m = self.values.len();
        let pos = x.value() * R::count(m);
        let mut j = pos.floor().to_usize().unwrap_or(0);
        if j >= m {
            j = m - 1;
        }
        let t = pos - R::count(j);
        let a = self.values[j];
        let b = self.values[(j + 1) % m];
        a + (b - a) * t
    }

    pub fn sup_dist(&self, other: &GridFunction<R>) -> R {
        debug_assert_eq!(self.values.len(), other.values.len());
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(&a, &b)| (a - b).abs())
            .fold(R::zero(), R::max)
    }

    pub fn sup_norm(&self) -> R {
        self.values
            .iter()
            .map(|v| v.abs())
            .fold(R::zero(), R::max)
    }

    pub fn scale(&self, c: R) -> GridFunction<R> {
        GridFunction::new(self.values.iter().map(|&v| v * c).collect())
    }

    pub fn add(&self, other: &GridFunction<R>) -> GridFunction<R> {
        GridFunction::new(
            self.values
                .iter()
                .zip(other.values.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// `node,value` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,value\n");
        for (j, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{j},{v}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_reproduce_exactly() {
        let g = GridFunction::<f64>::cosine(64);
        for j in 0..64 {
            let x = CirclePoint::new(j as f64 / 64.0);
            assert_eq!(g.eval(x), g.values()[j]);
        }
    }

    #[test]
    fn evaluation_is_periodic() {
        let g = GridFunction::<f64>::cosine(32);
        for k in 0..97 {
            let x = k as f64 / 97.0;
            assert!(
                (g.eval(CirclePoint::new(x)) - g.eval(CirclePoint::new(x + 1.0))).abs() < 1e-15
            );
        }
    }

    #[test]
    fn csv_shape() {
        let g = GridFunction::<f64>::constant(8, 0.5);
        let csv = g.to_csv();
        assert!(csv.starts_with("node,value\n0,0.5\n"));
        assert_eq!(csv.lines().count(), 9);
    }

    #[test]
    fn interpolation_error_is_quadratic() {
        let g = GridFunction::<f64>::cosine(256);
        for k in 0..1000 {
            let x = k as f64 / 1000.0;
            let exact = (std::f64::consts::TAU * x).cos();
            assert!((g.eval(CirclePoint::new(x)) - exact).abs() < 1.0e-3);
        }
    }
}
