//! Circle arithmetic: points of S¹ ≅ [0, 1), oriented closed arcs, the
//! circle metric and diameters of finite point sets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::{frac, Real};

/// A point of the circle, stored as its canonical representative in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct CirclePoint<R: Real> {
    value: R,
}

impl<R: Real> CirclePoint<R> {
    /// Builds the point from any real representative (`x` and `x + k` agree).
    pub fn new(x: R) -> Self {
        CirclePoint { value: frac(x) }
    }

    pub fn value(self) -> R {
        self.value
    }

    /// The point shifted counterclockwise by `d`.
    pub fn offset(self, d: R) -> Self {
        CirclePoint::new(self.value + d)
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_to(self, other: CirclePoint<R>) -> R {
        frac(other.value - self.value)
    }

    /// Equality up to the scalar's point tolerance (wrap-aware).
    pub fn approx_eq(self, other: CirclePoint<R>) -> bool {
        circle_dist(self, other) <= R::point_tol()
    }
}

impl<R: Real> std::fmt::Display for CirclePoint<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Distance on the circle: `min(|a-b|, 1-|a-b|)`, valued in `[0, 1/2]`.
pub fn circle_dist<R: Real>(a: CirclePoint<R>, b: CirclePoint<R>) -> R {
    let d = (a.value - b.value).abs();
    d.min(R::one() - d)
}

/// A closed oriented arc: the set swept counterclockwise from `start` over
/// `length`. Length 1 is the full circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc<R: Real> {
    start: CirclePoint<R>,
    length: R,
}

impl<R: Real> Arc<R> {
    pub fn new(start: CirclePoint<R>, length: R) -> Self {
        assert!(
            length >= -R::point_tol() && length <= R::one() + R::point_tol(),
            "arc length {length} outside [0, 1]"
        );
        let length = length.max(R::zero()).min(R::one());
        Arc { start, length }
    }

    pub fn full() -> Self {
        Arc {
            start: CirclePoint::new(R::zero()),
            length: R::one(),
        }
    }

    pub fn start(&self) -> CirclePoint<R> {
        self.start
    }

    pub fn length(&self) -> R {
        self.length
    }

    /// The counterclockwise endpoint `start + length`.
    pub fn end(&self) -> CirclePoint<R> {
        self.start.offset(self.length)
    }

    pub fn midpoint(&self) -> CirclePoint<R> {
        self.start.offset(self.length / R::of(2.0))
    }

    pub fn is_full(&self) -> bool {
        self.length >= R::one()
    }

    /// Closed-arc membership, tolerant to one point-tolerance of wrap noise.
    pub fn contains(&self, x: CirclePoint<R>) -> bool {
        if self.is_full() {
            return true;
        }
        let d = self.start.ccw_to(x);
        d <= self.length + R::point_tol() || d >= R::one() - R::point_tol()
    }

    /// The complementary closed arc.
    pub fn complement(&self) -> Arc<R> {
        Arc::new(self.end(), R::one() - self.length)
    }

    /// Whether two closed arcs intersect.
    pub fn intersects(&self, other: &Arc<R>) -> bool {
        self.is_full()
            || other.is_full()
            || self.contains(other.start)
            || self.contains(other.end())
            || other.contains(self.start)
            || other.contains(self.end())
    }

    /// Distance from a point to the arc (0 when contained).
    pub fn dist_to(&self, x: CirclePoint<R>) -> R {
        if self.contains(x) {
            R::zero()
        } else {
            circle_dist(self.start, x).min(circle_dist(self.end(), x))
        }
    }
}

/// Length of the shortest arc containing all points: sort, then 1 minus the
/// largest gap between circular neighbours.
pub fn diam_points<R: Real>(xs: &[CirclePoint<R>]) -> Result<R> {
    if xs.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if xs.len() == 1 {
        return Ok(R::zero());
    }
    let mut vs: Vec<R> = xs.iter().map(|p| p.value()).collect();
    vs.sort_unstable_by(|a, b| a.partial_cmp(b).expect("circle points are finite"));
    let mut max_gap = vs[0] + R::one() - vs[vs.len() - 1];
    for w in vs.windows(2) {
        max_gap = max_gap.max(w[1] - w[0]);
    }
    Ok(R::one() - max_gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: f64) -> CirclePoint<f64> {
        CirclePoint::new(x)
    }

    #[test]
    fn dist_wraps() {
        assert!((circle_dist(p(0.1), p(0.9)) - 0.2).abs() < 1e-15);
        assert_eq!(circle_dist(p(0.37), p(0.37)), 0.0);
        assert_eq!(circle_dist(p(0.0), p(0.5)), 0.5);
    }

    #[test]
    fn representatives_agree() {
        assert!(p(0.3).approx_eq(p(2.3)));
        assert!(p(0.7).approx_eq(p(-0.3)));
        assert_eq!(p(1.0).value(), 0.0);
        assert_eq!(p(-1e-18).value(), 0.0);
    }

    #[test]
    fn arc_contains_cases() {
        let wrap = Arc::new(p(0.9), 0.2);
        assert!(wrap.contains(p(0.05)));
        assert!(!Arc::new(p(0.2), 0.1).contains(p(0.35)));
        assert!(Arc::full().contains(p(0.123)));
        // closed endpoints
        assert!(wrap.contains(p(0.9)));
        assert!(wrap.contains(p(0.1)));
    }

    #[test]
    fn diam_examples() {
        let ps: Vec<_> = [0.0, 0.1, 0.2].iter().map(|&x| p(x)).collect();
        assert!((diam_points(&ps).unwrap() - 0.2).abs() < 1e-15);
        let ps: Vec<_> = [0.95, 0.05].iter().map(|&x| p(x)).collect();
        assert!((diam_points(&ps).unwrap() - 0.1).abs() < 1e-15);
        assert_eq!(diam_points(&[p(0.4)]).unwrap(), 0.0);
        assert!(matches!(
            diam_points::<f64>(&[]),
            Err(Error::EmptyPointSet)
        ));
    }

    #[test]
    fn f32_instantiation() {
        let a = CirclePoint::<f32>::new(0.1);
        let b = CirclePoint::<f32>::new(0.9);
        assert!((circle_dist(a, b) - 0.2).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn triangle_inequality(a in 0.0..1.0f64, b in 0.0..1.0f64, c in 0.0..1.0f64) {
            let (a, b, c) = (p(a), p(b), p(c));
            prop_assert!(circle_dist(a, c) <= circle_dist(a, b) + circle_dist(b, c) + 1e-12);
        }

        #[test]
        fn pair_diam_is_dist(a in 0.0..1.0f64, b in 0.0..1.0f64) {
            let d = diam_points(&[p(a), p(b)]).unwrap();
            prop_assert!((d - circle_dist(p(a), p(b))).abs() < 1e-12);
        }

        #[test]
        fn contains_shift_invariant(s in 0.0..1.0f64, len in 0.0..1.0f64, x in 0.0..1.0f64) {
            let arc = Arc::new(p(s), len);
            prop_assert_eq!(arc.contains(p(x)), arc.contains(p(x + 1.0)));
        }

        #[test]
        fn diam_bounds(xs in proptest::collection::vec(0.0..1.0f64, 1..12)) {
            let ps: Vec<_> = xs.iter().map(|&x| p(x)).collect();
            let d = diam_points(&ps).unwrap();
            prop_assert!(d <= 1.0);
            for i in 0..ps.len() {
                for j in 0..ps.len() {
                    prop_assert!(d >= circle_dist(ps[i], ps[j]) - 1e-12);
                }
            }
        }
    }
}
