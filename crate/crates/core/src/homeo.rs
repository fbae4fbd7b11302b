//! Constructive circle homeomorphisms: rotations, projective (Möbius)
//! actions, piecewise-linear maps and explicit composites, with evaluation,
//! inverses, composition and pushforward of arcs.
//!
//! The Möbius variant acts on the projective line parametrized by
//! `x ∈ [0, 1) ↦ direction of angle πx`, so unimodular matrices act as
//! genuine orientation-preserving circle homeomorphisms.

use serde::Serialize;

use crate::circle::{Arc, CirclePoint};
use crate::error::{Error, Result};
use crate::num::{frac, Real};

/// Composites longer than this collapse to a piecewise-linear resample.
const COMPOSITE_CAP: usize = 64;

/// Grid used when collapsing a long composite.
const COLLAPSE_RESOLUTION: usize = 4096;

/// A piecewise-linear circle homeomorphism described by its lift.
///
/// Breakpoints `(xs[i], ys[i])` have strictly increasing inputs in `[0, 1)`;
/// the lift closes with `(xs[0] + 1, ys[0] + degree)`. All segment slopes
/// must be nonzero and share the sign of `degree`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlMap<R: Real> {
    xs: Vec<R>,
    ys: Vec<R>,
    degree: i8,
}

impl<R: Real> PlMap<R> {
    fn validate(xs: &[R], ys: &[R]) -> Result<i8> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(Error::NotHomeomorphism);
        }
        for w in xs.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::NotHomeomorphism);
            }
        }
        if xs[0] < R::zero() || *xs.last().unwrap() >= R::one() {
            return Err(Error::NotHomeomorphism);
        }
        let increasing = ys[1] > ys[0];
        let degree = if increasing { 1i8 } else { -1i8 };
        let deg_r = R::of(degree as f64);
        let mut prev = ys[0];
        for &y in &ys[1..] {
            if (y - prev) * deg_r <= R::zero() {
                return Err(Error::NotHomeomorphism);
            }
            prev = y;
        }
        // closing segment back to (xs[0] + 1, ys[0] + degree)
        if (ys[0] + deg_r - prev) * deg_r <= R::zero() {
            return Err(Error::NotHomeomorphism);
        }
        Ok(degree)
    }

    pub fn new(breakpoints: Vec<(R, R)>) -> Result<Self> {
        let xs: Vec<R> = breakpoints.iter().map(|b| b.0).collect();
        let ys: Vec<R> = breakpoints.iter().map(|b| b.1).collect();
        let degree = Self::validate(&xs, &ys)?;
        Ok(PlMap { xs, ys, degree })
    }

    pub fn degree(&self) -> i8 {
        self.degree
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (R, R)> + '_ {
        self.xs.iter().copied().zip(self.ys.iter().copied())
    }

    /// Lift value at `x ∈ [0, 1)` (output relative to the stored lift).
    fn lift_in_period(&self, x: R) -> R {
        debug_assert!(x >= R::zero() && x < R::one());
        let deg = R::of(self.degree as f64);
        // shift x into [xs[0], xs[0] + 1)
        let (x, wrap) = if x < self.xs[0] {
            (x + R::one(), -deg)
        } else {
            (x, R::zero())
        };
        // last segment index with xs[i] <= x
        let i = match self
            .xs
            .binary_search_by(|v| v.partial_cmp(&x).expect("finite"))
        {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let (x0, y0) = (self.xs[i], self.ys[i]);
        let (x1, y1) = if i + 1 < self.xs.len() {
            (self.xs[i + 1], self.ys[i + 1])
        } else {
            (self.xs[0] + R::one(), self.ys[0] + deg)
        };
        y0 + (x - x0) * ((y1 - y0) / (x1 - x0)) + wrap
    }

    fn eval(&self, x: CirclePoint<R>) -> CirclePoint<R> {
        CirclePoint::new(self.lift_in_period(x.value()))
    }

    fn inverse(&self) -> PlMap<R> {
        let deg = R::of(self.degree as f64);
        let mut pts: Vec<(R, R)> = self
            .xs
            .iter()
            .zip(self.ys.iter())
            .map(|(&x, &y)| {
                let k = y.floor();
                // G(frac(y)) maps back to x, corrected for the lift shift
                (frac(y), x - k * deg)
            })
            .collect();
        pts.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        let xs: Vec<R> = pts.iter().map(|p| p.0).collect();
        let ys: Vec<R> = pts.iter().map(|p| p.1).collect();
        debug_assert!(Self::validate(&xs, &ys).is_ok());
        PlMap {
            xs,
            ys,
            degree: self.degree,
        }
    }
}

/// A circle homeomorphism in one of four constructive representations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Homeo<R: Real> {
    Rotation { angle: R },
    Mobius { matrix: [[R; 2]; 2] },
    PiecewiseLinear(PlMap<R>),
    Composite { factors: Vec<Homeo<R>> },
}

impl<R: Real> Homeo<R> {
    pub fn identity() -> Self {
        Homeo::Rotation { angle: R::zero() }
    }

    pub fn rotation(angle: R) -> Self {
        Homeo::Rotation { angle: frac(angle) }
    }

    /// Projective action of a unimodular matrix. Rejects `|det - 1| > 1e-9`.
    pub fn mobius(matrix: [[R; 2]; 2]) -> Result<Self> {
        let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
        if (det - R::one()).abs() > R::of(1e-9) {
            return Err(Error::NotUnimodular);
        }
        Ok(Homeo::Mobius { matrix })
    }

    /// Matrix of the rotation by angle `π·turns` on directions (shifts the
    /// circle coordinate by `turns`).
    pub fn mobius_rotation(turns: R) -> Self {
        let a = turns * R::of(std::f64::consts::PI);
        Homeo::Mobius {
            matrix: [[a.cos(), -a.sin()], [a.sin(), a.cos()]],
        }
    }

    pub fn piecewise_linear(breakpoints: Vec<(R, R)>) -> Result<Self> {
        Ok(Homeo::PiecewiseLinear(PlMap::new(breakpoints)?))
    }

    /// North-south map: attracting fixed point `a` with slope `s < 1`,
    /// repelling fixed point `b` with slope `1/s`.
    pub fn north_south(a: CirclePoint<R>, b: CirclePoint<R>, s: R) -> Result<Self> {
        if !(s > R::zero() && s < R::one()) {
            return Err(Error::NotHomeomorphism);
        }
        let l1 = a.ccw_to(b);
        let l2 = R::one() - l1;
        if l1 <= R::zero() || l2 <= R::zero() {
            return Err(Error::NotHomeomorphism);
        }
        let av = a.value();
        // slope s on [a, m1], 1/s on [m1, b], 1/s on [b, m2], s on [m2, a+1]
        let m1 = av + l1 / (R::one() + s);
        let f_m1 = av + s * l1 / (R::one() + s);
        let bv = av + l1;
        let m2 = bv + s * l2 / (R::one() + s);
        let f_m2 = bv + l2 / (R::one() + s);
        let pts = [(av, av), (m1, f_m1), (bv, bv), (m2, f_m2)];
        let mut bps: Vec<(R, R)> = pts
            .iter()
            .map(|&(x, y)| {
                let k = x.floor();
                (frac(x), y - k)
            })
            .collect();
        bps.sort_unstable_by(|p, q| p.0.partial_cmp(&q.0).expect("finite"));
        Homeo::piecewise_linear(bps)
    }

    /// Degree of the lift: +1 orientation-preserving, -1 reversing.
    pub fn orientation(&self) -> i8 {
        match self {
            Homeo::Rotation { .. } | Homeo::Mobius { .. } => 1,
            Homeo::PiecewiseLinear(pl) => pl.degree(),
            Homeo::Composite { factors } => factors.iter().map(|f| f.orientation()).product(),
        }
    }

    /// Value of the homeomorphism at `x`.
    pub fn eval(&self, x: CirclePoint<R>) -> CirclePoint<R> {
        match self {
            Homeo::Rotation { angle } => x.offset(*angle),
            Homeo::Mobius { matrix } => {
                let theta = x.value() * R::of(std::f64::consts::PI);
                let (c, s) = (theta.cos(), theta.sin());
                let wx = matrix[0][0] * c + matrix[0][1] * s;
                let wy = matrix[1][0] * c + matrix[1][1] * s;
                CirclePoint::new(wy.atan2(wx) / R::of(std::f64::consts::PI))
            }
            Homeo::PiecewiseLinear(pl) => pl.eval(x),
            Homeo::Composite { factors } => factors.iter().fold(x, |y, f| f.eval(y)),
        }
    }

    /// The inverse homeomorphism.
    pub fn inverse(&self) -> Homeo<R> {
        match self {
            Homeo::Rotation { angle } => Homeo::rotation(R::one() - *angle),
            Homeo::Mobius { matrix } => {
                let m = matrix;
                Homeo::Mobius {
                    matrix: [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]],
                }
            }
            Homeo::PiecewiseLinear(pl) => Homeo::PiecewiseLinear(pl.inverse()),
            Homeo::Composite { factors } => Homeo::Composite {
                factors: factors.iter().rev().map(|f| f.inverse()).collect(),
            },
        }
    }

    fn push_factors(self, out: &mut Vec<Homeo<R>>) {
        match self {
            Homeo::Composite { factors } => {
                for f in factors {
                    f.push_factors(out);
                }
            }
            other => {
                // merge algebraically with the previous factor when possible
                match (out.last_mut(), &other) {
                    (Some(Homeo::Rotation { angle: a }), Homeo::Rotation { angle: b }) => {
                        *a = frac(*a + *b);
                        return;
                    }
                    (Some(Homeo::Mobius { matrix: ma }), Homeo::Mobius { matrix: mb }) => {
                        // factors apply left-to-right, so the merged matrix is mb·ma
                        let m = mat_mul(mb, ma);
                        *ma = renormalize(m);
                        return;
                    }
                    _ => {}
                }
                out.push(other);
            }
        }
    }

    /// Resample onto a `resolution`-node piecewise-linear map; returns the
    /// maximum error observed at 16 probe points.
    pub fn collapse_to_pl(&self, resolution: usize) -> (Homeo<R>, R) {
        let m = resolution.max(8);
        let deg = R::of(self.orientation() as f64);
        let mut bps = Vec::with_capacity(m);
        let mut prev = R::zero();
        let mut shift = R::zero();
        for j in 0..m {
            let x = R::count(j) / R::count(m);
            let raw = self.eval(CirclePoint::new(x)).value();
            let mut y = raw + shift;
            // unwrap into a monotone lift
            if j > 0 && (y - prev) * deg <= R::zero() {
                shift = shift + deg;
                y = raw + shift;
            }
            bps.push((x, y));
            prev = y;
        }
        let pl = Homeo::piecewise_linear(bps).expect("resampled lift is monotone");
        let mut err = R::zero();
        for k in 0..16usize {
            let x = CirclePoint::new(R::of(k as f64 / 16.0 + 0.3 / 97.0));
            err = err.max(crate::circle::circle_dist(pl.eval(x), self.eval(x)));
        }
        (pl, err)
    }

    /// Image of a proper arc. Errors on full-circle input (the image is the
    /// full circle; callers special-case it).
    pub fn push_arc(&self, arc: &Arc<R>) -> Result<Arc<R>> {
        if arc.is_full() {
            return Err(Error::FullCircleImage);
        }
        let fp = self.eval(arc.start());
        let fq = self.eval(arc.end());
        if self.orientation() >= 0 {
            let len = if arc.length() == R::zero() {
                R::zero()
            } else {
                frac(fq.value() - fp.value())
            };
            Ok(Arc::new(fp, len))
        } else {
            let len = if arc.length() == R::zero() {
                R::zero()
            } else {
                frac(fp.value() - fq.value())
            };
            Ok(Arc::new(fq, len))
        }
    }
}

/// `g ∘ f`: apply `f` first, then `g`. Composite factors are flattened,
/// mergeable neighbours merged, and composites past the cap collapsed to a
/// piecewise-linear resample.
pub fn compose<R: Real>(g: &Homeo<R>, f: &Homeo<R>) -> Homeo<R> {
    let mut factors = Vec::new();
    f.clone().push_factors(&mut factors);
    g.clone().push_factors(&mut factors);
    let h = match factors.len() {
        0 => Homeo::identity(),
        1 => factors.pop().unwrap(),
        _ => Homeo::Composite { factors },
    };
    if let Homeo::Composite { factors } = &h {
        if factors.len() > COMPOSITE_CAP {
            return h.collapse_to_pl(COLLAPSE_RESOLUTION).0;
        }
    }
    h
}

fn mat_mul<R: Real>(a: &[[R; 2]; 2], b: &[[R; 2]; 2]) -> [[R; 2]; 2] {
    let mut out = [[R::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Rescale so the determinant returns to 1 (controls drift across merges).
fn renormalize<R: Real>(m: [[R; 2]; 2]) -> [[R; 2]; 2] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det <= R::zero() {
        return m;
    }
    let s = det.sqrt().recip();
    [[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]]
}

/// An injective continuous self-map of `[0, 1]`, embedded in the circle as
/// the arc `[0, scale]` and extended to a homeomorphism outside it.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalMap<R: Real> {
    map: Homeo<R>,
    domain: Arc<R>,
    scale: R,
}

impl<R: Real> IntervalMap<R> {
    /// Embeds `t ↦ slope·t + intercept` (strictly increasing, image inside
    /// `[0, 1]`), closing the lift linearly over the complementary arc.
    pub fn affine(slope: R, intercept: R, scale: R) -> Result<Self> {
        Self::from_breakpoints(
            vec![(R::zero(), intercept), (R::one(), slope + intercept)],
            scale,
            &[],
        )
    }

    /// Embeds a piecewise-linear interval map given by `(t, f(t))` pairs with
    /// `t` covering `[0, 1]`. `extension` lists extra circle-coordinate
    /// breakpoints shaping the complementary arc; by default the lift closes
    /// with a single segment.
    pub fn from_breakpoints(
        interval_breaks: Vec<(R, R)>,
        scale: R,
        extension: &[(R, R)],
    ) -> Result<Self> {
        if !(scale > R::zero() && scale < R::one()) {
            return Err(Error::NotHomeomorphism);
        }
        let mut bps: Vec<(R, R)> = Vec::new();
        for &(t, u) in &interval_breaks {
            if t < R::zero() || t > R::one() || u < R::zero() || u > R::one() {
                return Err(Error::NotHomeomorphism);
            }
            if t < R::one() {
                bps.push((scale * t, scale * u));
            } else {
                // t = 1 lands at the embedded right endpoint
                bps.push((scale, scale * u));
            }
        }
        for &(x, y) in extension {
            if x <= scale || x >= R::one() {
                return Err(Error::NotHomeomorphism);
            }
            bps.push((x, y));
        }
        let map = Homeo::piecewise_linear(bps)?;
        Ok(IntervalMap {
            map,
            domain: Arc::new(CirclePoint::new(R::zero()), scale),
            scale,
        })
    }

    pub fn homeo(&self) -> &Homeo<R> {
        &self.map
    }

    pub fn domain(&self) -> Arc<R> {
        self.domain
    }

    pub fn scale(&self) -> R {
        self.scale
    }

    /// Circle point of an interval coordinate `t ∈ [0, 1]`.
    pub fn embed(&self, t: R) -> CirclePoint<R> {
        CirclePoint::new(t * self.scale)
    }

    /// Interval length of a circle arc inside the domain.
    pub fn interval_length(&self, arc: &Arc<R>) -> R {
        arc.length() / self.scale
    }

    /// The embedded copy of a subinterval `[a, b] ⊆ [0, 1]`.
    pub fn embed_interval(&self, a: R, b: R) -> Arc<R> {
        Arc::new(self.embed(a), (b - a) * self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::circle_dist;
    use proptest::prelude::*;

    fn p(x: f64) -> CirclePoint<f64> {
        CirclePoint::new(x)
    }

    fn diag() -> Homeo<f64> {
        Homeo::mobius([[2.0, 0.0], [0.0, 0.5]]).unwrap()
    }

    #[test]
    fn rotation_eval() {
        let r = Homeo::rotation(0.25);
        assert_eq!(r.eval(p(0.5)).value(), 0.75);
    }

    #[test]
    fn mobius_fixed_directions() {
        let m = diag();
        assert!(m.eval(p(0.0)).approx_eq(p(0.0)));
        assert!(m.eval(p(0.5)).approx_eq(p(0.5)));
    }

    #[test]
    fn mobius_closed_form() {
        // tan(πx') = tan(πx)/4 for diag(2, 1/2); cross-check the matrix route
        // against the closed form at x = 1/4.
        let m = diag();
        let expected = (0.25f64.atan()) / std::f64::consts::PI;
        let got = m.eval(p(0.25)).value();
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
        assert!((got - 0.07798).abs() < 5e-6);
    }

    #[test]
    fn mobius_rejects_non_unimodular() {
        assert!(matches!(
            Homeo::mobius([[2.0, 0.0], [0.0, 2.0]]),
            Err(Error::NotUnimodular)
        ));
    }

    #[test]
    fn pl_rejects_flat_segment() {
        assert!(matches!(
            Homeo::piecewise_linear(vec![(0.0, 0.1), (0.5, 0.1), (0.75, 0.5)]),
            Err(Error::NotHomeomorphism)
        ));
    }

    #[test]
    fn inverse_examples() {
        let r = Homeo::<f64>::rotation(0.3).inverse();
        match r {
            Homeo::Rotation { angle } => assert!((angle - 0.7f64).abs() < 1e-15),
            _ => panic!("rotation inverse should stay a rotation"),
        }
        let id = Homeo::<f64>::identity();
        assert!(id.inverse().eval(p(0.42)).approx_eq(p(0.42)));
        match diag().inverse() {
            Homeo::Mobius { matrix } => {
                assert!((matrix[0][0] - 0.5).abs() < 1e-15);
                assert!((matrix[1][1] - 2.0).abs() < 1e-15);
            }
            _ => panic!("mobius inverse should stay mobius"),
        }
    }

    #[test]
    fn compose_merges_rotations() {
        let h = compose(&Homeo::<f64>::rotation(0.25), &Homeo::rotation(0.5));
        match h {
            Homeo::Rotation { angle } => assert!((angle - 0.75f64).abs() < 1e-15),
            _ => panic!("rotations should merge"),
        }
    }

    #[test]
    fn compose_merges_mobius() {
        let a = diag();
        let b = Homeo::mobius_rotation(0.25);
        let h = compose(&a, &b);
        match &h {
            Homeo::Mobius { .. } => {}
            _ => panic!("mobius factors should merge"),
        }
        for k in 0..32 {
            let x = p(k as f64 / 32.0);
            assert!(h.eval(x).approx_eq(a.eval(b.eval(x))));
        }
    }

    #[test]
    fn compose_with_identity() {
        let ns = Homeo::north_south(p(0.25), p(0.75), 0.5).unwrap();
        let h = compose(&ns, &Homeo::identity());
        for k in 0..64 {
            let x = p(k as f64 / 64.0);
            assert!(h.eval(x).approx_eq(ns.eval(x)));
        }
    }

    #[test]
    fn north_south_shape() {
        let ns = Homeo::north_south(p(0.25), p(0.75), 0.5).unwrap();
        let (a, b) = (p(0.25), p(0.75));
        assert!(ns.eval(a).approx_eq(a));
        assert!(ns.eval(b).approx_eq(b));
        // every other point strictly approaches the attractor
        for &x in &[0.0, 0.1, 0.5, 0.6, 0.9, 0.74, 0.76] {
            let x = p(x);
            assert!(circle_dist(ns.eval(x), a) < circle_dist(x, a), "at {x}");
        }
        // iterates of a generic point converge to the attractor
        let mut x = p(0.6);
        for _ in 0..80 {
            x = ns.eval(x);
        }
        assert!(circle_dist(x, p(0.25)) < 1e-9);
    }

    #[test]
    fn push_arc_examples() {
        let r = Homeo::rotation(0.25);
        let a = Arc::new(p(0.0), 0.1);
        let img = r.push_arc(&a).unwrap();
        assert!(img.start().approx_eq(p(0.25)));
        assert!((img.length() - 0.1).abs() < 1e-15);

        let id = Homeo::<f64>::identity();
        let img = id.push_arc(&a).unwrap();
        assert!(img.start().approx_eq(a.start()));
        assert_eq!(img.length(), a.length());

        assert!(matches!(
            r.push_arc(&Arc::full()),
            Err(Error::FullCircleImage)
        ));
    }

    #[test]
    fn push_arc_mobius_against_samples() {
        // endpoint route vs the tan closed form for the length, and against
        // the diameter of 100 pushed sample points
        let m = diag();
        let a = Arc::new(p(0.2), 0.1);
        let img = m.push_arc(&a).unwrap();
        let xp = |t: f64| ((std::f64::consts::PI * t).tan() / 4.0).atan() / std::f64::consts::PI;
        let expected = xp(0.3) - xp(0.2);
        assert!((img.length() - expected).abs() < 1e-12);
        let pushed: Vec<_> = (0..=100)
            .map(|k| m.eval(p(0.2 + 0.1 * k as f64 / 100.0)))
            .collect();
        let d = crate::circle::diam_points(&pushed).unwrap();
        assert!((d - img.length()).abs() < 1e-9);
    }

    #[test]
    fn collapse_error_is_monitored() {
        // alternate non-mergeable factors past the cap: the chain must
        // collapse along the way and the probe error stay small
        let a = diag();
        let b = Homeo::rotation(std::f64::consts::SQRT_2 - 1.0);
        let mut h = Homeo::identity();
        let mut collapsed = false;
        for k in 0..100 {
            h = compose(if k % 2 == 0 { &a } else { &b }, &h);
            if matches!(h, Homeo::PiecewiseLinear(_)) {
                collapsed = true;
            }
        }
        assert!(collapsed, "composite never hit the collapse cap");
        let (_, err) = h.collapse_to_pl(4096);
        assert!(err < 1e-3, "resample probe error {err}");
    }

    #[test]
    fn orientation_reversal() {
        // x -> 0.9 - x as a decreasing piecewise-linear map
        let flip = Homeo::piecewise_linear(vec![(0.0, 0.9), (0.5, 0.4)]).unwrap();
        assert_eq!(flip.orientation(), -1);
        assert!(flip.eval(p(0.2)).approx_eq(p(0.7)));
        // involution: the inverse agrees with the map itself
        let inv = flip.inverse();
        for k in 0..256 {
            let x = p(k as f64 / 256.0);
            assert!(inv.eval(x).approx_eq(flip.eval(x)));
            assert!(flip.eval(flip.eval(x)).approx_eq(x));
        }
        // orientation multiplies under composition
        let ns = Homeo::north_south(p(0.25), p(0.75), 0.5).unwrap();
        assert_eq!(compose(&flip, &ns).orientation(), -1);
        assert_eq!(compose(&flip, &flip).orientation(), 1);
        // pushforward of arcs under a reversing map keeps lengths of isometries
        let a = Arc::new(p(0.1), 0.2);
        let img = flip.push_arc(&a).unwrap();
        assert!((img.length() - 0.2).abs() < 1e-12);
        assert!(img.contains(flip.eval(p(0.15))));
    }

    #[test]
    fn interval_map_embedding() {
        let f = IntervalMap::affine(1.0 / 3.0, 0.0, 0.5).unwrap();
        assert!(f.homeo().eval(f.embed(0.9)).approx_eq(f.embed(0.3)));
        let img = f.homeo().push_arc(&f.domain()).unwrap();
        // image of the embedded interval stays inside the domain
        assert!(f.domain().contains(img.start()));
        assert!(f.domain().contains(img.end()));
        assert!((f.interval_length(&img) - 1.0f64 / 3.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn inverse_roundtrip_rotation(angle in 0.0..1.0f64, x in 0.0..1.0f64) {
            let f = Homeo::rotation(angle);
            let y = f.inverse().eval(f.eval(p(x)));
            prop_assert!(y.approx_eq(p(x)));
        }

        #[test]
        fn complement_lengths_sum(start in 0.0..1.0f64, len in 0.001..0.999f64, s in 0.3..0.7f64) {
            let ns = Homeo::north_south(p(0.25), p(0.75), s).unwrap();
            let a = Arc::new(p(start), len);
            let img = ns.push_arc(&a).unwrap();
            let imgc = ns.push_arc(&a.complement()).unwrap();
            prop_assert!((img.length() + imgc.length() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn inverse_roundtrip_on_grid() {
        let maps: Vec<Homeo<f64>> = vec![
            Homeo::rotation(0.37),
            diag(),
            Homeo::north_south(p(0.1), p(0.6), 0.4).unwrap(),
            compose(&diag(), &Homeo::mobius_rotation(0.15)),
        ];
        for f in &maps {
            let g = f.inverse();
            for k in 0..1024 {
                let x = p(k as f64 / 1024.0);
                let y = g.eval(f.eval(x));
                assert!(
                    circle_dist(x, y) < 1e-9,
                    "roundtrip failed for {f:?} at {x}"
                );
            }
        }
    }

    #[test]
    fn lift_is_monotone_and_periodic() {
        let maps: Vec<Homeo<f64>> = vec![
            diag(),
            Homeo::north_south(p(0.25), p(0.75), 0.5).unwrap(),
            Homeo::mobius_rotation(0.3),
        ];
        for f in &maps {
            assert_eq!(f.orientation(), 1);
            // injectivity on a grid: strictly increasing image gaps
            let n = 2048;
            let mut prev = f.eval(p(0.0)).value();
            let mut wraps = 0;
            for k in 1..n {
                let y = f.eval(p(k as f64 / n as f64)).value();
                if y < prev {
                    wraps += 1;
                } else {
                    assert!(y > prev, "not strictly monotone for {f:?} at {k}");
                }
                prev = y;
            }
            assert!(wraps <= 1, "lift wrapped {wraps} times for {f:?}");
        }
    }
}
