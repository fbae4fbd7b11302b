use num_traits::{Float, FromPrimitive};

/// Scalar type driving all circle arithmetic.
///
/// `f64` is the default instantiation used by the crate-root aliases;
/// `f32` works too, with coarser tolerances.
pub trait Real:
    Float + FromPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Absolute tolerance under which two circle points count as equal.
    fn point_tol() -> Self;

    /// Smallest pair distance still trusted after long compositions;
    /// log-distance regressions stop once the distance falls below it.
    fn dist_floor() -> Self;

    /// Lift an `f64` constant into the scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    /// Lift a count into the scalar type.
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }
}

impl Real for f64 {
    fn point_tol() -> Self {
        1e-12
    }
    fn dist_floor() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn point_tol() -> Self {
        1e-5
    }
    fn dist_floor() -> Self {
        1e-6
    }
}

/// Fractional part mapped into `[0, 1)`, with an exact `1.0` folded to `0.0`.
pub fn frac<R: Real>(x: R) -> R {
    let f = x - x.floor();
    if f >= R::one() {
        R::zero()
    } else {
        f
    }
}
