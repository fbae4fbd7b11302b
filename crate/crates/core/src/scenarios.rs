//! A named catalog of generator sets realizing each dynamical regime the
//! library distinguishes, used by the tests and the CLI.

use serde::Serialize;

use crate::circle::CirclePoint;
use crate::error::{Error, Result};
use crate::homeo::{Homeo, IntervalMap};
use crate::num::Real;
use crate::operators::Verdict;
use crate::walk::GeneratorSet;

/// Expected qualitative sign of the approximated entropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EntropySign {
    NearZero,
    Positive,
}

/// Verdicts a scenario is expected to produce; every populated field is
/// asserted by the acceptance suite.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Expected {
    pub trichotomy: Option<Verdict>,
    pub ergodic_components: Option<usize>,
    pub period: Option<usize>,
    pub synchronizes: Option<bool>,
    pub entropy_sign: Option<EntropySign>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Scenario<R: Real> {
    pub name: String,
    pub generator_set: GeneratorSet<R>,
    pub expected: Expected,
    /// A start point whose trajectory reaches a representative stationary
    /// regime (used by entropy and decomposition experiments).
    pub generic_start: CirclePoint<R>,
    /// Scale of the embedded unit interval for interval scenarios.
    pub interval_scale: Option<R>,
}

pub const CATALOG: &[&str] = &[
    "rotations",
    "pingpong-interval",
    "halving-fixed",
    "north-south-rotation",
    "sl2-hyperbolic",
    "two-basins",
    "swap-2",
    "common-fixed-point",
    "north-south",
];

pub fn catalog_list() -> String {
    CATALOG.join(", ")
}

/// Deterministic construction of a named scenario.
pub fn build_scenario<R: Real>(name: &str, seed: u64) -> Result<Scenario<R>> {
    let c = R::of(0.5); // embedding scale of the interval scenarios
    match name {
        "rotations" => {
            let gs = GeneratorSet::new(
                vec![
                    ("quarter", Homeo::rotation(R::of(0.25)), R::one()),
                    ("root5", Homeo::rotation(R::of(5.0).sqrt() - R::of(2.0)), R::one()),
                ],
                seed,
            )?;
            Ok(Scenario {
                name: name.into(),
                generator_set: gs,
                expected: Expected {
                    trichotomy: Some(Verdict::IsometryLike),
                    ergodic_components: Some(1),
                    period: Some(1),
                    synchronizes: Some(false),
                    entropy_sign: Some(EntropySign::NearZero),
                },
                generic_start: CirclePoint::new(R::zero()),
                interval_scale: None,
            })
        }
        "pingpong-interval" => {
            let third = R::one() / R::of(3.0);
            let f1 = IntervalMap::affine(third, R::zero(), c)?;
            let f2 = IntervalMap::affine(third, R::of(2.0) / R::of(3.0), c)?;
            let gs = GeneratorSet::new(
                vec![
                    ("low", f1.homeo().clone(), R::one()),
                    ("high", f2.homeo().clone(), R::one()),
                ],
                seed,
            )?;
            Ok(Scenario {
                name: name.into(),
                generator_set: gs,
                expected: Expected {
                    trichotomy: Some(Verdict::LocallyContracting),
                    ergodic_components: Some(1),
                    period: Some(1),
                    synchronizes: Some(true),
                    entropy_sign: Some(EntropySign::Positive),
                },
                generic_start: CirclePoint::new(R::zero()),
                interval_scale: Some(c),
            })
        }
        "halving-fixed" => {
            let half = R::of(0.5);
            let f1 = IntervalMap::affine(half, R::zero(), c)?;
            let f2 = IntervalMap::affine(half, half, c)?;
            let gs = GeneratorSet::new(
                vec![
                    ("low", f1.homeo().clone(), R::one()),
                    ("high", f2.homeo().clone(), R::one()),
                ],
                seed,
            )?;
            Ok(Scenario {
                name: name.into(),
                generator_set: gs,
                expected: Expected {
                    trichotomy: Some(Verdict::LocallyContracting),
                    ergodic_components: Some(1),
                    period: Some(1),
                    synchronizes: Some(true),
                    entropy_sign: Some(EntropySign::Positive),
                },
                generic_start: CirclePoint::new(R::of(0.05)),
                interval_scale: Some(c),
            })
        }
        "north-south-rotation" => {
            let ns = Homeo::north_south(
                CirclePoint::new(R::of(0.25)),
                CirclePoint::new(R::of(0.75)),
                R::of(0.5),
            )?;
            let gs = GeneratorSet::new(
                vec![
                    ("ns", ns, R::one()),
                    ("rot", Homeo::rotation(R::of(2.0).sqrt() - R::one()), R::one()),
                ],
                seed,
            )?;
            Ok(Scenario {
                name: name.into(),
                generator_set: gs,
                expected: Expected {
                    trichotomy: Some(Verdict::LocallyContracting),
                    ergodic_components: Some(1),
                    period: Some(1),
                    synchronizes: Some(true),
                    entropy_sign: Some(EntropySign::Positive),
                },
                generic_start: CirclePoint::new(R::of(0.3)),
                interval_scale: None,
            })
        }
        "sl2-hyperbolic" => {
            let hyper = Homeo::mobius([
                [R::of(2.0), R::zero()],
                [R::zero(), R::of(0.5)],
            ])?;
            let gs = GeneratorSet::new(
                vec![
                    ("hyperbolic", hyper, R::one()),
                    ("rot8", Homeo::mobius_rotation(R::of(0.25)), R::one()),
                ],
                seed,
            )?;
            Ok(Scenario {
                name: name.into(),
                generator_set: gs,
                expected: Expected {
                    trichotomy: Some(Verdict::LocallyContracting),
                    ergodic_components: None,
                    period: Some(1),
                    synchronizes: Some(true),
                    entropy_sign: Some(EntropySign::Positive),
                },
                generic_start: CirclePoint::new(R::of(0.15)),
                interval_scale: None,
            })
        }
        "two-basins" => {
            // two invariant arcs A = (0.0, 0.4) and B = (0.5, 0.4); both
            // generators contract each arc into itself with margin 0.02
            let g1 = Homeo::piecewise_linear(vec![
                (R::zero(), R::of(0.02)),
                (R::of(0.4), R::of(0.14)),
                (R::of(0.5), R::of(0.52)),
                (R::of(0.9), R::of(0.64)),
            ])?;
            let g2 = Homeo::piecewise_linear(vec![
                (R::zero(), R::of(0.26)),
                (R::of(0.4), R::of(0.38)),
                (R::of(0.5), R::of(0.76)),
                (R::of(0.9), R::of(0.88)),
            ])?;
            let gs = GeneratorSet::new(
                vec![("down", g1, R::one()), ("up", g2, R::one())],
                seed,
            )?;
            Ok(Scenario {
                name: name.into(),
                generator_set: gs,
                expected: Expected {
                    trichotomy: Some(Verdict::LocallyContracting),
                    ergodic_components: Some(2),
                    period: Some(1),
                    synchronizes: Some(false),
                    entropy_sign: Some(EntropySign::Positive),
                },
                generic_start: CirclePoint::new(R::of(0.1)),
                interval_scale: None,
            })
        }
        "swap-2" => {
            // both generators exchange A = (0.05, 0.25) and B = (0.55, 0.25),
            // contracting strictly into the interiors
            let g1 = Homeo::piecewise_linear(vec![
                (R::of(0.05), R::of(0.60)),
                (R::of(0.30), R::of(0.75)),
                (R::of(0.55), R::of(1.10)),
                (R::of(0.80), R::of(1.25)),
            ])?;
            let g2 = Homeo::piecewise_linear(vec![
                (R::of(0.05), R::of(0.635)),
                (R::of(0.30), R::of(0.71)),
                (R::of(0.55), R::of(1.13)),
                (R::of(0.80), R::of(1.205)),
            ])?;
            let gs = GeneratorSet::new(
                vec![("swap-a", g1, R::one()), ("swap-b", g2, R::one())],
                seed,
            )?;
            Ok(Scenario {
                name: name.into(),
                generator_set: gs,
                expected: Expected {
                    trichotomy: Some(Verdict::LocallyContracting),
                    ergodic_components: Some(1),
                    period: Some(2),
                    synchronizes: Some(false),
                    entropy_sign: Some(EntropySign::Positive),
                },
                generic_start: CirclePoint::new(R::of(0.1)),
                interval_scale: None,
            })
        }
        "common-fixed-point" => {
            // interval maps fixing both endpoints, with interior attracting
            // points; the extension over the complementary arc drifts to the
            // shared fixed point at 0
            let f1 = IntervalMap::from_breakpoints(
                vec![
                    (R::zero(), R::zero()),
                    (R::of(0.25), R::of(0.45)),
                    (R::of(0.5), R::of(0.5)),
                    (R::of(0.75), R::of(0.55)),
                    (R::one(), R::one()),
                ],
                c,
                &[(R::of(0.75), R::of(0.85))],
            )?;
            let f2 = IntervalMap::from_breakpoints(
                vec![
                    (R::zero(), R::zero()),
                    (R::of(0.3), R::of(0.5)),
                    (R::of(0.6), R::of(0.55)),
                    (R::one(), R::one()),
                ],
                c,
                &[(R::of(0.75), R::of(0.83))],
            )?;
            let gs = GeneratorSet::new(
                vec![
                    ("pinch", f1.homeo().clone(), R::one()),
                    ("tilt", f2.homeo().clone(), R::one()),
                ],
                seed,
            )?;
            Ok(Scenario {
                name: name.into(),
                generator_set: gs,
                expected: Expected {
                    trichotomy: Some(Verdict::FiniteOrbitLike),
                    ergodic_components: None,
                    period: Some(1),
                    synchronizes: Some(false),
                    entropy_sign: Some(EntropySign::Positive),
                },
                generic_start: CirclePoint::new(R::of(0.15)),
                interval_scale: Some(c),
            })
        }
        "north-south" => {
            let ns = Homeo::north_south(
                CirclePoint::new(R::of(0.25)),
                CirclePoint::new(R::of(0.75)),
                R::of(0.5),
            )?;
            let gs = GeneratorSet::new(vec![("ns", ns, R::one())], seed)?;
            Ok(Scenario {
                name: name.into(),
                generator_set: gs,
                expected: Expected {
                    trichotomy: Some(Verdict::FiniteOrbitLike),
                    ergodic_components: None,
                    period: Some(1),
                    synchronizes: None,
                    entropy_sign: None,
                },
                generic_start: CirclePoint::new(R::of(0.4)),
                interval_scale: None,
            })
        }
        _ => Err(Error::UnknownScenario {
            name: name.to_string(),
            catalog: catalog_list(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::{circle_dist, Arc};

    #[test]
    fn rotations_have_two_equal_weights() {
        let s = build_scenario::<f64>("rotations", 9).unwrap();
        let gs = &s.generator_set;
        assert_eq!(gs.len(), 2);
        for g in gs.generators() {
            assert!((g.weight - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn unknown_name_lists_catalog() {
        match build_scenario::<f64>("nope", 0) {
            Err(Error::UnknownScenario { catalog, .. }) => {
                assert!(catalog.contains("swap-2"));
            }
            other => panic!("expected catalog error, got {other:?}"),
        }
    }

    #[test]
    fn catalog_constructions_are_pure() {
        for name in CATALOG {
            let a = build_scenario::<f64>(name, 5).unwrap();
            let b = build_scenario::<f64>(name, 5).unwrap();
            for (ga, gb) in a
                .generator_set
                .generators()
                .iter()
                .zip(b.generator_set.generators())
            {
                assert_eq!(ga.label, gb.label);
                for k in 0..257 {
                    let x = CirclePoint::new(k as f64 / 257.0);
                    assert_eq!(ga.map.eval(x).value(), gb.map.eval(x).value());
                }
            }
        }
    }

    #[test]
    fn every_catalog_map_is_a_homeomorphism() {
        for name in CATALOG {
            let s = build_scenario::<f64>(name, 3).unwrap();
            for g in s.generator_set.generators() {
                let inv = g.map.inverse();
                for k in 0..512 {
                    let x = CirclePoint::new(k as f64 / 512.0);
                    let y = inv.eval(g.map.eval(x));
                    assert!(
                        circle_dist(x, y) < 1e-9,
                        "{name}/{} fails inversion at {x}",
                        g.label
                    );
                }
            }
        }
    }

    #[test]
    fn swap2_exchanges_the_arcs_strictly() {
        let s = build_scenario::<f64>("swap-2", 0).unwrap();
        let a = Arc::new(CirclePoint::new(0.05), 0.25);
        let b = Arc::new(CirclePoint::new(0.55), 0.25);
        let margin = 0.01;
        for g in s.generator_set.generators() {
            let ia = g.map.push_arc(&a).unwrap();
            let ib = g.map.push_arc(&b).unwrap();
            // image of A strictly inside B and vice versa
            assert!(b.start().ccw_to(ia.start()) > margin);
            assert!(b.start().ccw_to(ia.end()) < b.length() - margin);
            assert!(a.start().ccw_to(ib.start()) > margin);
            assert!(a.start().ccw_to(ib.end()) < a.length() - margin);
        }
    }

    #[test]
    fn two_basins_arcs_are_invariant() {
        let s = build_scenario::<f64>("two-basins", 0).unwrap();
        let a = Arc::new(CirclePoint::new(0.0), 0.4);
        let b = Arc::new(CirclePoint::new(0.5), 0.4);
        for g in s.generator_set.generators() {
            for arc in [&a, &b] {
                let img = g.map.push_arc(arc).unwrap();
                assert!(arc.contains(img.start()));
                assert!(arc.contains(img.end()));
                assert!(img.length() < arc.length());
            }
        }
        // trajectories from inside A stay inside A
        let stream = s.generator_set.stream(0);
        for q in stream.iterate_point(CirclePoint::new(0.1), 500) {
            assert!(a.contains(q));
        }
    }

    #[test]
    fn common_fixed_point_maps_share_both_endpoints() {
        let s = build_scenario::<f64>("common-fixed-point", 0).unwrap();
        for g in s.generator_set.generators() {
            assert!(g.map.eval(CirclePoint::new(0.0)).approx_eq(CirclePoint::new(0.0)));
            assert!(g.map.eval(CirclePoint::new(0.5)).approx_eq(CirclePoint::new(0.5)));
        }
    }
}
