use alpha_hs::pwl::{
    constant_norms, generalized_inverse, linear_distance, pushforward, sup_distance, CumulativeMeasure, PwConstant, PwLinear,
    FUSE_TOL,
};
use proptest::prelude::*;

fn nodes(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..1.0, n).prop_map(|gaps| {
        let mut x = -2.0;
        gaps.into_iter()
            .map(|g| {
                x += g;
                x
            })
            .collect()
    })
}

fn bounded_linear() -> impl Strategy<Value = PwLinear> {
    (1usize..7)
        .prop_flat_map(|n| (nodes(n), prop::collection::vec(-2.0f64..2.0, n)))
        .prop_map(|(xs, ys)| PwLinear::new(xs, ys).unwrap())
}

fn compact_linear() -> impl Strategy<Value = PwLinear> {
    (1usize..6)
        .prop_flat_map(|n| (nodes(n + 2), prop::collection::vec(-2.0f64..2.0, n)))
        .prop_map(|(xs, inner)| {
            let mut ys = vec![0.0];
            ys.extend(inner);
            ys.push(0.0);
            PwLinear::new(xs, ys).unwrap()
        })
}

fn increasing_linear() -> impl Strategy<Value = PwLinear> {
    (1usize..7)
        .prop_flat_map(|n| (nodes(n), prop::collection::vec(0.2f64..3.0, n), -1.0f64..1.0))
        .prop_map(|(xs, slopes, y0)| {
            let mut ys = vec![y0];
            for k in 1..xs.len() {
                ys.push(ys[k - 1] + slopes[k] * (xs[k] - xs[k - 1]));
            }
            PwLinear::with_tails(xs, ys, 1.0, 1.0).unwrap()
        })
}

fn density() -> impl Strategy<Value = PwConstant> {
    (1usize..6)
        .prop_flat_map(|n| (nodes(n + 1), prop::collection::vec(0.0f64..2.0, n)))
        .prop_map(|(xs, inner)| {
            let mut vals = vec![0.0];
            vals.extend(inner);
            vals.push(0.0);
            PwConstant::new(xs, vals).unwrap()
        })
}

fn samples() -> impl Iterator<Item = f64> {
    (-80..=80).map(|k| k as f64 / 10.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sum_and_difference_are_pointwise(f in bounded_linear(), g in bounded_linear()) {
        let s = f.add(&g);
        let d = f.sub(&g);
        for x in samples() {
            prop_assert!((s.eval(x) - f.eval(x) - g.eval(x)).abs() < 1e-12);
            prop_assert!((d.eval(x) - f.eval(x) + g.eval(x)).abs() < 1e-12);
        }
    }

    #[test]
    fn simplified_keeps_values_and_drops_redundant_nodes(f in bounded_linear()) {
        let s = f.simplified();
        for x in samples() {
            prop_assert!((s.eval(x) - f.eval(x)).abs() < 1e-12);
        }
        prop_assert!(s.breakpoints().windows(2).all(|w| w[1] - w[0] > FUSE_TOL));
        let slopes = s.piece_slopes();
        prop_assert!(slopes.windows(2).all(|w| (w[1] - w[0]).abs() > 1e-12));
    }

    #[test]
    fn composition_with_inverse_is_identity(f in increasing_linear()) {
        let inv = f.inverse().unwrap();
        let id1 = f.compose(&inv).unwrap();
        let id2 = inv.compose(&f).unwrap();
        for x in samples() {
            prop_assert!((id1.eval(x) - x).abs() < 1e-12);
            prop_assert!((id2.eval(x) - x).abs() < 1e-12);
        }
    }

    #[test]
    fn sup_distance_is_a_metric(f in bounded_linear(), g in bounded_linear(), h in bounded_linear()) {
        let d = |a: &PwLinear, b: &PwLinear| sup_distance(a, b).unwrap();
        prop_assert_eq!(d(&f, &f), 0.0);
        prop_assert!((d(&f, &g) - d(&g, &f)).abs() < 1e-15);
        prop_assert!(d(&f, &h) <= d(&f, &g) + d(&g, &h) + 1e-12);
        let sampled = samples().map(|x| (f.eval(x) - g.eval(x)).abs()).fold(0.0, f64::max);
        prop_assert!(sampled <= d(&f, &g) + 1e-12);
    }

    #[test]
    fn closed_form_norms_match_riemann_sums(f in compact_linear(), g in compact_linear()) {
        let n = linear_distance(&f, &g);
        let h = 1e-3;
        let (mut l1, mut l2) = (0.0, 0.0);
        for k in -10_000..10_000 {
            let x = (k as f64 + 0.5) * h;
            let v = (f.eval(x) - g.eval(x)).abs();
            l1 += v * h;
            l2 += v * v * h;
        }
        prop_assert!((n.l1 - l1).abs() < 1e-4 * (1.0 + n.l1));
        prop_assert!((n.l2 - l2.sqrt()).abs() < 1e-4 * (1.0 + n.l2));
    }

    #[test]
    fn pushforward_preserves_mass(rho in density(), y in increasing_linear()) {
        let m = pushforward(&rho, &y).unwrap();
        prop_assert!((m.total() - rho.integral().unwrap()).abs() < 1e-12);
        // μ((-∞, y(ξ))) = ∫_{-∞}^ξ ρ for strictly increasing y.
        let anti = rho.antiderivative(0.0);
        for xi in samples() {
            prop_assert!((m.cumulative(y.eval(xi)) - anti.eval(xi)).abs() < 1e-12);
        }
    }

    #[test]
    fn generalized_inverse_undoes_a_cumulative(rho in density(), atom in 0.1f64..1.0) {
        let base = rho.antiderivative(0.0).add(&PwLinear::identity());
        let x0 = rho.breakpoints()[0] + 0.01;
        let inv = generalized_inverse(&base, &[(x0, atom)]).unwrap();
        // The jump at x0 becomes a flat piece of the inverse.
        let lo = base.eval(x0);
        prop_assert!((inv.eval(lo + 0.25 * atom) - x0).abs() < 1e-12);
        prop_assert!((inv.eval(lo + 0.75 * atom) - x0).abs() < 1e-12);
        for x in samples() {
            let g = base.eval(x) + if x > x0 { atom } else { 0.0 };
            prop_assert!((inv.eval(g) - x).abs() < 1e-9);
        }
    }

    #[test]
    fn measure_cumulative_is_left_continuous(rho in density(), atom in 0.1f64..1.0) {
        let x0 = rho.breakpoints()[0] - 0.5;
        let m = CumulativeMeasure::from_density(&rho, vec![(x0, atom)]).unwrap();
        prop_assert_eq!(m.cumulative(x0), 0.0);
        prop_assert!((m.cumulative_closed(x0) - atom).abs() < 1e-15);
        prop_assert!((m.total() - atom - constant_norms(&rho).l1).abs() < 1e-12);
    }
}
