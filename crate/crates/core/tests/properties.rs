mod common;

use approx::assert_abs_diff_eq;
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use svalue::abc::{belief_order, support_order};
use svalue::cli::repro::{example_1_2_model, table1_rows, TABLE1_N};
use svalue::evidence::{default_reference, s_value, SupportPair};
use svalue::hypotheses::{constrained_mle, hw_constrained_mle_closed_form};
use svalue::optimize::{brent_maximize, grid_oracle_maximize, Bracket1D};
use svalue::special_fn::chisq_cdf;
use svalue::{
    ChiSquare, Curve, LinearRegressionKnownVar, LogLikModel, MvnIdentityMean, NullSet, ParamVector,
};

use common::trinomial;

struct Shifted<M> {
    inner: M,
    shift: f64,
}

impl<M: LogLikModel> LogLikModel for Shifted<M> {
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }
    fn in_domain(&self, theta: &ParamVector) -> bool {
        self.inner.in_domain(theta)
    }
    fn loglik(&self, theta: &ParamVector) -> svalue::Result<f64> {
        Ok(self.inner.loglik(theta)? + self.shift)
    }
    fn mle(&self) -> svalue::Result<ParamVector> {
        self.inner.mle()
    }
}

fn pv(v: &[f64]) -> ParamVector {
    ParamVector::new(v.to_vec()).unwrap()
}

fn mvn(n: usize, x: f64, y: f64) -> MvnIdentityMean {
    MvnIdentityMean::new(n, pv(&[x, y])).unwrap()
}

fn s_of(model: &dyn LogLikModel, null: &NullSet) -> f64 {
    s_value(model, null, &default_reference(model).unwrap())
        .unwrap()
        .s
}

fn table_counts() -> Vec<[u64; 3]> {
    table1_rows()
        .unwrap()
        .into_iter()
        .map(|r| [r.x1, TABLE1_N - r.x1 - r.x3, r.x3])
        .collect()
}

proptest! {
    #[test]
    fn chisq_cdf_is_a_monotone_probability(r in 1u32..30, x in 0.0f64..200.0, dx in 1e-6f64..5.0) {
        let a = chisq_cdf(x, r).unwrap();
        let b = chisq_cdf(x + dx, r).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
        prop_assert!(b >= a);
        if x > 0.0 && a < 1.0 - 1e-12 {
            prop_assert!(b > a);
        }
    }

    #[test]
    fn deviance_is_nonnegative_and_zero_at_mle(n in 1usize..500, x in -2.0f64..2.0, y in -2.0f64..2.0,
                                                 a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let m = mvn(n, x, y);
        prop_assert!(m.deviance_at(&pv(&[a, b])).unwrap() >= 0.0);
        prop_assert!(m.deviance_at(&m.mle().unwrap()).unwrap().abs() <= 1e-12);
    }

    #[test]
    fn additive_constants_do_not_change_deviance(shift in -1e3f64..1e3, a in -1.0f64..1.0, b in -1.0f64..1.0) {
        let m = mvn(30, 0.2, -0.1);
        let t = pv(&[a, b]);
        let base = m.deviance_at(&t).unwrap();
        let shifted = Shifted { inner: m, shift }.deviance_at(&t).unwrap();
        prop_assert!((base - shifted).abs() <= 1e-9 * base.max(1.0));
    }

    #[test]
    fn regression_deviance_matches_residual_sums(b1 in -1.0f64..1.0, b2 in -1.0f64..1.0) {
        let m = example_1_2_model().unwrap();
        let bh = m.mle().unwrap().to_dvector();
        let rss = |b: &DVector<f64>| (m.response() - m.design() * b).norm_squared();
        let b = DVector::from_vec(vec![b1, b2]);
        let direct = rss(&b) - rss(&bh);
        prop_assert!((m.deviance_at(&pv(&[b1, b2])).unwrap() - direct).abs() <= 1e-10);
    }

    #[test]
    fn constrained_fit_never_beats_the_mle(n in 1usize..300, x in -1.0f64..1.0, y in -1.0f64..1.0,
                                            c1 in -2.0f64..2.0, c2 in 0.1f64..2.0, d in -1.0f64..1.0) {
        let m = mvn(n, x, y);
        let null = NullSet::linear(&[vec![c1, c2]], &[d]).unwrap();
        let fit = constrained_mle(&m, &null).unwrap();
        let top = m.loglik(&m.mle().unwrap()).unwrap();
        prop_assert!(fit.loglik0 <= top + 1e-12);
        let th = fit.theta0_hat.as_slice();
        prop_assert!((c1 * th[0] + c2 * th[1] - d).abs() <= 1e-10);
    }

    #[test]
    fn union_fit_is_best_member(n in 1usize..300, x in -1.0f64..1.0, y in -1.0f64..1.0,
                                pts in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..5)) {
        let m = mvn(n, x, y);
        let members: Vec<NullSet> = pts.iter().map(|&(a, b)| NullSet::point(&[a, b]).unwrap()).collect();
        let best = members
            .iter()
            .map(|p| constrained_mle(&m, p).unwrap().loglik0)
            .fold(f64::NEG_INFINITY, f64::max);
        let fit = constrained_mle(&m, &NullSet::Union(members)).unwrap();
        prop_assert!((fit.loglik0 - best).abs() <= 1e-10);
    }

    #[test]
    fn s_value_decreases_in_the_statistic(k in 1u32..8, t in 0.0f64..60.0, dt in 1e-3f64..5.0) {
        let f = ChiSquare::new(k).unwrap();
        prop_assert!(f.sf(t + dt).unwrap() < f.sf(t).unwrap());
    }

    #[test]
    fn wider_line_family_contains_its_points(n in 1usize..200, x in -0.5f64..0.5, y in -0.5f64..0.5,
                                              px in -0.5f64..0.5, py in -0.5f64..0.5) {
        let m = mvn(n, x, y);
        let point = NullSet::point(&[px, py]).unwrap();
        let line = NullSet::linear(&[vec![1.0, 1.0]], &[px + py]).unwrap();
        prop_assert!(s_of(&m, &point) <= s_of(&m, &line) + 1e-10);
    }
}

#[test]
fn trinomial_mle_beats_random_simplex_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for counts in [[5, 15, 0], [1, 8, 11], [9, 9, 2], [3, 3, 3]] {
        let m = trinomial(counts);
        let top = m.loglik(&m.mle().unwrap()).unwrap();
        for _ in 0..10_000 {
            let (u, v): (f64, f64) = (rng.random(), rng.random());
            let (a, b) = if u + v > 1.0 {
                (1.0 - u, 1.0 - v)
            } else {
                (u, v)
            };
            let th = pv(&[a, b, (1.0 - a - b).max(0.0)]);
            assert!(m.loglik(&th).unwrap() <= top + 1e-12);
        }
    }
}

#[test]
fn hardy_weinberg_closed_form_matches_brent_and_grid() {
    let points = 100_000;
    let step = 1.0 / (points - 1) as f64;
    for counts in table_counts() {
        let m = trinomial(counts);
        let closed = hw_constrained_mle_closed_form(&m).unwrap();
        let numeric = constrained_mle(&m, &NullSet::Curve(Curve::hardy_weinberg())).unwrap();
        let t_closed = closed.theta0_hat[0].sqrt();
        let t_brent = numeric.theta0_hat[0].sqrt();
        assert_abs_diff_eq!(t_closed, t_brent, epsilon = 1e-8);

        let ll = |t: f64| m.loglik(&pv(&Curve::hardy_weinberg().at(t))).unwrap();
        let (t_grid, _) = grid_oracle_maximize(ll, 0.0, 1.0, points);
        assert!(
            (t_brent - t_grid).abs() <= 2.0 * step,
            "{counts:?}: {t_brent} vs {t_grid}"
        );
    }
}

#[test]
fn brent_is_never_below_both_endpoints() {
    let fs: [fn(f64) -> f64; 4] = [|t| -(t - 0.3).powi(2), |t| t, |t| -t, |t| (5.0 * t).sin()];
    for f in fs {
        let (_, best) = brent_maximize(f, Bracket1D::new(0.0, 2.0, 1e-10).unwrap()).unwrap();
        assert!(best >= f(0.0).min(f(2.0)));
        assert!(best >= f(0.0).max(f(2.0)) - 1e-12);
    }
}

#[test]
fn boundary_s_values_are_exact() {
    let models: Vec<Box<dyn LogLikModel>> = vec![
        Box::new(mvn(100, 0.14, -0.16)),
        Box::new(example_1_2_model().unwrap()),
        Box::new(trinomial([5, 15, 0])),
    ];
    for m in &models {
        assert_eq!(s_of(m.as_ref(), &NullSet::Empty), 0.0);
        assert_eq!(s_of(m.as_ref(), &NullSet::Full), 1.0);
    }
}

#[test]
fn support_function_axioms_in_the_mvn_model() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let m = mvn(
            rng.random_range(5..200),
            rng.random_range(-0.5..0.5),
            rng.random_range(-0.5..0.5),
        );
        let a =
            NullSet::point(&[rng.random_range(-0.5..0.0), rng.random_range(-0.5..0.5)]).unwrap();
        let b = NullSet::linear(&[vec![1.0, 0.0]], &[rng.random_range(0.1..0.5)]).unwrap();
        let (sa, sb) = (s_of(&m, &a), s_of(&m, &b));
        let sab = s_of(&m, &NullSet::Union(vec![a.clone(), b.clone()]));
        assert_abs_diff_eq!(sab, sa.max(sb), epsilon = 1e-10);

        let inner = NullSet::Box {
            lo: pv(&[-0.1, -0.1]),
            hi: pv(&[0.1, 0.1]),
        };
        let outer = NullSet::Box {
            lo: pv(&[-0.2, -0.2]),
            hi: pv(&[0.2, 0.2]),
        };
        assert!(s_of(&m, &inner) <= s_of(&m, &outer) + 1e-10);
        assert!(s_of(&m, &a) <= s_of(&m, &NullSet::Full) + 1e-10);
        assert!(s_of(&m, &NullSet::Empty) <= s_of(&m, &a) + 1e-10);

        let s1 = s_of(&m, &a);
        let s2 = s_of(&m, &a.clone().complement());
        assert!((s1.max(s2) - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn support_order_is_a_partial_order() {
    let g: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    for &a in &g {
        assert!(support_order(a, a));
        for &b in &g {
            if support_order(a, b) && support_order(b, a) {
                assert_eq!(a, b);
            }
            for &c in &g {
                if support_order(a, b) && support_order(b, c) {
                    assert!(support_order(a, c));
                }
            }
        }
    }
}

#[test]
fn belief_order_extremes() {
    let g: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let bottom = SupportPair::new(0.0, 1.0).unwrap();
    let top = SupportPair::new(1.0, 0.0).unwrap();
    for &a in &g {
        for &b in &g {
            let p = SupportPair {
                support: a,
                co_support: b,
            };
            assert!(belief_order(&bottom, &p));
            assert!(belief_order(&p, &top));
        }
    }
}

#[test]
fn regression_from_matrices_matches_csv() {
    let csv = example_1_2_model().unwrap();
    let m = LinearRegressionKnownVar::new(
        csv.response().clone(),
        DMatrix::from_column_slice(10, 2, csv.design().as_slice()),
    )
    .unwrap();
    assert_eq!(m.mle().unwrap(), csv.mle().unwrap());
}
