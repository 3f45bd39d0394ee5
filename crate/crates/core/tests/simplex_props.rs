use proptest::prelude::*;

use pfsa_space::simplex::*;

fn pvec(n: usize) -> impl Strategy<Value = ProbVec> {
    proptest::collection::vec(-4.0f64..4.0, n)
        .prop_map(|logs| ProbVec::new(logs.iter().map(|x| x.exp()).collect()).unwrap())
}

fn triple() -> impl Strategy<Value = (ProbVec, ProbVec, ProbVec)> {
    (2usize..7).prop_flat_map(|n| (pvec(n), pvec(n), pvec(n)))
}

fn close(a: &ProbVec, b: &ProbVec) -> bool {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .all(|(x, y)| (x - y).abs() <= 1e-9)
}

proptest! {
    #[test]
    fn abelian_group((a, b, c) in triple()) {
        let e = ProbVec::uniform(a.dim()).unwrap();
        prop_assert!(close(&psum(&a, &b).unwrap(), &psum(&b, &a).unwrap()));
        prop_assert!(close(
            &psum(&psum(&a, &b).unwrap(), &c).unwrap(),
            &psum(&a, &psum(&b, &c).unwrap()).unwrap()
        ));
        prop_assert!(close(&psum(&a, &e).unwrap(), &a));
        prop_assert!(close(&pdiff(&a, &a).unwrap(), &e));
    }

    #[test]
    fn scalar_action((a, b, _c) in triple(), x in -3.0f64..3.0, y in -3.0f64..3.0) {
        prop_assert!(close(
            &pscale(x, &psum(&a, &b).unwrap()).unwrap(),
            &psum(&pscale(x, &a).unwrap(), &pscale(x, &b).unwrap()).unwrap()
        ));
        prop_assert!(close(
            &pscale(x + y, &a).unwrap(),
            &psum(&pscale(x, &a).unwrap(), &pscale(y, &a).unwrap()).unwrap()
        ));
        prop_assert!(close(&pscale(x * y, &a).unwrap(), &pscale(x, &pscale(y, &a).unwrap()).unwrap()));
        prop_assert_eq!(pscale(1.0, &a).unwrap(), a.clone());
        prop_assert!(pscale(0.0, &a).unwrap().is_uniform(0.0));
    }

    #[test]
    fn inner_product_axioms((a, b, c) in triple(), x in -3.0f64..3.0) {
        let ip = |p: &ProbVec, q: &ProbVec| log_inner(p, q).unwrap();
        prop_assert_eq!(ip(&a, &b), ip(&b, &a));
        let lhs = ip(&psum(&pscale(x, &a).unwrap(), &b).unwrap(), &c);
        prop_assert!((lhs - (x * ip(&a, &c) + ip(&b, &c))).abs() <= 1e-9);
        prop_assert!(ip(&a, &a) >= 0.0);
        prop_assert!(ip(&a, &b).abs() <= pnorm(&a) * pnorm(&b) * (1.0 + 1e-12));
        prop_assert!(pdist(&a, &c).unwrap() <= pdist(&a, &b).unwrap() + pdist(&b, &c).unwrap() + 1e-12);
        prop_assert!((pnorm(&pscale(x, &a).unwrap()) - x.abs() * pnorm(&a)).abs() <= 1e-9);
    }

    #[test]
    fn log_ratio_coordinates_round_trip(a in (2usize..7).prop_flat_map(pvec)) {
        let back = ProbVec::from_log_ratios(&a.log_ratios()).unwrap();
        prop_assert!(close(&back, &a));
        prop_assert!((pnorm(&a) - a.log_ratios().iter().map(|u| u * u).sum::<f64>().sqrt()).abs() < 1e-12);
    }

    #[test]
    fn geodesic_endpoints_and_speed((p0, p1, _c) in triple(), s in 0.0f64..1.0, t in 0.0f64..1.0) {
        prop_assert_eq!(geodesic_point(&p0, &p1, 1.0).unwrap().point, p0.clone());
        prop_assert_eq!(geodesic_point(&p0, &p1, 0.0).unwrap().point, p1.clone());
        let a = geodesic_point(&p0, &p1, s).unwrap().point;
        let b = geodesic_point(&p0, &p1, t).unwrap().point;
        let d = pdist(&a, &b).unwrap();
        prop_assert!((d - (s - t).abs() * pdist(&p0, &p1).unwrap()).abs() <= 1e-9);
        let out = geodesic_point(&p0, &p1, 1.5).unwrap();
        prop_assert!(out.extrapolated);
    }

    #[test]
    fn orthogonal_geodesics_meet(
        base in proptest::collection::vec(-2.0f64..2.0, 2),
        dir in (0.0f64..std::f64::consts::TAU),
        len_a in 0.5f64..3.0,
        len_b in 0.5f64..3.0,
        offset in -1.0f64..1.0,
    ) {
        // two perpendicular lines in log-ratio coordinates
        let d = [dir.cos(), dir.sin()];
        let n = [-d[1], d[0]];
        let at = |u: [f64; 2]| ProbVec::from_log_ratios(&u).unwrap();
        let p1 = at([base[0], base[1]]);
        let p0 = at([base[0] + len_a * d[0], base[1] + len_a * d[1]]);
        let q1 = at([base[0] + offset * d[0] - n[0], base[1] + offset * d[1] - n[1]]);
        let q0 = at([base[0] + offset * d[0] + len_b * n[0], base[1] + offset * d[1] + len_b * n[1]]);
        let hit = geodesic_intersection(&p0, &p1, &q0, &q1).unwrap();

        // dense scan of the second line for its closest approach to the hit
        let mut best = f64::INFINITY;
        let steps = 20_000;
        let (lo, hi) = (-2.0, 3.0);
        for i in 0..=steps {
            let t = lo + (hi - lo) * i as f64 / steps as f64;
            let q = geodesic_point(&q0, &q1, t).unwrap().point;
            best = best.min(pdist(&q, &hit.point).unwrap());
        }
        let spacing = (hi - lo) / steps as f64 * pdist(&q0, &q1).unwrap();
        prop_assert!(best <= spacing);
        prop_assert!((hit.theta - offset / len_a).abs() <= 1e-9);
    }
}

#[test]
fn non_orthogonal_lines_are_rejected() {
    let at = |u: [f64; 2]| ProbVec::from_log_ratios(&u).unwrap();
    let r = geodesic_intersection(
        &at([1.0, 0.0]),
        &at([0.0, 0.0]),
        &at([1.0, 1.0]),
        &at([0.0, 0.0]),
    );
    assert!(matches!(r, Err(pfsa_space::Error::NotOrthogonal { .. })));
}
