mod common;

use common::*;
use moritoric::lattice::{pair, rat, rat_int, vectors_index};
use moritoric::mori::{in_cone, positively_proportional};
use moritoric::{
    canonical_divisor, cone_theorem_check, crepant_boundary, cube_fan, curve_class,
    find_short_wall, intersect, intersect_cartier, mori_cone, pullback, q_cartier_basis,
    q_cartier_data, qfactorialize, random_complete_fan, random_fano_rho_one, Fan, Rational,
    ToricDivisor,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn divisor_strategy(len: usize) -> impl Strategy<Value = ToricDivisor> {
    prop::collection::vec((-6i64..=6, 1i64..=4), len)
        .prop_map(|v| ToricDivisor::new(v.into_iter().map(|(p, q)| rat(p, q)).collect()))
}

fn boundary_strategy(len: usize) -> impl Strategy<Value = ToricDivisor> {
    prop::collection::vec((0i64..=4, 1i64..=4), len).prop_map(|v| {
        ToricDivisor::new(
            v.into_iter()
                .map(|(p, q)| rat(p.min(q), q))
                .collect(),
        )
    })
}

#[test]
fn support_function_is_well_defined() {
    let mut rng = SplitMix(7);
    for (name, fan) in simplicial_fixtures() {
        for _ in 0..5 {
            let d = ToricDivisor::new(
                (0..fan.num_rays())
                    .map(|_| rat(rng.below(9) as i64 - 4, 1 + rng.below(3) as i64))
                    .collect(),
            );
            let data = q_cartier_data(&fan, &d).unwrap().unwrap();
            for (m, cone) in data.functionals().iter().zip(fan.cones()) {
                for &r in cone.rays() {
                    assert_eq!(pair(m, fan.ray(r)), -d.coeffs()[r].clone(), "{name}");
                }
            }
        }
    }
}

#[test]
fn pullback_is_functorial() {
    let p2 = moritoric::projective_space(2);
    let f1 = f1_fixture();
    let twice = Fan::from_i64(
        2,
        &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1], &[2, 1]],
        &[&[0, 4], &[4, 3], &[3, 1], &[1, 2], &[2, 0]],
    )
    .unwrap();
    for d in [
        ToricDivisor::from_i64(&[1, 1, 1]),
        ToricDivisor::from_i64(&[2, -1, 0]),
        ToricDivisor::new(vec![rat(1, 2), rat(1, 3), rat(0, 1)]),
    ] {
        let direct = pullback(&p2, &twice, &d).unwrap();
        let staged = pullback(&f1, &twice, &pullback(&p2, &f1, &d).unwrap()).unwrap();
        assert_eq!(direct, staged);
    }
    // Hand check: −K on P^2 pulls back to (1,1,1,2,3) on the double blowup.
    assert_eq!(
        pullback(&p2, &twice, &ToricDivisor::from_i64(&[1, 1, 1])).unwrap(),
        ToricDivisor::from_i64(&[1, 1, 1, 2, 3])
    );
}

#[test]
fn discrepancy_of_a_point_blowup() {
    // Classical: blowing up a smooth surface point has discrepancy 1, so the
    // crepant boundary of D = 0 carries coefficient −1 on the exceptional ray.
    let p2 = moritoric::projective_space(2);
    let r = crepant_boundary(&p2, &f1_fixture(), &ToricDivisor::zero(3)).unwrap();
    assert_eq!(r.divisor.coeffs()[3], rat(-1, 1));
}

#[test]
fn projection_formula_on_the_cube() {
    let cube = cube_fan();
    let (fine, _) = qfactorialize(&cube, 17).unwrap();
    let coarse_walls = cube.walls().unwrap();
    let basis = q_cartier_basis(&cube).unwrap();
    for d in &basis {
        let up = pullback(&cube, &fine, d).unwrap();
        for w in fine.walls().unwrap() {
            // Walls of the fine fan lying in a coarse wall.
            let Some(cw) = coarse_walls.iter().find(|cw| w.tau.is_subset(&cw.tau)) else {
                continue;
            };
            let below = intersect_cartier(&cube, d, cw).unwrap();
            let above = intersect(&fine, &up, &w).unwrap();
            assert_eq!(below, above, "wall {}", w.tau);
        }
    }
}

#[test]
fn opposite_degrees_follow_multiplicities() {
    for (name, fan) in simplicial_fixtures() {
        for w in fan.walls().unwrap() {
            let class = curve_class(&fan, &w).unwrap();
            let mult_tau = rat_int(&vectors_index(&fan.cone_vectors(&w.tau)).unwrap());
            for side in [w.left, w.right] {
                let cone = fan.cone(side);
                let u = cone.rays().iter().find(|r| !w.tau.contains(**r)).copied().unwrap();
                let mult = rat_int(&fan.multiplicity(cone).unwrap());
                assert!(class.degrees[u].is_positive(), "{name}");
                assert!(class.degrees[u] <= Rational::one(), "{name}");
                assert_eq!(class.degrees[u], &mult_tau / &mult, "{name}");
            }
        }
    }
}

#[test]
fn mori_cone_is_generated_by_extremal_rays() {
    let mut fans = simplicial_fixtures();
    fans.push(("cube fan".into(), cube_fan()));
    for (name, fan) in fans {
        let r = mori_cone(&fan).unwrap();
        let reps: Vec<&Vec<Rational>> = r.extremal.iter().map(|e| &e.class).collect();
        for c in &r.classes {
            assert!(in_cone(c, &reps), "{name}");
        }
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(!positively_proportional(a, b), "{name}");
            }
        }
        if fan.is_simplicial() {
            assert_eq!(r.picard_rank, fan.num_rays() - fan.dim(), "{name}");
        }
    }
    assert_eq!(mori_cone(&cube_fan()).unwrap().picard_rank, 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn principal_divisors_pair_to_zero(m in prop::collection::vec(-5i64..=5, 3)) {
        for fan in [moritoric::projective_space(3), cube_fan(), cube_qfactorialization()] {
            let d = moritoric::principal_divisor(&fan, &lv(&m));
            prop_assert!(moritoric::is_cartier(&fan, &d).unwrap());
            for w in fan.walls().unwrap() {
                prop_assert!(intersect(&fan, &d, &w).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn routes_agree_on_random_divisors(d in divisor_strategy(5), seed in 0u64..1000) {
        let fan = random_complete_fan(3, 5, seed).unwrap();
        let d = ToricDivisor::new(d.coeffs()[..fan.num_rays().min(5)].to_vec());
        prop_assume!(d.len() == fan.num_rays());
        for w in fan.walls().unwrap() {
            let a = curve_class(&fan, &w).unwrap().pair(&d);
            let b = intersect_cartier(&fan, &d, &w).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn crepant_coefficients_at_most_one(d in boundary_strategy(3)) {
        let p2 = moritoric::projective_space(2);
        // P^2 blown up at a point, then at a point on the exceptional curve.
        let fine = Fan::from_i64(
            2,
            &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1], &[2, 1]],
            &[&[0, 4], &[4, 3], &[3, 1], &[1, 2], &[2, 0]],
        )
        .unwrap();
        let r = crepant_boundary(&p2, &fine, &d).unwrap();
        for c in r.divisor.coeffs() {
            prop_assert!(*c <= Rational::one());
        }
        prop_assert_eq!(&r.divisor.coeffs()[..3], d.coeffs());
    }

    #[test]
    fn cone_theorem_holds(dim in 2usize..=3, extra in 0usize..=2, seed in 0u64..100_000,
                          d in boundary_strategy(8)) {
        let fan = random_complete_fan(dim, dim + 1 + extra, seed).unwrap();
        prop_assume!(fan.num_rays() <= 8);
        let d = ToricDivisor::new(d.coeffs()[..fan.num_rays()].to_vec());
        let report = cone_theorem_check(&fan, &d).unwrap();
        prop_assert!(report.holds);
        let kd = canonical_divisor(&fan).add(&d);
        for r in &report.rays {
            prop_assert!(r.length <= rat(dim as i64 + 1, 1));
            prop_assert!(r.length <= r.max_length);
            prop_assert_eq!(-intersect(&fan, &kd, &r.witness).unwrap(), r.length.clone());
        }
    }

    #[test]
    fn short_wall_exists_off_projective_space(dim in 2usize..=4, seed in 0u64..100_000) {
        let f = random_fano_rho_one(dim, seed).unwrap().fan;
        let found = find_short_wall(&f).unwrap();
        prop_assert_eq!(found.is_none(), is_pn_oracle(&f));
    }
}
