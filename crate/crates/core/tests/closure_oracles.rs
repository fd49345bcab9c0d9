mod common;

use common::{deg, oracle_edges, p2, random_contact, random_scene, w3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tiltpick::closure::{
    cone_edge_wrenches, force_closure, force_closure_of, positive_span_feasible, sliding_cone,
    two_contact_wedge, wedge_boundary_distance, wedge_margin,
};
use tiltpick::geom2d::Vec2;
use tiltpick::scene::{Configuration, ContactPoint, Scene};
use tiltpick::wrench::Wrench;
use tiltpick_oracles::{
    enumerated_positive_span, exact_force_closure, friction_edges, random_directions, sampled_force_closure,
};

#[test]
fn edge_wrenches_match_half_angle_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let c = random_contact(&mut rng);
        let ours = cone_edge_wrenches(&c);
        let theirs = friction_edges(p2(c.position), p2(c.normal), c.mu);
        for (a, b) in ours.iter().zip(theirs) {
            for (x, y) in a.to_array().iter().zip(b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn slanted_wall_sliding_balance_matches_enumeration() {
    let scene = Scene::reference(0.2).with_psi(deg(61.0)).unwrap();
    let cs = scene.contacts(Configuration::new(0.0, 0.05)).unwrap();
    let gens = sliding_cone(&cs).unwrap().wrenches();
    let target = -scene.gravity(0.0).unwrap();
    let oracle: Vec<[f64; 3]> = gens.iter().map(|&w| w3(w)).collect();
    assert!(enumerated_positive_span(&oracle, w3(target)));
    assert!(positive_span_feasible(&gens, target));
}

#[test]
fn positive_span_agrees_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut both = [0usize; 2];
    for _ in 0..3000 {
        let n = rng.gen_range(1..=8);
        let gens: Vec<Wrench> = (0..n)
            .map(|_| {
                Wrench::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                )
            })
            .collect();
        let target = Wrench::new(
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        );
        let oracle: Vec<[f64; 3]> = gens.iter().map(|&w| w3(w)).collect();
        let expected = enumerated_positive_span(&oracle, w3(target));
        assert_eq!(positive_span_feasible(&gens, target), expected, "{gens:?} {target:?}");
        both[expected as usize] += 1;
    }
    // Both verdicts must actually occur.
    assert!(both[0] > 100 && both[1] > 100, "{both:?}");
}

#[test]
fn reference_configuration_is_closed() {
    let cs = Scene::reference(0.2)
        .contacts(Configuration::new(deg(20.0), 0.05))
        .unwrap();
    let dirs = random_directions(10_000, 7);
    assert!(sampled_force_closure(&oracle_edges(&cs), &dirs));
    assert!(force_closure(&cs));
}

#[test]
fn frictionless_scenes_never_close() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let (scene, cfg) = random_scene(&mut rng);
        let cs = scene.contacts(cfg).unwrap().with_mu(0.0, 0.0, 0.0);
        assert!(!force_closure(&cs));
        assert!(!exact_force_closure(&oracle_edges(&cs)));
    }
}

#[test]
fn closure_agrees_with_axis_membership_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let mut closed = 0;
    for _ in 0..500 {
        let (scene, cfg) = random_scene(&mut rng);
        let cs = scene.contacts(cfg).unwrap();
        let expected = exact_force_closure(&oracle_edges(&cs));
        assert_eq!(force_closure(&cs), expected, "{cs:?}");
        closed += expected as usize;
    }
    assert!(closed > 50 && closed < 450, "{closed}");
}

#[test]
fn wedge_example_agrees_with_two_contact_closure() {
    let b = ContactPoint::new(Vec2::new(0.0, 0.1), Vec2::new(1.0, 0.0), 0.1);
    let c = ContactPoint::new(Vec2::new(0.3, 0.08), Vec2::new(-1.0, 0.0), 0.2);
    // Line of sight at atan(0.02 / 0.3) ≈ 3.8°, inside both 5.7° and 11.3°.
    assert!((wedge_margin(&b, &c) - (0.1f64.atan() - (0.02f64 / 0.3).atan())).abs() < 1e-12);
    assert!(two_contact_wedge(&b, &c));
    assert!(force_closure_of(&[b, c]));
}

#[test]
fn friction_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let (scene, cfg) = random_scene(&mut rng);
        let mut cs = scene.contacts(cfg).unwrap();
        let mut closed = force_closure(&cs);
        for _ in 0..3 {
            cs = cs.with_mu(
                cs.a.mu + rng.gen_range(0.0..0.2),
                cs.b.mu + rng.gen_range(0.0..0.2),
                cs.c.mu + rng.gen_range(0.0..0.2),
            );
            let now = force_closure(&cs);
            assert!(!closed || now, "closure lost when friction grew: {cs:?}");
            closed = now;
        }
    }
}

#[test]
fn closure_is_scale_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let (scene, cfg) = random_scene(&mut rng);
        let cs = scene.contacts(cfg).unwrap();
        let k = rng.gen_range(0.1..10.0);
        let mut scaled = cs;
        scaled.a.position = cs.a.position * k;
        scaled.b.position = cs.b.position * k;
        scaled.c.position = cs.c.position * k;
        assert_eq!(force_closure(&cs), force_closure(&scaled));
    }
}

proptest! {
    #[test]
    fn span_invariant_under_target_rescaling(
        gx in -1.0..1.0f64, gz in -1.0..1.0f64, gt in -1.0..1.0f64,
        tx in -3.0..3.0f64, tz in -3.0..3.0f64, tt in -3.0..3.0f64,
        k in 0.01..100.0f64,
    ) {
        let gens = [
            Wrench::new(1.0, 0.2, 0.1),
            Wrench::new(-0.3, 1.0, -0.4),
            Wrench::new(gx, gz, gt),
            Wrench::new(0.1, -0.8, 0.5),
        ];
        let target = Wrench::new(tx, tz, tt);
        prop_assert_eq!(
            positive_span_feasible(&gens, target),
            positive_span_feasible(&gens, target * k)
        );
    }

    #[test]
    fn wedge_condition_matches_two_contact_closure(
        bx in -1.0..1.0f64, bz in -1.0..1.0f64, bn in -3.2..3.2f64, mb in 0.0..0.6f64,
        cx in -1.0..1.0f64, cz in -1.0..1.0f64, cn in -3.2..3.2f64, mc in 0.0..0.6f64,
    ) {
        let b = ContactPoint::new(Vec2::new(bx, bz), Vec2::from_angle(bn), mb);
        let c = ContactPoint::new(Vec2::new(cx, cz), Vec2::from_angle(cn), mc);
        prop_assume!(b.position.distance(c.position) > 1e-3);
        // B faces C, as across the object; rules out expanding (internal) grasps.
        prop_assume!(b.normal.dot(c.position - b.position) > 0.0);
        prop_assume!(wedge_boundary_distance(&b, &c) >= 1e-6);
        prop_assert_eq!(two_contact_wedge(&b, &c), force_closure_of(&[b, c]));
    }
}
