#![allow(dead_code)]

use rand::Rng;
use tiltpick::geom2d::Vec2;
use tiltpick::scene::{
    Configuration, ContactPoint, ContactSet, PalmModel, Scene, SupportPair, TrapezoidObject,
};
use tiltpick::wrench::Wrench;

pub fn deg(d: f64) -> f64 {
    d.to_radians()
}

pub fn p2(v: Vec2) -> [f64; 2] {
    [v.x, v.z]
}

pub fn w3(w: Wrench) -> [f64; 3] {
    w.to_array()
}

/// Random trapezoid scene and a configuration with a valid placement.
pub fn random_scene<R: Rng>(rng: &mut R) -> (Scene, Configuration) {
    loop {
        let w_b = rng.gen_range(0.1..0.6);
        let w_t = w_b + rng.gen_range(0.0..0.2);
        let h = rng.gen_range(0.05..0.3);
        let object = TrapezoidObject::new(w_b, w_t, h, rng.gen_range(0.2..5.0)).unwrap();
        let supports = SupportPair::new(
            deg(rng.gen_range(45.0..=90.0)),
            rng.gen_range(0.0..0.5),
            rng.gen_range(0.0..0.5),
        )
        .unwrap();
        let palm = PalmModel::new(rng.gen_range(0.0..0.5), false, 0.08, 1.0).unwrap();
        let scene = Scene::new(object, supports, palm);
        let cfg = Configuration::new(
            deg(rng.gen_range(0.0..60.0)),
            rng.gen_range(0.0..=object.side_length()),
        );
        if scene.contacts(cfg).is_ok() {
            return (scene, cfg);
        }
    }
}

pub fn random_contact<R: Rng>(rng: &mut R) -> ContactPoint {
    let p = Vec2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let n = Vec2::from_angle(rng.gen_range(-3.2..3.2));
    ContactPoint::new(p, n, rng.gen_range(0.0..0.6))
}

pub fn oracle_edges(cs: &ContactSet) -> Vec<[f64; 3]> {
    cs.as_array()
        .iter()
        .flat_map(|c| tiltpick_oracles::friction_edges(p2(c.position), p2(c.normal), c.mu))
        .collect()
}
