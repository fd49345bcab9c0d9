//! Contact wrench generators, conic feasibility and force closure.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::geom2d::{angle_between, cone_contains, DirCone, Vec2};
use crate::lp;
use crate::scene::{ContactPoint, ContactSet};
use crate::wrench::{ContactId, EdgeKind, Generator, Wrench, WrenchCone};

/// Relative singular-value threshold for the full-rank test.
pub const RANK_TOL: f64 = 1e-9;

/// Friction-cone edge wrenches `[upper, lower]` of a contact, with forces
/// `normalize(n ± μ t)` and `t = perp(n)`.
pub fn cone_edge_wrenches(c: &ContactPoint) -> [Wrench; 2] {
    let t = c.normal.perp();
    let upper = (c.normal + t * c.mu).normalize();
    let lower = (c.normal - t * c.mu).normalize();
    [
        Wrench::point_force(c.position, upper),
        Wrench::point_force(c.position, lower),
    ]
}

/// The single friction-cone edge available to a sliding contact: friction
/// opposes the slip direction.
pub fn sliding_edge_wrench(c: &ContactPoint) -> Result<Wrench> {
    let slip = c.tangent_slip.ok_or(Error::MissingSlipDirection)?;
    let f = (c.normal - slip * c.mu).normalize();
    Ok(Wrench::point_force(c.position, f))
}

/// Generators of a sticky contact: the normal and both tangents, i.e. every
/// pushing force with a non-negative normal component. No adhesion.
pub fn sticky_wrenches(c: &ContactPoint) -> [Wrench; 3] {
    let t = c.normal.perp();
    [
        Wrench::point_force(c.position, c.normal),
        Wrench::point_force(c.position, t),
        Wrench::point_force(c.position, -t),
    ]
}

fn edge_generators(c: &ContactPoint, id: ContactId) -> [Generator; 2] {
    let [u, l] = cone_edge_wrenches(c);
    [
        Generator::new(u, id, EdgeKind::Upper),
        Generator::new(l, id, EdgeKind::Lower),
    ]
}

/// All six friction-cone edges of A, B and C.
pub fn full_cone(contacts: &ContactSet) -> WrenchCone {
    let mut g = Vec::with_capacity(6);
    g.extend(edge_generators(&contacts.a, ContactId::A));
    g.extend(edge_generators(&contacts.b, ContactId::B));
    g.extend(edge_generators(&contacts.c, ContactId::C));
    WrenchCone::new(g).expect("six unit generators")
}

/// A and B sliding (one edge each), C rolling with its full friction cone.
pub fn sliding_cone(contacts: &ContactSet) -> Result<WrenchCone> {
    let mut g = vec![
        Generator::new(sliding_edge_wrench(&contacts.a)?, ContactId::A, EdgeKind::Sliding),
        Generator::new(sliding_edge_wrench(&contacts.b)?, ContactId::B, EdgeKind::Sliding),
    ];
    g.extend(edge_generators(&contacts.c, ContactId::C));
    WrenchCone::new(g)
}

/// A and B sliding, C sticky.
pub fn sticky_cone(contacts: &ContactSet) -> Result<WrenchCone> {
    let [n, tp, tm] = sticky_wrenches(&contacts.c);
    WrenchCone::new(vec![
        Generator::new(sliding_edge_wrench(&contacts.a)?, ContactId::A, EdgeKind::Sliding),
        Generator::new(sliding_edge_wrench(&contacts.b)?, ContactId::B, EdgeKind::Sliding),
        Generator::new(n, ContactId::C, EdgeKind::Normal),
        Generator::new(tp, ContactId::C, EdgeKind::TangentPlus),
        Generator::new(tm, ContactId::C, EdgeKind::TangentMinus),
    ])
}

fn columns(generators: &[Wrench]) -> Vec<Vec<f64>> {
    (0..3)
        .map(|r| generators.iter().map(|g| g.to_array()[r]).collect())
        .collect()
}

/// True iff `target` is a non-negative combination of `generators`.
pub fn positive_span_feasible(generators: &[Wrench], target: Wrench) -> bool {
    if generators.is_empty() {
        return target.is_zero();
    }
    lp::feasible(&columns(generators), &target.to_array())
}

/// True iff the generators have rank 3.
pub fn full_rank(generators: &[Wrench]) -> bool {
    if generators.len() < 3 {
        return false;
    }
    let m = DMatrix::from_fn(3, generators.len(), |r, c| generators[c].to_array()[r]);
    let sv = m.singular_values();
    let max = sv.max();
    max > 0.0 && sv.iter().all(|&s| s > RANK_TOL * max)
}

/// Force closure of a set of wrench generators: full rank, and the zero
/// wrench is reachable with every coefficient at least one.
pub fn generators_in_force_closure(generators: &[Wrench]) -> bool {
    if !full_rank(generators) {
        return false;
    }
    // k = 1 + k', k' ≥ 0  ⇒  F k' = −F·1
    let sum = generators.iter().fold(Wrench::default(), |acc, &g| acc + g);
    positive_span_feasible(generators, -sum)
}

/// Force closure of an arbitrary collection of frictional point contacts.
pub fn force_closure_of(contacts: &[ContactPoint]) -> bool {
    let gens: Vec<Wrench> = contacts.iter().flat_map(cone_edge_wrenches).collect();
    generators_in_force_closure(&gens)
}

/// Force closure of the three contacts A, B and C. Independent of mass.
pub fn force_closure(contacts: &ContactSet) -> bool {
    force_closure_of(&contacts.as_array())
}

/// Planar two-contact force closure: each friction cone contains the line of
/// sight toward the other contact.
pub fn two_contact_wedge(b: &ContactPoint, c: &ContactPoint) -> bool {
    let sight = c.position - b.position;
    if sight.norm() == 0.0 {
        return false;
    }
    let b_to_c = sight.normalize();
    cone_contains(&DirCone::friction(b.normal, b.mu), b_to_c)
        && cone_contains(&DirCone::friction(c.normal, c.mu), -b_to_c)
}

fn sight_margins(b: &ContactPoint, c: &ContactPoint) -> (f64, f64) {
    let d: Vec2 = (c.position - b.position).normalize();
    (
        b.mu.atan() - angle_between(b.normal, d),
        c.mu.atan() - angle_between(c.normal, -d),
    )
}

/// Signed angular margin of the line of sight inside the tighter of the two
/// friction cones; negative when it leaves either cone.
pub fn wedge_margin(b: &ContactPoint, c: &ContactPoint) -> f64 {
    let (at_b, at_c) = sight_margins(b, c);
    at_b.min(at_c)
}

/// Angular distance from the line of sight to the nearest cone boundary.
pub fn wedge_boundary_distance(b: &ContactPoint, c: &ContactPoint) -> f64 {
    let (at_b, at_c) = sight_margins(b, c);
    at_b.abs().min(at_c.abs())
}
