//! Qualitative mechanics of tilting: images of B on the palm-side edge,
//! tilt-mode classification, moment labels and first-order (Reuleaux)
//! mobility at the tilt target.

use std::f64::consts::PI;

use crate::closure::{positive_span_feasible, sliding_cone, sticky_cone, two_contact_wedge};
use crate::error::{Error, Result};
use crate::geom2d::{line_line_intersect, ray_line_intersect, DirCone, Line2, Ray2, Vec2, EPS_GEOM};
use crate::lp::{self, LpStatus};
use crate::scene::{Configuration, ContactPoint, ContactSet, Scene};
use crate::wrench::{Wrench, WrenchCone};

/// Images of contact B on the line of the palm-side edge under the two
/// edges of B's friction cone. `b1` is the higher image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeImagePair {
    pub b1: Option<Vec2>,
    pub b2: Option<Vec2>,
    /// Signed positions of `b1` and `b2` along the edge line.
    pub param1: Option<f64>,
    pub param2: Option<f64>,
}

impl EdgeImagePair {
    pub fn params(&self) -> Option<(f64, f64)> {
        Some((self.param1?, self.param2?))
    }
}

pub fn b_prime_points(b: &ContactPoint, edge_line: &Line2) -> EdgeImagePair {
    let cone = DirCone::friction(b.normal, b.mu);
    let mut hits: Vec<(f64, Vec2)> = cone
        .edges()
        .iter()
        .filter_map(|&d| ray_line_intersect(&Ray2::new(b.position, d), edge_line))
        .map(|p| (edge_line.param_of(p), p))
        .collect();
    hits.sort_by(|x, y| y.0.total_cmp(&x.0));
    let first = hits.first().copied();
    let second = hits.get(1).copied();
    EdgeImagePair {
        b1: first.map(|h| h.1),
        b2: second.map(|h| h.1),
        param1: first.map(|h| h.0),
        param2: second.map(|h| h.0),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TiltMode {
    /// Wedged between B and the palm; rotates about B as A lifts off.
    TwoContactWedge,
    /// Slides right on both supports with gravity balanced.
    ThreeContactSlide,
    /// Balance needs a sticky palm contact.
    StickyRequired,
    Infeasible,
}

impl TiltMode {
    pub fn name(&self) -> &'static str {
        match self {
            TiltMode::TwoContactWedge => "TwoContactWedge",
            TiltMode::ThreeContactSlide => "ThreeContactSlide",
            TiltMode::StickyRequired => "StickyRequired",
            TiltMode::Infeasible => "Infeasible",
        }
    }
}

impl std::fmt::Display for TiltMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Order of C relative to the images of B, traversing the edge line from
/// top to bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeOrdering {
    /// `{B'1 C B'2}`
    Between,
    /// `{C B'1 B'2}`
    Above,
    /// `{B'1 B'2 C}`
    Below,
}

impl EdgeOrdering {
    pub fn notation(&self) -> &'static str {
        match self {
            EdgeOrdering::Between => "{B'1 C B'2}",
            EdgeOrdering::Above => "{C B'1 B'2}",
            EdgeOrdering::Below => "{B'1 B'2 C}",
        }
    }
}

/// Full result of the tilt-mode classification, including the sub-verdicts
/// that were evaluated on the way.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltAnalysis {
    pub mode: TiltMode,
    pub ordering: EdgeOrdering,
    pub images: EdgeImagePair,
    pub c_param: f64,
    /// C lies within tolerance of one of the images.
    pub boundary_adjacent: bool,
    pub wedge: Option<bool>,
    pub slide_balance: Option<bool>,
    pub sticky_balance: Option<bool>,
}

/// Balance of gravity by A and B sliding plus C's full friction cone.
pub fn sliding_balance(contacts: &ContactSet, gravity: Wrench) -> Result<bool> {
    Ok(positive_span_feasible(&sliding_cone(contacts)?.wrenches(), -gravity))
}

/// Balance of gravity by A and B sliding plus a sticky C.
pub fn sticky_balance(contacts: &ContactSet, gravity: Wrench) -> Result<bool> {
    Ok(positive_span_feasible(&sticky_cone(contacts)?.wrenches(), -gravity))
}

/// Line of the palm-side edge through C, directed upward along the edge.
fn edge_line_through_c(c: &ContactPoint) -> Line2 {
    Line2::new(c.position, -c.normal.perp())
}

pub fn tilt_analysis_on(
    contacts: &ContactSet,
    gravity: Wrench,
    edge_line: &Line2,
) -> Result<TiltAnalysis> {
    let images = b_prime_points(&contacts.b, edge_line);
    let (p1, p2) = images.params().ok_or(Error::DegenerateEdgeImages)?;
    let c_param = edge_line.param_of(contacts.c.position);

    let near = (c_param - p1).abs() <= EPS_GEOM || (c_param - p2).abs() <= EPS_GEOM;
    let ordering = if near || (c_param < p1 && c_param > p2) {
        EdgeOrdering::Between
    } else if c_param > p1 {
        EdgeOrdering::Above
    } else {
        EdgeOrdering::Below
    };

    let mut out = TiltAnalysis {
        mode: TiltMode::Infeasible,
        ordering,
        images,
        c_param,
        boundary_adjacent: near,
        wedge: None,
        slide_balance: None,
        sticky_balance: None,
    };

    if ordering == EdgeOrdering::Between {
        let wedged = two_contact_wedge(&contacts.b, &contacts.c);
        out.wedge = Some(wedged);
        if wedged {
            out.mode = TiltMode::TwoContactWedge;
            return Ok(out);
        }
    }

    let slide = sliding_balance(contacts, gravity)?;
    out.slide_balance = Some(slide);
    if slide {
        out.mode = TiltMode::ThreeContactSlide;
        return Ok(out);
    }
    if ordering == EdgeOrdering::Above {
        return Ok(out);
    }

    let sticky = sticky_balance(contacts, gravity)?;
    out.sticky_balance = Some(sticky);
    if sticky {
        out.mode = TiltMode::StickyRequired;
    }
    Ok(out)
}

pub fn tilt_analysis(contacts: &ContactSet, gravity: Wrench) -> Result<TiltAnalysis> {
    tilt_analysis_on(contacts, gravity, &edge_line_through_c(&contacts.c))
}

pub fn tilt_mode(contacts: &ContactSet, gravity: Wrench) -> Result<TiltMode> {
    tilt_analysis(contacts, gravity).map(|a| a.mode)
}

/// Classifies a scene configuration, with edge parameters measured from the
/// bottom-right vertex.
pub fn classify(scene: &Scene, config: Configuration) -> Result<TiltAnalysis> {
    let contacts = scene.contacts(config)?;
    let gravity = scene.gravity(config.theta)?;
    let edge = scene.edge_line(config.theta)?;
    tilt_analysis_on(&contacts, gravity, &edge)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentLabel {
    Plus,
    Minus,
    PlusMinus,
    None,
}

fn label_tolerance(point: Vec2, wrenches: &[Wrench]) -> f64 {
    let scale = wrenches.iter().fold(1.0_f64, |acc, w| {
        acc.max(w.tau.abs()).max(w.force().norm() * point.norm())
    });
    1e-9 * scale
}

/// Moment label of `point` with respect to the lines of force of a cone.
pub fn moment_label(point: Vec2, cone: &WrenchCone) -> MomentLabel {
    let wrenches = cone.wrenches();
    let eps = label_tolerance(point, &wrenches);
    let moments: Vec<f64> = wrenches.iter().map(|w| w.moment_about(point)).collect();
    if moments.iter().all(|m| m.abs() <= eps) {
        MomentLabel::PlusMinus
    } else if moments.iter().all(|&m| m >= -eps) {
        MomentLabel::Plus
    } else if moments.iter().all(|&m| m <= eps) {
        MomentLabel::Minus
    } else {
        MomentLabel::None
    }
}

/// True when the sign of `w`'s moment about `point` is allowed by `label`.
pub fn label_admits(label: MomentLabel, point: Vec2, w: Wrench, tol: f64) -> bool {
    let m = w.moment_about(point);
    match label {
        MomentLabel::Plus => m >= -tol,
        MomentLabel::Minus => m <= tol,
        MomentLabel::PlusMinus => m.abs() <= tol,
        MomentLabel::None => true,
    }
}

/// Deterministic sample of 200 points covering the lines of force of a cone.
pub fn label_sample_points(cone: &WrenchCone) -> Vec<Vec2> {
    let feet: Vec<Vec2> = cone
        .wrenches()
        .iter()
        .filter(|w| w.force().norm() > 0.0)
        .map(|w| {
            let f = w.force();
            Vec2::new(f.z, -f.x) * (w.tau / f.dot(f))
        })
        .collect();
    let (mut lo, mut hi) = (Vec2::new(-0.1, -0.1), Vec2::new(0.1, 0.1));
    for p in &feet {
        lo = Vec2::new(lo.x.min(p.x), lo.z.min(p.z));
        hi = Vec2::new(hi.x.max(p.x), hi.z.max(p.z));
    }
    let span = hi - lo;
    let (lo, span) = (lo - span * 0.5, span * 2.0);
    let (nx, nz) = (20, 10);
    let mut pts = Vec::with_capacity(nx * nz);
    for i in 0..nx {
        for j in 0..nz {
            // Irrational offsets keep samples off generator lines.
            let u = (i as f64 + 0.5 + 0.1 * std::f64::consts::SQRT_2) / nx as f64;
            let v = (j as f64 + 0.5 + 0.1 * std::f64::consts::E) / nz as f64;
            pts.push(Vec2::new(lo.x + u * span.x, lo.z + v * span.z));
        }
    }
    pts
}

/// Whether the cone can quasistatically balance `gravity`.
pub fn gravity_balance_consistent(cone: &WrenchCone, gravity: Wrench) -> bool {
    let balanced = positive_span_feasible(&cone.wrenches(), -gravity);
    if cfg!(debug_assertions) && balanced {
        let target = -gravity;
        let gens = cone.wrenches();
        let norm_sum: f64 = gens.iter().map(Wrench::norm).sum();
        for p in label_sample_points(cone) {
            let label = moment_label(p, cone);
            let tol = 1e-6 * target.norm().max(1.0) * (1.0 + p.norm()) * (1.0 + norm_sum);
            debug_assert!(
                label_admits(label, p, target, tol),
                "moment label {label:?} at {p:?} contradicts a balanced wrench"
            );
        }
    }
    balanced
}

/// Rotation senses about a point that all contacts permit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RotationLabel {
    pub ccw_allowed: bool,
    pub cw_allowed: bool,
}

/// `σ = perp(p − point) · n`: positive when a counter-clockwise rotation
/// about `point` moves the contact away from the body pushing on it.
pub fn reuleaux_sigma(point: Vec2, contact: &ContactPoint) -> f64 {
    (contact.position - point).perp().dot(contact.normal)
}

pub fn reuleaux_label_of(point: Vec2, contacts: &[ContactPoint]) -> RotationLabel {
    let scale = contacts
        .iter()
        .fold(1.0_f64, |acc, c| acc.max((c.position - point).norm()));
    let eps = EPS_GEOM * scale;
    let sigmas: Vec<f64> = contacts.iter().map(|c| reuleaux_sigma(point, c)).collect();
    RotationLabel {
        ccw_allowed: sigmas.iter().all(|&s| s >= -eps),
        cw_allowed: sigmas.iter().all(|&s| s <= eps),
    }
}

pub fn reuleaux_label(point: Vec2, contacts: &ContactSet) -> RotationLabel {
    reuleaux_label_of(point, &contacts.as_array())
}

/// Largest `s ∈ [0, 1]` such that some point has `σ_i + s ≤ 0` at every
/// contact, or `None` when no point has all `σ_i ≤ 0`.
pub fn cw_center_margin(contacts: &[ContactPoint]) -> Option<f64> {
    // Variables: qx+, qx−, qz+, qz−, s, then one slack per row.
    let m = contacts.len() + 1;
    let n = 5 + m;
    let mut a = vec![vec![0.0; n]; m];
    let mut b = vec![0.0; m];
    for (i, c) in contacts.iter().enumerate() {
        // σ(q) = p×n − q×n = k − (qx nz − qz nx)
        let k = c.position.cross(c.normal);
        a[i][0] = -c.normal.z;
        a[i][1] = c.normal.z;
        a[i][2] = c.normal.x;
        a[i][3] = -c.normal.x;
        a[i][4] = 1.0;
        a[i][5 + i] = 1.0;
        b[i] = -k;
    }
    let last = m - 1;
    a[last][4] = 1.0;
    a[last][5 + last] = 1.0;
    b[last] = 1.0;

    let mut cost = vec![0.0; n];
    cost[4] = -1.0;
    let sol = lp::minimize(&a, &b, &cost);
    match sol.status {
        LpStatus::Optimal => Some(sol.x[4]),
        _ => None,
    }
}

/// Whether the object can escape by an instantaneous clockwise rotation:
/// the clockwise-admissible centers form a region with non-empty interior.
pub fn ungrasp_cw_feasible_of(contacts: &[ContactPoint]) -> bool {
    cw_center_margin(contacts).is_some_and(|s| s > EPS_GEOM)
}

pub fn ungrasp_cw_feasible(contacts: &ContactSet) -> bool {
    ungrasp_cw_feasible_of(&contacts.as_array())
}

/// Push direction of a straight palm segment at angle `phi` (radians,
/// measured from +x), pointing toward the object on its left.
pub fn palm_normal(phi: f64) -> Vec2 {
    Vec2::new(-phi.sin(), phi.cos())
}

/// Same contacts with C's normal set by a straight palm at angle `phi`.
pub fn with_palm_angle(contacts: &ContactSet, phi: f64) -> ContactSet {
    let mut out = *contacts;
    out.c.normal = palm_normal(phi);
    out
}

/// Palm angle in `[0, π)` at which the normal lines at A, B and C meet in a
/// common point.
pub fn critical_palm_angle(a: &ContactPoint, b: &ContactPoint, c_pos: Vec2) -> Result<f64> {
    let q = line_line_intersect(&a.normal_line(), &b.normal_line()).ok_or(Error::ParallelNormals)?;
    let toward = q - c_pos;
    Ok(toward.perp().angle().rem_euclid(PI))
}

/// Common point of the A and B normal lines.
pub fn normal_concurrency_point(a: &ContactPoint, b: &ContactPoint) -> Result<Vec2> {
    line_line_intersect(&a.normal_line(), &b.normal_line()).ok_or(Error::ParallelNormals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::Scene;

    fn deg(d: f64) -> f64 {
        d.to_radians()
    }

    fn close(a: Vec2, b: Vec2, tol: f64) -> bool {
        a.distance(b) <= tol
    }

    #[test]
    fn images_right_angle_corner() {
        let scene = Scene::reference(0.2);
        let cs = scene.contacts(Configuration::new(0.0, 0.05)).unwrap();
        let edge = scene.edge_line(0.0).unwrap();
        let img = b_prime_points(&cs.b, &edge);
        assert!(close(img.b1.unwrap(), Vec2::new(0.3, 0.13), 1e-12));
        assert!(close(img.b2.unwrap(), Vec2::new(0.3, 0.07), 1e-12));
        assert!((img.param1.unwrap() - 0.13).abs() < 1e-12);
        assert!((img.param2.unwrap() - 0.07).abs() < 1e-12);
    }

    #[test]
    fn images_frictionless_wall() {
        let mut scene = Scene::reference(0.2);
        scene.supports.mu_b = 0.0;
        let cs = scene.contacts(Configuration::new(0.0, 0.05)).unwrap();
        let img = b_prime_points(&cs.b, &scene.edge_line(0.0).unwrap());
        assert!(close(img.b1.unwrap(), Vec2::new(0.3, 0.1), 1e-12));
        assert!(close(img.b2.unwrap(), Vec2::new(0.3, 0.1), 1e-12));
    }

    #[test]
    fn images_slanted_wall() {
        let scene = Scene::reference(0.2).with_psi(deg(61.0)).unwrap();
        let cs = scene.contacts(Configuration::new(0.0, 0.05)).unwrap();
        let img = b_prime_points(&cs.b, &scene.edge_line(0.0).unwrap());
        let (b1, b2) = (img.b1.unwrap(), img.b2.unwrap());
        assert!((b1.x - 0.3554).abs() < 1e-4 && (b1.z + 0.029).abs() < 1e-3, "{b1:?}");
        assert!((b2.x - 0.3554).abs() < 1e-4 && (b2.z + 0.108).abs() < 1e-3, "{b2:?}");
    }

    #[test]
    fn images_missing_when_cone_points_away() {
        let b = ContactPoint::new(Vec2::ZERO, Vec2::new(-1.0, 0.0), 0.1);
        let line = Line2::new(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0));
        let img = b_prime_points(&b, &line);
        assert!(img.b1.is_none() && img.b2.is_none());
        let cs = ContactSet {
            a: ContactPoint::new(Vec2::new(0.5, -1.0), Vec2::new(0.0, 1.0), 0.1)
                .with_slip(Vec2::new(1.0, 0.0)),
            b: b.with_slip(Vec2::new(0.0, -1.0)),
            c: ContactPoint::new(Vec2::new(1.0, 0.0), Vec2::new(-1.0, 0.0), 0.1),
        };
        assert_eq!(
            tilt_mode(&cs, Wrench::new(0.0, -1.0, 0.0)),
            Err(Error::DegenerateEdgeImages)
        );
    }

    #[test]
    fn wedge_mode_in_right_angle_corner() {
        let scene = Scene::reference(0.2);
        let a = classify(&scene, Configuration::new(0.0, 0.08)).unwrap();
        assert_eq!(a.ordering, EdgeOrdering::Between);
        assert_eq!(a.mode, TiltMode::TwoContactWedge);
        assert!((a.c_param - 0.08).abs() < 1e-12);
    }

    #[test]
    fn low_contact_in_right_angle_corner() {
        let scene = Scene::reference(0.2);
        let a = classify(&scene, Configuration::new(0.0, 0.05)).unwrap();
        assert_eq!(a.ordering, EdgeOrdering::Below);
        assert!(matches!(a.mode, TiltMode::StickyRequired | TiltMode::Infeasible));
        assert_eq!(a.slide_balance, Some(false));
        assert_eq!(a.mode == TiltMode::StickyRequired, a.sticky_balance == Some(true));
    }

    #[test]
    fn slanted_wall_slides() {
        let scene = Scene::reference(0.2).with_psi(deg(61.0)).unwrap();
        let a = classify(&scene, Configuration::new(0.0, 0.05)).unwrap();
        assert_eq!(a.ordering, EdgeOrdering::Above);
        assert_eq!(a.mode, TiltMode::ThreeContactSlide);
    }

    #[test]
    fn tilt_mode_matches_scene_classification() {
        let scene = Scene::reference(0.2);
        let cfg = Configuration::new(0.3, 0.04);
        let cs = scene.contacts(cfg).unwrap();
        let g = scene.gravity(cfg.theta).unwrap();
        assert_eq!(tilt_mode(&cs, g).unwrap(), classify(&scene, cfg).unwrap().mode);
    }

    #[test]
    fn moment_labels_of_single_force() {
        let cone = WrenchCone::from_wrenches(&[Wrench::point_force(Vec2::ZERO, Vec2::new(0.0, 1.0))]).unwrap();
        assert_eq!(moment_label(Vec2::new(1.0, 0.0), &cone), MomentLabel::Minus);
        assert_eq!(moment_label(Vec2::new(-1.0, 0.0), &cone), MomentLabel::Plus);
        assert_eq!(moment_label(Vec2::new(0.0, 5.0), &cone), MomentLabel::PlusMinus);
    }

    #[test]
    fn full_span_balances_anything() {
        let cone = WrenchCone::from_wrenches(&[
            Wrench::new(1.0, 0.0, 0.0),
            Wrench::new(-1.0, 0.0, 0.0),
            Wrench::new(0.0, 1.0, 0.0),
            Wrench::new(0.0, -1.0, 0.0),
            Wrench::new(0.0, 0.0, 1.0),
            Wrench::new(0.0, 0.0, -1.0),
        ])
        .unwrap();
        assert!(gravity_balance_consistent(&cone, Wrench::new(0.0, -9.81, 3.0)));
    }

    #[test]
    fn gravity_balance_examples() {
        let slanted = Scene::reference(0.2).with_psi(deg(61.0)).unwrap();
        let cs = slanted.contacts(Configuration::new(0.0, 0.05)).unwrap();
        let g = slanted.gravity(0.0).unwrap();
        assert!(gravity_balance_consistent(&sliding_cone(&cs).unwrap(), g));

        let square = Scene::reference(0.2);
        let cs = square.contacts(Configuration::new(0.0, 0.02)).unwrap();
        let g = square.gravity(0.0).unwrap();
        assert!(!gravity_balance_consistent(&sliding_cone(&cs).unwrap(), g));
    }

    #[test]
    fn reuleaux_single_contact() {
        let c = [ContactPoint::new(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), 0.0)];
        let l = reuleaux_label_of(Vec2::ZERO, &c);
        assert!(l.ccw_allowed && !l.cw_allowed);
        let l = reuleaux_label_of(Vec2::new(2.0, 0.0), &c);
        assert!(!l.ccw_allowed && l.cw_allowed);
        let l = reuleaux_label_of(Vec2::new(1.0, 7.0), &c);
        assert!(l.ccw_allowed && l.cw_allowed);
    }

    #[test]
    fn concurrent_normals_cannot_ungrasp() {
        // Three normal lines through the origin.
        let cs = [
            ContactPoint::new(Vec2::new(0.0, -1.0), Vec2::new(0.0, 1.0), 0.0),
            ContactPoint::new(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0), 0.0),
            ContactPoint::new(Vec2::new(1.0, 1.0), Vec2::new(-1.0, -1.0).normalize(), 0.0),
        ];
        assert!(!ungrasp_cw_feasible_of(&cs));
    }

    #[test]
    fn critical_angle_examples() {
        let a = ContactPoint::new(Vec2::new(0.05, 0.0), Vec2::new(0.0, 1.0), 0.1);
        let b = ContactPoint::new(Vec2::new(0.0, 0.1), Vec2::new(1.0, 0.0), 0.1);
        let c = Vec2::new(0.3, 0.08);
        let phi = critical_palm_angle(&a, &b, c).unwrap();
        let expected = (-0.25_f64).atan2(-0.02) + PI;
        assert!((phi - expected).abs() < 1e-12);
        assert!((phi.to_degrees() - 85.43).abs() < 0.01);
        let q = normal_concurrency_point(&a, &b).unwrap();
        let c_line = Line2::new(c, palm_normal(phi));
        assert!(c_line.distance_to(q) < 1e-9);

        let a = ContactPoint::new(Vec2::new(0.0, -1.0), Vec2::new(0.0, 1.0), 0.1);
        let b = ContactPoint::new(Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0), 0.1);
        let phi = critical_palm_angle(&a, &b, Vec2::new(1.0, 0.0)).unwrap();
        assert!((phi - PI / 2.0).abs() < 1e-12);

        let b = ContactPoint::new(Vec2::new(-1.0, 0.0), Vec2::new(0.0, 1.0), 0.1);
        assert_eq!(critical_palm_angle(&a, &b, Vec2::ZERO), Err(Error::ParallelNormals));
    }
}
