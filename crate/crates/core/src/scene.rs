//! World model: a trapezoidal object wedged in the corner between a floor
//! (support #1) and a wall (support #2), touched on its right edge by a palm.
//!
//! World frame: the corner is the origin, the floor is the +x axis and the
//! wall leaves the origin along `(cos ψ, sin ψ)`. The object is posed by its
//! tilt `theta` (counter-clockwise about its bottom-left vertex) and slides
//! along the floor so that its top-left vertex stays on the wall.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom2d::{side_of_line, Line2, Pose2, Vec2, EPS_GEOM};
use crate::wrench::Wrench;

pub const GRAVITY: f64 = 9.81;

/// Hard cap on the object tilt.
pub const THETA_MAX: f64 = 80.0 * PI / 180.0;

/// Isosceles trapezoid, bottom edge no longer than the top edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapezoidObject {
    pub w_b: f64,
    pub w_t: f64,
    pub h: f64,
    pub mass: f64,
}

impl TrapezoidObject {
    pub fn new(w_b: f64, w_t: f64, h: f64, mass: f64) -> Result<Self> {
        let all_finite = [w_b, w_t, h, mass].iter().all(|v| v.is_finite());
        if !all_finite || w_b <= 0.0 || w_t < w_b || h <= 0.0 || mass <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "object requires w_t >= w_b > 0, h > 0, mass > 0 (got w_b={w_b}, w_t={w_t}, h={h}, mass={mass})"
            )));
        }
        Ok(TrapezoidObject { w_b, w_t, h, mass })
    }

    pub fn rectangle(width: f64, height: f64, mass: f64) -> Result<Self> {
        TrapezoidObject::new(width, width, height, mass)
    }

    /// Body-frame vertices `[BL, BR, TR, TL]`.
    pub fn vertices(&self) -> [Vec2; 4] {
        let off = (self.w_b - self.w_t) / 2.0;
        [
            Vec2::new(0.0, 0.0),
            Vec2::new(self.w_b, 0.0),
            Vec2::new(self.w_b - off, self.h),
            Vec2::new(off, self.h),
        ]
    }

    /// Length of the right (palm-side) edge.
    pub fn side_length(&self) -> f64 {
        let [_, br, tr, _] = self.vertices();
        tr.distance(br)
    }

    /// Body-frame centroid.
    pub fn centroid(&self) -> Vec2 {
        let (wb, wt, h) = (self.w_b, self.w_t, self.h);
        Vec2::new(wb / 2.0, h / 3.0 * (2.0 * wt + wb) / (wt + wb))
    }
}

pub fn trapezoid_vertices(obj: &TrapezoidObject) -> [Vec2; 4] {
    obj.vertices()
}

pub fn com_of_trapezoid(obj: &TrapezoidObject) -> Vec2 {
    obj.centroid()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportPair {
    /// Interior angle between floor and wall, radians.
    pub psi: f64,
    pub mu_a: f64,
    pub mu_b: f64,
}

impl SupportPair {
    pub fn new(psi: f64, mu_a: f64, mu_b: f64) -> Result<Self> {
        if !(psi > PI / 6.0 && psi <= PI / 2.0 + 1e-12) {
            return Err(Error::InvalidParameter(format!(
                "support angle must lie in (30, 90] deg (got {:.4} deg)",
                psi.to_degrees()
            )));
        }
        if !(mu_a >= 0.0 && mu_b >= 0.0 && mu_a.is_finite() && mu_b.is_finite()) {
            return Err(Error::InvalidParameter(
                "support friction coefficients must be finite and non-negative".into(),
            ));
        }
        Ok(SupportPair {
            psi: psi.min(PI / 2.0),
            mu_a,
            mu_b,
        })
    }

    /// Directed wall line from the corner, going up.
    pub fn wall_line(&self) -> Line2 {
        Line2::new(Vec2::ZERO, Vec2::from_angle(self.psi))
    }

    /// Direction in which the wall pushes the object.
    pub fn wall_normal(&self) -> Vec2 {
        Vec2::new(self.psi.sin(), -self.psi.cos())
    }
}

/// Palm contact model. The curved palm end is approximated by a circular arc
/// of radius `radius`; arc length is measured from the tip point Y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PalmModel {
    pub mu_c: f64,
    pub sticky: bool,
    pub radius: f64,
    pub tip_arc_length: f64,
}

impl PalmModel {
    pub fn new(mu_c: f64, sticky: bool, radius: f64, tip_arc_length: f64) -> Result<Self> {
        if !(mu_c >= 0.0 && mu_c.is_finite()) {
            return Err(Error::InvalidParameter(
                "palm friction coefficient must be finite and non-negative".into(),
            ));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter("palm radius must be positive".into()));
        }
        if !(tip_arc_length >= 0.0 && tip_arc_length.is_finite()) {
            return Err(Error::InvalidParameter(
                "palm tip arc length must be non-negative".into(),
            ));
        }
        Ok(PalmModel {
            mu_c,
            sticky,
            radius,
            tip_arc_length,
        })
    }
}

/// Tilt configuration: object angle and position of contact C along the
/// right edge, measured from the bottom-right vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Configuration {
    pub theta: f64,
    pub delta: f64,
}

impl Configuration {
    pub fn new(theta: f64, delta: f64) -> Self {
        Configuration { theta, delta }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactPoint {
    pub position: Vec2,
    /// Unit direction in which the contact can push the object.
    pub normal: Vec2,
    pub mu: f64,
    /// Direction the object slides at this contact, if it slides.
    pub tangent_slip: Option<Vec2>,
}

impl ContactPoint {
    pub fn new(position: Vec2, normal: Vec2, mu: f64) -> Self {
        ContactPoint {
            position,
            normal: normal.normalize(),
            mu,
            tangent_slip: None,
        }
    }

    pub fn with_slip(mut self, slip: Vec2) -> Self {
        self.tangent_slip = Some(slip.normalize());
        self
    }

    pub fn normal_line(&self) -> Line2 {
        Line2::new(self.position, self.normal)
    }
}

/// Contacts with the floor (A), the wall (B) and the palm (C).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactSet {
    pub a: ContactPoint,
    pub b: ContactPoint,
    pub c: ContactPoint,
}

impl ContactSet {
    pub fn as_array(&self) -> [ContactPoint; 3] {
        [self.a, self.b, self.c]
    }

    pub fn with_mu(&self, mu_a: f64, mu_b: f64, mu_c: f64) -> ContactSet {
        let mut out = *self;
        out.a.mu = mu_a;
        out.b.mu = mu_b;
        out.c.mu = mu_c;
        out
    }
}

/// Everything needed to resolve a configuration into contacts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scene {
    pub object: TrapezoidObject,
    pub supports: SupportPair,
    pub palm: PalmModel,
}

impl Scene {
    pub fn new(object: TrapezoidObject, supports: SupportPair, palm: PalmModel) -> Self {
        Scene {
            object,
            supports,
            palm,
        }
    }

    /// 0.3 m × 0.1 m, 1 kg rectangle in a right-angle corner with
    /// μ_A = μ_B = 0.1.
    pub fn reference(mu_c: f64) -> Self {
        Scene {
            object: TrapezoidObject::rectangle(0.3, 0.1, 1.0).expect("valid"),
            supports: SupportPair::new(PI / 2.0, 0.1, 0.1).expect("valid"),
            palm: PalmModel::new(mu_c, false, 0.08, 0.1).expect("valid"),
        }
    }

    pub fn with_psi(mut self, psi: f64) -> Result<Self> {
        self.supports = SupportPair::new(psi, self.supports.mu_a, self.supports.mu_b)?;
        Ok(self)
    }

    pub fn with_mu_c(mut self, mu_c: f64) -> Result<Self> {
        self.palm = PalmModel::new(mu_c, self.palm.sticky, self.palm.radius, self.palm.tip_arc_length)?;
        Ok(self)
    }

    pub fn pose(&self, theta: f64) -> Result<Pose2> {
        object_pose_from_theta(&self.object, &self.supports, theta)
    }

    pub fn contacts(&self, config: Configuration) -> Result<ContactSet> {
        contacts_from_config(&self.object, &self.supports, &self.palm, config)
    }

    pub fn world_vertices(&self, theta: f64) -> Result<[Vec2; 4]> {
        let pose = self.pose(theta)?;
        Ok(self.object.vertices().map(|v| pose.transform_point(v)))
    }

    /// World-frame infinite line of the right edge, parameterized from the
    /// bottom-right vertex upward.
    pub fn edge_line(&self, theta: f64) -> Result<Line2> {
        let [_, br, tr, _] = self.world_vertices(theta)?;
        Ok(Line2::through(br, tr))
    }

    pub fn gravity(&self, theta: f64) -> Result<Wrench> {
        Ok(gravity_wrench(&self.object, &self.pose(theta)?))
    }
}

/// Poses the object at tilt `theta`: bottom-left vertex on the floor, top-left
/// vertex on the wall.
pub fn object_pose_from_theta(
    obj: &TrapezoidObject,
    supports: &SupportPair,
    theta: f64,
) -> Result<Pose2> {
    let invalid = || Error::NoValidPlacement {
        theta_deg: theta.to_degrees(),
    };
    if !theta.is_finite() || theta < 0.0 || theta > THETA_MAX + 1e-12 {
        return Err(invalid());
    }
    let sin_psi = supports.psi.sin();
    if sin_psi <= 0.0 {
        return Err(invalid());
    }

    let [_, _, _, tl] = obj.vertices();
    let r = tl.rotate(theta);
    // TL = (a_x + r.x, r.z) must satisfy cos ψ · z − sin ψ · x = 0.
    let a_x = r.z * supports.psi.cos() / sin_psi - r.x;
    let pose = Pose2::new(theta, Vec2::new(a_x, 0.0));

    let wall = supports.wall_line();
    for v in obj.vertices() {
        let w = pose.transform_point(v);
        if w.z < -EPS_GEOM || side_of_line(w, &wall) > EPS_GEOM {
            return Err(invalid());
        }
    }
    Ok(pose)
}

pub fn contacts_from_config(
    obj: &TrapezoidObject,
    supports: &SupportPair,
    palm: &PalmModel,
    config: Configuration,
) -> Result<ContactSet> {
    let pose = object_pose_from_theta(obj, supports, config.theta)?;
    let side_length = obj.side_length();
    if !(config.delta >= 0.0 && config.delta <= side_length + EPS_GEOM) {
        return Err(Error::DeltaOutOfRange {
            delta: config.delta,
            side_length,
        });
    }

    let [bl, br, tr, tl] = obj.vertices().map(|v| pose.transform_point(v));
    let psi = supports.psi;

    let a = ContactPoint::new(bl, Vec2::new(0.0, 1.0), supports.mu_a).with_slip(Vec2::new(1.0, 0.0));
    let b = ContactPoint::new(tl, supports.wall_normal(), supports.mu_b)
        .with_slip(-Vec2::from_angle(psi));

    let edge_dir = (tr - br).normalize();
    let c = ContactPoint::new(br + edge_dir * config.delta, edge_dir.perp(), palm.mu_c);

    Ok(ContactSet { a, b, c })
}

/// Gravity as a wrench about the world origin.
pub fn gravity_wrench(obj: &TrapezoidObject, pose: &Pose2) -> Wrench {
    let com = pose.transform_point(obj.centroid());
    Wrench::point_force(com, Vec2::new(0.0, -obj.mass * GRAVITY))
}
