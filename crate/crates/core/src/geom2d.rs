//! Planar geometry in the x–z plane: vectors, rigid poses, lines, rays and
//! cones of directions.
//!
//! The z axis points up (against gravity). Angles are counter-clockwise
//! positive and always in radians.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

/// Tolerance for incidence predicates, in meters.
pub const EPS_GEOM: f64 = 1e-9;
/// Tolerance for unit-length and parallelism checks.
pub const EPS_UNIT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub z: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, z: 0.0 };

    pub const fn new(x: f64, z: f64) -> Self {
        Vec2 { x, z }
    }

    /// Unit vector at `angle` radians from the +x axis.
    pub fn from_angle(angle: f64) -> Self {
        Vec2::new(angle.cos(), angle.sin())
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.z * other.z
    }

    /// Scalar cross product `self.x * other.z - self.z * other.x`.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.z - self.z * other.x
    }

    /// Rotation by +90°.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.z, self.x)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.z)
    }

    /// Returns the unit vector in the same direction. The zero vector is
    /// returned unchanged.
    pub fn normalize(self) -> Vec2 {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            Vec2::new(self.x / n, self.z / n)
        }
    }

    pub fn angle(self) -> f64 {
        self.z.atan2(self.x)
    }

    pub fn rotate(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.z, s * self.x + c * self.z)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.z.is_finite()
    }

    pub fn is_unit(self) -> bool {
        (self.norm() - 1.0).abs() <= EPS_UNIT
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.z + rhs.z)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.z - rhs.z)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.z)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.z * k)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

/// Wraps an angle into (−π, π].
pub fn wrap_angle(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// Rigid planar transform: rotate by `angle`, then translate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose2 {
    angle: f64,
    pub translation: Vec2,
}

impl Pose2 {
    pub fn new(angle: f64, translation: Vec2) -> Self {
        Pose2 {
            angle: wrap_angle(angle),
            translation,
        }
    }

    pub fn identity() -> Self {
        Pose2::new(0.0, Vec2::ZERO)
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn transform_point(&self, p: Vec2) -> Vec2 {
        p.rotate(self.angle) + self.translation
    }

    pub fn transform_vector(&self, v: Vec2) -> Vec2 {
        v.rotate(self.angle)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray2 {
    pub origin: Vec2,
    direction: Vec2,
}

impl Ray2 {
    /// The direction is normalized on construction.
    pub fn new(origin: Vec2, direction: Vec2) -> Self {
        Ray2 {
            origin,
            direction: direction.normalize(),
        }
    }

    pub fn direction(&self) -> Vec2 {
        self.direction
    }

    pub fn at(&self, t: f64) -> Vec2 {
        self.origin + self.direction * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2 {
    pub point: Vec2,
    direction: Vec2,
}

impl Line2 {
    /// The direction is normalized on construction.
    pub fn new(point: Vec2, direction: Vec2) -> Self {
        Line2 {
            point,
            direction: direction.normalize(),
        }
    }

    pub fn through(a: Vec2, b: Vec2) -> Self {
        Line2::new(a, b - a)
    }

    pub fn direction(&self) -> Vec2 {
        self.direction
    }

    pub fn reversed(&self) -> Line2 {
        Line2 {
            point: self.point,
            direction: -self.direction,
        }
    }

    /// Signed coordinate of the orthogonal projection of `p`, measured from
    /// `point` along `direction`.
    pub fn param_of(&self, p: Vec2) -> f64 {
        (p - self.point).dot(self.direction)
    }

    pub fn at(&self, s: f64) -> Vec2 {
        self.point + self.direction * s
    }

    pub fn distance_to(&self, p: Vec2) -> f64 {
        side_of_line(p, self).abs()
    }
}

/// Cone of directions about a unit axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirCone {
    axis: Vec2,
    half_angle: f64,
}

impl DirCone {
    pub fn new(axis: Vec2, half_angle: f64) -> Self {
        DirCone {
            axis: axis.normalize(),
            half_angle: half_angle.clamp(0.0, PI / 2.0),
        }
    }

    /// Coulomb friction cone about a contact normal.
    pub fn friction(normal: Vec2, mu: f64) -> Self {
        DirCone::new(normal, mu.max(0.0).atan())
    }

    pub fn axis(&self) -> Vec2 {
        self.axis
    }

    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }

    /// Unit directions of the two boundary edges, counter-clockwise edge first.
    pub fn edges(&self) -> [Vec2; 2] {
        [
            self.axis.rotate(self.half_angle),
            self.axis.rotate(-self.half_angle),
        ]
    }
}

/// Intersection of a ray (t ≥ 0) with an infinite line.
pub fn ray_line_intersect(ray: &Ray2, line: &Line2) -> Option<Vec2> {
    let denom = ray.direction.cross(line.direction);
    if denom.abs() < EPS_UNIT {
        return None;
    }
    let t = (line.point - ray.origin).cross(line.direction) / denom;
    if t < 0.0 {
        return None;
    }
    Some(ray.at(t))
}

/// Intersection of two infinite lines, `None` when parallel.
pub fn line_line_intersect(a: &Line2, b: &Line2) -> Option<Vec2> {
    let denom = a.direction.cross(b.direction);
    if denom.abs() < EPS_UNIT {
        return None;
    }
    let t = (b.point - a.point).cross(b.direction) / denom;
    Some(a.at(t))
}

pub fn angle_between(a: Vec2, b: Vec2) -> f64 {
    a.cross(b).atan2(a.dot(b)).abs()
}

pub fn cone_contains(cone: &DirCone, d: Vec2) -> bool {
    angle_between(cone.axis, d) <= cone.half_angle + EPS_UNIT
}

/// Positive when `p` is left of the directed line.
pub fn side_of_line(p: Vec2, line: &Line2) -> f64 {
    line.direction.cross(p - line.point)
}
