//! Planar wrenches `(fx, fz, tau)` with moments about the world origin, and
//! finitely generated wrench cones.

use std::ops::{Add, Mul, Neg};

use crate::error::{Error, Result};
use crate::geom2d::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Wrench {
    pub fx: f64,
    pub fz: f64,
    pub tau: f64,
}

impl Wrench {
    pub const fn new(fx: f64, fz: f64, tau: f64) -> Self {
        Wrench { fx, fz, tau }
    }

    /// Wrench of force `f` applied at `p`.
    pub fn point_force(p: Vec2, f: Vec2) -> Self {
        Wrench::new(f.x, f.z, p.cross(f))
    }

    pub fn force(&self) -> Vec2 {
        Vec2::new(self.fx, self.fz)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.fx, self.fz, self.tau]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Wrench::new(a[0], a[1], a[2])
    }

    /// Moment of the wrench about `point`.
    pub fn moment_about(&self, point: Vec2) -> f64 {
        self.tau - point.cross(self.force())
    }

    pub fn norm(&self) -> f64 {
        (self.fx * self.fx + self.fz * self.fz + self.tau * self.tau).sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.fx == 0.0 && self.fz == 0.0 && self.tau == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.fx.is_finite() && self.fz.is_finite() && self.tau.is_finite()
    }
}

impl Add for Wrench {
    type Output = Wrench;
    fn add(self, o: Wrench) -> Wrench {
        Wrench::new(self.fx + o.fx, self.fz + o.fz, self.tau + o.tau)
    }
}

impl Neg for Wrench {
    type Output = Wrench;
    fn neg(self) -> Wrench {
        Wrench::new(-self.fx, -self.fz, -self.tau)
    }
}

impl Mul<f64> for Wrench {
    type Output = Wrench;
    fn mul(self, k: f64) -> Wrench {
        Wrench::new(self.fx * k, self.fz * k, self.tau * k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContactId {
    A,
    B,
    C,
}

/// Which part of a contact's force set a generator comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Counter-clockwise friction-cone edge, `n + μ t`.
    Upper,
    /// Clockwise friction-cone edge, `n − μ t`.
    Lower,
    /// The single edge left when the contact slides.
    Sliding,
    /// Pure normal force.
    Normal,
    /// Tangential force `+t` or `−t` of a sticky contact.
    TangentPlus,
    TangentMinus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator {
    pub wrench: Wrench,
    pub contact: Option<ContactId>,
    pub edge: EdgeKind,
}

impl Generator {
    pub fn new(wrench: Wrench, contact: ContactId, edge: EdgeKind) -> Self {
        Generator {
            wrench,
            contact: Some(contact),
            edge,
        }
    }

    pub fn untagged(wrench: Wrench) -> Self {
        Generator {
            wrench,
            contact: None,
            edge: EdgeKind::Normal,
        }
    }
}

pub const MAX_GENERATORS: usize = 8;

/// Positive span of at most eight non-zero wrenches.
#[derive(Debug, Clone, PartialEq)]
pub struct WrenchCone {
    generators: Vec<Generator>,
}

impl WrenchCone {
    pub fn new(generators: Vec<Generator>) -> Result<Self> {
        if generators.is_empty() || generators.len() > MAX_GENERATORS {
            return Err(Error::InvalidParameter(format!(
                "wrench cone needs 1..={MAX_GENERATORS} generators, got {}",
                generators.len()
            )));
        }
        if generators
            .iter()
            .any(|g| g.wrench.is_zero() || !g.wrench.is_finite())
        {
            return Err(Error::InvalidParameter(
                "wrench cone generators must be finite and non-zero".into(),
            ));
        }
        Ok(WrenchCone { generators })
    }

    pub fn from_wrenches(wrenches: &[Wrench]) -> Result<Self> {
        WrenchCone::new(wrenches.iter().copied().map(Generator::untagged).collect())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn wrenches(&self) -> Vec<Wrench> {
        self.generators.iter().map(|g| g.wrench).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_force_moment() {
        let w = Wrench::point_force(Vec2::new(0.15, 0.05), Vec2::new(0.0, -9.81));
        assert!((w.tau + 0.15 * 9.81).abs() < 1e-12);
        // Moment about a point on the line of action vanishes.
        assert!(w.moment_about(Vec2::new(0.15, 3.0)).abs() < 1e-12);
    }

    #[test]
    fn cone_size_limits() {
        assert!(WrenchCone::new(vec![]).is_err());
        let g = Generator::untagged(Wrench::new(1.0, 0.0, 0.0));
        assert!(WrenchCone::new(vec![g; 8]).is_ok());
        assert!(WrenchCone::new(vec![g; 9]).is_err());
        assert!(WrenchCone::from_wrenches(&[Wrench::default()]).is_err());
    }
}
