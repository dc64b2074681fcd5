//! Planar points, headings and the handful of primitives built on them.
//!
//! Angles are radians measured counter-clockwise from the +x axis of the
//! fixed global frame and are always kept in `(-π, π]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::Scalar;

/// Two points closer than this are treated as coincident (meters).
pub const COINCIDENCE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum GeometryError {
    #[error("points coincide; line-of-sight angle is undefined")]
    Coincident,
    #[error("negative travel distance {0}")]
    NegativeDistance(f64),
    #[error("non-finite coordinate")]
    NonFinite,
}

/// A position in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        debug_assert!(x.is_finite() && y.is_finite(), "non-finite point");
        Point2 { x, y }
    }

    /// Checked constructor for untrusted input.
    pub fn try_new(x: T, y: T) -> Result<Self, GeometryError> {
        if x.is_finite() && y.is_finite() {
            Ok(Point2 { x, y })
        } else {
            Err(GeometryError::NonFinite)
        }
    }

    #[inline]
    pub fn origin() -> Self {
        Point2::new(T::zero(), T::zero())
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn cast<U: Scalar>(self) -> Point2<U> {
        Point2::new(U::from(self.x).unwrap(), U::from(self.y).unwrap())
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: T) -> Self {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl<T: Scalar> Neg for Point2<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Point2::new(-self.x, -self.y)
    }
}

impl<T: Scalar> fmt::Display for Point2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle<T: Scalar>(angle: T) -> T {
    let pi = T::PI();
    let tau = pi + pi;
    let mut a = angle % tau;
    if a > pi {
        a = a - tau;
    } else if a <= -pi {
        a = a + tau;
    }
    a
}

/// A direction of travel, normalized to `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Heading<T>(T);

impl<T: Scalar> Heading<T> {
    pub fn from_radians(angle: T) -> Self {
        Heading(wrap_angle(angle))
    }

    pub fn from_degrees(deg: T) -> Self {
        Heading::from_radians(deg.to_radians())
    }

    #[inline]
    pub fn radians(self) -> T {
        self.0
    }

    pub fn degrees(self) -> T {
        self.0.to_degrees()
    }

    /// The opposite direction.
    pub fn reversed(self) -> Self {
        Heading::from_radians(self.0 + T::PI())
    }

    #[inline]
    pub fn cos(self) -> T {
        self.0.cos()
    }

    #[inline]
    pub fn sin(self) -> T {
        self.0.sin()
    }

    /// Unit vector along this heading.
    #[inline]
    pub fn unit(self) -> Point2<T> {
        let (s, c) = self.0.sin_cos();
        Point2::new(c, s)
    }

    /// Wrapped difference `self - other`, in `(-π, π]`.
    pub fn diff(self, other: Self) -> T {
        wrap_angle(self.0 - other.0)
    }
}

impl<T: Scalar> Add for Heading<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Heading::from_radians(self.0 + rhs.0)
    }
}

impl<T: Scalar> Sub for Heading<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Heading::from_radians(self.0 - rhs.0)
    }
}

impl<T: Scalar> fmt::Display for Heading<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}°", self.degrees())
    }
}

#[inline]
pub fn distance<T: Scalar>(a: Point2<T>, b: Point2<T>) -> T {
    (b - a).norm()
}

/// Line-of-sight angle of the vector `to - from`.
pub fn los_angle<T: Scalar>(from: Point2<T>, to: Point2<T>) -> Result<Heading<T>, GeometryError> {
    let d = to - from;
    if d.norm() < T::lit(COINCIDENCE_EPS) {
        return Err(GeometryError::Coincident);
    }
    Ok(Heading::from_radians(d.y.atan2(d.x)))
}

/// The point reached from `origin` after travelling `dist` along `heading`.
pub fn point_along<T: Scalar>(
    origin: Point2<T>,
    heading: Heading<T>,
    dist: T,
) -> Result<Point2<T>, GeometryError> {
    if dist < T::zero() {
        return Err(GeometryError::NegativeDistance(
            dist.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(origin + heading.unit() * dist)
}
