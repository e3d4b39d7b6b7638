use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(radius: f64, angle: f64) -> Self {
        Point::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3d cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn unit(self) -> Point {
        self / self.norm()
    }

    /// Rotated by +90 degrees.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point {
    fn add_assign(&mut self, o: Point) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Div<f64> for Point {
    type Output = Point;
    fn div(self, k: f64) -> Point {
        Point::new(self.x / k, self.y / k)
    }
}

/// Rigid motion `p -> rot * p + shift`, optionally preceded by the reflection `y -> -y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    cos: f64,
    sin: f64,
    reflect: bool,
    shift: Point,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry { cos: 1.0, sin: 0.0, reflect: false, shift: Point::ORIGIN };

    pub fn translation(shift: Point) -> Self {
        Isometry { shift, ..Isometry::IDENTITY }
    }

    pub fn rotation(angle: f64) -> Self {
        Isometry { cos: angle.cos(), sin: angle.sin(), ..Isometry::IDENTITY }
    }

    /// Half turn about `c`. Exact, unlike `rotation(PI)`.
    pub fn point_reflection(c: Point) -> Self {
        Isometry { cos: -1.0, sin: 0.0, reflect: false, shift: c * 2.0 }
    }

    /// Mirror in the horizontal line `y = h`.
    pub fn mirror_horizontal(h: f64) -> Self {
        Isometry { cos: 1.0, sin: 0.0, reflect: true, shift: Point::new(0.0, 2.0 * h) }
    }

    /// Mirror in the vertical line `x = v`.
    pub fn mirror_vertical(v: f64) -> Self {
        Isometry { cos: -1.0, sin: 0.0, reflect: true, shift: Point::new(2.0 * v, 0.0) }
    }

    pub fn is_reflection(&self) -> bool {
        self.reflect
    }

    pub fn apply(&self, p: Point) -> Point {
        let y = if self.reflect { -p.y } else { p.y };
        Point::new(self.cos * p.x - self.sin * y, self.sin * p.x + self.cos * y) + self.shift
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &Isometry) -> Isometry {
        let shift = self.apply(first.apply(Point::ORIGIN));
        let ex = self.apply(first.apply(Point::new(1.0, 0.0))) - shift;
        Isometry { cos: ex.x, sin: ex.y, reflect: self.reflect != first.reflect, shift }
    }
}
