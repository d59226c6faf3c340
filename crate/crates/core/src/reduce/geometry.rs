//! Exact plane geometry over the rationals.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::graph::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(Rational::zero(), Rational::zero())
    }

    /// The point `((1-t²)/(1+t²), 2t/(1+t²))` of the unit circle.
    pub fn on_circle(t: &Rational) -> Self {
        let t2 = t * t;
        let d = Rational::one() + &t2;
        Point::new((Rational::one() - &t2) / &d, (t * rat(2)) / d)
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, s: &Rational) -> Point {
        Point::new(&self.x * s, &self.y * s)
    }

    pub fn neg(&self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

pub fn cross(a: &Point, b: &Point) -> Rational {
    &a.x * &b.y - &a.y * &b.x
}

pub fn dot(a: &Point, b: &Point) -> Rational {
    &a.x * &b.x + &a.y * &b.y
}

/// Compares nonzero directions `a` and `b` by counter-clockwise angle measured from `u`,
/// angles taken in `[0, 2π)`.
pub fn ccw_from(u: &Point, a: &Point, b: &Point) -> Ordering {
    let half = |v: &Point| {
        let c = cross(u, v);
        if c.is_zero() && dot(u, v).is_positive() {
            0
        } else if c.is_positive() {
            1
        } else {
            2
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb || ha == 0 {
        return ha.cmp(&hb);
    }
    let c = cross(a, b);
    if c.is_positive() {
        Ordering::Less
    } else if c.is_negative() {
        Ordering::Greater
    } else {
        Ordering::Equal
    }
}

/// Angle order from the positive x-axis.
pub fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    ccw_from(&Point::new(Rational::one(), Rational::zero()), a, b)
}

/// Intersection of the lines `ab` and `cd`, which must not be parallel.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Point {
    let r = b.sub(a);
    let s = d.sub(c);
    let t = cross(&c.sub(a), &s) / cross(&r, &s);
    a.add(&r.scale(&t))
}

/// `(λ, μ)` with `λ·p = a + μ·(b - a)`, or `None` when the ray direction is parallel to `ab`.
pub fn ray_hit(p: &Point, a: &Point, b: &Point) -> Option<(Rational, Rational)> {
    let d = b.sub(a);
    let den = cross(&d, p);
    if den.is_zero() {
        return None;
    }
    let lambda = cross(&d, a) / &den;
    let mu = cross(p, a) / den;
    Some((lambda, mu))
}

/// Parameter of `p` along `ab`, assuming `p` lies on the line.
pub fn param_along(p: &Point, a: &Point, b: &Point) -> Rational {
    let d = b.sub(a);
    dot(&p.sub(a), &d) / dot(&d, &d)
}

/// `tan(y)` by the (3,2) Padé approximant, accurate enough on `|y| ≤ π/4` to space points.
fn pade_tan(y: &Rational) -> Rational {
    let y2 = y * y;
    y * (rat(15) - &y2) / (rat(15) - y2 * rat(6))
}

/// A rational approximation of `tan(θ/2)` for `θ ∈ (-π, π)`, rounded to denominator `den`.
pub fn half_angle_parameter(theta: &Rational, den: i64) -> Option<Rational> {
    let t = pade_tan(&(theta / rat(4)));
    let one_minus = Rational::one() - &t * &t;
    if !one_minus.is_positive() {
        return None;
    }
    let v = t * rat(2) / one_minus;
    let scaled = v * rat(den) + Rational::new(1.into(), 2.into());
    Some(Rational::new(scaled.floor().to_integer(), den.into()))
}

/// 355/113.
pub fn pi() -> Rational {
    Rational::new(355.into(), 113.into())
}
