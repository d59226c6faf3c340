//! Schematic SVG of a circle drawing with its outward segments and gadget sites.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::blowup::RingBlowupBuild;
use super::geometry::{dot, Point};
use crate::graph::Rational;

const SIZE: i64 = 520;
const RADIUS: i64 = 240;

/// Fixed-point decimal with two digits, computed with integers only.
fn decimal(r: &Rational) -> String {
    let scaled = r * Rational::from_integer(BigInt::from(100));
    let (q, rem) = scaled.numer().div_mod_floor(scaled.denom());
    let twice = rem * 2;
    let q = if &twice >= scaled.denom() { q + 1 } else { q };
    let neg = q.is_negative();
    let a = q.abs();
    let (whole, frac) = a.div_mod_floor(&BigInt::from(100));
    format!("{}{}.{:02}", if neg { "-" } else { "" }, whole, frac)
}

fn px(p: &Point) -> (String, String) {
    let c = Rational::from_integer(BigInt::from(SIZE / 2));
    let r = Rational::from_integer(BigInt::from(RADIUS));
    (decimal(&(&c + &p.x * &r)), decimal(&(&c - &p.y * &r)))
}

/// `p / |p|` rounded to six decimal places.
fn to_circle(p: &Point) -> Point {
    let n2 = dot(p, p);
    if n2.is_zero() {
        return p.clone();
    }
    let scale = BigInt::from(1_000_000u64);
    let s2 = Rational::from_integer(&scale * &scale) / n2;
    let s = (s2.numer() / s2.denom()).sqrt();
    p.scale(&Rational::new(s, scale))
}

pub fn ring_blowup_svg(build: &RingBlowupBuild) -> String {
    let d = &build.drawing;
    let inv = &build.inventory;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    )
    .unwrap();
    let c = SIZE / 2;
    writeln!(
        s,
        r##"<circle cx="{c}" cy="{c}" r="{RADIUS}" fill="#eeeeee" stroke="black" stroke-width="1.5"/>"##
    )
    .unwrap();
    for &(a, b) in &inv.edges {
        let ((x1, y1), (x2, y2)) = (px(&d.points[a]), px(&d.points[b]));
        writeln!(
            s,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="1"/>"#
        )
        .unwrap();
    }
    for rec in &inv.crossings {
        let ((x1, y1), (x2, y2)) = (px(&rec.point), px(&to_circle(&rec.point)));
        writeln!(
            s,
            r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="red" stroke-width="1.5"/>"#
        )
        .unwrap();
        for &g in &rec.crossed {
            let (a, b) = inv.edges[g];
            let Some((lambda, _)) =
                super::geometry::ray_hit(&rec.point, &d.points[a], &d.points[b])
            else {
                continue;
            };
            let (x, y) = px(&rec.point.scale(&lambda));
            writeln!(
                s,
                r##"<circle cx="{x}" cy="{y}" r="5" fill="#4477aa" fill-opacity="0.6"/>"##
            )
            .unwrap();
        }
    }
    for (v, p) in d.points.iter().enumerate() {
        let (x, y) = px(p);
        writeln!(s, r#"<circle cx="{x}" cy="{y}" r="4" fill="black"/>"#).unwrap();
        let (lx, ly) = px(&p.scale(&Rational::new(BigInt::from(108), BigInt::from(100))));
        writeln!(
            s,
            r#"<text x="{lx}" y="{ly}" font-size="12" text-anchor="middle">{v}</text>"#
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}
