//! Planar kernel: filtered exact predicates, circles, and the flat torus metric.
//!
//! Decisions (`orient2d`, `incircle`, angle tests) are exact: a floating-point
//! evaluation is accepted when it clears a forward error bound, otherwise the
//! determinant is recomputed over the integers. Constructions (circumcenters,
//! radii) are plain floating point.

use crate::exact;
use crate::math;
use alloc::vec::Vec;
use core::cmp::Ordering;
use thiserror::Error;

/// A point in the plane, in unit-square units.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub(crate) fn arr(self) -> [f64; 2] {
        [self.x, self.y]
    }

    pub fn dist(self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        math::sqrt(dx * dx + dy * dy)
    }

    pub(crate) fn dist2(self, other: Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn midpoint(self, other: Point2) -> Point2 {
        Point2::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn translate(self, dx: f64, dy: f64) -> Point2 {
        Point2::new(self.x + dx, self.y + dy)
    }
}

/// A circle given by center and nonnegative radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point2,
    pub radius: f64,
}

impl Circle {
    /// Closed containment with a relative slack of `1e-12`.
    pub fn contains(&self, p: Point2) -> bool {
        p.dist(self.center) <= self.radius * (1.0 + 1e-12) + 1e-15
    }

    pub fn diametric(a: Point2, b: Point2) -> Circle {
        Circle {
            center: a.midpoint(b),
            radius: 0.5 * a.dist(b),
        }
    }
}

/// Ambient space of a point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Topology {
    UnitSquare,
    /// `[0,1)^2` with opposite sides identified.
    Torus,
}

impl Topology {
    /// Topology-aware distance; on the torus the shortest wraparound.
    pub fn distance(self, a: Point2, b: Point2) -> f64 {
        match self {
            Topology::UnitSquare => a.dist(b),
            Topology::Torus => {
                let (dx, dy) = torus_displacement(a, b);
                math::sqrt(dx * dx + dy * dy)
            }
        }
    }

    /// Representative of `b - a` (wrapped on the torus).
    pub fn displacement(self, a: Point2, b: Point2) -> (f64, f64) {
        match self {
            Topology::UnitSquare => (b.x - a.x, b.y - a.y),
            Topology::Torus => torus_displacement(a, b),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Topology::UnitSquare => "square",
            Topology::Torus => "torus",
        }
    }
}

/// Result of an exact sign decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative = -1,
    Zero = 0,
    Positive = 1,
}

impl Sign {
    fn from_ordering(o: Ordering) -> Sign {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    fn from_f64(v: f64) -> Sign {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn as_i32(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("points are collinear")]
    Collinear,
    #[error("empty point set")]
    Empty,
}

const EPS: f64 = f64::EPSILON * 0.5;
const CCW_BOUND: f64 = (3.0 + 16.0 * EPS) * EPS;
const ICC_BOUND: f64 = (10.0 + 96.0 * EPS) * EPS;

/// Sign of the signed area of `abc`: positive for counterclockwise.
pub fn orient2d(a: Point2, b: Point2, c: Point2) -> Sign {
    let left = (a.x - c.x) * (b.y - c.y);
    let right = (a.y - c.y) * (b.x - c.x);
    let det = left - right;
    let detsum = if left > 0.0 {
        if right <= 0.0 {
            return Sign::from_f64(det);
        }
        left + right
    } else if left < 0.0 {
        if right >= 0.0 {
            return Sign::from_f64(det);
        }
        -left - right
    } else {
        return Sign::from_f64(det);
    };
    if math::abs(det) >= CCW_BOUND * detsum {
        return Sign::from_f64(det);
    }
    Sign::from_ordering(exact::orient2d(a.arr(), b.arr(), c.arr()))
}

/// In-circle sign without the collinearity check; positive when `d` lies
/// strictly inside the circle through counterclockwise `abc`.
pub(crate) fn incircle_raw(a: Point2, b: Point2, c: Point2, d: Point2) -> Sign {
    let adx = a.x - d.x;
    let ady = a.y - d.y;
    let bdx = b.x - d.x;
    let bdy = b.y - d.y;
    let cdx = c.x - d.x;
    let cdy = c.y - d.y;
    let bdxcdy = bdx * cdy;
    let cdxbdy = cdx * bdy;
    let alift = adx * adx + ady * ady;
    let cdxady = cdx * ady;
    let adxcdy = adx * cdy;
    let blift = bdx * bdx + bdy * bdy;
    let adxbdy = adx * bdy;
    let bdxady = bdx * ady;
    let clift = cdx * cdx + cdy * cdy;
    let det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    let permanent = (math::abs(bdxcdy) + math::abs(cdxbdy)) * alift
        + (math::abs(cdxady) + math::abs(adxcdy)) * blift
        + (math::abs(adxbdy) + math::abs(bdxady)) * clift;
    if math::abs(det) > ICC_BOUND * permanent {
        return Sign::from_f64(det);
    }
    Sign::from_ordering(exact::incircle(a.arr(), b.arr(), c.arr(), d.arr()))
}

/// Positive iff `d` is strictly inside the circumcircle of the
/// counterclockwise triangle `abc` (negative for clockwise `abc` flips the
/// answer). Collinear `abc` is an error.
pub fn incircle(a: Point2, b: Point2, c: Point2, d: Point2) -> Result<Sign, GeomError> {
    if orient2d(a, b, c) == Sign::Zero {
        return Err(GeomError::Collinear);
    }
    Ok(incircle_raw(a, b, c, d))
}

/// In-circle with a symbolic tie-break: each point's lifted height is raised
/// by an infinitesimal that grows with its rank, so cocircular quadruples get
/// a consistent nonzero answer. Ranks must be distinct.
pub(crate) fn incircle_sos(pts: [Point2; 4], ranks: [u64; 4]) -> Sign {
    let s = incircle_raw(pts[0], pts[1], pts[2], pts[3]);
    if s != Sign::Zero {
        return s;
    }
    // d det / d lift_i for the lifted 4x4 determinant, as orientations of
    // the remaining three points.
    let partial = |i: usize| -> Sign {
        let [a, b, c, d] = pts;
        match i {
            0 => orient2d(d, b, c),
            1 => orient2d(a, d, c),
            2 => orient2d(a, b, d),
            _ => orient2d(a, b, c).flip(),
        }
    };
    let mut idx = [0usize, 1, 2, 3];
    idx.sort_unstable_by(|&i, &j| ranks[j].cmp(&ranks[i]));
    for i in idx {
        let s = partial(i);
        if s != Sign::Zero {
            return s;
        }
    }
    Sign::Zero
}

/// Exact sign of `(u-w)·(v-w)`: positive iff the angle at `w` is acute.
pub fn angle_sign(w: Point2, u: Point2, v: Point2) -> Sign {
    let t1 = (u.x - w.x) * (v.x - w.x);
    let t2 = (u.y - w.y) * (v.y - w.y);
    let det = t1 + t2;
    let sum = math::abs(t1) + math::abs(t2);
    if math::abs(det) >= CCW_BOUND * sum && det != 0.0 {
        return Sign::from_f64(det);
    }
    if t1 == 0.0 && t2 == 0.0 {
        // both products may still have rounded to zero
        return Sign::from_ordering(exact::dot(w.arr(), u.arr(), v.arr()));
    }
    Sign::from_ordering(exact::dot(w.arr(), u.arr(), v.arr()))
}

/// Circle through three non-collinear points.
pub fn circumcircle(a: Point2, b: Point2, c: Point2) -> Result<Circle, GeomError> {
    if orient2d(a, b, c) == Sign::Zero {
        return Err(GeomError::Collinear);
    }
    let (ux, uy) = circumcenter_offset(a, b, c);
    Ok(Circle {
        center: Point2::new(a.x + ux, a.y + uy),
        radius: math::sqrt(ux * ux + uy * uy),
    })
}

/// Circumcenter of `abc` relative to `a`.
pub(crate) fn circumcenter_offset(a: Point2, b: Point2, c: Point2) -> (f64, f64) {
    let bx = b.x - a.x;
    let by = b.y - a.y;
    let cx = c.x - a.x;
    let cy = c.y - a.y;
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    ((cy * b2 - by * c2) / d, (bx * c2 - cx * b2) / d)
}

/// Circumradius of `abc` (infinite for collinear input).
pub fn circumradius(a: Point2, b: Point2, c: Point2) -> f64 {
    let (ux, uy) = circumcenter_offset(a, b, c);
    math::sqrt(ux * ux + uy * uy)
}

fn circle_of_three(a: Point2, b: Point2, c: Point2) -> Circle {
    match circumcircle(a, b, c) {
        Ok(circle) => circle,
        Err(_) => {
            // collinear: the two extreme points span the circle
            let pairs = [(a, b), (a, c), (b, c)];
            let (p, q) = pairs
                .into_iter()
                .max_by(|x, y| x.0.dist2(x.1).total_cmp(&y.0.dist2(y.1)))
                .unwrap_or((a, b));
            Circle::diametric(p, q)
        }
    }
}

/// Minimal circle enclosing all points (Welzl's incremental form over a
/// fixed pseudo-random permutation, so the result is deterministic).
pub fn smallest_enclosing_circle(points: &[Point2]) -> Result<Circle, GeomError> {
    if points.is_empty() {
        return Err(GeomError::Empty);
    }
    let mut pts: Vec<Point2> = points.to_vec();
    let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ pts.len() as u64;
    for i in (1..pts.len()).rev() {
        state = splitmix64(state);
        let j = (state % (i as u64 + 1)) as usize;
        pts.swap(i, j);
    }
    let mut circle = Circle {
        center: pts[0],
        radius: 0.0,
    };
    for i in 1..pts.len() {
        if circle.contains(pts[i]) {
            continue;
        }
        circle = Circle {
            center: pts[i],
            radius: 0.0,
        };
        for j in 0..i {
            if circle.contains(pts[j]) {
                continue;
            }
            circle = Circle::diametric(pts[i], pts[j]);
            for k in 0..j {
                if !circle.contains(pts[k]) {
                    circle = circle_of_three(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    Ok(circle)
}

/// Representative of `b - a` with each coordinate in `[-1/2, 1/2)`.
pub fn torus_displacement(a: Point2, b: Point2) -> (f64, f64) {
    (wrap_half(b.x - a.x), wrap_half(b.y - a.y))
}

#[inline]
fn wrap_half(t: f64) -> f64 {
    let w = t - math::floor(t + 0.5);
    if w >= 0.5 {
        w - 1.0
    } else {
        w
    }
}

/// Maps a coordinate pair into `[0,1)^2`.
pub fn wrap_unit(p: Point2) -> Point2 {
    let f = |t: f64| {
        let w = t - math::floor(t);
        if w >= 1.0 {
            0.0
        } else {
            w
        }
    };
    Point2::new(f(p.x), f(p.y))
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient2d(p(0., 0.), p(1., 0.), p(0., 1.)), Sign::Positive);
        assert_eq!(orient2d(p(0., 0.), p(1., 0.), p(2., 0.)), Sign::Zero);
        assert_eq!(orient2d(p(0., 0.), p(0., 1.), p(1., 0.)), Sign::Negative);
    }

    #[test]
    fn incircle_examples() {
        let (a, b, c) = (p(0., 0.), p(2., 0.), p(0., 2.));
        assert_eq!(incircle(a, b, c, p(0.5, 0.5)), Ok(Sign::Positive));
        assert_eq!(incircle(a, b, c, p(2., 2.)), Ok(Sign::Zero));
        assert_eq!(incircle(a, b, c, p(5., 5.)), Ok(Sign::Negative));
        assert_eq!(
            incircle(p(0., 0.), p(1., 0.), p(2., 0.), p(1., 1.)),
            Err(GeomError::Collinear)
        );
    }

    #[test]
    fn sos_breaks_cocircular_ties_consistently() {
        let q = [p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)];
        // exactly one diagonal of the cocircular square must come out
        // Delaunay: both triangles on it agree, the other diagonal disagrees
        let s1 = incircle_sos([q[0], q[1], q[2], q[3]], [0, 1, 2, 3]);
        let s2 = incircle_sos([q[0], q[2], q[3], q[1]], [0, 2, 3, 1]);
        let s3 = incircle_sos([q[1], q[2], q[3], q[0]], [1, 2, 3, 0]);
        let s4 = incircle_sos([q[1], q[3], q[0], q[2]], [1, 3, 0, 2]);
        assert_ne!(s1, Sign::Zero);
        assert_eq!(s1, s2);
        assert_eq!(s3, s4);
        assert_eq!(s3, s1.flip());
    }

    #[test]
    fn circumcircle_examples() {
        let c = circumcircle(p(0., 0.), p(2., 0.), p(0., 2.)).unwrap();
        assert!((c.center.x - 1.0).abs() < 1e-15 && (c.center.y - 1.0).abs() < 1e-15);
        assert!((c.radius - 2f64.sqrt()).abs() < 1e-15);

        let h = 3f64.sqrt() / 2.0;
        let c = circumcircle(p(0., 0.), p(1., 0.), p(0.5, h)).unwrap();
        assert!((c.center.x - 0.5).abs() < 1e-15);
        assert!((c.center.y - 3f64.sqrt() / 6.0).abs() < 1e-15);
        assert!((c.radius - 1.0 / 3f64.sqrt()).abs() < 1e-15);

        let c = circumcircle(p(0., 0.), p(4., 0.), p(2., 2.)).unwrap();
        assert!((c.center.x - 2.0).abs() < 1e-15 && c.center.y.abs() < 1e-15);
        assert!((c.radius - 2.0).abs() < 1e-15);

        assert_eq!(
            circumcircle(p(0., 0.), p(1., 1.), p(2., 2.)),
            Err(GeomError::Collinear)
        );
    }

    #[test]
    fn enclosing_circle_examples() {
        let c = smallest_enclosing_circle(&[p(0., 0.), p(2., 0.)]).unwrap();
        assert_eq!(c.center, p(1., 0.));
        assert_eq!(c.radius, 1.0);
        let c = smallest_enclosing_circle(&[p(0., 0.), p(2., 0.), p(1., 0.1)]).unwrap();
        assert!((c.center.x - 1.0).abs() < 1e-15 && c.center.y.abs() < 1e-15);
        assert_eq!(c.radius, 1.0);
        let c = smallest_enclosing_circle(&[p(0., 0.), p(2., 0.), p(1., 5.)]).unwrap();
        let cc = circumcircle(p(0., 0.), p(2., 0.), p(1., 5.)).unwrap();
        assert!((c.radius - cc.radius).abs() < 1e-12);
        assert_eq!(smallest_enclosing_circle(&[]), Err(GeomError::Empty));
    }

    #[test]
    fn torus_examples() {
        let (dx, dy) = torus_displacement(p(0.1, 0.1), p(0.9, 0.1));
        assert!((dx + 0.2).abs() < 1e-15 && dy == 0.0);
        assert_eq!(torus_displacement(p(0.5, 0.5), p(0.5, 0.5)), (0.0, 0.0));
        let (dx, dy) = torus_displacement(p(0., 0.), p(0.5, 0.5));
        // exactly half resolves to -1/2
        assert_eq!((dx, dy), (-0.5, -0.5));
        assert_eq!(Topology::Torus.distance(p(0., 0.), p(0.5, 0.5)), 0.5f64.sqrt());
    }

    #[test]
    fn acute_angle_sign() {
        assert_eq!(angle_sign(p(0., 0.), p(1., 0.), p(0., 1.)), Sign::Zero);
        assert_eq!(angle_sign(p(0., 0.), p(1., 0.), p(1., 1.)), Sign::Positive);
        assert_eq!(angle_sign(p(0., 0.), p(1., 0.), p(-1., 1.)), Sign::Negative);
    }
}
