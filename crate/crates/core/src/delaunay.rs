//! Delaunay mosaics in the unit square and on the flat torus.
//!
//! Construction is incremental (Bowyer–Watson) over a triangulation closed by
//! ghost triangles, with insertion in biased randomized rounds that are each
//! Hilbert sorted. Ties on a common circle are resolved by the symbolic lift
//! perturbation of [`geom`](crate::geom), so the result is always simplicial
//! and independent of insertion order.
//!
//! The torus mosaic is cut out of the triangulation of translated copies of
//! the point set; it is a Δ-complex and may contain two edges with the same
//! endpoints and different wrap offsets.

use crate::geom::{self, circumradius, orient2d, Point2, Sign, Topology};
use alloc::vec::Vec;
use thiserror::Error;

/// Marker for "no triangle" in [`Mosaic::edge_triangles`].
pub const NONE: u32 = u32::MAX;
const GHOST: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DelaunayError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point coordinates must be finite")]
    NonFinite,
    #[error("points {0} and {1} coincide")]
    Duplicate(u32, u32),
    #[error("all points are collinear")]
    Collinear,
    #[error("periodic triangulation is not sound for this point set ({0})")]
    TorusUnsound(&'static str),
    #[error("edge {0} cannot be flipped")]
    NotFlippable(u32),
}

/// Wrap offset of a vertex copy, each coordinate in {-1, 0, 1}.
pub type Offset = [i8; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    /// Endpoints with `v[0] < v[1]` (equal only never).
    pub v: [u32; 2],
    /// Offset of the copy of `v[1]` relative to `v[0]`.
    pub offset: Offset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    /// Counterclockwise in the embedding given by `offsets`.
    pub v: [u32; 3],
    /// Offsets of the vertex copies; all zero on the square.
    pub offsets: [Offset; 3],
    /// `edges[i]` is the edge opposite `v[i]`.
    pub edges: [u32; 3],
}

#[derive(Debug, Clone)]
pub struct Mosaic {
    pub topology: Topology,
    pub vertices: Vec<Point2>,
    pub edges: Vec<Edge>,
    pub triangles: Vec<Triangle>,
    /// Incident triangles per edge; the second is [`NONE`] on the hull.
    pub edge_triangles: Vec<[u32; 2]>,
}

#[inline]
fn shifted(p: Point2, o: Offset) -> Point2 {
    p.translate(o[0] as f64, o[1] as f64)
}

impl Mosaic {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex positions of a triangle in its embedding.
    pub fn triangle_points(&self, t: usize) -> [Point2; 3] {
        let tri = &self.triangles[t];
        [0, 1, 2].map(|i| shifted(self.vertices[tri.v[i] as usize], tri.offsets[i]))
    }

    pub fn edge_points(&self, e: usize) -> [Point2; 2] {
        let edge = &self.edges[e];
        [
            self.vertices[edge.v[0] as usize],
            shifted(self.vertices[edge.v[1] as usize], edge.offset),
        ]
    }

    pub fn edge_length(&self, e: usize) -> f64 {
        let [a, b] = self.edge_points(e);
        a.dist(b)
    }

    /// `V - E + T`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    /// Brute-force check that no vertex (or, on the torus, no translate of a
    /// vertex) lies strictly inside any triangle's circumcircle.
    pub fn validate(&self) -> bool {
        let shifts: &[Offset] = match self.topology {
            Topology::UnitSquare => &[[0, 0]],
            Topology::Torus => &[
                [-1, -1],
                [0, -1],
                [1, -1],
                [-1, 0],
                [0, 0],
                [1, 0],
                [-1, 1],
                [0, 1],
                [1, 1],
            ],
        };
        for t in 0..self.triangles.len() {
            let tri = &self.triangles[t];
            let [a, b, c] = self.triangle_points(t);
            if orient2d(a, b, c) != Sign::Positive {
                return false;
            }
            for (v, &p) in self.vertices.iter().enumerate() {
                for &s in shifts {
                    let own = (0..3).any(|i| tri.v[i] as usize == v && tri.offsets[i] == s);
                    if own {
                        continue;
                    }
                    if geom::incircle_raw(a, b, c, shifted(p, s)) == Sign::Positive {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Replaces the diagonal `e` of the quadrilateral formed by its two
    /// triangles with the other diagonal. Square topology only.
    pub fn flip_edge(&self, e: u32) -> Result<Mosaic, DelaunayError> {
        let [t0, t1] = self.edge_triangles[e as usize];
        if t1 == NONE || self.topology != Topology::UnitSquare {
            return Err(DelaunayError::NotFlippable(e));
        }
        let apex = |t: u32| {
            let tri = &self.triangles[t as usize];
            let k = (0..3).find(|&k| tri.edges[k] == e).unwrap_or(0);
            (tri.v[k], tri.v[(k + 1) % 3], tri.v[(k + 2) % 3])
        };
        let (c, a, b) = apex(t0);
        let (d, _, _) = apex(t1);
        let pt = |v: u32| self.vertices[v as usize];
        if orient2d(pt(c), pt(a), pt(d)) != Sign::Positive
            || orient2d(pt(d), pt(b), pt(c)) != Sign::Positive
        {
            return Err(DelaunayError::NotFlippable(e));
        }
        let mut tris: Vec<([u32; 3], [Offset; 3])> = Vec::with_capacity(self.triangles.len());
        for (t, tri) in self.triangles.iter().enumerate() {
            if t as u32 != t0 && t as u32 != t1 {
                tris.push((tri.v, tri.offsets));
            }
        }
        tris.push(([c, a, d], [[0, 0]; 3]));
        tris.push(([d, b, c], [[0, 0]; 3]));
        Ok(Mosaic::from_triangles(
            self.topology,
            self.vertices.clone(),
            tris,
        ))
    }

    /// Assembles edges and incidences from counterclockwise triangles.
    pub(crate) fn from_triangles(
        topology: Topology,
        vertices: Vec<Point2>,
        tris: Vec<([u32; 3], [Offset; 3])>,
    ) -> Mosaic {
        // (key, triangle, local slot)
        let mut half: Vec<((u32, u32, Offset), u32, u8)> = Vec::with_capacity(3 * tris.len());
        for (t, (v, o)) in tris.iter().enumerate() {
            for k in 0..3 {
                let (i, j) = ((k + 1) % 3, (k + 2) % 3);
                let (u, w) = (v[i], v[j]);
                let rel = [o[j][0] - o[i][0], o[j][1] - o[i][1]];
                let key = if u < w {
                    (u, w, rel)
                } else {
                    (w, u, [-rel[0], -rel[1]])
                };
                half.push((key, t as u32, k as u8));
            }
        }
        half.sort_unstable();
        let mut edges = Vec::new();
        let mut edge_triangles: Vec<[u32; 2]> = Vec::new();
        let mut triangles: Vec<Triangle> = tris
            .iter()
            .map(|&(v, offsets)| Triangle {
                v,
                offsets,
                edges: [NONE; 3],
            })
            .collect();
        let mut i = 0;
        while i < half.len() {
            let key = half[i].0;
            let e = edges.len() as u32;
            edges.push(Edge {
                v: [key.0, key.1],
                offset: key.2,
            });
            let mut inc = [NONE; 2];
            let mut slot = 0;
            while i < half.len() && half[i].0 == key {
                let (_, t, k) = half[i];
                triangles[t as usize].edges[k as usize] = e;
                if slot < 2 {
                    inc[slot] = t;
                }
                slot += 1;
                i += 1;
            }
            edge_triangles.push(inc);
        }
        Mosaic {
            topology,
            vertices,
            edges,
            triangles,
            edge_triangles,
        }
    }
}

/// Delaunay mosaic with the default insertion seed.
pub fn triangulate(points: &[Point2], topology: Topology) -> Result<Mosaic, DelaunayError> {
    triangulate_seeded(points, topology, 0x5eed)
}

/// Delaunay mosaic; `seed` only affects the insertion order, never the result.
pub fn triangulate_seeded(
    points: &[Point2],
    topology: Topology,
    seed: u64,
) -> Result<Mosaic, DelaunayError> {
    let n = points.len();
    if n < 3 {
        return Err(DelaunayError::TooFewPoints(n));
    }
    if points.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return Err(DelaunayError::NonFinite);
    }
    match topology {
        Topology::UnitSquare => {
            check_duplicates(points)?;
            let ranks: Vec<u64> = (0..n as u64).collect();
            let tris = bowyer_watson(points, &ranks, seed)?;
            let tris = tris.into_iter().map(|v| (v, [[0, 0]; 3])).collect();
            Ok(Mosaic::from_triangles(topology, points.to_vec(), tris))
        }
        Topology::Torus => {
            let wrapped: Vec<Point2> = points.iter().map(|&p| geom::wrap_unit(p)).collect();
            check_duplicates(&wrapped)?;
            let margin = 8.0 / crate::math::sqrt(n as f64);
            if margin < 1.0 {
                if let Ok(m) = torus_from_copies(&wrapped, margin, seed) {
                    return Ok(m);
                }
            }
            torus_from_copies(&wrapped, 1.0, seed)
        }
    }
}

fn check_duplicates(points: &[Point2]) -> Result<(), DelaunayError> {
    let mut idx: Vec<u32> = (0..points.len() as u32).collect();
    let key = |i: u32| {
        let p = points[i as usize];
        // +0.0 and -0.0 compare equal as points
        (p.x + 0.0, p.y + 0.0)
    };
    idx.sort_unstable_by(|&a, &b| {
        let (ka, kb) = (key(a), key(b));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
    for w in idx.windows(2) {
        if key(w[0]) == key(w[1]) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(DelaunayError::Duplicate(a, b));
        }
    }
    Ok(())
}

const COPY_SHIFTS: [Offset; 9] = [
    [0, 0],
    [-1, -1],
    [0, -1],
    [1, -1],
    [-1, 0],
    [1, 0],
    [-1, 1],
    [0, 1],
    [1, 1],
];

/// Triangulates the translates that fall within `margin` of the unit square
/// and keeps the triangles whose lowest-index vertex is an original point.
fn torus_from_copies(points: &[Point2], margin: f64, seed: u64) -> Result<Mosaic, DelaunayError> {
    let n = points.len();
    let mut lifted = Vec::with_capacity(n * 2);
    let mut origin: Vec<(u32, u8)> = Vec::with_capacity(n * 2);
    let mut ranks = Vec::with_capacity(n * 2);
    for (c, s) in COPY_SHIFTS.iter().enumerate() {
        for (i, &p) in points.iter().enumerate() {
            let q = shifted(p, *s);
            let inside = q.x >= -margin && q.x < 1.0 + margin && q.y >= -margin && q.y < 1.0 + margin;
            if c == 0 || inside {
                lifted.push(q);
                origin.push((i as u32, c as u8));
                // translates of one point must order consistently against
                // every other point, so the point index dominates
                ranks.push(i as u64 * 9 + c as u64);
            }
        }
    }
    let tris = bowyer_watson(&lifted, &ranks, seed)?;
    let limit = 0.5 * margin;
    let mut out = Vec::with_capacity(2 * n);
    for v in tris {
        let k = (0..3)
            .min_by_key(|&k| origin[v[k] as usize])
            .unwrap_or(0);
        if origin[v[k] as usize].1 != 0 {
            continue;
        }
        let [a, b, c] = v.map(|i| lifted[i as usize]);
        if circumradius(a, b, c) >= limit {
            return Err(DelaunayError::TorusUnsound("empty circle too large"));
        }
        let ids = v.map(|i| origin[i as usize].0);
        let offs = v.map(|i| COPY_SHIFTS[origin[i as usize].1 as usize]);
        out.push((ids, offs));
    }
    if out.len() != 2 * n {
        return Err(DelaunayError::TorusUnsound("triangle count"));
    }
    Ok(Mosaic::from_triangles(Topology::Torus, points.to_vec(), out))
}

struct Tds<'a> {
    pts: &'a [Point2],
    ranks: &'a [u64],
    tri: Vec<[u32; 3]>,
    nbr: Vec<[u32; 3]>,
    alive: Vec<bool>,
    mark: Vec<u32>,
    stamp: u32,
    free: Vec<u32>,
    last: u32,
}

#[derive(Clone, Copy)]
struct BoundaryEdge {
    x: u32,
    y: u32,
    outside: u32,
}

impl<'a> Tds<'a> {
    fn pt(&self, v: u32) -> Point2 {
        self.pts[v as usize]
    }

    fn is_ghost(&self, t: u32) -> bool {
        self.tri[t as usize][2] == GHOST
    }

    fn alloc(&mut self, v: [u32; 3]) -> u32 {
        if let Some(t) = self.free.pop() {
            self.tri[t as usize] = v;
            self.nbr[t as usize] = [GHOST; 3];
            self.alive[t as usize] = true;
            t
        } else {
            self.tri.push(v);
            self.nbr.push([GHOST; 3]);
            self.alive.push(true);
            self.mark.push(0);
            (self.tri.len() - 1) as u32
        }
    }

    fn in_conflict(&self, t: u32, p: u32) -> bool {
        let [a, b, c] = self.tri[t as usize];
        let pp = self.pt(p);
        if c == GHOST {
            let (pa, pb) = (self.pt(a), self.pt(b));
            match orient2d(pa, pb, pp) {
                Sign::Positive => true,
                Sign::Negative => false,
                Sign::Zero => {
                    // strictly inside the segment ab
                    geom::angle_sign(pp, pa, pb) == Sign::Negative
                }
            }
        } else {
            let pts = [self.pt(a), self.pt(b), self.pt(c), pp];
            let ranks = [a, b, c, p].map(|v| self.ranks[v as usize]);
            geom::incircle_sos(pts, ranks) == Sign::Positive
        }
    }

    /// Visibility walk from the last created triangle to one in conflict
    /// with `p`.
    fn locate(&self, p: u32) -> u32 {
        let pp = self.pt(p);
        let mut t = self.last;
        if self.is_ghost(t) {
            t = self.nbr[t as usize][2];
        }
        let cap = 4 * self.tri.len() + 16;
        let mut rot = p as usize;
        for _ in 0..cap {
            let v = self.tri[t as usize];
            let mut moved = false;
            rot = rot.wrapping_mul(1103515245).wrapping_add(12345);
            let start = (rot >> 16) % 3;
            for s in 0..3 {
                let k = (start + s) % 3;
                let (a, b) = (v[(k + 1) % 3], v[(k + 2) % 3]);
                if orient2d(self.pt(a), self.pt(b), pp) == Sign::Negative {
                    t = self.nbr[t as usize][k];
                    moved = true;
                    break;
                }
            }
            if !moved || self.is_ghost(t) {
                return t;
            }
        }
        // the walk should never cycle; scan as a fallback
        (0..self.tri.len() as u32)
            .find(|&t| self.alive[t as usize] && self.in_conflict(t, p))
            .unwrap_or(self.last)
    }

    fn insert(&mut self, p: u32) {
        let seed = self.locate(p);
        self.stamp = self.stamp.wrapping_add(1);
        let stamp = self.stamp;
        let mut cavity: Vec<u32> = Vec::new();
        let mut boundary: Vec<BoundaryEdge> = Vec::new();
        let mut stack = alloc::vec![seed];
        self.mark[seed as usize] = stamp;
        while let Some(t) = stack.pop() {
            cavity.push(t);
            let v = self.tri[t as usize];
            for k in 0..3 {
                let u = self.nbr[t as usize][k];
                let edge = (v[(k + 1) % 3], v[(k + 2) % 3]);
                if self.mark[u as usize] == stamp {
                    continue;
                }
                if self.in_conflict(u, p) {
                    self.mark[u as usize] = stamp;
                    stack.push(u);
                } else {
                    boundary.push(BoundaryEdge {
                        x: edge.0,
                        y: edge.1,
                        outside: u,
                    });
                }
            }
        }
        for &t in &cavity {
            self.alive[t as usize] = false;
            self.free.push(t);
        }
        let mut made: Vec<u32> = Vec::with_capacity(boundary.len());
        for be in &boundary {
            let t = self.alloc([p, be.x, be.y]);
            self.nbr[t as usize][0] = be.outside;
            let o = be.outside as usize;
            let ov = self.tri[o];
            for k in 0..3 {
                if ov[(k + 1) % 3] == be.y && ov[(k + 2) % 3] == be.x {
                    self.nbr[o][k] = t;
                }
            }
            made.push(t);
        }
        for (i, be) in boundary.iter().enumerate() {
            let t = made[i] as usize;
            for (j, other) in boundary.iter().enumerate() {
                if other.x == be.y {
                    self.nbr[t][1] = made[j];
                }
                if other.y == be.x {
                    self.nbr[t][2] = made[j];
                }
            }
        }
        for &t in &made {
            let v = self.tri[t as usize];
            if v[1] == GHOST {
                let n = self.nbr[t as usize];
                self.tri[t as usize] = [v[2], v[0], v[1]];
                self.nbr[t as usize] = [n[2], n[0], n[1]];
            } else if v[2] != GHOST {
                self.last = t;
            }
        }
    }
}

fn bowyer_watson(pts: &[Point2], ranks: &[u64], seed: u64) -> Result<Vec<[u32; 3]>, DelaunayError> {
    let mut order = insertion_order(pts, seed);
    let (a, b) = (order[0], order[1]);
    let third = (2..order.len())
        .find(|&k| orient2d(pts[a as usize], pts[b as usize], pts[order[k] as usize]) != Sign::Zero)
        .ok_or(DelaunayError::Collinear)?;
    let c = order.remove(third);
    order.insert(2, c);
    let (a, b) = if orient2d(pts[a as usize], pts[b as usize], pts[c as usize]) == Sign::Positive {
        (a, b)
    } else {
        (b, a)
    };
    let mut tds = Tds {
        pts,
        ranks,
        tri: alloc::vec![[a, b, c], [b, a, GHOST], [c, b, GHOST], [a, c, GHOST]],
        nbr: alloc::vec![[2, 3, 1], [3, 2, 0], [1, 3, 0], [2, 1, 0]],
        alive: alloc::vec![true; 4],
        mark: alloc::vec![0; 4],
        stamp: 0,
        free: Vec::new(),
        last: 0,
    };
    for &p in &order[3..] {
        tds.insert(p);
    }
    Ok((0..tds.tri.len())
        .filter(|&t| tds.alive[t] && tds.tri[t][2] != GHOST)
        .map(|t| tds.tri[t])
        .collect())
}

/// Biased randomized insertion order: a seeded shuffle cut into rounds of
/// doubling size, each round sorted along a Hilbert curve.
fn insertion_order(pts: &[Point2], seed: u64) -> Vec<u32> {
    let n = pts.len();
    let mut order: Vec<u32> = (0..n as u32).collect();
    let mut state = seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for i in (1..n).rev() {
        state = geom::splitmix64(state);
        let j = (state % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let side = (1u32 << 16) as f64;
    let key = |i: u32| {
        let p = pts[i as usize];
        let gx = (((p.x - x0) / span) * (side - 1.0)) as u32;
        let gy = (((p.y - y0) / span) * (side - 1.0)) as u32;
        hilbert_index(gx, gy)
    };
    let mut start = 0;
    let mut size = 64usize.min(n);
    while start < n {
        let end = (start + size).min(n);
        order[start..end].sort_by_key(|&i| key(i));
        start = end;
        size *= 2;
    }
    order
}

fn hilbert_index(mut x: u32, mut y: u32) -> u64 {
    let n: u32 = 1 << 16;
    let mut d = 0u64;
    let mut s = n / 2;
    while s > 0 {
        let rx = u32::from(x & s > 0);
        let ry = u32::from(y & s > 0);
        d += (s as u64) * (s as u64) * u64::from((3 * rx) ^ ry);
        if ry == 0 {
            if rx == 1 {
                x = n - 1 - x;
                y = n - 1 - y;
            }
            core::mem::swap(&mut x, &mut y);
        }
        s /= 2;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::vec;

    fn random_points(n: usize, seed: u64) -> Vec<Point2> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Point2::new(rng.random::<f64>(), rng.random::<f64>()))
            .collect()
    }

    #[test]
    fn square_corners() {
        let pts = vec![
            Point2::new(0., 0.),
            Point2::new(1., 0.),
            Point2::new(1., 1.),
            Point2::new(0., 1.),
        ];
        let m = triangulate(&pts, Topology::UnitSquare).unwrap();
        assert_eq!(m.edges.len(), 5);
        assert_eq!(m.triangles.len(), 2);
        assert!(m.validate());
    }

    #[test]
    fn single_triangle() {
        let pts = vec![Point2::new(0., 0.), Point2::new(1., 0.), Point2::new(0., 1.)];
        let m = triangulate(&pts, Topology::UnitSquare).unwrap();
        assert_eq!((m.edges.len(), m.triangles.len()), (3, 1));
        assert!(m.validate());
    }

    #[test]
    fn errors() {
        let two = vec![Point2::new(0., 0.), Point2::new(1., 0.)];
        assert_eq!(
            triangulate(&two, Topology::UnitSquare).unwrap_err(),
            DelaunayError::TooFewPoints(2)
        );
        let line: Vec<Point2> = (0..5).map(|i| Point2::new(i as f64, 2.0 * i as f64)).collect();
        assert_eq!(
            triangulate(&line, Topology::UnitSquare).unwrap_err(),
            DelaunayError::Collinear
        );
        let dup = vec![Point2::new(0., 0.), Point2::new(1., 0.), Point2::new(0., 0.)];
        assert_eq!(
            triangulate(&dup, Topology::UnitSquare).unwrap_err(),
            DelaunayError::Duplicate(0, 2)
        );
    }

    #[test]
    fn collinear_hull_and_grid() {
        // 5x5 grid: every cell is cocircular, the hull has collinear runs
        let mut pts = Vec::new();
        for i in 0..5 {
            for j in 0..5 {
                pts.push(Point2::new(i as f64 * 0.25, j as f64 * 0.25));
            }
        }
        let m = triangulate(&pts, Topology::UnitSquare).unwrap();
        assert_eq!(m.euler_characteristic(), 1);
        assert_eq!(m.triangles.len(), 32);
        assert!(m.validate());
        let a = triangulate_seeded(&pts, Topology::UnitSquare, 1).unwrap();
        let b = triangulate_seeded(&pts, Topology::UnitSquare, 2).unwrap();
        assert_eq!(a.edges, b.edges);
    }

    #[test]
    fn euler_relations() {
        for (n, seed) in [(10, 1), (100, 2), (1000, 3)] {
            let pts = random_points(n, seed);
            let sq = triangulate(&pts, Topology::UnitSquare).unwrap();
            assert_eq!(sq.euler_characteristic(), 1);
            assert!(sq.validate());
            let to = triangulate(&pts, Topology::Torus).unwrap();
            assert_eq!(to.triangles.len(), 2 * n);
            assert_eq!(to.edges.len(), 3 * n);
            assert!(to.edge_triangles.iter().all(|t| t[1] != NONE));
            assert!(to.validate());
        }
    }

    #[test]
    fn torus_grid_is_consistent() {
        let mut pts = Vec::new();
        for i in 0..6 {
            for j in 0..6 {
                pts.push(Point2::new(i as f64 / 6.0, j as f64 / 6.0));
            }
        }
        let m = triangulate(&pts, Topology::Torus).unwrap();
        assert_eq!(m.triangles.len(), 72);
        assert!(m.validate());
    }

    #[test]
    fn flipped_edge_fails_validation() {
        let pts = random_points(30, 9);
        let m = triangulate(&pts, Topology::UnitSquare).unwrap();
        let e = (0..m.edges.len() as u32)
            .find(|&e| m.flip_edge(e).is_ok())
            .unwrap();
        assert!(!m.flip_edge(e).unwrap().validate());
    }

    #[test]
    fn hilbert_visits_all_cells() {
        let mut seen = vec![false; 16];
        for x in 0..4u32 {
            for y in 0..4u32 {
                let d = hilbert_index(x << 14, y << 14) >> 28;
                seen[d as usize] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}
