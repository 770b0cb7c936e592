//! Lunar minimum spanning tree of a 2-colored point set.
//!
//! The lune of a bichromatic pair `(a, b)` at radius `r` is the intersection
//! of the two radius-`r` disks around `a` and `b`. It wakes at `|ab|/2`, and
//! two lunes meet once `r` reaches the radius of the smallest circle
//! enclosing their (at most four) defining points. Since lunes are convex,
//! the components of their union are the components of this intersection
//! graph, so the sweep is a Kruskal pass over wake and merge events with the
//! elder rule. A lune that wakes inside an existing component records
//! nothing.
//!
//! [`LunarMode::Exact`] takes every lune and the minimum spanning tree of the
//! complete lune graph. [`LunarMode::Pruned`] only looks where the union of
//! lunes can change its components: lunes and lune pairs spanned by
//! Delaunay edges and triangles of the whole set, the saddles of each color
//! class on its own, and for every other lune a link to the lune of the
//! nearest pair around its midpoint. At each of these places all points tied
//! for nearest are used, so cocircular input is covered too. Both modes
//! evaluate every radius with the same canonical formula and agree to the
//! last bit on points in general position; with exact ties, equal radii
//! reached through different points can differ in the last bits.

use crate::delaunay::{triangulate, Mosaic};
use crate::geom::{self, circumcenter_offset, Point2, Topology};
use crate::grid::Grid;
use crate::math::sqrt;
use crate::unionfind::UnionFind;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LunarMode {
    /// All lunes and all lune pairs; quadratic in the number of lunes.
    Exact,
    #[default]
    Pruned,
}

/// Lune of `points0[a]` and `points1[b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lune {
    pub a: u32,
    pub b: u32,
    pub wake_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Wake,
    Merge,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::Wake => "wake",
            EventKind::Merge => "merge",
        }
    }
}

/// A recorded event; a wake lists its lune twice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LunarEvent {
    pub radius: f64,
    pub kind: EventKind,
    pub lunes: [Lune; 2],
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LunarTree {
    /// Lunes that start a component, with cost `2 · wake radius`.
    pub component_births: Vec<(Lune, f64)>,
    /// Lune pairs whose meeting joins two components, with cost
    /// `2 · merge radius`.
    pub merges: Vec<([Lune; 2], f64)>,
    /// Σ merge costs − Σ birth costs + min birth cost. The oldest
    /// component never dies, so a single pair costs nothing.
    pub cost: f64,
    /// Births and merges in sweep order.
    pub events: Vec<LunarEvent>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LunarError {
    #[error("color class {0} is empty")]
    EmptyColor(u8),
    #[error("point coordinates must be finite")]
    NonFinite,
    #[error("lunes never connect")]
    Disconnected,
    #[error("torus sweep reached radius {0}, beyond the 1/4 where lunes stay embedded")]
    TorusUnsound(f64),
    #[error("pruned sweep failed its audit: {0}")]
    Audit(&'static str),
}

/// Point identity: color, then index within the color.
type Key = (u8, u32);

/// Relative slack of the enclosure test inside the canonical circle.
const ENCLOSE_SLACK: f64 = 1e-11;

struct Colored {
    pts: [Vec<Point2>; 2],
    topology: Topology,
}

impl Colored {
    fn new(points0: &[Point2], points1: &[Point2], topology: Topology) -> Result<Self, LunarError> {
        if points0.is_empty() {
            return Err(LunarError::EmptyColor(0));
        }
        if points1.is_empty() {
            return Err(LunarError::EmptyColor(1));
        }
        let finite = |p: &Point2| p.x.is_finite() && p.y.is_finite();
        if !points0.iter().all(finite) || !points1.iter().all(finite) {
            return Err(LunarError::NonFinite);
        }
        let place = |p: &Point2| match topology {
            Topology::Torus => geom::wrap_unit(*p),
            Topology::UnitSquare => *p,
        };
        Ok(Colored {
            pts: [points0.iter().map(place).collect(), points1.iter().map(place).collect()],
            topology,
        })
    }

    fn at(&self, k: Key) -> Point2 {
        self.pts[k.0 as usize][k.1 as usize]
    }

    fn dist(&self, x: Key, y: Key) -> f64 {
        self.topology.distance(self.at(x), self.at(y))
    }

    fn wake(&self, a: u32, b: u32) -> f64 {
        0.5 * self.dist((0, a), (1, b))
    }

    fn lune(&self, key: (u32, u32)) -> Lune {
        Lune {
            a: key.0,
            b: key.1,
            wake_radius: self.wake(key.0, key.1),
        }
    }

    /// Midpoint of a lune's pair (wrapped on the torus).
    fn midpoint(&self, a: u32, b: u32) -> Point2 {
        let (pa, pb) = (self.pts[0][a as usize], self.pts[1][b as usize]);
        match self.topology {
            Topology::UnitSquare => pa.midpoint(pb),
            Topology::Torus => {
                let (dx, dy) = geom::torus_displacement(pa, pb);
                geom::wrap_unit(pa.translate(0.5 * dx, 0.5 * dy))
            }
        }
    }

    /// Radius of the smallest circle enclosing the given points, evaluated
    /// from a canonical ordering of the distinct keys so that the same set
    /// always yields the same bits. `None` on the torus when the points do
    /// not fit in one chart.
    fn enclosing_radius(&self, keys: &[Key]) -> Option<f64> {
        let mut ks = [(0u8, 0u32); 4];
        let mut len = 0;
        for &k in keys {
            if !ks[..len].contains(&k) {
                ks[len] = k;
                len += 1;
            }
        }
        let ks = &mut ks[..len];
        ks.sort_unstable();
        if len == 1 {
            return Some(0.0);
        }
        let mut q = [Point2::default(); 4];
        let base = self.at(ks[0]);
        q[0] = base;
        for i in 1..len {
            q[i] = match self.topology {
                Topology::UnitSquare => self.at(ks[i]),
                Topology::Torus => {
                    let (dx, dy) = geom::torus_displacement(base, self.at(ks[i]));
                    base.translate(dx, dy)
                }
            };
        }
        let mut d = [[0.0f64; 4]; 4];
        for i in 0..len {
            for j in i + 1..len {
                d[i][j] = self.dist(ks[i], ks[j]);
                d[j][i] = d[i][j];
                if self.topology == Topology::Torus {
                    let (dx, dy) = geom::torus_displacement(self.at(ks[i]), self.at(ks[j]));
                    let (ex, ey) = (q[j].x - q[i].x, q[j].y - q[i].y);
                    if (dx - ex).abs() > 1e-9 || (dy - ey).abs() > 1e-9 {
                        return None;
                    }
                }
            }
        }
        let encloses = |c: Point2, r: f64, skip: &[usize]| {
            (0..len).all(|k| skip.contains(&k) || q[k].dist(c) <= r * (1.0 + ENCLOSE_SLACK))
        };
        let mut best = f64::INFINITY;
        for i in 0..len {
            for j in i + 1..len {
                let r = 0.5 * d[i][j];
                if r < best && encloses(q[i].midpoint(q[j]), r, &[i, j]) {
                    best = r;
                }
            }
        }
        if len >= 3 {
            for i in 0..len {
                for j in i + 1..len {
                    for k in j + 1..len {
                        let (a, b, c) = (d[j][k], d[i][k], d[i][j]);
                        let (a2, b2, c2) = (a * a, b * b, c * c);
                        if !(a2 + b2 > c2 && b2 + c2 > a2 && a2 + c2 > b2) {
                            continue;
                        }
                        let area = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
                        if !(area > 0.0) {
                            continue;
                        }
                        let r = a * b * c / sqrt(area);
                        if r >= best {
                            continue;
                        }
                        let (ux, uy) = circumcenter_offset(q[i], q[j], q[k]);
                        if encloses(q[i].translate(ux, uy), r, &[i, j, k]) {
                            best = r;
                        }
                    }
                }
            }
        }
        if best.is_finite() {
            Some(best)
        } else {
            // only reachable through rounding on near-degenerate input
            geom::smallest_enclosing_circle(&q[..len]).ok().map(|c| c.radius)
        }
    }

    /// Radius at which two lunes first meet, never below either wake.
    fn meet(&self, x: (u32, u32), y: (u32, u32)) -> Option<f64> {
        let r = self.enclosing_radius(&[(0, x.0), (1, x.1), (0, y.0), (1, y.1)])?;
        Some(r.max(self.wake(x.0, x.1)).max(self.wake(y.0, y.1)))
    }
}

/// Radius at which `l1` and `l2` first intersect: the smallest enclosing
/// circle of their defining points. Infinite on the torus if the points do
/// not fit in one chart.
pub fn merge_radius(points0: &[Point2], points1: &[Point2], topology: Topology, l1: Lune, l2: Lune) -> f64 {
    match Colored::new(points0, points1, topology) {
        Ok(c) => c.meet((l1.a, l1.b), (l2.a, l2.b)).unwrap_or(f64::INFINITY),
        Err(_) => f64::NAN,
    }
}

/// Lunar EMST of `points0` (color 0) and `points1` (color 1).
pub fn lunar_emst(
    points0: &[Point2],
    points1: &[Point2],
    topology: Topology,
    mode: LunarMode,
) -> Result<LunarTree, LunarError> {
    let col = Colored::new(points0, points1, topology)?;
    match mode {
        LunarMode::Exact => exact(&col),
        LunarMode::Pruned => match pruned(&col)? {
            Some(tree) => Ok(tree),
            None => exact(&col),
        },
    }
}

/// Half the lunar EMST cost: the 1-norm of the degree-1 relative diagram.
pub fn relative1_norm(tree: &LunarTree) -> f64 {
    tree.cost / 2.0
}

/// Lunes wider than this never wake below the radius where the torus sweep
/// must end.
const TORUS_LIMIT: f64 = 0.25;

fn exact(col: &Colored) -> Result<LunarTree, LunarError> {
    check_torus_cover(col)?;
    let (n0, n1) = (col.pts[0].len(), col.pts[1].len());
    let torus = col.topology == Topology::Torus;
    let mut keys: Vec<(u32, u32)> = Vec::new();
    for a in 0..n0 as u32 {
        for b in 0..n1 as u32 {
            if !(torus && col.wake(a, b) >= TORUS_LIMIT) {
                keys.push((a, b));
            }
        }
    }
    let m = keys.len();
    let wakes: Vec<f64> = keys.iter().map(|&(a, b)| col.wake(a, b)).collect();
    // half the diameter of the defining points bounds the meeting radius
    // from below; the tables keep that bound cheap
    let table = |c0: u8, c1: u8, len0: usize, len1: usize| {
        let mut t = alloc::vec![0.0f64; len0 * len1];
        for i in 0..len0 {
            for j in 0..len1 {
                t[i * len1 + j] = 0.5 * col.dist((c0, i as u32), (c1, j as u32));
            }
        }
        t
    };
    let (h00, h11, h01) = (table(0, 0, n0, n0), table(1, 1, n1, n1), table(0, 1, n0, n1));
    let lower = |x: (u32, u32), y: (u32, u32)| {
        let (a, b, c, d) = (x.0 as usize, x.1 as usize, y.0 as usize, y.1 as usize);
        h00[a * n0 + c]
            .max(h11[b * n1 + d])
            .max(h01[a * n1 + d])
            .max(h01[c * n1 + b])
            .max(h01[a * n1 + b])
            .max(h01[c * n1 + d])
    };
    // dense Prim over the complete lune graph
    let mut in_tree = alloc::vec![false; m];
    let mut best = alloc::vec![f64::INFINITY; m];
    let mut parent = alloc::vec![u32::MAX; m];
    let mut edges: Vec<(f64, u32, u32)> = Vec::with_capacity(m);
    let mut u = 0usize;
    in_tree[0] = true;
    for _ in 1..m {
        for v in 0..m {
            // meet is floored at both wakes exactly, so that test is strict
            if in_tree[v] || wakes[u].max(wakes[v]) >= best[v] {
                continue;
            }
            if lower(keys[u], keys[v]) * (1.0 - 1e-12) >= best[v] {
                continue;
            }
            if let Some(w) = col.meet(keys[u], keys[v]) {
                if w < best[v] {
                    best[v] = w;
                    parent[v] = u as u32;
                }
            }
        }
        let mut next = usize::MAX;
        for v in 0..m {
            if !in_tree[v] && (next == usize::MAX || best[v] < best[next]) {
                next = v;
            }
        }
        if !best[next].is_finite() {
            return Err(if torus {
                LunarError::TorusUnsound(f64::INFINITY)
            } else {
                LunarError::Disconnected
            });
        }
        in_tree[next] = true;
        edges.push((best[next], parent[next], next as u32));
        u = next;
    }
    sweep(col, &keys, &wakes, edges)
}

/// On the torus, lunes of width `2 · 1/4` and more are left out of both
/// modes. That is safe when every point of the torus lies within `1/4` of
/// each color class: the midpoint of such a lune is then strictly closer to
/// another point of each color, so the lune wakes inside a component.
fn check_torus_cover(col: &Colored) -> Result<(), LunarError> {
    if col.topology != Topology::Torus {
        return Ok(());
    }
    for c in 0..2u8 {
        let keys: Vec<Key> = (0..col.pts[c as usize].len() as u32).map(|i| (c, i)).collect();
        let locs = group_locations(col, &keys);
        let m = triangulate(&locs.points, Topology::Torus).map_err(|_| LunarError::TorusUnsound(f64::INFINITY))?;
        let cover = (0..m.triangles.len())
            .map(|t| {
                let [p, q, r] = m.triangle_points(t);
                geom::circumradius(p, q, r)
            })
            .fold(0.0f64, f64::max);
        if cover >= TORUS_LIMIT {
            return Err(LunarError::TorusUnsound(cover));
        }
    }
    Ok(())
}

/// Distinct locations of a set of keyed points with their members.
struct Locations {
    points: Vec<Point2>,
    members: Vec<Vec<Key>>,
}

fn group_locations(col: &Colored, keys: &[Key]) -> Locations {
    let mut order: Vec<Key> = keys.to_vec();
    order.sort_by(|&x, &y| {
        let (p, q) = (col.at(x), col.at(y));
        (p.x + 0.0)
            .total_cmp(&(q.x + 0.0))
            .then((p.y + 0.0).total_cmp(&(q.y + 0.0)))
            .then(x.cmp(&y))
    });
    let mut locs = Locations {
        points: Vec::new(),
        members: Vec::new(),
    };
    for k in order {
        let p = col.at(k);
        match locs.points.last() {
            Some(&last) if last == p => locs.members.last_mut().unwrap().push(k),
            _ => {
                locs.points.push(p);
                locs.members.push(alloc::vec![k]);
            }
        }
    }
    locs
}

/// Delaunay edges and triangles over location indices, with edge midpoints
/// and triangle circumcenters in the unit chart.
struct Cells {
    edges: Vec<[u32; 2]>,
    midpoints: Vec<Point2>,
    triangles: Vec<[u32; 3]>,
    centers: Vec<Point2>,
}

/// Complete when there are fewer than three locations; `None` if no
/// triangulation exists.
fn delaunay_cells(points: &[Point2], topology: Topology) -> Option<Cells> {
    let chart = |p: Point2| match topology {
        Topology::Torus => geom::wrap_unit(p),
        Topology::UnitSquare => p,
    };
    if points.len() < 3 {
        let mut cells = Cells {
            edges: Vec::new(),
            midpoints: Vec::new(),
            triangles: Vec::new(),
            centers: Vec::new(),
        };
        if points.len() == 2 {
            let (dx, dy) = topology.displacement(points[0], points[1]);
            cells.edges.push([0, 1]);
            cells.midpoints.push(chart(points[0].translate(0.5 * dx, 0.5 * dy)));
        }
        return Some(cells);
    }
    let m: Mosaic = triangulate(points, topology).ok()?;
    let midpoints = (0..m.edges.len())
        .map(|e| {
            let [p, q] = m.edge_points(e);
            chart(p.midpoint(q))
        })
        .collect();
    let centers = (0..m.triangles.len())
        .map(|t| {
            let [p, q, r] = m.triangle_points(t);
            let (ux, uy) = circumcenter_offset(p, q, r);
            chart(p.translate(ux, uy))
        })
        .collect();
    Some(Cells {
        edges: m.edges.iter().map(|e| e.v).collect(),
        midpoints,
        triangles: m.triangles.iter().map(|t| t.v).collect(),
        centers,
    })
}

/// Relative slack when collecting points tied for nearest.
const TIE_SLACK: f64 = 1e-9;

struct CandidateGraph<'c> {
    col: &'c Colored,
    grids: [Grid<'c>; 2],
    ids: BTreeMap<(u32, u32), u32>,
    keys: Vec<(u32, u32)>,
    edges: Vec<(f64, u32, u32)>,
}

impl CandidateGraph<'_> {
    fn lune(&mut self, a: u32, b: u32) -> Option<u32> {
        if self.col.topology == Topology::Torus && self.col.wake(a, b) >= TORUS_LIMIT {
            return None;
        }
        let next = self.keys.len() as u32;
        let id = *self.ids.entry((a, b)).or_insert(next);
        if id == next {
            self.keys.push((a, b));
        }
        Some(id)
    }

    fn link(&mut self, x: u32, y: u32) {
        if x == y {
            return;
        }
        if let Some(w) = self.col.meet(self.keys[x as usize], self.keys[y as usize]) {
            self.edges.push((w, x.min(y), x.max(y)));
        }
    }

    fn link_all(&mut self, ids: &mut Vec<u32>) {
        ids.sort_unstable();
        ids.dedup();
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                self.link(ids[i], ids[j]);
            }
        }
    }

    /// All bichromatic lunes among `members` and every pair of them.
    fn clique(&mut self, members: &[Key]) {
        let mut ids: Vec<u32> = Vec::new();
        for &(ca, a) in members {
            for &(cb, b) in members {
                if ca == 0 && cb == 1 {
                    if let Some(id) = self.lune(a, b) {
                        ids.push(id);
                    }
                }
            }
        }
        self.link_all(&mut ids);
    }

    /// Points of color `c` tied for nearest to `q`.
    fn nearest_ties(&self, c: usize, q: Point2) -> Vec<u32> {
        match self.grids[c].nearest(q) {
            Some((_, d)) => self.grids[c].within(q, d * (1.0 + TIE_SLACK)),
            None => Vec::new(),
        }
    }

    /// Lunes over the given points of each color. At `q` they all contain
    /// the same point by the time the farthest one is reached, so they are
    /// joined pairwise.
    fn cross_clique(&mut self, s0: &[u32], s1: &[u32], extra: Option<u32>) {
        let mut ids: Vec<u32> = extra.into_iter().collect();
        for &a in s0 {
            for &b in s1 {
                if let Some(id) = self.lune(a, b) {
                    ids.push(id);
                }
            }
        }
        self.link_all(&mut ids);
    }

    /// Joins the lunes of the nearest points of both colors around `q`.
    fn around(&mut self, q: Point2, extra: Option<u32>) {
        let s0 = self.nearest_ties(0, q);
        let s1 = self.nearest_ties(1, q);
        self.cross_clique(&s0, &s1, extra);
    }
}

fn members_of(locs: &Locations, vs: &[u32], out: &mut Vec<Key>) {
    out.clear();
    for &v in vs {
        out.extend_from_slice(&locs.members[v as usize]);
    }
}

fn pruned(col: &Colored) -> Result<Option<LunarTree>, LunarError> {
    check_torus_cover(col)?;
    let topo = col.topology;
    let all: Vec<Key> = (0..col.pts[0].len() as u32)
        .map(|i| (0u8, i))
        .chain((0..col.pts[1].len() as u32).map(|i| (1u8, i)))
        .collect();
    let union = group_locations(col, &all);
    let Some(u_cells) = delaunay_cells(&union.points, topo) else {
        return Ok(None);
    };
    let mut g = CandidateGraph {
        col,
        grids: [Grid::new(&col.pts[0], topo), Grid::new(&col.pts[1], topo)],
        ids: BTreeMap::new(),
        keys: Vec::new(),
        edges: Vec::new(),
    };
    let mut scratch: Vec<Key> = Vec::new();
    for members in &union.members {
        g.clique(members);
    }
    for (e, &q) in u_cells.edges.iter().zip(&u_cells.midpoints) {
        members_of(&union, e, &mut scratch);
        g.clique(&scratch);
        g.around(q, None);
    }
    for (t, &q) in u_cells.triangles.iter().zip(&u_cells.centers) {
        members_of(&union, t, &mut scratch);
        g.clique(&scratch);
        g.around(q, None);
    }

    // saddles of one color's distance function: the midpoints of its own
    // Delaunay edges, with the other color's nearest points
    for c in 0..2usize {
        let keys: Vec<Key> = (0..col.pts[c].len() as u32).map(|i| (c as u8, i)).collect();
        let locs = group_locations(col, &keys);
        let Some(cells) = delaunay_cells(&locs.points, topo) else {
            return Ok(None);
        };
        let mut near: Vec<u32> = Vec::new();
        for (e, &q) in cells.edges.iter().zip(&cells.midpoints) {
            let [x, y] = e.map(|v| locs.members[v as usize][0].1);
            let h = col.topology.distance(col.pts[c][x as usize], q);
            near.clear();
            near.extend(g.grids[c].within(q, h * (1.0 + TIE_SLACK)));
            near.push(x);
            near.push(y);
            near.sort_unstable();
            near.dedup();
            let opp = g.nearest_ties(1 - c, q);
            if c == 0 {
                g.cross_clique(&near, &opp, None);
            } else {
                g.cross_clique(&opp, &near, None);
            }
        }
        for members in &locs.members {
            let same: Vec<u32> = members.iter().map(|k| k.1).collect();
            if same.len() > 1 {
                let q = col.at(members[0]);
                let opp = g.nearest_ties(1 - c, q);
                if c == 0 {
                    g.cross_clique(&same, &opp, None);
                } else {
                    g.cross_clique(&opp, &same, None);
                }
            }
        }
    }

    // every lune hangs off the lunes of the nearest pairs around its midpoint
    let mut i = 0;
    while i < g.keys.len() {
        let (a, b) = g.keys[i];
        g.around(col.midpoint(a, b), Some(i as u32));
        i += 1;
    }

    let wakes: Vec<f64> = g.keys.iter().map(|&(a, b)| col.wake(a, b)).collect();
    let keys = core::mem::take(&mut g.keys);
    let edges = core::mem::take(&mut g.edges);
    let tree = sweep(col, &keys, &wakes, edges)?;
    for &(lune, _) in &tree.component_births {
        let mid = col.midpoint(lune.a, lune.b);
        let w = lune.wake_radius * (1.0 - 1e-9);
        let d0 = g.grids[0].nearest(mid).map_or(f64::INFINITY, |x| x.1);
        let d1 = g.grids[1].nearest(mid).map_or(f64::INFINITY, |x| x.1);
        if d0 < w || d1 < w {
            return Err(LunarError::Audit("a component starts at a lune covered by another"));
        }
    }
    Ok(Some(tree))
}

fn cmp_f64(x: f64, y: f64) -> Ordering {
    x.total_cmp(&y)
}

/// Kruskal pass with the elder rule over lune wakes and merge edges
/// `(radius, u, v)`.
fn sweep(col: &Colored, keys: &[(u32, u32)], wakes: &[f64], edges: Vec<(f64, u32, u32)>) -> Result<LunarTree, LunarError> {
    #[derive(Clone, Copy)]
    enum Ev {
        Wake(u32),
        Merge(u32, u32),
    }
    let mut events: Vec<(f64, u8, (u32, u32), (u32, u32), Ev)> = Vec::with_capacity(keys.len() + edges.len());
    for (i, &k) in keys.iter().enumerate() {
        events.push((wakes[i], 0, k, k, Ev::Wake(i as u32)));
    }
    for (w, u, v) in edges {
        let (ku, kv) = (keys[u as usize], keys[v as usize]);
        let (lo, hi) = if ku <= kv { (ku, kv) } else { (kv, ku) };
        events.push((w, 1, lo, hi, Ev::Merge(u, v)));
    }
    events.sort_by(|x, y| {
        cmp_f64(x.0, y.0)
            .then(x.1.cmp(&y.1))
            .then(x.2.cmp(&y.2))
            .then(x.3.cmp(&y.3))
    });

    let m = keys.len();
    let mut uf = UnionFind::new(m);
    // oldest lune of each component, by (wake, lune order)
    let mut oldest: Vec<u32> = (0..m as u32).collect();
    let mut awake = alloc::vec![false; m];
    let elder = |x: u32, y: u32| {
        let kx = (wakes[x as usize], keys[x as usize]);
        let ky = (wakes[y as usize], keys[y as usize]);
        match cmp_f64(kx.0, ky.0).then(kx.1.cmp(&ky.1)) {
            Ordering::Greater => (y, x),
            _ => (x, y),
        }
    };
    let mut tree = LunarTree::default();
    let mut max_radius = 0.0f64;
    for (r, _, _, _, ev) in events {
        match ev {
            Ev::Wake(i) => awake[i as usize] = true,
            Ev::Merge(u, v) => {
                debug_assert!(awake[u as usize] && awake[v as usize]);
                let (ru, rv) = (uf.find(u), uf.find(v));
                if ru == rv {
                    continue;
                }
                max_radius = max_radius.max(r);
                let (old, young) = elder(oldest[ru as usize], oldest[rv as usize]);
                let root = uf.union(ru, rv).unwrap_or(ru);
                oldest[root as usize] = old;
                let born = wakes[young as usize];
                if r.to_bits() != born.to_bits() {
                    let lune = col.lune(keys[young as usize]);
                    tree.component_births.push((lune, 2.0 * born));
                    let pair = [col.lune(keys[u as usize]), col.lune(keys[v as usize])];
                    tree.merges.push((pair, 2.0 * r));
                    tree.events.push(LunarEvent {
                        radius: born,
                        kind: EventKind::Wake,
                        lunes: [lune, lune],
                    });
                    tree.events.push(LunarEvent {
                        radius: r,
                        kind: EventKind::Merge,
                        lunes: pair,
                    });
                }
            }
        }
    }
    let mut roots = (0..m as u32).map(|i| uf.find(i)).collect::<Vec<_>>();
    roots.sort_unstable();
    roots.dedup();
    if roots.len() != 1 {
        // on the torus the missing links are the lunes cut at the limit
        return Err(if col.topology == Topology::Torus {
            LunarError::TorusUnsound(f64::INFINITY)
        } else {
            LunarError::Disconnected
        });
    }
    if col.topology == Topology::Torus && max_radius >= TORUS_LIMIT {
        return Err(LunarError::TorusUnsound(max_radius));
    }
    let first = oldest[roots[0] as usize];
    let lune = col.lune(keys[first as usize]);
    tree.component_births.push((lune, 2.0 * wakes[first as usize]));
    tree.events.push(LunarEvent {
        radius: wakes[first as usize],
        kind: EventKind::Wake,
        lunes: [lune, lune],
    });
    tree.events.sort_by(|x, y| {
        cmp_f64(x.radius, y.radius).then((x.kind == EventKind::Merge).cmp(&(y.kind == EventKind::Merge)))
    });

    let mut births: Vec<f64> = tree.component_births.iter().map(|x| x.1).collect();
    let mut merges: Vec<f64> = tree.merges.iter().map(|x| x.1).collect();
    births.sort_by(|x, y| cmp_f64(*x, *y));
    merges.sort_by(|x, y| cmp_f64(*x, *y));
    let sum = |v: &[f64]| v.iter().fold(0.0, |acc, x| acc + x);
    // the oldest component is never charged its birth
    tree.cost = sum(&merges) - sum(&births[1..]);
    Ok(tree)
}
