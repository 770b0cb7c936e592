//! Radius function on a Delaunay mosaic.
//!
//! A triangle gets its circumradius and is critical iff acute. An edge is
//! critical (Gabriel) iff its opposite angle is acute in every incident
//! triangle; it then gets half its length, and otherwise the smallest
//! circumradius among the incident triangles that see it at a non-acute
//! angle. Right angles count as non-acute, which is the same answer the
//! perturbed input would give.

use crate::delaunay::{Mosaic, NONE};
use crate::geom::{self, circumcenter_offset, circumradius, Point2, Sign, Topology};
use alloc::vec::Vec;
use core::cmp::Ordering;

/// A cell of the mosaic: `dim` 0, 1 or 2 and its index in the
/// corresponding list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub dim: u8,
    pub index: u32,
}

#[derive(Debug, Clone)]
pub struct FilteredMosaic {
    pub mosaic: Mosaic,
    pub edge_value: Vec<f64>,
    pub triangle_value: Vec<f64>,
    pub edge_critical: Vec<bool>,
    pub triangle_critical: Vec<bool>,
    /// Every cell, sorted by (value, dimension, vertex tuple, index).
    pub order: Vec<Cell>,
}

impl FilteredMosaic {
    pub fn value(&self, c: Cell) -> f64 {
        match c.dim {
            0 => 0.0,
            1 => self.edge_value[c.index as usize],
            _ => self.triangle_value[c.index as usize],
        }
    }

    pub fn is_critical(&self, c: Cell) -> bool {
        match c.dim {
            0 => true,
            1 => self.edge_critical[c.index as usize],
            _ => self.triangle_critical[c.index as usize],
        }
    }

    pub fn topology(&self) -> Topology {
        self.mosaic.topology
    }

    /// Sorted vertex indices of a cell.
    pub fn vertex_tuple(&self, c: Cell) -> ([u32; 3], usize) {
        match c.dim {
            0 => ([c.index, 0, 0], 1),
            1 => {
                let v = self.mosaic.edges[c.index as usize].v;
                ([v[0], v[1], 0], 2)
            }
            _ => {
                let mut v = self.mosaic.triangles[c.index as usize].v;
                v.sort_unstable();
                (v, 3)
            }
        }
    }

    /// Edges in filtration order.
    pub fn ordered_edges(&self) -> impl Iterator<Item = u32> + '_ {
        self.order.iter().filter(|c| c.dim == 1).map(|c| c.index)
    }

    /// Triangles in filtration order.
    pub fn ordered_triangles(&self) -> impl Iterator<Item = u32> + '_ {
        self.order.iter().filter(|c| c.dim == 2).map(|c| c.index)
    }

    pub fn critical_edge_fraction(&self) -> f64 {
        let k = self.edge_critical.iter().filter(|&&c| c).count();
        k as f64 / self.edge_critical.len().max(1) as f64
    }

    pub fn critical_triangle_fraction(&self) -> f64 {
        let k = self.triangle_critical.iter().filter(|&&c| c).count();
        k as f64 / self.triangle_critical.len().max(1) as f64
    }
}

/// Attaches the radius function to `mosaic` and sorts its cells.
pub fn radius_values(mosaic: Mosaic) -> FilteredMosaic {
    let nt = mosaic.triangles.len();
    let ne = mosaic.edges.len();
    let mut triangle_value = Vec::with_capacity(nt);
    let mut triangle_critical = Vec::with_capacity(nt);
    // acute[t][k]: the angle at vertex k of triangle t is acute
    let mut acute: Vec<[bool; 3]> = Vec::with_capacity(nt);
    for t in 0..nt {
        let [a, b, c] = mosaic.triangle_points(t);
        let ang = [
            geom::angle_sign(a, b, c) == Sign::Positive,
            geom::angle_sign(b, c, a) == Sign::Positive,
            geom::angle_sign(c, a, b) == Sign::Positive,
        ];
        acute.push(ang);
        triangle_critical.push(ang.iter().all(|&x| x));
        triangle_value.push(circumradius(a, b, c));
    }

    let mut edge_value = alloc::vec![0.0; ne];
    let mut edge_critical = alloc::vec![true; ne];
    for e in 0..ne {
        let mut blocked = f64::INFINITY;
        for &t in &mosaic.edge_triangles[e] {
            if t == NONE {
                continue;
            }
            let tri = &mosaic.triangles[t as usize];
            for k in 0..3 {
                if tri.edges[k] == e as u32 && !acute[t as usize][k] {
                    blocked = blocked.min(triangle_value[t as usize]);
                }
            }
        }
        if blocked.is_finite() {
            edge_critical[e] = false;
            edge_value[e] = blocked;
        } else {
            edge_value[e] = 0.5 * mosaic.edge_length(e);
        }
    }
    // rounding may put a triangle a hair below one of its edges
    for t in 0..nt {
        for &e in &mosaic.triangles[t].edges {
            if edge_value[e as usize] > triangle_value[t] {
                triangle_value[t] = edge_value[e as usize];
            }
        }
    }

    let mut fm = FilteredMosaic {
        mosaic,
        edge_value,
        triangle_value,
        edge_critical,
        triangle_critical,
        order: Vec::new(),
    };
    fm.order = filtration_order(&fm);
    fm
}

/// All cells sorted by (value, dimension, sorted vertex tuple, index).
pub fn filtration_order(fm: &FilteredMosaic) -> Vec<Cell> {
    let m = &fm.mosaic;
    let mut cells: Vec<Cell> = Vec::with_capacity(m.vertices.len() + m.edges.len() + m.triangles.len());
    cells.extend((0..m.vertices.len() as u32).map(|index| Cell { dim: 0, index }));
    cells.extend((0..m.edges.len() as u32).map(|index| Cell { dim: 1, index }));
    cells.extend((0..m.triangles.len() as u32).map(|index| Cell { dim: 2, index }));
    cells.sort_by(|&x, &y| compare_cells(fm, x, y));
    cells
}

fn compare_cells(fm: &FilteredMosaic, x: Cell, y: Cell) -> Ordering {
    fm.value(x)
        .total_cmp(&fm.value(y))
        .then(x.dim.cmp(&y.dim))
        .then_with(|| fm.vertex_tuple(x).0.cmp(&fm.vertex_tuple(y).0))
        .then(x.index.cmp(&y.index))
}

/// Axis-aligned query box, closed on all sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Region {
    pub const UNIT: Region = Region {
        x0: 0.0,
        y0: 0.0,
        x1: 1.0,
        y1: 1.0,
    };
    pub const EVERYWHERE: Region = Region {
        x0: f64::NEG_INFINITY,
        y0: f64::NEG_INFINITY,
        x1: f64::INFINITY,
        y1: f64::INFINITY,
    };

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }
}

/// Counts and power sums of the radii of critical edges (`*1`) and critical
/// triangles (`*2`).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MomentCounters {
    pub n1: f64,
    pub f1: f64,
    pub s1: f64,
    pub n2: f64,
    pub f2: f64,
    pub s2: f64,
}

/// Critical edges by midpoint and critical triangles by circumcenter, with
/// radius at most `r0`. Centers are wrapped into `[0,1)^2` on the torus.
pub fn moment_counters(fm: &FilteredMosaic, r0: f64, region: Region) -> MomentCounters {
    let m = &fm.mosaic;
    let torus = m.topology == Topology::Torus;
    let place = |p: Point2| if torus { geom::wrap_unit(p) } else { p };
    let mut out = MomentCounters::default();
    for e in 0..m.edges.len() {
        let r = fm.edge_value[e];
        if !fm.edge_critical[e] || r > r0 {
            continue;
        }
        let [a, b] = m.edge_points(e);
        if region.contains(place(a.midpoint(b))) {
            out.n1 += 1.0;
            out.f1 += r;
            out.s1 += r * r;
        }
    }
    for t in 0..m.triangles.len() {
        let r = fm.triangle_value[t];
        if !fm.triangle_critical[t] || r > r0 {
            continue;
        }
        let [a, b, c] = m.triangle_points(t);
        let (ux, uy) = circumcenter_offset(a, b, c);
        if region.contains(place(a.translate(ux, uy))) {
            out.n2 += 1.0;
            out.f2 += r;
            out.s2 += r * r;
        }
    }
    out
}
