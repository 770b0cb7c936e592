//! Bucket grid for nearest-neighbour queries in the square or on the torus.

use crate::geom::{self, Point2, Topology};
use crate::math;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct Grid<'a> {
    points: &'a [Point2],
    topology: Topology,
    x0: f64,
    y0: f64,
    cell: f64,
    nx: usize,
    ny: usize,
    starts: Vec<u32>,
    items: Vec<u32>,
}

impl<'a> Grid<'a> {
    /// About two points per cell. On the torus the points must lie in
    /// `[0,1)^2`.
    pub fn new(points: &'a [Point2], topology: Topology) -> Self {
        let n = points.len().max(1);
        let (x0, y0, nx, ny, cell) = match topology {
            Topology::Torus => {
                let k = (math::sqrt(n as f64 / 2.0) as usize).max(1);
                (0.0, 0.0, k, k, 1.0 / k as f64)
            }
            Topology::UnitSquare => {
                let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
                for p in points {
                    x0 = x0.min(p.x);
                    y0 = y0.min(p.y);
                    x1 = x1.max(p.x);
                    y1 = y1.max(p.y);
                }
                if points.is_empty() {
                    (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
                }
                let (w, h) = (x1 - x0, y1 - y0);
                // thin or collinear sets still get about two points per cell
                let mut cell = math::sqrt(2.0 * w * h / n as f64).max(2.0 * w.max(h) / n as f64);
                if !(cell > 0.0) {
                    cell = 1.0;
                }
                let nx = ((w / cell) as usize + 1).min(4096);
                let ny = ((h / cell) as usize + 1).min(4096);
                (x0, y0, nx, ny, cell)
            }
        };
        let mut grid = Grid {
            points,
            topology,
            x0,
            y0,
            cell,
            nx,
            ny,
            starts: Vec::new(),
            items: Vec::new(),
        };
        let mut counts = alloc::vec![0u32; nx * ny + 1];
        let cells: Vec<usize> = points.iter().map(|&p| grid.cell_of(p)).collect();
        for &c in &cells {
            counts[c + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let mut fill = counts.clone();
        let mut items = alloc::vec![0u32; points.len()];
        for (i, &c) in cells.iter().enumerate() {
            items[fill[c] as usize] = i as u32;
            fill[c] += 1;
        }
        grid.starts = counts;
        grid.items = items;
        grid
    }

    fn coords(&self, p: Point2) -> (isize, isize) {
        let cx = math::floor((p.x - self.x0) / self.cell) as isize;
        let cy = math::floor((p.y - self.y0) / self.cell) as isize;
        match self.topology {
            Topology::Torus => (
                cx.rem_euclid(self.nx as isize),
                cy.rem_euclid(self.ny as isize),
            ),
            Topology::UnitSquare => (
                cx.clamp(0, self.nx as isize - 1),
                cy.clamp(0, self.ny as isize - 1),
            ),
        }
    }

    fn cell_of(&self, p: Point2) -> usize {
        let (cx, cy) = self.coords(p);
        cy as usize * self.nx + cx as usize
    }

    fn bucket(&self, cx: usize, cy: usize) -> &[u32] {
        let c = cy * self.nx + cx;
        &self.items[self.starts[c] as usize..self.starts[c + 1] as usize]
    }

    /// Calls `f` on every point in the cells at Chebyshev distance `k`
    /// from `(cx, cy)`; returns false once the ring leaves the grid.
    fn ring(&self, cx: isize, cy: isize, k: isize, f: &mut impl FnMut(u32)) -> bool {
        let torus = self.topology == Topology::Torus;
        let (nx, ny) = (self.nx as isize, self.ny as isize);
        if torus && 2 * k + 1 > nx.min(ny) {
            return false;
        }
        let mut any = false;
        for dy in -k..=k {
            let step = if dy == -k || dy == k { 1 } else { 2 * k.max(1) };
            let mut dx = -k;
            while dx <= k {
                let (mut x, mut y) = (cx + dx, cy + dy);
                if torus {
                    x = x.rem_euclid(nx);
                    y = y.rem_euclid(ny);
                }
                if x >= 0 && y >= 0 && x < nx && y < ny {
                    any = true;
                    for &i in self.bucket(x as usize, y as usize) {
                        f(i);
                    }
                }
                dx += step;
            }
        }
        any || k == 0
    }

    fn dist(&self, a: Point2, b: Point2) -> f64 {
        self.topology.distance(a, b)
    }

    /// Nearest point and its distance; ties go to the lower index.
    pub fn nearest(&self, q: Point2) -> Option<(u32, f64)> {
        if self.points.is_empty() {
            return None;
        }
        let q = match self.topology {
            Topology::Torus => geom::wrap_unit(q),
            Topology::UnitSquare => q,
        };
        let (cx, cy) = self.coords(q);
        let best = core::cell::Cell::new(None::<(u32, f64)>);
        let mut consider = |i: u32| {
            let d = self.dist(q, self.points[i as usize]);
            let better = match best.get() {
                None => true,
                Some((j, bd)) => d < bd || (d == bd && i < j),
            };
            if better {
                best.set(Some((i, d)));
            }
        };
        let mut k = 0isize;
        loop {
            if !self.ring(cx, cy, k, &mut consider) {
                break;
            }
            if let Some((_, bd)) = best.get() {
                if bd < k as f64 * self.cell {
                    return best.get();
                }
            }
            k += 1;
        }
        // the ring search ran out of grid; finish by brute force
        for i in 0..self.points.len() as u32 {
            consider(i);
        }
        best.get()
    }

    /// Indices of all points within `radius` of `q` (inclusive), ascending.
    pub fn within(&self, q: Point2, radius: f64) -> Vec<u32> {
        let q = match self.topology {
            Topology::Torus => geom::wrap_unit(q),
            Topology::UnitSquare => q,
        };
        let mut out = Vec::new();
        let (cx, cy) = self.coords(q);
        let mut take = |i: u32| {
            if self.dist(q, self.points[i as usize]) <= radius {
                out.push(i);
            }
        };
        let mut k = 0isize;
        let mut complete = false;
        loop {
            if !self.ring(cx, cy, k, &mut take) {
                break;
            }
            // every point outside rings 0..=k is at least k cells away
            if radius < k as f64 * self.cell {
                complete = true;
                break;
            }
            k += 1;
        }
        if !complete {
            out.clear();
            for i in 0..self.points.len() as u32 {
                if self.dist(q, self.points[i as usize]) <= radius {
                    out.push(i);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
