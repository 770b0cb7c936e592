//! Brute-force persistence for tiny point sets in the square.
//!
//! Everything is rebuilt from scratch: Delaunay triangles by testing every
//! triple against every other point, radius values from the empty-circle
//! definition, and the diagrams from ranks of cycle and boundary spaces over
//! the two-element field, one pair of filtration indices at a time. Cells are
//! bitsets, so at most 64 of them.

#![allow(dead_code)]

pub type Pt = (f64, f64);

#[derive(Debug, Clone, PartialEq)]
pub struct OracleDiagrams {
    /// (birth, death) for degree 0, sorted.
    pub h0: Vec<(f64, f64)>,
    pub h1: Vec<(f64, f64)>,
    /// Death edges of degree 0, as sorted vertex pairs.
    pub h0_cells: Vec<[usize; 2]>,
    /// (birth edge, death triangle) of degree 1, as sorted vertex tuples.
    pub h1_cells: Vec<([usize; 2], [usize; 3])>,
    pub essential0: usize,
    pub essential1: usize,
}

fn d2(a: Pt, b: Pt) -> f64 {
    (a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)
}

fn cross(a: Pt, b: Pt, c: Pt) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn circumcircle(a: Pt, b: Pt, c: Pt) -> (Pt, f64) {
    let (bx, by) = (b.0 - a.0, b.1 - a.1);
    let (cx, cy) = (c.0 - a.0, c.1 - a.1);
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    ((a.0 + ux, a.1 + uy), (ux * ux + uy * uy).sqrt())
}

/// Angle at `w` in the triangle `w, u, v` is strictly acute.
fn acute_at(w: Pt, u: Pt, v: Pt) -> bool {
    (u.0 - w.0) * (v.0 - w.0) + (u.1 - w.1) * (v.1 - w.1) > 0.0
}

pub fn delaunay_triangles(pts: &[Pt]) -> Vec<[usize; 3]> {
    let n = pts.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if cross(pts[i], pts[j], pts[k]).abs() < 1e-300 {
                    continue;
                }
                let (c, r) = circumcircle(pts[i], pts[j], pts[k]);
                let empty = (0..n)
                    .filter(|&m| m != i && m != j && m != k)
                    .all(|m| d2(pts[m], c).sqrt() > r);
                if empty {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
struct Cells {
    dim: Vec<u8>,
    verts: Vec<Vec<usize>>,
    value: Vec<f64>,
    /// Boundary as a bitset over cell indices in filtration order.
    boundary: Vec<u64>,
}

fn build(pts: &[Pt]) -> Cells {
    let n = pts.len();
    let tris = delaunay_triangles(pts);
    let mut edges: Vec<[usize; 2]> = Vec::new();
    for t in &tris {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            if !edges.contains(&[a, b]) {
                edges.push([a, b]);
            }
        }
    }
    let tri_value: Vec<f64> = tris
        .iter()
        .map(|t| circumcircle(pts[t[0]], pts[t[1]], pts[t[2]]).1)
        .collect();
    let mut edge_value = Vec::new();
    for &[a, b] in &edges {
        let mid = ((pts[a].0 + pts[b].0) / 2.0, (pts[a].1 + pts[b].1) / 2.0);
        let half = d2(pts[a], pts[b]).sqrt() / 2.0;
        let gabriel = (0..n)
            .filter(|&m| m != a && m != b)
            .all(|m| d2(pts[m], mid).sqrt() > half);
        let v = if gabriel {
            half
        } else {
            // the smallest empty circle through a and b is the circumcircle of
            // an incident triangle whose third vertex sees ab at a right or
            // obtuse angle
            tris.iter()
                .zip(&tri_value)
                .filter(|(t, _)| t.contains(&a) && t.contains(&b))
                .filter(|(t, _)| {
                    let w = t.iter().copied().find(|&x| x != a && x != b).unwrap();
                    !acute_at(pts[w], pts[a], pts[b])
                })
                .map(|(_, &r)| r)
                .fold(f64::INFINITY, f64::min)
        };
        edge_value.push(v);
    }
    // cells with sort keys
    let mut cells: Vec<(f64, u8, Vec<usize>)> = (0..n).map(|i| (0.0, 0u8, vec![i])).collect();
    for (e, v) in edges.iter().zip(&edge_value) {
        cells.push((*v, 1, e.to_vec()));
    }
    for (t, &v) in tris.iter().zip(&tri_value) {
        let emax = [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]]
            .iter()
            .map(|e| edge_value[edges.iter().position(|x| x == e).unwrap()])
            .fold(v, f64::max);
        cells.push((emax, 2, t.to_vec()));
    }
    cells.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    assert!(cells.len() <= 64, "oracle limited to 64 cells");
    let pos = |vs: &[usize]| cells.iter().position(|c| c.2 == vs).unwrap();
    let mut boundary = vec![0u64; cells.len()];
    for (i, c) in cells.iter().enumerate() {
        let v = &c.2;
        boundary[i] = match c.1 {
            0 => 0,
            1 => (1 << pos(&v[..1])) | (1 << pos(&v[1..])),
            _ => (1 << pos(&[v[0], v[1]])) | (1 << pos(&[v[0], v[2]])) | (1 << pos(&[v[1], v[2]])),
        };
    }
    Cells {
        dim: cells.iter().map(|c| c.1).collect(),
        verts: cells.iter().map(|c| c.2.clone()).collect(),
        value: cells.iter().map(|c| c.0).collect(),
        boundary,
    }
}

/// Rank of a set of bit vectors over the two-element field.
fn rank(vectors: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Basis of the p-cycles among the first `i` cells.
fn cycles(cells: &Cells, p: u8, i: usize) -> Vec<u64> {
    let chains: Vec<usize> = (0..i).filter(|&c| cells.dim[c] == p).collect();
    if p == 0 {
        return chains.iter().map(|&c| 1u64 << c).collect();
    }
    // Gaussian elimination on (boundary | chain) pairs
    let mut rows: Vec<(u64, u64)> = chains.iter().map(|&c| (cells.boundary[c], 1u64 << c)).collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < rows.len() {
        let (b, ch) = rows[k];
        if b == 0 {
            out.push(ch);
            k += 1;
            continue;
        }
        let top = 63 - b.leading_zeros();
        for r in rows.iter_mut().skip(k + 1) {
            if r.0 >> top & 1 == 1 {
                r.0 ^= b;
                r.1 ^= ch;
            }
        }
        k += 1;
    }
    out
}

/// Dimension of the image of H_p(K_i) in H_p(K_j), where K_i is the
/// subcomplex of the first `i` cells.
fn persistent_betti(cells: &Cells, p: u8, i: usize, j: usize) -> usize {
    let z = cycles(cells, p, i);
    let b: Vec<u64> = (0..j)
        .filter(|&c| cells.dim[c] == p + 1)
        .map(|c| cells.boundary[c])
        .collect();
    let rb = rank(&b);
    let mut both = z.clone();
    both.extend_from_slice(&b);
    // dim Z - dim (Z ∩ B) = dim (Z + B) - dim B
    rank(&both) - rb
}

pub fn diagrams(pts: &[Pt]) -> OracleDiagrams {
    let cells = build(pts);
    let n = cells.dim.len();
    let beta = |p: u8, i: usize, j: usize| persistent_betti(&cells, p, i, j) as i64;
    let mut out = OracleDiagrams {
        h0: Vec::new(),
        h1: Vec::new(),
        h0_cells: Vec::new(),
        h1_cells: Vec::new(),
        essential0: 0,
        essential1: 0,
    };
    for p in 0..2u8 {
        for i in 0..n {
            if cells.dim[i] != p {
                continue;
            }
            // classes born exactly when cell i enters
            for j in i + 1..n {
                if cells.dim[j] != p + 1 {
                    continue;
                }
                let mu = beta(p, i + 1, j) - beta(p, i + 1, j + 1) - beta(p, i, j) + beta(p, i, j + 1);
                assert!(mu == 0 || mu == 1, "multiplicity {mu}");
                if mu == 1 {
                    let pair = (cells.value[i], cells.value[j]);
                    let (vi, vj) = (&cells.verts[i], &cells.verts[j]);
                    if p == 0 {
                        out.h0.push(pair);
                        out.h0_cells.push([vj[0], vj[1]]);
                    } else {
                        out.h1.push(pair);
                        out.h1_cells.push(([vi[0], vi[1]], [vj[0], vj[1], vj[2]]));
                    }
                }
            }
            let ess = beta(p, i + 1, n) - beta(p, i, n);
            if p == 0 {
                out.essential0 += ess as usize;
            } else {
                out.essential1 += ess as usize;
            }
        }
    }
    let by_value = |x: &(f64, f64), y: &(f64, f64)| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1));
    out.h0.sort_by(by_value);
    out.h1.sort_by(by_value);
    out.h0_cells.sort_unstable();
    out.h1_cells.sort_unstable();
    out
}

/// Number of cells the oracle would build, to skip sets that overflow it.
pub fn cell_count(pts: &[Pt]) -> usize {
    build(pts).dim.len()
}

pub fn cell_vertices(pts: &[Pt]) -> Vec<Vec<usize>> {
    build(pts).verts
}
