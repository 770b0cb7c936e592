//! Degree-0 and degree-1 persistence of the radius filtration, the EMST and
//! the Gabriel graph.

use crate::filtration::FilteredMosaic;
use crate::geom::Topology;
use crate::unionfind::UnionFind;
use alloc::vec::Vec;

/// A persistence diagram in one degree. Essential classes are counted only.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagram {
    pub degree: u8,
    pub pairs: Vec<(f64, f64)>,
    pub essential: usize,
}

impl Diagram {
    pub fn one_norm(&self) -> f64 {
        one_norm(self)
    }
}

/// Sum of `death - birth` over the finite pairs.
pub fn one_norm(d: &Diagram) -> f64 {
    d.pairs.iter().map(|&(b, e)| e - b).sum()
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpanningTree {
    /// Edge indices into the mosaic.
    pub edges: Vec<u32>,
    pub total_length: f64,
}

/// Minimum spanning tree of the Delaunay edges by Kruskal (ties by index).
pub fn emst(fm: &FilteredMosaic) -> SpanningTree {
    let m = &fm.mosaic;
    let len: Vec<f64> = (0..m.edges.len()).map(|e| m.edge_length(e)).collect();
    let mut idx: Vec<u32> = (0..m.edges.len() as u32).collect();
    idx.sort_by(|&a, &b| len[a as usize].total_cmp(&len[b as usize]).then(a.cmp(&b)));
    let mut uf = UnionFind::new(m.vertices.len());
    let mut tree = SpanningTree::default();
    for e in idx {
        let [u, v] = m.edges[e as usize].v;
        if uf.union(u, v).is_some() {
            tree.edges.push(e);
            tree.total_length += len[e as usize];
        }
    }
    tree
}

/// All critical edges.
pub fn gabriel_graph(fm: &FilteredMosaic) -> Vec<u32> {
    (0..fm.edge_critical.len() as u32)
        .filter(|&e| fm.edge_critical[e as usize])
        .collect()
}

/// Edges in filtration order together with whether each one merges two
/// components (negative) or closes a cycle (positive).
fn classify_edges(fm: &FilteredMosaic) -> (Vec<u32>, Vec<bool>) {
    let mut uf = UnionFind::new(fm.mosaic.vertices.len());
    let mut order = Vec::with_capacity(fm.mosaic.edges.len());
    let mut negative = alloc::vec![false; fm.mosaic.edges.len()];
    for e in fm.ordered_edges() {
        let [u, v] = fm.mosaic.edges[e as usize].v;
        negative[e as usize] = uf.union(u, v).is_some();
        order.push(e);
    }
    (order, negative)
}

/// Death-giving edges, i.e. the edges that join components in filtration
/// order.
pub fn death_edges(fm: &FilteredMosaic) -> Vec<u32> {
    let (order, negative) = classify_edges(fm);
    order.into_iter().filter(|&e| negative[e as usize]).collect()
}

pub fn h0_diagram(fm: &FilteredMosaic) -> Diagram {
    let pairs = death_edges(fm)
        .into_iter()
        .map(|e| (0.0, fm.edge_value[e as usize]))
        .collect();
    Diagram {
        degree: 0,
        pairs,
        essential: usize::from(!fm.mosaic.vertices.is_empty()),
    }
}

/// Birth/death pairing of edges and triangles.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EdgeTrianglePairs {
    /// (edge, triangle) index pairs.
    pub pairs: Vec<(u32, u32)>,
    /// Positive edges never killed.
    pub essential_edges: Vec<u32>,
    /// Triangles creating a 2-cycle (one on the torus).
    pub positive_triangles: Vec<u32>,
}

/// Reduces the triangle boundary matrix over the two-element field. Rows of
/// negative edges are dropped up front, which does not change the pairing.
pub fn reduce_h1(fm: &FilteredMosaic) -> EdgeTrianglePairs {
    let (order, negative) = classify_edges(fm);
    let ne = fm.mosaic.edges.len();
    // filtration rank of each positive edge; negative edges map to NONE
    let mut row = alloc::vec![u32::MAX; ne];
    let mut row_edge: Vec<u32> = Vec::new();
    for &e in &order {
        if !negative[e as usize] {
            row[e as usize] = row_edge.len() as u32;
            row_edge.push(e);
        }
    }
    let mut owner: Vec<u32> = alloc::vec![u32::MAX; row_edge.len()];
    let mut columns: Vec<Vec<u32>> = Vec::new();
    let mut col_triangle: Vec<u32> = Vec::new();
    let mut out = EdgeTrianglePairs::default();
    let mut scratch: Vec<u32> = Vec::new();
    for t in fm.ordered_triangles() {
        let mut col: Vec<u32> = fm.mosaic.triangles[t as usize]
            .edges
            .iter()
            .map(|&e| row[e as usize])
            .filter(|&r| r != u32::MAX)
            .collect();
        col.sort_unstable();
        // a Δ-complex triangle may list the same edge twice
        dedup_pairs(&mut col);
        while let Some(&low) = col.last() {
            let o = owner[low as usize];
            if o == u32::MAX {
                break;
            }
            symmetric_difference(&col, &columns[o as usize], &mut scratch);
            core::mem::swap(&mut col, &mut scratch);
        }
        match col.last() {
            Some(&low) => {
                owner[low as usize] = columns.len() as u32;
                out.pairs.push((row_edge[low as usize], t));
                columns.push(col);
                col_triangle.push(t);
            }
            None => out.positive_triangles.push(t),
        }
    }
    for (r, &o) in owner.iter().enumerate() {
        if o == u32::MAX {
            out.essential_edges.push(row_edge[r]);
        }
    }
    out
}

fn dedup_pairs(col: &mut Vec<u32>) {
    let mut out: Vec<u32> = Vec::with_capacity(col.len());
    for &x in col.iter() {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    *col = out;
}

fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

pub fn h1_diagram(fm: &FilteredMosaic) -> Diagram {
    let red = reduce_h1(fm);
    Diagram {
        degree: 1,
        pairs: red
            .pairs
            .iter()
            .map(|&(e, t)| (fm.edge_value[e as usize], fm.triangle_value[t as usize]))
            .collect(),
        essential: red.essential_edges.len(),
    }
}

/// Σ critical triangle values − Σ values of critical edges that are not
/// death-giving. Equals the degree-1 norm in the square.
pub fn critical_value_balance(fm: &FilteredMosaic) -> f64 {
    let (_, negative) = classify_edges(fm);
    let tri: f64 = (0..fm.triangle_critical.len())
        .filter(|&t| fm.triangle_critical[t])
        .map(|t| fm.triangle_value[t])
        .sum();
    let births: f64 = (0..fm.edge_critical.len())
        .filter(|&e| fm.edge_critical[e] && !negative[e])
        .map(|e| fm.edge_value[e])
        .sum();
    tri - births
}

/// Number of essential degree-1 classes expected for a topology.
pub fn essential_h1(topology: Topology) -> usize {
    match topology {
        Topology::UnitSquare => 0,
        Topology::Torus => 2,
    }
}
