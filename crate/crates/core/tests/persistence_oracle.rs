mod support;

use chroma_mst_core::persistence::{death_edges, h0_diagram, h1_diagram, reduce_h1};
use chroma_mst_core::{radius_values, triangulate, FilteredMosaic, Point2, Topology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::oracle;

fn sorted(mut v: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    v.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)));
    v
}

fn edge_tuple(fm: &FilteredMosaic, e: u32) -> [usize; 2] {
    let [a, b] = fm.mosaic.edges[e as usize].v;
    [a.min(b) as usize, a.max(b) as usize]
}

fn triangle_tuple(fm: &FilteredMosaic, t: u32) -> [usize; 3] {
    let mut v = fm.mosaic.triangles[t as usize].v.map(|x| x as usize);
    v.sort_unstable();
    v
}

// hull slivers reach radii in the hundreds, so the slack is relative
fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(1.0)
}

fn close(a: &[(f64, f64)], b: &[(f64, f64)]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(x, y)| near(x.0, y.0) && near(x.1, y.1))
}

#[test]
fn tiny_sets_match_rank_persistence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for draw in 0..500 {
        let n = rng.random_range(3..=8);
        let pts: Vec<(f64, f64)> = (0..n).map(|_| (rng.random(), rng.random())).collect();
        let ours: Vec<Point2> = pts.iter().map(|&(x, y)| Point2::new(x, y)).collect();
        let fm = radius_values(triangulate(&ours, Topology::UnitSquare).unwrap());
        let want = oracle::diagrams(&pts);

        let mut deaths: Vec<[usize; 2]> = death_edges(&fm).into_iter().map(|e| edge_tuple(&fm, e)).collect();
        deaths.sort_unstable();
        assert_eq!(deaths, want.h0_cells, "draw {draw}");
        let mut pairs: Vec<([usize; 2], [usize; 3])> = reduce_h1(&fm)
            .pairs
            .into_iter()
            .map(|(e, t)| (edge_tuple(&fm, e), triangle_tuple(&fm, t)))
            .collect();
        pairs.sort_unstable();
        assert_eq!(pairs, want.h1_cells, "draw {draw}");

        let h0 = h0_diagram(&fm);
        let h1 = h1_diagram(&fm);
        assert!(close(&sorted(h0.pairs), &want.h0), "draw {draw}");
        assert!(close(&sorted(h1.pairs), &want.h1), "draw {draw}");
        assert_eq!(h0.essential, want.essential0, "draw {draw}");
        assert_eq!(h1.essential, want.essential1, "draw {draw}");
    }
}

#[test]
fn oracle_on_equilateral_triangle() {
    let h = 3f64.sqrt() / 2.0;
    let d = oracle::diagrams(&[(0.0, 0.0), (1.0, 0.0), (0.5, h)]);
    assert_eq!(d.h0.len(), 2);
    assert!(d.h0.iter().all(|&(b, e)| b == 0.0 && (e - 0.5).abs() < 1e-15));
    assert_eq!(d.h1_cells.len(), 1);
    assert_eq!(d.h1_cells[0].1, [0, 1, 2]);
    assert!((d.h1[0].1 - 1.0 / 3f64.sqrt()).abs() < 1e-15);
    assert_eq!((d.essential0, d.essential1), (1, 0));
}

#[test]
fn oracle_on_obtuse_triangle() {
    // no acute triangle, so the cycle is born and killed together
    let d = oracle::diagrams(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.2)]);
    assert_eq!(d.h1.len(), 1);
    assert_eq!(d.h1[0].0, d.h1[0].1);
    assert_eq!(d.h1_cells[0].0, [0, 1]);
}
