use chroma_mst_core::lunar::{lunar_emst, relative1_norm, LunarMode};
use chroma_mst_core::persistence::emst;
use chroma_mst_core::{radius_values, triangulate, Point2, Topology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn colored(rng: &mut ChaCha8Rng, n: usize) -> (Vec<Point2>, Vec<Point2>) {
    let (mut a0, mut a1) = (Vec::new(), Vec::new());
    for _ in 0..n {
        let p = Point2::new(rng.random(), rng.random());
        if rng.random_bool(0.5) {
            a0.push(p);
        } else {
            a1.push(p);
        }
    }
    if a0.is_empty() {
        a0.push(a1.pop().unwrap());
    }
    if a1.is_empty() {
        a1.push(a0.pop().unwrap());
    }
    (a0, a1)
}

#[test]
fn pruned_equals_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for trial in 0..30 {
        let n = rng.random_range(2..=200);
        let topo = if trial % 2 == 0 { Topology::UnitSquare } else { Topology::Torus };
        let (a0, a1) = colored(&mut rng, n);
        let ex = lunar_emst(&a0, &a1, topo, LunarMode::Exact);
        let pr = lunar_emst(&a0, &a1, topo, LunarMode::Pruned);
        match (ex, pr) {
            (Ok(e), Ok(p)) => {
                assert_eq!(e.cost.to_bits(), p.cost.to_bits(), "trial {trial} n {n} {topo:?}");
                assert_eq!(e.merges.len(), p.merges.len());
            }
            (Err(e), Err(p)) => assert_eq!(e, p, "trial {trial}"),
            (e, p) => panic!("trial {trial}: {e:?} vs {p:?}"),
        }
    }
}

#[test]
fn coincident_colors_give_emst() {
    let mut rng = ChaCha8Rng::seed_from_u64(78);
    for _ in 0..10 {
        let n = rng.random_range(3..=200);
        let pts: Vec<Point2> = (0..n).map(|_| Point2::new(rng.random(), rng.random())).collect();
        let len = emst(&radius_values(triangulate(&pts, Topology::UnitSquare).unwrap())).total_length;
        let t = lunar_emst(&pts, &pts, Topology::UnitSquare, LunarMode::Pruned).unwrap();
        assert!((t.cost - len).abs() < 1e-9);
        assert!((relative1_norm(&t) - len / 2.0).abs() < 1e-9);
    }
}

#[test]
fn lattice_ties_agree() {
    // cocircular lattice squares with both colors and shared locations
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    for trial in 0..200 {
        let g = rng.random_range(3..=8);
        let n = rng.random_range(4..=40);
        let (mut a0, mut a1) = (Vec::new(), Vec::new());
        for _ in 0..n {
            let p = Point2::new(
                rng.random_range(0..g) as f64 / g as f64,
                rng.random_range(0..g) as f64 / g as f64,
            );
            if rng.random_bool(0.5) {
                a0.push(p);
            } else {
                a1.push(p);
            }
        }
        if a0.is_empty() || a1.is_empty() {
            continue;
        }
        for topo in [Topology::UnitSquare, Topology::Torus] {
            let ex = lunar_emst(&a0, &a1, topo, LunarMode::Exact);
            let pr = lunar_emst(&a0, &a1, topo, LunarMode::Pruned);
            match (ex, pr) {
                // equal radii reached through different points may differ
                // in the last bits
                (Ok(e), Ok(p)) => assert!((e.cost - p.cost).abs() <= 1e-12 * e.cost.max(1.0), "trial {trial}"),
                (Err(e), Err(p)) => assert_eq!(e, p),
                (e, p) => panic!("trial {trial}: {e:?} vs {p:?}"),
            }
        }
    }
}
