//! CSV files: colored points, filtration cells, diagrams, lunar events and
//! per-trial results.

use crate::trial::TrialRecord;
use chroma_mst_core::filtration::Cell;
use chroma_mst_core::lunar::{EventKind, LunarTree};
use chroma_mst_core::persistence::{h0_diagram, reduce_h1};
use chroma_mst_core::{FilteredMosaic, Point2};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Invalid { line: u64, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
struct PointRow {
    x: f64,
    y: f64,
    #[serde(default)]
    color: u8,
}

/// Colored sample with header `x,y,color`; colors are 0 or 1.
pub fn write_points<W: Write>(w: W, a0: &[Point2], a1: &[Point2]) -> Result<(), FormatError> {
    let mut out = csv::Writer::from_writer(w);
    for (color, pts) in [(0u8, a0), (1, a1)] {
        for p in pts {
            out.serialize(PointRow { x: p.x, y: p.y, color })?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads `x,y[,color]` rows; a missing color column means color 0.
pub fn read_points<R: Read>(r: R) -> Result<(Vec<Point2>, Vec<Point2>), FormatError> {
    let mut input = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let (mut a0, mut a1) = (Vec::new(), Vec::new());
    for (i, row) in input.deserialize::<PointRow>().enumerate() {
        let row = row?;
        let line = i as u64 + 2;
        if !row.x.is_finite() || !row.y.is_finite() {
            return Err(FormatError::Invalid {
                line,
                msg: "coordinates must be finite".into(),
            });
        }
        let p = Point2::new(row.x, row.y);
        match row.color {
            0 => a0.push(p),
            1 => a1.push(p),
            c => {
                return Err(FormatError::Invalid {
                    line,
                    msg: format!("color {c} is neither 0 nor 1"),
                })
            }
        }
    }
    Ok((a0, a1))
}

/// One row per cell in filtration order: `dim,value,critical`.
pub fn write_cells<W: Write>(w: W, fm: &FilteredMosaic) -> Result<(), FormatError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["dim", "value", "critical"])?;
    for &c in &fm.order {
        let Cell { dim, .. } = c;
        out.write_record([
            dim.to_string(),
            fm.value(c).to_string(),
            u8::from(fm.is_critical(c)).to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Degree 0 and 1 diagrams as `degree,birth,death`, essential classes with
/// death `inf`.
pub fn write_diagrams<W: Write>(w: W, fm: &FilteredMosaic) -> Result<(), FormatError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["degree", "birth", "death"])?;
    let h0 = h0_diagram(fm);
    for &(b, d) in &h0.pairs {
        out.write_record(["0".to_string(), b.to_string(), d.to_string()])?;
    }
    for _ in 0..h0.essential {
        out.write_record(["0", "0", "inf"])?;
    }
    let red = reduce_h1(fm);
    for &(e, t) in &red.pairs {
        let (b, d) = (fm.edge_value[e as usize], fm.triangle_value[t as usize]);
        out.write_record(["1".to_string(), b.to_string(), d.to_string()])?;
    }
    for &e in &red.essential_edges {
        out.write_record(["1".to_string(), fm.edge_value[e as usize].to_string(), "inf".into()])?;
    }
    out.flush()?;
    Ok(())
}

/// Sweep events as `radius,kind,indices`; a lune is written `a:b` (index in
/// color 0, index in color 1), a merge lists its two lunes split by `;`.
pub fn write_events<W: Write>(w: W, tree: &LunarTree) -> Result<(), FormatError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["radius", "kind", "indices"])?;
    for ev in &tree.events {
        let [l, m] = ev.lunes;
        let indices = match ev.kind {
            EventKind::Wake => format!("{}:{}", l.a, l.b),
            EventKind::Merge => format!("{}:{};{}:{}", l.a, l.b, m.a, m.b),
        };
        out.write_record([ev.radius.to_string(), ev.kind.name().to_string(), indices])?;
    }
    out.flush()?;
    Ok(())
}

pub const RESULT_COLUMNS: [&str; 18] = [
    "n",
    "trial",
    "seed",
    "topology",
    "emst_length",
    "lunar_cost",
    "dom0",
    "dom1",
    "cod0",
    "cod1",
    "rel1",
    "rel2",
    "ker0",
    "ker1",
    "im0",
    "im1",
    "cok1",
    "wall_ms",
];

pub fn write_results<W: Write>(w: W, records: &[TrialRecord]) -> Result<(), FormatError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(RESULT_COLUMNS)?;
    for r in records {
        let mut row = vec![
            r.n.to_string(),
            r.trial.to_string(),
            r.seed.to_string(),
            r.topology.as_str().to_string(),
            r.emst_length.to_string(),
            r.lunar_cost.to_string(),
        ];
        row.extend(r.norms.named().iter().map(|(_, v)| v.to_string()));
        row.push(r.wall_ms.to_string());
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use chroma_mst_core::lunar::{lunar_emst, LunarMode};
    use chroma_mst_core::{radius_values, triangulate, Topology};

    fn pts() -> (Vec<Point2>, Vec<Point2>) {
        (
            vec![Point2::new(0.1, 0.2), Point2::new(0.7, 0.3), Point2::new(0.4, 0.9)],
            vec![Point2::new(0.5, 0.5), Point2::new(0.2, 0.6)],
        )
    }

    #[test]
    fn points_round_trip() {
        let (a0, a1) = pts();
        let mut buf = Vec::new();
        write_points(&mut buf, &a0, &a1).unwrap();
        assert!(buf.starts_with(b"x,y,color\n"));
        assert_eq!(read_points(&buf[..]).unwrap(), (a0, a1));
        let (b0, b1) = read_points("x,y\n0.5, 0.25\n".as_bytes()).unwrap();
        assert_eq!((b0, b1.len()), (vec![Point2::new(0.5, 0.25)], 0));
    }

    #[test]
    fn bad_points() {
        assert!(matches!(
            read_points("x,y,color\n0.1,0.2,3\n".as_bytes()),
            Err(FormatError::Invalid { line: 2, .. })
        ));
        assert!(matches!(read_points("x,y\n0.1,abc\n".as_bytes()), Err(FormatError::Csv(_))));
        assert!(read_points("x,y\n0.1,inf\n".as_bytes()).is_err());
    }

    #[test]
    fn diagram_and_cells() {
        let (a0, a1) = pts();
        let all: Vec<Point2> = a0.iter().chain(&a1).copied().collect();
        let fm = radius_values(triangulate(&all, Topology::UnitSquare).unwrap());
        let mut buf = Vec::new();
        write_diagrams(&mut buf, &fm).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "degree,birth,death");
        assert_eq!(lines.iter().filter(|l| l.starts_with("0,")).count(), 5);
        assert_eq!(lines.iter().filter(|l| l.ends_with(",inf")).count(), 1);
        let mut buf = Vec::new();
        write_cells(&mut buf, &fm).unwrap();
        let n = fm.mosaic.vertices.len() + fm.mosaic.edges.len() + fm.mosaic.triangles.len();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), n + 1);
    }

    #[test]
    fn event_log() {
        let (a0, a1) = pts();
        let t = lunar_emst(&a0, &a1, Topology::UnitSquare, LunarMode::Exact).unwrap();
        let mut buf = Vec::new();
        write_events(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), t.events.len() + 1);
        assert!(text.lines().nth(1).unwrap().contains(",wake,"));
        assert_eq!(text.matches(",merge,").count(), t.merges.len());
    }
}
