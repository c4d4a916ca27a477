//! File formats: JSON plane dumps, CSV incidence and edge lists, DOT graphs
//! and per-point homomorphism reports. Every writer emits entries in index
//! order so output is byte-stable for fixed input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{prime_power, FieldCtx};
use crate::hom::NeighbourSplit;
use crate::neighbour::NeighbourGraph;
use crate::pg::fmt_triple;
use crate::plane::{CoordTriple, PlaneConfig, PlaneCtx, PointClass, PointType};
use crate::ring::RingElem;

type RawTriple = [[u32; 2]; 3];

fn raw(t: &CoordTriple) -> RawTriple {
    t.0.map(|x| [x.a, x.b])
}

fn from_raw(t: &RawTriple) -> CoordTriple {
    CoordTriple(t.map(|[a, b]| RingElem::new(a, b)))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PlaneCounts {
    pub total: u64,
    #[serde(rename = "typeI")]
    pub type_i: u64,
    #[serde(rename = "typeII")]
    pub type_ii: u64,
    pub per_line: u64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PlaneJson {
    pub q: u32,
    pub modulus_poly: Vec<u32>,
    pub points: Vec<RawTriple>,
    pub lines: Vec<RawTriple>,
    pub counts: PlaneCounts,
}

pub fn plane_json(plane: &PlaneCtx) -> Result<String> {
    let (type_i, type_ii) = plane.type_counts();
    let per_line = match plane.lines().first() {
        Some(l) => plane.points_on_line(l)?.len() as u64,
        None => 0,
    };
    let doc = PlaneJson {
        q: plane.order(),
        modulus_poly: plane.field().modulus().to_vec(),
        points: plane.points().iter().map(|p| raw(p.canonical())).collect(),
        lines: plane.lines().iter().map(|l| raw(l.canonical())).collect(),
        counts: PlaneCounts { total: plane.num_points() as u64, type_i, type_ii, per_line },
    };
    Ok(serde_json::to_string_pretty(&doc).expect("plane serialization cannot fail") + "\n")
}

/// Rebuilds a plane from its JSON dump and checks that the stored modulus,
/// point list and line list agree with a fresh construction.
pub fn plane_from_json(text: &str, cfg: &PlaneConfig) -> Result<PlaneCtx> {
    let doc: PlaneJson = serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
    let (p, n) =
        prime_power(doc.q as u64).ok_or_else(|| Error::parse(format!("q = {} is not a prime power", doc.q)))?;
    let field = FieldCtx::new(p, n)?;
    if field.modulus() != doc.modulus_poly.as_slice() {
        return Err(Error::parse(format!(
            "modulus {:?} differs from the canonical modulus {:?}",
            doc.modulus_poly,
            field.modulus()
        )));
    }
    let plane = PlaneCtx::build(Arc::new(field), cfg)?;
    let same = |stored: &[RawTriple], built: &mut dyn Iterator<Item = &CoordTriple>| {
        stored.len() == plane.num_points() && stored.iter().map(from_raw).zip(built).all(|(a, b)| &a == b)
    };
    if !same(&doc.points, &mut plane.points().iter().map(|p| p.canonical())) {
        return Err(Error::parse("stored point list does not match the plane"));
    }
    if !same(&doc.lines, &mut plane.lines().iter().map(|l| l.canonical())) {
        return Err(Error::parse("stored line list does not match the plane"));
    }
    Ok(plane)
}

/// `line_index,point_index` rows for every incident pair.
pub fn incidence_csv(plane: &PlaneCtx) -> Result<String> {
    let mut out = String::from("line_index,point_index\n");
    for l in plane.lines() {
        for p in plane.points_on_line(l)? {
            writeln!(out, "{},{}", l.index(), p).unwrap();
        }
    }
    Ok(out)
}

pub fn graph_csv(graph: &NeighbourGraph) -> String {
    let mut out = String::from("source,target\n");
    for (a, b) in graph.edges() {
        writeln!(out, "{a},{b}").unwrap();
    }
    out
}

#[derive(Serialize)]
struct GraphJson {
    q: u32,
    vertices: Vec<String>,
    degree: usize,
    adjacency: Vec<Vec<u32>>,
}

pub fn graph_json(plane: &PlaneCtx, graph: &NeighbourGraph) -> String {
    let q = plane.order() as usize;
    let doc = GraphJson {
        q: plane.order(),
        vertices: plane.points().iter().map(|p| p.to_string()).collect(),
        degree: 2 * q * (q + 1),
        adjacency: (0..graph.vertex_count()).map(|v| graph.neighbours(v).to_vec()).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("graph serialization cannot fail") + "\n"
}

/// Undirected DOT graph, labels are canonical triples. With `color_types`
/// the type II points are filled.
pub fn graph_dot(plane: &PlaneCtx, graph: &NeighbourGraph, color_types: bool) -> String {
    let mut out = String::new();
    writeln!(out, "graph neighbours {{").unwrap();
    writeln!(out, "  // q = {}, {} vertices, {} edges", plane.order(), graph.vertex_count(), graph.edge_count())
        .unwrap();
    for p in plane.points() {
        let ty = plane.point_type(p);
        let style = match (color_types, ty) {
            (true, PointType::TypeII) => ", style=filled, fillcolor=gold",
            _ => "",
        };
        let ty = if ty == PointType::TypeI { "I" } else { "II" };
        writeln!(out, "  {} [label=\"{}\", type=\"{}\"{}];", p.index(), p, ty, style).unwrap();
    }
    for (a, b) in graph.edges() {
        writeln!(out, "  {a} -- {b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct HomJson {
    point: String,
    tag: &'static str,
    image: String,
    merged: Vec<String>,
    spread: BTreeMap<String, String>,
}

pub fn hom_json(plane: &PlaneCtx, point: &PointClass, split: &NeighbourSplit) -> String {
    let pg = plane.pg();
    let doc = HomJson {
        point: point.to_string(),
        tag: split.tag.name(),
        image: split.image.to_string(),
        merged: split.merged.iter().map(|&i| plane.point(i).to_string()).collect(),
        spread: split.spread.iter().map(|(&n, &g)| (plane.point(n).to_string(), fmt_triple(&pg.coords(g)))).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("report serialization cannot fail") + "\n"
}

/// Bipartite picture of a split: the neighbourhood on one side, PG(2,q) on
/// the other. Spread neighbours point to their image; merged neighbours are
/// filled and point (dashed) to the image of the base point.
pub fn hom_dot(plane: &PlaneCtx, point: &PointClass, split: &NeighbourSplit) -> String {
    let pg = plane.pg();
    let mut out = String::new();
    writeln!(out, "digraph split {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  label=\"{} of {}\";", split.tag, point).unwrap();
    writeln!(out, "  subgraph cluster_neighbourhood {{").unwrap();
    writeln!(out, "    label=\"neighbourhood\";").unwrap();
    for &n in &split.merged {
        writeln!(
            out,
            "    n{} [label=\"{}\", merged=true, style=filled, fillcolor=black, fontcolor=white];",
            n,
            plane.point(n)
        )
        .unwrap();
    }
    for &n in split.spread.keys() {
        writeln!(out, "    n{} [label=\"{}\", merged=false];", n, plane.point(n)).unwrap();
    }
    writeln!(out, "  }}").unwrap();
    writeln!(out, "  subgraph cluster_pg {{").unwrap();
    writeln!(out, "    label=\"PG(2,{})\";", plane.order()).unwrap();
    for g in pg.points() {
        let mark = if g.index == split.image.index { ", peripheries=2" } else { "" };
        writeln!(out, "    g{} [label=\"{}\"{}];", g.index, g, mark).unwrap();
    }
    writeln!(out, "  }}").unwrap();
    for &n in &split.merged {
        writeln!(out, "  n{} -> g{} [style=dashed];", n, split.image.index).unwrap();
    }
    for (&n, &g) in &split.spread {
        writeln!(out, "  n{n} -> g{g};").unwrap();
    }
    out.push_str("}\n");
    out
}
