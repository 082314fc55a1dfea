//! DOT and SVG export. Positions come from a Tutte embedding with the boundary on a circle.

use std::fmt::Write as _;

use crate::cat0::LabeledGraph;
use crate::error::Result;
use crate::map::PlanarMap;
use crate::web::{Color, Web};

const SIZE: f64 = 480.0;
const RADIUS: f64 = 200.0;

/// Barycentric layout: `fixed` vertices keep their positions, the rest sit at the average
/// of their neighbors. Gauss-Seidel until the largest move is negligible.
pub fn tutte_layout(map: &PlanarMap, fixed: &[Option<(f64, f64)>]) -> Vec<(f64, f64)> {
    let nv = map.num_vertices();
    let mut pos: Vec<(f64, f64)> = fixed.iter().map(|p| p.unwrap_or((0.0, 0.0))).collect();
    for _ in 0..10_000 {
        let mut moved = 0.0f64;
        for v in (0..nv).filter(|&v| fixed[v].is_none()) {
            let nb: Vec<usize> = map.neighbors(v).collect();
            if nb.is_empty() {
                continue;
            }
            let k = nb.len() as f64;
            let x = nb.iter().map(|&w| pos[w].0).sum::<f64>() / k;
            let y = nb.iter().map(|&w| pos[w].1).sum::<f64>() / k;
            moved = moved.max((x - pos[v].0).abs() + (y - pos[v].1).abs());
            pos[v] = (x, y);
        }
        if moved < 1e-9 {
            break;
        }
    }
    pos
}

fn on_circle(i: usize, m: usize) -> (f64, f64) {
    let a = std::f64::consts::TAU * i as f64 / m as f64;
    (RADIUS * a.cos(), RADIUS * a.sin())
}

/// Layout of a scaffold: boundary visits spread evenly around the circle.
pub fn graph_layout(g: &LabeledGraph) -> Vec<(f64, f64)> {
    let map = g.map();
    let walk = map.ccw_boundary();
    let mut fixed = vec![None; map.num_vertices()];
    if walk.len() == 1 {
        fixed[walk[0]] = Some((0.0, 0.0));
    }
    for (i, &v) in walk.iter().enumerate() {
        if walk.len() > 1 && fixed[v].is_none() {
            fixed[v] = Some(on_circle(i, walk.len()));
        }
    }
    tutte_layout(map, &fixed)
}

pub fn web_layout(w: &Web) -> Vec<(f64, f64)> {
    let mut fixed = vec![None; w.num_vertices()];
    for (b, slot) in fixed.iter_mut().enumerate().take(w.n()) {
        *slot = Some(on_circle(b, w.n()));
    }
    tutte_layout(w.augmented(), &fixed)
}

fn label_text(g: &LabeledGraph, v: usize) -> String {
    let idx: Vec<String> = (1..=g.n()).filter(|&i| g.z(i) == v).map(|i| i.to_string()).collect();
    idx.join(",")
}

pub fn graph_to_dot(g: &LabeledGraph) -> String {
    let mut s = String::from("digraph scaffold {\n  node [shape=circle, width=0.25, fixedsize=true];\n");
    for v in 0..g.num_vertices() {
        let lab = label_text(g, v);
        if lab.is_empty() {
            let _ = writeln!(s, "  v{v} [label=\"\"];");
        } else {
            let _ = writeln!(s, "  v{v} [label=\"\", xlabel=\"z{lab}\"];");
        }
    }
    for [a, b] in g.map().edges() {
        let _ = writeln!(s, "  v{a} -> v{b};");
    }
    s.push_str("}\n");
    s
}

pub fn web_to_dot(w: &Web) -> String {
    let mut s = String::from("graph web {\n  node [shape=circle, width=0.2, fixedsize=true, style=filled];\n");
    for v in 0..w.num_vertices() {
        let fill = if w.color(v) == Color::Black { "black" } else { "white" };
        if w.is_boundary(v) {
            let _ = writeln!(s, "  b{v} [shape=point, xlabel=\"{}\", fillcolor={fill}];", v + 1);
        } else {
            let _ = writeln!(s, "  b{v} [label=\"\", fillcolor={fill}];");
        }
    }
    for [a, b] in w.edges() {
        let _ = writeln!(s, "  b{a} -- b{b};");
    }
    s.push_str("}\n");
    s
}

fn svg_open(s: &mut String) {
    let h = SIZE / 2.0;
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"{} {} {SIZE} {SIZE}\">",
        -h, -h
    );
    s.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" \
         markerHeight=\"7\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333\"/></marker></defs>\n",
    );
}

/// Screen coordinates flip y so that counterclockwise stays counterclockwise.
fn screen(p: (f64, f64)) -> (f64, f64) {
    (p.0, -p.1)
}

pub fn graph_to_svg(g: &LabeledGraph) -> String {
    let pos: Vec<(f64, f64)> = graph_layout(g).into_iter().map(screen).collect();
    let mut s = String::new();
    svg_open(&mut s);
    for &[a, b] in g.map().edges() {
        let (p, q) = (pos[a], pos[b]);
        // stop short of the head so the arrow stays visible
        let (dx, dy) = (q.0 - p.0, q.1 - p.1);
        let len = (dx * dx + dy * dy).sqrt().max(1e-9);
        let t = ((len - 6.0) / len).max(0.0);
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333\" marker-end=\"url(#arrow)\"/>",
            p.0,
            p.1,
            p.0 + t * dx,
            p.1 + t * dy
        );
    }
    for (v, p) in pos.iter().enumerate() {
        let _ = writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#111\"/>", p.0, p.1);
        let lab = label_text(g, v);
        if !lab.is_empty() {
            let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">z{lab}</text>", p.0 + 6.0, p.1 - 6.0);
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Web picture; with `strands` each strand is drawn through the midpoints of its edges.
pub fn web_to_svg(w: &Web, strands: bool) -> Result<String> {
    let pos: Vec<(f64, f64)> = web_layout(w).into_iter().map(screen).collect();
    let mut s = String::new();
    svg_open(&mut s);
    let _ = writeln!(s, "<circle cx=\"0\" cy=\"0\" r=\"{RADIUS}\" fill=\"none\" stroke=\"#bbb\"/>");
    for &[a, b] in w.edges() {
        let _ = writeln!(
            s,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#333\"/>",
            pos[a].0, pos[a].1, pos[b].0, pos[b].1
        );
    }
    if strands {
        let aug = w.augmented();
        let all = w.strands()?;
        for (i, st) in all.iter().enumerate() {
            let hue = 360.0 * i as f64 / all.len().max(1) as f64;
            let mut pts = vec![pos[st.start - 1]];
            for &d in &st.darts {
                let (a, b) = (pos[aug.origin(d)], pos[aug.target(d)]);
                pts.push(((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0));
            }
            pts.push(pos[st.end - 1]);
            let path: Vec<String> = pts.iter().map(|p| format!("{:.2},{:.2}", p.0, p.1)).collect();
            let _ = writeln!(
                s,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"hsl({hue:.0},70%,45%)\" stroke-dasharray=\"4 2\"/>",
                path.join(" ")
            );
        }
    }
    for (v, p) in pos.iter().enumerate() {
        let fill = if w.color(v) == Color::Black { "#111" } else { "#fff" };
        let _ = writeln!(s, "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"{fill}\" stroke=\"#111\"/>", p.0, p.1);
        if w.is_boundary(v) {
            let _ = writeln!(s, "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>", p.0 * 1.08, p.1 * 1.08, v + 1);
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
