//! Text and SVG renderings.

use std::fmt::Write;

use crate::document::{ClassificationDocument, RayRoots, Status, VerificationReport};

fn vec2(v: &[i64; 2]) -> String {
    format!("({}, {})", v[0], v[1])
}

fn set(vs: &[[i64; 2]]) -> String {
    let inner: Vec<String> = vs.iter().map(vec2).collect();
    format!("{{{}}}", inner.join(", "))
}

pub fn rays_text(name: Option<&str>, rays: &[[i64; 2]]) -> String {
    let mut s = String::new();
    if let Some(n) = name {
        writeln!(s, "fan {n}").unwrap();
    }
    for (i, r) in rays.iter().enumerate() {
        writeln!(s, "p{} = {}", i + 1, vec2(r)).unwrap();
    }
    s
}

pub fn cones_text(cones: &[[usize; 2]]) -> String {
    let c: Vec<String> = cones.iter().map(|[a, b]| format!("<p{a}, p{b}>")).collect();
    format!("maximal cones: {}\n", c.join(", "))
}

pub fn roots_text(roots: &[RayRoots], semisimple: &[[i64; 2]], unipotent: &[[i64; 2]]) -> String {
    let mut s = String::new();
    for r in roots {
        writeln!(s, "R{} = {}", r.ray, set(&r.roots)).unwrap();
    }
    writeln!(s, "S = {}", set(semisimple)).unwrap();
    writeln!(s, "U = {}", set(unipotent)).unwrap();
    s
}

pub fn action_text(images: &[String]) -> String {
    let mut s = String::new();
    for (i, p) in images.iter().enumerate() {
        writeln!(s, "  x{} -> {p}", i + 1).unwrap();
    }
    s
}

pub fn classification_text(doc: &ClassificationDocument) -> String {
    let mut s = rays_text(doc.name.as_deref(), &doc.rays);
    s += &cones_text(&doc.maximal_cones);
    s += &roots_text(&doc.roots, &doc.semisimple, &doc.unipotent);
    if let Some(u) = &doc.regular_vector {
        writeln!(s, "u = {}", vec2(u)).unwrap();
    }
    if let Some(p) = &doc.positive {
        writeln!(s, "R+ = {}", set(p)).unwrap();
    }
    if !doc.admits_action {
        s += "admits additive action: no\nclasses: 0\n";
        return s;
    }
    s += "admits additive action: yes\n";
    if let Some([a, b]) = doc.basis_indices {
        writeln!(s, "admissible basis: p{a}, p{b}").unwrap();
        for r in &doc.alpha {
            writeln!(s, "  p{} = -{}*p{a} - {}*p{b}", r.ray, r.a1, r.a2).unwrap();
        }
    }
    writeln!(s, "wide: {}", if doc.wide { "yes" } else { "no" }).unwrap();
    writeln!(s, "d = {}", doc.d).unwrap();
    writeln!(s, "classes: {}", doc.num_classes).unwrap();
    if let Some(a) = &doc.actions {
        s += "normalized action:\n";
        s += &action_text(&a.normalized);
        if let Some(nn) = &a.non_normalized {
            s += "non-normalized action:\n";
            s += &action_text(nn);
        }
    }
    if let Some(v) = &doc.verification {
        s += &report_text(v);
    }
    s
}

pub fn report_text(r: &VerificationReport) -> String {
    let mut s = String::new();
    writeln!(s, "verification (box {}, seed {}):", r.box_size, r.seed).unwrap();
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        write!(s, "  [{status}] {}", c.name).unwrap();
        if !c.detail.is_empty() {
            write!(s, ": {}", c.detail).unwrap();
        }
        s.push('\n');
        for w in &c.witnesses {
            writeln!(s, "      {w}").unwrap();
        }
    }
    for n in &r.notes {
        writeln!(s, "  note: {n}").unwrap();
    }
    s
}

const PANEL: f64 = 400.0;
const MARGIN: f64 = 20.0;

struct Plane {
    x0: f64,
    extent: i64,
}

impl Plane {
    fn scale(&self) -> f64 {
        (PANEL / 2.0 - MARGIN) / self.extent as f64
    }

    fn at(&self, v: [i64; 2]) -> (f64, f64) {
        let c = self.x0 + PANEL / 2.0;
        (c + v[0] as f64 * self.scale(), PANEL / 2.0 + MARGIN - v[1] as f64 * self.scale())
    }

    fn grid(&self, s: &mut String, title: &str) {
        let e = self.extent;
        writeln!(s, r##"<g class="grid" stroke="#ddd" stroke-width="1">"##).unwrap();
        for k in -e..=e {
            let (a, b) = (self.at([k, -e]), self.at([k, e]));
            writeln!(s, r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"##, a.0, a.1, b.0, b.1).unwrap();
            let (a, b) = (self.at([-e, k]), self.at([e, k]));
            writeln!(s, r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}"/>"##, a.0, a.1, b.0, b.1).unwrap();
        }
        s.push_str("</g>\n");
        let (a, b) = (self.at([-e, 0]), self.at([e, 0]));
        writeln!(s, r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#999"/>"##, a.0, a.1, b.0, b.1).unwrap();
        let (a, b) = (self.at([0, -e]), self.at([0, e]));
        writeln!(s, r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#999"/>"##, a.0, a.1, b.0, b.1).unwrap();
        writeln!(s, r##"<text x="{:.1}" y="14" font-size="13" text-anchor="middle">{title}</text>"##, self.x0 + PANEL / 2.0).unwrap();
    }
}

/// Rays in the N-plane on the left, roots in the M-plane on the right.
pub fn svg(doc: &ClassificationDocument) -> String {
    let max_n = doc.rays.iter().flatten().map(|c| c.abs()).max().unwrap_or(1);
    let max_m = doc
        .roots
        .iter()
        .flat_map(|r| r.roots.iter().flatten())
        .map(|c| c.abs())
        .max()
        .unwrap_or(1);
    let n = Plane {
        x0: 0.0,
        extent: max_n + 1,
    };
    let m = Plane {
        x0: PANEL + MARGIN,
        extent: max_m + 1,
    };
    let width = 2.0 * PANEL + MARGIN;
    let height = PANEL + 2.0 * MARGIN;
    let mut s = String::new();
    writeln!(s, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif">"##).unwrap();
    s.push_str(r##"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="#1f4e9c"/></marker></defs>"##);
    s.push('\n');
    writeln!(s, r##"<rect width="{width}" height="{height}" fill="white"/>"##).unwrap();

    n.grid(&mut s, "N");
    let o = n.at([0, 0]);
    for (i, r) in doc.rays.iter().enumerate() {
        let p = n.at(*r);
        writeln!(
            s,
            r##"<line class="ray" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#1f4e9c" stroke-width="2" marker-end="url(#arrow)"/>"##,
            o.0, o.1, p.0, p.1
        )
        .unwrap();
        let len = ((r[0] * r[0] + r[1] * r[1]) as f64).sqrt();
        let (lx, ly) = (p.0 + 12.0 * r[0] as f64 / len, p.1 - 12.0 * r[1] as f64 / len);
        writeln!(s, r##"<text x="{lx:.1}" y="{ly:.1}" font-size="12" text-anchor="middle">p{}</text>"##, i + 1).unwrap();
    }

    m.grid(&mut s, "M");
    let positive = doc.positive.clone().unwrap_or_default();
    for r in &doc.roots {
        for e in &r.roots {
            let p = m.at(*e);
            let (class, fill) = if doc.semisimple.contains(e) {
                ("root semisimple", "#2e8b57")
            } else {
                ("root unipotent", "#c0392b")
            };
            let stroke = if positive.contains(e) { "black" } else { "none" };
            writeln!(
                s,
                r##"<circle class="{class}" cx="{:.1}" cy="{:.1}" r="5" fill="{fill}" stroke="{stroke}" stroke-width="2"><title>R{} {}</title></circle>"##,
                p.0,
                p.1,
                r.ray,
                vec2(e)
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}
