//! SVG output for closure maps and scene diagrams. All numbers are written
//! with six decimals so identical inputs give identical bytes.

use std::fmt::Write;

use tiltpick::geom2d::{DirCone, Vec2};
use tiltpick::planner::ClosureMap;
use tiltpick::scene::{ContactSet, Scene};

/// Pixels per metre in scene diagrams.
pub const SCALE: f64 = 500.0;

pub fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Closed cells as filled squares, θ growing upward and δ to the right.
pub fn closure_map_svg(map: &ClosureMap) -> String {
    let cell = 6.0;
    let margin = 40.0;
    let (nt, nd) = (map.spec.n_theta, map.spec.n_delta);
    let (w, h) = (nd as f64 * cell + 2.0 * margin, nt as f64 * cell + 2.0 * margin);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    )
    .unwrap();
    writeln!(
        out,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#000000"/>"##,
        num(margin),
        num(margin),
        num(nd as f64 * cell),
        num(nt as f64 * cell)
    )
    .unwrap();
    out.push_str("<g id=\"closure\" fill=\"#4a78b5\">\n");
    for (i, j, _, _, closed) in map.iter() {
        if closed {
            let x = margin + j as f64 * cell;
            let y = margin + (nt - 1 - i) as f64 * cell;
            writeln!(
                out,
                r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                num(x),
                num(y),
                num(cell),
                num(cell)
            )
            .unwrap();
        }
    }
    out.push_str("</g>\n");
    writeln!(
        out,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">delta [m], 0 to {}</text>"#,
        num(w / 2.0),
        num(h - 12.0),
        num(map.side_length)
    )
    .unwrap();
    writeln!(
        out,
        r#"<text x="12" y="{}" font-size="12" transform="rotate(-90 12 {})" text-anchor="middle">theta [deg], 0 to {}</text>"#,
        num(h / 2.0),
        num(h / 2.0),
        num(map.spec.theta_max.to_degrees())
    )
    .unwrap();
    out.push_str("</svg>\n");
    out
}

struct Canvas {
    origin: Vec2,
    top: f64,
}

impl Canvas {
    fn x(&self, p: Vec2) -> f64 {
        (p.x - self.origin.x) * SCALE
    }

    fn y(&self, p: Vec2) -> f64 {
        (self.top - p.z) * SCALE
    }

    fn line(&self, out: &mut String, a: Vec2, b: Vec2, attrs: &str) {
        writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {attrs}/>"#,
            num(self.x(a)),
            num(self.y(a)),
            num(self.x(b)),
            num(self.y(b))
        )
        .unwrap();
    }

    fn dot(&self, out: &mut String, p: Vec2, class: &str, label: &str) {
        writeln!(
            out,
            r#"<circle class="{class}" cx="{}" cy="{}" r="4"><title>{label}</title></circle>"#,
            num(self.x(p)),
            num(self.y(p))
        )
        .unwrap();
    }
}

/// Diagram of one configuration: supports, object, friction cones, images
/// of B on the edge line and the contact normal lines.
pub fn scene_svg(
    scene: &Scene,
    vertices: &[Vec2; 4],
    contacts: &ContactSet,
    images: &[Vec2],
) -> String {
    let pad = 0.1;
    let mut lo = Vec2::new(0.0, 0.0);
    let mut hi = Vec2::new(0.0, 0.0);
    for p in vertices.iter().chain(images) {
        lo = Vec2::new(lo.x.min(p.x), lo.z.min(p.z));
        hi = Vec2::new(hi.x.max(p.x), hi.z.max(p.z));
    }
    let (lo, hi) = (lo - Vec2::new(pad, pad), hi + Vec2::new(pad, pad));
    let canvas = Canvas {
        origin: lo,
        top: hi.z,
    };
    let (w, h) = ((hi.x - lo.x) * SCALE, (hi.z - lo.z) * SCALE);
    let reach = (hi - lo).norm();

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    )
    .unwrap();

    out.push_str("<g id=\"supports\" stroke=\"#333333\" stroke-width=\"3\">\n");
    canvas.line(&mut out, Vec2::ZERO, Vec2::new(hi.x, 0.0), r#"class="floor""#);
    let wall_end = Vec2::from_angle(scene.supports.psi) * (hi.z / scene.supports.psi.sin());
    canvas.line(&mut out, Vec2::ZERO, wall_end, r#"class="wall""#);
    out.push_str("</g>\n");

    out.push_str("<g id=\"object\">\n");
    let points: Vec<String> = vertices
        .iter()
        .map(|&v| format!("{},{}", num(canvas.x(v)), num(canvas.y(v))))
        .collect();
    writeln!(
        out,
        r##"<polygon points="{}" fill="#d9c7a3" stroke="#000000"/>"##,
        points.join(" ")
    )
    .unwrap();
    out.push_str("</g>\n");

    out.push_str("<g id=\"cones\" stroke=\"#c0392b\" stroke-width=\"1\">\n");
    let arm = 0.06;
    for c in contacts.as_array() {
        for e in DirCone::friction(c.normal, c.mu).edges() {
            canvas.line(&mut out, c.position, c.position + e * arm, "");
        }
    }
    out.push_str("</g>\n");

    out.push_str("<g id=\"annotations\">\n");
    for c in contacts.as_array() {
        canvas.line(
            &mut out,
            c.position - c.normal * reach,
            c.position + c.normal * reach,
            r##"class="normal" stroke="#888888" stroke-dasharray="4 4""##,
        );
    }
    for (name, c) in [("A", contacts.a), ("B", contacts.b), ("C", contacts.c)] {
        canvas.dot(&mut out, c.position, "contact", name);
    }
    for (k, &p) in images.iter().enumerate() {
        canvas.dot(&mut out, p, "image", &format!("B'{}", k + 1));
    }
    out.push_str("</g>\n</svg>\n");
    out
}
