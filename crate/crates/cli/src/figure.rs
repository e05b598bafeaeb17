//! SVG figures with a macro panel of standard parts and microscope insets.
//!
//! An inset with anchor `A` and zoom exponents `(kx, ky)` shows a point `P` at
//! `st((P.x - A.x) / ε^kx, (P.y - A.y) / ε^ky)`; points whose inset
//! coordinates are infinite are not drawn. Lines and circles are mapped
//! exactly, normalized by their leading monomial, and only then reduced to
//! standard parts. Decimals are produced at render time with an enclosure
//! width of 1e-9 of the panel span.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use semieuclid::ext::{ext_cos_sin, exact_cos_sin, ext_tan, TrigArgument};
use semieuclid::geom::{
    distance, intersect_lines, line_through, midpoint, perpendicular_bisector, Circle, Line, Point, Triangle,
};
use semieuclid::{ConstructibleReal, Exponent, Precision, SeriesNumber, Sign};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FigureError {
    #[error("unknown figure: {0}")]
    Unknown(String),
    #[error("figure construction failed: {0}")]
    Build(String),
}

fn build_err(e: impl std::fmt::Display) -> FigureError {
    FigureError::Build(e.to_string())
}

type FigResult<T> = Result<T, FigureError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureName {
    Parallel,
    Circumcircle,
    Wallis,
    Legendre,
    LimitingRays,
    Triangle,
}

impl FigureName {
    pub const ALL: [FigureName; 6] = [
        FigureName::Parallel,
        FigureName::Circumcircle,
        FigureName::Wallis,
        FigureName::Legendre,
        FigureName::LimitingRays,
        FigureName::Triangle,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureName::Parallel => "parallel",
            FigureName::Circumcircle => "circumcircle",
            FigureName::Wallis => "wallis",
            FigureName::Legendre => "legendre",
            FigureName::LimitingRays => "limiting-rays",
            FigureName::Triangle => "triangle",
        }
    }
}

impl FromStr for FigureName {
    type Err = FigureError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FigureName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| FigureError::Unknown(s.to_string()))
    }
}

/// Panel anchors, for `--help`.
pub const ANCHORS: &str = "\
Each figure has a macro panel (standard parts) and microscope insets. An inset
with anchor A and zoom (kx, ky) plots ((x - A.x)/e^kx, (y - A.y)/e^ky).
  parallel       inset at (1,0), zoom (1,1): the lines y = k e x become y = k
  circumcircle   insets at (0,0), (-1/2,0), (1/2,0), zoom (1,1): the foot and
                 perpendicular of each side; inset at the meeting point Z of
                 the perpendiculars (not in LxL), zoom (1,0): slopes 1/e
                 become 45 degrees and the three lines cross at Z
  wallis         inset at (0,0), zoom (1,1): the original triangle at scale 1/e
  legendre       inset at (-1,0), zoom (1,1): arm y2 separates from y = 0
  limiting-rays  inset at (0,0), zoom (1,1); inset at A = (0,e), zoom (-1,1):
                 y1, y2, y5 and the candidate ray fan out from A
  triangle       inset at (0,0), zoom (1,1): a halo triangle with the same angles";

struct View {
    anchor: Point,
    kx: i64,
    ky: i64,
}

struct Panel {
    id: &'static str,
    title: String,
    view: View,
    window: [f64; 4],
}

enum Kind {
    Point(Point),
    Segment(Point, Point),
    Ray(Point, Point),
    Line(Line),
    Circle(Circle),
    /// Text near `vertex`, pulled toward `toward`.
    AngleLabel(Point, Point),
}

struct Shape {
    kind: Kind,
    label: String,
    class: &'static str,
    only: Option<&'static str>,
}

struct Figure {
    title: String,
    panels: Vec<Panel>,
    shapes: Vec<Shape>,
    captions: Vec<String>,
}

impl Figure {
    fn add(&mut self, kind: Kind, label: impl Into<String>, class: &'static str) {
        self.shapes.push(Shape { kind, label: label.into(), class, only: None });
    }

    fn add_in(&mut self, panel: &'static str, kind: Kind, label: impl Into<String>, class: &'static str) {
        self.shapes.push(Shape { kind, label: label.into(), class, only: Some(panel) });
    }
}

fn int(n: i64, p: Precision) -> SeriesNumber {
    SeriesNumber::from_integer(n, p)
}

fn macro_view(p: Precision) -> View {
    View { anchor: Point::origin(p), kx: 0, ky: 0 }
}

fn halo(anchor: Point) -> View {
    View { anchor, kx: 1, ky: 1 }
}

fn exp(n: i64) -> Exponent {
    Exponent::from_integer(n)
}

/// Panel-coordinate approximations, to 1e-9 of the panel span.
struct Mapper {
    width: BigRational,
}

impl Mapper {
    fn new(window: &[f64; 4]) -> Self {
        let span = (window[1] - window[0]).max(window[3] - window[2]);
        let span = BigRational::from_float(span).unwrap_or_else(|| BigRational::from_integer(1.into()));
        Mapper { width: span / BigRational::from_integer(BigInt::from(1_000_000_000u64)) }
    }

    fn real(&self, c: &ConstructibleReal) -> f64 {
        let (lo, hi) = c.approx(&self.width);
        ((lo + hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    /// Standard part of a limited series.
    fn st(&self, s: &SeriesNumber) -> Option<f64> {
        if s.vanishes() {
            return Some(0.0);
        }
        let m = s.classify().ok()?;
        if m.is_infinite() {
            return None;
        }
        Some(self.real(&s.standard_part().ok()?))
    }

    /// Divides by the leading monomial of the family, then takes standard
    /// parts; `None` when every entry vanishes.
    fn normalized(&self, xs: &[SeriesNumber]) -> Option<Vec<f64>> {
        let v = xs.iter().filter_map(|s| s.valuation().ok()).min()?;
        xs.iter().map(|s| s.shift(-v).ok().and_then(|t| self.st(&t))).collect()
    }

    fn point(&self, view: &View, p: &Point) -> Option<(f64, f64)> {
        let ux = (&p.x - &view.anchor.x).shift(exp(-view.kx)).ok()?;
        let uy = (&p.y - &view.anchor.y).shift(exp(-view.ky)).ok()?;
        Some((self.st(&ux)?, self.st(&uy)?))
    }

    fn direction(&self, view: &View, d: &Point) -> Option<(f64, f64)> {
        let dx = d.x.shift(exp(-view.kx)).ok()?;
        let dy = d.y.shift(exp(-view.ky)).ok()?;
        let n = self.normalized(&[dx, dy])?;
        (n[0] != 0.0 || n[1] != 0.0).then_some((n[0], n[1]))
    }

    /// `bx u + by v + c = 0` in panel coordinates.
    fn line(&self, view: &View, l: &Line) -> Option<[f64; 3]> {
        let a = l.a().shift(exp(view.kx)).ok()?;
        let b = l.b().shift(exp(view.ky)).ok()?;
        let c = l.residual(&view.anchor);
        let n = self.normalized(&[a, b, c])?;
        (n[0] != 0.0 || n[1] != 0.0).then(|| [n[0], n[1], n[2]])
    }

    /// Circle or line the circle reduces to; isotropic views only.
    fn circle(&self, view: &View, c: &Circle) -> Option<Curve> {
        if view.kx != view.ky {
            return None;
        }
        let k = view.kx;
        let two = ConstructibleReal::from_integer(2);
        let off = &view.anchor - &c.center;
        let alpha = SeriesNumber::monomial(ConstructibleReal::one(), exp(2 * k), c.radius.precision()).ok()?;
        let bx = off.x.shift(exp(k)).ok()?.scale(&two);
        let by = off.y.shift(exp(k)).ok()?.scale(&two);
        let g = off.norm2() - &c.radius * &c.radius;
        let n = self.normalized(&[alpha, bx, by, g])?;
        let [a, bx, by, g] = [n[0], n[1], n[2], n[3]];
        if a == 0.0 {
            return (bx != 0.0 || by != 0.0).then_some(Curve::Line([bx, by, g]));
        }
        let (cx, cy) = (-bx / (2.0 * a), -by / (2.0 * a));
        let r2 = cx * cx + cy * cy - g / a;
        (r2 > 0.0).then(|| Curve::Circle(cx, cy, r2.sqrt()))
    }
}

enum Curve {
    Line([f64; 3]),
    Circle(f64, f64, f64),
}

/// Parametric clip of `p + t d`, `t` in `[t0, t1]`, to the window.
fn clip(p: (f64, f64), d: (f64, f64), t0: f64, t1: f64, w: &[f64; 4]) -> Option<((f64, f64), (f64, f64))> {
    let (mut lo, mut hi) = (t0, t1);
    for (pc, dc, min, max) in [(p.0, d.0, w[0], w[1]), (p.1, d.1, w[2], w[3])] {
        if dc.abs() < 1e-300 {
            if pc < min || pc > max {
                return None;
            }
            continue;
        }
        let (a, b) = ((min - pc) / dc, (max - pc) / dc);
        lo = lo.max(a.min(b));
        hi = hi.min(a.max(b));
    }
    (lo < hi).then_some(((p.0 + lo * d.0, p.1 + lo * d.1), (p.0 + hi * d.0, p.1 + hi * d.1)))
}

fn line_segment(l: [f64; 3], w: &[f64; 4]) -> Option<((f64, f64), (f64, f64))> {
    let [a, b, c] = l;
    let n2 = a * a + b * b;
    let p = (-c * a / n2, -c * b / n2);
    let big = 1e6 * (w[1] - w[0] + w[3] - w[2]);
    clip(p, (-b, a), -big, big, w)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    x: f64,
    y: f64,
    w: f64,
    h: f64,
    window: [f64; 4],
}

impl Frame {
    fn px(&self, (u, v): (f64, f64)) -> (f64, f64) {
        let [x0, x1, y0, y1] = self.window;
        (self.x + (u - x0) / (x1 - x0) * self.w, self.y + self.h - (v - y0) / (y1 - y0) * self.h)
    }

    fn px_len(&self, r: f64) -> f64 {
        r / (self.window[1] - self.window[0]) * self.w
    }
}

const MACRO: f64 = 460.0;
const INSET: f64 = 220.0;
const MARGIN: f64 = 20.0;
const TITLE: f64 = 22.0;

fn render(fig: &Figure, scale: f64) -> FigResult<String> {
    let insets = fig.panels.len() - 1;
    let inset_h = insets as f64 * (INSET + TITLE + MARGIN);
    let width = MARGIN * 3.0 + MACRO + if insets > 0 { INSET } else { 0.0 };
    let body = (MACRO + TITLE + MARGIN).max(inset_h);
    let height = MARGIN + 30.0 + body + 18.0 * fig.captions.len() as f64 + MARGIN;
    let mut out = String::new();
    let w = |out: &mut String, s: String| out.push_str(&s);
    w(&mut out, format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\" font-size=\"12\">\n",
        width * scale,
        height * scale
    ));
    w(&mut out, format!("<title>{}</title>\n", escape(&fig.title)));
    w(&mut out, "<style>.frame{fill:#fff;stroke:#444}.line{stroke:#1f5fa8;fill:none}.aux{stroke:#999;fill:none;stroke-dasharray:4 3}.hi{stroke:#c0392b;fill:none;stroke-width:1.8}.pt{fill:#111}text.lbl{fill:#222}</style>\n".into());
    let mut frames = Vec::new();
    out.push_str("<defs>\n");
    for (i, p) in fig.panels.iter().enumerate() {
        let (x, y, s) = if i == 0 {
            (MARGIN, MARGIN + 30.0 + TITLE, MACRO)
        } else {
            (MARGIN * 2.0 + MACRO, MARGIN + 30.0 + TITLE + (i - 1) as f64 * (INSET + TITLE + MARGIN), INSET)
        };
        let f = Frame { x, y, w: s, h: s, window: p.window };
        w(&mut out, format!("<clipPath id=\"clip-{}\"><rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{s:.2}\" height=\"{s:.2}\"/></clipPath>\n", p.id));
        frames.push(f);
    }
    out.push_str("</defs>\n");
    w(&mut out, format!("<text x=\"{MARGIN}\" y=\"{:.0}\" font-size=\"16\">{}</text>\n", MARGIN + 14.0, escape(&fig.title)));
    for (p, f) in fig.panels.iter().zip(&frames) {
        let m = Mapper::new(&p.window);
        let v = &p.view;
        w(&mut out, format!(
            "<g id=\"panel-{}\" class=\"panel\" data-anchor=\"{}\" data-zoom=\"{} {}\">\n",
            p.id,
            escape(&p.view.anchor.to_string()),
            v.kx,
            v.ky
        ));
        w(&mut out, format!("<rect class=\"frame\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\"/>\n", f.x, f.y, f.w, f.h));
        w(&mut out, format!("<text x=\"{:.2}\" y=\"{:.2}\">{}</text>\n", f.x, f.y - 6.0, escape(&p.title)));
        let clip_attr = format!("clip-path=\"url(#clip-{})\"", p.id);
        for s in &fig.shapes {
            if s.only.is_some_and(|id| id != p.id) {
                continue;
            }
            draw(&mut out, s, &m, v, f, &clip_attr);
        }
        out.push_str("</g>\n");
    }
    let mut y = MARGIN + 30.0 + body + 4.0;
    for c in &fig.captions {
        w(&mut out, format!("<text x=\"{MARGIN}\" y=\"{y:.0}\">{}</text>\n", escape(c)));
        y += 18.0;
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn draw(out: &mut String, s: &Shape, m: &Mapper, v: &View, f: &Frame, clip_attr: &str) {
    let label = |out: &mut String, at: (f64, f64)| {
        if !s.label.is_empty() {
            let (x, y) = f.px(at);
            let _ = writeln!(out, "<text class=\"lbl\" x=\"{:.2}\" y=\"{:.2}\" {clip_attr}>{}</text>", x + 4.0, y - 4.0, escape(&s.label));
        }
    };
    let seg = |out: &mut String, a: (f64, f64), b: (f64, f64)| {
        let ((x1, y1), (x2, y2)) = (f.px(a), f.px(b));
        let _ = writeln!(out, "<line class=\"{}\" x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" {clip_attr}/>", s.class);
    };
    let ray = |out: &mut String, p: (f64, f64), d: (f64, f64)| {
        let big = 1e6 * (f.window[1] - f.window[0] + f.window[3] - f.window[2]);
        if let Some((a, b)) = clip(p, d, 0.0, big, &f.window) {
            seg(out, a, b);
            label(out, b);
        }
    };
    let full_line = |out: &mut String, l: [f64; 3]| {
        if let Some((a, b)) = line_segment(l, &f.window) {
            seg(out, a, b);
            label(out, b);
        }
    };
    match &s.kind {
        Kind::Point(p) => {
            if let Some(q) = m.point(v, p) {
                let (x, y) = f.px(q);
                let _ = writeln!(out, "<circle class=\"pt\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" {clip_attr}/>");
                label(out, q);
            }
        }
        Kind::Segment(a, b) => match (m.point(v, a), m.point(v, b)) {
            (Some(p), Some(q)) => {
                seg(out, p, q);
                label(out, ((p.0 + q.0) / 2.0, (p.1 + q.1) / 2.0));
            }
            (Some(p), None) => {
                if let Some(d) = m.direction(v, &(b - a)) {
                    ray(out, p, d);
                }
            }
            (None, Some(q)) => {
                if let Some(d) = m.direction(v, &(a - b)) {
                    ray(out, q, d);
                }
            }
            (None, None) => {}
        },
        Kind::Ray(o, d) => match m.point(v, o) {
            Some(p) => {
                if let Some(dir) = m.direction(v, d) {
                    ray(out, p, dir);
                }
            }
            None => {
                // an origin infinitely far away: the visible part is the whole
                // line when the anchor lies ahead of the origin
                let ahead = (&v.anchor - o).dot(d).sign() == Ok(Sign::Positive);
                let l = line_through(o, &(o + d)).ok().and_then(|l| m.line(v, &l));
                if let (true, Some(l)) = (ahead, l) {
                    full_line(out, l);
                }
            }
        },
        Kind::Line(l) => {
            if let Some(l) = m.line(v, l) {
                full_line(out, l);
            }
        }
        Kind::Circle(c) => match m.circle(v, c) {
            Some(Curve::Circle(cx, cy, r)) => {
                let (x, y) = f.px((cx, cy));
                let _ = writeln!(out, "<circle class=\"{}\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{:.2}\" {clip_attr}/>", s.class, f.px_len(r));
                label(out, (cx + r * 0.7, cy + r * 0.7));
            }
            Some(Curve::Line(l)) => full_line(out, l),
            None => {}
        },
        Kind::AngleLabel(vertex, toward) => {
            if let (Some(p), Some(q)) = (m.point(v, vertex), m.point(v, toward)) {
                let at = (p.0 + 0.18 * (q.0 - p.0), p.1 + 0.18 * (q.1 - p.1));
                let (x, y) = f.px(at);
                let _ = writeln!(out, "<text class=\"lbl\" x=\"{x:.2}\" y=\"{y:.2}\" text-anchor=\"middle\" {clip_attr}>{}</text>", escape(&s.label));
            }
        }
    }
}

fn parallel(p: Precision) -> FigResult<Figure> {
    let e = SeriesNumber::epsilon(p);
    let mut fig = Figure {
        title: "Lines through O with infinitesimal slope miss y = 1 in LxL".into(),
        panels: vec![
            Panel { id: "macro", title: "standard parts".into(), view: macro_view(p), window: [-2.0, 2.0, -2.0, 2.0] },
            Panel { id: "halo-1-0", title: "halo of (1,0), zoom 1/ε".into(), view: halo(Point::from_integers(1, 0, p)), window: [-2.5, 2.5, -1.0, 4.0] },
        ],
        shapes: vec![],
        captions: vec![],
    };
    fig.add(Kind::Line(Line::horizontal(int(1, p)).map_err(build_err)?), "y = 1", "hi");
    fig.add(Kind::Line(Line::horizontal(int(0, p)).map_err(build_err)?), "y = 0", "aux");
    for k in 1..=3 {
        let m = e.scale(&ConstructibleReal::from_integer(k));
        let l = Line::from_slope(m, int(0, p)).map_err(build_err)?;
        let name = if k == 1 { "y = εx".to_string() } else { format!("y = {k}εx") };
        fig.add(Kind::Line(l), name, "line");
    }
    fig.add(Kind::Point(Point::origin(p)), "O", "pt");
    fig.captions.push("y = kεx meets y = 1 only at (1/(kε), 1), outside LxL; near (1,0) the lines sit at heights k".into());
    Ok(fig)
}

fn circumcircle(p: Precision) -> FigResult<Figure> {
    let e = SeriesNumber::epsilon(p);
    let a = Point::new(int(-1, p), -&e);
    let b = Point::new(int(1, p), -&e);
    let c = Point::origin(p);
    let half = SeriesNumber::ratio(1, 2, p);
    let mut fig = Figure {
        title: "Triangle A = (-1,-ε), B = (1,-ε), C = (0,0) has no circumcircle in LxL".into(),
        panels: vec![
            Panel { id: "macro", title: "standard parts".into(), view: macro_view(p), window: [-2.0, 2.0, -2.0, 2.0] },
            Panel { id: "halo-0-0", title: "halo of (0,0), zoom 1/ε".into(), view: halo(Point::origin(p)), window: [-3.0, 3.0, -3.0, 3.0] },
            Panel { id: "halo-m-half", title: "halo of (-1/2,0), zoom 1/ε".into(), view: halo(Point::new(-&half, int(0, p))), window: [-3.0, 3.0, -3.0, 3.0] },
            Panel { id: "halo-p-half", title: "halo of (1/2,0), zoom 1/ε".into(), view: halo(Point::new(half, int(0, p))), window: [-3.0, 3.0, -3.0, 3.0] },
        ],
        shapes: vec![],
        captions: vec![],
    };
    for (x, y, name) in [(&a, &b, "AB"), (&a, &c, "AC"), (&b, &c, "BC")] {
        fig.add(Kind::Segment(x.clone(), y.clone()), "", "line");
        let bis = perpendicular_bisector(x, y).map_err(build_err)?;
        fig.add(Kind::Line(bis), format!("bisector {name}"), "hi");
        fig.add(Kind::Point(midpoint(x, y)), format!("M{name}"), "pt");
    }
    for (pt, name) in [(&a, "A"), (&b, "B"), (&c, "C")] {
        fig.add(Kind::Point(pt.clone()), name, "pt");
    }
    let ab = perpendicular_bisector(&a, &b).map_err(build_err)?;
    let ac = perpendicular_bisector(&a, &c).map_err(build_err)?;
    if let Some(z) = intersect_lines(&ab, &ac).map_err(build_err)? {
        fig.panels.push(Panel {
            id: "meet",
            title: "at the meeting point Z: x zoom 1/ε, y zoom 1".into(),
            view: View { anchor: z.clone(), kx: 1, ky: 0 },
            window: [-2.0, 2.0, -2.0, 2.0],
        });
        let r = distance(&z, &c).map_err(build_err)?;
        fig.add(Kind::Circle(Circle::general(z.clone(), r).map_err(build_err)?), "circle of the full plane", "aux");
        fig.captions.push(format!("bisectors of AB and AC meet at {z}, which is not in LxL"));
        fig.captions.push("the circle through A, B, C has an infinite center and shows only as its tangent at C".into());
    }
    Ok(fig)
}

fn wallis(p: Precision) -> FigResult<Figure> {
    let e = SeriesNumber::epsilon(p);
    let o = Point::origin(p);
    let pp = Point::new(e.clone(), int(0, p));
    let q = Point::from_integers(0, 1, p);
    let de = Point::from_integers(1, 0, p);
    let apex = Point::new(int(0, p), e.inv().map_err(build_err)?);
    let mut fig = Figure {
        title: "Wallis: the triangle similar to O, (ε,0), (0,1) on DE = [0,1]".into(),
        panels: vec![
            Panel { id: "macro", title: "standard parts".into(), view: macro_view(p), window: [-0.5, 1.5, -0.5, 1.5] },
            Panel { id: "halo-0-0", title: "halo of (0,0), zoom 1/ε".into(), view: halo(o.clone()), window: [-0.5, 1.5, -0.5, 1.5] },
        ],
        shapes: vec![],
        captions: vec![],
    };
    for (x, y) in [(&o, &pp), (&pp, &q), (&q, &o)] {
        fig.add(Kind::Segment(x.clone(), y.clone()), "", "line");
    }
    for (x, y) in [(&o, &de), (&de, &apex), (&apex, &o)] {
        fig.add(Kind::Segment(x.clone(), y.clone()), "", "hi");
    }
    fig.add(Kind::Point(o), "O = D", "pt");
    fig.add(Kind::Point(pp), "P", "pt");
    fig.add(Kind::Point(q), "Q", "pt");
    fig.add(Kind::Point(de), "E", "pt");
    fig.captions.push(format!("the apex F = {apex} is at infinite height, so the similar triangle leaves LxL"));
    Ok(fig)
}

fn legendre(p: Precision) -> FigResult<Figure> {
    let arg = TrigArgument::new(BigRational::from_integer(1.into()), -&SeriesNumber::epsilon(p)).map_err(build_err)?;
    let (c2, s2) = ext_cos_sin(&arg).map_err(build_err)?;
    let o = Point::origin(p);
    let a = Point::from_integers(0, 1, p);
    let mut fig = Figure {
        title: "Legendre: A = (0,1) inside the angle of y1 and y2 = ray at angle π - ε".into(),
        panels: vec![
            Panel { id: "macro", title: "standard parts".into(), view: macro_view(p), window: [-2.0, 2.0, -1.0, 3.0] },
            Panel { id: "halo-m1-0", title: "halo of (-1,0), zoom 1/ε".into(), view: halo(Point::from_integers(-1, 0, p)), window: [-2.0, 2.0, -1.0, 3.0] },
        ],
        shapes: vec![],
        captions: vec![],
    };
    fig.add(Kind::Ray(o.clone(), Point::from_integers(1, 0, p)), "y1", "hi");
    fig.add(Kind::Ray(o.clone(), Point::new(c2, s2)), "y2", "hi");
    for (m, name) in [(-1, "y = -x + 1"), (1, "y = x + 1"), (0, "y = 1")] {
        fig.add(Kind::Line(Line::from_slope(int(m, p), int(1, p)).map_err(build_err)?), name, "line");
    }
    fig.add(Kind::Point(o), "O", "pt");
    fig.add(Kind::Point(a), "A", "pt");
    let t = ext_tan(&arg).map_err(build_err)?;
    fig.captions.push(format!("arm y2 has slope tan*(π - ε) = {}", short(&t)));
    fig.captions.push("lines through A meet at most one arm in LxL; y = 1 meets neither".into());
    Ok(fig)
}

fn limiting_rays(p: Precision) -> FigResult<Figure> {
    let e = SeriesNumber::epsilon(p);
    let e2 = &e * &e;
    let a = Point::new(int(0, p), e.clone());
    let o = Point::origin(p);
    let delta = (&e2 * &e2).scale(&ConstructibleReal::ratio(1, 4));
    let root = delta.sqrt().map_err(build_err)?;
    let mut fig = Figure {
        title: "Limiting rays from A = (0,ε) toward y3 = 0".into(),
        panels: vec![
            Panel { id: "macro", title: "standard parts".into(), view: macro_view(p), window: [-2.0, 2.0, -1.5, 1.5] },
            Panel { id: "halo-0-0", title: "halo of (0,0), zoom 1/ε".into(), view: halo(o.clone()), window: [-3.0, 3.0, -1.0, 2.0] },
            Panel { id: "fan-at-a", title: "at A: x scaled by ε, y by 1/ε".into(), view: View { anchor: a.clone(), kx: -1, ky: 1 }, window: [-2.0, 2.0, -2.0, 1.0] },
        ],
        shapes: vec![],
        captions: vec![],
    };
    fig.add(Kind::Line(Line::horizontal(int(0, p)).map_err(build_err)?), "y3", "line");
    fig.add(Kind::Ray(a.clone(), Point::new(int(-1, p), -&e2)), "y1", "hi");
    fig.add(Kind::Ray(a.clone(), Point::new(int(1, p), -&e2)), "y2", "hi");
    fig.add(Kind::Ray(a.clone(), Point::new(int(-1, p), -&delta)), "y (slope δ)", "aux");
    fig.add(Kind::Ray(a.clone(), Point::new(int(-1, p), -&root)), "y5 (slope √δ)", "line");
    fig.add(Kind::Segment(a.clone(), o.clone()), "AO", "aux");
    fig.add(Kind::Point(a), "A", "pt");
    fig.add(Kind::Point(o), "O", "pt");
    fig.captions.push(format!("candidate δ = {delta}; y5 = √δ x + ε lies between y and AO and misses y3 in LxL"));
    fig.captions.push("in the right-hand inset a meeting at u = ±1 means x = ±1/ε, outside LxL".into());
    Ok(fig)
}

/// `q π` for the exact angle with these cosine and sine, if `q` is in the
/// supported table.
fn pi_label(cos: &SeriesNumber, sin: &SeriesNumber) -> Option<String> {
    let same = |s: &SeriesNumber, c: &ConstructibleReal| {
        s.is_exact() && (s - &SeriesNumber::constant(c.clone(), s.precision())).sign() == Ok(Sign::Zero)
    };
    (0..48).find_map(|k| {
        let q = BigRational::new(k.into(), 24.into());
        let (c, s) = exact_cos_sin(&q).ok()?;
        (same(cos, &c) && same(sin, &s)).then(|| pi_text(&q))
    })
}

fn pi_text(q: &BigRational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let n = q.numer().to_string();
    let num = if n == "1" { "π".to_string() } else { format!("{n}π") };
    if q.is_integer() {
        num
    } else {
        format!("{num}/{}", q.denom())
    }
}

fn triangle(p: Precision) -> FigResult<Figure> {
    let e = SeriesNumber::epsilon(p);
    let big = [Point::origin(p), Point::from_integers(1, 0, p), Point::from_integers(0, 1, p)];
    let small = [Point::origin(p), Point::new(e.clone(), int(0, p)), Point::new(int(0, p), e.clone())];
    let mut fig = Figure {
        title: "Angle sum of a right isosceles triangle".into(),
        panels: vec![
            Panel { id: "macro", title: "standard parts".into(), view: macro_view(p), window: [-0.5, 1.5, -0.5, 1.5] },
            Panel { id: "halo-0-0", title: "halo of (0,0), zoom 1/ε".into(), view: halo(Point::origin(p)), window: [-0.5, 1.5, -0.5, 1.5] },
        ],
        shapes: vec![],
        captions: vec![],
    };
    for (panel, pts, class) in [("macro", &big, "line"), ("halo-0-0", &small, "hi")] {
        let t = Triangle::new(pts[0].clone(), pts[1].clone(), pts[2].clone()).map_err(build_err)?;
        let angles = t.interior_angles().map_err(build_err)?;
        let centroid = Point::new(
            (&(&pts[0].x + &pts[1].x) + &pts[2].x).scale(&ConstructibleReal::ratio(1, 3)),
            (&(&pts[0].y + &pts[1].y) + &pts[2].y).scale(&ConstructibleReal::ratio(1, 3)),
        );
        let mut labels = Vec::new();
        for (i, ang) in angles.iter().enumerate() {
            let (c, s) = ang.cos_sin().map_err(build_err)?;
            let text = pi_label(&c, &s).unwrap_or_else(|| format!("cos {}", short(&c)));
            labels.push(text.clone());
            fig.add_in(panel, Kind::AngleLabel(pts[i].clone(), centroid.clone()), text, "lbl");
            fig.add_in(panel, Kind::Segment(pts[i].clone(), pts[(i + 1) % 3].clone()), "", class);
            fig.add_in(panel, Kind::Point(pts[i].clone()), "", "pt");
        }
        let straight = t.angle_sum().map_err(build_err)?.is_straight().map_err(build_err)?;
        let which = if panel == "macro" { "O, (1,0), (0,1)" } else { "O, (ε,0), (0,ε)" };
        fig.captions.push(format!(
            "{which}: {} = {}",
            labels.join(" + "),
            if straight { "π" } else { "not π" }
        ));
    }
    Ok(fig)
}

/// The first four terms of a series, for captions.
fn short(s: &SeriesNumber) -> String {
    let text = s.to_string();
    let cut = text
        .match_indices([' '])
        .filter(|(i, _)| matches!(text[i + 1..].chars().next(), Some('+' | '-')))
        .nth(3)
        .map(|(i, _)| i);
    match cut {
        Some(i) => format!("{} + ...", &text[..i]),
        None => text,
    }
}

/// Builds and renders a figure; `scale` multiplies the output size.
pub fn figure_svg(name: FigureName, prec: Precision, scale: f64) -> FigResult<String> {
    let fig = match name {
        FigureName::Parallel => parallel(prec)?,
        FigureName::Circumcircle => circumcircle(prec)?,
        FigureName::Wallis => wallis(prec)?,
        FigureName::Legendre => legendre(prec)?,
        FigureName::LimitingRays => limiting_rays(prec)?,
        FigureName::Triangle => triangle(prec)?,
    };
    render(&fig, scale)
}

/// Panel ids of a figure, in document order.
pub fn panel_ids(name: FigureName) -> Vec<&'static str> {
    match name {
        FigureName::Parallel => vec!["macro", "halo-1-0"],
        FigureName::Circumcircle => vec!["macro", "halo-0-0", "halo-m-half", "halo-p-half", "meet"],
        FigureName::Wallis | FigureName::Triangle => vec!["macro", "halo-0-0"],
        FigureName::Legendre => vec!["macro", "halo-m1-0"],
        FigureName::LimitingRays => vec!["macro", "halo-0-0", "fan-at-a"],
    }
}
