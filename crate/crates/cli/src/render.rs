//! Schematic SVG of a configuration in the disc model: the unit circle, the
//! axes of the oriented pair, the common perpendicular L, the mirror L_C,
//! and the mirror family L_{D^q} up to the computed exponent. Geodesics are
//! arcs of circles orthogonal to the unit circle; near-diameters fall back
//! to straight chords and are flagged as such.

use anyhow::{bail, Result};
use gm_core::algorithm::{self, Config};
use gm_core::geometry::{self, BoundaryPoint, Geodesic, IntersectionKind};
use gm_core::moebius::{FixedPoints, IsometryClass, Moebius};
use num_complex::Complex64;

use crate::input::PairInput;

/// Snap sub-precision magnitudes to zero so a negative zero never appears.
fn coord(x: f64) -> f64 {
    if x.abs() < 5e-10 {
        0.0
    } else {
        x
    }
}

fn fmt(x: f64) -> String {
    format!("{:.9}", coord(x))
}

/// Disc coordinates of a boundary point, in the emitted (y-down) frame.
fn disc_xy(p: BoundaryPoint) -> (f64, f64) {
    let w = p.disc_point();
    (w.re, -w.im)
}

/// One geodesic as a path element. The orthogonal circle through boundary
/// points u, v has center (u + v)/(1 + u·v); when the denominator vanishes
/// the geodesic is a diameter and a chord is drawn instead.
fn geodesic_path(g: &Geodesic, class: &str, out: &mut String) {
    let (ux, uy) = disc_xy(g.start);
    let (vx, vy) = disc_xy(g.end);
    // Near-diameters produce enormous radii whose printed precision cannot
    // sustain the orthogonality relation; fall back to a chord there (the
    // deviation from the true geodesic is below half a percent of the view).
    let denom = 1.0 + (ux * vx + uy * vy);
    if denom.abs() < 1e-2 {
        out.push_str(&format!(
            "  <path class=\"{class}\" data-degenerate=\"chord\" d=\"M {} {} L {} {}\"/>\n",
            fmt(ux),
            fmt(uy),
            fmt(vx),
            fmt(vy)
        ));
        return;
    }
    let cx = (ux + vx) / denom;
    let cy = (uy + vy) / denom;
    let r = ((cx - ux).powi(2) + (cy - uy).powi(2)).sqrt();
    let a1 = (uy - cy).atan2(ux - cx);
    let a2 = (vy - cy).atan2(vx - cx);
    let mut delta = a2 - a1;
    while delta > std::f64::consts::PI {
        delta -= std::f64::consts::TAU;
    }
    while delta <= -std::f64::consts::PI {
        delta += std::f64::consts::TAU;
    }
    let sweep = if delta > 0.0 { 1 } else { 0 };
    out.push_str(&format!(
        "  <path class=\"{class}\" d=\"M {} {} A {} {} 0 0 {sweep} {} {}\"/>\n",
        fmt(ux),
        fmt(uy),
        fmt(r),
        fmt(r),
        fmt(vx),
        fmt(vy)
    ));
}

fn mark(x: f64, y: f64, class: &str, out: &mut String) {
    out.push_str(&format!(
        "  <circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"0.015\"/>\n",
        fmt(x),
        fmt(y)
    ));
}

/// Half-plane intersection point of two geodesics, if any, then mapped to
/// the emitted disc frame. Used to mark perpendicular feet.
fn foot(g1: &Geodesic, g2: &Geodesic) -> Option<(f64, f64)> {
    let z = uhp_intersection(g1, g2)?;
    let w = (z - Complex64::i()) / (z + Complex64::i());
    Some((w.re, -w.im))
}

enum UhpShape {
    Vertical(f64),
    Semicircle { m: f64, r: f64 },
}

fn shape(g: &Geodesic) -> Option<UhpShape> {
    match (g.start, g.end) {
        (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => Some(UhpShape::Semicircle {
            m: 0.5 * (p + q),
            r: 0.5 * (q - p).abs(),
        }),
        (BoundaryPoint::Finite(p), BoundaryPoint::Infinity)
        | (BoundaryPoint::Infinity, BoundaryPoint::Finite(p)) => Some(UhpShape::Vertical(p)),
        _ => None,
    }
}

fn uhp_intersection(g1: &Geodesic, g2: &Geodesic) -> Option<Complex64> {
    let (s1, s2) = (shape(g1)?, shape(g2)?);
    let (x, y2) = match (s1, s2) {
        (UhpShape::Vertical(_), UhpShape::Vertical(_)) => return None,
        (UhpShape::Vertical(v), UhpShape::Semicircle { m, r })
        | (UhpShape::Semicircle { m, r }, UhpShape::Vertical(v)) => {
            (v, r * r - (v - m) * (v - m))
        }
        (
            UhpShape::Semicircle { m: m1, r: r1 },
            UhpShape::Semicircle { m: m2, r: r2 },
        ) => {
            if m1 == m2 {
                return None;
            }
            let x = (r1 * r1 - r2 * r2 - m1 * m1 + m2 * m2) / (2.0 * (m2 - m1));
            (x, r1 * r1 - (x - m1) * (x - m1))
        }
    };
    if y2 <= 0.0 {
        return None;
    }
    Some(Complex64::new(x, y2.sqrt()))
}

struct Scene {
    axis_c: Geodesic,
    axis_d: Option<Geodesic>,
    perp_l: Option<Geodesic>,
    mirror_c: Option<Geodesic>,
    mirror_family: Vec<Geodesic>,
    parabolic_point: Option<BoundaryPoint>,
}

fn hh_scene(a: &Moebius, b: &Moebius, cfg: &Config) -> Result<Scene> {
    let tol = cfg.tolerance;
    let ax_a = geometry::axis(a, tol)?;
    let ax_b = geometry::axis(b, tol)?;
    match geometry::intersection_kind(&ax_a, &ax_b, tol) {
        IntersectionKind::SharedEnd => bail!("generators share a fixed point; nothing to render"),
        IntersectionKind::Interior => Ok(Scene {
            axis_c: ax_a,
            axis_d: Some(ax_b),
            perp_l: None,
            mirror_c: None,
            mirror_family: Vec::new(),
            parabolic_point: None,
        }),
        IntersectionKind::Disjoint => {
            let pair = algorithm::coherently_orient(a, b, tol)?;
            let ax_c = geometry::axis(&pair.c, tol)?;
            let ax_d = geometry::axis(&pair.d, tol)?;
            let l = geometry::common_perpendicular(&ax_c, &ax_d, tol)?;
            let mirror_c = geometry::reflection_factor(&pair.c, &l, tol).ok();
            let n = algorithm::step_count_hh(&pair.c, &pair.d, cfg)
                .map(|(n, _)| n)
                .unwrap_or(0);
            let family = geometry::perpendicular_family(&pair.d, &l, n.min(64) as u32, tol)
                .unwrap_or_default();
            Ok(Scene {
                axis_c: ax_c,
                axis_d: Some(ax_d),
                perp_l: Some(l),
                mirror_c,
                mirror_family: family,
                parabolic_point: None,
            })
        }
    }
}

fn hp_scene(h: &Moebius, p: &Moebius, cfg: &Config) -> Result<Scene> {
    let tol = cfg.tolerance;
    let ax_c = geometry::axis(h, tol)?;
    let FixedPoints::Parabolic(pt) = p.fixed_points(tol)? else {
        bail!("expected a parabolic generator");
    };
    let l = geometry::perpendicular_from_boundary(pt, &ax_c)?;
    let mirror_c = geometry::reflection_factor(h, &l, tol).ok();
    let n = algorithm::step_count_hp(h, p, cfg).unwrap_or(0);
    let family = geometry::perpendicular_family(p, &l, n.min(64) as u32, tol).unwrap_or_default();
    Ok(Scene {
        axis_c: ax_c,
        axis_d: None,
        perp_l: Some(l),
        mirror_c,
        mirror_family: family,
        parabolic_point: Some(pt),
    })
}

pub fn render(input: &PairInput, cfg: &Config) -> Result<String> {
    let tol = cfg.tolerance;
    let (ka, kb) = (input.a.classify(tol), input.b.classify(tol));
    use IsometryClass::*;
    let scene = match (ka, kb) {
        (Hyperbolic, Hyperbolic) => hh_scene(&input.a, &input.b, cfg)?,
        (Hyperbolic, Parabolic) => hp_scene(&input.a, &input.b, cfg)?,
        (Parabolic, Hyperbolic) => hp_scene(&input.b, &input.a, cfg)?,
        _ => bail!("rendering requires a hyperbolic-hyperbolic or hyperbolic-parabolic pair"),
    };
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"-1.1 -1.1 2.2 2.2\">\n",
    );
    out.push_str(
        "  <style>path{fill:none;stroke-width:0.008}.unit{stroke:#000}\
         .axis-c{stroke:#c0392b}.axis-d{stroke:#e67e22}.perp-l{stroke:#2c3e50}\
         .mirror-c{stroke:#27ae60}.mirror-d{stroke:#2980b9}\
         circle.foot{fill:#2c3e50}circle.cusp{fill:#8e44ad}</style>\n",
    );
    out.push_str(
        "  <circle class=\"unit\" cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" \
         stroke-width=\"0.008\"/>\n",
    );
    geodesic_path(&scene.axis_c, "axis-c", &mut out);
    if let Some(ax_d) = &scene.axis_d {
        geodesic_path(ax_d, "axis-d", &mut out);
    }
    if let Some(l) = &scene.perp_l {
        geodesic_path(l, "perp-l", &mut out);
        if let Some((x, y)) = foot(l, &scene.axis_c) {
            mark(x, y, "foot", &mut out);
        }
        if let Some(ax_d) = &scene.axis_d {
            if let Some((x, y)) = foot(l, ax_d) {
                mark(x, y, "foot", &mut out);
            }
        }
    }
    if let Some(m) = &scene.mirror_c {
        geodesic_path(m, "mirror-c", &mut out);
    }
    for m in &scene.mirror_family {
        geodesic_path(m, "mirror-d", &mut out);
    }
    if let Some(pt) = scene.parabolic_point {
        let (x, y) = disc_xy(pt);
        mark(x, y, "cusp", &mut out);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
