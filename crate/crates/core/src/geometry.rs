//! Geodesics, common perpendiculars, reflection factorizations, and the
//! separation/side predicates the barebones algorithm reads configurations
//! from.
//!
//! Computations live in the upper half-plane; predicates on boundary points
//! go through the one-point-compactified boundary coordinate (the disc-model
//! unit circle under the Cayley map), so geodesics through ∞ need no special
//! cases.

use num_complex::Complex64;

use crate::moebius::{FixedPoints, Moebius};
use crate::{Error, Result};

/// A point of the boundary circle, in half-plane coordinates ℝ ∪ {∞}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    /// Image on the unit circle under the Cayley map x ↦ (x−i)/(x+i),
    /// with ∞ ↦ 1. Computed in an overflow-safe form.
    pub fn disc_point(self) -> Complex64 {
        match self {
            BoundaryPoint::Infinity => Complex64::new(1.0, 0.0),
            BoundaryPoint::Finite(x) => {
                if x.abs() <= 1.0 {
                    let den = x * x + 1.0;
                    Complex64::new((x * x - 1.0) / den, -2.0 * x / den)
                } else {
                    let r = 1.0 / x;
                    let den = 1.0 + r * r;
                    Complex64::new((1.0 - r * r) / den, -2.0 * r / den)
                }
            }
        }
    }

    /// Angle of the disc-model image, in (−π, π].
    pub fn disc_angle(self) -> f64 {
        self.disc_point().arg()
    }

    /// Chordal distance on the boundary circle of the disc model.
    pub fn chordal(self, other: BoundaryPoint) -> f64 {
        (self.disc_point() - other.disc_point()).norm()
    }

    /// Projective action of a Möbius element on the boundary.
    pub fn apply(self, m: &Moebius) -> BoundaryPoint {
        let (num, den) = match self {
            BoundaryPoint::Finite(x) => (m.a * x + m.b, m.c * x + m.d),
            BoundaryPoint::Infinity => (m.a, m.c),
        };
        if den == 0.0 {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(num / den)
        }
    }
}

/// An oriented complete geodesic, given by its two boundary ends. The
/// positive direction runs from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
}

impl Geodesic {
    pub fn new(start: BoundaryPoint, end: BoundaryPoint) -> Result<Geodesic> {
        if start.chordal(end) <= 1e-12 {
            return Err(Error::DegenerateGeodesic);
        }
        Ok(Geodesic { start, end })
    }

    pub fn reversed(self) -> Geodesic {
        Geodesic {
            start: self.end,
            end: self.start,
        }
    }

    /// Image geodesic under a Möbius element (orientation is preserved).
    pub fn transport(self, m: &Moebius) -> Geodesic {
        Geodesic {
            start: self.start.apply(m),
            end: self.end.apply(m),
        }
    }
}

/// How two geodesics meet: not at all, inside the plane, or at a common end
/// on the boundary (within the tolerance band — the tangent configuration is
/// the parabolic boundary case and must branch deterministically).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntersectionKind {
    Disjoint,
    Interior,
    SharedEnd,
}

/// Side of an oriented geodesic, under the counterclockwise boundary
/// orientation of the disc model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Signed side of boundary point `p` relative to the disc chord from `u1` to
/// `u2`: positive on the left of the oriented chord.
fn chord_side(u1: Complex64, u2: Complex64, p: Complex64) -> f64 {
    let d = u2 - u1;
    let v = p - u1;
    d.re * v.im - d.im * v.re
}

pub fn intersection_kind(g1: &Geodesic, g2: &Geodesic, tol: f64) -> IntersectionKind {
    let ends1 = [g1.start, g1.end];
    let ends2 = [g2.start, g2.end];
    for p in ends1 {
        for q in ends2 {
            if p.chordal(q) < tol {
                return IntersectionKind::SharedEnd;
            }
        }
    }
    let u1 = g1.start.disc_point();
    let u2 = g1.end.disc_point();
    let s1 = chord_side(u1, u2, g2.start.disc_point());
    let s2 = chord_side(u1, u2, g2.end.disc_point());
    if s1 * s2 < 0.0 {
        IntersectionKind::Interior
    } else {
        IntersectionKind::Disjoint
    }
}

/// True iff the ends of `g1` and the ends of `g2` lie in different components
/// of the boundary circle cut by the ends of `m`.
pub fn separates(m: &Geodesic, g1: &Geodesic, g2: &Geodesic, tol: f64) -> Result<bool> {
    for g in [g1, g2] {
        let kind = intersection_kind(m, g, tol);
        if kind != IntersectionKind::Disjoint {
            return Err(Error::NotDisjoint(kind));
        }
    }
    let u1 = m.start.disc_point();
    let u2 = m.end.disc_point();
    let s1 = chord_side(u1, u2, g1.start.disc_point());
    let s2 = chord_side(u1, u2, g2.start.disc_point());
    Ok(s1 * s2 < 0.0)
}

/// Side of the oriented geodesic `l` on which the attracting fixed point of
/// the hyperbolic element `x` lies.
pub fn attracting_side(l: &Geodesic, x: &Moebius, tol: f64) -> Result<Side> {
    let fp = x.fixed_points(tol)?;
    let attracting = match fp {
        FixedPoints::Hyperbolic { attracting, .. } => attracting,
        _ => return Err(Error::NotHyperbolic(x.classify(tol))),
    };
    if attracting.chordal(l.start) < tol || attracting.chordal(l.end) < tol {
        return Err(Error::DegenerateSide);
    }
    let s = chord_side(
        l.start.disc_point(),
        l.end.disc_point(),
        attracting.disc_point(),
    );
    Ok(if s > 0.0 { Side::Left } else { Side::Right })
}

/// The invariant geodesic of a hyperbolic element, oriented from the
/// repelling end toward the attracting end.
pub fn axis(x: &Moebius, tol: f64) -> Result<Geodesic> {
    match x.fixed_points(tol)? {
        FixedPoints::Hyperbolic {
            attracting,
            repelling,
        } => Geodesic::new(repelling, attracting),
        _ => Err(Error::NotHyperbolic(x.classify(tol))),
    }
}

/// Reflection in a geodesic: the anti-Möbius involution z ↦ (a·z̄+b)/(c·z̄+d)
/// fixing the mirror pointwise. The stored matrix has determinant −1, so the
/// composite of two reflections is a determinant-one Möbius element.
#[derive(Debug, Clone, Copy)]
pub struct Reflection {
    mirror: Geodesic,
    m: [f64; 4],
}

impl Reflection {
    pub fn in_geodesic(g: &Geodesic) -> Reflection {
        let m = match (g.start, g.end) {
            (BoundaryPoint::Finite(p), BoundaryPoint::Finite(q)) => {
                let center = 0.5 * (p + q);
                let r = 0.5 * (q - p).abs();
                [
                    center / r,
                    (r * r - center * center) / r,
                    1.0 / r,
                    -center / r,
                ]
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(x))
            | (BoundaryPoint::Finite(x), BoundaryPoint::Infinity) => [-1.0, 2.0 * x, 0.0, 1.0],
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => unreachable!(),
        };
        Reflection { mirror: *g, m }
    }

    pub fn mirror(&self) -> &Geodesic {
        &self.mirror
    }

    pub fn matrix(&self) -> [f64; 4] {
        self.m
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        let w = z.conj();
        (self.m[0] * w + self.m[1]) / (self.m[2] * w + self.m[3])
    }

    pub fn apply_boundary(&self, p: BoundaryPoint) -> BoundaryPoint {
        // Real boundary points are fixed by conjugation, so the anti-map acts
        // on the boundary like the Möbius map of its matrix.
        let (num, den) = match p {
            BoundaryPoint::Finite(x) => (self.m[0] * x + self.m[1], self.m[2] * x + self.m[3]),
            BoundaryPoint::Infinity => (self.m[0], self.m[2]),
        };
        if den == 0.0 {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(num / den)
        }
    }
}

/// The Möbius element `second ∘ first` (reflect in `first`, then in
/// `second`). For disjoint mirrors this is hyperbolic, translating along the
/// common perpendicular by twice the distance between the mirrors.
pub fn compose_reflections(first: &Reflection, second: &Reflection) -> Result<Moebius> {
    let x = second.m;
    let y = first.m;
    Moebius::new(
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )
}

/// The unique common perpendicular of two disjoint geodesics, oriented so the
/// positive direction runs from `g1` toward `g2`.
pub fn common_perpendicular(g1: &Geodesic, g2: &Geodesic, tol: f64) -> Result<Geodesic> {
    let kind = intersection_kind(g1, g2, tol);
    if kind != IntersectionKind::Disjoint {
        return Err(Error::NotDisjoint(kind));
    }
    // Reflecting first in g1 then in g2 translates from g1 toward g2 along
    // the perpendicular, so the axis orientation (repelling → attracting)
    // meets g1 before g2.
    let p = compose_reflections(&Reflection::in_geodesic(g1), &Reflection::in_geodesic(g2))?;
    axis(&p, tol)
}

/// Hyperbolic distance between two disjoint geodesics, along the common
/// perpendicular: half the translation length of the reflection composite.
pub fn geodesic_distance(g1: &Geodesic, g2: &Geodesic, tol: f64) -> Result<f64> {
    let kind = intersection_kind(g1, g2, tol);
    if kind != IntersectionKind::Disjoint {
        return Err(Error::NotDisjoint(kind));
    }
    let p = compose_reflections(&Reflection::in_geodesic(g1), &Reflection::in_geodesic(g2))?;
    Ok(p.translation_length(tol)?.length / 2.0)
}

/// The geodesic L_X with X = H_L ∘ H_{L_X}. Requires L perpendicular to the
/// axis of a hyperbolic X (L_X then sits at distance T_X/2 from L along the
/// axis, on the repelling side) or L through the fixed point of a parabolic X.
pub fn reflection_factor(x: &Moebius, l: &Geodesic, _tol: f64) -> Result<Geodesic> {
    let rl = Reflection::in_geodesic(l);
    let y = rl.m;
    // H_L ∘ X as an anti-map has matrix M_L · X; it is a reflection exactly
    // when its trace vanishes, which encodes the perpendicularity
    // precondition.
    let m = [
        y[0] * x.a + y[1] * x.c,
        y[0] * x.b + y[1] * x.d,
        y[2] * x.a + y[3] * x.c,
        y[2] * x.b + y[3] * x.d,
    ];
    let scale = m.iter().map(|e| e.abs()).sum::<f64>();
    if (m[0] + m[3]).abs() > 1e-7 * (1.0 + scale) {
        return Err(Error::NotPerpendicular);
    }
    mirror_of_involution(&m)
}

/// Fixed geodesic of an anti-Möbius involution with matrix `m` (trace ≈ 0,
/// determinant −1): ends solve c·x² + (d−a)·x − b = 0 on the boundary.
fn mirror_of_involution(m: &[f64; 4]) -> Result<Geodesic> {
    let (a, b, c, d) = (m[0], m[1], m[2], m[3]);
    if c == 0.0 {
        if a - d == 0.0 {
            return Err(Error::DegenerateGeodesic);
        }
        return Geodesic::new(BoundaryPoint::Infinity, BoundaryPoint::Finite(b / (d - a)));
    }
    let q = d - a;
    let disc = (q * q + 4.0 * c * b).max(0.0).sqrt();
    let (x1, x2) = if q == 0.0 {
        (disc / (2.0 * c), -disc / (2.0 * c))
    } else {
        let u = -0.5 * (q + q.signum() * disc);
        (u / c, -b / u)
    };
    Geodesic::new(BoundaryPoint::Finite(x1), BoundaryPoint::Finite(x2))
}

/// The successive perpendiculars [L_{X¹}, …, L_{X^q_max}] with
/// H_L ∘ H_{L_{X^q}} = X^q, each a distance T_X/2 beyond the previous one
/// along the axis of X.
pub fn perpendicular_family(
    x: &Moebius,
    l: &Geodesic,
    q_max: u32,
    tol: f64,
) -> Result<Vec<Geodesic>> {
    let mut out = Vec::with_capacity(q_max as usize);
    let mut power = Moebius::IDENTITY;
    for _ in 0..q_max {
        power = power.compose(x);
        out.push(reflection_factor(&power, l, tol)?);
    }
    Ok(out)
}

/// The unique geodesic through the boundary point `p` perpendicular to `g`:
/// its other end is the reflection of `p` across `g`.
pub fn perpendicular_from_boundary(p: BoundaryPoint, g: &Geodesic) -> Result<Geodesic> {
    let q = Reflection::in_geodesic(g).apply_boundary(p);
    Geodesic::new(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOLERANCE as TOL;
    use approx::assert_relative_eq;

    fn m(a: f64, b: f64, c: f64, d: f64) -> Moebius {
        Moebius::new(a, b, c, d).unwrap()
    }

    fn fin(x: f64) -> BoundaryPoint {
        BoundaryPoint::Finite(x)
    }

    fn geo(p: f64, q: f64) -> Geodesic {
        Geodesic::new(fin(p), fin(q)).unwrap()
    }

    #[test]
    fn axis_of_diagonal_is_imaginary_axis() {
        let x = m(2.0, 0.0, 0.0, 0.5);
        let ax = axis(&x, TOL).unwrap();
        assert_eq!(ax.start, fin(0.0));
        assert_eq!(ax.end, BoundaryPoint::Infinity);
        let p = m(1.0, 1.0, 0.0, 1.0);
        assert!(axis(&p, TOL).is_err());
    }

    #[test]
    fn axis_transports_under_conjugation() {
        let x = m(2.0, 0.0, 0.0, 0.5);
        let s = m(1.0, 3.0, 0.25, 2.0);
        let y = s.compose(&x).compose(&s.inverse());
        let ax_y = axis(&y, TOL).unwrap();
        let moved = axis(&x, TOL).unwrap().transport(&s);
        assert!(ax_y.start.chordal(moved.start) < 1e-9);
        assert!(ax_y.end.chordal(moved.end) < 1e-9);
    }

    #[test]
    fn intersection_kinds() {
        let imag_axis = Geodesic::new(fin(0.0), BoundaryPoint::Infinity).unwrap();
        assert_eq!(
            intersection_kind(&imag_axis, &geo(-1.0, 1.0), TOL),
            IntersectionKind::Interior
        );
        assert_eq!(
            intersection_kind(&imag_axis, &geo(0.0, 1.0), TOL),
            IntersectionKind::SharedEnd
        );
        assert_eq!(
            intersection_kind(&geo(0.0, 1.0), &geo(2.0, 3.0), TOL),
            IntersectionKind::Disjoint
        );
    }

    #[test]
    fn separation_by_interval_nesting() {
        // (−1, 1) encloses (0, 0.5) and excludes (3, 4): separated.
        assert!(separates(&geo(-1.0, 1.0), &geo(0.0, 0.5), &geo(3.0, 4.0), TOL).unwrap());
        // (1, 2) leaves both on the outside: not separated.
        assert!(!separates(&geo(1.0, 2.0), &geo(0.0, 0.5), &geo(3.0, 4.0), TOL).unwrap());
        // A geodesic crossing the would-be separator is rejected.
        assert!(separates(&geo(1.0, 2.0), &geo(0.0, 0.5), &geo(1.5, 3.0), TOL).is_err());
    }

    #[test]
    fn attracting_side_convention() {
        // L = imaginary axis oriented 0 → ∞; attracting point −3 is Left.
        let l = Geodesic::new(fin(0.0), BoundaryPoint::Infinity).unwrap();
        let x = m(1.0, -3.0, 1.0, -2.0); // trace < 0, hyperbolic, check below
        // Build instead a hyperbolic with attracting −3, repelling 5.
        let y = conj_diagonal(5.0, -3.0, 2.0);
        assert_eq!(attracting_side(&l, &y, TOL).unwrap(), Side::Left);
        assert_eq!(attracting_side(&l.reversed(), &y, TOL).unwrap(), Side::Right);
        // Fixed point coinciding with an end of L is degenerate.
        let d = m(2.0, 0.0, 0.0, 0.5);
        assert!(matches!(attracting_side(&l, &d, TOL), Err(Error::DegenerateSide)));
        let _ = x;
    }

    /// Hyperbolic with repelling p, attracting q, translation length t.
    fn conj_diagonal(p: f64, q: f64, t: f64) -> Moebius {
        let lam = (t / 2.0).exp();
        // S maps 0 ↦ p, ∞ ↦ q; S diag(1/λ, λ) S⁻¹ attracts to q.
        let s = [q, p, 1.0, 1.0];
        let diag = [lam, 0.0, 0.0, 1.0 / lam];
        let det = s[0] * s[3] - s[1] * s[2];
        let sinv = [s[3] / det, -s[1] / det, -s[2] / det, s[0] / det];
        let sd = [
            s[0] * diag[0] + s[1] * diag[2],
            s[0] * diag[1] + s[1] * diag[3],
            s[2] * diag[0] + s[3] * diag[2],
            s[2] * diag[1] + s[3] * diag[3],
        ];
        Moebius::new(
            sd[0] * sinv[0] + sd[1] * sinv[2],
            sd[0] * sinv[1] + sd[1] * sinv[3],
            sd[2] * sinv[0] + sd[3] * sinv[2],
            sd[2] * sinv[1] + sd[3] * sinv[3],
        )
        .unwrap()
    }

    #[test]
    fn reflection_is_involution() {
        let g = geo(-2.0, 3.0);
        let r = Reflection::in_geodesic(&g);
        for z in [
            Complex64::new(0.3, 1.2),
            Complex64::new(-1.0, 0.4),
            Complex64::new(4.0, 2.5),
        ] {
            let back = r.apply(r.apply(z));
            assert!((back - z).norm() < 1e-12);
            // Reflections preserve the half-plane.
            assert!(r.apply(z).im > 0.0);
        }
    }

    #[test]
    fn common_perpendicular_of_symmetric_semicircles() {
        // Semicircles (−2,−1) and (1,2) are symmetric about the imaginary
        // axis; the perpendicular is their mutual orthogonal semicircle
        // through ±√2 (|z|² = 2 meets |z+1.5|²=0.25-style circles at right
        // angles by the power-of-a-point relation).
        let g1 = geo(-2.0, -1.0);
        let g2 = geo(1.0, 2.0);
        let l = common_perpendicular(&g1, &g2, TOL).unwrap();
        let ends = [l.start, l.end];
        let mut vals: Vec<f64> = ends
            .iter()
            .map(|e| match e {
                BoundaryPoint::Finite(x) => *x,
                BoundaryPoint::Infinity => f64::INFINITY,
            })
            .collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_relative_eq!(vals[0], -2.0_f64.sqrt(), epsilon = 1e-9);
        assert_relative_eq!(vals[1], 2.0_f64.sqrt(), epsilon = 1e-9);
        // Errors on crossing inputs.
        assert!(matches!(
            common_perpendicular(&geo(-1.0, 1.0), &geo(0.0, 2.0), TOL),
            Err(Error::NotDisjoint(IntersectionKind::Interior))
        ));
    }

    #[test]
    fn common_perpendicular_orientation_from_first_to_second() {
        // Concentric semicircles radius 1 and 4: perpendicular is the
        // imaginary axis, oriented from the first toward the second.
        let unit = geo(-1.0, 1.0);
        let big = geo(-4.0, 4.0);
        let l = common_perpendicular(&unit, &big, TOL).unwrap();
        // From |z|=1 toward |z|=4 means toward ∞.
        assert_eq!(l.end, BoundaryPoint::Infinity);
        let l2 = common_perpendicular(&big, &unit, TOL).unwrap();
        assert_eq!(l2.end, fin(0.0));
    }

    #[test]
    fn distance_between_concentric_semicircles() {
        // d(|z|=1, |z|=R) = ln R along the imaginary axis.
        for r in [2.0, 5.0, 17.0] {
            let d = geodesic_distance(&geo(-1.0, 1.0), &geo(-r, r), TOL).unwrap();
            assert_relative_eq!(d, r.ln(), epsilon = 1e-9);
            let d2 = geodesic_distance(&geo(-r, r), &geo(-1.0, 1.0), TOL).unwrap();
            assert_relative_eq!(d, d2, epsilon = 1e-12);
        }
        assert!(geodesic_distance(&geo(-1.0, 1.0), &geo(0.0, 2.0), TOL).is_err());
    }

    #[test]
    fn reflection_factor_of_diagonal() {
        // X = z ↦ 4z, L = unit semicircle. H_{L_X} must satisfy
        // H_L ∘ H_{L_X} = X, which puts L_X at radius 1/2 (distance
        // T_X/2 = ln 2 from L, on the repelling side).
        let x = m(2.0, 0.0, 0.0, 0.5);
        let l = geo(-1.0, 1.0);
        let lx = reflection_factor(&x, &l, TOL).unwrap();
        let r = Reflection::in_geodesic(&l);
        let rx = Reflection::in_geodesic(&lx);
        for z in [
            Complex64::new(0.2, 0.7),
            Complex64::new(-1.3, 0.5),
            Complex64::new(2.0, 3.0),
        ] {
            let composite = r.apply(rx.apply(z));
            assert!((composite - x.apply(z)).norm() < 1e-9);
        }
        // Not perpendicular: a geodesic missing the axis entirely.
        assert!(matches!(
            reflection_factor(&x, &geo(1.0, 2.0), TOL),
            Err(Error::NotPerpendicular)
        ));
    }

    #[test]
    fn perpendicular_family_spacing_and_separation() {
        let x = m(2.0, 0.0, 0.0, 0.5);
        let l = geo(-1.0, 1.0);
        let fam = perpendicular_family(&x, &l, 3, TOL).unwrap();
        assert_eq!(fam.len(), 3);
        // Composites equal the powers on sample points.
        let r = Reflection::in_geodesic(&l);
        for (q, lq) in fam.iter().enumerate() {
            let rq = Reflection::in_geodesic(lq);
            let xq = x.pow(q as i32 + 1);
            for z in [Complex64::new(0.1, 1.0), Complex64::new(-0.7, 2.2)] {
                assert!((r.apply(rq.apply(z)) - xq.apply(z)).norm() < 1e-8);
            }
        }
        // Feet equally spaced at T/2 along the axis.
        let half = x.translation_length(TOL).unwrap().length / 2.0;
        assert_relative_eq!(geodesic_distance(&l, &fam[0], TOL).unwrap(), half, epsilon = 1e-9);
        assert_relative_eq!(
            geodesic_distance(&fam[0], &fam[1], TOL).unwrap(),
            half,
            epsilon = 1e-9
        );
        // Separation chain: L_{X^q} separates L and L_{X^{q+1}}.
        assert!(separates(&fam[0], &l, &fam[1], TOL).unwrap());
        assert!(separates(&fam[1], &fam[0], &fam[2], TOL).unwrap());
        // Singleton equals reflection_factor output.
        let single = perpendicular_family(&x, &l, 1, TOL).unwrap();
        assert_eq!(single[0], reflection_factor(&x, &l, TOL).unwrap());
    }

    #[test]
    fn perpendicular_from_boundary_point() {
        let g = geo(-1.0, 1.0);
        let p = fin(3.0);
        let perp = perpendicular_from_boundary(p, &g).unwrap();
        // Meets g at a right angle: composing the two reflections gives a
        // half-turn (elliptic of trace 0).
        let comp = compose_reflections(
            &Reflection::in_geodesic(&g),
            &Reflection::in_geodesic(&perp),
        )
        .unwrap();
        assert!(comp.trace().abs() < 1e-9);
    }

    #[test]
    fn separates_invariant_under_transport() {
        let mid = geo(1.0, 2.0);
        let g1 = geo(0.0, 0.5);
        let g2 = geo(3.0, 4.0);
        let s = m(1.0, 2.0, 0.5, 3.0);
        let before = separates(&mid, &g1, &g2, TOL).unwrap();
        let after = separates(
            &mid.transport(&s),
            &g1.transport(&s),
            &g2.transport(&s),
            TOL,
        )
        .unwrap();
        assert_eq!(before, after);
    }

    #[test]
    fn disc_model_symmetric_configuration() {
        // Disc-model geodesics with ends e^{±iα} and −e^{∓iα} are symmetric
        // about the real diameter, so that diameter is the perpendicular.
        // Transport to the half-plane: the real diameter of the disc is the
        // image of the imaginary axis (0 ↔ −1, ∞ ↔ 1).
        let alpha: f64 = 0.7;
        // Boundary angles θ map back to half-plane x with cayley(x) = e^{iθ}.
        let x_of = |theta: f64| {
            // (x−i)/(x+i) = w  ⇒  x = i(1+w)/(1−w)
            let w = Complex64::from_polar(1.0, theta);
            let z = Complex64::i() * (1.0 + w) / (1.0 - w);
            z.re
        };
        let g1 = geo(x_of(alpha), x_of(-alpha));
        let g2 = geo(x_of(std::f64::consts::PI - alpha), x_of(alpha - std::f64::consts::PI));
        let l = common_perpendicular(&g1, &g2, TOL).unwrap();
        // l should be the imaginary axis (ends 0 and ∞).
        let mut ends = [l.start.disc_point(), l.end.disc_point()];
        ends.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((ends[0] - Complex64::new(-1.0, 0.0)).norm() < 1e-9);
        assert!((ends[1] - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }
}
