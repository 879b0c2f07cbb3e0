//! Real Möbius transformations as isometries of the hyperbolic plane.
//!
//! Every element stores a definite determinant-one lift; `trace` always means
//! the trace of that stored lift. User-supplied generators are re-signed once
//! at ingestion so their trace is nonnegative; lifts of derived words are the
//! products of the chosen lifts and are never re-signed.

use num_complex::Complex64;

use crate::geometry::BoundaryPoint;
use crate::{Error, Result};

/// A real Möbius transformation z ↦ (az+b)/(cz+d) with ad − bc = 1, acting on
/// the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moebius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Trace classification of an isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsometryClass {
    Identity,
    Parabolic,
    Hyperbolic,
    Elliptic,
}

/// Multiplier and translation length of a hyperbolic element.
///
/// The convention K > 1 resolves the two-multiplier ambiguity: lengths come
/// from the absolute value of the logarithm, so T_X = T_{X⁻¹}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthData {
    /// Multiplier K = e^T > 1.
    pub multiplier: f64,
    /// Translation length T = 2·arccosh(|trace|/2) ≥ 0.
    pub length: f64,
}

/// Fixed-point set of a non-identity isometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPoints {
    Hyperbolic {
        attracting: BoundaryPoint,
        repelling: BoundaryPoint,
    },
    Parabolic(BoundaryPoint),
    /// Interior fixed point, in half-plane coordinates.
    Elliptic(Complex64),
}

impl Moebius {
    pub const IDENTITY: Moebius = Moebius {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds an element from matrix entries, renormalizing by √det so the
    /// stored lift has determinant one. The lift sign is preserved.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Moebius> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite()) {
            return Err(Error::NonFiniteEntries);
        }
        let det = a * d - b * c;
        // Negated form on purpose: also rejects a NaN determinant.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(det > 0.0) {
            return Err(Error::NonPositiveDeterminant(det));
        }
        let s = det.sqrt();
        Ok(Moebius {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    /// Ingestion constructor for user-supplied generators: normalizes the
    /// determinant and re-signs the lift so that trace ≥ 0 when trace ≠ 0.
    pub fn generator(a: f64, b: f64, c: f64, d: f64) -> Result<Moebius> {
        Ok(Moebius::new(a, b, c, d)?.with_nonneg_trace())
    }

    /// The lift with nonnegative trace (the element itself when trace ≥ 0).
    pub fn with_nonneg_trace(self) -> Moebius {
        if self.trace() < 0.0 {
            Moebius {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            self
        }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Matrix product; the derived lift is the product of the stored lifts.
    /// Both factors have determinant one, so the product's determinant is one
    /// up to rounding drift. The drift is renormalized away only while the
    /// computed determinant is trustworthy: at large entry magnitudes ad − bc
    /// is cancellation noise, and dividing by its square root would corrupt
    /// the lift (or produce NaN outright).
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let a = self.a * other.a + self.b * other.c;
        let b = self.a * other.b + self.b * other.d;
        let c = self.c * other.a + self.d * other.c;
        let d = self.c * other.b + self.d * other.d;
        let det = a * d - b * c;
        let magnitude = (a * d).abs() + (b * c).abs();
        if magnitude < 1e6 && det > 0.0 {
            let s = det.sqrt();
            Moebius {
                a: a / s,
                b: b / s,
                c: c / s,
                d: d / s,
            }
        } else {
            Moebius { a, b, c, d }
        }
    }

    pub fn inverse(&self) -> Moebius {
        Moebius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Integer power, with negative exponents via the inverse.
    pub fn pow(&self, n: i32) -> Moebius {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = Moebius::IDENTITY;
        for _ in 0..n.unsigned_abs() {
            acc = acc.compose(&base);
        }
        acc
    }

    /// Multiplicative commutator X·Y·X⁻¹·Y⁻¹.
    pub fn commutator(&self, other: &Moebius) -> Moebius {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    /// Action on an interior point of the half-plane.
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.b.abs() <= tol
            && self.c.abs() <= tol
            && (self.a - self.d).abs() <= tol
            && (self.trace().abs() - 2.0).abs() <= tol
    }

    /// Classification by |trace|: hyperbolic, parabolic, or elliptic according
    /// to whether |trace| is > 2, = 2, or < 2, with a tolerance band making
    /// the boundary decisions total. Identity is split off from parabolic by
    /// entry-wise comparison, since the trace alone cannot distinguish them.
    pub fn classify(&self, tol: f64) -> IsometryClass {
        let t = self.trace().abs();
        if self.is_identity(tol) {
            IsometryClass::Identity
        } else if (t - 2.0).abs() <= tol {
            IsometryClass::Parabolic
        } else if t > 2.0 {
            IsometryClass::Hyperbolic
        } else {
            IsometryClass::Elliptic
        }
    }

    /// Multiplier and translation length, via cosh(T/2) = |trace|/2.
    pub fn translation_length(&self, tol: f64) -> Result<LengthData> {
        match self.classify(tol) {
            IsometryClass::Hyperbolic => {
                let h = self.trace().abs() / 2.0;
                let length = 2.0 * (h + (h * h - 1.0).sqrt()).ln();
                Ok(LengthData {
                    multiplier: length.exp(),
                    length,
                })
            }
            class => Err(Error::NotHyperbolic(class)),
        }
    }

    /// Fixed points with attracting/repelling labels. Boundary fixed points
    /// are the real roots of c·z² + (d−a)·z − b = 0.
    pub fn fixed_points(&self, tol: f64) -> Result<FixedPoints> {
        let class = self.classify(tol);
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        match class {
            IsometryClass::Identity => Err(Error::IdentityElement),
            IsometryClass::Hyperbolic => {
                let (p, q) = if c == 0.0 {
                    (BoundaryPoint::Infinity, BoundaryPoint::Finite(b / (d - a)))
                } else {
                    let (x1, x2) = quadratic_roots(c, d - a, -b);
                    (BoundaryPoint::Finite(x1), BoundaryPoint::Finite(x2))
                };
                // Attracting iff |X'| < 1 there, i.e. (c·x + d)² > 1.
                let attracting_first = match p {
                    BoundaryPoint::Infinity => a.abs() > 1.0,
                    BoundaryPoint::Finite(x) => (c * x + d).powi(2) > 1.0,
                };
                if attracting_first {
                    Ok(FixedPoints::Hyperbolic {
                        attracting: p,
                        repelling: q,
                    })
                } else {
                    Ok(FixedPoints::Hyperbolic {
                        attracting: q,
                        repelling: p,
                    })
                }
            }
            IsometryClass::Parabolic => {
                if c == 0.0 {
                    Ok(FixedPoints::Parabolic(BoundaryPoint::Infinity))
                } else {
                    Ok(FixedPoints::Parabolic(BoundaryPoint::Finite(
                        (a - d) / (2.0 * c),
                    )))
                }
            }
            IsometryClass::Elliptic => {
                // c ≠ 0 for an elliptic: c = 0 would fix ∞ on the boundary.
                let disc = (4.0 - self.trace().powi(2)).max(0.0).sqrt();
                let re = (a - d) / (2.0 * c);
                let im = disc / (2.0 * c.abs());
                Ok(FixedPoints::Elliptic(Complex64::new(re, im)))
            }
        }
    }

    /// Conjugates into the unit-disc model. Used for rendering; the
    /// conjugation preserves traces.
    pub fn to_disc(&self) -> DiscMoebius {
        let i = Complex64::i();
        // T = (1, -i; 1, i), T⁻¹ = (i, i; -1, 1)/(2i); conjugate T·X·T⁻¹.
        let t = [
            Complex64::new(1.0, 0.0),
            -i,
            Complex64::new(1.0, 0.0),
            i,
        ];
        let tinv_scale = Complex64::new(1.0, 0.0) / (2.0 * i);
        let tinv = [i * tinv_scale, i * tinv_scale, -tinv_scale, tinv_scale];
        let x = [
            Complex64::new(self.a, 0.0),
            Complex64::new(self.b, 0.0),
            Complex64::new(self.c, 0.0),
            Complex64::new(self.d, 0.0),
        ];
        let tx = cmat_mul(&t, &x);
        let m = cmat_mul(&tx, &tinv);
        DiscMoebius {
            a: m[0],
            b: m[1],
            c: m[2],
            d: m[3],
        }
    }
}

fn cmat_mul(x: &[Complex64; 4], y: &[Complex64; 4]) -> [Complex64; 4] {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

/// Roots of p·x² + q·x + r = 0 with p ≠ 0 and positive discriminant,
/// computed in the cancellation-stable form.
fn quadratic_roots(p: f64, q: f64, r: f64) -> (f64, f64) {
    let disc = (q * q - 4.0 * p * r).max(0.0).sqrt();
    if q == 0.0 {
        let x = disc / (2.0 * p);
        return (x, -x);
    }
    let u = -0.5 * (q + q.signum() * disc);
    (u / p, r / u)
}

/// A Möbius transformation of the unit disc, the Cayley conjugate of a real
/// element. Rendering-only representation.
#[derive(Debug, Clone, Copy)]
pub struct DiscMoebius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl DiscMoebius {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }
}

/// True iff the generators share a fixed point within `tol`, measured in the
/// chordal metric of the disc model (which handles ∞ uniformly). A shared
/// fixed point makes the generated group elementary, which the algorithm
/// excludes. Identity members count as elementary.
pub fn is_elementary(x: &Moebius, y: &Moebius, tol: f64) -> bool {
    let (fx, fy) = match (x.fixed_points(tol), y.fixed_points(tol)) {
        (Ok(fx), Ok(fy)) => (fx, fy),
        _ => return true,
    };
    for p in fixed_set_disc(&fx) {
        for q in fixed_set_disc(&fy) {
            if (p - q).norm() <= tol.max(1e-12) {
                return true;
            }
        }
    }
    false
}

fn fixed_set_disc(f: &FixedPoints) -> Vec<Complex64> {
    match f {
        FixedPoints::Hyperbolic {
            attracting,
            repelling,
        } => vec![attracting.disc_point(), repelling.disc_point()],
        FixedPoints::Parabolic(p) => vec![p.disc_point()],
        FixedPoints::Elliptic(z) => vec![(z - Complex64::i()) / (z + Complex64::i())],
    }
}
