//! Exact arithmetic and geometry of PSL2(R) elements.
//!
//! A `MoebiusTransform` is a real 2x2 matrix of determinant one, taken
//! modulo sign and stored with a canonical sign choice so that `g` and
//! `-g` compare equal. The boundary circle R^ = R u {inf} carries the
//! extended fractional-linear action
//!
//! ```text
//!        | inf              if z = inf, c = 0,  or  cz + d = 0
//! g.z =  | a/c              if z = inf, c != 0
//!        | (az + b)/(cz+d)  otherwise
//! ```
//!
//! Intervals are positively-oriented arcs of R^ (the sweep from `lo` to
//! `hi` in the direction of increasing reals, wrapping through inf), so
//! Moebius maps send arcs to arcs with endpoints mapped exactly. Disks
//! are closed Euclidean disks in the finite chart; their Moebius images
//! are computed by the exact circle-image formulas.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const SIGN_EPS: f64 = 1e-12;
const DET_TOL: f64 = 1e-12;
/// Default tolerance for |tr| - 2 when deciding parabolicity.
pub const PARABOLIC_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum MoebiusError {
    #[error("matrix determinant {0} is not positive; not an element of PSL2(R)")]
    NonPositiveDeterminant(f64),
    #[error("norm undefined: element is not hyperbolic (trace {0})")]
    NormUndefined(f64),
    #[error("element is not parabolic (trace {0})")]
    NotParabolic(f64),
    #[error("identity has no fixed points")]
    IdentityFixedPoints,
    #[error("image unbounded: pole {pole} lies inside or on the disk")]
    ImageUnbounded { pole: f64 },
    #[error("point not in the upper half-plane (im = {0})")]
    NotInUpperHalfPlane(f64),
    #[error("parabolic element has no real (c,d) parameters in this orientation")]
    ParabolicOrientation,
}

/// An element of PSL2(R), stored as a canonically signed unit-determinant
/// matrix [[a, b], [c, d]].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusTransform {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoebiusClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl MoebiusTransform {
    /// Normalizes the determinant to 1 and picks the canonical sign
    /// (first entry of (a, b, c, d) larger than 1e-12 in modulus is
    /// made positive).
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, MoebiusError> {
        let det = a * d - b * c;
        if det <= 0.0 || !det.is_finite() {
            return Err(MoebiusError::NonPositiveDeterminant(det));
        }
        let s = det.sqrt();
        let mut g = MoebiusTransform {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        };
        g.canonicalize();
        Ok(g)
    }

    pub fn identity() -> Self {
        MoebiusTransform {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    fn canonicalize(&mut self) {
        for v in [self.a, self.b, self.c, self.d] {
            if v.abs() > SIGN_EPS {
                if v < 0.0 {
                    self.a = -self.a;
                    self.b = -self.b;
                    self.c = -self.c;
                    self.d = -self.d;
                }
                break;
            }
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Trace of the canonical representative. Only |trace| is an
    /// invariant of the PSL2(R) element.
    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn compose(&self, other: &MoebiusTransform) -> MoebiusTransform {
        let mut g = MoebiusTransform {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        };
        // renormalize drift from repeated products
        let det = g.det();
        if (det - 1.0).abs() > DET_TOL {
            let s = det.sqrt();
            g.a /= s;
            g.b /= s;
            g.c /= s;
            g.d /= s;
        }
        g.canonicalize();
        g
    }

    pub fn inverse(&self) -> MoebiusTransform {
        let mut g = MoebiusTransform {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        };
        g.canonicalize();
        g
    }

    pub fn approx_eq(&self, other: &MoebiusTransform, tol: f64) -> bool {
        (self.a - other.a).abs() <= tol
            && (self.b - other.b).abs() <= tol
            && (self.c - other.c).abs() <= tol
            && (self.d - other.d).abs() <= tol
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&MoebiusTransform::identity(), tol)
    }

    pub fn classify(&self) -> MoebiusClass {
        self.classify_with_tol(PARABOLIC_TOL)
    }

    pub fn classify_with_tol(&self, parabolic_tol: f64) -> MoebiusClass {
        if self.is_identity(parabolic_tol) {
            return MoebiusClass::Identity;
        }
        let t = self.trace().abs();
        if (t - 2.0).abs() <= parabolic_tol {
            MoebiusClass::Parabolic
        } else if t < 2.0 {
            MoebiusClass::Elliptic
        } else {
            MoebiusClass::Hyperbolic
        }
    }

    /// Norm N(h) = lambda_max^2 and geodesic length l(h) = log N(h) of a
    /// hyperbolic element; the convention makes l equal the translation
    /// length inf_z d(z, h.z).
    pub fn norm_and_length(&self) -> Result<(f64, f64), MoebiusError> {
        if self.classify() != MoebiusClass::Hyperbolic {
            return Err(MoebiusError::NormUndefined(self.trace()));
        }
        let t = self.trace().abs();
        let lambda_max = (t + (t * t - 4.0).sqrt()) / 2.0;
        let n = lambda_max * lambda_max;
        Ok((n, n.ln()))
    }

    /// Fixed points on the boundary circle: one for parabolic, two for
    /// hyperbolic (attracting first), none for elliptic.
    pub fn fixed_points(&self) -> Result<Vec<BoundaryPoint>, MoebiusError> {
        match self.classify() {
            MoebiusClass::Identity => Err(MoebiusError::IdentityFixedPoints),
            MoebiusClass::Elliptic => Ok(Vec::new()),
            MoebiusClass::Parabolic => {
                if self.c.abs() <= SIGN_EPS {
                    Ok(vec![BoundaryPoint::Infinity])
                } else {
                    // (cz + d - a)z - b = 0 with discriminant ~ 0
                    Ok(vec![BoundaryPoint::Finite((self.a - self.d) / (2.0 * self.c))])
                }
            }
            MoebiusClass::Hyperbolic => {
                let (att, rep) = self.hyperbolic_fixed_points();
                Ok(vec![att, rep])
            }
        }
    }

    fn hyperbolic_fixed_points(&self) -> (BoundaryPoint, BoundaryPoint) {
        if self.c.abs() <= SIGN_EPS {
            // z -> (a/d) z + b/d fixes inf and b/(d-a)
            let finite = BoundaryPoint::Finite(self.b / (self.d - self.a));
            // multiplier at inf is a/d
            if (self.a / self.d).abs() > 1.0 {
                (BoundaryPoint::Infinity, finite)
            } else {
                (finite, BoundaryPoint::Infinity)
            }
        } else {
            // c z^2 + (d - a) z - b = 0
            let disc = ((self.d - self.a) * (self.d - self.a) + 4.0 * self.b * self.c).sqrt();
            let z1 = (self.a - self.d + disc) / (2.0 * self.c);
            let z2 = (self.a - self.d - disc) / (2.0 * self.c);
            // attracting fixed point has |g'| = (cz+d)^-2 < 1
            let m1 = (self.c * z1 + self.d).abs();
            if m1 > 1.0 {
                (BoundaryPoint::Finite(z1), BoundaryPoint::Finite(z2))
            } else {
                (BoundaryPoint::Finite(z2), BoundaryPoint::Finite(z1))
            }
        }
    }

    /// The extended boundary action, including the infinity cases.
    pub fn apply(&self, z: BoundaryPoint) -> BoundaryPoint {
        match z {
            BoundaryPoint::Infinity => {
                if self.c.abs() <= SIGN_EPS {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite(self.a / self.c)
                }
            }
            BoundaryPoint::Finite(x) => {
                let denom = self.c * x + self.d;
                if denom.abs() <= SIGN_EPS * (1.0 + x.abs()) {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Finite((self.a * x + self.b) / denom)
                }
            }
        }
    }

    /// Fractional-linear action on a finite complex point. The caller is
    /// responsible for staying away from the pole -d/c.
    pub fn apply_complex(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Derivative g'(z) = (cz + d)^-2.
    pub fn deriv(&self, z: Complex64) -> Complex64 {
        let w = self.c * z + self.d;
        1.0 / (w * w)
    }

    /// Pole -d/c of the action on C, or None for affine maps.
    pub fn pole(&self) -> Option<f64> {
        if self.c.abs() <= SIGN_EPS {
            None
        } else {
            Some(-self.d / self.c)
        }
    }

    /// Exact image of a closed disk. Errors when the pole lies inside or
    /// on the disk (the image would be unbounded).
    pub fn map_disk(&self, disk: &Disk) -> Result<Disk, MoebiusError> {
        if self.c.abs() <= SIGN_EPS {
            // affine: z -> (a/d) z + b/d
            let scale = self.a / self.d;
            return Ok(Disk::new(
                scale * disk.center + self.b / self.d,
                scale.abs() * disk.radius,
            ));
        }
        // z -> a/c - 1/(c (cz + d)) since det = 1
        let p = self.c * disk.center + self.d; // center of c*z + d image (radius |c| r)
        let rho = self.c.abs() * disk.radius;
        let denom = p.norm_sqr() - rho * rho;
        if denom <= 0.0 {
            return Err(MoebiusError::ImageUnbounded {
                pole: -self.d / self.c,
            });
        }
        let inv_center = p.conj() / denom;
        let inv_radius = rho / denom;
        Ok(Disk::new(
            self.a / self.c - inv_center / self.c,
            inv_radius / self.c.abs(),
        ))
    }

    /// Image of an arc; Moebius maps preserve the cyclic orientation of
    /// the boundary circle, so endpoints map to endpoints.
    pub fn map_interval(&self, iv: &Interval) -> Interval {
        Interval::new(self.apply(iv.lo), self.apply(iv.hi))
    }

    /// Closed-form power of a parabolic element: with the trace
    /// normalized to +2, p^n = I + n (p - I) exactly for all integer n.
    pub fn parabolic_power(&self, n: i64) -> Result<MoebiusTransform, MoebiusError> {
        if self.classify() != MoebiusClass::Parabolic {
            return Err(MoebiusError::NotParabolic(self.trace()));
        }
        let p = self.trace_positive();
        let nf = n as f64;
        let mut g = MoebiusTransform {
            a: 1.0 + nf * (p.a - 1.0),
            b: nf * p.b,
            c: nf * p.c,
            d: 1.0 + nf * (p.d - 1.0),
        };
        g.canonicalize();
        Ok(g)
    }

    /// Representative with trace >= 0 (identical element of PSL2(R)).
    pub fn trace_positive(&self) -> MoebiusTransform {
        if self.trace() < 0.0 {
            MoebiusTransform {
                a: -self.a,
                b: -self.b,
                c: -self.c,
                d: -self.d,
            }
        } else {
            *self
        }
    }

    /// Parameters (c, d) with p = [[1 + cd, d^2], [-c^2, 1 - cd]] for a
    /// parabolic element of translation type. Errors for the opposite
    /// shear orientation (whose inverse is translation type).
    pub fn parabolic_cd(&self) -> Result<(f64, f64), MoebiusError> {
        if self.classify() != MoebiusClass::Parabolic {
            return Err(MoebiusError::NotParabolic(self.trace()));
        }
        let p = self.trace_positive();
        if p.b < -SIGN_EPS || p.c > SIGN_EPS {
            return Err(MoebiusError::ParabolicOrientation);
        }
        let d = p.b.max(0.0).sqrt();
        let c = if d > SIGN_EPS {
            (p.a - 1.0) / d
        } else {
            (-p.c).max(0.0).sqrt()
        };
        Ok((c, d))
    }

    /// Hyperbolic element with prescribed attracting/repelling fixed
    /// points and norm N > 1.
    pub fn from_axis(
        attracting: BoundaryPoint,
        repelling: BoundaryPoint,
        n: f64,
    ) -> Result<MoebiusTransform, MoebiusError> {
        assert!(n > 1.0, "norm must exceed 1");
        let lambda = n.sqrt();
        let diag = MoebiusTransform::new(lambda, 0.0, 0.0, 1.0 / lambda)?;
        // s maps 0 -> repelling, inf -> attracting
        let s = match (attracting, repelling) {
            (BoundaryPoint::Finite(x_a), BoundaryPoint::Finite(x_r)) => {
                if x_a > x_r {
                    MoebiusTransform::new(x_a, x_r, 1.0, 1.0)?
                } else {
                    MoebiusTransform::new(x_a, -x_r, 1.0, -1.0)?
                }
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Finite(x_r)) => {
                MoebiusTransform::new(1.0, x_r, 0.0, 1.0)?
            }
            (BoundaryPoint::Finite(x_a), BoundaryPoint::Infinity) => {
                MoebiusTransform::new(x_a, -1.0, 1.0, 0.0)?
            }
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => {
                panic!("fixed points must be distinct")
            }
        };
        Ok(s.compose(&diag).compose(&s.inverse()))
    }

    /// Parabolic with finite fixed point x and parameter c > 0; this is
    /// the translation-type element [[1 + cd, d^2], [-c^2, 1 - cd]] with
    /// d = -x c.
    pub fn parabolic_fixing(x: f64, c: f64) -> MoebiusTransform {
        let d = -x * c;
        MoebiusTransform::new(1.0 + c * d, d * d, -c * c, 1.0 - c * d)
            .expect("parabolic construction has det 1")
    }
}

/// Hyperbolic distance in the upper half-plane,
/// cosh d = 1 + |z-w|^2 / (2 Im z Im w).
pub fn hyp_dist(z: Complex64, w: Complex64) -> Result<f64, MoebiusError> {
    if z.im <= 0.0 {
        return Err(MoebiusError::NotInUpperHalfPlane(z.im));
    }
    if w.im <= 0.0 {
        return Err(MoebiusError::NotInUpperHalfPlane(w.im));
    }
    let q = 1.0 + (z - w).norm_sqr() / (2.0 * z.im * w.im);
    Ok(q.acosh())
}

/// A point of the boundary circle R^ = R u {inf}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BoundaryPoint {
    Finite(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(self) -> Option<f64> {
        match self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    /// Angle coordinate 2 atan(x) in (-pi, pi], with inf at pi. Used only
    /// for margin metrics, not for order predicates.
    pub fn angle(self) -> f64 {
        match self {
            BoundaryPoint::Finite(x) => 2.0 * x.atan(),
            BoundaryPoint::Infinity => std::f64::consts::PI,
        }
    }

    pub fn approx_eq(self, other: BoundaryPoint, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Finite(x), BoundaryPoint::Finite(y)) => (x - y).abs() <= tol,
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            _ => false,
        }
    }
}

/// Strict cyclic orientation: true iff sweeping positively from `p`
/// (increasing reals, wrapping through inf) meets `q` strictly before `r`.
/// Requires the three points to be pairwise distinct for a meaningful
/// answer.
pub fn cyclically_ordered(p: BoundaryPoint, q: BoundaryPoint, r: BoundaryPoint) -> bool {
    use BoundaryPoint::*;
    match (p, q, r) {
        (Finite(p), Finite(q), Finite(r)) => (q - p) * (r - q) * (r - p) > 0.0,
        (Infinity, Finite(q), Finite(r)) => q < r,
        (Finite(p), Infinity, Finite(r)) => r < p,
        (Finite(p), Finite(q), Infinity) => p < q,
        _ => false,
    }
}

/// A closed arc of the boundary circle: the positive sweep from `lo` to
/// `hi`. The pair order selects which of the two complementary arcs is
/// meant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: BoundaryPoint,
    pub hi: BoundaryPoint,
}

impl Interval {
    pub fn new(lo: BoundaryPoint, hi: BoundaryPoint) -> Self {
        assert!(
            !lo.approx_eq(hi, 0.0),
            "interval endpoints must be distinct"
        );
        Interval { lo, hi }
    }

    pub fn finite(lo: f64, hi: f64) -> Self {
        assert!(lo < hi, "finite interval needs lo < hi");
        Interval::new(BoundaryPoint::Finite(lo), BoundaryPoint::Finite(hi))
    }

    pub fn contains(&self, x: BoundaryPoint, tol: f64) -> bool {
        if x.approx_eq(self.lo, tol) || x.approx_eq(self.hi, tol) {
            return true;
        }
        cyclically_ordered(self.lo, x, self.hi)
    }

    pub fn contains_interval(&self, other: &Interval, tol: f64) -> bool {
        self.contains(other.lo, tol)
            && self.contains(other.hi, tol)
            && !(cyclically_ordered(other.lo, self.lo, other.hi)
                && !self.lo.approx_eq(other.lo, tol)
                && !self.lo.approx_eq(other.hi, tol))
    }

    pub fn disjoint_from(&self, other: &Interval, tol: f64) -> bool {
        !self.contains(other.lo, tol)
            && !self.contains(other.hi, tol)
            && !other.contains(self.lo, tol)
            && !other.contains(self.hi, tol)
    }

    /// Minimal angular clearance between this arc's endpoints and the
    /// other arc's endpoints; a coarse margin metric for validator
    /// reports.
    pub fn endpoint_margin(&self, other: &Interval) -> f64 {
        let mut m = f64::INFINITY;
        for p in [self.lo, self.hi] {
            for q in [other.lo, other.hi] {
                let mut d = (p.angle() - q.angle()).abs();
                if d > std::f64::consts::PI {
                    d = 2.0 * std::f64::consts::PI - d;
                }
                m = m.min(d);
            }
        }
        m
    }
}

/// A closed disk in the finite chart of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64) -> Self {
        assert!(radius > 0.0, "disk radius must be positive");
        Disk { center, radius }
    }

    pub fn contains_point(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }

    /// Signed clearance r_outer - (dist(centers) + r_inner); positive iff
    /// `inner` sits strictly inside `self`.
    pub fn containment_margin(&self, inner: &Disk) -> f64 {
        self.radius - ((inner.center - self.center).norm() + inner.radius)
    }

    pub fn contains_disk(&self, inner: &Disk) -> bool {
        self.containment_margin(inner) >= 0.0
    }
}
