use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Traversal sense of a ray relative to its anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    /// From the anchor out to infinity.
    Outgoing,
    /// From infinity in to the anchor.
    Incoming,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PathSegment {
    Segment { a: C64, b: C64 },
    Ray { anchor: C64, direction: C64, sense: Sense },
}

impl PathSegment {
    pub fn segment(a: C64, b: C64) -> Result<Self> {
        if (b - a).norm() == 0.0 || !a.is_finite() || !b.is_finite() {
            return Err(crate::error::invalid(format!(
                "finite segment needs distinct finite endpoints, got {a} and {b}"
            )));
        }
        Ok(Self::Segment { a, b })
    }

    /// A ray from `anchor` along `direction`; the direction is normalised.
    pub fn ray(anchor: C64, direction: C64, sense: Sense) -> Result<Self> {
        let norm = direction.norm();
        if !(norm.is_finite() && norm > 0.0) || !anchor.is_finite() {
            return Err(crate::error::invalid(format!(
                "ray needs a finite anchor and a nonzero direction, got {anchor} / {direction}"
            )));
        }
        Ok(Self::Ray {
            anchor,
            direction: direction / norm,
            sense,
        })
    }

    pub fn ray_at_angle(anchor: C64, angle: f64, sense: Sense) -> Self {
        Self::Ray {
            anchor,
            direction: C64::from_polar(1.0, angle),
            sense,
        }
    }

    /// Start point, `None` for an incoming ray (starts at infinity).
    pub fn start(&self) -> Option<C64> {
        match *self {
            Self::Segment { a, .. } => Some(a),
            Self::Ray { anchor, sense, .. } => (sense == Sense::Outgoing).then_some(anchor),
        }
    }

    pub fn end(&self) -> Option<C64> {
        match *self {
            Self::Segment { b, .. } => Some(b),
            Self::Ray { anchor, sense, .. } => (sense == Sense::Incoming).then_some(anchor),
        }
    }

    /// Euclidean distance from `z` to the point set of the segment.
    pub fn distance_to(&self, z: C64) -> f64 {
        let (origin, dir, len) = match *self {
            Self::Segment { a, b } => ((a), (b - a) / (b - a).norm(), Some((b - a).norm())),
            Self::Ray {
                anchor, direction, ..
            } => (anchor, direction, None),
        };
        let rel = z - origin;
        let along = (rel * dir.conj()).re;
        let clamped = match len {
            Some(l) => along.clamp(0.0, l),
            None => along.max(0.0),
        };
        (origin + dir * clamped - z).norm()
    }

    pub fn is_ray(&self) -> bool {
        matches!(self, Self::Ray { .. })
    }
}

/// Oriented piecewise path in the spectral plane.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPath {
    name: String,
    segments: Vec<PathSegment>,
}

const JUNCTION_TOL: f64 = 1e-12;

impl ComplexPath {
    pub fn new(name: impl Into<String>, segments: Vec<PathSegment>) -> Result<Self> {
        let name = name.into();
        if segments.is_empty() {
            return Err(Error::MalformedPath {
                path: name,
                reason: "no segments".into(),
            });
        }
        for (i, w) in segments.windows(2).enumerate() {
            match (w[0].end(), w[1].start()) {
                (Some(e), Some(s)) if (e - s).norm() > JUNCTION_TOL * e.norm().max(1.0) => {
                    return Err(Error::MalformedPath {
                        path: name,
                        reason: format!("segments {i} and {} do not meet ({e} vs {s})", i + 1),
                    });
                }
                (Some(_), None) | (None, Some(_)) => {
                    return Err(Error::MalformedPath {
                        path: name,
                        reason: format!(
                            "segments {i} and {} join a finite point to infinity",
                            i + 1
                        ),
                    });
                }
                _ => {}
            }
        }
        Ok(Self { name, segments })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    pub fn min_distance_to(&self, z: C64) -> f64 {
        self.segments
            .iter()
            .map(|s| s.distance_to(z))
            .fold(f64::INFINITY, f64::min)
    }

    /// The same point set traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let segments = self
            .segments
            .iter()
            .rev()
            .map(|s| match *s {
                PathSegment::Segment { a, b } => PathSegment::Segment { a: b, b: a },
                PathSegment::Ray {
                    anchor,
                    direction,
                    sense,
                } => PathSegment::Ray {
                    anchor,
                    direction,
                    sense: match sense {
                        Sense::Outgoing => Sense::Incoming,
                        Sense::Incoming => Sense::Outgoing,
                    },
                },
            })
            .collect();
        Self {
            name: format!("-{}", self.name),
            segments,
        }
    }
}

/// Boundary of the sector `θ ≤ arg λ ≤ π − θ` through the origin, traversed
/// in along `arg = π − θ` and out along `arg = θ` (sector interior on the left).
pub fn sector_boundary(name: &str, theta: f64) -> ComplexPath {
    let origin = C64::new(0.0, 0.0);
    ComplexPath {
        name: name.to_string(),
        segments: vec![
            PathSegment::ray_at_angle(origin, std::f64::consts::PI - theta, Sense::Incoming),
            PathSegment::ray_at_angle(origin, theta, Sense::Outgoing),
        ],
    }
}

/// `γ = ∂Θ⁻`, `Θ⁻ = {Im λ ≥ 0, Re λ² ≤ 0}`: the rays `arg λ = 3π/4` (in) and
/// `arg λ = π/4` (out).
pub fn make_heat_gamma() -> ComplexPath {
    sector_boundary("gamma", FRAC_PI_4)
}

/// `γ₀`: `γ` outside `|λ| < √2` joined by the segment `[−1+i, 1+i]`.
pub fn make_heat_gamma0() -> ComplexPath {
    tilted_heat_gamma0(FRAC_PI_4, "gamma0")
}

/// `γ₀` with both rays leaving `±1+i` at angle `θ` to the real axis; for
/// `θ = π/4` this is `γ₀` itself. Smaller angles keep `e^{-λ²t}` decaying.
pub fn tilted_heat_gamma0(theta: f64, name: &str) -> ComplexPath {
    let left = C64::new(-1.0, 1.0);
    let right = C64::new(1.0, 1.0);
    debug_assert!((left.norm() - SQRT_2).abs() < 1e-15);
    ComplexPath {
        name: name.to_string(),
        segments: vec![
            PathSegment::ray_at_angle(left, std::f64::consts::PI - theta, Sense::Incoming),
            PathSegment::Segment { a: left, b: right },
            PathSegment::ray_at_angle(right, theta, Sense::Outgoing),
        ],
    }
}

/// `Γ = ∂Ω⁻` for `ω(λ) = −iλ³`: `Re ω = Im λ³ ≤ 0` on `π/3 ≤ arg λ ≤ 2π/3`.
#[allow(non_snake_case)]
pub fn make_kdv_Gamma() -> ComplexPath {
    sector_boundary("Gamma", FRAC_PI_3)
}

/// `Γ` with each arm translated by distance `η` away from `Ω⁻`.
///
/// The arms are `e^{2πi/3}(s + iη)` (in) and `e^{iπ/3}(s − iη)` (out); they
/// meet at `−2iη`. On the arms `Re ω(λ) = 3s²η − η³`, so `e^{−ω t}` decays
/// like a Gaussian, while the rotated arguments `αλ`, `α²λ` stay in
/// `Im ≤ η`.
pub fn shifted_kdv_gamma(eta: f64) -> Result<ComplexPath> {
    if !(eta > 0.0 && eta.is_finite()) {
        return Err(crate::error::invalid(format!("shift must be positive, got {eta}")));
    }
    let vertex = C64::new(0.0, -2.0 * eta);
    Ok(ComplexPath {
        name: format!("Gamma_shift({eta})"),
        segments: vec![
            PathSegment::ray_at_angle(vertex, 2.0 * FRAC_PI_3, Sense::Incoming),
            PathSegment::ray_at_angle(vertex, FRAC_PI_3, Sense::Outgoing),
        ],
    })
}

/// The line `Im λ = ε`, left to right.
pub fn make_horizontal_line(eps: f64) -> Result<ComplexPath> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(crate::error::invalid(format!(
            "horizontal line needs Im λ = ε > 0, got ε = {eps}"
        )));
    }
    Ok(horizontal_line_unchecked(eps, &format!("horiz({eps})")))
}

/// The line `Im λ = c` for any real `c` (the real axis for `c = 0`).
pub fn horizontal_line_unchecked(c: f64, name: &str) -> ComplexPath {
    let anchor = C64::new(0.0, c);
    ComplexPath {
        name: name.to_string(),
        segments: vec![
            PathSegment::Ray {
                anchor,
                direction: C64::new(-1.0, 0.0),
                sense: Sense::Incoming,
            },
            PathSegment::Ray {
                anchor,
                direction: C64::new(1.0, 0.0),
                sense: Sense::Outgoing,
            },
        ],
    }
}

/// `λ ∈ Θ⁻ = {Im λ ≥ 0, Re λ² ≤ 0}`.
pub fn in_heat_region(lambda: C64) -> bool {
    lambda.im >= 0.0 && (lambda * lambda).re <= 0.0
}

/// `λ ∈ Ω⁻ = {Im λ ≥ 0, Re(−iλ³) ≤ 0}`.
pub fn in_kdv_region(lambda: C64) -> bool {
    lambda.im >= 0.0 && (lambda * lambda * lambda).im <= 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gamma_rays_on_sector_boundary() {
        let g = make_heat_gamma();
        let angles: Vec<f64> = g
            .segments()
            .iter()
            .map(|s| match s {
                PathSegment::Ray { direction, .. } => direction.arg(),
                _ => panic!("gamma has only rays"),
            })
            .collect();
        assert!((angles[0] - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((angles[1] - PI / 4.0).abs() < 1e-15);
        // Re λ² = 0 on both rays.
        for a in angles {
            let l = C64::from_polar(2.0, a);
            assert!((l * l).re.abs() < 1e-14);
        }
    }

    #[test]
    fn heat_region_membership() {
        assert!(in_heat_region(C64::new(0.0, 1.0)));
        assert!(!in_heat_region(C64::new(1.0, 0.0)));
    }

    #[test]
    fn gamma0_structure() {
        let g0 = make_heat_gamma0();
        assert_eq!(g0.segments().len(), 3);
        let junction = C64::new(-1.0, 1.0);
        assert!((junction.norm() - SQRT_2).abs() < 1e-15);
        assert!((junction.arg() - 3.0 * PI / 4.0).abs() < 1e-15);
        assert!((g0.min_distance_to(C64::new(0.0, 0.0)) - 1.0).abs() < 1e-15);
        ComplexPath::new("gamma0", g0.segments().to_vec()).unwrap();
    }

    #[test]
    fn kdv_gamma_rays_and_membership() {
        let g = make_kdv_Gamma();
        for s in g.segments() {
            let PathSegment::Ray { direction, .. } = s else {
                panic!()
            };
            let l = direction * 3.0;
            assert!((l * l * l).im.abs() < 1e-13);
        }
        assert!(in_kdv_region(C64::new(0.0, 1.0)));
        assert!(!in_kdv_region(C64::from_polar(1.0, PI / 6.0)));
    }

    #[test]
    fn horizontal_line_validation() {
        let l = make_horizontal_line(1.0).unwrap();
        let PathSegment::Ray {
            anchor, direction, ..
        } = l.segments()[1]
        else {
            panic!()
        };
        assert_eq!(anchor, C64::new(0.0, 1.0));
        assert_eq!(direction, C64::new(1.0, 0.0));
        assert!(make_horizontal_line(0.0).is_err());
        assert!(make_horizontal_line(-1.0).is_err());
        assert_ne!(make_horizontal_line(0.5).unwrap(), make_horizontal_line(2.0).unwrap());
    }

    #[test]
    fn shifted_gamma_arms_meet() {
        let p = shifted_kdv_gamma(0.25).unwrap();
        let PathSegment::Ray { anchor, direction, .. } = p.segments()[1] else {
            panic!()
        };
        // the outgoing arm is e^{iπ/3}(s − iη)
        let s = 0.5 + 0.25 * 3f64.sqrt();
        let on_arm = anchor + direction * s;
        let expected = C64::from_polar(1.0, FRAC_PI_3) * C64::new(0.5, -0.25);
        assert!((on_arm - expected).norm() < 1e-12, "{on_arm} vs {expected}");
    }

    #[test]
    fn malformed_paths_rejected() {
        let a = PathSegment::segment(C64::new(0.0, 0.0), C64::new(1.0, 0.0)).unwrap();
        let b = PathSegment::segment(C64::new(2.0, 0.0), C64::new(3.0, 0.0)).unwrap();
        assert!(ComplexPath::new("x", vec![a, b]).is_err());
        assert!(ComplexPath::new("x", vec![]).is_err());
        assert!(PathSegment::segment(C64::new(1.0, 1.0), C64::new(1.0, 1.0)).is_err());
        assert!(PathSegment::ray(C64::new(0.0, 0.0), C64::new(0.0, 0.0), Sense::Outgoing).is_err());
    }

    #[test]
    fn ray_direction_is_unit() {
        let r = PathSegment::ray(C64::new(0.0, 0.0), C64::new(3.0, 4.0), Sense::Outgoing).unwrap();
        let PathSegment::Ray { direction, .. } = r else {
            panic!()
        };
        assert!((direction.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn distance_to_segment_and_ray() {
        let s = PathSegment::segment(C64::new(-1.0, 1.0), C64::new(1.0, 1.0)).unwrap();
        assert!((s.distance_to(C64::new(0.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((s.distance_to(C64::new(3.0, 1.0)) - 2.0).abs() < 1e-15);
        let r = PathSegment::ray_at_angle(C64::new(0.0, 0.0), 0.0, Sense::Outgoing);
        assert!((r.distance_to(C64::new(-2.0, 0.0)) - 2.0).abs() < 1e-15);
        assert!((r.distance_to(C64::new(5.0, 0.5)) - 0.5).abs() < 1e-15);
    }
}
