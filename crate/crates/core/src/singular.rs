//! Singular points of a weighted-homogeneous hypersurface over F_p.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{Coefficient, PrimeField, WPolynomial};
use crate::curve::THREEFOLD_WEIGHTS;
use crate::enumerate::{collect_over_cube, CountOptions};
use crate::error::{Error, Result};
use crate::wps_count::WeightedSpace;

/// A point of weighted projective space, stored as its canonical representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProjectivePoint {
    pub coordinates: Vec<u64>,
}

impl ProjectivePoint {
    pub fn canonical(field: &PrimeField, space: &WeightedSpace, point: &[u64]) -> Result<Self> {
        if point.iter().all(|&x| x == 0) {
            return Err(Error::InvalidInput(
                "the origin is not a projective point".into(),
            ));
        }
        Ok(Self {
            coordinates: space.canonical(field, point),
        })
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coordinates.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(":"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularReport {
    pub points: Vec<ProjectivePoint>,
    /// `None` when no explicit list is available to compare against.
    pub matches_expected: Option<bool>,
    /// Points of the hypersurface at singular points of the ambient space, where
    /// the vanishing of the partials says nothing.
    pub excluded_ambient: Vec<ProjectivePoint>,
    /// Whether `p` does not divide the degree, so that vanishing partials force `f = 0`.
    pub euler_shortcut: bool,
}

impl SingularReport {
    pub fn compare_with(&mut self, expected: &[ProjectivePoint]) {
        let a: BTreeSet<_> = self.points.iter().collect();
        let b: BTreeSet<_> = expected.iter().collect();
        self.matches_expected = Some(a == b);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Scan every cone point and canonicalize the hits.
    CanonicalizeAll,
    /// Keep only hits that already are canonical representatives.
    CanonicalOnly,
}

enum Hit {
    Singular(Vec<u64>),
    Ambient(Vec<u64>),
    EulerViolation(Vec<u64>),
}

pub fn singular_points<C: Coefficient>(
    field: &PrimeField,
    f: &WPolynomial<C>,
    space: &WeightedSpace,
    opts: &CountOptions,
) -> Result<SingularReport> {
    singular_points_with(field, f, space, opts, ScanMode::CanonicalizeAll)
}

pub fn singular_points_with<C: Coefficient>(
    field: &PrimeField,
    f: &WPolynomial<C>,
    space: &WeightedSpace,
    opts: &CountOptions,
    mode: ScanMode,
) -> Result<SingularReport> {
    if f.num_vars() != space.len() {
        return Err(Error::InvalidSpace(
            "variable count does not match the space".into(),
        ));
    }
    let degree = match f.homogeneous_degree_for(space.weights()) {
        Some(d) if d > 0 => d,
        _ => {
            return Err(Error::NotHomogeneous {
                weights: space.weights().to_vec(),
            })
        }
    };
    let euler_shortcut = degree % field.p() != 0;
    let g = f.compile_default(field)?;
    let partials = (0..f.num_vars())
        .map(|i| f.partial_derivative(i).compile_default(field))
        .collect::<Result<Vec<_>>>()?;

    let hits = collect_over_cube(field.p(), f.num_vars(), opts, |v| {
        if v.iter().all(|&x| x == 0) {
            return None;
        }
        let hit = if space.support_gcd(v) > 1 {
            (g.eval(v) == 0).then(|| Hit::Ambient(v.to_vec()))
        } else if partials.iter().all(|d| d.eval(v) == 0) {
            if g.eval(v) == 0 {
                Some(Hit::Singular(v.to_vec()))
            } else if euler_shortcut {
                Some(Hit::EulerViolation(v.to_vec()))
            } else {
                None
            }
        } else {
            None
        };
        match (mode, hit) {
            (ScanMode::CanonicalOnly, Some(Hit::Singular(v))) => {
                (space.canonical(field, &v) == v).then_some(Hit::Singular(v))
            }
            (ScanMode::CanonicalOnly, Some(Hit::Ambient(v))) => {
                (space.canonical(field, &v) == v).then_some(Hit::Ambient(v))
            }
            (_, hit) => hit,
        }
    })?;

    let mut points = BTreeSet::new();
    let mut ambient = BTreeSet::new();
    for hit in hits {
        match hit {
            Hit::Singular(v) => {
                points.insert(ProjectivePoint::canonical(field, space, &v)?);
            }
            Hit::Ambient(v) => {
                ambient.insert(ProjectivePoint::canonical(field, space, &v)?);
            }
            Hit::EulerViolation(v) => {
                return Err(Error::Internal(format!(
                    "partials vanish at {v:?} but f does not, contradicting the Euler relation"
                )))
            }
        }
    }
    Ok(SingularReport {
        points: points.into_iter().collect(),
        matches_expected: None,
        excluded_ambient: ambient.into_iter().collect(),
        euler_shortcut,
    })
}

/// The nine points (0:0:w^i:1:0), (0:0:w^j:0:1), (0:0:0:w^k:1) built from the
/// cube roots of unity of F_p, as canonical representatives in P(2,3,1,1,1).
pub fn expected_singularities(field: &PrimeField) -> Result<Vec<ProjectivePoint>> {
    field.primitive_cube_root()?;
    let space = WeightedSpace::new(&THREEFOLD_WEIGHTS)?;
    let mut out = BTreeSet::new();
    for &w in field.cube_roots() {
        for v in [[0, 0, w, 1, 0], [0, 0, w, 0, 1], [0, 0, 0, w, 1]] {
            out.insert(ProjectivePoint::canonical(field, &space, &v)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Whether `sum_i w_i x_i df/dx_i = d f` holds as an exact polynomial identity.
pub fn euler_check<C: Coefficient>(f: &WPolynomial<C>, space: &WeightedSpace) -> bool {
    if f.num_vars() != space.len() {
        return false;
    }
    let Some(d) = f.homogeneous_degree_for(space.weights()) else {
        return false;
    };
    let mut lhs = f.constant_like(C::zero());
    for (i, &w) in space.weights().iter().enumerate() {
        let term = f
            .variable_like(i)
            .mul(&f.partial_derivative(i))
            .scale(&C::from_integer(BigInt::from(w)));
        lhs = lhs.add(&term);
    }
    lhs == f.scale(&C::from_integer(BigInt::from(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Rational};
    use crate::curve;

    type Q = Rational;

    fn threefold_space() -> WeightedSpace {
        WeightedSpace::new(&THREEFOLD_WEIGHTS).unwrap()
    }

    #[test]
    fn nine_points_at_seven() {
        let field = PrimeField::new(7).unwrap();
        let f = curve::threefold::<Q>().unwrap();
        let mut report =
            singular_points(&field, &f, &threefold_space(), &CountOptions::default()).unwrap();
        assert_eq!(report.points.len(), 9);
        assert!(report.excluded_ambient.is_empty());
        assert!(report.euler_shortcut);
        let expected = expected_singularities(&field).unwrap();
        report.compare_with(&expected);
        assert_eq!(report.matches_expected, Some(true));
        let printed: Vec<String> = report.points.iter().map(|p| p.to_string()).collect();
        assert!(printed.contains(&"(0:0:2:1:0)".to_string()));
        assert!(printed.contains(&"(0:0:0:4:1)".to_string()));
        // every reported point is on Y
        for pt in &report.points {
            assert_eq!(f.evaluate_mod_p(&field, &pt.coordinates, None).unwrap(), 0);
        }
    }

    #[test]
    fn expected_list_at_thirteen() {
        let field = PrimeField::new(13).unwrap();
        let pts = expected_singularities(&field).unwrap();
        assert_eq!(pts.len(), 9);
        for &w in &[1, 3, 9] {
            assert!(pts.iter().any(|p| p.coordinates == vec![0, 0, w, 1, 0]));
            assert!(pts.iter().any(|p| p.coordinates == vec![0, 0, w, 0, 1]));
            assert!(pts.iter().any(|p| p.coordinates == vec![0, 0, 0, w, 1]));
        }
        assert!(expected_singularities(&PrimeField::new(5).unwrap()).is_err());
    }

    #[test]
    fn raw_scan_runs_without_cube_roots() {
        let field = PrimeField::new(5).unwrap();
        let f = curve::threefold::<Q>().unwrap();
        let report =
            singular_points(&field, &f, &threefold_space(), &CountOptions::default()).unwrap();
        assert_eq!(report.matches_expected, None);
        // only omega = 1 exists over F_5: (0:0:1:1:0), (0:0:1:0:1), (0:0:0:1:1)
        assert_eq!(report.points.len(), 3);
    }

    #[test]
    fn quasi_smooth_surface_has_no_singular_points() {
        let field = PrimeField::new(7).unwrap();
        let f: WPolynomial<Q> =
            parse_polynomial("y^2 - x^3 - z^6", &["y", "x", "z"], &[3, 2, 1]).unwrap();
        let space = WeightedSpace::new(&[3, 2, 1]).unwrap();
        let report = singular_points(&field, &f, &space, &CountOptions::default()).unwrap();
        assert!(report.points.is_empty());
    }

    #[test]
    fn scan_modes_agree() {
        let f = curve::threefold::<Q>().unwrap();
        for p in [7, 13] {
            let field = PrimeField::new(p).unwrap();
            let a = singular_points_with(
                &field,
                &f,
                &threefold_space(),
                &CountOptions::default(),
                ScanMode::CanonicalizeAll,
            )
            .unwrap();
            let b = singular_points_with(
                &field,
                &f,
                &threefold_space(),
                &CountOptions::default(),
                ScanMode::CanonicalOnly,
            )
            .unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ambient_singular_points_are_excluded() {
        // y^2 - z^6 passes through the ambient singular point (1:0:0); over F_7 it
        // splits into two F_7^*-orbits, x a square or not.
        let field = PrimeField::new(7).unwrap();
        let f: WPolynomial<Q> =
            parse_polynomial("y^2 - z^6", &["x", "y", "z"], &[2, 3, 1]).unwrap();
        let space = WeightedSpace::new(&[2, 3, 1]).unwrap();
        let report = singular_points(&field, &f, &space, &CountOptions::default()).unwrap();
        assert_eq!(report.excluded_ambient.len(), 2);
        assert!(report
            .excluded_ambient
            .iter()
            .all(|p| p.coordinates[1] == 0 && p.coordinates[2] == 0));
    }

    #[test]
    fn euler_relation() {
        let f = curve::threefold::<Q>().unwrap();
        assert!(euler_check(&f, &threefold_space()));
        let cusp: WPolynomial<Q> = parse_polynomial("y^2 - x^3", &["y", "x"], &[3, 2]).unwrap();
        assert!(euler_check(&cusp, &WeightedSpace::new(&[3, 2]).unwrap()));
        assert!(!euler_check(&cusp, &WeightedSpace::new(&[1, 1]).unwrap()));
    }
}
