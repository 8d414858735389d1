//! Built-in equations: the threefold Y, its local D4 surface, and the base curve.

use crate::algebra::{parse_polynomial, Coefficient, WPolynomial};
use crate::error::Result;

/// Y : y^2 = x^3 + 16 * sextic(z0, z1, z2), in P(2,3,1,1,1).
pub const THREEFOLD_TEXT: &str =
    "y^2 - x^3 - 16*(z0^6 + z1^6 + z2^6 - 2*(z0^3*z1^3 + z1^3*z2^3 + z0^3*z2^3))";
pub const THREEFOLD_VARS: [&str; 5] = ["x", "y", "z0", "z1", "z2"];
pub const THREEFOLD_WEIGHTS: [u32; 5] = [2, 3, 1, 1, 1];

/// The sextic in (z0, z1, z2) such that Y is y^2 = x^3 + base.
pub const THREEFOLD_BASE_TEXT: &str =
    "16*(z0^6 + z1^6 + z2^6 - 2*(z0^3*z1^3 + z1^3*z2^3 + z0^3*z2^3))";
pub const BASE_VARS: [&str; 3] = ["z0", "z1", "z2"];

/// The local surface at a singular point, in normalized form.
pub const LOCAL_SURFACE_TEXT: &str = "-y^2 + x^3 - s1^3 + t1^2";
pub const LOCAL_SURFACE_VARS: [&str; 4] = ["x", "y", "s1", "t1"];
pub const LOCAL_SURFACE_WEIGHTS: [u32; 4] = [2, 3, 2, 3];

/// The same surface after splitting t1^2 - y^2 into two linear factors.
pub const SPLIT_SURFACE_TEXT: &str = "t1*y + x^3 - s1^3";
pub const SPLIT_SURFACE_VARS: [&str; 4] = ["y", "x", "s1", "t1"];
pub const SPLIT_SURFACE_WEIGHTS: [u32; 4] = [3, 2, 2, 3];

/// Right-hand side of the affine Weierstrass equation in (s, t).
pub const AFFINE_RHS_TEXT: &str = "16*s^6 + 16*t^6 - 32*(t^3*s^3 + t^3 + s^3) + 16";
pub const AFFINE_VARS: [&str; 2] = ["s", "t"];

pub fn threefold<C: Coefficient>() -> Result<WPolynomial<C>> {
    parse_polynomial(THREEFOLD_TEXT, &THREEFOLD_VARS, &THREEFOLD_WEIGHTS)
}

pub fn threefold_base<C: Coefficient>() -> Result<WPolynomial<C>> {
    parse_polynomial(THREEFOLD_BASE_TEXT, &BASE_VARS, &[1, 1, 1])
}

pub fn local_surface<C: Coefficient>() -> Result<WPolynomial<C>> {
    parse_polynomial(
        LOCAL_SURFACE_TEXT,
        &LOCAL_SURFACE_VARS,
        &LOCAL_SURFACE_WEIGHTS,
    )
}

pub fn split_surface<C: Coefficient>() -> Result<WPolynomial<C>> {
    parse_polynomial(
        SPLIT_SURFACE_TEXT,
        &SPLIT_SURFACE_VARS,
        &SPLIT_SURFACE_WEIGHTS,
    )
}

/// Unnormalized local surface -y^2 + x^3 - 64 s^3 + 144 omega^i t^2.
pub fn twisted_local_surface<C: Coefficient>(i: u32) -> Result<WPolynomial<C>> {
    let omega = match i % 3 {
        0 => String::from("1"),
        1 => String::from("omega"),
        _ => String::from("omega^2"),
    };
    let text = format!("-y^2 + x^3 - 64*s^3 + 144*{omega}*t^2");
    parse_polynomial(&text, &["x", "y", "s", "t"], &LOCAL_SURFACE_WEIGHTS)
}

pub fn affine_rhs<C: Coefficient>() -> Result<WPolynomial<C>> {
    parse_polynomial(AFFINE_RHS_TEXT, &AFFINE_VARS, &[1, 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rational};

    #[test]
    fn threefold_normal_form() {
        let f = threefold::<Rational>().unwrap();
        // y^2, x^3, three sixth powers and three cross terms
        assert_eq!(f.num_terms(), 8);
        assert_eq!(f.homogeneous_degree(), Some(6));
        assert_eq!(
            f.to_string(),
            "-16*z0^6 + 32*z0^3*z1^3 + 32*z0^3*z2^3 - 16*z1^6 + 32*z1^3*z2^3 - 16*z2^6 - x^3 + y^2"
        );
    }

    #[test]
    fn threefold_partial_in_z0() {
        let f = threefold::<Rational>().unwrap();
        let want = parse_polynomial::<Rational, _>(
            "-16*(6*z0^5 - 6*z0^2*z1^3 - 6*z0^2*z2^3)",
            &THREEFOLD_VARS,
            &THREEFOLD_WEIGHTS,
        )
        .unwrap();
        assert_eq!(f.derivative("z0").unwrap(), want);
    }

    #[test]
    fn singular_point_lies_on_threefold() {
        let f = threefold::<Rational>().unwrap();
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f.evaluate_mod_p(&f7, &[0, 0, 2, 1, 0], None).unwrap(), 0);
    }

    #[test]
    fn builtins_are_homogeneous_of_degree_six() {
        assert_eq!(
            local_surface::<Rational>().unwrap().homogeneous_degree(),
            Some(6)
        );
        assert_eq!(
            split_surface::<Rational>().unwrap().homogeneous_degree(),
            Some(6)
        );
        assert_eq!(
            threefold_base::<Rational>().unwrap().homogeneous_degree(),
            Some(6)
        );
        for i in 0..3 {
            let s = twisted_local_surface::<crate::algebra::EisensteinInt>(i).unwrap();
            assert_eq!(s.homogeneous_degree(), Some(6));
        }
    }
}
