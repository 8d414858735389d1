//! Cohomological inputs from graded Jacobian rings and quasi-homogeneous
//! singularities: h^2 of the local surface, h^3 of a smooth member of the
//! ambient family, Milnor numbers, h^4 with support in the singular locus and
//! the Euler characteristic of Y.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{Monomial, PrimeField, Rational, WPolynomial};
use crate::curve;
use crate::enumerate::{collect_over_cube, cube_size, CountOptions};
use crate::error::{Error, Result};
use crate::linalg;

/// Even Betti numbers h^0 = h^2 = h^4 = h^6 = 1 of a smooth degree-6 threefold in
/// P(2,3,1,1,1), by the weak Lefschetz theorem.
pub const SMOOTH_EVEN_BETTI_SUM: i64 = 4;

/// A weighted-homogeneous polynomial over Q whose Jacobian ring we grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRingSpec {
    f: WPolynomial<Rational>,
    degree: u64,
}

impl GradedRingSpec {
    pub fn new(f: WPolynomial<Rational>) -> Result<Self> {
        match f.homogeneous_degree() {
            Some(d) if d > 0 => Ok(Self { f, degree: d }),
            _ => Err(Error::NotHomogeneous {
                weights: f.weights().to_vec(),
            }),
        }
    }

    /// `sum_i x_i^{d / w_i}`; every weight must divide the degree.
    pub fn fermat(degree: u64, weights: &[u32]) -> Result<Self> {
        let names: Vec<String> = (0..weights.len()).map(|i| format!("x{i}")).collect();
        let mut terms = Vec::new();
        for (i, &w) in weights.iter().enumerate() {
            if degree % w as u64 != 0 {
                return Err(Error::InvalidInput(format!(
                    "no Fermat member: weight {w} does not divide degree {degree}"
                )));
            }
            let mut e = vec![0; weights.len()];
            e[i] = (degree / w as u64) as u32;
            terms.push((e, Rational::one()));
        }
        Self::new(WPolynomial::from_terms(&names, weights, terms)?)
    }

    /// The normalized local surface -y^2 + x^3 - s1^3 + t1^2 in P(2,3,2,3).
    pub fn local_surface() -> Result<Self> {
        Self::new(curve::local_surface()?)
    }

    pub fn polynomial(&self) -> &WPolynomial<Rational> {
        &self.f
    }

    pub fn weights(&self) -> &[u32] {
        self.f.weights()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }
}

/// All exponent vectors of weighted degree `k`, in increasing graded-lex order.
pub fn monomials_of_degree(weights: &[u32], k: i64) -> Vec<Monomial> {
    fn rec(weights: &[u32], left: u64, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let i = cur.len();
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let w = weights[i] as u64;
        for e in 0..=left / w {
            cur.push(e as u32);
            rec(weights, left - e * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 0 {
        rec(weights, k as u64, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

/// Dimension of the degree-`k` piece of Q[x] / (df/dx_0, ..., df/dx_n).
pub fn jacobian_ring_dim(spec: &GradedRingSpec, k: i64) -> usize {
    let weights = spec.weights();
    let basis = monomials_of_degree(weights, k);
    if basis.is_empty() {
        return 0;
    }
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = linalg::EchelonBasis::new();
    for i in 0..weights.len() {
        let partial = spec.polynomial().partial_derivative(i);
        if partial.is_zero() {
            continue;
        }
        let dpartial = spec.degree() as i64 - weights[i] as i64;
        for m in monomials_of_degree(weights, k - dpartial) {
            let mut row = linalg::SparseRow::new();
            for (t, c) in partial.terms() {
                let prod = Monomial(t.0.iter().zip(&m.0).map(|(a, b)| a + b).collect());
                *row.entry(index[&prod]).or_insert_with(BigRational::zero) += c.clone();
            }
            echelon.insert(row);
            if echelon.rank() == basis.len() {
                return 0;
            }
        }
    }
    basis.len() - echelon.rank()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub degree: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H3Smooth {
    pub h3: usize,
    pub pieces: Vec<GradedPiece>,
    pub warnings: Vec<String>,
}

fn test_prime(spec: &GradedRingSpec) -> u64 {
    let bad = spec
        .weights()
        .iter()
        .fold(spec.degree(), |acc, &w| acc.lcm(&(w as u64)));
    (5..)
        .find(|&p| PrimeField::new(p).is_ok() && bad % p != 0)
        .expect("some prime does not divide the degree")
}

/// Nonzero common zeros of all partials over F_p (a necessary test for quasi-smoothness).
pub fn partials_common_zeros(
    spec: &GradedRingSpec,
    field: &PrimeField,
    opts: &CountOptions,
) -> Result<usize> {
    let f = spec.polynomial();
    let partials = (0..f.num_vars())
        .map(|i| f.partial_derivative(i).compile_default(field))
        .collect::<Result<Vec<_>>>()?;
    let hits = collect_over_cube(field.p(), f.num_vars(), opts, |v| {
        (v.iter().any(|&x| x != 0) && partials.iter().all(|d| d.eval(v) == 0)).then_some(())
    })?;
    Ok(hits.len())
}

/// h^3 of a quasi-smooth threefold hypersurface in weighted P^4:
/// `sum_{q=0..3} dim R_{(q+1)d - sum w}`.
pub fn hodge_h3_smooth(spec: &GradedRingSpec) -> Result<H3Smooth> {
    if spec.weights().len() != 5 {
        return Err(Error::InvalidInput(format!(
            "h^3 needs a hypersurface in weighted P^4, got {} variables",
            spec.weights().len()
        )));
    }
    let sum_w: i64 = spec.weights().iter().map(|&w| w as i64).sum();
    let d = spec.degree() as i64;
    let pieces: Vec<GradedPiece> = (0..4)
        .map(|q| {
            let degree = (q + 1) * d - sum_w;
            GradedPiece {
                degree,
                dim: jacobian_ring_dim(spec, degree),
            }
        })
        .collect();
    let mut warnings = Vec::new();
    let field = PrimeField::new(test_prime(spec))?;
    let opts = CountOptions::default();
    if cube_size(field.p(), 5) <= opts.budget as u128 {
        let zeros = partials_common_zeros(spec, &field, &opts)?;
        if zeros > 0 {
            warnings.push(format!(
                "representative is not quasi-smooth: partials share {zeros} nonzero zeros over F_{}",
                field.p()
            ));
        }
    }
    Ok(H3Smooth {
        h3: pieces.iter().map(|p| p.dim).sum(),
        pieces,
        warnings,
    })
}

/// Milnor number `prod_i (d / w_i - 1)` of an isolated quasi-homogeneous singularity.
pub fn milnor_quasihomogeneous(d: u64, local_weights: &[u32]) -> Result<u64> {
    let mut mu = BigRational::one();
    for &w in local_weights {
        if w == 0 || d <= w as u64 {
            return Err(Error::InvalidInput(format!(
                "d / w = {d}/{w} <= 1: not an isolated quasi-homogeneous singularity of this form"
            )));
        }
        mu *= BigRational::new(BigInt::from(d - w as u64), BigInt::from(w));
    }
    if !mu.is_integer() {
        return Err(Error::InvalidInput(format!(
            "Milnor product {mu} is not an integer"
        )));
    }
    u64::try_from(mu.to_integer())
        .map_err(|_| Error::InvalidInput("Milnor number too large".into()))
}

pub fn h4_sigma_total(local_h2_prim: u64, num_points: u64) -> u64 {
    local_h2_prim * num_points
}

/// Euler characteristic of a hypersurface with isolated singularities from a smooth
/// member and the Milnor numbers.
pub fn chi_singular(chi_smooth: i64, milnor_numbers: &[u64]) -> i64 {
    chi_smooth + milnor_numbers.iter().map(|&m| m as i64).sum::<i64>()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyInputs {
    pub h4_sigma: u64,
    pub chi: i64,
    pub milnor_numbers: Vec<u64>,
    pub h3_smooth: usize,
    /// dim of the degree-2 Jacobian piece of the local surface, i.e. h^2(S)_prim.
    pub local_h2_prim: usize,
    pub local_h2: usize,
    pub chi_smooth: i64,
}

/// The inputs for Y, given how many D4 points the singular scan found.
pub fn builtin_cohomology(num_singular_points: usize) -> Result<CohomologyInputs> {
    let local = GradedRingSpec::local_surface()?;
    let local_h2_prim = jacobian_ring_dim(&local, 2);
    let mu = milnor_quasihomogeneous(local.degree(), local.weights())?;
    let smooth = GradedRingSpec::fermat(6, &[3, 2, 1, 1, 1])?;
    let h3 = hodge_h3_smooth(&smooth)?;
    if let Some(w) = h3.warnings.first() {
        return Err(Error::Internal(w.clone()));
    }
    let chi_smooth = SMOOTH_EVEN_BETTI_SUM - h3.h3 as i64;
    let milnor_numbers = vec![mu; num_singular_points];
    Ok(CohomologyInputs {
        h4_sigma: h4_sigma_total(local_h2_prim as u64, num_singular_points as u64),
        chi: chi_singular(chi_smooth, &milnor_numbers),
        milnor_numbers,
        h3_smooth: h3.h3,
        local_h2_prim,
        local_h2: local_h2_prim + 1,
        chi_smooth,
    })
}
