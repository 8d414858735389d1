//! Sparse multivariate polynomials with per-variable weights.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::coeff::Coefficient;
use super::field::PrimeField;
use super::modp::ModPoly;
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically (total degree first, then lex).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A polynomial in named, weighted variables with exact coefficients.
///
/// Terms are kept in a map keyed by exponent vector, so exponents are unique and
/// zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WPolynomial<C> {
    vars: Vec<String>,
    weights: Vec<u32>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coefficient> WPolynomial<C> {
    /// The zero polynomial in the given space.
    pub fn zero<S: AsRef<str>>(vars: &[S], weights: &[u32]) -> Result<Self> {
        if vars.len() != weights.len() {
            return Err(Error::InvalidSpace(format!(
                "{} variables but {} weights",
                vars.len(),
                weights.len()
            )));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) || v == "omega" {
                return Err(Error::InvalidSpace(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidSpace(format!("duplicate variable `{v}`")));
            }
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidSpace("weights must be positive".into()));
        }
        Ok(Self {
            vars,
            weights: weights.to_vec(),
            terms: BTreeMap::new(),
        })
    }

    fn empty_like(&self) -> Self {
        Self {
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_like(&self, c: C) -> Self {
        let mut out = self.empty_like();
        out.add_term(Monomial::one(self.vars.len()), c);
        out
    }

    /// The `i`-th variable as a polynomial in the space of `self`.
    pub fn variable_like(&self, i: usize) -> Self {
        let mut e = vec![0; self.vars.len()];
        e[i] = 1;
        let mut out = self.empty_like();
        out.add_term(Monomial(e), C::one());
        out
    }

    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        weights: &[u32],
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Result<Self> {
        let mut out = Self::zero(vars, weights)?;
        for (e, c) in terms {
            if e.len() != out.vars.len() {
                return Err(Error::InvalidSpace(
                    "exponent vector length mismatch".into(),
                ));
            }
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one(self.vars.len()))
    }

    /// Weighted degree if every term has the same weighted degree for `weights`.
    pub fn homogeneous_degree_for(&self, weights: &[u32]) -> Option<u64> {
        if weights.len() != self.vars.len() {
            return None;
        }
        let mut degrees = self.terms.keys().map(|m| m.weighted_degree(weights));
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn homogeneous_degree(&self) -> Option<u64> {
        self.homogeneous_degree_for(&self.weights)
    }

    pub fn is_weighted_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn with_weights(&self, weights: &[u32]) -> Result<Self> {
        let mut out = Self::zero(&self.vars, weights)?;
        out.terms = self.terms.clone();
        Ok(out)
    }

    fn assert_same_space(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomials live in different spaces"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_space(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.empty_like();
        out.terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_space(other);
        let mut out = self.empty_like();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = self.empty_like();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut acc = self.constant_like(C::one());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.0.clone();
            d[i] -= 1;
            out.add_term(Monomial(d), C::from_integer(BigInt::from(e)) * c.clone());
        }
        out
    }

    pub fn derivative(&self, var: &str) -> Result<Self> {
        let i = self.var_index(var).ok_or_else(|| Error::UnknownVariable {
            name: var.to_string(),
            offset: 0,
        })?;
        Ok(self.partial_derivative(i))
    }

    /// Exchanges the exponents of variables `i` and `j` (names stay in place).
    pub fn swap_variables(&self, i: usize, j: usize) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.swap(i, j);
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    pub fn map_coefficients<D: Coefficient>(
        &self,
        mut f: impl FnMut(&C) -> Option<D>,
    ) -> Option<WPolynomial<D>> {
        let mut out = WPolynomial::<D> {
            vars: self.vars.clone(),
            weights: self.weights.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Some(out)
    }

    pub fn uses_omega(&self) -> bool {
        self.terms.values().any(|c| c.uses_omega())
    }

    /// Reduces coefficients mod p and packs the polynomial for fast evaluation.
    pub fn compile(&self, field: &PrimeField, omega_image: Option<u64>) -> Result<ModPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((c.reduce(field, omega_image)?, m.0.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModPoly::new(field, self.vars.len(), terms))
    }

    /// Compiles with omega sent to the smallest primitive cube root when needed.
    pub fn compile_default(&self, field: &PrimeField) -> Result<ModPoly> {
        let omega = if self.uses_omega() {
            Some(field.primitive_cube_root().map_err(|_| Error::Reduction {
                p: field.p(),
                reason: "omega coefficient needs p = 1 mod 3".into(),
            })?)
        } else {
            None
        };
        self.compile(field, omega)
    }

    pub fn evaluate_mod_p(
        &self,
        field: &PrimeField,
        point: &[u64],
        omega_image: Option<u64>,
    ) -> Result<u64> {
        if point.len() != self.vars.len() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.vars.len()
            )));
        }
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut t = c.reduce(field, omega_image)?;
            for (&x, &e) in point.iter().zip(&m.0) {
                t = field.mul(t, field.pow(x, e as u64));
            }
            acc = field.add(acc, t);
        }
        Ok(acc)
    }

    fn monomial_text(&self, m: &Monomial) -> String {
        m.0.iter()
            .zip(&self.vars)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| {
                if e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl<C: Coefficient> fmt::Display for WPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (negative, mag) = c.sign_split();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = self.monomial_text(m);
            if mono.is_empty() {
                write!(f, "{}", mag.magnitude_text(true))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", mag.magnitude_text(true))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coeff::EisensteinInt;
    use crate::algebra::parse::parse_polynomial;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(text: &str, vars: &[&str], weights: &[u32]) -> WPolynomial<Q> {
        parse_polynomial(text, vars, weights).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let f = q("y^2 - x^3", &["x", "y"], &[2, 3]);
        assert_eq!(f.derivative("y").unwrap(), q("2*y", &["x", "y"], &[2, 3]));
        let g = q("y^2", &["x", "y"], &[2, 3]);
        assert!(g.derivative("x").unwrap().is_zero());
    }

    #[test]
    fn equality_is_ordering_independent() {
        let a = q("x + y^2 - 3", &["x", "y"], &[1, 1]);
        let b = q("-3 + y*y + x", &["x", "y"], &[1, 1]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "y^2 + x - 3");
    }

    #[test]
    fn omega_evaluation() {
        let f: WPolynomial<EisensteinInt> = parse_polynomial("omega*x", &["x"], &[1]).unwrap();
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f.evaluate_mod_p(&f7, &[1], Some(2)).unwrap(), 2);
        let f5 = PrimeField::new(5).unwrap();
        assert!(f.compile_default(&f5).is_err());
    }

    #[test]
    fn cancelling_terms_are_dropped() {
        let f = q("x*y - y*x", &["x", "y"], &[1, 1]);
        assert!(f.is_zero());
        assert_eq!(f.to_string(), "0");
        assert_eq!(f.homogeneous_degree(), None);
    }
}
