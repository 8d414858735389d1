//! Point counts of hypersurfaces in weighted projective space over F_p.
//!
//! Two numbers are reported for a weighted-homogeneous `f` of positive degree:
//!
//! * `projective_count`: F_p-points of the hypersurface in P(w). Every such point
//!   lifts to exactly `p - 1` nonzero F_p-points of the cone, so this is
//!   `(cone - 1) / (p - 1)`.
//! * `orbit_count`: orbits of F_p^* acting by `lambda . x_i = lambda^{w_i} x_i` on
//!   the nonzero cone points. It exceeds `projective_count` by the points with
//!   nontrivial stabilizer, and agrees with it when every stabilizer is trivial.
//!
//! Each method computes both, by a different route.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_integer::Integer;
use serde::Serialize;

use crate::algebra::{Coefficient, ModPoly, PrimeField, WPolynomial};
use crate::enumerate::{cube_size, sum_over_cube, CountOptions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedSpace {
    weights: Vec<u32>,
}

impl WeightedSpace {
    pub fn new(weights: &[u32]) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidSpace(format!(
                "weights must be a nonempty list of positive integers, got {weights:?}"
            )));
        }
        Ok(Self {
            weights: weights.to_vec(),
        })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.weights.len() - 1
    }

    /// gcd of the weights of the nonzero coordinates of `point` (0 for the origin).
    pub fn support_gcd(&self, point: &[u64]) -> u32 {
        point
            .iter()
            .zip(&self.weights)
            .filter(|(&x, _)| x != 0)
            .fold(0, |g, (_, &w)| g.gcd(&w))
    }

    /// Size of the stabilizer of a nonzero point in F_p^*.
    pub fn stabilizer_size(&self, field: &PrimeField, point: &[u64]) -> u64 {
        (self.support_gcd(point) as u64).gcd(&(field.p() - 1))
    }

    /// `lambda . point`.
    pub fn act(&self, field: &PrimeField, lambda: u64, point: &[u64]) -> Vec<u64> {
        point
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| field.mul(x, field.pow(lambda, w as u64)))
            .collect()
    }

    /// The orbit of `point` under F_p^*, sorted and without repetition.
    pub fn orbit(&self, field: &PrimeField, point: &[u64]) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = field.units().map(|l| self.act(field, l, point)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Canonical orbit representative: the orbit element that is smallest when
    /// coordinates are compared from the last one to the first.
    ///
    /// With this order the representative of (0:0:w:1:0) is itself, matching the
    /// usual way of writing such points with a trailing 1.
    pub fn canonical(&self, field: &PrimeField, point: &[u64]) -> Vec<u64> {
        field
            .units()
            .map(|l| self.act(field, l, point))
            .min_by(|a, b| a.iter().rev().cmp(b.iter().rev()))
            .unwrap_or_else(|| point.to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMethod {
    Naive,
    Burnside,
    WeierstrassFast,
}

impl CountMethod {
    pub const ALL: [CountMethod; 3] = [
        CountMethod::Naive,
        CountMethod::Burnside,
        CountMethod::WeierstrassFast,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CountMethod::Naive => "naive",
            CountMethod::Burnside => "burnside",
            CountMethod::WeierstrassFast => "weierstrass-fast",
        }
    }
}

impl fmt::Display for CountMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CountMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(CountMethod::Naive),
            "burnside" => Ok(CountMethod::Burnside),
            "weierstrass-fast" | "fast" => Ok(CountMethod::WeierstrassFast),
            other => Err(Error::InvalidInput(format!("unknown method `{other}`"))),
        }
    }
}

/// Cone, projective and orbit counts of one hypersurface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrbitCounts {
    pub cone: u64,
    pub projective: u64,
    pub orbits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub p: u64,
    pub cone_count: u64,
    pub projective_count: u64,
    pub orbit_count: u64,
    pub method: CountMethod,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn exact_div(num: u64, den: u64, what: &str) -> Result<u64> {
    if num % den != 0 {
        return Err(Error::Internal(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    Ok(num / den)
}

/// Number of points of F_p^n where `f` vanishes.
pub fn count_cone_naive<C: Coefficient>(
    field: &PrimeField,
    f: &WPolynomial<C>,
    opts: &CountOptions,
) -> Result<u64> {
    let g = f.compile_default(field)?;
    count_cone_compiled(field, &g, opts)
}

fn count_cone_compiled(field: &PrimeField, g: &ModPoly, opts: &CountOptions) -> Result<u64> {
    sum_over_cube(field.p(), g.nvars(), opts, |v| u64::from(g.eval(v) == 0))
}

/// `T[c] = #{(x, y) : y^2 = x^3 + c}` for every `c` in F_p.
pub fn weierstrass_table(field: &PrimeField) -> Vec<u64> {
    let p = field.p();
    let cubes: Vec<u64> = (0..p).map(|x| field.pow(x, 3)).collect();
    (0..p)
        .map(|c| {
            cubes
                .iter()
                .map(|&x3| field.sqrt_count(field.add(x3, c)))
                .sum()
        })
        .collect()
}

/// Cone count of `y^2 = x^3 + f_base(z)` as `sum_z T[f_base(z)]`.
pub fn count_cone_weierstrass<C: Coefficient>(
    field: &PrimeField,
    f_base: &WPolynomial<C>,
    opts: &CountOptions,
) -> Result<u64> {
    let p = field.p();
    opts.check(cube_size(p, f_base.num_vars()) + (p as u128) * (p as u128))?;
    let table = weierstrass_table(field);
    let g = f_base.compile_default(field)?;
    sum_over_cube(p, g.nvars(), opts, |z| table[g.eval(z) as usize])
}

/// `f = a (y^2 - x^3) + rest` with `a = +-1` and `rest` free of x and y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassSplit<C> {
    pub x: usize,
    pub y: usize,
    /// `f_base` with `f = 0` equivalent to `y^2 = x^3 + f_base`, in the remaining variables.
    pub base: WPolynomial<C>,
}

pub fn split_weierstrass<C: Coefficient>(f: &WPolynomial<C>) -> Result<WeierstrassSplit<C>> {
    let n = f.num_vars();
    let sole_term = |i: usize| -> Option<(Vec<u32>, C)> {
        let mut it = f.terms().filter(|(m, _)| m.0[i] > 0);
        let (m, c) = it.next()?;
        it.next().is_none().then(|| (m.0.clone(), c.clone()))
    };
    let pure = |e: &[u32], i: usize, k: u32| {
        e.iter()
            .enumerate()
            .all(|(j, &x)| x == if j == i { k } else { 0 })
    };
    for y in 0..n {
        let Some((ey, a)) = sole_term(y) else {
            continue;
        };
        if !pure(&ey, y, 2) || !(a.is_one() || (-a.clone()).is_one()) {
            continue;
        }
        for x in (0..n).filter(|&x| x != y) {
            let Some((ex, b)) = sole_term(x) else {
                continue;
            };
            if !pure(&ex, x, 3) || b != -a.clone() {
                continue;
            }
            let keep: Vec<usize> = (0..n).filter(|&i| i != x && i != y).collect();
            let names: Vec<&str> = keep.iter().map(|&i| f.vars()[i].as_str()).collect();
            let weights: Vec<u32> = keep.iter().map(|&i| f.weights()[i]).collect();
            // y^2 = x^3 - a * rest, since 1/a = a
            let rest = f
                .terms()
                .filter(|(m, _)| m.0[x] == 0 && m.0[y] == 0)
                .map(|(m, c)| {
                    let e = keep.iter().map(|&i| m.0[i]).collect();
                    (e, -(a.clone() * c.clone()))
                });
            let base = WPolynomial::from_terms(&names, &weights, rest)?;
            return Ok(WeierstrassSplit { x, y, base });
        }
    }
    Err(Error::NotWeierstrass(f.to_string()))
}

fn validate<C: Coefficient>(f: &WPolynomial<C>, space: &WeightedSpace) -> Result<u64> {
    if f.num_vars() != space.len() {
        return Err(Error::InvalidSpace(format!(
            "polynomial has {} variables, space has {} coordinates",
            f.num_vars(),
            space.len()
        )));
    }
    match f.homogeneous_degree_for(space.weights()) {
        Some(d) if d > 0 => Ok(d),
        _ => Err(Error::NotHomogeneous {
            weights: space.weights().to_vec(),
        }),
    }
}

/// Fixed-point counts `(lambda, #Fix(lambda))` on the nonzero cone points, for
/// every lambda in F_p^* (or every lambda != 1).
fn fixed_point_counts(
    field: &PrimeField,
    g: &ModPoly,
    space: &WeightedSpace,
    include_identity: bool,
    opts: &CountOptions,
) -> Result<Vec<(u64, u64)>> {
    let p = field.p();
    let mut by_mask: BTreeMap<Vec<bool>, Vec<u64>> = BTreeMap::new();
    for lambda in field.units().filter(|&l| include_identity || l != 1) {
        let mask: Vec<bool> = space
            .weights()
            .iter()
            .map(|&w| field.pow(lambda, w as u64) == 1)
            .collect();
        by_mask.entry(mask).or_default().push(lambda);
    }
    let required: u128 = by_mask
        .keys()
        .map(|m| cube_size(p, m.iter().filter(|&&k| k).count()))
        .sum();
    opts.check(required)?;
    let mut out = Vec::new();
    for (mask, lambdas) in by_mask {
        let restricted = g.restrict(&mask);
        let fix = count_cone_compiled(field, &restricted, opts)? - 1;
        out.extend(lambdas.into_iter().map(|l| (l, fix)));
    }
    out.sort_unstable();
    Ok(out)
}

/// Brute force over the cone, weighting each nonzero solution by its stabilizer.
pub fn count_orbits_naive<C: Coefficient>(
    field: &PrimeField,
    f: &WPolynomial<C>,
    space: &WeightedSpace,
    opts: &CountOptions,
) -> Result<OrbitCounts> {
    validate(f, space)?;
    let g = f.compile_default(field)?;
    let p = field.p();
    // high half: solutions, low half: stabilizer sizes of nonzero solutions
    let packed: u128 = sum_over_cube(p, g.nvars(), opts, |v| {
        if g.eval(v) != 0 {
            0
        } else if v.iter().all(|&x| x == 0) {
            1u128 << 64
        } else {
            (1u128 << 64) + space.stabilizer_size(field, v) as u128
        }
    })?;
    let cone = (packed >> 64) as u64;
    let stab_total = packed as u64;
    let projective = exact_div(cone - 1, p - 1, "naive projective count")?;
    let orbits = exact_div(stab_total, p - 1, "stabilizer-weighted orbit count")?;
    Ok(OrbitCounts {
        cone,
        projective,
        orbits,
    })
}

/// Burnside's lemma: `orbits = (1/(p-1)) sum_lambda #Fix(lambda)`, where
/// `Fix(lambda)` lives on the coordinates with `lambda^{w_i} = 1`.
pub fn count_projective_burnside<C: Coefficient>(
    field: &PrimeField,
    f: &WPolynomial<C>,
    space: &WeightedSpace,
    opts: &CountOptions,
) -> Result<OrbitCounts> {
    validate(f, space)?;
    let g = f.compile_default(field)?;
    let p = field.p();
    let fixed = fixed_point_counts(field, &g, space, true, opts)?;
    let total: u64 = fixed.iter().map(|(_, k)| k).sum();
    let identity = fixed[0].1;
    let orbits = exact_div(total, p - 1, "Burnside sum")?;
    let projective = exact_div(identity, p - 1, "identity fixed points")?;
    Ok(OrbitCounts {
        cone: identity + 1,
        projective,
        orbits,
    })
}

/// Character-sum cone count, with the nonidentity Burnside terms added for the orbit count.
pub fn count_weierstrass_fast<C: Coefficient>(
    field: &PrimeField,
    f: &WPolynomial<C>,
    space: &WeightedSpace,
    opts: &CountOptions,
) -> Result<OrbitCounts> {
    validate(f, space)?;
    let split = split_weierstrass(f)?;
    let p = field.p();
    let cone = count_cone_weierstrass(field, &split.base, opts)?;
    let g = f.compile_default(field)?;
    let nonidentity: u64 = fixed_point_counts(field, &g, space, false, opts)?
        .iter()
        .map(|(_, k)| k)
        .sum();
    let projective = exact_div(cone - 1, p - 1, "fast projective count")?;
    let orbits = exact_div(cone - 1 + nonidentity, p - 1, "fast orbit count")?;
    Ok(OrbitCounts {
        cone,
        projective,
        orbits,
    })
}

pub fn count_projective<C: Coefficient>(
    field: &PrimeField,
    f: &WPolynomial<C>,
    space: &WeightedSpace,
    method: CountMethod,
    opts: &CountOptions,
) -> Result<CountReport> {
    let start = Instant::now();
    let counts = match method {
        CountMethod::Naive => count_orbits_naive(field, f, space, opts)?,
        CountMethod::Burnside => count_projective_burnside(field, f, space, opts)?,
        CountMethod::WeierstrassFast => count_weierstrass_fast(field, f, space, opts)?,
    };
    Ok(CountReport {
        p: field.p(),
        cone_count: counts.cone,
        projective_count: counts.projective,
        orbit_count: counts.orbits,
        method,
        elapsed: start.elapsed(),
    })
}
