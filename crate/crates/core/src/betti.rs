//! Integer feasibility of the weight-graded Betti numbers `w23`, `w33` from a
//! single point count, and the resulting `h^4(Y)` and Mordell-Weil rank.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};

pub const ASSUMPTION_NOTE: &str = "rank = h4 - 1 assumes H^4(Y) is pure of type (2,2), \
     as H^4_Sigma(Y) is; this purity step is cited, not computed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BettiInputs {
    pub p: u64,
    pub count: i64,
    pub h4_sigma: i64,
    pub chi: i64,
}

impl BettiInputs {
    pub fn new(p: u64, count: i64, h4_sigma: i64, chi: i64) -> Result<Self> {
        let inp = BettiInputs {
            p,
            count,
            h4_sigma,
            chi,
        };
        inp.validate()?;
        Ok(inp)
    }

    /// The threefold's own invariants: h4_sigma = 18, chi = -2.
    pub fn builtin(p: u64, count: i64) -> Result<Self> {
        Self::new(p, count, 18, -2)
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.p;
        if p < 7 || !is_prime(p) {
            return Err(Error::UnsupportedCharacteristic {
                p,
                reason: "need a prime p >= 7",
            });
        }
        if p % 3 != 1 {
            return Err(Error::UnsupportedCharacteristic {
                p,
                reason: "need p = 1 mod 3",
            });
        }
        debug_assert_eq!(p % 6, 1);
        if self.count <= 0 {
            return Err(Error::InvalidInput(format!(
                "point count must be positive, got {}",
                self.count
            )));
        }
        Ok(())
    }

    /// A = p^3 + (h4_sigma + 1) p^2 + p + 1 - N.
    pub fn a(&self) -> BigInt {
        let p = BigInt::from(self.p);
        &p * &p * &p + BigInt::from(self.h4_sigma + 1) * &p * &p + &p + 1 - self.count
    }

    /// C = h4_sigma + 4 - chi.
    pub fn c(&self) -> i64 {
        self.h4_sigma + 4 - self.chi
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Every w in [0, C/2] with ((p + p^2) w - A)^2 <= (C - 2w)^2 p^3.
pub fn feasible_w23_unchecked(inp: &BettiInputs) -> Vec<i64> {
    let p = BigInt::from(inp.p);
    let a = inp.a();
    let c = inp.c();
    let slope = &p + &p * &p;
    let p3 = &p * &p * &p;
    (0..=c.div_euclid(2))
        .filter(|&w| {
            let lhs = &slope * w - &a;
            let room = BigInt::from(c - 2 * w);
            &lhs * &lhs <= &room * &room * &p3
        })
        .collect()
}

pub fn feasible_w23(inp: &BettiInputs) -> Result<Vec<i64>> {
    inp.validate()?;
    let set = feasible_w23_unchecked(inp);
    if set.is_empty() {
        return Err(Error::InconsistentInputs);
    }
    Ok(set)
}

/// `a + b sqrt(n)` with integer parts, n > 0 not a square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurd {
    pub a: BigInt,
    pub b: BigInt,
    pub n: BigInt,
}

impl QuadSurd {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, n: impl Into<BigInt>) -> Self {
        QuadSurd {
            a: a.into(),
            b: b.into(),
            n: n.into(),
        }
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigInt::zero());
        let sb = self.b.cmp(&BigInt::zero());
        if sb == Ordering::Equal || sa == sb {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: the larger magnitude wins
        let a2 = &self.a * &self.a;
        let b2n = &self.b * &self.b * &self.n;
        match a2.cmp(&b2n) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadSurd {
            a: &self.a * k,
            b: &self.b * k,
            n: self.n.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        QuadSurd {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            n: self.n.clone(),
        }
    }
}

/// The same set from the two unsquared bounds
/// (A - C p^{3/2}) / (p^2 - 2p^{3/2} + p) <= w <= (A + C p^{3/2}) / (p^2 + 2p^{3/2} + p),
/// compared exactly in Z[sqrt p] after clearing the positive denominators.
pub fn feasible_w23_closed_form(inp: &BettiInputs) -> Vec<i64> {
    let p = BigInt::from(inp.p);
    let a = inp.a();
    let c = BigInt::from(inp.c());
    let pp = &p * &p + &p;
    let lower_den = QuadSurd::new(pp.clone(), -BigInt::from(2) * &p, p.clone());
    let upper_den = QuadSurd::new(pp, BigInt::from(2) * &p, p.clone());
    let lower_num = QuadSurd::new(a.clone(), -(&c * &p), p.clone());
    let upper_num = QuadSurd::new(a, &c * &p, p.clone());
    (0..=inp.c().div_euclid(2))
        .filter(|&w| {
            let w = BigInt::from(w);
            lower_den.scale(&w).sub(&lower_num).signum() != Ordering::Less
                && upper_num.sub(&upper_den.scale(&w)).signum() != Ordering::Less
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiResult {
    pub feasible_w23: Vec<i64>,
    pub w23: i64,
    pub w33: i64,
    pub h4: i64,
    pub rank: i64,
    pub assumption_note: String,
}

pub fn resolve(inp: &BettiInputs) -> Result<BettiResult> {
    let set = feasible_w23(inp)?;
    let [w23] = set[..] else {
        return Err(Error::Inconclusive { feasible: set });
    };
    let w33 = inp.h4_sigma + 4 - 2 * w23 - inp.chi;
    let h4 = inp.h4_sigma + 1 - w23;
    let rank = h4 - 1;
    if w33 < 0 || rank < 0 {
        return Err(Error::Internal(format!(
            "negative derived value: w33 = {w33}, rank = {rank}"
        )));
    }
    Ok(BettiResult {
        feasible_w23: set,
        w23,
        w33,
        h4,
        rank,
        assumption_note: ASSUMPTION_NOTE.to_string(),
    })
}

/// 1 + p(1 - w23) + p^2 h4 + p^3, the count forced when w33 = 0.
pub fn predicted_count(p: u64, w23: i64, h4: i64) -> i64 {
    let p = p as i64;
    1 + p * (1 - w23) + p * p * h4 + p * p * p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inp(p: u64, n: i64) -> BettiInputs {
        BettiInputs::builtin(p, n).unwrap()
    }

    #[test]
    fn headline_prime() {
        assert_eq!(feasible_w23(&inp(7, 610)).unwrap(), vec![12]);
        let r = resolve(&inp(7, 610)).unwrap();
        assert_eq!((r.w23, r.w33, r.h4, r.rank), (12, 0, 7, 6));
        assert_eq!(r.w33, 18 + 4 + 2 - 24);
    }

    #[test]
    fn perturbed_counts() {
        assert_eq!(feasible_w23(&inp(7, 611)), Err(Error::InconsistentInputs));
        // a shift of 100 lands inside a wider band
        assert_eq!(feasible_w23(&inp(7, 710)).unwrap(), vec![7, 8, 9, 10]);
        assert!(matches!(
            resolve(&inp(7, 710)),
            Err(Error::Inconclusive { .. })
        ));
    }

    #[test]
    fn thirteen() {
        assert_eq!(feasible_w23(&inp(13, 3238)).unwrap(), vec![12]);
    }

    #[test]
    fn two_element_set_is_inconclusive() {
        let n = (1..2000)
            .find(|&n| feasible_w23_unchecked(&inp(7, n)).len() == 2)
            .expect("some count gives two candidates");
        match resolve(&inp(7, n)) {
            Err(Error::Inconclusive { feasible }) => assert_eq!(feasible.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn predicted_counts() {
        assert_eq!(predicted_count(7, 12, 7), 610);
        assert_eq!(predicted_count(13, 12, 7), 3238);
        assert_eq!(predicted_count(19, 12, 7), 9178);
        for p in [7i64, 13, 19, 31] {
            assert_eq!(
                predicted_count(p as u64, 12, 7),
                p * p * p + 7 * p * p - 11 * p + 1
            );
        }
    }

    #[test]
    fn round_trip_over_primes() {
        for p in [7u64, 13, 19, 31] {
            let n = predicted_count(p, 12, 7);
            assert_eq!(feasible_w23(&inp(p, n)).unwrap(), vec![12], "p = {p}");
        }
    }

    #[test]
    fn closed_form_agrees() {
        for p in [7u64, 13, 19, 31] {
            for n in (1..3 * (p * p * p) as i64).step_by(7) {
                let i = inp(p, n);
                assert_eq!(
                    feasible_w23_unchecked(&i),
                    feasible_w23_closed_form(&i),
                    "p={p} N={n}"
                );
            }
        }
    }

    #[test]
    fn shifting_count_shifts_w() {
        for p in [7u64, 13] {
            let step = (p + p * p) as i64;
            for n in 1..3000 {
                let before = feasible_w23_unchecked(&inp(p, n));
                let after = feasible_w23_unchecked(&inp(p, n + step));
                for w in before.iter().filter(|&&w| w >= 1) {
                    assert!(after.contains(&(w - 1)), "p={p} N={n} w={w}");
                }
            }
        }
    }

    #[test]
    fn surd_signs() {
        assert_eq!(QuadSurd::new(3, -1, 7).signum(), Ordering::Greater);
        assert_eq!(QuadSurd::new(2, -1, 7).signum(), Ordering::Less);
        assert_eq!(QuadSurd::new(-3, 1, 7).signum(), Ordering::Less);
        assert_eq!(QuadSurd::new(0, 0, 7).signum(), Ordering::Equal);
        assert_eq!(QuadSurd::new(0, -2, 7).signum(), Ordering::Less);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(BettiInputs::builtin(5, 100).is_err());
        assert!(BettiInputs::builtin(11, 100).is_err());
        assert!(BettiInputs::builtin(7, 0).is_err());
        assert!(BettiInputs::builtin(49, 100).is_err());
    }
}
