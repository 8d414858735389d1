//! Prime fields F_p with p >= 5, with quadratic-character and cube-root tables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Largest supported characteristic. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    square_table: Vec<i8>,
    cube_roots: Vec<u64>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || p == 3 {
            return Err(Error::UnsupportedCharacteristic {
                p,
                reason: "characteristic 2 and 3 are excluded",
            });
        }
        if !is_prime(p) {
            return Err(Error::UnsupportedCharacteristic {
                p,
                reason: "not a prime",
            });
        }
        if p >= MAX_PRIME {
            return Err(Error::UnsupportedCharacteristic {
                p,
                reason: "prime too large",
            });
        }
        let mut square_table = vec![-1i8; p as usize];
        square_table[0] = 0;
        for y in 1..p {
            square_table[(y * y % p) as usize] = 1;
        }
        let cube_roots = (1..p).filter(|&c| c * c % p * c % p == 1).collect();
        Ok(Self {
            p,
            square_table,
            cube_roots,
        })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Quadratic character of `a` (taken mod p).
    #[inline]
    pub fn chi(&self, a: u64) -> i8 {
        self.square_table[(a % self.p) as usize]
    }

    /// Number of `y` with `y^2 = a`.
    #[inline]
    pub fn sqrt_count(&self, a: u64) -> u64 {
        (1 + self.chi(a)) as u64
    }

    pub fn square_table(&self) -> &[i8] {
        &self.square_table
    }

    /// All cube roots of unity, in increasing order.
    pub fn cube_roots(&self) -> &[u64] {
        &self.cube_roots
    }

    /// The smallest cube root of unity different from 1.
    pub fn primitive_cube_root(&self) -> Result<u64> {
        self.cube_roots
            .iter()
            .copied()
            .find(|&c| c != 1)
            .ok_or(Error::NoPrimitiveCubeRoot { p: self.p })
    }

    pub fn has_cube_roots(&self) -> bool {
        self.p % 3 == 1
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn reduce_bigint(&self, a: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = a.mod_floor(&m);
        debug_assert!(!r.is_negative());
        r.to_u64().expect("residue fits in u64")
    }

    /// Iterator over F_p^*.
    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_mod_seven() {
        let f = PrimeField::new(7).unwrap();
        let chis: Vec<i8> = (0..7).map(|a| f.chi(a)).collect();
        assert_eq!(chis, vec![0, 1, 1, -1, 1, -1, -1]);
    }

    #[test]
    fn quadratic_character_examples() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.chi(2), 1);
        assert_eq!(f.chi(0), 0);
        // exhaust y^2 mod 7
        let squares: Vec<u64> = (0..7u64).map(|y| y * y % 7).collect();
        assert!(!squares.contains(&3));
        assert_eq!(f.chi(3), -1);
    }

    #[test]
    fn cube_roots_and_primitive_root() {
        let f7 = PrimeField::new(7).unwrap();
        assert_eq!(f7.cube_roots(), &[1, 2, 4]);
        assert_eq!(f7.primitive_cube_root().unwrap(), 2);
        let f13 = PrimeField::new(13).unwrap();
        assert_eq!(f13.primitive_cube_root().unwrap(), 3);
        assert_eq!(f13.cube_roots(), &[1, 3, 9]);
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(f5.cube_roots(), &[1]);
        assert_eq!(
            f5.primitive_cube_root(),
            Err(Error::NoPrimitiveCubeRoot { p: 5 })
        );
    }

    #[test]
    fn rejects_bad_characteristic() {
        for p in [0, 1, 2, 3, 4, 9, 15, 91] {
            assert!(matches!(
                PrimeField::new(p),
                Err(Error::UnsupportedCharacteristic { .. })
            ));
        }
    }

    #[test]
    fn table_invariants_exhaustive() {
        for p in (5..100).filter(|&n| is_prime(n)) {
            let f = PrimeField::new(p).unwrap();
            let plus = (0..p).filter(|&a| f.chi(a) == 1).count() as u64;
            assert_eq!(plus, (p - 1) / 2);
            let total: u64 = (0..p).map(|a| f.sqrt_count(a)).sum();
            assert_eq!(total, p);
            for a in 1..p {
                for b in 1..p {
                    assert_eq!(f.chi(a * b % p), f.chi(a) * f.chi(b));
                }
            }
            let expected = if p % 3 == 1 { 3 } else { 1 };
            assert_eq!(f.cube_roots().len(), expected);
            for &c in f.cube_roots() {
                assert_eq!(f.pow(c, 3), 1);
            }
            if let Ok(w) = f.primitive_cube_root() {
                assert_eq!((w * w + w + 1) % p, 0);
            }
        }
    }
}
