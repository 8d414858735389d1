use super::field::PrimeField;

/// Power tables are only built below this many entries.
const TABLE_LIMIT: usize = 1 << 22;

/// A polynomial reduced mod p, packed for repeated evaluation.
#[derive(Debug, Clone)]
pub struct ModPoly {
    p: u64,
    nvars: usize,
    terms: Vec<(u64, Vec<u32>)>,
    // pows[i][x * stride[i] + e] = x^e
    pows: Option<Vec<Vec<u64>>>,
    stride: Vec<usize>,
}

impl ModPoly {
    pub(crate) fn new(field: &PrimeField, nvars: usize, terms: Vec<(u64, Vec<u32>)>) -> Self {
        let p = field.p();
        let terms: Vec<_> = terms.into_iter().filter(|(c, _)| *c != 0).collect();
        let stride: Vec<usize> = (0..nvars)
            .map(|i| terms.iter().map(|(_, e)| e[i]).max().unwrap_or(0) as usize + 1)
            .collect();
        let size: usize = stride.iter().map(|s| s * p as usize).sum();
        let pows = (size <= TABLE_LIMIT).then(|| {
            stride
                .iter()
                .map(|&s| {
                    let mut t = vec![0u64; s * p as usize];
                    for x in 0..p {
                        let mut acc = 1 % p;
                        for e in 0..s {
                            t[x as usize * s + e] = acc;
                            acc = acc * x % p;
                        }
                    }
                    t
                })
                .collect()
        });
        Self {
            p,
            nvars,
            terms,
            pows,
            stride,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> u64 {
        self.terms
            .iter()
            .find(|(_, e)| e.iter().all(|&k| k == 0))
            .map_or(0, |(c, _)| *c)
    }

    #[inline]
    pub fn eval(&self, point: &[u64]) -> u64 {
        debug_assert_eq!(point.len(), self.nvars);
        let p = self.p;
        let mut acc = 0u64;
        match &self.pows {
            Some(pows) => {
                for (c, e) in &self.terms {
                    let mut t = *c;
                    for (i, &k) in e.iter().enumerate() {
                        if k != 0 {
                            t = t * pows[i][point[i] as usize * self.stride[i] + k as usize] % p;
                        }
                    }
                    acc += t;
                    if acc >= p {
                        acc -= p;
                    }
                }
            }
            None => {
                for (c, e) in &self.terms {
                    let mut t = *c;
                    for (i, &k) in e.iter().enumerate() {
                        for _ in 0..k {
                            t = t * point[i] % p;
                        }
                    }
                    acc = (acc + t) % p;
                }
            }
        }
        acc
    }

    /// The polynomial restricted to the coordinate subspace where variables with
    /// `keep[i] == false` are zero, as a polynomial in the kept variables only.
    pub fn restrict(&self, keep: &[bool]) -> ModPoly {
        let field = PrimeField::new(self.p).expect("modulus was validated");
        let terms = self
            .terms
            .iter()
            .filter(|(_, e)| e.iter().zip(keep).all(|(&k, &kept)| kept || k == 0))
            .map(|(c, e)| {
                let e = e
                    .iter()
                    .zip(keep)
                    .filter(|(_, &kept)| kept)
                    .map(|(&k, _)| k)
                    .collect();
                (*c, e)
            })
            .collect();
        ModPoly::new(&field, keep.iter().filter(|&&k| k).count(), terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_and_direct_evaluation_agree() {
        let f = PrimeField::new(11).unwrap();
        let terms = vec![(3, vec![2, 1]), (10, vec![0, 3]), (5, vec![0, 0])];
        let mut with_tables = ModPoly::new(&f, 2, terms);
        let direct = ModPoly {
            pows: None,
            ..with_tables.clone()
        };
        for x in 0..11 {
            for y in 0..11 {
                let want = (3 * x * x * y + 10 * y * y * y + 5) % 11;
                assert_eq!(with_tables.eval(&[x, y]), want);
                assert_eq!(direct.eval(&[x, y]), want);
            }
        }
        with_tables = with_tables.restrict(&[false, true]);
        assert_eq!(with_tables.nvars(), 1);
        assert_eq!(with_tables.eval(&[2]), (80 + 5) % 11);
    }
}
