//! Exact rank over Q by incremental sparse elimination.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type SparseRow = BTreeMap<usize, BigRational>;

/// Reduced rows keyed by their leading column, each scaled to a leading one.
#[derive(Debug, Default, Clone)]
pub struct EchelonBasis {
    pivots: BTreeMap<usize, SparseRow>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `row` against the basis and keeps it if anything survives.
    /// Returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, _)) = row.iter().next() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(prow) => {
                    let factor = row[&lead].clone();
                    for (j, v) in prow {
                        let e = row.entry(*j).or_insert_with(BigRational::zero);
                        *e -= &factor * v;
                        if e.is_zero() {
                            row.remove(j);
                        }
                    }
                }
                None => {
                    let inv = row[&lead].recip();
                    if !inv.is_one() {
                        for v in row.values_mut() {
                            *v *= &inv;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rank_sparse(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut basis = EchelonBasis::new();
    for row in rows {
        basis.insert(row);
    }
    basis.rank()
}

/// Rank of a dense rational matrix.
pub fn rank(rows: Vec<Vec<BigRational>>) -> usize {
    rank_sparse(rows.into_iter().map(|r| {
        r.into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }))
}
