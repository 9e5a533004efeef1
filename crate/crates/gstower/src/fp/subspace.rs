//! Row-echelon subspace engine over F_p.
//!
//! Rows are dense `u32` vectors kept in reduced row-echelon form with
//! strictly increasing pivots, so rank, membership, and quotient dimensions
//! are all read off directly. Reduction of a candidate vector against the
//! basis is a single linear combination (in RREF the multiplier at each
//! pivot column is the candidate's original entry there), which makes the
//! inner loop a plain fused multiply-add over machine words with the modular
//! reduction deferred to the end.

use super::{is_odd_prime, mod_inverse};
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the elimination loops.
///
/// `Parallel` requires the `parallel` feature; without it both variants run
/// the sequential code. Results are bit-identical either way: the parallel
/// reductions are exact commutative sums over machine integers, and the
/// reduced row-echelon basis of a subspace is unique.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Minimum number of scalar operations before the parallel path engages.
#[cfg(feature = "parallel")]
const PAR_MIN_WORK: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct FpSubspace {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    strategy: Strategy,
}

impl FpSubspace {
    pub fn new(p: u32, dim: usize) -> Result<Self> {
        Self::with_strategy(p, dim, Strategy::default())
    }

    pub fn with_strategy(p: u32, dim: usize, strategy: Strategy) -> Result<Self> {
        if !is_odd_prime(p as u64) && p != 2 {
            return Err(Error::Parameter(format!("modulus {p} is not prime")));
        }
        Ok(FpSubspace {
            p,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            strategy,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    fn check_dim(&self, v: &[u32]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Reduces `v` modulo the row space. Entries of the result are reduced
    /// mod p; the result is zero iff `v` lies in the span.
    fn reduce(&self, v: &[u32]) -> Vec<u64> {
        let p = self.p as u64;
        let mut acc: Vec<u64> = v.iter().map(|&x| x as u64 % p).collect();
        // RREF: pivot columns are untouched by the other rows, so all
        // multipliers can be read off the original vector up front.
        let mults: Vec<u64> = self.pivots.iter().map(|&c| acc[c]).collect();
        let active: Vec<usize> = (0..self.rows.len()).filter(|&i| mults[i] != 0).collect();
        if active.is_empty() {
            return acc;
        }

        let work: usize = active.iter().map(|&i| self.dim - self.pivots[i]).sum();
        match self.strategy {
            #[cfg(feature = "parallel")]
            Strategy::Parallel if work >= PAR_MIN_WORK => {
                let nchunks = rayon::current_num_threads().max(1) * 4;
                let chunk = (active.len() / nchunks).max(8);
                let partial = active
                    .par_chunks(chunk)
                    .map(|idxs| {
                        let mut local = vec![0u64; self.dim];
                        for &i in idxs {
                            let m = p - mults[i];
                            let start = self.pivots[i];
                            let row = &self.rows[i];
                            for (slot, &x) in local[start..].iter_mut().zip(&row[start..]) {
                                *slot += m * x as u64;
                            }
                        }
                        local
                    })
                    .reduce(
                        || vec![0u64; self.dim],
                        |mut a, b| {
                            for (x, y) in a.iter_mut().zip(b) {
                                *x += y;
                            }
                            a
                        },
                    );
                for (x, y) in acc.iter_mut().zip(partial) {
                    *x = (*x + y) % p;
                }
            }
            _ => {
                let _ = work;
                for &i in &active {
                    let m = p - mults[i];
                    let start = self.pivots[i];
                    let row = &self.rows[i];
                    for (slot, &x) in acc[start..].iter_mut().zip(&row[start..]) {
                        *slot += m * x as u64;
                    }
                }
                for x in acc.iter_mut() {
                    *x %= p;
                }
            }
        }
        // No overflow: each entry accumulates at most rank*(p-1)^2 + (p-1),
        // far below u64 for the desk-scale budget.
        acc
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        self.check_dim(v)?;
        Ok(self.reduce(v).iter().all(|&x| x == 0))
    }

    /// Inserts `v` if it is independent of the current rows. Returns whether
    /// the rank grew. The reduced row-echelon invariant is restored before
    /// returning, so insertion is idempotent.
    pub fn insert(&mut self, v: &[u32]) -> Result<bool> {
        self.check_dim(v)?;
        let reduced = self.reduce(v);
        let Some(lead) = reduced.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        let p = self.p as u64;
        let inv = mod_inverse(reduced[lead] as u32, self.p) as u64;
        let mut row = vec![0u32; self.dim];
        for (slot, &x) in row[lead..].iter_mut().zip(&reduced[lead..]) {
            *slot = (x * inv % p) as u32;
        }

        // Clear the new pivot column in the existing rows.
        self.eliminate_column(lead, &row);

        let pos = match self.pivots.binary_search(&lead) {
            Ok(_) => unreachable!("pivot column {lead} already occupied"),
            Err(pos) => pos,
        };
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
        Ok(true)
    }

    fn eliminate_column(&mut self, col: usize, new_row: &[u32]) {
        let p = self.p as u64;
        let width = self.dim - col;
        let body = |r: &mut Vec<u32>| {
            let f = r[col] as u64;
            if f == 0 {
                return;
            }
            let m = p - f;
            for (slot, &x) in r[col..].iter_mut().zip(&new_row[col..]) {
                *slot = ((*slot as u64 + m * x as u64) % p) as u32;
            }
        };
        match self.strategy {
            #[cfg(feature = "parallel")]
            Strategy::Parallel if self.rows.len() * width >= PAR_MIN_WORK => {
                self.rows.par_iter_mut().for_each(body);
            }
            _ => {
                let _ = width;
                self.rows.iter_mut().for_each(body);
            }
        }
    }

    /// Number of pivots lying in the half-open column range.
    pub fn pivots_in_range(&self, lo: usize, hi: usize) -> usize {
        self.pivots.iter().filter(|&&c| lo <= c && c < hi).count()
    }

    #[cfg(test)]
    fn assert_rref(&self) {
        for (i, (&c, row)) in self.pivots.iter().zip(&self.rows).enumerate() {
            assert_eq!(row[c], 1, "pivot entry normalized");
            assert!(row[..c].iter().all(|&x| x == 0), "left of pivot is zero");
            if i > 0 {
                assert!(self.pivots[i - 1] < c, "pivots strictly increasing");
            }
            for (j, other) in self.rows.iter().enumerate() {
                if j != i {
                    assert_eq!(other[c], 0, "pivot column cleared elsewhere");
                }
            }
        }
    }
}
