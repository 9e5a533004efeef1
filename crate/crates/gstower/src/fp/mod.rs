//! The degree-truncated free noncommutative algebra over F_p.
//!
//! Elements live in `F_p<u_1, ..., u_d>` with every monomial of degree
//! greater than the truncation bound `N` discarded. Monomials are words in
//! the generators; the canonical enumeration is degree-major, lexicographic
//! within a degree, so the full monomial basis maps onto the contiguous
//! index range `[0, Σ_{n<=N} d^n)`. That flat range is what the dense
//! subspace engine [`FpSubspace`] works over.

mod series;
mod subspace;

pub use series::{TruncatedSeries, Valuation};
pub use subspace::{FpSubspace, Strategy};

use crate::error::{Error, Result};

/// Ambient-dimension ceiling: `Σ_{n<=8} 3^n` monomials, the largest basis the
/// desk-scale budget admits (d=2 tops out at N=12, d=3 at N=8).
pub const AMBIENT_LIMIT: u64 = 9841;

/// Largest generator count supported by the budget.
pub const MAX_GENERATORS: usize = 3;

pub(crate) fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3u64;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

/// Modular inverse by Fermat; `p` prime, `a` nonzero mod `p`.
pub(crate) fn mod_inverse(a: u32, p: u32) -> u32 {
    let mut base = (a % p) as u64;
    let mut exp = p as u64 - 2;
    let m = p as u64;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u32
}

/// A word in the generators, stored as (degree, rank-within-degree).
///
/// `code` is the mixed-radix value of the letter sequence in base `d`, most
/// significant digit first, so the derived ordering (degree, then code) is
/// exactly the canonical enumeration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    deg: u32,
    code: u64,
}

impl Monomial {
    /// The empty word (degree 0).
    pub const ONE: Monomial = Monomial { deg: 0, code: 0 };

    pub fn degree(&self) -> usize {
        self.deg as usize
    }
}

/// Parameters of the truncated algebra: generator count, truncation degree,
/// odd prime modulus. Cheap to copy; every series carries one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FreeAlgebra {
    gens: usize,
    max_deg: usize,
    p: u32,
}

impl FreeAlgebra {
    /// Checks the modulus and the desk-scale capacity budget.
    pub fn new(gens: usize, max_deg: usize, p: u32) -> Result<Self> {
        if !is_odd_prime(p as u64) {
            return Err(Error::Parameter(format!("modulus {p} is not an odd prime")));
        }
        if gens == 0 || gens > MAX_GENERATORS {
            return Err(Error::Capacity {
                gens,
                max_deg,
                needed: 0,
                limit: AMBIENT_LIMIT,
            });
        }
        if max_deg == 0 {
            return Err(Error::Parameter("truncation degree must be >= 1".into()));
        }
        let needed = ambient_dim_u128(gens, max_deg);
        if needed > AMBIENT_LIMIT as u128 {
            return Err(Error::Capacity {
                gens,
                max_deg,
                needed,
                limit: AMBIENT_LIMIT,
            });
        }
        Ok(FreeAlgebra { gens, max_deg, p })
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn max_degree(&self) -> usize {
        self.max_deg
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Number of monomials of degree at most the truncation bound.
    pub fn ambient_dim(&self) -> usize {
        ambient_dim_u128(self.gens, self.max_deg) as usize
    }

    /// Number of monomials of degree exactly `n`.
    pub fn degree_count(&self, n: usize) -> u64 {
        (self.gens as u64).pow(n as u32)
    }

    /// Flat index of the first monomial of degree `n` (valid for `n <= N+1`).
    pub fn degree_offset(&self, n: usize) -> usize {
        if self.gens == 1 {
            n
        } else {
            let d = self.gens as u128;
            ((d.pow(n as u32) - 1) / (d - 1)) as usize
        }
    }

    pub fn flat_index(&self, m: Monomial) -> usize {
        self.degree_offset(m.deg as usize) + m.code as usize
    }

    pub fn monomial_at(&self, idx: usize) -> Monomial {
        debug_assert!(idx < self.ambient_dim());
        let mut deg = 0usize;
        while self.degree_offset(deg + 1) <= idx {
            deg += 1;
        }
        Monomial {
            deg: deg as u32,
            code: (idx - self.degree_offset(deg)) as u64,
        }
    }

    /// Concatenation `a·b`, or `None` when the product degree exceeds `N`.
    pub fn concat(&self, a: Monomial, b: Monomial) -> Option<Monomial> {
        let deg = a.deg + b.deg;
        if deg as usize > self.max_deg {
            return None;
        }
        Some(Monomial {
            deg,
            code: a.code * (self.gens as u64).pow(b.deg) + b.code,
        })
    }

    pub fn monomial_from_letters(&self, letters: &[usize]) -> Result<Monomial> {
        if letters.len() > self.max_deg {
            return Err(Error::Parameter(format!(
                "monomial degree {} exceeds truncation {}",
                letters.len(),
                self.max_deg
            )));
        }
        let mut code = 0u64;
        for &l in letters {
            if l >= self.gens {
                return Err(Error::GeneratorIndex {
                    index: l,
                    gens: self.gens,
                });
            }
            code = code * self.gens as u64 + l as u64;
        }
        Ok(Monomial {
            deg: letters.len() as u32,
            code,
        })
    }

    pub fn letters(&self, m: Monomial) -> Vec<usize> {
        let mut out = vec![0usize; m.deg as usize];
        let mut code = m.code;
        for slot in out.iter_mut().rev() {
            *slot = (code % self.gens as u64) as usize;
            code /= self.gens as u64;
        }
        out
    }
}

fn ambient_dim_u128(gens: usize, max_deg: usize) -> u128 {
    let d = gens as u128;
    if d == 1 {
        max_deg as u128 + 1
    } else {
        let mut dim = 0u128;
        let mut pow = 1u128;
        for _ in 0..=max_deg {
            dim += pow;
            pow = pow.saturating_mul(d);
        }
        dim
    }
}
