//! Sparse truncated power series and their ring operations.

use std::collections::BTreeMap;

use super::{mod_inverse, FreeAlgebra, Monomial};
use crate::error::{Error, Result};

/// Lowest degree of a series, or the certificate that every term (if any)
/// lies above the truncation bound. The truncated computation can never
/// distinguish "zero" from "supported in degrees > N", so it reports
/// `AboveTruncation`, meaning ">= N+1", rather than claiming infinity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Valuation {
    Finite(usize),
    AboveTruncation,
}

impl Valuation {
    /// Whether the valuation is known or certified to be at least `n`.
    pub fn at_least(&self, n: usize) -> bool {
        match self {
            Valuation::Finite(v) => *v >= n,
            Valuation::AboveTruncation => true,
        }
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            Valuation::Finite(v) => Some(*v),
            Valuation::AboveTruncation => None,
        }
    }
}

impl std::fmt::Display for Valuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AboveTruncation => write!(f, "above-truncation"),
        }
    }
}

/// Element of the truncated algebra: a sparse map monomial -> nonzero
/// residue. The zero series has an empty map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    alg: FreeAlgebra,
    terms: BTreeMap<Monomial, u32>,
}

impl TruncatedSeries {
    pub fn zero(alg: FreeAlgebra) -> Self {
        TruncatedSeries {
            alg,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: FreeAlgebra) -> Self {
        Self::constant(alg, 1)
    }

    pub fn constant(alg: FreeAlgebra, c: u32) -> Self {
        let mut terms = BTreeMap::new();
        let c = c % alg.modulus();
        if c != 0 {
            terms.insert(Monomial::ONE, c);
        }
        TruncatedSeries { alg, terms }
    }

    /// The generator `u_i`.
    pub fn gen(alg: FreeAlgebra, i: usize) -> Result<Self> {
        if i >= alg.gens() {
            return Err(Error::GeneratorIndex {
                index: i,
                gens: alg.gens(),
            });
        }
        let m = alg.monomial_from_letters(&[i])?;
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        Ok(TruncatedSeries { alg, terms })
    }

    pub fn from_terms<I>(alg: FreeAlgebra, it: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let mut s = Self::zero(alg);
        for (m, c) in it {
            if m.degree() > alg.max_degree() {
                return Err(Error::Parameter(format!(
                    "monomial degree {} exceeds truncation {}",
                    m.degree(),
                    alg.max_degree()
                )));
            }
            s.add_term(m, c as u64);
        }
        Ok(s)
    }

    pub fn algebra(&self) -> FreeAlgebra {
        self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coeff(&Monomial::ONE)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u32)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Monomial, c: u64) {
        let p = self.alg.modulus() as u64;
        let c = (c % p) as u32;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        *entry = ((*entry as u64 + c as u64) % p) as u32;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    fn check_compat(&self, other: &Self) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::param_mismatch(
                format!("{:?}", self.alg),
                format!("{:?}", other.alg),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c as u64);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let p = self.alg.modulus();
        let terms = self.terms.iter().map(|(&m, &c)| (m, p - c)).collect();
        TruncatedSeries {
            alg: self.alg,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn sub_one(&self) -> Self {
        let mut out = self.clone();
        out.add_term(Monomial::ONE, (self.alg.modulus() - 1) as u64);
        out
    }

    /// Noncommutative product; terms of degree beyond the bound vanish.
    ///
    /// Accumulates into a dense scratch buffer over the flat monomial range,
    /// so the cost is (number of degree-compatible term pairs) + (ambient
    /// dimension), not the naive pair count.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compat(other)?;
        let alg = self.alg;
        let p = alg.modulus() as u64;
        let mut scratch = vec![0u32; alg.ambient_dim()];
        for (&ma, &ca) in &self.terms {
            let room = alg.max_degree() - ma.degree();
            let hi = Monomial {
                deg: room as u32,
                code: u64::MAX,
            };
            for (&mb, &cb) in other.terms.range(..=hi) {
                let m = alg.concat(ma, mb).expect("degree bound enforced by range");
                let idx = alg.flat_index(m);
                scratch[idx] = ((scratch[idx] as u64 + ca as u64 * cb as u64) % p) as u32;
            }
        }
        let mut terms = BTreeMap::new();
        for (idx, &c) in scratch.iter().enumerate() {
            if c != 0 {
                terms.insert(alg.monomial_at(idx), c);
            }
        }
        Ok(TruncatedSeries { alg, terms })
    }

    /// `self^k` by binary exponentiation.
    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut acc = Self::one(self.alg);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Two-sided inverse of a unit, by Newton doubling: `b <- b(2 - ab)` is
    /// exact modulo degree `2^k` after `k` steps.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0 == 0 {
            return Err(Error::NonUnit);
        }
        let alg = self.alg;
        let two = Self::constant(alg, 2);
        let mut b = Self::constant(alg, mod_inverse(c0, alg.modulus()));
        let mut precision = 1usize;
        while precision <= alg.max_degree() {
            let correction = two.sub(&self.mul(&b)?)?;
            b = b.mul(&correction)?;
            precision *= 2;
        }
        Ok(b)
    }

    /// Minimal degree carrying a nonzero term; the zero series reports
    /// `AboveTruncation` (certified >= N+1, not infinity).
    pub fn lowest_degree(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(m) => Valuation::Finite(m.degree()),
            None => Valuation::AboveTruncation,
        }
    }

    /// Dense coefficient vector over the canonical flat monomial range.
    pub fn to_dense(&self) -> Vec<u32> {
        let mut v = vec![0u32; self.alg.ambient_dim()];
        for (&m, &c) in &self.terms {
            v[self.alg.flat_index(m)] = c;
        }
        v
    }

    pub fn from_dense(alg: FreeAlgebra, v: &[u32]) -> Result<Self> {
        if v.len() != alg.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: alg.ambient_dim(),
                got: v.len(),
            });
        }
        let p = alg.modulus();
        let mut terms = BTreeMap::new();
        for (idx, &c) in v.iter().enumerate() {
            let c = c % p;
            if c != 0 {
                terms.insert(alg.monomial_at(idx), c);
            }
        }
        Ok(TruncatedSeries { alg, terms })
    }
}
