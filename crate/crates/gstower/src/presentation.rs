//! Analysis of minimal presentations: relator depths, the truncated defining
//! ideal, Hilbert coefficients of the quotient, and the product criterion.
//!
//! The Hilbert coefficients are exact despite the truncation: for n <= N the
//! tail `I^(N+1)` of the free augmentation ideal is contained in `I^(n+1)`,
//! so passing to the truncated algebra changes neither `I^n + J` nor
//! `I^(n+1) + J`, and
//!
//! ```text
//! c_n = dim (I^n + J)/(I^(n+1) + J) = d^n - #{ideal pivots in degree n}
//! ```
//!
//! where the second equality holds because the echelon basis of the
//! truncated ideal has its pivots in canonical (degree-major) column order:
//! a row whose pivot sits in a degree-n column reduces one degree-n monomial
//! into the span of the ideal and the higher-degree tail. The literal
//! two-subspace dimension difference stays alive in the test suite as a
//! cross-check.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fp::{FpSubspace, FreeAlgebra, Strategy, Valuation};
use crate::gspoly::{rat_int, GsPolynomial, Rational};
use crate::magnus::{self, DepthValue};
use crate::word::{parse_word, GroupWord};

use num_traits::{One, Signed, Zero};

/// A finitely presented pro-p group: d named generators and a list of
/// relators, each of depth >= 2 (depth-1 relators make the presentation
/// non-minimal and are rejected by every pipeline entry point).
#[derive(Clone, Debug)]
pub struct Presentation {
    p: u32,
    gen_names: Vec<String>,
    relators: Vec<GroupWord>,
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
struct PresentationFile {
    p: u32,
    generators: Vec<String>,
    relators: Vec<String>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl Presentation {
    pub fn new(p: u32, gen_names: Vec<String>, relators: Vec<GroupWord>) -> Result<Self> {
        if !crate::fp::is_odd_prime(p as u64) {
            return Err(Error::Parameter(format!("{p} is not an odd prime")));
        }
        if gen_names.is_empty() {
            return Err(Error::Parameter("at least one generator required".into()));
        }
        let d = gen_names.len();
        for (i, r) in relators.iter().enumerate() {
            if let Some(idx) = r.max_gen_index() {
                if idx >= d {
                    return Err(Error::Parameter(format!(
                        "relator {i} references generator index {idx}, but d = {d}"
                    )));
                }
            }
        }
        Ok(Presentation {
            p,
            gen_names,
            relators,
            labels: None,
        })
    }

    /// Parses the JSON presentation format:
    /// `{"p": 3, "generators": ["a","b"], "relators": ["a^3","b^3","[a,b]"]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(s)?;
        let mut relators = Vec::with_capacity(file.relators.len());
        for (i, text) in file.relators.iter().enumerate() {
            let w = parse_word(text, &file.generators).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos,
                    msg: format!("relator {i}: {msg}"),
                },
                Error::UnknownGenerator { name, pos } => Error::Parse {
                    pos,
                    msg: format!("relator {i}: unknown generator `{name}`"),
                },
                other => other,
            })?;
            relators.push(w);
        }
        let mut pres = Presentation::new(file.p, file.generators, relators)?;
        pres.labels = file.labels;
        Ok(pres)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn d(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn algebra(&self, max_deg: usize) -> Result<FreeAlgebra> {
        FreeAlgebra::new(self.d(), max_deg, self.p)
    }

    /// Depth of each relator at the given truncation. Depth-1 relators are a
    /// hard error; depths above the truncation come back tagged for the
    /// caller to decide.
    pub fn relator_depths(&self, max_deg: usize) -> Result<Vec<DepthValue>> {
        let alg = self.algebra(max_deg)?;
        let mut out = Vec::with_capacity(self.relators.len());
        for (i, r) in self.relators.iter().enumerate() {
            let v = magnus::depth(r, alg)?;
            if v == Valuation::Finite(1) {
                return Err(Error::NonMinimal { index: i });
            }
            out.push(v);
        }
        Ok(out)
    }

    /// Truncation of the closed two-sided ideal generated by the relator
    /// images minus one, computed by worklist saturation: every row that
    /// grows the rank is multiplied by each generator on both sides until
    /// the subspace stabilizes.
    pub fn ideal_truncation(&self, max_deg: usize) -> Result<FpSubspace> {
        self.ideal_truncation_with(max_deg, Strategy::default())
    }

    pub fn ideal_truncation_with(&self, max_deg: usize, strategy: Strategy) -> Result<FpSubspace> {
        let alg = self.algebra(max_deg)?;
        let dim = alg.ambient_dim();
        let mut space = FpSubspace::with_strategy(self.p, dim, strategy)?;

        let mut queue: std::collections::VecDeque<Vec<u32>> = std::collections::VecDeque::new();
        for (i, r) in self.relators.iter().enumerate() {
            let image = magnus::expand(r, alg)?.sub_one();
            if image.lowest_degree() == Valuation::Finite(1) {
                return Err(Error::NonMinimal { index: i });
            }
            let v = image.to_dense();
            if space.insert(&v)? {
                queue.push_back(v);
            }
        }

        let maps = MulMaps::build(alg);
        while let Some(row) = queue.pop_front() {
            for map in maps.all() {
                let candidate = apply_map(map, &row, dim);
                if space.insert(&candidate)? {
                    queue.push_back(candidate);
                }
            }
        }
        Ok(space)
    }

    /// The Hilbert coefficients `c_0 .. c_(N-1)` of the quotient algebra.
    pub fn hilbert_coeffs(&self, max_deg: usize) -> Result<HilbertPrefix> {
        self.hilbert_coeffs_with(max_deg, Strategy::default())
    }

    pub fn hilbert_coeffs_with(&self, max_deg: usize, strategy: Strategy) -> Result<HilbertPrefix> {
        let alg = self.algebra(max_deg)?;
        let ideal = self.ideal_truncation_with(max_deg, strategy)?;
        Ok(hilbert_from_ideal(alg, &ideal))
    }

    /// `1 - d·t + Σ_i t^(depth of relator i)`. Every depth must resolve
    /// below the truncation; otherwise the polynomial cannot be assembled
    /// and the caller is told to raise N.
    pub fn gs_polynomial(&self, max_deg: usize) -> Result<GsPolynomial> {
        let depths = self.relator_depths(max_deg)?;
        let mut resolved = Vec::with_capacity(depths.len());
        for (i, v) in depths.iter().enumerate() {
            match v.finite() {
                Some(n) => resolved.push(n),
                None => return Err(Error::UnresolvedDepth { index: i, max_deg }),
            }
        }
        GsPolynomial::presentation_form(self.d(), &resolved)
    }
}

/// Left/right multiplication-by-generator maps over the flat monomial range.
/// Each map is an injective index remap defined on the monomials of degree
/// below the truncation bound.
struct MulMaps {
    maps: Vec<Vec<u32>>, // target index per source index; source degree < N
}

impl MulMaps {
    fn build(alg: FreeAlgebra) -> Self {
        let below = alg.degree_offset(alg.max_degree());
        let mut maps = Vec::with_capacity(2 * alg.gens());
        for j in 0..alg.gens() {
            let gen_mono = alg.monomial_from_letters(&[j]).expect("valid generator");
            let mut left = Vec::with_capacity(below);
            let mut right = Vec::with_capacity(below);
            for idx in 0..below {
                let m = alg.monomial_at(idx);
                let lm = alg.concat(gen_mono, m).expect("degree below bound");
                let rm = alg.concat(m, gen_mono).expect("degree below bound");
                left.push(alg.flat_index(lm) as u32);
                right.push(alg.flat_index(rm) as u32);
            }
            maps.push(left);
            maps.push(right);
        }
        MulMaps { maps }
    }

    fn all(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.maps.iter()
    }
}

fn apply_map(map: &[u32], row: &[u32], dim: usize) -> Vec<u32> {
    let mut out = vec![0u32; dim];
    for (src, &dst) in map.iter().enumerate() {
        let v = row[src];
        if v != 0 {
            out[dst as usize] = v;
        }
    }
    out
}

fn hilbert_from_ideal(alg: FreeAlgebra, ideal: &FpSubspace) -> HilbertPrefix {
    let n = alg.max_degree();
    let mut coeffs = Vec::with_capacity(n);
    for deg in 0..n {
        let lo = alg.degree_offset(deg);
        let hi = alg.degree_offset(deg + 1);
        let pivots = ideal.pivots_in_range(lo, hi);
        coeffs.push(alg.degree_count(deg) - pivots as u64);
    }
    // Ideal elements have valuation >= 2, so degrees 0 and 1 are untouched.
    debug_assert_eq!(coeffs.first(), Some(&1));
    debug_assert_eq!(coeffs.get(1), Some(&(alg.gens() as u64)));

    // Finite-quotient detection: the last computed quotient vanishes AND the
    // entire degree-N slice lies in the ideal (so "c_N = 0" as well, giving
    // two consecutive vanishing quotients and exact trailing zeros).
    let top_lo = alg.degree_offset(n);
    let top_hi = alg.degree_offset(n + 1);
    let top_full = ideal.pivots_in_range(top_lo, top_hi) as u64 == alg.degree_count(n);
    let stabilized = coeffs.last() == Some(&0) && top_full;
    HilbertPrefix {
        trunc: n,
        coeffs,
        stabilized,
    }
}

/// Computed prefix `c_0 .. c_(N-1)` of the Hilbert coefficients. When
/// `stabilized` is set the quotient algebra is finite-dimensional and every
/// coefficient beyond the prefix is exactly zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertPrefix {
    trunc: usize,
    coeffs: Vec<u64>,
    stabilized: bool,
}

impl HilbertPrefix {
    pub fn new(trunc: usize, coeffs: Vec<u64>, stabilized: bool) -> Result<Self> {
        if coeffs.first() != Some(&1) {
            return Err(Error::Parameter("c_0 must be 1".into()));
        }
        Ok(HilbertPrefix {
            trunc,
            coeffs,
            stabilized,
        })
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn stabilized(&self) -> bool {
        self.stabilized
    }

    /// Sum of the computed coefficients; for a stabilized prefix this is
    /// the dimension of the finite quotient algebra, i.e. |G|.
    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Exact value of the truncated series at `t`; a lower bound for the
    /// full Hilbert series on (0,1) since all coefficients are nonnegative.
    pub fn eval_prefix(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + rat_int(c as i64);
        }
        acc
    }
}

/// Outcome of the product criterion `H(t)·P(t) >= 1` at an exact rational t.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VinbergVerdict {
    /// `P(t) > 0` and already the truncated lower bound for H certifies the
    /// product inequality.
    CertifiedHolds,
    /// The truncation is too short to decide either way.
    Inconclusive,
    /// The prefix is exact (stabilized) and the inequality fails inside the
    /// provable convergence region; this signals broken input data.
    Violation,
}

impl std::fmt::Display for VinbergVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VinbergVerdict::CertifiedHolds => write!(f, "certified-holds"),
            VinbergVerdict::Inconclusive => write!(f, "inconclusive"),
            VinbergVerdict::Violation => write!(f, "violation"),
        }
    }
}

/// Checks `H(t)·P(t) >= 1` with exact rational arithmetic, `0 < t < 1`.
pub fn vinberg_check(
    h: &HilbertPrefix,
    pgs: &GsPolynomial,
    t: &Rational,
) -> Result<VinbergVerdict> {
    if !t.is_positive() || *t >= Rational::one() {
        return Err(Error::Parameter(format!("t = {t} is outside (0, 1)")));
    }
    let hv = h.eval_prefix(t);
    let pv = pgs.eval(t);
    let product = &hv * &pv;
    if pv.is_positive() && product >= Rational::one() {
        return Ok(VinbergVerdict::CertifiedHolds);
    }
    if h.stabilized() && product < Rational::one() {
        // Stabilized H is the exact (polynomial) series of a finite
        // quotient; its convergence region covers all of (0,1).
        return Ok(VinbergVerdict::Violation);
    }
    Ok(VinbergVerdict::Inconclusive)
}

/// Diagnostic proxy for the exponential growth number: the largest
/// `c_n^(1/n)` over the back half of the prefix, as a rational approximation
/// within 1e-6. No convergence claim is attached.
pub fn rho_estimate(h: &HilbertPrefix) -> Result<Rational> {
    let n = h.truncation();
    if n < 2 {
        return Err(Error::Parameter("rho estimate needs N >= 2".into()));
    }
    let mut best = Rational::zero();
    for idx in (n / 2)..h.coeffs().len() {
        if idx == 0 {
            continue;
        }
        let c = h.coeffs()[idx];
        let r = nth_root_approx(c, idx as u32);
        if r > best {
            best = r;
        }
    }
    Ok(best)
}

/// Rational `c^(1/n)` within 1e-7, by bisection with exact comparisons.
fn nth_root_approx(c: u64, n: u32) -> Rational {
    if c == 0 {
        return Rational::zero();
    }
    if c == 1 {
        return Rational::one();
    }
    let target = rat_int(c as i64);
    let mut lo = Rational::one();
    let mut hi = rat_int(c as i64);
    let eps = Rational::new(1.into(), 10_000_000.into());
    while &hi - &lo > eps {
        let mid = (&lo + &hi) / rat_int(2);
        let mut pw = Rational::one();
        for _ in 0..n {
            pw *= &mid;
        }
        if pw <= target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}
