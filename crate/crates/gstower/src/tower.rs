//! Number-field tower data and the derived exact per-level bound profiles.
//!
//! A [`TowerSpec`] records the base field (degree, local degrees at the g
//! primes above p, whether the p-th roots of unity are present) and the
//! prime ordering: primes `1..=T1` are infinitely decomposed in the tower,
//! primes in `(T1, T2]` infinitely ramified, the rest inert-ish. Prime 1 is
//! the totally split one. A [`DecompositionModel`] pins down the splitting
//! numbers `g_i(n) = p^(min(max(n - a_i, 0), c_i))` via a split delay and a
//! split cap per prime, which covers all three regimes with two integers. A
//! [`ClassGroupModel`] supplies `s_n = max(0, μ·p^n + λ·n + ν)` as the
//! modeled p-rank of the S-class group at level n.
//!
//! From these, each level n gets exact integers
//!
//! ```text
//! D_n  = Σ_i g_i(n) + p^n·deg/2 + s_n
//! r(n) = Σ_i g_i(n) - 1 + s_n
//! R_n  = r(n) + Σ_i g_i(n)·C((p^n/g_i(n))·d_i + 2, 2)
//! R'_n = Σ_i (p^n·d_i + 2·g_i(n))
//! ```
//!
//! and the certification machinery of [`crate::gspoly`] decides whether the
//! majorant `1 - D_n t + R_n t² + R'_n t^p` is negative at its quadratic
//! vertex `t_n = D_n/(2 R_n)`, yielding the growth bound `2R_n/D_n`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::fp::{is_odd_prime, Strategy};
use crate::gspoly::{self, Rational};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Local data of one prime above p: ramification index and inertia degree in
/// the base field; `d = e·f` is the local degree over Q_p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LocalPrime {
    pub e: u64,
    pub f: u64,
}

impl LocalPrime {
    pub fn local_degree(&self) -> u64 {
        self.e * self.f
    }
}

/// Base-field and tower-shape data. Primes are indexed from 0 in code;
/// index 0 is the totally split prime.
#[derive(Clone, Debug)]
pub struct TowerSpec {
    p: u64,
    deg: u64,
    local: Vec<LocalPrime>,
    contains_mu_p: bool,
    t1: usize,
    t2: usize,
    k: u32,
}

impl TowerSpec {
    pub fn new(
        p: u64,
        deg: u64,
        local: Vec<LocalPrime>,
        contains_mu_p: bool,
        t1: usize,
        t2: usize,
        k: u32,
    ) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::Parameter(format!("{p} is not an odd prime")));
        }
        if local.is_empty() {
            return Err(Error::Model("at least one prime above p required".into()));
        }
        if local.iter().any(|l| l.e == 0 || l.f == 0) {
            return Err(Error::Model("ramification data must be >= 1".into()));
        }
        let sum: u64 = local.iter().map(|l| l.local_degree()).sum();
        if sum != deg {
            return Err(Error::Model(format!(
                "sum of local degrees {sum} does not match field degree {deg}"
            )));
        }
        let g = local.len();
        if !(1 <= t1 && t1 <= t2 && t2 <= g) {
            return Err(Error::Model(format!(
                "prime ordering must satisfy 1 <= T1 <= T2 <= g, got T1={t1}, T2={t2}, g={g}"
            )));
        }
        Ok(TowerSpec {
            p,
            deg,
            local,
            contains_mu_p,
            t1,
            t2,
            k,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn deg(&self) -> u64 {
        self.deg
    }

    pub fn g(&self) -> usize {
        self.local.len()
    }

    pub fn local(&self) -> &[LocalPrime] {
        &self.local
    }

    pub fn contains_mu_p(&self) -> bool {
        self.contains_mu_p
    }

    pub fn t1(&self) -> usize {
        self.t1
    }

    pub fn t2(&self) -> usize {
        self.t2
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `Σ_{i>=2} d_i²` (0-based: all primes except index 0).
    pub fn tail_degree_square_sum(&self) -> BigUint {
        self.local
            .iter()
            .skip(1)
            .map(|l| {
                let d = BigUint::from(l.local_degree());
                &d * &d
            })
            .sum()
    }

    /// Evaluates the four growth-theorem hypotheses with exact integers.
    pub fn check_hypotheses(&self) -> HypothesisReport {
        let deg = BigUint::from(self.deg);
        let d1 = self.local[0].local_degree();

        let c1 = Condition {
            index: 1,
            description: "more than one prime above p (g > 1)".into(),
            lhs: BigInt::from(self.g()),
            relation: ">",
            rhs: BigInt::one(),
            pass: self.g() > 1,
        };
        let c2 = Condition {
            index: 2,
            description: "base field contains the p-th roots of unity".into(),
            lhs: BigInt::from(self.contains_mu_p as u8),
            relation: "=",
            rhs: BigInt::one(),
            pass: self.contains_mu_p,
        };
        let c3 = Condition {
            index: 3,
            description: "degree at least 2(d_1 + 1)".into(),
            lhs: BigInt::from(self.deg),
            relation: ">=",
            rhs: BigInt::from(2 * (d1 + 1)),
            pass: self.deg >= 2 * (d1 + 1),
        };
        let lhs4 = {
            let s = &deg + BigUint::from(2u32);
            BigInt::from(&s * &s)
        };
        let rhs4 = BigInt::from(8u32) * BigInt::from(self.tail_degree_square_sum());
        let c4 = Condition {
            index: 4,
            description: "(deg + 2)^2 > 8 · Σ_{i>=2} d_i^2".into(),
            pass: lhs4 > rhs4,
            lhs: lhs4,
            relation: ">",
            rhs: rhs4,
        };
        HypothesisReport {
            conditions: vec![c1, c2, c3, c4],
        }
    }
}

/// One evaluated hypothesis with the exact integers compared.
#[derive(Clone, Debug)]
pub struct Condition {
    pub index: u8,
    pub description: String,
    pub lhs: BigInt,
    pub relation: &'static str,
    pub rhs: BigInt,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct HypothesisReport {
    pub conditions: Vec<Condition>,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Condition> {
        self.conditions.iter().filter(|c| !c.pass)
    }

    fn failure_summary(&self) -> String {
        self.failures()
            .map(|c| {
                format!(
                    "({}) {}: {} {} {}",
                    c.index, c.description, c.lhs, c.relation, c.rhs
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Splitting behaviour of one prime along the tower:
/// `g(n) = p^(min(max(n - delay, 0), cap))`, `cap = None` meaning unbounded.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SplitRule {
    pub delay: u32,
    pub cap: Option<u32>,
}

/// Per-prime splitting rules; validated against the spec's prime ordering.
#[derive(Clone, Debug)]
pub struct DecompositionModel {
    rules: Vec<SplitRule>,
}

impl DecompositionModel {
    pub fn new(spec: &TowerSpec, rules: Vec<SplitRule>) -> Result<Self> {
        if rules.len() != spec.g() {
            return Err(Error::Model(format!(
                "{} splitting rules for {} primes",
                rules.len(),
                spec.g()
            )));
        }
        if rules[0]
            != (SplitRule {
                delay: 0,
                cap: None,
            })
        {
            return Err(Error::Model(
                "prime 1 must split fully: delay 0, unbounded cap".into(),
            ));
        }
        for (i, r) in rules.iter().enumerate() {
            let human = i + 1;
            if human <= spec.t1() && r.cap.is_some() {
                return Err(Error::Model(format!(
                    "prime {human} is infinitely decomposed (index <= T1) but has a finite cap"
                )));
            }
            if human > spec.t1() && r.cap.is_none() {
                return Err(Error::Model(format!(
                    "prime {human} (index > T1) must have a finite split cap"
                )));
            }
        }
        Ok(DecompositionModel { rules })
    }

    /// The standard cyclotomic fixture: prime 1 fully split, all others
    /// never splitting.
    pub fn standard_cyclotomic(spec: &TowerSpec) -> Result<Self> {
        let mut rules = vec![SplitRule {
            delay: 0,
            cap: None,
        }];
        rules.extend(std::iter::repeat_n(
            SplitRule {
                delay: 0,
                cap: Some(0),
            },
            spec.g() - 1,
        ));
        Self::new(spec, rules)
    }

    pub fn rules(&self) -> &[SplitRule] {
        &self.rules
    }

    /// Number of primes of the n-th layer above the i-th base prime.
    pub fn g_n(&self, spec: &TowerSpec, i: usize, n: u32) -> BigUint {
        let r = self.rules[i];
        let raw = n.saturating_sub(r.delay);
        let exp = match r.cap {
            Some(c) => raw.min(c),
            None => raw,
        };
        BigUint::from(spec.p()).pow(exp)
    }

    /// `e_i(n)·f_i(n) = p^n / g_i(n)`, the relative local degree at level n.
    pub fn ef_n(&self, spec: &TowerSpec, i: usize, n: u32) -> BigUint {
        let pn = BigUint::from(spec.p()).pow(n);
        let g = self.g_n(spec, i, n);
        debug_assert!((&pn % &g).is_zero());
        pn / g
    }
}

/// Modeled p-rank of the S-class group: `s_n = max(0, μ·p^n + λ·n + ν)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Deserialize)]
pub struct ClassGroupModel {
    pub mu: u64,
    pub lambda: u64,
    pub nu: i64,
}

impl ClassGroupModel {
    pub fn trivial() -> Self {
        ClassGroupModel {
            mu: 0,
            lambda: 0,
            nu: 0,
        }
    }

    pub fn s_n(&self, p: u64, n: u32) -> BigUint {
        let value = BigInt::from(self.mu) * BigInt::from(p).pow(n)
            + BigInt::from(self.lambda) * BigInt::from(n)
            + BigInt::from(self.nu);
        if value.is_negative() {
            BigUint::zero()
        } else {
            value.to_biguint().unwrap()
        }
    }
}

/// Shafarevich-style cohomology dimensions from splitting counts, the field
/// degree of the layer, and the modeled S-class rank:
/// `h1 = Σ g_i + deg/2 + s`, `h2 = Σ g_i - 1 + s`.
pub fn shafarevich_dims(
    g_counts: &[BigUint],
    field_degree: &BigUint,
    s: &BigUint,
) -> Result<(BigUint, BigUint)> {
    if g_counts.is_empty() || g_counts.iter().any(|g| g.is_zero()) {
        return Err(Error::Model(
            "splitting counts must be present and positive".into(),
        ));
    }
    if (field_degree % BigUint::from(2u32)) != BigUint::zero() {
        return Err(Error::Model(format!(
            "field degree {field_degree} is odd; a totally imaginary layer has even degree"
        )));
    }
    let total: BigUint = g_counts.iter().sum();
    let h1 = &total + field_degree / BigUint::from(2u32) + s;
    let h2 = &total - BigUint::one() + s;
    Ok((h1, h2))
}

/// Generator rank `n_v` of the local pro-p completion at any place of the
/// n-th layer above prime i: `(p^n/g_i(n))·d_i + 2`. Needs the p-th roots of
/// unity in the base field (the `+2` does).
pub fn local_unit_rank(
    spec: &TowerSpec,
    dmodel: &DecompositionModel,
    n: u32,
    prime_index: usize,
) -> Result<BigUint> {
    if !spec.contains_mu_p() {
        return Err(Error::Model(
            "local generator rank formula requires mu_p in the base field".into(),
        ));
    }
    if prime_index >= spec.g() {
        return Err(Error::Parameter(format!(
            "prime index {prime_index} out of range for g = {}",
            spec.g()
        )));
    }
    let d_i = spec.local()[prime_index].local_degree();
    Ok(dmodel.ef_n(spec, prime_index, n) * BigUint::from(d_i) + BigUint::from(2u32))
}

/// Exact per-level quantities derived from the models.
#[derive(Clone, Debug)]
pub struct BoundProfile {
    pub n: u32,
    /// Generator bound D_n = d(n).
    pub d_n: BigUint,
    /// Relation count r(n).
    pub r_count: BigUint,
    /// Quadratic coefficient R_n.
    pub r_n: BigUint,
    /// Degree-p coefficient R'_n.
    pub r_prime_n: BigUint,
    /// Vertex t_n = D_n / (2 R_n).
    pub t_n: Rational,
    /// Local generator rank per base prime (one place above it).
    pub unit_ranks: Vec<BigUint>,
}

fn choose2(x: &BigUint) -> BigUint {
    // C(x, 2) = x(x-1)/2
    if x.is_zero() {
        return BigUint::zero();
    }
    x * (x - BigUint::one()) / BigUint::from(2u32)
}

fn big_to_rat(x: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(x.clone()))
}

/// Assembles the exact bound profile of level n.
pub fn bound_profile(
    spec: &TowerSpec,
    dmodel: &DecompositionModel,
    cmodel: &ClassGroupModel,
    n: u32,
) -> Result<BoundProfile> {
    let p = spec.p();
    let pn = BigUint::from(p).pow(n);
    let s_n = cmodel.s_n(p, n);

    let g_total: BigUint = (0..spec.g()).map(|i| dmodel.g_n(spec, i, n)).sum();
    let layer_degree = &pn * BigUint::from(spec.deg());
    let (h1, h2) = shafarevich_dims(
        &(0..spec.g())
            .map(|i| dmodel.g_n(spec, i, n))
            .collect::<Vec<_>>(),
        &layer_degree,
        &s_n,
    )?;
    debug_assert_eq!(h1, &g_total + &layer_degree / BigUint::from(2u32) + &s_n);

    let mut quad = BigUint::zero();
    let mut linear = BigUint::zero();
    let mut unit_ranks = Vec::with_capacity(spec.g());
    for i in 0..spec.g() {
        let g_i = dmodel.g_n(spec, i, n);
        let n_v = local_unit_rank(spec, dmodel, n, i)?;
        quad += &g_i * choose2(&n_v);
        linear += &g_i * &n_v;
        unit_ranks.push(n_v);
    }

    let d_n = h1;
    let r_count = h2;
    let r_n = &r_count + quad;
    let r_prime_n = linear;
    let t_n = big_to_rat(&d_n) / (Rational::from_integer(BigInt::from(2)) * big_to_rat(&r_n));

    Ok(BoundProfile {
        n,
        d_n,
        r_count,
        r_n,
        r_prime_n,
        t_n,
        unit_ranks,
    })
}

/// Largest admissible constant `2·Σ_{i>=2} d_i² / (2·T1 + deg + 2μ)`.
pub fn thm_constant(spec: &TowerSpec, cmodel: &ClassGroupModel) -> Result<Rational> {
    let report = spec.check_hypotheses();
    if !report.all_pass() {
        return Err(Error::Hypotheses(report.failure_summary()));
    }
    let numer = BigInt::from(2) * BigInt::from(spec.tail_degree_square_sum());
    let denom =
        BigInt::from(2 * spec.t1() as u64) + BigInt::from(spec.deg()) + BigInt::from(2 * cmodel.mu);
    Ok(Rational::new(numer, denom))
}

/// The cyclotomic specialization `2(ℓ-2)(p-1)² / (2T1 + (p-1)(ℓ-1) + 2μ)`;
/// gated on `ℓ >= 11` and `ℓ ≡ 1 mod p`. Also asserts equality with
/// [`thm_constant`] on the induced cyclotomic tower spec.
pub fn corollary_constant(p: u64, ell: u64, t1: usize, mu: u64) -> Result<Rational> {
    if ell < 11 {
        return Err(Error::Parameter(format!(
            "corollary gate requires ell >= 11, got {ell} \
             (the general hypothesis checker may still pass)"
        )));
    }
    let (spec, _dmodel, cmodel) = cyclotomic_setup(p, ell, t1, mu)?;
    let numer = BigInt::from(2) * BigInt::from(ell - 2) * BigInt::from((p - 1) * (p - 1));
    let denom =
        BigInt::from(2 * t1 as u64) + BigInt::from((p - 1) * (ell - 1)) + BigInt::from(2 * mu);
    let value = Rational::new(numer, denom);
    let via_thm = thm_constant(&spec, &cmodel)?;
    debug_assert_eq!(value, via_thm);
    Ok(value)
}

/// Builds the tower spec, decomposition model, and class model of the
/// cyclotomic shorthand: degree (p-1)(ℓ-1), g = ℓ-1 primes of local degree
/// p-1, the first fully split, `s_n = μ·p^n`.
pub fn cyclotomic_setup(
    p: u64,
    ell: u64,
    t1: usize,
    mu: u64,
) -> Result<(TowerSpec, DecompositionModel, ClassGroupModel)> {
    if !is_odd_prime(p) {
        return Err(Error::Parameter(format!("{p} is not an odd prime")));
    }
    if !is_odd_prime(ell) && ell != 2 {
        return Err(Error::Parameter(format!("{ell} is not prime")));
    }
    if ell == p {
        return Err(Error::Parameter("ell must differ from p".into()));
    }
    if ell % p != 1 {
        return Err(Error::Parameter(format!(
            "ell = {ell} is not congruent to 1 mod p = {p}"
        )));
    }
    let g = (ell - 1) as usize;
    let local = vec![LocalPrime { e: p - 1, f: 1 }; g];
    let spec = TowerSpec::new(p, (p - 1) * (ell - 1), local, true, t1, t1, 1)?;
    let dmodel = DecompositionModel::standard_cyclotomic(&spec)?;
    let cmodel = ClassGroupModel {
        mu,
        lambda: 0,
        nu: 0,
    };
    Ok((spec, dmodel, cmodel))
}

/// One row of the growth table.
#[derive(Clone, Debug)]
pub struct GrowthRow {
    pub profile: BoundProfile,
    /// Whether the vertex t_n lies in (0,1); the closed-form certificates
    /// are only meaningful there.
    pub t_in_unit_interval: bool,
    /// Exact sign of Q(t_n): -1, 0, or +1.
    pub q_sign: i8,
    /// Certified negative at the vertex with t_n in range.
    pub certified: bool,
    /// `2R_n/D_n` when certified.
    pub rho_bound: Option<Rational>,
    /// Raw size bound from the vertex inequality; may be negative, callers
    /// clamp at zero for reporting.
    pub m_bound: Rational,
}

/// Growth table over a level range, with the derived constants.
#[derive(Clone, Debug)]
pub struct GrowthTable {
    pub rows: Vec<GrowthRow>,
    pub c_max: Rational,
    /// A = (1 + deg/2)².
    pub const_a: Rational,
    /// B = Σ_{i>=2} d_i² / 2.
    pub const_b: Rational,
    pub a_quarter_minus_b: Rational,
    /// Smallest n in range with a certified row.
    pub n0_candidate: Option<u32>,
}

pub fn growth_table(
    spec: &TowerSpec,
    dmodel: &DecompositionModel,
    cmodel: &ClassGroupModel,
    n_start: u32,
    n_end: u32,
    k: u32,
) -> Result<GrowthTable> {
    growth_table_with(spec, dmodel, cmodel, n_start, n_end, k, Strategy::default())
}

/// `k` enters only through the validity requirement k >= 1: all certified
/// computations use the k-uniform majorant exponent p, valid for every
/// k >= 1 because `t^(p^k) <= t^p` on (0,1).
pub fn growth_table_with(
    spec: &TowerSpec,
    dmodel: &DecompositionModel,
    cmodel: &ClassGroupModel,
    n_start: u32,
    n_end: u32,
    k: u32,
    strategy: Strategy,
) -> Result<GrowthTable> {
    let report = spec.check_hypotheses();
    if !report.all_pass() {
        return Err(Error::Hypotheses(report.failure_summary()));
    }
    if n_end < n_start {
        return Err(Error::Parameter("empty level range".into()));
    }
    if k == 0 {
        return Err(Error::Parameter(
            "growth certification needs tower exponent k >= 1".into(),
        ));
    }

    let levels: Vec<u32> = (n_start..=n_end).collect();
    let compute = |&n: &u32| -> Result<GrowthRow> {
        let profile = bound_profile(spec, dmodel, cmodel, n)?;
        growth_row(spec, profile)
    };
    let rows: Vec<GrowthRow> = match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => levels.par_iter().map(compute).collect::<Result<_>>()?,
        _ => levels.iter().map(compute).collect::<Result<_>>()?,
    };

    let deg_half = Rational::new(BigInt::from(spec.deg()), BigInt::from(2));
    let a_root = Rational::one() + deg_half;
    let const_a = &a_root * &a_root;
    let const_b = Rational::new(BigInt::from(spec.tail_degree_square_sum()), BigInt::from(2));
    let a_quarter_minus_b = &const_a / Rational::from_integer(BigInt::from(4)) - &const_b;
    let n0_candidate = rows.iter().find(|r| r.certified).map(|r| r.profile.n);

    Ok(GrowthTable {
        rows,
        c_max: thm_constant(spec, cmodel)?,
        const_a,
        const_b,
        a_quarter_minus_b,
        n0_candidate,
    })
}

fn growth_row(spec: &TowerSpec, profile: BoundProfile) -> Result<GrowthRow> {
    let p32 = u32::try_from(spec.p())
        .map_err(|_| Error::Parameter("prime too large for exponent arithmetic".into()))?;
    let d = big_to_rat(&profile.d_n);
    let r = big_to_rat(&profile.r_n);
    let rp = big_to_rat(&profile.r_prime_n);

    let t_in_unit_interval = profile.t_n.is_positive() && profile.t_n < Rational::one();
    let q_value = gspoly::q_at_vertex(&d, &r, &rp, p32)?;
    let q_sign = match q_value.cmp(&Rational::zero()) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    };
    let negativity = gspoly::certified_negativity(&d, &r, &rp, p32)?;
    debug_assert_eq!(negativity, q_sign < 0, "closed forms agree");
    let certified = t_in_unit_interval && negativity;
    let rho_bound = certified.then(|| profile.t_n.recip());
    let m_bound = gspoly::m_lower_bound(&d, &r, &rp, p32)?;

    Ok(GrowthRow {
        profile,
        t_in_unit_interval,
        q_sign,
        certified,
        rho_bound,
        m_bound,
    })
}

/// JSON configuration: either the full tower form or the cyclotomic
/// shorthand `{p, ell, T1, mu}`.
#[derive(Deserialize, Debug)]
#[serde(untagged)]
pub enum TowerConfig {
    Cyclotomic {
        p: u64,
        ell: u64,
        #[serde(rename = "T1", default = "default_t1")]
        t1: usize,
        #[serde(default)]
        mu: u64,
    },
    Full {
        p: u64,
        deg: u64,
        primes: Vec<PrimeConfig>,
        contains_mu_p: bool,
        #[serde(rename = "T1")]
        t1: usize,
        #[serde(rename = "T2")]
        t2: usize,
        class_model: ClassGroupModel,
        #[serde(default = "default_k")]
        k: u32,
    },
}

fn default_t1() -> usize {
    1
}

fn default_k() -> u32 {
    1
}

#[derive(Deserialize, Debug)]
pub struct PrimeConfig {
    pub e: u64,
    pub f: u64,
    #[serde(default)]
    pub split_delay: u32,
    /// Absent or null = unbounded.
    #[serde(default)]
    pub split_cap: Option<u32>,
}

impl TowerConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn build(self) -> Result<(TowerSpec, DecompositionModel, ClassGroupModel)> {
        match self {
            TowerConfig::Cyclotomic { p, ell, t1, mu } => cyclotomic_setup(p, ell, t1, mu),
            TowerConfig::Full {
                p,
                deg,
                primes,
                contains_mu_p,
                t1,
                t2,
                class_model,
                k,
            } => {
                let local: Vec<LocalPrime> = primes
                    .iter()
                    .map(|c| LocalPrime { e: c.e, f: c.f })
                    .collect();
                let rules: Vec<SplitRule> = primes
                    .iter()
                    .map(|c| SplitRule {
                        delay: c.split_delay,
                        cap: c.split_cap,
                    })
                    .collect();
                let spec = TowerSpec::new(p, deg, local, contains_mu_p, t1, t2, k)?;
                let dmodel = DecompositionModel::new(&spec, rules)?;
                Ok((spec, dmodel, class_model))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gspoly::{rat, rat_int};

    fn mu39() -> (TowerSpec, DecompositionModel, ClassGroupModel) {
        cyclotomic_setup(3, 13, 1, 0).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn shafarevich_examples() {
        // Twelve split primes, degree 24, s = 0: (24, 11).
        let ones = vec![big(1); 12];
        let (h1, h2) = shafarevich_dims(&ones, &big(24), &big(0)).unwrap();
        assert_eq!((h1, h2), (big(24), big(11)));
        // s increments both.
        let (h1, h2) = shafarevich_dims(&ones, &big(24), &big(1)).unwrap();
        assert_eq!((h1, h2), (big(25), big(12)));
        // smallest case
        let (h1, h2) = shafarevich_dims(&[big(1)], &big(2), &big(0)).unwrap();
        assert_eq!((h1, h2), (big(2), big(0)));
        // odd degree -> model error
        assert!(shafarevich_dims(&[big(1)], &big(3), &big(0)).is_err());
        // zero splitting counts are invalid
        assert!(shafarevich_dims(&[big(0)], &big(2), &big(0)).is_err());
        assert!(shafarevich_dims(&[], &big(2), &big(0)).is_err());
    }

    #[test]
    fn hypotheses_cyclotomic_thirteen() {
        let (spec, _, _) = mu39();
        let report = spec.check_hypotheses();
        assert!(report.all_pass());
        let c4 = &report.conditions[3];
        assert_eq!(c4.lhs, BigInt::from(676));
        assert_eq!(c4.rhs, BigInt::from(352));
    }

    #[test]
    fn hypotheses_ell_seven_passes_thm_but_fails_corollary_gate() {
        let (spec, _, cmodel) = cyclotomic_setup(3, 7, 1, 0).unwrap();
        let report = spec.check_hypotheses();
        assert!(report.all_pass());
        let c4 = &report.conditions[3];
        assert_eq!(c4.lhs, BigInt::from(196));
        assert_eq!(c4.rhs, BigInt::from(160));
        assert!(thm_constant(&spec, &cmodel).is_ok());
        assert!(matches!(
            corollary_constant(3, 7, 1, 0),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn hypotheses_failing_two_prime_spec() {
        // deg 12, two primes of local degree 6: fails (3) and (4).
        let spec = TowerSpec::new(
            3,
            12,
            vec![LocalPrime { e: 6, f: 1 }, LocalPrime { e: 6, f: 1 }],
            true,
            1,
            1,
            1,
        )
        .unwrap();
        let report = spec.check_hypotheses();
        assert!(!report.all_pass());
        let failed: Vec<u8> = report.failures().map(|c| c.index).collect();
        assert_eq!(failed, vec![3, 4]);
        let c3 = &report.conditions[2];
        assert_eq!((c3.lhs.clone(), c3.rhs.clone()), (12.into(), 14.into()));
        let c4 = &report.conditions[3];
        assert_eq!((c4.lhs.clone(), c4.rhs.clone()), (196.into(), 288.into()));
        assert!(matches!(
            thm_constant(&spec, &ClassGroupModel::trivial()),
            Err(Error::Hypotheses(_))
        ));
    }

    #[test]
    fn local_unit_rank_examples() {
        let (spec, dmodel, _) = mu39();
        // prime 1 at any n: d_1 + 2 = 4
        for n in 0..5 {
            assert_eq!(local_unit_rank(&spec, &dmodel, n, 0).unwrap(), big(4));
        }
        // never-splitting prime at level n: p^n d_i + 2
        assert_eq!(local_unit_rank(&spec, &dmodel, 2, 3).unwrap(), big(20));
        // base level: d_i + 2 everywhere
        for i in 0..spec.g() {
            assert_eq!(local_unit_rank(&spec, &dmodel, 0, i).unwrap(), big(4));
        }
        // mu_p required
        let no_mu =
            TowerSpec::new(3, 24, vec![LocalPrime { e: 2, f: 1 }; 12], false, 1, 1, 1).unwrap();
        let dm = DecompositionModel::standard_cyclotomic(&no_mu).unwrap();
        assert!(local_unit_rank(&no_mu, &dm, 0, 0).is_err());
    }

    #[test]
    fn bound_profile_base_level() {
        let (spec, dmodel, cmodel) = mu39();
        let b = bound_profile(&spec, &dmodel, &cmodel, 0).unwrap();
        assert_eq!(b.d_n, big(24));
        assert_eq!(b.r_count, big(11));
        assert_eq!(b.r_n, big(83));
        assert_eq!(b.r_prime_n, big(48));
        assert_eq!(b.t_n, rat(24, 166));
    }

    #[test]
    fn bound_profile_level_one() {
        let (spec, dmodel, cmodel) = mu39();
        let b = bound_profile(&spec, &dmodel, &cmodel, 1).unwrap();
        assert_eq!(b.d_n, big(50));
        assert_eq!(b.r_count, big(13));
        assert_eq!(b.r_n, big(339));
        assert_eq!(b.r_prime_n, big(100));
        assert_eq!(b.t_n, rat(25, 339));
        assert_eq!(b.unit_ranks[0], big(4));
        assert_eq!(b.unit_ranks[1], big(8));
    }

    #[test]
    fn degenerate_single_prime_spec() {
        // g = 1: the tail sums are empty, B = 0.
        let spec = TowerSpec::new(3, 2, vec![LocalPrime { e: 2, f: 1 }], true, 1, 1, 1).unwrap();
        let dmodel = DecompositionModel::standard_cyclotomic(&spec).unwrap();
        let cmodel = ClassGroupModel::trivial();
        let b = bound_profile(&spec, &dmodel, &cmodel, 2).unwrap();
        // R'_n = p^n d_1 + 2 p^n
        assert_eq!(b.r_prime_n, big(9 * 2 + 2 * 9));
        assert_eq!(spec.tail_degree_square_sum(), big(0));
    }

    #[test]
    fn thm_constant_examples() {
        let (spec, _, cmodel) = mu39();
        let c = thm_constant(&spec, &cmodel).unwrap();
        assert_eq!(c, rat(44, 13));
        // Remark: below (deg + 2)/4.
        assert!(c < rat(26, 4));
        // mu = 13 shrinks the constant: 88/52 = 22/13.
        let with_mu = ClassGroupModel {
            mu: 13,
            lambda: 0,
            nu: 0,
        };
        assert_eq!(thm_constant(&spec, &with_mu).unwrap(), rat(22, 13));
    }

    #[test]
    fn corollary_constant_examples() {
        assert_eq!(corollary_constant(3, 13, 1, 0).unwrap(), rat(44, 13));
        assert_eq!(corollary_constant(3, 31, 1, 0).unwrap(), rat(116, 31));
        assert_eq!(corollary_constant(5, 11, 1, 0).unwrap(), rat(48, 7));
        // validation: ell not prime / wrong congruence
        assert!(cyclotomic_setup(3, 10, 1, 0).is_err());
        assert!(cyclotomic_setup(3, 11, 1, 0).is_err()); // 11 % 3 == 2
        assert!(cyclotomic_setup(3, 3, 1, 0).is_err());
    }

    #[test]
    fn growth_table_cyclotomic() {
        let (spec, dmodel, cmodel) = mu39();
        let table = growth_table(&spec, &dmodel, &cmodel, 0, 6, 1).unwrap();
        assert_eq!(table.rows.len(), 7);
        assert!(table.rows.iter().all(|r| r.certified));
        assert_eq!(table.n0_candidate, Some(0));
        assert_eq!(table.c_max, rat(44, 13));
        assert_eq!(table.const_a, rat_int(169));
        assert_eq!(table.const_b, rat_int(22));
        assert_eq!(table.a_quarter_minus_b, rat(81, 4));
        // rho bounds at the first two levels
        assert_eq!(table.rows[0].rho_bound, Some(rat(83, 12)));
        assert_eq!(table.rows[1].rho_bound, Some(rat(339, 25)));
        // rho bound >= C_max · p^n across the range
        for row in &table.rows {
            let pn = rat_int(3).pow(row.profile.n as i32);
            assert!(
                row.rho_bound.clone().unwrap() >= &table.c_max * &pn,
                "row n={}",
                row.profile.n
            );
        }
    }

    #[test]
    fn growth_table_strategies_agree() {
        let (spec, dmodel, cmodel) = mu39();
        let seq =
            growth_table_with(&spec, &dmodel, &cmodel, 0, 4, 1, Strategy::Sequential).unwrap();
        let par = growth_table_with(&spec, &dmodel, &cmodel, 0, 4, 1, Strategy::Parallel).unwrap();
        for (a, b) in seq.rows.iter().zip(&par.rows) {
            assert_eq!(a.profile.d_n, b.profile.d_n);
            assert_eq!(a.profile.r_n, b.profile.r_n);
            assert_eq!(a.rho_bound, b.rho_bound);
            assert_eq!(a.m_bound, b.m_bound);
        }
    }

    #[test]
    fn degree_conservation() {
        // Σ_i e_i(n)·f_i(n)·g_i(n) = p^n Σ_i d_i for every model level.
        let (spec, dmodel, _) = mu39();
        for n in 0..6 {
            let pn = BigUint::from(3u32).pow(n);
            let total: BigUint = (0..spec.g())
                .map(|i| {
                    dmodel.ef_n(&spec, i, n)
                        * dmodel.g_n(&spec, i, n)
                        * BigUint::from(spec.local()[i].local_degree())
                })
                .sum();
            let expect = &pn * BigUint::from(24u32);
            assert_eq!(total, expect);
        }
    }

    #[test]
    fn config_parsing_both_shapes() {
        let short = TowerConfig::from_json_str(r#"{"p": 3, "ell": 13, "T1": 1, "mu": 0}"#).unwrap();
        let (spec, _, _) = short.build().unwrap();
        assert_eq!(spec.deg(), 24);
        assert_eq!(spec.g(), 12);

        let full = TowerConfig::from_json_str(
            r#"{
                "p": 3, "deg": 24,
                "primes": [
                    {"e": 2, "f": 1},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0},
                    {"e": 2, "f": 1, "split_cap": 0}
                ],
                "contains_mu_p": true, "T1": 1, "T2": 1,
                "class_model": {"mu": 0, "lambda": 0, "nu": 0},
                "k": 1
            }"#,
        )
        .unwrap();
        let (spec2, dmodel2, cmodel2) = full.build().unwrap();
        let b = bound_profile(&spec2, &dmodel2, &cmodel2, 1).unwrap();
        assert_eq!(b.d_n, big(50));
        assert_eq!(b.r_n, big(339));
    }

    #[test]
    fn model_validation_errors() {
        let (spec, _, _) = mu39();
        // prime 1 must be fully split
        let mut rules = vec![SplitRule {
            delay: 1,
            cap: None,
        }];
        rules.extend(vec![
            SplitRule {
                delay: 0,
                cap: Some(0)
            };
            11
        ]);
        assert!(DecompositionModel::new(&spec, rules).is_err());
        // primes beyond T1 need finite caps
        let mut rules = vec![SplitRule {
            delay: 0,
            cap: None,
        }];
        rules.extend(vec![
            SplitRule {
                delay: 0,
                cap: None
            };
            11
        ]);
        assert!(DecompositionModel::new(&spec, rules).is_err());
        // local degree mismatch
        assert!(TowerSpec::new(3, 25, vec![LocalPrime { e: 2, f: 1 }; 12], true, 1, 1, 1).is_err());
    }

    #[test]
    fn class_model_clamps_at_zero() {
        let m = ClassGroupModel {
            mu: 0,
            lambda: 1,
            nu: -3,
        };
        assert_eq!(m.s_n(3, 0), big(0));
        assert_eq!(m.s_n(3, 2), big(0));
        assert_eq!(m.s_n(3, 5), big(2));
    }
}
