//! Exact-rational analysis of growth polynomials `1 - d·t + Σ c_ω t^ω`.
//!
//! Every polynomial handled here has constant term 1, an arbitrary linear
//! coefficient, and nonnegative coefficients in degrees >= 2. Such a
//! polynomial is convex on (0, ∞), so its negative set inside (0, 1) is an
//! open interval and sign scanning plus bisection decides negativity
//! rigorously: either a witness with an infimum bracket is produced, or
//! nonnegativity is certified from the derivative's sign and a tangent-line
//! bound, or the analysis stops at the documented resolution floor 2^-40 and
//! says so.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fp::is_odd_prime;

pub type Rational = BigRational;

pub(crate) fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_pow(base: &Rational, exp: u64) -> Rational {
    let mut acc = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            let sq = &b * &b;
            b = sq;
        }
    }
    acc
}

/// Sparse polynomial with exact rational coefficients and constant term 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GsPolynomial {
    // exponent -> nonzero coefficient; always contains (0, 1)
    coeffs: BTreeMap<u64, Rational>,
}

impl GsPolynomial {
    fn from_map(coeffs: BTreeMap<u64, Rational>) -> Result<Self> {
        match coeffs.get(&0) {
            Some(c) if c.is_one() => {}
            _ => {
                return Err(Error::UnsupportedShape(
                    "constant coefficient must be 1".into(),
                ))
            }
        }
        Ok(GsPolynomial {
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Dense coefficient list, lowest degree first; `coeffs[0]` must be 1.
    pub fn from_coeffs(dense: &[Rational]) -> Result<Self> {
        let map = dense
            .iter()
            .enumerate()
            .map(|(e, c)| (e as u64, c.clone()))
            .collect();
        Self::from_map(map)
    }

    /// `1 - d·t + Σ_i t^(depths[i])`; every depth must be at least 2.
    pub fn presentation_form(gens: usize, depths: &[usize]) -> Result<Self> {
        let mut map = BTreeMap::new();
        map.insert(0, Rational::one());
        if gens > 0 {
            map.insert(1, -rat_int(gens as i64));
        }
        let mut out = Self::from_map(map)?;
        out = out.cut(depths)?;
        Ok(out)
    }

    /// The majorant `1 - D·t + R·t² + R'·t^p`, independent of the tower
    /// level k (valid for every k >= 1 since `t^(p^k) <= t^p` on (0,1)).
    pub fn q_form(d_coef: &Rational, r: &Rational, r_prime: &Rational, p: u32) -> Result<Self> {
        Self::q_form_with_exponent(d_coef, r, r_prime, p, 1)
    }

    /// Exploration variant with the exact exponent `p^k` instead of `p`.
    pub fn q_form_with_exponent(
        d_coef: &Rational,
        r: &Rational,
        r_prime: &Rational,
        p: u32,
        k: u32,
    ) -> Result<Self> {
        check_odd_prime(p)?;
        if k == 0 {
            return Err(Error::Parameter("tower exponent k must be >= 1".into()));
        }
        if d_coef.is_negative() || r.is_negative() || r_prime.is_negative() {
            return Err(Error::Parameter(
                "q-form coefficients must be nonnegative".into(),
            ));
        }
        let exp = (p as u64)
            .checked_pow(k)
            .ok_or_else(|| Error::Parameter(format!("exponent {p}^{k} overflows")))?;
        let mut map = BTreeMap::new();
        map.insert(0, Rational::one());
        map.insert(1, -d_coef.clone());
        map.insert(2, r.clone());
        let entry = map.entry(exp).or_insert_with(Rational::zero);
        *entry += r_prime.clone();
        Self::from_map(map)
    }

    pub fn coeff(&self, exp: u64) -> Rational {
        self.coeffs
            .get(&exp)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn degree(&self) -> u64 {
        *self
            .coeffs
            .keys()
            .next_back()
            .expect("constant term present")
    }

    /// Exact value at a rational point.
    pub fn eval(&self, t: &Rational) -> Rational {
        // sparse Horner over the exponent gaps
        let mut acc = Rational::zero();
        let mut prev_exp = None;
        for (&e, c) in self.coeffs.iter().rev() {
            if let Some(pe) = prev_exp {
                acc *= rat_pow(t, pe - e);
            }
            acc += c;
            prev_exp = Some(e);
        }
        if let Some(pe) = prev_exp {
            acc *= rat_pow(t, pe);
        }
        acc
    }

    /// Exact value of the derivative at a rational point.
    pub fn eval_derivative(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&e, c) in &self.coeffs {
            if e == 0 {
                continue;
            }
            acc += c * rat_int(e as i64) * rat_pow(t, e - 1);
        }
        acc
    }

    /// Adds `t^ω` for each cutting depth; depths below 2 are inadmissible.
    pub fn cut(&self, depths: &[usize]) -> Result<Self> {
        let mut map = self.coeffs.clone();
        for &w in depths {
            if w < 2 {
                return Err(Error::InadmissibleCut(w));
            }
            let entry = map.entry(w as u64).or_insert_with(Rational::zero);
            *entry += Rational::one();
        }
        Self::from_map(map)
    }

    /// Whether the polynomial is in the convex shape this module analyzes:
    /// constant 1, any linear term, nonnegative coefficients above degree 1.
    pub fn is_convex_shape(&self) -> bool {
        self.coeffs.iter().all(|(&e, c)| e <= 1 || !c.is_negative())
    }

    /// Searches (0,1) for negativity.
    ///
    /// Returns a witness `t0` with `P(t0) < 0` exactly, together with a
    /// bracket `[lo, hi]` of width at most `tol` around the infimum of the
    /// negative set (`P(lo) >= 0` exactly). Returns `None` when
    /// nonnegativity on (0,1) is certified: algebraically for degree <= 2,
    /// and from the derivative's sign plus a tangent-line bound otherwise.
    /// Fails with [`Error::Inconclusive`] when the sign cannot be decided
    /// above the resolution floor 2^-40, and with
    /// [`Error::UnsupportedShape`] outside the convex shape.
    pub fn negativity_witness(&self, tol: &Rational) -> Result<Option<NegativityWitness>> {
        if !tol.is_positive() {
            return Err(Error::Parameter("tolerance must be positive".into()));
        }
        if !self.is_convex_shape() {
            return Err(Error::UnsupportedShape(
                "negativity analysis requires nonnegative coefficients above degree 1".into(),
            ));
        }
        // All coefficients nonnegative: P >= 1 on (0,1).
        if self.coeffs.values().all(|c| !c.is_negative()) {
            return Ok(None);
        }
        if self.degree() <= 2 {
            return self.quadratic_witness(tol);
        }

        // Dyadic grid pass: 2^10 sample points.
        let mut last_nonneg = Rational::zero(); // P(0) = 1
        for k in 1..GRID {
            let t = rat(k, GRID);
            if self.eval(&t).is_negative() {
                return Ok(Some(self.bracket_infimum(last_nonneg, t, tol)));
            }
            last_nonneg = t;
        }

        // No grid point is negative. Decide via convexity: the derivative is
        // strictly increasing (some coefficient above degree 1 is positive
        // here), so the minimum sits where the derivative vanishes.
        let one = Rational::one();
        let dv_at_one = self.eval_derivative(&one);
        if !dv_at_one.is_positive() {
            // Nonincreasing on (0,1): infimum of P at t -> 1.
            if !self.eval(&one).is_negative() {
                return Ok(None);
            }
            let (a, m) = self.walk_toward_one()?;
            return Ok(Some(self.bracket_infimum(a, m, tol)));
        }

        // Interior minimizer: bracket the zero of the derivative.
        let mut lo = Rational::zero();
        let mut hi = one;
        let floor = floor_width();
        while &hi - &lo > floor {
            let mid = (&lo + &hi) / rat_int(2);
            let dv = self.eval_derivative(&mid);
            if dv.is_zero() {
                // Exact minimizer: the global minimum value decides.
                return if self.eval(&mid).is_negative() {
                    let left = self.largest_nonneg_left_of(&mid);
                    Ok(Some(self.bracket_infimum(left, mid, tol)))
                } else {
                    Ok(None)
                };
            }
            if dv.is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let p_lo = self.eval(&lo);
        if p_lo.is_negative() {
            let left = self.largest_nonneg_left_of(&lo);
            return Ok(Some(self.bracket_infimum(left, lo, tol)));
        }
        let p_hi = self.eval(&hi);
        if p_hi.is_negative() {
            return Ok(Some(self.bracket_infimum(lo, hi, tol)));
        }
        // Tangent-line certificate on [lo, hi]: P(t) >= P(lo) + P'(lo)(t-lo)
        // by convexity, so P >= P(lo) - |P'(lo)|·(hi-lo) there, and the
        // derivative sign handles both flanks.
        let slope = self.eval_derivative(&lo).abs();
        if p_lo >= slope * (&hi - &lo) {
            Ok(None)
        } else {
            Err(Error::Inconclusive)
        }
    }

    /// Exact decision for `1 + b·t + c·t²` (b < 0, c >= 0): discriminant and
    /// root location in rational arithmetic, so tangency and hairline
    /// negative intervals are decided instead of hitting the floor.
    fn quadratic_witness(&self, tol: &Rational) -> Result<Option<NegativityWitness>> {
        let b = self.coeff(1);
        let c = self.coeff(2);
        let one = Rational::one();
        if c.is_zero() {
            // 1 + b·t decreasing; negative on (-1/b, 1) iff 1 + b < 0.
            if !(&one + &b).is_negative() {
                return Ok(None);
            }
            let root = -one.clone() / &b;
            let t0 = (&root + &one) / rat_int(2);
            return Ok(Some(self.bracket_infimum(root, t0, tol)));
        }
        let disc = &b * &b - rat_int(4) * &c;
        if !disc.is_positive() {
            return Ok(None);
        }
        let vertex = -&b / (rat_int(2) * &c);
        if vertex < one {
            // Minimum value 1 - b²/(4c) < 0 at a rational interior point.
            debug_assert!(self.eval(&vertex).is_negative());
            return Ok(Some(self.bracket_infimum(Rational::zero(), vertex, tol)));
        }
        if !self.eval(&one).is_negative() {
            return Ok(None);
        }
        let (a, m) = self.walk_toward_one()?;
        Ok(Some(self.bracket_infimum(a, m, tol)))
    }

    /// Finds a negative point in (l, 1) when P(1) < 0 and P is negative only
    /// within 1/GRID of 1, by halving the gap; floor-guarded.
    fn walk_toward_one(&self) -> Result<(Rational, Rational)> {
        let mut a = rat(GRID - 1, GRID);
        if self.eval(&a).is_negative() {
            // caller skipped the grid pass; back off to a nonnegative foot
            a = self.largest_nonneg_left_of(&a);
        }
        let mut gap = (Rational::one() - &a) / rat_int(2);
        let floor = floor_width();
        loop {
            let m = &a + &gap;
            if self.eval(&m).is_negative() {
                return Ok((a, m));
            }
            a = m;
            gap /= rat_int(2);
            if gap < floor {
                return Err(Error::Inconclusive);
            }
        }
    }

    /// Largest dyadic grid point at or left of `t` where P >= 0 (0 if none);
    /// valid as a bracket foot because the negative set is an interval.
    fn largest_nonneg_left_of(&self, t: &Rational) -> Rational {
        let scaled = t * rat_int(GRID);
        let mut k = scaled.to_integer();
        if BigRational::from_integer(k.clone()) == scaled {
            k -= 1;
        }
        while k > BigInt::zero() {
            let cand = Rational::new(k.clone(), BigInt::from(GRID));
            if !self.eval(&cand).is_negative() {
                return cand;
            }
            k -= 1;
        }
        Rational::zero()
    }

    /// Shrinks `[lo, hi]` (P(lo) >= 0, P(hi) < 0) to width `tol` around the
    /// infimum of the negative set.
    fn bracket_infimum(
        &self,
        mut lo: Rational,
        mut hi: Rational,
        tol: &Rational,
    ) -> NegativityWitness {
        debug_assert!(!self.eval(&lo).is_negative());
        debug_assert!(self.eval(&hi).is_negative());
        while &hi - &lo > *tol {
            let mid = (&lo + &hi) / rat_int(2);
            if self.eval(&mid).is_negative() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        NegativityWitness {
            t0: hi.clone(),
            inf_lo: lo,
            inf_hi: hi,
        }
    }

    /// `1/hi` of the infimum bracket: a valid, slightly conservative lower
    /// bound for the growth number, since `P(hi) < 0` certifies `ρ >= 1/hi`.
    pub fn rho_lower_bound(&self, tol: &Rational) -> Result<Option<Rational>> {
        Ok(self.negativity_witness(tol)?.map(|w| w.inf_hi.recip()))
    }
}

impl fmt::Display for GsPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&e, c) in &self.coeffs {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let a = c.abs();
            let coeff_str = if a.denom().is_one() {
                a.numer().to_string()
            } else {
                format!("({}/{})", a.numer(), a.denom())
            };
            match e {
                0 => write!(f, "{coeff_str}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{coeff_str}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Dyadic sign-scan resolution.
const GRID: i64 = 1 << 10;

fn floor_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(1u64 << 40))
}

/// Witness of negativity on (0,1) plus a bracket around the infimum of the
/// negative set: `P(t0) < 0` and `P(inf_lo) >= 0` hold exactly, and
/// `inf_hi - inf_lo` is at most the requested tolerance.
#[derive(Clone, Debug)]
pub struct NegativityWitness {
    pub t0: Rational,
    pub inf_lo: Rational,
    pub inf_hi: Rational,
}

fn check_odd_prime(p: u32) -> Result<()> {
    if !is_odd_prime(p as u64) {
        return Err(Error::Parameter(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Vertex `t_n = D/(2R)` of the quadratic part; meaningful for the closed
/// forms below only when it lands in (0,1), which callers must check.
pub fn vertex_t(d_coef: &Rational, r: &Rational) -> Result<Rational> {
    if !r.is_positive() {
        return Err(Error::Parameter(
            "quadratic coefficient R must be > 0".into(),
        ));
    }
    Ok(d_coef / (rat_int(2) * r))
}

/// Exact value `Q(t_n) = 1 - D²/(4R) + R'·D^p/(2^p·R^p)` of the q-form at
/// the vertex of its quadratic part.
pub fn q_at_vertex(
    d_coef: &Rational,
    r: &Rational,
    r_prime: &Rational,
    p: u32,
) -> Result<Rational> {
    check_odd_prime(p)?;
    if !r.is_positive() {
        return Err(Error::Parameter(
            "quadratic coefficient R must be > 0".into(),
        ));
    }
    let two_p = rat_pow(&rat_int(2), p as u64);
    let d_sq = d_coef * d_coef;
    let quad = d_sq / (rat_int(4) * r);
    let tail = r_prime * rat_pow(d_coef, p as u64) / (two_p * rat_pow(r, p as u64));
    Ok(Rational::one() - quad + tail)
}

/// The inequality `2^(p-2)·R^(p-1)·D² > 2^p·R^p + R'·D^p` in exact
/// arithmetic; equivalent to `Q(t_n) < 0` after clearing the positive
/// denominator `2^p·R^p`.
pub fn certified_negativity(
    d_coef: &Rational,
    r: &Rational,
    r_prime: &Rational,
    p: u32,
) -> Result<bool> {
    check_odd_prime(p)?;
    if !d_coef.is_positive() || !r.is_positive() {
        return Err(Error::Parameter("D and R must be positive".into()));
    }
    let lhs = rat_pow(&rat_int(2), p as u64 - 2) * rat_pow(r, p as u64 - 1) * d_coef * d_coef;
    let rhs =
        rat_pow(&rat_int(2), p as u64) * rat_pow(r, p as u64) + r_prime * rat_pow(d_coef, p as u64);
    Ok(lhs > rhs)
}

/// Exact value `D²/4 - R - R'·D^p/(2^p·R^(p-1)) - 1`, the size bound a
/// negative vertex value forces. May be negative; callers clamp at zero for
/// reporting.
pub fn m_lower_bound(
    d_coef: &Rational,
    r: &Rational,
    r_prime: &Rational,
    p: u32,
) -> Result<Rational> {
    check_odd_prime(p)?;
    if !r.is_positive() {
        return Err(Error::Parameter(
            "quadratic coefficient R must be > 0".into(),
        ));
    }
    let d_sq = d_coef * d_coef;
    let tail = r_prime * rat_pow(d_coef, p as u64)
        / (rat_pow(&rat_int(2), p as u64) * rat_pow(r, p as u64 - 1));
    Ok(d_sq / rat_int(4) - r - tail - Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(d: i64, r: i64) -> GsPolynomial {
        GsPolynomial::from_coeffs(&[rat_int(1), rat_int(-d), rat_int(r)]).unwrap()
    }

    fn tol() -> Rational {
        rat(1, 1 << 30)
    }

    #[test]
    fn eval_examples() {
        let p = quad(3, 2);
        assert_eq!(p.eval(&rat(1, 2)), rat_int(0));
        assert_eq!(p.eval(&rat(3, 4)), rat(-1, 8));
        assert_eq!(p.eval(&rat_int(0)), rat_int(1));
        let q = GsPolynomial::q_form(&rat_int(50), &rat_int(339), &rat_int(100), 3).unwrap();
        assert_eq!(q.eval(&rat_int(0)), rat_int(1));
    }

    #[test]
    fn constant_term_is_enforced() {
        assert!(GsPolynomial::from_coeffs(&[rat_int(2), rat_int(-1)]).is_err());
        assert!(GsPolynomial::from_coeffs(&[]).is_err());
    }

    #[test]
    fn witness_for_factorable_quadratic() {
        // 1 - 3t + 2t^2 = (1-t)(1-2t): negative exactly on (1/2, 1).
        let p = quad(3, 2);
        let w = p.negativity_witness(&tol()).unwrap().expect("witness");
        assert!(p.eval(&w.t0).is_negative());
        assert!(!p.eval(&w.inf_lo).is_negative());
        let half = rat(1, 2);
        assert!(w.inf_lo <= half && half <= w.inf_hi);
        assert!(&w.inf_hi - &w.inf_lo <= tol());
        let rho = p.rho_lower_bound(&tol()).unwrap().unwrap();
        assert!((rho - rat_int(2)).abs() < rat(1, 1 << 20));
    }

    #[test]
    fn perfect_square_has_no_witness() {
        // (1-t)^2 and (1-2t)^2 touch zero but never go negative.
        assert!(quad(2, 1).negativity_witness(&tol()).unwrap().is_none());
        let p = quad(4, 4);
        assert!(p.negativity_witness(&tol()).unwrap().is_none());
        assert!(p.rho_lower_bound(&tol()).unwrap().is_none());
    }

    #[test]
    fn linear_root_at_one_over_d() {
        let p = GsPolynomial::from_coeffs(&[rat_int(1), rat_int(-2)]).unwrap();
        let w = p.negativity_witness(&tol()).unwrap().expect("witness");
        let half = rat(1, 2);
        assert!(w.inf_lo <= half && half <= w.inf_hi);
        let rho = p.rho_lower_bound(&tol()).unwrap().unwrap();
        assert!(rho <= rat_int(2) && rho > rat_int(2) - rat(1, 1 << 20));
    }

    #[test]
    fn cut_examples() {
        let p = quad(5, 1);
        let c = p.cut(&[2, 2]).unwrap();
        assert_eq!(c.coeff(2), rat_int(3));
        assert_eq!(p.cut(&[]).unwrap(), p);
        // 1 - 4t + t^2 cut three times: (1-2t)^2, exactly loses negativity.
        let killed = quad(4, 1).cut(&[2, 2, 2]).unwrap();
        assert_eq!(killed, quad(4, 4));
        assert!(killed.negativity_witness(&tol()).unwrap().is_none());
        assert!(quad(4, 1)
            .cut(&[2, 2])
            .unwrap()
            .negativity_witness(&tol())
            .unwrap()
            .is_some());
        assert!(matches!(p.cut(&[1]), Err(Error::InadmissibleCut(1))));
    }

    #[test]
    fn q_form_examples() {
        let q = GsPolynomial::q_form(&rat_int(50), &rat_int(339), &rat_int(100), 3).unwrap();
        assert_eq!(q.coeff(0), rat_int(1));
        assert_eq!(q.coeff(1), rat_int(-50));
        assert_eq!(q.coeff(2), rat_int(339));
        assert_eq!(q.coeff(3), rat_int(100));
        // R' = 0 leaves a plain quadratic.
        let plain = GsPolynomial::q_form(&rat_int(3), &rat_int(2), &rat_int(0), 3).unwrap();
        assert_eq!(plain, quad(3, 2));
        // D = 0: everything nonnegative, no witness.
        let pos = GsPolynomial::q_form(&rat_int(0), &rat_int(5), &rat_int(1), 3).unwrap();
        assert!(pos.negativity_witness(&tol()).unwrap().is_none());
        // exact-exponent variant
        let exact =
            GsPolynomial::q_form_with_exponent(&rat_int(50), &rat_int(339), &rat_int(100), 3, 2)
                .unwrap();
        assert_eq!(exact.coeff(9), rat_int(100));
        assert_eq!(exact.coeff(3), rat_int(0));
    }

    #[test]
    fn q_at_vertex_examples() {
        // (50, 339, 100, 3): 1 - 2500/1356 + 100·125000/(8·339³) < 0,
        // cross-checked against a plain evaluation at t = 50/678.
        let v = q_at_vertex(&rat_int(50), &rat_int(339), &rat_int(100), 3).unwrap();
        assert!(v.is_negative());
        let q = GsPolynomial::q_form(&rat_int(50), &rat_int(339), &rat_int(100), 3).unwrap();
        let tn = vertex_t(&rat_int(50), &rat_int(339)).unwrap();
        assert_eq!(tn, rat(25, 339));
        assert_eq!(v, q.eval(&tn));
        // tangent case: R' = 0 and D² = 4R
        assert_eq!(
            q_at_vertex(&rat_int(4), &rat_int(4), &rat_int(0), 3).unwrap(),
            rat_int(0)
        );
        // n=0 row of the cyclotomic model
        assert!(q_at_vertex(&rat_int(24), &rat_int(83), &rat_int(48), 3)
            .unwrap()
            .is_negative());
        assert!(q_at_vertex(&rat_int(1), &rat_int(0), &rat_int(0), 3).is_err());
    }

    #[test]
    fn certified_negativity_examples() {
        // 2·339²·50² = 574_605_000 > 8·339³ + 100·50³ = 324_165_752
        assert!(certified_negativity(&rat_int(50), &rat_int(339), &rat_int(100), 3).unwrap());
        // 7_936_128 > 5_237_848
        assert!(certified_negativity(&rat_int(24), &rat_int(83), &rat_int(48), 3).unwrap());
        // 2·100·4 = 800 < 8·1000
        assert!(!certified_negativity(&rat_int(2), &rat_int(10), &rat_int(0), 3).unwrap());
    }

    #[test]
    fn m_lower_bound_examples() {
        let m = m_lower_bound(&rat_int(50), &rat_int(339), &rat_int(100), 3).unwrap();
        // 625 - 339 - 12_500_000/919_368 - 1 = 31_189_985/114_921
        assert_eq!(m, rat(31_189_985, 114_921));
        assert_eq!(
            m_lower_bound(&rat_int(10), &rat_int(4), &rat_int(0), 3).unwrap(),
            rat_int(20)
        );
    }

    #[test]
    fn cut_consistency_with_discriminant() {
        // With R' = 0, cutting 1 - Dt + Rt² by j depth-2 elements yields
        // 1 - Dt + (R+j)t²; negativity on (0,1) survives exactly while the
        // discriminant-and-root-location test predicts it.
        for (d, r) in [(10i64, 4i64), (7, 3), (12, 20), (9, 16)] {
            let m = m_lower_bound(&rat_int(d), &rat_int(r), &rat_int(0), 3).unwrap();
            let m_floor: i64 = if m.is_negative() {
                -1
            } else {
                m.to_integer().try_into().unwrap()
            };
            for j in 0..=(m_floor.max(0) + 3) as usize {
                let poly = quad(d, r).cut(&vec![2; j]).unwrap();
                let witness = poly.negativity_witness(&tol()).unwrap();
                let rr = r + j as i64;
                // ground truth for 1 - Dt + (R+j)t² on (0,1)
                let expected = if rr == 0 {
                    d >= 2
                } else {
                    let disc = d * d - 4 * rr;
                    let vertex_inside = d < 2 * rr; // D/(2R') < 1
                    let at_one_neg = 1 - d + rr < 0;
                    (disc > 0 && vertex_inside) || at_one_neg
                };
                assert_eq!(witness.is_some(), expected, "D={d} R={r} cuts={j}");
            }
        }
    }

    #[test]
    fn rejects_unsupported_shape() {
        let p = GsPolynomial::from_coeffs(&[rat_int(1), rat_int(-3), rat_int(-2)]).unwrap();
        assert!(matches!(
            p.negativity_witness(&tol()),
            Err(Error::UnsupportedShape(_))
        ));
    }

    #[test]
    fn display_is_readable() {
        let q = GsPolynomial::q_form(&rat_int(50), &rat_int(339), &rat_int(100), 3).unwrap();
        assert_eq!(q.to_string(), "1 - 50t + 339t^2 + 100t^3");
        let p = GsPolynomial::presentation_form(2, &[3, 3, 2]).unwrap();
        assert_eq!(p.to_string(), "1 - 2t + t^2 + 2t^3");
    }
}
