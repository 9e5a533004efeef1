//! Exact-rational parsing and display helpers shared by the CLI surfaces.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Decimal rendering with a fixed number of fractional digits, rounded half
/// away from zero. Display only; exact rationals stay authoritative.
pub fn decimal_string(r: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let twice = &scaled * BigRational::from_integer(BigInt::from(2)) // round half away
        + BigRational::from_integer(BigInt::from(if r.is_negative() { -1 } else { 1 }));
    let rounded = twice.to_integer() / BigInt::from(2);
    let neg = rounded.sign() == Sign::Minus;
    let abs = rounded.abs();
    let (int_part, frac_part) = (&abs / &scale, &abs % &scale);
    let frac = format!(
        "{:0>width$}",
        frac_part.to_string(),
        width = digits as usize
    );
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac)
}

/// Exact form `n` or `n/d` (what the CSV emits as the authoritative value).
pub fn exact_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a`, `a/b`, or a plain decimal like `0.125` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = |msg: &str| Error::Parameter(format!("invalid rational `{s}`: {msg}"));
    if let Some((n, d)) = s.split_once('/') {
        let numer: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
        let denom: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(numer, denom));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int = if int.is_empty() || int == "-" {
            format!("{int}0")
        } else {
            int.to_string()
        };
        let whole: BigInt = int.parse().map_err(|_| bad("bad integer part"))?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("bad fractional part"));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_val: BigInt = frac.parse().map_err(|_| bad("bad fractional part"))?;
        let signed_frac = if s.starts_with('-') {
            -frac_val
        } else {
            frac_val
        };
        return Ok(BigRational::new(whole * &scale + signed_frac, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad("not an integer"))?;
    Ok(BigRational::from_integer(n))
}
