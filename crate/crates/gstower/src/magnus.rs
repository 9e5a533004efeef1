//! The expansion of free pro-p group words into the truncated algebra.
//!
//! The homomorphism sends the i-th generator to `1 + u_i`; inverses land on
//! geometric series and arbitrary words on units with constant term 1. The
//! depth of a word is the valuation of (expansion - 1): the largest `n` with
//! `w - 1` in the n-th power of the augmentation ideal, truncated knowledge
//! capping out at "above N".

use crate::error::{Error, Result};
use crate::fp::{FreeAlgebra, TruncatedSeries, Valuation};
use crate::word::GroupWord;

/// Depth of a word: a finite value in `[1, N]`, or the certificate that the
/// depth exceeds the truncation degree. The identity word always reports
/// `AboveTruncation` (its depth is infinite by convention; the truncated
/// computation can only certify `>= N+1`).
pub type DepthValue = Valuation;

fn check_indices(w: &GroupWord, gens: usize) -> Result<()> {
    match w.max_gen_index() {
        Some(i) if i >= gens => Err(Error::GeneratorIndex { index: i, gens }),
        _ => Ok(()),
    }
}

/// Image of `w` under the expansion into the given truncated algebra.
pub fn expand(w: &GroupWord, alg: FreeAlgebra) -> Result<TruncatedSeries> {
    check_indices(w, alg.gens())?;
    expand_unchecked(w, alg)
}

fn expand_unchecked(w: &GroupWord, alg: FreeAlgebra) -> Result<TruncatedSeries> {
    match w {
        GroupWord::Gen(i) => TruncatedSeries::one(alg).add(&TruncatedSeries::gen(alg, *i)?),
        GroupWord::Power(base, k) => {
            let e = expand_unchecked(base, alg)?;
            if *k >= 0 {
                e.pow(*k as u64)
            } else {
                e.inverse()?.pow(k.unsigned_abs())
            }
        }
        GroupWord::Commutator(x, y) => {
            let ex = expand_unchecked(x, alg)?;
            let ey = expand_unchecked(y, alg)?;
            ex.inverse()?.mul(&ey.inverse()?)?.mul(&ex)?.mul(&ey)
        }
        GroupWord::Product(ws) => {
            let mut acc = TruncatedSeries::one(alg);
            for t in ws {
                acc = acc.mul(&expand_unchecked(t, alg)?)?;
            }
            Ok(acc)
        }
    }
}

/// Depth of `w`: the valuation of `expand(w) - 1`.
pub fn depth(w: &GroupWord, alg: FreeAlgebra) -> Result<DepthValue> {
    let e = expand(w, alg)?;
    let v = e.sub_one().lowest_degree();
    debug_assert!(v.at_least(1), "group images have constant term 1");
    Ok(v)
}
