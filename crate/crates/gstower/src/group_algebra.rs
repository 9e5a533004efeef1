//! Brute-force invariants of explicit finite p-groups through their group
//! algebra `F_p[G]`.
//!
//! This is the independent oracle for the presentation pipeline: the algebra
//! has dimension |G|, its augmentation ideal is nilpotent, and the powers
//! I^n are computed by literal iterated products. Nothing here touches the
//! truncated free algebra, Magnus expansions, or the worklist ideal closure.

use crate::error::{Error, Result};
use crate::fp::{is_odd_prime, FpSubspace};
use crate::presentation::HilbertPrefix;

/// A finite group given by its multiplication table. Construction validates
/// the group axioms (identity, Latin square, associativity).
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<usize>, // row-major order x order
    identity: usize,
}

impl GroupTable {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Parameter("empty multiplication table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for row in &rows {
            if row.len() != order {
                return Err(Error::Parameter(
                    "multiplication table is not square".into(),
                ));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::Parameter(format!(
                        "table entry {x} out of range for order {order}"
                    )));
                }
                mul.push(x);
            }
        }
        let at = |i: usize, j: usize| mul[i * order + j];

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| at(e, g) == g && at(g, e) == g))
            .ok_or_else(|| Error::Parameter("table has no identity element".into()))?;
        for i in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for j in 0..order {
                seen_row[at(i, j)] = true;
                seen_col[at(j, i)] = true;
            }
            if seen_row.contains(&false) || seen_col.contains(&false) {
                return Err(Error::Parameter(format!(
                    "row/column {i} is not a permutation"
                )));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::Parameter(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            order,
            mul,
            identity,
        })
    }

    /// Cyclic group of order n.
    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        GroupTable::new(rows).expect("cyclic table is a group")
    }

    /// Direct product; element (i, j) is encoded as `i * b.order + j`.
    pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Self {
        let n = a.order * b.order;
        let rows = (0..n)
            .map(|x| {
                let (xa, xb) = (x / b.order, x % b.order);
                (0..n)
                    .map(|y| {
                        let (ya, yb) = (y / b.order, y % b.order);
                        a.mul(xa, ya) * b.order + b.mul(xb, yb)
                    })
                    .collect()
            })
            .collect();
        GroupTable::new(rows).expect("product table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.order + j]
    }
}

fn check_p_power(table: &GroupTable, p: u32) -> Result<u32> {
    if !is_odd_prime(p as u64) {
        return Err(Error::Parameter(format!("{p} is not an odd prime")));
    }
    let mut n = table.order();
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p as usize) {
            return Err(Error::Parameter(format!(
                "group order {} is not a power of {p}",
                table.order()
            )));
        }
        n /= p as usize;
        k += 1;
    }
    Ok(k)
}

/// Echelon bases of the powers I^1 ⊇ I^2 ⊇ ... of the augmentation ideal,
/// down to zero (I is nilpotent in `F_p[G]` for a finite p-group).
fn ideal_power_chain(table: &GroupTable, p: u32) -> Result<Vec<FpSubspace>> {
    check_p_power(table, p)?;
    let n = table.order();
    let e = table.identity();

    let mut first = FpSubspace::new(p, n)?;
    for g in 0..n {
        if g == e {
            continue;
        }
        let mut v = vec![0u32; n];
        v[g] = 1;
        v[e] = p - 1;
        first.insert(&v)?;
    }
    debug_assert_eq!(first.rank(), n - 1);

    let mut chain = vec![first];
    loop {
        let prev = chain.last().unwrap();
        if prev.rank() == 0 {
            break;
        }
        let mut next = FpSubspace::new(p, n)?;
        for row in prev.rows() {
            for g in 0..n {
                if g == e {
                    continue;
                }
                // row · (g - e): permute coefficients by right multiplication
                // and subtract the original.
                let mut v = vec![0u32; n];
                for (x, &c) in row.iter().enumerate() {
                    if c != 0 {
                        let idx = table.mul(x, g);
                        v[idx] = (v[idx] + c) % p;
                    }
                }
                for (slot, &c) in v.iter_mut().zip(row) {
                    *slot = (*slot + (p - c)) % p;
                }
                next.insert(&v)?;
            }
        }
        let stop = next.rank() == 0;
        chain.push(next);
        if stop {
            break;
        }
    }
    Ok(chain)
}

/// Hilbert coefficients of `F_p[G]` for a finite p-group: `c_n = dim I^n -
/// dim I^(n+1)`, exact for every n since I is nilpotent. Returns `n_terms`
/// entries; `stabilized` is set when the zero tail is reached inside them.
pub fn hilbert_from_table(table: &GroupTable, p: u32, n_terms: usize) -> Result<HilbertPrefix> {
    if n_terms == 0 {
        return Err(Error::Parameter("need at least one coefficient".into()));
    }
    let chain = ideal_power_chain(table, p)?;
    let dim_at = |k: usize| -> u64 {
        if k == 0 {
            table.order() as u64
        } else {
            chain.get(k - 1).map_or(0, |s| s.rank() as u64)
        }
    };
    let coeffs: Vec<u64> = (0..n_terms).map(|k| dim_at(k) - dim_at(k + 1)).collect();
    let stabilized = coeffs.last() == Some(&0) || dim_at(n_terms) == 0;
    HilbertPrefix::new(n_terms, coeffs, stabilized)
}

/// Dimensions `a_n = dim G_n/G_(n+1)` of the depth filtration of a finite
/// p-group, indexed from n = 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZassenhausData {
    dims: Vec<u64>,
}

impl ZassenhausData {
    /// `a_1, a_2, ...` in order.
    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }
}

/// Buckets every non-identity element by its depth (the I-adic valuation of
/// `g - 1` in `F_p[G]`) and reports `a_n = log_p(|G_n| / |G_(n+1)|)` for
/// `n = 1 .. n_terms`.
pub fn zassenhaus_dims(table: &GroupTable, p: u32, n_terms: usize) -> Result<ZassenhausData> {
    let chain = ideal_power_chain(table, p)?;
    let n = table.order();
    let e = table.identity();

    let mut depths = Vec::with_capacity(n.saturating_sub(1));
    for g in 0..n {
        if g == e {
            continue;
        }
        let mut v = vec![0u32; n];
        v[g] = 1;
        v[e] = p - 1;
        let mut depth = 0usize;
        for (k, s) in chain.iter().enumerate() {
            if s.contains(&v)? {
                depth = k + 1;
            } else {
                break;
            }
        }
        debug_assert!(depth >= 1, "g - 1 lies in the augmentation ideal");
        depths.push(depth);
    }

    let filtration_order =
        |k: usize| -> u64 { depths.iter().filter(|&&d| d >= k).count() as u64 + 1 };
    let mut dims = Vec::with_capacity(n_terms);
    for k in 1..=n_terms {
        let num = filtration_order(k);
        let den = filtration_order(k + 1);
        if num % den != 0 {
            return Err(Error::Model(format!(
                "filtration index |G_{k}|/|G_{}| = {num}/{den} is not integral",
                k + 1
            )));
        }
        let ratio = num / den;
        let mut a = 0u64;
        let mut r = ratio;
        while r > 1 {
            if r % p as u64 != 0 {
                return Err(Error::Model(format!(
                    "filtration index {ratio} at level {k} is not a p-power"
                )));
            }
            r /= p as u64;
            a += 1;
        }
        dims.push(a);
    }
    Ok(ZassenhausData { dims })
}
