//! Closed formulas and the two-term recursion for the number of vines.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `n` accepted by the formula and recursion modes.
pub const FORMULA_CAP: usize = 64;

fn check(n: usize) -> Result<()> {
    if n > FORMULA_CAP {
        return Err(Error::CapExceeded {
            what: "counting size",
            value: n,
            cap: FORMULA_CAP,
        });
    }
    Ok(())
}

fn pow2(e: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

fn to_uint(r: BigRational) -> Result<BigUint> {
    if !r.is_integer() {
        return Err(Error::Internal(format!("expected an integer, got {r}")));
    }
    r.to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Internal("negative count".into()))
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// Labeled vines on `n` elements: `2^((n-2)(n-3)/2 - 1) * n!`, and 1 for
/// `n <= 1`.
pub fn labeled_count(n: usize) -> Result<BigUint> {
    check(n)?;
    if n <= 1 {
        return Ok(BigUint::one());
    }
    let e = ((n as i64 - 2) * (n as i64 - 3)) / 2 - 1;
    to_uint(pow2(e) * BigRational::from_integer(factorial(n)))
}

/// Isomorphism classes of vines on `n` elements by the closed formula.
pub fn unlabeled_count(n: usize) -> Result<BigUint> {
    check(n)?;
    if n <= 3 {
        return Ok(BigUint::one());
    }
    let n_ = n as i64;
    let last = n_ / 2 - 1;
    let mut sum = BigRational::zero();
    for k in 0..=last {
        let c = if k == last { 2 } else { 1 };
        sum += BigRational::from_integer(BigInt::from(c)) * pow2(-k * (n_ - k - 2));
    }
    to_uint(pow2((n_ - 2) * (n_ - 3) / 2 - 1) * sum)
}

/// `(p_n, q_n)`: classes whose automorphism group has order two and one.
pub fn automorphism_split(n: usize) -> Result<(BigUint, BigUint)> {
    check(n)?;
    if n == 0 {
        return Ok((BigUint::zero(), BigUint::one()));
    }
    let int = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut prev = [(int(0), int(1)), (int(1), int(0))];
    if n <= 2 {
        let (p, q) = prev[n - 1].clone();
        return Ok((to_uint(p)?, to_uint(q)?));
    }
    for m in 3..=n as i64 {
        let (p, q) = prev[0].clone();
        let pn = pow2(m - 3) * (&p + &q);
        let qn = pow2(m - 4) * (pow2(m - 4) - int(1)) * &p + pow2(m - 4) * (pow2(m - 3) - int(1)) * &q;
        prev = [prev[1].clone(), (pn, qn)];
    }
    let (p, q) = prev[1].clone();
    Ok((to_uint(p)?, to_uint(q)?))
}

/// One row of the counting table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub n: usize,
    pub labeled: String,
    pub unlabeled: String,
    pub symmetric: String,
    pub asymmetric: String,
}

pub fn formula_table(n: usize) -> Result<CountTable> {
    let (p, q) = automorphism_split(n)?;
    Ok(CountTable {
        n,
        labeled: labeled_count(n)?.to_string(),
        unlabeled: unlabeled_count(n)?.to_string(),
        symmetric: p.to_string(),
        asymmetric: q.to_string(),
    })
}

/// Like [`formula_table`] but with the class count taken from the
/// recursion.
pub fn recursive_table(n: usize) -> Result<CountTable> {
    let (p, q) = automorphism_split(n)?;
    let total = &p + &q;
    Ok(CountTable {
        n,
        labeled: labeled_count(n)?.to_string(),
        unlabeled: total.to_string(),
        symmetric: p.to_string(),
        asymmetric: q.to_string(),
    })
}
