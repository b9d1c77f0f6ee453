//! Dense univariate polynomials with exact integer coefficients, plus the
//! rational-coefficient helpers backing cyclotomic residue arithmetic.
//!
//! `IntPoly` is the representation layer under generic-mode scalars
//! (reduced fractions of integer polynomials in `q`) and under the Gaussian
//! polynomial machinery. Gaussian binomials are always produced here as
//! polynomials first and evaluated afterwards, so they stay well defined at
//! roots of unity where the quotient-of-factorials route degenerates to 0/0.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// Polynomial with integer coefficients; `coeffs[k]` is the coefficient of
/// `q^k`. Invariant: no trailing zeros, the zero polynomial is the empty
/// vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn from_i64(c: i64) -> Self {
        IntPoly::constant(BigInt::from(c))
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide every coefficient by `c`; panics unless exact.
    pub fn div_content_exact(&self, c: &BigInt) -> Self {
        assert!(!c.is_zero());
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let (d, r) = a.div_rem(c);
                    assert!(r.is_zero(), "inexact content division");
                    d
                })
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and force a positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division; panics if `d` does not divide `self` over the
    /// integers. Used for cyclotomic construction and gcd cofactors, where
    /// divisibility is guaranteed.
    pub fn div_exact(&self, d: &IntPoly) -> Self {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let dd = d.degree().unwrap();
        let nd = self.degree().expect("nonzero");
        assert!(nd >= dd, "exact division with too small a dividend");
        let lead = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = std::mem::take(&mut rem[k + dd]);
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            assert!(r.is_zero(), "inexact polynomial division");
            for (i, dc) in d.coeffs.iter().enumerate().take(dd) {
                let prod = dc * &c;
                rem[k + i] -= prod;
            }
            quot[k] = c;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "inexact polynomial division"
        );
        IntPoly::new(quot)
    }

    /// Pseudo-remainder of `self` by `d`: the remainder of
    /// `lc(d)^(deg self - deg d + 1) * self` under long division.
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.degree().expect("nonzero divisor");
        let mut rem = self.clone();
        let lead = d.leading().unwrap().clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.leading().unwrap().clone();
            rem = rem.scale(&lead);
            let sub = d.shift_up(rd - dd).scale(&top);
            rem = &rem - &sub;
            debug_assert!(rem.degree().is_none_or(|g| g < rd));
        }
        rem
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        let (mut r0, mut r1) = (a.primitive(), b.primitive());
        if r0.degree() < r1.degree() {
            std::mem::swap(&mut r0, &mut r1);
        }
        while !r1.is_zero() {
            let r2 = r0.pseudo_rem(&r1).primitive();
            r0 = std::mem::replace(&mut r1, r2);
        }
        r0.primitive()
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Coefficients as rationals, for residue reduction.
    pub(crate) fn to_rational_coeffs(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            if let Some(d) = rhs.coeffs.get(k) {
                c += d;
            }
            coeffs.push(c);
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            if let Some(d) = rhs.coeffs.get(k) {
                c -= d;
            }
            coeffs.push(c);
        }
        IntPoly::new(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::new(coeffs)
    }
}

/// The `l`-th cyclotomic polynomial, computed as `(q^l - 1)` divided by the
/// cyclotomic polynomials of the proper divisors of `l`. Monic by
/// construction.
pub fn cyclotomic(l: u32) -> IntPoly {
    assert!(l >= 1);
    let mut table: HashMap<u32, IntPoly> = HashMap::new();
    for d in 1..=l {
        if !l.is_multiple_of(d) {
            continue;
        }
        let mut num = IntPoly::monomial(BigInt::one(), d as usize);
        num = &num - &IntPoly::one();
        for (e, phi) in &table {
            if d % e == 0 {
                num = num.div_exact(phi);
            }
        }
        table.insert(d, num);
    }
    table.remove(&l).unwrap()
}

type GaussCache = Mutex<HashMap<(u32, u32), Arc<IntPoly>>>;

/// Gaussian polynomial `[n choose r]_q` for `0 <= r <= n`, memoized.
///
/// Built with the q-Pascal recurrence
/// `[n r] = [n-1 r-1] + q^r [n-1 r]`, which keeps every intermediate value a
/// polynomial.
pub fn gauss_poly(n: u32, r: u32) -> Arc<IntPoly> {
    static CACHE: OnceLock<GaussCache> = OnceLock::new();
    if r > n {
        return Arc::new(IntPoly::zero());
    }
    if r == 0 || r == n {
        return Arc::new(IntPoly::one());
    }
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&(n, r)) {
        return p.clone();
    }
    // Fill rows bottom-up so a long sweep only pays for new entries.
    for m in 2..=n {
        let top = r.min(m - 1);
        for k in 1..=top {
            let mut guard = cache.lock().unwrap();
            if guard.contains_key(&(m, k)) {
                continue;
            }
            let left = if k == 1 {
                Arc::new(IntPoly::one())
            } else {
                guard
                    .get(&(m - 1, k - 1))
                    .cloned()
                    .unwrap_or_else(|| Arc::new(IntPoly::one()))
            };
            let right = if k == m - 1 {
                Arc::new(IntPoly::one())
            } else {
                guard
                    .get(&(m - 1, k))
                    .cloned()
                    .unwrap_or_else(|| Arc::new(IntPoly::zero()))
            };
            let val = &*left + &right.shift_up(k as usize);
            guard.insert((m, k), Arc::new(val));
        }
    }
    let p = cache.lock().unwrap().get(&(n, r)).cloned();
    p.expect("gauss cache filled")
}

// ---------------------------------------------------------------------------
// Rational-coefficient helpers for residue arithmetic
// ---------------------------------------------------------------------------

pub(crate) fn rp_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn rp_is_zero(v: &[BigRational]) -> bool {
    v.is_empty()
}

pub(crate) fn rp_add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut c = a.get(k).cloned().unwrap_or_else(BigRational::zero);
        if let Some(d) = b.get(k) {
            c += d;
        }
        out.push(c);
    }
    rp_trim(&mut out);
    out
}

pub(crate) fn rp_neg(a: &[BigRational]) -> Vec<BigRational> {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn rp_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    rp_add(a, &rp_neg(b))
}

pub(crate) fn rp_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rp_trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic integer polynomial.
pub(crate) fn rp_rem_monic(mut a: Vec<BigRational>, modulus: &IntPoly) -> Vec<BigRational> {
    let md = modulus.degree().expect("nonzero modulus");
    debug_assert!(modulus.leading().unwrap().is_one(), "modulus must be monic");
    while a.len() > md {
        let top = a.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let shift = a.len() - md;
        for (i, c) in modulus.coeffs().iter().enumerate().take(md) {
            let delta = &top * BigRational::from_integer(c.clone());
            a[shift + i] -= delta;
        }
    }
    rp_trim(&mut a);
    a
}

/// Quotient and remainder over the rationals.
fn rp_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty());
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    rp_trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead = b.last().unwrap().clone();
    while rem.len() > db {
        let top = rem.last().unwrap().clone();
        let k = rem.len() - 1 - db;
        let c = top / &lead;
        for (i, bc) in b.iter().enumerate() {
            let delta = &c * bc;
            rem[k + i] -= delta;
        }
        quot[k] = c;
        // the top coefficient cancels exactly, so the length strictly drops
        rp_trim(&mut rem);
    }
    (quot, rem)
}

/// Inverse of `a` modulo `modulus` over the rationals, or `None` when `a`
/// is not invertible (only the zero residue, since the moduli used here are
/// irreducible).
pub(crate) fn rp_invert_mod(a: &[BigRational], modulus: &IntPoly) -> Option<Vec<BigRational>> {
    if rp_is_zero(a) {
        return None;
    }
    // Extended Euclid: r0 = modulus, r1 = a.
    let mut r0 = modulus.to_rational_coeffs();
    let mut r1 = a.to_vec();
    rp_trim(&mut r1);
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while !rp_is_zero(&r1) {
        let (q, r) = rp_divmod(&r0, &r1);
        let t2 = rp_sub(&t0, &rp_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.len() != 1 {
        return None;
    }
    let inv_lead = BigRational::one() / r0[0].clone();
    let mut out: Vec<BigRational> = t0.iter().map(|c| c * &inv_lead).collect();
    out = rp_rem_monic(out, modulus);
    Some(out)
}
