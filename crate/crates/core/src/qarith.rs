//! Exact coefficient arithmetic.
//!
//! A [`ScalarField`] is either *generic* — the field of fractions of integer
//! Laurent polynomials in `q` over the rationals — or a cyclotomic field at a
//! primitive `l`-th root of unity, realized as rational polynomials in `q`
//! modulo the `l`-th cyclotomic polynomial. Scalars are kept in canonical
//! form so equality is a structural comparison:
//!
//! - generic scalars are reduced fractions `num/den` of integer polynomials
//!   with coprime contents and a positive leading denominator coefficient;
//! - cyclotomic residues are reduced modulo the cyclotomic polynomial, so
//!   their degree is below `phi(l)`.
//!
//! All the q-combinatorics lives here as well: q-integers `(n)_q`,
//! q-factorials, and Gaussian binomials. Gaussian binomials are computed as
//! polynomials in `q` and evaluated afterwards — never as quotients of
//! evaluated factorials, which are 0/0 at roots of unity. Negative upper
//! index is defined by running the q-Pascal identity backwards.

use crate::error::{Error, Result};
use crate::poly::{self, IntPoly};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

/// Which field a scalar lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    Generic,
    RootOfUnity(u32),
}

#[derive(Debug)]
struct FieldInner {
    mode: Mode,
    /// Cyclotomic polynomial in root-of-unity mode.
    modulus: Option<IntPoly>,
}

/// Shared handle to a coefficient field. Cheap to clone; equality is by
/// mode only.
#[derive(Clone, Debug)]
pub struct ScalarField {
    inner: Arc<FieldInner>,
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.mode == other.inner.mode
    }
}
impl Eq for ScalarField {}
impl Hash for ScalarField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.mode.hash(state);
    }
}

impl ScalarField {
    /// The field of rational functions in `q`.
    pub fn generic() -> Self {
        static GENERIC: OnceLock<ScalarField> = OnceLock::new();
        GENERIC
            .get_or_init(|| ScalarField {
                inner: Arc::new(FieldInner {
                    mode: Mode::Generic,
                    modulus: None,
                }),
            })
            .clone()
    }

    /// The cyclotomic field at a primitive `l`-th root of unity, `l >= 2`.
    pub fn root_of_unity(l: u32) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidOrder(l));
        }
        Ok(ScalarField {
            inner: Arc::new(FieldInner {
                mode: Mode::RootOfUnity(l),
                modulus: Some(poly::cyclotomic(l)),
            }),
        })
    }

    pub fn mode(&self) -> Mode {
        self.inner.mode
    }

    /// The root-of-unity order, if any.
    pub fn order(&self) -> Option<u32> {
        match self.inner.mode {
            Mode::Generic => None,
            Mode::RootOfUnity(l) => Some(l),
        }
    }

    pub fn is_generic(&self) -> bool {
        self.order().is_none()
    }

    fn modulus(&self) -> &IntPoly {
        self.inner.modulus.as_ref().expect("root-of-unity field")
    }

    /// Degree of the cyclotomic extension, `phi(l)`.
    pub fn extension_degree(&self) -> Option<usize> {
        self.inner.modulus.as_ref().map(|m| m.degree().unwrap())
    }

    pub fn zero(&self) -> Scalar {
        match self.inner.mode {
            Mode::Generic => Scalar {
                field: self.clone(),
                repr: Repr::Fraction {
                    num: IntPoly::zero(),
                    den: IntPoly::one(),
                },
            },
            Mode::RootOfUnity(_) => Scalar {
                field: self.clone(),
                repr: Repr::Residue(Vec::new()),
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> Scalar {
        self.from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(&self, c: BigInt) -> Scalar {
        match self.inner.mode {
            Mode::Generic => Scalar {
                field: self.clone(),
                repr: Repr::Fraction {
                    num: IntPoly::constant(c),
                    den: IntPoly::one(),
                },
            },
            Mode::RootOfUnity(_) => {
                let mut v = vec![BigRational::from_integer(c)];
                poly::rp_trim(&mut v);
                Scalar {
                    field: self.clone(),
                    repr: Repr::Residue(v),
                }
            }
        }
    }

    pub fn from_rational(&self, c: BigRational) -> Scalar {
        match self.inner.mode {
            Mode::Generic => self.make_fraction(
                IntPoly::constant(c.numer().clone()),
                IntPoly::constant(c.denom().clone()),
            ),
            Mode::RootOfUnity(_) => {
                let mut v = vec![c];
                poly::rp_trim(&mut v);
                Scalar {
                    field: self.clone(),
                    repr: Repr::Residue(v),
                }
            }
        }
    }

    /// The field generator: `q` in generic mode, the root of unity in
    /// root-of-unity mode.
    pub fn q(&self) -> Scalar {
        self.q_power(1)
    }

    /// `q^k` for any integer `k` (reduced modulo `l` at a root of unity).
    pub fn q_power(&self, k: i64) -> Scalar {
        match self.inner.mode {
            Mode::Generic => {
                if k >= 0 {
                    Scalar {
                        field: self.clone(),
                        repr: Repr::Fraction {
                            num: IntPoly::monomial(BigInt::one(), k as usize),
                            den: IntPoly::one(),
                        },
                    }
                } else {
                    Scalar {
                        field: self.clone(),
                        repr: Repr::Fraction {
                            num: IntPoly::one(),
                            den: IntPoly::monomial(BigInt::one(), (-k) as usize),
                        },
                    }
                }
            }
            Mode::RootOfUnity(l) => {
                let e = k.rem_euclid(l as i64) as usize;
                self.from_int_poly(&IntPoly::monomial(BigInt::one(), e))
            }
        }
    }

    /// Interpret an integer polynomial in `q` as a field element (reducing
    /// modulo the cyclotomic polynomial at a root of unity).
    pub fn from_int_poly(&self, p: &IntPoly) -> Scalar {
        match self.inner.mode {
            Mode::Generic => Scalar {
                field: self.clone(),
                repr: Repr::Fraction {
                    num: p.clone(),
                    den: IntPoly::one(),
                },
            },
            Mode::RootOfUnity(_) => {
                let v = poly::rp_rem_monic(p.to_rational_coeffs(), self.modulus());
                Scalar {
                    field: self.clone(),
                    repr: Repr::Residue(v),
                }
            }
        }
    }

    /// Canonical fraction `num/den`; panics if `den` is zero (internal
    /// constructors guarantee nonzero denominators, and the public division
    /// path reports [`Error::DivisionByZero`] instead).
    fn make_fraction(&self, num: IntPoly, den: IntPoly) -> Scalar {
        debug_assert!(self.is_generic());
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return self.zero();
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else {
            let g = IntPoly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let cn = num.content();
        let cd = den.content();
        let k = num::Integer::gcd(&cn, &cd);
        if !k.is_one() {
            num = num.div_content_exact(&k);
            den = den.div_content_exact(&k);
        }
        if den.leading().is_some_and(|c| c.is_negative()) {
            num = -&num;
            den = -&den;
        }
        Scalar {
            field: self.clone(),
            repr: Repr::Fraction { num, den },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Fraction { num: IntPoly, den: IntPoly },
    Residue(Vec<BigRational>),
}

/// Exact element of the coefficient field, in canonical form.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: ScalarField,
    repr: Repr,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}
impl Eq for Scalar {}
impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.repr.hash(state);
    }
}

fn check_same_field(a: &Scalar, b: &Scalar) {
    assert!(
        a.field == b.field,
        "scalar field mismatch: {:?} vs {:?}",
        a.field.mode(),
        b.field.mode()
    );
}

impl Scalar {
    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Fraction { num, .. } => num.is_zero(),
            Repr::Residue(v) => v.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Fraction { num, den } => num.is_one() && den.is_one(),
            Repr::Residue(v) => v.len() == 1 && v[0].is_one(),
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.repr {
            Repr::Fraction { num, den } => Ok(self.field.make_fraction(den.clone(), num.clone())),
            Repr::Residue(v) => {
                let inv =
                    poly::rp_invert_mod(v, self.field.modulus()).ok_or(Error::DivisionByZero)?;
                Ok(Scalar {
                    field: self.field.clone(),
                    repr: Repr::Residue(inv),
                })
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        check_same_field(self, rhs);
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (&self.repr, &rhs.repr) {
            (Repr::Fraction { num: n1, den: d1 }, Repr::Fraction { num: n2, den: d2 }) => {
                Ok(self.field.make_fraction(n1 * d2, d1 * n2))
            }
            _ => Ok(self * &rhs.inv()?),
        }
    }

    /// Integer power; negative exponents require an invertible base.
    pub fn pow(&self, k: i64) -> Result<Scalar> {
        if k == 0 {
            return Ok(self.field.one());
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Substitute a rational value for `q` (generic mode only); errors if
    /// the denominator vanishes at that point.
    pub fn subst_q(&self, value: &BigRational) -> Result<BigRational> {
        match &self.repr {
            Repr::Fraction { num, den } => {
                let d = den.eval_rational(value);
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(num.eval_rational(value) / d)
            }
            Repr::Residue(_) => Err(Error::RequiresGenericMode),
        }
    }

    /// The value as a rational number, when the scalar is constant.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Fraction { num, den } => {
                if num.degree().unwrap_or(0) == 0 && den.degree().unwrap_or(0) == 0 {
                    let n = num.coeff(0);
                    let d = den.coeff(0);
                    Some(BigRational::new(n, d))
                } else {
                    None
                }
            }
            Repr::Residue(v) => match v.len() {
                0 => Some(BigRational::zero()),
                1 => Some(v[0].clone()),
                _ => None,
            },
        }
    }

    /// Split a sign off for display: `(true, -x)` when the leading printed
    /// coefficient is negative.
    pub fn split_sign(&self) -> (bool, Scalar) {
        let neg = match &self.repr {
            Repr::Fraction { num, .. } => num.leading().is_some_and(|c| c.is_negative()),
            Repr::Residue(v) => v.last().is_some_and(|c| c.is_negative()),
        };
        if neg {
            (true, -self)
        } else {
            (false, self.clone())
        }
    }

    /// Whether the printed form needs parentheses when used as a
    /// multiplicative factor.
    pub fn needs_parens_as_factor(&self) -> bool {
        self.display_term_count() > 1
    }

    fn display_term_count(&self) -> usize {
        match &self.repr {
            Repr::Fraction { num, den } => {
                if den.is_one() || den_is_monomial(den) {
                    num.coeffs().iter().filter(|c| !c.is_zero()).count()
                } else {
                    // printed as (num)/(den), which binds like a factor
                    1
                }
            }
            Repr::Residue(v) => v.iter().filter(|c| !c.is_zero()).count(),
        }
    }
}

fn den_is_monomial(den: &IntPoly) -> bool {
    den.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        check_same_field(self, rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Fraction { num: n1, den: d1 }, Repr::Fraction { num: n2, den: d2 }) => {
                if d1.is_one() && d2.is_one() {
                    Scalar {
                        field: self.field.clone(),
                        repr: Repr::Fraction {
                            num: n1 + n2,
                            den: IntPoly::one(),
                        },
                    }
                } else {
                    let num = &(n1 * d2) + &(n2 * d1);
                    self.field.make_fraction(num, d1 * d2)
                }
            }
            (Repr::Residue(a), Repr::Residue(b)) => Scalar {
                field: self.field.clone(),
                repr: Repr::Residue(poly::rp_add(a, b)),
            },
            _ => unreachable!("mixed representations in one field"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.repr {
            Repr::Fraction { num, den } => Scalar {
                field: self.field.clone(),
                repr: Repr::Fraction {
                    num: -num,
                    den: den.clone(),
                },
            },
            Repr::Residue(v) => Scalar {
                field: self.field.clone(),
                repr: Repr::Residue(poly::rp_neg(v)),
            },
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        check_same_field(self, rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Fraction { num: n1, den: d1 }, Repr::Fraction { num: n2, den: d2 }) => {
                if d1.is_one() && d2.is_one() {
                    Scalar {
                        field: self.field.clone(),
                        repr: Repr::Fraction {
                            num: n1 * n2,
                            den: IntPoly::one(),
                        },
                    }
                } else {
                    self.field.make_fraction(n1 * n2, d1 * d2)
                }
            }
            (Repr::Residue(a), Repr::Residue(b)) => {
                let prod = poly::rp_mul(a, b);
                let red = poly::rp_rem_monic(prod, self.field.modulus());
                Scalar {
                    field: self.field.clone(),
                    repr: Repr::Residue(red),
                }
            }
            _ => unreachable!("mixed representations in one field"),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Horner evaluation of an integer polynomial at an arbitrary scalar.
pub fn eval_int_poly(p: &IntPoly, x: &Scalar) -> Scalar {
    let field = x.field();
    let mut acc = field.zero();
    for c in p.coeffs().iter().rev() {
        acc = &(&acc * x) + &field.from_bigint(c.clone());
    }
    acc
}

pub(crate) fn q_integer_poly(n: u32) -> IntPoly {
    IntPoly::new(vec![BigInt::one(); n as usize])
}

/// The q-integer `(n)_q = 1 + q + ... + q^(n-1)` for `n > 0`, zero for
/// `n = 0`, and `(-n)_q = -q^(-n) (n)_q` for negative arguments.
pub fn q_integer(field: &ScalarField, n: i64) -> Scalar {
    if n == 0 {
        field.zero()
    } else if n > 0 {
        field.from_int_poly(&q_integer_poly(n as u32))
    } else {
        -&(&field.q_power(n) * &q_integer(field, -n))
    }
}

/// `(n)_q! = (1)_q (2)_q ... (n)_q`, with `(0)_q! = 1`.
pub fn q_factorial(field: &ScalarField, n: i64) -> Result<Scalar> {
    if n < 0 {
        return Err(Error::NegativeArgument {
            what: "q-factorial argument",
            value: n,
        });
    }
    let mut acc = field.one();
    for k in 1..=n {
        acc = &acc * &q_integer(field, k);
    }
    Ok(acc)
}

/// Gaussian binomial evaluated in the field. Conventions: 1 for `r = 0`,
/// 0 for `r < 0` or `0 <= n < r`; for `n < 0` the value comes from running
/// the q-Pascal identity backwards, which closes to
/// `(-1)^r q^(rn - r(r-1)/2) [r - n - 1 choose r]_q`.
pub fn gauss_binomial(field: &ScalarField, n: i64, r: i64) -> Scalar {
    if r < 0 {
        return field.zero();
    }
    if r == 0 {
        return field.one();
    }
    if n >= 0 {
        if n < r {
            return field.zero();
        }
        return field.from_int_poly(&poly::gauss_poly(n as u32, r as u32));
    }
    let exp = r * n - r * (r - 1) / 2;
    let sign = if r % 2 == 0 { 1 } else { -1 };
    let base = field.from_int_poly(&poly::gauss_poly((r - n - 1) as u32, r as u32));
    let val = &field.q_power(exp) * &base;
    if sign < 0 {
        -&val
    } else {
        val
    }
}

/// Gaussian binomial with the base `q` replaced by an arbitrary invertible
/// scalar (used for binomials in powers of the root of unity).
pub fn gauss_binomial_at(n: i64, r: i64, base: &Scalar) -> Result<Scalar> {
    let field = base.field();
    if r < 0 {
        return Ok(field.zero());
    }
    if r == 0 {
        return Ok(field.one());
    }
    if n >= 0 {
        if n < r {
            return Ok(field.zero());
        }
        return Ok(eval_int_poly(&poly::gauss_poly(n as u32, r as u32), base));
    }
    let exp = r * n - r * (r - 1) / 2;
    let val = eval_int_poly(&poly::gauss_poly((r - n - 1) as u32, r as u32), base);
    let val = &base.pow(exp)? * &val;
    Ok(if r % 2 == 0 { val } else { -&val })
}

/// Check the q-integer addition identity and the q-Pascal identity at a
/// pair `(a, b)`:
/// `(a)_q + q^a (b)_q = (a+b)_q` and
/// `[a+b-1 choose a-1]_q + q^a [a+b-1 choose a]_q = [a+b choose a]_q`.
pub fn verify_q_pascal(field: &ScalarField, a: i64, b: i64) -> bool {
    let qa = field.q_power(a);
    let lhs_int = &q_integer(field, a) + &(&qa * &q_integer(field, b));
    if lhs_int != q_integer(field, a + b) {
        return false;
    }
    let lhs_bin =
        &gauss_binomial(field, a + b - 1, a - 1) + &(&qa * &gauss_binomial(field, a + b - 1, a));
    lhs_bin == gauss_binomial(field, a + b, a)
}

// ---------------------------------------------------------------------------
// Display
// ---------------------------------------------------------------------------

struct Monomial {
    exp: i64,
    coeff: BigRational,
}

fn write_monomials(f: &mut fmt::Formatter<'_>, var: &str, terms: &[Monomial]) -> fmt::Result {
    for (k, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        let mag = if neg {
            -t.coeff.clone()
        } else {
            t.coeff.clone()
        };
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if t.exp == 0 {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if t.exp == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{}", t.exp)?;
            }
        }
    }
    Ok(())
}

fn poly_monomials(p: &IntPoly, shift: i64, den: &BigInt) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out.push(Monomial {
            exp: k as i64 + shift,
            coeff: BigRational::new(c.clone(), den.clone()),
        });
    }
    out.reverse();
    out
}

fn fmt_int_poly(f: &mut fmt::Formatter<'_>, p: &IntPoly) -> fmt::Result {
    let terms = poly_monomials(p, 0, &BigInt::one());
    write_monomials(f, "q", &terms)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Fraction { num, den } => {
                if num.is_zero() {
                    return write!(f, "0");
                }
                if den.is_one() {
                    fmt_int_poly(f, num)
                } else if den_is_monomial(den) {
                    let k = den.degree().unwrap() as i64;
                    let c = den.leading().unwrap();
                    let terms = poly_monomials(num, -k, c);
                    write_monomials(f, "q", &terms)
                } else {
                    write!(f, "(")?;
                    fmt_int_poly(f, num)?;
                    write!(f, ")/(")?;
                    fmt_int_poly(f, den)?;
                    write!(f, ")")
                }
            }
            Repr::Residue(v) => {
                if v.is_empty() {
                    return write!(f, "0");
                }
                let mut terms: Vec<Monomial> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| Monomial {
                        exp: k as i64,
                        coeff: c.clone(),
                    })
                    .collect();
                terms.reverse();
                write_monomials(f, "e", &terms)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen() -> ScalarField {
        ScalarField::generic()
    }

    fn root(l: u32) -> ScalarField {
        ScalarField::root_of_unity(l).unwrap()
    }

    /// `(1 - q^n) / (1 - q)` by exact polynomial division — the defining
    /// quotient, used as an oracle for the closed form.
    fn q_integer_by_quotient(n: u32) -> IntPoly {
        let mut num = IntPoly::one();
        num = &num - &IntPoly::monomial(BigInt::one(), n as usize);
        let mut den = IntPoly::one();
        den = &den - &IntPoly::monomial(BigInt::one(), 1);
        num.div_exact(&den)
    }

    #[test]
    fn q_integer_examples() {
        let f = gen();
        assert!(q_integer(&f, 0).is_zero());
        assert_eq!(q_integer(&f, 3), f.from_int_poly(&q_integer_by_quotient(3)));
        // (-2)_q = -q^-2 (2)_q
        let expected = -&(&f.q_power(-2) * &q_integer(&f, 2));
        assert_eq!(q_integer(&f, -2), expected);
        assert!(q_integer(&root(5), 5).is_zero());
    }

    #[test]
    fn q_integer_at_one_is_classical() {
        let f = gen();
        let one = BigRational::one();
        for n in -12..=12i64 {
            let v = q_integer(&f, n).subst_q(&one).unwrap();
            assert_eq!(v, BigRational::from_integer(BigInt::from(n)), "n={n}");
        }
    }

    #[test]
    fn q_factorial_examples() {
        let f = gen();
        assert!(q_factorial(&f, 0).unwrap().is_one());
        let expected = &q_integer(&f, 2) * &q_integer(&f, 3);
        assert_eq!(q_factorial(&f, 3).unwrap(), expected);
        assert!(q_factorial(&f, -1).is_err());
        // (3)_eps = 1 + eps + eps^2 = 0 at l = 3, so the factorial vanishes
        let r3 = root(3);
        let direct = &(&r3.one() + &r3.q_power(1)) + &r3.q_power(2);
        assert!(direct.is_zero());
        assert!(q_factorial(&r3, 3).unwrap().is_zero());
    }

    #[test]
    fn gauss_binomial_examples() {
        let f = gen();
        for n in -4..=8i64 {
            assert!(gauss_binomial(&f, n, 0).is_one());
        }
        // Pascal from the two row-1 cases: [2 1] = [1 0] + q [1 1]
        let expected = &gauss_binomial(&f, 1, 0) + &(&f.q() * &gauss_binomial(&f, 1, 1));
        assert_eq!(gauss_binomial(&f, 2, 1), expected);
        assert_eq!(expected, &f.one() + &f.q());
        assert!(gauss_binomial(&root(5), 5, 2).is_zero());
        assert!(gauss_binomial(&f, 1, 2).is_zero());
        assert!(gauss_binomial(&f, 3, -1).is_zero());
    }

    #[test]
    fn gauss_binomial_symmetry_and_classical_limit() {
        let f = gen();
        let one = BigRational::one();
        for n in 0..=12i64 {
            for r in 0..=n {
                assert_eq!(gauss_binomial(&f, n, r), gauss_binomial(&f, n, n - r));
                let classical = gauss_binomial(&f, n, r).subst_q(&one).unwrap();
                // n choose r by multiplicative recurrence
                let mut c = BigRational::one();
                for k in 0..r {
                    c = c * BigRational::from_integer(BigInt::from(n - k))
                        / BigRational::from_integer(BigInt::from(k + 1));
                }
                assert_eq!(classical, c, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn negative_upper_index_matches_backward_pascal() {
        // iterate [n-1 r] = q^-r ([n r] - [n-1 r-1]) downward from row 0
        let f = gen();
        let rmax = 6i64;
        let mut row: Vec<Scalar> = (0..=rmax).map(|r| gauss_binomial(&f, 0, r)).collect();
        let qinv = f.q_power(-1);
        for n in (-6..0i64).rev() {
            let mut next: Vec<Scalar> = Vec::with_capacity(row.len());
            for r in 0..=rmax {
                let prev = if r == 0 {
                    f.zero()
                } else {
                    next[(r - 1) as usize].clone()
                };
                let qr = qinv.pow(r).unwrap();
                next.push(&qr * &(&row[r as usize] - &prev));
            }
            for r in 0..=rmax {
                assert_eq!(next[r as usize], gauss_binomial(&f, n, r), "n={n} r={r}");
            }
            row = next;
        }
    }

    #[test]
    fn root_of_unity_vanishing() {
        for l in [3u32, 5, 7, 8, 12] {
            let f = root(l);
            for k in -4..=4i64 {
                if k == 0 {
                    continue;
                }
                assert!(q_integer(&f, k * l as i64).is_zero(), "l={l} k={k}");
            }
            for i in 1..l as i64 {
                assert!(gauss_binomial(&f, l as i64, i).is_zero(), "l={l} i={i}");
            }
        }
    }

    #[test]
    fn pascal_identities_sweep() {
        let fields = vec![gen(), root(3), root(5), root(7), root(8), root(12)];
        for f in &fields {
            for a in -6..=12i64 {
                for b in -6..=12i64 {
                    assert!(verify_q_pascal(f, a, b), "mode={:?} a={a} b={b}", f.mode());
                }
            }
        }
    }

    #[test]
    fn fraction_canonicalization() {
        let f = gen();
        // (q^2 - 1)/(q - 1) reduces to q + 1
        let num = &f.q_power(2) - &f.one();
        let den = &f.q() - &f.one();
        let v = num.div(&den).unwrap();
        assert_eq!(v, &f.q() + &f.one());
        // sign normalization: 1/(-q + 1) has positive leading denominator
        let w = f.one().div(&(&f.one() - &f.q())).unwrap();
        assert_eq!(w.to_string(), "(-1)/(q - 1)");
        assert_eq!(&w * &(&f.one() - &f.q()), f.one());
    }

    #[test]
    fn division_errors_and_inverse() {
        let f = gen();
        assert_eq!(f.one().div(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
        let r5 = root(5);
        let x = &r5.q_power(3) - &r5.from_int(2);
        let prod = &x * &x.inv().unwrap();
        assert!(prod.is_one());
        // 1/(1-eps) at l = 3 is (2 + eps)/3
        let r3 = root(3);
        let inv = (&r3.one() - &r3.q()).inv().unwrap();
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let expected = &r3.from_rational(third.clone()) * &(&r3.from_int(2) + &r3.q());
        assert_eq!(inv, expected);
        assert_eq!(inv.to_string(), "1/3*e + 2/3");
    }

    #[test]
    fn display_forms() {
        let f = gen();
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(q_integer(&f, 3).to_string(), "q^2 + q + 1");
        assert_eq!(q_integer(&f, -2).to_string(), "-q^-1 - q^-2");
        assert_eq!(f.q_power(-1).to_string(), "q^-1");
        let half = f.from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!((&half * &f.q_power(-1)).to_string(), "1/2*q^-1");
        let frac = q_integer(&f, 2).div(&q_integer(&f, 3)).unwrap();
        assert_eq!(frac.to_string(), "(q + 1)/(q^2 + q + 1)");
    }

    #[test]
    fn scalar_pow() {
        let f = gen();
        let x = &f.q() + &f.one();
        let cube = x.pow(3).unwrap();
        assert_eq!(cube, &(&x * &x) * &x);
        let back = cube.pow(-1).unwrap();
        assert!((&cube * &back).is_one());
        assert!(f.zero().pow(-1).is_err());
    }

    #[test]
    fn gauss_binomial_at_arbitrary_base() {
        // at base q^-2 the binomial is the Gaussian polynomial evaluated there
        let f = gen();
        let base = f.q_power(-2);
        let v = gauss_binomial_at(4, 2, &base).unwrap();
        let direct = eval_int_poly(&poly::gauss_poly(4, 2), &base);
        assert_eq!(v, direct);
        // base 1 gives classical binomials
        let one = f.one();
        let v = gauss_binomial_at(6, 3, &one).unwrap();
        assert_eq!(v, f.from_int(20));
    }
}
