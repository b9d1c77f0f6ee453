//! The shared expression grammar: parsing and evaluation of the text
//! format used by the CLI and the serialization round trips.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-'? atom ('^' sint)?
//! atom   := INT | 'q' | 'e' | 't' | 'C'
//!         | 'e' '(' sint ')' | 'L' '(' sint ')'
//!         | 'x' '^' '(' nat ')' | 'x'
//!         | '(' expr ')'
//! ```
//!
//! `q` is the field generator (the root of unity in root mode, where the
//! spelling `e` is also accepted); `t` is the weight indeterminate;
//! `e(i)`, `L(j)` and `C` are algebra generators; `x^(a)` is a divided
//! power monomial and `x` the Laurent variable. Division requires a
//! scalar-valued divisor, which is how printed fractions `(num)/(den)`
//! re-enter. Syntax errors carry the byte offset of the offending token.

use crate::error::{Error, Result};
use crate::pbw::{NoncommPoly, Word};
use crate::qarith::{Scalar, ScalarField};
use crate::qdivided::{DividedElement, LaurentPoly};
use crate::qlie::{AlgebraElement, BasisElement, GradedAlgebra};
use crate::qrep::TPoly;
use num::BigInt;

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Integer(BigInt),
    /// The field generator `q`.
    Q,
    /// The explicit root-of-unity spelling `e`.
    Epsilon,
    /// The weight indeterminate `t`.
    T,
    Gen(BasisElement),
    DividedX(u32),
    /// The Laurent variable `x`.
    LaurentX,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(BigInt),
    Name(char),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

fn err_at(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn tokenize(input: &str) -> Result<Lexer> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut k = 0usize;
    while k < bytes.len() {
        let c = bytes[k] as char;
        if c.is_ascii_whitespace() {
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < bytes.len() && (bytes[k] as char).is_ascii_digit() {
                k += 1;
            }
            let n: BigInt = input[start..k].parse().expect("digits");
            toks.push((Tok::Int(n), start));
            continue;
        }
        match c {
            'q' | 'e' | 't' | 'x' | 'L' | 'C' => {
                toks.push((Tok::Name(c), k));
                k += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                toks.push((Tok::Sym(c), k));
                k += 1;
            }
            _ => return Err(err_at(k, format!("unexpected character '{c}'"))),
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: input.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(err_at(self.offset(), format!("expected '{c}'")))
        }
    }

    /// Optionally signed integer.
    fn expect_sint(&mut self) -> Result<i64> {
        let neg = self.eat_sym('-');
        let off = self.offset();
        match self.next() {
            Some(Tok::Int(n)) => {
                let v: i64 = n
                    .try_into()
                    .map_err(|_| err_at(off, "integer out of range"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(err_at(off, "expected an integer")),
        }
    }
}

/// Parse an expression; errors carry the byte offset of the first
/// offending token.
pub fn parse(input: &str) -> Result<Expr> {
    let mut lx = tokenize(input)?;
    let e = parse_expr(&mut lx)?;
    if lx.peek().is_some() {
        return Err(err_at(lx.offset(), "trailing input"));
    }
    Ok(e)
}

fn parse_expr(lx: &mut Lexer) -> Result<Expr> {
    let mut acc = parse_term(lx)?;
    loop {
        if lx.eat_sym('+') {
            let rhs = parse_term(lx)?;
            acc = Expr::Add(Box::new(acc), Box::new(rhs));
        } else if lx.eat_sym('-') {
            let rhs = parse_term(lx)?;
            acc = Expr::Sub(Box::new(acc), Box::new(rhs));
        } else {
            return Ok(acc);
        }
    }
}

fn parse_term(lx: &mut Lexer) -> Result<Expr> {
    let mut acc = parse_factor(lx)?;
    loop {
        if lx.eat_sym('*') {
            let rhs = parse_factor(lx)?;
            acc = Expr::Mul(Box::new(acc), Box::new(rhs));
        } else if lx.eat_sym('/') {
            let rhs = parse_factor(lx)?;
            acc = Expr::Div(Box::new(acc), Box::new(rhs));
        } else {
            return Ok(acc);
        }
    }
}

fn parse_factor(lx: &mut Lexer) -> Result<Expr> {
    if lx.eat_sym('-') {
        let inner = parse_factor(lx)?;
        return Ok(Expr::Neg(Box::new(inner)));
    }
    let mut atom = parse_atom(lx)?;
    if matches!(lx.peek(), Some(Tok::Sym('^'))) {
        // `x^(a)` was consumed inside parse_atom, so `^` here is a power
        lx.eat_sym('^');
        let k = lx.expect_sint()?;
        atom = Expr::Pow(Box::new(atom), k);
    }
    Ok(atom)
}

fn parse_atom(lx: &mut Lexer) -> Result<Expr> {
    let off = lx.offset();
    match lx.next() {
        Some(Tok::Int(n)) => Ok(Expr::Integer(n)),
        Some(Tok::Name('q')) => Ok(Expr::Q),
        Some(Tok::Name('t')) => Ok(Expr::T),
        Some(Tok::Name('C')) => Ok(Expr::Gen(BasisElement::C)),
        Some(Tok::Name('e')) => {
            if lx.eat_sym('(') {
                let i = lx.expect_sint()?;
                lx.expect_sym(')')?;
                Ok(Expr::Gen(BasisElement::E(i)))
            } else {
                Ok(Expr::Epsilon)
            }
        }
        Some(Tok::Name('L')) => {
            lx.expect_sym('(')?;
            let j = lx.expect_sint()?;
            lx.expect_sym(')')?;
            Ok(Expr::Gen(BasisElement::L(j)))
        }
        Some(Tok::Name('x')) => {
            // divided monomial x^(a); a bare x is the Laurent variable and
            // leaves any '^ INT' to the factor rule
            if matches!(lx.peek(), Some(Tok::Sym('^')))
                && matches!(lx.toks.get(lx.pos + 1), Some((Tok::Sym('('), _)))
            {
                lx.eat_sym('^');
                lx.eat_sym('(');
                let at = lx.offset();
                let a = lx.expect_sint()?;
                lx.expect_sym(')')?;
                let a = u32::try_from(a)
                    .map_err(|_| err_at(at, "divided power exponent must be nonnegative"))?;
                Ok(Expr::DividedX(a))
            } else {
                Ok(Expr::LaurentX)
            }
        }
        Some(Tok::Sym('(')) => {
            let inner = parse_expr(lx)?;
            lx.expect_sym(')')?;
            Ok(inner)
        }
        _ => Err(err_at(off, "expected a value")),
    }
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

/// Evaluate a scalar expression (no generators, no `t`, no `x`).
pub fn eval_scalar(expr: &Expr, field: &ScalarField) -> Result<Scalar> {
    let p = eval_tpoly(expr, field)?;
    if !p.is_constant() {
        return Err(Error::Unsupported(
            "the weight indeterminate t is not a scalar".to_string(),
        ));
    }
    Ok(p.coeff(0))
}

/// Evaluate a weight polynomial (scalars plus the indeterminate `t`).
pub fn eval_tpoly(expr: &Expr, field: &ScalarField) -> Result<TPoly> {
    Ok(match expr {
        Expr::Integer(n) => TPoly::constant(field.from_bigint(n.clone())),
        Expr::Q => TPoly::constant(field.q()),
        Expr::Epsilon => {
            if field.is_generic() {
                return Err(Error::Unsupported(
                    "'e' denotes the root of unity and needs root mode".to_string(),
                ));
            }
            TPoly::constant(field.q())
        }
        Expr::T => TPoly::t(field),
        Expr::Gen(b) => return Err(Error::Unsupported(format!("generator {b} is not a scalar"))),
        Expr::DividedX(_) | Expr::LaurentX => {
            return Err(Error::Unsupported(
                "monomials in x are not scalars".to_string(),
            ))
        }
        Expr::Neg(a) => eval_tpoly(a, field)?.neg(),
        Expr::Add(a, b) => eval_tpoly(a, field)?.add(&eval_tpoly(b, field)?),
        Expr::Sub(a, b) => eval_tpoly(a, field)?.sub(&eval_tpoly(b, field)?),
        Expr::Mul(a, b) => eval_tpoly(a, field)?.mul(&eval_tpoly(b, field)?),
        Expr::Div(a, b) => eval_tpoly(a, field)?.div_constant(&eval_tpoly(b, field)?)?,
        Expr::Pow(a, k) => {
            let base = eval_tpoly(a, field)?;
            if *k >= 0 {
                let mut acc = TPoly::constant(field.one());
                for _ in 0..*k {
                    acc = acc.mul(&base);
                }
                acc
            } else {
                if !base.is_constant() {
                    return Err(Error::Unsupported(
                        "negative power of a non-constant weight polynomial".to_string(),
                    ));
                }
                TPoly::constant(base.coeff(0).pow(*k)?)
            }
        }
    })
}

/// Evaluate a word-algebra expression over a cataloged algebra: scalars,
/// generators, sums, products and nonnegative powers.
pub fn eval_noncomm(expr: &Expr, alg: &GradedAlgebra) -> Result<NoncommPoly> {
    let field = alg.field();
    Ok(match expr {
        Expr::Integer(n) => {
            NoncommPoly::from_word(field, Word::empty(), field.from_bigint(n.clone()))
        }
        Expr::Q => NoncommPoly::from_word(field, Word::empty(), field.q()),
        Expr::Epsilon => {
            if field.is_generic() {
                return Err(Error::Unsupported(
                    "'e' denotes the root of unity and needs root mode".to_string(),
                ));
            }
            NoncommPoly::from_word(field, Word::empty(), field.q())
        }
        Expr::T => {
            return Err(Error::Unsupported(
                "the weight indeterminate t is not an algebra element".to_string(),
            ))
        }
        Expr::Gen(b) => {
            alg.check_member(*b)?;
            NoncommPoly::from_letter(field, *b)
        }
        Expr::DividedX(_) | Expr::LaurentX => {
            return Err(Error::Unsupported(
                "monomials in x are not elements of this algebra".to_string(),
            ))
        }
        Expr::Neg(a) => NoncommPoly::zero(field).sub(&eval_noncomm(a, alg)?),
        Expr::Add(a, b) => eval_noncomm(a, alg)?.add(&eval_noncomm(b, alg)?),
        Expr::Sub(a, b) => eval_noncomm(a, alg)?.sub(&eval_noncomm(b, alg)?),
        Expr::Mul(a, b) => eval_noncomm(a, alg)?.mul(&eval_noncomm(b, alg)?),
        Expr::Div(a, b) => {
            let num = eval_noncomm(a, alg)?;
            let den = eval_noncomm(b, alg)?;
            let c = as_scalar(&den)
                .ok_or_else(|| Error::Unsupported("division by a non-scalar".to_string()))?;
            num.scale(&c.inv()?)
        }
        Expr::Pow(a, k) => {
            let base = eval_noncomm(a, alg)?;
            if *k >= 0 {
                base.pow(*k as u32)
            } else {
                let c = as_scalar(&base).ok_or_else(|| {
                    Error::Unsupported("negative power of a non-scalar".to_string())
                })?;
                NoncommPoly::from_word(field, Word::empty(), c.pow(*k)?)
            }
        }
    })
}

fn as_scalar(p: &NoncommPoly) -> Option<Scalar> {
    if p.is_zero() {
        return Some(p.field().zero());
    }
    let mut terms = p.terms();
    let (w, c) = terms.next()?;
    if terms.next().is_some() || !w.is_empty() {
        return None;
    }
    Some(c.clone())
}

/// Evaluate a degree-one algebra expression: a linear combination of
/// generators with scalar coefficients.
pub fn eval_algebra_element(expr: &Expr, alg: &GradedAlgebra) -> Result<AlgebraElement> {
    let p = eval_noncomm(expr, alg)?;
    let mut out = AlgebraElement::zero(alg.field());
    for (w, c) in p.terms() {
        match w.letters() {
            [b] => out.add_term(*b, c.clone()),
            _ => {
                return Err(Error::Unsupported(
                    "expected a linear combination of generators".to_string(),
                ))
            }
        }
    }
    Ok(out)
}

/// Evaluate a divided power expression (commutative, `x^(a)` monomials).
pub fn eval_divided(expr: &Expr, field: &ScalarField) -> Result<DividedElement> {
    use crate::qdivided::dp_multiply;
    Ok(match expr {
        Expr::Integer(n) => DividedElement::one(field).scale(&field.from_bigint(n.clone())),
        Expr::Q => DividedElement::one(field).scale(&field.q()),
        Expr::Epsilon => {
            if field.is_generic() {
                return Err(Error::Unsupported(
                    "'e' denotes the root of unity and needs root mode".to_string(),
                ));
            }
            DividedElement::one(field).scale(&field.q())
        }
        Expr::DividedX(a) => DividedElement::monomial(field, *a)?,
        Expr::LaurentX => {
            return Err(Error::Unsupported(
                "the Laurent variable does not live in the divided power algebra".to_string(),
            ))
        }
        Expr::T | Expr::Gen(_) => {
            return Err(Error::Unsupported(
                "not a divided power expression".to_string(),
            ))
        }
        Expr::Neg(a) => DividedElement::zero(field).sub(&eval_divided(a, field)?),
        Expr::Add(a, b) => eval_divided(a, field)?.add(&eval_divided(b, field)?),
        Expr::Sub(a, b) => eval_divided(a, field)?.sub(&eval_divided(b, field)?),
        Expr::Mul(a, b) => dp_multiply(&eval_divided(a, field)?, &eval_divided(b, field)?),
        Expr::Div(a, b) => {
            let den = eval_scalar(b, field)?;
            eval_divided(a, field)?.scale(&den.inv()?)
        }
        Expr::Pow(a, k) => {
            if *k < 0 {
                let c = eval_scalar(a, field)?;
                DividedElement::one(field).scale(&c.pow(*k)?)
            } else {
                let base = eval_divided(a, field)?;
                let mut acc = DividedElement::one(field);
                for _ in 0..*k {
                    acc = dp_multiply(&acc, &base);
                }
                acc
            }
        }
    })
}

/// Evaluate a Laurent polynomial expression (commutative, `x^n` monomials).
pub fn eval_laurent(expr: &Expr, field: &ScalarField) -> Result<LaurentPoly> {
    Ok(match expr {
        Expr::Integer(n) => LaurentPoly::monomial(field, 0).scale(&field.from_bigint(n.clone())),
        Expr::Q => LaurentPoly::monomial(field, 0).scale(&field.q()),
        Expr::Epsilon => {
            if field.is_generic() {
                return Err(Error::Unsupported(
                    "'e' denotes the root of unity and needs root mode".to_string(),
                ));
            }
            LaurentPoly::monomial(field, 0).scale(&field.q())
        }
        Expr::LaurentX => LaurentPoly::monomial(field, 1),
        Expr::DividedX(_) | Expr::T | Expr::Gen(_) => {
            return Err(Error::Unsupported(
                "not a Laurent polynomial expression".to_string(),
            ))
        }
        Expr::Neg(a) => LaurentPoly::zero(field).sub(&eval_laurent(a, field)?),
        Expr::Add(a, b) => eval_laurent(a, field)?.add(&eval_laurent(b, field)?),
        Expr::Sub(a, b) => eval_laurent(a, field)?.sub(&eval_laurent(b, field)?),
        Expr::Mul(a, b) => eval_laurent(a, field)?.mul(&eval_laurent(b, field)?),
        Expr::Div(a, b) => {
            let den = eval_scalar(b, field)?;
            eval_laurent(a, field)?.scale(&den.inv()?)
        }
        Expr::Pow(a, k) => {
            let base = eval_laurent(a, field)?;
            if *k >= 0 {
                let mut acc = LaurentPoly::monomial(field, 0);
                for _ in 0..*k {
                    acc = acc.mul(&base);
                }
                acc
            } else {
                // negative powers only of single monomials
                let mut terms = base.terms();
                let Some((n, c)) = terms.next() else {
                    return Err(Error::DivisionByZero);
                };
                if terms.next().is_some() {
                    return Err(Error::Unsupported(
                        "negative power of a multi-term Laurent polynomial".to_string(),
                    ));
                }
                let coeff = c.pow(*k)?;
                LaurentPoly::monomial(field, n * k).scale(&coeff)
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::q_integer;
    use crate::qlie::AlgebraKind;

    fn gen() -> ScalarField {
        ScalarField::generic()
    }

    fn root(l: u32) -> ScalarField {
        ScalarField::root_of_unity(l).unwrap()
    }

    #[test]
    fn parse_examples() {
        let e = parse("e(1)*e(0)").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(Expr::Gen(BasisElement::E(1))),
                Box::new(Expr::Gen(BasisElement::E(0)))
            )
        );
        // positioned syntax error
        match parse("e(") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected a syntax error, got {other:?}"),
        }
        match parse("1 + #") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected a syntax error, got {other:?}"),
        }
        assert!(parse("e(1))").is_err());
    }

    #[test]
    fn scalar_evaluation_and_fractions() {
        let f = gen();
        let v = eval_scalar(&parse("(q^2 + q + 1)/(q - 1)").unwrap(), &f).unwrap();
        let expected = q_integer(&f, 3).div(&(&f.q() - &f.one())).unwrap();
        assert_eq!(v, expected);
        let half = eval_scalar(&parse("1/2*q^-1").unwrap(), &f).unwrap();
        assert_eq!(half.to_string(), "1/2*q^-1");
        // epsilon needs root mode
        assert!(eval_scalar(&parse("e^2").unwrap(), &f).is_err());
        let r = root(5);
        let eps2 = eval_scalar(&parse("e^2").unwrap(), &r).unwrap();
        assert_eq!(eps2, r.q_power(2));
        // q and e coincide at the root
        assert_eq!(eval_scalar(&parse("q - e").unwrap(), &r).unwrap(), r.zero());
    }

    #[test]
    fn scalar_display_round_trips() {
        let f = gen();
        let samples = vec![
            f.zero(),
            f.from_int(-7),
            q_integer(&f, 3),
            q_integer(&f, -4),
            f.q_power(-3),
            q_integer(&f, 2).div(&q_integer(&f, 5)).unwrap(),
            (&f.from_int(3) * &f.q_power(-2))
                .div(&f.from_int(2))
                .unwrap(),
        ];
        for s in samples {
            let text = s.to_string();
            let back = eval_scalar(&parse(&text).unwrap(), &f).unwrap();
            assert_eq!(back, s, "round trip of {text}");
            assert_eq!(back.to_string(), text);
        }
        let r = root(7);
        let samples = vec![
            r.zero(),
            r.q_power(3),
            (&r.one() - &r.q()).inv().unwrap(),
            q_integer(&r, 5),
        ];
        for s in samples {
            let text = s.to_string();
            let back = eval_scalar(&parse(&text).unwrap(), &r).unwrap();
            assert_eq!(back, s, "round trip of {text}");
            assert_eq!(back.to_string(), text);
        }
    }

    #[test]
    fn noncomm_evaluation_round_trips_normal_forms() {
        use crate::pbw::ReductionSystem;
        let f = gen();
        let alg = GradedAlgebra::new(AlgebraKind::WittQ1, f.clone()).unwrap();
        let sys = ReductionSystem::windowed(alg.clone(), -1, 8).unwrap();
        let p = eval_noncomm(&parse("e(1)*e(0)").unwrap(), &alg).unwrap();
        let nf = sys.normal_form(&p).unwrap();
        let text = nf.to_string();
        assert_eq!(text, "q^-1*e(0)*e(1) - q^-1*e(1)");
        let back = eval_noncomm(&parse(&text).unwrap(), &alg).unwrap();
        assert_eq!(back, nf);
        // index validation against the selected algebra
        let we = GradedAlgebra::new(AlgebraKind::WittEps11, root(5)).unwrap();
        assert!(eval_noncomm(&parse("e(9)").unwrap(), &we).is_err());
        assert!(eval_noncomm(&parse("e(3)^2 - 4*e(-1)").unwrap(), &we).is_ok());
    }

    #[test]
    fn algebra_element_evaluation() {
        let f = root(5);
        let alg = GradedAlgebra::new(AlgebraKind::HolomorphEps1, f.clone()).unwrap();
        let x = eval_algebra_element(&parse("2*e(0) + q*L(3)").unwrap(), &alg).unwrap();
        assert_eq!(x.coeff(BasisElement::E(0)), f.from_int(2));
        assert_eq!(x.coeff(BasisElement::L(3)), f.q());
        assert!(eval_algebra_element(&parse("e(0)*e(1)").unwrap(), &alg).is_err());
        let text = x.to_string();
        let back = eval_algebra_element(&parse(&text).unwrap(), &alg).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn divided_and_laurent_evaluation() {
        let f = gen();
        let u = eval_divided(&parse("x^(1)*x^(1)").unwrap(), &f).unwrap();
        assert_eq!(u.coeff(2), q_integer(&f, 2));
        let text = u.to_string();
        assert_eq!(eval_divided(&parse(&text).unwrap(), &f).unwrap(), u);
        let p = eval_laurent(&parse("x^-2 + 3*x").unwrap(), &f).unwrap();
        assert_eq!(p.coeff(-2), f.one());
        assert_eq!(p.coeff(1), f.from_int(3));
        let text = p.to_string();
        assert_eq!(eval_laurent(&parse(&text).unwrap(), &f).unwrap(), p);
        // kinds do not mix
        assert!(eval_divided(&parse("x^2").unwrap(), &f).is_err());
        assert!(eval_laurent(&parse("x^(2)").unwrap(), &f).is_err());
    }

    #[test]
    fn weight_polynomials() {
        let f = root(3);
        let p = eval_tpoly(&parse("(1 - t)*q").unwrap(), &f).unwrap();
        assert_eq!(p.coeff(0), f.q());
        assert_eq!(p.coeff(1), -&f.q());
        assert!(eval_scalar(&parse("t + 1").unwrap(), &f).is_err());
        let text = p.to_string();
        let back = eval_tpoly(&parse(&text).unwrap(), &f).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn division_rules() {
        let f = gen();
        let alg = GradedAlgebra::new(AlgebraKind::WittQ1, f.clone()).unwrap();
        assert!(eval_noncomm(&parse("e(0)/2").unwrap(), &alg).is_ok());
        assert!(eval_noncomm(&parse("2/e(0)").unwrap(), &alg).is_err());
        assert!(eval_scalar(&parse("1/0").unwrap(), &f).is_err());
    }
}
