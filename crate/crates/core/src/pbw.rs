//! The universal enveloping algebra as a noncommutative rewriting system.
//!
//! Words over an ordered graded basis are rewritten by eliminating
//! descending adjacent pairs: for basis elements `x < y` of degrees `i`, `j`
//! the defining relation `q^(i+1) x y - q^(j+1) y x = {x, y}` is solved for
//! the out-of-order word,
//!
//! ```text
//! y x  ->  q^(i-j) x y - q^(-(j+1)) {x, y}
//! ```
//!
//! Every rewrite strictly decreases the word under the order "shorter
//! length, or same letters with fewer inversions", so reduction terminates,
//! and resolvability of all overlap ambiguities (checked by
//! [`ReductionSystem::check_confluence`], together with the vanishing of the
//! q-Jacobi sums) makes the nondecreasing words a basis.

use crate::error::{Error, Result};
use crate::qarith::{gauss_binomial, gauss_binomial_at, q_integer, Scalar, ScalarField};
use crate::qlie::{AlgebraElement, AlgebraKind, BasisElement, GradedAlgebra};
use num::{BigInt, One};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

/// A word over the algebra basis; the empty word is the unit.
///
/// The ordering (length first, then letterwise) is the storage order of
/// polynomials; it is only used to make outputs deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word(Vec<BasisElement>);

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cmp_len_lex(other)
    }
}

impl Word {
    pub fn new(letters: Vec<BasisElement>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[BasisElement] {
        &self.0
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    fn cmp_len_lex(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Number of descending pairs (not necessarily adjacent).
    pub fn disordering_index(&self) -> usize {
        let mut count = 0;
        for p in 0..self.0.len() {
            for r in p + 1..self.0.len() {
                if self.0[p] > self.0[r] {
                    count += 1;
                }
            }
        }
        count
    }
}

/// The semigroup partial order used by the termination argument: strictly
/// shorter, or a permutation of the same letters with strictly smaller
/// disordering index.
pub fn word_precedes(a: &Word, b: &Word) -> bool {
    if a.len() < b.len() {
        return true;
    }
    if a.len() != b.len() {
        return false;
    }
    let mut sa = a.0.clone();
    let mut sb = b.0.clone();
    sa.sort();
    sb.sort();
    sa == sb && a.disordering_index() < b.disordering_index()
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, b) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Finite linear combination of words with scalar coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NoncommPoly {
    field: ScalarField,
    terms: BTreeMap<Word, Scalar>,
}

impl NoncommPoly {
    pub fn zero(field: &ScalarField) -> Self {
        NoncommPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &ScalarField) -> Self {
        NoncommPoly::from_word(field, Word::empty(), field.one())
    }

    pub fn from_word(field: &ScalarField, w: Word, c: Scalar) -> Self {
        let mut p = NoncommPoly::zero(field);
        p.add_term(w, c);
        p
    }

    pub fn from_letter(field: &ScalarField, b: BasisElement) -> Self {
        NoncommPoly::from_word(field, Word::new(vec![b]), field.one())
    }

    /// An algebra element as a sum of length-1 words.
    pub fn from_algebra_element(e: &AlgebraElement) -> Self {
        let mut p = NoncommPoly::zero(e.field());
        for (b, c) in e.terms() {
            p.add_term(Word::new(vec![b]), c.clone());
        }
        p
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&w) {
            None => {
                self.terms.insert(w, c);
            }
            Some(old) => {
                let sum = &old + &c;
                if !sum.is_zero() {
                    self.terms.insert(w, sum);
                }
            }
        }
    }

    pub fn add(&self, rhs: &NoncommPoly) -> NoncommPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &NoncommPoly) -> NoncommPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> NoncommPoly {
        let mut out = NoncommPoly::zero(&self.field);
        for (w, a) in self.terms() {
            out.add_term(w.clone(), a * c);
        }
        out
    }

    /// Concatenation product extended bilinearly.
    pub fn mul(&self, rhs: &NoncommPoly) -> NoncommPoly {
        let mut out = NoncommPoly::zero(&self.field);
        for (w1, c1) in self.terms() {
            for (w2, c2) in rhs.terms() {
                let mut letters = w1.0.clone();
                letters.extend_from_slice(&w2.0);
                out.add_term(Word(letters), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> NoncommPoly {
        let mut acc = NoncommPoly::one(&self.field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Maximal word length appearing.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Words and coefficient strings in descending word order, the
    /// serialization used by the JSON reports.
    pub fn to_json_parts(&self) -> (Vec<Vec<String>>, Vec<String>) {
        let mut words = Vec::new();
        let mut coeffs = Vec::new();
        for (w, c) in self.terms.iter().rev() {
            words.push(w.letters().iter().map(|b| b.to_string()).collect());
            coeffs.push(c.to_string());
        }
        (words, coeffs)
    }
}

impl fmt::Display for NoncommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.split_sign();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else if mag.needs_parens_as_factor() {
                write!(f, "({mag})*{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

/// Which descending pair a reduction step eliminates first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Rewriting system for the enveloping algebra of a cataloged q-Lie
/// algebra, over a fixed ordered basis.
#[derive(Clone, Debug)]
pub struct ReductionSystem {
    alg: GradedAlgebra,
    basis: Vec<BasisElement>,
}

impl ReductionSystem {
    /// System over the full basis of a finite-dimensional algebra.
    pub fn new(alg: GradedAlgebra) -> Result<Self> {
        let basis = alg.finite_basis().ok_or(Error::WindowRequired)?;
        Ok(ReductionSystem { alg, basis })
    }

    /// System over an index window of an infinite algebra. Reduction is
    /// exact regardless of the window; the window only bounds the basis
    /// list used for ambiguity enumeration and sampling.
    pub fn windowed(alg: GradedAlgebra, lo: i64, hi: i64) -> Result<Self> {
        let basis = alg.windowed_basis(lo, hi);
        Ok(ReductionSystem { alg, basis })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.alg
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn field(&self) -> &ScalarField {
        self.alg.field()
    }

    fn check_letters(&self, p: &NoncommPoly) -> Result<()> {
        for (w, _) in p.terms() {
            for &b in w.letters() {
                self.alg.check_member(b)?;
            }
        }
        Ok(())
    }

    fn find_descending(w: &Word, strategy: Strategy) -> Option<usize> {
        let letters = w.letters();
        match strategy {
            Strategy::Leftmost => {
                (0..letters.len().saturating_sub(1)).find(|&k| letters[k] > letters[k + 1])
            }
            Strategy::Rightmost => (0..letters.len().saturating_sub(1))
                .rev()
                .find(|&k| letters[k] > letters[k + 1]),
        }
    }

    /// One rewrite of the descending pair at position `k` of a single word.
    fn rewrite_at(&self, w: &Word, k: usize, coeff: &Scalar) -> NoncommPoly {
        let letters = w.letters();
        let y = letters[k];
        let x = letters[k + 1];
        debug_assert!(y > x);
        let f = self.field();
        let (dx, dy) = (x.degree(), y.degree());
        let mut out = NoncommPoly::zero(f);
        let mut swapped = letters.to_vec();
        swapped.swap(k, k + 1);
        out.add_term(Word(swapped), coeff * &f.q_power(dx - dy));
        let bracket_coeff = -&(coeff * &f.q_power(-(dy + 1)));
        let br = self.alg.bracket(x, y).expect("letters validated");
        for (b, s) in br.terms() {
            let mut letters2 = Vec::with_capacity(letters.len() - 1);
            letters2.extend_from_slice(&letters[..k]);
            letters2.push(b);
            letters2.extend_from_slice(&letters[k + 2..]);
            out.add_term(Word(letters2), &bracket_coeff * s);
        }
        out
    }

    pub fn normal_form(&self, p: &NoncommPoly) -> Result<NoncommPoly> {
        self.normal_form_with(p, Strategy::Leftmost)
    }

    /// Reduce to normal form. Terminates because each rewrite replaces a
    /// word by strictly smaller ones (shorter, or same length and
    /// lexicographically smaller), and the agenda always processes its
    /// current maximum.
    pub fn normal_form_with(&self, p: &NoncommPoly, strategy: Strategy) -> Result<NoncommPoly> {
        self.check_letters(p)?;
        let f = self.field();
        let mut result = NoncommPoly::zero(f);
        let mut agenda: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in p.terms() {
            agenda.insert(w.clone(), c.clone());
        }
        while let Some((w, c)) = agenda.pop_last() {
            if c.is_zero() {
                continue;
            }
            match Self::find_descending(&w, strategy) {
                None => result.add_term(w, c),
                Some(k) => {
                    let step = self.rewrite_at(&w, k, &c);
                    for (w2, c2) in step.terms() {
                        debug_assert!(w2.cmp_len_lex(&w) == std::cmp::Ordering::Less);
                        match agenda.remove(w2) {
                            None => {
                                agenda.insert(w2.clone(), c2.clone());
                            }
                            Some(old) => {
                                let sum = &old + c2;
                                if !sum.is_zero() {
                                    agenda.insert(w2.clone(), sum);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(result)
    }

    /// The defining relation, reduced: for every basis pair `x < y`,
    /// `q^(deg x + 1) x y - q^(deg y + 1) y x` normal-forms to `{x, y}`.
    pub fn defining_relations_hold(&self) -> Result<bool> {
        let f = self.field();
        for (a, &x) in self.basis.iter().enumerate() {
            for &y in self.basis.iter().skip(a + 1) {
                let lhs =
                    NoncommPoly::from_word(f, Word::new(vec![x, y]), f.q_power(x.degree() + 1))
                        .sub(&NoncommPoly::from_word(
                            f,
                            Word::new(vec![y, x]),
                            f.q_power(y.degree() + 1),
                        ));
                let rhs = NoncommPoly::from_algebra_element(&self.alg.bracket(x, y)?);
                if self.normal_form(&lhs)? != self.normal_form(&rhs)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The six-term q-Jacobi sum of a descending triple, an element of the
    /// defining ideal that every resolvable system reduces to zero.
    pub fn jacobi_sum(
        &self,
        xk: BasisElement,
        xj: BasisElement,
        xi: BasisElement,
    ) -> Result<NoncommPoly> {
        self.alg.check_member(xi)?;
        self.alg.check_member(xj)?;
        self.alg.check_member(xk)?;
        let f = self.field();
        let (di, dj, dk) = (xi.degree(), xj.degree(), xk.degree());
        let tensor_left = |e: &AlgebraElement, b: BasisElement| {
            let mut p = NoncommPoly::zero(f);
            for (m, c) in e.terms() {
                p.add_term(Word::new(vec![m, b]), c.clone());
            }
            p
        };
        let tensor_right = |b: BasisElement, e: &AlgebraElement| {
            let mut p = NoncommPoly::zero(f);
            for (m, c) in e.terms() {
                p.add_term(Word::new(vec![b, m]), c.clone());
            }
            p
        };
        let kj = self.alg.bracket(xk, xj)?;
        let ji = self.alg.bracket(xj, xi)?;
        let ik = self.alg.bracket(xi, xk)?;
        let sum = tensor_left(&kj, xi)
            .scale(&f.q_power(dj + dk))
            .sub(&tensor_right(xi, &kj).scale(&f.q_power(2 * di)))
            .add(&tensor_left(&ji, xk).scale(&f.q_power(di + dj)))
            .sub(&tensor_right(xk, &ji).scale(&f.q_power(2 * dk)))
            .add(&tensor_left(&ik, xj).scale(&f.q_power(di + dk)))
            .sub(&tensor_right(xj, &ik).scale(&f.q_power(2 * dj)));
        Ok(sum)
    }

    /// Resolve every overlap ambiguity: for each strictly descending word
    /// `x_k x_j x_i` reduce by the two distinct first steps and compare the
    /// resulting normal forms; independently, normal-form the q-Jacobi sum.
    pub fn check_confluence(&self) -> Result<ConfluenceReport> {
        let f = self.field();
        let mut ambiguities = Vec::new();
        let n = self.basis.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (xi, xj, xk) = (self.basis[a], self.basis[b], self.basis[c]);
                    let word = Word::new(vec![xk, xj, xi]);
                    let left = self.rewrite_at(&word, 0, &f.one());
                    let right = self.rewrite_at(&word, 1, &f.one());
                    let nf_left = self.normal_form(&left)?;
                    let nf_right = self.normal_form(&right)?;
                    let resolvable = nf_left == nf_right;
                    let jacobi_zero = self.normal_form(&self.jacobi_sum(xk, xj, xi)?)?.is_zero();
                    ambiguities.push(AmbiguityResolution {
                        triple: (xi, xj, xk),
                        resolvable,
                        jacobi_sum_vanishes: jacobi_zero,
                    });
                }
            }
        }
        let all_resolvable = ambiguities.iter().all(|r| r.resolvable);
        let all_jacobi_vanish = ambiguities.iter().all(|r| r.jacobi_sum_vanishes);
        Ok(ConfluenceReport {
            ambiguities,
            all_resolvable,
            all_jacobi_vanish,
        })
    }
}

#[derive(Debug, Clone)]
pub struct AmbiguityResolution {
    /// `(x_i, x_j, x_k)` with `x_i < x_j < x_k`.
    pub triple: (BasisElement, BasisElement, BasisElement),
    pub resolvable: bool,
    pub jacobi_sum_vanishes: bool,
}

#[derive(Debug)]
pub struct ConfluenceReport {
    pub ambiguities: Vec<AmbiguityResolution>,
    pub all_resolvable: bool,
    pub all_jacobi_vanish: bool,
}

// ---------------------------------------------------------------------------
// Root-of-unity structure of the enveloping algebra
// ---------------------------------------------------------------------------

fn require_truncated_witt(sys: &ReductionSystem) -> Result<u32> {
    if sys.algebra().kind() != AlgebraKind::WittEps11 {
        return Err(Error::Unsupported(
            "power-commutation and centrality checks run over the truncated Witt algebra"
                .to_string(),
        ));
    }
    Ok(sys.algebra().order().expect("root-of-unity algebra"))
}

fn bigint_binomial(n: u32, k: u32) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for s in 0..k {
        acc = acc * BigInt::from(n - s) / BigInt::from(s + 1);
    }
    acc
}

/// Expand `(e_(0) + shift)^n` in the single letter `E(0)`; the shift is a
/// scalar, so ordinary binomials apply.
fn shifted_e0_power(f: &ScalarField, shift: &Scalar, n: u32) -> NoncommPoly {
    let mut out = NoncommPoly::zero(f);
    for m in 0..=n {
        let mut c = f.from_bigint(bigint_binomial(n, m));
        c = &c * &shift.pow((n - m) as i64).expect("nonnegative power");
        let word = Word::new(vec![BasisElement::E(0); m as usize]);
        out.add_term(word, c);
    }
    out
}

#[derive(Debug, Clone)]
pub struct ClosedFormComparison {
    pub matches: bool,
    pub normal_form: String,
    pub closed_form: String,
}

#[derive(Debug, Clone)]
pub struct PowerCommutationReport {
    pub i: i64,
    pub j: i64,
    pub n: u32,
    /// The commutation identity itself (the zero-degree form for `j = 0`,
    /// the iterated-bracket expansion otherwise), verified by the
    /// normal-form oracle.
    pub holds: bool,
    /// Comparison of the printed closed-form coefficients against the
    /// normal-form oracle; only produced for `j != 0`.
    pub closed_form: Option<ClosedFormComparison>,
}

/// Power-commutation identities over the truncated Witt algebra: moving
/// `e_(i)` across `e_(j)^n`.
///
/// For `j = 0`: `e_(i) e_(0)^n = q^(-in) (e_(0) - (i)_q)^n e_(i)`.
///
/// For `j != 0` the expansion in iterated twisted brackets
/// `[a, e_(j)] = a e_(j) - q^(j - deg a) e_(j) a` is the checked identity;
/// the closed-form coefficient table is compared against the normal-form
/// oracle and reported, not asserted.
pub fn power_commutation_check(
    sys: &ReductionSystem,
    i: i64,
    j: i64,
    n: u32,
) -> Result<PowerCommutationReport> {
    let l = require_truncated_witt(sys)?;
    let f = sys.field().clone();
    let alg = sys.algebra();
    alg.check_member(BasisElement::E(i))?;
    alg.check_member(BasisElement::E(j))?;
    let e = BasisElement::E;

    let mut lhs_letters = vec![e(i)];
    lhs_letters.extend(std::iter::repeat_n(e(j), n as usize));
    let lhs = sys.normal_form(&NoncommPoly::from_word(&f, Word::new(lhs_letters), f.one()))?;

    if j == 0 {
        // q^(-in) (e_(0) - (i)_q)^n e_(i)
        let shift = -&q_integer(&f, i);
        let rhs = shifted_e0_power(&f, &shift, n)
            .mul(&NoncommPoly::from_letter(&f, e(i)))
            .scale(&f.q_power(-i * n as i64));
        let holds = lhs == sys.normal_form(&rhs)?;
        return Ok(PowerCommutationReport {
            i,
            j,
            n,
            holds,
            closed_form: None,
        });
    }

    // iterated twisted brackets: each one is a scalar multiple of a single
    // generator, or dies when the index leaves the algebra
    let base = f.q_power(-j);
    let mut chain: Vec<Option<(Scalar, i64)>> = vec![Some((f.one(), i))];
    for _ in 1..=n {
        let next = match chain.last().unwrap() {
            None => None,
            Some((s, m)) => {
                let br = alg.bracket(e(*m), e(j))?;
                let target = m + j;
                let coeff = br.coeff(e(target));
                if coeff.is_zero() {
                    None
                } else {
                    Some((s * &(&f.q_power(-(m + 1)) * &coeff), target))
                }
            }
        };
        chain.push(next);
    }

    let mut rhs1 = NoncommPoly::zero(&f);
    for (k, entry) in chain.iter().enumerate() {
        let Some((s, m)) = entry else { continue };
        let qbin = gauss_binomial_at(n as i64, k as i64, &base)?;
        let weight = &(&qbin * &f.q_power((n as i64 - k as i64) * (j - i))) * s;
        let mut letters = vec![e(j); n as usize - k];
        letters.push(e(*m));
        rhs1.add_term(Word::new(letters), weight);
    }
    let holds = lhs == sys.normal_form(&rhs1)?;

    // printed closed form:
    //   q^(n(j-i)) sum_k [n k]_{q^-j} H_ij^(k) e_(j)^(n-k) e_(i+kj)
    // with H_ij^(k) = q^(-k - j k(k+1)/2) prod_{s=1..k}
    //   ([i+sj+1 choose j] - [i+sj+1 choose j+1]) under -1 <= i+j <= l-2,
    // else 0.
    let mut rhs2 = NoncommPoly::zero(&f);
    for k in 0..=n as i64 {
        let h = if k == 0 {
            f.one()
        } else if !(-1..=l as i64 - 2).contains(&(i + j)) {
            f.zero()
        } else {
            let mut prod = f.q_power(-(k + j * (k * (k + 1) / 2)));
            for s in 1..=k {
                let factor = &gauss_binomial(&f, i + s * j + 1, j)
                    - &gauss_binomial(&f, i + s * j + 1, j + 1);
                prod = &prod * &factor;
            }
            prod
        };
        if h.is_zero() {
            continue;
        }
        let target = i + k * j;
        if !(-1..=l as i64 - 2).contains(&target) {
            continue;
        }
        let qbin = gauss_binomial_at(n as i64, k, &base)?;
        let mut letters = vec![e(j); (n as i64 - k) as usize];
        letters.push(e(target));
        rhs2.add_term(Word::new(letters), &qbin * &h);
    }
    rhs2 = rhs2.scale(&f.q_power(n as i64 * (j - i)));
    let nf2 = sys.normal_form(&rhs2)?;
    let closed = ClosedFormComparison {
        matches: lhs == nf2,
        normal_form: lhs.to_string(),
        closed_form: nf2.to_string(),
    };

    Ok(PowerCommutationReport {
        i,
        j,
        n,
        holds,
        closed_form: Some(closed),
    })
}

#[derive(Debug)]
pub struct CentralityReport {
    pub l: u32,
    /// `(generator index, central element index, commutator vanished)`.
    pub commutators: Vec<(i64, i64, bool)>,
    pub all_central: bool,
}

/// Centrality of the l-th powers: for every generator `g` and every
/// `z_j = e_(j)^l` (`j != 0`), `z_0 = (e_(0) - 1/(1-q))^l`, the ordinary
/// commutator `g z - z g` normal-forms to zero.
pub fn central_elements_check(sys: &ReductionSystem) -> Result<CentralityReport> {
    let l = require_truncated_witt(sys)?;
    let f = sys.field().clone();
    let one_minus_q = &f.one() - &f.q();
    let shift = -&one_minus_q.inv()?;

    let mut central: Vec<(i64, NoncommPoly)> = Vec::new();
    for j in -1..=l as i64 - 2 {
        let z = if j == 0 {
            shifted_e0_power(&f, &shift, l)
        } else {
            NoncommPoly::from_word(&f, Word::new(vec![BasisElement::E(j); l as usize]), f.one())
        };
        central.push((j, z));
    }

    let mut commutators = Vec::new();
    for m in -1..=l as i64 - 2 {
        let g = NoncommPoly::from_letter(&f, BasisElement::E(m));
        for (j, z) in &central {
            let comm = g.mul(z).sub(&z.mul(&g));
            let vanishes = sys.normal_form(&comm)?.is_zero();
            commutators.push((m, *j, vanishes));
        }
    }
    let all_central = commutators.iter().all(|&(_, _, ok)| ok);
    Ok(CentralityReport {
        l,
        commutators,
        all_central,
    })
}

#[derive(Debug)]
pub struct GradedLawPair {
    pub i: i64,
    pub j: i64,
    /// Leading coefficient of `e_(j) e_(i)` in the normal form of
    /// `e_(i) e_(j)`.
    pub leading: String,
    pub ok: bool,
}

#[derive(Debug)]
pub struct GradedLawReport {
    pub pairs: Vec<GradedLawPair>,
    pub holds: bool,
}

/// Leading-term law of the associated graded algebra: for `i > j`,
/// `nf(e_(i) e_(j)) = q^(j-i) e_(j) e_(i) + (strictly shorter words)`,
/// the quasipolynomial commutation rule.
pub fn graded_leading_term_check(sys: &ReductionSystem) -> Result<GradedLawReport> {
    let l = require_truncated_witt(sys)?;
    let f = sys.field().clone();
    let mut pairs = Vec::new();
    for i in -1..=l as i64 - 2 {
        for j in -1..=i {
            let lam = f.q_power(j - i);
            let ok = if i == j {
                true
            } else {
                let word = Word::new(vec![BasisElement::E(i), BasisElement::E(j)]);
                let nf = sys.normal_form(&NoncommPoly::from_word(&f, word, f.one()))?;
                let swapped = Word::new(vec![BasisElement::E(j), BasisElement::E(i)]);
                let rest = nf.sub(&NoncommPoly::from_word(&f, swapped, lam.clone()));
                rest.max_word_len() < 2
            };
            pairs.push(GradedLawPair {
                i,
                j,
                leading: lam.to_string(),
                ok,
            });
        }
    }
    let holds = pairs.iter().all(|p| p.ok);
    Ok(GradedLawReport { pairs, holds })
}

// ---------------------------------------------------------------------------
// Seeded sampling
// ---------------------------------------------------------------------------

/// Deterministic sample of words over the system basis.
pub fn random_words(sys: &ReductionSystem, count: usize, len: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = sys.basis();
    (0..count)
        .map(|_| {
            Word::new(
                (0..len)
                    .map(|_| basis[rng.random_range(0..basis.len())])
                    .collect(),
            )
        })
        .collect()
}

/// Leftmost-first and rightmost-first reduction reach the same normal form
/// on a seeded sample of words; returns the disagreeing words.
pub fn strategy_agreement_sample(
    sys: &ReductionSystem,
    count: usize,
    len: usize,
    seed: u64,
) -> Result<Vec<Word>> {
    let f = sys.field().clone();
    let mut disagreements = Vec::new();
    for w in random_words(sys, count, len, seed) {
        let p = NoncommPoly::from_word(&f, w.clone(), f.one());
        let left = sys.normal_form_with(&p, Strategy::Leftmost)?;
        let right = sys.normal_form_with(&p, Strategy::Rightmost)?;
        if left != right {
            disagreements.push(w);
        }
    }
    Ok(disagreements)
}

#[derive(Debug)]
pub struct ZeroDivisorSample {
    pub trials: usize,
    /// Pairs whose product reduced to zero while both factors were nonzero.
    pub failures: Vec<(String, String)>,
}

/// Sampled witness that products of nonzero normal forms stay nonzero:
/// random polynomials with at most two words of length at most two.
pub fn zero_divisor_sample(
    sys: &ReductionSystem,
    trials: usize,
    seed: u64,
) -> Result<ZeroDivisorSample> {
    let f = sys.field().clone();
    let basis = sys.basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_poly = |rng: &mut ChaCha8Rng| {
        let mut p = NoncommPoly::zero(&f);
        let nterms = rng.random_range(1..=2);
        for _ in 0..nterms {
            let len = rng.random_range(0..=2);
            let w = Word::new(
                (0..len)
                    .map(|_| basis[rng.random_range(0..basis.len())])
                    .collect(),
            );
            let c = match rng.random_range(0..3) {
                0 => f.one(),
                1 => f.from_int(rng.random_range(1..=3)),
                _ => f.q_power(rng.random_range(-2..=2)),
            };
            p.add_term(w, c);
        }
        p
    };
    let mut failures = Vec::new();
    let mut done = 0usize;
    while done < trials {
        let p = random_poly(&mut rng);
        let r = random_poly(&mut rng);
        let nf_p = sys.normal_form(&p)?;
        let nf_r = sys.normal_form(&r)?;
        if nf_p.is_zero() || nf_r.is_zero() {
            continue;
        }
        done += 1;
        if sys.normal_form(&nf_p.mul(&nf_r))?.is_zero() {
            failures.push((nf_p.to_string(), nf_r.to_string()));
        }
    }
    Ok(ZeroDivisorSample { trials, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlie::BasisElement::E;

    fn gen() -> ScalarField {
        ScalarField::generic()
    }

    fn witt_eps_sys(l: u32) -> ReductionSystem {
        let f = ScalarField::root_of_unity(l).unwrap();
        ReductionSystem::new(GradedAlgebra::new(AlgebraKind::WittEps11, f).unwrap()).unwrap()
    }

    fn holomorph_eps_sys(l: u32) -> ReductionSystem {
        let f = ScalarField::root_of_unity(l).unwrap();
        ReductionSystem::new(GradedAlgebra::new(AlgebraKind::HolomorphEps1, f).unwrap()).unwrap()
    }

    fn witt_q1_sys() -> ReductionSystem {
        ReductionSystem::windowed(
            GradedAlgebra::new(AlgebraKind::WittQ1, gen()).unwrap(),
            -1,
            8,
        )
        .unwrap()
    }

    fn word(letters: &[i64]) -> Word {
        Word::new(letters.iter().map(|&i| E(i)).collect())
    }

    #[test]
    fn ordered_word_is_fixed() {
        let sys = witt_q1_sys();
        let f = sys.field().clone();
        let p = NoncommPoly::from_word(&f, word(&[-1, 0, 2]), f.q_power(3));
        assert_eq!(sys.normal_form(&p).unwrap(), p);
    }

    #[test]
    fn basic_reduction_example() {
        // e_(1) e_(0) -> q^-1 e_(0) e_(1) - q^-1 e_(1)
        let sys = witt_q1_sys();
        let f = sys.field().clone();
        let p = NoncommPoly::from_word(&f, word(&[1, 0]), f.one());
        let nf = sys.normal_form(&p).unwrap();
        let mut expected = NoncommPoly::from_word(&f, word(&[0, 1]), f.q_power(-1));
        expected.add_term(word(&[1]), -&f.q_power(-1));
        assert_eq!(nf, expected);
        assert_eq!(nf.to_string(), "q^-1*e(0)*e(1) - q^-1*e(1)");
    }

    #[test]
    fn rule_right_sides_precede_left_sides() {
        // compatibility of the partial order with the rewriting system
        let sys = witt_eps_sys(5);
        let f = sys.field().clone();
        let basis = sys.basis().to_vec();
        for (a, &x) in basis.iter().enumerate() {
            for &y in basis.iter().skip(a + 1) {
                let lhs = Word::new(vec![y, x]);
                let rhs = sys.rewrite_at(&lhs, 0, &f.one());
                for (w, _) in rhs.terms() {
                    assert!(word_precedes(w, &lhs), "{w} should precede {lhs}");
                }
            }
        }
    }

    #[test]
    fn strategies_agree_on_triple() {
        let sys = witt_eps_sys(5);
        let f = sys.field().clone();
        let p = NoncommPoly::from_word(&f, word(&[1, 0, -1]), f.one());
        let left = sys.normal_form_with(&p, Strategy::Leftmost).unwrap();
        let right = sys.normal_form_with(&p, Strategy::Rightmost).unwrap();
        assert_eq!(left, right);
        assert!(left.terms().all(|(w, _)| w.is_nondecreasing()));
    }

    #[test]
    fn normal_form_idempotent_and_linear() {
        let sys = witt_eps_sys(5);
        let f = sys.field().clone();
        for w in random_words(&sys, 25, 4, 7) {
            let p = NoncommPoly::from_word(&f, w, f.one());
            let nf = sys.normal_form(&p).unwrap();
            assert_eq!(sys.normal_form(&nf).unwrap(), nf);
        }
        // linearity on a seeded pair
        let ws = random_words(&sys, 2, 3, 11);
        let p = NoncommPoly::from_word(&f, ws[0].clone(), f.one());
        let r = NoncommPoly::from_word(&f, ws[1].clone(), f.one());
        let alpha = f.q_power(2);
        let beta = -&f.from_int(3);
        let combo = p.scale(&alpha).add(&r.scale(&beta));
        let lhs = sys.normal_form(&combo).unwrap();
        let rhs = sys
            .normal_form(&p)
            .unwrap()
            .scale(&alpha)
            .add(&sys.normal_form(&r).unwrap().scale(&beta));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn defining_relations_reduce_correctly() {
        assert!(witt_eps_sys(5).defining_relations_hold().unwrap());
        assert!(holomorph_eps_sys(3).defining_relations_hold().unwrap());
        assert!(witt_q1_sys().defining_relations_hold().unwrap());
    }

    #[test]
    fn confluence_small_orders() {
        // the unique triple at l = 3 resolves (every index sum collides
        // with one of the triple's own indices)
        let report = witt_eps_sys(3).check_confluence().unwrap();
        assert!(report.all_resolvable);
        assert!(report.all_jacobi_vanish);
        assert_eq!(report.ambiguities.len(), 1);

        // at l = 5 the ambiguities avoiding degree 0 do NOT resolve: the
        // two-path residual carries coefficients (q^deg - 1) w on distinct
        // two-letter words, an obstruction the weighted Jacobi identity
        // does not cancel
        let report = witt_eps_sys(5).check_confluence().unwrap();
        assert!(!report.all_resolvable);
        let failing: Vec<_> = report
            .ambiguities
            .iter()
            .filter(|a| !a.resolvable)
            .map(|a| a.triple)
            .collect();
        assert_eq!(
            failing,
            vec![
                (E(-1), E(1), E(2)),
                (E(-1), E(1), E(3)),
                (E(-1), E(2), E(3)),
                (E(1), E(2), E(3)),
            ]
        );
        // a triple resolves exactly when its Jacobi sum normal-forms to 0
        for a in &report.ambiguities {
            assert_eq!(a.resolvable, a.jacobi_sum_vanishes, "{:?}", a.triple);
        }
        // the mixed e/L ambiguities already fail at l = 3
        let report = holomorph_eps_sys(3).check_confluence().unwrap();
        assert!(!report.all_resolvable);
        assert_eq!(
            report.ambiguities.iter().filter(|a| !a.resolvable).count(),
            4
        );
    }

    #[test]
    fn strategy_sample_agreement_tracks_confluence() {
        // confluent system: strategies agree everywhere
        let sys3 = witt_eps_sys(3);
        assert!(strategy_agreement_sample(&sys3, 200, 4, 0)
            .unwrap()
            .is_empty());
        // non-confluent system: the sample finds disagreeing words
        let sys5 = witt_eps_sys(5);
        let disagreements = strategy_agreement_sample(&sys5, 100, 4, 0).unwrap();
        assert!(!disagreements.is_empty());
    }

    #[test]
    fn power_commutation_identity_examples() {
        let sys = witt_eps_sys(5);
        // n = 1, i = 1, j = 0: e_(1) e_(0) = q^-1 (e_(0) - (1)_q) e_(1)
        let r = power_commutation_check(&sys, 1, 0, 1).unwrap();
        assert!(r.holds);
        // empty power is trivial
        let r = power_commutation_check(&sys, 2, 0, 0).unwrap();
        assert!(r.holds);
        // iterated-bracket form
        let r = power_commutation_check(&sys, -1, 1, 3).unwrap();
        assert!(r.holds);
        let cf = r.closed_form.unwrap();
        assert!(cf.matches, "{} vs {}", cf.normal_form, cf.closed_form);
    }

    #[test]
    fn central_elements_small_order() {
        let sys = witt_eps_sys(3);
        let report = central_elements_check(&sys).unwrap();
        assert!(report.all_central);
        assert_eq!(report.commutators.len(), 9);
        // unsupported outside the truncated Witt algebra
        assert!(central_elements_check(&holomorph_eps_sys(3)).is_err());
    }

    #[test]
    fn graded_law_small_order() {
        let report = graded_leading_term_check(&witt_eps_sys(3)).unwrap();
        assert!(report.holds);
        // leading coefficient of the (1, -1) pair is q^(-2)
        let pair = report.pairs.iter().find(|p| p.i == 1 && p.j == -1).unwrap();
        let f = ScalarField::root_of_unity(3).unwrap();
        assert_eq!(pair.leading, f.q_power(-2).to_string());
    }

    #[test]
    fn zero_divisor_sample_finds_nothing() {
        let sys = witt_eps_sys(5);
        let sample = zero_divisor_sample(&sys, 40, 0).unwrap();
        assert_eq!(sample.trials, 40);
        assert!(sample.failures.is_empty());
    }

    #[test]
    fn virasoro_central_letter_q_commutes() {
        // in the enveloping algebra the central letter q-commutes:
        // C e_i = q^(deg e_i) e_i C
        let alg = GradedAlgebra::new(AlgebraKind::VirasoroQ, gen()).unwrap();
        let sys = ReductionSystem::windowed(alg, -3, 3).unwrap();
        let f = sys.field().clone();
        let p = NoncommPoly::from_word(&f, Word::new(vec![BasisElement::C, E(2)]), f.one());
        let nf = sys.normal_form(&p).unwrap();
        let expected =
            NoncommPoly::from_word(&f, Word::new(vec![E(2), BasisElement::C]), f.q_power(2));
        assert_eq!(nf, expected);
    }

    #[test]
    fn jacobi_sum_vanishing_matches_resolvability() {
        // the colliding triple reduces to zero in the generic algebra too
        let sys = witt_q1_sys();
        let s = sys.jacobi_sum(E(1), E(0), E(-1)).unwrap();
        assert!(sys.normal_form(&s).unwrap().is_zero());
        // a non-colliding triple leaves the structural residual
        let s = sys.jacobi_sum(E(4), E(2), E(1)).unwrap();
        let nf = sys.normal_form(&s).unwrap();
        assert!(!nf.is_zero());
        // the residual is supported on two-letter words of total degree 7
        // plus the length-1 tail
        for (w, _) in nf.terms() {
            let deg: i64 = w.letters().iter().map(|b| b.degree()).sum();
            assert_eq!(deg, 7);
            assert!(w.len() <= 2);
        }
    }
}
