//! Matrix realizations of graded representations.
//!
//! The truncated Witt algebra acts on the l-dimensional space spanned by
//! `x^(0) (x) v, ..., x^(l-1) (x) v`, where `v` spans a one-dimensional
//! module with `e_(0).v = t v`:
//!
//! ```text
//! e_(i) . x^(a) (x) v = ( [a+i choose i+1]_q + t q^a [a+i choose i]_q ) x^(a+i) (x) v
//! ```
//!
//! The weight `t` may be a concrete scalar or a symbolic indeterminate;
//! matrix entries are polynomials in `t` over the scalar field, so one
//! symbolic run certifies the module axiom for every weight at once.
//!
//! The holomorph pair (the pure skew-derivation action together with the
//! multiplication-twist action of the quantum base space) satisfies the
//! compatibility law
//!
//! ```text
//! phi(e_(i)) psi(L_j) - q^(j-i) psi(L_j) phi(e_(i)) = [i+j choose i+1]_q psi(L_{i+j})
//! ```
//!
//! which drives the deformation `phi + a psi` and the tensor construction
//! `phi (x) id + psi (x) rho(w)`.

use crate::error::{Error, Result};
use crate::qarith::{gauss_binomial, q_integer, Scalar, ScalarField};
use crate::qlie::{AlgebraKind, BasisElement, GradedAlgebra};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in the weight parameter `t` with scalar coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TPoly {
    field: ScalarField,
    coeffs: Vec<Scalar>,
}

impl TPoly {
    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(field: &ScalarField) -> Self {
        TPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field().clone();
        let mut p = TPoly {
            field,
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    /// The indeterminate itself.
    pub fn t(field: &ScalarField) -> Self {
        TPoly {
            field: field.clone(),
            coeffs: vec![field.zero(), field.one()],
        }
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(&self.coeff(k) + &rhs.coeff(k));
        }
        let mut p = TPoly {
            field: self.field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn neg(&self) -> TPoly {
        TPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &TPoly) -> TPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                coeffs[a + b] = &coeffs[a + b] + &(x * y);
            }
        }
        let mut p = TPoly {
            field: self.field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn scale(&self, c: &Scalar) -> TPoly {
        let mut p = TPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        p.trim();
        p
    }

    /// Substitute a concrete scalar for `t`.
    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// Division by a nonzero constant polynomial.
    pub fn div_constant(&self, rhs: &TPoly) -> Result<TPoly> {
        if !rhs.is_constant() {
            return Err(Error::Unsupported(
                "division by a non-constant weight polynomial".to_string(),
            ));
        }
        let inv = rhs.coeff(0).inv()?;
        Ok(self.scale(&inv))
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = c.split_sign();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else if mag.needs_parens_as_factor() {
                write!(f, "({mag})*{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

/// Dense matrix over weight polynomials.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix {
    field: ScalarField,
    rows: usize,
    cols: usize,
    data: Vec<TPoly>,
}

impl Matrix {
    pub fn zeros(field: &ScalarField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![TPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &ScalarField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for k in 0..n {
            m.set(k, k, TPoly::constant(field.one()));
        }
        m
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &TPoly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: TPoly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(rhs.data.iter()) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.neg();
        }
        out
    }

    pub fn scale(&self, c: &TPoly) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.scale(c);
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    /// Kronecker product.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..rhs.rows {
                    for c2 in 0..rhs.cols {
                        let b = rhs.get(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(r1 * rhs.rows + r2, c1 * rhs.cols + c2, a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// Dense entry strings, row major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect()
    }
}

/// The eigenvalue of the degree-zero generator on the one-dimensional base
/// space: a concrete scalar or the symbolic indeterminate.
#[derive(Clone, Debug)]
pub enum WeightParameter {
    Value(Scalar),
    Symbolic,
}

impl WeightParameter {
    pub fn to_tpoly(&self, field: &ScalarField) -> TPoly {
        match self {
            WeightParameter::Value(s) => TPoly::constant(s.clone()),
            WeightParameter::Symbolic => TPoly::t(field),
        }
    }
}

/// A matrix realization: generator index -> action matrix, together with
/// the grading of the underlying space when one exists.
#[derive(Clone, Debug)]
pub struct ModuleRealization {
    algebra: GradedAlgebra,
    dim: usize,
    grading: Option<Vec<i64>>,
    /// Truncation bound of a generic (windowed) realization.
    window: Option<u32>,
    weight: Option<TPoly>,
    actions: BTreeMap<i64, Matrix>,
}

impl ModuleRealization {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &ScalarField {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    pub fn weight(&self) -> Option<&TPoly> {
        self.weight.as_ref()
    }

    pub fn generators(&self) -> Vec<i64> {
        self.actions.keys().copied().collect()
    }

    pub fn action(&self, i: i64) -> Option<&Matrix> {
        self.actions.get(&i)
    }

    /// Same generator set with identical matrices.
    pub fn same_matrices(&self, other: &ModuleRealization) -> bool {
        self.generators() == other.generators()
            && self
                .actions
                .iter()
                .all(|(i, m)| other.action(*i) == Some(m))
    }
}

fn entry(field: &ScalarField, t: &TPoly, a: i64, i: i64) -> TPoly {
    // [a+i choose i+1] + t q^a [a+i choose i]
    let lead = TPoly::constant(gauss_binomial(field, a + i, i + 1));
    let twist = &field.q_power(a) * &gauss_binomial(field, a + i, i);
    lead.add(&t.scale(&twist))
}

/// The l-dimensional realization of the truncated Witt algebra on the
/// divided powers tensored with the one-dimensional weight-`t` module.
pub fn realize_module(field: &ScalarField, t: &WeightParameter) -> Result<ModuleRealization> {
    let Some(l) = field.order() else {
        return Err(Error::RequiresRootOfUnity);
    };
    let algebra = GradedAlgebra::new(AlgebraKind::WittEps11, field.clone())?;
    let tp = t.to_tpoly(field);
    let dim = l as usize;
    let mut actions = BTreeMap::new();
    for i in -1..=l as i64 - 2 {
        let mut m = Matrix::zeros(field, dim, dim);
        for a in 0..l as i64 {
            let target = a + i;
            if !(0..l as i64).contains(&target) {
                continue;
            }
            m.set(target as usize, a as usize, entry(field, &tp, a, i));
        }
        actions.insert(i, m);
    }
    Ok(ModuleRealization {
        algebra,
        dim,
        grading: Some((0..l as i64).collect()),
        window: None,
        weight: Some(tp),
        actions,
    })
}

/// Window-truncated realization of the generic algebra on the divided
/// powers of grade at most `window`.
pub fn realize_module_generic(
    field: &ScalarField,
    window: u32,
    t: &WeightParameter,
) -> Result<ModuleRealization> {
    if !field.is_generic() {
        return Err(Error::RequiresGenericMode);
    }
    if window < 1 {
        return Err(Error::NegativeArgument {
            what: "realization window (needs >= 1)",
            value: window as i64,
        });
    }
    let algebra = GradedAlgebra::new(AlgebraKind::WittQ1, field.clone())?;
    let tp = t.to_tpoly(field);
    let dim = window as usize + 1;
    let mut actions = BTreeMap::new();
    for i in -1..=window as i64 {
        let mut m = Matrix::zeros(field, dim, dim);
        for a in 0..=window as i64 {
            let target = a + i;
            if !(0..=window as i64).contains(&target) {
                continue;
            }
            m.set(target as usize, a as usize, entry(field, &tp, a, i));
        }
        actions.insert(i, m);
    }
    Ok(ModuleRealization {
        algebra,
        dim,
        grading: Some((0..=window as i64).collect()),
        window: Some(window),
        weight: Some(tp),
        actions,
    })
}

/// The module axiom on every generator pair:
/// `q^(i+1) A_i A_j - q^(j+1) A_j A_i` equals the action of `{e_i, e_j}`.
/// On a windowed realization only the columns whose full orbit stays
/// inside the window are compared.
pub fn verify_module_axiom(m: &ModuleRealization) -> Result<bool> {
    let field = m.field().clone();
    let gens = m.generators();
    for &i in &gens {
        for &j in &gens {
            if i >= j {
                continue;
            }
            let ai = m.action(i).unwrap();
            let aj = m.action(j).unwrap();
            let lhs = ai
                .mul(aj)
                .scale_scalar(&field.q_power(i + 1))
                .sub(&aj.mul(ai).scale_scalar(&field.q_power(j + 1)));
            let bracket = m.algebra.bracket(BasisElement::E(i), BasisElement::E(j))?;
            let mut rhs = Matrix::zeros(&field, m.dim, m.dim);
            let mut rhs_defined = true;
            for (b, c) in bracket.terms() {
                match m.action(b.degree()) {
                    Some(mat) => rhs = rhs.add(&mat.scale_scalar(c)),
                    None => rhs_defined = false,
                }
            }
            match m.window {
                None => {
                    if !rhs_defined || lhs != rhs {
                        return Ok(false);
                    }
                }
                Some(w) => {
                    let w = w as i64;
                    for a in 0..=w {
                        if a + i < 0
                            || a + j < 0
                            || a + i > w
                            || a + j > w
                            || a + i + j > w
                            || a + i + j < 0
                        {
                            continue;
                        }
                        if !rhs_defined {
                            return Ok(false);
                        }
                        for r in 0..m.dim {
                            if lhs.get(r, a as usize) != rhs.get(r, a as usize) {
                                return Ok(false);
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct SubmoduleReport {
    /// Proper nonzero graded submodules, as sorted lists of graded-basis
    /// indices.
    pub submodules: Vec<Vec<usize>>,
    /// Dimensions of the composition factors, bottom first.
    pub composition_dims: Vec<usize>,
    pub irreducible: bool,
}

/// Enumerate the graded submodules (spans of graded basis vectors closed
/// under every generator) and read off a composition series.
pub fn graded_submodule_analysis(m: &ModuleRealization) -> Result<SubmoduleReport> {
    if m.grading.is_none() {
        return Err(Error::Unsupported(
            "submodule analysis needs a graded realization".to_string(),
        ));
    }
    let dim = m.dim;
    if dim > 20 {
        return Err(Error::Unsupported(format!(
            "graded submodule enumeration over {dim} basis vectors"
        )));
    }
    let matrices: Vec<&Matrix> = m.actions.values().collect();
    let closed = |mask: u32| -> bool {
        for mat in &matrices {
            for a in 0..dim {
                if mask & (1 << a) == 0 {
                    continue;
                }
                for r in 0..dim {
                    if mask & (1 << r) == 0 && !mat.get(r, a).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    };
    let full: u32 = (1 << dim) - 1;
    let mut closed_masks = Vec::new();
    for mask in 0..=full {
        if closed(mask) {
            closed_masks.push(mask);
        }
    }
    let to_indices =
        |mask: u32| -> Vec<usize> { (0..dim).filter(|&k| mask & (1 << k) != 0).collect() };
    let submodules: Vec<Vec<usize>> = closed_masks
        .iter()
        .copied()
        .filter(|&m| m != 0 && m != full)
        .map(to_indices)
        .collect();

    // maximal chain of closed subsets
    let mut chain = vec![0u32];
    let mut current = 0u32;
    while current != full {
        let mut candidates: Vec<u32> = closed_masks
            .iter()
            .copied()
            .filter(|&m| m != current && m & current == current)
            .collect();
        candidates.sort_by_key(|m| m.count_ones());
        let next = candidates
            .into_iter()
            .find(|&m| {
                // nothing closed strictly between current and m
                !closed_masks
                    .iter()
                    .any(|&o| o != current && o != m && o & current == current && o & m == o)
            })
            .expect("the full space closes the chain");
        chain.push(next);
        current = next;
    }
    let composition_dims: Vec<usize> = chain
        .windows(2)
        .map(|w| (w[1].count_ones() - w[0].count_ones()) as usize)
        .collect();
    Ok(SubmoduleReport {
        irreducible: submodules.is_empty(),
        submodules,
        composition_dims,
    })
}

/// Eigenvalues of the degree-zero generator on the base (grade 0) and top
/// (maximal grade) spaces; checked against the closed forms `t` and
/// `(-1)_q (1 - t)` (the latter on untruncated realizations).
pub fn base_top_eigenvalues(m: &ModuleRealization) -> Result<(TPoly, TPoly)> {
    let grading = m
        .grading
        .as_ref()
        .ok_or_else(|| Error::Unsupported("eigenvalues need a graded realization".to_string()))?;
    let weight = m
        .weight
        .as_ref()
        .ok_or_else(|| Error::Unsupported("eigenvalues need a weight parameter".to_string()))?;
    let a0 = m
        .action(0)
        .ok_or_else(|| Error::Unsupported("missing degree-zero action".to_string()))?;
    let base_idx = (0..m.dim).min_by_key(|&k| grading[k]).unwrap();
    let top_idx = (0..m.dim).max_by_key(|&k| grading[k]).unwrap();
    let base = a0.get(base_idx, base_idx).clone();
    let top = a0.get(top_idx, top_idx).clone();
    let field = m.field();
    if base != *weight {
        return Err(Error::Incompatible(format!(
            "base eigenvalue {base} differs from the weight {weight}"
        )));
    }
    // (-1)_q (1 - t) = -q^-1 (1 - t)
    let minus_one_q = q_integer(field, -1);
    let expected_top = TPoly::constant(minus_one_q).mul(&TPoly::constant(field.one()).sub(weight));
    if m.window.is_none() && top != expected_top {
        return Err(Error::Incompatible(format!(
            "top eigenvalue {top} differs from the closed form {expected_top}"
        )));
    }
    Ok((base, top))
}

/// The holomorph representation data: the Witt action, the quantum-space
/// action on the same space, and a grading when one exists.
#[derive(Clone, Debug)]
pub struct HolomorphRepTriple {
    field: ScalarField,
    dim: usize,
    phi: BTreeMap<i64, Matrix>,
    psi: BTreeMap<i64, Matrix>,
    grading: Option<Vec<i64>>,
}

impl HolomorphRepTriple {
    pub fn new(
        field: &ScalarField,
        phi: BTreeMap<i64, Matrix>,
        psi: BTreeMap<i64, Matrix>,
        grading: Option<Vec<i64>>,
    ) -> Result<Self> {
        let dim = phi
            .values()
            .chain(psi.values())
            .map(|m| m.rows())
            .next()
            .unwrap_or(0);
        for m in phi.values().chain(psi.values()) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} matrix in a dimension-{dim} triple",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(HolomorphRepTriple {
            field: field.clone(),
            dim,
            phi,
            psi,
            grading,
        })
    }

    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn phi(&self, i: i64) -> Option<&Matrix> {
        self.phi.get(&i)
    }

    pub fn phi_map(&self) -> &BTreeMap<i64, Matrix> {
        &self.phi
    }

    pub fn psi_map(&self) -> &BTreeMap<i64, Matrix> {
        &self.psi
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }

    /// `L_j` action; out-of-range indices (including `L_(-1)`) act as zero.
    pub fn psi_or_zero(&self, j: i64) -> Matrix {
        self.psi
            .get(&j)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(&self.field, self.dim, self.dim))
    }

    pub fn e_indices(&self) -> Vec<i64> {
        self.phi.keys().copied().collect()
    }

    pub fn l_indices(&self) -> Vec<i64> {
        self.psi.keys().copied().collect()
    }

    /// The same triple with `psi` rescaled; compatibility is linear in
    /// `psi`, so scaled and summed families stay compatible.
    pub fn with_scaled_psi(&self, c: &Scalar) -> HolomorphRepTriple {
        let psi = self
            .psi
            .iter()
            .map(|(j, m)| (*j, m.scale_scalar(c)))
            .collect();
        HolomorphRepTriple {
            field: self.field.clone(),
            dim: self.dim,
            phi: self.phi.clone(),
            psi,
            grading: self.grading.clone(),
        }
    }
}

/// The standard holomorph pair on the divided power space: the pure
/// skew-derivation Witt action `phi(e_(i)) = x^(i+1) d_q` and the
/// multiplication-twist action `psi(L_j) = x^(j) tau_q`.
pub fn standard_holomorph_pair(field: &ScalarField) -> Result<HolomorphRepTriple> {
    let Some(l) = field.order() else {
        return Err(Error::RequiresRootOfUnity);
    };
    let dim = l as usize;
    let mut phi = BTreeMap::new();
    for i in -1..=l as i64 - 2 {
        let mut m = Matrix::zeros(field, dim, dim);
        for a in 0..l as i64 {
            let target = a + i;
            if !(0..l as i64).contains(&target) {
                continue;
            }
            m.set(
                target as usize,
                a as usize,
                TPoly::constant(gauss_binomial(field, a + i, i + 1)),
            );
        }
        phi.insert(i, m);
    }
    let mut psi = BTreeMap::new();
    for j in 0..=l as i64 - 1 {
        let mut m = Matrix::zeros(field, dim, dim);
        for a in 0..l as i64 {
            let target = a + j;
            if !(0..l as i64).contains(&target) {
                continue;
            }
            let c = &field.q_power(a) * &gauss_binomial(field, a + j, j);
            m.set(target as usize, a as usize, TPoly::constant(c));
        }
        psi.insert(j, m);
    }
    HolomorphRepTriple::new(field, phi, psi, Some((0..l as i64).collect()))
}

#[derive(Debug, Clone)]
pub struct CompatEntry {
    pub i: i64,
    pub j: i64,
    /// The proportionality factor when the twisted commutator is a multiple
    /// of `psi(L_{i+j})`; `None` when both sides vanish.
    pub mu: Option<String>,
    pub proportional: bool,
    /// Whether the factor equals the plain binomial `[i+j choose i+1]`.
    pub matches_plain: bool,
    /// Whether it instead carries the extra bracket twist `q^(i+1)`.
    pub matches_twisted: bool,
}

#[derive(Debug)]
pub struct CompatReport {
    pub entries: Vec<CompatEntry>,
    /// All pairs satisfy the plain-binomial law (the adopted predicate).
    pub compatible: bool,
    pub all_twisted: bool,
    /// The quantum-space matrices pairwise q-commute:
    /// `q^(i+1) psi_i psi_j = q^(j+1) psi_j psi_i`.
    pub psi_commutation: bool,
}

/// Check the compatibility law on every `(e_(i), L_j)` pair and report the
/// observed proportionality factor against the two candidate
/// normalizations.
pub fn holomorph_compat_check(triple: &HolomorphRepTriple) -> Result<CompatReport> {
    let field = triple.field().clone();
    let mut entries = Vec::new();
    for &i in &triple.e_indices() {
        let phi_i = triple.phi(i).unwrap();
        for &j in &triple.l_indices() {
            let psi_j = triple.psi_or_zero(j);
            let lhs = phi_i
                .mul(&psi_j)
                .sub(&psi_j.mul(phi_i).scale_scalar(&field.q_power(j - i)));
            let target = triple.psi_or_zero(i + j);
            let expected_plain = gauss_binomial(&field, i + j, i + 1);
            let expected_twisted = &field.q_power(i + 1) * &expected_plain;
            if target.is_zero() {
                let ok = lhs.is_zero();
                entries.push(CompatEntry {
                    i,
                    j,
                    mu: None,
                    proportional: ok,
                    matches_plain: ok,
                    matches_twisted: ok,
                });
                continue;
            }
            // solve lhs = mu * target at the first nonzero target entry
            let mut mu: Option<TPoly> = None;
            'outer: for r in 0..target.rows() {
                for c in 0..target.cols() {
                    if !target.get(r, c).is_zero() {
                        mu = Some(lhs.get(r, c).div_constant(target.get(r, c))?);
                        break 'outer;
                    }
                }
            }
            let mu = mu.expect("nonzero target");
            let proportional = lhs == target.scale(&mu);
            let matches_plain = proportional && mu == TPoly::constant(expected_plain.clone());
            let matches_twisted = proportional && mu == TPoly::constant(expected_twisted.clone());
            entries.push(CompatEntry {
                i,
                j,
                mu: Some(mu.to_string()),
                proportional,
                matches_plain,
                matches_twisted,
            });
        }
    }
    let compatible = entries.iter().all(|e| e.matches_plain);
    let all_twisted = entries.iter().all(|e| e.matches_twisted);

    let l_idx = triple.l_indices();
    let mut psi_commutation = true;
    for &i in &l_idx {
        for &j in &l_idx {
            let pi = triple.psi_or_zero(i);
            let pj = triple.psi_or_zero(j);
            let lhs = pi.mul(&pj).scale_scalar(&field.q_power(i + 1));
            let rhs = pj.mul(&pi).scale_scalar(&field.q_power(j + 1));
            if lhs != rhs {
                psi_commutation = false;
            }
        }
    }
    Ok(CompatReport {
        entries,
        compatible,
        all_twisted,
        psi_commutation,
    })
}

fn require_compatible(triple: &HolomorphRepTriple) -> Result<()> {
    let report = holomorph_compat_check(triple)?;
    if !report.compatible {
        return Err(Error::Incompatible(
            "the pair does not satisfy the compatibility law".to_string(),
        ));
    }
    Ok(())
}

/// Deform the Witt action by the quantum-space action:
/// `e_(i) -> phi(e_(i)) + a psi(L_i)` for `i >= 0` (and `L_(-1) = 0`).
pub fn deform_representation(triple: &HolomorphRepTriple, a: &TPoly) -> Result<ModuleRealization> {
    require_compatible(triple)?;
    let field = triple.field().clone();
    let algebra = GradedAlgebra::new(AlgebraKind::WittEps11, field.clone())?;
    let mut actions = BTreeMap::new();
    for &i in &triple.e_indices() {
        let mut m = triple.phi(i).unwrap().clone();
        if i >= 0 {
            m = m.add(&triple.psi_or_zero(i).scale(a));
        }
        actions.insert(i, m);
    }
    Ok(ModuleRealization {
        algebra,
        dim: triple.dim(),
        grading: triple.grading.clone(),
        window: None,
        weight: None,
        actions,
    })
}

/// Tensor the pair with a fixed endomorphism:
/// `e_(i) -> phi(e_(i)) (x) id + psi(L_i) (x) rho`.
///
/// The result is graded only when the second factor is one-dimensional;
/// otherwise the grading is marked absent.
pub fn tensor_representation(
    triple: &HolomorphRepTriple,
    rho: &Matrix,
) -> Result<ModuleRealization> {
    if rho.rows() != rho.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} tensor factor",
            rho.rows(),
            rho.cols()
        )));
    }
    require_compatible(triple)?;
    let field = triple.field().clone();
    let algebra = GradedAlgebra::new(AlgebraKind::WittEps11, field.clone())?;
    let d = rho.rows();
    let id = Matrix::identity(&field, d);
    let mut actions = BTreeMap::new();
    for &i in &triple.e_indices() {
        let mut m = triple.phi(i).unwrap().kron(&id);
        if i >= 0 {
            m = m.add(&triple.psi_or_zero(i).kron(rho));
        }
        actions.insert(i, m);
    }
    let grading = if d == 1 { triple.grading.clone() } else { None };
    Ok(ModuleRealization {
        algebra,
        dim: triple.dim() * d,
        grading,
        window: None,
        weight: None,
        actions,
    })
}
