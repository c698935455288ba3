//! Multivariate polynomial arithmetic over F2.
//!
//! Polynomials live in F2[x1..xn]; a term is present iff its coefficient
//! is 1, so a polynomial is just a set of monomials and addition is
//! symmetric difference. The two quotient maps this module provides are
//! the workhorses of the edge conditions downstream: reduction modulo a
//! linear form `α` (divisibility test) and the residue modulo `α²`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum F2PolyError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("zero linear form where a nonzero form is required")]
    ZeroForm,
    #[error("variable index {index} out of range 1..={rank}")]
    VariableOutOfRange { index: usize, rank: usize },
    #[error("rank {0} out of range 1..=64")]
    RankOutOfRange(usize),
}

/// A linear form over F2 in `rank` variables, stored as a support bitmask
/// (bit `i-1` set ⇔ `x_i` has coefficient 1).
///
/// The primary constructor rejects the zero form, because edge weights
/// must be nonzero for any of the validity conditions to make sense. The
/// zero form is only representable through [`LinearForm::new_allow_zero`],
/// which exists so that degenerate input data can be parsed and then
/// rejected by the validators with a proper report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    rank: usize,
    mask: u64,
}

impl LinearForm {
    /// Builds `Σ x_i` over the 1-based indices in `vars`. Rejects the
    /// empty support.
    pub fn new(rank: usize, vars: &[usize]) -> Result<Self, F2PolyError> {
        let form = Self::new_allow_zero(rank, vars)?;
        if form.is_zero() {
            return Err(F2PolyError::ZeroForm);
        }
        Ok(form)
    }

    /// Degenerate-ingestion constructor: admits the zero form. Anything
    /// built this way must pass through a validator before being used as
    /// an edge weight.
    pub fn new_allow_zero(rank: usize, vars: &[usize]) -> Result<Self, F2PolyError> {
        if rank == 0 || rank > 64 {
            return Err(F2PolyError::RankOutOfRange(rank));
        }
        let mut mask = 0u64;
        for &i in vars {
            if i == 0 || i > rank {
                return Err(F2PolyError::VariableOutOfRange { index: i, rank });
            }
            mask |= 1 << (i - 1);
        }
        Ok(LinearForm { rank, mask })
    }

    /// The single variable `x_i`.
    pub fn variable(rank: usize, i: usize) -> Result<Self, F2PolyError> {
        Self::new(rank, &[i])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.mask == 0
    }

    /// 1-based variable indices with coefficient 1, ascending.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.rank)
            .filter(|i| self.mask >> (i - 1) & 1 == 1)
            .collect()
    }

    /// Smallest variable in the support; the pivot of the quotient maps.
    pub fn pivot(&self) -> Option<usize> {
        if self.mask == 0 {
            None
        } else {
            Some(self.mask.trailing_zeros() as usize + 1)
        }
    }

    /// Image of the form under a linear change of variables: variable `x_i`
    /// of `self` is replaced by the form `images[i-1]`. All images must
    /// share a rank. The result may be zero.
    pub fn substitute(&self, images: &[LinearForm]) -> Result<Self, F2PolyError> {
        assert_eq!(images.len(), self.rank, "one image per variable");
        let target = images.first().map(|f| f.rank).unwrap_or(1);
        let mut mask = 0u64;
        for i in self.support() {
            let img = &images[i - 1];
            if img.rank != target {
                return Err(F2PolyError::RankMismatch {
                    left: target,
                    right: img.rank,
                });
            }
            mask ^= img.mask;
        }
        Ok(LinearForm { rank: target, mask })
    }

    pub fn as_polynomial(&self) -> Polynomial {
        let terms = self
            .support()
            .into_iter()
            .map(|i| Monomial::variable(self.rank, i))
            .collect();
        Polynomial {
            rank: self.rank,
            terms,
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support().iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// A monomial in n variables, stored as its exponent vector.
///
/// The ordering is graded lexicographic: lower total degree first, and
/// within a degree the monomial with the higher power of the earliest
/// variable comes first (`x1² < x1x2 < x2²`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u16>,
}

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        assert!(!exponents.is_empty(), "rank must be at least 1");
        Monomial { exponents }
    }

    pub fn one(rank: usize) -> Self {
        Monomial {
            exponents: vec![0; rank],
        }
    }

    /// `x_i` (1-based) in `rank` variables.
    pub fn variable(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "variable index out of range");
        let mut exponents = vec![0; rank];
        exponents[i - 1] = 1;
        Monomial { exponents }
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exponents[i - 1]
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exponents
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.rank(), other.rank());
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exponents }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for (k, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", k + 1)),
                _ => parts.push(format!("x{}^{}", k + 1, e)),
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// All degree-`d` monomials in `n` variables, in graded-lex order.
/// There are C(n−1+d, d) of them.
pub fn monomial_basis(n: usize, d: usize) -> Vec<Monomial> {
    assert!(n >= 1, "rank must be at least 1");
    let mut out = Vec::new();
    let mut current = vec![0u16; n];
    fill_basis(&mut out, &mut current, 0, d);
    out
}

fn fill_basis(out: &mut Vec<Monomial>, current: &mut Vec<u16>, pos: usize, remaining: usize) {
    if pos + 1 == current.len() {
        current[pos] = remaining as u16;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e as u16;
        fill_basis(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

/// An element of F2[x1..xn]: the set of monomials with coefficient 1.
/// The zero polynomial is the empty set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    rank: usize,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(rank: usize) -> Self {
        assert!(rank >= 1);
        Polynomial {
            rank,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(Monomial::one(rank));
        Polynomial { rank, terms }
    }

    pub fn variable(rank: usize, i: usize) -> Self {
        Polynomial::from_monomial(Monomial::variable(rank, i))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let rank = m.rank();
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Polynomial { rank, terms }
    }

    /// Duplicates cancel in pairs, F2-style.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(rank: usize, monomials: I) -> Self {
        let mut p = Polynomial::zero(rank);
        for m in monomials {
            assert_eq!(m.rank(), rank);
            p.toggle(m);
        }
        p
    }

    fn toggle(&mut self, m: Monomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().map(|m| m.degree()).max()
    }

    /// True when every term has degree `d`. The zero polynomial is
    /// homogeneous of every degree.
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.iter().all(|m| m.degree() == d)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Sum in F2[x1..xn]: the symmetric difference of the term sets.
    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, F2PolyError> {
        if self.rank != other.rank {
            return Err(F2PolyError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        Ok(Polynomial {
            rank: self.rank,
            terms,
        })
    }

    /// Distributive product with F2 cancellation.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial, F2PolyError> {
        if self.rank != other.rank {
            return Err(F2PolyError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        let mut out = Polynomial::zero(self.rank);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.mul(b));
            }
        }
        Ok(out)
    }

    /// Replaces `x_i` (1-based) by `replacement` in every term. The
    /// replacement may itself mention `x_i`; it is not re-substituted.
    fn substitute(&self, i: usize, replacement: &Polynomial) -> Polynomial {
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(self.rank)];
        let power = |e: usize, powers: &mut Vec<Polynomial>| -> Polynomial {
            while powers.len() <= e {
                let next = powers.last().unwrap().multiply(replacement).unwrap();
                powers.push(next);
            }
            powers[e].clone()
        };
        let mut out = Polynomial::zero(self.rank);
        for m in &self.terms {
            let e = m.exponent(i) as usize;
            let mut rest = m.exponents.clone();
            rest[i - 1] = 0;
            let base = Polynomial::from_monomial(Monomial::new(rest));
            let term = base.multiply(&power(e, &mut powers)).unwrap();
            out = out.add(&term).unwrap();
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Image of `p` in F2[x1..xn]/(α), realized by substituting
/// `x_i := Σ_{j ∈ support(α), j≠i} x_j` with `i = min(support(α))`.
/// The result mentions only variables other than `x_i`; it is zero
/// exactly when α divides p.
pub fn reduce_mod_linear(p: &Polynomial, alpha: &LinearForm) -> Result<Polynomial, F2PolyError> {
    if alpha.is_zero() {
        return Err(F2PolyError::ZeroForm);
    }
    if p.rank != alpha.rank {
        return Err(F2PolyError::RankMismatch {
            left: p.rank,
            right: alpha.rank,
        });
    }
    let i = alpha.pivot().expect("nonzero form has a pivot");
    let mut replacement = Polynomial::zero(p.rank);
    for j in alpha.support() {
        if j != i {
            replacement = replacement.add(&Polynomial::variable(p.rank, j)).unwrap();
        }
    }
    Ok(p.substitute(i, &replacement))
}

/// The low part of `p` after the invertible change of variables `y := α`.
///
/// Concretely: with `i = min(support(α))`, substitute
/// `x_i := y + Σ_{j ∈ support(α)\{i}} x_j`, rewrite `p` in the
/// coordinates `(y, x_{≠i})`, and keep the terms of y-degree 0 or 1.
/// `p ∈ (α²)` iff the residue is zero. The slot of `x_i` holds `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareResidue {
    pivot: usize,
    poly: Polynomial,
}

impl SquareResidue {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The pivot variable index whose slot represents `y`.
    pub fn pivot(&self) -> usize {
        self.pivot
    }

    /// The residue as a rank-n polynomial with `y` stored in the pivot slot.
    pub fn as_polynomial(&self) -> &Polynomial {
        &self.poly
    }
}

impl fmt::Display for SquareResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for m in self.poly.terms() {
            let mut factors = Vec::new();
            for k in 1..=self.poly.rank() {
                let e = m.exponent(k);
                if e == 0 {
                    continue;
                }
                let name = if k == self.pivot {
                    "y".to_string()
                } else {
                    format!("x{k}")
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            if factors.is_empty() {
                parts.push("1".to_string());
            } else {
                parts.push(factors.join("*"));
            }
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// Residue of `p` modulo `α²`; see [`SquareResidue`].
pub fn residue_mod_linear_square(
    p: &Polynomial,
    alpha: &LinearForm,
) -> Result<SquareResidue, F2PolyError> {
    if alpha.is_zero() {
        return Err(F2PolyError::ZeroForm);
    }
    if p.rank != alpha.rank {
        return Err(F2PolyError::RankMismatch {
            left: p.rank,
            right: alpha.rank,
        });
    }
    let i = alpha.pivot().expect("nonzero form has a pivot");
    // x_i := y + Σ_{j∈support\{i}} x_j, with y kept in slot i.
    let mut replacement = Polynomial::variable(p.rank, i);
    for j in alpha.support() {
        if j != i {
            replacement = replacement.add(&Polynomial::variable(p.rank, j)).unwrap();
        }
    }
    let substituted = p.substitute(i, &replacement);
    let low = substituted
        .terms
        .iter()
        .filter(|m| m.exponent(i) <= 1)
        .cloned();
    let poly = Polynomial::from_monomials(p.rank, low);
    Ok(SquareResidue { pivot: i, poly })
}

/// True iff α divides p in F2[x1..xn].
pub fn divides_linear(alpha: &LinearForm, p: &Polynomial) -> Result<bool, F2PolyError> {
    Ok(reduce_mod_linear(p, alpha)?.is_zero())
}
