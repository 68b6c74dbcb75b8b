//! Sparse multivariate polynomials over the integers with a weighted grading.
//!
//! A [`Poly`] carries a shared handle to its variable set ([`Vars`]); every
//! binary operation checks that both operands live over the same variables.
//! Coefficients are arbitrary-precision, terms with zero coefficient are never
//! stored, and exponent vectors are dense over the variable set, so two equal
//! polynomials always have identical term maps.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::catalog::RingPresentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("operands live over different variable sets")]
    VariableSetMismatch,
    #[error("polynomial is not homogeneous (degrees {0} and {1} both occur)")]
    NonHomogeneous(u32, u32),
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` must have degree >= 1")]
    ZeroDegree(String),
    #[error("image of `{var}` has degree {found}, expected {expected}")]
    MapDegree { var: String, expected: u32, found: u32 },
    #[error("no image given for source variable `{0}`")]
    MissingImage(String),
}

/// A named generator together with its grading weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSpec {
    pub name: String,
    pub degree: u32,
}

impl VarSpec {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        VarSpec {
            name: name.into(),
            degree,
        }
    }
}

/// An ordered list of variables; the declared order fixes the monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vars {
    specs: Vec<VarSpec>,
}

impl Vars {
    pub fn new(specs: Vec<VarSpec>) -> Result<Arc<Vars>, PolyError> {
        for (i, s) in specs.iter().enumerate() {
            if s.degree == 0 {
                return Err(PolyError::ZeroDegree(s.name.clone()));
            }
            if specs[..i].iter().any(|o| o.name == s.name) {
                return Err(PolyError::DuplicateVariable(s.name.clone()));
            }
        }
        Ok(Arc::new(Vars { specs }))
    }

    pub fn from_pairs(pairs: &[(&str, u32)]) -> Result<Arc<Vars>, PolyError> {
        Vars::new(pairs.iter().map(|(n, d)| VarSpec::new(*n, *d)).collect())
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    pub fn specs(&self) -> &[VarSpec] {
        &self.specs
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.specs.iter().position(|s| s.name == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.specs[i].name
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.specs[i].degree
    }

    pub fn weights(&self) -> Vec<u32> {
        self.specs.iter().map(|s| s.degree).collect()
    }
}

/// Dense exponent vector over a [`Vars`]; absent variables have exponent 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }
}

/// Weighted graded reverse lexicographic comparison on the declared variable
/// order: higher weighted degree wins, ties go to the monomial whose last
/// differing exponent is smaller.
pub fn grevlex_cmp(weights: &[u32], a: &Monomial, b: &Monomial) -> Ordering {
    let da = a.weighted_degree(weights);
    let db = b.weighted_degree(weights);
    da.cmp(&db).then_with(|| {
        for (x, y) in a.0.iter().zip(b.0.iter()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Arc<Vars>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(vars: &Arc<Vars>) -> Self {
        Poly {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<Vars>, c: impl Into<BigInt>) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(Monomial::one(vars.len()), c.into());
        p
    }

    pub fn one(vars: &Arc<Vars>) -> Self {
        Poly::constant(vars, 1)
    }

    pub fn var(vars: &Arc<Vars>, name: &str) -> Result<Self, PolyError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Poly::var_index(vars, i))
    }

    pub fn var_index(vars: &Arc<Vars>, i: usize) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(Monomial::var(vars.len(), i), BigInt::one());
        p
    }

    pub fn monomial(vars: &Arc<Vars>, m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms(vars: &Arc<Vars>, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Poly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Parses an expression over the given variables.
    pub fn parse(text: &str, vars: &Arc<Vars>) -> Result<Self, PolyError> {
        Parser::new(text, vars).parse()
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn same_vars(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigInt> {
        self.terms
    }

    /// Number of nonzero terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.exps().len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_vars(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_vars(other)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_vars(other)?;
        let mut r = Poly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(r)
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: Arc::clone(&self.vars),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: Arc::clone(&self.vars),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn check_vars(&self, other: &Poly) -> Result<(), PolyError> {
        if self.same_vars(other) {
            Ok(())
        } else {
            Err(PolyError::VariableSetMismatch)
        }
    }

    /// The common weighted degree of all terms.
    pub fn degree(&self) -> Result<u32, PolyError> {
        let w = self.vars.weights();
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(&w));
        let first = degs.next().ok_or(PolyError::ZeroPolynomial)?;
        for d in degs {
            if d != first {
                return Err(PolyError::NonHomogeneous(first.min(d), first.max(d)));
            }
        }
        Ok(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_ok()
    }

    /// Largest power of the variable `i` occurring in any term.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exps()[i]).max().unwrap_or(0)
    }

    /// Re-expresses the polynomial over another variable set by name.
    pub fn rename_into(&self, target: &Arc<Vars>) -> Result<Poly, PolyError> {
        let idx: Vec<usize> = self
            .vars
            .specs()
            .iter()
            .map(|s| {
                target
                    .index_of(&s.name)
                    .ok_or_else(|| PolyError::UnknownVariable(s.name.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut r = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exps().iter().enumerate() {
                if x > 0 {
                    e[idx[i]] = x;
                }
            }
            r.add_term(Monomial::from_exps(e), c.clone());
        }
        Ok(r)
    }

    /// Terms in descending weighted-grevlex order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let w = self.vars.weights();
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grevlex_cmp(&w, b.0, a.0));
        t
    }

    /// Largest term in weighted grevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        let w = self.vars.weights();
        self.terms.iter().max_by(|a, b| grevlex_cmp(&w, a.0, b.0))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

// Operator forms panic on a variable-set mismatch; use the `try_*` methods
// where operands come from untrusted input.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs)
            .expect("polynomial addition over mismatched variables")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs)
            .expect("polynomial subtraction over mismatched variables")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("polynomial product over mismatched variables")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&BigInt::from(-1))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

#[derive(Debug, Clone)]
pub enum Operand {
    Poly(Poly),
    Scalar(BigInt),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Scale,
}

/// Binary arithmetic with an explicit error on mismatched operands.
pub fn arith(op: ArithOp, a: &Poly, b: &Operand) -> Result<Poly, PolyError> {
    match (op, b) {
        (ArithOp::Add, Operand::Poly(q)) => a.try_add(q),
        (ArithOp::Sub, Operand::Poly(q)) => a.try_sub(q),
        (ArithOp::Mul, Operand::Poly(q)) => a.try_mul(q),
        (ArithOp::Scale, Operand::Scalar(k)) | (ArithOp::Mul, Operand::Scalar(k)) => Ok(a.scale(k)),
        (ArithOp::Scale, Operand::Poly(q)) => a.try_mul(q),
        (ArithOp::Add, Operand::Scalar(k)) => Ok(a + &Poly::constant(a.vars(), k.clone())),
        (ArithOp::Sub, Operand::Scalar(k)) => Ok(a - &Poly::constant(a.vars(), k.clone())),
    }
}

pub fn parse_poly(text: &str, ring: &RingPresentation) -> Result<Poly, PolyError> {
    Poly::parse(text, ring.vars())
}

pub fn degree_of(p: &Poly, ring: &RingPresentation) -> Result<u32, PolyError> {
    if !p.vars().as_ref().eq(ring.vars().as_ref()) {
        return Err(PolyError::VariableSetMismatch);
    }
    p.degree()
}

/// A graded ring homomorphism given by the images of the source generators.
#[derive(Debug, Clone)]
pub struct RingMap {
    source: RingPresentation,
    target: RingPresentation,
    images: Vec<Poly>,
}

impl RingMap {
    /// `images` names a target polynomial (as text) for each source variable.
    pub fn new(
        source: &RingPresentation,
        target: &RingPresentation,
        images: &[(&str, &str)],
    ) -> Result<Self, PolyError> {
        let polys = images
            .iter()
            .map(|(v, e)| Ok((v.to_string(), Poly::parse(e, target.vars())?)))
            .collect::<Result<Vec<_>, PolyError>>()?;
        RingMap::from_polys(source, target, polys)
    }

    pub fn from_polys(
        source: &RingPresentation,
        target: &RingPresentation,
        images: Vec<(String, Poly)>,
    ) -> Result<Self, PolyError> {
        let sv = source.vars();
        let mut slots: Vec<Option<Poly>> = vec![None; sv.len()];
        for (name, p) in images {
            let i = sv.index_of(&name).ok_or(PolyError::UnknownVariable(name.clone()))?;
            if !p.vars().as_ref().eq(target.vars().as_ref()) {
                return Err(PolyError::VariableSetMismatch);
            }
            if !p.is_zero() {
                let d = p.degree()?;
                if d != sv.degree(i) {
                    return Err(PolyError::MapDegree {
                        var: name,
                        expected: sv.degree(i),
                        found: d,
                    });
                }
            }
            slots[i] = Some(p);
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| PolyError::MissingImage(sv.name(i).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RingMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(ring: &RingPresentation) -> Self {
        let v = ring.vars();
        RingMap {
            source: ring.clone(),
            target: ring.clone(),
            images: (0..v.len()).map(|i| Poly::var_index(v, i)).collect(),
        }
    }

    pub fn source(&self) -> &RingPresentation {
        &self.source
    }

    pub fn target(&self) -> &RingPresentation {
        &self.target
    }

    pub fn image_of(&self, var: &str) -> Option<&Poly> {
        self.source.vars().index_of(var).map(|i| &self.images[i])
    }

    /// Applies the homomorphism term by term.
    pub fn apply(&self, p: &Poly) -> Result<Poly, PolyError> {
        if !p.vars().as_ref().eq(self.source.vars().as_ref()) {
            return Err(PolyError::VariableSetMismatch);
        }
        let tv = self.target.vars();
        // powers of each image, built lazily
        let mut powers: Vec<Vec<Poly>> = self.images.iter().map(|img| vec![Poly::one(tv), img.clone()]).collect();
        let mut out = Poly::zero(tv);
        for (m, c) in p.terms() {
            let mut t = Poly::constant(tv, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &self.images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }
}

pub fn apply_map(f: &RingMap, p: &Poly) -> Result<Poly, PolyError> {
    f.apply(p)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<Vars>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &'a Arc<Vars>) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            vars,
        }
    }

    fn parse(mut self) -> Result<Poly, PolyError> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        let base = match self.peek() {
            None => return Err(self.err("unexpected end of input")),
            Some(b'-') => {
                self.pos += 1;
                return Ok(-&self.factor()?);
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() => Poly::constant(self.vars, self.integer()?),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Poly::var(self.vars, name)?
            }
            Some(_) => return Err(self.err("unexpected character")),
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        digits.parse().map_err(|_| self.err("bad integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bg() -> Arc<Vars> {
        Vars::from_pairs(&[("b1", 1), ("b2", 2), ("gam", 1), ("c2", 2), ("c3", 3)]).unwrap()
    }

    fn p(s: &str, v: &Arc<Vars>) -> Poly {
        Poly::parse(s, v).unwrap()
    }

    #[test]
    fn parse_scaled_variable() {
        let v = bg();
        let q = p("2*b1", &v);
        assert_eq!(q.len(), 1);
        assert_eq!(q.coeff(&Monomial::var(5, 0)), BigInt::from(2));
    }

    #[test]
    fn parse_theorem_bullet_at_genus_three() {
        let v = bg();
        let q = p("4*b2+8*c2", &v);
        assert_eq!(q.coeff(&Monomial::var(5, 1)), BigInt::from(4));
        assert_eq!(q.coeff(&Monomial::var(5, 3)), BigInt::from(8));
        assert_eq!(q.len(), 2);
        assert_eq!(q.to_string(), "4*b2 + 8*c2");
    }

    #[test]
    fn commutativity_cancels() {
        let v = Vars::from_pairs(&[("x1", 1), ("x2", 1)]).unwrap();
        assert!(p("x1*x2 - x2*x1", &v).is_zero());
    }

    #[test]
    fn parse_errors() {
        let v = bg();
        assert_eq!(Poly::parse("b1 + zz", &v), Err(PolyError::UnknownVariable("zz".into())));
        assert!(matches!(Poly::parse("b1 + ", &v), Err(PolyError::Syntax { .. })));
        assert!(matches!(Poly::parse("(b1", &v), Err(PolyError::Syntax { .. })));
        assert!(matches!(Poly::parse("b1 b2", &v), Err(PolyError::Syntax { .. })));
    }

    #[test]
    fn product_of_binomials() {
        let v = Vars::from_pairs(&[("tau1", 1), ("tau2", 1), ("xi1", 1), ("xi2", 1)]).unwrap();
        let prod = &p("tau1+xi1", &v) * &p("tau2+xi2", &v);
        assert_eq!(prod, p("tau1*tau2 + xi1*tau2 + xi2*tau1 + xi1*xi2", &v));
        let w = Vars::from_pairs(&[("x1", 1), ("x2", 1)]).unwrap();
        assert_eq!(&p("x1+x2", &w) * &p("x1-x2", &w), p("x1^2-x2^2", &w));
        assert!(p("x1+x2", &w).scale(&BigInt::zero()).is_zero());
    }

    #[test]
    fn arith_rejects_mismatched_variables() {
        let a = p("x1", &Vars::from_pairs(&[("x1", 1)]).unwrap());
        let b = p("x1", &Vars::from_pairs(&[("x1", 1), ("x2", 1)]).unwrap());
        assert_eq!(
            arith(ArithOp::Add, &a, &Operand::Poly(b)).unwrap_err(),
            PolyError::VariableSetMismatch
        );
    }

    #[test]
    fn weighted_degrees() {
        let v = bg();
        assert_eq!(p("b1^3*b2", &v).degree(), Ok(5));
        assert_eq!(p("c3*(b1+gam)", &v).degree(), Ok(4));
        assert!(matches!(p("b1+c2", &v).degree(), Err(PolyError::NonHomogeneous(1, 2))));
        assert_eq!(Poly::zero(&v).degree(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn display_round_trips() {
        let v = bg();
        let q = p("-3*b1^2*gam + 7*c3*b1 - b2^2 + 12", &v);
        assert_eq!(p(&q.to_string(), &v), q);
    }

    #[test]
    fn vars_validation() {
        assert!(matches!(
            Vars::from_pairs(&[("a", 1), ("a", 2)]),
            Err(PolyError::DuplicateVariable(_))
        ));
        assert!(matches!(Vars::from_pairs(&[("a", 0)]), Err(PolyError::ZeroDegree(_))));
    }
}
