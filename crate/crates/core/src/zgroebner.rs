//! Strong Gröbner bases over ℤ.
//!
//! Completion follows the S-polynomial / G-polynomial scheme for Euclidean
//! coefficient rings: for every pair of basis elements both the
//! lcm-cancelling S-polynomial and the gcd-combining G-polynomial are
//! reduced, so the final basis has the strong property (every leading term of
//! an ideal element is divisible, coefficient included, by one leading term of
//! the basis). Reduction takes centered remainders on coefficients, which
//! makes normal forms with respect to a reduced basis canonical.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::polyring::{Monomial, Poly, PolyError, Vars};

pub const DEFAULT_STEP_CAP: u64 = 1_000_000;
pub const STEP_CAP_ENV: &str = "CHOWVER_STEP_CAP";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("resource limit exceeded: more than {0} reduction steps")]
    StepCap(u64),
    #[error("relation `{0}` is not homogeneous")]
    NonHomogeneous(String),
    #[error("degree {degree} lies beyond the truncation degree {truncated_at} of this basis")]
    BeyondTruncation { degree: u32, truncated_at: u32 },
    #[error("monomial order was built for a different variable set")]
    OrderMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderKind {
    WeightedGrevlex,
    /// Variables flagged `true` form a block that dominates the rest.
    BlockElimination {
        eliminated: Vec<bool>,
    },
}

/// A monomial order expressed through an integer sort key that is linear in
/// the exponent vector, so the key of a product is the sum of the keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    vars: Arc<Vars>,
    kind: OrderKind,
    var_order: Vec<usize>,
}

impl MonomialOrder {
    pub fn grevlex(vars: &Arc<Vars>) -> Self {
        MonomialOrder {
            vars: Arc::clone(vars),
            kind: OrderKind::WeightedGrevlex,
            var_order: (0..vars.len()).collect(),
        }
    }

    /// Weighted grevlex with an explicit variable sequence (a permutation of
    /// the ring's variable names).
    pub fn grevlex_with_order(vars: &Arc<Vars>, names: &[&str]) -> Result<Self, GbError> {
        let order = names
            .iter()
            .map(|n| {
                vars.index_of(n)
                    .ok_or_else(|| PolyError::UnknownVariable(n.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut seen = order.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != vars.len() || order.len() != vars.len() {
            return Err(GbError::OrderMismatch);
        }
        Ok(MonomialOrder {
            vars: Arc::clone(vars),
            kind: OrderKind::WeightedGrevlex,
            var_order: order,
        })
    }

    pub fn elimination(vars: &Arc<Vars>, drop: &[&str]) -> Result<Self, GbError> {
        let mut eliminated = vec![false; vars.len()];
        for name in drop {
            let i = vars
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            eliminated[i] = true;
        }
        Ok(MonomialOrder {
            vars: Arc::clone(vars),
            kind: OrderKind::BlockElimination { eliminated },
            var_order: (0..vars.len()).collect(),
        })
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    fn key(&self, m: &Monomial) -> Key {
        let e = m.exps();
        let w = |i: usize| i64::from(self.vars.degree(i)) * i64::from(e[i]);
        let mut k = Vec::with_capacity(e.len() + 2);
        match &self.kind {
            OrderKind::WeightedGrevlex => {
                k.push(self.var_order.iter().map(|&i| w(i)).sum());
                k.extend(self.var_order.iter().rev().map(|&i| -i64::from(e[i])));
            }
            OrderKind::BlockElimination { eliminated } => {
                for block in [true, false] {
                    let idx: Vec<usize> = self
                        .var_order
                        .iter()
                        .copied()
                        .filter(|&i| eliminated[i] == block)
                        .collect();
                    k.push(idx.iter().map(|&i| w(i)).sum());
                    k.extend(idx.iter().rev().map(|&i| -i64::from(e[i])));
                }
            }
        }
        k.into_boxed_slice()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

type Key = Box<[i64]>;

fn key_add(a: &[i64], b: &[i64]) -> Key {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

#[derive(Clone, Debug)]
struct Term {
    key: Key,
    mono: Monomial,
    coeff: BigInt,
}

/// Terms sorted by descending order key.
#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<Term>,
}

impl IPoly {
    fn from_poly(p: &Poly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| Term {
                key: order.key(m),
                mono: m.clone(),
                coeff: c.clone(),
            })
            .collect();
        terms.sort_by(|a, b| b.key.cmp(&a.key));
        IPoly { terms }
    }

    fn to_poly(&self, vars: &Arc<Vars>) -> Poly {
        Poly::from_terms(vars, self.terms.iter().map(|t| (t.mono.clone(), t.coeff.clone())))
    }

    fn lead(&self) -> &Term {
        &self.terms[0]
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn negate_if_needed(&mut self) {
        if self.lead().coeff.is_negative() {
            for t in &mut self.terms {
                t.coeff = -&t.coeff;
            }
        }
    }

    /// c · X^shift · self
    fn scaled(&self, c: &BigInt, shift: &Monomial, shift_key: &[i64]) -> IPoly {
        IPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    key: key_add(&t.key, shift_key),
                    mono: t.mono.mul(shift),
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    fn add(&self, other: &IPoly) -> IPoly {
        let mut map: BTreeMap<Key, (Monomial, BigInt)> = BTreeMap::new();
        for t in self.terms.iter().chain(other.terms.iter()) {
            let e = map
                .entry(t.key.clone())
                .or_insert_with(|| (t.mono.clone(), BigInt::zero()));
            e.1 += &t.coeff;
        }
        from_map(map)
    }
}

fn from_map(map: BTreeMap<Key, (Monomial, BigInt)>) -> IPoly {
    IPoly {
        terms: map
            .into_iter()
            .rev()
            .filter(|(_, (_, c))| !c.is_zero())
            .map(|(key, (mono, coeff))| Term { key, mono, coeff })
            .collect(),
    }
}

/// Remainder of `c` modulo `d` in the half-open window (-|d|/2, |d|/2],
/// together with the quotient.
pub fn centered_div_rem(c: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    let ad = d.abs();
    let (mut q, mut r) = c.div_mod_floor(&ad);
    if &r * 2 > ad {
        r -= &ad;
        q += 1;
    }
    if d.is_negative() {
        q = -q;
    }
    (q, r)
}

#[derive(Debug, Clone)]
pub struct GbConfig {
    pub step_cap: u64,
    /// Skip critical pairs above this degree (valid for homogeneous ideals
    /// when only lower degrees are queried).
    pub max_degree: Option<u32>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            step_cap: DEFAULT_STEP_CAP,
            max_degree: None,
        }
    }
}

impl GbConfig {
    /// Default configuration with the step cap taken from `CHOWVER_STEP_CAP`
    /// when that variable holds a positive integer.
    pub fn from_env() -> Self {
        let mut cfg = GbConfig::default();
        if let Some(cap) = std::env::var(STEP_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            if cap > 0 {
                cfg.step_cap = cap;
            }
        }
        cfg
    }
}

struct StepCounter {
    used: u64,
    cap: u64,
}

impl StepCounter {
    fn tick(&mut self) -> Result<(), GbError> {
        self.used += 1;
        if self.used > self.cap {
            Err(GbError::StepCap(self.cap))
        } else {
            Ok(())
        }
    }
}

/// A reduction step `p -= q · X^shift · basis[index]`.
struct Step {
    index: usize,
    q: BigInt,
    shift: Monomial,
}

/// Picks the reducer for a term `c·X^m`: an exact divisor when one exists,
/// otherwise the divisor of smallest absolute leading coefficient. Ties go to
/// the lower basis index.
fn pick_reducer(basis: &[IPoly], mono: &Monomial, c: &BigInt) -> Option<(usize, BigInt)> {
    let mut best: Option<(usize, &BigInt)> = None;
    let mut exact: Option<(usize, &BigInt)> = None;
    for (i, g) in basis.iter().enumerate() {
        let lt = g.lead();
        if !lt.mono.divides(mono) {
            continue;
        }
        let lc = &lt.coeff;
        if (c % lc).is_zero() && exact.is_none_or(|(_, e)| lc.abs() < e.abs()) {
            exact = Some((i, lc));
        }
        if best.is_none_or(|(_, b)| lc.abs() < b.abs()) {
            best = Some((i, lc));
        }
    }
    if let Some((i, lc)) = exact {
        return Some((i, c / lc));
    }
    let (i, lc) = best?;
    let (q, _) = centered_div_rem(c, lc);
    if q.is_zero() {
        None
    } else {
        Some((i, q))
    }
}

/// Full reduction of `p` by `basis`. Returns the remainder; when `record` is
/// given, every step is appended to it.
fn reduce(
    p: IPoly,
    basis: &[IPoly],
    order: &MonomialOrder,
    steps: &mut StepCounter,
    mut record: Option<&mut Vec<Step>>,
) -> Result<IPoly, GbError> {
    let mut work: BTreeMap<Key, (Monomial, BigInt)> = p.terms.into_iter().map(|t| (t.key, (t.mono, t.coeff))).collect();
    let mut out: Vec<Term> = Vec::new();
    while let Some((key, (mono, c))) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        let Some((idx, q)) = pick_reducer(basis, &mono, &c) else {
            out.push(Term { key, mono, coeff: c });
            continue;
        };
        steps.tick()?;
        let g = &basis[idx];
        let lt = g.lead();
        let shift = lt.mono.quotient_of(&mono).expect("reducer divides");
        let shift_key = order.key(&shift);
        let rem = &c - &q * &lt.coeff;
        for t in &g.terms[1..] {
            let k = key_add(&t.key, &shift_key);
            let e = work.entry(k).or_insert_with(|| (t.mono.mul(&shift), BigInt::zero()));
            e.1 -= &q * &t.coeff;
        }
        if !rem.is_zero() {
            out.push(Term { key, mono, coeff: rem });
        }
        if let Some(rec) = record.as_deref_mut() {
            rec.push(Step { index: idx, q, shift });
        }
    }
    Ok(IPoly { terms: out })
}

#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    elements: Vec<IPoly>,
    generators: Vec<Poly>,
    reduced: bool,
    truncated_at: Option<u32>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vars(&self) -> &Arc<Vars> {
        self.order.vars()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    /// Leading monomial and coefficient of each generator.
    pub fn leading_terms(&self) -> Vec<(Monomial, BigInt)> {
        self.elements
            .iter()
            .map(|g| (g.lead().mono.clone(), g.lead().coeff.clone()))
            .collect()
    }

    fn check(&self, p: &Poly) -> Result<(), GbError> {
        if !p.vars().as_ref().eq(self.vars().as_ref()) {
            return Err(PolyError::VariableSetMismatch.into());
        }
        if let (Some(t), false) = (self.truncated_at, p.is_zero()) {
            let w = self.vars().weights();
            let degree = p.terms().map(|(m, _)| m.weighted_degree(&w)).max().unwrap_or(0);
            if degree > t {
                return Err(GbError::BeyondTruncation {
                    degree,
                    truncated_at: t,
                });
            }
        }
        Ok(())
    }

    pub fn normal_form(&self, p: &Poly) -> Result<Poly, GbError> {
        self.check(p)?;
        let mut steps = StepCounter { used: 0, cap: u64::MAX };
        let r = reduce(
            IPoly::from_poly(p, &self.order),
            &self.elements,
            &self.order,
            &mut steps,
            None,
        )?;
        Ok(r.to_poly(self.vars()))
    }

    /// Normal form plus cofactors `q_i` with `p = Σ q_i·g_i + NF(p)`.
    pub fn normal_form_with_cofactors(&self, p: &Poly) -> Result<(Poly, Vec<Poly>), GbError> {
        self.check(p)?;
        let mut steps = StepCounter { used: 0, cap: u64::MAX };
        let mut rec = Vec::new();
        let r = reduce(
            IPoly::from_poly(p, &self.order),
            &self.elements,
            &self.order,
            &mut steps,
            Some(&mut rec),
        )?;
        let vars = self.vars();
        let mut cof = vec![Poly::zero(vars); self.elements.len()];
        for s in rec {
            cof[s.index].add_term(s.shift, s.q);
        }
        Ok((r.to_poly(vars), cof))
    }

    pub fn is_member(&self, p: &Poly) -> Result<bool, GbError> {
        Ok(self.normal_form(p)?.is_zero())
    }
}

fn pair_degree(a: &IPoly, b: &IPoly, weights: &[u32]) -> u32 {
    a.lead().mono.lcm(&b.lead().mono).weighted_degree(weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PairKind {
    S,
    G,
}

fn pair_poly(a: &IPoly, b: &IPoly, kind: PairKind, order: &MonomialOrder) -> Option<IPoly> {
    let (la, lb) = (a.lead(), b.lead());
    let lcm = la.mono.lcm(&lb.mono);
    let sa = la.mono.quotient_of(&lcm).unwrap();
    let sb = lb.mono.quotient_of(&lcm).unwrap();
    let (ka, kb) = (order.key(&sa), order.key(&sb));
    match kind {
        PairKind::S => {
            let l = la.coeff.lcm(&lb.coeff);
            let fa = &l / &la.coeff;
            let fb = -(&l / &lb.coeff);
            Some(a.scaled(&fa, &sa, &ka).add(&b.scaled(&fb, &sb, &kb)))
        }
        PairKind::G => {
            if (&lb.coeff % &la.coeff).is_zero() || (&la.coeff % &lb.coeff).is_zero() {
                return None;
            }
            let eg = la.coeff.extended_gcd(&lb.coeff);
            Some(a.scaled(&eg.x, &sa, &ka).add(&b.scaled(&eg.y, &sb, &kb)))
        }
    }
}

pub fn strong_groebner(relations: &[Poly], order: &MonomialOrder) -> Result<GroebnerBasis, GbError> {
    strong_groebner_with(relations, order, &GbConfig::from_env())
}

pub fn strong_groebner_with(
    relations: &[Poly],
    order: &MonomialOrder,
    config: &GbConfig,
) -> Result<GroebnerBasis, GbError> {
    let vars = order.vars();
    for r in relations {
        if !r.vars().as_ref().eq(vars.as_ref()) {
            return Err(GbError::OrderMismatch);
        }
        if !r.is_homogeneous() {
            return Err(GbError::NonHomogeneous(r.to_string()));
        }
    }
    let weights = vars.weights();
    let mut steps = StepCounter {
        used: 0,
        cap: config.step_cap,
    };
    let mut basis: Vec<IPoly> = Vec::new();
    // (degree, newer index, older index, kind)
    let mut pairs: BTreeSet<(u32, usize, usize, PairKind)> = BTreeSet::new();

    let mut inputs: Vec<IPoly> = relations
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| IPoly::from_poly(r, order))
        .collect();
    inputs.sort_by(|a, b| a.lead().key.cmp(&b.lead().key));

    let push = |h: IPoly, basis: &mut Vec<IPoly>, pairs: &mut BTreeSet<_>| {
        let mut h = h;
        h.negate_if_needed();
        let n = basis.len();
        for (i, g) in basis.iter().enumerate() {
            let d = pair_degree(g, &h, &weights);
            if config.max_degree.is_some_and(|m| d > m) {
                continue;
            }
            pairs.insert((d, n, i, PairKind::S));
            pairs.insert((d, n, i, PairKind::G));
        }
        basis.push(h);
    };

    for f in inputs {
        if config
            .max_degree
            .is_some_and(|m| f.lead().mono.weighted_degree(&weights) > m)
        {
            continue;
        }
        let h = reduce(f, &basis, order, &mut steps, None)?;
        if !h.is_zero() {
            push(h, &mut basis, &mut pairs);
        }
    }

    while let Some((_, j, i, kind)) = pairs.pop_first() {
        let Some(sp) = pair_poly(&basis[i], &basis[j], kind, order) else {
            continue;
        };
        if sp.is_zero() {
            continue;
        }
        let h = reduce(sp, &basis, order, &mut steps, None)?;
        if !h.is_zero() {
            push(h, &mut basis, &mut pairs);
        }
    }

    let elements = interreduce(basis, order, &mut steps)?;
    let generators = elements.iter().map(|g| g.to_poly(vars)).collect();
    Ok(GroebnerBasis {
        order: order.clone(),
        elements,
        generators,
        reduced: true,
        truncated_at: config.max_degree,
    })
}

fn lead_divides(a: &IPoly, b: &IPoly) -> bool {
    a.lead().mono.divides(&b.lead().mono) && (&b.lead().coeff % &a.lead().coeff).is_zero()
}

/// Drops generators whose leading term is a multiple of another leading term,
/// then reduces every tail against the rest.
fn interreduce(basis: Vec<IPoly>, order: &MonomialOrder, steps: &mut StepCounter) -> Result<Vec<IPoly>, GbError> {
    let mut basis = basis;
    basis.sort_by(|a, b| {
        a.lead()
            .key
            .cmp(&b.lead().key)
            .then_with(|| a.lead().coeff.cmp(&b.lead().coeff))
    });
    let mut keep: Vec<IPoly> = Vec::new();
    for g in basis {
        if keep.iter().any(|k| lead_divides(k, &g)) {
            continue;
        }
        keep.retain(|k| !lead_divides(&g, k));
        keep.push(g);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<IPoly> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &keep[i];
        let tail = IPoly {
            terms: g.terms[1..].to_vec(),
        };
        let tail = reduce(tail, &others, order, steps, None)?;
        let mut terms = vec![g.lead().clone()];
        terms.extend(tail.terms);
        out.push(IPoly { terms });
    }
    out.sort_by(|a, b| {
        a.lead()
            .key
            .cmp(&b.lead().key)
            .then_with(|| a.lead().coeff.cmp(&b.lead().coeff))
    });
    Ok(out)
}

pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Result<Poly, GbError> {
    gb.normal_form(p)
}

pub fn is_member(p: &Poly, gb: &GroebnerBasis) -> Result<bool, GbError> {
    gb.is_member(p)
}

/// Whether `I` and `J` generate the same ideal.
pub fn ideals_equal(i: &[Poly], j: &[Poly], order: &MonomialOrder) -> Result<bool, GbError> {
    let gj = strong_groebner(j, order)?;
    for p in i {
        if !gj.is_member(p)? {
            return Ok(false);
        }
    }
    let gi = strong_groebner(i, order)?;
    for p in j {
        if !gi.is_member(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators of `I ∩ ℤ[kept variables]`, still written over the full
/// variable set.
pub fn eliminate(i: &[Poly], drop: &[&str]) -> Result<Vec<Poly>, GbError> {
    let Some(first) = i.first() else {
        return Ok(Vec::new());
    };
    let vars = Arc::clone(first.vars());
    let order = MonomialOrder::elimination(&vars, drop)?;
    let dropped: Vec<usize> = drop.iter().filter_map(|n| vars.index_of(n)).collect();
    let gb = strong_groebner(i, &order)?;
    Ok(gb
        .generators()
        .iter()
        .filter(|g| g.terms().all(|(m, _)| dropped.iter().all(|&k| m.exps()[k] == 0)))
        .cloned()
        .collect())
}

/// Cofactors replayed: `Σ q_i·g_i + r`.
pub fn replay(gb: &GroebnerBasis, cofactors: &[Poly], remainder: &Poly) -> Poly {
    let mut acc = remainder.clone();
    for (q, g) in cofactors.iter().zip(gb.generators()) {
        acc = &acc + &(q * g);
    }
    acc
}

impl GroebnerBasis {
    /// Whether the basis contains a unit, i.e. generates the whole ring.
    pub fn is_whole_ring(&self) -> bool {
        self.elements
            .iter()
            .any(|g| g.lead().mono.is_one() && g.lead().coeff.is_one())
    }
}
