//! Transfer along the double cover B(Gm²×PGL₂) → B(G×PGL₂): involution,
//! pullback, pushforward through the module basis {1, x₁}, projective-bundle
//! integration, and the solver that pins down the upstairs constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::abelian::{lattice_solve, monomials_of_degree, AbelianError};
use crate::catalog::{self, check_monic_in_xi, classifying_ring, CatalogError, RingPresentation};
use crate::polyring::{Monomial, Poly, PolyError, RingMap, Vars};
use crate::zgroebner::{strong_groebner, GbError, GroebnerBasis, MonomialOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransferError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error("action is not an involution: {0}")]
    NotInvolution(String),
    #[error("no integer solution: {0}")]
    NoSolution(String),
    #[error("solution is not unique: {0}")]
    NonUnique(String),
}

/// Each variable goes to ± another variable; applying twice is the identity.
#[derive(Debug, Clone)]
pub struct InvolutionSpec {
    ring: RingPresentation,
    /// target index and sign per source variable
    action: Vec<(usize, bool)>,
}

impl InvolutionSpec {
    /// `moves` lists (variable, image variable, negate); unlisted variables
    /// are fixed.
    pub fn new(ring: &RingPresentation, moves: &[(&str, &str, bool)]) -> Result<Self, TransferError> {
        let v = ring.vars();
        let mut action: Vec<(usize, bool)> = (0..v.len()).map(|i| (i, false)).collect();
        for (from, to, neg) in moves {
            let i = v
                .index_of(from)
                .ok_or_else(|| PolyError::UnknownVariable(from.to_string()))?;
            let j = v
                .index_of(to)
                .ok_or_else(|| PolyError::UnknownVariable(to.to_string()))?;
            if v.degree(i) != v.degree(j) {
                return Err(TransferError::NotInvolution(format!(
                    "{from} and {to} have different degrees"
                )));
            }
            action[i] = (j, *neg);
        }
        for (i, &(j, s)) in action.iter().enumerate() {
            let (k, t) = action[j];
            if k != i || s != t {
                return Err(TransferError::NotInvolution(format!(
                    "{} does not return to itself",
                    v.name(i)
                )));
            }
        }
        Ok(InvolutionSpec {
            ring: ring.clone(),
            action,
        })
    }

    /// x₁ ↔ x₂ on B(Gm²×PGL₂).
    pub fn swap() -> Self {
        let up = classifying_ring("BGm2xPGL2").expect("static ring");
        InvolutionSpec::new(&up, &[("x1", "x2", false), ("x2", "x1", false)]).expect("valid involution")
    }

    /// x₁ ↔ x₂ and t ↦ −t on ℤ[t, x₁, x₂].
    pub fn h11() -> Self {
        InvolutionSpec::new(
            &h11_ring(),
            &[("x1", "x2", false), ("x2", "x1", false), ("t", "t", true)],
        )
        .expect("valid involution")
    }

    pub fn ring(&self) -> &RingPresentation {
        &self.ring
    }
}

/// Free ring ℤ[t, x₁, x₂] carrying the H₁,₁ classes.
pub fn h11_ring() -> RingPresentation {
    let v = Vars::from_pairs(&[("t", 1), ("x1", 1), ("x2", 1)]).expect("static variables");
    RingPresentation::new("Gm x Gm^2", &v, Vec::new(), "torus of H_{1,1}").expect("no relations")
}

pub fn mu_star(p: &Poly, inv: &InvolutionSpec) -> Result<Poly, TransferError> {
    let v = inv.ring.vars();
    if !p.vars().as_ref().eq(v.as_ref()) {
        return Err(PolyError::VariableSetMismatch.into());
    }
    let mut out = Poly::zero(v);
    for (m, c) in p.terms() {
        let mut e = vec![0u32; v.len()];
        let mut negative = false;
        for (i, &x) in m.exps().iter().enumerate() {
            let (j, s) = inv.action[i];
            e[j] += x;
            negative ^= s && x % 2 == 1;
        }
        out.add_term(Monomial::from_exps(e), if negative { -c } else { c.clone() });
    }
    Ok(out)
}

/// Symmetric-function ring of an upstairs ring: e₁, e₂ followed by every
/// variable other than x₁, x₂.
pub fn symmetric_vars(upstairs: &Arc<Vars>) -> Result<Arc<Vars>, PolyError> {
    let mut pairs: Vec<(&str, u32)> = vec![("e1", 1), ("e2", 2)];
    for s in upstairs.specs() {
        if s.name != "x1" && s.name != "x2" {
            pairs.push((s.name.as_str(), s.degree));
        }
    }
    Vars::from_pairs(&pairs)
}

/// Writes `p = s0 + s1·x₁` with `s0`, `s1` symmetric, i.e. polynomials in
/// e₁ = x₁+x₂, e₂ = x₁x₂ and the remaining variables.
pub fn symmetric_decompose(p: &Poly) -> Result<(Poly, Poly), TransferError> {
    let up = p.vars();
    let i1 = up
        .index_of("x1")
        .ok_or_else(|| PolyError::UnknownVariable("x1".into()))?;
    let i2 = up
        .index_of("x2")
        .ok_or_else(|| PolyError::UnknownVariable("x2".into()))?;
    let sym = symmetric_vars(up)?;
    let e1 = Poly::var(&sym, "e1")?;
    let e2 = Poly::var(&sym, "e2")?;
    // x₁^k = a[k]·x₁ + b[k]
    let top = p.terms().map(|(m, _)| m.exps()[i1] + m.exps()[i2]).max().unwrap_or(0) as usize;
    let mut a = vec![Poly::zero(&sym)];
    let mut b = vec![Poly::one(&sym)];
    for k in 0..top {
        let next_a = &(&e1 * &a[k]) + &b[k];
        let next_b = -&(&e2 * &a[k]);
        a.push(next_a);
        b.push(next_b);
    }
    let others: Vec<(usize, usize)> = (0..up.len())
        .filter(|&i| i != i1 && i != i2)
        .map(|i| (i, sym.index_of(up.name(i)).expect("copied variable")))
        .collect();
    let mut s0 = Poly::zero(&sym);
    let mut s1 = Poly::zero(&sym);
    for (m, c) in p.terms() {
        let mut rest = vec![0u32; sym.len()];
        for &(i, j) in &others {
            rest[j] = m.exps()[i];
        }
        let rest = Poly::monomial(&sym, Monomial::from_exps(rest), c.clone());
        let (p1, p2) = (m.exps()[i1] as usize, m.exps()[i2]);
        // x₂^p2 = Σ C(p2, j) e₁^(p2−j) (−x₁)^j
        let mut binom = BigInt::one();
        for j in 0..=p2 {
            let sign = if j % 2 == 1 { -BigInt::one() } else { BigInt::one() };
            let coef = &e1.pow(p2 - j).scale(&(&binom * sign)) * &rest;
            let k = p1 + j as usize;
            s1 = &s1 + &(&coef * &a[k]);
            s0 = &s0 + &(&coef * &b[k]);
            binom = binom * BigInt::from(p2 - j) / BigInt::from(j + 1);
        }
    }
    Ok((s0, s1))
}

/// Inverse of [`symmetric_decompose`].
pub fn symmetric_reconstruct(s0: &Poly, s1: &Poly, upstairs: &Arc<Vars>) -> Result<Poly, TransferError> {
    let sym = s0.vars();
    let mut images = vec![
        ("e1".to_string(), Poly::parse("x1+x2", upstairs)?),
        ("e2".to_string(), Poly::parse("x1*x2", upstairs)?),
    ];
    for s in sym.specs().iter().skip(2) {
        images.push((s.name.clone(), Poly::var(upstairs, &s.name)?));
    }
    let src = RingPresentation::new("sym", sym, Vec::new(), "symmetric functions")?;
    let tgt = RingPresentation::new("up", upstairs, Vec::new(), "upstairs")?;
    let f = RingMap::from_polys(&src, &tgt, images)?;
    let x1 = Poly::var(upstairs, "x1")?;
    Ok(&f.apply(s0)? + &(&f.apply(s1)? * &x1))
}

/// Both sides of the double cover and the maps between them.
#[derive(Debug, Clone)]
pub struct TransferData {
    pub downstairs: RingPresentation,
    pub upstairs: RingPresentation,
    pub pullback: RingMap,
    /// ψ₊(1)
    pub push_one: Poly,
    /// ψ₊(x₁)
    pub push_x1: Poly,
    down_gb: GroebnerBasis,
    up_gb: GroebnerBasis,
    sym_to_down: RingMap,
}

impl TransferData {
    pub fn standard() -> Result<Self, TransferError> {
        let down = classifying_ring("BGxPGL2")?;
        let up = classifying_ring("BGm2xPGL2")?;
        let pullback = RingMap::new(
            &down,
            &up,
            &[
                ("b1", "x1+x2"),
                ("b2", "x1*x2"),
                ("gam", "0"),
                ("c2", "c2"),
                ("c3", "c3"),
            ],
        )?;
        let sym = symmetric_vars(up.vars())?;
        let sym_ring = RingPresentation::new("sym", &sym, Vec::new(), "symmetric functions")?;
        let sym_to_down = RingMap::new(
            &sym_ring,
            &down,
            &[("e1", "b1"), ("e2", "b2"), ("c2", "c2"), ("c3", "c3")],
        )?;
        let down_gb = strong_groebner(down.relations(), &MonomialOrder::grevlex(down.vars()))?;
        let up_gb = strong_groebner(up.relations(), &MonomialOrder::grevlex(up.vars()))?;
        Ok(TransferData {
            push_one: Poly::constant(down.vars(), 2),
            push_x1: down.poly("b1+gam")?,
            downstairs: down,
            upstairs: up,
            pullback,
            down_gb,
            up_gb,
            sym_to_down,
        })
    }

    pub fn downstairs_gb(&self) -> &GroebnerBasis {
        &self.down_gb
    }

    pub fn upstairs_gb(&self) -> &GroebnerBasis {
        &self.up_gb
    }

    /// Lifts of (s0, s1) to the downstairs ring, before reduction.
    pub fn lift(&self, s0: &Poly, s1: &Poly) -> Result<(Poly, Poly), TransferError> {
        Ok((self.sym_to_down.apply(s0)?, self.sym_to_down.apply(s1)?))
    }

    /// 2·l0 + l1·(β₁+γ), reduced modulo the downstairs relations.
    pub fn push_lifts(&self, l0: &Poly, l1: &Poly) -> Result<Poly, TransferError> {
        let raw = &(&self.push_one * l0) + &(&self.push_x1 * l1);
        Ok(self.down_gb.normal_form(&raw)?)
    }

    pub fn pull(&self, a: &Poly) -> Result<Poly, TransferError> {
        Ok(self.pullback.apply(a)?)
    }
}

pub fn psi_pushforward(p: &Poly, td: &TransferData) -> Result<Poly, TransferError> {
    let (s0, s1) = symmetric_decompose(p)?;
    let (l0, l1) = td.lift(&s0, &s1)?;
    td.push_lifts(&l0, &l1)
}

/// ψ*ψ₊(p) = p + μ*(p), compared modulo the upstairs relations.
pub fn push_pull_check(p: &Poly, td: &TransferData, inv: &InvolutionSpec) -> Result<bool, TransferError> {
    let lhs = td.pull(&psi_pushforward(p, td)?)?;
    let rhs = p + &mu_star(p, inv)?;
    Ok(td.up_gb.is_member(&(&lhs - &rhs))?)
}

/// The composite p + μ*(p), for covers where only the involution is modeled.
pub fn push_pull_formal(p: &Poly, inv: &InvolutionSpec) -> Result<Poly, TransferError> {
    Ok(p + &mu_star(p, inv)?)
}

/// Integration along a projective bundle: reduce `p` modulo the monic
/// relation (degree N in ξ), then take the coefficient of ξ^(N−1).
pub fn proj_pushforward(p: &Poly, rel: &Poly) -> Result<Poly, TransferError> {
    let v = p.vars();
    if !rel.vars().as_ref().eq(v.as_ref()) {
        return Err(PolyError::VariableSetMismatch.into());
    }
    let xi = v
        .index_of("xi")
        .ok_or_else(|| PolyError::UnknownVariable("xi".into()))?;
    let n = rel.degree_in(xi);
    if n == 0 {
        return Err(CatalogError::NotMonic {
            expected: 1,
            detail: "relation does not involve xi".into(),
        }
        .into());
    }
    check_monic_in_xi(rel, n)?;
    let mut xi_n = vec![0u32; v.len()];
    xi_n[xi] = n;
    let tail = rel - &Poly::monomial(v, Monomial::from_exps(xi_n), 1);
    // ξ^N ≡ −tail
    let mut work = p.clone();
    loop {
        let high: Vec<(Monomial, BigInt)> = work
            .terms()
            .filter(|(m, _)| m.exps()[xi] >= n)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        if high.is_empty() {
            break;
        }
        for (m, c) in high {
            let mut e = m.exps().to_vec();
            e[xi] -= n;
            let lower = Monomial::from_exps(e);
            work.add_term(m, -c.clone());
            work = &work - &tail.mul_monomial(&lower, &c);
        }
    }
    let mut out = Poly::zero(v);
    for (m, c) in work.terms() {
        if m.exps()[xi] == n - 1 {
            let mut e = m.exps().to_vec();
            e[xi] = 0;
            out.add_term(Monomial::from_exps(e), c.clone());
        }
    }
    Ok(out)
}

/// ξ^i · [W_{r;1,0}] as a product.
pub fn w_expand(r: u32, i: u32) -> Result<Poly, TransferError> {
    let w = catalog::w_class(r)?;
    let xi = Poly::var(w.vars(), "xi")?;
    Ok(&xi.pow(i) * &w)
}

/// The four-term expansion as displayed, built term by term.
pub fn w_displayed(r: u32, i: u32) -> Result<Poly, TransferError> {
    if r < 1 {
        return Err(CatalogError::InvalidM(r).into());
    }
    let r = i64::from(r);
    let text = format!(
        "xi^{} + {}*c2*xi^{i} + {}*xi^{}*t1 + {}*xi^{i}*t1^2",
        i + 2,
        r * r,
        2 * r - 1,
        i + 1,
        r * (2 * r - 1)
    );
    Ok(Poly::parse(&text, &catalog::chart_vars())?)
}

/// f₁ and f₂ with every integer solution found for each ansatz.
#[derive(Debug, Clone)]
pub struct FConstants {
    pub f1: Poly,
    pub f2: Poly,
    pub f1_solutions: Vec<Vec<BigInt>>,
    pub f2_solutions: Vec<Vec<BigInt>>,
}

/// Solves for f = Σ aᵢ·basis[i] with ψ₊(f) = push_target downstairs and
/// f·μ*(f) = product_target upstairs. Returns every integer solution.
pub fn solve_ansatz(
    basis: &[Poly],
    push_target: &Poly,
    product_target: &Poly,
    td: &TransferData,
) -> Result<Vec<Vec<BigInt>>, TransferError> {
    let inv = InvolutionSpec::swap();
    let d = push_target.degree()?;
    // linear constraint, modulo the degree-d part of the downstairs ideal
    let mut gens: Vec<Poly> = basis.iter().map(|b| psi_pushforward(b, td)).collect::<Result<_, _>>()?;
    let dv = td.downstairs.vars();
    for r in td.downstairs.relations() {
        let e = r.degree()?;
        if e <= d {
            for m in monomials_of_degree(dv, d - e) {
                gens.push(r.mul_monomial(&m, &BigInt::one()));
            }
        }
    }
    let sol =
        lattice_solve(push_target, &gens)?.ok_or_else(|| TransferError::NoSolution("pushforward constraint".into()))?;
    let k = basis.len();
    let a0: Vec<BigInt> = sol.particular[..k].to_vec();
    let mut dirs: Vec<Vec<BigInt>> = Vec::new();
    for kv in &sol.kernel {
        let p: Vec<BigInt> = kv[..k].to_vec();
        if p.iter().any(|x| !x.is_zero()) {
            dirs.push(p);
        }
    }
    // saturate the projected kernel to a basis
    let dirs = lattice_basis(&dirs, k);
    if dirs.len() > 1 {
        return Err(TransferError::NonUnique(format!(
            "pushforward constraint leaves {} free directions",
            dirs.len()
        )));
    }
    let up = td.upstairs.vars();
    if dirs.is_empty() {
        let f = combine(basis, &a0, up);
        let prod = &f * &mu_star(&f, &inv)?;
        return Ok(if prod == *product_target { vec![a0] } else { Vec::new() });
    }
    // f(s) = Σ (a0ᵢ + s·dᵢ)·basisᵢ; collect f·μ*f − target as polynomials in s
    let dir = &dirs[0];
    let f0 = combine(basis, &a0, up);
    let f1 = combine(basis, dir, up);
    let (g0, g1) = (mu_star(&f0, &inv)?, mu_star(&f1, &inv)?);
    let c0 = &(&f0 * &g0) - product_target;
    let c1 = &(&f0 * &g1) + &(&f1 * &g0);
    let c2 = &f1 * &g1;
    let mut eqs: BTreeMap<Monomial, [BigInt; 3]> = BTreeMap::new();
    for (slot, p) in [&c0, &c1, &c2].into_iter().enumerate() {
        for (m, c) in p.terms() {
            eqs.entry(m.clone())
                .or_insert_with(|| [BigInt::zero(), BigInt::zero(), BigInt::zero()])[slot] = c.clone();
        }
    }
    let eqs: Vec<[BigInt; 3]> = eqs.into_values().filter(|e| e.iter().any(|x| !x.is_zero())).collect();
    let Some(first) = eqs.first() else {
        return Err(TransferError::NonUnique("product constraint holds identically".into()));
    };
    let mut roots = integer_roots(first);
    roots.retain(|s| eqs.iter().all(|e| eval(e, s).is_zero()));
    Ok(roots
        .into_iter()
        .map(|s| a0.iter().zip(dir).map(|(a, d)| a + &s * d).collect())
        .collect())
}

fn combine(basis: &[Poly], coeffs: &[BigInt], vars: &Arc<Vars>) -> Poly {
    basis
        .iter()
        .zip(coeffs)
        .fold(Poly::zero(vars), |acc, (b, c)| &acc + &b.scale(c))
}

fn lattice_basis(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut lat = crate::abelian::Lattice::new(n);
    for v in vectors {
        lat.insert_dense(v);
    }
    let m = lat.to_matrix();
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn eval(e: &[BigInt; 3], s: &BigInt) -> BigInt {
    &e[0] + &e[1] * s + &e[2] * s * s
}

/// Integer roots of c0 + c1·s + c2·s² (not identically zero).
fn integer_roots(e: &[BigInt; 3]) -> Vec<BigInt> {
    let mut roots = Vec::new();
    let lowest = e.iter().position(|x| !x.is_zero()).expect("nonzero equation");
    if lowest > 0 {
        roots.push(BigInt::zero());
    }
    let c = e[lowest].abs();
    let mut d = BigInt::one();
    while &d * &d <= c {
        if (&c % &d).is_zero() {
            for q in [d.clone(), &c / &d] {
                for s in [q.clone(), -q] {
                    if eval(e, &s).is_zero() && !roots.contains(&s) {
                        roots.push(s);
                    }
                }
            }
        }
        d += 1;
    }
    roots.sort();
    roots
}

/// Derives f₁ (ansatz a·x₁ + b·x₂) and f₂ (ansatz a·x₁² + b·x₂² + c·c₂) from
/// their pushforwards and the products with their swaps.
pub fn derive_f_constants(g: u32) -> Result<FConstants, TransferError> {
    let table = catalog::pushforward_table(g)?;
    let k = catalog::GenusCoefficients::new(g)?;
    let td = TransferData::standard()?;
    let up = td.upstairs.clone();
    let p = |s: &str| up.poly(s);
    let gg = &k.g * &k.g;

    let basis1 = [p("x1")?, p("x2")?];
    let target1 = p("x1*x2")?.scale(&(&gg * 4u32));
    let sols1 = solve_ansatz(&basis1, table.class("S1_1")?, &target1, &td)?;

    let basis2 = [p("x1^2")?, p("x2^2")?, p("c2")?];
    let target2 = f2_product_target(g)?;
    let sols2 = solve_ansatz(&basis2, table.class("S1_tau")?, &target2, &td)?;

    let pick = |sols: &[Vec<BigInt>], basis: &[Poly], what: &str| -> Result<Poly, TransferError> {
        check_swap_pair(sols, what)?;
        let chosen = sols.iter().find(|s| !s[0].is_zero()).unwrap_or(&sols[0]);
        Ok(combine(basis, chosen, up.vars()))
    };
    Ok(FConstants {
        f1: pick(&sols1, &basis1, "f1")?,
        f2: pick(&sols2, &basis2, "f2")?,
        f1_solutions: sols1,
        f2_solutions: sols2,
    })
}

/// 4e₂² − (g²−1)c₂(e₁²−2e₂) + ((g²−1)/2)²c₂² with e₁ = x₁+x₂, e₂ = x₁x₂.
pub fn f2_product_target(g: u32) -> Result<Poly, TransferError> {
    let k = catalog::GenusCoefficients::new(g)?;
    let up = classifying_ring("BGm2xPGL2")?;
    let p = |s: &str| up.poly(s);
    let e1 = p("x1+x2")?;
    let e2 = p("x1*x2")?;
    let c2 = p("c2")?;
    let t1 = (&e2 * &e2).scale(&BigInt::from(4));
    let t2 = (&c2 * &(&(&e1 * &e1) - &e2.scale(&BigInt::from(2)))).scale(&k.g2m1);
    let t3 = (&c2 * &c2).scale(&(&k.g2m1_half * &k.g2m1_half));
    Ok(&(&t1 - &t2) + &t3)
}

/// Accepts one solution or a pair exchanged by the swap of the first two
/// ansatz coefficients.
fn check_swap_pair(sols: &[Vec<BigInt>], what: &str) -> Result<(), TransferError> {
    match sols {
        [] => Err(TransferError::NoSolution(what.into())),
        [_] => Ok(()),
        [a, b] => {
            let mut sw = a.clone();
            sw.swap(0, 1);
            if &sw == b {
                Ok(())
            } else {
                Err(TransferError::NonUnique(format!("{what}: two unrelated solutions")))
            }
        }
        _ => Err(TransferError::NonUnique(format!("{what}: {} solutions", sols.len()))),
    }
}

/// Verdicts for a candidate value of Φ₊(1) in the downstairs ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiCheck {
    /// candidate ∈ (2) + base
    pub in_two: bool,
    /// γ·candidate ∈ base
    pub gamma_annihilated: bool,
    /// β₂·candidate ∈ (2) + base, forced by Φ*(β₂) = 2β₂ and the projection
    /// formula β₂·Φ₊(1) = Φ₊(2β₂)
    pub schema_holds: bool,
}

impl PhiCheck {
    /// All three verdicts agree with the schema. Since β₂ is a nonzerodivisor
    /// modulo (2) + base, `schema_holds` and `in_two` must coincide.
    pub fn consistent(&self) -> bool {
        self.in_two && self.gamma_annihilated && self.schema_holds
    }
}

pub fn phi_consistency(candidate: &Poly, td: &TransferData) -> Result<PhiCheck, TransferError> {
    let down = &td.downstairs;
    let mut two = down.relations().to_vec();
    two.push(Poly::constant(down.vars(), 2));
    let gb_two = strong_groebner(&two, &MonomialOrder::grevlex(down.vars()))?;
    let gam = down.poly("gam")?;
    let b2 = down.poly("b2")?;
    Ok(PhiCheck {
        in_two: gb_two.is_member(candidate)?,
        gamma_annihilated: td.down_gb.is_member(&(&gam * candidate))?,
        schema_holds: gb_two.is_member(&(&b2 * candidate))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn td() -> TransferData {
        TransferData::standard().unwrap()
    }

    #[test]
    fn involutions() {
        let inv = InvolutionSpec::swap();
        let up = inv.ring().clone();
        let p = |s: &str| up.poly(s).unwrap();
        assert_eq!(mu_star(&p("x1^2*x2"), &inv).unwrap(), p("x1*x2^2"));
        assert_eq!(mu_star(&p("c2"), &inv).unwrap(), p("c2"));
        let h = InvolutionSpec::h11();
        let q = |s: &str| h.ring().poly(s).unwrap();
        assert_eq!(mu_star(&q("t*x1"), &h).unwrap(), q("-t*x2"));
        assert_eq!(mu_star(&q("t^2"), &h).unwrap(), q("t^2"));
        assert!(InvolutionSpec::new(&up, &[("x1", "x2", false)]).is_err());
        assert!(InvolutionSpec::new(&up, &[("x1", "c2", false), ("c2", "x1", false)]).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let up = classifying_ring("BGm2xPGL2").unwrap();
        let sym = symmetric_vars(up.vars()).unwrap();
        let s = |t: &str| Poly::parse(t, &sym).unwrap();
        let cases = [("x1^2", "-e2", "e1"), ("x2", "e1", "-1"), ("x1*x2", "e2", "0")];
        for (p, a, b) in cases {
            let (s0, s1) = symmetric_decompose(&up.poly(p).unwrap()).unwrap();
            assert_eq!((s0, s1), (s(a), s(b)), "{p}");
        }
        let p = up.poly("3*x1^3*x2^2 - x2^4*c2 + 7*c3*x1 + x1^5").unwrap();
        let (s0, s1) = symmetric_decompose(&p).unwrap();
        assert_eq!(symmetric_reconstruct(&s0, &s1, up.vars()).unwrap(), p);
    }

    #[test]
    fn pushforward_examples() {
        let td = td();
        let up = td.upstairs.clone();
        let down = td.downstairs.clone();
        let p = |s: &str| up.poly(s).unwrap();
        let q = |s: &str| down.poly(s).unwrap();
        assert_eq!(psi_pushforward(&Poly::one(up.vars()), &td).unwrap(), q("2"));
        assert_eq!(psi_pushforward(&p("-6*x1"), &td).unwrap(), q("-6*b1"));
        assert_eq!(psi_pushforward(&p("6*x1*x2"), &td).unwrap(), q("12*b2"));
        assert_eq!(psi_pushforward(&p("x1"), &td).unwrap(), q("b1+gam"));
    }

    #[test]
    fn push_pull_examples() {
        let td = td();
        let inv = InvolutionSpec::swap();
        for s in ["x1^2", "x1*x2", "c2*x1^3 + 5*x2", "c3*x2^2", "3*c3"] {
            assert!(
                push_pull_check(&td.upstairs.poly(s).unwrap(), &td, &inv).unwrap(),
                "{s}"
            );
        }
        let h = InvolutionSpec::h11();
        let r = h.ring().clone();
        assert_eq!(
            push_pull_formal(&r.poly("t*x1").unwrap(), &h).unwrap(),
            r.poly("t*(x1-x2)").unwrap()
        );
        assert_eq!(
            push_pull_formal(&r.poly("x1^2").unwrap(), &h).unwrap(),
            r.poly("x1^2+x2^2").unwrap()
        );
    }

    #[test]
    fn projective_pushforward() {
        let v = Vars::from_pairs(&[("xi", 1), ("a1", 1), ("a2", 2), ("a3", 3)]).unwrap();
        let p = |s: &str| Poly::parse(s, &v).unwrap();
        let p1 = p("xi^2 + a1*xi + a2");
        assert_eq!(proj_pushforward(&p("xi"), &p1).unwrap(), p("1"));
        assert!(proj_pushforward(&p("1"), &p1).unwrap().is_zero());
        let p2 = p("xi^3 + a1*xi^2 + a2*xi + a3");
        assert_eq!(proj_pushforward(&p("xi^3"), &p2).unwrap(), p("-a1"));
        assert_eq!(proj_pushforward(&p("xi^2"), &p2).unwrap(), p("1"));
        assert_eq!(proj_pushforward(&p("xi^4"), &p2).unwrap(), p("a1^2-a2"));
        assert!(proj_pushforward(&p("xi"), &p("2*xi^2+a2")).is_err());
    }

    #[test]
    fn w_expansions() {
        let v = catalog::chart_vars();
        let p = |s: &str| Poly::parse(s, &v).unwrap();
        assert_eq!(w_expand(2, 0).unwrap(), p("xi^2+4*c2+3*xi*t1+6*t1^2"));
        assert_eq!(w_expand(2, 1).unwrap(), p("xi^3+4*c2*xi+3*xi^2*t1+6*xi*t1^2"));
        assert_eq!(w_expand(1, 2).unwrap(), p("xi^4+c2*xi^2+xi^3*t1+xi^2*t1^2"));
        for r in 1..=6 {
            for i in 0..=4 {
                assert_eq!(w_expand(r, i).unwrap(), w_displayed(r, i).unwrap());
            }
        }
    }

    #[test]
    fn f_constants_g3_g5() {
        let f = derive_f_constants(3).unwrap();
        let up = classifying_ring("BGm2xPGL2").unwrap();
        assert_eq!(f.f2, up.poly("2*x1^2-4*c2").unwrap());
        assert_eq!(f.f1, up.poly("-6*x1").unwrap());
        assert_eq!(f.f2_solutions.len(), 2);
        let f = derive_f_constants(5).unwrap();
        assert_eq!(f.f2, up.poly("2*x1^2-12*c2").unwrap());
    }

    #[test]
    fn phi_candidates() {
        let td = td();
        let q = |s: &str| td.downstairs.poly(s).unwrap();
        assert!(phi_consistency(&q("2*b1"), &td).unwrap().consistent());
        assert!(phi_consistency(&q("4*b2 - 6*c2"), &td).unwrap().consistent());
        let bad = phi_consistency(&q("b1"), &td).unwrap();
        assert!(!bad.consistent());
        assert_eq!(bad.in_two, bad.schema_holds);
    }

    #[test]
    fn integer_root_search() {
        let e = [BigInt::from(-4), BigInt::from(0), BigInt::from(1)];
        assert_eq!(integer_roots(&e), vec![BigInt::from(-2), BigInt::from(2)]);
        let e = [BigInt::from(0), BigInt::from(3), BigInt::from(0)];
        assert_eq!(integer_roots(&e), vec![BigInt::from(0)]);
    }
}
