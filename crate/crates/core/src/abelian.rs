//! Integer linear algebra: Smith normal form, graded pieces as abelian
//! groups, lattice membership and solving.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::catalog::RingPresentation;
use crate::polyring::{grevlex_cmp, Monomial, Poly, PolyError, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("degree must be nonnegative, got {0}")]
    NegativeDegree(i64),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
}

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        let mut out = vec![BigInt::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let b = self.get(i, j);
                if !b.is_zero() {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let v = s * k;
                self.data[dst * self.cols + j] += v;
            }
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let v = s * k;
                self.data[i * self.cols + dst] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// `u · m · v` is diagonal with `diagonal[i] | diagonal[i+1]`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    snf_impl(m, true)
}

/// Diagonal only; skips the transform bookkeeping.
pub fn smith_invariants(m: &IntMatrix) -> Snf {
    snf_impl(m, false)
}

fn snf_impl(m: &IntMatrix, track: bool) -> Snf {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let mut u = track.then(|| IntMatrix::identity(r));
    let mut v = track.then(|| IntMatrix::identity(c));
    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero |entry|, first by row then column
        let mut best: Option<(usize, usize)> = None;
        'search: for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                    if x.is_one() || (-x).is_one() {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(t, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(t, pj);
        }
        loop {
            let p = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..r {
                let x = a.get(i, t);
                if x.is_zero() {
                    continue;
                }
                let q = -x.div_floor(&p);
                a.add_row(i, t, &q);
                if let Some(u) = u.as_mut() {
                    u.add_row(i, t, &q);
                }
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let x = a.get(t, j);
                if x.is_zero() {
                    continue;
                }
                let q = -x.div_floor(&p);
                a.add_col(j, t, &q);
                if let Some(v) = v.as_mut() {
                    v.add_col(j, t, &q);
                }
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                // move the smallest leftover in row/column t onto the pivot
                let mut bi = None;
                let mut bj = None;
                let mut small = p.abs();
                for i in t + 1..r {
                    let x = a.get(i, t).abs();
                    if !x.is_zero() && x < small {
                        small = x;
                        bi = Some(i);
                        bj = None;
                    }
                }
                for j in t + 1..c {
                    let x = a.get(t, j).abs();
                    if !x.is_zero() && x < small {
                        small = x;
                        bj = Some(j);
                        bi = None;
                    }
                }
                if let Some(i) = bi {
                    a.swap_rows(t, i);
                    if let Some(u) = u.as_mut() {
                        u.swap_rows(t, i);
                    }
                } else if let Some(j) = bj {
                    a.swap_cols(t, j);
                    if let Some(v) = v.as_mut() {
                        v.swap_cols(t, j);
                    }
                }
                continue;
            }
            // divisibility of the remaining block by the pivot
            let mut bad = None;
            'div: for i in t + 1..r {
                for j in t + 1..c {
                    if !(a.get(i, j) % &p).is_zero() {
                        bad = Some(i);
                        break 'div;
                    }
                }
            }
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    if let Some(u) = u.as_mut() {
                        u.add_row(t, i, &one);
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some(u) = u.as_mut() {
                u.negate_row(t);
            }
        }
        t += 1;
    }
    let diagonal: Vec<BigInt> = (0..r.min(c)).map(|i| a.get(i, i).clone()).collect();
    let rank = diagonal.iter().filter(|d| !d.is_zero()).count();
    Snf { diagonal, rank, u, v }
}

/// Free rank plus invariant factors `d₁ | d₂ | …`, each at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct AbGroupInvariants {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(n) => seq.serialize_element(&n)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl AbGroupInvariants {
    pub fn free(n: usize) -> Self {
        AbGroupInvariants {
            free_rank: n,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: usize, torsion: &[i64]) -> Self {
        AbGroupInvariants {
            free_rank,
            torsion: torsion.iter().map(|&t| BigInt::from(t)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        // group equal factors
        let mut i = 0;
        while i < self.torsion.len() {
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == self.torsion[i] {
                j += 1;
            }
            let n = j - i;
            if n == 1 {
                parts.push(format!("Z/{}", self.torsion[i]));
            } else {
                parts.push(format!("(Z/{})^{n}", self.torsion[i]));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// ℤ^cols modulo the row span.
pub fn cokernel(m: &IntMatrix) -> AbGroupInvariants {
    invariants_from_snf(&smith_invariants(m), m.cols)
}

fn invariants_from_snf(s: &Snf, cols: usize) -> AbGroupInvariants {
    AbGroupInvariants {
        free_rank: cols - s.rank,
        torsion: s
            .diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect(),
    }
}

type SparseRow = Vec<(usize, BigInt)>;

/// `a + k·b` on sorted sparse rows.
fn axpy(a: &SparseRow, k: &BigInt, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) => {
                if ca < cb {
                    i += 1;
                    (*ca, va.clone())
                } else if cb < ca {
                    j += 1;
                    (*cb, k * vb)
                } else {
                    i += 1;
                    j += 1;
                    (*ca, va + k * vb)
                }
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, va.clone())
            }
            (None, Some((cb, vb))) => {
                j += 1;
                (*cb, k * vb)
            }
            (None, None) => unreachable!(),
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

fn scale_row(a: &SparseRow, k: &BigInt) -> SparseRow {
    a.iter().map(|(c, v)| (*c, v * k)).collect()
}

/// Row-echelon basis of a sublattice of ℤ^n, built incrementally with
/// unimodular two-row combinations.
#[derive(Debug, Clone)]
pub struct Lattice {
    ncols: usize,
    /// keyed by pivot column
    rows: BTreeMap<usize, SparseRow>,
}

impl Lattice {
    pub fn new(ncols: usize) -> Self {
        Lattice {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert_dense(&mut self, v: &[BigInt]) {
        self.insert(dense_to_sparse(v));
    }

    fn insert(&mut self, mut v: SparseRow) {
        while let Some((c, p)) = v.first().cloned() {
            let Some(r) = self.rows.get_mut(&c) else {
                if p.is_negative() {
                    v = scale_row(&v, &BigInt::from(-1));
                }
                self.rows.insert(c, v);
                return;
            };
            let a = r[0].1.clone();
            if (&p % &a).is_zero() {
                v = axpy(&v, &-(&p / &a), r);
                continue;
            }
            let eg = a.extended_gcd(&p);
            let d = eg.gcd;
            let new_r = axpy(&scale_row(r, &eg.x), &eg.y, &v);
            let new_v = axpy(&scale_row(&v, &(&a / &d)), &-(&p / &d), r);
            *r = new_r;
            v = new_v;
        }
    }

    /// Remainder after echelon reduction; zero iff `v` lies in the lattice.
    pub fn reduce_dense(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut s = dense_to_sparse(v);
        let mut kept: SparseRow = Vec::new();
        while let Some((c, p)) = s.first().cloned() {
            match self.rows.get(&c) {
                Some(r) if (&p % &r[0].1).is_zero() => {
                    s = axpy(&s, &-(&p / &r[0].1), r);
                }
                _ => {
                    kept.push(s.remove(0));
                }
            }
        }
        let mut out = vec![BigInt::zero(); self.ncols];
        for (c, x) in kept {
            out[c] = x;
        }
        out
    }

    pub fn contains_dense(&self, v: &[BigInt]) -> bool {
        self.reduce_dense(v).iter().all(Zero::is_zero)
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows.len(), self.ncols);
        for (i, r) in self.rows.values().enumerate() {
            for (c, x) in r {
                m.set(i, *c, x.clone());
            }
        }
        m
    }
}

fn dense_to_sparse(v: &[BigInt]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Monomials of weighted degree `d`, in descending weighted grevlex order.
pub fn monomials_of_degree(vars: &Arc<Vars>, d: u32) -> Vec<Monomial> {
    let w = vars.weights();
    let mut out = Vec::new();
    let mut e = vec![0u32; w.len()];
    fn rec(i: usize, left: u32, w: &[u32], e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::from_exps(e.clone()));
            }
            return;
        }
        for k in 0..=left / w[i] {
            e[i] = k;
            rec(i + 1, left - k * w[i], w, e, out);
        }
        e[i] = 0;
    }
    rec(0, d, &w, &mut e, &mut out);
    out.sort_by(|a, b| grevlex_cmp(&w, b, a));
    out
}

/// Degree-`d` component of ℤ[vars]/(relations), with the data needed for
/// membership queries.
///
/// Monomial·relation rows are first collapsed by eliminating unit pivots
/// (each such pivot identifies one monomial with a combination of the
/// others); the Smith form is then taken of the remaining core.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: u32,
    vars: Arc<Vars>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// (column, row with a ±1 entry in that column), in elimination order
    eliminated: Vec<(usize, BTreeMap<usize, BigInt>)>,
    core_cols: Vec<usize>,
    snf: Snf,
}

impl GradedPiece {
    pub fn new(vars: &Arc<Vars>, relations: &[Poly], d: u32) -> Result<Self, AbelianError> {
        Self::build(vars, relations, d, true)
    }

    /// Invariants only; membership queries are unavailable.
    pub fn invariants_only(vars: &Arc<Vars>, relations: &[Poly], d: u32) -> Result<AbGroupInvariants, AbelianError> {
        Ok(Self::build(vars, relations, d, false)?.invariants())
    }

    fn build(vars: &Arc<Vars>, relations: &[Poly], d: u32, track: bool) -> Result<Self, AbelianError> {
        let monomials = monomials_of_degree(vars, d);
        let n = monomials.len();
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows: Vec<BTreeMap<usize, BigInt>> = Vec::new();
        for r in relations {
            if !r.vars().as_ref().eq(vars.as_ref()) {
                return Err(PolyError::VariableSetMismatch.into());
            }
            if r.is_zero() {
                continue;
            }
            let e = r.degree()?;
            if e > d {
                continue;
            }
            for m in monomials_of_degree(vars, d - e) {
                rows.push(r.terms().map(|(t, c)| (index[&t.mul(&m)], c.clone())).collect());
            }
        }
        let (eliminated, core) = eliminate_unit_pivots(rows, n);
        let dropped: HashSet<usize> = eliminated.iter().map(|(c, _)| *c).collect();
        let core_cols: Vec<usize> = (0..n).filter(|c| !dropped.contains(c)).collect();
        let pos: HashMap<usize, usize> = core_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut mat = IntMatrix::zeros(core.len(), core_cols.len());
        for (i, row) in core.iter().enumerate() {
            for (c, x) in row {
                mat.set(i, pos[c], x.clone());
            }
        }
        let snf = if track {
            smith_normal_form(&mat)
        } else {
            smith_invariants(&mat)
        };
        Ok(GradedPiece {
            degree: d,
            vars: Arc::clone(vars),
            monomials,
            index,
            eliminated,
            core_cols,
            snf,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn invariants(&self) -> AbGroupInvariants {
        invariants_from_snf(&self.snf, self.core_cols.len())
    }

    pub fn coordinates(&self, p: &Poly) -> Result<Vec<BigInt>, AbelianError> {
        if !p.vars().as_ref().eq(self.vars.as_ref()) {
            return Err(PolyError::VariableSetMismatch.into());
        }
        let mut v = vec![BigInt::zero(); self.monomials.len()];
        if p.is_zero() {
            return Ok(v);
        }
        let found = p.degree()?;
        if found != self.degree {
            return Err(AbelianError::DegreeMismatch {
                expected: self.degree,
                found,
            });
        }
        for (m, c) in p.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    /// Membership read off the Smith form: after replaying the unit-pivot
    /// eliminations, with `U·E·V = D` a row vector `x` lies in the row span
    /// of the core `E` iff `(x·V)ᵢ` is divisible by `dᵢ` for `i < rank` and
    /// vanishes beyond.
    pub fn contains(&self, p: &Poly) -> Result<bool, AbelianError> {
        let mut x: BTreeMap<usize, BigInt> = self
            .coordinates(p)?
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (c, row) in &self.eliminated {
            if let Some(xc) = x.get(c).cloned() {
                // row[c] is ±1
                let k = -(xc * &row[c]);
                sparse_axpy(&mut x, &k, row);
            }
        }
        let core: Vec<BigInt> = self
            .core_cols
            .iter()
            .map(|c| x.get(c).cloned().unwrap_or_default())
            .collect();
        let v = self.snf.v.as_ref().expect("graded piece built without transforms");
        let w = v.left_apply(&core);
        Ok(w.iter().enumerate().all(|(i, wi)| {
            if i < self.snf.rank {
                (wi % &self.snf.diagonal[i]).is_zero()
            } else {
                wi.is_zero()
            }
        }))
    }
}

/// `a += k·b`
fn sparse_axpy(a: &mut BTreeMap<usize, BigInt>, k: &BigInt, b: &BTreeMap<usize, BigInt>) {
    for (c, x) in b {
        let e = a.entry(*c).or_default();
        *e += k * x;
        if e.is_zero() {
            a.remove(c);
        }
    }
}

type PivotRecord = (usize, BTreeMap<usize, BigInt>);

/// Repeatedly picks a ±1 entry (fewest expected fill-ins first, ties to the
/// lowest row then column) and clears its column from every other row.
/// Returns the pivots used and the leftover nonzero rows.
fn eliminate_unit_pivots(
    rows: Vec<BTreeMap<usize, BigInt>>,
    ncols: usize,
) -> (Vec<PivotRecord>, Vec<BTreeMap<usize, BigInt>>) {
    let mut rows: Vec<Option<BTreeMap<usize, BigInt>>> = rows.into_iter().map(Some).collect();
    let mut by_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for c in r.as_ref().unwrap().keys() {
            by_col[*c].insert(i);
        }
    }
    let mut eliminated = Vec::new();
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in rows.iter().enumerate() {
            let Some(r) = r else { continue };
            for (c, x) in r {
                if !(x.is_one() || (-x).is_one()) {
                    continue;
                }
                let cost = (r.len() - 1) * (by_col[*c].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, i, *c));
                }
            }
        }
        let Some((_, pi, pc)) = best else { break };
        let pivot = rows[pi].take().unwrap();
        for c in pivot.keys() {
            by_col[*c].remove(&pi);
        }
        let sign = pivot[&pc].clone();
        let targets: Vec<usize> = by_col[pc].iter().copied().collect();
        for i in targets {
            let row = rows[i].as_mut().unwrap();
            let k = -(&row[&pc] * &sign);
            let before: Vec<usize> = row.keys().copied().collect();
            sparse_axpy(row, &k, &pivot);
            for c in before {
                if !row.contains_key(&c) {
                    by_col[c].remove(&i);
                }
            }
            for c in row.keys() {
                by_col[*c].insert(i);
            }
            if row.is_empty() {
                rows[i] = None;
            }
        }
        eliminated.push((pc, pivot));
    }
    let core = rows.into_iter().flatten().collect();
    (eliminated, core)
}

pub fn graded_piece(ring: &RingPresentation, d: i64) -> Result<AbGroupInvariants, AbelianError> {
    let d = u32::try_from(d).map_err(|_| AbelianError::NegativeDegree(d))?;
    GradedPiece::invariants_only(ring.vars(), ring.relations(), d)
}

pub fn member_in_degree(p: &Poly, ring: &RingPresentation) -> Result<bool, AbelianError> {
    if p.is_zero() {
        return Ok(true);
    }
    let d = p.degree()?;
    GradedPiece::new(ring.vars(), ring.relations(), d)?.contains(p)
}

/// All integer solutions `x` of `Σ xᵢ·genᵢ = target`: `particular` plus any
/// integer combination of `kernel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSolution {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

impl LatticeSolution {
    /// Whether `coeffs` is one of the solutions.
    pub fn contains(&self, coeffs: &[BigInt]) -> bool {
        if coeffs.len() != self.particular.len() {
            return false;
        }
        let diff: Vec<BigInt> = coeffs.iter().zip(&self.particular).map(|(a, b)| a - b).collect();
        let mut lat = Lattice::new(diff.len());
        for k in &self.kernel {
            lat.insert_dense(k);
        }
        lat.contains_dense(&diff)
    }

    pub fn is_unique(&self) -> bool {
        self.kernel.is_empty()
    }
}

/// Solves `Σ xᵢ·generators[i] = target` over ℤ via the Smith form of the
/// coefficient matrix. `Ok(None)` means no integer solution exists.
pub fn lattice_solve(target: &Poly, generators: &[Poly]) -> Result<Option<LatticeSolution>, AbelianError> {
    let vars = target.vars();
    let mut degree = if target.is_zero() { None } else { Some(target.degree()?) };
    for g in generators {
        if !g.vars().as_ref().eq(vars.as_ref()) {
            return Err(PolyError::VariableSetMismatch.into());
        }
        if g.is_zero() {
            continue;
        }
        let e = g.degree()?;
        match degree {
            None => degree = Some(e),
            Some(d) if d != e => return Err(AbelianError::DegreeMismatch { expected: d, found: e }),
            _ => {}
        }
    }
    let k = generators.len();
    let Some(d) = degree else {
        // everything is zero
        let kernel = (0..k)
            .map(|i| (0..k).map(|j| BigInt::from(u8::from(i == j))).collect())
            .collect();
        return Ok(Some(LatticeSolution {
            particular: vec![BigInt::zero(); k],
            kernel,
        }));
    };
    let monomials = monomials_of_degree(vars, d);
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let coords = |p: &Poly| {
        let mut v = vec![BigInt::zero(); monomials.len()];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    let mut g = IntMatrix::zeros(k, monomials.len());
    for (i, p) in generators.iter().enumerate() {
        for (j, x) in coords(p).into_iter().enumerate() {
            g.set(i, j, x);
        }
    }
    let snf = smith_normal_form(&g);
    let (u, v) = (snf.u.as_ref().unwrap(), snf.v.as_ref().unwrap());
    let w = v.left_apply(&coords(target));
    let mut y = vec![BigInt::zero(); k];
    for (i, wi) in w.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = wi.div_rem(&snf.diagonal[i]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !wi.is_zero() {
            return Ok(None);
        }
    }
    let particular = u.left_apply(&y);
    let kernel = (snf.rank..k).map(|i| u.row(i).to_vec()).collect();
    Ok(Some(LatticeSolution { particular, kernel }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{classifying_ring, presentation_d, presentation_rh};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_round_trip(m: &IntMatrix) -> Snf {
        let s = smith_normal_form(m);
        let (u, v) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap());
        let d = u.mul(m).mul(v);
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i != j {
                    assert!(d.get(i, j).is_zero(), "off-diagonal entry in {d:?}");
                } else {
                    assert_eq!(d.get(i, i), &s.diagonal[i]);
                }
            }
        }
        assert!(u.determinant().abs().is_one());
        assert!(v.determinant().abs().is_one());
        for w in s.diagonal.windows(2) {
            if !w[1].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
        s
    }

    #[test]
    fn snf_examples() {
        let s = check_round_trip(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal, ints(&[1, 6]));
        let s = check_round_trip(&IntMatrix::from_rows(&[vec![2, -1, -1], vec![0, 2, 0], vec![0, 0, 2]]));
        assert_eq!(s.diagonal, ints(&[1, 2, 4]));
        let z = IntMatrix::zeros(2, 3);
        let s = check_round_trip(&z);
        assert_eq!(s.rank, 0);
        assert_eq!(cokernel(&z), AbGroupInvariants::free(3));
        let s = check_round_trip(&IntMatrix::from_rows(&[
            vec![6, 4, 10],
            vec![4, 6, 0],
            vec![2, 2, 2],
            vec![1, 0, 7],
        ]));
        assert_eq!(s.rank, 3);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(
            IntMatrix::from_rows(&[vec![2, -1, -1], vec![0, 2, 0], vec![0, 0, 2]]).determinant(),
            BigInt::from(8)
        );
        assert_eq!(
            IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).determinant(),
            BigInt::from(-1)
        );
        assert_eq!(
            IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).determinant(),
            BigInt::zero()
        );
    }

    #[test]
    fn graded_pieces_low_degree() {
        let d = presentation_d(3).unwrap();
        assert_eq!(graded_piece(&d, 0).unwrap(), AbGroupInvariants::free(1));
        assert_eq!(graded_piece(&d, 1).unwrap(), AbGroupInvariants::new(0, &[2, 2]));
        let rh = presentation_rh(3).unwrap();
        assert_eq!(graded_piece(&rh, 1).unwrap(), AbGroupInvariants::new(0, &[2, 4]));
        assert_eq!(graded_piece(&rh, -1).unwrap_err(), AbelianError::NegativeDegree(-1));
    }

    #[test]
    fn membership_examples() {
        let bg = classifying_ring("BG").unwrap();
        let p = |s: &str| bg.poly(s).unwrap();
        assert!(member_in_degree(&p("2*gam^2"), &bg).unwrap());
        assert!(!member_in_degree(&p("gam^2"), &bg).unwrap());
        let d = presentation_d(3).unwrap();
        assert!(member_in_degree(&d.poly("14*b1").unwrap(), &d).unwrap());
        assert!(!member_in_degree(&d.poly("b1").unwrap(), &d).unwrap());
        assert!(member_in_degree(&d.poly("b1+c2").unwrap(), &d).is_err());
    }

    #[test]
    fn lattice_solve_examples() {
        let d = presentation_d(3).unwrap();
        let p = |s: &str| d.poly(s).unwrap();
        let sol = lattice_solve(&p("2*b1"), &[p("-4*b1"), p("-6*b1")]).unwrap().unwrap();
        assert!(sol.contains(&ints(&[-2, 1])));
        assert!(sol.contains(&ints(&[1, -1])));
        assert!(!sol.contains(&ints(&[1, 1])));
        assert_eq!(sol.kernel.len(), 1);
        let up = classifying_ring("BGm2xPGL2").unwrap();
        let q = |s: &str| up.poly(s).unwrap();
        assert!(lattice_solve(&q("x1*x2"), &[q("x1^2"), q("x2^2")]).unwrap().is_none());
        let zero = lattice_solve(&Poly::zero(up.vars()), &[q("x1^2"), q("x2^2")])
            .unwrap()
            .unwrap();
        assert_eq!(zero.particular, ints(&[0, 0]));
        assert!(lattice_solve(&q("x1"), &[q("x1^2")]).is_err());
    }

    #[test]
    fn h11_classes_span_a_summand() {
        let v = Vars::from_pairs(&[("t", 1), ("x1", 1), ("x2", 1)]).unwrap();
        let mons = monomials_of_degree(&v, 2);
        assert_eq!(mons.len(), 6);
        let classes = ["t*(x1-x2)", "x1^2+x2^2", "t^2", "x1*x2"];
        let rows: Vec<Vec<BigInt>> = classes
            .iter()
            .map(|c| {
                let p = Poly::parse(c, &v).unwrap();
                mons.iter().map(|m| p.coeff(m)).collect()
            })
            .collect();
        let s = smith_normal_form(&IntMatrix::from_rows(&rows));
        assert_eq!(s.diagonal, ints(&[1, 1, 1, 1]));
    }
}
