//! Ring presentations and pushforward values, parameterized by odd genus.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::polyring::{Poly, PolyError, VarSpec, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("genus must be odd and at least 3, got {0}")]
    InvalidGenus(u32),
    #[error("invalid chart exponent triple {0:?}: entries must sum to 2")]
    InvalidTriple([u32; 3]),
    #[error("m must be at least 1, got {0}")]
    InvalidM(u32),
    #[error("relation `{0}` is not homogeneous")]
    NonHomogeneous(String),
    #[error("relation is not monic of degree {expected} in xi: {detail}")]
    NotMonic { expected: u32, detail: String },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("no entry named `{0}`")]
    UnknownEntry(String),
    #[error("perturbation refers to bullet {0}; bullets are numbered 1 to 8")]
    InvalidBullet(usize),
}

/// Generators with degrees plus homogeneous integral relations.
#[derive(Debug, Clone)]
pub struct RingPresentation {
    id: String,
    vars: Arc<Vars>,
    relations: Vec<Poly>,
    provenance: String,
}

impl RingPresentation {
    pub fn new(
        id: impl Into<String>,
        vars: &Arc<Vars>,
        relations: Vec<Poly>,
        provenance: impl Into<String>,
    ) -> Result<Self, CatalogError> {
        for r in &relations {
            if !r.vars().as_ref().eq(vars.as_ref()) {
                return Err(PolyError::VariableSetMismatch.into());
            }
            if !r.is_homogeneous() {
                return Err(CatalogError::NonHomogeneous(r.to_string()));
            }
        }
        Ok(RingPresentation {
            id: id.into(),
            vars: Arc::clone(vars),
            relations,
            provenance: provenance.into(),
        })
    }

    fn from_text(id: &str, vars: &[(&str, u32)], relations: &[&str], provenance: &str) -> Result<Self, CatalogError> {
        let v = Vars::from_pairs(vars)?;
        let rels = relations
            .iter()
            .map(|r| Poly::parse(r, &v))
            .collect::<Result<Vec<_>, _>>()?;
        RingPresentation::new(id, &v, rels, provenance)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn vars(&self) -> &Arc<Vars> {
        &self.vars
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn poly(&self, text: &str) -> Result<Poly, PolyError> {
        Poly::parse(text, &self.vars)
    }

    /// Same generators, different relation list.
    pub fn with_relations(&self, id: impl Into<String>, relations: Vec<Poly>) -> Result<Self, CatalogError> {
        RingPresentation::new(id, &self.vars, relations, self.provenance.clone())
    }

    /// Adds generators and relations; relations are written over the
    /// enlarged variable set.
    pub fn extend(
        &self,
        id: impl Into<String>,
        new_vars: &[(&str, u32)],
        new_relations: &[&str],
    ) -> Result<Self, CatalogError> {
        let mut specs = self.vars.specs().to_vec();
        specs.extend(new_vars.iter().map(|(n, d)| VarSpec::new(*n, *d)));
        let v = Vars::new(specs)?;
        let mut rels = self
            .relations
            .iter()
            .map(|r| r.rename_into(&v))
            .collect::<Result<Vec<_>, _>>()?;
        for r in new_relations {
            rels.push(Poly::parse(r, &v)?);
        }
        RingPresentation::new(id, &v, rels, self.provenance.clone())
    }

    /// Text form: `ring`, `var` and `rel` lines.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}", self.provenance);
        let _ = writeln!(s, "ring {}", self.id);
        for spec in self.vars.specs() {
            let _ = writeln!(s, "var {} {}", spec.name, spec.degree);
        }
        for r in &self.relations {
            let _ = writeln!(s, "rel {r}");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut id = None;
        let mut specs = Vec::new();
        let mut rels: Vec<(usize, String)> = Vec::new();
        let mut provenance = String::from("user file");
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let fail = |msg: &str| CatalogError::Format {
                line: line_no,
                msg: msg.to_string(),
            };
            let line = match raw.find('#') {
                Some(k) => {
                    if n == 0 && k == 0 {
                        provenance = raw[1..].trim().to_string();
                    }
                    &raw[..k]
                }
                None => raw,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match kw {
                "ring" => {
                    if rest.is_empty() {
                        return Err(fail("missing ring id"));
                    }
                    if id.is_some() {
                        return Err(fail("duplicate ring line"));
                    }
                    id = Some(rest.to_string());
                }
                "var" => {
                    if !rels.is_empty() {
                        return Err(fail("var after rel"));
                    }
                    let mut it = rest.split_whitespace();
                    let (Some(name), Some(deg), None) = (it.next(), it.next(), it.next()) else {
                        return Err(fail("expected `var <name> <degree>`"));
                    };
                    let deg: u32 = deg.parse().map_err(|_| fail("degree must be a positive integer"))?;
                    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                        || !name.starts_with(|c: char| c.is_ascii_alphabetic())
                    {
                        return Err(fail("variable names are ASCII identifiers"));
                    }
                    specs.push(VarSpec::new(name, deg));
                }
                "rel" => {
                    if rest.is_empty() {
                        return Err(fail("empty relation"));
                    }
                    rels.push((line_no, rest.to_string()));
                }
                other => return Err(fail(&format!("unknown keyword `{other}`"))),
            }
        }
        let id = id.ok_or(CatalogError::Format {
            line: 0,
            msg: "missing `ring` line".into(),
        })?;
        let vars = Vars::new(specs)?;
        let mut relations = Vec::new();
        for (line, r) in rels {
            let p = Poly::parse(&r, &vars).map_err(|e| CatalogError::Format {
                line,
                msg: e.to_string(),
            })?;
            if !p.is_homogeneous() {
                return Err(CatalogError::Format {
                    line,
                    msg: format!("relation `{r}` is not homogeneous"),
                });
            }
            relations.push(p);
        }
        RingPresentation::new(id, &vars, relations, provenance)
    }
}

/// `n / d`, asserting exactness.
pub fn exact_div(n: &BigInt, d: u32) -> BigInt {
    let (q, r) = n.div_rem(&BigInt::from(d));
    assert!(r.is_zero(), "{n} is not divisible by {d}");
    q
}

pub fn check_genus(g: u32) -> Result<(), CatalogError> {
    if g >= 3 && g % 2 == 1 {
        Ok(())
    } else {
        Err(CatalogError::InvalidGenus(g))
    }
}

/// The genus-dependent rational coefficients, evaluated exactly.
#[derive(Debug, Clone)]
pub struct GenusCoefficients {
    pub g: BigInt,
    /// (g+1)/2
    pub h: BigInt,
    /// (g-1)/2
    pub k: BigInt,
    /// g² - 1
    pub g2m1: BigInt,
    /// g² + 1
    pub g2p1: BigInt,
    /// (g² - 1)/2
    pub g2m1_half: BigInt,
    /// (g² - 1)/4
    pub g2m1_quarter: BigInt,
    /// (g² + 1)/2
    pub g2p1_half: BigInt,
    /// (g+1)²/2
    pub gp1_sq_half: BigInt,
    /// (g² - 1)²/8
    pub g2m1_sq_8: BigInt,
    /// (g² - 1)²/16
    pub g2m1_sq_16: BigInt,
    /// g(g² - 1)/4
    pub g_g2m1_quarter: BigInt,
}

impl GenusCoefficients {
    pub fn new(g: u32) -> Result<Self, CatalogError> {
        check_genus(g)?;
        let gb = BigInt::from(g);
        let g2m1 = &gb * &gb - 1;
        let g2p1 = &gb * &gb + 1;
        let gp1 = &gb + 1;
        Ok(GenusCoefficients {
            h: exact_div(&gp1, 2),
            k: exact_div(&(&gb - 1), 2),
            g2m1_half: exact_div(&g2m1, 2),
            g2m1_quarter: exact_div(&g2m1, 4),
            g2p1_half: exact_div(&g2p1, 2),
            gp1_sq_half: exact_div(&(&gp1 * &gp1), 2),
            g2m1_sq_8: exact_div(&(&g2m1 * &g2m1), 8),
            g2m1_sq_16: exact_div(&(&g2m1 * &g2m1), 16),
            g_g2m1_quarter: exact_div(&(&gb * &g2m1), 4),
            g: gb,
            g2m1,
            g2p1,
        })
    }
}

/// Builds Σ cᵢ·mᵢ from monomial strings.
pub(crate) fn combo(vars: &Arc<Vars>, terms: &[(BigInt, &str)]) -> Poly {
    let mut acc = Poly::zero(vars);
    for (c, m) in terms {
        let p = Poly::parse(m, vars).unwrap_or_else(|e| panic!("catalog monomial `{m}`: {e}"));
        acc = &acc + &p.scale(c);
    }
    acc
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

const D_VARS: [(&str, u32); 5] = [("b1", 1), ("b2", 2), ("gam", 1), ("c2", 2), ("c3", 3)];
const UP_VARS: [(&str, u32); 4] = [("x1", 1), ("x2", 1), ("c2", 2), ("c3", 3)];
const CHART_VARS: [(&str, u32); 5] = [("xi", 1), ("t1", 1), ("t2", 1), ("t3", 1), ("c2", 2)];

pub const RING_NAMES: [&str; 10] = [
    "BPGL2",
    "BG",
    "BGxPGL2",
    "BGm2xPGL2",
    "Bmu2",
    "BGmRtimesMu2",
    "PGL2_P1",
    "SmodGm3",
    "BGmN(n)",
    "BGL2",
];

pub fn classifying_ring(name: &str) -> Result<RingPresentation, CatalogError> {
    let r = match name {
        "BPGL2" => RingPresentation::from_text("BPGL2", &[("c2", 2), ("c3", 3)], &["2*c3"], "CH*(BPGL2)"),
        "BG" => RingPresentation::from_text(
            "BG",
            &[("b1", 1), ("b2", 2), ("gam", 1)],
            &["2*gam", "gam*b1+gam^2"],
            "CH*(BG), G = (Gm x Gm) semidirect mu2",
        ),
        "BGxPGL2" => RingPresentation::from_text(
            "BGxPGL2",
            &D_VARS,
            &["2*gam", "gam*b1+gam^2", "2*c3"],
            "CH*(B(G x PGL2))",
        ),
        "BGm2xPGL2" => RingPresentation::from_text("BGm2xPGL2", &UP_VARS, &["2*c3"], "CH*(B(Gm^2 x PGL2))"),
        "Bmu2" => RingPresentation::from_text("Bmu2", &[("gam", 1)], &["2*gam"], "CH*(Bmu2)"),
        "BGmRtimesMu2" => RingPresentation::from_text(
            "BGmRtimesMu2",
            &[("c2", 2), ("gam", 1)],
            &["2*gam"],
            "CH*(B(Gm semidirect mu2))",
        ),
        "PGL2_P1" => RingPresentation::from_text(
            "PGL2_P1",
            &[("tau", 1), ("c2", 2), ("c3", 3)],
            &["c3", "tau^2+c2"],
            "CH*_PGL2(P1)",
        ),
        "SmodGm3" => RingPresentation::from_text(
            "SmodGm3",
            &[("t1", 1), ("t2", 1), ("t3", 1)],
            &["t1+t2+t3", "2*t1*t2*t3"],
            "CH*([S/Gm^3])",
        ),
        "BGL2" => RingPresentation::from_text("BGL2", &[("b1", 1), ("b2", 2)], &[], "CH*(BGL2)"),
        other => {
            let n = other
                .strip_prefix("BGmN(")
                .and_then(|s| s.strip_suffix(')'))
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| CatalogError::UnknownRing(other.to_string()))?;
            let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            let pairs: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 1)).collect();
            RingPresentation::from_text(other, &pairs, &[], "CH*(BGm^n)")
        }
    };
    r
}

/// Variable set shared by every chart ring and by the W class.
pub fn chart_vars() -> Arc<Vars> {
    Vars::from_pairs(&CHART_VARS).expect("static variable list")
}

/// The chart relation over one stratum, plus an optional caller-supplied
/// projective-bundle relation that must be monic of degree `2m+1` in `xi`.
pub fn chart_ring(m: u32, i: [u32; 3], bundle_relation: Option<&str>) -> Result<RingPresentation, CatalogError> {
    if m < 1 {
        return Err(CatalogError::InvalidM(m));
    }
    if i.iter().sum::<u32>() != 2 {
        return Err(CatalogError::InvalidTriple(i));
    }
    let v = chart_vars();
    let mut rels = vec![
        Poly::parse("t1+t2+t3", &v)?,
        Poly::parse("2*t1*t2*t3", &v)?,
        Poly::parse("c2-(t1*t2+t1*t3+t2*t3)", &v)?,
    ];
    let chart = combo(
        &v,
        &[
            (BigInt::from(i[0]), "t1"),
            (BigInt::from(i[1]), "t2"),
            (BigInt::from(i[2]), "t3"),
        ],
    );
    rels.push(chart);
    if let Some(text) = bundle_relation {
        let p = Poly::parse(text, &v)?;
        check_monic_in_xi(&p, 2 * m + 1)?;
        rels.push(p);
    }
    RingPresentation::new(
        format!("chart(m={m};{},{},{})", i[0], i[1], i[2]),
        &v,
        rels,
        "CH* of P(V_m) over the stratum S_i",
    )
}

pub(crate) fn check_monic_in_xi(p: &Poly, n: u32) -> Result<(), CatalogError> {
    let xi = p
        .vars()
        .index_of("xi")
        .ok_or_else(|| PolyError::UnknownVariable("xi".into()))?;
    let top = p.degree_in(xi);
    let fail = |detail: String| CatalogError::NotMonic { expected: n, detail };
    if top != n {
        return Err(fail(format!("xi-degree is {top}")));
    }
    let lead: Vec<_> = p.terms().filter(|(m, _)| m.exps()[xi] == n).collect();
    let ok = lead.len() == 1 && lead[0].1 == &BigInt::from(1) && lead[0].0.exps().iter().sum::<u32>() == n;
    if !ok {
        return Err(fail("leading xi-coefficient is not 1".into()));
    }
    if !p.is_homogeneous() {
        return Err(CatalogError::NonHomogeneous(p.to_string()));
    }
    Ok(())
}

/// Whether a value of `m` lies in the range the source formula states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WProvenance {
    Stated,
    /// m = 1: used downstream but outside the stated m ≥ 2 range.
    Extension,
}

pub fn w_provenance(m: u32) -> WProvenance {
    if m >= 2 {
        WProvenance::Stated
    } else {
        WProvenance::Extension
    }
}

/// ξ² + m²c₂ + (2m−1)ξt₁ + m(2m−1)t₁² over [`chart_vars`].
pub fn w_class(m: u32) -> Result<Poly, CatalogError> {
    if m < 1 {
        return Err(CatalogError::InvalidM(m));
    }
    let m = i64::from(m);
    Ok(combo(
        &chart_vars(),
        &[
            (int(1), "xi^2"),
            (int(m * m), "c2"),
            (int(2 * m - 1), "xi*t1"),
            (int(m * (2 * m - 1)), "t1^2"),
        ],
    ))
}

/// 2c₃, 2γ, γβ₁+γ².
pub fn base_relations() -> Vec<Poly> {
    classifying_ring("BGxPGL2").expect("static ring").relations().to_vec()
}

/// The eight bullets, in order, over the B(G×PGL₂) variables.
pub fn theorem_bullets(g: u32) -> Result<Vec<Poly>, CatalogError> {
    let k = GenusCoefficients::new(g)?;
    let v = classifying_ring("BGxPGL2")?.vars().clone();
    let h2 = &k.h * &k.h;
    let hk2 = &h2 * &k.k * &k.k;
    Ok(vec![
        combo(&v, &[(int(2), "b1")]),
        combo(&v, &[(int(4), "b2"), (k.g2m1.clone(), "c2")]),
        combo(
            &v,
            &[
                (int(1), "b1^4"),
                (int(1), "b1^3*gam"),
                (int(2), "b2^2"),
                (int(1), "b1^2*c2"),
                (int(1), "b1*gam*c2"),
                (-&k.g2p1, "b2*c2"),
                (int(1), "c3*b1"),
                (int(1), "c3*gam"),
                (k.g2m1_sq_8.clone(), "c2^2"),
            ],
        ),
        combo(
            &v,
            &[
                (int(1), "b1^3*b2"),
                (int(1), "b1^2*b2*gam"),
                (int(1), "b1*b2^2"),
                (int(-1), "b2^2*gam"),
                (int(1), "b1*b2*c2"),
                (int(1), "b2*gam*c2"),
            ],
        ),
        combo(&v, &[(int(2), "b2"), (-&k.gp1_sq_half, "c2")]),
        combo(&v, &[(-&k.g, "b2"), (k.h.clone(), "b1^2"), (&k.g * &h2, "c2")]),
        combo(&v, &[(int(1), "b1*b2"), (h2.clone(), "c3")]),
        combo(
            &v,
            &[
                (int(1), "b2^2"),
                (k.g2m1_half.clone(), "b2*c2"),
                (hk2, "c2^2"),
                (k.h.clone(), "b1*c3"),
            ],
        ),
    ])
}

/// A single-coefficient change to one theorem bullet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    /// 1-based bullet index.
    pub bullet: usize,
    pub monomial: String,
    pub delta: i64,
}

impl Perturbation {
    pub fn new(bullet: usize, monomial: &str, delta: i64) -> Self {
        Perturbation {
            bullet,
            monomial: monomial.to_string(),
            delta,
        }
    }

    pub fn apply(&self, bullets: &mut [Poly]) -> Result<(), CatalogError> {
        let slot = self
            .bullet
            .checked_sub(1)
            .and_then(|i| bullets.get_mut(i))
            .ok_or(CatalogError::InvalidBullet(self.bullet))?;
        let add = Poly::parse(&self.monomial, slot.vars())?.scale(&BigInt::from(self.delta));
        let next = &*slot + &add;
        if !next.is_homogeneous() {
            return Err(CatalogError::NonHomogeneous(next.to_string()));
        }
        *slot = next;
        Ok(())
    }
}

/// Base relations followed by the eight bullets.
pub fn presentation_d(g: u32) -> Result<RingPresentation, CatalogError> {
    presentation_d_perturbed(g, None)
}

pub fn presentation_d_perturbed(g: u32, perturbation: Option<&Perturbation>) -> Result<RingPresentation, CatalogError> {
    let base = classifying_ring("BGxPGL2")?;
    let mut bullets = theorem_bullets(g)?;
    if let Some(p) = perturbation {
        p.apply(&mut bullets)?;
    }
    let mut rels = base.relations().to_vec();
    rels.extend(bullets);
    let id = match perturbation {
        None => format!("D(g={g})"),
        Some(p) => format!("D(g={g};bullet{}{:+}*{})", p.bullet, p.delta, p.monomial),
    };
    Ok(RingPresentation {
        id,
        vars: Arc::clone(base.vars()),
        relations: rels,
        provenance: "CH*(D_{g+1,g+1}/mu2)".into(),
    })
}

/// The D presentation plus a degree-one generator `t` with 2t = β₁ + γ.
pub fn presentation_rh(g: u32) -> Result<RingPresentation, CatalogError> {
    let d = presentation_d(g)?;
    let mut r = d.extend(format!("RH(g={g})"), &[("t", 1)], &["2*t-b1-gam"])?;
    r.provenance = "CH*(RH_g^{(g+1)/2})".into();
    Ok(r)
}

#[derive(Debug, Clone)]
pub struct PushforwardTable {
    pub genus: u32,
    pub downstairs: RingPresentation,
    pub upstairs: RingPresentation,
    pub classes: BTreeMap<String, Poly>,
    pub upstairs_constants: BTreeMap<String, Poly>,
}

pub const S_NAMES: [&str; 6] = ["S1_1", "S1_tau", "S2_xi2sq", "S1_xi", "S1_tauxi", "S2_xi2sqxi"];
pub const M_NAMES: [&str; 5] = ["M1_1", "M1_tau", "M2_1", "M2_xi2", "M2_xi2sq"];

/// Pairs (downstairs class, upstairs constant whose ψ-pushforward it is).
pub const S1_SOURCES: [(&str, &str); 4] = [
    ("S1_1", "F1_1"),
    ("S1_tau", "F1_tau"),
    ("S1_xi", "F1_xi"),
    ("S1_tauxi", "F1_tauxi"),
];

impl PushforwardTable {
    pub fn class(&self, name: &str) -> Result<&Poly, CatalogError> {
        self.classes
            .get(name)
            .ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
    }

    pub fn constant(&self, name: &str) -> Result<&Poly, CatalogError> {
        self.upstairs_constants
            .get(name)
            .ok_or_else(|| CatalogError::UnknownEntry(name.to_string()))
    }

    /// S- then M-values, in table order.
    pub fn generators(&self) -> Vec<Poly> {
        S_NAMES
            .iter()
            .chain(M_NAMES.iter())
            .map(|n| self.classes[*n].clone())
            .collect()
    }
}

pub fn pushforward_table(g: u32) -> Result<PushforwardTable, CatalogError> {
    let k = GenusCoefficients::new(g)?;
    let down = classifying_ring("BGxPGL2")?;
    let up = classifying_ring("BGm2xPGL2")?;
    let v = down.vars().clone();
    let h2 = &k.h * &k.h;
    let hk2 = &h2 * &k.k * &k.k;
    let mut classes = BTreeMap::new();
    let mut put = |name: &str, p: Poly| {
        classes.insert(name.to_string(), p);
    };
    put("S1_1", combo(&v, &[(-(&k.g * 2u32), "b1")]));
    put(
        "S1_tau",
        combo(&v, &[(int(2), "b1^2"), (int(-4), "b2"), (-&k.g2m1, "c2")]),
    );
    put(
        "S2_xi2sq",
        combo(
            &v,
            &[
                (int(1), "b1^4"),
                (int(1), "b1^3*gam"),
                (int(-4), "b1^2*b2"),
                (int(2), "b2^2"),
                (k.g2p1_half.clone(), "b1^2*c2"),
                (int(1), "b1*gam*c2"),
                (-&k.g2p1, "b2*c2"),
                (int(1), "c3*b1"),
                (int(1), "c3*gam"),
                (k.g2m1_sq_8.clone(), "c2^2"),
            ],
        ),
    );
    put("S1_xi", combo(&v, &[(&k.g * 4u32, "b2")]));
    put(
        "S1_tauxi",
        combo(&v, &[(int(-2), "b1*b2"), (k.g2m1_half.clone(), "b1*c2")]),
    );
    put(
        "S2_xi2sqxi",
        combo(
            &v,
            &[
                (int(1), "b1^3*b2"),
                (int(1), "b1^2*b2*gam"),
                (int(-3), "b1*b2^2"),
                (int(-1), "b2^2*gam"),
                (k.g2p1_half.clone(), "b1*b2*c2"),
                (int(1), "b2*gam*c2"),
                (k.g2m1_sq_16.clone(), "b1*c2^2"),
            ],
        ),
    );
    put("M1_1", combo(&v, &[(-(&k.g + 1u32), "b1")]));
    put("M1_tau", combo(&v, &[(int(2), "b2"), (-&k.gp1_sq_half, "c2")]));
    put(
        "M2_1",
        combo(&v, &[(-&k.g, "b2"), (&k.g * &k.h, "b1^2"), (&k.g * &h2, "c2")]),
    );
    put(
        "M2_xi2",
        combo(
            &v,
            &[
                (-&k.g, "b1*b2"),
                (k.g_g2m1_quarter.clone(), "b1*c2"),
                (h2.clone(), "c3"),
            ],
        ),
    );
    put(
        "M2_xi2sq",
        combo(
            &v,
            &[
                (int(1), "b2^2"),
                (-&k.g2m1_quarter, "b1^2*c2"),
                (k.g2m1_half.clone(), "b2*c2"),
                (hk2, "c2^2"),
                (k.h.clone(), "b1*c3"),
            ],
        ),
    );

    let u = up.vars().clone();
    let f1 = combo(&u, &[(-(&k.g * 2u32), "x1")]);
    let f_tau = combo(&u, &[(int(2), "x1^2"), (-&k.g2m1_half, "c2")]);
    let minus_x2 = combo(&u, &[(int(-1), "x2")]);
    let swap = |p: &Poly| {
        let mut r = Poly::zero(&u);
        for (m, c) in p.terms() {
            let mut e = m.exps().to_vec();
            e.swap(0, 1);
            r.add_term(crate::polyring::Monomial::from_exps(e), c.clone());
        }
        r
    };
    let mut consts = BTreeMap::new();
    consts.insert("G1_1".to_string(), swap(&f1));
    consts.insert("G1_tau".to_string(), swap(&f_tau));
    consts.insert("F1_xi".to_string(), &f1 * &minus_x2);
    consts.insert("F1_tauxi".to_string(), &f_tau * &minus_x2);
    consts.insert("F1_1".to_string(), f1);
    consts.insert("F1_tau".to_string(), f_tau);

    Ok(PushforwardTable {
        genus: g,
        downstairs: down,
        upstairs: up,
        classes,
        upstairs_constants: consts,
    })
}

/// A catalog ring by CLI-facing name: `d`, `rh`, or any classifying ring.
pub fn ring_by_name(name: &str, g: u32) -> Result<RingPresentation, CatalogError> {
    match name.to_ascii_lowercase().as_str() {
        "d" => presentation_d(g),
        "rh" => presentation_rh(g),
        _ => classifying_ring(name),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifying_rings_as_displayed() {
        let r = classifying_ring("BPGL2").unwrap();
        assert_eq!(r.vars().len(), 2);
        assert_eq!(r.relations()[0].to_string(), "2*c3");
        let r = classifying_ring("BGxPGL2").unwrap();
        let rels: Vec<String> = r.relations().iter().map(|p| p.to_string()).collect();
        assert_eq!(rels, ["2*gam", "b1*gam + gam^2", "2*c3"]);
        let r = classifying_ring("PGL2_P1").unwrap();
        assert_eq!(r.relations().len(), 2);
        assert_eq!(classifying_ring("BGmN(4)").unwrap().vars().len(), 4);
        assert!(matches!(classifying_ring("BGmN(0)"), Err(CatalogError::UnknownRing(_))));
        assert!(matches!(classifying_ring("nope"), Err(CatalogError::UnknownRing(_))));
    }

    #[test]
    fn theorem_coefficients() {
        let d3 = theorem_bullets(3).unwrap();
        let v = d3[0].vars().clone();
        assert_eq!(d3[1], Poly::parse("4*b2+8*c2", &v).unwrap());
        let c2sq = Poly::parse("c2^2", &v).unwrap();
        let (m, _) = c2sq.terms().next().unwrap();
        assert_eq!(d3[2].coeff(m), BigInt::from(8));
        let d5 = theorem_bullets(5).unwrap();
        assert_eq!(d5[4], Poly::parse("2*b2-18*c2", &v).unwrap());
        assert!(matches!(presentation_d(4), Err(CatalogError::InvalidGenus(4))));
        assert!(matches!(presentation_d(1), Err(CatalogError::InvalidGenus(1))));
    }

    #[test]
    fn rh_extends_d() {
        let d = presentation_d(3).unwrap();
        let rh = presentation_rh(3).unwrap();
        assert_eq!(rh.relations().len(), d.relations().len() + 1);
        assert!(presentation_rh(4).is_err());
    }

    #[test]
    fn integrality_and_parities() {
        for g in (3..=99).step_by(2) {
            let k = GenusCoefficients::new(g).unwrap();
            assert!(k.g2m1_half.is_even());
            assert!(k.g2m1_quarter.is_even());
            assert!(k.g2m1_sq_16.is_even());
        }
    }

    #[test]
    fn everything_homogeneous() {
        for g in [3, 5, 11] {
            for p in presentation_rh(g).unwrap().relations() {
                assert!(p.degree().is_ok(), "{p}");
            }
            let t = pushforward_table(g).unwrap();
            for p in t.classes.values().chain(t.upstairs_constants.values()) {
                assert!(p.degree().is_ok(), "{p}");
            }
        }
    }

    #[test]
    fn table_values() {
        let t = pushforward_table(3).unwrap();
        let v = t.downstairs.vars().clone();
        assert_eq!(t.class("M1_1").unwrap(), &Poly::parse("-4*b1", &v).unwrap());
        assert_eq!(t.class("S1_xi").unwrap(), &Poly::parse("12*b2", &v).unwrap());
        let u = t.upstairs.vars().clone();
        assert_eq!(t.constant("F1_1").unwrap(), &Poly::parse("-6*x1", &u).unwrap());
        assert_eq!(t.constant("G1_tau").unwrap(), &Poly::parse("2*x2^2-4*c2", &u).unwrap());
    }

    #[test]
    fn free_ring_rewrite_identity() {
        for g in (3..=21).step_by(2) {
            let t = pushforward_table(g).unwrap();
            let k = GenusCoefficients::new(g).unwrap();
            let v = t.downstairs.vars().clone();
            let b1sq = Poly::parse("2*b1^2", &v).unwrap();
            let lhs =
                &t.class("M1_tau").unwrap().scale(&(&k.g - 1u32)) + &(&b1sq - t.class("S1_tau").unwrap()).scale(&k.h);
            assert_eq!(&lhs, t.class("S1_xi").unwrap());
        }
    }

    #[test]
    fn w_class_values() {
        let v = chart_vars();
        assert_eq!(
            w_class(2).unwrap(),
            Poly::parse("xi^2+4*c2+3*xi*t1+6*t1^2", &v).unwrap()
        );
        assert_eq!(w_class(1).unwrap(), Poly::parse("xi^2+c2+xi*t1+t1^2", &v).unwrap());
        assert_eq!(
            w_class(3).unwrap(),
            Poly::parse("xi^2+9*c2+5*xi*t1+15*t1^2", &v).unwrap()
        );
        assert_eq!(w_provenance(1), WProvenance::Extension);
        assert_eq!(w_provenance(2), WProvenance::Stated);
        assert!(w_class(0).is_err());
    }

    #[test]
    fn chart_relations() {
        let v = chart_vars();
        let r = chart_ring(2, [0, 0, 2], None).unwrap();
        assert_eq!(r.relations().last().unwrap(), &Poly::parse("2*t3", &v).unwrap());
        let r = chart_ring(2, [1, 1, 0], None).unwrap();
        assert_eq!(r.relations().last().unwrap(), &Poly::parse("t1+t2", &v).unwrap());
        assert!(matches!(
            chart_ring(2, [3, 0, 0], None),
            Err(CatalogError::InvalidTriple(_))
        ));
        assert!(chart_ring(1, [1, 1, 0], Some("xi^3+t1*xi^2+c2*xi")).is_ok());
        assert!(matches!(
            chart_ring(1, [1, 1, 0], Some("2*xi^3+c2*xi")),
            Err(CatalogError::NotMonic { .. })
        ));
    }

    #[test]
    fn file_round_trip() {
        for r in [presentation_rh(5).unwrap(), classifying_ring("PGL2_P1").unwrap()] {
            let text = r.dump();
            let back = RingPresentation::parse(&text).unwrap();
            assert_eq!(back.id(), r.id());
            assert_eq!(back.vars(), r.vars());
            assert_eq!(back.relations(), r.relations());
        }
        let err = RingPresentation::parse("ring x\nvar a 1\nrel a+b\n").unwrap_err();
        assert!(matches!(err, CatalogError::Format { line: 3, .. }));
        assert!(RingPresentation::parse("var a 1\n").is_err());
        assert!(RingPresentation::parse("ring x\nvar a 1\nvar b 2\nrel a+b\n").is_err());
    }

    #[test]
    fn perturbation_changes_one_coefficient() {
        let p = Perturbation::new(2, "c2", 1);
        let d = presentation_d_perturbed(3, Some(&p)).unwrap();
        let v = d.vars().clone();
        assert_eq!(d.relations()[4], Poly::parse("4*b2+9*c2", &v).unwrap());
        assert!(presentation_d_perturbed(3, Some(&Perturbation::new(9, "c2", 1))).is_err());
        assert!(presentation_d_perturbed(3, Some(&Perturbation::new(2, "b1", 1))).is_err());
    }
}
