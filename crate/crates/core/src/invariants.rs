//! Genus, the point-count bounds and the claim verdicts.

use serde::Serialize;

use crate::curve::SingularLocus;
use crate::error::{Error, Result};
use crate::resolve::SingularPointReport;

/// Geometric genus, exact or bracketed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GenusValue {
    Exact(i64),
    Interval([i64; 2]),
}

impl GenusValue {
    pub fn exact(self) -> Option<i64> {
        match self {
            GenusValue::Exact(g) => Some(g),
            GenusValue::Interval(_) => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenusResult {
    pub g_star: i64,
    pub g: GenusValue,
    pub certified: bool,
}

pub fn arithmetic_genus(d: u32) -> i64 {
    let d = d as i64;
    (d - 1) * (d - 2) / 2
}

/// `(d-1)(d-2)/2 - Σ m(m-1)/2` over the rational singular points.
pub fn virtual_genus(d: u32, singular: &[SingularPointReport]) -> i64 {
    arithmetic_genus(d)
        - singular
            .iter()
            .filter(|r| r.is_rational())
            .map(|r| {
                let m = r.multiplicity as i64;
                m * (m - 1) / 2
            })
            .sum::<i64>()
}

/// Genus from the deltas of all singular orbits. When the locus is not
/// certified, the unused part of the polar budget `d(d-1)` brackets it.
pub fn genus(d: u32, locus: &SingularLocus, singular: &[SingularPointReport]) -> GenusResult {
    let g_star = virtual_genus(d, singular);
    let drop: i64 = singular
        .iter()
        .map(|r| r.orbit_size as i64 * r.delta as i64)
        .sum();
    let g_hi = arithmetic_genus(d) - drop;
    if locus.certified {
        return GenusResult {
            g_star,
            g: GenusValue::Exact(g_hi),
            certified: true,
        };
    }
    let used: i64 = singular
        .iter()
        .map(|r| {
            let m = r.multiplicity as i64;
            r.orbit_size as i64 * m * (m - 1)
        })
        .sum();
    let dd = d as i64;
    let remaining = (dd * (dd - 1) - used).max(0);
    let g_lo = (g_hi - remaining / 2).max(0);
    GenusResult {
        g_star,
        g: GenusValue::Interval([g_lo, g_hi]),
        certified: false,
    }
}

/// `d(q - d + 2)`.
pub fn bound_hv(d: u32, q: u64) -> i64 {
    let d = d as i64;
    d * (q as i64 - d + 2)
}

/// `floor((ν(2g-2) + (q+2)d) / 2)`.
pub fn bound_sv(d: u32, g: GenusValue, q: u64, nu: u32) -> Result<i64> {
    let g = g.exact().ok_or(Error::GenusUncertain)?;
    let v = nu as i64 * (2 * g - 2) + (q as i64 + 2) * d as i64;
    Ok(v.div_euclid(2))
}

/// `d(q-d+2) + 2(g* - g) + Σ m(m-2)` over the rational singular points.
pub fn bound_main(
    d: u32,
    q: u64,
    genus: &GenusResult,
    singular: &[SingularPointReport],
) -> Result<i64> {
    let g = genus.g.exact().ok_or(Error::GenusUncertain)?;
    let sum: i64 = singular
        .iter()
        .filter(|r| r.is_rational())
        .map(|r| {
            let m = r.multiplicity as i64;
            m * (m - 2)
        })
        .sum();
    Ok(bound_hv(d, q) + 2 * (genus.g_star - g) + sum)
}

fn isqrt(n: u128) -> u128 {
    n.isqrt()
}

/// `floor(q + 1 + 2g√q)`.
pub fn bound_hasse_weil_genus(q: u64, g: u64) -> u128 {
    let q = q as u128;
    q + 1 + isqrt(4 * (g as u128) * (g as u128) * q)
}

/// `floor(1 + q + (d-1)(d-2)√q)`.
pub fn bound_hasse_weil_arith(q: u64, d: u32) -> u128 {
    let q = q as u128;
    let c = (d.max(1) as u128 - 1) * (d.max(2) as u128 - 2);
    1 + q + isqrt(c * c * q)
}

/// Evaluated bounds, `None` where the genus is not known.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Bounds {
    pub hv: i64,
    pub sv: Option<i64>,
    pub main: Option<i64>,
    pub hw_genus: Option<u128>,
    pub hw_arith: u128,
}

/// Outcome of one registered claim. `holds` is `None` when the claim's
/// hypotheses fail or its inputs are unavailable.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub id: &'static str,
    pub holds: Option<bool>,
    pub equality: Option<bool>,
    pub notes: String,
}

pub const CLAIM_IDS: [&str; 9] = [
    "ineq0",
    "lemma_Bq",
    "main0",
    "main1",
    "cor0",
    "cor1",
    "small_d_sv",
    "sv",
    "proof_chain",
];

impl Verdict {
    fn skipped(id: &'static str, why: &str) -> Self {
        Verdict {
            id,
            holds: None,
            equality: None,
            notes: why.into(),
        }
    }

    fn new(id: &'static str, holds: bool, equality: Option<bool>, notes: String) -> Self {
        Verdict {
            id,
            holds: Some(holds),
            equality,
            notes,
        }
    }

    pub fn is_finding(&self) -> bool {
        self.holds == Some(false)
    }
}

/// Everything the claims consume.
#[derive(Clone, Debug)]
pub struct ClaimInputs<'a> {
    pub d: u32,
    pub q: u64,
    pub mq: u64,
    pub mqs: u64,
    pub bq: u64,
    pub n1: u64,
    pub fnc: bool,
    pub nu: u32,
    pub genus: GenusResult,
    pub locus_certified: bool,
    /// Every singular orbit of the closure that was found.
    pub singular: &'a [SingularPointReport],
}

impl ClaimInputs<'_> {
    fn rational(&self) -> impl Iterator<Item = &SingularPointReport> {
        self.singular.iter().filter(|r| r.is_rational())
    }

    /// `Σ m_P` over the rational points of the curve.
    fn sum_mp(&self) -> i64 {
        self.mqs as i64 + self.rational().map(|r| r.multiplicity as i64).sum::<i64>()
    }

    fn rational_branches_linear(&self) -> bool {
        self.rational()
            .all(|r| r.branches.iter().all(|b| b.linear))
    }

    fn rational_branches_tame(&self) -> bool {
        self.rational().all(|r| r.branches.iter().all(|b| b.tame))
    }

    fn other_branches_linear(&self) -> bool {
        self.singular
            .iter()
            .filter(|r| !r.is_rational())
            .all(|r| r.branches.iter().all(|b| b.linear))
    }
}

/// Evaluates the whole registry, in registry order.
pub fn verdicts(c: &ClaimInputs) -> Vec<Verdict> {
    vec![
        ineq0(c),
        lemma_bq(c),
        main0(c),
        main1(c),
        cor0(c),
        cor1(c),
        small_d_sv(c),
        sv(c),
        proof_chain(c),
    ]
}

const NOT_FNC: &str = "not evaluated: the curve is Frobenius classical";
const NO_GENUS: &str = "not evaluated: genus not certified";

fn ineq0(c: &ClaimInputs) -> Verdict {
    let holds = c.mqs <= c.mq && c.mq <= c.bq && c.mqs <= c.n1 && c.n1 <= c.bq;
    Verdict::new(
        "ineq0",
        holds,
        Some(c.mq == c.bq),
        format!("MqS={} Mq={} Bq={} N1={}", c.mqs, c.mq, c.bq, c.n1),
    )
}

fn lemma_bq(c: &ClaimInputs) -> Verdict {
    if !c.fnc {
        return Verdict::skipped("lemma_Bq", NOT_FNC);
    }
    let Some(g) = c.genus.g.exact() else {
        return Verdict::skipped("lemma_Bq", NO_GENUS);
    };
    let lower = (c.q as i64 - 1) * c.d as i64 - (2 * g - 2);
    let bq = c.bq as i64;
    let eq = bq == lower;
    let mut holds = lower <= bq && bq <= c.sum_mp();
    let mut notes = format!("(q-1)d-(2g-2)={lower} Bq={bq} sum mP={}", c.sum_mp());
    if !c.locus_certified {
        notes.push_str("; equality condition not checked: singular locus not certified");
    } else if c.rational_branches_tame() {
        let cond = c.other_branches_linear();
        if cond != eq {
            holds = false;
            notes.push_str("; FINDING: equality disagrees with linearity of the other branches");
        }
    } else {
        notes.push_str("; equality condition not applicable: wild branch at a rational point");
    }
    Verdict::new("lemma_Bq", holds, Some(eq), notes)
}

fn main0(c: &ClaimInputs) -> Verdict {
    if !c.fnc {
        return Verdict::skipped("main0", NOT_FNC);
    }
    let Ok(bound) = bound_main(c.d, c.q, &c.genus, c.singular) else {
        return Verdict::skipped("main0", NO_GENUS);
    };
    let mqs = c.mqs as i64;
    let eq = mqs == bound;
    let mut holds = mqs >= bound;
    let mut notes = format!("MqS={mqs} bound={bound}");
    let all_linear = c.singular.iter().all(|r| r.branches.iter().all(|b| b.linear));
    if all_linear != eq {
        holds = false;
        notes.push_str("; FINDING: equality disagrees with branch linearity");
    }
    Verdict::new("main0", holds, Some(eq), notes)
}

fn main1(c: &ClaimInputs) -> Verdict {
    if !c.fnc {
        return Verdict::skipped("main1", NOT_FNC);
    }
    let hv = bound_hv(c.d, c.q);
    let mq = c.mq as i64;
    let eq = mq == hv;
    let mut holds = mq >= hv;
    let mut notes = format!("Mq={mq} hv={hv}");
    if c.locus_certified {
        let smooth = c.singular.is_empty();
        if smooth != eq {
            holds = false;
            notes.push_str("; FINDING: equality disagrees with smoothness");
        }
    } else {
        notes.push_str("; smoothness not certified");
    }
    Verdict::new("main1", holds, Some(eq), notes)
}

fn cor0(c: &ClaimInputs) -> Verdict {
    if !c.fnc {
        return Verdict::skipped("cor0", NOT_FNC);
    }
    if !c.locus_certified {
        return Verdict::skipped("cor0", "not evaluated: singular locus not certified");
    }
    let applies = c.singular.iter().all(|r| {
        r.is_rational() && r.ordinary && r.tangents.directions.iter().all(|t| t.level == 1)
    });
    if !applies {
        return Verdict::skipped(
            "cor0",
            "not applicable: a singular point is not ordinary with rational tangents",
        );
    }
    let sum: i64 = c
        .singular
        .iter()
        .map(|r| {
            let m = r.multiplicity as i64;
            m * (m - 1)
        })
        .sum();
    let expected = bound_hv(c.d, c.q) + sum;
    let holds = c.n1 as i64 == expected;
    Verdict::new(
        "cor0",
        holds,
        Some(holds),
        format!("N1={} hv+sum m(m-1)={expected}", c.n1),
    )
}

fn cor1(c: &ClaimInputs) -> Verdict {
    if !c.fnc || c.d <= 1 {
        return Verdict::skipped("cor1", "not evaluated: needs a nonclassical curve of degree > 1");
    }
    let lhs = (c.d as u64 - 1).pow(2);
    let eq = lhs == c.q;
    let mut notes = format!("(d-1)^2={lhs} q={}", c.q);
    if eq {
        notes.push_str("; Hermitian candidate");
    }
    Verdict::new("cor1", lhs >= c.q, Some(eq), notes)
}

fn small_d_sv(c: &ClaimInputs) -> Verdict {
    let d = c.d as u64;
    if d <= 1 || d * d > c.q {
        return Verdict::skipped("small_d_sv", "not applicable: needs 1 < d <= sqrt(q)");
    }
    let Ok(bound) = bound_sv(c.d, c.genus.g, c.q, 1) else {
        return Verdict::skipped("small_d_sv", NO_GENUS);
    };
    let n1 = c.n1 as i64;
    Verdict::new(
        "small_d_sv",
        n1 <= bound,
        Some(n1 == bound),
        format!("N1={n1} bound={bound}"),
    )
}

fn sv(c: &ClaimInputs) -> Verdict {
    let Ok(bound) = bound_sv(c.d, c.genus.g, c.q, c.nu) else {
        return Verdict::skipped("sv", NO_GENUS);
    };
    let n1 = c.n1 as i64;
    Verdict::new(
        "sv",
        n1 <= bound,
        Some(n1 == bound),
        format!("N1={n1} bound={bound} nu={}", c.nu),
    )
}

/// `M_q^S - bound_main = Σ m_P - ((q-1)d - (2g-2))`, and `B_q = Σ m_P`
/// exactly when the rational-centered branches are linear.
fn proof_chain(c: &ClaimInputs) -> Verdict {
    let Ok(bound) = bound_main(c.d, c.q, &c.genus, c.singular) else {
        return Verdict::skipped("proof_chain", NO_GENUS);
    };
    let g = c.genus.g.exact().unwrap();
    let lhs = c.mqs as i64 - bound;
    let rhs = c.sum_mp() - ((c.q as i64 - 1) * c.d as i64 - (2 * g - 2));
    let linear = c.rational_branches_linear();
    let bq_eq = c.bq as i64 == c.sum_mp();
    let holds = lhs == rhs && linear == bq_eq && c.bq as i64 <= c.sum_mp();
    Verdict::new(
        "proof_chain",
        holds,
        Some(bq_eq),
        format!("MqS-bound={lhs} sum mP-((q-1)d-(2g-2))={rhs} Bq=sum mP: {bq_eq}"),
    )
}
