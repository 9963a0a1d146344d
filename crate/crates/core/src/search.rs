//! Seeded search for Frobenius nonclassical plane curves.
//!
//! Candidates are forms of a fixed degree normalized so the leading
//! coefficient (highest monomial in graded-lex order) is one. Exhaustive mode
//! walks all of them; random mode draws a seeded list first, so the output
//! never depends on how the tests are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::PlaneCurve;
use crate::error::{Error, Result};
use crate::frobclass;
use crate::gf::{Elem, ElemStyle, Gf};
use crate::mpoly::MultiPoly;
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub p: u64,
    pub s: u32,
    pub degree: u32,
    pub mode: SearchMode,
    /// Number of random draws.
    pub samples: usize,
    pub seed: u64,
    pub require_fnc: bool,
    pub require_singular: bool,
    /// Lower bound on ν used to prune degrees with `d <= (q-1)/(ν-1)`.
    pub nu_floor: Option<u32>,
    /// Maximum number of matches reported.
    pub limit: usize,
}

impl SearchConfig {
    pub fn new(p: u64, s: u32, degree: u32) -> Self {
        SearchConfig {
            p,
            s,
            degree,
            mode: SearchMode::Random,
            samples: 1000,
            seed: 0,
            require_fnc: true,
            require_singular: false,
            nu_floor: None,
            limit: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchMatch {
    /// Position in the candidate sequence.
    pub index: u64,
    pub text: String,
    pub fnc: bool,
    pub singular: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    pub examined: u64,
    pub rejected_cheap: u64,
    pub total_matches: u64,
    pub matches: Vec<SearchMatch>,
}

/// Monomials of degree `d` in descending graded-lex order.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut v = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            v.push([i, j, d - i - j]);
        }
    }
    v
}

/// Number of normalized candidates, `(q^M - 1) / (q - 1)`.
fn candidate_count(q: u64, m: usize) -> Option<u128> {
    let qm = (q as u128).checked_pow(m as u32)?;
    Some((qm - 1) / (q as u128 - 1))
}

/// The `i`-th normalized coefficient vector: the first nonzero entry is one.
fn decode(q: u64, m: usize, mut i: u128) -> Vec<u32> {
    let q128 = q as u128;
    let mut lead = 0;
    loop {
        let block = q128.pow((m - 1 - lead) as u32);
        if i < block {
            break;
        }
        i -= block;
        lead += 1;
    }
    let mut v = vec![0u32; m];
    v[lead] = 1;
    for slot in v[lead + 1..].iter_mut().rev() {
        *slot = (i % q128) as u32;
        i /= q128;
    }
    v
}

fn form(k: &Gf, mons: &[[u32; 3]], coeffs: &[u32]) -> MultiPoly {
    MultiPoly::from_terms(
        k,
        3,
        mons.iter().zip(coeffs).map(|(m, &c)| (*m, Elem(c))),
    )
}

enum Tested {
    Cheap,
    Miss,
    Hit(SearchMatch),
}

fn test_candidate(cfg: &SearchConfig, f: MultiPoly, index: u64) -> Result<Tested> {
    let Ok(c) = PlaneCurve::new(f, true) else {
        return Ok(Tested::Cheap);
    };
    if !c.warnings().is_empty() {
        return Ok(Tested::Cheap);
    }
    let fnc = frobclass::fnc_test(&c)?.fnc;
    if cfg.require_fnc && !fnc {
        return Ok(Tested::Miss);
    }
    let singular = if cfg.require_singular {
        let locus = c.singular_locus(1)?;
        let sing = !locus.orbits.is_empty();
        if !sing {
            return Ok(Tested::Miss);
        }
        Some(sing)
    } else {
        None
    };
    Ok(Tested::Hit(SearchMatch {
        index,
        text: c.form().format(ElemStyle::Coefficients),
        fnc,
        singular,
    }))
}

/// Degrees ruled out for nonclassical curves before any candidate is built.
fn degree_excluded(cfg: &SearchConfig, q: u64) -> bool {
    if !cfg.require_fnc || cfg.degree <= 1 {
        return false;
    }
    let d = cfg.degree as u64;
    if (d - 1) * (d - 1) < q {
        return true;
    }
    match cfg.nu_floor {
        Some(nu) if nu > 2 => d > (q - 1) / (nu as u64 - 1),
        _ => false,
    }
}

/// Seeded random forms of degree `d`. With `singular_at_origin` the
/// monomials of order below two at `(0 : 0 : 1)` are left out, so that point
/// is singular.
pub fn random_forms(k: &Gf, d: u32, count: usize, seed: u64, singular_at_origin: bool) -> Vec<MultiPoly> {
    let mons: Vec<[u32; 3]> = monomials(d)
        .into_iter()
        .filter(|m| !singular_at_origin || m[0] + m[1] >= 2)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = k.order();
    (0..count)
        .map(|_| {
            let v: Vec<u32> = (0..mons.len()).map(|_| rng.gen_range(0..q)).collect();
            form(k, &mons, &v)
        })
        .collect()
}

pub fn search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let k = Gf::new(cfg.p, cfg.s)?;
    let q = k.order() as u64;
    let mons = monomials(cfg.degree);
    let m = mons.len();
    let mut out = SearchOutcome {
        config: cfg.clone(),
        examined: 0,
        rejected_cheap: 0,
        total_matches: 0,
        matches: Vec::new(),
    };
    if degree_excluded(cfg, q) {
        return Ok(out);
    }
    let results: Vec<Result<Tested>> = match cfg.mode {
        SearchMode::Exhaustive => {
            let cap = crate::gf::enumeration_cap();
            let n = candidate_count(q, m)
                .filter(|&n| n <= cap as u128)
                .ok_or(Error::SearchTooLarge {
                    size: candidate_count(q, m).unwrap_or(u128::MAX),
                    cap,
                })?;
            const BLOCK: u128 = 256;
            let blocks = n.div_ceil(BLOCK) as u32;
            par::flat_map_range(blocks, |b| {
                let lo = b as u128 * BLOCK;
                let hi = (lo + BLOCK).min(n);
                (lo..hi)
                    .map(|i| test_candidate(cfg, form(&k, &mons, &decode(q, m, i)), i as u64))
                    .collect()
            })
        }
        SearchMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let draws: Vec<Vec<u32>> = (0..cfg.samples)
                .map(|_| {
                    let mut v: Vec<u32> = (0..m).map(|_| rng.gen_range(0..q as u32)).collect();
                    // normalize: leading coefficient one
                    if let Some(lead) = v.iter().position(|&c| c != 0) {
                        let inv = k.inv(Elem(v[lead])).unwrap();
                        for c in v.iter_mut() {
                            *c = k.mul(Elem(*c), inv).index();
                        }
                    }
                    v
                })
                .collect();
            let indexed: Vec<(usize, Vec<u32>)> = draws.into_iter().enumerate().collect();
            par::map(&indexed, |(i, v)| test_candidate(cfg, form(&k, &mons, v), *i as u64))
        }
    };
    for r in results {
        out.examined += 1;
        match r? {
            Tested::Cheap => out.rejected_cheap += 1,
            Tested::Miss => {}
            Tested::Hit(h) => {
                out.total_matches += 1;
                if out.matches.len() < cfg.limit {
                    out.matches.push(h);
                }
            }
        }
    }
    Ok(out)
}
