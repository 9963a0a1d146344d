//! The full analysis pipeline and its JSON rendering.

use serde_json::{json, Value};

use crate::curve::{PlaneCurve, SingularLocus};
use crate::error::Result;
use crate::frobclass::{self, FrobeniusVerdict};
use crate::gf::ElemStyle;
use crate::invariants::{self, Bounds, ClaimInputs, GenusResult, Verdict};
use crate::resolve::{self, SingularPointReport};

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    /// Highest extension level used for sampling and fallback scans.
    pub k_max: u32,
    pub samples: usize,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            k_max: frobclass::DEFAULT_KMAX,
            samples: frobclass::DEFAULT_SAMPLES,
            seed: frobclass::DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub curve: PlaneCurve,
    pub options: AnalyzeOptions,
    pub mq: u64,
    pub mqs: u64,
    pub bq: u64,
    pub n1: u64,
    pub locus: SingularLocus,
    /// One report per singular orbit of the closure.
    pub singular: Vec<SingularPointReport>,
    pub genus: GenusResult,
    pub frobenius: FrobeniusVerdict,
    pub bounds: Bounds,
    pub verdicts: Vec<Verdict>,
    pub warnings: Vec<String>,
}

pub fn analyze(c: &PlaneCurve, opts: AnalyzeOptions) -> Result<Analysis> {
    let (mq, mqs) = c.counts()?;
    let locus = c.singular_locus(opts.k_max)?;
    let singular = resolve::analyze_singularities(c, &locus)?;
    let (bq, n1) = resolve::branch_totals(mqs, &singular);
    let genus = invariants::genus(c.degree(), &locus, &singular);
    let frobenius = frobclass::frobenius_verdict(c, opts.samples, opts.k_max, opts.seed)?;
    let (d, q) = (c.degree(), c.q());
    let bounds = Bounds {
        hv: invariants::bound_hv(d, q),
        sv: invariants::bound_sv(d, genus.g, q, frobenius.nu).ok(),
        main: invariants::bound_main(d, q, &genus, &singular).ok(),
        hw_genus: genus
            .g
            .exact()
            .map(|g| invariants::bound_hasse_weil_genus(q, g.max(0) as u64)),
        hw_arith: invariants::bound_hasse_weil_arith(q, d),
    };
    let inputs = ClaimInputs {
        d,
        q,
        mq: mq as u64,
        mqs: mqs as u64,
        bq,
        n1,
        fnc: frobenius.fnc.fnc,
        nu: frobenius.nu,
        genus,
        locus_certified: locus.certified,
        singular: &singular,
    };
    let verdicts = invariants::verdicts(&inputs);
    let mut warnings: Vec<String> = c.warnings().to_vec();
    warnings.extend(locus.notes.iter().cloned());
    warnings.extend(frobenius.warnings.iter().cloned());
    if let Some(e) = &frobenius.epsilon2 {
        warnings.push(format!(
            "epsilon2 is a sampled estimate ({} points at level {})",
            e.samples, e.level
        ));
    }
    Ok(Analysis {
        curve: c.clone(),
        options: opts,
        mq: mq as u64,
        mqs: mqs as u64,
        bq,
        n1,
        locus,
        singular,
        genus,
        frobenius,
        bounds,
        verdicts,
        warnings,
    })
}

impl Analysis {
    pub fn findings(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.is_finding())
    }

    /// A reducible curve of degree `d` has total delta at least `d - 1`
    /// (its components meet), so a complete singular list with a smaller
    /// total proves absolute irreducibility.
    pub fn irreducibility_certified(&self) -> bool {
        let total: u64 = self
            .singular
            .iter()
            .map(|r| r.orbit_size as u64 * r.delta)
            .sum();
        self.locus.certified && total + 1 < self.curve.degree() as u64
    }

    pub fn verdict(&self, id: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.id == id)
    }

    /// Curve equation as text that parses back to the same form.
    pub fn curve_text(&self) -> String {
        self.curve.form().format(ElemStyle::Coefficients)
    }

    pub fn to_json(&self) -> Value {
        let k = self.curve.field();
        let singular: Vec<Value> = self
            .singular
            .iter()
            .map(|r| {
                let branches: Vec<Value> = r
                    .branches
                    .iter()
                    .map(|b| {
                        json!({
                            "j1": b.j1,
                            "s": b.s,
                            "linear": b.linear,
                            "tame": b.tame,
                            "rational": b.rational,
                        })
                    })
                    .collect();
                json!({
                    "point": r.point.to_string(),
                    "level": r.point.level(),
                    "orbit_size": r.orbit_size,
                    "mP": r.multiplicity,
                    "delta": r.delta,
                    "ordinary": r.ordinary,
                    "branches": branches,
                })
            })
            .collect();
        let e2 = self.frobenius.epsilon2.as_ref();
        json!({
            "field": {
                "p": k.characteristic(),
                "s": k.degree(),
                "modulus": k.modulus(),
            },
            "curve": {
                "degree": self.curve.degree(),
                "text": self.curve_text(),
            },
            "counts": {
                "Mq": self.mq,
                "MqS": self.mqs,
                "Bq": self.bq,
                "N1": self.n1,
            },
            "genus": self.genus,
            "frobenius": {
                "fnc": self.frobenius.fnc.fnc,
                "epsilon2": e2.map(|e| e.value),
                "confidence": e2.map(|e| e.confidence),
                "nu": self.frobenius.nu,
                "seed": self.options.seed,
            },
            "singular": singular,
            "bounds": self.bounds,
            "verdicts": self.verdicts,
            "warnings": self.warnings,
        })
    }

    /// Human-readable summary.
    pub fn render_text(&self) -> String {
        use std::fmt::Write as _;
        let k = self.curve.field();
        let mut s = String::new();
        let _ = writeln!(s, "curve  {} = 0", self.curve_text());
        let _ = writeln!(s, "field  GF({}), degree {}", k.order(), self.curve.degree());
        let _ = writeln!(
            s,
            "counts Mq={} MqS={} Bq={} N1={}",
            self.mq, self.mqs, self.bq, self.n1
        );
        let g = match self.genus.g {
            invariants::GenusValue::Exact(g) => g.to_string(),
            invariants::GenusValue::Interval([a, b]) => format!("[{a}, {b}]"),
        };
        let _ = writeln!(
            s,
            "genus  g={g} g*={} certified={}",
            self.genus.g_star, self.genus.certified
        );
        let f = &self.frobenius;
        match &f.epsilon2 {
            Some(e) => {
                let _ = writeln!(
                    s,
                    "frob   fnc={} eps2={} (confidence {:.2}) nu={}",
                    f.fnc.fnc, e.value, e.confidence, f.nu
                );
            }
            None => {
                let _ = writeln!(s, "frob   fnc={} nu={}", f.fnc.fnc, f.nu);
            }
        }
        for r in &self.singular {
            let _ = writeln!(
                s,
                "sing   {} orbit={} m={} delta={} ordinary={} branches={}",
                r.point,
                r.orbit_size,
                r.multiplicity,
                r.delta,
                r.ordinary,
                r.branches.len()
            );
        }
        for v in &self.verdicts {
            let status = match v.holds {
                Some(true) => "holds",
                Some(false) => "FAILS",
                None => "skip",
            };
            let eq = match v.equality {
                Some(true) => " (equality)",
                _ => "",
            };
            let _ = writeln!(s, "claim  {:<12} {status}{eq}  {}", v.id, v.notes);
        }
        for w in &self.warnings {
            let _ = writeln!(s, "note   {w}");
        }
        s
    }
}
