//! Built-in example curves with their expected invariants.

use crate::curve::PlaneCurve;
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::mpoly::parse_poly;
use crate::report::Analysis;

/// Known facts about a corpus curve; `None` means not asserted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub fnc: Option<bool>,
    pub mq: Option<u64>,
    pub n1: Option<u64>,
    pub genus: Option<i64>,
    /// Genus strictly below this value.
    pub genus_below: Option<i64>,
    pub smooth: Option<bool>,
    pub rational_singular: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub p: u64,
    pub s: u32,
    pub text: &'static str,
    pub expected: Expected,
    pub provenance: &'static str,
}

impl CorpusEntry {
    pub fn curve(&self) -> Result<PlaneCurve> {
        let k = Gf::new(self.p, self.s)?;
        PlaneCurve::new(parse_poly(self.text, &k, 3)?, true)
    }

    /// Mismatches between an analysis and the expectations.
    pub fn check(&self, a: &Analysis) -> Vec<String> {
        let e = &self.expected;
        let mut bad = Vec::new();
        let mut cmp = |what: &str, want: Option<String>, got: String| {
            if let Some(w) = want {
                if w != got {
                    bad.push(format!("{what}: expected {w}, got {got}"));
                }
            }
        };
        cmp("fnc", e.fnc.map(|v| v.to_string()), a.frobenius.fnc.fnc.to_string());
        cmp("Mq", e.mq.map(|v| v.to_string()), a.mq.to_string());
        cmp("N1", e.n1.map(|v| v.to_string()), a.n1.to_string());
        let g = a.genus.g.exact();
        cmp("genus", e.genus.map(|v| v.to_string()), format!("{}", g.map_or("uncertified".into(), |g| g.to_string())));
        cmp(
            "smooth",
            e.smooth.map(|v| v.to_string()),
            (a.locus.certified && a.singular.is_empty()).to_string(),
        );
        cmp(
            "rational singular points",
            e.rational_singular.map(|v| v.to_string()),
            a.singular.iter().filter(|r| r.is_rational()).count().to_string(),
        );
        if let Some(bound) = e.genus_below {
            match g {
                Some(g) if g < bound => {}
                _ => bad.push(format!("genus: expected a certified value below {bound}, got {:?}", a.genus.g)),
            }
        }
        bad
    }
}

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        CorpusEntry {
            name: "sextic-f4",
            p: 2,
            s: 2,
            text: "x^4*y^2 + x^2*y^4 + x^4*y*z + x*y^4*z + x^4*z^2 + x^2*y^2*z^2 + y^4*z^2 + x^2*z^4 + x*y*z^4 + y^2*z^4",
            expected: Expected {
                fnc: Some(true),
                mq: Some(7),
                n1: Some(14),
                genus: Some(3),
                smooth: Some(false),
                rational_singular: Some(7),
                ..Expected::default()
            },
            provenance: "seven nodes at the points of PG(2,2), N1 = 6(4-6+2) + 7*2 = 14; Mq and genus from the scan and resolution",
        },
        CorpusEntry {
            name: "fermat13-f27",
            p: 3,
            s: 3,
            text: "x^13 - y^13 - z^13",
            expected: Expected {
                fnc: Some(true),
                mq: Some(208),
                n1: Some(208),
                genus: Some(66),
                smooth: Some(true),
                ..Expected::default()
            },
            provenance: "smooth, 208 = 13(27-13+2) points",
        },
        CorpusEntry {
            name: "c2-f27",
            p: 3,
            s: 3,
            // the constant 2 is the prime-field element
            text: "x^13 - y^13 - y^9*z^4 - y^3*z^10 - y*z^12 - 2*z^13",
            expected: Expected {
                fnc: Some(true),
                n1: Some(280),
                genus_below: Some(66),
                smooth: Some(false),
                ..Expected::default()
            },
            provenance: "280 places of degree one and smaller genus than the Fermat curve",
        },
        CorpusEntry {
            name: "hermitian-q2",
            p: 2,
            s: 2,
            text: "x^3 + y^3 + z^3",
            expected: Expected {
                fnc: Some(true),
                mq: Some(9),
                n1: Some(9),
                genus: Some(1),
                smooth: Some(true),
                ..Expected::default()
            },
            provenance: "Hermitian curve over GF(4); 9 points by exhaustive scan",
        },
        CorpusEntry {
            name: "hermitian-q3",
            p: 3,
            s: 2,
            text: "x^4 + y^4 + z^4",
            expected: Expected {
                fnc: Some(true),
                mq: Some(28),
                n1: Some(28),
                genus: Some(3),
                smooth: Some(true),
                ..Expected::default()
            },
            provenance: "Hermitian curve over GF(9); 28 points by exhaustive scan",
        },
        CorpusEntry {
            name: "dls-q8",
            p: 2,
            s: 3,
            text: "y^8*z^2 + y*z^9 + x^10 + x^3*z^7",
            expected: Expected {
                fnc: Some(true),
                n1: Some(65),
                genus: Some(14),
                smooth: Some(false),
                rational_singular: Some(1),
                ..Expected::default()
            },
            provenance: "y^8 - y = x^2(x^8 - x) homogenized at degree 10; N1 and genus from resolution of (0 : 1 : 0)",
        },
    ]
}

pub fn names() -> Vec<&'static str> {
    corpus().iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Result<CorpusEntry> {
    corpus()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownExample(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{analyze, AnalyzeOptions};

    #[test]
    fn entries_parse() {
        assert_eq!(names().len(), 6);
        for e in corpus() {
            let c = e.curve().unwrap();
            assert!(c.warnings().is_empty(), "{}", e.name);
        }
        assert!(matches!(entry("nope"), Err(Error::UnknownExample(_))));
    }

    #[test]
    fn small_entries_match() {
        for name in ["sextic-f4", "hermitian-q2", "hermitian-q3"] {
            let e = entry(name).unwrap();
            let a = analyze(&e.curve().unwrap(), AnalyzeOptions::default()).unwrap();
            assert!(e.check(&a).is_empty(), "{name}: {:?}", e.check(&a));
            assert_eq!(a.findings().count(), 0, "{name}");
        }
    }

    #[test]
    fn corrupted_expectation_is_reported() {
        let mut e = entry("hermitian-q2").unwrap();
        e.expected.n1 = Some(10);
        let a = analyze(&e.curve().unwrap(), AnalyzeOptions::default()).unwrap();
        assert_eq!(e.check(&a).len(), 1);
    }
}
