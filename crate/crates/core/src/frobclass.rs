//! q-Frobenius nonclassicality, the second order ε₂ and the Frobenius order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curve::{minimal_level, Intersection, PlaneCurve, ProjPoint};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::mpoly::{Chart, MultiPoly};
use crate::par;

pub const DEFAULT_SAMPLES: usize = 40;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_KMAX: u32 = 3;

/// Outcome of the divisibility criterion.
#[derive(Clone, Debug)]
pub struct FncResult {
    pub fnc: bool,
    /// `(u^q - u) f_u + (v^q - v) f_v` in the chart coordinates.
    pub criterion_poly: MultiPoly,
    pub chart: Chart,
    /// Degree one: nonclassical by convention.
    pub degenerate: bool,
}

/// Sampled estimate of ε₂.
#[derive(Clone, Debug, Serialize)]
pub struct Epsilon2 {
    pub value: u32,
    /// Fraction of samples attaining the minimum.
    pub confidence: f64,
    pub samples: usize,
    /// Level over GF(q) of the sampled points.
    pub level: u32,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct FrobeniusVerdict {
    pub fnc: FncResult,
    pub epsilon2: Option<Epsilon2>,
    pub nu: u32,
    /// Sampled points with whether Frobenius maps them onto their tangent.
    pub geometric_samples: Vec<(ProjPoint, bool)>,
    pub warnings: Vec<String>,
}

/// First chart whose line at infinity is not a component of the curve.
fn choose_chart(c: &PlaneCurve) -> Chart {
    [Chart::Z, Chart::Y, Chart::X]
        .into_iter()
        .find(|ch| !chart_line_divides(c, *ch))
        .unwrap_or(Chart::Z)
}

fn chart_line_divides(c: &PlaneCurve, ch: Chart) -> bool {
    let i = ch.index();
    c.form().terms().all(|(m, _)| m.0[i] > 0)
}

/// Divisibility criterion in a given chart.
pub fn fnc_test_in(c: &PlaneCurve, chart: Chart) -> Result<FncResult> {
    let f = c.form().dehomogenize(chart)?;
    let k = c.field();
    let q = c.q() as u32;
    let mut h = MultiPoly::zero(k, 2);
    for v in 0..2 {
        let t = MultiPoly::var(k, 2, v);
        let frob = &t.pow(q) - &t;
        h = &h + &(&frob * &f.partial(v));
    }
    if c.degree() == 1 {
        return Ok(FncResult {
            fnc: true,
            criterion_poly: h,
            chart,
            degenerate: true,
        });
    }
    let fnc = f.divides(&h)?;
    Ok(FncResult {
        fnc,
        criterion_poly: h,
        chart,
        degenerate: false,
    })
}

/// Decides q-Frobenius nonclassicality of an irreducible curve.
pub fn fnc_test(c: &PlaneCurve) -> Result<FncResult> {
    fnc_test_in(c, choose_chart(c))
}

/// Whether the q-power image of the smooth point `p` lies on its tangent.
pub fn frobenius_tangency(c: &PlaneCurve, p: &ProjPoint) -> Result<bool> {
    let t = c.tangent_line(p)?;
    let k = p.field();
    let s = c.field().degree();
    let img = p.frobenius(s).coords();
    let v = (0..3).fold(Elem::ZERO, |acc, i| k.add(acc, k.mul(t.line[i], img[i])));
    Ok(v.is_zero())
}

/// Levels to sample at: `k_max` first, then upward while the field fits
/// under the cap, then downward.
fn sample_levels(c: &PlaneCurve, k_max: u32) -> Vec<u32> {
    let cap = crate::gf::enumeration_cap() as u128;
    let q = c.q() as u128;
    let fits = |l: u32| q.checked_pow(l).is_some_and(|n| n <= cap);
    let k = k_max.max(1);
    let mut out: Vec<u32> = (k..).take_while(|&l| fits(l)).collect();
    out.extend((1..k).rev().filter(|&l| fits(l)));
    out
}

/// Seeded random smooth points of the curve whose affine coordinates
/// generate GF(q^level) over GF(q): pick `x`, solve for `y` on `z = 1`.
pub fn sample_smooth_points(
    c: &PlaneCurve,
    level: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<ProjPoint>> {
    let (big, _) = c.level_field(level)?;
    let f = c.form_in(&big)?;
    let s = c.field().degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = big.order();
    let mut out = Vec::new();
    let attempts = count * 64 + 256;
    for _ in 0..attempts {
        if out.len() >= count {
            break;
        }
        let x = Elem(rng.gen_range(0..n));
        let u = f.specialize(0, x).specialize(2, Elem::ONE).to_upoly(1).unwrap();
        if u.is_zero() {
            continue;
        }
        let roots = u.roots();
        if roots.is_empty() {
            continue;
        }
        let (y, _) = roots[rng.gen_range(0..roots.len())];
        if minimal_level(&big, s, &[x, y]) != level {
            continue;
        }
        let p = ProjPoint::new(&big, level, [x, y, Elem::ONE])?;
        if !c.is_singular_at(&p)? {
            out.push(p);
        }
    }
    if out.len() < count {
        return Err(Error::NotEnoughPoints {
            wanted: count,
            found: out.len(),
        });
    }
    Ok(out)
}

/// Samples at the first level of `sample_levels` that has enough points.
fn sample_somewhere(
    c: &PlaneCurve,
    k_max: u32,
    count: usize,
    seed: u64,
) -> Result<(u32, Vec<ProjPoint>)> {
    let mut last = Error::NotEnoughPoints {
        wanted: count,
        found: 0,
    };
    for level in sample_levels(c, k_max) {
        match sample_smooth_points(c, level, count, seed) {
            Ok(pts) => return Ok((level, pts)),
            Err(e @ Error::NotEnoughPoints { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

/// Minimum over sampled smooth points of the tangent intersection
/// multiplicity. Special points can only raise the value.
pub fn epsilon2(c: &PlaneCurve, samples: usize, k_max: u32, seed: u64) -> Result<Epsilon2> {
    if c.degree() < 2 {
        return Err(Error::DegreeTooSmall {
            requested: 2,
            actual: c.degree(),
        });
    }
    let (level, pts) = sample_somewhere(c, k_max, samples, seed)?;
    let mults = par::map(&pts, |p| -> Result<Option<u32>> {
        let t = c.tangent_line(p)?;
        Ok(match c.line_intersection_multiplicity(p, &t.line)? {
            Intersection::Finite(v) => Some(v),
            Intersection::Infinite => None,
        })
    });
    let mults: Vec<u32> = mults
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let value = *mults.iter().min().ok_or_else(|| {
        Error::Invalid("every sampled tangent line is a component of the curve".into())
    })?;
    let hits = mults.iter().filter(|&&m| m == value).count();
    Ok(Epsilon2 {
        value,
        confidence: hits as f64 / samples as f64,
        samples,
        level,
        seed,
    })
}

fn is_power_of(n: u32, p: u32) -> bool {
    let mut n = n;
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Full verdict: criterion, ε₂, ν and a geometric cross-check.
pub fn frobenius_verdict(
    c: &PlaneCurve,
    samples: usize,
    k_max: u32,
    seed: u64,
) -> Result<FrobeniusVerdict> {
    let fnc = fnc_test(c)?;
    let mut warnings = Vec::new();
    let (epsilon2, geometric_samples) = if c.degree() >= 2 {
        let e = epsilon2(c, samples, k_max, seed)?;
        let pts = sample_smooth_points(c, e.level, samples.min(8), seed ^ 0x5eed)?;
        let geo = par::map(&pts, |p| frobenius_tangency(c, p).map(|t| (p.clone(), t)));
        (Some(e), geo.into_iter().collect::<Result<Vec<_>>>()?)
    } else {
        (None, Vec::new())
    };
    let nu = match (&epsilon2, fnc.fnc) {
        (Some(e), true) => e.value,
        _ => 1,
    };
    let p = c.field().characteristic();
    if fnc.fnc && nu > 1 && !is_power_of(nu, p) {
        warnings.push(format!("estimated ε₂ = {nu} is not a power of {p}"));
    }
    if fnc.fnc && geometric_samples.iter().any(|(_, t)| !t) {
        warnings.push("a sampled point is not mapped onto its tangent".into());
    }
    Ok(FrobeniusVerdict {
        fnc,
        epsilon2,
        nu,
        geometric_samples,
        warnings,
    })
}

/// Frobenius order with default sampling.
pub fn frobenius_order(c: &PlaneCurve) -> Result<u32> {
    Ok(frobenius_verdict(c, DEFAULT_SAMPLES, DEFAULT_KMAX, DEFAULT_SEED)?.nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;
    use crate::mpoly::parse_poly;
    use proptest::prelude::*;

    fn curve(s: &str, p: u64, n: u32) -> PlaneCurve {
        PlaneCurve::new(parse_poly(s, &Gf::new(p, n).unwrap(), 3).unwrap(), true).unwrap()
    }

    fn affine(s: &str, p: u64, n: u32) -> PlaneCurve {
        PlaneCurve::from_affine(&parse_poly(s, &Gf::new(p, n).unwrap(), 2).unwrap(), true).unwrap()
    }

    const EX: &str = "x^4*y^2 + x^2*y^4 + x^4*y*z + x*y^4*z + x^4*z^2 + x^2*y^2*z^2 + y^4*z^2 + x^2*z^4 + x*y*z^4 + y^2*z^4";

    #[test]
    fn criterion_examples() {
        let herm = affine("x^3 + y^3 + 1", 2, 2);
        let r = fnc_test(&herm).unwrap();
        assert!(r.fnc && !r.degenerate);
        // h = f^2 + f
        let f = herm.form().dehomogenize(Chart::Z).unwrap();
        assert_eq!(r.criterion_poly, &(&f * &f) + &f);

        let conic = affine("y - x^2", 5, 1);
        assert!(!fnc_test(&conic).unwrap().fnc);

        assert!(fnc_test(&curve(EX, 2, 2)).unwrap().fnc);
        assert!(fnc_test(&curve("x^13 - y^13 - z^13", 3, 3)).unwrap().fnc);

        let line = curve("x + y", 5, 1);
        let r = fnc_test(&line).unwrap();
        assert!(r.fnc && r.degenerate);
    }

    #[test]
    fn chart_choice_avoids_components() {
        // z is not a component, but the curve still works in every chart
        let c = curve("x^3 + y^3 + z^3", 2, 2);
        for ch in [Chart::X, Chart::Y, Chart::Z] {
            assert!(fnc_test_in(&c, ch).unwrap().fnc);
        }
        let c = curve("x^2*z + y^3", 5, 1);
        assert!(chart_line_divides(&c, Chart::Z) == false);
    }

    #[test]
    fn tangency_samples() {
        let herm = affine("x^3 + y^3 + 1", 2, 2);
        // GF(16) adds no points to this curve, so sample over GF(64)
        let pts = sample_smooth_points(&herm, 3, 20, 1).unwrap();
        assert!(pts.iter().all(|p| frobenius_tangency(&herm, p).unwrap()));

        let conic = affine("y - x^2", 5, 1);
        let pts = sample_smooth_points(&conic, 2, 20, 1).unwrap();
        assert!(pts.iter().any(|p| !frobenius_tangency(&conic, p).unwrap()));
        // rational points are fixed by Frobenius
        let p = conic.rational_point([2, 4, 1]).unwrap();
        assert!(frobenius_tangency(&conic, &p).unwrap());
    }

    #[test]
    fn epsilon2_and_nu() {
        let conic = affine("y - x^2", 5, 1);
        let v = frobenius_verdict(&conic, 40, 3, 0).unwrap();
        let e = v.epsilon2.unwrap();
        assert_eq!((e.value, v.nu), (2, 1));
        assert!(e.confidence >= 0.5);

        let herm = curve("x^3 + y^3 + z^3", 2, 2);
        let v = frobenius_verdict(&herm, 40, 3, 0).unwrap();
        assert_eq!((v.epsilon2.unwrap().value, v.nu), (2, 2));
        assert!(v.warnings.is_empty());

        let c1 = curve("x^13 - y^13 - z^13", 3, 3);
        let v = frobenius_verdict(&c1, 40, 3, 0).unwrap();
        let e = v.epsilon2.clone().unwrap();
        assert_eq!((e.value, v.nu), (3, 3));
        assert!(e.confidence >= 0.5);
        assert!(v.geometric_samples.iter().all(|(_, t)| *t));
    }

    #[test]
    fn sampling_skips_levels_without_new_points() {
        // this curve has no points over GF(64) or GF(512) beyond those over GF(8)
        let dls = curve("y^8*z^2 + y*z^9 + x^10 + x^3*z^7", 2, 3);
        assert!(matches!(
            sample_smooth_points(&dls, 3, 5, 0),
            Err(Error::NotEnoughPoints { .. })
        ));
        let e = epsilon2(&dls, 40, 3, 0).unwrap();
        assert_eq!((e.value, e.level), (2, 4));
        assert!(e.confidence >= 0.5);
    }

    #[test]
    fn sampling_is_deterministic() {
        let c = curve("x^13 - y^13 - z^13", 3, 3);
        let a = sample_smooth_points(&c, 2, 10, 7).unwrap();
        let b = sample_smooth_points(&c, 2, 10, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn powers() {
        assert!(is_power_of(1, 3) && is_power_of(9, 3) && !is_power_of(6, 3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// The criterion does not depend on the chart or on a change of
        /// coordinates over GF(q).
        #[test]
        fn criterion_is_projectively_invariant(m in prop::array::uniform9(0u32..4)) {
            let mat = [
                [Elem(m[0]), Elem(m[1]), Elem(m[2])],
                [Elem(m[3]), Elem(m[4]), Elem(m[5])],
                [Elem(m[6]), Elem(m[7]), Elem(m[8])],
            ];
            for s in ["x^3 + y^3 + z^3", "x^4 + y^3*z + x*z^3"] {
                let c = curve(s, 2, 2);
                let fnc = fnc_test(&c).unwrap().fnc;
                let Ok(t) = c.transform(&mat) else { continue };
                let r = fnc_test(&t).unwrap();
                prop_assert_eq!(r.fnc, fnc);
                for ch in [Chart::X, Chart::Y, Chart::Z] {
                    if !chart_line_divides(&t, ch) {
                        prop_assert_eq!(fnc_test_in(&t, ch).unwrap().fnc, fnc);
                    }
                }
            }
        }
    }
}
