use super::*;
use crate::mpoly::{parse_poly, resultant_in};
use proptest::prelude::*;

fn gf(p: u64, n: u32) -> Gf {
    Gf::new(p, n).unwrap()
}

fn curve(s: &str, p: u64, n: u32) -> PlaneCurve {
    PlaneCurve::new(parse_poly(s, &gf(p, n), 3).unwrap(), true).unwrap()
}

const EX: &str = "x^4*y^2 + x^2*y^4 + x^4*y*z + x*y^4*z + x^4*z^2 + x^2*y^2*z^2 + y^4*z^2 + x^2*z^4 + x*y*z^4 + y^2*z^4";
const C1: &str = "x^13 - y^13 - z^13";
const C2: &str = "x^13 - y^13 - y^9*z^4 - y^3*z^10 - y*z^12 - 2*z^13";

/// Every nonzero triple, normalized and deduplicated: the plane by brute force.
fn plane(field: &Gf) -> Vec<[Elem; 3]> {
    let mut set = std::collections::BTreeSet::new();
    for a in field.elements() {
        for b in field.elements() {
            for c in field.elements() {
                if let Some(v) = normalize(field, [a, b, c]) {
                    set.insert(v);
                }
            }
        }
    }
    set.into_iter().collect()
}

fn brute_points(c: &PlaneCurve, field: &Gf) -> Vec<[Elem; 3]> {
    let f = c.form_in(field).unwrap();
    plane(field)
        .into_iter()
        .filter(|v| f.evaluate(v).unwrap().is_zero())
        .collect()
}

#[test]
fn construction() {
    let c = curve("x^3+y^3+z^3", 2, 2);
    assert_eq!(c.degree(), 3);
    assert!(c.warnings().is_empty());
    let sq = parse_poly("x^2 + y^2", &gf(2, 1), 3).unwrap();
    assert_eq!(PlaneCurve::new(sq, true).unwrap_err(), Error::PthPower);
    assert_eq!(curve(EX, 2, 2).degree(), 6);
    let zero = MultiPoly::zero(&gf(5, 1), 3);
    assert_eq!(PlaneCurve::new(zero, true).unwrap_err(), Error::ZeroPolynomial);
    let inh = parse_poly("x^2 + y", &gf(5, 1), 3).unwrap();
    assert_eq!(PlaneCurve::new(inh, true).unwrap_err(), Error::NotHomogeneous);
    let lined = curve("x*y*z + x^2*z", 5, 1);
    assert_eq!(lined.warnings().len(), 2);
    assert_eq!(curve("x + y + z", 5, 1).warnings().len(), 0);
}

#[test]
fn point_scans_match_brute_force() {
    let fermat = curve("x^3+y^3+z^3", 2, 2);
    let pts = fermat.points_over(1).unwrap();
    assert_eq!(pts.len(), 9);
    let got: Vec<[Elem; 3]> = pts.iter().map(|p| p.coords()).collect();
    assert_eq!(got, brute_points(&fermat, &gf(2, 2)));
    let conic = curve("y*z - x^2", 5, 1);
    assert_eq!(conic.points_over(1).unwrap().len(), 6);
    let pts2: Vec<[Elem; 3]> = conic.points_over(2).unwrap().iter().map(|p| p.coords()).collect();
    assert_eq!(pts2, brute_points(&conic, &gf(5, 2)));
}

#[test]
fn example_point_counts() {
    let c1 = curve(C1, 3, 3);
    assert_eq!(c1.points_over(1).unwrap().len(), 208);
    assert_eq!(c1.counts().unwrap(), (208, 208));
    let ex = curve(EX, 2, 2);
    let pts = ex.points_over(1).unwrap();
    let f4 = gf(2, 2);
    for v in plane(&gf(2, 1)) {
        let v = v.map(|e| f4.from_int(e.index() as i64));
        assert!(pts.iter().any(|p| p.coords() == v));
    }
    assert_eq!(ex.counts().unwrap(), (7, 0));
}

#[test]
fn multiplicities() {
    let ex = curve(EX, 2, 2);
    let o = ex.rational_point([0, 0, 1]).unwrap();
    assert_eq!(ex.multiplicity(&o).unwrap(), 2);
    let cusp = curve("y^2*z - x^3", 5, 1);
    assert_eq!(cusp.multiplicity(&cusp.rational_point([0, 0, 1]).unwrap()).unwrap(), 2);
    let off = cusp.rational_point([1, 2, 1]).unwrap();
    assert_eq!(cusp.multiplicity(&off).unwrap_err(), Error::PointNotOnCurve);
    let c1 = curve(C1, 3, 3);
    let p = c1.points_over(1).unwrap()[5].clone();
    assert_eq!(c1.multiplicity(&p).unwrap(), 1);
}

#[test]
fn chart_independence() {
    let ex = curve(EX, 2, 2);
    for orbit in ex.singular_locus(1).unwrap().orbits {
        let p = &orbit.rep;
        let m = ex.multiplicity(p).unwrap();
        for chart in [Chart::X, Chart::Y, Chart::Z] {
            if p.coords()[chart.index()].is_zero() {
                continue;
            }
            let f = ex.local_in_chart(p, chart).unwrap();
            assert_eq!(f.lowest_order(), Some(m), "{p} in chart {}", chart.name());
        }
    }
}

#[test]
fn example_singular_sets() {
    let ex = curve(EX, 2, 2);
    let loc = ex.singular_locus(1).unwrap();
    assert!(loc.certified);
    assert_eq!(loc.orbits.len(), 7);
    assert!(loc.orbits.iter().all(|o| o.is_rational() && o.multiplicity == 2));
    let (scan, _) = ex.singular_points_over(1).unwrap();
    assert_eq!(scan.len(), 7);

    let c1 = curve(C1, 3, 3);
    let loc = c1.singular_locus(2).unwrap();
    assert!(loc.certified);
    assert!(loc.orbits.is_empty());

    let c2 = curve(C2, 3, 3);
    let (scan1, _) = c2.singular_points_over(1).unwrap();
    assert!(scan1.is_empty());
    let loc = c2.singular_locus(2).unwrap();
    assert!(loc.certified);
    assert_eq!(loc.orbits.len(), 1);
    assert_eq!(loc.orbits[0].size(), 2);
    assert!(loc.orbits[0].members.iter().all(|p| p.coords()[0].is_zero()));
}

#[test]
fn c2_locus_matches_scan_at_level_two() {
    let c2 = curve(C2, 3, 3);
    let loc = c2.singular_locus(2).unwrap();
    let (scan, scanned) = c2.singular_points_over(2).unwrap();
    assert_eq!(scanned, 2);
    let a: Vec<&ProjPoint> = loc.orbits.iter().flat_map(|o| &o.members).collect();
    let b: Vec<&ProjPoint> = scan.iter().flat_map(|o| &o.members).collect();
    assert_eq!(a, b);
}

#[test]
fn points_at_infinity_are_found() {
    // y^2 z = x^3 has a cusp at (0:0:1); swapping y and z moves it to (0:1:0)
    let c = curve("z^2*y - x^3", 5, 1);
    let loc = c.singular_locus(1).unwrap();
    assert!(loc.certified);
    assert_eq!(loc.orbits.len(), 1);
    assert_eq!(loc.orbits[0].rep, c.rational_point([0, 1, 0]).unwrap());
    // (y^2 - 2x^2)^2 + x z^3: singular at (1 : t : 0) with t^2 = 2, in GF(25)
    let c = curve("y^4 + x^2*y^2 + 4*x^4 + x*z^3", 5, 1);
    let loc = c.singular_locus(2).unwrap();
    let (scan, _) = c.singular_points_over(2).unwrap();
    assert!(loc.certified);
    let a: Vec<&ProjPoint> = loc.orbits.iter().flat_map(|o| &o.members).collect();
    let b: Vec<&ProjPoint> = scan.iter().flat_map(|o| &o.members).collect();
    assert_eq!(a, b);
    assert_eq!(loc.orbits.len(), 1);
    assert_eq!(loc.orbits[0].size(), 2);
}

#[test]
fn tangent_lines() {
    let conic = curve("y*z - x^2", 5, 1);
    let t = conic.tangent_line(&conic.rational_point([0, 0, 1]).unwrap()).unwrap();
    assert_eq!(t.line, [Elem::ZERO, Elem::ONE, Elem::ZERO]);
    let fermat = curve("x^3+y^3+z^3", 2, 2);
    let p = fermat.rational_point([0, 1, 1]).unwrap();
    let t = fermat.tangent_line(&p).unwrap();
    assert_eq!(t.line, [Elem::ZERO, Elem::ONE, Elem::ONE]);
    let cusp = curve("y^2*z - x^3", 5, 1);
    assert_eq!(
        cusp.tangent_line(&cusp.rational_point([0, 0, 1]).unwrap()).unwrap_err(),
        Error::SingularPoint
    );
    for p in fermat.points_over(2).unwrap() {
        let t = fermat.tangent_line(&p).unwrap();
        let f = p.field();
        let v = (0..3).fold(Elem::ZERO, |acc, i| f.add(acc, f.mul(t.line[i], p.coords()[i])));
        assert!(v.is_zero());
        match fermat.line_intersection_multiplicity(&p, &t.line).unwrap() {
            Intersection::Finite(m) => assert!(m >= 2),
            Intersection::Infinite => panic!("a cubic has no line components"),
        }
    }
}

#[test]
fn tangent_cones() {
    let node = curve("x*y*z + x^3 + y^3", 5, 1);
    let o = node.rational_point([0, 0, 1]).unwrap();
    let tc = node.tangent_cone(&o).unwrap();
    assert!(tc.ordinary);
    let mut lines: Vec<[Elem; 3]> = tc.directions.iter().map(|d| d.line).collect();
    lines.sort();
    assert_eq!(lines, vec![[Elem::ZERO, Elem::ONE, Elem::ZERO], [Elem::ONE, Elem::ZERO, Elem::ZERO]]);
    let cusp = curve("y^2*z - x^3", 5, 1);
    let tc = cusp.tangent_cone(&o).unwrap();
    assert!(!tc.ordinary);
    assert_eq!(tc.directions.len(), 1);
    assert_eq!(tc.directions[0].multiplicity, 2);
    assert_eq!(tc.directions[0].line, [Elem::ZERO, Elem::ONE, Elem::ZERO]);
    // x^2 - 2 y^2 has no roots in GF(5): the tangents live in GF(25)
    let conj = curve("x^2*z + 3*y^2*z + x^3", 5, 1);
    let tc = conj.tangent_cone(&o).unwrap();
    assert!(tc.ordinary);
    assert!(tc.directions.iter().all(|d| d.level == 2));
    let smooth = curve("y*z - x^2", 5, 1);
    assert_eq!(smooth.tangent_cone(&o).unwrap_err(), Error::NotSingular);
    let ex = curve(EX, 2, 2);
    for orbit in ex.singular_locus(1).unwrap().orbits {
        let tc = ex.tangent_cone(&orbit.rep).unwrap();
        assert!(tc.ordinary);
        assert_eq!(tc.directions.len(), 2);
        assert!(tc.directions.iter().all(|d| d.level == 1));
    }
}

#[test]
fn intersection_multiplicities() {
    let o_conic = curve("y*z - x^2", 5, 1);
    let o = o_conic.rational_point([0, 0, 1]).unwrap();
    let y0 = [Elem::ZERO, Elem::ONE, Elem::ZERO];
    assert_eq!(o_conic.line_intersection_multiplicity(&o, &y0).unwrap(), Intersection::Finite(2));
    let cusp = curve("y^2*z - x^3", 5, 1);
    assert_eq!(cusp.line_intersection_multiplicity(&o, &y0).unwrap(), Intersection::Finite(3));
    let reducible = curve("y*z^2 + x*y^2", 5, 1);
    assert_eq!(reducible.line_intersection_multiplicity(&o, &y0).unwrap(), Intersection::Infinite);
    let z0 = [Elem::ZERO, Elem::ZERO, Elem::ONE];
    assert_eq!(cusp.line_intersection_multiplicity(&o, &z0).unwrap_err(), Error::LineMissesPoint);
}

#[test]
fn resultant_of_graph() {
    // Res_y(y - a(x), g) = ±g(x, a(x))
    let k = gf(3, 2);
    let a = parse_poly("x^2 + g*x + 1", &k, 2).unwrap();
    let f = &MultiPoly::var(&k, 2, 1) - &a;
    let g = parse_poly("x*y^3 + [2,1]*y^2 + x^3 + 2", &k, 2).unwrap();
    let r = resultant_in(&f, &g, 1).unwrap();
    let sub = g.compose(&[MultiPoly::var(&k, 2, 0), a]).unwrap().to_upoly(0).unwrap();
    assert!(r == sub || r == sub.scale(k.neg(Elem::ONE)));
}

#[test]
fn coordinate_changes_preserve_counts() {
    let k = gf(2, 2);
    let ex = curve(EX, 2, 2);
    let g = k.generator();
    let m = [
        [Elem::ONE, g, Elem::ZERO],
        [Elem::ZERO, Elem::ONE, Elem::ONE],
        [g, Elem::ZERO, Elem::ONE],
    ];
    let t = ex.transform(&m).unwrap();
    assert_eq!(t.counts().unwrap(), ex.counts().unwrap());
    assert_eq!(t.singular_locus(1).unwrap().orbits.len(), 7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn euler_relation(
        (q, terms) in prop_oneof![Just((2u64, 2u32)), Just((3, 1)), Just((5, 1)), Just((3, 2))]
            .prop_flat_map(|(p, n)| (Just((p, n)), prop::collection::vec((0u32..5, 0u32..5, 0u32..(p.pow(n) as u32)), 1..8)))
    ) {
        let k = gf(q.0, q.1);
        let d = 5;
        let form = MultiPoly::from_terms(&k, 3, terms.into_iter().filter(|(a, b, _)| a + b <= d).map(|(a, b, c)| ([a, b, d - a - b], Elem(c))));
        prop_assume!(!form.is_zero());
        let c = match PlaneCurve::new(form.clone(), false) { Ok(c) => c, Err(_) => return Ok(()) };
        let mut lhs = MultiPoly::zero(&k, 3);
        for (i, p) in c.partials().iter().enumerate() {
            lhs = &lhs + &(&MultiPoly::var(&k, 3, i) * p);
        }
        prop_assert_eq!(lhs, form.scale(k.from_int(d as i64)));
    }

    #[test]
    fn locus_agrees_with_scan(
        (q, terms) in prop_oneof![Just((2u64, 2u32)), Just((3, 1)), Just((5, 1))]
            .prop_flat_map(|(p, n)| (Just((p, n)), prop::collection::vec((0u32..4, 0u32..4, 0u32..(p.pow(n) as u32)), 2..7)))
    ) {
        let k = gf(q.0, q.1);
        let d = 3;
        let form = MultiPoly::from_terms(&k, 3, terms.into_iter().filter(|(a, b, _)| a + b <= d).map(|(a, b, c)| ([a, b, d - a - b], Elem(c))));
        prop_assume!(form.total_degree() == Some(d));
        let c = match PlaneCurve::new(form, false) { Ok(c) => c, Err(_) => return Ok(()) };
        let loc = c.singular_locus(2).unwrap();
        prop_assume!(loc.certified);
        let (scan, _) = c.singular_points_over(2).unwrap();
        let a: Vec<&ProjPoint> = loc.orbits.iter().filter(|o| o.size() <= 2).flat_map(|o| &o.members).collect();
        let mut a: Vec<&ProjPoint> = a;
        let mut b: Vec<&ProjPoint> = scan.iter().flat_map(|o| &o.members).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}
