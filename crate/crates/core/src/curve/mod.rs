//! Projective plane curves `F(x, y, z) = 0` over GF(q).

mod locus;

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{enumeration_cap, Elem, ElemStyle, Embedding, Gf};
use crate::mpoly::{Chart, Compiled, MultiPoly};
use crate::par;

pub use locus::{SingularLocus, SingularOrbit};

/// A point of PG(2, q^k). The first nonzero coordinate is 1.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    field: Gf,
    level: u32,
    coords: [Elem; 3],
}

impl PartialEq for ProjPoint {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for ProjPoint {}

impl Ord for ProjPoint {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.field.order(), self.coords).cmp(&(o.field.order(), o.coords))
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Scales so the first nonzero entry is 1; `None` for the zero vector.
pub fn normalize(field: &Gf, v: [Elem; 3]) -> Option<[Elem; 3]> {
    let lead = v.iter().find(|e| !e.is_zero())?;
    let inv = field.inv(*lead).unwrap();
    Some(v.map(|e| field.mul(e, inv)))
}

/// Smallest `j` such that every element is fixed by `x -> x^{q^j}`, where
/// `field` has degree `base_degree * n` over the prime field.
pub fn minimal_level(field: &Gf, base_degree: u32, elems: &[Elem]) -> u32 {
    let n = field.degree() / base_degree;
    (1..=n)
        .filter(|j| n % j == 0)
        .find(|&j| {
            elems
                .iter()
                .all(|&e| field.frobenius(e, base_degree * j) == e)
        })
        .unwrap_or(n)
}

impl ProjPoint {
    /// `level` is the extension degree of `field` over the curve's field.
    pub fn new(field: &Gf, level: u32, coords: [Elem; 3]) -> Result<Self> {
        let coords = normalize(field, coords)
            .ok_or_else(|| Error::Invalid("(0 : 0 : 0) is not a point".into()))?;
        Ok(ProjPoint {
            field: field.clone(),
            level,
            coords,
        })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coords(&self) -> [Elem; 3] {
        self.coords
    }

    /// Chart policy: `z = 1` if possible, else `y = 1`, else `x = 1`.
    pub fn chart(&self) -> Chart {
        if !self.coords[2].is_zero() {
            Chart::Z
        } else if !self.coords[1].is_zero() {
            Chart::Y
        } else {
            Chart::X
        }
    }

    /// Affine coordinates in `chart`; the chart coordinate must be nonzero.
    pub fn affine(&self, chart: Chart) -> Option<[Elem; 2]> {
        let inv = self.field.inv(self.coords[chart.index()])?;
        let [i, j] = chart.affine_indices();
        Some([
            self.field.mul(self.coords[i], inv),
            self.field.mul(self.coords[j], inv),
        ])
    }

    /// Coordinatewise `c -> c^{p^r}`.
    pub fn frobenius(&self, r: u32) -> Self {
        ProjPoint {
            field: self.field.clone(),
            level: self.level,
            coords: self.coords.map(|c| self.field.frobenius(c, r)),
        }
    }

    pub fn format(&self, style: ElemStyle) -> String {
        let c: Vec<String> = self
            .coords
            .iter()
            .map(|&e| self.field.format_elem(e, style))
            .collect();
        format!("({} : {} : {})", c[0], c[1], c[2])
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(ElemStyle::Coefficients))
    }
}

/// Tangent line `aX + bY + cZ` at a smooth point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentData {
    pub point: ProjPoint,
    pub line: [Elem; 3],
}

/// One linear factor of the tangent cone.
#[derive(Clone, Debug)]
pub struct TangentDirection {
    /// Projective line through the point, normalized.
    pub line: [Elem; 3],
    pub field: Gf,
    /// Smallest extension of the curve's field containing the line.
    pub level: u32,
    pub multiplicity: u32,
}

#[derive(Clone, Debug)]
pub struct TangentCone {
    pub multiplicity: u32,
    pub directions: Vec<TangentDirection>,
    /// `m` distinct tangents.
    pub ordinary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection {
    Finite(u32),
    /// The line is a component of the curve.
    Infinite,
}

#[derive(Clone, Debug)]
pub struct PlaneCurve {
    form: MultiPoly,
    degree: u32,
    irreducible_asserted: bool,
    warnings: Vec<String>,
    partials: [MultiPoly; 3],
}

impl PlaneCurve {
    pub fn new(form: MultiPoly, assert_irreducible: bool) -> Result<Self> {
        if form.arity() != 3 {
            return Err(Error::ArityMismatch);
        }
        let degree = form.total_degree().ok_or(Error::ZeroPolynomial)?;
        if !form.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if degree == 0 {
            return Err(Error::Invalid("a nonzero constant defines no curve".into()));
        }
        let p = form.field().characteristic();
        if form.terms().all(|(m, _)| m.0.iter().all(|e| e % p == 0)) {
            return Err(Error::PthPower);
        }
        let mut warnings = Vec::new();
        if degree > 1 {
            for (v, name) in ['x', 'y', 'z'].iter().enumerate() {
                if form.terms().all(|(m, _)| m.0[v] > 0) {
                    warnings.push(format!(
                        "{name} divides the form: the line {name} = 0 is a component"
                    ));
                }
            }
        }
        let partials = [form.partial(0), form.partial(1), form.partial(2)];
        Ok(PlaneCurve {
            form,
            degree,
            irreducible_asserted: assert_irreducible,
            warnings,
            partials,
        })
    }

    /// Projective closure of an affine equation, at its total degree.
    pub fn from_affine(f: &MultiPoly, assert_irreducible: bool) -> Result<Self> {
        let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
        PlaneCurve::new(f.homogenize(d)?, assert_irreducible)
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &Gf {
        self.form.field()
    }

    pub fn q(&self) -> u64 {
        self.field().order() as u64
    }

    pub fn irreducible_asserted(&self) -> bool {
        self.irreducible_asserted
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn partials(&self) -> &[MultiPoly; 3] {
        &self.partials
    }

    /// GF(q^k) with the canonical embedding of GF(q).
    pub fn level_field(&self, k: u32) -> Result<(Gf, Embedding)> {
        let big = self.field().extension(k)?;
        let emb = self.field().embed(&big)?;
        Ok((big, emb))
    }

    /// Level of `field` over the curve's field.
    pub fn level_of(&self, field: &Gf) -> Result<u32> {
        let (s, n) = (self.field().degree(), field.degree());
        if field.characteristic() != self.field().characteristic() || n % s != 0 {
            return Err(Error::FieldMismatch);
        }
        Ok(n / s)
    }

    pub fn form_in(&self, field: &Gf) -> Result<MultiPoly> {
        self.form.to_field(field)
    }

    /// A point of PG(2, q^k) given by coordinates in GF(q^k).
    pub fn point(&self, field: &Gf, coords: [Elem; 3]) -> Result<ProjPoint> {
        ProjPoint::new(field, self.level_of(field)?, coords)
    }

    pub fn rational_point(&self, coords: [i64; 3]) -> Result<ProjPoint> {
        let k = self.field();
        self.point(k, coords.map(|c| k.from_int(c)))
    }

    pub fn contains(&self, pt: &ProjPoint) -> Result<bool> {
        Ok(self.form_in(pt.field())?.eval(&pt.coords).is_zero())
    }

    /// Whether `pt` lies on the curve with all partials vanishing.
    pub fn is_singular_at(&self, pt: &ProjPoint) -> Result<bool> {
        if !self.contains(pt)? {
            return Ok(false);
        }
        for d in &self.partials {
            if !d.to_field(pt.field())?.eval(&pt.coords).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_plane_cap(&self, k: u32) -> Result<u64> {
        let big_q = (self.q() as u128).pow(k);
        let plane = big_q * big_q + big_q + 1;
        let cap = enumeration_cap();
        if plane > cap as u128 {
            return Err(Error::FieldTooLarge { size: plane, cap });
        }
        Ok(big_q as u64)
    }

    /// All points of the curve in PG(2, q^k), sorted.
    pub fn points_over(&self, k: u32) -> Result<Vec<ProjPoint>> {
        self.check_plane_cap(k)?;
        let (big, _) = self.level_field(k)?;
        let comp = Compiled::new(&self.form_in(&big)?);
        let coords = scan_zeros(&comp);
        Ok(coords
            .into_iter()
            .map(|c| ProjPoint {
                field: big.clone(),
                level: k,
                coords: c,
            })
            .collect())
    }

    /// Affine equation at `pt` with `pt` moved to the origin, and the chart
    /// used.
    pub fn local_equation(&self, pt: &ProjPoint) -> Result<(MultiPoly, Chart)> {
        if !self.contains(pt)? {
            return Err(Error::PointNotOnCurve);
        }
        let chart = pt.chart();
        Ok((self.local_in_chart(pt, chart)?, chart))
    }

    /// Local equation in a given chart (the chart coordinate of `pt` must be
    /// nonzero).
    pub fn local_in_chart(&self, pt: &ProjPoint, chart: Chart) -> Result<MultiPoly> {
        let [a, b] = pt
            .affine(chart)
            .ok_or_else(|| Error::Invalid(format!("point is not in chart {}", chart.name())))?;
        self.form_in(pt.field())?.dehomogenize(chart)?.translate(a, b)
    }

    pub fn multiplicity(&self, pt: &ProjPoint) -> Result<u32> {
        let (f, _) = self.local_equation(pt)?;
        Ok(f.lowest_order().expect("curve form is nonzero"))
    }

    pub fn tangent_line(&self, pt: &ProjPoint) -> Result<TangentData> {
        if !self.contains(pt)? {
            return Err(Error::PointNotOnCurve);
        }
        let mut v = [Elem::ZERO; 3];
        for (i, d) in self.partials.iter().enumerate() {
            v[i] = d.to_field(pt.field())?.eval(&pt.coords);
        }
        let line = normalize(pt.field(), v).ok_or(Error::SingularPoint)?;
        Ok(TangentData {
            point: pt.clone(),
            line,
        })
    }

    pub fn tangent_cone(&self, pt: &ProjPoint) -> Result<TangentCone> {
        let (f, chart) = self.local_equation(pt)?;
        let m = f.lowest_order().unwrap();
        if m < 2 {
            return Err(Error::NotSingular);
        }
        let k = pt.field();
        let low = f.lowest_form();
        // directions (1 : t) are roots of low(1, t); (0 : 1) takes the rest
        let u = low.specialize(0, Elem::ONE).to_upoly(1).unwrap();
        let mut dirs: Vec<(Gf, Elem, Elem, u32)> = Vec::new();
        let vertical = m - u.degree().unwrap_or(0) as u32;
        if vertical > 0 {
            dirs.push((k.clone(), Elem::ZERO, Elem::ONE, vertical));
        }
        for orbit in u.root_orbits()? {
            for &r in &orbit.members {
                dirs.push((orbit.field.clone(), Elem::ONE, r, orbit.multiplicity));
            }
        }
        let [i, j] = chart.affine_indices();
        let c = chart.index();
        let [a0, b0] = pt.affine(chart).unwrap();
        let base_deg = self.field().degree();
        let mut directions = Vec::new();
        for (field, al, be, mult) in dirs {
            let emb = k.embed(&field)?;
            let (a, b) = (emb.apply(a0), emb.apply(b0));
            // direction (al, be): line be*u - al*v = 0 in local coordinates
            let mut line = [Elem::ZERO; 3];
            line[i] = be;
            line[j] = field.neg(al);
            line[c] = field.sub(field.mul(al, b), field.mul(be, a));
            let line = normalize(&field, line).unwrap();
            let level = minimal_level(&field, base_deg, &line);
            directions.push(TangentDirection {
                line,
                field,
                level,
                multiplicity: mult,
            });
        }
        let ordinary = directions.len() as u32 == m && directions.iter().all(|d| d.multiplicity == 1);
        Ok(TangentCone {
            multiplicity: m,
            directions,
            ordinary,
        })
    }

    /// Order of vanishing at `pt` of the curve restricted to `line`.
    pub fn line_intersection_multiplicity(
        &self,
        pt: &ProjPoint,
        line: &[Elem; 3],
    ) -> Result<Intersection> {
        let k = pt.field();
        let c = pt.coords;
        let on = (0..3).fold(Elem::ZERO, |acc, i| k.add(acc, k.mul(line[i], c[i])));
        if !on.is_zero() {
            return Err(Error::LineMissesPoint);
        }
        let [a, b, cc] = *line;
        let candidates = [
            [b, k.neg(a), Elem::ZERO],
            [cc, Elem::ZERO, k.neg(a)],
            [Elem::ZERO, cc, k.neg(b)],
        ];
        let other = candidates
            .iter()
            .filter_map(|v| normalize(k, *v))
            .find(|v| *v != c)
            .ok_or_else(|| Error::Invalid("degenerate line".into()))?;
        // F(P + t Q) as a polynomial in t
        let t = MultiPoly::var(k, 2, 0);
        let subs: Vec<MultiPoly> = (0..3)
            .map(|i| {
                &MultiPoly::constant(k, 2, c[i]) + &t.scale(other[i])
            })
            .collect();
        let restricted = self.form_in(k)?.compose(&subs)?;
        let u = restricted.to_upoly(0).unwrap();
        Ok(match u.valuation() {
            None => Intersection::Infinite,
            Some(v) => Intersection::Finite(v as u32),
        })
    }

    /// `(M_q, M_q^S)`: rational points and rational smooth points.
    pub fn counts(&self) -> Result<(usize, usize)> {
        let pts = self.points_over(1)?;
        let partials: Vec<Compiled> = self.partials.iter().map(Compiled::new).collect();
        let smooth = pts
            .iter()
            .filter(|p| partials.iter().any(|d| !d.eval(&p.coords).is_zero()))
            .count();
        Ok((pts.len(), smooth))
    }

    /// Singular points of PG(2, q^k), k ≤ `k_max`, found by exhaustive scan and
    /// grouped into Frobenius orbits. Levels whose plane exceeds the cap are
    /// skipped; the second value is the highest level fully scanned.
    pub fn singular_points_over(&self, k_max: u32) -> Result<(Vec<SingularOrbit>, u32)> {
        let mut orbits = Vec::new();
        let mut scanned = 0;
        let s = self.field().degree();
        for k in 1..=k_max {
            if self.check_plane_cap(k).is_err() {
                break;
            }
            let (big, _) = self.level_field(k)?;
            let parts: Vec<Compiled> = self
                .partials
                .iter()
                .map(|d| d.to_field(&big).map(|d| Compiled::new(&d)))
                .collect::<Result<_>>()?;
            let mut found: Vec<ProjPoint> = self
                .points_over(k)?
                .into_iter()
                .filter(|p| parts.iter().all(|d| d.eval(&p.coords).is_zero()))
                .filter(|p| minimal_level(&big, s, &p.coords) == k)
                .collect();
            found.sort();
            let mut seen = std::collections::BTreeSet::new();
            for p in found {
                if seen.contains(&p) {
                    continue;
                }
                let orbit = SingularOrbit::from_point(&p, s, self.multiplicity(&p)?);
                for m in &orbit.members {
                    seen.insert(m.clone());
                }
                orbits.push(orbit);
            }
            scanned = k;
        }
        Ok((orbits, scanned))
    }

    /// The curve `F(M v) = 0` for an invertible 3x3 matrix over GF(q).
    pub fn transform(&self, m: &[[Elem; 3]; 3]) -> Result<PlaneCurve> {
        let k = self.field();
        let minor = |i: usize, j: usize| {
            let (r1, r2) = ((i + 1) % 3, (i + 2) % 3);
            let (c1, c2) = ((j + 1) % 3, (j + 2) % 3);
            k.sub(k.mul(m[r1][c1], m[r2][c2]), k.mul(m[r1][c2], m[r2][c1]))
        };
        let det = (0..3).fold(Elem::ZERO, |acc, j| k.add(acc, k.mul(m[0][j], minor(0, j))));
        if det.is_zero() {
            return Err(Error::Invalid("singular coordinate change".into()));
        }
        let subs: Vec<MultiPoly> = m
            .iter()
            .map(|row| {
                MultiPoly::from_terms(
                    k,
                    3,
                    (0..3).map(|j| {
                        let mut e = [0; 3];
                        e[j] = 1;
                        (e, row[j])
                    }),
                )
            })
            .collect();
        PlaneCurve::new(self.form.compose(&subs)?, self.irreducible_asserted)
    }
}

/// Zeros of a compiled form in PG(2, Q), sorted by coordinates.
fn scan_zeros(comp: &Compiled) -> Vec<[Elem; 3]> {
    let big = comp.field().clone();
    let q = big.order();
    let row_logs = |a: Option<Elem>, b: Elem| -> [Option<u32>; 3] {
        match a {
            None => [None, Some(0), big.log_of(b)],
            Some(a) => [Some(0), big.log_of(a), big.log_of(b)],
        }
    };
    let mut out = Vec::new();
    if comp.eval(&[Elem::ZERO, Elem::ZERO, Elem::ONE]).is_zero() {
        out.push([Elem::ZERO, Elem::ZERO, Elem::ONE]);
    }
    out.extend(par::flat_map_range(q + 1, |r| {
        let lead = if r == 0 { None } else { Some(Elem(r - 1)) };
        big.elements()
            .filter(|&b| comp.eval_logs(&row_logs(lead, b)).is_zero())
            .map(|b| match lead {
                None => [Elem::ZERO, Elem::ONE, b],
                Some(a) => [Elem::ONE, a, b],
            })
            .collect()
    }));
    out
}

#[cfg(test)]
mod tests;
