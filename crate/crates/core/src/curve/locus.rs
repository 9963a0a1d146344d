//! The singular locus over the algebraic closure.
//!
//! Affine singular points have x-coordinates among the roots of
//! `gcd(Res_y(f, f_x), Res_y(f, f_y), Res_y(f_x, f_y))` and y-coordinates among
//! the roots of the analogous polynomial in y. The degrees of their
//! irreducible factors bound the levels where singular points can live, so
//! searching those levels gives the complete set. Points on `z = 0` come from
//! a univariate gcd. If any step is degenerate or needs a field beyond the cap,
//! the result is flagged as uncertified and padded with an exhaustive scan.

use std::collections::{BTreeMap, BTreeSet};

use super::{minimal_level, PlaneCurve, ProjPoint};
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::mpoly::{resultant_in, Chart, MultiPoly};
use crate::upoly::UPoly;

/// A Frobenius orbit of singular points.
#[derive(Clone, Debug)]
pub struct SingularOrbit {
    /// Smallest member.
    pub rep: ProjPoint,
    /// All members in ascending order.
    pub members: Vec<ProjPoint>,
    pub multiplicity: u32,
}

impl SingularOrbit {
    pub(crate) fn from_point(p: &ProjPoint, base_degree: u32, multiplicity: u32) -> Self {
        let size = minimal_level(p.field(), base_degree, &p.coords());
        let mut members: Vec<ProjPoint> = (0..size)
            .map(|i| {
                let mut m = p.frobenius(base_degree * i);
                m.level = size;
                m
            })
            .collect();
        members.sort();
        SingularOrbit {
            rep: members[0].clone(),
            members,
            multiplicity,
        }
    }

    pub fn size(&self) -> u32 {
        self.members.len() as u32
    }

    pub fn is_rational(&self) -> bool {
        self.size() == 1
    }
}

#[derive(Clone, Debug)]
pub struct SingularLocus {
    /// Sorted by level, then representative.
    pub orbits: Vec<SingularOrbit>,
    /// Whether the list is provably complete.
    pub certified: bool,
    pub notes: Vec<String>,
}

impl SingularLocus {
    pub fn rational(&self) -> impl Iterator<Item = &SingularOrbit> {
        self.orbits.iter().filter(|o| o.is_rational())
    }

    /// Number of closure points, `Σ |orbit|`.
    pub fn num_points(&self) -> u32 {
        self.orbits.iter().map(|o| o.size()).sum()
    }
}

/// Nonzero resultants of `f` against `f_x`, `f_y` and of `f_x` against `f_y`,
/// eliminating `var`, combined by gcd.
fn eliminate(f: &MultiPoly, fx: &MultiPoly, fy: &MultiPoly, var: usize) -> Result<Option<UPoly>> {
    let mut acc: Option<UPoly> = None;
    for (a, b) in [(f, fx), (f, fy), (fx, fy)] {
        let r = resultant_in(a, b, var)?;
        if r.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => r,
            Some(g) => g.gcd(&r),
        });
    }
    Ok(acc.map(|g| if g.is_zero() { g } else { g.monic() }))
}

fn factor_levels(u: &UPoly) -> Vec<u32> {
    let deg = u.degree().unwrap_or(0) as u32;
    let prof = u.factor_degrees(deg.max(1));
    debug_assert!(prof.complete);
    prof.degrees
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

impl PlaneCurve {
    /// Singular points over the closure; see the module docs. `k_max` bounds
    /// the fallback scan used when the elimination cannot certify.
    pub fn singular_locus(&self, k_max: u32) -> Result<SingularLocus> {
        let mut found: BTreeMap<ProjPoint, SingularOrbit> = BTreeMap::new();
        let mut notes = Vec::new();
        let mut certified = true;
        if self.degree() > 1 {
            for part in [self.affine_singular(), self.infinite_singular()] {
                match part {
                    Ok(pts) => {
                        for p in pts {
                            self.insert_orbit(&mut found, &p)?;
                        }
                    }
                    Err(Error::FieldTooLarge { size, cap }) => {
                        certified = false;
                        notes.push(format!(
                            "elimination needs a field of size {size} beyond the cap {cap}"
                        ));
                    }
                    Err(Error::Invalid(msg)) => {
                        certified = false;
                        notes.push(msg);
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        if !certified {
            let (orbits, scanned) = self.singular_points_over(k_max)?;
            notes.push(format!("exhaustive scan completed up to level {scanned}"));
            for o in orbits {
                found.entry(o.rep.clone()).or_insert(o);
            }
        }
        let mut orbits: Vec<SingularOrbit> = found.into_values().collect();
        orbits.sort_by(|a, b| (a.size(), &a.rep).cmp(&(b.size(), &b.rep)));
        Ok(SingularLocus {
            orbits,
            certified,
            notes,
        })
    }

    fn insert_orbit(
        &self,
        found: &mut BTreeMap<ProjPoint, SingularOrbit>,
        p: &ProjPoint,
    ) -> Result<()> {
        let s = self.field().degree();
        let orbit = SingularOrbit::from_point(p, s, self.multiplicity(p)?);
        found.entry(orbit.rep.clone()).or_insert(orbit);
        Ok(())
    }

    /// Singular points with `z != 0`.
    fn affine_singular(&self) -> Result<Vec<ProjPoint>> {
        let f = self.form().dehomogenize(Chart::Z)?;
        let d = &self.partials();
        let fx = d[0].dehomogenize(Chart::Z)?;
        let fy = d[1].dehomogenize(Chart::Z)?;
        if f.total_degree() == Some(0) {
            return Ok(Vec::new());
        }
        let gx = eliminate(&f, &fx, &fy, 1)?;
        let gy = eliminate(&f, &fx, &fy, 0)?;
        let (Some(gx), Some(gy)) = (gx, gy) else {
            return Err(Error::Invalid(
                "all eliminants vanish: the curve has a multiple component".into(),
            ));
        };
        if gx.degree() == Some(0) || gy.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let lx = factor_levels(&gx);
        let ly = factor_levels(&gy);
        let levels: BTreeSet<u32> = lx
            .iter()
            .flat_map(|&a| ly.iter().map(move |&b| lcm(a, b)))
            .collect();
        let s = self.field().degree();
        let mut out = Vec::new();
        for l in levels {
            let (big, emb) = self.level_field(l)?;
            let xs: Vec<Elem> = gx.map(&emb).roots().into_iter().map(|r| r.0).collect();
            let ys: Vec<Elem> = gy.map(&emb).roots().into_iter().map(|r| r.0).collect();
            let (fb, fxb, fyb) = (f.map_field(&emb), fx.map_field(&emb), fy.map_field(&emb));
            for &a in &xs {
                for &b in &ys {
                    if minimal_level(&big, s, &[a, b]) != l {
                        continue;
                    }
                    let pt = [a, b];
                    if fb.eval(&pt).is_zero() && fxb.eval(&pt).is_zero() && fyb.eval(&pt).is_zero() {
                        out.push(ProjPoint::new(&big, l, [a, b, Elem::ONE])?);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Singular points on the line `z = 0`.
    fn infinite_singular(&self) -> Result<Vec<ProjPoint>> {
        let k = self.field();
        let mut out = Vec::new();
        let all = [self.form(), &self.partials()[0], &self.partials()[1], &self.partials()[2]];
        // (0 : 1 : 0)
        let top = [Elem::ZERO, Elem::ONE, Elem::ZERO];
        if all.iter().all(|g| g.eval(&top).is_zero()) {
            out.push(ProjPoint::new(k, 1, top)?);
        }
        // (1 : t : 0)
        let mut u = UPoly::zero(k);
        for g in all {
            let r = g
                .specialize(0, Elem::ONE)
                .specialize(2, Elem::ZERO)
                .to_upoly(1)
                .unwrap();
            u = u.gcd(&r);
        }
        if u.is_zero() {
            return Err(Error::Invalid(
                "the line z = 0 is a multiple component".into(),
            ));
        }
        if u.degree() == Some(0) {
            return Ok(out);
        }
        let s = k.degree();
        for l in factor_levels(&u) {
            let (big, emb) = self.level_field(l)?;
            for (t, _) in u.map(&emb).roots() {
                if minimal_level(&big, s, &[t]) == l {
                    out.push(ProjPoint::new(&big, l, [Elem::ONE, t, Elem::ZERO])?);
                }
            }
        }
        Ok(out)
    }
}
