//! Dense univariate polynomials over a [`Gf`], with root finding over the
//! algebraic closure.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Gf};

/// Coefficients low degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: Gf,
    c: Vec<Elem>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<u32> = self.c.iter().map(|e| e.index()).collect();
        write!(f, "UPoly{:?}{:?}", self.field, idx)
    }
}

/// Roots of a polynomial over `K`, grouped into Frobenius orbits over `K`.
#[derive(Clone, Debug)]
pub struct RootOrbit {
    /// The field `K(r)`, of degree `degree` over `K`.
    pub field: Gf,
    /// Degree of the roots over `K` (= orbit size).
    pub degree: u32,
    /// Smallest orbit member in enumeration order.
    pub rep: Elem,
    /// All orbit members, starting at `rep`.
    pub members: Vec<Elem>,
    pub multiplicity: u32,
}

/// Degrees of the irreducible factors found, and whether the search finished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<u32>,
    pub complete: bool,
}

const SCAN_LIMIT: u32 = 1024;

impl UPoly {
    pub fn new(field: &Gf, mut c: Vec<Elem>) -> Self {
        while c.last().is_some_and(|e| e.is_zero()) {
            c.pop();
        }
        UPoly {
            field: field.clone(),
            c,
        }
    }

    pub fn zero(field: &Gf) -> Self {
        UPoly::new(field, Vec::new())
    }

    pub fn constant(field: &Gf, v: Elem) -> Self {
        UPoly::new(field, vec![v])
    }

    pub fn one(field: &Gf) -> Self {
        UPoly::constant(field, Elem::ONE)
    }

    /// The polynomial `X`.
    pub fn x(field: &Gf) -> Self {
        UPoly::new(field, vec![Elem::ZERO, Elem::ONE])
    }

    /// `X - r`.
    pub fn linear(field: &Gf, r: Elem) -> Self {
        UPoly::new(field, vec![field.neg(r), Elem::ONE])
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Elem {
        self.c.last().copied().unwrap_or(Elem::ZERO)
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|e| !e.is_zero())
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.c
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect();
        UPoly::new(f, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect();
        UPoly::new(f, c)
    }

    pub fn scale(&self, s: Elem) -> Self {
        let f = &self.field;
        UPoly::new(f, self.c.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UPoly::new(f, out)
    }

    pub fn monic(&self) -> Self {
        match self.field.inv(self.lc()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn divrem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let f = &self.field;
        let inv = f.inv(d.lc())?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Some((UPoly::zero(f), self.clone()));
        }
        let mut q = vec![Elem::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let coef = f.mul(r[top], inv);
            if coef.is_zero() {
                continue;
            }
            q[top - dd] = coef;
            for (i, &dc) in d.c.iter().enumerate() {
                let k = top - dd + i;
                r[k] = f.sub(r[k], f.mul(coef, dc));
            }
        }
        r.truncate(dd);
        Some((UPoly::new(f, q), UPoly::new(f, r)))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).expect("division by zero polynomial").1
    }

    /// Exact quotient, assuming `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d).expect("division by zero polynomial");
        debug_assert!(r.is_zero());
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut acc = UPoly::one(&self.field).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mulmod(&b, m);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        UPoly::new(f, c)
    }

    pub fn map(&self, emb: &Embedding) -> Self {
        UPoly::new(emb.target(), self.c.iter().map(|&c| emb.apply(c)).collect())
    }

    /// Pulls coefficients back along `emb`; `None` if some coefficient is
    /// outside the image.
    pub fn pull_back(&self, emb: &Embedding) -> Option<Self> {
        let c: Option<Vec<Elem>> = self.c.iter().map(|&c| emb.preimage(c)).collect();
        Some(UPoly::new(emb.source(), c?))
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: Elem) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let lin = UPoly::linear(&self.field, r);
        let mut cur = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = cur.divrem(&lin).unwrap();
            if !rem.is_zero() {
                return m;
            }
            m += 1;
            cur = q;
        }
    }

    /// `X^{|K|^e} mod self` computed from `h = X^{|K|^{e-1}} mod self`.
    fn frobenius_step(&self, h: &Self) -> Self {
        h.powmod(self.field.order() as u64, self)
    }

    /// Distinct roots lying in the coefficient field, with multiplicities,
    /// in enumeration order.
    pub fn roots(&self) -> Vec<(Elem, u32)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let m = self.monic();
        let x = UPoly::x(&self.field);
        let h = m.frobenius_step(&x.rem(&m));
        let g = m.gcd(&h.sub(&x));
        let mut roots = Vec::new();
        split_linear(&g, &mut roots);
        roots.sort();
        roots
            .into_iter()
            .map(|r| (r, self.root_multiplicity(r)))
            .collect()
    }

    /// All roots in the algebraic closure, grouped into Frobenius orbits over
    /// the coefficient field. Fails if a needed extension exceeds the cap.
    pub fn root_orbits(&self) -> Result<Vec<RootOrbit>> {
        let k = &self.field;
        let mut out = Vec::new();
        let Some(deg) = self.degree() else {
            return Err(Error::ZeroDivisor);
        };
        if deg == 0 {
            return Ok(out);
        }
        let mut rem = self.monic();
        let x = UPoly::x(k);
        let mut h = x.rem(&rem);
        let mut e = 0u32;
        while rem.degree().unwrap() > 0 {
            e += 1;
            h = rem.frobenius_step(&h);
            let g = rem.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            let field = k.extension(e)?;
            let emb = k.embed(&field)?;
            let gl = g.map(&emb);
            let mut roots = Vec::new();
            split_linear(&gl, &mut roots);
            roots.sort();
            let fl = self.map(&emb);
            let mut seen = std::collections::BTreeSet::new();
            for &r in &roots {
                if seen.contains(&r) {
                    continue;
                }
                let mut members = vec![r];
                let mut cur = field.pow_u(r, k.order() as u64);
                while cur != r {
                    members.push(cur);
                    cur = field.pow_u(cur, k.order() as u64);
                }
                for &m in &members {
                    seen.insert(m);
                }
                let rep = *members.iter().min().unwrap();
                let start = members.iter().position(|&m| m == rep).unwrap();
                members.rotate_left(start);
                out.push(RootOrbit {
                    field: field.clone(),
                    degree: members.len() as u32,
                    rep,
                    multiplicity: fl.root_multiplicity(rep),
                    members,
                });
            }
            loop {
                let d = rem.gcd(&g);
                if d.degree().unwrap_or(0) == 0 {
                    break;
                }
                rem = rem.div_exact(&d);
            }
            if rem.degree().unwrap_or(0) > 0 {
                h = h.rem(&rem);
            }
        }
        Ok(out)
    }

    /// Degrees of the irreducible factors, searching degrees up to `max_e`.
    pub fn factor_degrees(&self, max_e: u32) -> DegreeProfile {
        let mut degrees = Vec::new();
        let Some(deg) = self.degree() else {
            return DegreeProfile {
                degrees,
                complete: false,
            };
        };
        if deg == 0 {
            return DegreeProfile {
                degrees,
                complete: true,
            };
        }
        let k = &self.field;
        let mut rem = self.monic();
        let x = UPoly::x(k);
        let mut h = x.rem(&rem);
        let mut e = 0u32;
        while rem.degree().unwrap() > 0 {
            e += 1;
            if e > max_e {
                return DegreeProfile {
                    degrees,
                    complete: false,
                };
            }
            h = rem.frobenius_step(&h);
            let g = rem.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            degrees.push(e);
            loop {
                let d = rem.gcd(&g);
                if d.degree().unwrap_or(0) == 0 {
                    break;
                }
                rem = rem.div_exact(&d);
            }
            if rem.degree().unwrap_or(0) > 0 {
                h = h.rem(&rem);
            }
        }
        degrees.sort_unstable();
        degrees.dedup();
        DegreeProfile {
            degrees,
            complete: true,
        }
    }

    /// Coefficientwise `c -> c^{p^r}`.
    pub fn frobenius(&self, r: u32) -> Self {
        let f = &self.field;
        UPoly::new(f, self.c.iter().map(|&c| f.frobenius(c, r)).collect())
    }
}

/// Splits a monic squarefree polynomial with all roots in its field.
fn split_linear(g: &UPoly, out: &mut Vec<Elem>) {
    let f = g.field();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(f.neg(m.coeff(0)));
        }
        Some(d) => {
            if f.order() <= SCAN_LIMIT {
                let before = out.len();
                out.extend(f.elements().filter(|&x| g.eval(x).is_zero()));
                debug_assert_eq!(out.len() - before, d);
                return;
            }
            let g = g.monic();
            let p = f.characteristic();
            let q = f.order() as u64;
            for a in f.nonzero() {
                let h = if p == 2 {
                    // absolute trace of aX, reduced modulo g
                    let t = UPoly::new(f, vec![Elem::ZERO, a]).rem(&g);
                    let mut acc = t.clone();
                    let mut cur = t;
                    for _ in 1..f.degree() {
                        cur = cur.mulmod(&cur, &g);
                        acc = acc.add(&cur);
                    }
                    acc
                } else {
                    let base = UPoly::new(f, vec![a, Elem::ONE]);
                    base.powmod((q - 1) / 2, &g).sub(&UPoly::one(f))
                };
                let d1 = g.gcd(&h);
                let dd = d1.degree().unwrap_or(0);
                if dd > 0 && dd < d {
                    split_linear(&d1, out);
                    split_linear(&g.div_exact(&d1), out);
                    return;
                }
            }
            unreachable!("equal-degree splitting always finds a separating element");
        }
    }
}

/// Resultant of two univariate polynomials (zero if either is zero).
pub fn resultant(a: &UPoly, b: &UPoly) -> Elem {
    let f = a.field().clone();
    if a.is_zero() || b.is_zero() {
        return Elem::ZERO;
    }
    let mut a = a.clone();
    let mut b = b.clone();
    let mut acc = Elem::ONE;
    loop {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        if n == 0 {
            return f.mul(acc, f.pow_u(b.lc(), m as u64));
        }
        let r = a.rem(&b);
        if r.is_zero() {
            return Elem::ZERO;
        }
        let k = r.degree().unwrap();
        if (m * n) % 2 == 1 {
            acc = f.neg(acc);
        }
        acc = f.mul(acc, f.pow_u(b.lc(), (m - k) as u64));
        a = b;
        b = r;
    }
}

/// Newton interpolation through distinct abscissae.
pub fn interpolate(field: &Gf, xs: &[Elem], ys: &[Elem]) -> UPoly {
    let f = field;
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(coef[i], coef[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            coef[i] = f.div(num, den).expect("interpolation nodes must be distinct");
        }
    }
    let mut acc = UPoly::zero(f);
    for i in (0..n).rev() {
        acc = acc
            .mul(&UPoly::linear(f, xs[i]))
            .add(&UPoly::constant(f, coef[i]));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &Gf, c: &[i64]) -> UPoly {
        UPoly::new(f, c.iter().map(|&v| f.from_int(v)).collect())
    }

    #[test]
    fn divrem_identity() {
        let f = Gf::new(5, 1).unwrap();
        let a = poly(&f, &[1, 2, 3, 4, 1]);
        let b = poly(&f, &[2, 0, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn roots_match_scan() {
        for (p, n) in [(2u64, 4u32), (3, 3), (5, 2), (2, 11), (3, 7)] {
            let f = Gf::new(p, n).unwrap();
            // product of a few linear factors times an irreducible-ish tail
            let rs: Vec<Elem> = f.nonzero().step_by(97).take(4).collect();
            let mut g = poly(&f, &[1, 1, 0, 1]);
            for &r in &rs {
                g = g.mul(&UPoly::linear(&f, r));
            }
            g = g.mul(&UPoly::linear(&f, rs[0]));
            let found = g.roots();
            if f.order() <= 4096 {
                let scanned: Vec<Elem> = f.elements().filter(|&x| g.eval(x).is_zero()).collect();
                assert_eq!(found.iter().map(|r| r.0).collect::<Vec<_>>(), scanned);
            }
            for &r in &rs {
                assert!(found.iter().any(|&(x, _)| x == r));
            }
            let m0 = found.iter().find(|x| x.0 == rs[0]).unwrap().1;
            assert!(m0 >= 2);
        }
    }

    #[test]
    fn orbits_over_closure() {
        let f2 = Gf::new(2, 1).unwrap();
        // (x^2+x+1)^2 (x^3+x+1) x
        let a = poly(&f2, &[1, 1, 1]);
        let b = poly(&f2, &[1, 1, 0, 1]);
        let g = a.mul(&a).mul(&b).mul(&UPoly::x(&f2));
        let orbits = g.root_orbits().unwrap();
        let shape: Vec<(u32, u32)> = orbits.iter().map(|o| (o.degree, o.multiplicity)).collect();
        assert_eq!(shape, vec![(1, 1), (2, 2), (3, 1)]);
        for o in &orbits {
            let emb = f2.embed(&o.field).unwrap();
            let gl = g.map(&emb);
            for &m in &o.members {
                assert!(gl.eval(m).is_zero());
            }
        }
    }

    #[test]
    fn factor_degree_profile() {
        let f3 = Gf::new(3, 1).unwrap();
        let a = poly(&f3, &[1, 0, 1]); // x^2+1
        let b = poly(&f3, &[1, 2, 0, 1]); // x^3+2x+1
        let g = a.mul(&b).mul(&b).mul(&poly(&f3, &[1, 1]));
        let prof = g.factor_degrees(10);
        assert_eq!(
            prof,
            DegreeProfile {
                degrees: vec![1, 2, 3],
                complete: true
            }
        );
        assert!(!b.factor_degrees(2).complete);
    }

    #[test]
    fn resultant_against_roots() {
        // Res(a,b) = lc(a)^deg b * prod b(alpha)
        let f = Gf::new(7, 1).unwrap();
        let a = poly(&f, &[6, 0, 2]).mul(&poly(&f, &[3, 1])); // 2(x-1)(x+1)(x+3)
        let b = poly(&f, &[1, 1, 1]);
        let roots = [1, 6, 4];
        let mut expect = f.pow_u(f.from_int(2), 2);
        for r in roots {
            expect = f.mul(expect, b.eval(f.from_int(r)));
        }
        assert_eq!(resultant(&a, &b), expect);
        let c = poly(&f, &[1, 1]);
        assert_eq!(resultant(&a.mul(&c), &b.mul(&c)), Elem::ZERO);
    }

    #[test]
    fn interpolation_recovers() {
        let f = Gf::new(3, 3).unwrap();
        let g = poly(&f, &[1, 2, 0, 1, 1]).scale(f.generator());
        let xs: Vec<Elem> = f.elements().take(5).collect();
        let ys: Vec<Elem> = xs.iter().map(|&x| g.eval(x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), g);
    }
}
