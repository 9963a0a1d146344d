//! Sparse polynomials in two (`x, y`) or three (`x, y, z`) variables.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order, so iteration and printing are deterministic. Zero
//! coefficients are never stored.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{Elem, ElemStyle, Embedding, Gf};
use crate::upoly::UPoly;

pub use parse::parse_poly;

/// Exponent vector; unused trailing slots are zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.0).cmp(&(other.degree(), other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Affine chart of the projective plane: which coordinate is set to 1.
/// The remaining two keep their order, e.g. chart `Y` has coordinates `(x, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    X,
    Y,
    Z,
}

impl Chart {
    /// Index of the coordinate set to 1.
    pub fn index(self) -> usize {
        match self {
            Chart::X => 0,
            Chart::Y => 1,
            Chart::Z => 2,
        }
    }

    /// Projective indices of the two affine coordinates.
    pub fn affine_indices(self) -> [usize; 2] {
        match self {
            Chart::X => [1, 2],
            Chart::Y => [0, 2],
            Chart::Z => [0, 1],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chart::X => "x=1",
            Chart::Y => "y=1",
            Chart::Z => "z=1",
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Gf,
    arity: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.field)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(ElemStyle::Coefficients))
    }
}

/// `C(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        // C(a, b) mod p with a < p
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..b {
            num = num * ((a - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        let den_inv = crate::gf::modpow(den, p - 2, p);
        acc = acc * (num * den_inv % p) % p;
        n /= p;
        k /= p;
    }
    acc % p
}

const VARS: [char; 3] = ['x', 'y', 'z'];

impl MultiPoly {
    pub fn zero(field: &Gf, arity: usize) -> Self {
        assert!(arity == 2 || arity == 3, "arity must be 2 or 3");
        MultiPoly {
            field: field.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Gf, arity: usize, c: Elem) -> Self {
        Self::from_terms(field, arity, [([0, 0, 0], c)])
    }

    pub fn one(field: &Gf, arity: usize) -> Self {
        Self::constant(field, arity, Elem::ONE)
    }

    /// The variable with index `i` (0 = x, 1 = y, 2 = z).
    pub fn var(field: &Gf, arity: usize, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::from_terms(field, arity, [(e, Elem::ONE)])
    }

    /// Builds a polynomial, summing duplicate monomials.
    pub fn from_terms<I>(field: &Gf, arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = ([u32; 3], Elem)>,
    {
        let mut p = MultiPoly::zero(field, arity);
        for (e, c) in terms {
            debug_assert!(arity == 3 || e[2] == 0);
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Elem) {
        if c.is_zero() {
            return;
        }
        let f = &self.field;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Elem)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, e: [u32; 3]) -> Elem {
        self.terms
            .get(&Monomial(e))
            .copied()
            .unwrap_or(Elem::ZERO)
    }

    /// Total degree; `None` stands for the degree of zero (minus infinity).
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Smallest total degree of a term.
    pub fn lowest_order(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Sum of the terms of lowest total degree.
    pub fn lowest_form(&self) -> Self {
        let Some(m) = self.lowest_order() else {
            return self.clone();
        };
        self.filter(|e| e.degree() == m)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        MultiPoly {
            field: self.field.clone(),
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, *c))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.lowest_order() == self.total_degree()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        if self.arity != o.arity {
            return Err(Error::ArityMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, *c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, self.field.neg(*c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let f = &self.field;
        let mut out = MultiPoly::zero(f, self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let e = [ma.0[0] + mb.0[0], ma.0[1] + mb.0[1], ma.0[2] + mb.0[2]];
                out.add_term(Monomial(e), f.mul(*ca, *cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: Elem) -> Self {
        if s.is_zero() {
            return MultiPoly::zero(&self.field, self.arity);
        }
        let f = &self.field;
        MultiPoly {
            field: f.clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (*m, f.mul(*c, s))).collect(),
        }
    }

    /// Multiplies by the monomial with exponents `e`.
    pub fn shift(&self, e: [u32; 3]) -> Self {
        MultiPoly {
            field: self.field.clone(),
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial([m.0[0] + e[0], m.0[1] + e[1], m.0[2] + e[2]]), *c))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = MultiPoly::one(&self.field, self.arity);
        let mut b = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &b;
            }
            n >>= 1;
            if n > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// Evaluates at a point of the coefficient field.
    pub fn evaluate(&self, pt: &[Elem]) -> Result<Elem> {
        if pt.len() != self.arity {
            return Err(Error::ArityMismatch);
        }
        Ok(self.eval(pt))
    }

    /// Evaluates at a point over an extension, mapping coefficients by `emb`.
    pub fn evaluate_in(&self, pt: &[Elem], emb: &Embedding) -> Result<Elem> {
        if emb.source() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if pt.len() != self.arity {
            return Err(Error::ArityMismatch);
        }
        Ok(self.map_field(emb).eval(pt))
    }

    pub(crate) fn eval(&self, pt: &[Elem]) -> Elem {
        let f = &self.field;
        let mut acc = Elem::ZERO;
        for (m, c) in &self.terms {
            let mut v = *c;
            for (i, &x) in pt.iter().enumerate() {
                if m.0[i] > 0 {
                    v = f.mul(v, f.pow_u(x, m.0[i] as u64));
                }
            }
            acc = f.add(acc, v);
        }
        acc
    }

    pub fn map_field(&self, emb: &Embedding) -> Self {
        MultiPoly {
            field: emb.target().clone(),
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (*m, emb.apply(*c))).collect(),
        }
    }

    /// Maps into `target`, which must contain this polynomial's field.
    pub fn to_field(&self, target: &Gf) -> Result<Self> {
        if target == &self.field {
            return Ok(self.clone());
        }
        Ok(self.map_field(&self.field.embed(target)?))
    }

    /// Coefficientwise `c -> c^{p^r}`.
    pub fn frobenius(&self, r: u32) -> Self {
        let f = &self.field;
        MultiPoly {
            field: f.clone(),
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f.frobenius(*c, r)))
                .collect(),
        }
    }

    /// `k`-th Hasse derivative in variable `var`.
    pub fn hasse(&self, var: usize, k: u32) -> Self {
        let f = &self.field;
        let p = f.characteristic() as u64;
        let mut out = MultiPoly::zero(f, self.arity);
        for (m, c) in &self.terms {
            let n = m.0[var];
            if n < k {
                continue;
            }
            let b = binomial_mod_p(n as u64, k as u64, p);
            if b == 0 {
                continue;
            }
            let mut e = m.0;
            e[var] -= k;
            out.add_term(Monomial(e), f.mul(*c, f.from_int(b as i64)));
        }
        out
    }

    /// Ordinary partial derivative.
    pub fn partial(&self, var: usize) -> Self {
        self.hasse(var, 1)
    }

    /// `f(x + a, y + b)` for a bivariate `f`.
    pub fn translate(&self, a: Elem, b: Elem) -> Result<Self> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch);
        }
        let f = &self.field;
        let p = f.characteristic() as u64;
        let shifts = [a, b];
        let mut out = MultiPoly::zero(f, 2);
        for (m, c) in &self.terms {
            // expansions of (v + s)^n for each variable
            let parts: Vec<Vec<(u32, Elem)>> = (0..2)
                .map(|v| {
                    let n = m.0[v];
                    if shifts[v].is_zero() {
                        return vec![(n, Elem::ONE)];
                    }
                    (0..=n)
                        .filter_map(|k| {
                            let bc = binomial_mod_p(n as u64, k as u64, p);
                            (bc != 0).then(|| {
                                let s = f.pow_u(shifts[v], (n - k) as u64);
                                (k, f.mul(f.from_int(bc as i64), s))
                            })
                        })
                        .collect()
                })
                .collect();
            for &(i, ci) in &parts[0] {
                let ci = f.mul(*c, ci);
                for &(j, cj) in &parts[1] {
                    out.add_term(Monomial([i, j, 0]), f.mul(ci, cj));
                }
            }
        }
        Ok(out)
    }

    /// Projective closure of degree `d` of a bivariate polynomial.
    pub fn homogenize(&self, d: u32) -> Result<Self> {
        if self.arity != 2 {
            return Err(Error::ArityMismatch);
        }
        if let Some(actual) = self.total_degree() {
            if actual > d {
                return Err(Error::DegreeTooSmall {
                    requested: d,
                    actual,
                });
            }
        }
        Ok(MultiPoly {
            field: self.field.clone(),
            arity: 3,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial([m.0[0], m.0[1], d - m.degree()]), *c))
                .collect(),
        })
    }

    /// Restriction of a form to an affine chart.
    pub fn dehomogenize(&self, chart: Chart) -> Result<Self> {
        if self.arity != 3 {
            return Err(Error::ArityMismatch);
        }
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let [i, j] = chart.affine_indices();
        Ok(MultiPoly::from_terms(
            &self.field,
            2,
            self.terms.iter().map(|(m, c)| ([m.0[i], m.0[j], 0], *c)),
        ))
    }

    /// Substitutes `value` for variable `var` (the variable disappears but the
    /// arity is unchanged).
    pub fn specialize(&self, var: usize, value: Elem) -> Self {
        let f = &self.field;
        let mut out = MultiPoly::zero(f, self.arity);
        for (m, c) in &self.terms {
            let mut e = m.0;
            let k = e[var];
            e[var] = 0;
            out.add_term(Monomial(e), f.mul(*c, f.pow_u(value, k as u64)));
        }
        out
    }

    /// Substitutes polynomials for the variables.
    pub fn compose(&self, subs: &[MultiPoly]) -> Result<Self> {
        if subs.len() != self.arity {
            return Err(Error::ArityMismatch);
        }
        let target_arity = subs[0].arity;
        for s in subs {
            if s.field != self.field {
                return Err(Error::FieldMismatch);
            }
            if s.arity != target_arity {
                return Err(Error::ArityMismatch);
            }
        }
        let maxdeg: Vec<u32> = (0..self.arity)
            .map(|v| self.degree_in(v).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<MultiPoly>> = subs
            .iter()
            .zip(&maxdeg)
            .map(|(s, &n)| {
                let mut v = vec![MultiPoly::one(&self.field, target_arity)];
                for k in 1..=n as usize {
                    let next = &v[k - 1] * s;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(&self.field, target_arity);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(&self.field, target_arity, *c);
            for v in 0..self.arity {
                if m.0[v] > 0 {
                    t = &t * &powers[v][m.0[v] as usize];
                }
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// The polynomial as a univariate in `var`, if no other variable occurs.
    pub fn to_upoly(&self, var: usize) -> Option<UPoly> {
        let n = self.degree_in(var).unwrap_or(0) as usize;
        let mut c = vec![Elem::ZERO; n + 1];
        for (m, v) in &self.terms {
            if (0..self.arity).any(|i| i != var && m.0[i] != 0) {
                return None;
            }
            c[m.0[var] as usize] = *v;
        }
        Some(UPoly::new(&self.field, c))
    }

    /// Lifts a univariate polynomial into variable `var`.
    pub fn from_upoly(u: &UPoly, arity: usize, var: usize) -> Self {
        MultiPoly::from_terms(
            u.field(),
            arity,
            u.coeffs().iter().enumerate().map(|(i, &c)| {
                let mut e = [0; 3];
                e[var] = i as u32;
                (e, c)
            }),
        )
    }

    /// Coefficient of `var^k`, as a polynomial free of `var`.
    pub fn coeff_in(&self, var: usize, k: u32) -> Self {
        MultiPoly::from_terms(
            &self.field,
            self.arity,
            self.terms.iter().filter(|(m, _)| m.0[var] == k).map(|(m, c)| {
                let mut e = m.0;
                e[var] = 0;
                (e, *c)
            }),
        )
    }

    /// Pseudo-division by `f` in variable `var`:
    /// `lc_var(f)^power * self = quotient * f + remainder`, with
    /// `deg_var(remainder) < deg_var(f)`.
    pub fn pseudo_divrem(&self, f: &Self, var: usize) -> Result<(Self, Self, u32)> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let n = f.degree_in(var).unwrap_or(0);
        if n == 0 {
            return Err(Error::VariableAbsent);
        }
        let lc = f.coeff_in(var, n);
        let mut quo = MultiPoly::zero(&self.field, self.arity);
        let mut rem = self.clone();
        let mut power = 0u32;
        while let Some(k) = rem.degree_in(var).filter(|&k| k >= n && !rem.is_zero()) {
            let mut shift = [0; 3];
            shift[var] = k - n;
            let t = rem.coeff_in(var, k).shift(shift);
            quo = &(&lc * &quo) + &t;
            rem = &(&lc * &rem) - &(&t * f);
            power += 1;
        }
        #[cfg(debug_assertions)]
        {
            let lhs = &lc.pow(power) * self;
            let rhs = &(&quo * f) + &rem;
            debug_assert_eq!(lhs, rhs, "pseudo-division identity");
        }
        Ok((quo, rem, power))
    }

    /// Variable used for divisibility tests: largest degree in `self`.
    pub fn division_variable(&self) -> Option<usize> {
        (0..self.arity)
            .filter(|&v| self.degree_in(v).unwrap_or(0) > 0)
            .max_by_key(|&v| (self.degree_in(v).unwrap_or(0), std::cmp::Reverse(v)))
    }

    /// Whether `self` divides `h`, for an irreducible `self` involving at
    /// least one variable.
    ///
    /// A zero pseudo-remainder gives `self | lc^k h`; `lc` is free of the
    /// division variable so an irreducible `self` cannot divide it, hence
    /// `self | h`. Conversely `self | h` forces a zero pseudo-remainder.
    pub fn divides(&self, h: &Self) -> Result<bool> {
        self.check(h)?;
        let var = self.division_variable().ok_or(Error::VariableAbsent)?;
        Ok(h.pseudo_divrem(self, var)?.1.is_zero())
    }

    pub fn format(&self, style: ElemStyle) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let factors: Vec<String> = (0..self.arity)
                    .filter(|&i| m.0[i] > 0)
                    .map(|i| match m.0[i] {
                        1 => VARS[i].to_string(),
                        e => format!("{}^{}", VARS[i], e),
                    })
                    .collect();
                let coef = f.format_elem(*c, style);
                if factors.is_empty() {
                    coef
                } else if *c == Elem::ONE {
                    factors.join("*")
                } else {
                    format!("{}*{}", coef, factors.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Resultant of two bivariate polynomials with respect to `var`, as a
/// univariate polynomial in the other variable.
///
/// Computed by evaluation at points of an extension where neither leading
/// coefficient vanishes, followed by interpolation. When both inputs are free
/// of `var` the gcd is returned instead, which has the same common-zero
/// property used by callers.
pub fn resultant_in(f: &MultiPoly, g: &MultiPoly, var: usize) -> Result<UPoly> {
    f.check(g)?;
    if f.arity != 2 {
        return Err(Error::ArityMismatch);
    }
    let k = f.field();
    let other = 1 - var;
    if f.is_zero() || g.is_zero() {
        return Ok(UPoly::zero(k));
    }
    let df = f.degree_in(var).unwrap();
    let dg = g.degree_in(var).unwrap();
    let as_u = |p: &MultiPoly| p.to_upoly(other).expect("free of var");
    if df == 0 && dg == 0 {
        return Ok(as_u(f).gcd(&as_u(g)));
    }
    if df == 0 {
        return Ok(upow(&as_u(f), dg));
    }
    if dg == 0 {
        return Ok(upow(&as_u(g), df));
    }
    let lf = as_u(&f.coeff_in(var, df));
    let lg = as_u(&g.coeff_in(var, dg));
    let fo = f.degree_in(other).unwrap();
    let go = g.degree_in(other).unwrap();
    let bound = (dg * fo + df * go)
        .min(f.total_degree().unwrap() * g.total_degree().unwrap()) as u64;
    let need = bound + 1;
    let bad = (lf.degree().unwrap() + lg.degree().unwrap()) as u64;
    let mut ext = 1u32;
    while (k.order() as u64).pow(ext) < need + bad {
        ext += 1;
    }
    let big = k.extension(ext)?;
    let emb = k.embed(&big)?;
    let (fb, gb) = (f.map_field(&emb), g.map_field(&emb));
    let (lfb, lgb) = (lf.map(&emb), lg.map(&emb));
    let mut xs = Vec::with_capacity(need as usize);
    let mut ys = Vec::with_capacity(need as usize);
    for a in big.elements() {
        if xs.len() as u64 == need {
            break;
        }
        if lfb.eval(a).is_zero() || lgb.eval(a).is_zero() {
            continue;
        }
        let fa = fb.specialize(other, a).to_upoly(var).unwrap();
        let ga = gb.specialize(other, a).to_upoly(var).unwrap();
        xs.push(a);
        ys.push(crate::upoly::resultant(&fa, &ga));
    }
    let r = crate::upoly::interpolate(&big, &xs, &ys);
    r.pull_back(&emb).ok_or(Error::Invalid(
        "resultant has coefficients outside the base field".into(),
    ))
}

fn upow(u: &UPoly, n: u32) -> UPoly {
    let mut acc = UPoly::one(u.field());
    for _ in 0..n {
        acc = acc.mul(u);
    }
    acc
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &MultiPoly {
            type Output = MultiPoly;
            /// Panics on field or arity mismatch; use the checked variant
            /// for untrusted operands.
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("operand mismatch")
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(self.field.neg(Elem::ONE))
    }
}

/// A polynomial prepared for repeated evaluation at points of its field.
#[derive(Clone, Debug)]
pub struct Compiled {
    field: Gf,
    terms: Vec<([u32; 3], u32)>,
}

impl Compiled {
    pub fn new(f: &MultiPoly) -> Self {
        let field = f.field().clone();
        let terms = f
            .terms()
            .map(|(m, c)| (m.0, field.log_of(*c).expect("stored coefficients are nonzero")))
            .collect();
        Compiled { field, terms }
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    /// Value at `pt`, given the logarithms of its coordinates (`None` = zero).
    #[inline]
    pub fn eval_logs(&self, logs: &[Option<u32>; 3]) -> Elem {
        let f = &self.field;
        let q1 = (f.order() - 1) as u64;
        let mut acc = Elem::ZERO;
        'terms: for (e, lc) in &self.terms {
            let mut l = *lc as u64;
            for i in 0..3 {
                if e[i] > 0 {
                    match logs[i] {
                        Some(li) => l += e[i] as u64 * li as u64,
                        None => continue 'terms,
                    }
                }
            }
            acc = f.add(acc, f.exp_of(l % q1));
        }
        acc
    }

    pub fn logs(&self, pt: &[Elem]) -> [Option<u32>; 3] {
        let mut out = [None; 3];
        for (i, &x) in pt.iter().enumerate() {
            out[i] = self.field.log_of(x);
        }
        out
    }

    pub fn eval(&self, pt: &[Elem]) -> Elem {
        self.eval_logs(&self.logs(pt))
    }
}
