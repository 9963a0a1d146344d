//! Truncated power series in one variable `t`, as coefficient vectors.

use crate::gf::{Elem, Gf};
use crate::mpoly::MultiPoly;

pub type Series = Vec<Elem>;

pub fn mul(f: &Gf, a: &[Elem], b: &[Elem], n: usize) -> Series {
    let mut out = vec![Elem::ZERO; n];
    for (i, &x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

pub fn add(f: &Gf, a: &[Elem], b: &[Elem]) -> Series {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(Elem::ZERO);
            let y = b.get(i).copied().unwrap_or(Elem::ZERO);
            f.add(x, y)
        })
        .collect()
}

/// `t^k` truncated to length `n`.
pub fn monomial(n: usize, k: usize) -> Series {
    let mut s = vec![Elem::ZERO; n];
    if k < n {
        s[k] = Elem::ONE;
    }
    s
}

pub fn constant(n: usize, c: Elem) -> Series {
    let mut s = vec![Elem::ZERO; n];
    if n > 0 {
        s[0] = c;
    }
    s
}

/// Index of the first nonzero coefficient.
pub fn order(a: &[Elem]) -> Option<usize> {
    a.iter().position(|c| !c.is_zero())
}

/// `g(x(t), y(t)) mod t^n` for a bivariate `g`.
pub fn substitute(g: &MultiPoly, x: &[Elem], y: &[Elem], n: usize) -> Series {
    let f = g.field();
    let dx = g.degree_in(0).unwrap_or(0) as usize;
    let dy = g.degree_in(1).unwrap_or(0) as usize;
    let powers = |s: &[Elem], d: usize| {
        let mut v = vec![constant(n, Elem::ONE)];
        for k in 1..=d {
            let next = mul(f, &v[k - 1], s, n);
            v.push(next);
        }
        v
    };
    let px = powers(x, dx);
    let py = powers(y, dy);
    let mut acc = vec![Elem::ZERO; n];
    for (m, c) in g.terms() {
        let t = mul(f, &px[m.0[0] as usize], &py[m.0[1] as usize], n);
        for i in 0..n {
            acc[i] = f.add(acc[i], f.mul(*c, t[i]));
        }
    }
    acc
}

/// Solves `g(t, w(t)) = 0` for `w(0) = 0` modulo `t^n`, given that
/// `∂g/∂w (0, 0)` is nonzero. With `swap` the roles of the variables are
/// exchanged: solves `g(w(t), t) = 0`.
pub fn implicit(g: &MultiPoly, n: usize, swap: bool) -> Series {
    let f = g.field();
    let lin = if swap { g.coeff([1, 0, 0]) } else { g.coeff([0, 1, 0]) };
    let inv = f.inv(lin).expect("smooth direction");
    let t = monomial(n, 1);
    let mut w = vec![Elem::ZERO; n];
    for k in 1..n {
        let s = if swap {
            substitute(g, &w, &t, k + 1)
        } else {
            substitute(g, &t, &w, k + 1)
        };
        w[k] = f.neg(f.mul(s[k], inv));
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;

    #[test]
    fn implicit_solution_of_a_parabola() {
        let k = Gf::new(7, 1).unwrap();
        // y - x^2 - x^3 = 0 gives y = t^2 + t^3
        let g = parse_poly("y - x^2 - x^3", &k, 2).unwrap();
        let w = implicit(&g, 6, false);
        assert_eq!(w, [0, 0, 1, 1, 0, 0].map(|v| k.from_int(v)).to_vec());
        // x - y^2 = 0 solved for x
        let g = parse_poly("x - y^2", &k, 2).unwrap();
        let w = implicit(&g, 5, true);
        assert_eq!(w, [0, 0, 1, 0, 0].map(|v| k.from_int(v)).to_vec());
    }

    #[test]
    fn implicit_solution_satisfies_equation() {
        let k = Gf::new(3, 2).unwrap();
        let g = parse_poly("g*y + x + x*y^2 + [1,2]*x^3*y + y^4", &k, 2).unwrap();
        let n = 20;
        let w = implicit(&g, n, false);
        let r = substitute(&g, &monomial(n, 1), &w, n);
        assert!(r.iter().all(|c| c.is_zero()));
    }
}
