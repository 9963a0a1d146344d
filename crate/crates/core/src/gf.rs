//! Finite fields GF(p^n) in a polynomial basis.
//!
//! An element is stored as its coefficient vector `[c0, .., c_{n-1}]`
//! packed into the integer `c0 + c1 p + .. + c_{n-1} p^{n-1}`. That integer
//! is also the enumeration order, so the zero element is 0 and the one
//! element is 1. Multiplication and (for odd characteristic extensions)
//! addition go through exponent, logarithm and Zech tables, which are exact
//! images of the polynomial-basis arithmetic.
//!
//! Fields are interned: `Gf::new(p, n)` returns the same shared instance for
//! the same `(p, n)`, which makes embeddings and equality checks cheap.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Default cap on field sizes and on plane enumerations.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// The enumeration cap, overridable through `CURVELAB_CAP`.
pub fn enumeration_cap() -> u64 {
    std::env::var("CURVELAB_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

const NONE: u32 = u32::MAX;

/// A field element, as an index into its field's enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// How elements are rendered as text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ElemStyle {
    #[default]
    Coefficients,
    DiscreteLog,
}

pub(crate) struct FieldData {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a primitive `g`, stored twice over for wrap-free lookups.
    exp: Vec<u32>,
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`; only built for odd characteristic extensions.
    zech: Vec<u32>,
    /// Logarithm of -1.
    neg_one_log: u32,
    /// Logarithm of the class of `x` (extensions only).
    x_log: Option<u32>,
}

/// A handle to an interned finite field.
#[derive(Clone)]
pub struct Gf(Arc<FieldData>);

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.n == other.0.n)
    }
}

impl Eq for Gf {}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.n)
        }
    }
}

fn fields() -> &'static Mutex<HashMap<(u32, u32), Gf>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), Gf>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn embeddings() -> &'static Mutex<HashMap<(u32, u32, u32), Embedding>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32, u32), Embedding>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn modpow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

/// Dense polynomials over the prime field, low degree first. Used only while
/// constructing fields.
mod fp {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u32, p: u32) -> u32 {
        super::modpow(a as u64, p as u64 - 2, p as u64) as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lc_inv = inv(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = (r[top] as u64 * lc_inv as u64 % p as u64) as u32;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, m, p);
            }
            b = mulmod(&b, &b, m, p);
            e >>= 1;
        }
        rem(&acc, m, p)
    }

    pub fn has_root(f: &[u32], p: u32) -> bool {
        (0..p).any(|x| {
            let mut acc = 0u64;
            for &c in f.iter().rev() {
                acc = (acc * x as u64 + c as u64) % p as u64;
            }
            acc == 0
        })
    }
}

/// Full irreducibility check of a monic polynomial over GF(p) (coefficients
/// low degree first): no factor of degree at most n/2, tested with
/// gcd(f, x^{p^i} - x) for each i.
pub fn is_irreducible_over_prime_field(f: &[u32], p: u32) -> bool {
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if n <= 3 {
        return !fp::has_root(f, p);
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=n / 2 {
        h = fp::powmod(&h, p as u64, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        fp::trim(&mut diff);
        let g = fp::gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn digits(mut idx: u32, p: u32, n: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        out.push(idx % p);
        idx /= p;
    }
    out
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Smallest monic irreducible of degree `n` over GF(p), candidates ordered by
/// the integer `c0 + c1 p + .. + c_{n-1} p^{n-1}` of their lower coefficients.
fn canonical_modulus(p: u32, n: u32) -> Vec<u32> {
    if n == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(n);
    for idx in 0..count {
        let mut f = digits(idx as u32, p, n);
        f.push(1);
        if is_irreducible_over_prime_field(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Gf {
    /// The canonical model of GF(p^n). Interned; building is deterministic.
    pub fn new(p: u64, n: u32) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let cap = enumeration_cap().min(1 << 31);
        let size = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
        if size > cap as u128 {
            return Err(Error::FieldTooLarge { size, cap });
        }
        let key = (p as u32, n);
        if let Some(f) = fields().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let built = Gf(Arc::new(build_tables(p as u32, n)));
        let mut reg = fields().lock().unwrap();
        Ok(reg.entry(key).or_insert(built).clone())
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.0.n
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic defining polynomial, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Class of `x` (the residue 0 in a prime field, whose modulus is `x`).
    pub fn generator(&self) -> Elem {
        if self.0.n == 1 {
            Elem::ZERO
        } else {
            Elem(self.0.p)
        }
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.0.q
    }

    /// The element with enumeration index `i`, if `i < q`.
    pub fn elem(&self, i: u32) -> Option<Elem> {
        (i < self.0.q).then_some(Elem(i))
    }

    /// All elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    /// Nonzero elements in enumeration order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.0.q).map(Elem)
    }

    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn coeffs(&self, e: Elem) -> Vec<u32> {
        digits(e.0, self.0.p, self.0.n)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Elem> {
        if c.len() > self.0.n as usize {
            return Err(Error::Invalid(format!(
                "{} coefficients for a degree {} field",
                c.len(),
                self.0.n
            )));
        }
        let reduced: Vec<u32> = c.iter().map(|&v| v % self.0.p).collect();
        Ok(Elem(undigits(&reduced, self.0.p)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if d.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if d.n == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= d.p { s - d.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let q1 = d.q - 1;
        let la = d.log[a.0 as usize];
        let lb = d.log[b.0 as usize];
        let diff = if lb >= la { lb - la } else { lb + q1 - la };
        let z = d.zech[diff as usize];
        if z == NONE {
            Elem::ZERO
        } else {
            Elem(d.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let d = &*self.0;
        if d.p == 2 || a.0 == 0 {
            return a;
        }
        if d.n == 1 {
            return Elem(d.p - a.0);
        }
        Elem(d.exp[(d.log[a.0 as usize] + d.neg_one_log) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let d = &*self.0;
        Elem(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let d = &*self.0;
        let l = d.log[a.0 as usize];
        Some(Elem(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e`, negative exponents through the inverse; `None` for `0^e`, e < 0.
    pub fn pow(&self, a: Elem, e: i64) -> Option<Elem> {
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => None,
                std::cmp::Ordering::Equal => Some(Elem::ONE),
                std::cmp::Ordering::Greater => Some(Elem::ZERO),
            };
        }
        let d = &*self.0;
        let q1 = (d.q - 1) as i128;
        let l = d.log[a.0 as usize] as i128;
        let k = (l * (e as i128)).rem_euclid(q1);
        Some(Elem(d.exp[k as usize]))
    }

    /// `a^k` for a nonnegative exponent of any size.
    pub fn pow_u(&self, a: Elem, e: u64) -> Elem {
        if a.0 == 0 {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let d = &*self.0;
        let q1 = (d.q - 1) as u64;
        let k = (d.log[a.0 as usize] as u64 % q1) * (e % q1) % q1;
        Elem(d.exp[k as usize])
    }

    /// `e^{p^r}`.
    pub fn frobenius(&self, a: Elem, r: u32) -> Elem {
        if a.0 == 0 {
            return a;
        }
        let d = &*self.0;
        let q1 = (d.q - 1) as u64;
        let pr = modpow(d.p as u64, r as u64, q1);
        let k = d.log[a.0 as usize] as u64 * pr % q1;
        Elem(d.exp[k as usize])
    }

    /// Discrete logarithm to the primitive table base (not necessarily `x`).
    pub(crate) fn log_of(&self, a: Elem) -> Option<u32> {
        if a.0 == 0 {
            None
        } else {
            Some(self.0.log[a.0 as usize])
        }
    }

    pub(crate) fn exp_of(&self, k: u64) -> Elem {
        Elem(self.0.exp[(k % (self.0.q as u64 - 1)) as usize])
    }

    /// Smallest `k >= 0` with `x^k = a`, if `a` is a power of `x`.
    pub fn log_x(&self, a: Elem) -> Option<u64> {
        let lx = self.0.x_log? as u64;
        let la = self.log_of(a)? as u64;
        let q1 = self.0.q as u64 - 1;
        // x^k = g^{k lx}; solve k lx = la (mod q1)
        let g = gcd(lx, q1);
        if la % g != 0 {
            return None;
        }
        let m = q1 / g;
        if m == 1 {
            return Some(0);
        }
        let inv = modinv((lx / g) % m, m)?;
        Some(((la / g) % m) * inv % m)
    }

    /// Prime subfield check: the element is a constant residue.
    pub fn is_prime_subfield(&self, a: Elem) -> bool {
        a.0 < self.0.p
    }

    pub fn format_elem(&self, a: Elem, style: ElemStyle) -> String {
        if self.0.n == 1 {
            return a.0.to_string();
        }
        if style == ElemStyle::DiscreteLog {
            if a.0 == 0 {
                return "0".into();
            }
            if let Some(k) = self.log_x(a) {
                return match k {
                    0 => "1".into(),
                    1 => "g".into(),
                    _ => format!("g^{k}"),
                };
            }
        }
        let c = self.coeffs(a);
        let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        format!("[{}]", body.join(","))
    }

    /// Parses `123`, `-4`, `g`, `g^k` or `[c0,c1,...]`.
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::BadCoefficient {
            pos: 0,
            msg: format!("{msg}: '{text}'"),
        };
        if let Some(inner) = t.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| bad("unclosed bracket"))?;
            let vals: std::result::Result<Vec<u64>, _> =
                inner.split(',').map(|v| v.parse::<u64>()).collect();
            let vals = vals.map_err(|_| bad("bad coefficient list"))?;
            let vals: Vec<u32> = vals.iter().map(|&v| (v % self.0.p as u64) as u32).collect();
            return self.from_coeffs(&vals).map_err(|_| bad("too many coefficients"));
        }
        if let Some(rest) = t.strip_prefix('g') {
            if self.0.n == 1 {
                return Err(bad("g is only defined in extension fields"));
            }
            let k: u64 = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| bad("bad exponent"))?
            };
            return Ok(self.pow_u(self.generator(), k));
        }
        let v: i128 = t.parse().map_err(|_| bad("not a number"))?;
        Ok(Elem(v.rem_euclid(self.0.p as i128) as u32))
    }

    /// The canonical embedding of `self` into `target` (cached).
    pub fn embed(&self, target: &Gf) -> Result<Embedding> {
        let (p, ns, nt) = (self.0.p, self.0.n, target.0.n);
        if target.0.p != p || nt % ns != 0 {
            return Err(Error::NotAnExtension {
                from: self.0.q as u64,
                to: target.0.q as u64,
            });
        }
        let key = (p, ns, nt);
        if let Some(e) = embeddings().lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let emb = build_embedding(self, target)?;
        let mut reg = embeddings().lock().unwrap();
        Ok(reg.entry(key).or_insert(emb).clone())
    }

    /// The field GF(q^k) for this field's q.
    pub fn extension(&self, k: u32) -> Result<Gf> {
        Gf::new(self.0.p as u64, self.0.n * k)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn modinv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

fn build_tables(p: u32, n: u32) -> FieldData {
    let modulus = canonical_modulus(p, n);
    let q = p.pow(n);
    let q1 = q - 1;
    let mul_slow = |a: u32, b: u32| -> u32 {
        if n == 1 {
            return (a as u64 * b as u64 % p as u64) as u32;
        }
        let r = fp::mulmod(&digits(a, p, n), &digits(b, p, n), &modulus, p);
        let mut r = r;
        r.resize(n as usize, 0);
        undigits(&r, p)
    };
    let pow_slow = |a: u32, mut e: u64| -> u32 {
        let mut acc = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_slow(acc, b);
            }
            b = mul_slow(b, b);
            e >>= 1;
        }
        acc
    };
    let factors = prime_factors(q1 as u64);
    let is_primitive = |g: u32| -> bool {
        g != 0 && factors.iter().all(|&r| pow_slow(g, q1 as u64 / r) != 1)
    };
    let x_idx = if n > 1 { p } else { 0 };
    let g = if q == 2 {
        1
    } else if n > 1 && is_primitive(x_idx) {
        x_idx
    } else {
        (1..q).find(|&c| is_primitive(c)).expect("primitive element exists")
    };

    let mut exp = vec![0u32; 2 * q1 as usize];
    let mut log = vec![NONE; q as usize];
    let mut cur = 1u32;
    for i in 0..q1 {
        exp[i as usize] = cur;
        exp[(i + q1) as usize] = cur;
        log[cur as usize] = i;
        cur = if g == x_idx && n > 1 {
            // multiply by x: shift and reduce by the monic modulus
            let mut c = digits(cur, p, n);
            let carry = c[n as usize - 1];
            for i in (1..n as usize).rev() {
                c[i] = c[i - 1];
            }
            c[0] = 0;
            for (i, ci) in c.iter_mut().enumerate() {
                let sub = (carry as u64 * modulus[i] as u64 % p as u64) as u32;
                *ci = (*ci + p - sub) % p;
            }
            undigits(&c, p)
        } else {
            mul_slow(cur, g)
        };
    }
    debug_assert_eq!(cur, 1);

    let mut zech = Vec::new();
    if p != 2 && n > 1 {
        zech = vec![NONE; q1 as usize];
        for k in 0..q1 {
            let v = exp[k as usize];
            // add one to the constant coefficient
            let c0 = v % p;
            let w = if c0 == p - 1 { v - (p - 1) } else { v + 1 };
            if w != 0 {
                zech[k as usize] = log[w as usize];
            }
        }
    }
    let neg_one_log = if p == 2 { 0 } else { q1 / 2 };
    let x_log = if n > 1 { Some(log[x_idx as usize]) } else { None };
    FieldData {
        p,
        n,
        q,
        modulus,
        exp,
        log,
        zech,
        neg_one_log,
        x_log,
    }
}

struct EmbeddingData {
    source: Gf,
    target: Gf,
    image_of_generator: Elem,
    image: Vec<u32>,
    preimage: Vec<u32>,
}

/// A field homomorphism GF(p^s) -> GF(p^{sk}) sending `x` to a fixed root of
/// the source modulus.
#[derive(Clone)]
pub struct Embedding(Arc<EmbeddingData>);

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.0.source, self.0.target)
    }
}

fn build_embedding(source: &Gf, target: &Gf) -> Result<Embedding> {
    let m = source.modulus();
    let eval = |x: Elem| {
        m.iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| target.add(target.mul(acc, x), Elem(c)))
    };
    // a field embeds into itself by the identity, not by a Frobenius twist
    let root = if source.degree() == target.degree() {
        target.generator()
    } else {
        target
            .elements()
            .find(|&x| eval(x).is_zero())
            .ok_or(Error::RootNotFound)?
    };
    let ns = source.degree() as usize;
    let mut powers = Vec::with_capacity(ns);
    let mut cur = Elem::ONE;
    for _ in 0..ns {
        powers.push(cur);
        cur = target.mul(cur, root);
    }
    let mut image = Vec::with_capacity(source.order() as usize);
    let mut preimage = vec![NONE; target.order() as usize];
    for e in source.elements() {
        let c = source.coeffs(e);
        let v = c.iter().zip(&powers).fold(Elem::ZERO, |acc, (&ci, &pw)| {
            target.add(acc, target.mul(Elem(ci), pw))
        });
        image.push(v.0);
        preimage[v.0 as usize] = e.0;
    }
    Ok(Embedding(Arc::new(EmbeddingData {
        source: source.clone(),
        target: target.clone(),
        image_of_generator: if source.degree() == 1 { Elem::ZERO } else { root },
        image,
        preimage,
    })))
}

impl Embedding {
    pub fn source(&self) -> &Gf {
        &self.0.source
    }

    pub fn target(&self) -> &Gf {
        &self.0.target
    }

    pub fn image_of_generator(&self) -> Elem {
        self.0.image_of_generator
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        Elem(self.0.image[e.0 as usize])
    }

    /// The source element mapping to `e`, if `e` lies in the image.
    pub fn preimage(&self, e: Elem) -> Option<Elem> {
        match self.0.preimage.get(e.0 as usize) {
            Some(&v) if v != NONE => Some(Elem(v)),
            _ => None,
        }
    }
}

/// An element bundled with its field, with checked arithmetic.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Gf,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.field.format_elem(self.value, ElemStyle::Coefficients)
        )
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.field.format_elem(self.value, ElemStyle::Coefficients)
        )
    }
}

impl FieldElement {
    pub fn new(field: &Gf, value: Elem) -> Result<Self> {
        if !field.contains(value) {
            return Err(Error::Invalid(format!("{value:?} is not in {field:?}")));
        }
        Ok(FieldElement {
            field: field.clone(),
            value,
        })
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            Err(Error::FieldMismatch)
        } else {
            Ok(())
        }
    }

    fn wrap(&self, value: Elem) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(self.value)
            .map(|v| self.wrap(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        self.field
            .pow(self.value, n)
            .map(|v| self.wrap(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn frobenius(&self, r: u32) -> Self {
        self.wrap(self.field.frobenius(self.value, r))
    }

    pub fn embed(&self, emb: &Embedding) -> Result<Self> {
        if emb.source() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement {
            field: emb.target().clone(),
            value: emb.apply(self.value),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, n: u32) -> Gf {
        Gf::new(p, n).unwrap()
    }

    /// Brute-force scan for the smallest monic irreducible, irreducibility by
    /// the absence of roots (valid in degrees 2 and 3).
    fn smallest_rootless(p: u32, n: u32) -> Vec<u32> {
        for idx in 0..p.pow(n) {
            let mut f = digits(idx, p, n);
            f.push(1);
            let rootless = (0..p).all(|x| {
                f.iter()
                    .rev()
                    .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64)
                    != 0
            });
            if rootless {
                return f;
            }
        }
        unreachable!()
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(gf(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(gf(3, 1).modulus(), &[0, 1]);
        assert_eq!(smallest_rootless(3, 3), vec![1, 2, 0, 1]);
        assert_eq!(gf(3, 3).modulus(), &[1, 2, 0, 1]);
        assert_eq!(gf(3, 2).modulus(), smallest_rootless(3, 2).as_slice());
        assert_eq!(gf(2, 3).modulus(), smallest_rootless(2, 3).as_slice());
        assert_eq!(gf(2, 4).modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn build_errors() {
        assert_eq!(Gf::new(4, 1).unwrap_err(), Error::NonPrimeCharacteristic(4));
        assert!(matches!(
            Gf::new(2, 40).unwrap_err(),
            Error::FieldTooLarge { .. }
        ));
        assert_eq!(Gf::new(3, 0).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn gf4_generator_squares() {
        let f = gf(2, 2);
        let g = f.generator();
        assert_eq!(f.mul(g, g), f.add(g, f.one()));
        assert_eq!(f.frobenius(g, 1), f.add(g, f.one()));
    }

    #[test]
    fn multiplicative_order() {
        for (p, n) in [(2, 2), (3, 3), (5, 1), (3, 2), (7, 2)] {
            let f = gf(p, n);
            for e in f.nonzero() {
                assert_eq!(f.pow(e, f.order() as i64 - 1), Some(f.one()));
                assert_eq!(f.pow_u(e, f.order() as u64), e);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf(3, 3);
        let g = f.generator();
        let gi = f.inv(g).unwrap();
        assert_eq!(f.mul(g, gi), f.one());
        assert_eq!(f.inv(Elem::ZERO), None);
        assert_eq!(f.pow(g, -1), Some(gi));
        assert_eq!(f.pow(Elem::ZERO, -1), None);
    }

    /// Schoolbook polynomial-basis arithmetic, independent of the tables.
    fn slow_mul(f: &Gf, a: Elem, b: Elem) -> Elem {
        let p = f.characteristic();
        let n = f.degree();
        let mut r = fp::mulmod(&f.coeffs(a), &f.coeffs(b), f.modulus(), p);
        r.resize(n as usize, 0);
        Elem(undigits(&r, p))
    }

    fn slow_add(f: &Gf, a: Elem, b: Elem) -> Elem {
        let p = f.characteristic();
        let c: Vec<u32> = f
            .coeffs(a)
            .iter()
            .zip(f.coeffs(b))
            .map(|(x, y)| (x + y) % p)
            .collect();
        Elem(undigits(&c, p))
    }

    #[test]
    fn tables_match_polynomial_basis() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)] {
            let f = gf(p, n);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), slow_mul(&f, a, b), "{f:?} {a:?}*{b:?}");
                    assert_eq!(f.add(a, b), slow_add(&f, a, b), "{f:?} {a:?}+{b:?}");
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, n) in [(2, 2), (3, 2), (3, 3), (2, 4)] {
            let f = gf(p, n);
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in els.iter().step_by(if f.order() > 16 { 5 } else { 1 }) {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
                assert_eq!(f.add(a, Elem::ZERO), a);
                assert_eq!(f.mul(a, f.one()), a);
                if let Some(ai) = f.inv(a) {
                    assert_eq!(f.mul(a, ai), f.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_map() {
        for (p, n) in [(2, 2), (3, 3), (3, 2)] {
            let f = gf(p, n);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        f.frobenius(f.add(a, b), 1),
                        f.add(f.frobenius(a, 1), f.frobenius(b, 1))
                    );
                    assert_eq!(
                        f.frobenius(f.mul(a, b), 1),
                        f.mul(f.frobenius(a, 1), f.frobenius(b, 1))
                    );
                }
                assert_eq!(f.frobenius(a, n), a);
            }
        }
        let f = gf(3, 1);
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 5), a);
        }
    }

    #[test]
    fn enumeration() {
        let f2 = gf(2, 1);
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![Elem(0), Elem(1)]);
        let f4 = gf(2, 2);
        assert_eq!(f4.elements().count(), 4);
        assert_eq!(f4.elements().next(), Some(Elem::ZERO));
        let f27 = gf(3, 3);
        let mut seen = std::collections::HashSet::new();
        for e in f27.elements() {
            assert!(seen.insert(f27.coeffs(e)));
        }
        assert_eq!(seen.len(), 27);
    }

    #[test]
    fn embeddings() {
        let f2 = gf(2, 1);
        let f4 = gf(2, 2);
        let f8 = gf(2, 3);
        let f16 = gf(2, 4);
        let e = f2.embed(&f4).unwrap();
        assert_eq!(e.apply(Elem(1)), f4.one());
        assert_eq!(e.apply(Elem(0)), Elem::ZERO);
        assert!(matches!(
            f4.embed(&f8).unwrap_err(),
            Error::NotAnExtension { .. }
        ));

        let e = f4.embed(&f16).unwrap();
        // exhaustive oracle: the first root of x^2+x+1 among the 16 elements
        let first = f16
            .elements()
            .find(|&r| f16.add(f16.add(f16.mul(r, r), r), f16.one()).is_zero())
            .unwrap();
        assert_eq!(e.image_of_generator(), first);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(e.apply(f4.add(a, b)), f16.add(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(f4.mul(a, b)), f16.mul(e.apply(a), e.apply(b)));
            }
            // q-power Frobenius commutes with the embedding
            assert_eq!(e.apply(f4.frobenius(a, 1)), f16.frobenius(e.apply(a), 1));
            assert_eq!(e.preimage(e.apply(a)), Some(a));
            assert_eq!(f16.frobenius(e.apply(a), 2), e.apply(a));
        }
        let again = f4.embed(&f16).unwrap();
        assert_eq!(again.image_of_generator(), e.image_of_generator());
    }

    #[test]
    fn text_format() {
        let f4 = gf(2, 2);
        let g = f4.generator();
        assert_eq!(f4.format_elem(g, ElemStyle::Coefficients), "[0,1]");
        assert_eq!(f4.format_elem(g, ElemStyle::DiscreteLog), "g");
        let g2 = f4.mul(g, g);
        assert_eq!(f4.format_elem(g2, ElemStyle::DiscreteLog), "g^2");
        assert_eq!(f4.parse_elem("g^2").unwrap(), g2);
        assert_eq!(f4.parse_elem("[1, 1]").unwrap(), g2);
        assert_eq!(f4.parse_elem("3").unwrap(), f4.one());
        let f5 = gf(5, 1);
        assert_eq!(f5.parse_elem("-1").unwrap(), Elem(4));
        assert!(f5.parse_elem("g").is_err());
        let f9 = gf(3, 2);
        // x is not primitive in GF(9) = GF(3)[x]/(x^2+1)
        for e in f9.elements() {
            let s = f9.format_elem(e, ElemStyle::DiscreteLog);
            assert_eq!(f9.parse_elem(&s).unwrap(), e);
        }
    }

    #[test]
    fn checked_elements() {
        let f4 = gf(2, 2);
        let f9 = gf(3, 2);
        let a = FieldElement::new(&f4, f4.generator()).unwrap();
        let b = FieldElement::new(&f9, f9.one()).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), Error::FieldMismatch);
        let zero = FieldElement::new(&f4, Elem::ZERO).unwrap();
        assert_eq!(zero.inv().unwrap_err(), Error::DivisionByZero);
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap().value(), f4.one());
    }

    #[test]
    fn larger_field_has_consistent_tables() {
        let f = gf(3, 6);
        let g = f.generator();
        let mut acc = f.one();
        for _ in 0..f.order() - 1 {
            acc = f.mul(acc, g);
        }
        assert_eq!(acc, f.one());
        assert!(is_irreducible_over_prime_field(f.modulus(), 3));
    }
}
