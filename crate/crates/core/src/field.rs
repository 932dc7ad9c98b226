//! The finite field F_q, q = p^e, realised as F_p[x]/(modulus).
//!
//! Elements are stored as their coefficient vector over F_p packed into a
//! base-p integer (`c_0 + c_1 p + ... + c_{e-1} p^{e-1}`). Multiplication goes
//! through discrete log tables built once per field; fields are cheap to clone
//! and compare.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted. Log tables are `O(q)`.
pub const MAX_ORDER: u32 = 1 << 16;

/// Default moduli for proper extension fields with q ≤ 64, as ascending
/// coefficient lists over F_p. All of them are primitive, so the class of `x`
/// generates the multiplicative group.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 2, &[3, 6, 1]),
];

/// An element of some [`FqField`]. Meaningless without its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed base-p representation.
    pub fn raw(self) -> u32 {
        self.0
    }
}

struct Tables {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: FqElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    /// Elements in canonical order: 0, 1, then the rest.
    order: Vec<FqElem>,
    /// Inverse of `order`.
    rank: Vec<u32>,
}

/// Handle to a finite field. Cloning shares the underlying tables.
#[derive(Clone)]
pub struct FqField(Arc<Tables>);

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqField(q={} = {}^{})", self.q(), self.p(), self.e())
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FqField {}

/// Splits `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Irreducibility of a monic polynomial over F_p (ascending coefficients) by
/// trial division against every monic polynomial of degree at most half.
fn is_irreducible_over_prime(p: u32, f: &[u32]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        for idx in 0..(p as u64).pow(d as u32) {
            let mut g = vec![0u32; d + 1];
            let mut k = idx;
            for c in g.iter_mut().take(d) {
                *c = (k % p as u64) as u32;
                k /= p as u64;
            }
            g[d] = 1;
            if prime_rem(p, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn prime_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * gi) % p) % p;
            }
        }
        r.pop();
    }
    r
}

impl FqField {
    /// The field with `q` elements using the default modulus.
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q as u64))?;
        if e == 1 {
            return Self::with_modulus(p, &[0, 1]);
        }
        if let Some((_, _, m)) = DEFAULT_MODULI.iter().find(|(pp, ee, _)| *pp == p && *ee == e) {
            return Self::with_modulus(p, m);
        }
        // Outside the table: first irreducible monic of degree e with a
        // primitive root, in base-p order of the lower coefficients.
        for idx in 0..(p as u64).pow(e) {
            let mut m = vec![0u32; e as usize + 1];
            let mut k = idx;
            for c in m.iter_mut().take(e as usize) {
                *c = (k % p as u64) as u32;
                k /= p as u64;
            }
            m[e as usize] = 1;
            if m[0] != 0 && is_irreducible_over_prime(p, &m) {
                return Self::with_modulus(p, &m);
            }
        }
        Err(Error::ReducibleModulus)
    }

    /// The field F_p[x]/(modulus). `modulus` is given in ascending order and
    /// must be monic and irreducible over F_p; for prime fields pass `[0, 1]`.
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if prime_power(p) != Some((p, 1)) {
            return Err(Error::NotPrimePower(p as u64));
        }
        let e = modulus.len().saturating_sub(1) as u32;
        if e == 0 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::ReducibleModulus);
        }
        let q = (p as u64).pow(e);
        if q > MAX_ORDER as u64 {
            return Err(Error::Unsupported(format!("field order {q} exceeds {MAX_ORDER}")));
        }
        let q = q as u32;
        if e > 1 && !is_irreducible_over_prime(p, modulus) {
            return Err(Error::ReducibleModulus);
        }
        let mut t = Tables {
            p,
            e,
            q,
            modulus: modulus.to_vec(),
            generator: FqElem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            order: Vec::new(),
            rank: Vec::new(),
        };
        let raw = RawField { p, e, modulus };
        let generator = (1..q).find(|&g| raw.multiplicative_order(g) == q - 1).ok_or(Error::ReducibleModulus)?;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for k in 0..q - 1 {
            exp.push(cur);
            log[cur as usize] = k;
            cur = raw.mul(cur, generator);
        }
        let order: Vec<FqElem> = if e == 1 {
            (0..q).map(FqElem).collect()
        } else {
            std::iter::once(FqElem::ZERO).chain(exp.iter().map(|&v| FqElem(v))).collect()
        };
        let mut rank = vec![0u32; q as usize];
        for (i, el) in order.iter().enumerate() {
            rank[el.0 as usize] = i as u32;
        }
        t.generator = FqElem(generator);
        t.exp = exp;
        t.log = log;
        t.order = order;
        t.rank = rank;
        Ok(FqField(Arc::new(t)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.e == 1
    }

    /// The fixed primitive element `g` used for `g^k` notation.
    pub fn generator(&self) -> FqElem {
        self.0.generator
    }

    /// All elements in canonical order: 0, 1, then 2, 3, ... for prime
    /// fields and g, g^2, ... for extension fields.
    pub fn elements(&self) -> &[FqElem] {
        &self.0.order
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> &[FqElem] {
        &self.0.order[1..]
    }

    /// Position of `a` in [`FqField::elements`].
    pub fn rank(&self, a: FqElem) -> u32 {
        self.0.rank[a.0 as usize]
    }

    pub fn cmp_elems(&self, a: FqElem, b: FqElem) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }

    /// Element from its packed base-p representation.
    pub fn from_raw(&self, raw: u32) -> Option<FqElem> {
        (raw < self.0.q).then_some(FqElem(raw))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// `g^k` for the fixed generator.
    pub fn gen_pow(&self, k: i64) -> FqElem {
        let m = (self.0.q - 1) as i64;
        FqElem(self.0.exp[k.rem_euclid(m) as usize])
    }

    /// Discrete log base the generator; `None` for zero.
    pub fn log(&self, a: FqElem) -> Option<u32> {
        (!a.is_zero()).then(|| self.0.log[a.0 as usize])
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let t = &*self.0;
        if t.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        if t.e == 1 {
            let s = a.0 + b.0;
            return FqElem(if s >= t.p { s - t.p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % t.p + y % t.p) % t.p;
            out += d * place;
            place *= t.p;
            x /= t.p;
            y /= t.p;
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        let t = &*self.0;
        if t.p == 2 {
            return a;
        }
        if t.e == 1 {
            return FqElem(if a.0 == 0 { 0 } else { t.p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = x % t.p;
            out += ((t.p - d) % t.p) * place;
            place *= t.p;
            x /= t.p;
        }
        FqElem(out)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let t = &*self.0;
        let s = t.log[a.0 as usize] + t.log[b.0 as usize];
        let m = t.q - 1;
        FqElem(t.exp[(if s >= m { s - m } else { s }) as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.0;
        let m = t.q - 1;
        Ok(FqElem(t.exp[((m - t.log[a.0 as usize]) % m) as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, k: u64) -> FqElem {
        if k == 0 {
            return FqElem::ONE;
        }
        if a.is_zero() {
            return FqElem::ZERO;
        }
        let t = &*self.0;
        let m = (t.q - 1) as u64;
        let l = (t.log[a.0 as usize] as u64 * (k % m)) % m;
        FqElem(t.exp[l as usize])
    }

    /// Canonical text: decimal digits in prime fields, `g^k` otherwise.
    pub fn format_elem(&self, a: FqElem) -> String {
        if self.is_prime_field() {
            return a.0.to_string();
        }
        match self.log(a) {
            None => "0".to_string(),
            Some(0) => "1".to_string(),
            Some(1) => "g".to_string(),
            Some(k) => format!("g^{k}"),
        }
    }
}

/// Arithmetic on packed representations, used only while building tables.
struct RawField<'a> {
    p: u32,
    e: u32,
    modulus: &'a [u32],
}

impl RawField<'_> {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.e as usize];
        for c in d.iter_mut() {
            *c = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        let mut prod = vec![0u32; 2 * e - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        let r = if e == 1 { prod } else { prime_rem(self.p, &prod, self.modulus) };
        let mut r = r;
        r.resize(e, 0);
        self.pack(&r)
    }

    fn multiplicative_order(&self, g: u32) -> u32 {
        let mut cur = g;
        let mut k = 1;
        while cur != 1 {
            cur = self.mul(cur, g);
            k += 1;
            if k > self.p.pow(self.e) {
                return 0;
            }
        }
        k
    }
}
