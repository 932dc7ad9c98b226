//! Elements of K = F_q(T).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FqElem, FqField};
use crate::poly::Poly;

/// `num / den` in lowest terms with `den` monic. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl Hash for RatFn {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for RatFn {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Denominator first, then numerator, both in canonical polynomial order.
/// Polynomials therefore sort exactly as they do in `Poly`.
impl Ord for RatFn {
    fn cmp(&self, other: &Self) -> Ordering {
        self.den.cmp(&other.den).then_with(|| self.num.cmp(&other.num))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        let one = Poly::one(p.field());
        RatFn { num: p, den: one }
    }
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            let one = Poly::one(num.field());
            return RatFn { num, den: one };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) =
            if g.is_one() { (num, den) } else { (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap()) };
        if !d.is_monic() {
            let inv = d.field().inv(d.leading()).unwrap();
            n = n.scale(inv);
            d = d.scale(inv);
        }
        RatFn { num: n, den: d }
    }

    pub fn zero(field: &FqField) -> Self {
        Poly::zero(field).into()
    }

    pub fn one(field: &FqField) -> Self {
        Poly::one(field).into()
    }

    pub fn t(field: &FqField) -> Self {
        Poly::t(field).into()
    }

    pub fn constant(field: &FqField, c: FqElem) -> Self {
        Poly::constant(field, c).into()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &FqField {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The element as a polynomial, if it is one.
    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_poly().then_some(&self.num)
    }

    /// Constant value, if this lies in F_q.
    pub fn as_constant(&self) -> Option<FqElem> {
        (self.is_poly() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.degree_or_neg() - self.den.degree_or_neg())
    }

    pub fn add_ref(&self, o: &RatFn) -> RatFn {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::reduce(self.num.add_ref(&o.num), self.den.clone());
        }
        Self::reduce(self.num.mul_ref(&o.den).add_ref(&o.num.mul_ref(&self.den)), self.den.mul_ref(&o.den))
    }

    pub fn neg_ref(&self) -> RatFn {
        RatFn { num: self.num.neg_ref(), den: self.den.clone() }
    }

    pub fn sub_ref(&self, o: &RatFn) -> RatFn {
        self.add_ref(&o.neg_ref())
    }

    pub fn mul_ref(&self, o: &RatFn) -> RatFn {
        if self.is_zero() || o.is_zero() {
            return RatFn::zero(self.field());
        }
        // Cross-cancel first so the final gcd works on smaller inputs.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = o.den.exact_div(&g1).unwrap();
        let n2 = o.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let num = n1.mul_ref(&n2);
        let den = d1.mul_ref(&d2);
        let inv = den.field().inv(den.leading()).unwrap();
        RatFn { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn scale(&self, c: FqElem) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.field());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFn> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div_ref(&self, o: &RatFn) -> Result<RatFn> {
        Ok(self.mul_ref(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<RatFn> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        // numerator and denominator stay coprime under powering
        Ok(RatFn { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// `self^(q^k)`.
    pub fn frobenius(&self, k: u32) -> RatFn {
        RatFn { num: self.num.frobenius(k), den: self.den.frobenius(k) }
    }

    /// Substitute `T -> x` into a polynomial.
    pub fn eval_poly(p: &Poly, x: &RatFn) -> RatFn {
        p.coeffs()
            .iter()
            .rev()
            .fold(RatFn::zero(p.field()), |acc, &c| acc.mul_ref(x).add_ref(&RatFn::constant(p.field(), c)))
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        self.add_ref(rhs)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self.sub_ref(rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        self.mul_ref(rhs)
    }
}

/// Panics on division by zero; use [`RatFn::div_ref`] for a checked version.
impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self.div_ref(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        self.neg_ref()
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains('+') || s.contains('-') || s.contains('/')
}

/// `num` for polynomials, otherwise `num/den` with parentheses around any
/// side that has more than one term.
impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let d = self.den.to_string();
        let n = if needs_parens(&n) { format!("({n})") } else { n };
        let d = if needs_parens(&d) || d.contains('*') { format!("({d})") } else { d };
        write!(f, "{n}/{d}")
    }
}
