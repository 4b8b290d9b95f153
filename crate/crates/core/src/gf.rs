//! Arithmetic in GF(p^e) for small prime powers.
//!
//! Elements are identified by an integer index in `[0, q)`: the base-p digits
//! of the index are the coefficients of the element in the polynomial basis
//! `1, t, t^2, ...` modulo the field's defining polynomial. For prime fields
//! the index is simply the residue. The encoding fixes a total order on the
//! field that is used wherever a canonical order is needed (orbit
//! representatives, exports).
//!
//! Fields of order up to 2^12 use log/antilog tables (with a Zech table for
//! addition in extension fields); larger fields fall back to schoolbook
//! polynomial arithmetic.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Fields up to this order get log/antilog tables.
pub const TABLE_THRESHOLD: u32 = 1 << 12;

const NO_ZECH: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    NonPrimeCharacteristic(u32),
    ZeroDegree,
    FieldTooLarge { p: u32, e: u32 },
    NotAPrimePower(u32),
    InvalidModulus,
    ReducibleModulus,
    DivisionByZero,
    MixedFields,
    OutOfRange { index: u32, order: u32 },
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::NonPrimeCharacteristic(p) => write!(f, "characteristic {p} is not prime"),
            GfError::ZeroDegree => write!(f, "extension degree must be at least 1"),
            GfError::FieldTooLarge { p, e } => {
                write!(f, "field {p}^{e} exceeds the supported order {MAX_ORDER}")
            }
            GfError::NotAPrimePower(q) => write!(f, "{q} is not a prime power"),
            GfError::InvalidModulus => {
                write!(f, "modulus must be monic of the extension degree with digits below p")
            }
            GfError::ReducibleModulus => write!(f, "modulus is reducible"),
            GfError::DivisionByZero => write!(f, "division by zero"),
            GfError::MixedFields => write!(f, "elements belong to different fields"),
            GfError::OutOfRange { index, order } => {
                write!(f, "index {index} is not an element of a field of order {order}")
            }
        }
    }
}

impl core::error::Error for GfError {}

/// An element of some [`Field`], stored as its canonical index.
///
/// Carries no reference to its field: arithmetic goes through the owning
/// [`Field`]. Use [`Scalar`] when the field must travel with the value.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Debug)]
enum Backend {
    Tables {
        /// `exp[i] = xi^i` for `i < 2(q-1)`, doubled to skip a reduction.
        exp: Vec<u32>,
        /// `log[a]` for `a != 0`.
        log: Vec<u32>,
        /// `zech[n] = log(1 + xi^n)`, or `NO_ZECH` when `1 + xi^n = 0`.
        zech: Vec<u32>,
    },
    Schoolbook,
}

#[derive(Debug)]
struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    xi: FieldElement,
    backend: Backend,
}

/// A finite field GF(p^e) with a fixed element encoding and primitive element.
///
/// Cloning is cheap and yields the same field instance; two fields built
/// separately are distinct instances even when their parameters agree.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("e", &self.0.e)
            .field("modulus", &self.0.modulus)
            .field("xi", &self.0.xi)
            .finish()
    }
}

impl Field {
    /// Builds GF(p^e).
    ///
    /// `modulus` lists the coefficients of the defining polynomial from the
    /// constant term up, and must be monic of degree `e`. Without one, the
    /// irreducible monic polynomial with the smallest digit encoding of its
    /// lower coefficients is chosen.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = checked_pow(p, e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(GfError::FieldTooLarge { p, e })?;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(GfError::InvalidModulus);
                }
                if !poly_is_irreducible(m, p) {
                    return Err(GfError::ReducibleModulus);
                }
                m.to_vec()
            }
            None => default_modulus(p, e),
        };

        let mut inner = FieldInner {
            p,
            e,
            q,
            modulus,
            xi: FieldElement::ONE,
            backend: Backend::Schoolbook,
        };
        inner.xi = find_primitive(&inner);
        if q <= TABLE_THRESHOLD {
            inner.backend = build_tables(&inner);
        }
        Ok(Field(Arc::new(inner)))
    }

    /// Builds the field of order `q`, factoring `q` as a prime power.
    pub fn with_order(q: u32, modulus: Option<&[u32]>) -> Result<Field, GfError> {
        let (p, e) = prime_power(q).ok_or(GfError::NotAPrimePower(q))?;
        Field::new(p, e, modulus)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The primitive element: the generator of the multiplicative group with
    /// the smallest index.
    #[inline]
    pub fn primitive(&self) -> FieldElement {
        self.0.xi
    }

    /// Whether both handles refer to the same field instance.
    #[inline]
    pub fn same(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn uses_tables(&self) -> bool {
        matches!(self.0.backend, Backend::Tables { .. })
    }

    pub fn elem(&self, index: u32) -> Result<FieldElement, GfError> {
        if index < self.0.q {
            Ok(FieldElement(index))
        } else {
            Err(GfError::OutOfRange { index, order: self.0.q })
        }
    }

    /// Element at `index`, which the caller guarantees is below `q`.
    #[inline]
    pub fn elem_unchecked(&self, index: u32) -> FieldElement {
        debug_assert!(index < self.0.q);
        FieldElement(index)
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Image of an integer under the canonical map Z -> GF(p) -> GF(q).
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in increasing index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(FieldElement)
    }

    /// Base-p digits of the element, least significant first, `e` of them.
    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        to_digits(a.0, self.0.p, self.0.e)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let f = &*self.0;
        if f.e == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= f.p { s - f.p } else { s });
        }
        match &f.backend {
            Backend::Tables { exp, log, zech } => {
                if a.0 == 0 {
                    return b;
                }
                if b.0 == 0 {
                    return a;
                }
                let n = f.q - 1;
                let la = log[a.0 as usize];
                let lb = log[b.0 as usize];
                let diff = if lb >= la { lb - la } else { lb + n - la };
                let z = zech[diff as usize];
                if z == NO_ZECH {
                    FieldElement::ZERO
                } else {
                    FieldElement(exp[(la + z) as usize])
                }
            }
            Backend::Schoolbook => FieldElement(digitwise(a.0, b.0, f.p, f.e, |x, y, p| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let f = &*self.0;
        if a.0 == 0 {
            return a;
        }
        if f.e == 1 {
            return FieldElement(f.p - a.0);
        }
        FieldElement(digitwise(a.0, 0, f.p, f.e, |x, _, p| if x == 0 { 0 } else { p - x }))
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let f = &*self.0;
        if f.e == 1 {
            return FieldElement(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + f.p - b.0 });
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let f = &*self.0;
        match &f.backend {
            Backend::Tables { exp, log, .. } => {
                FieldElement(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
            }
            Backend::Schoolbook => FieldElement(schoolbook_mul(f, a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let f = &*self.0;
        Ok(match &f.backend {
            Backend::Tables { exp, log, .. } => {
                let n = f.q - 1;
                let l = log[a.0 as usize];
                FieldElement(exp[((n - l) % n) as usize])
            }
            Backend::Schoolbook => self.pow(a, (f.q - 2) as u64),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn arith(&self, a: FieldElement, b: FieldElement, op: ArithOp) -> FieldElement {
        match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64, GfError> {
        if a.is_zero() {
            return Err(GfError::DivisionByZero);
        }
        Ok(order_in(&self.0, a.0))
    }

    /// Binds an element to this field.
    pub fn scalar(&self, a: FieldElement) -> Scalar {
        Scalar { field: self.clone(), value: a }
    }
}

/// A field element together with the field it belongs to.
///
/// Binary operations check that both operands come from the same field
/// instance and report [`GfError::MixedFields`] otherwise.
#[derive(Clone, Debug)]
pub struct Scalar {
    field: Field,
    value: FieldElement,
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> FieldElement {
        self.value
    }

    fn check(&self, other: &Scalar) -> Result<(), GfError> {
        if self.field.same(&other.field) {
            Ok(())
        } else {
            Err(GfError::MixedFields)
        }
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar, GfError> {
        self.check(other)?;
        Ok(self.field.scalar(self.field.arith(self.value, other.value, op)))
    }

    pub fn neg(&self) -> Scalar {
        self.field.scalar(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Scalar, GfError> {
        Ok(self.field.scalar(self.field.inv(self.value)?))
    }

    pub fn pow(&self, n: u64) -> Scalar {
        self.field.scalar(self.field.pow(self.value, n))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.value == other.value
    }
}

// ---------------------------------------------------------------------------
// integer helpers

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_pow(p: u32, e: u32) -> Option<u32> {
    let mut acc: u32 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// `q = p^e` with `p` prime, if such a decomposition exists.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
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

fn to_digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut d = vec![0; e as usize];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

#[inline]
fn digitwise(a: u32, b: u32, p: u32, e: u32, op: impl Fn(u32, u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..e {
        out += op(a % p, b % p, p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

// ---------------------------------------------------------------------------
// polynomials over GF(p), little-endian coefficient vectors

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            let slot = &mut r[shift + i];
            *slot = (*slot + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn poly_is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for lower in 0..count {
            let mut cand = to_digits(lower, p, d as u32);
            cand.push(1);
            if poly_rem_monic(m, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = p.pow(e);
    for lower in 0..count {
        let mut cand = to_digits(lower, p, e);
        cand.push(1);
        if poly_is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn schoolbook_mul(f: &FieldInner, a: u32, b: u32) -> u32 {
    let p = f.p;
    if f.e == 1 {
        return (a as u64 * b as u64 % p as u64) as u32;
    }
    let da = to_digits(a, p, f.e);
    let db = to_digits(b, p, f.e);
    let mut prod = vec![0u32; 2 * f.e as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem_monic(&prod, &f.modulus, p);
    r.resize(f.e as usize, 0);
    from_digits(&r, p)
}

fn order_in(f: &FieldInner, a: u32) -> u64 {
    let n = (f.q - 1) as u64;
    let pow = |x: u32, mut k: u64| {
        let mut base = x;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = schoolbook_mul(f, acc, base);
            }
            base = schoolbook_mul(f, base, base);
            k >>= 1;
        }
        acc
    };
    let mut ord = n;
    for r in distinct_prime_factors(n) {
        while ord % r == 0 && pow(a, ord / r) == 1 {
            ord /= r;
        }
    }
    ord
}

fn find_primitive(f: &FieldInner) -> FieldElement {
    if f.q == 2 {
        return FieldElement::ONE;
    }
    let n = (f.q - 1) as u64;
    (1..f.q)
        .find(|&a| order_in(f, a) == n)
        .map(FieldElement)
        .expect("the multiplicative group of a finite field is cyclic")
}

fn build_tables(f: &FieldInner) -> Backend {
    let n = (f.q - 1) as usize;
    let mut exp = vec![0u32; 2 * n.max(1)];
    let mut log = vec![0u32; f.q as usize];
    let mut x = 1u32;
    for i in 0..n {
        exp[i] = x;
        log[x as usize] = i as u32;
        x = schoolbook_mul(f, x, f.xi.0);
    }
    for i in n..2 * n {
        exp[i] = exp[i - n];
    }
    let one_digits = |v: u32| {
        let mut d = to_digits(v, f.p, f.e);
        d[0] = (d[0] + 1) % f.p;
        from_digits(&d, f.p)
    };
    let zech = (0..n)
        .map(|i| {
            let s = one_digits(exp[i]);
            if s == 0 {
                NO_ZECH
            } else {
                log[s as usize]
            }
        })
        .collect();
    Backend::Tables { exp, log, zech }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<Field> {
        [2u32, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]
            .iter()
            .map(|&q| Field::with_order(q, None).unwrap())
            .collect()
    }

    #[test]
    fn prime_field_examples() {
        let f7 = Field::new(7, 1, None).unwrap();
        let e = |i| f7.elem(i).unwrap();
        assert_eq!(f7.add(e(3), e(5)), e(1));
        assert_eq!(f7.inv(e(3)).unwrap(), e(5));
        assert_eq!(f7.sub(e(2), e(5)), e(4));
        assert_eq!(f7.neg(e(1)), e(6));
    }

    #[test]
    fn primitive_element_is_smallest_generator() {
        // Brute-force oracle: smallest a whose powers hit every nonzero element.
        for q in [3u32, 5, 7, 9, 11, 13, 25, 27] {
            let f = Field::with_order(q, None).unwrap();
            let oracle = (1..q)
                .find(|&a| {
                    let a = f.elem(a).unwrap();
                    let mut seen = alloc::collections::BTreeSet::new();
                    let mut x = f.one();
                    for _ in 0..q - 1 {
                        seen.insert(x);
                        x = f.mul(x, a);
                    }
                    seen.len() as u32 == q - 1
                })
                .unwrap();
            assert_eq!(f.primitive().index(), oracle, "q = {q}");
        }
        assert_eq!(Field::new(7, 1, None).unwrap().primitive().index(), 3);
    }

    #[test]
    fn gf9_with_t_squared_plus_one() {
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.order(), 9);
        // t has index 3 (digits [0, 1]).
        let t = f.elem(3).unwrap();
        assert_eq!(f.mul(t, t), f.elem(2).unwrap());
        // the default modulus for 3^2 is t^2 + 1 as well
        assert_eq!(Field::with_order(9, None).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), GfError::NonPrimeCharacteristic(4));
        assert_eq!(Field::new(3, 0, None).unwrap_err(), GfError::ZeroDegree);
        // t^2 + 2 = (t+1)(t+2) over GF(3)
        assert_eq!(Field::new(3, 2, Some(&[2, 0, 1])).unwrap_err(), GfError::ReducibleModulus);
        assert_eq!(Field::new(3, 2, Some(&[1, 0, 2])).unwrap_err(), GfError::InvalidModulus);
        assert_eq!(Field::with_order(12, None).unwrap_err(), GfError::NotAPrimePower(12));
        assert!(matches!(Field::new(2, 17, None), Err(GfError::FieldTooLarge { .. })));
    }

    #[test]
    fn inv_zero_is_an_error() {
        let f = Field::new(5, 1, None).unwrap();
        assert_eq!(f.inv(f.zero()), Err(GfError::DivisionByZero));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = Field::new(5, 1, None).unwrap();
        let b = Field::new(5, 1, None).unwrap();
        let x = a.scalar(a.one());
        let y = b.scalar(b.one());
        assert_eq!(x.arith(&y, ArithOp::Add), Err(GfError::MixedFields));
        let z = a.scalar(a.one());
        assert_eq!(x.arith(&z, ArithOp::Add).unwrap().value().index(), 2);
    }

    #[test]
    fn enumeration_starts_with_zero_and_one() {
        for f in all_fields() {
            let elems: Vec<_> = f.elements().collect();
            assert_eq!(elems.len() as u32, f.order());
            assert_eq!(elems[0], f.zero());
            assert_eq!(elems[1], f.one());
            assert!(elems.windows(2).all(|w| w[0] < w[1]));
        }
        let f5: Vec<u32> =
            Field::new(5, 1, None).unwrap().elements().map(|x| x.index()).collect();
        assert_eq!(f5, [0, 1, 2, 3, 4]);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for f in all_fields().into_iter().filter(|f| f.order() <= 13) {
            let el: Vec<_> = f.elements().collect();
            for &a in &el {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                    assert_eq!(f.pow(a, (f.order() - 1) as u64), f.one());
                }
                assert_eq!(f.pow(a, f.order() as u64), a);
                for &b in &el {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                    for &c in &el {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_schoolbook() {
        for f in all_fields() {
            let inner = &*f.0;
            for a in 0..f.order() {
                for b in 0..f.order() {
                    let (x, y) = (FieldElement(a), FieldElement(b));
                    assert_eq!(f.mul(x, y).0, schoolbook_mul(inner, a, b));
                    let s = digitwise(a, b, inner.p, inner.e, |u, v, p| (u + v) % p);
                    assert_eq!(f.add(x, y).0, s);
                }
            }
        }
    }

    #[test]
    fn schoolbook_backend_for_large_fields() {
        let f = Field::with_order(1 << 13, None).unwrap();
        assert!(!f.uses_tables());
        let xi = f.primitive();
        assert_eq!(f.multiplicative_order(xi).unwrap(), (1 << 13) - 1);
        let a = f.elem(1234).unwrap();
        assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        assert_eq!(f.add(a, a), f.zero());
        let g = Field::with_order(4099, None).unwrap();
        assert!(!g.uses_tables());
        let b = g.elem(4000).unwrap();
        assert_eq!(g.mul(b, g.inv(b).unwrap()), g.one());
    }

    #[test]
    fn power_map_image_size() {
        // |{x^M : x != 0}| = (q-1)/gcd(M, q-1)
        for f in all_fields() {
            let n = (f.order() - 1) as u64;
            for m_exp in 1..12u64 {
                let mut image = alloc::collections::BTreeSet::new();
                for a in f.elements().skip(1) {
                    image.insert(f.pow(a, m_exp));
                }
                assert_eq!(image.len() as u64, n / crate::count::gcd(m_exp, n));
            }
        }
    }

    #[test]
    fn from_int_reduces_mod_p() {
        let f = Field::with_order(9, None).unwrap();
        assert_eq!(f.from_int(-1), f.elem(2).unwrap());
        assert_eq!(f.from_int(4), f.one());
    }
}
