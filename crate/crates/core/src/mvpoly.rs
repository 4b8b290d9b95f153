//! Sparse multivariate polynomials over a [`Field`] and the action of
//! permutations on their variables.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::gf::{Field, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    MixedContexts,
    WrongArity { expected: usize, got: usize },
    NotDivisible,
    DivisionByZeroPoly,
    NotAPermutation,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::MixedContexts => {
                write!(f, "polynomials live over different fields or variable counts")
            }
            PolyError::WrongArity { expected, got } => {
                write!(f, "expected {expected} variables or coordinates, got {got}")
            }
            PolyError::NotDivisible => write!(f, "division leaves a nonzero remainder"),
            PolyError::DivisionByZeroPoly => write!(f, "division by the zero polynomial"),
            PolyError::NotAPermutation => write!(f, "images do not form a permutation"),
        }
    }
}

impl core::error::Error for PolyError {}

/// An exponent vector, ordered graded-lexicographically: by total degree
/// first, then by the exponent of `x1`, then `x2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn one(m: usize) -> Monomial {
        Monomial(vec![0; m])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A permutation of `{1..m}`, stored 0-based as the image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
    even: bool,
}

impl Permutation {
    pub fn identity(m: usize) -> Permutation {
        Permutation { images: (0..m).collect(), even: true }
    }

    /// From 0-based images: `sigma(i) = images[i]`.
    pub fn from_images(images: Vec<usize>) -> Result<Permutation, PolyError> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(PolyError::NotAPermutation);
            }
            seen[i] = true;
        }
        let even = inversions(&images) % 2 == 0;
        Ok(Permutation { images, even })
    }

    /// From 1-based cycles, e.g. `&[&[1, 2, 3]]` for `(1 2 3)`.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Permutation, PolyError> {
        let mut images: Vec<usize> = (0..m).collect();
        let mut touched = vec![false; m];
        for cycle in cycles {
            for (pos, &a) in cycle.iter().enumerate() {
                let b = cycle[(pos + 1) % cycle.len()];
                if a == 0 || b == 0 || a > m || b > m || touched[a - 1] {
                    return Err(PolyError::NotAPermutation);
                }
                touched[a - 1] = true;
                images[a - 1] = b - 1;
            }
        }
        Permutation::from_images(images)
    }

    /// The transposition of the 1-based symbols `i` and `j`.
    pub fn transposition(m: usize, i: usize, j: usize) -> Result<Permutation, PolyError> {
        Permutation::from_cycles(m, &[&[i, j]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let images = other.images.iter().map(|&j| self.images[j]).collect();
        Permutation { images, even: self.even == other.even }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images, even: self.even }
    }

    /// `P_sigma = (P[sigma(1)], ..., P[sigma(m)])`.
    pub fn act_on_point<T: Copy>(&self, point: &[T]) -> Vec<T> {
        self.images.iter().map(|&j| point[j]).collect()
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based symbols; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.images.len();
        let mut seen = vec![false; m];
        let mut any = false;
        for start in 0..m {
            if seen[start] || self.images[start] == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i];
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

fn inversions(images: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                n += 1;
            }
        }
    }
    n
}

/// A polynomial in `m` variables with coefficients in a [`Field`].
///
/// No stored coefficient is zero, so the zero polynomial has no terms and
/// structural equality is polynomial equality.
#[derive(Clone)]
pub struct MultiPoly {
    field: Field,
    m: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[m={}]({})", self.m, self)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same(&other.field) && self.m == other.m && self.terms == other.terms
    }
}

impl MultiPoly {
    pub fn zero(field: &Field, m: usize) -> MultiPoly {
        MultiPoly { field: field.clone(), m, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Field, m: usize, c: FieldElement) -> MultiPoly {
        let mut p = MultiPoly::zero(field, m);
        p.add_term(Monomial::one(m), c);
        p
    }

    pub fn one(field: &Field, m: usize) -> MultiPoly {
        MultiPoly::constant(field, m, field.one())
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(field: &Field, m: usize, i: usize) -> MultiPoly {
        let mut exps = vec![0; m];
        exps[i] = 1;
        MultiPoly::monomial(field, field.one(), exps)
    }

    pub fn monomial(field: &Field, c: FieldElement, exps: Vec<u32>) -> MultiPoly {
        let mut p = MultiPoly::zero(field, exps.len());
        p.add_term(Monomial(exps), c);
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs; like terms
    /// are combined.
    pub fn from_terms(
        field: &Field,
        m: usize,
        terms: impl IntoIterator<Item = (FieldElement, Vec<u32>)>,
    ) -> Result<MultiPoly, PolyError> {
        let mut p = MultiPoly::zero(field, m);
        for (c, exps) in terms {
            if exps.len() != m {
                return Err(PolyError::WrongArity { expected: m, got: exps.len() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElement {
        self.terms.get(&Monomial(exps.to_vec())).copied().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, FieldElement)> {
        self.terms.iter().next_back().map(|(k, &v)| (k, v))
    }

    fn add_term(&mut self, mono: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.field.same(&other.field) && self.m == other.m {
            Ok(())
        } else {
            Err(PolyError::MixedContexts)
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (mono, &c) in &other.terms {
            out.add_term(mono.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (mono, &c) in &other.terms {
            out.add_term(mono.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(other)?;
        let mut out = MultiPoly::zero(&self.field, self.m);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                out.add_term(ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: FieldElement) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, self.m);
        if c.is_zero() {
            return out;
        }
        for (mono, &v) in &self.terms {
            out.terms.insert(mono.clone(), self.field.mul(c, v));
        }
        out
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.field, self.m);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point, caching the powers of each coordinate.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
        if point.len() != self.m {
            return Err(PolyError::WrongArity { expected: self.m, got: point.len() });
        }
        let f = &self.field;
        let mut max_exp = vec![0u32; self.m];
        for mono in self.terms.keys() {
            for (slot, &a) in max_exp.iter_mut().zip(&mono.0) {
                *slot = (*slot).max(a);
            }
        }
        let powers: Vec<Vec<FieldElement>> = point
            .iter()
            .zip(&max_exp)
            .map(|(&x, &top)| {
                let mut row = Vec::with_capacity(top as usize + 1);
                let mut acc = f.one();
                for _ in 0..=top {
                    row.push(acc);
                    acc = f.mul(acc, x);
                }
                row
            })
            .collect();
        let mut sum = f.zero();
        for (mono, &c) in &self.terms {
            let mut t = c;
            for (i, &a) in mono.0.iter().enumerate() {
                t = f.mul(t, powers[i][a as usize]);
            }
            sum = f.add(sum, t);
        }
        Ok(sum)
    }

    /// `sigma(f) = f(x_{sigma(1)}, ..., x_{sigma(m)})`.
    pub fn apply_permutation(&self, sigma: &Permutation) -> Result<MultiPoly, PolyError> {
        if sigma.degree() != self.m {
            return Err(PolyError::WrongArity { expected: self.m, got: sigma.degree() });
        }
        let mut out = MultiPoly::zero(&self.field, self.m);
        for (mono, &c) in &self.terms {
            let mut exps = vec![0; self.m];
            for (i, &a) in mono.0.iter().enumerate() {
                exps[sigma.image(i)] = a;
            }
            out.terms.insert(Monomial(exps), c);
        }
        Ok(out)
    }

    /// Whether `f = g(f)` for every generator `g`. Generators on the wrong
    /// number of symbols make the answer `false`.
    pub fn is_invariant<'a>(&self, generators: impl IntoIterator<Item = &'a Permutation>) -> bool {
        generators
            .into_iter()
            .all(|g| self.apply_permutation(g).map(|h| h == *self).unwrap_or(false))
    }

    /// The quotient `c` with `self = divisor * c`, by division with respect
    /// to the graded-lex order. A single divisor is a Gröbner basis of its
    /// ideal, so a leading term that the divisor's leading term does not
    /// divide proves the remainder is nonzero.
    pub fn exact_divide(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check(divisor)?;
        let (lead_mono, lead_c) = divisor.leading_term().ok_or(PolyError::DivisionByZeroPoly)?;
        let lead_mono = lead_mono.clone();
        let lead_inv = self.field.inv(lead_c).expect("stored coefficients are nonzero");
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.field, self.m);
        while let Some((mono, c)) = rem.leading_term() {
            let shift = mono.checked_div(&lead_mono).ok_or(PolyError::NotDivisible)?;
            let factor = self.field.mul(c, lead_inv);
            for (dm, &dc) in &divisor.terms {
                rem.add_term(dm.mul(&shift), self.field.neg(self.field.mul(factor, dc)));
            }
            quot.add_term(shift, factor);
        }
        Ok(quot)
    }
}

impl fmt::Display for MultiPoly {
    /// Terms in decreasing graded-lex order, `c*x1^a1*...`, coefficients as
    /// field indices; exponent 1 is written bare and exponent 0 is omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (mono, c)) in self.terms.iter().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", c.index())?;
            for (i, &a) in mono.0.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, a)?,
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$try(rhs).expect("operands must share field and variable count")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scalar_mul(self.field.neg(self.field.one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> Field {
        Field::with_order(q, None).unwrap()
    }

    fn el(field: &Field, i: u32) -> FieldElement {
        field.elem(i).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let k = f(7);
        let x1 = MultiPoly::var(&k, 2, 0);
        let x2 = MultiPoly::var(&k, 2, 1);
        let prod = &(&x1 + &x2) * &(&x1 - &x2);
        let expect = &x1.pow(2) - &x2.pow(2);
        assert_eq!(prod, expect);
        assert_eq!(prod.len(), 2);
        assert_eq!(&prod + &MultiPoly::zero(&k, 2), prod);
        assert!(prod.scalar_mul(k.zero()).is_zero());
    }

    #[test]
    fn mixed_contexts() {
        let a = MultiPoly::one(&f(5), 2);
        let b = MultiPoly::one(&f(5), 2);
        assert_eq!(a.try_add(&b), Err(PolyError::MixedContexts));
        let k = f(5);
        let c = MultiPoly::one(&k, 2);
        let d = MultiPoly::one(&k, 3);
        assert_eq!(c.try_mul(&d), Err(PolyError::MixedContexts));
    }

    #[test]
    fn evaluation_examples() {
        let k = f(7);
        let p = &(&MultiPoly::var(&k, 3, 0) * &MultiPoly::var(&k, 3, 1)) + &MultiPoly::var(&k, 3, 2);
        let pt = [el(&k, 1), el(&k, 2), el(&k, 3)];
        assert_eq!(p.evaluate(&pt).unwrap(), el(&k, 5));
        assert_eq!(MultiPoly::zero(&k, 3).evaluate(&pt).unwrap(), k.zero());
        assert_eq!(
            p.evaluate(&pt[..2]),
            Err(PolyError::WrongArity { expected: 3, got: 2 })
        );

        let k5 = f(5);
        let x = |i| MultiPoly::var(&k5, 3, i);
        let v = &(&(&x(0) - &x(1)) * &(&x(0) - &x(2))) * &(&x(1) - &x(2));
        let pt = [el(&k5, 0), el(&k5, 1), el(&k5, 2)];
        assert_eq!(v.evaluate(&pt).unwrap(), el(&k5, 3));
    }

    #[test]
    fn permutation_relabels_variables() {
        let k = f(5);
        let p = MultiPoly::monomial(&k, k.one(), vec![2, 1]);
        let swap = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(p.apply_permutation(&swap).unwrap(), MultiPoly::monomial(&k, k.one(), vec![1, 2]));
        let sym = &MultiPoly::var(&k, 2, 0) + &MultiPoly::var(&k, 2, 1);
        assert!(sym.is_invariant([&swap]));
        assert!(!p.is_invariant([&swap]));
    }

    #[test]
    fn division_examples() {
        let k = f(7);
        let x1 = MultiPoly::var(&k, 2, 0);
        let x2 = MultiPoly::var(&k, 2, 1);
        let a = &x1.pow(2) - &x2.pow(2);
        assert_eq!(a.exact_divide(&(&x1 - &x2)).unwrap(), &x1 + &x2);
        assert_eq!(a.exact_divide(&MultiPoly::one(&k, 2)).unwrap(), a);
        assert_eq!(x1.exact_divide(&x2), Err(PolyError::NotDivisible));
        assert_eq!(x1.exact_divide(&MultiPoly::zero(&k, 2)), Err(PolyError::DivisionByZeroPoly));
        assert_eq!((&x1 + &MultiPoly::one(&k, 2)).exact_divide(&x1), Err(PolyError::NotDivisible));
    }

    #[test]
    fn permutation_basics() {
        let t = Permutation::transposition(4, 1, 2).unwrap();
        assert!(!t.is_even());
        let c = Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap();
        assert!(c.is_even());
        assert_eq!(c.images(), &[1, 2, 0, 3]);
        assert!(c.compose(&c.inverse()).is_identity());
        assert_eq!(alloc::format!("{c}"), "(1 2 3)");
        assert_eq!(alloc::format!("{}", Permutation::identity(3)), "()");
        assert_eq!(Permutation::from_images(vec![0, 0]), Err(PolyError::NotAPermutation));
        assert!(Permutation::from_cycles(3, &[&[1, 4]]).is_err());
    }

    #[test]
    fn display_format() {
        let k = f(7);
        let p = MultiPoly::from_terms(
            &k,
            3,
            [(el(&k, 3), vec![2, 1, 0]), (el(&k, 5), vec![0, 0, 0]), (el(&k, 1), vec![0, 0, 1])],
        )
        .unwrap();
        assert_eq!(alloc::format!("{p}"), "3*x1^2*x2 + 1*x3 + 5");
        assert_eq!(alloc::format!("{}", MultiPoly::zero(&k, 2)), "0");
    }
}
