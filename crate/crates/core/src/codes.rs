//! Evaluation codes on orbit representatives of distinguished points.
//!
//! The `A_m` code evaluates the message space
//! `{ s1 + v_m s2 : s1, s2 in span(sigma^0, ..., sigma^m) }` at one point of
//! each `A_m`-orbit; the Datta–Johnsen code evaluates
//! `span(sigma^0, ..., sigma^m)` at one point of each `S_m`-orbit. Both are
//! built by evaluating at tuples directly, never through symbolic expansion.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use crate::bounds;
use crate::count;
use crate::gf::{Field, FieldElement};
use crate::linalg;
use crate::mvpoly::{MultiPoly, PolyError};
use crate::perm::{self, PermError, PermGroup, Point};
use crate::sym::{self, SymCombo, SymError};

/// Default budget for exhaustive searches, in coordinate evaluations.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    EvenQ(u32),
    TooManyVariables { m: usize, q: u32 },
    InvalidArity(usize),
    RankDeficient { expected: usize, got: usize },
    WrongLength { expected: usize, got: usize },
    NotOrbitMultiple { zeros: u128, orbit: u128 },
    DegreeOutOfRange { t: u64, q: u64 },
    NotInvariant(usize),
    WrongKind,
    Overflow,
    Perm(PermError),
    Poly(PolyError),
    Sym(SymError),
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::EvenQ(q) => write!(f, "q must be odd (got {q})"),
            CodeError::TooManyVariables { m, q } => write!(f, "m exceeds q ({m} > {q})"),
            CodeError::InvalidArity(m) => write!(f, "m must be at least 2 (got {m})"),
            CodeError::RankDeficient { expected, got } => {
                write!(f, "generator matrix has rank {got}, expected {expected}")
            }
            CodeError::WrongLength { expected, got } => {
                write!(f, "expected length {expected}, got {got}")
            }
            CodeError::NotOrbitMultiple { zeros, orbit } => {
                write!(f, "zero count {zeros} is not a multiple of the orbit size {orbit}")
            }
            CodeError::DegreeOutOfRange { t, q } => write!(f, "degree t = {t} must be below q = {q}"),
            CodeError::NotInvariant(i) => write!(f, "basis polynomial {i} is not invariant"),
            CodeError::WrongKind => write!(f, "operation not available for this kind of code"),
            CodeError::Overflow => write!(f, "parameter arithmetic overflowed"),
            CodeError::Perm(e) => write!(f, "{e}"),
            CodeError::Poly(e) => write!(f, "{e}"),
            CodeError::Sym(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CodeError {}

impl From<PermError> for CodeError {
    fn from(e: PermError) -> Self {
        match e {
            PermError::TooManyVariables { m, q } => CodeError::TooManyVariables { m, q },
            PermError::InvalidArity(m) => CodeError::InvalidArity(m),
            e => CodeError::Perm(e),
        }
    }
}

impl From<PolyError> for CodeError {
    fn from(e: PolyError) -> Self {
        CodeError::Poly(e)
    }
}

impl From<SymError> for CodeError {
    fn from(e: SymError) -> Self {
        CodeError::Sym(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeKind {
    /// Evaluations of `s1 + v_m s2` on `A_m`-orbit representatives.
    Am,
    /// Evaluations of `s` on `S_m`-orbit representatives.
    DattaJohnsen,
    /// User-supplied invariant basis on orbit representatives of a subgroup.
    Custom,
}

impl CodeKind {
    pub fn label(self) -> &'static str {
        match self {
            CodeKind::Am => "am",
            CodeKind::DattaJohnsen => "dj",
            CodeKind::Custom => "custom",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BasisElem {
    /// `sigma_m^i`
    ElemSym(usize),
    /// `v_m * sigma_m^i`
    VandermondeTimes(usize),
    Poly(MultiPoly),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalStrategy {
    /// Elementary symmetric values and `v_m` computed per tuple.
    FastTuple,
    Symbolic,
}

/// The ordered basis of a message space.
#[derive(Clone, Debug)]
pub struct MessageSpace {
    pub basis: Vec<BasisElem>,
    pub strategy: EvalStrategy,
}

impl MessageSpace {
    /// `sigma^0..sigma^m`, then `v_m sigma^0 .. v_m sigma^m`.
    pub fn am(m: usize) -> MessageSpace {
        let basis = (0..=m)
            .map(BasisElem::ElemSym)
            .chain((0..=m).map(BasisElem::VandermondeTimes))
            .collect();
        MessageSpace { basis, strategy: EvalStrategy::FastTuple }
    }

    pub fn symmetric(m: usize) -> MessageSpace {
        MessageSpace { basis: (0..=m).map(BasisElem::ElemSym).collect(), strategy: EvalStrategy::FastTuple }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Symbolic form of every basis element.
    pub fn to_polys(&self, field: &Field, m: usize) -> Result<Vec<MultiPoly>, SymError> {
        let mut v = None;
        self.basis
            .iter()
            .map(|b| match b {
                BasisElem::ElemSym(i) => sym::elem_sym_poly(field, m, *i),
                BasisElem::VandermondeTimes(i) => {
                    if v.is_none() {
                        v = Some(sym::vandermonde_poly(field, m)?);
                    }
                    Ok(&sym::elem_sym_poly(field, m, *i)? * v.as_ref().unwrap())
                }
                BasisElem::Poly(p) => Ok(p.clone()),
            })
            .collect()
    }

    /// Values of every basis element at one point.
    fn eval_at(&self, field: &Field, point: &[FieldElement], sigmas: &mut [FieldElement]) -> Vec<FieldElement> {
        sym::eval_all_elem_sym_into(field, point, sigmas);
        let mut v = None;
        self.basis
            .iter()
            .map(|b| match b {
                BasisElem::ElemSym(i) => sigmas[*i],
                BasisElem::VandermondeTimes(i) => {
                    let v = *v.get_or_insert_with(|| sym::vandermonde_eval(field, point));
                    field.mul(v, sigmas[*i])
                }
                BasisElem::Poly(p) => p.evaluate(point).expect("arity checked at construction"),
            })
            .collect()
    }
}

/// `gcd(m, q-1)` and `gcd(C(m,2), q-1)`. The construction is stated under
/// the first being 1 while the zero bounds use the second; both are
/// reported and neither is enforced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Advisories {
    pub gcd_m: u64,
    pub gcd_pairs: u64,
}

impl Advisories {
    pub fn new(q: u64, m: u64) -> Advisories {
        let pairs = m * m.saturating_sub(1) / 2;
        Advisories { gcd_m: count::gcd(m, q - 1), gcd_pairs: count::gcd(pairs, q - 1) }
    }
}

/// A linear code given by evaluating a message space at ordered points.
#[derive(Clone, Debug)]
pub struct EvalCode {
    field: Field,
    m: usize,
    kind: CodeKind,
    points: Vec<Point>,
    space: MessageSpace,
    generator: Vec<Vec<FieldElement>>,
    advisories: Advisories,
}

impl EvalCode {
    /// Evaluates `space` at `points` and checks the generator matrix has
    /// full row rank.
    pub fn from_points(
        field: &Field,
        m: usize,
        kind: CodeKind,
        space: MessageSpace,
        points: Vec<Point>,
    ) -> Result<EvalCode, CodeError> {
        let k = space.dim();
        let n = points.len();
        let mut generator = vec![Vec::with_capacity(n); k];
        let mut sigmas = vec![FieldElement::ZERO; m + 1];
        for p in &points {
            if p.len() != m {
                return Err(CodeError::WrongLength { expected: m, got: p.len() });
            }
            for (row, val) in generator.iter_mut().zip(space.eval_at(field, p, &mut sigmas)) {
                row.push(val);
            }
        }
        let rank = linalg::rank(field, &generator);
        if rank != k {
            return Err(CodeError::RankDeficient { expected: k, got: rank });
        }
        Ok(EvalCode {
            field: field.clone(),
            m,
            kind,
            points,
            space,
            generator,
            advisories: Advisories::new(field.order() as u64, m as u64),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_vars(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn message_space(&self) -> &MessageSpace {
        &self.space
    }

    pub fn generator(&self) -> &[Vec<FieldElement>] {
        &self.generator
    }

    pub fn advisories(&self) -> Advisories {
        self.advisories
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn k(&self) -> usize {
        self.generator.len()
    }
}

/// The `A_m` code: length `2 C(q,m)`, dimension `2(m+1)` when the rank
/// check passes.
pub fn build_am_code(field: &Field, m: usize) -> Result<EvalCode, CodeError> {
    if field.characteristic() == 2 {
        return Err(CodeError::EvenQ(field.order()));
    }
    let reps = perm::am_orbit_reps(field, m)?;
    EvalCode::from_points(field, m, CodeKind::Am, MessageSpace::am(m), reps.reps)
}

/// The Datta–Johnsen code: length `C(q,m)`, dimension `m+1`.
pub fn build_dj_code(field: &Field, m: usize) -> Result<EvalCode, CodeError> {
    if m == 0 {
        return Err(CodeError::InvalidArity(m));
    }
    let reps = perm::sm_orbit_reps(field, m)?;
    EvalCode::from_points(field, m, CodeKind::DattaJohnsen, MessageSpace::symmetric(m), reps.reps)
}

/// An evaluation code for an arbitrary subgroup `H` of `S_m`: the supplied
/// `H`-invariant polynomials evaluated on `H`-orbit representatives.
pub fn build_orbit_code(
    field: &Field,
    m: usize,
    group: &PermGroup,
    basis: Vec<MultiPoly>,
) -> Result<EvalCode, CodeError> {
    for (i, p) in basis.iter().enumerate() {
        if !p.field().same(field) || p.num_vars() != m {
            return Err(CodeError::Poly(PolyError::MixedContexts));
        }
        if !p.is_invariant(group.generators()) {
            return Err(CodeError::NotInvariant(i));
        }
    }
    let reps = perm::orbit_reps(field, m, group)?;
    let space = MessageSpace {
        basis: basis.into_iter().map(BasisElem::Poly).collect(),
        strategy: EvalStrategy::Symbolic,
    };
    EvalCode::from_points(field, m, CodeKind::Custom, space, reps.reps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceKind {
    Exact,
    LowerBound,
}

/// `[n, k, d]_q`, with `d` flagged exact or a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeParams {
    pub q: u64,
    pub n: u128,
    pub k: u128,
    pub d: u128,
    pub distance: DistanceKind,
}

impl CodeParams {
    pub fn relative_distance(&self) -> f64 {
        self.d as f64 / self.n as f64
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }
}

/// `GR_q(m, t)`: `[q^m, C(m+t, m), (1 - t/q) q^m]`.
pub fn grm_params(q: u64, m: u64, t: u64) -> Result<CodeParams, CodeError> {
    if t >= q {
        return Err(CodeError::DegreeOutOfRange { t, q });
    }
    let n = count::checked_pow(q, m).ok_or(CodeError::Overflow)?;
    let k = count::binomial(m + t, m).ok_or(CodeError::Overflow)?;
    let d = n / q as u128 * (q - t) as u128;
    Ok(CodeParams { q, n, k, d, distance: DistanceKind::Exact })
}

pub fn encode(code: &EvalCode, message: &[FieldElement]) -> Result<Vec<FieldElement>, CodeError> {
    if message.len() != code.k() {
        return Err(CodeError::WrongLength { expected: code.k(), got: message.len() });
    }
    let f = &code.field;
    let mut out = vec![FieldElement::ZERO; code.n()];
    for (row, &a) in code.generator.iter().zip(message) {
        if a.is_zero() {
            continue;
        }
        for (x, &g) in out.iter_mut().zip(row) {
            *x = f.add(*x, f.mul(a, g));
        }
    }
    Ok(out)
}

pub fn hamming_weight(word: &[FieldElement]) -> usize {
    word.iter().filter(|x| !x.is_zero()).count()
}

pub fn codeword_weight(code: &EvalCode, message: &[FieldElement]) -> Result<usize, CodeError> {
    Ok(hamming_weight(&encode(code, message)?))
}

/// Weight of the `A_m`-code word of `F` from its distinguished zero count:
/// `n - 2 |Z_D(F)| / m!`.
pub fn weight_from_zeros(n: u128, m: u64, zeros: u128) -> Result<u128, CodeError> {
    let orbit = count::factorial(m).ok_or(CodeError::Overflow)? / 2;
    if orbit == 0 || zeros % orbit != 0 {
        return Err(CodeError::NotOrbitMultiple { zeros, orbit });
    }
    n.checked_sub(zeros / orbit).ok_or(CodeError::Overflow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DzeroMode {
    /// Scan every distinguished point.
    Exhaustive,
    /// Scan `A_m` representatives and scale by the orbit size `m!/2`.
    ViaReps,
}

fn check_zero_inputs(field: &Field, m: usize, s1: &SymCombo, s2: &SymCombo) -> Result<(), CodeError> {
    if field.characteristic() == 2 {
        return Err(CodeError::EvenQ(field.order()));
    }
    if m > field.order() as usize {
        return Err(CodeError::TooManyVariables { m, q: field.order() });
    }
    for s in [s1, s2] {
        if s.num_vars() != m {
            return Err(CodeError::WrongLength { expected: m + 1, got: s.coeffs().len() });
        }
        if !s.field().same(field) {
            return Err(CodeError::Poly(PolyError::MixedContexts));
        }
    }
    Ok(())
}

#[inline]
fn eval_f(field: &Field, s1: &SymCombo, s2: &SymCombo, p: &[FieldElement], sig: &mut [FieldElement]) -> FieldElement {
    sym::eval_all_elem_sym_into(field, p, sig);
    let a = s1.eval_with(sig);
    let v = if a.is_zero() { a } else { sym::vandermonde_eval(field, p) };
    field.add(field.mul(a, v), s2.eval_with(sig))
}

/// `|Z_D(F)|` for `F = s1 v_m + s2`.
pub fn dzero_count(
    field: &Field,
    m: usize,
    s1: &SymCombo,
    s2: &SymCombo,
    mode: DzeroMode,
) -> Result<u128, CodeError> {
    check_zero_inputs(field, m, s1, s2)?;
    match mode {
        DzeroMode::Exhaustive => dzero_count_with_first(field, m, s1, s2, None),
        DzeroMode::ViaReps => {
            let reps = perm::am_orbit_reps(field, m)?;
            let mut sig = vec![FieldElement::ZERO; m + 1];
            let hits = reps
                .reps
                .iter()
                .filter(|p| eval_f(field, s1, s2, p, &mut sig).is_zero())
                .count() as u128;
            Ok(hits * reps.orbit_size)
        }
    }
}

/// Exhaustive distinguished zero count, optionally restricted to points
/// with a given first coordinate (for splitting work).
pub fn dzero_count_with_first(
    field: &Field,
    m: usize,
    s1: &SymCombo,
    s2: &SymCombo,
    first: Option<FieldElement>,
) -> Result<u128, CodeError> {
    check_zero_inputs(field, m, s1, s2)?;
    let mut sig = vec![FieldElement::ZERO; m + 1];
    let mut hits = 0u128;
    perm::for_each_distinguished(field, m, first, |p| {
        hits += eval_f(field, s1, s2, p, &mut sig).is_zero() as u128;
    })?;
    Ok(hits)
}

/// Zero counts of `F = s1 v_m + s2` and of `s2` over all of `F_q^m`,
/// split by whether the zero is distinguished.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZeroCounts {
    pub all_f: u128,
    pub all_s2: u128,
    pub distinguished_f: u128,
    pub distinguished_s2: u128,
}

pub fn zero_counts_all_tuples(
    field: &Field,
    m: usize,
    s1: &SymCombo,
    s2: &SymCombo,
) -> Result<ZeroCounts, CodeError> {
    check_zero_inputs(field, m, s1, s2)?;
    let mut sig = vec![FieldElement::ZERO; m + 1];
    let mut c = ZeroCounts::default();
    perm::for_each_tuple(field, m, |p| {
        sym::eval_all_elem_sym_into(field, p, &mut sig);
        let v = sym::vandermonde_eval(field, p);
        let b = s2.eval_with(&sig);
        let fv = field.add(field.mul(s1.eval_with(&sig), v), b);
        let distinguished = !v.is_zero();
        if fv.is_zero() {
            c.all_f += 1;
            c.distinguished_f += distinguished as u128;
        }
        if b.is_zero() {
            c.all_s2 += 1;
            c.distinguished_s2 += distinguished as u128;
        }
    });
    Ok(c)
}

/// Enumerates nonzero messages up to scalar multiples, in a fixed order, and
/// produces their codewords incrementally.
///
/// Class `c` is numbered by the position `j` of the message's first nonzero
/// coefficient (normalized to 1) and then by the remaining coefficients read
/// as base-q digits, the last row least significant. Consecutive classes
/// differ mostly in the last digit, so each step costs about one row
/// addition.
pub struct ProjectiveScan<'a> {
    field: &'a Field,
    rows: &'a [Vec<FieldElement>],
    n: usize,
    q: u64,
    block_start: Vec<u64>,
    total: u64,
    /// `steps[(r * q + v) * n ..][..n]` adds the change of digit `r` from
    /// value `v` to `v + 1` (wrapping to 0 at `v = q - 1`).
    steps: Vec<FieldElement>,
}

impl<'a> ProjectiveScan<'a> {
    /// `None` if the number of classes overflows.
    pub fn new(field: &'a Field, rows: &'a [Vec<FieldElement>]) -> Option<ProjectiveScan<'a>> {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let q = field.order() as u64;
        let mut block_start = Vec::with_capacity(k + 1);
        let mut acc = 0u64;
        for j in 0..k {
            block_start.push(acc);
            let size = q.checked_pow((k - 1 - j) as u32)?;
            acc = acc.checked_add(size)?;
        }
        block_start.push(acc);
        let mut steps = Vec::with_capacity(k * q as usize * n);
        for row in rows {
            for v in 0..q as u32 {
                let from = field.elem_unchecked(v);
                let to = field.elem_unchecked(if v + 1 == q as u32 { 0 } else { v + 1 });
                let delta = field.sub(to, from);
                steps.extend(row.iter().map(|&x| field.mul(delta, x)));
            }
        }
        Some(ProjectiveScan { field, rows, n, q, block_start, total: acc, steps })
    }

    /// Number of scalar classes, `(q^k - 1)/(q - 1)`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn block_of(&self, class: u64) -> usize {
        self.block_start.partition_point(|&s| s <= class) - 1
    }

    /// The normalized message of a class.
    pub fn message(&self, class: u64) -> Vec<FieldElement> {
        let k = self.rows.len();
        let j = self.block_of(class);
        let mut t = class - self.block_start[j];
        let mut msg = vec![FieldElement::ZERO; k];
        msg[j] = FieldElement::ONE;
        for slot in msg[j + 1..].iter_mut().rev() {
            *slot = self.field.elem_unchecked((t % self.q) as u32);
            t /= self.q;
        }
        msg
    }

    pub fn codeword(&self, class: u64) -> Vec<FieldElement> {
        let msg = self.message(class);
        let f = self.field;
        let mut cw = vec![FieldElement::ZERO; self.n];
        for (row, &a) in self.rows.iter().zip(&msg) {
            if a.is_zero() {
                continue;
            }
            for (x, &g) in cw.iter_mut().zip(row) {
                *x = f.add(*x, f.mul(a, g));
            }
        }
        cw
    }

    /// Calls `visit(class, codeword)` for each class in `range`, in order.
    pub fn for_each(&self, range: Range<u64>, mut visit: impl FnMut(u64, &[FieldElement])) {
        let end = range.end.min(self.total);
        let mut class = range.start;
        let f = self.field;
        let n = self.n;
        let q = self.q as u32;
        while class < end {
            let j = self.block_of(class);
            let block_end = end.min(self.block_start[j + 1]);
            let mut msg: Vec<u32> = self.message(class).iter().map(|x| x.index()).collect();
            let mut cw = self.codeword(class);
            visit(class, &cw);
            class += 1;
            while class < block_end {
                // odometer over positions j+1..k, last one least significant
                let mut r = msg.len() - 1;
                loop {
                    let v = msg[r];
                    let step = &self.steps[(r * q as usize + v as usize) * n..][..n];
                    for (x, &d) in cw.iter_mut().zip(step) {
                        *x = f.add(*x, d);
                    }
                    if v + 1 < q {
                        msg[r] = v + 1;
                        break;
                    }
                    msg[r] = 0;
                    r -= 1;
                }
                visit(class, &cw);
                class += 1;
            }
        }
    }
}

/// Smallest weight over a range of classes as `(weight, class)`, ties to
/// the smaller class.
pub fn min_weight_in(scan: &ProjectiveScan<'_>, range: Range<u64>) -> Option<(usize, u64)> {
    let mut best: Option<(usize, u64)> = None;
    scan.for_each(range, |class, cw| {
        let w = hamming_weight(cw);
        if best.is_none_or(|(bw, _)| w < bw) {
            best = Some((w, class));
        }
    });
    best
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinDistance {
    pub params: CodeParams,
    /// A minimum-weight message when the search ran.
    pub witness: Option<Vec<FieldElement>>,
    pub classes: u64,
}

/// Whether a search over `classes` classes of length `n` fits in `budget`
/// coordinate evaluations.
pub fn within_budget(classes: Option<u64>, n: usize, budget: u128) -> bool {
    classes.is_some_and(|c| (c as u128).saturating_mul(n as u128) <= budget)
}

/// Number of scalar classes `(q^k - 1)/(q - 1)`, `None` on overflow.
pub fn projective_classes(q: u64, k: usize) -> Option<u64> {
    let mut acc = 0u64;
    for j in 0..k {
        acc = acc.checked_add(q.checked_pow(j as u32)?)?;
    }
    Some(acc)
}

/// The distance bound reported when a search is over budget: the `A_m`
/// code's proven lower bound, the Datta–Johnsen distance formula, or 1.
pub fn fallback_params(code: &EvalCode) -> Result<CodeParams, CodeError> {
    let q = code.field.order() as u64;
    let m = code.m as u64;
    let n = code.n() as u128;
    let d = match code.kind {
        CodeKind::Am => bounds::prop41_distance_bound(q, m).ok_or(CodeError::Overflow)?.max(1) as u128,
        CodeKind::DattaJohnsen => {
            let a = count::binomial(q, m).ok_or(CodeError::Overflow)?;
            let b = count::binomial(q - 1, m - 1).ok_or(CodeError::Overflow)?;
            (a - b).max(1)
        }
        CodeKind::Custom => 1,
    };
    Ok(CodeParams { q, n, k: code.k() as u128, d: d.min(n), distance: DistanceKind::LowerBound })
}

/// Exact minimum distance by scanning every scalar class when
/// `classes * n <= budget`; otherwise the fallback bound.
pub fn min_distance(code: &EvalCode, budget: u128) -> Result<MinDistance, CodeError> {
    let classes = projective_classes(code.field.order() as u64, code.k());
    if !within_budget(classes, code.n(), budget) {
        return Ok(MinDistance { params: fallback_params(code)?, witness: None, classes: 0 });
    }
    let scan = ProjectiveScan::new(&code.field, &code.generator).ok_or(CodeError::Overflow)?;
    let (w, class) = min_weight_in(&scan, 0..scan.total()).expect("k >= 1");
    Ok(MinDistance {
        params: CodeParams {
            q: code.field.order() as u64,
            n: code.n() as u128,
            k: code.k() as u128,
            d: w as u128,
            distance: DistanceKind::Exact,
        },
        witness: Some(scan.message(class)),
        classes: scan.total(),
    })
}

/// The dependent family `(v_m + lambda) s1` of the `A_m` code: `s1` ranges
/// over scalar classes of symmetric combinations and `lambda` over `F_q^*`.
pub struct DependentFamily<'a> {
    scan: ProjectiveScan<'a>,
    /// Index of `v_m(P_j)` for each coordinate.
    vand: Vec<u32>,
    field: &'a Field,
}

/// Smallest weight found in the dependent family over a class range.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DependentMin {
    pub weight: usize,
    pub class: u64,
    pub lambda: FieldElement,
}

impl DependentMin {
    /// Deterministic merge: smaller weight, then class, then `lambda`.
    pub fn better(self, other: DependentMin) -> DependentMin {
        let key = |d: &DependentMin| (d.weight, d.class, d.lambda);
        if key(&other) < key(&self) {
            other
        } else {
            self
        }
    }
}

impl<'a> DependentFamily<'a> {
    pub fn new(code: &'a EvalCode) -> Result<DependentFamily<'a>, CodeError> {
        if code.kind != CodeKind::Am {
            return Err(CodeError::WrongKind);
        }
        let m = code.m;
        // row m+1 is v_m * sigma^0 = v_m
        let vand = code.generator[m + 1].iter().map(|x| x.index()).collect();
        let scan = ProjectiveScan::new(&code.field, &code.generator[..=m]).ok_or(CodeError::Overflow)?;
        Ok(DependentFamily { scan, vand, field: &code.field })
    }

    pub fn classes(&self) -> u64 {
        self.scan.total()
    }

    pub fn combo(&self, class: u64) -> Vec<FieldElement> {
        self.scan.message(class)
    }

    /// Weights of `(v_m + lambda) s1` for every `lambda != 0` (indexed by
    /// `lambda.index() - 1`) given the codeword of `s1`.
    fn weights(&self, cw: &[FieldElement], hist: &mut [u32], out: &mut [usize]) {
        hist.fill(0);
        let mut nz = 0usize;
        for (x, &v) in cw.iter().zip(&self.vand) {
            if !x.is_zero() {
                nz += 1;
                hist[v as usize] += 1;
            }
        }
        for (slot, lam) in out.iter_mut().zip(self.field.elements().skip(1)) {
            // (v + lambda) vanishes where v = -lambda
            *slot = nz - hist[self.field.neg(lam).index() as usize] as usize;
        }
    }

    fn visit(&self, class: u64, cw: &[FieldElement], hist: &mut [u32], w: &mut [usize], best: &mut Option<DependentMin>) {
        self.weights(cw, hist, w);
        for (i, &weight) in w.iter().enumerate() {
            let cand = DependentMin { weight, class, lambda: self.field.elem_unchecked(i as u32 + 1) };
            *best = Some(match *best {
                Some(b) => b.better(cand),
                None => cand,
            });
        }
    }

    /// Minimum over all `lambda` and the classes in `range`.
    pub fn min_in(&self, range: Range<u64>) -> Option<DependentMin> {
        let q = self.field.order() as usize;
        let mut hist = vec![0u32; q];
        let mut w = vec![0usize; q - 1];
        let mut best = None;
        self.scan.for_each(range, |class, cw| self.visit(class, cw, &mut hist, &mut w, &mut best));
        best
    }

    /// Minimum over all `lambda` and the listed classes.
    pub fn min_over(&self, classes: &[u64]) -> Option<DependentMin> {
        let q = self.field.order() as usize;
        let mut hist = vec![0u32; q];
        let mut w = vec![0usize; q - 1];
        let mut best = None;
        for &c in classes {
            let cw = self.scan.codeword(c);
            self.visit(c, &cw, &mut hist, &mut w, &mut best);
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sym::SymCombo;

    fn f(q: u32) -> Field {
        Field::with_order(q, None).unwrap()
    }

    #[test]
    fn am_code_parameters() {
        let code = build_am_code(&f(7), 3).unwrap();
        assert_eq!((code.n(), code.k()), (70, 8));
        let code = build_am_code(&f(9), 6).unwrap();
        assert_eq!((code.n(), code.k()), (168, 14));
        assert_eq!(build_am_code(&f(8), 3).unwrap_err(), CodeError::EvenQ(8));
        assert_eq!(build_am_code(&f(5), 6).unwrap_err(), CodeError::TooManyVariables { m: 6, q: 5 });
    }

    #[test]
    fn dj_code_parameters() {
        let code = build_dj_code(&f(7), 3).unwrap();
        assert_eq!((code.n(), code.k()), (35, 4));
        let code = build_dj_code(&f(5), 3).unwrap();
        assert_eq!((code.n(), code.k()), (10, 4));
    }

    #[test]
    fn grm_examples() {
        let p = grm_params(4, 2, 1).unwrap();
        assert_eq!((p.n, p.k, p.d), (16, 3, 12));
        let p = grm_params(7, 3, 0).unwrap();
        assert_eq!((p.n, p.k, p.d), (343, 1, 343));
        let p = grm_params(9, 6, 6).unwrap();
        assert_eq!((p.n, p.k, p.d), (531441, 924, 177147));
        assert_eq!(grm_params(5, 2, 5).unwrap_err(), CodeError::DegreeOutOfRange { t: 5, q: 5 });
    }

    #[test]
    fn encoding_basics() {
        let k = f(7);
        let code = build_am_code(&k, 3).unwrap();
        let zero = vec![k.zero(); 8];
        assert_eq!(codeword_weight(&code, &zero).unwrap(), 0);
        let mut e1 = zero.clone();
        e1[0] = k.one();
        let cw = encode(&code, &e1).unwrap();
        assert!(cw.iter().all(|&x| x == k.one()));
        assert_eq!(hamming_weight(&cw), code.n());
        assert_eq!(encode(&code, &e1[..3]), Err(CodeError::WrongLength { expected: 8, got: 3 }));
    }

    #[test]
    fn weight_from_zero_counts() {
        assert_eq!(weight_from_zeros(70, 3, 0).unwrap(), 70);
        assert_eq!(weight_from_zeros(70, 3, 6).unwrap(), 68);
        assert_eq!(
            weight_from_zeros(70, 3, 4),
            Err(CodeError::NotOrbitMultiple { zeros: 4, orbit: 3 })
        );
    }

    #[test]
    fn dzero_examples() {
        let k = f(5);
        let m = 3;
        let zero = SymCombo::zero(&k, m);
        let one = SymCombo::basis(&k, m, 0).unwrap();
        for mode in [DzeroMode::Exhaustive, DzeroMode::ViaReps] {
            assert_eq!(dzero_count(&k, m, &zero, &one, mode).unwrap(), 0);
            assert_eq!(dzero_count(&k, m, &one, &zero, mode).unwrap(), 0);
            let prod = SymCombo::basis(&k, m, 3).unwrap();
            assert_eq!(dzero_count(&k, m, &zero, &prod, mode).unwrap(), 36);
        }
        let k8 = f(8);
        let z8 = SymCombo::zero(&k8, 2);
        assert_eq!(dzero_count(&k8, 2, &z8, &z8, DzeroMode::Exhaustive), Err(CodeError::EvenQ(8)));
    }

    #[test]
    fn projective_scan_visits_each_class_once() {
        let k = f(3);
        let rows = vec![
            vec![k.one(), k.zero(), k.zero()],
            vec![k.zero(), k.one(), k.zero()],
            vec![k.zero(), k.zero(), k.one()],
        ];
        let scan = ProjectiveScan::new(&k, &rows).unwrap();
        assert_eq!(scan.total(), 13);
        let mut seen = Vec::new();
        scan.for_each(0..13, |c, cw| {
            // identity generator: codeword is the message
            assert_eq!(cw, scan.message(c).as_slice());
            assert_eq!(cw, scan.codeword(c).as_slice());
            seen.push(cw.to_vec());
        });
        assert_eq!(seen.len(), 13);
        for (i, a) in seen.iter().enumerate() {
            let lead = a.iter().find(|x| !x.is_zero()).unwrap();
            assert_eq!(*lead, k.one());
            assert!(seen[i + 1..].iter().all(|b| b != a));
        }
        // partial ranges reproduce the same words
        let mut parts = Vec::new();
        for r in [0..5, 5..6, 6..13] {
            scan.for_each(r, |_, cw| parts.push(cw.to_vec()));
        }
        assert_eq!(parts, seen);
    }

    #[test]
    fn dj_distance_small() {
        let code = build_dj_code(&f(7), 3).unwrap();
        let md = min_distance(&code, DEFAULT_BUDGET).unwrap();
        assert_eq!(md.params.d, 20);
        assert_eq!(md.params.distance, DistanceKind::Exact);
        assert_eq!(md.classes, 400);
        let w = codeword_weight(&code, md.witness.as_ref().unwrap()).unwrap();
        assert_eq!(w, 20);
    }

    #[test]
    fn repetition_subcode_has_full_distance() {
        let k = f(7);
        let code = EvalCode::from_points(
            &k,
            3,
            CodeKind::Custom,
            MessageSpace { basis: vec![BasisElem::ElemSym(0)], strategy: EvalStrategy::FastTuple },
            perm::sm_orbit_reps(&k, 3).unwrap().reps,
        )
        .unwrap();
        assert_eq!(min_distance(&code, DEFAULT_BUDGET).unwrap().params.d, 35);
    }

    #[test]
    fn over_budget_falls_back_to_bound() {
        let code = build_am_code(&f(9), 6).unwrap();
        let md = min_distance(&code, 1_000).unwrap();
        assert_eq!(md.params.d, 35);
        assert_eq!(md.params.distance, DistanceKind::LowerBound);
        assert!(md.witness.is_none());
    }

    #[test]
    fn orbit_code_for_cyclic_group() {
        use crate::mvpoly::Permutation;
        let k = f(5);
        let m = 3;
        let c3 = perm::subgroup_from_generators(m, vec![Permutation::from_cycles(m, &[&[1, 2, 3]]).unwrap()])
            .unwrap();
        let x = |i| MultiPoly::var(&k, m, i);
        // x1 x2^2 + x2 x3^2 + x3 x1^2 is C3-invariant but not symmetric
        let cyc = &(&(&x(0) * &x(1).pow(2)) + &(&x(1) * &x(2).pow(2))) + &(&x(2) * &x(0).pow(2));
        let basis = vec![MultiPoly::one(&k, m), sym::elem_sym_poly(&k, m, 1).unwrap(), cyc];
        let code = build_orbit_code(&k, m, &c3, basis).unwrap();
        assert_eq!(code.n(), 20);
        assert_eq!(code.k(), 3);
        let bad = vec![x(0)];
        assert_eq!(build_orbit_code(&k, m, &c3, bad).unwrap_err(), CodeError::NotInvariant(0));
    }
}
