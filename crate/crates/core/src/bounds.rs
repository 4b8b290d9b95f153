//! Closed-form bounds on distinguished zeros and code parameters, and the
//! exhaustive fiber census of the Vandermonde map they are checked against.
//!
//! Everything is exact integer arithmetic except the Weil-type error terms
//! with fractional exponents, which use `f64` rounded in the pessimistic
//! direction.

use alloc::vec;
use alloc::vec::Vec;

use crate::codes::{self, CodeError, CodeParams, DistanceKind};
use crate::count;
use crate::gf::{Field, FieldElement};
use crate::perm::{self, PermError};
use crate::sym;

/// Default cap on exhaustive census size, in tuple evaluations.
pub const DEFAULT_SCAN_CAP: u128 = 1_000_000_000;

/// `M = C(m, 2)`.
pub fn pair_count(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// `d = gcd(C(m,2), q-1)`.
pub fn pair_gcd(q: u64, m: u64) -> u64 {
    count::gcd(pair_count(m), q - 1)
}

/// Real-valued bounds `(lo, hi)` around `q^(m-1)` for the number of
/// rational points of a degree-`delta` hypersurface, with error term
/// `(delta-1)(delta-2) q^(m-3/2) + 5 delta^(13/3) q^(m-2)`.
/// `lo` is rounded down and `hi` up.
pub fn weil_interval(delta: u64, m: u64, q: u64) -> (f64, f64) {
    let qf = q as f64;
    let mf = m as f64;
    let main = libm::pow(qf, mf - 1.0);
    let err = weil_error(delta, m, q);
    (libm::floor(main - err), libm::ceil(main + err))
}

/// The error term of [`weil_interval`].
pub fn weil_error(delta: u64, m: u64, q: u64) -> f64 {
    let qf = q as f64;
    let mf = m as f64;
    let d = delta as f64;
    (d - 1.0) * (d - 2.0) * libm::pow(qf, mf - 1.5) + 5.0 * libm::pow(d, 13.0 / 3.0) * libm::pow(qf, mf - 2.0)
}

/// Upper bound on `|Z_D(F)|` when `s1` and `s2` are independent, rounded up:
/// `m^4 q^(m-3/2) + m^2 q^(m-3/2) + 5 m^(26/3) q^(m-2) + 5 m^(13/3) q^(m-2)
/// + m! C(q-1, m-1)`.
pub fn indep_case_bound(q: u64, m: u64) -> Option<u128> {
    let qf = q as f64;
    let mf = m as f64;
    let a = libm::pow(qf, mf - 1.5);
    let b = libm::pow(qf, mf - 2.0);
    let real = libm::pow(mf, 4.0) * a
        + mf * mf * a
        + 5.0 * libm::pow(mf, 26.0 / 3.0) * b
        + 5.0 * libm::pow(mf, 13.0 / 3.0) * b;
    let exact = count::factorial(m)?.checked_mul(count::binomial(q - 1, m.checked_sub(1)?)?)?;
    let real = libm::ceil(real);
    if real.is_nan() || real >= 3.0e38 {
        return None;
    }
    exact.checked_add(real as u128)
}

/// `P(q,m) d / (q-1) + m P(q-1, m-1)` with `d = gcd(C(m,2), q-1)`, rounded
/// up when the first quotient is not integral. With `d = 1` this is the
/// uniform-fiber case.
pub fn dep_case_bound(q: u64, m: u64) -> Option<u128> {
    if m == 0 {
        return Some(0);
    }
    let d = pair_gcd(q, m) as u128;
    let p = perm::distinguished_count(q, m)?;
    let first = p.checked_mul(d)?.div_ceil((q - 1) as u128);
    let second = (m as u128).checked_mul(perm::distinguished_count(q - 1, m - 1)?)?;
    first.checked_add(second)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MainBound {
    pub value: u128,
    /// `q >= m^10` and `m >= 6`, the regime in which the bound is proven.
    pub in_regime: bool,
}

/// The general zero bound, with the regime flag attached rather than
/// enforced.
pub fn main_bound(q: u64, m: u64) -> Option<MainBound> {
    Some(MainBound { value: dep_case_bound(q, m)?, in_regime: main_regime(q, m) })
}

/// `q >= m^10` and `m >= 6`.
pub fn main_regime(q: u64, m: u64) -> bool {
    m >= 6 && count::checked_pow(m, 10).is_some_and(|t| q as u128 >= t)
}

/// Lower bound on the minimum distance of the `A_m` code:
/// `n - floor(2 C(q,m)/(q-1) + 2 C(q-1,m-1))` with `n = 2 C(q,m)`.
///
/// The subtracted term is floored as a whole, so the result is the ceiling
/// of the real-valued bound; since `d` is an integer this is still a valid
/// lower bound. May be negative for small `q`.
pub fn prop41_distance_bound(q: u64, m: u64) -> Option<i128> {
    if m == 0 {
        return None;
    }
    let c = count::binomial(q, m)?;
    let n = 2 * c;
    let sub = (2 * c) / (q - 1) as u128 + 2 * count::binomial(q - 1, m - 1)?;
    Some(n as i128 - sub as i128)
}

/// Distance formula of the Datta–Johnsen code: `C(q,m) - C(q-1,m-1)`.
pub fn dj_distance(q: u64, m: u64) -> Option<u128> {
    count::binomial(q, m)?.checked_sub(count::binomial(q - 1, m.checked_sub(1)?)?)
}

/// Upper bound on a nonzero fiber of `v_m`: `P(q,m) d / (q-1)`.
pub fn fiber_bound(q: u64, m: u64) -> Option<u128> {
    Some(perm::distinguished_count(q, m)?.checked_mul(pair_gcd(q, m) as u128)? / (q - 1) as u128)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    /// Only the `P(q,m)` distinguished points.
    Distinguished,
    /// All `q^m` tuples; the zero fiber is then `q^m - P(q,m)`.
    AllTuples,
}

/// Sizes of the fibers `v_m^{-1}(lambda)`, indexed by `lambda.index()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCensus {
    pub fibers: Vec<u128>,
    pub scanned: u128,
}

impl FiberCensus {
    pub fn empty(q: u32) -> FiberCensus {
        FiberCensus { fibers: vec![0; q as usize], scanned: 0 }
    }

    pub fn merge(&mut self, other: &FiberCensus) {
        for (a, b) in self.fibers.iter_mut().zip(&other.fibers) {
            *a += b;
        }
        self.scanned += other.scanned;
    }

    pub fn zero_fiber(&self) -> u128 {
        self.fibers[0]
    }

    pub fn nonzero(&self) -> &[u128] {
        &self.fibers[1..]
    }

    pub fn nonzero_total(&self) -> u128 {
        self.nonzero().iter().sum()
    }

    pub fn max_nonzero(&self) -> u128 {
        self.nonzero().iter().copied().max().unwrap_or(0)
    }

    pub fn min_nonzero(&self) -> u128 {
        self.nonzero().iter().copied().min().unwrap_or(0)
    }

    pub fn is_uniform(&self) -> bool {
        self.max_nonzero() == self.min_nonzero()
    }
}

/// Number of evaluations a census performs.
pub fn census_size(q: u64, m: u64, mode: CensusMode) -> Option<u128> {
    match mode {
        CensusMode::Distinguished => perm::distinguished_count(q, m),
        CensusMode::AllTuples => count::checked_pow(q, m),
    }
}

fn check_census(field: &Field, m: usize, mode: CensusMode, cap: u128) -> Result<(), PermError> {
    let q = field.order();
    if m > q as usize {
        return Err(PermError::TooManyVariables { m, q });
    }
    let size = census_size(q as u64, m as u64, mode).unwrap_or(u128::MAX);
    if size > cap {
        return Err(PermError::ScanTooLarge { size, cap });
    }
    Ok(())
}

pub fn vm_fiber_census(field: &Field, m: usize, mode: CensusMode, cap: u128) -> Result<FiberCensus, PermError> {
    check_census(field, m, mode, cap)?;
    let mut c = FiberCensus::empty(field.order());
    match mode {
        CensusMode::Distinguished => {
            perm::for_each_distinguished(field, m, None, |p| tally(field, p, &mut c))?;
        }
        CensusMode::AllTuples => perm::for_each_tuple(field, m, |p| tally(field, p, &mut c)),
    }
    Ok(c)
}

/// The part of [`vm_fiber_census`] over points with first coordinate
/// `first`; merging the parts for every `first` gives the full census.
pub fn vm_fiber_census_part(
    field: &Field,
    m: usize,
    mode: CensusMode,
    cap: u128,
    first: FieldElement,
) -> Result<FiberCensus, PermError> {
    check_census(field, m, mode, cap)?;
    let mut c = FiberCensus::empty(field.order());
    if m == 0 {
        return Ok(c);
    }
    match mode {
        CensusMode::Distinguished => {
            perm::for_each_distinguished(field, m, Some(first), |p| tally(field, p, &mut c))?;
        }
        CensusMode::AllTuples => {
            let mut point = vec![first; m];
            perm::for_each_tuple(field, m - 1, |rest| {
                point[1..].copy_from_slice(rest);
                tally(field, &point, &mut c);
            });
        }
    }
    Ok(c)
}

#[inline]
fn tally(field: &Field, p: &[FieldElement], c: &mut FiberCensus) {
    c.fibers[sym::vandermonde_eval(field, p).index() as usize] += 1;
    c.scanned += 1;
}

/// Every bound at one `(q, m)` with the preconditions it depends on, and
/// optional measured values.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub q: u64,
    pub m: u64,
    /// `C(m, 2)`
    pub pairs: u64,
    /// `gcd(C(m,2), q-1)`
    pub d: u64,
    /// `gcd(m, q-1)`
    pub gcd_m: u64,
    /// Degree used for the Weil interval: the total degree `C(m,2) + m` of
    /// `s1 v_m + s2`.
    pub weil_degree: u64,
    pub weil_lo: f64,
    pub weil_hi: f64,
    pub indep_bound: Option<u128>,
    pub dep_bound: Option<u128>,
    pub main_bound: Option<u128>,
    pub main_flag: bool,
    pub dist_bound: Option<i128>,
    pub q_odd: bool,
    pub m_at_least_6: bool,
    pub gcd_m_one: bool,
    pub gcd_pairs_one: bool,
    pub max_fiber: Option<u128>,
    pub fibers_uniform: Option<bool>,
    pub max_zd: Option<u128>,
    pub min_weight: Option<u128>,
}

pub fn bound_report(q: u64, m: u64) -> BoundReport {
    let d = pair_gcd(q, m);
    let gcd_m = count::gcd(m, q - 1);
    let weil_degree = pair_count(m) + m;
    let (weil_lo, weil_hi) = weil_interval(weil_degree, m, q);
    let main = main_bound(q, m);
    BoundReport {
        q,
        m,
        pairs: pair_count(m),
        d,
        gcd_m,
        weil_degree,
        weil_lo,
        weil_hi,
        indep_bound: indep_case_bound(q, m),
        dep_bound: dep_case_bound(q, m),
        main_bound: main.map(|b| b.value),
        main_flag: main_regime(q, m),
        dist_bound: prop41_distance_bound(q, m),
        q_odd: q % 2 == 1,
        m_at_least_6: m >= 6,
        gcd_m_one: gcd_m == 1,
        gcd_pairs_one: d == 1,
        max_fiber: None,
        fibers_uniform: None,
        max_zd: None,
        min_weight: None,
    }
}

/// One row of a code comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CodeRow {
    pub params: CodeParams,
    pub delta: f64,
    pub rho: f64,
}

impl CodeRow {
    fn new(params: CodeParams) -> CodeRow {
        CodeRow { params, delta: params.relative_distance(), rho: params.rate() }
    }
}

/// The `A_m` code (distance bound), the Datta–Johnsen code and
/// `GR_q(m, m)` at one `(q, m)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub q: u64,
    pub m: u64,
    pub am: CodeRow,
    pub dj: CodeRow,
    pub grm: CodeRow,
    /// `delta_C / delta_DJ`
    pub delta_ratio: f64,
    /// `rho_C / rho_RM`
    pub rho_ratio: f64,
}

/// Formula-level comparison; `d` of the `A_m` code is its lower bound.
pub fn compare_codes(q: u64, m: u64) -> Result<Comparison, CodeError> {
    if q % 2 == 0 {
        return Err(CodeError::EvenQ(q as u32));
    }
    if m < 2 {
        return Err(CodeError::InvalidArity(m as usize));
    }
    if m > q {
        return Err(CodeError::TooManyVariables { m: m as usize, q: q as u32 });
    }
    let c = count::binomial(q, m).ok_or(CodeError::Overflow)?;
    let am_d = prop41_distance_bound(q, m).ok_or(CodeError::Overflow)?.max(1) as u128;
    let am = CodeRow::new(CodeParams {
        q,
        n: 2 * c,
        k: 2 * (m as u128 + 1),
        d: am_d,
        distance: DistanceKind::LowerBound,
    });
    let dj = CodeRow::new(CodeParams {
        q,
        n: c,
        k: m as u128 + 1,
        d: dj_distance(q, m).ok_or(CodeError::Overflow)?,
        distance: DistanceKind::Exact,
    });
    let grm = CodeRow::new(codes::grm_params(q, m, m)?);
    Ok(Comparison {
        q,
        m,
        am,
        dj,
        grm,
        delta_ratio: am.delta / dj.delta,
        rho_ratio: am.rho / grm.rho,
    })
}

/// Whether `values` move strictly toward `target`.
pub fn approaches(values: &[f64], target: f64) -> bool {
    values.windows(2).all(|w| libm::fabs(w[1] - target) < libm::fabs(w[0] - target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dep_case_examples() {
        assert_eq!(dep_case_bound(9, 6), Some(47880));
        assert_eq!(dep_case_bound(11, 6), Some(332640 / 10 * 5 + 6 * 30240));
        // m > q: P = 0
        assert_eq!(dep_case_bound(5, 7), Some(0));
        for (q, m) in [(9, 6), (11, 6), (7, 3), (13, 4)] {
            assert_eq!(main_bound(q, m).unwrap().value, dep_case_bound(q, m).unwrap());
        }
        // d = 1 reduces to P/(q-1) + m P(q-1, m-1)
        let (q, m) = (5, 3);
        assert_eq!(pair_gcd(q, m), 1);
        assert_eq!(dep_case_bound(q, m), Some(60 / 4 + 3 * 12));
    }

    #[test]
    fn main_bound_flag() {
        assert!(!main_bound(9, 6).unwrap().in_regime);
        assert!(main_regime(60_466_176, 6));
        assert!(!main_regime(60_466_175, 6));
        assert!(!main_regime(1025, 2));
        assert!(main_bound(282_475_249, 7).is_none_or(|b| b.in_regime));
    }

    #[test]
    fn distance_bound_examples() {
        assert_eq!(prop41_distance_bound(9, 6), Some(35));
        // 70 - floor(35/3 + 30) = 70 - 41
        assert_eq!(prop41_distance_bound(7, 3), Some(29));
        assert_eq!(dj_distance(7, 3), Some(20));
        assert_eq!(dj_distance(5, 3), Some(4));
    }

    #[test]
    fn weil_examples() {
        let (lo, hi) = weil_interval(1, 3, 9);
        assert_eq!((lo, hi), (81.0 - 45.0, 81.0 + 45.0));
        let err = weil_error(3, 3, 9);
        let expect = 2.0 * 27.0 + 5.0 * libm::pow(3.0, 13.0 / 3.0) * 9.0;
        assert!((err - expect).abs() < 1e-9);
        let (lo, hi) = weil_interval(2, 4, 7);
        let e = 5.0 * libm::pow(2.0, 13.0 / 3.0) * 49.0;
        assert_eq!(lo, libm::floor(343.0 - e));
        assert_eq!(hi, libm::ceil(343.0 + e));
    }

    #[test]
    fn indep_bound_dominates_exact_term() {
        let v = indep_case_bound(9, 6).unwrap();
        assert!(v >= 720 * 56);
        // second arithmetic path: grouped by powers of q
        let q = 9f64;
        let alt = (1296.0 + 36.0) * q.powi(4) * libm::sqrt(q)
            + 5.0 * (libm::pow(6.0, 26.0 / 3.0) + libm::pow(6.0, 13.0 / 3.0)) * q.powi(4);
        let alt = 720 * 56 + libm::ceil(alt) as u128;
        assert!(v.abs_diff(alt) <= 1, "{v} vs {alt}");
    }

    #[test]
    fn fiber_census_examples() {
        let k = Field::with_order(5, None).unwrap();
        let c = vm_fiber_census(&k, 3, CensusMode::Distinguished, DEFAULT_SCAN_CAP).unwrap();
        assert!(c.is_uniform());
        assert_eq!(c.max_nonzero(), 15);
        assert_eq!(c.nonzero_total(), 60);
        assert_eq!(c.zero_fiber(), 0);
        let all = vm_fiber_census(&k, 3, CensusMode::AllTuples, DEFAULT_SCAN_CAP).unwrap();
        assert_eq!(all.zero_fiber(), 125 - 60);
        assert_eq!(all.nonzero(), c.nonzero());

        let k7 = Field::with_order(7, None).unwrap();
        let c = vm_fiber_census(&k7, 3, CensusMode::Distinguished, DEFAULT_SCAN_CAP).unwrap();
        assert!(c.max_nonzero() <= fiber_bound(7, 3).unwrap());
        assert_eq!(fiber_bound(7, 3), Some(105));
        let mut merged = FiberCensus::empty(7);
        for a in k7.elements() {
            merged.merge(&vm_fiber_census_part(&k7, 3, CensusMode::Distinguished, DEFAULT_SCAN_CAP, a).unwrap());
        }
        assert_eq!(merged, c);
        let mut merged = FiberCensus::empty(7);
        for a in k7.elements() {
            merged.merge(&vm_fiber_census_part(&k7, 3, CensusMode::AllTuples, DEFAULT_SCAN_CAP, a).unwrap());
        }
        assert_eq!(merged, vm_fiber_census(&k7, 3, CensusMode::AllTuples, DEFAULT_SCAN_CAP).unwrap());
    }

    #[test]
    fn census_errors() {
        let k = Field::with_order(5, None).unwrap();
        assert_eq!(
            vm_fiber_census(&k, 6, CensusMode::Distinguished, DEFAULT_SCAN_CAP),
            Err(PermError::TooManyVariables { m: 6, q: 5 })
        );
        assert_eq!(
            vm_fiber_census(&k, 3, CensusMode::AllTuples, 100),
            Err(PermError::ScanTooLarge { size: 125, cap: 100 })
        );
    }

    #[test]
    fn comparison_rows() {
        let c = compare_codes(9, 6).unwrap();
        assert_eq!(c.am.params.n, 2 * c.dj.params.n);
        assert_eq!(c.am.params.k, 2 * c.dj.params.k);
        assert_eq!((c.am.params.n, c.am.params.k, c.am.params.d), (168, 14, 35));
        assert_eq!((c.grm.params.n, c.grm.params.k, c.grm.params.d), (531441, 924, 177147));
        assert_eq!(compare_codes(8, 3).unwrap_err(), CodeError::EvenQ(8));
        assert_eq!(compare_codes(5, 7).unwrap_err(), CodeError::TooManyVariables { m: 7, q: 5 });
        let ratios: Vec<f64> = [9, 11, 13].iter().map(|&q| compare_codes(q, 6).unwrap().delta_ratio).collect();
        assert!(approaches(&ratios, 1.0));
    }

    #[test]
    fn report_fields() {
        let r = bound_report(9, 6);
        assert_eq!((r.pairs, r.d, r.gcd_m), (15, 1, 2));
        assert_eq!(r.dep_bound, Some(47880));
        assert_eq!(r.dist_bound, Some(35));
        assert!(!r.main_flag && r.q_odd && r.m_at_least_6 && !r.gcd_m_one && r.gcd_pairs_one);
        assert_eq!(r.weil_degree, 21);
    }
}
