//! Parallel drivers for the long scans.
//!
//! Work is cut into chunks whose boundaries depend only on the problem
//! size, never on the thread count, and partial results are merged in chunk
//! order. Output is therefore identical for every `--jobs` value.

use std::ops::Range;

use amcodes::bounds::{self, CensusMode, FiberCensus};
use amcodes::codes::{self, CodeError, DependentFamily, DependentMin, EvalCode, MinDistance, ProjectiveScan};
use amcodes::{Field, PermError};
use rand::seq::index;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Classes per chunk in the projective scans.
const CHUNK: u64 = 1 << 12;

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs `f` on a pool of `jobs` threads.
pub fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(f)
}

fn chunks(total: u64) -> Vec<Range<u64>> {
    (0..total.div_ceil(CHUNK))
        .map(|i| i * CHUNK..((i + 1) * CHUNK).min(total))
        .collect()
}

/// The fiber census split by first coordinate.
pub fn fiber_census(field: &Field, m: usize, mode: CensusMode, cap: u128) -> Result<FiberCensus, PermError> {
    let parts: Vec<_> = field
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| bounds::vm_fiber_census_part(field, m, mode, cap, a))
        .collect::<Result<_, _>>()?;
    let mut total = FiberCensus::empty(field.order());
    for p in &parts {
        total.merge(p);
    }
    Ok(total)
}

/// [`codes::min_distance`] with the class scan spread over threads.
pub fn min_distance(code: &EvalCode, budget: u128) -> Result<MinDistance, CodeError> {
    let classes = codes::projective_classes(code.field().order() as u64, code.k());
    if !codes::within_budget(classes, code.n(), budget) {
        return Ok(MinDistance { params: codes::fallback_params(code)?, witness: None, classes: 0 });
    }
    let scan = ProjectiveScan::new(code.field(), code.generator()).ok_or(CodeError::Overflow)?;
    let best = chunks(scan.total())
        .into_par_iter()
        .map(|r| codes::min_weight_in(&scan, r))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .min()
        .expect("k >= 1");
    let mut params = codes::fallback_params(code)?;
    params.d = best.0 as u128;
    params.distance = codes::DistanceKind::Exact;
    Ok(MinDistance { params, witness: Some(scan.message(best.1)), classes: scan.total() })
}

/// Result of a dependent-family scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DepScan {
    pub min: DependentMin,
    pub classes_scanned: u64,
    pub classes_total: u64,
}

/// Minimum weight of `(v_m + lambda) s1` over all classes of `s1`, or over
/// `samples` classes drawn with `seed`.
pub fn dependent_family(code: &EvalCode, samples: Option<(u64, u64)>) -> Result<DepScan, CodeError> {
    let fam = DependentFamily::new(code)?;
    let total = fam.classes();
    let merge = |parts: Vec<Option<DependentMin>>| parts.into_iter().flatten().reduce(DependentMin::better);
    let (min, scanned) = match samples {
        Some((n, seed)) if n < total => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picks: Vec<u64> = index::sample(&mut rng, total as usize, n as usize)
                .into_iter()
                .map(|i| i as u64)
                .collect();
            picks.sort_unstable();
            let parts = picks.par_chunks(CHUNK as usize).map(|c| fam.min_over(c)).collect();
            (merge(parts), n)
        }
        _ => {
            let parts = chunks(total).into_par_iter().map(|r| fam.min_in(r)).collect();
            (merge(parts), total)
        }
    };
    Ok(DepScan { min: min.expect("at least one class"), classes_scanned: scanned, classes_total: total })
}
