//! Verification suites: each returns a list of named pass/fail checks.

use std::collections::HashMap;

use amcodes::bounds::{self, CensusMode};
use amcodes::codes::{self, DzeroMode};
use amcodes::count;
use amcodes::mvpoly::Permutation;
use amcodes::perm::{self, PermGroup};
use amcodes::sym::{self, SymComboClass};
use amcodes::{Field, FieldElement, MultiPoly, SymCombo};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Orbits,
    Fibers,
    Rank,
    Depfamily,
    Eq4,
    Classify,
    Decompose,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Orbits => "orbits",
            Suite::Fibers => "fibers",
            Suite::Rank => "rank",
            Suite::Depfamily => "depfamily",
            Suite::Eq4 => "eq4",
            Suite::Classify => "classify",
            Suite::Decompose => "decompose",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check { name: name.to_string(), pass, detail }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub samples: Option<u64>,
    pub seed: u64,
    /// Largest scan (in evaluations) a suite may run.
    pub cap: u128,
}

pub fn run_suite(suite: Suite, field: &Field, m: usize, opts: &VerifyOptions) -> Result<Vec<Check>, String> {
    match suite {
        Suite::Orbits => orbits(field, m),
        Suite::Fibers => fibers(field, m, opts),
        Suite::Rank => rank(field, m),
        Suite::Depfamily => depfamily(field, m, opts),
        Suite::Eq4 => eq4(field, m, opts),
        Suite::Classify => classify(field, m, opts),
        Suite::Decompose => decompose(field, m, opts),
    }
}

fn need_odd(field: &Field) -> Result<(), String> {
    if field.characteristic() == 2 {
        Err(format!("q must be odd (got {})", field.order()))
    } else {
        Ok(())
    }
}

fn need_scan(size: Option<u128>, cap: u128) -> Result<(), String> {
    match size {
        Some(s) if s <= cap => Ok(()),
        Some(s) => Err(format!("scan of {s} evaluations exceeds the cap of {cap} (use --force or --cap)")),
        None => Err("scan size overflows".to_string()),
    }
}

fn qm(field: &Field, m: usize) -> (u64, u64) {
    (field.order() as u64, m as u64)
}

fn orbits(field: &Field, m: usize) -> Result<Vec<Check>, String> {
    if m < 2 {
        return Err(format!("m must be at least 2 (got {m})"));
    }
    let (q, mu) = qm(field, m);
    let group = PermGroup::alternating(m);
    let parts = perm::orbit_partition(field, m, &group).map_err(|e| e.to_string())?;
    let half = count::factorial(mu).unwrap() / 2;
    let sizes_ok = parts.iter().all(|o| o.len() as u128 == half);
    let expected = 2 * count::binomial(q, mu).unwrap();
    let covered: u128 = parts.iter().map(|o| o.len() as u128).sum();
    let p = perm::distinguished_count(q, mu).unwrap();

    let index: HashMap<&[FieldElement], usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, o)| o.iter().map(move |pt| (pt.as_slice(), i)))
        .collect();
    let reps = perm::am_orbit_reps(field, m).map_err(|e| e.to_string())?;
    let mut hit = vec![0u32; parts.len()];
    for r in &reps.reps {
        if let Some(&i) = index.get(r.as_slice()) {
            hit[i] += 1;
        }
    }
    Ok(vec![
        check("orbit_size", sizes_ok, format!("every orbit has {half} points")),
        check("orbit_count", parts.len() as u128 == expected, format!("{} orbits; expected {expected}", parts.len())),
        check("coverage", covered == p, format!("{covered} points covered; P(q;m) = {p}")),
        check(
            "representatives",
            reps.reps.len() == parts.len() && hit.iter().all(|&h| h == 1),
            format!("{} representatives each in a distinct orbit", reps.reps.len()),
        ),
    ])
}

fn fibers(field: &Field, m: usize, opts: &VerifyOptions) -> Result<Vec<Check>, String> {
    if m < 2 {
        return Err(format!("m must be at least 2 (got {m})"));
    }
    let (q, mu) = qm(field, m);
    if m > q as usize {
        return Err(format!("m exceeds q ({m} > {q})"));
    }
    let census = par::fiber_census(field, m, CensusMode::Distinguished, opts.cap).map_err(|e| e.to_string())?;
    let p = perm::distinguished_count(q, mu).unwrap();
    let d = bounds::pair_gcd(q, mu);
    let bound = bounds::fiber_bound(q, mu).unwrap();
    let mut out = vec![
        check(
            "fiber_total",
            census.nonzero_total() == p && census.zero_fiber() == 0,
            format!("nonzero fibers sum to {}; P(q;m) = {p}", census.nonzero_total()),
        ),
        check(
            "fiber_bound",
            census.max_nonzero() <= bound,
            format!("max fiber {} <= P(q;m)*{d}/(q-1) = {bound}", census.max_nonzero()),
        ),
    ];
    if d == 1 {
        let each = p / (q - 1) as u128;
        out.push(check(
            "fiber_uniform",
            census.is_uniform() && census.max_nonzero() == each,
            format!("all {} fibers = {} (expected {each})", q - 1, census.max_nonzero()),
        ));
    } else {
        out.push(check(
            "fiber_spread",
            true,
            format!("gcd = {d}; fibers range {}..{}", census.min_nonzero(), census.max_nonzero()),
        ));
    }
    let all = bounds::census_size(q, mu, CensusMode::AllTuples);
    if all.is_some_and(|s| s <= opts.cap) {
        let full = par::fiber_census(field, m, CensusMode::AllTuples, opts.cap).map_err(|e| e.to_string())?;
        let expect = all.unwrap() - p;
        out.push(check(
            "zero_fiber",
            full.zero_fiber() == expect && full.nonzero() == census.nonzero(),
            format!("zero fiber {} = q^m - P(q;m) = {expect}", full.zero_fiber()),
        ));
    }
    Ok(out)
}

fn rank(field: &Field, m: usize) -> Result<Vec<Check>, String> {
    let (q, mu) = qm(field, m);
    let c = count::binomial(q, mu).ok_or("overflow")?;
    let mut out = Vec::new();
    if field.characteristic() != 2 {
        match codes::build_am_code(field, m) {
            Ok(code) => out.push(check(
                "am_rank",
                code.k() == 2 * (m + 1) && code.n() as u128 == 2 * c,
                format!("n = {}; k = {} (expected {}; {})", code.n(), code.k(), 2 * c, 2 * (m + 1)),
            )),
            Err(codes::CodeError::RankDeficient { expected, got }) => {
                out.push(check("am_rank", false, format!("rank {got}; expected {expected}")))
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    match codes::build_dj_code(field, m) {
        Ok(code) => out.push(check(
            "dj_rank",
            code.k() == m + 1 && code.n() as u128 == c,
            format!("n = {}; k = {} (expected {c}; {})", code.n(), code.k(), m + 1),
        )),
        Err(codes::CodeError::RankDeficient { expected, got }) => {
            out.push(check("dj_rank", false, format!("rank {got}; expected {expected}")))
        }
        Err(e) => return Err(e.to_string()),
    }
    Ok(out)
}

fn depfamily(field: &Field, m: usize, opts: &VerifyOptions) -> Result<Vec<Check>, String> {
    need_odd(field)?;
    let (q, mu) = qm(field, m);
    let code = codes::build_am_code(field, m).map_err(|e| e.to_string())?;
    let classes = codes::projective_classes(q, m + 1);
    let evals = opts
        .samples
        .map(|s| s as u128)
        .or(classes.map(|c| c as u128))
        .map(|c| c * (q as u128 - 1) * code.n() as u128);
    need_scan(evals, opts.cap)?;
    let scan = par::dependent_family(&code, opts.samples.map(|s| (s, opts.seed))).map_err(|e| e.to_string())?;
    let bound = bounds::prop41_distance_bound(q, mu).unwrap();
    let combo: Vec<u32> = code_combo(&code, scan.min.class);
    Ok(vec![check(
        "depfamily_weight",
        scan.min.weight as i128 >= bound,
        format!(
            "min weight {} >= {bound} over {} of {} classes and {} lambdas (s1 = {:?}; lambda = {})",
            scan.min.weight,
            scan.classes_scanned,
            scan.classes_total,
            q - 1,
            combo,
            scan.min.lambda.index()
        ),
    )])
}

fn code_combo(code: &codes::EvalCode, class: u64) -> Vec<u32> {
    let fam = codes::DependentFamily::new(code).expect("A_m code");
    fam.combo(class).iter().map(|x| x.index()).collect()
}

fn random_combo(field: &Field, m: usize, rng: &mut impl Rng) -> SymCombo {
    let coeffs = (0..=m).map(|_| field.elem_unchecked(rng.gen_range(0..field.order()))).collect();
    SymCombo::new(field, m, coeffs).expect("length m+1")
}

fn eq4(field: &Field, m: usize, opts: &VerifyOptions) -> Result<Vec<Check>, String> {
    need_odd(field)?;
    let (q, mu) = qm(field, m);
    if m < 2 || m > q as usize {
        return Err(format!("need 2 <= m <= q (got m = {m}; q = {q})"));
    }
    let samples = opts.samples.unwrap_or(200);
    need_scan(count::checked_pow(q, mu).map(|s| s * samples as u128), opts.cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let dj_bound = mu as u128 * perm::distinguished_count(q - 1, mu - 1).unwrap();
    let zero = SymCombo::zero(field, m);
    let mut pairs = Vec::new();
    while pairs.len() < samples as usize {
        let s1 = random_combo(field, m, &mut rng);
        let s2 = random_combo(field, m, &mut rng);
        if !s2.is_zero() {
            pairs.push((s1, s2));
        }
    }
    let mut first_fail = None;
    let mut worst_dj = 0;
    for (i, (s1, s2)) in pairs.iter().enumerate() {
        let c = codes::zero_counts_all_tuples(field, m, s1, s2).map_err(|e| e.to_string())?;
        let zd = codes::dzero_count(field, m, s1, s2, DzeroMode::ViaReps).map_err(|e| e.to_string())?;
        let z2 = codes::dzero_count(field, m, &zero, s2, DzeroMode::ViaReps).map_err(|e| e.to_string())?;
        worst_dj = worst_dj.max(z2);
        let ok = zd == c.distinguished_f && z2 == c.distinguished_s2 && zd + c.all_s2 == c.all_f + c.distinguished_s2;
        if !ok && first_fail.is_none() {
            first_fail = Some(i);
        }
    }
    Ok(vec![
        check(
            "eq4_identity",
            first_fail.is_none(),
            match first_fail {
                None => format!("|Z_D(F)| = |Z(F)| - |Z(s2)| + |Z_D(s2)| on {samples} pairs (seed {})", opts.seed),
                Some(i) => format!("identity fails on pair {i} (seed {})", opts.seed),
            },
        ),
        check(
            "dj_zero_bound",
            worst_dj <= dj_bound,
            format!("max |Z_D(s2)| = {worst_dj} <= m*P(q-1;m-1) = {dj_bound}"),
        ),
    ])
}

/// Type-2 search by brute force over `a in F_q^*`, `alpha in F_q`.
fn oracle_class(field: &Field, coeffs: &[FieldElement]) -> SymComboClass {
    let m = coeffs.len() - 1;
    if coeffs[1..].iter().all(|c| c.is_zero()) {
        return SymComboClass::Degenerate;
    }
    for a in field.elements().skip(1) {
        for alpha in field.elements() {
            if (0..=m).all(|i| coeffs[i] == field.mul(a, field.pow(alpha, (m - i) as u64))) {
                return SymComboClass::Type2 { a, alpha };
            }
        }
    }
    SymComboClass::Type1
}

fn split_product(field: &Field, m: usize, a: FieldElement, alpha: FieldElement) -> MultiPoly {
    (0..m).fold(MultiPoly::constant(field, m, a), |acc, i| {
        &acc * &(&MultiPoly::var(field, m, i) + &MultiPoly::constant(field, m, alpha))
    })
}

fn classify(field: &Field, m: usize, opts: &VerifyOptions) -> Result<Vec<Check>, String> {
    let (q, mu) = qm(field, m);
    if m == 0 || m > sym::MAX_SYMBOLIC_VANDERMONDE {
        return Err(format!("m must be in 1..={}", sym::MAX_SYMBOLIC_VANDERMONDE));
    }
    let total = count::checked_pow(q, mu + 1).ok_or("overflow")?;
    need_scan(Some(total * q as u128 * q as u128), opts.cap)?;
    let mut mismatches = 0u64;
    let mut type2 = 0u64;
    let mut confirmed = 0u64;
    let mut coeffs = vec![FieldElement::ZERO; m + 1];
    for idx in 0..total as u64 {
        let mut t = idx;
        for c in coeffs.iter_mut() {
            *c = field.elem_unchecked((t % q) as u32);
            t /= q;
        }
        let s = SymCombo::new(field, m, coeffs.clone()).unwrap();
        let got = sym::classify_sym_combo(&s);
        if got != oracle_class(field, &coeffs) {
            mismatches += 1;
        }
        if let SymComboClass::Type2 { a, alpha } = got {
            type2 += 1;
            confirmed += (split_product(field, m, a, alpha) == s.to_poly()) as u64;
        }
    }
    Ok(vec![
        check("classify_oracle", mismatches == 0, format!("{total} coefficient vectors; {mismatches} disagree")),
        check(
            "type2_expansion",
            confirmed == type2,
            format!("{confirmed} of {type2} split verdicts match a*prod(alpha + x_i)"),
        ),
    ])
}

fn random_poly(field: &Field, m: usize, rng: &mut impl Rng) -> MultiPoly {
    let mut p = MultiPoly::zero(field, m);
    for _ in 0..rng.gen_range(1..=6) {
        let exps = (0..m).map(|_| rng.gen_range(0..=3)).collect();
        let c = field.elem_unchecked(rng.gen_range(1..field.order()));
        p = &p + &MultiPoly::monomial(field, c, exps);
    }
    p
}

fn decompose(field: &Field, m: usize, opts: &VerifyOptions) -> Result<Vec<Check>, String> {
    need_odd(field)?;
    if m < 2 || m > 6 {
        return Err(format!("decompose suite supports 2 <= m <= 6 (got {m})"));
    }
    let samples = opts.samples.unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let v = sym::vandermonde_poly(field, m).map_err(|e| e.to_string())?;
    let mut round_trip = 0u64;
    for _ in 0..samples {
        let s1 = random_combo(field, m, &mut rng).to_poly();
        let s2 = random_combo(field, m, &mut rng).to_poly();
        let g = &(&s1 * &v) + &s2;
        if let Ok(pair) = sym::decompose_am_invariant(&g) {
            round_trip += (pair.s1 == s1 && pair.s2 == s2) as u64;
        }
    }
    let tau = Permutation::transposition(m, 1, 2).map_err(|e| e.to_string())?;
    let half = field.inv(field.from_int(2)).unwrap();
    let mut parity = 0u64;
    for _ in 0..samples {
        let g = random_poly(field, m, &mut rng);
        let tg = g.apply_permutation(&tau).unwrap();
        let even = (&g + &tg).scalar_mul(half);
        let odd = (&g - &tg).scalar_mul(half);
        let ok = &even + &odd == g
            && even.apply_permutation(&tau).unwrap() == even
            && odd.apply_permutation(&tau).unwrap() == -&odd;
        parity += ok as u64;
    }
    Ok(vec![
        check(
            "decompose_round_trip",
            round_trip == samples,
            format!("{round_trip} of {samples} pairs recovered exactly (seed {})", opts.seed),
        ),
        check("parity_split", parity == samples, format!("{parity} of {samples} polynomials split correctly")),
    ])
}
