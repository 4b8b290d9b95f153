//! Distinguished points, permutation groups acting on coordinates, and
//! canonical orbit representatives.
//!
//! A point of `F_q^m` is distinguished when its coordinates are pairwise
//! distinct. A subgroup `H` of `S_m` acts on such points by
//! `P_sigma = (P[sigma(1)], ..., P[sigma(m)])`; the action is free, so every
//! orbit has exactly `|H|` points.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::count;
use crate::gf::{Field, FieldElement};
use crate::mvpoly::Permutation;

/// Default cap on materialized group size (10!).
pub const DEFAULT_GROUP_CAP: usize = 3_628_800;

/// Largest `q^m` for which [`orbit_partition`] keeps a visited bitmap.
pub const PARTITION_CAP: u64 = 1 << 28;

pub type Point = Vec<FieldElement>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    TooManyVariables { m: usize, q: u32 },
    InvalidArity(usize),
    NotDistinguished,
    GroupTooLarge { cap: usize },
    WrongArity { expected: usize, got: usize },
    ScanTooLarge { size: u128, cap: u128 },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::TooManyVariables { m, q } => write!(f, "m = {m} exceeds q = {q}"),
            PermError::InvalidArity(m) => write!(f, "need at least 2 variables, got {m}"),
            PermError::NotDistinguished => write!(f, "point has a repeated coordinate"),
            PermError::GroupTooLarge { cap } => write!(f, "group has more than {cap} elements"),
            PermError::WrongArity { expected, got } => {
                write!(f, "expected permutations of {expected} symbols, got {got}")
            }
            PermError::ScanTooLarge { size, cap } => {
                write!(f, "scan of {size} items exceeds the cap of {cap}")
            }
        }
    }
}

impl core::error::Error for PermError {}

/// `P(q, m) = C(q, m) m!`, or 0 when `m > q`. `None` on overflow.
pub fn distinguished_count(q: u64, m: u64) -> Option<u128> {
    count::falling(q, m)
}

pub fn is_distinguished(point: &[FieldElement]) -> bool {
    let set: BTreeSet<_> = point.iter().collect();
    set.len() == point.len()
}

fn check_m(field: &Field, m: usize) -> Result<(), PermError> {
    if m > field.order() as usize {
        Err(PermError::TooManyVariables { m, q: field.order() })
    } else {
        Ok(())
    }
}

/// Calls `visit` on every distinguished point in lexicographic index order,
/// optionally only those whose first coordinate is `first`.
pub fn for_each_distinguished(
    field: &Field,
    m: usize,
    first: Option<FieldElement>,
    mut visit: impl FnMut(&[FieldElement]),
) -> Result<(), PermError> {
    check_m(field, m)?;
    let q = field.order() as usize;
    let mut used = vec![false; q];
    let mut point = vec![FieldElement::ZERO; m];
    if m == 0 {
        visit(&point);
        return Ok(());
    }
    match first {
        Some(a) => {
            used[a.index() as usize] = true;
            point[0] = a;
            fill(field, 1, &mut point, &mut used, &mut visit);
        }
        None => fill(field, 0, &mut point, &mut used, &mut visit),
    }
    Ok(())
}

fn fill(
    field: &Field,
    pos: usize,
    point: &mut [FieldElement],
    used: &mut [bool],
    visit: &mut impl FnMut(&[FieldElement]),
) {
    if pos == point.len() {
        visit(point);
        return;
    }
    for v in 0..used.len() {
        if used[v] {
            continue;
        }
        used[v] = true;
        point[pos] = field.elem_unchecked(v as u32);
        fill(field, pos + 1, point, used, visit);
        used[v] = false;
    }
}

/// Calls `visit` on every point of `F_q^m` in lexicographic index order.
pub fn for_each_tuple(field: &Field, m: usize, mut visit: impl FnMut(&[FieldElement])) {
    let q = field.order();
    let mut idx = vec![0u32; m];
    let mut point = vec![FieldElement::ZERO; m];
    loop {
        visit(&point);
        let Some(pos) = (0..m).rev().find(|&i| idx[i] + 1 < q) else {
            return;
        };
        idx[pos] += 1;
        point[pos] = field.elem_unchecked(idx[pos]);
        for i in pos + 1..m {
            idx[i] = 0;
            point[i] = FieldElement::ZERO;
        }
    }
}

/// Streaming iterator over distinguished points in lexicographic order.
pub struct DistinguishedIter {
    field: Field,
    idx: Vec<u32>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

pub fn iterate_distinguished(field: &Field, m: usize) -> Result<DistinguishedIter, PermError> {
    check_m(field, m)?;
    Ok(DistinguishedIter {
        field: field.clone(),
        idx: (0..m as u32).collect(),
        used: (0..field.order()).map(|v| (v as usize) < m).collect(),
        started: false,
        done: false,
    })
}

impl Iterator for DistinguishedIter {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.idx.iter().map(|&i| self.field.elem_unchecked(i)).collect())
    }
}

impl DistinguishedIter {
    fn advance(&mut self) -> bool {
        let m = self.idx.len();
        let q = self.used.len() as u32;
        for pos in (0..m).rev() {
            let cur = self.idx[pos];
            self.used[cur as usize] = false;
            if let Some(next) = (cur + 1..q).find(|&v| !self.used[v as usize]) {
                self.idx[pos] = next;
                self.used[next as usize] = true;
                let mut v = 0;
                for slot in pos + 1..m {
                    while self.used[v as usize] {
                        v += 1;
                    }
                    self.idx[slot] = v;
                    self.used[v as usize] = true;
                }
                return true;
            }
        }
        false
    }
}

/// The `k`-subsets of `{0..n}` in lexicographic order.
pub struct Subsets {
    cur: Vec<u32>,
    n: u32,
    done: bool,
}

pub fn subsets(n: u32, k: usize) -> Subsets {
    Subsets { cur: (0..k as u32).collect(), n, done: k as u32 > n }
}

impl Iterator for Subsets {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let k = self.cur.len();
        match (0..k).rev().find(|&p| self.cur[p] < self.n - (k - p) as u32) {
            Some(p) => {
                self.cur[p] += 1;
                for i in p + 1..k {
                    self.cur[i] = self.cur[i - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Trivial,
    Alternating,
    Symmetric,
    Generated,
}

/// A subgroup of `S_m` given by generators, with its elements materialized
/// when the closure was computed.
#[derive(Clone, Debug)]
pub struct PermGroup {
    m: usize,
    kind: GroupKind,
    generators: Vec<Permutation>,
    elements: Option<Vec<Permutation>>,
    order: Option<u128>,
}

impl PermGroup {
    pub fn trivial(m: usize) -> PermGroup {
        PermGroup {
            m,
            kind: GroupKind::Trivial,
            generators: Vec::new(),
            elements: None,
            order: Some(1),
        }
    }

    /// `A_m`, generated by the 3-cycles `(1 2 i)`.
    pub fn alternating(m: usize) -> PermGroup {
        let generators = (3..=m)
            .map(|i| Permutation::from_cycles(m, &[&[1, 2, i]]).expect("valid cycle"))
            .collect();
        let order = if m < 2 { Some(1) } else { count::factorial(m as u64).map(|f| f / 2) };
        PermGroup { m, kind: GroupKind::Alternating, generators, elements: None, order }
    }

    /// `S_m`, generated by `(1 2)` and `(1 2 ... m)`.
    pub fn symmetric(m: usize) -> PermGroup {
        let mut generators = Vec::new();
        if m >= 2 {
            generators.push(Permutation::transposition(m, 1, 2).expect("valid"));
        }
        if m >= 3 {
            let cycle: Vec<usize> = (1..=m).collect();
            generators.push(Permutation::from_cycles(m, &[&cycle]).expect("valid"));
        }
        let order = count::factorial(m as u64);
        PermGroup { m, kind: GroupKind::Symmetric, generators, elements: None, order }
    }

    /// The group generated by `gens`, closed by breadth-first search.
    pub fn from_generators(
        m: usize,
        gens: Vec<Permutation>,
        cap: usize,
    ) -> Result<PermGroup, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != m) {
            return Err(PermError::WrongArity { expected: m, got: g.degree() });
        }
        let mut g = PermGroup {
            m,
            kind: GroupKind::Generated,
            generators: gens,
            elements: None,
            order: None,
        };
        g.materialize(cap)?;
        Ok(g)
    }

    /// Computes and stores all elements; fails beyond `cap` elements.
    pub fn materialize(&mut self, cap: usize) -> Result<&[Permutation], PermError> {
        if self.elements.is_none() {
            let id = Permutation::identity(self.m);
            let mut seen = BTreeSet::new();
            seen.insert(id.clone());
            let mut queue = VecDeque::from([id]);
            while let Some(p) = queue.pop_front() {
                for g in &self.generators {
                    let next = g.compose(&p);
                    if seen.insert(next.clone()) {
                        if seen.len() > cap {
                            return Err(PermError::GroupTooLarge { cap });
                        }
                        queue.push_back(next);
                    }
                }
            }
            self.order = Some(seen.len() as u128);
            self.elements = Some(seen.into_iter().collect());
        }
        Ok(self.elements.as_deref().unwrap())
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> Option<&[Permutation]> {
        self.elements.as_deref()
    }

    pub fn order(&self) -> Option<u128> {
        self.order
    }
}

pub fn is_even(sigma: &Permutation) -> bool {
    sigma.is_even()
}

pub fn subgroup_from_generators(m: usize, gens: Vec<Permutation>) -> Result<PermGroup, PermError> {
    PermGroup::from_generators(m, gens, DEFAULT_GROUP_CAP)
}

/// The orbit of a distinguished point, by closure under the generators.
pub fn orbit_of(point: &[FieldElement], group: &PermGroup) -> Result<BTreeSet<Point>, PermError> {
    if point.len() != group.degree() {
        return Err(PermError::WrongArity { expected: group.degree(), got: point.len() });
    }
    if !is_distinguished(point) {
        return Err(PermError::NotDistinguished);
    }
    Ok(closure(point.to_vec(), group))
}

fn closure<T: Copy + Ord>(start: Vec<T>, group: &PermGroup) -> BTreeSet<Vec<T>> {
    let mut seen = BTreeSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for g in group.generators() {
            let next = g.act_on_point(&p);
            if !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Every orbit of the group on the distinguished points, each sorted, listed
/// in order of their smallest point.
pub fn orbit_partition(
    field: &Field,
    m: usize,
    group: &PermGroup,
) -> Result<Vec<Vec<Point>>, PermError> {
    check_m(field, m)?;
    if group.degree() != m {
        return Err(PermError::WrongArity { expected: m, got: group.degree() });
    }
    let q = field.order() as u64;
    let size = count::checked_pow(q, m as u64).unwrap_or(u128::MAX);
    if size > PARTITION_CAP as u128 {
        return Err(PermError::ScanTooLarge { size, cap: PARTITION_CAP as u128 });
    }
    let encode = |p: &[FieldElement]| p.iter().fold(0u64, |acc, x| acc * q + x.index() as u64);
    let mut visited = vec![false; size as usize];
    let mut orbits = Vec::new();
    for_each_distinguished(field, m, None, |p| {
        if visited[encode(p) as usize] {
            return;
        }
        let orbit = closure(p.to_vec(), group);
        for x in &orbit {
            visited[encode(x) as usize] = true;
        }
        orbits.push(orbit.into_iter().collect());
    })?;
    Ok(orbits)
}

/// One representative per orbit of a group on the distinguished points.
#[derive(Clone, Debug)]
pub struct OrbitReps {
    pub group: PermGroup,
    pub reps: Vec<Point>,
    /// Common orbit size (the action is free).
    pub orbit_size: u128,
}

/// Representatives of the `A_m`-orbits: for each `m`-subset
/// `a_1 < ... < a_m`, the sorted tuple and the tuple with its last two
/// entries swapped. Subsets come in lexicographic order, the sorted tuple
/// before the swapped one.
pub fn am_orbit_reps(field: &Field, m: usize) -> Result<OrbitReps, PermError> {
    if m < 2 {
        return Err(PermError::InvalidArity(m));
    }
    check_m(field, m)?;
    let mut reps = Vec::new();
    for subset in subsets(field.order(), m) {
        let sorted: Point = subset.iter().map(|&i| field.elem_unchecked(i)).collect();
        let mut swapped = sorted.clone();
        swapped.swap(m - 2, m - 1);
        reps.push(sorted);
        reps.push(swapped);
    }
    let group = PermGroup::alternating(m);
    let orbit_size = group.order().expect("known order");
    Ok(OrbitReps { group, reps, orbit_size })
}

/// Representatives of the `S_m`-orbits: the sorted `m`-subsets.
pub fn sm_orbit_reps(field: &Field, m: usize) -> Result<OrbitReps, PermError> {
    check_m(field, m)?;
    let reps = subsets(field.order(), m)
        .map(|s| s.iter().map(|&i| field.elem_unchecked(i)).collect())
        .collect();
    let group = PermGroup::symmetric(m);
    let orbit_size = group.order().expect("known order");
    Ok(OrbitReps { group, reps, orbit_size })
}

/// Representatives for an arbitrary `H <= S_m`: the lexicographically
/// smallest point of each orbit.
///
/// The orbits of `H` on arrangements of one subset look the same for every
/// subset (the index order is preserved by relabeling), so they are computed
/// once on arrangements of `0..m` and transported. Each subset contributes
/// `m!/|H|` representatives.
pub fn orbit_reps(field: &Field, m: usize, group: &PermGroup) -> Result<OrbitReps, PermError> {
    check_m(field, m)?;
    if group.degree() != m {
        return Err(PermError::WrongArity { expected: m, got: group.degree() });
    }
    let arrangements = count::factorial(m as u64).unwrap_or(u128::MAX);
    if arrangements > DEFAULT_GROUP_CAP as u128 {
        return Err(PermError::ScanTooLarge { size: arrangements, cap: DEFAULT_GROUP_CAP as u128 });
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut patterns: Vec<Vec<usize>> = Vec::new();
    let mut orbit_size = 0u128;
    let identity: Vec<usize> = (0..m).collect();
    let mut all = vec![identity];
    // every arrangement of 0..m, lexicographic
    let mut i = 0;
    while i < all.len() {
        let cur = all[i].clone();
        if let Some(next) = next_permutation(&cur) {
            all.push(next);
        }
        i += 1;
    }
    for arr in all {
        if seen.contains(&arr) {
            continue;
        }
        let orbit = closure(arr.clone(), group);
        orbit_size = orbit.len() as u128;
        seen.extend(orbit);
        patterns.push(arr);
    }
    let mut reps = Vec::new();
    for subset in subsets(field.order(), m) {
        for pat in &patterns {
            reps.push(pat.iter().map(|&j| field.elem_unchecked(subset[j])).collect());
        }
    }
    Ok(OrbitReps { group: group.clone(), reps, orbit_size })
}

fn next_permutation(a: &[usize]) -> Option<Vec<usize>> {
    let n = a.len();
    let i = (0..n.saturating_sub(1)).rev().find(|&i| a[i] < a[i + 1])?;
    let j = (i + 1..n).rev().find(|&j| a[j] > a[i])?;
    let mut out = a.to_vec();
    out.swap(i, j);
    out[i + 1..].reverse();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> Field {
        Field::with_order(q, None).unwrap()
    }

    fn pt(field: &Field, idx: &[u32]) -> Point {
        idx.iter().map(|&i| field.elem(i).unwrap()).collect()
    }

    #[test]
    fn distinguished_counts() {
        // oracle: count tuples with distinct coordinates among all q^m
        for (q, m) in [(5u32, 3usize), (4, 2), (3, 3), (7, 1)] {
            let field = f(q);
            let mut n = 0u128;
            for_each_tuple(&field, m, |p| n += is_distinguished(p) as u128);
            assert_eq!(distinguished_count(q as u64, m as u64), Some(n));
        }
        assert_eq!(distinguished_count(5, 3), Some(60));
        assert_eq!(distinguished_count(11, 1), Some(11));
        assert_eq!(distinguished_count(3, 5), Some(0));
    }

    #[test]
    fn iteration_order_and_size() {
        let k = f(3);
        let pts: Vec<_> = iterate_distinguished(&k, 3).unwrap().collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], pt(&k, &[0, 1, 2]));
        assert_eq!(pts[5], pt(&k, &[2, 1, 0]));
        assert!(pts.windows(2).all(|w| w[0] < w[1]));

        let k5 = f(5);
        let a: Vec<_> = iterate_distinguished(&k5, 3).unwrap().collect();
        let mut b = Vec::new();
        for_each_distinguished(&k5, 3, None, |p| b.push(p.to_vec())).unwrap();
        assert_eq!(a.len(), 60);
        assert_eq!(a, b);

        assert_eq!(
            iterate_distinguished(&k, 4).err(),
            Some(PermError::TooManyVariables { m: 4, q: 3 })
        );
    }

    #[test]
    fn prefix_split_covers_everything() {
        let k = f(7);
        let mut total = 0;
        for a in k.elements() {
            for_each_distinguished(&k, 3, Some(a), |p| {
                assert_eq!(p[0], a);
                total += 1;
            })
            .unwrap();
        }
        assert_eq!(total, 210);
    }

    #[test]
    fn subsets_in_order() {
        let s: Vec<_> = subsets(4, 2).collect();
        assert_eq!(s, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(5, 0).count(), 1);
        assert_eq!(subsets(3, 4).count(), 0);
        assert_eq!(subsets(9, 6).count(), 84);
    }

    #[test]
    fn group_orders() {
        let a4 = subgroup_from_generators(
            4,
            vec![
                Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(a4.order(), Some(12));
        assert!(a4.elements().unwrap().iter().all(|p| p.is_even()));
        assert_eq!(subgroup_from_generators(4, vec![]).unwrap().order(), Some(1));
        assert!(!is_even(&Permutation::transposition(3, 1, 2).unwrap()));

        for m in 2..=6 {
            let mut a = PermGroup::alternating(m);
            let expected = a.order().unwrap();
            assert_eq!(a.materialize(DEFAULT_GROUP_CAP).unwrap().len() as u128, expected);
            let mut s = PermGroup::symmetric(m);
            let expected = s.order().unwrap();
            assert_eq!(s.materialize(DEFAULT_GROUP_CAP).unwrap().len() as u128, expected);
        }
        let mut s6 = PermGroup::symmetric(6);
        assert_eq!(s6.materialize(100).unwrap_err(), PermError::GroupTooLarge { cap: 100 });
        assert!(matches!(
            subgroup_from_generators(3, vec![Permutation::identity(4)]),
            Err(PermError::WrongArity { .. })
        ));
    }

    #[test]
    fn orbit_examples() {
        let k = f(5);
        let p = pt(&k, &[0, 1, 2]);
        let a3 = orbit_of(&p, &PermGroup::alternating(3)).unwrap();
        let expect: BTreeSet<_> =
            [pt(&k, &[0, 1, 2]), pt(&k, &[1, 2, 0]), pt(&k, &[2, 0, 1])].into_iter().collect();
        assert_eq!(a3, expect);
        assert_eq!(orbit_of(&p, &PermGroup::symmetric(3)).unwrap().len(), 6);
        assert_eq!(orbit_of(&p, &PermGroup::trivial(3)).unwrap().len(), 1);
        assert_eq!(
            orbit_of(&pt(&k, &[1, 1, 2]), &PermGroup::alternating(3)),
            Err(PermError::NotDistinguished)
        );
    }

    #[test]
    fn am_reps_hit_each_orbit_once() {
        for (q, m) in [(5u32, 3usize), (7, 3), (7, 4), (5, 2)] {
            let k = f(q);
            let reps = am_orbit_reps(&k, m).unwrap();
            let c = count::binomial(q as u64, m as u64).unwrap() as usize;
            assert_eq!(reps.reps.len(), 2 * c);
            let group = PermGroup::alternating(m);
            let orbits = orbit_partition(&k, m, &group).unwrap();
            assert_eq!(orbits.len(), 2 * c);
            for o in &orbits {
                assert_eq!(o.len() as u128, reps.orbit_size);
                let hits = reps.reps.iter().filter(|r| o.binary_search(r).is_ok()).count();
                assert_eq!(hits, 1);
            }
            // the two reps of one subset lie in different orbits
            for pair in reps.reps.chunks(2) {
                assert!(!orbit_of(&pair[0], &group).unwrap().contains(&pair[1]));
            }
        }
        assert_eq!(am_orbit_reps(&f(7), 6).unwrap().reps.len(), 14);
        assert_eq!(am_orbit_reps(&f(5), 1).unwrap_err(), PermError::InvalidArity(1));
    }

    #[test]
    fn generic_reps_agree_with_named_constructions() {
        let k = f(7);
        for m in 2..=4 {
            let am = am_orbit_reps(&k, m).unwrap();
            let generic = orbit_reps(&k, m, &PermGroup::alternating(m)).unwrap();
            assert_eq!(am.reps, generic.reps);
            assert_eq!(am.orbit_size, generic.orbit_size);
            let sm = sm_orbit_reps(&k, m).unwrap();
            let generic = orbit_reps(&k, m, &PermGroup::symmetric(m)).unwrap();
            assert_eq!(sm.reps, generic.reps);
        }
        // a cyclic group of order 4 on 4 symbols: 6 reps per subset
        let c4 = subgroup_from_generators(4, vec![Permutation::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap()])
            .unwrap();
        let reps = orbit_reps(&k, 4, &c4).unwrap();
        assert_eq!(reps.orbit_size, 4);
        assert_eq!(reps.reps.len(), 35 * 6);
        let orbits = orbit_partition(&k, 4, &c4).unwrap();
        assert_eq!(orbits.len(), reps.reps.len());
        for o in &orbits {
            assert_eq!(reps.reps.iter().filter(|r| o.binary_search(r).is_ok()).count(), 1);
        }
    }
}
