//! The lattice of flats of a small matroid, and the structural tests built on it.
//!
//! Flats are stored sorted by `(rank, bits)`. Meets are intersections and
//! joins are smallest enclosing flats; both are answered from lookup tables
//! without further oracle queries once the lattice is built.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::Serialize;

use crate::derived::{closures_of_independent, guard, scan_levels};
use crate::error::{MatroidError, Result};
use crate::ground::{ElementSet, GroundSet};
use crate::oracle::Oracle;

/// Default size limit for lattice construction.
pub const LATTICE_LIMIT: usize = 12;

/// Ground sets up to this size get dense `2^n` lookup tables.
const DENSE_LIMIT: usize = 16;

const NONE: u32 = u32::MAX;

enum SetIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<ElementSet, u32>),
}

impl SetIndex {
    fn get(&self, s: ElementSet) -> Option<usize> {
        match self {
            SetIndex::Dense(v) => v
                .get(s.bits() as usize)
                .copied()
                .filter(|&i| i != NONE)
                .map(|i| i as usize),
            SetIndex::Sparse(m) => m.get(&s).map(|&i| i as usize),
        }
    }
}

/// An intersection-closed family of sets ordered by inclusion, with a rank.
pub struct FlatLattice {
    flats: Vec<ElementSet>,
    ranks: Vec<usize>,
    top: ElementSet,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    index: SetIndex,
    /// `containing[e]` is a bitvector over flat indices: flats holding element `e`.
    containing: Vec<Vec<u64>>,
    /// Memoized smallest enclosing flat, keyed by subset bits (dense mode only).
    join_cache: Vec<AtomicU32>,
}

/// A height-two interval `[bottom, top]` together with its number of flats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub bottom: ElementSet,
    pub top: ElementSet,
    pub size: usize,
}

/// Members of a sublattice, as indices into a [`FlatLattice`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub members: Vec<usize>,
    pub generators: Vec<usize>,
}

impl FlatLattice {
    /// Builds a lattice from an intersection-closed family containing `top`.
    /// Covers are computed from inclusion alone, so `ranks` may be any grading.
    pub fn from_parts(top: ElementSet, family: Vec<(ElementSet, usize)>) -> Result<Self> {
        let mut family = family;
        family.sort_by_key(|&(f, r)| (r, f.bits()));
        family.dedup_by_key(|&mut (f, _)| f);
        let flats: Vec<ElementSet> = family.iter().map(|&(f, _)| f).collect();
        if !flats.contains(&top) {
            return Err(MatroidError::Domain("family lacks its top element".into()));
        }
        for &a in &flats {
            for &b in &flats {
                if !flats.contains(&(a & b)) {
                    return Err(MatroidError::Domain("family is not closed under intersection".into()));
                }
            }
        }
        let m = flats.len();
        let mut upper = vec![Vec::new(); m];
        let strict = |x: usize, y: usize| x != y && flats[x].is_subset(flats[y]);
        for (i, covers) in upper.iter_mut().enumerate() {
            for j in 0..m {
                if strict(i, j) && !(0..m).any(|k| strict(i, k) && strict(k, j)) {
                    covers.push(j);
                }
            }
        }
        Ok(Self::assemble(top, flats, family.iter().map(|&(_, r)| r).collect(), upper))
    }

    fn graded(top: ElementSet, family: Vec<(ElementSet, usize)>) -> Self {
        let mut family = family;
        family.sort_by_key(|&(f, r)| (r, f.bits()));
        family.dedup_by_key(|&mut (f, _)| f);
        let flats: Vec<ElementSet> = family.iter().map(|&(f, _)| f).collect();
        let ranks: Vec<usize> = family.iter().map(|&(_, r)| r).collect();
        let m = flats.len();
        let mut upper = vec![Vec::new(); m];
        // In a geometric lattice F < G is a cover iff the ranks differ by one.
        let mut start = 0;
        while start < m {
            let r = ranks[start];
            let end = ranks[start..].iter().position(|&x| x != r).map_or(m, |p| start + p);
            let next_end = ranks[end..].iter().position(|&x| x != r + 1).map_or(m, |p| end + p);
            for i in start..end {
                for j in end..next_end {
                    if flats[i].is_subset(flats[j]) {
                        upper[i].push(j);
                    }
                }
            }
            start = end;
        }
        Self::assemble(top, flats, ranks, upper)
    }

    fn assemble(top: ElementSet, flats: Vec<ElementSet>, ranks: Vec<usize>, upper: Vec<Vec<usize>>) -> Self {
        let m = flats.len();
        let mut lower = vec![Vec::new(); m];
        for (i, ups) in upper.iter().enumerate() {
            for &j in ups {
                lower[j].push(i);
            }
        }
        let n = top.iter().last().map_or(0, |x| x + 1);
        let dense = n <= DENSE_LIMIT;
        let index = if dense {
            let mut v = vec![NONE; 1 << n];
            for (i, f) in flats.iter().enumerate() {
                v[f.bits() as usize] = i as u32;
            }
            SetIndex::Dense(v)
        } else {
            SetIndex::Sparse(flats.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect())
        };
        let words = m.div_ceil(64);
        let mut containing = vec![vec![0u64; words]; n];
        for (i, f) in flats.iter().enumerate() {
            for e in f.iter() {
                containing[e][i / 64] |= 1 << (i % 64);
            }
        }
        let join_cache = if dense {
            (0..1usize << n).map(|_| AtomicU32::new(NONE)).collect()
        } else {
            Vec::new()
        };
        FlatLattice {
            flats,
            ranks,
            top,
            upper,
            lower,
            index,
            containing,
            join_cache,
        }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flats(&self) -> &[ElementSet] {
        &self.flats
    }

    pub fn flat(&self, i: usize) -> ElementSet {
        self.flats[i]
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn rank(&self) -> usize {
        self.ranks[self.top_index()]
    }

    pub fn index_of(&self, f: ElementSet) -> Option<usize> {
        self.index.get(f)
    }

    pub fn bottom_index(&self) -> usize {
        0
    }

    pub fn top_index(&self) -> usize {
        self.index_of(self.top).expect("top is a member")
    }

    pub fn top(&self) -> ElementSet {
        self.top
    }

    /// Flats covering flat `i`.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    /// Flats covered by flat `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn covers(&self, lo: usize, hi: usize) -> bool {
        self.upper[lo].contains(&hi)
    }

    pub fn atoms(&self) -> &[usize] {
        &self.upper[self.bottom_index()]
    }

    pub fn coatoms(&self) -> Vec<usize> {
        self.lower[self.top_index()].clone()
    }

    /// Flats of rank one less than the top.
    pub fn hyperplanes(&self) -> Vec<ElementSet> {
        let r = self.rank();
        (0..self.len())
            .filter(|&i| r > 0 && self.ranks[i] == r - 1)
            .map(|i| self.flats[i])
            .collect()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.index_of(self.flats[a] & self.flats[b])
            .expect("family is intersection-closed")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.enclosing(self.flats[a] | self.flats[b])
    }

    /// Smallest flat containing `s` (the closure of `s` for matroid lattices).
    pub fn enclosing(&self, s: ElementSet) -> usize {
        if let Some(slot) = self.join_cache.get(s.bits() as usize) {
            let v = slot.load(Ordering::Relaxed);
            if v != NONE {
                return v as usize;
            }
            let found = self.enclosing_uncached(s);
            slot.store(found as u32, Ordering::Relaxed);
            return found;
        }
        self.enclosing_uncached(s)
    }

    fn enclosing_uncached(&self, s: ElementSet) -> usize {
        let words = self.len().div_ceil(64);
        let mut acc = vec![u64::MAX; words];
        for e in s.iter() {
            let Some(row) = self.containing.get(e) else {
                return self.top_index();
            };
            for (a, r) in acc.iter_mut().zip(row) {
                *a &= r;
            }
        }
        // Flats are sorted by rank, so the first hit is the smallest enclosing flat.
        for (w, &bits) in acc.iter().enumerate() {
            if bits != 0 {
                let i = w * 64 + bits.trailing_zeros() as usize;
                if i < self.len() {
                    return i;
                }
            }
        }
        self.top_index()
    }

    /// Names of every flat, grouped by rank.
    pub fn by_rank(&self) -> Vec<Vec<ElementSet>> {
        let mut out = vec![Vec::new(); self.rank() + 1];
        for (i, &f) in self.flats.iter().enumerate() {
            out[self.ranks[i]].push(f);
        }
        out
    }

    /// Hasse diagram in Graphviz DOT, bottom at the bottom.
    pub fn to_dot(&self, ground: &GroundSet) -> String {
        let mut out = String::from("digraph flats {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, &f) in self.flats.iter().enumerate() {
            let label = if f.is_empty() { "∅".to_string() } else { ground.format(f) };
            out.push_str(&format!("  f{i} [label=\"{label}\" rank={}];\n", self.ranks[i]));
        }
        for (i, ups) in self.upper.iter().enumerate() {
            for j in ups {
                out.push_str(&format!("  f{i} -> f{j};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// All flats as closures of independent sets. One round per independent-set
/// level plus one round for the closures.
pub fn build_flat_lattice(o: &dyn Oracle, max_n: Option<usize>) -> Result<FlatLattice> {
    guard(o, max_n, LATTICE_LIMIT)?;
    let levels = scan_levels(o)?;
    let indeps: Vec<ElementSet> = levels.independent.iter().flatten().copied().collect();
    let closures = closures_of_independent(o, &indeps)?;
    let family = indeps
        .iter()
        .zip(closures)
        .map(|(i, f)| (f, i.len()))
        .collect();
    Ok(FlatLattice::graded(o.active(), family))
}

/// Every flat is a join of atoms, and `F1 ≻ F1 ∧ F2` implies `F2 ≺ F1 ∨ F2`.
pub fn is_geometric(lat: &FlatLattice) -> bool {
    let atoms = lat.atoms();
    for i in 0..lat.len() {
        let below = atoms
            .iter()
            .filter(|&&a| lat.flat(a).is_subset(lat.flat(i)))
            .fold(ElementSet::EMPTY, |acc, &a| acc | lat.flat(a));
        if lat.enclosing(below) != i {
            return false;
        }
    }
    for a in 0..lat.len() {
        for b in 0..lat.len() {
            let m = lat.meet(a, b);
            if lat.covers(m, a) && !lat.covers(b, lat.join(a, b)) {
                return false;
            }
        }
    }
    true
}

fn flat_indices(lat: &FlatLattice, sets: &[ElementSet]) -> Result<Vec<usize>> {
    sets.iter()
        .map(|&f| {
            lat.index_of(f)
                .ok_or_else(|| MatroidError::Domain(format!("{f:?} is not a flat")))
        })
        .collect()
}

/// Smallest family containing `gens` that is closed under meet and join.
pub fn sublattice_generated(lat: &FlatLattice, gens: &[ElementSet]) -> Result<Sublattice> {
    let generators = flat_indices(lat, gens)?;
    let mut seen = vec![false; lat.len()];
    let mut members = Vec::new();
    for &g in &generators {
        if !seen[g] {
            seen[g] = true;
            members.push(g);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        for j in 0..=i {
            let b = members[j];
            for c in [lat.meet(a, b), lat.join(a, b)] {
                if !seen[c] {
                    seen[c] = true;
                    members.push(c);
                }
            }
        }
        i += 1;
    }
    members.sort_unstable();
    Ok(Sublattice {
        members,
        generators,
    })
}

impl Sublattice {
    pub fn sets(&self, lat: &FlatLattice) -> Vec<ElementSet> {
        self.members.iter().map(|&i| lat.flat(i)).collect()
    }

    fn bottom(&self) -> usize {
        self.members[0]
    }

    fn top(&self) -> usize {
        *self.members.last().expect("nonempty")
    }

    /// Minimal members above the bottom.
    pub fn atoms(&self, lat: &FlatLattice) -> Vec<usize> {
        let bottom = self.bottom();
        let rest: Vec<usize> = self.members.iter().copied().filter(|&m| m != bottom).collect();
        rest.iter()
            .copied()
            .filter(|&a| !rest.iter().any(|&b| b != a && lat.flat(b).is_subset(lat.flat(a))))
            .collect()
    }

    /// Maximal members below the top.
    pub fn coatoms(&self, lat: &FlatLattice) -> Vec<usize> {
        let top = self.top();
        let rest: Vec<usize> = self.members.iter().copied().filter(|&m| m != top).collect();
        rest.iter()
            .copied()
            .filter(|&a| !rest.iter().any(|&b| b != a && lat.flat(a).is_subset(lat.flat(b))))
            .collect()
    }
}

/// True iff `sub` is isomorphic to the powerset of its atoms.
pub fn is_boolean_algebra(lat: &FlatLattice, sub: &Sublattice) -> bool {
    if sub.members.is_empty() {
        return false;
    }
    let atoms = sub.atoms(lat);
    let k = atoms.len();
    if k >= 32 || sub.members.len() != 1usize << k {
        return false;
    }
    // Join of every atom subset, built up one atom at a time.
    let mut joins = vec![sub.bottom(); 1 << k];
    for mask in 1usize..1 << k {
        let low = mask.trailing_zeros() as usize;
        joins[mask] = lat.join(joins[mask & (mask - 1)], atoms[low]);
    }
    let mut sorted = joins.clone();
    sorted.sort_unstable();
    if sorted != sub.members {
        return false;
    }
    let full = (1usize << k) - 1;
    let mut dual: Vec<usize> = (0..k).map(|a| joins[full & !(1 << a)]).collect();
    dual.sort_unstable();
    dual.dedup();
    let mut coatoms = sub.coatoms(lat);
    coatoms.sort_unstable();
    dual.len() == k && dual == coatoms
}

/// True iff the hyperplanes are the coatoms of a Boolean sublattice.
///
/// The sublattice is generated by the hyperplanes together with the top, so a
/// single hyperplane yields the two-element algebra.
pub fn is_cofree(lat: &FlatLattice, hyperplanes: &[ElementSet]) -> Result<bool> {
    let r = lat.rank();
    let idx = flat_indices(lat, hyperplanes)?;
    if let Some(&bad) = idx.iter().find(|&&i| r == 0 || lat.rank_of(i) != r - 1) {
        return Err(MatroidError::Domain(format!("{:?} is not a hyperplane", lat.flat(bad))));
    }
    let mut gens = hyperplanes.to_vec();
    gens.push(lat.top());
    let sub = sublattice_generated(lat, &gens)?;
    if !is_boolean_algebra(lat, &sub) {
        return Ok(false);
    }
    let mut want = idx;
    want.sort_unstable();
    want.dedup();
    let mut got = sub.coatoms(lat);
    got.sort_unstable();
    Ok(got == want)
}

/// `[σ(meet ∪ (B − x)) for x in B]`, in index order of `B`.
///
/// `b` must be a basis of the contraction by `meet`: independent, disjoint
/// from `meet` and spanning together with it. The flat/point correspondence
/// (`x_j` lies in the `i`-th hyperplane iff `i ≠ j`) is checked on the result.
pub fn basis_generated_hyperplanes(
    o: &dyn Oracle,
    b: ElementSet,
    meet: ElementSet,
) -> Result<Vec<ElementSet>> {
    use crate::derived::{basis_of, rank};
    if !b.is_disjoint(meet) {
        return Err(MatroidError::Domain("basis meets the contracted set".into()));
    }
    let i_meet = basis_of(o, meet)?;
    let joint = i_meet | b;
    let answers = o.submit_round(&[joint])?;
    if !answers[0] || rank(o, o.active())? != joint.len() {
        return Err(MatroidError::Domain(format!(
            "{} is not a basis of the contraction by {}",
            o.ground().format(b),
            o.ground().format(meet)
        )));
    }
    let xs = b.to_vec();
    let gens: Vec<ElementSet> = xs.iter().map(|&x| joint.without(x)).collect();
    let hyperplanes: Vec<ElementSet> = closures_of_independent(o, &gens)?
        .into_iter()
        .map(|h| h | meet)
        .collect();
    for (i, h) in hyperplanes.iter().enumerate() {
        for (j, &x) in xs.iter().enumerate() {
            if h.contains(x) == (i == j) {
                return Err(MatroidError::Domain(
                    "hyperplanes do not match their generating points".into(),
                ));
            }
        }
    }
    Ok(hyperplanes)
}

/// Structural facts about the cocircuits `E \ H_i` of a family of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocircuitFamilyReport {
    /// Cocircuits with no point outside all the others.
    pub without_private_point: Vec<usize>,
    /// Number of distinct pairwise symmetric differences.
    pub distinct_differences: usize,
    /// `m choose 2`.
    pub pairs: usize,
    /// Elements lying in at least two cocircuits but not in all of them.
    pub dichotomy_violations: Vec<usize>,
}

impl CocircuitFamilyReport {
    pub fn has_private_points(&self) -> bool {
        self.without_private_point.is_empty()
    }

    pub fn differences_distinct(&self) -> bool {
        self.distinct_differences == self.pairs
    }

    pub fn dichotomy_holds(&self) -> bool {
        self.dichotomy_violations.is_empty()
    }
}

pub fn analyze_cocircuit_family(top: ElementSet, hyperplanes: &[ElementSet]) -> CocircuitFamilyReport {
    let co: Vec<ElementSet> = hyperplanes.iter().map(|&h| top - h).collect();
    let m = co.len();
    let without_private_point = (0..m)
        .filter(|&i| {
            let others = (0..m)
                .filter(|&j| j != i)
                .fold(ElementSet::EMPTY, |acc, j| acc | co[j]);
            (co[i] - others).is_empty()
        })
        .collect();
    let mut diffs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            diffs.push((co[i] ^ co[j]).bits());
        }
    }
    let pairs = diffs.len();
    diffs.sort_unstable();
    diffs.dedup();
    let all = co.iter().fold(top, |acc, &c| acc & c);
    let dichotomy_violations = top
        .iter()
        .filter(|&e| !all.contains(e) && co.iter().filter(|c| c.contains(e)).count() >= 2)
        .collect();
    CocircuitFamilyReport {
        without_private_point,
        distinct_differences: diffs.len(),
        pairs,
        dichotomy_violations,
    }
}

/// Some height-two interval holding at least six flats.
///
/// Intervals below the top are scanned first; then all others.
pub fn find_u42_interval(lat: &FlatLattice) -> Option<Interval> {
    let r = lat.rank();
    let top = lat.top_index();
    if r >= 2 {
        for i in (0..lat.len()).filter(|&i| lat.rank_of(i) == r - 2) {
            let size = lat.upper_covers(i).len() + 2;
            if size >= 6 {
                return Some(Interval {
                    bottom: lat.flat(i),
                    top: lat.flat(top),
                    size,
                });
            }
        }
    }
    for lo in 0..lat.len() {
        let mut seen = Vec::new();
        for &mid in lat.upper_covers(lo) {
            for &hi in lat.upper_covers(mid) {
                if seen.contains(&hi) {
                    continue;
                }
                seen.push(hi);
                let between = lat
                    .upper_covers(lo)
                    .iter()
                    .filter(|&&c| lat.flat(c).is_subset(lat.flat(hi)))
                    .count();
                if between + 2 >= 6 {
                    return Some(Interval {
                        bottom: lat.flat(lo),
                        top: lat.flat(hi),
                        size: between + 2,
                    });
                }
            }
        }
    }
    None
}
