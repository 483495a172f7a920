//! Quantities derived from the independence oracle.
//!
//! These helpers favour simplicity over round economy: [`rank`] spends one
//! round per scanned element. Algorithms with round guarantees issue their own
//! batches instead. Every set argument is taken relative to [`Oracle::active`].

use serde::Serialize;

use crate::error::{MatroidError, Result};
use crate::ground::ElementSet;
use crate::oracle::Oracle;
use crate::representations::views::greedy_scans;

/// Default size limit for circuit and cocircuit enumeration.
pub const CIRCUIT_LIMIT: usize = 14;

/// A cocircuit together with the hyperplane it complements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cocircuit {
    pub elements: ElementSet,
    pub hyperplane: ElementSet,
}

/// Refuses exhaustive work on more than `limit` addressable elements.
pub fn guard(o: &dyn Oracle, max_n: Option<usize>, default: usize) -> Result<()> {
    let n = o.active().len();
    let limit = max_n.unwrap_or(default);
    if n > limit {
        Err(MatroidError::ResourceGuard { n, limit })
    } else {
        Ok(())
    }
}

/// A maximal independent subset of `x`, found by a greedy scan in index order.
pub fn basis_of(o: &dyn Oracle, x: ElementSet) -> Result<ElementSet> {
    o.ground().check(x)?;
    Ok(greedy_scans(o, &[x], None, true)?[0])
}

pub fn rank(o: &dyn Oracle, x: ElementSet) -> Result<usize> {
    basis_of(o, x).map(ElementSet::len)
}

/// Ranks of several sets; scans run in lockstep so rounds are shared.
pub fn ranks(o: &dyn Oracle, sets: &[ElementSet]) -> Result<Vec<usize>> {
    Ok(greedy_scans(o, sets, None, true)?
        .into_iter()
        .map(ElementSet::len)
        .collect())
}

/// Closures of independent sets in a single round.
pub fn closures_of_independent(o: &dyn Oracle, indeps: &[ElementSet]) -> Result<Vec<ElementSet>> {
    let active = o.active();
    let mut batch = Vec::new();
    let mut owners = Vec::new();
    for (k, &i) in indeps.iter().enumerate() {
        for y in (active - i).iter() {
            batch.push(i.with(y));
            owners.push((k, y));
        }
    }
    let mut out: Vec<ElementSet> = indeps.to_vec();
    if batch.is_empty() {
        return Ok(out);
    }
    let answers = o.submit_round(&batch)?;
    for ((k, y), ok) in owners.into_iter().zip(answers) {
        if !ok {
            out[k].insert(y);
        }
    }
    Ok(out)
}

/// `σ(X)`: every element whose addition leaves the rank of `x` unchanged.
pub fn closure(o: &dyn Oracle, x: ElementSet) -> Result<ElementSet> {
    let i = basis_of(o, x)?;
    Ok(closures_of_independent(o, &[i])?[0] | x)
}

/// `Γ(X)`: the elements that raise the rank of `x`.
pub fn continuations(o: &dyn Oracle, x: ElementSet) -> Result<ElementSet> {
    Ok(o.active() - closure(o, x)?)
}

/// True iff `b` is independent and spans the active set. One round.
pub fn is_basis(o: &dyn Oracle, b: ElementSet) -> Result<bool> {
    o.ground().check(b)?;
    if !b.is_subset(o.active()) {
        return Ok(false);
    }
    let mut batch = vec![b];
    batch.extend((o.active() - b).iter().map(|y| b.with(y)));
    let answers = o.submit_round(&batch)?;
    Ok(answers[0] && answers[1..].iter().all(|&a| !a))
}

/// The unique circuit inside `x + y`, for independent `x` with `x + y` dependent.
pub fn fundamental_circuit(o: &dyn Oracle, x: ElementSet, y: usize) -> Result<ElementSet> {
    if x.contains(y) {
        return Err(MatroidError::Domain("the added element already lies in X".into()));
    }
    let xy = x.with(y);
    let pre = o.submit_round(&[x, xy])?;
    if !pre[0] {
        return Err(MatroidError::Domain(format!(
            "{} is not independent",
            o.ground().format(x)
        )));
    }
    if pre[1] {
        return Err(MatroidError::Domain(format!(
            "{} is independent, so it holds no circuit",
            o.ground().format(xy)
        )));
    }
    let mut circuit = ElementSet::singleton(y);
    if !x.is_empty() {
        let members: Vec<usize> = x.to_vec();
        let batch: Vec<ElementSet> = members.iter().map(|&e| xy.without(e)).collect();
        for (e, ok) in members.into_iter().zip(o.submit_round(&batch)?) {
            if ok {
                circuit.insert(e);
            }
        }
    }
    if !is_circuit(o, circuit)? {
        return Err(MatroidError::Domain(format!(
            "{} failed the circuit check",
            o.ground().format(circuit)
        )));
    }
    Ok(circuit)
}

/// Dependent with every maximal proper subset independent. One round.
pub fn is_circuit(o: &dyn Oracle, c: ElementSet) -> Result<bool> {
    if c.is_empty() {
        return Ok(false);
    }
    let mut batch = vec![c];
    batch.extend(c.iter().map(|e| c.without(e)));
    let answers = o.submit_round(&batch)?;
    Ok(!answers[0] && answers[1..].iter().all(|&a| a))
}

/// Independent sets grouped by size, together with all circuits.
#[derive(Clone, Debug, Default)]
pub struct Levels {
    /// `independent[k]` lists the independent sets of size `k` in increasing bit order.
    pub independent: Vec<Vec<ElementSet>>,
    /// Circuits in canonical order (size, then lexicographic).
    pub circuits: Vec<ElementSet>,
}

impl Levels {
    pub fn rank(&self) -> usize {
        self.independent.len() - 1
    }
}

/// Level-by-level scan: a candidate of size `k+1` is queried only when all its
/// `k`-subsets are independent, so dependent candidates are exactly the
/// circuits. One round per level.
pub fn scan_levels(o: &dyn Oracle) -> Result<Levels> {
    use std::collections::HashSet;
    let active = o.active();
    let mut levels = vec![vec![ElementSet::EMPTY]];
    let mut circuits = Vec::new();
    loop {
        let prev = levels.last().expect("nonempty");
        let known: HashSet<ElementSet> = prev.iter().copied().collect();
        let mut candidates = Vec::new();
        for &i in prev {
            let floor = i.iter().last().map_or(0, |m| m + 1);
            for y in active.iter().filter(|&y| y >= floor) {
                let c = i.with(y);
                if c.iter().all(|z| known.contains(&c.without(z))) {
                    candidates.push(c);
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        let answers = o.submit_round(&candidates)?;
        let mut next = Vec::new();
        for (c, ok) in candidates.into_iter().zip(answers) {
            if ok {
                next.push(c);
            } else {
                circuits.push(c);
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_by_key(|s| s.bits());
        levels.push(next);
    }
    circuits.sort_by(ElementSet::canonical_cmp);
    Ok(Levels {
        independent: levels,
        circuits,
    })
}

/// All circuits in canonical order.
pub fn enumerate_circuits(o: &dyn Oracle, max_n: Option<usize>) -> Result<Vec<ElementSet>> {
    guard(o, max_n, CIRCUIT_LIMIT)?;
    Ok(scan_levels(o)?.circuits)
}

/// All hyperplanes, as closures of independent sets one short of a basis.
pub fn enumerate_hyperplanes(o: &dyn Oracle, max_n: Option<usize>) -> Result<Vec<ElementSet>> {
    guard(o, max_n, CIRCUIT_LIMIT)?;
    let levels = scan_levels(o)?;
    let r = levels.rank();
    if r == 0 {
        return Ok(Vec::new());
    }
    let mut flats = closures_of_independent(o, &levels.independent[r - 1])?;
    flats.sort_by(ElementSet::canonical_cmp);
    flats.dedup();
    Ok(flats)
}

/// One cocircuit per hyperplane, in canonical order of the cocircuit.
pub fn enumerate_cocircuits(o: &dyn Oracle, max_n: Option<usize>) -> Result<Vec<Cocircuit>> {
    let active = o.active();
    let mut out: Vec<Cocircuit> = enumerate_hyperplanes(o, max_n)?
        .into_iter()
        .map(|h| Cocircuit {
            elements: active - h,
            hyperplane: h,
        })
        .collect();
    out.sort_by(|a, b| a.elements.canonical_cmp(&b.elements));
    Ok(out)
}

/// `ρ(X ∩ Y) + ρ(X ∪ Y) = ρ(X) + ρ(Y)`.
pub fn modular_pair(o: &dyn Oracle, x: ElementSet, y: ElementSet) -> Result<bool> {
    let r = ranks(o, &[x & y, x | y, x, y])?;
    Ok(r[0] + r[1] == r[2] + r[3])
}

/// `ρ*(X) = ρ(E \ X) + |X| - ρ(E)` over the active set `E`.
pub fn dual_rank(o: &dyn Oracle, x: ElementSet) -> Result<usize> {
    let e = o.active();
    let r = ranks(o, &[e - x, e])?;
    Ok(r[0] + x.len() - r[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ground::GroundSet;
    use crate::oracle::{OracleSession, Unmetered};
    use crate::representations::{dual_view, BinaryRep};
    use proptest::prelude::*;
    use std::sync::Arc;

    /// Rank by exhaustive subset search through unmetered probes.
    fn brute_rank(o: &dyn Oracle, x: ElementSet) -> usize {
        x.subsets()
            .filter(|&s| o.probe(s).unwrap())
            .map(ElementSet::len)
            .max()
            .unwrap_or(0)
    }

    fn brute_circuits(o: &dyn Oracle) -> Vec<ElementSet> {
        let mut v: Vec<ElementSet> = o
            .active()
            .subsets()
            .filter(|&s| !o.probe(s).unwrap() && s.iter().all(|e| o.probe(s.without(e)).unwrap()))
            .collect();
        v.sort_by(ElementSet::canonical_cmp);
        v
    }

    fn set(o: &dyn Oracle, names: &[&str]) -> ElementSet {
        o.ground().set_of(names).unwrap()
    }

    fn random_binary() -> impl Strategy<Value = OracleSession> {
        (1usize..=4, proptest::collection::vec(0u64..16, 1..=9)).prop_map(|(rows, cols)| {
            let mask = (1u64 << rows) - 1;
            let rep = BinaryRep::new(rows, cols.iter().map(|c| c & mask).collect()).unwrap();
            OracleSession::new(GroundSet::numbered(rep.cols()).unwrap(), Arc::new(rep)).unwrap()
        })
    }

    #[test]
    fn rank_examples() {
        let p = fixtures::paper9_session();
        assert_eq!(rank(&p, ElementSet::EMPTY).unwrap(), 0);
        assert_eq!(rank(&p, p.ground().full()).unwrap(), 6);
        assert_eq!(p.ledger().rounds, 9);
        let u = fixtures::u42_session();
        assert_eq!(rank(&u, set(&u, &["a", "b", "c"])).unwrap(), 2);
    }

    #[test]
    fn closure_examples() {
        let f = fixtures::fig_small_session();
        assert_eq!(closure(&f, set(&f, &["b", "c"])).unwrap(), set(&f, &["b", "c", "d"]));
        assert_eq!(closure(&f, f.ground().full()).unwrap(), f.ground().full());
        let p = fixtures::paper9_session();
        assert_eq!(
            closure(&p, set(&p, &["e3", "e4"])).unwrap(),
            set(&p, &["e3", "e4", "e5"])
        );
    }

    #[test]
    fn continuation_examples() {
        let f = fixtures::fig_small_session();
        assert_eq!(continuations(&f, set(&f, &["a", "c"])).unwrap(), set(&f, &["b", "d"]));
        assert_eq!(continuations(&f, f.ground().full()).unwrap(), ElementSet::EMPTY);
        let u = fixtures::u42_session();
        assert_eq!(continuations(&u, set(&u, &["a"])).unwrap(), set(&u, &["b", "c", "d"]));
        let p = fixtures::paper9_session();
        assert_eq!(
            continuations(&p, set(&p, &["e1", "e2", "e3", "e4", "e6"])).unwrap(),
            set(&p, &["e7", "e8", "e9"])
        );
    }

    #[test]
    fn fundamental_circuit_examples() {
        let p = fixtures::paper9_session();
        let e5 = p.ground().id("e5").unwrap().0;
        assert_eq!(
            fundamental_circuit(&p, set(&p, &["e3", "e4"]), e5).unwrap(),
            set(&p, &["e3", "e4", "e5"])
        );
        let f = fixtures::fig_small_session();
        let d = f.ground().id("d").unwrap().0;
        assert_eq!(
            fundamental_circuit(&f, set(&f, &["b", "c"]), d).unwrap(),
            set(&f, &["b", "c", "d"])
        );
        assert_eq!(
            fundamental_circuit(&f, set(&f, &["a", "b", "c"]), d).unwrap(),
            set(&f, &["b", "c", "d"])
        );
        let c = f.ground().id("c").unwrap().0;
        assert!(matches!(
            fundamental_circuit(&f, set(&f, &["a"]), c),
            Err(MatroidError::Domain(_))
        ));
    }

    #[test]
    fn circuit_examples() {
        let u = fixtures::u42_session();
        let got = enumerate_circuits(&u, None).unwrap();
        assert_eq!(got.len(), 4);
        assert!(got.iter().all(|c| c.len() == 3));
        let f = fixtures::fig_small_session();
        assert_eq!(enumerate_circuits(&f, None).unwrap(), vec![set(&f, &["b", "c", "d"])]);
        let free = OracleSession::new(GroundSet::numbered(5).unwrap(), Arc::new(BinaryRep::identity(5))).unwrap();
        assert!(enumerate_circuits(&free, None).unwrap().is_empty());
    }

    #[test]
    fn cocircuit_examples() {
        let u = fixtures::u42_session();
        let got: Vec<_> = enumerate_cocircuits(&u, None).unwrap().into_iter().map(|c| c.elements).collect();
        let want = vec![
            set(&u, &["a", "b", "c"]),
            set(&u, &["a", "b", "d"]),
            set(&u, &["a", "c", "d"]),
            set(&u, &["b", "c", "d"]),
        ];
        assert_eq!(got, want);

        let f = fixtures::fig_small_session();
        let co = enumerate_cocircuits(&f, None).unwrap();
        let ab = co.iter().find(|c| c.hyperplane == set(&f, &["a", "b"])).unwrap();
        assert_eq!(ab.elements, set(&f, &["c", "d"]));

        let zero = fixtures::uniform_session(3, 0);
        assert!(enumerate_cocircuits(&zero, None).unwrap().is_empty());
    }

    #[test]
    fn guards() {
        let big = fixtures::uniform_session(15, 2);
        assert!(matches!(
            enumerate_circuits(&big, None),
            Err(MatroidError::ResourceGuard { n: 15, limit: 14 })
        ));
        assert!(enumerate_circuits(&fixtures::uniform_session(15, 1), Some(15)).is_ok());
    }

    #[test]
    fn modular_pair_examples() {
        let u = fixtures::u42_session();
        let x = set(&u, &["a", "b"]);
        assert!(modular_pair(&u, x, x).unwrap());
        assert!(modular_pair(&u, set(&u, &["a", "b", "c"]), set(&u, &["a", "b", "d"])).unwrap());
        // Two disjoint rank-1 subsets of a rank-2 uniform matroid: 0 + 2 = 1 + 1.
        assert!(modular_pair(&u, set(&u, &["a"]), set(&u, &["b"])).unwrap());
        // Strict submodularity: two distinct points each of rank 2 in U(2,4).
        assert!(!modular_pair(&u, set(&u, &["a", "b"]), set(&u, &["c", "d"])).unwrap());
        let f = fixtures::fig_small_session();
        assert!(!modular_pair(&f, set(&f, &["b", "c"]), set(&f, &["c", "d"])).unwrap());
    }

    #[test]
    fn dual_rank_examples() {
        let f = fixtures::fig_small_session();
        assert_eq!(dual_rank(&f, ElementSet::EMPTY).unwrap(), 0);
        assert_eq!(dual_rank(&f, set(&f, &["c", "d"])).unwrap(), 1);
        let p = fixtures::paper9_session();
        assert_eq!(dual_rank(&p, p.ground().full()).unwrap(), 3);
    }

    #[test]
    fn is_basis_check() {
        let p = fixtures::paper9_session();
        assert!(is_basis(&p, set(&p, &["e1", "e2", "e3", "e4", "e6", "e7"])).unwrap());
        assert!(!is_basis(&p, set(&p, &["e1", "e2", "e3", "e4", "e6"])).unwrap());
        assert!(!is_basis(&p, set(&p, &["e3", "e4", "e5"])).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn rank_matches_brute_force(s in random_binary(), bits in any::<u64>()) {
            let x = ElementSet::from_bits(bits) & s.ground().full();
            prop_assert_eq!(rank(&s, x).unwrap(), brute_rank(&s, x));
        }

        #[test]
        fn closure_is_a_closure_operator(s in random_binary(), a in any::<u64>(), b in any::<u64>()) {
            let full = s.ground().full();
            let x = ElementSet::from_bits(a) & full;
            let y = x | (ElementSet::from_bits(b) & full);
            let cx = closure(&s, x).unwrap();
            prop_assert!(x.is_subset(cx));
            prop_assert!(cx.is_subset(closure(&s, y).unwrap()));
            prop_assert_eq!(closure(&s, cx).unwrap(), cx);
            for e in full.iter() {
                prop_assert_eq!(cx.contains(e), brute_rank(&s, x.with(e)) == brute_rank(&s, x));
            }
        }

        #[test]
        fn rank_is_submodular(s in random_binary(), a in any::<u64>(), b in any::<u64>()) {
            let full = s.ground().full();
            let (x, y) = (ElementSet::from_bits(a) & full, ElementSet::from_bits(b) & full);
            let r = ranks(&s, &[x & y, x | y, x, y]).unwrap();
            prop_assert!(r[0] + r[1] <= r[2] + r[3]);
        }

        #[test]
        fn circuits_match_brute_force(s in random_binary()) {
            prop_assert_eq!(enumerate_circuits(&s, None).unwrap(), brute_circuits(&s));
        }

        #[test]
        fn cocircuits_are_dual_circuits(s in random_binary()) {
            let co: Vec<ElementSet> = enumerate_cocircuits(&s, None).unwrap().into_iter().map(|c| c.elements).collect();
            let d = dual_view(&s).unwrap();
            prop_assert_eq!(co, brute_circuits(&Unmetered(&d)));
        }

        #[test]
        fn fundamental_circuits_are_minimal(s in random_binary(), bits in any::<u64>(), pick in any::<usize>()) {
            let full = s.ground().full();
            let x = basis_of(&s, ElementSet::from_bits(bits) & full).unwrap();
            let outside: Vec<usize> = (full - x).iter().filter(|&y| !s.probe(x.with(y)).unwrap()).collect();
            prop_assume!(!outside.is_empty());
            let y = outside[pick % outside.len()];
            let c = fundamental_circuit(&s, x, y).unwrap();
            prop_assert!(c.contains(y) && (c - x.with(y)).is_empty());
            prop_assert!(brute_circuits(&s).contains(&c));
        }
    }
}
