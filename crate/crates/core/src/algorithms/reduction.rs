//! Minimum-weight basis from repeated basis search.
//!
//! Each pass finds a basis `B` of the current contraction `M / X`, reads off
//! the fundamental cocircuits `C_i = Γ(X ∪ (B - x_i))` in one round, and keeps
//! the lightest element of every `C_i`. Cocircuits sharing a minimum
//! contribute the minima of their pairwise symmetric differences as well. On
//! binary matroids every kept element belongs to the optimum.

use std::collections::BTreeMap;

use crate::algorithms::kuw::{kuw_blocks, kuw_with, KuwSchedule};
use crate::algorithms::{IterationTrace, RunReport};
use crate::derived::is_basis;
use crate::error::{MatroidError, Result};
use crate::ground::ElementSet;
use crate::oracle::{Oracle, Unmetered};
use crate::representations::contract_view;
use crate::weights::{argmin_weight, Weight, WeightMap};

/// Anything that returns a basis of `o.active()` using only `o`'s queries.
pub trait BasisSearch {
    fn name(&self) -> &str;

    fn search(&self, o: &dyn Oracle) -> Result<ElementSet>;
}

/// Block-wise parallel search.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kuw {
    pub schedule: KuwSchedule,
}

impl BasisSearch for Kuw {
    fn name(&self) -> &str {
        "kuw"
    }

    fn search(&self, o: &dyn Oracle) -> Result<ElementSet> {
        kuw_with(o, kuw_blocks(o.active()), self.schedule, None)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReductionOptions {
    /// Confirm each returned basis with unmetered probes.
    pub check_basis: bool,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions {
            check_basis: cfg!(debug_assertions),
        }
    }
}

/// Minimum-weight basis of `o.active()` through `search`.
///
/// Exact when the matroid is binary. On other matroids the result may be
/// suboptimal, or the partial solution may turn dependent, which surfaces as
/// [`MatroidError::InvalidContraction`].
pub fn reduction_optimize<W: Weight>(
    o: &dyn Oracle,
    w: &WeightMap<W>,
    search: &dyn BasisSearch,
    opts: ReductionOptions,
) -> Result<RunReport<W>> {
    if w.len() != o.ground().len() {
        return Err(MatroidError::IncompleteWeights {
            missing: o.ground().len().saturating_sub(w.len()),
            first: o.ground().names().get(w.len()).cloned().unwrap_or_default(),
        });
    }
    let start = o.ledger();
    let mut x = ElementSet::EMPTY;
    let mut trace = Vec::new();
    loop {
        let pass_start = o.ledger();
        let view = contract_view(o, x)?;
        let b = search.search(&view)?;
        o.record_basis_call();
        if opts.check_basis && !(b.is_subset(view.active()) && is_basis(&Unmetered(&view), b)?) {
            return Err(MatroidError::FaultyOracle(format!(
                "{} returned {}, which is not a basis of the contraction",
                search.name(),
                o.ground().format(b)
            )));
        }
        if b.is_empty() {
            break;
        }
        let step = cocircuit_step(&view, b, w)?;
        x = x | step.direct | step.via_differences;
        trace.push(IterationTrace {
            basis: b,
            contraction_rank: b.len(),
            rounds: o.ledger().since(&pass_start).rounds,
            ..step
        });
        if trace.len() > o.ground().len() {
            return Err(MatroidError::FaultyOracle("reduction made no progress".into()));
        }
    }
    let mut report = RunReport::new(
        &format!("reduction-{}", search.name()),
        x,
        w.total(x),
        &o.ledger().since(&start),
    );
    report.outer_iterations = trace.len();
    report.per_iteration = trace;
    Ok(report)
}

/// Reduction driven by the default block-wise search.
pub fn optimize_binary<W: Weight>(o: &dyn Oracle, w: &WeightMap<W>) -> Result<RunReport<W>> {
    reduction_optimize(o, w, &Kuw::default(), ReductionOptions::default())
}

/// One batched round for all fundamental cocircuits of `b` in `view`, then
/// the kept elements. Only `direct`, `via_differences` and `collisions` are
/// filled in.
fn cocircuit_step<W: Weight>(view: &dyn Oracle, b: ElementSet, w: &WeightMap<W>) -> Result<IterationTrace> {
    let active = view.active();
    let mut batch = Vec::new();
    let mut owners = Vec::new();
    for (i, xi) in b.iter().enumerate() {
        let rest = b.without(xi);
        for y in (active - rest).iter() {
            batch.push(rest.with(y));
            owners.push((i, y));
        }
    }
    let answers = view.submit_round(&batch)?;
    let mut cocircuits = vec![ElementSet::EMPTY; b.len()];
    for ((i, y), ok) in owners.into_iter().zip(answers) {
        if ok {
            cocircuits[i].insert(y);
        }
    }
    let mut groups: BTreeMap<usize, Vec<ElementSet>> = BTreeMap::new();
    for c in cocircuits {
        groups.entry(argmin_weight(c, w)?.index()).or_default().push(c);
    }
    let direct: ElementSet = groups.keys().copied().collect();
    let mut extra = ElementSet::EMPTY;
    let mut collisions = 0;
    for group in groups.values().filter(|g| g.len() >= 2) {
        collisions += 1;
        for (k, &ci) in group.iter().enumerate() {
            for &cj in &group[k + 1..] {
                extra.insert(argmin_weight(ci ^ cj, w)?.index());
            }
        }
    }
    Ok(IterationTrace {
        basis: b,
        contraction_rank: b.len(),
        direct,
        via_differences: extra - direct,
        collisions,
        rounds: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::greedy;
    use crate::fixtures;
    use crate::representations::BinaryRep;
    use crate::{GroundSet, Instance};
    use proptest::prelude::*;

    struct Lying;

    impl BasisSearch for Lying {
        fn name(&self) -> &str {
            "lying"
        }

        fn search(&self, o: &dyn Oracle) -> Result<ElementSet> {
            Ok(o.active())
        }
    }

    #[test]
    fn nine_edge_example() {
        let s = fixtures::paper9_session();
        let r = optimize_binary(&s, &WeightMap::<f64>::by_index(9)).unwrap();
        assert_eq!(r.solution, s.ground().set_of(&["e1", "e2", "e3", "e4", "e6", "e7"]).unwrap());
        assert_eq!(r.total_weight, 23.0);
        assert_eq!(r.basis_calls, r.outer_iterations + 1);
        let ranks: Vec<usize> = r.per_iteration.iter().map(|t| t.contraction_rank).collect();
        assert_eq!(ranks[0], 6);
        for pair in ranks.windows(2) {
            assert!(pair[1] <= pair[0] / 2, "{ranks:?}");
        }
    }

    #[test]
    fn integer_and_rational_weights() {
        let s = fixtures::paper9_session();
        let r = optimize_binary(&s, &WeightMap::<i64>::by_index(9)).unwrap();
        assert_eq!(r.total_weight, 23);
        let s = s.fresh();
        let q = WeightMap::new((1..=9).map(|i| num_rational::Ratio::new(i as i64, 7)).collect()).unwrap();
        let r = optimize_binary(&s, &q).unwrap();
        assert_eq!(r.total_weight, num_rational::Ratio::new(23, 7));
    }

    #[test]
    fn trivial_inputs() {
        let z = fixtures::uniform_session(5, 0);
        let r = optimize_binary(&z, &WeightMap::<f64>::by_index(5)).unwrap();
        assert_eq!((r.solution, r.outer_iterations, r.basis_calls), (ElementSet::EMPTY, 0, 1));

        let e = fixtures::uniform_session(0, 0);
        let r = optimize_binary(&e, &WeightMap::<f64>::by_index(0)).unwrap();
        assert_eq!((r.solution, r.rounds), (ElementSet::EMPTY, 0));
    }

    #[test]
    fn non_binary_input_can_be_suboptimal() {
        let u = fixtures::u42_session();
        let w = WeightMap::from_pairs(u.ground(), &[("a", 3.0), ("b", 4.0), ("c", 1.0), ("d", 2.0)]).unwrap();
        let r = optimize_binary(&u, &w).unwrap();
        assert_eq!(r.solution, u.ground().set_of(&["a", "c"]).unwrap());
        assert_eq!(r.total_weight, 4.0);
        let g = greedy(&u.fresh(), &w).unwrap();
        assert_eq!(g.total_weight, 3.0);
    }

    #[test]
    fn faulty_search_is_reported() {
        let s = fixtures::paper9_session();
        let opts = ReductionOptions { check_basis: true };
        let err = reduction_optimize(&s, &WeightMap::<f64>::by_index(9), &Lying, opts).unwrap_err();
        assert!(matches!(err, MatroidError::FaultyOracle(_)));
    }

    #[test]
    fn weight_length_mismatch() {
        let s = fixtures::paper9_session();
        assert!(matches!(
            optimize_binary(&s, &WeightMap::<f64>::by_index(8)),
            Err(MatroidError::IncompleteWeights { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_greedy_on_binary_matroids(
            rows in 1usize..7,
            cols in proptest::collection::vec(0u64..64, 1..=16),
            seed in any::<u64>(),
        ) {
            let mask = (1u64 << rows) - 1;
            let rep = BinaryRep::new(rows, cols.iter().map(|c| c & mask).collect()).unwrap();
            let n = cols.len();
            let s = Instance::binary(rep, GroundSet::numbered(n).unwrap()).unwrap().session();
            let mut perm: Vec<i64> = (1..=n as i64).collect();
            let mut state = seed;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (state >> 33) as usize % (i + 1));
            }
            let w = WeightMap::new(perm).unwrap();
            let r = optimize_binary(&s, &w).unwrap();
            let g = greedy(&s.fresh(), &w).unwrap();
            prop_assert_eq!(r.solution, g.solution);
            let ranks: Vec<usize> = r.per_iteration.iter().map(|t| t.contraction_rank).collect();
            for pair in ranks.windows(2) {
                prop_assert!(pair[1] <= pair[0] / 2, "{:?}", ranks);
            }
        }
    }
}
