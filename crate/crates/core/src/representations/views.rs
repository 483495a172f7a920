use crate::error::{MatroidError, Result};
use crate::ground::{ElementSet, GroundSet};
use crate::oracle::{check_batch, check_query, Oracle, QueryLedger};

/// Which minor (or the dual) a view presents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViewKind {
    /// `M / X` for an independent `X`.
    Contraction(ElementSet),
    /// `M \ X`.
    Deletion(ElementSet),
    /// `M*`; carries the base rank of the active set.
    Dual { base_rank: usize },
}

/// A derived oracle that forwards its queries to `base` and shares its ledger.
pub struct OracleView<'a> {
    base: &'a dyn Oracle,
    kind: ViewKind,
    active: ElementSet,
}

impl<'a> OracleView<'a> {
    pub fn kind(&self) -> ViewKind {
        self.kind
    }

    pub fn base(&self) -> &'a dyn Oracle {
        self.base
    }

    fn translate(&self, set: ElementSet) -> ElementSet {
        match self.kind {
            ViewKind::Contraction(x) => set | x,
            _ => set,
        }
    }
}

/// Contraction by an independent set `x`.
///
/// Costs one round to confirm that `x` is independent. Elements of `x` are
/// no longer addressable; elements spanned by `x` stay addressable as loops.
pub fn contract_view<'a>(base: &'a dyn Oracle, x: ElementSet) -> Result<OracleView<'a>> {
    check_query(base.ground(), base.active(), x)?;
    if !x.is_empty() && !base.query(x)? {
        return Err(MatroidError::InvalidContraction(base.ground().format(x)));
    }
    Ok(OracleView {
        base,
        kind: ViewKind::Contraction(x),
        active: base.active() - x,
    })
}

/// Deletion of `x`; deleted elements become unaddressable.
pub fn delete_view<'a>(base: &'a dyn Oracle, x: ElementSet) -> Result<OracleView<'a>> {
    check_query(base.ground(), base.active(), x)?;
    Ok(OracleView {
        base,
        kind: ViewKind::Deletion(x),
        active: base.active() - x,
    })
}

/// The dual matroid on the base's active set.
///
/// `Y` is independent in the dual iff the complement of `Y` still has full
/// rank. Each dual round runs greedy rank scans in lockstep, spending one base
/// round per scan step; the rank of the active set is computed up front.
pub fn dual_view<'a>(base: &'a dyn Oracle) -> Result<OracleView<'a>> {
    let active = base.active();
    let base_rank = greedy_scans(base, &[active], None, true)?[0].len();
    Ok(OracleView {
        base,
        kind: ViewKind::Dual { base_rank },
        active,
    })
}

/// Greedy maximal independent subset of every set in `sets`, scanned in index
/// order and in lockstep.
///
/// With `target`, a scan stops as soon as it reaches that size. When `metered`
/// each lockstep step is one round on `oracle`; otherwise probes are used.
pub(crate) fn greedy_scans(
    oracle: &dyn Oracle,
    sets: &[ElementSet],
    target: Option<usize>,
    metered: bool,
) -> Result<Vec<ElementSet>> {
    struct Scan {
        indep: ElementSet,
        rest: Vec<usize>,
        pos: usize,
    }
    let mut scans: Vec<Scan> = sets
        .iter()
        .map(|s| Scan {
            indep: ElementSet::EMPTY,
            rest: s.to_vec(),
            pos: 0,
        })
        .collect();
    let done = |s: &Scan| s.pos >= s.rest.len() || target.is_some_and(|t| s.indep.len() >= t);
    loop {
        let live: Vec<usize> = (0..scans.len()).filter(|&k| !done(&scans[k])).collect();
        if live.is_empty() {
            break;
        }
        let batch: Vec<ElementSet> = live
            .iter()
            .map(|&k| scans[k].indep.with(scans[k].rest[scans[k].pos]))
            .collect();
        let answers = if metered {
            oracle.submit_round(&batch)?
        } else {
            batch.iter().map(|&q| oracle.probe(q)).collect::<Result<Vec<_>>>()?
        };
        for (&k, (q, ok)) in live.iter().zip(batch.into_iter().zip(answers)) {
            if ok {
                scans[k].indep = q;
            }
            scans[k].pos += 1;
        }
    }
    Ok(scans.iter().map(|s| s.indep).collect())
}

impl Oracle for OracleView<'_> {
    fn ground(&self) -> &GroundSet {
        self.base.ground()
    }

    fn active(&self) -> ElementSet {
        self.active
    }

    fn submit_round(&self, batch: &[ElementSet]) -> Result<Vec<bool>> {
        check_batch(self.ground(), self.active, batch)?;
        match self.kind {
            ViewKind::Dual { base_rank } => {
                let complements: Vec<ElementSet> = batch.iter().map(|&y| self.active - y).collect();
                let found = greedy_scans(self.base, &complements, Some(base_rank), true)?;
                Ok(found.into_iter().map(|i| i.len() == base_rank).collect())
            }
            _ => {
                let mapped: Vec<ElementSet> = batch.iter().map(|&y| self.translate(y)).collect();
                self.base.submit_round(&mapped)
            }
        }
    }

    fn probe(&self, set: ElementSet) -> Result<bool> {
        check_query(self.ground(), self.active, set)?;
        match self.kind {
            ViewKind::Dual { base_rank } => {
                let i = greedy_scans(self.base, &[self.active - set], Some(base_rank), false)?[0];
                Ok(i.len() == base_rank)
            }
            _ => self.base.probe(self.translate(set)),
        }
    }

    fn ledger(&self) -> QueryLedger {
        self.base.ledger()
    }

    fn record_basis_call(&self) {
        self.base.record_basis_call()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{OracleSession, Unmetered};
    use crate::representations::{BinaryRep, UniformRep};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn all_answers(o: &dyn Oracle) -> Vec<bool> {
        o.active().subsets().map(|s| o.probe(s).unwrap()).collect()
    }

    /// Brute-force rank straight from the backend's probes.
    fn rank(o: &dyn Oracle, x: ElementSet) -> usize {
        x.subsets()
            .filter(|&s| o.probe(s).unwrap())
            .map(ElementSet::len)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn contraction_identity_and_loops() {
        let s = fixtures::paper9_session();
        let g = s.ground().clone();
        let id = contract_view(&s, ElementSet::EMPTY).unwrap();
        assert_eq!(all_answers(&id), all_answers(&s));
        assert_eq!(s.ledger().rounds, 0);

        let c = contract_view(&s, g.set_of(&["e3", "e4"]).unwrap()).unwrap();
        assert_eq!(s.ledger().rounds, 1);
        let e5 = g.set_of(&["e5"]).unwrap();
        assert!(!c.query(e5).unwrap());
        assert!(c.query(g.set_of(&["e3"]).unwrap()).is_err());
    }

    #[test]
    fn contraction_on_fig_small() {
        let s = fixtures::fig_small_session();
        let g = s.ground().clone();
        let c = contract_view(&s, g.set_of(&["a"]).unwrap()).unwrap();
        assert!(c.query(g.set_of(&["b", "c"]).unwrap()).unwrap());
        let dependent = g.set_of(&["b", "c", "d"]).unwrap();
        assert!(matches!(contract_view(&s, dependent), Err(MatroidError::InvalidContraction(_))));
    }

    #[test]
    fn deletion_views() {
        let s = fixtures::u42_session();
        let g = s.ground().clone();
        let id = delete_view(&s, ElementSet::EMPTY).unwrap();
        assert_eq!(all_answers(&id), all_answers(&s));

        let d = delete_view(&s, g.set_of(&["d"]).unwrap()).unwrap();
        for sub in d.active().subsets() {
            assert_eq!(d.probe(sub).unwrap(), sub.len() <= 2);
        }
        assert!(d.query(g.set_of(&["a", "d"]).unwrap()).is_err());

        let f = fixtures::fig_small_session();
        let fg = f.ground().clone();
        let d = delete_view(&f, fg.set_of(&["a"]).unwrap()).unwrap();
        let bases: Vec<_> = d
            .active()
            .subsets()
            .filter(|&x| x.len() == 2 && d.probe(x).unwrap())
            .collect();
        assert_eq!(bases.len(), 3);
        assert!(!d.probe(fg.set_of(&["b", "c", "d"]).unwrap()).unwrap());
    }

    #[test]
    fn dual_examples() {
        let s = fixtures::fig_small_session();
        let g = s.ground().clone();
        let d = dual_view(&s).unwrap();
        assert!(d.query(ElementSet::EMPTY).unwrap());
        assert!(!d.query(g.set_of(&["c", "d"]).unwrap()).unwrap());
        // a is a coloop, so it is a loop of the dual.
        assert!(!d.query(g.set_of(&["a"]).unwrap()).unwrap());
    }

    #[test]
    fn dual_rank_formula_on_u42() {
        let s = fixtures::u42_session();
        let d = dual_view(&s).unwrap();
        for y in s.ground().full().subsets() {
            let want = rank(&s, s.ground().full() - y) + y.len() - 2 == y.len();
            assert_eq!(d.probe(y).unwrap(), want);
            assert_eq!(Unmetered(&d).submit_round(&[y]).unwrap()[0], want);
        }
    }

    #[test]
    fn dual_charges_base_ledger() {
        let s = fixtures::u42_session();
        let d = dual_view(&s).unwrap();
        let before = s.ledger().rounds;
        assert!(before > 0);
        d.submit_round(&[ElementSet::from_indices([0, 1]), ElementSet::singleton(3)]).unwrap();
        assert!(s.ledger().rounds > before);
        assert_eq!(d.ledger(), s.ledger());
    }

    #[test]
    fn dual_of_contraction_uses_active_set() {
        let s = fixtures::fig_small_session();
        let g = s.ground().clone();
        let c = contract_view(&s, g.set_of(&["a"]).unwrap()).unwrap();
        let d = dual_view(&c).unwrap();
        assert_eq!(d.active(), g.set_of(&["b", "c", "d"]).unwrap());
        // M/a is a triangle of rank 2; its dual is U(1,3).
        for y in d.active().subsets() {
            assert_eq!(d.probe(y).unwrap(), y.len() <= 1);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn dual_is_an_involution(
            rows in 1usize..5,
            cols in proptest::collection::vec(0u64..16, 1..=10),
        ) {
            let mask = (1u64 << rows) - 1;
            let rep = BinaryRep::new(rows, cols.iter().map(|c| c & mask).collect()).unwrap();
            let s = OracleSession::new(GroundSet::numbered(rep.cols()).unwrap(), Arc::new(rep)).unwrap();
            let d = dual_view(&s).unwrap();
            let dd = dual_view(&d).unwrap();
            let all: Vec<ElementSet> = s.ground().full().subsets().collect();
            let direct: Vec<bool> = all.iter().map(|&x| s.probe(x).unwrap()).collect();
            prop_assert_eq!(dd.submit_round(&all).unwrap(), direct);
        }

        #[test]
        fn uniform_dual_is_uniform(n in 1usize..=7, r in 0usize..=7) {
            let r = r.min(n);
            let s = OracleSession::new(GroundSet::numbered(n).unwrap(), Arc::new(UniformRep::new(n, r).unwrap())).unwrap();
            let d = dual_view(&s).unwrap();
            for y in s.ground().full().subsets() {
                prop_assert_eq!(d.probe(y).unwrap(), y.len() <= n - r);
            }
        }
    }
}
