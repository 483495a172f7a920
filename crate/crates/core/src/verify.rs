//! Brute-force oracles and checkers for small instances.
//!
//! Everything here reads the matroid through unmetered probes, so running a
//! checker never changes the cost reported for the algorithm under test.

use serde::Serialize;

use crate::algorithms::{kuw_with, optimize_binary, KuwSchedule};
use crate::derived::guard;
use crate::error::{MatroidError, Result};
use crate::fixtures;
use crate::ground::ElementSet;
use crate::instance::Instance;
use crate::lattice::{build_flat_lattice, find_u42_interval, FlatLattice, Interval};
use crate::oracle::{FnIndependence, Oracle, OracleSession, Unmetered};
use crate::representations::dual_view;
use crate::weights::{argmin_weight, Weight, WeightMap};
use crate::GroundSet;

/// Size limit for optimum enumeration.
pub const OPTIMUM_LIMIT: usize = 14;
/// Size limit for the circuit-pair and axiom checks.
pub const PAIR_LIMIT: usize = 12;
/// Size limit for checks that also build the dual lattice.
pub const DUAL_LIMIT: usize = 10;

/// Independence of every subset of the active set, read once through probes.
pub struct ExhaustiveTable {
    active: ElementSet,
    indep: Vec<bool>,
    rank: Vec<u8>,
}

impl ExhaustiveTable {
    pub fn build(o: &dyn Oracle, max_n: Option<usize>, default: usize) -> Result<Self> {
        guard(o, max_n, default)?;
        let active = o.active();
        if active != o.ground().full() {
            return Err(MatroidError::Domain("exhaustive checks need the whole ground set".into()));
        }
        let n = active.len();
        let size = 1usize << n;
        let mut indep = vec![false; size];
        let mut rank = vec![0u8; size];
        for bits in 0..size {
            let s = ElementSet::from_bits(bits as u64);
            indep[bits] = o.probe(s)?;
            rank[bits] = if indep[bits] {
                s.len() as u8
            } else {
                s.iter().map(|e| rank[bits & !(1 << e)]).max().unwrap_or(0)
            };
        }
        Ok(ExhaustiveTable { active, indep, rank })
    }

    /// The table of `M / x` for an arbitrary, possibly dependent, `x`.
    ///
    /// `Y` is independent in the contraction iff `ρ(Y ∪ x) = |Y| + ρ(x)`.
    /// Elements of `x` are kept as loops.
    pub fn contract(&self, x: ElementSet) -> ExhaustiveTable {
        let rx = self.rank(x);
        let size = self.indep.len();
        let mut indep = vec![false; size];
        let mut rank = vec![0u8; size];
        for bits in 0..size {
            let y = ElementSet::from_bits(bits as u64);
            rank[bits] = (self.rank(y | x) - rx) as u8;
            indep[bits] = rank[bits] as usize == y.len();
        }
        ExhaustiveTable {
            active: self.active,
            indep,
            rank,
        }
    }

    /// The dual, from `ρ*(Y) = ρ(E \ Y) + |Y| - ρ(E)`.
    pub fn dual(&self) -> ExhaustiveTable {
        let size = self.indep.len();
        let r = self.rank(self.active);
        let mut indep = vec![false; size];
        let mut rank = vec![0u8; size];
        for bits in 0..size {
            let y = ElementSet::from_bits(bits as u64);
            rank[bits] = (self.rank(self.active - y) + y.len() - r) as u8;
            indep[bits] = rank[bits] as usize == y.len();
        }
        ExhaustiveTable {
            active: self.active,
            indep,
            rank,
        }
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }

    pub fn ground(&self) -> ElementSet {
        self.active
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.indep[s.bits() as usize]
    }

    pub fn rank(&self, s: ElementSet) -> usize {
        self.rank[s.bits() as usize] as usize
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank(s);
        self.active.iter().filter(|&e| self.rank(s.with(e)) == r).collect()
    }

    fn subsets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.active.subsets()
    }

    pub fn bases(&self) -> Vec<ElementSet> {
        let r = self.rank(self.active);
        self.subsets().filter(|&s| s.len() == r && self.is_independent(s)).collect()
    }

    /// Minimal dependent sets, in canonical order.
    pub fn circuits(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = self
            .subsets()
            .filter(|&s| !self.is_independent(s) && s.iter().all(|e| self.is_independent(s.without(e))))
            .collect();
        out.sort_by(ElementSet::canonical_cmp);
        out
    }

    /// Flats of rank `ρ(E) - 1`, in canonical order.
    pub fn hyperplanes(&self) -> Vec<ElementSet> {
        let r = self.rank(self.active);
        if r == 0 {
            return Vec::new();
        }
        let mut out: Vec<ElementSet> = self
            .subsets()
            .filter(|&s| self.rank(s) == r - 1 && self.closure(s) == s)
            .collect();
        out.sort_by(ElementSet::canonical_cmp);
        out
    }

    /// Complements of hyperplanes, in canonical order.
    pub fn cocircuits(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = self.hyperplanes().into_iter().map(|h| self.active - h).collect();
        out.sort_by(ElementSet::canonical_cmp);
        out
    }

    pub fn is_modular_pair(&self, a: ElementSet, b: ElementSet) -> bool {
        self.rank(a) + self.rank(b) == self.rank(a | b) + self.rank(a & b)
    }
}

/// Minimum-weight basis by enumerating all bases.
pub fn brute_force_optimum<W: Weight>(o: &dyn Oracle, w: &WeightMap<W>, max_n: Option<usize>) -> Result<ElementSet> {
    let t = ExhaustiveTable::build(&Unmetered(o), max_n, OPTIMUM_LIMIT)?;
    optimum_of(&t, w)
}

fn optimum_of<W: Weight>(t: &ExhaustiveTable, w: &WeightMap<W>) -> Result<ElementSet> {
    let mut best: Option<(W, ElementSet)> = None;
    for b in t.bases() {
        let total = w.total(b);
        if best.is_none_or(|(bw, _)| total < bw) {
            best = Some((total, b));
        }
    }
    best.map(|(_, b)| b)
        .ok_or_else(|| MatroidError::Domain("the empty set is dependent; no bases".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Optimal,
    Suboptimal,
    ViolatedInvariant,
}

/// Replace `remove` by the lighter `add`; both lie in `cocircuit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeWitness {
    pub cocircuit: ElementSet,
    pub remove: usize,
    pub add: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Lightest element of every cocircuit.
    pub minima: ElementSet,
    /// A cocircuit whose lightest element is missing from the candidate.
    pub missed: Option<ElementSet>,
    pub exchange: Option<ExchangeWitness>,
    pub note: Option<String>,
}

/// Compares `x` with the set of cocircuit minima.
///
/// The candidate is optimal exactly when it equals that set. A suboptimal
/// basis comes with an improving single exchange inside the fundamental
/// cocircuit of the removed element.
pub fn check_cocircuit_certificate<W: Weight>(
    o: &dyn Oracle,
    w: &WeightMap<W>,
    x: ElementSet,
    max_n: Option<usize>,
) -> Result<Certificate> {
    let t = ExhaustiveTable::build(&Unmetered(o), max_n, OPTIMUM_LIMIT)?;
    certificate_of(&t, w, x)
}

fn certificate_of<W: Weight>(t: &ExhaustiveTable, w: &WeightMap<W>, x: ElementSet) -> Result<Certificate> {
    let cocircuits = t.cocircuits();
    let mut minima = ElementSet::EMPTY;
    let mut missed = None;
    for &c in &cocircuits {
        let m = argmin_weight(c, w)?.index();
        minima.insert(m);
        if !x.contains(m) && missed.is_none() {
            missed = Some(c);
        }
    }
    let r = t.rank(t.ground());
    let mut cert = Certificate {
        kind: CertificateKind::Optimal,
        minima,
        missed,
        exchange: None,
        note: None,
    };
    if !(x.is_subset(t.ground()) && t.is_independent(x) && x.len() == r) {
        cert.kind = CertificateKind::ViolatedInvariant;
        cert.note = Some("candidate is not a basis".into());
        return Ok(cert);
    }
    if x == minima {
        return Ok(cert);
    }
    match improving_exchange(t, w, x) {
        Some(ex) => {
            cert.kind = CertificateKind::Suboptimal;
            cert.exchange = Some(ex);
        }
        None => {
            cert.kind = CertificateKind::ViolatedInvariant;
            cert.note = Some("no improving exchange although the cocircuit minima differ".into());
        }
    }
    Ok(cert)
}

/// Heaviest removable element first, then the lightest replacement.
fn improving_exchange<W: Weight>(t: &ExhaustiveTable, w: &WeightMap<W>, x: ElementSet) -> Option<ExchangeWitness> {
    let mut order = x.to_vec();
    order.sort_by(|&a, &b| w.cmp_elements(b, a));
    for y in order {
        let rest = x.without(y);
        let cocircuit = t.ground() - t.closure(rest);
        let add = w
            .sorted(cocircuit)
            .into_iter()
            .find(|&z| w.cmp_elements(z, y).is_lt() && t.is_independent(rest.with(z)));
        if let Some(add) = add {
            return Some(ExchangeWitness {
                cocircuit,
                remove: y,
                add,
            });
        }
    }
    None
}

/// True when `ex` turns basis `x` into a lighter basis and `ex.cocircuit` is
/// a cocircuit holding both exchanged elements.
pub fn witness_is_valid<W: Weight>(
    o: &dyn Oracle,
    w: &WeightMap<W>,
    x: ElementSet,
    ex: &ExchangeWitness,
) -> Result<bool> {
    let t = ExhaustiveTable::build(&Unmetered(o), None, OPTIMUM_LIMIT)?;
    let swapped = x.without(ex.remove).with(ex.add);
    Ok(x.contains(ex.remove)
        && !x.contains(ex.add)
        && t.is_independent(swapped)
        && swapped.len() == t.rank(t.ground())
        && w.cmp_elements(ex.add, ex.remove).is_lt()
        && ex.cocircuit.contains(ex.remove)
        && ex.cocircuit.contains(ex.add)
        && t.cocircuits().contains(&ex.cocircuit))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum WhiteOutcome {
    Ok,
    Counterexample { first: ElementSet, second: ElementSet },
}

/// Symmetric differences of intersecting modular circuit pairs are circuits.
pub fn check_white(o: &dyn Oracle, max_n: Option<usize>) -> Result<WhiteOutcome> {
    let t = ExhaustiveTable::build(&Unmetered(o), max_n, PAIR_LIMIT)?;
    Ok(white_of(&t))
}

fn white_of(t: &ExhaustiveTable) -> WhiteOutcome {
    let circuits = t.circuits();
    let is_circuit = |s: ElementSet| circuits.binary_search_by(|c| c.canonical_cmp(&s)).is_ok();
    for (i, &c1) in circuits.iter().enumerate() {
        for &c2 in &circuits[i + 1..] {
            if !(c1 & c2).is_empty() && t.is_modular_pair(c1, c2) && !is_circuit(c1 ^ c2) {
                return WhiteOutcome::Counterexample { first: c1, second: c2 };
            }
        }
    }
    WhiteOutcome::Ok
}

/// White's circuit criterion against the lattice criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TutteWhite {
    pub white: WhiteOutcome,
    pub primal_interval: Option<Interval>,
    pub dual_interval: Option<Interval>,
}

impl TutteWhite {
    pub fn binary_by_white(&self) -> bool {
        self.white == WhiteOutcome::Ok
    }

    pub fn binary_by_lattice(&self) -> bool {
        self.primal_interval.is_none() && self.dual_interval.is_none()
    }

    pub fn agree(&self) -> bool {
        self.binary_by_white() == self.binary_by_lattice()
    }
}

pub fn check_tutte_white_agreement(o: &dyn Oracle, max_n: Option<usize>) -> Result<TutteWhite> {
    let limit = max_n.unwrap_or(DUAL_LIMIT);
    let quiet = Unmetered(o);
    let white = check_white(&quiet, Some(limit))?;
    let primal = build_flat_lattice(&quiet, Some(limit))?;
    let dual = dual_view(&quiet)?;
    let dual_lattice = build_flat_lattice(&Unmetered(&dual), Some(limit))?;
    Ok(TutteWhite {
        white,
        primal_interval: find_u42_interval(&primal),
        dual_interval: find_u42_interval(&dual_lattice),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub hyperplanes: usize,
    /// Complements of hyperplanes coincide with the circuits of the dual.
    pub cocircuits_are_dual_circuits: bool,
    pub pairs_checked: usize,
    /// Cocircuit pairs whose dual modularity disagrees with their hyperplanes'.
    pub modular_mismatches: Vec<(ElementSet, ElementSet)>,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.cocircuits_are_dual_circuits && self.modular_mismatches.is_empty()
    }
}

pub fn check_duality_lemmas(o: &dyn Oracle, max_n: Option<usize>) -> Result<DualityReport> {
    let t = ExhaustiveTable::build(&Unmetered(o), max_n, DUAL_LIMIT)?;
    let d = t.dual();
    let hyperplanes = t.hyperplanes();
    let cocircuits = t.cocircuits();
    let cocircuits_are_dual_circuits = cocircuits == d.circuits();
    let e = t.ground();
    let mut pairs_checked = 0;
    let mut modular_mismatches = Vec::new();
    for (i, &h1) in hyperplanes.iter().enumerate() {
        for &h2 in &hyperplanes[i + 1..] {
            pairs_checked += 1;
            let (c1, c2) = (e - h1, e - h2);
            if d.is_modular_pair(c1, c2) != t.is_modular_pair(h1, h2) {
                modular_mismatches.push((c1, c2));
            }
        }
    }
    Ok(DualityReport {
        hyperplanes: hyperplanes.len(),
        cocircuits_are_dual_circuits,
        pairs_checked,
        modular_mismatches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum AxiomOutcome {
    Ok,
    EmptySetDependent,
    /// `subset` is dependent although `set` is independent.
    Hereditary { set: ElementSet, subset: ElementSet },
    /// No element of `larger \ smaller` extends `smaller`.
    Exchange { smaller: ElementSet, larger: ElementSet },
}

/// Exhaustive check of the independence axioms.
pub fn check_axioms(o: &dyn Oracle, max_n: Option<usize>) -> Result<AxiomOutcome> {
    let quiet = Unmetered(o);
    guard(&quiet, max_n, PAIR_LIMIT)?;
    let active = quiet.active();
    let indep: Vec<(ElementSet, bool)> = active
        .subsets()
        .map(|s| quiet.probe(s).map(|ok| (s, ok)))
        .collect::<Result<_>>()?;
    let lookup = |s: ElementSet| -> bool {
        // Subsets of `active` enumerate in the order of their compressed bits.
        let mut idx = 0usize;
        for (k, e) in active.iter().enumerate() {
            if s.contains(e) {
                idx |= 1 << k;
            }
        }
        indep[idx].1
    };
    if !lookup(ElementSet::EMPTY) {
        return Ok(AxiomOutcome::EmptySetDependent);
    }
    for &(s, ok) in &indep {
        if !ok {
            continue;
        }
        if let Some(e) = s.iter().find(|&e| !lookup(s.without(e))) {
            return Ok(AxiomOutcome::Hereditary {
                set: s,
                subset: s.without(e),
            });
        }
    }
    // With heredity in place, exchange holds iff every independent `I` is a
    // largest independent subset of `I` plus the elements it cannot absorb.
    for &(i, ok) in &indep {
        if !ok {
            continue;
        }
        let span = active.iter().filter(|&e| i.contains(e) || !lookup(i.with(e))).collect::<ElementSet>();
        if let Some(&(larger, _)) = indep
            .iter()
            .find(|&&(s, ok)| ok && s.is_subset(span) && s.len() > i.len())
        {
            return Ok(AxiomOutcome::Exchange { smaller: i, larger });
        }
    }
    Ok(AxiomOutcome::Ok)
}

/// Three elements where every set of size at most two is independent except `{b}`.
pub fn corrupted_fixture() -> OracleSession {
    let b = ElementSet::singleton(1);
    let backend = FnIndependence::new(3, move |s: ElementSet| s.len() <= 2 && s != b);
    OracleSession::new(GroundSet::lettered(3).expect("valid fixture"), std::sync::Arc::new(backend))
        .expect("valid fixture")
}

/// Block-wise basis search is not optimization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchGapDemo {
    pub kuw_basis: ElementSet,
    pub kuw_weight: f64,
    pub optimum: ElementSet,
    pub optimum_weight: f64,
    pub reduction: ElementSet,
    /// Flats of the lattice; loops sit in the bottom flat.
    pub flats: usize,
}

/// Runs the `kuw-remark` fixture through basis search, brute force and the
/// reduction.
pub fn kuw_sorted_counterexample() -> Result<(Instance, SearchGapDemo)> {
    let f = fixtures::by_name("kuw-remark").expect("fixture exists");
    let s = f.instance.session();
    let blocks = f.blocks.clone().expect("fixture stores its partition");
    let kuw_basis = kuw_with(&s, blocks, KuwSchedule::default(), None)?;
    let optimum = brute_force_optimum(&s, &f.weights, None)?;
    let reduction = optimize_binary(&s.fresh(), &f.weights)?.solution;
    let flats = build_flat_lattice(&Unmetered(&s), None)?.len();
    let demo = SearchGapDemo {
        kuw_basis,
        kuw_weight: f.weights.total(kuw_basis),
        optimum,
        optimum_weight: f.weights.total(optimum),
        reduction,
        flats,
    };
    Ok((f.instance, demo))
}

/// The flat lattice read through probes, for checks that must not be charged.
pub fn quiet_lattice(o: &dyn Oracle, max_n: Option<usize>) -> Result<FlatLattice> {
    build_flat_lattice(&Unmetered(o), max_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::greedy;
    use crate::derived::{closure, enumerate_circuits, enumerate_cocircuits, rank};
    use crate::representations::{contract_view, BinaryRep, GraphRep};
    use proptest::prelude::*;

    fn w(n: usize) -> WeightMap<f64> {
        WeightMap::by_index(n)
    }

    #[test]
    fn optimum_examples() {
        let p = fixtures::paper9_session();
        let g = p.ground().clone();
        assert_eq!(
            brute_force_optimum(&p, &w(9), None).unwrap(),
            g.set_of(&["e1", "e2", "e3", "e4", "e6", "e7"]).unwrap()
        );
        assert_eq!(p.ledger().rounds, 0);

        let f = fixtures::fig_small_session();
        assert_eq!(
            brute_force_optimum(&f, &w(4), None).unwrap(),
            f.ground().set_of(&["a", "b", "c"]).unwrap()
        );
        let z = fixtures::uniform_session(4, 0);
        assert_eq!(brute_force_optimum(&z, &w(4), None).unwrap(), ElementSet::EMPTY);

        let big = fixtures::uniform_session(15, 2);
        assert!(matches!(
            brute_force_optimum(&big, &w(15), None),
            Err(MatroidError::ResourceGuard { n: 15, limit: 14 })
        ));
    }

    #[test]
    fn certificate_examples() {
        let p = fixtures::paper9_session();
        let g = p.ground().clone();
        let opt = brute_force_optimum(&p, &w(9), None).unwrap();
        let c = check_cocircuit_certificate(&p, &w(9), opt, None).unwrap();
        assert_eq!(c.kind, CertificateKind::Optimal);
        assert_eq!(c.minima, opt);

        let x = g.set_of(&["e1", "e2", "e3", "e4", "e6", "e8"]).unwrap();
        let c = check_cocircuit_certificate(&p, &w(9), x, None).unwrap();
        assert_eq!(c.kind, CertificateKind::Suboptimal);
        let ex = c.exchange.unwrap();
        assert_eq!(ex.cocircuit, g.set_of(&["e7", "e8", "e9"]).unwrap());
        assert_eq!((g.names()[ex.remove].as_str(), g.names()[ex.add].as_str()), ("e8", "e7"));
        assert!(witness_is_valid(&p, &w(9), x, &ex).unwrap());

        let u = fixtures::u42_session();
        let ab = u.ground().set_of(&["a", "b"]).unwrap();
        let c = check_cocircuit_certificate(&u, &w(4), ab, None).unwrap();
        assert_eq!((c.kind, c.minima), (CertificateKind::Optimal, ab));

        let abc = u.ground().set_of(&["a", "b", "c"]).unwrap();
        let c = check_cocircuit_certificate(&u, &w(4), abc, None).unwrap();
        assert_eq!(c.kind, CertificateKind::ViolatedInvariant);
    }

    #[test]
    fn white_examples() {
        assert_eq!(check_white(&fixtures::paper9_session(), None).unwrap(), WhiteOutcome::Ok);
        assert_eq!(check_white(&fixtures::fig_small_session(), None).unwrap(), WhiteOutcome::Ok);
        let u = fixtures::u42_session();
        let g = u.ground().clone();
        let got = check_white(&u, None).unwrap();
        assert_eq!(
            got,
            WhiteOutcome::Counterexample {
                first: g.set_of(&["a", "b", "c"]).unwrap(),
                second: g.set_of(&["a", "b", "d"]).unwrap(),
            }
        );
    }

    #[test]
    fn tutte_white_examples() {
        for (s, binary) in [
            (fixtures::u42_session(), false),
            (fixtures::u25_session(), false),
            (fixtures::fig_small_session(), true),
            (fixtures::paper9_session(), true),
        ] {
            let r = check_tutte_white_agreement(&s, None).unwrap();
            assert!(r.agree(), "{r:?}");
            assert_eq!(r.binary_by_white(), binary);
            assert_eq!(s.ledger().rounds, 0);
        }
    }

    #[test]
    fn duality_examples() {
        for s in [fixtures::fig_small_session(), fixtures::u42_session(), fixtures::paper9_session()] {
            let r = check_duality_lemmas(&s, None).unwrap();
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn axiom_examples() {
        for name in fixtures::NAMES {
            let s = fixtures::by_name(name).unwrap().instance.session();
            assert_eq!(check_axioms(&s, None).unwrap(), AxiomOutcome::Ok, "{name}");
        }
        let bad = corrupted_fixture();
        let g = bad.ground().clone();
        assert_eq!(
            check_axioms(&bad, None).unwrap(),
            AxiomOutcome::Hereditary {
                set: g.set_of(&["a", "b"]).unwrap(),
                subset: g.set_of(&["b"]).unwrap(),
            }
        );
        let no_exchange = OracleSession::new(
            GroundSet::lettered(3).unwrap(),
            std::sync::Arc::new(FnIndependence::new(3, |s: ElementSet| {
                s.len() <= 1 || s == ElementSet::from_indices([0, 1])
            })),
        )
        .unwrap();
        assert!(matches!(check_axioms(&no_exchange, None).unwrap(), AxiomOutcome::Exchange { .. }));
    }

    #[test]
    fn search_gap_demo() {
        let (inst, d) = kuw_sorted_counterexample().unwrap();
        let g = &inst.ground;
        assert_eq!(d.kuw_basis, g.set_of(&["x2", "x3"]).unwrap());
        assert_eq!(d.optimum, g.set_of(&["x1", "x2"]).unwrap());
        assert_eq!(d.reduction, d.optimum);
        assert!(d.kuw_weight > d.optimum_weight);
        assert_eq!(d.flats, 4);
    }

    #[test]
    fn general_contraction_uses_a_basis_of_the_pinned_set() {
        let p = fixtures::paper9_session();
        let g = p.ground().clone();
        let t = ExhaustiveTable::build(&p, None, 9).unwrap();
        let dependent = g.set_of(&["e3", "e4", "e5"]).unwrap();
        let basis = g.set_of(&["e3", "e4"]).unwrap();
        let general = t.contract(dependent);
        let view = contract_view(&p, basis).unwrap();
        for y in (g.full() - dependent).subsets() {
            assert_eq!(general.is_independent(y), view.probe(y).unwrap());
        }
    }

    fn random_session(rows: usize, cols: &[u64]) -> OracleSession {
        let mask = (1u64 << rows) - 1;
        let rep = BinaryRep::new(rows, cols.iter().map(|c| c & mask).collect()).unwrap();
        Instance::binary(rep, GroundSet::numbered(cols.len()).unwrap()).unwrap().session()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn table_agrees_with_derived(rows in 1usize..5, cols in proptest::collection::vec(0u64..16, 1..=8)) {
            let s = random_session(rows, &cols);
            let t = ExhaustiveTable::build(&s, None, 8).unwrap();
            let q = Unmetered(&s);
            let mut circuits = enumerate_circuits(&q, None).unwrap();
            circuits.sort_by(ElementSet::canonical_cmp);
            prop_assert_eq!(t.circuits(), circuits);
            let mut co: Vec<ElementSet> = enumerate_cocircuits(&q, None).unwrap().iter().map(|c| c.elements).collect();
            co.sort_by(ElementSet::canonical_cmp);
            prop_assert_eq!(t.cocircuits(), co);
            for x in s.ground().full().subsets().step_by(7) {
                prop_assert_eq!(t.rank(x), rank(&q, x).unwrap());
                prop_assert_eq!(t.closure(x), closure(&q, x).unwrap());
            }
        }

        #[test]
        fn binary_matroids_pass_white_and_axioms(rows in 1usize..5, cols in proptest::collection::vec(0u64..16, 1..=9)) {
            let s = random_session(rows, &cols);
            prop_assert_eq!(check_white(&s, None).unwrap(), WhiteOutcome::Ok);
            prop_assert_eq!(check_axioms(&s, None).unwrap(), AxiomOutcome::Ok);
            prop_assert!(check_duality_lemmas(&s, None).unwrap().ok());
        }

        #[test]
        fn optimum_matches_certificate_and_greedy(
            edges in proptest::collection::vec((0usize..6, 0usize..6), 1..=10),
            seed in any::<u64>(),
        ) {
            let g = GraphRep::numbered(6, &edges).unwrap();
            let s = Instance::graph(g).session();
            let n = edges.len();
            let mut vals: Vec<i64> = (0..n as i64).collect();
            vals.sort_by_key(|&v| (v as u64).wrapping_mul(seed | 1).rotate_left(17));
            let w = WeightMap::new(vals).unwrap();
            let opt = brute_force_optimum(&s, &w, None).unwrap();
            prop_assert_eq!(opt, greedy(&s, &w).unwrap().solution);
            let c = check_cocircuit_certificate(&s, &w, opt, None).unwrap();
            prop_assert_eq!(c.kind, CertificateKind::Optimal);
            prop_assert_eq!(c.minima, opt);
        }
    }
}
