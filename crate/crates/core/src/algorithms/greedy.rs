use crate::algorithms::RunReport;
use crate::error::Result;
use crate::ground::ElementSet;
use crate::oracle::Oracle;
use crate::weights::{Weight, WeightMap};

/// Scans elements by increasing `(weight, index)` and keeps each one that
/// preserves independence. One round per element.
pub fn greedy<W: Weight>(o: &dyn Oracle, w: &WeightMap<W>) -> Result<RunReport<W>> {
    let start = o.ledger();
    let mut x = ElementSet::EMPTY;
    for e in w.sorted(o.active()) {
        if o.query(x.with(e))? {
            x.insert(e);
        }
    }
    Ok(RunReport::new("greedy", x, w.total(x), &o.ledger().since(&start)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn greedy_examples() {
        let p = fixtures::paper9_session();
        let r = greedy(&p, &WeightMap::<f64>::by_index(9)).unwrap();
        assert_eq!(r.solution, p.ground().set_of(&["e1", "e2", "e3", "e4", "e6", "e7"]).unwrap());
        assert_eq!(r.total_weight, 23.0);
        assert_eq!(r.rounds, 9);

        let zero = fixtures::uniform_session(3, 0);
        assert_eq!(greedy(&zero, &WeightMap::<f64>::by_index(3)).unwrap().solution, ElementSet::EMPTY);

        let u = fixtures::u42_session();
        let r = greedy(&u, &WeightMap::<i64>::by_index(4)).unwrap();
        assert_eq!(r.solution, u.ground().set_of(&["a", "b"]).unwrap());
    }
}
