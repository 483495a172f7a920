use crate::algorithms::RunReport;
use crate::dsu::UnionFind;
use crate::error::Result;
use crate::ground::ElementSet;
use crate::oracle::QueryLedger;
use crate::representations::GraphRep;
use crate::weights::{Weight, WeightMap};

/// Minimum spanning forest by Borůvka's rule.
///
/// Every pass lets each component pick its lightest leaving edge and merges
/// along all picks at once; `rounds` counts the passes that picked something.
/// No independence queries are made.
pub fn boruvka<W: Weight>(g: &GraphRep, w: &WeightMap<W>) -> Result<RunReport<W>> {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut forest = ElementSet::EMPTY;
    let mut rounds = 0;
    loop {
        let mut best: Vec<Option<usize>> = vec![None; g.vertex_count()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let (ru, rv) = (uf.find(u), uf.find(v));
            if ru == rv {
                continue;
            }
            for r in [ru, rv] {
                if best[r].is_none_or(|b| w.cmp_elements(e, b).is_lt()) {
                    best[r] = Some(e);
                }
            }
        }
        let picks: ElementSet = best.into_iter().flatten().collect();
        if picks.is_empty() {
            break;
        }
        rounds += 1;
        for e in picks.iter() {
            let (u, v) = g.edges()[e];
            uf.union(u, v);
        }
        forest = forest | picks;
    }
    let cost = QueryLedger {
        rounds,
        ..QueryLedger::default()
    };
    Ok(RunReport::new("boruvka", forest, w.total(forest), &cost))
}
