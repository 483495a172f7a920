//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsu::UnionFind;
use crate::error::{MatroidError, Result};
use crate::representations::{BinaryRep, GraphRep};
use crate::weights::WeightMap;

/// Attempts at drawing a connected graph before giving up.
const GRAPH_ATTEMPTS: usize = 1000;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniform `rows × n` matrix over GF(2).
///
/// The all-zero matrix is redrawn unless `allow_rank_zero` is set.
pub fn random_binary(rows: usize, n: usize, allow_rank_zero: bool, rng: &mut impl Rng) -> Result<BinaryRep> {
    if rows == 0 || rows > n {
        return Err(MatroidError::Domain(format!("need 1 <= rows <= n, got rows={rows}, n={n}")));
    }
    let mask = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
    loop {
        let cols: Vec<u64> = (0..n).map(|_| rng.gen::<u64>() & mask).collect();
        if allow_rank_zero || cols.iter().any(|&c| c != 0) {
            return BinaryRep::new(rows, cols);
        }
    }
}

/// `edges` uniform edges between distinct vertices, redrawn until connected.
pub fn random_graph(vertices: usize, edges: usize, rng: &mut impl Rng) -> Result<GraphRep> {
    if vertices == 0 || edges + 1 < vertices || (vertices == 1 && edges > 0) {
        return Err(MatroidError::Domain(format!(
            "no connected loopless graph with {vertices} vertices and {edges} edges"
        )));
    }
    for _ in 0..GRAPH_ATTEMPTS {
        let list: Vec<(usize, usize)> = (0..edges)
            .map(|_| {
                let u = rng.gen_range(0..vertices);
                let v = (u + rng.gen_range(1..vertices)) % vertices;
                (u, v)
            })
            .collect();
        let mut uf = UnionFind::new(vertices);
        for &(u, v) in &list {
            uf.union(u, v);
        }
        if uf.count() == 1 {
            return GraphRep::numbered(vertices, &list);
        }
    }
    Err(MatroidError::Domain(format!(
        "no connected graph drawn in {GRAPH_ATTEMPTS} attempts"
    )))
}

/// A random permutation of `1..=n`, so weights are injective.
pub fn random_weights(n: usize, rng: &mut impl Rng) -> WeightMap<f64> {
    let mut values: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    values.shuffle(rng);
    WeightMap::new(values).expect("finite weights")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{validate_weights, WeightCheck};
    use crate::GroundSet;

    #[test]
    fn deterministic_under_seed() {
        let a = random_binary(3, 8, false, &mut rng_from_seed(7)).unwrap();
        let b = random_binary(3, 8, false, &mut rng_from_seed(7)).unwrap();
        assert_eq!(a.columns(), b.columns());
        let g1 = random_graph(6, 9, &mut rng_from_seed(3)).unwrap();
        let g2 = random_graph(6, 9, &mut rng_from_seed(3)).unwrap();
        assert_eq!(g1.edges(), g2.edges());
    }

    #[test]
    fn graphs_are_connected_and_loopless() {
        let mut rng = rng_from_seed(11);
        for v in 2..=10 {
            let g = random_graph(v, v + 3, &mut rng).unwrap();
            let mut uf = UnionFind::new(v);
            for &(a, b) in g.edges() {
                assert_ne!(a, b);
                uf.union(a, b);
            }
            assert_eq!(uf.count(), 1);
        }
        assert!(random_graph(5, 3, &mut rng).is_err());
        assert!(random_graph(0, 0, &mut rng).is_err());
    }

    #[test]
    fn binary_parameters_and_weights() {
        let mut rng = rng_from_seed(1);
        assert!(random_binary(4, 3, false, &mut rng).is_err());
        let m = random_binary(1, 1, false, &mut rng).unwrap();
        assert_eq!(m.columns(), &[1]);
        let w = random_weights(12, &mut rng);
        let g = GroundSet::numbered(12).unwrap();
        assert_eq!(validate_weights(&w, &g).unwrap(), WeightCheck::Ok);
    }
}
