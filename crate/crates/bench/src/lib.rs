//! Shared fixtures for the benchmarks.

use nbhl_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi style graph with roughly `avg_degree` neighbors per node.
pub fn random_graph(n: usize, avg_degree: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = (avg_degree / (n.max(2) - 1) as f64).min(1.0);
    let mut g = Graph::with_nodes(n);
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.random_bool(p) {
                g.add_edge(a, b);
            }
        }
    }
    g
}
