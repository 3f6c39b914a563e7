//! Shared inputs for the criterion benches.

use xlab_core::families::{make_g4, make_s_minus};
use xlab_core::random::{connected_with, rng};
use xlab_core::Graph;

/// `S⁻_{n,2}` for the sizes the benches sweep.
pub fn s_minus_inputs() -> Vec<(usize, Graph)> {
    [12, 48, 200].iter().map(|&n| (n, make_s_minus(n, 2).expect("n >= 4"))).collect()
}

pub fn g4_input() -> Graph {
    make_g4(20, 3).expect("r >= 1")
}

/// Seeded connected graphs on `n` vertices.
pub fn random_connected(n: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count).map(|_| connected_with(n, 0.2, &mut r)).collect()
}
