//! Shared fixtures for the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use robustiv::clique::VoteGraph;
use robustiv::simulate::{gen_linear_iv, gen_probit_iv};
use robustiv::{Dataset, LinearSimConfig, ProbitSimConfig};

/// Linear IV dataset with ten relevant instruments, three of them invalid.
pub fn linear_dataset(n: usize, seed: u64) -> Dataset {
    let cfg = LinearSimConfig {
        n,
        p_z: 10,
        p_x: 0,
        beta: 1.0,
        gamma: vec![0.5; 10],
        pi: vec![0.6, 0.6, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        psi: vec![],
        phi: vec![],
        err_corr: 0.8,
        heteroscedastic: false,
        seed,
    };
    gen_linear_iv(&cfg).expect("benchmark config is valid").0
}

/// Binary-outcome dataset with five valid instruments.
pub fn probit_dataset(n: usize, seed: u64) -> Dataset {
    let cfg = ProbitSimConfig {
        n,
        p_z: 5,
        p_x: 0,
        beta: 0.5,
        gamma: vec![0.8; 5],
        kappa: vec![0.0; 5],
        psi: vec![],
        phi: vec![],
        rho: 0.5,
        sigma_v: 1.0,
        sigma_e: 1.0,
        seed,
    };
    gen_probit_iv(&cfg).expect("benchmark config is valid").0
}

/// Random undirected graph with edge probability `p`.
pub fn random_graph(m: usize, p: f64, seed: u64) -> VoteGraph {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut adj = vec![vec![false; m]; m];
    for j in 0..m {
        adj[j][j] = true;
        for k in 0..j {
            let edge = rng.gen_bool(p);
            adj[j][k] = edge;
            adj[k][j] = edge;
        }
    }
    let labels = (1..=m).map(|j| format!("Z{j}")).collect();
    VoteGraph::new(labels, adj).expect("square adjacency")
}
