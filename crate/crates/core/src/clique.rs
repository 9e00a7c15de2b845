//! Maximum-clique enumeration for the voting graph.
//!
//! The voting rule needs every clique of maximum cardinality, not just one,
//! because each maximum clique yields its own candidate valid set and effect
//! estimate. Graphs here are tiny (one vertex per surviving instrument), so
//! an exact Bron-Kerbosch search over u64 bitsets is both simple and fast.

use crate::error::{Error, Result};

/// Agreement graph over the selected instruments Ŝ.
#[derive(Debug, Clone)]
pub struct VoteGraph {
    pub labels: Vec<String>,
    adj: Vec<Vec<bool>>,
}

impl VoteGraph {
    /// Validates shape, symmetry, and the all-true diagonal.
    pub fn new(labels: Vec<String>, adj: Vec<Vec<bool>>) -> Result<Self> {
        let m = adj.len();
        if m == 0 {
            return Err(Error::EmptyGraph);
        }
        if m > 64 {
            return Err(Error::InvalidOption(format!(
                "voting graph has {m} vertices; at most 64 supported"
            )));
        }
        if labels.len() != m || adj.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch(
                "voting graph adjacency must be square and match labels".into(),
            ));
        }
        for j in 0..m {
            if !adj[j][j] {
                return Err(Error::InvalidOption("voting graph diagonal must be true".into()));
            }
            for k in 0..j {
                if adj[j][k] != adj[k][j] {
                    return Err(Error::InvalidOption("voting graph must be symmetric".into()));
                }
            }
        }
        Ok(VoteGraph { labels, adj })
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn adjacent(&self, j: usize, k: usize) -> bool {
        self.adj[j][k]
    }

    /// Neighbor bitsets without the self loop.
    fn neighbor_bits(&self) -> Vec<u64> {
        let m = self.len();
        (0..m)
            .map(|j| {
                let mut bits = 0u64;
                for k in 0..m {
                    if k != j && self.adj[j][k] {
                        bits |= 1 << k;
                    }
                }
                bits
            })
            .collect()
    }
}

/// All maximum cliques, each ascending, the list in lexicographic order.
pub fn max_cliques(g: &VoteGraph) -> Result<Vec<Vec<usize>>> {
    let m = g.len();
    let nbr = g.neighbor_bits();
    let mut maximal: Vec<u64> = Vec::new();
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    bron_kerbosch(0, full, 0, &nbr, &mut maximal);

    let best = maximal.iter().map(|c| c.count_ones()).max().ok_or(Error::EmptyGraph)?;
    let mut out: Vec<Vec<usize>> = maximal
        .into_iter()
        .filter(|c| c.count_ones() == best)
        .map(|c| (0..m).filter(|&v| c & (1 << v) != 0).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// Classic recursion with pivoting: r = clique so far, p = candidates,
/// x = already-processed vertices that could extend r.
fn bron_kerbosch(r: u64, mut p: u64, mut x: u64, nbr: &[u64], out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // pivot: vertex of p ∪ x covering the most candidates
    let mut pivot = usize::MAX;
    let mut covered = -1i64;
    let mut scan = p | x;
    while scan != 0 {
        let u = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        let c = (p & nbr[u]).count_ones() as i64;
        if c > covered {
            covered = c;
            pivot = u;
        }
    }
    let mut cand = p & !nbr[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let vb = 1u64 << v;
        cand &= cand - 1;
        bron_kerbosch(r | vb, p & nbr[v], x & nbr[v], nbr, out);
        p &= !vb;
        x |= vb;
    }
}
