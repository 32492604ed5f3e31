//! Circulant graphs C_n(S): vertex i is joined to i ± s (mod n) for every
//! jump s in S.

use nalgebra::DMatrix;
use num_integer::Integer;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantGraph {
    n: usize,
    jumps: Vec<usize>,
}

impl CirculantGraph {
    /// Builds C_n(jumps). Jumps are sorted and deduplicated; each must lie in
    /// [1, n/2] and the graph must be connected.
    pub fn new(n: usize, jumps: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        let mut jumps: Vec<usize> = jumps.into_iter().collect();
        jumps.sort_unstable();
        jumps.dedup();
        if jumps.is_empty() {
            return Err(Error::EmptyJumps);
        }
        let max = n / 2;
        if let Some(&jump) = jumps.iter().find(|&&j| j == 0 || j > max) {
            return Err(Error::JumpOutOfRange { jump, max });
        }
        let gcd = jumps.iter().fold(n, |g, &j| g.gcd(&j));
        if gcd != 1 {
            return Err(Error::Disconnected { n, gcd });
        }
        Ok(Self { n, jumps })
    }

    /// K_n minus its n "diameter" edges: C_n(1, …, (n−1)/2 − 1) for odd n ≥ 5.
    pub fn complete_minus_diameters(n: usize) -> Result<Self> {
        if n < 5 || n.is_multiple_of(2) {
            return Err(Error::InvalidOrder(n as u64));
        }
        Self::new(n, 1..(n - 1) / 2)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn jumps(&self) -> &[usize] {
        &self.jumps
    }

    pub fn degree(&self) -> usize {
        self.jumps
            .iter()
            .map(|&j| if 2 * j == self.n { 1 } else { 2 })
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.degree() / 2
    }

    /// Offsets o such that v ~ v + o (mod n), one per incident edge.
    pub fn neighbor_offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        for &j in &self.jumps {
            out.push(j);
            if 2 * j != self.n {
                out.push(self.n - j);
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.neighbor_offsets()
            .into_iter()
            .map(move |o| (v + o) % n)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        let d = (u + self.n - v % self.n) % self.n;
        let d = d.min(self.n - d);
        d != 0 && self.jumps.binary_search(&d).is_ok()
    }

    pub fn laplacian(&self) -> DenseLaplacian {
        let n = self.n;
        let mut entries = vec![0i64; n * n];
        let deg = self.degree() as i64;
        for i in 0..n {
            entries[i * n + i] = deg;
            for j in self.neighbors(i) {
                entries[i * n + j] = -1;
            }
        }
        DenseLaplacian { n, entries }
    }
}

/// L = D − A stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseLaplacian {
    n: usize,
    entries: Vec<i64>,
}

impl DenseLaplacian {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j) as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count_edges(g: &CirculantGraph) -> usize {
        let n = g.order();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| g.is_adjacent(i, j))
            .count()
    }

    #[test]
    fn cycle_and_complete() {
        let c5 = CirculantGraph::new(5, [1]).unwrap();
        assert_eq!((c5.degree(), c5.edge_count()), (2, 5));
        let k7 = CirculantGraph::new(7, [3, 1, 2]).unwrap();
        assert_eq!(k7.jumps(), &[1, 2, 3]);
        assert_eq!((k7.degree(), k7.edge_count()), (6, 21));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            CirculantGraph::new(6, [2]),
            Err(Error::Disconnected { n: 6, gcd: 2 })
        );
        assert_eq!(CirculantGraph::new(5, []), Err(Error::EmptyJumps));
        assert_eq!(
            CirculantGraph::new(7, [4]),
            Err(Error::JumpOutOfRange { jump: 4, max: 3 })
        );
        assert_eq!(
            CirculantGraph::new(7, [0, 1]),
            Err(Error::JumpOutOfRange { jump: 0, max: 3 })
        );
        assert_eq!(CirculantGraph::new(2, [1]), Err(Error::TooFewVertices(2)));
    }

    #[test]
    fn complete_minus_diameters() {
        let g = CirculantGraph::complete_minus_diameters(7).unwrap();
        assert_eq!(g.jumps(), &[1, 2]);
        assert_eq!((g.degree(), g.edge_count()), (4, 14));
        let g = CirculantGraph::complete_minus_diameters(5).unwrap();
        assert_eq!(g.jumps(), &[1]);
        assert_eq!((g.degree(), g.edge_count()), (2, 5));
        assert_eq!(
            CirculantGraph::complete_minus_diameters(6),
            Err(Error::InvalidOrder(6))
        );
        assert_eq!(
            CirculantGraph::complete_minus_diameters(3),
            Err(Error::InvalidOrder(3))
        );
    }

    #[test]
    fn edge_count_matches_pair_enumeration() {
        let g = CirculantGraph::complete_minus_diameters(9).unwrap();
        assert_eq!((g.degree(), g.edge_count()), (6, 27));
        assert_eq!(count_edges(&g), 27);
        for n in (5..=31).step_by(2) {
            let g = CirculantGraph::complete_minus_diameters(n).unwrap();
            assert_eq!(count_edges(&g), n * (n - 3) / 2);
            assert_eq!(g.edge_count(), n * g.jumps().len());
        }
        // Even order with the antipodal jump contributes a single edge per vertex.
        let g = CirculantGraph::new(6, [1, 3]).unwrap();
        assert_eq!((g.degree(), g.edge_count()), (3, 9));
        assert_eq!(count_edges(&g), 9);
    }

    #[test]
    fn laplacian_structure() {
        let l = CirculantGraph::new(5, [1]).unwrap().laplacian();
        assert_eq!(l.row(0), &[2, -1, 0, 0, -1]);
        let l = CirculantGraph::new(7, [1, 2]).unwrap().laplacian();
        assert_eq!(l.row(0), &[4, -1, -1, 0, 0, -1, -1]);

        for g in [
            CirculantGraph::new(12, [1, 5]).unwrap(),
            CirculantGraph::new(6, [1, 3]).unwrap(),
            CirculantGraph::complete_minus_diameters(11).unwrap(),
        ] {
            let l = g.laplacian();
            let n = l.order();
            for i in 0..n {
                assert_eq!(l.row(i).iter().sum::<i64>(), 0);
                assert_eq!(l.get(i, i), g.degree() as i64);
                for j in 0..n {
                    assert_eq!(l.get(i, j), l.get(j, i));
                    assert_eq!(l.get(i, j), l.get(0, (j + n - i) % n));
                    if i != j {
                        assert!(matches!(l.get(i, j), 0 | -1));
                    }
                }
            }
        }
    }
}
