//! Simple random walks on circulant graphs: closed-form hitting and commute
//! times for K_N minus its diameters, a first-step linear solve, and a
//! seeded Monte Carlo estimator.
//!
//! # Reproducibility
//!
//! Trial `i` of [`simulate_fpt`] draws from a ChaCha8 generator keyed by
//! `ChaCha8Rng::seed_from_u64(seed)` with its stream id set to `i`. Steps
//! pick a neighbor offset with `random_range(0..degree)` over the offsets in
//! [`CirculantGraph::neighbor_offsets`] order. Trials run in parallel but
//! are reduced in index order with exact integer sums, so the estimate does
//! not depend on the thread count.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::circulant::CirculantGraph;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::resistance::{eigentime_closed, resistance_profile, two_point_resistance};

/// Largest system solved over the rationals.
pub const EXACT_SOLVE_CAP: usize = 60;
/// Largest system solved in floating point.
pub const FLOAT_SOLVE_CAP: usize = 4096;

fn edge_count(n: u64) -> Rational {
    Rational::new(BigInt::from(n * (n - 3)), BigInt::from(2))
}

/// H_{0,l} = |E|·R(l) with |E| = N(N−3)/2.
pub fn hitting_time(n: u64, l: u64) -> Result<Rational> {
    Ok(two_point_resistance(n, l)? * edge_count(n))
}

/// H_{0,l} + H_{l,0} = 2|E|·R(l).
pub fn commute_time(n: u64, l: u64) -> Result<Rational> {
    Ok(hitting_time(n, l)? * Rational::from_integer(BigInt::from(2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MfptVariant {
    /// Prefactor d = N − 3, the actual degree of the graph.
    #[default]
    Corrected,
    /// Prefactor N − 1 as printed alongside the closed form; kept for
    /// comparison only.
    Printed,
}

/// Mean first-passage time (1/N)Σ_{l=1}^{N−1} H_{0,l} = (d/N)·R(G).
pub fn mean_first_passage(n: u64, variant: MfptVariant) -> Result<Rational> {
    let eigentime = eigentime_closed(n)?;
    let prefactor = match variant {
        MfptVariant::Corrected => n - 3,
        MfptVariant::Printed => n - 1,
    };
    Ok(eigentime * Rational::from_integer(BigInt::from(prefactor)))
}

/// (1/N)Σ_{l=1}^{N−1} |E|·R(l), summed term by term.
pub fn mean_first_passage_by_sum(n: u64) -> Result<Rational> {
    let total: Rational = resistance_profile(n)?.into_iter().sum();
    Ok(total * edge_count(n) / Rational::from_integer(BigInt::from(n)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum HittingTimes {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl HittingTimes {
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            HittingTimes::Exact(v) => v.iter().map(crate::exact::rational_to_f64).collect(),
            HittingTimes::Float(v) => v.clone(),
        }
    }
}

/// Expected hitting times of `target` from every vertex, exact up to
/// [`EXACT_SOLVE_CAP`] vertices and floating point beyond.
pub fn markov_hitting_times(g: &CirculantGraph, target: usize) -> Result<HittingTimes> {
    if g.order() <= EXACT_SOLVE_CAP {
        exact_hitting_times(g, target).map(HittingTimes::Exact)
    } else {
        float_hitting_times(g, target).map(HittingTimes::Float)
    }
}

fn check_vertex(g: &CirculantGraph, v: usize) -> Result<()> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.order(),
        });
    }
    Ok(())
}

/// Index map from vertices other than `target` to unknowns.
fn unknowns(target: usize) -> impl Fn(usize) -> usize {
    move |v| if v < target { v } else { v - 1 }
}

/// Solves deg·h(i) − Σ_{j~i, j≠target} h(j) = deg over the rationals with
/// Gauss–Jordan elimination.
pub fn exact_hitting_times(g: &CirculantGraph, target: usize) -> Result<Vec<Rational>> {
    check_vertex(g, target)?;
    let n = g.order();
    if n > EXACT_SOLVE_CAP {
        return Err(Error::TooLarge {
            size: n,
            cap: EXACT_SOLVE_CAP,
        });
    }
    let m = n - 1;
    let idx = unknowns(target);
    let deg = Rational::from_integer(BigInt::from(g.degree()));
    // Augmented m × (m+1) system.
    let mut a = vec![vec![Rational::zero(); m + 1]; m];
    for v in (0..n).filter(|&v| v != target) {
        let row = &mut a[idx(v)];
        row[idx(v)] += &deg;
        row[m] = deg.clone();
        for u in g.neighbors(v).filter(|&u| u != target) {
            row[idx(u)] -= Rational::one();
        }
    }
    for col in 0..m {
        let pivot = (col..m)
            .find(|&r| !a[r][col].is_zero())
            .expect("connected graph gives a nonsingular system");
        a.swap(col, pivot);
        let inv = Rational::one() / &a[col][col];
        for x in a[col][col..].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
        }
    }
    Ok((0..n)
        .map(|v| {
            if v == target {
                Rational::zero()
            } else {
                a[idx(v)][m].clone()
            }
        })
        .collect())
}

/// Same system as [`exact_hitting_times`], solved by LU in doubles.
pub fn float_hitting_times(g: &CirculantGraph, target: usize) -> Result<Vec<f64>> {
    check_vertex(g, target)?;
    let n = g.order();
    if n > FLOAT_SOLVE_CAP {
        return Err(Error::TooLarge {
            size: n,
            cap: FLOAT_SOLVE_CAP,
        });
    }
    let m = n - 1;
    let idx = unknowns(target);
    let deg = g.degree() as f64;
    let mut a = DMatrix::<f64>::zeros(m, m);
    let rhs = DVector::<f64>::from_element(m, deg);
    for v in (0..n).filter(|&v| v != target) {
        a[(idx(v), idx(v))] += deg;
        for u in g.neighbors(v).filter(|&u| u != target) {
            a[(idx(v), idx(u))] -= 1.0;
        }
    }
    let h = a
        .lu()
        .solve(&rhs)
        .expect("connected graph gives a nonsingular system");
    Ok((0..n)
        .map(|v| if v == target { 0.0 } else { h[idx(v)] })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    pub trials: u64,
    pub seed: u64,
    /// Per-trial step cap; trials reaching it are counted as truncated.
    pub max_steps: u64,
}

impl WalkConfig {
    pub fn new(trials: u64, seed: u64, max_steps: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::NonPositive("trials"));
        }
        if max_steps == 0 {
            return Err(Error::NonPositive("max_steps"));
        }
        Ok(Self {
            trials,
            seed,
            max_steps,
        })
    }

    /// Step cap of 100·n².
    pub fn for_order(n: usize, trials: u64, seed: u64) -> Result<Self> {
        Self::new(trials, seed, 100 * (n as u64) * (n as u64))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FptEstimate {
    pub mean: f64,
    /// Sample standard deviation over √trials.
    pub stderr: f64,
    pub trials: u64,
    pub truncated: u64,
}

impl FptEstimate {
    pub fn is_valid(&self) -> bool {
        self.truncated == 0
    }

    pub fn z_score(&self, exact: f64) -> f64 {
        (self.mean - exact) / self.stderr
    }
}

fn run_trial(
    base: &ChaCha8Rng,
    trial: u64,
    offsets: &[usize],
    n: usize,
    source: usize,
    target: usize,
    cap: u64,
) -> u64 {
    let mut rng = base.clone();
    rng.set_stream(trial);
    let mut at = source;
    let mut steps = 0;
    while at != target && steps < cap {
        at = (at + offsets[rng.random_range(0..offsets.len())]) % n;
        steps += 1;
    }
    steps
}

pub fn simulate_fpt(
    g: &CirculantGraph,
    source: usize,
    target: usize,
    cfg: &WalkConfig,
) -> Result<FptEstimate> {
    check_vertex(g, source)?;
    check_vertex(g, target)?;
    if source == target {
        return Err(Error::SameEndpoints);
    }
    let n = g.order();
    let offsets = g.neighbor_offsets();
    let base = ChaCha8Rng::seed_from_u64(cfg.seed);
    let steps: Vec<u64> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(&base, i, &offsets, n, source, target, cfg.max_steps))
        .collect();

    let mut sum: u128 = 0;
    let mut sum_sq: u128 = 0;
    let mut truncated = 0;
    for &s in &steps {
        sum += s as u128;
        sum_sq += (s as u128) * (s as u128);
        if s >= cfg.max_steps {
            truncated += 1;
        }
    }
    let t = cfg.trials as u128;
    let mean = sum as f64 / t as f64;
    let stderr = if t > 1 {
        // n·Σx² − (Σx)² is exact in integers.
        let spread = (t * sum_sq - sum * sum) as f64;
        let var = spread / (t as f64 * (t - 1) as f64);
        (var / t as f64).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(FptEstimate {
        mean,
        stderr,
        trials: cfg.trials,
        truncated,
    })
}
