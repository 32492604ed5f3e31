//! Two-point and total effective resistance of K_N minus its N diameter
//! edges (the circulant C_N(1, …, (N−3)/2)).
//!
//! With F = D·B_N/(P_N+2):
//!
//! ```text
//! R(l) = B_{2l} − F·B_l²                         1 ≤ l ≤ (N−1)/2
//! R(l) = R(N−l)                                  otherwise
//! R(G) = N·[(P_N − (N−2))/D − (B_N − N)·B_N/(P_N+2)]
//! ```

use std::f64::consts::PI;

use num_bigint::BigInt;

use crate::circulant::CirculantGraph;
use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Rational, SequenceContext};
use crate::radical;
use crate::spectral::{circulant_spectrum, wu_resistance_with};

fn check_distance(n: u64, l: u64) -> Result<()> {
    if l == 0 || l >= n {
        return Err(Error::DistanceOutOfRange { l, max: n - 1 });
    }
    Ok(())
}

/// Maps l to its representative in [1, (N−1)/2].
fn fold_distance(n: u64, l: u64) -> u64 {
    l.min(n - l)
}

/// Exact R(l) between vertices 0 and l.
pub fn two_point_resistance(n: u64, l: u64) -> Result<Rational> {
    let ctx = SequenceContext::new(n)?;
    check_distance(n, l)?;
    let l = fold_distance(n, l);
    let b = ctx.bejaia_terms(2 * l as usize + 1);
    Ok(resistance_from_terms(&b, l, &ctx.radical_factor()))
}

fn resistance_from_terms(b: &[BigInt], l: u64, factor: &Rational) -> Rational {
    let b_l = &b[l as usize];
    Rational::from_integer(b[2 * l as usize].clone()) - factor * Rational::from_integer(b_l * b_l)
}

/// R(1), …, R(N−1) from one pass over the sequence.
pub fn resistance_profile(n: u64) -> Result<Vec<Rational>> {
    let ctx = SequenceContext::new(n)?;
    let b = ctx.bejaia_terms(n as usize);
    let factor = ctx.radical_factor();
    let half: Vec<Rational> = (1..=(n - 1) / 2)
        .map(|l| resistance_from_terms(&b, l, &factor))
        .collect();
    Ok((1..n)
        .map(|l| half[fold_distance(n, l) as usize - 1].clone())
        .collect())
}

/// R(l) from the unrationalized radical form, evaluated in extended
/// fixed-point precision and rounded to double.
pub fn radical_resistance(n: u64, l: u64) -> Result<f64> {
    SequenceContext::new(n)?;
    check_distance(n, l)?;
    Ok(radical::radical_resistance_extended(n, fold_distance(n, l)))
}

/// The radical form evaluated literally in doubles. Loses roughly
/// log10(B_{2l}) digits to cancellation; only meaningful for small N·l.
pub fn radical_resistance_double(n: u64, l: u64) -> Result<f64> {
    SequenceContext::new(n)?;
    check_distance(n, l)?;
    Ok(radical::radical_resistance_double(n, fold_distance(n, l)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfSums {
    /// Even-mode half of the spectral sum.
    pub r1: f64,
    /// Odd-mode half of the spectral sum.
    pub r2: f64,
    /// R(l)/2 from the exact closed form.
    pub closed: f64,
}

/// Splits the spectral sum for R(l) into its even-mode and odd-mode halves
/// and evaluates each directly:
///
/// ```text
/// r1 = (4/N) Σ_{k=1}^{(N−1)/2} sin²(2klπ/N) / (N − 4sin²(kπ/N))
/// r2 = (4/N) Σ_{k=1}^{(N−1)/2} sin²((2k−1)lπ/N) / (N − 4cos²((2k−1)π/2N))
/// ```
pub fn half_sums(n: u64, l: u64) -> Result<HalfSums> {
    let exact = two_point_resistance(n, l)?;
    let nf = n as f64;
    let sin_sq = |num: f64| (num * PI / nf).sin().powi(2);
    let mut r1 = 0.0;
    let mut r2 = 0.0;
    for k in 1..=(n - 1) / 2 {
        let even = (2 * k * l) % n;
        r1 += sin_sq(even as f64) / (nf - 4.0 * sin_sq(k as f64));
        let odd = ((2 * k - 1) * l) % n;
        let c = ((2 * k - 1) as f64 * PI / (2.0 * nf)).cos();
        r2 += sin_sq(odd as f64) / (nf - 4.0 * c * c);
    }
    Ok(HalfSums {
        r1: 4.0 * r1 / nf,
        r2: 4.0 * r2 / nf,
        closed: rational_to_f64(&exact) / 2.0,
    })
}

/// Kirchhoff index R(G) = Σ_{i<j} R_ij from the closed form.
pub fn total_effective_resistance(n: u64) -> Result<Rational> {
    Ok(eigentime_closed(n)? * Rational::from_integer(BigInt::from(n)))
}

/// R(G) as N·Σ_{l=1}^{(N−1)/2} R(l).
pub fn total_resistance_by_pairs(n: u64) -> Result<Rational> {
    let profile = resistance_profile(n)?;
    let half: Rational = profile[..(n as usize - 1) / 2].iter().cloned().sum();
    Ok(half * Rational::from_integer(BigInt::from(n)))
}

/// (P_N − (N−2))/D − (B_N − N)·B_N/(P_N + 2), which equals Σ 1/λ_k.
pub fn eigentime_closed(n: u64) -> Result<Rational> {
    let ctx = SequenceContext::new(n)?;
    let b_n = ctx.bejaia(n);
    let p_n = ctx.pisa(n);
    let nb = BigInt::from(n);
    let first = Rational::new(&p_n - (&nb - 2), ctx.radicand().clone());
    let second = Rational::new((&b_n - &nb) * &b_n, p_n + 2);
    Ok(first - second)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigentimeCheck {
    /// Σ_{k=1}^{N−1} 1/λ_k over the Laplacian spectrum.
    pub spectral: f64,
    pub closed: Rational,
}

impl EigentimeCheck {
    pub fn abs_dev(&self) -> f64 {
        (self.spectral - rational_to_f64(&self.closed)).abs()
    }
}

pub fn eigentime_identity(n: u64) -> Result<EigentimeCheck> {
    let closed = eigentime_closed(n)?;
    let g = CirculantGraph::complete_minus_diameters(n as usize)?;
    Ok(EigentimeCheck {
        spectral: circulant_spectrum(&g).reciprocal_sum(),
        closed,
    })
}

/// One (N, l) resistance evaluated three independent ways.
#[derive(Clone, Debug, PartialEq)]
pub struct ResistanceReport {
    pub n: u64,
    pub l: u64,
    pub exact: Rational,
    /// Radical closed form in extended precision.
    pub float_closed: f64,
    /// Spectral sum over the Laplacian eigenvalues.
    pub spectral: f64,
    pub max_rel_dev: f64,
}

impl ResistanceReport {
    pub fn is_valid(&self, tolerance: f64) -> bool {
        self.max_rel_dev <= tolerance
    }
}

pub const REPORT_TOLERANCE: f64 = 1e-9;

pub(crate) fn max_pairwise_rel_dev(values: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let dev = (a - b).abs() / a.abs().max(b.abs());
            worst = worst.max(if dev.is_nan() { f64::INFINITY } else { dev });
        }
    }
    worst
}

pub fn resistance_report(n: u64, l: u64) -> Result<ResistanceReport> {
    let exact = two_point_resistance(n, l)?;
    let float_closed = radical_resistance(n, l)?;
    let g = CirculantGraph::complete_minus_diameters(n as usize)?;
    let spectral = wu_resistance_with(&circulant_spectrum(&g), l as usize)?;
    let max_rel_dev = max_pairwise_rel_dev(&[rational_to_f64(&exact), float_closed, spectral]);
    Ok(ResistanceReport {
        n,
        l,
        exact,
        float_closed,
        spectral,
        max_rel_dev,
    })
}
