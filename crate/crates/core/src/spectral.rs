//! Laplacian spectra of circulant graphs and the floating-point sums built
//! on them.
//!
//! Everything here is double precision. Binomial coefficients are formed
//! exactly and converted at the end, so exponents well past 2N do not
//! overflow intermediate values.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::circulant::CirculantGraph;
use crate::error::{Error, Result};
use crate::exact::{binomial, rational_to_f64, Rational};

/// Laplacian eigenvalues indexed by Fourier mode k = 0..n−1.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenSpectrum {
    values: Vec<f64>,
}

impl EigenSpectrum {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, mode: usize) -> f64 {
        self.values[mode]
    }

    /// Σ_{k=1}^{n−1} 1/λ_k.
    pub fn reciprocal_sum(&self) -> f64 {
        self.values[1..].iter().map(|v| 1.0 / v).sum()
    }
}

/// sin²(π·m/n) with m reduced to [0, n/2], so that modes m and n−m give
/// bit-identical values.
fn sin_sq_frac(m: usize, n: usize) -> f64 {
    let m = m % n;
    let m = m.min(n - m);
    let s = (PI * m as f64 / n as f64).sin();
    s * s
}

/// λ_k = Σ over incident offsets of (1 − cos(2πko/n)), i.e. 4Σ_j sin²(πkj/n)
/// for ordinary jumps.
pub fn circulant_spectrum(g: &CirculantGraph) -> EigenSpectrum {
    let n = g.order();
    let values = (0..n)
        .map(|k| {
            g.jumps()
                .iter()
                .map(|&j| {
                    let weight = if 2 * j == n { 2.0 } else { 4.0 };
                    weight * sin_sq_frac(k * j, n)
                })
                .sum()
        })
        .collect();
    EigenSpectrum { values }
}

/// Spectrum of K_n minus its diameters through the even/odd split
/// λ_{2k} = n − 4sin²(kπ/n), λ_{2k−1} = n − 4cos²((2k−1)π/2n).
pub fn complete_minus_diameters_spectrum(n: usize) -> Result<EigenSpectrum> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidOrder(n as u64));
    }
    let nf = n as f64;
    let mut values = vec![0.0; n];
    for k in 1..=(n - 1) / 2 {
        values[2 * k] = nf - 4.0 * sin_sq_frac(k, n);
        let c = ((2 * k - 1) as f64 * PI / (2.0 * nf)).cos();
        values[2 * k - 1] = nf - 4.0 * c * c;
    }
    Ok(EigenSpectrum { values })
}

/// Two-point resistance between vertices 0 and l from the spectrum:
/// (1/n)Σ_{k=1}^{n−1} 4sin²(πkl/n)/λ_k.
pub fn wu_resistance(g: &CirculantGraph, l: usize) -> Result<f64> {
    wu_resistance_with(&circulant_spectrum(g), l)
}

pub fn wu_resistance_with(spectrum: &EigenSpectrum, l: usize) -> Result<f64> {
    let n = spectrum.order();
    if l == 0 || l >= n {
        return Err(Error::DistanceOutOfRange {
            l: l as u64,
            max: n as u64 - 1,
        });
    }
    let sum: f64 = (1..n)
        .map(|k| 4.0 * sin_sq_frac(k * l, n) / spectrum.values[k])
        .sum();
    Ok(sum / n as f64)
}

/// Σ_{p≥1, pN≤k} (−1)^{pN} C(2k, k−pN).
fn schwatt_correction(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::zero();
    let mut p = 1;
    while p * n <= k {
        let c = BigInt::from(binomial(2 * k, k - p * n));
        if (p * n) % 2 == 1 {
            acc -= c;
        } else {
            acc += c;
        }
        p += 1;
    }
    acc
}

/// Σ_{m=1}^{n−1} sin^{2k}(mπ/n) in closed form, including the correction
/// terms that appear once k reaches n.
pub fn sin_power_sum(n: u64, k: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::TooFewVertices(n as usize));
    }
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    let central = BigInt::from(binomial(2 * k, k));
    let numer = BigInt::from(n) * (central + 2 * schwatt_correction(n, k));
    let denom = BigInt::one() << (2 * k);
    Ok(rational_to_f64(&Rational::new(numer, denom)))
}

pub fn sin_power_sum_direct(n: u64, k: u64) -> f64 {
    let n = n as usize;
    (1..n).map(|m| sin_sq_frac(m, n).powi(k as i32)).sum()
}

/// Σ_{m=1}^{(n−1)/2} cos^{2k}((2m−1)π/2n) in closed form: the central term
/// plus even-p minus odd-p corrections C(2k, k−pn).
pub fn cos_odd_power_sum(n: u64, k: u64) -> Result<f64> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidOrder(n));
    }
    if k == 0 {
        return Err(Error::NonPositive("k"));
    }
    let mut correction = BigInt::zero();
    let mut p = 1;
    while p * n <= k {
        let c = BigInt::from(binomial(2 * k, k - p * n));
        if p % 2 == 0 {
            correction += c;
        } else {
            correction -= c;
        }
        p += 1;
    }
    let central = BigInt::from(binomial(2 * k, k));
    let numer = BigInt::from(n) * (central + 2 * correction);
    let denom = BigInt::one() << (2 * k + 1);
    Ok(rational_to_f64(&Rational::new(numer, denom)))
}

pub fn cos_odd_power_sum_direct(n: u64, k: u64) -> f64 {
    let nf = n as f64;
    (1..=(n - 1) / 2)
        .map(|m| {
            ((2 * m - 1) as f64 * PI / (2.0 * nf))
                .cos()
                .powi(2 * k as i32)
        })
        .sum()
}

/// Normalized Chebyshev polynomial C_{2l}(x) = 2T_{2l}(x/2) from its explicit
/// coefficient sum. C₀ = 2.
///
/// The alternating sum cancels badly near |x| = 2 for large l, so it is
/// carried out exactly on the binary value of `x` and rounded once.
pub fn chebyshev_normalized(l: u64, x: f64) -> f64 {
    if l == 0 {
        return 2.0;
    }
    let Some(x) = Rational::from_float(x) else {
        return f64::NAN;
    };
    let x_sq = &x * &x;
    let two_l = 2 * l;
    // Horner in x² from the constant term (k = l) upwards.
    let mut acc = Rational::zero();
    let mut power = Rational::one();
    for k in (0..=l).rev() {
        // (2l/(2l−k))·C(2l−k, k) is always an integer.
        let coeff = BigUint::from(two_l) * binomial(two_l - k, k) / (two_l - k);
        let mut term = Rational::from_integer(BigInt::from(coeff)) * &power;
        if k % 2 == 1 {
            term = -term;
        }
        acc += term;
        power *= &x_sq;
    }
    rational_to_f64(&acc)
}

/// Σ_{p≥1, pN≤J} (−1)^p C(2J, J−pN). No closed form is known; this is the
/// direct evaluation.
pub fn folded_binomial_sum(j: u64, n: u64) -> BigInt {
    let row = half_row(j);
    folded_from_row(&row, n, |p| if p % 2 == 0 { 1 } else { -1 })
}

/// C(2J, J−r) for r = 0..=J.
fn half_row(j: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(j as usize + 1);
    let mut c = binomial(2 * j, j);
    for r in 0..=j {
        let next = if r < j {
            Some(&c * (j - r) / (j + r + 1))
        } else {
            None
        };
        row.push(c);
        match next {
            Some(v) => c = v,
            None => break,
        }
    }
    row
}

fn folded_from_row(row: &[BigUint], n: u64, sign: impl Fn(u64) -> i8) -> BigInt {
    let j = row.len() as u64 - 1;
    let mut acc = BigInt::zero();
    let mut p = 1;
    while p * n <= j {
        match sign(p) {
            1 => acc += BigInt::from(row[(p * n) as usize].clone()),
            -1 => acc -= BigInt::from(row[(p * n) as usize].clone()),
            _ => {}
        }
        p += 1;
    }
    acc
}

/// A truncated series next to its closed-form limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesPair {
    pub truncated: f64,
    pub closed: f64,
}

impl SeriesPair {
    pub fn rel_dev(&self) -> f64 {
        ((self.truncated - self.closed) / self.closed).abs()
    }
}

/// The four series Σ_J N^{−J}·(…) whose limits feed the resistance formula.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesReport {
    pub n: u64,
    pub truncation: u64,
    /// False when `truncation < 50·n`; the values are still filled in.
    pub sufficient: bool,
    /// Σ C(2J,J)/N^J → √(N/(N−4)).
    pub central: SeriesPair,
    /// Σ N^{−J} Σ_p (−1)^p C(2J, J−pN) → −(N/√D)·φ̄^N/(1+φ̄^N).
    pub alternating: SeriesPair,
    /// Σ N^{−J} Σ_p C(2J, J−2pN) → (N/√D)·φ̄^{2N}/(1−φ̄^{2N}).
    pub even_folded: SeriesPair,
    /// Σ N^{−J} Σ_p C(2J, J−(2p−1)N) → (N/√D)·φ̄^N/(1−φ̄^{2N}).
    pub odd_folded: SeriesPair,
}

impl SeriesReport {
    pub fn pairs(&self) -> [(&'static str, SeriesPair); 4] {
        [
            ("central", self.central),
            ("alternating", self.alternating),
            ("even_folded", self.even_folded),
            ("odd_folded", self.odd_folded),
        ]
    }

    pub fn max_rel_dev(&self) -> f64 {
        self.pairs()
            .iter()
            .map(|(_, p)| p.rel_dev())
            .fold(0.0, f64::max)
    }
}

pub fn series_identities(n: u64, truncation: u64) -> Result<SeriesReport> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(Error::InvalidOrder(n));
    }
    let mut sums = [0.0f64; 4];
    let mut scale = BigInt::one();
    for j in 0..=truncation {
        let row = half_row(j);
        let inner = [
            BigInt::from(row[0].clone()),
            folded_from_row(&row, n, |p| if p % 2 == 0 { 1 } else { -1 }),
            folded_from_row(&row, n, |p| if p % 2 == 0 { 1 } else { 0 }),
            folded_from_row(&row, n, |p| if p % 2 == 1 { 1 } else { 0 }),
        ];
        for (sum, value) in sums.iter_mut().zip(inner) {
            if !value.is_zero() {
                *sum += rational_to_f64(&Rational::new(value, scale.clone()));
            }
        }
        scale *= n;
    }

    let nf = n as f64;
    let root = (nf * (nf - 4.0)).sqrt();
    let conj = 2.0 / (nf - 2.0 + root);
    let conj_n = conj.powi(n as i32);
    let conj_2n = conj_n * conj_n;
    let pref = nf / root;
    let closed = [
        (nf / (nf - 4.0)).sqrt(),
        -pref * conj_n / (1.0 + conj_n),
        pref * conj_2n / (1.0 - conj_2n),
        pref * conj_n / (1.0 - conj_2n),
    ];
    let pair = |i: usize| SeriesPair {
        truncated: sums[i],
        closed: closed[i],
    };
    Ok(SeriesReport {
        n,
        truncation,
        sufficient: truncation >= 50 * n,
        central: pair(0),
        alternating: pair(1),
        even_folded: pair(2),
        odd_folded: pair(3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn cycle_spectrum() {
        let s = circulant_spectrum(&CirculantGraph::new(5, [1]).unwrap());
        let sin2 = |k: f64| 4.0 * (k * PI / 5.0).sin().powi(2);
        let want = [0.0, sin2(1.0), sin2(2.0), sin2(2.0), sin2(1.0)];
        for (got, want) in s.values().iter().zip(want) {
            assert!(close(*got, want, 1e-15));
        }
        assert_eq!(s.get(0), 0.0);
    }

    #[test]
    fn c7_first_mode() {
        let s = circulant_spectrum(&CirculantGraph::new(7, [1, 2]).unwrap());
        let direct = 4.0 * (PI / 7.0).sin().powi(2) + 4.0 * (2.0 * PI / 7.0).sin().powi(2);
        let via_identity = 7.0 - 4.0 * (3.0 * PI / 7.0).sin().powi(2);
        assert!(close(s.get(1), direct, 1e-14));
        assert!(close(s.get(1), via_identity, 1e-14));
        assert!((s.get(1) - 3.198).abs() < 1e-3);
    }

    #[test]
    fn spectrum_trace_and_symmetry() {
        for g in [
            CirculantGraph::new(12, [1, 5]).unwrap(),
            CirculantGraph::new(6, [1, 3]).unwrap(),
            CirculantGraph::new(31, [2, 7, 11]).unwrap(),
        ] {
            let s = circulant_spectrum(&g);
            let n = g.order();
            let trace: f64 = s.values().iter().sum();
            assert!(close(trace, (n * g.degree()) as f64, 1e-12));
            for k in 1..n {
                assert_eq!(s.get(k), s.get(n - k));
                assert!(s.get(k) > 0.0);
            }
        }
    }

    #[test]
    fn spectrum_matches_dense_eigensolver() {
        for g in [
            CirculantGraph::complete_minus_diameters(9).unwrap(),
            CirculantGraph::new(10, [1, 3, 5]).unwrap(),
            CirculantGraph::new(101, [1, 2]).unwrap(),
        ] {
            let mut dense: Vec<f64> = SymmetricEigen::new(g.laplacian().to_matrix())
                .eigenvalues
                .iter()
                .copied()
                .collect();
            let mut ours = circulant_spectrum(&g).values().to_vec();
            dense.sort_by(f64::total_cmp);
            ours.sort_by(f64::total_cmp);
            for (a, b) in dense.iter().zip(&ours) {
                assert!((a - b).abs() <= 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn diameter_free_spectrum_matches_general_formula() {
        for n in (5..=41).step_by(2) {
            let general = circulant_spectrum(&CirculantGraph::complete_minus_diameters(n).unwrap());
            let split = complete_minus_diameters_spectrum(n).unwrap();
            for k in 0..n {
                assert!((general.get(k) - split.get(k)).abs() <= 1e-9, "N={n} k={k}");
            }
        }
        assert!(complete_minus_diameters_spectrum(8).is_err());
    }

    #[test]
    fn half_turn_identity() {
        for n in [5usize, 7, 9, 11] {
            for mode in 1..n {
                let s: f64 = (1..=(n - 1) / 2)
                    .map(|m| 4.0 * sin_sq_frac(mode * m, n))
                    .sum();
                assert!((s - n as f64).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn wu_resistance_examples() {
        let c5 = CirculantGraph::new(5, [1]).unwrap();
        assert!(close(wu_resistance(&c5, 1).unwrap(), 0.8, 1e-12));
        assert!(close(wu_resistance(&c5, 2).unwrap(), 1.2, 1e-12));
        let c7 = CirculantGraph::new(7, [1, 2]).unwrap();
        assert!(close(wu_resistance(&c7, 1).unwrap(), 38.0 / 91.0, 1e-12));
        assert!(matches!(
            wu_resistance(&c7, 0),
            Err(Error::DistanceOutOfRange { .. })
        ));
        assert!(wu_resistance(&c7, 7).is_err());
    }

    #[test]
    fn wu_resistance_is_symmetric() {
        let g = CirculantGraph::new(23, [1, 4, 9]).unwrap();
        for l in 1..23 {
            assert_eq!(
                wu_resistance(&g, l).unwrap(),
                wu_resistance(&g, 23 - l).unwrap()
            );
        }
    }

    #[test]
    fn sin_power_sum_examples() {
        assert!(close(sin_power_sum(5, 1).unwrap(), 2.5, 1e-15));
        assert_eq!(sin_power_sum(5, 5).unwrap(), 1250.0 / 1024.0);
        assert!(close(
            sin_power_sum(5, 5).unwrap(),
            sin_power_sum_direct(5, 5),
            1e-12
        ));
        assert!(close(sin_power_sum(7, 3).unwrap(), 2.1875, 1e-15));
        assert!(close(sin_power_sum_direct(7, 3), 2.1875, 1e-12));
    }

    #[test]
    fn cos_odd_power_sum_examples() {
        assert!(close(cos_odd_power_sum(5, 1).unwrap(), 1.25, 1e-15));
        assert!(close(cos_odd_power_sum_direct(5, 1), 1.25, 1e-14));
        assert!(close(
            cos_odd_power_sum(5, 5).unwrap(),
            cos_odd_power_sum_direct(5, 5),
            1e-12
        ));
        assert!(close(cos_odd_power_sum(7, 2).unwrap(), 1.3125, 1e-15));
        assert!(cos_odd_power_sum(6, 2).is_err());
    }

    #[test]
    fn power_sums_at_congruence_boundary() {
        for n in [5u64, 7, 9] {
            for k in [n, n + 1, 2 * n, 2 * n + 3] {
                let closed = sin_power_sum(n, k).unwrap();
                let direct = sin_power_sum_direct(n, k);
                assert!(
                    ((closed - direct) / direct).abs() <= 1e-9,
                    "sin N={n} k={k}"
                );
                let closed = cos_odd_power_sum(n, k).unwrap();
                let direct = cos_odd_power_sum_direct(n, k);
                assert!(
                    ((closed - direct) / direct).abs() <= 1e-9,
                    "cos N={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn power_sum_errors() {
        assert_eq!(sin_power_sum(5, 0), Err(Error::NonPositive("k")));
        assert!(sin_power_sum(1, 3).is_err());
    }

    #[test]
    fn chebyshev_examples() {
        assert!(close(chebyshev_normalized(1, 3.0), 7.0, 1e-14));
        let hyperbolic = 2.0 * (2.0 * (1.5f64).acosh()).cosh();
        assert!(close(chebyshev_normalized(1, 3.0), hyperbolic, 1e-12));
        for l in 0..20 {
            assert!(close(chebyshev_normalized(l, 2.0), 2.0, 1e-10));
        }
        assert!(close(chebyshev_normalized(2, 1.0), -1.0, 1e-14));
        assert!(close(
            chebyshev_normalized(2, 1.0),
            2.0 * (4.0 * PI / 3.0).cos(),
            1e-12
        ));
        assert_eq!(chebyshev_normalized(0, 0.3), 2.0);
    }

    #[test]
    fn chebyshev_matches_trig_form() {
        for l in 0..40u64 {
            for i in 0..=40 {
                let x = -2.0 + 0.1 * i as f64;
                let trig = 2.0 * (2.0 * l as f64 * (x / 2.0).acos()).cos();
                assert!(
                    (chebyshev_normalized(l, x) - trig).abs() <= 1e-10,
                    "l={l} x={x}"
                );
            }
        }
    }

    #[test]
    fn folded_sum_single_term() {
        assert_eq!(folded_binomial_sum(5, 5), BigInt::from(-1));
        assert_eq!(folded_binomial_sum(4, 5), BigInt::zero());
        // J = 12, N = 5: −C(24,7) + C(24,2).
        let want = -BigInt::from(binomial(24, 7)) + BigInt::from(binomial(24, 2));
        assert_eq!(folded_binomial_sum(12, 5), want);
    }

    #[test]
    fn central_series_for_n5() {
        // 200 terms already converge (ratio 4/5) but sit below the 50·N floor.
        let short = series_identities(5, 200).unwrap();
        assert!((short.central.truncated - 5f64.sqrt()).abs() < 1e-7);
        assert!(!short.sufficient);

        let r = series_identities(5, 250).unwrap();
        assert!((r.central.closed - 2.2360680).abs() < 1e-7);
        assert!(r.sufficient);
        let conj: f64 = (3.0 - 5f64.sqrt()) / 2.0;
        let want = -5.0 / 5f64.sqrt() * conj.powi(5) / (1.0 + conj.powi(5));
        assert!(close(r.alternating.closed, want, 1e-12));
        assert!(r.alternating.rel_dev() < 1e-8);
    }

    #[test]
    fn short_truncation_is_flagged() {
        let r = series_identities(7, 100).unwrap();
        assert!(!r.sufficient);
    }
}
