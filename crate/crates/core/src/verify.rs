//! Batch consistency checks over odd orders N = 5, 7, …, n_max.

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use crate::circulant::CirculantGraph;
use crate::error::{Error, Result};
use crate::exact::{rational_to_f64, Rational, SequenceContext};
use crate::resistance::{
    eigentime_identity, half_sums, max_pairwise_rel_dev, radical_resistance, resistance_profile,
};
use crate::spectral::{
    circulant_spectrum, complete_minus_diameters_spectrum, cos_odd_power_sum,
    cos_odd_power_sum_direct, series_identities, sin_power_sum, sin_power_sum_direct,
    wu_resistance_with,
};
use crate::walk::{
    exact_hitting_times, float_hitting_times, hitting_time, mean_first_passage,
    mean_first_passage_by_sum, simulate_fpt, MfptVariant, WalkConfig,
};

/// Largest N for which the Markov oracle is compared as exact rationals.
pub const EXACT_MARKOV_MAX: u64 = 25;
/// Largest N for the series and Monte Carlo rows, which are the slow ones.
pub const SERIES_MAX: u64 = 15;
pub const MONTE_CARLO_MAX: u64 = 15;
pub const MONTE_CARLO_TRIALS: u64 = 20_000;
pub const MONTE_CARLO_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Relative tolerance for the resistance and power-sum oracle rows.
    pub oracle_tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            oracle_tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckRow {
    pub check: &'static str,
    pub n: u64,
    /// Worst deviation seen; identities checked exactly report 0 or 1.
    pub max_dev: f64,
    pub tolerance: f64,
    /// Representative value printed alongside the row, if any.
    pub value: Option<f64>,
}

impl CheckRow {
    pub fn passed(&self) -> bool {
        self.max_dev <= self.tolerance
    }
}

fn row(check: &'static str, n: u64, max_dev: f64, tolerance: f64) -> CheckRow {
    CheckRow {
        check,
        n,
        max_dev: if max_dev.is_nan() {
            f64::INFINITY
        } else {
            max_dev
        },
        tolerance,
        value: None,
    }
}

fn exact_row(check: &'static str, n: u64, ok: bool) -> CheckRow {
    row(check, n, if ok { 0.0 } else { 1.0 }, 0.0)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Runs every check for every odd N in [5, n_max]; rows are ordered by N,
/// then by check.
pub fn run(n_max: u64, opts: VerifyOptions) -> Result<Vec<CheckRow>> {
    if n_max < 5 || n_max.is_multiple_of(2) {
        return Err(Error::InvalidOrder(n_max));
    }
    let orders: Vec<u64> = (5..=n_max).step_by(2).collect();
    let per_order: Vec<Result<Vec<CheckRow>>> =
        orders.par_iter().map(|&n| checks_for(n, opts)).collect();
    let mut rows = Vec::new();
    for r in per_order {
        rows.extend(r?);
    }
    Ok(rows)
}

fn checks_for(n: u64, opts: VerifyOptions) -> Result<Vec<CheckRow>> {
    let ctx = SequenceContext::new(n)?;
    let g = CirculantGraph::complete_minus_diameters(n as usize)?;
    let spectrum = circulant_spectrum(&g);
    let nu = n as usize;
    let mut rows = Vec::new();

    // 4Σ_{m=1}^{(N−1)/2} sin²(kmπ/N) = N for every nonzero mode.
    let half_turn = (1..nu)
        .map(|k| {
            let s: f64 = (1..=(nu - 1) / 2)
                .map(|m| {
                    4.0 * (std::f64::consts::PI * (k * m) as f64 / n as f64)
                        .sin()
                        .powi(2)
                })
                .sum();
            (s - n as f64).abs()
        })
        .fold(0.0, f64::max);
    rows.push(row("half_turn_identity", n, half_turn, 1e-10));

    let split = complete_minus_diameters_spectrum(nu)?;
    let spec_dev = (0..nu)
        .map(|k| (split.get(k) - spectrum.get(k)).abs())
        .fold(0.0, f64::max);
    rows.push(row("spectrum_split", n, spec_dev, 1e-9));

    let mut sin_dev = 0.0f64;
    let mut cos_dev = 0.0f64;
    for k in 1..=3 * n {
        sin_dev = sin_dev.max(rel(sin_power_sum(n, k)?, sin_power_sum_direct(n, k)));
        cos_dev = cos_dev.max(rel(
            cos_odd_power_sum(n, k)?,
            cos_odd_power_sum_direct(n, k),
        ));
    }
    rows.push(row("sin_power_sum", n, sin_dev, opts.oracle_tolerance));
    rows.push(row("cos_odd_power_sum", n, cos_dev, opts.oracle_tolerance));

    let mut split_dev = 0.0f64;
    let mut closed_dev = 0.0f64;
    for l in 1..n {
        let h = half_sums(n, l)?;
        split_dev = split_dev.max((h.r1 - h.r2).abs());
        closed_dev = closed_dev.max((h.r1 - h.closed).abs());
    }
    rows.push(row("half_sums_equal", n, split_dev, 1e-10));
    rows.push(row("half_sum_closed", n, closed_dev, 1e-9));

    let profile = resistance_profile(n)?;
    let mut triple = 0.0f64;
    for l in 1..n {
        let exact = rational_to_f64(&profile[l as usize - 1]);
        let radical = radical_resistance(n, l)?;
        let wu = wu_resistance_with(&spectrum, l as usize)?;
        triple = triple.max(max_pairwise_rel_dev(&[exact, radical, wu]));
    }
    rows.push(row(
        "resistance_triple_oracle",
        n,
        triple,
        opts.oracle_tolerance,
    ));

    let mut foster = 0.0;
    for o in g.neighbor_offsets() {
        foster += wu_resistance_with(&spectrum, o)?;
    }
    // Σ over edges = (N/2)·Σ over the offsets at vertex 0.
    let foster = foster * n as f64 / 2.0;
    rows.push(row("foster_sum", n, (foster - (n - 1) as f64).abs(), 1e-8));

    rows.push(exact_row(
        "symmetry_identity",
        n,
        symmetry_identity_holds(&ctx),
    ));
    rows.push(exact_row(
        "sequence_identities",
        n,
        sequence_identities_hold(&ctx, 2 * n),
    ));
    let half = (n - 1) / 2;
    let sums_ok =
        (1..=half).all(|m| ctx.sum_bejaia_even(m).is_ok() && ctx.sum_bejaia_squares(m).is_ok());
    rows.push(exact_row("bejaia_sums", n, sums_ok));

    let eig = eigentime_identity(n)?;
    let mut eig_row = row("eigentime_identity", n, eig.abs_dev(), 1e-8);
    eig_row.value = Some(eig.spectral);
    rows.push(eig_row);

    rows.push(markov_row(&g, n)?);

    let corrected = mean_first_passage(n, MfptVariant::Corrected)?;
    let printed = mean_first_passage(n, MfptVariant::Printed)?;
    let factor = Rational::new(BigInt::from(n - 1), BigInt::from(n - 3));
    let mfpt_ok = corrected == mean_first_passage_by_sum(n)? && printed == &corrected * factor;
    rows.push(exact_row("mfpt_erratum", n, mfpt_ok));

    if n <= SERIES_MAX {
        let s = series_identities(n, 100 * n)?;
        rows.push(row("series_identities", n, s.max_rel_dev(), 1e-8));
    }
    if n <= MONTE_CARLO_MAX {
        let cfg = WalkConfig::for_order(nu, MONTE_CARLO_TRIALS, MONTE_CARLO_SEED ^ n)?;
        let est = simulate_fpt(&g, 0, 1, &cfg)?;
        let exact = rational_to_f64(&hitting_time(n, 1)?);
        let z = if est.is_valid() {
            est.z_score(exact).abs()
        } else {
            f64::INFINITY
        };
        rows.push(row("monte_carlo_z", n, z, 4.0));
    }
    Ok(rows)
}

fn markov_row(g: &CirculantGraph, n: u64) -> Result<CheckRow> {
    if n <= EXACT_MARKOV_MAX {
        let h = exact_hitting_times(g, 0)?;
        let mut ok = true;
        for l in 1..n {
            ok &= h[l as usize] == hitting_time(n, l)?;
        }
        Ok(exact_row("markov_exact", n, ok))
    } else {
        let h = float_hitting_times(g, 0)?;
        let mut dev = 0.0f64;
        for l in 1..n {
            dev = dev.max(rel(h[l as usize], rational_to_f64(&hitting_time(n, l)?)));
        }
        Ok(row("markov_float", n, dev, 1e-8))
    }
}

/// B_{2(N−l)} − B_{2l} − 2B_{N−2l} = F·(B_{N−l}² − B_l²) for 1 ≤ l ≤ N−1,
/// with F = D·B_N/(P_N+2).
pub fn symmetry_identity_holds(ctx: &SequenceContext) -> bool {
    let n = ctx.order();
    let b = ctx.bejaia_terms(2 * n as usize);
    let factor = ctx.radical_factor();
    let signed = |i: i64| -> BigInt {
        if i < 0 {
            -b[(-i) as usize].clone()
        } else {
            b[i as usize].clone()
        }
    };
    (1..n).all(|l| {
        let (n, l) = (n as i64, l as i64);
        let lhs = signed(2 * (n - l)) - signed(2 * l) - 2 * signed(n - 2 * l);
        let rhs =
            &factor * Rational::from_integer(signed(n - l) * signed(n - l) - signed(l) * signed(l));
        Rational::from_integer(lhs) == rhs
    })
}

/// Norm, square and cross identities between B and P for 1 ≤ l ≤ max_l,
/// plus agreement of the recursion with the powers of φ.
pub fn sequence_identities_hold(ctx: &SequenceContext, max_l: u64) -> bool {
    let m = 2 * max_l as usize + 2;
    let b = ctx.bejaia_terms(m);
    let p = ctx.pisa_terms(m);
    let d = ctx.radicand();
    let four = BigInt::from(4);
    let two = BigInt::from(2);
    let phi = ctx.fundamental_unit();
    let mut power = phi.pow(0);
    for l in 0..=max_l as usize {
        let (bl, pl) = (&b[l], &p[l]);
        let binet_ok = power.radical_part() * Rational::from_integer(two.clone())
            == Rational::from_integer(bl.clone())
            && power.rational_part() * Rational::from_integer(two.clone())
                == Rational::from_integer(pl.clone());
        if !binet_ok || pl * pl - d * bl * bl != four || (bl * bl * d) != &p[2 * l] - &two {
            return false;
        }
        if l >= 1 && (pl != &(&b[l + 1] - &b[l - 1]) || d * bl != &p[l + 1] - &p[l - 1]) {
            return false;
        }
        if bl.is_negative() {
            return false;
        }
        power = power.mul(&phi).expect("same field");
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes() {
        let rows = run(9, VerifyOptions::default()).unwrap();
        assert!(rows.iter().all(CheckRow::passed), "{rows:#?}");
        let eig = rows
            .iter()
            .find(|r| r.check == "eigentime_identity" && r.n == 7)
            .unwrap();
        assert!((eig.value.unwrap() - 1.3846153).abs() < 1e-6);
    }

    #[test]
    fn cycle_only_run() {
        let rows = run(5, VerifyOptions::default()).unwrap();
        assert!(rows.iter().all(|r| r.n == 5 && r.passed()));
    }

    #[test]
    fn rejects_bad_bound() {
        assert!(run(6, VerifyOptions::default()).is_err());
    }

    #[test]
    fn zero_tolerance_fails_float_rows() {
        let rows = run(
            7,
            VerifyOptions {
                oracle_tolerance: 0.0,
            },
        )
        .unwrap();
        assert!(rows
            .iter()
            .any(|r| r.check == "resistance_triple_oracle" && !r.passed()));
    }
}
