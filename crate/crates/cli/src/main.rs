mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use bejaia_core::exact::fraction_string;
use bejaia_core::resistance::{eigentime_closed, total_resistance_by_pairs};
use bejaia_core::verify::{self, VerifyOptions};
use bejaia_core::walk::FLOAT_SOLVE_CAP;
use bejaia_core::{
    circulant_spectrum, commute_time, hitting_time, markov_hitting_times, mean_first_passage,
    rational_to_f64, resistance_report, simulate_fpt, total_effective_resistance,
    two_point_resistance, CirculantGraph, EigenSpectrum, MfptVariant, Rational, SequenceContext,
    WalkConfig,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use output::{float_string, Format, OutputRecord};

const EXIT_DOMAIN: u8 = 2;
const EXIT_ORACLE: u8 = 3;
const Z_LIMIT: f64 = 4.0;

/// Exact resistances and walk times on the complete graph minus a perfect
/// set of long chords, with independent oracles.
#[derive(Parser, Debug)]
#[command(name = "bejaia", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Relative tolerance for oracle comparisons. Only affects the exit
    /// code, never the printed values.
    #[arg(long, default_value_t = 1e-9, global = true)]
    tolerance: f64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Two-point resistance between vertices 0 and l.
    Resistance {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
    },
    /// Expected first-passage time from vertex 0 to vertex l.
    Fpt {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        /// Report the commute time 0 → l → 0 instead.
        #[arg(long)]
        commute: bool,
    },
    /// Mean first-passage time averaged over targets.
    Mfpt {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Variant::Corrected)]
        variant: Variant,
    },
    /// Total effective resistance (Kirchhoff index).
    Total {
        #[arg(long)]
        n: u64,
    },
    /// Leading terms of the Bejaia or Pisa sequence for N.
    Sequence {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Monte Carlo estimate of the first-passage time 0 → l.
    Simulate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the invariant suite for every odd N from 5 to n-max.
    Verify {
        #[arg(long)]
        n_max: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Corrected,
    Paper,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Bejaia,
    Pisa,
}

fn rel(a: f64, b: f64) -> f64 {
    let dev = ((a - b) / b).abs();
    if dev.is_nan() {
        f64::INFINITY
    } else {
        dev
    }
}

fn with_exact(mut record: OutputRecord, exact: &Rational) -> OutputRecord {
    record.exact = Some(fraction_string(exact));
    record.float = Some(float_string(rational_to_f64(exact)));
    record
}

fn spectrum(n: u64) -> bejaia_core::Result<EigenSpectrum> {
    Ok(circulant_spectrum(
        &CirculantGraph::complete_minus_diameters(n as usize)?,
    ))
}

/// Hitting times of vertex 0 from every vertex, or `None` past the solver cap.
fn markov(n: u64) -> bejaia_core::Result<Option<Vec<f64>>> {
    if n as usize > FLOAT_SOLVE_CAP {
        return Ok(None);
    }
    let g = CirculantGraph::complete_minus_diameters(n as usize)?;
    Ok(Some(markov_hitting_times(&g, 0)?.to_f64()))
}

fn skipped_markov(record: &mut OutputRecord) {
    record.notes.push(format!(
        "markov oracle skipped above {FLOAT_SOLVE_CAP} vertices"
    ));
}

fn cmd_resistance(n: u64, l: u64, tol: f64) -> bejaia_core::Result<OutputRecord> {
    let report = resistance_report(n, l)?;
    let exact = rational_to_f64(&report.exact);
    let mut record = with_exact(
        OutputRecord::new("resistance").input("n", n).input("l", l),
        &report.exact,
    );
    record.oracle("radical", rel(report.float_closed, exact), tol);
    record.oracle("spectral", rel(report.spectral, exact), tol);
    Ok(record)
}

fn cmd_fpt(n: u64, l: u64, commute: bool, tol: f64) -> bejaia_core::Result<OutputRecord> {
    let hit = hitting_time(n, l)?;
    let value = if commute {
        commute_time(n, l)?
    } else {
        hit.clone()
    };
    let mut record = OutputRecord::new("fpt").input("n", n).input("l", l);
    if commute {
        record = record.input("commute", true);
    }
    let mut record = with_exact(record, &value);
    let scale = if commute { 2.0 } else { 1.0 };

    // |E|·R(l) with R from the spectrum.
    let g = CirculantGraph::complete_minus_diameters(n as usize)?;
    let wu = bejaia_core::wu_resistance(&g, l as usize)?;
    let edges = g.edge_count() as f64;
    record.oracle(
        "spectral",
        rel(scale * edges * wu, rational_to_f64(&value)),
        tol,
    );

    // By symmetry the time from l to 0 equals the time from 0 to l.
    match markov(n)? {
        Some(h) => record.oracle(
            "markov",
            rel(scale * h[l as usize], rational_to_f64(&value)),
            tol,
        ),
        None => skipped_markov(&mut record),
    }
    if commute {
        record.extra("hitting_time", fraction_string(&hit));
    }
    Ok(record)
}

fn cmd_mfpt(n: u64, variant: Variant, tol: f64) -> bejaia_core::Result<OutputRecord> {
    let (core_variant, prefactor, label) = match variant {
        Variant::Corrected => (MfptVariant::Corrected, n - 3, "corrected"),
        Variant::Paper => (MfptVariant::Printed, n - 1, "paper"),
    };
    let value = mean_first_passage(n, core_variant)?;
    let float = rational_to_f64(&value);
    let mut record = with_exact(
        OutputRecord::new("mfpt")
            .input("n", n)
            .input("variant", label),
        &value,
    );

    let eigentime = spectrum(n)?.reciprocal_sum();
    record.oracle("spectral", rel(prefactor as f64 * eigentime, float), tol);
    match variant {
        Variant::Corrected => match markov(n)? {
            Some(h) => {
                let average = h.iter().sum::<f64>() / n as f64;
                record.oracle("markov", rel(average, float), tol);
            }
            None => skipped_markov(&mut record),
        },
        Variant::Paper => {
            let corrected = mean_first_passage(n, MfptVariant::Corrected)?;
            record.extra("corrected_exact", fraction_string(&corrected));
            record.extra("eigentime", fraction_string(&eigentime_closed(n)?));
            let ratio = &value / &corrected;
            record.notes.push(format!(
                "erratum: the printed prefactor N-1 = {} is not the degree N-3 = {} of the graph; \
                 this value is {} times the true mean first-passage time {}",
                n - 1,
                n - 3,
                fraction_string(&ratio),
                fraction_string(&corrected)
            ));
        }
    }
    Ok(record)
}

fn cmd_total(n: u64, tol: f64) -> bejaia_core::Result<OutputRecord> {
    let value = total_effective_resistance(n)?;
    let float = rational_to_f64(&value);
    let mut record = with_exact(OutputRecord::new("total").input("n", n), &value);
    let pairs = total_resistance_by_pairs(n)?;
    record.oracle("pairwise_sum", rel(rational_to_f64(&pairs), float), tol);
    record.oracle(
        "spectral",
        rel(n as f64 * spectrum(n)?.reciprocal_sum(), float),
        tol,
    );
    Ok(record)
}

fn cmd_sequence(n: u64, kind: Kind, count: u64) -> bejaia_core::Result<OutputRecord> {
    let ctx = SequenceContext::new(n)?;
    let (label, terms) = match kind {
        Kind::Bejaia => ("bejaia", ctx.bejaia_terms(count as usize)),
        Kind::Pisa => ("pisa", ctx.pisa_terms(count as usize)),
    };
    let mut record = OutputRecord::new("sequence")
        .input("n", n)
        .input("kind", label)
        .input("count", count);
    let (b, p) = ctx.binet_pair(count - 1);
    let last = terms.last().expect("count ≥ 1");
    let binet = match kind {
        Kind::Bejaia => b,
        Kind::Pisa => p,
    };
    record.oracle("binet", if *last == binet { 0.0 } else { 1.0 }, 0.0);
    let terms: Vec<Value> = terms.iter().map(|t| Value::String(t.to_string())).collect();
    record.extra("terms", terms);
    Ok(record)
}

fn cmd_simulate(n: u64, l: u64, trials: u64, seed: u64) -> bejaia_core::Result<OutputRecord> {
    let exact = hitting_time(n, l)?;
    let g = CirculantGraph::complete_minus_diameters(n as usize)?;
    let cfg = WalkConfig::for_order(n as usize, trials, seed)?;
    let est = simulate_fpt(&g, 0, l as usize, &cfg)?;
    let target = rational_to_f64(&exact);
    let z = est.z_score(target);

    let mut record = with_exact(
        OutputRecord::new("simulate")
            .input("n", n)
            .input("l", l)
            .input("trials", trials)
            .input("seed", seed),
        &exact,
    );
    record.extra("mean", float_string(est.mean));
    record.extra("stderr", float_string(est.stderr));
    record.extra("z", float_string(z));
    record.extra("truncated", est.truncated);
    record
        .oracle_devs
        .insert("monte_carlo", rel(est.mean, target));
    if est.truncated > 0 {
        record.passed = false;
        record.notes.push(format!(
            "{} walks hit the {}-step cap",
            est.truncated, cfg.max_steps
        ));
    }
    if z.is_nan() || z.abs() > Z_LIMIT {
        record.passed = false;
    }
    Ok(record)
}

fn cmd_verify(n_max: u64, tol: f64) -> bejaia_core::Result<OutputRecord> {
    let rows = verify::run(
        n_max,
        VerifyOptions {
            oracle_tolerance: tol,
        },
    )?;
    let mut record = OutputRecord::new("verify").input("n_max", n_max);
    let failed = rows.iter().filter(|r| !r.passed()).count();
    let table: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "check": r.check,
                "n": r.n,
                "max_dev": r.max_dev,
                "tolerance": r.tolerance,
                "value": r.value,
                "status": if r.passed() { "pass" } else { "FAIL" },
            })
        })
        .collect();
    record.passed = failed == 0;
    record.extra("checks", rows.len());
    record.extra("failed", failed);
    record.extra("rows", table);
    Ok(record)
}

fn run(cli: &Cli) -> bejaia_core::Result<OutputRecord> {
    let tol = cli.tolerance;
    match cli.command {
        Command::Resistance { n, l } => cmd_resistance(n, l, tol),
        Command::Fpt { n, l, commute } => cmd_fpt(n, l, commute, tol),
        Command::Mfpt { n, variant } => cmd_mfpt(n, variant, tol),
        Command::Total { n } => cmd_total(n, tol),
        Command::Sequence { n, kind, count } => cmd_sequence(n, kind, count),
        Command::Simulate { n, l, trials, seed } => cmd_simulate(n, l, trials, seed),
        Command::Verify { n_max } => cmd_verify(n_max, tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.tolerance.is_nan() || cli.tolerance < 0.0 {
        eprintln!("error: --tolerance must be a non-negative number");
        return ExitCode::from(EXIT_DOMAIN);
    }
    // The exact value is validated before any oracle work, so a bad N or l
    // fails fast.
    if let Command::Resistance { n, l } | Command::Fpt { n, l, .. } = cli.command {
        if let Err(e) = two_point_resistance(n, l) {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    }
    let record = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    let text = record.render(cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_DOMAIN);
            }
        }
        None => print!("{text}"),
    }
    if record.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_ORACLE)
    }
}
