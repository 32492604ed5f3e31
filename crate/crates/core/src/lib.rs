//! Exact two-point resistance, Kirchhoff index and random-walk hitting times
//! on the complete graph minus its N diameter edges, with spectral, Markov
//! and Monte Carlo cross-checks on general circulant graphs.
//!
//! Exact values are [`Rational`]s built from the Bejaia and Pisa sequences
//! (see [`exact`]); every closed form has an independent floating-point or
//! linear-algebra route next to it.

pub mod circulant;
pub mod error;
pub mod exact;
mod radical;
pub mod resistance;
pub mod spectral;
pub mod verify;
pub mod walk;

pub use circulant::{CirculantGraph, DenseLaplacian};
pub use error::{Error, Result};
pub use exact::{fraction_string, rational_to_f64, QuadElem, Rational, SequenceContext};
pub use resistance::{
    eigentime_identity, half_sums, radical_resistance, resistance_report,
    total_effective_resistance, two_point_resistance, EigentimeCheck, HalfSums, ResistanceReport,
};
pub use spectral::{circulant_spectrum, wu_resistance, EigenSpectrum, SeriesReport};
pub use walk::{
    commute_time, hitting_time, markov_hitting_times, mean_first_passage, simulate_fpt,
    FptEstimate, HittingTimes, MfptVariant, WalkConfig,
};
