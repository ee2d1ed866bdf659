//! Exact spectra of S(k, q) and the quantities used to analyse them.
//!
//! Each eigenvalue λ_w is computed in ℤ[ζ_p] from the character sum over the
//! connection set; a dense eigensolver on the realised graph serves as an
//! independent oracle for small instances.

mod analysis;
mod cheeger;
mod dense;
mod sweep;
mod verify;

pub use analysis::{
    analyze_w, check_lemma51_hypothesis, connectivity_rank, is_decreasing, is_ramanujan,
    lemma51_check, lemma51_sweep, ramanujan_values, rank, remark1_witness, second_eigenvalue,
    uniform_bound, Analyzer, ConnectivityReport, Remark1, SecondEigenvalue, SweepCheck,
    UniformBound, WAnalysis,
};
pub use cheeger::{cheeger_exact, CheegerResult, Ratio, CHEEGER_CAP};
pub use dense::{spectrum_dense, DENSE_CAP};
pub use sweep::{
    eigenvalue_at, spectrum_formula, CharacterTable, Spectrum, SpectrumEntry, SweepOptions,
};
pub use verify::{
    check_cubic_field, classify_cubic, cover_check, remark2_bound, remark3_scan, verify_theorem3,
    verify_theorem4, CoverReport, CubicReport, Remark2Report, Remark3Row, TheoremReport, Verdict,
    VerdictKind,
};
