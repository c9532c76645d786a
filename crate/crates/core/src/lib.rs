//! Certified lower bounds for multi-point Seshadri constants on blowups of
//! a surface at general points.
//!
//! The crate enumerates the finite sets of curve classes that could make a
//! test divisor fail to be nef, kills them with asserted lower bounds on the
//! degrees of curves with prescribed multiplicities, and turns the survivors'
//! absence into exact rational lower bounds. All arithmetic is exact.
//!
//! ```
//! use seshadri::{cor13_bound, Rational};
//!
//! let b = cor13_bound(16).unwrap();
//! assert_eq!(b.epsilon_lower_sq, Rational::frac(335, 5376));
//! ```

pub mod bounds;
pub mod certificates;
pub mod enumerate;
pub mod error;
pub mod exactnum;
pub mod report;
pub mod surface;

pub use bounds::{
    ah_condition, ample_check, bound_thm_a, bound_thm_b, cor13_bound, exact_rank1, AmpleVerdict, Ampleness,
    AuditEntry, BoundResult, Method,
};
pub use certificates::{
    builtin_ccmo, builtin_doublepoint, builtin_hr, check_hypotheses, load_certificates, parse_certificates,
    AlphaCertificate, AlphaKind, Certificate, CertificateStore, HypothesisReport, Pattern, Provenance, Theorem,
};
pub use enumerate::{
    enumerate_general, enumerate_homogeneous, enumerate_homogeneous_with, next_threshold, o_values,
    parity_filter, CandidateSet, EnumCap, EnumOptions, Threshold,
};
pub use error::{Error, Result};
pub use exactnum::{cmp_sq, isqrt_floor, Rational};
pub use surface::{
    f_delta_pairing, nef_threshold_upper, CandidateClass, EnumParams, GeneralCandidate, Mode, SurfaceData,
    WeightVector,
};
