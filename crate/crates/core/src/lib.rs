//! Generated t-norms and t-conorms, fuzzy negations, residual operators and
//! the generated implication families `I^g` and `I^g_N`, plus a
//! sampling-based engine that checks their axioms and properties.
//!
//! Everything is generic over the scalar type (`f32` or `f64`); the
//! `*64` / `*32` aliases below fix it.
//!
//! ```
//! use genimp::{ImplicationCandidate, Property, SampleSpec, check_property};
//!
//! let i = ImplicationCandidate::<f64>::yager_residual(2.0).unwrap();
//! assert!((i.eval(0.5, 0.2) - 0.3755).abs() < 1e-4);
//! let report = check_property(&i, &Property::NP, &SampleSpec::default());
//! assert!(report.holds());
//! ```

pub mod classes;
pub mod config;
pub mod connectives;
pub mod error;
pub mod generators;
pub mod implications;
pub mod interp;
pub mod properties;
pub mod scalar;
pub mod surface;

pub use classes::{
    build_intersection_member, check_self_dual_phi, conjugate_lk_probe, r_probe, sn_probe, ClassId,
    ClassProbeResult, Membership,
};
pub use connectives::{
    archimedean_witness, basic_tnorm, dual_of, generated_tconorm, generated_tnorm, n_ary_power,
    quasi_arithmetic_mean, yager_tnorm, BasicTNorm, BinaryConnective, ConnectiveOrigin, Negation,
};
pub use error::{Error, Result};
pub use generators::{
    eval_generator, pseudo_inverse, verify_generator, Direction, ExtendedNonNegative, Generator, InverseForm,
};
pub use implications::{
    ig_implication, ign_implication, lukasiewicz_implication, mean_residual, natural_negation,
    phi_conjugate, piecewise_f_implication, residual_numeric, residual_numeric_detailed, sn_implication,
    yager_residual, Bijection, ImplicationCandidate, ImplicationOrigin, ResidualEval,
};
pub use properties::{
    check_implication_axioms, check_property, check_tnorm_axioms, compare_surfaces,
    find_associativity_counterexample, probe_continuity, probe_right_continuity, probe_surface_continuity,
    BinaryOperator, Property, PropertyReport, ReportSet, SampleSpec, SurfaceComparison, Verdict, Witness,
};
pub use scalar::Scalar;
pub use surface::SurfaceGrid;

pub type Generator64 = Generator<f64>;
pub type Extended64 = ExtendedNonNegative<f64>;
pub type Connective64 = BinaryConnective<f64>;
pub type Negation64 = Negation<f64>;
pub type Bijection64 = Bijection<f64>;
pub type Implication64 = ImplicationCandidate<f64>;
pub type Report64 = PropertyReport<f64>;
pub type Surface64 = SurfaceGrid<f64>;

pub type Generator32 = Generator<f32>;
pub type Extended32 = ExtendedNonNegative<f32>;
pub type Connective32 = BinaryConnective<f32>;
pub type Negation32 = Negation<f32>;
pub type Bijection32 = Bijection<f32>;
pub type Implication32 = ImplicationCandidate<f32>;
pub type Report32 = PropertyReport<f32>;
pub type Surface32 = SurfaceGrid<f32>;
