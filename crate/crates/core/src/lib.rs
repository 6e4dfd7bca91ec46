//! Exact computations for intermediate β-transformations and their symbolic
//! shifts: kneading invariants, finite-type classification, transitivity
//! regions and the algebraic properties of β.

pub mod constructions;
pub mod dynamics;
pub mod exactnum;
pub mod scan;
pub mod shifts;
pub mod spectra;
pub mod transitivity;
pub mod words;

pub use constructions::{family_params, xi_word, FamilyIndex, FamilyReport};
pub use dynamics::{
    kneading_pair, project, tau_expansion, Boundary, DynamicsError, Expansion, KneadingResult, Params, Status, Variant,
    DEFAULT_MAX_ITER,
};
pub use exactnum::{AlgebraicReal, ExactError, Field, FieldElement, IntPoly, RatPoly, RationalInterval, Sign};
pub use shifts::{classify, classify_extended, Classification, KneadingSpec, ShiftError, Space, Verdict};
pub use spectra::{PerronVerdict, PisotVerdict, SpectraError};
pub use transitivity::{transitivity_verdict, RegionId, TransitivityVerdict};
pub use words::{EPWord, FiniteWord, WordError};
