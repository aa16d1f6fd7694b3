//! Words, presentations and coset enumeration; first cohomology and the
//! complements it classifies.

mod brute;
mod cocycle;
mod presentation;
mod todd_coxeter;
mod word;

pub use brute::{brute_force_complements, BruteForceComplements};
pub use cocycle::{
    cocycle_space, complement_orbit_census, complement_representatives, distinct_classes,
    CocycleSpace, CohomError, Complement, OrbitCensus,
};
pub use presentation::{
    verify_presentation, verify_presentation_with, Certificate, CertifiedPresentation,
    Presentation, PresentationError, TRIVIAL_SUBGROUP_LIMIT,
};
pub use todd_coxeter::{todd_coxeter, EnumerationError, DEFAULT_MAX_ROWS};
pub use word::{Letter, Word, WordError};
