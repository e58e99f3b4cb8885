//! Graded homological algebra over truncated quotients of polynomial rings.

pub mod complex;
pub mod complexity;
pub mod construction;
pub mod depth_formula;
pub mod error;
pub mod ext;
pub mod field;
pub mod format;
pub mod free;
pub mod linalg;
pub mod module;
pub mod periodicity;
pub mod poly;
pub mod reduction;
pub mod report;
pub mod resolution;
pub mod ring;
pub mod sparse;
pub mod tor;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField};
pub use linalg::{coset_complement, EchelonSpace, Matrix, Rref};
pub use poly::{Monomial, Polynomial};
pub use ring::{algebra_tensor, polynomial_extension, PolyRing, QuotientRing, RingElem};
pub use free::{FreeElem, FreeMap, FreeModule, RingRef};
pub use module::{verify_short_exact, GradedModule, ModuleMap};
pub use resolution::{depth, depth_of_ring, minimal_free_resolution, syzygy, BettiTable, DepthMethod, DepthReport, FreeResolution};
pub use complex::{cone, cone_induced, induced_map, tensor_complexes, tensor_into, tensor_many, tensor_ring, ChainMap, FreeComplex, Label};
pub use periodicity::{detect_complex_periodicity, detect_resolution_periodicity, Attempt, Infeasibility, PeriodicityCertificate, PeriodicityReport};
pub use complexity::{estimate_complexity, module_complexity, Complexity, ComplexityEstimate, ComplexityStatus, ModuleComplexity};
pub use tor::{max_nonvanishing_tor, tor, tor_as_module, TorProfile, TorRigor};
pub use ext::{ext_basis, ext_dims, ExtBasis, ExtClass};
pub use reduction::{depth_lemma_check, pushout_k_eta, reduction_search, DepthLemmaReport, Pushout, RedDeg, ReductionSequence, ReductionStep, ReductionStrategy};
pub use depth_formula::{check_depth_formula, DepthFormulaOptions, DepthFormulaReport, FormulaCase};
pub use construction::{check_ses, corollary_module, run_construction, CertifiedFactor, CiVerdict, ConeStage, ConstructionResult, CorollaryModule, Factor, SesReport};
pub use report::Report;
