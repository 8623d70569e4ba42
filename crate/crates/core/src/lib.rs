//! Exact intersection theory on toric varieties given by fans.
//!
//! Fans, divisors and curve classes are handled with arbitrary-precision
//! integers and rationals throughout; nothing here uses floating point.

pub mod constructions;
pub mod divisor;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod mori;
pub mod polyhedral;
pub mod simplex;

pub use constructions::{
    cube_fan, distinguished_wall, fano_rho_one, hirzebruch, non_projective_fan,
    normalize_weights, product, projective_space, qfactorialize, random_coarsening,
    random_complete_fan, random_fano_rho_one, FanoRhoOne, QFactorialization, SubdividedCone,
    WeightedProjective,
};
pub use divisor::{
    canonical_divisor, crepant_boundary, is_ample, is_cartier, is_nef, is_q_cartier,
    principal_divisor, pullback, q_cartier_basis, q_cartier_data, CartierData, CrepantBoundary,
    ToricDivisor,
};
pub use error::{Error, Result};
pub use fan::{
    is_lattice_isomorphic, lattice_isomorphism, validate_fan, Cone, Fan, ProjectivityCertificate,
    Violation, Wall,
};
pub use lattice::{Integer, IntegerMatrix, LatticeVector, Rational};
pub use mori::{
    cone_theorem_check, contract, curve_class, find_short_wall, fujita_check, intersect,
    intersect_cartier, mori_cone, wall_relation, ConeTheoremReport, CurveClass, ExtremalRay,
    FujitaMode, FujitaReport, MoriConeReport, NegativeRay, ShortWall, WallRelation,
};
pub use constructions::weighted_projective;
