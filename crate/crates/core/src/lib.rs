//! Fiberwise coverings of circle bundles over 3-manifolds and Engel
//! structures tangent to the fibers, computed exactly on simplicial bases.
//!
//! The integer layer is generic over [`intlinalg::IntScalar`] and the numeric
//! layer over [`engel_numeric::Real`]; the aliases below fix the scalar types
//! used everywhere else.

pub mod bundles;
pub mod complex;
pub mod coverings;
pub mod engel;
pub mod engel_numeric;
pub mod error;
pub mod format;
pub mod intlinalg;

pub use bundles::{bundles_isomorphic, prolongation_euler, unit_sphere_euler, CircleBundle, ContactLabel};
pub use complex::{coordinate_loops, seam_cocycle, Chain, Cochain, CohomologyClass, CohomologyGroup, SimplicialComplex};
pub use coverings::{
    act, distance_on_loop, exists_covering, homotopic, horizontal_distance, isomorphic, torus_model_covering,
    FiberwiseCovering,
};
pub use engel::{
    act_engel, act_oriented, enumerate_trivial_bundle, eng_nonempty, eng_oriented_nonempty, is_orientable_class,
    isotopic, make_engel_class, make_oriented_engel_class, twist, two_torsion_euler_classes, EngelClass,
    OrientedWitness,
};
pub use engel_numeric::{development_winding, TorusEngelParams};
pub use error::Error;
pub use intlinalg::{smith_normal_form, solve_integer, IntMatrix};

/// Exact integer scalar of the topology layers.
pub type Int = num_bigint::BigInt;
/// Smith decomposition over [`Int`].
pub type SmithDecomposition = intlinalg::SmithDecomposition<Int>;
/// Real scalar of the numeric layer.
pub type Real = f64;
pub type Point4 = engel_numeric::Point4<Real>;
pub type EngelFrame = engel_numeric::EngelFrame<Real>;
pub type EngelReport = engel_numeric::EngelReport<Real>;

pub fn verify_engel(params: &TorusEngelParams, sample_count: usize, seed: u64) -> Result<EngelReport, Error> {
    engel_numeric::verify_engel::<Real>(params, sample_count, seed)
}

pub fn twist_numeric(params: &TorusEngelParams, other: &TorusEngelParams, loop_index: usize, samples: usize) -> Result<i64, Error> {
    engel_numeric::twist_numeric::<Real>(params, other, loop_index, samples)
}
