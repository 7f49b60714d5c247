//! Apolar ideals, Artinian Gorenstein quotients, apolar point sets and the
//! Fermat decision procedure.

pub mod fermat;
pub mod gorenstein;
pub mod ideal;
pub mod points;
pub mod univariate;

pub use fermat::{
    detect_fermat, FermatDecomposition, FermatVerdict, NotFermatWitness, QuadricLocus,
};
pub use gorenstein::{dual_socle_generator, ArtinianGorenstein};
pub use ideal::{
    fermat_perp, hilbert_function, perp, waring_rank_lower_bound, ApolarIdeal, GradedIdeal,
};
pub use points::{
    evaluation_matrix, expand_decomposition, ideal_of_points, is_apolar_scheme, waring_from_points,
    ApolarityCertificate,
};
pub use univariate::{characteristic_polynomial, minimal_polynomial, UniPoly};
