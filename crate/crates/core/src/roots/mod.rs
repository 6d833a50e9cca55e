//! Exact real-root isolation and certification of the zero locus of the
//! Hecke polynomials: endpoint roots, simplicity, containment in [0, 1728],
//! angle recovery on the unit arc, and equidistribution statistics.

mod angle;
mod equidist;
mod sturm;
mod theorem2;

pub use angle::{angle_of_root, real_to_rational, ArcEvaluator};
pub use equidist::{
    equidistribution, roots_of_hecke_poly, star_discrepancy, EquidistReport, RootRecord,
};
pub use sturm::{
    is_squarefree, poly_gcd, refine_root, sturm_isolate, IsolatingInterval, SturmChain,
};
pub use theorem2::{
    endpoint_factor, interior_quotient, predicted_cells, verify_theorem2, verify_theorem2_poly,
    Theorem2Certificate,
};
