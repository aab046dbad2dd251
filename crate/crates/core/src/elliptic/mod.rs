//! Elliptic curves in short Weierstrass form over prime fields.
mod cm;
mod curve;
mod isogeny;
mod order;

pub use cm::{auxiliary_prime, curve_from_j, curve_with_order, smallest_root, supersingular_curve, supersingular_curve_cached};
pub use curve::{is_isomorphic, is_kth_power, EllipticCurve, Point};
pub use isogeny::{
    count_rank_ell_subgroups, is_minimal, is_ordinary, kernel_roots, make_minimal, make_minimal_traced, quotient,
    quotient_by_2_torsion, quotient_by_3_torsion, quotients_by_j, Descent,
};
pub use order::{
    certify_order, certify_order_with_budget, ec_order, in_hasse_interval, naive_order, point_order_from_multiple,
    point_order_with_factors, trace_zero_check, verify_order_certificate, Certification, OrderCertificate, BSGS_BOUND,
    CERTIFY_POINTS, NAIVE_COUNT_BOUND,
};
