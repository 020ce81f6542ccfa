//! Standalone property target; the same suites also run inside the
//! acceptance gate.

mod common;

use common::props;

#[test]
fn ord_type_is_multiplicative() {
    props::ord_type_multiplicative();
}

#[test]
fn newton_polygon_product_theorem() {
    props::polygon_product_theorem();
}

#[test]
fn resultant_identity_per_level() {
    props::resultant_identity();
}

#[test]
fn okutsu_frame_inequality() {
    props::okutsu_frame_inequality();
}

#[test]
fn delta0_bound_with_equality_cases() {
    props::delta0_bound();
}

#[test]
fn disc_decomposition_exact_at_delta_plus_one() {
    props::disc_decomposition_exact();
}

#[test]
fn ff_factor_recomposition_and_certificates() {
    props::ff_factor_certified();
}
