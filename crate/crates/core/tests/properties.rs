mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn norm_is_injective_on_reduced_tuples(x in norm_injectivity()) {
        check_norm_injectivity(x)?;
    }

    #[test]
    fn sumset_is_downward_closed(x in downward_closure()) {
        check_downward_closure(x)?;
    }

    #[test]
    fn colex_is_a_translation_invariant_total_order(x in colex_laws()) {
        check_colex_laws(x)?;
    }

    #[test]
    fn valuation_is_multiplicative(x in valuation_pair()) {
        check_valuation_multiplicativity(x)?;
    }

    #[test]
    fn reduction_is_idempotent_and_products_agree(x in reduce_inputs()) {
        check_reduce(x)?;
    }

    #[test]
    fn relation_initial_terms_have_a_partner(x in initial_shape()) {
        check_initial_shape_prop(x)?;
    }

    #[test]
    fn survivors_biject_onto_norm_classes(x in phi_inputs()) {
        check_phi_bijective(x)?;
    }
}
