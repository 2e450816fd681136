//! Property suites: ring axioms of the scalars, rank/kernel consistency, normal forms of the
//! lifting presentations, and independence of the braid-group action from the reduced word.

mod common;

use common::*;
use proptest::prelude::*;
use proptest::test_runner::Config;

proptest! {
    #![proptest_config(Config { cases: CASES, ..Config::default() })]

    #[test]
    fn scalar_ring_axioms(case in ring_strategy()) {
        ring_axioms(case)?;
    }

    #[test]
    fn rank_and_kernel_agree(case in matrix_strategy()) {
        rank_and_kernel(case)?;
    }

    #[test]
    fn normal_forms_are_idempotent_and_confluent(case in word_strategy()) {
        normal_forms(case)?;
    }

    #[test]
    fn braid_action_is_independent_of_reduced_word(case in braid_strategy()) {
        matsumoto_independence(case)?;
    }
}
