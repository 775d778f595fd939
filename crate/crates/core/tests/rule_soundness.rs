mod common;

use common::{fits, tensor_equal};
use zxdb_core::circuit::{circuit_to_diagram, gen_random_circuit, gen_rule_instance};
use zxdb_core::rules::{apply, find_matches};
use zxdb_core::scheduler::{run_pipeline, run_to_fixpoint, DEFAULT_SCHEDULE};
use zxdb_core::RuleId;

const TOL: f64 = 1e-8;

#[test]
fn every_single_application_is_sound() {
    for rule in RuleId::ALL {
        for seed in 0..40 {
            let before = gen_rule_instance(rule, 1, seed).unwrap();
            let ms = find_matches(rule, &before).unwrap();
            assert!(!ms.is_empty(), "{rule} seed {seed}: no match");
            for m in &ms {
                let mut after = before.clone();
                apply(&mut after, m).unwrap();
                after.validate().unwrap();
                assert!(tensor_equal(&before, &after, TOL), "{rule} seed {seed}: {m:?}");
            }
        }
    }
}

#[test]
fn fixpoints_are_sound() {
    for rule in RuleId::ALL {
        let mut checked = 0;
        for seed in 0..15 {
            let before = gen_rule_instance(rule, 2, seed).unwrap();
            if !fits(&before) {
                continue;
            }
            checked += 1;
            let mut after = before.clone();
            let reports = run_to_fixpoint(&mut after, rule, 100).unwrap();
            assert!(reports.iter().all(|r| !r.budget_exhausted));
            assert!(find_matches(rule, &after).unwrap().is_empty());
            assert!(tensor_equal(&before, &after, TOL), "{rule} seed {seed}");
        }
        assert!(checked >= 5, "{rule}: only {checked} instances fit");
    }
}

#[test]
fn pipeline_on_circuits_is_sound() {
    for seed in 0..40 {
        let c = gen_random_circuit(2 + (seed as usize % 3), 20, seed).unwrap();
        let before = circuit_to_diagram(&c);
        let mut after = before.clone();
        run_pipeline(&mut after, &DEFAULT_SCHEDULE, 100).unwrap();
        after.validate().unwrap();
        assert!(tensor_equal(&before, &after, TOL), "seed {seed}");
        assert!(after.num_nodes() <= before.num_nodes() + 2 * c.num_qubits());
    }
}

#[test]
fn bialgebra_composes_with_fusion() {
    for seed in 0..15 {
        let before = gen_rule_instance(RuleId::Bialgebra, 2, seed).unwrap();
        let mut after = before.clone();
        run_to_fixpoint(&mut after, RuleId::Bialgebra, 100).unwrap();
        run_to_fixpoint(&mut after, RuleId::SpiderFusion, 100).unwrap();
        run_to_fixpoint(&mut after, RuleId::IdentityRemoval, 100).unwrap();
        assert!(tensor_equal(&before, &after, TOL), "seed {seed}");
    }
}
