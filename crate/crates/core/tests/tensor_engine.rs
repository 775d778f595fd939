mod common;

use common::{check_engine_against_oracle, one_spider_wire};
use zxdb_core::circuit::{circuit_to_diagram, gen_random_circuit, gen_rule_instance};
use zxdb_core::diagram::{to_graph_like, Diagram, EdgeKind, NodeKind};
use zxdb_core::verify::diagram_to_operator;
use zxdb_core::{Phase, RuleId};

#[test]
fn single_spiders_match_oracle() {
    for kind in [NodeKind::Z, NodeKind::X] {
        for k in 0..8 {
            let p = Phase::exact(k, 4);
            assert!(check_engine_against_oracle(&one_spider_wire(kind, p)));
            let mut d = Diagram::new();
            d.add_spider(kind, p).unwrap();
            assert!(check_engine_against_oracle(&d));
        }
    }
}

#[test]
fn multi_leg_spiders_match_oracle() {
    for kind in [NodeKind::Z, NodeKind::X] {
        for legs in 0..4 {
            let mut d = Diagram::new();
            let s = d.add_spider(kind, Phase::from_radians(0.7)).unwrap();
            for j in 0..legs {
                let b = if j % 2 == 0 { d.add_input() } else { d.add_output() };
                let e = if j == 1 { EdgeKind::Hadamard } else { EdgeKind::Simple };
                d.connect(b, s, e).unwrap();
            }
            assert!(check_engine_against_oracle(&d));
        }
    }
}

#[test]
fn rule_instances_match_oracle() {
    let mut checked = 0;
    for rule in RuleId::ALL {
        for seed in 0..10 {
            let d = gen_rule_instance(rule, 1, seed).unwrap();
            if check_engine_against_oracle(&d) {
                checked += 1;
            }
        }
    }
    assert!(checked >= 40, "oracle only covered {checked} instances");
}

#[test]
fn small_circuits_match_oracle() {
    let mut checked = 0;
    for seed in 0..30 {
        let c = gen_random_circuit(2, 3, seed).unwrap();
        let d = circuit_to_diagram(&c);
        if check_engine_against_oracle(&d) {
            checked += 1;
        }
        if check_engine_against_oracle(&to_graph_like(&d)) {
            checked += 1;
        }
    }
    assert!(checked >= 30, "oracle only covered {checked} diagrams");
}

#[test]
fn single_and_double_precision_agree() {
    for seed in 0..10 {
        let d = circuit_to_diagram(&gen_random_circuit(3, 12, seed).unwrap());
        let a = diagram_to_operator::<f64>(&d).unwrap();
        let b = diagram_to_operator::<f32>(&d).unwrap().to_f64();
        let scale = a.max_abs();
        for (x, y) in a.data().iter().zip(b.data()) {
            assert!((x - y).norm() <= 1e-4 * scale);
        }
    }
}
