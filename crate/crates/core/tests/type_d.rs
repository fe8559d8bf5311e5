use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use racklab::constructions::{
    affine_rack, conjugation_rack, permutation_rack, sym_class, th_rack, AffineSpec, THRackSpec, Twist,
};
use racklab::perm::{CycleType, Permutation};
use racklab::rack::{pair_closure, FiniteRack, PairClosure, Rack, RackElement};
use racklab::status::TwistKind;
use racklab::type_d::*;

fn p(cycles: &str, n: usize) -> Permutation {
    Permutation::parse_cycles(cycles, n).unwrap()
}

fn assert_valid(gen: &GeneratedCertificate) {
    let verdict = verify_certificate(&gen.rack, &gen.certificate).unwrap();
    assert!(verdict.is_valid(), "{}: {verdict:?}", gen.certificate.rack);
}

fn conj(cycles: &str, n: usize) -> FiniteRack<Permutation> {
    conjugation_rack(sym_class(&p(cycles, n)).unwrap()).unwrap()
}

fn alt5_trivial() -> FiniteRack<racklab::constructions::TupleElement> {
    th_rack(&THRackSpec::new(5, 2, Twist::Identity, p("e", 5)).unwrap(), 100).unwrap()
}

#[test]
fn generator_grid() {
    for (n, t) in [(5, 4), (5, 6), (6, 4), (7, 4)] {
        assert_valid(&gen_id_1(n, t).unwrap());
    }
    for (n, ell, ts) in [
        (5, "(1 2)(3 4)", 3..=5),
        (6, "(1 2)(3 4)", 3..=5),
        (8, "(1 2)(3 4)(5 6)(7 8)", 3..=4),
        (9, "(2 3)(4 5)(6 7)(8 9)", 3..=3),
    ] {
        for t in ts {
            assert_valid(&gen_id_12r(n, &p(ell, n), t).unwrap());
        }
    }
    for (n, ell) in [
        (6, "(1 2)(3 4 5 6)"),
        (7, "(1 2)(3 4 5 6)"),
        (8, "(1 2)(3 4 5 6)"),
        (10, "(1 2)(3 4)(5 6)(7 8 9 10)"),
        (10, "(1 2)(3 4 5 6)"),
    ] {
        assert_valid(&gen_id_124(n, &p(ell, n)).unwrap());
    }
    for (n, ell) in [(8, "(1 2 3 4)(5 6 7 8)"), (9, "(1 2 3 4)(5 6 7 8)"), (10, "(1 2 3 4)(6 7 8 9)")] {
        assert_valid(&gen_id_14(n, &p(ell, n)).unwrap());
    }
    for (n, t) in [(5, 2), (5, 4), (6, 2), (7, 2)] {
        assert_valid(&gen_iota_12(n, t).unwrap());
    }
    for (n, ell, t) in [
        (7, "(3 4)(5 6)", 3),
        (7, "(3 4)(5 6)", 4),
        (7, "(3 4)(5 6)", 5),
        (8, "(3 4)(5 6)", 3),
        (9, "(3 4)(5 6)", 3),
        (10, "(3 4)(5 6)(7 8)(9 10)", 3),
    ] {
        assert_valid(&gen_iota_12r(n, &p(ell, n), t).unwrap());
    }
    assert_valid(&gen_iota_222().unwrap());
    assert_valid(&gen_iota_222_in(7).unwrap());
    assert_valid(&generate(Generator::Iota12r, 7, 2, Some(&p("(3 4)(5 6)", 7))).unwrap());
}

#[test]
fn generator_hypotheses_enforced() {
    assert!(matches!(gen_id_1(5, 3), Err(GeneratorError::Hypothesis { .. })));
    assert!(matches!(gen_id_1(5, 2), Err(GeneratorError::Hypothesis { .. })));
    assert!(matches!(gen_id_12r(5, &p("(1 2 3)", 5), 3), Err(GeneratorError::Hypothesis { .. })));
    assert!(matches!(gen_id_12r(5, &p("(1 2)(3 4)", 5), 2), Err(GeneratorError::Hypothesis { .. })));
    assert!(matches!(gen_id_124(8, &p("(1 2 3 4)(5 6 7 8)", 8)), Err(GeneratorError::Hypothesis { .. })));
    assert!(matches!(gen_id_14(9, &p("(1 2 3 4)", 9)), Err(GeneratorError::Hypothesis { .. })));
    // three 4-cycles make an odd ℓ
    assert!(gen_id_14(12, &p("(1 2 3 4)(5 6 7 8)(9 10 11 12)", 12)).is_err());
    assert!(matches!(gen_iota_12(5, 3), Err(GeneratorError::Hypothesis { .. })));
    assert!(matches!(gen_iota_12r(6, &p("(3 4)(5 6)", 6), 2), Err(GeneratorError::Hypothesis { .. })));
    // ℓ(1 2) = (1 2): a single 2-cycle
    assert!(matches!(gen_iota_12r(7, &p("e", 7), 3), Err(GeneratorError::Hypothesis { .. })));
    assert!(generate(Generator::Iota222, 7, 2, None).is_err());
}

#[test]
fn klein_blocks_have_constant_products() {
    let n = 6;
    let gen = gen_id_12r(n, &p("(1 2)(3 4)", n), 4).unwrap();
    let x = p("(1 2)(3 4)", n);
    let y = p("(1 3)(2 4)", n);
    assert_eq!(gen.certificate.r_block.len(), 64);
    assert!(gen.certificate.r_block.iter().all(|e| e.reversed_product() == x));
    assert!(gen.certificate.s_block.iter().all(|e| e.reversed_product() == y));
}

#[test]
fn sym3_blocks_have_trivial_products() {
    let gen = gen_id_1(5, 4).unwrap();
    let e = p("e", 5);
    for block in [&gen.certificate.r_block, &gen.certificate.s_block] {
        assert_eq!(block.len(), 27);
        assert!(block.iter().all(|x| x.reversed_product() == e));
    }
}

fn small_racks_check<E: RackElement>(rack: &FiniteRack<E>) {
    // r ▷ (r ▷ (r ▷ r)) = r needs r ▷ r = r
    for r in rack.elements() {
        if rack.op(r, r) == *r {
            assert!(!triple_test(rack, r, r), "{r:?}");
        }
    }
    match decide_type_d(rack, DEFAULT_PAIR_BUDGET).unwrap() {
        Decision::TypeD(cert) => {
            assert!(verify_certificate(rack, &cert).unwrap().is_valid());
            // the minimal closure of the witnesses is itself a certificate
            let PairClosure::Disjoint(part) = pair_closure(rack, &cert.r, &cert.s) else {
                panic!("witnesses must close disjointly")
            };
            let planted = TypeDCertificate {
                rack: cert.rack.clone(),
                r_block: part.blocks[0].clone(),
                s_block: part.blocks[1].clone(),
                r: cert.r.clone(),
                s: cert.s.clone(),
            };
            assert!(verify_certificate(rack, &planted).unwrap().is_valid());
            assert!(planted.r_block.is_subset(&cert.r_block) && planted.s_block.is_subset(&cert.s_block));
        }
        Decision::NotTypeD { pairs } => assert_eq!(pairs, (rack.len() * (rack.len() - 1)) as u64),
        Decision::BudgetExhausted { .. } => panic!("budget is ample"),
    }
}

#[test]
fn small_racks_are_consistent() {
    small_racks_check(&alt5_trivial());
    small_racks_check(&conj("(1 2 3 4)", 5));
    small_racks_check(&conj("(1 2 3 4 5)", 5));
    small_racks_check(&conj("(1 2)", 5));
    small_racks_check(&conj("(1 2 3)", 4));
    small_racks_check(&permutation_rack(7).unwrap());
    small_racks_check(&affine_rack(&AffineSpec::new(7, vec![3, 1]).unwrap()).unwrap());
    small_racks_check(&affine_rack(&AffineSpec::new(5, vec![2, 0, 1]).unwrap()).unwrap());
}

#[test]
fn equal_witnesses_in_a_non_quandle() {
    let rack = permutation_rack(7).unwrap();
    assert!((0..7).all(|r| triple_test(&rack, &r, &r)));
    let rack = permutation_rack(3).unwrap();
    assert!((0..3).all(|r| !triple_test(&rack, &r, &r)));
}

#[test]
fn random_candidates_on_a_negative_rack_are_rejected() {
    let rack = alt5_trivial();
    let mut rng = StdRng::seed_from_u64(2024);
    let elements = rack.elements().to_vec();
    for _ in 0..1000 {
        let mut shuffled = elements.clone();
        shuffled.shuffle(&mut rng);
        let a = rng.gen_range(1..30);
        let b = rng.gen_range(1..=30);
        let r_block: BTreeSet<_> = shuffled[..a].iter().cloned().collect();
        let s_block: BTreeSet<_> = shuffled[a..a + b].iter().cloned().collect();
        let cert = TypeDCertificate {
            rack: rack.label().to_string(),
            r: r_block.iter().next().unwrap().clone(),
            s: s_block.iter().next().unwrap().clone(),
            r_block,
            s_block,
        };
        assert!(!verify_certificate(&rack, &cert).unwrap().is_valid());
    }
    // every pair closure that stays disjoint fails the inequality
    for r in rack.elements() {
        for s in rack.elements() {
            if r != s && matches!(pair_closure(&rack, r, s), PairClosure::Disjoint(_)) {
                assert!(!triple_test(&rack, r, s));
            }
        }
    }
}

#[test]
fn canonical_ells_feed_generators() {
    let cases = [
        (Generator::Id12r, 8, 3, TwistKind::Identity, "(2^4)"),
        (Generator::Id124, 9, 2, TwistKind::Identity, "(1^3,2,4)"),
        (Generator::Id14, 10, 2, TwistKind::Identity, "(1^2,4^2)"),
        (Generator::Iota12r, 8, 5, TwistKind::Iota12, "(1^2,2^3)"),
        (Generator::Iota12r, 7, 2, TwistKind::Iota12, "(1,2^3)"),
    ];
    for (g, n, t, theta, ty) in cases {
        let ell = theta.canonical_ell(&CycleType::parse(ty).unwrap());
        assert_valid(&generate(g, n, t, Some(&ell)).unwrap());
    }
}

#[test]
fn descriptive_rule_for_iota_222_blocks() {
    let report = iota_222_rule_report();
    assert!(report.mismatches_square_trivial.is_empty(), "{report:?}");
    assert!(!report.mismatches_strict.is_empty());
}
