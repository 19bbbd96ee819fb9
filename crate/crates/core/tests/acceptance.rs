//! Acceptance suite: one test per release criterion, each printing a pass
//! line (visible under `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use num::BigInt;

use valise_core::adinkra::{
    count_dashings, enumerate_dashings, two_color_cycles, validate_dashing, Dashing,
    ValiseAdinkra,
};
use valise_core::bitlinalg::BitWord;
use valise_core::census::{
    dashing_multiplier, signed_class_count, unsigned_class_count,
};
use valise_core::chromotopology::Chromotopology;
use valise_core::codes::{enumerate_doubly_even, gaborit_count};
use valise_core::garden::{
    adinkra_to_generators, generators_to_adinkra, GeneratorList, RowOrderedValiseAdinkra,
    SignedPermutationMatrix,
};
use valise_core::oracle::{
    brute_class_count, brute_code_count, brute_code_counts_up_to, brute_dashing_count,
    enumerate_generator_lists,
};

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// The documented GR(4,4) generator quadruple.
fn reference_gr44() -> GeneratorList {
    let m = |rows: [[i64; 4]; 4]| {
        SignedPermutationMatrix::new(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    };
    GeneratorList::new(vec![
        m([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]),
        m([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]),
        m([[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]),
        m([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]),
    ])
    .unwrap()
}

#[test]
fn criterion_1_published_table_reproduction() {
    let start = Instant::now();
    assert_eq!(unsigned_class_count(4, 4).unwrap(), big(6));
    assert_eq!(signed_class_count(4, 4).unwrap(), big(1536));
    assert_eq!(unsigned_class_count(8, 8).unwrap(), big(151200));
    assert_eq!(signed_class_count(8, 8).unwrap(), big(79272345600));
    println!(
        "criterion 1 PASS: class counts (4,4) = 6 / 1536 and (8,8) = 151200 / 79272345600 ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_2_closed_form_vs_brute_code_counts() {
    let start = Instant::now();
    // highlighted points
    assert_eq!(gaborit_count(4, 1).unwrap(), big(1));
    assert_eq!(gaborit_count(8, 4).unwrap(), big(30));
    for n in [4u32, 8] {
        for k in 0..=n / 2 {
            let brute = brute_code_count(n, k).unwrap();
            assert_eq!(gaborit_count(n, k).unwrap(), big(brute), "({n},{k})");
        }
    }
    // N = 12: the closure oracle computes all dimensions in one sweep
    let counts = brute_code_counts_up_to(12, 6).unwrap();
    for k in 0..=6u32 {
        assert_eq!(
            gaborit_count(12, k).unwrap(),
            big(counts[k as usize]),
            "(12,{k})"
        );
    }
    println!(
        "criterion 2 PASS: closed forms match brute enumeration for N in {{4, 8, 12}}, all k ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_3_dashing_theorem_cross_check() {
    let start = Instant::now();
    let mut three_way = 0;
    let mut two_way = 0;
    for n in 1..=5u32 {
        for k in 0..=n / 2 {
            for code in enumerate_doubly_even(n, k).unwrap() {
                let g = Chromotopology::build_from_code(&code).unwrap();
                let closed_form = dashing_multiplier(n, k);
                let linear_algebra = count_dashings(&g).unwrap();
                assert_eq!(linear_algebra, closed_form, "({n},{k})");
                two_way += 1;
                if g.num_edges() <= 20 {
                    let scan = brute_dashing_count(&g).unwrap();
                    assert_eq!(big(scan), closed_form, "({n},{k}) scan");
                    three_way += 1;
                }
            }
        }
    }
    // the highlighted instances
    let square = Chromotopology::build_from_code(
        &enumerate_doubly_even(2, 0).unwrap().next().unwrap(),
    )
    .unwrap();
    assert_eq!(count_dashings(&square).unwrap(), big(8));
    let cube = Chromotopology::build_from_code(
        &enumerate_doubly_even(3, 0).unwrap().next().unwrap(),
    )
    .unwrap();
    assert_eq!(count_dashings(&cube).unwrap(), big(128));
    println!(
        "criterion 3 PASS: dashing counts equal 2^(2^(N-k)+k-1) for every code with N <= 5 \
         ({two_way} codes; 2^E scan agreed on the {three_way} with E <= 20) ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_4_class_counts_vs_brute_force() {
    let start = Instant::now();
    let points: [(u32, u64, bool, u64); 5] = [
        (2, 2, false, 1),
        (2, 2, true, 8),
        (3, 4, false, 24),
        (4, 4, false, 6),
        (4, 4, true, 1536),
    ];
    for (n, d, signed, expected) in points {
        let brute = brute_class_count(n, d, signed).unwrap();
        let formula = if signed {
            signed_class_count(n, d).unwrap()
        } else {
            unsigned_class_count(n, d).unwrap()
        };
        assert_eq!(brute, expected, "brute ({n},{d},signed={signed})");
        assert_eq!(formula, big(expected), "formula ({n},{d},signed={signed})");
    }
    // the search itself visits class_count × N! lists
    let signed44 = enumerate_generator_lists(4, 4, true).unwrap();
    assert_eq!(signed44.len(), 36864);
    println!(
        "criterion 4 PASS: brute-force classes match formulas at (2,2), (3,4), (4,4); \
         the signed (4,4) search visits 36864 lists ({:?})",
        start.elapsed()
    );
}

/// The published valise drawing for GR(4,4), hand-transcribed. Colors map to
/// coordinates as drawn (1→1, 2→4, 3→2, 4→3); `example_signs` selects the
/// dashing consistent with the reference matrices, the alternative being the
/// literal drawing whose second color carries the opposite signs.
fn figure_fixture(example_signs: bool) -> RowOrderedValiseAdinkra {
    let vertices: Vec<BitWord> = (0..8u64).map(|b| BitWord::new(4, b)).collect();
    let edges: Vec<(usize, usize, u8)> = vec![
        (3, 4, 1),
        (0, 7, 1),
        (2, 5, 1),
        (1, 6, 1),
        (4, 5, 2),
        (0, 1, 2),
        (2, 3, 2),
        (6, 7, 2),
        (0, 4, 3),
        (1, 5, 3),
        (2, 6, 3),
        (3, 7, 3),
        (0, 2, 4),
        (1, 3, 4),
        (4, 6, 4),
        (5, 7, 4),
    ];
    let dashed_reference: &[(usize, usize, u8)] = &[
        (6, 7, 2),
        (2, 3, 2),
        (1, 5, 3),
        (3, 7, 3),
        (0, 2, 4),
        (1, 3, 4),
    ];
    let dashed_literal: &[(usize, usize, u8)] = &[
        (4, 5, 2),
        (0, 1, 2),
        (1, 5, 3),
        (3, 7, 3),
        (0, 2, 4),
        (1, 3, 4),
    ];
    let dashed = if example_signs {
        dashed_reference
    } else {
        dashed_literal
    };
    let graph = Chromotopology::from_parts(4, 1, vertices, edges);
    let dash_bits: Vec<u8> = graph
        .edges()
        .iter()
        .map(|e| dashed.contains(&(e.u, e.v, e.color)) as u8)
        .collect();
    let ranking = graph.bipartition();
    let adinkra = ValiseAdinkra::new(graph, ranking, Dashing::new(dash_bits)).unwrap();
    RowOrderedValiseAdinkra::new(adinkra, vec![6, 5, 3, 0], vec![4, 7, 1, 2]).unwrap()
}

#[test]
fn criterion_5_bijection_between_lists_and_row_ordered_valises() {
    let start = Instant::now();
    let reference = reference_gr44();
    assert!(reference.check_relations().is_valid());

    // reading the drawn valise yields the reference matrices entry-for-entry
    let fixture = figure_fixture(true);
    assert!(fixture.adinkra().graph().validate().is_valid());
    assert!(validate_dashing(fixture.adinkra()).is_valid());
    let derived = adinkra_to_generators(&fixture).unwrap();
    assert_eq!(derived, reference);
    // including the documented (4,2) entry of the first matrix
    assert_eq!(derived.get(0).entry(3, 1), 1);

    // the literal drawing is also a valid Adinkra; it negates the second matrix
    let literal = figure_fixture(false);
    assert!(validate_dashing(literal.adinkra()).is_valid());
    let derived = adinkra_to_generators(&literal).unwrap();
    assert_eq!(derived.get(0), reference.get(0));
    assert_eq!(derived.get(1), &reference.get(1).negated());
    assert_eq!(derived.get(2), reference.get(2));
    assert_eq!(derived.get(3), reference.get(3));

    // both round-trip compositions are identities on every (2,2) list
    for list in enumerate_generator_lists(2, 2, true).unwrap() {
        let roa = generators_to_adinkra(&list).unwrap();
        let back = adinkra_to_generators(&roa).unwrap();
        assert_eq!(back, list);
        let roa2 = generators_to_adinkra(&back).unwrap();
        assert_eq!(roa2.adinkra(), roa.adinkra());
        assert_eq!(roa2.top(), roa.top());
        assert_eq!(roa2.bottom(), roa.bottom());
    }

    // the reference list round-trips exactly as well
    let roa = generators_to_adinkra(&reference).unwrap();
    assert_eq!(roa.adinkra().graph().num_vertices(), 8);
    assert_eq!(adinkra_to_generators(&roa).unwrap(), reference);
    println!(
        "criterion 5 PASS: drawn valise reproduces the reference matrices entry-for-entry; \
         round trips are identities on all 16 (2,2) lists ({:?})",
        start.elapsed()
    );
}

#[test]
fn criterion_6_property_suite_over_all_codes_up_to_length_8() {
    let start = Instant::now();
    let mut graphs = 0usize;
    let mut dashings_validated = 0u64;
    for n in 1..=8u32 {
        for k in 0..=n / 2 {
            for code in enumerate_doubly_even(n, k).unwrap() {
                let g = Chromotopology::build_from_code(&code).unwrap();
                assert!(g.validate().is_valid(), "({n},{k}) axioms");
                assert_eq!(g.num_vertices() as u64, 1u64 << (n - k), "({n},{k}) size");
                let count = count_dashings(&g).unwrap();
                assert_eq!(count, dashing_multiplier(n, k), "({n},{k}) count");
                graphs += 1;
                // enumerate and validate every dashing within the guard
                if count <= big(1 << 20) {
                    let cycles = two_color_cycles(&g).unwrap();
                    let mut seen = 0u64;
                    for dashing in enumerate_dashings(&g).unwrap() {
                        for cycle in &cycles {
                            let parity = cycle
                                .edges
                                .iter()
                                .fold(0u8, |acc, &e| acc ^ dashing.get(e));
                            assert_eq!(parity, 1, "({n},{k}) cycle parity");
                        }
                        seen += 1;
                    }
                    assert_eq!(big(seen), count, "({n},{k}) stream length");
                    dashings_validated += seen;
                }
            }
        }
        // the divisibility assertion never fires anywhere in range
        let mut d = 1u64;
        while n as i64 - 1 - (d.trailing_zeros() as i64) >= 0 {
            unsigned_class_count(n, d).unwrap();
            d *= 2;
        }
    }
    println!(
        "criterion 6 PASS: {graphs} coset graphs satisfy every axiom; \
         {dashings_validated} enumerated dashings validated ({:?})",
        start.elapsed()
    );
}
