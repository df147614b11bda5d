//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test -p coverchart --test acceptance -- --nocapture`.

use coverchart::chart::{slice_permutation, Alphabet, Chart, EventKind, Letter};
use coverchart::compile::{compile_chart, resolve_all_branches};
use coverchart::cover::{
    cover_invariants, global_dihedral_monodromies, invariants_from_monodromies,
    sheet_trace_oracle,
};
use coverchart::dihedral::{parse_element, psi_r, psi_x, DihedralElement};
use coverchart::fixtures::{committed_fromnone2five, committed_submarine};
use coverchart::gen::{random_dihedral_chart, random_permutation_chart};
use coverchart::knot::{brute_force_coloring_count, fox_colorings, parse_diagram};
use coverchart::movie::{build_cyclic_movie, replay_t25_fixture, verify_movie};
use coverchart::orient::{attempt_orientation, chart_graph, exhaustive_min_nodes};
use coverchart::perm::{parse_permutation, reduce_word, Permutation, TranspositionWord};

fn passed(n: usize, what: &str) {
    println!("ACCEPTANCE {n}: PASS - {what}");
}

#[test]
fn criterion_01_dihedral_algebra() {
    // All 100 products stay in normal form (multiply always produces a
    // normalized element; closure checked by membership in the element
    // list).
    let all = DihedralElement::all(5);
    assert_eq!(all.len(), 10);
    for a in &all {
        for b in &all {
            let p = a.multiply(b);
            assert!(all.contains(&p), "{a} * {b} left the normal-form list");
        }
    }
    // Relators.
    let r = DihedralElement::r(5);
    let x = DihedralElement::x(5);
    assert!(r.multiply(&r).is_identity());
    assert!(x.pow(5).is_identity());
    let xr = x.multiply(&r);
    assert!(xr.multiply(&xr).is_identity());
    // The rotated-reflection table: rx=[5], rx^2=[3], rx^3=[1], rx^4=[4].
    let fixed = |s: &str| parse_element(5, s).unwrap().fixed_vertex().unwrap();
    assert_eq!(fixed("r"), 2);
    assert_eq!(fixed("r x"), 5);
    assert_eq!(fixed("r x^2"), 3);
    assert_eq!(fixed("r x^3"), 1);
    assert_eq!(fixed("r x^4"), 4);
    // The conjugation table: x^{-1}rx=[3], x^{-2}rx^2=[4], x^{-3}rx^3=[5],
    // x^{-4}rx^4=[1].
    let conj = |j: i64| {
        x.pow(-j)
            .multiply(&r)
            .multiply(&x.pow(j))
            .fixed_vertex()
            .unwrap()
    };
    assert_eq!(conj(1), 3);
    assert_eq!(conj(2), 4);
    assert_eq!(conj(3), 5);
    assert_eq!(conj(4), 1);
    passed(1, "dihedral normal forms, relators, and both reflection tables");
}

#[test]
fn criterion_02_psi_correctness() {
    assert_eq!(psi_r(5), parse_permutation(5, "(1 3)(4 5)").unwrap());
    assert_eq!(psi_r(7), parse_permutation(7, "(2 4)(1 5)(6 7)").unwrap());
    for n in [5usize, 7, 9] {
        // psi(x) = (1, n, n-1, ..., 2).
        let x = psi_x(n);
        assert_eq!(x.apply(1), n);
        for i in 2..=n {
            assert_eq!(x.apply(i), i - 1);
        }
        // Homomorphism property, exhaustively over all 4n^2 pairs.
        for a in DihedralElement::all(n) {
            for b in DihedralElement::all(n) {
                assert_eq!(a.multiply(&b).psi(), a.psi().compose(&b.psi()));
            }
        }
    }
    passed(2, "psi values and exhaustive homomorphism checks for n = 5, 7, 9");
}

#[test]
fn criterion_03_permutation_identities() {
    let x = parse_permutation(5, "(1 5 4 3 2)").unwrap();
    let target = parse_permutation(5, "(1 3 5 2 4)").unwrap();
    assert_eq!(x.pow(3), target);
    assert_eq!(x.inverse().pow(2), target);
    // The displayed factorization chain, encoded as products with the
    // rightmost transposition applied first; every line evaluates to
    // (13524) and the chain ends in the six-letter word
    // (23)(12)(34)(23)(45)(34).
    let displayed: [Vec<usize>; 6] = [
        vec![4, 1, 2, 1, 4, 3, 2, 1, 4, 1, 2, 1, 1, 2, 3, 4],
        vec![1, 2, 1, 4, 4, 3, 2, 4, 1, 1, 3, 4],
        vec![1, 2, 1, 3, 2, 4, 3, 4],
        vec![2, 1, 2, 3, 2, 3, 4, 3],
        vec![2, 1, 3, 2, 3, 3, 4, 3],
        vec![2, 1, 3, 2, 4, 3],
    ];
    let expected_lengths = [16usize, 12, 8, 8, 8, 6];
    for (line, len) in displayed.iter().zip(expected_lengths) {
        assert_eq!(line.len(), len);
        let word: Vec<usize> = line.iter().rev().copied().collect();
        let w = TranspositionWord::new(5, word).unwrap();
        assert_eq!(w.evaluate(), target, "line {line:?}");
    }
    let sixteen: Vec<usize> = displayed[0].iter().rev().copied().collect();
    let reduced = reduce_word(&TranspositionWord::new(5, sixteen).unwrap());
    assert_eq!(reduced.len(), 6);
    assert_eq!(reduced.evaluate(), target);
    assert_eq!(reduced.len(), target.inversions());
    passed(3, "cycle identities and the 16-letter reduction chain");
}

#[test]
fn criterion_04_cover_invariants() {
    // Union of three 2-spheres.
    let submarine = committed_submarine();
    let inv = cover_invariants(&submarine).unwrap();
    assert_eq!(inv.components(), 3);
    assert_eq!(inv.euler_total, 6);
    // The two-branch-point cyclic cover is a sphere.
    let cyc = committed_fromnone2five();
    let inv = cover_invariants(&cyc).unwrap();
    assert_eq!(inv.components(), 1);
    assert_eq!(inv.euler_total, 2);
    // Empty charts are n nested spheres.
    for n in [2usize, 3, 5, 9] {
        let inv = cover_invariants(&Chart::empty(n, Alphabet::Permutation)).unwrap();
        assert_eq!(inv.components(), n);
        assert_eq!(inv.euler_total, 2 * n as i64);
    }
    // The compiled mid-movie frame with eight simple branch points is a
    // sphere.
    let movie = replay_t25_fixture();
    let mid = &movie.content_frames()[9];
    let resolved = resolve_all_branches(&compile_chart(mid).unwrap()).unwrap();
    let blacks = resolved
        .events
        .iter()
        .filter(|e| matches!(e.kind, EventKind::Black { .. }))
        .count();
    assert_eq!(blacks, 8);
    let inv = cover_invariants(&resolved).unwrap();
    assert_eq!(inv.components(), 1);
    assert_eq!(inv.euler_total, 2);
    passed(4, "three spheres, one sphere, n spheres, and the 8-point sphere");
}

#[test]
fn criterion_05_oracle_equivalence() {
    let mut checked = 0usize;
    for seed in 0..220u64 {
        let degree = 2 + (seed as usize % 5); // 2..=6
        let steps = 8 + (seed as usize % 9);
        let chart = random_permutation_chart(seed, degree, steps);
        let fast = cover_invariants(&chart).unwrap();
        let traced = sheet_trace_oracle(&chart).unwrap();
        assert_eq!(fast, traced, "seed {seed} degree {degree}");
        checked += 1;
    }
    assert!(checked >= 200);
    passed(5, "monodromy route equals the sheet-tracing oracle on 220 charts");
}

#[test]
fn criterion_06_lemma_certificates() {
    use coverchart::fixtures::{committed_corollary1, committed_lemma1, committed_lemma2};
    let l1 = committed_lemma1();
    let end = l1.verify().expect("lemma 1 verifies");
    let boundary = end.slice_at(1).unwrap();
    let expected: Vec<Letter> = (0..3).flat_map(|_| [1, 2, 3, 4]).map(Letter::T).collect();
    assert_eq!(boundary, expected, "boundary slice is (t4 t3 t2 t1)^3");
    let central = end.slice_at(1 + l1.moves.len()).unwrap();
    let pattern: Vec<Letter> = [4, 3, 2, 1, 4, 3, 2, 1].into_iter().map(Letter::T).collect();
    assert_eq!(central, pattern, "central slice is (12)(23)(34)(45)(12)(23)(34)(45)");
    assert_eq!(
        slice_permutation(5, &central),
        parse_permutation(5, "(1 3 5 2 4)").unwrap()
    );
    for cert in [committed_corollary1(), committed_lemma2()] {
        let end = cert.verify().unwrap_or_else(|e| panic!("{} fails: {e}", cert.name));
        assert!(end.is_valid());
    }
    passed(6, "lemma 1, corollary 1 and lemma 2 certificates verify end to end");
}

#[test]
fn criterion_07_fox_colorings() {
    let t25 = parse_diagram("braid s=2: 1 1 1 1 1").unwrap();
    let colorings = fox_colorings(&t25, 5).unwrap();
    assert_eq!(colorings.len(), 25);
    assert_eq!(brute_force_coloring_count(&t25, 5), 25);
    // The bridge assignment: a coloring whose arcs use colors 0 and 1 on
    // the two bridges, running through all five reflections.
    let bridge = colorings
        .iter()
        .find(|c| !c.trivial && c.arc_colors.contains(&0) && c.arc_colors.contains(&1))
        .expect("bridge coloring");
    let mut sorted = bridge.arc_colors.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![0, 1, 2, 3, 4]);

    let fig8 = parse_diagram("braid s=3: 1 -2 1 -2").unwrap();
    assert_eq!(fox_colorings(&fig8, 5).unwrap().len(), 25);
    assert_eq!(brute_force_coloring_count(&fig8, 5), 25);

    let trefoil = parse_diagram("braid s=2: 1 1 1").unwrap();
    assert_eq!(fox_colorings(&trefoil, 3).unwrap().len(), 9);
    assert_eq!(brute_force_coloring_count(&trefoil, 3), 9);

    let unknot = parse_diagram("braid s=1:").unwrap();
    for n in [3usize, 5, 7, 9] {
        let cs = fox_colorings(&unknot, n).unwrap();
        assert_eq!(cs.len(), n);
        assert_eq!(brute_force_coloring_count(&unknot, n), n);
    }
    passed(7, "coloring counts 25/25/9/n match brute force, bridge colors found");
}

#[test]
fn criterion_08_t25_replay() {
    let movie = replay_t25_fixture();
    let report = verify_movie(&movie);
    assert!(report.ok, "all frames valid, all transitions certified");
    let content = movie.content_frames();
    assert!(content.len() >= 21, "only {} content frames", content.len());
    for i in 2..=19 {
        assert_eq!(
            content[i - 1].branch_points().len(),
            4,
            "content frame {i} must have exactly four branch vertices"
        );
    }
    // Handle bookkeeping: two 1-handles entering step 1 and the symmetric
    // two 2-handles leaving.
    let inv: Vec<i64> = report
        .frames
        .iter()
        .map(|f| f.invariants.as_ref().unwrap().euler_total)
        .collect();
    assert_eq!(inv[1] - inv[0], -4);
    assert_eq!(movie.transitions[0].one_handles, 2);
    let exits: Vec<i64> = inv.windows(2).map(|w| w[1] - w[0]).collect();
    assert_eq!(exits.iter().filter(|&&d| d == 4).count(), 2);
    assert_eq!(exits.iter().filter(|&&d| d == -4).count(), 2);
    passed(8, "21-step movie verifies with four vertices across frames 2-19");
}

#[test]
fn criterion_09_compilation_property() {
    let mut checked = 0usize;
    for seed in 1000..1110u64 {
        let degree = [3usize, 5, 7][seed as usize % 3];
        let chart = random_dihedral_chart(seed, degree, 10 + (seed as usize % 6));
        let pushed: Vec<Permutation> = global_dihedral_monodromies(&chart)
            .unwrap()
            .iter()
            .map(|e| e.psi())
            .collect();
        let expected = invariants_from_monodromies(degree, &pushed);
        let compiled = compile_chart(&chart).unwrap();
        let inv = cover_invariants(&compiled).unwrap();
        assert_eq!(inv.component_orbits, expected.component_orbits, "seed {seed}");
        assert_eq!(inv.euler_total, expected.euler_total, "seed {seed}");
        let traced = sheet_trace_oracle(&compiled).unwrap();
        assert_eq!(traced, inv, "oracle agrees, seed {seed}");
        // Resolution preserves the invariants exactly.
        let resolved = resolve_all_branches(&compiled).unwrap();
        let after = cover_invariants(&resolved).unwrap();
        assert_eq!(after.component_orbits, inv.component_orbits);
        assert_eq!(after.euler_total, inv.euler_total);
        checked += 1;
    }
    assert!(checked >= 100);
    passed(9, "compilation and resolution preserve invariants on 110 charts");
}

#[test]
fn criterion_10_orientation_lifting() {
    // Every frame of every cyclic movie lifts with zero nodes.
    for (text, n) in [
        ("braid s=1:", 5usize),
        ("braid s=2: 1 1 1", 5),
        ("braid s=2: 1 1 1", 2),
        ("braid s=2: 1 1 1 1 1", 5),
        ("braid s=3: 1 -2 1 -2", 3),
    ] {
        let d = parse_diagram(text).unwrap();
        let movie = build_cyclic_movie(&d, n).unwrap();
        let report = verify_movie(&movie);
        assert!(report.ok, "{text} movie verifies");
        for (i, f) in report.frames.iter().enumerate() {
            assert_eq!(f.orientation_nodes, Some(0), "{text} frame {i}");
        }
    }
    // On small charts the reported node count is the exhaustive minimum.
    let mut compared = 0usize;
    for seed in 0..400u64 {
        let chart = random_permutation_chart(seed, 4 + (seed as usize % 3), 10);
        let graph = chart_graph(&chart).unwrap();
        if graph.edge_count() > 12 || graph.white_count() > 3 {
            continue;
        }
        let report = attempt_orientation(&chart, 100_000).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.nodes, exhaustive_min_nodes(&chart).unwrap(), "seed {seed}");
        compared += 1;
    }
    assert!(compared >= 50, "only {compared} small charts compared");
    passed(10, "cyclic frames lift with 0 nodes; node counts match brute force");
}
