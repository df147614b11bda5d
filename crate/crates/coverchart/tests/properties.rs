//! Property checks across modules: event effects on slice evaluation,
//! invariant preservation per move kind, sequence inversion, serialization
//! round trips, and the bounded search on the relator wall.

use coverchart::chart::{slice_permutation, Alphabet, Chart, EventKind, Letter};
use coverchart::cover::{cover_invariants, global_monodromies};
use coverchart::dihedral::{psi_word_letters, DihedralElement};
use coverchart::gen::{random_dihedral_chart, random_permutation_chart};
use coverchart::moves::{
    apply_move, inverse_move, is_cover_changing, search_equivalence, verify_sequence,
    word_wall, MoveInstance, MoveKind,
};
use coverchart::perm::Permutation;

/// Cups, caps, crossings and whites leave the slice evaluation alone;
/// black and branch events multiply it on the right by the conjugated
/// local word.
#[test]
fn event_effect_on_slice_permutation() {
    for seed in 0..60u64 {
        let chart = random_permutation_chart(seed, 5, 12);
        let slices = chart.slices().unwrap();
        for (i, ev) in chart.events.iter().enumerate() {
            let n = chart.degree;
            let before = slice_permutation(n, &slices[i]);
            let after = slice_permutation(n, &slices[i + 1]);
            match &ev.kind {
                EventKind::Cup { .. }
                | EventKind::Cap { .. }
                | EventKind::Crossing { .. }
                | EventKind::White { .. } => {
                    assert_eq!(before, after, "seed {seed} event {i} changed the evaluation")
                }
                EventKind::Black { .. } | EventKind::Branch { .. } => {
                    let prefix = slice_permutation(n, &slices[i][..ev.pos]);
                    let local = slice_permutation(n, &ev.branch_word().unwrap());
                    let local = if ev.is_insert().unwrap() { local } else { local.inverse() };
                    let g = prefix.inverse().compose(&local).compose(&prefix);
                    assert_eq!(after, before.compose(&g), "seed {seed} event {i}");
                }
                EventKind::Relator { .. } => unreachable!("permutation charts have no relators"),
            }
        }
    }
}

/// The ordered composition of the signed global monodromies of a valid
/// chart is the identity.
#[test]
fn monodromies_compose_to_identity() {
    for seed in 0..60u64 {
        let chart = random_permutation_chart(seed, 6, 12);
        let gens = global_monodromies(&chart).unwrap();
        let mut acc = Permutation::identity(6);
        for g in &gens {
            acc = acc.compose(g);
        }
        assert!(acc.is_identity(), "seed {seed}");
    }
}

fn legal_moves_on(chart: &Chart) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    let slices = chart.slices().unwrap();
    for i in 0..=chart.events.len() {
        let width = slices[i.min(slices.len() - 1)].len();
        for pos in 0..=width.min(3) {
            out.push(MoveInstance::new(i, pos, MoveKind::CupCapCreate { letter: Letter::T(1) }));
            out.push(MoveInstance::new(
                i,
                pos,
                MoveKind::BlackPairCreate { letter: Letter::T(2), delete_first: false },
            ));
            out.push(MoveInstance::new(
                i,
                pos,
                MoveKind::SimpleArcBirth {
                    word: vec![Letter::T(1), Letter::T(2)],
                    delete_first: false,
                },
            ));
            out.push(MoveInstance::new(i, pos, MoveKind::SaddlePairCreate { letter: Letter::T(1) }));
            out.push(MoveInstance::new(i, pos, MoveKind::WhitePairCreate { a: 1, b: 2 }));
            out.push(MoveInstance::new(i, pos, MoveKind::CrossingPairCreate { a: 1, b: 3 }));
        }
        if i < chart.events.len() {
            out.push(MoveInstance::new(i, 0, MoveKind::CommuteDistantEvents));
            out.push(MoveInstance::new(i, 0, MoveKind::CupCapCancel));
            out.push(MoveInstance::new(i, 0, MoveKind::SaddlePairCancel));
            out.push(MoveInstance::new(i, 0, MoveKind::BlackPairCancel));
            out.push(MoveInstance::new(i, 0, MoveKind::SimpleArcDeath));
            out.push(MoveInstance::new(i, chart.events[i].pos, MoveKind::BranchResolve));
        }
    }
    out
}

/// Invariant-preserving moves leave the cover invariants unchanged;
/// cover-changing pair moves change the Euler characteristic by two and
/// components by at most one. Checked per kind on randomized sites.
#[test]
fn moves_respect_their_classification() {
    let mut preserved = 0usize;
    let mut changed = 0usize;
    for seed in 100..160u64 {
        let chart = random_permutation_chart(seed, 5, 10);
        let before = cover_invariants(&chart).unwrap();
        for m in legal_moves_on(&chart) {
            let Ok(next) = apply_move(&chart, &m) else { continue };
            let after = cover_invariants(&next).unwrap();
            if is_cover_changing(&m.kind) {
                changed += 1;
                match m.kind {
                    MoveKind::BlackPairCreate { .. } => {
                        assert_eq!(after.euler_total, before.euler_total - 2);
                        assert!(before.components() - after.components() <= 1);
                    }
                    MoveKind::BlackPairCancel => {
                        assert_eq!(after.euler_total, before.euler_total + 2);
                    }
                    MoveKind::BranchResolve => {
                        // Resolution preserves orbits and euler, only the
                        // branch count moves.
                        assert_eq!(after.euler_total, before.euler_total);
                        assert_eq!(after.component_orbits, before.component_orbits);
                    }
                    _ => {}
                }
            } else {
                preserved += 1;
                assert_eq!(
                    after, before,
                    "move {m:?} on seed {seed} changed the invariants"
                );
            }
        }
    }
    assert!(preserved > 200, "only {preserved} preserving applications");
    assert!(changed > 100, "only {changed} cover-changing applications");
}

/// A verified sequence replayed backwards through pointwise inverses
/// returns the starting chart.
#[test]
fn sequences_invert_pointwise() {
    for seed in 0..30u64 {
        let chart = random_permutation_chart(seed, 5, 8);
        // Collect a short legal sequence.
        let mut moves = Vec::new();
        let mut cur = chart.clone();
        for m in legal_moves_on(&chart) {
            if moves.len() >= 5 {
                break;
            }
            if let Ok(next) = apply_move(&cur, &m) {
                moves.push(m);
                cur = next;
            }
        }
        let end = verify_sequence(&chart, &moves).unwrap();
        assert_eq!(end, cur);
        // Invert.
        let mut stack = Vec::new();
        let mut replay = chart.clone();
        for m in &moves {
            stack.push((replay.clone(), m.clone()));
            replay = apply_move(&replay, m).unwrap();
        }
        let mut back = end;
        while let Some((state, m)) = stack.pop() {
            let inv = inverse_move(&state, &m).unwrap();
            back = apply_move(&back, &inv).unwrap();
        }
        assert_eq!(back, chart, "seed {seed}");
    }
}

/// Slide moves are invertible at real sites.
#[test]
fn slides_invert() {
    // Build [Crossing(1,3)@0, BlackDelete(1)@1] inside scaffolding.
    let chart = Chart::new(
        5,
        Alphabet::Permutation,
        vec![
            coverchart::ChartEvent::new(
                0,
                EventKind::Branch {
                    word: vec![Letter::T(1), Letter::T(3)],
                    insert: true,
                    vertex: None,
                },
            ),
            coverchart::ChartEvent::new(0, EventKind::Crossing { a: 1, b: 3 }),
            coverchart::ChartEvent::new(
                1,
                EventKind::Black { letter: Letter::T(1), insert: false, vertex: None },
            ),
            coverchart::ChartEvent::new(
                0,
                EventKind::Black { letter: Letter::T(3), insert: false, vertex: None },
            ),
        ],
    );
    assert!(chart.is_valid());
    let m = MoveInstance::new(
        1,
        0,
        MoveKind::SlideThroughCrossing { j: 1, k: 3, insert: false, expand: false },
    );
    let contracted = apply_move(&chart, &m).unwrap();
    assert!(contracted.is_valid());
    assert_eq!(
        cover_invariants(&contracted).unwrap(),
        cover_invariants(&chart).unwrap()
    );
    let back = inverse_move(&chart, &m).unwrap();
    assert_eq!(apply_move(&contracted, &back).unwrap(), chart);

    // White slide: [White(1,2)@0, BlackDelete(2)@0] <-> [BlackDelete(1)@2].
    let chart = Chart::new(
        5,
        Alphabet::Permutation,
        vec![
            coverchart::ChartEvent::new(
                0,
                EventKind::Branch {
                    word: vec![Letter::T(1), Letter::T(2), Letter::T(1)],
                    insert: true,
                    vertex: None,
                },
            ),
            coverchart::ChartEvent::new(0, EventKind::White { a: 1, b: 2 }),
            coverchart::ChartEvent::new(
                0,
                EventKind::Black { letter: Letter::T(2), insert: false, vertex: None },
            ),
            coverchart::ChartEvent::new(
                0,
                EventKind::Branch {
                    word: vec![Letter::T(1), Letter::T(2)],
                    insert: false,
                    vertex: None,
                },
            ),
        ],
    );
    assert!(chart.is_valid());
    let m = MoveInstance::new(
        1,
        0,
        MoveKind::SlideThroughWhite { j: 1, k: 2, insert: false, expand: false },
    );
    let contracted = apply_move(&chart, &m).unwrap();
    assert!(contracted.is_valid());
    assert_eq!(
        cover_invariants(&contracted).unwrap(),
        cover_invariants(&chart).unwrap()
    );
    let back = inverse_move(&chart, &m).unwrap();
    assert_eq!(apply_move(&contracted, &back).unwrap(), chart);
}

/// The wall of the relator word psi((rx)^2) is move-equivalent to the
/// empty chart; the bounded search finds a certificate.
#[test]
fn search_trivializes_the_relator_wall() {
    let word = psi_word_letters(
        5,
        &[Letter::r(), Letter::x(), Letter::r(), Letter::x()],
        false,
    );
    let letters: Vec<Letter> = word.letters.iter().map(|&j| Letter::T(j)).collect();
    let wall = word_wall(5, Alphabet::Permutation, &letters);
    let empty = Chart::empty(5, Alphabet::Permutation);
    let outcome = search_equivalence(&wall, &empty, 100_000);
    let moves = outcome.moves.expect("wall trivializes within budget");
    assert!(outcome.expanded <= 100_000);
    assert_eq!(verify_sequence(&wall, &moves).unwrap(), empty);
}

/// Chart serialization is bit-exact on random charts of both alphabets.
#[test]
fn serialization_round_trips_bit_exactly() {
    for seed in 0..50u64 {
        let p = random_permutation_chart(seed, 6, 10);
        let json = p.to_json();
        assert_eq!(Chart::from_json(&json).unwrap().to_json(), json);
        let d = random_dihedral_chart(seed, 7, 10);
        let json = d.to_json();
        assert_eq!(Chart::from_json(&json).unwrap().to_json(), json);
    }
}

/// psi-words with the reduced flag hit the Coxeter length.
#[test]
fn psi_words_reduce() {
    for n in [5usize, 7, 9] {
        for e in DihedralElement::all(n) {
            let letters = coverchart::straighten::dihedral_nf_letters(&e);
            let full = psi_word_letters(n, &letters, false);
            let reduced = psi_word_letters(n, &letters, true);
            assert_eq!(full.evaluate(), e.psi());
            assert_eq!(reduced.evaluate(), e.psi());
            assert_eq!(reduced.len(), e.psi().inversions());
            assert!(reduced.len() <= full.len());
        }
    }
}
