//! Deterministic word straightening.
//!
//! Given a slice word, emit chart events (crossings, white vertices, caps,
//! and for the dihedral alphabet relator vertices) that rewrite it into the
//! canonical normal form of the group element it evaluates to. Chaining a
//! straightening with the reverse of another yields an event path between
//! any two words with equal evaluation; that path is the engine behind
//! relator blocks, lemma certificates and dihedral-to-permutation
//! compilation.
//!
//! The permutation normal form is the staircase form of
//! [`crate::perm::normal_form_word`]: a concatenation of descending runs,
//! one per level. A letter placed on top of the form either extends a run,
//! cancels against a run top (one cap), or trades places through the run
//! with one white vertex and a few distant crossings, re-entering the form
//! one level down. Every step is a single legal chart event, so the
//! rewriting doubles as a certificate.

use crate::chart::{ChartEvent, EventKind, Letter};
use crate::dihedral::DihedralElement;
use crate::perm::{normal_form_word, Permutation, TranspositionWord};

/// Straightens a permutation word sitting at slice position `base`.
/// Returns the events (in application order) and the final normal form.
pub fn straighten(n: usize, letters: &[usize], base: usize) -> (Vec<ChartEvent>, Vec<usize>) {
    let mut runs: Vec<Vec<usize>> = vec![Vec::new(); n.saturating_sub(1)];
    let mut events = Vec::new();
    for &j in letters {
        insert_letter(n, &mut runs, j, base, &mut events);
    }
    (events, runs.concat())
}

/// One letter `j` lying directly on top of the normal form is absorbed.
fn insert_letter(
    n: usize,
    runs: &mut [Vec<usize>],
    letter: usize,
    base: usize,
    events: &mut Vec<ChartEvent>,
) {
    let mut lvl = n;
    let mut j = letter;
    loop {
        debug_assert!(lvl >= 2 && j <= lvl - 1);
        let s: usize = runs[..lvl - 2].iter().map(Vec::len).sum();
        let run_len = runs[lvl - 2].len();
        let r = lvl - run_len;
        if run_len == 0 {
            if j == lvl - 1 {
                runs[lvl - 2].push(j);
                return;
            }
            lvl -= 1;
            continue;
        }
        if j == r - 1 {
            runs[lvl - 2].push(j);
            return;
        }
        if j == r {
            events.push(ChartEvent::new(
                base + s + run_len - 1,
                EventKind::Cap { letter: Letter::T(r) },
            ));
            runs[lvl - 2].pop();
            return;
        }
        if j < r - 1 {
            let mut p = s + run_len;
            for m in r..lvl {
                p -= 1;
                events.push(ChartEvent::new(base + p, EventKind::Crossing { a: m, b: j }));
            }
            lvl -= 1;
            continue;
        }
        // r < j <= lvl - 1: descend to the run's copy of j, apply the braid
        // relation, and push the freed j-1 below the run.
        let mut p = s + run_len;
        for m in r..=j.saturating_sub(2) {
            if m < r {
                break;
            }
            p -= 1;
            events.push(ChartEvent::new(base + p, EventKind::Crossing { a: m, b: j }));
        }
        let q = s + lvl - 1 - j;
        events.push(ChartEvent::new(base + q, EventKind::White { a: j, b: j - 1 }));
        let mut p2 = q;
        for m in (j + 1)..lvl {
            p2 -= 1;
            events.push(ChartEvent::new(
                base + p2,
                EventKind::Crossing { a: m, b: j - 1 },
            ));
        }
        j -= 1;
        lvl -= 1;
    }
}

/// Events rewriting the word `u` (at `base`) into the word `v`, both over
/// the permutation alphabet. Panics unless the two words evaluate equally.
pub fn word_path(n: usize, u: &[usize], v: &[usize], base: usize) -> Vec<ChartEvent> {
    let eu = TranspositionWord::new(n, u.to_vec()).expect("valid word").evaluate();
    let ev = TranspositionWord::new(n, v.to_vec()).expect("valid word").evaluate();
    assert_eq!(eu, ev, "word_path endpoints evaluate differently");
    let (mut path, nf_u) = straighten(n, u, base);
    let (back, nf_v) = straighten(n, v, base);
    debug_assert_eq!(nf_u, nf_v);
    path.extend(back.iter().rev().map(ChartEvent::invert));
    path
}

/// Canonical permutation normal form as a letter vector.
pub fn nf_letters(p: &Permutation) -> Vec<usize> {
    normal_form_word(p).letters
}

// ---------------------------------------------------------------------------
// Dihedral straightening
// ---------------------------------------------------------------------------

/// Running normal form `x^{±count} r^{has_r}`, x-part below the reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct DihedralForm {
    xcount: usize,
    xinv: bool,
    has_r: bool,
}

impl DihedralForm {
    fn empty() -> DihedralForm {
        DihedralForm {
            xcount: 0,
            xinv: false,
            has_r: false,
        }
    }

    fn letters(&self) -> Vec<Letter> {
        let mut out = vec![Letter::X { inv: self.xinv }; self.xcount];
        if self.has_r {
            out.push(Letter::r());
        }
        out
    }
}

/// Straightens a dihedral word at `base` into the form `x^e r^a` with
/// `|e| <= (n-1)/2`. Returns events and the normal-form letters.
pub fn straighten_dihedral(n: usize, letters: &[Letter], base: usize) -> (Vec<ChartEvent>, Vec<Letter>) {
    let k = (n - 1) / 2;
    let mut form = DihedralForm::empty();
    let mut events = Vec::new();
    for &l in letters {
        insert_dihedral_letter(n, k, &mut form, l, base, &mut events);
    }
    (events, form.letters())
}

fn insert_dihedral_letter(
    n: usize,
    k: usize,
    form: &mut DihedralForm,
    letter: Letter,
    base: usize,
    events: &mut Vec<ChartEvent>,
) {
    match letter {
        Letter::T(j) => panic!("permutation letter {j} in dihedral straightening"),
        Letter::R { inv } => {
            if form.has_r {
                if inv {
                    events.push(ChartEvent::new(
                        base + form.xcount,
                        EventKind::Cap { letter: Letter::r() },
                    ));
                } else {
                    events.push(ChartEvent::new(
                        base + form.xcount,
                        EventKind::Relator {
                            before: vec![Letter::r(), Letter::r()],
                            after: vec![],
                        },
                    ));
                }
                form.has_r = false;
            } else {
                if inv {
                    events.push(ChartEvent::new(
                        base + form.xcount,
                        EventKind::Relator {
                            before: vec![Letter::r_inv()],
                            after: vec![Letter::r()],
                        },
                    ));
                }
                form.has_r = true;
            }
        }
        Letter::X { inv } => {
            let mut sign = inv;
            if form.has_r {
                // Trade the rotation below the reflection: r x^s = x^{-s} r.
                events.push(ChartEvent::new(
                    base + form.xcount,
                    EventKind::Relator {
                        before: vec![Letter::r(), Letter::X { inv: sign }],
                        after: vec![Letter::X { inv: !sign }, Letter::r()],
                    },
                ));
                sign = !sign;
            }
            insert_rotation(n, k, form, sign, base, events);
        }
    }
}

/// Absorbs one x-letter of the given sign sitting directly on top of the
/// x-part (below any reflection).
fn insert_rotation(
    n: usize,
    k: usize,
    form: &mut DihedralForm,
    sign: bool,
    base: usize,
    events: &mut Vec<ChartEvent>,
) {
    if form.xcount == 0 {
        form.xcount = 1;
        form.xinv = sign;
        return;
    }
    if sign == form.xinv {
        if form.xcount + 1 <= k {
            form.xcount += 1;
        } else {
            // x^{k+1} = x^{-k}: one valence-n relator vertex.
            debug_assert_eq!(form.xcount, k);
            events.push(ChartEvent::new(
                base,
                EventKind::Relator {
                    before: vec![Letter::X { inv: sign }; k + 1],
                    after: vec![Letter::X { inv: !sign }; n - k - 1],
                },
            ));
            form.xcount = n - k - 1;
            form.xinv = !sign;
        }
    } else {
        events.push(ChartEvent::new(
            base + form.xcount - 1,
            EventKind::Cap {
                letter: Letter::X { inv: form.xinv },
            },
        ));
        form.xcount -= 1;
        if form.xcount == 0 {
            form.xinv = false;
        }
    }
}

/// Events rewriting dihedral word `u` into `v`; they must evaluate equally.
pub fn dihedral_word_path(n: usize, u: &[Letter], v: &[Letter], base: usize) -> Vec<ChartEvent> {
    let eu = crate::chart::slice_dihedral(n, u);
    let ev = crate::chart::slice_dihedral(n, v);
    assert_eq!(eu, ev, "dihedral_word_path endpoints evaluate differently");
    let (mut path, nf_u) = straighten_dihedral(n, u, base);
    let (back, nf_v) = straighten_dihedral(n, v, base);
    debug_assert_eq!(nf_u, nf_v);
    path.extend(back.iter().rev().map(ChartEvent::invert));
    path
}

/// Canonical dihedral normal-form letters `x^e r^a`, `|e| <= (n-1)/2`.
pub fn dihedral_nf_letters(e: &DihedralElement) -> Vec<Letter> {
    let n = e.parameter();
    let k = (n - 1) / 2;
    let b = e.rotation_exponent();
    let mut out = if b == 0 {
        Vec::new()
    } else if b <= k {
        vec![Letter::x(); b]
    } else {
        vec![Letter::x_inv(); n - b]
    };
    if e.is_reflection() {
        out.push(Letter::r());
    }
    out
}
