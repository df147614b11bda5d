//! Seeded random generation of valid charts, used by the oracle-equivalence
//! and compilation property suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chart::{Alphabet, Chart, ChartEvent, EventKind, Letter};

const MAX_WIDTH: usize = 10;

/// A random valid permutation chart of the given degree; the same seed
/// always yields the same chart.
pub fn random_permutation_chart(seed: u64, degree: usize, steps: usize) -> Chart {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut events: Vec<ChartEvent> = Vec::new();
    let mut slice: Vec<Letter> = Vec::new();
    let letter = |rng: &mut ChaCha8Rng| Letter::T(rng.gen_range(1..degree));
    for _ in 0..steps {
        let choice = rng.gen_range(0..8);
        let ev = match choice {
            0 | 1 if slice.len() + 2 <= MAX_WIDTH => {
                let pos = rng.gen_range(0..=slice.len());
                Some(ChartEvent::new(pos, EventKind::Cup { letter: letter(&mut rng) }))
            }
            2 if slice.len() < MAX_WIDTH => {
                let pos = rng.gen_range(0..=slice.len());
                Some(ChartEvent::new(
                    pos,
                    EventKind::Black { letter: letter(&mut rng), insert: true, vertex: None },
                ))
            }
            3 if slice.len() + 4 <= MAX_WIDTH => {
                let pos = rng.gen_range(0..=slice.len());
                let len = rng.gen_range(1..=3);
                let word: Vec<Letter> = (0..len).map(|_| letter(&mut rng)).collect();
                Some(ChartEvent::new(
                    pos,
                    EventKind::Branch { word, insert: true, vertex: None },
                ))
            }
            4 => {
                // A cap wherever an equal adjacent pair exists.
                (0..slice.len().saturating_sub(1))
                    .find(|&p| slice[p] == slice[p + 1])
                    .map(|p| {
                        ChartEvent::new(p, EventKind::Cap { letter: slice[p] })
                    })
            }
            5 => {
                // A crossing on a distant pair.
                (0..slice.len().saturating_sub(1)).find_map(|p| {
                    match (slice[p], slice[p + 1]) {
                        (Letter::T(a), Letter::T(b)) if a.abs_diff(b) >= 2 => {
                            Some(ChartEvent::new(p, EventKind::Crossing { a, b }))
                        }
                        _ => None,
                    }
                })
            }
            6 => {
                // A white vertex on an (a, b, a) pattern.
                (0..slice.len().saturating_sub(2)).find_map(|p| {
                    match (slice[p], slice[p + 1], slice[p + 2]) {
                        (Letter::T(a), Letter::T(b), Letter::T(c))
                            if a == c && a.abs_diff(b) == 1 =>
                        {
                            Some(ChartEvent::new(p, EventKind::White { a, b }))
                        }
                        _ => None,
                    }
                })
            }
            _ => {
                if slice.is_empty() {
                    None
                } else {
                    let pos = rng.gen_range(0..slice.len());
                    Some(ChartEvent::new(
                        pos,
                        EventKind::Black { letter: slice[pos], insert: false, vertex: None },
                    ))
                }
            }
        };
        if let Some(ev) = ev {
            apply(&mut slice, &ev);
            events.push(ev);
        }
    }
    drain(&mut slice, &mut events, &mut rng);
    let chart = Chart::new(degree, Alphabet::Permutation, events);
    debug_assert!(chart.is_valid());
    chart
}

/// A random valid dihedral chart; relator vertices are applied wherever a
/// legal pattern shows up.
pub fn random_dihedral_chart(seed: u64, degree: usize, steps: usize) -> Chart {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = [Letter::r(), Letter::r_inv(), Letter::x(), Letter::x_inv()];
    let mut events: Vec<ChartEvent> = Vec::new();
    let mut slice: Vec<Letter> = Vec::new();
    for _ in 0..steps {
        let choice = rng.gen_range(0..8);
        let ev = match choice {
            0 | 1 if slice.len() + 2 <= MAX_WIDTH => {
                let pos = rng.gen_range(0..=slice.len());
                let letter = alphabet[rng.gen_range(0..4)];
                Some(ChartEvent::new(pos, EventKind::Cup { letter }))
            }
            2 if slice.len() < MAX_WIDTH => {
                let pos = rng.gen_range(0..=slice.len());
                let letter = alphabet[rng.gen_range(0..4)];
                Some(ChartEvent::new(
                    pos,
                    EventKind::Black { letter, insert: true, vertex: None },
                ))
            }
            3 if slice.len() + 3 <= MAX_WIDTH => {
                let pos = rng.gen_range(0..=slice.len());
                let j = rng.gen_range(0..=((degree - 1) / 2));
                let word = if rng.gen_bool(0.5) && j > 0 {
                    let mut w = vec![Letter::x(); j];
                    w.push(Letter::r());
                    w.extend(vec![Letter::x_inv(); j]);
                    w
                } else {
                    vec![Letter::r()]
                };
                if slice.len() + word.len() > MAX_WIDTH {
                    None
                } else {
                    Some(ChartEvent::new(
                        pos,
                        EventKind::Branch { word, insert: true, vertex: None },
                    ))
                }
            }
            4 => (0..slice.len().saturating_sub(1))
                .find(|&p| slice[p + 1] == slice[p].inverse() && slice[p + 1] != slice[p])
                .map(|p| ChartEvent::new(p, EventKind::Cap { letter: slice[p] })),
            5 => {
                // Trade a reflection past a rotation: (r^e, x^s) -> (x^-s, r^e).
                (0..slice.len().saturating_sub(1)).find_map(|p| {
                    match (slice[p], slice[p + 1]) {
                        (r @ Letter::R { .. }, x @ Letter::X { .. }) => Some(ChartEvent::new(
                            p,
                            EventKind::Relator {
                                before: vec![r, x],
                                after: vec![x.inverse(), r],
                            },
                        )),
                        _ => None,
                    }
                })
            }
            6 => {
                // Flip a backwards reflection through a valence-two vertex.
                (0..slice.len())
                    .find(|&p| slice[p] == Letter::r_inv())
                    .map(|p| {
                        ChartEvent::new(
                            p,
                            EventKind::Relator {
                                before: vec![Letter::r_inv()],
                                after: vec![Letter::r()],
                            },
                        )
                    })
            }
            _ => {
                if slice.is_empty() {
                    None
                } else {
                    let pos = rng.gen_range(0..slice.len());
                    Some(ChartEvent::new(
                        pos,
                        EventKind::Black { letter: slice[pos], insert: false, vertex: None },
                    ))
                }
            }
        };
        if let Some(ev) = ev {
            apply(&mut slice, &ev);
            events.push(ev);
        }
    }
    drain(&mut slice, &mut events, &mut rng);
    let chart = Chart::new(degree, Alphabet::Dihedral, events);
    debug_assert!(chart.is_valid());
    chart
}

fn apply(slice: &mut Vec<Letter>, ev: &ChartEvent) {
    let consumed = ev.before().len();
    slice.splice(ev.pos..ev.pos + consumed, ev.after());
}

fn drain(slice: &mut Vec<Letter>, events: &mut Vec<ChartEvent>, rng: &mut ChaCha8Rng) {
    while !slice.is_empty() {
        let take = rng.gen_range(1..=slice.len().min(4));
        let pos = rng.gen_range(0..=slice.len() - take);
        let ev = ChartEvent::new(
            pos,
            EventKind::Branch {
                word: slice[pos..pos + take].to_vec(),
                insert: false,
                vertex: None,
            },
        );
        apply(slice, &ev);
        events.push(ev);
    }
}
