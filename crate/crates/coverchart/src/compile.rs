//! Compilation of dihedral charts into permutation charts, branch-point
//! resolution, and the saw-tooth construction of planar covers.
//!
//! Compilation expands every dihedral letter to its reduced transposition
//! word under `psi` (inverse letters use the reversed word), turns dihedral
//! cups and caps into nested bubbles, turns black and branch vertices into
//! branch vertices carrying the expanded word, and replaces relator
//! vertices by straightening paths between the expansions of their two
//! sides. Global monodromies of the output are the `psi`-images of the
//! dihedral monodromy data.

use thiserror::Error;

use crate::chart::{Alphabet, Chart, ChartEvent, EventKind, Letter};
use crate::dihedral::{psi_letter_word, DihedralElement};
use crate::moves::{apply_move, MoveError, MoveInstance, MoveKind};
use crate::straighten::word_path;

#[derive(Debug, Error)]
pub enum CompileError {
    #[error("expected a dihedral chart")]
    NotDihedral,
    #[error("input chart invalid: {0:?}")]
    InvalidInput(Vec<crate::chart::Violation>),
    #[error("compiled chart invalid: {0:?}")]
    InvalidOutput(Vec<crate::chart::Violation>),
    #[error("colors multiply to {0}, not the identity")]
    ProductNotIdentity(DihedralElement),
    #[error("color {0} is the identity; it is not a branch point")]
    IdentityColor(usize),
    #[error("need at least two colors, got {0}")]
    TooFewColors(usize),
    #[error(transparent)]
    Move(#[from] MoveError),
}

fn expansion(n: usize, letter: Letter) -> Vec<usize> {
    psi_letter_word(n, letter).letters
}

fn expand_word(n: usize, word: &[Letter]) -> Vec<usize> {
    word.iter().flat_map(|&l| expansion(n, l)).collect()
}

fn t_letters(word: &[usize]) -> Vec<Letter> {
    word.iter().map(|&j| Letter::T(j)).collect()
}

/// Compiles a valid dihedral chart into a valid permutation chart of the
/// same degree.
pub fn compile_chart(dihedral: &Chart) -> Result<Chart, CompileError> {
    if dihedral.alphabet != Alphabet::Dihedral {
        return Err(CompileError::NotDihedral);
    }
    dihedral.validate().map_err(CompileError::InvalidInput)?;
    let n = dihedral.degree;
    // Slice of dihedral letters mirrored during replay; the compiled
    // position of dihedral position p is the total expansion length below.
    let mut dslice: Vec<Letter> = Vec::new();
    let mut out: Vec<ChartEvent> = Vec::new();
    for ev in &dihedral.events {
        let base: usize = dslice[..ev.pos]
            .iter()
            .map(|&l| expansion(n, l).len())
            .sum();
        match &ev.kind {
            EventKind::Cup { letter } => {
                let w = expansion(n, *letter);
                for (d, &j) in w.iter().enumerate() {
                    out.push(ChartEvent::new(
                        base + d,
                        EventKind::Cup { letter: Letter::T(j) },
                    ));
                }
            }
            EventKind::Cap { letter } => {
                let w = expansion(n, *letter);
                for (d, &j) in w.iter().enumerate().rev() {
                    out.push(ChartEvent::new(
                        base + d,
                        EventKind::Cap { letter: Letter::T(j) },
                    ));
                }
            }
            EventKind::Black { letter, insert, vertex } => {
                out.push(ChartEvent::new(
                    base,
                    EventKind::Branch {
                        word: t_letters(&expansion(n, *letter)),
                        insert: *insert,
                        vertex: *vertex,
                    },
                ));
            }
            EventKind::Branch { word, insert, vertex } => {
                out.push(ChartEvent::new(
                    base,
                    EventKind::Branch {
                        word: t_letters(&expand_word(n, word)),
                        insert: *insert,
                        vertex: *vertex,
                    },
                ));
            }
            EventKind::Relator { before, after } => {
                let u = expand_word(n, before);
                let v = expand_word(n, after);
                out.extend(word_path(n, &u, &v, base));
            }
            EventKind::Crossing { .. } | EventKind::White { .. } => {
                unreachable!("validated dihedral chart cannot contain these")
            }
        }
        // Mirror the dihedral replay.
        let consumed = ev.before().len();
        let produced = ev.after();
        dslice.splice(ev.pos..ev.pos + consumed, produced);
    }
    let compiled = Chart::new(n, Alphabet::Permutation, out);
    compiled.validate().map_err(CompileError::InvalidOutput)?;
    Ok(compiled)
}

/// Resolves the branch vertex at `event_index` into simple black vertices.
pub fn resolve_branch(chart: &Chart, event_index: usize) -> Result<Chart, MoveError> {
    let pos = chart
        .events
        .get(event_index)
        .map(|e| e.pos)
        .unwrap_or_default();
    apply_move(
        chart,
        &MoveInstance::new(event_index, pos, MoveKind::BranchResolve),
    )
}

/// Resolves every branch vertex, leaving only simple black vertices.
pub fn resolve_all_branches(chart: &Chart) -> Result<Chart, MoveError> {
    let mut cur = chart.clone();
    loop {
        let Some(site) = cur
            .events
            .iter()
            .position(|e| matches!(e.kind, EventKind::Branch { .. }))
        else {
            return Ok(cur);
        };
        cur = resolve_branch(&cur, site)?;
    }
}

/// The conjugation index of a reflection: `e = x^{-j} r x^{j}` with
/// `j` reduced to the interval `[-(n-1)/2, (n-1)/2]`.
fn conjugation_index(e: &DihedralElement) -> isize {
    debug_assert!(e.is_reflection());
    let n = e.parameter() as isize;
    let rot = e.rotation_exponent() as isize;
    // rot = 2j mod n, so j = rot * (n+1)/2 mod n.
    let j = (rot * (n + 1) / 2).rem_euclid(n);
    if j <= (n - 1) / 2 {
        j
    } else {
        j - n
    }
}

/// Insert-events for one saw-tooth branch vertex at slice position `pos`:
/// reflections become a black `r`-vertex wrapped in conjugation bowls,
/// rotations a branch vertex carrying the reduced rotation word.
fn color_block(n: usize, color: &DihedralElement, pos: usize) -> Vec<ChartEvent> {
    let _ = n;
    if color.is_reflection() {
        let j = conjugation_index(color);
        let depth = j.unsigned_abs();
        let letter = if j >= 0 { Letter::x() } else { Letter::x_inv() };
        let mut events = Vec::new();
        for d in 0..depth {
            events.push(ChartEvent::new(pos + d, EventKind::Cup { letter }));
        }
        events.push(ChartEvent::new(
            pos + depth,
            EventKind::Black {
                letter: Letter::r(),
                insert: true,
                vertex: None,
            },
        ));
        events
    } else {
        let word = crate::straighten::dihedral_nf_letters(color);
        vec![ChartEvent::new(
            pos,
            EventKind::Branch {
                word,
                insert: true,
                vertex: None,
            },
        )]
    }
}

/// Builds the dihedral chart of a planar cover: one branch vertex per
/// color, reflections wrapped in conjugation bowls, interior trivialized by
/// relator vertices and caps. Requires `a_1 a_2 ... a_b = 1` with the
/// rightmost factor applied first.
pub fn build_planar_cover_chart(
    n: usize,
    colors: &[DihedralElement],
) -> Result<Chart, CompileError> {
    if colors.len() < 2 {
        return Err(CompileError::TooFewColors(colors.len()));
    }
    for (i, c) in colors.iter().enumerate() {
        if c.is_identity() {
            return Err(CompileError::IdentityColor(i));
        }
    }
    let mut product = DihedralElement::identity(n);
    for c in colors {
        product = product.multiply(c);
    }
    if !product.is_identity() {
        return Err(CompileError::ProductNotIdentity(product));
    }
    // Each block is inserted at the bottom of the slice, below everything
    // already present, so every vertex has a trivial prefix: the ordered
    // global monodromies are exactly a_1, ..., a_b and their composition is
    // the identity.
    let mut events = Vec::new();
    let mut slice: Vec<Letter> = Vec::new();
    for color in colors {
        for ev in color_block(n, color, 0) {
            let consumed = ev.before().len();
            let produced = ev.after();
            slice.splice(ev.pos..ev.pos + consumed, produced);
            events.push(ev);
        }
    }
    // Trivialize the interior.
    let (path, nf) = crate::straighten::straighten_dihedral(n, &slice, 0);
    debug_assert!(nf.is_empty(), "color product was checked to be trivial");
    events.extend(path);
    let chart = Chart::new(n, Alphabet::Dihedral, events);
    chart.validate().map_err(CompileError::InvalidOutput)?;
    Ok(chart)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{
        cover_invariants, global_dihedral_monodromies, invariants_from_monodromies,
        sheet_trace_oracle,
    };
    use crate::dihedral::parse_element;

    fn r_arc_chart(n: usize) -> Chart {
        Chart::new(
            n,
            Alphabet::Dihedral,
            vec![
                ChartEvent::new(
                    0,
                    EventKind::Black { letter: Letter::r(), insert: true, vertex: None },
                ),
                ChartEvent::new(
                    0,
                    EventKind::Black { letter: Letter::r(), insert: false, vertex: None },
                ),
            ],
        )
    }

    #[test]
    fn empty_chart_compiles_to_empty() {
        let d = Chart::empty(5, Alphabet::Dihedral);
        let c = compile_chart(&d).unwrap();
        assert!(c.events.is_empty());
        assert_eq!(c.alphabet, Alphabet::Permutation);
    }

    #[test]
    fn single_r_arc_compiles_to_three_spheres() {
        let compiled = compile_chart(&r_arc_chart(5)).unwrap();
        let branch = compiled.branch_points();
        assert_eq!(branch.len(), 2);
        let inv = cover_invariants(&compiled).unwrap();
        assert_eq!(inv.components(), 3);
        assert_eq!(inv.euler_total, 6);
        assert_eq!(sheet_trace_oracle(&compiled).unwrap(), inv);
    }

    #[test]
    fn r_arc_in_d7_has_four_components() {
        // Orbits of (24)(15)(67): {1,5}, {2,4}, {3}, {6,7}.
        let compiled = compile_chart(&r_arc_chart(7)).unwrap();
        let inv = cover_invariants(&compiled).unwrap();
        assert_eq!(inv.components(), 4);
        assert_eq!(sheet_trace_oracle(&compiled).unwrap(), inv);
    }

    #[test]
    fn compilation_matches_pushed_monodromy_data() {
        let charts = vec![
            r_arc_chart(5),
            Chart::new(
                5,
                Alphabet::Dihedral,
                vec![
                    ChartEvent::new(0, EventKind::Cup { letter: Letter::x() }),
                    ChartEvent::new(
                        1,
                        EventKind::Black { letter: Letter::r(), insert: true, vertex: None },
                    ),
                    ChartEvent::new(
                        1,
                        EventKind::Black { letter: Letter::r(), insert: false, vertex: None },
                    ),
                    ChartEvent::new(0, EventKind::Cap { letter: Letter::x() }),
                ],
            ),
        ];
        for d in charts {
            let pushed: Vec<crate::perm::Permutation> = global_dihedral_monodromies(&d)
                .unwrap()
                .iter()
                .map(|e| e.psi())
                .collect();
            let expected = invariants_from_monodromies(d.degree, &pushed);
            let compiled = compile_chart(&d).unwrap();
            let got = cover_invariants(&compiled).unwrap();
            assert_eq!(got.component_orbits, expected.component_orbits);
            assert_eq!(got.euler_total, expected.euler_total);
            assert_eq!(sheet_trace_oracle(&compiled).unwrap(), got);
        }
    }

    #[test]
    fn resolve_branch_keeps_single_letters() {
        let chart = crate::moves::word_wall(5, Alphabet::Permutation, &[Letter::T(2)]);
        let resolved = resolve_branch(&chart, 0).unwrap();
        // A single letter is already simple: one black vertex, no scaffold.
        let blacks = resolved
            .events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::Black { .. }))
            .count();
        assert_eq!(blacks, 1);
        assert_eq!(resolved.events.len(), 2);
    }

    #[test]
    fn resolve_all_preserves_invariants_exactly() {
        let compiled = compile_chart(&r_arc_chart(5)).unwrap();
        let before = cover_invariants(&compiled).unwrap();
        let resolved = resolve_all_branches(&compiled).unwrap();
        let after = cover_invariants(&resolved).unwrap();
        assert_eq!(after.component_orbits, before.component_orbits);
        assert_eq!(after.euler_total, before.euler_total);
        // psi(r) = (13)(45) resolves into two simple points per vertex.
        let blacks = resolved
            .events
            .iter()
            .filter(|e| matches!(e.kind, EventKind::Black { .. }))
            .count();
        assert_eq!(blacks, 4);
        assert_eq!(sheet_trace_oracle(&resolved).unwrap().euler_total, 6);
    }

    #[test]
    fn planar_cover_rr() {
        let r = DihedralElement::r(5);
        let chart = build_planar_cover_chart(5, &[r, r]).unwrap();
        assert!(chart.is_valid());
        assert_eq!(chart.branch_points().len(), 2);
        let gens = global_dihedral_monodromies(&chart).unwrap();
        let mut acc = DihedralElement::identity(5);
        for g in &gens {
            acc = acc.multiply(g);
        }
        assert!(acc.is_identity());
        assert_eq!(gens, vec![r, r]);
    }

    #[test]
    fn planar_cover_catproduct_colors() {
        // r * (x r x^{-1}) * x^2 = 1
        let r = DihedralElement::r(5);
        let x = DihedralElement::x(5);
        let xrx = x.multiply(&r).multiply(&x.inverse());
        let colors = [r, xrx, x.pow(2)];
        let chart = build_planar_cover_chart(5, &colors).unwrap();
        assert!(chart.is_valid());
        assert_eq!(chart.branch_points().len(), 3);
        let gens = global_dihedral_monodromies(&chart).unwrap();
        let mut acc = DihedralElement::identity(5);
        for g in &gens {
            acc = acc.multiply(g);
        }
        assert!(acc.is_identity());
        // Ordered monodromies are the colors themselves.
        assert_eq!(gens, colors.to_vec());
        // Compiled cover data matches the psi-pushed monodromies.
        let compiled = compile_chart(&chart).unwrap();
        let pushed: Vec<crate::perm::Permutation> = gens.iter().map(|e| e.psi()).collect();
        let expected = invariants_from_monodromies(5, &pushed);
        let got = cover_invariants(&compiled).unwrap();
        assert_eq!(got.component_orbits, expected.component_orbits);
        assert_eq!(got.euler_total, expected.euler_total);
    }

    #[test]
    fn planar_cover_cyclic_colors() {
        let x = DihedralElement::x(5);
        let colors = vec![x; 5];
        let chart = build_planar_cover_chart(5, &colors).unwrap();
        assert!(chart.is_valid());
        let compiled = compile_chart(&chart).unwrap();
        let inv = cover_invariants(&compiled).unwrap();
        // The orbit of <(15432)> is transitive: one component.
        assert_eq!(inv.components(), 1);
        assert_eq!(sheet_trace_oracle(&compiled).unwrap(), inv);
    }

    #[test]
    fn planar_cover_rejects_bad_input() {
        let r = DihedralElement::r(5);
        let x = DihedralElement::x(5);
        assert!(matches!(
            build_planar_cover_chart(5, &[r, x]),
            Err(CompileError::ProductNotIdentity(_))
        ));
        assert!(matches!(
            build_planar_cover_chart(5, &[r]),
            Err(CompileError::TooFewColors(1))
        ));
        assert!(matches!(
            build_planar_cover_chart(5, &[r, DihedralElement::identity(5), r]),
            Err(CompileError::IdentityColor(1))
        ));
    }

    #[test]
    fn conjugation_indices() {
        assert_eq!(conjugation_index(&parse_element(5, "r").unwrap()), 0);
        assert_eq!(conjugation_index(&parse_element(5, "r x^2").unwrap()), 1);
        assert_eq!(conjugation_index(&parse_element(5, "r x^4").unwrap()), 2);
        assert_eq!(conjugation_index(&parse_element(5, "r x").unwrap()), -2);
        assert_eq!(conjugation_index(&parse_element(5, "r x^3").unwrap()), -1);
    }
}
