//! Charts as validated Morse-style event movies over a disk.
//!
//! A chart of degree `n` is an ordered list of events, one per level. Each
//! event rewrites the vertical slice word at a position: cups and caps create
//! and cancel adjacent inverse pairs, crossings commute distant generators,
//! white vertices apply the braid relation, black and branch vertices insert
//! or delete local monodromy words, and (for the dihedral alphabet) relator
//! vertices apply one of the relations `r^2 = x^n = (rx)^2 = 1`. The slice
//! before level 1 and after the last level must be empty.

use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::dihedral::DihedralElement;
use crate::perm::{Permutation, TranspositionWord, MAX_DEGREE};

/// One edge label crossing a slice. Permutation charts use `T(j)` for the
/// generator `t_j`; dihedral charts use `R`/`X` with an orientation flag
/// (`inv` reads the edge against its orientation).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Letter {
    T(usize),
    R { inv: bool },
    X { inv: bool },
}

impl Letter {
    pub fn r() -> Letter {
        Letter::R { inv: false }
    }

    pub fn x() -> Letter {
        Letter::X { inv: false }
    }

    pub fn r_inv() -> Letter {
        Letter::R { inv: true }
    }

    pub fn x_inv() -> Letter {
        Letter::X { inv: true }
    }

    pub fn inverse(self) -> Letter {
        match self {
            Letter::T(j) => Letter::T(j),
            Letter::R { inv } => Letter::R { inv: !inv },
            Letter::X { inv } => Letter::X { inv: !inv },
        }
    }

    pub fn is_permutation(self) -> bool {
        matches!(self, Letter::T(_))
    }

    pub fn is_dihedral(self) -> bool {
        !self.is_permutation()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::T(j) => write!(f, "{j}"),
            Letter::R { inv: false } => write!(f, "r"),
            Letter::R { inv: true } => write!(f, "r-"),
            Letter::X { inv: false } => write!(f, "x"),
            Letter::X { inv: true } => write!(f, "x-"),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Letter::T(j) => s.serialize_u64(*j as u64),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Letter, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(j) => Ok(Letter::T(j as usize)),
            Raw::Text(t) => match t.as_str() {
                "r" => Ok(Letter::r()),
                "r-" => Ok(Letter::r_inv()),
                "x" => Ok(Letter::x()),
                "x-" => Ok(Letter::x_inv()),
                other => Err(D::Error::custom(format!("unknown letter {other:?}"))),
            },
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    Permutation,
    Dihedral,
}

/// The local rewrite carried by one event. `pos` lives on [`ChartEvent`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EventKind {
    /// Inserts the pair `(letter, letter^{-1})`.
    Cup { letter: Letter },
    /// Deletes the adjacent pair `(letter, letter^{-1})`.
    Cap { letter: Letter },
    /// `(a, b) -> (b, a)` for distant generators, `|a - b| > 1`.
    Crossing { a: usize, b: usize },
    /// `(a, b, a) -> (b, a, b)` for neighbours, `|a - b| = 1`.
    White { a: usize, b: usize },
    /// Inserts or deletes a single letter; a simple branch point.
    Black {
        letter: Letter,
        insert: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        vertex: Option<u32>,
    },
    /// Inserts or deletes a whole word; a non-simple branch point.
    Branch {
        word: Vec<Letter>,
        insert: bool,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        vertex: Option<u32>,
    },
    /// Dihedral relator vertex; rewrites `before` to `after`, with the
    /// cyclic boundary word a rotation of `r^2`, `x^n` or `(rx)^2` up to
    /// inversion.
    Relator {
        before: Vec<Letter>,
        after: Vec<Letter>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ChartEvent {
    pub pos: usize,
    #[serde(flatten)]
    pub kind: EventKind,
}

impl ChartEvent {
    pub fn new(pos: usize, kind: EventKind) -> ChartEvent {
        ChartEvent { pos, kind }
    }

    /// Letters consumed at `pos`.
    pub fn before(&self) -> Vec<Letter> {
        match &self.kind {
            EventKind::Cup { .. } => vec![],
            EventKind::Cap { letter } => vec![*letter, letter.inverse()],
            EventKind::Crossing { a, b } => vec![Letter::T(*a), Letter::T(*b)],
            EventKind::White { a, b } => vec![Letter::T(*a), Letter::T(*b), Letter::T(*a)],
            EventKind::Black { letter, insert, .. } => {
                if *insert {
                    vec![]
                } else {
                    vec![*letter]
                }
            }
            EventKind::Branch { word, insert, .. } => {
                if *insert {
                    vec![]
                } else {
                    word.clone()
                }
            }
            EventKind::Relator { before, .. } => before.clone(),
        }
    }

    /// Letters produced at `pos`.
    pub fn after(&self) -> Vec<Letter> {
        match &self.kind {
            EventKind::Cup { letter } => vec![*letter, letter.inverse()],
            EventKind::Cap { .. } => vec![],
            EventKind::Crossing { a, b } => vec![Letter::T(*b), Letter::T(*a)],
            EventKind::White { a, b } => vec![Letter::T(*b), Letter::T(*a), Letter::T(*b)],
            EventKind::Black { letter, insert, .. } => {
                if *insert {
                    vec![*letter]
                } else {
                    vec![]
                }
            }
            EventKind::Branch { word, insert, .. } => {
                if *insert {
                    word.clone()
                } else {
                    vec![]
                }
            }
            EventKind::Relator { after, .. } => after.clone(),
        }
    }

    /// The time-reversed event at the same position.
    pub fn invert(&self) -> ChartEvent {
        let kind = match &self.kind {
            EventKind::Cup { letter } => EventKind::Cap { letter: *letter },
            EventKind::Cap { letter } => EventKind::Cup { letter: *letter },
            EventKind::Crossing { a, b } => EventKind::Crossing { a: *b, b: *a },
            EventKind::White { a, b } => EventKind::White { a: *b, b: *a },
            EventKind::Black { letter, insert, vertex } => EventKind::Black {
                letter: *letter,
                insert: !insert,
                vertex: *vertex,
            },
            EventKind::Branch { word, insert, vertex } => EventKind::Branch {
                word: word.clone(),
                insert: !insert,
                vertex: *vertex,
            },
            EventKind::Relator { before, after } => EventKind::Relator {
                before: after.clone(),
                after: before.clone(),
            },
        };
        ChartEvent { pos: self.pos, kind }
    }

    pub fn is_branch_like(&self) -> bool {
        matches!(
            self.kind,
            EventKind::Black { .. } | EventKind::Branch { .. }
        )
    }

    /// Local monodromy word of a branch-like event.
    pub fn branch_word(&self) -> Option<Vec<Letter>> {
        match &self.kind {
            EventKind::Black { letter, .. } => Some(vec![*letter]),
            EventKind::Branch { word, .. } => Some(word.clone()),
            _ => None,
        }
    }

    pub fn vertex_id(&self) -> Option<u32> {
        match &self.kind {
            EventKind::Black { vertex, .. } | EventKind::Branch { vertex, .. } => *vertex,
            _ => None,
        }
    }

    pub fn is_insert(&self) -> Option<bool> {
        match &self.kind {
            EventKind::Black { insert, .. } | EventKind::Branch { insert, .. } => Some(*insert),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub level: usize,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "level {}: {}", self.level, self.reason)
    }
}

#[derive(Debug, Error)]
pub enum ChartError {
    #[error("invalid chart: {0}")]
    Invalid(String),
    #[error("level {0} out of range 0..={1}")]
    LevelOutOfRange(usize, usize),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// A degree-`n` event movie. Events are stored in level order; level `k`
/// is `events[k - 1]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Chart {
    pub degree: usize,
    pub alphabet: Alphabet,
    pub events: Vec<ChartEvent>,
}

impl Chart {
    pub fn new(degree: usize, alphabet: Alphabet, events: Vec<ChartEvent>) -> Chart {
        Chart {
            degree,
            alphabet,
            events,
        }
    }

    pub fn empty(degree: usize, alphabet: Alphabet) -> Chart {
        Chart::new(degree, alphabet, Vec::new())
    }

    pub fn levels(&self) -> usize {
        self.events.len()
    }

    fn letter_ok(&self, l: Letter) -> Result<(), String> {
        match (self.alphabet, l) {
            (Alphabet::Permutation, Letter::T(j)) => {
                if j >= 1 && j < self.degree {
                    Ok(())
                } else {
                    Err(format!("letter {j} out of range 1..={}", self.degree - 1))
                }
            }
            (Alphabet::Permutation, other) => {
                Err(format!("dihedral letter {other} in a permutation chart"))
            }
            (Alphabet::Dihedral, Letter::T(j)) => {
                Err(format!("permutation letter {j} in a dihedral chart"))
            }
            (Alphabet::Dihedral, _) => Ok(()),
        }
    }

    fn event_ok(&self, ev: &ChartEvent, slice: &[Letter]) -> Result<(), String> {
        for l in ev.before().iter().chain(ev.after().iter()) {
            self.letter_ok(*l)?;
        }
        match &ev.kind {
            EventKind::Crossing { a, b } => {
                if self.alphabet != Alphabet::Permutation {
                    return Err("crossing events need the permutation alphabet".into());
                }
                if a.abs_diff(*b) < 2 {
                    return Err(format!("crossing letters {a},{b} are not distant"));
                }
            }
            EventKind::White { a, b } => {
                if self.alphabet != Alphabet::Permutation {
                    return Err("white vertices need the permutation alphabet".into());
                }
                if a.abs_diff(*b) != 1 {
                    return Err(format!("white vertex letters {a},{b} are not adjacent"));
                }
            }
            EventKind::Branch { word, .. } => {
                if word.is_empty() {
                    return Err("branch vertex carries an empty word".into());
                }
            }
            EventKind::Relator { before, after } => {
                if self.alphabet != Alphabet::Dihedral {
                    return Err("relator vertices need the dihedral alphabet".into());
                }
                relator_boundary_ok(self.degree, before, after)?;
            }
            _ => {}
        }
        let need = ev.before();
        if ev.pos + need.len() > slice.len() {
            return Err(format!(
                "window {}..{} exceeds slice of length {}",
                ev.pos,
                ev.pos + need.len(),
                slice.len()
            ));
        }
        if slice[ev.pos..ev.pos + need.len()] != need[..] {
            return Err(format!(
                "slice {:?} does not match required {:?} at {}",
                &slice[ev.pos..ev.pos + need.len()],
                need,
                ev.pos
            ));
        }
        Ok(())
    }

    /// Applies one event to a slice without validity bookkeeping. The caller
    /// must have checked `event_ok`.
    fn splice(ev: &ChartEvent, slice: &mut Vec<Letter>) {
        let before = ev.before().len();
        let after = ev.after();
        slice.splice(ev.pos..ev.pos + before, after);
    }

    /// Checks every event precondition and that the final slice is empty.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if self.degree == 0 || self.degree > MAX_DEGREE {
            violations.push(Violation {
                level: 0,
                reason: format!("degree {} out of range", self.degree),
            });
            return Err(violations);
        }
        if self.alphabet == Alphabet::Dihedral && (self.degree < 3 || self.degree % 2 == 0) {
            violations.push(Violation {
                level: 0,
                reason: format!("dihedral charts need odd degree >= 3, got {}", self.degree),
            });
            return Err(violations);
        }
        let mut slice: Vec<Letter> = Vec::new();
        for (i, ev) in self.events.iter().enumerate() {
            match self.event_ok(ev, &slice) {
                Ok(()) => Chart::splice(ev, &mut slice),
                Err(reason) => {
                    violations.push(Violation {
                        level: i + 1,
                        reason,
                    });
                    return Err(violations);
                }
            }
        }
        if !slice.is_empty() {
            violations.push(Violation {
                level: self.events.len(),
                reason: format!("final slice {slice:?} is not empty"),
            });
        }
        if let Err(reason) = self.check_vertex_pairing() {
            violations.push(Violation { level: 0, reason });
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    fn check_vertex_pairing(&self) -> Result<(), String> {
        use std::collections::HashMap;
        let mut seen: HashMap<u32, (usize, Vec<Letter>, bool)> = HashMap::new();
        let mut counts: HashMap<u32, usize> = HashMap::new();
        for (i, ev) in self.events.iter().enumerate() {
            if let Some(id) = ev.vertex_id() {
                *counts.entry(id).or_insert(0) += 1;
                let word = ev.branch_word().unwrap_or_default();
                let insert = ev.is_insert().unwrap_or(false);
                if let Some((j, w, ins)) = seen.get(&id) {
                    if *w != word {
                        return Err(format!(
                            "vertex {id} pairs events {j} and {i} with different words"
                        ));
                    }
                    if *ins == insert {
                        return Err(format!(
                            "vertex {id} pairs two {} events",
                            if insert { "insert" } else { "delete" }
                        ));
                    }
                } else {
                    seen.insert(id, (i, word, insert));
                }
            }
        }
        for (id, c) in counts {
            if c != 2 {
                return Err(format!("vertex {id} is referenced {c} times, expected 2"));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Slice after replaying events `1..=level`; level 0 is the empty slice.
    pub fn slice_at(&self, level: usize) -> Result<Vec<Letter>, ChartError> {
        if level > self.events.len() {
            return Err(ChartError::LevelOutOfRange(level, self.events.len()));
        }
        let mut slice = Vec::new();
        for ev in &self.events[..level] {
            if let Err(reason) = self.event_ok(ev, &slice) {
                return Err(ChartError::Invalid(reason));
            }
            Chart::splice(ev, &mut slice);
        }
        Ok(slice)
    }

    /// All `levels + 1` slices of a valid chart.
    pub fn slices(&self) -> Result<Vec<Vec<Letter>>, ChartError> {
        let mut out = vec![Vec::new()];
        let mut slice: Vec<Letter> = Vec::new();
        for ev in &self.events {
            if let Err(reason) = self.event_ok(ev, &slice) {
                return Err(ChartError::Invalid(reason));
            }
            Chart::splice(ev, &mut slice);
            out.push(slice.clone());
        }
        Ok(out)
    }

    /// Recomputed width bound: the longest slice.
    pub fn width(&self) -> Result<usize, ChartError> {
        Ok(self.slices()?.iter().map(Vec::len).max().unwrap_or(0))
    }

    /// One entry per geometric branch vertex: events tied by a shared vertex
    /// id count once.
    pub fn branch_points(&self) -> Vec<BranchPoint> {
        let mut out = Vec::new();
        let mut seen_ids = std::collections::HashSet::new();
        for (i, ev) in self.events.iter().enumerate() {
            if !ev.is_branch_like() {
                continue;
            }
            if let Some(id) = ev.vertex_id() {
                if !seen_ids.insert(id) {
                    continue;
                }
            }
            out.push(BranchPoint {
                level: i + 1,
                pos: ev.pos,
                word: ev.branch_word().expect("branch-like event"),
                insert: ev.is_insert().expect("branch-like event"),
                vertex: ev.vertex_id(),
            });
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("chart serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("chart serializes")
    }

    pub fn from_json(s: &str) -> Result<Chart, ChartError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// A geometric branch vertex of the chart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchPoint {
    pub level: usize,
    pub pos: usize,
    pub word: Vec<Letter>,
    pub insert: bool,
    pub vertex: Option<u32>,
}

/// Evaluates a permutation slice bottom-first.
pub fn slice_permutation(n: usize, slice: &[Letter]) -> Permutation {
    let letters: Vec<usize> = slice
        .iter()
        .map(|l| match l {
            Letter::T(j) => *j,
            other => panic!("dihedral letter {other} in permutation slice"),
        })
        .collect();
    TranspositionWord::new(n, letters)
        .expect("valid slice word")
        .evaluate()
}

/// Evaluates a dihedral slice bottom-first.
pub fn slice_dihedral(n: usize, slice: &[Letter]) -> DihedralElement {
    let mut acc = DihedralElement::identity(n);
    for l in slice {
        let g = match l {
            Letter::R { .. } => DihedralElement::r(n),
            Letter::X { inv: false } => DihedralElement::x(n),
            Letter::X { inv: true } => DihedralElement::x(n).inverse(),
            Letter::T(j) => panic!("permutation letter {j} in dihedral slice"),
        };
        acc = g.multiply(&acc);
    }
    acc
}

/// Evaluates any slice into `Sigma_n`, sending dihedral letters through `psi`.
pub fn slice_psi(n: usize, slice: &[Letter]) -> Permutation {
    match slice.first() {
        Some(l) if l.is_dihedral() => slice_dihedral(n, slice).psi(),
        _ => {
            if slice.iter().all(|l| l.is_permutation()) {
                slice_permutation(n, slice)
            } else {
                slice_dihedral(n, slice).psi()
            }
        }
    }
}

fn freely_reduce_cyclic(word: &[Letter]) -> Vec<Letter> {
    let mut stack: Vec<Letter> = Vec::new();
    for &l in word {
        if stack.last().copied() == Some(l.inverse()) && stack.last().copied() != Some(l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    while stack.len() >= 2 {
        let first = stack[0];
        let last = *stack.last().unwrap();
        if first == last.inverse() && first != last {
            stack.remove(0);
            stack.pop();
        } else {
            break;
        }
    }
    stack
}

/// Checks that `before -> after` is dual to a relator disk: the cyclic
/// boundary word `before · reverse(after)^{-1}` must be a rotation of
/// `r r`, `x^n` or `r x r x` up to inversion and up to the sign freedom the
/// group allows (`r = r^{-1}`, so the two `r`-signs in a valence-four vertex
/// are free while its two `x`-signs must agree).
pub fn relator_boundary_ok(
    n: usize,
    before: &[Letter],
    after: &[Letter],
) -> Result<(), String> {
    let mut boundary: Vec<Letter> = before.to_vec();
    boundary.extend(after.iter().rev().map(|l| l.inverse()));
    let cyc = freely_reduce_cyclic(&boundary);
    let rs = cyc.iter().filter(|l| matches!(l, Letter::R { .. })).count();
    let xs = cyc.iter().filter(|l| matches!(l, Letter::X { .. })).count();
    let ok = match (cyc.len(), rs, xs) {
        (2, 2, 0) => {
            // r r or r- r-
            cyc[0] == cyc[1]
        }
        (len, 0, k) if len == n && k == n => {
            cyc.iter().all(|l| *l == cyc[0])
        }
        (4, 2, 2) => {
            let alternating = matches!(cyc[0], Letter::R { .. })
                && matches!(cyc[1], Letter::X { .. })
                && matches!(cyc[2], Letter::R { .. })
                && matches!(cyc[3], Letter::X { .. })
                || matches!(cyc[0], Letter::X { .. })
                    && matches!(cyc[1], Letter::R { .. })
                    && matches!(cyc[2], Letter::X { .. })
                    && matches!(cyc[3], Letter::R { .. });
            let x_signs: Vec<bool> = cyc
                .iter()
                .filter_map(|l| match l {
                    Letter::X { inv } => Some(*inv),
                    _ => None,
                })
                .collect();
            alternating && x_signs[0] == x_signs[1]
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "boundary {:?} of relator vertex is not a dihedral relator",
            cyc
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn t(j: usize) -> Letter {
        Letter::T(j)
    }

    /// The resolved movie of the figure with four simple branch points:
    /// id => (12)(12) => (12)(23)(12)(45) => (12)(12) => id.
    pub fn submarine_chart() -> Chart {
        Chart::new(
            5,
            Alphabet::Permutation,
            vec![
                ChartEvent::new(0, EventKind::Cup { letter: t(1) }),
                ChartEvent::new(
                    1,
                    EventKind::Black {
                        letter: t(2),
                        insert: true,
                        vertex: None,
                    },
                ),
                ChartEvent::new(
                    3,
                    EventKind::Black {
                        letter: t(4),
                        insert: true,
                        vertex: None,
                    },
                ),
                ChartEvent::new(
                    1,
                    EventKind::Black {
                        letter: t(2),
                        insert: false,
                        vertex: None,
                    },
                ),
                ChartEvent::new(
                    2,
                    EventKind::Black {
                        letter: t(4),
                        insert: false,
                        vertex: None,
                    },
                ),
                ChartEvent::new(0, EventKind::Cap { letter: t(1) }),
            ],
        )
    }

    #[test]
    fn empty_chart_is_valid() {
        assert!(Chart::empty(5, Alphabet::Permutation).is_valid());
    }

    #[test]
    fn submarine_movie_validates() {
        let c = submarine_chart();
        assert!(c.validate().is_ok());
        assert_eq!(c.width().unwrap(), 4);
        // Middle slice evaluates to (13)(45).
        let mid = c.slice_at(3).unwrap();
        assert_eq!(mid, vec![t(1), t(2), t(1), t(4)]);
        assert_eq!(
            slice_permutation(5, &mid),
            parse_permutation(5, "(1 3)(4 5)").unwrap()
        );
    }

    #[test]
    fn cap_on_unequal_letters_is_a_violation() {
        let c = Chart::new(
            5,
            Alphabet::Permutation,
            vec![
                ChartEvent::new(0, EventKind::Cup { letter: t(1) }),
                ChartEvent::new(0, EventKind::Cap { letter: t(2) }),
            ],
        );
        let violations = c.validate().unwrap_err();
        assert_eq!(violations[0].level, 2);
    }

    #[test]
    fn nonempty_final_slice_is_a_violation() {
        let c = Chart::new(
            5,
            Alphabet::Permutation,
            vec![ChartEvent::new(
                0,
                EventKind::Black {
                    letter: t(1),
                    insert: true,
                    vertex: None,
                },
            )],
        );
        assert!(!c.is_valid());
    }

    #[test]
    fn slice_at_bounds() {
        let c = submarine_chart();
        assert_eq!(c.slice_at(0).unwrap(), Vec::<Letter>::new());
        assert_eq!(c.slice_at(6).unwrap(), Vec::<Letter>::new());
        assert!(c.slice_at(7).is_err());
    }

    #[test]
    fn branch_points_of_submarine() {
        let points = submarine_chart().branch_points();
        assert_eq!(points.len(), 4);
        let views: Vec<Permutation> = points
            .iter()
            .map(|bp| slice_permutation(5, &bp.word))
            .collect();
        assert_eq!(views[0], parse_permutation(5, "(2 3)").unwrap());
        assert_eq!(views[1], parse_permutation(5, "(4 5)").unwrap());
    }

    #[test]
    fn branch_pair_counts_once() {
        let word = vec![t(1), t(2), t(3), t(4)];
        let c = Chart::new(
            5,
            Alphabet::Permutation,
            vec![
                ChartEvent::new(
                    0,
                    EventKind::Branch {
                        word: word.clone(),
                        insert: true,
                        vertex: Some(7),
                    },
                ),
                ChartEvent::new(
                    0,
                    EventKind::Branch {
                        word: word.clone(),
                        insert: false,
                        vertex: Some(7),
                    },
                ),
            ],
        );
        assert!(c.is_valid());
        assert_eq!(c.branch_points().len(), 1);
        assert_eq!(c.branch_points()[0].word, word);
    }

    #[test]
    fn dihedral_relator_vertices() {
        // r r -> empty (valence two, both edges inward)
        assert!(relator_boundary_ok(5, &[Letter::r(), Letter::r()], &[]).is_ok());
        // x x x x x -> empty (valence five)
        assert!(relator_boundary_ok(5, &[Letter::x(); 5], &[]).is_ok());
        // x x -> x- x- x- (valence five, mixed sides)
        assert!(relator_boundary_ok(5, &[Letter::x(); 2], &[Letter::x_inv(); 3]).is_ok());
        // (r, x) -> (x-, r): the relation x r = r x^{-1}
        assert!(relator_boundary_ok(
            5,
            &[Letter::r(), Letter::x()],
            &[Letter::x_inv(), Letter::r()]
        )
        .is_ok());
        // (x-, r) -> (r, x-) would need unequal x-signs: illegal
        assert!(relator_boundary_ok(
            5,
            &[Letter::x_inv(), Letter::r()],
            &[Letter::r(), Letter::x_inv()]
        )
        .is_err());
        // r into r out is not a vertex at all
        assert!(relator_boundary_ok(5, &[Letter::r()], &[Letter::r()]).is_err());
    }

    #[test]
    fn dihedral_slice_evaluation() {
        let slice = vec![Letter::x(), Letter::r(), Letter::x_inv()];
        let e = slice_dihedral(5, &slice);
        // x^{-1} r x = r x^2
        assert_eq!(e, crate::dihedral::parse_element(5, "r x^2").unwrap());
    }

    #[test]
    fn event_inversion_round_trips() {
        for ev in submarine_chart().events {
            assert_eq!(ev.invert().invert(), ev);
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let c = submarine_chart();
        let json = c.to_json();
        let back = Chart::from_json(&json).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn dihedral_chart_json_round_trip() {
        let c = Chart::new(
            5,
            Alphabet::Dihedral,
            vec![
                ChartEvent::new(0, EventKind::Cup { letter: Letter::x() }),
                ChartEvent::new(
                    1,
                    EventKind::Black {
                        letter: Letter::r(),
                        insert: true,
                        vertex: None,
                    },
                ),
                ChartEvent::new(
                    1,
                    EventKind::Black {
                        letter: Letter::r(),
                        insert: false,
                        vertex: None,
                    },
                ),
                ChartEvent::new(0, EventKind::Cap { letter: Letter::x() }),
            ],
        );
        assert!(c.validate().is_ok());
        let back = Chart::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}
