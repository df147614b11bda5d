//! Chart movies: sequences of charts with certified transitions, encoding
//! folded branched covers of the 3-sphere as latitudinal slices.
//!
//! Every transition carries the move sequence that rewrites one frame into
//! the next together with handle annotations; across a transition the Euler
//! characteristic changes by `-2 * one_handles + 2 * two_handles`. The
//! cyclic pipeline sweeps a braid closure with cyclic branch-point pairs
//! and saddles at the crossings; the dihedral pipeline starts from aura
//! loops and arc blocks born from a Fox coloring and joins under-arc
//! vertices crossing by crossing. Two-strand torus braids get the full
//! scripted sweep whose middle frames keep exactly four branch vertices.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chart::{Alphabet, Chart, ChartError, Letter};
use crate::cover::{
    cover_invariants, global_dihedral_monodromies, invariants_from_monodromies, CoverInvariants,
};
use crate::knot::{DihedralColoring, DiagramSpec, KnotDiagram};
use crate::moves::{
    apply_move, MoveError, MoveInstance, MoveKind, SequenceError,
};
use crate::orient::attempt_orientation;
use crate::perm::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MovieStatus {
    Complete,
    SimplificationIncomplete,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transition {
    pub moves: Vec<MoveInstance>,
    pub one_handles: u32,
    pub two_handles: u32,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChartMovie {
    pub frames: Vec<Chart>,
    pub transitions: Vec<Transition>,
    pub status: MovieStatus,
}

impl ChartMovie {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("movie serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("movie serializes")
    }

    pub fn from_json(s: &str) -> Result<ChartMovie, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Content frames: everything strictly between the empty flanks.
    pub fn content_frames(&self) -> &[Chart] {
        let mut lo = 0;
        let mut hi = self.frames.len();
        if self.frames.first().map(|f| f.events.is_empty()) == Some(true) {
            lo = 1;
        }
        if self.frames.last().map(|f| f.events.is_empty()) == Some(true) && hi > lo {
            hi -= 1;
        }
        &self.frames[lo..hi]
    }
}

#[derive(Debug, Error)]
pub enum MovieError {
    #[error("movie construction needs a braid-closure diagram")]
    NotABraid,
    #[error("coloring does not fit the diagram")]
    ColoringMismatch,
    #[error("cyclic movies need n >= 2, got {0}")]
    BadDegree(usize),
    #[error("frame {0} invalid: {1:?}")]
    FrameInvalid(usize, Vec<crate::chart::Violation>),
    #[error("transition {index}: {source}")]
    Transition {
        index: usize,
        #[source]
        source: SequenceError,
    },
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Invariants of one frame; dihedral frames are measured through their
/// psi-pushed monodromy data.
pub fn frame_invariants(chart: &Chart) -> Result<CoverInvariants, ChartError> {
    match chart.alphabet {
        Alphabet::Permutation => cover_invariants(chart),
        Alphabet::Dihedral => {
            let gens: Vec<Permutation> = global_dihedral_monodromies(chart)?
                .iter()
                .map(|e| e.psi())
                .collect();
            Ok(invariants_from_monodromies(chart.degree, &gens))
        }
    }
}

// ---------------------------------------------------------------------------
// Builder
// ---------------------------------------------------------------------------

struct Builder {
    frames: Vec<Chart>,
    transitions: Vec<Transition>,
    cur: Chart,
    pending: Vec<MoveInstance>,
}

impl Builder {
    fn new(degree: usize, alphabet: Alphabet) -> Builder {
        let empty = Chart::empty(degree, alphabet);
        Builder {
            frames: vec![empty.clone()],
            transitions: Vec::new(),
            cur: empty,
            pending: Vec::new(),
        }
    }

    fn play(&mut self, m: MoveInstance) -> Result<(), MovieError> {
        self.cur = apply_move(&self.cur, &m)?;
        self.pending.push(m);
        Ok(())
    }

    /// Closes the pending moves into a transition and records the frame.
    fn snapshot(&mut self, note: &str) -> Result<(), MovieError> {
        let prev = frame_invariants(self.frames.last().expect("frames nonempty"))?;
        let next = frame_invariants(&self.cur)?;
        let delta = next.euler_total - prev.euler_total;
        let (one, two) = if delta <= 0 {
            ((-delta / 2) as u32, 0)
        } else {
            (0, (delta / 2) as u32)
        };
        self.transitions.push(Transition {
            moves: std::mem::take(&mut self.pending),
            one_handles: one,
            two_handles: two,
            note: note.to_string(),
        });
        self.frames.push(self.cur.clone());
        Ok(())
    }

    fn finish(self, status: MovieStatus) -> ChartMovie {
        ChartMovie {
            frames: self.frames,
            transitions: self.transitions,
            status,
        }
    }
}

// ---------------------------------------------------------------------------
// Cyclic movies
// ---------------------------------------------------------------------------

fn cyclic_words(n: usize, count: usize) -> Vec<Vec<Letter>> {
    let up: Vec<Letter> = (1..n).map(Letter::T).collect();
    let down: Vec<Letter> = (1..n).rev().map(Letter::T).collect();
    (0..count)
        .map(|i| if i % 2 == 0 { up.clone() } else { down.clone() })
        .collect()
}

/// Folds the n-fold cyclic branched cover of a braid closure into a movie:
/// one branch-point pair per Seifert circle born and dying at the circle's
/// extremes, and a saddle pair at every braid letter.
pub fn build_cyclic_movie(diagram: &KnotDiagram, n: usize) -> Result<ChartMovie, MovieError> {
    if n < 2 {
        return Err(MovieError::BadDegree(n));
    }
    let DiagramSpec::Braid { strands, word } = &diagram.spec else {
        return Err(MovieError::NotABraid);
    };
    let s = *strands;
    let len = n - 1;
    let words = cyclic_words(n, s);
    let mut b = Builder::new(n, Alphabet::Permutation);
    // Births: nested arcs, one per Seifert circle.
    for (m, w) in words.iter().enumerate() {
        b.play(MoveInstance::new(
            m,
            m * len,
            MoveKind::SimpleArcBirth { word: w.clone(), delete_first: false },
        ))?;
        b.snapshot(&format!("birth of Seifert circle {}", m + 1))?;
    }
    // One saddle pair per braid letter at the junction of the two circles.
    for (k, &l) in word.iter().enumerate() {
        let j = l.unsigned_abs();
        let q = j * len - 1;
        let junction_letter = words[j - 1][len - 1];
        b.play(MoveInstance::new(
            s,
            q,
            MoveKind::SaddlePairCreate { letter: junction_letter },
        ))?;
        b.snapshot(&format!(
            "crossing {} (sign {}): band saddle between circles {} and {}",
            k + 1,
            if l > 0 { "+" } else { "-" },
            j,
            j + 1
        ))?;
        b.play(MoveInstance::new(s, q, MoveKind::SaddlePairCancel))?;
        b.snapshot(&format!("crossing {}: band closes", k + 1))?;
    }
    // Deaths in reverse order.
    for m in (0..s).rev() {
        b.play(MoveInstance::new(m, m * len, MoveKind::SimpleArcDeath))?;
        b.snapshot(&format!("death of Seifert circle {}", m + 1))?;
    }
    Ok(b.finish(MovieStatus::Complete))
}

// ---------------------------------------------------------------------------
// Dihedral movies
// ---------------------------------------------------------------------------

/// Palindromic branch word of a colored arc: `x^j r x^{-j}` read bottom to
/// top, evaluating to the reflection `x^{-j} r x^{j}`.
fn color_word(n: usize, color: usize) -> Vec<Letter> {
    let j = signed_index(n, color);
    let depth = j.unsigned_abs();
    let lower = if j >= 0 { Letter::x() } else { Letter::x_inv() };
    let mut w = vec![lower; depth];
    w.push(Letter::r());
    w.extend(vec![lower.inverse(); depth]);
    w
}

fn signed_index(n: usize, color: usize) -> isize {
    let m = n as isize;
    let j = ((color as isize) * (m + 1) / 2).rem_euclid(m);
    if j <= (m - 1) / 2 {
        j
    } else {
        j - m
    }
}

fn arc_birth(word: &[Letter]) -> MoveKind {
    MoveKind::SimpleArcBirth { word: word.to_vec(), delete_first: false }
}

/// Swaps two adjacent two-event blocks `[I_P, D_P, I_Q, D_Q] ->
/// `[I_Q, D_Q, I_P, D_P]` with four distant-event commutes starting at
/// event index `at`.
fn block_swap_moves(at: usize) -> [MoveInstance; 4] {
    [
        MoveInstance::new(at + 1, 0, MoveKind::CommuteDistantEvents),
        MoveInstance::new(at + 2, 0, MoveKind::CommuteDistantEvents),
        MoveInstance::new(at, 0, MoveKind::CommuteDistantEvents),
        MoveInstance::new(at + 1, 0, MoveKind::CommuteDistantEvents),
    ]
}

/// The scripted sweep movie for the torus braids `sigma_1^{+-m}` on two
/// strands: bridges born, vertices exchanging at each of the `m` crossings,
/// a cleanup run of canceling relator pairs and loops, and two deaths. For
/// `m = 5` the movie has 21 content frames and frames 2 through 19 carry
/// exactly four branch vertices.
fn build_torus_sweep(
    n: usize,
    m: usize,
    bridge_colors: (usize, usize),
) -> Result<ChartMovie, MovieError> {
    let (p, q) = bridge_colors;
    let wp = color_word(n, p);
    let wq = color_word(n, q);
    let mut b = Builder::new(n, Alphabet::Dihedral);
    b.play(MoveInstance::new(0, 0, arc_birth(&wp)))?;
    b.snapshot("step 1: left bridge arc born")?;
    b.play(MoveInstance::new(2, 0, arc_birth(&wq)))?;
    b.snapshot("step 2: right bridge arc born inside its rotation aura")?;
    // Crossings: the inner vertices exchange in two beats of distant-event
    // commutes; the block order alternates.
    for k in 0..m {
        b.play(MoveInstance::new(1, 0, MoveKind::CommuteDistantEvents))?;
        b.play(MoveInstance::new(2, 0, MoveKind::CommuteDistantEvents))?;
        b.snapshot(&format!("crossing {}: inner vertices exchange", k + 1))?;
        b.play(MoveInstance::new(0, 0, MoveKind::CommuteDistantEvents))?;
        b.play(MoveInstance::new(1, 0, MoveKind::CommuteDistantEvents))?;
        b.snapshot(&format!(
            "crossing {}: semicircular re-routing completes the pass",
            k + 1
        ))?;
    }
    // Cleanup beats in the spirit of the later steps: canceling relator
    // pairs, a spare loop, a pentavalent pair, then the deaths.
    let u_word = if m % 2 == 1 { &wq } else { &wp };
    let r_pos = u_word.iter().position(|l| *l == Letter::r()).expect("word has r");
    let rel2 = MoveKind::RelatorPairCreate {
        before: vec![Letter::r()],
        after: vec![Letter::r_inv()],
    };
    b.play(MoveInstance::new(1, r_pos, rel2.clone()))?;
    b.snapshot("canceling valence-two pair inserted along the under arc")?;
    b.play(MoveInstance::new(1, r_pos, MoveKind::RelatorPairCancel))?;
    b.snapshot("valence-two pair cancels")?;
    let end = 4;
    b.play(MoveInstance::new(end, 0, MoveKind::LoopBirth { letter: Letter::x() }))?;
    b.snapshot("rotation loop born")?;
    b.play(MoveInstance::new(end, 0, MoveKind::LoopDeath))?;
    b.snapshot("rotation loop dies")?;
    b.play(MoveInstance::new(end, 0, MoveKind::LoopBirth { letter: Letter::x() }))?;
    b.play(MoveInstance::new(
        end + 1,
        0,
        MoveKind::RelatorPairCreate {
            before: vec![Letter::x()],
            after: vec![Letter::x_inv(); n - 1],
        },
    ))?;
    b.snapshot("pentavalent pair splits the loop")?;
    b.play(MoveInstance::new(end + 1, 0, MoveKind::RelatorPairCancel))?;
    b.snapshot("pentavalent pair cancels")?;
    b.play(MoveInstance::new(end, 0, MoveKind::LoopDeath))?;
    b.snapshot("spare loop dies")?;
    b.play(MoveInstance::new(1, r_pos, rel2))?;
    b.snapshot("turn-around pair prepared along the dying arc")?;
    b.play(MoveInstance::new(1, r_pos, MoveKind::RelatorPairCancel))?;
    b.play(MoveInstance::new(0, 0, MoveKind::SimpleArcDeath))?;
    b.snapshot("step 20: left arc removed past its minimum")?;
    b.play(MoveInstance::new(0, 0, MoveKind::SimpleArcDeath))?;
    b.play(MoveInstance::new(0, 0, MoveKind::LoopBirth { letter: Letter::x() }))?;
    b.snapshot("step 21: last arc cancels; leftover intersections remain")?;
    b.play(MoveInstance::new(0, 0, MoveKind::LoopDeath))?;
    b.snapshot("sphere intersections die in the southern cap")?;
    Ok(b.finish(MovieStatus::Complete))
}

/// Builds the dihedral movie of a Fox-colored braid closure.
///
/// Two-strand torus braids take the scripted sweep above. Other diagrams
/// run the staged pipeline: aura loops, arc blocks (two branch vertices per
/// arc), per-crossing joins of under-arc vertices where the neighbouring
/// colors agree, and greedy cleanup. If a crossing needs a conjugation the
/// reduced-scale join cannot supply, the movie stops at its last verified
/// frame with status `simplification-incomplete`.
pub fn build_dihedral_movie(
    diagram: &KnotDiagram,
    coloring: &DihedralColoring,
) -> Result<ChartMovie, MovieError> {
    let DiagramSpec::Braid { strands, word } = &diagram.spec else {
        return Err(MovieError::NotABraid);
    };
    if coloring.arc_colors.len() != diagram.arcs {
        return Err(MovieError::ColoringMismatch);
    }
    let n = coloring.n;
    // Scripted sweep for two-strand torus braids with at least one crossing.
    if *strands == 2 && !word.is_empty() && word.iter().all(|&l| l == word[0]) {
        let c0 = &diagram.crossings[0];
        let bridges = (
            coloring.arc_colors[c0.over],
            coloring.arc_colors[c0.under_in],
        );
        return build_torus_sweep(n, word.len(), bridges);
    }

    let mut b = Builder::new(n, Alphabet::Dihedral);
    // Aura loops for every conjugated arc.
    let depths: Vec<usize> = coloring
        .arc_colors
        .iter()
        .map(|&c| signed_index(n, c).unsigned_abs())
        .collect();
    let mut aura_events = 0usize;
    for (arc, &d) in depths.iter().enumerate() {
        let letter = if signed_index(n, coloring.arc_colors[arc]) >= 0 {
            Letter::x()
        } else {
            Letter::x_inv()
        };
        for _ in 0..d {
            b.play(MoveInstance::new(aura_events, 0, MoveKind::LoopBirth { letter }))?;
            aura_events += 2;
        }
    }
    if aura_events > 0 {
        b.snapshot("aura loops of the coloring")?;
    }
    // Arc blocks: kill the auras and birth the palindromic blocks.
    for _ in 0..(aura_events / 2) {
        b.play(MoveInstance::new(0, 0, MoveKind::LoopDeath))?;
    }
    // Blocks carry (insert-side arc, delete-side arc); joins merge them.
    let mut blocks: Vec<(usize, usize)> = (0..diagram.arcs).map(|a| (a, a)).collect();
    for (i, &(arc, _)) in blocks.iter().enumerate() {
        let w = color_word(n, coloring.arc_colors[arc]);
        b.play(MoveInstance::new(2 * i, 0, arc_birth(&w)))?;
    }
    b.snapshot("arc blocks: two branch vertices per arc")?;

    // Per-crossing joins. The arc ending under the crossing joins the arc
    // beginning there: the block holding alpha's delete vertex fuses with
    // the block holding gamma's insert vertex.
    let mut complete = true;
    for (k, c) in diagram.crossings.iter().enumerate() {
        let (alpha, gamma) = (c.under_in, c.under_out);
        if coloring.arc_colors[alpha] != coloring.arc_colors[gamma] {
            complete = false;
            break;
        }
        let Some(ai) = blocks.iter().position(|&(_, d)| d == alpha) else {
            complete = false;
            break;
        };
        let Some(gi) = blocks.iter().position(|&(i, _)| i == gamma) else {
            complete = false;
            break;
        };
        if ai == gi {
            // The chain closes on itself: the block's own pair cancels.
            b.play(MoveInstance::new(2 * ai, 0, MoveKind::SimpleArcDeath))?;
            blocks.remove(ai);
            b.snapshot(&format!("crossing {}: under-arc chain closes", k + 1))?;
            continue;
        }
        // Move gamma's block until it directly follows alpha's.
        let mut gi = gi;
        while gi > ai + 1 {
            for m in block_swap_moves(2 * (gi - 1)) {
                b.play(m)?;
            }
            blocks.swap(gi - 1, gi);
            gi -= 1;
        }
        while gi < ai {
            for m in block_swap_moves(2 * gi) {
                b.play(m)?;
            }
            blocks.swap(gi, gi + 1);
            gi += 1;
        }
        let ai = blocks.iter().position(|&(_, d)| d == alpha).expect("still present");
        debug_assert_eq!(blocks[ai + 1].0, gamma);
        // [I_a, D_a, I_g, D_g] -> [I_a, D_g]: the middle delete/insert pair
        // cancels, joining the arcs across the crossing.
        b.play(MoveInstance::new(2 * ai + 1, 0, MoveKind::SimpleArcDeath))?;
        blocks[ai] = (blocks[ai].0, blocks[ai + 1].1);
        blocks.remove(ai + 1);
        b.snapshot(&format!("crossing {}: under-arc vertices join", k + 1))?;
    }
    if complete {
        // Remaining blocks cancel; the chart empties.
        while !b.cur.events.is_empty() {
            b.play(MoveInstance::new(0, 0, MoveKind::SimpleArcDeath))?;
        }
        b.snapshot("remaining arcs die in the southern hemisphere")?;
        Ok(b.finish(MovieStatus::Complete))
    } else {
        Ok(b.finish(MovieStatus::SimplificationIncomplete))
    }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub valid: bool,
    pub invariants: Option<CoverInvariants>,
    pub branch_vertices: usize,
    pub orientation_nodes: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransitionReport {
    pub certified: bool,
    pub detail: Option<String>,
    pub delta_euler: i64,
    pub handles_consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MovieReport {
    pub ok: bool,
    pub status: MovieStatus,
    pub frames: Vec<FrameReport>,
    pub transitions: Vec<TransitionReport>,
}

/// Replays every transition, recomputes every frame's invariants, checks
/// the handle bookkeeping, and reports orientation-lift node counts for
/// permutation frames.
pub fn verify_movie(movie: &ChartMovie) -> MovieReport {
    let mut frames = Vec::new();
    for frame in &movie.frames {
        let valid = frame.is_valid();
        let invariants = if valid { frame_invariants(frame).ok() } else { None };
        let branch_vertices = frame.branch_points().len();
        let orientation_nodes = if valid && frame.alphabet == Alphabet::Permutation {
            attempt_orientation(frame, 50_000).ok().map(|r| r.nodes)
        } else {
            None
        };
        frames.push(FrameReport {
            valid,
            invariants,
            branch_vertices,
            orientation_nodes,
        });
    }
    let mut transitions = Vec::new();
    let mut ok = movie
        .frames
        .first()
        .map(|f| f.events.is_empty())
        .unwrap_or(false)
        && movie
            .frames
            .last()
            .map(|f| f.events.is_empty())
            .unwrap_or(false)
        && frames.iter().all(|f| f.valid);
    for (i, t) in movie.transitions.iter().enumerate() {
        let (certified, detail) = if i + 1 >= movie.frames.len() {
            (false, Some("missing target frame".to_string()))
        } else {
            match crate::moves::verify_sequence(&movie.frames[i], &t.moves) {
                Ok(end) if end == movie.frames[i + 1] => (true, None),
                Ok(_) => (false, Some("moves do not reach the next frame".to_string())),
                Err(e) => (false, Some(format!("move {} illegal: {}", e.index, e.source))),
            }
        };
        let delta_euler = match (
            frames.get(i).and_then(|f| f.invariants.as_ref()),
            frames.get(i + 1).and_then(|f| f.invariants.as_ref()),
        ) {
            (Some(a), Some(b)) => b.euler_total - a.euler_total,
            _ => 0,
        };
        let handles_consistent =
            delta_euler == -2 * (t.one_handles as i64) + 2 * (t.two_handles as i64);
        ok &= certified && handles_consistent;
        transitions.push(TransitionReport {
            certified,
            detail,
            delta_euler,
            handles_consistent,
        });
    }
    if movie.transitions.len() + 1 != movie.frames.len() {
        ok = false;
    }
    MovieReport {
        ok,
        status: movie.status,
        frames,
        transitions,
    }
}

/// The committed 21-step dihedral movie of the (2,5) torus knot with
/// bridge colors `[2]` and `[3]`.
pub fn replay_t25_fixture() -> ChartMovie {
    let text = include_str!("../fixtures/t25_movie.json");
    ChartMovie::from_json(text).expect("committed fixture parses")
}

/// Regenerates the torus-knot movie that the committed fixture stores.
pub fn generate_t25_movie() -> ChartMovie {
    let diagram = crate::knot::parse_diagram("braid s=2: 1 1 1 1 1").expect("torus braid");
    let colorings = crate::knot::fox_colorings(&diagram, 5).expect("odd modulus");
    let bridge = colorings
        .iter()
        .find(|c| {
            !c.trivial
                && c.arc_colors.contains(&0)
                && c.arc_colors.contains(&1)
                && signed_index(5, c.arc_colors[diagram.crossings[0].over]) == 0
        })
        .expect("bridge coloring exists")
        .clone();
    build_dihedral_movie(&diagram, &bridge).expect("sweep builds")
}
