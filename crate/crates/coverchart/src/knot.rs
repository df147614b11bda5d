//! Knot and link diagram input, Fox colorings by dihedral reflections, and
//! constant-rotation cyclic labelings.
//!
//! Diagrams come in as braid closures (`braid s=2: 1 1 1 1 1`) or PD codes
//! (`PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]`). Arcs are enumerated
//! deterministically; every crossing records its over-arc and the two
//! under-arcs. A Fox coloring assigns an integer mod `n` to each arc with
//! `c = 2b - a` at every crossing, the color `j` standing for the
//! reflection `x^{-j} r x^{j}`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dihedral::{conjugate_reflection, DihedralElement};
use crate::dsu::UnionFind;

#[derive(Debug, Error, PartialEq)]
pub enum KnotError {
    #[error("cannot parse diagram: {0}")]
    Parse(String),
    #[error("unrealizable code: {0}")]
    Unrealizable(String),
    #[error("modulus {0} must be odd and at least 3")]
    BadModulus(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DiagramSpec {
    Braid { strands: usize, word: Vec<isize> },
    Pd { crossings: Vec<[usize; 4]> },
}

/// One crossing with arcs identified: the over-arc and the two halves of
/// the broken under-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnotDiagram {
    pub spec: DiagramSpec,
    pub arcs: usize,
    pub crossings: Vec<Crossing>,
    pub components: usize,
}

impl KnotDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Canonical text form; parsing it back gives the same diagram.
    pub fn to_text(&self) -> String {
        match &self.spec {
            DiagramSpec::Braid { strands, word } => {
                let letters: Vec<String> = word.iter().map(|l| l.to_string()).collect();
                format!("braid s={}: {}", strands, letters.join(" "))
            }
            DiagramSpec::Pd { crossings } => {
                let xs: Vec<String> = crossings
                    .iter()
                    .map(|c| format!("X[{},{},{},{}]", c[0], c[1], c[2], c[3]))
                    .collect();
                format!("PD[{}]", xs.join(","))
            }
        }
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Parses either input syntax and derives arcs and crossings.
pub fn parse_diagram(text: &str) -> Result<KnotDiagram, KnotError> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("braid") {
        parse_braid(rest)
    } else if text.starts_with("PD[") {
        parse_pd(text)
    } else {
        Err(KnotError::Parse(format!("unknown diagram syntax {text:?}")))
    }
}

fn parse_braid(rest: &str) -> Result<KnotDiagram, KnotError> {
    let rest = rest.trim();
    let (head, tail) = rest
        .split_once(':')
        .ok_or_else(|| KnotError::Parse("braid input needs `s=<n>:`".into()))?;
    let strands: usize = head
        .trim()
        .strip_prefix("s=")
        .ok_or_else(|| KnotError::Parse("braid input needs `s=<n>`".into()))?
        .trim()
        .parse()
        .map_err(|_| KnotError::Parse("bad strand count".into()))?;
    if strands == 0 {
        return Err(KnotError::Parse("need at least one strand".into()));
    }
    let mut word = Vec::new();
    for tok in tail.split_whitespace() {
        let l: isize = tok
            .parse()
            .map_err(|_| KnotError::Parse(format!("bad braid letter {tok:?}")))?;
        let j = l.unsigned_abs();
        if l == 0 || j >= strands {
            return Err(KnotError::Parse(format!(
                "braid letter {l} out of range for {strands} strands"
            )));
        }
        word.push(l);
    }
    braid_closure(strands, word)
}

fn braid_closure(strands: usize, word: Vec<isize>) -> Result<KnotDiagram, KnotError> {
    // Arc ids grow as under-strands break; the closure merges top and
    // bottom arcs per strand position.
    let mut next_arc = strands;
    let mut at: Vec<usize> = (0..strands).collect();
    let mut raw: Vec<Crossing> = Vec::new();
    for &l in &word {
        let j = l.unsigned_abs();
        let (over_slot, under_slot) = if l > 0 { (j - 1, j) } else { (j, j - 1) };
        let over = at[over_slot];
        let under_in = at[under_slot];
        let under_out = next_arc;
        next_arc += 1;
        raw.push(Crossing {
            over,
            under_in,
            under_out,
            sign: if l > 0 { 1 } else { -1 },
        });
        at[under_slot] = under_out;
        at.swap(j - 1, j);
    }
    // Close the braid: the strand ending at slot p joins the arc that
    // started there.
    let mut uf = UnionFind::new(next_arc);
    for (p, &top) in at.iter().enumerate() {
        uf.union(top, p);
    }
    // Canonical renumbering by smallest member.
    let classes = uf.classes();
    let mut rename: HashMap<usize, usize> = HashMap::new();
    for (i, class) in classes.iter().enumerate() {
        for &m in class {
            rename.insert(m, i);
        }
    }
    let crossings: Vec<Crossing> = raw
        .into_iter()
        .map(|c| Crossing {
            over: rename[&c.over],
            under_in: rename[&c.under_in],
            under_out: rename[&c.under_out],
            sign: c.sign,
        })
        .collect();
    // Components: cycles of the strand permutation.
    let mut perm_uf = UnionFind::new(strands);
    {
        let mut slots: Vec<usize> = (0..strands).collect();
        for &l in &word {
            let j = l.unsigned_abs();
            slots.swap(j - 1, j);
        }
        for (p, &s) in slots.iter().enumerate() {
            perm_uf.union(p, s);
        }
    }
    Ok(KnotDiagram {
        spec: DiagramSpec::Braid { strands, word },
        arcs: classes.len(),
        crossings,
        components: perm_uf.classes().len(),
    })
}

fn parse_pd(text: &str) -> Result<KnotDiagram, KnotError> {
    let body = text
        .strip_prefix("PD[")
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| KnotError::Parse("PD code must look like PD[X[..],..]".into()))?;
    let mut crossings: Vec<[usize; 4]> = Vec::new();
    let mut rest = body;
    while !rest.is_empty() {
        rest = rest.trim_start_matches(',').trim();
        if rest.is_empty() {
            break;
        }
        let inner = rest
            .strip_prefix("X[")
            .ok_or_else(|| KnotError::Parse(format!("expected X[..] at {rest:?}")))?;
        let (args, tail) = inner
            .split_once(']')
            .ok_or_else(|| KnotError::Parse("unterminated X[..]".into()))?;
        let nums: Result<Vec<usize>, _> = args.split(',').map(|t| t.trim().parse()).collect();
        let nums = nums.map_err(|_| KnotError::Parse(format!("bad edge label in {args:?}")))?;
        if nums.len() != 4 {
            return Err(KnotError::Parse("each X needs four edges".into()));
        }
        crossings.push([nums[0], nums[1], nums[2], nums[3]]);
        rest = tail;
    }
    if crossings.is_empty() {
        return Err(KnotError::Parse("PD code with no crossings".into()));
    }
    // Realizability: every edge label appears exactly twice.
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for x in &crossings {
        for &e in x {
            *counts.entry(e).or_insert(0) += 1;
        }
    }
    for (e, c) in &counts {
        if *c != 2 {
            return Err(KnotError::Unrealizable(format!(
                "edge {e} appears {c} times, expected 2"
            )));
        }
    }
    let max_edge = *counts.keys().max().expect("nonempty");
    // Arcs: edges merged where the over-strand passes through.
    let mut arc_uf = UnionFind::new(max_edge + 1);
    // Components: also merge the under-strand halves.
    let mut comp_uf = UnionFind::new(max_edge + 1);
    for x in &crossings {
        arc_uf.union(x[1], x[3]);
        comp_uf.union(x[1], x[3]);
        comp_uf.union(x[0], x[2]);
    }
    let used: Vec<usize> = {
        let mut v: Vec<usize> = counts.keys().copied().collect();
        v.sort_unstable();
        v
    };
    let mut rename: HashMap<usize, usize> = HashMap::new();
    let mut arc_count = 0usize;
    for &e in &used {
        let root = arc_uf.find(e);
        if let Some(&id) = rename.get(&root) {
            rename.insert(e, id);
        } else {
            rename.insert(root, arc_count);
            rename.insert(e, arc_count);
            arc_count += 1;
        }
    }
    let data: Vec<Crossing> = crossings
        .iter()
        .map(|x| {
            let d_follows_b = x[3] % (2 * crossings.len()).max(1) == (x[1] + 1) % (2 * crossings.len()).max(1);
            Crossing {
                over: rename[&x[1]],
                under_in: rename[&x[0]],
                under_out: rename[&x[2]],
                sign: if d_follows_b { 1 } else { -1 },
            }
        })
        .collect();
    let components = {
        let mut roots: Vec<usize> = used.iter().map(|&e| comp_uf.find(e)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    };
    Ok(KnotDiagram {
        spec: DiagramSpec::Pd { crossings },
        arcs: arc_count,
        crossings: data,
        components,
    })
}

// ---------------------------------------------------------------------------
// Fox colorings
// ---------------------------------------------------------------------------

/// Arc colors mod `n`; color `j` denotes the reflection `x^{-j} r x^{j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DihedralColoring {
    pub n: usize,
    pub arc_colors: Vec<usize>,
    pub trivial: bool,
}

impl DihedralColoring {
    /// The reflection assigned to each arc.
    pub fn representation(&self) -> Vec<DihedralElement> {
        self.arc_colors
            .iter()
            .map(|&j| conjugate_reflection(self.n, j as isize))
            .collect()
    }
}

/// A labeling assigning the same rotation `x^e` to every arc; these induce
/// cyclic covers and are not Fox colorings by reflections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicLabeling {
    pub n: usize,
    pub exponent: usize,
}

/// All constant-rotation labelings with nontrivial exponent.
pub fn cyclic_labelings(n: usize) -> Vec<CyclicLabeling> {
    (1..n).map(|exponent| CyclicLabeling { n, exponent }).collect()
}

fn check_modulus(n: usize) -> Result<(), KnotError> {
    if n < 3 || n % 2 == 0 {
        return Err(KnotError::BadModulus(n));
    }
    Ok(())
}

/// All solutions of `c = 2b - a mod n` over the arcs, in lexicographic
/// order; constant colorings are flagged trivial. Solved by propagating
/// crossing relations from enumerated seeds.
pub fn fox_colorings(diagram: &KnotDiagram, n: usize) -> Result<Vec<DihedralColoring>, KnotError> {
    check_modulus(n)?;
    let arcs = diagram.arcs;
    if arcs == 0 {
        return Ok(vec![]);
    }
    // Determine a propagation order once: seeds are the arcs that stay
    // undetermined when the known set grows by crossing relations.
    let mut plan: Vec<PlanStep> = Vec::new();
    let mut known = vec![false; arcs];
    loop {
        let mut progressed = false;
        for (ci, c) in diagram.crossings.iter().enumerate() {
            let (a, b, out) = (c.under_in, c.over, c.under_out);
            if known[b] && known[a] && !known[out] {
                plan.push(PlanStep::Forward(ci));
                known[out] = true;
                progressed = true;
            } else if known[b] && known[out] && !known[a] {
                plan.push(PlanStep::Backward(ci));
                known[a] = true;
                progressed = true;
            }
        }
        if progressed {
            continue;
        }
        match known.iter().position(|k| !k) {
            Some(arc) => {
                plan.push(PlanStep::Seed(arc));
                known[arc] = true;
            }
            None => break,
        }
    }
    let seeds = plan
        .iter()
        .filter(|s| matches!(s, PlanStep::Seed(_)))
        .count();
    let mut out = Vec::new();
    let mut seed_values = vec![0usize; seeds];
    loop {
        // Execute the plan for this seed tuple.
        let mut colors = vec![0usize; arcs];
        let mut next_seed = 0;
        for step in &plan {
            match step {
                PlanStep::Seed(arc) => {
                    colors[*arc] = seed_values[next_seed];
                    next_seed += 1;
                }
                PlanStep::Forward(ci) => {
                    let c = &diagram.crossings[*ci];
                    colors[c.under_out] = (2 * colors[c.over] + n - colors[c.under_in] % n) % n;
                }
                PlanStep::Backward(ci) => {
                    let c = &diagram.crossings[*ci];
                    colors[c.under_in] = (2 * colors[c.over] + n - colors[c.under_out] % n) % n;
                }
            }
        }
        if diagram
            .crossings
            .iter()
            .all(|c| (2 * colors[c.over]) % n == (colors[c.under_in] + colors[c.under_out]) % n)
        {
            let trivial = colors.iter().all(|&c| c == colors[0]);
            out.push(DihedralColoring {
                n,
                arc_colors: colors,
                trivial,
            });
        }
        // Advance the seed odometer.
        let mut i = 0;
        loop {
            if i == seeds {
                out.sort_by(|x, y| x.arc_colors.cmp(&y.arc_colors));
                return Ok(out);
            }
            seed_values[i] += 1;
            if seed_values[i] < n {
                break;
            }
            seed_values[i] = 0;
            i += 1;
        }
        if seeds == 0 {
            out.sort_by(|x, y| x.arc_colors.cmp(&y.arc_colors));
            return Ok(out);
        }
    }
}

enum PlanStep {
    Seed(usize),
    Forward(usize),
    Backward(usize),
}

/// Checks every Wirtinger relation of a coloring inside the dihedral group.
pub fn wirtinger_holds(diagram: &KnotDiagram, coloring: &DihedralColoring) -> bool {
    let rho = coloring.representation();
    diagram.crossings.iter().all(|c| {
        let conj = rho[c.over]
            .multiply(&rho[c.under_in])
            .multiply(&rho[c.over]);
        conj == rho[c.under_out]
    })
}

/// Brute-force coloring count over all `n^arcs` assignments; the
/// independent oracle for [`fox_colorings`].
pub fn brute_force_coloring_count(diagram: &KnotDiagram, n: usize) -> usize {
    let arcs = diagram.arcs;
    let mut count = 0usize;
    let mut colors = vec![0usize; arcs];
    loop {
        if diagram
            .crossings
            .iter()
            .all(|c| (2 * colors[c.over]) % n == (colors[c.under_in] + colors[c.under_out]) % n)
        {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == arcs {
                return count;
            }
            colors[i] += 1;
            if colors[i] < n {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}
