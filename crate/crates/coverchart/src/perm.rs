//! Exact arithmetic in the symmetric group `Sigma_n` and on words in the
//! adjacent transpositions `t_1 .. t_{n-1}`.
//!
//! `compose(p, q)` is function composition with the rightmost factor applied
//! first: `compose(p, q)(i) = p(q(i))`. A [`TranspositionWord`] is read with
//! its first letter applied first, so the word `[1,2,3,4]` in degree 5
//! evaluates to `t_4 t_3 t_2 t_1 = (1 5 4 3 2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsu::UnionFind;

/// Largest degree the crate supports. Everything here is small and dense.
pub const MAX_DEGREE: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree {0} out of range 1..={max}", max = MAX_DEGREE)]
    BadDegree(usize),
    #[error("images {0:?} are not a bijection of 1..={1}")]
    NotBijection(Vec<usize>, usize),
    #[error("cycle entry {0} out of range 1..={1}")]
    CycleOutOfRange(usize, usize),
    #[error("cycle repeats the point {0}")]
    CycleRepeats(usize),
    #[error("letter {0} out of range 1..={1}")]
    LetterOutOfRange(usize, usize),
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
}

/// A bijection of `{1..n}`, stored as a dense image table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    n: usize,
    /// `images[i]` is the image of the point `i + 1`.
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        assert!(n >= 1 && n <= MAX_DEGREE, "degree {n} out of range");
        Permutation {
            n,
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation, PermError> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(PermError::BadDegree(n));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v < 1 || v > n || seen[v - 1] {
                return Err(PermError::NotBijection(images.clone(), n));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { n, images })
    }

    /// Builds a permutation from disjoint cycles over `{1..n}`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation, PermError> {
        if n == 0 || n > MAX_DEGREE {
            return Err(PermError::BadDegree(n));
        }
        let mut images: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a < 1 || a > n {
                    return Err(PermError::CycleOutOfRange(a, n));
                }
                if seen[a - 1] {
                    return Err(PermError::CycleRepeats(a));
                }
                seen[a - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                images[a - 1] = b;
            }
        }
        Ok(Permutation { n, images })
    }

    /// The adjacent transposition `t_j = (j, j+1)` in degree `n`.
    pub fn adjacent_transposition(n: usize, j: usize) -> Permutation {
        assert!(j >= 1 && j < n, "t_{j} undefined in degree {n}");
        let mut p = Permutation::identity(n);
        p.images[j - 1] = j + 1;
        p.images[j] = j;
        p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn apply(&self, i: usize) -> usize {
        debug_assert!(i >= 1 && i <= self.n);
        self.images[i - 1]
    }

    /// `self` after `other`: `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n, other.n, "degree mismatch in compose");
        Permutation {
            n: self.n,
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { n: self.n, images }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Permutation::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Cycle decomposition including fixed points, each cycle led by its
    /// smallest member, cycles ordered by smallest member.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut cur = self.apply(start);
            while cur != start {
                seen[cur - 1] = true;
                cycle.push(cur);
                cur = self.apply(cur);
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles, fixed points included.
    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Number of inversions; equals the Coxeter length in the generators `t_j`.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Restriction of the cycle count to a subset of points; the subset must
    /// be closed under `self`.
    pub fn cycle_count_on(&self, points: &[usize]) -> usize {
        let set: Vec<usize> = points.to_vec();
        let mut seen = vec![false; set.len()];
        let index = |p: usize| set.iter().position(|&q| q == p);
        let mut count = 0;
        for s in 0..set.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut cur = set[s];
            loop {
                let k = index(cur).expect("subset not closed under permutation");
                if seen[k] {
                    break;
                }
                seen[k] = true;
                cur = self.apply(cur);
            }
        }
        count
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<usize>> =
            self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for cycle in nontrivial {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Parses cycle notation such as `(1 3)(4 5)`; the degree is the largest
/// point mentioned unless `()` (the identity needs an explicit degree via
/// [`Permutation::identity`], parsing `()` yields degree 1).
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Permutation, PermError> {
        let s = s.trim();
        if s == "()" || s == "id" {
            return Ok(Permutation::identity(1));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut max = 0usize;
        let body = s.strip_prefix('(').ok_or_else(|| PermError::Parse(s.into()))?;
        let body = body.strip_suffix(')').ok_or_else(|| PermError::Parse(s.into()))?;
        for part in body.split(")(") {
            let mut cycle = Vec::new();
            for tok in part.split(|c: char| c == ' ' || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let v: usize = tok.parse().map_err(|_| PermError::Parse(s.into()))?;
                max = max.max(v);
                cycle.push(v);
            }
            if cycle.is_empty() {
                return Err(PermError::Parse(s.into()));
            }
            cycles.push(cycle);
        }
        Permutation::from_cycles(max, &cycles)
    }
}

/// Parses cycle notation at a caller-supplied degree.
pub fn parse_permutation(n: usize, s: &str) -> Result<Permutation, PermError> {
    let s = s.trim();
    if s == "()" || s == "id" {
        return Ok(Permutation::identity(n));
    }
    let p: Permutation = s.parse()?;
    if p.degree() > n {
        return Err(PermError::Parse(s.into()));
    }
    let mut images: Vec<usize> = (1..=n).collect();
    for i in 1..=p.degree() {
        images[i - 1] = p.apply(i);
    }
    Permutation::from_images(images)
}

/// A word in the generators `t_1 .. t_{n-1}`; the first letter acts first.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TranspositionWord {
    pub n: usize,
    pub letters: Vec<usize>,
}

impl TranspositionWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<TranspositionWord, PermError> {
        if n == 0 || n > MAX_DEGREE {
            return Err(PermError::BadDegree(n));
        }
        for &l in &letters {
            if l < 1 || l >= n {
                return Err(PermError::LetterOutOfRange(l, n - 1));
            }
        }
        Ok(TranspositionWord { n, letters })
    }

    pub fn evaluate(&self) -> Permutation {
        let mut acc = Permutation::identity(self.n);
        for &l in &self.letters {
            acc = Permutation::adjacent_transposition(self.n, l).compose(&acc);
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Debug for TranspositionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TranspositionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}

/// Parses `[2,1,2]` at the given degree.
pub fn parse_word(n: usize, s: &str) -> Result<TranspositionWord, PermError> {
    let s = s.trim();
    let body = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| PermError::Parse(s.into()))?;
    let mut letters = Vec::new();
    for tok in body.split(|c: char| c == ',' || c == ' ') {
        if tok.is_empty() {
            continue;
        }
        letters.push(tok.parse::<usize>().map_err(|_| PermError::Parse(s.into()))?);
    }
    TranspositionWord::new(n, letters)
}

/// The canonical reduced word for `p`: for each level `lvl = n down to 2`,
/// peel off the descending run `[lvl-1, lvl-2, .., r]` with `r = g(lvl)`,
/// then concatenate the runs for levels `2..=n` bottom to top. The result
/// evaluates to `p` and its length is the inversion count of `p`.
pub fn normal_form_word(p: &Permutation) -> TranspositionWord {
    let n = p.degree();
    let mut runs: Vec<Vec<usize>> = Vec::new();
    let mut g = p.clone();
    for lvl in (2..=n).rev() {
        let r = g.apply(lvl);
        let run: Vec<usize> = (r..lvl).rev().collect();
        let u = TranspositionWord {
            n,
            letters: run.clone(),
        }
        .evaluate();
        g = u.inverse().compose(&g);
        runs.push(run);
    }
    debug_assert!(g.is_identity());
    runs.reverse();
    TranspositionWord {
        n,
        letters: runs.concat(),
    }
}

/// Canonical reduced rewriting of a word: evaluates it and returns the
/// normal form of the result. Length equals the Coxeter length.
pub fn reduce_word(w: &TranspositionWord) -> TranspositionWord {
    normal_form_word(&w.evaluate())
}

/// The finest partition of `{1..n}` closed under all generators.
pub fn orbits(n: usize, generators: &[Permutation]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(n);
    for g in generators {
        assert_eq!(g.degree(), n, "degree mismatch in orbits");
        for i in 1..=n {
            uf.union(i - 1, g.apply(i) - 1);
        }
    }
    uf.classes()
        .into_iter()
        .map(|class| class.into_iter().map(|i| i + 1).collect())
        .collect()
}
