//! The dihedral group `D_n` for odd `n = 2k+1`, its normal forms, and its
//! permutation representation `psi` into `Sigma_n`.
//!
//! Elements are kept in the normal form `r^a x^b` with `a` a boolean and
//! `0 <= b < n`. The generating reflection is chosen so that
//! `psi(r) = r_k = (k-1,k+1)(k-2,k+2)...(1,n-2)(n-1,n)` and the generating
//! rotation satisfies `psi(x) = (1, n, n-1, ..., 2)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chart::Letter;
use crate::perm::{normal_form_word, Permutation, TranspositionWord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DihedralError {
    #[error("group parameter {0} must be odd and between 3 and 15")]
    BadParameter(usize),
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("cannot parse dihedral element from {0:?}")]
    Parse(String),
}

fn check_parameter(n: usize) -> Result<(), DihedralError> {
    if n < 3 || n % 2 == 0 || n > 15 {
        return Err(DihedralError::BadParameter(n));
    }
    Ok(())
}

/// An element of `D_n` in the normal form `r^a x^b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DihedralElement {
    n: usize,
    refl: bool,
    rot: usize,
}

impl DihedralElement {
    pub fn new(n: usize, refl: bool, rot: isize) -> Result<DihedralElement, DihedralError> {
        check_parameter(n)?;
        let m = n as isize;
        Ok(DihedralElement {
            n,
            refl,
            rot: (rot.rem_euclid(m)) as usize,
        })
    }

    pub fn identity(n: usize) -> DihedralElement {
        DihedralElement::new(n, false, 0).expect("bad dihedral parameter")
    }

    pub fn r(n: usize) -> DihedralElement {
        DihedralElement::new(n, true, 0).expect("bad dihedral parameter")
    }

    pub fn x(n: usize) -> DihedralElement {
        DihedralElement::new(n, false, 1).expect("bad dihedral parameter")
    }

    pub fn parameter(&self) -> usize {
        self.n
    }

    pub fn is_reflection(&self) -> bool {
        self.refl
    }

    pub fn rotation_exponent(&self) -> usize {
        self.rot
    }

    pub fn is_identity(&self) -> bool {
        !self.refl && self.rot == 0
    }

    /// Group product, rightmost factor applied first:
    /// `r^a x^b · r^c x^d = r^(a+c) x^(d - b)` when `c = 1`, using `x r = r x^{-1}`.
    pub fn multiply(&self, other: &DihedralElement) -> DihedralElement {
        assert_eq!(self.n, other.n, "parameter mismatch in multiply");
        let m = self.n as isize;
        let (b, d) = (self.rot as isize, other.rot as isize);
        if other.refl {
            DihedralElement::new(self.n, !self.refl, (d - b).rem_euclid(m) as isize)
                .expect("normalized")
        } else {
            DihedralElement::new(self.n, self.refl, (b + d).rem_euclid(m) as isize)
                .expect("normalized")
        }
    }

    pub fn inverse(&self) -> DihedralElement {
        if self.refl {
            *self
        } else {
            DihedralElement::new(self.n, false, -(self.rot as isize)).expect("normalized")
        }
    }

    pub fn pow(&self, k: i64) -> DihedralElement {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut acc = DihedralElement::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            acc = base.multiply(&acc);
        }
        acc
    }

    /// All `2n` elements, rotations first.
    pub fn all(n: usize) -> Vec<DihedralElement> {
        let mut out = Vec::with_capacity(2 * n);
        for refl in [false, true] {
            for rot in 0..n {
                out.push(DihedralElement::new(n, refl, rot as isize).unwrap());
            }
        }
        out
    }

    /// The permutation representation. `psi` is a homomorphism for the
    /// rightmost-first composition on both sides.
    pub fn psi(&self) -> Permutation {
        let x = psi_x(self.n);
        let mut p = x.pow(self.rot as i64);
        if self.refl {
            p = psi_r(self.n).compose(&p);
        }
        p
    }

    /// Vertex of the regular n-gon fixed by this reflection, if a reflection.
    pub fn fixed_vertex(&self) -> Option<usize> {
        if !self.refl {
            return None;
        }
        let p = self.psi();
        (1..=self.n).find(|&v| p.apply(v) == v)
    }
}

impl fmt::Debug for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.refl, self.rot) {
            (false, 0) => write!(f, "1"),
            (false, 1) => write!(f, "x"),
            (false, b) => write!(f, "x^{b}"),
            (true, 0) => write!(f, "r"),
            (true, 1) => write!(f, "r x"),
            (true, b) => write!(f, "r x^{b}"),
        }
    }
}

/// Parses `1`, `r`, `x^3`, `r x^2`, or the bracket alias `[v]` for the
/// reflection fixing vertex `v`.
pub fn parse_element(n: usize, s: &str) -> Result<DihedralElement, DihedralError> {
    check_parameter(n)?;
    let s = s.trim();
    if let Some(body) = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
        let v: usize = body.trim().parse().map_err(|_| DihedralError::Parse(s.into()))?;
        return reflection_fixing_vertex(n, v);
    }
    if s == "1" {
        return Ok(DihedralElement::identity(n));
    }
    let mut refl = false;
    let mut rot: isize = 0;
    for tok in s.split_whitespace() {
        if tok == "r" {
            refl = !refl;
        } else if tok == "x" {
            rot += 1;
        } else if let Some(exp) = tok.strip_prefix("x^") {
            rot += exp.parse::<isize>().map_err(|_| DihedralError::Parse(s.into()))?;
        } else {
            return Err(DihedralError::Parse(s.into()));
        }
    }
    DihedralElement::new(n, refl, rot)
}

/// `psi(x) = (1, n, n-1, ..., 2)`.
pub fn psi_x(n: usize) -> Permutation {
    let cycle: Vec<usize> = std::iter::once(1).chain((2..=n).rev()).collect();
    Permutation::from_cycles(n, &[cycle]).expect("valid cycle")
}

/// `psi(r) = r_k = (k-1,k+1)(k-2,k+2)...(1,n-2)(n-1,n)` for `n = 2k+1`.
pub fn psi_r(n: usize) -> Permutation {
    let k = n / 2;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for i in 1..k {
        cycles.push(vec![k - i, k + i]);
    }
    cycles.push(vec![n - 1, n]);
    Permutation::from_cycles(n, &cycles).expect("valid cycles")
}

/// The unique reflection whose `psi`-image fixes the vertex `v`.
pub fn reflection_fixing_vertex(n: usize, v: usize) -> Result<DihedralElement, DihedralError> {
    check_parameter(n)?;
    if v < 1 || v > n {
        return Err(DihedralError::VertexOutOfRange(v, n));
    }
    for b in 0..n {
        let e = DihedralElement::new(n, true, b as isize).unwrap();
        if e.fixed_vertex() == Some(v) {
            return Ok(e);
        }
    }
    unreachable!("every vertex is fixed by exactly one reflection")
}

/// The conjugate `x^{-j} r x^{j}`, which works out to `r x^{2j mod n}`.
pub fn conjugate_reflection(n: usize, j: isize) -> DihedralElement {
    DihedralElement::new(n, true, 2 * j).expect("bad dihedral parameter")
}

/// Canonical transposition word for `psi(x)` in degree `n`: `[1, 2, .., n-1]`
/// with the first letter applied first.
pub fn psi_x_word(n: usize) -> TranspositionWord {
    TranspositionWord::new(n, (1..n).collect()).expect("valid word")
}

/// Canonical reduced transposition word for `psi(r)`.
pub fn psi_r_word(n: usize) -> TranspositionWord {
    normal_form_word(&psi_r(n))
}

/// Transposition word for a single dihedral letter. Inverse letters use the
/// reversed word, which evaluates to the inverse because the generators are
/// involutions.
pub fn psi_letter_word(n: usize, letter: Letter) -> TranspositionWord {
    match letter {
        Letter::R { inv: false } => psi_r_word(n),
        Letter::R { inv: true } => {
            let mut w = psi_r_word(n);
            w.letters.reverse();
            w
        }
        Letter::X { inv: false } => psi_x_word(n),
        Letter::X { inv: true } => {
            let mut w = psi_x_word(n);
            w.letters.reverse();
            w
        }
        Letter::T(_) => panic!("psi_letter_word takes a dihedral letter"),
    }
}

/// Transposition word for a dihedral word (letters bottom-to-top, first
/// applied first); optionally Coxeter-reduced to the canonical form.
pub fn psi_word_letters(n: usize, letters: &[Letter], reduced: bool) -> TranspositionWord {
    let mut out = Vec::new();
    for &l in letters {
        out.extend(psi_letter_word(n, l).letters);
    }
    let w = TranspositionWord::new(n, out).expect("valid word");
    if reduced {
        crate::perm::reduce_word(&w)
    } else {
        w
    }
}

/// Transposition word for an element in normal form: the `x`-part first
/// (applied first), then the reflection word.
pub fn psi_word(e: &DihedralElement, reduced: bool) -> TranspositionWord {
    let n = e.parameter();
    let mut letters = Vec::new();
    for _ in 0..e.rotation_exponent() {
        letters.push(Letter::X { inv: false });
    }
    if e.is_reflection() {
        letters.push(Letter::R { inv: false });
    }
    psi_word_letters(n, &letters, reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_permutation;

    fn el(s: &str) -> DihedralElement {
        parse_element(5, s).unwrap()
    }

    #[test]
    fn rejects_even_parameter() {
        assert_eq!(
            DihedralElement::new(4, false, 0).unwrap_err(),
            DihedralError::BadParameter(4)
        );
    }

    #[test]
    fn normal_form_products() {
        let r = DihedralElement::r(5);
        let x = DihedralElement::x(5);
        assert_eq!(r.multiply(&x), el("r x"));
        // x·r = r x^{n-1}
        assert_eq!(x.multiply(&r), el("r x^4"));
        for k in 0..5 {
            assert!(x.pow(k).multiply(&x.pow(5 - k)).is_identity());
        }
    }

    #[test]
    fn relators_evaluate_to_identity() {
        let r = DihedralElement::r(5);
        let x = DihedralElement::x(5);
        assert!(r.multiply(&r).is_identity());
        assert!(x.pow(5).is_identity());
        let xr = x.multiply(&r);
        assert!(xr.multiply(&xr).is_identity());
    }

    #[test]
    fn psi_of_generators() {
        assert_eq!(psi_r(5), parse_permutation(5, "(1 3)(4 5)").unwrap());
        assert_eq!(psi_r(7), parse_permutation(7, "(2 4)(1 5)(6 7)").unwrap());
        assert_eq!(psi_x(5), parse_permutation(5, "(1 5 4 3 2)").unwrap());
        assert!(DihedralElement::x(5).pow(5).psi().is_identity());
    }

    #[test]
    fn psi_is_homomorphism_for_n5() {
        for a in DihedralElement::all(5) {
            for b in DihedralElement::all(5) {
                assert_eq!(a.multiply(&b).psi(), a.psi().compose(&b.psi()));
            }
        }
    }

    #[test]
    fn reflection_table_from_rotating_r() {
        // rx=[5], rx^2=[3], rx^3=[1], rx^4=[4], r=[2]
        assert_eq!(el("r").fixed_vertex(), Some(2));
        assert_eq!(el("r x").fixed_vertex(), Some(5));
        assert_eq!(el("r x^2").fixed_vertex(), Some(3));
        assert_eq!(el("r x^3").fixed_vertex(), Some(1));
        assert_eq!(el("r x^4").fixed_vertex(), Some(4));
    }

    #[test]
    fn conjugation_table() {
        assert_eq!(conjugate_reflection(5, 0), el("r"));
        assert_eq!(conjugate_reflection(5, 1), el("r x^2")); // [3]
        assert_eq!(conjugate_reflection(5, 2), el("r x^4")); // [4]
        assert_eq!(conjugate_reflection(5, 3), el("r x")); // [5]
        assert_eq!(conjugate_reflection(5, 4), el("r x^3")); // [1]
        // Explicitly: x^{-j} r x^{j} computed in the group.
        for j in 0..5 {
            let x = DihedralElement::x(5);
            let manual = x
                .pow(-(j as i64))
                .multiply(&DihedralElement::r(5))
                .multiply(&x.pow(j as i64));
            assert_eq!(conjugate_reflection(5, j as isize), manual);
        }
    }

    #[test]
    fn vertex_map_is_a_bijection() {
        for n in [5usize, 7, 9] {
            let mut seen = vec![false; n];
            for j in 0..n {
                let v = conjugate_reflection(n, j as isize).fixed_vertex().unwrap();
                assert!(!seen[v - 1]);
                seen[v - 1] = true;
            }
        }
    }

    #[test]
    fn normal_form_count() {
        let all = DihedralElement::all(5);
        assert_eq!(all.len(), 10);
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                if i != j {
                    assert_ne!(a, b);
                }
            }
        }
    }

    #[test]
    fn psi_words_evaluate_correctly() {
        assert_eq!(psi_x_word(5).letters, vec![1, 2, 3, 4]);
        assert_eq!(psi_x_word(5).evaluate(), psi_x(5));
        let rw = psi_r_word(5);
        assert_eq!(rw.evaluate(), psi_r(5));
        assert_eq!(rw.len(), psi_r(5).inversions());
        assert!(psi_word(&DihedralElement::identity(5), true).is_empty());
        for e in DihedralElement::all(7) {
            assert_eq!(psi_word(&e, false).evaluate(), e.psi());
            assert_eq!(psi_word(&e, true).evaluate(), e.psi());
        }
    }

    #[test]
    fn parse_and_display() {
        for e in DihedralElement::all(5) {
            assert_eq!(parse_element(5, &e.to_string()).unwrap(), e);
        }
        assert_eq!(parse_element(5, "[3]").unwrap(), el("r x^2"));
        assert_eq!(parse_element(5, "[2]").unwrap(), el("r"));
    }
}
