//! Charts for branched covers of the 2-sphere and 3-sphere.
//!
//! A chart is a labeled graph in a disk, stored here as a Morse-style event
//! movie: a sequence of local events (cups, caps, crossings, white vertices,
//! branch vertices) acting on a vertical slice word. Permutation charts carry
//! letters `t_1 .. t_{n-1}` (adjacent transpositions in the symmetric group);
//! dihedral charts carry letters `r, x` and their inverses together with
//! relator vertices for `r^2`, `x^n` and `(rx)^2`.
//!
//! The crate provides:
//!
//! - exact arithmetic in the symmetric group and the odd dihedral groups,
//!   including the permutation representation `psi` of `D_n` ([`perm`],
//!   [`dihedral`]);
//! - chart validation, slice extraction and monodromy ([`chart`], [`cover`]);
//! - covering-surface invariants (components, Euler characteristic, genus)
//!   computed two independent ways: from global monodromies and from a
//!   cell-by-cell sheet tracing oracle ([`cover`]);
//! - a rewriting engine over charts with an explicit move catalogue,
//!   move-sequence certificates and bounded search ([`moves`], [`straighten`]);
//! - compilation of dihedral charts to permutation charts, branch-point
//!   resolution and orientation lifting ([`compile`], [`orient`]);
//! - knot diagram input and Fox colorings by dihedral reflections ([`knot`]);
//! - chart movies for covers of the 3-sphere: the cyclic pipeline, the
//!   dihedral pipeline and a committed 21-step torus-knot movie ([`movie`]);
//! - deterministic SVG rendering ([`render`]).
//!
//! Conventions used throughout (they match everywhere, so fix them once):
//! products compose rightmost-first, `compose(p, q)` applies `q` first;
//! slice words are read bottom-to-top and the bottom letter acts first.

pub mod chart;
pub mod compile;
pub mod cover;
pub mod dihedral;
pub mod dsu;
pub mod fixtures;
pub mod gen;
pub mod knot;
pub mod movie;
pub mod moves;
pub mod orient;
pub mod perm;
pub mod render;
pub mod straighten;

pub use chart::{Alphabet, Chart, ChartEvent, EventKind, Letter, Violation};
pub use cover::CoverInvariants;
pub use dihedral::DihedralElement;
pub use knot::{DihedralColoring, KnotDiagram};
pub use movie::ChartMovie;
pub use moves::{MoveInstance, MoveKind};
pub use perm::{Permutation, TranspositionWord};
