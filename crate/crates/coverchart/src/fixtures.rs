//! Named example charts and the committed fixture files: lemma
//! certificates, relator blocks for n = 5, 7, 9, and the 21-step
//! torus-knot movie. Each committed file must match its generator exactly;
//! the ignored `regenerate_fixtures` test rewrites them.

use serde::{Deserialize, Serialize};

use crate::chart::{Alphabet, Chart, ChartEvent, EventKind, Letter};
use crate::moves::{relator_block, Certificate, Presentation};

fn t(j: usize) -> Letter {
    Letter::T(j)
}

/// The resolved chart with four simple branch points realizing the movie
/// `id => (12)(12) => (12)(23)(12)(45) => (12)(12) => id`: the branched
/// cover is a union of three 2-spheres.
pub fn submarine_chart() -> Chart {
    Chart::new(
        5,
        Alphabet::Permutation,
        vec![
            ChartEvent::new(0, EventKind::Cup { letter: t(1) }),
            ChartEvent::new(1, EventKind::Black { letter: t(2), insert: true, vertex: None }),
            ChartEvent::new(3, EventKind::Black { letter: t(4), insert: true, vertex: None }),
            ChartEvent::new(1, EventKind::Black { letter: t(2), insert: false, vertex: None }),
            ChartEvent::new(2, EventKind::Black { letter: t(4), insert: false, vertex: None }),
            ChartEvent::new(0, EventKind::Cap { letter: t(1) }),
        ],
    )
}

/// Two radial branch vertices joined by the strands of the full rotation
/// word: a five-fold cyclic cover of the sphere with two branch points,
/// itself a sphere.
pub fn fromnone2five_chart() -> Chart {
    let word: Vec<Letter> = (1..5).map(Letter::T).collect();
    Chart::new(
        5,
        Alphabet::Permutation,
        vec![
            ChartEvent::new(0, EventKind::Branch { word: word.clone(), insert: true, vertex: None }),
            ChartEvent::new(0, EventKind::Branch { word, insert: false, vertex: None }),
        ],
    )
}

/// A trivialization fragment for one dihedral relator under `psi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelatorFixture {
    pub n: usize,
    pub relator: String,
    pub word: Vec<usize>,
    pub events: Vec<ChartEvent>,
}

/// Relator expansion fixtures for `r^2`, `x^n`, `(rx)^2` at n = 5, 7, 9.
pub fn relator_fixtures() -> Vec<RelatorFixture> {
    let mut out = Vec::new();
    for n in [5usize, 7, 9] {
        let pres = Presentation::dihedral(n);
        let psi = vec![crate::dihedral::psi_r_word(n), crate::dihedral::psi_x_word(n)];
        let names = ["r^2", "x^n", "(rx)^2"];
        for (relator, name) in pres.relators.iter().zip(names) {
            let (word, events) = relator_block(&pres, &psi, relator, 0).expect("relator trivial");
            out.push(RelatorFixture {
                n,
                relator: name.to_string(),
                word,
                events,
            });
        }
    }
    out
}

pub fn committed_lemma1() -> Certificate {
    serde_json::from_str(include_str!("../fixtures/lemma1.cert.json")).expect("fixture parses")
}

pub fn committed_corollary1() -> Certificate {
    serde_json::from_str(include_str!("../fixtures/corollary1.cert.json")).expect("fixture parses")
}

pub fn committed_lemma2() -> Certificate {
    serde_json::from_str(include_str!("../fixtures/lemma2.cert.json")).expect("fixture parses")
}

pub fn committed_relator_fixtures() -> Vec<RelatorFixture> {
    serde_json::from_str(include_str!("../fixtures/relator_blocks.json")).expect("fixture parses")
}

pub fn committed_submarine() -> Chart {
    Chart::from_json(include_str!("../fixtures/submarine.chart.json")).expect("fixture parses")
}

pub fn committed_fromnone2five() -> Chart {
    Chart::from_json(include_str!("../fixtures/fromnone2five.chart.json")).expect("fixture parses")
}
