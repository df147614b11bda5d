//! Covering-surface invariants of a permutation chart.
//!
//! Two independent routes compute the same data. [`cover_invariants`] reads
//! global monodromies off the branch vertices (local word conjugated by the
//! slice prefix below the vertex, all loops based below the chart) and
//! applies Riemann-Hurwitz. [`sheet_trace_oracle`] builds the cover cell by
//! cell: it stacks `n` sheets over every slice cell, glues sheets `j, j+1`
//! across each edge labeled `j`, glues identically across level lines, cones
//! branch vertices by walking their corner links, and counts cells per
//! component. The two must agree exactly; the oracle is the ground truth in
//! tests.

use serde::Serialize;

use crate::chart::{slice_dihedral, slice_permutation, Alphabet, Chart, ChartError, Letter};
use crate::dihedral::DihedralElement;
use crate::dsu::UnionFind;
use crate::perm::{orbits, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentInvariants {
    pub sheets: Vec<usize>,
    pub euler: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverInvariants {
    pub degree: usize,
    pub branch_count: usize,
    pub component_orbits: Vec<Vec<usize>>,
    pub euler_total: i64,
    pub per_component: Vec<ComponentInvariants>,
}

impl CoverInvariants {
    pub fn components(&self) -> usize {
        self.component_orbits.len()
    }
}

/// Global monodromy of every branch-like event, in event order; delete
/// events contribute the inverse loop so that the ordered composition of
/// the whole list is the identity on a valid chart.
pub fn global_monodromies(chart: &Chart) -> Result<Vec<Permutation>, ChartError> {
    assert_eq!(
        chart.alphabet,
        Alphabet::Permutation,
        "global_monodromies needs a permutation chart"
    );
    let n = chart.degree;
    let slices = chart.slices()?;
    let mut out = Vec::new();
    for (i, ev) in chart.events.iter().enumerate() {
        if !ev.is_branch_like() {
            continue;
        }
        let slice = &slices[i];
        let prefix = slice_permutation(n, &slice[..ev.pos]);
        let local = slice_permutation(n, &ev.branch_word().expect("branch event"));
        let local = if ev.is_insert().unwrap() {
            local
        } else {
            local.inverse()
        };
        out.push(prefix.inverse().compose(&local).compose(&prefix));
    }
    Ok(out)
}

/// Dihedral analogue of [`global_monodromies`].
pub fn global_dihedral_monodromies(chart: &Chart) -> Result<Vec<DihedralElement>, ChartError> {
    assert_eq!(
        chart.alphabet,
        Alphabet::Dihedral,
        "global_dihedral_monodromies needs a dihedral chart"
    );
    let n = chart.degree;
    let slices = chart.slices()?;
    let mut out = Vec::new();
    for (i, ev) in chart.events.iter().enumerate() {
        if !ev.is_branch_like() {
            continue;
        }
        let slice = &slices[i];
        let prefix = slice_dihedral(n, &slice[..ev.pos]);
        let local = slice_dihedral(n, &ev.branch_word().expect("branch event"));
        let local = if ev.is_insert().unwrap() {
            local
        } else {
            local.inverse()
        };
        out.push(prefix.inverse().multiply(&local).multiply(&prefix));
    }
    Ok(out)
}

/// Invariants from a list of branch monodromies: orbits of the generated
/// group, Riemann-Hurwitz Euler characteristic, and per-component data by
/// restriction.
pub fn invariants_from_monodromies(n: usize, gens: &[Permutation]) -> CoverInvariants {
    let component_orbits = orbits(n, gens);
    let b = gens.len() as i64;
    let euler_total = (n as i64) * (2 - b) + gens.iter().map(|g| g.cycle_count() as i64).sum::<i64>();
    let per_component: Vec<ComponentInvariants> = component_orbits
        .iter()
        .map(|orbit| {
            let size = orbit.len() as i64;
            let mut euler = 2 * size;
            for g in gens {
                euler -= size - g.cycle_count_on(orbit) as i64;
            }
            ComponentInvariants {
                sheets: orbit.clone(),
                euler,
                genus: genus_of(euler),
            }
        })
        .collect();
    debug_assert_eq!(
        euler_total,
        per_component.iter().map(|c| c.euler).sum::<i64>()
    );
    CoverInvariants {
        degree: n,
        branch_count: gens.len(),
        component_orbits,
        euler_total,
        per_component,
    }
}

fn genus_of(euler: i64) -> Option<i64> {
    if euler <= 2 && euler % 2 == 0 {
        Some((2 - euler) / 2)
    } else {
        None
    }
}

/// Monodromy-route invariants of a valid permutation chart.
pub fn cover_invariants(chart: &Chart) -> Result<CoverInvariants, ChartError> {
    let gens = global_monodromies(chart)?;
    Ok(invariants_from_monodromies(chart.degree, &gens))
}

/// Sheet index map of the generator `t_j` on 0-based sheets.
fn sheet_swap(j: usize, k: usize) -> usize {
    if k + 1 == j {
        k + 1
    } else if k == j {
        k - 1
    } else {
        k
    }
}

/// Cell-by-cell construction of the cover; see the module docs.
pub fn sheet_trace_oracle(chart: &Chart) -> Result<CoverInvariants, ChartError> {
    assert_eq!(
        chart.alphabet,
        Alphabet::Permutation,
        "sheet_trace_oracle needs a permutation chart"
    );
    let n = chart.degree;
    let slices = chart.slices()?;
    if let Some(last) = slices.last() {
        if !last.is_empty() {
            return Err(ChartError::Invalid("final slice not empty".into()));
        }
    }
    let p = chart.events.len();
    let letter_index = |l: Letter| -> usize {
        match l {
            Letter::T(j) => j,
            other => panic!("dihedral letter {other} in oracle"),
        }
    };

    // Face ids: (column c, row r, sheet k).
    let mut col_offset = Vec::with_capacity(p + 1);
    let mut total = 0usize;
    for s in &slices {
        col_offset.push(total);
        total += (s.len() + 1) * n;
    }
    let face = |c: usize, r: usize, k: usize| col_offset[c] + r * n + k;
    let mut uf = UnionFind::new(total);

    // Vertical gluings across strand cuts.
    for (c, s) in slices.iter().enumerate() {
        for (r, &l) in s.iter().enumerate() {
            let j = letter_index(l);
            for k in 0..n {
                uf.union(face(c, r, k), face(c, r + 1, sheet_swap(j, k)));
            }
        }
    }

    // Horizontal gluings across level lines, below and above each event.
    for (i, ev) in chart.events.iter().enumerate() {
        let m = slices[i].len();
        let b = ev.before().len();
        let a = ev.after().len();
        for r in 0..=ev.pos {
            for k in 0..n {
                uf.union(face(i, r, k), face(i + 1, r, k));
            }
        }
        for d in 0..=(m - ev.pos - b) {
            for k in 0..n {
                uf.union(face(i, ev.pos + b + d, k), face(i + 1, ev.pos + a + d, k));
            }
        }
    }

    // Count lifted cells per component root.
    let mut faces_per = std::collections::HashMap::new();
    let mut edges_per = std::collections::HashMap::new();
    let mut verts_per = std::collections::HashMap::new();
    let mut rings_per = std::collections::HashMap::new();
    for c in 0..=p {
        for r in 0..=slices[c].len() {
            for k in 0..n {
                *faces_per.entry(uf.find(face(c, r, k))).or_insert(0i64) += 1;
            }
        }
    }
    // Strand edges lift once per sheet.
    for (c, s) in slices.iter().enumerate() {
        for r in 0..s.len() {
            for k in 0..n {
                *edges_per.entry(uf.find(face(c, r, k))).or_insert(0i64) += 1;
            }
        }
    }
    for (i, ev) in chart.events.iter().enumerate() {
        let m = slices[i].len();
        let b = ev.before().len();
        // Level-line segments below and above the event vertex.
        for r in 0..=ev.pos {
            for k in 0..n {
                *edges_per.entry(uf.find(face(i, r, k))).or_insert(0) += 1;
            }
        }
        for d in 0..=(m - ev.pos - b) {
            for k in 0..n {
                *edges_per.entry(uf.find(face(i, ev.pos + b + d, k))).or_insert(0) += 1;
            }
        }
        // Passing strands pierce the level line in an unbranched point.
        for r in (0..ev.pos).chain(ev.pos + b..m) {
            for k in 0..n {
                *verts_per.entry(uf.find(face(i, r, k))).or_insert(0) += 1;
            }
        }
        // The event vertex itself: walk the corner link to build the return
        // map on sheets, then cone. Orbits are the lifts of the vertex.
        let mut ret = Permutation::identity(n);
        let before = ev.before();
        let after = ev.after();
        for l in &before {
            let j = letter_index(*l);
            ret = Permutation::adjacent_transposition(n, j).compose(&ret);
        }
        for l in after.iter().rev() {
            let j = letter_index(*l);
            ret = Permutation::adjacent_transposition(n, j).compose(&ret);
        }
        for cycle in ret.cycles() {
            let k = cycle[0] - 1;
            *verts_per.entry(uf.find(face(i, ev.pos, k))).or_insert(0) += 1;
        }
    }
    // The boundary circle of the rectangle lifts to n rings; capping each
    // off closes the component to a surface.
    for k in 0..n {
        *rings_per.entry(uf.find(face(0, 0, k))).or_insert(0i64) += 1;
    }

    // Orbit partition: sheets grouped by the component of their boundary
    // ring.
    let mut roots: Vec<usize> = (0..n).map(|k| uf.find(face(0, 0, k))).collect();
    let mut orbit_of_root: std::collections::HashMap<usize, Vec<usize>> =
        std::collections::HashMap::new();
    for (k, root) in roots.iter().enumerate() {
        orbit_of_root.entry(*root).or_default().push(k + 1);
    }
    roots.sort_unstable();
    roots.dedup();
    let mut component_orbits: Vec<Vec<usize>> = orbit_of_root.values().cloned().collect();
    component_orbits.sort_by_key(|o| o[0]);

    let mut per_component = Vec::new();
    for orbit in &component_orbits {
        let root = uf.find(face(0, 0, orbit[0] - 1));
        let euler = verts_per.get(&root).copied().unwrap_or(0)
            - edges_per.get(&root).copied().unwrap_or(0)
            + faces_per.get(&root).copied().unwrap_or(0)
            + rings_per.get(&root).copied().unwrap_or(0);
        per_component.push(ComponentInvariants {
            sheets: orbit.clone(),
            euler,
            genus: genus_of(euler),
        });
    }
    let euler_total = per_component.iter().map(|c| c.euler).sum();
    let branch_count = chart.events.iter().filter(|e| e.is_branch_like()).count();
    Ok(CoverInvariants {
        degree: n,
        branch_count,
        component_orbits,
        euler_total,
        per_component,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{ChartEvent, EventKind};
    use crate::perm::parse_permutation;

    fn t(j: usize) -> Letter {
        Letter::T(j)
    }

    fn submarine() -> Chart {
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

    fn two_branch_cycles() -> Chart {
        let w: Vec<Letter> = vec![t(1), t(2), t(3), t(4)];
        Chart::new(
            5,
            Alphabet::Permutation,
            vec![
                ChartEvent::new(0, EventKind::Branch { word: w.clone(), insert: true, vertex: None }),
                ChartEvent::new(0, EventKind::Branch { word: w, insert: false, vertex: None }),
            ],
        )
    }

    #[test]
    fn submarine_monodromies() {
        let gens = global_monodromies(&submarine()).unwrap();
        let shown: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, vec!["(1 3)", "(4 5)", "(1 3)", "(4 5)"]);
        // Ordered composition collapses to the identity.
        let mut acc = Permutation::identity(5);
        for g in &gens {
            acc = acc.compose(g);
        }
        assert!(acc.is_identity());
    }

    #[test]
    fn simple_black_vertex_with_empty_prefix() {
        let c = Chart::new(
            5,
            Alphabet::Permutation,
            vec![
                ChartEvent::new(0, EventKind::Black { letter: t(2), insert: true, vertex: None }),
                ChartEvent::new(0, EventKind::Black { letter: t(2), insert: false, vertex: None }),
            ],
        );
        let gens = global_monodromies(&c).unwrap();
        assert_eq!(gens[0], parse_permutation(5, "(2 3)").unwrap());
    }

    #[test]
    fn submarine_is_three_spheres() {
        let inv = cover_invariants(&submarine()).unwrap();
        assert_eq!(inv.components(), 3);
        assert_eq!(inv.euler_total, 6);
        for c in &inv.per_component {
            assert_eq!(c.euler, 2);
            assert_eq!(c.genus, Some(0));
        }
        let oracle = sheet_trace_oracle(&submarine()).unwrap();
        assert_eq!(oracle, inv);
    }

    #[test]
    fn two_cyclic_branch_points_make_a_sphere() {
        let inv = cover_invariants(&two_branch_cycles()).unwrap();
        assert_eq!(inv.components(), 1);
        assert_eq!(inv.euler_total, 2);
        assert_eq!(sheet_trace_oracle(&two_branch_cycles()).unwrap(), inv);
    }

    #[test]
    fn empty_chart_is_n_spheres() {
        for n in [2usize, 5, 7] {
            let c = Chart::empty(n, Alphabet::Permutation);
            let inv = cover_invariants(&c).unwrap();
            assert_eq!(inv.components(), n);
            assert_eq!(inv.euler_total, 2 * n as i64);
            assert_eq!(sheet_trace_oracle(&c).unwrap(), inv);
        }
    }

    #[test]
    fn riemann_hurwitz_identity() {
        for chart in [submarine(), two_branch_cycles()] {
            let inv = cover_invariants(&chart).unwrap();
            let gens = global_monodromies(&chart).unwrap();
            let n = chart.degree as i64;
            let rh: i64 = 2 * n
                - gens
                    .iter()
                    .map(|g| n - g.cycle_count() as i64)
                    .sum::<i64>();
            assert_eq!(inv.euler_total, rh);
        }
    }

    #[test]
    fn conjugation_safety() {
        let gens = global_monodromies(&submarine()).unwrap();
        let inv = invariants_from_monodromies(5, &gens);
        let h = parse_permutation(5, "(1 2 3 4 5)").unwrap();
        let conj: Vec<Permutation> = gens
            .iter()
            .map(|g| h.inverse().compose(g).compose(&h))
            .collect();
        let inv2 = invariants_from_monodromies(5, &conj);
        let sizes = |inv: &CoverInvariants| {
            let mut s: Vec<usize> = inv.component_orbits.iter().map(Vec::len).collect();
            s.sort_unstable();
            s
        };
        assert_eq!(sizes(&inv), sizes(&inv2));
        assert_eq!(inv.euler_total, inv2.euler_total);
    }
}
