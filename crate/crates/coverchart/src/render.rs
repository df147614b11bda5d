//! Deterministic SVG rendering of charts: levels run along the horizontal
//! axis, strand positions along the vertical, one color per generator.

use std::fmt::Write as _;

use crate::chart::{Chart, ChartError, EventKind, Letter};

const DX: i64 = 48;
const DY: i64 = 28;
const MARGIN: i64 = 24;

/// Per-generator palette, in the order of the figure legends:
/// `t_1` blue, `t_2` pink, `t_3` green, `t_4` red, then cycling; the
/// reflection is black and the rotation green.
pub fn letter_color(letter: Letter) -> &'static str {
    const T_COLORS: [&str; 6] = [
        "#1f77b4", "#e377c2", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e",
    ];
    match letter {
        Letter::T(j) => T_COLORS[(j - 1) % T_COLORS.len()],
        Letter::R { .. } => "#000000",
        Letter::X { .. } => "#2ca02c",
    }
}

fn x_of(level: usize) -> i64 {
    MARGIN + DX * level as i64
}

fn y_of(pos: usize, width: usize) -> i64 {
    MARGIN + DY * (width as i64 - pos as i64)
}

/// Renders a valid chart to an SVG document. Output is byte-identical for
/// identical inputs.
pub fn render_chart(chart: &Chart, title: &str) -> Result<String, ChartError> {
    let slices = chart.slices()?;
    let width = slices.iter().map(Vec::len).max().unwrap_or(0).max(1);
    let w = x_of(chart.events.len() + 1) + MARGIN;
    let h = y_of(0, width) + MARGIN;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    let _ = writeln!(svg, "<title>{title}</title>");
    let _ = writeln!(
        svg,
        "<rect x=\"1\" y=\"1\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"#888\"/>",
        w - 2,
        h - 2
    );
    // Strand segments: each letter of each slice draws one horizontal
    // segment across its column, then a connector to its position in the
    // next column.
    for (c, slice) in slices.iter().enumerate() {
        let (x0, x1) = (x_of(c), x_of(c + 1));
        for (i, &l) in slice.iter().enumerate() {
            let y = y_of(i, width);
            let _ = writeln!(
                svg,
                "<line x1=\"{x0}\" y1=\"{y}\" x2=\"{x1}\" y2=\"{y}\" stroke=\"{}\" stroke-width=\"2\"/>",
                letter_color(l)
            );
        }
        if c < chart.events.len() {
            let ev = &chart.events[c];
            let b = ev.before().len();
            let a = ev.after().len();
            // Connectors for strands passing above the event window.
            for i in ev.pos + b..slice.len() {
                let y0 = y_of(i, width);
                let y1 = y_of(i - b + a, width);
                if y0 != y1 {
                    let _ = writeln!(
                        svg,
                        "<line x1=\"{x1}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y1}\" stroke=\"{}\" stroke-width=\"1\" stroke-dasharray=\"2,2\"/>",
                        letter_color(slice[i])
                    );
                }
            }
            // Event glyphs at the level line.
            let ym = y_of(ev.pos, width) - DY / 2;
            match &ev.kind {
                EventKind::Black { letter, .. } => {
                    let _ = writeln!(
                        svg,
                        "<circle cx=\"{x1}\" cy=\"{}\" r=\"5\" fill=\"{}\"/>",
                        y_of(ev.pos, width),
                        letter_color(*letter)
                    );
                }
                EventKind::Branch { word, .. } => {
                    let _ = writeln!(
                        svg,
                        "<circle cx=\"{x1}\" cy=\"{}\" r=\"7\" fill=\"black\"/>",
                        y_of(ev.pos + word.len() / 2, width)
                    );
                }
                EventKind::White { .. } => {
                    let _ = writeln!(
                        svg,
                        "<circle cx=\"{x1}\" cy=\"{}\" r=\"5\" fill=\"white\" stroke=\"black\"/>",
                        y_of(ev.pos + 1, width)
                    );
                }
                EventKind::Crossing { .. } => {
                    let y0 = y_of(ev.pos, width);
                    let y1 = y_of(ev.pos + 1, width);
                    let _ = writeln!(
                        svg,
                        "<line x1=\"{}\" y1=\"{y0}\" x2=\"{}\" y2=\"{y1}\" stroke=\"#444\" stroke-width=\"1\"/>",
                        x1 - 6,
                        x1 + 6
                    );
                    let _ = writeln!(
                        svg,
                        "<line x1=\"{}\" y1=\"{y1}\" x2=\"{}\" y2=\"{y0}\" stroke=\"#444\" stroke-width=\"1\"/>",
                        x1 - 6,
                        x1 + 6
                    );
                }
                EventKind::Cup { .. } | EventKind::Cap { .. } => {
                    let y0 = y_of(ev.pos, width);
                    let y1 = y_of(ev.pos + 1, width);
                    let _ = writeln!(
                        svg,
                        "<path d=\"M {x1} {y0} Q {} {} {x1} {y1}\" fill=\"none\" stroke=\"#444\" stroke-width=\"1\"/>",
                        x1 + if matches!(ev.kind, EventKind::Cup { .. }) { -10 } else { 10 },
                        (y0 + y1) / 2
                    );
                }
                EventKind::Relator { .. } => {
                    let _ = writeln!(
                        svg,
                        "<rect x=\"{}\" y=\"{}\" width=\"8\" height=\"8\" fill=\"#666\"/>",
                        x1 - 4,
                        ym
                    );
                }
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Alphabet;
    use crate::moves::word_wall;

    #[test]
    fn render_is_deterministic() {
        let chart = word_wall(5, Alphabet::Permutation, &[Letter::T(1), Letter::T(2)]);
        let a = render_chart(&chart, "wall").unwrap();
        let b = render_chart(&chart, "wall").unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.contains("circle"));
    }

    #[test]
    fn empty_chart_renders_frame_only() {
        let svg = render_chart(&Chart::empty(5, Alphabet::Permutation), "empty").unwrap();
        assert!(svg.contains("<rect"));
        assert!(!svg.contains("circle"));
    }
}
