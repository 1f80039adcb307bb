//! Byte-stable SVG 1.1 figures: a tiling strip, the partition tower and the
//! Bratteli diagram. Coordinates are printed with fixed precision so equal
//! inputs give equal documents.

use std::fmt::Write;

use fchain::cutproject::Tile;
use fchain::ktheory::BratteliDiagram;
use fchain::{Letter, Partition};

const L_FILL: &str = "#3a6ea5";
const S_FILL: &str = "#e3a33b";
const MARGIN: f64 = 10.0;

fn fill(kind: Letter) -> &'static str {
    match kind {
        Letter::L => L_FILL,
        Letter::S => S_FILL,
    }
}

fn open(width: f64, height: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    )
}

fn rect(out: &mut String, x: f64, y: f64, w: f64, h: f64, kind: Letter, label: &str) {
    writeln!(
        out,
        "  <rect x=\"{x:.4}\" y=\"{y:.4}\" width=\"{w:.4}\" height=\"{h:.4}\" \
         fill=\"{}\" stroke=\"#ffffff\" stroke-width=\"0.5\"><title>{label}</title></rect>",
        fill(kind)
    )
    .expect("writing to a String");
}

/// One rectangle per tile; `scale` pixels per unit length; a vertical
/// marker at `origin`.
pub fn tiling(tiles: &[Tile], origin: f64, scale: f64) -> String {
    let height = 30.0;
    let end = tiles.last().map_or(origin, |t| t.start + t.length);
    let lo = origin.min(tiles.first().map_or(origin, |t| t.start));
    let width = (end - lo) * scale + 2.0 * MARGIN;
    let mut out = open(width, height + 2.0 * MARGIN + 10.0);
    let x = |v: f64| MARGIN + (v - lo) * scale;
    for (i, t) in tiles.iter().enumerate() {
        let label = format!("{i}: {}", t.kind);
        rect(
            &mut out,
            x(t.start),
            MARGIN,
            t.length * scale,
            height,
            t.kind,
            &label,
        );
    }
    writeln!(
        out,
        "  <line x1=\"{0:.4}\" y1=\"{1:.4}\" x2=\"{0:.4}\" y2=\"{2:.4}\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>",
        x(origin),
        MARGIN / 2.0,
        MARGIN + height + 10.0
    )
    .expect("writing to a String");
    out.push_str("</svg>\n");
    out
}

/// Rows `W_0, ..., W_n` stacked top to bottom over a common `(0, 1)` axis.
pub fn tower(levels: &[Partition], width: f64) -> String {
    let row = 22.0;
    let gap = 6.0;
    let label = 36.0;
    let height = levels.len() as f64 * (row + gap) + 2.0 * MARGIN;
    let mut out = open(width + label + 2.0 * MARGIN, height);
    for (r, w) in levels.iter().enumerate() {
        let y = MARGIN + r as f64 * (row + gap);
        writeln!(
            out,
            "  <text x=\"{MARGIN:.4}\" y=\"{:.4}\" font-family=\"sans-serif\" font-size=\"12\">W{}</text>",
            y + row * 0.7,
            w.level
        )
        .expect("writing to a String");
        for i in &w.intervals {
            let x = MARGIN + label + i.lo.to_f64() * width;
            let text = format!("{} ({}, {}) {}", i.kind, i.lo, i.hi, i.path);
            rect(
                &mut out,
                x,
                y,
                i.length().to_f64() * width,
                row,
                i.kind,
                &text,
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Two nodes per level (L left, S right) joined by the three edges of the
/// inclusion `L -> L`, `S -> L`, `L -> S`.
pub fn bratteli(diagram: &BratteliDiagram) -> String {
    let dy = 70.0;
    let (xl, xs) = (60.0, 160.0);
    let height = diagram.levels.len().max(1) as f64 * dy + MARGIN;
    let mut out = open(220.0, height);
    let y = |n: usize| MARGIN + 30.0 + n as f64 * dy;
    for v in diagram.levels.iter().skip(1) {
        let (n, from) = (v.level, y(v.level - 1));
        let to = y(n);
        for (x1, x2) in [(xl, xl), (xs, xl), (xl, xs)] {
            writeln!(
                out,
                "  <line x1=\"{x1:.1}\" y1=\"{from:.1}\" x2=\"{x2:.1}\" y2=\"{to:.1}\" stroke=\"#555555\" stroke-width=\"1.2\"/>"
            )
            .expect("writing to a String");
        }
    }
    for v in &diagram.levels {
        let cy = y(v.level);
        for (cx, kind, weight) in [(xl, Letter::L, &v.k), (xs, Letter::S, &v.k_prime)] {
            writeln!(
                out,
                "  <circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"16\" fill=\"{}\"/>\n  \
                 <text x=\"{cx:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
                 font-size=\"11\" fill=\"#ffffff\">{weight}</text>",
                fill(kind),
                cy + 4.0
            )
            .expect("writing to a String");
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use fchain::build_partition;
    use fchain::cutproject::{render_tiling, tile_lengths};

    fn count(doc: &str, tag: &str) -> usize {
        doc.matches(tag).count()
    }

    #[test]
    fn tower_level_two_widths() {
        let doc = tower(&[build_partition(2).unwrap()], 1000.0);
        assert_eq!(count(&doc, "<rect"), 3);
        for w in ["381.9660", "236.0680"] {
            assert!(doc.contains(&format!("width=\"{w}\"")), "{w}");
        }
    }

    #[test]
    fn single_tile() {
        let tiles = render_tiling(&"L".parse().unwrap(), 0.0);
        let doc = tiling(&tiles, 0.0, 100.0);
        assert_eq!(count(&doc, "<rect"), 1);
        assert!(doc.contains(&format!("width=\"{:.4}\"", tile_lengths().0 * 100.0)));
    }

    #[test]
    fn bratteli_three_levels() {
        let doc = bratteli(&BratteliDiagram::new(3));
        assert_eq!(count(&doc, "<circle"), 6);
        assert_eq!(count(&doc, "<line"), 6);
    }

    #[test]
    fn documents_are_stable() {
        let tiles = render_tiling(&"LSLLS".parse().unwrap(), 1.0);
        assert_eq!(tiling(&tiles, 1.0, 50.0), tiling(&tiles, 1.0, 50.0));
        let levels: Vec<_> = (0..4).map(|n| build_partition(n).unwrap()).collect();
        assert_eq!(tower(&levels, 600.0), tower(&levels, 600.0));
    }
}
