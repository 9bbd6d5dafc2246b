//! Cost scatter with a rug of the cost distribution, as plain SVG text.

use std::fmt::Write;

use segdp::{GridPoint, SelectionReport};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 60.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;

/// Cost of every grid point against its position in the grid (ordered by `n`
/// then `c`). The selected cost region is shaded, the most common and
/// lowest-cost answers are ringed and the rug on the right shows all costs.
pub fn grid_plot(points: &[GridPoint], report: &SelectionReport) -> String {
    let costs: Vec<(usize, f64)> = points
        .iter()
        .enumerate()
        .filter_map(|(i, p)| p.cost().map(|c| (i, c)))
        .collect();
    let lo = costs.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let hi = costs.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if costs.is_empty() {
        (0.0, 1.0)
    } else if hi > lo {
        (lo, hi)
    } else {
        (lo - 0.5, hi + 0.5)
    };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_of = |i: usize| LEFT + plot_w * (i as f64 + 0.5) / points.len().max(1) as f64;
    let y_of = |c: f64| TOP + plot_h * (1.0 - (c - lo) / (hi - lo));

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"11\">"
    );
    let _ = writeln!(
        s,
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
    );
    if let Some((a, b)) = report.region {
        let (y1, y2) = (y_of(b.min(hi)), y_of(a.max(lo)));
        let _ = writeln!(
            s,
            "<rect x=\"{LEFT:.2}\" y=\"{y1:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#fde9b8\"/>",
            plot_w + RIGHT * 0.6,
            (y2 - y1).max(1.0)
        );
    }
    let _ = writeln!(
        s,
        "<rect x=\"{LEFT:.2}\" y=\"{TOP:.2}\" width=\"{plot_w:.2}\" height=\"{plot_h:.2}\" fill=\"none\" stroke=\"black\"/>"
    );
    for k in 0..=4 {
        let c = lo + (hi - lo) * k as f64 / 4.0;
        let y = y_of(c);
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{c:.3e}</text>",
            LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">grid point (n, then c)</text>",
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(s, "<text x=\"12\" y=\"{:.2}\" transform=\"rotate(-90 12 {:.2})\" text-anchor=\"middle\">cost</text>", TOP + plot_h / 2.0, TOP + plot_h / 2.0);

    for &(i, c) in &costs {
        let fill = if report.region_members.contains(&i) {
            "#c0392b"
        } else {
            "#34495e"
        };
        let _ = writeln!(
            s,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{fill}\"/>",
            x_of(i),
            y_of(c)
        );
    }
    let mut ring = |i: usize, color: &str, label: &str| {
        if let Some(c) = points[i].cost() {
            let (x, y) = (x_of(i), y_of(c));
            let _ = writeln!(s, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"7\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>");
            let _ = writeln!(
                s,
                "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{color}\">{label}</text>",
                x + 9.0,
                y - 6.0
            );
        }
    };
    ring(report.lowest_cost, "#2471a3", "lowest cost");
    if let Some(mc) = report.most_common {
        ring(mc, "#1e8449", "most common");
    }

    let rug_x = LEFT + plot_w + 8.0;
    for c in &report.rug {
        let y = y_of(*c);
        let _ = writeln!(s, "<line x1=\"{rug_x:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"black\" stroke-opacity=\"0.5\"/>", rug_x + 14.0);
    }
    s.push_str("</svg>\n");
    s
}
