//! Standalone SVG convergence plot: running win rate per strategy with its
//! Wilson band, plus a horizontal line at each exact analytic value.

use std::fmt::Write;

use crate::probcore::ExactProb;
use crate::stats::ConvergenceTrace;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 52.0;
const COLOURS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

#[derive(Debug, Clone)]
pub struct PlotOptions {
    pub title: String,
    /// Logarithmic trial axis (default) or linear.
    pub log_x: bool,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            title: "Convergence of win rates".to_string(),
            log_x: true,
        }
    }
}

/// A labelled horizontal reference line at an exact probability.
#[derive(Debug, Clone)]
pub struct Reference {
    pub label: String,
    pub value: ExactProb,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Frame {
    log_x: bool,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, trials: f64) -> f64 {
        let frac = if self.log_x {
            if self.x_max <= 1.0 {
                0.0
            } else {
                trials.max(1.0).ln() / self.x_max.ln()
            }
        } else if self.x_max <= 1.0 {
            0.0
        } else {
            (trials - 1.0) / (self.x_max - 1.0)
        };
        LEFT + frac * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, p: f64) -> f64 {
        let frac = (p - self.y_min) / (self.y_max - self.y_min);
        HEIGHT - BOTTOM - frac * (HEIGHT - TOP - BOTTOM)
    }
}

/// Renders traces and reference lines into a self-contained SVG 1.1 document.
///
/// Each trace polyline carries `data-final-win-rate` (the exact `f64` of its
/// last checkpoint) and each reference line carries `data-reference` (the
/// exact fraction), so the file can be checked mechanically.
pub fn render_convergence(
    traces: &[ConvergenceTrace],
    references: &[Reference],
    options: &PlotOptions,
) -> String {
    let x_max = traces
        .iter()
        .map(|t| t.last().trial_count as f64)
        .fold(1.0, f64::max);
    let frame = Frame {
        log_x: options.log_x,
        x_max,
        y_min: 0.0,
        y_max: 1.0,
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    );
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(&options.title)
    );

    // axes
    let (x0, x1) = (LEFT, WIDTH - RIGHT);
    let (y0, y1) = (HEIGHT - BOTTOM, TOP);
    let _ = writeln!(
        svg,
        r#"<path d="M{x0},{y1} L{x0},{y0} L{x1},{y0}" fill="none" stroke="black" stroke-width="1"/>"#
    );
    for tick in 0..=5 {
        let p = f64::from(tick) / 5.0;
        let y = frame.y(p);
        let _ = writeln!(
            svg,
            r##"<line x1="{x0}" y1="{y:.2}" x2="{x1}" y2="{y:.2}" stroke="#e0e0e0" stroke-width="1"/><text x="{}" y="{:.2}" text-anchor="end">{p:.1}</text>"##,
            x0 - 6.0,
            y + 4.0
        );
    }
    let x_ticks: Vec<f64> = if options.log_x {
        let decades = x_max.log10().floor() as i32;
        (0..=decades).map(|d| 10f64.powi(d)).collect()
    } else {
        (0..=4)
            .map(|i| 1.0 + (x_max - 1.0) * f64::from(i) / 4.0)
            .collect()
    };
    for t in x_ticks {
        let x = frame.x(t);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{y0}" x2="{x:.2}" y2="{}" stroke="black" stroke-width="1"/><text x="{x:.2}" y="{}" text-anchor="middle">{}</text>"#,
            y0 + 5.0,
            y0 + 18.0,
            t.round() as u64
        );
    }
    let axis = if options.log_x {
        "trials (log scale)"
    } else {
        "trials"
    };
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">{axis}</text>"#,
        (x0 + x1) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">win rate</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for (i, reference) in references.iter().enumerate() {
        let y = frame.y(reference.value.to_f64());
        let colour = COLOURS[i % COLOURS.len()];
        let _ = writeln!(
            svg,
            r#"<line class="reference" data-reference="{}" x1="{x0}" y1="{y:.3}" x2="{x1}" y2="{y:.3}" stroke="{colour}" stroke-width="1" stroke-dasharray="6 4"/>"#,
            reference.value
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{:.2}" text-anchor="end" fill="{colour}">{} = {}</text>"#,
            x1 - 4.0,
            y - 4.0,
            escape(&reference.label),
            reference.value.to_decimal(5)
        );
    }

    for (i, trace) in traces.iter().enumerate() {
        let colour = COLOURS[i % COLOURS.len()];
        let upper = trace.checkpoints.iter().map(|c| {
            format!(
                "{:.2},{:.2}",
                frame.x(c.trial_count as f64),
                frame.y(c.ci_high)
            )
        });
        let lower = trace.checkpoints.iter().rev().map(|c| {
            format!(
                "{:.2},{:.2}",
                frame.x(c.trial_count as f64),
                frame.y(c.ci_low)
            )
        });
        let band: Vec<String> = upper.chain(lower).collect();
        let _ = writeln!(
            svg,
            r#"<polygon points="{}" fill="{colour}" fill-opacity="0.15" stroke="none"/>"#,
            band.join(" ")
        );
        let line: Vec<String> = trace
            .checkpoints
            .iter()
            .map(|c| {
                format!(
                    "{:.2},{:.2}",
                    frame.x(c.trial_count as f64),
                    frame.y(c.win_rate)
                )
            })
            .collect();
        let last = trace.last();
        let _ = writeln!(
            svg,
            r#"<polyline class="trace" data-strategy="{}" data-host="{}" data-final-trials="{}" data-final-win-rate="{}" points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            trace.strategy,
            trace.host,
            last.trial_count,
            last.win_rate,
            line.join(" ")
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" fill="{colour}">{} ({} host)</text>"#,
            x0 + 10.0,
            y1 + 16.0 + 16.0 * i as f64,
            trace.strategy,
            trace.host
        );
    }
    svg.push_str("</svg>\n");
    svg
}
