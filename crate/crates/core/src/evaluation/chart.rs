//! Grouped bar charts as standalone SVG: datasets along the x-axis, one bar per
//! classifier, metric on a fixed 0 to 1 scale.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::experiment::{Cell, ComparisonTable};
use crate::classifiers::ClassifierKind;
use crate::features::FeatureSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartMetric {
    AucPr,
    F1,
}

impl ChartMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            ChartMetric::AucPr => "auc_pr",
            ChartMetric::F1 => "f1",
        }
    }

    fn title(self) -> &'static str {
        match self {
            ChartMetric::AucPr => "PR-AUC",
            ChartMetric::F1 => "F1",
        }
    }
}

const PALETTE: [&str; 6] = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948"];
const BAR: f64 = 14.0;
const GROUP_GAP: f64 = 24.0;
const LEFT: f64 = 56.0;
const TOP: f64 = 40.0;
const PLOT_H: f64 = 240.0;
const LEGEND_W: f64 = 150.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders one chart for `fset`. Failed cells leave a gap marked `n/a`.
pub fn grouped_bar_svg(table: &ComparisonTable, metric: ChartMetric, fset: FeatureSet) -> String {
    let datasets = table.datasets();
    let mut kinds: Vec<ClassifierKind> = Vec::new();
    for c in &table.cells {
        let (_, f, k) = c.key();
        if f == fset && !kinds.contains(&k) {
            kinds.push(k);
        }
    }
    let group_w = BAR * kinds.len().max(1) as f64;
    let plot_w = datasets.len().max(1) as f64 * (group_w + GROUP_GAP) + GROUP_GAP;
    let width = LEFT + plot_w + LEGEND_W;
    let height = TOP + PLOT_H + 60.0;
    let base = TOP + PLOT_H;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="20" font-size="14" text-anchor="middle">{} on {}</text>"#,
        LEFT + plot_w / 2.0,
        metric.title(),
        fset.as_str()
    );
    for tick in 0..=5 {
        let v = tick as f64 / 5.0;
        let y = base - v * PLOT_H;
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT:.1}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#dddddd"/><text x="{:.1}" y="{:.1}" text-anchor="end">{v:.1}</text>"##,
            LEFT + plot_w,
            LEFT - 6.0,
            y + 4.0
        );
    }
    let _ = writeln!(s, r##"<line x1="{LEFT:.1}" y1="{TOP:.1}" x2="{LEFT:.1}" y2="{base:.1}" stroke="#000000"/>"##);
    let _ = writeln!(s, r##"<line x1="{LEFT:.1}" y1="{base:.1}" x2="{:.1}" y2="{base:.1}" stroke="#000000"/>"##, LEFT + plot_w);

    for (di, dataset) in datasets.iter().enumerate() {
        let gx = LEFT + GROUP_GAP + di as f64 * (group_w + GROUP_GAP);
        for (ki, &kind) in kinds.iter().enumerate() {
            let x = gx + ki as f64 * BAR;
            match table.get(dataset, fset, kind) {
                Some(Cell::Ok(r)) => {
                    let v = match metric {
                        ChartMetric::AucPr => r.auc_pr,
                        ChartMetric::F1 => r.f1,
                    }
                    .clamp(0.0, 1.0);
                    let h = v * PLOT_H;
                    let _ = writeln!(
                        s,
                        r#"<rect x="{x:.1}" y="{:.1}" width="{:.1}" height="{h:.1}" fill="{}"><title>{} {}: {v:.4}</title></rect>"#,
                        base - h,
                        BAR - 2.0,
                        PALETTE[ki % PALETTE.len()],
                        escape(dataset),
                        kind.as_str()
                    );
                }
                _ => {
                    let _ = writeln!(
                        s,
                        r#"<text x="{:.1}" y="{:.1}" font-size="8" text-anchor="middle">n/a</text>"#,
                        x + BAR / 2.0,
                        base - 4.0
                    );
                }
            }
        }
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            gx + group_w / 2.0,
            base + 18.0,
            escape(dataset)
        );
    }

    let lx = LEFT + plot_w + 16.0;
    for (ki, kind) in kinds.iter().enumerate() {
        let y = TOP + ki as f64 * 18.0;
        let _ = writeln!(
            s,
            r#"<rect x="{lx:.1}" y="{y:.1}" width="12" height="12" fill="{}"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            PALETTE[ki % PALETTE.len()],
            lx + 18.0,
            y + 10.0,
            kind.as_str()
        );
    }
    s.push_str("</svg>\n");
    s
}
