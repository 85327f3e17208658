//! Run summaries: a text table, probability dumps as CSV and an SVG scatter
//! plot with one marker shape per cluster.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::harness::run::RunResult;
use crate::harness::spec::EmitFormat;
use crate::qutrit::BasisIndex;

/// Marker shapes in cluster order; they repeat past the sixth cluster.
pub const MARKERS: [&str; 6] = ["circle", "square", "triangle", "rhomb", "pentagon", "cross"];
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

pub fn render_table(r: &RunResult) -> String {
    let s = &r.spec;
    let ps = &s.points;
    let clusters = |p: &crate::clustering::Partition| {
        p.blocks()
            .iter()
            .map(|b| {
                let pts: Vec<String> = b.iter().map(|&i| ps.label(i)).collect();
                format!("{{{}}}", pts.join(" "))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    let _ = writeln!(out, "problem       {}", s.name);
    let _ = writeln!(
        out,
        "method        {} (K={}, {} points, {} qutrits{})",
        s.scheme.method.name(),
        s.scheme.k,
        ps.len(),
        r.n_qutrits,
        if s.scheme.is_pinned() {
            ", point 0 pinned"
        } else {
            ""
        }
    );
    let _ = writeln!(
        out,
        "schedule      M={} dt={} h={} T={} mode={:?}",
        s.anneal.steps,
        s.anneal.dt,
        s.anneal.h,
        s.anneal.total_time(),
        s.anneal.mode
    );
    let _ = writeln!(out, "annealed      {}", clusters(&r.top_partition));
    let _ = writeln!(out, "probability   {:.6}", r.top_probability);
    let _ = writeln!(out, "invalid       {:.6}", r.invalid_probability);
    let _ = writeln!(out, "annealed cost {:.6}", r.annealed_cost);
    let _ = writeln!(out, "oracle cost   {:.6}", r.oracle_min_cost);
    for p in &r.oracle_partitions {
        let _ = writeln!(out, "oracle        {}", clusters(p));
    }
    let _ = writeln!(out, "match         {}", r.matched);
    let _ = writeln!(out, "norm error    {:.3e}", (r.final_norm - 1.0).abs());
    let _ = writeln!(out, "wall time     {:.3} s", r.wall_time.as_secs_f64());
    out
}

/// One row per basis state: `basis_index, digits, partition_id, probability`.
///
/// `digits` lists the projections space-separated; `partition_id` indexes the
/// rows of [`write_partitions_csv`] or reads `invalid`.
pub fn write_probabilities_csv<W: Write>(r: &RunResult, w: W) -> Result<()> {
    let decoder = crate::anneal::Decoder::new(
        &r.spec.scheme,
        r.spec.points.len(),
        r.spec.centroids.as_deref(),
    )?;
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["basis_index", "digits", "partition_id", "probability"])?;
    for (idx, p) in r.report.basis_probabilities.iter().enumerate() {
        let digits = BasisIndex::from_linear(r.n_qutrits, idx)?
            .digits
            .iter()
            .map(|d| d.m().to_string())
            .collect::<Vec<_>>()
            .join(" ");
        let id = match decoder.decode_basis(idx) {
            Some(part) => r
                .report
                .partition_id(&part)
                .map_or_else(|| "invalid".to_string(), |i| i.to_string()),
            None => "invalid".to_string(),
        };
        out.write_record([idx.to_string(), digits, id, format!("{p:.17e}")])?;
    }
    out.flush().map_err(|source| Error::Io {
        path: "csv".into(),
        source,
    })?;
    Ok(())
}

/// Legend for partition ids: `partition_id, partition, probability, cost`.
pub fn write_partitions_csv<W: Write>(r: &RunResult, w: W) -> Result<()> {
    let dm = crate::clustering::distance_matrix(&r.spec.points);
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["partition_id", "partition", "probability", "cost"])?;
    for (i, (part, p)) in r.report.partition_probabilities.iter().enumerate() {
        out.write_record([
            i.to_string(),
            part.to_string(),
            format!("{p:.17e}"),
            format!("{:.12}", crate::clustering::cost(&dm, part)),
        ])?;
    }
    out.flush().map_err(|source| Error::Io {
        path: "csv".into(),
        source,
    })?;
    Ok(())
}

fn marker(shape: &str, x: f64, y: f64, color: &str) -> String {
    let r = 7.0;
    match shape {
        "circle" => format!(r#"<circle cx="{x:.2}" cy="{y:.2}" r="{r}" fill="{color}"/>"#),
        "square" => format!(
            r#"<rect x="{:.2}" y="{:.2}" width="{}" height="{}" fill="{color}"/>"#,
            x - r,
            y - r,
            2.0 * r,
            2.0 * r
        ),
        "cross" => format!(
            r#"<path d="M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}" stroke="{color}" stroke-width="3"/>"#,
            x - r,
            y - r,
            x + r,
            y + r,
            x - r,
            y + r,
            x + r,
            y - r
        ),
        _ => {
            let corners: Vec<(f64, f64)> = match shape {
                "triangle" => (0..3)
                    .map(|k| {
                        let a = -std::f64::consts::FRAC_PI_2
                            + k as f64 * 2.0 * std::f64::consts::PI / 3.0;
                        (x + r * 1.2 * a.cos(), y + r * 1.2 * a.sin())
                    })
                    .collect(),
                "rhomb" => vec![(x, y - r * 1.3), (x + r, y), (x, y + r * 1.3), (x - r, y)],
                _ => (0..5)
                    .map(|k| {
                        let a = -std::f64::consts::FRAC_PI_2
                            + k as f64 * 2.0 * std::f64::consts::PI / 5.0;
                        (x + r * a.cos(), y + r * a.sin())
                    })
                    .collect(),
            };
            let pts: Vec<String> = corners
                .iter()
                .map(|(a, b)| format!("{a:.2},{b:.2}"))
                .collect();
            format!(r#"<polygon points="{}" fill="{color}"/>"#, pts.join(" "))
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// SVG 1.1 scatter plot of the decoded partition.
pub fn render_svg(r: &RunResult) -> String {
    let (w, h, pad) = (520.0, 480.0, 50.0);
    let plot_right = w - 130.0;
    let ps = &r.spec.points;
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (-10.0f64, 10.0f64, -10.0f64, 10.0f64);
    for p in ps.points() {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymin = ymin.min(p.y);
        ymax = ymax.max(p.y);
    }
    let sx = |x: f64| pad + (x - xmin) / (xmax - xmin) * (plot_right - pad);
    let sy = |y: f64| h - pad - (y - ymin) / (ymax - ymin) * (h - 2.0 * pad);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        out,
        "<title>{}: {} (match={})</title>",
        escape(&r.spec.name),
        escape(&r.top_partition.to_string()),
        r.matched
    );
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(out, r#"<g class="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(
        out,
        r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none"/>"#,
        plot_right - pad,
        h - 2.0 * pad
    );
    if xmin < 0.0 && xmax > 0.0 {
        let x0 = sx(0.0);
        let _ = writeln!(
            out,
            r#"<line x1="{x0:.2}" y1="{pad}" x2="{x0:.2}" y2="{}" stroke-dasharray="3,3"/>"#,
            h - pad
        );
    }
    if ymin < 0.0 && ymax > 0.0 {
        let y0 = sy(0.0);
        let _ = writeln!(
            out,
            r#"<line x1="{pad}" y1="{y0:.2}" x2="{plot_right}" y2="{y0:.2}" stroke-dasharray="3,3"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<g class="ticks" font-family="sans-serif" font-size="11" text-anchor="middle">"#
    );
    for (v, x) in [(xmin, sx(xmin)), (xmax, sx(xmax))] {
        let _ = writeln!(out, r#"<text x="{x:.2}" y="{}">{v}</text>"#, h - pad + 16.0);
    }
    for (v, y) in [(ymin, sy(ymin)), (ymax, sy(ymax))] {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.2}">{v}</text>"#,
            pad - 18.0,
            y + 4.0
        );
    }
    let _ = writeln!(out, "</g>");

    for (c, block) in r.top_partition.blocks().iter().enumerate() {
        let shape = MARKERS[c % MARKERS.len()];
        let color = COLORS[c % COLORS.len()];
        let _ = writeln!(
            out,
            r#"<g class="cluster" data-cluster="{c}" data-size="{}" data-marker="{shape}">"#,
            block.len()
        );
        for &i in block {
            let p = ps.get(i);
            let _ = writeln!(out, "{}", marker(shape, sx(p.x), sy(p.y), color));
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(
        out,
        r#"<g class="legend" font-family="sans-serif" font-size="12">"#
    );
    for (c, block) in r.top_partition.blocks().iter().enumerate() {
        let y = pad + 10.0 + 24.0 * c as f64;
        let shape = MARKERS[c % MARKERS.len()];
        let color = COLORS[c % COLORS.len()];
        let _ = writeln!(out, "{}", marker(shape, plot_right + 20.0, y, color));
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{:.2}">cluster {} ({})</text>"#,
            plot_right + 34.0,
            y + 4.0,
            c + 1,
            block.len()
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

fn write_file(path: &Path, data: &[u8]) -> Result<()> {
    fs::write(path, data).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes the requested artifacts into `dir` and returns their paths.
pub fn emit(r: &RunResult, formats: &[EmitFormat], dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let name = &r.spec.name;
    let mut written = Vec::new();
    for f in formats {
        match f {
            EmitFormat::Table => {
                let p = dir.join(format!("{name}.table.txt"));
                write_file(&p, render_table(r).as_bytes())?;
                written.push(p);
            }
            EmitFormat::Csv => {
                let p = dir.join(format!("{name}.probabilities.csv"));
                write_probabilities_csv(r, create(&p)?)?;
                written.push(p);
                let p = dir.join(format!("{name}.partitions.csv"));
                write_partitions_csv(r, create(&p)?)?;
                written.push(p);
            }
            EmitFormat::Svg => {
                let p = dir.join(format!("{name}.svg"));
                write_file(&p, render_svg(r).as_bytes())?;
                written.push(p);
            }
        }
    }
    Ok(written)
}
