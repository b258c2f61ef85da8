//! Pure text renderer for diagrams and movies: SVG or TikZ, no external
//! dependencies, deterministic output for golden testing.
//!
//! Layout is layered: wire slots are evenly spaced columns, each slice is a
//! horizontal band of fixed height, wires are vertical lines or cubic curves
//! between slot positions, and each slice contributes exactly one vertex
//! glyph. Wires entering the top edge carry `data-edge="top"` so tests can
//! count them directly.

use crate::diagram::{Diagram2, Movie};
use crate::dsl::RenderFormat;
use crate::signature::Signature;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum RenderError {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
}

/// Where vertex labels go: above the glyph or centered on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelPlacement {
    Above,
    Inline,
}

#[derive(Debug, Clone)]
pub struct RenderOptions {
    pub format: RenderFormat,
    pub wire_spacing: f64,
    pub slice_height: f64,
    pub label: LabelPlacement,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            format: RenderFormat::Svg,
            wire_spacing: 40.0,
            slice_height: 50.0,
            label: LabelPlacement::Above,
        }
    }
}

const MARGIN: f64 = 20.0;

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Render a diagram to SVG or TikZ text.
pub fn render2(sig: &Signature, d: &Diagram2, opts: &RenderOptions) -> Result<String, RenderError> {
    match opts.format {
        RenderFormat::Svg => {
            let body = svg_body(sig, d, opts, 0.0, true)?;
            let (w, h) = canvas_size(d, opts);
            let mut out = String::new();
            let _ = writeln!(
                out,
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
            );
            out.push_str(&body);
            out.push_str("</svg>\n");
            Ok(out)
        }
        RenderFormat::Tikz => {
            let mut out = String::from("\\begin{tikzpicture}\n");
            out.push_str(&tikz_body(sig, d, opts, 0.0)?);
            out.push_str("\\end{tikzpicture}\n");
            Ok(out)
        }
    }
}

/// Render a movie as one panel per frame.
pub fn render_movie(sig: &Signature, m: &Movie, opts: &RenderOptions) -> Result<String, RenderError> {
    match opts.format {
        RenderFormat::Svg => {
            let mut total_w = 0.0f64;
            let mut total_h = 0.0f64;
            let mut panels = Vec::new();
            for frame in m.frames() {
                let (w, h) = canvas_size(frame, opts);
                panels.push((total_w, frame));
                total_w += w + MARGIN;
                total_h = total_h.max(h);
            }
            let mut out = String::new();
            let _ = writeln!(
                out,
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w:.0}" height="{total_h:.0}" viewBox="0 0 {total_w:.0} {total_h:.0}">"#
            );
            for (offset, frame) in panels {
                let _ = writeln!(out, r#"<g class="frame" transform="translate({offset:.1} 0)">"#);
                out.push_str(&svg_body(sig, frame, opts, 0.0, true)?);
                out.push_str("</g>\n");
            }
            out.push_str("</svg>\n");
            Ok(out)
        }
        RenderFormat::Tikz => {
            let mut out = String::from("\\begin{tikzpicture}\n");
            let mut offset = 0.0f64;
            for frame in m.frames() {
                let _ = writeln!(out, "% frame");
                out.push_str(&tikz_body(sig, frame, opts, offset)?);
                let (w, _) = canvas_size(frame, opts);
                offset += (w + MARGIN) / 28.0;
            }
            out.push_str("\\end{tikzpicture}\n");
            Ok(out)
        }
    }
}

fn canvas_size(d: &Diagram2, opts: &RenderOptions) -> (f64, f64) {
    let mut width = d.top.len();
    for s in &d.slices {
        width = width.max(s.inputs.len()).max(s.outputs.len());
    }
    let bands = d.slices.len().max(1);
    (
        2.0 * MARGIN + (width.max(1) - 1) as f64 * opts.wire_spacing,
        2.0 * MARGIN + bands as f64 * opts.slice_height,
    )
}

fn slot_x(slot: f64, opts: &RenderOptions) -> f64 {
    MARGIN + slot * opts.wire_spacing
}

fn svg_body(
    sig: &Signature,
    d: &Diagram2,
    opts: &RenderOptions,
    x_offset: f64,
    top_labels: bool,
) -> Result<String, RenderError> {
    crate::diagram::evaluate2(sig, d).map_err(|e| RenderError::MalformedDiagram(e.to_string()))?;
    let mut out = String::new();
    let mut y = MARGIN;
    // top edge labels
    if top_labels {
        for (i, w) in d.top.iter().enumerate() {
            let x = x_offset + slot_x(i as f64, opts);
            let _ = writeln!(
                out,
                r#"<text class="wire-label" x="{x:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
                y - 6.0,
                xml_escape(w.label.as_str())
            );
        }
    }
    if d.slices.is_empty() {
        let y1 = y + opts.slice_height;
        for i in 0..d.top.len() {
            let x = x_offset + slot_x(i as f64, opts);
            let _ = writeln!(
                out,
                r#"<path class="wire" data-edge="top" d="M {x:.1} {y:.1} L {x:.1} {y1:.1}"/>"#
            );
        }
        return Ok(out);
    }
    for (band, slice) in d.slices.iter().enumerate() {
        let y1 = y + opts.slice_height;
        let ymid = y + opts.slice_height / 2.0;
        let top_attr = if band == 0 { r#" data-edge="top""# } else { "" };
        let pos = slice.vertex_position;
        let (vsrc, vtgt) = sig
            .surface_paths(&slice.vertex)
            .ok_or_else(|| RenderError::MalformedDiagram("unknown vertex".to_string()))?;
        let (s, t) = (vsrc.len(), vtgt.len());
        let vx = x_offset
            + slot_x(
                if s > 0 {
                    pos as f64 + (s as f64 - 1.0) / 2.0
                } else if t > 0 {
                    pos as f64 + (t as f64 - 1.0) / 2.0
                } else {
                    (pos as f64 - 0.5).max(0.0)
                },
                opts,
            );
        // left context: straight wires
        for k in 0..pos {
            let x = x_offset + slot_x(k as f64, opts);
            let _ = writeln!(
                out,
                r#"<path class="wire"{top_attr} d="M {x:.1} {y:.1} L {x:.1} {y1:.1}"/>"#
            );
        }
        // right context: curve from input slot to output slot
        for k in pos + s..slice.inputs.len() {
            let x0 = x_offset + slot_x(k as f64, opts);
            let k1 = k as isize + t as isize - s as isize;
            let x1 = x_offset + slot_x(k1 as f64, opts);
            let _ = writeln!(
                out,
                r#"<path class="wire"{top_attr} d="M {x0:.1} {y:.1} C {x0:.1} {ymid:.1} {x1:.1} {ymid:.1} {x1:.1} {y1:.1}"/>"#
            );
        }
        // vertex input wires
        for k in pos..pos + s {
            let x0 = x_offset + slot_x(k as f64, opts);
            let _ = writeln!(
                out,
                r#"<path class="wire"{top_attr} d="M {x0:.1} {y:.1} C {x0:.1} {ymid:.1} {vx:.1} {ymid:.1} {vx:.1} {ymid:.1}"/>"#
            );
        }
        // vertex output wires
        for k in pos..pos + t {
            let x1 = x_offset + slot_x(k as f64, opts);
            let _ = writeln!(
                out,
                r#"<path class="wire" d="M {vx:.1} {ymid:.1} C {vx:.1} {ymid:.1} {x1:.1} {ymid:.1} {x1:.1} {y1:.1}"/>"#
            );
        }
        let _ = writeln!(
            out,
            r#"<circle class="vertex" cx="{vx:.1}" cy="{ymid:.1}" r="4"/>"#
        );
        let (lx, ly, anchor) = match opts.label {
            LabelPlacement::Above => (vx, ymid - 8.0, "middle"),
            LabelPlacement::Inline => (vx + 8.0, ymid + 4.0, "start"),
        };
        let _ = writeln!(
            out,
            r#"<text class="vertex-label" x="{lx:.1}" y="{ly:.1}" text-anchor="{anchor}">{}</text>"#,
            xml_escape(slice.vertex.as_str())
        );
        y = y1;
    }
    Ok(out)
}

fn tikz_body(
    sig: &Signature,
    d: &Diagram2,
    opts: &RenderOptions,
    x_offset_cm: f64,
) -> Result<String, RenderError> {
    crate::diagram::evaluate2(sig, d).map_err(|e| RenderError::MalformedDiagram(e.to_string()))?;
    let sc = 1.0 / 28.0; // pt-ish to cm-ish
    let mut out = String::new();
    let mut y = 0.0f64;
    let sx = |slot: f64| x_offset_cm + slot_x(slot, opts) * sc;
    if d.slices.is_empty() {
        for i in 0..d.top.len() {
            let x = sx(i as f64);
            let _ = writeln!(
                out,
                "\\draw[wire] ({x:.2}, {:.2}) -- ({x:.2}, {:.2});",
                -y,
                -(y + opts.slice_height * sc)
            );
        }
        return Ok(out);
    }
    for slice in &d.slices {
        let y1 = y + opts.slice_height * sc;
        let ymid = y + opts.slice_height * sc / 2.0;
        let pos = slice.vertex_position;
        let (vsrc, vtgt) = sig
            .surface_paths(&slice.vertex)
            .ok_or_else(|| RenderError::MalformedDiagram("unknown vertex".to_string()))?;
        let (s, t) = (vsrc.len(), vtgt.len());
        let vx = sx(if s > 0 {
            pos as f64 + (s as f64 - 1.0) / 2.0
        } else if t > 0 {
            pos as f64 + (t as f64 - 1.0) / 2.0
        } else {
            (pos as f64 - 0.5).max(0.0)
        });
        for k in 0..pos {
            let x = sx(k as f64);
            let _ = writeln!(out, "\\draw[wire] ({x:.2}, {:.2}) -- ({x:.2}, {:.2});", -y, -y1);
        }
        for k in pos + s..slice.inputs.len() {
            let x0 = sx(k as f64);
            let x1 = sx((k as isize + t as isize - s as isize) as f64);
            let _ = writeln!(
                out,
                "\\draw[wire] ({x0:.2}, {:.2}) .. controls ({x0:.2}, {:.2}) and ({x1:.2}, {:.2}) .. ({x1:.2}, {:.2});",
                -y, -ymid, -ymid, -y1
            );
        }
        for k in pos..pos + s {
            let x0 = sx(k as f64);
            let _ = writeln!(
                out,
                "\\draw[wire] ({x0:.2}, {:.2}) .. controls ({x0:.2}, {:.2}) and ({vx:.2}, {:.2}) .. ({vx:.2}, {:.2});",
                -y, -ymid, -ymid, -ymid
            );
        }
        for k in pos..pos + t {
            let x1 = sx(k as f64);
            let _ = writeln!(
                out,
                "\\draw[wire] ({vx:.2}, {:.2}) .. controls ({vx:.2}, {:.2}) and ({x1:.2}, {:.2}) .. ({x1:.2}, {:.2});",
                -ymid, -ymid, -ymid, -y1
            );
        }
        let _ = writeln!(
            out,
            "\\node[vertex, circle, fill, inner sep=1.5pt, label=above:{{{}}}] at ({vx:.2}, {:.2}) {{}};",
            slice.vertex, -ymid
        );
        y = y1;
    }
    Ok(out)
}
