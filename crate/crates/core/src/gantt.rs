//! Gantt charts of schedules as plain SVG.
//!
//! One lane per qubit (qubit 0 on top). A gate is drawn on every lane it
//! touches; two-qubit gates are red and single-qubit gates blue. Layout uses
//! fixed pixel positions only, so identical inputs give identical bytes.

use std::fmt::Write;

use crate::circuit::{makespan, validate_schedule, CircuitInstance, GateId, GateKind, Schedule, TIME_TOLERANCE};
use crate::error::{Error, Result};

const LANE_HEIGHT: f64 = 30.0;
const BLOCK_PAD: f64 = 3.0;
const LEFT: f64 = 50.0;
const TOP: f64 = 30.0;
const RIGHT: f64 = 30.0;
const AXIS_SPACE: f64 = 40.0;
const TWO_QUBIT_FILL: &str = "#d62728";
const SINGLE_QUBIT_FILL: &str = "#1f77b4";

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GanttOptions {
    pub px_per_unit: f64,
}

impl Default for GanttOptions {
    fn default() -> Self {
        GanttOptions { px_per_unit: 40.0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GanttBlock {
    pub gate: GateId,
    pub qubit: usize,
    pub start: f64,
    pub duration: f64,
    pub kind: GateKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GanttSpec {
    pub rows: usize,
    /// Sorted by lane, then start, then gate id.
    pub blocks: Vec<GanttBlock>,
    pub extent: f64,
}

pub fn gantt_spec(circuit: &CircuitInstance, schedule: &Schedule) -> Result<GanttSpec> {
    let report = validate_schedule(circuit, schedule, TIME_TOLERANCE)?;
    if !report.ok {
        return Err(Error::InvalidSchedule {
            overlaps: report.overlap_violations.len(),
            precedence: report.precedence_violations.len(),
        });
    }
    let mut blocks = Vec::new();
    for g in &circuit.gates {
        let start = schedule.start(g.id)?;
        for q in &g.qubits {
            blocks.push(GanttBlock {
                gate: g.id,
                qubit: q.0,
                start,
                duration: g.duration,
                kind: g.kind,
            });
        }
    }
    blocks.sort_by(|a, b| {
        a.qubit
            .cmp(&b.qubit)
            .then(a.start.total_cmp(&b.start))
            .then(a.gate.cmp(&b.gate))
    });
    Ok(GanttSpec {
        rows: circuit.num_qubits,
        blocks,
        extent: makespan(circuit, schedule)?,
    })
}

/// Picks a 1/2/5 x 10^k tick spacing giving at most ~12 ticks.
fn tick_step(extent: f64) -> f64 {
    if extent <= 0.0 {
        return 1.0;
    }
    let raw = extent / 12.0;
    let mag = 10f64.powf(raw.log10().floor());
    [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|&s| s >= raw).unwrap_or(10.0 * mag)
}

pub fn render_gantt(circuit: &CircuitInstance, schedule: &Schedule, options: &GanttOptions) -> Result<String> {
    let spec = gantt_spec(circuit, schedule)?;
    let px = options.px_per_unit;
    let x = |t: f64| LEFT + t * px;
    let plot_bottom = TOP + spec.rows as f64 * LANE_HEIGHT;
    let width = LEFT + spec.extent * px + RIGHT;
    let height = plot_bottom + AXIS_SPACE;

    let mut svg = String::new();
    let w = &mut svg;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    writeln!(w, r#"<rect x="0" y="0" width="{width:.1}" height="{height:.1}" fill="white"/>"#).unwrap();
    writeln!(
        w,
        r#"<text x="{LEFT:.1}" y="18.0" font-family="monospace" font-size="12">makespan = {:.6}</text>"#,
        spec.extent
    )
    .unwrap();

    for lane in 0..spec.rows {
        let y = TOP + lane as f64 * LANE_HEIGHT;
        writeln!(
            w,
            r#"<text x="8.0" y="{:.1}" font-family="monospace" font-size="12">q{lane}</text>"#,
            y + LANE_HEIGHT / 2.0 + 4.0
        )
        .unwrap();
        writeln!(
            w,
            r##"<line x1="{LEFT:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#dddddd"/>"##,
            y + LANE_HEIGHT,
            x(spec.extent),
            y + LANE_HEIGHT
        )
        .unwrap();
    }

    for b in &spec.blocks {
        let fill = match b.kind {
            GateKind::TwoQubit => TWO_QUBIT_FILL,
            GateKind::SingleQubit => SINGLE_QUBIT_FILL,
        };
        writeln!(
            w,
            r#"<rect x="{:.3}" y="{:.1}" width="{:.3}" height="{:.1}" fill="{fill}" stroke="black" stroke-width="0.5"><title>gate {} t={:.6}+{:.6}</title></rect>"#,
            x(b.start),
            TOP + b.qubit as f64 * LANE_HEIGHT + BLOCK_PAD,
            b.duration * px,
            LANE_HEIGHT - 2.0 * BLOCK_PAD,
            b.gate,
            b.start,
            b.duration
        )
        .unwrap();
    }

    writeln!(
        w,
        r#"<line x1="{LEFT:.1}" y1="{plot_bottom:.1}" x2="{:.1}" y2="{plot_bottom:.1}" stroke="black"/>"#,
        x(spec.extent)
    )
    .unwrap();
    let step = tick_step(spec.extent);
    let mut k = 0u32;
    loop {
        let t = f64::from(k) * step;
        if t > spec.extent + 1e-9 {
            break;
        }
        writeln!(
            w,
            r#"<line x1="{0:.3}" y1="{plot_bottom:.1}" x2="{0:.3}" y2="{1:.1}" stroke="black"/><text x="{0:.3}" y="{2:.1}" font-family="monospace" font-size="10" text-anchor="middle">{3}</text>"#,
            x(t),
            plot_bottom + 5.0,
            plot_bottom + 17.0,
            t
        )
        .unwrap();
        k += 1;
    }
    writeln!(
        w,
        r#"<line x1="{0:.3}" y1="{TOP:.1}" x2="{0:.3}" y2="{plot_bottom:.1}" stroke="black" stroke-dasharray="4 2"/>"#,
        x(spec.extent)
    )
    .unwrap();
    writeln!(
        w,
        r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="10">time</text>"#,
        LEFT,
        plot_bottom + 33.0
    )
    .unwrap();
    writeln!(w, "</svg>").unwrap();
    Ok(svg)
}
