//! Text renderings of command results.
//!
//! CSV numbers use fixed six-decimal formatting so files diff cleanly; JSON
//! carries the shortest representation that round-trips each `f64`.

use std::fmt::Write;

use serde::Serialize;
use serde_json::json;

use crate::actuation::ActuationState;
use crate::geometry::{MyofibrilSpec, SarcomereDesign};
use crate::validation::AgreementReport;

use super::{Format, SweepCell};

pub const SIMULATE_COLUMNS: [&str; 12] = [
    "pressure_mpa",
    "lambda_jz",
    "c_m",
    "f_e_n",
    "f_r_n",
    "f_spa_n",
    "theta_rad",
    "f_contr_n",
    "r1_mm",
    "l_mf_mm",
    "length_ratio",
    "ratio_flag",
];

pub const SWEEP_LEAD_COLUMNS: [&str; 4] = ["material", "wall_ratio", "t_w_mm", "h_ch_mm"];
pub const SWEEP_TAIL_COLUMNS: [&str; 2] = ["max_f_spa_n", "mean_max_f_spa_n"];

fn fixed(v: f64) -> String {
    let s = format!("{v:.6}");
    // avoid "-0.000000"
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn state_fields(s: &ActuationState) -> [String; 12] {
    [
        fixed(s.pressure),
        fixed(s.lambda_jz),
        fixed(s.adjustment_coeff),
        fixed(s.expansion_force),
        fixed(s.restoring_force),
        fixed(s.spa_force),
        fixed(s.theta),
        fixed(s.contraction_force),
        fixed(s.r1),
        fixed(s.myofibril_length),
        fixed(s.length_ratio),
        s.ratio_flag.as_str().to_string(),
    ]
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn design(d: &SarcomereDesign, (low, high): (f64, f64), format: Format) -> String {
    match format {
        Format::Csv => format!(
            "a_band_mm,i_band_mm,actin_arc_mm,rest_r1_mm,rest_r2_mm,myosin_height_min_mm,myosin_height_max_mm\n{}\n",
            [d.a_band, d.i_band, d.actin_arc, d.rest_r1, d.rest_r2, low, high]
                .map(fixed)
                .join(",")
        ),
        Format::Json => pretty(&json!({
            "sarcomere": d,
            "myosin_height_bounds_mm": [low, high],
        })),
    }
}

fn spec_metadata(spec: &MyofibrilSpec, assumed_h_ch: Option<f64>) -> serde_json::Value {
    json!({
        "n": spec.n,
        "material": spec.material,
        "spa": spec.spa,
        "sarcomere": spec.sarcomere,
        "assumed_h_ch_mm": assumed_h_ch,
    })
}

pub fn simulation(
    spec: &MyofibrilSpec,
    states: &[ActuationState],
    assumed_h_ch: Option<f64>,
    warnings: &[String],
    format: Format,
) -> String {
    match format {
        Format::Csv => {
            let mut out = SIMULATE_COLUMNS.join(",");
            out.push('\n');
            for s in states {
                out.push_str(&state_fields(s).join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let mut meta = spec_metadata(spec, assumed_h_ch);
            meta["warnings"] = json!(warnings);
            pretty(&json!({ "metadata": meta, "states": states }))
        }
    }
}

pub fn sweep(
    cells: &[SweepCell],
    means: &[(String, f64)],
    assumed_h_ch: Option<f64>,
    format: Format,
) -> String {
    let mean_for = |m: &str| means.iter().find(|(n, _)| n == m).map(|e| e.1).unwrap_or(f64::NAN);
    match format {
        Format::Csv => {
            let mut out = SWEEP_LEAD_COLUMNS
                .iter()
                .chain(SIMULATE_COLUMNS.iter())
                .chain(SWEEP_TAIL_COLUMNS.iter())
                .copied()
                .collect::<Vec<_>>()
                .join(",");
            out.push('\n');
            for cell in cells {
                let lead = [
                    cell.material.clone(),
                    fixed(cell.wall_ratio),
                    fixed(cell.spec.spa.t_w),
                    fixed(cell.spec.spa.h_ch),
                ]
                .join(",");
                let tail = [fixed(cell.max_spa_force), fixed(mean_for(&cell.material))].join(",");
                for s in &cell.states {
                    let _ = writeln!(out, "{lead},{},{tail}", state_fields(s).join(","));
                }
            }
            out
        }
        Format::Json => {
            let cells: Vec<_> = cells
                .iter()
                .map(|c| {
                    json!({
                        "material": c.material,
                        "wall_ratio": c.wall_ratio,
                        "spa": c.spec.spa,
                        "max_f_spa_n": c.max_spa_force,
                        "states": c.states,
                    })
                })
                .collect();
            let materials: Vec<_> = means
                .iter()
                .map(|(m, v)| json!({ "material": m, "mean_max_f_spa_n": v }))
                .collect();
            pretty(&json!({
                "metadata": { "assumed_h_ch_mm": assumed_h_ch },
                "cells": cells,
                "materials": materials,
            }))
        }
    }
}

pub fn report(r: &AgreementReport, format: Format) -> String {
    match format {
        Format::Csv => format!(
            "model,reference,frechet_normalized_pct,frechet_raw,r_squared,resampled,qq_k\n{},{},{},{},{},{},{}\n",
            csv_text(&r.model),
            csv_text(&r.reference),
            fixed(100.0 * r.frechet_normalized),
            fixed(r.frechet_raw),
            fixed(r.r_squared),
            r.resampled,
            r.qq_pairs.len()
        ),
        Format::Json => pretty(r),
    }
}

pub fn qq_csv(pairs: &[(f64, f64)]) -> String {
    let mut out = String::from("p,model,reference\n");
    let k = pairs.len();
    for (i, (a, b)) in pairs.iter().enumerate() {
        let p = if k > 1 { i as f64 / (k - 1) as f64 } else { 0.0 };
        let _ = writeln!(out, "{},{},{}", fixed(p), fixed(*a), fixed(*b));
    }
    out
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
