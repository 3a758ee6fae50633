//! Pressure-to-output pipeline of one artificial pneumatic sarcomere.
//!
//! For a chamber pressure `P` (MPa):
//!
//! 1. the walls carry `σ_w = P·K` and push on each other with `2·σ_w·a_ch·b_ch`;
//! 2. that force over the H-zone cross-section is the junction stress, which
//!    the inverse Yeoh stress curve turns into the junction stretch `λ_jz`;
//! 3. the expansion force `F_e = c_m·P·π·a_ch·(λ_jz·h_jz + h_ch + 2·t_w)` and
//!    the restoring force `F_r = σ(λ_jz)·a_hz·b_hz` give `F_SPA = F_e − F_r`;
//! 4. the actin threads redirect it into `F_contr = F_SPA·tan θ`.
//!
//! Every junction of a myofibril sees the same pressure, so a single stretch
//! state describes all of them; the series chain transmits the single-unit
//! force unchanged.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, require_positive, Error, Result};
use crate::geometry::{
    actin_semi_axis, classify_ratio, contraction_angle, LengthClass, MyofibrilSpec, SpaGeometry,
};
use crate::material::{wall_stress_factor, YeohMaterial, DEFAULT_LAMBDA_MAX};

/// Affine fit of the force adjustment coefficient.
pub const CM_RATIO_SLOPE: f64 = -2.49;
pub const CM_PRESSURE_SLOPE: f64 = -6.101;
pub const CM_INTERCEPT: f64 = 11.457;

/// Inclusive pressure grid in MPa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PressureSweep {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl PressureSweep {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) || start < 0.0 || end < start {
            return Err(domain(
                "pressure sweep",
                format!("need 0 <= start <= end, got start {start}, end {end}"),
            ));
        }
        require_positive("pressure step", step)?;
        Ok(Self { start, end, step })
    }

    /// Grid used for each built-in material in the finite-element study and
    /// the prototype experiments.
    pub fn reference_grid(material: &str) -> Option<Self> {
        let (start, end, step) = match material {
            "ecoflex-00-30" => (0.001, 0.011, 0.001),
            "elastosil-m4601" => (0.01, 0.085, 0.005),
            "smooth-sil-950" => (0.02, 0.22, 0.02),
            "dragonskin-30" => (0.01, 0.1, 0.01),
            _ => return None,
        };
        Some(Self { start, end, step })
    }

    /// Number of grid points. The end is included when the last step lands
    /// within half a step of it; a step longer than the range yields only
    /// the start.
    pub fn len(&self) -> usize {
        let range = self.end - self.start;
        if self.step > range {
            return 1;
        }
        (range / self.step).round() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid points `start + i·step`; the last one is snapped to `end`.
    pub fn points(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                if n > 1 && i == n - 1 {
                    self.end
                } else {
                    self.start + i as f64 * self.step
                }
            })
            .collect()
    }
}

/// Forces of one soft pneumatic actuator at a given pressure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpaForces {
    pub pressure: f64,
    pub lambda_jz: f64,
    pub adjustment_coeff: f64,
    pub expansion_force: f64,
    pub restoring_force: f64,
    pub spa_force: f64,
}

/// All computed quantities at one pressure point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ActuationState {
    /// MPa
    pub pressure: f64,
    pub lambda_jz: f64,
    pub adjustment_coeff: f64,
    /// N
    pub expansion_force: f64,
    /// N
    pub restoring_force: f64,
    /// N
    pub spa_force: f64,
    /// rad
    pub theta: f64,
    /// N
    pub contraction_force: f64,
    /// mm
    pub r1: f64,
    /// mm
    pub myofibril_length: f64,
    pub length_ratio: f64,
    pub ratio_flag: LengthClass,
}

/// Stress over the H-zone cross-section produced by the inflated walls, MPa.
pub fn junction_stress(pressure: f64, spa: &SpaGeometry) -> Result<f64> {
    check_pressure(pressure)?;
    let k = wall_stress_factor(spa.t_w, spa.h_ch)?;
    Ok(2.0 * pressure * k * spa.chamber_face_area() / spa.junction_area())
}

/// Junction-zone stretch `λ_jz` at chamber pressure `pressure`.
pub fn junction_stretch(pressure: f64, spa: &SpaGeometry, material: &YeohMaterial) -> Result<f64> {
    let sigma = junction_stress(pressure, spa)?;
    material
        .inverse_cauchy_stress(sigma, DEFAULT_LAMBDA_MAX)
        .map_err(|e| match e {
            Error::Unbracketed {
                sigma, lambda_max, ..
            } => domain(
                "pressure",
                format!(
                    "{pressure} MPa is out of range for {}: junction stress {sigma:.6} MPa \
                     needs a stretch above {lambda_max}",
                    material.name
                ),
            ),
            other => other,
        })
}

/// Adjustment coefficient `c_m = −2.49·(t_w/h_ch) − 6.101·P + 11.457`.
pub fn adjustment_coefficient(wall_ratio: f64, pressure: f64) -> f64 {
    CM_RATIO_SLOPE * wall_ratio + CM_PRESSURE_SLOPE * pressure + CM_INTERCEPT
}

/// Expansion force `F_e` in N.
pub fn expansion_force(pressure: f64, spa: &SpaGeometry, lambda_jz: f64, c_m: f64) -> f64 {
    c_m * pressure * PI * spa.a_ch * (lambda_jz * spa.h_jz + spa.h_ch + 2.0 * spa.t_w)
}

/// Restoring force `F_r` of the stretched junction in N.
pub fn restoring_force(lambda_jz: f64, spa: &SpaGeometry, material: &YeohMaterial) -> Result<f64> {
    Ok(material.cauchy_stress(lambda_jz)? * spa.junction_area())
}

/// `F_SPA = F_e − F_r` with its intermediates.
pub fn spa_forces(pressure: f64, spa: &SpaGeometry, material: &YeohMaterial) -> Result<SpaForces> {
    let lambda_jz = junction_stretch(pressure, spa, material)?;
    let c_m = adjustment_coefficient(spa.wall_ratio(), pressure);
    let f_e = expansion_force(pressure, spa, lambda_jz, c_m);
    let f_r = restoring_force(lambda_jz, spa, material)?;
    Ok(SpaForces {
        pressure,
        lambda_jz,
        adjustment_coeff: c_m,
        expansion_force: f_e,
        restoring_force: f_r,
        spa_force: f_e - f_r,
    })
}

/// Contraction force `F_SPA·tan θ` for `θ ∈ (0, π/2)`.
pub fn contraction_force(spa_force: f64, theta: f64) -> Result<f64> {
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(domain("contraction angle", format!("{theta} rad outside (0, π/2)")));
    }
    Ok(spa_force * theta.tan())
}

/// Full state of a myofibril at one pressure.
pub fn evaluate(pressure: f64, spec: &MyofibrilSpec) -> Result<ActuationState> {
    evaluate_inner(pressure, spec).map_err(|e| Error::AtPressure {
        pressure,
        source: Box::new(e),
    })
}

fn evaluate_inner(pressure: f64, spec: &MyofibrilSpec) -> Result<ActuationState> {
    let forces = spa_forces(pressure, &spec.spa, &spec.material)?;
    let theta = contraction_angle(&spec.spa, forces.lambda_jz, spec.sarcomere.actin_arc)?;
    let f_contr = contraction_force(forces.spa_force, theta)?;

    let delta_hm = spec.sarcomere.myosin_height_change(&spec.spa, forces.lambda_jz);
    let r1 = actin_semi_axis(spec, delta_hm)?;
    let r1_rest = actin_semi_axis(spec, 0.0)?;
    let n = f64::from(spec.n);
    let length = n * (spec.sarcomere.a_band + 2.0 * r1);
    let rest = n * (spec.sarcomere.a_band + 2.0 * r1_rest);
    let length_ratio = length / rest;

    Ok(ActuationState {
        pressure,
        lambda_jz: forces.lambda_jz,
        adjustment_coeff: forces.adjustment_coeff,
        expansion_force: forces.expansion_force,
        restoring_force: forces.restoring_force,
        spa_force: forces.spa_force,
        theta,
        contraction_force: f_contr,
        r1,
        myofibril_length: length,
        length_ratio,
        ratio_flag: classify_ratio(length_ratio),
    })
}

/// Evaluates every grid point; results are in ascending pressure order.
pub fn simulate_sweep(spec: &MyofibrilSpec, sweep: &PressureSweep) -> Result<Vec<ActuationState>> {
    sweep
        .points()
        .par_iter()
        .map(|&p| evaluate(p, spec))
        .collect()
}

/// Lengths of a myofibril carrying a hanging load, recorded per pressure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoadedTrial {
    /// g
    pub load_mass: f64,
    /// `(pressure MPa, length mm)` under the load
    pub lengths: Vec<(f64, f64)>,
    /// Unloaded, unactuated length, mm.
    pub resting_unloaded: f64,
}

impl LoadedTrial {
    pub fn new(load_mass: f64, lengths: Vec<(f64, f64)>, resting_unloaded: f64) -> Result<Self> {
        require_positive("unloaded resting length", resting_unloaded)?;
        if let Some(&(p, l)) = lengths.iter().find(|(_, l)| !(l.is_finite() && *l > 0.0)) {
            return Err(Error::Data(format!("non-positive length {l} mm at pressure {p} MPa")));
        }
        Ok(Self {
            load_mass,
            lengths,
            resting_unloaded,
        })
    }

    pub fn length_at(&self, pressure: f64) -> Result<f64> {
        self.lengths
            .iter()
            .find(|(p, _)| (p - pressure).abs() <= 1e-12 * pressure.abs().max(1.0))
            .map(|&(_, l)| l)
            .ok_or_else(|| {
                Error::Data(format!(
                    "no length recorded at {pressure} MPa for the {} g load",
                    self.load_mass
                ))
            })
    }
}

/// Actuation strain `(L[P,σ] − L[0,σ]) / L[0,0]`; negative when contracting.
pub fn actuation_strain(trial: &LoadedTrial, pressure: f64) -> Result<f64> {
    let loaded = trial.length_at(pressure)?;
    let passive = trial.length_at(0.0)?;
    Ok((loaded - passive) / trial.resting_unloaded)
}

fn check_pressure(pressure: f64) -> Result<()> {
    if pressure.is_finite() && pressure >= 0.0 {
        Ok(())
    } else {
        Err(domain("pressure", format!("must be non-negative, got {pressure}")))
    }
}
