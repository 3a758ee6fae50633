//! Yeoh hyperelastic material under the dominant-stretch approximation.
//!
//! With `x = λ² + 1/λ² − 2 = (λ − 1/λ)²` the strain energy is
//! `W = C1·x + C2·x² + C3·x³` and the stress is its derivative with respect
//! to the dominant stretch,
//! `σ = (λ − 1/λ³)·(2·C1 + 4·C2·x + 6·C3·x²)`.
//! Two-term materials simply carry `C3 = 0`.
//!
//! Stresses are in MPa, lengths in mm.

use serde::{Deserialize, Serialize};

use crate::error::{domain, require_positive, Error, Result};
use crate::roots::{newton_bisect, Tolerance};

/// Default upper end of the stretch bracket used by [`YeohMaterial::inverse_cauchy_stress`].
pub const DEFAULT_LAMBDA_MAX: f64 = 5.0;

/// Number of samples used to verify monotonicity of the stress curve.
const MONOTONE_SAMPLES: usize = 1024;

/// Names of the built-in materials, in order of increasing stiffness.
pub const BUILTIN_NAMES: [&str; 4] = [
    "ecoflex-00-30",
    "elastosil-m4601",
    "dragonskin-30",
    "smooth-sil-950",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct YeohMaterial {
    pub name: String,
    /// MPa
    pub c1: f64,
    /// MPa
    pub c2: f64,
    /// MPa; zero for second-order models
    pub c3: f64,
    /// kg/m³, informational only
    pub density: Option<f64>,
}

impl YeohMaterial {
    /// Builds a material and checks that its stress curve is strictly
    /// increasing on `[1, DEFAULT_LAMBDA_MAX]`.
    pub fn new(
        name: impl Into<String>,
        c1: f64,
        c2: f64,
        c3: f64,
        density: Option<f64>,
    ) -> Result<Self> {
        Self::with_stretch_cap(name, c1, c2, c3, density, DEFAULT_LAMBDA_MAX)
    }

    /// Like [`YeohMaterial::new`] but verifies monotonicity up to `lambda_max`.
    pub fn with_stretch_cap(
        name: impl Into<String>,
        c1: f64,
        c2: f64,
        c3: f64,
        density: Option<f64>,
        lambda_max: f64,
    ) -> Result<Self> {
        let material = Self {
            name: name.into(),
            c1,
            c2,
            c3,
            density,
        };
        let invalid = |reason: String| Error::InvalidMaterial {
            name: material.name.clone(),
            reason,
        };
        if ![c1, c2, c3].iter().all(|c| c.is_finite()) {
            return Err(invalid("coefficients must be finite".into()));
        }
        if c1 <= 0.0 {
            return Err(invalid(format!("c1 must be positive, got {c1}")));
        }
        if let Some(rho) = density {
            if !(rho.is_finite() && rho > 0.0) {
                return Err(invalid(format!("density must be positive, got {rho}")));
            }
        }
        if !(lambda_max.is_finite() && lambda_max > 1.0) {
            return Err(invalid(format!("stretch cap must exceed 1, got {lambda_max}")));
        }

        let mut prev = 0.0;
        for i in 1..=MONOTONE_SAMPLES {
            let lambda = 1.0 + (lambda_max - 1.0) * i as f64 / MONOTONE_SAMPLES as f64;
            let sigma = material.stress_unchecked(lambda);
            if sigma <= prev || material.stress_slope(lambda) <= 0.0 {
                return Err(invalid(format!(
                    "cauchy stress is not strictly increasing near stretch {lambda:.4}"
                )));
            }
            prev = sigma;
        }
        Ok(material)
    }

    /// Looks up one of the built-in elastomers by name.
    pub fn builtin(name: &str) -> Option<Self> {
        let (c1, c2, c3, density) = match name {
            "ecoflex-00-30" => (0.017, -0.0002, 0.000023, Some(1070.0)),
            "elastosil-m4601" => (0.11, 0.02, 0.0, Some(1130.0)),
            "smooth-sil-950" => (0.34, 0.0, 0.0, Some(1240.0)),
            "dragonskin-30" => (0.096, 0.0095, 0.0, None),
            _ => return None,
        };
        Some(Self::new(name, c1, c2, c3, density).expect("built-in material is valid"))
    }

    pub fn ecoflex_00_30() -> Self {
        Self::builtin("ecoflex-00-30").unwrap()
    }

    pub fn elastosil_m4601() -> Self {
        Self::builtin("elastosil-m4601").unwrap()
    }

    pub fn smooth_sil_950() -> Self {
        Self::builtin("smooth-sil-950").unwrap()
    }

    pub fn dragonskin_30() -> Self {
        Self::builtin("dragonskin-30").unwrap()
    }

    /// Strain energy density `W(λ)` in MPa.
    pub fn strain_energy(&self, lambda: f64) -> Result<f64> {
        check_stretch(lambda)?;
        let x = invariant_excess(lambda);
        Ok(x * (self.c1 + x * (self.c2 + x * self.c3)))
    }

    /// Cauchy stress along the dominant stretch, `σ = ∂W/∂λ`, in MPa.
    pub fn cauchy_stress(&self, lambda: f64) -> Result<f64> {
        check_stretch(lambda)?;
        Ok(self.stress_unchecked(lambda))
    }

    /// Stretch at which the Cauchy stress equals `sigma`, searched on `[1, lambda_max]`.
    pub fn inverse_cauchy_stress(&self, sigma: f64, lambda_max: f64) -> Result<f64> {
        if !sigma.is_finite() || sigma < 0.0 {
            return Err(domain("stress", format!("must be non-negative, got {sigma}")));
        }
        if !(lambda_max.is_finite() && lambda_max > 1.0) {
            return Err(domain("stretch cap", format!("must exceed 1, got {lambda_max}")));
        }
        if sigma == 0.0 {
            return Ok(1.0);
        }
        let sigma_max = self.stress_unchecked(lambda_max);
        if sigma > sigma_max {
            return Err(Error::Unbracketed {
                sigma,
                lambda_max,
                sigma_max,
            });
        }

        let scale = sigma.max(1.0);
        let tol = Tolerance {
            x_abs: 4.0 * f64::EPSILON * lambda_max,
            f_abs: 1e-13 * scale,
        };
        let lambda = newton_bisect(
            |l| (self.stress_unchecked(l) - sigma, self.stress_slope(l)),
            1.0,
            lambda_max,
            tol,
        )?;
        let residual = (self.stress_unchecked(lambda) - sigma).abs();
        if residual > 1e-9 * scale {
            return Err(domain(
                "stress inversion",
                format!("residual {residual:e} MPa at stretch {lambda} exceeds tolerance"),
            ));
        }
        Ok(lambda)
    }

    /// `dσ/dλ`, used by the Newton refinement.
    pub fn stress_slope(&self, lambda: f64) -> f64 {
        let inv = 1.0 / lambda;
        let s = lambda - inv;
        let x = s * s;
        let g = lambda - inv * inv * inv;
        let dg = 1.0 + 3.0 * inv.powi(4);
        let h = 2.0 * self.c1 + x * (4.0 * self.c2 + 6.0 * self.c3 * x);
        let dx = 2.0 * s * (1.0 + inv * inv);
        let dh = (4.0 * self.c2 + 12.0 * self.c3 * x) * dx;
        dg * h + g * dh
    }

    fn stress_unchecked(&self, lambda: f64) -> f64 {
        let inv = 1.0 / lambda;
        let x = (lambda - inv).powi(2);
        (lambda - inv * inv * inv) * (2.0 * self.c1 + x * (4.0 * self.c2 + 6.0 * self.c3 * x))
    }
}

/// `I₁ − 3` for incompressible uniaxial stretch.
fn invariant_excess(lambda: f64) -> f64 {
    (lambda - 1.0 / lambda).powi(2)
}

fn check_stretch(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda >= 1.0 {
        Ok(())
    } else {
        Err(domain("stretch", format!("must be at least 1, got {lambda}")))
    }
}

/// Principal stretch together with its first invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StretchState {
    pub lambda: f64,
    pub i1: f64,
}

impl StretchState {
    /// Incompressible state with dominant stretch `lambda`: `I₁ = λ² + λ⁻² + 1`.
    pub fn uniaxial(lambda: f64) -> Result<Self> {
        check_stretch(lambda)?;
        Ok(Self {
            lambda,
            i1: lambda * lambda + 1.0 / (lambda * lambda) + 1.0,
        })
    }
}

/// Ratio of wall stress to chamber pressure, `σ_w = P·K`.
///
/// Chambers with `t_w < h_ch / 4` are thin-walled (`K = h_ch / 2t_w`); all
/// others use the thick-walled form `K = 1 + h_ch² / (2·t_w·(t_w + h_ch))`.
/// The factor jumps at the boundary.
pub fn wall_stress_factor(t_w: f64, h_ch: f64) -> Result<f64> {
    require_positive("wall thickness", t_w)?;
    require_positive("chamber height", h_ch)?;
    if t_w < 0.25 * h_ch {
        Ok(h_ch / (2.0 * t_w))
    } else {
        Ok(1.0 + h_ch * h_ch / (2.0 * t_w * (t_w + h_ch)))
    }
}
