//! Sarcomere and myofibril kinematics.
//!
//! A sarcomere is an A-band (the inflatable myosin pair) followed by an
//! I-band spanned by inextensible actin threads. Each thread is modelled as
//! half of an ellipse: its ends sit on the myosin, a vertical chord `2·r2`
//! apart, and it bulges horizontally by `r1`. Inflation raises the myosin,
//! lengthens the chord, and since the thread length is fixed, `r1` (half the
//! I-band) shrinks.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};

use crate::elliptic::complete_e;
use crate::error::{domain, require_positive, Result};
use crate::material::YeohMaterial;
use crate::roots::{bisect, Tolerance};

/// Shortest allowed myofibril length relative to rest.
pub const MIN_LENGTH_RATIO: f64 = 0.6;
/// Longest allowed myofibril length relative to rest.
pub const MAX_LENGTH_RATIO: f64 = 1.7;

/// Chamber and junction dimensions of one soft pneumatic actuator, in mm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpaGeometry {
    /// chamber wall thickness
    pub t_w: f64,
    /// chamber length
    pub a_ch: f64,
    /// chamber width
    pub b_ch: f64,
    /// chamber height
    pub h_ch: f64,
    /// junction-zone height between chamber arrays
    pub h_jz: f64,
    /// H-zone cross-section length
    pub a_hz: f64,
    /// H-zone cross-section width
    pub b_hz: f64,
}

impl SpaGeometry {
    pub fn new(
        t_w: f64,
        a_ch: f64,
        b_ch: f64,
        h_ch: f64,
        h_jz: f64,
        a_hz: f64,
        b_hz: f64,
    ) -> Result<Self> {
        let g = Self {
            t_w,
            a_ch,
            b_ch,
            h_ch,
            h_jz,
            a_hz,
            b_hz,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("t_w", self.t_w)?;
        require_positive("a_ch", self.a_ch)?;
        require_positive("b_ch", self.b_ch)?;
        require_positive("h_ch", self.h_ch)?;
        require_positive("h_jz", self.h_jz)?;
        require_positive("a_hz", self.a_hz)?;
        require_positive("b_hz", self.b_hz)?;
        Ok(())
    }

    /// Geometry of the physical prototype (DragonSkin 30 build).
    pub fn prototype() -> Self {
        Self {
            t_w: 1.5,
            a_ch: 9.5,
            b_ch: 10.0,
            h_ch: 5.0,
            h_jz: 2.0,
            a_hz: 6.0,
            b_hz: 15.0,
        }
    }

    /// Geometry of the finite-element study for a wall ratio `t_w / h_ch`.
    /// Absolute chamber height is not part of that study, so it is supplied.
    pub fn fem_study(wall_ratio: f64, h_ch: f64) -> Result<Self> {
        Self::new(wall_ratio * h_ch, 14.0, 14.0, h_ch, 3.0, 6.0, 20.0)
    }

    /// `t_w / h_ch`
    pub fn wall_ratio(&self) -> f64 {
        self.t_w / self.h_ch
    }

    /// H-zone cross-section `a_hz · b_hz`, mm².
    pub fn junction_area(&self) -> f64 {
        self.a_hz * self.b_hz
    }

    /// Chamber wall face `a_ch · b_ch`, mm².
    pub fn chamber_face_area(&self) -> f64 {
        self.a_ch * self.b_ch
    }
}

/// Output of [`design_from_a_band`]: band lengths and the rest actin semicircle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SarcomereDesign {
    pub a_band: f64,
    pub i_band: f64,
    pub actin_arc: f64,
    pub rest_r1: f64,
    pub rest_r2: f64,
}

/// Band lengths, actin arc and myosin stacking of one contraction unit, in mm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SarcomereGeometry {
    pub a_band: f64,
    pub i_band: f64,
    pub actin_arc: f64,
    pub myosin_height: f64,
    /// Informational only.
    pub sarcomere_height: Option<f64>,
    /// Junction zones stacked along one myosin; their elongations add up.
    pub junctions_per_myosin: u32,
}

/// Junction zones per myosin when none is given.
pub const DEFAULT_JUNCTIONS_PER_MYOSIN: u32 = 2;

impl SarcomereGeometry {
    /// A sarcomere that follows the band, semicircle and myosin-height design rules.
    pub fn conforming(a_band: f64, spa: &SpaGeometry, junctions_per_myosin: u32) -> Result<Self> {
        let design = design_from_a_band(a_band)?;
        let (low, _) = myosin_height_bounds(a_band, spa.t_w, spa.h_ch)?;
        Ok(Self {
            a_band,
            i_band: design.i_band,
            actin_arc: design.actin_arc,
            myosin_height: low,
            sarcomere_height: None,
            junctions_per_myosin,
        })
    }

    /// The built prototype: A = 30, I = 20, l = 32, h_m = 28 (mm).
    pub fn prototype() -> Self {
        Self {
            a_band: 30.0,
            i_band: 20.0,
            actin_arc: 32.0,
            myosin_height: 28.0,
            sarcomere_height: None,
            junctions_per_myosin: DEFAULT_JUNCTIONS_PER_MYOSIN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("a_band", self.a_band)?;
        require_positive("i_band", self.i_band)?;
        require_positive("actin_arc", self.actin_arc)?;
        require_positive("myosin_height", self.myosin_height)?;
        if let Some(h) = self.sarcomere_height {
            require_positive("sarcomere_height", h)?;
        }
        if self.actin_arc <= self.i_band {
            return Err(domain(
                "actin_arc",
                format!(
                    "arc {} mm must exceed the rest chord (I-band {} mm)",
                    self.actin_arc, self.i_band
                ),
            ));
        }
        Ok(())
    }

    /// Vertical distance between the actin ends at rest, `2·r2'`.
    ///
    /// At rest the actin spans a semicircle whose radius is half the I-band.
    pub fn rest_chord(&self) -> f64 {
        self.i_band
    }

    /// Myosin height increase for junction stretch `lambda_jz`.
    pub fn myosin_height_change(&self, spa: &SpaGeometry, lambda_jz: f64) -> f64 {
        f64::from(self.junctions_per_myosin) * (lambda_jz - 1.0) * spa.h_jz
    }
}

/// A complete simulatable design.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MyofibrilSpec {
    pub n: u32,
    pub sarcomere: SarcomereGeometry,
    pub spa: SpaGeometry,
    pub material: YeohMaterial,
}

impl MyofibrilSpec {
    pub fn new(
        n: u32,
        sarcomere: SarcomereGeometry,
        spa: SpaGeometry,
        material: YeohMaterial,
    ) -> Result<Self> {
        if n < 1 {
            return Err(domain("sarcomere count", "must be at least 1"));
        }
        sarcomere.validate()?;
        spa.validate()?;
        Ok(Self {
            n,
            sarcomere,
            spa,
            material,
        })
    }

    /// Departures from the design rules. These never block a simulation.
    pub fn design_warnings(&self) -> Vec<String> {
        let s = &self.sarcomere;
        let mut out = Vec::new();
        let expected_i = 2.0 / 3.0 * s.a_band;
        if (s.i_band - expected_i).abs() > 1e-9 * expected_i {
            out.push(format!(
                "I-band {} mm differs from 2/3 of the A-band ({expected_i:.6} mm)",
                s.i_band
            ));
        }
        let semicircle = FRAC_PI_2 * s.i_band;
        if (s.actin_arc - semicircle).abs() > 1e-9 * semicircle {
            out.push(format!(
                "actin arc {} mm is not the rest semicircle over the I-band ({semicircle:.6} mm)",
                s.actin_arc
            ));
        }
        if let Ok((low, high)) = myosin_height_bounds(s.a_band, self.spa.t_w, self.spa.h_ch) {
            let eps = 1e-9 * high;
            if s.myosin_height < low - eps || s.myosin_height > high + eps {
                out.push(format!(
                    "myosin height {} mm outside [{low:.6}, {high:.6}] mm",
                    s.myosin_height
                ));
            }
        }
        out
    }
}

/// Resting myofibril length `n·(A' + I')`.
pub fn resting_length(spec: &MyofibrilSpec) -> f64 {
    f64::from(spec.n) * (spec.sarcomere.a_band + spec.sarcomere.i_band)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthClass {
    Valid,
    OverContracted,
    OverStretched,
}

impl LengthClass {
    pub fn as_str(self) -> &'static str {
        match self {
            LengthClass::Valid => "valid",
            LengthClass::OverContracted => "over-contracted",
            LengthClass::OverStretched => "over-stretched",
        }
    }
}

impl std::fmt::Display for LengthClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies `current / resting` against the muscle-like limits `[0.6, 1.7]`.
pub fn check_length_ratio(current: f64, resting: f64) -> Result<LengthClass> {
    require_positive("resting length", resting)?;
    Ok(classify_ratio(current / resting))
}

pub fn classify_ratio(ratio: f64) -> LengthClass {
    if ratio < MIN_LENGTH_RATIO {
        LengthClass::OverContracted
    } else if ratio > MAX_LENGTH_RATIO {
        LengthClass::OverStretched
    } else {
        LengthClass::Valid
    }
}

/// I-band and rest actin semicircle implied by an A-band length.
pub fn design_from_a_band(a_band: f64) -> Result<SarcomereDesign> {
    require_positive("a_band", a_band)?;
    let radius = a_band / 3.0;
    Ok(SarcomereDesign {
        a_band,
        i_band: 2.0 * radius,
        actin_arc: PI * radius,
        rest_r1: radius,
        rest_r2: radius,
    })
}

/// Range of myosin heights between rest and full contraction.
pub fn myosin_height_bounds(a_band: f64, t_w: f64, h_ch: f64) -> Result<(f64, f64)> {
    require_positive("a_band", a_band)?;
    require_positive("t_w", t_w)?;
    require_positive("h_ch", h_ch)?;
    let walls = 2.0 * t_w + h_ch;
    Ok((2.0 / 3.0 * a_band + walls, FRAC_PI_3 * a_band + walls))
}

/// Half of an ellipse with semi-axes `r1 ≥ r2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipseHalf {
    pub r1: f64,
    pub r2: f64,
    pub eccentricity: f64,
}

impl EllipseHalf {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        require_positive("r2", r2)?;
        require_positive("r1", r1)?;
        if r2 > r1 {
            return Err(domain(
                "semi-axes",
                format!("minor semi-axis {r2} exceeds major semi-axis {r1}"),
            ));
        }
        Ok(Self {
            r1,
            r2,
            eccentricity: eccentricity_squared(r1, r2).sqrt(),
        })
    }

    pub fn arc_length(&self) -> f64 {
        half_perimeter(self.r1, self.r2)
    }
}

/// Arc length of half an ellipse, `r1·∫₀^π √(1 − e² sin²θ) dθ = 2·r1·E(e²)`.
pub fn semi_ellipse_arc_length(r1: f64, r2: f64) -> Result<f64> {
    Ok(EllipseHalf::new(r1, r2)?.arc_length())
}

// 1 − (small/big)², written to keep precision when the axes are close
fn eccentricity_squared(big: f64, small: f64) -> f64 {
    ((big - small) * (big + small) / (big * big)).clamp(0.0, 1.0)
}

/// Half perimeter for either orientation; symmetric in its arguments.
fn half_perimeter(a: f64, b: f64) -> f64 {
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    if big == 0.0 {
        return 0.0;
    }
    2.0 * big * complete_e(eccentricity_squared(big, small))
}

/// Horizontal semi-axis of an actin of length `arc_length` whose ends are
/// `minor_diameter` apart.
///
/// When the arc is shorter than the semicircle over the chord the vertical
/// axis becomes the longer one; the horizontal semi-axis is still returned
/// and is then below `minor_diameter / 2`. It tends to zero as the arc
/// approaches the chord.
pub fn solve_major_axis(arc_length: f64, minor_diameter: f64) -> Result<f64> {
    require_positive("arc length", arc_length)?;
    require_positive("minor diameter", minor_diameter)?;
    if arc_length <= minor_diameter {
        return Err(domain(
            "arc length",
            format!("{arc_length} mm cannot span a chord of {minor_diameter} mm"),
        ));
    }
    let r2 = 0.5 * minor_diameter;
    if (arc_length - PI * r2).abs() <= 16.0 * f64::EPSILON * arc_length {
        return Ok(r2);
    }
    // half_perimeter(r1, r2) rises from 2·r2 at r1 = 0 and exceeds 2·r1
    let tol = Tolerance {
        x_abs: 4.0 * f64::EPSILON * arc_length,
        f_abs: 0.0,
    };
    bisect(
        |r1| half_perimeter(r1, r2) - arc_length,
        0.0,
        0.5 * arc_length,
        tol,
    )
}

/// Horizontal actin semi-axis after the myosin has grown by `delta_hm`.
pub fn actin_semi_axis(spec: &MyofibrilSpec, delta_hm: f64) -> Result<f64> {
    if !delta_hm.is_finite() || delta_hm < 0.0 {
        return Err(domain(
            "myosin height change",
            format!("must be non-negative, got {delta_hm}"),
        ));
    }
    let chord = spec.sarcomere.rest_chord() + delta_hm;
    solve_major_axis(spec.sarcomere.actin_arc, chord).map_err(|_| {
        domain(
            "myosin height change",
            format!(
                "{delta_hm} mm raises the actin chord to {chord} mm, beyond the arc length {} mm",
                spec.sarcomere.actin_arc
            ),
        )
    })
}

/// Myofibril length `n·(A' + 2·r1)` after the myosin has grown by `delta_hm`.
pub fn myofibril_length(spec: &MyofibrilSpec, delta_hm: f64) -> Result<f64> {
    let r1 = actin_semi_axis(spec, delta_hm)?;
    Ok(f64::from(spec.n) * (spec.sarcomere.a_band + 2.0 * r1))
}

/// Angle between the actin chord and its straight-line approximation,
/// `θ = arccos((2·t_w + h_ch + 2·λ_jz·h_jz) / l)`.
pub fn contraction_angle(spa: &SpaGeometry, lambda_jz: f64, actin_arc: f64) -> Result<f64> {
    require_positive("actin arc", actin_arc)?;
    let arg = (2.0 * spa.t_w + spa.h_ch + 2.0 * lambda_jz * spa.h_jz) / actin_arc;
    if !(arg > 0.0 && arg < 1.0) {
        return Err(domain(
            "contraction angle",
            format!("arccos argument {arg} outside (0, 1); actin arc {actin_arc} mm too short"),
        ));
    }
    Ok(arg.acos())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conforming(n: u32, a_band: f64) -> MyofibrilSpec {
        let spa = SpaGeometry::prototype();
        let sarc = SarcomereGeometry::conforming(a_band, &spa, 2).unwrap();
        MyofibrilSpec::new(n, sarc, spa, YeohMaterial::dragonskin_30()).unwrap()
    }

    // composite Simpson on r1·∫₀^π √(1 − e² sin²θ) dθ with many panels
    fn arc_by_quadrature(r1: f64, r2: f64) -> f64 {
        let e2 = 1.0 - (r2 / r1).powi(2);
        let n = 20_000;
        let h = PI / n as f64;
        let f = |t: f64| (1.0 - e2 * t.sin().powi(2)).sqrt();
        let mut s = f(0.0) + f(PI);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(i as f64 * h);
        }
        r1 * s * h / 3.0
    }

    #[test]
    fn resting_length_examples() {
        let spa = SpaGeometry::prototype();
        let s1 = MyofibrilSpec::new(1, SarcomereGeometry::prototype(), spa, YeohMaterial::dragonskin_30())
            .unwrap();
        assert_eq!(resting_length(&s1), 50.0);
        let s3 = MyofibrilSpec { n: 3, ..s1.clone() };
        assert_eq!(resting_length(&s3), 150.0);
        assert!(MyofibrilSpec::new(0, SarcomereGeometry::prototype(), spa, YeohMaterial::dragonskin_30())
            .is_err());
    }

    #[test]
    fn length_ratio_classes() {
        assert_eq!(check_length_ratio(100.0, 100.0).unwrap(), LengthClass::Valid);
        assert_eq!(check_length_ratio(59.0, 100.0).unwrap(), LengthClass::OverContracted);
        assert_eq!(check_length_ratio(171.0, 100.0).unwrap(), LengthClass::OverStretched);
        assert_eq!(check_length_ratio(60.0, 100.0).unwrap(), LengthClass::Valid);
        assert_eq!(check_length_ratio(170.0, 100.0).unwrap(), LengthClass::Valid);
        assert!(check_length_ratio(1.0, 0.0).is_err());
    }

    #[test]
    fn design_rules() {
        let d = design_from_a_band(30.0).unwrap();
        assert!((d.i_band - 20.0).abs() < 1e-12);
        assert!((d.actin_arc - 31.415_926_535_897_93).abs() < 1e-12);
        assert!((d.rest_r1 - 10.0).abs() < 1e-12 && d.rest_r1 == d.rest_r2);
        let d = design_from_a_band(3.0).unwrap();
        assert!((d.i_band - 2.0).abs() < 1e-12 && (d.actin_arc - PI).abs() < 1e-12);
        for a in [0.1, 1.0, 7.3, 30.0, 250.0] {
            let d = design_from_a_band(a).unwrap();
            assert!((d.i_band - 2.0 / 3.0 * a).abs() <= 1e-12 * a);
            assert!((d.actin_arc - FRAC_PI_2 * d.i_band).abs() <= 1e-12 * a);
        }
        assert!(design_from_a_band(0.0).is_err());
        assert!(design_from_a_band(-1.0).is_err());
    }

    #[test]
    fn myosin_bounds() {
        let (lo, hi) = myosin_height_bounds(30.0, 1.5, 5.0).unwrap();
        assert!((lo - 28.0).abs() < 1e-12);
        assert!((hi - 39.415_926_535_897_93).abs() < 1e-12);
        let (lo, hi) = myosin_height_bounds(3.0, 0.5, 1.0).unwrap();
        assert!((lo - 4.0).abs() < 1e-12 && (hi - 5.141_592_653_589_793).abs() < 1e-12);
        assert!(lo < hi);
        assert!(myosin_height_bounds(3.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn arc_length_examples() {
        assert!((semi_ellipse_arc_length(10.0, 10.0).unwrap() - 10.0 * PI).abs() < 1e-12);
        let l = semi_ellipse_arc_length(10.0, 5.0).unwrap();
        assert!((l - arc_by_quadrature(10.0, 5.0)).abs() < 1e-9);
        assert!((l - 24.221_120_551_369_2).abs() < 1e-9);
        let thin = semi_ellipse_arc_length(10.0, 1e-9).unwrap();
        assert!((thin - 20.0).abs() < 1e-6);
        assert!(semi_ellipse_arc_length(5.0, 10.0).is_err());
        assert!(semi_ellipse_arc_length(5.0, 0.0).is_err());
    }

    #[test]
    fn arc_length_bounds() {
        for (r1, r2) in [(10.0, 9.0), (3.0, 0.2), (100.0, 40.0)] {
            let l = semi_ellipse_arc_length(r1, r2).unwrap();
            assert!(l >= 2.0 * r1 && l <= PI * r1);
            assert!((l - arc_by_quadrature(r1, r2)).abs() < 1e-8 * l);
        }
    }

    #[test]
    fn solver_examples() {
        assert!((solve_major_axis(31.415_93, 20.0).unwrap() - 10.0).abs() < 1e-5);
        assert!((solve_major_axis(24.221_120_551_369_2, 10.0).unwrap() - 10.0).abs() < 1e-9);
        for l in [1.0, 17.0, 31.4] {
            let r = solve_major_axis(l, 2.0 * l / PI).unwrap();
            assert!((r - l / PI).abs() < 1e-12 * l);
        }
        assert!(solve_major_axis(10.0, 10.0).is_err());
        assert!(solve_major_axis(10.0, 12.0).is_err());
    }

    #[test]
    fn solver_swapped_orientation() {
        // arc shorter than the semicircle over the chord
        let r1 = solve_major_axis(25.0, 20.0).unwrap();
        assert!(r1 < 10.0);
        assert!((half_perimeter(r1, 10.0) - 25.0).abs() < 1e-9);
        assert!((semi_ellipse_arc_length(10.0, r1).unwrap() - 25.0).abs() < 1e-9);
        // almost straight
        assert!(solve_major_axis(20.0 + 1e-9, 20.0).unwrap() < 1e-3);
    }

    #[test]
    fn rest_length_is_recovered() {
        for (n, a) in [(1, 30.0), (3, 30.0), (2, 7.5), (5, 0.9)] {
            let spec = conforming(n, a);
            assert_eq!(myofibril_length(&spec, 0.0).unwrap(), resting_length(&spec));
        }
        assert_eq!(myofibril_length(&conforming(1, 30.0), 0.0).unwrap(), 50.0);
        assert_eq!(myofibril_length(&conforming(3, 30.0), 0.0).unwrap(), 150.0);
    }

    #[test]
    fn length_decreases_towards_full_contraction() {
        let spec = conforming(1, 30.0);
        let span = spec.sarcomere.actin_arc - spec.sarcomere.rest_chord();
        let mut prev = f64::INFINITY;
        for i in 0..100 {
            let d = span * i as f64 / 100.0;
            let l = myofibril_length(&spec, d).unwrap();
            assert!(l < prev, "not decreasing at delta {d}");
            prev = l;
        }
        let near_full = myofibril_length(&spec, span * (1.0 - 1e-10)).unwrap();
        assert!((near_full - 30.0).abs() < 1e-2);
        assert!((near_full / resting_length(&spec) - MIN_LENGTH_RATIO).abs() < 1e-3);
        assert!(myofibril_length(&spec, span).is_err());
        assert!(myofibril_length(&spec, -0.1).is_err());
    }

    #[test]
    fn angle_examples() {
        let spa = SpaGeometry::prototype();
        let t = contraction_angle(&spa, 1.0, 32.0).unwrap();
        assert!((t - (12.0_f64 / 32.0).acos()).abs() < 1e-15);
        assert!((t.to_degrees() - 67.98).abs() < 0.01);
        // numerator 12 = l/2
        assert!((contraction_angle(&spa, 1.0, 24.0).unwrap() - PI / 3.0).abs() < 1e-12);
        let mut prev = f64::INFINITY;
        for i in 0..50 {
            let t = contraction_angle(&spa, 1.0 + i as f64 * 0.1, 32.0).unwrap();
            assert!(t < prev);
            prev = t;
        }
        assert!(contraction_angle(&spa, 1.0, 12.0).is_err());
        assert!(contraction_angle(&spa, 1.0, 11.0).is_err());
    }

    #[test]
    fn prototype_warnings() {
        let spec = MyofibrilSpec::new(
            1,
            SarcomereGeometry::prototype(),
            SpaGeometry::prototype(),
            YeohMaterial::dragonskin_30(),
        )
        .unwrap();
        let w = spec.design_warnings();
        assert_eq!(w.len(), 1, "{w:?}");
        assert!(w[0].contains("actin arc"));
        assert!(conforming(1, 30.0).design_warnings().is_empty());
    }
}
