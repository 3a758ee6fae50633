//! Run configuration: a sectioned `key = value` file.
//!
//! ```text
//! [material]
//! name = dragonskin-30        # built-in, or give c1/c2/c3/density inline
//!
//! [spa]
//! t_w = 1.5                   # or `ratio = 0.25` with h_ch / assumed_h_ch
//! a_ch = 9.5
//! b_ch = 10
//! h_ch = 5
//! h_jz = 2
//! a_hz = 6
//! b_hz = 15
//!
//! [sarcomere]
//! n = 1
//! a_band = 30                 # i_band, actin_arc, myosin_height derived if absent
//! actin_arc = 32
//! junctions_per_myosin = 2
//!
//! [sweep]
//! start = 0.01
//! end = 0.1
//! step = 0.01
//! assumed_h_ch = 10           # used only when [spa] omits h_ch
//!
//! [output]
//! format = csv
//! path = out.csv
//! ```
//!
//! Lengths are in mm, pressures and coefficients in MPa.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use ini::Ini;

use crate::actuation::PressureSweep;
use crate::geometry::{
    myosin_height_bounds, design_from_a_band, SarcomereGeometry, SpaGeometry,
    DEFAULT_JUNCTIONS_PER_MYOSIN,
};
use crate::material::YeohMaterial;

use super::CliError;

/// Chamber height used when a configuration only fixes `t_w / h_ch`.
pub const DEFAULT_ASSUMED_H_CH: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Wall thickness given absolutely or as a fraction of the chamber height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WallSpec {
    Thickness(f64),
    Ratio(f64),
}

/// SPA dimensions as written in the file.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaInput {
    pub wall: WallSpec,
    pub h_ch: Option<f64>,
    pub a_ch: f64,
    pub b_ch: f64,
    pub h_jz: f64,
    pub a_hz: f64,
    pub b_hz: f64,
}

impl SpaInput {
    /// Chamber height, falling back to the assumed value.
    pub fn chamber_height(&self, assumed_h_ch: f64) -> f64 {
        self.h_ch.unwrap_or(assumed_h_ch)
    }

    pub fn uses_assumed_height(&self) -> bool {
        self.h_ch.is_none()
    }

    pub fn resolve(&self, assumed_h_ch: f64) -> Result<SpaGeometry, CliError> {
        let h_ch = self.chamber_height(assumed_h_ch);
        let t_w = match self.wall {
            WallSpec::Thickness(t) => t,
            WallSpec::Ratio(r) => r * h_ch,
        };
        self.with_wall(t_w, h_ch)
    }

    pub fn with_wall(&self, t_w: f64, h_ch: f64) -> Result<SpaGeometry, CliError> {
        SpaGeometry::new(t_w, self.a_ch, self.b_ch, h_ch, self.h_jz, self.a_hz, self.b_hz)
            .map_err(|e| CliError::Input(format!("[spa] {e}")))
    }
}

/// Sarcomere dimensions as written; missing ones follow the design rules.
#[derive(Debug, Clone, PartialEq)]
pub struct SarcomereInput {
    pub n: u32,
    pub a_band: f64,
    pub i_band: Option<f64>,
    pub actin_arc: Option<f64>,
    pub myosin_height: Option<f64>,
    pub sarcomere_height: Option<f64>,
    pub junctions_per_myosin: u32,
}

impl SarcomereInput {
    pub fn resolve(&self, spa: &SpaGeometry) -> Result<SarcomereGeometry, CliError> {
        let err = |e: crate::Error| CliError::Input(format!("[sarcomere] {e}"));
        let design = design_from_a_band(self.a_band).map_err(err)?;
        let myosin_height = match self.myosin_height {
            Some(h) => h,
            None => myosin_height_bounds(self.a_band, spa.t_w, spa.h_ch).map_err(err)?.0,
        };
        let geometry = SarcomereGeometry {
            a_band: self.a_band,
            i_band: self.i_band.unwrap_or(design.i_band),
            actin_arc: self.actin_arc.unwrap_or(design.actin_arc),
            myosin_height,
            sarcomere_height: self.sarcomere_height,
            junctions_per_myosin: self.junctions_per_myosin,
        };
        geometry.validate().map_err(err)?;
        Ok(geometry)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub material: YeohMaterial,
    pub spa: SpaInput,
    pub sarcomere: SarcomereInput,
    pub sweep: PressureSweep,
    pub assumed_h_ch: f64,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
}

type Section = BTreeMap<String, String>;

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let ini = Ini::load_from_str(text)
            .map_err(|e| CliError::Input(format!("config parse error: {e}")))?;
        let mut sections: BTreeMap<String, Section> = BTreeMap::new();
        for (name, props) in ini.iter() {
            let Some(name) = name else {
                if props.iter().next().is_some() {
                    return Err(CliError::Input("config keys must sit inside a [section]".into()));
                }
                continue;
            };
            if !["material", "spa", "sarcomere", "sweep", "output"].contains(&name) {
                return Err(CliError::Input(format!("unknown config section [{name}]")));
            }
            let entry = sections.entry(name.to_string()).or_default();
            for (k, v) in props.iter() {
                entry.insert(k.trim().to_string(), strip_comment(v).to_string());
            }
        }
        let empty = Section::new();
        let get = |name: &str| sections.get(name).unwrap_or(&empty);

        let material = parse_material(get("material"))?;
        let spa = parse_spa(get("spa"))?;
        let sarcomere = parse_sarcomere(get("sarcomere"))?;
        let (sweep, assumed_h_ch) = parse_sweep(get("sweep"))?;
        let (output_path, format) = parse_output(get("output"))?;
        Ok(Self {
            material,
            spa,
            sarcomere,
            sweep,
            assumed_h_ch,
            output_path,
            format,
        })
    }
}

fn strip_comment(v: &str) -> &str {
    v.split(['#', ';']).next().unwrap_or("").trim()
}

struct Reader<'a> {
    section: &'static str,
    map: &'a Section,
    allowed: &'static [&'static str],
}

impl<'a> Reader<'a> {
    fn new(section: &'static str, map: &'a Section, allowed: &'static [&'static str]) -> Result<Self, CliError> {
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(CliError::Input(format!("unknown key `{k}` in [{section}]")));
        }
        Ok(Self { section, map, allowed })
    }

    fn opt_f64(&self, key: &str) -> Result<Option<f64>, CliError> {
        debug_assert!(self.allowed.contains(&key));
        self.map
            .get(key)
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| CliError::Input(format!("[{}] {key} = `{v}` is not a number", self.section)))
            })
            .transpose()
    }

    fn f64(&self, key: &str) -> Result<f64, CliError> {
        self.opt_f64(key)?
            .ok_or_else(|| CliError::Input(format!("[{}] missing required key `{key}`", self.section)))
    }

    fn opt_u32(&self, key: &str) -> Result<Option<u32>, CliError> {
        self.map
            .get(key)
            .map(|v| {
                v.parse::<u32>()
                    .map_err(|_| CliError::Input(format!("[{}] {key} = `{v}` is not a non-negative integer", self.section)))
            })
            .transpose()
    }

    fn opt_str(&self, key: &str) -> Option<&'a str> {
        self.map.get(key).map(String::as_str).filter(|s| !s.is_empty())
    }
}

fn parse_material(map: &Section) -> Result<YeohMaterial, CliError> {
    let r = Reader::new("material", map, &["name", "c1", "c2", "c3", "density"])?;
    let name = r.opt_str("name");
    let c1 = r.opt_f64("c1")?;
    match (name, c1) {
        (Some(name), None) => {
            if r.opt_f64("c2")?.is_some() || r.opt_f64("c3")?.is_some() {
                return Err(CliError::Input("[material] inline coefficients need c1".into()));
            }
            YeohMaterial::builtin(name).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown material `{name}` (built-in: {})",
                    crate::material::BUILTIN_NAMES.join(", ")
                ))
            })
        }
        (name, Some(c1)) => YeohMaterial::new(
            name.unwrap_or("custom"),
            c1,
            r.opt_f64("c2")?.unwrap_or(0.0),
            r.opt_f64("c3")?.unwrap_or(0.0),
            r.opt_f64("density")?,
        )
        .map_err(|e| CliError::Input(e.to_string())),
        (None, None) => Err(CliError::Input("[material] needs `name` or inline `c1`".into())),
    }
}

fn parse_spa(map: &Section) -> Result<SpaInput, CliError> {
    let r = Reader::new(
        "spa",
        map,
        &["t_w", "ratio", "a_ch", "b_ch", "h_ch", "h_jz", "a_hz", "b_hz"],
    )?;
    let wall = match (r.opt_f64("t_w")?, r.opt_f64("ratio")?) {
        (Some(t), None) => WallSpec::Thickness(t),
        (None, Some(q)) => WallSpec::Ratio(q),
        (Some(_), Some(_)) => {
            return Err(CliError::Input("[spa] give either `t_w` or `ratio`, not both".into()))
        }
        (None, None) => return Err(CliError::Input("[spa] missing `t_w` (or `ratio`)".into())),
    };
    let h_ch = r.opt_f64("h_ch")?;
    if matches!(wall, WallSpec::Thickness(_)) && h_ch.is_none() {
        return Err(CliError::Input("[spa] `t_w` needs an explicit `h_ch`".into()));
    }
    Ok(SpaInput {
        wall,
        h_ch,
        a_ch: r.f64("a_ch")?,
        b_ch: r.f64("b_ch")?,
        h_jz: r.f64("h_jz")?,
        a_hz: r.f64("a_hz")?,
        b_hz: r.f64("b_hz")?,
    })
}

fn parse_sarcomere(map: &Section) -> Result<SarcomereInput, CliError> {
    let r = Reader::new(
        "sarcomere",
        map,
        &[
            "n",
            "a_band",
            "i_band",
            "actin_arc",
            "myosin_height",
            "sarcomere_height",
            "junctions_per_myosin",
        ],
    )?;
    let n = r.opt_u32("n")?.unwrap_or(1);
    if n == 0 {
        return Err(CliError::Input("[sarcomere] n must be at least 1".into()));
    }
    Ok(SarcomereInput {
        n,
        a_band: r.f64("a_band")?,
        i_band: r.opt_f64("i_band")?,
        actin_arc: r.opt_f64("actin_arc")?,
        myosin_height: r.opt_f64("myosin_height")?,
        sarcomere_height: r.opt_f64("sarcomere_height")?,
        junctions_per_myosin: r
            .opt_u32("junctions_per_myosin")?
            .unwrap_or(DEFAULT_JUNCTIONS_PER_MYOSIN),
    })
}

fn parse_sweep(map: &Section) -> Result<(PressureSweep, f64), CliError> {
    let r = Reader::new("sweep", map, &["start", "end", "step", "assumed_h_ch"])?;
    let sweep = PressureSweep::new(r.f64("start")?, r.f64("end")?, r.f64("step")?)
        .map_err(|e| CliError::Input(format!("[sweep] {e}")))?;
    let assumed = r.opt_f64("assumed_h_ch")?.unwrap_or(DEFAULT_ASSUMED_H_CH);
    if assumed <= 0.0 {
        return Err(CliError::Input("[sweep] assumed_h_ch must be positive".into()));
    }
    Ok((sweep, assumed))
}

fn parse_output(map: &Section) -> Result<(Option<PathBuf>, Option<Format>), CliError> {
    let r = Reader::new("output", map, &["path", "format"])?;
    let format = match r.opt_str("format") {
        None => None,
        Some("csv") => Some(Format::Csv),
        Some("json") => Some(Format::Json),
        Some(other) => {
            return Err(CliError::Input(format!("[output] unknown format `{other}` (csv or json)")))
        }
    };
    Ok((r.opt_str("path").map(PathBuf::from), format))
}

#[cfg(test)]
mod tests {
    use super::*;

    const PROTOTYPE: &str = "
[material]
name = dragonskin-30

[spa]
t_w = 1.5
a_ch = 9.5
b_ch = 10
h_ch = 5
h_jz = 2
a_hz = 6
b_hz = 15

[sarcomere]
n = 1
a_band = 30
i_band = 20
actin_arc = 32   # rounded up in fabrication
myosin_height = 28

[sweep]
start = 0.01
end = 0.1
step = 0.01
";

    #[test]
    fn parses_prototype() {
        let c = RunConfig::parse(PROTOTYPE).unwrap();
        assert_eq!(c.material, YeohMaterial::dragonskin_30());
        let spa = c.spa.resolve(c.assumed_h_ch).unwrap();
        assert_eq!(spa, SpaGeometry::prototype());
        assert_eq!(c.sarcomere.resolve(&spa).unwrap(), SarcomereGeometry::prototype());
        assert_eq!(c.sweep.points().len(), 10);
        assert_eq!(c.assumed_h_ch, DEFAULT_ASSUMED_H_CH);
        assert!(c.format.is_none());
    }

    #[test]
    fn ratio_only_uses_assumed_height() {
        let text = PROTOTYPE
            .replace("t_w = 1.5", "ratio = 0.25")
            .replace("h_ch = 5", "")
            .replace("step = 0.01", "step = 0.01\nassumed_h_ch = 8");
        let c = RunConfig::parse(&text).unwrap();
        assert!(c.spa.uses_assumed_height());
        let spa = c.spa.resolve(c.assumed_h_ch).unwrap();
        assert_eq!((spa.t_w, spa.h_ch), (2.0, 8.0));
    }

    #[test]
    fn derived_sarcomere() {
        let text = PROTOTYPE
            .replace("i_band = 20\n", "")
            .replace("actin_arc = 32   # rounded up in fabrication\n", "")
            .replace("myosin_height = 28\n", "");
        let c = RunConfig::parse(&text).unwrap();
        let spa = c.spa.resolve(10.0).unwrap();
        let s = c.sarcomere.resolve(&spa).unwrap();
        assert!((s.actin_arc - 10.0 * std::f64::consts::PI).abs() < 1e-12);
        assert!((s.myosin_height - 28.0).abs() < 1e-12);
    }

    #[test]
    fn inline_material() {
        let text = PROTOTYPE.replace("name = dragonskin-30", "name = mix\nc1 = 0.05\nc2 = 0.001");
        let c = RunConfig::parse(&text).unwrap();
        assert_eq!((c.material.name.as_str(), c.material.c1, c.material.c2, c.material.c3), ("mix", 0.05, 0.001, 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            PROTOTYPE.replace("dragonskin-30", "plasticine"),
            PROTOTYPE.replace("a_ch = 9.5", "a_ch = nine"),
            PROTOTYPE.replace("a_ch = 9.5", ""),
            PROTOTYPE.replace("a_ch = 9.5", "a_ch = 9.5\nwidth = 3"),
            PROTOTYPE.replace("[sweep]", "[sweeps]"),
            PROTOTYPE.replace("n = 1", "n = 0"),
            PROTOTYPE.replace("end = 0.1", "end = 0.001"),
            PROTOTYPE.replace("h_ch = 5", ""),
            PROTOTYPE.replace("t_w = 1.5", "t_w = 1.5\nratio = 0.3"),
            format!("stray = 1\n{PROTOTYPE}"),
            format!("{PROTOTYPE}\n[output]\nformat = xml\n"),
        ];
        for (i, text) in cases.iter().enumerate() {
            assert!(matches!(RunConfig::parse(text), Err(CliError::Input(_))), "case {i}");
        }
    }
}
