//! JSON run configs.
//!
//! Frequencies are rad/s. A key may instead carry the `_x2pi_MHz` suffix
//! (`"g_m_x2pi_MHz": 20`), or a value may be written as the string
//! `"20 x2pi_MHz"`. Durations are seconds, or nanoseconds under `_ns`.
//! Unknown keys are rejected so that typos cannot silently fall back to
//! defaults.

use std::f64::consts::TAU;
use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use klm_core::analysis::{Axis, EtaAxis, FeasibilityInputs, SweepSpec};
use klm_core::protocol::{MeasurementChoice, SchemeOneRun, KLM_GATE_PHASE};
use klm_core::{Engine, Level, PulseAngles, PulseRabi, SchemeOneParams, SchemeTwoParams, TimingErrors};

use crate::error::{CliError, CliResult};

const MHZ: (&str, f64) = ("_x2pi_MHz", TAU * 1e6);
const NS: (&str, f64) = ("_ns", 1e-9);

/// Raw config bytes plus the parsed top-level object.
pub struct Source {
    bytes: Vec<u8>,
    root: Map<String, Value>,
}

impl Source {
    /// No path means an empty config: every command then runs on defaults.
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Source {
                bytes: Vec::new(),
                root: Map::new(),
            });
        };
        let bytes = fs::read(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_bytes(bytes)
    }

    pub fn from_bytes(bytes: Vec<u8>) -> CliResult<Self> {
        let value: Value =
            serde_json::from_slice(&bytes).map_err(|e| CliError::Config(format!("invalid JSON: {e}")))?;
        match value {
            Value::Object(root) => Ok(Source { bytes, root }),
            _ => Err(CliError::Config("top level must be an object".into())),
        }
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(&self.bytes))
    }

    pub fn root(&self) -> Section<'_> {
        Section {
            path: String::new(),
            map: &self.root,
        }
    }
}

/// A JSON object with its dotted path, for diagnostics.
pub struct Section<'a> {
    path: String,
    map: &'a Map<String, Value>,
}

fn scaled_string(s: &str, unit: &str, factor: f64) -> Option<f64> {
    let num = s.trim().strip_suffix(unit.trim_start_matches('_'))?;
    num.trim().parse::<f64>().ok().map(|v| v * factor)
}

impl<'a> Section<'a> {
    fn key(&self, k: &str) -> String {
        if self.path.is_empty() {
            k.to_string()
        } else {
            format!("{}.{k}", self.path)
        }
    }

    fn err(&self, k: &str, msg: impl std::fmt::Display) -> CliError {
        CliError::config(&self.key(k), msg)
    }

    pub fn has(&self, k: &str) -> bool {
        self.map.contains_key(k)
    }

    /// Rejects keys outside `plain`, `freqs` and `times` (the latter two
    /// with or without their unit suffix).
    pub fn only(&self, plain: &[&str], freqs: &[&str], times: &[&str]) -> CliResult<()> {
        for k in self.map.keys() {
            let known = plain.contains(&k.as_str())
                || freqs.iter().any(|f| k == f || k.strip_suffix(MHZ.0) == Some(f))
                || times.iter().any(|f| k == f || k.strip_suffix(NS.0) == Some(f));
            if !known {
                return Err(self.err(k, "unknown key"));
            }
        }
        Ok(())
    }

    pub fn number(&self, k: &str) -> CliResult<Option<f64>> {
        match self.map.get(k) {
            None => Ok(None),
            Some(v) => {
                let x = v.as_f64().ok_or_else(|| self.err(k, "expected a number"))?;
                if !x.is_finite() {
                    return Err(self.err(k, "must be finite"));
                }
                Ok(Some(x))
            }
        }
    }

    fn with_unit(&self, k: &str, (suffix, factor): (&str, f64)) -> CliResult<Option<f64>> {
        let suffixed = format!("{k}{suffix}");
        let plain = match self.map.get(k) {
            None => None,
            Some(Value::String(s)) => Some(
                scaled_string(s, suffix, factor)
                    .ok_or_else(|| self.err(k, format!("cannot parse {s:?}; expected \"<number> {}\"", &suffix[1..])))?,
            ),
            Some(_) => self.number(k)?,
        };
        let scaled = self.number(&suffixed)?.map(|v| v * factor);
        match (plain, scaled) {
            (Some(_), Some(_)) => Err(self.err(k, format!("given both as `{k}` and `{suffixed}`"))),
            (a, b) => Ok(a.or(b)),
        }
    }

    /// Angular frequency in rad/s.
    pub fn frequency(&self, k: &str) -> CliResult<Option<f64>> {
        self.with_unit(k, MHZ)
    }

    /// Duration in seconds.
    pub fn time(&self, k: &str) -> CliResult<Option<f64>> {
        self.with_unit(k, NS)
    }

    pub fn require<T>(&self, k: &str, v: Option<T>) -> CliResult<T> {
        v.ok_or_else(|| self.err(k, "missing required key"))
    }

    pub fn unsigned(&self, k: &str) -> CliResult<Option<u64>> {
        match self.map.get(k) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(Some)
                .ok_or_else(|| self.err(k, "expected a non-negative integer")),
        }
    }

    pub fn usize(&self, k: &str) -> CliResult<Option<usize>> {
        match self.unsigned(k)? {
            None => Ok(None),
            Some(v) => usize::try_from(v).map(Some).map_err(|_| self.err(k, "too large")),
        }
    }

    pub fn string(&self, k: &str) -> CliResult<Option<&'a str>> {
        match self.map.get(k) {
            None => Ok(None),
            Some(v) => v.as_str().map(Some).ok_or_else(|| self.err(k, "expected a string")),
        }
    }

    pub fn section(&self, k: &str) -> CliResult<Option<Section<'a>>> {
        match self.map.get(k) {
            None => Ok(None),
            Some(Value::Object(map)) => Ok(Some(Section { path: self.key(k), map })),
            Some(_) => Err(self.err(k, "expected an object")),
        }
    }

    fn preset(&self) -> CliResult<bool> {
        match self.string("preset")? {
            None => Ok(false),
            Some("reference") => Ok(true),
            Some(other) => Err(self.err("preset", format!("unknown preset {other:?}; expected \"reference\""))),
        }
    }
}

/// Engine names accepted by `--engine` and the `engine` key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum EngineName {
    ClosedForm,
    EffectiveNumeric,
    IdealGate,
    NumericGate,
}

impl EngineName {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "closed-form" => Some(EngineName::ClosedForm),
            "effective-numeric" => Some(EngineName::EffectiveNumeric),
            "ideal-gate" => Some(EngineName::IdealGate),
            "numeric-gate" => Some(EngineName::NumericGate),
            _ => None,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            EngineName::ClosedForm => "closed-form",
            EngineName::EffectiveNumeric => "effective-numeric",
            EngineName::IdealGate => "ideal-gate",
            EngineName::NumericGate => "numeric-gate",
        }
    }
}

/// Command-line values that override the file.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub engine: Option<EngineName>,
}

fn engine_name(root: &Section, flag: Option<EngineName>) -> CliResult<Option<EngineName>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match root.string("engine")? {
        None => Ok(None),
        Some(s) => EngineName::parse(s)
            .map(Some)
            .ok_or_else(|| root.err("engine", format!("unknown engine {s:?}"))),
    }
}

fn check_scheme(root: &Section, expected: &str) -> CliResult<()> {
    match root.string("scheme")? {
        None => Ok(()),
        Some(s) if s == expected => Ok(()),
        Some(s) => Err(root.err("scheme", format!("this command needs scheme \"{expected}\", config says {s:?}"))),
    }
}

const ONE_FREQS: [&str; 7] = ["omega_s", "omega_d", "omega_m", "omega_c", "rabi", "g_s", "g_m"];
/// Drive detuning used with the preset when no drive is given.
const PRESET_DELTA_D: f64 = TAU * 1e9;

pub fn scheme_one_params(sec: &Section) -> CliResult<SchemeOneParams> {
    sec.only(&["preset", "n_molecules"], &[&ONE_FREQS[..], &["resonant_delta_d"]].concat(), &[])?;
    let preset = sec.preset()?;
    let base = SchemeOneParams::reference_device();
    let get = |k: &str, fallback: f64| -> CliResult<f64> {
        match sec.frequency(k)? {
            Some(v) => Ok(v),
            None if preset => Ok(fallback),
            None => sec.require(k, None),
        }
    };
    let mut p = SchemeOneParams {
        omega_s: get("omega_s", base.omega_s)?,
        omega_m: get("omega_m", base.omega_m)?,
        omega_c: get("omega_c", base.omega_c)?,
        g_s: get("g_s", base.g_s)?,
        g_m: get("g_m", base.g_m)?,
        n_molecules: match sec.unsigned("n_molecules")? {
            Some(n) => n,
            None if preset => base.n_molecules,
            None => sec.require("n_molecules", None)?,
        },
        omega_d: 0.0,
        rabi: 0.0,
    };
    if p.n_molecules == 0 {
        return Err(sec.err("n_molecules", "must be at least 1"));
    }
    let omega_d = sec.frequency("omega_d")?;
    let rabi = sec.frequency("rabi")?;
    let resonant = sec.frequency("resonant_delta_d")?;
    match (omega_d, rabi, resonant) {
        (Some(d), Some(r), None) => {
            p.omega_d = d;
            p.rabi = r;
        }
        (None, None, Some(delta_d)) => p = p.with_resonant_drive(delta_d).map_err(|e| sec.err("resonant_delta_d", e))?,
        (None, None, None) if preset => {
            p = p.with_resonant_drive(PRESET_DELTA_D).map_err(|e| sec.err("preset", e))?
        }
        (_, _, Some(_)) => {
            return Err(sec.err("resonant_delta_d", "conflicts with an explicit omega_d/rabi"));
        }
        (None, _, None) => return sec.require("omega_d", None),
        (_, None, None) => return sec.require("rabi", None),
    }
    Ok(p)
}

const TWO_FREQS: [&str; 11] = [
    "omega_e", "omega_g", "omega_c", "omega_d", "rabi_1", "rabi_2", "g_1", "g_2", "gamma_1", "gamma_2", "kappa",
];

pub fn scheme_two_params(sec: &Section) -> CliResult<SchemeTwoParams> {
    sec.only(&["preset"], &TWO_FREQS, &[])?;
    let preset = sec.preset()?;
    let base = SchemeTwoParams::reference_device();
    let get = |k: &str, fallback: f64| -> CliResult<f64> {
        match sec.frequency(k)? {
            Some(v) => Ok(v),
            None if preset => Ok(fallback),
            None => sec.require(k, None),
        }
    };
    let p = SchemeTwoParams {
        omega_e: get("omega_e", base.omega_e)?,
        omega_g: get("omega_g", base.omega_g)?,
        omega_c: get("omega_c", base.omega_c)?,
        omega_d: get("omega_d", base.omega_d)?,
        rabi_1: get("rabi_1", base.rabi_1)?,
        rabi_2: get("rabi_2", base.rabi_2)?,
        g_1: get("g_1", base.g_1)?,
        g_2: get("g_2", base.g_2)?,
        gamma_1: get("gamma_1", base.gamma_1)?,
        gamma_2: get("gamma_2", base.gamma_2)?,
        kappa: get("kappa", base.kappa)?,
    };
    p.check_decay().map_err(|e| CliError::config(&sec.key("decay"), e))?;
    Ok(p)
}

fn angles(root: &Section) -> CliResult<PulseAngles> {
    let mut a = PulseAngles::ideal();
    if let Some(sec) = root.section("angles")? {
        sec.only(&["theta0", "theta2", "phi", "phi_prime", "gt1", "gt3"], &[], &[])?;
        for (k, slot) in [
            ("theta0", &mut a.theta0),
            ("theta2", &mut a.theta2),
            ("phi", &mut a.phi),
            ("phi_prime", &mut a.phi_prime),
            ("gt1", &mut a.gt1),
            ("gt3", &mut a.gt3),
        ] {
            if let Some(v) = sec.number(k)? {
                *slot = v;
            }
        }
        a.validate().map_err(|e| CliError::config(&sec.key("angles"), e))?;
    }
    Ok(a)
}

fn timing_errors(sec: &Section) -> CliResult<TimingErrors> {
    sec.only(&["eta_0", "eta_1", "eta_2", "eta_3"], &[], &[])?;
    let mut e = TimingErrors::zero();
    for slot in 0..4 {
        let k = format!("eta_{slot}");
        if let Some(v) = sec.number(&k)? {
            if v <= -1.0 {
                return Err(sec.err(&k, "must be above -1"));
            }
            e.set(slot, v);
        }
    }
    Ok(e)
}

/// What happens after Step 6 in a Scheme-1 run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measurement {
    None,
    G,
    E,
    Sample,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeOneConfig {
    pub scheme: &'static str,
    pub params: SchemeOneParams,
    pub angles: PulseAngles,
    pub etas: TimingErrors,
    pub engine: Engine,
    pub pulse_rabi: PulseRabi,
    pub final_pulse_durations: [f64; 2],
    pub mode_cutoff: usize,
    pub measurement: Measurement,
    pub seed: u64,
}

const ONE_KEYS: [&str; 11] = [
    "scheme",
    "params",
    "angles",
    "etas",
    "engine",
    "pulse_rabi",
    "rabi_fraction",
    "final_pulse_durations",
    "mode_cutoff",
    "measurement",
    "seed",
];

impl SchemeOneConfig {
    pub fn resolve(src: &Source, ov: Overrides) -> CliResult<Self> {
        let root = src.root();
        root.only(&[&ONE_KEYS[..], &["grid"]].concat(), &[], &[])?;
        Self::resolve_section(&root, ov)
    }

    fn resolve_section(root: &Section, ov: Overrides) -> CliResult<Self> {
        check_scheme(root, "one")?;
        let params = match root.section("params")? {
            Some(sec) => scheme_one_params(&sec)?,
            None => SchemeOneParams::reference_device(),
        };
        let engine = match engine_name(root, ov.engine)? {
            None | Some(EngineName::ClosedForm) => Engine::ClosedForm,
            Some(EngineName::EffectiveNumeric) => Engine::EffectiveNumeric,
            Some(other) => {
                return Err(CliError::config(
                    "engine",
                    format!("{} is a Scheme-2 engine; use closed-form or effective-numeric", other.as_str()),
                ))
            }
        };
        let pulse_rabi = match (root.section("pulse_rabi")?, root.number("rabi_fraction")?) {
            (Some(_), Some(_)) => return Err(CliError::config("rabi_fraction", "conflicts with pulse_rabi")),
            (Some(sec), None) => {
                sec.only(&[], &["first", "second"], &[])?;
                PulseRabi {
                    first: sec.require("first", sec.frequency("first")?)?,
                    second: sec.require("second", sec.frequency("second")?)?,
                }
            }
            (None, fraction) => {
                let g = params.g_eff().map_err(|e| CliError::config("params", e))?;
                PulseRabi::fraction_of(g, fraction.unwrap_or(klm_core::protocol::scheme_one::DEFAULT_RABI_FRACTION))
            }
        };
        if pulse_rabi.first == 0.0 || pulse_rabi.second == 0.0 {
            return Err(CliError::config("pulse_rabi", "Rabi frequencies must be nonzero"));
        }
        let final_pulse_durations = match root.section("final_pulse_durations")? {
            None => [0.0, 0.0],
            Some(sec) => {
                sec.only(&[], &[], &["step5", "step6"])?;
                let t5 = sec.time("step5")?.unwrap_or(0.0);
                let t6 = sec.time("step6")?.unwrap_or(0.0);
                if t5 < 0.0 || t6 < 0.0 {
                    return Err(CliError::config("final_pulse_durations", "durations must be non-negative"));
                }
                [t5, t6]
            }
        };
        let measurement = match root.string("measurement")? {
            None | Some("sample") => Measurement::Sample,
            Some("none") => Measurement::None,
            Some("g") => Measurement::G,
            Some("e") => Measurement::E,
            Some(other) => {
                return Err(CliError::config(
                    "measurement",
                    format!("unknown choice {other:?}; expected none, g, e or sample"),
                ))
            }
        };
        let mode_cutoff = root.usize("mode_cutoff")?.unwrap_or(klm_core::protocol::scheme_one::DEFAULT_MODE_CUTOFF);
        if mode_cutoff < 1 {
            return Err(CliError::config("mode_cutoff", "must be at least 1"));
        }
        let etas = match root.section("etas")? {
            Some(sec) => timing_errors(&sec)?,
            None => TimingErrors::zero(),
        };
        Ok(SchemeOneConfig {
            scheme: "one",
            params,
            angles: angles(root)?,
            etas,
            engine,
            pulse_rabi,
            final_pulse_durations,
            mode_cutoff,
            measurement,
            seed: ov.seed.or(root.unsigned("seed")?).unwrap_or(0),
        })
    }

    pub fn measurement_choice(&self) -> Option<MeasurementChoice> {
        match self.measurement {
            Measurement::None => None,
            Measurement::G => Some(MeasurementChoice::Fixed(Level::G)),
            Measurement::E => Some(MeasurementChoice::Fixed(Level::E)),
            Measurement::Sample => Some(MeasurementChoice::Sample { seed: self.seed }),
        }
    }

    pub fn run_spec(&self) -> SchemeOneRun {
        SchemeOneRun {
            params: self.params.clone(),
            angles: self.angles,
            etas: self.etas,
            engine: self.engine,
            pulse_rabi: Some(self.pulse_rabi),
            final_pulse_durations: self.final_pulse_durations,
            mode_cutoff: self.mode_cutoff,
            measurement: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepConfig {
    pub scheme: &'static str,
    pub grid: SweepSpec,
}

fn axis(sec: &Section) -> CliResult<Axis> {
    sec.only(&["name", "min", "max", "points"], &[], &[])?;
    let name = sec.require("name", sec.string("name")?)?;
    let name = EtaAxis::parse(name)
        .ok_or_else(|| sec.err("name", format!("unknown axis {name:?}; expected eta0..eta3")))?;
    let min = sec.require("min", sec.number("min")?)?;
    let max = sec.require("max", sec.number("max")?)?;
    let points = sec.require("points", sec.usize("points")?)?;
    if points == 0 {
        return Err(sec.err("points", "must be at least 1"));
    }
    if min <= -1.0 || max <= -1.0 {
        return Err(sec.err("min", "timing errors must stay above -1"));
    }
    Ok(Axis { name, min, max, points })
}

impl SweepConfig {
    pub fn resolve(src: &Source, ov: Overrides) -> CliResult<Self> {
        let root = src.root();
        root.only(&[&ONE_KEYS[..], &["grid"]].concat(), &[], &[])?;
        check_scheme(&root, "one")?;
        if let Some(e) = engine_name(&root, ov.engine)? {
            if e != EngineName::ClosedForm {
                return Err(CliError::config("engine", "sweeps evaluate the closed-form fidelity only"));
            }
        }
        let mut grid = match root.section("grid")? {
            None => SweepSpec::exact_pulses(),
            Some(sec) => {
                sec.only(&["preset", "axis1", "axis2", "fixed"], &[], &[])?;
                match sec.string("preset")? {
                    Some(p) => {
                        if sec.has("axis1") || sec.has("axis2") || sec.has("fixed") {
                            return Err(sec.err("preset", "a preset grid cannot be combined with explicit axes"));
                        }
                        match p {
                            "exact-pulses" => SweepSpec::exact_pulses(),
                            "perturbed-pulses" => SweepSpec::perturbed_pulses(),
                            other => {
                                return Err(sec.err(
                                    "preset",
                                    format!("unknown grid {other:?}; expected exact-pulses or perturbed-pulses"),
                                ))
                            }
                        }
                    }
                    None => {
                        let a1 = sec.require("axis1", sec.section("axis1")?)?;
                        let a2 = sec.require("axis2", sec.section("axis2")?)?;
                        let fixed = match sec.section("fixed")? {
                            Some(f) => timing_errors(&f)?,
                            None => TimingErrors::zero(),
                        };
                        SweepSpec {
                            axis1: axis(&a1)?,
                            axis2: axis(&a2)?,
                            fixed,
                            angles: PulseAngles::ideal(),
                        }
                    }
                }
            }
        };
        grid.angles = angles(&root)?;
        grid.validate().map_err(|e| CliError::config("grid", e))?;
        Ok(SweepConfig { scheme: "one", grid })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeTwoConfig {
    pub scheme: &'static str,
    pub params: SchemeTwoParams,
    pub n: usize,
    pub engine: EngineName,
    /// Target conditional phase; the gate time follows from it.
    pub phase: f64,
    pub resonator_cutoff: usize,
    pub pulse_duration: f64,
}

pub const DEFAULT_RESONATOR_CUTOFF: usize = 4;
const DEFAULT_PULSE_DURATION: f64 = 4e-9;

impl SchemeTwoConfig {
    pub fn resolve(src: &Source, ov: Overrides) -> CliResult<Self> {
        let root = src.root();
        root.only(
            &["scheme", "params", "n", "engine", "phase", "resonator_cutoff", "seed"],
            &[],
            &["pulse_duration"],
        )?;
        check_scheme(&root, "two")?;
        let params = match root.section("params")? {
            Some(sec) => scheme_two_params(&sec)?,
            None => SchemeTwoParams::reference_device(),
        };
        let n = root.usize("n")?.unwrap_or(2);
        if n < 2 {
            return Err(CliError::config("n", format!("a KLM register needs n >= 2, got {n}")));
        }
        let engine = match engine_name(&root, ov.engine)? {
            None => EngineName::IdealGate,
            Some(e @ (EngineName::IdealGate | EngineName::NumericGate)) => e,
            Some(other) => {
                return Err(CliError::config(
                    "engine",
                    format!("{} is a Scheme-1 engine; use ideal-gate or numeric-gate", other.as_str()),
                ))
            }
        };
        let resonator_cutoff = root.usize("resonator_cutoff")?.unwrap_or(DEFAULT_RESONATOR_CUTOFF);
        if resonator_cutoff < 1 {
            return Err(CliError::config("resonator_cutoff", "must be at least 1"));
        }
        let pulse_duration = root.time("pulse_duration")?.unwrap_or(DEFAULT_PULSE_DURATION);
        if pulse_duration < 0.0 {
            return Err(CliError::config("pulse_duration", "must be non-negative"));
        }
        Ok(SchemeTwoConfig {
            scheme: "two",
            params,
            n,
            engine,
            phase: root.number("phase")?.unwrap_or(KLM_GATE_PHASE),
            resonator_cutoff,
            pulse_duration,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportConfig {
    pub scheme_one: SchemeOneParams,
    pub scheme_two: SchemeTwoParams,
    pub inputs: FeasibilityInputs,
}

impl ReportConfig {
    pub fn resolve(src: &Source) -> CliResult<Self> {
        let root = src.root();
        root.only(&["scheme_one", "scheme_two", "inputs"], &[], &[])?;
        let scheme_one = match root.section("scheme_one")? {
            Some(sec) => scheme_one_params(&sec)?,
            None => SchemeOneParams::reference_device(),
        };
        let scheme_two = match root.section("scheme_two")? {
            Some(sec) => scheme_two_params(&sec)?,
            None => SchemeTwoParams::reference_device(),
        };
        let mut inputs = FeasibilityInputs::default();
        if let Some(sec) = root.section("inputs")? {
            sec.only(
                &["rabi_fraction", "max_qubits"],
                &["gamma_scq", "gamma_molecule"],
                &["time_bound", "s2_pulse_duration"],
            )?;
            if let Some(v) = sec.frequency("gamma_scq")? {
                inputs.gamma_scq = v;
            }
            if let Some(v) = sec.frequency("gamma_molecule")? {
                inputs.gamma_molecule = v;
            }
            if let Some(v) = sec.number("rabi_fraction")? {
                if v <= 0.0 {
                    return Err(sec.err("rabi_fraction", "must be positive"));
                }
                inputs.rabi_fraction = v;
            }
            if let Some(v) = sec.time("time_bound")? {
                inputs.time_bound = v;
            }
            if let Some(v) = sec.time("s2_pulse_duration")? {
                inputs.s2_pulse_duration = v;
            }
            if let Some(v) = sec.usize("max_qubits")? {
                if v < 2 {
                    return Err(sec.err("max_qubits", "must be at least 2"));
                }
                inputs.max_qubits = v;
            }
        }
        Ok(ReportConfig {
            scheme_one,
            scheme_two,
            inputs,
        })
    }
}
