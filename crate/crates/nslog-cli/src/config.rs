//! Line-oriented configuration: `[section]` headers, `key = value` pairs,
//! `#` comments. Unknown keys and duplicate keys are hard errors; every
//! numeric parameter is validated against its domain at parse time.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nslog::formula::LogLadderParams;
use nslog::solver::{DtPolicy, Forcing, SolverConfig};

#[derive(Debug)]
pub enum ConfigError {
    Syntax { line: usize, message: String },
    DuplicateKey { line: usize, key: String },
    UnknownKey { section: String, key: String },
    Domain { key: String, message: String },
    Missing { section: String, key: String },
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Syntax { line, message } => {
                write!(f, "config syntax error at line {line}: {message}")
            }
            ConfigError::DuplicateKey { line, key } => {
                write!(f, "duplicate key `{key}` at line {line}")
            }
            ConfigError::UnknownKey { section, key } => {
                write!(f, "unknown key `{key}` in section [{section}]")
            }
            ConfigError::Domain { key, message } => {
                write!(f, "domain violation for `{key}`: {message}")
            }
            ConfigError::Missing { section, key } => {
                write!(f, "missing required key `{key}` in section [{section}]")
            }
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Formulas,
    Ode,
    Simulate,
    Analyze,
    Audit,
    Sweep,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Mode> {
        match s {
            "formulas" => Some(Mode::Formulas),
            "ode" => Some(Mode::Ode),
            "simulate" => Some(Mode::Simulate),
            "analyze" => Some(Mode::Analyze),
            "audit" => Some(Mode::Audit),
            "sweep" => Some(Mode::Sweep),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Formulas => "formulas",
            Mode::Ode => "ode",
            Mode::Simulate => "simulate",
            Mode::Analyze => "analyze",
            Mode::Audit => "audit",
            Mode::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderBlock {
    pub deltas: Vec<f64>,
    pub cs: Vec<f64>,
    pub c0: f64,
    pub c3: f64,
}

impl LadderBlock {
    pub fn params(&self) -> Result<LogLadderParams, ConfigError> {
        LogLadderParams::new(self.deltas.clone(), self.cs.clone(), self.c0, self.c3).map_err(|e| {
            ConfigError::Domain {
                key: "ladder".into(),
                message: e.to_string(),
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentBlock {
    pub s: f64,
    pub q: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormulasBlock {
    pub s_min: f64,
    pub s_max: f64,
    pub s_count: usize,
    pub eps_min: f64,
    pub eps_max: f64,
    pub eps_count: usize,
    pub p_max: f64,
    pub h_count: usize,
    pub cq: f64,
    pub k0: f64,
    pub k_max: f64,
    pub t_model: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OdeKind {
    Comparison,
    Dichotomy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OdeBlock {
    pub kind: OdeKind,
    pub y0: f64,
    pub c: f64,
    pub mu: f64,
    pub c1: f64,
    pub c2: f64,
    pub beta: f64,
    pub omega: f64,
    pub t_end: f64,
    pub tol: f64,
    pub ceiling: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridBlock {
    pub rank: usize,
    pub n: usize,
    pub box_len: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitKind {
    Shear,
    TaylorGreen,
    Random,
    Shell,
    CrossShear,
    Abc,
    File,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InitBlock {
    pub kind: InitKind,
    pub k: u32,
    pub amp: f64,
    pub slope: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub r: f64,
    pub path: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverBlock {
    pub nu: f64,
    pub s: f64,
    pub q: f64,
    pub dt: Option<f64>,
    pub cfl: Option<f64>,
    pub t_end: f64,
    pub record_every: f64,
    pub dealias: bool,
    pub forcing_rate: f64,
    pub forcing_kmin: f64,
    pub forcing_kmax: f64,
    pub decay_c_env: f64,
    pub decay_beta_env: f64,
}

impl SolverBlock {
    pub fn to_solver_config(&self, ladder: LogLadderParams) -> Result<SolverConfig, ConfigError> {
        let dt = match (self.dt, self.cfl) {
            (Some(dt), None) => DtPolicy::Fixed(dt),
            (None, Some(c)) => DtPolicy::Cfl(c),
            (None, None) => DtPolicy::Fixed(0.01),
            (Some(_), Some(_)) => {
                return Err(ConfigError::Domain {
                    key: "dt/cfl".into(),
                    message: "set either dt or cfl, not both".into(),
                })
            }
        };
        let mut cfg = SolverConfig::new(self.nu, self.s, dt, self.t_end)
            .map_err(domain_err("solver"))?
            .with_q(self.q)
            .map_err(domain_err("q"))?
            .with_record_every(self.record_every)
            .map_err(domain_err("record_every"))?
            .with_ladder(ladder);
        cfg.dealias = self.dealias;
        if self.forcing_rate > 0.0 {
            cfg = cfg
                .with_forcing(Forcing {
                    k_min: self.forcing_kmin,
                    k_max: self.forcing_kmax,
                    rate: self.forcing_rate,
                })
                .map_err(domain_err("forcing"))?;
        }
        Ok(cfg)
    }
}

fn domain_err<E: std::fmt::Display>(key: &str) -> impl Fn(E) -> ConfigError + '_ {
    move |e| ConfigError::Domain {
        key: key.to_string(),
        message: e.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeBlock {
    pub input: String,
    pub nu: f64,
    pub eps_fractions: Vec<f64>,
    pub orders: Vec<f64>,
    pub separations_cells: Vec<usize>,
    pub n_samples: usize,
    pub radii_cells: Vec<usize>,
    pub h_bins: usize,
    pub fit_kmin: f64,
    pub fit_kmax: f64,
    pub k0: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AuditField {
    CrossShear,
    File,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditBlock {
    pub s: f64,
    pub sigma: f64,
    pub field: AuditField,
    pub n: usize,
    pub amp: f64,
    pub path: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepBlock {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub count: usize,
    pub log_grid: bool,
    pub with_ode: bool,
    pub t_end: f64,
    pub tol: f64,
    pub y0: f64,
    pub c1: f64,
    pub c2: f64,
}

/// Fully materialized run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub seed: u64,
    pub out_dir: String,
    pub ladder: LadderBlock,
    pub exponents: ExponentBlock,
    pub formulas: FormulasBlock,
    pub ode: OdeBlock,
    pub grid: GridBlock,
    pub init: InitBlock,
    pub solver: SolverBlock,
    pub analyze: AnalyzeBlock,
    pub audit: AuditBlock,
    pub sweep: SweepBlock,
}

// ---------------------------------------------------------------------------
// raw parsing
// ---------------------------------------------------------------------------

struct RawConfig {
    // section -> key -> (value, line, consumed)
    sections: BTreeMap<String, BTreeMap<String, (String, usize, bool)>>,
}

impl RawConfig {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut sections: BTreeMap<String, BTreeMap<String, (String, usize, bool)>> =
            BTreeMap::new();
        let mut current = String::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let Some(name) = name.strip_suffix(']') else {
                    return Err(ConfigError::Syntax {
                        line: line_no,
                        message: "unterminated section header".into(),
                    });
                };
                current = name.trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(ConfigError::Syntax {
                    line: line_no,
                    message: format!("expected `key = value`, got `{line}`"),
                });
            };
            let key = line[..eq].trim().to_string();
            let value = line[eq + 1..].trim().to_string();
            if key.is_empty() {
                return Err(ConfigError::Syntax {
                    line: line_no,
                    message: "empty key".into(),
                });
            }
            let entry = sections.entry(current.clone()).or_default();
            if entry.contains_key(&key) {
                return Err(ConfigError::DuplicateKey { line: line_no, key });
            }
            entry.insert(key, (value, line_no, false));
        }
        Ok(Self { sections })
    }

    fn take(&mut self, section: &str, key: &str) -> Option<String> {
        self.sections.get_mut(section).and_then(|m| {
            m.get_mut(key).map(|slot| {
                slot.2 = true;
                slot.0.clone()
            })
        })
    }

    fn ensure_consumed(&self) -> Result<(), ConfigError> {
        for (section, keys) in &self.sections {
            for (key, (_, _, consumed)) in keys {
                if !consumed {
                    return Err(ConfigError::UnknownKey {
                        section: section.clone(),
                        key: key.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

fn parse_f64(section: &str, key: &str, v: &str) -> Result<f64, ConfigError> {
    v.parse::<f64>().map_err(|_| ConfigError::Domain {
        key: format!("{section}.{key}"),
        message: format!("`{v}` is not a number"),
    })
}

fn parse_usize(section: &str, key: &str, v: &str) -> Result<usize, ConfigError> {
    v.parse::<usize>().map_err(|_| ConfigError::Domain {
        key: format!("{section}.{key}"),
        message: format!("`{v}` is not a non-negative integer"),
    })
}

fn parse_bool(section: &str, key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "on" | "yes" | "1" => Ok(true),
        "false" | "off" | "no" | "0" => Ok(false),
        _ => Err(ConfigError::Domain {
            key: format!("{section}.{key}"),
            message: format!("`{v}` is not a boolean"),
        }),
    }
}

fn parse_list_f64(section: &str, key: &str, v: &str) -> Result<Vec<f64>, ConfigError> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|part| parse_f64(section, key, part.trim()))
        .collect()
}

fn parse_list_usize(section: &str, key: &str, v: &str) -> Result<Vec<usize>, ConfigError> {
    if v.is_empty() {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|part| parse_usize(section, key, part.trim()))
        .collect()
}

macro_rules! take_or {
    ($raw:expr, $sec:expr, $key:expr, f64, $default:expr) => {
        match $raw.take($sec, $key) {
            Some(v) => parse_f64($sec, $key, &v)?,
            None => $default,
        }
    };
    ($raw:expr, $sec:expr, $key:expr, usize, $default:expr) => {
        match $raw.take($sec, $key) {
            Some(v) => parse_usize($sec, $key, &v)?,
            None => $default,
        }
    };
    ($raw:expr, $sec:expr, $key:expr, bool, $default:expr) => {
        match $raw.take($sec, $key) {
            Some(v) => parse_bool($sec, $key, &v)?,
            None => $default,
        }
    };
    ($raw:expr, $sec:expr, $key:expr, string, $default:expr) => {
        match $raw.take($sec, $key) {
            Some(v) => v,
            None => $default.to_string(),
        }
    };
}

fn check(cond: bool, key: &str, message: &str) -> Result<(), ConfigError> {
    if cond {
        Ok(())
    } else {
        Err(ConfigError::Domain {
            key: key.into(),
            message: message.into(),
        })
    }
}

/// Parse and validate a complete configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut raw = RawConfig::parse(text)?;

    let mode_str = raw.take("", "mode").ok_or(ConfigError::Missing {
        section: "".into(),
        key: "mode".into(),
    })?;
    let mode = Mode::parse(&mode_str).ok_or_else(|| ConfigError::Domain {
        key: "mode".into(),
        message: format!("`{mode_str}` is not one of formulas|ode|simulate|analyze|audit|sweep"),
    })?;
    let seed = match raw.take("", "seed") {
        Some(v) => v.parse::<u64>().map_err(|_| ConfigError::Domain {
            key: "seed".into(),
            message: format!("`{v}` is not a 64-bit unsigned integer"),
        })?,
        None => 0,
    };
    let out_dir = take_or!(raw, "", "out_dir", string, "out");

    // [ladder]
    let deltas = match raw.take("ladder", "deltas") {
        Some(v) => parse_list_f64("ladder", "deltas", &v)?,
        None => Vec::new(),
    };
    let cs = match raw.take("ladder", "cs") {
        Some(v) => parse_list_f64("ladder", "cs", &v)?,
        None => vec![1.0; deltas.len()],
    };
    let ladder = LadderBlock {
        deltas,
        cs,
        c0: take_or!(raw, "ladder", "c0", f64, 1.0),
        c3: take_or!(raw, "ladder", "c3", f64, 1.0),
    };
    ladder.params()?; // validate lengths and signs now

    // [exponents]
    let exponents = ExponentBlock {
        s: take_or!(raw, "exponents", "s", f64, 0.75),
        q: take_or!(raw, "exponents", "q", f64, 12.0),
        eta: take_or!(raw, "exponents", "eta", f64, 0.01),
    };
    check(
        exponents.s > 0.5 && exponents.s < 1.0,
        "exponents.s",
        "must exceed 1/2 and stay below 1",
    )?;
    check(exponents.q > 3.0, "exponents.q", "must exceed 3")?;
    check(exponents.eta >= 0.0, "exponents.eta", "must be >= 0")?;

    // [formulas]
    let formulas = FormulasBlock {
        s_min: take_or!(raw, "formulas", "s_min", f64, 0.51),
        s_max: take_or!(raw, "formulas", "s_max", f64, 0.95),
        s_count: take_or!(raw, "formulas", "s_count", usize, 45),
        eps_min: take_or!(raw, "formulas", "eps_min", f64, 1e-3),
        eps_max: take_or!(raw, "formulas", "eps_max", f64, 1.0),
        eps_count: take_or!(raw, "formulas", "eps_count", usize, 31),
        p_max: take_or!(raw, "formulas", "p_max", f64, 8.0),
        h_count: take_or!(raw, "formulas", "h_count", usize, 61),
        cq: take_or!(raw, "formulas", "cq", f64, 1.0),
        k0: take_or!(raw, "formulas", "k0", f64, 1.0),
        k_max: take_or!(raw, "formulas", "k_max", f64, 64.0),
        t_model: take_or!(raw, "formulas", "t_model", f64, 1.0),
    };
    check(
        formulas.s_min > 0.5 && formulas.s_max < 1.0 && formulas.s_min <= formulas.s_max,
        "formulas.s_min",
        "grid must satisfy 1/2 < s_min <= s_max < 1",
    )?;
    check(
        formulas.eps_min > 0.0 && formulas.eps_max <= 1.0 && formulas.eps_min <= formulas.eps_max,
        "formulas.eps_min",
        "grid must satisfy 0 < eps_min <= eps_max <= 1",
    )?;
    check(formulas.s_count >= 2, "formulas.s_count", "need >= 2")?;
    check(formulas.cq > 0.0, "formulas.cq", "must be > 0")?;
    check(
        formulas.k_max > formulas.k0 && formulas.k0 > 0.0,
        "formulas.k_max",
        "need k_max > k0 > 0",
    )?;

    // [ode]
    let ode_kind = match take_or!(raw, "ode", "kind", string, "comparison").as_str() {
        "comparison" => OdeKind::Comparison,
        "dichotomy" => OdeKind::Dichotomy,
        other => {
            return Err(ConfigError::Domain {
                key: "ode.kind".into(),
                message: format!("`{other}` is not comparison|dichotomy"),
            })
        }
    };
    let ode = OdeBlock {
        kind: ode_kind,
        y0: take_or!(raw, "ode", "y0", f64, 2.0),
        c: take_or!(raw, "ode", "c", f64, 1.0),
        mu: take_or!(raw, "ode", "mu", f64, 1.0),
        c1: take_or!(raw, "ode", "c1", f64, 1.0),
        c2: take_or!(raw, "ode", "c2", f64, 1.0),
        beta: take_or!(raw, "ode", "beta", f64, 0.5),
        omega: take_or!(raw, "ode", "omega", f64, 0.0),
        t_end: take_or!(raw, "ode", "t_end", f64, 1.0),
        tol: take_or!(raw, "ode", "tol", f64, 1e-10),
        ceiling: take_or!(raw, "ode", "ceiling", f64, 1e12),
    };
    check(ode.y0 > 0.0, "ode.y0", "must be > 0")?;
    check(ode.tol > 0.0, "ode.tol", "must be > 0")?;
    check(ode.ceiling > ode.y0, "ode.ceiling", "must exceed y0")?;
    check(ode.t_end > 0.0, "ode.t_end", "must be > 0")?;

    // [grid]
    let grid = GridBlock {
        rank: take_or!(raw, "grid", "rank", usize, 3),
        n: take_or!(raw, "grid", "n", usize, 32),
        box_len: take_or!(raw, "grid", "box", f64, 2.0 * std::f64::consts::PI),
    };
    check(grid.rank == 2 || grid.rank == 3, "grid.rank", "must be 2 or 3")?;
    check(
        grid.n >= 8 && grid.n.is_power_of_two(),
        "grid.n",
        "must be a power of two >= 8",
    )?;
    check(grid.box_len > 0.0, "grid.box", "must be > 0")?;

    // [init]
    let init_kind = match take_or!(raw, "init", "kind", string, "shear").as_str() {
        "shear" => InitKind::Shear,
        "taylor_green" => InitKind::TaylorGreen,
        "random" => InitKind::Random,
        "shell" => InitKind::Shell,
        "cross_shear" => InitKind::CrossShear,
        "abc" => InitKind::Abc,
        "file" => InitKind::File,
        other => {
            return Err(ConfigError::Domain {
                key: "init.kind".into(),
                message: format!(
                    "`{other}` is not shear|taylor_green|random|shell|cross_shear|abc|file"
                ),
            })
        }
    };
    let init = InitBlock {
        kind: init_kind,
        k: take_or!(raw, "init", "k", usize, 1) as u32,
        amp: take_or!(raw, "init", "amp", f64, 1.0),
        slope: take_or!(raw, "init", "slope", f64, -5.0 / 3.0),
        k_min: take_or!(raw, "init", "k_min", f64, 1.0),
        k_max: take_or!(raw, "init", "k_max", f64, 8.0),
        r: take_or!(raw, "init", "r", f64, 2.0),
        path: take_or!(raw, "init", "path", string, ""),
    };

    // [solver]
    let solver = SolverBlock {
        nu: take_or!(raw, "solver", "nu", f64, 0.1),
        s: take_or!(raw, "solver", "s", f64, 0.75),
        q: take_or!(raw, "solver", "q", f64, 12.0),
        dt: raw
            .take("solver", "dt")
            .map(|v| parse_f64("solver", "dt", &v))
            .transpose()?,
        cfl: raw
            .take("solver", "cfl")
            .map(|v| parse_f64("solver", "cfl", &v))
            .transpose()?,
        t_end: take_or!(raw, "solver", "t_end", f64, 1.0),
        record_every: take_or!(raw, "solver", "record_every", f64, 0.01),
        dealias: take_or!(raw, "solver", "dealias", bool, true),
        forcing_rate: take_or!(raw, "solver", "forcing_rate", f64, 0.0),
        forcing_kmin: take_or!(raw, "solver", "forcing_kmin", f64, 1.0),
        forcing_kmax: take_or!(raw, "solver", "forcing_kmax", f64, 2.0),
        decay_c_env: take_or!(raw, "solver", "decay_c_env", f64, 1.1),
        decay_beta_env: take_or!(raw, "solver", "decay_beta_env", f64, 1.0),
    };
    // full validation happens through SolverConfig
    solver.to_solver_config(ladder.params()?)?;

    // [analyze]
    let analyze = AnalyzeBlock {
        input: take_or!(raw, "analyze", "input", string, ""),
        nu: take_or!(raw, "analyze", "nu", f64, 0.1),
        eps_fractions: match raw.take("analyze", "eps") {
            Some(v) => parse_list_f64("analyze", "eps", &v)?,
            None => vec![0.1, 0.01],
        },
        orders: match raw.take("analyze", "orders") {
            Some(v) => parse_list_f64("analyze", "orders", &v)?,
            None => vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0],
        },
        separations_cells: match raw.take("analyze", "separations_cells") {
            Some(v) => parse_list_usize("analyze", "separations_cells", &v)?,
            None => vec![1, 2, 3, 4, 6, 8],
        },
        n_samples: take_or!(raw, "analyze", "n_samples", usize, 0),
        radii_cells: match raw.take("analyze", "radii_cells") {
            Some(v) => parse_list_usize("analyze", "radii_cells", &v)?,
            None => vec![1, 2, 3],
        },
        h_bins: take_or!(raw, "analyze", "h_bins", usize, 24),
        fit_kmin: take_or!(raw, "analyze", "fit_kmin", f64, 2.0),
        fit_kmax: take_or!(raw, "analyze", "fit_kmax", f64, 10.0),
        k0: take_or!(raw, "analyze", "k0", f64, 1.0),
    };
    for &e in &analyze.eps_fractions {
        check(e > 0.0 && e < 1.0, "analyze.eps", "fractions must lie in (0, 1)")?;
    }
    check(analyze.nu > 0.0, "analyze.nu", "must be > 0")?;

    // [audit]
    let audit_field = match take_or!(raw, "audit", "field", string, "cross_shear").as_str() {
        "cross_shear" => AuditField::CrossShear,
        "file" => AuditField::File,
        other => {
            return Err(ConfigError::Domain {
                key: "audit.field".into(),
                message: format!("`{other}` is not cross_shear|file"),
            })
        }
    };
    let audit = AuditBlock {
        s: take_or!(raw, "audit", "s", f64, 0.6),
        sigma: take_or!(raw, "audit", "sigma", f64, 0.2),
        field: audit_field,
        n: take_or!(raw, "audit", "n", usize, 16),
        amp: take_or!(raw, "audit", "amp", f64, 1.0),
        path: take_or!(raw, "audit", "path", string, ""),
    };
    check(
        audit.s > 0.0 && audit.s < 1.0,
        "audit.s",
        "must lie in (0, 1)",
    )?;
    check(
        audit.sigma > 0.0 && audit.sigma < 1.0 - audit.s,
        "audit.sigma",
        "must lie in (0, 1 - s)",
    )?;
    check(
        audit.n >= 8 && audit.n.is_power_of_two(),
        "audit.n",
        "must be a power of two >= 8",
    )?;

    // [sweep]
    let sweep = SweepBlock {
        lambda_min: take_or!(raw, "sweep", "lambda_min", f64, 1.0),
        lambda_max: take_or!(raw, "sweep", "lambda_max", f64, 1e6),
        count: take_or!(raw, "sweep", "count", usize, 50),
        log_grid: take_or!(raw, "sweep", "log", bool, true),
        with_ode: take_or!(raw, "sweep", "with_ode", bool, false),
        t_end: take_or!(raw, "sweep", "t_end", f64, 5.0),
        tol: take_or!(raw, "sweep", "tol", f64, 1e-9),
        y0: take_or!(raw, "sweep", "y0", f64, 1.0),
        c1: take_or!(raw, "sweep", "c1", f64, 1.0),
        c2: take_or!(raw, "sweep", "c2", f64, 1.0),
    };
    check(
        sweep.lambda_min >= 1.0 && sweep.lambda_max > sweep.lambda_min,
        "sweep.lambda_min",
        "need 1 <= lambda_min < lambda_max",
    )?;
    check(sweep.count >= 2, "sweep.count", "need >= 2")?;

    raw.ensure_consumed()?;

    Ok(RunConfig {
        mode,
        seed,
        out_dir,
        ladder,
        exponents,
        formulas,
        ode,
        grid,
        init,
        solver,
        analyze,
        audit,
        sweep,
    })
}

fn fmt_list_f64(v: &[f64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn fmt_list_usize(v: &[usize]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl RunConfig {
    /// Normalized text with every effective value materialized. Parsing the
    /// output reproduces this configuration exactly.
    pub fn emit(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode = {}", self.mode.name());
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "out_dir = {}", self.out_dir);
        let _ = writeln!(s, "\n[ladder]");
        let _ = writeln!(s, "deltas = {}", fmt_list_f64(&self.ladder.deltas));
        let _ = writeln!(s, "cs = {}", fmt_list_f64(&self.ladder.cs));
        let _ = writeln!(s, "c0 = {}", self.ladder.c0);
        let _ = writeln!(s, "c3 = {}", self.ladder.c3);
        let _ = writeln!(s, "\n[exponents]");
        let _ = writeln!(s, "s = {}", self.exponents.s);
        let _ = writeln!(s, "q = {}", self.exponents.q);
        let _ = writeln!(s, "eta = {}", self.exponents.eta);
        let _ = writeln!(s, "\n[formulas]");
        let _ = writeln!(s, "s_min = {}", self.formulas.s_min);
        let _ = writeln!(s, "s_max = {}", self.formulas.s_max);
        let _ = writeln!(s, "s_count = {}", self.formulas.s_count);
        let _ = writeln!(s, "eps_min = {}", self.formulas.eps_min);
        let _ = writeln!(s, "eps_max = {}", self.formulas.eps_max);
        let _ = writeln!(s, "eps_count = {}", self.formulas.eps_count);
        let _ = writeln!(s, "p_max = {}", self.formulas.p_max);
        let _ = writeln!(s, "h_count = {}", self.formulas.h_count);
        let _ = writeln!(s, "cq = {}", self.formulas.cq);
        let _ = writeln!(s, "k0 = {}", self.formulas.k0);
        let _ = writeln!(s, "k_max = {}", self.formulas.k_max);
        let _ = writeln!(s, "t_model = {}", self.formulas.t_model);
        let _ = writeln!(s, "\n[ode]");
        let _ = writeln!(
            s,
            "kind = {}",
            match self.ode.kind {
                OdeKind::Comparison => "comparison",
                OdeKind::Dichotomy => "dichotomy",
            }
        );
        let _ = writeln!(s, "y0 = {}", self.ode.y0);
        let _ = writeln!(s, "c = {}", self.ode.c);
        let _ = writeln!(s, "mu = {}", self.ode.mu);
        let _ = writeln!(s, "c1 = {}", self.ode.c1);
        let _ = writeln!(s, "c2 = {}", self.ode.c2);
        let _ = writeln!(s, "beta = {}", self.ode.beta);
        let _ = writeln!(s, "omega = {}", self.ode.omega);
        let _ = writeln!(s, "t_end = {}", self.ode.t_end);
        let _ = writeln!(s, "tol = {}", self.ode.tol);
        let _ = writeln!(s, "ceiling = {}", self.ode.ceiling);
        let _ = writeln!(s, "\n[grid]");
        let _ = writeln!(s, "rank = {}", self.grid.rank);
        let _ = writeln!(s, "n = {}", self.grid.n);
        let _ = writeln!(s, "box = {}", self.grid.box_len);
        let _ = writeln!(s, "\n[init]");
        let _ = writeln!(
            s,
            "kind = {}",
            match self.init.kind {
                InitKind::Shear => "shear",
                InitKind::TaylorGreen => "taylor_green",
                InitKind::Random => "random",
                InitKind::Shell => "shell",
                InitKind::CrossShear => "cross_shear",
                InitKind::Abc => "abc",
                InitKind::File => "file",
            }
        );
        let _ = writeln!(s, "k = {}", self.init.k);
        let _ = writeln!(s, "amp = {}", self.init.amp);
        let _ = writeln!(s, "slope = {}", self.init.slope);
        let _ = writeln!(s, "k_min = {}", self.init.k_min);
        let _ = writeln!(s, "k_max = {}", self.init.k_max);
        let _ = writeln!(s, "r = {}", self.init.r);
        let _ = writeln!(s, "path = {}", self.init.path);
        let _ = writeln!(s, "\n[solver]");
        let _ = writeln!(s, "nu = {}", self.solver.nu);
        let _ = writeln!(s, "s = {}", self.solver.s);
        let _ = writeln!(s, "q = {}", self.solver.q);
        if let Some(dt) = self.solver.dt {
            let _ = writeln!(s, "dt = {dt}");
        }
        if let Some(cfl) = self.solver.cfl {
            let _ = writeln!(s, "cfl = {cfl}");
        }
        let _ = writeln!(s, "t_end = {}", self.solver.t_end);
        let _ = writeln!(s, "record_every = {}", self.solver.record_every);
        let _ = writeln!(s, "dealias = {}", self.solver.dealias);
        let _ = writeln!(s, "forcing_rate = {}", self.solver.forcing_rate);
        let _ = writeln!(s, "forcing_kmin = {}", self.solver.forcing_kmin);
        let _ = writeln!(s, "forcing_kmax = {}", self.solver.forcing_kmax);
        let _ = writeln!(s, "decay_c_env = {}", self.solver.decay_c_env);
        let _ = writeln!(s, "decay_beta_env = {}", self.solver.decay_beta_env);
        let _ = writeln!(s, "\n[analyze]");
        let _ = writeln!(s, "input = {}", self.analyze.input);
        let _ = writeln!(s, "nu = {}", self.analyze.nu);
        let _ = writeln!(s, "eps = {}", fmt_list_f64(&self.analyze.eps_fractions));
        let _ = writeln!(s, "orders = {}", fmt_list_f64(&self.analyze.orders));
        let _ = writeln!(
            s,
            "separations_cells = {}",
            fmt_list_usize(&self.analyze.separations_cells)
        );
        let _ = writeln!(s, "n_samples = {}", self.analyze.n_samples);
        let _ = writeln!(s, "radii_cells = {}", fmt_list_usize(&self.analyze.radii_cells));
        let _ = writeln!(s, "h_bins = {}", self.analyze.h_bins);
        let _ = writeln!(s, "fit_kmin = {}", self.analyze.fit_kmin);
        let _ = writeln!(s, "fit_kmax = {}", self.analyze.fit_kmax);
        let _ = writeln!(s, "k0 = {}", self.analyze.k0);
        let _ = writeln!(s, "\n[audit]");
        let _ = writeln!(s, "s = {}", self.audit.s);
        let _ = writeln!(s, "sigma = {}", self.audit.sigma);
        let _ = writeln!(
            s,
            "field = {}",
            match self.audit.field {
                AuditField::CrossShear => "cross_shear",
                AuditField::File => "file",
            }
        );
        let _ = writeln!(s, "n = {}", self.audit.n);
        let _ = writeln!(s, "amp = {}", self.audit.amp);
        let _ = writeln!(s, "path = {}", self.audit.path);
        let _ = writeln!(s, "\n[sweep]");
        let _ = writeln!(s, "lambda_min = {}", self.sweep.lambda_min);
        let _ = writeln!(s, "lambda_max = {}", self.sweep.lambda_max);
        let _ = writeln!(s, "count = {}", self.sweep.count);
        let _ = writeln!(s, "log = {}", self.sweep.log_grid);
        let _ = writeln!(s, "with_ode = {}", self.sweep.with_ode);
        let _ = writeln!(s, "t_end = {}", self.sweep.t_end);
        let _ = writeln!(s, "tol = {}", self.sweep.tol);
        let _ = writeln!(s, "y0 = {}", self.sweep.y0);
        let _ = writeln!(s, "c1 = {}", self.sweep.c1);
        let _ = writeln!(s, "c2 = {}", self.sweep.c2);
        s
    }
}
