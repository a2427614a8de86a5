//! Line-oriented `key = value` run configuration.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitKind {
    Gaussian,
    RandomBandlimited,
    SingleMode,
}

impl InitKind {
    pub fn name(self) -> &'static str {
        match self {
            InitKind::Gaussian => "gaussian",
            InitKind::RandomBandlimited => "random_bandlimited",
            InitKind::SingleMode => "single_mode",
        }
    }
}

impl FromStr for InitKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "gaussian" => Ok(InitKind::Gaussian),
            "random_bandlimited" => Ok(InitKind::RandomBandlimited),
            "single_mode" => Ok(InitKind::SingleMode),
            other => Err(format!("unknown init_kind '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub domain_length: f64,
    pub dt: f64,
    pub t_end: f64,
    pub epsilon: f64,
    pub init_kind: InitKind,
    pub seed: u64,
    pub integrator_order: u32,
    pub sample_every: usize,
    pub ratio_cap: f64,
    pub output_path: String,
    /// Integer wavenumber of the `single_mode` pair.
    pub mode_k1: i64,
    pub mode_k2: i64,
    pub blowup_threshold: f64,
    /// Drop the nonlinear terms.
    pub linear_only: bool,
    /// Time-quadrature window and step of the heat-weighted part of `A_0`.
    pub a0_t_cut: f64,
    pub a0_quad_dt: f64,
    pub sweep_epsilons: Vec<f64>,
    /// Trajectories in the `interp-audit` corpus.
    pub corpus_size: usize,
    /// Random modes compared against the ODE oracle in `propagator-audit`.
    pub audit_samples: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 128,
            domain_length: 8.0 * PI,
            dt: 0.01,
            t_end: 10.0,
            epsilon: 1e-3,
            init_kind: InitKind::Gaussian,
            seed: 0,
            integrator_order: 2,
            sample_every: 10,
            ratio_cap: 10.0,
            output_path: "out".into(),
            mode_k1: 1,
            mode_k2: 1,
            blowup_threshold: 1e6,
            linear_only: false,
            a0_t_cut: 200.0,
            a0_quad_dt: 0.01,
            sweep_epsilons: vec![1e-3, 1e-2, 1e-1],
            corpus_size: 200,
            audit_samples: 1000,
        }
    }
}

const KEYS: [&str; 20] = [
    "n",
    "domain_length",
    "dt",
    "t_end",
    "epsilon",
    "init_kind",
    "seed",
    "integrator_order",
    "sample_every",
    "ratio_cap",
    "output_path",
    "mode_k1",
    "mode_k2",
    "blowup_threshold",
    "linear_only",
    "a0_t_cut",
    "a0_quad_dt",
    "sweep_epsilons",
    "corpus_size",
    "audit_samples",
];

fn value<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    raw.parse().map_err(|e| CliError::config(line, format!("bad value for {key}: {e}")))
}

fn float_list(line: usize, raw: &str) -> Result<Vec<f64>> {
    raw.split(',').map(|p| value(line, "sweep_epsilons", p.trim())).collect()
}

impl RunConfig {
    /// Parse a config; omitted keys keep their defaults.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        let mut seen: HashMap<String, usize> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((k, v)) = body.split_once('=') else {
                return Err(CliError::config(line, format!("expected 'key = value', got '{body}'")));
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(CliError::config(line, format!("unknown key '{k}'")));
            }
            if let Some(first) = seen.insert(k.to_string(), line) {
                return Err(CliError::config(line, format!("duplicate key '{k}' (first on line {first})")));
            }
            match k {
                "n" => cfg.n = value(line, k, v)?,
                "domain_length" => cfg.domain_length = value(line, k, v)?,
                "dt" => cfg.dt = value(line, k, v)?,
                "t_end" => cfg.t_end = value(line, k, v)?,
                "epsilon" => cfg.epsilon = value(line, k, v)?,
                "init_kind" => cfg.init_kind = value(line, k, v)?,
                "seed" => cfg.seed = value(line, k, v)?,
                "integrator_order" => cfg.integrator_order = value(line, k, v)?,
                "sample_every" => cfg.sample_every = value(line, k, v)?,
                "ratio_cap" => cfg.ratio_cap = value(line, k, v)?,
                "output_path" => cfg.output_path = v.to_string(),
                "mode_k1" => cfg.mode_k1 = value(line, k, v)?,
                "mode_k2" => cfg.mode_k2 = value(line, k, v)?,
                "blowup_threshold" => cfg.blowup_threshold = value(line, k, v)?,
                "linear_only" => cfg.linear_only = value(line, k, v)?,
                "a0_t_cut" => cfg.a0_t_cut = value(line, k, v)?,
                "a0_quad_dt" => cfg.a0_quad_dt = value(line, k, v)?,
                "sweep_epsilons" => cfg.sweep_epsilons = float_list(line, v)?,
                "corpus_size" => cfg.corpus_size = value(line, k, v)?,
                "audit_samples" => cfg.audit_samples = value(line, k, v)?,
                _ => unreachable!("key list checked above"),
            }
        }
        cfg.validate_with(|k| seen.get(k).copied().unwrap_or(0))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with(|_| 0)
    }

    fn validate_with(&self, line_of: impl Fn(&str) -> usize) -> Result<()> {
        let fail = |k: &str, msg: &str| Err(CliError::config(line_of(k), format!("{k}: {msg}")));
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if self.n < 8 || self.n % 2 != 0 {
            return fail("n", "must be even and at least 8");
        }
        if !positive(self.domain_length) {
            return fail("domain_length", "must be positive");
        }
        if !positive(self.dt) {
            return fail("dt", "must be positive");
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return fail("t_end", "must be non-negative");
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return fail("epsilon", "must be non-negative");
        }
        if self.integrator_order != 2 && self.integrator_order != 4 {
            return fail("integrator_order", "must be 2 or 4");
        }
        if self.sample_every == 0 {
            return fail("sample_every", "must be at least 1");
        }
        if !(self.ratio_cap > 0.0) {
            return fail("ratio_cap", "must be positive");
        }
        if self.output_path.is_empty() {
            return fail("output_path", "must not be empty");
        }
        let half = (self.n / 2) as i64;
        if self.mode_k1.abs() >= half || self.mode_k2.abs() >= half {
            return fail("mode_k1", "mode wavenumbers must lie below n/2");
        }
        if !positive(self.blowup_threshold) {
            return fail("blowup_threshold", "must be positive");
        }
        if !positive(self.a0_t_cut) || !positive(self.a0_quad_dt) {
            return fail("a0_t_cut", "a0_t_cut and a0_quad_dt must be positive");
        }
        if self.sweep_epsilons.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return fail("sweep_epsilons", "entries must be non-negative");
        }
        Ok(())
    }

    /// Canonical text form listing every key in a fixed order.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let eps: Vec<String> = self.sweep_epsilons.iter().map(|e| format!("{e:?}")).collect();
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "domain_length = {:?}", self.domain_length);
        let _ = writeln!(s, "dt = {:?}", self.dt);
        let _ = writeln!(s, "t_end = {:?}", self.t_end);
        let _ = writeln!(s, "epsilon = {:?}", self.epsilon);
        let _ = writeln!(s, "init_kind = {}", self.init_kind.name());
        let _ = writeln!(s, "seed = {}", self.seed);
        let _ = writeln!(s, "integrator_order = {}", self.integrator_order);
        let _ = writeln!(s, "sample_every = {}", self.sample_every);
        let _ = writeln!(s, "ratio_cap = {:?}", self.ratio_cap);
        let _ = writeln!(s, "output_path = {}", self.output_path);
        let _ = writeln!(s, "mode_k1 = {}", self.mode_k1);
        let _ = writeln!(s, "mode_k2 = {}", self.mode_k2);
        let _ = writeln!(s, "blowup_threshold = {:?}", self.blowup_threshold);
        let _ = writeln!(s, "linear_only = {}", self.linear_only);
        let _ = writeln!(s, "a0_t_cut = {:?}", self.a0_t_cut);
        let _ = writeln!(s, "a0_quad_dt = {:?}", self.a0_quad_dt);
        let _ = writeln!(s, "sweep_epsilons = {}", eps.join(", "));
        let _ = writeln!(s, "corpus_size = {}", self.corpus_size);
        let _ = writeln!(s, "audit_samples = {}", self.audit_samples);
        s
    }
}
