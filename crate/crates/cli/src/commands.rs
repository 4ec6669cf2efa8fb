//! Command implementations. Each returns its rendered output; the binary
//! only decides where it goes.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use lab2w::mpbessel::{
    gen_bessel_bounded, interference_j_bounded, two_wave_i_bounded, GenBessel, Tolerance, TwoWaveArgs, TwoWaveEvaluator,
};
use lab2w::mpparams::{classify_regime, FieldRegime, KinematicClass, MomentumChoice, MultiphotonParams, RegimeReport};
use lab2w::xsection::{baseline_dcs, spectrum_limited, BaselineKind, Spectrum, SpectrumMode};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::scenario::{ModeSpec, Physics, Scenario};

/// Tolerance at which sum rules and identities are checked.
pub const SUMCHECK_TOL: f64 = 1e-8;

/// Orders checked by the equal-frequency addition theorem.
pub const ADDITION_ORDERS: RangeInclusive<i64> = -5..=5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Fixed scientific notation with 15 significant digits; zero is unsigned.
pub fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("records serialize");
    s.push('\n');
    s
}

fn tolerance(s: &Scenario, tol: Option<f64>) -> CliResult<Tolerance> {
    Ok(Tolerance::new(tol.unwrap_or(s.options.tol), Tolerance::default().max_terms)?)
}

pub fn cmd_regime(s: &Scenario, format: Format) -> CliResult<String> {
    let ph = s.physics()?;
    let r = classify_regime(&ph.kin, &ph.waves, 1.0)?;
    Ok(match format {
        Format::Json => json(&r),
        Format::Csv => render_regime(&r),
    })
}

fn render_regime(r: &RegimeReport) -> String {
    let name = |v: &dyn erased::Named| v.name();
    let mut out = String::new();
    let _ = writeln!(out, "kinematic,{}", name(&r.kinematic));
    let _ = writeln!(out, "field_regime,{}", name(&r.field_regime));
    let _ = writeln!(out, "frequency_status,{}", name(&r.frequency_status));
    let _ = writeln!(out, "# basis kinematic: {}", r.basis.kinematic.join("; "));
    let _ = writeln!(out, "# basis field_regime: {}", r.basis.field_regime.join("; "));
    let _ = writeln!(out, "# basis frequency_status: {}", r.basis.frequency_status.join("; "));
    let _ = writeln!(out, "parameter,quasi,bare");
    let (q, b) = (&r.params_quasi, &r.params_bare);
    for (label, x, y) in [
        ("gamma1", q.gamma1, b.gamma1),
        ("gamma2", q.gamma2, b.gamma2),
        ("beta1", q.beta1, b.beta1),
        ("beta2", q.beta2, b.beta2),
        ("alpha_plus", q.alpha_plus, b.alpha_plus),
        ("alpha_minus", q.alpha_minus, b.alpha_minus),
        ("xi1", q.xi1, b.xi1),
        ("xi2", q.xi2, b.xi2),
        ("zeta_i", q.zeta_i, b.zeta_i),
        ("zeta_f", q.zeta_f, b.zeta_f),
    ] {
        let _ = writeln!(out, "{label},{},{}", num(x), num(y));
    }
    let _ = writeln!(out, "inequality,left,relation,right,satisfied");
    for d in &r.diagnostics {
        let rel = serde_json::to_value(d.relation).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(out, "{},{},{rel},{},{}", d.label, num(d.left), num(d.right), d.satisfied);
    }
    out
}

/// Snake-case names of the report enums, as in the JSON record.
mod erased {
    pub trait Named {
        fn name(&self) -> String;
    }

    impl<T: serde::Serialize> Named for T {
        fn name(&self) -> String {
            serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    /// Overrides the scenario's mode when set.
    pub mode: Option<ModeSpec>,
    pub tail_tol: Option<f64>,
    pub tol: Option<f64>,
    pub baseline: BaselineKind,
    /// Debug aid: stop enumerating at this shell radius.
    pub max_radius: Option<i64>,
    pub format: Format,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        Self {
            mode: None,
            tail_tol: None,
            tol: None,
            baseline: BaselineKind::Unit,
            max_radius: None,
            format: Format::Csv,
        }
    }
}

/// Spectrum mode for a scenario: an explicit choice wins, otherwise the
/// kinematic range and field regime decide.
pub fn resolve_mode(spec: ModeSpec, ph: &Physics) -> CliResult<SpectrumMode> {
    Ok(match spec {
        ModeSpec::Noninterference => SpectrumMode::Noninterference,
        ModeSpec::Factorized => SpectrumMode::Factorized,
        ModeSpec::Interference => SpectrumMode::Interference,
        ModeSpec::SingleWaveEven => SpectrumMode::SingleWaveEven,
        ModeSpec::Auto => {
            let r = classify_regime(&ph.kin, &ph.waves, 1.0)?;
            if r.kinematic == KinematicClass::Interference {
                SpectrumMode::Interference
            } else if r.field_regime == FieldRegime::DipoleLike {
                SpectrumMode::Factorized
            } else {
                SpectrumMode::Noninterference
            }
        }
    })
}

/// Weights are built from free-electron momenta.
pub fn spectrum_params(ph: &Physics) -> CliResult<MultiphotonParams> {
    Ok(MultiphotonParams::from_kinematics(&ph.kin, &ph.waves, MomentumChoice::Bare)?)
}

/// Parameters as consumed by a given mode.
fn mode_params(mode: SpectrumMode, p: MultiphotonParams) -> MultiphotonParams {
    match mode {
        SpectrumMode::Interference | SpectrumMode::SingleWaveEven => {
            MultiphotonParams { gamma1: 0.0, gamma2: 0.0, ..p }
        }
        _ => p,
    }
}

pub fn run_spectrum(s: &Scenario, opts: &SpectrumOptions) -> CliResult<(Spectrum, Physics)> {
    let ph = s.physics()?;
    let mode = resolve_mode(opts.mode.unwrap_or(s.options.mode), &ph)?;
    let params = mode_params(mode, spectrum_params(&ph)?);
    let tail_tol = opts.tail_tol.unwrap_or(s.options.tail_tol);
    let sp = spectrum_limited(mode, &params, tail_tol, &tolerance(s, opts.tol)?, opts.max_radius)?;
    Ok((sp, ph))
}

#[derive(Serialize)]
struct SpectrumRecord<'a> {
    mode: SpectrumMode,
    params: &'a MultiphotonParams,
    radius: i64,
    truncated: bool,
    tail_bound: f64,
    sum: f64,
    baseline_dcs: Option<f64>,
    entries: Vec<EntryRecord>,
}

#[derive(Serialize)]
struct EntryRecord {
    idx1: i64,
    idx2: i64,
    weight: f64,
    cumulative: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    dcs: Option<f64>,
}

pub fn cmd_spectrum(s: &Scenario, opts: &SpectrumOptions) -> CliResult<String> {
    let (sp, ph) = run_spectrum(s, opts)?;
    let dcs = match opts.baseline {
        BaselineKind::Unit => None,
        kind => Some(baseline_dcs(kind, &ph.kin, ph.z)?),
    };
    let mode_name = serde_json::to_value(sp.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    Ok(match opts.format {
        Format::Json => json(&SpectrumRecord {
            mode: sp.mode,
            params: &sp.params,
            radius: sp.radius,
            truncated: sp.truncated,
            tail_bound: sp.tail_bound,
            sum: sp.sum(),
            baseline_dcs: dcs,
            entries: sp
                .entries
                .iter()
                .map(|e| EntryRecord {
                    idx1: e.idx1,
                    idx2: e.idx2,
                    weight: e.weight,
                    cumulative: e.cumulative,
                    dcs: dcs.map(|d| d * e.weight),
                })
                .collect(),
        }),
        Format::Csv => {
            let mut out = String::with_capacity(64 * sp.entries.len() + 256);
            out.push_str(if dcs.is_some() {
                "idx1,idx2,weight,cumulative,dcs\n"
            } else {
                "idx1,idx2,weight,cumulative\n"
            });
            for e in &sp.entries {
                let _ = write!(out, "{},{},{},{}", e.idx1, e.idx2, num(e.weight), num(e.cumulative));
                if let Some(d) = dcs {
                    let _ = write!(out, ",{}", num(d * e.weight));
                }
                out.push('\n');
            }
            let _ = writeln!(out, "# mode = {mode_name}");
            let _ = writeln!(out, "# radius = {}", sp.radius);
            let _ = writeln!(out, "# truncated = {}", sp.truncated);
            let _ = writeln!(out, "# tail_bound = {}", num(sp.tail_bound));
            let _ = writeln!(out, "# sum = {}", num(sp.sum()));
            if let Some(d) = dcs {
                let _ = writeln!(out, "# baseline_dcs = {}", num(d));
            }
            out
        }
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumRuleCheck {
    pub mode: SpectrumMode,
    pub sum: f64,
    pub tail_bound: f64,
    pub deficit: f64,
    pub radius: i64,
    pub truncated: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdditionCheck {
    pub n: i64,
    /// `Σ_s I_{n−s, s}`.
    pub summed: f64,
    /// `J_n(γ1 + γ2, β1 + β2 + α+)`.
    pub combined: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumcheckReport {
    pub sum_rules: Vec<SumRuleCheck>,
    /// Present when both waves share a frequency.
    pub addition_theorem: Option<Vec<AdditionCheck>>,
    pub passed: bool,
}

impl SumcheckReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut out = String::from("check,mode_or_order,value,reference,deficit,result\n");
                let verdict = |ok: bool| if ok { "pass" } else { "fail" };
                for c in &self.sum_rules {
                    let mode = serde_json::to_value(c.mode)
                        .ok()
                        .and_then(|v| v.as_str().map(String::from))
                        .unwrap_or_default();
                    let _ = writeln!(
                        out,
                        "sum_rule,{mode},{},{},{},{}",
                        num(c.sum),
                        num(1.0),
                        num(c.deficit),
                        verdict(c.passed)
                    );
                }
                for a in self.addition_theorem.iter().flatten() {
                    let _ = writeln!(
                        out,
                        "addition_theorem,{},{},{},{},{}",
                        a.n,
                        num(a.summed),
                        num(a.combined),
                        num(a.combined - a.summed),
                        verdict(a.passed)
                    );
                }
                let _ = writeln!(out, "# overall = {}", verdict(self.passed));
                out
            }
        }
    }

    /// The report as an error when any check failed.
    pub fn into_result(self) -> CliResult<Self> {
        if self.passed {
            return Ok(self);
        }
        let worst = self.sum_rules.iter().filter(|c| !c.passed).map(|c| c.deficit.abs()).fold(0.0, f64::max);
        Err(CliError::SumRule(format!("largest sum-rule deficit {worst:e}")))
    }
}

/// Sum rules of every spectrum family for the scenario's parameters, and
/// the addition theorem when the two frequencies coincide.
pub fn cmd_sumcheck(s: &Scenario, tol: Option<f64>, max_radius: Option<i64>) -> CliResult<SumcheckReport> {
    let ph = s.physics()?;
    let tol = tolerance(s, tol)?;
    let params = spectrum_params(&ph)?;
    let mut sum_rules = Vec::new();
    for mode in [SpectrumMode::Noninterference, SpectrumMode::Factorized, SpectrumMode::Interference] {
        let sp = spectrum_limited(mode, &mode_params(mode, params), SUMCHECK_TOL, &tol, max_radius)?;
        let deficit = 1.0 - sp.sum();
        sum_rules.push(SumRuleCheck {
            mode,
            sum: sp.sum(),
            tail_bound: sp.tail_bound,
            deficit,
            radius: sp.radius,
            truncated: sp.truncated,
            passed: !sp.truncated && deficit.abs() <= SUMCHECK_TOL,
        });
    }
    let addition_theorem = if ph.waves[0].omega == ph.waves[1].omega {
        Some(addition_theorem(&params.two_wave_args(), &tol)?)
    } else {
        None
    };
    let passed = sum_rules.iter().all(|c| c.passed) && addition_theorem.iter().flatten().all(|a| a.passed);
    Ok(SumcheckReport { sum_rules, addition_theorem, passed })
}

/// `Σ_s I_{n−s, s}(args) = J_n(γ1 + γ2, β1 + β2 + α+)` for the orders in
/// [`ADDITION_ORDERS`].
pub fn addition_theorem(args: &TwoWaveArgs, tol: &Tolerance) -> CliResult<Vec<AdditionCheck>> {
    let ev = TwoWaveEvaluator::new(*args, tol)?;
    let combined = GenBessel::new(args.gamma1 + args.gamma2, args.beta1 + args.beta2 + args.alpha_plus, tol)?;
    let reach = ev.support().1;
    Ok(ADDITION_ORDERS
        .map(|n| {
            let summed: f64 = (-reach..=reach).map(|s| ev.eval(n - s, s)).sum();
            let c = combined.value(n);
            AdditionCheck { n, summed, combined: c, passed: (summed - c).abs() <= SUMCHECK_TOL }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FnKind {
    /// `J_r(γ, β)`; arguments `γ,β`.
    GenBessel,
    /// `I_rr'`; arguments `γ1,β1,γ2,β2,α+,α−`.
    TwoWaveI,
    /// `J_{r1 r2}`; arguments `β1,β2,α+,α−`.
    InterferenceJ,
}

impl FnKind {
    pub fn arity(self) -> usize {
        match self {
            Self::GenBessel => 2,
            Self::TwoWaveI => 6,
            Self::InterferenceJ => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FnRow {
    pub r: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rp: Option<i64>,
    pub value: Option<f64>,
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Parses an inclusive index range `a:b` or a single index `a`.
pub fn parse_range(text: &str) -> CliResult<RangeInclusive<i64>> {
    let bad = || CliError::Usage(format!("index range '{text}' is not of the form a:b"));
    let (a, b) = match text.split_once(':') {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let a = text.trim().parse().map_err(|_| bad())?;
            (a, a)
        }
    };
    if a > b {
        return Err(CliError::Usage(format!("index range '{text}' is empty")));
    }
    Ok(a..=b)
}

pub fn cmd_fntable(
    kind: FnKind,
    r: RangeInclusive<i64>,
    rp: RangeInclusive<i64>,
    args: &[f64],
    tol: &Tolerance,
    format: Format,
) -> CliResult<String> {
    if args.len() != kind.arity() {
        return Err(CliError::Usage(format!("{kind:?} takes {} arguments, got {}", kind.arity(), args.len())));
    }
    let two_index = kind != FnKind::GenBessel;
    let rps: Vec<i64> = if two_index { rp.collect() } else { vec![0] };
    let mut rows = Vec::new();
    for i in r {
        for &j in &rps {
            let res = match kind {
                FnKind::GenBessel => gen_bessel_bounded(i, args[0], args[1], tol),
                FnKind::TwoWaveI => two_wave_i_bounded(
                    i,
                    j,
                    TwoWaveArgs::new(args[0], args[1], args[2], args[3], args[4], args[5]),
                    tol,
                ),
                FnKind::InterferenceJ => interference_j_bounded(i, j, args[0], args[1], args[2], args[3], tol),
            };
            let rp = two_index.then_some(j);
            rows.push(match res {
                Ok(b) => FnRow { r: i, rp, value: Some(b.value), bound: Some(b.bound), error: None },
                Err(e) => FnRow { r: i, rp, value: None, bound: None, error: Some(e.to_string()) },
            });
        }
    }
    Ok(match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut out = String::from(if two_index { "r,rp,value,bound,error\n" } else { "r,value,bound,error\n" });
            for row in &rows {
                let _ = write!(out, "{},", row.r);
                if let Some(j) = row.rp {
                    let _ = write!(out, "{j},");
                }
                let opt = |v: Option<f64>| v.map(num).unwrap_or_default();
                let err = row.error.as_deref().unwrap_or("").replace(',', ";");
                let _ = writeln!(out, "{},{},{err}", opt(row.value), opt(row.bound));
            }
            out
        }
    })
}
