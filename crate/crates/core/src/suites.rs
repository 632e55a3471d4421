//! Named verification suites over explicit or seeded random parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::hahn::{self, HahnCase};
use crate::jacobi::{self, build_l, JacobiFamily, JacobiParams};
use crate::par::Execution;
use crate::qalg::casimir::{self, casimir_check};
use crate::qalg::su11::{self, C31Reading, Su11Params};
use crate::qalg::{self, presets};
use crate::report::{Check, Report};
use crate::sampling::{jacobi_poles_clear, Sampler};
use crate::tridiag::koornwinder::{self, Koornwinder, DEFAULT_TERM_BUDGET};
use crate::tridiag::{self, finite, transform, NuParams, TridiagParams};
use crate::wilson::{self, Dictionary, WilsonParams};

/// Flags accepted as explicit rational parameters.
pub const PARAMETER_NAMES: [&str; 15] =
    ["alpha", "beta", "tau0", "tau2", "tau3", "nu1", "nu2", "q", "a1", "a2", "a3", "a4", "sigma1", "sigma2", "sigma3"];

pub const DEFAULT_TOLERANCE: (i64, i64) = (1, 1_000_000);

const FIXED_ATTEMPTS: usize = 32;
const SAMPLED_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    JacobiFamily,
    JacobiAlgebra,
    Tridiag,
    Duality,
    Transform,
    FiniteReduction,
    WilsonIdentification,
    Koornwinder,
    RacahWilson,
    Su11Model,
    Hahn,
    All,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::JacobiFamily,
        Suite::JacobiAlgebra,
        Suite::Tridiag,
        Suite::Duality,
        Suite::Transform,
        Suite::FiniteReduction,
        Suite::WilsonIdentification,
        Suite::Koornwinder,
        Suite::RacahWilson,
        Suite::Su11Model,
        Suite::Hahn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::JacobiFamily => "jacobi-family",
            Suite::JacobiAlgebra => "jacobi-algebra",
            Suite::Tridiag => "tridiag",
            Suite::Duality => "duality",
            Suite::Transform => "transform",
            Suite::FiniteReduction => "finite-reduction",
            Suite::WilsonIdentification => "wilson-identification",
            Suite::Koornwinder => "koornwinder",
            Suite::RacahWilson => "racah-wilson",
            Suite::Su11Model => "su11-model",
            Suite::Hahn => "hahn",
            Suite::All => "all",
        }
    }

    /// Whether `--tolerance` means anything for this suite.
    pub fn uses_tolerance(self) -> bool {
        matches!(self, Suite::Koornwinder | Suite::All)
    }

    fn default_nmax(self) -> usize {
        match self {
            Suite::Transform => 8,
            Suite::WilsonIdentification => 10,
            Suite::Koornwinder => 4,
            _ => 12,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: Suite,
    /// Explicit values keyed by flag name without dashes; these replace sampled ones.
    pub params: BTreeMap<String, Rational>,
    pub nmax: Option<usize>,
    pub n: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: Option<Rational>,
    pub term_budget: usize,
    pub execution: Execution,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            params: BTreeMap::new(),
            nmax: None,
            n: None,
            trials: 10,
            seed: 0,
            tolerance: None,
            term_budget: DEFAULT_TERM_BUDGET,
            execution: Execution::default(),
        }
    }

    pub fn with_param(mut self, name: &str, value: Rational) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn with_trials(mut self, trials: usize, seed: u64) -> Self {
        self.trials = trials;
        self.seed = seed;
        self
    }

    fn nmax_for(&self, suite: Suite) -> usize {
        self.nmax.unwrap_or_else(|| suite.default_nmax())
    }

    fn tolerance(&self) -> Rational {
        self.tolerance.clone().unwrap_or_else(|| Rational::new(DEFAULT_TOLERANCE.0, DEFAULT_TOLERANCE.1))
    }
}

/// Parameter source for one trial: explicit values first, the trial's sampler otherwise.
pub struct Draw<'a> {
    sampler: Sampler,
    fixed: &'a BTreeMap<String, Rational>,
    n: Option<usize>,
    used: BTreeMap<String, String>,
    fixed_used: Vec<String>,
    sampled: bool,
}

impl<'a> Draw<'a> {
    fn new(cfg: &'a SuiteConfig, trial: usize) -> Self {
        Draw {
            sampler: Sampler::for_trial(cfg.seed, trial),
            fixed: &cfg.params,
            n: cfg.n,
            used: BTreeMap::new(),
            fixed_used: Vec::new(),
            sampled: false,
        }
    }

    fn value(&mut self, key: &str, sample: impl FnOnce(&mut Sampler) -> Rational) -> Rational {
        let v = match self.fixed.get(key) {
            Some(v) => {
                if !self.fixed_used.iter().any(|k| k == key) {
                    self.fixed_used.push(key.to_string());
                }
                v.clone()
            }
            None => {
                self.sampled = true;
                sample(&mut self.sampler)
            }
        };
        self.used.insert(key.to_string(), v.to_string());
        v
    }

    fn generic(&mut self, key: &str) -> Rational {
        self.value(key, Sampler::generic)
    }

    fn in_range(&mut self, key: &str, lo: i64, hi: i64) -> Rational {
        self.value(key, |s| s.rational_in(lo, hi))
    }

    fn has(&self, key: &str) -> bool {
        self.fixed.contains_key(key)
    }

    /// `N`, from `--N` or uniform on `lo ..= hi`.
    fn big_n(&mut self, lo: usize, hi: usize) -> usize {
        let n = match self.n {
            Some(n) => {
                if !self.fixed_used.iter().any(|k| k == "N") {
                    self.fixed_used.push("N".into());
                }
                n
            }
            None => {
                self.sampled = true;
                self.sampler.integer_in(lo, hi)
            }
        };
        self.used.insert("N".into(), n.to_string());
        n
    }

    fn jacobi(&mut self, nmax: usize) -> Result<JacobiParams> {
        let p = JacobiParams::new(self.in_range("alpha", -1, 5), self.in_range("beta", -1, 5));
        jacobi_poles_clear(&p, nmax)?;
        Ok(p)
    }

    fn tridiag(&mut self) -> TridiagParams {
        TridiagParams::new(self.generic("tau0"), self.generic("tau2"), self.generic("tau3"))
    }

    fn nu(&mut self) -> NuParams {
        NuParams::new(self.generic("nu1"), self.generic("nu2"))
    }
}

struct TrialOutcome {
    checks: Vec<Check>,
    params: BTreeMap<String, String>,
    sampled: bool,
}

/// Draws until `run` produces no degenerate check, then tags its checks with the trial.
fn one_trial<F>(cfg: &SuiteConfig, trial: usize, run: &F) -> Result<TrialOutcome>
where
    F: Fn(&mut Draw<'_>) -> Result<Vec<Check>>,
{
    let mut draw = Draw::new(cfg, trial);
    let mut attempts = 0;
    loop {
        attempts += 1;
        draw.used.clear();
        draw.fixed_used.clear();
        draw.sampled = false;
        let failure = match run(&mut draw) {
            Ok(checks) => match checks.iter().find(|c| c.degenerate) {
                None => {
                    return Ok(TrialOutcome {
                        checks: checks.into_iter().map(|c| c.with_trial(trial)).collect(),
                        params: draw.used,
                        sampled: draw.sampled,
                    })
                }
                Some(c) => format!("{}: {}", c.name, c.detail),
            },
            Err(e) => e.to_string(),
        };
        let limit = match (draw.sampled, draw.fixed_used.is_empty()) {
            (false, _) => 1,
            (true, true) => SAMPLED_ATTEMPTS,
            (true, false) => FIXED_ATTEMPTS,
        };
        if attempts >= limit {
            let flags: Vec<String> = draw.fixed_used.iter().map(|k| format!("--{k}")).collect();
            return Err(if flags.is_empty() {
                Error::InvalidArgument(format!("no admissible parameters after {attempts} draws: {failure}"))
            } else {
                Error::InvalidArgument(format!("explicit parameters {} are not admissible: {failure}", flags.join(", ")))
            });
        }
    }
}

/// Runs trial 0, then the remaining trials only if trial 0 sampled anything.
fn trials<F>(cfg: &SuiteConfig, suite: Suite, run: F) -> Result<(Vec<Check>, BTreeMap<String, String>)>
where
    F: Fn(&mut Draw<'_>) -> Result<Vec<Check>> + Sync + Send,
{
    let first = one_trial(cfg, 0, &run)?;
    let count = if first.sampled { cfg.trials.max(1) } else { 1 };
    let rest = cfg.execution.map(count - 1, |i| one_trial(cfg, i + 1, &run));
    let mut checks = Vec::new();
    let mut params = BTreeMap::new();
    for (t, outcome) in std::iter::once(Ok(first)).chain(rest).enumerate() {
        let outcome = outcome?;
        checks.extend(outcome.checks);
        let shown: Vec<String> = outcome.params.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        params.insert(format!("{}.trial[{t:04}]", suite.name()), shown.join(", "));
    }
    Ok((checks, params))
}

fn jacobi_family(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    let nmax = cfg.nmax_for(Suite::JacobiFamily);
    trials(cfg, Suite::JacobiFamily, |d| {
        let jp = d.jacobi(nmax)?;
        let family = JacobiFamily::new(jp.clone(), nmax)?;
        let mut checks = jacobi::verify_eigen(&family);
        checks.extend(jacobi::verify_monomial_action(&jp, nmax));
        checks.push(jacobi::verify_orthogonality(&family, nmax.min(8)));
        checks.push(jacobi::verify_closed_form(&family, nmax.min(10)));
        Ok(checks)
    })
}

fn jacobi_algebra(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    trials(cfg, Suite::JacobiAlgebra, |d| {
        let jp = d.jacobi(2)?;
        let (l, x) = (build_l(&jp), DiffOp::x());
        let pres = presets::jacobi();
        let values = presets::jacobi_constants(&jp);
        let mut checks = qalg::verify_relations(&l, &x, &pres, &values);
        checks.push(qalg::verify_fit(&l, &x, &pres, &values));
        let value = casimir::jacobi_casimir_value(&jp);
        checks.extend(casimir_check(&l, &x, &casimir::jacobi_casimir(), &values, &value, None));
        Ok(checks)
    })
}

fn tridiag_suite(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    let nmax = cfg.nmax_for(Suite::Tridiag);
    trials(cfg, Suite::Tridiag, |d| {
        let jp = d.jacobi(nmax + 1)?;
        let tp = d.tridiag();
        let rho = TridiagParams::new(d.generic("rho0"), d.generic("rho2"), d.generic("rho3"));
        let family = JacobiFamily::new(jp.clone(), nmax + 1)?;
        let m = tridiag::build_m(&jp, &tp);
        let j = tridiag::build_j(&jp, &rho);
        let mut checks = vec![tridiag::verify_build_m(&jp, &tp)];
        checks.extend(tridiag::verify_tridiagonal_action(&m, &family, &tp, &Rational::zero(), nmax));
        checks.extend(tridiag::verify_monomial_action(&m, &jp, &tp, nmax));
        checks.extend(tridiag::verify_tridiagonal_action(&j, &family, &rho, &Rational::one(), nmax));
        checks.push(tridiag::verify_j_reflection(&jp, &rho));
        Ok(checks)
    })
}

fn duality(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    trials(cfg, Suite::Duality, |d| {
        let jp = d.jacobi(2)?;
        let tp = d.tridiag();
        Ok(vec![tridiag::verify_duality(&jp, &tp)])
    })
}

fn transform_suite(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    let nmax = cfg.nmax_for(Suite::Transform);
    trials(cfg, Suite::Transform, |d| {
        let jp = d.jacobi(nmax)?;
        let np = d.nu();
        let tau0 = d.generic("tau0");
        let mut checks = transform::verify_transform(&jp, &np, &tau0);
        checks.extend(transform::verify_dual_eigenfunctions(&jp, &np, &tau0, nmax));
        Ok(checks)
    })
}

fn finite_reduction(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    trials(cfg, Suite::FiniteReduction, |d| {
        let n = d.big_n(0, 8);
        let jp = d.jacobi(n + 1)?;
        let nu1 = d.generic("nu1");
        let tau0 = d.generic("tau0");
        let mut checks = finite::verify_finite_reduction(&jp, &nu1, &tau0, n);
        checks.push(finite::verify_l_on_psi(&jp, &nu1, n));
        // both directions of the equivalence: on the locus and at a generic point
        let on = finite::finite_nu(&nu1, n).to_tridiag(&jp, &tau0);
        let off = NuParams::new(nu1.clone(), d.generic("nu2")).to_tridiag(&jp, &tau0);
        for (tag, tp) in [("on", on), ("off", off)] {
            let mut c = tridiag::verify_degree_preservation(&jp, &tp, n);
            c.name = format!("{}[{tag}]", c.name);
            checks.push(c);
        }
        Ok(checks)
    })
}

fn wilson_identification(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    let nmax = cfg.nmax_for(Suite::WilsonIdentification);
    let by_wilson = ["a1", "a2", "a3", "a4"].iter().filter(|k| cfg.params.contains_key(**k)).count();
    if by_wilson != 0 && by_wilson != 4 {
        return Err(Error::InvalidArgument("--a1 .. --a4 must be given together".into()));
    }
    trials(cfg, Suite::WilsonIdentification, |d| {
        let tau0 = d.generic("tau0");
        let mut checks = Vec::new();
        let (jp, np) = if by_wilson == 4 {
            let w = WilsonParams::new(d.generic("a1"), d.generic("a2"), d.generic("a3"), d.generic("a4"));
            Dictionary::inverse(&w)
        } else if d.has("tau2") && d.has("tau3") && !(d.has("nu1") || d.has("nu2")) {
            let jp = d.jacobi(nmax)?;
            let tp = TridiagParams::new(tau0.clone(), d.generic("tau2"), d.generic("tau3"));
            checks.extend(wilson::identify_tridiag(&jp, &tp, nmax));
            checks.extend(wilson::verify_positivity(&jp, &tp, nmax));
            return Ok(checks);
        } else {
            (d.jacobi(nmax)?, d.nu())
        };
        jacobi_poles_clear(&jp, nmax)?;
        let tp = np.to_tridiag(&jp, &tau0);
        checks.extend(wilson::identify(&jp, &np, &tau0, nmax));
        checks.extend(wilson::verify_positivity(&jp, &tp, nmax));
        checks.push(wilson::verify_symmetry(&Dictionary::forward(&jp, &np, &tau0).wilson, nmax.min(8)));
        Ok(checks)
    })
}

fn koornwinder_suite(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    let kmax = cfg.nmax_for(Suite::Koornwinder);
    let tol = cfg.tolerance();
    trials(cfg, Suite::Koornwinder, |d| {
        // beta >= 1 and q >= 1 keep every integral absolutely convergent
        let jp = JacobiParams::new(d.in_range("alpha", -1, 3), d.value("beta", |s| s.rational_in(0, 2) + 1));
        jacobi_poles_clear(&jp, kmax + 1)?;
        let np = d.nu();
        let tau0 = d.generic("tau0");
        let q = d.value("q", |s| s.rational_in(0, 2) + 1);
        let k = Koornwinder::new(&jp, &np, &tau0, &q);
        let mut checks = koornwinder::verify_eigenfunction(&k, 48);
        checks.extend(koornwinder::verify_coefficient_ratio(&k, kmax, &tol, cfg.term_budget));
        // a terminating companion with b1 = -m carries the boundary relation
        let m = d.sampler.integer_in(0, 3);
        let nu2 = Rational::one() - &jp.beta + &q + Rational::from(m);
        let terminating = Koornwinder::new(&jp, &NuParams::new(np.nu1.clone(), nu2), &tau0, &q);
        checks.extend(koornwinder::verify_boundary_relation(&terminating, kmax));
        checks.extend(koornwinder::verify_vanishing_locus(&jp, &np.nu1, &tau0, &q, m, kmax));
        Ok(checks)
    })
}

fn racah_wilson(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    trials(cfg, Suite::RacahWilson, |d| {
        let jp = d.jacobi(2)?;
        let tp = d.tridiag();
        let (l, m) = (build_l(&jp), tridiag::build_m(&jp, &tp));
        let pres = presets::racah_wilson();
        let values = presets::racah_wilson_constants(&jp, &tp);
        let mut checks = qalg::verify_relations(&l, &m, &pres, &values);
        checks.push(qalg::verify_fit(&l, &m, &pres, &values));
        let value = casimir::racah_wilson_casimir_value(&jp, &tp);
        checks.extend(casimir_check(&l, &m, &casimir::racah_wilson_casimir(), &values, &value, None));
        Ok(checks)
    })
}

fn su11_model(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    trials(cfg, Suite::Su11Model, |d| {
        let n = d.big_n(1, 5);
        let p = Su11Params { sigma1: d.generic("sigma1"), sigma2: d.generic("sigma2"), sigma3: d.generic("sigma3"), n };
        let mut checks = su11::verify_racah_model(&p, C31Reading::Sigma1);
        checks.push(su11::probe_readings(&p));
        checks.push(su11::sum_shape(&p, C31Reading::Sigma1));
        checks.extend(su11::match_model_to_lmj(&p, C31Reading::Sigma1));
        Ok(checks)
    })
}

fn hahn_suite(cfg: &SuiteConfig) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    trials(cfg, Suite::Hahn, |d| {
        let n = d.big_n(0, 6);
        let jp = d.jacobi(n + 2)?;
        let hc = HahnCase::new(jp, d.generic("tau0"), n);
        let mut checks = hahn::verify_eigenbasis(&hc);
        checks.extend(hahn::verify_cross_actions(&hc));
        checks.extend(hahn::verify_recurrence(&hc));
        checks.extend(hahn::verify_algebra(&hc));
        checks.push(hahn::verify_eigenvalue_map(&hc));
        Ok(checks)
    })
}

fn dispatch(cfg: &SuiteConfig, suite: Suite) -> Result<(Vec<Check>, BTreeMap<String, String>)> {
    match suite {
        Suite::JacobiFamily => jacobi_family(cfg),
        Suite::JacobiAlgebra => jacobi_algebra(cfg),
        Suite::Tridiag => tridiag_suite(cfg),
        Suite::Duality => duality(cfg),
        Suite::Transform => transform_suite(cfg),
        Suite::FiniteReduction => finite_reduction(cfg),
        Suite::WilsonIdentification => wilson_identification(cfg),
        Suite::Koornwinder => koornwinder_suite(cfg),
        Suite::RacahWilson => racah_wilson(cfg),
        Suite::Su11Model => su11_model(cfg),
        Suite::Hahn => hahn_suite(cfg),
        Suite::All => {
            let mut checks = Vec::new();
            let mut params = BTreeMap::new();
            for s in Suite::EACH {
                let (c, p) = dispatch(cfg, s)?;
                checks.extend(c);
                params.extend(p);
            }
            Ok((checks, params))
        }
    }
}

/// Runs one suite (or all of them) and assembles the report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report> {
    if cfg.tolerance.is_some() && !cfg.suite.uses_tolerance() {
        return Err(Error::InvalidArgument(format!("--tolerance does not apply to suite {}", cfg.suite)));
    }
    if let Some(tol) = &cfg.tolerance {
        if !tol.is_positive() {
            return Err(Error::InvalidArgument("--tolerance must be positive".into()));
        }
    }
    if let Some(bad) = cfg.params.keys().find(|k| !PARAMETER_NAMES.contains(&k.as_str())) {
        return Err(Error::InvalidArgument(format!("unknown parameter --{bad}")));
    }
    let start = Instant::now();
    let (checks, mut params) = dispatch(cfg, cfg.suite)?;
    params.insert("seed".into(), cfg.seed.to_string());
    params.insert("trials".into(), cfg.trials.to_string());
    if let Some(n) = cfg.nmax {
        params.insert("nmax".into(), n.to_string());
    }
    if cfg.suite.uses_tolerance() {
        params.insert("tolerance".into(), cfg.tolerance().to_string());
    }
    Ok(Report::new(cfg.suite.name(), params, checks, start.elapsed().as_millis()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::report::Status;

    #[test]
    fn names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("jacobi".parse::<Suite>().is_err());
    }

    #[test]
    fn hahn_example_run() {
        let mut cfg = SuiteConfig::new(Suite::Hahn)
            .with_param("alpha", Rational::zero())
            .with_param("beta", Rational::zero())
            .with_param("tau0", Rational::zero());
        cfg.n = Some(1);
        let r = run_suite(&cfg).unwrap();
        assert!(r.passed(), "{:#?}", r.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
        let eig: Vec<&str> = r.checks.iter().filter(|c| c.name.starts_with("hahn.eigenfunction")).map(|c| c.detail.as_str()).collect();
        assert_eq!(eig, vec!["eigenvalue -1", "eigenvalue -3"]);
        // fully explicit: one trial regardless of --trials
        assert!(r.checks.iter().all(|c| c.trial == Some(0)));
    }

    #[test]
    fn explicit_pole_names_the_flag() {
        // alpha + beta = -2 is a pole of b_0
        let cfg = SuiteConfig::new(Suite::JacobiFamily).with_param("alpha", q(-3, 2)).with_param("beta", q(-1, 2));
        let err = run_suite(&cfg).unwrap_err().to_string();
        assert!(err.contains("--alpha") && err.contains("--beta"), "{err}");
    }

    #[test]
    fn tolerance_only_where_it_applies() {
        let mut cfg = SuiteConfig::new(Suite::Duality);
        cfg.tolerance = Some(q(1, 100));
        assert!(run_suite(&cfg).is_err());
        let cfg = SuiteConfig::new(Suite::Duality).with_param("gamma", Rational::one());
        assert!(run_suite(&cfg).is_err());
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let cfg = SuiteConfig::new(Suite::RacahWilson).with_trials(4, 11);
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&SuiteConfig { execution: Execution::Sequential, ..cfg }).unwrap();
        assert!(a.passed());
        assert_eq!(a.checks, b.checks);
        assert_eq!(a.parameters, b.parameters);
        assert!(a.parameters.contains_key("racah-wilson.trial[0003]"));
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::JacobiAlgebra, Suite::Duality, Suite::Su11Model, Suite::FiniteReduction] {
            let r = run_suite(&SuiteConfig::new(s).with_trials(3, 5)).unwrap();
            let bad: Vec<_> = r.checks.iter().filter(|c| c.status == Status::Fail).collect();
            assert!(bad.is_empty(), "{s}: {bad:#?}");
        }
    }
}
