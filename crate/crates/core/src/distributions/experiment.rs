//! Seeded Monte Carlo (or exhaustive) estimation of factorization and
//! Galois statistics of random reciprocal polynomials.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{all_prime, enumerate_support, MeasureSpec, Sampler};
use crate::error::{Error, Result};
use crate::hyperoct::{classify_galois_with, discriminant_via_trace, GaloisOptions};
use crate::intpoly::{discriminant, is_nonzero_square};
use crate::reciprocal::{classify_reducibility, RecPoly, Reducibility};

/// Quantities an experiment can estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    Irreducible,
    ReciprocalDivisor,
    Exceptional,
    DiscSquare,
    Galois,
}

/// Whether to enumerate the support exactly or sample it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Exhaustive when the support has at most `samples` points.
    #[default]
    Auto,
    Exhaustive,
    Sample,
}

fn default_statistics() -> Vec<Statistic> {
    vec![
        Statistic::Irreducible,
        Statistic::ReciprocalDivisor,
        Statistic::Exceptional,
        Statistic::DiscSquare,
    ]
}

fn default_divisor_kmax() -> usize {
    3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub measure: MeasureSpec,
    pub m_values: Vec<usize>,
    pub samples: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_statistics")]
    pub statistics: Vec<Statistic>,
    /// Frobenius primes for the Galois statistic; empty means the default
    /// primes not dividing the discriminant.
    #[serde(default)]
    pub primes: Vec<u64>,
    #[serde(default)]
    pub mode: Mode,
    /// Largest `k` in "has a reciprocal divisor of degree at most `2k`".
    #[serde(default = "default_divisor_kmax")]
    pub divisor_kmax: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m_values.is_empty() || self.m_values.contains(&0) {
            return Err(Error::Config(
                "m_values must be a nonempty list of positive integers".into(),
            ));
        }
        if self.samples == 0 && self.mode != Mode::Exhaustive {
            return Err(Error::Config("samples must be positive".into()));
        }
        if self.statistics.is_empty() {
            return Err(Error::Config("no statistics selected".into()));
        }
        if !all_prime(&self.primes) {
            return Err(Error::Config("primes must all be prime".into()));
        }
        let mus = self.measure.build()?;
        for &m in &self.m_values {
            mus.check_len(m)
                .map_err(|_| Error::Config(format!("per_index measure list does not have length m = {m}")))?;
        }
        Ok(())
    }
}

/// One estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatRow {
    pub m: usize,
    pub statistic: String,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n: u64,
    pub seed: u64,
    /// Exact value `n/d` in exhaustive mode.
    pub exact: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub rows: Vec<StatRow>,
    /// Reducible samples that fit neither allowed factorization shape.
    pub structural_violations: Vec<String>,
}

/// Per-polynomial findings.
#[derive(Clone, Debug, Default)]
struct Outcome {
    irreducible: bool,
    /// Half-degree of the smallest nontrivial reciprocal divisor.
    min_divisor_half: Option<usize>,
    exceptional: bool,
    disc_square: bool,
    galois: Option<String>,
    violation: Option<String>,
}

fn analyse(a: &RecPoly, cfg: &ExperimentConfig, galois: &GaloisOptions) -> Result<Outcome> {
    let m = a.m();
    let mut out = Outcome::default();
    match classify_reducibility(a) {
        Ok(Reducibility::Irreducible) => out.irreducible = true,
        Ok(Reducibility::ReciprocalDivisor(d)) => {
            let deg = d.degree().unwrap_or(0);
            out.min_divisor_half = Some(deg / 2);
            if deg == 0 || deg > m || !d.is_reciprocal() || !a.to_dense().rem_monic(&d).is_zero() {
                out.violation = Some(format!("{}: bad reciprocal divisor {d}", a.to_dense()));
            }
        }
        Ok(Reducibility::Exceptional { sign, factor }) => {
            out.exceptional = true;
            let prod = &factor * &factor.reversal()?;
            let signed = if sign < 0 { -&prod } else { prod };
            if signed != a.to_dense() || factor.is_reciprocal() {
                out.violation = Some(format!("{}: bad exceptional factor {factor}", a.to_dense()));
            }
        }
        Err(Error::ShapeViolation(msg)) => {
            out.violation = Some(format!("{}: {msg}", a.to_dense()));
        }
        Err(e) => return Err(e),
    }
    if cfg.statistics.contains(&Statistic::DiscSquare) {
        let disc = discriminant_via_trace(a)?;
        if 2 * m <= 24 && discriminant(&a.to_dense())? != disc {
            out.violation = Some(format!("{}: discriminant identity fails", a.to_dense()));
        }
        out.disc_square = is_nonzero_square(&disc);
    }
    if cfg.statistics.contains(&Statistic::Galois) {
        out.galois = Some(if !out.irreducible {
            "reducible".into()
        } else {
            classify_galois_with(a, galois)?.verdict.as_str().into()
        });
    }
    Ok(out)
}

const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval at 95%.
pub fn wilson(successes: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let (k, n) = (successes as f64, n as f64);
    let phat = k / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Named indicator events of one outcome.
fn events(o: &Outcome, cfg: &ExperimentConfig) -> Vec<(String, bool)> {
    let mut ev = Vec::new();
    for s in &cfg.statistics {
        match s {
            Statistic::Irreducible => ev.push(("irreducible".to_string(), o.irreducible)),
            Statistic::ReciprocalDivisor => {
                for k in 1..=cfg.divisor_kmax {
                    ev.push((
                        format!("reciprocal_divisor_le_{k}"),
                        o.min_divisor_half.is_some_and(|h| h <= k),
                    ));
                }
            }
            Statistic::Exceptional => ev.push(("exceptional".to_string(), o.exceptional)),
            Statistic::DiscSquare => ev.push(("disc_square".to_string(), o.disc_square)),
            Statistic::Galois => {}
        }
    }
    if let Some(g) = &o.galois {
        ev.push((format!("galois_{g}"), true));
    }
    ev
}

/// Per-`m` seed derived from the run seed.
fn seed_for(seed: u64, m: usize) -> u64 {
    seed ^ (m as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn run_m(cfg: &ExperimentConfig, m: usize, galois: &GaloisOptions, report: &mut ExperimentReport) -> Result<()> {
    let mus = cfg.measure.build()?;
    let support = mus.support_count(m);
    let exhaustive = match cfg.mode {
        Mode::Exhaustive => true,
        Mode::Sample => false,
        Mode::Auto => support.is_some_and(|s| s <= cfg.samples as u128),
    };
    let galois_names = [
        "reducible",
        "C2wrSm",
        "G1",
        "G2",
        "G3",
        "G4",
        "subC2xSm",
        "inconclusive",
    ];
    if exhaustive {
        let points = enumerate_support(&mus, m)?;
        let outcomes = points
            .par_iter()
            .map(|(a, w)| Ok((analyse(a, cfg, galois)?, w.clone())))
            .collect::<Result<Vec<_>>>()?;
        let mut mass: BTreeMap<String, BigRational> = BTreeMap::new();
        let mut names: Vec<String> = Vec::new();
        for (o, w) in &outcomes {
            if let Some(v) = &o.violation {
                report.structural_violations.push(format!("m={m}: {v}"));
            }
            for (name, hit) in events(o, cfg) {
                if !mass.contains_key(&name) {
                    names.push(name.clone());
                    mass.insert(name.clone(), BigRational::zero());
                }
                if hit {
                    *mass.get_mut(&name).unwrap() += w;
                }
            }
        }
        order_names(&mut names, &galois_names);
        for name in names {
            let exact = &mass[&name];
            let estimate = exact.to_f64().unwrap_or(f64::NAN);
            report.rows.push(StatRow {
                m,
                statistic: name,
                estimate,
                ci_low: estimate,
                ci_high: estimate,
                n: outcomes.len() as u64,
                seed: cfg.seed,
                exact: Some(exact.to_string()),
            });
        }
        return Ok(());
    }
    let sampler = Sampler::new(&mus, m)?;
    let seed = seed_for(cfg.seed, m);
    let outcomes = (0..cfg.samples)
        .into_par_iter()
        .map(|i| analyse(&sampler.sample_indexed(seed, i), cfg, galois))
        .collect::<Result<Vec<_>>>()?;
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut names: Vec<String> = Vec::new();
    for o in &outcomes {
        if let Some(v) = &o.violation {
            report.structural_violations.push(format!("m={m}: {v}"));
        }
        for (name, hit) in events(o, cfg) {
            let c = counts.entry(name.clone()).or_insert_with(|| {
                names.push(name.clone());
                0
            });
            *c += u64::from(hit);
        }
    }
    order_names(&mut names, &galois_names);
    let n = outcomes.len() as u64;
    for name in names {
        let k = counts[&name];
        let (lo, hi) = wilson(k, n);
        report.rows.push(StatRow {
            m,
            statistic: name,
            estimate: k as f64 / n as f64,
            ci_low: lo,
            ci_high: hi,
            n,
            seed: cfg.seed,
            exact: None,
        });
    }
    Ok(())
}

/// Fixed statistics first in first-seen order, Galois verdicts in a fixed order.
fn order_names(names: &mut [String], galois: &[&str]) {
    let rank = |s: &String| {
        s.strip_prefix("galois_")
            .map(|g| 1 + galois.iter().position(|x| *x == g).unwrap_or(galois.len()))
            .unwrap_or(0)
    };
    names.sort_by_key(rank);
}

/// Runs every `m` of the grid on `workers` threads (all cores if `None`).
/// The report does not depend on the worker count.
pub fn run_experiment(cfg: &ExperimentConfig, workers: Option<usize>) -> Result<ExperimentReport> {
    cfg.validate()?;
    let galois = GaloisOptions {
        primes: cfg.primes.clone(),
        ..GaloisOptions::default()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| {
        let mut report = ExperimentReport {
            rows: Vec::new(),
            structural_violations: Vec::new(),
        };
        for &m in &cfg.m_values {
            run_m(cfg, m, &galois, &mut report)?;
        }
        Ok(report)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(measure: MeasureSpec, m_values: Vec<usize>, samples: u64) -> ExperimentConfig {
        ExperimentConfig {
            measure,
            m_values,
            samples,
            seed: 1,
            statistics: default_statistics(),
            primes: Vec::new(),
            mode: Mode::Auto,
            divisor_kmax: 2,
        }
    }

    fn row<'a>(r: &'a ExperimentReport, m: usize, name: &str) -> &'a StatRow {
        r.rows.iter().find(|x| x.m == m && x.statistic == name).unwrap()
    }

    #[test]
    fn dirac_is_a_point_mass() {
        let c = cfg(
            MeasureSpec::Atoms {
                weights: vec![(0, "1".into())],
            },
            vec![2],
            50,
        );
        let r = run_experiment(&c, Some(1)).unwrap();
        let irr = row(&r, 2, "irreducible");
        assert_eq!((irr.estimate, irr.ci_low, irr.ci_high), (1.0, 1.0, 1.0));
        assert_eq!(irr.exact.as_deref(), Some("1"));
    }

    #[test]
    fn littlewood_square_discriminant_never_occurs() {
        let lw = MeasureSpec::Atoms {
            weights: vec![(-1, "1/2".into()), (1, "1/2".into())],
        };
        let mut c = cfg(lw, vec![5, 6], 1);
        c.mode = Mode::Exhaustive;
        let r = run_experiment(&c, None).unwrap();
        for m in [5, 6] {
            let d = row(&r, m, "disc_square");
            assert_eq!(d.exact.as_deref(), Some("0"));
            assert_eq!(d.n, 1 << m);
        }
        assert!(r.structural_violations.is_empty());
    }

    #[test]
    fn sampled_run_ignores_worker_count() {
        let mut c = cfg(MeasureSpec::Uniform { lo: -2, hi: 2 }, vec![3, 4], 200);
        c.statistics.push(Statistic::Galois);
        c.mode = Mode::Sample;
        let a = run_experiment(&c, Some(1)).unwrap();
        let b = run_experiment(&c, Some(4)).unwrap();
        assert_eq!(a, b);
        assert!(a.structural_violations.is_empty());
        let irr = row(&a, 3, "irreducible");
        assert!(irr.ci_low <= irr.estimate && irr.estimate <= irr.ci_high);
        assert!(irr.exact.is_none());
    }

    #[test]
    fn wilson_matches_closed_form() {
        let (lo, hi) = wilson(0, 10);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.277_532_799).abs() < 1e-6);
        let (lo, hi) = wilson(5, 10);
        assert!((lo - 0.236_593_090).abs() < 1e-6 && (hi - 0.763_406_910).abs() < 1e-6);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let c = cfg(MeasureSpec::Uniform { lo: 3, hi: 1 }, vec![2], 10);
        assert!(c.validate().is_err());
        let c = cfg(MeasureSpec::Uniform { lo: 0, hi: 1 }, vec![], 10);
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        let mut c = cfg(MeasureSpec::Uniform { lo: 0, hi: 1 }, vec![2], 10);
        c.primes = vec![4];
        assert!(c.validate().is_err());
    }
}
