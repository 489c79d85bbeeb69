//! Acceptance run: one PASS/FAIL line per criterion, with wall time against
//! its budget. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use recip_lab::distributions::{run_experiment, ExperimentConfig, MeasureSpec, Mode, StatRow};
use recip_lab::verify::{
    count_table, crossing_grid, disc_identity, euclid_checks, four_invariant_subgroups, fourier_grid,
    galois_consistency, littlewood_squares, major_cardinality, perfect_equidistribution, pnt_lower_bound,
    random_classification, worked_example, Check,
};

const SEED: u64 = 20_240_601;

/// Name, time budget in seconds, runner.
type Criterion = (&'static str, u64, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_checks(checks: Vec<Check>) -> Outcome {
    let ok = checks.iter().all(Check::passed);
    let detail = checks
        .iter()
        .map(|c| {
            let first = c.failures.first().map(|f| format!(" e.g. {f}")).unwrap_or_default();
            format!("{}: {}/{} failed{first}", c.name, c.failed, c.cases)
        })
        .collect::<Vec<_>>()
        .join("; ");
    Outcome { ok, detail }
}

fn lift(r: recip_lab::Result<Vec<Check>>) -> Outcome {
    match r {
        Ok(c) => from_checks(c),
        Err(e) => Outcome {
            ok: false,
            detail: format!("error: {e}"),
        },
    }
}

fn counting() -> Outcome {
    lift(count_table(&[2, 3, 5], 5).map(|(_, c)| vec![c, pnt_lower_bound(&[2, 3, 5], 5)]))
}

fn major_residues() -> Outcome {
    lift(major_cardinality(&[2, 3, 5], 3, 3).map(|c| vec![c]))
}

fn crossing() -> Outcome {
    lift(crossing_grid().map(|c| vec![c]))
}

fn euclid() -> Outcome {
    lift(euclid_checks(&[2, 3], 3, 6))
}

fn discriminant() -> Outcome {
    lift(disc_identity(SEED, 1000, 10).map(|c| vec![c]))
}

fn littlewood() -> Outcome {
    lift(littlewood_squares(&[5, 6, 9, 10]).map(|c| vec![c]))
}

fn equidistribution() -> Outcome {
    // k <= min(2, m): at k = m + 1 the uniform law is not equidistributed
    lift(perfect_equidistribution(&[2, 3, 5], 6, 2).map(|c| vec![c]))
}

fn fourier() -> Outcome {
    lift(fourier_grid(&[2, 3], 3))
}

fn groups() -> Outcome {
    lift((|| {
        Ok(vec![
            four_invariant_subgroups(3..=6)?,
            worked_example(),
            random_classification(SEED, 5, 1000)?,
        ])
    })())
}

fn reducibility(rows: &[StatRow], m: usize) -> Option<(f64, u64)> {
    rows.iter()
        .find(|r| r.m == m && r.statistic == "irreducible")
        .map(|r| (1.0 - r.estimate, r.n))
}

fn trend() -> Outcome {
    let cfg: ExperimentConfig = serde_json::from_value(serde_json::json!({
        "measure": MeasureSpec::Uniform { lo: 0, hi: 34 },
        "m_values": [10, 20, 40],
        "samples": 2000,
        "seed": SEED,
        "mode": "sample",
        "statistics": ["irreducible", "reciprocal_divisor", "exceptional"],
    }))
    .expect("valid config");
    assert_eq!(cfg.mode, Mode::Sample);
    let report = match run_experiment(&cfg, None) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                ok: false,
                detail: format!("error: {e}"),
            }
        }
    };
    let (Some((r10, n10)), Some((r20, _)), Some((r40, n40))) = (
        reducibility(&report.rows, 10),
        reducibility(&report.rows, 20),
        reducibility(&report.rows, 40),
    ) else {
        return Outcome {
            ok: false,
            detail: "missing rows".into(),
        };
    };
    let pooled = (r10 * n10 as f64 + r40 * n40 as f64) / (n10 + n40) as f64;
    let se = (pooled * (1.0 - pooled) * (1.0 / n10 as f64 + 1.0 / n40 as f64)).sqrt();
    let violations = report.structural_violations.len();
    Outcome {
        ok: violations == 0 && r40 <= r10 + 3.0 * se,
        detail: format!(
            "structural violations {violations}; reducible fraction m=10 {r10:.4}, m=20 {r20:.4}, m=40 {r40:.4}; \
             pooled SE {se:.4}"
        ),
    }
}

fn galois() -> Outcome {
    lift(galois_consistency(SEED, 200).map(|c| vec![c]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("counting irreducible reciprocals", 10, counting),
        ("major residue cardinality", 60, major_residues),
        ("crossing residues and bijection", 300, crossing),
        ("reciprocal Euclidean division", 120, euclid),
        ("discriminant identity", 30, discriminant),
        ("Littlewood square discriminants", 60, littlewood),
        ("perfect equidistribution", 120, equidistribution),
        ("Fourier inversion, expectation, L-infinity", 300, fourier),
        ("hyperoctahedral subgroups", 300, groups),
        ("reducibility trend", 1200, trend),
        ("Galois classifier consistency", 600, galois),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*budget);
        let ok = out.ok && in_time;
        failed += usize::from(!ok);
        println!(
            "{} criterion {:>2}: {name} [{:.2}s / {budget}s budget] {}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            took.as_secs_f64(),
            out.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
