//! Property suites behind `recip-lab verify`, sized to the documented grids.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::{
    beta, character, delta_r, delta_trace, enumerate_support, fourier_expectation, sigma, Measure, MeasureSeq,
};
use crate::error::{Error, Result};
use crate::fppoly::{
    chebyshev, chebyshev_fp, count_irreducible_reciprocal, enumerate_reciprocal_mod_p, fp_is_irreducible, FpPoly, Prime,
};
use crate::hyperoct::{
    classify_galois, invariant_subgroups, random_subgroup_classification, PermGroup, SignedPerm, Verdict,
};
use crate::intpoly::{discriminant, is_irreducible_over_z, is_nonzero_square, ZPoly};
use crate::linalg::decode;
use crate::reciprocal::{
    classify_reducibility, factor_shape, from_trace, from_trace_fp, is_semi_irreducible, to_trace, to_trace_fp,
    RecPoly, Reducibility,
};
use crate::residues::{
    brmod, crossing_check, good_representatives, image_coincidence, laurent_residue, major_space, rm_set,
    surjectivity_check_lacunary, CenteredRec,
};

/// Failure messages kept per check; the count is always exact.
const KEEP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Chebyshev,
    Trace,
    Euclid,
    Residues,
    Crossing,
    Fourier,
    Discriminant,
    Hyperoct,
    Counts,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Chebyshev,
        Suite::Trace,
        Suite::Euclid,
        Suite::Residues,
        Suite::Crossing,
        Suite::Fourier,
        Suite::Discriminant,
        Suite::Hyperoct,
        Suite::Counts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Chebyshev => "chebyshev",
            Suite::Trace => "trace",
            Suite::Euclid => "euclid",
            Suite::Residues => "residues",
            Suite::Crossing => "crossing",
            Suite::Fourier => "fourier",
            Suite::Discriminant => "discriminant",
            Suite::Hyperoct => "hyperoct",
            Suite::Counts => "counts",
        }
    }

    /// `all` expands to every suite.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            Ok(vec![s.parse()?])
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One property checked over a grid of cases.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

impl Check {
    pub fn new(name: &str) -> Self {
        Check {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < KEEP {
                self.failures.push(msg());
            }
        }
    }

    fn absorb(mut self, other: Check) -> Check {
        self.cases += other.cases;
        self.failed += other.failed;
        let room = KEEP.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }

    fn merge(name: &str, parts: impl IntoIterator<Item = Check>) -> Check {
        parts.into_iter().fold(Check::new(name), Check::absorb)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Human-readable tables printed alongside the checks.
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let mut notes = Vec::new();
    let checks = match suite {
        Suite::Chebyshev => chebyshev_checks(),
        Suite::Trace => trace_checks(seed)?,
        Suite::Euclid => euclid_checks(&[2, 3], 3, 6)?,
        Suite::Residues => residue_checks()?,
        Suite::Crossing => vec![crossing_grid()?],
        Suite::Fourier => fourier_checks()?,
        Suite::Discriminant => vec![disc_identity(seed, 1000, 10)?, littlewood_squares(&[5, 6, 9, 10])?],
        Suite::Hyperoct => hyperoct_checks(seed)?,
        Suite::Counts => {
            let (rows, check) = count_table(&[2, 3, 5], 5)?;
            notes.push(format!("{:>3} {:>3} {:>10} {:>10}", "p", "m", "S_p(2m)", "brute"));
            notes.extend(
                rows.iter()
                    .map(|r| format!("{:>3} {:>3} {:>10} {:>10}", r.p, r.m, r.formula, r.brute)),
            );
            vec![check, pnt_lower_bound(&[2, 3, 5], 5)]
        }
    };
    Ok(SuiteReport { suite, checks, notes })
}

fn prime(p: u64) -> Result<Prime> {
    Prime::new(p)
}

fn rng_for(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_rec<R: Rng>(rng: &mut R, m: usize, bound: i64) -> RecPoly {
    let mut half: Vec<i64> = (0..m).map(|_| rng.gen_range(-bound..=bound)).collect();
    half.push(1);
    RecPoly::from_i64s(&half).expect("nonempty half")
}

fn random_rec_fp<R: Rng>(rng: &mut R, p: Prime, m: usize) -> FpPoly {
    let mut v = vec![0u64; 2 * m + 1];
    for j in 0..=m {
        let c = rng.gen_range(0..p.get());
        v[m - j] = c;
        v[m + j] = c;
    }
    v[0] = 1;
    v[2 * m] = 1;
    FpPoly::new(p, v)
}

// ---- chebyshev ----

fn chebyshev_checks() -> Vec<Check> {
    let mut identity = Check::new("chebyshev_identity");
    for p in [2, 3, 5, 7] {
        let p = prime(p).unwrap();
        let t2p1 = FpPoly::from_i64s(p, &[1, 0, 1]);
        for j in 0..=64usize {
            let c = chebyshev_fp(j as i64, p);
            let mut acc = FpPoly::zero(p);
            for (i, &ci) in c.coeffs().iter().enumerate() {
                acc = &acc + &t2p1.pow(i as u32).shift(j - i).scale(ci);
            }
            let want = &FpPoly::monomial(p, 1, 2 * j) + &FpPoly::one(p);
            identity.record(acc == want, || format!("p={p} j={j}: {acc} != {want}"));
        }
    }
    let mut recursion = Check::new("chebyshev_recursion");
    for j in -32i64..=32 {
        let lhs = &ZPoly::x() * &chebyshev(j);
        let rhs = &chebyshev(j + 1) + &chebyshev(j - 1);
        recursion.record(lhs == rhs, || format!("j={j}"));
    }
    let mut coprime = Check::new("chebyshev_coprime_odd_p");
    for p in [3, 5, 7] {
        let p = prime(p).unwrap();
        for a in 1..=20i64 {
            for b in 1..=20i64 {
                if a.trailing_zeros() != b.trailing_zeros() {
                    let g = chebyshev_fp(a, p).gcd(&chebyshev_fp(b, p));
                    coprime.record(g.is_one(), || format!("p={p} a={a} b={b}: gcd {g}"));
                }
            }
        }
    }
    let mut char2 = Check::new("chebyshev_coprime_p2");
    let p2 = prime(2).unwrap();
    let over_t = |j: i64| chebyshev_fp(j, p2).div_exact(&FpPoly::x(p2));
    for a in 1..=20i64 {
        let ok = match (over_t(a), over_t(a + 1)) {
            (Some(x), Some(y)) => x.gcd(&y).is_one(),
            _ => false,
        };
        char2.record(ok, || format!("a={a}"));
    }
    vec![identity, recursion, coprime, char2]
}

// ---- trace ----

fn trace_checks(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 1);
    let mut round_z = Check::new("trace_round_trip_z");
    for _ in 0..1000 {
        let m = rng.gen_range(1..=20);
        let half: Vec<BigInt> = (0..=m).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect();
        let back = from_trace(&to_trace(&half), m)?;
        round_z.record(back.half() == half.as_slice(), || format!("{half:?}"));
    }
    let mut round_p = Check::new("trace_round_trip_fp");
    for _ in 0..1000 {
        let p = prime([2, 3, 5, 7][rng.gen_range(0..4)])?;
        let m = rng.gen_range(1..=20);
        let a = random_rec_fp(&mut rng, p, m);
        let back = from_trace_fp(&to_trace_fp(&a, m)?, m)?;
        round_p.record(back == a, || format!("p={p} {a}"));
    }
    let mut mult = Check::new("trace_multiplicative");
    for _ in 0..200 {
        let f = {
            let m = rng.gen_range(1..=8);
            random_rec(&mut rng, m, 9)
        };
        let g = {
            let m = rng.gen_range(1..=8);
            random_rec(&mut rng, m, 9)
        };
        let fg = RecPoly::from_dense(&(&f.to_dense() * &g.to_dense()))?;
        mult.record(fg.trace() == &f.trace() * &g.trace(), || {
            format!("{} * {}", f.to_dense(), g.to_dense())
        });
    }
    let mut coprime = Check::new("trace_coprimality");
    for p in [2, 3] {
        let p = prime(p)?;
        let polys: Vec<(usize, FpPoly)> = (1..=3)
            .flat_map(|m| enumerate_reciprocal_mod_p(p, m).unwrap().map(move |a| (m, a)))
            .collect();
        for (ma, a) in &polys {
            for (mb, b) in &polys {
                let lhs = a.gcd(b).is_one();
                let rhs = to_trace_fp(a, *ma)?.gcd(&to_trace_fp(b, *mb)?).is_one();
                coprime.record(lhs == rhs, || format!("p={p} {a}, {b}"));
            }
        }
    }
    let mut semi = Check::new("semi_irreducible_means_exceptional");
    for i in 0..300 {
        let a = if i % 3 == 0 {
            exceptional_sample(&mut rng)
        } else {
            {
                let m = rng.gen_range(1..=6);
                random_rec(&mut rng, m, 3)
            }
        };
        if is_semi_irreducible(&a)? {
            let r = classify_reducibility(&a)?;
            let ok = matches!(r, Reducibility::Irreducible | Reducibility::Exceptional { .. });
            semi.record(ok, || format!("{}: {r:?}", a.to_dense()));
        }
    }
    let mut shape = Check::new("factor_shape_even_exponents");
    for _ in 0..300 {
        let p = prime([2, 3, 5, 7][rng.gen_range(0..4)])?;
        let a = {
            let m = rng.gen_range(1..=8);
            random_rec_fp(&mut rng, p, m)
        };
        let r = factor_shape(&a);
        shape.record(r.is_ok(), || format!("p={p} {a}: {r:?}"));
    }
    Ok(vec![round_z, round_p, mult, coprime, semi, shape])
}

/// `I * I_rev` for a random monic `I` with nonzero constant term.
fn exceptional_sample<R: Rng>(rng: &mut R) -> RecPoly {
    let m = rng.gen_range(1..=5);
    let mut c: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
    if c[0] == 0 {
        c[0] = 1;
    }
    c.push(1);
    let i = ZPoly::from_i64s(&c);
    let prod = &i * &i.reversal().expect("nonzero constant term");
    // make it monic: the constant term of I is the leading coefficient of I_rev
    if prod.lc().is_one() {
        RecPoly::from_dense(&prod).expect("I I_rev is reciprocal")
    } else {
        random_rec(rng, m, 3)
    }
}

// ---- euclid ----

/// Existence and uniqueness of `brmod`, image coincidence and lacunary
/// surjectivity for every monic reciprocal `D` of degree `2k <= 2 kmax`.
pub fn euclid_checks(primes: &[u64], kmax: usize, mmax: usize) -> Result<Vec<Check>> {
    let mut cases = Vec::new();
    for &p in primes {
        let p = prime(p)?;
        for k in 1..=kmax {
            for d in enumerate_reciprocal_mod_p(p, k)? {
                cases.push((p, k, d));
            }
        }
    }
    let parts = cases
        .par_iter()
        .map(|(p, k, d)| euclid_case(*p, *k, d, mmax))
        .collect::<Result<Vec<_>>>()?;
    let names = ["brmod_exists_and_unique", "image_coincidence", "lacunary_surjectivity"];
    Ok((0..3)
        .map(|i| Check::merge(names[i], parts.iter().map(|c| c[i].clone())))
        .collect())
}

fn euclid_case(p: Prime, k: usize, d: &FpPoly, mmax: usize) -> Result<[Check; 3]> {
    let q = p.get();
    let mut unique = Check::new("");
    let mut images = Check::new("");
    let mut lacunary = Check::new("");
    for m in (k - 1)..=mmax {
        // injectivity of the target space; rm_set fails on a rank drop
        let targets = rm_set(d, m);
        unique.record(targets.is_ok(), || {
            format!("p={p} m={m} D={d}: {:?}", targets.as_ref().err())
        });
        for idx in 0..q.pow(m as u32 + 1) {
            let c = CenteredRec::new(p, m, decode(idx, q, m + 1))
                .to_dense()
                .expect("nonnegative exponents");
            let r = brmod(&c, d, m)?;
            let ok = r.half().len() == k && r.residue(d) == c.rem(d);
            unique.record(ok, || format!("p={p} m={m} D={d} C={c}"));
        }
        images.record(image_coincidence(d, m)?, || format!("p={p} m={m} D={d}"));
        if q == 2 && FpPoly::from_i64s(p, &[1, 0, 1]).divides(d) {
            continue;
        }
        for j in 1..=m {
            if j + 2 * k - 1 <= m {
                let ok = surjectivity_check_lacunary(p, j, k, m, d)?;
                lacunary.record(ok, || format!("p={p} j={j} k={k} m={m} D={d}"));
            }
        }
    }
    Ok([unique, images, lacunary])
}

// ---- residues ----

fn residue_checks() -> Result<Vec<Check>> {
    let mut out = vec![major_cardinality(&[2, 3, 5], 3, 3)?];
    out.push(major_multiplier()?);
    out.push(major_by_characters()?);
    let mut reps = Check::new("good_representatives_valid");
    for p in [2, 3] {
        for m in 1..=4 {
            let sys = good_representatives(prime(p)?, m, m.min(2))?;
            let v = sys.validate();
            reps.record(v.is_ok(), || format!("p={p} m={m}: {v:?}"));
        }
    }
    out.push(reps);
    Ok(out)
}

/// `|N_m(D)| = p^k` by counting members among all residues mod `D`, for
/// every monic reciprocal `D` of degree `2k <= 2 kmax` and `m` in `k..=k+extra`.
pub fn major_cardinality(primes: &[u64], kmax: usize, extra: usize) -> Result<Check> {
    let mut cases = Vec::new();
    for &p in primes {
        let p = prime(p)?;
        for k in 0..=kmax {
            for d in enumerate_reciprocal_mod_p(p, k)? {
                for m in k.max(1)..=k + extra {
                    cases.push((p, k, d.clone(), m));
                }
            }
        }
    }
    let parts = cases
        .par_iter()
        .map(|(p, k, d, m)| {
            let q = p.get();
            let mut c = Check::new("");
            if *k == 0 {
                // F_p[T]/(1) is the zero ring
                c.record(true, String::new);
                return Ok(c);
            }
            let space = major_space(d, *m)?;
            let members = (0..q.pow(2 * *k as u32))
                .filter(|&idx| space.contains(&FpPoly::new(*p, decode(idx, q, 2 * k))))
                .count() as u128;
            let want = (q as u128).pow(*k as u32);
            c.record(members == want && space.cardinality() == want, || {
                format!("p={p} m={m} D={d}: {members} members, expected {want}")
            });
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Check::merge("major_residue_cardinality", parts))
}

/// `B in N_m(D)` iff `B D' in N_m(D D')`.
fn major_multiplier() -> Result<Check> {
    let mut c = Check::new("major_residue_multiplier");
    for p in [2, 3] {
        let p = prime(p)?;
        let q = p.get();
        let ds: Vec<FpPoly> = (1..=2)
            .flat_map(|k| enumerate_reciprocal_mod_p(p, k).unwrap())
            .collect();
        for d in &ds {
            for d2 in &ds {
                for m in 1..=6 {
                    let small = major_space(d, m)?;
                    let big = major_space(&(d * d2), m)?;
                    let deg = d.degree().unwrap();
                    for idx in 0..q.pow(deg as u32) {
                        let b = FpPoly::new(p, decode(idx, q, deg));
                        c.record(small.contains(&b) == big.contains(&(&b * d2)), || {
                            format!("p={p} m={m} D={d} D'={d2} B={b}")
                        });
                    }
                }
            }
        }
    }
    Ok(c)
}

/// Membership agrees with `psi(C B / D) = 0` for all `C` in `R_m(D)`.
fn major_by_characters() -> Result<Check> {
    let mut c = Check::new("major_residue_character_definition");
    for p in [2, 3] {
        let p = prime(p)?;
        let q = p.get();
        for k in 1..=2 {
            for d in enumerate_reciprocal_mod_p(p, k)? {
                for m in 1..=4 {
                    let space = major_space(&d, m)?;
                    let rm = rm_set(&d, m)?;
                    for idx in 0..q.pow(2 * k as u32) {
                        let b = FpPoly::new(p, decode(idx, q, 2 * k));
                        let by_chars = rm
                            .iter()
                            .all(|cc| laurent_residue(&cc.mulmod(&b, &d), &d, 0).unwrap() == 0);
                        c.record(by_chars == space.contains(&b), || format!("p={p} m={m} D={d} B={b}"));
                    }
                }
            }
        }
    }
    Ok(c)
}

// ---- crossing ----

/// `crossing_check` over `p = 2, m <= 4` and `p = 3, m <= 3`, moduli of degree at most 4.
pub fn crossing_grid() -> Result<Check> {
    let grid: Vec<(u64, usize)> = (1..=4).map(|m| (2, m)).chain((1..=3).map(|m| (3, m))).collect();
    let mut c = Check::new("crossing_residues");
    for (p, m) in grid {
        let r = crossing_check(prime(p)?, m, 4)?;
        c.cases += r.bijections_verified as u64 + r.comparisons;
        c.failed += r.counterexamples.len() as u64;
        let room = KEEP.saturating_sub(c.failures.len());
        c.failures.extend(
            r.counterexamples
                .into_iter()
                .take(room)
                .map(|s| format!("p={p} m={m}: {s}")),
        );
    }
    Ok(c)
}

// ---- fourier ----

/// Measures with at most three atoms.
pub fn small_measures() -> Vec<MeasureSeq> {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let atoms =
        |a: &[(i64, i64, i64)]| -> MeasureSeq { Measure::new(a.iter().map(|&(x, n, d)| (x, q(n, d)))).unwrap().into() };
    vec![
        atoms(&[(0, 1, 2), (1, 1, 2)]),
        atoms(&[(-1, 1, 2), (1, 1, 2)]),
        atoms(&[(0, 1, 3), (1, 2, 3)]),
        atoms(&[(0, 1, 2), (1, 1, 3), (2, 1, 6)]),
        atoms(&[(-1, 1, 4), (0, 1, 4), (4, 1, 2)]),
    ]
}

fn fourier_checks() -> Result<Vec<Check>> {
    let mut out = fourier_grid(&[2, 3], 3)?;
    out.push(perfect_equidistribution(&[2, 3, 5], 6, 2)?);
    let mut dominated = Check::new("trace_defect_dominated");
    for mus in small_measures() {
        for p in [2, 3] {
            for m in 1..=4 {
                for kmax in 0..=m.min(2) {
                    let t = delta_trace(&mus, m, &[p], kmax)?;
                    let f = delta_r(&mus, m, &[p], kmax)?;
                    dominated.record(t <= f, || format!("p={p} m={m} k={kmax}: {t} > {f}"));
                }
            }
        }
    }
    out.push(dominated);
    Ok(out)
}

fn e_frac(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * x)
}

/// Fourier inversion over good representatives, the closed-form Fourier
/// expectation against enumeration of all polynomials in the support, and
/// the L-infinity bound on every minor residue; `m <= mmax`, tolerance `1e-10`.
pub fn fourier_grid(primes: &[u64], mmax: usize) -> Result<Vec<Check>> {
    const TOL: f64 = 1e-10;
    let mut inversion = Check::new("fourier_inversion");
    for &p in primes {
        let p = prime(p)?;
        let q = p.get() as f64;
        for m in 1..=mmax {
            let reps = good_representatives(p, m, m)?;
            for d in reps.moduli().collect::<Vec<_>>() {
                let k = d.degree().unwrap() / 2;
                let ls = reps.representatives(&d).unwrap();
                for c in rm_set(&d, m)? {
                    let sum: Complex64 = ls
                        .iter()
                        .map(|b| e_frac(laurent_residue(&c.mulmod(b, &d), &d, 0).unwrap() as f64 / q))
                        .sum();
                    let want = if c.is_zero() { 1.0 } else { 0.0 };
                    let got = sum / q.powi(k as i32);
                    inversion.record((got - want).norm() < TOL, || format!("p={p} m={m} D={d} C={c}: {got}"));
                }
            }
        }
    }
    let mut cases = Vec::new();
    for &p in primes {
        for m in 1..=mmax {
            for (i, mus) in small_measures().into_iter().enumerate() {
                cases.push((prime(p)?, m, i, mus));
            }
        }
    }
    let parts = cases
        .par_iter()
        .map(|(p, m, i, mus)| expectation_and_bound(*p, *m, *i, mus, TOL))
        .collect::<Result<Vec<_>>>()?;
    let expectation = Check::merge("fourier_expectation", parts.iter().map(|x| x.0.clone()));
    let linf = Check::merge("l_infinity_minor_residues", parts.into_iter().map(|x| x.1));
    Ok(vec![inversion, expectation, linf])
}

fn expectation_and_bound(p: Prime, m: usize, which: usize, mus: &MeasureSeq, tol: f64) -> Result<(Check, Check)> {
    let q = p.get();
    let support: Vec<(RecPoly, f64)> = enumerate_support(mus, m)?
        .into_iter()
        .map(|(a, w)| (a, w.to_f64().unwrap()))
        .collect();
    let b_val = beta(mus, m, q);
    let t2p1 = FpPoly::from_i64s(p, &[1, 0, 1]);
    let mut exp = Check::new("");
    let mut linf = Check::new("");
    for k in 1..=m {
        let bound = b_val.powi(((m + k) / (2 * k)) as i32);
        for d in enumerate_reciprocal_mod_p(p, k)? {
            let space = major_space(&d, m)?;
            let skip_linf = q == 2 && t2p1.divides(&d);
            for idx in 0..q.pow(2 * k as u32) {
                let b = FpPoly::new(p, decode(idx, q, 2 * k));
                let (bs, ds) = (std::slice::from_ref(&b), std::slice::from_ref(&d));
                let direct: Complex64 = support.iter().map(|(a, w)| character(a, bs, ds).unwrap() * w).sum();
                let closed = fourier_expectation(mus, m, bs, ds)?;
                exp.record((direct - closed).norm() < tol, || {
                    format!("p={p} m={m} measure#{which} D={d} B={b}: {direct} vs {closed}")
                });
                if !skip_linf && !space.contains(&b) {
                    let s = sigma(mus, m, bs, ds)?;
                    linf.record(s <= bound + tol, || {
                        format!("p={p} m={m} measure#{which} D={d} B={b}: {s} > {bound}")
                    });
                }
            }
        }
    }
    Ok((exp, linf))
}

/// `Delta^R_p(m; k) = 0` for coefficients uniform mod `p`, `k <= min(kmax, m)`.
pub fn perfect_equidistribution(primes: &[u64], mmax: usize, kmax: usize) -> Result<Check> {
    let mut c = Check::new("perfect_equidistribution");
    for &p in primes {
        let mus: MeasureSeq = Measure::uniform(0, p as i64 - 1)?.into();
        for m in 1..=mmax {
            for k in 0..=kmax.min(m) {
                let v = delta_r(&mus, m, &[p], k)?;
                c.record(v.is_zero(), || format!("p={p} m={m} k={k}: {v}"));
            }
        }
    }
    Ok(c)
}

// ---- discriminant ----

/// `Delta(A) = (-1)^m A(1) A(-1) Delta(A_R)^2` on seeded random monic `A`.
pub fn disc_identity(seed: u64, trials: usize, mmax: usize) -> Result<Check> {
    let mut rng = rng_for(seed, 5);
    let mut c = Check::new("discriminant_identity");
    for _ in 0..trials {
        let a = {
            let m = rng.gen_range(1..=mmax);
            random_rec(&mut rng, m, 9)
        };
        let dense = a.to_dense();
        let ends = dense.evaluate(&BigInt::one()) * dense.evaluate(&-BigInt::one());
        let sign = if a.m() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let dr = discriminant(&a.trace())?;
        let want = sign * ends * &dr * &dr;
        let got = discriminant(&dense)?;
        c.record(got == want, || format!("{dense}: {got} != {want}"));
    }
    Ok(c)
}

/// No Littlewood reciprocal polynomial of these half-degrees has a nonzero
/// square discriminant.
pub fn littlewood_squares(ms: &[usize]) -> Result<Check> {
    let mut c = Check::new("littlewood_square_discriminant");
    for &m in ms {
        let found: Vec<String> = (0..1u64 << m)
            .into_par_iter()
            .map(|mask| {
                let mut half: Vec<i64> = (0..m).map(|j| if mask >> j & 1 == 1 { 1 } else { -1 }).collect();
                half.push(1);
                let dense = RecPoly::from_i64s(&half).unwrap().to_dense();
                let d = discriminant(&dense)?;
                Ok(is_nonzero_square(&d).then(|| format!("m={m}: {dense}")))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        c.cases += 1 << m;
        c.failed += found.len() as u64;
        c.failures.extend(found.into_iter().take(KEEP));
    }
    Ok(c)
}

// ---- hyperoct ----

fn hyperoct_checks(seed: u64) -> Result<Vec<Check>> {
    let mut rng = rng_for(seed, 7);
    let mut out = vec![four_invariant_subgroups(3..=6)?, worked_example()];
    let mut act = Check::new("action_respects_composition");
    for _ in 0..10_000 {
        let m = rng.gen_range(1..=8);
        let (g, h) = (SignedPerm::random(m, &mut rng), SignedPerm::random(m, &mut rng));
        let mut k = rng.gen_range(1..=m as i64);
        if rng.gen::<bool>() {
            k = -k;
        }
        let gh = g.compose(&h)?;
        act.record(gh.act(k)? == g.act(h.act(k)?)?, || format!("{g} {h} {k}"));
    }
    out.push(act);
    let mut flags = Check::new("subgroup_flag_relations");
    for _ in 0..5000 {
        let m = rng.gen_range(2..=8);
        let g = SignedPerm::random(m, &mut rng);
        let h = SignedPerm::random(m, &mut rng);
        let (f, fh, fgh) = (g.subgroup_flags(), h.subgroup_flags(), g.compose(&h)?.subgroup_flags());
        let mut ok = f.in_g4 == (f.in_g1 && f.in_g3) && (!(f.in_g1 && f.in_g2) || f.in_g3);
        let closed = |a: bool, b: bool, ab: bool| !(a && b) || ab;
        ok &= closed(f.in_g1, fh.in_g1, fgh.in_g1)
            && closed(f.in_g2, fh.in_g2, fgh.in_g2)
            && closed(f.in_g3, fh.in_g3, fgh.in_g3)
            && closed(f.in_g4, fh.in_g4, fgh.in_g4)
            && closed(f.in_g5, fh.in_g5, fgh.in_g5);
        flags.record(ok, || format!("{g} {h}"));
    }
    out.push(flags);
    let mut cycles = Check::new("long_cycle_splitting");
    for m in 1..=8 {
        for _ in 0..200 {
            let mut order: Vec<usize> = (1..=m).collect();
            for i in (1..m).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let mut sigma = vec![0; m];
            for i in 0..m {
                sigma[order[i] - 1] = order[(i + 1) % m];
            }
            let signs: Vec<i8> = (0..m).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
            let g = SignedPerm::new(signs, sigma)?;
            let ct = g.cycle_type();
            let want = if g.sign_product() == -1 {
                vec![2 * m]
            } else {
                vec![m, m]
            };
            cycles.record(ct == want, || format!("{g}: {ct:?}"));
        }
    }
    out.push(cycles);
    out.push(random_classification(seed, 5, 1000)?);
    out.push(galois_consistency(seed, 200)?);
    Ok(out)
}

/// `invariant_subgroups` returns exactly four subgroups under `A_m` and `S_m`.
pub fn four_invariant_subgroups(ms: std::ops::RangeInclusive<usize>) -> Result<Check> {
    let mut c = Check::new("invariant_subgroups_four");
    for m in ms {
        for k in [PermGroup::Alternating, PermGroup::Symmetric] {
            let n = invariant_subgroups(m, k)?.len();
            c.record(n == 4, || format!("m={m} {k:?}: {n} subgroups"));
        }
    }
    Ok(c)
}

pub fn worked_example() -> Check {
    let mut c = Check::new("worked_example_cycles");
    let g = SignedPerm::new(vec![-1, 1, -1, 1], vec![2, 1, 3, 4]).expect("valid signed permutation");
    let s = g.to_string();
    c.record(s == "(1 2 -1 -2)(3 -3)", || format!("got {s}"));
    c
}

pub fn random_classification(seed: u64, m: usize, trials: usize) -> Result<Check> {
    let mut rng = rng_for(seed, 11);
    let r = random_subgroup_classification(m, trials, &mut rng)?;
    let mut c = Check::new("random_subgroup_classification");
    c.cases = trials as u64;
    c.failed = r.violations.len() as u64;
    c.failures = r.violations.into_iter().take(KEEP).collect();
    Ok(c)
}

/// Galois reports for seeded random irreducible `A` with `3 <= m <= 8`, plus
/// the cyclotomic polynomial of order 5.
pub fn galois_consistency(seed: u64, count: usize) -> Result<Check> {
    let mut rng = rng_for(seed, 13);
    let mut polys = Vec::with_capacity(count);
    while polys.len() < count {
        let a = {
            let m = rng.gen_range(3..=8);
            random_rec(&mut rng, m, 5)
        };
        if is_irreducible_over_z(&a.to_dense())? {
            polys.push(a);
        }
    }
    let parts = polys
        .par_iter()
        .map(|a| {
            let r = classify_galois(a)?;
            let mut c = Check::new("");
            let mut problems = r.contradictions();
            if r.witness.is_some() && r.c2sm_excluded != Some(true) {
                problems.push("witness without exclusion".into());
            }
            if !r.irreducible {
                problems.push("irreducible input reported reducible".into());
            }
            c.record(problems.is_empty(), || format!("{}: {problems:?}", a.to_dense()));
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut c = Check::merge("galois_consistency", parts);
    let phi5 = classify_galois(&RecPoly::from_i64s(&[1, 1, 1])?)?;
    c.record(phi5.verdict == Verdict::G2, || {
        format!("cyclotomic 5 gives {}", phi5.verdict)
    });
    Ok(c)
}

// ---- counts ----

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub p: u64,
    pub m: usize,
    pub formula: String,
    pub brute: u64,
}

/// Irreducible monic reciprocal polynomials of degree `2m` by enumeration,
/// against the closed formula.
pub fn count_table(primes: &[u64], mmax: usize) -> Result<(Vec<CountRow>, Check)> {
    let mut rows = Vec::new();
    let mut c = Check::new("irreducible_reciprocal_counts");
    for &p in primes {
        let pr = prime(p)?;
        for m in 1..=mmax {
            let all: Vec<FpPoly> = enumerate_reciprocal_mod_p(pr, m)?.collect();
            let brute = all
                .par_iter()
                .filter(|a| a.is_reciprocal() && fp_is_irreducible(a))
                .count() as u64;
            let formula = count_irreducible_reciprocal(pr, m as u64).to_string();
            c.record(formula == brute.to_string(), || {
                format!("p={p} m={m}: {formula} vs {brute}")
            });
            rows.push(CountRow { p, m, formula, brute });
        }
    }
    Ok((rows, c))
}

/// `S_p(2m) > p^m / (2m) - p^{m/3} / m`.
pub fn pnt_lower_bound(primes: &[u64], mmax: usize) -> Check {
    let mut c = Check::new("reciprocal_pnt_lower_bound");
    for &p in primes {
        for m in 1..=mmax {
            let s = count_irreducible_reciprocal(Prime::new(p).unwrap(), m as u64)
                .to_f64()
                .unwrap();
            let (pf, mf) = (p as f64, m as f64);
            let bound = pf.powi(m as i32) / (2.0 * mf) - pf.powf(mf / 3.0) / mf;
            c.record(s > bound, || format!("p={p} m={m}: {s} <= {bound}"));
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_list("all").unwrap().len(), 9);
        assert!(Suite::parse_list("unknown").is_err());
    }

    #[test]
    fn check_keeps_a_bounded_sample() {
        let mut c = Check::new("x");
        for i in 0..50 {
            c.record(i % 2 == 0, || format!("{i}"));
        }
        assert_eq!((c.cases, c.failed, c.failures.len()), (50, 25, KEEP));
        let merged = Check::merge("y", [c.clone(), c]);
        assert_eq!((merged.cases, merged.failed, merged.failures.len()), (100, 50, KEEP));
    }

    #[test]
    fn small_suites_pass() {
        for s in [Suite::Chebyshev, Suite::Counts] {
            let r = run_suite(s, 1).unwrap();
            for c in &r.checks {
                assert!(c.passed(), "{}: {:?}", c.name, c.failures);
                assert!(c.cases > 0, "{}", c.name);
            }
        }
    }
}
