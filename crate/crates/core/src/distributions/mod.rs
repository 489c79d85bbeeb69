//! Coefficient measures, exact laws of `A mod D`, the equidistribution
//! defect `Delta^R`, Fourier-side quantities and the experiment engine.

mod experiment;

pub use experiment::{run_experiment, ExperimentConfig, ExperimentReport, Mode, StatRow};

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, is_prime, prime_divisors, primes};
use crate::error::{Error, Result};
use crate::fppoly::{chebyshev_fp, enumerate_monic, enumerate_reciprocal_mod_p, FpPoly, Prime};
use crate::limits;
use crate::reciprocal::RecPoly;
use crate::residues::{laurent_residue, psi_mj, rm_set};

/// Largest absolute value allowed in the support of a measure.
pub const SUPPORT_BOUND: i64 = 1_000_000_000_000;

/// Finitely supported probability measure on Z with exact weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    atoms: BTreeMap<i64, BigRational>,
}

impl Measure {
    /// Merges repeated atoms; weights must be positive and sum to 1.
    pub fn new(atoms: impl IntoIterator<Item = (i64, BigRational)>) -> Result<Self> {
        let mut merged: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (a, w) in atoms {
            if !w.is_positive() {
                return Err(Error::InvalidMeasure(format!("weight {w} at {a} is not positive")));
            }
            if a.unsigned_abs() > SUPPORT_BOUND as u64 {
                return Err(Error::InvalidMeasure(format!("atom {a} exceeds the support bound")));
            }
            *merged.entry(a).or_insert_with(BigRational::zero) += w;
        }
        let total: BigRational = merged.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}, not 1")));
        }
        Ok(Measure { atoms: merged })
    }

    /// Uniform on `lo..=hi`.
    pub fn uniform(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidMeasure(format!("empty range {lo}..={hi}")));
        }
        let n = (hi as i128 - lo as i128 + 1) as u128;
        limits::require("uniform support", Some(n), limits::enum_cap())?;
        let w = BigRational::new(BigInt::one(), BigInt::from(n));
        Self::new((lo..=hi).map(|a| (a, w.clone())))
    }

    pub fn dirac(a: i64) -> Self {
        Self::new([(a, BigRational::one())]).expect("a point mass is a measure")
    }

    pub fn atoms(&self) -> &BTreeMap<i64, BigRational> {
        &self.atoms
    }

    pub fn support_size(&self) -> usize {
        self.atoms.len()
    }

    /// `sum_a mu(a) e(a theta)`, with `a theta` reduced mod 1 exactly.
    pub fn fourier(&self, theta: Rational64) -> Complex64 {
        let (n, d) = (*theta.numer() as i128, *theta.denom() as i128);
        self.atoms
            .iter()
            .map(|(&a, w)| {
                let r = (a as i128 * n).rem_euclid(d);
                e_frac(r as f64 / d as f64) * w.to_f64().unwrap_or(0.0)
            })
            .sum()
    }

    /// The projection `mu mod p` as a weight per residue.
    pub fn project(&self, p: Prime) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); p.get() as usize];
        for (&a, w) in &self.atoms {
            out[p.reduce_i64(a) as usize] += w;
        }
        out
    }

    /// Joint law of `(a mod p_1, ..., a mod p_r)`.
    pub fn joint_projection(&self, ps: &[Prime]) -> BTreeMap<Vec<u64>, BigRational> {
        let mut out: BTreeMap<Vec<u64>, BigRational> = BTreeMap::new();
        for (&a, w) in &self.atoms {
            let key = ps.iter().map(|p| p.reduce_i64(a)).collect();
            *out.entry(key).or_insert_with(BigRational::zero) += w;
        }
        out
    }

    /// `max_b mu(b + pZ)`.
    pub fn max_residue_mass(&self, p: Prime) -> BigRational {
        self.project(p).into_iter().max().expect("p >= 2")
    }
}

/// `e(x) = exp(2 pi i x)`.
fn e_frac(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * x)
}

/// Measures `mu_0..mu_{m-1}` for the free coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasureSeq {
    Broadcast(Measure),
    PerIndex(Vec<Measure>),
}

impl From<Measure> for MeasureSeq {
    fn from(mu: Measure) -> Self {
        MeasureSeq::Broadcast(mu)
    }
}

impl MeasureSeq {
    pub fn get(&self, j: usize) -> &Measure {
        match self {
            MeasureSeq::Broadcast(mu) => mu,
            MeasureSeq::PerIndex(v) => &v[j],
        }
    }

    pub fn check_len(&self, m: usize) -> Result<()> {
        match self {
            MeasureSeq::PerIndex(v) if v.len() != m => Err(Error::SizeMismatch(v.len(), m)),
            _ => Ok(()),
        }
    }

    /// Number of points in the support of the product law, if it fits.
    pub fn support_count(&self, m: usize) -> Option<u128> {
        (0..m).try_fold(1u128, |acc, j| acc.checked_mul(self.get(j).support_size() as u128))
    }

    /// `max_j max_b mu_j(b + pZ)`.
    pub fn max_residue_mass(&self, m: usize, p: Prime) -> BigRational {
        (0..m.max(1))
            .map(|j| self.get(j).max_residue_mass(p))
            .max()
            .expect("nonempty")
    }
}

/// Structured measure description as read from config files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum MeasureSpec {
    Uniform { lo: i64, hi: i64 },
    Atoms { weights: Vec<(i64, String)> },
    PerIndex { list: Vec<MeasureSpec> },
}

impl MeasureSpec {
    pub fn build(&self) -> Result<MeasureSeq> {
        match self {
            MeasureSpec::PerIndex { list } => list
                .iter()
                .map(|s| s.build_single())
                .collect::<Result<Vec<_>>>()
                .map(MeasureSeq::PerIndex),
            single => single.build_single().map(MeasureSeq::Broadcast),
        }
    }

    fn build_single(&self) -> Result<Measure> {
        match self {
            MeasureSpec::Uniform { lo, hi } => Measure::uniform(*lo, *hi),
            MeasureSpec::Atoms { weights } => {
                let parsed = weights
                    .iter()
                    .map(|(a, w)| {
                        BigRational::from_str(w.trim())
                            .map(|w| (*a, w))
                            .map_err(|_| Error::InvalidMeasure(format!("bad weight {w:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Measure::new(parsed)
            }
            MeasureSpec::PerIndex { .. } => Err(Error::InvalidMeasure("per_index lists cannot nest".into())),
        }
    }
}

/// ChaCha8 stream `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Inverse CDF over integer weights with a common denominator.
#[derive(Clone, Debug)]
struct Cdf {
    values: Vec<i64>,
    cumulative: Vec<u128>,
}

impl Cdf {
    fn new(mu: &Measure) -> Result<Self> {
        let common = mu.atoms.values().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let mut cumulative = Vec::with_capacity(mu.atoms.len());
        let mut acc = 0u128;
        for w in mu.atoms.values() {
            let units = (w.numer() * (&common / w.denom()))
                .to_u128()
                .ok_or_else(|| Error::InvalidMeasure("common denominator too large".into()))?;
            acc += units;
            cumulative.push(acc);
        }
        Ok(Cdf {
            values: mu.atoms.keys().copied().collect(),
            cumulative,
        })
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> i64 {
        let total = *self.cumulative.last().expect("nonempty measure");
        let u = rng.gen_range(0..total);
        self.values[self.cumulative.partition_point(|&c| c <= u)]
    }
}

/// Draws monic reciprocal polynomials of half-degree `m`.
#[derive(Clone, Debug)]
pub struct Sampler {
    m: usize,
    tables: Vec<Cdf>,
}

impl Sampler {
    pub fn new(mus: &MeasureSeq, m: usize) -> Result<Self> {
        mus.check_len(m)?;
        let tables = match mus {
            MeasureSeq::Broadcast(mu) => vec![Cdf::new(mu)?],
            MeasureSeq::PerIndex(v) => v.iter().map(Cdf::new).collect::<Result<_>>()?,
        };
        Ok(Sampler { m, tables })
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> RecPoly {
        let mut half: Vec<BigInt> = (0..self.m)
            .map(|j| BigInt::from(self.tables[j.min(self.tables.len() - 1)].draw(rng)))
            .collect();
        half.push(BigInt::one());
        RecPoly::new(half).expect("top coefficient is 1")
    }

    /// Sample number `index` of the run seeded by `seed`.
    pub fn sample_indexed(&self, seed: u64, index: u64) -> RecPoly {
        self.sample(&mut substream(seed, index))
    }
}

pub fn sample_reciprocal<R: Rng>(mus: &MeasureSeq, m: usize, rng: &mut R) -> Result<RecPoly> {
    Ok(Sampler::new(mus, m)?.sample(rng))
}

/// Every polynomial in the support of the product law with its probability,
/// in lexicographic order of `(a_0, ..., a_{m-1})`.
pub fn enumerate_support(mus: &MeasureSeq, m: usize) -> Result<Vec<(RecPoly, BigRational)>> {
    mus.check_len(m)?;
    limits::require("support enumeration", mus.support_count(m), limits::enum_cap())?;
    let mut out: Vec<(Vec<i64>, BigRational)> = vec![(Vec::new(), BigRational::one())];
    for j in 0..m {
        out = out
            .into_iter()
            .flat_map(|(prefix, w)| {
                mus.get(j).atoms.iter().map(move |(&a, v)| {
                    let mut next = prefix.clone();
                    next.push(a);
                    (next, &w * v)
                })
            })
            .collect();
    }
    Ok(out
        .into_iter()
        .map(|(mut half, w)| {
            half.push(1);
            (RecPoly::from_i64s(&half).expect("monic"), w)
        })
        .collect())
}

type Law = BTreeMap<Vec<u64>, BigRational>;

/// One modulus of a multi-prime tuple.
#[derive(Clone, Debug)]
struct Component {
    d: FpPoly,
    width: usize,
}

impl Component {
    fn new(d: FpPoly) -> Self {
        let width = d.degree().expect("nonzero modulus");
        Component { d, width }
    }

    fn p(&self) -> Prime {
        self.d.modulus()
    }

    fn pad(&self, f: &FpPoly) -> Vec<u64> {
        let r = f.rem(&self.d);
        (0..self.width).map(|i| r.coeff(i)).collect()
    }
}

fn state_space(comps: &[Component]) -> Result<u128> {
    let size = comps.iter().try_fold(1u128, |acc, c| {
        acc.checked_mul(limits::checked_pow(c.p().get(), c.width)?)
    });
    limits::require("exact residue state space", size, limits::state_cap())
}

/// Exact joint law of `(fixed_i + sum_j a_j step(j, i)) mod D_i`, keyed by the
/// concatenated padded coefficient vectors.
fn linear_law(
    mus: &MeasureSeq,
    m: usize,
    comps: &[Component],
    step: impl Fn(usize, usize) -> FpPoly,
    fixed: &[FpPoly],
) -> Result<Law> {
    state_space(comps)?;
    let primes: Vec<Prime> = comps.iter().map(Component::p).collect();
    let lane: Vec<Prime> = comps.iter().flat_map(|c| std::iter::repeat_n(c.p(), c.width)).collect();
    let start: Vec<u64> = comps.iter().zip(fixed).flat_map(|(c, f)| c.pad(f)).collect();
    let mut law: Law = BTreeMap::from([(start, BigRational::one())]);
    for j in 0..m {
        let vecs: Vec<Vec<u64>> = comps.iter().enumerate().map(|(i, c)| c.pad(&step(j, i))).collect();
        let mut moves: Law = BTreeMap::new();
        for (res, w) in mus.get(j).joint_projection(&primes) {
            let mv: Vec<u64> = comps
                .iter()
                .enumerate()
                .flat_map(|(i, c)| {
                    let r = res[i];
                    vecs[i].iter().map(move |&x| c.p().mul(x, r))
                })
                .collect();
            *moves.entry(mv).or_insert_with(BigRational::zero) += w;
        }
        if moves.len() == 1 && moves.keys().next().unwrap().iter().all(|&x| x == 0) {
            continue;
        }
        let mut next: Law = BTreeMap::new();
        for (x, w) in &law {
            for (y, v) in &moves {
                let z: Vec<u64> = x.iter().zip(y).zip(&lane).map(|((a, b), p)| p.add(*a, *b)).collect();
                *next.entry(z).or_insert_with(BigRational::zero) += w * v;
            }
        }
        law = next;
    }
    Ok(law)
}

/// `T^{m-j} + T^{m+j}`, or `T^m` when `j = 0`.
fn coefficient_vector(p: Prime, m: usize, j: usize) -> FpPoly {
    if j == 0 {
        FpPoly::monomial(p, 1, m)
    } else {
        &FpPoly::monomial(p, 1, m - j) + &FpPoly::monomial(p, 1, m + j)
    }
}

fn fixed_part(p: Prime, m: usize) -> FpPoly {
    &FpPoly::one(p) + &FpPoly::monomial(p, 1, 2 * m)
}

fn reciprocal_law(mus: &MeasureSeq, m: usize, comps: &[Component]) -> Result<Law> {
    mus.check_len(m)?;
    let fixed: Vec<FpPoly> = comps.iter().map(|c| fixed_part(c.p(), m)).collect();
    linear_law(mus, m, comps, |j, i| coefficient_vector(comps[i].p(), m, j), &fixed)
}

fn half_degree(d: &FpPoly) -> Result<usize> {
    let deg = d.degree().ok_or(Error::ZeroPolynomial)?;
    if !d.is_monic() || !d.is_reciprocal() || deg % 2 == 1 {
        return Err(Error::NotReciprocal);
    }
    Ok(deg / 2)
}

/// Exact law of `A mod D` for a monic reciprocal `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModDDistribution {
    d: FpPoly,
    m: usize,
    probs: Law,
}

impl ModDDistribution {
    pub fn modulus(&self) -> &FpPoly {
        &self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn comp(&self) -> Component {
        Component::new(self.d.clone())
    }

    pub fn prob(&self, c: &FpPoly) -> BigRational {
        self.probs
            .get(&self.comp().pad(c))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Support with probabilities, residues in ascending coefficient order.
    pub fn iter(&self) -> impl Iterator<Item = (FpPoly, &BigRational)> + '_ {
        let p = self.d.modulus();
        self.probs.iter().map(move |(k, w)| (FpPoly::new(p, k.clone()), w))
    }

    pub fn total_mass(&self) -> BigRational {
        self.probs.values().sum()
    }

    /// Push-forward to a divisor `D'` of `D`.
    pub fn marginal(&self, d2: &FpPoly) -> Result<ModDDistribution> {
        half_degree(d2)?;
        if !d2.divides(&self.d) {
            return Err(Error::InvalidArgument("marginal modulus must divide D".into()));
        }
        let comp = Component::new(d2.clone());
        let mut probs: Law = BTreeMap::new();
        for (c, w) in self.iter() {
            *probs.entry(comp.pad(&c)).or_insert_with(BigRational::zero) += w;
        }
        Ok(ModDDistribution {
            d: d2.clone(),
            m: self.m,
            probs,
        })
    }

    /// Every support point lies in `R_m(D)`.
    pub fn support_in_rm(&self) -> Result<bool> {
        if self.d.is_one() {
            return Ok(true);
        }
        let rm: std::collections::HashSet<FpPoly> = rm_set(&self.d, self.m)?.into_iter().collect();
        Ok(self.iter().all(|(c, _)| rm.contains(&c)))
    }
}

/// Exact law of `A mod D` when `deg D = 2k` with `k <= m`.
pub fn exact_mod_d_distribution(mus: &MeasureSeq, m: usize, d: &FpPoly) -> Result<ModDDistribution> {
    let k = half_degree(d)?;
    if k > m {
        return Err(Error::InvalidArgument(format!("deg D / 2 = {k} exceeds m = {m}")));
    }
    let comp = Component::new(d.clone());
    let probs = reciprocal_law(mus, m, std::slice::from_ref(&comp))?;
    Ok(ModDDistribution { d: d.clone(), m, probs })
}

fn check_primes(ps: &[u64]) -> Result<Vec<Prime>> {
    if ps.len() > 2 {
        return Err(Error::CapExceeded {
            what: "primes in exact mode",
            needed: ps.len() as u128,
            cap: 2,
        });
    }
    let out = ps.iter().map(|&p| Prime::new(p)).collect::<Result<Vec<_>>>()?;
    if out.len() == 2 && out[0] == out[1] {
        return Err(Error::InvalidArgument("primes must be distinct".into()));
    }
    Ok(out)
}

fn cartesian(lists: &[Vec<FpPoly>]) -> Vec<Vec<FpPoly>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |d| {
                    let mut t = prefix.clone();
                    t.push(d.clone());
                    t
                })
            })
            .collect()
    })
}

fn concat_product(sets: &[Vec<Vec<u64>>]) -> Vec<Vec<u64>> {
    sets.iter().fold(vec![Vec::new()], |acc, set| {
        acc.iter()
            .flat_map(|prefix| {
                set.iter().map(move |v| {
                    let mut t = prefix.clone();
                    t.extend_from_slice(v);
                    t
                })
            })
            .collect()
    })
}

fn max_defect(law: &Law, admissible: &[Vec<u64>], target: &BigRational) -> BigRational {
    let zero = BigRational::zero();
    admissible
        .iter()
        .map(|c| (law.get(c).unwrap_or(&zero) - target).abs())
        .max()
        .unwrap_or(zero)
}

/// One term of `Delta^R`: a modulus tuple and its defect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaTerm {
    pub moduli: Vec<FpPoly>,
    pub defect: BigRational,
}

/// Terms of `Delta^R_P(m; kmax)` over reciprocal tuples with `deg D_p <= 2 kmax`.
pub fn delta_r_terms(mus: &MeasureSeq, m: usize, primes: &[u64], kmax: usize) -> Result<Vec<DeltaTerm>> {
    let ps = check_primes(primes)?;
    mus.check_len(m)?;
    let mut lists = Vec::new();
    for &p in &ps {
        let t2p1 = FpPoly::from_i64s(p, &[1, 0, 1]);
        let mut list = Vec::new();
        for k in 0..=kmax {
            list.extend(enumerate_reciprocal_mod_p(p, k)?.filter(|d| p.get() != 2 || !t2p1.divides(d)));
        }
        lists.push(list);
    }
    cartesian(&lists)
        .into_par_iter()
        .map(|tuple| {
            let comps: Vec<Component> = tuple.iter().cloned().map(Component::new).collect();
            let law = reciprocal_law(mus, m, &comps)?;
            let mut norm = BigInt::one();
            let mut sets = Vec::new();
            for c in &comps {
                norm *= BigInt::from(c.p().get()).pow(c.width as u32 / 2);
                if c.width == 0 {
                    sets.push(vec![Vec::new()]);
                } else {
                    sets.push(rm_set(&c.d, m)?.iter().map(|r| c.pad(r)).collect());
                }
            }
            let target = BigRational::new(BigInt::one(), norm);
            let defect = max_defect(&law, &concat_product(&sets), &target);
            Ok(DeltaTerm { moduli: tuple, defect })
        })
        .collect()
}

/// `Delta^R_P(m; kmax)` as an exact rational; at most two primes.
pub fn delta_r(mus: &MeasureSeq, m: usize, primes: &[u64], kmax: usize) -> Result<BigRational> {
    Ok(delta_r_terms(mus, m, primes, kmax)?.into_iter().map(|t| t.defect).sum())
}

/// Trace-side defect `Delta_{R,P}(m; kmax)`: monic `D_R` of degree at most
/// `kmax` with `T` not dividing `D_R`, all residues mod `D_R` admissible.
pub fn delta_trace(mus: &MeasureSeq, m: usize, primes: &[u64], kmax: usize) -> Result<BigRational> {
    let ps = check_primes(primes)?;
    mus.check_len(m)?;
    if m == 0 {
        return Err(Error::InvalidArgument("trace side needs m >= 1".into()));
    }
    let mut lists = Vec::new();
    for &p in &ps {
        let mut list = Vec::new();
        for k in 0..=kmax {
            list.extend(enumerate_monic(p, k)?.filter(|d| d.coeff(0) != 0));
        }
        lists.push(list);
    }
    let terms = cartesian(&lists)
        .into_par_iter()
        .map(|tuple| {
            let comps: Vec<Component> = tuple.into_iter().map(Component::new).collect();
            let fixed: Vec<FpPoly> = comps.iter().map(|c| chebyshev_fp(m as i64, c.p())).collect();
            let law = linear_law(
                mus,
                m,
                &comps,
                |j, i| {
                    if j == 0 {
                        FpPoly::one(comps[i].p())
                    } else {
                        chebyshev_fp(j as i64, comps[i].p())
                    }
                },
                &fixed,
            )?;
            let mut norm = BigInt::one();
            let mut sets = Vec::new();
            for c in &comps {
                let p = c.p().get();
                norm *= BigInt::from(p).pow(c.width as u32);
                let size = limits::require("trace residues", limits::checked_pow(p, c.width), limits::state_cap())?;
                sets.push((0..size as u64).map(|i| crate::linalg::decode(i, p, c.width)).collect());
            }
            let target = BigRational::new(BigInt::one(), norm);
            Ok(max_defect(&law, &concat_product(&sets), &target))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.into_iter().sum())
}

fn check_tuple(bs: &[FpPoly], ds: &[FpPoly]) -> Result<()> {
    if bs.len() != ds.len() {
        return Err(Error::SizeMismatch(bs.len(), ds.len()));
    }
    for (i, (b, d)) in bs.iter().zip(ds).enumerate() {
        if b.modulus() != d.modulus() {
            return Err(Error::ModulusMismatch(b.modulus().get(), d.modulus().get()));
        }
        half_degree(d)?;
        if ds[..i].iter().any(|e| e.modulus() == d.modulus()) {
            return Err(Error::InvalidArgument("one modulus per prime".into()));
        }
    }
    Ok(())
}

/// Sum of `x_i / p_i` reduced into `[0, 1)`.
fn angle(parts: impl Iterator<Item = (u64, Prime)>) -> Result<Rational64> {
    let mut acc = Rational64::zero();
    for (x, p) in parts {
        acc += Rational64::new(x as i64, p.get() as i64);
    }
    Ok(acc - acc.floor())
}

/// `psi^{(m,j)}(X)` for `j < m`, with `X = sum_i B_i / D_i`, as angles in `[0, 1)`.
pub fn psi_angles(m: usize, bs: &[FpPoly], ds: &[FpPoly]) -> Result<Vec<Rational64>> {
    check_tuple(bs, ds)?;
    (0..m)
        .map(|j| {
            let vals = bs
                .iter()
                .zip(ds)
                .map(|(b, d)| Ok((psi_mj(b, d, m, j)?, d.modulus())))
                .collect::<Result<Vec<_>>>()?;
            angle(vals.into_iter())
        })
        .collect()
}

/// `sigma_P(m; X) = |prod_j mu_j^(psi^{(m,j)}(X))|`.
pub fn sigma(mus: &MeasureSeq, m: usize, bs: &[FpPoly], ds: &[FpPoly]) -> Result<f64> {
    mus.check_len(m)?;
    let thetas = psi_angles(m, bs, ds)?;
    Ok(thetas
        .iter()
        .enumerate()
        .map(|(j, &t)| mus.get(j).fourier(t))
        .product::<Complex64>()
        .norm())
}

/// Closed form of `E[e(psi(A X))]`.
pub fn fourier_expectation(mus: &MeasureSeq, m: usize, bs: &[FpPoly], ds: &[FpPoly]) -> Result<Complex64> {
    mus.check_len(m)?;
    let thetas = psi_angles(m, bs, ds)?;
    let shift = bs
        .iter()
        .zip(ds)
        .map(|(b, d)| {
            let p = d.modulus();
            Ok((
                p.add(laurent_residue(b, d, 0)?, laurent_residue(b, d, 2 * m as i64)?),
                p,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let front = e_frac(angle(shift.into_iter())?.to_f64().unwrap_or(0.0));
    Ok(thetas
        .iter()
        .enumerate()
        .fold(front, |acc, (j, &t)| acc * mus.get(j).fourier(t)))
}

/// `e(psi(C X))` for an integer polynomial `C`, via residues of `C B_i mod D_i`.
pub fn character(c: &RecPoly, bs: &[FpPoly], ds: &[FpPoly]) -> Result<Complex64> {
    check_tuple(bs, ds)?;
    let parts = bs
        .iter()
        .zip(ds)
        .map(|(b, d)| {
            let p = d.modulus();
            let cb = c.reduce(p).mulmod(b, d);
            Ok((laurent_residue(&cb, d, 0)?, p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(e_frac(angle(parts.into_iter())?.to_f64().unwrap_or(0.0)))
}

/// `max_j max_{0 < s < P} |mu_j^(s/P)|`.
pub fn beta(mus: &MeasureSeq, m: usize, big_p: u64) -> f64 {
    let mut best: f64 = 0.0;
    for j in 0..m.max(1) {
        for s in 1..big_p {
            best = best.max(mus.get(j).fourier(Rational64::new(s as i64, big_p as i64)).norm());
        }
    }
    best
}

/// Where the Fourier sum is largest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourierWitness {
    pub j: usize,
    pub q: u64,
    pub l: u64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FourierCheck {
    pub holds: bool,
    pub bound: f64,
    pub worst: Option<FourierWitness>,
    /// Smallest `m` with `1 - m^{-1/10}` above the worst sum (infinite if
    /// the worst sum is at least 1).
    pub threshold_m: f64,
}

/// Largest `Q^{-1/2} sum_{k<Q} |mu^(k/Q + l/R)|` over `QR = P`, `Q > 1`, `l mod R`.
fn fourier_worst(mu: &Measure, j: usize, big_p: u64) -> Option<FourierWitness> {
    let table: Vec<f64> = (0..big_p)
        .map(|s| mu.fourier(Rational64::new(s as i64, big_p as i64)).norm())
        .collect();
    let mut worst: Option<FourierWitness> = None;
    for q in divisors(big_p).into_iter().filter(|&q| q > 1) {
        let r = big_p / q;
        for l in 0..r {
            let sum: f64 = (0..q).map(|k| table[((k * r + l * q) % big_p) as usize]).sum();
            let value = sum / (q as f64).sqrt();
            if worst.as_ref().is_none_or(|w| value > w.value) {
                worst = Some(FourierWitness { j, q, l, value });
            }
        }
    }
    worst
}

/// Tests `Q^{-1/2} sum_{k<Q} |mu_j^(k/Q + l/R)| <= 1 - m^{-1/10}` over all
/// factorizations `P = QR` with `Q > 1`, all `l mod R` and all `j < m`.
pub fn check_fourier_condition(mus: &MeasureSeq, big_p: u64, m: usize) -> Result<FourierCheck> {
    let ps = prime_divisors(big_p);
    if big_p == 0 || ps.iter().product::<u64>() != big_p {
        return Err(Error::InvalidArgument(format!("{big_p} is not squarefree")));
    }
    limits::require("Fourier table", Some(big_p as u128), limits::state_cap())?;
    let bound = 1.0 - (m as f64).powf(-0.1);
    let indices: Vec<usize> = match mus {
        MeasureSeq::Broadcast(_) => vec![0],
        MeasureSeq::PerIndex(v) => (0..v.len().min(m)).collect(),
    };
    let worst = indices
        .into_iter()
        .filter_map(|j| fourier_worst(mus.get(j), j, big_p))
        .fold(None::<FourierWitness>, |acc, w| match acc {
            Some(a) if a.value >= w.value => Some(a),
            _ => Some(w),
        });
    let holds = worst.as_ref().is_none_or(|w| w.value <= bound);
    let threshold_m = match &worst {
        None => 1.0,
        Some(w) if w.value < 1.0 => (1.0 - w.value).powf(-10.0),
        Some(_) => f64::INFINITY,
    };
    Ok(FourierCheck {
        holds,
        bound,
        worst,
        threshold_m,
    })
}

fn prime_quadruples(limit: u64) -> Vec<[u64; 4]> {
    let ps: Vec<u64> = primes().take_while(|&p| p < limit).collect();
    let n = ps.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    out.push([ps[a], ps[b], ps[c], ps[d]]);
                }
            }
        }
    }
    out
}

/// First quadruple of primes below `limit` (lexicographic) passing
/// [`check_fourier_condition`] at this `m`.
pub fn find_fourier_primes(mus: &MeasureSeq, m: usize, limit: u64) -> Result<Option<([u64; 4], FourierCheck)>> {
    for quad in prime_quadruples(limit) {
        let check = check_fourier_condition(mus, quad.iter().product(), m)?;
        if check.holds {
            return Ok(Some((quad, check)));
        }
    }
    Ok(None)
}

/// Quadruple of primes below `limit` with the smallest worst Fourier sum,
/// checked at `m`; ties go to the lexicographically first.
pub fn best_fourier_primes(mus: &MeasureSeq, m: usize, limit: u64) -> Result<Option<([u64; 4], FourierCheck)>> {
    let checks = prime_quadruples(limit)
        .into_par_iter()
        .map(|quad| Ok((quad, check_fourier_condition(mus, quad.iter().product(), m)?)))
        .collect::<Result<Vec<_>>>()?;
    let value = |c: &FourierCheck| c.worst.as_ref().map_or(0.0, |w| w.value);
    Ok(checks.into_iter().fold(None, |best, (quad, c)| match best {
        Some((bq, bc)) if value(&bc) <= value(&c) => Some((bq, bc)),
        _ => Some((quad, c)),
    }))
}

/// Outcome of [`div_probability_bound_check`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DivBoundReport {
    pub p: u64,
    /// `1 - max_j max_b mu_j(b + pZ)`, as `n/d`.
    pub delta: String,
    pub checked: usize,
    /// Largest `P(D | A_p) / e^{-delta k}`.
    pub worst_ratio: f64,
    pub violations: Vec<String>,
}

/// Checks `P(D | A_p) <= e^{-delta k}` for every monic reciprocal `D` of
/// degree `2k`, `1 <= k <= min(kmax, m)`.
pub fn div_probability_bound_check(mus: &MeasureSeq, m: usize, p: u64, kmax: usize) -> Result<DivBoundReport> {
    let prime = Prime::new(p)?;
    mus.check_len(m)?;
    let delta = BigRational::one() - mus.max_residue_mass(m, prime);
    let delta_f = delta.to_f64().unwrap_or(0.0);
    let mut moduli = Vec::new();
    for k in 1..=kmax.min(m) {
        moduli.extend(enumerate_reciprocal_mod_p(prime, k)?.map(|d| (k, d)));
    }
    let results = moduli
        .into_par_iter()
        .map(|(k, d)| {
            let law = exact_mod_d_distribution(mus, m, &d)?;
            let prob = law.prob(&FpPoly::zero(prime)).to_f64().unwrap_or(0.0);
            let bound = (-delta_f * k as f64).exp();
            Ok((d, prob, bound))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = DivBoundReport {
        p,
        delta: delta.to_string(),
        checked: results.len(),
        worst_ratio: 0.0,
        violations: Vec::new(),
    };
    for (d, prob, bound) in results {
        report.worst_ratio = report.worst_ratio.max(prob / bound);
        if prob > bound * (1.0 + 1e-12) {
            report
                .violations
                .push(format!("D = {:?}: P = {prob} > {bound}", d.coeffs()));
        }
    }
    Ok(report)
}

/// True when every prime of `ps` is prime; used by config validation.
pub(crate) fn all_prime(ps: &[u64]) -> bool {
    ps.iter().all(|&p| is_prime(p))
}
