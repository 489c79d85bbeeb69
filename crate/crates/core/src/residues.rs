//! Laurent residues at infinity, reciprocal division with remainder, major
//! residue spaces `N_m(D)` and systems of good representatives.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fppoly::{enumerate_reciprocal_mod_p, FpPoly, Prime};
use crate::limits;
use crate::linalg;
use crate::reciprocal::{from_trace_fp, reciprocal_gcd_fp, shifted_half_fp, to_trace_fp};

/// Coefficients of the expansion of `1/D` in `F_p((1/T))`.
struct InverseSeries {
    deg: usize,
    /// `g[n]` is the coefficient of `T^{-deg-n}`.
    g: Vec<u64>,
}

impl InverseSeries {
    fn new(d: &FpPoly, terms: usize) -> Self {
        let p = d.modulus();
        let deg = d.degree().expect("nonzero modulus");
        let inv_lc = p.inv(d.lc());
        let mut g: Vec<u64> = Vec::with_capacity(terms);
        for n in 0..terms {
            let mut acc = u64::from(n == 0);
            for i in 1..=n.min(deg) {
                acc = p.sub(acc, p.mul(d.coeff(deg - i), g[n - i]));
            }
            g.push(p.mul(acc, inv_lc));
        }
        InverseSeries { deg, g }
    }

    /// Coefficient of `T^e` in `1/D`.
    fn at(&self, e: i64) -> u64 {
        let n = -e - self.deg as i64;
        if n < 0 {
            0
        } else {
            self.g[n as usize]
        }
    }

    /// `res(T^i B / D)`.
    fn residue(&self, p: Prime, b: &FpPoly, i: i64) -> u64 {
        b.coeffs().iter().enumerate().fold(0, |acc, (t, &bt)| {
            if bt == 0 {
                acc
            } else {
                p.add(acc, p.mul(bt, self.at(-1 - i - t as i64)))
            }
        })
    }
}

fn same_field(a: &FpPoly, b: &FpPoly) -> Result<()> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus().get(), b.modulus().get()));
    }
    Ok(())
}

/// Coefficient of `T^{-1}` in the expansion at infinity of `T^i B / D`.
pub fn laurent_residue(b: &FpPoly, d: &FpPoly, i: i64) -> Result<u64> {
    same_field(b, d)?;
    let deg = d.degree().ok_or(Error::DivisionByZeroPoly)?;
    let needed = 2 + i + b.deg() as i64 - deg as i64;
    let series = InverseSeries::new(d, needed.max(1) as usize);
    Ok(series.residue(d.modulus(), b, i))
}

/// `psi^{(m,j)}(B/D)` as an element of `F_p`.
pub fn psi_mj(b: &FpPoly, d: &FpPoly, m: usize, j: usize) -> Result<u64> {
    let (m, j) = (m as i64, j as i64);
    let here = laurent_residue(b, d, m - j)?;
    if j == 0 {
        return Ok(here);
    }
    Ok(d.modulus().add(here, laurent_residue(b, d, m + j)?))
}

/// Half-degree of a monic reciprocal modulus.
fn modulus_half_degree(d: &FpPoly) -> Result<usize> {
    let deg = d.degree().ok_or(Error::ZeroPolynomial)?;
    if !d.is_monic() || !d.is_reciprocal() || deg % 2 == 1 {
        return Err(Error::NotReciprocal);
    }
    Ok(deg / 2)
}

fn t_inverse(d: &FpPoly) -> FpPoly {
    FpPoly::x(d.modulus())
        .inverse_mod(d)
        .expect("T is invertible modulo a reciprocal polynomial")
}

/// Class of `T^e` modulo `D`, for any integer `e`.
fn monomial_class(d: &FpPoly, e: i64) -> FpPoly {
    let p = d.modulus();
    if e >= 0 {
        FpPoly::x(p).powmod(e as u64, d)
    } else {
        t_inverse(d).powmod(e.unsigned_abs(), d)
    }
}

/// Laurent polynomial `sum_{i<len} c_i (T^{center-i} + T^{center+i})`, the
/// `i = 0` term counted once. Elements of `T^{m-k+1} R^sh_p(k-1)` have this
/// form with `center = m` and `len = k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CenteredRec {
    #[serde(skip)]
    p: Prime,
    center: usize,
    half: Vec<u64>,
}

impl CenteredRec {
    pub fn new(p: Prime, center: usize, half: Vec<u64>) -> Self {
        let half = half.into_iter().map(|c| c % p.get()).collect();
        CenteredRec { p, center, half }
    }

    pub fn center(&self) -> usize {
        self.center
    }

    pub fn half(&self) -> &[u64] {
        &self.half
    }

    pub fn lowest_exponent(&self) -> i64 {
        self.center as i64 + 1 - self.half.len() as i64
    }

    /// `T^{-s}` times this, where `s` is the lowest exponent (or 0 if that
    /// is positive), as an honest polynomial.
    fn shifted_dense(&self) -> (FpPoly, i64) {
        let s = self.lowest_exponent().min(0);
        let base = (self.center as i64 - s) as usize;
        let mut v = vec![0u64; base + self.half.len()];
        for (i, &c) in self.half.iter().enumerate() {
            v[base - i] = c;
            v[base + i] = c;
        }
        (FpPoly::new(self.p, v), s)
    }

    /// The dense polynomial, when all exponents are nonnegative.
    pub fn to_dense(&self) -> Option<FpPoly> {
        let (poly, s) = self.shifted_dense();
        (s == 0).then_some(poly)
    }

    /// Class modulo `D`, inverting `T` for negative exponents.
    pub fn residue(&self, d: &FpPoly) -> FpPoly {
        let (poly, s) = self.shifted_dense();
        let r = poly.rem(d);
        if s == 0 {
            r
        } else {
            r.mulmod(&monomial_class(d, s), d)
        }
    }
}

/// Reciprocal remainder of `C` in `R^sh_p(m)` modulo a monic reciprocal `D`
/// of degree `2k`: the unique element of `T^{m-k+1} R^sh_p(k-1)` congruent
/// to `C`.
pub fn brmod(c: &FpPoly, d: &FpPoly, m: usize) -> Result<CenteredRec> {
    same_field(c, d)?;
    let k = modulus_half_degree(d)?;
    if k == 0 {
        return Err(Error::InvalidArgument(
            "brmod needs a modulus of positive degree".into(),
        ));
    }
    let p = c.modulus();
    let mut half = shifted_half_fp(c, m)?;
    if k > m {
        half.resize(k, 0);
        return Ok(CenteredRec::new(p, m, half));
    }
    let rem = to_trace_fp(c, m)?.rem(&to_trace_fp(d, k)?);
    let dense = from_trace_fp(&rem, m)?;
    let mut half = shifted_half_fp(&dense, m)?;
    assert!(half[k..].iter().all(|&x| x == 0), "remainder escaped its space");
    half.truncate(k);
    let out = CenteredRec::new(p, m, half);
    let r = out.to_dense().expect("k <= m keeps exponents nonnegative");
    assert!(d.divides(&(c - &r)), "D does not divide C - R");
    Ok(out)
}

/// The set `R_m(D)`: classes of `T^{m-k+1} R^sh_p(k-1)` modulo `D`.
pub fn rm_set(d: &FpPoly, m: usize) -> Result<Vec<FpPoly>> {
    let k = modulus_half_degree(d)?;
    let p = d.modulus();
    if k == 0 {
        return Ok(vec![FpPoly::zero(p)]);
    }
    let total = limits::require("R_m(D)", limits::checked_pow(p.get(), k), limits::enum_cap())?;
    let set: BTreeSet<Vec<u64>> = (0..total as u64)
        .map(|idx| {
            let half = linalg::decode(idx, p.get(), k);
            CenteredRec::new(p, m, half).residue(d).coeffs().to_vec()
        })
        .collect();
    if set.len() as u128 != total {
        return Err(Error::RankViolation {
            expected: k,
            got: set.len(),
        });
    }
    Ok(set.into_iter().map(|c| FpPoly::new(p, c)).collect())
}

/// Whether the images of `R^sh_p(m)` and of `T^{m-k+1} R^sh_p(k-1)` in
/// `F_p[T]/(D)` coincide.
pub fn image_coincidence(d: &FpPoly, m: usize) -> Result<bool> {
    let p = d.modulus();
    let total = limits::require(
        "shifted reciprocal space",
        limits::checked_pow(p.get(), m + 1),
        limits::enum_cap(),
    )?;
    let full: BTreeSet<Vec<u64>> = (0..total as u64)
        .map(|idx| {
            let half = linalg::decode(idx, p.get(), m + 1);
            CenteredRec::new(p, m, half).residue(d).coeffs().to_vec()
        })
        .collect();
    let target: BTreeSet<Vec<u64>> = rm_set(d, m)?.iter().map(|c| c.coeffs().to_vec()).collect();
    Ok(full == target)
}

/// `N_m(D)` as the kernel of `B -> (psi^{(m,j)}(B/D))_{j<k}` on `F_p[T]/(D)`.
#[derive(Clone, Debug)]
pub struct MajorResidueSpace {
    d: FpPoly,
    m: usize,
    k: usize,
    /// Row `j` holds the functional `psi^{(m,j)}(./D)` on the monomial basis.
    functionals: Vec<Vec<u64>>,
    basis: Vec<FpPoly>,
}

impl MajorResidueSpace {
    fn build(d: &FpPoly, m: usize) -> Result<Self> {
        let k = modulus_half_degree(d)?;
        let p = d.modulus();
        let n = 2 * k;
        let series = InverseSeries::new(d, n.max(1));
        let mut functionals = Vec::with_capacity(k);
        for j in 0..k {
            // class of T^{m-j} (+ T^{m+j}); equals the Laurent definition
            // whenever m >= j
            let mut c = monomial_class(d, m as i64 - j as i64);
            if j > 0 {
                c = &c + &monomial_class(d, (m + j) as i64);
            }
            let row = (0..n).map(|t| series.residue(p, &c, t as i64)).collect();
            functionals.push(row);
        }
        let kernel = linalg::kernel(&functionals, n, p);
        if kernel.len() != k {
            return Err(Error::RankViolation {
                expected: k,
                got: kernel.len(),
            });
        }
        let basis = kernel.into_iter().map(|v| FpPoly::new(p, v)).collect();
        Ok(MajorResidueSpace {
            d: d.clone(),
            m,
            k,
            functionals,
            basis,
        })
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Half-degree of the modulus, which is also the dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn basis(&self) -> &[FpPoly] {
        &self.basis
    }

    pub fn cardinality(&self) -> u128 {
        limits::checked_pow(self.d.modulus().get(), self.k).unwrap_or(u128::MAX)
    }

    /// `(psi^{(m,j)}(B/D))_{j<k}`; identifies the coset of `B`.
    pub fn syndrome(&self, b: &FpPoly) -> Vec<u64> {
        let p = self.d.modulus();
        let r = b.rem(&self.d);
        self.functionals
            .iter()
            .map(|row| {
                r.coeffs()
                    .iter()
                    .zip(row)
                    .fold(0, |acc, (x, y)| p.add(acc, p.mul(*x, *y)))
            })
            .collect()
    }

    pub fn contains(&self, b: &FpPoly) -> bool {
        self.syndrome(b).iter().all(|&s| s == 0)
    }

    /// All `p^k` elements.
    pub fn elements(&self) -> impl Iterator<Item = FpPoly> + '_ {
        let p = self.d.modulus();
        let total = self.cardinality() as u64;
        (0..total).map(move |idx| {
            let coeffs = linalg::decode(idx, p.get(), self.k);
            self.basis
                .iter()
                .zip(coeffs)
                .fold(FpPoly::zero(p), |acc, (b, c)| &acc + &b.scale(c))
        })
    }
}

/// `N_m(D)` for a monic reciprocal `D` of positive degree.
pub fn major_space(d: &FpPoly, m: usize) -> Result<MajorResidueSpace> {
    if modulus_half_degree(d)? == 0 {
        return Err(Error::InvalidArgument(
            "major_space needs a modulus of positive degree".into(),
        ));
    }
    MajorResidueSpace::build(d, m)
}

pub fn is_major(b: &FpPoly, d: &FpPoly, m: usize) -> Result<bool> {
    same_field(b, d)?;
    Ok(major_space(d, m)?.contains(b))
}

/// Reciprocal gcd with the convention `(0, D)_r = D`.
fn rgcd(b: &FpPoly, d: &FpPoly) -> FpPoly {
    if b.is_zero() {
        d.clone()
    } else {
        reciprocal_gcd_fp(b, d).expect("nonzero inputs")
    }
}

/// Tie-break order: coefficient vector read from the top degree down.
fn lex_key(b: &FpPoly, n: usize) -> Vec<u64> {
    (0..n).rev().map(|i| b.coeff(i)).collect()
}

#[derive(Clone, Debug)]
struct ModulusReps {
    space: MajorResidueSpace,
    /// Keyed by syndrome: the representative and its reciprocal gcd with `D`.
    reps: BTreeMap<Vec<u64>, (FpPoly, FpPoly)>,
}

/// A system `L_m` of good representatives for every monic reciprocal `D`
/// of degree at most `2 max_k`.
#[derive(Clone, Debug)]
pub struct GoodRepresentatives {
    p: Prime,
    m: usize,
    max_k: usize,
    by_modulus: BTreeMap<Vec<u64>, ModulusReps>,
}

impl GoodRepresentatives {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    pub fn moduli(&self) -> impl Iterator<Item = FpPoly> + '_ {
        self.by_modulus.keys().map(|c| FpPoly::new(self.p, c.clone()))
    }

    pub fn space(&self, d: &FpPoly) -> Option<&MajorResidueSpace> {
        self.by_modulus.get(d.coeffs()).map(|r| &r.space)
    }

    /// `L_m(D)`, sorted.
    pub fn representatives(&self, d: &FpPoly) -> Option<Vec<FpPoly>> {
        let entry = self.by_modulus.get(d.coeffs())?;
        let mut v: Vec<FpPoly> = entry.reps.values().map(|(b, _)| b.clone()).collect();
        v.sort_by_key(|b| lex_key(b, 2 * entry.space.k));
        Some(v)
    }

    /// The element of `L_m(D)` in the coset of `B`.
    pub fn representative_of(&self, b: &FpPoly, d: &FpPoly) -> Option<FpPoly> {
        let entry = self.by_modulus.get(d.coeffs())?;
        entry.reps.get(&entry.space.syndrome(b)).map(|(r, _)| r.clone())
    }

    /// Minimal pairs `(G, H)`: `G` in `L_m(H)` with `(G, H)_r = 1`.
    pub fn minimal_pairs(&self) -> Vec<(FpPoly, FpPoly)> {
        let mut out = Vec::new();
        for (key, entry) in &self.by_modulus {
            let h = FpPoly::new(self.p, key.clone());
            for (g, gcd) in entry.reps.values() {
                if gcd.is_one() {
                    out.push((g.clone(), h.clone()));
                }
            }
        }
        out
    }

    /// Re-check the three defining properties from scratch.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::ShapeViolation(msg));
        for (key, entry) in &self.by_modulus {
            let d = FpPoly::new(self.p, key.clone());
            if entry.reps.len() as u128 != entry.space.cardinality() {
                return fail(format!("L_m({d}) has {} elements", entry.reps.len()));
            }
            for (syn, (b, gcd)) in &entry.reps {
                if &entry.space.syndrome(b) != syn || b.deg() >= d.deg() {
                    return fail(format!("{b} is not a reduced representative of its coset mod {d}"));
                }
                if &rgcd(b, &d) != gcd {
                    return fail(format!("stored reciprocal gcd of {b} mod {d} is stale"));
                }
                let best = gcd.deg();
                for n in entry.space.elements() {
                    if rgcd(&(b + &n).rem(&d), &d).deg() > best {
                        return fail(format!("{b} mod {d} does not maximize the reciprocal gcd"));
                    }
                }
                let g = b.div_exact(gcd).expect("gcd divides");
                let h = d.div_exact(gcd).expect("gcd divides");
                let ok = self.representatives(&h).is_some_and(|reps| reps.contains(&g));
                if !ok {
                    return fail(format!("{b}/({gcd}) is not in L_m({h})"));
                }
            }
        }
        Ok(())
    }
}

/// Build `L_m(D)` for all monic reciprocal `D` with `deg D <= 2 max_k`,
/// layer by layer in `k`. Choices are the least coefficient vectors read
/// from the top degree down.
pub fn good_representatives(p: Prime, m: usize, max_k: usize) -> Result<GoodRepresentatives> {
    limits::require(
        "good representatives",
        limits::checked_pow(p.get(), 3 * max_k),
        limits::enum_cap(),
    )?;
    let one = FpPoly::one(p);
    let mut by_modulus = BTreeMap::new();
    let mut reps = BTreeMap::new();
    reps.insert(Vec::new(), (FpPoly::zero(p), one.clone()));
    by_modulus.insert(
        one.coeffs().to_vec(),
        ModulusReps {
            space: MajorResidueSpace::build(&one, m)?,
            reps,
        },
    );
    for k in 1..=max_k {
        let moduli: Vec<FpPoly> = enumerate_reciprocal_mod_p(p, k)?.collect();
        let layer: Vec<(Vec<u64>, ModulusReps)> = moduli
            .par_iter()
            .map(|d| build_layer_entry(d, m, &by_modulus))
            .collect::<Result<_>>()?;
        by_modulus.extend(layer);
    }
    Ok(GoodRepresentatives {
        p,
        m,
        max_k,
        by_modulus,
    })
}

fn build_layer_entry(d: &FpPoly, m: usize, lower: &BTreeMap<Vec<u64>, ModulusReps>) -> Result<(Vec<u64>, ModulusReps)> {
    let p = d.modulus();
    let space = MajorResidueSpace::build(d, m)?;
    let n = 2 * space.k;
    let total = limits::checked_pow(p.get(), n).expect("capped by caller") as u64;
    // Property (2): per coset, a residue with reciprocal gcd of maximal degree.
    let mut best: BTreeMap<Vec<u64>, (isize, Vec<u64>, FpPoly, FpPoly)> = BTreeMap::new();
    for idx in 0..total {
        let b = FpPoly::new(p, linalg::decode(idx, p.get(), n));
        let g = rgcd(&b, d);
        let key = lex_key(&b, n);
        let syn = space.syndrome(&b);
        let better = match best.get(&syn) {
            None => true,
            Some((deg, k2, _, _)) => g.deg() > *deg || (g.deg() == *deg && key < *k2),
        };
        if better {
            best.insert(syn, (g.deg(), key, b, g));
        }
    }
    // Property (3): shift by N K with N in N_m(H) so that B/K lands in L_m(H).
    let mut reps = BTreeMap::new();
    for (syn, (_, _, b, k)) in best {
        let chosen = if k.is_one() {
            b
        } else {
            let g = b.div_exact(&k).expect("gcd divides");
            let h = d.div_exact(&k).expect("gcd divides");
            let entry = lower
                .get(h.coeffs())
                .ok_or_else(|| Error::ShapeViolation(format!("missing lower layer for {h}")))?;
            let (rep, _) = &entry.reps[&entry.space.syndrome(&g)];
            rep * &k
        };
        if rgcd(&chosen, d) != k {
            return Err(Error::ShapeViolation(format!(
                "shifted representative {chosen} mod {d} lost its reciprocal gcd"
            )));
        }
        reps.insert(syn, (chosen, k));
    }
    Ok((d.coeffs().to_vec(), ModulusReps { space, reps }))
}

/// Outcome of [`crossing_check`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct CrossingReport {
    pub p: u64,
    pub m: usize,
    pub max_deg: usize,
    pub coprime_pairs: usize,
    pub bijections_verified: usize,
    pub minimal_pairs: usize,
    pub comparisons: u64,
    pub counterexamples: Vec<String>,
}

impl CrossingReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Exhaustive check of the bijection `N_m(D_0) x N_m(D_1) -> N_m(D_0 D_1)`
/// for coprime moduli, and of the absence of distinct minimal crossing pairs.
pub fn crossing_check(p: Prime, m: usize, max_deg: usize) -> Result<CrossingReport> {
    let max_k = max_deg / 2;
    let mut report = CrossingReport {
        p: p.get(),
        m,
        max_deg,
        ..Default::default()
    };
    let mut moduli = Vec::new();
    for k in 1..=max_k {
        moduli.extend(enumerate_reciprocal_mod_p(p, k)?);
    }
    let pairs: Vec<(usize, usize)> = (0..moduli.len())
        .flat_map(|i| (i + 1..moduli.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| moduli[i].gcd(&moduli[j]).is_one())
        .collect();
    report.coprime_pairs = pairs.len();
    let bijection_failures: Vec<String> = pairs
        .par_iter()
        .map(|&(i, j)| check_bijection(&moduli[i], &moduli[j], m))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    report.bijections_verified = pairs.len() - bijection_failures.len();
    report.counterexamples.extend(bijection_failures);

    let system = good_representatives(p, m, max_k)?;
    system.validate()?;
    let minimal = system.minimal_pairs();
    report.minimal_pairs = minimal.len();
    let mut products: BTreeMap<Vec<u64>, MajorResidueSpace> = BTreeMap::new();
    for (_, h0) in &minimal {
        for (_, h1) in &minimal {
            let prod = h0 * h1;
            if !products.contains_key(prod.coeffs()) {
                products.insert(prod.coeffs().to_vec(), MajorResidueSpace::build(&prod, m)?);
            }
        }
    }
    let crossing: Vec<String> = minimal
        .par_iter()
        .enumerate()
        .flat_map_iter(|(a, (g0, h0))| {
            let (minimal, products) = (&minimal, &products);
            minimal.iter().enumerate().filter_map(move |(b, (g1, h1))| {
                if a == b {
                    return None;
                }
                let prod = h0 * h1;
                let x = &(g0 * h1) - &(g1 * h0);
                products[prod.coeffs()]
                    .contains(&x)
                    .then(|| format!("crossing minimal pairs ({g0}, {h0}) and ({g1}, {h1})"))
            })
        })
        .collect();
    report.comparisons = (minimal.len() * minimal.len().saturating_sub(1)) as u64;
    report.counterexamples.extend(crossing);
    Ok(report)
}

fn check_bijection(d0: &FpPoly, d1: &FpPoly, m: usize) -> Result<Option<String>> {
    let n0 = MajorResidueSpace::build(d0, m)?;
    let n1 = MajorResidueSpace::build(d1, m)?;
    let prod = d0 * d1;
    let n01 = MajorResidueSpace::build(&prod, m)?;
    let mut image = BTreeSet::new();
    for b0 in n0.elements() {
        for b1 in n1.elements() {
            let x = (&(&b0 * d1) - &(&b1 * d0)).rem(&prod);
            if !n01.contains(&x) {
                return Ok(Some(format!("Psi({b0}, {b1}) not in N_m({prod})")));
            }
            image.insert(x.coeffs().to_vec());
        }
    }
    if image.len() as u128 != n01.cardinality() {
        return Ok(Some(format!(
            "Psi for ({d0}, {d1}) hits {} of {} elements",
            image.len(),
            n01.cardinality()
        )));
    }
    Ok(None)
}

/// Whether `brmod` maps the lacunary space spanned by
/// `T^{m+j+i} + T^{m-j-i}` (`i < 2k`) onto `T^{m-k+1} R^sh_p(k-1)`.
pub fn surjectivity_check_lacunary(p: Prime, j: usize, k: usize, m: usize, d: &FpPoly) -> Result<bool> {
    if d.modulus() != p {
        return Err(Error::ModulusMismatch(p.get(), d.modulus().get()));
    }
    if j == 0 || k == 0 || j + 2 * k - 1 > m {
        return Err(Error::InvalidArgument(format!(
            "lacunary check needs positive j, k with j + 2k - 1 <= m (j={j}, k={k}, m={m})"
        )));
    }
    if modulus_half_degree(d)? != k {
        return Err(Error::InvalidArgument(format!(
            "modulus {d} does not have degree {}",
            2 * k
        )));
    }
    if p.get() == 2 && FpPoly::from_i64s(p, &[1, 0, 1]).divides(d) {
        return Err(Error::InvalidArgument("T^2 + 1 divides the modulus at p = 2".into()));
    }
    let rows: Vec<Vec<u64>> = (0..2 * k)
        .map(|i| {
            let mut v = vec![0u64; 2 * m + 1];
            v[m + j + i] = 1;
            v[m - j - i] = 1;
            brmod(&FpPoly::new(p, v), d, m).map(|r| r.half().to_vec())
        })
        .collect::<Result<_>>()?;
    Ok(linalg::rank(&rows, p) == k)
}
