//! The hyperoctahedral group `C_2 wr S_m` acting on `{±1, ..., ±m}`, its
//! index-2 subgroups, invariant subgroups of `{±1}^m`, and a Galois
//! classifier for reciprocal integer polynomials.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{is_prime, primes};
use crate::error::{Error, Result};
use crate::fppoly::{fp_factor, fp_factor_degrees, FpPoly, Prime};
use crate::intpoly::{discriminant, is_irreducible_over_z, is_nonzero_square, ZPoly};
use crate::reciprocal::RecPoly;

/// `((eps_i)_i, sigma)` with `sigma` stored 0-based: `perm[i] = sigma(i+1) - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    signs: Vec<i8>,
    perm: Vec<usize>,
}

impl SignedPerm {
    /// `perm` lists `sigma(1), ..., sigma(m)` (1-based).
    pub fn new(signs: Vec<i8>, perm: Vec<usize>) -> Result<Self> {
        let m = signs.len();
        if perm.len() != m {
            return Err(Error::SizeMismatch(signs.len(), perm.len()));
        }
        if signs.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::InvalidArgument("signs must be ±1".into()));
        }
        let mut seen = vec![false; m];
        for &s in &perm {
            if s == 0 || s > m || seen[s - 1] {
                return Err(Error::InvalidArgument("perm is not a bijection of 1..m".into()));
            }
            seen[s - 1] = true;
        }
        Ok(SignedPerm {
            signs,
            perm: perm.into_iter().map(|s| s - 1).collect(),
        })
    }

    pub fn identity(m: usize) -> Self {
        SignedPerm {
            signs: vec![1; m],
            perm: (0..m).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `sigma(1), ..., sigma(m)`, 1-based.
    pub fn proj(&self) -> Vec<usize> {
        self.perm.iter().map(|s| s + 1).collect()
    }

    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    /// Sign of `sigma` as a permutation of `m` letters.
    pub fn perm_sign(&self) -> i8 {
        perm_sign(&self.perm)
    }

    /// `((eps_i eps'_{sigma^{-1}(i)})_i, sigma sigma')`.
    pub fn compose(&self, h: &SignedPerm) -> Result<SignedPerm> {
        if self.m() != h.m() {
            return Err(Error::SizeMismatch(self.m(), h.m()));
        }
        let inv = invert(&self.perm);
        Ok(SignedPerm {
            signs: (0..self.m()).map(|i| self.signs[i] * h.signs[inv[i]]).collect(),
            perm: h.perm.iter().map(|&i| self.perm[i]).collect(),
        })
    }

    pub fn inverse(&self) -> SignedPerm {
        SignedPerm {
            signs: self.perm.iter().map(|&s| self.signs[s]).collect(),
            perm: invert(&self.perm),
        }
    }

    /// `g . k = sign(k) eps_{sigma(|k|)} sigma(|k|)`.
    pub fn act(&self, k: i64) -> Result<i64> {
        let a = k.unsigned_abs() as usize;
        if a == 0 || a > self.m() {
            return Err(Error::LetterOutOfRange { letter: k, m: self.m() });
        }
        let s = self.perm[a - 1];
        Ok(k.signum() * i64::from(self.signs[s]) * (s as i64 + 1))
    }

    /// Orbits on the `2m` letters, fixed points included, each cycle starting
    /// at its first letter in the order `1..m, -1..-m`.
    pub fn cycle_decomposition(&self) -> Vec<Vec<i64>> {
        let m = self.m() as i64;
        let mut seen = HashSet::new();
        let mut cycles = Vec::new();
        for start in (1..=m).chain((1..=m).map(|k| -k)) {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut k = self.act(start).expect("letter in range");
            while k != start {
                seen.insert(k);
                cycle.push(k);
                k = self.act(k).expect("letter in range");
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Cycle lengths on the `2m` letters, decreasing.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycle_decomposition().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn subgroup_flags(&self) -> SubgroupFlags {
        let eps = self.sign_product();
        let sgn = self.perm_sign();
        SubgroupFlags {
            in_g1: eps == 1,
            in_g2: sgn * eps == 1,
            in_g3: sgn == 1,
            in_g4: sgn == 1 && eps == 1,
            in_g5: self.signs.windows(2).all(|w| w[0] == w[1]),
        }
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(m: usize, rng: &mut R) -> SignedPerm {
        let mut perm: Vec<usize> = (0..m).collect();
        perm.shuffle(rng);
        SignedPerm {
            signs: (0..m).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect(),
            perm,
        }
    }
}

impl fmt::Display for SignedPerm {
    /// Nontrivial cycles, or `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<String> = self
            .cycle_decomposition()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")))
            .collect();
        if cycles.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "{}", cycles.concat())
        }
    }
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &s) in perm.iter().enumerate() {
        inv[s] = i;
    }
    inv
}

fn perm_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Membership in the subgroups `G1..G5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupFlags {
    pub in_g1: bool,
    pub in_g2: bool,
    pub in_g3: bool,
    pub in_g4: bool,
    pub in_g5: bool,
}

/// `K` in `{A_m, S_m}` acting on coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PermGroup {
    Alternating,
    Symmetric,
}

/// Generators of `K <= S_m` as 0-based permutations.
fn perm_generators(m: usize, k: PermGroup) -> Vec<Vec<usize>> {
    let mut gens = Vec::new();
    match k {
        PermGroup::Symmetric if m >= 2 => {
            let mut t: Vec<usize> = (0..m).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..m).map(|i| (i + 1) % m).collect());
        }
        PermGroup::Alternating => {
            for i in 2..m {
                let mut c: Vec<usize> = (0..m).collect();
                c[0] = 1;
                c[1] = i;
                c[i] = 0;
                gens.push(c);
            }
        }
        _ => {}
    }
    gens
}

/// Coordinate permutation of a sign vector stored as a bitmask (bit `i` set
/// when `eps_{i+1} = -1`).
fn permute_mask(v: u64, perm: &[usize]) -> u64 {
    (0..perm.len())
        .filter(|&i| v >> i & 1 == 1)
        .fold(0, |acc, i| acc | 1 << perm[i])
}

/// Reduced echelon basis over F_2, sorted; canonical for the span.
fn f2_basis(vectors: impl IntoIterator<Item = u64>) -> Vec<u64> {
    // distinct leading bits, kept in decreasing order
    let mut basis: Vec<u64> = Vec::new();
    for v in vectors {
        let x = basis.iter().fold(v, |x, &b| x.min(x ^ b));
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    for i in 0..basis.len() {
        let pivot = 63 - basis[i].leading_zeros();
        for j in 0..basis.len() {
            if j != i && basis[j] >> pivot & 1 == 1 {
                basis[j] ^= basis[i];
            }
        }
    }
    basis.sort_unstable();
    basis
}

/// A `K`-invariant subgroup of `{±1}^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantSubgroup {
    pub dim: usize,
    pub size: u128,
    /// Basis bitmasks; bit `i` means `eps_{i+1} = -1`.
    pub basis: Vec<u64>,
}

/// All subgroups of `{±1}^m` stable under `K`, by enumerating `K`-stable
/// F_2-subspaces as sums of cyclic ones.
pub fn invariant_subgroups(m: usize, k: PermGroup) -> Result<Vec<InvariantSubgroup>> {
    if m > 12 {
        return Err(Error::CapExceeded {
            what: "invariant subgroup search",
            needed: m as u128,
            cap: 12,
        });
    }
    let gens = perm_generators(m, k);
    let cyclic = |v: u64| -> Vec<u64> {
        let mut basis = f2_basis([v]);
        loop {
            let images: Vec<u64> = basis
                .iter()
                .flat_map(|&b| gens.iter().map(move |g| permute_mask(b, g)))
                .collect();
            let next = f2_basis(basis.iter().copied().chain(images));
            if next == basis {
                return basis;
            }
            basis = next;
        }
    };
    let mut found: BTreeSet<Vec<u64>> = BTreeSet::new();
    found.insert(Vec::new());
    let atoms: BTreeSet<Vec<u64>> = (1..1u64 << m).map(cyclic).collect();
    found.extend(atoms.iter().cloned());
    loop {
        let current: Vec<Vec<u64>> = found.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &atoms {
                let s = f2_basis(a.iter().chain(b).copied());
                if found.insert(s) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<InvariantSubgroup> = found
        .into_iter()
        .map(|basis| InvariantSubgroup {
            dim: basis.len(),
            size: 1u128 << basis.len(),
            basis,
        })
        .collect();
    out.sort_by(|a, b| (a.dim, &a.basis).cmp(&(b.dim, &b.basis)));
    Ok(out)
}

/// Closure of `gens` under composition; `None` if it would exceed `cap`.
pub fn generate(gens: &[SignedPerm], m: usize, cap: usize) -> Option<HashSet<SignedPerm>> {
    let id = SignedPerm::identity(m);
    let mut group: HashSet<SignedPerm> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x).expect("same m");
            if group.insert(y.clone()) {
                if group.len() > cap {
                    return None;
                }
                frontier.push(y);
            }
        }
    }
    Some(group)
}

/// Order of the permutation group generated by the projections.
fn projection_order(gens: &[SignedPerm], m: usize) -> usize {
    let bare: Vec<SignedPerm> = gens
        .iter()
        .map(|g| SignedPerm {
            signs: vec![1; m],
            perm: g.perm.clone(),
        })
        .collect();
    generate(&bare, m, usize::MAX).map_or(0, |h| h.len())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// How a generated subgroup was classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SubgroupClass {
    Full,
    G1,
    G2,
    G3,
    G4,
    /// Conjugate by a pure sign change into `G5`.
    InsideG5,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupClassification {
    pub m: usize,
    pub trials: usize,
    pub counts: BTreeMap<String, usize>,
    pub violations: Vec<String>,
}

/// Subgroup predicates used to steer generator sampling.
const KINDS: [&str; 7] = ["full", "g1", "g2", "g3", "g4", "g5", "g5_conj"];

fn sample_kind<R: Rng + ?Sized>(kind: &str, m: usize, twist: &[i8], rng: &mut R) -> SignedPerm {
    loop {
        let g = SignedPerm::random(m, rng);
        let f = g.subgroup_flags();
        let ok = match kind {
            "g1" => f.in_g1,
            "g2" => f.in_g2,
            "g3" => f.in_g3,
            "g4" => f.in_g4,
            "g5" | "g5_conj" => {
                let e = if rng.gen::<bool>() { 1 } else { -1 };
                let h = SignedPerm {
                    signs: vec![e; m],
                    perm: g.perm,
                };
                if kind == "g5" {
                    return h;
                }
                let v = SignedPerm {
                    signs: twist.to_vec(),
                    perm: (0..m).collect(),
                };
                return v.compose(&h).unwrap().compose(&v.inverse()).unwrap();
            }
            _ => true,
        };
        if ok {
            return g;
        }
    }
}

/// Some `(v, id)` conjugates every generator into `G5`.
fn conjugate_into_g5(gens: &[SignedPerm], m: usize) -> bool {
    (0..1u64 << m).any(|mask| {
        let v = SignedPerm {
            signs: (0..m).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect(),
            perm: (0..m).collect(),
        };
        let vi = v.inverse();
        gens.iter()
            .all(|g| vi.compose(g).unwrap().compose(&v).unwrap().subgroup_flags().in_g5)
    })
}

/// Classifies a subgroup `H` projecting onto `S_m` or `A_m`, or explains why
/// it fits none of the expected shapes.
pub fn classify_subgroup(gens: &[SignedPerm], m: usize) -> std::result::Result<SubgroupClass, String> {
    let full = (1usize << m) * factorial(m);
    let h = generate(gens, m, full).ok_or("closure exceeded the full group")?;
    let index = full / h.len();
    if !full.is_multiple_of(h.len()) {
        return Err(format!("order {} does not divide {full}", h.len()));
    }
    let all = |pred: fn(&SubgroupFlags) -> bool| h.iter().all(|g| pred(&g.subgroup_flags()));
    if index < 1 << (m - 1) {
        let class = match index {
            1 => Some(SubgroupClass::Full),
            2 if all(|f| f.in_g1) => Some(SubgroupClass::G1),
            2 if all(|f| f.in_g2) => Some(SubgroupClass::G2),
            2 if all(|f| f.in_g3) => Some(SubgroupClass::G3),
            4 if all(|f| f.in_g4) => Some(SubgroupClass::G4),
            _ => None,
        };
        return class.ok_or_else(|| format!("index {index} subgroup is none of G1..G4"));
    }
    if conjugate_into_g5(gens, m) {
        Ok(SubgroupClass::InsideG5)
    } else {
        Err(format!("index {index} subgroup is not conjugate into G5"))
    }
}

/// Random subgroups projecting onto `S_m` or `A_m`, classified by closure.
pub fn random_subgroup_classification<R: Rng + ?Sized>(
    m: usize,
    trials: usize,
    rng: &mut R,
) -> Result<SubgroupClassification> {
    if !(5..=7).contains(&m) {
        return Err(Error::InvalidArgument(format!("m = {m} outside 5..=7")));
    }
    let mut report = SubgroupClassification {
        m,
        trials,
        counts: BTreeMap::new(),
        violations: Vec::new(),
    };
    let (sm, am) = (factorial(m), factorial(m) / 2);
    for t in 0..trials {
        let kind = KINDS[rng.gen_range(0..KINDS.len())];
        let twist: Vec<i8> = (0..m).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect();
        let mut gens = Vec::new();
        loop {
            gens.push(sample_kind(kind, m, &twist, rng));
            let order = projection_order(&gens, m);
            if gens.len() >= 2 && (order == sm || order == am) {
                break;
            }
        }
        match classify_subgroup(&gens, m) {
            Ok(c) => *report.counts.entry(format!("{c:?}")).or_default() += 1,
            Err(e) => report.violations.push(format!("trial {t} ({kind}): {e}")),
        }
    }
    Ok(report)
}

/// An irreducible reciprocal factor of `A mod p` of half-degree `2d` that
/// divides exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusWitness {
    pub p: u64,
    pub factor: Vec<u64>,
    pub d: usize,
}

/// First prime in `primes_to_try`, skipping those dividing `Delta(A)`, with a
/// witness factor.
pub fn frobenius_witness(a: &RecPoly, primes_to_try: &[u64]) -> Result<Option<FrobeniusWitness>> {
    let dense = a.to_dense();
    if !is_squarefree(&dense) {
        return Err(Error::NotSquarefree);
    }
    let disc = discriminant(&dense)?;
    witness_with_disc(a, &disc, primes_to_try)
}

fn witness_with_disc(a: &RecPoly, disc: &BigInt, primes_to_try: &[u64]) -> Result<Option<FrobeniusWitness>> {
    let lc = a.half()[a.m()].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for &p in primes_to_try {
        let prime = Prime::new(p)?;
        if prime.reduce_big(disc) == 0 || prime.reduce_big(&lc) == 0 {
            continue;
        }
        let fac = fp_factor(&a.reduce(prime), &mut rng);
        for (f, e) in &fac.factors {
            let deg = f.degree().unwrap_or(0);
            if *e == 1 && deg % 4 == 0 && f.is_reciprocal() {
                return Ok(Some(FrobeniusWitness {
                    p,
                    factor: f.coeffs().to_vec(),
                    d: deg / 4,
                }));
            }
        }
    }
    Ok(None)
}

fn is_squarefree(a: &ZPoly) -> bool {
    a.gcd(&a.derivative()).degree() == Some(0)
}

/// Verdict of [`classify_galois`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Reducible,
    /// `C_2 wr S_m`.
    Full,
    G1,
    G2,
    G3,
    G4,
    /// Contained in a conjugate of `C_2 x S_m`.
    SubC2xSm,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Reducible => "reducible",
            Verdict::Full => "C2wrSm",
            Verdict::G1 => "G1",
            Verdict::G2 => "G2",
            Verdict::G3 => "G3",
            Verdict::G4 => "G4",
            Verdict::SubC2xSm => "subC2xSm",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// `(<= G1, <= G2, <= G3)` for the named groups.
    fn predicates(self) -> Option<(bool, bool, bool)> {
        match self {
            Verdict::Full => Some((false, false, false)),
            Verdict::G1 => Some((true, false, false)),
            Verdict::G2 => Some((false, true, false)),
            Verdict::G3 => Some((false, false, true)),
            Verdict::G4 => Some((true, true, true)),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Heuristic evidence that `proj(G_A)` contains `A_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjCertificate {
    /// `"S_m"` or `"A_m"`.
    pub group: String,
    pub evidence: String,
    pub primes_used: usize,
}

/// Proved facts and a heuristic verdict about the Galois group of `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GaloisReport {
    pub m: usize,
    pub irreducible: bool,
    /// `Delta(A)` is a nonzero square, i.e. `G_A <= G1`.
    pub disc_square: Option<bool>,
    /// `(-1)^m A(1) A(-1) Delta(A_R)` is a nonzero square, i.e. `G_A <= G2`.
    pub g2_square: Option<bool>,
    /// `Delta(A_R)` is a nonzero square, i.e. `G_A <= G3`.
    pub g3_square: Option<bool>,
    pub c2sm_excluded: Option<bool>,
    pub witness: Option<FrobeniusWitness>,
    pub proj_certificate: Option<ProjCertificate>,
    pub verdict: Verdict,
    /// The verdict for `m <= 4` rests on the small-case fallback.
    pub small_m_fallback: bool,
}

impl GaloisReport {
    /// Reasons the report contradicts itself; empty when consistent.
    pub fn contradictions(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.witness.is_some() && self.c2sm_excluded != Some(true) {
            out.push("witness present but C2 x S_m not excluded".into());
        }
        if self.verdict == Verdict::SubC2xSm && self.c2sm_excluded == Some(true) {
            out.push("verdict inside C2 x S_m despite a witness".into());
        }
        if !self.irreducible && self.verdict != Verdict::Reducible {
            out.push("reducible input with a group verdict".into());
        }
        if self.irreducible && self.verdict == Verdict::Reducible {
            out.push("irreducible input judged reducible".into());
        }
        if let (Some(want), Some(d), Some(g2), Some(g3)) = (
            self.verdict.predicates(),
            self.disc_square,
            self.g2_square,
            self.g3_square,
        ) {
            if self.m >= 2 && want != (d, g2, g3) {
                out.push(format!(
                    "verdict {} disagrees with squareness {:?}",
                    self.verdict,
                    (d, g2, g3)
                ));
            }
        }
        if let (Some(c), Some(g3)) = (&self.proj_certificate, self.g3_square) {
            if (c.group == "A_m") != (g3 && self.m >= 2) {
                out.push("projection certificate disagrees with Delta(A_R)".into());
            }
        }
        out
    }
}

/// Options for [`classify_galois_with`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisOptions {
    /// Number of primes not dividing `lc * Delta(A)` to sample.
    pub prime_count: usize,
    /// Explicit primes to use instead.
    pub primes: Vec<u64>,
}

impl Default for GaloisOptions {
    fn default() -> Self {
        GaloisOptions {
            prime_count: 30,
            primes: Vec::new(),
        }
    }
}

pub fn classify_galois(a: &RecPoly) -> Result<GaloisReport> {
    classify_galois_with(a, &GaloisOptions::default())
}

/// `ell` appears exactly once among the cycle lengths and is coprime to the rest.
fn isolatable(cycle_type: &[usize], ell: usize) -> bool {
    cycle_type.iter().filter(|&&c| c == ell).count() == 1 && cycle_type.iter().all(|&c| c == ell || c % ell != 0)
}

/// Looks for Frobenius cycle types of `A_R` proving `proj(G_A) >= A_m`.
fn certify_projection(m: usize, types: &[Vec<usize>]) -> Option<String> {
    let any = |f: &dyn Fn(&[usize]) -> bool| types.iter().any(|t| f(t));
    match m {
        0..=3 => return Some(format!("transitive subgroup of S_{m}")),
        4 => {
            return any(&|t| isolatable(t, 3)).then(|| "transitive with a 3-cycle".into());
        }
        _ => {}
    }
    let long_prime = (m / 2 + 1..m).find(|&l| is_prime(l as u64) && any(&|t| isolatable(t, l)));
    let primitive = if let Some(l) = long_prime {
        Some(format!("{l}-cycle with {l} > m/2"))
    } else if any(&|t| t.contains(&(m - 1))) {
        Some(format!("{}-cycle, 2-transitive", m - 1))
    } else {
        None
    }?;
    if let Some(l) = long_prime.filter(|&l| l + 3 <= m) {
        return Some(format!("{primitive}; Jordan prime {l} <= m - 3"));
    }
    if any(&|t| isolatable(t, 2)) {
        return Some(format!("{primitive}; transposition"));
    }
    if any(&|t| isolatable(t, 3)) {
        return Some(format!("{primitive}; 3-cycle"));
    }
    None
}

/// The named group with the given squareness pattern, if any.
fn named_group(d: bool, g2: bool, g3: bool) -> Option<Verdict> {
    [Verdict::Full, Verdict::G1, Verdict::G2, Verdict::G3, Verdict::G4]
        .into_iter()
        .find(|v| v.predicates() == Some((d, g2, g3)))
}

pub fn classify_galois_with(a: &RecPoly, opts: &GaloisOptions) -> Result<GaloisReport> {
    if !a.is_monic() {
        return Err(Error::InvalidArgument("classify_galois needs a monic input".into()));
    }
    let m = a.m();
    let dense = a.to_dense();
    if m == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !is_squarefree(&dense) {
        return Err(Error::NotSquarefree);
    }
    let mut report = GaloisReport {
        m,
        irreducible: is_irreducible_over_z(&dense)?,
        disc_square: None,
        g2_square: None,
        g3_square: None,
        c2sm_excluded: None,
        witness: None,
        proj_certificate: None,
        verdict: Verdict::Reducible,
        small_m_fallback: m <= 4,
    };
    if !report.irreducible {
        return Ok(report);
    }
    let trace = a.trace();
    let (ends, disc_r) = trace_parts(a)?;
    let disc = &ends * &disc_r * &disc_r;
    report.disc_square = Some(is_nonzero_square(&disc));
    report.g2_square = Some(is_nonzero_square(&(&ends * &disc_r)));
    report.g3_square = Some(is_nonzero_square(&disc_r));

    let ps: Vec<u64> = if opts.primes.is_empty() {
        primes()
            .filter(|&p| !(&disc % p).is_zero())
            .take(opts.prime_count)
            .collect()
    } else {
        opts.primes.clone()
    };
    report.witness = witness_with_disc(a, &disc, &ps)?;
    report.c2sm_excluded = Some(report.witness.is_some());

    let mut types = Vec::new();
    for &p in &ps {
        let prime = Prime::new(p)?;
        if prime.reduce_big(&disc) == 0 {
            continue;
        }
        let mut t = fp_factor_degrees(&FpPoly::from_zpoly(prime, &trace));
        t.sort_unstable_by(|a, b| b.cmp(a));
        types.push(t);
    }
    let g3 = report.g3_square == Some(true);
    report.proj_certificate = certify_projection(m, &types).map(|evidence| ProjCertificate {
        group: if g3 && m >= 2 { "A_m".into() } else { "S_m".into() },
        evidence,
        primes_used: types.len(),
    });

    report.verdict = if m == 1 {
        Verdict::Full
    } else if report.proj_certificate.is_none() {
        Verdict::Inconclusive
    } else if report.witness.is_none() {
        Verdict::SubC2xSm
    } else {
        named_group(report.disc_square == Some(true), report.g2_square == Some(true), g3)
            .unwrap_or(Verdict::Inconclusive)
    };
    Ok(report)
}

/// `Delta(A) = (-1)^m A(1) A(-1) Delta(A_R)^2` evaluated from the right side.
pub fn discriminant_via_trace(a: &RecPoly) -> Result<BigInt> {
    let (ends, disc_r) = trace_parts(a)?;
    Ok(ends * &disc_r * &disc_r)
}

/// `((-1)^m A(1) A(-1), Delta(A_R))`.
fn trace_parts(a: &RecPoly) -> Result<(BigInt, BigInt)> {
    let dense = a.to_dense();
    let disc_r = discriminant(&a.trace())?;
    let mut ends = dense.evaluate(&BigInt::one()) * dense.evaluate(&-BigInt::one());
    if a.m() % 2 == 1 {
        ends = -ends;
    }
    Ok((ends, disc_r))
}

#[cfg(test)]
mod tests;
