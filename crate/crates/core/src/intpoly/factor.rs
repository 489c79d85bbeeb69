//! Factorization over Z: squarefree decomposition, factoring modulo a
//! small prime, quadratic Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ZPoly;
use crate::arith::primes;
use crate::error::{Error, Result};
use crate::fppoly::{fp_factor, fp_factor_degrees, FpPoly, Prime};
use crate::limits;

/// Primes examined when choosing a factoring prime.
const FACTOR_PRIMES: usize = 5;
/// Primes examined by the degree-set test before a full factorization.
const IRREDUCIBILITY_PRIMES: usize = 24;

/// `content * prod f_i^{e_i}` with each `f_i` irreducible, primitive, with
/// positive leading coefficient; sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZFactorization {
    pub content: BigInt,
    pub factors: Vec<(ZPoly, usize)>,
}

impl ZFactorization {
    pub fn expand(&self) -> ZPoly {
        let mut acc = ZPoly::constant(self.content.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u32);
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn count(&self) -> usize {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

fn check_cap(p: &ZPoly) -> Result<usize> {
    let degree = p.degree().ok_or(Error::ZeroPolynomial)?;
    let cap = limits::degree_cap();
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    Ok(degree)
}

/// Complete factorization over Z.
pub fn factor_over_z(p: &ZPoly) -> Result<ZFactorization> {
    let degree = check_cap(p)?;
    let mut content = p.content();
    if p.lc().is_negative() {
        content = -content;
    }
    let mut factors: Vec<(ZPoly, usize)> = Vec::new();
    if degree == 0 {
        return Ok(ZFactorization { content, factors });
    }
    let mut prim = p.div_scalar_exact(&content);
    let zeros = prim.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        factors.push((ZPoly::x(), zeros));
        prim = ZPoly::new(prim.coeffs()[zeros..].to_vec());
    }
    for (g, e) in squarefree_decomposition(&prim) {
        for h in zassenhaus(&g) {
            factors.push((h, e));
        }
    }
    factors.sort_by(|(a, ea), (b, eb)| (a.degree(), a.coeffs(), ea).cmp(&(b.degree(), b.coeffs(), eb)));
    Ok(ZFactorization { content, factors })
}

/// Irreducibility in Z[T]. Tries the degree-set test over several primes
/// first; only inconclusive inputs are fully factored.
pub fn is_irreducible_over_z(p: &ZPoly) -> Result<bool> {
    let degree = check_cap(p)?;
    if degree == 0 || !p.content().is_one() {
        return Ok(false);
    }
    if degree == 1 {
        return Ok(true);
    }
    if !p.coeff(0).is_zero() && is_squarefree(p) {
        let allowed = allowed_degrees(p, IRREDUCIBILITY_PRIMES).1;
        if (1..degree).all(|d| !allowed[d]) {
            return Ok(true);
        }
    }
    let fac = factor_over_z(p)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

/// Primes not dividing `lc(f)` for which `f mod p` stays squarefree.
fn good_primes(f: &ZPoly) -> impl Iterator<Item = (Prime, FpPoly)> + '_ {
    let n = f.degree().unwrap();
    primes()
        .take(2000)
        .map(|q| Prime::new(q).unwrap())
        .filter_map(move |q| {
            let fp = FpPoly::from_zpoly(q, f);
            if fp.degree() != Some(n) {
                return None;
            }
            fp.gcd(&fp.derivative()).is_one().then_some((q, fp))
        })
}

fn is_squarefree(f: &ZPoly) -> bool {
    if good_primes(f).next().is_some() {
        return true;
    }
    f.gcd(&f.derivative()).degree() == Some(0)
}

/// Yun's algorithm over Z for a primitive polynomial with positive lc.
fn squarefree_decomposition(f: &ZPoly) -> Vec<(ZPoly, usize)> {
    if f.degree() == Some(0) {
        return vec![];
    }
    if is_squarefree(f) {
        return vec![(f.clone(), 1)];
    }
    let df = f.derivative();
    let b = f.gcd(&df).primitive_part();
    let mut c = f.div_exact(&b).expect("gcd divides");
    let mut d = &df.div_exact(&b).expect("gcd divides derivative") - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d).primitive_part();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        c = c.div_exact(&a).expect("gcd divides");
        d = &d.div_exact(&a).expect("gcd divides") - &c.derivative();
        i += 1;
    }
    out
}

/// Subset sums of a factor-degree pattern, as a membership table.
fn subset_sums(pattern: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in pattern {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// Intersect possible factor degrees over up to `count` good primes; also
/// return the prime with the fewest modular factors among them.
fn allowed_degrees(f: &ZPoly, count: usize) -> (Option<(Prime, FpPoly, usize)>, Vec<bool>) {
    let n = f.degree().unwrap();
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(Prime, FpPoly, usize)> = None;
    for (q, fp) in good_primes(f).take(count) {
        let pattern = fp_factor_degrees(&fp);
        let sums = subset_sums(&pattern, n);
        for (a, s) in allowed.iter_mut().zip(sums) {
            *a &= s;
        }
        if best.as_ref().is_none_or(|b| pattern.len() < b.2) {
            best = Some((q, fp, pattern.len()));
        }
        if (1..n).all(|d| !allowed[d]) {
            break;
        }
    }
    (best, allowed)
}

/// Factor a squarefree primitive polynomial with positive lc and nonzero
/// constant term.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.degree().unwrap();
    if n == 1 {
        return vec![f.clone()];
    }
    let (best, allowed) = allowed_degrees(f, FACTOR_PRIMES);
    if (1..n).all(|d| !allowed[d]) {
        return vec![f.clone()];
    }
    let (q, fp, _) = best.expect("a good prime exists for a squarefree polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let modular: Vec<FpPoly> = fp_factor(&fp, &mut rng).factors.into_iter().map(|(g, _)| g).collect();
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    // Any factor g of f satisfies |lc(f)/lc(g) g_j| <= 2^n |f|_2.
    let bound = (BigInt::one() << n) * f.l2_norm_ceil();
    let pb = BigInt::from(q.get());
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &modular, q, k);
    recombine(f, lifted, &modulus, &allowed)
}

fn reduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(a.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m / 2;
    ZPoly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mul_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    reduce(&(a * b), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic_mod(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.degree().unwrap();
    let a = reduce(a, m);
    let Some(da) = a.degree() else {
        return (ZPoly::zero(), a);
    };
    if da < db {
        return (ZPoly::zero(), a);
    }
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.coeffs().iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (ZPoly::new(q), ZPoly::new(r))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lift the monic factorization `f = lc * prod u_i (mod p)` to `mod p^k`.
fn hensel_lift(f: &ZPoly, modular: &[FpPoly], q: Prime, k: u32) -> Vec<ZPoly> {
    let pb = BigInt::from(q.get());
    let mut steps = 1u32;
    while steps < k {
        steps *= 2;
    }
    let big_m = pb.pow(steps);
    let inv = mod_inverse(&f.lc(), &big_m);
    let monic = reduce(&f.scale(&inv), &big_m);
    let target = pb.pow(k);
    lift_tree(&monic, modular, &pb, steps)
        .into_iter()
        .map(|g| reduce(&g, &target))
        .collect()
}

fn lift_tree(f: &ZPoly, factors: &[FpPoly], pb: &BigInt, steps: u32) -> Vec<ZPoly> {
    if factors.len() == 1 {
        return vec![f.clone()];
    }
    let q = factors[0].modulus();
    let (left, right) = factors.split_at(factors.len() / 2);
    let prod = |fs: &[FpPoly]| fs.iter().fold(FpPoly::one(q), |acc, g| &acc * g);
    let (g0, h0) = (prod(left), prod(right));
    let (g, h) = hensel_two(f, &g0, &h0, pb, steps);
    let mut out = lift_tree(&g, left, pb, steps);
    out.extend(lift_tree(&h, right, pb, steps));
    out
}

/// Quadratic lifting of `f = g h (mod p)` with `f, g, h` monic until the
/// modulus reaches `p^steps`.
fn hensel_two(f: &ZPoly, g0: &FpPoly, h0: &FpPoly, pb: &BigInt, steps: u32) -> (ZPoly, ZPoly) {
    let (one, s0, t0) = g0.ext_gcd(h0);
    assert!(one.is_one(), "modular factors must be coprime");
    let (mut g, mut h) = (g0.lift(), h0.lift());
    let (mut s, mut t) = (s0.lift(), t0.lift());
    let mut e_now = 1u32;
    let mut m = pb.clone();
    while e_now < steps {
        m = &m * &m;
        e_now *= 2;
        let fm = reduce(f, &m);
        let e = reduce(&(&fm - &(&g * &h)), &m);
        let (qq, r) = divrem_monic_mod(&(&s * &e), &h, &m);
        let g_new = reduce(&(&(&g + &(&t * &e)) + &(&qq * &g)), &m);
        let h_new = reduce(&(&h + &r), &m);
        let b = reduce(&(&(&(&s * &g_new) + &(&t * &h_new)) - &ZPoly::one()), &m);
        let (c, d) = divrem_monic_mod(&(&s * &b), &h_new, &m);
        s = reduce(&(&s - &d), &m);
        t = reduce(&(&(&t - &(&t * &b)) - &(&c * &g_new)), &m);
        g = g_new;
        h = h_new;
    }
    debug_assert_eq!(mul_mod(&g, &h, &m), reduce(f, &m));
    (g, h)
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, modulus: &BigInt, allowed: &[bool]) -> Vec<ZPoly> {
    let mut found = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in Combinations::new(lifted.len(), size) {
            let deg: usize = subset.iter().map(|&i| lifted[i].degree().unwrap()).sum();
            if !allowed[deg] {
                continue;
            }
            let mut cand = ZPoly::constant(rest.lc());
            for &i in &subset {
                cand = mul_mod(&cand, &lifted[i], modulus);
            }
            let cand = symmetric(&cand, modulus).primitive_part();
            if !rest.coeff(0).is_multiple_of(&cand.coeff(0)) {
                continue;
            }
            if let Some(quot) = rest.div_exact(&cand) {
                hit = Some((subset, cand, quot));
                break;
            }
        }
        match hit {
            Some((subset, cand, quot)) => {
                found.push(cand);
                rest = quot;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => size += 1,
        }
    }
    found.push(rest.primitive_part());
    found
}

/// Index subsets of a fixed size in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    fn factors(p: &ZPoly) -> Vec<(ZPoly, usize)> {
        factor_over_z(p).unwrap().factors
    }

    /// Brute-force irreducibility: trial division by every integer
    /// polynomial of degree 1..=deg/2 whose coefficients obey the Mignotte
    /// bound `binom(d, d/2) |P|_2`, with constant term dividing `P(0)` and
    /// positive leading coefficient dividing `lc(P)`.
    fn brute_irreducible(p: &ZPoly) -> bool {
        let n = p.degree().unwrap();
        if n == 0 || !p.content().is_one() {
            return false;
        }
        if n == 1 {
            return true;
        }
        let c0 = p.coeff(0);
        if c0.is_zero() {
            return false;
        }
        let divisors = |v: &BigInt| -> Vec<i64> {
            let a = i64::try_from(v.abs()).unwrap();
            (1..=a).filter(|d| a % d == 0).collect()
        };
        let norm = i64::try_from(p.l2_norm_ceil()).unwrap();
        for d in 1..=n / 2 {
            let bound = i64::try_from(crate::arith::binomial(d as i64, d as i64 / 2)).unwrap() * norm;
            for &lead in &divisors(&p.lc()) {
                for &c in &divisors(&c0) {
                    for c_signed in [c, -c] {
                        let mut mid = vec![-bound; d - 1];
                        loop {
                            let mut v = vec![BigInt::from(c_signed)];
                            v.extend(mid.iter().map(|&x| BigInt::from(x)));
                            v.push(BigInt::from(lead));
                            if p.div_exact(&ZPoly::new(v)).is_some() {
                                return false;
                            }
                            let mut i = 0;
                            while i < mid.len() && mid[i] == bound {
                                mid[i] = -bound;
                                i += 1;
                            }
                            if i == mid.len() {
                                break;
                            }
                            mid[i] += 1;
                        }
                    }
                }
            }
        }
        true
    }

    #[test]
    fn factor_examples() {
        assert_eq!(
            factors(&z(&[-1, 0, 0, 0, 1])),
            vec![(z(&[-1, 1]), 1), (z(&[1, 1]), 1), (z(&[1, 0, 1]), 1)]
        );
        assert_eq!(factors(&z(&[1, 0, 0, 0, 1])), vec![(z(&[1, 0, 0, 0, 1]), 1)]);
        let sq = z(&[1, 3, 1]).pow(2);
        assert_eq!(factors(&sq), vec![(z(&[1, 3, 1]), 2)]);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible_over_z(&z(&[1, 1, 1])).unwrap());
        assert!(!is_irreducible_over_z(&z(&[-1, 0, 1])).unwrap());
        assert!(is_irreducible_over_z(&z(&[1, 1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn content_and_sign() {
        let p = z(&[-6, 0, -6]);
        let fac = factor_over_z(&p).unwrap();
        assert_eq!(fac.content, BigInt::from(-6));
        assert_eq!(fac.factors, vec![(z(&[1, 0, 1]), 1)]);
        assert_eq!(fac.expand(), p);
    }

    #[test]
    fn swinnerton_dyer_needs_recombination() {
        // Irreducible over Z but splits into quadratics or linears mod every prime.
        let s = z(&[1, 0, -10, 0, 1]);
        assert_eq!(factors(&s), vec![(s.clone(), 1)]);
        let s3 = z(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
        assert!(is_irreducible_over_z(&s3).unwrap());
    }

    #[test]
    fn non_monic_factors() {
        let a = &z(&[3, 2]) * &z(&[-1, 0, 5]);
        let b = &a * &z(&[7, 1, 3]);
        let fac = factor_over_z(&b).unwrap();
        assert_eq!(fac.expand(), b);
        assert_eq!(fac.count(), 3);
    }

    #[test]
    fn degree_cap() {
        let big = ZPoly::monomial(BigInt::one(), 200);
        assert!(matches!(
            factor_over_z(&(&big + &ZPoly::one())),
            Err(Error::DegreeCapExceeded { degree: 200, .. })
        ));
    }

    #[test]
    fn brute_force_agreement_small() {
        // All deg <= 4 with coefficients in [-2, 2], lc > 0 (sampled grid).
        let mut checked = 0;
        for code in 0..5u32.pow(5) {
            let mut c = Vec::new();
            let mut r = code;
            for _ in 0..5 {
                c.push((r % 5) as i64 - 2);
                r /= 5;
            }
            let p = z(&c);
            let Some(d) = p.degree() else { continue };
            if d == 0 || p.lc().is_negative() || d > 4 {
                continue;
            }
            if code % 7 != 0 {
                continue;
            }
            assert_eq!(is_irreducible_over_z(&p).unwrap(), brute_irreducible(&p), "{p}");
            checked += 1;
        }
        assert!(checked > 100);
    }

    fn arb_irreducible_product() -> impl Strategy<Value = ZPoly> {
        let factor = proptest::collection::vec(-5i64..=5, 1..=4).prop_map(|mut v| {
            v.push(1);
            ZPoly::from_i64s(&v)
        });
        proptest::collection::vec(factor, 1..=4).prop_map(|fs| fs.iter().fold(ZPoly::one(), |acc, f| &acc * f))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn factorization_remultiplies(p in arb_irreducible_product()) {
            let fac = factor_over_z(&p).unwrap();
            prop_assert_eq!(fac.expand(), p);
            for (g, _) in &fac.factors {
                prop_assert!(g.lc().is_positive());
                prop_assert!(g.content().is_one());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn irreducibility_matches_trial_division(
            c in proptest::collection::vec(-3i64..=3, 2..=6),
            lead in 1i64..=3,
        ) {
            let mut c = c;
            c.push(lead);
            let p = z(&c);
            prop_assume!(p.degree().unwrap() <= 6);
            prop_assert_eq!(is_irreducible_over_z(&p).unwrap(), brute_irreducible(&p));
        }
    }
}
