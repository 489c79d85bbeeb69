//! Factorization over `F_p`: squarefree decomposition, distinct-degree and
//! equal-degree splitting, and Rabin's irreducibility test.

use rand::Rng;

use super::{FpPoly, Prime};
use crate::arith;

/// `unit * prod f_i^{e_i}` with each `f_i` monic irreducible, sorted by
/// degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFactorization {
    pub unit: u64,
    pub factors: Vec<(FpPoly, usize)>,
}

impl FpFactorization {
    pub fn expand(&self, p: Prime) -> FpPoly {
        let mut acc = FpPoly::constant(p, self.unit);
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as u32);
        }
        acc
    }
}

pub(crate) fn sort_key(f: &FpPoly) -> (usize, Vec<u64>) {
    (f.coeffs().len(), f.coeffs().to_vec())
}

/// Replace `sum c_i T^{ip}` by `sum c_i T^i`.
fn pth_root(f: &FpPoly) -> FpPoly {
    let q = f.modulus().get() as usize;
    let v = f.coeffs().iter().step_by(q).copied().collect();
    FpPoly::from_reduced(f.modulus(), v)
}

/// Squarefree decomposition of a nonzero polynomial: pairwise coprime
/// squarefree monic `g` with multiplicities, unit dropped.
pub fn fp_squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    assert!(!f.is_zero());
    let f = f.monic();
    let mut out = Vec::new();
    if f.degree() == Some(0) {
        return out;
    }
    let q = f.modulus().get() as usize;
    let df = f.derivative();
    if df.is_zero() {
        for (g, e) in fp_squarefree_decomposition(&pth_root(&f)) {
            out.push((g, e * q));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in fp_squarefree_decomposition(&pth_root(&c)) {
            out.push((g, e * q));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub(crate) fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.modulus();
    let x = FpPoly::x(p);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if deg < 2 * (d + 1) {
            if deg > 0 {
                out.push((rest.clone(), deg));
            }
            break;
        }
        d += 1;
        h = h.powmod(p.get(), &rest);
        let g = (&h - &x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    out
}

/// Split a squarefree monic product of irreducibles all of degree `d`.
fn equal_degree<R: Rng + ?Sized>(f: &FpPoly, d: usize, rng: &mut R, out: &mut Vec<FpPoly>) {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.clone());
        return;
    }
    let p = f.modulus();
    if p.get() == 2 {
        // Trace map T_d(a) = a + a^2 + ... + a^{2^{d-1}} is F_2-valued on each
        // component; some power of T has a non-constant trace vector.
        for i in 1..n {
            let a = FpPoly::monomial(p, 1, i).rem(f);
            let mut t = a.clone();
            let mut tr = a;
            for _ in 1..d {
                t = t.mulmod(&t, f);
                tr = &tr + &t;
            }
            let g = tr.gcd(f);
            if let Some(gd) = g.degree() {
                if gd > 0 && gd < n {
                    let h = f.div_exact(&g).expect("gcd divides");
                    equal_degree(&g, d, rng, out);
                    equal_degree(&h, d, rng, out);
                    return;
                }
            }
        }
        unreachable!("trace splitting failed for a product of several factors");
    }
    loop {
        let coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p.get())).collect();
        let a = FpPoly::from_reduced(p, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut g = a.gcd(f);
        if g.is_one() {
            // a^{(p^d - 1)/2} = (a^{1 + p + ... + p^{d-1}})^{(p-1)/2}
            let mut t = a.clone();
            let mut norm = a;
            for _ in 1..d {
                t = t.powmod(p.get(), f);
                norm = norm.mulmod(&t, f);
            }
            let b = norm.powmod((p.get() - 1) / 2, f);
            g = (&b - &FpPoly::one(p)).gcd(f);
        }
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_exact(&g).expect("gcd divides");
            equal_degree(&g, d, rng, out);
            equal_degree(&h, d, rng, out);
            return;
        }
    }
}

/// Complete factorization into monic irreducibles. Randomness (odd p) comes
/// from `rng`; the result does not depend on it.
pub fn fp_factor<R: Rng + ?Sized>(a: &FpPoly, rng: &mut R) -> FpFactorization {
    assert!(!a.is_zero(), "factor of zero polynomial");
    let unit = a.lc();
    let mut factors = Vec::new();
    for (g, e) in fp_squarefree_decomposition(a) {
        for (h, d) in distinct_degree(&g) {
            let mut parts = Vec::new();
            equal_degree(&h, d, rng, &mut parts);
            factors.extend(parts.into_iter().map(|f| (f, e)));
        }
    }
    factors.sort_by_key(|(f, e)| (sort_key(f), *e));
    FpFactorization { unit, factors }
}

/// Degrees of the irreducible factors of a squarefree polynomial, with
/// repetition, increasing. Needs no randomness.
pub fn fp_factor_degrees(a: &FpPoly) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(&a.monic()) {
        let n = g.degree().unwrap();
        out.extend(std::iter::repeat_n(d, n / d));
    }
    out.sort_unstable();
    out
}

/// Rabin's test: `T^{p^n} = T mod A` and `gcd(T^{p^{n/q}} - T, A) = 1` for
/// each prime `q | n`.
pub fn fp_is_irreducible(a: &FpPoly) -> bool {
    let n = match a.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let f = a.monic();
    let p = f.modulus();
    let x = FpPoly::x(p).rem(&f);
    let mut frob = vec![x.clone()];
    for _ in 0..n {
        let next = frob.last().unwrap().powmod(p.get(), &f);
        frob.push(next);
    }
    if frob[n] != x {
        return false;
    }
    arith::prime_divisors(n as u64)
        .into_iter()
        .all(|q| (&frob[n / q as usize] - &x).gcd(&f).is_one())
}
