//! Dense polynomials over a prime field `F_p`.

mod factor;

pub use factor::{fp_factor, fp_factor_degrees, fp_is_irreducible, fp_squarefree_decomposition, FpFactorization};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::arith::{self, mobius};
use crate::error::{Error, Result};
use crate::intpoly::ZPoly;
use crate::limits;

const KARATSUBA_THRESHOLD: usize = 64;

/// A prime modulus below `2^32`, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < (1 << 32) && arith::is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    pub fn pow(self, a: u64, e: u64) -> u64 {
        arith::pow_mod_u64(a, e, self.0)
    }

    /// Inverse of a nonzero residue.
    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.0), "inverse of zero mod {}", self.0);
        self.pow(a, self.0 - 2)
    }

    /// Reduce a signed integer.
    pub fn reduce_i64(self, a: i64) -> u64 {
        a.rem_euclid(self.0 as i64) as u64
    }

    pub fn reduce_big(self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.0)).to_u64().expect("residue fits")
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(self, a: u64) -> i64 {
        if a > self.0 / 2 {
            a as i64 - self.0 as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Polynomial over `F_p`; `coeffs[i]` is the coefficient of `T^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: Prime,
    coeffs: Vec<u64>,
}

impl FpPoly {
    /// Builds from residues, reducing each mod p.
    pub fn new(p: Prime, coeffs: Vec<u64>) -> Self {
        let q = p.get();
        let coeffs = coeffs.into_iter().map(|c| c % q).collect();
        Self::from_reduced(p, coeffs)
    }

    pub(crate) fn from_reduced(p: Prime, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_i64s(p: Prime, coeffs: &[i64]) -> Self {
        Self::from_reduced(p, coeffs.iter().map(|&c| p.reduce_i64(c)).collect())
    }

    pub fn from_zpoly(p: Prime, z: &ZPoly) -> Self {
        Self::from_reduced(p, z.coeffs().iter().map(|c| p.reduce_big(c)).collect())
    }

    /// Symmetric lift to Z.
    pub fn lift(&self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|&c| BigInt::from(self.p.lift(c))).collect())
    }

    pub fn zero(p: Prime) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: Prime) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: Prime, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    /// `c * T^d`.
    pub fn monomial(p: Prime, c: u64, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Self::new(p, v)
    }

    pub fn x(p: Prime) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to -1.
    pub fn deg(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn scale(&self, c: u64) -> Self {
        let c = c % self.p.get();
        Self::from_reduced(self.p, self.coeffs.iter().map(|&a| self.p.mul(a, c)).collect())
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.p.inv(self.lc()))
    }

    /// Multiply by `T^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        FpPoly { p: self.p, coeffs: v }
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.p.add(self.p.mul(acc, x), c))
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| p.mul(c, i as u64 % p.get()))
            .collect();
        Self::from_reduced(p, v)
    }

    /// `T^{deg} F(1/T)`; the zero polynomial is rejected.
    pub fn reversal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut v = self.coeffs.clone();
        v.reverse();
        Ok(Self::from_reduced(self.p, v))
    }

    /// Even degree and palindromic coefficients.
    pub fn is_reciprocal(&self) -> bool {
        match self.degree() {
            Some(d) if d % 2 == 0 => {
                let c = &self.coeffs;
                (0..c.len()).all(|i| c[i] == c[d - i])
            }
            _ => false,
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            Err(Error::ModulusMismatch(self.p.get(), other.p.get()))
        } else {
            Ok(())
        }
    }

    /// Long division; panics on a zero divisor (use [`fp_divrem`] for a checked call).
    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial");
        assert_eq!(self.p, b.p);
        let p = self.p;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return (Self::zero(p), self.clone());
        }
        let inv = p.inv(b.lc());
        let mut r = self.coeffs.clone();
        let mut q = vec![0; r.len() - db];
        for i in (0..q.len()).rev() {
            let c = p.mul(r[i + db], inv);
            q[i] = c;
            if c != 0 {
                for (j, &bj) in b.coeffs.iter().enumerate() {
                    r[i + j] = p.sub(r[i + j], p.mul(c, bj));
                }
            }
        }
        r.truncate(db);
        (Self::from_reduced(p, q), Self::from_reduced(p, r))
    }

    pub fn rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "division by zero polynomial");
        let p = self.p;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return self.clone();
        }
        let inv = p.inv(b.lc());
        let mut r = self.coeffs.clone();
        for i in (0..r.len() - db).rev() {
            let c = p.mul(r[i + db], inv);
            if c != 0 {
                for (j, &bj) in b.coeffs.iter().enumerate() {
                    r[i + j] = p.sub(r[i + j], p.mul(c, bj));
                }
            }
        }
        r.truncate(db);
        Self::from_reduced(p, r)
    }

    /// Exact quotient, or `None` if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.divrem(b);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    pub fn mulmod(&self, b: &Self, m: &Self) -> Self {
        (self * b).rem(m)
    }

    /// `self^e mod m`.
    pub fn powmod(&self, mut e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.p);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, b: &Self) -> Self {
        let mut a = self.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*b = g`, `g` monic.
    pub fn ext_gcd(&self, b: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = p.inv(r0.lc());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        g.is_one().then(|| s.rem(m))
    }

    fn mul_coeffs(p: Prime, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        if a.len() < KARATSUBA_THRESHOLD || b.len() < KARATSUBA_THRESHOLD {
            return schoolbook(p, a, b);
        }
        karatsuba(p, a, b)
    }
}

fn schoolbook(p: Prime, a: &[u64], b: &[u64]) -> Vec<u64> {
    let q = p.get() as u128;
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let s = &mut acc[i + j];
            *s += (ai * bj) as u128;
            if *s >= 1 << 120 {
                *s %= q;
            }
        }
    }
    acc.into_iter().map(|v| (v % q) as u64).collect()
}

fn karatsuba(p: Prime, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    if a.len() < KARATSUBA_THRESHOLD || b.len() < KARATSUBA_THRESHOLD {
        return schoolbook(p, a, b);
    }
    let half = n / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let z0 = FpPoly::mul_coeffs(p, a0, b0);
    let z2 = FpPoly::mul_coeffs(p, a1, b1);
    let sa = add_slices(p, a0, a1);
    let sb = add_slices(p, b0, b1);
    let mut z1 = FpPoly::mul_coeffs(p, &sa, &sb);
    for (i, &v) in z0.iter().enumerate() {
        z1[i] = p.sub(z1[i], v);
    }
    for (i, &v) in z2.iter().enumerate() {
        z1[i] = p.sub(z1[i], v);
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &v) in z0.iter().enumerate() {
        out[i] = p.add(out[i], v);
    }
    for (i, &v) in z1.iter().enumerate() {
        if i + half < out.len() {
            out[i + half] = p.add(out[i + half], v);
        }
    }
    for (i, &v) in z2.iter().enumerate() {
        out[i + 2 * half] = p.add(out[i + 2 * half], v);
    }
    out
}

fn add_slices(p: Prime, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| p.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect()
}

impl Add for &FpPoly {
    type Output = FpPoly;
    fn add(self, rhs: &FpPoly) -> FpPoly {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        FpPoly::from_reduced(self.p, add_slices(self.p, &self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &FpPoly {
    type Output = FpPoly;
    fn sub(self, rhs: &FpPoly) -> FpPoly {
        self + &(-rhs)
    }
}

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        FpPoly::from_reduced(self.p, self.coeffs.iter().map(|&c| self.p.neg(c)).collect())
    }
}

impl Mul for &FpPoly {
    type Output = FpPoly;
    fn mul(self, rhs: &FpPoly) -> FpPoly {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        FpPoly::from_reduced(self.p, FpPoly::mul_coeffs(self.p, &self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.p)
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c as i64))
            .collect();
        crate::intpoly::write_terms(f, terms.into_iter().rev())
    }
}

/// Checked long division.
pub fn fp_divrem(a: &FpPoly, b: &FpPoly) -> Result<(FpPoly, FpPoly)> {
    a.check_same(b)?;
    if b.is_zero() {
        return Err(Error::DivisionByZeroPoly);
    }
    Ok(a.divrem(b))
}

/// Checked monic gcd.
pub fn fp_gcd(a: &FpPoly, b: &FpPoly) -> Result<FpPoly> {
    a.check_same(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(a.gcd(b))
}

/// The normalized Chebyshev polynomial `C_j` over Z: `C_0 = 2`, `C_1 = T`,
/// `C_{j+1} = T C_j - C_{j-1}`, and `C_{-j} = C_j`.
pub fn chebyshev(j: i64) -> ZPoly {
    let j = j.unsigned_abs() as usize;
    let x = ZPoly::x();
    let mut prev = ZPoly::from_i64s(&[2]);
    if j == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for _ in 1..j {
        let next = &(&x * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `C_j` reduced mod p.
pub fn chebyshev_fp(j: i64, p: Prime) -> FpPoly {
    FpPoly::from_zpoly(p, &chebyshev(j))
}

/// Number of monic irreducible reciprocal polynomials of degree `2m` over `F_p`.
pub fn count_irreducible_reciprocal(p: Prime, m: u64) -> BigInt {
    assert!(m >= 1);
    let q = BigInt::from(p.get());
    let two_m = BigInt::from(2 * m);
    if p.get() > 2 && m.is_power_of_two() {
        return (q.pow(m as u32) - 1u32) / two_m;
    }
    let mut sum = BigInt::zero();
    for d in arith::divisors(m).into_iter().filter(|d| d % 2 == 1) {
        sum += mobius(d) * q.pow((m / d) as u32);
    }
    let (quot, rem) = sum.div_rem(&two_m);
    debug_assert!(rem.is_zero());
    quot
}

/// Expand half coefficients `a_0..a_m` (with `a_j` at `T^{m-j}` and
/// `T^{m+j}`) to a dense polynomial of degree `2m`.
pub fn reciprocal_from_half(p: Prime, half: &[u64]) -> FpPoly {
    let m = half.len() - 1;
    let mut v = vec![0; 2 * m + 1];
    for (j, &a) in half.iter().enumerate() {
        v[m - j] = a % p.get();
        v[m + j] = a % p.get();
    }
    FpPoly::from_reduced(p, v)
}

/// All monic reciprocal polynomials of degree `2m` over `F_p`, in
/// lexicographic order of `(a_0, ..., a_{m-1})`.
pub fn enumerate_reciprocal_mod_p(p: Prime, m: usize) -> Result<impl Iterator<Item = FpPoly>> {
    let total = limits::require(
        "reciprocal enumeration",
        limits::checked_pow(p.get(), m),
        limits::enum_cap(),
    )? as u64;
    Ok((0..total).map(move |idx| {
        let mut half = vec![0; m + 1];
        half[m] = 1;
        let mut r = idx;
        for slot in half.iter_mut().take(m) {
            *slot = r % p.get();
            r /= p.get();
        }
        reciprocal_from_half(p, &half)
    }))
}

/// All monic polynomials of degree exactly `d` over `F_p`.
pub fn enumerate_monic(p: Prime, d: usize) -> Result<impl Iterator<Item = FpPoly>> {
    let total = limits::require("monic enumeration", limits::checked_pow(p.get(), d), limits::enum_cap())? as u64;
    Ok((0..total).map(move |idx| {
        let mut v = vec![0; d + 1];
        v[d] = 1;
        let mut r = idx;
        for slot in v.iter_mut().take(d) {
            *slot = r % p.get();
            r /= p.get();
        }
        FpPoly::from_reduced(p, v)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn f(q: u64, c: &[i64]) -> FpPoly {
        FpPoly::from_i64s(p(q), c)
    }

    #[test]
    fn prime_rejects_composites() {
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(7).is_ok());
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = fp_divrem(&f(3, &[1, 0, 1]), &f(3, &[0, 1])).unwrap();
        assert_eq!((q, r), (f(3, &[0, 1]), f(3, &[1])));
        let (q, r) = fp_divrem(&f(2, &[0, 0, 0, 1]), &f(2, &[0, 0, 0, 1])).unwrap();
        assert_eq!((q, r), (f(2, &[1]), f(2, &[])));
        let (q, r) = fp_divrem(&f(3, &[1, 0, 2, 0, 1]), &f(3, &[1, 0, 1])).unwrap();
        assert_eq!((q, r), (f(3, &[1, 0, 1]), FpPoly::zero(p(3))));
    }

    #[test]
    fn divrem_errors() {
        assert_eq!(
            fp_divrem(&f(3, &[1]), &FpPoly::zero(p(3))),
            Err(Error::DivisionByZeroPoly)
        );
        assert_eq!(fp_divrem(&f(3, &[1]), &f(5, &[1])), Err(Error::ModulusMismatch(3, 5)));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(fp_gcd(&f(5, &[-1, 0, 1]), &f(5, &[-1, 1])).unwrap(), f(5, &[4, 1]));
        assert_eq!(fp_gcd(&f(2, &[0, 1]), &f(2, &[1, 1])).unwrap(), f(2, &[1]));
        let g = fp_gcd(&chebyshev_fp(3, p(5)), &chebyshev_fp(4, p(5))).unwrap();
        assert!(g.is_one());
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev(0), ZPoly::from_i64s(&[2]));
        assert_eq!(chebyshev(2), ZPoly::from_i64s(&[-2, 0, 1]));
        assert_eq!(chebyshev(3), ZPoly::from_i64s(&[0, -3, 0, 1]));
        assert_eq!(chebyshev(-3), chebyshev(3));
    }

    #[test]
    fn chebyshev_recursion_both_directions() {
        let x = ZPoly::x();
        for j in -32i64..=32 {
            assert_eq!(&x * &chebyshev(j), &chebyshev(j + 1) + &chebyshev(j - 1), "j = {j}");
        }
    }

    #[test]
    fn chebyshev_coprimality() {
        let v2 = |n: i64| n.trailing_zeros();
        for q in [3, 5, 7] {
            for a in 1..=20i64 {
                for b in 1..=20i64 {
                    if v2(a) != v2(b) {
                        let g = chebyshev_fp(a, p(q)).gcd(&chebyshev_fp(b, p(q)));
                        assert!(g.is_one(), "p={q} a={a} b={b}");
                    }
                }
            }
        }
        let t = FpPoly::x(p(2));
        for a in 1..=20i64 {
            let ca = chebyshev_fp(a, p(2)).div_exact(&t).unwrap();
            let cb = chebyshev_fp(a + 1, p(2)).div_exact(&t).unwrap();
            assert!(ca.gcd(&cb).is_one(), "a = {a}");
        }
    }

    #[test]
    fn karatsuba_agrees_with_schoolbook() {
        let q = p(7);
        let a: Vec<u64> = (0..150).map(|i| (i * i + 3) % 7).collect();
        let b: Vec<u64> = (0..131).map(|i| (5 * i + 1) % 7).collect();
        assert_eq!(karatsuba(q, &a, &b), schoolbook(q, &a, &b));
    }

    #[test]
    fn inverse_mod_roundtrip() {
        let m = f(5, &[1, 0, 1, 0, 1]);
        let a = f(5, &[0, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert!(a.mulmod(&inv, &m).is_one());
        assert!(f(5, &[1, 1]).inverse_mod(&f(5, &[1, 0, 0, 1])).is_none());
    }

    #[test]
    fn enumerate_examples() {
        let v: Vec<FpPoly> = enumerate_reciprocal_mod_p(p(2), 1).unwrap().collect();
        assert_eq!(v, vec![f(2, &[1, 0, 1]), f(2, &[1, 1, 1])]);
        assert_eq!(enumerate_reciprocal_mod_p(p(3), 1).unwrap().count(), 3);
        let v: Vec<FpPoly> = enumerate_reciprocal_mod_p(p(2), 2).unwrap().collect();
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|a| a.is_reciprocal() && a.degree() == Some(4)));
    }

    #[test]
    fn enumerate_respects_cap() {
        assert!(matches!(
            enumerate_reciprocal_mod_p(p(5), 40),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_irreducible_reciprocal(p(3), 1), BigInt::from(1));
        assert_eq!(count_irreducible_reciprocal(p(5), 1), BigInt::from(2));
        assert_eq!(count_irreducible_reciprocal(p(2), 2), BigInt::from(1));
    }
}
