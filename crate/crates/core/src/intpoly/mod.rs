//! Dense polynomials over Z: arithmetic, resultants, discriminants and
//! cyclotomic divisors.

mod factor;

pub use factor::{factor_over_z, is_irreducible_over_z, ZFactorization};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{mobius, totient};
use crate::error::{Error, Result};

/// Polynomial over Z; `coeffs[i]` is the coefficient of `T^i`, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `c * T^d`.
    pub fn monomial(c: BigInt, d: usize) -> Self {
        let mut v = vec![BigInt::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_one()
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let (q, r) = a.div_rem(c);
                    debug_assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs: v }
    }

    /// `T^{deg} P(1/T)`; the zero polynomial is rejected.
    pub fn reversal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut v = self.coeffs.clone();
        v.reverse();
        Ok(Self::new(v))
    }

    /// Even degree and palindromic coefficients.
    pub fn is_reciprocal(&self) -> bool {
        match self.degree() {
            Some(d) if d % 2 == 0 => (0..=d).all(|i| self.coeffs[i] == self.coeffs[d - i]),
            _ => false,
        }
    }

    /// `P(-T)`.
    pub fn negate_variable(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Pseudo-remainder: `lc(b)^{deg a - deg b + 1} a = q b + r`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero());
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return self.clone();
        }
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let steps = r.len() - db;
        for i in (0..steps).rev() {
            let c = r[i + db].clone();
            for v in r.iter_mut() {
                *v *= &lb;
            }
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[i + j] -= &c * bj;
                }
            }
        }
        r.truncate(db);
        Self::new(r)
    }

    /// Exact quotient over Z, or `None` if `b` does not divide `self` in Z[T].
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return None;
        }
        let lb = b.lc();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let (c, rem) = r[i + db].div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[i + j] -= &c * bj;
                }
            }
            q[i] = c;
        }
        r.iter().all(|c| c.is_zero()).then(|| Self::new(q))
    }

    /// Remainder modulo a monic divisor.
    pub fn rem_monic(&self, b: &Self) -> Self {
        assert!(b.is_monic(), "rem_monic needs a monic divisor");
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        for i in (0..r.len() - db).rev() {
            let c = r[i + db].clone();
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[i + j] -= &c * bj;
                }
            }
        }
        r.truncate(db);
        Self::new(r)
    }

    /// Gcd in Z[T] (primitive remainder sequence), primitive with positive
    /// leading coefficient, times the gcd of the contents.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Max absolute coefficient.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Ceiling of the Euclidean norm.
    pub fn l2_norm_ceil(&self) -> BigInt {
        let s: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = s.sqrt();
        if &r * &r == s {
            r
        } else {
            r + 1
        }
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
}

pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (usize, impl Into<BigInt>)>,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in terms {
        let c: BigInt = c.into();
        let neg = c.sign() == Sign::Minus;
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let show_coeff = !a.is_one() || i == 0;
        if show_coeff {
            write!(f, "{a}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "{}T", if show_coeff { "*" } else { "" })?,
            _ => write!(f, "{}T^{i}", if show_coeff { "*" } else { "" })?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, BigInt)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        write_terms(f, terms.into_iter().rev())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `P(x)` exactly.
pub fn evaluate(p: &ZPoly, x: &BigInt) -> BigInt {
    p.evaluate(x)
}

/// `Res(P, Q) = lc(P)^{deg Q} prod_{P(a)=0} Q(a)`, by the subresultant
/// remainder sequence.
pub fn resultant(p: &ZPoly, q: &ZPoly) -> Result<BigInt> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut sign = BigInt::one();
    let deg = |x: &ZPoly| x.degree().unwrap();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return Ok(sign * b.lc().pow(deg(&a) as u32));
    }
    let (ca, cb) = (a.content(), b.content());
    let t = ca.pow(deg(&b) as u32) * cb.pow(deg(&a) as u32);
    a = a.div_scalar_exact(&ca);
    b = b.div_scalar_exact(&cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (da, db) = (deg(&a), deg(&b));
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        let divisor = &g * h.pow(delta as u32);
        b = r.div_scalar_exact(&divisor);
        g = a.lc();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow(delta as u32 - 1)
        };
        if deg(&b) == 0 {
            let da = deg(&a) as u32;
            let hh = b.lc().pow(da) / h.pow(da - 1);
            return Ok(sign * t * hh);
        }
    }
}

/// `Δ(P) = (-1)^{d(d-1)/2} Res(P, P') / lc(P)`.
pub fn discriminant(p: &ZPoly) -> Result<BigInt> {
    let d = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(BigInt::one());
    }
    let r = resultant(p, &p.derivative())?;
    let (q, rem) = r.div_rem(&p.lc());
    debug_assert!(rem.is_zero());
    Ok(if (d * (d - 1) / 2) % 2 == 1 { -q } else { q })
}

/// `n > 0` and `n` is a perfect square.
pub fn is_nonzero_square(n: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// The cyclotomic polynomial `Φ_d = prod_{e | d} (T^e - 1)^{μ(d/e)}`,
/// dividing exactly by the factors with negative exponent.
pub fn cyclotomic(d: u64) -> ZPoly {
    assert!(d >= 1);
    let binom = |e: u64| &ZPoly::monomial(BigInt::one(), e as usize) - &ZPoly::one();
    let divs: Vec<u64> = (1..=d).filter(|e| d.is_multiple_of(*e)).collect();
    let mut acc = ZPoly::one();
    for &e in &divs {
        if mobius(d / e) == 1 {
            acc = &acc * &binom(e);
        }
    }
    for &e in &divs {
        if mobius(d / e) == -1 {
            acc = acc.div_exact(&binom(e)).expect("exact cyclotomic quotient");
        }
    }
    acc
}

/// All `d` with `φ(d) <= 2 k0` and `Φ_d | A`, increasing.
pub fn cyclotomic_divisor_scan(a: &ZPoly, k0: u64) -> Vec<u64> {
    // φ(d) >= sqrt(d/2), so d <= 2 (2 k0)^2 covers every candidate.
    let bound = 2 * (2 * k0) * (2 * k0);
    (1..=bound.max(2))
        .filter(|&d| totient(d) <= 2 * k0)
        .filter(|&d| a.rem_monic(&cyclotomic(d)).is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Sylvester determinant by fraction-free Gaussian elimination (Bareiss),
    /// an oracle independent of the remainder sequence.
    fn sylvester_resultant(p: &ZPoly, q: &ZPoly) -> BigInt {
        let (m, n) = (p.degree().unwrap(), q.degree().unwrap());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for r in 0..n {
            for i in 0..=m {
                mat[r][r + i] = p.coeff(m - i);
            }
        }
        for r in 0..m {
            for i in 0..=n {
                mat[n + r][r + i] = q.coeff(n - i);
            }
        }
        bareiss_det(mat)
    }

    fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
        let n = a.len();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * prev
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&z(&[1, 1, 1]), &big(1)), big(3));
        assert_eq!(evaluate(&ZPoly::zero(), &big(5)), big(0));
        assert_eq!(evaluate(&z(&[1, 2, 3, 2, 1]), &big(-1)), big(1));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&z(&[-2, 1]), &z(&[-5, 1])).unwrap(), big(-3));
        assert_eq!(resultant(&z(&[1, 0, 1]), &z(&[0, 1])).unwrap(), big(1));
        assert_eq!(resultant(&z(&[-1, 0, 1]), &z(&[-4, 0, 1])).unwrap(), big(9));
        assert_eq!(resultant(&ZPoly::zero(), &z(&[1])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&z(&[1, 1, 1])).unwrap(), big(-3));
        assert_eq!(discriminant(&z(&[0, -1, 0, 1])).unwrap(), big(4));
        assert_eq!(discriminant(&z(&[1, 1, 1, 1, 1])).unwrap(), big(125));
        assert_eq!(discriminant(&z(&[3])), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn discriminant_of_non_monic_quadratic() {
        // 2T^2 + 3T - 5: b^2 - 4ac = 9 + 40
        assert_eq!(discriminant(&z(&[-5, 3, 2])).unwrap(), big(49));
    }

    #[test]
    fn square_examples() {
        assert!(is_nonzero_square(&big(49)));
        assert!(!is_nonzero_square(&big(0)));
        assert!(!is_nonzero_square(&big(-4)));
        let huge = BigInt::from(10).pow(1600) + 7;
        assert!(is_nonzero_square(&(&huge * &huge)));
        assert!(!is_nonzero_square(&(&huge * &huge + 1)));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(4), z(&[1, 0, 1]));
        assert_eq!(cyclotomic(1), z(&[-1, 1]));
        assert_eq!(cyclotomic(12), z(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_divisor_scan(&z(&[-1, 0, 0, 0, 1]), 2), vec![1, 2, 4]);
        assert_eq!(cyclotomic_divisor_scan(&z(&[1, 1, 1, 1, 1]), 2), vec![5]);
    }

    #[test]
    fn reversal_and_reciprocity() {
        assert_eq!(z(&[3, 2, 1]).reversal().unwrap(), z(&[1, 2, 3]));
        assert!(z(&[1, 5, 1]).is_reciprocal());
        assert!(!z(&[1, 1, 1, 1]).is_reciprocal());
        assert_eq!(ZPoly::zero().reversal(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = &z(&[1, 3, 1]) * &z(&[-1, 1]);
        let b = &z(&[1, 3, 1]) * &z(&[2, 0, 1]);
        assert_eq!(a.gcd(&b), z(&[1, 3, 1]));
        assert_eq!(a.div_exact(&z(&[1, 3, 1])), Some(z(&[-1, 1])));
        assert_eq!(a.div_exact(&z(&[2, 1])), None);
    }

    fn arb_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = ZPoly> {
        proptest::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|v| ZPoly::from_i64s(&v))
    }

    fn arb_monic(max_deg: usize) -> impl Strategy<Value = ZPoly> {
        proptest::collection::vec(-9i64..=9, 0..=max_deg).prop_map(|mut v| {
            v.push(1);
            ZPoly::from_i64s(&v)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn resultant_swap_sign(p in arb_poly(8, 9), q in arb_poly(8, 9)) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let (dp, dq) = (p.degree().unwrap(), q.degree().unwrap());
            let rpq = resultant(&p, &q).unwrap();
            let rqp = resultant(&q, &p).unwrap();
            let s = if (dp * dq) % 2 == 1 { -rpq.clone() } else { rpq.clone() };
            prop_assert_eq!(s, rqp);
            prop_assert_eq!(rpq, sylvester_resultant(&p, &q));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn discriminant_multiplicative(p in arb_monic(6), q in arb_monic(6)) {
            prop_assume!(p.degree().unwrap() >= 1 && q.degree().unwrap() >= 1);
            let r = resultant(&p, &q).unwrap();
            prop_assume!(!r.is_zero());
            let lhs = discriminant(&(&p * &q)).unwrap();
            let rhs = discriminant(&p).unwrap() * discriminant(&q).unwrap() * &r * &r;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pseudo_rem_identity(a in arb_poly(8, 20), b in arb_poly(5, 20)) {
            prop_assume!(!b.is_zero());
            let r = a.pseudo_rem(&b);
            let da = a.degree().unwrap_or(0);
            let db = b.degree().unwrap();
            let e = if da >= db { (da - db + 1) as u32 } else { 0 };
            let scaled = a.scale(&b.lc().pow(e));
            let diff = &scaled - &r;
            prop_assert!(diff.div_exact(&b).is_some());
            prop_assert!(r.is_zero() || r.degree().unwrap() < db);
        }
    }
}
