//! Reciprocal polynomials, the trace correspondence `A(T) = T^m A_R(T + 1/T)`,
//! reciprocal gcds and factorization shapes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::fppoly::{fp_factor, fp_is_irreducible, FpPoly, Prime};
use crate::intpoly::{factor_over_z, is_irreducible_over_z, is_nonzero_square, ZPoly};

/// Reciprocal polynomial of degree `2m` stored by `a_0..a_m`, where `a_j` is
/// the coefficient of `T^{m-j}` and of `T^{m+j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecPoly {
    half: Vec<BigInt>,
}

impl RecPoly {
    pub fn new(half: Vec<BigInt>) -> Result<Self> {
        match half.last() {
            Some(top) if !top.is_zero() => Ok(RecPoly { half }),
            _ => Err(Error::InvalidArgument(
                "reciprocal polynomial needs a nonzero top coefficient".into(),
            )),
        }
    }

    pub fn from_i64s(half: &[i64]) -> Result<Self> {
        Self::new(half.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Reads a dense polynomial, rejecting non-reciprocal input.
    pub fn from_dense(p: &ZPoly) -> Result<Self> {
        if !p.is_reciprocal() {
            return Err(Error::NotReciprocal);
        }
        let m = p.degree().unwrap() / 2;
        Self::new((0..=m).map(|j| p.coeff(m + j)).collect())
    }

    /// Half-degree.
    pub fn m(&self) -> usize {
        self.half.len() - 1
    }

    pub fn half(&self) -> &[BigInt] {
        &self.half
    }

    pub fn is_monic(&self) -> bool {
        self.half[self.m()].is_one()
    }

    pub fn to_dense(&self) -> ZPoly {
        shifted_dense(&self.half)
    }

    pub fn reduce(&self, p: Prime) -> FpPoly {
        FpPoly::from_zpoly(p, &self.to_dense())
    }

    /// The trace polynomial `A_R` of degree `m`.
    pub fn trace(&self) -> ZPoly {
        to_trace(&self.half)
    }
}

/// Element `c_l + ... + c_0 T^l + ... + c_l T^{2l}` of the shifted space `R^sh(l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedRecPoly {
    half: Vec<BigInt>,
}

impl ShiftedRecPoly {
    pub fn new(half: Vec<BigInt>) -> Result<Self> {
        if half.is_empty() {
            return Err(Error::InvalidArgument("empty shifted reciprocal".into()));
        }
        Ok(ShiftedRecPoly { half })
    }

    /// Reads a dense polynomial as an element of `R^sh(ell)`.
    pub fn from_dense(p: &ZPoly, ell: usize) -> Result<Self> {
        if p.degree().is_some_and(|d| d > 2 * ell) {
            return Err(Error::NotReciprocal);
        }
        let half: Vec<BigInt> = (0..=ell).map(|i| p.coeff(ell + i)).collect();
        if (0..=ell).any(|i| p.coeff(ell - i) != half[i]) {
            return Err(Error::NotReciprocal);
        }
        Ok(ShiftedRecPoly { half })
    }

    pub fn ell(&self) -> usize {
        self.half.len() - 1
    }

    pub fn half(&self) -> &[BigInt] {
        &self.half
    }

    pub fn to_dense(&self) -> ZPoly {
        shifted_dense(&self.half)
    }

    pub fn trace(&self) -> ZPoly {
        to_trace(&self.half)
    }
}

impl std::ops::Add for &ShiftedRecPoly {
    type Output = ShiftedRecPoly;
    fn add(self, rhs: &ShiftedRecPoly) -> ShiftedRecPoly {
        assert_eq!(self.ell(), rhs.ell(), "shifted spaces differ");
        ShiftedRecPoly {
            half: self.half.iter().zip(&rhs.half).map(|(a, b)| a + b).collect(),
        }
    }
}

fn shifted_dense(half: &[BigInt]) -> ZPoly {
    let ell = half.len() - 1;
    let mut v = vec![BigInt::zero(); 2 * ell + 1];
    for (j, a) in half.iter().enumerate() {
        v[ell - j] = a.clone();
        v[ell + j] = a.clone();
    }
    ZPoly::new(v)
}

/// Trace polynomial from half coefficients. Computed twice, by the closed
/// binomial formula and by peeling off `b_i T^{l-i} (T^2+1)^i` from the top,
/// and the two must agree.
pub fn to_trace(half: &[BigInt]) -> ZPoly {
    let by_formula = trace_by_formula(half);
    let by_division = trace_by_division(half);
    assert_eq!(by_formula, by_division, "trace computations disagree");
    by_formula
}

fn trace_by_formula(half: &[BigInt]) -> ZPoly {
    let m = half.len() - 1;
    let b = (0..=m)
        .map(|i| {
            let mut acc = half[i].clone();
            for j in 1..=(m - i) / 2 {
                let (ii, jj) = (i as i64, j as i64);
                let weight = binomial(ii + jj, jj) + binomial(ii + jj - 1, jj - 1);
                let term = weight * &half[i + 2 * j];
                if j % 2 == 1 {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            acc
        })
        .collect();
    ZPoly::new(b)
}

fn trace_by_division(half: &[BigInt]) -> ZPoly {
    let m = half.len() - 1;
    let mut rest = shifted_dense(half).coeffs().to_vec();
    rest.resize(2 * m + 1, BigInt::zero());
    let mut b = vec![BigInt::zero(); m + 1];
    for i in (0..=m).rev() {
        let c = rest[m + i].clone();
        if c.is_zero() {
            continue;
        }
        // subtract c T^{m-i} (T^2 + 1)^i
        for r in 0..=i {
            rest[m - i + 2 * r] -= &c * binomial(i as i64, r as i64);
        }
        b[i] = c;
    }
    assert!(rest.iter().all(|c| c.is_zero()), "input is not shifted reciprocal");
    ZPoly::new(b)
}

/// `G^{R,l} = T^l G(T + 1/T)`, the inverse of the trace map.
pub fn from_trace(g: &ZPoly, ell: usize) -> Result<ShiftedRecPoly> {
    if g.degree().is_some_and(|d| d > ell) {
        return Err(Error::InvalidArgument(format!(
            "degree {} exceeds shift {ell}",
            g.degree().unwrap()
        )));
    }
    let half: Vec<BigInt> = (0..=ell)
        .map(|i| {
            let mut acc = BigInt::zero();
            let mut j = 0;
            while i + 2 * j <= ell {
                let s = (i + 2 * j) as i64;
                acc += g.coeff(i + 2 * j) * binomial(s, (i + j) as i64);
                j += 1;
            }
            acc
        })
        .collect();
    let out = ShiftedRecPoly { half };
    assert_eq!(
        out.to_dense(),
        expand_trace(g, ell),
        "inverse trace disagrees with expansion"
    );
    Ok(out)
}

/// Direct expansion `sum g_s T^{l-s} (T^2+1)^s`.
fn expand_trace(g: &ZPoly, ell: usize) -> ZPoly {
    let t2p1 = ZPoly::from_i64s(&[1, 0, 1]);
    let mut power = ZPoly::one();
    let mut acc = ZPoly::zero();
    for s in 0..=ell {
        acc = &acc + &power.shift(ell - s).scale(&g.coeff(s));
        power = &power * &t2p1;
    }
    acc
}

/// Half coefficients of an element of `R^sh_p(ell)` given densely.
pub fn shifted_half_fp(a: &FpPoly, ell: usize) -> Result<Vec<u64>> {
    if a.degree().is_some_and(|d| d > 2 * ell) {
        return Err(Error::NotReciprocal);
    }
    let half: Vec<u64> = (0..=ell).map(|i| a.coeff(ell + i)).collect();
    if (0..=ell).any(|i| a.coeff(ell - i) != half[i]) {
        return Err(Error::NotReciprocal);
    }
    Ok(half)
}

/// Binomial coefficients `C(n, r)` mod p for `n <= max_n`.
fn pascal_mod(p: Prime, max_n: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let mut row = vec![1u64; n + 1];
        for r in 1..n {
            row[r] = p.add(rows[n - 1][r - 1], rows[n - 1][r]);
        }
        rows.push(row);
    }
    rows
}

/// Trace polynomial of an element of `R^sh_p(ell)` over `F_p`, by the
/// binomial formula and by peeling, which must agree.
pub fn to_trace_fp(a: &FpPoly, ell: usize) -> Result<FpPoly> {
    let p = a.modulus();
    let half = shifted_half_fp(a, ell)?;
    let binom = pascal_mod(p, ell);
    let by_formula: Vec<u64> = (0..=ell)
        .map(|i| {
            let mut acc = half[i];
            for j in 1..=(ell - i) / 2 {
                let w = p.add(binom[i + j][j], binom[i + j - 1][j - 1]);
                let term = p.mul(w, half[i + 2 * j]);
                acc = if j % 2 == 1 { p.sub(acc, term) } else { p.add(acc, term) };
            }
            acc
        })
        .collect();
    let mut rest: Vec<u64> = (0..=2 * ell).map(|i| a.coeff(i)).collect();
    let mut by_division = vec![0u64; ell + 1];
    for i in (0..=ell).rev() {
        let c = rest[ell + i];
        if c == 0 {
            continue;
        }
        for (r, &b) in binom[i].iter().enumerate().take(i + 1) {
            let idx = ell - i + 2 * r;
            rest[idx] = p.sub(rest[idx], p.mul(c, b));
        }
        by_division[i] = c;
    }
    assert!(rest.iter().all(|&c| c == 0), "input is not shifted reciprocal");
    assert_eq!(by_formula, by_division, "trace computations disagree");
    Ok(FpPoly::new(p, by_formula))
}

/// `T^l G(T + 1/T)` over `F_p`, as a dense polynomial.
pub fn from_trace_fp(g: &FpPoly, ell: usize) -> Result<FpPoly> {
    if g.degree().is_some_and(|d| d > ell) {
        return Err(Error::InvalidArgument(format!(
            "degree {} exceeds shift {ell}",
            g.degree().unwrap()
        )));
    }
    let p = g.modulus();
    let binom = pascal_mod(p, ell);
    let mut dense = vec![0u64; 2 * ell + 1];
    for i in 0..=ell {
        let mut acc = 0;
        let mut j = 0;
        while i + 2 * j <= ell {
            acc = p.add(acc, p.mul(g.coeff(i + 2 * j), binom[i + 2 * j][i + j]));
            j += 1;
        }
        dense[ell - i] = acc;
        dense[ell + i] = acc;
    }
    let out = FpPoly::new(p, dense);
    debug_assert_eq!(&to_trace_fp(&out, ell)?, g, "trace round trip failed");
    Ok(out)
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x7ec1)
}

/// Split monic irreducible factors (with multiplicity) into the buckets of a
/// reciprocal factorization. Works for any field where reversal of a monic
/// irreducible is computed by `rev`.
struct Buckets<P> {
    plus_one: usize,
    minus_one: usize,
    reciprocal: Vec<(P, usize)>,
    pairs: Vec<(P, P, usize, usize)>,
    t_power: usize,
}

fn bucket<P: Clone + Ord>(
    factors: Vec<(P, usize)>,
    is_t: impl Fn(&P) -> bool,
    is_plus_one: impl Fn(&P) -> bool,
    is_minus_one: impl Fn(&P) -> bool,
    rev: impl Fn(&P) -> P,
) -> Buckets<P> {
    let mut out = Buckets {
        plus_one: 0,
        minus_one: 0,
        reciprocal: vec![],
        pairs: vec![],
        t_power: 0,
    };
    let table: BTreeMap<P, usize> = factors.into_iter().collect();
    for (f, &e) in &table {
        if is_t(f) {
            out.t_power = e;
        } else if is_plus_one(f) {
            out.plus_one = e;
        } else if is_minus_one(f) {
            out.minus_one = e;
        } else {
            let r = rev(f);
            if &r == f {
                out.reciprocal.push((f.clone(), e));
            } else if f < &r {
                let er = table.get(&r).copied().unwrap_or(0);
                out.pairs.push((f.clone(), r, e, er));
            } else if !table.contains_key(&r) {
                out.pairs.push((r, f.clone(), 0, e));
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct FpKey(Vec<u64>);

fn fp_buckets(g: &FpPoly) -> Buckets<FpKey> {
    let p = g.modulus();
    let factors = fp_factor(g, &mut rng())
        .factors
        .into_iter()
        .map(|(f, e)| (FpKey(f.coeffs().to_vec()), e))
        .collect();
    let minus_one = FpKey(vec![p.neg(1), 1]);
    let plus_one = FpKey(vec![1, 1]);
    bucket(
        factors,
        |f| f.0 == [0, 1],
        |f| *f == plus_one,
        |f| *f == minus_one && p.get() != 2,
        |f| {
            let poly = FpPoly::from_reduced(p, f.0.clone());
            FpKey(poly.reversal().unwrap().monic().coeffs().to_vec())
        },
    )
}

/// Greatest monic reciprocal common divisor over `F_p`.
pub fn reciprocal_gcd_fp(a: &FpPoly, b: &FpPoly) -> Result<FpPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = a.modulus();
    let g = a.gcd(b);
    if g.degree() == Some(0) {
        return Ok(FpPoly::one(p));
    }
    let bk = fp_buckets(&g);
    let poly = |k: &FpKey| FpPoly::from_reduced(p, k.0.clone());
    let mut acc = FpPoly::one(p);
    acc = &acc * &poly(&FpKey(vec![1, 1])).pow((bk.plus_one / 2 * 2) as u32);
    if p.get() != 2 {
        acc = &acc * &poly(&FpKey(vec![p.neg(1), 1])).pow((bk.minus_one / 2 * 2) as u32);
    }
    for (f, e) in &bk.reciprocal {
        acc = &acc * &poly(f).pow(*e as u32);
    }
    for (j, jr, e, er) in &bk.pairs {
        let k = (*e).min(*er) as u32;
        acc = &acc * &(&poly(j) * &poly(jr)).pow(k);
    }
    Ok(acc)
}

/// Greatest reciprocal common divisor over Z (primitive, positive lc).
pub fn reciprocal_gcd_z(a: &ZPoly, b: &ZPoly) -> Result<ZPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = a.gcd(b).primitive_part();
    let factors = factor_over_z(&g)?.factors;
    let key = |f: &ZPoly| f.coeffs().to_vec();
    let table: Vec<(Vec<BigInt>, usize)> = factors.iter().map(|(f, e)| (key(f), *e)).collect();
    let one = BigInt::one();
    let bk = bucket(
        table,
        |f| f.len() == 2 && f[0].is_zero(),
        |f| f.len() == 2 && f[0] == one && f[1] == one,
        |f| f.len() == 2 && f[0] == -one.clone() && f[1] == one,
        |f| key(&ZPoly::new(f.clone()).reversal().unwrap().primitive_part()),
    );
    let poly = |k: &Vec<BigInt>| ZPoly::new(k.clone());
    let mut acc = ZPoly::one();
    acc = &acc * &ZPoly::from_i64s(&[1, 1]).pow((bk.plus_one / 2 * 2) as u32);
    acc = &acc * &ZPoly::from_i64s(&[-1, 1]).pow((bk.minus_one / 2 * 2) as u32);
    for (f, e) in &bk.reciprocal {
        acc = &acc * &poly(f).pow(*e as u32);
    }
    for (j, jr, e, er) in &bk.pairs {
        let k = (*e).min(*er) as u32;
        acc = &acc * &(&poly(j) * &poly(jr)).pow(k);
    }
    Ok(acc)
}

/// Irreducibility of the trace polynomial over `F_p`.
pub fn is_semi_irreducible_fp(a: &FpPoly) -> Result<bool> {
    let m = a.degree().ok_or(Error::ZeroPolynomial)? / 2;
    Ok(fp_is_irreducible(&to_trace_fp(a, m)?))
}

/// Irreducibility of the trace polynomial over Z.
pub fn is_semi_irreducible(a: &RecPoly) -> Result<bool> {
    is_irreducible_over_z(&a.trace())
}

/// `A = unit (T-1)^{2a} (T+1)^{2b} prod I_i prod J_j J_j,rev` over `F_p`,
/// every listed factor monic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorShape {
    pub unit: u64,
    pub a: usize,
    pub b: usize,
    /// Reciprocal irreducible factors, repeated by multiplicity.
    pub reciprocal: Vec<Vec<u64>>,
    /// Pairs `(J, J_rev)` with `J` the smaller, repeated by multiplicity.
    pub pairs: Vec<(Vec<u64>, Vec<u64>)>,
    /// In characteristic 2 `T-1 = T+1`; all of it is reported in `a`.
    pub char2_folded: bool,
}

impl FactorShape {
    pub fn expand(&self, p: Prime) -> FpPoly {
        let poly = |c: &Vec<u64>| FpPoly::new(p, c.clone());
        let mut acc = FpPoly::constant(p, self.unit);
        acc = &acc * &FpPoly::from_i64s(p, &[-1, 1]).pow(2 * self.a as u32);
        acc = &acc * &FpPoly::from_i64s(p, &[1, 1]).pow(2 * self.b as u32);
        for f in &self.reciprocal {
            acc = &acc * &poly(f);
        }
        for (j, jr) in &self.pairs {
            acc = &acc * &(&poly(j) * &poly(jr));
        }
        acc
    }
}

/// Classify the irreducible factors of a reciprocal polynomial over `F_p`.
pub fn factor_shape(a: &FpPoly) -> Result<FactorShape> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !a.is_reciprocal() {
        return Err(Error::NotReciprocal);
    }
    let p = a.modulus();
    let bk = fp_buckets(a);
    if bk.t_power > 0 {
        return Err(Error::ShapeViolation("T divides a reciprocal polynomial".into()));
    }
    let even = |e: usize, what: &str| {
        if e % 2 == 1 {
            Err(Error::ShapeViolation(format!("odd power of {what}")))
        } else {
            Ok(e / 2)
        }
    };
    let char2 = p.get() == 2;
    let (ea, eb) = if char2 {
        (even(bk.plus_one, "T+1")?, 0)
    } else {
        (even(bk.minus_one, "T-1")?, even(bk.plus_one, "T+1")?)
    };
    let mut reciprocal = Vec::new();
    for (f, e) in bk.reciprocal {
        if f.0.len() % 2 == 0 {
            return Err(Error::ShapeViolation("self-reversed factor of odd degree".into()));
        }
        reciprocal.extend(std::iter::repeat_n(f.0, e));
    }
    let mut pairs = Vec::new();
    for (j, jr, e, er) in bk.pairs {
        if e != er {
            return Err(Error::ShapeViolation(format!(
                "factor {:?} and its reversal have multiplicities {e} and {er}",
                j.0
            )));
        }
        pairs.extend(std::iter::repeat_n((j.0, jr.0), e));
    }
    let shape = FactorShape {
        unit: a.lc(),
        a: ea,
        b: eb,
        reciprocal,
        pairs,
        char2_folded: char2,
    };
    if shape.expand(p) != *a {
        return Err(Error::ShapeViolation("factors do not reassemble".into()));
    }
    Ok(shape)
}

/// Outcome of [`classify_reducibility`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reducibility {
    Irreducible,
    /// A monic reciprocal divisor of degree at most `m`.
    ReciprocalDivisor(ZPoly),
    /// `A = sign * I * I_rev` with `I` monic, irreducible and not reciprocal.
    Exceptional {
        sign: i8,
        factor: ZPoly,
    },
}

/// Decide how a monic reciprocal integer polynomial factors.
pub fn classify_reducibility(a: &RecPoly) -> Result<Reducibility> {
    if !a.is_monic() {
        return Err(Error::InvalidArgument(
            "classify_reducibility needs a monic input".into(),
        ));
    }
    let dense = a.to_dense();
    let trace = a.trace();
    if !is_irreducible_over_z(&trace)? {
        let fac = factor_over_z(&trace)?;
        let (smallest, _) = fac
            .factors
            .iter()
            .min_by(|(f, _), (g, _)| (f.degree(), f.coeffs()).cmp(&(g.degree(), g.coeffs())))
            .expect("reducible trace has factors");
        let d = from_trace(smallest, smallest.degree().unwrap())?.to_dense();
        if !dense.rem_monic(&d).is_zero() {
            return Err(Error::ShapeViolation("reciprocal divisor does not divide".into()));
        }
        return Ok(Reducibility::ReciprocalDivisor(d));
    }
    // Semi-irreducible: reducible only as ±I I_rev, which forces
    // A(1) A(-1) = ± square.
    let v = dense.evaluate(&BigInt::one()) * dense.evaluate(&-BigInt::one());
    if !v.is_zero() && !is_nonzero_square(&v.abs()) {
        return Ok(Reducibility::Irreducible);
    }
    let fac = factor_over_z(&dense)?;
    if fac.count() == 1 {
        return Ok(Reducibility::Irreducible);
    }
    let i = fac.factors[0].0.clone();
    let rev = i.reversal()?;
    let prod = &i * &rev;
    let quot = dense
        .div_exact(&prod)
        .ok_or_else(|| Error::ShapeViolation("semi-irreducible factorization is not I*I_rev".into()))?;
    let sign = match quot.degree() {
        Some(0) if quot.coeff(0).is_one() => 1,
        Some(0) if quot.coeff(0) == -BigInt::one() => -1,
        _ => return Err(Error::ShapeViolation("unexpected factorization shape".into())),
    };
    if i.is_reciprocal() || i.degree() != Some(a.m()) {
        return Err(Error::ShapeViolation("exceptional factor has the wrong shape".into()));
    }
    Ok(Reducibility::Exceptional { sign, factor: i })
}
