//! Exact arithmetic in the cyclotomic-rational field Q(zeta_p) and the
//! Hecke parameter points used everywhere else in the crate.
//!
//! Elements are represented canonically as polynomials in zeta_p of degree
//! below phi(p), reduced modulo the p-th cyclotomic polynomial.  Equality is
//! therefore a coefficient-vector comparison and every nonzero element has a
//! computable inverse (extended Euclid against the modulus).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::{HeckeError, Result};

// ---------------------------------------------------------------------------
// integer polynomial helpers (dense, constant term first)
// ---------------------------------------------------------------------------

fn poly_trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    poly_trim(&mut out);
    out
}

/// Exact division of integer polynomials; `den` must be monic and divide `num`.
fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().is_some_and(|c| c.is_one()), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, djc) in den.iter().enumerate() {
            rem[k + j] -= &c * djc;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact polynomial division");
    poly_trim(&mut quot);
    quot
}

/// The p-th cyclotomic polynomial, monic with integer coefficients,
/// constant term first.
///
/// Computed by dividing x^p - 1 by the product of the m-th cyclotomic
/// polynomials over the proper divisors m of p.
pub fn cyclotomic_polynomial(p: u32) -> Vec<BigInt> {
    assert!(p >= 1, "p must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&p) {
        return hit.clone();
    }
    let result = if p == 1 {
        // x - 1
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        let mut divisor_product = vec![BigInt::one()];
        for m in 1..p {
            if p.is_multiple_of(m) {
                divisor_product = poly_mul_int(&divisor_product, &cyclotomic_polynomial(m));
            }
        }
        let mut xp_minus_1 = vec![BigInt::zero(); (p + 1) as usize];
        xp_minus_1[0] = BigInt::from(-1);
        xp_minus_1[p as usize] = BigInt::one();
        poly_div_exact_int(&xp_minus_1, &divisor_product)
    };
    cache.lock().unwrap().insert(p, result.clone());
    result
}

/// Euler totient, the degree of Q(zeta_p) over Q.
pub fn euler_phi(p: u32) -> usize {
    let mut result = p;
    let mut n = p;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            while n.is_multiple_of(q) {
                n /= q;
            }
            result = result / q * (q - 1);
        }
        q += 1;
    }
    if n > 1 {
        result = result / n * (n - 1);
    }
    result as usize
}

fn modulus_rational(p: u32) -> Vec<BigRational> {
    cyclotomic_polynomial(p)
        .into_iter()
        .map(BigRational::from_integer)
        .collect()
}

// ---------------------------------------------------------------------------
// CycloRational
// ---------------------------------------------------------------------------

/// An element of Q(zeta_p): a rational-coefficient polynomial in zeta_p of
/// degree below phi(p), always kept reduced modulo the p-th cyclotomic
/// polynomial.  Canonical: two values are equal iff their coefficient
/// vectors are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloRational {
    p: u32,
    coeffs: Vec<BigRational>,
}

impl CycloRational {
    pub fn zero(p: u32) -> Self {
        CycloRational { p, coeffs: vec![BigRational::zero(); euler_phi(p)] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u32, value: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); euler_phi(p)];
        coeffs[0] = value;
        // phi(1) = phi(2) = 1, so nothing to reduce for constants in general:
        // the constant term never collides with the modulus (deg >= 1).
        CycloRational { p, coeffs }
    }

    pub fn from_integer(p: u32, value: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(value)))
    }

    /// The class of x, i.e. the chosen primitive p-th root of unity.
    pub fn zeta(p: u32) -> Self {
        let phi = euler_phi(p);
        if phi == 1 {
            // p = 1: x = 1; p = 2: x = -1.
            return Self::from_integer(p, if p == 1 { 1 } else { -1 });
        }
        let mut coeffs = vec![BigRational::zero(); phi];
        coeffs[1] = BigRational::one();
        CycloRational { p, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.p, other.p, "mixed cyclotomic conductors {} and {}", self.p, other.p);
    }

    /// Reduce a raw polynomial (any degree) modulo the cyclotomic modulus.
    fn reduce(p: u32, mut raw: Vec<BigRational>) -> Self {
        let phi = euler_phi(p);
        let modulus = modulus_rational(p);
        // long division by the monic modulus
        while raw.len() > phi {
            let k = raw.len() - 1;
            let c = raw[k].clone();
            if !c.is_zero() {
                for (j, mj) in modulus.iter().enumerate() {
                    let idx = k - phi + j;
                    let t = &c * mj;
                    raw[idx] -= t;
                }
            }
            raw.pop();
        }
        raw.resize(phi, BigRational::zero());
        CycloRational { p, coeffs: raw }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut raw = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        Self::reduce(self.p, raw)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic modulus.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(HeckeError::DivisionByZero { p: self.p });
        }
        let phi = euler_phi(self.p);
        if phi == 1 {
            let mut coeffs = vec![self.coeffs[0].recip()];
            coeffs.resize(1, BigRational::zero());
            return Ok(CycloRational { p: self.p, coeffs });
        }
        // extended Euclid over Q[x]: u * self + v * modulus = gcd = const
        let modulus = modulus_rational(self.p);
        let mut r0 = modulus;
        let mut r1: Vec<BigRational> = self.coeffs.clone();
        rational_poly_trim(&mut r1);
        let mut u0 = vec![BigRational::zero()];
        let mut u1 = vec![BigRational::one()];
        while degree(&r1) > 0 {
            let (q, rem) = rational_poly_divmod(&r0, &r1);
            let u_next = rational_poly_sub(&u0, &rational_poly_mul(&q, &u1));
            r0 = r1;
            r1 = rem;
            u0 = u1;
            u1 = u_next;
        }
        // r1 is a nonzero constant because the modulus is irreducible
        let c = r1[0].clone();
        assert!(!c.is_zero(), "cyclotomic modulus not coprime to nonzero element");
        let inv_c = c.recip();
        let coeffs: Vec<BigRational> = u1.iter().map(|t| t * &inv_c).collect();
        Ok(Self::reduce(self.p, coeffs))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::one(self.p);
        for _ in 0..e.unsigned_abs() {
            out = out.mul_ref(&base);
        }
        Ok(out)
    }

    /// Serialization form: reduced "a/b" strings, constant term first.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    /// A total order used only to make set constructions deterministic.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.p.cmp(&other.p).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

fn degree(v: &[BigRational]) -> usize {
    let mut d = v.len();
    while d > 1 && v[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

fn rational_poly_trim(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rational_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    rational_poly_trim(&mut out);
    out
}

fn rational_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    out.resize(a.len().max(b.len()), BigRational::zero());
    for (i, bi) in b.iter().enumerate() {
        out[i] -= bi;
    }
    rational_poly_trim(&mut out);
    out
}

fn rational_poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = degree(den);
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    rational_poly_trim(&mut rem);
    if degree(&rem) < dd || rem.iter().all(|c| c.is_zero()) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); degree(&rem) - dd + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[k + j] -= t;
        }
    }
    rational_poly_trim(&mut rem);
    rational_poly_trim(&mut quot);
    (quot, rem)
}

impl fmt::Debug for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", a)?;
            } else if a.is_one() {
                write!(f, "z{}^{}", self.p, i)?;
            } else {
                write!(f, "{}*z{}^{}", a, self.p, i)?;
            }
            first = false;
        }
        Ok(())
    }
}

impl Serialize for CycloRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings = self.to_strings();
        let mut seq = serializer.serialize_seq(Some(strings.len()))?;
        for s in &strings {
            seq.serialize_element(s)?;
        }
        seq.end()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl:expr) => {
        impl $trait for &CycloRational {
            type Output = CycloRational;
            fn $method(self, rhs: &CycloRational) -> CycloRational {
                let f: fn(&CycloRational, &CycloRational) -> CycloRational = $impl;
                f(self, rhs)
            }
        }
        impl $trait for CycloRational {
            type Output = CycloRational;
            fn $method(self, rhs: CycloRational) -> CycloRational {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&CycloRational> for CycloRational {
            type Output = CycloRational;
            fn $method(self, rhs: &CycloRational) -> CycloRational {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<CycloRational> for &CycloRational {
            type Output = CycloRational;
            fn $method(self, rhs: CycloRational) -> CycloRational {
                $trait::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    a.assert_compatible(b);
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
    CycloRational { p: a.p, coeffs }
});

forward_binop!(Sub, sub, |a, b| {
    a.assert_compatible(b);
    let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
    CycloRational { p: a.p, coeffs }
});

forward_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl Neg for &CycloRational {
    type Output = CycloRational;
    fn neg(self) -> CycloRational {
        CycloRational { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloRational {
    type Output = CycloRational;
    fn neg(self) -> CycloRational {
        -&self
    }
}

impl AddAssign<&CycloRational> for CycloRational {
    fn add_assign(&mut self, rhs: &CycloRational) {
        self.assert_compatible(rhs);
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x += y;
        }
    }
}

impl SubAssign<&CycloRational> for CycloRational {
    fn sub_assign(&mut self, rhs: &CycloRational) {
        self.assert_compatible(rhs);
        for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *x -= y;
        }
    }
}

impl MulAssign<&CycloRational> for CycloRational {
    fn mul_assign(&mut self, rhs: &CycloRational) {
        *self = self.mul_ref(rhs);
    }
}

/// Parse a rational given as "a/b" or "a".
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| HeckeError::InvalidParams(format!("cannot parse integer {s:?}")))
    };
    match text.split_once('/') {
        Some((a, b)) => {
            let den = parse_int(b)?;
            if den.is_zero() {
                return Err(HeckeError::InvalidParams("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(a)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(text)?)),
    }
}

// ---------------------------------------------------------------------------
// Hecke parameters
// ---------------------------------------------------------------------------

/// A vanishing factor of the semisimplicity criterion, kept as an exact
/// witness.
#[derive(Debug, Clone, Serialize)]
pub enum SemisimplicityFailure {
    /// q = 0 or q = 1 is excluded before any factor is formed; recorded
    /// against the q-integer factor family that degenerates there.
    QIntegerDegenerate { q: CycloRational },
    CyclotomicParameterZero { c: usize },
    /// 1 + q + ... + q^{i-1} = 0
    QIntegerFactor { i: usize },
    /// Q_i - eps^t q^k Q_j = 0 with i < j
    CrossFactor { i: usize, j: usize, t: u32, k: i64 },
    /// Q_i (1 - eps^t q^k) = 0 with 1 <= t < p
    UnitFactor { i: usize, t: u32, k: i64 },
}

impl fmt::Display for SemisimplicityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemisimplicityFailure::QIntegerDegenerate { q } => {
                write!(f, "q-integer factor degenerates: q = {q} is not allowed (q must be a unit, q != 1)")
            }
            SemisimplicityFailure::CyclotomicParameterZero { c } => {
                write!(f, "cyclotomic parameter Q_{c} = 0")
            }
            SemisimplicityFailure::QIntegerFactor { i } => {
                write!(f, "q-integer factor 1 + q + ... + q^{} vanishes", i - 1)
            }
            SemisimplicityFailure::CrossFactor { i, j, t, k } => {
                write!(f, "factor (Q_{i} - eps^{t} q^{k} Q_{j}) vanishes")
            }
            SemisimplicityFailure::UnitFactor { i, t, k } => {
                write!(f, "factor Q_{i} (1 - eps^{t} q^{k}) vanishes")
            }
        }
    }
}

/// The parameter point (r, p, d, n, q, Q_1..Q_d) with eps the fixed
/// primitive p-th root of unity of Q(zeta_p).
///
/// The full cyclotomic parameter list of the ambient algebra is
/// (eps Q_1, ..., eps Q_d, eps^2 Q_1, ..., eps^p Q_d).
#[derive(Debug, Clone, Serialize)]
pub struct HeckeParams {
    pub r: usize,
    pub p: usize,
    pub d: usize,
    pub n: usize,
    pub q: CycloRational,
    pub qs: Vec<CycloRational>,
    pub eps: CycloRational,
}

impl HeckeParams {
    pub fn new(r: usize, p: usize, n: usize, q: BigRational, qs: Vec<BigRational>) -> Result<Self> {
        if r == 0 || p == 0 || !r.is_multiple_of(p) {
            return Err(HeckeError::InvalidParams(format!("need p | r and r, p >= 1; got r={r}, p={p}")));
        }
        let d = r / p;
        if qs.len() != d {
            return Err(HeckeError::InvalidParams(format!("expected {d} cyclotomic parameters, got {}", qs.len())));
        }
        let pc = p as u32;
        let params = HeckeParams {
            r,
            p,
            d,
            n,
            q: CycloRational::from_rational(pc, q),
            qs: qs.into_iter().map(|v| CycloRational::from_rational(pc, v)).collect(),
            eps: CycloRational::zeta(pc),
        };
        Ok(params)
    }

    pub fn conductor(&self) -> u32 {
        self.p as u32
    }

    pub fn zero(&self) -> CycloRational {
        CycloRational::zero(self.conductor())
    }

    pub fn one(&self) -> CycloRational {
        CycloRational::one(self.conductor())
    }

    pub fn integer(&self, v: i64) -> CycloRational {
        CycloRational::from_integer(self.conductor(), v)
    }

    /// eps^t with t reduced mod p.
    pub fn eps_power(&self, t: i64) -> CycloRational {
        let p = self.p as i64;
        let t = t.rem_euclid(p);
        self.eps.pow(t).expect("eps is a unit")
    }

    /// q^k for any integer k (q is validated to be a unit before use).
    pub fn q_power(&self, k: i64) -> CycloRational {
        self.q.pow(k).expect("q is a unit")
    }

    /// Evaluates the full semisimplicity product: the q-integer factors
    /// 1 + q + ... + q^{i-1} for i <= n, the cross-parameter factors
    /// (Q_i - eps^t q^k Q_j) for i < j, 0 <= t < p, -n < k < n, and the
    /// factors Q_i (1 - eps^t q^k) for 1 <= t < p.  Returns the first
    /// vanishing factor as a witness.
    pub fn check_semisimple(&self) -> std::result::Result<(), SemisimplicityFailure> {
        if self.q.is_zero() || self.q.is_one() {
            return Err(SemisimplicityFailure::QIntegerDegenerate { q: self.q.clone() });
        }
        for (c, qc) in self.qs.iter().enumerate() {
            if qc.is_zero() {
                return Err(SemisimplicityFailure::CyclotomicParameterZero { c: c + 1 });
            }
        }
        let mut q_integer = self.one();
        let mut q_pow = self.one();
        for i in 1..=self.n {
            // q_integer = 1 + q + ... + q^{i-1}
            if i > 1 {
                q_pow *= &self.q;
                q_integer += &q_pow;
            }
            if q_integer.is_zero() {
                return Err(SemisimplicityFailure::QIntegerFactor { i });
            }
        }
        let n = self.n as i64;
        for i in 0..self.d {
            for j in (i + 1)..self.d {
                for t in 0..self.p as u32 {
                    for k in (-n + 1)..n {
                        let factor =
                            &self.qs[i] - &(self.eps_power(t as i64) * self.q_power(k) * &self.qs[j]);
                        if factor.is_zero() {
                            return Err(SemisimplicityFailure::CrossFactor { i: i + 1, j: j + 1, t, k });
                        }
                    }
                }
            }
        }
        for i in 0..self.d {
            for t in 1..self.p as u32 {
                for k in (-n + 1)..n {
                    let factor = &self.qs[i]
                        * &(self.one() - self.eps_power(t as i64) * self.q_power(k));
                    if factor.is_zero() {
                        return Err(SemisimplicityFailure::UnitFactor { i: i + 1, t, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// The deterministic default point: q = 2 and Q_c the c-th odd prime,
    /// advanced along the primes until the semisimplicity check passes.
    pub fn default_point(r: usize, p: usize, n: usize) -> Result<Self> {
        if r == 0 || p == 0 || !r.is_multiple_of(p) {
            return Err(HeckeError::InvalidParams(format!("need p | r; got r={r}, p={p}")));
        }
        let d = r / p;
        let mut primes = odd_primes();
        let mut qs: Vec<BigRational> =
            (0..d).map(|_| BigRational::from_integer(BigInt::from(primes.next().unwrap()))).collect();
        for _ in 0..64 {
            let candidate = HeckeParams::new(r, p, n, BigRational::from_integer(BigInt::from(2)), qs.clone())?;
            match candidate.check_semisimple() {
                Ok(()) => return Ok(candidate),
                Err(witness) => {
                    // advance the last parameter and retry
                    let next = BigRational::from_integer(BigInt::from(primes.next().unwrap()));
                    if let Some(last) = qs.last_mut() {
                        *last = next;
                    } else {
                        return Err(HeckeError::NotSemisimple(witness));
                    }
                }
            }
        }
        Err(HeckeError::InvalidParams("no semisimple default point found within the retry bound".into()))
    }
}

fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&m| {
        if m % 2 == 0 {
            return false;
        }
        let mut q = 3;
        while q * q <= m {
            if m % q == 0 {
                return false;
            }
            q += 2;
        }
        true
    })
}
