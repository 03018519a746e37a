//! Exact arithmetic in cyclotomic fields `Q(zeta_m)`.
//!
//! A [`CycNum`] is stored in the power basis `1, z, .., z^(phi(m)-1)` of
//! `Q[x]/Phi_m(x)` with integer numerators over one common positive
//! denominator. Reduction modulo the cyclotomic polynomial is canonical, so
//! two values are equal exactly when their normalized coefficient vectors are
//! equal (after embedding both into the field of the lcm of their moduli).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Exact rational used for inner products, multiplicities and S-matrix entries.
pub type Rational = Ratio<i128>;

/// Precomputed reduction data for one modulus.
#[derive(Debug)]
pub(crate) struct Basis {
    pub(crate) phi: usize,
    /// `pow[k]` = coefficients of `z^k mod Phi_m`, for `0 <= k < m`.
    pub(crate) pow: Vec<Vec<i128>>,
}

fn cache() -> &'static RwLock<HashMap<u32, Arc<Basis>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Basis>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients (low degree first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i128> {
    assert!(m >= 1, "cyclotomic modulus must be positive");
    // x^m - 1 divided by Phi_d for every proper divisor d.
    let mut poly = vec![0i128; m as usize + 1];
    poly[0] = -1;
    poly[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i128; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "non-exact cyclotomic division");
    quot
}

pub(crate) fn basis(m: u32) -> Arc<Basis> {
    if let Some(b) = cache().read().expect("basis cache poisoned").get(&m) {
        return b.clone();
    }
    let phi_poly = cyclotomic_polynomial(m);
    let phi = phi_poly.len() - 1;
    let mut pow = Vec::with_capacity(m as usize);
    let mut cur = vec![0i128; phi];
    cur[0] = 1;
    for _ in 0..m {
        pow.push(cur.clone());
        // multiply by x, then fold the x^phi term back with the monic relation
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    let b = Arc::new(Basis { phi, pow });
    cache().write().expect("basis cache poisoned").entry(m).or_insert(b).clone()
}

/// Reduce a raw vector indexed by exponent `0..m` into the power basis.
pub(crate) fn reduce_raw(basis: &Basis, raw: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; basis.phi];
    out.copy_from_slice(&raw[..basis.phi]);
    for (k, &c) in raw.iter().enumerate().skip(basis.phi) {
        if c != 0 {
            for (o, &p) in out.iter_mut().zip(&basis.pow[k]) {
                *o += c * p;
            }
        }
    }
    out
}

/// Element of `Q(zeta_m)` with exact rational coefficients.
#[derive(Clone, Debug)]
pub struct CycNum {
    m: u32,
    den: i128,
    num: Vec<i128>,
}

impl CycNum {
    fn normalized(m: u32, mut den: i128, mut num: Vec<i128>) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|c| *c = -*c);
        }
        let g = num.iter().fold(den, |g, &c| g.gcd(&c));
        if num.iter().all(|&c| c == 0) {
            den = 1;
        } else if g > 1 {
            den /= g;
            num.iter_mut().for_each(|c| *c /= g);
        }
        CycNum { m, den, num }
    }

    /// Zero of `Q(zeta_m)`.
    pub fn zero(m: u32) -> Self {
        let phi = basis(m).phi;
        CycNum { m, den: 1, num: vec![0; phi] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i128) -> Self {
        CycNum { m: 1, den: 1, num: vec![n] }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::normalized(1, *r.denom(), vec![*r.numer()])
    }

    /// `zeta_m^k`.
    pub fn zeta(m: u32, k: i64) -> Self {
        let b = basis(m);
        let k = k.rem_euclid(m as i64) as usize;
        CycNum { m, den: 1, num: b.pow[k].clone() }
    }

    /// Builds `(sum_k raw[k] zeta_m^k) / den` from a raw exponent vector of length `m`.
    pub fn from_raw(m: u32, raw: &[i128], den: i128) -> Self {
        assert_eq!(raw.len(), m as usize, "raw vector must have length m");
        let b = basis(m);
        Self::normalized(m, den, reduce_raw(&b, raw))
    }

    pub(crate) fn from_parts(m: u32, den: i128, num: Vec<i128>) -> Self {
        Self::normalized(m, den, num)
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    /// Power-basis numerators (length `phi(m)`).
    pub fn numerators(&self) -> &[i128] {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational() == Some(Rational::from_integer(1))
    }

    /// The value as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(|&c| c == 0) {
            Some(Rational::new(self.num[0], self.den))
        } else {
            None
        }
    }

    /// The value as an integer, when it is one.
    pub fn as_integer(&self) -> Option<i128> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// True when all power-basis coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Re-express in `Q(zeta_target)`; `self.modulus()` must divide `target`.
    pub fn embed(&self, target: u32) -> Self {
        if target == self.m {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.m), "cannot embed Q(zeta_{}) into Q(zeta_{})", self.m, target);
        let step = (target / self.m) as usize;
        let tb = basis(target);
        let mut raw = vec![0i128; target as usize];
        for (i, &c) in self.num.iter().enumerate() {
            raw[i * step] = c;
        }
        CycNum { m: target, den: self.den, num: reduce_raw(&tb, &raw) }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.m == b.m {
            return (a.clone(), b.clone());
        }
        let l = a.m.lcm(&b.m);
        (a.embed(l), b.embed(l))
    }

    /// Image under the Galois automorphism `zeta -> zeta^k` (`gcd(k, m) = 1`).
    pub fn galois(&self, k: i64) -> Self {
        let m = self.m as i64;
        let b = basis(self.m);
        let mut raw = vec![0i128; self.m as usize];
        for (i, &c) in self.num.iter().enumerate() {
            raw[(i as i64 * k).rem_euclid(m) as usize] += c;
        }
        CycNum { m: self.m, den: self.den, num: reduce_raw(&b, &raw) }
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(r.recip()));
        }
        let m = self.m as i64;
        let mut others = CycNum::one();
        for k in 2..m {
            if k.gcd(&m) == 1 {
                others = &others * &self.galois(k);
            }
        }
        let norm = (&others * self).as_rational().expect("field norm must be rational");
        Some(others.scale(norm.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn scale(&self, r: Rational) -> Self {
        let num = self.num.iter().map(|&c| c * r.numer()).collect();
        Self::normalized(self.m, self.den * r.denom(), num)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Compares coefficient vectors lexicographically (low degree first) in
    /// the common field; a total order used only for canonical sorting.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        let (a, b) = Self::common(self, other);
        for (x, y) in a.num.iter().zip(&b.num) {
            match (x * b.den).cmp(&(y * a.den)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Floating-point value, for diagnostics and cross-checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        for (k, &c) in self.num.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / self.m as f64;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        (re / self.den as f64, im / self.den as f64)
    }

    /// Encoding `{m, num (length m, indexed by exponent), den}`.
    pub fn to_json(&self) -> CycNumJson {
        let mut num = vec![0i128; self.m as usize];
        num[..self.num.len()].copy_from_slice(&self.num);
        CycNumJson { m: self.m, num, den: self.den }
    }

    pub fn from_json(j: &CycNumJson) -> Result<Self, CycJsonError> {
        if j.m == 0 {
            return Err(CycJsonError::ZeroModulus);
        }
        if j.num.len() != j.m as usize {
            return Err(CycJsonError::Length { m: j.m, len: j.num.len() });
        }
        if j.den <= 0 {
            return Err(CycJsonError::Denominator(j.den));
        }
        Ok(Self::from_raw(j.m, &j.num, j.den))
    }
}

/// Serialized form of a [`CycNum`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycNumJson {
    pub m: u32,
    pub num: Vec<i128>,
    pub den: i128,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CycJsonError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("expected {m} numerators, got {len}")]
    Length { m: u32, len: usize },
    #[error("denominator must be positive, got {0}")]
    Denominator(i128),
}

impl Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycNumJson::deserialize(d)?;
        CycNum::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = Self::common(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl From<i128> for CycNum {
    fn from(n: i128) -> Self {
        CycNum::from_int(n)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if self.m != rhs.m {
            let (a, b) = CycNum::common(self, rhs);
            return &a + &b;
        }
        let num = self.num.iter().zip(&rhs.num).map(|(&x, &y)| x * rhs.den + y * self.den).collect();
        CycNum::normalized(self.m, self.den * rhs.den, num)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { m: self.m, den: self.den, num: self.num.iter().map(|&c| -c).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.m != rhs.m {
            let (a, b) = CycNum::common(self, rhs);
            return &a * &b;
        }
        let b = basis(self.m);
        let m = self.m as usize;
        let mut raw = vec![0i128; m];
        for (i, &x) in self.num.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.num.iter().enumerate() {
                raw[(i + j) % m] += x * y;
            }
        }
        CycNum::normalized(self.m, self.den * rhs.den, reduce_raw(&b, &raw))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: &CycNum) -> CycNum {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        iter.fold(CycNum::from_int(0), |a, b| a + b)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return if r.is_integer() { write!(f, "{}", r.numer()) } else { write!(f, "{}/{}", r.numer(), r.denom()) };
        }
        let mut body = String::new();
        for (k, &c) in self.num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if body.is_empty() {
                if c < 0 {
                    body.push('-');
                }
            } else {
                body.push_str(&format!(" {sign} "));
            }
            let a = c.abs();
            match (k, a) {
                (0, _) => body.push_str(&a.to_string()),
                (_, 1) => body.push_str(&format!("z{}^{}", self.m, k)),
                _ => body.push_str(&format!("{}*z{}^{}", a, self.m, k)),
            }
        }
        if self.den == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

/// Dense matrix over `Z[zeta_m]` scaled by one common denominator; the
/// workhorse for exact matrix products in a fixed field.
#[derive(Clone, Debug)]
pub struct CycMatrix {
    m: u32,
    phi: usize,
    rows: usize,
    cols: usize,
    den: i128,
    data: Vec<i128>,
}

impl CycMatrix {
    /// Builds from entries, embedding all of them into `Q(zeta_m)`.
    pub fn from_entries(m: u32, rows: usize, cols: usize, entries: &[CycNum]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let phi = basis(m).phi;
        let embedded: Vec<CycNum> = entries.iter().map(|e| e.embed(m)).collect();
        let den = embedded.iter().fold(1i128, |l, e| l.lcm(&e.den));
        let mut data = vec![0i128; rows * cols * phi];
        for (idx, e) in embedded.iter().enumerate() {
            let s = den / e.den;
            for (d, &c) in data[idx * phi..(idx + 1) * phi].iter_mut().zip(&e.num) {
                *d = c * s;
            }
        }
        CycMatrix { m, phi, rows, cols, den, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> CycNum {
        let off = (r * self.cols + c) * self.phi;
        CycNum::from_parts(self.m, self.den, self.data[off..off + self.phi].to_vec())
    }

    pub fn entries(&self) -> Vec<CycNum> {
        (0..self.rows).flat_map(|r| (0..self.cols).map(move |c| (r, c))).map(|(r, c)| self.get(r, c)).collect()
    }

    pub fn conj(&self) -> Self {
        let b = basis(self.m);
        let m = self.m as usize;
        let mut data = vec![0i128; self.data.len()];
        let mut raw = vec![0i128; m];
        for (chunk, out) in self.data.chunks(self.phi).zip(data.chunks_mut(self.phi)) {
            raw.iter_mut().for_each(|x| *x = 0);
            for (i, &c) in chunk.iter().enumerate() {
                raw[(m - i) % m] += c;
            }
            out.copy_from_slice(&reduce_raw(&b, &raw));
        }
        CycMatrix { data, ..self.clone() }
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0i128; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let src = (r * self.cols + c) * self.phi;
                let dst = (c * self.rows + r) * self.phi;
                data[dst..dst + self.phi].copy_from_slice(&self.data[src..src + self.phi]);
            }
        }
        CycMatrix { rows: self.cols, cols: self.rows, data, ..self.clone() }
    }

    /// Exact product; both operands must share the modulus. Rows are
    /// computed in parallel.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.m, rhs.m, "modulus mismatch");
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let b = basis(self.m);
        let (phi, m) = (self.phi, self.m as usize);
        let mut data = vec![0i128; self.rows * rhs.cols * phi];
        data.par_chunks_mut(rhs.cols * phi).enumerate().for_each(|(i, out_row)| {
            let mut raw = vec![0i128; m];
            for j in 0..rhs.cols {
                raw.iter_mut().for_each(|x| *x = 0);
                for k in 0..self.cols {
                    let a = &self.data[(i * self.cols + k) * phi..][..phi];
                    let c = &rhs.data[(k * rhs.cols + j) * phi..][..phi];
                    mul_acc(a, c, &mut raw, m);
                }
                out_row[j * phi..(j + 1) * phi].copy_from_slice(&reduce_raw(&b, &raw));
            }
        });
        CycMatrix { m: self.m, phi, rows: self.rows, cols: rhs.cols, den: self.den * rhs.den, data }
    }
}

/// `raw += a * c` where `a`, `c` are power-basis vectors and `raw` is indexed by exponent.
#[inline]
pub(crate) fn mul_acc(a: &[i128], c: &[i128], raw: &mut [i128], m: usize) {
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in c.iter().enumerate() {
            if y != 0 {
                let k = i + j;
                raw[if k >= m { k - m } else { k }] += x * y;
            }
        }
    }
}

impl PartialEq for CycMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries() == other.entries()
    }
}
