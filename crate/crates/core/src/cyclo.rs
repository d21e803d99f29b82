//! Exact arithmetic in cyclotomic fields `Q(z_n)`.
//!
//! An element is stored as a sparse rational combination of the powers
//! `z^0, .., z^(phi(n)-1)`, reduced modulo the n-th cyclotomic polynomial.
//! That basis makes equality a plain comparison of coefficient maps.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, lowest degree first.
type IntPoly = Vec<i64>;

/// Per-conductor reduction data.
#[derive(Debug)]
struct FieldData {
    degree: usize,
    /// `powers[e]` is `z^e` written in the power basis, for `0 <= e < n`.
    powers: Vec<Vec<(u32, i64)>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn poly_cache() -> &'static RwLock<HashMap<u32, IntPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact division of integer polynomials; `divisor` must be monic.
fn poly_div_exact(mut num: IntPoly, divisor: &[i64]) -> IntPoly {
    let dd = divisor.len() - 1;
    debug_assert_eq!(divisor[dd], 1);
    if num.len() <= dd {
        return vec![];
    }
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = num[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, d) in divisor.iter().enumerate() {
                num[k + i] -= c * d;
            }
        }
    }
    debug_assert!(num.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// The n-th cyclotomic polynomial, built by dividing `x^n - 1` by the
/// cyclotomic polynomials of the proper divisors of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0, "conductor must be positive");
    if let Some(p) = poly_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(num, &phi_d);
        }
    }
    poly_cache().write().unwrap().insert(n, num.clone());
    num
}

fn field(n: u32) -> Arc<FieldData> {
    if let Some(f) = field_cache().read().unwrap().get(&n) {
        return f.clone();
    }
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    // Reduce z^e for e < n by repeated multiplication by z.
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree.max(1)];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as u32, c))
                .collect(),
        );
        // multiply by z and reduce the top coefficient via phi
        let mut next = vec![0i64; degree.max(1)];
        let top = if degree == 0 { 0 } else { cur[degree - 1] };
        for i in (1..degree).rev() {
            next[i] = cur[i - 1];
        }
        if degree > 0 {
            for (i, p) in phi.iter().take(degree).enumerate() {
                next[i] -= top * p;
            }
        }
        cur = next;
    }
    let data = Arc::new(FieldData { degree, powers });
    field_cache().write().unwrap().insert(n, data.clone());
    data
}

/// Degree of the n-th cyclotomic field over Q (Euler's totient).
pub fn field_degree(n: u32) -> usize {
    field(n).degree
}

/// An exact element of `Q(z_n)`.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    conductor: u32,
    coeffs: BTreeMap<u32, BigRational>,
}

impl CycloScalar {
    pub fn zero(conductor: u32) -> Self {
        assert!(conductor > 0, "conductor must be positive");
        CycloScalar {
            conductor,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, BigRational::one())
    }

    pub fn from_rational(conductor: u32, q: BigRational) -> Self {
        let mut s = Self::zero(conductor);
        if !q.is_zero() {
            s.coeffs.insert(0, q);
        }
        s
    }

    pub fn from_int(conductor: u32, v: i64) -> Self {
        Self::from_rational(conductor, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_frac(conductor: u32, num: i64, den: i64) -> Self {
        Self::from_rational(conductor, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `q * z^e` in `Q(z_n)`; `e` may be negative or exceed `n`.
    pub fn monomial(conductor: u32, q: BigRational, exponent: i64) -> Self {
        let mut out = Self::zero(conductor);
        if q.is_zero() {
            return out;
        }
        let f = field(conductor);
        let e = exponent.rem_euclid(conductor as i64) as usize;
        for (idx, c) in &f.powers[e] {
            let v = &q * BigRational::from_integer(BigInt::from(*c));
            out.add_coeff(*idx, v);
        }
        out
    }

    /// The primitive root `z_n^e`.
    pub fn root_of_unity(conductor: u32, exponent: i64) -> Self {
        Self::monomial(conductor, BigRational::one(), exponent)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Nonzero coefficients in the reduced power basis.
    pub fn coeffs(&self) -> &BTreeMap<u32, BigRational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    fn add_coeff(&mut self, idx: u32, v: BigRational) {
        if v.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(idx).or_insert_with(BigRational::zero);
        *entry += v;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    /// Embed into `Q(z_m)` where `conductor | m`.
    pub fn embed(&self, target: u32) -> Self {
        assert!(
            target.is_multiple_of(self.conductor),
            "cannot embed conductor {} into {}",
            self.conductor,
            target
        );
        if target == self.conductor {
            return self.clone();
        }
        let scale = (target / self.conductor) as i64;
        let mut out = Self::zero(target);
        for (e, c) in &self.coeffs {
            out += &Self::monomial(target, c.clone(), *e as i64 * scale);
        }
        out
    }

    fn aligned(a: &Self, b: &Self) -> (u32, Option<Self>, Option<Self>) {
        if a.conductor == b.conductor {
            return (a.conductor, None, None);
        }
        let l = a.conductor.lcm(&b.conductor);
        let ea = (a.conductor != l).then(|| a.embed(l));
        let eb = (b.conductor != l).then(|| b.embed(l));
        (l, ea, eb)
    }

    /// Image under the Galois automorphism `z -> z^j` (`gcd(j, n) = 1`).
    pub fn galois(&self, j: i64) -> Self {
        let mut out = Self::zero(self.conductor);
        for (e, c) in &self.coeffs {
            out += &Self::monomial(self.conductor, c.clone(), *e as i64 * j);
        }
        out
    }

    /// Complex conjugation, `z -> z^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        let n = self.conductor;
        // product of all non-trivial Galois conjugates; a * prod is the norm
        let mut prod = Self::one(n);
        for j in 2..n.max(2) {
            if j.gcd(&n) == 1 {
                prod = &prod * &self.galois(j as i64);
            }
        }
        let norm = (self * &prod)
            .as_rational()
            .expect("norm of a cyclotomic element is rational");
        Ok(prod.scale(&norm.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(self.conductor);
        }
        CycloScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents via the inverse.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u32))
        } else {
            Ok(self.inv()?.pow((-exp) as u32))
        }
    }

    /// Floating point value with `z = exp(2 pi i / n)`; display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.coeffs.iter().fold((0.0, 0.0), |(re, im), (e, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * (*e as f64) / n;
            (re + v * t.cos(), im + v * t.sin())
        })
    }

    /// Serialized form, e.g. `1/3*zeta^0+2/3*zeta^1`; `0` for zero.
    pub fn to_term_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.coeffs.iter().enumerate() {
            if k > 0 && !c.is_negative() {
                out.push('+');
            }
            out.push_str(&format!("{c}*zeta^{e}"));
        }
        out
    }

    /// Parse a sum of terms `r*zeta^e`, `r` or `zeta^e` in `Q(z_n)`.
    pub fn parse(conductor: u32, text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut out = Self::zero(conductor);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, term.strip_prefix('+').unwrap_or(term)),
            };
            let (coef_txt, exp) = if let Some(pos) = body.find("zeta^") {
                let exp_txt = &body[pos + 5..];
                let exp: i64 = exp_txt
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in scalar term `{term}`")))?;
                let coef = body[..pos].trim_end_matches('*');
                (if coef.is_empty() { "1" } else { coef }, exp)
            } else {
                (body, 0)
            };
            let q: BigRational = coef_txt
                .parse()
                .map_err(|_| Error::Parse(format!("bad rational in scalar term `{term}`")))?;
            let q = if sign < 0 { -q } else { q };
            out += &Self::monomial(conductor, q, exp);
        }
        Ok(out)
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (_, ea, eb) = Self::aligned(self, other);
        let a = ea.as_ref().unwrap_or(self);
        let b = eb.as_ref().unwrap_or(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloScalar {}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if *e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "z^{e}")?;
            } else {
                write!(f, "{mag}*z^{e}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &'a CycloScalar) -> CycloScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(mut self, rhs: CycloScalar) -> CycloScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        if self.conductor != rhs.conductor {
            let l = self.conductor.lcm(&rhs.conductor);
            if l != self.conductor {
                *self = self.embed(l);
            }
            if l != rhs.conductor {
                *self += &rhs.embed(l);
                return;
            }
        }
        for (e, c) in &rhs.coeffs {
            self.add_coeff(*e, c.clone());
        }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &'a CycloScalar) -> CycloScalar {
        self + &(-rhs)
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: CycloScalar) -> CycloScalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &'a CycloScalar) -> CycloScalar {
        if self.conductor != rhs.conductor {
            let (_, ea, eb) = CycloScalar::aligned(self, rhs);
            return ea.as_ref().unwrap_or(self) * eb.as_ref().unwrap_or(rhs);
        }
        let n = self.conductor;
        if self.is_zero() || rhs.is_zero() {
            return CycloScalar::zero(n);
        }
        // rational fast paths
        if let (1, Some(q)) = (self.coeffs.len(), self.coeffs.get(&0)) {
            return rhs.scale(q);
        }
        if let (1, Some(q)) = (rhs.coeffs.len(), rhs.coeffs.get(&0)) {
            return self.scale(q);
        }
        let f = field(n);
        let mut acc = vec![BigRational::zero(); f.degree];
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                let prod = c1 * c2;
                let e = ((e1 + e2) % n) as usize;
                for (idx, k) in &f.powers[e] {
                    acc[*idx as usize] += &prod * BigRational::from_integer(BigInt::from(*k));
                }
            }
        }
        CycloScalar {
            conductor: n,
            coeffs: acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u32, c))
                .collect(),
        }
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: CycloScalar) -> CycloScalar {
        &self * &rhs
    }
}
