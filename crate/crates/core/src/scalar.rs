//! Exact field arithmetic.
//!
//! The engine is generic over [`Field`]: a small copyable descriptor that
//! knows how to combine its elements. Two fields are provided, prime fields
//! `F_p` with `p < 2^63` ([`PrimeField`]) and the rationals ([`Rationals`]).
//! [`Scalar`] is a self-describing value for callers that only know the
//! field at runtime (parsers, the C ABI).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic used when nothing else is requested.
pub const DEFAULT_PRIME: u64 = 32003;

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u64),
    Rationals,
}

impl FieldSpec {
    /// Builds `F_p`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 63 {
            return Err(Error::InvalidField(format!("{p} does not fit in 63 bits")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::InvalidField(format!("`{s}` is neither `Q` nor a prime")))?;
        FieldSpec::prime(p)
    }
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_wide(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod_wide(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_wide(acc, base, p);
        }
        base = mul_mod_wide(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Extended Euclid on signed 128-bit integers: returns `(g, x)` with `a*x ≡ g (mod b)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r, old_s)
}

/// Arithmetic of an exact field. Implementors are small `Copy` descriptors;
/// elements carry no reference back to their field.
pub trait Field: Copy + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Maps a rational into the field; fails when the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    /// Canonical text form (`a` or `a/b`).
    fn render(&self, a: &Self::Elem) -> String;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `acc - c * b`, the elimination kernel.
    fn sub_mul(&self, acc: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(acc, &self.mul(c, b))
    }

    /// Rescales a row by a nonzero constant to keep entries small before
    /// elimination. No-op unless the field has coefficient growth.
    fn condition_row(&self, _row: &mut [Self::Elem]) {}
}

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        FieldSpec::prime(p)?;
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        let p = self.p as u128;
        (if s >= p { s - p } else { s }) as u64
    }

    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.p <= u32::MAX as u64 {
            (a * b) % self.p
        } else {
            mul_mod_wide(*a, *b, self.p)
        }
    }

    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        let (g, x) = ext_gcd(*a as i128, self.p as i128);
        debug_assert_eq!(g, 1);
        Ok(self.reduce_i128(x))
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }

    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let num = q.numer().mod_floor(&p).to_u64().expect("reduced below p");
        let den = q.denom().mod_floor(&p).to_u64().expect("reduced below p");
        if den == 0 {
            return Err(Error::InvalidScalar(format!("{q} has no image in F_{}", self.p)));
        }
        self.div(&num, &den)
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The rational numbers, backed by arbitrary-precision fractions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a.recip())
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }

    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }

    fn condition_row(&self, row: &mut [BigRational]) {
        // Scale to a primitive integer vector.
        let mut lcm = BigInt::one();
        for e in row.iter().filter(|e| !e.is_zero()) {
            lcm = lcm.lcm(e.denom());
        }
        let mut gcd = BigInt::zero();
        for e in row.iter().filter(|e| !e.is_zero()) {
            gcd = gcd.gcd(&(e.numer() * (&lcm / e.denom())));
        }
        if gcd.is_zero() {
            return;
        }
        let scale = BigRational::new(lcm, gcd);
        if scale.is_one() {
            return;
        }
        for e in row.iter_mut() {
            *e = &*e * &scale;
        }
    }
}

fn render_rational(a: &BigRational) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Parses `a` or `a/b` (optional leading sign) into a reduced fraction.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::InvalidScalar(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// A field element that remembers its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Prime { p: u64, value: u64 },
    Rational(BigRational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Prime { p, .. } => FieldSpec::Prime(*p),
            Scalar::Rational(_) => FieldSpec::Rationals,
        }
    }

    pub fn from_i64(field: FieldSpec, n: i64) -> Scalar {
        match field {
            FieldSpec::Prime(p) => Scalar::Prime {
                p,
                value: PrimeField { p }.from_i64(n),
            },
            FieldSpec::Rationals => Scalar::Rational(Rationals.from_i64(n)),
        }
    }

    /// Parses the canonical text form in the given field.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Scalar> {
        let q = parse_rational(text)?;
        Ok(match field {
            FieldSpec::Prime(p) => Scalar::Prime {
                p,
                value: PrimeField { p }.from_rational(&q)?,
            },
            FieldSpec::Rationals => Scalar::Rational(q),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Prime { p, value: a }, Scalar::Prime { p: q, value: b }) if p == q => {
                let f = PrimeField { p: *p };
                let value = match op {
                    ArithOp::Add => f.add(a, b),
                    ArithOp::Sub => f.sub(a, b),
                    ArithOp::Mul => f.mul(a, b),
                    ArithOp::Div => f.div(a, b)?,
                };
                Ok(Scalar::Prime { p: *p, value })
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => {
                let f = Rationals;
                Ok(Scalar::Rational(match op {
                    ArithOp::Add => f.add(a, b),
                    ArithOp::Sub => f.sub(a, b),
                    ArithOp::Mul => f.mul(a, b),
                    ArithOp::Div => f.div(a, b)?,
                }))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match self {
            Scalar::Prime { p, value } => Ok(Scalar::Prime {
                p: *p,
                value: PrimeField { p: *p }.inv(value)?,
            }),
            Scalar::Rational(q) => Ok(Scalar::Rational(Rationals.inv(q)?)),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Rational(q) => write!(f, "{}", render_rational(q)),
        }
    }
}
