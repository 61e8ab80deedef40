//! Arithmetic in finite fields `F_q`, `q = p^e <= 2^16`.
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of the
//! encoding are the coefficients of the polynomial representative, lowest
//! degree first. Multiplication and inversion go through log/antilog tables
//! built on a fixed primitive element (the smallest encoding of
//! multiplicative order `q - 1`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

/// Shared handle to an immutable field context.
pub type Field = Arc<FieldContext>;

/// Orders up to this bound get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

enum Adder {
    Xor,
    Prime,
    Table(Vec<u16>),
    Digits(Vec<u32>),
}

/// Precomputed arithmetic for one finite field.
pub struct FieldContext {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    adder: Adder,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p` (low degree first).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1);
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let t = (lead as u64 * bi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_from_index(index: u64, degree: u32, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(degree as usize + 1);
    let mut x = index;
    for _ in 0..degree {
        coeffs.push((x % p as u64) as u32);
        x /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Irreducibility by trial division against every monic polynomial of
/// degree at most `deg / 2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() as u32 - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let divisor = monic_from_index(idx, d, p);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of the given degree,
/// comparing lower coefficients as a base-`p` integer.
pub(crate) fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for idx in 0..count {
        let poly = monic_from_index(idx, e, p);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

struct SlowArith<'a> {
    p: u32,
    e: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            d.push(x % self.p);
            x /= self.p;
        }
        d
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.e as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
            }
        }
        let mut r = poly_rem(&prod, self.modulus, self.p);
        r.resize(self.e as usize, 0);
        self.encode(&r)
    }
}

impl FieldContext {
    /// Builds `F_{p^e}`. With `modulus = None` the lexicographically least
    /// monic irreducible polynomial of degree `e` is used.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge(order));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, got {}",
                        e + 1,
                        m.len()
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus("coefficient out of range".into()));
                }
                if m[e as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if !is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => least_irreducible(p, e),
        };
        let q = order as u32;
        let slow = SlowArith { p, e, modulus: &modulus };

        let mut primitive = 0;
        let mut exp = Vec::new();
        for g in 1..q {
            let mut powers = vec![1u32];
            let mut x = g;
            while x != 1 {
                powers.push(x);
                x = slow.mul(x, g);
            }
            if powers.len() as u32 == q - 1 {
                primitive = g;
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();

        let neg: Vec<u32> = (0..q)
            .map(|x| {
                let d: Vec<u32> = slow.digits(x).iter().map(|&c| (p - c) % p).collect();
                slow.encode(&d)
            })
            .collect();

        let adder = if p == 2 {
            Adder::Xor
        } else if e == 1 {
            Adder::Prime
        } else if q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = slow.digits(a);
                for b in 0..q {
                    let db = slow.digits(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    table[(a * q + b) as usize] = slow.encode(&s) as u16;
                }
            }
            Adder::Table(table)
        } else {
            Adder::Digits((0..e).map(|i| p.pow(i)).collect())
        };

        Ok(Arc::new(FieldContext {
            p,
            e,
            q,
            modulus,
            primitive,
            exp: doubled,
            log,
            neg,
            adder,
        }))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element used for the log tables.
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.adder {
            Adder::Xor => a ^ b,
            Adder::Prime => {
                let s = a + b;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            }
            Adder::Table(t) => t[(a * self.q + b) as usize] as u32,
            Adder::Digits(powers) => {
                let (mut x, mut y, mut out) = (a, b, 0);
                for &pw in powers {
                    out += ((x % self.p + y % self.p) % self.p) * pw;
                    x /= self.p;
                    y /= self.p;
                }
                out
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            let l = self.log[a as usize];
            Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
        }
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (k % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// Discrete logarithm to the primitive base.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `g^k` for the primitive element `g`.
    pub fn exp(&self, k: u64) -> u32 {
        self.exp[(k % (self.q as u64 - 1)) as usize]
    }

    /// Base-`p` coefficient vector of an element.
    pub fn coefficients(&self, mut a: u32) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.q
    }

    pub fn check(&self, a: u32) -> Result<u32> {
        if a < self.q {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange { value: a, q: self.q })
        }
    }

    pub fn element(self: &Arc<Self>, repr: u32) -> Result<FieldElement> {
        FieldElement::new(self, repr)
    }
}

/// An element of `F_q` bound to its field.
#[derive(Clone)]
pub struct FieldElement {
    repr: u32,
    ctx: Field,
}

impl FieldElement {
    pub fn new(ctx: &Field, repr: u32) -> Result<Self> {
        ctx.check(repr)?;
        Ok(FieldElement { repr, ctx: ctx.clone() })
    }

    pub fn zero(ctx: &Field) -> Self {
        FieldElement { repr: 0, ctx: ctx.clone() }
    }

    pub fn one(ctx: &Field) -> Self {
        FieldElement { repr: 1, ctx: ctx.clone() }
    }

    pub fn repr(&self) -> u32 {
        self.repr
    }

    pub fn field(&self) -> &Field {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.repr == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn with(&self, repr: u32) -> Self {
        FieldElement { repr, ctx: self.ctx.clone() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.ctx.add(self.repr, other.repr)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.ctx.sub(self.repr, other.repr)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.ctx.mul(self.repr, other.repr)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let inv = other.ctx.inv(other.repr).ok_or(Error::DivideByZero)?;
        Ok(self.with(self.ctx.mul(self.repr, inv)))
    }

    pub fn inv(&self) -> Result<Self> {
        self.ctx.inv(self.repr).map(|r| self.with(r)).ok_or(Error::DivideByZero)
    }

    pub fn pow(&self, k: u64) -> Self {
        self.with(self.ctx.pow(self.repr, k))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && (Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx)
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@F{}", self.repr, self.ctx.q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

// Operator forms panic on a field mismatch; use the `checked_*` methods to
// get an error instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field elements from different fields")
            }
        }
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.with(self.ctx.neg(self.repr))
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
