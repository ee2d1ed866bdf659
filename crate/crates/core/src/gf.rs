//! Arithmetic in the finite field 𝔽_q = 𝔽_p[X]/(m(X)), q = pᵉ.
//!
//! Elements are stored as their canonical integer encoding Σ cᵢ·pⁱ, where
//! (c₀, …, c_{e−1}) are the coefficients of the residue-class representative
//! in ascending degree. Multiplication goes through discrete log / antilog
//! tables built once per field; addition is digit-wise mod p. The trace to
//! 𝔽_p is tabulated, since every character evaluation in the crate is a trace
//! lookup.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on the field order q.
pub const DEFAULT_FIELD_CAP: usize = 16384;

/// An element of a [`FiniteField`], identified by its canonical encoding.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Canonical integer encoding in `[0, q)`.
    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_raw(v: u32) -> Self {
        FieldElement(v)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: `{p, e, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

struct Tables {
    p: u32,
    e: u32,
    q: usize,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in [0, 2(q−1)), so a sum of two logs never needs reducing.
    exp: Vec<u32>,
    /// log[x] for x ≠ 0; log[0] is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
}

/// The field 𝔽_q. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FiniteField {
    t: Arc<Tables>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.t.p)
            .field("e", &self.t.e)
            .field("modulus", &self.t.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.e == other.t.e && self.t.modulus == other.t.modulus)
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as pᵉ, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut e = 0u32;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

/// Builds 𝔽_{pᵉ} with the default size cap.
pub fn make_field(p: u64, e: u32) -> Result<FiniteField> {
    make_field_with_cap(p, e, DEFAULT_FIELD_CAP)
}

/// Builds the field of order q, which must be a prime power.
pub fn field_of_order(q: u64) -> Result<FiniteField> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p as u64, e)
}

/// Builds 𝔽_{pᵉ}, using the lexicographically smallest monic irreducible
/// polynomial of degree e as modulus (coefficients compared from the
/// constant term upwards).
pub fn make_field_with_cap(p: u64, e: u32, cap: usize) -> Result<FiniteField> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidSpec(
            "extension degree must be at least 1".into(),
        ));
    }
    let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
    if q > cap as u128 {
        return Err(Error::SizeExceeded {
            what: "field order q",
            value: q,
            cap: cap as u128,
        });
    }
    let p = p as u32;
    let q = q as usize;
    let modulus = if e == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p, e as usize)
    };

    let fp = FpPoly { p };
    let slow_mul = |a: u32, b: u32| -> u32 {
        if e == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        let prod = fp.mul(&decode(a, p, e), &decode(b, p, e));
        encode(&fp.rem(&prod, &modulus), p)
    };

    // Search for a primitive element: the smallest encoding of order q − 1.
    let order = q - 1;
    let mut exp = vec![0u32; 2 * order.max(1)];
    let mut found = false;
    for g in 1..q as u32 {
        exp[0] = 1;
        let mut x = 1u32;
        let mut ok = true;
        for i in 1..order {
            x = slow_mul(x, g);
            if x == 1 {
                ok = false;
                break;
            }
            exp[i] = x;
        }
        if ok {
            found = true;
            break;
        }
    }
    assert!(found, "multiplicative group of a finite field is cyclic");
    for i in order..2 * order {
        exp[i] = exp[i - order];
    }
    let mut log = vec![u32::MAX; q];
    for (i, &x) in exp.iter().take(order).enumerate() {
        log[x as usize] = i as u32;
    }

    let mut field = FiniteField {
        t: Arc::new(Tables {
            p,
            e,
            q,
            modulus,
            exp,
            log,
            trace: Vec::new(),
        }),
    };

    let mut trace = vec![0u32; q];
    for x in 0..q as u32 {
        let x = FieldElement(x);
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..e {
            acc = field.add(acc, y);
            y = field.pow(y, p as u64);
        }
        assert!(acc.0 < p, "trace must land in the prime field");
        trace[x.0 as usize] = acc.0;
    }
    Arc::get_mut(&mut field.t)
        .expect("unshared during construction")
        .trace = trace;
    Ok(field)
}

impl FiniteField {
    #[inline]
    pub fn p(&self) -> u32 {
        self.t.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.t.e
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.t.q
    }

    /// Modulus coefficients, ascending, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.t.p,
            e: self.t.e,
            modulus: self.t.modulus.clone(),
        }
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        (x.0 as usize) < self.t.q
    }

    /// Element with the given canonical encoding.
    pub fn element(&self, v: u64) -> Result<FieldElement> {
        if v < self.t.q as u64 {
            Ok(FieldElement(v as u32))
        } else {
            Err(Error::FieldMismatch(v, self.t.q))
        }
    }

    pub fn check(&self, x: FieldElement) -> Result<FieldElement> {
        self.element(x.0 as u64)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() > self.t.e as usize || coords.iter().any(|&c| c >= self.t.p) {
            return Err(Error::InvalidSpec(format!("bad coordinates {coords:?}")));
        }
        Ok(FieldElement(encode(coords, self.t.p)))
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        decode(x.0, self.t.p, self.t.e)
    }

    /// Image of an integer under ℤ → 𝔽_p ⊆ 𝔽_q.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.t.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.t.q as u32).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.t.q as u32).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(self.contains(x) && self.contains(y));
        let p = self.t.p;
        if self.t.e == 1 {
            let s = x.0 + y.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return FieldElement(x.0 ^ y.0);
        }
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0u32;
        let mut place = 1u32;
        while a != 0 || b != 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let p = self.t.p;
        if p == 2 {
            return x;
        }
        if self.t.e == 1 {
            return FieldElement(if x.0 == 0 { 0 } else { p - x.0 });
        }
        let mut a = x.0;
        let mut out = 0u32;
        let mut place = 1u32;
        while a != 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            place *= p;
            a /= p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        debug_assert!(self.contains(x) && self.contains(y));
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        FieldElement(t.exp[(t.log[x.0 as usize] + t.log[y.0 as usize]) as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.t;
        let order = (t.q - 1) as u32;
        let l = t.log[x.0 as usize];
        Ok(FieldElement(t.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// xⁿ, with the convention 0⁰ = 1.
    pub fn pow(&self, x: FieldElement, n: u64) -> FieldElement {
        if n == 0 {
            return FieldElement::ONE;
        }
        if x.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.t;
        let order = (t.q - 1) as u64;
        let l = (t.log[x.0 as usize] as u64 * (n % order)) % order;
        FieldElement(t.exp[l as usize])
    }

    /// x^(pⁱ), by i-fold p-th powering.
    pub fn frobenius(&self, x: FieldElement, i: u32) -> FieldElement {
        let mut y = x;
        for _ in 0..i {
            y = self.pow(y, self.t.p as u64);
        }
        y
    }

    /// Absolute trace Tr(x) = Σ_{i<e} x^(pⁱ) ∈ 𝔽_p, as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, x: FieldElement) -> u32 {
        self.t.trace[x.0 as usize]
    }

    /// Trace table indexed by canonical encoding.
    pub fn trace_table(&self) -> &[u32] {
        &self.t.trace
    }
}

fn encode(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn decode(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(v % p);
        v /= p;
    }
    out
}

/// Dense polynomials over 𝔽_p, ascending coefficients, used only while
/// constructing extension fields.
struct FpPoly {
    p: u32,
}

impl FpPoly {
    fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p as u64;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p;
            }
        }
        Self::trim(out.into_iter().map(|c| c as u32).collect())
    }

    fn inv_mod_p(&self, a: u32) -> u32 {
        let p = self.p as u64;
        let mut r = 1u64;
        let mut b = a as u64;
        let mut n = p - 2;
        while n > 0 {
            if n & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            n >>= 1;
        }
        r as u32
    }

    fn rem(&self, a: &[u32], m: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let mut r: Vec<u32> = Self::trim(a.to_vec());
        let m = Self::trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = self.inv_mod_p(*m.last().unwrap()) as u64;
        while r.len() > dm && !r.is_empty() {
            let shift = r.len() - 1 - dm;
            let c = *r.last().unwrap() as u64 * lead_inv % p;
            for (j, &mj) in m.iter().enumerate() {
                let idx = shift + j;
                r[idx] = ((r[idx] as u64 + p * p - c * mj as u64) % p) as u32;
            }
            r = Self::trim(r);
        }
        r
    }

    fn gcd(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a = Self::trim(a.to_vec());
        let mut b = Self::trim(b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a
    }

    fn pow_mod(&self, base: &[u32], mut n: u64, m: &[u32]) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = self.rem(base, m);
        while n > 0 {
            if n & 1 == 1 {
                result = self.rem(&self.mul(&result, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
            n >>= 1;
        }
        result
    }

    fn eval(&self, a: &[u32], x: u32) -> u32 {
        let p = self.p as u64;
        a.iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p) as u32
    }

    fn is_irreducible(&self, m: &[u32]) -> bool {
        let deg = m.len() - 1;
        if deg <= 3 {
            return (0..self.p).all(|x| self.eval(m, x) != 0);
        }
        // m is irreducible iff gcd(X^(p^i) − X, m) = 1 for every i ≤ deg/2.
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 1..=deg / 2 {
            xp = self.pow_mod(&xp, self.p as u64, m);
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + self.p - 1) % self.p;
            let g = self.gcd(m, &Self::trim(diff));
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

fn smallest_irreducible(p: u32, e: usize) -> Vec<u32> {
    let fp = FpPoly { p };
    let total = (p as u64).pow(e as u32);
    // Counter digits are read most-significant first as c₀, c₁, …, so
    // increasing the counter walks the coefficient tuples in lex order.
    for n in 0..total {
        let mut m = vec![0u32; e + 1];
        let mut r = n;
        for i in (0..e).rev() {
            m[i] = (r % p as u64) as u32;
            r /= p as u64;
        }
        m[e] = 1;
        if fp.is_irreducible(&m) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.q(), 5);
        let two = f.element(2).unwrap();
        assert_eq!(f.inv(two).unwrap().value(), 3);
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
        for a in f.elements() {
            assert_eq!(f.trace(a), a.value());
        }
    }

    #[test]
    fn f4_modulus_and_square() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let x = f.from_coords(&[0, 1]).unwrap();
        let x_plus_1 = f.from_coords(&[1, 1]).unwrap();
        assert_eq!(f.mul(x, x), x_plus_1);
        assert_eq!(f.frobenius(x, 1), x_plus_1);
        assert_eq!(f.frobenius(x, 0), x);
        assert_eq!(f.trace(x), 1);
        assert_eq!(f.trace(FieldElement::ZERO), 0);
    }

    #[test]
    fn f8_uses_low_degree_first_order() {
        // (1,0,1,1) < (1,1,0,1) when compared from the constant term.
        let f = make_field(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(make_field(6, 1).unwrap_err(), Error::NonPrime(6));
        assert!(matches!(make_field(2, 15), Err(Error::SizeExceeded { .. })));
        assert!(make_field_with_cap(2, 15, 1 << 15).is_ok());
        let f = make_field(3, 2).unwrap();
        assert_eq!(f.element(9), Err(Error::FieldMismatch(9, 9)));
    }

    #[test]
    fn frobenius_has_order_e() {
        for (p, e) in [(2, 4), (3, 3), (5, 2), (7, 2)] {
            let f = make_field(p, e).unwrap();
            for x in f.elements() {
                assert_eq!(f.frobenius(x, e), x);
            }
        }
    }

    #[test]
    fn multiplicative_group_and_trace_fibres() {
        for (p, e) in [
            (2, 1),
            (2, 5),
            (2, 10),
            (3, 4),
            (5, 3),
            (7, 3),
            (11, 2),
            (31, 2),
            (1021, 1),
        ] {
            let f = make_field(p, e).unwrap();
            let q = f.q();
            for a in f.nonzero_elements() {
                assert_eq!(f.pow(a, q as u64 - 1), FieldElement::ONE);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            }
            let mut fibre = vec![0usize; p as usize];
            for a in f.elements() {
                fibre[f.trace(a) as usize] += 1;
            }
            assert!(
                fibre.iter().all(|&c| c == q / p as usize),
                "{p}^{e}: {fibre:?}"
            );
        }
    }

    #[test]
    fn deterministic_construction() {
        let a = make_field(3, 5).unwrap();
        let b = make_field(3, 5).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert_eq!(a, b);
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(125), Some((5, 3)));
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(49), Some((7, 2)));
    }
}
