use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// An element of ℤ[ζ_p] in the power basis {1, ζ, …, ζ^{p−2}}.
///
/// ζ^{p−1} never appears: it is rewritten as −(1 + ζ + … + ζ^{p−2}), so two
/// values are equal iff their coefficient vectors are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i64>,
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[p={}]{:?}", self.p, self.coeffs)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            match (j, mag) {
                (0, m) => write!(f, "{sign}{m}")?,
                (_, 1) => write!(f, "{sign}z^{j}")?,
                (_, m) => write!(f, "{sign}{m}z^{j}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialOrd for CycInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient-lexicographic order; only meaningful as a tie-breaker.
impl Ord for CycInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt {
            p,
            coeffs: vec![0; (p - 1) as usize],
        }
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut v = Self::zero(p);
        v.coeffs[0] = n;
        v
    }

    /// ζ_p^β for 0 ≤ β < p, in canonical form.
    pub fn zeta_pow(p: u32, beta: u32) -> Self {
        assert!(beta < p, "exponent must lie in [0, p)");
        let mut counts = vec![0i64; p as usize];
        counts[beta as usize] = 1;
        Self::from_exponent_counts(p, &counts)
    }

    /// Σ_j counts[j]·ζ^j for j in `[0, p)`.
    pub fn from_exponent_counts(p: u32, counts: &[i64]) -> Self {
        debug_assert_eq!(counts.len(), p as usize);
        let top = counts[(p - 1) as usize];
        CycInt {
            p,
            coeffs: counts[..(p - 1) as usize]
                .iter()
                .map(|&c| c - top)
                .collect(),
        }
    }

    /// Builds a value from canonical power-basis coefficients.
    pub fn from_coeffs(p: u32, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), (p - 1) as usize, "need p − 1 coefficients");
        CycInt { p, coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..]
            .iter()
            .all(|&c| c == 0)
            .then_some(self.coeffs[0])
    }

    /// Length-p exponent vector (ζ^{p−1} slot zero).
    fn expanded(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.push(0);
        v
    }

    /// Image under ζ ↦ ζ^{−1}, i.e. complex conjugation.
    pub fn conjugate(&self) -> Self {
        let p = self.p as usize;
        let v = self.expanded();
        let mut out = vec![0i64; p];
        for (j, &c) in v.iter().enumerate() {
            out[(p - j) % p] += c;
        }
        Self::from_exponent_counts(self.p, &out)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    pub fn scale(&self, k: i64) -> Self {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Complex embedding under ζ ↦ exp(2πi/p), with compensated summation.
    pub fn embed(&self) -> (f64, f64) {
        let p = self.p as f64;
        let mut re = Neumaier::default();
        let mut im = Neumaier::default();
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let theta = TAU * j as f64 / p;
            re.add(c as f64 * theta.cos());
            im.add(c as f64 * theta.sin());
        }
        (re.total(), im.total())
    }

    /// Real embedding, for ordering and reporting only.
    pub fn real_embed(&self) -> Result<f64> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        if let Some(n) = self.as_integer() {
            return Ok(n as f64);
        }
        Ok(self.embed().0)
    }

    pub fn abs(&self) -> f64 {
        let (re, im) = self.embed();
        re.hypot(im)
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic rings");
        CycInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic rings");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic rings");
        CycInt {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.p, rhs.p, "mixed cyclotomic rings");
        let p = self.p as usize;
        let mut out = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        CycInt::from_exponent_counts(self.p, &out)
    }
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Decimal rendering with at most 12 significant digits, trailing zeros trimmed.
pub fn decimal12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0".into()
        } else {
            x.to_string()
        };
    }
    let mag = x.abs().log10().floor() as i32;
    let places = (11 - mag).clamp(0, 12) as usize;
    let mut s = format!("{:.*}", places, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_powers() {
        assert_eq!(CycInt::zeta_pow(5, 0).coeffs(), &[1, 0, 0, 0]);
        assert_eq!(CycInt::zeta_pow(3, 2).coeffs(), &[-1, -1]);
        assert_eq!(CycInt::zeta_pow(2, 1).coeffs(), &[-1]);
        assert_eq!(CycInt::zeta_pow(7, 6).coeffs(), &[-1; 6]);
    }

    #[test]
    fn conjugation_and_realness() {
        let z3 = CycInt::zeta_pow(3, 1);
        assert!(!z3.is_real());
        assert_eq!(z3.conjugate(), CycInt::zeta_pow(3, 2));
        assert!(CycInt::from_int(7, -12).is_real());
        // every element of ℤ[ζ₂] = ℤ is real
        assert!(CycInt::zeta_pow(2, 1).is_real());
        let v = &CycInt::zeta_pow(5, 1) + &CycInt::zeta_pow(5, 4);
        assert!(v.is_real());
        assert!((v.real_embed().unwrap() - 0.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn not_real_is_an_error() {
        let v = &CycInt::from_int(3, 1) + &CycInt::zeta_pow(3, 1).scale(2);
        assert_eq!(v.real_embed(), Err(Error::NotReal));
        assert_eq!(
            v.conjugate(),
            &CycInt::from_int(3, 1) + &CycInt::zeta_pow(3, 2).scale(2)
        );
    }

    #[test]
    fn integer_embedding_is_exact() {
        let v = CycInt::from_int(5, 20);
        assert_eq!(v.real_embed().unwrap(), 20.0);
    }

    #[test]
    fn multiplication_follows_exponents() {
        for p in [2u32, 3, 5, 7] {
            for a in 0..p {
                for b in 0..p {
                    let prod = &CycInt::zeta_pow(p, a) * &CycInt::zeta_pow(p, b);
                    assert_eq!(prod, CycInt::zeta_pow(p, (a + b) % p));
                }
            }
        }
    }

    #[test]
    fn root_sum_vanishes() {
        let counts = vec![3i64; 7];
        assert!(CycInt::from_exponent_counts(7, &counts).is_zero());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal12(20.0), "20");
        assert_eq!(decimal12(-0.5), "-0.5");
        assert_eq!(decimal12(0.618033988749895), "0.61803398875");
        assert_eq!(decimal12(1e-17), "0");
        assert_eq!(decimal12(-1e-17), "0");
    }
}
