use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::dense::spectrum_dense;
use crate::error::{Error, Result};
use crate::graphs::Graph;

/// Largest graph on which every vertex subset is enumerated.
pub const CHEEGER_CAP: usize = 24;

/// A nonnegative fraction in lowest terms.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheegerResult {
    /// min |∂A|/|A| over 0 < |A| ≤ n/2.
    pub h: Ratio,
    pub argmin: Vec<usize>,
    pub lambda2: f64,
    /// (d − λ₂)/2
    pub lower: f64,
    /// √(d² − λ₂²)
    pub upper: f64,
    /// Whether lower ≤ h ≤ upper; `None` unless the graph is connected and regular.
    pub sandwich: Option<bool>,
}

/// Exact edge expansion by enumerating every admissible vertex subset.
pub fn cheeger_exact(g: &Graph) -> Result<CheegerResult> {
    let n = g.n();
    if n > CHEEGER_CAP {
        return Err(Error::SizeExceeded {
            what: "Cheeger enumeration order",
            value: n as u128,
            cap: CHEEGER_CAP as u128,
        });
    }
    if n < 2 {
        return Err(Error::InvalidSpec(
            "Cheeger constant needs at least two vertices".into(),
        ));
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect();
    let half = n / 2;
    let best = (1u32..1 << n)
        .into_par_iter()
        .filter(|a| a.count_ones() as usize <= half)
        .map(|a| {
            let mut boundary = 0u64;
            let mut rest = a;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                boundary += (masks[v] & !a).count_ones() as u64;
                rest &= rest - 1;
            }
            (Ratio::new(boundary, a.count_ones() as u64), a)
        })
        .min()
        .expect("n ≥ 2 leaves a singleton subset");
    let (h, mask) = best;
    let argmin = (0..n).filter(|&v| mask >> v & 1 == 1).collect();

    let values = spectrum_dense(g)?;
    let lambda2 = values[1];
    let d = g.regular_degree();
    let df = d.unwrap_or(0) as f64;
    let lower = (df - lambda2) / 2.0;
    let upper = (df * df - lambda2 * lambda2).max(0.0).sqrt();
    let connected = g.components().count == 1;
    let sandwich = (connected && d.is_some()).then(|| {
        let hf = h.to_f64();
        lower <= hf + 1e-9 && hf <= upper + 1e-9
    });
    Ok(CheegerResult {
        h,
        argmin,
        lambda2,
        lower,
        upper,
        sandwich,
    })
}
