//! Exponential sums ε_f = Σ_{x∈𝔽_q} ζ_p^{Tr(f(x))} in exact ℤ[ζ_p] arithmetic,
//! Weil-bound checks and the cubic maximum M_q.

mod cycint;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use cycint::{decimal12, CycInt};

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};
use crate::poly::Poly;

/// Default cap on q for [`compute_mq`], whose cost is O(q³).
pub const DEFAULT_MQ_CAP: usize = 343;

pub fn zeta_pow(p: u32, beta: u32) -> CycInt {
    CycInt::zeta_pow(p, beta)
}

pub fn is_real(v: &CycInt) -> bool {
    v.is_real()
}

pub fn real_embed(v: &CycInt) -> Result<f64> {
    v.real_embed()
}

/// An exact exponential sum together with its complex embedding.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSumResult {
    pub value: CycInt,
    pub re: f64,
    pub im: f64,
}

impl ExpSumResult {
    pub fn new(value: CycInt) -> Self {
        let (re, im) = if value.is_real() {
            (value.real_embed().expect("real"), 0.0)
        } else {
            value.embed()
        };
        ExpSumResult { value, re, im }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

impl Serialize for ExpSumResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExpSumResult", 3)?;
        st.serialize_field("coeffs", self.value.coeffs())?;
        st.serialize_field("re", &decimal12(self.re))?;
        st.serialize_field("im", &decimal12(self.im))?;
        st.end()
    }
}

/// Histogram of trace values over the q points, folded into ℤ[ζ_p].
fn trace_histogram(field: &FiniteField, values: impl Iterator<Item = FieldElement>) -> CycInt {
    let p = field.p();
    let mut counts = vec![0i64; p as usize];
    for v in values {
        counts[field.trace(v) as usize] += 1;
    }
    CycInt::from_exponent_counts(p, &counts)
}

/// ε_f by direct enumeration of all q points.
pub fn exp_sum(f: &Poly) -> ExpSumResult {
    let field = f.field();
    ExpSumResult::new(trace_histogram(field, field.elements().map(|x| f.eval(x))))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeilReport {
    pub degree: Option<usize>,
    pub abs_value: f64,
    pub bound: f64,
    pub applicable: bool,
    pub holds: bool,
}

/// Compares |ε_f| against (n − 1)√q. The bound only applies for n ≥ 1 with
/// gcd(n, q) = 1; otherwise it is reported and `holds` is computed but carries
/// no guarantee.
pub fn weil_check(f: &Poly) -> WeilReport {
    let field = f.field();
    let q = field.q() as f64;
    let abs_value = exp_sum(f).abs();
    let degree = f.degree();
    let n = degree.unwrap_or(0);
    let bound = n.saturating_sub(1) as f64 * q.sqrt();
    let applicable = n >= 1 && !n.is_multiple_of(field.p() as usize);
    WeilReport {
        degree,
        abs_value,
        bound,
        applicable,
        holds: abs_value <= bound + 1e-9,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MqEntry {
    pub a: FieldElement,
    pub b: FieldElement,
    pub value: ExpSumResult,
}

/// M_q = max over a, b ∈ 𝔽_q* of ε_{aX³+bX}, with its maximiser and the full table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MqResult {
    pub q: usize,
    pub value: ExpSumResult,
    pub argmax: (FieldElement, FieldElement),
    pub table: Vec<MqEntry>,
}

impl MqResult {
    pub fn numeric(&self) -> f64 {
        self.value.re
    }
}

/// Brute-force M_q. Every sum is checked to be real.
pub fn compute_mq(field: &FiniteField, cap: usize) -> Result<MqResult> {
    let q = field.q();
    if q > cap {
        return Err(Error::SizeExceeded {
            what: "q for M_q",
            value: q as u128,
            cap: cap as u128,
        });
    }
    let p = field.p();
    let tr = field.trace_table();
    let cubes: Vec<FieldElement> = field.elements().map(|x| field.pow(x, 3)).collect();

    let rows: Vec<Result<Vec<MqEntry>>> = field
        .nonzero_elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| {
            let tr_ax3: Vec<u32> = cubes
                .iter()
                .map(|&c| tr[field.mul(a, c).value() as usize])
                .collect();
            field
                .nonzero_elements()
                .map(|b| {
                    let mut counts = vec![0i64; p as usize];
                    for x in field.elements() {
                        let t = tr_ax3[x.value() as usize] + tr[field.mul(b, x).value() as usize];
                        counts[(t % p) as usize] += 1;
                    }
                    let value = CycInt::from_exponent_counts(p, &counts);
                    if !value.is_real() {
                        return Err(Error::NotReal);
                    }
                    Ok(MqEntry {
                        a,
                        b,
                        value: ExpSumResult::new(value),
                    })
                })
                .collect()
        })
        .collect();

    let mut table = Vec::with_capacity((q - 1) * (q - 1));
    for row in rows {
        table.extend(row?);
    }
    // Strict comparison keeps the first maximiser in (a, b) order.
    let best = table
        .iter()
        .fold(None::<&MqEntry>, |best, e| match best {
            Some(b) if e.value.re <= b.value.re => Some(b),
            _ => Some(e),
        })
        .expect("q ≥ 2 gives at least one pair");
    Ok(MqResult {
        q,
        value: best.value.clone(),
        argmax: (best.a, best.b),
        table,
    })
}
