use std::cmp::Ordering;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::charsum::{decimal12, CycInt};
use crate::config::{RunConfig, DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_SAMPLE, DEFAULT_WORK_CAP};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};
use crate::graphs::SGraphSpec;

/// Limits governing a w-sweep.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub work_cap: u64,
    pub exhaustive_limit: u64,
    pub sample: usize,
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            work_cap: DEFAULT_WORK_CAP,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            sample: DEFAULT_SAMPLE,
            seed: 0,
        }
    }
}

impl From<&RunConfig> for SweepOptions {
    fn from(c: &RunConfig) -> Self {
        SweepOptions {
            work_cap: c.work_cap,
            exhaustive_limit: c.exhaustive_limit,
            sample: c.sample,
            seed: c.seed,
        }
    }
}

/// Precomputed f_i(u) and g_i(a) tables for evaluating
/// λ_w = Σ_{a≠0, u} ζ^{Tr(a w₁ + a u w₂ + Σ gᵢ(a) fᵢ(u) wᵢ)}.
///
/// The trace is additive, so the exponent is a sum of table lookups mod p.
pub struct CharacterTable {
    field: FiniteField,
    k: usize,
    f_vals: Vec<FieldElement>,
    g_vals: Vec<FieldElement>,
}

impl CharacterTable {
    pub fn new(spec: &SGraphSpec) -> Self {
        let field = spec.field().clone();
        let m = spec.k() - 2;
        let mut f_vals = Vec::with_capacity(field.q() * m);
        let mut g_vals = Vec::with_capacity(field.q() * m);
        for x in field.elements() {
            f_vals.extend(spec.fs().iter().map(|f| f.eval(x)));
            g_vals.extend(spec.gs().iter().map(|g| g.eval(x)));
        }
        CharacterTable {
            field,
            k: spec.k(),
            f_vals,
            g_vals,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Elementary evaluations per eigenvalue: q(q − 1) summands of k terms.
    pub fn cost_per_w(&self) -> u64 {
        let q = self.field.q() as u64;
        q * (q - 1) * self.k as u64
    }

    /// Exponent histogram of λ_w: `out[j]` counts summands equal to ζ^j.
    pub fn exponent_counts(&self, w: &[FieldElement], out: &mut [i64], scratch: &mut Vec<u32>) {
        let f = &self.field;
        let p = f.p();
        let q = f.q();
        let m = self.k - 2;
        let tr = f.trace_table();
        out.fill(0);
        scratch.clear();
        scratch.extend(f.elements().map(|a| tr[f.mul(a, w[0]).value() as usize]));
        let mut c = vec![FieldElement::ZERO; m];
        for u in f.elements() {
            let ui = u.value() as usize;
            let cu = f.mul(u, w[1]);
            for i in 0..m {
                c[i] = f.mul(self.f_vals[ui * m + i], w[i + 2]);
            }
            for a in 1..q {
                let ae = FieldElement::from_raw(a as u32);
                let mut t = scratch[a] + tr[f.mul(ae, cu).value() as usize];
                let ga = &self.g_vals[a * m..a * m + m];
                for i in 0..m {
                    t += tr[f.mul(ga[i], c[i]).value() as usize];
                }
                out[(t % p) as usize] += 1;
            }
        }
    }

    pub fn eigenvalue(&self, w: &[FieldElement]) -> CycInt {
        let mut counts = vec![0i64; self.field.p() as usize];
        let mut scratch = Vec::with_capacity(self.field.q());
        self.exponent_counts(w, &mut counts, &mut scratch);
        CycInt::from_exponent_counts(self.field.p(), &counts)
    }

    /// Evaluates `visit(index, w, λ_w)` for every w ∈ 𝔽_q^k in parallel,
    /// returning the results in w-encoding order.
    pub fn sweep<R, F>(&self, work_cap: u64, visit: F) -> Result<Vec<R>>
    where
        R: Send,
        F: Fn(usize, &[FieldElement], &CycInt) -> R + Sync,
    {
        let codec = crate::graphs::VectorCodec {
            q: self.field.q(),
            k: self.k,
        };
        let n = (codec.q as u128).pow(codec.k as u32);
        check_work(n, self.cost_per_w(), work_cap)?;
        let p = self.field.p();
        Ok((0..n as usize)
            .into_par_iter()
            .map_init(
                || {
                    (
                        vec![0i64; p as usize],
                        Vec::new(),
                        vec![FieldElement::ZERO; codec.k],
                    )
                },
                |(counts, scratch, w), idx| {
                    codec.decode_into(idx, w);
                    self.exponent_counts(w, counts, scratch);
                    let lambda = CycInt::from_exponent_counts(p, counts);
                    visit(idx, w, &lambda)
                },
            )
            .collect())
    }
}

fn check_work(vectors: u128, per_w: u64, cap: u64) -> Result<()> {
    let work = vectors.saturating_mul(per_w as u128);
    if work > cap as u128 {
        return Err(Error::SizeExceeded {
            what: "spectrum sweep work",
            value: work,
            cap: cap as u128,
        });
    }
    Ok(())
}

/// λ_w for a single w.
pub fn eigenvalue_at(spec: &SGraphSpec, w: &[FieldElement]) -> CycInt {
    assert_eq!(w.len(), spec.k(), "w must have k coordinates");
    let v = CharacterTable::new(spec).eigenvalue(w);
    debug_assert!(v.is_real());
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub value: CycInt,
    pub numeric: f64,
    pub multiplicity: u64,
    /// The smallest w (in encoding order) attaining this eigenvalue.
    pub witness_w: Vec<FieldElement>,
}

/// Eigenvalue multiset sorted by numeric value, descending; ties are broken
/// by the coefficient order of the exact value.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub q: usize,
    pub p: u32,
    pub k: usize,
    pub degree: usize,
    /// q^k.
    pub order: u128,
    /// False when the entries come from a uniform sample of w-vectors.
    pub exhaustive: bool,
    pub entries: Vec<SpectrumEntry>,
}

fn encoding_order(a: &[FieldElement], b: &[FieldElement]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

type Histogram = HashMap<CycInt, (u64, Vec<FieldElement>)>;

fn merge(mut a: Histogram, b: Histogram) -> Histogram {
    for (value, (count, witness)) in b {
        a.entry(value)
            .and_modify(|(c, w)| {
                *c += count;
                if encoding_order(&witness, w) == Ordering::Less {
                    *w = witness.clone();
                }
            })
            .or_insert((count, witness));
    }
    a
}

/// The full spectrum {λ_w : w ∈ 𝔽_q^k}, grouped by exact equality.
///
/// Sweeps over more than `exhaustive_limit` vectors draw `sample` uniform
/// w-vectors instead; such spectra carry `exhaustive = false`.
pub fn spectrum_formula(spec: &SGraphSpec, opts: &SweepOptions) -> Result<Spectrum> {
    let table = CharacterTable::new(spec);
    let field = spec.field();
    let (q, p, k) = (field.q(), field.p(), spec.k());
    let order = spec.vertex_count();
    let exhaustive = order <= opts.exhaustive_limit as u128;
    let count = if exhaustive {
        order
    } else {
        opts.sample as u128
    };
    check_work(count, table.cost_per_w(), opts.work_cap)?;

    let init = || (Histogram::new(), vec![0i64; p as usize], Vec::new());
    let step = |(mut hist, mut counts, mut scratch): (Histogram, Vec<i64>, Vec<u32>),
                w: Vec<FieldElement>| {
        table.exponent_counts(&w, &mut counts, &mut scratch);
        let value = CycInt::from_exponent_counts(p, &counts);
        hist.entry(value)
            .and_modify(|(c, best)| {
                *c += 1;
                if encoding_order(&w, best) == Ordering::Less {
                    *best = w.clone();
                }
            })
            .or_insert((1, w));
        (hist, counts, scratch)
    };

    let hist = if exhaustive {
        let codec = spec.codec();
        (0..order as usize)
            .into_par_iter()
            .map(|i| codec.decode(i))
            .fold(init, step)
            .map(|(h, _, _)| h)
            .reduce(Histogram::new, merge)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let samples: Vec<Vec<FieldElement>> = (0..opts.sample)
            .map(|_| {
                (0..k)
                    .map(|_| FieldElement::from_raw(rng.gen_range(0..q as u32)))
                    .collect()
            })
            .collect();
        samples
            .into_par_iter()
            .fold(init, step)
            .map(|(h, _, _)| h)
            .reduce(Histogram::new, merge)
    };

    let mut entries = hist
        .into_iter()
        .map(|(value, (multiplicity, witness_w))| {
            let numeric = value.real_embed()?;
            Ok(SpectrumEntry {
                value,
                numeric,
                multiplicity,
                witness_w,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|a, b| {
        b.numeric
            .total_cmp(&a.numeric)
            .then_with(|| a.value.cmp(&b.value))
    });

    let s = Spectrum {
        q,
        p,
        k,
        degree: spec.degree(),
        order,
        exhaustive,
        entries,
    };
    if exhaustive {
        assert!(
            s.moments_hold(),
            "trace and edge-count identities must hold"
        );
    }
    Ok(s)
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn max(&self) -> &SpectrumEntry {
        &self.entries[0]
    }

    pub fn min(&self) -> &SpectrumEntry {
        self.entries.last().expect("nonempty spectrum")
    }

    /// Multiplicity of the degree q(q − 1) as an eigenvalue, i.e. the number
    /// of connected components.
    pub fn components(&self) -> u64 {
        let d = CycInt::from_int(self.p, self.degree as i64);
        self.entries
            .iter()
            .find(|e| e.value == d)
            .map_or(0, |e| e.multiplicity)
    }

    /// Multiplicity of an exact value.
    pub fn multiplicity_of(&self, v: &CycInt) -> u64 {
        self.entries
            .iter()
            .find(|e| &e.value == v)
            .map_or(0, |e| e.multiplicity)
    }

    /// (Σ mλ, Σ mλ²) in exact arithmetic.
    pub fn moments(&self) -> (CycInt, CycInt) {
        let mut m1 = CycInt::zero(self.p);
        let mut m2 = CycInt::zero(self.p);
        for e in &self.entries {
            let m = e.multiplicity as i64;
            m1 += &e.value.scale(m);
            m2 += &(&e.value * &e.value).scale(m);
        }
        (m1, m2)
    }

    /// Σ mλ = 0 and Σ mλ² = q^k·q(q − 1).
    pub fn moments_hold(&self) -> bool {
        let (m1, m2) = self.moments();
        let edges2 = self.order as i64 * self.degree as i64;
        m1.is_zero()
            && m2.as_integer() == Some(edges2)
            && self.total_multiplicity() as u128 == self.order
    }

    /// All eigenvalues with multiplicity, descending.
    pub fn sorted_values(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.numeric, e.multiplicity as usize))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Entry<'a> {
            coeffs: &'a [i64],
            value: String,
            multiplicity: u64,
            witness_w: Vec<u32>,
        }
        let entries: Vec<Entry> = self
            .entries
            .iter()
            .map(|e| Entry {
                coeffs: e.value.coeffs(),
                value: decimal12(e.numeric),
                multiplicity: e.multiplicity,
                witness_w: e.witness_w.iter().map(|c| c.value()).collect(),
            })
            .collect();
        let (m1, m2) = self.moments();
        serde_json::json!({
            "q": self.q,
            "k": self.k,
            "degree": self.degree,
            "exhaustive": self.exhaustive,
            "entries": entries,
            "moments": { "m1": m1.as_integer(), "m2": m2.as_integer() },
            "components": self.components(),
        })
    }

    /// CSV with columns `value,multiplicity,coeffs,witness_w`; the last two
    /// are `;`-separated lists.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,multiplicity,coeffs,witness_w\n");
        for e in &self.entries {
            let coeffs: Vec<String> = e.value.coeffs().iter().map(i64::to_string).collect();
            let w: Vec<String> = e.witness_w.iter().map(|c| c.value().to_string()).collect();
            out.push_str(&format!(
                "{},{},{},{}\n",
                decimal12(e.numeric),
                e.multiplicity,
                coeffs.join(";"),
                w.join(";")
            ));
        }
        out
    }
}
