use serde::Serialize;

use super::sweep::{spectrum_formula, CharacterTable, Spectrum, SweepOptions};
use crate::charsum::{decimal12, CycInt};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};
use crate::graphs::SGraphSpec;
use crate::poly::Poly;

fn ser_cyc<S: serde::Serializer>(v: &CycInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&decimal12(v.real_embed().unwrap_or(f64::NAN)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SecondEigenvalue {
    #[serde(serialize_with = "ser_cyc")]
    pub exact: CycInt,
    pub numeric: f64,
    /// q(q − 1) − λ₂
    pub gap: f64,
    /// False when the spectrum was sampled, so λ₂ is only a witnessed lower bound.
    pub certified: bool,
}

/// λ₂: the second value of the spectrum listed with multiplicity. A repeated
/// top eigenvalue (a disconnected graph) gives λ₂ = q(q − 1).
pub fn second_eigenvalue(s: &Spectrum) -> SecondEigenvalue {
    let top = s.max();
    let e = if top.multiplicity > 1 || s.entries.len() == 1 {
        top
    } else {
        &s.entries[1]
    };
    SecondEigenvalue {
        exact: e.value.clone(),
        numeric: e.numeric,
        gap: s.degree as f64 - e.numeric,
        certified: s.exhaustive,
    }
}

/// λ₂ ≤ 2√(d − 1) for d = q(q − 1).
pub fn is_ramanujan(s: &Spectrum) -> Result<bool> {
    if !s.exhaustive {
        return Err(Error::HypothesisViolated(
            "the Ramanujan test needs the full spectrum".into(),
        ));
    }
    if s.components() != 1 {
        return Err(Error::Disconnected);
    }
    Ok(ramanujan_values(second_eigenvalue(s).numeric, s.degree))
}

pub fn ramanujan_values(lambda2: f64, degree: usize) -> bool {
    lambda2 <= 2.0 * ((degree as f64) - 1.0).sqrt() + 1e-9
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Remark1 {
    pub q: usize,
    #[serde(serialize_with = "ser_cyc")]
    pub lambda_min: CycInt,
    pub numeric: f64,
    /// λ_min < −q strictly.
    pub holds: bool,
}

/// Smallest eigenvalue against −q, the floor for any distance-two graph of a
/// q-regular bipartite graph.
pub fn remark1_witness(s: &Spectrum) -> Remark1 {
    let min = s.min();
    let q = s.q as f64;
    let margin = min.numeric + q;
    let holds = if margin.abs() <= 1e-9 {
        // Too close to call numerically: decide exactly.
        min.value != CycInt::from_int(s.p, -(s.q as i64)) && margin < 0.0
    } else {
        margin < 0.0
    };
    Remark1 {
        q: s.q,
        lambda_min: min.value.clone(),
        numeric: min.numeric,
        holds,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WAnalysis {
    pub w: Vec<FieldElement>,
    /// u solving w₁ + u w₂ + Σ c_{i,1} fᵢ(u) wᵢ = 0 and Σ c_{i,j} fᵢ(u) wᵢ = 0 for j ≥ 2.
    pub n_w: usize,
    /// u with Σ c_{i,j} fᵢ(u) wᵢ ≠ 0 for some j ≥ 2.
    pub s_w_size: usize,
    /// Roots in 𝔽_q of F = Σ fᵢ wᵢ.
    pub t_w: usize,
}

/// Per-w counting with the fᵢ values and g coefficients c_{i,j} precomputed.
pub struct Analyzer {
    field: FiniteField,
    m: usize,
    d_g: usize,
    f_vals: Vec<FieldElement>,
    // c[j - 1][i] = c_{i+3, j}
    c: Vec<Vec<FieldElement>>,
}

impl Analyzer {
    pub fn new(spec: &SGraphSpec) -> Self {
        let field = spec.field().clone();
        let m = spec.k() - 2;
        let d_g = spec.d_g();
        let mut f_vals = Vec::with_capacity(field.q() * m);
        for u in field.elements() {
            f_vals.extend(spec.fs().iter().map(|f| f.eval(u)));
        }
        let c = (1..=d_g)
            .map(|j| spec.gs().iter().map(|g| g.coeff(j)).collect())
            .collect();
        Analyzer {
            field,
            m,
            d_g,
            f_vals,
            c,
        }
    }

    pub fn analyze(&self, w: &[FieldElement]) -> WAnalysis {
        let f = &self.field;
        let (mut n_w, mut s_w_size, mut t_w) = (0, 0, 0);
        let mut fw = vec![FieldElement::ZERO; self.m];
        for u in f.elements() {
            let fu = &self.f_vals[u.value() as usize * self.m..][..self.m];
            for i in 0..self.m {
                fw[i] = f.mul(fu[i], w[i + 2]);
            }
            let dot = |cj: &[FieldElement]| {
                cj.iter()
                    .zip(&fw)
                    .fold(FieldElement::ZERO, |s, (&c, &x)| f.add(s, f.mul(c, x)))
            };
            if fw
                .iter()
                .fold(FieldElement::ZERO, |s, &x| f.add(s, x))
                .is_zero()
            {
                t_w += 1;
            }
            let higher_zero = (1..self.d_g).all(|j| dot(&self.c[j]).is_zero());
            if !higher_zero {
                s_w_size += 1;
                continue;
            }
            let linear = if self.d_g >= 1 {
                dot(&self.c[0])
            } else {
                FieldElement::ZERO
            };
            if f.add(f.add(w[0], f.mul(u, w[1])), linear).is_zero() {
                n_w += 1;
            }
        }
        WAnalysis {
            w: w.to_vec(),
            n_w,
            s_w_size,
            t_w,
        }
    }
}

pub fn analyze_w(spec: &SGraphSpec, w: &[FieldElement]) -> WAnalysis {
    Analyzer::new(spec).analyze(w)
}

/// 1 ≤ d_g < p, and every gᵢ without constant term (automatic for odd p).
pub fn check_lemma51_hypothesis(spec: &SGraphSpec) -> Result<()> {
    let d_g = spec.d_g();
    let p = spec.field().p() as usize;
    if d_g < 1 || d_g >= p {
        return Err(Error::HypothesisViolated(format!(
            "needs 1 ≤ d_g < p, got d_g = {d_g}, p = {p}"
        )));
    }
    if let Some(i) = spec.gs().iter().position(|g| !g.coeff(0).is_zero()) {
        return Err(Error::HypothesisViolated(format!(
            "g_{} has a nonzero constant term",
            i + 3
        )));
    }
    Ok(())
}

fn lemma51_bound(a: &WAnalysis, q: usize, d_g: usize) -> f64 {
    let q = q as f64;
    a.n_w as f64 * (q - 1.0) + a.s_w_size as f64 * ((d_g as f64 - 1.0) * q.sqrt() + 1.0)
}

fn lemma51_holds(a: &WAnalysis, lambda: &CycInt, q: usize, d_g: usize) -> Result<bool> {
    let top = CycInt::from_int(lambda.p(), (q * (q - 1)) as i64);
    let value = lambda.real_embed()?;
    Ok(value <= lemma51_bound(a, q, d_g) + 1e-9 && ((lambda == &top) == (a.n_w == q)))
}

/// λ_w ≤ N_w(q − 1) + |S_w|((d_g − 1)√q + 1), and λ_w = q(q − 1) ⇔ N_w = q.
pub fn lemma51_check(spec: &SGraphSpec, w: &[FieldElement], lambda: &CycInt) -> Result<bool> {
    check_lemma51_hypothesis(spec)?;
    lemma51_holds(&analyze_w(spec, w), lambda, spec.q(), spec.d_g())
}

/// Outcome of a per-w claim checked over every w ∈ 𝔽_q^k.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepCheck {
    pub checked: usize,
    pub violations: usize,
    /// Encoding of the first violating w.
    pub first_violation: Option<usize>,
}

impl SweepCheck {
    pub fn from_flags(flags: &[bool]) -> Self {
        SweepCheck {
            checked: flags.len(),
            violations: flags.iter().filter(|&&ok| !ok).count(),
            first_violation: flags.iter().position(|&ok| !ok),
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Checks the bound and the top-eigenvalue criterion at every w.
pub fn lemma51_sweep(spec: &SGraphSpec, work_cap: u64) -> Result<SweepCheck> {
    check_lemma51_hypothesis(spec)?;
    let analyzer = Analyzer::new(spec);
    let (q, d_g) = (spec.q(), spec.d_g());
    let flags = CharacterTable::new(spec).sweep(work_cap, |_, w, lambda| {
        lemma51_holds(&analyzer.analyze(w), lambda, q, d_g).unwrap_or(false)
    })?;
    Ok(SweepCheck::from_flags(&flags))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformBound {
    /// d_f(q − 1) + q((d_g − 1)√q + 1)
    pub bound: f64,
    /// Largest λ_w other than q(q − 1); `None` if every λ_w equals it.
    pub max_nontrivial: Option<f64>,
    pub holds: bool,
    pub exhaustive: bool,
}

/// Per-instance form of the expander bound on nontrivial eigenvalues.
pub fn uniform_bound(spec: &SGraphSpec, opts: &SweepOptions) -> Result<UniformBound> {
    check_lemma51_hypothesis(spec)?;
    if spec.d_f() < 1 {
        return Err(Error::HypothesisViolated("needs d_f ≥ 1".into()));
    }
    let q = spec.q() as f64;
    let bound = spec.d_f() as f64 * (q - 1.0) + q * ((spec.d_g() as f64 - 1.0) * q.sqrt() + 1.0);
    let s = spectrum_formula(spec, opts)?;
    let top = CycInt::from_int(s.p, s.degree as i64);
    let max_nontrivial = s.entries.iter().find(|e| e.value != top).map(|e| e.numeric);
    Ok(UniformBound {
        bound,
        max_nontrivial,
        holds: max_nontrivial.is_none_or(|m| m <= bound + 1e-9),
        exhaustive: s.exhaustive,
    })
}

/// Whether a sequence strictly decreases; `None` for fewer than two values.
pub fn is_decreasing(values: &[f64]) -> Option<bool> {
    (values.len() >= 2).then(|| values.windows(2).all(|w| w[1] < w[0]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub rank: usize,
    /// q^{k − rank}
    pub predicted_components: u128,
    /// 1, X, f₃, …, f_k independent and every gᵢ has a linear term.
    pub condition1: bool,
    /// f₃, …, f_k independent and some j ≥ 2 has c_{i,j} ≠ 0 for all i.
    pub condition2: bool,
}

/// Rank of a list of vectors over 𝔽_q by Gaussian elimination.
pub fn rank(field: &FiniteField, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        let pivot_row: Vec<FieldElement> = rows[r].iter().map(|&x| field.mul(x, inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(factor, y));
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

fn coeff_row(p: &Poly, q: usize, scale: FieldElement) -> Vec<FieldElement> {
    let f = p.field();
    (0..q).map(|j| f.mul(scale, p.coeff(j))).collect()
}

/// Number of components predicted from the subspace {w : N_w = q}, whose
/// dimension is k minus the rank of v₁ = (1, 0, …), v₂ = (X, 0, …),
/// vᵢ = (c_{i,1}fᵢ, …, c_{i,d_g}fᵢ).
pub fn connectivity_rank(spec: &SGraphSpec) -> Result<ConnectivityReport> {
    check_lemma51_hypothesis(spec)?;
    let field = spec.field();
    let q = field.q();
    let d_g = spec.d_g();
    let one = Poly::monomial(field, FieldElement::ONE, 0)?;
    let x = Poly::monomial(field, FieldElement::ONE, 1)?;

    let block = |polys: &[(Poly, FieldElement)]| -> Vec<FieldElement> {
        polys
            .iter()
            .flat_map(|(p, c)| coeff_row(p, q, *c))
            .collect()
    };
    let zero = (Poly::zero(field), FieldElement::ZERO);
    let mut rows = Vec::with_capacity(spec.k());
    for lead in [&one, &x] {
        let mut parts = vec![(lead.clone(), FieldElement::ONE)];
        parts.resize(d_g, zero.clone());
        rows.push(block(&parts));
    }
    for (f, g) in spec.fs().iter().zip(spec.gs()) {
        let parts: Vec<(Poly, FieldElement)> = (1..=d_g).map(|j| (f.clone(), g.coeff(j))).collect();
        rows.push(block(&parts));
    }
    let r = rank(field, rows);
    let predicted_components = (q as u128).pow((spec.k() - r) as u32);

    let m = spec.k() - 2;
    let f_rows = |extra: &[&Poly]| -> Vec<Vec<FieldElement>> {
        extra
            .iter()
            .copied()
            .chain(spec.fs())
            .map(|p| coeff_row(p, q, FieldElement::ONE))
            .collect()
    };
    let condition1 = rank(field, f_rows(&[&one, &x])) == m + 2
        && spec.gs().iter().all(|g| !g.coeff(1).is_zero());
    let condition2 = rank(field, f_rows(&[])) == m
        && (2..=d_g).any(|j| spec.gs().iter().all(|g| !g.coeff(j).is_zero()));
    Ok(ConnectivityReport {
        rank: r,
        predicted_components,
        condition1,
        condition2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use crate::graphs::{build_s_graph, DEFAULT_VERTEX_CAP};

    fn spec(p: u64, k: usize, f: &[u64], g: &[u64]) -> SGraphSpec {
        SGraphSpec::monomial(&make_field(p, 1).unwrap(), k, f, g)
            .unwrap()
            .0
    }

    #[test]
    fn zero_w() {
        let s = spec(5, 4, &[2, 3], &[3, 3]);
        let a = analyze_w(&s, &[FieldElement::ZERO; 4]);
        assert_eq!((a.n_w, a.s_w_size, a.t_w), (5, 0, 5));
    }

    #[test]
    fn linear_g_has_empty_s_w() {
        let s = spec(7, 4, &[2, 3], &[1, 1]);
        let codec = s.codec();
        for i in (0..codec.size()).step_by(37) {
            assert_eq!(analyze_w(&s, &codec.decode(i)).s_w_size, 0);
        }
    }

    #[test]
    fn lemma51_on_small_graph() {
        let s = spec(5, 3, &[2], &[3]);
        assert!(lemma51_sweep(&s, u64::MAX).unwrap().holds());
        // d_g = 3 = p over 𝔽₉
        let bad = SGraphSpec::monomial(&make_field(3, 2).unwrap(), 3, &[2], &[3])
            .unwrap()
            .0;
        assert!(matches!(
            lemma51_sweep(&bad, u64::MAX),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn dependent_f_disconnects() {
        let s = spec(5, 4, &[2, 2], &[1, 1]);
        let r = connectivity_rank(&s).unwrap();
        assert_eq!(r.rank, 3);
        assert_eq!(r.predicted_components, 5);
        assert!(!r.condition1 && !r.condition2);
        let g = build_s_graph(&s, DEFAULT_VERTEX_CAP).unwrap().to_graph();
        assert_eq!(g.components().count, 5);
    }

    #[test]
    fn rank_basics() {
        let f = make_field(3, 1).unwrap();
        let e = |v: &[u64]| v.iter().map(|&x| f.element(x).unwrap()).collect::<Vec<_>>();
        assert_eq!(rank(&f, vec![e(&[1, 2]), e(&[2, 1])]), 1);
        assert_eq!(rank(&f, vec![e(&[1, 2]), e(&[0, 1]), e(&[1, 1])]), 2);
    }

    #[test]
    fn decreasing() {
        assert_eq!(is_decreasing(&[1.0]), None);
        assert_eq!(is_decreasing(&[3.0, 2.0, 1.0]), Some(true));
        assert_eq!(is_decreasing(&[3.0, 3.0]), Some(false));
    }
}
