use serde::Serialize;
use serde_json::{json, Value};

use super::analysis::{second_eigenvalue, SecondEigenvalue, SweepCheck};
use super::sweep::{spectrum_formula, CharacterTable, SweepOptions};
use crate::charsum::{compute_mq, CycInt, MqResult};
use crate::error::{Error, Result};
use crate::gf::{field_of_order, prime_power, FieldElement, FiniteField};
use crate::graphs::SGraphSpec;
use crate::poly::Poly;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    Pass,
    Fail,
    /// A sampled sweep found nothing contradicting the claim, which it cannot certify.
    LowerBoundWitnessed,
    /// The claim's hypotheses do not hold for these parameters.
    NotApplicable,
}

/// Machine-readable outcome of one checked claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub hypothesis_ok: bool,
    pub computed: Value,
    pub predicted: Value,
    pub verdict: VerdictKind,
}

impl Verdict {
    pub fn new(claim: impl Into<String>, computed: Value, predicted: Value, holds: bool) -> Self {
        let verdict = if holds {
            VerdictKind::Pass
        } else {
            VerdictKind::Fail
        };
        Verdict {
            claim: claim.into(),
            hypothesis_ok: true,
            computed,
            predicted,
            verdict,
        }
    }

    /// Like `new`, but a passing result from an uncertified (sampled) sweep is downgraded.
    pub fn sampled(
        claim: impl Into<String>,
        computed: Value,
        predicted: Value,
        holds: bool,
        certified: bool,
    ) -> Self {
        let mut v = Self::new(claim, computed, predicted, holds);
        if holds && !certified {
            v.verdict = VerdictKind::LowerBoundWitnessed;
        }
        v
    }

    pub fn not_applicable(claim: impl Into<String>, reason: &Error) -> Self {
        Verdict {
            claim: claim.into(),
            hypothesis_ok: false,
            computed: Value::Null,
            predicted: json!(reason.to_string()),
            verdict: VerdictKind::NotApplicable,
        }
    }

    pub fn passed(&self) -> bool {
        matches!(
            self.verdict,
            VerdictKind::Pass | VerdictKind::LowerBoundWitnessed
        )
    }
}

/// q odd and q ≡ 2 (mod 3).
pub fn check_cubic_field(field: &FiniteField) -> Result<()> {
    let q = field.q();
    if field.p() == 2 || q % 3 != 2 {
        return Err(Error::HypothesisViolated(format!(
            "needs q odd with q ≡ 2 mod 3, got q = {q} (q mod 3 = {})",
            q % 3
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicReport {
    pub check: SweepCheck,
    /// w with λ_w = q(T_w − 1) exactly.
    pub exact_cases: usize,
    /// w with λ_w ≤ (q − T_w)·M_q instead.
    pub bounded_cases: usize,
}

/// Every λ_w is q(T_w − 1) or at most (q − T_w)·M_q, when all gᵢ = X³.
pub fn classify_cubic(spec: &SGraphSpec, mq: &MqResult, work_cap: u64) -> Result<CubicReport> {
    let field = spec.field();
    check_cubic_field(field)?;
    let cube = Poly::monomial(field, FieldElement::ONE, 3)?;
    if let Some(i) = spec.gs().iter().position(|g| g != &cube) {
        return Err(Error::HypothesisViolated(format!("g_{} is not X^3", i + 3)));
    }
    let q = field.q();
    let m = mq.numeric();
    let f_vals: Vec<Vec<FieldElement>> = spec.fs().iter().map(Poly::value_table).collect();
    let outcomes = CharacterTable::new(spec).sweep(work_cap, |_, w, lambda| {
        let t_w = field
            .elements()
            .filter(|u| {
                let i = u.value() as usize;
                f_vals
                    .iter()
                    .zip(&w[2..])
                    .fold(FieldElement::ZERO, |s, (fv, &wi)| {
                        field.add(s, field.mul(fv[i], wi))
                    })
                    .is_zero()
            })
            .count();
        if *lambda == CycInt::from_int(field.p(), (q * t_w) as i64 - q as i64) {
            Some(true)
        } else if lambda
            .real_embed()
            .is_ok_and(|v| v <= (q - t_w) as f64 * m + 1e-9)
        {
            Some(false)
        } else {
            None
        }
    })?;
    let flags: Vec<bool> = outcomes.iter().map(Option::is_some).collect();
    Ok(CubicReport {
        check: SweepCheck::from_flags(&flags),
        exact_cases: outcomes.iter().filter(|o| **o == Some(true)).count(),
        bounded_cases: outcomes.iter().filter(|o| **o == Some(false)).count(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub q: usize,
    pub k: usize,
    pub lambda2: SecondEigenvalue,
    pub mq: f64,
    /// max{q(k − 3), (q − 1)M_q} for the monomial family; max{q(p^{k−3} − 1), (q − 1)M_q} for the Frobenius family.
    pub predicted: f64,
    /// Equality for the monomial family, the upper bound for the Frobenius family.
    pub holds: bool,
    /// Some fᵢ exponent reached q and was reduced modulo X^q − X.
    pub reduced: bool,
}

fn cubic_spec(
    field: &FiniteField,
    k: usize,
    f_exps: &[u64],
    opts: &SweepOptions,
    mq_cap: usize,
) -> Result<(SGraphSpec, bool, MqResult, SecondEigenvalue)> {
    let (spec, reduced) = SGraphSpec::monomial(field, k, f_exps, &vec![3; k - 2])?;
    let mq = compute_mq(field, mq_cap)?;
    let s = spectrum_formula(&spec, opts)?;
    Ok((spec, reduced, mq, second_eigenvalue(&s)))
}

/// λ₂(S(k, q; X², …, X^{k−1}; X³, …, X³)) = max{q(k − 3), (q − 1)M_q}.
pub fn verify_theorem3(
    field: &FiniteField,
    k: usize,
    opts: &SweepOptions,
    mq_cap: usize,
) -> Result<TheoremReport> {
    check_cubic_field(field)?;
    let q = field.q();
    if k < 4 || k > q + 1 {
        return Err(Error::HypothesisViolated(format!(
            "needs 4 ≤ k ≤ q + 1, got k = {k}, q = {q}"
        )));
    }
    let f_exps: Vec<u64> = (3..=k as u64).map(|i| i - 1).collect();
    let (_, reduced, mq, lambda2) = cubic_spec(field, k, &f_exps, opts, mq_cap)?;
    let lin = CycInt::from_int(field.p(), (q * (k - 3)) as i64);
    let cubic = mq.value.value.scale(q as i64 - 1);
    let predicted = if lin.real_embed()? >= cubic.real_embed()? {
        lin
    } else {
        cubic
    };
    let predicted_num = predicted.real_embed()?;
    let holds = (lambda2.numeric - predicted_num).abs() <= 1e-9
        && (!lambda2.certified || lambda2.exact == predicted);
    Ok(TheoremReport {
        q,
        k,
        mq: mq.numeric(),
        predicted: predicted_num,
        holds,
        reduced,
        lambda2,
    })
}

/// λ₂(S(k, q; X^p, …, X^{p^{k−2}}; X³, …, X³)) ≤ max{q(p^{k−3} − 1), (q − 1)M_q}.
pub fn verify_theorem4(
    field: &FiniteField,
    k: usize,
    opts: &SweepOptions,
    mq_cap: usize,
) -> Result<TheoremReport> {
    check_cubic_field(field)?;
    let (q, p, e) = (field.q(), field.p() as u64, field.e() as usize);
    if k < 3 || k > e + 2 {
        return Err(Error::HypothesisViolated(format!(
            "needs 3 ≤ k ≤ e + 2, got k = {k}, e = {e}"
        )));
    }
    let f_exps: Vec<u64> = (3..=k as u32).map(|i| p.pow(i - 2)).collect();
    let (_, reduced, mq, lambda2) = cubic_spec(field, k, &f_exps, opts, mq_cap)?;
    let predicted = f64::max(
        (q as u64 * (p.pow(k as u32 - 3) - 1)) as f64,
        (q - 1) as f64 * mq.numeric(),
    );
    let holds = lambda2.numeric <= predicted + 1e-9;
    Ok(TheoremReport {
        q,
        k,
        mq: mq.numeric(),
        predicted,
        holds,
        reduced,
        lambda2,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Remark2Report {
    pub q: usize,
    pub k: usize,
    pub n: u64,
    pub lambda2: SecondEigenvalue,
    /// max{q(k − 3), 2n(q − 1)√q}
    pub bound: f64,
    pub holds: bool,
    /// Per-w: λ_w = q(N_w − 1) or λ_w ≤ 2n(q − N_w)√q, N_w the roots of Σ fᵢwᵢ.
    pub per_w: SweepCheck,
}

/// The g = X^{2n+1} generalisation of the cubic bound.
pub fn remark2_bound(
    field: &FiniteField,
    k: usize,
    n: u64,
    opts: &SweepOptions,
) -> Result<Remark2Report> {
    let q = field.q();
    let m = 2 * n + 1;
    if n < 1 || field.p() == 2 {
        return Err(Error::HypothesisViolated(format!(
            "needs n ≥ 1 and q odd, got n = {n}, q = {q}"
        )));
    }
    if q as u64 % m == 1 || m.is_multiple_of(field.p() as u64) {
        return Err(Error::HypothesisViolated(format!(
            "needs q ≢ 1 mod {m} and gcd({m}, q) = 1, got q = {q} (q mod {m} = {})",
            q as u64 % m
        )));
    }
    if k < 3 || k > q + 1 {
        return Err(Error::HypothesisViolated(format!(
            "needs 3 ≤ k ≤ q + 1, got k = {k}"
        )));
    }
    let f_exps: Vec<u64> = (3..=k as u64).map(|i| i - 1).collect();
    let (spec, _) = SGraphSpec::monomial(field, k, &f_exps, &vec![m; k - 2])?;
    let s = spectrum_formula(&spec, opts)?;
    let lambda2 = second_eigenvalue(&s);
    let qf = q as f64;
    let bound = f64::max(
        qf * (k as f64 - 3.0),
        2.0 * n as f64 * (qf - 1.0) * qf.sqrt(),
    );

    let f_vals: Vec<Vec<FieldElement>> = spec.fs().iter().map(Poly::value_table).collect();
    let flags = CharacterTable::new(&spec).sweep(opts.work_cap, |_, w, lambda| {
        let roots = field
            .elements()
            .filter(|u| {
                let i = u.value() as usize;
                f_vals
                    .iter()
                    .zip(&w[2..])
                    .fold(FieldElement::ZERO, |s, (fv, &wi)| {
                        field.add(s, field.mul(fv[i], wi))
                    })
                    .is_zero()
            })
            .count();
        *lambda == CycInt::from_int(field.p(), (q * roots) as i64 - q as i64)
            || lambda
                .real_embed()
                .is_ok_and(|v| v <= 2.0 * n as f64 * (q - roots) as f64 * qf.sqrt() + 1e-9)
    })?;
    let holds = lambda2.numeric <= bound + 1e-9;
    Ok(Remark2Report {
        q,
        k,
        n,
        lambda2,
        bound,
        holds,
        per_w: SweepCheck::from_flags(&flags),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Remark3Row {
    pub q: usize,
    pub mq: f64,
    /// 2√q − 2
    pub lower: f64,
    /// 2√q
    pub upper: f64,
    pub holds: bool,
}

/// 2√q − 2 ≤ M_q ≤ 2√q for every odd prime power q ≤ qmax with q ≡ 2 mod 3.
pub fn remark3_scan(qmax: usize, mq_cap: usize) -> Result<Vec<Remark3Row>> {
    (5..=qmax)
        .filter(|&q| q % 2 == 1 && q % 3 == 2 && prime_power(q as u64).is_some())
        .map(|q| {
            let field = field_of_order(q as u64)?;
            let mq = compute_mq(&field, mq_cap)?.numeric();
            let root = 2.0 * (q as f64).sqrt();
            let (lower, upper) = (root - 2.0, root);
            Ok(Remark3Row {
                q,
                mq,
                lower,
                upper,
                holds: lower - 1e-9 <= mq && mq <= upper + 1e-9,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverReport {
    /// Base spectrum ⊆ cover spectrum as multisets of exact values.
    pub is_submultiset: bool,
    pub lambda2_base: SecondEigenvalue,
    pub lambda2_cover: SecondEigenvalue,
    pub lambda2_monotone: bool,
    /// λ_{(w,0)} of the cover equals λ_w of the base for every w.
    pub projection: bool,
}

/// Compares S(k, q) with the S(k + 1, q) obtained by appending one (f, g) pair.
pub fn cover_check(
    base: &SGraphSpec,
    cover: &SGraphSpec,
    opts: &SweepOptions,
) -> Result<CoverReport> {
    if cover.k() != base.k() + 1 || cover.field() != base.field() || &cover.truncate()? != base {
        return Err(Error::SpecMismatch(
            "the cover must extend the base by exactly one (f, g) pair".into(),
        ));
    }
    let sb = spectrum_formula(base, opts)?;
    let sc = spectrum_formula(cover, opts)?;
    if !(sb.exhaustive && sc.exhaustive) {
        return Err(Error::HypothesisViolated(
            "cover containment needs exhaustive spectra".into(),
        ));
    }
    let is_submultiset = sb
        .entries
        .iter()
        .all(|e| sc.multiplicity_of(&e.value) >= e.multiplicity);
    let lambda2_base = second_eigenvalue(&sb);
    let lambda2_cover = second_eigenvalue(&sc);
    let lambda2_monotone = lambda2_cover.numeric >= lambda2_base.numeric - 1e-9;

    let cover_table = CharacterTable::new(cover);
    let agree = CharacterTable::new(base).sweep(opts.work_cap, |_, w, lambda| {
        let mut lifted = w.to_vec();
        lifted.push(FieldElement::ZERO);
        cover_table.eigenvalue(&lifted) == *lambda
    })?;
    let projection = agree.iter().all(|&ok| ok);
    Ok(CoverReport {
        is_submultiset,
        lambda2_base,
        lambda2_cover,
        lambda2_monotone,
        projection,
    })
}
