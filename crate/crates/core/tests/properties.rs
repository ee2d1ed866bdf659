use proptest::prelude::*;

use skq::charsum::{exp_sum, weil_check};
use skq::gf::{make_field, FieldElement, FiniteField};
use skq::graphs::SGraphSpec;
use skq::poly::Poly;
use skq::spectral::eigenvalue_at;

const FIELDS: &[(u64, u32)] = &[
    (2, 1),
    (2, 2),
    (2, 3),
    (3, 1),
    (3, 2),
    (5, 1),
    (7, 1),
    (2, 4),
    (11, 1),
];

fn field() -> impl Strategy<Value = FiniteField> {
    prop::sample::select(FIELDS).prop_map(|(p, e)| make_field(p, e).unwrap())
}

/// A field together with `len` raw values below 2^16, reduced mod q by the caller.
fn field_and_values(len: usize) -> impl Strategy<Value = (FiniteField, Vec<u32>)> {
    (field(), prop::collection::vec(0u32..1 << 16, len))
}

fn el(f: &FiniteField, raw: u32) -> FieldElement {
    f.element(raw as u64 % f.q() as u64).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_additive_and_frobenius_invariant((f, v) in field_and_values(2)) {
        let (a, b) = (el(&f, v[0]), el(&f, v[1]));
        prop_assert_eq!(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % f.p());
        prop_assert_eq!(f.trace(f.frobenius(a, 1)), f.trace(a));
    }

    #[test]
    fn nontrivial_additive_character_sums_vanish((f, v) in field_and_values(1)) {
        let a = el(&f, v[0]);
        prop_assume!(!a.is_zero());
        let lin = Poly::new(&f, vec![FieldElement::ZERO, a]).unwrap();
        prop_assert!(exp_sum(&lin).value.is_zero());
    }

    #[test]
    fn weil_bound_when_p_does_not_divide_degree((f, v) in field_and_values(12)) {
        let n = (v[0] as usize % (f.q() - 1)).max(1);
        prop_assume!(!n.is_multiple_of(f.p() as usize));
        let mut coeffs: Vec<FieldElement> = v[1..].iter().take(n).map(|&r| el(&f, r)).collect();
        coeffs.resize(n, FieldElement::ZERO);
        coeffs.push(el(&f, v[0] % (f.q() as u32 - 1) + 1));
        let w = weil_check(&Poly::new(&f, coeffs).unwrap());
        prop_assert!(w.applicable);
        prop_assert!(w.holds, "|ε| = {} > {}", w.abs_value, w.bound);
    }

    #[test]
    fn eigenvalues_of_odd_g_specs_are_real((f, v) in field_and_values(20)) {
        prop_assume!(f.q() <= 16);
        let k = 3 + v[0] as usize % 2;
        let q = f.q();
        let odd = f.p() != 2;
        let polys = |offset: usize, odd: bool| -> Vec<Poly> {
            (0..k - 2)
                .map(|i| {
                    let coeffs = (0..4.min(q))
                        .map(|j| if odd && j % 2 == 0 { FieldElement::ZERO } else { el(&f, v[offset + 4 * i + j]) })
                        .collect();
                    Poly::new(&f, coeffs).unwrap()
                })
                .collect()
        };
        let spec = SGraphSpec::new(&f, k, polys(1, false), polys(9, odd)).unwrap();
        let w: Vec<FieldElement> = (0..k).map(|i| el(&f, v[i].wrapping_mul(2654435761))).collect();
        let lambda = eigenvalue_at(&spec, &w);
        prop_assert!(lambda.is_real());
        prop_assert!(lambda.real_embed().unwrap().abs() <= spec.degree() as f64 + 1e-9);
    }
}
