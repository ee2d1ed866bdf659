//! Univariate polynomials over 𝔽_q of degree at most q − 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FiniteField};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: FiniteField,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (j, c.value()) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "X")?,
                (1, v) => write!(f, "{v}*X")?,
                (_, 1) => write!(f, "X^{j}")?,
                (_, v) => write!(f, "{v}*X^{j}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Builds a polynomial from ascending coefficients; trailing zeros are trimmed.
    pub fn new(field: &FiniteField, coeffs: Vec<FieldElement>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let max = field.q() - 1;
        if coeffs.len() > field.q() {
            return Err(Error::DegreeTooLarge {
                degree: coeffs.len() - 1,
                max,
            });
        }
        Ok(Poly {
            field: field.clone(),
            coeffs,
        })
    }

    /// Builds a polynomial from canonical integer encodings of its coefficients.
    pub fn from_encodings(field: &FiniteField, coeffs: &[u64]) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|&c| field.element(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, coeffs)
    }

    pub fn zero(field: &FiniteField) -> Self {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    /// c·Xⁿ, with n required to be at most q − 1.
    pub fn monomial(field: &FiniteField, c: FieldElement, n: usize) -> Result<Self> {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[n] = c;
        Self::new(field, coeffs)
    }

    /// The function x ↦ c·xⁿ as a polynomial of degree ≤ q − 1, i.e. Xⁿ
    /// reduced modulo X^q − X. Also returns whether a reduction happened.
    pub fn monomial_reduced(field: &FiniteField, c: FieldElement, n: u64) -> (Self, bool) {
        let q = field.q() as u64;
        if n < q {
            return (
                Self::monomial(field, c, n as usize).expect("degree < q"),
                false,
            );
        }
        let r = (n - 1) % (q - 1) + 1;
        (
            Self::monomial(field, c, r as usize).expect("degree < q"),
            true,
        )
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn encodings(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| c.value() as u64).collect()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of Xʲ (zero past the degree).
    pub fn coeff(&self, j: usize) -> FieldElement {
        self.coeffs.get(j).copied().unwrap_or(FieldElement::ZERO)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Values at every field element, indexed by canonical encoding.
    pub fn value_table(&self) -> Vec<FieldElement> {
        self.field.elements().map(|x| self.eval(x)).collect()
    }

    /// True iff every even-degree coefficient (constant included) is zero,
    /// i.e. g(−X) = −g(X) holds as a polynomial identity.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    /// First even degree carrying a nonzero coefficient.
    pub fn first_even_term(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .step_by(2)
            .find(|(_, c)| !c.is_zero())
            .map(|(j, _)| j)
    }

    /// The polynomial x ↦ f(−x).
    pub fn compose_neg(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| if j % 2 == 1 { f.neg(c) } else { c })
            .collect();
        Poly {
            field: f.clone(),
            coeffs,
        }
    }

    /// Linear combination Σ sᵢ·pᵢ of polynomials over the same field.
    pub fn linear_combination(field: &FiniteField, terms: &[(FieldElement, &Poly)]) -> Self {
        let len = terms.iter().map(|(_, p)| p.coeffs.len()).max().unwrap_or(0);
        let mut coeffs = vec![FieldElement::ZERO; len];
        for (s, p) in terms {
            for (j, &c) in p.coeffs.iter().enumerate() {
                coeffs[j] = field.add(coeffs[j], field.mul(*s, c));
            }
        }
        Self::new(field, coeffs).expect("degree bounded by inputs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn trims_and_bounds_degree() {
        let f = make_field(3, 1).unwrap();
        let p = Poly::from_encodings(&f, &[1, 2, 0, 0]).unwrap();
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::zero(&f).degree(), None);
        assert_eq!(
            Poly::from_encodings(&f, &[0, 0, 0, 1]).unwrap_err(),
            Error::DegreeTooLarge { degree: 3, max: 2 }
        );
        assert!(Poly::from_encodings(&f, &[3]).is_err());
    }

    #[test]
    fn oddness_is_coefficient_level() {
        let f = make_field(5, 1).unwrap();
        assert!(Poly::from_encodings(&f, &[0, 1, 0, 1]).unwrap().is_odd());
        let g = Poly::from_encodings(&f, &[0, 1, 3]).unwrap();
        assert!(!g.is_odd());
        assert_eq!(g.first_even_term(), Some(2));
        assert_eq!(
            Poly::from_encodings(&f, &[1]).unwrap().first_even_term(),
            Some(0)
        );
    }

    #[test]
    fn horner_matches_powers() {
        let f = make_field(3, 2).unwrap();
        let p = Poly::from_encodings(&f, &[4, 0, 7, 1]).unwrap();
        for x in f.elements() {
            let direct = [4u64, 0, 7, 1]
                .iter()
                .enumerate()
                .fold(FieldElement::ZERO, |acc, (j, &c)| {
                    f.add(acc, f.mul(f.element(c).unwrap(), f.pow(x, j as u64)))
                });
            assert_eq!(p.eval(x), direct);
        }
    }

    #[test]
    fn reduction_mod_xq_minus_x_preserves_values() {
        let f = make_field(5, 1).unwrap();
        for n in [5u64, 6, 25, 125] {
            let (p, reduced) = Poly::monomial_reduced(&f, FieldElement::ONE, n);
            assert!(reduced);
            for x in f.elements() {
                assert_eq!(p.eval(x), f.pow(x, n));
            }
        }
        let (p, reduced) = Poly::monomial_reduced(&f, FieldElement::ONE, 4);
        assert!(!reduced);
        assert_eq!(p.degree(), Some(4));
    }
}
