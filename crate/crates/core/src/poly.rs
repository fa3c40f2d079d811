//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{pow, RatMatrix, Rational};

/// Exponent vector.
pub type MultiIndex = Vec<u32>;

/// All `I ∈ {0..n}^k` with `|I|_1 <= n`, in lexicographic order.
pub fn multi_indices(k: usize, n: u32) -> Vec<MultiIndex> {
    (0..k)
        .map(|_| 0..=n)
        .multi_cartesian_product()
        .filter(|i| i.iter().sum::<u32>() <= n)
        .collect()
}

/// `x^I`.
pub fn monomial_value(x: &[Rational], expo: &[u32]) -> Rational {
    x.iter().zip(expo).filter(|(_, &e)| e > 0).map(|(v, &e)| pow(v, e)).product()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(nvars, [(vec![0; nvars], c)])
    }

    pub fn var(nvars: usize, j: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::from_terms(nvars, [(e, Rational::one())])
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, j: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[j]).max()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c * s)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: MultiIndex = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::constant(self.nvars, Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().map(|(e, c)| c * monomial_value(x, e)).sum()
    }

    pub fn derivative(&self, j: usize) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[j] > 0).map(|(e, c)| {
                let mut d = e.clone();
                d[j] -= 1;
                (d, c * Rational::from_integer(e[j].into()))
            }),
        )
    }

    /// The unique polynomial of total degree `<= degree` through the given
    /// samples; the number of samples must equal the number of monomials.
    pub fn interpolate(points: &[Vec<Rational>], values: &[Rational], degree: u32) -> Result<Poly> {
        let nvars = points.first().map_or(0, Vec::len);
        let monos = multi_indices(nvars, degree);
        if points.len() != monos.len() || values.len() != points.len() {
            return Err(Error::Dimension(format!(
                "{} samples for {} monomials of degree {degree}",
                points.len(),
                monos.len()
            )));
        }
        let rows: Vec<Vec<Rational>> = points
            .iter()
            .map(|p| monos.iter().map(|e| monomial_value(p, e)).collect())
            .collect();
        let coeffs = RatMatrix::from_rows(rows)?
            .solve(values)?
            .ok_or_else(|| Error::Consistency("interpolation nodes are not unisolvent".into()))?;
        Ok(Poly::from_terms(nvars, monos.into_iter().zip(coeffs)))
    }
}
