//! `Φ(A, b)` as a quasi-polynomial in the right-hand side `b` over the
//! closure of a full-dimensional chamber.
//!
//! With `h_1, …, h_m` independent generators of the closure and
//! `λ = H⁻¹ b`, `P_A(b) = Σ λ_i P_A(h_i)` whenever `λ >= 0`, so
//! `Φ(A, b) = Σ_I Γ_I(λ) λ^I` with the coefficients of the Minkowski family
//! `P_A(h_1), …, P_A(h_m)`. Negative components of `λ` are moved into the
//! nonnegative orthant by whole periods before the coefficients are read,
//! and the result is expanded in monomials of `b`.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::{coeffs_with, CoeffVector, CountOracle};
use crate::chambers::Chamber;
use crate::error::{Error, Result};
use crate::lattice::{count_box, RECONSTRUCTION_MAX_POINTS};
use crate::polytope::{denominators, vertices, HRep, VRep};
use crate::poly::{monomial_value, multi_indices, MultiIndex};
use crate::ratmath::{ceil, factorial, floor, pow, rank_of, to_i64, RatMatrix, RatVector, Rational};

/// Counts of `P_A(Σ λ_i h_i)` for `λ >= 0`.
#[derive(Clone, Debug)]
pub struct RhsFamily {
    a: Vec<Vec<i64>>,
    generators: Vec<RatVector>,
    periods: RatVector,
    /// For each vertex of the chamber's polytopes, `(σ, A_σ⁻¹)`.
    vertex_maps: Vec<(Vec<usize>, RatMatrix)>,
    /// Generators in the column space of `A`; a full period along one of
    /// them translates the polytope by an integral vector.
    translations: Vec<bool>,
    budget: u64,
}

impl RhsFamily {
    pub fn new(a: &[Vec<i64>], chamber: &Chamber, generators: &[RatVector]) -> Result<Self> {
        let n = a[0].len();
        let periods = generators
            .iter()
            .map(|h| {
                let p = vertices(&HRep::new(a.to_vec(), h.clone())?)?;
                if p.is_empty() {
                    return Err(Error::Consistency("P_A(h) is empty for a chamber generator".into()));
                }
                Ok(denominators(&p)?.1)
            })
            .collect::<Result<RatVector>>()?;
        let mut vertex_maps = Vec::new();
        for active in &chamber.signature {
            let found = active.iter().copied().combinations(n).find_map(|sigma| {
                let rows: Vec<Vec<i64>> = sigma.iter().map(|&i| a[i].clone()).collect();
                let inv = RatMatrix::from_int_rows(&rows).ok()?.inverse().ok()??;
                Some((sigma, inv))
            });
            vertex_maps.push(found.ok_or_else(|| Error::Consistency("vertex without a basis".into()))?);
        }
        let columns: Vec<RatVector> =
            (0..n).map(|j| a.iter().map(|row| Rational::from_integer(row[j].into())).collect()).collect();
        let translations = generators
            .iter()
            .map(|h| {
                let mut with_h = columns.clone();
                with_h.push(h.clone());
                rank_of(&with_h) == n
            })
            .collect();
        Ok(Self {
            a: a.to_vec(),
            generators: generators.to_vec(),
            periods,
            vertex_maps,
            translations,
            budget: RECONSTRUCTION_MAX_POINTS,
        })
    }

    pub fn parts(&self) -> Result<Vec<VRep>> {
        self.generators.iter().map(|h| vertices(&HRep::new(self.a.clone(), h.clone())?)).collect()
    }

    fn rhs(&self, lambda: &[Rational]) -> RatVector {
        let m = self.a.len();
        (0..m).map(|row| self.generators.iter().zip(lambda).map(|(h, l)| &h[row] * l).sum()).collect()
    }
}

impl CountOracle for RhsFamily {
    fn arity(&self) -> usize {
        self.generators.len()
    }

    fn dim(&self) -> usize {
        self.a[0].len()
    }

    fn periods(&self) -> &[Rational] {
        &self.periods
    }

    fn canonical(&self, lambda: &[Rational]) -> RatVector {
        lambda
            .iter()
            .zip(&self.periods)
            .zip(&self.translations)
            .map(|((l, d), &t)| if t { l - d * Rational::from_integer(floor(&(l / d))) } else { l.clone() })
            .collect()
    }

    fn count(&self, lambda: &[Rational]) -> Result<u64> {
        let n = self.dim();
        let b = self.rhs(lambda);
        let mut lo: Option<RatVector> = None;
        let mut hi: Option<RatVector> = None;
        for (sigma, inv) in &self.vertex_maps {
            let bs: RatVector = sigma.iter().map(|&i| b[i].clone()).collect();
            let v = inv.mul_vec(&bs)?;
            match (&mut lo, &mut hi) {
                (Some(l), Some(h)) => {
                    for j in 0..n {
                        if v[j] < l[j] {
                            l[j] = v[j].clone();
                        }
                        if v[j] > h[j] {
                            h[j] = v[j].clone();
                        }
                    }
                }
                _ => {
                    lo = Some(v.clone());
                    hi = Some(v);
                }
            }
        }
        let (lo, hi) = (lo.expect("vertices"), hi.expect("vertices"));
        let lo = lo.iter().map(|x| to_i64(&ceil(x))).collect::<Result<Vec<_>>>()?;
        let hi = hi.iter().map(|x| to_i64(&floor(x))).collect::<Result<Vec<_>>>()?;
        let c = b.iter().map(|x| to_i64(&floor(x))).collect::<Result<Vec<_>>>()?;
        count_box(&self.a, &c, &lo, &hi, self.budget)
    }
}

/// `Σ_{K ∈ M_2(I, J)} binom(I, K) (H⁻¹)^K`: the coefficient of `b^J` in
/// `λ^I` with `λ = H⁻¹ b`. `K` ranges over nonnegative integer matrices with
/// row sums `I` and column sums `J`.
pub fn multinomial_transform(i: &[u32], j: &[u32], hinv: &RatMatrix) -> Rational {
    fn rows_from(
        row: usize,
        i: &[u32],
        remaining: &mut Vec<u32>,
        hinv: &RatMatrix,
        acc: Rational,
        total: &mut Rational,
    ) {
        let m = i.len();
        if row == m {
            if remaining.iter().all(|&x| x == 0) {
                *total += acc;
            }
            return;
        }
        for k_row in compositions(i[row], m) {
            if k_row.iter().zip(remaining.iter()).any(|(k, r)| k > r) {
                continue;
            }
            let mut term = Rational::from_integer(factorial(i[row]));
            for (col, &k) in k_row.iter().enumerate() {
                term /= Rational::from_integer(factorial(k));
                term *= pow(&hinv[(row, col)], k);
            }
            for (r, k) in remaining.iter_mut().zip(&k_row) {
                *r -= k;
            }
            rows_from(row + 1, i, remaining, hinv, &acc * term, total);
            for (r, k) in remaining.iter_mut().zip(&k_row) {
                *r += k;
            }
        }
    }
    let mut total = Rational::zero();
    let mut remaining = j.to_vec();
    rows_from(0, i, &mut remaining, hinv, Rational::one(), &mut total);
    total
}

/// All `v ∈ N^m` with `|v|_1 = total`.
fn compositions(total: u32, m: usize) -> Vec<Vec<u32>> {
    if m == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, m - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RhsQuasiPoly {
    pub a: Vec<Vec<i64>>,
    pub chamber: Chamber,
    /// The first `m` linearly independent generators, as columns of `H`.
    pub generators: Vec<RatVector>,
    pub hinv: RatMatrix,
    family: RhsFamily,
    /// `transform[I]` lists `(J, c)` with `λ^I = Σ_J c b^J`.
    transform: BTreeMap<MultiIndex, Vec<(MultiIndex, Rational)>>,
}

pub fn reconstruct_rhs(a: &[Vec<i64>], chamber: &Chamber) -> Result<RhsQuasiPoly> {
    let m = a.len();
    if !chamber.is_full_dimensional() {
        return Err(Error::Domain("right-hand-side reconstruction needs a full-dimensional chamber".into()));
    }
    let generators: Vec<RatVector> = chamber.generators().into_iter().take(m).collect();
    if generators.len() < m || rank_of(&generators) < m {
        return Err(Error::Consistency("chamber generators do not span right-hand-side space".into()));
    }
    let h = RatMatrix::from_columns(&generators)?;
    let hinv = h.inverse()?.ok_or_else(|| Error::Consistency("generator matrix is singular".into()))?;
    let family = RhsFamily::new(a, chamber, &generators)?;
    let n = a[0].len() as u32;
    let mut transform = BTreeMap::new();
    for i in multi_indices(m, n) {
        let deg: u32 = i.iter().sum();
        let terms: Vec<(MultiIndex, Rational)> = multi_indices(m, n)
            .into_iter()
            .filter(|j| j.iter().sum::<u32>() == deg)
            .map(|j| {
                let c = multinomial_transform(&i, &j, &hinv);
                (j, c)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        transform.insert(i, terms);
    }
    Ok(RhsQuasiPoly { a: a.to_vec(), chamber: chamber.clone(), generators, hinv, family, transform })
}

impl RhsQuasiPoly {
    pub fn periods(&self) -> &[Rational] {
        self.family.periods()
    }

    pub fn family(&self) -> &RhsFamily {
        &self.family
    }

    pub fn lambda(&self, b: &[Rational]) -> Result<RatVector> {
        self.hinv.mul_vec(b)
    }

    /// `Γ_I` of the generator family at `λ(b)` moved into the nonnegative
    /// orthant by whole periods.
    pub fn gamma(&self, b: &[Rational]) -> Result<CoeffVector> {
        let lambda = self.lambda(b)?;
        let shifted: RatVector = lambda
            .iter()
            .zip(self.periods())
            .map(|(l, d)| {
                if l.is_negative() {
                    l + d * Rational::from_integer(ceil(&(-l / d)))
                } else {
                    l.clone()
                }
            })
            .collect();
        let mut c = coeffs_with(&self.family, &shifted)?;
        c.point = lambda;
        Ok(c)
    }

    fn check_domain(&self, b: &[Rational]) -> Result<()> {
        if b.len() != self.a.len() {
            return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), self.a.len())));
        }
        if !self.chamber.contains(b) {
            return Err(Error::Domain("b lies outside the closure of the chamber".into()));
        }
        Ok(())
    }

    /// `Φ_J(A, b)` for all `|J|_1 <= n`, without the domain check.
    pub fn coefficients_extended(&self, b: &[Rational]) -> Result<BTreeMap<MultiIndex, Rational>> {
        let gamma = self.gamma(b)?;
        let mut phi: BTreeMap<MultiIndex, Rational> =
            multi_indices(self.a.len(), self.a[0].len() as u32).into_iter().map(|j| (j, Rational::zero())).collect();
        for (i, g) in &gamma.values {
            if g.is_zero() {
                continue;
            }
            for (j, c) in &self.transform[i] {
                *phi.get_mut(j).expect("index") += g * c;
            }
        }
        Ok(phi)
    }

    pub fn coefficients(&self, b: &[Rational]) -> Result<BTreeMap<MultiIndex, Rational>> {
        self.check_domain(b)?;
        self.coefficients_extended(b)
    }

    /// `Φ(A, b) = Σ_J Φ_J(A, b) b^J` for `b` in the chamber closure.
    pub fn evaluate(&self, b: &[Rational]) -> Result<Rational> {
        self.check_domain(b)?;
        self.evaluate_extended(b)
    }

    /// The same expression evaluated formally at any `b`.
    pub fn evaluate_extended(&self, b: &[Rational]) -> Result<Rational> {
        let phi = self.coefficients_extended(b)?;
        Ok(phi.iter().map(|(j, c)| c * monomial_value(b, j)).sum())
    }

    /// `Σ_{|J|_1 = n} Φ_J b^J`, which equals the volume of `P_A(b)`.
    pub fn leading_form(&self, b: &[Rational]) -> Result<Rational> {
        let n = self.a[0].len() as u32;
        let phi = self.coefficients(b)?;
        Ok(phi
            .iter()
            .filter(|(j, _)| j.iter().sum::<u32>() == n)
            .map(|(j, c)| c * monomial_value(b, j))
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::chamber_of;
    use crate::lattice::count;
    use crate::polytope::volume;
    use crate::poly::Poly;
    use crate::ratmath::{int, rat, rvec};
    use crate::testutil::four_rows;

    fn s3() -> Vec<Vec<i64>> {
        four_rows(&vec![int(1); 4]).a().to_vec()
    }

    fn brute(a: &[Vec<i64>], b: &[Rational]) -> Rational {
        Rational::from_integer(count(&HRep::new(a.to_vec(), b.to_vec()).unwrap()).unwrap().into())
    }

    #[test]
    fn quadrangle_instance() {
        let a = s3();
        let b = vec![int(2), rat(7, 2), int(1), rat(1, 2)];
        let qp = reconstruct_rhs(&a, &chamber_of(&a, &b).unwrap()).unwrap();
        assert_eq!(qp.evaluate(&b).unwrap(), int(5));
        assert_eq!(qp.leading_form(&b).unwrap(), volume(&vertices(&four_rows(&b)).unwrap()).unwrap());
    }

    #[test]
    fn triangle_chamber_integral_point() {
        let a = s3();
        let b = rvec(&[1, 1, 2, 1]);
        let qp = reconstruct_rhs(&a, &chamber_of(&a, &b).unwrap()).unwrap();
        assert_eq!(qp.evaluate(&b).unwrap(), brute(&a, &b));
        assert!(matches!(qp.evaluate(&rvec(&[3, 3, 1, 1])), Err(Error::Domain(_))));
    }

    #[test]
    fn one_dimensional_system() {
        let a = vec![vec![1], vec![-1]];
        let qp = reconstruct_rhs(&a, &chamber_of(&a, &[int(1), int(1)]).unwrap()).unwrap();
        assert_eq!(qp.evaluate(&[rat(3, 2), rat(1, 2)]).unwrap(), int(2));
        for (p, q) in [(7, 3), (-1, 4), (0, 1), (5, 2)] {
            let b1 = rat(p, q);
            let b2 = rat(3, 1) - &b1 + rat(1, 3);
            let b = vec![b1, b2];
            assert_eq!(qp.evaluate(&b).unwrap(), brute(&a, &b));
        }
    }

    #[test]
    fn transform_matches_polynomial_expansion() {
        let hinv = RatMatrix::from_rows(vec![
            vec![rat(1, 2), int(0), rat(-1, 3)],
            vec![int(1), int(2), int(0)],
            vec![rat(-1, 4), int(1), int(1)],
        ])
        .unwrap();
        let lambda: Vec<Poly> = (0..3)
            .map(|row| (0..3).fold(Poly::zero(3), |acc, col| acc.add(&Poly::var(3, col).scale(&hinv[(row, col)]))))
            .collect();
        for i in multi_indices(3, 3) {
            let expanded = (0..3).fold(Poly::constant(3, int(1)), |acc, row| acc.mul(&lambda[row].pow(i[row])));
            for j in multi_indices(3, 3) {
                let expected = if j.iter().sum::<u32>() == i.iter().sum::<u32>() { expanded.coefficient(&j) } else { int(0) };
                let got = if j.iter().sum::<u32>() == i.iter().sum::<u32>() { multinomial_transform(&i, &j, &hinv) } else { int(0) };
                assert_eq!(got, expected, "I = {i:?}, J = {j:?}");
            }
        }
    }

    #[test]
    fn periodic_along_generators() {
        let a = s3();
        let b = vec![rat(5, 2), rat(7, 3), rat(2, 3), rat(1, 5)];
        let ch = chamber_of(&a, &b).unwrap();
        let qp = reconstruct_rhs(&a, &ch).unwrap();
        let base = qp.coefficients(&b).unwrap();
        for (h, d) in qp.generators.iter().zip(qp.periods()) {
            let moved: RatVector = b.iter().zip(h).map(|(x, y)| x + y * d).collect();
            assert_eq!(qp.coefficients(&moved).unwrap(), base);
        }
    }
}
