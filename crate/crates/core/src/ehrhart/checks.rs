//! Structural identities of the reconstructed quasi-polynomials.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::cells::MultiQuasiPoly;
use super::rhs::RhsQuasiPoly;
use super::{coeffs_at, MinkowskiFamily};
use crate::chambers::equivalent;
use crate::error::{Error, Result};
use crate::polytope::{minkowski, volume, VRep};
use crate::poly::{monomial_value, MultiIndex, Poly};
use crate::ratmath::{factorial, RatMatrix, RatVector, Rational};

/// `∂p_I/∂r_j = -(I_j + 1) p_{I + e_j}` as polynomials on one cell.
pub fn derivative_check(qp: &MultiQuasiPoly, cell: usize, i: &[u32], j: usize) -> Result<bool> {
    let n = qp.dim as u32;
    let c = qp.cells.get(cell).ok_or_else(|| Error::Domain(format!("no cell {cell}")))?;
    if i.len() != qp.arity() || j >= qp.arity() {
        return Err(Error::Dimension("index does not match the arity".into()));
    }
    if i.iter().sum::<u32>() >= n {
        return Err(Error::Domain("derivative identity needs |I| < n".into()));
    }
    let mut up = i.to_vec();
    up[j] += 1;
    let lhs = c.coeffs[i].derivative(j);
    let rhs = c.coeffs[&up].scale(&-Rational::from_integer((i[j] + 1).into()));
    Ok(lhs == rhs)
}

/// Checks `∂Φ_J/∂b_l = -(J_l + 1) Φ_{J + e_l}` at `b` for every `|J|_1 < n`
/// and every `l`. Each `Φ_J` is fitted as a univariate polynomial along
/// `b + t e_l` for small `t`, confirmed on held-out points, and
/// differentiated at `t = 0`. Returns `(J, l, holds)` triples.
pub fn rhs_derivative_check(qp: &RhsQuasiPoly, b: &[Rational]) -> Result<Vec<(MultiIndex, usize, bool)>> {
    let m = qp.a.len();
    let n = qp.a[0].len() as u32;
    let at_b = qp.coefficients(b)?;
    let mut out = Vec::new();
    for l in 0..m {
        let line = fit_line(qp, b, l, n)?;
        for (j, poly) in &line {
            if j.iter().sum::<u32>() >= n {
                continue;
            }
            let slope = poly.derivative(0).eval(&[Rational::zero()]);
            let mut up = j.clone();
            up[l] += 1;
            let expected = -Rational::from_integer((j[l] + 1).into()) * &at_b[&up];
            out.push((j.clone(), l, slope == expected));
        }
    }
    Ok(out)
}

/// Univariate polynomials `t ↦ Φ_J(b + t e_l)` of degree `n - |J|`,
/// fitted on `0, ε, …, nε` and verified at two further points.
fn fit_line(qp: &RhsQuasiPoly, b: &[Rational], l: usize, n: u32) -> Result<BTreeMap<MultiIndex, Poly>> {
    let mut eps = Rational::new(1.into(), 1024.into());
    for _ in 0..12 {
        let at = |t: &Rational| -> Result<BTreeMap<MultiIndex, Rational>> {
            let mut x = b.to_vec();
            x[l] += t;
            qp.coefficients_extended(&x)
        };
        let ts: Vec<Rational> = (0..=n).map(|s| &eps * Rational::from_integer(s.into())).collect();
        let samples = ts.iter().map(|t| at(t)).collect::<Result<Vec<_>>>()?;
        let held: Vec<Rational> = vec![&eps / Rational::from_integer(3.into()), &eps * Rational::new(5.into(), 7.into())];
        let held_vals = held.iter().map(|t| at(t)).collect::<Result<Vec<_>>>()?;
        let mut fitted = BTreeMap::new();
        let mut ok = true;
        for j in samples[0].keys() {
            let pts: Vec<Vec<Rational>> = ts.iter().map(|t| vec![t.clone()]).collect();
            let vals: Vec<Rational> = samples.iter().map(|s| s[j].clone()).collect();
            let p = Poly::interpolate(&pts, &vals, n)?;
            let budget = n - j.iter().sum::<u32>();
            if p.total_degree().is_some_and(|d| d > budget)
                || held.iter().zip(&held_vals).any(|(t, v)| p.eval(&[t.clone()]) != v[j])
            {
                ok = false;
                break;
            }
            fitted.insert(j.clone(), p);
        }
        if ok {
            return Ok(fitted);
        }
        eps /= Rational::from_integer(8.into());
    }
    Err(Error::Consistency("no polynomial piece found along the coordinate line".into()))
}

/// `V_I` for `|I|_1 = n`: `vol(Σ r_j P_j) = Σ_I (n! / I!) V_I r^I`.
pub fn mixed_volumes(parts: &[VRep]) -> Result<BTreeMap<MultiIndex, Rational>> {
    let k = parts.len();
    let first = parts.first().ok_or_else(|| Error::Domain("no parts".into()))?;
    let n = first.dim() as u32;
    let generic = minkowski(parts, &vec![Rational::one(); k])?;
    if !generic.is_full_dimensional() {
        return Err(Error::Domain("mixed volumes need a full-dimensional sum".into()));
    }
    let monos: Vec<MultiIndex> = crate::poly::multi_indices(k, n)
        .into_iter()
        .filter(|i| i.iter().sum::<u32>() == n)
        .collect();
    let samples: Vec<RatVector> = monos
        .iter()
        .map(|a| a.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let values = samples
        .iter()
        .map(|w| volume(&minkowski(parts, w)?))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<RatVector> = samples.iter().map(|w| monos.iter().map(|e| monomial_value(w, e)).collect()).collect();
    let coef = RatMatrix::from_rows(rows)?
        .solve(&values)?
        .ok_or_else(|| Error::Consistency("volume fit is rank deficient".into()))?;
    let nfact = Rational::from_integer(factorial(n));
    Ok(monos
        .into_iter()
        .zip(coef)
        .map(|(i, c)| {
            let ifact: Rational = i.iter().map(|&x| Rational::from_integer(factorial(x))).product();
            (i, c * ifact / &nfact)
        })
        .collect())
}

/// Support values of each part on the facet normals of the generic sum.
/// Two nonnegative weightings give the same Minkowski sum exactly when
/// they combine these vectors to the same result.
pub fn part_generators(parts: &[VRep]) -> Result<Vec<RatVector>> {
    let fam = MinkowskiFamily::new(parts)?;
    if !fam.is_full_dimensional() {
        return Err(Error::Domain("generic Minkowski sum is not full-dimensional".into()));
    }
    let k = parts.len();
    let forms = &fam.supports;
    Ok((0..k).map(|j| forms.iter().map(|f| f[j].clone()).collect()).collect())
}

/// Coefficients agree at `r` and `s` whenever `Σ r_i h_i = Σ s_i h_i`.
pub fn mcmullen_class_check(parts: &[VRep], r: &[Rational], s: &[Rational], generators: &[RatVector]) -> Result<bool> {
    if !equivalent(r, s, generators)? {
        return Err(Error::Domain("r and s are not equivalent".into()));
    }
    Ok(coeffs_at(parts, r)?.values == coeffs_at(parts, s)?.values)
}
