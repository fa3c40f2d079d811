//! Rational Ehrhart quasi-polynomials.
//!
//! Everything here is driven by a [`CountOracle`]: a lattice-point count as a
//! function of a weight vector `r >= 0`, periodic coefficients with known
//! periods. Coefficient values at a single `r` come from [`coeffs_with`],
//! which counts on the shift grid `r + U⊙d` and solves a tensor-product
//! Vandermonde system.

pub mod cells;
pub mod checks;
pub mod rhs;

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{count_box, count_minkowski_with_budget, RECONSTRUCTION_MAX_POINTS};
use crate::polytope::{denominators, hull_facets, minkowski, support_int, VRep};
use crate::poly::{monomial_value, MultiIndex};
use crate::ratmath::{binomial, ceil, factorial, floor, pow, to_i64, RatMatrix, RatVector, Rational};

pub use cells::{reconstruct_minkowski, reconstruct_univariate, Cell, MultiQuasiPoly, Wall};
pub use checks::{derivative_check, mcmullen_class_check, mixed_volumes, part_generators, rhs_derivative_check};
pub use rhs::{reconstruct_rhs, RhsQuasiPoly};

/// A lattice-point count depending on `k` nonnegative weights, whose
/// Ehrhart coefficients have the given periods.
pub trait CountOracle: Sync {
    fn arity(&self) -> usize;
    /// Ambient dimension `n`, the total degree of the quasi-polynomial.
    fn dim(&self) -> usize;
    fn periods(&self) -> &[Rational];
    fn count(&self, r: &[Rational]) -> Result<u64>;
    /// A representative with the same count, used to skip repeated work on
    /// the shift grid.
    fn canonical(&self, r: &[Rational]) -> RatVector {
        r.to_vec()
    }
}

/// Exact coefficient values `{Γ_I(r)}` at one argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    pub point: RatVector,
    pub values: BTreeMap<MultiIndex, Rational>,
}

impl CoeffVector {
    /// `Σ_I values[I] x^I`.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.values.iter().map(|(i, c)| c * monomial_value(x, i)).sum()
    }

    /// The lattice count at `point`.
    pub fn total(&self) -> Rational {
        self.evaluate(&self.point)
    }

    pub fn get(&self, i: &[u32]) -> Rational {
        self.values.get(i).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Counts of `Σ r_j P_j` for fixed parts.
///
/// When the generic sum `Σ P_j` is full-dimensional, every `Σ r_j P_j` with
/// `r >= 0` is cut out by the facet normals `u` of the generic sum with
/// right-hand sides `Σ r_j h(P_j, u)`, so counting is a box walk. Otherwise
/// membership is decided by linear feasibility.
#[derive(Clone, Debug)]
pub struct MinkowskiFamily {
    parts: Vec<VRep>,
    dim: usize,
    periods: RatVector,
    normals: Option<Vec<Vec<i64>>>,
    /// `supports[u][j] = h(P_j, normals[u])`.
    supports: Vec<RatVector>,
    boxes: Vec<(RatVector, RatVector)>,
    budget: u64,
}

impl MinkowskiFamily {
    pub fn new(parts: &[VRep]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::Domain("no Minkowski summands".into()))?;
        let dim = first.dim();
        if parts.iter().any(|p| p.dim() != dim) {
            return Err(Error::Dimension("parts live in different dimensions".into()));
        }
        if parts.iter().any(VRep::is_empty) {
            return Err(Error::Empty("Minkowski summand is empty".into()));
        }
        let periods = parts.iter().map(|p| Ok(denominators(p)?.1)).collect::<Result<RatVector>>()?;
        let generic = minkowski(parts, &vec![Rational::from_integer(1.into()); parts.len()])?;
        let (normals, supports) = if generic.is_full_dimensional() {
            let normals: Vec<Vec<i64>> = hull_facets(&generic)?.into_iter().map(|f| f.normal).collect();
            let supports = normals
                .iter()
                .map(|u| parts.iter().map(|p| support_int(p, u)).collect::<Result<RatVector>>())
                .collect::<Result<Vec<_>>>()?;
            (Some(normals), supports)
        } else {
            (None, Vec::new())
        };
        let boxes = parts.iter().map(VRep::bounding_box).collect::<Result<_>>()?;
        Ok(Self { parts: parts.to_vec(), dim, periods, normals, supports, boxes, budget: RECONSTRUCTION_MAX_POINTS })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn parts(&self) -> &[VRep] {
        &self.parts
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.normals.is_some()
    }

    /// Linear forms `r ↦ Σ_j r_j h(P_j, u)`, one per facet normal `u` of
    /// the generic sum, deduplicated and without the zero form.
    pub fn support_forms(&self) -> Vec<RatVector> {
        let mut forms: Vec<RatVector> =
            self.supports.iter().filter(|f| f.iter().any(|x| !x.is_zero())).cloned().collect();
        forms.sort();
        forms.dedup();
        forms
    }
}

impl CountOracle for MinkowskiFamily {
    fn arity(&self) -> usize {
        self.parts.len()
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn periods(&self) -> &[Rational] {
        &self.periods
    }

    fn count(&self, r: &[Rational]) -> Result<u64> {
        let Some(normals) = &self.normals else {
            return count_minkowski_with_budget(&self.parts, r, self.budget);
        };
        let rhs = self
            .supports
            .iter()
            .map(|s| to_i64(&floor(&s.iter().zip(r).map(|(h, w)| h * w).sum())))
            .collect::<Result<Vec<i64>>>()?;
        let mut lo = vec![Rational::zero(); self.dim];
        let mut hi = vec![Rational::zero(); self.dim];
        for ((plo, phi), w) in self.boxes.iter().zip(r) {
            for c in 0..self.dim {
                lo[c] += &plo[c] * w;
                hi[c] += &phi[c] * w;
            }
        }
        let lo = lo.iter().map(|x| to_i64(&ceil(x))).collect::<Result<Vec<_>>>()?;
        let hi = hi.iter().map(|x| to_i64(&floor(x))).collect::<Result<Vec<_>>>()?;
        count_box(normals, &rhs, &lo, &hi, self.budget)
    }
}

/// `Γ_I(P_1, …, P_k, r)` for all `|I|_1 <= n`.
pub fn coeffs_at(parts: &[VRep], r: &[Rational]) -> Result<CoeffVector> {
    coeffs_with(&MinkowskiFamily::new(parts)?, r)
}

/// Coefficient values of `oracle` at `r` from the counts on the shift grid
/// `r + U⊙d`, `U ∈ {0..n}^k`.
pub fn coeffs_with<O: CountOracle + ?Sized>(oracle: &O, r: &[Rational]) -> Result<CoeffVector> {
    let k = oracle.arity();
    let n = oracle.dim();
    if r.len() != k {
        return Err(Error::Dimension(format!("{} weights for {k} parts", r.len())));
    }
    if r.iter().any(Signed::is_negative) {
        return Err(Error::Domain("weights must be nonnegative".into()));
    }
    let d = oracle.periods();
    let side = n + 1;
    let grid: Vec<Vec<usize>> = (0..k).map(|_| 0..side).multi_cartesian_product().collect();
    let keys: Vec<RatVector> = grid
        .iter()
        .map(|u| {
            let x: RatVector = (0..k)
                .map(|j| &r[j] + &d[j] * Rational::from_integer(u[j].into()))
                .collect();
            oracle.canonical(&x)
        })
        .collect();
    let distinct: Vec<&RatVector> = keys.iter().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    let known: BTreeMap<&RatVector, u64> = distinct
        .par_iter()
        .map(|x| Ok((*x, oracle.count(x)?)))
        .collect::<Result<_>>()?;
    let counts: Vec<u64> = keys.iter().map(|x| known[x]).collect();
    // Solve on the integer nodes u = 0..n first: n!·V⁻¹ is integral, so the
    // tensor solve stays in BigInt and yields (n!)^k times the coefficients
    // of q(u) = p(r + d⊙u).
    let nfact = factorial(n as u32);
    let vander = RatMatrix::from_rows(
        (0..side)
            .map(|u| (0..side).map(|e| Rational::from_integer(BigInt::from(u).pow(e as u32))).collect())
            .collect(),
    )?;
    let inv = vander
        .inverse()?
        .ok_or_else(|| Error::Consistency("shift-grid Vandermonde matrix is singular".into()))?;
    let scaled: Vec<Vec<BigInt>> = (0..side)
        .map(|e| (0..side).map(|u| (&inv[(e, u)] * Rational::from_integer(nfact.clone())).to_integer()).collect())
        .collect();
    let mut t: Vec<BigInt> = counts.into_iter().map(BigInt::from).collect();
    for j in 0..k {
        let stride = side.pow((k - 1 - j) as u32);
        let block = stride * side;
        for start in 0..t.len() {
            if start % block >= stride {
                continue;
            }
            let fiber: Vec<BigInt> = (0..side).map(|u| t[start + u * stride].clone()).collect();
            for e in 0..side {
                t[start + e * stride] = (0..side).map(|u| &scaled[e][u] * &fiber[u]).sum();
            }
        }
    }

    // q and p have the same total degree, so the check can run on q.
    let mut low: Vec<(MultiIndex, BigInt)> = Vec::new();
    for (idx, c) in grid.iter().zip(t) {
        let e: MultiIndex = idx.iter().map(|&x| x as u32).collect();
        if e.iter().sum::<u32>() as usize > n {
            if !c.is_zero() {
                return Err(Error::Consistency(format!("coefficient of degree {e:?} above n is nonzero")));
            }
        } else {
            low.push((e, c));
        }
    }

    // p(x) = q((x - r)/d): w[j][e][f] is the coefficient of x_j^f in ((x_j - r_j)/d_j)^e.
    let w: Vec<Vec<Vec<Rational>>> = (0..k)
        .map(|j| {
            (0..side)
                .map(|e| {
                    let scale = pow(&d[j], e as u32).recip();
                    (0..side)
                        .map(|f| {
                            if f > e {
                                return Rational::zero();
                            }
                            let c = Rational::from_integer(binomial(e as u32, f as u32));
                            c * pow(&-&r[j], (e - f) as u32) * &scale
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let denom = Rational::from_integer(nfact.pow(k as u32));
    let mut values = BTreeMap::new();
    for (f, _) in &low {
        let mut acc = Rational::zero();
        for (e, c) in &low {
            if c.is_zero() || e.iter().zip(f).any(|(a, b)| a < b) {
                continue;
            }
            let mut term = Rational::from_integer(c.clone());
            for j in 0..k {
                term *= &w[j][e[j] as usize][f[j] as usize];
            }
            acc += term;
        }
        values.insert(f.clone(), acc / &denom);
    }
    Ok(CoeffVector { point: r.to_vec(), values })
}
