//! Polyhedral cones `{x : g·x >= 0}` and their generators, computed by the
//! double description method.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{dot, primitive_integral, rank_of, RatMatrix, RatVector, Rational};

/// `{x ∈ Q^dim : g·x >= 0 for every row g}`. Rows are stored primitive
/// integral, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    rows: Vec<RatVector>,
}

/// Extreme rays of the pointed part plus a basis of the lineality space,
/// all primitive integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGenerators {
    pub rays: Vec<RatVector>,
    pub lineality: Vec<RatVector>,
}

/// Irredundant description: a basis of the implicit equalities and one
/// inequality per facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFacets {
    pub equalities: Vec<RatVector>,
    pub inequalities: Vec<RatVector>,
}

pub(crate) fn primitive(v: &[Rational]) -> RatVector {
    primitive_integral(v).into_iter().map(Rational::from_integer).collect()
}

impl Cone {
    pub fn new(dim: usize, rows: Vec<RatVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::Dimension(format!("cone row of length {} in dimension {dim}", bad.len())));
        }
        let mut rows: Vec<RatVector> = rows
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .map(|r| primitive(r))
            .collect();
        rows.sort();
        rows.dedup();
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|g| !dot(g, x).is_negative())
    }

    /// Strictly positive on every row that is not an implicit equality.
    pub fn contains_relative_interior(&self, x: &[Rational]) -> Result<bool> {
        let f = self.facets()?;
        Ok(f.equalities.iter().all(|g| dot(g, x).is_zero()) && f.inequalities.iter().all(|g| dot(g, x).is_positive()))
    }

    pub fn generators(&self) -> Result<ConeGenerators> {
        double_description(self.dim, &self.rows)
    }

    pub fn dimension(&self) -> Result<usize> {
        let g = self.generators()?;
        let mut all = g.rays;
        all.extend(g.lineality);
        Ok(rank_of(&all))
    }

    /// `other ⊆ self`, decided on the generators of `other`.
    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        let g = other.generators()?;
        let neg: Vec<RatVector> = g.lineality.iter().map(|l| l.iter().map(|x| -x).collect()).collect();
        Ok(g.rays.iter().chain(&g.lineality).chain(&neg).all(|x| self.contains(x)))
    }

    pub fn facets(&self) -> Result<ConeFacets> {
        let gens = self.generators()?;
        let mut all = gens.rays.clone();
        all.extend(gens.lineality.iter().cloned());
        let dim = rank_of(&all);
        let mut equalities: Vec<RatVector> = Vec::new();
        let mut inequalities: Vec<RatVector> = Vec::new();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let eq_rows: Vec<&RatVector> = self
            .rows
            .iter()
            .filter(|g| gens.rays.iter().all(|r| dot(g, r).is_zero()))
            .collect();
        for g in &eq_rows {
            let mut trial = equalities.clone();
            trial.push((*g).clone());
            if rank_of(&trial) == trial.len() {
                equalities = trial;
            }
        }
        for g in &self.rows {
            if eq_rows.contains(&g) {
                continue;
            }
            let tight: BTreeSet<usize> = gens
                .rays
                .iter()
                .enumerate()
                .filter(|(_, r)| dot(g, r).is_zero())
                .map(|(i, _)| i)
                .collect();
            let mut face: Vec<RatVector> = tight.iter().map(|&i| gens.rays[i].clone()).collect();
            face.extend(gens.lineality.iter().cloned());
            if rank_of(&face) + 1 == dim && seen.insert(tight) {
                inequalities.push(g.clone());
            }
        }
        Ok(ConeFacets { equalities, inequalities })
    }
}

/// Double description on `{x : rows·x >= 0}`. The lineality space is split
/// off first; the pointed remainder is handled in coordinates of the row
/// space, where the cone is pointed.
pub fn double_description(dim: usize, rows: &[RatVector]) -> Result<ConeGenerators> {
    if rows.is_empty() {
        let lineality = (0..dim)
            .map(|i| (0..dim).map(|j| Rational::from_integer(BigInt::from(u8::from(i == j)))).collect())
            .collect();
        return Ok(ConeGenerators { rays: Vec::new(), lineality });
    }
    let g = RatMatrix::from_rows(rows.to_vec())?;
    let lineality: Vec<RatVector> = g.nullspace().iter().map(|v| primitive(v)).collect();
    let (reduced, pivots) = g.rref();
    let d = pivots.len();
    let basis: Vec<RatVector> = (0..d).map(|i| reduced.row(i).to_vec()).collect();
    // In coordinates y with x = Σ y_i basis_i, row g becomes (g·basis_i)_i.
    let projected: Vec<RatVector> = rows.iter().map(|r| basis.iter().map(|w| dot(r, w)).collect()).collect();

    let mut chosen: Vec<usize> = Vec::new();
    for (i, r) in projected.iter().enumerate() {
        let mut trial: Vec<RatVector> = chosen.iter().map(|&c| projected[c].clone()).collect();
        trial.push(r.clone());
        if rank_of(&trial) == trial.len() {
            chosen.push(i);
            if chosen.len() == d {
                break;
            }
        }
    }
    let m0 = RatMatrix::from_rows(chosen.iter().map(|&c| projected[c].clone()).collect())?;
    let inv = m0
        .inverse()?
        .ok_or_else(|| Error::Consistency("initial double-description basis is singular".into()))?;

    struct Ray {
        y: RatVector,
        tight: BTreeSet<usize>,
    }
    let mut rays: Vec<Ray> = (0..d)
        .map(|k| Ray {
            y: primitive(&inv.column(k)),
            tight: chosen.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &c)| c).collect(),
        })
        .collect();

    for (idx, row) in projected.iter().enumerate() {
        if chosen.contains(&idx) {
            continue;
        }
        let values: Vec<Rational> = rays.iter().map(|r| dot(row, &r.y)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common: BTreeSet<usize> = rays[p].tight.intersection(&rays[q].tight).copied().collect();
                if common.len() + 2 < d {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| !common.is_subset(&rays[r].tight));
                if !adjacent {
                    continue;
                }
                let y: RatVector = rays[q]
                    .y
                    .iter()
                    .zip(&rays[p].y)
                    .map(|(yq, yp)| &values[p] * yq - &values[q] * yp)
                    .collect();
                let mut tight = common;
                tight.insert(idx);
                next.push(Ray { y: primitive(&y), tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                r.tight.insert(idx);
                kept.push(r);
            } else if values[i].is_positive() {
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
    }

    let mut out: Vec<RatVector> = rays
        .iter()
        .map(|r| {
            let mut x = vec![Rational::zero(); dim];
            for (yi, w) in r.y.iter().zip(&basis) {
                for (xj, wj) in x.iter_mut().zip(w) {
                    *xj += yi * wj;
                }
            }
            primitive(&x)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(ConeGenerators { rays: out, lineality })
}
