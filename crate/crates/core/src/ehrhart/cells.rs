//! Piecewise-polynomial reconstruction of multivariate rational Ehrhart
//! quasi-polynomials over a fundamental box of periods.
//!
//! The count at `r` only depends on the integers `⌊Σ_j r_j h(P_j, u)⌋` for
//! the facet normals `u` of the generic sum. Shifting `r` by `U⊙d` moves
//! each of these by an integer, because `d_j P_j` is integral. So the
//! coefficient values are polynomial on every open cell of the arrangement
//! `{Σ_j r_j h(P_j, u) ∈ Z}`, and the cells are found by slicing the box.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{coeffs_with, CoeffVector, CountOracle, MinkowskiFamily};
use crate::error::{Error, Result};
use crate::polytope::{affine_dim, enumerate_vertices, VRep};
use crate::poly::{multi_indices, MultiIndex, Poly};
use crate::ratmath::{ceil, dot, floor, RatVector, Rational};

/// Open half-space `coef·r < rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub coef: RatVector,
    pub rhs: Rational,
}

impl Wall {
    pub fn strictly_satisfied(&self, r: &[Rational]) -> bool {
        dot(&self.coef, r) < self.rhs
    }
}

/// An open cell of the arrangement inside the fundamental box, with one
/// polynomial per coefficient index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub walls: Vec<Wall>,
    pub vertices: Vec<RatVector>,
    pub coeffs: BTreeMap<MultiIndex, Poly>,
}

impl Cell {
    pub fn contains(&self, r: &[Rational]) -> bool {
        self.walls.iter().all(|w| w.strictly_satisfied(r))
    }

    pub fn centroid(&self) -> RatVector {
        centroid(&self.vertices)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiQuasiPoly {
    /// Ambient dimension `n` of the parts; the total degree.
    pub dim: usize,
    pub periods: RatVector,
    pub cells: Vec<Cell>,
    /// Parts used for exact evaluation on cell walls; empty when the
    /// quasi-polynomial was read back from JSON without them.
    pub parts: Vec<VRep>,
}

impl MultiQuasiPoly {
    pub fn arity(&self) -> usize {
        self.periods.len()
    }

    /// `r` reduced into the fundamental box `∏ [0, d_j)`.
    pub fn reduce(&self, r: &[Rational]) -> RatVector {
        r.iter()
            .zip(&self.periods)
            .map(|(x, d)| x - d * Rational::from_integer(floor(&(x / d))))
            .collect()
    }

    pub fn cell_of(&self, r: &[Rational]) -> Option<usize> {
        let red = self.reduce(r);
        self.cells.iter().position(|c| c.contains(&red))
    }

    /// Coefficient values at `r`; on cell walls they are computed directly
    /// from counts.
    pub fn coefficients(&self, r: &[Rational]) -> Result<CoeffVector> {
        if r.len() != self.arity() {
            return Err(Error::Dimension(format!("{} weights for arity {}", r.len(), self.arity())));
        }
        if r.iter().any(Signed::is_negative) {
            return Err(Error::Domain("weights must be nonnegative".into()));
        }
        let red = self.reduce(r);
        if let Some(cell) = self.cells.iter().find(|c| c.contains(&red)) {
            let values = cell.coeffs.iter().map(|(i, p)| (i.clone(), p.eval(&red))).collect();
            return Ok(CoeffVector { point: r.to_vec(), values });
        }
        if self.parts.is_empty() {
            return Err(Error::Domain("argument lies on a cell wall and no parts are attached".into()));
        }
        let mut c = coeffs_with(&MinkowskiFamily::new(&self.parts)?, r)?;
        c.point = r.to_vec();
        Ok(c)
    }

    /// `Σ_I Γ_I(r) r^I`.
    pub fn evaluate(&self, r: &[Rational]) -> Result<Rational> {
        Ok(self.coefficients(r)?.total())
    }
}

pub(crate) fn centroid(points: &[RatVector]) -> RatVector {
    let k = points[0].len();
    let n = Rational::from_integer(points.len().into());
    (0..k).map(|j| points.iter().map(|p| p[j].clone()).sum::<Rational>() / &n).collect()
}

/// Closed convex cell `{r : rows·r <= rhs}` with its vertices.
#[derive(Clone, Debug)]
struct Piece {
    rows: Vec<(RatVector, Rational)>,
    vertices: Vec<RatVector>,
}

impl Piece {
    fn build(rows: Vec<(RatVector, Rational)>, k: usize) -> Result<Option<Piece>> {
        let coefs: Vec<RatVector> = rows.iter().map(|r| r.0.clone()).collect();
        let rhs: Vec<Rational> = rows.iter().map(|r| r.1.clone()).collect();
        let vertices = enumerate_vertices(&coefs, &rhs, k)?;
        if affine_dim(&vertices) != Some(k) {
            return Ok(None);
        }
        // keep only rows that support a facet
        let rows = rows
            .into_iter()
            .filter(|(c, b)| {
                let tight: Vec<RatVector> = vertices.iter().filter(|v| dot(c, v) == *b).cloned().collect();
                affine_dim(&tight) == Some(k - 1)
            })
            .collect();
        Ok(Some(Piece { rows, vertices }))
    }
}

/// Slices the box `∏ [0, d_j]` by the hyperplanes `form·r = t·step`.
fn arrangement(periods: &[Rational], forms: &[RatVector], step: &Rational) -> Result<Vec<Piece>> {
    let k = periods.len();
    let mut rows = Vec::new();
    for j in 0..k {
        let mut e = vec![Rational::zero(); k];
        e[j] = Rational::one();
        rows.push((e.iter().map(|x| -x).collect(), Rational::zero()));
        rows.push((e, periods[j].clone()));
    }
    let mut pieces = vec![Piece::build(rows, k)?.expect("box is full-dimensional")];
    for form in forms {
        let mut next = Vec::new();
        for piece in pieces {
            let values: Vec<Rational> = piece.vertices.iter().map(|v| dot(form, v)).collect();
            let lo = values.iter().min().expect("vertices").clone();
            let hi = values.iter().max().expect("vertices").clone();
            let first = floor(&(&lo / step)) + num_bigint::BigInt::one();
            let last = ceil(&(&hi / step)) - num_bigint::BigInt::one();
            let mut cuts: Vec<Rational> = Vec::new();
            let mut t = first;
            while t <= last {
                cuts.push(Rational::from_integer(t.clone()) * step);
                t += num_bigint::BigInt::one();
            }
            if cuts.is_empty() {
                next.push(piece);
                continue;
            }
            let neg: RatVector = form.iter().map(|x| -x).collect();
            for i in 0..=cuts.len() {
                let mut rows = piece.rows.clone();
                if i > 0 {
                    rows.push((neg.clone(), -cuts[i - 1].clone()));
                }
                if i < cuts.len() {
                    rows.push((form.clone(), cuts[i].clone()));
                }
                if let Some(p) = Piece::build(rows, k)? {
                    next.push(p);
                }
            }
        }
        pieces = next;
    }
    Ok(pieces)
}

fn strictly_inside(rows: &[(RatVector, Rational)], x: &[Rational]) -> bool {
    rows.iter().all(|(c, b)| dot(c, x) < *b)
}

/// Fits every coefficient polynomial on one cell and checks it on held-out
/// interior points. `Ok(None)` means the held-out check failed.
fn fit_cell<O: CountOracle + ?Sized>(oracle: &O, piece: &Piece, seed: u64) -> Result<Option<Cell>> {
    let k = oracle.arity();
    let n = oracle.dim() as u32;
    let c = centroid(&piece.vertices);
    let mut eps = Rational::one();
    loop {
        let corners_inside = (0..k).all(|j| {
            let mut x = c.clone();
            x[j] += &eps;
            strictly_inside(&piece.rows, &x)
        });
        if corners_inside && strictly_inside(&piece.rows, &c) {
            break;
        }
        eps /= Rational::from_integer(2.into());
    }
    let step = &eps / Rational::from_integer(n.max(1).into());
    let samples: Vec<RatVector> = multi_indices(k, n)
        .iter()
        .map(|a| c.iter().zip(a).map(|(x, &ai)| x + &step * Rational::from_integer(ai.into())).collect())
        .collect();
    let values: Vec<CoeffVector> = samples.par_iter().map(|x| coeffs_with(oracle, x)).collect::<Result<_>>()?;

    let mut coeffs = BTreeMap::new();
    for i in multi_indices(k, n) {
        let vals: Vec<Rational> = values.iter().map(|v| v.get(&i)).collect();
        let p = Poly::interpolate(&samples, &vals, n)?;
        let budget = n - i.iter().sum::<u32>();
        let degree_ok = p.total_degree().map_or(true, |d| d <= budget)
            && (0..k).all(|j| p.degree_in(j).map_or(true, |d| d <= n - i[j]));
        if !degree_ok {
            return Ok(None);
        }
        coeffs.insert(i, p);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..3 {
        let weights: Vec<Rational> = piece.vertices.iter().map(|_| Rational::from_integer(rng.gen_range(1i64..=29).into())).collect();
        let total: Rational = weights.iter().sum();
        let x: RatVector = (0..k)
            .map(|j| piece.vertices.iter().zip(&weights).map(|(v, w)| &v[j] * w).sum::<Rational>() / &total)
            .collect();
        let truth = coeffs_with(oracle, &x)?;
        if coeffs.iter().any(|(i, p)| p.eval(&x) != truth.get(i)) {
            return Ok(None);
        }
    }

    let walls = piece.rows.iter().map(|(coef, rhs)| Wall { coef: coef.clone(), rhs: rhs.clone() }).collect();
    Ok(Some(Cell { walls, vertices: piece.vertices.clone(), coeffs }))
}

/// Reconstructs the quasi-polynomial of `oracle` on the fundamental box,
/// given the linear forms whose integer level sets bound the cells.
pub fn reconstruct_with<O: CountOracle + ?Sized>(oracle: &O, forms: &[RatVector]) -> Result<Vec<Cell>> {
    let periods = oracle.periods().to_vec();
    for step in [Rational::one(), Rational::new(1.into(), 2.into())] {
        let pieces = arrangement(&periods, forms, &step)?;
        let fitted: Vec<Option<Cell>> = pieces
            .iter()
            .enumerate()
            .map(|(i, p)| fit_cell(oracle, p, 0x9e37_79b9 ^ i as u64))
            .collect::<Result<_>>()?;
        if fitted.iter().all(Option::is_some) {
            return Ok(fitted.into_iter().flatten().collect());
        }
    }
    Err(Error::Consistency("held-out samples disagree with the fitted cell polynomials".into()))
}

/// The rational Ehrhart quasi-polynomial of `parts`.
pub fn reconstruct_minkowski(parts: &[VRep]) -> Result<MultiQuasiPoly> {
    let family = MinkowskiFamily::new(parts)?;
    if !family.is_full_dimensional() {
        return Err(Error::Domain("the generic Minkowski sum is not full-dimensional".into()));
    }
    let cells = reconstruct_with(&family, &family.support_forms())?;
    Ok(MultiQuasiPoly {
        dim: family.dim(),
        periods: family.periods().to_vec(),
        cells,
        parts: parts.to_vec(),
    })
}

pub fn reconstruct_univariate(p: &VRep) -> Result<MultiQuasiPoly> {
    if !p.is_full_dimensional() {
        return Err(Error::Domain("univariate reconstruction needs a full-dimensional polytope".into()));
    }
    reconstruct_minkowski(std::slice::from_ref(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{count, count_minkowski};
    use crate::ratmath::{frac_part, int, rat, rvec};
    use crate::testutil::{c2_hrep, c2_vrep, triangle_t};

    #[test]
    fn c2_univariate() {
        let qp = reconstruct_univariate(&c2_vrep()).unwrap();
        assert_eq!(qp.periods, vec![int(1)]);
        for r in [rat(1, 4), rat(1, 3), rat(3, 2), int(2), rat(7, 5)] {
            let c = qp.coefficients(&[r.clone()]).unwrap();
            let f = frac_part(&r);
            assert_eq!(c.get(&[2]), int(4));
            assert_eq!(c.get(&[1]), int(4) - int(8) * &f);
            let g0 = int(1) - int(2) * &f;
            assert_eq!(c.get(&[0]), &g0 * &g0);
            assert_eq!(c.total(), Rational::from_integer(count(&c2_hrep().scaled(&r)).unwrap().into()));
        }
    }

    #[test]
    fn triangle_univariate() {
        let qp = reconstruct_univariate(&triangle_t()).unwrap();
        for s in [rat(1, 2), rat(1, 5), rat(13, 7), int(3)] {
            let c = qp.coefficients(&[s.clone()]).unwrap();
            let f = frac_part(&s);
            assert_eq!(c.get(&[1]), int(2) - int(4) * &f);
            assert_eq!(c.get(&[0]), int(2) * &f * &f - int(2) * &f + int(1));
        }
        assert_eq!(qp.evaluate(&[rat(1, 2)]).unwrap(), int(1));
    }

    #[test]
    fn half_segment_has_period_two() {
        let seg = VRep::new(1, vec![rvec(&[0]), vec![rat(1, 2)]]).unwrap();
        let qp = reconstruct_univariate(&seg).unwrap();
        assert_eq!(qp.periods, vec![int(2)]);
        for (p, q) in [(1, 3), (5, 2), (7, 1), (11, 4)] {
            let r = rat(p, q);
            let c = qp.coefficients(&[r.clone()]).unwrap();
            assert_eq!(c.get(&[1]), rat(1, 2));
            assert_eq!(c.get(&[0]), int(1) - frac_part(&(&r / int(2))));
            let expected = floor(&(&r / int(2))) + 1;
            assert_eq!(c.total(), Rational::from_integer(expected));
        }
    }

    #[test]
    fn c2_and_t_match_brute_force() {
        let parts = [c2_vrep(), triangle_t()];
        let qp = reconstruct_minkowski(&parts).unwrap();
        assert!(qp.cells.len() > 1);
        for r in [rat(1, 4), rat(2, 3), int(1), rat(5, 6)] {
            for s in [rat(1, 4), rat(1, 3), int(0), rat(7, 4)] {
                let w = [r.clone(), s.clone()];
                let brute = count_minkowski(&parts, &w).unwrap();
                assert_eq!(qp.evaluate(&w).unwrap(), Rational::from_integer(brute.into()));
            }
        }
    }

    #[test]
    fn single_part_matches_univariate() {
        let a = reconstruct_minkowski(&[triangle_t()]).unwrap();
        let b = reconstruct_univariate(&triangle_t()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn lower_dimensional_parts_are_rejected() {
        let seg = VRep::new(2, vec![rvec(&[0, 0]), rvec(&[1, 0])]).unwrap();
        assert!(matches!(reconstruct_univariate(&seg), Err(Error::Domain(_))));
    }
}
