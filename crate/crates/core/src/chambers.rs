//! Chambers of right-hand-side space: sets of `b` on which the normal fan
//! of `P_A(b)` is constant.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cone::{Cone, ConeFacets};
use crate::error::{Error, Result};
use crate::polytope::{fan_from_vertices, matrix_is_bounded, vertices_of_bounded, FanSignature, HRep};
use crate::ratmath::{dot, dot_int, rank_of, RatMatrix, RatVector, Rational};

/// `K_σ = {b : A A_σ⁻¹ b_σ <= b}`: right-hand sides for which the basic
/// solution of `σ` is feasible.
#[derive(Clone, Debug)]
pub struct BasisCone {
    pub sigma: Vec<usize>,
    pub cone: Cone,
}

impl BasisCone {
    pub fn contains(&self, b: &[Rational]) -> bool {
        self.cone.contains(b)
    }
}

fn basis_rows(a: &[Vec<i64>], sigma: &[usize]) -> Result<Option<Vec<RatVector>>> {
    let m = a.len();
    let sub = RatMatrix::from_int_rows(&sigma.iter().map(|&i| a[i].clone()).collect::<Vec<_>>())?;
    let Some(inv) = sub.inverse()? else { return Ok(None) };
    let mut rows = Vec::with_capacity(m - sigma.len());
    for i in (0..m).filter(|i| !sigma.contains(i)) {
        // b_i - a_i A_σ⁻¹ b_σ >= 0
        let mut g = vec![Rational::zero(); m];
        g[i] = Rational::one();
        for (t, &s) in sigma.iter().enumerate() {
            let coef: Rational = a[i].iter().enumerate().map(|(j, &x)| inv[(j, t)].clone() * Rational::from_integer(x.into())).sum();
            g[s] -= coef;
        }
        rows.push(g);
    }
    Ok(Some(rows))
}

/// One cone per nonsingular `n`-subset of rows, in lexicographic order.
pub fn basis_cones(a: &[Vec<i64>]) -> Result<Vec<BasisCone>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(Error::Dimension("empty constraint matrix".into()));
    }
    let mut out = Vec::new();
    for sigma in (0..m).combinations(n) {
        if let Some(rows) = basis_rows(a, &sigma)? {
            out.push(BasisCone { sigma, cone: Cone::new(m, rows)? });
        }
    }
    if out.is_empty() {
        return Err(Error::Domain("no nonsingular basis: A has rank below n".into()));
    }
    Ok(out)
}

/// A combinatorial type of `P_A(b)` and the closure of its chamber.
#[derive(Clone, Debug)]
pub struct Chamber {
    pub signature: FanSignature,
    pub closure: Cone,
    /// Extreme rays of the closure modulo its lineality space.
    pub rays: Vec<RatVector>,
    /// Basis of the lineality space of the closure.
    pub lineality: Vec<RatVector>,
    /// Dimension of the closure.
    pub dimension: usize,
    /// A right-hand side realising the signature.
    pub witness: RatVector,
}

impl Chamber {
    pub fn ambient_dim(&self) -> usize {
        self.closure.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension == self.ambient_dim()
    }

    pub fn contains(&self, b: &[Rational]) -> bool {
        self.closure.contains(b)
    }

    /// Conic generators of the closure, ordered so that the first
    /// `dimension` of them are linearly independent.
    pub fn generators(&self) -> Vec<RatVector> {
        let neg: Vec<RatVector> = self.lineality.iter().map(|l| l.iter().map(|x| -x).collect()).collect();
        let all: Vec<RatVector> = self.rays.iter().chain(&self.lineality).chain(&neg).cloned().collect();
        let mut first: Vec<RatVector> = Vec::new();
        let mut rest: Vec<RatVector> = Vec::new();
        for g in all {
            let mut trial = first.clone();
            trial.push(g.clone());
            if rank_of(&trial) == trial.len() {
                first = trial;
            } else {
                rest.push(g);
            }
        }
        first.extend(rest);
        first
    }

    pub fn facets(&self) -> Result<ConeFacets> {
        self.closure.facets()
    }
}

/// Closure rows of the chamber with the given signature: for each active
/// set `S`, the basis cone of the first nonsingular `n`-subset `σ ⊆ S`,
/// plus `b_i = a_i A_σ⁻¹ b_σ` for the remaining rows of `S`.
fn closure_rows(a: &[Vec<i64>], signature: &FanSignature) -> Result<Vec<RatVector>> {
    let n = a[0].len();
    let mut rows = Vec::new();
    for active in signature {
        let active: Vec<usize> = active.iter().copied().collect();
        let mut found = false;
        for sigma in active.iter().copied().combinations(n) {
            let Some(k) = basis_rows(a, &sigma)? else { continue };
            let others: Vec<usize> = (0..a.len()).filter(|i| !sigma.contains(i)).collect();
            for (g, i) in k.into_iter().zip(others) {
                if active.contains(&i) {
                    rows.push(g.iter().map(|x| -x).collect());
                }
                rows.push(g);
            }
            found = true;
            break;
        }
        if !found {
            return Err(Error::Consistency(format!("vertex with active rows {active:?} has no basis")));
        }
    }
    Ok(rows)
}

pub fn signature_of(a: &[Vec<i64>], b: &[Rational]) -> Result<FanSignature> {
    let h = HRep::new(a.to_vec(), b.to_vec())?;
    if !h.is_bounded()? {
        return Err(Error::Unbounded("cone(A^T) is not all of R^n".into()));
    }
    signature_of_bounded(&h)
}

fn signature_of_bounded(h: &HRep) -> Result<FanSignature> {
    let v = vertices_of_bounded(h)?;
    if v.is_empty() {
        return Err(Error::Empty(format!("P_A(b) is empty for b = {:?}", h.b())));
    }
    Ok(fan_from_vertices(h, &v)?.signature())
}

fn chamber_from_signature(a: &[Vec<i64>], signature: FanSignature, witness: RatVector) -> Result<Chamber> {
    let m = a.len();
    let closure = Cone::new(m, closure_rows(a, &signature)?)?;
    let gens = closure.generators()?;
    let mut all = gens.rays.clone();
    all.extend(gens.lineality.iter().cloned());
    let dimension = rank_of(&all);
    Ok(Chamber { signature, closure, rays: gens.rays, lineality: gens.lineality, dimension, witness })
}

pub fn chamber_of(a: &[Vec<i64>], b: &[Rational]) -> Result<Chamber> {
    let signature = signature_of(a, b)?;
    chamber_from_signature(a, signature, b.to_vec())
}

pub fn same_chamber(a: &[Vec<i64>], b: &[Rational], b2: &[Rational]) -> Result<bool> {
    Ok(signature_of(a, b)? == signature_of(a, b2)?)
}

/// `Σ r_i h_i = Σ s_i h_i`.
pub fn equivalent(r: &[Rational], s: &[Rational], generators: &[RatVector]) -> Result<bool> {
    if r.len() != generators.len() || s.len() != generators.len() {
        return Err(Error::Dimension(format!(
            "{} and {} weights for {} generators",
            r.len(),
            s.len(),
            generators.len()
        )));
    }
    let dim = generators.first().map_or(0, Vec::len);
    let combine = |w: &[Rational]| -> RatVector {
        let mut acc = vec![Rational::zero(); dim];
        for (wi, g) in w.iter().zip(generators) {
            for (x, gj) in acc.iter_mut().zip(g) {
                *x += wi * gj;
            }
        }
        acc
    };
    Ok(combine(r) == combine(s))
}

/// A full-dimensional chamber whose closure contains `b`.
///
/// If `b` itself is generic its own chamber is returned. Otherwise `b` is
/// pushed towards a deterministic sequence of interior directions until a
/// full-dimensional signature is found whose closure contains `b`.
pub fn full_chamber_containing(a: &[Vec<i64>], b: &[Rational]) -> Result<Chamber> {
    let own = chamber_of(a, b)?;
    if own.is_full_dimensional() {
        return Ok(own);
    }
    let m = a.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for attempt in 0..200u32 {
        let dir: RatVector = (0..m).map(|_| Rational::from_integer(rng.gen_range(1i64..=97).into())).collect();
        let scale = Rational::new(1.into(), (1000i64 << (attempt / 20)).into());
        let trial: RatVector = b.iter().zip(&dir).map(|(x, d)| x + d * &scale).collect();
        let Ok(ch) = chamber_of(a, &trial) else { continue };
        if ch.is_full_dimensional() && ch.contains(b) {
            return Ok(ch);
        }
    }
    Err(Error::Consistency("no full-dimensional chamber found around b".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    /// Chambers found, sorted by signature.
    pub chambers: Vec<Chamber>,
    /// Pairs `(lower, full)` of indices into `chambers` with the
    /// lower-dimensional chamber inside the closure of the full one.
    pub containments: Vec<(usize, usize)>,
    /// Set when the sampling budget ran out before the sample plan finished.
    pub partial: bool,
}

impl PartialEq for Chamber {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature
    }
}

impl Eq for Chamber {}

pub const MAX_ENUMERATION_ROWS: usize = 8;
pub const MAX_ENUMERATION_BASES: usize = 500;

/// Discovers chambers by sampling `b` on the grid `{-1,0,1,2}^m`, on
/// random interior right-hand sides, and on tightened versions of every
/// nonempty sample, then reports closure containments.
pub fn chamber_containment_report(a: &[Vec<i64>], max_samples: usize, seed: u64) -> Result<ContainmentReport> {
    let m = a.len();
    if m > MAX_ENUMERATION_ROWS {
        return Err(Error::Domain(format!("chamber enumeration supports m <= {MAX_ENUMERATION_ROWS}")));
    }
    if !matrix_is_bounded(a)? {
        return Err(Error::Unbounded("cone(A^T) is not all of R^n".into()));
    }
    let bases = basis_cones(a)?;
    if bases.len() > MAX_ENUMERATION_BASES {
        return Err(Error::Domain(format!("{} basis cones exceed the limit {MAX_ENUMERATION_BASES}", bases.len())));
    }

    let mut found: BTreeMap<FanSignature, RatVector> = BTreeMap::new();
    let mut used = 0usize;
    let mut partial = false;
    let mut visit = |b: RatVector, found: &mut BTreeMap<FanSignature, RatVector>| -> Result<Option<RatVector>> {
        if used >= max_samples {
            partial = true;
            return Ok(None);
        }
        used += 1;
        let h = HRep::new(a.to_vec(), b)?;
        let v = vertices_of_bounded(&h)?;
        if v.is_empty() {
            return Ok(None);
        }
        let sig = fan_from_vertices(&h, &v)?.signature();
        found.entry(sig).or_insert_with(|| h.b().to_vec());
        // tightened right-hand side: every row moved onto its support value
        let tight: RatVector = a.iter().map(|row| v.vertices().iter().map(|x| dot_int(row, x)).max().expect("nonempty")).collect();
        Ok(Some(tight))
    };

    let mut queue: Vec<RatVector> = Vec::new();
    let grid = [-1i64, 0, 1, 2];
    for point in (0..m).map(|_| grid.iter()).multi_cartesian_product() {
        queue.push(point.into_iter().map(|&x| Rational::from_integer(x.into())).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        queue.push((0..m).map(|_| Rational::new(rng.gen_range(1i64..=12).into(), rng.gen_range(1i64..=4).into())).collect());
    }
    for b in queue {
        let Some(tight) = visit(b.clone(), &mut found)? else { continue };
        if tight != b {
            visit(tight.clone(), &mut found)?;
        }
        for i in 0..m {
            if tight[i] < b[i] {
                let mut single = b.clone();
                single[i] = tight[i].clone();
                visit(single, &mut found)?;
            }
        }
    }

    let chambers: Vec<Chamber> = found
        .into_iter()
        .map(|(sig, b)| chamber_from_signature(a, sig, b))
        .collect::<Result<_>>()?;
    let mut containments = Vec::new();
    for (i, low) in chambers.iter().enumerate() {
        if low.is_full_dimensional() {
            continue;
        }
        for (j, full) in chambers.iter().enumerate() {
            if full.is_full_dimensional() && full.closure.contains_cone(&low.closure)? {
                containments.push((i, j));
            }
        }
    }
    Ok(ContainmentReport { chambers, containments, partial })
}

/// `true` if `b` is nonnegative on every closure row and strictly positive on
/// every facet.
pub fn in_open_chamber(ch: &Chamber, b: &[Rational]) -> Result<bool> {
    let f = ch.facets()?;
    Ok(f.equalities.iter().all(|g| dot(g, b).is_zero()) && f.inequalities.iter().all(|g| dot(g, b).is_positive()))
}
