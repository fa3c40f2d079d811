//! Brute-force lattice-point counting.
//!
//! Every reconstruction in this crate is validated against these counts.
//! Enumeration walks the integer bounding box; the last coordinate is
//! handled as an interval, so the per-box cost is linear in the number of
//! candidate columns rather than candidate points.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::ehrhart::rhs::{reconstruct_rhs, RhsQuasiPoly};
use crate::error::{Error, Result};
use crate::feasibility::nonneg_solution;
use crate::polytope::{vertices, HRep, VRep};
use crate::ratmath::{ceil, floor, to_i64, RatVector, Rational};

/// Default cap on the number of candidate points in a bounding box.
pub const DEFAULT_MAX_POINTS: u64 = 1_000_000;

/// Cap used by the counts behind quasi-polynomial reconstruction, whose
/// period-shifted dilates have much larger boxes than the inputs.
pub const RECONSTRUCTION_MAX_POINTS: u64 = 1 << 36;

/// Integer points `x` with `lo <= x <= hi` and `a·x <= c`.
pub(crate) fn count_box(a: &[Vec<i64>], c: &[i64], lo: &[i64], hi: &[i64], budget: u64) -> Result<u64> {
    let n = lo.len();
    let mut candidates: u128 = 1;
    for j in 0..n {
        if hi[j] < lo[j] {
            return Ok(0);
        }
        candidates = candidates.saturating_mul((hi[j] - lo[j] + 1) as u128);
    }
    if candidates > budget as u128 {
        return Err(Error::Budget { needed: candidates, budget });
    }
    let rows: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rhs: Vec<i128> = c.iter().map(|&x| x as i128).collect();
    let partial = vec![0i128; rows.len()];
    if n > 1 && hi[0] - lo[0] >= 16 {
        let total = (lo[0]..=hi[0])
            .into_par_iter()
            .map(|x0| {
                let mut p = partial.clone();
                for (pi, row) in p.iter_mut().zip(&rows) {
                    *pi += row[0] * x0 as i128;
                }
                walk(&rows, &rhs, lo, hi, 1, &mut p)
            })
            .sum();
        return Ok(total);
    }
    let mut p = partial;
    Ok(walk(&rows, &rhs, lo, hi, 0, &mut p))
}

fn walk(rows: &[Vec<i128>], rhs: &[i128], lo: &[i64], hi: &[i64], depth: usize, partial: &mut [i128]) -> u64 {
    let n = lo.len();
    if depth == n - 1 {
        let mut lower = lo[depth] as i128;
        let mut upper = hi[depth] as i128;
        for (row, (p, c)) in rows.iter().zip(partial.iter().zip(rhs)) {
            let coef = row[depth];
            let rem = c - p;
            if coef > 0 {
                upper = upper.min(rem.div_euclid(coef));
            } else if coef < 0 {
                // coef·x <= rem  <=>  x >= rem / coef (rounded up)
                lower = lower.max(-(rem.div_euclid(-coef)));
            } else if rem < 0 {
                return 0;
            }
            if upper < lower {
                return 0;
            }
        }
        return (upper - lower + 1) as u64;
    }
    let mut total = 0;
    for x in lo[depth]..=hi[depth] {
        for (p, row) in partial.iter_mut().zip(rows) {
            *p += row[depth] * x as i128;
        }
        total += walk(rows, rhs, lo, hi, depth + 1, partial);
        for (p, row) in partial.iter_mut().zip(rows) {
            *p -= row[depth] * x as i128;
        }
    }
    total
}

fn integer_box(lo: &[Rational], hi: &[Rational]) -> Result<(Vec<i64>, Vec<i64>)> {
    let lo = lo.iter().map(|x| to_i64(&ceil(x))).collect::<Result<Vec<_>>>()?;
    let hi = hi.iter().map(|x| to_i64(&floor(x))).collect::<Result<Vec<_>>>()?;
    Ok((lo, hi))
}

pub fn count(h: &HRep) -> Result<u64> {
    count_with_budget(h, DEFAULT_MAX_POINTS)
}

/// `#(P_A(b) ∩ Z^n)`.
pub fn count_with_budget(h: &HRep, budget: u64) -> Result<u64> {
    let v = vertices(h)?;
    if v.is_empty() {
        return Ok(0);
    }
    let (lo, hi) = v.bounding_box()?;
    let (lo, hi) = integer_box(&lo, &hi)?;
    let c = h.b().iter().map(|x| to_i64(&floor(x))).collect::<Result<Vec<_>>>()?;
    count_box(h.a(), &c, &lo, &hi, budget)
}

pub fn count_interior(h: &HRep) -> Result<u64> {
    count_interior_with_budget(h, DEFAULT_MAX_POINTS)
}

/// Integer points with `A x < b` in every row, redundant rows included.
pub fn count_interior_with_budget(h: &HRep, budget: u64) -> Result<u64> {
    let v = vertices(h)?;
    if v.is_empty() {
        return Ok(0);
    }
    let (lo, hi) = v.bounding_box()?;
    let (lo, hi) = integer_box(&lo, &hi)?;
    let c = h
        .b()
        .iter()
        .map(|x| to_i64(&(ceil(x) - BigInt::one())))
        .collect::<Result<Vec<_>>>()?;
    count_box(h.a(), &c, &lo, &hi, budget)
}

pub fn count_minkowski(parts: &[VRep], weights: &[Rational]) -> Result<u64> {
    count_minkowski_with_budget(parts, weights, DEFAULT_MAX_POINTS)
}

/// Integer points of `Σ weights_i · parts_i`, each candidate decided by
/// exact feasibility of `z = Σ w_i x_i` with `x_i ∈ conv(parts_i)`.
pub fn count_minkowski_with_budget(parts: &[VRep], weights: &[Rational], budget: u64) -> Result<u64> {
    let dim = parts
        .first()
        .ok_or_else(|| Error::Domain("no Minkowski summands".into()))?
        .dim();
    if weights.len() != parts.len() {
        return Err(Error::Dimension(format!("{} weights for {} parts", weights.len(), parts.len())));
    }
    if parts.iter().any(|p| p.dim() != dim) {
        return Err(Error::Dimension("parts live in different dimensions".into()));
    }
    if weights.iter().any(Signed::is_negative) {
        return Err(Error::Domain("weights must be nonnegative".into()));
    }
    let active: Vec<(&VRep, &Rational)> = parts.iter().zip(weights).filter(|(_, w)| !w.is_zero()).collect();
    if active.iter().any(|(p, _)| p.is_empty()) {
        return Ok(0);
    }
    let mut lo = vec![Rational::zero(); dim];
    let mut hi = vec![Rational::zero(); dim];
    for (p, w) in &active {
        let (plo, phi) = p.bounding_box()?;
        for j in 0..dim {
            lo[j] += &plo[j] * *w;
            hi[j] += &phi[j] * *w;
        }
    }
    let (lo, hi) = integer_box(&lo, &hi)?;
    let mut candidates: u128 = 1;
    for j in 0..dim {
        if hi[j] < lo[j] {
            return Ok(0);
        }
        candidates = candidates.saturating_mul((hi[j] - lo[j] + 1) as u128);
    }
    if candidates > budget as u128 {
        return Err(Error::Budget { needed: candidates, budget });
    }

    // Variables: one convex multiplier per (part, vertex).
    let nvars: usize = active.iter().map(|(p, _)| p.vertices().len()).sum();
    let mut rows: Vec<RatVector> = Vec::with_capacity(dim + active.len());
    for c in 0..dim {
        let mut row = Vec::with_capacity(nvars);
        for (p, w) in &active {
            row.extend(p.vertices().iter().map(|v| &v[c] * *w));
        }
        rows.push(row);
    }
    let mut offset = 0;
    for (p, _) in &active {
        let mut row = vec![Rational::zero(); nvars];
        for x in &mut row[offset..offset + p.vertices().len()] {
            *x = Rational::one();
        }
        offset += p.vertices().len();
        rows.push(row);
    }

    let points: Vec<Vec<i64>> = box_points(&lo, &hi);
    let hits = points
        .par_iter()
        .map(|z| -> Result<u64> {
            let mut rhs: RatVector = z.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
            rhs.extend(std::iter::repeat(Rational::one()).take(active.len()));
            Ok(u64::from(nonneg_solution(&rows, &rhs)?.is_some()))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(hits.into_iter().sum())
}

fn box_points(lo: &[i64], hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for j in 0..lo.len() {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo[j]..=hi[j]).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Both sides of the reciprocity law for one right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    /// The chamber quasi-polynomial of `b` evaluated formally at `-b`.
    pub reflected: Rational,
    /// `#(inter(P_A(b)) ∩ Z^n)`.
    pub interior: u64,
    /// `(-1)^n`.
    pub sign: i64,
    /// Literal count of `P_A(-b)`, reported for reference.
    pub literal_reflected_count: u64,
    pub full_dimensional: bool,
}

impl ReciprocityReport {
    /// `reflected = (-1)^n · interior`; only meaningful for full-dimensional
    /// `P_A(b)`.
    pub fn holds(&self) -> bool {
        self.reflected == Rational::from_integer(BigInt::from(self.sign) * BigInt::from(self.interior))
    }
}

/// Evaluates `Φ(A, -b)` through the quasi-polynomial of a full-dimensional
/// chamber whose closure holds `b`, against the interior count of `P_A(b)`.
pub fn reciprocity_check(h: &HRep) -> Result<ReciprocityReport> {
    let v = vertices(h)?;
    if v.is_empty() {
        return Err(Error::Empty("reciprocity needs a nonempty polytope".into()));
    }
    let full_dimensional = v.is_full_dimensional();
    let chamber = crate::chambers::full_chamber_containing(h.a(), h.b())?;
    let qp: RhsQuasiPoly = reconstruct_rhs(h.a(), &chamber)?;
    let minus_b: RatVector = h.b().iter().map(|x| -x).collect();
    let reflected = qp.evaluate_extended(&minus_b)?;
    let interior = count_interior(h)?;
    let literal_reflected_count = count(&h.with_rhs(minus_b)?)?;
    let sign = if h.dim() % 2 == 0 { 1 } else { -1 };
    Ok(ReciprocityReport { reflected, interior, sign, literal_reflected_count, full_dimensional })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::minkowski;
    use crate::ratmath::{int, rat};
    use crate::testutil::{c2_hrep, c2_t_sum_hrep, c2_vrep, four_rows, triangle_t};

    #[test]
    fn count_examples() {
        assert_eq!(count(&c2_hrep()).unwrap(), 9);
        let quad_b = four_rows(&[int(2), rat(7, 2), int(1), rat(1, 2)]);
        assert_eq!(count(&quad_b).unwrap(), 5);
        assert_eq!(count(&c2_t_sum_hrep(&int(1), &int(1))).unwrap(), 21);
        let empty = HRep::new(vec![vec![1], vec![-1]], vec![int(0), int(-1)]).unwrap();
        assert_eq!(count(&empty).unwrap(), 0);
        assert_eq!(count_interior(&empty).unwrap(), 0);
    }

    #[test]
    fn interior_examples() {
        assert_eq!(count_interior(&c2_hrep()).unwrap(), 1);
        // the segment 0 <= x <= 2, y = 0
        let seg = HRep::new(
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![int(2), int(0), int(0), int(0)],
        )
        .unwrap();
        assert_eq!(count(&seg).unwrap(), 3);
        assert_eq!(count_interior(&seg).unwrap(), 0);
        assert_eq!(count_interior(&c2_hrep().scaled(&int(2))).unwrap(), 9);
    }

    #[test]
    fn unbounded_and_budget() {
        let open = HRep::new(vec![vec![1, 0], vec![0, 1]], vec![int(1), int(1)]).unwrap();
        assert!(matches!(count(&open), Err(Error::Unbounded(_))));
        let big = c2_hrep().scaled(&int(100));
        assert!(matches!(count_with_budget(&big, 1000), Err(Error::Budget { .. })));
        assert_eq!(count(&big).unwrap(), 201 * 201);
    }

    #[test]
    fn minkowski_examples() {
        let parts = [c2_vrep(), triangle_t()];
        assert_eq!(count_minkowski(&parts, &[rat(1, 2), rat(1, 2)]).unwrap(), 7);
        assert_eq!(count_minkowski(&parts, &[int(0), int(0)]).unwrap(), 1);
        assert_eq!(count_minkowski(&parts, &[int(1), int(0)]).unwrap(), 9);
        assert_eq!(count_minkowski(&parts, &[int(1), int(1)]).unwrap(), 21);
    }

    #[test]
    fn reciprocity_on_c2() {
        let report = reciprocity_check(&c2_hrep()).unwrap();
        assert_eq!(report.literal_reflected_count, 0);
        assert_eq!(report.interior, 1);
        assert_eq!(report.reflected, int(1));
        assert!(report.holds());
    }

    #[test]
    fn reciprocity_at_the_origin_reports_both_sides() {
        let h = c2_hrep().with_rhs(vec![int(0); 4]).unwrap();
        let report = reciprocity_check(&h).unwrap();
        assert!(!report.full_dimensional);
        assert_eq!(report.interior, 0);
        assert_eq!(count(&h).unwrap(), 1);
    }

    #[test]
    fn reciprocity_in_the_quadrangle_chamber() {
        for b in [[3, 2, 2, 1], [5, 4, 3, 2], [4, 4, 1, 3]] {
            let h = four_rows(&b.map(int));
            let report = reciprocity_check(&h).unwrap();
            assert!(report.full_dimensional);
            assert!(report.holds(), "{b:?}: {report:?}");
        }
    }

    #[test]
    fn reciprocity_needs_the_sign_in_odd_dimension() {
        let h = HRep::new(vec![vec![1], vec![-1]], vec![rat(5, 2), rat(1, 3)]).unwrap();
        let report = reciprocity_check(&h).unwrap();
        // interior points of [-1/3, 5/2]: 0, 1, 2
        assert_eq!(report.interior, 3);
        assert_eq!(report.reflected, int(-3));
        assert!(report.holds());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn four_row_rhs() -> impl Strategy<Value = RatVector> {
            prop::collection::vec((-4i64..=8, 1i64..=4), 4)
                .prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn scaling_invariance(b in four_row_rhs(), t in 1i64..=4) {
                let h = four_rows(&b);
                let scaled_a: Vec<Vec<i64>> = h.a().iter().map(|r| r.iter().map(|x| x * t).collect()).collect();
                let scaled = HRep::new(scaled_a, b.iter().map(|x| x * int(t)).collect()).unwrap();
                prop_assert_eq!(count(&h).unwrap(), count(&scaled).unwrap());
            }

            #[test]
            fn monotone_in_b(b in four_row_rhs(), bump in prop::collection::vec((0i64..=3, 1i64..=3), 4)) {
                let h = four_rows(&b);
                let b2: RatVector = b.iter().zip(&bump).map(|(x, &(p, q))| x + rat(p, q)).collect();
                prop_assert!(count(&h).unwrap() <= count(&four_rows(&b2)).unwrap());
            }

            #[test]
            fn interior_at_most_count(b in four_row_rhs()) {
                let h = four_rows(&b);
                prop_assert!(count_interior(&h).unwrap() <= count(&h).unwrap());
            }

            #[test]
            fn redundant_rows_do_not_change_interior(b in four_row_rhs(), slack in (1i64..=5, 1i64..=3)) {
                // add y <= c + slack, a redundant copy of row 3
                let h = four_rows(&b);
                let v = vertices(&h).unwrap();
                prop_assume!(v.is_full_dimensional());
                let mut a = h.a().to_vec();
                a.push(vec![0, 1]);
                let mut bb = h.b().to_vec();
                bb.push(&b[2] + rat(slack.0, slack.1));
                let padded = HRep::new(a, bb).unwrap();
                prop_assert_eq!(count_interior(&h).unwrap(), count_interior(&padded).unwrap());
            }

            #[test]
            fn single_weight_minkowski_matches_hrep(r in (0i64..=7, 1i64..=3)) {
                let r = rat(r.0, r.1);
                let lhs = count_minkowski(&[c2_vrep(), triangle_t()], &[r.clone(), int(0)]).unwrap();
                prop_assert_eq!(lhs, count(&c2_hrep().scaled(&r)).unwrap());
            }

            #[test]
            fn minkowski_additivity(b in prop::collection::vec(1i64..=6, 4), c in prop::collection::vec(1i64..=6, 4)) {
                // both right-hand sides in the closed quadrangle chamber
                let fix = |v: &[i64]| -> RatVector {
                    let (a, bb, cc, d) = (v[0], v[1], v[2], v[3]);
                    let a = a.max(2 * cc - bb);
                    vec![int(a), int(bb), int(cc), int(d)]
                };
                let (b, c) = (fix(&b), fix(&c));
                let sum: RatVector = b.iter().zip(&c).map(|(x, y)| x + y).collect();
                let pb = vertices(&four_rows(&b)).unwrap();
                let pc = vertices(&four_rows(&c)).unwrap();
                let pbc = vertices(&four_rows(&sum)).unwrap();
                prop_assert_eq!(&pbc, &minkowski(&[pb, pc], &[int(1), int(1)]).unwrap());
            }
        }
    }
}
