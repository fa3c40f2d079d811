//! Golden checks on the bundled fixtures, run by the `verify` subcommand.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::chambers::{chamber_containment_report, chamber_of, signature_of};
use crate::ehrhart::{coeffs_at, derivative_check, mixed_volumes, reconstruct_minkowski, reconstruct_rhs};
use crate::error::{Error, Result};
use crate::io::{index_key, parse_hrep, parse_parts, parse_rationals, parse_vrep};
use crate::lattice::{count, count_interior, count_minkowski, reciprocity_check};
use crate::poly::{multi_indices, MultiIndex};
use crate::ratmath::{floor, format_rational, frac_part, int, parse_rational, rat, RatVector, Rational};

pub const C2_HREP: &str = include_str!("../fixtures/c2_hrep.json");
pub const C2_VREP: &str = include_str!("../fixtures/c2_vrep.json");
pub const TRIANGLE_T: &str = include_str!("../fixtures/triangle_t.json");
pub const C2_T_PARTS: &str = include_str!("../fixtures/c2_t_parts.json");
pub const QUADRANGLE: &str = include_str!("../fixtures/quadrangle.json");
pub const TRIANGLE_RHS: &str = include_str!("../fixtures/triangle_rhs.json");
pub const GOLDEN: &str = include_str!("../fixtures/golden.json");

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// The six coefficient formulas of the `C_2`, `T` example, written in
/// terms of `{r+s}` and `{3r+s}`.
pub fn example_coefficients(r: &Rational, s: &Rational) -> BTreeMap<MultiIndex, Rational> {
    let u = r + s;
    let v = r * int(3) + s;
    let (a, b) = (frac_part(&u), frac_part(&v));
    // {3r+s} - {r+s} - 2r = ⌊r+s⌋ - ⌊3r+s⌋
    let odd = (floor(&u) - floor(&v)) % 2 != num_bigint::BigInt::zero();
    let half = rat(1, 2);
    let mut g00 = -&half * (&b * &b + &a * &a) + int(3) * &a * &b - &a - &b + int(1);
    if odd {
        g00 -= &half;
    }
    BTreeMap::from([
        (vec![2, 0], int(4)),
        (vec![1, 1], int(8)),
        (vec![0, 2], int(2)),
        (vec![1, 0], int(-8) * &a + int(4)),
        (vec![0, 1], int(-2) * &b - int(2) * &a + int(2)),
        (vec![0, 0], g00),
    ])
}

fn golden() -> Result<Value> {
    serde_json::from_str(GOLDEN).map_err(|e| Error::Parse(e.to_string()))
}

fn golden_u64(g: &Value, key: &str) -> Result<u64> {
    g[key].as_u64().ok_or_else(|| Error::Parse(format!("golden value {key} missing")))
}

fn golden_map(g: &Value, key: &str) -> Result<BTreeMap<String, Rational>> {
    let obj = g[key].as_object().ok_or_else(|| Error::Parse(format!("golden map {key} missing")))?;
    obj.iter()
        .map(|(k, v)| {
            let s = v.as_str().ok_or_else(|| Error::Parse(format!("golden entry {k} is not a string")))?;
            Ok((k.clone(), parse_rational(s)?))
        })
        .collect()
}

fn golden_rows(g: &Value, key: &str) -> Result<Vec<RatVector>> {
    let rows: Vec<Vec<String>> = serde_json::from_value(g[key].clone()).map_err(|e| Error::Parse(e.to_string()))?;
    rows.iter().map(|r| parse_rationals(r)).collect()
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn record(&mut self, name: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = match outcome {
            Ok(v) => v,
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }

    fn equal<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, got: Result<T>, want: T) {
        self.record(
            name,
            got.map(|g| {
                let ok = g == want;
                (ok, if ok { format!("{g:?}") } else { format!("got {g:?}, expected {want:?}") })
            }),
        );
    }
}

/// Grid of 25 arguments in `[0, 1)^2` with denominators at most 8.
pub fn example_grid() -> Vec<(Rational, Rational)> {
    let axis = [rat(0, 1), rat(1, 8), rat(1, 3), rat(1, 2), rat(5, 7)];
    let mut out = Vec::new();
    for r in &axis {
        for s in &axis {
            out.push((r.clone(), s.clone()));
        }
    }
    out
}

pub fn run(seed: u64) -> Result<Report> {
    let g = golden()?;
    let c2 = parse_hrep(C2_HREP)?;
    let c2v = parse_vrep(C2_VREP)?;
    let t = parse_vrep(TRIANGLE_T)?;
    let parts = parse_parts(C2_T_PARTS)?;
    let quad_b = parse_hrep(QUADRANGLE)?;
    let tri = parse_hrep(TRIANGLE_RHS)?;
    let mut rec = Recorder { checks: Vec::new() };

    rec.equal("count C2", count(&c2), golden_u64(&g, "c2_count")?);
    rec.equal("interior count C2", count_interior(&c2), golden_u64(&g, "c2_interior")?);
    rec.equal("count P_A(2,7/2,1,1/2)", count(&quad_b), golden_u64(&g, "quadrangle_count")?);
    rec.equal("count C2+T", count_minkowski(&parts, &[int(1), int(1)]), golden_u64(&g, "c2_t_count_at_1_1")?);
    rec.equal(
        "count (C2+T)/2",
        count_minkowski(&parts, &[rat(1, 2), rat(1, 2)]),
        golden_u64(&g, "c2_t_count_at_half_half")?,
    );
    rec.equal(
        "coefficients of C2,T at (1/2,1/2)",
        coeffs_at(&parts, &[rat(1, 2), rat(1, 2)]).map(|c| c.values.iter().map(|(i, v)| (index_key(i), v.clone())).collect()),
        golden_map(&g, "c2_t_coeffs_at_half_half")?,
    );

    let qp = reconstruct_minkowski(&parts);
    let mut points = example_grid();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10 {
        points.push((rat(rng.gen_range(0..24), rng.gen_range(1..=8)), rat(rng.gen_range(0..24), rng.gen_range(1..=8))));
    }
    for i in multi_indices(2, 2) {
        let name = format!("C2,T coefficient {} against the closed form", index_key(&i));
        let outcome = qp.as_ref().map_err(Clone::clone).and_then(|qp| {
            for (r, s) in &points {
                let got = qp.coefficients(&[r.clone(), s.clone()])?.get(&i);
                let want = example_coefficients(r, s)[&i].clone();
                if got != want {
                    return Ok((false, format!("at ({r}, {s}): got {got}, expected {want}")));
                }
            }
            Ok((true, format!("{} points", points.len())))
        });
        rec.record(&name, outcome);
    }
    rec.record(
        "C2,T derivative ladder",
        qp.as_ref().map_err(Clone::clone).and_then(|qp| {
            let mut checked = 0;
            for cell in 0..qp.cells.len() {
                for i in multi_indices(2, 1) {
                    for j in 0..2 {
                        if !derivative_check(qp, cell, &i, j)? {
                            return Ok((false, format!("cell {cell}, I = {}, j = {j}", index_key(&i))));
                        }
                        checked += 1;
                    }
                }
            }
            Ok((true, format!("{checked} identities on {} cells", qp.cells.len())))
        }),
    );
    rec.equal(
        "mixed volumes of C2,T",
        mixed_volumes(&[c2v.clone(), t.clone()]).map(|m| m.iter().map(|(i, v)| (index_key(i), v.clone())).collect()),
        golden_map(&g, "c2_t_mixed_volumes")?,
    );
    rec.equal(
        "constant coefficient at r = 0",
        coeffs_at(&parts, &[int(0), int(0)]).map(|c| c.get(&[0, 0])),
        int(1),
    );

    let a = quad_b.a().to_vec();
    rec.equal(
        "quadrangle chamber facets",
        chamber_of(&a, quad_b.b()).and_then(|c| c.facets()).map(|f| f.inequalities),
        golden_rows(&g, "quadrangle_facets")?,
    );
    rec.equal(
        "triangle chamber facets",
        chamber_of(&a, tri.b()).and_then(|c| c.facets()).map(|f| f.inequalities),
        golden_rows(&g, "triangle_facets")?,
    );
    rec.record(
        "chamber containments",
        (|| {
            let report = chamber_containment_report(&a, 20_000, seed)?;
            let find = |b: &[i64]| -> Result<usize> {
                let sig = signature_of(&a, &b.iter().map(|&x| int(x)).collect::<Vec<_>>())?;
                report
                    .chambers
                    .iter()
                    .position(|c| c.signature == sig)
                    .ok_or_else(|| Error::Consistency("chamber not discovered".into()))
            };
            let (quad, tri, point, line) = (find(&[3, 3, 1, 1])?, find(&[1, 1, 2, 1])?, find(&[0, 0, 1, 0])?, find(&[2, 2, 0, 0])?);
            let ok = report.containments.contains(&(line, quad)) && report.containments.contains(&(point, tri));
            Ok((ok, format!("{} chambers, {} containments", report.chambers.len(), report.containments.len())))
        })(),
    );
    rec.equal(
        "right-hand-side quasi-polynomial at (2,7/2,1,1/2)",
        chamber_of(&a, quad_b.b()).and_then(|c| reconstruct_rhs(&a, &c)).and_then(|q| q.evaluate(quad_b.b())),
        int(5),
    );
    for (name, h) in [("C2", &c2), ("P_A(2,7/2,1,1/2)", &quad_b), ("P_A(1,1,2,1)", &tri)] {
        rec.record(
            &format!("reciprocity on {name}"),
            reciprocity_check(h).map(|r| {
                (r.holds(), format!("reflected {}, interior {}", format_rational(&r.reflected), r.interior))
            }),
        );
    }
    rec.record(
        "periodicity of C2,T coefficients",
        qp.as_ref().map_err(Clone::clone).and_then(|qp| {
            for (r, s) in points.iter().take(10) {
                let base = qp.coefficients(&[r.clone(), s.clone()])?;
                for shifted in [[r + int(1), s.clone()], [r.clone(), s + int(1)]] {
                    if qp.coefficients(&shifted)?.values != base.values {
                        return Ok((false, format!("at ({r}, {s})")));
                    }
                }
            }
            Ok((true, "20 shifts".to_string()))
        }),
    );

    let passed = rec.checks.iter().all(|c| c.passed);
    Ok(Report { passed, checks: rec.checks })
}
