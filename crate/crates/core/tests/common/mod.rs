//! Reference oracles shared by the integration tests. Nothing here calls
//! into the library's counting, hull or chamber code.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(x: &Q) -> Q {
    x - x.floor()
}

/// Random rational `num/den` with `num` in `lo*den..hi*den` and `den` in `1..=max_den`.
pub fn rand_q(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Q {
    let d = rng.gen_range(1..=max_den);
    q(rng.gen_range(lo * d..hi * d), d)
}

/// Gaussian elimination; `None` when singular.
pub fn solve(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>) -> Option<Vec<Q>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for c in col..n {
                    let v = &f * &m[col][c];
                    m[r][c] -= v;
                }
                let v = &f * &rhs[col];
                rhs[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for last in (k - 1)..m {
        for mut c in combinations(last, k - 1) {
            c.push(last);
            out.push(c);
        }
    }
    out
}

fn row_dot(row: &[i64], x: &[Q]) -> Q {
    row.iter().zip(x).map(|(&a, v)| qi(a) * v).sum()
}

/// Vertices of `{x : A x <= b}` by solving every `n`-subset of rows.
pub fn vertices(a: &[Vec<i64>], b: &[Q]) -> Vec<Vec<Q>> {
    let n = a[0].len();
    let mut out: Vec<Vec<Q>> = Vec::new();
    for rows in combinations(a.len(), n) {
        let m = rows.iter().map(|&r| a[r].iter().map(|&x| qi(x)).collect()).collect();
        let rhs = rows.iter().map(|&r| b[r].clone()).collect();
        if let Some(x) = solve(m, rhs) {
            if a.iter().zip(b).all(|(row, bi)| &row_dot(row, &x) <= bi) && !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

fn for_each_point(lo: &[BigInt], hi: &[BigInt], mut f: impl FnMut(&[Q])) {
    let n = lo.len();
    if lo.iter().zip(hi).any(|(l, h)| l > h) {
        return;
    }
    let mut x: Vec<BigInt> = lo.to_vec();
    loop {
        let xq: Vec<Q> = x.iter().map(|v| Q::from_integer(v.clone())).collect();
        f(&xq);
        let mut j = 0;
        loop {
            if j == n {
                return;
            }
            if x[j] < hi[j] {
                x[j] += 1;
                break;
            }
            x[j] = lo[j].clone();
            j += 1;
        }
    }
}

fn bounding_box(points: &[Vec<Q>]) -> (Vec<BigInt>, Vec<BigInt>) {
    let n = points[0].len();
    let lo = (0..n).map(|j| points.iter().map(|p| p[j].ceil().to_integer()).min().unwrap()).collect();
    let hi = (0..n).map(|j| points.iter().map(|p| p[j].floor().to_integer()).max().unwrap()).collect();
    (lo, hi)
}

/// `#{x ∈ Z^n : A x <= b}` (or `<` when `strict`) for bounded `A`.
pub fn count(a: &[Vec<i64>], b: &[Q], strict: bool) -> u64 {
    let v = vertices(a, b);
    if v.is_empty() {
        return 0;
    }
    let (lo, hi) = bounding_box(&v);
    let mut total = 0;
    for_each_point(&lo, &hi, |x| {
        let ok = a.iter().zip(b).all(|(row, bi)| {
            let s = row_dot(row, x);
            if strict {
                &s < bi
            } else {
                &s <= bi
            }
        });
        total += ok as u64;
    });
    total
}

fn cross(o: &[Q], a: &[Q], b: &[Q]) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counter-clockwise convex hull of planar points (monotone chain).
pub fn hull_2d(mut pts: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<Q>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Q>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Lattice points of `Σ r_j P_j` for planar parts given by point lists.
pub fn count_minkowski_2d(parts: &[Vec<Vec<Q>>], r: &[Q]) -> u64 {
    let mut sums: Vec<Vec<Q>> = vec![vec![Q::zero(), Q::zero()]];
    for (p, w) in parts.iter().zip(r) {
        let mut next = Vec::new();
        for s in &sums {
            for v in p {
                next.push(vec![&s[0] + w * &v[0], &s[1] + w * &v[1]]);
            }
        }
        sums = hull_2d(next);
    }
    let h = hull_2d(sums.clone());
    let (lo, hi) = bounding_box(&sums);
    let mut total = 0;
    for_each_point(&lo, &hi, |x| {
        let inside = match h.len() {
            1 => h[0] == x,
            2 => cross(&h[0], &h[1], x).is_zero() && (0..2).all(|j| {
                let (a, b) = if h[0][j] <= h[1][j] { (&h[0][j], &h[1][j]) } else { (&h[1][j], &h[0][j]) };
                a <= &x[j] && &x[j] <= b
            }),
            k => (0..k).all(|i| !cross(&h[i], &h[(i + 1) % k], x).is_negative()),
        };
        total += inside as u64;
    });
    total
}

/// Γ_I of `r C_2 + s T` as closed forms in `{r+s}` and `{3r+s}`.
pub fn c2_t_closed_forms(r: &Q, s: &Q) -> Vec<(Vec<u32>, Q)> {
    let u = r + s;
    let v = r * qi(3) + s;
    let (a, b) = (frac(&u), frac(&v));
    let mut g00 = -q(1, 2) * (&b * &b + &a * &a) + qi(3) * &a * &b - &a - &b + qi(1);
    if ((u.floor() - v.floor()).to_integer() % BigInt::from(2)) != BigInt::zero() {
        g00 -= q(1, 2);
    }
    vec![
        (vec![2, 0], qi(4)),
        (vec![1, 1], qi(8)),
        (vec![0, 2], qi(2)),
        (vec![1, 0], qi(4) - qi(8) * &a),
        (vec![0, 1], qi(2) - qi(2) * &b - qi(2) * &a),
        (vec![0, 0], g00),
    ]
}

/// The four-row system `2x+y <= a, -2x+y <= b, y <= c, -y <= d`.
pub fn four_row_matrix() -> Vec<Vec<i64>> {
    vec![vec![2, 1], vec![-2, 1], vec![0, 1], vec![0, -1]]
}

/// Closed form of `Φ(A, (a,b,c,d))` on the closure of the quadrangle chamber.
pub fn quadrangle_formula(x: &[Q]) -> Q {
    let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
    let f = frac;
    let h = q(1, 2);
    let two = qi(2);
    let ca = f(&((c - a) / &two));
    let cb = f(&((c - b) / &two));
    let ad = f(&((a + d) / &two));
    let bd = f(&((b + d) / &two));
    let (fa, fb, fc, fd) = (f(a), f(b), f(c), f(d));
    &h * (d * d - c * c + b * c + a * c + b * d + a * d)
        + a * &h * (qi(1) - &fd - &fc)
        + b * &h * (qi(1) - &fd - &fc)
        + c * &h * (-&fb + &two * &fc - &fa)
        + d * &h * (qi(2) - &two * &fd - &fb - &fa)
        + (&ca * &ca + &cb * &cb - &ad * &ad - &bd * &bd + &ad * &fa + &bd * &fb + &ca * &fa + &cb * &fb
            - &ca * &fc
            - &cb * &fc
            + &bd * &fd
            + &ad * &fd
            - &cb
            - &ca
            - &fa
            - &fb
            + &fc
            - &fd
            + qi(1))
}

/// Closed form of `Φ(A, (a,b,c,d))` on the closure of the triangle chamber.
pub fn triangle_formula(x: &[Q]) -> Q {
    let (a, b, d) = (&x[0], &x[1], &x[3]);
    let f = frac;
    let four = qi(4);
    let two = qi(2);
    let amb = f(&((a - b) / &four));
    let bma = f(&((b - a) / &four));
    let ad = f(&((a + d) / &two));
    let bd = f(&((b + d) / &two));
    let (fa, fb, fd) = (f(a), f(b), f(d));
    let common = qi(2) - &fa - &fb - &two * &fd;
    q(1, 8) * (a * a + b * b + qi(4) * d * d + qi(2) * a * b + qi(4) * a * d + qi(4) * b * d)
        + a / &four * &common
        + b / &four * &common
        + d / &two * &common
        + (&two * &amb * &amb - &bd * &bd - &ad * &ad + &fa * &ad + &fb * &bd - &fa * &amb - &fb * &bma
            + &fd * &bd
            + &fd * &ad
            - &fd
            - &two * &amb
            + qi(1))
}

