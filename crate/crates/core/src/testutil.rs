use crate::polytope::{HRep, VRep};
use crate::ratmath::{int, rvec, RatVector, Rational};

pub fn c2_hrep() -> HRep {
    HRep::new(vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]], vec![int(1); 4]).unwrap()
}

pub fn c2_vrep() -> VRep {
    VRep::new(2, vec![rvec(&[1, 1]), rvec(&[-1, 1]), rvec(&[-1, -1]), rvec(&[1, -1])]).unwrap()
}

pub fn triangle_t() -> VRep {
    VRep::new(2, vec![rvec(&[0, 1]), rvec(&[1, -1]), rvec(&[-1, -1])]).unwrap()
}

/// `r C_2 + s T` as an H-representation.
pub fn c2_t_sum_hrep(r: &Rational, s: &Rational) -> HRep {
    let rs = r + s;
    let top = r * int(3) + s;
    HRep::new(
        vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1], vec![2, 1], vec![-2, 1]],
        vec![rs.clone(), rs.clone(), rs.clone(), rs, top.clone(), top],
    )
    .unwrap()
}

/// `2x + y <= a, -2x + y <= b, y <= c, -y <= d`.
pub fn four_rows(b: &[Rational]) -> HRep {
    let b: RatVector = b.to_vec();
    HRep::new(vec![vec![2, 1], vec![-2, 1], vec![0, 1], vec![0, -1]], b).unwrap()
}
