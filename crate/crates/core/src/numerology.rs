//! Dimensions of the locally symmetric spaces for `G = Res O(2n+2)`, its
//! boundary, and the Levi `M = Res(GL_1 x O(2n))`, together with the bottom
//! and top cohomological degrees they determine.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DimReport {
    pub dim_sg: u64,
    pub dim_boundary: u64,
    pub dim_sm: u64,
    pub dim_scirc_m: u64,
    pub dim_up: u64,
    pub q0: u64,
    pub q_m: u64,
    pub q_b: u64,
    pub q_t: u64,
    pub frak_q_b: u64,
    pub frak_q_t: u64,
}

impl DimReport {
    /// The three additive identities relating the degrees to the dimensions.
    pub fn identities(&self) -> [(&'static str, bool); 3] {
        [
            ("q_b + q_t = dim S^M", self.q_b + self.q_t == self.dim_sm),
            (
                "frak_q_b + frak_q_t = dim boundary",
                self.frak_q_b + self.frak_q_t == self.dim_boundary,
            ),
            (
                "frak_q_b = q_b + dim U_P / 2",
                self.frak_q_b == self.q_b + self.dim_up / 2,
            ),
        ]
    }
}

pub fn dims(n: u64, r_f: u64) -> Result<DimReport> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddRank(n as usize));
    }
    if n < 2 || r_f < 1 {
        return Err(Error::OutOfRange {
            what: "n or r_F",
            value: n.min(r_f) as i64,
            range: "even n >= 2, r_F >= 1",
        });
    }
    let dim_sg = r_f * (n + 1) * (n + 1);
    let dim_scirc_m = r_f * n * n;
    let q_m = dim_scirc_m / 2;
    let q_b = q_m;
    let q_t = q_m + r_f - 1;
    let dim_up = 2 * n * r_f;
    Ok(DimReport {
        dim_sg,
        dim_boundary: dim_sg - 1,
        // S^A has dimension r_F - 1
        dim_sm: dim_scirc_m + r_f - 1,
        dim_scirc_m,
        dim_up,
        q0: n * n / 2,
        q_m,
        q_b,
        q_t,
        frak_q_b: r_f * (n * n / 2 + n),
        frak_q_t: r_f * (n * n / 2 + n + 1) - 1,
    })
}
