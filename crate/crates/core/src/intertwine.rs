//! The standard intertwining operator at an archimedean place, evaluated on
//! the normalised highest weight vector of the lowest K-type at `s = -n`.
//!
//! The operator attached to `w_P` factors along the reduced word of `w_P` into
//! `2n` rank-one operators, one for each root `beta_j` of the unipotent
//! radical. On the lowest K-type the `j`-th one acts by
//!
//! ```text
//! sqrt(pi) Gamma((s + <beta_j, kappa> + eps_j) / 2) / Gamma((s + <beta_j, kappa> + eps_j + 1) / 2)
//! ```
//!
//! times the phase `(-i)^{eps_j}`. Their product `Phi(s)` is finite at
//! `s = -n` and equals a rational multiple of `pi^n`.

use serde::Serialize;

use crate::critical::{ratio_l_factor, CharData, CoeffWeight};
use crate::error::{Error, Result};
use crate::exactnum::{
    gamma_at, int, product_eval, rat, Factor, HalfInt, PiValue, ProductValue, Rational,
};
use crate::weyl::{
    chain_violation, factor_w_p, simple_roots, MultiWeight, RootD, SignedPerm, WeightVec,
};

/// `ell_j = 2(mu_j + n - j)` for `j < n` and `ell_n = 2|mu_n|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DsParam {
    pub ells: Vec<i64>,
}

fn check_levi_weight(mu_v: &WeightVec, n: usize) -> Result<()> {
    if mu_v.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: mu_v.len(),
        });
    }
    if let Some(violated) = chain_violation(&mu_v.0, 1) {
        return Err(Error::NotDominant {
            weight: mu_v.to_string(),
            violated,
        });
    }
    Ok(())
}

pub fn ds_param(mu_v: &WeightVec, n: usize) -> Result<DsParam> {
    check_levi_weight(mu_v, n)?;
    if mu_v.0[n - 1] == 0 {
        return Err(Error::ZeroMuMin);
    }
    let ells = (1..=n)
        .map(|j| {
            let m = mu_v.0[j - 1];
            if j < n {
                2 * (m + (n - j) as i64)
            } else {
                2 * m.abs()
            }
        })
        .collect();
    Ok(DsParam { ells })
}

/// `2 (2 pi)^{-(s + ell/2)} Gamma(s + ell/2)`, for integer `s`.
pub fn l_factor_i(s: i64, ell: i64) -> Result<ProductValue> {
    if ell <= 0 || ell % 2 != 0 {
        return Err(Error::OutOfRange {
            what: "ell",
            value: ell,
            range: "positive even integers",
        });
    }
    let a = s + ell / 2;
    product_eval(
        &[
            PiValue::rational(int(2)).into(),
            PiValue::two_pi_pow(-a).into(),
            gamma_at(HalfInt::from_int(a)).into(),
        ],
        &[],
    )
}

/// Harish-Chandra parameter, the two half-sums and the Blattner parameter, all
/// in the `e^K` coordinates of the compact torus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Blattner {
    pub hc_param: Vec<i64>,
    pub rho: Vec<i64>,
    pub rho_compact: Vec<i64>,
    pub blattner: Vec<i64>,
}

/// `Lambda + rho - 2 rho_K` for a regular `Lambda`, where both half-sums are
/// taken over the roots positive on `Lambda` and the compact roots are
/// `+-e_i +- e_j` with `i = j mod 2`.
pub fn blattner_from_hc(hc: &[i64]) -> Result<Blattner> {
    let n = hc.len();
    for i in 0..n {
        for j in i + 1..n {
            if hc[i] == hc[j] || hc[i] == -hc[j] {
                return Err(Error::NotRegular(format!("{hc:?}")));
            }
        }
    }
    let mut sum = vec![0i64; n];
    let mut sum_compact = vec![0i64; n];
    for i in 0..n {
        for j in i + 1..n {
            for (ci, cj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                if ci * hc[i] + cj * hc[j] > 0 {
                    sum[i] += ci;
                    sum[j] += cj;
                    if i % 2 == j % 2 {
                        sum_compact[i] += ci;
                        sum_compact[j] += cj;
                    }
                }
            }
        }
    }
    // each pair {i, j} contributes two positive roots whose sum is even
    let rho: Vec<i64> = sum.iter().map(|x| x / 2).collect();
    let rho_compact: Vec<i64> = sum_compact.iter().map(|x| x / 2).collect();
    let blattner = (0..n)
        .map(|k| hc[k] + rho[k] - 2 * rho_compact[k])
        .collect();
    Ok(Blattner {
        hc_param: hc.to_vec(),
        rho,
        rho_compact,
        blattner,
    })
}

/// Blattner parameter of `D_mu`, with `Lambda_j = mu_j + n - j`.
pub fn blattner(mu_v: &WeightVec, n: usize) -> Result<Blattner> {
    check_levi_weight(mu_v, n)?;
    let hc: Vec<i64> = (1..=n).map(|j| mu_v.0[j - 1] + (n - j) as i64).collect();
    blattner_from_hc(&hc)
}

/// The `j`-th rank-one factor of the operator attached to `w_P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankOneStep {
    /// 1-based position, counted from the right of the reduced word.
    pub j: usize,
    pub simple_index: usize,
    pub beta: RootD,
    /// `<beta_j, kappa>` without the `s` part.
    pub exponent: i64,
    pub parity: u8,
}

/// `beta_j = s_1 ... s_{j-1} (alpha_{i_j})` for the reduced word
/// `w_P = s_{2n} ... s_1`.
pub fn unipotent_betas(n: usize) -> Result<Vec<(usize, RootD)>> {
    let word = factor_w_p(n)?;
    let m = n + 1;
    let simple = simple_roots(m)?;
    let len = word.len();
    let mut prefix = SignedPerm::identity(m);
    let mut out = Vec::with_capacity(len);
    for j in 1..=len {
        let k = word[len - j];
        out.push((k, prefix.apply_root(simple[k])));
        prefix = prefix.compose(&SignedPerm::simple_reflection(m, k)?);
    }
    Ok(out)
}

/// `e_0 - e_1, ..., e_0 - e_n, e_0 + e_n, ..., e_0 + e_1`.
pub fn expected_betas(n: usize) -> Vec<RootD> {
    (1..=n)
        .map(|k| RootD::minus(0, k))
        .chain((1..=n).rev().map(|k| RootD::plus(0, k)))
        .collect()
}

/// Closed forms of `<beta_j, kappa>` on either side of the middle.
pub fn branch_exponent(j: usize, mu_v: &WeightVec, d: i64, n: usize) -> i64 {
    let (j, n_i) = (j as i64, n as i64);
    if j <= n_i {
        -d - (mu_v.0[(j - 1) as usize] + n_i - j)
    } else {
        -d + (mu_v.0[(2 * n_i - j) as usize] - n_i - 1 + j)
    }
}

pub fn rank_one_steps(mu_v: &WeightVec, eps0: u8, d: i64, n: usize) -> Result<Vec<RankOneStep>> {
    check_levi_weight(mu_v, n)?;
    if eps0 > 1 {
        return Err(Error::Parse(format!("parity {eps0} is not 0 or 1")));
    }
    let betas = unipotent_betas(n)?;
    let expected = expected_betas(n);
    if betas.iter().map(|b| b.1).ne(expected.iter().copied()) {
        return Err(Error::Inconsistent(format!(
            "beta enumeration {betas:?} differs from {expected:?}"
        )));
    }
    // exponents of the inducing character chi[s] x chi_1 x ... x chi_n, s dropped
    let kappa = WeightVec::with_gl1(
        -d,
        &WeightVec((1..=n).map(|j| mu_v.0[j - 1] + (n - j) as i64).collect()),
    );
    let low_parity: Vec<u8> = mu_v
        .0
        .iter()
        .map(|m| (i64::from(eps0) + m).rem_euclid(2) as u8)
        .collect();
    betas
        .into_iter()
        .enumerate()
        .map(|(idx, (k, beta))| {
            let j = idx + 1;
            let exponent = beta.pair(&kappa);
            let closed = branch_exponent(j, mu_v, d, n);
            if exponent != closed {
                return Err(Error::Inconsistent(format!(
                    "exponent of beta_{j} = {beta}: pairing gives {exponent}, branch formula {closed}"
                )));
            }
            let parity = if j <= n {
                low_parity[j - 1]
            } else {
                low_parity[2 * n - j]
            };
            Ok(RankOneStep {
                j,
                simple_index: k,
                beta,
                exponent,
                parity,
            })
        })
        .collect()
}

/// A power of `-i`, reduced mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Phase(u8);

impl Phase {
    pub fn minus_i_pow(k: i64) -> Self {
        Phase(k.rem_euclid(4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    /// `+1` or `-1` when the phase is real.
    pub fn as_sign(self) -> Option<i64> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// `(-i)^phase` times the leading datum of a meromorphic function of `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Value {
    pub phase: Phase,
    pub magnitude: ProductValue,
}

/// Gamma at `twice / 2`, as a factor in a variable `t` with `z = t / 2 + c`.
fn gamma_half(twice: i64, slope: &Rational) -> Result<Factor> {
    Ok(gamma_at(HalfInt::from_twice(twice))
        .in_variable_with_slope(slope)?
        .into())
}

fn check_parity(m: i64, eps: u8) -> Result<()> {
    if eps > 1 || (m - i64::from(eps)).rem_euclid(2) != 0 {
        return Err(Error::ParityMismatch { m, eps });
    }
    Ok(())
}

/// The SL(2) scalar on the weight-`m` vector, as a function of integer `z`:
/// `(-i)^m Gamma(1/2) Gamma(z/2) Gamma((z+1)/2) / (Gamma((z+1+m)/2) Gamma((z+1-m)/2))`.
pub fn sl2_scalar(z: i64, eps: u8, m: i64) -> Result<Sl2Value> {
    check_parity(m, eps)?;
    let half = rat(1, 2);
    let magnitude = product_eval(
        &[
            PiValue::pi_power(1).into(),
            gamma_half(z, &half)?,
            gamma_half(z + 1, &half)?,
        ],
        &[gamma_half(z + 1 + m, &half)?, gamma_half(z + 1 - m, &half)?],
    )?;
    Ok(Sl2Value {
        phase: Phase::minus_i_pow(m),
        magnitude,
    })
}

/// `M(z)_k` at integer `z`, as a leading datum in `z`.
pub fn m_factor(z: i64, eps: u8, k: i64) -> Result<ProductValue> {
    let e = i64::from(eps);
    let linear = |value: i64| Factor::Linear {
        value: int(value),
        slope: int(1),
    };
    let (nums, dens): (Vec<Factor>, Vec<Factor>) = if k >= 0 {
        (1..=k)
            .map(|l| (linear(z - e - (2 * l - 1)), linear(z + e + (2 * l - 1))))
            .unzip()
    } else {
        (1..=-k)
            .map(|l| (linear(z + e - (2 * l - 1)), linear(z - e + (2 * l - 1))))
            .unzip()
    };
    product_eval(&nums, &dens)
}

/// The same scalar through the lowest-weight formula and `M(z)_k`, with
/// `m = 2k + eps`.
pub fn sl2_scalar_factored(z: i64, eps: u8, k: i64) -> Result<Sl2Value> {
    check_parity(2 * k + i64::from(eps), eps)?;
    let half = rat(1, 2);
    let e = i64::from(eps);
    let base = product_eval(
        &[PiValue::pi_power(1).into(), gamma_half(z + e, &half)?],
        &[gamma_half(z + e + 1, &half)?],
    )?;
    Ok(Sl2Value {
        phase: Phase::minus_i_pow(2 * k + e),
        magnitude: &base * &m_factor(z, eps, k)?,
    })
}

/// Everything computed at one archimedean place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiAndC {
    pub steps: Vec<RankOneStep>,
    /// `-n + <beta_j, kappa> + eps_j` for each step.
    pub gamma_points: Vec<i64>,
    pub phi: ProductValue,
    pub numerator_poles: usize,
    pub denominator_poles: usize,
    /// Number of even `gamma_points` among `j <= n` and among `j > n`.
    pub parity_counts: (usize, usize),
    pub phase: Phase,
    pub c: PiValue,
    /// `L(-n, chi_v x sigma_v) / L(1 - n, chi_v x sigma_v)`.
    pub l_ratio: PiValue,
    pub c_over_l_ratio: PiValue,
}

impl PhiAndC {
    /// Every property the computation is expected to satisfy at a point to
    /// the right of the unitary axis.
    pub fn checks(&self, n: usize) -> Vec<(&'static str, bool)> {
        let r = n / 2;
        let n2 = 2 * n as i64;
        vec![
            ("phi_finite", self.phi.net_order() == 0),
            (
                "pole_counts_r_r",
                self.numerator_poles == r && self.denominator_poles == r,
            ),
            ("parity_counts_r_r", self.parity_counts == (r, r)),
            ("phase_real", self.phase.as_sign().is_some()),
            (
                "c_is_rational_times_pi_n",
                self.c.half_pi_exp() == n2 && !self.c.is_zero(),
            ),
            (
                "c_over_l_ratio_rational",
                self.c_over_l_ratio.half_pi_exp() == 0 && !self.c_over_l_ratio.is_zero(),
            ),
        ]
    }

    pub fn all_hold(&self, n: usize) -> bool {
        self.checks(n).iter().all(|c| c.1)
    }
}

/// `Phi(-n)` and `c_v = Phi(-n) prod (-i)^{eps_j}` for one place.
pub fn phi_and_c(mu_v: &WeightVec, d: i64, eps0: u8, n: usize) -> Result<PhiAndC> {
    check_levi_weight(mu_v, n)?;
    let n_i = n as i64;
    let last = mu_v.0[n - 1].abs();
    let x = -(d + n_i);
    if x.abs() >= last {
        return Err(Error::Precondition(format!(
            "1 - |mu_n| <= -(d + n) <= |mu_n| - 1 fails for mu = {mu_v}, d = {d}"
        )));
    }
    if x < 0 {
        return Err(Error::Precondition(format!(
            "-(d + n) = {x} is negative: s = -n is left of the unitary axis"
        )));
    }
    let steps = rank_one_steps(mu_v, eps0, d, n)?;
    let gamma_points: Vec<i64> = steps
        .iter()
        .map(|st| -n_i + st.exponent + i64::from(st.parity))
        .collect();

    let half = rat(1, 2);
    let mut nums = Vec::with_capacity(3 * steps.len());
    let mut dens = Vec::with_capacity(steps.len());
    let (mut numerator_poles, mut denominator_poles) = (0, 0);
    for &p in &gamma_points {
        let top = gamma_at(HalfInt::from_twice(p));
        let bottom = gamma_at(HalfInt::from_twice(p + 1));
        numerator_poles += usize::from(top.pole_order() < 0);
        denominator_poles += usize::from(bottom.pole_order() < 0);
        nums.push(PiValue::pi_power(1).into());
        nums.push(top.in_variable_with_slope(&half)?.into());
        dens.push(bottom.in_variable_with_slope(&half)?.into());
    }
    let phi = product_eval(&nums, &dens)?;
    let even =
        |range: std::ops::Range<usize>| gamma_points[range].iter().filter(|p| *p % 2 == 0).count();
    let parity_counts = (even(0..n), even(n..2 * n));

    let phase = steps.iter().fold(Phase::minus_i_pow(0), |acc, st| {
        acc * Phase::minus_i_pow(i64::from(st.parity))
    });
    let sign = phase.as_sign().ok_or_else(|| {
        Error::Inconsistent(format!("phase (-i)^{} is not real", phase.exponent()))
    })?;
    let phi_value = phi
        .value()
        .ok_or_else(|| Error::Inconsistent(format!("Phi(-n) has net order {}", phi.net_order())))?;
    let c = phi_value.scale(&int(sign));

    let mu = CoeffWeight::new(MultiWeight::new(vec![mu_v.clone()])?)?;
    let ch = CharData::new(d, vec![eps0])?;
    let l_ratio = ratio_l_factor(&mu, &ch, 0)?;
    let c_over_l_ratio = c.checked_div(&l_ratio)?;
    Ok(PhiAndC {
        steps,
        gamma_points,
        phi,
        numerator_poles,
        denominator_poles,
        parity_counts,
        phase,
        c,
        l_ratio,
        c_over_l_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wv(v: &[i64]) -> WeightVec {
        WeightVec(v.to_vec())
    }

    #[test]
    fn ds_param_examples() {
        assert_eq!(ds_param(&wv(&[3, 2]), 2).unwrap().ells, vec![8, 4]);
        assert_eq!(ds_param(&wv(&[1, 1]), 2).unwrap().ells, vec![4, 2]);
        assert_eq!(
            ds_param(&wv(&[3, 2]), 2).unwrap(),
            ds_param(&wv(&[3, -2]), 2).unwrap()
        );
        assert_eq!(ds_param(&wv(&[3, 0]), 2), Err(Error::ZeroMuMin));
        assert!(ds_param(&wv(&[1, 3]), 2).is_err());
    }

    #[test]
    fn l_factor_i_examples() {
        let v = l_factor_i(1, 2).unwrap();
        assert_eq!(v, ProductValue::finite(PiValue::new(rat(1, 2), -4)));
        assert_eq!(l_factor_i(-1, 2).unwrap().net_order(), -1);
        assert!(l_factor_i(0, 3).is_err());
    }

    #[test]
    fn blattner_small_ranks() {
        // n = 2 has no compact roots
        let b = blattner(&wv(&[3, 2]), 2).unwrap();
        assert_eq!(b.hc_param, vec![4, 2]);
        assert_eq!(b.rho, vec![1, 0]);
        assert_eq!(b.rho_compact, vec![0, 0]);
        assert_eq!(b.blattner, vec![5, 2]);
        // n = 4: compact positive roots e1 +- e3, e2 +- e4
        let b = blattner(&wv(&[4, 3, 2, -1]), 4).unwrap();
        assert_eq!(b.rho, vec![3, 2, 1, 0]);
        assert_eq!(b.rho_compact, vec![1, 1, 0, 0]);
        assert_eq!(b.blattner, vec![8, 5, 4, -1]);
        assert!(matches!(
            blattner_from_hc(&[3, 1, -3]),
            Err(Error::NotRegular(_))
        ));
        assert!(blattner_from_hc(&[5, 3, 1]).is_ok());
    }

    #[test]
    fn steps_example() {
        let steps = rank_one_steps(&wv(&[3, 2]), 0, -3, 2).unwrap();
        let exps: Vec<i64> = steps.iter().map(|s| s.exponent).collect();
        assert_eq!(exps, vec![-1, 1, 5, 7]);
        let par: Vec<u8> = steps.iter().map(|s| s.parity).collect();
        assert_eq!(par, vec![1, 0, 0, 1]);
        assert_eq!(unipotent_betas(2).unwrap().len(), 4);
    }

    #[test]
    fn sl2_examples() {
        let v = sl2_scalar(2, 0, 0).unwrap();
        assert_eq!(v.phase, Phase::minus_i_pow(0));
        assert_eq!(v.magnitude, ProductValue::finite(PiValue::rational(int(2))));
        assert_eq!(sl2_scalar_factored(2, 0, 0).unwrap(), v);
        let m = m_factor(5, 0, 1).unwrap();
        assert_eq!(m.value().unwrap(), &PiValue::rational(rat(4, 6)));
        assert!(matches!(
            sl2_scalar(2, 1, 2),
            Err(Error::ParityMismatch { .. })
        ));
    }

    #[test]
    fn phi_example() {
        let r = phi_and_c(&wv(&[3, 2]), -3, 0, 2).unwrap();
        assert_eq!(r.gamma_points, vec![-2, -1, 3, 6]);
        assert_eq!(r.parity_counts, (1, 1));
        assert_eq!((r.numerator_poles, r.denominator_poles), (1, 1));
        assert!(r.all_hold(2), "{:?}", r.checks(2));
        assert_eq!(r.c.half_pi_exp(), 4);
        assert!(matches!(
            phi_and_c(&wv(&[3, 2]), -1, 0, 2),
            Err(Error::Precondition(_))
        ));
    }
}
