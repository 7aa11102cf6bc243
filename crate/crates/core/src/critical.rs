//! Archimedean L-factors of `chi x sigma`, the critical set, the ratio of the
//! two successive values at `-n` and `1-n`, and the combinatorial lemma tying
//! criticality of that pair to balanced Kostant representatives.
//!
//! At an archimedean place the factor attached to embedding `tau` is
//!
//! ```text
//! 2^n prod_{j=1..n} (2 pi)^{-(s - d + |mu_j| + n - j)} Gamma(s - d + |mu_j| + n - j)
//! ```
//!
//! and the dual side `L(1-s, chi^{-1} x sigma^v)` is the same expression at
//! `(1 - s, -d)` since `sigma` is self-dual.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{gamma_at, int, product_eval, Factor, HalfInt, PiValue, ProductValue};
use crate::weyl::{
    chain_violation, dot_action, is_dominant_g, prime_map, special_elements, vee_map, MultiWeight,
    SignedPerm, WeightVec,
};

/// Algebraic Hecke character data: `chi_v = |.|^{-d} sgn^{eps_v}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharData {
    pub d: i64,
    pub eps: Vec<u8>,
}

impl CharData {
    pub fn new(d: i64, eps: Vec<u8>) -> Result<Self> {
        if let Some(&e) = eps.iter().find(|&&e| e > 1) {
            return Err(Error::Parse(format!("parity {e} is not 0 or 1")));
        }
        Ok(CharData { d, eps })
    }

    /// All parities zero.
    pub fn unsigned(d: i64, r_f: usize) -> Self {
        CharData {
            d,
            eps: vec![0; r_f],
        }
    }

    pub fn dual(&self) -> Self {
        CharData {
            d: -self.d,
            eps: self.eps.clone(),
        }
    }
}

/// Dominant coefficient weight `mu = (mu^tau)_tau` for the Levi `D_n` factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoeffWeight {
    mu: MultiWeight,
    mu_min: i64,
}

impl CoeffWeight {
    pub fn new(mu: MultiWeight) -> Result<Self> {
        for w in mu.factors() {
            if let Some(violated) = chain_violation(&w.0, 1) {
                return Err(Error::NotDominant {
                    weight: w.to_string(),
                    violated,
                });
            }
        }
        if mu.size() < 2 {
            return Err(Error::RankTooSmall(mu.size()));
        }
        let mu_min = mu
            .factors()
            .iter()
            .map(|w| w.0[w.len() - 1].abs())
            .min()
            .expect("nonempty");
        Ok(CoeffWeight { mu, mu_min })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn mu(&self) -> &MultiWeight {
        &self.mu
    }

    pub fn mu_min(&self) -> i64 {
        self.mu_min
    }

    pub fn mu_max(&self) -> i64 {
        self.mu
            .factors()
            .iter()
            .flat_map(|w| w.0.iter().map(|x| x.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn n(&self) -> usize {
        self.mu.size()
    }

    pub fn r_f(&self) -> usize {
        self.mu.embeddings()
    }

    pub fn factor(&self, tau: usize) -> &WeightVec {
        &self.mu.factors()[tau]
    }

    pub fn kappa(&self) -> CoeffWeight {
        CoeffWeight {
            mu: self.mu.kappa(),
            mu_min: self.mu_min,
        }
    }
}

fn check_embeddings(mu: &CoeffWeight, ch: &CharData) -> Result<()> {
    if ch.eps.len() != mu.r_f() {
        return Err(Error::SizeMismatch {
            expected: mu.r_f(),
            got: ch.eps.len(),
        });
    }
    Ok(())
}

/// Gamma arguments `s - d + |mu_j| + n - j`, `j = 1..n`.
pub fn gamma_arguments(s: i64, mu_tau: &WeightVec, d: i64) -> Vec<i64> {
    let n = mu_tau.len() as i64;
    mu_tau
        .0
        .iter()
        .enumerate()
        .map(|(idx, m)| s - d + m.abs() + n - (idx as i64 + 1))
        .collect()
}

fn factor_at(s: i64, mu_tau: &WeightVec, d: i64) -> Result<ProductValue> {
    let n = mu_tau.len() as i64;
    let mut nums: Vec<Factor> = vec![PiValue::rational(int(2).pow(n as i32)).into()];
    for a in gamma_arguments(s, mu_tau, d) {
        nums.push(PiValue::two_pi_pow(-a).into());
        nums.push(gamma_at(HalfInt::from_int(a)).into());
    }
    product_eval(&nums, &[])
}

/// `L(s, chi_v x sigma_v)` at the place given by embedding `tau`, for integer `s`.
pub fn arch_l_factor(s: i64, mu: &CoeffWeight, ch: &CharData, tau: usize) -> Result<ProductValue> {
    check_embeddings(mu, ch)?;
    if tau >= mu.r_f() {
        return Err(Error::OutOfRange {
            what: "embedding index",
            value: tau as i64,
            range: "0..r_F",
        });
    }
    factor_at(s, mu.factor(tau), ch.d)
}

/// `L(1 - s, chi_v^{-1} x sigma_v^v)`.
pub fn dual_arch_l_factor(
    s: i64,
    mu: &CoeffWeight,
    ch: &CharData,
    tau: usize,
) -> Result<ProductValue> {
    arch_l_factor(1 - s, mu, &ch.dual(), tau)
}

/// Product of the archimedean factors over all embeddings.
pub fn l_infinity(s: i64, mu: &CoeffWeight, ch: &CharData) -> Result<ProductValue> {
    (0..mu.r_f()).try_fold(ProductValue::one(), |acc, tau| {
        Ok(&acc * &arch_l_factor(s, mu, ch, tau)?)
    })
}

/// Both `L_inf(s)` and `L_inf(1 - s)` on the dual side are holomorphic at `m`.
pub fn is_critical(m: i64, mu: &CoeffWeight, ch: &CharData) -> Result<bool> {
    check_embeddings(mu, ch)?;
    for tau in 0..mu.r_f() {
        // Gamma has no zeros, so holomorphic means no net pole.
        if arch_l_factor(m, mu, ch, tau)?.net_order() != 0
            || dual_arch_l_factor(m, mu, ch, tau)?.net_order() != 0
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A contiguous, sorted set of critical integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CriticalSet(Vec<i64>);

impl CriticalSet {
    pub fn members(&self) -> &[i64] {
        &self.0
    }

    pub fn contains(&self, m: i64) -> bool {
        self.0.binary_search(&m).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Integers window that contains every critical point.
pub fn scan_window(mu: &CoeffWeight, ch: &CharData) -> (i64, i64) {
    let n = mu.n() as i64;
    (ch.d - mu.mu_max() - n, ch.d + mu.mu_max() + n)
}

/// `{m : is_critical(m)}` over [`scan_window`].
pub fn critical_scan(mu: &CoeffWeight, ch: &CharData) -> Result<Vec<i64>> {
    let (lo, hi) = scan_window(mu, ch);
    let mut out = Vec::new();
    for m in lo..=hi {
        if is_critical(m, mu, ch)? {
            out.push(m);
        }
    }
    Ok(out)
}

/// `{1 + d - mu_min, ..., d + mu_min}`, cross-checked against the holomorphy scan.
pub fn critical_set(mu: &CoeffWeight, ch: &CharData) -> Result<CriticalSet> {
    check_embeddings(mu, ch)?;
    if mu.mu_min() == 0 {
        return Err(Error::ZeroMuMin);
    }
    let closed: Vec<i64> = (1 + ch.d - mu.mu_min()..=ch.d + mu.mu_min()).collect();
    let scan = critical_scan(mu, ch)?;
    if scan != closed {
        return Err(Error::Inconsistent(format!(
            "closed form {closed:?} differs from holomorphy scan {scan:?}"
        )));
    }
    Ok(CriticalSet(closed))
}

/// `1 - mu_min <= -(n + d) <= mu_min - 1`.
pub fn pair_condition(mu: &CoeffWeight, ch: &CharData) -> bool {
    let x = -(mu.n() as i64 + ch.d);
    x.abs() < mu.mu_min()
}

fn check_pair_critical(mu: &CoeffWeight, ch: &CharData) -> Result<()> {
    let n = mu.n() as i64;
    if !is_critical(-n, mu, ch)? || !is_critical(1 - n, mu, ch)? {
        return Err(Error::Precondition(format!(
            "-n = {} and 1-n = {} are not both critical",
            -n,
            1 - n
        )));
    }
    Ok(())
}

/// `L(-n, chi_v x sigma_v) / L(1 - n, chi_v x sigma_v)` at one embedding.
pub fn ratio_l_factor(mu: &CoeffWeight, ch: &CharData, tau: usize) -> Result<PiValue> {
    check_pair_critical(mu, ch)?;
    let n = mu.n() as i64;
    let q = arch_l_factor(-n, mu, ch, tau)?.checked_div(&arch_l_factor(1 - n, mu, ch, tau)?)?;
    q.value()
        .cloned()
        .ok_or_else(|| Error::Inconsistent("ratio of finite factors has a zero or pole".into()))
}

/// `L_inf(-n) / L_inf(1 - n)`, an exact `q pi^{n r_F}`.
pub fn ratio_l_inf(mu: &CoeffWeight, ch: &CharData) -> Result<PiValue> {
    check_pair_critical(mu, ch)?;
    let n = mu.n() as i64;
    let q = l_infinity(-n, mu, ch)?.checked_div(&l_infinity(1 - n, mu, ch)?)?;
    let value = q
        .value()
        .cloned()
        .ok_or_else(|| Error::Inconsistent("ratio of finite factors has a zero or pole".into()))?;
    let expected = n * mu.r_f() as i64;
    if value.pi_exponent() != Some(expected) || value.is_zero() {
        return Err(Error::Inconsistent(format!(
            "ratio {value} is not a nonzero rational times pi^{expected}"
        )));
    }
    Ok(value)
}

/// Outcome of checking the three equivalent conditions of the combinatorial
/// lemma for one `(mu, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombLemma {
    /// `-n` and `1 - n` are critical, via Gamma holomorphy.
    pub cond_i: bool,
    /// The inequality `1 - mu_min <= -(n + d) <= mu_min - 1`.
    pub cond_ii: bool,
    /// Number of per-embedding choices from `{w+, w-}` that make every
    /// `(w^tau)^{-1} . (d e_0 + mu^tau)` dominant.
    pub witnesses_found: usize,
    pub witness: Option<Vec<SignedPerm>>,
    pub lambda: Option<MultiWeight>,
    /// `w+` where `mu_n^tau >= 1` and `w-` where `mu_n^tau <= -1`.
    pub sign_rule: Vec<SignedPerm>,
}

impl CombLemma {
    pub fn cond_iii(&self) -> bool {
        self.witness.is_some()
    }

    pub fn all_agree(&self) -> bool {
        self.cond_i == self.cond_ii
            && self.cond_ii == self.cond_iii()
            && self.witnesses_found <= 1
            && self.witness.as_ref().is_none_or(|w| *w == self.sign_rule)
    }
}

/// Checks conditions (i), (ii) and (iii), searching all `2^{r_F}` choices of
/// balanced elements for a dominant image.
pub fn comb_lemma(mu: &CoeffWeight, ch: &CharData) -> Result<CombLemma> {
    check_embeddings(mu, ch)?;
    if mu.mu_min() == 0 {
        return Err(Error::ZeroMuMin);
    }
    let n = mu.n();
    let sp = special_elements(n)?;
    let balanced = [sp.w_plus.clone(), sp.w_minus.clone()];
    let inverses = [sp.w_plus.inverse(), sp.w_minus.inverse()];
    let targets: Vec<WeightVec> = mu
        .mu()
        .factors()
        .iter()
        .map(|m| WeightVec::with_gl1(ch.d, m))
        .collect();
    // images[tau][b] = (w_b)^{-1} . (d e_0 + mu^tau)
    let images = targets
        .iter()
        .map(|t| {
            inverses
                .iter()
                .map(|inv| dot_action(inv, t))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let r_f = mu.r_f();
    let mut witnesses_found = 0;
    let mut witness = None;
    let mut lambda = None;
    for mask in 0u64..(1 << r_f) {
        let pick = |tau: usize| (mask >> tau & 1) as usize;
        if (0..r_f).all(|tau| is_dominant_g(&images[tau][pick(tau)])) {
            witnesses_found += 1;
            if witness.is_none() {
                witness = Some((0..r_f).map(|tau| balanced[pick(tau)].clone()).collect());
                lambda = Some(MultiWeight::new(
                    (0..r_f).map(|tau| images[tau][pick(tau)].clone()).collect(),
                )?);
            }
        }
    }
    let sign_rule = mu
        .mu()
        .factors()
        .iter()
        .map(|m| {
            if m.0[n - 1] >= 1 {
                sp.w_plus.clone()
            } else {
                sp.w_minus.clone()
            }
        })
        .collect();
    let n_i = n as i64;
    let cond_i = is_critical(-n_i, mu, ch)? && is_critical(1 - n_i, mu, ch)?;
    Ok(CombLemma {
        cond_i,
        cond_ii: pair_condition(mu, ch),
        witnesses_found,
        witness,
        lambda,
        sign_rule,
    })
}

/// The three weight identities for `w'`, `w^v` and `w^v'` at one embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropIdentity {
    pub w: SignedPerm,
    pub lambda: WeightVec,
    pub lambda_vee: WeightVec,
    /// `w' . lambda`, expected `(-d - 2n) e_0 + kappa(mu)`.
    pub prime_image: WeightVec,
    /// `w^v . lambda^v`, expected `(-d - 2n) e_0 + mu`.
    pub vee_image: WeightVec,
    /// `(w^v)' . lambda^v`, expected `d e_0 + kappa(mu)`.
    pub vee_prime_image: WeightVec,
    pub holds: [bool; 3],
    pub lambda_vee_dominant: bool,
}

impl PropIdentity {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&b| b) && self.lambda_vee_dominant
    }
}

pub fn prop_identities(mu: &CoeffWeight, ch: &CharData) -> Result<Vec<PropIdentity>> {
    let lemma = comb_lemma(mu, ch)?;
    let (Some(witness), Some(lambda)) = (lemma.witness, lemma.lambda) else {
        return Err(Error::Precondition(
            "the combinatorial lemma fails, so no witness exists".into(),
        ));
    };
    let n = mu.n();
    let sp = special_elements(n)?;
    let shift = -ch.d - 2 * n as i64;
    witness
        .iter()
        .zip(lambda.factors())
        .zip(mu.mu().factors())
        .map(|((w, lam), mu_tau)| {
            let lambda_vee = sp.w_g.apply(lam)?.neg();
            let w_prime = prime_map(w, n)?;
            let w_vee = vee_map(w, n)?;
            let w_vee_prime = prime_map(&w_vee, n)?;
            let prime_image = dot_action(&w_prime, lam)?;
            let vee_image = dot_action(&w_vee, &lambda_vee)?;
            let vee_prime_image = dot_action(&w_vee_prime, &lambda_vee)?;
            let holds = [
                prime_image == WeightVec::with_gl1(shift, &mu_tau.kappa()),
                vee_image == WeightVec::with_gl1(shift, mu_tau),
                vee_prime_image == WeightVec::with_gl1(ch.d, &mu_tau.kappa()),
            ];
            Ok(PropIdentity {
                w: w.clone(),
                lambda: lam.clone(),
                lambda_vee_dominant: is_dominant_g(&lambda_vee),
                lambda_vee,
                prime_image,
                vee_image,
                vee_prime_image,
                holds,
            })
        })
        .collect()
}
