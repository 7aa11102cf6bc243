//! Type-D root systems and their Weyl groups, realised as even-signed
//! permutations of the standard basis `e_0, ..., e_{m-1}`.
//!
//! Conventions used throughout the crate:
//!
//! * a [`SignedPerm`] `w` acts by `w(e_i) = signs[i] * e_{perm[i]}`, and on
//!   weights linearly;
//! * `length(w) = #{alpha > 0 : w(alpha) < 0}`, which equals the length of any
//!   reduced word for `w` (checked against [`reduced_word`]);
//! * the parabolic `P` is obtained by deleting the first simple root
//!   `alpha_0 = e_0 - e_1`; its Levi is `GL_1 x D_n` on `m = n + 1` letters;
//! * Kostant representatives are the `w` with `w^{-1}(alpha) > 0` for every
//!   simple root `alpha_1, ..., alpha_n` of the Levi.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Largest rank for which the full group is enumerated.
pub const MAX_ENUM_RANK: usize = 8;
/// Largest `n` for which Kostant representatives are enumerated.
pub const MAX_KOSTANT_N: usize = 6;

/// An element of the Weyl group of `D_m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let m = perm.len();
        if signs.len() != m {
            return Err(Error::SizeMismatch {
                expected: m,
                got: signs.len(),
            });
        }
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || seen[p] {
                return Err(Error::InvalidSignedPerm(format!(
                    "{perm:?} is not a bijection"
                )));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidSignedPerm(format!(
                "signs {signs:?} must be +-1"
            )));
        }
        if signs.iter().filter(|&&s| s < 0).count() % 2 != 0 {
            return Err(Error::InvalidSignedPerm(format!(
                "odd number of sign changes in {signs:?}"
            )));
        }
        Ok(SignedPerm { perm, signs })
    }

    pub fn identity(m: usize) -> Self {
        SignedPerm {
            perm: (0..m).collect(),
            signs: vec![1; m],
        }
    }

    /// Builds an element from the images `w(e_i) = images[i]`, given as
    /// `(sign, index)` pairs.
    pub fn from_images(images: &[(i8, usize)]) -> Result<Self> {
        let (signs, perm) = images.iter().copied().unzip();
        Self::new(perm, signs)
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `w(e_i)` as `(sign, index)`.
    pub fn image(&self, i: usize) -> (i8, usize) {
        (self.signs[i], self.perm[i])
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// `self * other`, i.e. first `other`, then `self`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        assert_eq!(
            self.size(),
            other.size(),
            "composing elements of different rank"
        );
        let (perm, signs) = (0..other.size())
            .map(|i| {
                let (s, p) = other.image(i);
                (self.perm[p], s * self.signs[p])
            })
            .unzip();
        SignedPerm { perm, signs }
    }

    pub fn inverse(&self) -> SignedPerm {
        let m = self.size();
        let mut perm = vec![0; m];
        let mut signs = vec![1; m];
        for i in 0..m {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPerm { perm, signs }
    }

    pub fn apply(&self, v: &WeightVec) -> Result<WeightVec> {
        check_size(self.size(), v.len())?;
        let mut out = vec![0; v.len()];
        for (i, &x) in v.0.iter().enumerate() {
            out[self.perm[i]] = i64::from(self.signs[i]) * x;
        }
        Ok(WeightVec(out))
    }

    pub fn apply_root(&self, r: RootD) -> RootD {
        let [(ci, i), (cj, j)] = r.terms();
        let (si, pi) = self.image(i);
        let (sj, pj) = self.image(j);
        RootD::from_terms((ci * si, pi), (cj * sj, pj))
    }

    /// Simple reflection `s_{alpha_k}` of `D_m`.
    pub fn simple_reflection(m: usize, k: usize) -> Result<SignedPerm> {
        if m < 2 {
            return Err(Error::RankTooSmall(m));
        }
        if k >= m {
            return Err(Error::OutOfRange {
                what: "simple root index",
                value: k as i64,
                range: "0..m",
            });
        }
        let mut w = SignedPerm::identity(m);
        if k + 1 < m {
            w.perm.swap(k, k + 1);
        } else {
            w.perm.swap(m - 2, m - 1);
            w.signs[m - 2] = -1;
            w.signs[m - 1] = -1;
        }
        Ok(w)
    }

    /// Product of simple reflections, left to right.
    pub fn from_word(m: usize, word: &[usize]) -> Result<SignedPerm> {
        word.iter().try_fold(SignedPerm::identity(m), |acc, &k| {
            Ok(acc.compose(&SignedPerm::simple_reflection(m, k)?))
        })
    }
}

impl std::ops::Mul for &SignedPerm {
    type Output = SignedPerm;

    fn mul(self, rhs: &SignedPerm) -> SignedPerm {
        self.compose(rhs)
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPerm({self})")
    }
}

impl fmt::Display for SignedPerm {
    /// `[+1,+2,-0]` lists `w(e_0), w(e_1), ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.size() {
            if i > 0 {
                write!(f, ",")?;
            }
            let sign = if self.signs[i] > 0 { '+' } else { '-' };
            write!(f, "{sign}{}", self.perm[i])?;
        }
        write!(f, "]")
    }
}

impl Serialize for SignedPerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn check_size(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, got })
    }
}

/// Root `sign * (e_i + kind * e_j)` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootD {
    pub i: usize,
    pub j: usize,
    /// `e_i + e_j` when true, `e_i - e_j` otherwise.
    pub plus: bool,
    pub positive: bool,
}

impl RootD {
    pub fn minus(i: usize, j: usize) -> Self {
        assert!(i < j);
        RootD {
            i,
            j,
            plus: false,
            positive: true,
        }
    }

    pub fn plus(i: usize, j: usize) -> Self {
        assert!(i < j);
        RootD {
            i,
            j,
            plus: true,
            positive: true,
        }
    }

    /// The two nonzero coordinates as `(coefficient, index)`.
    pub fn terms(self) -> [(i8, usize); 2] {
        let s = if self.positive { 1 } else { -1 };
        let t = if self.plus { s } else { -s };
        [(s, self.i), (t, self.j)]
    }

    pub fn from_terms(a: (i8, usize), b: (i8, usize)) -> Self {
        let ((ci, i), (cj, j)) = if a.1 < b.1 { (a, b) } else { (b, a) };
        debug_assert!(i != j);
        RootD {
            i,
            j,
            plus: ci == cj,
            positive: ci > 0,
        }
    }

    pub fn negate(self) -> Self {
        RootD {
            positive: !self.positive,
            ..self
        }
    }

    /// The coroot pairing `<root, v>`; roots of `D_m` all have length 2, so this
    /// is the ordinary dot product.
    pub fn pair(self, v: &WeightVec) -> i64 {
        self.terms()
            .iter()
            .map(|&(c, k)| i64::from(c) * v.0[k])
            .sum()
    }
}

impl fmt::Display for RootD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.plus { '+' } else { '-' };
        if self.positive {
            write!(f, "e{}{op}e{}", self.i, self.j)
        } else {
            write!(f, "-(e{}{op}e{})", self.i, self.j)
        }
    }
}

impl Serialize for RootD {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Integral weight in the `e_i` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WeightVec(pub Vec<i64>);

impl WeightVec {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn zero(m: usize) -> Self {
        WeightVec(vec![0; m])
    }

    pub fn add(&self, other: &WeightVec) -> Result<WeightVec> {
        check_size(self.len(), other.len())?;
        Ok(WeightVec(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &WeightVec) -> Result<WeightVec> {
        check_size(self.len(), other.len())?;
        Ok(WeightVec(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn neg(&self) -> WeightVec {
        WeightVec(self.0.iter().map(|x| -x).collect())
    }

    /// `d e_0 + mu`, with `mu` placed on `e_1, ..., e_n`.
    pub fn with_gl1(d: i64, mu: &WeightVec) -> WeightVec {
        let mut v = Vec::with_capacity(mu.len() + 1);
        v.push(d);
        v.extend_from_slice(&mu.0);
        WeightVec(v)
    }

    /// Drops the `GL_1` coordinate.
    pub fn levi_part(&self) -> WeightVec {
        WeightVec(self.0[1..].to_vec())
    }

    /// Flips the sign of the last coordinate.
    pub fn kappa(&self) -> WeightVec {
        let mut v = self.0.clone();
        if let Some(last) = v.last_mut() {
            *last = -*last;
        }
        WeightVec(v)
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One weight per archimedean embedding, all of the same size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct MultiWeight(Vec<WeightVec>);

impl MultiWeight {
    pub fn new(factors: Vec<WeightVec>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::Parse("at least one embedding is required".into()));
        };
        let m = first.len();
        for f in &factors {
            check_size(m, f.len())?;
        }
        Ok(MultiWeight(factors))
    }

    pub fn factors(&self) -> &[WeightVec] {
        &self.0
    }

    pub fn embeddings(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0[0].len()
    }

    pub fn kappa(&self) -> MultiWeight {
        MultiWeight(self.0.iter().map(WeightVec::kappa).collect())
    }
}

impl fmt::Display for MultiWeight {
    /// The shared weight grammar: `3,2;4,1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|w| w.0.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl std::str::FromStr for MultiWeight {
    type Err = Error;

    /// Embeddings separated by `;`, entries by `,`.
    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(';')
            .map(|part| {
                let entries = part
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad weight entry {x:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(WeightVec(entries))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiWeight::new(factors)
    }
}

/// `alpha_0 = e_0 - e_1, ..., alpha_{m-2} = e_{m-2} - e_{m-1}, alpha_{m-1} = e_{m-2} + e_{m-1}`.
pub fn simple_roots(m: usize) -> Result<Vec<RootD>> {
    if m < 2 {
        return Err(Error::RankTooSmall(m));
    }
    let mut roots: Vec<RootD> = (0..m - 1).map(|k| RootD::minus(k, k + 1)).collect();
    roots.push(RootD::plus(m - 2, m - 1));
    Ok(roots)
}

pub fn positive_roots(m: usize) -> Vec<RootD> {
    let mut roots = Vec::with_capacity(m * m.saturating_sub(1));
    for i in 0..m {
        for j in i + 1..m {
            roots.push(RootD::minus(i, j));
            roots.push(RootD::plus(i, j));
        }
    }
    roots
}

/// Half the sum of the positive roots: `(m-1, m-2, ..., 0)`.
pub fn rho(m: usize) -> Result<WeightVec> {
    if m < 2 {
        return Err(Error::RankTooSmall(m));
    }
    Ok(WeightVec((0..m).rev().map(|k| k as i64).collect()))
}

pub fn length(w: &SignedPerm) -> usize {
    positive_roots(w.size())
        .into_iter()
        .filter(|&r| !w.apply_root(r).positive)
        .count()
}

/// A reduced word `k_1 ... k_l` with `w = s_{k_1} ... s_{k_l}`, found by
/// repeatedly stripping a right descent.
pub fn reduced_word(w: &SignedPerm) -> Vec<usize> {
    let m = w.size();
    let simple = simple_roots(m).expect("rank >= 2");
    let mut cur = w.clone();
    let mut word = Vec::new();
    'outer: loop {
        for (k, &a) in simple.iter().enumerate() {
            if !cur.apply_root(a).positive {
                cur = cur.compose(&SignedPerm::simple_reflection(m, k).expect("valid index"));
                word.push(k);
                continue 'outer;
            }
        }
        break;
    }
    debug_assert!(cur.is_identity());
    word.reverse();
    word
}

/// Calls `f` on every element of the Weyl group of `D_m`, in a fixed order.
pub fn for_each_weyl(m: usize, mut f: impl FnMut(&SignedPerm)) -> Result<()> {
    if m < 2 {
        return Err(Error::RankTooSmall(m));
    }
    if m > MAX_ENUM_RANK {
        return Err(Error::OutOfRange {
            what: "rank m",
            value: m as i64,
            range: "2..=8",
        });
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut w = SignedPerm::identity(m);
    loop {
        w.perm.copy_from_slice(&perm);
        // sign patterns with an even number of -1: choose the first m-1 freely
        for mask in 0u32..(1 << (m - 1)) {
            let mut parity = 0;
            for k in 0..m - 1 {
                let neg = mask >> k & 1 == 1;
                w.signs[k] = if neg { -1 } else { 1 };
                parity ^= neg as u32;
            }
            w.signs[m - 1] = if parity == 1 { -1 } else { 1 };
            f(&w);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn enumerate_weyl(m: usize) -> Result<Vec<SignedPerm>> {
    let mut out = Vec::new();
    for_each_weyl(m, |w| out.push(w.clone()))?;
    Ok(out)
}

fn check_even_n(n: usize) -> Result<()> {
    if !n.is_multiple_of(2) {
        return Err(Error::OddRank(n));
    }
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            range: "even n >= 2",
        });
    }
    Ok(())
}

/// The distinguished elements on `m = n + 1` letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialElements {
    /// `e_0 -> -e_0`, `e_n -> -e_n`, other `e_i` fixed.
    pub w_p: SignedPerm,
    /// Longest element: `e_i -> -e_i` for `i < n`, `e_n` fixed.
    pub w_g: SignedPerm,
    /// Longest element of the Levi: `e_i -> -e_i` for `1 <= i <= n`.
    pub w_m: SignedPerm,
    pub w_plus: SignedPerm,
    pub w_minus: SignedPerm,
}

pub fn special_elements(n: usize) -> Result<SpecialElements> {
    check_even_n(n)?;
    let m = n + 1;
    let diag = |neg: &dyn Fn(usize) -> bool| {
        let images: Vec<(i8, usize)> = (0..m).map(|i| (if neg(i) { -1 } else { 1 }, i)).collect();
        SignedPerm::from_images(&images)
    };
    let w_p = diag(&|i| i == 0 || i == n)?;
    let w_g = diag(&|i| i < n)?;
    let w_m = diag(&|i| i >= 1)?;
    let plus: Vec<(i8, usize)> = (0..m).map(|i| (1, (i + 1) % m)).collect();
    let mut minus = plus.clone();
    minus[n - 1] = (-1, n);
    minus[n] = (-1, 0);
    Ok(SpecialElements {
        w_p,
        w_g,
        w_m,
        w_plus: SignedPerm::from_images(&plus)?,
        w_minus: SignedPerm::from_images(&minus)?,
    })
}

/// The reduced word `s_0 s_1 ... s_{n-2} s_n s_{n-1} s_{n-2} ... s_1 s_0` for `w_P`.
pub fn factor_w_p(n: usize) -> Result<Vec<usize>> {
    check_even_n(n)?;
    let mut word: Vec<usize> = (0..n - 1).collect();
    word.push(n);
    word.push(n - 1);
    word.extend((0..n - 1).rev());
    Ok(word)
}

/// `w^{-1}(alpha) > 0` for every simple root of the Levi `GL_1 x D_n`.
pub fn is_kostant_rep(w: &SignedPerm) -> bool {
    let inv = w.inverse();
    simple_roots(w.size())
        .map(|s| s[1..].iter().all(|&a| inv.apply_root(a).positive))
        .unwrap_or(false)
}

/// Kostant representatives for the parabolic, sorted by length and then by
/// the element's canonical order.
pub fn kostant_reps(n: usize) -> Result<Vec<SignedPerm>> {
    check_even_n(n)?;
    if n > MAX_KOSTANT_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            range: "2..=6",
        });
    }
    let mut reps = Vec::new();
    for_each_weyl(n + 1, |w| {
        if is_kostant_rep(w) {
            reps.push(w.clone());
        }
    })?;
    reps.sort_by_cached_key(|w| (length(w), w.clone()));
    Ok(reps)
}

/// Balanced means length equal to half of `dim U_P = 2n`.
pub fn is_balanced(w: &SignedPerm, n: usize) -> bool {
    length(w) == n
}

/// Balanced on every embedding.
pub fn is_balanced_multi(ws: &[SignedPerm], n: usize) -> bool {
    ws.iter().all(|w| is_balanced(w, n))
}

pub fn dot_action(w: &SignedPerm, lambda: &WeightVec) -> Result<WeightVec> {
    let rho = rho(w.size())?;
    w.apply(&lambda.add(&rho)?)?.sub(&rho)
}

/// `w -> w_P w`.
pub fn prime_map(w: &SignedPerm, n: usize) -> Result<SignedPerm> {
    let sp = special_elements(n)?;
    check_size(n + 1, w.size())?;
    if !is_kostant_rep(w) {
        return Err(Error::NotKostantRep);
    }
    Ok(sp.w_p.compose(w))
}

/// `w -> w_M w w_G`.
pub fn vee_map(w: &SignedPerm, n: usize) -> Result<SignedPerm> {
    let sp = special_elements(n)?;
    check_size(n + 1, w.size())?;
    if !is_kostant_rep(w) {
        return Err(Error::NotKostantRep);
    }
    Ok(sp.w_m.compose(w).compose(&sp.w_g))
}

/// First violated inequality of the chain `v_0 >= ... >= v_{k-2} >= |v_{k-1}|`,
/// with indices offset by `offset` in the message.
pub fn chain_violation(v: &[i64], offset: usize) -> Option<String> {
    let k = v.len();
    if k == 0 {
        return None;
    }
    for i in 0..k.saturating_sub(2) {
        if v[i] < v[i + 1] {
            return Some(format!(
                "entry {} = {} < entry {} = {}",
                i + offset,
                v[i],
                i + 1 + offset,
                v[i + 1]
            ));
        }
    }
    if k >= 2 && v[k - 2] < v[k - 1].abs() {
        return Some(format!(
            "entry {} = {} < |entry {}| = {}",
            k - 2 + offset,
            v[k - 2],
            k - 1 + offset,
            v[k - 1].abs()
        ));
    }
    None
}

pub fn is_dominant_g(lambda: &WeightVec) -> bool {
    chain_violation(&lambda.0, 0).is_none()
}

/// Dominance for `GL_1 x D_n`: entry 0 is free.
pub fn is_dominant_m(lambda: &WeightVec) -> bool {
    lambda.len() <= 1 || chain_violation(&lambda.0[1..], 1).is_none()
}

/// Weyl dimension of the irreducible `GL_1 x D_n` module of highest weight
/// `lambda` (the `GL_1` factor is a character).
pub fn weyl_dim_m(lambda: &WeightVec, n: usize) -> Result<BigInt> {
    check_size(n + 1, lambda.len())?;
    if !is_dominant_m(lambda) {
        return Err(Error::NotDominant {
            weight: lambda.to_string(),
            violated: chain_violation(&lambda.0[1..], 1).unwrap_or_default(),
        });
    }
    let part = &lambda.0[1..];
    let shifted: Vec<i64> = part
        .iter()
        .enumerate()
        .map(|(i, x)| x + (n - 1 - i) as i64)
        .collect();
    let rho_m: Vec<i64> = (0..n).map(|i| (n - 1 - i) as i64).collect();
    let mut dim = Rational::one();
    for i in 0..n {
        for j in i + 1..n {
            for sign in [-1, 1] {
                let num = shifted[i] + sign * shifted[j];
                let den = rho_m[i] + sign * rho_m[j];
                dim *= Rational::new(BigInt::from(num), BigInt::from(den));
            }
        }
    }
    debug_assert!(dim.is_integer() && dim.is_positive());
    Ok(dim.to_integer())
}

/// `sum over W^P of (-1)^{l(w)} dim M_{w . lambda}`, which vanishes because
/// the alternating sum of the exterior powers of `u_P` has dimension zero.
pub fn kostant_euler_check(lambda: &WeightVec, n: usize) -> Result<BigInt> {
    if !is_dominant_g(lambda) {
        return Err(Error::NotDominant {
            weight: lambda.to_string(),
            violated: chain_violation(&lambda.0, 0).unwrap_or_default(),
        });
    }
    let mut total = BigInt::zero();
    for w in kostant_reps(n)? {
        let d = weyl_dim_m(&dot_action(&w, lambda)?, n)?;
        if length(&w).is_multiple_of(2) {
            total += d;
        } else {
            total -= d;
        }
    }
    Ok(total)
}
