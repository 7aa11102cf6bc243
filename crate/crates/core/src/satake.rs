//! Unramified local L-factors `L_v(s, chi_v x sigma_v)` from Satake parameters,
//! and the spherical eigenvalue `L_v(s) / L_v(1 + s)` of the standard
//! intertwining operator.
//!
//! Parameters are rational so that every value is exact.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, rat_pow, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParam {
    thetas: Vec<Rational>,
    theta_chi: Rational,
    q: u64,
}

impl SatakeParam {
    pub fn new(thetas: Vec<Rational>, theta_chi: Rational, q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::OutOfRange {
                what: "residue field size q",
                value: q as i64,
                range: ">= 2",
            });
        }
        if thetas.is_empty() {
            return Err(Error::Parse(
                "at least one Satake parameter is required".into(),
            ));
        }
        if theta_chi.is_zero() || thetas.iter().any(Zero::is_zero) {
            return Err(Error::Parse("Satake parameters must be nonzero".into()));
        }
        Ok(SatakeParam {
            thetas,
            theta_chi,
            q,
        })
    }

    pub fn thetas(&self) -> &[Rational] {
        &self.thetas
    }

    pub fn theta_chi(&self) -> &Rational {
        &self.theta_chi
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.thetas.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalL {
    Value(Rational),
    Pole,
}

impl LocalL {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LocalL::Value(v) => Some(v),
            LocalL::Pole => None,
        }
    }
}

impl Serialize for LocalL {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LocalL::Value(v) => s.serialize_str(&format_rational(v)),
            LocalL::Pole => s.serialize_str("pole"),
        }
    }
}

/// `prod_j ((1 - t t_j q^{-s}) (1 - t t_j^{-1} q^{-s}))^{-1}`.
pub fn local_l(s: i64, p: &SatakeParam) -> LocalL {
    let x = &p.theta_chi * rat_pow(&int(p.q as i64), -s);
    let mut denom = Rational::one();
    for t in &p.thetas {
        denom *= (Rational::one() - &x * t) * (Rational::one() - &x / t);
    }
    if denom.is_zero() {
        LocalL::Pole
    } else {
        LocalL::Value(denom.recip())
    }
}

/// `L_v(s) / L_v(1 + s)`, the eigenvalue on the normalised spherical vector.
pub fn gk_ratio(s: i64, p: &SatakeParam) -> Result<Rational> {
    let LocalL::Value(num) = local_l(s, p) else {
        return Err(Error::Pole(s));
    };
    let LocalL::Value(den) = local_l(s + 1, p) else {
        return Err(Error::Pole(s + 1));
    };
    Ok(num / den)
}
