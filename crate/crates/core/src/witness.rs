//! Flat JSON document carrying Riemann data together with a fan subsolution.

use serde::{Deserialize, Serialize};

use crate::data::RiemannData;
use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::subsolution::FanSubsolution;

/// Numbers are stored at full `f64` precision so a document written from a
/// passing subsolution verifies again after reading it back.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDocument {
    pub rho_minus: f64,
    pub rho_plus: f64,
    pub v_minus: [f64; 2],
    pub v_plus: [f64; 2],
    pub gamma: f64,
    pub nu_minus: f64,
    pub nu_plus: f64,
    pub rho_1: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma_1: f64,
    pub gamma_2: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

fn f<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn t<T: Scalar>(x: f64, name: &str) -> Result<T> {
    T::from_f64(x).ok_or_else(|| Error::Parse(format!("{name} = {x} not representable")))
}

impl WitnessDocument {
    pub fn new<T: Scalar>(data: &RiemannData<T>, sub: &FanSubsolution<T>) -> Self {
        Self {
            rho_minus: f(data.rho_minus),
            rho_plus: f(data.rho_plus),
            v_minus: data.v_minus.map(f),
            v_plus: data.v_plus.map(f),
            gamma: f(data.eos.gamma()),
            nu_minus: f(sub.nu_minus),
            nu_plus: f(sub.nu_plus),
            rho_1: f(sub.rho_1),
            alpha: f(sub.alpha),
            beta: f(sub.beta),
            gamma_1: f(sub.gamma_1),
            gamma_2: f(sub.gamma_2),
            c: f(sub.c),
        }
    }

    /// Validated data and the subsolution parameters.
    pub fn parts<T: Scalar>(&self) -> Result<(RiemannData<T>, FanSubsolution<T>)> {
        let eos = Eos::new(t(self.gamma, "gamma")?)?;
        let data = RiemannData::new(
            t(self.rho_minus, "rho_minus")?,
            [
                t(self.v_minus[0], "v_minus")?,
                t(self.v_minus[1], "v_minus")?,
            ],
            t(self.rho_plus, "rho_plus")?,
            [t(self.v_plus[0], "v_plus")?, t(self.v_plus[1], "v_plus")?],
            eos,
        )?;
        let sub = FanSubsolution {
            nu_minus: t(self.nu_minus, "nu_minus")?,
            nu_plus: t(self.nu_plus, "nu_plus")?,
            rho_1: t(self.rho_1, "rho_1")?,
            alpha: t(self.alpha, "alpha")?,
            beta: t(self.beta, "beta")?,
            gamma_1: t(self.gamma_1, "gamma_1")?,
            gamma_2: t(self.gamma_2, "gamma_2")?,
            c: t(self.c, "C")?,
        };
        Ok((data, sub))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain numbers serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
