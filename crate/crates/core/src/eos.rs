//! Polytropic pressure law `p(rho) = rho^gamma` and the quantities derived
//! from it.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Polytropic equation of state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eos<T> {
    gamma: T,
}

impl<T: Scalar> Eos<T> {
    /// Rejects `gamma < 1` and non-finite exponents.
    pub fn new(gamma: T) -> Result<Self> {
        if !gamma.is_finite() || gamma < T::one() {
            return Err(Error::Domain(format!(
                "adiabatic exponent gamma = {gamma} must be finite and >= 1"
            )));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    /// `true` for the isothermal law `gamma == 1`.
    pub fn is_isothermal(&self) -> bool {
        self.gamma == T::one()
    }

    pub fn pressure(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        Ok(self.p(rho))
    }

    /// Internal energy with `p(r) = r^2 eps'(r)`: `rho^(gamma-1)/(gamma-1)`,
    /// or `ln rho` when `gamma == 1`.
    pub fn internal_energy(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        Ok(self.e(rho))
    }

    /// `P(r, s) = p(r) + p(s) - 2 r s (eps(r) - eps(s)) / (r - s)`.
    ///
    /// Symmetric in its arguments and strictly positive for `gamma >= 1`.
    /// Not defined at `r == s`.
    pub fn p_dissipation(&self, r: T, s: T) -> Result<T> {
        check_density(r)?;
        check_density(s)?;
        if r == s {
            return Err(Error::Domain(format!(
                "P(r, s) is not evaluated at r == s (= {r})"
            )));
        }
        Ok(self.dissipation(r, s))
    }

    /// `p'(rho) = gamma rho^(gamma-1)`.
    pub fn pressure_derivative(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        Ok(self.dp(rho))
    }

    pub fn sound_speed(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        Ok(self.c(rho))
    }

    /// Antiderivative of `sqrt(p'(s))/s`: `2 sqrt(gamma)/(gamma-1) rho^((gamma-1)/2)`
    /// for `gamma > 1` and `sqrt(gamma) ln rho` for `gamma == 1`.
    pub fn rarefaction_potential(&self, rho: T) -> Result<T> {
        check_density(rho)?;
        Ok(self.phi(rho))
    }

    /// `lim_{rho -> 0} rarefaction_potential(rho)`: zero for `gamma > 1`,
    /// `None` (minus infinity) for the isothermal law.
    pub fn rarefaction_potential_at_zero(&self) -> Option<T> {
        if self.is_isothermal() {
            None
        } else {
            Some(T::zero())
        }
    }

    #[inline]
    pub(crate) fn p(&self, rho: T) -> T {
        rho.powf(self.gamma)
    }

    #[inline]
    pub(crate) fn e(&self, rho: T) -> T {
        if self.is_isothermal() {
            rho.ln()
        } else {
            let g1 = self.gamma - T::one();
            rho.powf(g1) / g1
        }
    }

    #[inline]
    pub(crate) fn dp(&self, rho: T) -> T {
        self.gamma * rho.powf(self.gamma - T::one())
    }

    #[inline]
    pub(crate) fn c(&self, rho: T) -> T {
        self.dp(rho).sqrt()
    }

    #[inline]
    pub(crate) fn phi(&self, rho: T) -> T {
        let sg = self.gamma.sqrt();
        if self.is_isothermal() {
            sg * rho.ln()
        } else {
            let g1 = self.gamma - T::one();
            let two = T::lit(2.0);
            two * sg / g1 * rho.powf(g1 / two)
        }
    }

    #[inline]
    pub(crate) fn dissipation(&self, r: T, s: T) -> T {
        let two = T::lit(2.0);
        self.p(r) + self.p(s) - two * r * s * (self.e(r) - self.e(s)) / (r - s)
    }
}

pub(crate) fn check_density<T: Scalar>(rho: T) -> Result<()> {
    if rho > T::zero() && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "density {rho} must be positive and finite"
        )))
    }
}
