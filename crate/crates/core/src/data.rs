//! Riemann data and the scalar functionals of it used throughout the
//! subsolution analysis.

use serde::{Deserialize, Serialize};

use crate::eos::{check_density, Eos};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Ordering of the two densities. `Increasing` means `rho_minus < rho_plus`
/// (`R < 0`); `Decreasing` means `rho_minus > rho_plus` (`R > 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DensityOrder {
    Increasing,
    Decreasing,
}

/// Riemann initial data: `(rho_minus, v_minus)` for `x2 < 0`,
/// `(rho_plus, v_plus)` for `x2 > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannData<T> {
    pub rho_minus: T,
    pub rho_plus: T,
    pub v_minus: [T; 2],
    pub v_plus: [T; 2],
    pub eos: Eos<T>,
}

impl<T: Scalar> RiemannData<T> {
    pub fn new(
        rho_minus: T,
        v_minus: [T; 2],
        rho_plus: T,
        v_plus: [T; 2],
        eos: Eos<T>,
    ) -> Result<Self> {
        check_density(rho_minus)?;
        check_density(rho_plus)?;
        if !(v_minus.iter().chain(v_plus.iter()).all(|v| v.is_finite())) {
            return Err(Error::Domain("velocities must be finite".into()));
        }
        Ok(Self {
            rho_minus,
            rho_plus,
            v_minus,
            v_plus,
            eos,
        })
    }

    /// Data with a common first velocity component `v1`.
    pub fn planar(
        rho_minus: T,
        v_minus2: T,
        rho_plus: T,
        v_plus2: T,
        v1: T,
        eos: Eos<T>,
    ) -> Result<Self> {
        Self::new(rho_minus, [v1, v_minus2], rho_plus, [v1, v_plus2], eos)
    }

    pub fn v_minus2(&self) -> T {
        self.v_minus[1]
    }

    pub fn v_plus2(&self) -> T {
        self.v_plus[1]
    }

    /// Velocity gap `w = v_minus2 - v_plus2`.
    pub fn gap(&self) -> T {
        self.v_minus[1] - self.v_plus[1]
    }

    pub fn order(&self) -> Option<DensityOrder> {
        if self.rho_minus < self.rho_plus {
            Some(DensityOrder::Increasing)
        } else if self.rho_minus > self.rho_plus {
            Some(DensityOrder::Decreasing)
        } else {
            None
        }
    }

    /// `(near, far)` densities: `near` is the side where `eps_1` is positive,
    /// which is always the smaller density.
    pub fn near_far(&self) -> (T, T) {
        if self.rho_minus <= self.rho_plus {
            (self.rho_minus, self.rho_plus)
        } else {
            (self.rho_plus, self.rho_minus)
        }
    }

    /// Fails unless `v_minus1 == v_plus1` (within `tol` relative).
    pub fn check_tangential(&self, tol: T) -> Result<T> {
        let (a, b) = (self.v_minus[0], self.v_plus[0]);
        let scale = T::one().max(a.abs()).max(b.abs());
        if (a - b).abs() > tol * scale {
            return Err(Error::TangentialMismatch {
                v_minus1: a.to_f64().unwrap_or(f64::NAN),
                v_plus1: b.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(a)
    }

    /// `T = (rho_+ - rho_-)(p(rho_+) - p(rho_-)) / (rho_+ rho_-)`.
    pub fn shock_bound_sq(&self) -> T {
        let p = &self.eos;
        (self.rho_plus - self.rho_minus) * (p.p(self.rho_plus) - p.p(self.rho_minus))
            / (self.rho_plus * self.rho_minus)
    }

    pub fn functionals(&self) -> DataFunctionals<T> {
        DataFunctionals::new(self)
    }
}

/// Scalar functionals of the data.
///
/// `k`, `l` and `rho_tilde` are only populated when `rho_minus != rho_plus`
/// and `B < 0`; `rho_t` needs `rho_minus != rho_plus` and a positive
/// denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataFunctionals<T> {
    /// `R = rho_- - rho_+`
    pub r: T,
    /// `A = rho_- v_-2 - rho_+ v_+2`
    pub a: T,
    /// `H = rho_- v_-2^2 - rho_+ v_+2^2 + p(rho_-) - p(rho_+)`
    pub h: T,
    /// `u = v_+2 - v_-2`
    pub u: T,
    /// `B = A^2 - R H`
    pub b: T,
    pub t: T,
    pub sqrt_t: T,
    pub k: Option<T>,
    pub l: Option<T>,
    /// Density where `v_+2 - beta` (increasing order) or `beta - v_-2`
    /// (decreasing order) changes sign.
    pub rho_t: Option<T>,
    /// Zero of `L sqrt(1 - near/rho) - K sqrt(far/rho - 1)`.
    pub rho_tilde: Option<T>,
}

impl<T: Scalar> DataFunctionals<T> {
    pub fn new(d: &RiemannData<T>) -> Self {
        let (rm, rp) = (d.rho_minus, d.rho_plus);
        let (vm, vp) = (d.v_minus[1], d.v_plus[1]);
        let (pm, pp) = (d.eos.p(rm), d.eos.p(rp));
        let r = rm - rp;
        let a = rm * vm - rp * vp;
        let h = rm * vm * vm - rp * vp * vp + pm - pp;
        let u = vp - vm;
        let b = a * a - r * h;
        let t = d.shock_bound_sq();
        let sqrt_t = t.sqrt();

        let mut out = Self {
            r,
            a,
            h,
            u,
            b,
            t,
            sqrt_t,
            k: None,
            l: None,
            rho_t: None,
            rho_tilde: None,
        };
        if r == T::zero() {
            return out;
        }
        let (near, far) = d.near_far();
        let denom = near * u * u + far * (t - u * u);
        if denom > T::zero() {
            let rho_t = rm * rp * t / denom;
            if rho_t.is_finite() {
                out.rho_t = Some(rho_t);
            }
        }
        if b < T::zero() {
            let k = near * u / (near - far);
            let l = (-b).sqrt() / r.abs();
            out.k = Some(k);
            out.l = Some(l);
            let (k2, l2) = (k * k, l * l);
            if k2 + l2 > T::zero() {
                out.rho_tilde = Some((k2 * far + l2 * near) / (k2 + l2));
            }
        }
        out
    }

    /// `B` in factored form `rho_- rho_+ u^2 - (rho_+ - rho_-)(p(rho_+) - p(rho_-))`.
    pub fn b_factored(d: &RiemannData<T>) -> T {
        let u = d.v_plus[1] - d.v_minus[1];
        d.rho_minus * d.rho_plus * u * u
            - (d.rho_plus - d.rho_minus) * (d.eos.p(d.rho_plus) - d.eos.p(d.rho_minus))
    }
}
