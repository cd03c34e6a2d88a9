//! Admissible range of `eps_2` at a fixed middle density.
//!
//! Each interface energy inequality is affine in `eps_2`. The two resulting
//! half-lines are intersected with `(0, inf)` without assuming the signs of
//! `beta - v_-2` and `v_+2 - beta`: the direction of each bound follows the
//! sign of its `eps_2` coefficient.

use serde::{Deserialize, Serialize};

use super::kinematics::{Branch, Kinematics};
use crate::data::RiemannData;
use crate::error::Result;
use crate::scalar::{Scalar, Sign, Tolerances};

/// `coeff * eps_2 <= rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyConstraint<T> {
    pub coeff: T,
    pub rhs: T,
}

impl<T: Scalar> EnergyConstraint<T> {
    /// `rhs - coeff * eps_2`; nonnegative iff the inequality holds.
    pub fn margin(&self, eps_2: T) -> T {
        self.rhs - self.coeff * eps_2
    }
}

/// Which condition fixes a bound of the `eps_2` window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    Positivity,
    LeftEnergy,
    RightEnergy,
    Unbounded,
}

/// Per-density diagnostics of the subsolution search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityRecord<T> {
    pub rho_1: T,
    pub nu_minus: T,
    pub nu_plus: T,
    pub beta: T,
    pub eps_1: T,
    /// Sign of `beta - v_-2`.
    pub sign_beta_minus: Sign,
    /// Sign of `v_+2 - beta`.
    pub sign_plus_beta: Sign,
    /// Lower end of the window, already intersected with `(0, inf)`.
    pub eps2_lower: T,
    /// Upper end of the window; `+inf` when unbounded, `-inf` when a
    /// degenerate constraint fails outright.
    pub eps2_upper: T,
    pub lower_source: BoundSource,
    pub upper_source: BoundSource,
    pub left: EnergyConstraint<T>,
    pub right: EnergyConstraint<T>,
    pub feasible: bool,
}

impl<T: Scalar> FeasibilityRecord<T> {
    pub fn kinematics(&self) -> Kinematics<T> {
        Kinematics {
            nu_minus: self.nu_minus,
            nu_plus: self.nu_plus,
            beta: self.beta,
            eps_1: self.eps_1,
        }
    }

    /// A representative interior `eps_2`: the window midpoint, or
    /// `lower + max(1, lower)` when the window is unbounded above.
    pub fn interior_eps2(&self) -> Option<T> {
        if !self.feasible {
            return None;
        }
        let (lo, hi) = (self.eps2_lower, self.eps2_upper);
        if hi.is_infinite() {
            Some(lo + T::one().max(lo))
        } else {
            Some(lo + (hi - lo) / T::lit(2.0))
        }
    }

    pub fn contains(&self, eps_2: T) -> bool {
        eps_2 > self.eps2_lower
            && eps_2 > T::zero()
            && eps_2 <= self.eps2_upper
            && self.left.margin(eps_2) >= T::zero()
            && self.right.margin(eps_2) >= T::zero()
    }
}

pub(crate) fn window_at<T: Scalar>(
    data: &RiemannData<T>,
    k: Kinematics<T>,
    rho_1: T,
) -> FeasibilityRecord<T> {
    let (rm, rp) = (data.rho_minus, data.rho_plus);
    let (vm, vp) = (data.v_minus2(), data.v_plus2());
    let eos = &data.eos;
    let Kinematics {
        nu_minus,
        nu_plus,
        beta,
        eps_1,
    } = k;

    // left: (beta - v_-2) P(rho_-, rho_1)
    //   <= eps_1 rho_1 (v_-2 + beta) - (eps_1 + eps_2) rho_- rho_1 (beta - v_-2) / (rho_- - rho_1)
    let q_left = rm * rho_1 * (beta - vm) / (rm - rho_1);
    let left = EnergyConstraint {
        coeff: q_left,
        rhs: eps_1 * rho_1 * (vm + beta)
            - eps_1 * q_left
            - (beta - vm) * eos.dissipation(rm, rho_1),
    };
    // right: (v_+2 - beta) P(rho_1, rho_+)
    //   <= -eps_1 rho_1 (v_+2 + beta) + (eps_1 + eps_2) rho_1 rho_+ (v_+2 - beta) / (rho_1 - rho_+)
    let q_right = rho_1 * rp * (vp - beta) / (rho_1 - rp);
    let right = EnergyConstraint {
        coeff: -q_right,
        rhs: -eps_1 * rho_1 * (vp + beta) + eps_1 * q_right
            - (vp - beta) * eos.dissipation(rho_1, rp),
    };

    let mut lower = T::zero();
    let mut lower_source = BoundSource::Positivity;
    let mut upper = T::infinity();
    let mut upper_source = BoundSource::Unbounded;
    for (c, src) in [
        (left, BoundSource::LeftEnergy),
        (right, BoundSource::RightEnergy),
    ] {
        if c.coeff > T::zero() {
            let bound = c.rhs / c.coeff;
            if bound < upper {
                upper = bound;
                upper_source = src;
            }
        } else if c.coeff < T::zero() {
            let bound = c.rhs / c.coeff;
            if bound > lower {
                lower = bound;
                lower_source = src;
            }
        } else if c.rhs < T::zero() {
            upper = T::neg_infinity();
            upper_source = src;
        }
    }
    let feasible = eps_1 > T::zero() && lower < upper;

    FeasibilityRecord {
        rho_1,
        nu_minus,
        nu_plus,
        beta,
        eps_1,
        sign_beta_minus: Sign::of(beta - vm),
        sign_plus_beta: Sign::of(vp - beta),
        eps2_lower: lower,
        eps2_upper: upper,
        lower_source,
        upper_source,
        left,
        right,
        feasible,
    }
}

pub fn eps2_window<T: Scalar>(data: &RiemannData<T>, rho_1: T) -> Result<FeasibilityRecord<T>> {
    eps2_window_with(data, rho_1, &Tolerances::default())
}

/// Kinematics plus the `eps_2` window at `rho_1`. Same preconditions as
/// [`kinematics`](super::kinematics).
pub fn eps2_window_with<T: Scalar>(
    data: &RiemannData<T>,
    rho_1: T,
    tol: &Tolerances<T>,
) -> Result<FeasibilityRecord<T>> {
    let branch = Branch::new(data, tol)?;
    branch.check_inside(rho_1)?;
    Ok(window_at(data, branch.eval(data, rho_1), rho_1))
}
