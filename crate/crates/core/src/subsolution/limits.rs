//! Sign change of `eps_1` and the closed-form limits of the subsolution
//! quantities as the velocity gap approaches the shock bound.

use super::kinematics::Branch;
use crate::data::{DensityOrder, RiemannData};
use crate::eos::{check_density, Eos};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerances};

pub fn epsilon1_sign_change<T: Scalar>(data: &RiemannData<T>) -> Result<T> {
    epsilon1_sign_change_with(data, &Tolerances::default())
}

/// The unique density `rho_bar` where `eps_1` changes sign: positive between
/// the smaller density and `rho_bar`, negative beyond.
///
/// Needs `B < 0`, distinct densities and `u = v_+2 - v_-2 < 0`.
pub fn epsilon1_sign_change_with<T: Scalar>(
    data: &RiemannData<T>,
    tol: &Tolerances<T>,
) -> Result<T> {
    let branch = Branch::new(data, tol)?;
    if !(branch.f.u < T::zero()) {
        return Err(Error::Precondition(format!(
            "u = v_plus2 - v_minus2 = {} must be negative",
            branch.f.u
        )));
    }
    let (near, far) = (branch.near, branch.far);
    let delta = tol.endpoint * (far - near);
    let eps = |rho: T| branch.eps_1(data, rho);

    let mut lo = match branch.f.rho_tilde {
        Some(rt) if rt > near && rt < far && eps(rt) > T::zero() => rt,
        _ => near + delta,
    };
    let mut hi = far - delta;
    if !(eps(lo) > T::zero()) || !(eps(hi) < T::zero()) {
        return Err(Error::Numerical(format!(
            "eps_1 has no sign change on [{lo}, {hi}]: eps_1 = {} .. {}",
            eps(lo),
            eps(hi)
        )));
    }
    let two = T::lit(2.0);
    for _ in 0..300 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        if eps(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / two)
}

/// Limits as `u -> -sqrt(T)` at a fixed middle density.
///
/// `m1_bar` is the limit of the upper bound on `eps_2` and `m2_bar` the limit
/// of the lower bound. For `rho_minus > rho_plus` the roles of the left and
/// right energy inequalities swap, so `m1_bar` comes from the right
/// interface there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitQuantities<T> {
    pub beta_bar: T,
    pub eps1_bar: T,
    pub m1_bar: T,
    pub m2_bar: T,
}

/// `lim eps_1` as `u -> -sqrt(T)`. Defined on the closed density interval and
/// zero at both of its ends.
pub fn eps1_bar<T: Scalar>(rho_minus: T, rho_plus: T, eos: &Eos<T>, rho_1: T) -> Result<T> {
    let (near, far) = checked_interval(rho_minus, rho_plus, rho_1)?;
    Ok(eps1_bar_unchecked(
        rho_minus, rho_plus, near, far, eos, rho_1,
    ))
}

fn eps1_bar_unchecked<T: Scalar>(rm: T, rp: T, near: T, far: T, eos: &Eos<T>, rho_1: T) -> T {
    let r = rm - rp;
    let t = (rp - rm) * (eos.p(rp) - eos.p(rm)) / (rp * rm);
    (eos.p(far) - eos.p(rho_1)) / rho_1
        - far * near * near * (far - rho_1) * t / (rho_1 * rho_1 * r * r)
}

fn checked_interval<T: Scalar>(rm: T, rp: T, rho_1: T) -> Result<(T, T)> {
    check_density(rm)?;
    check_density(rp)?;
    if rm == rp {
        return Err(Error::DegenerateR {
            rho: rm.to_f64().unwrap_or(f64::NAN),
        });
    }
    let (near, far) = if rm < rp { (rm, rp) } else { (rp, rm) };
    if !(rho_1 >= near && rho_1 <= far) {
        return Err(Error::Domain(format!(
            "rho_1 = {rho_1} must lie in [{near}, {far}]"
        )));
    }
    Ok((near, far))
}

/// Closed-form limits at `rho_1`. Endpoint densities are accepted; the
/// `P` terms whose prefactor vanishes there are dropped.
pub fn limit_quantities<T: Scalar>(
    rho_minus: T,
    rho_plus: T,
    v_plus2: T,
    eos: &Eos<T>,
    rho_1: T,
) -> Result<LimitQuantities<T>> {
    let (near, far) = checked_interval(rho_minus, rho_plus, rho_1)?;
    let (rm, rp, r1, vp) = (rho_minus, rho_plus, rho_1, v_plus2);
    let r = rm - rp;
    let t = (rp - rm) * (eos.p(rp) - eos.p(rm)) / (rp * rm);
    let st = t.sqrt();
    let two = T::lit(2.0);

    let beta_bar = vp + rm * (r1 - rp) * st / (r * r1);
    let e1 = eps1_bar_unchecked(rm, rp, near, far, eos, r1);
    // (r1 - a) P(a, r1) / (r1 a), zero at r1 == a
    let weighted_p = |a: T| {
        if r1 == a {
            T::zero()
        } else {
            (r1 - a) / (r1 * a) * eos.dissipation(a, r1)
        }
    };

    let order = if rm < rp {
        DensityOrder::Increasing
    } else {
        DensityOrder::Decreasing
    };
    let (m1_bar, m2_bar) = match order {
        DensityOrder::Increasing => {
            let m1 = weighted_p(rm) - e1 * r1 / (rm * rp) * (two * rm - rp + two * r * vp / st);
            let m2 = weighted_p(rp) - e1 * r1 / (rm * rp) * (rm + two * r * vp / st);
            (m1, m2)
        }
        DensityOrder::Decreasing => {
            // the quotients (beta+v)/(beta-v) times the vanishing density
            // gap are simplified so both ends stay finite
            let vm_bar = vp + st;
            let lower = weighted_p(rm) - e1 * (beta_bar + vm_bar) * r * r1 / (st * rm * rp) - e1;
            let upper = weighted_p(rp) - e1 * (vp + beta_bar) * r * r1 / (rm * rp * st) - e1;
            (upper, lower)
        }
    };
    Ok(LimitQuantities {
        beta_bar,
        eps1_bar: e1,
        m1_bar,
        m2_bar,
    })
}
