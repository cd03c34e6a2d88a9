//! Closed-form interface speeds, middle normal velocity and `eps_1` as
//! functions of the middle density.

use crate::data::{DataFunctionals, DensityOrder, RiemannData};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics<T> {
    pub nu_minus: T,
    pub nu_plus: T,
    pub beta: T,
    pub eps_1: T,
}

/// Validated inputs shared by the per-density evaluations.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Branch<T> {
    pub order: DensityOrder,
    pub f: DataFunctionals<T>,
    pub sqrt_neg_b: T,
    pub k: T,
    pub l: T,
    pub near: T,
    pub far: T,
}

impl<T: Scalar> Branch<T> {
    pub fn new(data: &RiemannData<T>, tol: &Tolerances<T>) -> Result<Self> {
        data.check_tangential(tol.equality)?;
        let order = data.order().ok_or(Error::DegenerateR {
            rho: data.rho_minus.to_f64().unwrap_or(f64::NAN),
        })?;
        let f = data.functionals();
        if !(f.b < T::zero()) {
            return Err(Error::NonNegativeB {
                b: f.b.to_f64().unwrap_or(f64::NAN),
            });
        }
        let (near, far) = data.near_far();
        Ok(Self {
            order,
            f,
            sqrt_neg_b: (-f.b).sqrt(),
            k: f.k.expect("K present when B < 0"),
            l: f.l.expect("L present when B < 0"),
            near,
            far,
        })
    }

    pub fn check_inside(&self, rho_1: T) -> Result<()> {
        if rho_1 > self.near && rho_1 < self.far {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "rho_1 = {rho_1} must lie strictly between {} and {}",
                self.near, self.far
            )))
        }
    }

    /// `eps_1` in the `K`, `L` form.
    pub fn eps_1(&self, data: &RiemannData<T>, rho_1: T) -> T {
        let (near, far) = (self.near, self.far);
        let p = &data.eos;
        let inner = self.l * (T::one() - near / rho_1).max(T::zero()).sqrt()
            - self.k * (far / rho_1 - T::one()).max(T::zero()).sqrt();
        (p.p(far) - p.p(rho_1)) / rho_1 - far / rho_1 * inner * inner
    }

    pub fn eval(&self, data: &RiemannData<T>, rho_1: T) -> Kinematics<T> {
        let (rm, rp) = (data.rho_minus, data.rho_plus);
        let (vm, vp) = (data.v_minus2(), data.v_plus2());
        let (a, r, sb) = (self.f.a, self.f.r, self.sqrt_neg_b);
        let (nu_minus, nu_plus, beta) = match self.order {
            DensityOrder::Increasing => {
                let nu_minus = a / r + sb / r * ((rp - rho_1) / (rho_1 - rm)).sqrt();
                let nu_plus = a / r - sb / r * ((rho_1 - rm) / (rp - rho_1)).sqrt();
                let beta = rp * vp / rho_1 - (rp - rho_1) * a / (r * rho_1)
                    + sb / (r * rho_1) * ((rho_1 - rm) * (rp - rho_1)).sqrt();
                (nu_minus, nu_plus, beta)
            }
            DensityOrder::Decreasing => {
                let nu_minus = a / r - sb / r * ((rho_1 - rp) / (rm - rho_1)).sqrt();
                let nu_plus = a / r + sb / r * ((rm - rho_1) / (rho_1 - rp)).sqrt();
                let beta = rm * vm / rho_1 - (rm - rho_1) * a / (r * rho_1)
                    + sb / (r * rho_1) * ((rm - rho_1) * (rho_1 - rp)).sqrt();
                (nu_minus, nu_plus, beta)
            }
        };
        let eps_1 = self.eps_1(data, rho_1);
        let k = Kinematics {
            nu_minus,
            nu_plus,
            beta,
            eps_1,
        };
        debug_assert!(
            eps_1_agrees(data, &k, rho_1, self.order),
            "eps_1 forms disagree at rho_1 = {rho_1}: {k:?}"
        );
        k
    }
}

/// Cross-check of the `K`, `L` form of `eps_1` against the form written
/// with the interface speed of the far side.
fn eps_1_agrees<T: Scalar>(
    data: &RiemannData<T>,
    k: &Kinematics<T>,
    rho_1: T,
    order: DensityOrder,
) -> bool {
    let p = &data.eos;
    let (far, nu, v) = match order {
        DensityOrder::Increasing => (data.rho_plus, k.nu_plus, data.v_plus2()),
        DensityOrder::Decreasing => (data.rho_minus, k.nu_minus, data.v_minus2()),
    };
    let first = (p.p(far) - p.p(rho_1)) / rho_1;
    let second = far * (far - rho_1) / (rho_1 * rho_1) * (nu - v) * (nu - v);
    let other = first - second;
    let scale = T::one() + first.abs() + second.abs();
    let tol = T::lit(1e-9).max(T::epsilon().sqrt());
    !(k.eps_1 - other).abs().is_finite() || (k.eps_1 - other).abs() <= tol * scale
}

pub fn kinematics<T: Scalar>(data: &RiemannData<T>, rho_1: T) -> Result<Kinematics<T>> {
    kinematics_with(data, rho_1, &Tolerances::default())
}

/// Interface speeds `nu_-`, `nu_+`, middle normal velocity `beta` and
/// `eps_1` for middle density `rho_1`.
///
/// Requires `B < 0`, distinct densities, a common first velocity component
/// and `rho_1` strictly between the two densities. The speeds always satisfy
/// `nu_- < nu_+`.
pub fn kinematics_with<T: Scalar>(
    data: &RiemannData<T>,
    rho_1: T,
    tol: &Tolerances<T>,
) -> Result<Kinematics<T>> {
    let branch = Branch::new(data, tol)?;
    branch.check_inside(rho_1)?;
    Ok(branch.eval(data, rho_1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eos::Eos;
    use crate::scalar::rel_diff;

    fn worked() -> RiemannData<f64> {
        RiemannData::planar(1.0, 3.3, 4.0, 0.0, 0.0, Eos::new(2.0).unwrap()).unwrap()
    }

    #[test]
    fn worked_example() {
        let k = kinematics(&worked(), 2.0).unwrap();
        // frozen from an independent 40-digit evaluation
        assert!((k.nu_minus + 1.665685424949238).abs() < 1e-12);
        assert!((k.nu_plus + 0.817157287525381).abs() < 1e-12);
        assert!((k.beta - 0.817157287525381).abs() < 1e-12);
        assert!((k.eps_1 - 4.664507934888324).abs() < 1e-12);
    }

    #[test]
    fn continuity_identities_hold() {
        let d = worked();
        for &rho_1 in &[1.01, 1.5, 2.0, 3.0, 3.99] {
            let k = kinematics(&d, rho_1).unwrap();
            let left = rel_diff(k.nu_minus * (1.0 - rho_1), 3.3 - rho_1 * k.beta);
            let right = rel_diff(k.nu_plus * (rho_1 - 4.0), rho_1 * k.beta - 0.0);
            assert!(left < 1e-10 && right < 1e-10, "rho_1 = {rho_1}");
            assert!(k.nu_minus < k.nu_plus);
        }
    }

    #[test]
    fn eps_1_negative_near_far_side() {
        let k = kinematics(&worked(), 4.0 - 1e-9).unwrap();
        assert!(k.eps_1 < 0.0);
    }

    #[test]
    fn decreasing_order_identities() {
        let d = RiemannData::planar(4.0, 1.0, 1.0, -1.0, 0.0, Eos::new(1.4).unwrap()).unwrap();
        for &rho_1 in &[1.2, 2.0, 3.5] {
            let k = kinematics(&d, rho_1).unwrap();
            assert!(k.nu_minus < k.nu_plus);
            assert!(rel_diff(k.nu_minus * (4.0 - rho_1), 4.0 * 1.0 - rho_1 * k.beta) < 1e-10);
            assert!(rel_diff(k.nu_plus * (rho_1 - 1.0), rho_1 * k.beta + 1.0) < 1e-10);
        }
    }

    #[test]
    fn precondition_errors() {
        let d = worked();
        assert!(matches!(kinematics(&d, 1.0), Err(Error::Domain(_))));
        assert!(matches!(kinematics(&d, 4.5), Err(Error::Domain(_))));
        let shock = RiemannData::planar(1.0, 3.5, 4.0, 0.0, 0.0, Eos::new(2.0).unwrap()).unwrap();
        assert!(matches!(
            kinematics(&shock, 2.0),
            Err(Error::NonNegativeB { .. })
        ));
        let flat = RiemannData::planar(2.0, 1.0, 2.0, 0.0, 0.0, Eos::new(2.0).unwrap()).unwrap();
        assert!(matches!(
            kinematics(&flat, 2.0),
            Err(Error::DegenerateR { .. })
        ));
        let skew =
            RiemannData::new(1.0, [0.0, 3.3], 4.0, [1.0, 0.0], Eos::new(2.0).unwrap()).unwrap();
        assert!(matches!(
            kinematics(&skew, 2.0),
            Err(Error::TangentialMismatch { .. })
        ));
    }

    #[test]
    fn f32_tracks_f64() {
        let d32 =
            RiemannData::planar(1.0_f32, 3.3, 4.0, 0.0, 0.0, Eos::new(2.0_f32).unwrap()).unwrap();
        let k32 = kinematics(&d32, 2.0).unwrap();
        let k64 = kinematics(&worked(), 2.0).unwrap();
        assert!((k32.eps_1 as f64 - k64.eps_1).abs() < 1e-4);
        assert!((k32.beta as f64 - k64.beta).abs() < 1e-5);
    }
}
