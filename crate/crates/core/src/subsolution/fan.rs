use serde::{Deserialize, Serialize};

use super::window::eps2_window_with;
use crate::data::RiemannData;
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerances};

/// Parameters of a piecewise constant fan subsolution.
///
/// The middle wedge carries density `rho_1`, velocity `(alpha, beta)` and
/// the traceless symmetric matrix `[[gamma_1, gamma_2], [gamma_2, -gamma_1]]`
/// with kinetic-energy bound `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanSubsolution<T> {
    pub nu_minus: T,
    pub nu_plus: T,
    pub rho_1: T,
    pub alpha: T,
    pub beta: T,
    pub gamma_1: T,
    pub gamma_2: T,
    pub c: T,
}

impl<T: Scalar> FanSubsolution<T> {
    /// `eps_1 = C/2 - gamma_1 - beta^2`.
    pub fn eps_1(&self) -> T {
        self.c / T::lit(2.0) - self.gamma_1 - self.beta * self.beta
    }

    /// `eps_2 = C - alpha^2 - beta^2 - eps_1`.
    pub fn eps_2(&self) -> T {
        self.c - self.alpha * self.alpha - self.beta * self.beta - self.eps_1()
    }
}

pub fn reconstruct<T: Scalar>(
    data: &RiemannData<T>,
    rho_1: T,
    eps_2: T,
    alpha: T,
) -> Result<FanSubsolution<T>> {
    reconstruct_with(data, rho_1, eps_2, alpha, &Tolerances::default())
}

/// Builds the subsolution for middle density `rho_1`, slack `eps_2` and
/// first velocity component `alpha`.
///
/// `eps_2` must lie in the window of [`eps2_window`](super::eps2_window) and
/// `alpha` must equal the common first velocity component of the data.
pub fn reconstruct_with<T: Scalar>(
    data: &RiemannData<T>,
    rho_1: T,
    eps_2: T,
    alpha: T,
    tol: &Tolerances<T>,
) -> Result<FanSubsolution<T>> {
    let rec = eps2_window_with(data, rho_1, tol)?;
    let v1 = data.v_minus[0];
    if (alpha - v1).abs() > tol.equality * T::one().max(v1.abs()) {
        return Err(Error::Constraint {
            constraint: "alpha = v_minus1 = v_plus1",
            detail: format!("alpha = {alpha}, common first component = {v1}"),
        });
    }
    if !(rec.eps_1 > T::zero()) {
        return Err(Error::Constraint {
            constraint: "eps_1 > 0",
            detail: format!("eps_1 = {} at rho_1 = {rho_1}", rec.eps_1),
        });
    }
    if !(eps_2 > T::zero()) {
        return Err(Error::Constraint {
            constraint: "eps_2 > 0",
            detail: format!("eps_2 = {eps_2}"),
        });
    }
    for (c, name) in [
        (rec.left, "left interface energy inequality"),
        (rec.right, "right interface energy inequality"),
    ] {
        if c.margin(eps_2) < T::zero() {
            return Err(Error::Constraint {
                constraint: name,
                detail: format!(
                    "eps_2 = {eps_2} outside window ({}, {}) at rho_1 = {rho_1}",
                    rec.eps2_lower, rec.eps2_upper
                ),
            });
        }
    }
    let beta = rec.beta;
    let eps_1 = rec.eps_1;
    let c = alpha * alpha + beta * beta + eps_1 + eps_2;
    Ok(FanSubsolution {
        nu_minus: rec.nu_minus,
        nu_plus: rec.nu_plus,
        rho_1,
        alpha,
        beta,
        gamma_1: c / T::lit(2.0) - beta * beta - eps_1,
        gamma_2: alpha * beta,
        c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eos::Eos;

    fn worked(v1: f64) -> RiemannData<f64> {
        RiemannData::planar(1.0, 3.3, 4.0, 0.0, v1, Eos::new(2.0).unwrap()).unwrap()
    }

    #[test]
    fn worked_example() {
        let s = reconstruct(&worked(0.0), 2.0, 1.0, 0.0).unwrap();
        // beta^2 + eps_1 + 1 with beta = 0.8171572875..., eps_1 = 4.6645079348...
        assert!((s.c - 6.332253967444162).abs() < 1e-12);
        assert!((s.gamma_1 + 2.166126983722081).abs() < 1e-12);
        assert_eq!(s.gamma_2, 0.0);
        assert!((s.eps_2() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_2_follows_alpha() {
        let s = reconstruct(&worked(1.0), 2.0, 1.0, 1.0).unwrap();
        assert!((s.gamma_2 - s.beta).abs() < 1e-15);
        assert!((s.gamma_2 - 0.817157287525381).abs() < 1e-12);
    }

    #[test]
    fn determinant_factors() {
        let s = reconstruct(&worked(0.0), 2.0, 1.0, 0.0).unwrap();
        let half = s.c / 2.0;
        let det = (half - s.alpha * s.alpha + s.gamma_1) * (half - s.beta * s.beta - s.gamma_1)
            - (s.gamma_2 - s.alpha * s.beta).powi(2);
        assert!((det - s.eps_1() * s.eps_2()).abs() < 1e-12);
        assert!((det - 4.664507934888324).abs() < 1e-11);
    }

    #[test]
    fn rejects_eps2_outside_window() {
        let err = reconstruct(&worked(0.0), 2.0, 3.6, 0.0).unwrap_err();
        assert!(matches!(
            err,
            Error::Constraint {
                constraint: "left interface energy inequality",
                ..
            }
        ));
        let err = reconstruct(&worked(0.0), 2.0, -0.1, 0.0).unwrap_err();
        assert!(matches!(
            err,
            Error::Constraint {
                constraint: "eps_2 > 0",
                ..
            }
        ));
        let err = reconstruct(&worked(0.0), 2.0, 1.0, 0.5).unwrap_err();
        assert!(matches!(
            err,
            Error::Constraint {
                constraint: "alpha = v_minus1 = v_plus1",
                ..
            }
        ));
        let err = reconstruct(&worked(0.0), 3.99, 0.1, 0.0).unwrap_err();
        assert!(matches!(
            err,
            Error::Constraint {
                constraint: "eps_1 > 0",
                ..
            }
        ));
    }
}
