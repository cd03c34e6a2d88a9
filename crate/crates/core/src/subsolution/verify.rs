//! Direct check of a fan subsolution against the full set of jump
//! relations, subsolution conditions and interface energy inequalities.
//!
//! Nothing here goes through the reduced closed forms of the kinematics or
//! window modules: every relation is evaluated from the raw parameters, so
//! the verifier can serve as an oracle for them.

use serde::{Deserialize, Serialize};

use super::fan::FanSubsolution;
use crate::data::RiemannData;
use crate::scalar::{Scalar, Tolerances};

/// Conditions checked by the verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    FanOrder,
    DensityPositive,
    BoundPositive,
    ContinuityLeft,
    MomentumTangentialLeft,
    MomentumNormalLeft,
    ContinuityRight,
    MomentumTangentialRight,
    MomentumNormalRight,
    SubsolutionTrace,
    SubsolutionDeterminant,
    EnergyLeft,
    EnergyRight,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::FanOrder => "fan_order",
            Condition::DensityPositive => "density_positive",
            Condition::BoundPositive => "bound_positive",
            Condition::ContinuityLeft => "continuity_left",
            Condition::MomentumTangentialLeft => "momentum_tangential_left",
            Condition::MomentumNormalLeft => "momentum_normal_left",
            Condition::ContinuityRight => "continuity_right",
            Condition::MomentumTangentialRight => "momentum_tangential_right",
            Condition::MomentumNormalRight => "momentum_normal_right",
            Condition::SubsolutionTrace => "subsolution_trace",
            Condition::SubsolutionDeterminant => "subsolution_determinant",
            Condition::EnergyLeft => "energy_left",
            Condition::EnergyRight => "energy_right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqualityCheck<T> {
    pub condition: Condition,
    pub lhs: T,
    pub rhs: T,
    /// `|lhs - rhs|` divided by `max(1, sum of |terms|)`.
    pub residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck<T> {
    pub condition: Condition,
    /// Positive iff the strict inequality holds.
    pub margin: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport<T> {
    pub equalities: Vec<EqualityCheck<T>>,
    pub inequalities: Vec<InequalityCheck<T>>,
    pub tolerance: T,
    pub pass: bool,
}

impl<T: Scalar> ResidualReport<T> {
    pub fn failures(&self) -> Vec<Condition> {
        let eq = self
            .equalities
            .iter()
            .filter(|e| !(e.residual <= self.tolerance))
            .map(|e| e.condition);
        let ineq = self
            .inequalities
            .iter()
            .filter(|i| !(i.margin > T::zero()))
            .map(|i| i.condition);
        eq.chain(ineq).collect()
    }

    pub fn max_equality_residual(&self) -> T {
        self.equalities.iter().fold(T::zero(), |m, e| {
            if e.residual > m || e.residual.is_nan() {
                e.residual
            } else {
                m
            }
        })
    }

    pub fn equality(&self, c: Condition) -> Option<&EqualityCheck<T>> {
        self.equalities.iter().find(|e| e.condition == c)
    }

    pub fn inequality(&self, c: Condition) -> Option<&InequalityCheck<T>> {
        self.inequalities.iter().find(|e| e.condition == c)
    }
}

struct Builder<T> {
    equalities: Vec<EqualityCheck<T>>,
    inequalities: Vec<InequalityCheck<T>>,
}

impl<T: Scalar> Builder<T> {
    fn equality(&mut self, condition: Condition, lhs: &[T], rhs: &[T]) {
        let sum = |xs: &[T]| xs.iter().fold(T::zero(), |a, &x| a + x);
        let abs_sum = |xs: &[T]| xs.iter().fold(T::zero(), |a, &x| a + x.abs());
        let (l, r) = (sum(lhs), sum(rhs));
        let scale = T::one().max(abs_sum(lhs) + abs_sum(rhs));
        self.equalities.push(EqualityCheck {
            condition,
            lhs: l,
            rhs: r,
            residual: (l - r).abs() / scale,
        });
    }

    fn inequality(&mut self, condition: Condition, margin: T) {
        self.inequalities
            .push(InequalityCheck { condition, margin });
    }
}

pub fn verify_subsolution<T: Scalar>(
    data: &RiemannData<T>,
    sub: &FanSubsolution<T>,
) -> ResidualReport<T> {
    verify_subsolution_with(data, sub, &Tolerances::default())
}

/// Evaluates every condition for `sub` to be an admissible fan subsolution
/// of `data`. Passes iff all equality residuals are within
/// `tol.equality` and all inequality margins are strictly positive.
pub fn verify_subsolution_with<T: Scalar>(
    data: &RiemannData<T>,
    sub: &FanSubsolution<T>,
    tol: &Tolerances<T>,
) -> ResidualReport<T> {
    let half = T::lit(0.5);
    let eos = &data.eos;
    let (rm, rp) = (data.rho_minus, data.rho_plus);
    let [vm1, vm2] = data.v_minus;
    let [vp1, vp2] = data.v_plus;
    let FanSubsolution {
        nu_minus: nm,
        nu_plus: np,
        rho_1: r1,
        alpha,
        beta,
        gamma_1: g1,
        gamma_2: g2,
        c,
    } = *sub;

    let mut b = Builder {
        equalities: Vec::with_capacity(6),
        inequalities: Vec::with_capacity(7),
    };

    b.inequality(Condition::FanOrder, np - nm);
    b.inequality(Condition::DensityPositive, r1);
    b.inequality(Condition::BoundPositive, c);

    // pressures and energies are only evaluated at positive densities
    let r1_ok = r1 > T::zero();
    let (pm, pp) = (eos.p(rm), eos.p(rp));
    let (p1, e1) = if r1_ok {
        (eos.p(r1), eos.e(r1))
    } else {
        (T::nan(), T::nan())
    };
    let (em, ep) = (eos.e(rm), eos.e(rp));

    // left interface
    b.equality(
        Condition::ContinuityLeft,
        &[nm * rm, -nm * r1],
        &[rm * vm2, -r1 * beta],
    );
    b.equality(
        Condition::MomentumTangentialLeft,
        &[nm * rm * vm1, -nm * r1 * alpha],
        &[rm * vm1 * vm2, -r1 * g2],
    );
    b.equality(
        Condition::MomentumNormalLeft,
        &[nm * rm * vm2, -nm * r1 * beta],
        &[rm * vm2 * vm2, r1 * g1, pm, -p1, -r1 * c * half],
    );

    // right interface
    b.equality(
        Condition::ContinuityRight,
        &[np * r1, -np * rp],
        &[r1 * beta, -rp * vp2],
    );
    b.equality(
        Condition::MomentumTangentialRight,
        &[np * r1 * alpha, -np * rp * vp1],
        &[r1 * g2, -rp * vp1 * vp2],
    );
    b.equality(
        Condition::MomentumNormalRight,
        &[np * r1 * beta, -np * rp * vp2],
        &[-r1 * g1, -rp * vp2 * vp2, p1, -pp, r1 * c * half],
    );

    // v1 (x) v1 - u1 < C/2 Id
    b.inequality(Condition::SubsolutionTrace, c - alpha * alpha - beta * beta);
    let d11 = c * half - alpha * alpha + g1;
    let d22 = c * half - beta * beta - g1;
    let off = g2 - alpha * beta;
    b.inequality(Condition::SubsolutionDeterminant, d11 * d22 - off * off);

    // energy inequalities, margin = rhs - lhs
    let kin_m = (vm1 * vm1 + vm2 * vm2) * half;
    let kin_p = (vp1 * vp1 + vp2 * vp2) * half;
    let lhs_left = nm * (rm * em - r1 * e1) + nm * (rm * kin_m - r1 * c * half);
    let rhs_left =
        ((rm * em + pm) * vm2 - (r1 * e1 + p1) * beta) + (rm * vm2 * kin_m - r1 * beta * c * half);
    b.inequality(Condition::EnergyLeft, rhs_left - lhs_left);

    let lhs_right = np * (r1 * e1 - rp * ep) + np * (r1 * c * half - rp * kin_p);
    let rhs_right =
        ((r1 * e1 + p1) * beta - (rp * ep + pp) * vp2) + (r1 * beta * c * half - rp * vp2 * kin_p);
    b.inequality(Condition::EnergyRight, rhs_right - lhs_right);

    let mut report = ResidualReport {
        equalities: b.equalities,
        inequalities: b.inequalities,
        tolerance: tol.equality,
        pass: false,
    };
    report.pass = report.failures().is_empty();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eos::Eos;
    use crate::subsolution::reconstruct;

    fn golden() -> (RiemannData<f64>, FanSubsolution<f64>) {
        let d = RiemannData::planar(1.0, 3.3, 4.0, 0.0, 0.0, Eos::new(2.0).unwrap()).unwrap();
        let s = reconstruct(&d, 2.0, 1.0, 0.0).unwrap();
        (d, s)
    }

    #[test]
    fn golden_subsolution_passes() {
        let (d, s) = golden();
        let r = verify_subsolution(&d, &s);
        assert!(r.pass, "{:?}", r.failures());
        assert!(r.max_equality_residual() < 1e-9);
        let cr = r.equality(Condition::ContinuityRight).unwrap();
        assert!((cr.lhs - 1.634314575050762).abs() < 1e-9);
        let mr = r.equality(Condition::MomentumNormalRight).unwrap();
        assert!((mr.lhs + 1.335492065111676).abs() < 1e-9);
        assert!((mr.rhs - mr.lhs).abs() < 1e-12);
    }

    #[test]
    fn perturbed_beta_fails_continuity() {
        let (d, mut s) = golden();
        s.beta += 0.01;
        let r = verify_subsolution(&d, &s);
        assert!(!r.pass);
        assert!(r.equality(Condition::ContinuityLeft).unwrap().residual > 1e-3);
        assert!(r.failures().contains(&Condition::ContinuityLeft));
    }

    #[test]
    fn small_bound_fails_trace() {
        let (d, mut s) = golden();
        s.c = 0.9 * (s.alpha * s.alpha + s.beta * s.beta);
        let r = verify_subsolution(&d, &s);
        assert!(r.failures().contains(&Condition::SubsolutionTrace));
    }

    #[test]
    fn swapped_speeds_fail_order() {
        let (d, mut s) = golden();
        std::mem::swap(&mut s.nu_minus, &mut s.nu_plus);
        let r = verify_subsolution(&d, &s);
        assert!(r.failures().contains(&Condition::FanOrder));
    }

    #[test]
    fn tangential_momentum_checked() {
        let d = RiemannData::planar(1.0, 3.3, 4.0, 0.0, 1.5, Eos::new(2.0).unwrap()).unwrap();
        let mut s = reconstruct(&d, 2.0, 1.0, 1.5).unwrap();
        assert!(verify_subsolution(&d, &s).pass);
        s.gamma_2 += 0.1;
        let f = verify_subsolution(&d, &s).failures();
        assert!(f.contains(&Condition::MomentumTangentialLeft));
        assert!(f.contains(&Condition::MomentumTangentialRight));
    }

    #[test]
    fn nonpositive_density_reported_not_panicking() {
        let (d, mut s) = golden();
        s.rho_1 = -1.0;
        let r = verify_subsolution(&d, &s);
        assert!(!r.pass);
        assert!(r.failures().contains(&Condition::DensityPositive));
    }
}
