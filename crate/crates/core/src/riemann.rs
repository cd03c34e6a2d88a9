//! Classical self-similar Riemann solver for the normal velocity system:
//! admissible wave curves, middle state and classification of the fan.

use serde::{Deserialize, Serialize};

use crate::data::RiemannData;
use crate::eos::{check_density, Eos};
use crate::error::{Error, Result};
use crate::scalar::{rel_diff, Scalar, Tolerances};

/// Characteristic family of a wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    One,
    Three,
}

/// Structure of the self-similar solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveKind {
    Constant,
    SingleShock1,
    SingleShock3,
    SingleRarefaction1,
    SingleRarefaction3,
    /// 1-shock and 3-rarefaction (region I).
    Case1ShockRarefaction,
    /// Two rarefactions (region II).
    Case2TwoRarefactions,
    /// Two shocks (region III).
    Case3TwoShocks,
    /// 1-rarefaction and 3-shock (region IV).
    Case4RarefactionShock,
    Vacuum,
}

impl WaveKind {
    pub const ALL: [WaveKind; 10] = [
        WaveKind::Constant,
        WaveKind::SingleShock1,
        WaveKind::SingleShock3,
        WaveKind::SingleRarefaction1,
        WaveKind::SingleRarefaction3,
        WaveKind::Case1ShockRarefaction,
        WaveKind::Case2TwoRarefactions,
        WaveKind::Case3TwoShocks,
        WaveKind::Case4RarefactionShock,
        WaveKind::Vacuum,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            WaveKind::Constant => "Constant",
            WaveKind::SingleShock1 => "SingleShock1",
            WaveKind::SingleShock3 => "SingleShock3",
            WaveKind::SingleRarefaction1 => "SingleRarefaction1",
            WaveKind::SingleRarefaction3 => "SingleRarefaction3",
            WaveKind::Case1ShockRarefaction => "Case1_ShockRarefaction",
            WaveKind::Case2TwoRarefactions => "Case2_TwoRarefactions",
            WaveKind::Case3TwoShocks => "Case3_TwoShocks",
            WaveKind::Case4RarefactionShock => "Case4_RarefactionShock",
            WaveKind::Vacuum => "Vacuum",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == tag)
    }

    /// One shock and one rarefaction: the kinds where a fan subsolution is
    /// searched for.
    pub fn is_shock_rarefaction(self) -> bool {
        matches!(
            self,
            WaveKind::Case1ShockRarefaction | WaveKind::Case4RarefactionShock
        )
    }
}

impl std::fmt::Display for WaveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Speeds of one wave of the fan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WaveSpeed<T> {
    /// Zero-strength wave.
    None,
    Shock {
        speed: T,
    },
    Rarefaction {
        left_edge: T,
        right_edge: T,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds<T> {
    pub one: WaveSpeed<T>,
    pub three: WaveSpeed<T>,
}

/// Middle state `(rho_m, v_m2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiddleState<T> {
    pub rho: T,
    pub v2: T,
}

/// Classified self-similar solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveFan<T> {
    pub kind: WaveKind,
    pub middle: Option<MiddleState<T>>,
    pub speeds: Option<WaveSpeeds<T>>,
}

/// Normal velocity on the admissible wave curve of `family` through
/// `anchor = (rho_a, v_a2)`, evaluated at density `rho`.
///
/// The 1-curve collects the states reachable from a left anchor, the 3-curve
/// the states that reach a right anchor; family 1 is decreasing in `rho`,
/// family 3 increasing.
pub fn wave_curve<T: Scalar>(family: Family, anchor: (T, T), rho: T, eos: &Eos<T>) -> Result<T> {
    check_density(anchor.0)?;
    check_density(rho)?;
    Ok(curve(family, anchor, rho, eos))
}

fn curve<T: Scalar>(family: Family, (rho_a, v_a): (T, T), rho: T, eos: &Eos<T>) -> T {
    let jump = if rho > rho_a {
        shock_jump(rho_a, rho, eos)
    } else {
        // integral of c(s)/s from rho to rho_a
        eos.phi(rho_a) - eos.phi(rho)
    };
    match (family, rho > rho_a) {
        (Family::One, true) => v_a - jump,
        (Family::One, false) => v_a + jump,
        (Family::Three, true) => v_a + jump,
        (Family::Three, false) => v_a - jump,
    }
}

/// `sqrt((rho - rho_a)(p(rho) - p(rho_a)) / (rho rho_a))`.
fn shock_jump<T: Scalar>(rho_a: T, rho: T, eos: &Eos<T>) -> T {
    ((rho - rho_a) * (eos.p(rho) - eos.p(rho_a)) / (rho * rho_a))
        .max(T::zero())
        .sqrt()
}

/// `true` when the two rarefactions open a vacuum between the states.
pub fn is_vacuum<T: Scalar>(data: &RiemannData<T>) -> bool {
    match data.eos.rarefaction_potential_at_zero() {
        None => false,
        Some(phi0) => {
            let eos = &data.eos;
            let reach = eos.phi(data.rho_minus) - phi0 + eos.phi(data.rho_plus) - phi0;
            data.v_plus2() - data.v_minus2() >= reach
        }
    }
}

/// Intersection of the 1-curve through the left state with the 3-curve
/// through the right state, or `None` in the vacuum case.
pub fn solve_middle_state<T: Scalar>(data: &RiemannData<T>) -> Result<Option<MiddleState<T>>> {
    if is_vacuum(data) {
        return Ok(None);
    }
    let eos = &data.eos;
    let left = (data.rho_minus, data.v_minus2());
    let right = (data.rho_plus, data.v_plus2());
    let f = |rho: T| curve(Family::One, left, rho, eos) - curve(Family::Three, right, rho, eos);

    if data.rho_minus == data.rho_plus && data.v_minus2() == data.v_plus2() {
        return Ok(Some(MiddleState {
            rho: data.rho_minus,
            v2: data.v_minus2(),
        }));
    }

    // f is strictly decreasing; expand geometrically until it changes sign
    let two = T::lit(2.0);
    let (min_rho, max_rho) = (T::lit(1e-12), T::lit(1e12));
    let mut lo = data.rho_minus.min(data.rho_plus);
    let mut hi = data.rho_minus.max(data.rho_plus);
    while f(lo) < T::zero() {
        if lo <= min_rho {
            return Err(Error::Numerical(format!(
                "middle state bracket: curves still apart at rho = {lo} (f = {})",
                f(lo)
            )));
        }
        lo = (lo / two).max(min_rho);
    }
    while f(hi) > T::zero() {
        if hi >= max_rho {
            return Err(Error::Numerical(format!(
                "middle state bracket: curves still apart at rho = {hi} (f = {})",
                f(hi)
            )));
        }
        hi = (hi * two).min(max_rho);
    }

    // bisect down to adjacent floats
    for _ in 0..400 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == T::zero() {
            lo = mid;
            hi = mid;
            break;
        }
        if fm > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let rho = if f(lo).abs() <= f(hi).abs() { lo } else { hi };
    let v2 = curve(Family::One, left, rho, eos);
    Ok(Some(MiddleState { rho, v2 }))
}

pub fn classify<T: Scalar>(data: &RiemannData<T>) -> Result<WaveFan<T>> {
    classify_with(data, &Tolerances::default())
}

/// Classifies the self-similar solution. Simple-wave kinds win within the
/// boundary slack of `tol`.
pub fn classify_with<T: Scalar>(data: &RiemannData<T>, tol: &Tolerances<T>) -> Result<WaveFan<T>> {
    let (rm, rp) = (data.rho_minus, data.rho_plus);
    let (vm, vp) = (data.v_minus2(), data.v_plus2());
    if rm == rp && vm == vp {
        return Ok(WaveFan {
            kind: WaveKind::Constant,
            middle: Some(MiddleState { rho: rm, v2: vm }),
            speeds: Some(WaveSpeeds {
                one: WaveSpeed::None,
                three: WaveSpeed::None,
            }),
        });
    }

    let middle = match solve_middle_state(data)? {
        Some(m) => m,
        None => {
            let eos = &data.eos;
            let speeds = WaveSpeeds {
                one: WaveSpeed::Rarefaction {
                    left_edge: vm - eos.c(rm),
                    right_edge: vm + eos.phi(rm),
                },
                three: WaveSpeed::Rarefaction {
                    left_edge: vp - eos.phi(rp),
                    right_edge: vp + eos.c(rp),
                },
            };
            return Ok(WaveFan {
                kind: WaveKind::Vacuum,
                middle: None,
                speeds: Some(speeds),
            });
        }
    };

    let near_minus = (middle.rho - rm).abs() <= tol.boundary * rm;
    let near_plus = (middle.rho - rp).abs() <= tol.boundary * rp;
    let gap = vm - vp;
    let sqrt_t = data.shock_bound_sq().sqrt();
    let on_shock = rm != rp && (gap - sqrt_t).abs() <= tol.boundary * T::one().max(sqrt_t);

    let kind = if on_shock {
        if rm < rp {
            WaveKind::SingleShock1
        } else {
            WaveKind::SingleShock3
        }
    } else if near_minus && near_plus {
        WaveKind::Constant
    } else if near_minus {
        if middle.rho > rp {
            WaveKind::SingleShock3
        } else {
            WaveKind::SingleRarefaction3
        }
    } else if near_plus {
        if middle.rho > rm {
            WaveKind::SingleShock1
        } else {
            WaveKind::SingleRarefaction1
        }
    } else {
        match (middle.rho > rm, middle.rho > rp) {
            (true, false) => WaveKind::Case1ShockRarefaction,
            (false, false) => WaveKind::Case2TwoRarefactions,
            (true, true) => WaveKind::Case3TwoShocks,
            (false, true) => WaveKind::Case4RarefactionShock,
        }
    };

    let speeds = wave_speeds(data, kind, &middle);
    Ok(WaveFan {
        kind,
        middle: Some(middle),
        speeds: Some(speeds),
    })
}

fn wave_speeds<T: Scalar>(
    data: &RiemannData<T>,
    kind: WaveKind,
    m: &MiddleState<T>,
) -> WaveSpeeds<T> {
    use WaveKind::*;
    let eos = &data.eos;
    let (rm, vm) = (data.rho_minus, data.v_minus2());
    let (rp, vp) = (data.rho_plus, data.v_plus2());
    let shock = |(r0, v0): (T, T), (r1, v1): (T, T)| WaveSpeed::Shock {
        speed: (r1 * v1 - r0 * v0) / (r1 - r0),
    };
    let one = match kind {
        Constant | SingleShock3 | SingleRarefaction3 => WaveSpeed::None,
        SingleShock1 => shock((rm, vm), (rp, vp)),
        Case1ShockRarefaction | Case3TwoShocks => shock((rm, vm), (m.rho, m.v2)),
        SingleRarefaction1 | Case2TwoRarefactions | Case4RarefactionShock => {
            WaveSpeed::Rarefaction {
                left_edge: vm - eos.c(rm),
                right_edge: m.v2 - eos.c(m.rho),
            }
        }
        Vacuum => unreachable!("vacuum handled separately"),
    };
    let three = match kind {
        Constant | SingleShock1 | SingleRarefaction1 => WaveSpeed::None,
        SingleShock3 => shock((rm, vm), (rp, vp)),
        Case3TwoShocks | Case4RarefactionShock => shock((m.rho, m.v2), (rp, vp)),
        SingleRarefaction3 | Case2TwoRarefactions | Case1ShockRarefaction => {
            WaveSpeed::Rarefaction {
                left_edge: m.v2 + eos.c(m.rho),
                right_edge: vp + eos.c(rp),
            }
        }
        Vacuum => unreachable!("vacuum handled separately"),
    };
    WaveSpeeds { one, three }
}

/// Rankine-Hugoniot check for a discontinuity between two states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockCheck<T> {
    /// Speed from the mass relation.
    pub speed: T,
    /// Relative residual of the normal momentum relation.
    pub momentum_residual: T,
}

/// Computes the shock speed from `s [rho] = [rho v]` and the relative
/// residual of `s [rho v] = [rho v^2 + p]`.
pub fn rankine_hugoniot<T: Scalar>(
    left: (T, T),
    right: (T, T),
    eos: &Eos<T>,
) -> Result<ShockCheck<T>> {
    let ((r0, v0), (r1, v1)) = (left, right);
    check_density(r0)?;
    check_density(r1)?;
    if r0 == r1 {
        return Err(Error::Domain("equal densities carry no shock".into()));
    }
    let speed = (r1 * v1 - r0 * v0) / (r1 - r0);
    let lhs = speed * (r1 * v1 - r0 * v0);
    let rhs = r1 * v1 * v1 + eos.p(r1) - r0 * v0 * v0 - eos.p(r0);
    Ok(ShockCheck {
        speed,
        momentum_residual: rel_diff(lhs, rhs),
    })
}
