#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riemann_fan::subsolution::{
    eps2_window, kinematics, verify_subsolution, Condition, EnergyConstraint, FanSubsolution,
};
use riemann_fan::threshold::{scan_feasible_with, ScanConfig};
use riemann_fan::{Eos, RiemannData};

pub const GAMMAS: [f64; 4] = [1.2, 1.4, 2.0, 2.5];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn shock_bound(rm: f64, rp: f64, eos: &Eos<f64>) -> f64 {
    RiemannData::planar(rm, 0.0, rp, 0.0, 0.0, *eos)
        .unwrap()
        .shock_bound_sq()
        .sqrt()
}

/// Density pair with the smaller one in `[0.5, 2]`, ratio in `[1.5, 5]` and a
/// random ordering.
pub fn densities(r: &mut ChaCha8Rng) -> (f64, f64) {
    let small = r.gen_range(0.5..2.0);
    let large = small * r.gen_range(1.5..5.0);
    if r.gen_bool(0.5) {
        (small, large)
    } else {
        (large, small)
    }
}

pub struct Sample {
    pub rho_minus: f64,
    pub rho_plus: f64,
    pub v_plus2: f64,
    pub eos: Eos<f64>,
    pub sqrt_t: f64,
}

pub fn sample(r: &mut ChaCha8Rng) -> Sample {
    let (rho_minus, rho_plus) = densities(r);
    let eos = Eos::new(GAMMAS[r.gen_range(0..GAMMAS.len())]).unwrap();
    Sample {
        rho_minus,
        rho_plus,
        v_plus2: r.gen_range(-3.0..3.0),
        eos,
        sqrt_t: shock_bound(rho_minus, rho_plus, &eos),
    }
}

impl Sample {
    pub fn data(&self, w: f64, v1: f64) -> RiemannData<f64> {
        RiemannData::planar(
            self.rho_minus,
            self.v_plus2 + w,
            self.rho_plus,
            self.v_plus2,
            v1,
            self.eos,
        )
        .unwrap()
    }
}

/// A random feasible datum, middle density and `eps_2` inside its window.
pub fn feasible_reconstruction(r: &mut ChaCha8Rng) -> (RiemannData<f64>, FanSubsolution<f64>) {
    let cfg = ScanConfig {
        grid: 256,
        ..ScanConfig::default()
    };
    loop {
        let s = sample(r);
        let w = s.sqrt_t * r.gen_range(0.8..0.999);
        let data = s.data(w, r.gen_range(-2.0..2.0));
        let scan = scan_feasible_with(&data, &cfg).unwrap();
        let feasible: Vec<_> = scan.samples.iter().filter(|x| x.feasible).collect();
        if feasible.is_empty() {
            continue;
        }
        let rec = feasible[r.gen_range(0..feasible.len())];
        let hi = if rec.eps2_upper.is_finite() {
            rec.eps2_upper
        } else {
            rec.eps2_lower + 10.0
        };
        let eps_2 = rec.eps2_lower + (hi - rec.eps2_lower) * r.gen_range(0.05..0.95);
        let sub = assemble(&data, rec.rho_1, eps_2);
        return (data, sub);
    }
}

/// Subsolution parameters straight from the kinematics, without any check on
/// `eps_2`.
pub fn assemble(data: &RiemannData<f64>, rho_1: f64, eps_2: f64) -> FanSubsolution<f64> {
    let k = kinematics(data, rho_1).unwrap();
    let alpha = data.v_minus[0];
    let c = alpha * alpha + k.beta * k.beta + k.eps_1 + eps_2;
    FanSubsolution {
        nu_minus: k.nu_minus,
        nu_plus: k.nu_plus,
        rho_1,
        alpha,
        beta: k.beta,
        gamma_1: c / 2.0 - k.beta * k.beta - k.eps_1,
        gamma_2: alpha * k.beta,
        c,
    }
}

fn with_eps2(sub: &FanSubsolution<f64>, eps_2: f64) -> FanSubsolution<f64> {
    let eps_1 = sub.eps_1();
    let c = sub.alpha * sub.alpha + sub.beta * sub.beta + eps_1 + eps_2;
    FanSubsolution {
        c,
        gamma_1: c / 2.0 - sub.beta * sub.beta - eps_1,
        ..*sub
    }
}

type Mutant = (Condition, RiemannData<f64>, FanSubsolution<f64>);

/// Smallest step in a decade ladder at which `make` violates `cond` by at
/// least ten times the verifier tolerance.
fn calibrated(
    cond: Condition,
    make: impl Fn(f64) -> (RiemannData<f64>, FanSubsolution<f64>),
) -> Option<Mutant> {
    (3..=12).rev().map(|k| 10f64.powi(-k)).find_map(|delta| {
        let (d, s) = make(delta);
        let rep = verify_subsolution(&d, &s);
        let eq = rep.equality(cond)?;
        (eq.residual > 10.0 * rep.tolerance).then_some((cond, d, s))
    })
}

/// Mutations of a valid subsolution (data included) that break exactly one
/// condition. Conditions the construction cannot isolate for this datum are
/// skipped, and so are bases whose energy margins are too thin to perturb a
/// jump relation without also crossing an energy inequality.
pub fn single_violation_mutants(data: &RiemannData<f64>, sub: &FanSubsolution<f64>) -> Vec<Mutant> {
    let mut out = Vec::new();
    let base = verify_subsolution(data, sub);
    let thin = [Condition::EnergyLeft, Condition::EnergyRight]
        .iter()
        .any(|&c| base.inequality(c).unwrap().margin < 1e-4);
    if thin {
        return out;
    }
    let (rm, rp) = (data.rho_minus, data.rho_plus);
    let [vm1, vm2] = data.v_minus;
    let [vp1, vp2] = data.v_plus;
    let eos = data.eos;
    let FanSubsolution {
        rho_1: r1,
        alpha,
        beta,
        gamma_1: g1,
        gamma_2: g2,
        c,
        ..
    } = *sub;
    let (pm, pp, p1) = (
        eos.pressure(rm).unwrap(),
        eos.pressure(rp).unwrap(),
        eos.pressure(r1).unwrap(),
    );
    let left_v1 = |nm: f64, vm2: f64| r1 * (alpha * nm - g2) / (rm * (nm - vm2));
    let right_v1 = |np: f64, vp2: f64| r1 * (alpha * np - g2) / (rp * (np - vp2));
    let (sm, sp) = (vm2.abs().max(1.0), vp2.abs().max(1.0));

    // tangential momentum: move only the first velocity component
    out.extend(calibrated(Condition::MomentumTangentialLeft, |dl| {
        let mut d = *data;
        d.v_minus[0] = vm1 + dl * vm1.abs().max(1.0);
        (d, *sub)
    }));
    out.extend(calibrated(Condition::MomentumTangentialRight, |dl| {
        let mut d = *data;
        d.v_plus[0] = vp1 + dl * vp1.abs().max(1.0);
        (d, *sub)
    }));
    // continuity: normal momentum fixes nu_-, tangential momentum fixes v_-1
    out.extend(calibrated(Condition::ContinuityLeft, |dl| {
        let v = vm2 + dl * sm;
        let nm = (rm * v * v + r1 * g1 + pm - p1 - r1 * c / 2.0) / (rm * v - r1 * beta);
        let mut d = *data;
        d.v_minus = [left_v1(nm, v), v];
        (
            d,
            FanSubsolution {
                nu_minus: nm,
                ..*sub
            },
        )
    }));
    // normal momentum: continuity fixes nu_-
    out.extend(calibrated(Condition::MomentumNormalLeft, |dl| {
        let v = vm2 + dl * sm;
        let nm = (rm * v - r1 * beta) / (rm - r1);
        let mut d = *data;
        d.v_minus = [left_v1(nm, v), v];
        (
            d,
            FanSubsolution {
                nu_minus: nm,
                ..*sub
            },
        )
    }));
    out.extend(calibrated(Condition::ContinuityRight, |dl| {
        let v = vp2 + dl * sp;
        let np = (-r1 * g1 - rp * v * v + p1 - pp + r1 * c / 2.0) / (r1 * beta - rp * v);
        let mut d = *data;
        d.v_plus = [right_v1(np, v), v];
        (
            d,
            FanSubsolution {
                nu_plus: np,
                ..*sub
            },
        )
    }));
    out.extend(calibrated(Condition::MomentumNormalRight, |dl| {
        let v = vp2 + dl * sp;
        let np = (r1 * beta - rp * v) / (r1 - rp);
        let mut d = *data;
        d.v_plus = [right_v1(np, v), v];
        (
            d,
            FanSubsolution {
                nu_plus: np,
                ..*sub
            },
        )
    }));

    // eps_2 moves only C and gamma_1, keeping every jump relation; the
    // energy inequalities bound it through the raw window
    let rec = eps2_window(data, r1).unwrap();
    let eps_1 = sub.eps_1();
    let bound = |c: &EnergyConstraint<f64>| c.rhs / c.coeff;
    let outside = |b: f64, above: bool| {
        if above {
            b + 1e-6 * b.abs().max(1.0)
        } else {
            b - 1e-6 * b.abs().max(1.0)
        }
    };
    for (cond, this, other) in [
        (Condition::EnergyLeft, rec.left, rec.right),
        (Condition::EnergyRight, rec.right, rec.left),
    ] {
        if this.coeff == 0.0 {
            continue;
        }
        let e2 = outside(bound(&this), this.coeff > 0.0);
        if e2 > 0.0 && other.margin(e2) > 0.0 && this.margin(e2) < 0.0 {
            out.push((cond, *data, with_eps2(sub, e2)));
        }
    }
    // determinant eps_1 eps_2 < 0 with eps_1 + eps_2 > 0: a negative eps_2
    // still admitted by both energy inequalities
    let raw_lower = [rec.left, rec.right]
        .iter()
        .filter(|c| c.coeff < 0.0)
        .map(bound)
        .fold(f64::NEG_INFINITY, f64::max);
    let floor = raw_lower.max(-eps_1);
    if floor < 0.0 {
        let e2 = floor / 2.0;
        if rec.left.margin(e2) > 0.0 && rec.right.margin(e2) > 0.0 {
            out.push((Condition::SubsolutionDeterminant, *data, with_eps2(sub, e2)));
        }
    }
    out
}
