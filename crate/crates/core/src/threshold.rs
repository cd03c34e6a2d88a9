//! Feasibility scans over the middle density and the threshold `V` on the
//! velocity gap `w = v_-2 - v_+2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::data::RiemannData;
use crate::eos::{check_density, Eos};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerances};
use crate::subsolution::kinematics::Branch;
use crate::subsolution::window::window_at;
use crate::subsolution::{reconstruct_with, FanSubsolution, FeasibilityRecord};

/// Resolution of the density scan and of the gap search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig<T> {
    /// Initial uniform grid size on the open density interval.
    pub grid: usize,
    /// Local refinement passes around changes of feasibility.
    pub refine_passes: usize,
    /// Subdivisions per refined grid cell.
    pub refine_points: usize,
    /// Gap scan step as a fraction of `sqrt(T)`.
    pub step_fraction: T,
    /// Start of the gap scan as `(1 - start_offset) sqrt(T)`.
    pub start_offset: T,
    pub bisection_tol: T,
    pub tol: Tolerances<T>,
}

impl<T: Scalar> Default for ScanConfig<T> {
    fn default() -> Self {
        Self {
            grid: 2048,
            refine_passes: 2,
            refine_points: 16,
            step_fraction: T::lit(1.0 / 200.0),
            start_offset: T::lit(1e-6),
            bisection_tol: T::lit(1e-6),
            tol: Tolerances::default(),
        }
    }
}

/// Closed range of sampled densities that were all feasible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeasibleInterval<T> {
    pub lo: T,
    pub hi: T,
}

/// Result of scanning the middle density for one datum.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityScan<T> {
    pub feasible: bool,
    pub intervals: Vec<FeasibleInterval<T>>,
    /// Every evaluated density, sorted.
    pub samples: Vec<FeasibilityRecord<T>>,
    /// Feasible sample with the widest relative `eps_2` window.
    pub witness: Option<FeasibilityRecord<T>>,
}

impl<T: Scalar> DensityScan<T> {
    /// Reconstructs the witness at the interior `eps_2` of its window.
    pub fn witness_subsolution(
        &self,
        data: &RiemannData<T>,
        tol: &Tolerances<T>,
    ) -> Option<Result<FanSubsolution<T>>> {
        let w = self.witness?;
        let eps_2 = w.interior_eps2()?;
        Some(reconstruct_with(data, w.rho_1, eps_2, data.v_minus[0], tol))
    }
}

fn window_score<T: Scalar>(r: &FeasibilityRecord<T>) -> T {
    if r.eps2_upper.is_infinite() {
        T::infinity()
    } else {
        (r.eps2_upper - r.eps2_lower) / T::one().max(r.eps2_upper.abs())
    }
}

pub fn scan_feasible<T: Scalar>(data: &RiemannData<T>) -> Result<DensityScan<T>> {
    scan_feasible_with(data, &ScanConfig::default())
}

/// Probes the `eps_2` window on a uniform density grid, refines around every
/// change of feasibility and merges feasible runs into intervals.
pub fn scan_feasible_with<T: Scalar>(
    data: &RiemannData<T>,
    cfg: &ScanConfig<T>,
) -> Result<DensityScan<T>> {
    let branch = Branch::new(data, &cfg.tol)?;
    let (near, far) = (branch.near, branch.far);
    let delta = cfg.tol.endpoint * (far - near);
    let (a, b) = (near + delta, far - delta);
    let n = cfg.grid.max(2);
    let eval = |rho: T| window_at(data, branch.eval(data, rho), rho);

    let mut samples: Vec<FeasibilityRecord<T>> = (0..n)
        .map(|i| {
            let rho = if i + 1 == n {
                b
            } else {
                a + (b - a) * T::lit(i as f64) / T::lit((n - 1) as f64)
            };
            eval(rho)
        })
        .collect();

    for _ in 0..cfg.refine_passes {
        let mut extra = Vec::new();
        for pair in samples.windows(2) {
            if pair[0].feasible != pair[1].feasible {
                let (x0, x1) = (pair[0].rho_1, pair[1].rho_1);
                let m = cfg.refine_points.max(2);
                for j in 1..m {
                    let rho = x0 + (x1 - x0) * T::lit(j as f64) / T::lit(m as f64);
                    if rho > x0 && rho < x1 {
                        extra.push(eval(rho));
                    }
                }
            }
        }
        if extra.is_empty() {
            break;
        }
        samples.extend(extra);
        samples.sort_by(|p, q| p.rho_1.partial_cmp(&q.rho_1).expect("finite densities"));
    }

    let mut intervals = Vec::new();
    let mut run: Option<FeasibleInterval<T>> = None;
    for s in &samples {
        match (s.feasible, run.as_mut()) {
            (true, Some(iv)) => iv.hi = s.rho_1,
            (true, None) => {
                run = Some(FeasibleInterval {
                    lo: s.rho_1,
                    hi: s.rho_1,
                })
            }
            (false, Some(_)) => intervals.extend(run.take()),
            (false, None) => {}
        }
    }
    intervals.extend(run);

    let witness =
        samples
            .iter()
            .filter(|s| s.feasible)
            .fold(None::<FeasibilityRecord<T>>, |best, s| match best {
                Some(b) if window_score(&b) >= window_score(s) => Some(b),
                _ => Some(*s),
            });

    Ok(DensityScan {
        feasible: !intervals.is_empty(),
        intervals,
        samples,
        witness,
    })
}

/// One probe of the velocity gap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapProbe<T> {
    pub w: T,
    pub feasible: bool,
    pub intervals: Vec<FeasibleInterval<T>>,
    #[serde(skip)]
    pub witness: Option<FeasibilityRecord<T>>,
}

/// Data with `v_-2 = v_+2 + w` and zero first velocity component.
pub fn gap_data<T: Scalar>(
    rho_minus: T,
    rho_plus: T,
    v_plus2: T,
    eos: &Eos<T>,
    w: T,
) -> Result<RiemannData<T>> {
    RiemannData::planar(rho_minus, v_plus2 + w, rho_plus, v_plus2, T::zero(), *eos)
}

pub fn feasible_for_gap<T: Scalar>(
    rho_minus: T,
    rho_plus: T,
    v_plus2: T,
    eos: &Eos<T>,
    w: T,
) -> Result<GapProbe<T>> {
    feasible_for_gap_with(rho_minus, rho_plus, v_plus2, eos, w, &ScanConfig::default())
}

/// Whether some middle density admits a fan subsolution at gap `w`, which
/// must lie in `(0, sqrt(T))`.
pub fn feasible_for_gap_with<T: Scalar>(
    rho_minus: T,
    rho_plus: T,
    v_plus2: T,
    eos: &Eos<T>,
    w: T,
    cfg: &ScanConfig<T>,
) -> Result<GapProbe<T>> {
    let data = gap_data(rho_minus, rho_plus, v_plus2, eos, w)?;
    let sqrt_t = data.shock_bound_sq().sqrt();
    if !(w > T::zero() && w < sqrt_t) {
        return Err(Error::Domain(format!(
            "gap w = {w} must lie in (0, sqrt(T) = {sqrt_t})"
        )));
    }
    let scan = scan_feasible_with(&data, cfg)?;
    Ok(GapProbe {
        w,
        feasible: scan.feasible,
        intervals: scan.intervals,
        witness: scan.witness,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult<T> {
    #[serde(rename = "V")]
    pub v: T,
    #[serde(rename = "sqrtT")]
    pub sqrt_t: T,
    /// Every probe in increasing `w`.
    #[serde(rename = "feasible_probe")]
    pub probes: Vec<GapProbe<T>>,
    pub bisection_tol: T,
    pub scan_step: T,
    /// Some probe below an infeasible one was feasible.
    pub non_monotone: bool,
    pub warnings: Vec<String>,
}

impl<T: Scalar> ThresholdResult<T> {
    pub fn probe_at(&self, w: T) -> Option<&GapProbe<T>> {
        self.probes.iter().find(|p| p.w == w)
    }
}

pub fn threshold_v<T: Scalar>(
    rho_minus: T,
    rho_plus: T,
    v_plus2: T,
    eos: &Eos<T>,
) -> Result<ThresholdResult<T>> {
    threshold_v_with(rho_minus, rho_plus, v_plus2, eos, &ScanConfig::default())
}

// probes per parallel batch of the descending scan; the trace is cut at the
// first infeasible probe, so it does not depend on this value
const SCAN_BATCH: usize = 16;

/// Lower end of the feasible gap interval that reaches up to `sqrt(T)`.
///
/// Scans down from just below `sqrt(T)` until the first infeasible probe,
/// then bisects between it and the last feasible one. Returns
/// [`Error::NoThreshold`] when even the first probe is infeasible.
pub fn threshold_v_with<T: Scalar>(
    rho_minus: T,
    rho_plus: T,
    v_plus2: T,
    eos: &Eos<T>,
    cfg: &ScanConfig<T>,
) -> Result<ThresholdResult<T>> {
    check_density(rho_minus)?;
    check_density(rho_plus)?;
    if rho_minus == rho_plus {
        return Err(Error::DegenerateR {
            rho: rho_minus.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut warnings = Vec::new();
    if eos.is_isothermal() {
        warnings.push(
            "gamma = 1: existence of a threshold is only guaranteed for gamma > 1".to_string(),
        );
    }
    let sqrt_t = gap_data(rho_minus, rho_plus, v_plus2, eos, T::zero())?
        .shock_bound_sq()
        .sqrt();
    let probe = |w: T| feasible_for_gap_with(rho_minus, rho_plus, v_plus2, eos, w, cfg);

    let w0 = (T::one() - cfg.start_offset) * sqrt_t;
    let first = probe(w0)?;
    if !first.feasible {
        return Err(Error::NoThreshold {
            w: w0.to_f64().unwrap_or(f64::NAN),
            sqrt_t: sqrt_t.to_f64().unwrap_or(f64::NAN),
        });
    }
    let step = cfg.step_fraction * sqrt_t;
    let mut trace = vec![first];
    let mut hi = w0;
    let mut lo = T::zero();
    let mut k = 1usize;
    'scan: loop {
        let ws: Vec<T> = (k..k + SCAN_BATCH)
            .map(|j| w0 - step * T::lit(j as f64))
            .take_while(|&w| w > T::zero())
            .collect();
        if ws.is_empty() {
            break;
        }
        let batch = ws
            .par_iter()
            .map(|&w| probe(w))
            .collect::<Result<Vec<_>>>()?;
        for p in batch {
            let feasible = p.feasible;
            let w = p.w;
            trace.push(p);
            if feasible {
                hi = w;
            } else {
                lo = w;
                break 'scan;
            }
        }
        k += SCAN_BATCH;
    }

    // lo == 0 means feasibility reached all the way down; 0 itself is
    // outside the probe domain and acts as the infeasible end
    while hi - lo > cfg.bisection_tol {
        let mid = lo + (hi - lo) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let p = probe(mid)?;
        if p.feasible {
            hi = mid;
        } else {
            lo = mid;
        }
        trace.push(p);
    }

    trace.sort_by(|a, b| a.w.partial_cmp(&b.w).expect("finite gaps"));
    let mut seen_feasible = false;
    let mut non_monotone = false;
    for p in &trace {
        if p.feasible {
            seen_feasible = true;
        } else if seen_feasible {
            non_monotone = true;
        }
    }

    Ok(ThresholdResult {
        v: hi,
        sqrt_t,
        probes: trace,
        bisection_tol: cfg.bisection_tol,
        scan_step: step,
        non_monotone,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdRow<T> {
    pub v_plus2: T,
    pub result: Result<ThresholdResult<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdTable<T> {
    /// Rows in input order.
    pub rows: Vec<ThresholdRow<T>>,
    /// Whether `V` is nondecreasing in `v_+2` over the successful rows;
    /// `None` with fewer than two of them. Observed, not enforced.
    pub nondecreasing: Option<bool>,
}

pub fn threshold_table<T: Scalar>(
    rho_minus: T,
    rho_plus: T,
    eos: &Eos<T>,
    v_plus2_list: &[T],
) -> ThresholdTable<T> {
    threshold_table_with(
        rho_minus,
        rho_plus,
        eos,
        v_plus2_list,
        &ScanConfig::default(),
    )
}

/// Independent threshold per `v_+2`; rows are computed in parallel and
/// failures stay in their row.
pub fn threshold_table_with<T: Scalar>(
    rho_minus: T,
    rho_plus: T,
    eos: &Eos<T>,
    v_plus2_list: &[T],
    cfg: &ScanConfig<T>,
) -> ThresholdTable<T> {
    let rows: Vec<ThresholdRow<T>> = v_plus2_list
        .par_iter()
        .map(|&v_plus2| ThresholdRow {
            v_plus2,
            result: threshold_v_with(rho_minus, rho_plus, v_plus2, eos, cfg),
        })
        .collect();
    let mut ok: Vec<(T, T)> = rows
        .iter()
        .filter_map(|r| r.result.as_ref().ok().map(|res| (r.v_plus2, res.v)))
        .collect();
    ok.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite v_plus2"));
    let nondecreasing = (ok.len() >= 2).then(|| ok.windows(2).all(|p| p[1].1 >= p[0].1));
    ThresholdTable {
        rows,
        nondecreasing,
    }
}
