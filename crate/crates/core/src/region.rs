//! Sweeps of the right state over a `(rho_+, v_+2)` grid with a fixed left
//! state, and the CSV form of the resulting map.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::RiemannData;
use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::format::fmt9;
use crate::riemann::{classify_with, WaveKind};
use crate::scalar::Scalar;
use crate::subsolution::verify_subsolution_with;
use crate::threshold::{scan_feasible_with, threshold_v_with, ScanConfig};

/// What is known about non-uniqueness at a grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NonUniqueness {
    /// Two-shock data; infinitely many solutions are known from other work.
    TwoShockKnown,
    /// A fan subsolution was found and verified.
    SubsolutionFound,
    /// Shock-rarefaction data without a subsolution on the search grid.
    NotFound,
    NotApplicable,
}

impl NonUniqueness {
    pub const ALL: [NonUniqueness; 4] = [
        NonUniqueness::TwoShockKnown,
        NonUniqueness::SubsolutionFound,
        NonUniqueness::NotFound,
        NonUniqueness::NotApplicable,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            NonUniqueness::TwoShockKnown => "TwoShockKnown",
            NonUniqueness::SubsolutionFound => "SubsolutionFound",
            NonUniqueness::NotFound => "NotFound",
            NonUniqueness::NotApplicable => "NotApplicable",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCell<T> {
    pub rho_plus: T,
    pub v_plus2: T,
    /// `None` when classification failed.
    pub wave_kind: Option<WaveKind>,
    pub nonuniq: NonUniqueness,
    pub v_local: Option<T>,
}

/// Uniform axis with `n >= 2` points including both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis<T> {
    pub min: T,
    pub max: T,
    pub n: usize,
}

impl<T: Scalar> Axis<T> {
    pub fn new(min: T, max: T, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!(
                "grid axis needs at least 2 points, got {n}"
            )));
        }
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(Error::Domain(format!("invalid grid axis [{min}, {max}]")));
        }
        Ok(Self { min, max, n })
    }

    pub fn point(&self, i: usize) -> T {
        if i + 1 == self.n {
            self.max
        } else {
            self.min + (self.max - self.min) * T::lit(i as f64) / T::lit((self.n - 1) as f64)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSpec<T> {
    pub rho_minus: T,
    pub v_minus2: T,
    pub eos: Eos<T>,
    pub rho_plus: Axis<T>,
    pub v_plus2: Axis<T>,
    pub with_threshold: bool,
}

/// A per-cell failure; the sweep carries on past it.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub index: usize,
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionMap<T> {
    /// Row-major: `rho_+` outer, `v_+2` inner.
    pub cells: Vec<RegionCell<T>>,
    pub failures: Vec<CellFailure>,
}

pub fn region_map_sweep<T: Scalar>(spec: &RegionSpec<T>) -> Result<RegionMap<T>> {
    region_map_sweep_with(spec, &ScanConfig::default())
}

/// Classifies every cell and searches shock-rarefaction cells for a verified
/// fan subsolution. Cells run in parallel; output order is fixed by index.
pub fn region_map_sweep_with<T: Scalar>(
    spec: &RegionSpec<T>,
    cfg: &ScanConfig<T>,
) -> Result<RegionMap<T>> {
    if !(spec.rho_plus.min > T::zero()) {
        return Err(Error::Domain(format!(
            "rho_plus grid must be positive, starts at {}",
            spec.rho_plus.min
        )));
    }
    crate::eos::check_density(spec.rho_minus)?;
    let (nr, nv) = (spec.rho_plus.n, spec.v_plus2.n);
    let results: Vec<(RegionCell<T>, Vec<Error>)> = (0..nr * nv)
        .into_par_iter()
        .map(|idx| {
            sweep_cell(
                spec,
                cfg,
                spec.rho_plus.point(idx / nv),
                spec.v_plus2.point(idx % nv),
            )
        })
        .collect();
    let mut cells = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (index, (cell, errs)) in results.into_iter().enumerate() {
        cells.push(cell);
        failures.extend(errs.into_iter().map(|error| CellFailure { index, error }));
    }
    Ok(RegionMap { cells, failures })
}

fn sweep_cell<T: Scalar>(
    spec: &RegionSpec<T>,
    cfg: &ScanConfig<T>,
    rho_plus: T,
    v_plus2: T,
) -> (RegionCell<T>, Vec<Error>) {
    let mut errors = Vec::new();
    let mut cell = RegionCell {
        rho_plus,
        v_plus2,
        wave_kind: None,
        nonuniq: NonUniqueness::NotApplicable,
        v_local: None,
    };
    let data = match RiemannData::planar(
        spec.rho_minus,
        spec.v_minus2,
        rho_plus,
        v_plus2,
        T::zero(),
        spec.eos,
    ) {
        Ok(d) => d,
        Err(e) => return (cell, vec![e]),
    };
    match classify_with(&data, &cfg.tol) {
        Ok(fan) => {
            cell.wave_kind = Some(fan.kind);
            cell.nonuniq = match fan.kind {
                WaveKind::Case3TwoShocks => NonUniqueness::TwoShockKnown,
                k if k.is_shock_rarefaction() => search(&data, cfg, &mut errors),
                _ => NonUniqueness::NotApplicable,
            };
        }
        Err(e) => errors.push(e),
    }
    if spec.with_threshold && rho_plus != spec.rho_minus {
        match threshold_v_with(spec.rho_minus, rho_plus, v_plus2, &spec.eos, cfg) {
            Ok(r) => cell.v_local = Some(r.v),
            Err(e) => errors.push(e),
        }
    }
    (cell, errors)
}

fn search<T: Scalar>(
    data: &RiemannData<T>,
    cfg: &ScanConfig<T>,
    errors: &mut Vec<Error>,
) -> NonUniqueness {
    let scan = match scan_feasible_with(data, cfg) {
        Ok(s) => s,
        // no subsolution of this form outside |u| < sqrt(T)
        Err(Error::NonNegativeB { .. }) => return NonUniqueness::NotFound,
        Err(e) => {
            errors.push(e);
            return NonUniqueness::NotFound;
        }
    };
    match scan.witness_subsolution(data, &cfg.tol) {
        Some(Ok(sub)) if verify_subsolution_with(data, &sub, &cfg.tol).pass => {
            NonUniqueness::SubsolutionFound
        }
        Some(Err(e)) => {
            errors.push(e);
            NonUniqueness::NotFound
        }
        _ => NonUniqueness::NotFound,
    }
}

pub const CSV_HEADER: [&str; 5] = ["rho_plus", "v_plus2", "wave_kind", "nonuniq", "V_local"];

fn f64_of<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Writes the header and one row per cell; numbers carry nine significant
/// digits and empty fields stand for missing values.
pub fn write_region_csv<T: Scalar, W: Write>(cells: &[RegionCell<T>], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for c in cells {
        w.write_record([
            fmt9(f64_of(c.rho_plus)),
            fmt9(f64_of(c.v_plus2)),
            c.wave_kind.map(|k| k.tag().to_string()).unwrap_or_default(),
            c.nonuniq.tag().to_string(),
            c.v_local.map(|v| fmt9(f64_of(v))).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn region_csv_string<T: Scalar>(cells: &[RegionCell<T>]) -> String {
    let mut buf = Vec::new();
    write_region_csv(cells, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn read_region_csv<R: Read>(input: R) -> Result<Vec<RegionCell<f64>>> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse(format!(
            "unexpected region-map header: {:?}",
            header.iter().collect::<Vec<_>>()
        )));
    }
    let num = |s: &str, col: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::Parse(format!("{col}: not a number: {s:?}")))
    };
    let mut cells = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let wave_kind = match &rec[2] {
            "" => None,
            s => Some(
                WaveKind::from_tag(s)
                    .ok_or_else(|| Error::Parse(format!("unknown wave kind {s:?}")))?,
            ),
        };
        cells.push(RegionCell {
            rho_plus: num(&rec[0], "rho_plus")?,
            v_plus2: num(&rec[1], "v_plus2")?,
            wave_kind,
            nonuniq: NonUniqueness::from_tag(&rec[3])
                .ok_or_else(|| Error::Parse(format!("unknown nonuniq tag {:?}", &rec[3])))?,
            v_local: match &rec[4] {
                "" => None,
                s => Some(num(s, "V_local")?),
            },
        });
    }
    Ok(cells)
}
