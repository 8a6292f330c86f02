//! Named checks over a composition instance and the oracle cross-check.

use std::fmt;
use std::str::FromStr;

use crate::composition::{self as comp, CompositionInstance};
use crate::error::{Error, Result};
use crate::oracle;
use crate::rational::{fmt_vec, ExtReal, Vector};
use crate::report::{sort_entries, ReportEntry, Status};
use crate::scalar_fn::{self, ExtScalarFn};
use crate::setvalued_fn::scalarize;
use crate::upper_sets;

pub const DEFAULT_SEED: u64 = 42;

/// Check names accepted on the command line and in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Assumptions,
    Cor33,
    Cor37,
    FmScalar,
    FmSetvalued,
    Lemma21,
    Lemma42i,
    Prop31,
    Prop32,
    Thm36,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Assumptions,
        Check::Cor33,
        Check::Cor37,
        Check::FmScalar,
        Check::FmSetvalued,
        Check::Lemma21,
        Check::Lemma42i,
        Check::Prop31,
        Check::Prop32,
        Check::Thm36,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Assumptions => "assumptions",
            Check::Cor33 => "cor33",
            Check::Cor37 => "cor37",
            Check::FmScalar => "fm_scalar",
            Check::FmSetvalued => "fm_setvalued",
            Check::Lemma21 => "lemma21",
            Check::Lemma42i => "lemma42i",
            Check::Prop31 => "prop31",
            Check::Prop32 => "prop32",
            Check::Thm36 => "thm36",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check {s:?}; expected one of {}", Check::ALL.map(Check::name).join(", "))))
    }
}

/// Parses a comma-separated list; `all` selects every check.
pub fn parse_checks(list: &str) -> Result<Vec<Check>> {
    if list.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out: Vec<Check> = list.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err(Error::InvalidParameter("no checks selected".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub checks: Vec<Check>,
    pub cross_check: bool,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { checks: Check::ALL.to_vec(), cross_check: false, seed: DEFAULT_SEED }
    }
}

pub fn run_check(inst: &CompositionInstance, y_dual_grid: Option<&[Vector]>, check: Check, seed: u64) -> Result<Vec<ReportEntry>> {
    match check {
        Check::Assumptions => Ok(comp::assumption_entries(inst)),
        Check::Cor33 => comp::outer_properness_check(inst),
        Check::Cor37 => comp::dual_representation_check(inst),
        Check::FmScalar => comp::scalar_fm_check(inst),
        Check::FmSetvalued => comp::setvalued_fm_check(inst, y_dual_grid),
        Check::Lemma21 => comp::indicator_check(inst, seed),
        Check::Lemma42i => comp::strict_section_closure_check(inst),
        Check::Prop31 => comp::composition_structure_check(inst),
        Check::Prop32 => comp::scalarization_identity_check(inst),
        Check::Thm36 => comp::conjugate_formula_check(inst),
    }
}

/// Sequential run; entries sorted by check name and inputs.
pub fn run(inst: &CompositionInstance, y_dual_grid: Option<&[Vector]>, cfg: &RunConfig) -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    for &c in &cfg.checks {
        out.extend(run_check(inst, y_dual_grid, c, cfg.seed)?);
    }
    if cfg.cross_check {
        out.extend(cross_check(inst)?);
    }
    sort_entries(&mut out);
    Ok(out)
}

fn agreement(inputs: String, mismatch: Option<String>) -> ReportEntry {
    match mismatch {
        None => ReportEntry::new("cross_check", inputs, Status::Pass),
        Some(w) => ReportEntry::new("cross_check", inputs, Status::Fail).witness(w),
    }
}

/// Envelope of `phi` against its biconjugate over supporting slopes at every
/// grid point, compared where the envelope is finite.
pub fn envelope_mismatch(phi: &ExtScalarFn) -> Result<Option<String>> {
    let env = oracle::oracle_envelope(phi)?;
    let mut dual: Vec<Vector> = Vec::new();
    for x in phi.grid() {
        if let Some((s, _)) = scalar_fn::supporting_slope(phi, x)? {
            if !dual.contains(&s) {
                dual.push(s);
            }
        }
    }
    for (x, e) in phi.grid().iter().zip(&env) {
        if *e == ExtReal::PosInf || dual.is_empty() {
            continue;
        }
        let bi = scalar_fn::biconjugate(phi, &dual, x)?;
        if bi != *e {
            return Ok(Some(format!("at {}: envelope {} but biconjugate {}", fmt_vec(x), e, bi)));
        }
    }
    Ok(None)
}

/// Main routines against the brute-force oracles.
pub fn cross_check(inst: &CompositionInstance) -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    let mut probes = inst.composed().probe_directions();
    probes.extend(inst.z_directions());
    for (x, v) in inst.composed().grid().iter().zip(inst.composed().values()) {
        let mut bad = None;
        for z in &probes {
            let (a, b) = (upper_sets::support(v, z)?, oracle::oracle_support(v, z));
            if a != b {
                bad = Some(format!("support along {}: {} vs scan {}", fmt_vec(z), a, b));
                break;
            }
        }
        out.push(agreement(format!("support x={}", fmt_vec(x)), bad));
    }
    for z in inst.z_directions() {
        for xs in &inst.x_dual_grid {
            let lhs = comp::conjugate_formula(inst, xs, &z)?.lhs;
            let o = oracle::oracle_conjugate_of_composition(inst, xs, &z)?;
            let e = agreement(format!("conjugate x*={} z*={}", fmt_vec(xs), fmt_vec(&z)), (lhs != o).then(|| "enumeration disagrees".to_string()));
            out.push(e.values(&lhs, &o));
        }
    }
    if inst.g.primal_dim() <= 2 {
        let mut fns: Vec<(String, ExtScalarFn)> = Vec::new();
        for y in inst.y_directions() {
            fns.push((format!("envelope G y*={}", fmt_vec(&y)), scalarize(&inst.g, &y)?));
        }
        for z in inst.z_directions() {
            fns.push((format!("envelope F∘G z*={}", fmt_vec(&z)), scalarize(inst.composed(), &z)?));
        }
        for (label, phi) in fns {
            if phi.rays().is_empty() {
                out.push(agreement(label, envelope_mismatch(&phi)?));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("thm37".parse::<Check>().is_err());
        assert_eq!(parse_checks("thm36, prop31,thm36").unwrap(), vec![Check::Prop31, Check::Thm36]);
        assert_eq!(parse_checks("all").unwrap().len(), 10);
        assert!(parse_checks("").is_err());
    }

    #[test]
    fn names_match_scenario_list() {
        assert_eq!(Check::ALL.map(Check::name), crate::scenario::CHECK_NAMES);
    }
}
