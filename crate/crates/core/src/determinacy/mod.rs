//! Finite-determinacy verdicts: regular sequences, flatness of map germs
//! from complete intersections, Milnor-number bounds, jet sweeps and
//! perturbation experiments.
//!
//! Every dimension comparison goes through an exact standard basis and is
//! two-valued. Anything that depends on a random coordinate change or a
//! truncation bound is three-valued and never reports an unproven no.

mod map;
mod perturb;
mod sweep;
mod verdict;

pub use map::{
    determinacy_bound, diagram_determinacy_check, fibre_ideal, flat_ci, jet_flatness_equivalence,
    milnor_mu0, BoundScope, DeterminacyBound, MapSpec,
};
pub use perturb::{perturbation_test, PerturbationReport, Property, SampleOutcome};
pub use sweep::{
    dimension_semicontinuity_probe, jet_sweep, LabelledVerdict, SemicontinuityReport,
    SemicontinuityRow, Stabilization, SweepReport, SweepRow,
};
pub use verdict::{Certificate, Verdict, VerdictKind};

use crate::algebra::{Exponent, Germ, OrderSpec, Poly};
use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::jet_oracle::truncated_diagram;
use crate::random;
use crate::standard_basis::{diagram_of_ideal_with, SbOptions};

/// Knobs shared by the verdict procedures.
#[derive(Clone, Debug)]
pub struct Settings {
    pub sb: SbOptions,
    /// Random coordinate changes tried by the axis search.
    pub trials: usize,
    pub seed: u64,
    /// Length bound of the oracle slices used by the axis search.
    pub bound: u32,
    /// Entries of random coordinate changes lie in `[-entry_bound, entry_bound]`.
    pub entry_bound: i64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            sb: SbOptions::default(),
            trials: 8,
            seed: 0,
            bound: 12,
            entry_bound: random::COORD_ENTRY_BOUND,
        }
    }
}

/// Generators of `I_μ`: the `mu`-jets of `gens`, zeros dropped.
pub fn jet_ideal(gens: &[Germ], mu: u32) -> Vec<Poly> {
    gens.iter()
        .map(|g| g.jet(mu))
        .filter(|p| !p.is_zero())
        .collect()
}

/// Unit-cleared ideal generators of a list of germs.
pub fn numerators(gens: &[Germ]) -> Vec<Poly> {
    gens.iter().map(|g| g.numerator().clone()).collect()
}

pub(crate) fn exact_diagram(gens: &[Poly], arity: usize, cfg: &Settings) -> Result<Diagram> {
    diagram_of_ideal_with(gens, &OrderSpec::standard(arity), &cfg.sb)
}

fn arity_of(gens: &[Poly]) -> Option<usize> {
    gens.first().map(|g| g.ring().arity())
}

/// Decides whether `gens` form a regular sequence in `K{x}` by comparing
/// `dim K{x}/I` with `m - s`.
pub fn regular_sequence(gens: &[Poly], cfg: &Settings) -> Result<Verdict> {
    let Some(m) = arity_of(gens) else {
        return Ok(Verdict::yes(Certificate::reason("empty sequence")));
    };
    let s = gens.len();
    if gens.iter().any(Poly::is_zero) {
        return Ok(Verdict::no(Certificate::reason("sequence contains zero")));
    }
    if s > m {
        return Ok(Verdict::no(Certificate::reason(format!(
            "{s} elements exceed the dimension {m}"
        ))));
    }
    let d = exact_diagram(gens, m, cfg)?;
    if d.is_full() {
        let mut c = Certificate::reason("unit ideal");
        c.vertices = Some(d.vertices().to_vec());
        return Ok(Verdict::no(c));
    }
    let dim = d.quotient_dimension();
    let expected = m - s;
    let mut c =
        Certificate::reason(format!("dim K{{x}}/I = {dim}, m - s = {expected}")).with_diagram(&d);
    c.expected_dimension = Some(expected as i64);
    Ok(if dim == expected {
        Verdict::yes(c)
    } else {
        Verdict::no(c)
    })
}

/// Searches random coordinate changes for a diagram with pure-power
/// vertices on `s` distinct axes, which certifies `dim K{x}/I ≤ m - s`.
///
/// Slices come from the jet oracle up to length `bound`, so an exhibited
/// axis vertex is exact. Failing to find one is inconclusive.
pub fn regseq_axis_certificate(
    gens: &[Poly],
    trials: usize,
    seed: u64,
    bound: u32,
    cfg: &Settings,
) -> Result<Verdict> {
    if trials == 0 {
        return Err(Error::InvalidRange("at least one trial is required".into()));
    }
    let Some(m) = arity_of(gens) else {
        return Ok(Verdict::yes(Certificate::reason("empty sequence")));
    };
    let s = gens.len();
    if gens.iter().any(Poly::is_zero) {
        return Ok(Verdict::no(Certificate::reason("sequence contains zero")));
    }
    if s > m {
        return Ok(Verdict::no(Certificate::reason(format!(
            "{s} elements exceed the dimension {m}"
        ))));
    }
    let ord = OrderSpec::standard(m);
    for trial in 0..trials {
        let mut rng = random::rng(seed, trial as u64);
        let change = random::coord_change(&mut rng, m, cfg.entry_bound);
        let moved: Vec<Poly> = gens
            .iter()
            .map(|g| change.apply(g))
            .collect::<Result<_>>()?;
        let slice = truncated_diagram(&moved, bound + 1, &ord)?;
        if slice.diagram.is_full() {
            let mut c = Certificate::reason("unit ideal");
            c.seed = Some(seed);
            return Ok(Verdict::no(c));
        }
        let mut axes: Vec<(u32, usize)> = slice
            .diagram
            .axis_vertices()
            .into_iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (p, i)))
            .collect();
        if axes.len() >= s {
            axes.sort();
            let mut chosen: Vec<Exponent> = axes[..s]
                .iter()
                .map(|&(p, i)| Exponent::axis(m, i, p))
                .collect();
            chosen.sort_by_key(Exponent::pure_power_axis);
            let mut c = Certificate::reason(format!(
                "pure-power vertices on {s} axes after a coordinate change"
            ))
            .with_coord_change(&change);
            c.axis_vertices = chosen;
            c.trial = Some(trial);
            c.seed = Some(seed);
            return Ok(Verdict::yes(c));
        }
    }
    let mut c = Certificate::reason(format!(
        "no trial exhibited {s} axis vertices of length <= {bound}"
    ));
    c.seed = Some(seed);
    Ok(Verdict::UnknownAtBound {
        bound,
        certificate: c,
    })
}

/// Largest length among the axis vertices of a positive axis certificate.
pub fn axis_certificate_length(v: &Verdict) -> Option<u32> {
    match v {
        Verdict::CertifiedYes { certificate } if !certificate.axis_vertices.is_empty() => {
            certificate.axis_vertices.iter().map(Exponent::length).max()
        }
        _ => None,
    }
}
