use serde::Serialize;

use super::map::{determinacy_bound, flat_ci, BoundScope, DeterminacyBound, MapSpec};
use super::verdict::{Verdict, VerdictKind};
use super::{numerators, regular_sequence, Settings};
use crate::algebra::{Germ, Poly};
use crate::error::{Error, Result};
use crate::{par, random};

/// The property re-evaluated on every perturbation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Property {
    RegularSequence,
    /// Flatness of the perturbed components on the fixed source `V(relations)`.
    FlatCi {
        relations: Vec<Germ>,
    },
}

impl Property {
    fn label(&self) -> &'static str {
        match self {
            Property::RegularSequence => "regular sequence",
            Property::FlatCi { .. } => "flat",
        }
    }

    fn map(&self, gens: &[Germ]) -> Result<MapSpec> {
        let relations = match self {
            Property::RegularSequence => Vec::new(),
            Property::FlatCi { relations } => relations.clone(),
        };
        MapSpec::new(gens[0].ring(), relations, gens.to_vec())
    }

    fn evaluate(&self, gens: &[Germ], cfg: &Settings) -> Result<Verdict> {
        match self {
            Property::RegularSequence => regular_sequence(&numerators(gens), cfg),
            Property::FlatCi { .. } => flat_ci(&self.map(gens)?, cfg),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleOutcome {
    pub index: usize,
    pub kind: VerdictKind,
    /// The added tails, one per generator.
    pub tails: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerturbationReport {
    pub property: String,
    pub mu: u32,
    pub samples: usize,
    pub seed: u64,
    pub baseline: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<DeterminacyBound>,
    /// Whether the bound guarantees that every sample keeps the baseline
    /// verdict, so that any violation is a defect.
    pub guaranteed: bool,
    pub outcomes: Vec<SampleOutcome>,
    /// Sample indices whose verdict differs from the baseline.
    pub violations: Vec<usize>,
}

/// Adds seeded random tails of degree in `(mu, mu + 3]` to every generator
/// and re-evaluates `property`. Sample `i` draws from stream `i`.
pub fn perturbation_test(
    gens: &[Germ],
    mu: u32,
    samples: usize,
    seed: u64,
    property: &Property,
    cfg: &Settings,
) -> Result<PerturbationReport> {
    if gens.is_empty() {
        return Err(Error::InvalidRange("no generators".into()));
    }
    let ring = gens[0].ring().clone();
    let baseline = property.evaluate(gens, cfg)?;
    let bound = match determinacy_bound(&property.map(gens)?, cfg) {
        Ok(b) => Some(b),
        Err(Error::NoCertifiedBound) => None,
        Err(e) => return Err(e),
    };
    let guaranteed = bound.as_ref().is_some_and(|b| {
        mu >= b.bound && (b.scope == BoundScope::FullEquivalence || baseline.is_yes())
    });

    let outcomes = par::map_indices(samples, |index| -> Result<SampleOutcome> {
        let mut rng = random::rng(seed, index as u64);
        let tails: Vec<Poly> = gens
            .iter()
            .map(|_| random::poly(&mut rng, &ring, 1..=3, mu + 1..=mu + 3, 5))
            .collect();
        let perturbed: Vec<Germ> = gens
            .iter()
            .zip(&tails)
            .map(|(g, t)| g.add_poly(t))
            .collect();
        debug_assert!(gens
            .iter()
            .zip(&perturbed)
            .all(|(a, b)| a.jet(mu) == b.jet(mu)));
        Ok(SampleOutcome {
            index,
            kind: property.evaluate(&perturbed, cfg)?.kind(),
            tails: tails.iter().map(ToString::to_string).collect(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let violations = outcomes
        .iter()
        .filter(|o| o.kind != baseline.kind())
        .map(|o| o.index)
        .collect();
    Ok(PerturbationReport {
        property: property.label().into(),
        mu,
        samples,
        seed,
        baseline,
        bound,
        guaranteed,
        outcomes,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_germ;
    use crate::algebra::{Ring, RingSpec};

    fn germs(r: &Ring, ss: &[&str]) -> Vec<Germ> {
        ss.iter().map(|s| parse_germ(r, s).unwrap()).collect()
    }

    #[test]
    fn finite_map_is_stable() {
        let cfg = Settings::default();
        let r = RingSpec::new(["x", "y"]).unwrap();
        let rep = perturbation_test(
            &germs(&r, &["x^2 + y^3", "x*y"]),
            5,
            20,
            0,
            &Property::RegularSequence,
            &cfg,
        )
        .unwrap();
        assert!(rep.baseline.is_yes());
        assert!(rep.guaranteed);
        assert!(rep.violations.is_empty());
        assert_eq!(rep.outcomes.len(), 20);

        let rep = perturbation_test(
            &germs(&r, &["x", "y"]),
            1,
            10,
            3,
            &Property::RegularSequence,
            &cfg,
        )
        .unwrap();
        assert!(rep.violations.is_empty() && rep.baseline.is_yes());
    }

    #[test]
    fn non_regular_is_reported_not_guaranteed() {
        let cfg = Settings::default();
        let r = RingSpec::new(["x", "y"]).unwrap();
        let rep = perturbation_test(
            &germs(&r, &["x*y", "x"]),
            3,
            10,
            1,
            &Property::RegularSequence,
            &cfg,
        )
        .unwrap();
        assert!(rep.baseline.is_no());
        assert!(!rep.guaranteed);
        // generic tails break the dependency between xy and x
        assert!(!rep.violations.is_empty());
        assert!(rep
            .outcomes
            .iter()
            .all(|o| o.kind != VerdictKind::UnknownAtBound));
    }

    #[test]
    fn flatness_on_a_fixed_source() {
        let cfg = Settings::default();
        let r = RingSpec::new(["x", "y"]).unwrap();
        let prop = Property::FlatCi {
            relations: germs(&r, &["x*y"]),
        };
        let rep = perturbation_test(&germs(&r, &["x + y"]), 2, 8, 0, &prop, &cfg).unwrap();
        assert!(rep.baseline.is_yes());
        assert!(rep.guaranteed);
        assert!(rep.violations.is_empty());
    }
}
