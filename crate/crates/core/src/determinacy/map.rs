use std::fmt;

use serde::Serialize;

use super::verdict::{Certificate, Verdict};
use super::{
    axis_certificate_length, exact_diagram, numerators, regseq_axis_certificate, regular_sequence,
    LabelledVerdict, Settings, SweepReport, SweepRow,
};
use num_traits::Zero;

use crate::algebra::{same_ring, Exponent, Germ, Poly, Ring, RingSpec};
use crate::error::{Error, Result};
use crate::par;

/// A map germ `φ: (X,0) → (K^n,0)` with `X = V(h_1..h_s) ⊂ K^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpec {
    ring: Ring,
    relations: Vec<Germ>,
    components: Vec<Germ>,
}

impl MapSpec {
    pub fn new(ring: &Ring, relations: Vec<Germ>, components: Vec<Germ>) -> Result<Self> {
        if relations.is_empty() && components.is_empty() {
            return Err(Error::InvalidMap(
                "at least one relation or component is required".into(),
            ));
        }
        for g in relations.iter().chain(&components) {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !g
                .numerator()
                .coefficient(&Exponent::zero(ring.arity()))
                .is_zero()
            {
                return Err(Error::InvalidMap(format!(
                    "`{g}` does not vanish at the origin"
                )));
            }
        }
        Ok(MapSpec {
            ring: ring.clone(),
            relations,
            components,
        })
    }

    pub fn from_polys(ring: &Ring, relations: Vec<Poly>, components: Vec<Poly>) -> Result<Self> {
        Self::new(
            ring,
            relations.into_iter().map(Germ::from).collect(),
            components.into_iter().map(Germ::from).collect(),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn relations(&self) -> &[Germ] {
        &self.relations
    }

    pub fn components(&self) -> &[Germ] {
        &self.components
    }

    /// The same source with other components.
    pub fn with_components(&self, components: Vec<Germ>) -> Result<Self> {
        Self::new(&self.ring, self.relations.clone(), components)
    }

    fn jet_map(&self, mu: u32, truncate_source: bool) -> MapSpec {
        let jets = |gs: &[Germ]| gs.iter().map(|g| Germ::from(g.jet(mu))).collect();
        MapSpec {
            ring: self.ring.clone(),
            relations: if truncate_source {
                jets(&self.relations)
            } else {
                self.relations.clone()
            },
            components: jets(&self.components),
        }
    }
}

fn graph_ring(m: &MapSpec) -> Result<Ring> {
    let vars = m.ring.variables();
    let mut prefix = String::from("_y");
    while vars.iter().any(|v| v.starts_with(&prefix)) {
        prefix.push('_');
    }
    let base: Vec<String> = (1..=m.components.len())
        .map(|j| format!("{prefix}{j}"))
        .collect();
    RingSpec::with_base(base, vars.to_vec())
}

/// Generators of `J(0)` where `J = (h, y - φ)` is the graph ideal in
/// `K{y, x}`; the result is `h ∪ φ` in the ring of the source.
pub fn fibre_ideal(m: &MapSpec) -> Result<Vec<Poly>> {
    let graph = graph_ring(m)?;
    let n = m.components.len();
    let mut gens = Vec::with_capacity(m.relations.len() + n);
    for h in &m.relations {
        gens.push(h.numerator().lift_into(&graph)?);
    }
    for (j, phi) in m.components.iter().enumerate() {
        // u·y_j - g for φ_j = g/u
        let u = phi.unit().lift_into(&graph)?;
        let g = phi.numerator().lift_into(&graph)?;
        gens.push(&(&u * &Poly::var(&graph, j)) - &g);
    }
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            let at_zero = g.evaluate_base_zero()?.reorder(&m.ring)?;
            Ok(if i < m.relations.len() {
                at_zero
            } else {
                -at_zero
            })
        })
        .collect()
}

/// Flatness of `φ` at the origin for a complete-intersection source, decided
/// by comparing `dim K{x}/J(0)` with `(m - s) - n`.
pub fn flat_ci(m: &MapSpec, cfg: &Settings) -> Result<Verdict> {
    let hs = numerators(&m.relations);
    if !hs.is_empty() && !regular_sequence(&hs, cfg)?.is_yes() {
        return Err(Error::SourceNotCompleteIntersection);
    }
    let arity = m.ring.arity() as i64;
    let expected = arity - hs.len() as i64 - m.components.len() as i64;
    if expected < 0 {
        let mut c = Certificate::reason(format!(
            "dim X = {} is smaller than the target dimension {}",
            arity - hs.len() as i64,
            m.components.len()
        ));
        c.expected_dimension = Some(expected);
        return Ok(Verdict::no(c));
    }
    let d = exact_diagram(&fibre_ideal(m)?, m.ring.arity(), cfg)?;
    let dim = if d.is_full() {
        -1
    } else {
        d.quotient_dimension() as i64
    };
    let mut c = Certificate::reason(if d.is_full() {
        "fibre ideal is the unit ideal".to_string()
    } else {
        format!("dim K{{x}}/J(0) = {dim}, (m - s) - n = {expected}")
    })
    .with_diagram(&d);
    if d.is_full() {
        c.dimension = None;
    }
    c.expected_dimension = Some(expected);
    Ok(if dim == expected {
        Verdict::yes(c)
    } else {
        Verdict::no(c)
    })
}

/// `dim_K K{x}/J(0)` when finite.
pub fn milnor_mu0(m: &MapSpec, cfg: &Settings) -> Result<Option<u64>> {
    let d = exact_diagram(&fibre_ideal(m)?, m.ring.arity(), cfg)?;
    Ok(d.complement_size())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundScope {
    /// Both directions of the jet criterion hold from this order on.
    FullEquivalence,
    /// Only flatness of `φ` implies flatness of its jets from this order on.
    ForwardOnly,
}

impl fmt::Display for BoundScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundScope::FullEquivalence => "full equivalence (finite map)",
            BoundScope::ForwardOnly => "forward direction only (flat implies jets flat)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminacyBound {
    pub bound: u32,
    pub scope: BoundScope,
    pub certificate: Certificate,
}

/// A jet order from which flatness is determined, with the strength of the
/// guarantee. Finite maps use the Milnor number; flat maps with
/// positive-dimensional fibre use the longest axis vertex of a generic
/// diagram of the fibre ideal.
pub fn determinacy_bound(m: &MapSpec, cfg: &Settings) -> Result<DeterminacyBound> {
    let fibre = fibre_ideal(m)?;
    let d = exact_diagram(&fibre, m.ring.arity(), cfg)?;
    if let (false, Some(mu0)) = (d.is_full(), d.complement_size()) {
        return Ok(DeterminacyBound {
            bound: u32::try_from(mu0).unwrap_or(u32::MAX),
            scope: BoundScope::FullEquivalence,
            certificate: Certificate::reason(format!("Milnor number {mu0}")).with_diagram(&d),
        });
    }
    let flat = match flat_ci(m, cfg) {
        Ok(v) => v,
        Err(Error::SourceNotCompleteIntersection) => return Err(Error::NoCertifiedBound),
        Err(e) => return Err(e),
    };
    if !flat.is_yes() {
        return Err(Error::NoCertifiedBound);
    }
    let axes = regseq_axis_certificate(&fibre, cfg.trials, cfg.seed, cfg.bound, cfg)?;
    match axis_certificate_length(&axes) {
        Some(len) => {
            let mut certificate = axes.certificate().clone();
            certificate.reason = format!("longest axis vertex has length {len}");
            Ok(DeterminacyBound {
                bound: len,
                scope: BoundScope::ForwardOnly,
                certificate,
            })
        }
        None => Err(Error::NoCertifiedBound),
    }
}

/// Flatness of the jets `j^μφ` on `X` and on the truncated source
/// `X_μ = V(j^μh)`, for every `μ` in `mu_min..=mu_max`.
pub fn jet_flatness_equivalence(
    m: &MapSpec,
    mu_min: u32,
    mu_max: u32,
    cfg: &Settings,
) -> Result<SweepReport> {
    if mu_min > mu_max {
        return Err(Error::InvalidRange(format!("{mu_min}..{mu_max} is empty")));
    }
    let reference = flat_ci(m, cfg)?;
    let mus: Vec<u32> = (mu_min..=mu_max).collect();
    let rows = par::map(&mus, |&mu| -> Result<SweepRow> {
        let on_x = flat_ci(&m.jet_map(mu, false), cfg)?;
        let on_x_mu = match flat_ci(&m.jet_map(mu, true), cfg) {
            Ok(v) => LabelledVerdict::new("jet map on X_mu", v),
            Err(Error::SourceNotCompleteIntersection) => LabelledVerdict {
                label: "jet map on X_mu".into(),
                verdict: None,
                note: Some("truncated source is not a complete intersection".into()),
            },
            Err(e) => return Err(e),
        };
        let mut row = SweepRow::new(mu);
        row.verdicts = vec![LabelledVerdict::new("jet map on X", on_x), on_x_mu];
        Ok(row)
    });
    let mut report = SweepReport::new(mu_min, mu_max);
    report.rows = rows.into_iter().collect::<Result<_>>()?;
    report.reference_verdict = Some(reference);
    Ok(report)
}

/// Checks that replacing `φ` by `ψ` with the same `μ0`-jets leaves the
/// diagram of the fibre ideal unchanged.
pub fn diagram_determinacy_check(m: &MapSpec, psi: &[Germ], cfg: &Settings) -> Result<bool> {
    if psi.len() != m.components.len() {
        return Err(Error::InvalidMap(format!(
            "expected {} components, found {}",
            m.components.len(),
            psi.len()
        )));
    }
    let mu0 = milnor_mu0(m, cfg)?.ok_or(Error::NoMilnorNumber)?;
    let mu0 = u32::try_from(mu0).unwrap_or(u32::MAX);
    for (j, (a, b)) in m.components.iter().zip(psi).enumerate() {
        if a.jet(mu0) != b.jet(mu0) {
            return Err(Error::JetMismatch {
                order: mu0,
                component: j,
            });
        }
    }
    let other = m.with_components(psi.to_vec())?;
    let arity = m.ring.arity();
    Ok(exact_diagram(&fibre_ideal(m)?, arity, cfg)?
        == exact_diagram(&fibre_ideal(&other)?, arity, cfg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse::parse_poly;

    fn map(vars: &[&str], rel: &[&str], comp: &[&str]) -> MapSpec {
        let r = RingSpec::new(vars.iter().copied()).unwrap();
        let p = |s: &&str| parse_poly(&r, s).unwrap();
        MapSpec::from_polys(
            &r,
            rel.iter().map(p).collect(),
            comp.iter().map(p).collect(),
        )
        .unwrap()
    }

    fn strs(ps: &[Poly]) -> Vec<String> {
        ps.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn validation() {
        let r = RingSpec::new(["x"]).unwrap();
        assert!(MapSpec::from_polys(&r, vec![], vec![]).is_err());
        let one = parse_poly(&r, "1 + x").unwrap();
        assert!(MapSpec::from_polys(&r, vec![], vec![one]).is_err());
    }

    #[test]
    fn fibre_ideals() {
        assert_eq!(
            strs(&fibre_ideal(&map(&["x"], &[], &["x^2"])).unwrap()),
            ["x^2"]
        );
        let m = map(&["x", "y"], &["x*y"], &["x"]);
        assert_eq!(fibre_ideal(&m).unwrap(), {
            let r = m.ring().clone();
            vec![parse_poly(&r, "x*y").unwrap(), parse_poly(&r, "x").unwrap()]
        });
        let m = map(&["x", "y"], &[], &["x^2 + y^3", "x*y"]);
        let r = m.ring().clone();
        assert_eq!(
            fibre_ideal(&m).unwrap(),
            vec![
                parse_poly(&r, "x^2 + y^3").unwrap(),
                parse_poly(&r, "x*y").unwrap()
            ]
        );
    }

    #[test]
    fn flatness() {
        let cfg = Settings::default();
        assert!(flat_ci(&map(&["x", "y"], &["x*y"], &["x"]), &cfg)
            .unwrap()
            .is_no());
        assert!(flat_ci(&map(&["x", "y"], &["x*y"], &["x + y"]), &cfg)
            .unwrap()
            .is_yes());
        assert!(flat_ci(&map(&["x", "y"], &[], &["x^2 + y^3", "x*y"]), &cfg)
            .unwrap()
            .is_yes());
        assert!(flat_ci(&map(&["x"], &[], &["x", "x^2"]), &cfg)
            .unwrap()
            .is_no());
        assert!(matches!(
            flat_ci(&map(&["x", "y"], &["x*y", "x"], &["y"]), &cfg),
            Err(Error::SourceNotCompleteIntersection)
        ));
    }

    #[test]
    fn milnor_numbers_and_bounds() {
        let cfg = Settings::default();
        assert_eq!(
            milnor_mu0(&map(&["x"], &[], &["x^2"]), &cfg).unwrap(),
            Some(2)
        );
        let cusp = map(&["x", "y"], &[], &["x^2 + y^3", "x*y"]);
        assert_eq!(milnor_mu0(&cusp, &cfg).unwrap(), Some(5));
        assert_eq!(
            milnor_mu0(&map(&["x", "y"], &["x*y"], &["x"]), &cfg).unwrap(),
            None
        );

        let b = determinacy_bound(&map(&["x"], &[], &["x^2"]), &cfg).unwrap();
        assert_eq!((b.bound, b.scope), (2, BoundScope::FullEquivalence));
        let b = determinacy_bound(&cusp, &cfg).unwrap();
        assert_eq!((b.bound, b.scope), (5, BoundScope::FullEquivalence));
        let b = determinacy_bound(&map(&["x", "y"], &[], &["x"]), &cfg).unwrap();
        assert_eq!((b.bound, b.scope), (1, BoundScope::ForwardOnly));
        assert!(matches!(
            determinacy_bound(&map(&["x", "y"], &["x*y"], &["x"]), &cfg),
            Err(Error::NoCertifiedBound)
        ));
    }

    #[test]
    fn jet_flatness() {
        let cfg = Settings::default();
        let m = map(&["x", "y"], &[], &["x^2 + y^3 + x^9", "x*y"]);
        let rep = jet_flatness_equivalence(&m, 2, 6, &cfg).unwrap();
        assert_eq!(rep.rows.len(), 5);
        // j^2 = (x^2, xy) has a one-dimensional fibre
        for row in &rep.rows {
            let flat = row.mu >= 3;
            assert!(row
                .verdicts
                .iter()
                .all(|v| v.verdict.as_ref().unwrap().is_yes() == flat));
        }
        let m = map(&["x", "y"], &["x*y"], &["x"]);
        let rep = jet_flatness_equivalence(&m, 1, 4, &cfg).unwrap();
        for row in &rep.rows {
            assert!(row.verdicts[0].verdict.as_ref().unwrap().is_no());
        }
        // j^1(xy) = 0 does not cut out a complete intersection
        assert!(rep.rows[0].verdicts[1].verdict.is_none());
        assert!(rep.rows[1..]
            .iter()
            .all(|r| r.verdicts[1].verdict.as_ref().unwrap().is_no()));
        assert!(jet_flatness_equivalence(&m, 4, 1, &cfg).is_err());
    }

    #[test]
    fn determinacy_transfer() {
        let cfg = Settings::default();
        let m = map(&["x"], &[], &["x^2"]);
        let germs = |m: &MapSpec, ss: &[&str]| -> Vec<Germ> {
            ss.iter()
                .map(|s| Germ::from(parse_poly(m.ring(), s).unwrap()))
                .collect()
        };
        assert!(diagram_determinacy_check(&m, &germs(&m, &["x^2 + x^5"]), &cfg).unwrap());
        assert!(diagram_determinacy_check(&m, m.components(), &cfg).unwrap());
        assert!(matches!(
            diagram_determinacy_check(&m, &germs(&m, &["2*x^2"]), &cfg),
            Err(Error::JetMismatch {
                order: 2,
                component: 0
            })
        ));

        let cusp = map(&["x", "y"], &[], &["x^2 + y^3", "x*y"]);
        let psi = germs(&cusp, &["x^2 + y^3 + y^9", "x*y + x^8"]);
        assert!(diagram_determinacy_check(&cusp, &psi, &cfg).unwrap());

        let line = map(&["x", "y"], &["x*y"], &["x"]);
        assert!(matches!(
            diagram_determinacy_check(&line, &germs(&line, &["x"]), &cfg),
            Err(Error::NoMilnorNumber)
        ));
    }
}
