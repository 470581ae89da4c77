use std::fmt;

use serde::Serialize;

use super::verdict::Verdict;
use super::{exact_diagram, jet_ideal, numerators, Settings};
use crate::algebra::{Exponent, Germ, OrderSpec};
use crate::diagram::{Diagram, DiagramSlice};
use crate::error::{Error, Result};
use crate::jet_oracle::truncated_diagram;
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelledVerdict {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LabelledVerdict {
    pub fn new(label: impl Into<String>, verdict: Verdict) -> Self {
        LabelledVerdict {
            label: label.into(),
            verdict: Some(verdict),
            note: None,
        }
    }
}

/// One jet order of a sweep. Fields that a given sweep does not compute
/// stay empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub mu: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice: Option<DiagramSlice>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<Vec<Exponent>>,
    /// Slice of `N(I_μ)` equals `N(I)` up to the length bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice_equal: Option<bool>,
    /// `N(I_μ) ⊇ N(I)` up to the length bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub containment: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_equal: Option<bool>,
    /// Vertices of the slice of `N(I_μ)` lying outside `N(I)`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub new_points: Vec<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub hilbert_samuel: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<LabelledVerdict>,
}

impl SweepRow {
    pub(crate) fn new(mu: u32) -> Self {
        SweepRow {
            mu,
            slice: None,
            exact: None,
            slice_equal: None,
            containment: None,
            exact_equal: None,
            new_points: Vec::new(),
            dimension: None,
            hilbert_samuel: Vec::new(),
            verdicts: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "mu", rename_all = "snake_case")]
pub enum Stabilization {
    /// `N(I_μ) = N(I)` for every `μ` from this order to the end of the range.
    ObservedAt(u32),
    NotStabilizedInRange,
}

impl fmt::Display for Stabilization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilization::ObservedAt(mu) => write!(f, "observed stabilization at mu = {mu}"),
            Stabilization::NotStabilizedInRange => f.write_str("not stabilized in range"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub mu_min: u32,
    pub mu_max: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length_bound: Option<u32>,
    /// Vertices of `N(I)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<Vec<Exponent>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference_verdict: Option<Verdict>,
    pub rows: Vec<SweepRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilization: Option<Stabilization>,
}

impl SweepReport {
    pub(crate) fn new(mu_min: u32, mu_max: u32) -> Self {
        SweepReport {
            mu_min,
            mu_max,
            length_bound: None,
            reference: None,
            reference_dimension: None,
            reference_verdict: None,
            rows: Vec::new(),
            stabilization: None,
        }
    }

    pub fn row(&self, mu: u32) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.mu == mu)
    }
}

fn check_range(mu_min: u32, mu_max: u32) -> Result<()> {
    if mu_min > mu_max {
        return Err(Error::InvalidRange(format!("{mu_min}..{mu_max} is empty")));
    }
    Ok(())
}

fn arity_of(gens: &[Germ]) -> Result<usize> {
    gens.first()
        .map(|g| g.ring().arity())
        .ok_or_else(|| Error::InvalidRange("no generators".into()))
}

/// Compares `N(I_μ)` with `N(I)` for every `μ` in `mu_min..=mu_max`, both
/// on the oracle slice up to `length_bound` and exactly.
pub fn jet_sweep(
    gens: &[Germ],
    mu_min: u32,
    mu_max: u32,
    length_bound: u32,
    cfg: &Settings,
) -> Result<SweepReport> {
    check_range(mu_min, mu_max)?;
    let m = arity_of(gens)?;
    let ord = OrderSpec::standard(m);
    let reference = exact_diagram(&numerators(gens), m, cfg)?;
    let reference_slice = reference.truncate(length_bound);

    let mus: Vec<u32> = (mu_min..=mu_max).collect();
    let rows = par::map(&mus, |&mu| -> Result<SweepRow> {
        let jets = jet_ideal(gens, mu);
        let slice = truncated_diagram(&jets, length_bound + 1, &ord)?;
        let exact = if jets.is_empty() {
            Diagram::empty(m)
        } else {
            exact_diagram(&jets, m, cfg)?
        };
        let mut row = SweepRow::new(mu);
        row.slice_equal = Some(slice.diagram.equal_upto(&reference, length_bound)?);
        row.containment = Some(reference.subset_upto(&slice.diagram, length_bound)?);
        row.exact_equal = Some(exact == reference);
        row.new_points = slice
            .diagram
            .vertices()
            .iter()
            .filter(|v| !reference_slice.contains_unchecked(v))
            .cloned()
            .collect();
        row.dimension = (!exact.is_full()).then(|| exact.quotient_dimension());
        row.hilbert_samuel = (0..=length_bound)
            .map(|k| exact.hilbert_samuel(k))
            .collect();
        row.exact = Some(exact.vertices().to_vec());
        row.slice = Some(slice);
        Ok(row)
    });

    let mut report = SweepReport::new(mu_min, mu_max);
    report.length_bound = Some(length_bound);
    report.reference_dimension = (!reference.is_full()).then(|| reference.quotient_dimension());
    report.reference = Some(reference.vertices().to_vec());
    report.rows = rows.into_iter().collect::<Result<_>>()?;
    let tail = report
        .rows
        .iter()
        .rev()
        .take_while(|r| r.exact_equal == Some(true))
        .last();
    report.stabilization = Some(match tail {
        Some(r) => Stabilization::ObservedAt(r.mu),
        None => Stabilization::NotStabilizedInRange,
    });
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemicontinuityRow {
    pub mu: u32,
    /// `None` when `I_μ` is the unit ideal.
    pub dimension: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemicontinuityReport {
    pub reference_dimension: Option<usize>,
    /// `m - s`.
    pub lower_bound: i64,
    pub rows: Vec<SemicontinuityRow>,
    /// First `μ` with `dim K{x}/I_μ = dim K{x}/I`.
    pub first_equal: Option<u32>,
    /// Whether `dim K{x}/I_μ ≥ m - s` on every row.
    pub lower_bound_holds: bool,
}

/// Tracks `dim K{x}/I_μ` against `dim K{x}/I` and the lower bound `m - s`.
pub fn dimension_semicontinuity_probe(
    gens: &[Germ],
    mu_min: u32,
    mu_max: u32,
    cfg: &Settings,
) -> Result<SemicontinuityReport> {
    check_range(mu_min, mu_max)?;
    let m = arity_of(gens)?;
    let dim_of = |d: &Diagram| (!d.is_full()).then(|| d.quotient_dimension());
    let reference = dim_of(&exact_diagram(&numerators(gens), m, cfg)?);
    let mus: Vec<u32> = (mu_min..=mu_max).collect();
    let rows = par::map(&mus, |&mu| -> Result<SemicontinuityRow> {
        let jets = jet_ideal(gens, mu);
        let d = if jets.is_empty() {
            Diagram::empty(m)
        } else {
            exact_diagram(&jets, m, cfg)?
        };
        Ok(SemicontinuityRow {
            mu,
            dimension: dim_of(&d),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let lower_bound = m as i64 - gens.len() as i64;
    Ok(SemicontinuityReport {
        reference_dimension: reference,
        lower_bound,
        first_equal: rows.iter().find(|r| r.dimension == reference).map(|r| r.mu),
        lower_bound_holds: rows
            .iter()
            .all(|r| r.dimension.is_none_or(|d| d as i64 >= lower_bound)),
        rows,
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

    fn example() -> Vec<Germ> {
        let r = RingSpec::new(["x", "y"]).unwrap();
        germs(
            &r,
            &[
                "(x^3*y + x*y^4 - x^3*y^2) / (1 - y)",
                "(x^2*y^3 + y^6 - x^2*y^4) / (1 - y)",
            ],
        )
    }

    #[test]
    fn series_example_never_stabilizes() {
        let cfg = Settings::default();
        let rep = jet_sweep(&example(), 5, 9, 12, &cfg).unwrap();
        assert_eq!(rep.stabilization, Some(Stabilization::NotStabilizedInRange));
        for row in &rep.rows {
            let witness = Exponent::from([1, row.mu + 1]);
            let slice = row.slice.as_ref().unwrap();
            assert_eq!(slice.contains(&witness), Some(true), "mu = {}", row.mu);
            assert_eq!(row.containment, Some(true));
            assert_eq!(row.exact_equal, Some(false));
        }
        assert!(!rep.rows.is_empty());
    }

    #[test]
    fn polynomial_ideals_stabilize() {
        let cfg = Settings::default();
        let r = RingSpec::new(["x", "y"]).unwrap();
        let rep = jet_sweep(&germs(&r, &["x^2", "y^2"]), 2, 5, 6, &cfg).unwrap();
        assert_eq!(rep.stabilization, Some(Stabilization::ObservedAt(2)));
        assert!(rep.rows.iter().all(|r| r.slice_equal == Some(true)));

        let f = germs(&r, &["x^2*y + x^5 + y^7"]);
        let rep = jet_sweep(&f, 1, 8, 9, &cfg).unwrap();
        assert_eq!(rep.stabilization, Some(Stabilization::ObservedAt(3)));
        assert!(format!("{}", rep.stabilization.unwrap()).contains("observed"));
        assert!(jet_sweep(&f, 3, 2, 4, &cfg).is_err());
    }

    #[test]
    fn semicontinuity() {
        let cfg = Settings::default();
        let r = RingSpec::new(["x", "y"]).unwrap();
        let rep =
            dimension_semicontinuity_probe(&germs(&r, &["x^2 + y^3", "x*y"]), 1, 5, &cfg).unwrap();
        assert_eq!(rep.reference_dimension, Some(0));
        // j^2 gives (x^2, xy), still one-dimensional
        assert_eq!(rep.rows[1].dimension, Some(1));
        assert_eq!(rep.first_equal, Some(3));
        assert!(rep.lower_bound_holds);

        let rep = dimension_semicontinuity_probe(&germs(&r, &["x*y", "x"]), 1, 4, &cfg).unwrap();
        assert_eq!(rep.reference_dimension, Some(1));
        assert!(rep.rows.iter().all(|r| r.dimension == Some(1)));

        let rep = dimension_semicontinuity_probe(&germs(&r, &["x^3 + y^4"]), 1, 6, &cfg).unwrap();
        assert_eq!(rep.first_equal, Some(3));
        assert!(rep.rows[2..].iter().all(|r| r.dimension == Some(1)));
        assert_eq!(rep.rows[0].dimension, Some(2));
    }
}
