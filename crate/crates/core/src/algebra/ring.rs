use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::exponent::OrderSpec;
use crate::error::{Error, Result};

/// Variables of a polynomial ring over ℚ together with the order its
/// polynomials are kept sorted by.
///
/// When `base_split = Some(n)` the first `n` variables are base variables
/// `y_1..y_n` and the remaining ones are the fibre variables `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingSpec {
    variables: Vec<String>,
    base_split: Option<usize>,
    order: OrderSpec,
}

pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new<S: Into<String>>(variables: impl IntoIterator<Item = S>) -> Result<Ring> {
        let variables: Vec<String> = variables.into_iter().map(Into::into).collect();
        let order = OrderSpec::standard(variables.len());
        Self::build(variables, None, order)
    }

    pub fn with_order<S: Into<String>>(
        variables: impl IntoIterator<Item = S>,
        order: OrderSpec,
    ) -> Result<Ring> {
        Self::build(variables.into_iter().map(Into::into).collect(), None, order)
    }

    /// A ring `K{y, x}` whose first `base.len()` variables are base variables.
    pub fn with_base<S: Into<String>>(
        base: impl IntoIterator<Item = S>,
        fibre: impl IntoIterator<Item = S>,
    ) -> Result<Ring> {
        let mut variables: Vec<String> = base.into_iter().map(Into::into).collect();
        let n = variables.len();
        variables.extend(fibre.into_iter().map(Into::into));
        let order = OrderSpec::standard(variables.len());
        Self::build(variables, Some(n), order)
    }

    fn build(variables: Vec<String>, base_split: Option<usize>, order: OrderSpec) -> Result<Ring> {
        let mut seen = HashSet::new();
        for v in &variables {
            if v.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let Some(n) = base_split {
            if n > variables.len() {
                return Err(Error::InvalidRing("base split exceeds arity".into()));
            }
        }
        if order.arity() != variables.len() {
            return Err(Error::ArityMismatch {
                expected: variables.len(),
                found: order.arity(),
            });
        }
        Ok(Arc::new(RingSpec {
            variables,
            base_split,
            order,
        }))
    }

    pub fn arity(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn base_split(&self) -> Option<usize> {
        self.base_split
    }

    pub fn order(&self) -> &OrderSpec {
        &self.order
    }

    /// Same variables, different order.
    pub fn reordered(&self, order: OrderSpec) -> Result<Ring> {
        Self::build(self.variables.clone(), self.base_split, order)
    }

    /// The ring of the fibre variables only, with the matching order weights.
    pub fn fibre_ring(&self) -> Result<Ring> {
        let n = self.base_split.ok_or(Error::NoBaseSplit)?;
        let order = OrderSpec::new(self.order.weights()[n..].to_vec())?;
        Self::build(self.variables[n..].to_vec(), None, order)
    }
}
