use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A state path: `horizon` states of dimension `dim`, stored row-major.
///
/// Time indices are 0-based throughout the crate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatePath {
    dim: usize,
    values: Vec<f64>,
}

impl StatePath {
    pub fn new(dim: usize, values: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("state dimension must be positive".into()));
        }
        if values.is_empty() || values.len() % dim != 0 {
            return Err(Error::InvalidInput(format!(
                "path length {} is not a positive multiple of the state dimension {}",
                values.len(),
                dim
            )));
        }
        Ok(Self { dim, values })
    }

    pub fn zeros(horizon: usize, dim: usize) -> Self {
        Self { dim, values: vec![0.0; horizon * dim] }
    }

    /// Builds a path of scalar states.
    pub fn scalar(values: Vec<f64>) -> Self {
        Self { dim: 1, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn horizon(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// State at time `t`.
    pub fn state(&self, t: usize) -> &[f64] {
        &self.values[t * self.dim..(t + 1) * self.dim]
    }

    pub fn state_mut(&mut self, t: usize) -> &mut [f64] {
        &mut self.values[t * self.dim..(t + 1) * self.dim]
    }

    /// Flattened states strictly before time `t` (the history seen when
    /// proposing state `t`).
    pub fn prefix(&self, t: usize) -> &[f64] {
        &self.values[..t * self.dim]
    }

    /// Flattened states up to and including time `t`.
    pub fn prefix_inclusive(&self, t: usize) -> &[f64] {
        &self.values[..(t + 1) * self.dim]
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_is_row_major() {
        let p = StatePath::new(2, vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(p.horizon(), 3);
        assert_eq!(p.state(1), &[2.0, 3.0]);
        assert_eq!(p.prefix(1), &[0.0, 1.0]);
        assert_eq!(p.prefix_inclusive(1), &[0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn rejects_mismatched_length() {
        assert!(StatePath::new(2, vec![1.0, 2.0, 3.0]).is_err());
        assert!(StatePath::new(0, vec![]).is_err());
    }
}
