//! The emulated state space model abstraction.
//!
//! An emulated model packages an optimization objective `f` together with an
//! artificial state space model whose posterior over state paths is
//! proportional to `exp(-c * f)`, where `c` is the model's Boltzmann
//! coefficient (the inverse temperature, up to a problem-specific factor).
//! Raising the inverse temperature sharpens the posterior around the optimum
//! without moving it.

use crate::error::{Error, Result};
use crate::path::StatePath;
use rand::RngCore;

/// A temperature-indexed state space model emulating an objective function.
///
/// Conventions:
/// - Time indices are 0-based and run over `0..horizon()`.
/// - `history` is the flattened sequence of states before `t`;
///   `prefix` additionally includes the state at `t` as its tail.
/// - `state_logpdf` and the proposal densities used with a model must share
///   the same dominating measure per step. For singular transitions (the
///   spline model) that measure is the one-dimensional innovation coordinate.
/// - Densities are normalized where a closed form exists, so the sum of the
///   per-step terms differs from `-boltzmann_coefficient() * objective` only
///   by a path-independent constant.
pub trait EmulatedModel: Send + Sync {
    /// Number of time steps T.
    fn horizon(&self) -> usize;

    /// Dimension of one state.
    fn state_dim(&self) -> usize;

    /// Smallest number of trailing states the transition density reads.
    fn memory_depth(&self) -> usize;

    /// Current inverse temperature.
    fn kappa(&self) -> f64;

    /// Inverse temperature the base model was built with.
    fn kappa0(&self) -> f64;

    /// Scaling `c` such that log-target differences equal `-c` times
    /// objective differences.
    fn boltzmann_coefficient(&self) -> f64 {
        self.kappa()
    }

    /// log p_t(x_t | history).
    fn state_logpdf(&self, t: usize, state: &[f64], history: &[f64]) -> f64;

    /// Draws from the state equation at `t`. For models whose initial law is
    /// improper (flat), `t = 0` draws from the designated initialization
    /// distribution instead; engines always account for proposal densities
    /// separately, so this is a convenience for seeding.
    fn sample_state(&self, t: usize, history: &[f64], rng: &mut dyn RngCore) -> Vec<f64>;

    /// log g_t(y_t | x_t) (or, for history-dependent observation devices,
    /// log g_t given the whole prefix through `t`).
    fn obs_logpdf(&self, t: usize, prefix: &[f64]) -> f64;

    /// The original objective `f`, independent of temperature.
    fn objective(&self, path: &StatePath) -> f64;

    /// The same model at a new inverse temperature. Normalizations are
    /// recomputed in closed form; the objective is unchanged.
    fn temper(&self, kappa_new: f64) -> Result<Self>
    where
        Self: Sized;

    /// Whether the state evolution has full rank (degrees of freedom equal
    /// to the state dimension). Grid-based path reassembly requires this.
    fn transition_nonsingular(&self) -> bool {
        true
    }

    /// Change in `objective` when the state at `t` is replaced by
    /// `new_state`, given an optional model-maintained cache. The default
    /// recomputes the whole objective; models override it with local
    /// arithmetic where the objective decomposes.
    fn objective_delta(
        &self,
        path: &StatePath,
        _cache: &SiteCache,
        t: usize,
        new_state: &[f64],
    ) -> f64 {
        let before = self.objective(path);
        let mut changed = path.clone();
        changed.state_mut(t).copy_from_slice(new_state);
        self.objective(&changed) - before
    }

    /// Builds the per-path cache consumed by `objective_delta`.
    fn site_cache(&self, _path: &StatePath) -> SiteCache {
        SiteCache::None
    }

    /// Updates the cache after the state at `t` changed from its value in
    /// `path_before` to `new_state`.
    fn site_cache_update(
        &self,
        _cache: &mut SiteCache,
        _path_before: &StatePath,
        _t: usize,
        _new_state: &[f64],
    ) {
    }

    /// One sweep of an exact block-Gibbs move preserving the model's target,
    /// where the model's structure admits one. The default reports the model
    /// as unsupported.
    fn gibbs_block_sweep(&self, _path: &mut StatePath, _rng: &mut dyn RngCore) -> Result<()> {
        Err(Error::UnsupportedModel(
            "blocked Gibbs is only available for linear-Gaussian emulations".into(),
        ))
    }
}

/// Per-path scratch for fast single-site objective deltas.
#[derive(Debug, Clone)]
pub enum SiteCache {
    None,
    /// Residual vector maintained by the regression-style models.
    Residual(Vec<f64>),
}

/// log of the (unnormalized) posterior of `path` under `model`:
/// the sum of all state and observation log densities.
pub fn log_target_density<M: EmulatedModel + ?Sized>(model: &M, path: &StatePath) -> Result<f64> {
    if path.horizon() != model.horizon() || path.dim() != model.state_dim() {
        return Err(Error::InvalidInput(format!(
            "path shape {}x{} does not match model {}x{}",
            path.horizon(),
            path.dim(),
            model.horizon(),
            model.state_dim()
        )));
    }
    if !path.is_finite() {
        return Err(Error::InvalidInput("path contains non-finite entries".into()));
    }
    let mut total = 0.0;
    for t in 0..model.horizon() {
        total += model.state_logpdf(t, path.state(t), path.prefix(t));
        total += model.obs_logpdf(t, path.prefix_inclusive(t));
    }
    Ok(total)
}

/// Validates a prospective inverse temperature.
pub fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::InvalidInput(format!(
            "inverse temperature must be a positive real, got {kappa}"
        )));
    }
    Ok(())
}
