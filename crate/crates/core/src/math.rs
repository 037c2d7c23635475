//! Shared numerical helpers: log-space reductions, stable normal tail
//! functions, and a handful of samplers used by proposals and kernels.

use rand::Rng;
use rand::RngCore;

pub const LN_2PI: f64 = 1.8378770664093453;
const ONE_OVER_SQRT_PI: f64 = 0.5641895835477563;

/// log(sum_i exp(x_i)) with max subtraction. Returns -inf for an empty or
/// all -inf input.
pub fn logsumexp(xs: &[f64]) -> f64 {
    let max = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = xs.iter().map(|&x| (x - max).exp()).sum();
    max + sum.ln()
}

/// Gaussian log density.
#[inline]
pub fn log_normal_pdf(x: f64, mean: f64, var: f64) -> f64 {
    let d = x - mean;
    -0.5 * (LN_2PI + var.ln()) - d * d / (2.0 * var)
}

/// Laplace log density with scale `b`.
#[inline]
pub fn log_laplace_pdf(x: f64, loc: f64, b: f64) -> f64 {
    -(x - loc).abs() / b - (2.0 * b).ln()
}

/// Complementary error function, after W. J. Cody's SPECFUN rational
/// approximations (relative error ~1e-16 over the real line).
pub fn erfc(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 0.46875 {
        return 1.0 - erf_small(x);
    }
    let v = if ax <= 4.0 { erfc_mid(ax) } else { erfc_large(ax) };
    if x < 0.0 {
        2.0 - v
    } else {
        v
    }
}

fn erf_small(x: f64) -> f64 {
    const A: [f64; 5] = [
        3.16112374387056560e0,
        1.13864154151050156e2,
        3.77485237685302021e2,
        3.20937758913846947e3,
        1.85777706184603153e-1,
    ];
    const B: [f64; 4] = [
        2.36012909523441209e1,
        2.44024637934444173e2,
        1.28261652607737228e3,
        2.84423683343917062e3,
    ];
    let z = x * x;
    let num = ((((A[4] * z + A[0]) * z + A[1]) * z + A[2]) * z + A[3]) * x;
    let den = (((z + B[0]) * z + B[1]) * z + B[2]) * z + B[3];
    num / den
}

fn erfc_mid(y: f64) -> f64 {
    const C: [f64; 9] = [
        5.64188496988670089e-1,
        8.88314979438837594e0,
        6.61191906371416295e1,
        2.98635138197400131e2,
        8.81952221241769090e2,
        1.71204761263407058e3,
        2.05107837782607147e3,
        1.23033935479799725e3,
        2.15311535474403846e-8,
    ];
    const D: [f64; 8] = [
        1.57449261107098347e1,
        1.17693950891312499e2,
        5.37181101862009858e2,
        1.62138957456669019e3,
        3.29079923573345963e3,
        4.36261909014324716e3,
        3.43936767414372164e3,
        1.23033935480374942e3,
    ];
    let mut num = C[8] * y;
    let mut den = y;
    for i in 0..7 {
        num = (num + C[i]) * y;
        den = (den + D[i]) * y;
    }
    let r = (num + C[7]) / (den + D[7]);
    (-y * y).exp() * r
}

fn erfc_large(y: f64) -> f64 {
    const P: [f64; 6] = [
        3.05326634961232344e-1,
        3.60344899949804439e-1,
        1.25781726111229246e-1,
        1.60837851487422766e-2,
        6.58749161529837803e-4,
        1.63153871373020978e-2,
    ];
    const Q: [f64; 5] = [
        2.56852019228982242e0,
        1.87295284992346047e0,
        5.27905102951428412e-1,
        6.05183413124413191e-2,
        2.33520497626869185e-3,
    ];
    if y > 26.5 {
        return 0.0;
    }
    let z = 1.0 / (y * y);
    let mut num = P[5] * z;
    let mut den = z;
    for i in 0..4 {
        num = (num + P[i]) * z;
        den = (den + Q[i]) * z;
    }
    let r = z * (num + P[4]) / (den + Q[4]);
    (-y * y).exp() * (ONE_OVER_SQRT_PI - r) / y
}

/// Standard normal CDF.
pub fn norm_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// log of the standard normal CDF, stable far into the left tail.
pub fn log_norm_cdf(z: f64) -> f64 {
    if z > -8.0 {
        let c = norm_cdf(z);
        if c > 0.0 {
            return c.ln();
        }
    }
    // Asymptotic expansion of the Mills ratio for z << 0.
    let x = -z;
    let x2 = x * x;
    let series = 1.0 - 1.0 / x2 + 3.0 / (x2 * x2) - 15.0 / (x2 * x2 * x2);
    -0.5 * x2 - 0.5 * LN_2PI - x.ln() + series.ln()
}

/// Inverse standard normal CDF (Acklam's algorithm plus one Halley step).
pub fn inv_norm_cdf(p: f64) -> f64 {
    assert!(p > 0.0 && p < 1.0, "inv_norm_cdf requires p in (0,1)");
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;
    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    if x * x >= 1400.0 {
        // exp(x^2/2) would overflow; Acklam alone is ~1e-9 accurate out here
        return x;
    }
    let e = 0.5 * erfc(-x / std::f64::consts::SQRT_2) - p;
    let u = e * (2.0 * std::f64::consts::PI).sqrt() * (x * x / 2.0).exp();
    x - u / (1.0 + x * u / 2.0)
}

/// Draw from the standard normal.
#[inline]
pub fn sample_std_normal(rng: &mut dyn RngCore) -> f64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    inv_norm_cdf(u)
}

#[inline]
pub fn sample_normal(rng: &mut dyn RngCore, mean: f64, var: f64) -> f64 {
    mean + var.sqrt() * sample_std_normal(rng)
}

/// Draw from Laplace(loc, b) by inverse CDF.
#[inline]
pub fn sample_laplace(rng: &mut dyn RngCore, loc: f64, b: f64) -> f64 {
    let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0) - 0.5;
    loc - b * u.signum() * (-2.0 * u.abs()).ln_1p()
}

/// Standard normal truncated to [lower, +inf), sampled in standardized units.
pub fn sample_truncnorm_lower_std(rng: &mut dyn RngCore, lower: f64) -> f64 {
    if lower < 5.0 {
        let tail = 0.5 * erfc(lower / std::f64::consts::SQRT_2);
        let u: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let p = 1.0 - u * tail;
        if p < 1.0 {
            return inv_norm_cdf(p).max(lower);
        }
        return lower;
    }
    // Robert's exponential rejection sampler for the far tail.
    let a = 0.5 * (lower + (lower * lower + 4.0).sqrt());
    loop {
        let e: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let x = lower - e.ln() / a;
        let d = x - a;
        let accept: f64 = rng.gen_range(0.0..1.0);
        if accept <= (-0.5 * d * d).exp() {
            return x;
        }
    }
}

/// Normalizes log weights in place by max subtraction; returns the max that
/// was subtracted, or None when every entry is -inf/NaN.
pub fn normalize_log_weights(log_w: &mut [f64]) -> Option<f64> {
    let max = log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return None;
    }
    for w in log_w.iter_mut() {
        *w -= max;
    }
    Some(max)
}

/// Linear weights summing to one, from (possibly unnormalized) log weights.
pub fn weights_from_log(log_w: &[f64]) -> Vec<f64> {
    let max = log_w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut w: Vec<f64> = log_w.iter().map(|&l| (l - max).exp()).collect();
    let sum: f64 = w.iter().sum();
    for v in &mut w {
        *v /= sum;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    #[test]
    fn erfc_reference_values() {
        assert!((erfc(0.0) - 1.0).abs() < 1e-15);
        assert!((erfc(0.3) - 0.6713732267477036).abs() < 1e-14);
        assert!((erfc(1.0) - 0.15729920705028513).abs() < 1e-14);
        assert!((erfc(2.0) - 0.004677734981063017).abs() < 1e-15);
        assert!((erfc(-1.0) - 1.8427007929497148).abs() < 1e-14);
        assert!((erfc(5.0) - 1.5374597944280349e-12).abs() < 1e-24);
        assert!((erfc(10.0) - 2.0884875837625446e-45).abs() < 1e-57);
    }

    #[test]
    fn log_norm_cdf_matches_direct_and_tail() {
        for &z in &[-5.0, -2.0, -0.5, 0.0, 1.0, 3.0] {
            let direct = norm_cdf(z).ln();
            assert!((log_norm_cdf(z) - direct).abs() < 1e-10, "z={z}");
        }
        let a = log_norm_cdf(-30.0);
        let b = log_norm_cdf(-30.5);
        let expect = -0.5 * (30.5f64.powi(2) - 30.0f64.powi(2)) - (30.5f64 / 30.0).ln();
        assert!(((b - a) - expect).abs() < 1e-3);
    }

    #[test]
    fn inv_norm_cdf_round_trips() {
        for &p in &[1e-12, 1e-6, 0.025, 0.5, 0.975, 1.0 - 1e-9] {
            let z = inv_norm_cdf(p);
            let back = norm_cdf(z);
            assert!(
                (back - p).abs() / p.min(1.0 - p) < 1e-9,
                "p={p} z={z} back={back}"
            );
        }
        assert!(inv_norm_cdf(0.5).abs() < 1e-14);
    }

    #[test]
    fn samplers_have_expected_moments() {
        let mut rng = stream_rng(11, &[1]);
        let n = 200_000;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for _ in 0..n {
            let x = sample_normal(&mut rng, 2.0, 4.0);
            sum += x;
            sum2 += x * x;
        }
        let mean = sum / n as f64;
        let var = sum2 / n as f64 - mean * mean;
        assert!((mean - 2.0).abs() < 0.02);
        assert!((var - 4.0).abs() < 0.08);

        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for _ in 0..n {
            let x = sample_laplace(&mut rng, 1.0, 0.5);
            sum += x;
            sum2 += x * x;
        }
        let mean = sum / n as f64;
        let var = sum2 / n as f64 - mean * mean;
        assert!((mean - 1.0).abs() < 0.01);
        assert!((var - 0.5).abs() < 0.02); // Laplace var = 2 b^2

        // truncated normal: E[X | X > a] = phi(a) / Phi(-a)
        let a = 1.5;
        let mut sum = 0.0;
        for _ in 0..n {
            let x = sample_truncnorm_lower_std(&mut rng, a);
            assert!(x >= a);
            sum += x;
        }
        let mean = sum / n as f64;
        let phi = (-0.5 * a * a).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let expect = phi / norm_cdf(-a);
        assert!((mean - expect).abs() < 0.01);

        let a = 9.0;
        let mut sum = 0.0;
        let n_small = 20_000;
        for _ in 0..n_small {
            let x = sample_truncnorm_lower_std(&mut rng, a);
            assert!(x >= a);
            sum += x;
        }
        let mean = sum / n_small as f64;
        assert!((mean - (a + 1.0 / a)).abs() < 0.02);
    }

    #[test]
    fn logsumexp_handles_extremes() {
        assert_eq!(logsumexp(&[]), f64::NEG_INFINITY);
        assert_eq!(logsumexp(&[f64::NEG_INFINITY; 3]), f64::NEG_INFINITY);
        let v = logsumexp(&[-1000.0, -1000.0]);
        assert!((v - (-1000.0 + 2f64.ln())).abs() < 1e-12);
    }
}
