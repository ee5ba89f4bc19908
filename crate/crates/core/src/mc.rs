//! Monte Carlo estimation of beta for dimensions beyond exhaustive reach.

use crate::error::{Error, Result};
use crate::eval::{BetaEstimate, Method};
use crate::matrix::{linf_image_signs, TestMatrix};
use crate::rng;

/// Sample mean of `max_i |<a_i, x>|` over `n_samples` iid uniform sign
/// vectors, with the standard error of the mean.
///
/// Sample `k` consumes `ceil(n/64)` words of the seeded stream through
/// [`rng::fill_sign_vector`], samples drawn consecutively; identical
/// `(matrix, n_samples, seed)` reproduce bit-identical output. The running
/// mean and variance use Welford's update, so a constant image (for example
/// the scaled Haar matrices) yields the constant exactly with zero standard
/// error.
pub fn beta_monte_carlo(m: &TestMatrix, n_samples: u64, seed: u64) -> Result<BetaEstimate> {
    if m.n() == 0 {
        return Err(Error::DomainError("cannot evaluate an empty matrix".into()));
    }
    if n_samples < 2 {
        return Err(Error::DomainError(format!(
            "n_samples must be at least 2, got {n_samples}"
        )));
    }
    let mut rng = rng::seeded(seed);
    let mut x = vec![0i8; m.n()];
    let mut xf = vec![0.0f64; m.n()];
    let mut mean = 0.0f64;
    let mut m2 = 0.0f64;
    for k in 1..=n_samples {
        rng::fill_sign_vector(&mut rng, &mut x);
        for (f, &s) in xf.iter_mut().zip(&x) {
            *f = f64::from(s);
        }
        let v = linf_image_signs(m, &xf);
        let delta = v - mean;
        mean += delta / k as f64;
        m2 += delta * (v - mean);
    }
    let variance = m2 / (n_samples - 1) as f64;
    Ok(BetaEstimate {
        value: mean,
        method: Method::MonteCarlo,
        n_samples,
        std_error: (variance / n_samples as f64).sqrt(),
    })
}
