//! Closed-form and exact-combinatorial tail bounds used as envelopes for the
//! objective and as baselines for the random-ensemble experiments.
//!
//! All logarithms are natural; `X` denotes the normalized sign sum
//! `(+-1 +-1 ... +-1)/sqrt(n)`, whose tails are exact binomial sums.

use crate::error::{Error, Result};

/// Largest `n` for which exact binomial tails are computed.
pub const MAX_EXACT_TAIL_N: u64 = 10_000;

/// Subgaussian tail bound `exp(-t^2/2)` for a unit-norm test, or the capped
/// two-sided variant `min(1, 2 exp(-t^2/2))`.
pub fn hoeffding_tail(t: f64, two_sided: bool) -> f64 {
    debug_assert!(t >= 0.0);
    let one_sided = (-t * t / 2.0).exp();
    if two_sided {
        (2.0 * one_sided).min(1.0)
    } else {
        one_sided
    }
}

/// The growth rate `sqrt(2 ln n)` of the maximal objective.
pub fn asymptotic_beta(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::DomainError(format!(
            "asymptotic_beta requires n >= 2, got {n}"
        )));
    }
    Ok((2.0 * (n as f64).ln()).sqrt())
}

/// Exact objective `sqrt(log2(n) + 1)` of the scaled Haar matrix; `n` must
/// be a power of two.
pub fn haar_beta_formula(n: u64) -> Result<f64> {
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::DomainError(format!(
            "haar_beta_formula requires a power of two, got {n}"
        )));
    }
    Ok(((n.trailing_zeros() as f64) + 1.0).sqrt())
}

/// Finite-n ceiling `sqrt(2 ln(2n))`: the union bound over n rows of the
/// two-sided subgaussian tail caps the expected maximum at this value.
pub fn subgaussian_max_bound(n: u64) -> Result<f64> {
    if n < 1 {
        return Err(Error::DomainError(
            "subgaussian_max_bound requires n >= 1".into(),
        ));
    }
    Ok((2.0 * (2.0 * n as f64).ln()).sqrt())
}

/// Exact `P(X >= t)` for the normalized sign sum, inclusive of equality.
///
/// `(sqrt(n) X + n)/2` is Binomial(n, 1/2), so the tail is a sum of
/// `C(n,k)/2^n` over qualifying `k`. Coefficients come from an accumulated
/// log-factorial table (compensated summation keeps the logs accurate to
/// ~1e-11 absolute) and the probabilities are added smallest-first.
pub fn binomial_linf_tail(n: u64, t: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::DomainError(
            "binomial_linf_tail requires n >= 1".into(),
        ));
    }
    if n > MAX_EXACT_TAIL_N {
        return Err(Error::SizeGuard {
            what: "binomial tail n",
            value: n as usize,
            max: MAX_EXACT_TAIL_N as usize,
        });
    }
    let lnfact = ln_factorial_table(n as usize);
    let ln2 = std::f64::consts::LN_2;
    let sqrt_n = (n as f64).sqrt();
    let rhs = t * sqrt_n;
    let mut total = 0.0f64;
    // k = n downward: within the qualifying range the terms increase, so this
    // adds smallest-first for t >= 0.
    for k in (0..=n).rev() {
        if (2.0 * k as f64 - n as f64) < rhs {
            break;
        }
        let ln_c = lnfact[n as usize] - lnfact[k as usize] - lnfact[(n - k) as usize];
        total += (ln_c - n as f64 * ln2).exp();
    }
    Ok(total.min(1.0))
}

/// ln(k!) for k in 0..=n, accumulated with Kahan compensation.
fn ln_factorial_table(n: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(0.0);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 1..=n {
        let term = (k as f64).ln() - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        table.push(sum);
    }
    table
}

/// The standard Gaussian tail lower bound
/// `P(Y >= x) >= x/(x^2+1) * exp(-x^2/2)/sqrt(2 pi)` for x > 0.
pub fn gaussian_tail_lower(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let density = (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt();
    x / (x * x + 1.0) * density
}

/// Numeric check of the anticoncentration mechanism at threshold
/// `sqrt((2 - epsilon) ln n)`.
#[derive(Debug, Clone, Copy)]
pub struct AnticoncentrationReport {
    pub n: u64,
    pub epsilon: f64,
    pub threshold: f64,
    /// Exact `P(X >= threshold)` from the binomial tail.
    pub exact_tail: f64,
    pub n_times_tail: f64,
    pub gaussian_lower: f64,
    pub tail_positive: bool,
    /// For n >= 64: does the exact tail dominate half the Gaussian lower
    /// bound at the same threshold?
    pub dominates_half_gaussian: Option<bool>,
    pub passed: bool,
}

/// Compare the exact sign-sum tail against the Gaussian lower-bound formula
/// at the threshold `sqrt((2 - epsilon) ln n)`.
pub fn anticoncentration_check(n: u64, epsilon: f64) -> Result<AnticoncentrationReport> {
    if !(epsilon > 0.0 && epsilon < 2.0) {
        return Err(Error::DomainError(format!(
            "epsilon must lie in (0, 2), got {epsilon}"
        )));
    }
    let threshold = ((2.0 - epsilon) * (n.max(1) as f64).ln()).sqrt();
    let exact_tail = binomial_linf_tail(n, threshold)?;
    let gaussian_lower = if threshold > 0.0 {
        gaussian_tail_lower(threshold)
    } else {
        0.5
    };
    let tail_positive = exact_tail > 0.0;
    let dominates_half_gaussian = if n >= 64 {
        Some(exact_tail >= 0.5 * gaussian_lower)
    } else {
        None
    };
    Ok(AnticoncentrationReport {
        n,
        epsilon,
        threshold,
        exact_tail,
        n_times_tail: n as f64 * exact_tail,
        gaussian_lower,
        tail_positive,
        dominates_half_gaussian,
        passed: tail_positive && dominates_half_gaussian.unwrap_or(true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hoeffding_cap_and_values() {
        assert_eq!(hoeffding_tail(0.0, true), 1.0);
        assert!((hoeffding_tail(2.0, false) - (-2.0f64).exp()).abs() < 1e-15);
        for n in [1u64, 2, 10, 1000] {
            let t = (2.0 * (n as f64).ln()).sqrt();
            let p = hoeffding_tail(t, false);
            assert!((p - 1.0 / n as f64).abs() < 1e-12 / n as f64);
        }
    }

    #[test]
    fn formula_values() {
        assert_eq!(haar_beta_formula(8).unwrap(), 2.0);
        assert!(
            (subgaussian_max_bound(1).unwrap() - (2.0 * std::f64::consts::LN_2).sqrt()).abs()
                < 1e-15
        );
        assert!(haar_beta_formula(12).is_err());
        assert!(asymptotic_beta(1).is_err());
    }

    #[test]
    fn asymptotic_over_haar_ratio_approaches_sqrt_2ln2() {
        // ratio(2^k) = sqrt(2 k ln2 / (k+1)) rises toward sqrt(2 ln 2).
        let limit = (2.0 * std::f64::consts::LN_2).sqrt();
        let ratio =
            |k: u32| asymptotic_beta(1u64 << k).unwrap() / haar_beta_formula(1u64 << k).unwrap();
        assert!((ratio(20) - 1.1490345).abs() < 1e-6);
        assert!(ratio(20) < ratio(40) && ratio(40) < ratio(60));
        assert!((ratio(60) - limit).abs() < 1e-2);
    }

    #[test]
    fn binomial_tail_small_cases() {
        assert!((binomial_linf_tail(1, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((binomial_linf_tail(4, 2.0).unwrap() - 0.0625).abs() < 1e-13);
        // Inclusive threshold: t just above 2 excludes the all-plus pattern.
        assert_eq!(binomial_linf_tail(4, 2.0 + 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn binomial_tail_monotone_in_t() {
        for n in [5u64, 64, 1000] {
            let mut last = f64::INFINITY;
            for i in 0..40 {
                let t = -1.0 + 0.15 * i as f64;
                let p = binomial_linf_tail(n, t).unwrap();
                assert!(p <= last + 1e-15, "n={n} t={t}");
                assert!((0.0..=1.0).contains(&p));
                last = p;
            }
        }
    }

    #[test]
    fn hoeffding_dominates_exact_tail() {
        for exp in 2..=10 {
            let n = 1u64 << exp;
            for i in 0..8 {
                let t = 0.5 + 0.5 * i as f64;
                let exact = binomial_linf_tail(n, t).unwrap();
                let bound = hoeffding_tail(t, false);
                assert!(
                    exact <= bound + 1e-15,
                    "n={n} t={t}: exact {exact} > bound {bound}"
                );
            }
        }
    }

    #[test]
    fn gaussian_lower_bound_values() {
        let v = gaussian_tail_lower(1.0);
        assert!((v - 0.5 * (-0.5f64).exp() / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-15);
        assert!((v - 0.120985).abs() < 1e-6);
        assert!(gaussian_tail_lower(1.0) > gaussian_tail_lower(2.0));
        assert!(gaussian_tail_lower(2.0) > gaussian_tail_lower(3.0));
    }

    #[test]
    fn gaussian_mechanism_at_desk_scale() {
        // n * P(Y >= sqrt(1.5 ln n)) grows like n^0.25 up to polynomial-free
        // factors; at n = 10^6 it is comfortably above 1.
        let n = 1_000_000f64;
        let x = (1.5 * n.ln()).sqrt();
        assert!(gaussian_tail_lower(x) * n > 1.0);
    }

    #[test]
    fn anticoncentration_desk_checks() {
        // The n^(eps/2) growth of n*p has to outrun the polynomial factor of
        // the Gaussian density; at eps = 1 it already does for n = 256.
        let r = anticoncentration_check(256, 1.0).unwrap();
        assert!(r.n_times_tail > 1.0, "n*p = {}", r.n_times_tail);
        assert!(r.passed);

        for n in [64, 256, 1024] {
            for eps in [0.5, 1.0] {
                let r = anticoncentration_check(n, eps).unwrap();
                assert!(r.tail_positive);
                assert!(
                    r.exact_tail >= 0.5 * r.gaussian_lower,
                    "n={n} eps={eps}: p={} vs gaussian/2={}",
                    r.exact_tail,
                    0.5 * r.gaussian_lower
                );
                assert!(r.passed);
            }
        }
    }

    #[test]
    fn anticoncentration_epsilon_near_two_gives_half() {
        // Odd n and a threshold inside (0, 1/sqrt(n)): the inclusive tail is
        // exactly the upper half of a symmetric lattice variable.
        let r = anticoncentration_check(101, 1.999).unwrap();
        assert!(r.threshold > 0.0 && r.threshold < 1.0 / (101f64).sqrt());
        assert!((r.exact_tail - 0.5).abs() < 1e-11, "p = {}", r.exact_tail);
    }

    #[test]
    fn anticoncentration_rejects_bad_epsilon() {
        assert!(anticoncentration_check(64, 0.0).is_err());
        assert!(anticoncentration_check(64, 2.0).is_err());
    }

    #[test]
    fn size_guard() {
        assert!(binomial_linf_tail(10_001, 1.0).is_err());
        assert!(binomial_linf_tail(10_000, 3.0).is_ok());
    }
}
