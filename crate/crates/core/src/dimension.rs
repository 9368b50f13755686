//! Doubling-exponent populations and cumulative point counts, with a
//! rigorous rational enclosure for the log-ratio dimension estimate.

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::interval::RationalInterval;
use crate::rational::rat;

/// Cumulative counts up to this n are re-derived by direct summation as a
/// cross-check on the closed form.
const SUM_CROSS_CHECK_LIMIT: u64 = 10_000;

/// Enclosure width target for dimension estimates: 1e-9.
fn enclosure_target() -> BigRational {
    rat(1, 1_000_000_000)
}

/// The exponents e_j = 2 - 2^-j for j = 0..=k, with their limit 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSequence {
    pub terms: Vec<BigRational>,
    pub limit: BigRational,
}

/// e_0 = 1 and e_{j+1} = e_j + 2^-(j+1); every term is checked against the
/// closed form 2 - 2^-j.
pub fn exponent_sequence(k: usize) -> ExponentSequence {
    let mut terms = Vec::with_capacity(k + 1);
    let mut e = rat(1, 1);
    for j in 0..=k {
        let half_power = BigRational::new(BigInt::one(), BigInt::from(2).pow(j as u32));
        if j > 0 {
            e += &half_power;
        }
        assert_eq!(e, rat(2, 1) - &half_power, "recurrence must match 2 - 2^-j");
        terms.push(e.clone());
    }
    ExponentSequence { terms, limit: rat(2, 1) }
}

/// n^(2 - 2^-k): exact when it is an integer, otherwise a float estimate
/// alongside the exact exponent.
#[derive(Debug, Clone, PartialEq)]
pub enum Population {
    Exact(BigUint),
    Approximate { base: u64, exponent: BigRational, approx: f64 },
}

/// n^(e_k) for n >= 1. The value is an integer exactly when n is a perfect
/// 2^k-th power, n = t^(2^k), giving t^(2^(k+1) - 1).
pub fn population(n: u64, k: usize) -> Population {
    assert!(n >= 1, "population base must be at least 1");
    if n == 1 {
        return Population::Exact(BigUint::one());
    }
    // For k > 6 the degree 2^k exceeds 64, so no n >= 2 on 64 bits is a
    // perfect 2^k-th power.
    if k <= 6 {
        let degree = 1u32 << k;
        if let Some(t) = exact_root(n, degree) {
            return Population::Exact(BigUint::from(t).pow(2 * degree - 1));
        }
    }
    let exponent = BigRational::new(
        BigInt::from(2).pow(k as u32 + 1) - 1,
        BigInt::from(2).pow(k as u32),
    );
    // 2 - 0.5^k is exact in f64 for every k that matters; beyond f64 range
    // the power underflows harmlessly to the limit exponent 2.
    let approx = (n as f64).powf(2.0 - 0.5f64.powi(k.min(1100) as i32));
    Population::Approximate { base: n, exponent, approx }
}

/// Integer t with t^degree == n, if one exists.
fn exact_root(n: u64, degree: u32) -> Option<u64> {
    if degree == 1 {
        return Some(n);
    }
    let mut lo = 1u64;
    let mut hi = 1u64;
    while hi.checked_pow(degree).is_some_and(|p| p < n) {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match mid.checked_pow(degree) {
            Some(p) if p < n => lo = mid + 1,
            _ => hi = mid,
        }
    }
    (lo.checked_pow(degree) == Some(n)).then_some(lo)
}

/// Cumulative count over scales 1..=n with its n^3 ratio and a rigorous
/// dimension enclosure.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionReport {
    pub n: u64,
    /// Sum of j^2 for j = 1..=n, i.e. n(n+1)(2n+1)/6.
    pub total: BigUint,
    /// total / n^3, exact.
    pub ratio: BigRational,
    /// Enclosure of ln(total)/ln(n) no wider than 1e-9; None when n = 1.
    pub dim_estimate: Option<RationalInterval>,
}

pub fn total_points(n: u64) -> DimensionReport {
    assert!(n >= 1, "scale count must be at least 1");
    let nb = BigUint::from(n);
    let product = &nb * (&nb + 1u32) * (&nb * 2u32 + 1u32);
    assert!((&product % 6u32).is_zero(), "n(n+1)(2n+1) is always divisible by 6");
    let total = product / 6u32;
    if n <= SUM_CROSS_CHECK_LIMIT {
        let summed = (1..=n).map(|j| u128::from(j) * u128::from(j)).sum::<u128>();
        assert_eq!(total, BigUint::from(summed), "closed form must match direct summation");
    }
    let ratio = BigRational::new(BigInt::from(total.clone()), BigInt::from(n).pow(3));
    let dim_estimate = (n >= 2).then(|| {
        log_ratio_enclosure(
            &BigRational::from(BigInt::from(total.clone())),
            &BigRational::from(BigInt::from(n)),
        )
    });
    DimensionReport { n, total, ratio, dim_estimate }
}

/// Enclosure of ln(x)/ln(base) for x >= 1, base >= 2, of width at most
/// 1e-9, by interval division of two logarithm enclosures.
fn log_ratio_enclosure(x: &BigRational, base: &BigRational) -> RationalInterval {
    let target = enclosure_target();
    let mut terms = 16usize;
    loop {
        let (a_lo, a_hi) = ln_enclosure(x, terms);
        let (b_lo, b_hi) = ln_enclosure(base, terms);
        if b_lo.is_positive() {
            let lo = a_lo / &b_hi;
            let hi = a_hi / b_lo;
            if &hi - &lo <= target {
                return RationalInterval::new(lo, hi);
            }
        }
        terms *= 2;
    }
}

/// Rational bounds on ln(x) for x >= 1: x = 2^s * r with r in [1, 2), so
/// ln(x) = s*ln(2) + 2*atanh((r-1)/(r+1)).
fn ln_enclosure(x: &BigRational, terms: usize) -> (BigRational, BigRational) {
    assert!(*x >= rat(1, 1), "logarithm enclosure requires x >= 1");
    let mut r = x.clone();
    let mut s = 0u32;
    let two = rat(2, 1);
    while r >= two {
        r /= &two;
        s += 1;
    }
    let (ln2_lo, ln2_hi) = scaled_atanh(&rat(1, 3), terms);
    let z = (&r - rat(1, 1)) / (&r + rat(1, 1));
    let (r_lo, r_hi) = scaled_atanh(&z, terms);
    let s_rat = rat(s as i64, 1);
    (&s_rat * ln2_lo + r_lo, s_rat * ln2_hi + r_hi)
}

/// Bounds on 2*atanh(z) = ln((1+z)/(1-z)) for 0 <= z < 1, from the first
/// `terms` series terms plus a geometric tail bound.
fn scaled_atanh(z: &BigRational, terms: usize) -> (BigRational, BigRational) {
    let z2 = z * z;
    let mut power = z.clone();
    let mut partial = BigRational::zero();
    for j in 0..terms {
        partial += &power / rat(2 * j as i64 + 1, 1);
        power *= &z2;
    }
    // Remaining terms are positive and bounded by the geometric series
    // z^(2T+1) * (1 + z^2 + z^4 + ...) / (2T+1).
    let tail = power / (rat(2 * terms as i64 + 1, 1) * (rat(1, 1) - z2));
    (&partial * rat(2, 1), (partial + tail) * rat(2, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::ToPrimitive;

    #[test]
    fn exponents_match_the_closed_form() {
        let seq = exponent_sequence(2);
        assert_eq!(seq.terms, vec![rat(1, 1), rat(3, 2), rat(7, 4)]);
        assert_eq!(seq.limit, rat(2, 1));

        let seq = exponent_sequence(10);
        assert_eq!(seq.terms[10], rat(2047, 1024));
        for (j, e) in seq.terms.iter().enumerate() {
            let gap = &seq.limit - e;
            assert_eq!(gap, BigRational::new(BigInt::one(), BigInt::from(2).pow(j as u32)));
        }
    }

    #[test]
    fn perfect_power_populations_are_exact() {
        assert_eq!(population(7, 0), Population::Exact(BigUint::from(7u32)));
        assert_eq!(population(4, 1), Population::Exact(BigUint::from(8u32)));
        assert_eq!(population(10_000, 1), Population::Exact(BigUint::from(1_000_000u32)));
        assert_eq!(population(16, 2), Population::Exact(BigUint::from(128u32)));
        assert_eq!(population(1, 30), Population::Exact(BigUint::one()));
    }

    #[test]
    fn non_perfect_powers_fall_back_to_estimates() {
        match population(2, 1) {
            Population::Approximate { base, exponent, approx } => {
                assert_eq!(base, 2);
                assert_eq!(exponent, rat(3, 2));
                assert!((approx - 8f64.sqrt()).abs() < 1e-12);
            }
            other => panic!("expected an estimate, got {other:?}"),
        }
        match population(2, 7) {
            Population::Approximate { exponent, approx, .. } => {
                assert_eq!(exponent, rat(255, 128));
                assert!((approx - 2f64.powf(255.0 / 128.0)).abs() < 1e-12);
            }
            other => panic!("expected an estimate, got {other:?}"),
        }
        assert!(matches!(population(u64::MAX, 1), Population::Approximate { .. }));
    }

    #[test]
    fn totals_and_ratios_are_exact() {
        let r = total_points(2);
        assert_eq!(r.total, BigUint::from(5u32));
        assert_eq!(r.ratio, rat(5, 8));

        let r = total_points(3);
        assert_eq!(r.total, BigUint::from(14u32));
        assert_eq!(r.ratio, rat(14, 27));

        let r = total_points(100);
        assert_eq!(r.total, BigUint::from(338_350u32));
        assert_eq!(r.ratio, BigRational::new(BigInt::from(338_350), BigInt::from(1_000_000)));

        let r = total_points(1);
        assert_eq!(r.total, BigUint::one());
        assert_eq!(r.ratio, rat(1, 1));
        assert!(r.dim_estimate.is_none());
    }

    #[test]
    fn ratio_excess_over_one_third_is_exactly_the_known_gap() {
        for n in (1..=50).chain([1_000]) {
            let r = total_points(n);
            let gap = &r.ratio - rat(1, 3);
            assert_eq!(gap, BigRational::new(BigInt::from(3 * n + 1), BigInt::from(6 * n * n)));
            assert!(gap <= rat(2, 3 * n as i64), "excess exceeds 2/(3n) at n = {n}");
        }
    }

    #[test]
    fn dimension_enclosures_are_tight_and_correct() {
        let r = total_points(1_000_000);
        let iv = r.dim_estimate.unwrap();
        assert!(iv.width() <= enclosure_target());
        assert!(*iv.lo() >= rat(29, 10) && *iv.hi() <= rat(3, 1));

        let r = total_points(10);
        let iv = r.dim_estimate.unwrap();
        let mid = iv.midpoint().to_f64().unwrap();
        let expected = 385f64.ln() / 10f64.ln();
        assert!((mid - expected).abs() < 1e-9);
    }

    #[test]
    fn ln_enclosure_brackets_known_values() {
        let (lo, hi) = ln_enclosure(&rat(2, 1), 16);
        assert!(lo <= hi);
        let ln2 = std::f64::consts::LN_2;
        assert!(lo.to_f64().unwrap() <= ln2 && ln2 <= hi.to_f64().unwrap());
        assert!((&hi - &lo) < rat(1, 1_000_000_000));

        let (lo, hi) = ln_enclosure(&rat(1, 1), 4);
        assert!(lo.is_zero() && hi.is_zero());
    }
}
