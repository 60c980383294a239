//! Closed-form lower and upper bounds on the minimum family size `β^d(n)`.
//!
//! Every quotient is kept as an exact numerator/denominator pair and only
//! ceilinged when a field is reported.

use serde::Serialize;

use crate::error::{check_order, Result};

/// An exact non-negative rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den != 0, "zero denominator");
        Ratio { num, den }
    }

    pub fn ceil(self) -> u64 {
        self.num.div_ceil(self.den) as u64
    }
}

pub fn binomial2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

/// `2n(n-1)/d²`: each member bisects at most `d²/4` of the `C(n,2)` pairs.
pub fn pair_ratio(n: usize, d: usize) -> Ratio {
    let (n, d) = (n as u128, d as u128);
    Ratio::new(2 * n * (n - 1), d * d)
}

/// `n(n-1)/(d(d-1))`: every pair must lie inside some support.
pub fn naive_ratio(n: usize, d: usize) -> Ratio {
    let (n, d) = (n as u128, d as u128);
    Ratio::new(n * (n - 1), d * (d - 1))
}

/// `ceil((n-1)/(d-1))`.
fn groups(n: usize, d: usize) -> u64 {
    Ratio::new((n - 1) as u128, (d - 1) as u128).ceil()
}

/// `C(ceil(2(n-1)/(d-1)), 2) + ceil((n-1)/(d-1)) (d+1)`.
pub fn general_upper(n: usize, d: usize) -> u64 {
    let blocks = Ratio::new(2 * (n - 1) as u128, (d - 1) as u128).ceil();
    binomial2(blocks) + groups(n, d) * (d as u64 + 1)
}

/// `ceil((n-1)/(d-1)) (d+1)`, valid for hypergraphs with `(d-1) k > n-1`.
pub fn min_edge_upper(n: usize, d: usize) -> u64 {
    groups(n, d) * (d as u64 + 1)
}

/// The duplicate-removal count `C(ceil(2(n-1)/(d-1)), 2) + ceil((n-1)/(d-1)) d`.
pub fn dedup_upper(n: usize, d: usize) -> u64 {
    let blocks = Ratio::new(2 * (n - 1) as u128, (d - 1) as u128).ceil();
    binomial2(blocks) + groups(n, d) * d as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBounds {
    pub lower_pair: u64,
    pub lower_naive: u64,
    pub lower_odd: Option<u64>,
    pub lower_best: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBounds {
    pub upper_general: u64,
    pub upper_cycle: Option<u64>,
    pub upper_best: u64,
    /// Informational; not backed by a construction here.
    pub upper_dedup: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: usize,
    pub d: usize,
    #[serde(flatten)]
    pub lower: LowerBounds,
    /// Absent when `d = n`.
    #[serde(flatten)]
    pub upper: Option<UpperBounds>,
}

pub fn lower_bound(n: usize, d: usize) -> Result<LowerBounds> {
    check_order(n, d, n)?;
    let lower_pair = pair_ratio(n, d).ceil();
    let lower_naive = naive_ratio(n, d).ceil();
    let lower_odd = (d % 2 == 1).then_some(n as u64 - 1);
    let lower_best = lower_pair.max(lower_naive).max(lower_odd.unwrap_or(0));
    Ok(LowerBounds {
        lower_pair,
        lower_naive,
        lower_odd,
        lower_best,
    })
}

pub fn upper_bound(n: usize, d: usize) -> Result<UpperBounds> {
    check_order(n, d, n.saturating_sub(1))?;
    let upper_general = general_upper(n, d);
    let upper_cycle = (n == d + 1).then_some(d as u64 + 1);
    let upper_best = upper_general.min(upper_cycle.unwrap_or(u64::MAX));
    Ok(UpperBounds {
        upper_general,
        upper_cycle,
        upper_best,
        upper_dedup: dedup_upper(n, d),
    })
}

/// Lower bounds for `2 <= d <= n`, plus upper bounds when `d <= n-1`.
pub fn bounds(n: usize, d: usize) -> Result<BoundsReport> {
    let lower = lower_bound(n, d)?;
    let upper = if d < n {
        Some(upper_bound(n, d)?)
    } else {
        None
    };
    Ok(BoundsReport { n, d, lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_examples() {
        assert_eq!(lower_bound(6, 2).unwrap().lower_pair, 15);
        let l = lower_bound(9, 3).unwrap();
        assert_eq!((l.lower_pair, l.lower_odd, l.lower_best), (16, Some(8), 16));
        assert_eq!(lower_bound(5, 4).unwrap().lower_pair, 3);
        assert!(lower_bound(5, 6).is_err());
        assert!(lower_bound(5, 1).is_err());
    }

    #[test]
    fn upper_examples() {
        let u = upper_bound(5, 4).unwrap();
        assert_eq!(
            (u.upper_general, u.upper_cycle, u.upper_best),
            (13, Some(5), 5)
        );
        assert_eq!(upper_bound(8, 5).unwrap().upper_general, 18);
        assert!(upper_bound(5, 5).is_err());
        // d = 2: C(2(n-1), 2) + 3(n-1).
        for n in 3..20u64 {
            let u = upper_bound(n as usize, 2).unwrap();
            assert_eq!(u.upper_general, binomial2(2 * (n - 1)) + 3 * (n - 1));
        }
    }

    #[test]
    fn sandwich_and_monotonicity() {
        for n in 3..=60 {
            let mut prev = u64::MAX;
            for d in 2..n {
                let b = bounds(n, d).unwrap();
                let u = b.upper.unwrap();
                assert!(b.lower.lower_best <= u.upper_best, "n={n} d={d}");
                assert!(b.lower.lower_naive <= b.lower.lower_pair);
                assert!(b.lower.lower_pair <= prev);
                prev = b.lower.lower_pair;
            }
            assert!(bounds(n, n).unwrap().upper.is_none());
        }
    }

    #[test]
    fn large_arguments_do_not_overflow() {
        let u = upper_bound(100_000, 500).unwrap();
        assert_eq!(u.upper_general, binomial2(401) + 201 * 501);
        assert!(lower_bound(1 << 30, 2).unwrap().lower_pair > 0);
    }
}
