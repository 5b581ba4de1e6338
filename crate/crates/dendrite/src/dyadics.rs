//! Dyadic rationals in `(0,1)` and their standard enumeration.
//!
//! The enumeration lists dyadics level by level, odd numerators ascending:
//! `1/2, 1/4, 3/4, 1/8, 3/8, 5/8, 7/8, 1/16, ...`. Index arithmetic uses the
//! closed form `index = 2^(l-1) + (p-1)/2`, which reproduces exactly that
//! order. The filtered subsequence of dyadics `<= r` (the `[0,r]` cap, closed
//! at `r`) drives both the lazy itineraries and the grid-level ω-limit
//! machinery.

use crate::rational::{fmt_rat, rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DyadicError {
    #[error("numerator {p} must be odd and within 1..2^{l}")]
    InvalidNumerator { p: u64, l: u32 },
    #[error("level must be >= 1")]
    InvalidLevel,
    #[error("expected a dyadic in (0,1), got {0}")]
    NotADyadic(String),
    #[error("grid step must lie in (0,1), got {0}")]
    DegenerateGridStep(String),
    #[error("cap r must lie in (0,1], got {0}")]
    CapOutOfRange(String),
}

/// A dyadic rational `p/2^l` with `p` odd, strictly inside `(0,1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyadic {
    p: u64,
    l: u32,
}

impl Dyadic {
    pub fn new(p: u64, l: u32) -> Result<Self, DyadicError> {
        if l == 0 || l >= 64 {
            return Err(DyadicError::InvalidLevel);
        }
        if p.is_multiple_of(2) || p == 0 || p >= (1u64 << l) {
            return Err(DyadicError::InvalidNumerator { p, l });
        }
        Ok(Dyadic { p, l })
    }

    /// Odd numerator.
    pub fn numerator(&self) -> u64 {
        self.p
    }

    /// Level `l` of `p/2^l`.
    pub fn level(&self) -> u32 {
        self.l
    }

    pub fn value(&self) -> Rat {
        Rat::new(BigInt::from(self.p), BigInt::one() << self.l)
    }

    /// Recognizes an exact dyadic in `(0,1)`; fails on anything else.
    pub fn try_from_rat(r: &Rat) -> Result<Self, DyadicError> {
        if !r.is_positive() || *r >= rat_int(1) {
            return Err(DyadicError::NotADyadic(fmt_rat(r)));
        }
        let denom = r.denom();
        // Reduced form: dyadic iff the denominator is a power of two > 1.
        let l = denom.bits() - 1;
        if (BigInt::one() << l) != *denom || l == 0 {
            return Err(DyadicError::NotADyadic(fmt_rat(r)));
        }
        let p = r
            .numer()
            .to_u64()
            .ok_or_else(|| DyadicError::NotADyadic(fmt_rat(r)))?;
        if l >= 64 {
            return Err(DyadicError::NotADyadic(fmt_rat(r)));
        }
        Dyadic::new(p, l as u32)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, 1u128 << self.l)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({self})")
    }
}

/// The `n`-th dyadic (1-based) in the level-by-level enumeration.
pub fn index_to_dyadic(n: u64) -> Dyadic {
    assert!(n >= 1, "enumeration index is 1-based");
    let l = 64 - n.leading_zeros(); // floor(log2(n)) + 1
    let offset = n - (1u64 << (l - 1));
    Dyadic::new(2 * offset + 1, l).expect("enumeration produces valid dyadics")
}

/// Inverse of [`index_to_dyadic`].
pub fn dyadic_to_index(a: &Dyadic) -> u64 {
    (1u64 << (a.l - 1)) + (a.p - 1) / 2
}

/// Number of dyadics of level exactly `l` that are `<= r` (closed cap).
fn count_at_level(r: &Rat, l: u32) -> u64 {
    // Odd p with p/2^l <= r, i.e. p <= floor(r * 2^l).
    let scaled = r * Rat::from_integer(BigInt::one() << l);
    let m = scaled.floor().to_integer();
    let cap = BigInt::from((1u64 << l) - 1);
    let m = if m > cap { cap } else { m };
    if m < BigInt::one() {
        return 0;
    }
    // Odd integers in [1, m].
    ((m + BigInt::one()) / BigInt::from(2u32))
        .to_u64()
        .expect("level count fits in u64")
}

/// The `k`-th element (1-based) of the subsequence of dyadics `<= r`, in
/// enumeration order. The cap is closed: a dyadic `r` is its own first hit at
/// its level. Total for every `r` in `(0,1]` since the subsequence is
/// infinite.
pub fn gamma_cap_kth(r: &Rat, k: u64) -> Result<Dyadic, DyadicError> {
    if !r.is_positive() || *r > rat_int(1) {
        return Err(DyadicError::CapOutOfRange(fmt_rat(r)));
    }
    assert!(k >= 1, "subsequence index is 1-based");
    let mut remaining = k;
    let mut l = 1u32;
    loop {
        let c = count_at_level(r, l);
        if remaining <= c {
            // The kept numerators at this level are the first `remaining`
            // odd integers.
            let p = 2 * (remaining - 1) + 1;
            return Ok(Dyadic::new(p, l).expect("counted numerator is valid"));
        }
        remaining -= c;
        l += 1;
        assert!(l < 64, "cap subsequence index out of supported range");
    }
}

/// Grid-level approximation of the ω-limit set of a sequence in `[0,1]`.
///
/// A grid point (an integer multiple of `grid_step` inside `[0,1]`) is marked
/// as a limit point when it is hit — within `grid_step` — at least
/// `ceil(log2(N))` times among the second half of the first `N` terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceOmegaApprox {
    pub grid_step: Rat,
    /// Marked grid points, ascending.
    pub hit_grid: Vec<Rat>,
}

impl SequenceOmegaApprox {
    pub fn contains(&self, point: &Rat) -> bool {
        self.hit_grid.binary_search(point).is_ok()
    }
}

/// Scans the first `n` terms of `seq` and marks grid points per the tail-half
/// hit rule above.
pub fn omega_of_sequence_approx<I>(
    seq: I,
    n: usize,
    grid_step: &Rat,
) -> Result<SequenceOmegaApprox, DyadicError>
where
    I: IntoIterator<Item = Rat>,
{
    assert!(n >= 1);
    if !grid_step.is_positive() || *grid_step >= rat_int(1) {
        return Err(DyadicError::DegenerateGridStep(fmt_rat(grid_step)));
    }
    // Grid points i * step for i = 0..=last, clipped to [0,1].
    let last = (rat_int(1) / grid_step)
        .floor()
        .to_integer()
        .to_u64()
        .expect("grid size fits in u64") as usize;
    let mut hits = vec![0u64; last + 1];
    let tail_start = n / 2;
    let threshold = (usize::BITS - n.leading_zeros()) as u64; // ceil(log2(n)) for n > 1
    let threshold = if n.is_power_of_two() {
        threshold - 1
    } else {
        threshold
    }
    .max(1);

    for (i, term) in seq.into_iter().take(n).enumerate() {
        if i < tail_start {
            continue;
        }
        // Terms hit every grid point within one step; the window spans at
        // most three grid cells.
        let lo = (&term - grid_step).max(Rat::zero());
        let hi = &term + grid_step;
        let mut idx = (&lo / grid_step).ceil().to_integer().to_u64().unwrap_or(0) as usize;
        while idx <= last {
            let gp = grid_step * rat_int(idx as i64);
            if gp > hi {
                break;
            }
            hits[idx] += 1;
            idx += 1;
        }
    }

    let hit_grid = hits
        .iter()
        .enumerate()
        .filter(|(_, h)| **h >= threshold)
        .map(|(i, _)| grid_step * rat_int(i as i64))
        .collect();
    Ok(SequenceOmegaApprox {
        grid_step: grid_step.clone(),
        hit_grid,
    })
}

/// The full enumeration as an infinite iterator of rationals.
pub fn gamma_values() -> impl Iterator<Item = Rat> {
    (1u64..).map(|n| index_to_dyadic(n).value())
}

/// The `[0,r]`-capped subsequence as an infinite iterator of rationals.
pub fn gamma_cap_values(r: Rat) -> impl Iterator<Item = Rat> {
    gamma_values().filter(move |v| *v <= r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// Independent oracle: enumerate levels directly and list values.
    fn enumeration_by_scan(count: usize) -> Vec<Rat> {
        let mut out = Vec::with_capacity(count);
        'outer: for l in 1u32.. {
            for p in (1u64..(1 << l)).step_by(2) {
                out.push(Rat::new(BigInt::from(p), BigInt::one() << l));
                if out.len() == count {
                    break 'outer;
                }
            }
        }
        out
    }

    #[test]
    fn first_eight_listed_elements() {
        let expect = [
            rat(1, 2),
            rat(1, 4),
            rat(3, 4),
            rat(1, 8),
            rat(3, 8),
            rat(5, 8),
            rat(7, 8),
            rat(1, 16),
        ];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(index_to_dyadic(i as u64 + 1).value(), *e, "a_{}", i + 1);
        }
    }

    #[test]
    fn index_formula_matches_scan_oracle() {
        let scan = enumeration_by_scan(4096);
        for (i, v) in scan.iter().enumerate() {
            assert_eq!(index_to_dyadic(i as u64 + 1).value(), *v);
        }
    }

    #[test]
    fn index_round_trip_to_1e5() {
        for n in 1..=100_000u64 {
            assert_eq!(dyadic_to_index(&index_to_dyadic(n)), n);
        }
    }

    #[test]
    fn listed_inverse_examples() {
        assert_eq!(dyadic_to_index(&Dyadic::new(1, 1).unwrap()), 1);
        assert_eq!(dyadic_to_index(&Dyadic::new(7, 3).unwrap()), 7);
        // Located by scanning the enumeration for 3/8.
        assert_eq!(dyadic_to_index(&Dyadic::new(3, 3).unwrap()), 5);
    }

    #[test]
    fn levels_are_nondecreasing_along_enumeration() {
        let mut prev = 0;
        for n in 1..=4096u64 {
            let l = index_to_dyadic(n).level();
            assert!(l >= prev, "level dropped at index {n}");
            prev = l;
        }
    }

    /// Filter oracle: walk the enumeration and keep values `<= r`.
    fn cap_by_filter(r: &Rat, count: usize) -> Vec<Rat> {
        gamma_cap_values(r.clone()).take(count).collect()
    }

    #[test]
    fn cap_examples_against_filter_oracle() {
        assert_eq!(gamma_cap_kth(&rat_int(1), 3).unwrap().value(), rat(3, 4));
        assert_eq!(gamma_cap_kth(&rat(1, 2), 2).unwrap().value(), rat(1, 4));
        assert_eq!(gamma_cap_kth(&rat(1, 2), 4).unwrap().value(), rat(3, 8));
        for r in [rat_int(1), rat(1, 2), rat(1, 4), rat(3, 4), rat(7, 10)] {
            let oracle = cap_by_filter(&r, 200);
            for (i, v) in oracle.iter().enumerate() {
                assert_eq!(
                    gamma_cap_kth(&r, i as u64 + 1).unwrap().value(),
                    *v,
                    "r={} k={}",
                    fmt_rat(&r),
                    i + 1
                );
            }
        }
    }

    #[test]
    fn cap_is_order_preserving_subsequence_and_bounded() {
        let r = rat(3, 8);
        let mut prev_index = 0;
        for k in 1..=500u64 {
            let d = gamma_cap_kth(&r, k).unwrap();
            assert!(d.value() <= r);
            let idx = dyadic_to_index(&d);
            assert!(idx > prev_index, "enumeration order broken at k={k}");
            prev_index = idx;
        }
    }

    #[test]
    fn cap_at_one_is_whole_enumeration() {
        for k in 1..=500u64 {
            assert_eq!(gamma_cap_kth(&rat_int(1), k).unwrap(), index_to_dyadic(k));
        }
    }

    #[test]
    fn closed_cap_includes_dyadic_endpoint() {
        // r = 1/2 is itself the first kept element.
        assert_eq!(gamma_cap_kth(&rat(1, 2), 1).unwrap().value(), rat(1, 2));
    }

    #[test]
    fn cap_rejects_out_of_range() {
        assert!(gamma_cap_kth(&rat_int(0), 1).is_err());
        assert!(gamma_cap_kth(&rat(3, 2), 1).is_err());
    }

    #[test]
    fn omega_approx_constant_sequence() {
        let half = rat(1, 2);
        let seq = std::iter::repeat_n(half.clone(), 100);
        let approx = omega_of_sequence_approx(seq, 100, &rat(1, 64)).unwrap();
        for gp in &approx.hit_grid {
            assert!((gp - &half).abs() <= rat(1, 64), "marked {}", fmt_rat(gp));
        }
        assert!(!approx.hit_grid.is_empty());
    }

    #[test]
    fn omega_approx_full_enumeration_covers_unit_interval() {
        let approx = omega_of_sequence_approx(gamma_values(), 4096, &rat(1, 64)).unwrap();
        assert_eq!(approx.hit_grid.len(), 65, "all grid points of [0,1]");
    }

    #[test]
    fn omega_approx_cap_covers_exactly_the_cap() {
        for r in [rat(1, 4), rat(1, 2), rat(3, 4), rat_int(1)] {
            let approx =
                omega_of_sequence_approx(gamma_cap_values(r.clone()), 4096, &rat(1, 64)).unwrap();
            let step = rat(1, 64);
            let mut i = 0u32;
            loop {
                let gp = &step * rat_int(i as i64);
                if gp > rat_int(1) {
                    break;
                }
                if gp <= r.clone() - &step {
                    assert!(approx.contains(&gp), "missing grid point {}", fmt_rat(&gp));
                }
                if gp > r.clone() + &step {
                    assert!(!approx.contains(&gp), "marked beyond cap: {}", fmt_rat(&gp));
                }
                i += 1;
            }
        }
    }

    #[test]
    fn omega_approx_rejects_degenerate_grid() {
        assert!(omega_of_sequence_approx(gamma_values(), 16, &rat_int(1)).is_err());
        assert!(omega_of_sequence_approx(gamma_values(), 16, &rat_int(2)).is_err());
    }

    #[test]
    fn dyadic_recognition() {
        assert_eq!(
            Dyadic::try_from_rat(&rat(3, 8)).unwrap(),
            Dyadic::new(3, 3).unwrap()
        );
        assert!(Dyadic::try_from_rat(&rat(1, 3)).is_err());
        assert!(Dyadic::try_from_rat(&rat_int(1)).is_err());
        assert!(Dyadic::try_from_rat(&rat(0, 1)).is_err());
    }
}
