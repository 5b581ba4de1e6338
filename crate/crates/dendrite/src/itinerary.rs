//! Symbolic addresses of dendrite points and the rewrite dynamics.
//!
//! A point is located by its itinerary: a chain of `(branch, dyadic)` star
//! entries followed by a terminal beam index and a parameter in `(0,1]`.
//! The map `f` acts by exactly one of four rewrites:
//!
//! * R0 — the origin is fixed;
//! * R1 — a positive head branch decrements;
//! * R2 — a bare `(0, r)` collapses to the origin;
//! * R3 — a zero head branch with dyadic `a = p/2^l` drops the pair `(0, a)`
//!   and adds `l` to the following branch index.
//!
//! Points outside the increasing union of finite-stage dendrites are carried
//! by lazily infinite itineraries. Only one infinite family is representable:
//! the zero-interleaved chain through the dyadics `<= r` in enumeration
//! order, which is the family the dynamics of this crate revolves around.
//! Its tail is a named rule, not a closure, so equality and hashing stay
//! decidable.

use crate::dyadics::{gamma_cap_kth, Dyadic};
use crate::rational::{fmt_rat, parse_rat, rat_int, Rat};
use num_traits::Signed;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ItineraryError {
    #[error("parameter must lie in (0,1], got {0}")]
    ParamOutOfRange(String),
    #[error("lazy itineraries never reach the origin")]
    LazyNeverReachesOrigin,
    #[error("parse error at token {index}: {message}")]
    Parse { index: usize, message: String },
}

/// One star entry: enter the star sitting at `dyadic` on beam `branch`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub branch: u32,
    pub dyadic: Dyadic,
}

impl Step {
    pub fn new(branch: u32, dyadic: Dyadic) -> Self {
        Step { branch, dyadic }
    }
}

/// Deterministic generator for the infinite part of a lazy itinerary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TailRule {
    /// Yields the pairs `(0, b_k), (0, b_{k+1}), ...` where `b_k` is the
    /// `k`-th dyadic `<= r` in enumeration order, starting at `next_index`.
    ZeroInterleavedGammaCap { r: Rat, next_index: u64 },
}

impl TailRule {
    /// The first dyadic this tail will yield.
    pub fn head_dyadic(&self) -> Dyadic {
        match self {
            TailRule::ZeroInterleavedGammaCap { r, next_index } => {
                gamma_cap_kth(r, *next_index).expect("tail rule keeps r in (0,1]")
            }
        }
    }

    /// The tail with its first pair consumed.
    pub fn advanced(&self) -> TailRule {
        match self {
            TailRule::ZeroInterleavedGammaCap { r, next_index } => {
                TailRule::ZeroInterleavedGammaCap {
                    r: r.clone(),
                    next_index: next_index + 1,
                }
            }
        }
    }
}

/// A symbolic address in the dendrite.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Itinerary {
    /// The center `(0)`.
    Origin,
    /// `(n_1, a_1, ..., n_k, r)`: a point of a finite-stage dendrite. A star
    /// center is the canonical case `param == a` dyadic with no continuation.
    Finite {
        steps: Vec<Step>,
        terminal_branch: u32,
        param: Rat,
    },
    /// An infinite address: the explicit steps, then `terminal_branch` paired
    /// with the tail's first dyadic, then the rest of the tail.
    Lazy {
        steps: Vec<Step>,
        terminal_branch: u32,
        tail: TailRule,
    },
}

impl Itinerary {
    /// Validating constructor for finite itineraries.
    pub fn finite(
        steps: Vec<Step>,
        terminal_branch: u32,
        param: Rat,
    ) -> Result<Self, ItineraryError> {
        if !param.is_positive() || param > rat_int(1) {
            return Err(ItineraryError::ParamOutOfRange(fmt_rat(&param)));
        }
        Ok(Itinerary::Finite {
            steps,
            terminal_branch,
            param,
        })
    }

    /// A point on top-level beam `branch` at parameter `param`.
    pub fn beam_point(branch: u32, param: Rat) -> Result<Self, ItineraryError> {
        Itinerary::finite(Vec::new(), branch, param)
    }

    pub fn is_origin(&self) -> bool {
        matches!(self, Itinerary::Origin)
    }

    /// The star-entry pairs, with a lazy tail left implicit.
    pub fn steps(&self) -> &[Step] {
        match self {
            Itinerary::Origin => &[],
            Itinerary::Finite { steps, .. } | Itinerary::Lazy { steps, .. } => steps,
        }
    }
}

/// One state along an orbit: the current itinerary and how many steps it
/// took to get there, so `itinerary == f^step(initial)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitState {
    pub itinerary: Itinerary,
    pub step: u64,
}

/// The orbit of `start` as an endless iterator of [`OrbitState`]s.
pub fn orbit_states(start: &Itinerary) -> impl Iterator<Item = OrbitState> {
    let mut cur = start.clone();
    let mut step = 0u64;
    std::iter::from_fn(move || {
        let state = OrbitState {
            itinerary: cur.clone(),
            step,
        };
        cur = apply_f(&cur);
        step += 1;
        Some(state)
    })
}

/// The point `x ~ (0, b_1, 0, b_2, ...)` threading through all dyadics
/// `<= r` in enumeration order. Errors unless `r` lies in `(0,1]`.
pub fn special_point(r: &Rat) -> Result<Itinerary, ItineraryError> {
    if !r.is_positive() || *r > rat_int(1) {
        return Err(ItineraryError::ParamOutOfRange(fmt_rat(r)));
    }
    Ok(Itinerary::Lazy {
        steps: Vec::new(),
        terminal_branch: 0,
        tail: TailRule::ZeroInterleavedGammaCap {
            r: r.clone(),
            next_index: 1,
        },
    })
}

/// One application of the map. Total: exactly one of R0-R3 fires.
pub fn apply_f(it: &Itinerary) -> Itinerary {
    match it {
        // R0
        Itinerary::Origin => Itinerary::Origin,
        Itinerary::Finite {
            steps,
            terminal_branch,
            param,
        } => {
            if let Some(first) = steps.first() {
                if first.branch >= 1 {
                    // R1 on the head pair.
                    let mut steps = steps.clone();
                    steps[0].branch -= 1;
                    Itinerary::Finite {
                        steps,
                        terminal_branch: *terminal_branch,
                        param: param.clone(),
                    }
                } else {
                    // R3: drop (0, a), add level(a) to the next branch.
                    let level = first.dyadic.level();
                    let mut steps = steps[1..].to_vec();
                    let mut terminal_branch = *terminal_branch;
                    match steps.first_mut() {
                        Some(next) => next.branch += level,
                        None => terminal_branch += level,
                    }
                    Itinerary::Finite {
                        steps,
                        terminal_branch,
                        param: param.clone(),
                    }
                }
            } else if *terminal_branch >= 1 {
                // R1 on the bare beam index.
                Itinerary::Finite {
                    steps: Vec::new(),
                    terminal_branch: terminal_branch - 1,
                    param: param.clone(),
                }
            } else {
                // R2: (0, r) collapses.
                Itinerary::Origin
            }
        }
        Itinerary::Lazy {
            steps,
            terminal_branch,
            tail,
        } => {
            if let Some(first) = steps.first() {
                if first.branch >= 1 {
                    let mut steps = steps.clone();
                    steps[0].branch -= 1;
                    Itinerary::Lazy {
                        steps,
                        terminal_branch: *terminal_branch,
                        tail: tail.clone(),
                    }
                } else {
                    let level = first.dyadic.level();
                    let mut steps = steps[1..].to_vec();
                    let mut terminal_branch = *terminal_branch;
                    match steps.first_mut() {
                        Some(next) => next.branch += level,
                        None => terminal_branch += level,
                    }
                    Itinerary::Lazy {
                        steps,
                        terminal_branch,
                        tail: tail.clone(),
                    }
                }
            } else if *terminal_branch >= 1 {
                Itinerary::Lazy {
                    steps: Vec::new(),
                    terminal_branch: terminal_branch - 1,
                    tail: tail.clone(),
                }
            } else {
                // R3 with one tail pair materialized: the head pair is
                // (0, b_k); dropping it bumps the next branch (also from the
                // tail, hence 0) by level(b_k).
                let b = tail.head_dyadic();
                Itinerary::Lazy {
                    steps: Vec::new(),
                    terminal_branch: b.level(),
                    tail: tail.advanced(),
                }
            }
        }
    }
}

/// `f^n`, with `iterate_f(it, 0) == it`.
pub fn iterate_f(it: &Itinerary, n: u64) -> Itinerary {
    let mut cur = it.clone();
    for _ in 0..n {
        cur = apply_f(&cur);
    }
    cur
}

/// Inverse of R1 on positive-head classes: increments the head branch.
/// Together with [`apply_f`] this exhibits the branch shift as a bijection.
pub fn increment_head(it: &Itinerary) -> Itinerary {
    match it {
        Itinerary::Origin => Itinerary::Origin,
        Itinerary::Finite {
            steps,
            terminal_branch,
            param,
        } => {
            let mut steps = steps.clone();
            let mut terminal_branch = *terminal_branch;
            match steps.first_mut() {
                Some(first) => first.branch += 1,
                None => terminal_branch += 1,
            }
            Itinerary::Finite {
                steps,
                terminal_branch,
                param: param.clone(),
            }
        }
        Itinerary::Lazy {
            steps,
            terminal_branch,
            tail,
        } => {
            let mut steps = steps.clone();
            let mut terminal_branch = *terminal_branch;
            match steps.first_mut() {
                Some(first) => first.branch += 1,
                None => terminal_branch += 1,
            }
            Itinerary::Lazy {
                steps,
                terminal_branch,
                tail: tail.clone(),
            }
        }
    }
}

/// Exact number of steps a finite itinerary needs to reach the origin:
/// every pair `(n, a)` costs `n + 1 + level(a)` and the terminal beam costs
/// `terminal_branch + 1`.
fn origin_time_closed_form(steps: &[Step], terminal_branch: u32) -> u64 {
    let pairs: u64 = steps
        .iter()
        .map(|s| s.branch as u64 + 1 + s.dyadic.level() as u64)
        .sum();
    pairs + terminal_branch as u64 + 1
}

/// The least `N` with `f^N(it) == Origin`, computed by forward iteration.
/// The closed-form count doubles as a sanity cap on the loop. Lazy
/// itineraries are rejected: their orbits never reach the origin.
pub fn time_to_origin(it: &Itinerary) -> Result<u64, ItineraryError> {
    match it {
        Itinerary::Origin => Ok(0),
        Itinerary::Lazy { .. } => Err(ItineraryError::LazyNeverReachesOrigin),
        Itinerary::Finite {
            steps,
            terminal_branch,
            ..
        } => {
            let cap = origin_time_closed_form(steps, *terminal_branch);
            let mut cur = it.clone();
            let mut n = 0u64;
            while !cur.is_origin() {
                cur = apply_f(&cur);
                n += 1;
                assert!(n <= cap, "origin time exceeded the closed-form cap");
            }
            Ok(n)
        }
    }
}

/// Return times of the special point: the steps `m_2 < ... < m_K` at which
/// the orbit of `special_point(r)` re-enters a state `(0, b_k, ...)`.
/// Satisfies `m_{k+1} - m_k == level(b_k) + 1` with `m_1 = 0`.
pub fn return_times(r: &Rat, big_k: u64) -> Result<Vec<u64>, ItineraryError> {
    assert!(big_k >= 2);
    let mut cur = special_point(r)?;
    let mut times = Vec::with_capacity(big_k as usize - 1);
    let mut step = 0u64;
    loop {
        if let Itinerary::Lazy {
            steps,
            terminal_branch: 0,
            tail: TailRule::ZeroInterleavedGammaCap { next_index, .. },
        } = &cur
        {
            if steps.is_empty() && *next_index >= 2 {
                times.push(step);
                if *next_index >= big_k {
                    return Ok(times);
                }
            }
        }
        cur = apply_f(&cur);
        step += 1;
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Itinerary::Origin => write!(f, "(0)"),
            Itinerary::Finite {
                steps,
                terminal_branch,
                param,
            } => {
                write!(f, "(")?;
                for s in steps {
                    write!(f, "{},{},", s.branch, s.dyadic)?;
                }
                write!(f, "{},{})", terminal_branch, fmt_rat(param))
            }
            Itinerary::Lazy {
                steps,
                terminal_branch,
                tail: TailRule::ZeroInterleavedGammaCap { r, next_index },
            } => {
                write!(f, "(")?;
                for s in steps {
                    write!(f, "{},{},", s.branch, s.dyadic)?;
                }
                write!(
                    f,
                    "{},*gamma[{},{}])",
                    terminal_branch,
                    fmt_rat(r),
                    next_index
                )
            }
        }
    }
}

impl FromStr for Itinerary {
    type Err = ItineraryError;

    /// Parses the textual syntax: `(0)`, `(n1,a1,...,nk,r)`, or
    /// `(...,nk,*gamma[r,k])`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ItineraryError::Parse {
                index: 0,
                message: "itinerary must be parenthesized".into(),
            })?;
        // The lazy tail token carries a comma; peel it off before splitting.
        let (plain, gamma_token) = match inner.find("*gamma[") {
            Some(pos) => (&inner[..pos], Some(inner[pos..].trim())),
            None => (inner, None),
        };
        let mut tokens: Vec<&str> = plain
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .collect();
        if let Some(g) = gamma_token {
            tokens.push(g);
        }
        if tokens.len() == 1 {
            return if tokens[0] == "0" {
                Ok(Itinerary::Origin)
            } else {
                Err(ItineraryError::Parse {
                    index: 0,
                    message: format!("single-token itinerary must be `0`, got `{}`", tokens[0]),
                })
            };
        }
        if !tokens.len().is_multiple_of(2) {
            return Err(ItineraryError::Parse {
                index: tokens.len() - 1,
                message: "expected alternating branch,value tokens".into(),
            });
        }
        let parse_branch = |i: usize| -> Result<u32, ItineraryError> {
            tokens[i].parse().map_err(|_| ItineraryError::Parse {
                index: i,
                message: format!("invalid branch index `{}`", tokens[i]),
            })
        };
        let mut steps = Vec::new();
        for i in (0..tokens.len() - 2).step_by(2) {
            let branch = parse_branch(i)?;
            let value = parse_rat(tokens[i + 1]).map_err(|e| ItineraryError::Parse {
                index: i + 1,
                message: e.to_string(),
            })?;
            let dyadic = Dyadic::try_from_rat(&value).map_err(|e| ItineraryError::Parse {
                index: i + 1,
                message: e.to_string(),
            })?;
            steps.push(Step::new(branch, dyadic));
        }
        let terminal_branch = parse_branch(tokens.len() - 2)?;
        let last = tokens[tokens.len() - 1];
        if let Some(gamma) = last
            .strip_prefix("*gamma[")
            .and_then(|t| t.strip_suffix(']'))
        {
            let (r_str, k_str) = gamma.split_once(',').ok_or_else(|| ItineraryError::Parse {
                index: tokens.len() - 1,
                message: "expected *gamma[r,k]".into(),
            })?;
            let r = parse_rat(r_str.trim()).map_err(|e| ItineraryError::Parse {
                index: tokens.len() - 1,
                message: e.to_string(),
            })?;
            if !r.is_positive() || r > rat_int(1) {
                return Err(ItineraryError::Parse {
                    index: tokens.len() - 1,
                    message: format!("gamma cap must lie in (0,1], got {}", fmt_rat(&r)),
                });
            }
            let next_index: u64 = k_str.trim().parse().map_err(|_| ItineraryError::Parse {
                index: tokens.len() - 1,
                message: format!("invalid tail index `{}`", k_str.trim()),
            })?;
            if next_index == 0 {
                return Err(ItineraryError::Parse {
                    index: tokens.len() - 1,
                    message: "tail index is 1-based".into(),
                });
            }
            Ok(Itinerary::Lazy {
                steps,
                terminal_branch,
                tail: TailRule::ZeroInterleavedGammaCap { r, next_index },
            })
        } else {
            let param = parse_rat(last).map_err(|e| ItineraryError::Parse {
                index: tokens.len() - 1,
                message: e.to_string(),
            })?;
            Itinerary::finite(steps, terminal_branch, param).map_err(|e| ItineraryError::Parse {
                index: tokens.len() - 1,
                message: e.to_string(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn dy(p: u64, l: u32) -> Dyadic {
        Dyadic::new(p, l).unwrap()
    }

    fn beam(n: u32, num: i64, den: i64) -> Itinerary {
        Itinerary::beam_point(n, rat(num, den)).unwrap()
    }

    #[test]
    fn rewrite_decrements_positive_head() {
        assert_eq!(apply_f(&beam(3, 3, 10)), beam(2, 3, 10));
    }

    #[test]
    fn rewrite_transfers_level_on_zero_head() {
        // (0, 3/8, 2, 1/2) -> (5, 1/2): l = 3 added to m = 2.
        let it = Itinerary::finite(vec![Step::new(0, dy(3, 3))], 2, rat(1, 2)).unwrap();
        assert_eq!(apply_f(&it), beam(5, 1, 2));
    }

    #[test]
    fn rewrite_fixes_origin_and_collapses_base_beam() {
        assert_eq!(apply_f(&Itinerary::Origin), Itinerary::Origin);
        assert_eq!(apply_f(&beam(0, 7, 10)), Itinerary::Origin);
    }

    #[test]
    fn star_center_on_base_beam_collapses_like_the_beam() {
        // (0, 1/2) is the center of the star at 1/2 on B_0; it maps to 0.
        assert_eq!(apply_f(&beam(0, 1, 2)), Itinerary::Origin);
    }

    #[test]
    fn iterate_zero_is_identity() {
        let it = beam(3, 3, 10);
        assert_eq!(iterate_f(&it, 0), it);
    }

    #[test]
    fn iterate_three_decrements() {
        assert_eq!(iterate_f(&beam(3, 7, 10), 3), beam(0, 7, 10));
    }

    #[test]
    fn special_point_orbit_prefix_matches_displayed_orbit() {
        // (0,b_1,0,b_2,...) -> (1,b_2,...) -> (0,b_2,...) for r=1, b_1=1/2.
        let x = special_point(&rat_int(1)).unwrap();
        let after_2 = iterate_f(&x, 2);
        assert_eq!(
            after_2,
            Itinerary::Lazy {
                steps: vec![],
                terminal_branch: 0,
                tail: TailRule::ZeroInterleavedGammaCap {
                    r: rat_int(1),
                    next_index: 2
                }
            }
        );
    }

    #[test]
    fn exactly_one_rule_applies() {
        // The rewrite classification is a total match; spot-check that
        // distinct rules produce distinct shapes.
        let r0 = apply_f(&Itinerary::Origin);
        let r1 = apply_f(&beam(2, 1, 3));
        let r2 = apply_f(&beam(0, 1, 3));
        let r3 = apply_f(&Itinerary::finite(vec![Step::new(0, dy(1, 1))], 0, rat(1, 3)).unwrap());
        assert_eq!(r0, Itinerary::Origin);
        assert_eq!(r1, beam(1, 1, 3));
        assert_eq!(r2, Itinerary::Origin);
        assert_eq!(r3, beam(1, 1, 3));
    }

    #[test]
    fn origin_time_examples() {
        assert_eq!(time_to_origin(&Itinerary::Origin).unwrap(), 0);
        // (n, r) needs n decrements plus the collapse.
        for n in 0..10u32 {
            assert_eq!(time_to_origin(&beam(n, 7, 10)).unwrap(), n as u64 + 1);
        }
        // (0, 1/2, 2, r): R3 gives (3, r), then 3 decrements and a collapse.
        let it = Itinerary::finite(vec![Step::new(0, dy(1, 1))], 2, rat(9, 10)).unwrap();
        assert_eq!(time_to_origin(&it).unwrap(), 5);
    }

    #[test]
    fn origin_time_rejects_lazy() {
        let x = special_point(&rat(1, 2)).unwrap();
        assert_eq!(
            time_to_origin(&x),
            Err(ItineraryError::LazyNeverReachesOrigin)
        );
    }

    #[test]
    fn lazy_orbit_never_reaches_origin() {
        let mut cur = special_point(&rat(1, 2)).unwrap();
        for _ in 0..10_000 {
            assert!(!cur.is_origin());
            cur = apply_f(&cur);
        }
    }

    #[test]
    fn finite_orbits_die_at_origin_and_stay() {
        let it = Itinerary::finite(
            vec![Step::new(2, dy(3, 2)), Step::new(0, dy(1, 3))],
            4,
            rat(5, 7),
        )
        .unwrap();
        let n = time_to_origin(&it).unwrap();
        assert!(iterate_f(&it, n).is_origin());
        assert!(!iterate_f(&it, n - 1).is_origin());
        assert!(iterate_f(&it, n + 7).is_origin());
    }

    #[test]
    fn special_point_tail_values() {
        for (r, expect) in [
            (rat_int(1), vec![rat(1, 2), rat(1, 4), rat(3, 4)]),
            (rat(1, 2), vec![rat(1, 2), rat(1, 4), rat(1, 8), rat(3, 8)]),
            (
                rat(1, 4),
                vec![rat(1, 4), rat(1, 8), rat(1, 16), rat(3, 16)],
            ),
        ] {
            let x = special_point(&r).unwrap();
            let Itinerary::Lazy { mut tail, .. } = x else {
                panic!("special point must be lazy")
            };
            for e in expect {
                assert_eq!(tail.head_dyadic().value(), e, "r = {}", fmt_rat(&r));
                tail = tail.advanced();
            }
        }
    }

    #[test]
    fn special_point_rejects_out_of_range() {
        assert!(special_point(&rat_int(0)).is_err());
        assert!(special_point(&rat(5, 4)).is_err());
    }

    #[test]
    fn return_times_examples() {
        assert_eq!(return_times(&rat_int(1), 4).unwrap(), vec![2, 5, 8]);
        assert_eq!(return_times(&rat(1, 2), 3).unwrap(), vec![2, 5]);
        // K = 2: one level transfer plus the decrements, level(b_1) + 1.
        for r in [rat_int(1), rat(1, 2), rat(3, 4), rat(7, 10)] {
            let b1 = gamma_cap_kth(&r, 1).unwrap();
            assert_eq!(
                return_times(&r, 2).unwrap(),
                vec![b1.level() as u64 + 1],
                "r = {}",
                fmt_rat(&r)
            );
        }
    }

    #[test]
    fn return_time_recurrence_short() {
        let r = rat(1, 2);
        let times = return_times(&r, 50).unwrap();
        for k in 1..times.len() {
            let b = gamma_cap_kth(&r, k as u64 + 1).unwrap();
            assert_eq!(times[k] - times[k - 1], b.level() as u64 + 1);
        }
        let b1 = gamma_cap_kth(&r, 1).unwrap();
        assert_eq!(times[0], b1.level() as u64 + 1);
    }

    #[test]
    fn orbit_states_index_their_iterates() {
        let start = beam(3, 2, 5);
        for state in orbit_states(&start).take(8) {
            assert_eq!(state.itinerary, iterate_f(&start, state.step));
        }
    }

    #[test]
    fn increment_head_inverts_decrement() {
        let samples = [
            beam(4, 2, 3),
            Itinerary::finite(vec![Step::new(7, dy(5, 3))], 2, rat(1, 5)).unwrap(),
            special_point(&rat(3, 4)).unwrap(),
        ];
        for it in samples {
            let up = increment_head(&it);
            assert_eq!(apply_f(&up), it);
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        let cases = [
            "(0)",
            "(3,7/10)",
            "(0,3/8,2,1/2)",
            "(1,1/2,0,3/16,4,1)",
            "(0,*gamma[1,1])",
            "(2,*gamma[1/2,4])",
            "(0,1/2,3,*gamma[3/4,2])",
        ];
        for s in cases {
            let it: Itinerary = s.parse().unwrap();
            assert_eq!(it.to_string(), s);
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = "(1,1/3,2,1/2)".parse::<Itinerary>().unwrap_err();
        match err {
            ItineraryError::Parse { index, .. } => assert_eq!(index, 1),
            other => panic!("unexpected error {other:?}"),
        }
        assert!("(x,1/2)".parse::<Itinerary>().is_err());
        assert!("(1,1/2,2)".parse::<Itinerary>().is_err());
        assert!("3,1/2".parse::<Itinerary>().is_err());
        assert!("(0,2)".parse::<Itinerary>().is_err());
    }

    #[test]
    fn param_validation() {
        assert!(Itinerary::beam_point(1, rat_int(0)).is_err());
        assert!(Itinerary::beam_point(1, rat(3, 2)).is_err());
        assert!(Itinerary::beam_point(1, rat_int(1)).is_ok());
    }
}
