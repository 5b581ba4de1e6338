//! Orbits, ω-limit approximations, and constructive transitivity witnesses.
//!
//! Transitivity cannot be certified by sampling: every finite-stage point
//! falls into the origin, so a random point of a cylinder `U` never
//! witnesses `f^n(U) ∩ V != ∅`. Witnesses are built symbolically instead —
//! concatenate `U`'s address, a dyadic entry chosen inside `U`'s parameter
//! interval, and `V`'s address — and then verified by forward iteration,
//! never trusted from the construction alone.

use crate::dyadics::Dyadic;
use crate::geometry::{build_net_dr, CompactApprox};
use crate::hyperspace::{hausdorff_matrix, hausdorff_nets, HyperspaceError};
use crate::itinerary::{apply_f, special_point, Itinerary, ItineraryError, Step};
use crate::rational::{fmt_rat, rat_int, Rat};
use num_traits::Signed;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("cylinder parameter interval must be a non-degenerate open subinterval of (0,1)")]
    BadCylinderInterval,
    #[error("r must lie in (0,1], got {0}")]
    ROutOfRange(String),
    #[error(transparent)]
    Itinerary(#[from] ItineraryError),
    #[error(transparent)]
    Hyperspace(#[from] HyperspaceError),
    #[error("witness verification failed: {0}")]
    WitnessVerification(String),
}

/// A basic open set: all points whose itinerary extends
/// `(prefix, terminal_branch, t)` with `t` in the open interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub prefix: Vec<Step>,
    pub terminal_branch: u32,
    pub param_lo: Rat,
    pub param_hi: Rat,
}

impl Cylinder {
    pub fn new(
        prefix: Vec<Step>,
        terminal_branch: u32,
        param_lo: Rat,
        param_hi: Rat,
    ) -> Result<Self, DynamicsError> {
        if !param_lo.is_positive() || param_hi >= rat_int(1) || param_lo >= param_hi {
            return Err(DynamicsError::BadCylinderInterval);
        }
        Ok(Cylinder {
            prefix,
            terminal_branch,
            param_lo,
            param_hi,
        })
    }

    fn interval_contains(&self, t: &Rat) -> bool {
        *t > self.param_lo && *t < self.param_hi
    }

    /// Exact membership by prefix matching. Lazy itineraries materialize
    /// just enough tail pairs to decide.
    pub fn contains(&self, it: &Itinerary) -> bool {
        let want = self.prefix.len();
        match it {
            Itinerary::Origin => false,
            Itinerary::Finite {
                steps,
                terminal_branch,
                param,
            } => {
                if steps.len() < want {
                    return false;
                }
                if steps[..want] != self.prefix[..] {
                    return false;
                }
                if steps.len() == want {
                    *terminal_branch == self.terminal_branch && self.interval_contains(param)
                } else {
                    let next = &steps[want];
                    next.branch == self.terminal_branch
                        && self.interval_contains(&next.dyadic.value())
                }
            }
            Itinerary::Lazy {
                steps,
                terminal_branch,
                tail,
            } => {
                // The implicit pair list continues (terminal_branch, b_k),
                // (0, b_{k+1}), ...
                let mut pairs: Vec<(u32, Rat)> =
                    steps.iter().map(|s| (s.branch, s.dyadic.value())).collect();
                let mut tail = tail.clone();
                let mut branch = *terminal_branch;
                while pairs.len() <= want {
                    let d = tail.head_dyadic();
                    pairs.push((branch, d.value()));
                    tail = tail.advanced();
                    branch = 0;
                }
                for (i, step) in self.prefix.iter().enumerate() {
                    if pairs[i] != (step.branch, step.dyadic.value()) {
                        return false;
                    }
                }
                pairs[want].0 == self.terminal_branch && self.interval_contains(&pairs[want].1)
            }
        }
    }

    /// Textual form `(n1,a1,...,nk|lo,hi)`.
    pub fn to_string_compact(&self) -> String {
        let mut inner = String::new();
        for s in &self.prefix {
            inner.push_str(&format!("{},{},", s.branch, s.dyadic));
        }
        format!(
            "({}{}|{},{})",
            inner,
            self.terminal_branch,
            fmt_rat(&self.param_lo),
            fmt_rat(&self.param_hi)
        )
    }

    pub fn parse(s: &str) -> Result<Self, DynamicsError> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or(DynamicsError::BadCylinderInterval)?;
        let (addr, interval) = inner
            .split_once('|')
            .ok_or(DynamicsError::BadCylinderInterval)?;
        let addr_tokens: Vec<&str> = addr.split(',').map(str::trim).collect();
        if addr_tokens.len() % 2 != 1 {
            return Err(DynamicsError::BadCylinderInterval);
        }
        let mut prefix = Vec::new();
        for i in (0..addr_tokens.len() - 1).step_by(2) {
            let branch: u32 = addr_tokens[i]
                .parse()
                .map_err(|_| DynamicsError::BadCylinderInterval)?;
            let value = crate::rational::parse_rat(addr_tokens[i + 1])
                .map_err(|_| DynamicsError::BadCylinderInterval)?;
            let dyadic =
                Dyadic::try_from_rat(&value).map_err(|_| DynamicsError::BadCylinderInterval)?;
            prefix.push(Step::new(branch, dyadic));
        }
        let terminal_branch: u32 = addr_tokens[addr_tokens.len() - 1]
            .parse()
            .map_err(|_| DynamicsError::BadCylinderInterval)?;
        let (lo, hi) = interval
            .split_once(',')
            .ok_or(DynamicsError::BadCylinderInterval)?;
        let lo = crate::rational::parse_rat(lo.trim())
            .map_err(|_| DynamicsError::BadCylinderInterval)?;
        let hi = crate::rational::parse_rat(hi.trim())
            .map_err(|_| DynamicsError::BadCylinderInterval)?;
        Cylinder::new(prefix, terminal_branch, lo, hi)
    }
}

/// `[it, f(it), ..., f^(N-1)(it)]`, exact.
pub fn orbit(it: &Itinerary, n: usize) -> Vec<Itinerary> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity(n);
    let mut cur = it.clone();
    for _ in 0..n {
        out.push(cur.clone());
        cur = apply_f(&cur);
    }
    out
}

/// Orbit-tail approximation of an ω-limit set. The points are exactly the
/// listed iterates (as a set, deduplicated); `tail_tol` is the truncation
/// tolerance later used for distances involving lazy points.
#[derive(Debug, Clone)]
pub struct OmegaApprox {
    pub seed: Itinerary,
    pub skip: u64,
    pub length: u64,
    pub tail_tol: Rat,
    pub points: CompactApprox,
}

pub fn omega_approx(seed: &Itinerary, skip: u64, length: u64, tail_tol: &Rat) -> OmegaApprox {
    assert!(length >= 1);
    let mut cur = seed.clone();
    for _ in 0..skip {
        cur = apply_f(&cur);
    }
    let mut set: BTreeSet<Itinerary> = BTreeSet::new();
    for _ in 0..length {
        set.insert(cur.clone());
        cur = apply_f(&cur);
    }
    let points: Vec<Itinerary> = set.into_iter().collect();
    OmegaApprox {
        seed: seed.clone(),
        skip,
        length,
        tail_tol: tail_tol.clone(),
        points: CompactApprox {
            label: format!("omega[{seed};skip={skip};len={length}]"),
            points,
            resolution: tail_tol.clone(),
        },
    }
}

/// Residual of the main verification: the Hausdorff distance between the
/// orbit tail of the special point for `r` and the net of `D_r`. The
/// residual tends to zero as the window grows, the net refines, and the
/// tolerances shrink.
pub fn verify_omega_equals_dr(
    r: &Rat,
    skip: u64,
    length: u64,
    eps: &Rat,
    branch_cutoff: u32,
    tail_tol: &Rat,
) -> Result<Rat, DynamicsError> {
    if !r.is_positive() || *r > rat_int(1) {
        return Err(DynamicsError::ROutOfRange(fmt_rat(r)));
    }
    let seed = special_point(r)?;
    let omega = omega_approx(&seed, skip, length, tail_tol);
    let net = build_net_dr(r, eps, branch_cutoff).map_err(HyperspaceError::from)?;
    Ok(hausdorff_nets(&omega.points, &net, tail_tol)?)
}

/// A verified transitivity witness: `z` lies in the source cylinder and
/// `f^n(z)` in the target.
#[derive(Debug, Clone)]
pub struct Witness {
    pub z: Itinerary,
    pub n: u64,
}

/// Smallest dyadic (by level, then numerator) strictly inside `(lo, hi)`.
fn dyadic_strictly_inside(lo: &Rat, hi: &Rat) -> Dyadic {
    for l in 1..64u32 {
        if let Some(d) = dyadic_of_level_inside(lo, hi, l) {
            return d;
        }
    }
    unreachable!("dyadics are dense in (0,1)")
}

/// Smallest level-`l` dyadic strictly inside `(lo, hi)`, if any.
fn dyadic_of_level_inside(lo: &Rat, hi: &Rat, l: u32) -> Option<Dyadic> {
    let scale = crate::rational::pow2(l as i64);
    // Smallest integer p with p/2^l > lo, clamped to 1 and made odd.
    let one = num_bigint::BigInt::from(1);
    let mut p = (lo * &scale).floor().to_integer() + &one;
    if p < one {
        p = one.clone();
    }
    if p.clone() % 2 == num_bigint::BigInt::ZERO {
        p += &one;
    }
    let pu = u64::try_from(p).ok()?;
    let d = Dyadic::new(pu, l).ok()?;
    if d.value() < *hi {
        Some(d)
    } else {
        None
    }
}

fn midpoint(lo: &Rat, hi: &Rat) -> Rat {
    (lo + hi) / rat_int(2)
}

/// Total rewrite cost of consuming a pair list: each pair `(b, a)` costs
/// `b + 1 + level(a)` steps before the remainder is restored verbatim.
fn consumption_cost(pairs: &[Step]) -> u64 {
    pairs
        .iter()
        .map(|s| s.branch as u64 + 1 + s.dyadic.level() as u64)
        .sum()
}

/// Builds and forward-verifies a point of `u` whose orbit enters `v`.
/// The returned `n` is the first positive hit, found by iteration.
pub fn connecting_point(u: &Cylinder, v: &Cylinder) -> Result<Witness, DynamicsError> {
    let a = dyadic_strictly_inside(&u.param_lo, &u.param_hi);
    let t_v = midpoint(&v.param_lo, &v.param_hi);
    let mut steps = u.prefix.clone();
    steps.push(Step::new(u.terminal_branch, a));
    steps.extend(v.prefix.iter().cloned());
    let z = Itinerary::finite(steps.clone(), v.terminal_branch, t_v)?;
    if !u.contains(&z) {
        return Err(DynamicsError::WitnessVerification(format!(
            "constructed point {z} escaped the source cylinder"
        )));
    }
    // The head is fully consumed after the closed-form cost; search up to it.
    let cap = consumption_cost(&steps) + v.terminal_branch as u64 + 1;
    let mut cur = apply_f(&z);
    for n in 1..=cap {
        if v.contains(&cur) {
            return Ok(Witness { z, n });
        }
        cur = apply_f(&cur);
    }
    Err(DynamicsError::WitnessVerification(format!(
        "orbit of {z} missed the target within {cap} steps"
    )))
}

/// Smallest guaranteed-achievable hitting time into any target: the head
/// consumption cost plus the smallest dyadic level `l` such that levels `l`
/// and `l+1` both have representatives inside the source interval (two
/// adjacent levels fix parity; padding pairs supply the rest).
pub fn mixing_threshold(u: &Cylinder) -> u64 {
    let base = consumption_cost(&u.prefix) + u.terminal_branch as u64 + 1;
    let mut l = 1u32;
    loop {
        if dyadic_of_level_inside(&u.param_lo, &u.param_hi, l).is_some()
            && dyadic_of_level_inside(&u.param_lo, &u.param_hi, l + 1).is_some()
        {
            return base + l as u64;
        }
        l += 1;
        assert!(l < 62, "interval too thin for any dyadic level");
    }
}

/// Witness (or reason for unreachability) for one prescribed hitting time.
#[derive(Debug, Clone)]
pub enum TimedWitness {
    Verified(Witness),
    Unreachable { n: u64, reason: String },
}

#[derive(Debug, Clone)]
pub struct MixingReport {
    pub witnesses: Vec<TimedWitness>,
    pub verified: usize,
    pub unreachable: usize,
}

/// For each `n` in `[n_min, n_min + window)` builds a point `z_n` of `u`
/// with `f^n(z_n)` in `v`, exactly at time `n`. The hitting time is tuned by
/// the level of the dyadic inserted inside `u`'s interval (one step per
/// level) and by padding with level-1 star entries (two steps each); times
/// below the construction's threshold are reported, not forced.
pub fn mixing_window(
    u: &Cylinder,
    v: &Cylinder,
    n_min: u64,
    window: u64,
) -> Result<MixingReport, DynamicsError> {
    assert!(window >= 1);
    let base = consumption_cost(&u.prefix) + u.terminal_branch as u64 + 1;
    let t_v = midpoint(&v.param_lo, &v.param_hi);
    let pad_step = Step::new(0, Dyadic::new(1, 1).expect("1/2 is dyadic"));
    let mut witnesses = Vec::new();
    let mut verified = 0usize;
    let mut unreachable = 0usize;
    for n in n_min..(n_min + window) {
        if n < base + 1 {
            witnesses.push(TimedWitness::Unreachable {
                n,
                reason: format!("below the head consumption threshold {}", base + 1),
            });
            unreachable += 1;
            continue;
        }
        let budget = n - base; // must equal level + 2 * padding
        let mut found = None;
        for l in 1..=budget.min(62) {
            let rest = budget - l;
            if !rest.is_multiple_of(2) {
                continue;
            }
            if let Some(a) = dyadic_of_level_inside(&u.param_lo, &u.param_hi, l as u32) {
                let mut steps = u.prefix.clone();
                steps.push(Step::new(u.terminal_branch, a));
                steps.extend(std::iter::repeat_n(pad_step, (rest / 2) as usize));
                steps.extend(v.prefix.iter().cloned());
                let z = Itinerary::finite(steps, v.terminal_branch, t_v.clone())?;
                found = Some(z);
                break;
            }
        }
        match found {
            None => {
                witnesses.push(TimedWitness::Unreachable {
                    n,
                    reason: "no dyadic level fits the time budget".into(),
                });
                unreachable += 1;
            }
            Some(z) => {
                if !u.contains(&z) {
                    return Err(DynamicsError::WitnessVerification(format!(
                        "constructed point {z} escaped the source cylinder"
                    )));
                }
                let landed = crate::itinerary::iterate_f(&z, n);
                if !v.contains(&landed) {
                    return Err(DynamicsError::WitnessVerification(format!(
                        "f^{n}({z}) = {landed} is not in the target cylinder"
                    )));
                }
                witnesses.push(TimedWitness::Verified(Witness { z, n }));
                verified += 1;
            }
        }
    }
    Ok(MixingReport {
        witnesses,
        verified,
        unreachable,
    })
}

/// ω-approximations for a family of seeds plus their pairwise Hausdorff
/// matrix. With special-point seeds over a grid of `r` values the matrix
/// traces out the arc `{D_r}` inside the hyperspace of ω-limit sets.
pub fn sample_omega_hyperspace(
    seeds: &[Itinerary],
    skip: u64,
    length: u64,
    tail_tol: &Rat,
) -> Result<(Vec<OmegaApprox>, Vec<Vec<Rat>>), DynamicsError> {
    assert!(!seeds.is_empty());
    let omegas: Vec<OmegaApprox> = seeds
        .iter()
        .map(|s| omega_approx(s, skip, length, tail_tol))
        .collect();
    let nets: Vec<CompactApprox> = omegas.iter().map(|o| o.points.clone()).collect();
    let matrix = hausdorff_matrix(&nets, tail_tol)?;
    Ok((omegas, matrix))
}
