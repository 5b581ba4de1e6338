//! Tent-map reference system on `[0,1]`.
//!
//! The tent map is an exact rational machine: iterates of `p/q` never grow
//! their denominator, so every orbit is eventually periodic and detectable
//! by exact cycle search. On this substrate the finite-ω-limit test, the
//! two-cycles-cannot-share-a-point demonstration, and the clopen separator
//! construction all run with no numerical slack.
//!
//! "Transitive point" is replaced throughout by "δ-dense finite orbit": a
//! seed whose first `N` iterates are δ-dense in `[0,1]`. True transitivity
//! of a specific point is not finitely certifiable; δ is an explicit
//! parameter instead.

use crate::hyperspace::{
    boundary_element_witness, vietoris_closure_contains, vietoris_contains, HyperspaceError,
    Region, VietorisNbhd,
};
use crate::rational::{fmt_rat, rat, rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("point {0} lies outside [0,1]")]
    OutOfDomain(String),
    #[error("cycle cap {0} exceeded before the orbit of {1} closed up")]
    CapExceeded(u64, String),
    #[error("{0} is not a periodic orbit of the tent map")]
    NotAPeriodicOrbit(String),
    #[error("{point} already belongs to the orbit")]
    PointInOrbit { point: String },
    #[error("dense-orbit search exhausted: {tried} seeds, best density gap {best_gap}")]
    SearchExhausted { tried: u64, best_gap: String },
    #[error("no point of A is separated from B by more than 2*delta")]
    NoSeparatedPoint,
    #[error(transparent)]
    Hyperspace(#[from] HyperspaceError),
}

/// The tent map `x -> 2x` on `[0,1/2]`, `x -> 2-2x` on `[1/2,1]`, exact.
pub fn tent(x: &Rat) -> Result<Rat, IntervalError> {
    if x.is_negative() || *x > rat_int(1) {
        return Err(IntervalError::OutOfDomain(fmt_rat(x)));
    }
    let two = rat_int(2);
    Ok(if *x <= rat(1, 2) {
        &two * x
    } else {
        &two - &two * x
    })
}

/// Exact eventually-periodic data of a rational orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TentOrbit {
    pub seed: Rat,
    pub preperiod: u64,
    pub period: u64,
    /// The eventual cycle, starting at `T^preperiod(seed)`.
    pub cycle: Vec<Rat>,
}

/// Detects the exact preperiod and period by hashing iterates. The orbit of
/// a rational closes up within its denominator count of steps; `cap` guards
/// against misuse and is never guessed past.
pub fn eventual_period(x: &Rat, cap: u64) -> Result<TentOrbit, IntervalError> {
    let mut seen: HashMap<Rat, u64> = HashMap::new();
    let mut cur = x.clone();
    let mut step = 0u64;
    loop {
        if let Some(first) = seen.get(&cur) {
            let preperiod = *first;
            let period = step - first;
            let mut cycle = Vec::with_capacity(period as usize);
            let mut c = cur.clone();
            for _ in 0..period {
                cycle.push(c.clone());
                c = tent(&c)?;
            }
            return Ok(TentOrbit {
                seed: x.clone(),
                preperiod,
                period,
                cycle,
            });
        }
        if step > cap {
            return Err(IntervalError::CapExceeded(cap, fmt_rat(x)));
        }
        seen.insert(cur.clone(), step);
        cur = tent(&cur)?;
        step += 1;
    }
}

/// True iff the tent map permutes `points` in a single cycle.
pub fn is_periodic_orbit(points: &[Rat]) -> bool {
    if points.is_empty() {
        return false;
    }
    let set: std::collections::BTreeSet<&Rat> = points.iter().collect();
    if set.len() != points.len() {
        return false;
    }
    // Follow the orbit from any element; it must walk the whole set and
    // return.
    let start = points[0].clone();
    let mut cur = start.clone();
    let mut visited = 0usize;
    loop {
        let next = match tent(&cur) {
            Ok(v) => v,
            Err(_) => return false,
        };
        if !set.contains(&next) {
            return false;
        }
        visited += 1;
        if next == start {
            return visited == set.len();
        }
        if visited > set.len() {
            return false;
        }
        cur = next;
    }
}

/// A finite set is an ω-limit set exactly when it is a single periodic
/// orbit; the equivalence is used as the definition here.
pub fn is_finite_omega_limit(points: &[Rat]) -> bool {
    is_periodic_orbit(points)
}

/// Demonstration that no Vietoris neighborhood of a periodic orbit consists
/// of ω-limit sets: adjoining any extra point `y` to the orbit `B` breaks
/// the finite-ω-limit property (a k-cycle and a (k+1)-cycle cannot share a
/// point).
#[derive(Debug, Clone)]
pub struct InteriorEmptyReport {
    pub orbit: Vec<Rat>,
    pub extra: Rat,
    pub augmented_is_omega_limit: bool,
}

pub fn interior_empty_demo(orbit: &[Rat], y: &Rat) -> Result<InteriorEmptyReport, IntervalError> {
    if !is_periodic_orbit(orbit) {
        return Err(IntervalError::NotAPeriodicOrbit(format!(
            "[{}]",
            orbit.iter().map(fmt_rat).collect::<Vec<_>>().join(", ")
        )));
    }
    if orbit.contains(y) {
        return Err(IntervalError::PointInOrbit { point: fmt_rat(y) });
    }
    let mut augmented = orbit.to_vec();
    augmented.push(y.clone());
    Ok(InteriorEmptyReport {
        orbit: orbit.to_vec(),
        extra: y.clone(),
        augmented_is_omega_limit: is_finite_omega_limit(&augmented),
    })
}

/// δ-density of a finite set in `[0,1]`: first point within δ of 0, last
/// within δ of 1, consecutive gaps at most 2δ. Returns the worst gap margin
/// found (`<= 0` means δ-dense).
fn density_gap(points: &mut [Rat], delta: &Rat) -> Rat {
    points.sort();
    let two_delta = rat_int(2) * delta;
    let mut worst = &points[0] - delta;
    for w in points.windows(2) {
        let gap = &w[1] - &w[0] - &two_delta;
        if gap > worst {
            worst = gap;
        }
    }
    let end_gap = rat_int(1) - delta - points.last().expect("non-empty");
    if end_gap > worst {
        worst = end_gap;
    }
    worst
}

/// Searches for a seed whose first `n` tent iterates are δ-dense in `[0,1]`,
/// over pseudo-random rationals `p/q` with a large prime denominator,
/// optionally restricted to a subinterval. Deterministic given the RNG seed.
pub fn dense_orbit_search_in(
    delta: &Rat,
    n: u64,
    seeds: u64,
    rng_seed: u64,
    range: Option<(&Rat, &Rat)>,
) -> Result<Rat, IntervalError> {
    assert!(delta.is_positive());
    // A few large primes; the denominator stays fixed along the orbit, so
    // the state space is huge and orbits behave like generic doubling
    // orbits.
    const PRIMES: [u64; 6] = [
        999_983, 1_000_003, 1_000_033, 1_000_087, 1_000_099, 1_000_117,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut best_gap: Option<Rat> = None;
    for attempt in 0..seeds {
        let q = PRIMES[rng.random_range(0..PRIMES.len())];
        let p = rng.random_range(1..q);
        let mut seed = Rat::new(BigInt::from(p), BigInt::from(q));
        if let Some((lo, hi)) = range {
            // Rescale into the open subinterval.
            seed = lo + (hi - lo) * &seed;
        }
        let mut iterates = Vec::with_capacity(n as usize);
        let mut cur = seed.clone();
        for _ in 0..n {
            iterates.push(cur.clone());
            cur = tent(&cur)?;
        }
        let gap = density_gap(&mut iterates, delta);
        if !gap.is_positive() {
            return Ok(seed);
        }
        best_gap = Some(match best_gap {
            None => gap,
            Some(b) => b.min(gap),
        });
        let _ = attempt;
    }
    Err(IntervalError::SearchExhausted {
        tried: seeds,
        best_gap: best_gap.map(|g| fmt_rat(&g)).unwrap_or_default(),
    })
}

/// Unrestricted δ-dense orbit search.
pub fn dense_orbit_search(
    delta: &Rat,
    n: u64,
    seeds: u64,
    rng_seed: u64,
) -> Result<Rat, IntervalError> {
    dense_orbit_search_in(delta, n, seeds, rng_seed, None)
}

/// Interval region over the rationals, with symbolic closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRegion {
    pub lo: Rat,
    pub hi: Rat,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl IntervalRegion {
    pub fn describe(&self) -> String {
        format!(
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            fmt_rat(&self.lo),
            fmt_rat(&self.hi),
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

impl Region<Rat> for IntervalRegion {
    fn contains(&self, p: &Rat) -> bool {
        let above = if self.lo_closed {
            *p >= self.lo
        } else {
            *p > self.lo
        };
        let below = if self.hi_closed {
            *p <= self.hi
        } else {
            *p < self.hi
        };
        above && below
    }
    fn closure_contains(&self, p: &Rat) -> bool {
        *p >= self.lo && *p <= self.hi
    }
}

/// A sampled compact subset of `[0,1]` (an ω-limit approximation): exact
/// points plus the sampling resolution used for margin reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSample {
    pub label: String,
    pub points: Vec<Rat>,
    pub resolution: Rat,
}

impl OmegaSample {
    pub fn exact(label: impl Into<String>, points: Vec<Rat>) -> Self {
        OmegaSample {
            label: label.into(),
            points,
            resolution: Rat::zero(),
        }
    }
}

/// The clopen separator: a window around a point `p` of `A` away from `B`,
/// cut at two δ-dense-orbit points `r_1 < p < r_2`, with the outer
/// components `K_1 = [0, r_1)` and `K_2 = (r_2, 1]`. The Vietoris
/// neighborhood is built from the components `B` meets; its complement is
/// taken as the complement of the closure, so the two are disjoint by
/// construction.
#[derive(Debug, Clone)]
pub struct SeparatorPair {
    pub p: Rat,
    pub delta: Rat,
    pub window: (Rat, Rat),
    pub cut_points: [Rat; 2],
    pub components: Vec<IntervalRegion>,
    /// Indices (into `components`) of the members of the neighborhood.
    pub u_members: Vec<usize>,
}

impl SeparatorPair {
    pub fn u_nbhd(&self) -> VietorisNbhd<IntervalRegion> {
        VietorisNbhd::new(
            self.u_members
                .iter()
                .map(|i| self.components[*i].clone())
                .collect(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct DensityParams {
    pub delta: Rat,
    pub orbit_len: u64,
    pub seeds: u64,
    pub rng_seed: u64,
}

/// Builds and verifies a separator for two distinct sampled ω-limit sets.
/// Requires a point `p` of `A` at distance more than `2δ` from `B`; the cut
/// points are found by restricted dense-orbit search and re-verified to have
/// δ-dense orbits.
pub fn separation_construct(
    a: &OmegaSample,
    b: &OmegaSample,
    delta: &Rat,
    density: &DensityParams,
) -> Result<SeparatorPair, IntervalError> {
    assert!(delta.is_positive());
    let two_delta = rat_int(2) * delta;
    let p = a
        .points
        .iter()
        .find(|p| b.points.iter().all(|q| (*p - q).abs() > two_delta))
        .cloned()
        .ok_or(IntervalError::NoSeparatedPoint)?;

    let win_lo = (&p - delta).max(Rat::zero());
    let win_hi = (&p + delta).min(rat_int(1));
    let r1 = dense_orbit_search_in(
        &density.delta,
        density.orbit_len,
        density.seeds,
        density.rng_seed,
        Some((&win_lo, &p)),
    )?;
    let r2 = dense_orbit_search_in(
        &density.delta,
        density.orbit_len,
        density.seeds,
        density.rng_seed.wrapping_add(1),
        Some((&p, &win_hi)),
    )?;

    let k1 = IntervalRegion {
        lo: Rat::zero(),
        hi: r1.clone(),
        lo_closed: true,
        hi_closed: false,
    };
    let k2 = IntervalRegion {
        lo: r2.clone(),
        hi: rat_int(1),
        lo_closed: false,
        hi_closed: true,
    };
    let components = vec![k1, k2];
    let u_members: Vec<usize> = components
        .iter()
        .enumerate()
        .filter(|(_, k)| b.points.iter().any(|q| k.contains(q)))
        .map(|(i, _)| i)
        .collect();
    let sep = SeparatorPair {
        p: p.clone(),
        delta: delta.clone(),
        window: (win_lo, win_hi),
        cut_points: [r1, r2],
        components,
        u_members,
    };

    // Claim 1: B belongs to the neighborhood.
    let nbhd = sep.u_nbhd();
    if !vietoris_contains(&b.points, &nbhd) {
        return Err(IntervalError::Hyperspace(HyperspaceError::NotInBoundary));
    }
    // Claim 2: A lands in the complement of the closure.
    if vietoris_closure_contains(&a.points, &nbhd) {
        return Err(IntervalError::Hyperspace(HyperspaceError::NotInBoundary));
    }
    Ok(sep)
}

/// Classification of a sample against a separator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationClass {
    /// In the Vietoris neighborhood built from the components.
    InU,
    /// In the complement of its closure.
    InV,
    /// Within the sample's resolution of a cut point; the dichotomy is not
    /// asserted here.
    Margin,
}

#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub classifications: Vec<(String, SeparationClass)>,
    pub in_u: usize,
    pub in_v: usize,
    pub margin: usize,
}

/// Classifies samples into the neighborhood, its complement, or the
/// resolution margin around the cut points. Samples straddling a cut point
/// surface as boundary elements: the witness scan pins the cut point they
/// contain.
pub fn separation_verify(sep: &SeparatorPair, samples: &[OmegaSample]) -> SeparationReport {
    let nbhd = sep.u_nbhd();
    let mut classifications = Vec::with_capacity(samples.len());
    let (mut in_u, mut in_v, mut margin) = (0usize, 0usize, 0usize);
    for s in samples {
        let near_cut = s
            .points
            .iter()
            .any(|x| sep.cut_points.iter().any(|r| (x - r).abs() <= s.resolution));
        let class = if near_cut {
            SeparationClass::Margin
        } else if vietoris_contains(&s.points, &nbhd) {
            SeparationClass::InU
        } else if !vietoris_closure_contains(&s.points, &nbhd) {
            SeparationClass::InV
        } else {
            // In the closure but not the interior: contains a cut point
            // exactly. Confirm via the boundary witness and flag as margin.
            let witness = boundary_element_witness(&s.points, &nbhd);
            debug_assert!(witness.is_ok());
            SeparationClass::Margin
        };
        match class {
            SeparationClass::InU => in_u += 1,
            SeparationClass::InV => in_v += 1,
            SeparationClass::Margin => margin += 1,
        }
        classifications.push((s.label.clone(), class));
    }
    SeparationReport {
        classifications,
        in_u,
        in_v,
        margin,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tent_exact_values() {
        assert_eq!(tent(&rat(1, 2)).unwrap(), rat_int(1));
        assert_eq!(tent(&rat(2, 3)).unwrap(), rat(2, 3));
        assert_eq!(tent(&rat(2, 5)).unwrap(), rat(4, 5));
        assert_eq!(tent(&Rat::zero()).unwrap(), Rat::zero());
        assert!(tent(&rat(3, 2)).is_err());
        assert!(tent(&rat(-1, 2)).is_err());
    }

    #[test]
    fn eventual_period_examples() {
        let fixed = eventual_period(&rat(2, 3), 10).unwrap();
        assert_eq!((fixed.preperiod, fixed.period), (0, 1));
        assert_eq!(fixed.cycle, vec![rat(2, 3)]);

        let two_cycle = eventual_period(&rat(2, 5), 10).unwrap();
        assert_eq!((two_cycle.preperiod, two_cycle.period), (0, 2));
        assert_eq!(two_cycle.cycle, vec![rat(2, 5), rat(4, 5)]);

        let pre = eventual_period(&rat(1, 3), 10).unwrap();
        assert_eq!((pre.preperiod, pre.period), (1, 1));
        assert_eq!(pre.cycle, vec![rat(2, 3)]);
    }

    #[test]
    fn eventual_period_respects_cap() {
        // Denominator 997 forces a long transient/cycle; a tiny cap trips.
        assert!(matches!(
            eventual_period(&rat(1, 997), 5),
            Err(IntervalError::CapExceeded(5, _))
        ));
    }

    #[test]
    fn eventual_period_closes_exactly() {
        for q in [7i64, 97, 101, 1001] {
            for p in [1i64, 3, 5] {
                let orbit = eventual_period(&rat(p, q), 3000).unwrap();
                // T^(pre+period)(seed) == T^pre(seed), exactly.
                let mut x = rat(p, q);
                for _ in 0..orbit.preperiod {
                    x = tent(&x).unwrap();
                }
                let mut y = x.clone();
                for _ in 0..orbit.period {
                    y = tent(&y).unwrap();
                }
                assert_eq!(x, y);
            }
        }
    }

    #[test]
    fn periodic_orbit_checks() {
        assert!(is_periodic_orbit(&[rat(2, 3)]));
        assert!(is_periodic_orbit(&[rat(2, 5), rat(4, 5)]));
        assert!(!is_periodic_orbit(&[rat(1, 3)]));
        assert!(!is_periodic_orbit(&[]));
        // A union of two cycles is not a single cycle.
        assert!(!is_periodic_orbit(&[rat(2, 3), rat(2, 5), rat(4, 5)]));
        assert!(is_finite_omega_limit(&[rat(2, 3)]));
        assert!(!is_finite_omega_limit(&[rat(1, 3)]));
    }

    #[test]
    fn interior_empty_demo_examples() {
        let r = interior_empty_demo(&[rat(2, 3)], &rat(1, 3)).unwrap();
        assert!(!r.augmented_is_omega_limit);

        let r = interior_empty_demo(&[rat(2, 5), rat(4, 5)], &rat(1, 2)).unwrap();
        assert!(!r.augmented_is_omega_limit);

        assert!(matches!(
            interior_empty_demo(&[rat(2, 3)], &rat(2, 3)),
            Err(IntervalError::PointInOrbit { .. })
        ));
        assert!(interior_empty_demo(&[rat(1, 3)], &rat(1, 2)).is_err());
    }

    #[test]
    fn dense_orbit_search_trivial_delta() {
        // delta = 1 accepts any seed immediately.
        assert!(dense_orbit_search(&rat_int(1), 2, 1, 7).is_ok());
    }

    #[test]
    fn dense_orbit_search_finds_dense_seed() {
        let seed = dense_orbit_search(&rat(1, 32), 10_000, 16, 7).unwrap();
        // Re-verify the density claim independently.
        let mut pts = Vec::new();
        let mut cur = seed.clone();
        for _ in 0..10_000 {
            pts.push(cur.clone());
            cur = tent(&cur).unwrap();
        }
        assert!(!density_gap(&mut pts, &rat(1, 32)).is_positive());
    }

    #[test]
    fn dense_orbit_search_exhausts_at_tiny_n() {
        // Two iterates cannot be 1/2-dense... actually they can; use 1/8.
        assert!(matches!(
            dense_orbit_search(&rat(1, 8), 2, 4, 7),
            Err(IntervalError::SearchExhausted { .. })
        ));
    }

    #[test]
    fn finite_omega_limit_equivalence_on_random_seeds() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let q = rng.random_range(2..=700u64);
            let p = rng.random_range(1..q);
            let x = Rat::new(BigInt::from(p), BigInt::from(q));
            let orbit = eventual_period(&x, q + 10).unwrap();
            // The exact ω-limit of a rational seed is its eventual cycle.
            assert!(is_finite_omega_limit(&orbit.cycle), "{}", fmt_rat(&x));
            // Any strict enlargement stops being one.
            let yq = rng.random_range(2..=700u64);
            let yp = rng.random_range(1..yq);
            let y = Rat::new(BigInt::from(yp), BigInt::from(yq));
            if !orbit.cycle.contains(&y) {
                let mut bigger = orbit.cycle.clone();
                bigger.push(y);
                assert!(!is_finite_omega_limit(&bigger));
            }
        }
    }

    fn demo_density() -> DensityParams {
        DensityParams {
            delta: rat(1, 32),
            orbit_len: 6000,
            seeds: 24,
            rng_seed: 99,
        }
    }

    #[test]
    fn separation_fixed_point_vs_two_cycle() {
        let a = OmegaSample::exact("fixed", vec![rat(2, 3)]);
        let b = OmegaSample::exact("cycle", vec![rat(2, 5), rat(4, 5)]);
        let sep = separation_construct(&a, &b, &rat(1, 20), &demo_density()).unwrap();
        assert_eq!(sep.p, rat(2, 3));
        assert!(sep.cut_points[0] < rat(2, 3) && sep.cut_points[1] > rat(2, 3));
        // B meets both outer components here.
        assert_eq!(sep.u_members, vec![0, 1]);

        let report = separation_verify(&sep, &[a, b]);
        assert_eq!(report.in_u, 1);
        assert_eq!(report.in_v, 1);
        assert_eq!(report.margin, 0);
        assert_eq!(report.classifications[0].1, SeparationClass::InV);
        assert_eq!(report.classifications[1].1, SeparationClass::InU);
    }

    #[test]
    fn separation_of_dense_sample_from_fixed_point() {
        // A is a dense-orbit sample, B the fixed point; the separated point
        // is found inside A away from the window around 2/3.
        let seed = dense_orbit_search(&rat(1, 16), 400, 16, 5).unwrap();
        let mut pts = Vec::new();
        let mut cur = seed.clone();
        for _ in 0..400 {
            pts.push(cur.clone());
            cur = tent(&cur).unwrap();
        }
        let a = OmegaSample::exact("dense", pts);
        let b = OmegaSample::exact("fixed", vec![rat(2, 3)]);
        let sep = separation_construct(&a, &b, &rat(1, 20), &demo_density()).unwrap();
        let report = separation_verify(&sep, &[a, b]);
        assert_eq!(report.margin, 0);
        assert_eq!(report.classifications[0].1, SeparationClass::InV);
        assert_eq!(report.classifications[1].1, SeparationClass::InU);
    }

    #[test]
    fn separation_requires_distinct_sets() {
        let a = OmegaSample::exact("a", vec![rat(2, 3)]);
        assert!(matches!(
            separation_construct(&a, &a, &rat(1, 20), &demo_density()),
            Err(IntervalError::NoSeparatedPoint)
        ));
    }

    #[test]
    fn separation_cut_points_have_dense_orbits() {
        let a = OmegaSample::exact("fixed", vec![rat(2, 3)]);
        let b = OmegaSample::exact("cycle", vec![rat(2, 5), rat(4, 5)]);
        let density = demo_density();
        let sep = separation_construct(&a, &b, &rat(1, 20), &density).unwrap();
        for r in &sep.cut_points {
            let mut pts = Vec::new();
            let mut cur = r.clone();
            for _ in 0..density.orbit_len {
                pts.push(cur.clone());
                cur = tent(&cur).unwrap();
            }
            assert!(
                !density_gap(&mut pts, &density.delta).is_positive(),
                "cut point {} lost its dense orbit",
                fmt_rat(r)
            );
        }
    }

    #[test]
    fn separation_margin_flags_straddling_sample() {
        let a = OmegaSample::exact("fixed", vec![rat(2, 3)]);
        let b = OmegaSample::exact("cycle", vec![rat(2, 5), rat(4, 5)]);
        let sep = separation_construct(&a, &b, &rat(1, 20), &demo_density()).unwrap();
        // A sample containing a cut point exactly is flagged, not forced.
        let straddle = OmegaSample::exact(
            "straddle",
            vec![rat(1, 100), sep.cut_points[0].clone(), rat(99, 100)],
        );
        let report = separation_verify(&sep, &[straddle]);
        assert_eq!(report.margin, 1);
        // A blurry sample near a cut point is margin too.
        let mut blurry = OmegaSample::exact("blurry", vec![&sep.cut_points[1] + rat(1, 1_000_000)]);
        blurry.resolution = rat(1, 100_000);
        let report = separation_verify(&sep, &[blurry]);
        assert_eq!(report.margin, 1);
    }

    #[test]
    fn separator_never_double_classifies() {
        let a = OmegaSample::exact("fixed", vec![rat(2, 3)]);
        let b = OmegaSample::exact("cycle", vec![rat(2, 5), rat(4, 5)]);
        let sep = separation_construct(&a, &b, &rat(1, 20), &demo_density()).unwrap();
        let nbhd = sep.u_nbhd();
        // Structural disjointness: membership in U implies membership in the
        // closure, so "in V" (outside the closure) can never co-occur.
        for sample in [
            vec![rat(1, 10)],
            vec![rat(9, 10)],
            vec![rat(1, 10), rat(9, 10)],
            vec![rat(2, 3)],
            vec![rat(1, 10), rat(2, 3)],
        ] {
            let in_u = vietoris_contains(&sample, &nbhd);
            let in_v = !vietoris_closure_contains(&sample, &nbhd);
            assert!(!(in_u && in_v));
        }
    }
}
