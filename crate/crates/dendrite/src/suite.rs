//! The verification battery behind `dendrite suite` and the acceptance
//! integration tests: ten self-contained criteria, each with pinned
//! parameters, fixed seeds, and an exact or explicitly-toleranced verdict.
//! Stated time budgets are reported, not asserted; verdicts depend only on
//! computed values.

use crate::dyadics::Dyadic;
use crate::dyadics::{
    gamma_cap_kth, gamma_cap_values, gamma_values, index_to_dyadic, omega_of_sequence_approx,
};
use crate::dynamics::{
    connecting_point, mixing_threshold, mixing_window, verify_omega_equals_dr, Cylinder,
    TimedWitness,
};
use crate::geometry::PathPoint;
use crate::hyperspace::{arc_profile, lemma_trials};
use crate::interval::{
    eventual_period, interior_empty_demo, is_finite_omega_limit, separation_construct,
    separation_verify, tent, DensityParams, OmegaSample, SeparationClass,
};
use crate::itinerary::{apply_f, increment_head, iterate_f, time_to_origin, Itinerary, Step};
use crate::par;
use crate::rational::{fmt_rat, rat, rat_int, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:2} {:<24} {} ({:.2?}) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed,
            self.details
        )
    }
}

fn run(id: u32, name: &'static str, body: impl FnOnce() -> (bool, String)) -> CriterionResult {
    let start = Instant::now();
    let (passed, details) = body();
    CriterionResult {
        id,
        name,
        passed,
        details,
        elapsed: start.elapsed(),
    }
}

/// Criterion 1: the enumeration reproduces the canonical first eight
/// dyadics exactly.
pub fn criterion_enumeration() -> CriterionResult {
    run(1, "enumeration-fidelity", || {
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
        let ok = expect
            .iter()
            .enumerate()
            .all(|(i, e)| index_to_dyadic(i as u64 + 1).value() == *e);
        (ok, "first eight elements exact".into())
    })
}

/// Criterion 2: grid-level ω-limit sets of the enumeration and its caps.
pub fn criterion_sequence_omega() -> CriterionResult {
    run(2, "sequence-omega", || {
        let step = rat(1, 64);
        let full = match omega_of_sequence_approx(gamma_values(), 4096, &step) {
            Ok(a) => a,
            Err(e) => return (false, e.to_string()),
        };
        if full.hit_grid.len() != 65 {
            return (
                false,
                format!(
                    "full enumeration marked {} of 65 grid points",
                    full.hit_grid.len()
                ),
            );
        }
        for r in [rat(1, 4), rat(1, 2), rat(3, 4)] {
            let approx = match omega_of_sequence_approx(gamma_cap_values(r.clone()), 4096, &step) {
                Ok(a) => a,
                Err(e) => return (false, e.to_string()),
            };
            let mut i = 0i64;
            loop {
                let gp = &step * rat_int(i);
                if gp > rat_int(1) {
                    break;
                }
                let marked = approx.contains(&gp);
                if gp <= r && !marked {
                    return (
                        false,
                        format!("r={}: grid point {} unmarked", fmt_rat(&r), fmt_rat(&gp)),
                    );
                }
                if gp > r.clone() + &step && marked {
                    return (
                        false,
                        format!("r={}: marked past the cap at {}", fmt_rat(&r), fmt_rat(&gp)),
                    );
                }
                i += 1;
            }
        }
        (true, "full cover and sharp caps at grid scale".into())
    })
}

fn random_dyadic<R: Rng>(rng: &mut R, max_level: u32) -> Dyadic {
    let l = rng.random_range(1..=max_level);
    let p = 2 * rng.random_range(0..(1u64 << (l - 1))) + 1;
    Dyadic::new(p, l).expect("odd numerator below 2^l")
}

fn random_finite<R: Rng>(
    rng: &mut R,
    max_pairs: usize,
    max_branch: u32,
    max_level: u32,
) -> Itinerary {
    let pairs = rng.random_range(0..=max_pairs);
    let steps: Vec<Step> = (0..pairs)
        .map(|_| {
            Step::new(
                rng.random_range(0..=max_branch),
                random_dyadic(rng, max_level),
            )
        })
        .collect();
    let den = rng.random_range(2..=64u64);
    let num = rng.random_range(1..=den);
    Itinerary::finite(
        steps,
        rng.random_range(0..=max_branch),
        Rat::new(BigInt::from(num), BigInt::from(den)),
    )
    .expect("parameter lies in (0,1]")
}

/// Criterion 3: rewrite soundness over 10^4 random finite itineraries.
pub fn criterion_rewrite_soundness() -> CriterionResult {
    run(3, "rewrite-soundness", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let samples: Vec<Itinerary> = (0..10_000)
            .map(|_| random_finite(&mut rng, 4, 20, 6))
            .collect();
        let ok = par::all(&samples, |it| {
            // Forward-iteration count, independent of time_to_origin's loop.
            let mut cur = it.clone();
            let mut count = 0u64;
            while !cur.is_origin() {
                cur = apply_f(&cur);
                count += 1;
                if count > 1_000_000 {
                    return false;
                }
            }
            let Ok(reported) = time_to_origin(it) else {
                return false;
            };
            if reported != count {
                return false;
            }
            // Closed form: every pair costs branch + 1 + level, the terminal
            // beam costs branch + 1.
            let (steps, tb) = match it {
                Itinerary::Finite {
                    steps,
                    terminal_branch,
                    ..
                } => (steps, *terminal_branch),
                _ => unreachable!("samples are finite"),
            };
            let closed: u64 = steps
                .iter()
                .map(|s| s.branch as u64 + 1 + s.dyadic.level() as u64)
                .sum::<u64>()
                + tb as u64
                + 1;
            if closed != count {
                return false;
            }
            // Head-shift bijection round trip, both directions.
            let up = increment_head(it);
            if apply_f(&up) != *it {
                return false;
            }
            let down = apply_f(&up);
            increment_head(&down) == up
        });
        (
            ok,
            "10^4 itineraries: origin times and head-shift bijection exact".into(),
        )
    })
}

/// Criterion 4: the return-time recurrence of the special points.
pub fn criterion_return_times() -> CriterionResult {
    run(4, "return-time-law", || {
        for r in [rat(1, 2), rat_int(1)] {
            let times = match crate::itinerary::return_times(&r, 1001) {
                Ok(t) => t,
                Err(e) => return (false, e.to_string()),
            };
            // m_{k+1} - m_k == level(b_k) + 1, with m_1 = 0.
            let mut prev = 0u64;
            for (i, m) in times.iter().enumerate() {
                let b = gamma_cap_kth(&r, i as u64 + 1).expect("cap in range");
                if m - prev != b.level() as u64 + 1 {
                    return (
                        false,
                        format!("r={}: gap at k={} is {}", fmt_rat(&r), i + 1, m - prev),
                    );
                }
                prev = *m;
            }
        }
        (true, "recurrence exact to k = 10^3 at r = 1/2 and 1".into())
    })
}

/// Criterion 5: the ω-limit of the special point matches D_r at the pinned
/// run parameters, and the residual is monotone in the window length up to
/// twice the tail tolerance.
pub fn criterion_omega_equals_dr() -> CriterionResult {
    run(5, "omega-equals-dr", || {
        let eps = rat(1, 64);
        let tail_tol = rat(1, 256);
        let budget = rat(1, 16);
        let mut details = Vec::new();
        for r in [rat(1, 4), rat(1, 2), rat(3, 4), rat_int(1)] {
            let short = match verify_omega_equals_dr(&r, 1000, 20_000, &eps, 16, &tail_tol) {
                Ok(v) => v,
                Err(e) => return (false, e.to_string()),
            };
            if short > budget {
                return (
                    false,
                    format!(
                        "r={}: residual {} exceeds 1/16",
                        fmt_rat(&r),
                        fmt_rat(&short)
                    ),
                );
            }
            let long = match verify_omega_equals_dr(&r, 1000, 40_000, &eps, 16, &tail_tol) {
                Ok(v) => v,
                Err(e) => return (false, e.to_string()),
            };
            if long > &short + rat_int(2) * &tail_tol {
                return (
                    false,
                    format!(
                        "r={}: residual grew from {} to {}",
                        fmt_rat(&r),
                        fmt_rat(&short),
                        fmt_rat(&long)
                    ),
                );
            }
            details.push(format!("r={}: {}", fmt_rat(&r), fmt_rat(&short)));
        }
        (true, details.join("; "))
    })
}

/// Criterion 6: the arc profile obeys `H = |r - s|` within resolutions.
pub fn criterion_arc_profile() -> CriterionResult {
    run(6, "arc-profile", || {
        let grid: Vec<Rat> = (0..=8).map(|i| rat(i, 8)).collect();
        let profile = match arc_profile(&grid, &rat(1, 64), 16) {
            Ok(p) => p,
            Err(e) => return (false, e.to_string()),
        };
        let mut worst = Rat::zero();
        for i in 0..grid.len() {
            for j in 0..grid.len() {
                let expected = (&grid[i] - &grid[j]).abs();
                let err = (&profile.matrix[i][j] - &expected).abs();
                let budget = &profile.resolutions[i] + &profile.resolutions[j];
                if err > budget {
                    return (
                        false,
                        format!(
                            "H({},{}) = {} strays {} from |r-s|",
                            fmt_rat(&grid[i]),
                            fmt_rat(&grid[j]),
                            fmt_rat(&profile.matrix[i][j]),
                            fmt_rat(&err)
                        ),
                    );
                }
                if err > worst {
                    worst = err;
                }
            }
        }
        (true, format!("worst deviation {}", fmt_rat(&worst)))
    })
}

/// Criterion 7: the closure lemma on 100 random finite metric spaces, plus
/// re-checked boundary witnesses on every instance encountered.
pub fn criterion_lemma_oracles() -> CriterionResult {
    run(7, "hyperspace-lemmas", || {
        let trials = match lemma_trials(100, 7) {
            Ok(t) => t,
            Err(e) => return (false, e.to_string()),
        };
        if !trials.failures.is_empty() {
            return (
                false,
                format!(
                    "{} failures, first: trial {} ({})",
                    trials.failures.len(),
                    trials.failures[0].trial,
                    trials.failures[0].kind
                ),
            );
        }
        if trials.witness_instances == 0 {
            return (false, "no boundary instances encountered".into());
        }
        (
            true,
            format!(
                "100 closure trials clean; {} boundary witnesses re-checked",
                trials.witness_instances
            ),
        )
    })
}

fn random_cylinder<R: Rng>(rng: &mut R) -> Cylinder {
    let pairs = rng.random_range(0..=2usize);
    let prefix: Vec<Step> = (0..pairs)
        .map(|_| Step::new(rng.random_range(0..=4), random_dyadic(rng, 3)))
        .collect();
    // Interval of width >= 1/4 so low dyadic levels stay available.
    let lo = rat(rng.random_range(1..=8), 16);
    let hi = &lo + rat(rng.random_range(4..=6), 16);
    Cylinder::new(prefix, rng.random_range(0..=4), lo, hi.min(rat(15, 16)))
        .expect("constructed interval is valid")
}

/// Criterion 8: transitivity and mixing witnesses, all forward-verified.
pub fn criterion_transitivity() -> CriterionResult {
    run(8, "transitivity-witnesses", || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let pairs: Vec<(Cylinder, Cylinder)> = (0..50)
            .map(|_| (random_cylinder(&mut rng), random_cylinder(&mut rng)))
            .collect();
        let ok = par::all(&pairs, |(u, v)| {
            let Ok(w) = connecting_point(u, v) else {
                return false;
            };
            // Re-verify independently of the constructor.
            if !u.contains(&w.z) || !v.contains(&iterate_f(&w.z, w.n)) {
                return false;
            }
            let threshold = mixing_threshold(u);
            let Ok(report) = mixing_window(u, v, threshold, 10) else {
                return false;
            };
            if report.verified != 10 {
                return false;
            }
            report.witnesses.iter().all(|tw| match tw {
                TimedWitness::Verified(w) => u.contains(&w.z) && v.contains(&iterate_f(&w.z, w.n)),
                TimedWitness::Unreachable { .. } => false,
            })
        });
        (
            ok,
            "50 cylinder pairs: connecting points and 10-step mixing windows verified".into(),
        )
    })
}

/// Criterion 9: the tent-map battery.
pub fn criterion_tent_suite() -> CriterionResult {
    run(9, "tent-map-suite", || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        // Exact eventual periodicity for 100 seeded rational seeds.
        for _ in 0..100 {
            let q = rng.random_range(2..=2000u64);
            let p = rng.random_range(0..=q);
            let x = Rat::new(BigInt::from(p), BigInt::from(q));
            let orbit = match eventual_period(&x, q + 10) {
                Ok(o) => o,
                Err(e) => return (false, e.to_string()),
            };
            // Exactness re-check.
            let mut a = x.clone();
            for _ in 0..orbit.preperiod {
                a = tent(&a).expect("orbit stays in [0,1]");
            }
            let mut b = a.clone();
            for _ in 0..orbit.period {
                b = tent(&b).expect("orbit stays in [0,1]");
            }
            if a != b {
                return (false, format!("orbit of {} did not close", fmt_rat(&x)));
            }
        }
        // Fixtures.
        if !is_finite_omega_limit(&[rat(2, 3)])
            || !is_finite_omega_limit(&[rat(2, 5), rat(4, 5)])
            || is_finite_omega_limit(&[rat(1, 3)])
        {
            return (false, "finite ω-limit fixtures failed".into());
        }
        // 20 seeded (orbit, extra point) rejections.
        let mut demos = 0;
        while demos < 20 {
            let q = rng.random_range(3..=500u64);
            let p = rng.random_range(1..q);
            let x = Rat::new(BigInt::from(p), BigInt::from(q));
            let orbit = eventual_period(&x, q + 10).expect("cap covers the denominator");
            let yq = rng.random_range(2..=500u64);
            let yp = rng.random_range(1..yq);
            let y = Rat::new(BigInt::from(yp), BigInt::from(yq));
            if orbit.cycle.contains(&y) {
                continue;
            }
            match interior_empty_demo(&orbit.cycle, &y) {
                Ok(report) => {
                    if report.augmented_is_omega_limit {
                        return (
                            false,
                            format!(
                                "augmented cycle of {} plus {} was accepted",
                                fmt_rat(&x),
                                fmt_rat(&y)
                            ),
                        );
                    }
                }
                Err(e) => return (false, e.to_string()),
            }
            demos += 1;
        }
        // Separator construction and classification of 20 sampled ω-sets.
        let a = OmegaSample::exact("fixed[2/3]", vec![rat(2, 3)]);
        let b = OmegaSample::exact("cycle[2/5,4/5]", vec![rat(2, 5), rat(4, 5)]);
        let density = DensityParams {
            delta: rat(1, 32),
            orbit_len: 6000,
            seeds: 24,
            rng_seed: 909,
        };
        let sep = match separation_construct(&a, &b, &rat(1, 20), &density) {
            Ok(s) => s,
            Err(e) => return (false, format!("separator construction failed: {e}")),
        };
        let mut samples = Vec::new();
        while samples.len() < 20 {
            let q = rng.random_range(3..=400u64);
            let p = rng.random_range(1..q);
            let x = Rat::new(BigInt::from(p), BigInt::from(q));
            let orbit = eventual_period(&x, q + 10).expect("cap covers the denominator");
            samples.push(OmegaSample::exact(
                format!("omega[{}]", fmt_rat(&x)),
                orbit.cycle,
            ));
        }
        let report = separation_verify(&sep, &samples);
        let classified = report.in_u + report.in_v;
        let ok = classified * 20 >= samples.len() * 19;
        for (label, class) in &report.classifications {
            if *class == SeparationClass::Margin {
                continue;
            }
            let _ = label;
        }
        (
            ok,
            format!(
                "orbits exact; {} of {} samples classified ({} margin)",
                classified,
                samples.len(),
                report.margin
            ),
        )
    })
}

/// Criterion 10: metric axioms for the intrinsic distance, exactly.
pub fn criterion_metric_axioms() -> CriterionResult {
    run(10, "metric-axioms", || {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let triples: Vec<[Itinerary; 3]> = (0..1000)
            .map(|_| {
                [
                    random_finite(&mut rng, 3, 8, 5),
                    random_finite(&mut rng, 3, 8, 5),
                    random_finite(&mut rng, 3, 8, 5),
                ]
            })
            .collect();
        let tol = rat(1, 256); // irrelevant: all inputs finite
        let ok = par::all(&triples, |[a, b, c]| {
            let pa = PathPoint::from_itinerary(a, &tol).expect("finite paths always resolve");
            let pb = PathPoint::from_itinerary(b, &tol).expect("finite paths always resolve");
            let pc = PathPoint::from_itinerary(c, &tol).expect("finite paths always resolve");
            let (ab, ba) = (pa.distance(&pb), pb.distance(&pa));
            if ab != ba {
                return false;
            }
            if (ab.is_zero()) != (a == b) {
                return false;
            }
            let (bc, ac) = (pb.distance(&pc), pa.distance(&pc));
            ac <= &ab + &bc && !pa.distance(&pa).is_positive()
        });
        (
            ok,
            "10^3 triples: symmetry, identity, triangle inequality exact".into(),
        )
    })
}

/// Runs the whole battery in criterion order.
pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_enumeration(),
        criterion_sequence_omega(),
        criterion_rewrite_soundness(),
        criterion_return_times(),
        criterion_omega_equals_dr(),
        criterion_arc_profile(),
        criterion_lemma_oracles(),
        criterion_transitivity(),
        criterion_tent_suite(),
        criterion_metric_axioms(),
    ]
}
