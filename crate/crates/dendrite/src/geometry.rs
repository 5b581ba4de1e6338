//! Metric realization of the dendrite.
//!
//! The scheme is all powers of two: top-level beams have lengths
//! `L_0 = L_1 = 1`, `L_j = 2^(1-j)` for `j >= 2`, and a star hanging at a
//! level-`l` dyadic of a beam of length `Λ` is scaled by `2^-(l+2)`. That
//! factor is strictly less than half the arc gap `Λ·2^-l` to the nearest
//! dyadic of level `<= l`, so sibling subtrees are metrically disjoint and
//! every tail bound is a closed-form geometric series.
//!
//! The canonical metric is the intrinsic (tree-geodesic) one, computed
//! exactly from itineraries. The planar embedding exists for rendering only:
//! it draws child stars slightly smaller than their intrinsic scale so that
//! segments at any truncation stay disjoint, which keeps Euclidean distances
//! at or below intrinsic ones.

use crate::itinerary::{Itinerary, Step};
use crate::par;
use crate::rational::{fmt_rat, pow2, rat_int, Rat};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("certified resolution {0} exceeds 1; the net is useless")]
    UselessNet(String),
    #[error("tolerance must be positive when lazy itineraries are involved")]
    NonPositiveTolerance,
    #[error("r must lie in [0,1], got {0}")]
    ROutOfRange(String),
}

/// Base length of top-level beam `j`.
pub fn beam_base_length(j: u32) -> Rat {
    if j <= 1 {
        rat_int(1)
    } else {
        pow2(1 - j as i64)
    }
}

/// Scale multiplier contributed by a star at a level-`l` dyadic.
pub fn star_scale_factor(level: u32) -> Rat {
    pow2(-(level as i64 + 2))
}

/// Exact length of the beam addressed by `(prefix, terminal_branch)`:
/// each star entry multiplies the scale by `L_branch · 2^-(level+2)`, and the
/// terminal beam contributes `L_terminal`.
pub fn beam_length(prefix: &[Step], terminal_branch: u32) -> Rat {
    let mut scale = rat_int(1);
    for step in prefix {
        scale *= beam_base_length(step.branch) * star_scale_factor(step.dyadic.level());
    }
    scale * beam_base_length(terminal_branch)
}

/// Exact upper bound on the intrinsic diameter of the set of points whose
/// itinerary extends `(prefix, terminal_branch)`. The geometric series of
/// star scales sums to at most `8/7` of the beam length, so `4·length`
/// dominates twice the subtree radius.
pub fn subtree_diameter_bound(prefix: &[Step], terminal_branch: u32) -> Rat {
    rat_int(4) * beam_length(prefix, terminal_branch)
}

// ---------------------------------------------------------------------------
// Root paths and the intrinsic metric
// ---------------------------------------------------------------------------

/// One segment of the walk from the origin to a point: traverse the beam
/// `branch` (of exact length `len`) up to parameter `exit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSeg {
    pub branch: u32,
    pub exit: Rat,
    pub len: Rat,
}

/// The walk from the origin to a point, with cached suffix arc lengths.
/// `suffix[i]` is the arc length of the walk from the start of segment `i`
/// to the point, so `suffix[0]` is the distance to the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPoint {
    pub segs: Vec<PathSeg>,
    pub suffix: Vec<Rat>,
}

impl PathPoint {
    /// Resolves an itinerary into its root path. Lazy itineraries are
    /// truncated at the first star whose subtree diameter bound drops below
    /// `tol`; the path then ends at that star center, within `tol` of the
    /// true point.
    pub fn from_itinerary(it: &Itinerary, tol: &Rat) -> Result<PathPoint, GeometryError> {
        let mut segs: Vec<PathSeg> = Vec::new();
        let mut scale = rat_int(1);
        let push_pair = |segs: &mut Vec<PathSeg>, scale: &mut Rat, step: &Step| {
            let len = &*scale * beam_base_length(step.branch);
            segs.push(PathSeg {
                branch: step.branch,
                exit: step.dyadic.value(),
                len: len.clone(),
            });
            *scale = len * star_scale_factor(step.dyadic.level());
        };
        match it {
            Itinerary::Origin => {}
            Itinerary::Finite {
                steps,
                terminal_branch,
                param,
            } => {
                for step in steps {
                    push_pair(&mut segs, &mut scale, step);
                }
                let len = &scale * beam_base_length(*terminal_branch);
                segs.push(PathSeg {
                    branch: *terminal_branch,
                    exit: param.clone(),
                    len,
                });
            }
            Itinerary::Lazy {
                steps,
                terminal_branch,
                tail,
            } => {
                if !tol.is_positive() {
                    return Err(GeometryError::NonPositiveTolerance);
                }
                for step in steps {
                    push_pair(&mut segs, &mut scale, step);
                    if rat_int(4) * &scale < *tol {
                        return Ok(PathPoint::from_segs(segs));
                    }
                }
                // Materialize tail pairs; the first pairs the explicit
                // terminal branch with the tail's first dyadic.
                let mut tail = tail.clone();
                let mut branch = *terminal_branch;
                loop {
                    let dyadic = tail.head_dyadic();
                    push_pair(&mut segs, &mut scale, &Step::new(branch, dyadic));
                    if rat_int(4) * &scale < *tol {
                        return Ok(PathPoint::from_segs(segs));
                    }
                    tail = tail.advanced();
                    branch = 0;
                }
            }
        }
        Ok(PathPoint::from_segs(segs))
    }

    fn from_segs(segs: Vec<PathSeg>) -> PathPoint {
        let mut suffix = vec![Rat::zero(); segs.len() + 1];
        for i in (0..segs.len()).rev() {
            suffix[i] = &segs[i].exit * &segs[i].len + &suffix[i + 1];
        }
        PathPoint { segs, suffix }
    }

    /// Arc distance to the origin.
    pub fn dist_to_origin(&self) -> &Rat {
        &self.suffix[0]
    }

    /// Branch index of the first segment, if any.
    pub fn first_branch(&self) -> Option<u32> {
        self.segs.first().map(|s| s.branch)
    }

    /// Exact arc length of the unique path between the two points: walk the
    /// common address chain, then sum both dangling suffixes (plus the
    /// in-beam gap when the walks part ways along a shared beam).
    pub fn distance(&self, other: &PathPoint) -> Rat {
        let (x, y) = (self, other);
        let mut i = 0;
        while i < x.segs.len() && i < y.segs.len() {
            let (sx, sy) = (&x.segs[i], &y.segs[i]);
            if sx.branch != sy.branch {
                return &x.suffix[i] + &y.suffix[i];
            }
            if sx.exit != sy.exit {
                return (&sx.exit - &sy.exit).abs() * &sx.len + &x.suffix[i + 1] + &y.suffix[i + 1];
            }
            i += 1;
        }
        if i < y.segs.len() {
            return y.suffix[i].clone();
        }
        if i < x.segs.len() {
            return x.suffix[i].clone();
        }
        Rat::zero()
    }
}

/// Exact intrinsic distance between two points given by itineraries.
/// `tol` only matters when a lazy itinerary must be truncated; the result is
/// then within `tol` of the true distance. Finite inputs are exact.
pub fn intrinsic_distance(a: &Itinerary, b: &Itinerary, tol: &Rat) -> Result<Rat, GeometryError> {
    let pa = PathPoint::from_itinerary(a, tol)?;
    let pb = PathPoint::from_itinerary(b, tol)?;
    Ok(pa.distance(&pb))
}

// ---------------------------------------------------------------------------
// ε-nets
// ---------------------------------------------------------------------------

/// A finite ε-net standing in for a compact subset: every point of the target
/// set lies within `resolution` of some listed point, in the intrinsic
/// metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactApprox {
    pub label: String,
    pub points: Vec<Itinerary>,
    pub resolution: Rat,
}

impl CompactApprox {
    /// Net serialization: `{label, resolution: "p/q", points: [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "label": self.label,
            "resolution": fmt_rat(&self.resolution),
            "points": self.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn beam_param_samples(len: &Rat, eps: &Rat, up_to: &Rat) -> Vec<Rat> {
    // Multiples of eps/len below `up_to`, then `up_to` itself (exact
    // endpoints keep Hausdorff identities sharp).
    let delta = eps / len;
    let mut params = Vec::new();
    let mut m = 1u64;
    loop {
        let t = &delta * rat_int(m as i64);
        if t >= *up_to {
            break;
        }
        params.push(t);
        m += 1;
    }
    params.push(up_to.clone());
    params
}

/// Net of the scaled star `D_r`: the union over beams `j` of the arcs from
/// the origin to the point at parameter `r` on beam `j`. Beams up to `J` are
/// sampled at arc steps `<= eps`; the discarded beams contribute
/// `L_{J+1}·r` to the certified resolution. `r = 0` degenerates to the
/// origin alone, resolution zero.
pub fn build_net_dr(
    r: &Rat,
    eps: &Rat,
    branch_cutoff: u32,
) -> Result<CompactApprox, GeometryError> {
    if r.is_negative() || *r > rat_int(1) {
        return Err(GeometryError::ROutOfRange(fmt_rat(r)));
    }
    let label = format!("D_r[r={}]", fmt_rat(r));
    if r.is_zero() {
        return Ok(CompactApprox {
            label,
            points: vec![Itinerary::Origin],
            resolution: Rat::zero(),
        });
    }
    assert!(eps.is_positive(), "eps must be positive");
    let mut points = vec![Itinerary::Origin];
    for j in 0..=branch_cutoff {
        let len = beam_base_length(j);
        for t in beam_param_samples(&len, eps, r) {
            points.push(Itinerary::beam_point(j, t).expect("sample parameters lie in (0,1]"));
        }
    }
    let resolution = eps + beam_base_length(branch_cutoff + 1) * r;
    Ok(CompactApprox {
        label,
        points,
        resolution,
    })
}

/// All beam addresses of the truncated dendrite: star-entry chains of depth
/// `< depth`, branches `<= branch_cutoff`, dyadic levels `<= level_cutoff`.
fn truncated_beam_addresses(
    depth: u32,
    branch_cutoff: u32,
    level_cutoff: u32,
) -> Vec<(Vec<Step>, u32)> {
    let mut out = Vec::new();
    let mut dyadics = Vec::new();
    for l in 1..=level_cutoff {
        for p in (1..(1u64 << l)).step_by(2) {
            dyadics.push(crate::dyadics::Dyadic::new(p, l).expect("valid dyadic"));
        }
    }
    fn recurse(
        prefix: &mut Vec<Step>,
        depth_left: u32,
        branch_cutoff: u32,
        dyadics: &[crate::dyadics::Dyadic],
        out: &mut Vec<(Vec<Step>, u32)>,
    ) {
        for tb in 0..=branch_cutoff {
            out.push((prefix.clone(), tb));
        }
        if depth_left == 0 {
            return;
        }
        for b in 0..=branch_cutoff {
            for d in dyadics {
                prefix.push(Step::new(b, *d));
                recurse(prefix, depth_left - 1, branch_cutoff, dyadics, out);
                prefix.pop();
            }
        }
    }
    recurse(
        &mut Vec::new(),
        depth - 1,
        branch_cutoff,
        &dyadics,
        &mut out,
    );
    out
}

/// Net of the dendrite truncated to star depth `<= depth`, branch indices
/// `<= branch_cutoff`, and dyadic levels `<= level_cutoff`, sampled at arc
/// steps `<= eps`. The certified resolution adds the worst discarded-subtree
/// radius (branches, levels, or depth beyond the truncation) to `eps`; a
/// combination certifying worse than 1 is rejected, except that a degenerate
/// `eps >= 2` request is answered by the origin alone under the whole-space
/// radius bound.
pub fn build_net_d_truncated(
    depth: u32,
    branch_cutoff: u32,
    level_cutoff: u32,
    eps: &Rat,
) -> Result<CompactApprox, GeometryError> {
    assert!(depth >= 1 && branch_cutoff >= 1);
    assert!(eps.is_positive(), "eps must be positive");
    let label = format!(
        "D_trunc[d={depth},J={branch_cutoff},L={level_cutoff},eps={}]",
        fmt_rat(eps)
    );
    if *eps >= rat_int(2) {
        // Everything lies within the whole-space radius bound of the origin.
        return Ok(CompactApprox {
            label,
            points: vec![Itinerary::Origin],
            resolution: rat_int(2),
        });
    }
    // Radius bounds (half the diameter closed form) of the discarded classes,
    // each anchored at a kept skeleton point.
    let branch_tail = rat_int(2) * beam_base_length(branch_cutoff + 1);
    let level_tail = pow2(-(level_cutoff as i64 + 2));
    let depth_tail = pow2(-3 * (depth as i64 - 1) - 2);
    let tail = branch_tail.max(level_tail).max(depth_tail);
    let resolution = eps + &tail;
    if resolution > rat_int(1) {
        return Err(GeometryError::UselessNet(fmt_rat(&resolution)));
    }
    let addresses = truncated_beam_addresses(depth, branch_cutoff, level_cutoff);
    let chunks = par::map_collect(&addresses, |(prefix, tb)| {
        let len = beam_length(prefix, *tb);
        beam_param_samples(&len, eps, &rat_int(1))
            .into_iter()
            .map(|t| {
                Itinerary::finite(prefix.clone(), *tb, t).expect("sample parameters lie in (0,1]")
            })
            .collect::<Vec<_>>()
    });
    let mut points = vec![Itinerary::Origin];
    points.extend(chunks.into_iter().flatten());
    Ok(CompactApprox {
        label,
        points,
        resolution,
    })
}

// ---------------------------------------------------------------------------
// Planar embedding (rendering only)
// ---------------------------------------------------------------------------

/// Planar position used for rendering; never used for metric verdicts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeomPoint {
    pub x: f64,
    pub y: f64,
}

/// Direction, visual length and angular clearance of one drawn beam.
#[derive(Debug, Clone, Copy)]
struct DrawnBeam {
    angle: f64,
    len: f64,
    gap: f64,
}

/// Top-level fan: `B_0` along the negative x-axis, `B_1` straight up, and
/// `B_j` at angle `pi/2^j` in the first quadrant (slopes strictly decreasing
/// to zero).
fn top_beam(j: u32) -> DrawnBeam {
    let angle = match j {
        0 => PI,
        _ => PI / f64::powi(2.0, j as i32),
    };
    let gap = match j {
        0 => PI / 2.0,
        1 => PI / 4.0,
        _ => PI / f64::powi(2.0, j as i32 + 1),
    };
    let len = beam_base_length(j).to_f64().expect("beam length fits f64");
    DrawnBeam { angle, len, gap }
}

/// Child fan of a star: the base pattern rotated to the parent direction
/// plus `pi/2`, compressed into the wedge `(pi/2, 3pi/4]` so children hang
/// off one side of their beam.
fn child_beam(parent_angle: f64, star_scale: f64, m: u32) -> DrawnBeam {
    let rel = PI / 2.0 + PI / f64::powi(2.0, m as i32 + 2);
    let gap = if m == 0 {
        PI / 8.0
    } else {
        PI / f64::powi(2.0, m as i32 + 3)
    };
    DrawnBeam {
        angle: parent_angle + rel,
        len: star_scale * beam_base_length(m).to_f64().expect("length fits f64"),
        gap,
    }
}

/// Visual scale of a star at a level-`l` dyadic on a drawn beam: the
/// intrinsic factor `2^-(l+2)` shrunk by half the sine of the beam's angular
/// clearance, which keeps distinct subtrees disjoint in the plane.
fn star_visual_scale(beam: &DrawnBeam, level: u32) -> f64 {
    beam.len * f64::powi(0.5, level as i32 + 2) * (beam.gap.sin() * 0.5)
}

struct EmbedCursor {
    pos: GeomPoint,
    /// Fan context: None = top-level star, Some((angle, scale)) = child star.
    star: Option<(f64, f64)>,
}

impl EmbedCursor {
    fn origin() -> Self {
        EmbedCursor {
            pos: GeomPoint { x: 0.0, y: 0.0 },
            star: None,
        }
    }

    fn beam(&self, branch: u32) -> DrawnBeam {
        match self.star {
            None => top_beam(branch),
            Some((angle, scale)) => child_beam(angle, scale, branch),
        }
    }

    /// Enter the star at parameter `exit` (a dyadic of level `level`) on
    /// beam `branch`.
    fn enter(&mut self, branch: u32, exit: f64, level: u32) {
        let beam = self.beam(branch);
        self.pos.x += exit * beam.len * beam.angle.cos();
        self.pos.y += exit * beam.len * beam.angle.sin();
        self.star = Some((beam.angle, star_visual_scale(&beam, level)));
    }

    fn land(&self, branch: u32, param: f64) -> GeomPoint {
        let beam = self.beam(branch);
        GeomPoint {
            x: self.pos.x + param * beam.len * beam.angle.cos(),
            y: self.pos.y + param * beam.len * beam.angle.sin(),
        }
    }
}

/// Embeds an itinerary in the plane. Lazy itineraries (and overly deep
/// finite ones) are truncated after `depth_cap` star entries; nearby
/// itineraries land at nearby points, at the truncation scale.
pub fn realize_planar(it: &Itinerary, depth_cap: u32) -> GeomPoint {
    assert!(depth_cap >= 1);
    let mut cursor = EmbedCursor::origin();
    match it {
        Itinerary::Origin => cursor.pos,
        Itinerary::Finite {
            steps,
            terminal_branch,
            param,
        } => {
            for step in steps.iter().take(depth_cap as usize) {
                cursor.enter(
                    step.branch,
                    step.dyadic.value().to_f64().expect("dyadic fits f64"),
                    step.dyadic.level(),
                );
            }
            if steps.len() > depth_cap as usize {
                return cursor.pos;
            }
            cursor.land(*terminal_branch, param.to_f64().expect("param fits f64"))
        }
        Itinerary::Lazy {
            steps,
            terminal_branch,
            tail,
        } => {
            let mut taken = 0;
            for step in steps {
                if taken == depth_cap {
                    return cursor.pos;
                }
                cursor.enter(
                    step.branch,
                    step.dyadic.value().to_f64().expect("dyadic fits f64"),
                    step.dyadic.level(),
                );
                taken += 1;
            }
            let mut tail = tail.clone();
            let mut branch = *terminal_branch;
            while taken < depth_cap {
                let d = tail.head_dyadic();
                cursor.enter(
                    branch,
                    d.value().to_f64().expect("dyadic fits f64"),
                    d.level(),
                );
                tail = tail.advanced();
                branch = 0;
                taken += 1;
            }
            cursor.pos
        }
    }
}

// ---------------------------------------------------------------------------
// Embedding disjointness report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct DisjointnessReport {
    pub pass: bool,
    pub segments: usize,
    /// Smallest gap observed between non-touching portions of segment pairs.
    pub min_gap: f64,
    pub offending: Option<(String, String)>,
}

#[derive(Clone)]
struct EmbeddedSegment {
    label: String,
    a: GeomPoint,
    b: GeomPoint,
}

fn dot(ax: f64, ay: f64, bx: f64, by: f64) -> f64 {
    ax * bx + ay * by
}

fn point_segment_distance(p: &GeomPoint, a: &GeomPoint, b: &GeomPoint) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dot(dx, dy, dx, dy);
    let t = if len2 == 0.0 {
        0.0
    } else {
        (dot(p.x - a.x, p.y - a.y, dx, dy) / len2).clamp(0.0, 1.0)
    };
    let (cx, cy) = (a.x + t * dx, a.y + t * dy);
    ((p.x - cx).powi(2) + (p.y - cy).powi(2)).sqrt()
}

fn segments_intersect(p1: &GeomPoint, p2: &GeomPoint, p3: &GeomPoint, p4: &GeomPoint) -> bool {
    let d = |a: &GeomPoint, b: &GeomPoint, c: &GeomPoint| {
        (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    };
    let (d1, d2) = (d(p3, p4, p1), d(p3, p4, p2));
    let (d3, d4) = (d(p1, p2, p3), d(p1, p2, p4));
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

fn segment_distance(s: &EmbeddedSegment, t: &EmbeddedSegment) -> f64 {
    if segments_intersect(&s.a, &s.b, &t.a, &t.b) {
        return 0.0;
    }
    point_segment_distance(&s.a, &t.a, &t.b)
        .min(point_segment_distance(&s.b, &t.a, &t.b))
        .min(point_segment_distance(&t.a, &s.a, &s.b))
        .min(point_segment_distance(&t.b, &s.a, &s.b))
}

fn shrink_toward(from: &GeomPoint, to: &GeomPoint, f: f64) -> GeomPoint {
    GeomPoint {
        x: from.x + (to.x - from.x) * f,
        y: from.y + (to.y - from.y) * f,
    }
}

const TOUCH_EPS: f64 = 1e-12;

/// Embeds the truncated dendrite and numerically verifies that all drawn
/// segments are pairwise disjoint except at shared endpoints. Touching pairs
/// are re-checked with the shared point retracted; the report carries the
/// minimal observed gap.
pub fn embedding_disjointness_check(
    depth: u32,
    branch_cutoff: u32,
    level_cutoff: u32,
) -> DisjointnessReport {
    let addresses = truncated_beam_addresses(depth, branch_cutoff, level_cutoff);
    let segments: Vec<EmbeddedSegment> = addresses
        .iter()
        .map(|(prefix, tb)| {
            let mut cursor = EmbedCursor::origin();
            for step in prefix {
                cursor.enter(
                    step.branch,
                    step.dyadic.value().to_f64().expect("dyadic fits f64"),
                    step.dyadic.level(),
                );
            }
            let start = cursor.pos;
            let end = cursor.land(*tb, 1.0);
            let label = Itinerary::finite(prefix.clone(), *tb, rat_int(1))
                .expect("endpoint parameter is valid")
                .to_string();
            EmbeddedSegment {
                label,
                a: start,
                b: end,
            }
        })
        .collect();

    let pair_results = par::map_range(segments.len(), |i| {
        let mut local_min = f64::INFINITY;
        let mut offending = None;
        for j in (i + 1)..segments.len() {
            let (s, t) = (&segments[i], &segments[j]);
            let raw = segment_distance(s, t);
            let gap = if raw > TOUCH_EPS {
                raw
            } else {
                // Identify the touch point: a common start, or one start
                // interior to the other segment. Retract both segments away
                // from it and re-measure.
                let touch =
                    if ((s.a.x - t.a.x).powi(2) + (s.a.y - t.a.y).powi(2)).sqrt() <= TOUCH_EPS {
                        Some(s.a)
                    } else if point_segment_distance(&t.a, &s.a, &s.b) <= TOUCH_EPS {
                        Some(t.a)
                    } else if point_segment_distance(&s.a, &t.a, &t.b) <= TOUCH_EPS {
                        Some(s.a)
                    } else {
                        None
                    };
                match touch {
                    None => raw, // genuine crossing
                    Some(q) => {
                        let retract = |seg: &EmbeddedSegment| {
                            let (da, db) = (
                                ((seg.a.x - q.x).powi(2) + (seg.a.y - q.y).powi(2)).sqrt(),
                                ((seg.b.x - q.x).powi(2) + (seg.b.y - q.y).powi(2)).sqrt(),
                            );
                            if da <= TOUCH_EPS {
                                EmbeddedSegment {
                                    label: seg.label.clone(),
                                    a: shrink_toward(&seg.a, &seg.b, 0.125),
                                    b: seg.b,
                                }
                            } else if db <= TOUCH_EPS {
                                EmbeddedSegment {
                                    label: seg.label.clone(),
                                    a: seg.a,
                                    b: shrink_toward(&seg.b, &seg.a, 0.125),
                                }
                            } else {
                                // Touch interior to this segment: keep the
                                // longer side, retracted.
                                let side_a = EmbeddedSegment {
                                    label: seg.label.clone(),
                                    a: seg.a,
                                    b: shrink_toward(&q, &seg.a, 0.125),
                                };
                                let side_b = EmbeddedSegment {
                                    label: seg.label.clone(),
                                    a: shrink_toward(&q, &seg.b, 0.125),
                                    b: seg.b,
                                };
                                if da >= db {
                                    side_a
                                } else {
                                    side_b
                                }
                            }
                        };
                        segment_distance(&retract(s), &retract(t))
                    }
                }
            };
            if gap < local_min {
                local_min = gap;
                if gap <= TOUCH_EPS {
                    offending = Some((s.label.clone(), t.label.clone()));
                }
            }
        }
        (local_min, offending)
    });

    let mut min_gap = f64::INFINITY;
    let mut offending = None;
    for (gap, off) in pair_results {
        if gap < min_gap {
            min_gap = gap;
            if let Some(o) = off {
                offending = Some(o);
            }
        }
    }
    if segments.len() < 2 {
        min_gap = f64::INFINITY;
    }
    DisjointnessReport {
        pass: offending.is_none(),
        segments: segments.len(),
        min_gap,
        offending,
    }
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct RenderStyle {
    pub stroke_width: f64,
    pub marker_radius: f64,
    pub depth_cap: u32,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            stroke_width: 0.004,
            marker_radius: 0.008,
            depth_cap: 8,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub nets: Vec<CompactApprox>,
    pub orbits: Vec<(String, Vec<Itinerary>)>,
}

const NET_COLORS: [&str; 4] = ["#1f77b4", "#2ca02c", "#9467bd", "#8c564b"];
const ORBIT_COLORS: [&str; 4] = ["#d62728", "#ff7f0e", "#e377c2", "#17becf"];

fn fmt_coord(v: f64) -> String {
    format!("{v:.6}")
}

/// Deterministic SVG: identical scenes yield byte-identical documents.
/// Viewport `[-1.1, 1.1]^2`, mathematical y pointing up.
pub fn render_svg(scene: &Scene, style: &RenderStyle) -> String {
    let mut out = String::new();
    out.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"-1.1 -1.1 2.2 2.2\">\n",
    );
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    for (ni, net) in scene.nets.iter().enumerate() {
        let color = NET_COLORS[ni % NET_COLORS.len()];
        // One chain per sampled beam, anchored at the beam's start node.
        let mut beams: BTreeMap<String, (GeomPoint, Vec<(Rat, GeomPoint)>)> = BTreeMap::new();
        let mut has_origin = false;
        for p in &net.points {
            match p {
                Itinerary::Origin => has_origin = true,
                Itinerary::Finite {
                    steps,
                    terminal_branch,
                    param,
                } => {
                    let key = format!("{steps:?}|{terminal_branch}");
                    let entry = beams.entry(key).or_insert_with(|| {
                        let mut cursor = EmbedCursor::origin();
                        for step in steps {
                            cursor.enter(
                                step.branch,
                                step.dyadic.value().to_f64().expect("dyadic fits f64"),
                                step.dyadic.level(),
                            );
                        }
                        (cursor.pos, Vec::new())
                    });
                    entry
                        .1
                        .push((param.clone(), realize_planar(p, style.depth_cap)));
                }
                Itinerary::Lazy { .. } => {
                    // Lazy points render as bare markers below.
                }
            }
        }
        out.push_str(&format!(
            "<g id=\"net{ni}\" stroke=\"{color}\" fill=\"none\" stroke-width=\"{}\">\n",
            fmt_coord(style.stroke_width)
        ));
        for (_, (node, mut pts)) in beams {
            pts.sort_by(|a, b| a.0.cmp(&b.0));
            let mut coords = vec![node];
            coords.extend(pts.into_iter().map(|(_, gp)| gp));
            let attr: Vec<String> = coords
                .iter()
                .map(|c| format!("{},{}", fmt_coord(c.x), fmt_coord(c.y)))
                .collect();
            out.push_str(&format!("<polyline points=\"{}\"/>\n", attr.join(" ")));
        }
        if has_origin {
            out.push_str(&format!(
                "<circle cx=\"0.000000\" cy=\"0.000000\" r=\"{}\" fill=\"{color}\" stroke=\"none\"/>\n",
                fmt_coord(style.marker_radius)
            ));
        }
        out.push_str("</g>\n");
    }
    for (oi, (label, orbit)) in scene.orbits.iter().enumerate() {
        let color = ORBIT_COLORS[oi % ORBIT_COLORS.len()];
        out.push_str(&format!(
            "<g id=\"orbit{oi}\" data-label=\"{label}\" fill=\"{color}\" stroke=\"none\">\n"
        ));
        for it in orbit {
            let gp = realize_planar(it, style.depth_cap);
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>\n",
                fmt_coord(gp.x),
                fmt_coord(gp.y),
                fmt_coord(style.marker_radius)
            ));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</g>\n</svg>\n");
    out
}
