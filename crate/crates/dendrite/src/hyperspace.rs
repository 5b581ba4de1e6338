//! Hausdorff metric, Vietoris basis sets, and finite-space oracles.
//!
//! Hausdorff distances between dendrite nets run over precomputed root
//! paths. Directed distances exploit the structure of the point sets
//! exactly: single-segment points (net samples on top-level beams) are
//! indexed per beam and queried by binary search, multi-segment points
//! (orbit tails) are grouped by their first beam. Both shortcuts compute
//! the same rational as the dense double loop, just without the quadratic
//! scan; the dense loop remains the fallback for mixed shapes.
//!
//! The finite-space side works on explicit distance matrices small enough
//! to enumerate the entire hyperspace `2^X` (at most 12 points, 4095
//! subsets). There every subset is closed, so the closure lemma's two sides
//! are computed by genuinely different routes — metric limit points on one
//! side, membership conditions on closed hulls on the other — and compared
//! exhaustively. Boundary elements, which require sets that are not closed,
//! enter through region descriptors (open balls, half-open intervals) whose
//! closures are symbolic.

use crate::geometry::{CompactApprox, GeometryError, PathPoint};
use crate::itinerary::Itinerary;
use crate::par;
use crate::rational::{fmt_rat, rat_int, Rat};
use num_traits::{Signed, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HyperspaceError {
    #[error("finite metric space must have 1..=12 points, got {0}")]
    SpaceTooLarge(usize),
    #[error("distance matrix is not a metric: {0}")]
    NotAMetric(String),
    #[error("subset mask {0:#x} does not fit the space")]
    BadMask(u16),
    #[error("the set is not in the boundary of the Vietoris neighborhood")]
    NotInBoundary,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

// ---------------------------------------------------------------------------
// Hausdorff distance over dendrite nets
// ---------------------------------------------------------------------------

/// Paths of a point set, split by shape for the directed-distance shortcuts.
struct PreparedSet {
    /// Single-segment points per beam: `(exit, len, d0)` sorted by exit.
    singles: BTreeMap<u32, Vec<(Rat, Rat, Rat)>>,
    /// Multi-segment points grouped by first branch, plus a sorted
    /// `(exit, dangling suffix)` view of the same points for pruned scans
    /// from single-segment queries.
    multis: BTreeMap<u32, Vec<PathPoint>>,
    multis_sorted: BTreeMap<u32, Vec<(Rat, Rat)>>,
    has_origin: bool,
    /// The two best per-beam minima of `d0`, for exact cross-beam minima.
    best_two: Vec<(u32, Rat)>,
    all: Vec<PathPoint>,
}

impl PreparedSet {
    fn build(points: &[Itinerary], tol: &Rat) -> Result<PreparedSet, GeometryError> {
        let paths: Vec<PathPoint> = {
            let resolved: Vec<Result<PathPoint, GeometryError>> =
                par::map_collect(points, |p| PathPoint::from_itinerary(p, tol));
            resolved.into_iter().collect::<Result<Vec<_>, _>>()?
        };
        let mut singles: BTreeMap<u32, Vec<(Rat, Rat, Rat)>> = BTreeMap::new();
        let mut multis: BTreeMap<u32, Vec<PathPoint>> = BTreeMap::new();
        let mut multis_sorted: BTreeMap<u32, Vec<(Rat, Rat)>> = BTreeMap::new();
        let mut has_origin = false;
        for p in &paths {
            match p.segs.len() {
                0 => has_origin = true,
                1 => {
                    let s = &p.segs[0];
                    singles.entry(s.branch).or_default().push((
                        s.exit.clone(),
                        s.len.clone(),
                        p.suffix[0].clone(),
                    ));
                }
                _ => {
                    let s = &p.segs[0];
                    multis_sorted
                        .entry(s.branch)
                        .or_default()
                        .push((s.exit.clone(), p.suffix[1].clone()));
                    multis.entry(s.branch).or_default().push(p.clone());
                }
            }
        }
        for v in singles.values_mut() {
            v.sort_by(|a, b| a.0.cmp(&b.0));
        }
        for v in multis_sorted.values_mut() {
            v.sort_by(|a, b| a.0.cmp(&b.0));
        }
        let mut min_d0_per_beam: BTreeMap<u32, Rat> = BTreeMap::new();
        let note = |acc: &mut BTreeMap<u32, Rat>, beam: u32, d0: &Rat| {
            acc.entry(beam)
                .and_modify(|m| {
                    if d0 < m {
                        *m = d0.clone();
                    }
                })
                .or_insert_with(|| d0.clone());
        };
        for (beam, v) in &singles {
            for (_, _, d0) in v {
                note(&mut min_d0_per_beam, *beam, d0);
            }
        }
        for (beam, v) in &multis {
            for p in v {
                note(&mut min_d0_per_beam, *beam, p.dist_to_origin());
            }
        }
        let mut best_two: Vec<(u32, Rat)> = min_d0_per_beam.into_iter().collect();
        best_two.sort_by(|a, b| a.1.cmp(&b.1));
        best_two.truncate(2);
        Ok(PreparedSet {
            singles,
            multis,
            multis_sorted,
            has_origin,
            best_two,
            all: paths,
        })
    }

    /// Minimum `d0` over points whose first branch differs from `exclude`.
    fn min_d0_excluding(&self, exclude: Option<u32>) -> Option<Rat> {
        for (beam, d0) in &self.best_two {
            if Some(*beam) != exclude {
                return Some(d0.clone());
            }
        }
        None
    }

    /// Exact minimum distance from `x` to this set.
    fn dist_from(&self, x: &PathPoint) -> Rat {
        let mut best: Option<Rat> = None;
        let consider = |best: &mut Option<Rat>, d: Rat| match best {
            Some(b) if *b <= d => {}
            _ => *best = Some(d),
        };
        match x.first_branch() {
            None => {
                // x is the origin: the nearest point minimizes d0.
                if self.has_origin {
                    consider(&mut best, Rat::zero());
                }
                if let Some(d) = self.min_d0_excluding(None) {
                    consider(&mut best, d);
                }
            }
            Some(beam) => {
                if self.has_origin {
                    consider(&mut best, x.suffix[0].clone());
                }
                // Cross-beam points: the walks part at the origin.
                if let Some(d) = self.min_d0_excluding(Some(beam)) {
                    consider(&mut best, &x.suffix[0] + d);
                }
                // Same-beam singles: |exit - t|·len + x's dangling suffix;
                // the two neighbors of x's exit minimize |exit - t|.
                if let Some(v) = self.singles.get(&beam) {
                    let ex = &x.segs[0].exit;
                    let idx = v.partition_point(|(t, _, _)| t < ex);
                    for cand in [idx.wrapping_sub(1), idx] {
                        if let Some((t, len, _)) = v.get(cand) {
                            let d = (ex - t).abs() * len + &x.suffix[1];
                            consider(&mut best, d);
                        }
                    }
                }
                match x.segs.len() {
                    1 => {
                        // Same-beam multis against a single-segment query:
                        // distance is |exit - t|·len + dangling suffix, so a
                        // sorted scan outward from the query exit can stop
                        // once the in-beam gap alone exceeds the best.
                        if let Some(v) = self.multis_sorted.get(&beam) {
                            let ex = &x.segs[0].exit;
                            let len = &x.segs[0].len;
                            let start = v.partition_point(|(t, _)| t < ex);
                            let probe = |entry: &(Rat, Rat), best: &mut Option<Rat>| -> bool {
                                let gap = (ex - &entry.0).abs() * len;
                                if let Some(b) = best {
                                    if gap >= *b {
                                        return false;
                                    }
                                }
                                consider(best, gap + &entry.1);
                                true
                            };
                            for entry in v[start..].iter() {
                                if !probe(entry, &mut best) {
                                    break;
                                }
                            }
                            for entry in v[..start].iter().rev() {
                                if !probe(entry, &mut best) {
                                    break;
                                }
                            }
                        }
                    }
                    _ => {
                        // Multi vs multi: only the full kernel is sound
                        // (the walks may agree beyond the first segment).
                        if let Some(v) = self.multis.get(&beam) {
                            for p in v {
                                consider(&mut best, x.distance(p));
                            }
                        }
                    }
                }
            }
        }
        best.expect("point sets are non-empty")
    }
}

/// Directed Hausdorff distance `sup_{a in A} d(a, B)` over prepared sets.
fn directed(a: &PreparedSet, b: &PreparedSet) -> Rat {
    par::map_collect(&a.all, |x| b.dist_from(x))
        .into_iter()
        .max()
        .expect("non-empty set")
}

/// Hausdorff distance between two nets in the intrinsic metric. `tol`
/// truncates lazy points; the result is within `resolution(A) +
/// resolution(B)` (plus `tol` per lazy side) of the true distance between
/// the target sets.
pub fn hausdorff_nets(
    a: &CompactApprox,
    b: &CompactApprox,
    tol: &Rat,
) -> Result<Rat, HyperspaceError> {
    let pa = PreparedSet::build(&a.points, tol)?;
    let pb = PreparedSet::build(&b.points, tol)?;
    Ok(directed(&pa, &pb).max(directed(&pb, &pa)))
}

/// Pairwise Hausdorff matrix for a family of nets.
pub fn hausdorff_matrix(
    nets: &[CompactApprox],
    tol: &Rat,
) -> Result<Vec<Vec<Rat>>, HyperspaceError> {
    let prepared = nets
        .iter()
        .map(|n| PreparedSet::build(&n.points, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let n = nets.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let values = par::map_collect(&pairs, |(i, j)| {
        directed(&prepared[*i], &prepared[*j]).max(directed(&prepared[*j], &prepared[*i]))
    });
    let mut matrix = vec![vec![Rat::zero(); n]; n];
    for ((i, j), v) in pairs.into_iter().zip(values) {
        matrix[i][j] = v.clone();
        matrix[j][i] = v;
    }
    Ok(matrix)
}

/// The arc profile: pairwise Hausdorff distances between the nets of the
/// scaled stars `D_r` over a parameter grid, with per-net certified
/// resolutions. Injectivity shows as off-diagonal entries bounded below,
/// continuity as entries vanishing with `|r_i - r_j|`; the observed law is
/// `H = |r_i - r_j|` up to the resolutions.
#[derive(Debug, Clone)]
pub struct ArcProfile {
    pub grid: Vec<Rat>,
    pub resolutions: Vec<Rat>,
    pub matrix: Vec<Vec<Rat>>,
}

impl ArcProfile {
    /// RFC 4180 CSV: header row of grid values, one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header = vec!["r".to_string()];
        header.extend(self.grid.iter().map(fmt_rat));
        out.push_str(&csv_row(&header));
        for (i, r) in self.grid.iter().enumerate() {
            let mut row = vec![fmt_rat(r)];
            row.extend(self.matrix[i].iter().map(fmt_rat));
            out.push_str(&csv_row(&row));
        }
        out
    }
}

pub(crate) fn csv_row(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains(',') || f.contains('"') || f.contains('\n') {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect();
    format!("{}\r\n", quoted.join(","))
}

pub fn arc_profile(
    grid: &[Rat],
    eps: &Rat,
    branch_cutoff: u32,
) -> Result<ArcProfile, HyperspaceError> {
    let nets = grid
        .iter()
        .map(|r| crate::geometry::build_net_dr(r, eps, branch_cutoff))
        .collect::<Result<Vec<_>, _>>()?;
    let resolutions = nets.iter().map(|n| n.resolution.clone()).collect();
    let matrix = hausdorff_matrix(&nets, eps)?;
    Ok(ArcProfile {
        grid: grid.to_vec(),
        resolutions,
        matrix,
    })
}

// ---------------------------------------------------------------------------
// Regions and Vietoris basis sets
// ---------------------------------------------------------------------------

/// A describable subset of a space, with a symbolic closure. For plain
/// finite subsets the closure adds nothing; for ball or interval descriptors
/// it adds the boundary sphere or endpoints.
pub trait Region<P> {
    fn contains(&self, p: &P) -> bool;
    fn closure_contains(&self, p: &P) -> bool;
}

/// A Vietoris basis element `<U_1, ..., U_n>`: the compact sets contained in
/// the union of the members and meeting every member.
#[derive(Debug, Clone)]
pub struct VietorisNbhd<R> {
    pub members: Vec<R>,
}

impl<R> VietorisNbhd<R> {
    pub fn new(members: Vec<R>) -> Self {
        assert!(!members.is_empty(), "a basis element needs n >= 1 members");
        VietorisNbhd { members }
    }
}

/// Membership of the (non-empty) point set `k` in `<U_1,...,U_n>`.
pub fn vietoris_contains<P, R: Region<P>>(k: &[P], nbhd: &VietorisNbhd<R>) -> bool {
    assert!(!k.is_empty(), "Vietoris membership is for non-empty sets");
    let covered = k.iter().all(|p| nbhd.members.iter().any(|u| u.contains(p)));
    covered && nbhd.members.iter().all(|u| k.iter().any(|p| u.contains(p)))
}

/// Membership in `<cl U_1, ..., cl U_n>`, the closure of the basis element.
pub fn vietoris_closure_contains<P, R: Region<P>>(k: &[P], nbhd: &VietorisNbhd<R>) -> bool {
    assert!(!k.is_empty());
    let covered = k
        .iter()
        .all(|p| nbhd.members.iter().any(|u| u.closure_contains(p)));
    covered
        && nbhd
            .members
            .iter()
            .all(|u| k.iter().any(|p| u.closure_contains(p)))
}

/// Witness extraction for boundary elements: given `A` in
/// `cl <U_1,...,U_n> \ <U_1,...,U_n>`, produces `a in A` and an index `j`
/// with `a in cl(U_j) \ U_j`, by the two-case scan — either `A` misses some
/// `U_j` it is forced to meet in closure, or `A` has a point outside the
/// union. Errors when `A` is not in the boundary.
pub fn boundary_element_witness<P: Clone, R: Region<P>>(
    a: &[P],
    nbhd: &VietorisNbhd<R>,
) -> Result<(P, usize), HyperspaceError> {
    if !vietoris_closure_contains(a, nbhd) || vietoris_contains(a, nbhd) {
        return Err(HyperspaceError::NotInBoundary);
    }
    // Case 1: A misses U_j entirely; closure membership still forces
    // A to meet cl(U_j).
    for (j, u) in nbhd.members.iter().enumerate() {
        if a.iter().all(|p| !u.contains(p)) {
            if let Some(p) = a.iter().find(|p| u.closure_contains(p)) {
                return Ok((p.clone(), j));
            }
        }
    }
    // Case 2: some point of A escapes the union; the closure cover places it
    // in some cl(U_j).
    for p in a {
        if nbhd.members.iter().all(|u| !u.contains(p)) {
            if let Some(j) = (0..nbhd.members.len()).find(|j| nbhd.members[*j].closure_contains(p))
            {
                return Ok((p.clone(), j));
            }
        }
    }
    unreachable!("boundary membership guarantees one of the two cases")
}

// ---------------------------------------------------------------------------
// Finite metric spaces and the exhaustive closure oracle
// ---------------------------------------------------------------------------

/// Hard cap on enumerable spaces: 2^12 - 1 = 4095 subsets.
pub const MAX_SPACE: usize = 12;

/// An explicit finite metric space: labels and an exact distance matrix
/// validated against the metric axioms.
#[derive(Debug, Clone)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Rat>>,
}

/// A subset of a finite metric space as a bitmask over point indices.
pub type SubsetMask = u16;

/// Plain-subset region over point indices: closed, closure adds nothing.
#[derive(Debug, Clone, Copy)]
pub struct MaskRegion(pub SubsetMask);

impl Region<usize> for MaskRegion {
    fn contains(&self, p: &usize) -> bool {
        self.0 >> p & 1 == 1
    }
    fn closure_contains(&self, p: &usize) -> bool {
        self.contains(p)
    }
}

/// Metric ball descriptor over a finite metric space; `strict` makes it the
/// open ball, whose symbolic closure is the closed ball. This is what makes
/// boundary instances (sphere points) expressible.
#[derive(Debug, Clone)]
pub struct BallRegion<'a> {
    pub space: &'a FiniteMetricSpace,
    pub center: usize,
    pub radius: Rat,
    pub strict: bool,
}

impl Region<usize> for BallRegion<'_> {
    fn contains(&self, p: &usize) -> bool {
        let d = self.space.distance(self.center, *p);
        if self.strict {
            *d < self.radius
        } else {
            *d <= self.radius
        }
    }
    fn closure_contains(&self, p: &usize) -> bool {
        *self.space.distance(self.center, *p) <= self.radius
    }
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<Rat>>) -> Result<Self, HyperspaceError> {
        let n = labels.len();
        if n == 0 || n > MAX_SPACE {
            return Err(HyperspaceError::SpaceTooLarge(n));
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            return Err(HyperspaceError::NotAMetric("matrix shape mismatch".into()));
        }
        for i in 0..n {
            if !dist[i][i].is_zero() {
                return Err(HyperspaceError::NotAMetric(format!("d({i},{i}) != 0")));
            }
            for j in 0..n {
                if i != j && dist[i][j] <= Rat::zero() {
                    return Err(HyperspaceError::NotAMetric(format!(
                        "d({i},{j}) must be positive"
                    )));
                }
                if dist[i][j] != dist[j][i] {
                    return Err(HyperspaceError::NotAMetric(format!(
                        "d({i},{j}) != d({j},{i})"
                    )));
                }
                for k in 0..n {
                    if &dist[i][j] + &dist[j][k] < dist[i][k] {
                        return Err(HyperspaceError::NotAMetric(format!(
                            "triangle fails at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    /// Path metric on `n` points: `d(i,j) = |i-j| * weight`.
    pub fn path(n: usize, weight: &Rat) -> Result<Self, HyperspaceError> {
        let labels = (0..n).map(|i| format!("p{i}")).collect();
        let dist = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| rat_int((i as i64 - j as i64).abs()) * weight)
                    .collect()
            })
            .collect();
        FiniteMetricSpace::new(labels, dist)
    }

    /// Random metric with all distances in `[1, 2]`: any such matrix
    /// satisfies the triangle inequality outright.
    #[allow(clippy::needless_range_loop)] // symmetric fill via (i, j) index pairs
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Result<Self, HyperspaceError> {
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        let mut dist = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = rat_int(1) + crate::rational::rat(rng.random_range(0..=64), 64);
                dist[i][j] = d.clone();
                dist[j][i] = d;
            }
        }
        FiniteMetricSpace::new(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn distance(&self, i: usize, j: usize) -> &Rat {
        &self.dist[i][j]
    }

    fn check_mask(&self, mask: SubsetMask) -> Result<(), HyperspaceError> {
        if mask == 0 || mask >= 1 << self.len() {
            return Err(HyperspaceError::BadMask(mask));
        }
        Ok(())
    }

    fn members(&self, mask: SubsetMask) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |i| mask >> i & 1 == 1)
    }

    /// Metric closure of a subset: points at distance zero from it. In a
    /// genuine metric this is the subset itself; it is computed, not
    /// assumed.
    pub fn closure(&self, mask: SubsetMask) -> Result<SubsetMask, HyperspaceError> {
        self.check_mask(mask)?;
        let mut out = 0u16;
        for i in 0..self.len() {
            let d = self
                .members(mask)
                .map(|j| self.dist[i][j].clone())
                .min()
                .expect("non-empty mask");
            if d.is_zero() {
                out |= 1 << i;
            }
        }
        Ok(out)
    }

    /// Exact Hausdorff distance between two non-empty subsets.
    pub fn hausdorff(&self, a: SubsetMask, b: SubsetMask) -> Result<Rat, HyperspaceError> {
        self.check_mask(a)?;
        self.check_mask(b)?;
        let directed = |x: SubsetMask, y: SubsetMask| {
            self.members(x)
                .map(|i| {
                    self.members(y)
                        .map(|j| self.dist[i][j].clone())
                        .min()
                        .expect("non-empty")
                })
                .max()
                .expect("non-empty")
        };
        Ok(directed(a, b).max(directed(b, a)))
    }
}

/// Outcome of the exhaustive closure-lemma check on one instance.
#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub space_size: usize,
    pub members: Vec<SubsetMask>,
    pub lhs_size: usize,
    pub rhs_size: usize,
    pub equal: bool,
    pub counterexample: Option<SubsetMask>,
}

/// Exhaustively verifies `cl <U_1,...,U_n> == <cl U_1, ..., cl U_n>` over a
/// finite metric space: the left side by metric limit points in the finite
/// hyperspace (a subset is in the closure iff its Hausdorff distance to the
/// family attains zero), the right side by membership over the metric
/// closures of the members.
pub fn vietoris_closure_bruteforce(
    space: &FiniteMetricSpace,
    us: &[SubsetMask],
) -> Result<ClosureReport, HyperspaceError> {
    assert!(!us.is_empty());
    for u in us {
        space.check_mask(*u)?;
    }
    let n = space.len();
    let all_masks: Vec<SubsetMask> = (1..(1u16 << n)).collect();
    let in_u = |k: SubsetMask| {
        let points: Vec<usize> = space.members(k).collect();
        let nbhd = VietorisNbhd::new(us.iter().map(|u| MaskRegion(*u)).collect());
        vietoris_contains(&points, &nbhd)
    };
    let family: Vec<SubsetMask> = all_masks.iter().copied().filter(|k| in_u(*k)).collect();

    // Left side: metric closure of the family inside (2^X, H).
    let lhs: Vec<SubsetMask> = if family.is_empty() {
        Vec::new()
    } else {
        let flags = par::map_collect(&all_masks, |k| {
            family
                .iter()
                .any(|f| space.hausdorff(*k, *f).expect("valid masks").is_zero())
        });
        all_masks
            .iter()
            .zip(flags)
            .filter(|(_, f)| *f)
            .map(|(k, _)| *k)
            .collect()
    };

    // Right side: Vietoris conditions over the metric closures.
    let closures: Vec<SubsetMask> = us
        .iter()
        .map(|u| space.closure(*u))
        .collect::<Result<Vec<_>, _>>()?;
    let rhs: Vec<SubsetMask> = all_masks
        .iter()
        .copied()
        .filter(|k| {
            let points: Vec<usize> = space.members(*k).collect();
            let nbhd = VietorisNbhd::new(closures.iter().map(|u| MaskRegion(*u)).collect());
            vietoris_contains(&points, &nbhd)
        })
        .collect();

    let counterexample = lhs
        .iter()
        .find(|k| !rhs.contains(k))
        .or_else(|| rhs.iter().find(|k| !lhs.contains(k)))
        .copied();
    Ok(ClosureReport {
        space_size: n,
        members: us.to_vec(),
        lhs_size: lhs.len(),
        rhs_size: rhs.len(),
        equal: counterexample.is_none(),
        counterexample,
    })
}

/// One failed check inside [`lemma_trials`].
#[derive(Debug, Clone)]
pub struct LemmaFailure {
    pub trial: u64,
    pub kind: String,
}

/// Aggregate outcome of the seeded lemma battery.
#[derive(Debug, Clone)]
pub struct LemmaTrials {
    pub trials: u64,
    pub witness_instances: u64,
    pub failures: Vec<LemmaFailure>,
}

impl LemmaTrials {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "lemma": "vietoris-closure and boundary-element witness",
            "trials": self.trials,
            "witness_instances": self.witness_instances,
            "failures": self
                .failures
                .iter()
                .map(|f| serde_json::json!({"trial": f.trial, "kind": f.kind}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Seeded battery over random finite metric spaces (sizes 4..=6): the
/// exhaustive closure-lemma check on random subsets, plus boundary-element
/// witnesses over open-ball descriptors on path spaces, with the witness
/// postcondition re-checked on every boundary instance encountered.
pub fn lemma_trials(trials: u64, seed: u64) -> Result<LemmaTrials, HyperspaceError> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut witness_instances = 0u64;
    for trial in 0..trials {
        let n = 4 + (trial as usize % 3);
        let space = if trial % 5 == 0 {
            FiniteMetricSpace::path(n, &crate::rational::rat(1, 2))?
        } else {
            FiniteMetricSpace::random(n, &mut rng)?
        };
        let count = rng.random_range(1..=3usize);
        let us: Vec<SubsetMask> = (0..count)
            .map(|_| rng.random_range(1..(1u16 << n)))
            .collect();
        let report = vietoris_closure_bruteforce(&space, &us)?;
        if !report.equal {
            failures.push(LemmaFailure {
                trial,
                kind: format!("closure lemma: counterexample {:?}", report.counterexample),
            });
        }
        // Boundary witnesses over open balls; sphere points populate the
        // boundary.
        let path = FiniteMetricSpace::path(n, &rat_int(1))?;
        let nbhd = VietorisNbhd::new(vec![
            BallRegion {
                space: &path,
                center: rng.random_range(0..n),
                radius: rat_int(rng.random_range(1..3)),
                strict: true,
            },
            BallRegion {
                space: &path,
                center: rng.random_range(0..n),
                radius: rat_int(rng.random_range(1..3)),
                strict: true,
            },
        ]);
        for mask in 1..(1u16 << n) {
            let points: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if vietoris_closure_contains(&points, &nbhd) && !vietoris_contains(&points, &nbhd) {
                witness_instances += 1;
                match boundary_element_witness(&points, &nbhd) {
                    Ok((p, j)) => {
                        let u = &nbhd.members[j];
                        if !points.contains(&p) || !u.closure_contains(&p) || u.contains(&p) {
                            failures.push(LemmaFailure {
                                trial,
                                kind: "witness postcondition violated".into(),
                            });
                        }
                    }
                    Err(e) => failures.push(LemmaFailure {
                        trial,
                        kind: format!("witness refused: {e}"),
                    }),
                }
            }
        }
    }
    Ok(LemmaTrials {
        trials,
        witness_instances,
        failures,
    })
}
