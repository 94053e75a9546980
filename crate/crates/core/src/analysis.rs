//! Return sets, ideal cluster and limit points of orbits, and the
//! recurrence/universality classification built on them.
//!
//! A target `η` is probed along the radius schedule `r_k = r₀·2^{−k}`. The
//! norms `‖N(x, B(η, r_k))‖_φ` are nonincreasing in `k` because the balls are
//! nested and `‖·‖_φ` is monotone; the last one is reported as `𝔲(η)`.

use std::fmt;
use std::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::density::{self, DensityEstimate, DensityKind, Side};
use crate::dynsys::{Ball, Expansion, Orbit, Point, State, System};
use crate::error::{invalid, Error, Result};
use crate::ideals::{exh_cutoffs, exh_norm_value, membership_verdict, MembershipVerdict, Regime, Status, Submeasure};
use crate::intset::{gap_profile, GapProfile, IntSet};

/// Default verdict threshold for norms and `𝔲`.
pub const DEFAULT_THRESHOLD: f64 = 0.01;

#[derive(Clone, Debug)]
pub struct ReturnSetReport {
    pub system: String,
    pub point: String,
    pub center: String,
    pub radius: f64,
    pub horizon: usize,
    pub returns: IntSet,
    pub upper: DensityEstimate,
    pub lower: DensityEstimate,
    pub banach_upper: DensityEstimate,
    pub banach_lower: DensityEstimate,
    pub gaps: GapProfile,
}

pub const RETURNSET_CSV_HEADER: [&str; 9] = [
    "system", "point", "center", "radius", "horizon", "card", "dstar", "bdstar", "maxgap",
];

impl ReturnSetReport {
    pub fn csv_record(&self) -> [String; 9] {
        [
            self.system.clone(),
            self.point.clone(),
            self.center.clone(),
            self.radius.to_string(),
            self.horizon.to_string(),
            self.returns.len().to_string(),
            self.upper.value.to_string(),
            self.banach_upper.value.to_string(),
            self.gaps.max_gap.map_or_else(String::new, |g| g.to_string()),
        ]
    }
}

/// Density estimate that degrades to the exact ratio on one-point horizons.
fn density_or_ratio(s: &IntSet, kind: DensityKind) -> DensityEstimate {
    if s.horizon() >= 2 {
        return density::estimate(s, kind);
    }
    DensityEstimate {
        value: s.len() as f64,
        kind,
        horizon: s.horizon(),
        window_min: 1,
        window_max: 1,
        schedule: "whole horizon".into(),
        bias: density::Bias::Unknown,
    }
}

/// Report for `N(x, ball)` read off an existing orbit.
pub fn return_set_on(orbit: &Orbit, x: &Point, ball: &Ball) -> Result<ReturnSetReport> {
    let returns = orbit.return_set_ball(ball)?;
    Ok(ReturnSetReport {
        system: orbit.system().to_string(),
        point: x.to_string(),
        center: ball.center.to_string(),
        radius: ball.radius,
        horizon: orbit.horizon(),
        upper: density_or_ratio(&returns, DensityKind::UpperAsymptotic),
        lower: density_or_ratio(&returns, DensityKind::LowerAsymptotic),
        banach_upper: density_or_ratio(&returns, DensityKind::UpperBanach),
        banach_lower: density_or_ratio(&returns, DensityKind::LowerBanach),
        gaps: gap_profile(&returns, None),
        returns,
    })
}

pub fn return_set(sys: &System, x: &Point, ball: &Ball, horizon: usize) -> Result<ReturnSetReport> {
    let orbit = sys.orbit(x, horizon)?;
    return_set_on(&orbit, x, ball)
}

/// Shared prefix length that places a word inside a cylinder ball of radius `r`.
pub(crate) fn cylinder_prefix(radius: f64, depth: u32) -> usize {
    // d = 2^{-i} < r  ⇔  i > log2(1/r)
    let i = (-radius.log2()).floor().max(-1.0) as i64 + 1;
    (i.max(0) as usize).min(depth as usize)
}

const GRID_DENOMINATOR: u128 = 999_983;

/// Deterministic sample points of `ball`; the first is the center.
///
/// Circle systems use rationals with prime denominator 999983 (so doubling
/// orbits are long-periodic rather than eventually zero); the shift splices
/// the center's cylinder prefix onto seeded random tails; the weighted shift
/// jitters the center coordinates.
pub fn ball_grid(sys: &System, ball: &Ball, grid: usize) -> Result<Vec<Point>> {
    if grid == 0 {
        return Err(invalid("grid must have at least one point"));
    }
    let center_state = sys.state(&ball.center)?;
    let mut out = vec![ball.center.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(grid as u64);
    for i in 1..grid {
        let p = match (sys, &center_state) {
            (System::Cantor { depth, .. }, State::Word(_)) => {
                let len = cylinder_prefix(ball.radius, *depth);
                let bits = ball
                    .center
                    .expansion()
                    .ok_or_else(|| invalid("shift points are binary"))?
                    .materialize(len)?;
                let prefix: Vec<bool> = (0..len).map(|j| bits.get(j)).collect();
                Point::Bits(Expansion::splice(&prefix, Expansion::Random(rng.gen())))
            }
            (_, State::Word(c)) => {
                let s = (2 * i) as f64 / grid as f64 - 1.0;
                let y = (*c as f64 / 18_446_744_073_709_551_616.0 + ball.radius * s).rem_euclid(1.0);
                let num = ((y * GRID_DENOMINATOR as f64).round() as u128) % GRID_DENOMINATOR;
                Point::Bits(Expansion::rational(num, GRID_DENOMINATOR)?)
            }
            (_, State::Vector(c)) => Point::Vector(
                c.iter()
                    .map(|x| x + ball.radius * rng.gen_range(-0.999..0.999))
                    .collect(),
            ),
        };
        if sys.in_ball(ball, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Grid under-approximation of `N(U, V) = {n : T^n y ∈ V for some y ∈ U}`.
#[derive(Clone, Debug)]
pub struct HittingSet {
    pub set: IntSet,
    pub grid: Vec<Point>,
    /// `witnesses[i]` is `N(grid[i], V)`.
    pub witnesses: Vec<IntSet>,
}

impl HittingSet {
    /// A grid point `y` with `T^n y ∈ V`.
    pub fn witness(&self, n: usize) -> Option<&Point> {
        self.witnesses.iter().position(|w| w.contains(n)).map(|i| &self.grid[i])
    }
}

pub fn hitting_set(sys: &System, u: &Ball, v: &Ball, grid: usize, horizon: usize) -> Result<HittingSet> {
    let points = ball_grid(sys, u, grid)?;
    let witnesses = points
        .par_iter()
        .map(|y| sys.orbit(y, horizon)?.return_set_ball(v))
        .collect::<Result<Vec<IntSet>>>()?;
    let mut set = IntSet::empty(horizon);
    for w in &witnesses {
        set = set.union(w)?;
    }
    Ok(HittingSet {
        set,
        grid: points,
        witnesses,
    })
}

/// Geometric radius schedule `r_k = r₀·2^{−k}`, `k < levels`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schedule {
    pub r0: f64,
    pub levels: usize,
}

impl Schedule {
    pub fn new(r0: f64, levels: usize) -> Result<Self> {
        if !(r0 > 0.0) || levels == 0 {
            return Err(invalid(format!("bad radius schedule r0={r0}, K={levels}")));
        }
        Ok(Schedule { r0, levels })
    }

    pub fn radii(&self) -> Vec<f64> {
        (0..self.levels).map(|k| self.r0 * (-(k as f64)).exp2()).collect()
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r_k = {}·2^-k, k < {}", self.r0, self.levels)
    }
}

#[derive(Clone, Debug)]
pub struct ClusterReport {
    pub system: String,
    pub point: String,
    pub eta: String,
    pub submeasure: Submeasure,
    pub schedule: Schedule,
    pub radii: Vec<f64>,
    pub norms: Vec<f64>,
    /// `N(x, B(η, r_k))` for each `k`.
    pub return_sets: Vec<IntSet>,
    /// Norm at `k = K − 1`.
    pub u_value: f64,
    pub threshold: f64,
    /// Exh-regime verdict on `N(x, B(η, r₀))`.
    pub cluster_verdict: MembershipVerdict,
    pub is_cluster: bool,
    pub is_limit: bool,
}

pub const CLUSTER_CSV_HEADER: [&str; 6] = ["system", "point", "eta", "k", "radius", "norm"];

impl ClusterReport {
    pub fn csv_records(&self) -> Vec<[String; 6]> {
        self.radii
            .iter()
            .zip(&self.norms)
            .enumerate()
            .map(|(k, (r, n))| {
                [
                    self.system.clone(),
                    self.point.clone(),
                    self.eta.clone(),
                    k.to_string(),
                    r.to_string(),
                    n.to_string(),
                ]
            })
            .collect()
    }

    pub fn horizon(&self) -> usize {
        self.return_sets[0].horizon()
    }
}

/// Cluster report for target `η` on an existing orbit of `x`.
pub fn cluster_value_on(
    orbit: &Orbit,
    x: &Point,
    eta: &Point,
    schedule: Schedule,
    m: &Submeasure,
    threshold: f64,
) -> Result<ClusterReport> {
    let center = orbit.system().state(eta)?;
    let radii = schedule.radii();
    let return_sets: Vec<IntSet> = radii.par_iter().map(|&r| orbit.return_set(&center, r)).collect();
    let norms: Vec<f64> = return_sets.par_iter().map(|s| exh_norm_value(m, s)).collect();
    let cluster_verdict = membership_verdict(m, Regime::Exh, &return_sets[0], threshold)?;
    let u_value = *norms.last().expect("schedule has at least one level");
    Ok(ClusterReport {
        system: orbit.system().to_string(),
        point: x.to_string(),
        eta: eta.to_string(),
        submeasure: m.clone(),
        schedule,
        is_cluster: cluster_verdict.status == Status::Positive,
        is_limit: u_value > threshold,
        radii,
        norms,
        return_sets,
        u_value,
        threshold,
        cluster_verdict,
    })
}

/// Requires `K ≥ 2`.
pub fn cluster_value(
    sys: &System,
    x: &Point,
    eta: &Point,
    schedule: Schedule,
    m: &Submeasure,
    horizon: usize,
    threshold: f64,
) -> Result<ClusterReport> {
    if schedule.levels < 2 {
        return Err(invalid("cluster schedule needs K ≥ 2"));
    }
    let orbit = sys.orbit(x, horizon)?;
    cluster_value_on(&orbit, x, eta, schedule, m, threshold)
}

/// `A = ⋃ F_k` with its blocks and norm.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitSubsequence {
    pub set: IntSet,
    /// Span `[min F_k, max F_k]` of each block, `None` for an empty block.
    pub blocks: Vec<Option<Range<usize>>>,
    pub norm: f64,
}

/// Greedy block extraction.
///
/// For `k < K − 1`, `F_k` is the shortest initial run of `N_k` past the
/// previous block with `φ(F_k) ≥ 𝔲·(1 − 2^{−k})`; the last block takes all of
/// `N_{K−1}` past the previous one. Every block before the last must end
/// below the final norm cutoff `c`, so `A ∖ [0,c] ⊇ N_{K−1} ∖ [0,c]` and
/// `‖A‖_φ ≥ 𝔲`.
pub fn extract_limit_subsequence(report: &ClusterReport) -> Result<LimitSubsequence> {
    if !report.is_limit || !(report.u_value > 0.0) {
        return Err(Error::Precondition(format!(
            "u = {} does not exceed the threshold {}",
            report.u_value, report.threshold
        )));
    }
    let m = &report.submeasure;
    let horizon = report.horizon();
    let cutoff = exh_cutoffs(horizon).last().copied();
    let levels = report.return_sets.len();
    let mut cursor = 0usize;
    let mut blocks = Vec::with_capacity(levels);
    let mut members: Vec<usize> = Vec::new();
    for (k, nk) in report.return_sets.iter().enumerate() {
        let candidates: Vec<usize> = nk.iter().skip_while(|&n| n < cursor).collect();
        let take = if k + 1 == levels {
            candidates.len()
        } else {
            let target = report.u_value * (1.0 - (-(k as f64)).exp2());
            let phi = |len: usize| m.eval(&IntSet::from_elements(horizon, candidates[..len].iter().copied()));
            if phi(candidates.len()) < target {
                return Err(Error::ExtractionExhausted { k });
            }
            // φ is monotone along initial runs.
            let (mut lo, mut hi) = (0usize, candidates.len());
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if phi(mid) >= target {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            lo
        };
        let block = &candidates[..take];
        match (block.first(), block.last()) {
            (Some(&a), Some(&b)) => {
                if k + 1 < levels && cutoff.is_some_and(|c| b > c) {
                    return Err(Error::ExtractionExhausted { k });
                }
                blocks.push(Some(a..b + 1));
                cursor = b + 1;
            }
            _ => blocks.push(None),
        }
        members.extend_from_slice(block);
    }
    let set = IntSet::from_elements(horizon, members);
    let norm = exh_norm_value(m, &set);
    Ok(LimitSubsequence { set, blocks, norm })
}

/// Outcome of the ε-dense-orbit test standing in for universality.
#[derive(Clone, Debug, PartialEq)]
pub struct Surrogate {
    pub passed: bool,
    pub detail: String,
}

/// Grid size of the pseudo-universality surrogate.
pub const SURROGATE_GRID: usize = 64;
/// Cylinder length checked on the shift.
pub const SURROGATE_BITS: u32 = 6;

/// Circle systems: every point `(i + ½)/64` lies within `1/64` of the orbit.
/// Shift: every cylinder of length 6 is visited. The weighted shift always
/// fails, its orbits being eventually zero.
pub fn pseudo_universal(orbit: &Orbit) -> Surrogate {
    let sys = orbit.system();
    match (sys, orbit.words()) {
        (System::Cantor { depth, .. }, Some(words)) => {
            let bits = SURROGATE_BITS.min(*depth);
            let mut seen = vec![false; 1 << bits];
            for w in words {
                seen[(w >> (64 - bits)) as usize] = true;
            }
            let missing = seen.iter().filter(|s| !**s).count();
            Surrogate {
                passed: missing == 0,
                detail: format!("{missing} of {} cylinders of length {bits} unvisited", seen.len()),
            }
        }
        (_, Some(words)) => {
            let mut hit = [false; SURROGATE_GRID];
            let eps = 1.0 / SURROGATE_GRID as f64;
            for &w in words {
                let x = w as f64 / 18_446_744_073_709_551_616.0 * SURROGATE_GRID as f64;
                // Grid points (i + ½)/64 within distance < 1/64 of x.
                let i = x.floor() as usize % SURROGATE_GRID;
                hit[i] = true;
            }
            let missing = hit.iter().filter(|h| !**h).count();
            Surrogate {
                passed: missing == 0,
                detail: format!("{missing} of {SURROGATE_GRID} grid points farther than {eps} from the orbit"),
            }
        }
        _ => Surrogate {
            passed: false,
            detail: "weighted-shift orbits are eventually zero".into(),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Recurrent,
    Universal,
    StrongRecurrent,
    StrongUniversal,
}

impl Property {
    pub const ALL: [Property; 4] = [
        Property::Recurrent,
        Property::Universal,
        Property::StrongRecurrent,
        Property::StrongUniversal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Recurrent => "recurrent",
            Property::Universal => "universal",
            Property::StrongRecurrent => "strong_recurrent",
            Property::StrongUniversal => "strong_universal",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyVerdict {
    pub property: Property,
    pub status: Status,
    /// Norm at `r₀` for the plain properties, `𝔲` for the strong ones;
    /// minimum over targets for the universal ones.
    pub witness: f64,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub system: String,
    pub point: String,
    pub ideal: String,
    pub radius: f64,
    pub levels: usize,
    pub threshold: f64,
    pub at_point: ClusterReport,
    pub targets: Vec<ClusterReport>,
    pub verdicts: Vec<PropertyVerdict>,
}

pub const CLASSIFY_CSV_HEADER: [&str; 6] = ["system", "point", "ideal", "property", "status", "witness"];

impl Classification {
    pub fn verdict(&self, p: Property) -> &PropertyVerdict {
        self.verdicts
            .iter()
            .find(|v| v.property == p)
            .expect("all properties are classified")
    }

    pub fn csv_records(&self) -> Vec<[String; 6]> {
        self.verdicts
            .iter()
            .map(|v| {
                [
                    self.system.clone(),
                    self.point.clone(),
                    self.ideal.clone(),
                    v.property.to_string(),
                    v.status.to_string(),
                    v.witness.to_string(),
                ]
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions {
    pub levels: usize,
    pub threshold: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            levels: 6,
            threshold: DEFAULT_THRESHOLD,
        }
    }
}

/// `count` evenly spread targets: midpoints `(i + ½)/count` on the circle,
/// all words of length `log2 count` on the shift (`count` a power of two).
pub fn target_grid(sys: &System, count: usize) -> Result<Vec<Point>> {
    if count == 0 {
        return Err(invalid("target grid must be nonempty"));
    }
    match sys {
        System::Rotation { .. } | System::Doubling { .. } => Ok((0..count)
            .map(|i| Point::Bits(Expansion::rational(2 * i as u128 + 1, 2 * count as u128).expect("in [0,1)")))
            .collect()),
        System::Cantor { .. } if count.is_power_of_two() => {
            let len = count.trailing_zeros() as usize;
            Ok((0..count)
                .map(|i| {
                    let bits: Vec<bool> = (0..len).map(|j| i >> (len - 1 - j) & 1 == 1).collect();
                    Point::Bits(Expansion::word(&bits))
                })
                .collect())
        }
        _ => Err(invalid(format!("no default target grid of size {count} for {sys}"))),
    }
}

/// Whether the closed balls `B̄(t, radius)` cover the space. The weighted
/// shift's space is unbounded and never counts as covered.
pub fn grid_covers(sys: &System, targets: &[Point], radius: f64) -> Result<bool> {
    let states = targets.iter().map(|t| sys.state(t)).collect::<Result<Vec<_>>>()?;
    match sys {
        System::Rotation { .. } | System::Doubling { .. } => {
            let mut xs: Vec<u64> = states.iter().filter_map(State::as_word).collect();
            xs.sort_unstable();
            let Some(&first) = xs.first() else { return Ok(false) };
            let mut widest = first.wrapping_sub(*xs.last().unwrap_or(&first));
            if xs.len() == 1 {
                widest = u64::MAX;
            }
            for w in xs.windows(2) {
                widest = widest.max(w[1] - w[0]);
            }
            Ok(widest as f64 / 18_446_744_073_709_551_616.0 <= 2.0 * radius)
        }
        System::Cantor { depth, .. } => {
            let len = cylinder_prefix(radius, *depth).min(20) as u32;
            if len == 0 {
                return Ok(!states.is_empty());
            }
            let mut seen = vec![false; 1 << len];
            for s in states.iter().filter_map(State::as_word) {
                seen[(s >> (64 - len)) as usize] = true;
            }
            Ok(seen.into_iter().all(|b| b))
        }
        System::WeightedShift { .. } => Ok(false),
    }
}

/// Four finite-horizon verdicts: `I`-recurrent and `I`-universal from the
/// exh verdict at radius `r`; the strong variants from `𝔲` along
/// `r·2^{−k}`, `k < levels`.
pub fn classify(
    sys: &System,
    x: &Point,
    m: &Submeasure,
    targets: &[Point],
    radius: f64,
    horizon: usize,
    opts: ClassifyOptions,
) -> Result<Classification> {
    if targets.is_empty() {
        return Err(invalid("target grid must be nonempty"));
    }
    if !grid_covers(sys, targets, radius)? {
        return Err(Error::Precondition(format!(
            "{} targets at radius {radius} do not cover the space of {sys}",
            targets.len()
        )));
    }
    let schedule = Schedule::new(radius, opts.levels.max(2))?;
    let orbit = sys.orbit(x, horizon)?;
    let at_point = cluster_value_on(&orbit, x, x, schedule, m, opts.threshold)?;
    let reports = targets
        .par_iter()
        .map(|eta| cluster_value_on(&orbit, x, eta, schedule, m, opts.threshold))
        .collect::<Result<Vec<_>>>()?;

    let strong = |r: &ClusterReport| {
        if r.is_limit && r.is_cluster {
            Status::Positive
        } else if r.u_value < r.threshold {
            Status::Member
        } else {
            Status::Undetermined
        }
    };
    let all = |statuses: Vec<Status>| {
        if statuses.iter().all(|s| *s == Status::Positive) {
            Status::Positive
        } else if statuses.contains(&Status::Member) {
            Status::Member
        } else {
            Status::Undetermined
        }
    };
    let min_of = |f: fn(&ClusterReport) -> f64| reports.iter().map(f).fold(f64::INFINITY, f64::min);

    let verdicts = vec![
        PropertyVerdict {
            property: Property::Recurrent,
            status: at_point.cluster_verdict.status,
            witness: at_point.norms[0],
        },
        PropertyVerdict {
            property: Property::Universal,
            status: all(reports.iter().map(|r| r.cluster_verdict.status).collect()),
            witness: min_of(|r| r.norms[0]),
        },
        PropertyVerdict {
            property: Property::StrongRecurrent,
            status: strong(&at_point),
            witness: at_point.u_value,
        },
        PropertyVerdict {
            property: Property::StrongUniversal,
            status: all(reports.iter().map(strong).collect()),
            witness: min_of(|r| r.u_value),
        },
    ];
    Ok(Classification {
        system: sys.to_string(),
        point: x.to_string(),
        ideal: m.name().to_string(),
        radius,
        levels: schedule.levels,
        threshold: opts.threshold,
        at_point,
        targets: reports,
        verdicts,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CParameter {
    /// `min_k max_x ‖N(x, B(η, r_k))‖_φ`.
    pub value: f64,
    pub candidates: Vec<String>,
    pub radii: Vec<f64>,
    /// `norms[k][i]` for radius `k` and candidate `i`.
    pub norms: Vec<Vec<f64>>,
}

/// Finite inf-sup estimate of `c_φ(T, η)` over the given candidates, each of
/// which must pass [`pseudo_universal`] at the horizon.
pub fn estimate_c_parameter(
    sys: &System,
    eta: &Point,
    m: &Submeasure,
    candidates: &[Point],
    schedule: Schedule,
    horizon: usize,
) -> Result<CParameter> {
    if candidates.is_empty() {
        return Err(invalid("c-parameter needs at least one candidate point"));
    }
    let center = sys.state(eta)?;
    let radii = schedule.radii();
    let per_candidate = candidates
        .iter()
        .map(|x| {
            let orbit = sys.orbit(x, horizon)?;
            let s = pseudo_universal(&orbit);
            if !s.passed {
                return Err(Error::Precondition(format!(
                    "candidate {x} is not pseudo-universal: {}",
                    s.detail
                )));
            }
            Ok(radii
                .par_iter()
                .map(|&r| exh_norm_value(m, &orbit.return_set(&center, r)))
                .collect::<Vec<f64>>())
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let norms: Vec<Vec<f64>> = (0..radii.len())
        .map(|k| per_candidate.iter().map(|c| c[k]).collect())
        .collect();
    let value = norms
        .iter()
        .map(|row| row.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::INFINITY, f64::min);
    Ok(CParameter {
        value,
        candidates: candidates.iter().map(|c| c.to_string()).collect(),
        radii,
        norms,
    })
}

/// Upper density of `N(x, ball)` (convenience for reports and checks).
pub fn upper_density(s: &IntSet) -> f64 {
    density_or_ratio(s, DensityKind::UpperAsymptotic).value
}

/// Upper Banach density of a set.
pub fn banach_upper(s: &IntSet) -> f64 {
    if s.horizon() < 2 {
        return s.len() as f64;
    }
    density::banach(s, Side::Upper).value
}
