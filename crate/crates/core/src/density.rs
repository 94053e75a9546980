//! Finite-horizon estimators for asymptotic, Banach and logarithmic densities.
//!
//! All estimators read the prefix densities `δ(t) = |S ∩ [0,t)| / t` on the
//! schedule `P = {2^j : t₀ ≤ 2^j ≤ N} ∪ {N}` with `t₀ = ⌈N^{2/3}⌉`, plus
//! maximal window counts. On every set
//!
//! ```text
//! logarithmic_upper ≤ asymptotic(upper) ≤ banach(upper)
//! ```
//!
//! holds exactly, mirroring `ld⋆ ≤ d⋆ ≤ bd⋆`:
//!
//! * the logarithmic estimate is a `dt/t`-weighted mean of `δ` over `P`,
//!   the dyadic quadrature of `ld⋆ = limsup (1/log n)∫ δ(t) dt/t`;
//! * the asymptotic estimate is the maximum of `δ` over `P`;
//! * the Banach estimate ranges over a window family that contains those
//!   prefixes, together with all sliding windows of the scheduled lengths.
//!
//! The tail start discards prefixes too short to carry density information;
//! without it any set containing 0 would have upper density 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error};
use crate::intset::IntSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DensityKind {
    UpperAsymptotic,
    LowerAsymptotic,
    UpperBanach,
    LowerBanach,
    UpperLogarithmic,
}

impl DensityKind {
    pub const ALL: [DensityKind; 5] = [
        DensityKind::UpperAsymptotic,
        DensityKind::LowerAsymptotic,
        DensityKind::UpperBanach,
        DensityKind::LowerBanach,
        DensityKind::UpperLogarithmic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DensityKind::UpperAsymptotic => "upper_asymptotic",
            DensityKind::LowerAsymptotic => "lower_asymptotic",
            DensityKind::UpperBanach => "upper_banach",
            DensityKind::LowerBanach => "lower_banach",
            DensityKind::UpperLogarithmic => "upper_logarithmic",
        }
    }
}

impl fmt::Display for DensityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DensityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        DensityKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| parse_err(format!("unknown density kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// How a finite-horizon value relates to the limit it estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bias {
    /// Never below the limit for the estimated quantity (window maxima).
    Over,
    /// Never above the limit.
    Under,
    /// No monotone relation in general; exact only for sets with a limit.
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityEstimate {
    pub value: f64,
    pub kind: DensityKind,
    pub horizon: usize,
    /// Smallest prefix or window length the estimate looked at.
    pub window_min: usize,
    /// Largest prefix or window length the estimate looked at.
    pub window_max: usize,
    pub schedule: String,
    pub bias: Bias,
}

/// First prefix length of the estimation tail, `⌈N^{2/3}⌉`.
pub fn tail_start(horizon: usize) -> usize {
    let t = (horizon as f64).powf(2.0 / 3.0).ceil() as usize;
    t.clamp(1, horizon.saturating_sub(1).max(1))
}

/// Sliding-window lengths: powers of two in `[t₀, N/4]`, or the largest
/// power of two not above `N/4` when that range is empty.
pub fn banach_windows(horizon: usize) -> Vec<usize> {
    let cap = (horizon / 4).max(1);
    let largest = 1usize << (usize::BITS - 1 - cap.leading_zeros());
    let t0 = tail_start(horizon);
    let mut out: Vec<usize> = (0..usize::BITS)
        .map(|j| 1usize << j)
        .take_while(|&w| w <= cap)
        .filter(|&w| w >= t0)
        .collect();
    if out.is_empty() {
        out.push(largest);
    }
    out
}

/// Prefix lengths `P`, increasing and ending at `horizon`.
pub fn prefix_schedule(horizon: usize) -> Vec<usize> {
    let t0 = tail_start(horizon);
    let mut out: Vec<usize> = (0..usize::BITS)
        .map(|j| 1usize << j)
        .take_while(|&t| t <= horizon)
        .filter(|&t| t >= t0)
        .collect();
    if out.last() != Some(&horizon) {
        out.push(horizon);
    }
    out
}

struct PrefixTail {
    first: usize,
    max: f64,
    min: f64,
}

/// `count(t)` is `|S ∩ [0, t)|`.
fn prefix_tail(count: impl Fn(usize) -> usize, horizon: usize) -> PrefixTail {
    let schedule = prefix_schedule(horizon);
    let mut max = f64::NEG_INFINITY;
    let mut min = f64::INFINITY;
    for &t in &schedule {
        let d = count(t) as f64 / t as f64;
        max = max.max(d);
        min = min.min(d);
    }
    PrefixTail {
        first: schedule[0],
        max,
        min,
    }
}

fn check_horizon(s: &IntSet) {
    assert!(s.horizon() >= 2, "density estimates need horizon >= 2");
}

/// Upper or lower asymptotic density: extreme of `δ(t)` over `t ∈ [t₀, N]`.
pub fn asymptotic(s: &IntSet, side: Side) -> DensityEstimate {
    check_horizon(s);
    let n = s.horizon();
    let tail = prefix_tail(|t| s.count_in(0..t), n);
    let (value, kind) = match side {
        Side::Upper => (tail.max, DensityKind::UpperAsymptotic),
        Side::Lower => (tail.min, DensityKind::LowerAsymptotic),
    };
    DensityEstimate {
        value,
        kind,
        horizon: n,
        window_min: tail.first,
        window_max: n,
        schedule: format!("prefixes 2^j in [{}, {n}] and {n}", tail.first),
        bias: Bias::Unknown,
    }
}

/// `max_k |S ∩ [k, k+w)|` for each length `w`.
fn max_window_counts(counts: &[u32], lengths: &[usize]) -> Vec<u32> {
    let n = counts.len() - 1;
    lengths
        .iter()
        .map(|&w| (0..=n - w).map(|k| counts[k + w] - counts[k]).max().unwrap_or(0))
        .collect()
}

fn banach_upper_from_counts(counts: &[u32], horizon: usize) -> (f64, usize, usize) {
    let windows = banach_windows(horizon);
    let maxima = max_window_counts(counts, &windows);
    // The maximal window count is subadditive in the length, so the ratio at
    // the longest window is the smallest; keep the minimum over the schedule.
    let sliding = windows
        .iter()
        .zip(&maxima)
        .map(|(&w, &m)| m as f64 / w as f64)
        .fold(f64::INFINITY, f64::min);
    let prefixes = prefix_tail(|t| counts[t] as usize, horizon).max;
    let value = sliding.max(prefixes);
    (value, windows[0], *windows.last().unwrap())
}

/// Upper Banach density over sliding windows of the scheduled lengths and the
/// tail prefixes; lower Banach density as `1 − upper(complement)`.
pub fn banach(s: &IntSet, side: Side) -> DensityEstimate {
    check_horizon(s);
    let n = s.horizon();
    let (value, kind, lo, hi) = match side {
        Side::Upper => {
            let (v, lo, hi) = banach_upper_from_counts(&s.prefix_counts(), n);
            (v, DensityKind::UpperBanach, lo, hi)
        }
        Side::Lower => {
            let (v, lo, hi) = banach_upper_from_counts(&s.complement().prefix_counts(), n);
            (1.0 - v, DensityKind::LowerBanach, lo, hi)
        }
    };
    DensityEstimate {
        value: value.clamp(0.0, 1.0),
        kind,
        horizon: n,
        window_min: lo,
        window_max: hi,
        schedule: format!(
            "sliding windows of length 2^j in [{lo}, {hi}] and prefixes 2^j in [{}, {n}]",
            prefix_schedule(n)[0]
        ),
        bias: match side {
            Side::Upper => Bias::Over,
            Side::Lower => Bias::Under,
        },
    }
}

/// Neumaier-compensated running sum.
#[derive(Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Upper logarithmic density: for each end point `e ∈ P` with
/// `e ≥ √(t₀·N)`, the mean of `δ(p_i)` over `p_i ∈ P`, `p_0 < p_i ≤ e`, with
/// weights `log(p_i / p_{i−1})`; the estimate is the largest such mean.
pub fn logarithmic_upper(s: &IntSet) -> DensityEstimate {
    let n = s.horizon();
    assert!(n >= 3, "logarithmic density needs horizon >= 3");
    let schedule = prefix_schedule(n);
    let delta = |t: usize| s.count_in(0..t) as f64 / t as f64;
    let first_end = ((schedule[0] as f64) * (n as f64)).sqrt();

    let mut num = CompensatedSum::default();
    let mut den = CompensatedSum::default();
    let mut best = f64::NEG_INFINITY;
    for w in schedule.windows(2) {
        let weight = (w[1] as f64 / w[0] as f64).ln();
        num.add(weight * delta(w[1]));
        den.add(weight);
        if w[1] as f64 >= first_end {
            best = best.max(num.value() / den.value());
        }
    }
    if schedule.len() == 1 {
        best = delta(n);
    }
    DensityEstimate {
        value: best.clamp(0.0, 1.0),
        kind: DensityKind::UpperLogarithmic,
        horizon: n,
        window_min: schedule[0],
        window_max: n,
        schedule: format!("log-weighted prefixes 2^j in [{}, {n}] and {n}", schedule[0]),
        bias: Bias::Unknown,
    }
}

/// Dispatch on a density kind.
pub fn estimate(s: &IntSet, kind: DensityKind) -> DensityEstimate {
    match kind {
        DensityKind::UpperAsymptotic => asymptotic(s, Side::Upper),
        DensityKind::LowerAsymptotic => asymptotic(s, Side::Lower),
        DensityKind::UpperBanach => banach(s, Side::Upper),
        DensityKind::LowerBanach => banach(s, Side::Lower),
        DensityKind::UpperLogarithmic => logarithmic_upper(s),
    }
}

/// The CSV header for density rows.
pub const CSV_HEADER: [&str; 6] = ["set_spec", "kind", "horizon", "value", "window_min", "window_max"];

impl DensityEstimate {
    pub fn csv_record(&self, set_spec: &str) -> [String; 6] {
        [
            set_spec.to_string(),
            self.kind.to_string(),
            self.horizon.to_string(),
            format!("{}", self.value),
            self.window_min.to_string(),
            self.window_max.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intset::build;

    /// `|blocks ∩ [0, 2^{2m+1})| / 2^{2m+1} = (4^{m+1} − 1) / (3·2^{2m+1})`.
    fn blocks_prefix_oracle(m: u32) -> f64 {
        (4f64.powi(m as i32 + 1) - 1.0) / (3.0 * 2f64.powi(2 * m as i32 + 1))
    }

    #[test]
    fn asymptotic_examples() {
        let ap = build("ap:3,0", 1_000_000).unwrap();
        assert!((asymptotic(&ap, Side::Upper).value - 1.0 / 3.0).abs() < 1e-3);
        assert!((asymptotic(&ap, Side::Lower).value - 1.0 / 3.0).abs() < 1e-3);

        let blocks = build("blocks:pow4", 1 << 21).unwrap();
        let oracle = blocks_prefix_oracle(10);
        let counts = blocks.prefix_counts();
        assert!((counts[1 << 21] as f64 / (1u64 << 21) as f64 - oracle).abs() < 1e-12);
        let up = asymptotic(&blocks, Side::Upper).value;
        assert!((up - 2.0 / 3.0).abs() < 0.01, "{up}");
        let low = asymptotic(&blocks, Side::Lower).value;
        assert!((low - 1.0 / 3.0).abs() < 0.01, "{low}");

        let empty = IntSet::empty(1000);
        assert_eq!(asymptotic(&empty, Side::Upper).value, 0.0);
    }

    #[test]
    fn banach_examples() {
        let ap = build("ap:3,0", 1_000_000).unwrap();
        assert!((banach(&ap, Side::Upper).value - 1.0 / 3.0).abs() < 1e-3);

        let blocks = build("blocks:pow4", 1 << 21).unwrap();
        assert!(banach(&blocks, Side::Upper).value >= 0.999);
        assert!(banach(&blocks, Side::Lower).value <= 1e-3);
    }

    #[test]
    fn extremes_are_exact() {
        for n in [2usize, 3, 10, 1000, 4096] {
            let full = IntSet::full(n);
            let empty = IntSet::empty(n);
            for kind in DensityKind::ALL {
                if kind == DensityKind::UpperLogarithmic && n < 3 {
                    continue;
                }
                assert_eq!(estimate(&full, kind).value, 1.0, "{kind} of ω at {n}");
                assert_eq!(estimate(&empty, kind).value, 0.0, "{kind} of ∅ at {n}");
            }
        }
    }

    #[test]
    fn logarithmic_examples() {
        let full = IntSet::full(1_000_000);
        assert!((logarithmic_upper(&full).value - 1.0).abs() < 0.01);
        let evens = build("ap:2,0", 1_000_000).unwrap();
        assert!((logarithmic_upper(&evens).value - 0.5).abs() < 0.02);
        let blocks = build("blocks:pow4", 1 << 21).unwrap();
        let v = logarithmic_upper(&blocks).value;
        assert!((v - 0.5).abs() < 0.05, "{v}");
    }

    #[test]
    fn logarithmic_tracks_harmonic_mass() {
        // Oracle: harmonic mass of S on [t₀, N) over that of ω.
        for spec in ["random:0.3,9", "ap:5,1", "blocks:pow4"] {
            let s = build(spec, 1 << 20).unwrap();
            let t0 = tail_start(1 << 20);
            let mut mass_s = 0.0;
            let mut mass_w = 0.0;
            for k in t0..1 << 20 {
                mass_w += 1.0 / (k as f64 + 1.0);
                if s.contains(k) {
                    mass_s += 1.0 / (k as f64 + 1.0);
                }
            }
            let est = logarithmic_upper(&s).value;
            assert!(est + 0.05 >= mass_s / mass_w, "{spec}: {est} vs {}", mass_s / mass_w);
            assert!(est <= asymptotic(&s, Side::Upper).value, "{spec}");
        }
    }

    #[test]
    fn prefix_schedule_shape() {
        assert_eq!(prefix_schedule(1 << 12), vec![256, 512, 1024, 2048, 4096]);
        assert_eq!(prefix_schedule(1000), vec![128, 256, 512, 1000]);
        assert_eq!(prefix_schedule(3), vec![2, 3]);
    }

    #[test]
    fn window_schedule() {
        assert_eq!(
            banach_windows(1 << 20),
            vec![1 << 14, 1 << 15, 1 << 16, 1 << 17, 1 << 18]
        );
        assert_eq!(banach_windows(8), vec![2]);
        assert_eq!(banach_windows(2), vec![1]);
    }

    #[test]
    fn kind_parsing() {
        for k in DensityKind::ALL {
            assert_eq!(k.as_str().parse::<DensityKind>().unwrap(), k);
        }
        assert!("median".parse::<DensityKind>().is_err());
    }
}
