//! Finite-horizon subsets of the nonnegative integers.
//!
//! Every set lives in `[0, horizon)`. Infinite sets are represented by their
//! generators truncated at the horizon, so all densities and norms computed
//! downstream are prefix statistics.
//!
//! The packed representation keeps bits past the horizon cleared, which makes
//! the derived `PartialEq`/`Hash` canonical: two sets with the same horizon
//! and the same members compare equal.

use std::fmt;
use std::fs;
use std::ops::Range;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, parse_err, Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A subset of `[0, horizon)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSet {
    horizon: usize,
    words: Vec<u64>,
    len: usize,
}

impl IntSet {
    pub fn empty(horizon: usize) -> Self {
        IntSet {
            horizon,
            words: vec![0; words_for(horizon)],
            len: 0,
        }
    }

    /// `[0, horizon)` itself.
    pub fn full(horizon: usize) -> Self {
        let mut words = vec![u64::MAX; words_for(horizon)];
        if horizon % WORD != 0 {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (horizon % WORD)) - 1;
            }
        }
        IntSet {
            horizon,
            words,
            len: horizon,
        }
    }

    /// Members outside `[0, horizon)` are ignored.
    pub fn from_elements<I: IntoIterator<Item = usize>>(horizon: usize, elements: I) -> Self {
        let mut words = vec![0u64; words_for(horizon)];
        for n in elements {
            if n < horizon {
                words[n / WORD] |= 1 << (n % WORD);
            }
        }
        Self::from_words(horizon, words)
    }

    pub fn from_predicate<F: Fn(usize) -> bool>(horizon: usize, pred: F) -> Self {
        Self::from_elements(horizon, (0..horizon).filter(|&n| pred(n)))
    }

    /// Union of half-open ranges, clipped to the horizon.
    pub fn from_ranges<I: IntoIterator<Item = Range<usize>>>(horizon: usize, ranges: I) -> Self {
        let mut words = vec![0u64; words_for(horizon)];
        for r in ranges {
            let end = r.end.min(horizon);
            let mut n = r.start;
            while n < end {
                let (w, b) = (n / WORD, n % WORD);
                let span = (WORD - b).min(end - n);
                let mask = if span == WORD {
                    u64::MAX
                } else {
                    ((1u64 << span) - 1) << b
                };
                words[w] |= mask;
                n += span;
            }
        }
        Self::from_words(horizon, words)
    }

    pub(crate) fn from_words(horizon: usize, mut words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(horizon));
        if horizon % WORD != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (horizon % WORD)) - 1;
            }
        }
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        IntSet { horizon, words, len }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, n: usize) -> bool {
        n < self.horizon && (self.words[n / WORD] >> (n % WORD)) & 1 == 1
    }

    /// Members in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    /// `|S ∩ [start, end)|`.
    pub fn count_in(&self, range: Range<usize>) -> usize {
        let end = range.end.min(self.horizon);
        let start = range.start.min(end);
        if start == end {
            return 0;
        }
        let (sw, sb) = (start / WORD, start % WORD);
        let (ew, eb) = (end / WORD, end % WORD);
        if sw == ew {
            let mask = ((1u64 << (eb - sb)) - 1) << sb;
            return (self.words[sw] & mask).count_ones() as usize;
        }
        let mut count = (self.words[sw] >> sb).count_ones() as usize;
        count += self.words[sw + 1..ew]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>();
        if eb > 0 {
            count += (self.words[ew] & ((1u64 << eb) - 1)).count_ones() as usize;
        }
        count
    }

    /// `counts[t] = |S ∩ [0, t)|` for `t` in `0..=horizon`.
    pub fn prefix_counts(&self) -> Vec<u32> {
        let mut counts = Vec::with_capacity(self.horizon + 1);
        counts.push(0u32);
        let mut acc = 0u32;
        for n in 0..self.horizon {
            if (self.words[n / WORD] >> (n % WORD)) & 1 == 1 {
                acc += 1;
            }
            counts.push(acc);
        }
        counts
    }

    /// Maximal runs of consecutive members, as half-open ranges.
    pub fn intervals(&self) -> Vec<Range<usize>> {
        let mut out: Vec<Range<usize>> = Vec::new();
        for n in self.iter() {
            match out.last_mut() {
                Some(r) if r.end == n => r.end = n + 1,
                _ => out.push(n..n + 1),
            }
        }
        out
    }

    /// `S ∩ range`, same horizon.
    pub fn restrict(&self, range: Range<usize>) -> IntSet {
        let mask = IntSet::from_ranges(self.horizon, [range]);
        self.zip_words(&mask, |a, b| a & b)
    }

    /// The same members below `new_horizon`, re-homed at that horizon.
    pub fn truncate(&self, new_horizon: usize) -> IntSet {
        let mut words = vec![0u64; words_for(new_horizon)];
        let n = words.len().min(self.words.len());
        words[..n].copy_from_slice(&self.words[..n]);
        IntSet::from_words(new_horizon, words)
    }

    /// Bits `n` with `n + k ∈ S`, i.e. `S − k` restricted to `[0, horizon)`.
    pub fn shifted_down(&self, k: usize) -> IntSet {
        let words = (0..self.words.len()).map(|w| shifted_word(&self.words, w, k)).collect();
        IntSet::from_words(self.horizon, words)
    }

    /// `S + k`, clipped to the horizon.
    pub fn shifted_up(&self, k: usize) -> IntSet {
        let (q, r) = (k / WORD, k % WORD);
        let mut words = vec![0u64; self.words.len()];
        for (src, out) in words.iter_mut().skip(q).enumerate() {
            *out = self.words[src] << r;
            if r > 0 && src > 0 {
                *out |= self.words[src - 1] >> (WORD - r);
            }
        }
        IntSet::from_words(self.horizon, words)
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.horizon == other.horizon && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    fn zip_words(&self, other: &IntSet, f: impl Fn(u64, u64) -> u64) -> IntSet {
        let words = self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect();
        IntSet::from_words(self.horizon, words)
    }

    /// Text form: `horizon=<N>` then one member per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("horizon={}\n", self.horizon);
        for n in self.iter() {
            out.push_str(&n.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<IntSet> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| parse_err("missing horizon header"))?;
        let horizon = header
            .strip_prefix("horizon=")
            .ok_or_else(|| parse_err(format!("expected `horizon=<N>`, got `{header}`")))?
            .parse::<usize>()
            .map_err(|e| parse_err(format!("bad horizon: {e}")))?;
        let mut members = Vec::new();
        for l in lines {
            let n: usize = l.parse().map_err(|e| parse_err(format!("bad member `{l}`: {e}")))?;
            if n >= horizon {
                return Err(parse_err(format!("member {n} outside horizon {horizon}")));
            }
            members.push(n);
        }
        Ok(IntSet::from_elements(horizon, members))
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntSet(horizon={}, ", self.horizon)?;
        f.debug_list().entries(self.intervals()).finish()?;
        write!(f, ")")
    }
}

/// Word `w` of the bitset `S − k`.
#[inline]
fn shifted_word(words: &[u64], w: usize, k: usize) -> u64 {
    let (q, r) = (k / WORD, k % WORD);
    let src = w + q;
    let lo = words.get(src).copied().unwrap_or(0);
    if r == 0 {
        return lo;
    }
    let hi = words.get(src + 1).copied().unwrap_or(0);
    (lo >> r) | (hi << (WORD - r))
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a IntSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

fn check_same_horizon(a: &IntSet, b: &IntSet) -> Result<()> {
    if a.horizon != b.horizon {
        return Err(Error::HorizonMismatch {
            left: a.horizon,
            right: b.horizon,
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    Complement,
    Minus,
}

impl FromStr for SetOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "union" => SetOp::Union,
            "intersect" => SetOp::Intersect,
            "complement" => SetOp::Complement,
            "minus" => SetOp::Minus,
            _ => return Err(parse_err(format!("unknown set operation `{s}`"))),
        })
    }
}

/// Boolean algebra inside `[0, horizon)`. `Complement` ignores `b`.
pub fn set_algebra(op: SetOp, a: &IntSet, b: Option<&IntSet>) -> Result<IntSet> {
    if op == SetOp::Complement {
        let words = a.words.iter().map(|w| !w).collect();
        return Ok(IntSet::from_words(a.horizon, words));
    }
    let b = b.ok_or_else(|| invalid(format!("{op:?} needs a second operand")))?;
    check_same_horizon(a, b)?;
    Ok(match op {
        SetOp::Union => a.zip_words(b, |x, y| x | y),
        SetOp::Intersect => a.zip_words(b, |x, y| x & y),
        SetOp::Minus => a.zip_words(b, |x, y| x & !y),
        SetOp::Complement => unreachable!(),
    })
}

impl IntSet {
    pub fn union(&self, other: &IntSet) -> Result<IntSet> {
        set_algebra(SetOp::Union, self, Some(other))
    }

    pub fn intersect(&self, other: &IntSet) -> Result<IntSet> {
        set_algebra(SetOp::Intersect, self, Some(other))
    }

    pub fn minus(&self, other: &IntSet) -> Result<IntSet> {
        set_algebra(SetOp::Minus, self, Some(other))
    }

    pub fn complement(&self) -> IntSet {
        let words = self.words.iter().map(|w| !w).collect();
        IntSet::from_words(self.horizon, words)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffineDirection {
    /// `k·S + h`
    Forward,
    /// `(S − h) / k`, keeping exact multiples only
    Backward,
}

/// Result of an affine image together with the number of members that
/// landed outside `[0, horizon)`.
#[derive(Clone, Debug)]
pub struct AffineImage {
    pub set: IntSet,
    pub clipped: usize,
}

/// Image of `s` under `n ↦ k·n + h` (forward) or its partial inverse
/// (backward). Out-of-range images are dropped and counted in `clipped`.
pub fn affine_image_counted(s: &IntSet, k: i64, h: i64, direction: AffineDirection) -> Result<AffineImage> {
    if k <= 0 {
        return Err(invalid(format!("affine scale must be positive, got {k}")));
    }
    let horizon = s.horizon as i64;
    let mut clipped = 0;
    let mut out = Vec::with_capacity(s.len());
    match direction {
        AffineDirection::Forward => {
            for n in s.iter() {
                let m = (n as i64).checked_mul(k).and_then(|v| v.checked_add(h));
                match m {
                    Some(m) if (0..horizon).contains(&m) => out.push(m as usize),
                    _ => clipped += 1,
                }
            }
        }
        AffineDirection::Backward => {
            for n in s.iter() {
                let m = n as i64 - h;
                if !(0..horizon).contains(&m) {
                    clipped += 1;
                } else if m % k == 0 {
                    out.push((m / k) as usize);
                }
            }
        }
    }
    Ok(AffineImage {
        set: IntSet::from_elements(s.horizon, out),
        clipped,
    })
}

pub fn affine_image(s: &IntSet, k: i64, h: i64, direction: AffineDirection) -> Result<IntSet> {
    affine_image_counted(s, k, h, direction).map(|img| img.set)
}

/// `A − B = ⋃_{k ∈ B} (A − k)`, restricted to `[0, horizon)`.
///
/// Accumulates word-shifted copies of `a`. Words that are already full, or
/// that lie beyond `max A − min B`, drop out of the working list, so dense
/// inputs cost far less than the `O(|B|·N/64)` worst case.
pub fn difference_set(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    check_same_horizon(a, b)?;
    let horizon = a.horizon;
    let (Some(a_max), Some(b_min)) = (a.max(), b.min()) else {
        return Ok(IntSet::empty(horizon));
    };
    if a_max < b_min {
        return Ok(IntSet::empty(horizon));
    }
    let reach = a_max - b_min + 1;
    let n_words = words_for(reach);
    let full_mask = |w: usize| -> u64 {
        let hi = ((w + 1) * WORD).min(reach);
        let bits = hi - w * WORD;
        if bits == WORD {
            u64::MAX
        } else {
            (1u64 << bits) - 1
        }
    };

    let mut out = vec![0u64; a.words.len()];
    let mut pending: Vec<usize> = (0..n_words).collect();
    for k in b.iter() {
        if k > a_max || pending.is_empty() {
            break;
        }
        pending.retain(|&w| {
            out[w] |= shifted_word(&a.words, w, k);
            out[w] & full_mask(w) != full_mask(w)
        });
    }
    Ok(IntSet::from_words(horizon, out))
}

/// Gap statistics of a set.
///
/// Interior gaps are differences of consecutive members. The stretch before
/// the minimum and the one after the maximum are reported separately and do
/// not enter `max_gap`.
#[derive(Clone, Debug, PartialEq)]
pub struct GapProfile {
    pub horizon: usize,
    pub gaps: Vec<usize>,
    pub max_gap: Option<usize>,
    pub leading_gap: Option<usize>,
    pub trailing_gap: Option<usize>,
    pub max_interval: usize,
    pub syndetic_bound: usize,
    pub is_syndetic_at_horizon: bool,
}

impl GapProfile {
    pub fn is_empty_profile(&self) -> bool {
        self.leading_gap.is_none()
    }
}

/// Default syndeticity bound: `⌊√horizon⌋`, at least 1.
pub fn default_syndetic_bound(horizon: usize) -> usize {
    ((horizon as f64).sqrt().floor() as usize).max(1)
}

/// The set counts as syndetic at the horizon when it has two or more
/// members, `max_gap ≤ bound`, and every window `[n, n + max_gap]` with
/// `min S ≤ n` inside the horizon meets it (equivalently, the trailing
/// stretch is no longer than `max_gap`).
pub fn gap_profile(s: &IntSet, syndetic_bound: Option<usize>) -> GapProfile {
    let bound = syndetic_bound.unwrap_or_else(|| default_syndetic_bound(s.horizon));
    let mut gaps = Vec::with_capacity(s.len().saturating_sub(1));
    let mut prev: Option<usize> = None;
    let mut run = 0usize;
    let mut max_interval = 0usize;
    for n in s.iter() {
        match prev {
            Some(p) => {
                gaps.push(n - p);
                run = if n == p + 1 { run + 1 } else { 1 };
            }
            None => run = 1,
        }
        max_interval = max_interval.max(run);
        prev = Some(n);
    }
    let max_gap = gaps.iter().copied().max();
    let leading_gap = s.min();
    let trailing_gap = s.max().map(|m| s.horizon - 1 - m);
    let is_syndetic_at_horizon = match (max_gap, trailing_gap) {
        (Some(g), Some(t)) => g <= bound && t <= g,
        _ => false,
    };
    GapProfile {
        horizon: s.horizon,
        gaps,
        max_gap,
        leading_gap,
        trailing_gap,
        max_interval,
        syndetic_bound: bound,
        is_syndetic_at_horizon,
    }
}

/// A set generator in the specification mini-language.
#[derive(Clone)]
pub enum SetSpec {
    /// `ap:<k>,<h>`: `{k·j + h : j ≥ 0}`
    Progression { k: usize, h: usize },
    /// `list:<n1>,<n2>,...`
    List(Vec<usize>),
    /// `intervals:<a1>-<b1>;...`, inclusive endpoints
    Intervals(Vec<(usize, usize)>),
    /// `blocks:pow4`: `⋃_n [4^n, 2·4^n)`
    BlocksPow4,
    /// `random:<p>,<seed>`: independent membership with probability `p`
    Random { p: f64, seed: u64 },
    /// `file:<path>`: newline-delimited members
    File(PathBuf),
    /// `squares`
    Squares,
    /// `all`: every integer below the horizon
    All,
    /// Arbitrary membership predicate (library use only).
    Predicate(Arc<dyn Fn(usize) -> bool + Send + Sync>),
}

impl fmt::Debug for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetSpec({self})")
    }
}

impl fmt::Display for SetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetSpec::Progression { k, h } => write!(f, "ap:{k},{h}"),
            SetSpec::List(v) => {
                let items: Vec<String> = v.iter().map(|n| n.to_string()).collect();
                write!(f, "list:{}", items.join(","))
            }
            SetSpec::Intervals(v) => {
                let items: Vec<String> = v.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                write!(f, "intervals:{}", items.join(";"))
            }
            SetSpec::BlocksPow4 => write!(f, "blocks:pow4"),
            SetSpec::Random { p, seed } => write!(f, "random:{p},{seed}"),
            SetSpec::File(p) => write!(f, "file:{}", p.display()),
            SetSpec::Squares => write!(f, "squares"),
            SetSpec::All => write!(f, "all"),
            SetSpec::Predicate(_) => write!(f, "predicate"),
        }
    }
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|e| parse_err(format!("bad {what} `{s}`: {e}")))
}

impl FromStr for SetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(parse_err("empty set specification"));
        }
        let (head, body) = s.split_once(':').unwrap_or((s, ""));
        match head {
            "ap" => {
                let (k, h) = body
                    .split_once(',')
                    .ok_or_else(|| parse_err(format!("expected ap:<k>,<h>, got `{s}`")))?;
                let k = parse_usize(k, "progression step")?;
                if k == 0 {
                    return Err(invalid("progression step k must be positive"));
                }
                Ok(SetSpec::Progression {
                    k,
                    h: parse_usize(h, "progression offset")?,
                })
            }
            "list" => {
                let items = body
                    .split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(|t| parse_usize(t, "list member"))
                    .collect::<Result<Vec<_>>>()?;
                Ok(SetSpec::List(items))
            }
            "intervals" => {
                let mut items = Vec::new();
                for part in body.split(';').map(str::trim).filter(|t| !t.is_empty()) {
                    let (a, b) = part
                        .split_once('-')
                        .ok_or_else(|| parse_err(format!("bad interval `{part}`")))?;
                    let (a, b) = (parse_usize(a, "interval start")?, parse_usize(b, "interval end")?);
                    if a > b {
                        return Err(parse_err(format!("empty interval `{part}`")));
                    }
                    items.push((a, b));
                }
                Ok(SetSpec::Intervals(items))
            }
            "blocks" if body == "pow4" => Ok(SetSpec::BlocksPow4),
            "random" => {
                let (p, seed) = body
                    .split_once(',')
                    .ok_or_else(|| parse_err(format!("expected random:<p>,<seed>, got `{s}`")))?;
                let p: f64 = p
                    .trim()
                    .parse()
                    .map_err(|e| parse_err(format!("bad probability `{p}`: {e}")))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(invalid(format!("probability {p} outside [0,1]")));
                }
                let seed = seed
                    .trim()
                    .parse()
                    .map_err(|e| parse_err(format!("bad seed `{seed}`: {e}")))?;
                Ok(SetSpec::Random { p, seed })
            }
            "file" if !body.is_empty() => Ok(SetSpec::File(PathBuf::from(body))),
            "squares" if body.is_empty() => Ok(SetSpec::Squares),
            "all" if body.is_empty() => Ok(SetSpec::All),
            _ => Err(parse_err(format!("unknown set specification `{s}`"))),
        }
    }
}

impl SetSpec {
    pub fn build(&self, horizon: usize) -> Result<IntSet> {
        if horizon == 0 {
            return Err(invalid("horizon must be positive"));
        }
        Ok(match self {
            SetSpec::Progression { k, h } => {
                if *k == 0 {
                    return Err(invalid("progression step k must be positive"));
                }
                IntSet::from_elements(horizon, (*h..horizon).step_by(*k))
            }
            SetSpec::List(v) => IntSet::from_elements(horizon, v.iter().copied()),
            SetSpec::Intervals(v) => IntSet::from_ranges(horizon, v.iter().map(|&(a, b)| a..b.saturating_add(1))),
            SetSpec::BlocksPow4 => {
                let mut ranges = Vec::new();
                let mut start = 1usize;
                while start < horizon {
                    ranges.push(start..start * 2);
                    start = match start.checked_mul(4) {
                        Some(v) => v,
                        None => break,
                    };
                }
                IntSet::from_ranges(horizon, ranges)
            }
            SetSpec::Random { p, seed } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(invalid(format!("probability {p} outside [0,1]")));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                // One 32-bit draw per integer: member iff draw < p·2^32.
                let cut = (*p * 4_294_967_296.0).round() as u64;
                let mut words = vec![0u64; words_for(horizon)];
                let mut draws = [0u32; WORD];
                for (i, word) in words.iter_mut().enumerate() {
                    rng.fill(&mut draws[..]);
                    let live = (horizon - i * WORD).min(WORD);
                    for (b, &d) in draws[..live].iter().enumerate() {
                        *word |= u64::from(u64::from(d) < cut) << b;
                    }
                }
                IntSet::from_words(horizon, words)
            }
            SetSpec::File(path) => {
                let text = fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                let mut members = Vec::new();
                for line in text.lines().map(str::trim) {
                    if line.is_empty() || line.starts_with('#') || line.starts_with("horizon=") {
                        continue;
                    }
                    members.push(parse_usize(line, "member")?);
                }
                IntSet::from_elements(horizon, members)
            }
            SetSpec::Squares => {
                IntSet::from_elements(horizon, (0..).map(|j: usize| j * j).take_while(|&q| q < horizon))
            }
            SetSpec::All => IntSet::full(horizon),
            SetSpec::Predicate(f) => IntSet::from_predicate(horizon, |n| f(n)),
        })
    }
}

/// Parses a set specification and materializes it at `horizon`.
pub fn build(spec: &str, horizon: usize) -> Result<IntSet> {
    spec.parse::<SetSpec>()?.build(horizon)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn members(s: &IntSet) -> Vec<usize> {
        s.iter().collect()
    }

    fn brute_difference(a: &IntSet, b: &IntSet) -> IntSet {
        let mut out = Vec::new();
        for x in a.iter() {
            for k in b.iter() {
                if x >= k {
                    out.push(x - k);
                }
            }
        }
        IntSet::from_elements(a.horizon(), out)
    }

    #[test]
    fn build_examples() {
        assert_eq!(members(&build("ap:3,0", 12).unwrap()), vec![0, 3, 6, 9]);
        let blocks = build("blocks:pow4", 40).unwrap();
        let expected: Vec<usize> = [1usize].into_iter().chain(4..8).chain(16..32).collect();
        assert_eq!(members(&blocks), expected);
        assert!(build("list:", 10).unwrap().is_empty());
        assert_eq!(members(&build("intervals:2-4;8-8", 10).unwrap()), vec![2, 3, 4, 8]);
        assert_eq!(members(&build("squares", 30).unwrap()), vec![0, 1, 4, 9, 16, 25]);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(build("", 10), Err(Error::Parse(_))));
        assert!(matches!(build("ap:0,1", 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(build("random:1.5,3", 10), Err(Error::InvalidArgument(_))));
        assert!(matches!(build("random:-0.1,3", 10), Err(Error::InvalidArgument(_))));
        assert!(build("nonsense", 10).is_err());
    }

    #[test]
    fn build_is_canonical() {
        for spec in ["random:0.3,11", "blocks:pow4", "ap:7,2"] {
            assert_eq!(build(spec, 1000).unwrap(), build(spec, 1000).unwrap());
        }
        let a = IntSet::from_elements(100, [1, 5, 70]);
        let b = IntSet::from_ranges(100, [1..2, 5..6, 70..71]);
        assert_eq!(a, b);
    }

    #[test]
    fn spec_display_round_trips() {
        for spec in [
            "ap:3,1",
            "list:1,2,3",
            "intervals:1-4;9-9",
            "blocks:pow4",
            "random:0.25,7",
            "squares",
            "all",
        ] {
            assert_eq!(spec.parse::<SetSpec>().unwrap().to_string(), spec);
        }
    }

    #[test]
    fn affine_examples() {
        let s = IntSet::from_elements(12, [0, 1, 2]);
        let fwd = affine_image(&s, 2, 1, AffineDirection::Forward).unwrap();
        assert_eq!(members(&fwd), vec![1, 3, 5]);
        let back = affine_image(&fwd, 2, 1, AffineDirection::Backward).unwrap();
        assert_eq!(members(&back), vec![0, 1, 2]);

        let ap = IntSet::from_elements(12, [0, 3, 6, 9]);
        let img = affine_image_counted(&ap, 1, 3, AffineDirection::Backward).unwrap();
        assert_eq!(members(&img.set), vec![0, 3, 6]);
        assert_eq!(img.clipped, 1);

        assert!(affine_image(&ap, 0, 0, AffineDirection::Forward).is_err());
        assert_eq!(affine_image(&ap, 1, 0, AffineDirection::Forward).unwrap(), ap);
    }

    #[test]
    fn affine_forward_counts_clipped() {
        let s = IntSet::full(10);
        let img = affine_image_counted(&s, 3, 2, AffineDirection::Forward).unwrap();
        assert_eq!(members(&img.set), vec![2, 5, 8]);
        assert_eq!(img.clipped, 7);
    }

    #[test]
    fn difference_examples() {
        let evens = build("ap:2,0", 100).unwrap();
        assert_eq!(difference_set(&evens, &evens).unwrap(), evens);

        let a = IntSet::from_elements(10, [5]);
        let b = IntSet::from_elements(10, [2, 3]);
        assert_eq!(members(&difference_set(&a, &b).unwrap()), vec![2, 3]);

        let r = build("random:0.25,7", 4096).unwrap();
        let d = difference_set(&r, &r).unwrap();
        assert_eq!(d, brute_difference(&r, &r));
        assert!(gap_profile(&d, None).max_gap.unwrap() <= 4);
    }

    #[test]
    fn difference_with_zero_is_identity() {
        let a = build("random:0.1,3", 3000).unwrap();
        let zero = IntSet::from_elements(3000, [0]);
        assert_eq!(difference_set(&a, &zero).unwrap(), a);
    }

    #[test]
    fn difference_mismatched_horizons() {
        let a = IntSet::empty(10);
        let b = IntSet::empty(11);
        assert!(matches!(difference_set(&a, &b), Err(Error::HorizonMismatch { .. })));
    }

    #[test]
    fn difference_contains_zero_iff_nonempty() {
        let a = IntSet::from_elements(50, [17]);
        assert!(difference_set(&a, &a).unwrap().contains(0));
        let e = IntSet::empty(50);
        assert!(difference_set(&e, &e).unwrap().is_empty());
    }

    #[test]
    fn algebra_examples() {
        let a = IntSet::from_elements(5, [0, 1]);
        let b = IntSet::from_elements(5, [1, 2]);
        assert_eq!(
            members(&set_algebra(SetOp::Union, &a, Some(&b)).unwrap()),
            vec![0, 1, 2]
        );
        let blocks = build("blocks:pow4", 32).unwrap();
        let comp = set_algebra(SetOp::Complement, &blocks, None).unwrap();
        assert_eq!(members(&comp), vec![0, 2, 3, 8, 9, 10, 11, 12, 13, 14, 15]);
        let i = set_algebra(
            SetOp::Intersect,
            &build("ap:2,0", 30).unwrap(),
            Some(&build("ap:3,0", 30).unwrap()),
        )
        .unwrap();
        assert_eq!(members(&i), vec![0, 6, 12, 18, 24]);
        assert!(set_algebra(SetOp::Union, &a, None).is_err());
        assert!(set_algebra(SetOp::Minus, &a, Some(&IntSet::empty(6))).is_err());
    }

    #[test]
    fn gap_examples() {
        let g = gap_profile(&build("ap:3,0", 30).unwrap(), None);
        assert_eq!(g.max_gap, Some(3));
        assert!(g.is_syndetic_at_horizon);

        let single = gap_profile(&IntSet::from_elements(10, [5]), None);
        assert_eq!(single.max_gap, None);
        assert_eq!(single.leading_gap, Some(5));
        assert_eq!(single.trailing_gap, Some(4));
        assert!(!single.is_syndetic_at_horizon);

        let empty = gap_profile(&IntSet::empty(10), None);
        assert!(empty.is_empty_profile());
        assert!(!empty.is_syndetic_at_horizon);
    }

    #[test]
    fn blocks_and_complement_are_not_syndetic() {
        let n = 1 << 20;
        let blocks = build("blocks:pow4", n).unwrap();
        let comp = blocks.complement();
        assert!(!gap_profile(&blocks, None).is_syndetic_at_horizon);
        assert!(!gap_profile(&comp, None).is_syndetic_at_horizon);
        let union = blocks.union(&comp).unwrap();
        assert_eq!(union, IntSet::full(n));
        assert!(gap_profile(&union, None).is_syndetic_at_horizon);
    }

    #[test]
    fn max_interval_and_intervals() {
        let s = build("intervals:3-5;10-19", 30).unwrap();
        assert_eq!(s.intervals(), vec![3..6, 10..20]);
        assert_eq!(gap_profile(&s, None).max_interval, 10);
    }

    #[test]
    fn counts_and_shifts() {
        let s = build("random:0.4,5", 1000).unwrap();
        let brute = |a: usize, b: usize| s.iter().filter(|n| (a..b).contains(n)).count();
        for (a, b) in [(0, 1000), (3, 64), (63, 65), (64, 128), (100, 999), (500, 500)] {
            assert_eq!(s.count_in(a..b), brute(a, b));
        }
        let pc = s.prefix_counts();
        assert_eq!(pc[1000] as usize, s.len());
        for k in [0, 1, 63, 64, 65, 200] {
            let down: Vec<usize> = s.iter().filter(|&n| n >= k).map(|n| n - k).collect();
            assert_eq!(members(&s.shifted_down(k)), down);
            let up: Vec<usize> = s.iter().map(|n| n + k).filter(|&n| n < 1000).collect();
            assert_eq!(members(&s.shifted_up(k)), up);
        }
    }

    #[test]
    fn text_round_trip() {
        let s = build("random:0.05,1", 500).unwrap();
        assert_eq!(IntSet::from_text(&s.to_text()).unwrap(), s);
        assert!(IntSet::from_text("horizon=5\n7\n").is_err());
    }

    #[test]
    fn file_spec_reads_members() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("set.txt");
        fs::write(&path, "3\n1\n\n40\n").unwrap();
        let s = build(&format!("file:{}", path.display()), 20).unwrap();
        assert_eq!(members(&s), vec![1, 3]);
    }
}
