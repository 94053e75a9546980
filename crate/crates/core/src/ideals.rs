//! Lower semicontinuous submeasures, exhaustive norms and ideal membership.
//!
//! A submeasure `φ` generates two ideals: `Fin(φ) = {S : φ(S) < ∞}` and
//! `Exh(φ) = {S : ‖S‖_φ = 0}` with `‖S‖_φ = inf_F φ(S ∖ F)` over finite `F`.
//!
//! For monotone `φ` the infimum may be taken along initial segments: any
//! finite `F` satisfies `F ⊆ [0, max F]`, hence `S ∖ [0, max F] ⊆ S ∖ F` and
//! `φ(S ∖ [0, max F]) ≤ φ(S ∖ F)`. At a finite horizon the cutoffs are the
//! dyadic points `2^j − 1` that still leave the last two complete dyadic
//! blocks `[2^{J−2}, 2^J)` (with `2^J ≤ N`) in the tail; the sequence of
//! tail values is nonincreasing and the norm is its last entry.
//!
//! Verdicts are three-valued: a finite prefix cannot decide membership in an
//! ideal, so every verdict records the threshold and witness it used.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use log::warn;

use crate::density::CompensatedSum;
use crate::error::{invalid, parse_err, Error, Result};
use crate::intset::{affine_image, AffineDirection, IntSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubmeasureKind {
    Summable,
    Matrix,
    Nu,
    Custom,
}

/// Weight sequence `(a_n)` of a summable submeasure.
#[derive(Clone, Debug, PartialEq)]
pub enum Weights {
    /// `a_n = c`
    Constant(f64),
    /// `a_n = 1/(n+1)`
    Harmonic,
    /// Explicit weights; indices past the end reuse the last weight.
    Explicit(Vec<f64>),
}

impl Weights {
    fn get(&self, n: usize) -> f64 {
        match self {
            Weights::Constant(c) => *c,
            Weights::Harmonic => 1.0 / (n as f64 + 1.0),
            Weights::Explicit(v) => v.get(n).or(v.last()).copied().unwrap_or(0.0),
        }
    }
}

type Evaluator = Arc<dyn Fn(&IntSet) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Summable(Weights),
    /// Stored rows of a nonnegative regular matrix.
    Matrix(Arc<Vec<Vec<f64>>>),
    Nu,
    Custom(Evaluator),
}

/// A lower semicontinuous submeasure evaluated on finite-horizon sets.
#[derive(Clone)]
pub struct Submeasure {
    name: String,
    repr: Repr,
}

impl fmt::Debug for Submeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submeasure({})", self.name)
    }
}

impl fmt::Display for Submeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Regularity tolerance on stored matrix row sums.
pub const MATRIX_ROW_TOLERANCE: f64 = 1e-6;

impl Submeasure {
    /// `φ(S) = |S|`; `Fin(φ) = Fin`.
    pub fn counting() -> Self {
        Submeasure {
            name: "counting".into(),
            repr: Repr::Summable(Weights::Constant(1.0)),
        }
    }

    /// `φ(S) = Σ_{n∈S} 1/(n+1)`.
    pub fn harmonic() -> Self {
        Submeasure {
            name: "summable:harmonic".into(),
            repr: Repr::Summable(Weights::Harmonic),
        }
    }

    /// `φ(S) = Σ_{n∈S} a_n`. Negative weights are rejected; apparent
    /// convergence of the weight series only triggers a warning, since
    /// divergence cannot be decided from finitely many terms.
    pub fn summable(name: impl Into<String>, weights: Weights) -> Result<Self> {
        match &weights {
            Weights::Constant(c) if !(*c > 0.0 && c.is_finite()) => {
                return Err(invalid(format!("constant weight must be positive, got {c}")));
            }
            Weights::Explicit(v) => {
                if let Some(w) = v.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
                    return Err(invalid(format!("negative or non-finite weight {w}")));
                }
                if v.is_empty() {
                    return Err(invalid("empty weight sequence"));
                }
                let half = v.len() / 2;
                let tail: f64 = v[half..].iter().sum();
                let total: f64 = v.iter().sum();
                if v.len() >= 8 && tail < 1e-3 * total.max(1e-300) {
                    warn!("weight series looks convergent: tail mass {tail:e} of {total:e}");
                }
            }
            _ => {}
        }
        Ok(Submeasure {
            name: name.into(),
            repr: Repr::Summable(weights),
        })
    }

    /// `ν(S) = sup_n |S ∩ [2^n, 2^{n+1})| / 2^n`; `Exh(ν)` is the density-zero ideal.
    pub fn nu() -> Self {
        Submeasure {
            name: "nu".into(),
            repr: Repr::Nu,
        }
    }

    /// `φ(S) = sup_n Σ_{k∈S} a_{n,k}` over the stored rows.
    pub fn matrix(name: impl Into<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(invalid("matrix submeasure needs at least one row"));
        }
        for (i, row) in rows.iter().enumerate() {
            if let Some(w) = row.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
                return Err(invalid(format!("row {i}: negative or non-finite entry {w}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > MATRIX_ROW_TOLERANCE {
                return Err(invalid(format!("row {i}: sum {sum} is not 1 (matrix not regular)")));
            }
        }
        Ok(Submeasure {
            name: name.into(),
            repr: Repr::Matrix(Arc::new(rows)),
        })
    }

    /// Cesàro matrix `a_{n,k} = 1/(n+1)` for `k ≤ n`, rows `0..rows`.
    pub fn cesaro(rows: usize) -> Self {
        let m = (0..rows).map(|n| vec![1.0 / (n as f64 + 1.0); n + 1]).collect();
        Submeasure {
            name: format!("matrix:cesaro{rows}"),
            repr: Repr::Matrix(Arc::new(m)),
        }
    }

    /// Caller-supplied evaluator. The lscsm axioms are the caller's
    /// responsibility; [`check_axioms`] can spot-check them.
    pub fn custom<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(&IntSet) -> f64 + Send + Sync + 'static,
    {
        Submeasure {
            name: name.into(),
            repr: Repr::Custom(Arc::new(f)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SubmeasureKind {
        match self.repr {
            Repr::Summable(_) => SubmeasureKind::Summable,
            Repr::Matrix(_) => SubmeasureKind::Matrix,
            Repr::Nu => SubmeasureKind::Nu,
            Repr::Custom(_) => SubmeasureKind::Custom,
        }
    }

    /// Largest `a_n` over `n < horizon`, for summable submeasures.
    pub fn max_weight(&self, horizon: usize) -> Option<f64> {
        match &self.repr {
            Repr::Summable(Weights::Constant(c)) => Some(*c),
            Repr::Summable(Weights::Harmonic) => Some(1.0),
            Repr::Summable(w) => (0..horizon).map(|n| w.get(n)).reduce(f64::max),
            _ => None,
        }
    }

    /// Exact evaluation of `φ` on the truncated set.
    pub fn eval(&self, s: &IntSet) -> f64 {
        match &self.repr {
            Repr::Summable(Weights::Constant(c)) => *c * s.len() as f64,
            Repr::Summable(w) => {
                let mut acc = CompensatedSum::default();
                for n in s.iter() {
                    acc.add(w.get(n));
                }
                acc.value()
            }
            Repr::Nu => {
                let mut best = 0.0f64;
                let mut lo = 1usize;
                while lo < s.horizon() {
                    let hi = lo * 2;
                    let c = s.count_in(lo..hi);
                    best = best.max(c as f64 / lo as f64);
                    lo = hi;
                }
                best
            }
            Repr::Matrix(rows) => rows
                .iter()
                .map(|row| {
                    let mut acc = CompensatedSum::default();
                    for k in s.iter().take_while(|&k| k < row.len()) {
                        acc.add(row[k]);
                    }
                    acc.value()
                })
                .fold(0.0, f64::max),
            Repr::Custom(f) => f(s),
        }
    }

    /// Parses `counting | summable:harmonic | summable:file=<path> | nu |
    /// matrix:file=<path>`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "counting" => return Ok(Submeasure::counting()),
            "summable:harmonic" => return Ok(Submeasure::harmonic()),
            "nu" => return Ok(Submeasure::nu()),
            _ => {}
        }
        if let Some(path) = spec.strip_prefix("summable:file=") {
            let weights = read_floats(Path::new(path))?;
            return Submeasure::summable(spec, Weights::Explicit(weights.concat()));
        }
        if let Some(path) = spec.strip_prefix("matrix:file=") {
            let rows = read_floats(Path::new(path))?;
            return Submeasure::matrix(spec, rows);
        }
        if let Some(rows) = spec.strip_prefix("matrix:cesaro") {
            let rows: usize = rows
                .parse()
                .map_err(|e| parse_err(format!("bad Cesàro row count `{rows}`: {e}")))?;
            return Ok(Submeasure::cesaro(rows));
        }
        Err(parse_err(format!("unknown submeasure `{spec}`")))
    }
}

impl FromStr for Submeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Submeasure::from_spec(s)
    }
}

/// One row of comma-separated floats per nonblank line.
fn read_floats(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: PathBuf::from(path),
        source,
    })?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|e| parse_err(format!("bad number `{t}`: {e}")))
                })
                .collect()
        })
        .collect()
}

pub fn make_submeasure(spec: &str) -> Result<Submeasure> {
    Submeasure::from_spec(spec)
}

pub fn phi_eval(m: &Submeasure, s: &IntSet) -> f64 {
    m.eval(s)
}

/// Tail cutoffs `c` (the removed segment is `[0, c]`) used by [`exh_norm`].
pub fn exh_cutoffs(horizon: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut j = 0u32;
    while j < usize::BITS - 2 && (1usize << (j + 2)) <= horizon {
        out.push((1usize << j) - 1);
        j += 1;
    }
    out
}

/// `‖S‖_φ` at the horizon, with the tail sequence it was read from.
#[derive(Clone, Debug, PartialEq)]
pub struct ExhNorm {
    pub value: f64,
    /// Cutoff `c` attaining the minimum, `None` when no cutoff applies.
    pub cutoff: Option<usize>,
    /// `φ(S)` followed by `φ(S ∖ [0,c])` for every scheduled `c`.
    pub tail: Vec<(Option<usize>, f64)>,
}

pub fn exh_norm(m: &Submeasure, s: &IntSet) -> ExhNorm {
    let mut tail = vec![(None, m.eval(s))];
    for c in exh_cutoffs(s.horizon()) {
        let rest = s.restrict(c + 1..s.horizon());
        tail.push((Some(c), m.eval(&rest)));
    }
    let (cutoff, value) = tail.iter().copied().fold(
        (None, f64::INFINITY),
        |best, (c, v)| if v <= best.1 { (c, v) } else { best },
    );
    ExhNorm { value, cutoff, tail }
}

/// Just the value of `‖S‖_φ`; evaluates only the largest cutoff.
pub fn exh_norm_value(m: &Submeasure, s: &IntSet) -> f64 {
    tail_value(m, s, exh_cutoffs(s.horizon()).last().copied())
}

/// `φ(S ∖ [0, c])`, or `φ(S)` without a cutoff.
fn tail_value(m: &Submeasure, s: &IntSet, cutoff: Option<usize>) -> f64 {
    match cutoff {
        Some(c) if c + 1 >= s.horizon() => 0.0,
        Some(c) => m.eval(&s.restrict(c + 1..s.horizon())),
        None => m.eval(s),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Fin,
    Exh,
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fin" => Ok(Regime::Fin),
            "exh" => Ok(Regime::Exh),
            _ => Err(parse_err(format!("unknown regime `{s}`"))),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Fin => "fin",
            Regime::Exh => "exh",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    /// Evidence that the set lies in the ideal.
    Member,
    /// Evidence that the set is positive (outside the ideal).
    Positive,
    Undetermined,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Member => "member",
            Status::Positive => "positive",
            Status::Undetermined => "undetermined",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipVerdict {
    pub status: Status,
    pub regime: Regime,
    /// `φ(S)` in the fin regime, `‖S‖_φ` in the exh regime.
    pub witness: f64,
    /// The same statistic one stability step earlier.
    pub previous: f64,
    pub threshold: f64,
    pub horizon: usize,
}

/// Finite-horizon membership evidence.
///
/// * `fin`: member when `φ(S) < threshold` and `φ` did not grow over the last
///   quarter of the horizon; positive when `φ(S) ≥ threshold` and `φ` was
///   still growing there; undetermined otherwise.
/// * `exh`: member when `‖S‖_φ < threshold`; positive when both `‖S‖_φ` and
///   the norm of `S ∩ [0, N/2)` at horizon `N/2` reach the threshold;
///   undetermined otherwise.
pub fn membership_verdict(m: &Submeasure, regime: Regime, s: &IntSet, threshold: f64) -> Result<MembershipVerdict> {
    if !(threshold > 0.0) {
        return Err(invalid(format!("threshold must be positive, got {threshold}")));
    }
    let n = s.horizon();
    let (witness, previous, status) = match regime {
        Regime::Fin => {
            let now = m.eval(s);
            let before = m.eval(&s.restrict(0..n - n / 4));
            let grew = now > before;
            let status = if now < threshold && !grew {
                Status::Member
            } else if now >= threshold && grew {
                Status::Positive
            } else {
                Status::Undetermined
            };
            (now, before, status)
        }
        Regime::Exh => {
            let now = exh_norm_value(m, s);
            let half = exh_norm_value(m, &s.truncate((n / 2).max(1)));
            let status = if now < threshold {
                Status::Member
            } else if half >= threshold {
                Status::Positive
            } else {
                Status::Undetermined
            };
            (now, half, status)
        }
    };
    Ok(MembershipVerdict {
        status,
        regime,
        witness,
        previous,
        threshold,
        horizon: n,
    })
}

/// Least `i` with `‖S‖_φ > 2^{-i}`; `None` when the norm vanishes.
pub fn furstenberg_level(m: &Submeasure, s: &IntSet) -> Option<u32> {
    level_of(exh_norm_value(m, s))
}

pub(crate) fn level_of(norm: f64) -> Option<u32> {
    if !(norm > 0.0) {
        return None;
    }
    (0..1100).find(|&i| norm > 2f64.powi(-(i as i32)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    /// Smallest ratio `‖S − k‖ / ‖S‖` over pairs with `‖S‖ > 0`.
    pub c: f64,
    /// `(sample index, shift, ratio)`; `None` ratio when `‖S‖ = 0`.
    pub ratios: Vec<(usize, i64, Option<f64>)>,
}

/// Empirical constant of strong right-translation invariance,
/// `‖S − k‖_φ ≥ c‖S‖_φ`. Negative shifts translate to the right.
///
/// The tail of `S − k` is read at the cutoff moved by `k`, so that
/// `(S − k) ∖ [0, c − k] = (S ∖ [0, c]) − k` and both norms see the same
/// members. Reading both at the same cutoff would charge the finite
/// horizon for up to `|k|` members near the cutoff.
pub fn invariance_check(m: &Submeasure, samples: &[IntSet], shifts: &[i64]) -> Result<InvarianceReport> {
    if samples.is_empty() || shifts.is_empty() {
        return Err(invalid("invariance check needs samples and shifts"));
    }
    let mut ratios = Vec::with_capacity(samples.len() * shifts.len());
    let mut c = f64::INFINITY;
    for (i, s) in samples.iter().enumerate() {
        let cutoff = exh_cutoffs(s.horizon()).last().copied();
        let base = tail_value(m, s, cutoff);
        for &k in shifts {
            let shifted = affine_image(s, 1, k, AffineDirection::Backward)?;
            // `None` stands for the cutoff −1, i.e. nothing removed.
            let moved = match cutoff {
                Some(c) => {
                    let c = c as i64 - k;
                    (c >= 0).then_some(c as usize)
                }
                None if k < 0 => Some((-k - 1) as usize),
                None => None,
            };
            let ratio = (base > 0.0).then(|| tail_value(m, &shifted, moved) / base);
            if let Some(r) = ratio {
                c = c.min(r);
            }
            ratios.push((i, k, ratio));
        }
    }
    Ok(InvarianceReport { c, ratios })
}

/// Counts of lscsm axiom violations on sampled pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomViolations {
    pub empty: usize,
    pub monotone: usize,
    pub subadditive: usize,
    pub finite: usize,
}

impl AxiomViolations {
    pub fn total(&self) -> usize {
        self.empty + self.monotone + self.subadditive + self.finite
    }
}

/// Spot-checks `φ(∅)=0`, monotonicity, subadditivity and finiteness on the
/// given pairs. Comparisons allow a relative slack of `1e-12` for rounding
/// in floating sums.
pub fn check_axioms(m: &Submeasure, pairs: &[(IntSet, IntSet)]) -> Result<AxiomViolations> {
    let mut v = AxiomViolations::default();
    let slack = |x: f64| 1e-12 * x.abs().max(1.0);
    for (a, b) in pairs {
        if m.eval(&IntSet::empty(a.horizon())) != 0.0 {
            v.empty += 1;
        }
        let union = a.union(b)?;
        let inter = a.intersect(b)?;
        let (fa, fb, fu, fi) = (m.eval(a), m.eval(b), m.eval(&union), m.eval(&inter));
        if !(fa.is_finite() && fb.is_finite() && fu.is_finite()) {
            v.finite += 1;
        }
        if fi > fa + slack(fa) || fa > fu + slack(fu) || fb > fu + slack(fu) {
            v.monotone += 1;
        }
        if fu > fa + fb + slack(fa + fb) {
            v.subadditive += 1;
        }
    }
    Ok(v)
}

/// The CSV header for verdict rows.
pub const VERDICT_CSV_HEADER: [&str; 6] = ["set_spec", "submeasure", "regime", "status", "witness", "horizon"];

impl MembershipVerdict {
    pub fn csv_record(&self, set_spec: &str, submeasure: &str) -> [String; 6] {
        [
            set_spec.to_string(),
            submeasure.to_string(),
            self.regime.to_string(),
            self.status.to_string(),
            format!("{}", self.witness),
            self.horizon.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intset::build;

    #[test]
    fn submeasure_examples() {
        let counting = Submeasure::counting();
        assert_eq!(counting.eval(&IntSet::from_elements(10, [4, 5, 6])), 3.0);
        let h = Submeasure::harmonic();
        let v = h.eval(&IntSet::from_elements(10, [0, 1, 2]));
        assert!((v - 11.0 / 6.0).abs() < 1e-15);
        let nu = Submeasure::nu();
        assert_eq!(nu.eval(&IntSet::full(1 << 10)), 1.0);
    }

    #[test]
    fn nu_on_evens_is_half() {
        // Direct block count: every dyadic block [2^n, 2^{n+1}) with n ≥ 1
        // holds exactly 2^{n-1} even numbers; the block [1,2) holds none.
        let s = build("ap:2,0", 1 << 20).unwrap();
        let nu = Submeasure::nu();
        assert_eq!(nu.eval(&s), 0.5);
        assert_eq!(exh_norm(&nu, &s).value, 0.5);
    }

    #[test]
    fn harmonic_on_squares_is_bounded() {
        // Σ_{j≥0} 1/(j²+1) = (1 + π coth π)/2 ≈ 2.0767; the partial sum up to
        // j = 1000 stays below it. Dropping j = 0 gives Σ_{j≥1} < π²/6 < 2.
        let s = build("squares", 1_000_001).unwrap();
        let v = Submeasure::harmonic().eval(&s);
        let bound = (1.0 + std::f64::consts::PI / std::f64::consts::PI.tanh()) / 2.0;
        assert!(v < bound);
        let without_zero = v - 1.0;
        assert!(without_zero < 2.0);
    }

    #[test]
    fn exh_norm_examples() {
        let nu = Submeasure::nu();
        let finite = IntSet::from_elements(1 << 20, 0..1000);
        assert_eq!(exh_norm(&nu, &finite).value, 0.0);
        assert_eq!(exh_norm(&nu, &IntSet::full(1 << 20)).value, 1.0);
        let e = exh_norm(&nu, &build("ap:2,0", 1 << 20).unwrap());
        assert_eq!(e.value, 0.5);
        assert_eq!(e.cutoff, exh_cutoffs(1 << 20).last().copied());
    }

    #[test]
    fn exh_tail_is_nonincreasing() {
        let s = build("random:0.2,4", 1 << 16).unwrap();
        for m in [Submeasure::nu(), Submeasure::counting(), Submeasure::harmonic()] {
            let e = exh_norm(&m, &s);
            for w in e.tail.windows(2) {
                assert!(w[1].1 <= w[0].1 + 1e-12);
            }
        }
    }

    #[test]
    fn verdict_examples() {
        let nu = Submeasure::nu();
        let blocks = build("blocks:pow4", 1 << 20).unwrap();
        let v = membership_verdict(&nu, Regime::Exh, &blocks, 0.01).unwrap();
        assert_eq!(v.status, Status::Positive);
        assert!((v.witness - 1.0).abs() < 1e-12);

        let finite = IntSet::from_elements(1_000_000, 0..10);
        let v = membership_verdict(&Submeasure::counting(), Regime::Fin, &finite, 1e6).unwrap();
        assert_eq!(v.status, Status::Member);

        let squares = build("squares", 1 << 20).unwrap();
        let v = membership_verdict(&nu, Regime::Exh, &squares, 0.01).unwrap();
        assert_eq!(v.status, Status::Member);

        assert!(membership_verdict(&nu, Regime::Exh, &squares, 0.0).is_err());
    }

    #[test]
    fn fin_regime_positive_for_growing_sets() {
        let all = IntSet::full(1000);
        let v = membership_verdict(&Submeasure::counting(), Regime::Fin, &all, 10.0).unwrap();
        assert_eq!(v.status, Status::Positive);
    }

    #[test]
    fn square_block_counts_vanish() {
        // Integer-square-count oracle per dyadic block: the number of squares
        // in [2^n, 2^{n+1}) is ⌈√2^{n+1}⌉ − ⌈√2^n⌉.
        let n = 20u32;
        let count = |lo: u64, hi: u64| {
            let ceil_sqrt = |x: u64| {
                let mut r = (x as f64).sqrt() as u64;
                while r * r < x {
                    r += 1;
                }
                while r > 0 && (r - 1) * (r - 1) >= x {
                    r -= 1;
                }
                r
            };
            ceil_sqrt(hi) - ceil_sqrt(lo)
        };
        let last = count(1 << (n - 2), 1 << (n - 1)) as f64 / (1u64 << (n - 2)) as f64;
        let last2 = count(1 << (n - 1), 1 << n) as f64 / (1u64 << (n - 1)) as f64;
        let oracle = last.max(last2);
        let squares = build("squares", 1 << n).unwrap();
        assert!((exh_norm_value(&Submeasure::nu(), &squares) - oracle).abs() < 1e-15);
        assert!(oracle < 0.01);
    }

    #[test]
    fn furstenberg_examples() {
        let nu = Submeasure::nu();
        assert_eq!(furstenberg_level(&nu, &IntSet::full(1 << 16)), Some(1));
        assert_eq!(furstenberg_level(&nu, &build("ap:2,0", 1 << 16).unwrap()), Some(2));
        assert_eq!(furstenberg_level(&nu, &IntSet::from_elements(1 << 16, [3, 9])), None);
    }

    #[test]
    fn invariance_examples() {
        let n = 1 << 18;
        let nu = Submeasure::nu();
        let samples = vec![
            build("blocks:pow4", n).unwrap(),
            build("ap:3,1", n).unwrap(),
            build("random:0.1,1", n).unwrap(),
        ];
        let r = invariance_check(&nu, &samples, &[1, 5, 64]).unwrap();
        assert!(r.c >= 0.45, "{}", r.c);

        let h = Submeasure::harmonic();
        let evens = vec![build("ap:2,0", n).unwrap()];
        let r = invariance_check(&h, &evens, &[2]).unwrap();
        assert!(r.c >= 1.0);

        assert!(invariance_check(&nu, &[], &[1]).is_err());
    }

    #[test]
    fn counting_invariance_bound() {
        let n = 1 << 12;
        let counting = Submeasure::counting();
        let samples: Vec<IntSet> = (0..5).map(|i| build(&format!("random:0.3,{i}"), n).unwrap()).collect();
        let shifts = [1i64, 3, 17];
        let r = invariance_check(&counting, &samples, &shifts).unwrap();
        for (i, k, ratio) in r.ratios {
            let norm = exh_norm_value(&counting, &samples[i]);
            let bound = 1.0 - k.unsigned_abs() as f64 / norm;
            assert!(ratio.unwrap() >= bound, "sample {i} shift {k}");
        }
    }

    #[test]
    fn matrix_submeasure() {
        let c = Submeasure::cesaro(64);
        let evens = build("ap:2,0", 64).unwrap();
        // Row 0 sees {0} alone.
        assert_eq!(c.eval(&evens), 1.0);
        assert!(Submeasure::matrix("bad", vec![vec![0.5, -0.5]]).is_err());
        assert!(Submeasure::matrix("irregular", vec![vec![0.2, 0.2]]).is_err());
        assert!(Submeasure::matrix("ok", vec![vec![0.5, 0.5]]).is_ok());
    }

    #[test]
    fn spec_parsing() {
        for spec in ["counting", "summable:harmonic", "nu"] {
            assert_eq!(Submeasure::from_spec(spec).unwrap().name(), spec);
        }
        assert!(Submeasure::from_spec("tsirelson").is_err());

        let dir = tempfile::tempdir().unwrap();
        let w = dir.path().join("w.csv");
        fs::write(&w, "1,0.5\n0.25\n").unwrap();
        let m = Submeasure::from_spec(&format!("summable:file={}", w.display())).unwrap();
        assert_eq!(m.eval(&IntSet::from_elements(10, [0, 2, 7])), 1.5);

        let mfile = dir.path().join("m.csv");
        fs::write(&mfile, "1\n0.5,0.5\n").unwrap();
        let m = Submeasure::from_spec(&format!("matrix:file={}", mfile.display())).unwrap();
        assert_eq!(m.kind(), SubmeasureKind::Matrix);
        assert_eq!(m.eval(&IntSet::from_elements(10, [1])), 0.5);

        fs::write(&w, "1,-1\n").unwrap();
        assert!(Submeasure::from_spec(&format!("summable:file={}", w.display())).is_err());
    }

    #[test]
    fn level_of_boundaries() {
        assert_eq!(level_of(1.0), Some(1));
        assert_eq!(level_of(0.5), Some(2));
        assert_eq!(level_of(0.51), Some(1));
        assert_eq!(level_of(0.0), None);
    }
}
