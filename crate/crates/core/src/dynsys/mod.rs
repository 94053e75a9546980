//! Concrete dynamical systems `(X, T)`, their metrics and orbits.
//!
//! Circle points are 64-bit fixed-point numbers, so rotation orbits are
//! computed exactly in closed form (`x + nα` with wrapping addition) and
//! `T^k` of a rotation is again an exact rotation. The doubling map and the
//! shift on `{0,1}^ω` act on exact binary expansions: `T^n x` is read as the
//! 64-digit window of the expansion at offset `n`. The truncated weighted
//! shift acts on `R^d` and is nilpotent (`T^d = 0`).

pub mod expansion;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use log::warn;
use rayon::prelude::*;

use crate::error::{invalid, parse_err, Error, Result};
use crate::intset::IntSet;

pub use expansion::{BitSeq, ChampernowneBits, Expansion, GOLDEN_FIXED};

/// Scale between a fixed-point word and `[0,1)`.
const TWO_POW_M64: f64 = 1.0 / 18_446_744_073_709_551_616.0;

/// A point of some system's phase space.
#[derive(Clone, Debug, PartialEq)]
pub enum Point {
    /// A point of `[0,1)` or of `{0,1}^ω`, given by its binary expansion.
    Bits(Expansion),
    Vector(Vec<f64>),
}

impl Point {
    pub fn real(x: f64) -> Result<Self> {
        Expansion::from_f64(x).map(Point::Bits)
    }

    pub fn fixed(v: u64) -> Self {
        Point::Bits(Expansion::Fixed(v))
    }

    pub fn champernowne() -> Self {
        Point::Bits(Expansion::Champernowne)
    }

    pub fn expansion(&self) -> Option<&Expansion> {
        match self {
            Point::Bits(e) => Some(e),
            Point::Vector(_) => None,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Bits(e) => write!(f, "{e}"),
            Point::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for Point {
    type Err = Error;

    /// Decimal in `[0,1)`, `p/q`, binary word, `golden`, `champernowne`,
    /// `zeroblock`, `p:<word>`, `rand:<seed>`, `fx:<hex>`, `trunc:<n>:<point>`,
    /// `xor(a;b)`, `shift(k;a)`, `splice(word;a)`, or a comma-separated vector.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(',') && !s.contains(';') {
            let v = s
                .trim_matches(|c| c == '(' || c == ')')
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|e| parse_err(format!("bad coordinate `{t}`: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if v.iter().any(|x| !x.is_finite()) {
                return Err(invalid("vector coordinates must be finite"));
            }
            return Ok(Point::Vector(v));
        }
        s.parse().map(Point::Bits)
    }
}

/// The representation of a point at the system's working precision.
#[derive(Clone, Debug, PartialEq)]
pub enum State {
    /// Fixed-point value in `[0,1)` or the first 64 symbols of a word.
    Word(u64),
    Vector(Vec<f64>),
}

impl State {
    pub fn as_word(&self) -> Option<u64> {
        match self {
            State::Word(w) => Some(*w),
            State::Vector(_) => None,
        }
    }

    /// The point whose expansion is exactly this state.
    pub fn to_point(&self) -> Point {
        match self {
            State::Word(w) => Point::fixed(*w),
            State::Vector(v) => Point::Vector(v.clone()),
        }
    }
}

/// An open ball `B(center, radius)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(invalid(format!("radius must be positive, got {radius}")));
        }
        Ok(Ball { center, radius })
    }
}

/// A dynamical system with its metric. `stride` is the exponent of a power
/// `T^stride`; parsed systems have stride 1.
#[derive(Clone, Debug, PartialEq)]
pub enum System {
    /// `x ↦ x + α mod 1` on fixed-point circle points.
    Rotation { alpha: u64, label: Arc<str> },
    /// `x ↦ 2^stride x mod 1`.
    Doubling { stride: usize },
    /// Left shift by `stride` on `{0,1}^ω`, metric read at `depth` symbols.
    Cantor { depth: u32, stride: usize },
    /// `(x_0,…,x_{d−1}) ↦ (w_1 x_1, …, w_{d−1} x_{d−1}, 0)`, iterated `stride` times.
    WeightedShift { weights: Vec<f64>, stride: usize },
}

pub const MAX_CANTOR_DEPTH: u32 = 62;

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stride = match self {
            System::Rotation { label, .. } => return write!(f, "rotation:{label}"),
            System::Doubling { stride } => {
                f.write_str("doubling")?;
                *stride
            }
            System::Cantor { depth, stride } => {
                write!(f, "cantor:{depth}")?;
                *stride
            }
            System::WeightedShift { weights, stride } => {
                write!(f, "wshift:{}", weights.len() + 1)?;
                for w in weights {
                    write!(f, ",{w}")?;
                }
                *stride
            }
        };
        if stride != 1 {
            write!(f, "^{stride}")?;
        }
        Ok(())
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        System::from_spec(s)
    }
}

fn small_denominator(alpha: u64) -> Option<u64> {
    (1..=64u64).find(|&q| {
        let m = alpha.wrapping_mul(q);
        m.min(m.wrapping_neg()) < 1 << 32
    })
}

impl System {
    /// `alpha` is a fixed-point angle; `0` is rejected.
    pub fn rotation(alpha: u64) -> Result<Self> {
        System::rotation_labeled(alpha, format!("fx:{alpha:016x}"))
    }

    fn rotation_labeled(alpha: u64, label: String) -> Result<Self> {
        if alpha == 0 {
            return Err(invalid("rotation angle must lie in (0,1)"));
        }
        if let Some(q) = small_denominator(alpha) {
            warn!("rotation angle {label} is within 2^-32 of a rational with denominator {q}");
        }
        Ok(System::Rotation {
            alpha,
            label: label.into(),
        })
    }

    pub fn golden_rotation() -> Self {
        System::Rotation {
            alpha: GOLDEN_FIXED,
            label: "golden".into(),
        }
    }

    pub fn cantor(depth: u32) -> Result<Self> {
        if depth == 0 || depth > MAX_CANTOR_DEPTH {
            return Err(invalid(format!(
                "cantor depth must be in 1..={MAX_CANTOR_DEPTH}, got {depth}"
            )));
        }
        Ok(System::Cantor { depth, stride: 1 })
    }

    /// Dimension `weights.len() + 1`.
    pub fn weighted_shift(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && w.is_finite())) {
            return Err(invalid(format!("weights must be positive, got {w}")));
        }
        Ok(System::WeightedShift { weights, stride: 1 })
    }

    /// Parses `rotation:<α>` | `doubling` | `cantor:<D>` | `wshift:<d>,<w…>`,
    /// optionally followed by `^k` for the power `T^k`. The long forms
    /// `cantor_shift:<D>` and `weighted_shift:<d>,(w…)` are accepted too.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (base, power) = match spec.rsplit_once('^') {
            Some((b, k)) => {
                let k: usize = k.parse().map_err(|e| parse_err(format!("bad power `{k}`: {e}")))?;
                (b, k)
            }
            None => (spec, 1),
        };
        let sys = if let Some(a) = base.strip_prefix("rotation:") {
            let alpha = a.parse::<Expansion>()?.fixed_point()?;
            System::rotation_labeled(alpha, a.trim().to_string())?
        } else if base == "doubling" {
            System::Doubling { stride: 1 }
        } else if let Some(d) = base.strip_prefix("cantor:").or(base.strip_prefix("cantor_shift:")) {
            System::cantor(d.parse().map_err(|e| parse_err(format!("bad depth `{d}`: {e}")))?)?
        } else if base == "cantor" || base == "cantor_shift" {
            System::cantor(32)?
        } else if let Some(rest) = base.strip_prefix("wshift:").or(base.strip_prefix("weighted_shift:")) {
            let cleaned: String = rest.chars().filter(|c| *c != '(' && *c != ')').collect();
            let mut parts = cleaned.split(',').map(str::trim);
            let d: usize = parts
                .next()
                .unwrap_or("")
                .parse()
                .map_err(|e| parse_err(format!("bad dimension in `{base}`: {e}")))?;
            if d == 0 {
                return Err(invalid("weighted shift dimension must be positive"));
            }
            let ws = parts
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.parse::<f64>()
                        .map_err(|e| parse_err(format!("bad weight `{p}`: {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            let weights = match ws.len() {
                n if n == d - 1 => ws,
                1 => vec![ws[0]; d - 1],
                0 if d == 1 => ws,
                n => return Err(invalid(format!("expected {} weights, got {n}", d - 1))),
            };
            System::weighted_shift(weights)?
        } else {
            return Err(parse_err(format!("unknown system `{spec}`")));
        };
        sys.power(power)
    }

    /// `T^k`.
    pub fn power(&self, k: usize) -> Result<System> {
        if k == 0 {
            return Err(invalid("power must be at least 1"));
        }
        Ok(match self {
            System::Rotation { alpha, label } if k == 1 => System::Rotation {
                alpha: *alpha,
                label: label.clone(),
            },
            System::Rotation { alpha, .. } => {
                let a = alpha.wrapping_mul(k as u64);
                if a == 0 {
                    return Err(invalid("power of rotation is the identity"));
                }
                System::Rotation {
                    alpha: a,
                    label: format!("fx:{a:016x}").into(),
                }
            }
            System::Doubling { stride } => System::Doubling { stride: stride * k },
            System::Cantor { depth, stride } => System::Cantor {
                depth: *depth,
                stride: stride * k,
            },
            System::WeightedShift { weights, stride } => System::WeightedShift {
                weights: weights.clone(),
                stride: stride * k,
            },
        })
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, System::Rotation { .. } | System::Doubling { .. })
    }

    /// Systems acting on binary expansions by shifting.
    pub fn is_shift(&self) -> bool {
        matches!(self, System::Doubling { .. } | System::Cantor { .. })
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            System::WeightedShift { weights, .. } => Some(weights.len() + 1),
            _ => None,
        }
    }

    fn cantor_mask(depth: u32) -> u64 {
        !(u64::MAX >> depth)
    }

    /// Representation of `p` at working precision.
    pub fn state(&self, p: &Point) -> Result<State> {
        match (self, p) {
            (System::WeightedShift { .. }, Point::Vector(v)) => {
                let d = self.dim().unwrap_or(0);
                if v.len() != d {
                    return Err(invalid(format!("expected a {d}-dimensional vector, got {}", v.len())));
                }
                Ok(State::Vector(v.clone()))
            }
            (System::WeightedShift { .. }, Point::Bits(_)) => Err(invalid("weighted shift needs a vector point")),
            (_, Point::Vector(_)) => Err(invalid(format!("{self} needs a scalar or binary point"))),
            (System::Cantor { depth, .. }, Point::Bits(e)) => {
                Ok(State::Word(e.fixed_point()? & System::cantor_mask(*depth)))
            }
            (_, Point::Bits(e)) => Ok(State::Word(e.fixed_point()?)),
        }
    }

    /// Circle distance for rotation and doubling, `2^{-i}` with `i` the first
    /// disagreement (within `depth` symbols) for the shift, sup norm for the
    /// weighted shift. Mismatched representations are infinitely far apart.
    pub fn distance(&self, a: &State, b: &State) -> f64 {
        match (self, a, b) {
            (System::Cantor { depth, .. }, State::Word(x), State::Word(y)) => {
                cantor_distance(*x, *y, System::cantor_mask(*depth))
            }
            (_, State::Word(x), State::Word(y)) => circle_distance(*x, *y),
            (_, State::Vector(x), State::Vector(y)) if x.len() == y.len() => {
                x.iter().zip(y).map(|(s, t)| (s - t).abs()).fold(0.0, f64::max)
            }
            _ => f64::INFINITY,
        }
    }

    /// `T^n p`.
    pub fn apply(&self, p: &Point, n: usize) -> Result<Point> {
        match (self, p) {
            (System::Rotation { alpha, .. }, Point::Bits(e)) => {
                let x = e.fixed_point()?;
                Ok(Point::fixed(x.wrapping_add(alpha.wrapping_mul(n as u64))))
            }
            (System::Doubling { stride } | System::Cantor { stride, .. }, Point::Bits(e)) => {
                Ok(Point::Bits(e.clone().shift(n * stride)))
            }
            (System::WeightedShift { weights, stride }, Point::Vector(v)) => {
                self.state(p)?;
                let steps = (n * stride).min(v.len());
                let mut x = v.clone();
                for _ in 0..steps {
                    wshift_step(weights, &mut x);
                }
                Ok(Point::Vector(x))
            }
            _ => Err(invalid(format!("point {p} does not belong to {self}"))),
        }
    }

    pub fn step(&self, p: &Point) -> Result<Point> {
        self.apply(p, 1)
    }

    /// `(T^n p)_{n < horizon}` at working precision.
    pub fn orbit(&self, p: &Point, horizon: usize) -> Result<Orbit> {
        if horizon == 0 {
            return Err(invalid("orbit horizon must be at least 1"));
        }
        let data = match (self, p) {
            (System::Rotation { alpha, .. }, Point::Bits(e)) => {
                let x = e.fixed_point()?;
                let alpha = *alpha;
                let mut words = vec![0u64; horizon];
                words.par_chunks_mut(1 << 14).enumerate().for_each(|(c, chunk)| {
                    let base = c << 14;
                    for (i, w) in chunk.iter_mut().enumerate() {
                        *w = x.wrapping_add(alpha.wrapping_mul((base + i) as u64));
                    }
                });
                OrbitData::Words(words)
            }
            (System::Doubling { stride } | System::Cantor { stride, .. }, Point::Bits(e)) => {
                let bits = e.materialize((horizon - 1) * stride + 64)?;
                let mask = match self {
                    System::Cantor { depth, .. } => System::cantor_mask(*depth),
                    _ => u64::MAX,
                };
                OrbitData::Words((0..horizon).map(|n| bits.window(n * stride) & mask).collect())
            }
            (System::WeightedShift { weights, stride }, Point::Vector(v)) => {
                self.state(p)?;
                let dim = v.len();
                let mut data = Vec::with_capacity(horizon * dim);
                let mut x = v.clone();
                for _ in 0..horizon {
                    data.extend_from_slice(&x);
                    if x.iter().all(|c| *c == 0.0) {
                        continue;
                    }
                    for _ in 0..*stride {
                        wshift_step(weights, &mut x);
                    }
                }
                OrbitData::Vectors { dim, data }
            }
            _ => return Err(invalid(format!("point {p} does not belong to {self}"))),
        };
        Ok(Orbit {
            system: self.clone(),
            horizon,
            data,
        })
    }

    /// `d(center, p) < radius`.
    pub fn in_ball(&self, ball: &Ball, p: &Point) -> Result<bool> {
        if !(ball.radius > 0.0) {
            return Err(invalid("radius must be positive"));
        }
        Ok(self.distance(&self.state(&ball.center)?, &self.state(p)?) < ball.radius)
    }

    /// Least `p ≤ max_n` with `d(T^p x, x) ≤ tol` and `d(T^{2p} x, x) ≤ tol`.
    pub fn detect_period(&self, x: &Point, max_n: usize, tol: f64) -> Result<Option<usize>> {
        if max_n == 0 || !(tol >= 0.0) {
            return Err(invalid("detect_period needs max_n ≥ 1 and tol ≥ 0"));
        }
        let orbit = self.orbit(x, 2 * max_n + 1)?;
        let x0 = orbit.state(0);
        Ok((1..=max_n)
            .find(|&p| self.distance(&orbit.state(p), &x0) <= tol && self.distance(&orbit.state(2 * p), &x0) <= tol))
    }

    /// Group operation for the homomorphism instances: digitwise XOR on
    /// `{0,1}^ω`, vector addition for the weighted shift.
    pub fn group_add(&self, a: &Point, b: &Point) -> Result<Point> {
        match (self, a, b) {
            (System::Cantor { .. }, Point::Bits(x), Point::Bits(y)) => {
                Ok(Point::Bits(Expansion::xor(x.clone(), y.clone())))
            }
            (System::WeightedShift { .. }, Point::Vector(x), Point::Vector(y)) if x.len() == y.len() => {
                Ok(Point::Vector(x.iter().zip(y).map(|(s, t)| s + t).collect()))
            }
            _ => Err(invalid(format!("{self} is not a group instance for these points"))),
        }
    }

    pub fn group_neg(&self, a: &Point) -> Result<Point> {
        match (self, a) {
            (System::Cantor { .. }, Point::Bits(_)) => Ok(a.clone()),
            (System::WeightedShift { .. }, Point::Vector(x)) => Ok(Point::Vector(x.iter().map(|c| -c).collect())),
            _ => Err(invalid(format!("{self} is not a group instance"))),
        }
    }

    pub fn group_zero(&self) -> Result<Point> {
        match self {
            System::Cantor { .. } => Ok(Point::Bits(Expansion::word(&[]))),
            System::WeightedShift { .. } => Ok(Point::Vector(vec![0.0; self.dim().unwrap_or(1)])),
            _ => Err(invalid(format!("{self} is not a group instance"))),
        }
    }

    /// `Some(s)` when `T^n p = 0` for every `n ≥ s` (in units of the base map).
    pub fn null_after(&self, p: &Point) -> Option<usize> {
        match (self, p) {
            (System::Cantor { .. }, Point::Bits(e)) => e.support_bound(),
            (System::WeightedShift { .. }, Point::Vector(v)) => {
                Some(v.iter().rposition(|c| *c != 0.0).map_or(0, |i| i + 1))
            }
            _ => None,
        }
    }
}

fn wshift_step(weights: &[f64], x: &mut [f64]) {
    let d = x.len();
    for i in 0..d.saturating_sub(1) {
        x[i] = weights[i] * x[i + 1];
    }
    if d > 0 {
        x[d - 1] = 0.0;
    }
}

/// Distance on the circle `R/Z` between fixed-point values.
pub fn circle_distance(a: u64, b: u64) -> f64 {
    let d = a.wrapping_sub(b);
    d.min(d.wrapping_neg()) as f64 * TWO_POW_M64
}

fn cantor_distance(a: u64, b: u64, mask: u64) -> f64 {
    let x = (a ^ b) & mask;
    if x == 0 {
        0.0
    } else {
        (-(x.leading_zeros() as f64)).exp2()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum OrbitData {
    Words(Vec<u64>),
    Vectors { dim: usize, data: Vec<f64> },
}

/// A materialized orbit segment `x, Tx, …, T^{N−1}x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    system: System,
    horizon: usize,
    data: OrbitData,
}

impl Orbit {
    pub fn system(&self) -> &System {
        &self.system
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn state(&self, n: usize) -> State {
        match &self.data {
            OrbitData::Words(w) => State::Word(w[n]),
            OrbitData::Vectors { dim, data } => State::Vector(data[n * dim..(n + 1) * dim].to_vec()),
        }
    }

    /// Fixed-point words, for the scalar and binary systems.
    pub fn words(&self) -> Option<&[u64]> {
        match &self.data {
            OrbitData::Words(w) => Some(w),
            OrbitData::Vectors { .. } => None,
        }
    }

    /// `N(x, B(center, radius)) ∩ [0, N)`.
    pub fn return_set(&self, center: &State, radius: f64) -> IntSet {
        let sys = &self.system;
        match (&self.data, center) {
            (OrbitData::Words(w), State::Word(c)) => {
                let c = *c;
                match sys {
                    System::Cantor { depth, .. } => {
                        let mask = System::cantor_mask(*depth);
                        IntSet::from_predicate(self.horizon, |n| cantor_distance(w[n], c, mask) < radius)
                    }
                    _ => IntSet::from_predicate(self.horizon, |n| circle_distance(w[n], c) < radius),
                }
            }
            (OrbitData::Vectors { dim, data }, State::Vector(c)) if c.len() == *dim => {
                IntSet::from_predicate(self.horizon, |n| {
                    data[n * dim..(n + 1) * dim]
                        .iter()
                        .zip(c)
                        .all(|(a, b)| (a - b).abs() < radius)
                })
            }
            _ => IntSet::empty(self.horizon),
        }
    }

    pub fn return_set_ball(&self, ball: &Ball) -> Result<IntSet> {
        if !(ball.radius > 0.0) {
            return Err(invalid("radius must be positive"));
        }
        Ok(self.return_set(&self.system.state(&ball.center)?, ball.radius))
    }
}

/// Convenience wrappers.
pub fn make_system(spec: &str) -> Result<System> {
    System::from_spec(spec)
}

pub fn step_orbit(sys: &System, x: &Point, n: usize) -> Result<Orbit> {
    sys.orbit(x, n)
}

pub fn ball_membership(sys: &System, center: &Point, radius: f64, p: &Point) -> Result<bool> {
    sys.in_ball(&Ball::new(center.clone(), radius)?, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn reals(o: &Orbit) -> Vec<f64> {
        o.words().unwrap().iter().map(|w| *w as f64 * TWO_POW_M64).collect()
    }

    #[test]
    fn system_examples() {
        let r = make_system("rotation:0.5").unwrap();
        assert_eq!(reals(&r.orbit(&pt("0"), 4).unwrap()), vec![0.0, 0.5, 0.0, 0.5]);

        let d = make_system("doubling").unwrap();
        let o = d.orbit(&pt("1/3"), 3).unwrap();
        assert_eq!(o.state(0), o.state(2));
        assert!((reals(&o)[1] - 2.0 / 3.0).abs() < 1e-15);

        let c = make_system("cantor_shift:16").unwrap();
        let o = c.orbit(&pt("0"), 10).unwrap();
        assert!(o.words().unwrap().iter().all(|w| *w == 0));
    }

    #[test]
    fn orbit_examples() {
        let r = make_system("rotation:golden").unwrap();
        let o = r.orbit(&pt("0"), 5).unwrap();
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for (n, x) in reals(&o).into_iter().enumerate() {
            assert!((0.0..1.0).contains(&x));
            assert!((x - (n as f64 * g).fract()).abs() < 1e-12);
        }

        let c = make_system("cantor:32").unwrap();
        let o = c.orbit(&Point::champernowne(), 3).unwrap();
        let mut x = Point::champernowne();
        for n in 0..3 {
            assert_eq!(o.state(n), c.state(&x).unwrap());
            x = c.step(&x).unwrap();
        }

        let ws = make_system("weighted_shift:4,(2,2,2)").unwrap();
        let o = ws.orbit(&pt("1,1,1,1"), 5).unwrap();
        let states: Vec<State> = (0..5).map(|n| o.state(n)).collect();
        assert_eq!(
            states,
            vec![
                State::Vector(vec![1.0, 1.0, 1.0, 1.0]),
                State::Vector(vec![2.0, 2.0, 2.0, 0.0]),
                State::Vector(vec![4.0, 4.0, 0.0, 0.0]),
                State::Vector(vec![8.0, 0.0, 0.0, 0.0]),
                State::Vector(vec![0.0, 0.0, 0.0, 0.0]),
            ]
        );
    }

    #[test]
    fn period_examples() {
        let d = make_system("doubling").unwrap();
        assert_eq!(d.detect_period(&pt("1/3"), 10, 0.0).unwrap(), Some(2));
        let r = System::golden_rotation();
        assert_eq!(r.detect_period(&pt("0"), 10_000, 1e-9).unwrap(), None);
        let c = make_system("cantor:32").unwrap();
        assert_eq!(c.detect_period(&pt("0"), 5, 0.0).unwrap(), Some(1));
        assert_eq!(d.detect_period(&Point::champernowne(), 1000, 0.0).unwrap(), None);
    }

    #[test]
    fn ball_examples() {
        let r = System::golden_rotation();
        assert!(ball_membership(&r, &pt("0.95"), 0.1, &pt("0.02")).unwrap());
        assert!(!ball_membership(&r, &pt("0.5"), 0.25, &pt("0.25")).unwrap());

        let c = make_system("cantor:32").unwrap();
        let w = pt("10110011");
        assert!(ball_membership(&c, &w, 0.125, &pt("10111111")).unwrap());
        assert!(!ball_membership(&c, &w, 0.125, &pt("10100011")).unwrap());
        assert!(ball_membership(&c, &w, 0.1, &w).unwrap());
        assert!(ball_membership(&c, &w, 0.0, &w).is_err());
    }

    #[test]
    fn rotation_closed_form_matches_iteration() {
        let r = System::golden_rotation();
        let n = 1_000_000;
        let mut x = pt("0.123");
        for _ in 0..n {
            x = r.step(&x).unwrap();
        }
        let o = r.orbit(&pt("0.123"), n + 1).unwrap();
        assert_eq!(r.state(&x).unwrap(), o.state(n));
    }

    #[test]
    fn precision_exhaustion_is_an_error() {
        let d = make_system("doubling").unwrap();
        let x = pt("trunc:200:champernowne");
        assert!(d.orbit(&x, 137).is_ok());
        assert!(matches!(d.orbit(&x, 138), Err(Error::PrecisionExhausted { .. })));
    }

    #[test]
    fn powers() {
        let d = make_system("doubling").unwrap();
        let d3 = d.power(3).unwrap();
        assert_eq!(d3.to_string(), "doubling^3");
        assert_eq!(make_system("doubling^3").unwrap(), d3);
        let o = d.orbit(&Point::champernowne(), 30).unwrap();
        let o3 = d3.orbit(&Point::champernowne(), 10).unwrap();
        for n in 0..10 {
            assert_eq!(o3.state(n), o.state(3 * n));
        }
        let r = System::golden_rotation();
        let r3 = r.power(3).unwrap();
        let o = r.orbit(&pt("0.1"), 30).unwrap();
        let o3 = r3.orbit(&pt("0.1"), 10).unwrap();
        for n in 0..10 {
            assert_eq!(o3.state(n), o.state(3 * n));
        }
        assert_eq!(make_system(&r3.to_string()).unwrap(), r3);
    }

    #[test]
    fn spec_errors() {
        for bad in [
            "rotation:0",
            "rotation:1.5",
            "cantor:63",
            "wshift:4,1,-1,1",
            "wshift:4,1,1",
            "torus",
            "doubling^0",
        ] {
            assert!(make_system(bad).is_err(), "{bad}");
        }
        let ws = make_system("wshift:8,2").unwrap();
        assert_eq!(ws.to_string(), "wshift:8,2,2,2,2,2,2,2");
    }

    #[test]
    fn homomorphism_and_null_orbits() {
        let c = make_system("cantor:32").unwrap();
        let x = pt("rand:1");
        let y = pt("champernowne");
        let lhs = c.step(&c.group_add(&x, &y).unwrap()).unwrap();
        let rhs = c.group_add(&c.step(&x).unwrap(), &c.step(&y).unwrap()).unwrap();
        assert_eq!(c.state(&lhs).unwrap(), c.state(&rhs).unwrap());

        let z = pt("0010110");
        assert_eq!(c.null_after(&z), Some(6));
        let o = c.orbit(&z, 20).unwrap();
        assert!((6..20).all(|n| o.state(n) == State::Word(0)));
    }

    #[test]
    fn point_literals() {
        assert_eq!(pt("1,2.5,-3"), Point::Vector(vec![1.0, 2.5, -3.0]));
        assert_eq!(pt("(1,2)"), Point::Vector(vec![1.0, 2.0]));
        assert_eq!(pt("1,2").to_string(), "1,2");
        assert!("1,x".parse::<Point>().is_err());
    }
}
