//! Binary expansions of points of `[0,1)` and of `{0,1}^ω`.
//!
//! Bits are packed MSB-first: bit `i` of the sequence is bit `63 − i % 64`
//! of word `i / 64`, so a 64-bit window starting at any position reads as a
//! fixed-point number in `[0,1)`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, parse_err, Error, Result};

/// A materialized prefix of a binary expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSeq {
    words: Vec<u64>,
    len: usize,
}

impl BitSeq {
    pub fn zeros(len: usize) -> Self {
        BitSeq {
            words: vec![0; len.div_ceil(64) + 1],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (63 - i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        debug_assert!(i < self.len);
        let m = 1u64 << (63 - i % 64);
        if bit {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    /// The 64 bits starting at `pos`, MSB-first. Requires `pos + 64 ≤ len`.
    pub fn window(&self, pos: usize) -> u64 {
        debug_assert!(pos + 64 <= self.len);
        let (w, b) = (pos / 64, pos % 64);
        if b == 0 {
            self.words[w]
        } else {
            self.words[w] << b | self.words[w + 1] >> (64 - b)
        }
    }

    fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut out = BitSeq::zeros(len);
        for i in 0..len {
            if f(i) {
                out.set(i, true);
            }
        }
        out
    }

    fn clear_tail(&mut self) {
        let full = self.len / 64;
        if self.len % 64 != 0 {
            self.words[full] &= !(u64::MAX >> (self.len % 64));
        }
        for w in &mut self.words[self.len.div_ceil(64)..] {
            *w = 0;
        }
    }
}

/// Bits of the binary Champernowne sequence `0 1 10 11 100 …`.
#[derive(Clone, Debug, Default)]
pub struct ChampernowneBits {
    next: u64,
    buf: u64,
    left: u32,
}

impl Iterator for ChampernowneBits {
    type Item = bool;

    fn next(&mut self) -> Option<bool> {
        if self.left == 0 {
            self.buf = self.next;
            self.left = (64 - self.next.leading_zeros()).max(1);
            self.next += 1;
        }
        self.left -= 1;
        Some(self.buf >> self.left & 1 == 1)
    }
}

/// An exactly specified binary expansion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expansion {
    /// `num/den` with `num < den`, expanded by long division.
    Rational {
        num: u128,
        den: u128,
    },
    /// Finitely supported: the given bits, then zeros.
    Word(Arc<[bool]>),
    /// 64-bit fixed point `v · 2^{-64}`, then zeros.
    Fixed(u64),
    /// The given nonempty word repeated forever.
    Periodic(Arc<[bool]>),
    Champernowne,
    /// Champernowne bits, except that the last `num/den` of every dyadic
    /// block `[2^j, 2^{j+1})` with `j ≥ start` is zero.
    ZeroBlock {
        num: u32,
        den: u32,
        start: u32,
    },
    /// Uniform bits from a seeded ChaCha8 stream.
    Random(u64),
    /// `inner` known only to `len` digits.
    Truncated {
        len: usize,
        inner: Arc<Expansion>,
    },
    Xor(Arc<Expansion>, Arc<Expansion>),
    /// `inner` with its first `by` digits dropped.
    Shift {
        by: usize,
        inner: Arc<Expansion>,
    },
    /// `prefix` followed by `tail` from its first digit.
    Splice {
        prefix: Arc<[bool]>,
        tail: Arc<Expansion>,
    },
}

/// Default zero fraction and first affected block of [`Expansion::ZeroBlock`].
pub const ZERO_BLOCK_DEFAULT: (u32, u32, u32) = (5, 8, 6);

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Expansion {
    pub fn rational(num: u128, den: u128) -> Result<Self> {
        if den == 0 || num >= den {
            return Err(invalid(format!("{num}/{den} is not in [0,1)")));
        }
        if den > 1u128 << 120 {
            return Err(invalid("denominator too large"));
        }
        let g = gcd(num, den).max(1);
        Ok(Expansion::Rational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn word(bits: &[bool]) -> Self {
        Expansion::Word(bits.into())
    }

    pub fn periodic(bits: &[bool]) -> Result<Self> {
        if bits.is_empty() {
            return Err(invalid("periodic word must be nonempty"));
        }
        Ok(Expansion::Periodic(bits.into()))
    }

    pub fn zero_block() -> Self {
        let (num, den, start) = ZERO_BLOCK_DEFAULT;
        Expansion::ZeroBlock { num, den, start }
    }

    /// Exact expansion of a finite `f64` in `[0,1)`.
    pub fn from_f64(x: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&x) {
            return Err(invalid(format!("{x} is not in [0,1)")));
        }
        let mut bits = Vec::new();
        let mut r = x;
        // Doubling an f64 below 1 is exact; at most 1074 digits are nonzero.
        while r != 0.0 {
            r *= 2.0;
            let b = r >= 1.0;
            if b {
                r -= 1.0;
            }
            bits.push(b);
        }
        Ok(Expansion::word(&bits))
    }

    pub fn xor(a: Expansion, b: Expansion) -> Self {
        Expansion::Xor(Arc::new(a), Arc::new(b))
    }

    pub fn shift(self, by: usize) -> Self {
        match self {
            _ if by == 0 => self,
            Expansion::Shift { by: b, inner } => Expansion::Shift { by: b + by, inner },
            other => Expansion::Shift {
                by,
                inner: Arc::new(other),
            },
        }
    }

    pub fn splice(prefix: &[bool], tail: Expansion) -> Self {
        Expansion::Splice {
            prefix: prefix.into(),
            tail: Arc::new(tail),
        }
    }

    pub fn truncated(self, len: usize) -> Self {
        Expansion::Truncated {
            len,
            inner: Arc::new(self),
        }
    }

    /// Number of known digits, `None` when unbounded.
    pub fn precision(&self) -> Option<usize> {
        match self {
            Expansion::Truncated { len, inner } => Some(inner.precision().map_or(*len, |p| p.min(*len))),
            Expansion::Xor(a, b) => match (a.precision(), b.precision()) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, y) => x.or(y),
            },
            Expansion::Shift { by, inner } => inner.precision().map(|p| p.saturating_sub(*by)),
            Expansion::Splice { prefix, tail } => tail.precision().map(|p| p + prefix.len()),
            _ => None,
        }
    }

    /// `Some(s)` when every digit from `s` on is zero.
    pub fn support_bound(&self) -> Option<usize> {
        match self {
            Expansion::Word(w) => Some(w.iter().rposition(|&b| b).map_or(0, |i| i + 1)),
            Expansion::Fixed(v) => Some(64 - v.trailing_zeros() as usize),
            Expansion::Rational { num: 0, .. } => Some(0),
            Expansion::Rational { den, .. } if den.is_power_of_two() => Some(den.trailing_zeros() as usize),
            Expansion::Periodic(w) if w.iter().all(|b| !b) => Some(0),
            Expansion::Truncated { inner, .. } => inner.support_bound(),
            Expansion::Xor(a, b) => Some(a.support_bound()?.max(b.support_bound()?)),
            Expansion::Shift { by, inner } => inner.support_bound().map(|s| s.saturating_sub(*by)),
            Expansion::Splice { prefix, tail } => tail.support_bound().map(|s| s + prefix.len()),
            _ => None,
        }
    }

    /// The first `len` digits.
    pub fn materialize(&self, len: usize) -> Result<BitSeq> {
        if let Some(p) = self.precision() {
            if len > p {
                return Err(Error::PrecisionExhausted {
                    needed: len,
                    available: p,
                });
            }
        }
        Ok(self.materialize_unchecked(len))
    }

    fn materialize_unchecked(&self, len: usize) -> BitSeq {
        match self {
            Expansion::Rational { num, den } => {
                let mut r = *num;
                BitSeq::from_fn(len, |_| {
                    r <<= 1;
                    let b = r >= *den;
                    if b {
                        r -= den;
                    }
                    b
                })
            }
            Expansion::Word(w) => BitSeq::from_fn(len, |i| w.get(i).copied().unwrap_or(false)),
            Expansion::Fixed(v) => {
                let mut out = BitSeq::zeros(len);
                out.words[0] = *v;
                out.clear_tail();
                out
            }
            Expansion::Periodic(w) => BitSeq::from_fn(len, |i| w[i % w.len()]),
            Expansion::Champernowne => {
                let mut it = ChampernowneBits::default();
                BitSeq::from_fn(len, |_| it.next().unwrap_or(false))
            }
            &Expansion::ZeroBlock { num, den, start } => {
                let mut it = ChampernowneBits::default();
                BitSeq::from_fn(len, |i| {
                    if i < 1usize << start {
                        return it.next().unwrap_or(false);
                    }
                    let j = usize::BITS - 1 - i.leading_zeros();
                    let block = 1usize << j;
                    let champ_len = block - block / den as usize * num as usize;
                    if i - block < champ_len {
                        it.next().unwrap_or(false)
                    } else {
                        false
                    }
                })
            }
            Expansion::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut out = BitSeq::zeros(len);
                for w in out.words.iter_mut().take(len.div_ceil(64)) {
                    *w = rng.next_u64();
                }
                out.clear_tail();
                out
            }
            Expansion::Truncated { inner, .. } => inner.materialize_unchecked(len),
            Expansion::Xor(a, b) => {
                let mut out = a.materialize_unchecked(len);
                let other = b.materialize_unchecked(len);
                for (x, y) in out.words.iter_mut().zip(&other.words) {
                    *x ^= y;
                }
                out
            }
            Expansion::Shift { by, inner } => {
                let full = inner.materialize_unchecked(len + by + 64);
                let mut out = BitSeq::zeros(len);
                for (w, slot) in out.words.iter_mut().enumerate().take(len.div_ceil(64)) {
                    *slot = full.window(by + 64 * w);
                }
                out.clear_tail();
                out
            }
            Expansion::Splice { prefix, tail } => {
                let t = tail.materialize_unchecked(len.saturating_sub(prefix.len()));
                BitSeq::from_fn(len, |i| match prefix.get(i) {
                    Some(&b) => b,
                    None => t.get(i - prefix.len()),
                })
            }
        }
    }

    /// The first 64 digits as a fixed-point number.
    pub fn fixed_point(&self) -> Result<u64> {
        Ok(self.materialize(64)?.window(0))
    }
}

fn fmt_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expansion::Rational { num, den } => write!(f, "{num}/{den}"),
            Expansion::Word(w) if w.is_empty() => f.write_str("0"),
            Expansion::Word(w) => f.write_str(&fmt_bits(w)),
            Expansion::Fixed(v) => write!(f, "fx:{v:016x}"),
            Expansion::Periodic(w) => write!(f, "p:{}", fmt_bits(w)),
            Expansion::Champernowne => f.write_str("champernowne"),
            Expansion::ZeroBlock { num, den, start } => {
                if (*num, *den, *start) == ZERO_BLOCK_DEFAULT {
                    f.write_str("zeroblock")
                } else {
                    write!(f, "zeroblock:{num}/{den}@{start}")
                }
            }
            Expansion::Random(seed) => write!(f, "rand:{seed}"),
            Expansion::Truncated { len, inner } => write!(f, "trunc:{len}:{inner}"),
            Expansion::Xor(a, b) => write!(f, "xor({a};{b})"),
            Expansion::Shift { by, inner } => write!(f, "shift({by};{inner})"),
            Expansion::Splice { prefix, tail } => {
                let p = if prefix.is_empty() {
                    String::new()
                } else {
                    fmt_bits(prefix)
                };
                write!(f, "splice({p};{tail})")
            }
        }
    }
}

fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(parse_err(format!("bad binary digit `{c}` in `{s}`"))),
        })
        .collect()
}

/// Splits `a;b` at the first `;` outside parentheses.
fn split_args(s: &str) -> Result<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ';' if depth == 0 => return Ok((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    Err(parse_err(format!("expected two `;`-separated arguments in `{s}`")))
}

fn call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
}

/// Exact `p/q` from a decimal literal `0.ddd` or `.ddd`.
fn parse_decimal(s: &str) -> Result<Expansion> {
    let (int, frac) = s
        .split_once('.')
        .ok_or_else(|| parse_err(format!("bad decimal `{s}`")))?;
    if !(int.is_empty() || int.chars().all(|c| c == '0')) {
        return Err(invalid(format!("{s} is not in [0,1)")));
    }
    if frac.len() > 36 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(parse_err(format!("bad decimal `{s}`")));
    }
    let num: u128 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|e| parse_err(format!("{e}")))?
    };
    Expansion::rational(num, 10u128.pow(frac.len() as u32))
}

impl FromStr for Expansion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(parse_err("empty point literal"));
        }
        if s == "champernowne" {
            return Ok(Expansion::Champernowne);
        }
        if s == "zeroblock" {
            return Ok(Expansion::zero_block());
        }
        if let Some(rest) = s.strip_prefix("zeroblock:") {
            let (frac, start) = rest.split_once('@').unwrap_or((rest, "6"));
            let (n, d) = frac
                .split_once('/')
                .ok_or_else(|| parse_err(format!("bad zero fraction `{frac}`")))?;
            let num: u32 = n.parse().map_err(|e| parse_err(format!("{e}")))?;
            let den: u32 = d.parse().map_err(|e| parse_err(format!("{e}")))?;
            let start: u32 = start.parse().map_err(|e| parse_err(format!("{e}")))?;
            if den == 0 || num > den || start > 40 {
                return Err(invalid(format!("bad zero-block parameters `{rest}`")));
            }
            return Ok(Expansion::ZeroBlock { num, den, start });
        }
        if let Some(hex) = s.strip_prefix("fx:") {
            return u64::from_str_radix(hex, 16)
                .map(Expansion::Fixed)
                .map_err(|e| parse_err(format!("bad fixed-point literal `{hex}`: {e}")));
        }
        if let Some(w) = s.strip_prefix("p:") {
            return Expansion::periodic(&parse_bits(w)?);
        }
        if let Some(seed) = s.strip_prefix("rand:") {
            return seed
                .parse()
                .map(Expansion::Random)
                .map_err(|e| parse_err(format!("bad seed `{seed}`: {e}")));
        }
        if let Some(rest) = s.strip_prefix("trunc:") {
            let (len, inner) = rest
                .split_once(':')
                .ok_or_else(|| parse_err(format!("bad truncation `{s}`")))?;
            let len = len.parse().map_err(|e| parse_err(format!("bad length `{len}`: {e}")))?;
            return Ok(inner.parse::<Expansion>()?.truncated(len));
        }
        if let Some(args) = call(s, "xor") {
            let (a, b) = split_args(args)?;
            return Ok(Expansion::xor(a.parse()?, b.parse()?));
        }
        if let Some(args) = call(s, "shift") {
            let (k, a) = split_args(args)?;
            let k = k
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad shift `{k}`: {e}")))?;
            return Ok(a.parse::<Expansion>()?.shift(k));
        }
        if let Some(args) = call(s, "splice") {
            let (p, t) = split_args(args)?;
            return Ok(Expansion::splice(&parse_bits(p.trim())?, t.parse()?));
        }
        if s == "golden" {
            return Ok(Expansion::Fixed(GOLDEN_FIXED));
        }
        if let Some((p, q)) = s.split_once('/') {
            let p = p
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad numerator `{p}`: {e}")))?;
            let q = q
                .trim()
                .parse()
                .map_err(|e| parse_err(format!("bad denominator `{q}`: {e}")))?;
            return Expansion::rational(p, q);
        }
        if s.contains('.') {
            return parse_decimal(s);
        }
        if s.chars().all(|c| c == '0' || c == '1') {
            return Ok(Expansion::word(&parse_bits(s)?));
        }
        Err(parse_err(format!("unrecognized point literal `{s}`")))
    }
}

/// `⌊2^64 (√5 − 1)/2⌋`.
pub const GOLDEN_FIXED: u64 = 0x9E37_79B9_7F4A_7C15;

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(e: &Expansion, n: usize) -> String {
        let b = e.materialize(n).unwrap();
        (0..n).map(|i| if b.get(i) { '1' } else { '0' }).collect()
    }

    #[test]
    fn champernowne_prefix() {
        assert_eq!(bits(&Expansion::Champernowne, 16), "0110111001011101");
    }

    #[test]
    fn rational_digits() {
        assert_eq!(bits(&"1/3".parse().unwrap(), 8), "01010101");
        assert_eq!(bits(&"0.375".parse().unwrap(), 5), "01100");
        assert_eq!("0.5".parse::<Expansion>().unwrap(), Expansion::rational(1, 2).unwrap());
    }

    #[test]
    fn windows_straddle_words() {
        let e = Expansion::Random(3);
        let b = e.materialize(256).unwrap();
        for pos in [0, 1, 63, 64, 100, 192] {
            let expect = (0..64).fold(0u64, |acc, i| acc << 1 | b.get(pos + i) as u64);
            assert_eq!(b.window(pos), expect);
        }
    }

    #[test]
    fn shift_and_xor() {
        let c = Expansion::Champernowne;
        let s = c.clone().shift(5);
        assert_eq!(bits(&s, 11), &bits(&c, 16)[5..]);
        let x = Expansion::xor(c.clone(), c.clone());
        assert_eq!(bits(&x, 40), "0".repeat(40));
    }

    #[test]
    fn zero_block_layout() {
        let e = Expansion::zero_block();
        let b = e.materialize(1 << 12).unwrap();
        for j in 6..12 {
            let block = 1usize << j;
            let zeros = block / 8 * 5;
            assert!((block + block - zeros..2 * block).all(|i| !b.get(i)), "block {j}");
        }
    }

    #[test]
    fn truncation_is_reported() {
        let e = Expansion::Champernowne.truncated(100);
        assert!(e.materialize(100).is_ok());
        assert!(matches!(
            e.materialize(101),
            Err(Error::PrecisionExhausted {
                needed: 101,
                available: 100
            })
        ));
    }

    #[test]
    fn f64_expansion_is_exact() {
        let e = Expansion::from_f64(0.625).unwrap();
        assert_eq!(e.to_string(), "101");
        assert_eq!(e.fixed_point().unwrap(), 0xA000_0000_0000_0000);
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "1/3",
            "0110",
            "fx:9e3779b97f4a7c15",
            "p:01",
            "champernowne",
            "zeroblock",
            "zeroblock:3/4@5",
            "rand:9",
            "trunc:80:champernowne",
            "xor(champernowne;p:1)",
            "shift(7;rand:1)",
            "splice(0101;rand:2)",
        ] {
            let e: Expansion = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(e.to_string().parse::<Expansion>().unwrap(), e);
        }
        assert!("1.5".parse::<Expansion>().is_err());
        assert!("3/2".parse::<Expansion>().is_err());
        assert!("abc".parse::<Expansion>().is_err());
    }

    #[test]
    fn support_bounds() {
        assert_eq!("0110".parse::<Expansion>().unwrap().support_bound(), Some(3));
        assert_eq!("3/8".parse::<Expansion>().unwrap().support_bound(), Some(3));
        assert_eq!(Expansion::Champernowne.support_bound(), None);
    }
}
