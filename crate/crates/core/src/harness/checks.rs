//! The registered checks.
//!
//! Case generators draw from a ChaCha8 stream seeded by the suite seed and
//! the check name, so adding or reordering checks never perturbs the cases
//! of another. Generated decimals carry four digits and round-trip exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckCase, CheckDef, Outcome, SuiteConfig};
use crate::analysis::{
    self, cluster_value, cylinder_prefix, estimate_c_parameter, extract_limit_subsequence, hitting_set,
    pseudo_universal, Schedule,
};
use crate::density::{self, DensityKind};
use crate::dynsys::{Ball, Expansion, Point, System};
use crate::error::{invalid, Error, Result};
use crate::ideals::{exh_norm_value, membership_verdict, Regime, Status, Submeasure};
use crate::intset::{self, affine_image, difference_set, gap_profile, AffineDirection, IntSet, SetSpec};

pub static REGISTRY: &[CheckDef] = &[
    CheckDef {
        name: TRANSLATION,
        statement: "every finite subset of a return set of a point in the orbit closure of x translates into N(x,U)",
        min_horizon: 256,
        cases: translation_cases,
        run: translation_run,
    },
    CheckDef {
        name: GAPS,
        statement: "return sets of non-periodic points thin out as the ball shrinks; avoiding a fixed point forces long gaps; S-S is syndetic with gap at most ceil(2/delta)",
        min_horizon: 1024,
        cases: gap_cases,
        run: gap_run,
    },
    CheckDef {
        name: DIFFERENCE_RETURN,
        statement: "differences of N(x,W) shifted by n, and k-S for k in N(x',V), lie in the hitting set N(U,V)",
        min_horizon: 4096,
        cases: difference_return_cases,
        run: difference_return_run,
    },
    CheckDef {
        name: ANSARI,
        statement: "N_T(x,U) is the disjoint union over i<k of k*N_{T^k}(T^i x,U)+i",
        min_horizon: 64,
        cases: ansari_cases,
        run: ansari_run,
    },
    CheckDef {
        name: NULL_ORBIT,
        statement: "adding a finitely supported z to x transfers N(x,U0) beyond the support into N(x+z,U)",
        min_horizon: 256,
        cases: null_orbit_cases,
        run: null_orbit_run,
    },
    CheckDef {
        name: ARITHMETIC,
        statement: "affine images k*S+h keep null sets null and divide upper and Banach densities by k",
        min_horizon: 1 << 15,
        cases: arithmetic_cases,
        run: arithmetic_run,
    },
    CheckDef {
        name: DENSITY_CHAIN,
        statement: "lower Banach <= lower <= upper density, and logarithmic <= upper <= upper Banach",
        min_horizon: 64,
        cases: density_chain_cases,
        run: density_chain_run,
    },
    CheckDef {
        name: EXH_CONSISTENCY,
        statement: "the nu exhaustive verdict separates density-zero sets from sets of positive density",
        min_horizon: 1 << 14,
        cases: exh_cases,
        run: exh_run,
    },
    CheckDef {
        name: ROTATION,
        statement: "for an irrational rotation every target is a cluster point of positive density and no target is a limit point",
        min_horizon: 1 << 16,
        cases: rotation_cases,
        run: rotation_run,
    },
    CheckDef {
        name: CHAMPERNOWNE,
        statement: "the Champernowne point visits every ball of radius r with frequency 2r under doubling",
        min_horizon: 1 << 19,
        cases: champernowne_cases,
        run: champernowne_run,
    },
    CheckDef {
        name: C_PARAMETER,
        statement: "the zero-block point keeps nu-norm at least 1/2 near 0 at every scale, and the extracted index set inherits it",
        min_horizon: 1 << 18,
        cases: c_parameter_cases,
        run: c_parameter_run,
    },
];

const TRANSLATION: &str = "translation_embedding";
const GAPS: &str = "gap_properties";
const DIFFERENCE_RETURN: &str = "difference_return";
const ANSARI: &str = "ansari";
const NULL_ORBIT: &str = "null_orbit_transfer";
const ARITHMETIC: &str = "arithmetic_ideal";
const DENSITY_CHAIN: &str = "density_chain";
const EXH_CONSISTENCY: &str = "exh_consistency";
const ROTATION: &str = "rotation_dichotomy";
const CHAMPERNOWNE: &str = "champernowne_universality";
const C_PARAMETER: &str = "c_parameter";

fn case_rng(cfg: &SuiteConfig, check: &str) -> ChaCha8Rng {
    // FNV-1a of the name.
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in check.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(cfg.seed ^ h)
}

fn decimal(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> String {
    format!("{:.4}", rng.gen_range(lo..hi))
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn random_point(sys: &System, rng: &mut ChaCha8Rng) -> String {
    match sys {
        System::Rotation { .. } => decimal(rng, 0.0, 0.9999),
        System::WeightedShift { .. } => (0..sys.dim().unwrap_or(1))
            .map(|_| format!("{:.3}", rng.gen_range(-1.0..1.0)))
            .collect::<Vec<_>>()
            .join(","),
        _ => format!("rand:{}", rng.gen::<u32>()),
    }
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| if rng.gen() { '1' } else { '0' }).collect()
}

/// Upper bound on the factor by which one step can stretch distances.
fn expansion_factor(sys: &System) -> f64 {
    match sys {
        System::Rotation { .. } => 1.0,
        System::Doubling { stride } | System::Cantor { stride, .. } => (*stride as f64).exp2(),
        System::WeightedShift { weights, stride } => {
            weights.iter().fold(1.0f64, |a, w| a.max(w.abs())).powi(*stride as i32)
        }
    }
}

fn horizon_of(case: &CheckCase) -> Result<usize> {
    case.get("horizon")
}

// ---------------------------------------------------------------------------
// translation_embedding

fn translation_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let mut rng = case_rng(cfg, TRANSLATION);
    let horizon = cfg.horizon.min(1 << 18);
    let golden = decimal(&mut rng, 0.0, 0.9999);
    let configs: [(&str, &str, &str, f64); 5] = [
        ("doubling", "champernowne", "1/3", 0.05),
        ("doubling", "champernowne", "champernowne", 0.1),
        ("cantor:32", "champernowne", "p:01", 0.125),
        ("cantor:32", "champernowne", "0", 0.125),
        ("rotation:golden", "0", &golden, 0.05),
    ];
    let mut out = Vec::new();
    for (sys, x, y, r) in configs {
        let candidates = sample_returns(sys, y, r).unwrap_or_default();
        for trial in 0..3 {
            let s: Vec<usize> = if y == "0" {
                (0..[4, 6, 8][trial]).filter(|n| candidates.contains(n)).collect()
            } else {
                let mut s: Vec<usize> = candidates.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                if s.is_empty() {
                    s.extend(candidates.first());
                }
                s
            };
            out.push(
                CheckCase::new(TRANSLATION)
                    .with("system", sys)
                    .with("x", x)
                    .with("y", y)
                    .with("radius", r)
                    .with("s", join(&s))
                    .with("horizon", horizon),
            );
        }
    }
    out
}

/// `N(y, B(y', r)) ∩ [0, 8)` with the ball centered at `y` itself.
fn sample_returns(sys: &str, y: &str, r: f64) -> Result<Vec<usize>> {
    let sys = System::from_spec(sys)?;
    let y: Point = y.parse()?;
    let orbit = sys.orbit(&y, 8)?;
    Ok(orbit.return_set(&sys.state(&y)?, r).iter().collect())
}

fn translation_run(case: &CheckCase) -> Result<Outcome> {
    let sys = case.system("system")?;
    let x = case.point("x")?;
    let y = case.point("y")?;
    let ball = case.ball("y", "radius")?;
    let s = case.list("s")?;
    let horizon = horizon_of(case)?;
    let Some(&top) = s.iter().max() else {
        return Ok(Outcome::pass("empty sample embeds at k=0").metric("k", 0.0));
    };
    if top + 1 >= horizon {
        return Err(invalid("sample exceeds the horizon"));
    }
    let center = sys.state(&ball.center)?;
    let oy = sys.orbit(&y, top + 1)?;
    let mut margin = f64::INFINITY;
    for &t in &s {
        let d = sys.distance(&oy.state(t), &center);
        if d >= ball.radius {
            return Ok(Outcome::inconclusive(format!("sample element {t} is not in N(y,U)")));
        }
        margin = margin.min(ball.radius - d);
    }
    let ox = sys.orbit(&x, horizon)?;
    let hits = ox.return_set(&center, ball.radius);
    let span = horizon - top;
    if let Some(k) = (0..span).find(|&k| s.iter().all(|&t| hits.contains(k + t))) {
        return Ok(Outcome::pass(format!("S+{k} lies in N(x,U)"))
            .metric("k", k as f64)
            .metric("size", s.len() as f64));
    }
    // Soundness of a failure needs T^n x close enough to y that the first
    // max S steps cannot push it out of U.
    let eps = margin / expansion_factor(&sys).powi(top as i32);
    let ys = sys.state(&y)?;
    let shadow = (0..span).find(|&n| sys.distance(&ox.state(n), &ys) < eps);
    Ok(match shadow {
        Some(n) => Outcome::violation(format!("T^{n} x is within {eps:e} of y but no k embeds S")),
        None => Outcome::inconclusive(format!("y is not within {eps:e} of the orbit of x")),
    })
}

// ---------------------------------------------------------------------------
// gap_properties

fn gap_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let mut rng = case_rng(cfg, GAPS);
    let h = cfg.horizon.min(1 << 18);
    let mut out = Vec::new();
    let golden = decimal(&mut rng, 0.0, 0.9999);
    for (sys, x) in [
        ("rotation:golden", "0"),
        ("rotation:golden", golden.as_str()),
        ("doubling", "champernowne"),
        ("cantor:32", "champernowne"),
    ] {
        out.push(
            CheckCase::new(GAPS)
                .with("part", "min_gap")
                .with("system", sys)
                .with("x", x)
                .with("k", 10)
                .with("horizon", h),
        );
    }
    for eps in [0.1, 0.05, 0.01] {
        for (sys, x) in [("rotation:golden", "0"), ("doubling", "champernowne")] {
            out.push(
                CheckCase::new(GAPS)
                    .with("part", "banach")
                    .with("system", sys)
                    .with("x", x)
                    .with("eps", eps)
                    .with("horizon", h),
            );
        }
    }
    let growth_h = cfg.horizon.min(1 << 20);
    let mut growth = vec![
        ("doubling", "1/3".to_string(), 0.05),
        ("cantor:32", "p:01".to_string(), 0.125),
    ];
    for _ in 0..2 {
        growth.push(("doubling", decimal(&mut rng, 0.3, 0.7), 0.05));
    }
    for (sys, c, r) in growth {
        out.push(
            CheckCase::new(GAPS)
                .with("part", "growth")
                .with("system", sys)
                .with("x", "champernowne")
                .with("center", c)
                .with("radius", r)
                .with("fixed", "0")
                .with("gap", 10)
                .with("horizon", growth_h),
        );
    }
    let planted_h = cfg.horizon.min(1 << 20);
    for family in PLANTED_FAMILIES {
        for _ in 0..3 {
            out.push(
                CheckCase::new(GAPS)
                    .with("part", "difference")
                    .with("family", family)
                    .with("seed", rng.gen::<u32>())
                    .with("horizon", planted_h),
            );
        }
        for _ in 0..2 {
            out.push(
                CheckCase::new(GAPS)
                    .with("part", "calibrate")
                    .with("family", family)
                    .with("seed", rng.gen::<u32>())
                    .with("horizon", cfg.horizon.min(1 << 10)),
            );
        }
    }
    out
}

/// Families of planted sets with upper Banach density at least 0.2.
pub const PLANTED_FAMILIES: [&str; 3] = ["bernoulli", "blocks", "apnoise"];

/// Planted set of the given family:
///
/// * `bernoulli`: independent membership with probability in `[0.2, 0.6)`;
/// * `blocks`: density-0.05 background plus intervals of length `L ∈ [32, 256)`
///   repeated with period in `[2L, 4L)`;
/// * `apnoise`: a progression of step `k ≤ 5` plus density-0.01 noise.
pub fn planted_set(family: &str, seed: u64, horizon: usize) -> Result<IntSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        "bernoulli" => SetSpec::Random {
            p: rng.gen_range(0.2..0.6),
            seed,
        }
        .build(horizon),
        "blocks" => {
            let background = SetSpec::Random { p: 0.05, seed }.build(horizon)?;
            let len = rng.gen_range(32..256);
            let period = rng.gen_range(2 * len..4 * len);
            let phase = rng.gen_range(0..period);
            let blocks = IntSet::from_ranges(
                horizon,
                (phase..horizon).step_by(period).map(|a| a..(a + len).min(horizon)),
            );
            background.union(&blocks)
        }
        "apnoise" => {
            let k = rng.gen_range(2..=5);
            let ap = SetSpec::Progression {
                k,
                h: rng.gen_range(0..k),
            }
            .build(horizon)?;
            ap.union(&SetSpec::Random { p: 0.01, seed }.build(horizon)?)
        }
        _ => Err(invalid(format!("unknown planted family `{family}`"))),
    }
}

/// `{b − a : a ≤ b ∈ S}` by enumeration of pairs.
pub fn brute_difference_set(s: &IntSet) -> IntSet {
    let elems: Vec<usize> = s.iter().collect();
    let mut out = vec![false; s.horizon()];
    for (i, &a) in elems.iter().enumerate() {
        for &b in &elems[i..] {
            out[b - a] = true;
        }
    }
    IntSet::from_predicate(s.horizon(), |n| out[n])
}

/// `⌈2/δ⌉` gap bound for `S − S` when `bd⋆(S) ≥ δ`.
pub fn difference_gap_bound(delta: f64) -> usize {
    (2.0 / delta).ceil() as usize
}

fn gap_run(case: &CheckCase) -> Result<Outcome> {
    match case.raw("part")? {
        "min_gap" => min_gap_run(case),
        "banach" => banach_run(case),
        "growth" => growth_run(case),
        "difference" => difference_run(case, false),
        "calibrate" => difference_run(case, true),
        other => Err(Error::Parse(format!("unknown gap_properties part `{other}`"))),
    }
}

fn finest_level(sys: &System) -> i32 {
    match sys {
        System::Cantor { depth, .. } => *depth as i32,
        _ => 48,
    }
}

fn min_gap_run(case: &CheckCase) -> Result<Outcome> {
    let sys = case.system("system")?;
    let x = case.point("x")?;
    let k: usize = case.get("k")?;
    let h = horizon_of(case)?;
    if let Some(p) = sys.detect_period(&x, 1024.min(h / 2).max(1), 0.0)? {
        return Ok(Outcome::inconclusive(format!("x is periodic with period {p}")));
    }
    let orbit = sys.orbit(&x, h)?;
    let cx = sys.state(&x)?;
    for j in 1..=finest_level(&sys) {
        let r = (-(j as f64)).exp2();
        let n = orbit.return_set(&cx, r);
        let min_gap = gap_profile(&n, None).gaps.into_iter().min();
        if min_gap.into_iter().all(|g| g > k) {
            return Ok(Outcome::pass(format!("r=2^-{j} separates returns by more than {k}"))
                .metric("radius", r)
                .metric("returns", n.len() as f64));
        }
    }
    Ok(Outcome::violation(format!(
        "no dyadic radius separates returns by more than {k}"
    )))
}

fn banach_run(case: &CheckCase) -> Result<Outcome> {
    let sys = case.system("system")?;
    let x = case.point("x")?;
    let eps: f64 = case.get("eps")?;
    let h = horizon_of(case)?;
    if let Some(p) = sys.detect_period(&x, 1024.min(h / 2).max(1), 0.0)? {
        return Ok(Outcome::inconclusive(format!("x is periodic with period {p}")));
    }
    let orbit = sys.orbit(&x, h)?;
    let cx = sys.state(&x)?;
    for j in 1..=finest_level(&sys) {
        let r = (-(j as f64)).exp2();
        let bd = analysis::banach_upper(&orbit.return_set(&cx, r));
        if bd <= eps {
            return Ok(Outcome::pass(format!("r=2^-{j} gives bd*={bd}"))
                .metric("radius", r)
                .metric("bdstar", bd));
        }
    }
    Ok(Outcome::violation(format!("no dyadic radius brings bd* below {eps}")))
}

fn growth_run(case: &CheckCase) -> Result<Outcome> {
    let sys = case.system("system")?;
    let x = case.point("x")?;
    let ball = case.ball("center", "radius")?;
    let fixed = case.point("fixed")?;
    let want: usize = case.get("gap")?;
    let h = horizon_of(case)?;
    let f0 = sys.state(&fixed)?;
    if sys.state(&sys.step(&fixed)?)? != f0 {
        return Ok(Outcome::inconclusive(format!("{fixed} is not a fixed point")));
    }
    if sys.distance(&f0, &sys.state(&ball.center)?) <= ball.radius {
        return Ok(Outcome::inconclusive("the fixed point lies in the closure of U"));
    }
    let orbit = sys.orbit(&x, h)?;
    let near = (0..h).any(|n| sys.distance(&orbit.state(n), &f0) < 1.0 / 256.0);
    if !near {
        return Ok(Outcome::inconclusive(
            "the orbit never comes within 2^-8 of the fixed point",
        ));
    }
    let n = orbit.return_set_ball(&ball)?;
    let profile = gap_profile(&n, None);
    let gap = profile.max_gap.unwrap_or(0).max(profile.trailing_gap.unwrap_or(0));
    let bd = analysis::banach_upper(&n);
    Ok(Outcome::check(gap >= want, format!("max gap {gap} against {want}"))
        .metric("max_gap", gap as f64)
        .metric("bdstar", bd))
}

fn difference_run(case: &CheckCase, calibrate: bool) -> Result<Outcome> {
    let family = case.raw("family")?;
    let seed: u64 = case.get("seed")?;
    let h = horizon_of(case)?;
    let s = planted_set(family, seed, h)?;
    let delta = analysis::banach_upper(&s);
    if delta < 0.2 {
        return Ok(Outcome::inconclusive(format!("planted set has bd*={delta} below 0.2")));
    }
    let bound = difference_gap_bound(delta);
    let d = difference_set(&s, &s)?;
    if calibrate {
        let brute = brute_difference_set(&s);
        if brute != d {
            return Ok(Outcome::violation("difference set disagrees with pair enumeration"));
        }
    }
    let half = d.truncate(h / 2);
    let profile = gap_profile(&half, Some(bound));
    let gap = profile.max_gap.unwrap_or(usize::MAX);
    let trailing = profile.trailing_gap.unwrap_or(usize::MAX);
    Ok(Outcome::check(
        gap <= bound && trailing < bound,
        format!("S-S on [0,{}) has max gap {gap}, bound {bound}", h / 2),
    )
    .metric("delta", delta)
    .metric("max_gap", gap as f64))
}

// ---------------------------------------------------------------------------
// difference_return

fn difference_return_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let mut rng = case_rng(cfg, DIFFERENCE_RETURN);
    let h = cfg.horizon.min(1 << 15);
    let mut out = Vec::new();
    let base = |part: &str, sys: &str, x: &str| {
        CheckCase::new(DIFFERENCE_RETURN)
            .with("part", part)
            .with("system", sys)
            .with("x", x)
            .with("horizon", h)
    };
    for pick in 0..3 {
        out.push(
            base("shifted_differences", "doubling", "champernowne")
                .with("u", "0.2")
                .with("ru", 0.1)
                .with("v", "0.8")
                .with("rv", 0.1)
                .with("pick", pick),
        );
    }
    for pick in 0..2 {
        let v = format!("rand:{}", rng.gen::<u32>());
        out.push(
            base("shifted_differences", "cantor:32", "champernowne")
                .with("u", "p:01")
                .with("ru", 0.25)
                .with("v", v)
                .with("rv", 0.25)
                .with("pick", pick),
        );
        out.push(
            base("shifted_differences", "rotation:golden", "0")
                .with("u", decimal(&mut rng, 0.0, 0.9999))
                .with("ru", 0.05)
                .with("v", decimal(&mut rng, 0.0, 0.9999))
                .with("rv", 0.05)
                .with("pick", pick),
        );
    }
    out.push(
        base("shifted_differences", "doubling", "champernowne")
            .with("u", "0.5")
            .with("ru", 1.0)
            .with("v", "0.5")
            .with("rv", 1.0)
            .with("pick", 1),
    );
    let k_cases: [(&str, &str, &str, f64, &str, f64, &str); 5] = [
        ("doubling", "champernowne", "0", 0.1, "0.6", 0.1, "0,1,2,3"),
        ("doubling", "champernowne", "0.3", 0.1, "0.7", 0.05, "0,2"),
        ("cantor:32", "champernowne", "0", 0.25, "1", 0.25, "0,1,2,3,4,5"),
        ("rotation:golden", "0", "0.25", 0.05, "0.75", 0.05, "0,13"),
        ("doubling", "champernowne", "0.5", 1.0, "0.5", 1.0, "0,1,2"),
    ];
    for (sys, x, u, ru, v, rv, s) in k_cases {
        out.push(
            base("k_minus_s", sys, x)
                .with("u", u)
                .with("ru", ru)
                .with("v", v)
                .with("rv", rv)
                .with("s", s),
        );
    }
    out
}

fn difference_return_run(case: &CheckCase) -> Result<Outcome> {
    match case.raw("part")? {
        "shifted_differences" => shifted_differences_run(case),
        "k_minus_s" => k_minus_s_run(case),
        other => Err(Error::Parse(format!("unknown difference_return part `{other}`"))),
    }
}

/// Samples `n ∈ N(U,V)` with an explicit grid witness, then checks that every
/// `d ∈ E − E` (with `E` an initial segment of `N(x, U ∩ T^{−n}V)`) has
/// `d + n ∈ N(U,V)` witnessed by `T^q x` for some `q ∈ E` with `q + d ∈ E`.
fn shifted_differences_run(case: &CheckCase) -> Result<Outcome> {
    let sys = case.system("system")?;
    let x = case.point("x")?;
    let u = case.ball("u", "ru")?;
    let v = case.ball("v", "rv")?;
    let pick: usize = case.get("pick")?;
    let h = horizon_of(case)?;
    let orbit = sys.orbit(&x, h)?;
    let surrogate = pseudo_universal(&orbit);
    if !surrogate.passed {
        return Ok(Outcome::inconclusive(format!(
            "x fails the density surrogate: {}",
            surrogate.detail
        )));
    }
    let hits = hitting_set(&sys, &u, &v, 64, h)?;
    let observed: Vec<usize> = hits.set.iter().collect();
    if observed.is_empty() {
        return Ok(Outcome::inconclusive("no grid point of U reaches V"));
    }
    let n = observed[(pick * observed.len() / 4).min(observed.len() - 1)];
    let y = hits.witness(n).expect("n was observed");
    if !(sys.in_ball(&u, y)? && sys.in_ball(&v, &sys.apply(y, n)?)?) {
        return Ok(Outcome::violation(format!("grid witness for n={n} does not verify")));
    }
    let nu = orbit.return_set_ball(&u)?;
    let nv = orbit.return_set_ball(&v)?;
    let w = nu.intersect(&affine_image(&nv, 1, n as i64, AffineDirection::Backward)?)?;
    let e: Vec<usize> = w.iter().take(256).collect();
    let Some(&last) = e.last() else {
        return Ok(Outcome::inconclusive(format!(
            "N(x,W) is empty below the horizon for n={n}"
        )));
    };
    let es = IntSet::from_elements(last + 1, e.iter().copied());
    let diffs = difference_set(&es, &es)?;
    let cu = sys.state(&u.center)?;
    let cv = sys.state(&v.center)?;
    for d in diffs.iter() {
        let q = e.iter().copied().find(|&q| q + d <= last && es.contains(q + d));
        let verified = q.is_some_and(|q| {
            sys.distance(&orbit.state(q), &cu) < u.radius && sys.distance(&orbit.state(q + d + n), &cv) < v.radius
        });
        if !verified {
            return Ok(Outcome::violation(format!("d+n={} has no verified witness", d + n)));
        }
    }
    Ok(
        Outcome::pass(format!("{} shifted differences verified for n={n}", diffs.len()))
            .metric("n", n as f64)
            .metric("differences", diffs.len() as f64),
    )
}

/// Finds `x' = T^j x` with `T^s x' ∈ U` for `s ∈ S` and at least three
/// `k ≥ max S` in `N(x',V)`; each `k − s` is witnessed by `T^s x'`.
fn k_minus_s_run(case: &CheckCase) -> Result<Outcome> {
    let sys = case.system("system")?;
    let x = case.point("x")?;
    let u = case.ball("u", "ru")?;
    let v = case.ball("v", "rv")?;
    let s = case.list("s")?;
    let h = horizon_of(case)?;
    if !s.contains(&0) {
        return Err(Error::Parse("S must contain 0".into()));
    }
    let top = *s.iter().max().expect("S contains 0");
    let orbit = sys.orbit(&x, h)?;
    let surrogate = pseudo_universal(&orbit);
    if !surrogate.passed {
        return Ok(Outcome::inconclusive(format!(
            "x fails the density surrogate: {}",
            surrogate.detail
        )));
    }
    let nu = orbit.return_set_ball(&u)?;
    let nv = orbit.return_set_ball(&v)?;
    let Some(j) = (0..h.saturating_sub(top)).find(|&j| s.iter().all(|&t| nu.contains(j + t))) else {
        return Ok(Outcome::inconclusive("no orbit point has S inside its return set"));
    };
    let cu = sys.state(&u.center)?;
    let cv = sys.state(&v.center)?;
    let mut found = Vec::new();
    for k in nv.iter().filter(|&k| k >= j + top) {
        let ok = s.iter().all(|&t| {
            sys.distance(&orbit.state(j + t), &cu) < u.radius && sys.distance(&orbit.state(k), &cv) < v.radius
        });
        if !ok {
            return Ok(Outcome::violation(format!(
                "k={} fails the direct witness check",
                k - j
            )));
        }
        found.push(k - j);
        if found.len() == 3 {
            break;
        }
    }
    Ok(Outcome::check(
        found.len() == 3,
        format!("found {} values of k with k-S in N(U,V)", found.len()),
    )
    .metric("j", j as f64)
    .metric("k", found.last().copied().unwrap_or(0) as f64))
}

// ---------------------------------------------------------------------------
// ansari

fn ansari_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let mut rng = case_rng(cfg, ANSARI);
    let h = cfg.horizon.min(1 << 16);
    let mut out = Vec::new();
    for spec in ["doubling", "rotation:golden", "cantor:32"] {
        let sys = System::from_spec(spec).expect("static spec");
        for k in 1..=3 {
            for _ in 0..4 {
                let (center, radius) = match sys {
                    System::Cantor { .. } => (random_word(&mut rng, 8), (-(rng.gen_range(1..8) as f64)).exp2()),
                    _ => (decimal(&mut rng, 0.0, 0.9999), rng.gen_range(100..2000) as f64 / 1e4),
                };
                out.push(
                    CheckCase::new(ANSARI)
                        .with("system", spec)
                        .with("x", random_point(&sys, &mut rng))
                        .with("center", center)
                        .with("radius", radius)
                        .with("k", k)
                        .with("horizon", h),
                );
            }
        }
    }
    out
}

/// Both sides of the decomposition on `[0, ⌊N/k⌋·k)`.
pub fn ansari_sides(sys: &System, x: &Point, ball: &Ball, k: usize, horizon: usize) -> Result<(IntSet, IntSet)> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let m = horizon / k * k;
    if m == 0 {
        return Err(invalid(format!("horizon {horizon} is below k={k}")));
    }
    let lhs = sys.orbit(x, m)?.return_set_ball(ball)?;
    let pk = sys.power(k)?;
    let mut rhs = IntSet::empty(m);
    for i in 0..k {
        let xi = sys.apply(x, i)?;
        let part = pk.orbit(&xi, m / k)?.return_set_ball(ball)?;
        rhs = rhs.union(&IntSet::from_elements(m, part.iter().map(|n| k * n + i)))?;
    }
    Ok((lhs, rhs))
}

fn ansari_run(case: &CheckCase) -> Result<Outcome> {
    let sys = case.system("system")?;
    let x = case.point("x")?;
    let ball = case.ball("center", "radius")?;
    let k: usize = case.get("k")?;
    let (lhs, rhs) = ansari_sides(&sys, &x, &ball, k, horizon_of(case)?)?;
    let mismatch = lhs.minus(&rhs)?.union(&rhs.minus(&lhs)?)?;
    Ok(match mismatch.min() {
        None => Outcome::pass(format!("{} returns match", lhs.len())).metric("returns", lhs.len() as f64),
        Some(n) => Outcome::violation(format!("sides differ at n={n}")),
    })
}

// ---------------------------------------------------------------------------
// null_orbit_transfer

fn null_orbit_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let mut rng = case_rng(cfg, NULL_ORBIT);
    let h = cfg.horizon.min(1 << 14);
    let mut out = Vec::new();
    let base = |sys: &str, periodic: bool| {
        CheckCase::new(NULL_ORBIT)
            .with("system", sys)
            .with("periodic", periodic)
            .with("smax", 64)
            .with("horizon", h)
    };
    for i in 0..10 {
        let periodic = i >= 6;
        let word = random_word(&mut rng, if periodic { 3 } else { 5 });
        let (x, u) = if periodic {
            (format!("p:{word}"), format!("p:{word}"))
        } else {
            (format!("rand:{}", rng.gen::<u32>()), word)
        };
        // The last general case puts x inside V, so z = 0.
        let v = if i == 5 {
            x.clone()
        } else {
            format!("rand:{}", rng.gen::<u32>())
        };
        out.push(
            base("cantor:32", periodic)
                .with("x", x)
                .with("u", u)
                .with("radius", (-(rng.gen_range(1..=5) as f64)).exp2())
                .with("v", v)
                .with("vradius", (-(rng.gen_range(1..=10) as f64)).exp2()),
        );
    }
    let wshift = System::from_spec("wshift:8,2").expect("static spec");
    for i in 0..8 {
        let periodic = i >= 6;
        let (x, u) = if periodic {
            let zero = ["0"; 8].join(",");
            (zero.clone(), zero)
        } else {
            (random_point(&wshift, &mut rng), random_point(&wshift, &mut rng))
        };
        out.push(
            base("wshift:8,2", periodic)
                .with("x", x)
                .with("u", u)
                .with("radius", decimal(&mut rng, 0.2, 1.0))
                .with("v", random_point(&wshift, &mut rng))
                .with("vradius", decimal(&mut rng, 0.05, 0.5)),
        );
    }
    out
}

/// `z` with `x ⊕ z ∈ V` and finite support: the XOR of `x` and the center of
/// `V` truncated to the cylinder prefix on the shift, `v − x` on the
/// weighted shift.
pub fn transfer_perturbation(sys: &System, x: &Point, v: &Ball) -> Result<Point> {
    match (sys, x, &v.center) {
        (System::Cantor { depth, .. }, Point::Bits(xe), Point::Bits(ve)) => {
            let len = cylinder_prefix(v.radius, *depth);
            let bits = Expansion::xor(xe.clone(), ve.clone()).materialize(len)?;
            let word: Vec<bool> = (0..len).map(|i| bits.get(i)).collect();
            Ok(Point::Bits(Expansion::word(&word)))
        }
        (System::WeightedShift { .. }, Point::Vector(xv), Point::Vector(vv)) if xv.len() == vv.len() => {
            Ok(Point::Vector(vv.iter().zip(xv).map(|(a, b)| a - b).collect()))
        }
        _ => Err(invalid(format!(
            "{sys} is not a homomorphism instance for these points"
        ))),
    }
}

fn null_orbit_run(case: &CheckCase) -> Result<Outcome> {
    let sys = case.system("system")?;
    let x = case.point("x")?;
    let u = case.ball("u", "radius")?;
    let v = case.ball("v", "vradius")?;
    let periodic: bool = case.get("periodic")?;
    let smax: usize = case.get("smax")?;
    let h = horizon_of(case)?;
    let u0 = Ball::new(u.center.clone(), u.radius / 2.0)?;
    let z = transfer_perturbation(&sys, &x, &v)?;
    let s = sys
        .null_after(&z)
        .ok_or_else(|| invalid("perturbation has no finite support"))?;
    if s > smax {
        return Ok(Outcome::inconclusive(format!("support {s} exceeds the bound {smax}")));
    }
    let y = sys.group_add(&x, &z)?;
    if !sys.in_ball(&v, &y)? {
        return Ok(Outcome::violation("x+z misses V"));
    }
    let a0 = sys.orbit(&x, h)?.return_set_ball(&u0)?;
    let ny = sys.orbit(&y, h)?.return_set_ball(&u)?;
    if let Some(n) = a0.restrict(s.min(h)..h).minus(&ny)?.min() {
        return Ok(Outcome::violation(format!(
            "n={n} is in N(x,U0) beyond {s} but not in N(y,U)"
        )));
    }
    if periodic {
        let Some(k) = sys.detect_period(&x, 64, 0.0)? else {
            return Ok(Outcome::inconclusive("u is not periodic within 64 steps"));
        };
        if let Some(n) = (s.div_ceil(k) * k..h).step_by(k).find(|&n| !ny.contains(n)) {
            return Ok(Outcome::violation(format!(
                "multiple n={n} of the period {k} is not in N(y,U)"
            )));
        }
    }
    let mut out = Outcome::pass(format!("transfer holds beyond s={s}"))
        .metric("support", s as f64)
        .metric("returns", a0.len() as f64);
    if let Some(h0) = shift_lemma(&ny, &a0)? {
        match h0 {
            Ok(shift) => out = out.metric("lemma_shift", shift as f64),
            Err(msg) => return Ok(Outcome::violation(msg)),
        }
    }
    Ok(out)
}

/// With `h₀` the largest gap of `B`, some `h < h₀` has
/// `‖A ∩ (B − h)‖_ν ≥ ‖A ∩ [min B, max B]‖_ν / h₀` by subadditivity.
/// `None` when `B` is too sparse for the scan to be cheap.
fn shift_lemma(a: &IntSet, b: &IntSet) -> Result<Option<std::result::Result<usize, String>>> {
    let (Some(lo), Some(hi), Some(h0)) = (b.min(), b.max(), gap_profile(b, None).max_gap) else {
        return Ok(None);
    };
    if h0 > 4096 {
        return Ok(None);
    }
    let nu = Submeasure::nu();
    let target = exh_norm_value(&nu, &a.restrict(lo..hi + 1)) / h0 as f64;
    for shift in 0..h0 {
        let shifted = affine_image(b, 1, shift as i64, AffineDirection::Backward)?;
        if exh_norm_value(&nu, &a.intersect(&shifted)?) >= target - 1e-12 {
            return Ok(Some(Ok(shift)));
        }
    }
    Ok(Some(Err(format!("no shift below {h0} reaches norm {target}"))))
}

// ---------------------------------------------------------------------------
// arithmetic_ideal

const ARITHMETIC_SAMPLES: [&str; 8] = [
    "ap:2,0",
    "ap:3,1",
    "ap:5,2",
    "ap:7,3",
    "blocks:pow4",
    "squares",
    "list:1,5,9",
    "all",
];

fn arithmetic_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let h = cfg.horizon.min(1 << 20);
    let mut out = Vec::new();
    for set in ARITHMETIC_SAMPLES {
        // Prefix schedules are dyadic, so on oscillating sets the estimate
        // commutes with dilation only for k a power of two.
        let pairs = if set == "blocks:pow4" {
            [(2, 0), (2, 1), (4, 3), (1, 4)]
        } else {
            [(3, 1), (2, 0), (5, 2), (1, 4)]
        };
        for (k, shift) in pairs {
            out.push(
                CheckCase::new(ARITHMETIC)
                    .with("set", set)
                    .with("k", k)
                    .with("h", shift)
                    .with("threshold", cfg.threshold)
                    .with("horizon", h),
            );
        }
    }
    out
}

fn arithmetic_run(case: &CheckCase) -> Result<Outcome> {
    let horizon = horizon_of(case)?;
    let s = intset::build(case.raw("set")?, horizon)?;
    let k: i64 = case.get("k")?;
    let shift: i64 = case.get("h")?;
    let threshold: f64 = case.get("threshold")?;
    let image = affine_image(&s, k, shift, AffineDirection::Forward)?;
    let nu = Submeasure::nu();
    let before = membership_verdict(&nu, Regime::Exh, &s, threshold)?;
    match before.status {
        Status::Member => {
            let after = membership_verdict(&nu, Regime::Exh, &image, threshold)?;
            Ok(Outcome::check(
                after.status == Status::Member,
                format!("null set maps to norm {}", after.witness),
            )
            .metric("image_norm", after.witness))
        }
        Status::Positive => {
            let tol = 2.0 * k as f64 / horizon as f64 + 1e-3;
            let mut worst: f64 = 0.0;
            for kind in [DensityKind::UpperAsymptotic, DensityKind::UpperBanach] {
                let a = density::estimate(&s, kind).value;
                let b = density::estimate(&image, kind).value;
                worst = worst.max((b - a / k as f64).abs());
            }
            Ok(
                Outcome::check(worst <= tol, format!("density deviation {worst:e} against {tol:e}"))
                    .metric("deviation", worst),
            )
        }
        Status::Undetermined => Ok(Outcome::inconclusive(format!(
            "nu verdict undetermined at norm {}",
            before.witness
        ))),
    }
}

// ---------------------------------------------------------------------------
// density_chain

const CHAIN_STRUCTURED: [&str; 8] = [
    "ap:3,1",
    "ap:16,5",
    "blocks:pow4",
    "squares",
    "all",
    "list:2,3,5,7",
    "intervals:10-20;100-2000",
    "intervals:0-999",
];

fn density_chain_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let mut rng = case_rng(cfg, DENSITY_CHAIN);
    let h = cfg.horizon.min(1 << 20);
    let mut out: Vec<CheckCase> = CHAIN_STRUCTURED
        .iter()
        .map(|s| CheckCase::new(DENSITY_CHAIN).with("set", s).with("horizon", h))
        .collect();
    for p in [0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9] {
        let spec = format!("random:{p},{}", rng.gen::<u32>());
        out.push(CheckCase::new(DENSITY_CHAIN).with("set", spec).with("horizon", h));
    }
    out
}

/// Violations of the density chain, each as `(name, excess)`.
pub fn density_chain_violations(s: &IntSet, tol: f64) -> Vec<(&'static str, f64)> {
    let get = |k| density::estimate(s, k).value;
    let ld = get(DensityKind::UpperLogarithmic);
    let d = get(DensityKind::UpperAsymptotic);
    let bd = get(DensityKind::UpperBanach);
    let dl = get(DensityKind::LowerAsymptotic);
    let bdl = get(DensityKind::LowerBanach);
    [
        ("ld<=d", ld - d),
        ("d<=bd", d - bd),
        ("bdl<=dl", bdl - dl),
        ("dl<=d", dl - d),
    ]
    .into_iter()
    .filter(|&(_, excess)| excess > tol)
    .collect()
}

fn density_chain_run(case: &CheckCase) -> Result<Outcome> {
    let s = intset::build(case.raw("set")?, horizon_of(case)?)?;
    let bad = density_chain_violations(&s, 1e-9);
    Ok(match bad.first() {
        None => Outcome::pass("chain holds").metric("size", s.len() as f64),
        Some((name, excess)) => Outcome::violation(format!("{name} fails by {excess:e}")),
    })
}

// ---------------------------------------------------------------------------
// exh_consistency

/// Labeled family: `true` marks positive upper density.
pub fn labeled_family(seed: u64) -> Vec<(String, bool)> {
    let mut out: Vec<(String, bool)> = (1..=16).map(|k| (format!("ap:{k},{}", k / 2), true)).collect();
    out.push(("squares".into(), false));
    out.push(("list:3,14,159".into(), false));
    out.push(("blocks:pow4".into(), true));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in [0.02, 0.1, 0.5] {
        out.push((format!("random:{p},{}", rng.gen::<u32>()), true));
    }
    out
}

fn exh_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let h = cfg.horizon.min(1 << 20);
    labeled_family(cfg.seed)
        .into_iter()
        .map(|(set, positive)| {
            CheckCase::new(EXH_CONSISTENCY)
                .with("set", set)
                .with("positive", positive)
                .with("threshold", cfg.threshold)
                .with("horizon", h)
        })
        .collect()
}

fn exh_run(case: &CheckCase) -> Result<Outcome> {
    let s = intset::build(case.raw("set")?, horizon_of(case)?)?;
    let positive: bool = case.get("positive")?;
    let v = membership_verdict(&Submeasure::nu(), Regime::Exh, &s, case.get("threshold")?)?;
    let expected = if positive { Status::Positive } else { Status::Member };
    Ok(Outcome::check(
        v.status == expected,
        format!("verdict {} at norm {}", v.status, v.witness),
    )
    .metric("norm", v.witness))
}

// ---------------------------------------------------------------------------
// rotation_dichotomy

fn rotation_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let h = cfg.horizon.min(1_000_000);
    (0..10)
        .map(|i| {
            CheckCase::new(ROTATION)
                .with("target", format!("{}/20", 2 * i + 1))
                .with("radius", 0.05)
                .with("levels", 9)
                .with("threshold", cfg.threshold)
                .with("horizon", h)
        })
        .collect()
}

fn rotation_run(case: &CheckCase) -> Result<Outcome> {
    let sys = System::golden_rotation();
    let eta = case.point("target")?;
    let r: f64 = case.get("radius")?;
    let threshold: f64 = case.get("threshold")?;
    let schedule = Schedule::new(r, case.get("levels")?)?;
    let report = cluster_value(
        &sys,
        &Point::fixed(0),
        &eta,
        schedule,
        &Submeasure::nu(),
        horizon_of(case)?,
        threshold,
    )?;
    let d = analysis::upper_density(&report.return_sets[0]);
    let ok = report.is_cluster && (d - 2.0 * r).abs() <= 0.02 && report.u_value <= threshold;
    Ok(
        Outcome::check(ok, format!("cluster={} d*={d} u={}", report.is_cluster, report.u_value))
            .metric("dstar", d)
            .metric("u", report.u_value),
    )
}

// ---------------------------------------------------------------------------
// champernowne_universality

fn champernowne_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    let h = cfg.horizon.min(1_000_000);
    (0..32)
        .map(|i| {
            CheckCase::new(CHAMPERNOWNE)
                .with("target", format!("{}/64", 2 * i + 1))
                .with("radius", 1.0 / 64.0)
                .with("threshold", cfg.threshold)
                .with("horizon", h)
        })
        .collect()
}

fn champernowne_run(case: &CheckCase) -> Result<Outcome> {
    let sys = System::Doubling { stride: 1 };
    let ball = case.ball("target", "radius")?;
    let threshold: f64 = case.get("threshold")?;
    let n = sys
        .orbit(&Point::champernowne(), horizon_of(case)?)?
        .return_set_ball(&ball)?;
    let d = analysis::upper_density(&n);
    let v = membership_verdict(&Submeasure::nu(), Regime::Exh, &n, threshold)?;
    let ok = (d - 2.0 * ball.radius).abs() <= 0.01 && v.status == Status::Positive;
    Ok(Outcome::check(ok, format!("d*={d} verdict {}", v.status)).metric("dstar", d))
}

// ---------------------------------------------------------------------------
// c_parameter

fn c_parameter_cases(cfg: &SuiteConfig) -> Vec<CheckCase> {
    vec![CheckCase::new(C_PARAMETER)
        .with("x", "zeroblock")
        .with("r0", 1)
        .with("levels", 11)
        .with("threshold", cfg.threshold)
        .with("horizon", cfg.horizon.min(1 << 22))]
}

fn c_parameter_run(case: &CheckCase) -> Result<Outcome> {
    let sys = System::cantor(32)?;
    let x = case.point("x")?;
    let eta = Point::fixed(0);
    let nu = Submeasure::nu();
    let h = horizon_of(case)?;
    let schedule = Schedule::new(case.get("r0")?, case.get("levels")?)?;
    let c = estimate_c_parameter(&sys, &eta, &nu, std::slice::from_ref(&x), schedule, h)?;
    let report = cluster_value(&sys, &x, &eta, schedule, &nu, h, case.get("threshold")?)?;
    let extracted = extract_limit_subsequence(&report)?;
    let ok = c.value >= 0.5 && extracted.norm >= 0.5 - 1e-3;
    Ok(
        Outcome::check(ok, format!("c={} extracted norm {}", c.value, extracted.norm))
            .metric("c", c.value)
            .metric("extracted", extracted.norm),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_case, Verdict};

    fn cfg(horizon: usize) -> SuiteConfig {
        SuiteConfig {
            horizon,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn registry_names_are_unique() {
        let mut names: Vec<_> = REGISTRY.iter().map(|d| d.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), REGISTRY.len());
    }

    #[test]
    fn cases_are_deterministic_and_replayable() {
        for def in REGISTRY {
            let a = (def.cases)(&cfg(1 << 12));
            let b = (def.cases)(&cfg(1 << 12));
            assert_eq!(a, b, "{}", def.name);
            assert!(!a.is_empty(), "{}", def.name);
            for c in &a {
                assert_eq!(c.to_string().parse::<CheckCase>().unwrap(), *c);
            }
        }
    }

    #[test]
    fn brute_difference_agrees() {
        for family in PLANTED_FAMILIES {
            let s = planted_set(family, 9, 1 << 10).unwrap();
            assert_eq!(brute_difference_set(&s), difference_set(&s, &s).unwrap(), "{family}");
            assert!(analysis::banach_upper(&s) >= 0.2, "{family}");
        }
    }

    #[test]
    fn translation_examples() {
        let c = CheckCase::new(TRANSLATION)
            .with("system", "doubling")
            .with("x", "champernowne")
            .with("y", "1/3")
            .with("radius", 0.05)
            .with("s", "0,2,4")
            .with("horizon", 1 << 14);
        assert_eq!(run_case(&c).unwrap().verdict, Verdict::Pass);
        let c = c.with("y", "champernowne").with("s", "0").with("radius", 0.1);
        let o = run_case(&c).unwrap();
        assert_eq!(o.verdict, Verdict::Pass);
        assert_eq!(o.metrics[0], ("k", 0.0));
    }

    #[test]
    fn periodic_point_is_inconclusive() {
        let c = CheckCase::new(GAPS)
            .with("part", "min_gap")
            .with("system", "doubling")
            .with("x", "1/3")
            .with("k", 10)
            .with("horizon", 4096);
        assert_eq!(run_case(&c).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn ansari_examples() {
        let sys = System::Doubling { stride: 1 };
        let ball = Ball::new(Point::real(0.5).unwrap(), 0.1).unwrap();
        for k in 1..=3 {
            let (l, r) = ansari_sides(&sys, &Point::champernowne(), &ball, k, 10_000).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn null_orbit_with_zero_perturbation() {
        let sys = System::cantor(32).unwrap();
        let x: Point = "rand:5".parse().unwrap();
        let v = Ball::new(x.clone(), 1.0 / 64.0).unwrap();
        let z = transfer_perturbation(&sys, &x, &v).unwrap();
        assert_eq!(sys.null_after(&z), Some(0));
    }

    #[test]
    fn arithmetic_examples() {
        let run = |set: &str, k: i64, h: i64| {
            let c = CheckCase::new(ARITHMETIC)
                .with("set", set)
                .with("k", k)
                .with("h", h)
                .with("threshold", 0.01)
                .with("horizon", 1 << 16);
            run_case(&c).unwrap()
        };
        assert_eq!(run("ap:2,0", 3, 1).verdict, Verdict::Pass);
        assert_eq!(run("squares", 5, 2).verdict, Verdict::Pass);
        assert_eq!(run("blocks:pow4", 2, 0).verdict, Verdict::Pass);
    }

    #[test]
    fn every_check_passes_at_small_scale() {
        let config = cfg(1 << 16);
        for def in REGISTRY.iter().filter(|d| d.min_horizon <= 1 << 16) {
            for c in (def.cases)(&config) {
                let o = run_case(&c).unwrap();
                assert_ne!(o.verdict, Verdict::Violation, "{c}: {}", o.detail);
            }
        }
    }
}
