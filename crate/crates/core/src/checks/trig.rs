use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BoundCheckReport, Verdict};
use crate::dyadic::DyadicAngle;
use crate::error::{Error, Result};
use crate::exec::map_indices;
use crate::math::{self, PI, TAU};

const HALVING_SLACK: f64 = 1e-12;
const TRIG_SLACK: f64 = 1e-10;

/// `(|sin α|, |sin 2^n α| / 2^n)`.
pub fn sin_halving_sides(alpha: f64, n: u32) -> (f64, f64) {
    let scale = math::exp2i(n as i32);
    (math::abs(math::sin(alpha)), math::abs(math::sin(alpha * scale)) / scale)
}

/// Random `(α, n <= 20)` pairs; half of the angles sit near multiples of
/// `π / 2^j`, where both sides are small.
pub fn check_sin_halving(trials: usize, seed: u64) -> BoundCheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(f64, u32)> = (0..trials)
        .map(|t| {
            let n = rng.gen_range(0..=20u32);
            let alpha = if t % 2 == 0 {
                rng.gen_range(-4.0 * PI..4.0 * PI)
            } else {
                let j = rng.gen_range(0..=20);
                let m = rng.gen_range(-64i32..=64) as f64;
                m * PI / math::exp2i(j) + rng.gen_range(-1e-6..1e-6)
            };
            (alpha, n)
        })
        .collect();
    let ratios = map_indices(cases.len(), |i| {
        let (lhs, rhs) = sin_halving_sides(cases[i].0, cases[i].1);
        rhs / (lhs + HALVING_SLACK)
    });
    let mut report = BoundCheckReport::new("sin-halving", Verdict::Bound { tolerance: 0.0 })
        .param("trials", trials)
        .param("n", "0..=20")
        .param("slack", HALVING_SLACK);
    report.seed = Some(seed);
    for (&(alpha, n), &r) in cases.iter().zip(&ratios) {
        report.observe(r, &[("alpha", alpha), ("n", n as f64)]);
    }
    report.finish()
}

/// One instance of the trigonometric product inequality: exponents
/// `n_0 > ... > n_r >= 0` and angles with `2^(n_j) φ_j ≡ π`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigConfig {
    pub exponents: Vec<u32>,
    pub phis: Vec<DyadicAngle>,
}

impl TrigConfig {
    pub fn new(exponents: Vec<u32>, phis: Vec<DyadicAngle>) -> Result<Self> {
        let r = exponents.len().saturating_sub(1);
        if r == 0 || phis.len() != r || exponents.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidParameter("need n_0 > ... > n_r and r angles"));
        }
        if phis.iter().zip(&exponents).any(|(p, &n)| !p.is_root_of_minus_one(n)) {
            return Err(Error::InvalidParameter("2^(n_j) φ_j must be π modulo 2π"));
        }
        Ok(Self { exponents, phis })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_r: usize, max_n0: u32) -> Self {
        let r = rng.gen_range(1..=max_r.min(max_n0 as usize));
        let n0 = rng.gen_range(r as u32..=max_n0);
        let mut pool: Vec<u32> = (0..n0).collect();
        for i in 0..r {
            let j = rng.gen_range(i..pool.len());
            pool.swap(i, j);
        }
        let mut exponents: Vec<u32> = pool[..r].to_vec();
        exponents.push(n0);
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        let phis = exponents[..r]
            .iter()
            .map(|&n| {
                let num = 2 * rng.gen_range(0..1u64 << n) + 1;
                DyadicAngle::new(num, n + 1).expect("exponent below cap")
            })
            .collect();
        Self { exponents, phis }
    }

    /// `(LHS, RHS)` of the inequality at `φ` (radians).
    pub fn sides(&self, phi: f64) -> (f64, f64) {
        let shifts = self.shifts();
        self.sides_with(&shifts, phi)
    }

    /// `(scale exponent m_j, cos, sin)` of `2^(m_j) (φ_0 + ... + φ_j)`.
    fn shifts(&self) -> Vec<(i32, f64, f64)> {
        let mut sum = DyadicAngle::ZERO;
        self.phis
            .iter()
            .zip(&self.exponents[1..])
            .map(|(&p, &next)| {
                sum = sum.add(p);
                let m = next as i32 - 1;
                // Halving is only defined modulo π, which |sin| does not see.
                let b = if m >= 0 { sum.mul_pow2(m as u32) } else { sum.half().expect("exponent below cap") };
                (m, b.cos_value(), b.sin_value())
            })
            .collect()
    }

    fn sides_with(&self, shifts: &[(i32, f64, f64)], phi: f64) -> (f64, f64) {
        let lhs = shifts
            .iter()
            .map(|&(m, cb, sb)| {
                let a = phi * math::exp2i(m);
                math::abs(math::sin(a) * cb - math::cos(a) * sb)
            })
            .product();
        let n0 = self.exponents[0] as i32;
        let nr = *self.exponents.last().unwrap() as i32;
        let rhs = math::abs(math::cos(phi * math::exp2i(n0 - 1))) / math::exp2i(n0 - nr);
        (lhs, rhs)
    }
}

/// Random configurations (`r <= 6`, `n_0 <= 16`), each scanned on a
/// `grid`-point φ grid with a random offset.
pub fn check_trig_lemma(trials: usize, grid: usize, seed: u64) -> Result<BoundCheckReport> {
    if grid == 0 {
        return Err(Error::InvalidParameter("grid must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let configs: Vec<(TrigConfig, f64)> =
        (0..trials).map(|_| (TrigConfig::random(&mut rng, 6, 16), rng.gen_range(0.0..1.0))).collect();
    let worst = map_indices(configs.len(), |c| {
        let (cfg, offset) = &configs[c];
        let shifts = cfg.shifts();
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 0..grid {
            let phi = TAU * (i as f64 + offset) / grid as f64;
            let (lhs, rhs) = cfg.sides_with(&shifts, phi);
            let r = rhs / (lhs + TRIG_SLACK);
            if r > best.0 || r.is_nan() {
                best = (if r.is_nan() { f64::INFINITY } else { r }, phi);
            }
        }
        best
    });
    let mut report = BoundCheckReport::new("trig-lemma", Verdict::Bound { tolerance: 0.0 })
        .param("trials", trials)
        .param("grid", grid)
        .param("r", "1..=6")
        .param("n_0", "<=16")
        .param("slack", TRIG_SLACK);
    report.seed = Some(seed);
    for ((cfg, _), &(r, phi)) in configs.iter().zip(&worst) {
        report.observe(r, &[("config_r", cfg.phis.len() as f64), ("n_0", cfg.exponents[0] as f64), ("phi", phi)]);
    }
    Ok(report.finish())
}
