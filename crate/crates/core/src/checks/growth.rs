use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{dyadic_window_sups, loglog_slope, BoundCheckReport, Verdict};
use crate::dyadic::DyadicAngle;
use crate::error::{Error, Result};
use crate::exec::map_indices;
use crate::interp1d::{lebesgue_constant, nodal_ratio_bound, DEFAULT_SAMPLES_PER_GAP};
use crate::math;
use crate::rleja::{block_decompose, modified_chebyshev, RLejaSequence};

/// Relative tolerance on the proven sub-claim bounds.
const SUB_CLAIM_TOL: f64 = 1e-6;
const WINDOW_FACTOR: f64 = 1.05;
const MAX_SLOPE: f64 = 3.0;

/// `Δ(X_k)` for each requested `k`, in order.
pub fn lebesgue_growth(x: &RLejaSequence, ks: &[usize], samples_per_gap: usize) -> Result<Vec<f64>> {
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > x.len()) {
        return Err(Error::BlockRange(k));
    }
    map_indices(ks.len(), |i| Ok(lebesgue_constant(&x.prefix(ks[i])?, samples_per_gap)?.value)).into_iter().collect()
}

/// Random dyadic `β` with `2dβ` not an integer, for `d = 2^e`.
fn random_beta<R: Rng + ?Sized>(rng: &mut R, e: u32) -> DyadicAngle {
    let q = rng.gen_range(e + 2..=(e + 30).min(63));
    let num = 2 * rng.gen_range(0..1u64 << (q - 1)) + 1;
    DyadicAngle::new(num, q).expect("exponent below cap")
}

/// `Δ(T_d^(β)) |sin dβ| / ln(d + 1)` over `d = 2, 4, ..., d_max` and `betas`
/// random dyadic shifts per degree, plus one shift per degree within
/// `2^-20` of an extremal one. Each degree is its own window.
pub fn check_modcheb_lebesgue(
    d_max: usize,
    betas: usize,
    seed: u64,
    samples_per_gap: usize,
) -> Result<BoundCheckReport> {
    if d_max < 4 || betas == 0 {
        return Err(Error::InvalidParameter("need d_max >= 4 and at least one beta"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<(usize, DyadicAngle)> = Vec::new();
    let mut e = 1;
    while 1usize << e <= d_max {
        for _ in 0..betas {
            cases.push((1 << e, random_beta(&mut rng, e)));
        }
        cases.push((1 << e, DyadicAngle::new((1 << 20) + 1, e + 21)?));
        e += 1;
    }
    let ratios = map_indices(cases.len(), |i| -> Result<f64> {
        let (d, beta) = cases[i];
        let delta = lebesgue_constant(&modified_chebyshev(d, beta)?, samples_per_gap)?.value;
        let s = math::abs(beta.mul_int(d as u64).sin_value());
        Ok(delta * s / math::ln(d as f64 + 1.0))
    });
    let mut series = Vec::with_capacity(cases.len());
    let mut report = BoundCheckReport::new("modcheb", Verdict::Bound { tolerance: 0.0 })
        .param("d", alloc::format!("2..={d_max} (powers of two)"))
        .param("betas_per_degree", betas)
        .param("samples_per_gap", samples_per_gap);
    report.seed = Some(seed);
    for (&(d, beta), r) in cases.iter().zip(ratios) {
        let r = r?;
        series.push((d, r));
        report.observe(
            r,
            &[("d", d as f64), ("beta_num", beta.numerator() as f64), ("beta_log2den", beta.log2_denominator() as f64)],
        );
    }
    report.verdict = Verdict::BoundedConstant { factor: WINDOW_FACTOR, window_sups: dyadic_window_sups(&series) };
    report.metric("sup_ratio", report.worst_ratio);
    Ok(report.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MasterBoundSettings {
    pub k_max: usize,
    pub samples_per_gap: usize,
}

impl Default for MasterBoundSettings {
    fn default() -> Self {
        Self { k_max: 512, samples_per_gap: DEFAULT_SAMPLES_PER_GAP }
    }
}

struct SplitRow {
    n: u32,
    k: usize,
    head_tail: f64,
    tail_head: f64,
    delta_b: f64,
    blocks_ok: bool,
}

fn split_row(x: &RLejaSequence, k: usize, samples: usize) -> Result<SplitRow> {
    let n = usize::BITS - 1 - (k - 1).leading_zeros();
    let half = 1usize << n;
    let a = x.node_set(0, half)?;
    let b = x.node_set(half + 1, k - 1)?;
    let head_tail = nodal_ratio_bound(a.nodes(), b.nodes())?.ratio;
    let tail_head = nodal_ratio_bound(b.nodes(), a.nodes())?.ratio;
    let delta_b = lebesgue_constant(&b, samples)?.value;
    let blocks_ok = block_decompose(x, k).is_ok();
    Ok(SplitRow { n, k, head_tail, tail_head, delta_b, blocks_ok })
}

/// `sup_k Δ(X_k) / (k³ ln k)` for `2 <= k <= k_max` must stabilize over
/// dyadic windows, and the log-log slope over `[8, k_max]` must not
/// exceed 3. For every `k` with `2^n + 1 < k <= 2^(n+1)`, the split
/// `A = X(0 : 2^n)`, `B = X(2^n + 1 : k - 1)` is checked against the nodal
/// ratio bounds, the block structure of `B`, the growth of `Δ(B)`, and the
/// partition estimate for `Δ(X_k)`.
pub fn check_master_bound(settings: MasterBoundSettings) -> Result<BoundCheckReport> {
    let MasterBoundSettings { k_max, samples_per_gap } = settings;
    if !(16..=2048).contains(&k_max) {
        return Err(Error::InvalidParameter("k_max must lie in 16..=2048"));
    }
    let x = RLejaSequence::canonical(k_max + 1)?;
    let ks: Vec<usize> = (2..=k_max).collect();
    let deltas = lebesgue_growth(&x, &ks, samples_per_gap)?;

    let mut report = BoundCheckReport::new("master", Verdict::Bound { tolerance: 0.0 })
        .param("k", alloc::format!("2..={k_max}"))
        .param("samples_per_gap", samples_per_gap);
    let mut series = Vec::with_capacity(ks.len());
    for (&k, &delta) in ks.iter().zip(&deltas) {
        let r = delta / ((k * k * k) as f64 * math::ln(k as f64));
        series.push((k, r));
        report.observe(r, &[("k", k as f64), ("delta", delta)]);
    }
    report.verdict = Verdict::BoundedConstant { factor: WINDOW_FACTOR, window_sups: dyadic_window_sups(&series) };
    let fit: Vec<(f64, f64)> = ks.iter().zip(&deltas).filter(|(&k, _)| k >= 8).map(|(&k, &d)| (k as f64, d)).collect();
    let slope = loglog_slope(&fit);
    report.metric("sup_ratio", report.worst_ratio);
    report.metric("slope", slope);
    let dyadic: Vec<(f64, f64)> = fit.iter().copied().filter(|&(k, _)| (k as usize).is_power_of_two()).collect();
    report.metric("slope_dyadic_k", loglog_slope(&dyadic));
    let mut envelope = Vec::with_capacity(fit.len());
    let mut running = 0.0f64;
    for &(k, d) in &fit {
        running = running.max(d);
        envelope.push((k, running));
    }
    report.metric("slope_running_max", loglog_slope(&envelope));
    report.metric("delta_max", deltas.iter().copied().fold(0.0, f64::max));

    let mut slope_claim = BoundCheckReport::new("master/slope", Verdict::Bound { tolerance: 0.0 })
        .param("k", alloc::format!("8..={k_max}"))
        .param("max_slope", MAX_SLOPE);
    slope_claim.observe(slope / MAX_SLOPE, &[]);

    let split_ks: Vec<usize> = ks.iter().copied().filter(|&k| k >= 4 && !(k - 1).is_power_of_two()).collect();
    let rows = map_indices(split_ks.len(), |i| split_row(&x, split_ks[i], samples_per_gap));
    let mut head_tail =
        BoundCheckReport::new("master/head-over-tail-nodal-ratio", Verdict::Bound { tolerance: SUB_CLAIM_TOL });
    let mut tail_head =
        BoundCheckReport::new("master/tail-over-head-nodal-ratio", Verdict::Bound { tolerance: SUB_CLAIM_TOL });
    let mut tail_growth = BoundCheckReport::new("master/tail-lebesgue", Verdict::Bound { tolerance: 0.0 });
    let mut partition = BoundCheckReport::new("master/partition-estimate", Verdict::Bound { tolerance: SUB_CLAIM_TOL });
    let mut blocks = BoundCheckReport::new("master/block-structure", Verdict::Bound { tolerance: 0.0 });
    let mut tail_series = Vec::new();
    let mut per_n = [0usize; usize::BITS as usize];
    let mut delta_a_cache = [None; usize::BITS as usize];
    for row in rows {
        let SplitRow { n, k, head_tail: r_ab, tail_head: r_ba, delta_b, blocks_ok } = row?;
        per_n[n as usize] += 1;
        let p = [("n", n as f64), ("k", k as f64)];
        let bound_ab = 1.0 / math::sin(math::PI / math::exp2i(n as i32 + 1));
        head_tail.observe(r_ab / bound_ab, &p);
        tail_head.observe(r_ba / math::exp2i(2 * n as i32 + 2), &p);
        let tg = delta_b / (math::exp2i(2 * n as i32) * math::ln(math::exp2i(n as i32)));
        tail_series.push((1usize << n, tg));
        tail_growth.observe(tg, &p);
        let delta_a = match delta_a_cache[n as usize] {
            Some(v) => v,
            None => {
                let v = lebesgue_constant(&x.node_set(0, 1 << n)?, samples_per_gap)?.value;
                delta_a_cache[n as usize] = Some(v);
                v
            }
        };
        let delta_k = deltas[k - 2];
        partition.observe(delta_k / (delta_a * r_ba + delta_b * r_ab), &p);
        blocks.observe(if blocks_ok { 0.0 } else { f64::INFINITY }, &p);
    }
    tail_growth.verdict =
        Verdict::BoundedConstant { factor: WINDOW_FACTOR, window_sups: dyadic_window_sups(&tail_series) };
    let min_per_n = per_n.iter().copied().filter(|&c| c > 0).min().unwrap_or(0);
    report.metric("split_ks", split_ks.len() as f64);
    report.metric("max_split_n", per_n.iter().rposition(|&c| c > 0).unwrap_or(0) as f64);
    report.metric("min_ks_per_n", min_per_n as f64);
    for sub in [slope_claim, head_tail, tail_head, tail_growth, partition, blocks] {
        report.sub_claims.push(sub.finish());
    }
    Ok(report.finish())
}
