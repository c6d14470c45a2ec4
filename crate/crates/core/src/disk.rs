//! Leja sequences for the closed unit disk.
//!
//! Every Leja sequence starting at `1` is built by doubling: the block of
//! indices `2^n .. 2^(n+1)` is the first `2^n` points rotated by a `2^n`-th
//! root of `-1`. The canonical sequence uses the rotation `exp(iπ / 2^n)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::Rng;

use crate::dyadic::{DyadicAngle, MAX_LOG2_DEN};
use crate::error::{Error, Result};
use crate::exec::map_indices;
use crate::math::{self, golden_max, ScaledReal};

/// Per-level rotations. Entry `n` must be a `2^n`-th root of `-1`, i.e. an
/// angle `(2t + 1) / 2^(n+1)` of a turn.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RhoChoice {
    pub levels: Vec<DyadicAngle>,
}

impl RhoChoice {
    /// Wraps the given entries without validating them; see [`RhoChoice::validate`].
    pub fn new(levels: Vec<DyadicAngle>) -> Self {
        Self { levels }
    }

    /// The rotations `exp(iπ / 2^n)` of the canonical sequence.
    pub fn canonical(levels: usize) -> Result<Self> {
        let levels = (0..levels).map(|n| DyadicAngle::new(1, n as u32 + 1)).collect::<Result<_>>()?;
        Ok(Self { levels })
    }

    /// Uniformly random admissible rotations.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, levels: usize) -> Result<Self> {
        let levels = (0..levels)
            .map(|n| {
                if n + 1 > MAX_LOG2_DEN as usize {
                    return Err(Error::ExponentOverflow(n as u32 + 1));
                }
                let t: u64 = rng.gen_range(0..(1u64 << n));
                DyadicAngle::new(2 * t + 1, n as u32 + 1)
            })
            .collect::<Result<_>>()?;
        Ok(Self { levels })
    }

    pub fn get(&self, level: usize) -> Result<DyadicAngle> {
        let rho = *self.levels.get(level).ok_or(Error::MissingRhoLevel(level))?;
        if !rho.is_root_of_minus_one(level as u32) {
            return Err(Error::InvalidRho { level });
        }
        Ok(rho)
    }

    pub fn validate(&self) -> Result<()> {
        (0..self.levels.len()).try_for_each(|n| self.get(n).map(|_| ()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerationRule {
    Canonical,
    CustomRho(RhoChoice),
}

/// A prefix of a Leja sequence, stored as exact angles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskLejaSequence {
    angles: Vec<DyadicAngle>,
    rule: GenerationRule,
}

/// Level `n` such that `2^n <= idx < 2^(n+1)`.
#[inline]
fn level_of(idx: usize) -> usize {
    (usize::BITS - 1 - idx.leading_zeros()) as usize
}

impl DiskLejaSequence {
    /// The one-point section `(1)`.
    pub fn new() -> Self {
        Self { angles: alloc::vec![DyadicAngle::ZERO], rule: GenerationRule::Canonical }
    }

    /// The canonical sequence with `len` points.
    pub fn canonical(len: usize) -> Result<Self> {
        let mut seq = Self::new();
        seq.extend_canonical(len)?;
        Ok(seq)
    }

    /// A sequence with `len` points built from the given rotations.
    pub fn with_rho(rho: RhoChoice, len: usize) -> Result<Self> {
        let mut seq = Self::new();
        seq.extend_with_rho(rho, len)?;
        Ok(seq)
    }

    pub fn angles(&self) -> &[DyadicAngle] {
        &self.angles
    }

    pub fn rule(&self) -> &GenerationRule {
        &self.rule
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// `(Re e_k, Im e_k)` for every stored point.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.angles.iter().map(|a| (a.cos_value(), a.sin_value())).collect()
    }

    /// Extends with the canonical doubling rule. Points already present are
    /// kept as they are.
    pub fn extend_canonical(&mut self, target_len: usize) -> Result<()> {
        if self.rule != GenerationRule::Canonical {
            return Err(Error::InvalidParameter("sequence was not built with the canonical rule"));
        }
        self.extend_by(target_len, |n| DyadicAngle::new(1, n as u32 + 1))
    }

    /// Extends with the rotations in `rho`. Existing points are kept; the
    /// rule of the sequence becomes `rho` for later extensions.
    pub fn extend_with_rho(&mut self, rho: RhoChoice, target_len: usize) -> Result<()> {
        self.extend_by(target_len, |n| rho.get(n))?;
        self.rule = GenerationRule::CustomRho(rho);
        Ok(())
    }

    /// Extends with whichever rule built the sequence.
    pub fn extend_to(&mut self, target_len: usize) -> Result<()> {
        match self.rule.clone() {
            GenerationRule::Canonical => self.extend_canonical(target_len),
            GenerationRule::CustomRho(rho) => self.extend_with_rho(rho, target_len),
        }
    }

    fn extend_by<F>(&mut self, target_len: usize, shift: F) -> Result<()>
    where
        F: Fn(usize) -> Result<DyadicAngle>,
    {
        let start = self.angles.len();
        if target_len <= start {
            return Ok(());
        }
        let mut level = usize::MAX;
        let mut rho = DyadicAngle::ZERO;
        self.angles.reserve(target_len - start);
        for idx in start..target_len {
            let n = level_of(idx);
            if n != level {
                if n + 1 > MAX_LOG2_DEN as usize {
                    self.angles.truncate(start);
                    return Err(Error::ExponentOverflow(n as u32 + 1));
                }
                rho = match shift(n) {
                    Ok(r) => r,
                    Err(e) => {
                        self.angles.truncate(start);
                        return Err(e);
                    }
                };
                level = n;
            }
            let prev = self.angles[idx - (1 << n)];
            self.angles.push(prev.add(rho));
        }
        Ok(())
    }
}

impl Default for DiskLejaSequence {
    fn default() -> Self {
        Self::new()
    }
}

/// Outcome of the brute-force check of one step of the Leja recursion.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LejaStep {
    pub index: usize,
    /// `ln Π |e_index - e_m|`.
    pub ln_product: f64,
    /// `ln max_{|z| = 1} Π |z - e_m|` found by grid search plus refinement.
    pub ln_search_max: f64,
    /// Position of the search maximum, as a fraction of a turn.
    pub argmax_turns: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct LejaPropertyReport {
    pub upto: usize,
    pub grid_size: usize,
    pub tolerance_slack: f64,
    pub steps: Vec<LejaStep>,
    pub passed: bool,
}

/// `ln Π_m 2|sin(π (t - a_m))|` with `t` in turns.
fn ln_distance_product(t: f64, angles: &[DyadicAngle]) -> f64 {
    let mut p = ScaledReal::ONE;
    for a in angles {
        p = p.mul_f64(2.0 * math::sin(math::PI * (t - a.turns())));
        if p.is_zero() {
            return f64::NEG_INFINITY;
        }
    }
    p.ln_abs()
}

/// Same product at a point of the sequence, with the angle differences taken
/// exactly.
fn ln_distance_product_exact(z: DyadicAngle, angles: &[DyadicAngle]) -> f64 {
    let mut p = ScaledReal::ONE;
    for a in angles {
        let d = z.sub(*a);
        let chord = match d.half() {
            Ok(h) => 2.0 * h.sin_value(),
            Err(_) => 2.0 * math::sin(math::PI * d.turns()),
        };
        p = p.mul_f64(chord);
        if p.is_zero() {
            return f64::NEG_INFINITY;
        }
    }
    p.ln_abs()
}

/// Checks that each `e_j`, `j < upto`, maximizes the product of distances to
/// the previous points over the unit circle, by comparison against a uniform
/// angular grid of `grid_size` points refined by golden-section search.
pub fn validate_leja_property(seq: &DiskLejaSequence, upto: usize, grid_size: usize) -> Result<LejaPropertyReport> {
    if upto > seq.len() {
        return Err(Error::InvalidParameter("upto exceeds the sequence length"));
    }
    if grid_size < 4 * upto || grid_size == 0 {
        return Err(Error::InvalidParameter("grid_size must be at least 4 * upto"));
    }
    let angles = seq.angles();
    let res = upto as f64 / grid_size as f64;
    let slack_grid = res * res;
    let mut steps = Vec::with_capacity(upto.saturating_sub(1));
    for j in 1..upto {
        let prev = &angles[..j];
        let values = map_indices(grid_size, |i| ln_distance_product(i as f64 / grid_size as f64, prev));
        let mut best = 0;
        for (i, v) in values.iter().enumerate() {
            if *v > values[best] {
                best = i;
            }
        }
        let step = 1.0 / grid_size as f64;
        let center = best as f64 * step;
        let (x, refined) = golden_max(|t| ln_distance_product(t, prev), center - step, center + step, 1e-12);
        let (argmax, search_max) =
            if refined > values[best] { (x - math::floor(x), refined) } else { (center, values[best]) };
        let ln_product = ln_distance_product_exact(angles[j], prev);
        let tol = 10.0 * f64::EPSILON * j as f64 + slack_grid;
        let passed = ln_product >= search_max + math::ln(1.0 - tol);
        steps.push(LejaStep { index: j, ln_product, ln_search_max: search_max, argmax_turns: argmax, passed });
    }
    let passed = steps.iter().all(|s| s.passed);
    Ok(LejaPropertyReport { upto, grid_size, tolerance_slack: slack_grid, steps, passed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum StructureFailure {
    /// The first point is not `1`.
    FirstPoint,
    /// A `2^level`-point prefix of some sub-block is not the set of `2^level`-th roots of unity.
    RootsOfUnity { level: u32 },
    /// The rotation opening a block of level `level` is not a `2^level`-th root of `-1`.
    Rho { level: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StructureReport {
    pub upto: usize,
    pub passed: bool,
    /// Rotations read off the top-level doubling blocks: entry `n` is the
    /// angle of `e_(2^n)`.
    pub rho: Vec<DyadicAngle>,
    pub failure: Option<StructureFailure>,
}

fn check_roots_of_unity(s: &[DyadicAngle], n: u32) -> bool {
    if !s.iter().all(|a| a.is_root_of_unity(n)) {
        return false;
    }
    let distinct: BTreeSet<_> = s.iter().collect();
    distinct.len() == s.len()
}

fn check_section(s: &[DyadicAngle]) -> core::result::Result<(), StructureFailure> {
    if s.is_empty() {
        return Ok(());
    }
    if !s[0].is_zero() {
        return Err(StructureFailure::FirstPoint);
    }
    if s.len() == 1 {
        return Ok(());
    }
    let n = level_of(s.len() - 1) as u32;
    let half = 1usize << n;
    if s.len() == 2 * half && !check_roots_of_unity(s, n + 1) {
        return Err(StructureFailure::RootsOfUnity { level: n + 1 });
    }
    check_section(&s[..half])?;
    let rho = s[half];
    if !rho.is_root_of_minus_one(n) {
        return Err(StructureFailure::Rho { level: n });
    }
    let rotated: Vec<_> = s[half..].iter().map(|a| a.sub(rho)).collect();
    check_section(&rotated)
}

/// Exact structural validation of the first `upto` points: each `2^n`-point
/// prefix is the full set of `2^n`-th roots of unity, and each block is a
/// rotated Leja section with a rotation that is a root of `-1` of the right
/// order, recursively.
pub fn structure_check(seq: &DiskLejaSequence, upto: usize) -> Result<StructureReport> {
    if upto > seq.len() {
        return Err(Error::InvalidParameter("upto exceeds the sequence length"));
    }
    let s = &seq.angles()[..upto];
    let mut failure = None;
    let mut size = 1usize;
    let mut n = 0u32;
    while size <= upto {
        if !check_roots_of_unity(&s[..size], n) {
            failure = Some(StructureFailure::RootsOfUnity { level: n });
            break;
        }
        size <<= 1;
        n += 1;
    }
    if failure.is_none() {
        failure = check_section(s).err();
    }
    let mut rho = Vec::new();
    let mut k = 1usize;
    while k < upto {
        rho.push(s[k]);
        k <<= 1;
    }
    Ok(StructureReport { upto, passed: failure.is_none(), rho, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a(num: u64, q: u32) -> DyadicAngle {
        DyadicAngle::new(num, q).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let s = DiskLejaSequence::canonical(1).unwrap();
        assert_eq!(s.angles(), &[DyadicAngle::ZERO]);
        let s = DiskLejaSequence::canonical(4).unwrap();
        assert_eq!(s.angles(), &[a(0, 0), a(1, 1), a(1, 2), a(3, 2)]);
        let pts = s.points();
        assert_eq!(pts[1], (-1.0, 0.0));
        assert_eq!(pts[2].0, 0.0);
        assert!((pts[2].1 - 1.0).abs() < 1e-16);
    }

    /// Doubling by hand: each new block is the previous prefix shifted by
    /// `1 / 2^(n+1)`.
    #[test]
    fn canonical_eight_points() {
        let mut oracle: Vec<(u64, u64)> = vec![(0, 1)];
        let mut den = 2u64;
        while oracle.len() < 8 {
            let shift = (1, den);
            let block: Vec<_> = oracle
                .iter()
                .map(|&(p, q)| {
                    let common = q.max(shift.1);
                    let num = (p * (common / q) + shift.0 * (common / shift.1)) % common;
                    (num, common)
                })
                .collect();
            oracle.extend(block);
            den *= 2;
        }
        let s = DiskLejaSequence::canonical(8).unwrap();
        for (got, (p, q)) in s.angles().iter().zip(oracle) {
            assert_eq!(*got, a(p, q.trailing_zeros()));
        }
        assert_eq!(s.angles(), &[a(0, 0), a(1, 1), a(1, 2), a(3, 2), a(1, 3), a(5, 3), a(3, 3), a(7, 3)]);
    }

    #[test]
    fn incremental_extension_matches_direct() {
        let mut s = DiskLejaSequence::new();
        for len in [3, 5, 6, 13, 64, 100] {
            s.extend_canonical(len).unwrap();
        }
        assert_eq!(s, DiskLejaSequence::canonical(100).unwrap());
    }

    #[test]
    fn rho_examples() {
        let s = DiskLejaSequence::with_rho(RhoChoice::new(vec![a(1, 1)]), 2).unwrap();
        assert_eq!(s.angles(), &[a(0, 0), a(1, 1)]);
        let s = DiskLejaSequence::with_rho(RhoChoice::new(vec![a(1, 1), a(3, 2)]), 4).unwrap();
        assert_eq!(s.angles(), &[a(0, 0), a(1, 1), a(3, 2), a(1, 2)]);
        let bad = DiskLejaSequence::with_rho(RhoChoice::new(vec![a(1, 1), a(1, 1)]), 4);
        assert_eq!(bad, Err(Error::InvalidRho { level: 1 }));
        let short = DiskLejaSequence::with_rho(RhoChoice::new(vec![a(1, 1)]), 3);
        assert_eq!(short, Err(Error::MissingRhoLevel(1)));
    }

    #[test]
    fn leja_property_canonical() {
        let s = DiskLejaSequence::canonical(16).unwrap();
        let r = validate_leja_property(&s, 4, 4096).unwrap();
        assert!(r.passed, "{r:?}");
        let r = validate_leja_property(&s, 16, 16384).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn leja_property_rejects_tampered() {
        let s = DiskLejaSequence { angles: vec![a(0, 0), a(1, 2)], rule: GenerationRule::Canonical };
        let r = validate_leja_property(&s, 2, 4096).unwrap();
        assert!(!r.passed);
        let step = &r.steps[0];
        assert!((step.ln_product - 2f64.sqrt().ln()).abs() < 1e-12);
        assert!((step.ln_search_max - 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn leja_property_preconditions() {
        let s = DiskLejaSequence::canonical(8).unwrap();
        assert!(validate_leja_property(&s, 9, 1000).is_err());
        assert!(validate_leja_property(&s, 8, 31).is_err());
    }

    #[test]
    fn leja_property_random_rho() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = DiskLejaSequence::with_rho(RhoChoice::random(&mut rng, 6).unwrap(), 64).unwrap();
        let r = validate_leja_property(&s, 64, 4096).unwrap();
        assert!(r.passed, "{:?}", r.steps.iter().find(|s| !s.passed));
    }

    #[test]
    fn structure_examples() {
        let s = DiskLejaSequence::canonical(16).unwrap();
        let r = structure_check(&s, 16).unwrap();
        assert!(r.passed);
        assert_eq!(r.rho, vec![a(1, 1), a(1, 2), a(1, 3), a(1, 4)]);
        assert!(structure_check(&s, 1).unwrap().passed);
        let t = DiskLejaSequence { angles: vec![a(0, 0), a(1, 2), a(1, 1), a(3, 2)], rule: GenerationRule::Canonical };
        let r = structure_check(&t, 4).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failure, Some(StructureFailure::RootsOfUnity { level: 1 }));
    }

    #[test]
    fn structure_catches_bad_inner_block() {
        // Prefix sets are right but the second half is not a rotated Leja section.
        let t = DiskLejaSequence {
            angles: vec![a(0, 0), a(1, 1), a(1, 2), a(3, 2), a(1, 3), a(3, 3), a(5, 3), a(7, 3)],
            rule: GenerationRule::Canonical,
        };
        let r = structure_check(&t, 8).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failure, Some(StructureFailure::RootsOfUnity { level: 1 }));
    }

    #[test]
    fn prefixes_are_roots_of_unity() {
        let s = DiskLejaSequence::canonical(1 << 12).unwrap();
        for n in 0..=12u32 {
            let mut prefix: Vec<_> = s.angles()[..1 << n].to_vec();
            prefix.sort();
            let expected: Vec<_> = (0..1u64 << n).map(|j| a(j, n)).collect();
            assert_eq!(prefix, expected);
        }
    }

    #[test]
    fn structure_recovers_random_rho() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let rho = RhoChoice::random(&mut rng, 10).unwrap();
            let s = DiskLejaSequence::with_rho(rho.clone(), 1 << 10).unwrap();
            let r = structure_check(&s, 1 << 10).unwrap();
            assert!(r.passed);
            assert_eq!(r.rho, rho.levels);
        }
    }
}
