//! Real projections of disk Leja sequences.
//!
//! An ℜ-Leja sequence lists the real parts of a Leja sequence with repeated
//! values dropped. It can be built by deduplication ([`project_dedup`]) or
//! directly through the index map [`phi`] ([`build_by_phi`]); the two routes
//! must agree angle for angle.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::disk::DiskLejaSequence;
use crate::dyadic::DyadicAngle;
use crate::error::Result;
use crate::interp1d::NodeSet1D;

mod blocks;
mod families;

pub use blocks::{block_decompose, Block, BlockDecomposition};
pub use families::{chebyshev_lobatto, equispaced, modified_chebyshev};

/// An ℜ-Leja sequence: `values[k] = cos(2π angles[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct RLejaSequence {
    source: DiskLejaSequence,
    angles: Vec<DyadicAngle>,
    values: Vec<f64>,
}

impl RLejaSequence {
    fn from_angles(source: DiskLejaSequence, angles: Vec<DyadicAngle>) -> Self {
        let values = angles.iter().map(|a| a.cos_value()).collect();
        Self { source, angles, values }
    }

    /// The first `count` points of the sequence projected from the canonical
    /// disk sequence.
    pub fn canonical(count: usize) -> Result<Self> {
        build_by_phi(&DiskLejaSequence::new(), count)
    }

    pub fn source(&self) -> &DiskLejaSequence {
        &self.source
    }

    pub fn angles(&self) -> &[DyadicAngle] {
        &self.angles
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `X(start : end)` inclusive, as a node set carrying exact angles.
    pub fn node_set(&self, start: usize, end: usize) -> Result<NodeSet1D> {
        NodeSet1D::from_angles(self.angles[start..=end].to_vec())
    }

    /// `X_k = (x_0, ..., x_{k-1})`.
    pub fn prefix(&self, k: usize) -> Result<NodeSet1D> {
        NodeSet1D::from_angles(self.angles[..k].to_vec())
    }
}

/// `φ(0) = 0`, `φ(1) = 1`; for `k >= 2`, `3k/2 - 1` when `k` is a power of
/// two and `2^⌊log₂ k⌋ + k - 1` otherwise. `x_k = Re e_φ(k)`.
pub fn phi(k: usize) -> usize {
    match k {
        0 | 1 => k,
        _ if k.is_power_of_two() => 3 * k / 2 - 1,
        _ => (1usize << (usize::BITS - 1 - k.leading_zeros())) + k - 1,
    }
}

/// The first `count` distinct real parts of `source`, in order of first
/// appearance. Duplicates are detected on exact angle keys. The source is
/// extended (with its own rule) as far as needed.
pub fn project_dedup(source: &DiskLejaSequence, count: usize) -> Result<RLejaSequence> {
    let mut src = source.clone();
    let mut seen = BTreeSet::new();
    let mut angles = Vec::with_capacity(count);
    let mut idx = 0;
    while angles.len() < count {
        if idx >= src.len() {
            src.extend_to((2 * src.len()).max(idx + 1))?;
        }
        let a = src.angles()[idx];
        if seen.insert(a.real_part_key()) {
            angles.push(a);
        }
        idx += 1;
    }
    Ok(RLejaSequence::from_angles(src, angles))
}

/// `x_k = Re e_φ(k)` for `k < count`.
pub fn build_by_phi(source: &DiskLejaSequence, count: usize) -> Result<RLejaSequence> {
    let mut src = source.clone();
    if count > 0 {
        src.extend_to(phi(count - 1) + 1)?;
    }
    let angles = (0..count).map(|k| src.angles()[phi(k)]).collect();
    Ok(RLejaSequence::from_angles(src, angles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::RhoChoice;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn phi_examples() {
        assert_eq!(phi(0), 0);
        assert_eq!(phi(1), 1);
        assert_eq!(phi(4), 5);
        assert_eq!(phi(5), 8);
        assert_eq!((0..9).map(phi).collect::<Vec<_>>(), vec![0, 1, 2, 4, 5, 8, 9, 10, 11]);
    }

    #[test]
    fn dedup_examples() {
        let src = DiskLejaSequence::new();
        let x = project_dedup(&src, 3).unwrap();
        assert_eq!(x.values(), &[1.0, -1.0, 0.0]);
        let x = project_dedup(&src, 5).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(x.values(), &[1.0, -1.0, 0.0, h, -h]);
        let x = project_dedup(&src, 9).unwrap();
        let (c, s) = ((PI / 8.0).cos(), (PI / 8.0).sin());
        let expected = [1.0, -1.0, 0.0, h, -h, c, -c, -s, s];
        for (got, want) in x.values().iter().zip(expected) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
    }

    /// Dedup by hand on floats: Re of the canonical points, keeping first
    /// appearances up to a tolerance far below the node spacing.
    #[test]
    fn dedup_matches_float_oracle() {
        let src = DiskLejaSequence::canonical(64).unwrap();
        let mut oracle: Vec<f64> = Vec::new();
        for a in src.angles() {
            let v = (a.turns() * 2.0 * PI).cos();
            if oracle.iter().all(|o| (o - v).abs() > 1e-9) {
                oracle.push(v);
            }
        }
        let x = project_dedup(&src, oracle.len()).unwrap();
        for (got, want) in x.values().iter().zip(&oracle) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn phi_route_examples() {
        let src = DiskLejaSequence::new();
        assert_eq!(build_by_phi(&src, 3).unwrap().values(), &[1.0, -1.0, 0.0]);
        for count in [5, 1 << 12] {
            let a = build_by_phi(&src, count).unwrap();
            let b = project_dedup(&src, count).unwrap();
            assert_eq!(a.angles(), b.angles());
            assert_eq!(a.values(), b.values());
        }
    }

    #[test]
    fn phi_route_agrees_on_random_sources() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let src = DiskLejaSequence::with_rho(RhoChoice::random(&mut rng, 14).unwrap(), 1).unwrap();
            let a = build_by_phi(&src, 5000).unwrap();
            let b = project_dedup(&src, 5000).unwrap();
            assert_eq!(a.angles(), b.angles());
        }
    }

    #[test]
    fn prefixes_are_lobatto_sets() {
        let x = RLejaSequence::canonical((1 << 12) + 1).unwrap();
        assert_eq!(x.values()[0], 1.0);
        assert_eq!(x.values()[1], -1.0);
        for n in 0..=12usize {
            let d = 1usize << n;
            let got = x.prefix(d + 1).unwrap().angle_keys().unwrap();
            let want = chebyshev_lobatto(d).unwrap().angle_keys().unwrap();
            assert_eq!(got, want, "n = {n}");
        }
    }

    #[test]
    fn corollary_tuple_identity() {
        let x = RLejaSequence::canonical((1 << 13) + 1).unwrap();
        let e = x.source().angles();
        for n in 0..=12usize {
            let lhs: Vec<_> = x.angles()[(1 << n) + 1..=(1 << (n + 1))].iter().map(|a| a.real_part_key()).collect();
            let rhs: Vec<_> = e[1 << (n + 1)..(1 << (n + 1)) + (1 << n)].iter().map(|a| a.real_part_key()).collect();
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    /// For 2^j <= s < 2^j + 2^(j-1) the real part of e_s is new; for the rest
    /// of the block it has already appeared.
    #[test]
    fn first_appearance_pattern() {
        let src = DiskLejaSequence::canonical(1 << 13).unwrap();
        let mut seen = BTreeSet::new();
        seen.insert(src.angles()[0].real_part_key());
        seen.insert(src.angles()[1].real_part_key());
        for j in 1..=12usize {
            for s in (1 << j)..(1 << (j + 1)) {
                let fresh = seen.insert(src.angles()[s].real_part_key());
                assert_eq!(fresh, s < (1 << j) + (1 << (j - 1)), "j={j} s={s}");
            }
        }
    }

    #[test]
    fn values_distinct() {
        let x = RLejaSequence::canonical(2000).unwrap();
        let mut v = x.values().to_vec();
        v.sort_by(f64::total_cmp);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
