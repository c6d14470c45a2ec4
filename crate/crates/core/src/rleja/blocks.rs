//! Splitting `B = X(2^n + 1 : k - 1)` into modified Chebyshev blocks.
//!
//! Write `k - 1 = 2^n + 2^(n_1) + ... + 2^(n_r)` with `n_0 = n + 1` and
//! `d_i = 2^(n_0) + ... + 2^(n_i)`. Then `B` is the concatenation of the real
//! parts of `E(d_i : d_(i+1) - 1)`, and block `i` is, as a set, the modified
//! Chebyshev set of degree `2^(n_(i+1))` shifted by the angle of `e_(d_i)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::RLejaSequence;
use crate::dyadic::DyadicAngle;
use crate::error::{Error, Result};
use crate::interp1d::NodeSet1D;

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    /// Angles of the block's points, in sequence order.
    pub angles: Vec<DyadicAngle>,
    pub degree: usize,
    /// `β_0 + ... + β_i`, the angle of the first disk point of the block.
    pub shift: DyadicAngle,
    /// `β_i`, a `2^(n_i)`-th root of `-1`.
    pub rho: DyadicAngle,
}

impl Block {
    pub fn values(&self) -> Vec<f64> {
        self.angles.iter().map(|a| a.cos_value()).collect()
    }

    pub fn node_set(&self) -> Result<NodeSet1D> {
        NodeSet1D::from_angles(self.angles.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockDecomposition {
    pub k: usize,
    /// `n` with `2^n + 1 < k <= 2^(n+1)`, or `k = 2^n + 1` when degenerate.
    pub n: u32,
    /// `n_0 > n_1 > ... > n_r`; just `[n + 1]` when degenerate.
    pub exponents: Vec<u32>,
    pub blocks: Vec<Block>,
}

impl BlockDecomposition {
    /// `k - 1` is a power of two: `B` is empty and `X_k` is a full Lobatto set.
    pub fn is_degenerate(&self) -> bool {
        self.blocks.is_empty()
    }

    /// All block angles concatenated, i.e. the angles of `B`.
    pub fn b_angles(&self) -> Vec<DyadicAngle> {
        self.blocks.iter().flat_map(|b| b.angles.iter().copied()).collect()
    }
}

fn key_set(angles: impl IntoIterator<Item = DyadicAngle>) -> BTreeSet<DyadicAngle> {
    angles.into_iter().map(|a| a.real_part_key()).collect()
}

/// Decomposes `X(2^n + 1 : k - 1)` and checks both structural claims exactly:
/// the blocks concatenate to the tuple, and each block is the predicted
/// modified Chebyshev set.
pub fn block_decompose(x: &RLejaSequence, k: usize) -> Result<BlockDecomposition> {
    if k < 3 || k > x.len() {
        return Err(Error::BlockRange(k));
    }
    let m = k - 1;
    let n = usize::BITS - 1 - m.leading_zeros();
    if m.is_power_of_two() {
        return Ok(BlockDecomposition { k, n, exponents: alloc::vec![n + 1], blocks: Vec::new() });
    }
    let mut exponents = alloc::vec![n + 1];
    let rest = m - (1 << n);
    exponents.extend((0..n).rev().filter(|b| rest >> b & 1 == 1));

    let mut src = x.source().clone();
    let needed = (1usize << (n + 1)) + rest;
    src.extend_to(needed)?;
    let e = src.angles();

    let mut blocks = Vec::with_capacity(exponents.len() - 1);
    let mut start = 1usize << (n + 1);
    let mut prev_shift = DyadicAngle::ZERO;
    for i in 0..exponents.len() - 1 {
        let degree = 1usize << exponents[i + 1];
        let angles = e[start..start + degree].to_vec();
        let shift = angles[0];
        let rho = shift.sub(prev_shift);
        if !rho.is_root_of_minus_one(exponents[i]) {
            return Err(Error::BlockMismatch(i));
        }
        let expected = (0..degree as u64)
            .map(|j| Ok(shift.add(DyadicAngle::new(j, exponents[i + 1])?)))
            .collect::<Result<Vec<_>>>()?;
        if key_set(angles.iter().copied()) != key_set(expected) {
            return Err(Error::BlockMismatch(i));
        }
        blocks.push(Block { angles, degree, shift, rho });
        prev_shift = shift;
        start += degree;
    }

    let decomposition = BlockDecomposition { k, n, exponents, blocks };
    let b: Vec<_> = x.angles()[(1 << n) + 1..k].to_vec();
    if decomposition.b_angles() != b {
        return Err(Error::BlockMismatch(0));
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::{DiskLejaSequence, RhoChoice};
    use crate::rleja::{build_by_phi, modified_chebyshev};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let x = RLejaSequence::canonical(64).unwrap();
        let d = block_decompose(&x, 6).unwrap();
        assert_eq!(d.n, 2);
        assert_eq!(d.exponents, vec![3, 0]);
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].degree, 1);
        assert_eq!(d.b_angles(), x.angles()[5..6].to_vec());

        let d = block_decompose(&x, 8).unwrap();
        assert_eq!(d.exponents, vec![3, 1, 0]);
        assert_eq!(d.blocks.iter().map(|b| b.degree).collect::<Vec<_>>(), vec![2, 1]);
        assert_eq!(d.blocks[0].rho, DyadicAngle::new(1, 4).unwrap());
        assert_eq!(d.blocks[1].rho, DyadicAngle::new(1, 2).unwrap());
    }

    #[test]
    fn degenerate_and_out_of_range() {
        let x = RLejaSequence::canonical(64).unwrap();
        assert!(block_decompose(&x, 5).unwrap().is_degenerate());
        assert!(block_decompose(&x, 17).unwrap().is_degenerate());
        assert_eq!(block_decompose(&x, 2), Err(Error::BlockRange(2)));
        assert_eq!(block_decompose(&x, 65), Err(Error::BlockRange(65)));
    }

    /// Full block: B together with x_(2^(n+1)) is the single modified
    /// Chebyshev set of degree 2^n from the corollary.
    #[test]
    fn full_block_matches_corollary_set() {
        let x = RLejaSequence::canonical(1 << 10).unwrap();
        let e = x.source().angles();
        for n in 1..9u32 {
            let k = 1usize << (n + 1);
            let d = block_decompose(&x, k).unwrap();
            let mut got = d.b_angles();
            got.push(x.angles()[k]);
            let beta = e[1 << (n + 1)];
            let want = modified_chebyshev(1 << n, beta).unwrap();
            assert_eq!(key_set(got), key_set(want.angles().unwrap().iter().copied()), "n={n}");
        }
    }

    #[test]
    fn blocks_match_modified_chebyshev_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sources =
            [DiskLejaSequence::new(), DiskLejaSequence::with_rho(RhoChoice::random(&mut rng, 12).unwrap(), 1).unwrap()];
        for src in &sources {
            let x = build_by_phi(src, 513).unwrap();
            for k in 3..=512 {
                let d = block_decompose(&x, k).unwrap();
                for b in &d.blocks {
                    let t = modified_chebyshev(b.degree, b.shift).unwrap();
                    assert_eq!(key_set(b.angles.iter().copied()), key_set(t.angles().unwrap().iter().copied()));
                }
                let total: usize = d.blocks.iter().map(|b| b.degree).sum();
                assert_eq!(total, if d.is_degenerate() { 0 } else { k - 1 - (1 << d.n) });
            }
        }
    }
}
