use alloc::vec::Vec;

use crate::dyadic::DyadicAngle;
use crate::error::{Error, Result};
use crate::interp1d::NodeSet1D;
use crate::math;

/// Chebyshev-Lobatto points `cos(jπ/d)`, `j = 0..=d`, in that order. For `d`
/// a power of two the nodes carry exact angles `j / 2d`.
pub fn chebyshev_lobatto(d: usize) -> Result<NodeSet1D> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if d.is_power_of_two() {
        let q = d.trailing_zeros() + 1;
        let angles = (0..=d as u64).map(|j| DyadicAngle::new(j, q)).collect::<Result<Vec<_>>>()?;
        return NodeSet1D::from_angles(angles);
    }
    let nodes = (0..=d)
        .map(|j| match j {
            0 => 1.0,
            _ if j == d => -1.0,
            _ => math::sin(math::PI * (d as f64 - 2.0 * j as f64) / (2.0 * d as f64)),
        })
        .collect();
    NodeSet1D::new(nodes)
}

/// Modified Chebyshev points `cos(β + 2jπ/d)`, `j = 0..d`: the roots of
/// `T_d(x) = T_d(cos β)`. `beta` is a fraction of a turn and must not make
/// `cos β` an extremum of `T_d`.
pub fn modified_chebyshev(d: usize, beta: DyadicAngle) -> Result<NodeSet1D> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if beta.mul_int(2 * d as u64).is_zero() {
        return Err(Error::ExtremalBeta(d));
    }
    if d.is_power_of_two() {
        let q = d.trailing_zeros();
        let angles = (0..d as u64).map(|j| Ok(beta.add(DyadicAngle::new(j, q)?))).collect::<Result<Vec<_>>>()?;
        return NodeSet1D::from_angles(angles);
    }
    let nodes = (0..d).map(|j| math::cos(math::TAU * (beta.turns() + j as f64 / d as f64))).collect();
    NodeSet1D::new(nodes)
}

/// `n` equispaced points from `-1` to `1` (the classical bad family).
pub fn equispaced(n: usize) -> Result<NodeSet1D> {
    match n {
        0 => Err(Error::EmptyNodeSet),
        1 => NodeSet1D::new(alloc::vec![0.0]),
        _ => NodeSet1D::new((0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect()),
    }
}
