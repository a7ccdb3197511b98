use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{MultiplicativeBasis, TensorSum};
use crate::{Error, Result};

/// Reduced coordinates of an element of `F^× ∧ F^×` over a multiplicative
/// basis:
///
/// - `free[i][j]` (i < j): coefficient of `gᵢ ∧ g_j`,
/// - `torsion[i]`: coefficient of `ζ_w ∧ gᵢ`, stored mod `w`,
/// - `torsion_sq`: coefficient of `ζ_w ∧ ζ_w`, stored mod
///   `gcd(w, w/2 + 1)` (the relations `w(ζ∧ζ) = 0` and
///   `ζ∧ζ = (w/2)(ζ∧ζ)` leave at most 2-torsion).
#[derive(Clone, Debug)]
pub struct WedgeVector {
    free: Vec<Vec<BigInt>>,
    torsion: Vec<BigInt>,
    torsion_sq: BigInt,
    w: u32,
    torsion_sq_mod: u32,
    pub reduced: bool,
}

impl WedgeVector {
    pub fn torsion_order(&self) -> u32 {
        self.w
    }

    pub fn free_coefficient(&self, i: usize, j: usize) -> &BigInt {
        &self.free[i][j]
    }

    pub fn torsion_coefficient(&self, i: usize) -> &BigInt {
        &self.torsion[i]
    }

    pub fn torsion_sq_coefficient(&self) -> &BigInt {
        &self.torsion_sq
    }

    pub fn is_zero(&self) -> bool {
        self.free
            .iter()
            .all(|row| row.iter().all(|c| c.is_zero()))
            && self.torsion.iter().all(|c| c.is_zero())
            && self.torsion_sq.is_zero()
    }

    pub fn summary(&self, basis: &MultiplicativeBasis) -> String {
        let mut parts = Vec::new();
        let gens = basis.generators();
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                if !self.free[i][j].is_zero() {
                    parts.push(format!(
                        "{}·({} ∧ {})",
                        self.free[i][j],
                        gens[i].display(),
                        gens[j].display()
                    ));
                }
            }
        }
        for (i, c) in self.torsion.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}·(ζ ∧ {}) [mod {}]", c, gens[i].display(), self.w));
            }
        }
        if !self.torsion_sq.is_zero() {
            parts.push(format!("{}·(ζ ∧ ζ) [mod {}]", self.torsion_sq, self.torsion_sq_mod));
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn first_nonzero(&self, basis: &MultiplicativeBasis) -> String {
        let gens = basis.generators();
        for i in 0..gens.len() {
            for j in (i + 1)..gens.len() {
                if !self.free[i][j].is_zero() {
                    return format!(
                        "{}·({} ∧ {})",
                        self.free[i][j],
                        gens[i].display(),
                        gens[j].display()
                    );
                }
            }
        }
        for (i, c) in self.torsion.iter().enumerate() {
            if !c.is_zero() {
                return format!("{}·(ζ ∧ {}) mod {}", c, gens[i].display(), self.w);
            }
        }
        format!("{}·(ζ ∧ ζ) mod {}", self.torsion_sq, self.torsion_sq_mod)
    }
}

/// Bilinear expansion of the tensor terms into basis coordinates followed by
/// the rewrite rules: antisymmetry `gᵢ⊗g_j = -g_j⊗gᵢ`, the diagonal rule
/// `g⊗g = (w/2)(ζ∧g)` (from `a⊗(-a) = 0` and `-1 = ζ^{w/2}`), and torsion
/// coefficient reduction mod the certified orders.
pub fn reduce_wedge(tensor: &TensorSum, basis: &MultiplicativeBasis) -> Result<WedgeVector> {
    let k = basis.generators().len();
    let w = basis.torsion_order();
    let half_w = BigInt::from(w / 2);
    let mut free = vec![vec![BigInt::zero(); k]; k];
    let mut torsion = vec![BigInt::zero(); k];
    let mut torsion_sq = BigInt::zero();

    for (n, x, y) in &tensor.terms {
        let dx = basis.decomposition(x).ok_or(Error::MissingDecomposition)?;
        let dy = basis.decomposition(y).ok_or(Error::MissingDecomposition)?;
        let (sx, sy) = (BigInt::from(dx.torsion), BigInt::from(dy.torsion));
        // ζ ⊗ ζ
        torsion_sq += n * &sx * &sy;
        // ζ ⊗ g_j  and  g_i ⊗ ζ = -(ζ ⊗ g_i)
        for (j, b) in dy.exponents.iter().enumerate() {
            torsion[j] += n * &sx * b;
        }
        for (i, a) in dx.exponents.iter().enumerate() {
            torsion[i] -= n * a * &sy;
        }
        // g_i ⊗ g_j
        for (i, a) in dx.exponents.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in dy.exponents.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = n * a * b;
                use std::cmp::Ordering::*;
                match i.cmp(&j) {
                    Less => free[i][j] += c,
                    Greater => free[j][i] -= c,
                    Equal => torsion[i] += c * &half_w,
                }
            }
        }
    }

    let wb = BigInt::from(w);
    for c in torsion.iter_mut() {
        *c = c.mod_floor(&wb);
    }
    let tsq_mod = BigInt::from(w).gcd(&(BigInt::from(w / 2) + 1u32));
    torsion_sq = torsion_sq.mod_floor(&tsq_mod);

    Ok(WedgeVector {
        free,
        torsion,
        torsion_sq,
        w,
        torsion_sq_mod: tsq_mod.to_u32().expect("small modulus"),
        reduced: true,
    })
}
