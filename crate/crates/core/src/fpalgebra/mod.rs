//! The group algebra `kG` over the prime field `F_p`.
//!
//! Elements are sparse vectors over the group basis, indexed by the mixed
//! radix encoding of exponent vectors. Ideal computations that enumerate
//! the full basis are guarded by [`brute_limit`].

mod echelon;
mod ideals;
mod jennings;

pub use echelon::{dense_rank, IdealBasis};
pub use ideals::{
    augmentation_times_relative, center_basis, relative_augmentation_ideal, zassenhaus_ideal,
    AugmentationTower,
};
pub use jennings::{
    dimension_series, dimension_subgroup, weight_histogram, JenFingerprint, JenLie, JenningsData,
    Method,
};

use serde::Serialize;

use crate::error::{MipError, Result};
use crate::pcgroup::PcGroup;

/// Default bound on `|G|` for full echelon pipelines.
pub const DEFAULT_BRUTE_LIMIT: usize = 729;
/// Hard ceiling for the override.
pub const MAX_BRUTE_LIMIT: usize = 15_625;
/// Environment variable raising the brute-force bound.
pub const BRUTE_LIMIT_ENV: &str = "MIPKIT_BRUTE_LIMIT";

/// Current bound on `|G|` for brute-force algebra computations.
///
/// Each echelon row takes up to `|G|` bytes, so a full basis of `I(kG)`
/// at `|G| = 5^6` needs roughly `|G|^2 * 5` bytes (about 1.2 GB).
pub fn brute_limit() -> usize {
    std::env::var(BRUTE_LIMIT_ENV)
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .map(|v| v.min(MAX_BRUTE_LIMIT))
        .unwrap_or(DEFAULT_BRUTE_LIMIT)
}

pub fn check_brute(g: &PcGroup, what: &str) -> Result<()> {
    let bound = brute_limit();
    if g.order() > bound {
        return Err(MipError::resource(what, g.order() as u64, bound as u64));
    }
    Ok(())
}

/// Sparse element of `kG`: sorted `(basis index, coefficient)` pairs with
/// no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct AlgebraElement {
    terms: Vec<(u32, u8)>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::group(0)
    }

    /// The basis element of a group element.
    pub fn group(x: usize) -> Self {
        AlgebraElement {
            terms: vec![(x as u32, 1)],
        }
    }

    /// `x - 1`.
    pub fn bar(x: usize, p: u8) -> Self {
        if x == 0 {
            return Self::zero();
        }
        AlgebraElement {
            terms: vec![(0, p - 1), (x as u32, 1)],
        }
    }

    pub fn from_terms(mut terms: Vec<(u32, u8)>, p: u8) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(u32, u8)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            let c = c % p;
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 = ((last.1 as u32 + c as u32) % p as u32) as u8,
                _ => out.push((i, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        AlgebraElement { terms: out }
    }

    pub fn from_dense(v: &[u8]) -> Self {
        AlgebraElement {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as u32, c))
                .collect(),
        }
    }

    pub fn to_dense(&self, n: usize) -> Vec<u8> {
        let mut v = vec![0u8; n];
        for &(i, c) in &self.terms {
            v[i as usize] = c;
        }
        v
    }

    pub fn terms(&self) -> &[(u32, u8)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: usize) -> u8 {
        self.terms
            .binary_search_by_key(&(x as u32), |t| t.0)
            .map(|k| self.terms[k].1)
            .unwrap_or(0)
    }

    pub fn augmentation(&self, p: u8) -> u8 {
        (self.terms.iter().map(|t| t.1 as u32).sum::<u32>() % p as u32) as u8
    }

    pub fn add(&self, other: &Self, p: u8) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let c = ((a[i].1 as u32 + b[j].1 as u32) % p as u32) as u8;
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        AlgebraElement { terms: out }
    }

    pub fn scale(&self, c: u8, p: u8) -> Self {
        let c = c % p;
        if c == 0 {
            return Self::zero();
        }
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|&(i, a)| (i, ((a as u32 * c as u32) % p as u32) as u8))
                .collect(),
        }
    }

    pub fn neg(&self, p: u8) -> Self {
        self.scale(p - 1, p)
    }

    pub fn sub(&self, other: &Self, p: u8) -> Self {
        self.add(&other.neg(p), p)
    }

    /// Product in `kG`.
    pub fn mul(&self, g: &PcGroup, other: &Self) -> Self {
        let p = g.p8() as u32;
        let mut acc: std::collections::HashMap<u32, u32> = std::collections::HashMap::new();
        for &(x, a) in &self.terms {
            for &(y, b) in &other.terms {
                let z = g.mul_idx(x as usize, y as usize) as u32;
                let e = acc.entry(z).or_insert(0);
                *e = (*e + a as u32 * b as u32) % p;
            }
        }
        let mut terms: Vec<(u32, u8)> = acc
            .into_iter()
            .filter(|t| t.1 != 0)
            .map(|(i, c)| (i, c as u8))
            .collect();
        terms.sort_unstable_by_key(|t| t.0);
        AlgebraElement { terms }
    }

    /// Product with a check that both operands live in `kG`.
    pub fn try_mul(&self, g: &PcGroup, other: &Self) -> Result<Self> {
        let n = g.order() as u32;
        if self.terms.iter().chain(&other.terms).any(|t| t.0 >= n) {
            return Err(MipError::usage(
                "algebra element does not belong to this group",
            ));
        }
        Ok(self.mul(g, other))
    }

    /// `self * h` for a group element `h`; a permutation of the support.
    pub fn mul_group_right(&self, g: &PcGroup, h: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|&(x, c)| (g.mul_idx(x as usize, h) as u32, c))
            .collect();
        Self::sorted(terms)
    }

    pub fn mul_group_left(&self, g: &PcGroup, h: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|&(x, c)| (g.mul_idx(h, x as usize) as u32, c))
            .collect();
        Self::sorted(terms)
    }

    fn sorted(mut terms: Vec<(u32, u8)>) -> Self {
        terms.sort_unstable_by_key(|t| t.0);
        AlgebraElement { terms }
    }

    pub fn pow(&self, g: &PcGroup, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(g, self);
        }
        acc
    }

    /// Lie bracket `ab - ba`.
    pub fn lie_bracket(&self, g: &PcGroup, other: &Self) -> Self {
        self.mul(g, other).sub(&other.mul(g, self), g.p8())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::PcGroup;

    fn d8() -> PcGroup {
        PcGroup::from_relations(
            2,
            3,
            &[vec![], vec![(2, 1)], vec![]],
            &[(1, 0, vec![(2, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn kc2_square_of_one_plus_bar() {
        let g = PcGroup::from_relations(2, 1, &[vec![]], &[]).unwrap();
        let x = AlgebraElement::one().add(&AlgebraElement::bar(1, 2), 2);
        assert_eq!(x.mul(&g, &x), AlgebraElement::one());
    }

    #[test]
    fn bar_identities() {
        let g = d8();
        let p = 2;
        let n = g.order();
        for a in 0..n {
            assert_eq!(AlgebraElement::bar(a, p).augmentation(p), 0);
            for b in 0..n {
                let (ga, gb) = (AlgebraElement::bar(a, p), AlgebraElement::bar(b, p));
                // bar(gh) = bar g + bar h + bar g bar h
                let lhs = AlgebraElement::bar(g.mul_idx(a, b), p);
                let rhs = ga.add(&gb, p).add(&ga.mul(&g, &gb), p);
                assert_eq!(lhs, rhs);
                // bar h bar g = bar g bar h + (1 + bar g + bar h + bar g bar h) bar[h, g]
                let lhs = gb.mul(&g, &ga);
                let unit = AlgebraElement::one()
                    .add(&ga, p)
                    .add(&gb, p)
                    .add(&ga.mul(&g, &gb), p);
                let rhs = ga
                    .mul(&g, &gb)
                    .add(&unit.mul(&g, &AlgebraElement::bar(g.comm_idx(b, a), p)), p);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn augmentation_is_multiplicative() {
        let g = d8();
        let a = AlgebraElement::from_terms(vec![(1, 1), (3, 1), (5, 1)], 2);
        let b = AlgebraElement::from_terms(vec![(2, 1), (7, 1), (6, 1)], 2);
        assert_eq!(
            a.mul(&g, &b).augmentation(2),
            a.augmentation(2) * b.augmentation(2) % 2
        );
        assert!(a.lie_bracket(&g, &a).is_zero());
        let alien = AlgebraElement::group(100);
        assert!(alien.try_mul(&g, &a).is_err());
    }
}
