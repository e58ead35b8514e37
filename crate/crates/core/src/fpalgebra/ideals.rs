//! Ideals of `kG` computed by brute-force echelon closure.

use crate::error::Result;
use crate::pcgroup::{PcGroup, Subgroup};

use super::{check_brute, AlgebraElement, IdealBasis};

/// The powers `I(kG)^n` of the augmentation ideal, down to zero.
#[derive(Clone, Debug)]
pub struct AugmentationTower {
    /// `powers[n-1]` spans `I^n`; the last entry is the zero ideal.
    powers: Vec<IdealBasis>,
}

fn gen_indices(g: &PcGroup) -> Vec<usize> {
    (0..g.n_gens()).map(|j| g.idx(&g.gen(j))).collect()
}

impl AugmentationTower {
    pub fn new(g: &PcGroup) -> Result<Self> {
        check_brute(g, "augmentation ideal powers")?;
        let p = g.p8();
        let n = g.order();
        let gens = gen_indices(g);
        let mut i1 = IdealBasis::new(p, n);
        for x in 1..n {
            i1.insert(&AlgebraElement::bar(x, p));
        }
        let mut powers = vec![i1];
        loop {
            let last = powers.last().unwrap();
            if last.dim() == 0 {
                break;
            }
            // I^{n+1} is the right ideal generated by I^n * bar(g_i).
            let mut next = IdealBasis::new(p, n);
            let mut fresh = Vec::new();
            for b in last.rows() {
                for &s in &gens {
                    let y = b.mul_group_right(g, s).sub(b, p);
                    if let Some(r) = next.insert(&y) {
                        fresh.push(r);
                    }
                }
            }
            next.close_under(g, &gens, true, fresh);
            powers.push(next);
        }
        Ok(AugmentationTower { powers })
    }

    /// Basis of `I^n`, `n >= 1`; zero beyond the nilpotency index.
    pub fn power(&self, n: usize) -> &IdealBasis {
        let k = (n.max(1) - 1).min(self.powers.len() - 1);
        &self.powers[k]
    }

    /// `dim I^n` for `n = 1, 2, ...` up to and including the first zero.
    pub fn dims(&self) -> Vec<usize> {
        self.powers.iter().map(|b| b.dim()).collect()
    }

    /// Nilpotency index: least `n` with `I^n = 0`.
    pub fn nilpotency_index(&self) -> usize {
        self.powers.len()
    }

    /// Largest `n` with `x` in `I^n`; `None` for `x = 0`.
    pub fn weight(&self, x: &AlgebraElement, p: u8) -> Option<usize> {
        if x.is_zero() {
            return None;
        }
        if x.augmentation(p) != 0 {
            return Some(0);
        }
        let mut w = 1;
        while w < self.powers.len() && self.powers[w].contains(x) {
            w += 1;
        }
        Some(w)
    }

    /// `D_n(G) = G ∩ (1 + I^n)` by testing every element.
    pub fn dimension_subgroup(&self, g: &PcGroup, n: usize) -> Subgroup {
        let p = g.p8();
        let ideal = self.power(n);
        let elems: Vec<_> = (1..g.order())
            .filter(|&x| ideal.contains(&AlgebraElement::bar(x, p)))
            .map(|x| g.from_idx(x))
            .collect();
        g.subgroup(&elems)
    }
}

/// The ideal `kG I(kN)` for normal `N`.
pub fn relative_augmentation_ideal(g: &PcGroup, n: &Subgroup) -> Result<IdealBasis> {
    if !n.is_normal(g) {
        return Err(crate::error::MipError::precondition(
            "subgroup is not normal",
        ));
    }
    check_brute(g, "relative augmentation ideal")?;
    let p = g.p8();
    let mut b = IdealBasis::new(p, g.order());
    let mut fresh = Vec::new();
    for s in n.igs() {
        if let Some(r) = b.insert(&AlgebraElement::bar(g.idx(s), p)) {
            fresh.push(r);
        }
    }
    b.close_under(g, &gen_indices(g), false, fresh);
    Ok(b)
}

/// `I(kG) * kG I(kN)` for normal `N`.
pub fn augmentation_times_relative(g: &PcGroup, n: &Subgroup) -> Result<IdealBasis> {
    let j = relative_augmentation_ideal(g, n)?;
    let p = g.p8();
    let mut b = IdealBasis::new(p, g.order());
    let mut fresh = Vec::new();
    for &s in &gen_indices(g) {
        let gb = AlgebraElement::bar(s, p);
        for x in j.rows() {
            if let Some(r) = b.insert(&gb.mul(g, x)) {
                fresh.push(r);
            }
        }
    }
    b.close_under(g, &gen_indices(g), false, fresh);
    Ok(b)
}

/// Zassenhaus ideal `H_n = bar(D_n) + I^{n+1}`.
pub fn zassenhaus_ideal(
    g: &PcGroup,
    tower: &AugmentationTower,
    d_n: &Subgroup,
    n: usize,
) -> IdealBasis {
    let p = g.p8();
    let mut b = tower.power(n + 1).clone();
    for x in d_n.element_indices(g) {
        b.insert(&AlgebraElement::bar(x, p));
    }
    b
}

/// Basis of `Z(kG)` made of class sums.
pub fn center_basis(g: &PcGroup) -> Result<IdealBasis> {
    let p = g.p8();
    let mut b = IdealBasis::new(p, g.order());
    for c in g.conjugacy_classes()? {
        let sum = AlgebraElement::from_terms(c.members.iter().map(|&x| (x as u32, 1)).collect(), p);
        b.insert(&sum);
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpalgebra::JenningsData;
    use rand::{Rng, SeedableRng};

    fn d8() -> PcGroup {
        PcGroup::from_relations(
            2,
            3,
            &[vec![], vec![(2, 1)], vec![]],
            &[(1, 0, vec![(2, 1)])],
        )
        .unwrap()
    }

    fn heis3() -> PcGroup {
        PcGroup::from_relations(3, 3, &[vec![], vec![], vec![]], &[(1, 0, vec![(2, 1)])]).unwrap()
    }

    #[test]
    fn c4_dims() {
        let c4 = PcGroup::from_relations(2, 2, &[vec![(1, 1)], vec![]], &[]).unwrap();
        let t = AugmentationTower::new(&c4).unwrap();
        assert_eq!(t.dims(), vec![3, 2, 1, 0]);
    }

    #[test]
    fn heisenberg_i2() {
        let g = heis3();
        let t = AugmentationTower::new(&g).unwrap();
        assert_eq!(t.power(1).dim(), 26);
        assert_eq!(t.power(2).dim(), 24);
    }

    /// Polynomial oracle: kC_{p^k} = F_p[t]/(t^{p^k}), I^n spanned by t^n..
    #[test]
    fn cyclic_matches_truncated_polynomials() {
        for (p, k) in [(2u64, 3usize), (3, 2), (5, 2)] {
            let pw: Vec<Vec<(usize, i64)>> = (0..k)
                .map(|i| if i + 1 < k { vec![(i + 1, 1)] } else { vec![] })
                .collect();
            let g = PcGroup::from_relations(p, k, &pw, &[]).unwrap();
            let t = AugmentationTower::new(&g).unwrap();
            let n = g.order();
            let want: Vec<usize> = (1..=n).map(|i| n - i).collect();
            assert_eq!(t.dims(), want);
        }
    }

    #[test]
    fn relative_ideals() {
        let g = d8();
        let gamma2 = g.gamma(2);
        let j = relative_augmentation_ideal(&g, &gamma2).unwrap();
        assert_eq!(j.dim(), 4);
        assert_eq!(
            relative_augmentation_ideal(&g, &Subgroup::trivial())
                .unwrap()
                .dim(),
            0
        );
        assert_eq!(
            relative_augmentation_ideal(&g, &g.whole()).unwrap().dim(),
            7
        );
        // kG / kG I(kgamma2) is commutative
        for a in 0..8 {
            for b in 0..8 {
                let x = AlgebraElement::group(a).lie_bracket(&g, &AlgebraElement::group(b));
                assert!(j.contains(&x));
            }
        }
        let nonnormal = g.subgroup(&[g.gen(0)]);
        assert!(relative_augmentation_ideal(&g, &nonnormal).is_err());
    }

    #[test]
    fn center_is_central() {
        let g = d8();
        let z = center_basis(&g).unwrap();
        assert_eq!(z.dim(), 5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = AlgebraElement::from_dense(
                &(0..8).map(|_| rng.gen_range(0..2)).collect::<Vec<u8>>(),
            );
            for c in z.rows() {
                assert!(c.lie_bracket(&g, &a).is_zero());
            }
        }
        let ab = PcGroup::from_relations(3, 2, &[vec![], vec![]], &[]).unwrap();
        assert_eq!(center_basis(&ab).unwrap().dim(), 9);
    }

    #[test]
    fn zassenhaus_examples() {
        let c9 = PcGroup::from_relations(3, 2, &[vec![(1, 1)], vec![]], &[]).unwrap();
        let t = AugmentationTower::new(&c9).unwrap();
        let jd = JenningsData::new(&c9);
        let h1 = zassenhaus_ideal(&c9, &t, &jd.dimension_subgroup(1), 1);
        assert_eq!(h1.dim(), t.power(1).dim());
        // bar(g^3) = bar(g)^3 lies in I^3, so H_2 = I^3 and the layer sits in H_3
        let h2 = zassenhaus_ideal(&c9, &t, &jd.dimension_subgroup(2), 2);
        assert_eq!(h2.dim(), t.power(3).dim());
        let h3 = zassenhaus_ideal(&c9, &t, &jd.dimension_subgroup(3), 3);
        assert_eq!(h3.dim() - t.power(4).dim(), 1);
        let e = PcGroup::from_relations(3, 2, &[vec![], vec![]], &[]).unwrap();
        let te = AugmentationTower::new(&e).unwrap();
        let je = JenningsData::new(&e);
        // D_2 = 1, so H_2 = I^3
        let h2 = zassenhaus_ideal(&e, &te, &je.dimension_subgroup(2), 2);
        assert_eq!(h2.dim(), te.power(3).dim());
    }

    #[test]
    fn resource_bound_enforced() {
        let g = PcGroup::from_relations(3, 7, &vec![vec![]; 7], &[]).unwrap();
        assert!(matches!(
            AugmentationTower::new(&g),
            Err(crate::error::MipError::Resource { .. })
        ));
    }
}
