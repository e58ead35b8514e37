//! Factor groups `G/N` for normal `N`.

use crate::error::{MipError, Result};

use super::{GroupElement, PcGroup, Subgroup};

/// `G/N` together with the projection from `G`.
#[derive(Clone, Debug)]
pub struct Quotient {
    n: Subgroup,
    /// Depths of `G` not occupied by `N`; they index the factor pcgs.
    keep: Vec<usize>,
    group: PcGroup,
}

impl Quotient {
    pub fn new(g: &PcGroup, n: &Subgroup) -> Result<Self> {
        if !n.is_normal(g) {
            return Err(MipError::precondition("subgroup is not normal"));
        }
        let keep: Vec<usize> = (0..g.n_gens())
            .filter(|d| !n.depths().contains(d))
            .collect();
        let k = keep.len();
        let coords = |x: &GroupElement| -> GroupElement {
            let r = reduce(g, n, x);
            GroupElement::from_exps(keep.iter().map(|&d| r.exps()[d]).collect())
        };
        let powers: Vec<GroupElement> = keep
            .iter()
            .map(|&d| coords(&g.pow(&g.gen(d), g.p() as i64)))
            .collect();
        let mut comms = Vec::new();
        for b in 0..k {
            for a in 0..b {
                let c = coords(&g.comm(&g.gen(keep[b]), &g.gen(keep[a])));
                if !c.is_identity() {
                    comms.push((b, a, c));
                }
            }
        }
        let group = PcGroup::new(g.p(), powers, comms)
            .map_err(|e| MipError::Internal(format!("factor presentation rejected: {e}")))?;
        Ok(Quotient {
            n: n.clone(),
            keep,
            group,
        })
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.n
    }

    pub fn project(&self, g: &PcGroup, x: &GroupElement) -> GroupElement {
        let r = reduce(g, &self.n, x);
        GroupElement::from_exps(self.keep.iter().map(|&d| r.exps()[d]).collect())
    }

    /// Canonical coset representative of a factor element.
    pub fn lift(&self, g: &PcGroup, y: &GroupElement) -> GroupElement {
        let mut e = vec![0u8; g.n_gens()];
        for (i, &d) in self.keep.iter().enumerate() {
            e[d] = y.exps()[i];
        }
        GroupElement::from_exps(e)
    }

    /// Full preimage in `G` of a subgroup of `G/N`.
    pub fn preimage(&self, g: &PcGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<GroupElement> = h
            .igs()
            .iter()
            .map(|y| self.lift(g, y))
            .chain(self.n.igs().iter().cloned())
            .collect();
        g.subgroup(&gens)
    }

    /// Image of a subgroup of `G`.
    pub fn image(&self, g: &PcGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<GroupElement> = h.igs().iter().map(|x| self.project(g, x)).collect();
        self.group.subgroup(&gens)
    }
}

/// Kills the `N`-depths in increasing order by right multiplication.
fn reduce(g: &PcGroup, n: &Subgroup, x: &GroupElement) -> GroupElement {
    let mut r = x.clone();
    for (s, &d) in n.igs().iter().zip(n.depths()) {
        let e = r.exps()[d];
        if e != 0 {
            r = g.mul(&r, &g.pow(s, -(e as i64)));
        }
    }
    r
}

impl PcGroup {
    pub fn quotient(&self, n: &Subgroup) -> Result<Quotient> {
        Quotient::new(self, n)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{d8, heis, q8};
    use super::*;

    fn check_hom(g: &PcGroup, q: &Quotient) {
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (g.from_idx(a), g.from_idx(b));
                let lhs = q.group().mul(&q.project(g, &x), &q.project(g, &y));
                assert_eq!(lhs, q.project(g, &g.mul(&x, &y)));
            }
        }
    }

    #[test]
    fn d8_mod_center_is_klein() {
        let g = d8();
        let q = g.quotient(&g.center()).unwrap();
        assert_eq!(q.group().order(), 4);
        assert!(q.group().is_abelian());
        assert!(q.group().frattini().is_trivial());
        check_hom(&g, &q);
    }

    #[test]
    fn heisenberg_mod_center() {
        let g = heis(3);
        let q = g.quotient(&g.center()).unwrap();
        assert_eq!(q.group().order(), 9);
        assert!(q.group().frattini().is_trivial());
        check_hom(&g, &q);
    }

    #[test]
    fn trivial_quotient_preserves_multiplication() {
        let g = q8();
        let q = g.quotient(&Subgroup::trivial()).unwrap();
        assert_eq!(q.group(), &g);
        check_hom(&g, &q);
    }

    #[test]
    fn non_normal_rejected() {
        let g = d8();
        let h = g.subgroup(&[g.gen(0)]);
        assert!(matches!(g.quotient(&h), Err(MipError::Precondition(_))));
    }

    #[test]
    fn preimage_roundtrip() {
        let g = heis(5);
        let q = g.quotient(&g.center()).unwrap();
        let img = q.group().subgroup(&[q.group().gen(0)]);
        let pre = q.preimage(&g, &img);
        assert_eq!(pre.order(&g), 25);
        assert_eq!(q.image(&g, &pre), img);
    }
}
