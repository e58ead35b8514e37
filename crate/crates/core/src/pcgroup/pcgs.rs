//! Arbitrary polycyclic generating sequences and re-presentation.

use crate::error::{MipError, Result};

use super::{GroupElement, PcGroup, Subgroup};

/// A sequence `s_1, ..., s_k` of elements of `G` whose tails
/// `T_i = <s_i, ..., s_k>` have order `p^{k-i+1}`. Exponents of an element
/// of `T_1` are read off by successive division.
#[derive(Clone, Debug)]
pub struct Pcgs {
    seq: Vec<GroupElement>,
    tails: Vec<Subgroup>,
}

impl Pcgs {
    pub fn new(g: &PcGroup, seq: Vec<GroupElement>) -> Result<Self> {
        let k = seq.len();
        let mut tails = vec![Subgroup::trivial(); k + 1];
        for i in (0..k).rev() {
            let gens: Vec<GroupElement> = seq[i..].to_vec();
            let t = g.subgroup(&gens);
            if t.log_order() != k - i {
                return Err(MipError::precondition(format!(
                    "sequence is not polycyclic at position {}",
                    i + 1
                )));
            }
            tails[i] = t;
        }
        Ok(Pcgs { seq, tails })
    }

    pub fn seq(&self) -> &[GroupElement] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn span(&self) -> &Subgroup {
        &self.tails[0]
    }

    /// Exponents `e` with `x = s_1^{e_1} ... s_k^{e_k}`, or `None` when `x`
    /// lies outside the span.
    pub fn exponents(&self, g: &PcGroup, x: &GroupElement) -> Option<Vec<u8>> {
        let p = g.p() as i64;
        let mut y = x.clone();
        let mut out = Vec::with_capacity(self.seq.len());
        for (i, s) in self.seq.iter().enumerate() {
            let s_inv = g.inv(s);
            let mut e = 0;
            while !self.tails[i + 1].contains(g, &y) {
                y = g.mul(&s_inv, &y);
                e += 1;
                if e == p {
                    return None;
                }
            }
            out.push(e as u8);
        }
        if y.is_identity() {
            Some(out)
        } else {
            None
        }
    }

    pub fn eval(&self, g: &PcGroup, exps: &[u8]) -> GroupElement {
        let mut acc = g.identity();
        for (s, &e) in self.seq.iter().zip(exps) {
            acc = g.mul(&acc, &g.pow(s, e as i64));
        }
        acc
    }

    /// Presentation of the span on this sequence. Fails if the sequence does
    /// not yield a refined presentation with later-supported relations.
    pub fn presentation(&self, g: &PcGroup) -> Result<PcGroup> {
        let k = self.seq.len();
        let word = |x: &GroupElement, after: usize| -> Result<GroupElement> {
            let e = self
                .exponents(g, x)
                .ok_or_else(|| MipError::Internal("relation outside span".into()))?;
            if e[..=after].iter().any(|&v| v != 0) {
                return Err(MipError::precondition(
                    "sequence does not give a weighted presentation",
                ));
            }
            Ok(GroupElement::from_exps(e))
        };
        let mut powers = Vec::with_capacity(k);
        for (i, s) in self.seq.iter().enumerate() {
            powers.push(word(&g.pow(s, g.p() as i64), i)?);
        }
        let mut comms = Vec::new();
        for j in 0..k {
            for i in 0..j {
                let c = word(&g.comm(&self.seq[j], &self.seq[i]), j)?;
                if !c.is_identity() {
                    comms.push((j, i, c));
                }
            }
        }
        PcGroup::new(g.p(), powers, comms)
    }
}

/// A group re-presented on a new pcgs, with maps in both directions.
#[derive(Clone, Debug)]
pub struct Repcgs {
    pub pcgs: Pcgs,
    pub group: PcGroup,
}

impl Repcgs {
    pub fn new(g: &PcGroup, seq: Vec<GroupElement>) -> Result<Self> {
        let pcgs = Pcgs::new(g, seq)?;
        let group = pcgs.presentation(g)?;
        Ok(Repcgs { pcgs, group })
    }

    /// Image in the new presentation of an element of the old one.
    pub fn to_new(&self, g: &PcGroup, x: &GroupElement) -> Option<GroupElement> {
        self.pcgs.exponents(g, x).map(GroupElement::from_exps)
    }

    pub fn to_old(&self, g: &PcGroup, y: &GroupElement) -> GroupElement {
        self.pcgs.eval(g, y.exps())
    }
}

impl PcGroup {
    /// A random re-presentation of the same group: generators are swapped
    /// with their neighbours where the result stays a weighted pcgs, then
    /// each `g_i` is replaced by `g_i^e r` with `e` a unit and `r` in the
    /// tail after `g_i`.
    pub fn random_relabeling<R: rand::Rng>(&self, rng: &mut R) -> Result<PcGroup> {
        let m = self.n_gens();
        let p = self.p() as u8;
        let mut seq = self.gens();
        for _ in 0..2 * m {
            if m < 2 {
                break;
            }
            let i = rng.gen_range(0..m - 1);
            let mut trial = seq.clone();
            trial.swap(i, i + 1);
            if Repcgs::new(self, trial.clone()).is_ok() {
                seq = trial;
            }
        }
        let tails = Pcgs::new(self, seq.clone())?;
        let mut out = Vec::with_capacity(m);
        for (i, s) in seq.iter().enumerate() {
            let mut r = self.identity();
            for t in &tails.seq[i + 1..] {
                r = self.mul(&r, &self.pow(t, rng.gen_range(0..p) as i64));
            }
            let e = rng.gen_range(1..p) as i64;
            out.push(self.mul(&self.pow(s, e), &r));
        }
        Ok(Repcgs::new(self, out)?.group)
    }

    /// A subgroup as a group in its own right, presented on its igs.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<Repcgs> {
        Repcgs::new(self, h.igs().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{d8, heis, q8};
    use super::*;

    #[test]
    fn subgroup_presentation_is_faithful() {
        let g = heis(3);
        let h = g.subgroup(&[g.gen(0), g.gen(2)]);
        let r = g.subgroup_as_group(&h).unwrap();
        assert_eq!(r.group.order(), 9);
        assert!(r.group.is_abelian());
        for x in h.elements(&g) {
            let y = r.to_new(&g, &x).unwrap();
            assert_eq!(r.to_old(&g, &y), x);
        }
    }

    #[test]
    fn reversed_generators_of_q8_give_q8() {
        let g = q8();
        // (g2, g1, g3) is another pcgs of Q8
        let r = Repcgs::new(&g, vec![g.gen(1), g.gen(0), g.gen(2)]).unwrap();
        assert_eq!(r.group.order(), 8);
        assert_eq!(r.group.omega().log_order(), 1);
        let n = g.order();
        for a in 0..n {
            for b in 0..n {
                let (x, y) = (g.from_idx(a), g.from_idx(b));
                let xy = r.to_new(&g, &g.mul(&x, &y)).unwrap();
                let prod = r
                    .group
                    .mul(&r.to_new(&g, &x).unwrap(), &r.to_new(&g, &y).unwrap());
                assert_eq!(xy, prod);
            }
        }
    }

    #[test]
    fn relabelings_are_isomorphic() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for g in [d8(), q8(), heis(3)] {
            for _ in 0..4 {
                let h = g.random_relabeling(&mut rng).unwrap();
                let v = crate::pcgroup::iso_search(&g, &h, 100_000).unwrap();
                assert!(v.is_isomorphic());
            }
        }
    }

    #[test]
    fn non_polycyclic_sequence_rejected() {
        let g = d8();
        assert!(Pcgs::new(&g, vec![g.gen(0), g.gen(0)]).is_err());
    }
}
