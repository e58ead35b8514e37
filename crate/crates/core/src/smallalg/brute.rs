//! The small group algebra computed by brute force: `kG` reduced modulo an
//! echelon basis of `I(kG) I(k gamma_2(G))`.

use crate::error::Result;
use crate::fpalgebra::{augmentation_times_relative, AlgebraElement, IdealBasis};
use crate::pcgroup::{GroupElement, PcGroup};

use super::{DeltaIndex, SUnit, SmallAlgebraModel};

#[derive(Clone, Debug)]
pub struct BruteSmallAlgebra {
    group: PcGroup,
    ideal: IdealBasis,
}

impl BruteSmallAlgebra {
    pub fn new(g: &PcGroup) -> Result<Self> {
        let ideal = augmentation_times_relative(g, &g.gamma(2))?;
        Ok(BruteSmallAlgebra {
            group: g.clone(),
            ideal,
        })
    }

    pub fn ideal(&self) -> &IdealBasis {
        &self.ideal
    }

    pub fn quotient_dim(&self) -> usize {
        self.group.order() - self.ideal.dim()
    }

    /// `log_p` of the order of the normalized units.
    pub fn log_unit_order(&self) -> usize {
        self.quotient_dim() - 1
    }

    /// Normal form of the identity; not `1` itself when the ideal has a
    /// pivot at the identity.
    pub fn one(&self) -> AlgebraElement {
        self.reduce(&AlgebraElement::one())
    }

    pub fn reduce(&self, x: &AlgebraElement) -> AlgebraElement {
        self.ideal.reduce(x)
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.reduce(&a.mul(&self.group, b))
    }

    pub fn pow(&self, a: &AlgebraElement, k: u64) -> AlgebraElement {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Inverse of a unit `c (1 + n)` with `n` nilpotent, by the geometric
    /// series. `None` if the augmentation vanishes.
    pub fn inv(&self, u: &AlgebraElement) -> Option<AlgebraElement> {
        let p = self.group.p() as u8;
        let c = u.augmentation(p);
        if c == 0 {
            return None;
        }
        let ci = crate::linalg::inv_mod(c, p);
        let one = AlgebraElement::one();
        // u c^{-1} = 1 + n
        let n = self.reduce(&u.scale(ci, p).sub(&one, p));
        let neg_n = n.neg(p);
        let mut term = one.clone();
        let mut acc = one;
        loop {
            term = self.mul(&term, &neg_n);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term, p);
        }
        Some(self.reduce(&acc.scale(ci, p)))
    }

    pub fn comm(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let ai = self.inv(a).expect("unit");
        let bi = self.inv(b).expect("unit");
        self.mul(&self.mul(&ai, &bi), &self.mul(a, b))
    }

    pub fn embed_group(&self, g: &GroupElement) -> AlgebraElement {
        self.reduce(&AlgebraElement::group(self.group.idx(g)))
    }

    /// `1 + bar(x_1)^{delta_1} ... bar(x_n)^{delta_n}`.
    pub fn a_element(&self, x: &[GroupElement], delta: &DeltaIndex) -> AlgebraElement {
        let p = self.group.p() as u8;
        let mut m = AlgebraElement::one();
        for (xi, &di) in x.iter().zip(&delta.0) {
            let b = AlgebraElement::bar(self.group.idx(xi), p);
            for _ in 0..di {
                m = self.mul(&m, &b);
            }
        }
        self.reduce(&AlgebraElement::one().add(&m, p))
    }

    /// `g a_1^{e_1} ... a_r^{e_r}` over the reduced generators, with integer
    /// exponents taken literally (not modulo `p`).
    pub fn embed_raw(
        &self,
        model: &SmallAlgebraModel,
        g: &GroupElement,
        e: &[u64],
    ) -> AlgebraElement {
        let mut acc = self.embed_group(g);
        for (k, &ek) in e.iter().enumerate() {
            if ek == 0 {
                continue;
            }
            let d = &model.a_generators()[model.reduced()[k]].delta;
            acc = self.mul(&acc, &self.pow(&self.a_element(model.x(), d), ek));
        }
        acc
    }

    pub fn embed(&self, model: &SmallAlgebraModel, u: &SUnit) -> AlgebraElement {
        let e: Vec<u64> = u.avec.iter().map(|&c| c as u64).collect();
        self.embed_raw(model, &u.g, &e)
    }

    /// Checks the facts the symbolic model rests on against the algebra.
    /// Returns the list of failures; empty means the model is faithful.
    pub fn check_model(&self, model: &SmallAlgebraModel) -> Vec<String> {
        let g = &self.group;
        let mut fails = Vec::new();
        let a_elts: Vec<(DeltaIndex, AlgebraElement)> = model
            .deltas()
            .iter()
            .map(|d| (d.clone(), self.a_element(model.x(), d)))
            .collect();
        let gens = g.gens();
        let gamma2 = g.gamma(2);
        let p = g.p();
        for (k, (d, a)) in a_elts.iter().enumerate() {
            let sym = &model.a_generators()[k];
            for (i, xi) in model.x().iter().enumerate() {
                let got = self.comm(&self.embed_group(xi), a);
                if got != self.embed_group(&sym.action[i]) {
                    fails.push(format!(
                        "[x{}, {d}] differs from the iterated commutator",
                        i + 1
                    ));
                }
            }
            for c in gamma2.igs() {
                if self.comm(&self.embed_group(c), a) != self.one() {
                    fails.push(format!("{d} does not centralize gamma_2 element {c}"));
                }
            }
            let ap = self.pow(a, p);
            for h in &gens {
                if self.comm(&self.embed_group(h), &ap) != self.one() {
                    fails.push(format!("{d}^p does not commute with {h}"));
                }
            }
            for (d2, b) in &a_elts[k + 1..] {
                if self.mul(a, b) != self.mul(b, a) {
                    fails.push(format!("{d} and {d2} do not commute"));
                }
            }
        }
        fails
    }
}
