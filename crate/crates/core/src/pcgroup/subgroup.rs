//! Subgroups as canonical induced generating sequences.

use std::collections::VecDeque;

use serde::Serialize;

use super::{GroupElement, PcGroup};

/// A subgroup given by its canonical induced generating sequence: one
/// generator per occupied depth, leading exponent 1 and zero exponents at
/// the other occupied depths. Two subgroups are equal iff their sequences
/// are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    igs: Vec<GroupElement>,
    depths: Vec<usize>,
}

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup {
            igs: Vec::new(),
            depths: Vec::new(),
        }
    }

    pub fn igs(&self) -> &[GroupElement] {
        &self.igs
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    /// `log_p |H|`.
    pub fn log_order(&self) -> usize {
        self.igs.len()
    }

    pub fn order(&self, g: &PcGroup) -> usize {
        (g.p() as usize).pow(self.igs.len() as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.igs.is_empty()
    }

    /// Sifts `h`; returns the exponents with `h = s_1^{e_1} ... s_k^{e_k}`
    /// if `h` lies in the subgroup.
    pub fn sift(&self, g: &PcGroup, h: &GroupElement) -> Option<Vec<u8>> {
        let mut x = h.clone();
        let mut exps = Vec::with_capacity(self.igs.len());
        let mut k = 0;
        while let Some(d) = x.depth() {
            while k < self.depths.len() && self.depths[k] < d {
                exps.push(0);
                k += 1;
            }
            if k == self.depths.len() || self.depths[k] != d {
                return None;
            }
            let e = x.exps()[d];
            x = g.mul(&g.pow(&self.igs[k], -(e as i64)), &x);
            exps.push(e);
            k += 1;
        }
        exps.resize(self.igs.len(), 0);
        Some(exps)
    }

    pub fn contains(&self, g: &PcGroup, h: &GroupElement) -> bool {
        // Index-based sifting; avoids allocations in hot loops.
        self.contains_idx(g, g.idx(h))
    }

    pub fn contains_idx(&self, g: &PcGroup, h: usize) -> bool {
        let mut x = h;
        let mut k = 0;
        let m = g.n_gens();
        let p = g.p() as usize;
        while x != 0 {
            let d = first_digit(x, m, p);
            while k < self.depths.len() && self.depths[k] < d {
                k += 1;
            }
            if k == self.depths.len() || self.depths[k] != d {
                return false;
            }
            let e = digit(x, d, m, p);
            let s = g.idx(&self.igs[k]);
            x = g.mul_idx(g.pow_idx(s, -(e as i64)), x);
            k += 1;
        }
        true
    }

    /// All elements as group indices, in the order of exponent tuples.
    pub fn element_indices(&self, g: &PcGroup) -> Vec<usize> {
        let mut out = vec![0usize];
        // Build products s_1^{e_1} ... s_k^{e_k} from the right.
        for s in self.igs.iter().rev() {
            let s = g.idx(s);
            let p = g.p() as usize;
            let mut pows = vec![0usize; p];
            for e in 1..p {
                pows[e] = g.mul_idx(pows[e - 1], s);
            }
            let mut next = Vec::with_capacity(out.len() * p);
            for &pw in &pows {
                for &t in &out {
                    next.push(g.mul_idx(pw, t));
                }
            }
            out = next;
        }
        out
    }

    pub fn elements(&self, g: &PcGroup) -> Vec<GroupElement> {
        self.element_indices(g)
            .into_iter()
            .map(|x| g.from_idx(x))
            .collect()
    }

    pub fn is_subgroup_of(&self, g: &PcGroup, other: &Subgroup) -> bool {
        self.igs.iter().all(|s| other.contains(g, s))
    }

    pub fn is_normal(&self, g: &PcGroup) -> bool {
        self.igs
            .iter()
            .all(|s| (0..g.n_gens()).all(|j| self.contains(g, &g.conj(s, &g.gen(j)))))
    }

    /// Elementwise commutativity of the generators.
    pub fn is_abelian(&self, g: &PcGroup) -> bool {
        self.igs
            .iter()
            .enumerate()
            .all(|(i, a)| self.igs[i + 1..].iter().all(|b| g.comm(a, b).is_identity()))
    }
}

fn digit(x: usize, i: usize, m: usize, p: usize) -> usize {
    (x / p.pow((m - 1 - i) as u32)) % p
}

fn first_digit(x: usize, m: usize, p: usize) -> usize {
    (0..m).find(|&i| digit(x, i, m, p) != 0).unwrap_or(m)
}

fn mod_inv(a: u8, p: u8) -> u8 {
    (1..p)
        .find(|&b| (a as u32 * b as u32) % p as u32 == 1)
        .unwrap()
}

impl PcGroup {
    /// Smallest subgroup containing `gens` that is normalized by
    /// `normalizers`.
    pub fn closure_under(&self, gens: &[GroupElement], normalizers: &[GroupElement]) -> Subgroup {
        let m = self.n_gens();
        let p = self.p8();
        let mut slots: Vec<Option<GroupElement>> = vec![None; m];
        let mut queue: VecDeque<GroupElement> = gens.iter().cloned().collect();
        while let Some(h) = queue.pop_front() {
            let mut x = h;
            let mut inserted = None;
            while let Some(d) = x.depth() {
                match &slots[d] {
                    Some(s) => {
                        let e = x.exps()[d] as i64;
                        x = self.mul(&self.pow(s, -e), &x);
                    }
                    None => {
                        let lead = x.exps()[d];
                        let x1 = self.pow(&x, mod_inv(lead, p) as i64);
                        slots[d] = Some(x1.clone());
                        inserted = Some(x1);
                        break;
                    }
                }
            }
            if let Some(r) = inserted {
                queue.push_back(self.pow(&r, p as i64));
                for s in slots.iter().flatten() {
                    if *s != r {
                        queue.push_back(self.comm(&r, s));
                    }
                }
                for n in normalizers {
                    queue.push_back(self.comm(&r, n));
                }
            }
        }
        canonical(self, slots)
    }

    pub fn subgroup(&self, gens: &[GroupElement]) -> Subgroup {
        self.closure_under(gens, &[])
    }

    /// Normal closure in `G`.
    pub fn normal_closure(&self, gens: &[GroupElement]) -> Subgroup {
        self.closure_under(gens, &self.gens())
    }

    /// Entry point: closure, optionally normal.
    pub fn subgroup_closure(&self, gens: &[GroupElement], normal: bool) -> Subgroup {
        if normal {
            self.normal_closure(gens)
        } else {
            self.subgroup(gens)
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            igs: self.gens(),
            depths: (0..self.n_gens()).collect(),
        }
    }

    /// `[H, K]` for subgroups normalized by `G`.
    pub fn comm_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        for a in &h.igs {
            for b in &k.igs {
                gens.push(self.comm(a, b));
            }
        }
        self.normal_closure(&gens)
    }

    /// `HK` for subgroups normalized by `G`.
    pub fn product(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let gens: Vec<GroupElement> = h.igs.iter().chain(&k.igs).cloned().collect();
        self.subgroup(&gens)
    }

    pub fn intersection(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let (small, big) = if h.log_order() <= k.log_order() {
            (h, k)
        } else {
            (k, h)
        };
        if small.is_subgroup_of(self, big) {
            return small.clone();
        }
        let gens: Vec<GroupElement> = small
            .element_indices(self)
            .into_iter()
            .filter(|&x| big.contains_idx(self, x))
            .map(|x| self.from_idx(x))
            .collect();
        self.subgroup(&gens)
    }

    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.comm_subgroup(last, &self.whole());
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// `gamma_i(G)` with `gamma_1 = G`; trivial beyond the class.
    pub fn gamma(&self, i: usize) -> Subgroup {
        let lcs = self.lower_central_series();
        lcs.get(i.max(1) - 1)
            .cloned()
            .unwrap_or_else(Subgroup::trivial)
    }

    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }

    /// Elements `x` with `[x, g_j]` in `inner` for every generator.
    fn central_mod(&self, inner: &Subgroup) -> Subgroup {
        let n = self.order();
        let gens_idx: Vec<usize> = (0..self.n_gens()).map(|j| self.idx(&self.gen(j))).collect();
        let keep: Vec<GroupElement> = (0..n)
            .filter(|&x| {
                gens_idx
                    .iter()
                    .all(|&s| inner.contains_idx(self, self.comm_idx(x, s)))
            })
            .map(|x| self.from_idx(x))
            .collect();
        self.subgroup(&keep)
    }

    pub fn center(&self) -> Subgroup {
        self.central_mod(&Subgroup::trivial())
    }

    pub fn upper_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![Subgroup::trivial()];
        loop {
            let last = series.last().unwrap();
            if last.log_order() == self.n_gens() {
                break;
            }
            let next = self.central_mod(last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// `Z_i(G)`, with `Z_0 = 1`.
    pub fn upper_central(&self, i: usize) -> Subgroup {
        let ucs = self.upper_central_series();
        ucs.get(i).cloned().unwrap_or_else(|| self.whole())
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        self.centralizer_of(h.igs())
    }

    pub fn centralizer_of(&self, xs: &[GroupElement]) -> Subgroup {
        let xs: Vec<usize> = xs.iter().map(|x| self.idx(x)).collect();
        let keep: Vec<GroupElement> = (0..self.order())
            .filter(|&y| xs.iter().all(|&x| self.comm_idx(y, x) == 0))
            .map(|y| self.from_idx(y))
            .collect();
        self.subgroup(&keep)
    }

    /// `H^{p^k} = <x^{p^k} : x in H>`.
    pub fn agemo_of(&self, h: &Subgroup, k: u32) -> Subgroup {
        let e = (self.p() as i64).pow(k);
        let gens: Vec<GroupElement> = h
            .element_indices(self)
            .into_iter()
            .map(|x| self.pow_idx(x, e))
            .filter(|&y| y != 0)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .map(|y| self.from_idx(y))
            .collect();
        self.subgroup(&gens)
    }

    pub fn agemo(&self) -> Subgroup {
        self.agemo_of(&self.whole(), 1)
    }

    /// `<x in H : x^{p^k} = 1>`.
    pub fn omega_of(&self, h: &Subgroup, k: u32) -> Subgroup {
        let e = (self.p() as i64).pow(k);
        let gens: Vec<GroupElement> = h
            .element_indices(self)
            .into_iter()
            .filter(|&x| x != 0 && self.pow_idx(x, e) == 0)
            .map(|x| self.from_idx(x))
            .collect();
        self.subgroup(&gens)
    }

    pub fn omega(&self) -> Subgroup {
        self.omega_of(&self.whole(), 1)
    }

    /// Frattini subgroup `H^p [H, H]` of an arbitrary subgroup `H`.
    pub fn frattini_of(&self, h: &Subgroup) -> Subgroup {
        let p = self.p() as i64;
        let mut gens = Vec::new();
        for (i, a) in h.igs.iter().enumerate() {
            gens.push(self.pow(a, p));
            for b in &h.igs[i + 1..] {
                gens.push(self.comm(a, b));
            }
        }
        self.closure_under(&gens, h.igs())
    }

    pub fn frattini(&self) -> Subgroup {
        self.frattini_of(&self.whole())
    }

    /// Minimal number of generators `d(H) = log_p |H : Phi(H)|`.
    pub fn rank_of(&self, h: &Subgroup) -> usize {
        h.log_order() - self.frattini_of(h).log_order()
    }

    pub fn rank(&self) -> usize {
        self.rank_of(&self.whole())
    }

    /// `Gamma(G) = Z(G) ∩ gamma_2(G)`.
    pub fn gamma_cap(&self) -> Subgroup {
        self.intersection(&self.center(), &self.gamma(2))
    }

    /// Picks a minimal generating set: generators of `G` whose images span
    /// `G / Phi(G)`, chosen greedily in pc order.
    pub fn minimal_generators(&self) -> Vec<GroupElement> {
        let phi = self.frattini();
        let mut chosen = Vec::new();
        let mut span = phi.clone();
        for j in 0..self.n_gens() {
            let g = self.gen(j);
            if !span.contains(self, &g) {
                chosen.push(g);
                let gens: Vec<GroupElement> =
                    span.igs.iter().cloned().chain(chosen.clone()).collect();
                span = self.subgroup(&gens);
            }
        }
        chosen
    }
}

fn canonical(g: &PcGroup, slots: Vec<Option<GroupElement>>) -> Subgroup {
    let depths: Vec<usize> = (0..slots.len()).filter(|&d| slots[d].is_some()).collect();
    let mut igs: Vec<GroupElement> = slots.into_iter().flatten().collect();
    let n = igs.len();
    for a in (0..n).rev() {
        for b in a + 1..n {
            let c = igs[a].exps()[depths[b]];
            if c != 0 {
                igs[a] = g.mul(&igs[a], &g.pow(&igs[b], -(c as i64)));
            }
        }
    }
    Subgroup { igs, depths }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{c9, d8, elem_ab, heis, q8};
    use super::*;
    use std::collections::BTreeSet;

    /// Brute-force closure by repeated multiplication.
    fn brute_closure(g: &PcGroup, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = [0].into();
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = g.mul_idx(x, s);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    fn as_set(g: &PcGroup, h: &Subgroup) -> BTreeSet<usize> {
        h.element_indices(g).into_iter().collect()
    }

    #[test]
    fn closure_matches_brute_force() {
        for g in [d8(), q8(), heis(3), c9(), elem_ab(2, 3)] {
            let n = g.order();
            for a in 0..n {
                for b in [0, 1, n - 1, n / 2] {
                    let h = g.subgroup(&[g.from_idx(a), g.from_idx(b)]);
                    let brute = brute_closure(&g, &[a, b]);
                    assert_eq!(as_set(&g, &h), brute);
                    assert_eq!(h.order(&g), brute.len());
                    for x in 0..n {
                        assert_eq!(h.contains_idx(&g, x), brute.contains(&x));
                        assert_eq!(h.sift(&g, &g.from_idx(x)).is_some(), brute.contains(&x));
                    }
                }
            }
        }
    }

    #[test]
    fn spec_closure_examples() {
        let g = d8();
        assert_eq!(g.subgroup(&[g.gen(2)]).order(&g), 2);
        assert_eq!(g.subgroup(&g.gens()), g.whole());
        let h = heis(3);
        let nc = h.normal_closure(&[h.gen(0)]);
        assert_eq!(nc.order(&h), 9);
        assert!(nc.contains(&h, &h.gen(2)));
        assert!(nc.is_normal(&h));
    }

    #[test]
    fn series_on_small_groups() {
        let g = d8();
        let lcs = g.lower_central_series();
        assert_eq!(lcs.len(), 3);
        assert_eq!(lcs[1], g.subgroup(&[g.gen(2)]));
        assert!(lcs[2].is_trivial());
        assert_eq!(g.nilpotency_class(), 2);
        assert_eq!(g.center(), g.subgroup(&[g.gen(2)]));
        assert_eq!(g.frattini(), g.subgroup(&[g.gen(2)]));
        assert_eq!(g.gamma_cap(), g.subgroup(&[g.gen(2)]));
        let e = elem_ab(3, 3);
        assert_eq!(e.lower_central_series().len(), 2);
        assert_eq!(e.center(), e.whole());
        assert!(e.frattini().is_trivial());
        let c = c9();
        assert_eq!(c.agemo().order(&c), 3);
        let h = heis(3);
        assert_eq!(h.lower_central_series()[1], h.subgroup(&[h.gen(2)]));
        assert_eq!(h.centralizer(&h.subgroup(&[h.gen(2)])), h.whole());
        assert_eq!(h.upper_central_series().len(), 3);
        assert_eq!(h.omega(), h.whole());
        assert_eq!(q8().omega().order(&q8()), 2);
    }

    #[test]
    fn center_and_centralizer_brute() {
        for g in [d8(), q8(), heis(3), heis(5)] {
            let n = g.order();
            let brute: BTreeSet<usize> = (0..n)
                .filter(|&x| (0..n).all(|y| g.mul_idx(x, y) == g.mul_idx(y, x)))
                .collect();
            assert_eq!(as_set(&g, &g.center()), brute);
        }
    }

    #[test]
    fn intersection_and_rank() {
        let g = heis(3);
        let a = g.subgroup(&[g.gen(0), g.gen(2)]);
        let b = g.subgroup(&[g.gen(1), g.gen(2)]);
        assert_eq!(g.intersection(&a, &b), g.subgroup(&[g.gen(2)]));
        assert_eq!(g.rank(), 2);
        assert_eq!(g.rank_of(&a), 2);
        assert_eq!(g.minimal_generators().len(), 2);
    }
}
