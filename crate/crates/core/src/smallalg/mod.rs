//! The small group algebra `kG / I(kG) I(k gamma_2(G))` of a group with
//! `gamma_2(G)^p gamma_4(G) = 1`, and its normalized units `S = G ⋊ A`.
//!
//! `S` is modelled modulo `A ∩ Z(S)`. An element of `A` acts on `G` by
//! `x -> x [x, a]` with `[x, a]` in `gamma_3(G)`, so `A / (A ∩ Z(S))`
//! embeds into `Hom(G/Phi(G), gamma_3(G))`, an `F_p`-space. Units are pairs
//! `(g, v)` standing for `g * a^v` over a basis of that image.

mod brute;
mod report;
mod witness;

pub use brute::BruteSmallAlgebra;
pub use report::{report_for, structure_report, Clause, StructureReport};
pub use witness::{
    parse_witness, verify_witness, verify_witness_in, RelationCheck, Verdict, Witness,
    WitnessReport, WitnessToken,
};

use std::fmt;

use serde::Serialize;

use crate::error::{MipError, Result};
use crate::linalg;
use crate::pcgroup::{GroupElement, PcGroup, Quotient, Subgroup};

/// Checks `gamma_2(G)^p gamma_4(G) = 1`.
pub fn check_hypothesis(g: &PcGroup) -> Result<()> {
    let g2 = g.gamma(2);
    let bad = !g.agemo_of(&g2, 1).is_trivial() || !g.gamma(4).is_trivial();
    if bad {
        return Err(MipError::precondition(
            "hypothesis gamma_2(G)^p gamma_4(G) = 1 fails",
        ));
    }
    Ok(())
}

/// An element of the index set `D(G)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DeltaIndex(pub Vec<u32>);

impl DeltaIndex {
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for DeltaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "A[{}]", parts.join(","))
    }
}

/// All `delta` with `0 <= delta_i < p^lambda_i`, not all `delta_i`
/// divisible by `p`, and `sum delta_i >= 2`, in lexicographic order.
pub fn delta_index_set(p: u64, lambda: &[u32]) -> Vec<DeltaIndex> {
    let bounds: Vec<u32> = lambda.iter().map(|&l| (p as u32).pow(l)).collect();
    let n = bounds.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut d = vec![0u32; n];
    loop {
        if d.iter().any(|&x| !(x as u64).is_multiple_of(p)) && d.iter().sum::<u32>() >= 2 {
            out.push(DeltaIndex(d.clone()));
        }
        // odometer, last coordinate fastest
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            d[k] += 1;
            if d[k] < bounds[k] {
                break;
            }
            d[k] = 0;
        }
    }
}

/// A generator `a = 1 + x^delta` of `A` with its action on `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AGenerator {
    pub delta: DeltaIndex,
    /// `[x_i, a]` for each `i`.
    pub action: Vec<GroupElement>,
}

impl AGenerator {
    /// Central in `S` iff the action is trivial.
    pub fn is_central(&self) -> bool {
        self.action.iter().all(|c| c.is_identity())
    }
}

/// `[x, a]` for `a = 1 + x^delta`: the iterated commutator with `x_i`
/// repeated `delta_i` times.
pub fn a_action(
    g: &PcGroup,
    x: &[GroupElement],
    delta: &DeltaIndex,
    on: &GroupElement,
) -> GroupElement {
    let mut c = on.clone();
    for (xi, &di) in x.iter().zip(&delta.0) {
        for _ in 0..di {
            if c.is_identity() {
                return c;
            }
            c = g.comm(&c, xi);
        }
    }
    c
}

pub fn a_generator(g: &PcGroup, x: &[GroupElement], delta: &DeltaIndex) -> AGenerator {
    AGenerator {
        delta: delta.clone(),
        action: x.iter().map(|xi| a_action(g, x, delta, xi)).collect(),
    }
}

/// Picks a maximal subfamily with independent action vectors, scanning in
/// the given order. Returns the chosen positions.
pub fn reduce_a_modulo_center(
    g: &PcGroup,
    gamma3: &Subgroup,
    gens: &[AGenerator],
) -> Result<Vec<usize>> {
    let p = g.p8();
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut chosen = Vec::new();
    for (k, a) in gens.iter().enumerate() {
        let v = action_vector(g, gamma3, &a.action)?;
        let mut with = rows.clone();
        with.push(v.clone());
        if linalg::rank(&with, p) > rows.len() {
            rows.push(v);
            chosen.push(k);
        }
    }
    Ok(chosen)
}

/// Coordinates of an action in `gamma_3(G)^n`.
pub fn action_vector(g: &PcGroup, gamma3: &Subgroup, action: &[GroupElement]) -> Result<Vec<u8>> {
    let mut v = Vec::with_capacity(action.len() * gamma3.log_order());
    for c in action {
        let e = gamma3
            .sift(g, c)
            .ok_or_else(|| MipError::Internal(format!("action value {c} outside gamma_3")))?;
        v.extend(e);
    }
    Ok(v)
}

/// Element `g * a^v` of `S / (A ∩ Z(S))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SUnit {
    pub g: GroupElement,
    pub avec: Vec<u8>,
}

/// The symbolic model of `S / (A ∩ Z(S))` for a fixed choice of `x`.
#[derive(Clone, Debug)]
pub struct SmallAlgebraModel {
    group: PcGroup,
    x: Vec<GroupElement>,
    lambda: Vec<u32>,
    gamma3: Subgroup,
    deltas: Vec<DeltaIndex>,
    gens: Vec<AGenerator>,
    reduced: Vec<usize>,
    basis_rows: Vec<Vec<u8>>,
    phi_quot: Quotient,
    /// Rows: coordinates of `x_i` in `G/Phi(G)`; inverted below.
    x_inv: Vec<Vec<u8>>,
    /// `phi_k(x_i)` for reduced generator `k`.
    basis_action: Vec<Vec<GroupElement>>,
    sbar: PcGroup,
}

impl SmallAlgebraModel {
    /// Builds the model with `x` chosen by [`default_generators`].
    pub fn new(g: &PcGroup) -> Result<Self> {
        check_hypothesis(g)?;
        let x = default_generators(g)?;
        Self::with_generators(g, x)
    }

    pub fn with_generators(g: &PcGroup, x: Vec<GroupElement>) -> Result<Self> {
        check_hypothesis(g)?;
        for xi in &x {
            g.check(xi)?;
        }
        let lambda = check_direct_basis(g, &x)?;
        let p = g.p8();
        let gamma3 = g.gamma(3);
        let deltas = delta_index_set(g.p(), &lambda);
        let gens: Vec<AGenerator> = deltas.iter().map(|d| a_generator(g, &x, d)).collect();
        let reduced = reduce_a_modulo_center(g, &gamma3, &gens)?;
        let basis_rows = reduced
            .iter()
            .map(|&k| action_vector(g, &gamma3, &gens[k].action))
            .collect::<Result<Vec<_>>>()?;
        let basis_action: Vec<Vec<GroupElement>> =
            reduced.iter().map(|&k| gens[k].action.clone()).collect();
        let phi_quot = g.quotient(&g.frattini())?;
        let xrows: Vec<Vec<u8>> = x
            .iter()
            .map(|xi| phi_quot.project(g, xi).exps().to_vec())
            .collect();
        let x_inv = invert(&xrows, p)
            .ok_or_else(|| MipError::Internal("x is not a basis modulo Phi(G)".into()))?;
        let sbar = build_sbar(g, &basis_action, &x_inv, &phi_quot)?;
        Ok(SmallAlgebraModel {
            group: g.clone(),
            x,
            lambda,
            gamma3,
            deltas,
            gens,
            reduced,
            basis_rows,
            phi_quot,
            x_inv,
            basis_action,
            sbar,
        })
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    pub fn x(&self) -> &[GroupElement] {
        &self.x
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn deltas(&self) -> &[DeltaIndex] {
        &self.deltas
    }

    pub fn a_generators(&self) -> &[AGenerator] {
        &self.gens
    }

    /// The reduced generators, as positions into [`Self::a_generators`].
    pub fn reduced(&self) -> &[usize] {
        &self.reduced
    }

    /// `log_p |A / (A ∩ Z(S))|`.
    pub fn a_rank(&self) -> usize {
        self.reduced.len()
    }

    pub fn gamma3(&self) -> &Subgroup {
        &self.gamma3
    }

    /// `S / (A ∩ Z(S))` as a pc group: the reduced `A`-generators come
    /// first, followed by the pc generators of `G`.
    pub fn sbar(&self) -> &PcGroup {
        &self.sbar
    }

    fn p8(&self) -> u8 {
        self.group.p() as u8
    }

    /// Coordinates over the reduced basis of the class of `1 + x^delta`.
    pub fn express_delta(&self, delta: &DeltaIndex) -> Result<Vec<u8>> {
        if delta.0.len() != self.x.len() {
            return Err(MipError::usage(format!(
                "{delta} has {} entries, expected {}",
                delta.0.len(),
                self.x.len()
            )));
        }
        if !self.deltas.contains(delta) {
            return Err(MipError::usage(format!(
                "{delta} is not in the index set D(G)"
            )));
        }
        let a = a_generator(&self.group, &self.x, delta);
        let v = action_vector(&self.group, &self.gamma3, &a.action)?;
        if self.basis_rows.is_empty() {
            return Ok(Vec::new());
        }
        linalg::solve(&self.basis_rows, &v, self.p8())
            .ok_or_else(|| MipError::Internal(format!("{delta} acts outside the reduced span")))
    }

    /// `phi_v(h) = [h, a^v]`.
    pub fn phi(&self, v: &[u8], h: &GroupElement) -> GroupElement {
        phi_of(
            &self.group,
            &self.basis_action,
            &self.x_inv,
            &self.phi_quot,
            v,
            h,
        )
    }

    pub fn one(&self) -> SUnit {
        SUnit {
            g: self.group.identity(),
            avec: vec![0; self.a_rank()],
        }
    }

    pub fn from_group(&self, g: &GroupElement) -> SUnit {
        SUnit {
            g: g.clone(),
            avec: vec![0; self.a_rank()],
        }
    }

    /// The `k`-th reduced `A`-generator.
    pub fn a_unit(&self, k: usize) -> SUnit {
        let mut u = self.one();
        u.avec[k] = 1;
        u
    }

    pub fn from_delta(&self, delta: &DeltaIndex) -> Result<SUnit> {
        Ok(SUnit {
            g: self.group.identity(),
            avec: self.express_delta(delta)?,
        })
    }

    fn check_unit(&self, u: &SUnit) -> Result<()> {
        if u.avec.len() != self.a_rank() || u.g.len() != self.group.n_gens() {
            return Err(MipError::usage("unit does not belong to this model"));
        }
        Ok(())
    }

    /// `(g a)(h b) = g h [h, a]^{-1} a b`.
    pub fn s_mul(&self, u: &SUnit, w: &SUnit) -> SUnit {
        let g = &self.group;
        let p = self.p8();
        let c = self.phi(&u.avec, &w.g);
        SUnit {
            g: g.mul(&g.mul(&u.g, &w.g), &g.inv(&c)),
            avec: u
                .avec
                .iter()
                .zip(&w.avec)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn try_s_mul(&self, u: &SUnit, w: &SUnit) -> Result<SUnit> {
        self.check_unit(u)?;
        self.check_unit(w)?;
        Ok(self.s_mul(u, w))
    }

    pub fn s_inv(&self, u: &SUnit) -> SUnit {
        let g = &self.group;
        let p = self.p8();
        let gi = g.inv(&u.g);
        let c = self.phi(&u.avec, &u.g);
        SUnit {
            g: g.mul(&gi, &g.inv(&c)),
            avec: u.avec.iter().map(|&a| (p - a) % p).collect(),
        }
    }

    pub fn s_comm(&self, u: &SUnit, w: &SUnit) -> SUnit {
        let a = self.s_mul(&self.s_inv(u), &self.s_inv(w));
        self.s_mul(&self.s_mul(&a, u), w)
    }

    pub fn s_pow(&self, u: &SUnit, k: i64) -> SUnit {
        let mut base = if k < 0 { self.s_inv(u) } else { u.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.s_mul(&acc, &base);
            }
            base = self.s_mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Normal form in [`Self::sbar`]: `g a^v = a^v g [g, a^v]`.
    pub fn to_sbar(&self, u: &SUnit) -> GroupElement {
        let g = &self.group;
        let h = g.mul(&u.g, &self.phi(&u.avec, &u.g));
        let mut e = u.avec.clone();
        e.extend_from_slice(h.exps());
        GroupElement::from_exps(e)
    }

    pub fn from_sbar(&self, s: &GroupElement) -> SUnit {
        let g = &self.group;
        let r = self.a_rank();
        let avec = s.exps()[..r].to_vec();
        let h = GroupElement::from_exps(s.exps()[r..].to_vec());
        let c = self.phi(&avec, &h);
        SUnit {
            g: g.mul(&h, &g.inv(&c)),
            avec,
        }
    }

    /// `G` inside [`Self::sbar`].
    pub fn embed_subgroup(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<GroupElement> = h
            .igs()
            .iter()
            .map(|x| self.to_sbar(&self.from_group(x)))
            .collect();
        self.sbar.subgroup(&gens)
    }

    /// `A / (A ∩ Z(S))` inside [`Self::sbar`].
    pub fn a_subgroup(&self) -> Subgroup {
        let gens: Vec<GroupElement> = (0..self.a_rank())
            .map(|k| self.to_sbar(&self.a_unit(k)))
            .collect();
        self.sbar.subgroup(&gens)
    }

    pub fn display(&self, u: &SUnit) -> String {
        let mut parts = Vec::new();
        if !u.g.is_identity() {
            parts.push(u.g.to_string());
        }
        for (k, &e) in u.avec.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let d = &self.gens[self.reduced[k]].delta;
            parts.push(if e == 1 {
                d.to_string()
            } else {
                format!("{d}^{e}")
            });
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

fn phi_of(
    g: &PcGroup,
    basis_action: &[Vec<GroupElement>],
    x_inv: &[Vec<u8>],
    phi_quot: &Quotient,
    v: &[u8],
    h: &GroupElement,
) -> GroupElement {
    if v.iter().all(|&e| e == 0) {
        return g.identity();
    }
    let p = g.p() as u32;
    let y = phi_quot.project(g, h);
    let n = x_inv.len();
    // h = prod x_i^{c_i} modulo Phi(G)
    let c: Vec<u32> = (0..n)
        .map(|i| {
            y.exps()
                .iter()
                .zip(x_inv)
                .map(|(&yj, row)| yj as u32 * row[i] as u32)
                .sum::<u32>()
                % p
        })
        .collect();
    let mut acc = g.identity();
    for (k, &vk) in v.iter().enumerate() {
        if vk == 0 {
            continue;
        }
        for (i, &ci) in c.iter().enumerate() {
            let e = (vk as u32 * ci) % p;
            if e != 0 {
                acc = g.mul(&acc, &g.pow(&basis_action[k][i], e as i64));
            }
        }
    }
    acc
}

fn invert(m: &[Vec<u8>], p: u8) -> Option<Vec<Vec<u8>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug: Vec<Vec<u8>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| (i == j) as u8));
            v
        })
        .collect();
    let piv = linalg::rref(&mut aug, p);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn build_sbar(
    g: &PcGroup,
    basis_action: &[Vec<GroupElement>],
    x_inv: &[Vec<u8>],
    phi_quot: &Quotient,
) -> Result<PcGroup> {
    let r = basis_action.len();
    let m = g.n_gens();
    let shift = |w: &GroupElement| -> GroupElement {
        let mut e = vec![0u8; r];
        e.extend_from_slice(w.exps());
        GroupElement::from_exps(e)
    };
    let mut powers = vec![GroupElement::from_exps(vec![0; r + m]); r];
    powers.extend((0..m).map(|i| shift(g.power_word(i))));
    let mut comms = Vec::new();
    for j in 0..m {
        for i in 0..j {
            let w = g.comm_word(j, i);
            if !w.is_identity() {
                comms.push((r + j, r + i, shift(w)));
            }
        }
        for k in 0..r {
            let mut v = vec![0u8; r];
            v[k] = 1;
            let c = phi_of(g, basis_action, x_inv, phi_quot, &v, &g.gen(j));
            if !c.is_identity() {
                comms.push((r + j, k, shift(&c)));
            }
        }
    }
    PcGroup::new(g.p(), powers, comms)
        .map_err(|e| MipError::Internal(format!("semidirect product rejected: {e}")))
}

/// Orders `p^lambda_i` of `x_i` modulo `gamma_2(G)`, after checking that
/// the `x_i gamma_2(G)` form a direct-sum basis of `G^ab`.
fn check_direct_basis(g: &PcGroup, x: &[GroupElement]) -> Result<Vec<u32>> {
    let q = g.quotient(&g.gamma(2))?;
    let qg = q.group();
    let imgs: Vec<GroupElement> = x.iter().map(|xi| q.project(g, xi)).collect();
    let lambda: Vec<u32> = imgs
        .iter()
        .map(|y| log_p(qg.element_order(y), g.p()))
        .collect();
    let total: u32 = lambda.iter().sum();
    let span = qg.subgroup(&imgs);
    if span.log_order() != qg.n_gens() || total as usize != qg.n_gens() || x.len() != g.rank() {
        return Err(MipError::precondition(
            "x does not project to a direct-sum basis of G^ab",
        ));
    }
    Ok(lambda)
}

fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// Default generator choice: the greedy minimal generating set when its
/// cosets already split `G^ab`, else a basis of `G^ab` built from elements
/// of maximal order and lifted to canonical coset representatives.
pub fn default_generators(g: &PcGroup) -> Result<Vec<GroupElement>> {
    let x = g.minimal_generators();
    if check_direct_basis(g, &x).is_ok() {
        return Ok(x);
    }
    let q = g.quotient(&g.gamma(2))?;
    let qg = q.group();
    let mut chosen: Vec<GroupElement> = Vec::new();
    let mut span = Subgroup::trivial();
    while span.log_order() < qg.n_gens() {
        let rel_order = |y: usize| -> u64 {
            let mut k = 1;
            let mut z = y;
            while !span.contains_idx(qg, z) {
                z = qg.pow_idx(z, qg.p() as i64);
                k *= qg.p();
            }
            k
        };
        let (best, o) = (0..qg.order())
            .map(|y| (y, rel_order(y)))
            .max_by_key(|&(y, o)| (o, std::cmp::Reverse(y)))
            .unwrap();
        let lift = span
            .element_indices(qg)
            .into_iter()
            .map(|h| qg.mul_idx(best, h))
            .find(|&y| qg.element_order_idx(y) == o)
            .ok_or_else(|| MipError::Internal("no lift of maximal order in G^ab".into()))?;
        chosen.push(qg.from_idx(lift));
        span = qg.subgroup(&chosen);
    }
    Ok(chosen.iter().map(|y| q.lift(g, y)).collect())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::pcgroup::PcGroup;

    /// The translated presentation of the first group of the order 5^6
    /// pair.
    pub fn g553() -> PcGroup {
        PcGroup::from_relations(
            5,
            6,
            &[vec![], vec![(5, 1)], vec![(5, 1)], vec![], vec![], vec![]],
            &[
                (1, 0, vec![(5, -1)]),
                (3, 2, vec![(4, 1)]),
                (4, 3, vec![(5, -1)]),
            ],
        )
        .unwrap()
    }

    pub fn h554() -> PcGroup {
        PcGroup::from_relations(
            5,
            6,
            &[vec![], vec![(5, 1)], vec![(5, 1)], vec![], vec![], vec![]],
            &[
                (1, 0, vec![(5, 2)]),
                (3, 2, vec![(4, 1)]),
                (4, 3, vec![(5, 2)]),
            ],
        )
        .unwrap()
    }

    /// Maximal class of order 3^4: [y,x] = z, [z,x] = w, exponent 3.
    pub fn maxclass81() -> PcGroup {
        PcGroup::from_relations(
            3,
            4,
            &[vec![], vec![], vec![], vec![]],
            &[(2, 0, vec![(3, 1)]), (1, 0, vec![(2, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn delta_sets() {
        let d = delta_index_set(3, &[1, 1]);
        let want: Vec<Vec<u32>> = vec![
            vec![0, 2],
            vec![1, 1],
            vec![1, 2],
            vec![2, 0],
            vec![2, 1],
            vec![2, 2],
        ];
        assert_eq!(d.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), want);
        assert!(delta_index_set(2, &[1]).is_empty());
        let m = SmallAlgebraModel::new(&g553()).unwrap();
        assert_eq!(m.lambda(), &[1, 1, 1, 1]);
        assert!(m.deltas().contains(&DeltaIndex(vec![0, 0, 1, 1])));
        assert!(m.deltas().contains(&DeltaIndex(vec![0, 0, 0, 2])));
        // C9 x C3: lambda (2, 1) allows delta_1 up to 8
        let c9c3 = PcGroup::from_relations(3, 3, &[vec![(1, 1)], vec![], vec![]], &[]).unwrap();
        let m = SmallAlgebraModel::new(&c9c3).unwrap();
        assert_eq!(m.lambda(), &[2, 1]);
        assert!(m.deltas().contains(&DeltaIndex(vec![8, 0])));
        assert!(!m.deltas().contains(&DeltaIndex(vec![3, 0])));
        assert_eq!(m.deltas().len(), 27 - 1 - 2 - 2);
    }

    #[test]
    fn hypothesis_failures_are_named() {
        // D16: gamma_2 = <a^2> cyclic of order 4
        let d16 = PcGroup::from_relations(
            2,
            4,
            &[vec![], vec![(2, 1)], vec![(3, 1)], vec![]],
            &[(1, 0, vec![(2, 1), (3, 1)]), (2, 0, vec![(3, 1)])],
        )
        .unwrap();
        let err = SmallAlgebraModel::new(&d16).unwrap_err();
        assert!(err.to_string().contains("gamma_2(G)^p gamma_4(G) = 1"));
        let g = g553();
        let bad = vec![g.gen(0), g.gen(1), g.gen(2)];
        let err = SmallAlgebraModel::with_generators(&g, bad).unwrap_err();
        assert!(err.to_string().contains("direct-sum basis"));
    }

    #[test]
    fn action_of_b_on_553() {
        let g = g553();
        let m = SmallAlgebraModel::new(&g).unwrap();
        let b = DeltaIndex(vec![0, 0, 0, 2]);
        let a = a_generator(&g, m.x(), &b);
        assert_eq!(a.action[2], g.gen(5));
        let u = m.s_comm(&m.from_group(&g.gen(2)), &m.from_delta(&b).unwrap());
        assert_eq!(u, m.from_group(&g.gen(5)));
        for d in m.deltas() {
            if d.weight() >= 3 {
                assert!(a_generator(&g, m.x(), d).is_central());
            }
        }
    }

    #[test]
    fn class_two_has_no_reduced_generators() {
        let g = crate::pcgroup::tests::heis(3);
        let m = SmallAlgebraModel::new(&g).unwrap();
        assert_eq!(m.a_rank(), 0);
        assert_eq!(m.sbar(), &g);
    }

    #[test]
    fn unit_arithmetic() {
        let g = g553();
        let m = SmallAlgebraModel::new(&g).unwrap();
        let (x, y) = (g.gen(0), g.gen(3));
        assert_eq!(
            m.s_mul(&m.from_group(&x), &m.from_group(&y)),
            m.from_group(&g.mul(&x, &y))
        );
        let a = m.from_delta(&DeltaIndex(vec![0, 0, 1, 1])).unwrap();
        let b = m.from_delta(&DeltaIndex(vec![0, 0, 0, 2])).unwrap();
        let ab = m.s_mul(&a, &b);
        assert!(ab.g.is_identity());
        let sum: Vec<u8> = a
            .avec
            .iter()
            .zip(&b.avec)
            .map(|(s, t)| (s + t) % 5)
            .collect();
        assert_eq!(ab.avec, sum);
        assert_eq!(m.s_comm(&a, &b), m.one());
        let u = SUnit {
            g: g.mul(&x, &g.gen(2)),
            avec: b.avec.clone(),
        };
        assert_eq!(m.s_mul(&u, &m.s_inv(&u)), m.one());
        assert_eq!(m.s_pow(&u, 25), m.one());
        assert_eq!(m.s_pow(&u, -1), m.s_inv(&u));
    }

    #[test]
    fn sbar_matches_formulas() {
        let g = maxclass81();
        let m = SmallAlgebraModel::new(&g).unwrap();
        assert!(m.a_rank() > 0);
        let s = m.sbar();
        assert_eq!(s.order(), g.order() * 3usize.pow(m.a_rank() as u32));
        for a in 0..s.order() {
            let u = m.from_sbar(&s.from_idx(a));
            assert_eq!(m.to_sbar(&u), s.from_idx(a));
        }
        for a in (0..s.order()).step_by(7) {
            for b in (0..s.order()).step_by(11) {
                let (u, w) = (m.from_sbar(&s.from_idx(a)), m.from_sbar(&s.from_idx(b)));
                assert_eq!(m.to_sbar(&m.s_mul(&u, &w)), s.from_idx(s.mul_idx(a, b)));
            }
        }
    }

    #[test]
    fn reduction_independent_of_order() {
        let g = g553();
        let m = SmallAlgebraModel::new(&g).unwrap();
        let gens = m.a_generators().to_vec();
        let span = |gs: &[AGenerator]| -> Vec<Vec<u8>> {
            let idx = reduce_a_modulo_center(&g, m.gamma3(), gs).unwrap();
            idx.iter()
                .map(|&k| action_vector(&g, m.gamma3(), &gs[k].action).unwrap())
                .collect()
        };
        let base = span(&gens);
        let mut rev = gens.clone();
        rev.reverse();
        let other = span(&rev);
        assert_eq!(base.len(), other.len());
        let mut both = base.clone();
        both.extend(other);
        assert_eq!(linalg::rank(&both, 5), base.len());
    }

    #[test]
    fn non_split_abelianization_gets_a_basis() {
        // C4 x C2 with g1 = ba, g2 = a, g3 = a^2: the greedy choice
        // (g1, g2) has two elements of order 4 and does not split.
        let g = PcGroup::from_relations(2, 3, &[vec![(2, 1)], vec![(2, 1)], vec![]], &[]).unwrap();
        assert!(check_direct_basis(&g, &g.minimal_generators()).is_err());
        let x = default_generators(&g).unwrap();
        let lambda = check_direct_basis(&g, &x).unwrap();
        let mut l = lambda.clone();
        l.sort();
        assert_eq!(l, vec![1, 2]);
    }
}
