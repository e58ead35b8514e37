//! Hypothesis checkers for the families on which the small group algebra
//! settles the isomorphism problem, and the subgroup `K_G`.

use serde::Serialize;

use crate::error::{MipError, Result};
use crate::linalg;
use crate::pcgroup::{GroupElement, PcGroup, Subgroup};

/// `K_G` together with the data of the exact sequence
/// `1 -> ∧²(K/Z_2) -> ∧²(G/Z_2) -> gamma_2/Gamma -> 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KgData {
    pub k: Subgroup,
    pub z2: Subgroup,
    /// `log_p |gamma_2 : Gamma|`.
    pub log_gamma2_over_gamma_cap: usize,
    /// `log_p |G : K_G|`.
    pub log_index: usize,
    /// `dim ∧²W` for `W = K_G / Z_2(G)`.
    pub dim_wedge_w: usize,
    /// Dimension of the kernel of `∧²U -> gamma_2/Gamma`, computed directly.
    pub dim_kernel: usize,
}

impl KgData {
    pub fn exact(&self) -> bool {
        self.dim_wedge_w == self.dim_kernel && self.dim_kernel + self.log_gamma2_over_gamma_cap == 3
    }
}

/// The named hypotheses of the `K_G` construction that fail.
fn kg_failures(g: &PcGroup) -> Vec<String> {
    let mut bad = Vec::new();
    let c = g.nilpotency_class();
    if c != 3 {
        bad.push(format!("class is {c}, not 3"));
    }
    let g2 = g.gamma(2);
    if !(g2.is_abelian(g) && g.agemo_of(&g2, 1).is_trivial()) {
        bad.push("gamma_2(G) is not elementary abelian".into());
    }
    let n = g.n_gens();
    let phi = n - g.frattini().log_order();
    if phi != 3 {
        bad.push(format!("|G : Phi(G)| = p^{phi}, not p^3"));
    }
    let z2 = n - g.upper_central(2).log_order();
    if z2 != 3 {
        bad.push(format!("|G : Z_2(G)| = p^{z2}, not p^3"));
    }
    bad
}

pub fn compute_k_g(g: &PcGroup) -> Result<KgData> {
    let bad = kg_failures(g);
    if !bad.is_empty() {
        return Err(MipError::precondition(bad.join("; ")));
    }
    let p = g.p() as u8;
    let z2 = g.upper_central(2);
    // Phi(G) = Z_2(G) here, so U = G/Z_2(G) is elementary abelian of rank 3
    let u = g.quotient(&z2)?;
    let lifts: Vec<GroupElement> = (0..3).map(|i| u.lift(g, &u.group().gen(i))).collect();

    let gamma = g.gamma_cap();
    let v = g.quotient(&gamma)?;
    let g2_img = v.image(g, &g.gamma(2));
    let dim_v = g2_img.log_order();
    let coords = |x: &GroupElement| -> Vec<u8> {
        g2_img
            .sift(v.group(), &v.project(g, x))
            .expect("commutator lies in gamma_2")
    };
    // images of e0∧e1, e0∧e2, e1∧e2
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let rows: Vec<Vec<u8>> = pairs
        .iter()
        .map(|&(i, j)| coords(&g.comm(&lifts[i], &lifts[j])))
        .collect();
    let kernel = linalg::left_kernel(&rows, p);
    let (k, dim_wedge_w) = match (dim_v, kernel.len()) {
        (3, 0) => (z2.clone(), 0),
        (2, 1) => {
            let w = &kernel[0];
            // the plane W with ∧²W = <w> is the kernel of u -> u∧w
            let f = [w[2], (p - w[1]) % p, w[0]];
            let plane = linalg::left_kernel(&f.iter().map(|&c| vec![c]).collect::<Vec<_>>(), p);
            let mut gens = z2.igs().to_vec();
            gens.extend(plane.iter().map(|b| lift_vec(g, &lifts, b)));
            let k = g.subgroup(&gens);
            // ∧²W spans the kernel: the commutator of the plane basis
            // lands in Gamma
            let x = lift_vec(g, &lifts, &plane[0]);
            let y = lift_vec(g, &lifts, &plane[1]);
            let in_kernel = gamma.contains(g, &g.comm(&x, &y));
            (k, usize::from(in_kernel))
        }
        (d, _) => {
            return Err(MipError::Internal(format!(
                "|gamma_2 : Gamma| = p^{d} with a {}-dimensional kernel",
                kernel.len()
            )))
        }
    };
    let data = KgData {
        log_index: g.n_gens() - k.log_order(),
        k,
        z2,
        log_gamma2_over_gamma_cap: dim_v,
        dim_wedge_w,
        dim_kernel: kernel.len(),
    };
    if !data.exact() || !data.z2.is_subgroup_of(g, &data.k) || !data.k.is_normal(g) {
        return Err(MipError::Internal(format!(
            "K_G sequence is not exact: {data:?}"
        )));
    }
    Ok(data)
}

fn lift_vec(g: &PcGroup, lifts: &[GroupElement], v: &[u8]) -> GroupElement {
    lifts
        .iter()
        .zip(v)
        .fold(g.identity(), |e, (l, &c)| g.mul(&e, &g.pow(l, c as i64)))
}

fn gamma2p_gamma_i_trivial(g: &PcGroup, i: usize) -> bool {
    g.agemo_of(&g.gamma(2), 1).is_trivial() && g.gamma(i).is_trivial()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbelianCentralizerVerdict {
    pub p_odd: bool,
    pub gamma2p_gamma4_trivial: bool,
    /// `C_G(gamma_2(G))`.
    pub centralizer: Subgroup,
    pub centralizer_log_index: usize,
    pub centralizer_abelian: bool,
    pub holds: bool,
}

/// `p` odd, `gamma_2^p gamma_4 = 1` and `C_G(gamma_2)` maximal and abelian.
pub fn abelian_centralizer_check(g: &PcGroup) -> AbelianCentralizerVerdict {
    let p_odd = g.p() % 2 == 1;
    let gg = gamma2p_gamma_i_trivial(g, 4);
    let c = g.centralizer(&g.gamma(2));
    let idx = g.n_gens() - c.log_order();
    let ab = c.is_abelian(g);
    AbelianCentralizerVerdict {
        p_odd,
        gamma2p_gamma4_trivial: gg,
        holds: p_odd && gg && idx == 1 && ab,
        centralizer: c,
        centralizer_log_index: idx,
        centralizer_abelian: ab,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KgVerdict {
    pub p_odd: bool,
    pub gamma2p_gamma4_trivial: bool,
    pub frattini_log_index: usize,
    pub z2_log_index: usize,
    pub class: usize,
    pub k_g: Option<KgData>,
    /// `[[K_G, G], G] ⊆ [K_G, gamma_2(G)]`, checked in class 3.
    pub k_condition: Option<bool>,
    pub holds: bool,
}

/// `p` odd, `gamma_2^p gamma_4 = 1`, `|G:Phi(G)| = |G:Z_2(G)| = p^3` and,
/// in class 3, `[[K_G, G], G] ⊆ [K_G, gamma_2(G)]`.
pub fn kg_check(g: &PcGroup) -> KgVerdict {
    let p_odd = g.p() % 2 == 1;
    let gg = gamma2p_gamma_i_trivial(g, 4);
    let n = g.n_gens();
    let fi = n - g.frattini().log_order();
    let zi = n - g.upper_central(2).log_order();
    let class = g.nilpotency_class();
    let k_g = compute_k_g(g).ok();
    let k_condition = k_g.as_ref().map(|d| k_condition(g, &d.k));
    let base = p_odd && gg && fi == 3 && zi == 3;
    KgVerdict {
        p_odd,
        gamma2p_gamma4_trivial: gg,
        frattini_log_index: fi,
        z2_log_index: zi,
        class,
        holds: base && (class != 3 || k_condition == Some(true)),
        k_g,
        k_condition,
    }
}

fn k_condition(g: &PcGroup, k: &Subgroup) -> bool {
    let w = g.whole();
    let lhs = g.comm_subgroup(&g.comm_subgroup(k, &w), &w);
    lhs.is_subgroup_of(g, &g.comm_subgroup(k, &g.gamma(2)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallOrderVerdicts {
    /// `K_G` hypotheses with `|gamma_2 : Gamma| = p^3` or `|gamma_3| = p`.
    pub gamma3_order_p: bool,
    /// `|G| = p^6`, `gamma_2^p gamma_4 = 1`, `|G : Z_2| = p^3`.
    pub order_p6: bool,
    /// `|G| = p^7`, `gamma_2^p gamma_4 = 1`, `|G:Z_2| = |G:Phi| = p^3` and
    /// `|gamma_3| = p` or, in class 3, `[K_G, gamma_2] = gamma_3`.
    pub order_p7: bool,
}

pub fn small_order_checks(g: &PcGroup) -> SmallOrderVerdicts {
    let gg = gamma2p_gamma_i_trivial(g, 4);
    let n = g.n_gens();
    let fi = n - g.frattini().log_order();
    let zi = n - g.upper_central(2).log_order();
    let g3 = g.gamma(3).log_order();
    let k_g = compute_k_g(g).ok();
    let full_index = k_g
        .as_ref()
        .is_some_and(|d| d.log_gamma2_over_gamma_cap == 3);
    let gamma3_order_p = g.p() % 2 == 1 && gg && fi == 3 && zi == 3 && (full_index || g3 == 1);
    let order_p6 = n == 6 && gg && zi == 3;
    let k_gamma2 = || {
        g.nilpotency_class() != 3
            || k_g
                .as_ref()
                .is_some_and(|d| g.comm_subgroup(&d.k, &g.gamma(2)) == g.gamma(3))
    };
    let order_p7 = n == 7 && gg && zi == 3 && fi == 3 && (g3 == 1 || k_gamma2());
    SmallOrderVerdicts {
        gamma3_order_p,
        order_p6,
        order_p7,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SettledFlags {
    /// `gamma_2^p gamma_3 = 1`: settled by the Sandling quotient.
    pub by_sandling: bool,
    /// `C_G(gamma_2)` is maximal and abelian, see [`abelian_centralizer_check`].
    pub by_abelian_centralizer: bool,
    /// The `K_G` criterion applies.
    pub by_kg: bool,
    pub small_order: SmallOrderVerdicts,
    /// Either criterion applies.
    pub mip_settled: bool,
}

pub fn settled_flags(g: &PcGroup) -> SettledFlags {
    let by_abelian_centralizer = abelian_centralizer_check(g).holds;
    let by_kg = kg_check(g).holds;
    SettledFlags {
        by_sandling: gamma2p_gamma_i_trivial(g, 3),
        by_abelian_centralizer,
        by_kg,
        small_order: small_order_checks(g),
        mip_settled: by_abelian_centralizer || by_kg,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::tests::{elem_ab, heis};
    use crate::smallalg::tests::{g553, h554, maxclass81};

    /// Class 3 groups with `G/Phi` of rank 3 and free generators
    /// `x1, x2, x3 = g0, g1, g2` followed by commutators of weight 2 and 3.
    fn class3(p: u64, n: usize, comms: &[(usize, usize, usize)]) -> PcGroup {
        let comms: Vec<_> = comms
            .iter()
            .map(|&(j, i, k)| (j, i, vec![(k, 1)]))
            .collect();
        PcGroup::from_relations(p, n, &vec![vec![]; n], &comms).unwrap()
    }

    /// `|gamma_2 : Gamma| = p^3`: each `c_ij` has its own central commutator.
    fn full_rank() -> PcGroup {
        class3(
            3,
            9,
            &[
                (1, 0, 3),
                (2, 0, 4),
                (2, 1, 5),
                (3, 0, 6),
                (4, 2, 7),
                (5, 1, 8),
            ],
        )
    }

    /// Order `p^6`, `[x3, x2] = 1`, `gamma_3 = <z>`.
    fn order_p6(p: u64) -> PcGroup {
        class3(p, 6, &[(1, 0, 3), (2, 0, 4), (3, 0, 5), (4, 2, 5)])
    }

    /// Order `p^7`, `[x3, x2]` central, `gamma_3 = <z>`.
    fn order_p7(p: u64) -> PcGroup {
        class3(
            p,
            7,
            &[(1, 0, 3), (2, 0, 4), (2, 1, 5), (3, 0, 6), (4, 2, 6)],
        )
    }

    /// `K_G = <x2, x3, Phi>` centralizes `gamma_2`, while `[[K_G, G], G] != 1`.
    fn k_condition_fails() -> PcGroup {
        class3(
            3,
            8,
            &[(1, 0, 3), (2, 0, 4), (2, 1, 5), (3, 0, 6), (4, 0, 7)],
        )
    }

    #[test]
    fn k_g_cases() {
        let g = full_rank();
        let d = compute_k_g(&g).unwrap();
        assert_eq!(d.log_gamma2_over_gamma_cap, 3);
        assert_eq!(d.k, d.z2);
        assert!(d.exact());

        for g in [order_p6(5), order_p7(5), k_condition_fails()] {
            let d = compute_k_g(&g).unwrap();
            assert_eq!(d.log_gamma2_over_gamma_cap, 2);
            assert_eq!(d.log_index, 1);
            assert!(d.z2.is_subgroup_of(&g, &d.k));
            assert!(d.k.contains(&g, &g.gen(1)) && d.k.contains(&g, &g.gen(2)));
            assert!(!d.k.contains(&g, &g.gen(0)));
        }
    }

    #[test]
    fn k_g_preconditions() {
        assert!(matches!(
            compute_k_g(&heis(3)),
            Err(MipError::Precondition(_))
        ));
        let e = compute_k_g(&g553()).unwrap_err().to_string();
        assert!(e.contains("Phi"), "{e}");
    }

    #[test]
    fn settling_criteria() {
        // extraspecial: C_G(gamma_2) = G is not maximal
        let v = abelian_centralizer_check(&heis(5));
        assert!(!v.holds && v.centralizer_log_index == 0);
        assert!(settled_flags(&heis(5)).by_sandling);

        let f = settled_flags(&g553());
        assert!(!f.by_kg && !f.by_sandling);
        assert_eq!(kg_check(&g553()).frattini_log_index, 4);
        assert!(!settled_flags(&h554()).by_kg);

        let f = settled_flags(&elem_ab(3, 3));
        assert!(f.by_sandling && !f.by_abelian_centralizer && !f.by_kg);

        // maximal class 3^4: C_G(gamma_2) = <y, z, w> is maximal abelian
        assert!(abelian_centralizer_check(&maxclass81()).holds);

        for g in [full_rank(), order_p6(5), order_p7(5)] {
            let v = kg_check(&g);
            assert!(v.holds, "{v:?}");
            assert_eq!(v.k_condition, Some(true));
            assert!(small_order_checks(&g).gamma3_order_p);
        }
        assert!(small_order_checks(&order_p6(5)).order_p6);
        assert!(small_order_checks(&order_p7(5)).order_p7);
        let v = kg_check(&k_condition_fails());
        assert_eq!(v.k_condition, Some(false));
        assert!(!v.holds);
        assert!(!small_order_checks(&k_condition_fails()).gamma3_order_p);
    }
}
