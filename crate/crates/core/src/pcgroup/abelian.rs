//! Abelian invariants from the ranks of successive agemos.

use crate::error::{MipError, Result};

use super::{PcGroup, Subgroup};

/// Exponents `e_1 >= e_2 >= ...` with `A = C_{p^{e_1}} x C_{p^{e_2}} x ...`.
pub fn abelian_invariants_of_subgroup(g: &PcGroup, a: &Subgroup) -> Result<Vec<u32>> {
    if !a.is_abelian(g) {
        return Err(MipError::precondition("subgroup is not abelian"));
    }
    // |A^{p^k} : A^{p^{k+1}}| = p^{#factors of exponent > k}
    let mut logs = vec![a.log_order()];
    let mut cur = a.clone();
    while !cur.is_trivial() {
        cur = g.agemo_of(&cur, 1);
        logs.push(cur.log_order());
    }
    let counts: Vec<usize> = logs.windows(2).map(|w| w[0] - w[1]).collect();
    let mut out = Vec::new();
    for k in (0..counts.len()).rev() {
        let next = counts.get(k + 1).copied().unwrap_or(0);
        for _ in 0..counts[k] - next {
            out.push(k as u32 + 1);
        }
    }
    Ok(out)
}

impl PcGroup {
    pub fn abelian_invariants(&self) -> Result<Vec<u32>> {
        abelian_invariants_of_subgroup(self, &self.whole())
    }

    /// Invariants of `G / gamma_2(G)`.
    pub fn abelianization_type(&self) -> Vec<u32> {
        let q = self
            .quotient(&self.gamma(2))
            .expect("derived subgroup is normal");
        q.group()
            .abelian_invariants()
            .expect("abelianization is abelian")
    }
}
