//! Conjugacy classes by orbit enumeration.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{MipError, Result};

use super::{GroupElement, PcGroup, Subgroup};

/// Largest group order for which classes are enumerated.
pub const CLASS_LIMIT: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub rep: GroupElement,
    pub size: usize,
    /// Members as group indices.
    #[serde(skip)]
    pub members: Vec<usize>,
    /// Centralizer of the representative, from Schreier generators.
    #[serde(skip)]
    pub centralizer: Subgroup,
}

impl PcGroup {
    pub fn conjugacy_classes(&self) -> Result<Vec<ConjugacyClass>> {
        let n = self.order();
        if n > CLASS_LIMIT {
            return Err(MipError::resource(
                "conjugacy classes",
                n as u64,
                CLASS_LIMIT as u64,
            ));
        }
        let gens: Vec<usize> = (0..self.n_gens()).map(|j| self.idx(&self.gen(j))).collect();
        let gens_inv: Vec<usize> = gens.iter().map(|&s| self.inv_idx(s)).collect();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for r in 0..n {
            if seen[r] {
                continue;
            }
            // transversal: t_y with y = r^{t_y}
            let mut trans: HashMap<usize, usize> = HashMap::new();
            trans.insert(r, 0);
            let mut orbit = vec![r];
            seen[r] = true;
            let mut schreier = Vec::new();
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                let ty = trans[&y];
                for (k, &s) in gens.iter().enumerate() {
                    let z = self.mul_idx(gens_inv[k], self.mul_idx(y, s));
                    let tys = self.mul_idx(ty, s);
                    match trans.get(&z) {
                        Some(&tz) => {
                            let sg = self.mul_idx(tys, self.inv_idx(tz));
                            if sg != 0 {
                                schreier.push(self.from_idx(sg));
                            }
                        }
                        None => {
                            trans.insert(z, tys);
                            seen[z] = true;
                            orbit.push(z);
                        }
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(ConjugacyClass {
                rep: self.from_idx(r),
                size: orbit.len(),
                members: orbit,
                centralizer: self.subgroup(&schreier),
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{d8, elem_ab, heis, q8};

    #[test]
    fn class_sizes() {
        let mut s: Vec<usize> = d8()
            .conjugacy_classes()
            .unwrap()
            .iter()
            .map(|c| c.size)
            .collect();
        s.sort();
        assert_eq!(s, vec![1, 1, 2, 2, 2]);
        assert_eq!(elem_ab(2, 3).conjugacy_classes().unwrap().len(), 8);
        let h = heis(3).conjugacy_classes().unwrap();
        assert_eq!(h.len(), 11);
        assert_eq!(h.iter().filter(|c| c.size == 1).count(), 3);
        assert_eq!(h.iter().filter(|c| c.size == 3).count(), 8);
    }

    #[test]
    fn schreier_centralizer_matches_enumeration() {
        for g in [d8(), q8(), heis(3), heis(5)] {
            let cls = g.conjugacy_classes().unwrap();
            assert_eq!(cls.iter().map(|c| c.size).sum::<usize>(), g.order());
            for c in &cls {
                assert_eq!(
                    c.centralizer,
                    g.centralizer_of(std::slice::from_ref(&c.rep))
                );
                assert_eq!(c.size * c.centralizer.order(&g), g.order());
            }
        }
    }
}
