//! Budgeted isomorphism search between small p-groups.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{MipError, Result};

use super::{GroupElement, PcGroup};

/// A verified isomorphism, recorded by the images of the pc generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub images: Vec<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum IsoVerdict {
    Isomorphic { map: Isomorphism },
    NonIsomorphic { reason: String },
    Unknown { nodes: u64 },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }

    pub fn is_non_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::NonIsomorphic { .. })
    }
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Per-element data preserved by isomorphisms.
fn element_keys(g: &PcGroup) -> Result<Vec<(u64, usize, usize)>> {
    let n = g.order();
    let mut class_size = vec![0usize; n];
    for c in g.conjugacy_classes()? {
        for &x in &c.members {
            class_size[x] = c.size;
        }
    }
    // deepest lower central term containing x
    let lcs = g.lower_central_series();
    let mut keys = Vec::with_capacity(n);
    for x in 0..n {
        let depth = lcs.iter().rposition(|s| s.contains_idx(g, x)).unwrap_or(0);
        keys.push((g.element_order_idx(x), class_size[x], depth));
    }
    Ok(keys)
}

fn histogram(keys: &[(u64, usize, usize)]) -> BTreeMap<(u64, usize, usize), usize> {
    let mut h = BTreeMap::new();
    for &k in keys {
        *h.entry(k).or_insert(0) += 1;
    }
    h
}

struct Search<'a> {
    g: &'a PcGroup,
    h: &'a PcGroup,
    xs: Vec<usize>,
    cands: Vec<Vec<usize>>,
    kg: Vec<(u64, usize, usize)>,
    kh: Vec<(u64, usize, usize)>,
    phi_h: super::Subgroup,
    budget: u64,
    nodes: u64,
    verify_cost: u64,
}

impl<'a> Search<'a> {
    fn compatible(&self, chosen: &[usize], y: usize) -> bool {
        let k = chosen.len();
        let x = self.xs[k];
        for (a, &ya) in chosen.iter().enumerate() {
            let xa = self.xs[a];
            let pairs = [
                (self.g.comm_idx(x, xa), self.h.comm_idx(y, ya)),
                (self.g.mul_idx(x, xa), self.h.mul_idx(y, ya)),
                (
                    self.g.mul_idx(x, self.g.inv_idx(xa)),
                    self.h.mul_idx(y, self.h.inv_idx(ya)),
                ),
            ];
            if pairs.iter().any(|&(u, v)| self.kg[u] != self.kh[v]) {
                return false;
            }
        }
        // images must stay independent modulo Phi(H)
        let mut gens: Vec<GroupElement> = self.phi_h.igs().to_vec();
        gens.extend(chosen.iter().chain([&y]).map(|&c| self.h.from_idx(c)));
        self.h.subgroup(&gens).log_order() == self.phi_h.log_order() + k + 1
    }

    /// Extends `x_k -> y_k` to a map on `G` along the Cayley graph and checks
    /// it is a bijective homomorphism.
    fn verify(&self, ys: &[usize]) -> Option<Vec<usize>> {
        let n = self.g.order();
        let mut img = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        img[0] = 0;
        hit[0] = true;
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            for (k, &x) in self.xs.iter().enumerate() {
                let v = self.g.mul_idx(u, x);
                let w = self.h.mul_idx(img[u], ys[k]);
                if img[v] == usize::MAX {
                    if hit[w] {
                        return None;
                    }
                    img[v] = w;
                    hit[w] = true;
                    queue.push(v);
                } else if img[v] != w {
                    return None;
                }
            }
        }
        if queue.len() == n {
            Some(img)
        } else {
            None
        }
    }

    fn run(&mut self, chosen: &mut Vec<usize>) -> Option<Option<Vec<usize>>> {
        if chosen.len() == self.xs.len() {
            self.nodes += self.verify_cost;
            return Some(self.verify(chosen));
        }
        let k = chosen.len();
        for ci in 0..self.cands[k].len() {
            let y = self.cands[k][ci];
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            if !self.compatible(chosen, y) {
                continue;
            }
            chosen.push(y);
            let r = self.run(chosen);
            chosen.pop();
            match r {
                None => return None,
                Some(Some(map)) => return Some(Some(map)),
                Some(None) => {}
            }
        }
        Some(None)
    }
}

/// Searches for an isomorphism `G -> H`. A returned map is always verified
/// on the whole group; `NonIsomorphic` is returned only after an invariant
/// mismatch or an exhausted search.
pub fn iso_search(g: &PcGroup, h: &PcGroup, budget: u64) -> Result<IsoVerdict> {
    if g.p() != h.p() || g.order() != h.order() {
        return Err(MipError::precondition("groups have different orders"));
    }
    let non = |r: &str| {
        Ok(IsoVerdict::NonIsomorphic {
            reason: r.to_string(),
        })
    };
    if g.rank() != h.rank() {
        return non("minimal generator counts differ");
    }
    let lg: Vec<usize> = g
        .lower_central_series()
        .iter()
        .map(|s| s.log_order())
        .collect();
    let lh: Vec<usize> = h
        .lower_central_series()
        .iter()
        .map(|s| s.log_order())
        .collect();
    if lg != lh {
        return non("lower central series differ");
    }
    let kg = element_keys(g)?;
    let kh = element_keys(h)?;
    if histogram(&kg) != histogram(&kh) {
        return non("element statistics differ");
    }
    let xs: Vec<usize> = g.minimal_generators().iter().map(|x| g.idx(x)).collect();
    let phi_h = h.frattini();
    let cands: Vec<Vec<usize>> = xs
        .iter()
        .map(|&x| {
            // same exponent vector first, then the rest in index order
            let same = if x < h.order() && kh[x] == kg[x] {
                Some(x)
            } else {
                None
            };
            same.into_iter()
                .chain((0..h.order()).filter(|&y| Some(y) != same && kh[y] == kg[x]))
                .filter(|&y| !phi_h.contains_idx(h, y))
                .collect()
        })
        .collect();
    let mut s = Search {
        g,
        h,
        xs,
        cands,
        kg,
        kh,
        phi_h,
        budget,
        nodes: 0,
        verify_cost: (g.order() as u64 / 256).max(1),
    };
    match s.run(&mut Vec::new()) {
        None => Ok(IsoVerdict::Unknown { nodes: s.nodes }),
        Some(None) => non("exhaustive search found no isomorphism"),
        Some(Some(img)) => {
            let images = (0..g.n_gens())
                .map(|i| h.from_idx(img[g.idx(&g.gen(i))]))
                .collect();
            Ok(IsoVerdict::Isomorphic {
                map: Isomorphism { images },
            })
        }
    }
}

impl Isomorphism {
    /// Independent check that the recorded images satisfy every defining
    /// relation of `G` and generate `H`.
    pub fn check(&self, g: &PcGroup, h: &PcGroup) -> bool {
        let im = |w: &GroupElement| -> GroupElement {
            let mut acc = h.identity();
            for (i, &e) in w.exps().iter().enumerate() {
                acc = h.mul(&acc, &h.pow(&self.images[i], e as i64));
            }
            acc
        };
        let m = g.n_gens();
        for i in 0..m {
            if h.pow(&self.images[i], g.p() as i64) != im(g.power_word(i)) {
                return false;
            }
            for j in i + 1..m {
                if h.comm(&self.images[j], &self.images[i]) != im(g.comm_word(j, i)) {
                    return false;
                }
            }
        }
        h.subgroup(&self.images).log_order() == h.n_gens()
    }
}
