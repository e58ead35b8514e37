//! Dimension subgroups, Jennings tuples and bases, and `Jen(G)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::pcgroup::{GroupElement, PcGroup, Pcgs, Subgroup};

use super::{dense_rank, AlgebraElement, AugmentationTower};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `D_n = [G, D_{n-1}] D_{ceil(n/p)}^p`.
    Jennings,
    /// `D_n = prod_{i p^j >= n} gamma_i^{p^j}`.
    Product,
    /// `D_n = G ∩ (1 + I^n)` in the group algebra.
    Brute,
}

/// `D_1, D_2, ...` up to and including the first trivial term.
pub fn dimension_series(g: &PcGroup, method: Method) -> Result<Vec<Subgroup>> {
    match method {
        Method::Jennings => Ok(series_recursive(g)),
        Method::Product => Ok(series_product(g)),
        Method::Brute => {
            let tower = AugmentationTower::new(g)?;
            let mut out = Vec::new();
            for n in 1.. {
                let d = tower.dimension_subgroup(g, n);
                let done = d.is_trivial();
                out.push(d);
                if done {
                    break;
                }
            }
            Ok(out)
        }
    }
}

pub fn dimension_subgroup(g: &PcGroup, n: usize, method: Method) -> Result<Subgroup> {
    let s = dimension_series(g, method)?;
    Ok(s.get(n.max(1) - 1)
        .cloned()
        .unwrap_or_else(Subgroup::trivial))
}

fn series_recursive(g: &PcGroup) -> Vec<Subgroup> {
    let p = g.p() as usize;
    let whole = g.whole();
    let mut d = vec![whole.clone()];
    while !d.last().unwrap().is_trivial() {
        let n = d.len() + 1;
        let c = g.comm_subgroup(&whole, d.last().unwrap());
        let pw = g.agemo_of(&d[n.div_ceil(p) - 1], 1);
        d.push(g.product(&c, &pw));
    }
    d
}

fn series_product(g: &PcGroup) -> Vec<Subgroup> {
    let p = g.p() as usize;
    let lcs = g.lower_central_series();
    // powers[i][j] = gamma_{i+1}^{p^j}, listed until trivial
    let powers: Vec<Vec<Subgroup>> = lcs
        .iter()
        .map(|gi| {
            let mut v = vec![gi.clone()];
            let mut j = 1;
            while !v.last().unwrap().is_trivial() {
                v.push(g.agemo_of(gi, j));
                j += 1;
            }
            v
        })
        .collect();
    let mut out = Vec::new();
    for n in 1.. {
        let mut gens: Vec<GroupElement> = Vec::new();
        for (i, row) in powers.iter().enumerate() {
            for (j, s) in row.iter().enumerate() {
                if (i + 1) * p.pow(j as u32) >= n {
                    gens.extend(s.igs().iter().cloned());
                }
            }
        }
        let d = g.subgroup(&gens);
        let done = d.is_trivial();
        out.push(d);
        if done {
            break;
        }
    }
    out
}

/// Dimension subgroups together with a Jennings tuple.
#[derive(Clone, Debug)]
pub struct JenningsData {
    p: u8,
    /// `D_1, ..., D_{t+1} = 1`.
    series: Vec<Subgroup>,
    dims: Vec<usize>,
    tuple: Vec<GroupElement>,
    weights: Vec<usize>,
    pcgs: Pcgs,
}

impl JenningsData {
    pub fn new(g: &PcGroup) -> Self {
        let series = series_recursive(g);
        let t = series.len() - 1;
        let dims: Vec<usize> = (0..t)
            .map(|i| series[i].log_order() - series[i + 1].log_order())
            .collect();
        let mut tuple: Vec<GroupElement> = Vec::new();
        let mut weights = Vec::new();
        for n in 1..=t {
            let dn = &series[n - 1];
            let mut span = series[n].clone();
            let mut block = Vec::new();
            let consider = |x: GroupElement, span: &mut Subgroup, block: &mut Vec<GroupElement>| {
                if block.len() < dims[n - 1] && dn.contains(g, &x) && !span.contains(g, &x) {
                    let gens: Vec<GroupElement> =
                        span.igs().iter().cloned().chain([x.clone()]).collect();
                    *span = g.subgroup(&gens);
                    block.push(x);
                }
            };
            // powers of earlier entries first
            for s in &tuple {
                let mut x = g.pow(s, g.p() as i64);
                while !x.is_identity() {
                    consider(x.clone(), &mut span, &mut block);
                    x = g.pow(&x, g.p() as i64);
                }
            }
            for y in dn.igs() {
                consider(y.clone(), &mut span, &mut block);
            }
            debug_assert_eq!(block.len(), dims[n - 1]);
            weights.extend(std::iter::repeat_n(n, block.len()));
            tuple.extend(block);
        }
        let pcgs = Pcgs::new(g, tuple.clone()).expect("a Jennings tuple is a pcgs");
        JenningsData {
            p: g.p8(),
            series,
            dims,
            tuple,
            weights,
            pcgs,
        }
    }

    /// `d_1, ..., d_t`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Least `t` with `D_{t+1} = 1`.
    pub fn t(&self) -> usize {
        self.dims.len()
    }

    pub fn series(&self) -> &[Subgroup] {
        &self.series
    }

    /// `D_n`, trivial beyond `t`.
    pub fn dimension_subgroup(&self, n: usize) -> Subgroup {
        self.series
            .get(n.max(1) - 1)
            .cloned()
            .unwrap_or_else(Subgroup::trivial)
    }

    pub fn tuple(&self) -> &[GroupElement] {
        &self.tuple
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn pcgs(&self) -> &Pcgs {
        &self.pcgs
    }

    /// Exponents of `x` with respect to the tuple.
    pub fn exponents(&self, g: &PcGroup, x: &GroupElement) -> Vec<u8> {
        self.pcgs.exponents(g, x).expect("tuple spans G")
    }

    /// `wt(g)`: largest `n` with `g` in `D_n`; `None` for the identity.
    pub fn weight_of_group_element(&self, g: &PcGroup, x: &GroupElement) -> Option<usize> {
        if x.is_identity() {
            return None;
        }
        Some(self.series.iter().rposition(|d| d.contains(g, x)).unwrap() + 1)
    }

    pub fn monomial_weight(&self, alpha: &[u8]) -> usize {
        alpha
            .iter()
            .zip(&self.weights)
            .map(|(&a, &w)| a as usize * w)
            .sum()
    }

    /// All exponent vectors of nonconstant Jennings monomials.
    pub fn monomials(&self) -> impl Iterator<Item = (Vec<u8>, usize)> + '_ {
        let m = self.tuple.len();
        let p = self.p as usize;
        let total = p.pow(m as u32);
        (1..total).map(move |mut x| {
            let mut a = vec![0u8; m];
            for i in (0..m).rev() {
                a[i] = (x % p) as u8;
                x /= p;
            }
            let w = self.monomial_weight(&a);
            (a, w)
        })
    }

    /// Number of monomials of weight exactly `n`, for `n = 0, 1, ...`.
    pub fn monomial_weight_counts(&self) -> Vec<usize> {
        let max: usize = self.weights.iter().map(|w| w * (self.p as usize - 1)).sum();
        let mut c = vec![0usize; max + 1];
        c[0] = 1;
        // generating function prod_i (1 + x^{w_i} + ... + x^{(p-1) w_i})
        for &w in &self.weights {
            let mut next = vec![0usize; max + 1];
            for (k, &v) in c.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                for a in 0..self.p as usize {
                    if k + a * w <= max {
                        next[k + a * w] += v;
                    }
                }
            }
            c = next;
        }
        c
    }

    /// The monomial `prod bar(g_i)^{alpha_i}` as an element of `kG`.
    pub fn monomial_element(&self, g: &PcGroup, alpha: &[u8]) -> AlgebraElement {
        let p = self.p;
        let mut acc = AlgebraElement::one();
        for (s, &a) in self.tuple.iter().zip(alpha) {
            let b = AlgebraElement::bar(g.idx(s), p);
            for _ in 0..a {
                acc = acc.mul(g, &b);
            }
        }
        acc
    }

    fn encode(&self, alpha: &[u8]) -> u32 {
        alpha
            .iter()
            .fold(0u32, |acc, &a| acc * self.p as u32 + a as u32)
    }

    fn decode(&self, mut x: u32) -> Vec<u8> {
        let m = self.tuple.len();
        let mut a = vec![0u8; m];
        for i in (0..m).rev() {
            a[i] = (x % self.p as u32) as u8;
            x /= self.p as u32;
        }
        a
    }

    /// Coordinates of an algebra element in the Jennings basis (with `1`),
    /// using `g = prod (1 + bar(g_i))^{alpha_i}`.
    pub fn to_monomial_coords(&self, g: &PcGroup, x: &AlgebraElement) -> BTreeMap<Vec<u8>, u8> {
        let p = self.p as u32;
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for &(gi, c) in x.terms() {
            let alpha = self.exponents(g, &g.from_idx(gi as usize));
            let mut beta = vec![0u8; alpha.len()];
            loop {
                let coef = alpha
                    .iter()
                    .zip(&beta)
                    .map(|(&a, &b)| binom(a as u32, b as u32) % p)
                    .fold(1u32, |x, y| x * y % p);
                if coef != 0 {
                    let e = acc.entry(self.encode(&beta)).or_insert(0);
                    *e = (*e + coef * c as u32) % p;
                }
                // odometer over beta <= alpha
                let mut done = true;
                for k in (0..beta.len()).rev() {
                    if beta[k] < alpha[k] {
                        beta[k] += 1;
                        for b in beta.iter_mut().skip(k + 1) {
                            *b = 0;
                        }
                        done = false;
                        break;
                    }
                }
                if done {
                    break;
                }
            }
        }
        acc.into_iter()
            .filter(|&(_, c)| c != 0)
            .map(|(k, c)| (self.decode(k), c as u8))
            .collect()
    }

    /// `wt(x)` from the graded Jennings basis; `None` for zero.
    pub fn weight(&self, g: &PcGroup, x: &AlgebraElement) -> Option<usize> {
        self.to_monomial_coords(g, x)
            .keys()
            .map(|a| self.monomial_weight(a))
            .min()
    }

    /// Whether `bar(x)` is a factor of the monomial `alpha`: some power
    /// `x^{p^j}` is a tuple entry `g_i` with `alpha_i != 0`.
    pub fn is_factor(&self, g: &PcGroup, x: &GroupElement, alpha: &[u8]) -> bool {
        let mut y = x.clone();
        loop {
            if let Some(i) = self.tuple.iter().position(|s| *s == y) {
                if alpha[i] != 0 {
                    return true;
                }
            }
            if y.is_identity() {
                return false;
            }
            y = g.pow(&y, g.p() as i64);
        }
    }

    /// Index of the first tuple entry of weight `n`.
    pub fn block_start(&self, n: usize) -> usize {
        self.dims[..(n - 1).min(self.dims.len())].iter().sum()
    }
}

fn binom(n: u32, k: u32) -> u32 {
    if k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k as u64 {
        r = r * (n as u64 - i) / (i + 1);
    }
    r as u32
}

/// The graded restricted Lie algebra `Jen(G)` on the homogeneous basis
/// given by a Jennings tuple.
#[derive(Clone, Debug)]
pub struct JenLie {
    p: u8,
    dims: Vec<usize>,
    /// `bracket[(i, j)]`: coordinates of `[e_i, e_j]` in degree `w_i + w_j`.
    bracket: BTreeMap<(usize, usize), Vec<u8>>,
    /// For each degree `n`, `x -> x^[p]` on all `p^{d_n}` vectors (indexed
    /// in base p), with values in degree `p n`.
    pmap: Vec<Vec<Vec<u8>>>,
    weights: Vec<usize>,
}

impl JenLie {
    pub fn new(g: &PcGroup, jd: &JenningsData) -> Self {
        let p = g.p8();
        let t = jd.t();
        let m = jd.tuple.len();
        let coords_in = |x: &GroupElement, n: usize| -> Vec<u8> {
            if n > t {
                return Vec::new();
            }
            let e = jd.exponents(g, x);
            let s = jd.block_start(n);
            e[s..s + jd.dims[n - 1]].to_vec()
        };
        let mut bracket = BTreeMap::new();
        for i in 0..m {
            for j in 0..m {
                let c = g.comm(&jd.tuple[i], &jd.tuple[j]);
                bracket.insert((i, j), coords_in(&c, jd.weights[i] + jd.weights[j]));
            }
        }
        let mut pmap = Vec::with_capacity(t);
        for n in 1..=t {
            let s = jd.block_start(n);
            let d = jd.dims[n - 1];
            let count = (p as usize).pow(d as u32);
            let mut v = Vec::with_capacity(count);
            for k in 0..count {
                let x = vec_from_index(k, d, p);
                let mut lift = g.identity();
                for (a, &c) in x.iter().enumerate() {
                    lift = g.mul(&lift, &g.pow(&jd.tuple[s + a], c as i64));
                }
                v.push(coords_in(&g.pow(&lift, p as i64), n * p as usize));
            }
            pmap.push(v);
        }
        JenLie {
            p,
            dims: jd.dims.clone(),
            bracket,
            pmap,
            weights: jd.weights.clone(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn t(&self) -> usize {
        self.dims.len()
    }

    fn start(&self, n: usize) -> usize {
        self.dims[..n - 1].iter().sum()
    }

    /// Bracket of basis vectors `e_i, e_j` (global tuple indices), in the
    /// degree `w_i + w_j` coordinates; empty above the top degree.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[u8] {
        &self.bracket[&(i, j)]
    }

    /// `[u, v]` for `u` in degree `a` and `v` in degree `b`.
    pub fn bracket(&self, a: usize, u: &[u8], b: usize, v: &[u8]) -> Vec<u8> {
        let n = a + b;
        if n > self.t() {
            return Vec::new();
        }
        let p = self.p as u32;
        let mut out = vec![0u32; self.dims[n - 1]];
        let (sa, sb) = (self.start(a), self.start(b));
        for (x, &cu) in u.iter().enumerate() {
            for (y, &cv) in v.iter().enumerate() {
                if cu == 0 || cv == 0 {
                    continue;
                }
                for (k, &c) in self.bracket[&(sa + x, sb + y)].iter().enumerate() {
                    out[k] = (out[k] + cu as u32 * cv as u32 * c as u32) % p;
                }
            }
        }
        out.into_iter().map(|c| c as u8).collect()
    }

    /// `x^[p]` for `x` in degree `n`.
    pub fn pmap(&self, n: usize, x: &[u8]) -> &[u8] {
        &self.pmap[n - 1][vec_index(x, self.p)]
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn fingerprint(&self) -> JenFingerprint {
        let t = self.t();
        let p = self.p;
        let mut bracket_dims = Vec::new();
        for a in 1..=t {
            for b in a..=t {
                if a + b > t {
                    continue;
                }
                let mut rows = Vec::new();
                for x in 0..self.dims[a - 1] {
                    for y in 0..self.dims[b - 1] {
                        rows.push(self.bracket[&(self.start(a) + x, self.start(b) + y)].clone());
                    }
                }
                bracket_dims.push((a, b, dense_rank(&rows, p)));
            }
        }
        let mut pmap_image_dims = Vec::new();
        let mut pmap_kernel_counts = Vec::new();
        for n in 1..=t {
            if n * p as usize > t {
                continue;
            }
            let imgs = &self.pmap[n - 1];
            pmap_image_dims.push((n, dense_rank(imgs, p)));
            pmap_kernel_counts.push((n, imgs.iter().filter(|v| v.iter().all(|&c| c == 0)).count()));
        }
        let mut center_dims = Vec::new();
        for n in 1..=t {
            let mut rows = Vec::new();
            for x in 0..self.dims[n - 1] {
                let mut row = Vec::new();
                for j in 0..self.weights.len() {
                    row.extend(self.bracket[&(self.start(n) + x, j)].iter().copied());
                }
                rows.push(row);
            }
            let r = if rows.iter().all(|r| r.is_empty()) {
                0
            } else {
                dense_rank(&rows, p)
            };
            center_dims.push(self.dims[n - 1] - r);
        }
        JenFingerprint {
            dims: self.dims.clone(),
            bracket_dims,
            pmap_image_dims,
            pmap_kernel_counts,
            center_dims,
        }
    }
}

fn vec_from_index(mut k: usize, d: usize, p: u8) -> Vec<u8> {
    let mut v = vec![0u8; d];
    for i in (0..d).rev() {
        v[i] = (k % p as usize) as u8;
        k /= p as usize;
    }
    v
}

fn vec_index(v: &[u8], p: u8) -> usize {
    v.iter()
        .fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

/// Numerical data of `Jen(G)` preserved by isomorphisms of graded
/// restricted Lie algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JenFingerprint {
    pub dims: Vec<usize>,
    /// `(a, b, dim [L_a, L_b])` for `a <= b`.
    pub bracket_dims: Vec<(usize, usize, usize)>,
    /// `(n, dim span L_n^[p])`.
    pub pmap_image_dims: Vec<(usize, usize)>,
    /// `(n, #{x in L_n : x^[p] = 0})`.
    pub pmap_kernel_counts: Vec<(usize, usize)>,
    /// Dimension of the centre of `Jen(G)` in each degree.
    pub center_dims: Vec<usize>,
}

/// Helper for tests and reports: the set of weights `wt(g)` over `G`.
pub fn weight_histogram(g: &PcGroup, jd: &JenningsData) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for x in 1..g.order() {
        let w = jd.weight_of_group_element(g, &g.from_idx(x)).unwrap();
        *h.entry(w).or_insert(0) += 1;
    }
    h
}
