//! Finite p-groups given by refined power-commutator presentations.
//!
//! Every generator has relative order `p`; an element is stored as its
//! collected exponent vector `g_1^{e_1} ... g_m^{e_m}`. Products are
//! computed by collection from the left. For groups up to [`TABLE_LIMIT`]
//! entries, per-generator right multiplication tables are built lazily and
//! all products reduce to table lookups.

mod abelian;
mod classes;
mod iso;
mod pcgs;
mod quotient;
mod subgroup;

pub use abelian::abelian_invariants_of_subgroup;
pub use classes::ConjugacyClass;
pub use iso::{iso_search, IsoVerdict, Isomorphism, DEFAULT_BUDGET};
pub use pcgs::{Pcgs, Repcgs};
pub use quotient::Quotient;
pub use subgroup::Subgroup;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{MipError, Result};

/// Upper bound on `m * |G|` for building lookup tables.
pub const TABLE_LIMIT: usize = 1 << 24;

/// Collected exponent vector of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(Vec<u8>);

impl GroupElement {
    pub fn from_exps(exps: Vec<u8>) -> Self {
        GroupElement(exps)
    }

    pub fn exps(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent, or `None` for the identity.
    pub fn depth(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    pub fn leading_exp(&self) -> u8 {
        self.depth().map(|d| self.0[d]).unwrap_or(0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "g{}", i + 1)?;
            } else {
                write!(f, "g{}^{}", i + 1, e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Tables {
    /// `right[j][x]` is the index of `x * g_j`.
    right: Vec<Vec<u32>>,
    inv: Vec<u32>,
}

/// A finite p-group given by a consistent refined pc presentation.
#[derive(Clone)]
pub struct PcGroup {
    p: u8,
    m: usize,
    powers: Vec<GroupElement>,
    /// `comms[j][i]` holds `[g_j, g_i]` for `i < j`.
    comms: Vec<Vec<GroupElement>>,
    /// `conj[j][i]` holds `g_i^{g_j}` for `i > j`.
    conj: Vec<Vec<GroupElement>>,
    order: usize,
    radix: Vec<usize>,
    tables: OnceLock<Option<Tables>>,
}

impl fmt::Debug for PcGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PcGroup")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("powers", &self.powers)
            .field("comms", &self.comms)
            .finish()
    }
}

impl PartialEq for PcGroup {
    /// Equality of presentations, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.powers == other.powers
            && self.comms == other.comms
    }
}

impl Eq for PcGroup {}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A relation word with arbitrary integer exponents, as read from input.
pub type RawWord = Vec<(usize, i64)>;

impl PcGroup {
    /// Builds a group from relation words given with arbitrary integer
    /// exponents. `powers[i]` is the word for `g_i^p`; `comms` lists
    /// `(j, i, word)` with `j > i` for `[g_j, g_i]`. Omitted commutators are
    /// trivial. Words must involve only generators later than the relation.
    pub fn from_relations(
        p: u64,
        m: usize,
        powers: &[RawWord],
        comms: &[(usize, usize, RawWord)],
    ) -> Result<Self> {
        if !is_prime(p) || p > 251 {
            return Err(MipError::usage(format!("{p} is not a supported prime")));
        }
        if powers.len() != m {
            return Err(MipError::usage("one power word per generator expected"));
        }
        let mut comm_raw: Vec<Vec<Option<&RawWord>>> = vec![vec![None; m]; m];
        for (j, i, w) in comms {
            let (j, i) = (*j, *i);
            if j >= m || i >= j {
                return Err(MipError::usage(format!(
                    "commutator [g{}, g{}] must have first index larger",
                    j + 1,
                    i + 1
                )));
            }
            if comm_raw[j][i].is_some() {
                return Err(MipError::usage(format!(
                    "duplicate commutator [g{}, g{}]",
                    j + 1,
                    i + 1
                )));
            }
            check_weighted(w, j, m)?;
            comm_raw[j][i] = Some(w);
        }
        for (i, w) in powers.iter().enumerate() {
            check_weighted(w, i, m)?;
        }
        let mut g = Self::skeleton(p as u8, m);
        // Words attached to g_j live in <g_{j+1}, ...>, whose relations are
        // already normalized when we get to j.
        for j in (0..m).rev() {
            g.powers[j] = g.eval_raw(&powers[j]);
            for i in 0..j {
                if let Some(w) = comm_raw[j][i] {
                    g.comms[j][i] = g.eval_raw(w);
                }
            }
            g.refresh_conj(j);
        }
        g.check_consistency()?;
        Ok(g)
    }

    /// Builds a group from normal-form relation words.
    pub fn new(
        p: u64,
        powers: Vec<GroupElement>,
        comms: Vec<(usize, usize, GroupElement)>,
    ) -> Result<Self> {
        let m = powers.len();
        let to_raw = |w: &GroupElement| -> RawWord {
            w.exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(k, &e)| (k, e as i64))
                .collect()
        };
        for w in &powers {
            if w.len() != m {
                return Err(MipError::usage(
                    "word length does not match generator count",
                ));
            }
        }
        let pw: Vec<RawWord> = powers.iter().map(to_raw).collect();
        let cw: Vec<(usize, usize, RawWord)> =
            comms.iter().map(|(j, i, w)| (*j, *i, to_raw(w))).collect();
        Self::from_relations(p, m, &pw, &cw)
    }

    fn skeleton(p: u8, m: usize) -> Self {
        let id = GroupElement(vec![0; m]);
        let mut radix = vec![1usize; m];
        for i in (0..m.saturating_sub(1)).rev() {
            radix[i] = radix[i + 1] * p as usize;
        }
        let order = (p as usize).pow(m as u32);
        let conj = (0..m)
            .map(|_| {
                (0..m)
                    .map(|i| {
                        let mut e = vec![0; m];
                        e[i] = 1;
                        GroupElement(e)
                    })
                    .collect()
            })
            .collect();
        PcGroup {
            p,
            m,
            powers: vec![id.clone(); m],
            comms: vec![vec![id; m]; m],
            conj,
            order,
            radix,
            tables: OnceLock::new(),
        }
    }

    fn refresh_conj(&mut self, j: usize) {
        // g_j^{g_i} = g_j [g_j, g_i] for i < j; the commutator lives beyond j.
        for i in 0..j {
            let mut e = self.comms[j][i].0.clone();
            e[j] = 1;
            self.conj[i][j] = GroupElement(e);
        }
    }

    fn eval_raw(&self, w: &RawWord) -> GroupElement {
        // Only the recursive collector may run here: the lookup tables must
        // not be built from a half-finished presentation.
        let mut acc = self.identity();
        for &(k, e) in w {
            let base = if e < 0 {
                self.rc_inv(&self.gen(k))
            } else {
                self.gen(k)
            };
            for _ in 0..e.unsigned_abs() {
                acc = self.rc_mul(&acc, &base);
            }
        }
        acc
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub(crate) fn p8(&self) -> u8 {
        self.p
    }

    /// Length `m` of the pc sequence, so `|G| = p^m`.
    pub fn n_gens(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.m])
    }

    pub fn gen(&self, i: usize) -> GroupElement {
        let mut e = vec![0; self.m];
        e[i] = 1;
        GroupElement(e)
    }

    pub fn gens(&self) -> Vec<GroupElement> {
        (0..self.m).map(|i| self.gen(i)).collect()
    }

    /// Validates an exponent vector against this group.
    pub fn element(&self, exps: &[u8]) -> Result<GroupElement> {
        let g = GroupElement(exps.to_vec());
        self.check(&g)?;
        Ok(g)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if g.len() != self.m || g.0.iter().any(|&e| e >= self.p) {
            return Err(MipError::usage(format!(
                "element {g} does not belong to a group with {} generators over p = {}",
                self.m, self.p
            )));
        }
        Ok(())
    }

    /// Normal-form word for `g_i^p`.
    pub fn power_word(&self, i: usize) -> &GroupElement {
        &self.powers[i]
    }

    /// Normal-form word for `[g_j, g_i]`, `j > i`.
    pub fn comm_word(&self, j: usize, i: usize) -> &GroupElement {
        &self.comms[j][i]
    }

    pub fn idx(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.radix)
            .map(|(&e, &r)| e as usize * r)
            .sum()
    }

    pub fn from_idx(&self, mut x: usize) -> GroupElement {
        let mut e = vec![0u8; self.m];
        for i in 0..self.m {
            e[i] = (x / self.radix[i]) as u8;
            x %= self.radix[i];
        }
        GroupElement(e)
    }

    fn digit(&self, x: usize, i: usize) -> u8 {
        ((x / self.radix[i]) % self.p as usize) as u8
    }

    // ---- recursive collector -------------------------------------------

    fn rc_mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut r = a.0.clone();
        for j in 0..self.m {
            for _ in 0..b.0[j] {
                self.rc_mul_gen(&mut r, j);
            }
        }
        GroupElement(r)
    }

    fn rc_mul_gen(&self, r: &mut [u8], j: usize) {
        let m = self.m;
        let tail_conj = if r[j + 1..].iter().any(|&e| e != 0) {
            let mut acc = self.identity();
            for i in j + 1..m {
                for _ in 0..r[i] {
                    acc = self.rc_mul(&acc, &self.conj[j][i]);
                }
            }
            acc
        } else {
            self.identity()
        };
        r[j] += 1;
        let tail = if r[j] == self.p {
            r[j] = 0;
            self.rc_mul(&self.powers[j], &tail_conj)
        } else {
            tail_conj
        };
        r[j + 1..].copy_from_slice(&tail.0[j + 1..]);
    }

    fn rc_inv(&self, g: &GroupElement) -> GroupElement {
        // g = g_i^e * y with y deeper; g^{-1} = y^{-1} (g_i^{-1})^e and
        // g_i^{-1} = (g_i^p)^{-1} g_i^{p-1}.
        let Some(i) = g.depth() else {
            return self.identity();
        };
        let e = g.0[i];
        let mut y = g.clone();
        y.0[i] = 0;
        let y_inv = self.rc_inv(&y);
        let w_inv = self.rc_inv(&self.powers[i]);
        let mut gi_pm1 = self.identity();
        gi_pm1.0[i] = self.p - 1;
        let gi_inv = self.rc_mul(&w_inv, &gi_pm1);
        let mut acc = y_inv;
        for _ in 0..e {
            acc = self.rc_mul(&acc, &gi_inv);
        }
        acc
    }

    // ---- tables --------------------------------------------------------

    fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| {
                if self.order.saturating_mul(self.m.max(1)) > TABLE_LIMIT {
                    None
                } else {
                    Some(self.build_tables())
                }
            })
            .as_ref()
    }

    fn build_tables(&self) -> Tables {
        let m = self.m;
        let n = self.order;
        let p = self.p as usize;
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); m];
        let tmul = |right: &Vec<Vec<u32>>, mut a: usize, b: usize| -> usize {
            let mut b = b;
            for k in 0..m {
                let d = b / self.radix[k];
                b %= self.radix[k];
                for _ in 0..d {
                    a = right[k][a] as usize;
                }
            }
            a
        };
        for j in (0..m).rev() {
            let sub = self.radix[j]; // |<g_{j+1}, ...>|
                                     // conjugation by g_j on <g_{j+1}, ...>, indexed by tail index
            let mut conj_tab = vec![0u32; sub];
            let mut conj_pows: Vec<Vec<usize>> = vec![Vec::new(); m];
            for i in j + 1..m {
                let c = self.idx(&self.conj[j][i]);
                let mut v = vec![0usize; p];
                for e in 1..p {
                    v[e] = tmul(&right, v[e - 1], c);
                }
                conj_pows[i] = v;
            }
            for x in 1..sub {
                let i = (j + 1..m).find(|&i| self.digit(x, i) != 0).unwrap();
                let e = self.digit(x, i) as usize;
                let y = x - e * self.radix[i];
                conj_tab[x] = tmul(&right, conj_pows[i][e], conj_tab[y] as usize) as u32;
            }
            let pw = self.idx(&self.powers[j]);
            let mut tab = vec![0u32; n];
            for x in 0..n {
                let tail = x % sub;
                let head = x - tail;
                let ej = self.digit(x, j) as usize;
                let tc = conj_tab[tail] as usize;
                tab[x] = if ej + 1 == p {
                    (head - ej * self.radix[j] + tmul(&right, pw, tc)) as u32
                } else {
                    (head + self.radix[j] + tc) as u32
                };
            }
            right[j] = tab;
        }
        let mut inv = vec![0u32; n];
        let mut gen_inv_pows: Vec<Vec<usize>> = vec![Vec::new(); m];
        for x in 1..n {
            let i = (0..m).find(|&i| self.digit(x, i) != 0).unwrap();
            let e = self.digit(x, i) as usize;
            let y = x - e * self.radix[i];
            if gen_inv_pows[i].is_empty() {
                let w_inv = inv[self.idx(&self.powers[i])] as usize;
                let gi_inv = tmul(&right, w_inv, (p - 1) * self.radix[i]);
                let mut v = vec![0usize; p];
                for k in 1..p {
                    v[k] = tmul(&right, v[k - 1], gi_inv);
                }
                gen_inv_pows[i] = v;
            }
            inv[x] = tmul(&right, inv[y] as usize, gen_inv_pows[i][e]) as u32;
        }
        Tables { right, inv }
    }

    // ---- index arithmetic ----------------------------------------------

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        match self.tables() {
            Some(t) => {
                let mut a = a;
                let mut b = b;
                for k in 0..self.m {
                    let d = b / self.radix[k];
                    b %= self.radix[k];
                    for _ in 0..d {
                        a = t.right[k][a] as usize;
                    }
                }
                a
            }
            None => self.idx(&self.rc_mul(&self.from_idx(a), &self.from_idx(b))),
        }
    }

    pub fn inv_idx(&self, a: usize) -> usize {
        match self.tables() {
            Some(t) => t.inv[a] as usize,
            None => self.idx(&self.rc_inv(&self.from_idx(a))),
        }
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn comm_idx(&self, a: usize, b: usize) -> usize {
        let ab = self.mul_idx(a, b);
        let ba = self.mul_idx(b, a);
        self.mul_idx(self.inv_idx(ba), ab)
    }

    pub fn pow_idx(&self, a: usize, k: i64) -> usize {
        let mut base = if k < 0 { self.inv_idx(a) } else { a };
        let mut k = k.unsigned_abs();
        let mut acc = 0usize;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_idx(acc, base);
            }
            base = self.mul_idx(base, base);
            k >>= 1;
        }
        acc
    }

    // ---- element arithmetic --------------------------------------------

    pub fn mul(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        if self.tables().is_some() {
            self.from_idx(self.mul_idx(self.idx(g), self.idx(h)))
        } else {
            self.rc_mul(g, h)
        }
    }

    pub fn try_mul(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    pub fn inv(&self, g: &GroupElement) -> GroupElement {
        if self.tables().is_some() {
            self.from_idx(self.inv_idx(self.idx(g)))
        } else {
            self.rc_inv(g)
        }
    }

    /// `[g, h] = g^{-1} h^{-1} g h`.
    pub fn comm(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let gh = self.mul(g, h);
        let hg = self.mul(h, g);
        self.mul(&self.inv(&hg), &gh)
    }

    /// Iterated left-normed commutator `[x_1, x_2, ..., x_k]`.
    pub fn comm_iter(&self, xs: &[GroupElement]) -> GroupElement {
        let mut it = xs.iter();
        let Some(first) = it.next() else {
            return self.identity();
        };
        it.fold(first.clone(), |acc, x| self.comm(&acc, x))
    }

    /// `g^h = h^{-1} g h`.
    pub fn conj(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.mul(&self.inv(h), &self.mul(g, h))
    }

    pub fn pow(&self, g: &GroupElement, k: i64) -> GroupElement {
        let mut base = if k < 0 { self.inv(g) } else { g.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Order of an element (a power of `p`).
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        let mut x = g.clone();
        let mut ord = 1u64;
        while !x.is_identity() {
            x = self.pow(&x, self.p as i64);
            ord *= self.p as u64;
        }
        ord
    }

    pub fn element_order_idx(&self, a: usize) -> u64 {
        let mut x = a;
        let mut ord = 1u64;
        while x != 0 {
            x = self.pow_idx(x, self.p as i64);
            ord *= self.p as u64;
        }
        ord
    }

    /// Product of a word given as `(generator, exponent)` pairs.
    pub fn eval_word(&self, w: &[(usize, i64)]) -> GroupElement {
        let mut acc = self.identity();
        for &(k, e) in w {
            acc = self.mul(&acc, &self.pow(&self.gen(k), e));
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.m).all(|j| (0..j).all(|i| self.comms[j][i].is_identity()))
    }

    // ---- consistency ---------------------------------------------------

    /// Runs the standard overlap tests with the recursive collector.
    pub fn check_consistency(&self) -> Result<()> {
        let m = self.m;
        let p = self.p as i64;
        let g: Vec<GroupElement> = (0..m).map(|i| self.gen(i)).collect();
        let pw = |x: &GroupElement, k: i64| -> GroupElement {
            let mut acc = self.identity();
            for _ in 0..k {
                acc = self.rc_mul(&acc, x);
            }
            acc
        };
        let fail = |what: String| Err(MipError::Inconsistent(what));
        for k in 0..m {
            for j in 0..k {
                for i in 0..j {
                    let lhs = self.rc_mul(&self.rc_mul(&g[k], &g[j]), &g[i]);
                    let rhs = self.rc_mul(&g[k], &self.rc_mul(&g[j], &g[i]));
                    if lhs != rhs {
                        return fail(format!(
                            "overlap (g{} g{}) g{} = {lhs} but g{} (g{} g{}) = {rhs}",
                            k + 1,
                            j + 1,
                            i + 1,
                            k + 1,
                            j + 1,
                            i + 1
                        ));
                    }
                }
            }
        }
        for j in 0..m {
            let gj_pm1 = pw(&g[j], p - 1);
            for i in 0..j {
                let lhs = self.rc_mul(&self.powers[j], &g[i]);
                let rhs = self.rc_mul(&gj_pm1, &self.rc_mul(&g[j], &g[i]));
                if lhs != rhs {
                    return fail(format!(
                        "power overlap g{}^p g{}: {lhs} vs {rhs}",
                        j + 1,
                        i + 1
                    ));
                }
                let gi_pm1 = pw(&g[i], p - 1);
                let lhs = self.rc_mul(&g[j], &self.powers[i]);
                let rhs = self.rc_mul(&self.rc_mul(&g[j], &gi_pm1), &g[i]);
                if lhs != rhs {
                    return fail(format!(
                        "power overlap g{} g{}^p: {lhs} vs {rhs}",
                        j + 1,
                        i + 1
                    ));
                }
            }
            let lhs = self.rc_mul(&self.powers[j], &g[j]);
            let rhs = self.rc_mul(&g[j], &self.powers[j]);
            if lhs != rhs {
                return fail(format!("power overlap g{}^(p+1): {lhs} vs {rhs}", j + 1));
            }
        }
        Ok(())
    }

    /// Full associativity check on sampled triples; used by tests and by
    /// the catalog self-check.
    pub fn check_associativity_sample(&self, triples: &[(usize, usize, usize)]) -> bool {
        triples.iter().all(|&(a, b, c)| {
            self.mul_idx(self.mul_idx(a, b), c) == self.mul_idx(a, self.mul_idx(b, c))
        })
    }

    /// Product computed with the recursive collector only; serves as an
    /// independent route to the table-based product.
    pub fn collect_product(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.rc_mul(g, h)
    }
}

fn check_weighted(w: &RawWord, after: usize, m: usize) -> Result<()> {
    for &(k, _) in w {
        if k >= m {
            return Err(MipError::usage(format!(
                "generator g{} out of range",
                k + 1
            )));
        }
        if k <= after {
            return Err(MipError::usage(format!(
                "non-weighted presentation: word for a relation of g{} mentions g{}",
                after + 1,
                k + 1
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn d8() -> PcGroup {
        // g1 = b, g2 = a, g3 = a^2; g2^2 = g3, [g2, g1] = g3
        PcGroup::from_relations(
            2,
            3,
            &[vec![], vec![(2, 1)], vec![]],
            &[(1, 0, vec![(2, 1)])],
        )
        .unwrap()
    }

    pub fn q8() -> PcGroup {
        PcGroup::from_relations(
            2,
            3,
            &[vec![(2, 1)], vec![(2, 1)], vec![]],
            &[(1, 0, vec![(2, 1)])],
        )
        .unwrap()
    }

    pub fn c9() -> PcGroup {
        PcGroup::from_relations(3, 2, &[vec![(1, 1)], vec![]], &[]).unwrap()
    }

    pub fn heis(p: u64) -> PcGroup {
        PcGroup::from_relations(p, 3, &[vec![], vec![], vec![]], &[(1, 0, vec![(2, 1)])]).unwrap()
    }

    pub fn elem_ab(p: u64, r: usize) -> PcGroup {
        PcGroup::from_relations(p, r, &vec![vec![]; r], &[]).unwrap()
    }

    /// Brute-force D8 multiplication: elements b^s a^t, a^4 = b^2 = 1,
    /// b a b = a^{-1}. Returns (s, t) of the product.
    fn d8_brute((s1, t1): (u8, u8), (s2, t2): (u8, u8)) -> (u8, u8) {
        // b^s1 a^t1 b^s2 a^t2 = b^{s1+s2} a^{(-1)^{s2} t1 + t2}
        let t = if s2 == 1 { (4 - t1) % 4 } else { t1 };
        ((s1 + s2) % 2, (t + t2) % 4)
    }

    fn d8_to_st(g: &GroupElement) -> (u8, u8) {
        let e = g.exps();
        (e[0], e[1] + 2 * e[2])
    }

    #[test]
    fn d8_matches_brute_table() {
        let g = d8();
        for x in 0..8 {
            for y in 0..8 {
                let (a, b) = (g.from_idx(x), g.from_idx(y));
                let got = d8_to_st(&g.mul(&a, &b));
                assert_eq!(got, d8_brute(d8_to_st(&a), d8_to_st(&b)));
            }
        }
        let prod = g.mul(
            &g.element(&[1, 1, 0]).unwrap(),
            &g.element(&[1, 0, 0]).unwrap(),
        );
        assert_eq!(prod.exps(), &[0, 1, 1]);
    }

    #[test]
    fn d8_inverse_and_commutator() {
        let g = d8();
        assert_eq!(g.pow(&g.gen(1), -1).exps(), &[0, 1, 1]);
        assert_eq!(g.comm(&g.gen(1), &g.gen(0)), g.gen(2));
    }

    #[test]
    fn c9_power_rules() {
        let g = c9();
        let x = g.element(&[2, 0]).unwrap();
        assert_eq!(g.mul(&x, &x).exps(), &[1, 1]);
        assert_eq!(g.pow(&g.gen(0), 3), g.gen(1));
        assert_eq!(g.pow(&x, 0), g.identity());
        assert_eq!(g.element_order(&g.gen(0)), 9);
    }

    #[test]
    fn heisenberg_commutator() {
        let g = heis(3);
        assert_eq!(g.comm(&g.gen(1), &g.gen(0)), g.gen(2));
        let ab = elem_ab(3, 3);
        for x in 0..27 {
            for y in 0..27 {
                assert_eq!(ab.comm_idx(x, y), 0);
            }
        }
    }

    #[test]
    fn identity_is_neutral_and_mismatch_rejected() {
        let g = heis(5);
        for x in 0..g.order() {
            assert_eq!(g.mul_idx(x, 0), x);
            assert_eq!(g.mul_idx(0, x), x);
        }
        let alien = GroupElement::from_exps(vec![1, 0]);
        assert!(g.try_mul(&alien, &g.gen(0)).is_err());
        assert!(g.element(&[5, 0, 0]).is_err());
    }

    #[test]
    fn table_agrees_with_recursive_collector() {
        for g in [d8(), q8(), heis(3), heis(5), c9()] {
            for x in 0..g.order() {
                for y in 0..g.order() {
                    let (a, b) = (g.from_idx(x), g.from_idx(y));
                    assert_eq!(g.mul(&a, &b), g.collect_product(&a, &b));
                }
                let a = g.from_idx(x);
                assert_eq!(g.inv(&a), g.rc_inv(&a));
            }
        }
    }

    #[test]
    fn inconsistent_presentation_rejected() {
        // g1^2 = g2 with [g2, g1] = g3 in an order-8 group: g1 cannot fail to
        // commute with its own power.
        let r = PcGroup::from_relations(
            2,
            3,
            &[vec![(1, 1)], vec![], vec![]],
            &[(1, 0, vec![(2, 1)])],
        );
        assert!(matches!(r, Err(MipError::Inconsistent(_))));
    }

    #[test]
    fn non_weighted_word_rejected() {
        let r = PcGroup::from_relations(3, 3, &[vec![], vec![], vec![]], &[(2, 1, vec![(0, 1)])]);
        assert!(matches!(r, Err(MipError::Usage(m)) if m.contains("non-weighted")));
    }

    #[test]
    fn negative_exponents_in_words_are_evaluated() {
        // [g2, g1] = g3^-1 over p = 5 becomes g3^4
        let g = PcGroup::from_relations(5, 3, &[vec![], vec![], vec![]], &[(1, 0, vec![(2, -1)])])
            .unwrap();
        assert_eq!(g.comm_word(1, 0).exps(), &[0, 0, 4]);
    }

    #[test]
    fn associativity_exhaustive_small() {
        for g in [d8(), q8(), heis(3), c9()] {
            let n = g.order();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(g.mul_idx(g.mul_idx(a, b), c), g.mul_idx(a, g.mul_idx(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_expansion_identities() {
        // [a, bc] = [a, c][a, b]^c and [ab, c] = [a, c]^b [b, c]
        for g in [d8(), q8(), heis(3)] {
            let n = g.order();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let (a, b, c) = (g.from_idx(a), g.from_idx(b), g.from_idx(c));
                        let lhs = g.comm(&a, &g.mul(&b, &c));
                        let rhs = g.mul(&g.comm(&a, &c), &g.conj(&g.comm(&a, &b), &c));
                        assert_eq!(lhs, rhs);
                        let lhs = g.comm(&g.mul(&a, &b), &c);
                        let rhs = g.mul(&g.conj(&g.comm(&a, &c), &b), &g.comm(&b, &c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
