//! p-obelisks: non-abelian p-groups with `|G : gamma_2(G)| = p^2` and
//! `G^p = gamma_3(G)`, their layer ranks, dimension subgroups and the
//! framed / non-framed split.

mod search;

pub use search::{search_obelisks, ObeliskFamily, SearchHit};

use serde::Serialize;

use crate::error::{MipError, Result};
use crate::fpalgebra::{dimension_series, Method};
use crate::linalg;
use crate::pcgroup::{is_prime, GroupElement, PcGroup, Subgroup};

/// The defining predicate, read literally. Always false for `p <= 3`,
/// where the theory below does not apply.
pub fn is_obelisk(g: &PcGroup) -> bool {
    if g.p() <= 3 || g.is_abelian() {
        return false;
    }
    g.whole().log_order() - g.gamma(2).log_order() == 2 && g.agemo() == g.gamma(3)
}

/// `n = a p^l + b` with `1 <= a < p` and `0 <= b < p^l`.
pub fn decompose(n: u64, p: u64) -> (u64, u32, u64) {
    let mut l = 0u32;
    let mut pl = 1u64;
    while pl * p <= n {
        pl *= p;
        l += 1;
    }
    (n / pl, l, n % pl)
}

/// Index `m(n)` with `D_n(O) = gamma_{m(n)}(O)` for an obelisk `O`.
pub fn m_of_n(n: u64, p: u64) -> Result<u64> {
    if p <= 3 || !is_prime(p) {
        return Err(MipError::usage(format!(
            "m(n) needs a prime p > 3, got {p}"
        )));
    }
    if n == 0 {
        return Err(MipError::usage("m(n) needs n >= 1"));
    }
    let (a, l, b) = decompose(n, p);
    let l = l as u64;
    Ok(if a == 1 && b == 0 {
        2 * l + 1
    } else if a > 2 || (a == 2 && b >= 1) {
        2 * l + 3
    } else {
        2 * l + 2
    })
}

fn require_obelisk(g: &PcGroup) -> Result<()> {
    if !is_obelisk(g) {
        return Err(MipError::precondition("group is not a p-obelisk"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankPattern {
    /// `rank(gamma_i / gamma_{i+1})` for `i = 1..=c`.
    pub ranks: Vec<usize>,
    /// Indices `i` where the layer is not elementary abelian of the
    /// expected rank.
    pub rank_failures: Vec<usize>,
    /// Indices `i` with `gamma_i^p != gamma_{i+2}`.
    pub power_failures: Vec<usize>,
}

impl RankPattern {
    pub fn passed(&self) -> bool {
        self.rank_failures.is_empty() && self.power_failures.is_empty()
    }
}

pub fn rank_pattern_check(g: &PcGroup) -> Result<RankPattern> {
    require_obelisk(g)?;
    let lcs = g.lower_central_series();
    let c = lcs.len() - 1;
    let gam = |i: usize| lcs.get(i - 1).cloned().unwrap_or_else(Subgroup::trivial);
    let mut ranks = Vec::new();
    let mut rank_failures = Vec::new();
    let mut power_failures = Vec::new();
    for i in 1..=c {
        let (a, b) = (gam(i), gam(i + 1));
        let r = a.log_order() - b.log_order();
        ranks.push(r);
        // elementary abelian layer: gamma_i^p lies in gamma_{i+1}
        let elementary = g.agemo_of(&a, 1).is_subgroup_of(g, &b);
        let expected = if i % 2 == 0 {
            Some(1)
        } else if i < c {
            Some(2)
        } else {
            None
        };
        if !elementary || expected.is_some_and(|e| e != r) {
            rank_failures.push(i);
        }
        if g.agemo_of(&a, 1) != gam(i + 2) {
            power_failures.push(i);
        }
    }
    Ok(RankPattern {
        ranks,
        rank_failures,
        power_failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub n: u64,
    pub m: u64,
    pub log_d_n: usize,
    pub log_gamma_m: usize,
    pub matches: bool,
}

/// Rows `n = 1, 2, ...` up to the first `n` with `D_n = 1`.
pub fn dimension_series_check(g: &PcGroup) -> Result<Vec<DimensionRow>> {
    require_obelisk(g)?;
    let d = dimension_series(g, Method::Jennings)?;
    let lcs = g.lower_central_series();
    let mut rows = Vec::new();
    for (k, dn) in d.iter().enumerate() {
        let n = k as u64 + 1;
        let m = m_of_n(n, g.p())?;
        let gm = lcs
            .get(m as usize - 1)
            .cloned()
            .unwrap_or_else(Subgroup::trivial);
        rows.push(DimensionRow {
            n,
            m,
            log_d_n: dn.log_order(),
            log_gamma_m: gm.log_order(),
            matches: *dn == gm,
        });
    }
    Ok(rows)
}

/// Maximal subgroups as preimages of the hyperplanes of `G / Phi(G)`.
pub fn maximal_subgroups(g: &PcGroup) -> Vec<Subgroup> {
    let x = g.minimal_generators();
    let phi = g.frattini();
    let d = x.len();
    let p = g.p() as u8;
    let mut out = Vec::new();
    // functionals with leading coefficient 1, one per hyperplane
    let total = (p as usize).pow(d as u32);
    for code in 0..total {
        let f = digits(code, d, p);
        if f.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let rows: Vec<Vec<u8>> = f.iter().map(|&c| vec![c]).collect();
        let mut gens: Vec<GroupElement> = phi.igs().to_vec();
        for v in linalg::left_kernel(&rows, p) {
            let mut e = g.identity();
            for (xi, &vi) in x.iter().zip(&v) {
                e = g.mul(&e, &g.pow(xi, vi as i64));
            }
            gens.push(e);
        }
        out.push(g.subgroup(&gens));
    }
    out
}

fn digits(mut k: usize, d: usize, p: u8) -> Vec<u8> {
    let mut v = vec![0u8; d];
    for i in (0..d).rev() {
        v[i] = (k % p as usize) as u8;
        k /= p as usize;
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramedReport {
    /// Minimal generator counts of the maximal subgroups.
    pub max_subgroup_ranks: Vec<usize>,
    /// All maximal subgroups 2-generated.
    pub by_generators: bool,
    /// Images of `M^p` and `[M, M]` in `gamma_3 / gamma_4` distinct of
    /// order `p` for every maximal `M`.
    pub by_lie_criterion: bool,
    /// For a non-framed obelisk: exactly two exceptional maximal
    /// subgroups, each 3-generated.
    pub exceptional_shape_ok: Option<bool>,
}

impl FramedReport {
    pub fn framed(&self) -> Option<bool> {
        (self.by_generators == self.by_lie_criterion).then_some(self.by_generators)
    }
}

pub fn framed_report(g: &PcGroup) -> Result<FramedReport> {
    require_obelisk(g)?;
    let maxes = maximal_subgroups(g);
    let ranks: Vec<usize> = maxes.iter().map(|m| g.rank_of(m)).collect();
    let by_generators = ranks.iter().all(|&r| r == 2);

    let g3 = g.gamma(3);
    let g4 = g.gamma(4);
    let by_lie_criterion = maxes.iter().all(|m| {
        let pw = g.product(&g.agemo_of(m, 1), &g4);
        let dr = g.product(&g.comm_subgroup(m, m), &g4);
        let order_p =
            |s: &Subgroup| s.log_order() == g4.log_order() + 1 && s.is_subgroup_of(g, &g3);
        order_p(&pw) && order_p(&dr) && pw != dr
    });
    let exceptional_shape_ok = (!by_generators).then(|| {
        let bad: Vec<usize> = ranks.iter().copied().filter(|&r| r != 2).collect();
        bad.len() == 2 && bad.iter().all(|&r| r == 3)
    });
    Ok(FramedReport {
        max_subgroup_ranks: ranks,
        by_generators,
        by_lie_criterion,
        exceptional_shape_ok,
    })
}

/// Framed status; errors if the two methods disagree.
pub fn is_framed(g: &PcGroup) -> Result<bool> {
    framed_report(g)?
        .framed()
        .ok_or_else(|| MipError::Internal("framed criteria disagree".into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObeliskReport {
    pub is_obelisk: bool,
    /// `p <= 3`: the predicate is reported false without evaluation.
    pub small_prime: bool,
    /// Literal definition met with `gamma_3 = G^p = 1`, i.e. class 2.
    pub degenerate: bool,
    pub class: usize,
    pub rank_pattern: Option<RankPattern>,
    pub dimension_rows: Option<Vec<DimensionRow>>,
    pub framed: Option<FramedReport>,
}

pub fn obelisk_report(g: &PcGroup) -> Result<ObeliskReport> {
    let ob = is_obelisk(g);
    let class = g.nilpotency_class();
    let mut r = ObeliskReport {
        is_obelisk: ob,
        small_prime: g.p() <= 3,
        degenerate: ob && class == 2,
        class,
        rank_pattern: None,
        dimension_rows: None,
        framed: None,
    };
    if ob {
        r.rank_pattern = Some(rank_pattern_check(g)?);
        r.dimension_rows = Some(dimension_series_check(g)?);
        r.framed = Some(framed_report(g)?);
    }
    Ok(r)
}
