//! Structural facts about `S = G ⋊ A`, checked in the pc model of
//! `S / (A ∩ Z(S))`.

use serde::Serialize;

use crate::error::Result;
use crate::pcgroup::{PcGroup, Subgroup};

use super::SmallAlgebraModel;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// `log_p |G|`.
    pub log_order_g: usize,
    /// `log_p |A / (A ∩ Z(S))|`.
    pub a_rank: usize,
    /// `log_p |gamma_2(S)|`.
    pub log_gamma2: usize,
    pub clauses: Vec<Clause>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.holds)
    }
}

pub fn structure_report(g: &PcGroup) -> Result<StructureReport> {
    let m = SmallAlgebraModel::new(g)?;
    Ok(report_for(&m))
}

pub fn report_for(m: &SmallAlgebraModel) -> StructureReport {
    let g = m.group();
    let s = m.sbar();
    let emb = |h: &Subgroup| -> Subgroup { m.embed_subgroup(h) };
    let a = m.a_subgroup();
    let g_in_s = emb(&g.whole());
    let mut clauses = Vec::new();
    let mut push = |name: &str, holds: bool, detail: String| {
        clauses.push(Clause {
            name: name.into(),
            holds,
            detail,
        })
    };

    // semidirect structure
    push(
        "S = G ⋊ A",
        g_in_s.is_normal(s)
            && s.intersection(&g_in_s, &a).is_trivial()
            && g_in_s.log_order() + a.log_order() == s.n_gens(),
        format!("|S| = p^{}", s.n_gens()),
    );
    let g3 = emb(&g.gamma(3));
    let ga = s.comm_subgroup(&s.whole(), &a);
    push(
        "[G, A] ⊆ gamma_3(G)",
        ga.is_subgroup_of(s, &g3),
        format!("log_p |[S, A]| = {}", ga.log_order()),
    );
    let g2 = emb(&g.gamma(2));
    let a_ag2 = s.product(&a, &g2);
    push(
        "[A, A gamma_2(G)] = 1",
        a.igs()
            .iter()
            .all(|x| a_ag2.igs().iter().all(|y| s.comm(x, y).is_identity())),
        String::new(),
    );

    // gamma_i(S) = gamma_i(G)
    let ls = s.lower_central_series();
    let lg = g.lower_central_series();
    let len = ls.len().max(lg.len());
    let mut bad = Vec::new();
    for i in 2..=len {
        let si = ls.get(i - 1).cloned().unwrap_or_else(Subgroup::trivial);
        let gi = emb(&lg.get(i - 1).cloned().unwrap_or_else(Subgroup::trivial));
        if si != gi {
            bad.push(i);
        }
    }
    push(
        "gamma_i(S) = gamma_i(G) for i >= 2",
        bad.is_empty(),
        if bad.is_empty() {
            format!("checked i = 2..{len}")
        } else {
            format!("differs at i = {bad:?}")
        },
    );

    let zs = s.center();
    push(
        "Gamma(S) = Gamma(G)",
        s.gamma_cap() == emb(&g.gamma_cap()),
        format!("log_p |Gamma| = {}", s.gamma_cap().log_order()),
    );

    // A^p acts through p-th powers of the action, which land in an
    // elementary abelian gamma_3(G).
    let pth_trivial = m.a_generators().iter().all(|a| {
        a.action
            .iter()
            .all(|c| g.pow(c, g.p() as i64).is_identity())
    });
    push("[A^p, S] = 1", pth_trivial, String::new());

    push(
        "G ∩ Z(S) = Z(G)",
        s.intersection(&g_in_s, &zs) == emb(&g.center()),
        format!("log_p |Z(G)| = {}", g.center().log_order()),
    );

    let z2s = s.upper_central(2);
    let z2g = emb(&g.upper_central(2));
    let commute = z2g
        .igs()
        .iter()
        .all(|x| a.igs().iter().all(|y| s.comm(x, y).is_identity()));
    let direct = s.intersection(&z2g, &a).is_trivial() && commute;
    push(
        "Z_2(S) = Z_2(G) × A",
        z2s == s.product(&z2g, &a) && direct,
        format!(
            "log_p |Z_2(S)| = {} = {} + {}",
            z2s.log_order(),
            z2g.log_order(),
            a.log_order()
        ),
    );
    push(
        "Z_2(G) = Z_2(S) ∩ G",
        s.intersection(&z2s, &g_in_s) == z2g,
        String::new(),
    );

    StructureReport {
        log_order_g: g.n_gens(),
        a_rank: m.a_rank(),
        log_gamma2: ls.get(1).map(|x| x.log_order()).unwrap_or(0),
        clauses,
    }
}
