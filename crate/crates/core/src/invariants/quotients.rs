use serde::Serialize;

use crate::error::{MipError, Result};
use crate::pcgroup::{PcGroup, Quotient, Subgroup};

use super::{subgroup_type, SubgroupType};

/// `G / gamma_2(G)^p gamma_3(G)`.
pub fn sandling_quotient(g: &PcGroup) -> Result<PcGroup> {
    let g2 = g.gamma(2);
    let n = g.product(&g.agemo_of(&g2, 1), &g.gamma(3));
    Ok(g.quotient(&n)?.group().clone())
}

/// `G / gamma_2(G)^p gamma_4(G)`, defined for 2-generated `G`.
pub fn two_gen_quotient(g: &PcGroup) -> Result<PcGroup> {
    let d = g.rank();
    if d > 2 {
        return Err(MipError::precondition(format!(
            "G needs {d} generators, the quotient is an invariant only for 2-generated groups"
        )));
    }
    let g2 = g.gamma(2);
    let n = g.product(&g.agemo_of(&g2, 1), &g.gamma(4));
    Ok(g.quotient(&n)?.group().clone())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaginskiValue {
    /// `C = C_G(gamma_2(G) / Phi(gamma_2(G)))`.
    #[serde(skip)]
    pub centralizer: Subgroup,
    pub log_index: usize,
    pub centralizer_type: SubgroupType,
}

/// The centralizer of the action of `G` on `gamma_2(G)/Phi(gamma_2(G))`,
/// returned when `G / C` is cyclic.
pub fn baginski_centralizer(g: &PcGroup) -> Result<Option<BaginskiValue>> {
    let c = action_centralizer(g)?;
    let top = Quotient::new(g, &c)?;
    if top.group().rank() > 1 {
        return Ok(None);
    }
    Ok(Some(BaginskiValue {
        log_index: g.n_gens() - c.log_order(),
        centralizer_type: subgroup_type(g, &c)?,
        centralizer: c,
    }))
}

fn action_centralizer(g: &PcGroup) -> Result<Subgroup> {
    let g2 = g.gamma(2);
    let q = g.quotient(&g.frattini_of(&g2))?;
    let image = q.image(g, &g2);
    Ok(q.preimage(g, &q.group().centralizer(&image)))
}
