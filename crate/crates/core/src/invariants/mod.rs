//! Group theoretical invariants of the modular isomorphism problem and a
//! comparison of two invariant reports.
//!
//! Every report field is an isomorphism invariant of the group, so reports
//! of two presentations of the same group serialize identically.

mod compare;
mod hypotheses;
mod quotients;

pub use compare::{
    compare, compare_with, CompareOptions, Comparison, FieldComparison, FieldStatus, Verdict,
};
pub use hypotheses::{
    abelian_centralizer_check, compute_k_g, kg_check, settled_flags, small_order_checks,
    AbelianCentralizerVerdict, KgData, KgVerdict, SettledFlags, SmallOrderVerdicts,
};
pub use quotients::{baginski_centralizer, sandling_quotient, two_gen_quotient, BaginskiValue};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{MipError, Result};
use crate::fpalgebra::{JenFingerprint, JenLie, JenningsData};
use crate::obelisk;
use crate::pcgroup::{abelian_invariants_of_subgroup, PcGroup, Subgroup};

/// Element statistics are skipped above this order.
pub const ELEMENT_SCAN_LIMIT: usize = 1 << 20;

/// A value that may be missing for a documented reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Field<T> {
    Value(T),
    /// The hypothesis under which the value is an invariant fails.
    NotApplicable(String),
    /// A resource bound was hit.
    Unavailable(String),
}

impl<T> Field<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Field::Value(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_unavailable(&self) -> bool {
        matches!(self, Field::Unavailable(_))
    }

    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(v) => Field::Value(v),
            Err(MipError::Resource {
                what,
                needed,
                bound,
            }) => Field::Unavailable(format!("{what}: needs {needed}, bound {bound}")),
            Err(e) => Field::Unavailable(e.to_string()),
        }
    }
}

/// Cheap isomorphism invariants of a group. Different fingerprints prove
/// non-isomorphism; equal ones prove nothing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupFingerprint {
    pub log_order: usize,
    pub class: usize,
    pub rank: usize,
    /// Abelian invariants when the group is abelian.
    pub abelian: Option<Vec<u32>>,
    pub abelianization: Vec<u32>,
    pub lower_central_logs: Vec<usize>,
    pub upper_central_logs: Vec<usize>,
    pub jennings_dims: Vec<usize>,
    /// `(log_p order, count)` over all elements.
    pub element_orders: Option<Vec<(u32, usize)>>,
}

pub fn fingerprint(g: &PcGroup) -> GroupFingerprint {
    let logs = |s: Vec<Subgroup>| s.iter().map(|x| x.log_order()).collect::<Vec<_>>();
    let element_orders = (g.order() <= ELEMENT_SCAN_LIMIT).then(|| {
        let mut h: BTreeMap<u32, usize> = BTreeMap::new();
        for x in 0..g.order() {
            let o = g.element_order_idx(x);
            *h.entry(log_p(o, g.p())).or_insert(0) += 1;
        }
        h.into_iter().collect()
    });
    GroupFingerprint {
        log_order: g.n_gens(),
        class: g.nilpotency_class(),
        rank: g.rank(),
        abelian: g
            .is_abelian()
            .then(|| g.abelian_invariants().expect("abelian")),
        abelianization: g.abelianization_type(),
        lower_central_logs: logs(g.lower_central_series()),
        upper_central_logs: logs(g.upper_central_series()),
        jennings_dims: JenningsData::new(g).dims().to_vec(),
        element_orders,
    }
}

fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// A group known up to isomorphism: its fingerprint, plus the group itself
/// for an isomorphism search when two fingerprints agree.
#[derive(Clone, Debug, Serialize)]
pub struct IsoType {
    pub fingerprint: GroupFingerprint,
    #[serde(skip)]
    pub group: PcGroup,
}

impl IsoType {
    pub fn of(g: PcGroup) -> Self {
        IsoType {
            fingerprint: fingerprint(&g),
            group: g,
        }
    }
}

/// Isomorphism type of a subgroup: abelian invariants, or a fingerprint
/// tagged non-abelian.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubgroupType {
    Abelian(Vec<u32>),
    NonAbelian(IsoType),
}

impl PartialEq for SubgroupType {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SubgroupType::Abelian(a), SubgroupType::Abelian(b)) => a == b,
            (SubgroupType::NonAbelian(a), SubgroupType::NonAbelian(b)) => {
                a.fingerprint == b.fingerprint
            }
            _ => false,
        }
    }
}

pub fn subgroup_type(g: &PcGroup, h: &Subgroup) -> Result<SubgroupType> {
    if h.is_abelian(g) {
        return Ok(SubgroupType::Abelian(abelian_invariants_of_subgroup(g, h)?));
    }
    Ok(SubgroupType::NonAbelian(IsoType::of(
        g.subgroup_as_group(h)?.group,
    )))
}

/// Class and lower central terms `gamma_i`, `i >= 2`. They are invariants
/// when `hypotheses_hold`: `p` odd, `G` 2-generated, `gamma_3(G)` central of
/// exponent `p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LowerCentralData {
    pub hypotheses_hold: bool,
    pub class: usize,
    pub terms: Vec<SubgroupType>,
}

pub fn lower_central_data(g: &PcGroup) -> Result<LowerCentralData> {
    let lcs = g.lower_central_series();
    let g3 = g.gamma(3);
    let hypotheses_hold = g.p() % 2 == 1
        && g.rank() <= 2
        && g3.is_subgroup_of(g, &g.center())
        && g.agemo_of(&g3, 1).is_trivial();
    let terms = lcs[1..lcs.len() - 1]
        .iter()
        .map(|s| subgroup_type(g, s))
        .collect::<Result<_>>()?;
    Ok(LowerCentralData {
        hypotheses_hold,
        class: lcs.len() - 1,
        terms,
    })
}

/// `(class, types of gamma_i for i >= 2)` when the hypotheses hold.
pub fn lower_central_invariant(g: &PcGroup) -> Result<Option<(usize, Vec<SubgroupType>)>> {
    let d = lower_central_data(g)?;
    Ok(d.hypotheses_hold.then_some((d.class, d.terms)))
}

/// `sum over classes g^G of log_p |C_G(g) : Phi(C_G(g))|`.
pub fn roggenkamp(g: &PcGroup) -> Result<u64> {
    Ok(g.conjugacy_classes()?
        .iter()
        .map(|c| g.rank_of(&c.centralizer) as u64)
        .sum())
}

/// Data of `I/I^m`: the layer dimensions of `I^i / I^{i+1}` for `i < m`
/// and the part of the `Jen(G)` fingerprint living in degrees below `m`.
///
/// Equal truncated fingerprints do not certify `I(kG)/I(kG)^m ≅ I(kH)/I(kH)^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedFingerprint {
    pub m: usize,
    pub layer_dims: Vec<usize>,
    pub jen_dims: Vec<usize>,
    pub bracket_dims: Vec<(usize, usize, usize)>,
    pub pmap_image_dims: Vec<(usize, usize)>,
    pub pmap_kernel_counts: Vec<(usize, usize)>,
}

pub fn truncated_fingerprint(g: &PcGroup, m: usize) -> Result<TruncatedFingerprint> {
    if m < 2 {
        return Err(MipError::usage("truncation needs m >= 2"));
    }
    let jd = JenningsData::new(g);
    Ok(truncate(
        &jd,
        &JenLie::new(g, &jd).fingerprint(),
        g.p() as usize,
        m,
    ))
}

fn truncate(jd: &JenningsData, jen: &JenFingerprint, p: usize, m: usize) -> TruncatedFingerprint {
    let counts = jd.monomial_weight_counts();
    TruncatedFingerprint {
        m,
        layer_dims: (1..m)
            .map(|i| counts.get(i).copied().unwrap_or(0))
            .collect(),
        jen_dims: jen.dims.iter().take(m - 1).copied().collect(),
        bracket_dims: jen
            .bracket_dims
            .iter()
            .copied()
            .filter(|&(a, b, _)| a + b < m)
            .collect(),
        pmap_image_dims: jen
            .pmap_image_dims
            .iter()
            .copied()
            .filter(|&(n, _)| p * n < m)
            .collect(),
        pmap_kernel_counts: jen
            .pmap_kernel_counts
            .iter()
            .copied()
            .filter(|&(n, _)| n < m)
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObeliskFlags {
    pub is_obelisk: bool,
    pub small_prime: bool,
    pub degenerate: bool,
    pub framed: Option<bool>,
}

pub fn obelisk_flags(g: &PcGroup) -> ObeliskFlags {
    let is_ob = obelisk::is_obelisk(g);
    ObeliskFlags {
        is_obelisk: is_ob,
        small_prime: g.p() <= 3,
        degenerate: is_ob && g.nilpotency_class() == 2,
        framed: if is_ob {
            obelisk::is_framed(g).ok()
        } else {
            None
        },
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BatteryOptions {
    /// `m` of the truncated fingerprint.
    pub truncation: usize,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        BatteryOptions { truncation: 4 }
    }
}

/// The invariant battery. Fields appear in a fixed order; JSON output is
/// byte-stable.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub p: u64,
    pub log_order: usize,
    pub class: usize,
    pub min_generators: usize,
    pub abelianization: Vec<u32>,
    pub frattini_quotient_rank: usize,
    /// `rank D_n(G)/D_{n+1}(G)`.
    pub d_ranks: Vec<usize>,
    /// `rank D_n(gamma_2)/D_{n+1}(gamma_2)`.
    pub d_ranks_gamma2: Vec<usize>,
    /// Type of `gamma_2(G)` when abelian.
    pub gamma2_type: Option<Vec<u32>>,
    /// Type of `Gamma(G) = Z(G) ∩ gamma_2(G)`.
    pub gamma_cap_type: Vec<u32>,
    pub sandling_quotient: IsoType,
    pub jen: JenFingerprint,
    pub two_generated: bool,
    /// `G / gamma_2^p gamma_4` for 2-generated `G`.
    pub two_gen_quotient: Field<IsoType>,
    pub baginski: Field<BaginskiValue>,
    pub lower_central: LowerCentralData,
    pub roggenkamp: Field<u64>,
    pub obelisk: ObeliskFlags,
    pub truncated: TruncatedFingerprint,
    pub settled: SettledFlags,
}

impl InvariantReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn battery(g: &PcGroup) -> Result<InvariantReport> {
    battery_with(g, BatteryOptions::default())
}

pub fn battery_with(g: &PcGroup, opts: BatteryOptions) -> Result<InvariantReport> {
    if opts.truncation < 2 {
        return Err(MipError::usage("truncation needs m >= 2"));
    }
    let jd = JenningsData::new(g);
    let jen = JenLie::new(g, &jd).fingerprint();
    let g2 = g.gamma(2);
    let d_ranks_gamma2 = if g2.is_trivial() {
        Vec::new()
    } else {
        JenningsData::new(&g.subgroup_as_group(&g2)?.group)
            .dims()
            .to_vec()
    };
    let gamma2_type = if g2.is_abelian(g) {
        Some(abelian_invariants_of_subgroup(g, &g2)?)
    } else {
        None
    };
    let two_generated = g.rank() <= 2;
    let two_gen_quotient = if two_generated {
        Field::Value(IsoType::of(two_gen_quotient(g)?))
    } else {
        Field::NotApplicable("G needs more than 2 generators".into())
    };
    let baginski = match baginski_centralizer(g)? {
        Some(v) => Field::Value(v),
        None => Field::NotApplicable("G / C_G(gamma_2/Phi(gamma_2)) is not cyclic".into()),
    };
    Ok(InvariantReport {
        p: g.p(),
        log_order: g.n_gens(),
        class: g.nilpotency_class(),
        min_generators: g.rank(),
        abelianization: g.abelianization_type(),
        frattini_quotient_rank: g.n_gens() - g.frattini().log_order(),
        d_ranks: jd.dims().to_vec(),
        d_ranks_gamma2,
        gamma2_type,
        gamma_cap_type: abelian_invariants_of_subgroup(g, &g.gamma_cap())?,
        sandling_quotient: IsoType::of(sandling_quotient(g)?),
        two_generated,
        two_gen_quotient,
        baginski,
        lower_central: lower_central_data(g)?,
        roggenkamp: Field::from_result(roggenkamp(g)),
        obelisk: obelisk_flags(g),
        truncated: truncate(&jd, &jen, g.p() as usize, opts.truncation),
        jen,
        settled: settled_flags(g),
    })
}
