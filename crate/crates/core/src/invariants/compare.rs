use std::fmt::Debug;

use serde::Serialize;

use crate::pcgroup::{iso_search, IsoVerdict};

use super::{Field, InvariantReport, IsoType, SubgroupType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldStatus {
    Equal,
    /// The values provably differ, so `kG` and `kH` are not isomorphic.
    Differs,
    /// An isomorphism search ran out of budget.
    Unknown,
    /// A value could not be computed within a resource bound.
    Unavailable,
    /// The values are not invariants for this pair, so a difference means
    /// nothing.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldComparison {
    pub field: String,
    pub status: FieldStatus,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Distinguished,
    IndistinguishableByBattery,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub verdict: Verdict,
    pub fields: Vec<FieldComparison>,
}

impl Comparison {
    pub fn with_status(&self, s: FieldStatus) -> impl Iterator<Item = &FieldComparison> {
        self.fields.iter().filter(move |f| f.status == s)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison serializes")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CompareOptions {
    /// Node budget of each isomorphism search; `0` skips the searches.
    pub iso_budget: u64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            iso_budget: 200_000,
        }
    }
}

pub fn compare(a: &InvariantReport, b: &InvariantReport) -> Comparison {
    compare_with(a, b, CompareOptions::default())
}

struct Cmp {
    fields: Vec<FieldComparison>,
    opts: CompareOptions,
}

impl Cmp {
    fn push(&mut self, field: &str, status: FieldStatus, detail: String) {
        self.fields.push(FieldComparison {
            field: field.into(),
            status,
            detail,
        });
    }

    fn strict<T: PartialEq + Debug>(&mut self, field: &str, a: &T, b: &T) {
        if a == b {
            self.push(field, FieldStatus::Equal, String::new());
        } else {
            self.push(field, FieldStatus::Differs, format!("{a:?} vs {b:?}"));
        }
    }

    fn info<T: PartialEq + Debug>(&mut self, field: &str, a: &T, b: &T) {
        if a == b {
            self.push(field, FieldStatus::Equal, String::new());
        } else {
            self.push(field, FieldStatus::Informational, format!("{a:?} vs {b:?}"));
        }
    }

    fn iso(&mut self, field: &str, a: &IsoType, b: &IsoType) {
        if a.fingerprint != b.fingerprint {
            let detail = format!(
                "fingerprints differ: {:?} vs {:?}",
                a.fingerprint, b.fingerprint
            );
            return self.push(field, FieldStatus::Differs, detail);
        }
        if a.fingerprint.abelian.is_some() {
            // abelian invariants are a complete isomorphism invariant
            return self.push(field, FieldStatus::Equal, "abelian, same invariants".into());
        }
        if self.opts.iso_budget == 0 {
            return self.push(
                field,
                FieldStatus::Unknown,
                "isomorphism search skipped".into(),
            );
        }
        match iso_search(&a.group, &b.group, self.opts.iso_budget) {
            Ok(IsoVerdict::Isomorphic { .. }) => {
                self.push(field, FieldStatus::Equal, "isomorphism found".into())
            }
            Ok(IsoVerdict::NonIsomorphic { reason }) => {
                self.push(field, FieldStatus::Differs, reason)
            }
            Ok(IsoVerdict::Unknown { nodes }) => self.push(
                field,
                FieldStatus::Unknown,
                format!("search budget exhausted after {nodes} nodes"),
            ),
            Err(e) => self.push(field, FieldStatus::Unavailable, e.to_string()),
        }
    }

    fn subgroup_type(&mut self, field: &str, a: &SubgroupType, b: &SubgroupType) {
        match (a, b) {
            (SubgroupType::NonAbelian(x), SubgroupType::NonAbelian(y)) => self.iso(field, x, y),
            _ => self.strict(field, a, b),
        }
    }

    fn optional<T>(
        &mut self,
        field: &str,
        a: &Field<T>,
        b: &Field<T>,
        both: impl FnOnce(&mut Self, &T, &T),
    ) {
        match (a, b) {
            (Field::Value(x), Field::Value(y)) => both(self, x, y),
            (Field::Unavailable(e), _) | (_, Field::Unavailable(e)) => {
                self.push(field, FieldStatus::Unavailable, e.clone())
            }
            (Field::NotApplicable(_), Field::NotApplicable(_)) => self.push(
                field,
                FieldStatus::Equal,
                "not applicable to either group".into(),
            ),
            _ => self.push(
                field,
                FieldStatus::Informational,
                "applicable to one group only".into(),
            ),
        }
    }
}

/// Compares two batteries. Only differences in invariant fields count;
/// `Unknown` fields never decide the verdict, and a single `Unavailable`
/// field without any difference makes it inconclusive.
pub fn compare_with(a: &InvariantReport, b: &InvariantReport, opts: CompareOptions) -> Comparison {
    let mut c = Cmp {
        fields: Vec::new(),
        opts,
    };
    c.strict("p", &a.p, &b.p);
    c.strict("log_order", &a.log_order, &b.log_order);
    let class_is_invariant = a.class <= 2
        || b.class <= 2
        || a.lower_central.hypotheses_hold
        || b.lower_central.hypotheses_hold;
    if class_is_invariant {
        c.strict("class", &a.class, &b.class);
    } else {
        c.info("class", &a.class, &b.class);
    }
    c.strict("min_generators", &a.min_generators, &b.min_generators);
    c.strict("abelianization", &a.abelianization, &b.abelianization);
    c.strict(
        "frattini_quotient_rank",
        &a.frattini_quotient_rank,
        &b.frattini_quotient_rank,
    );
    c.strict("d_ranks", &a.d_ranks, &b.d_ranks);
    c.strict("d_ranks_gamma2", &a.d_ranks_gamma2, &b.d_ranks_gamma2);
    if a.gamma2_type.is_some() || b.gamma2_type.is_some() {
        c.strict("gamma2_type", &a.gamma2_type, &b.gamma2_type);
    } else {
        c.push(
            "gamma2_type",
            FieldStatus::Equal,
            "non-abelian in both".into(),
        );
    }
    c.strict("gamma_cap_type", &a.gamma_cap_type, &b.gamma_cap_type);
    c.iso(
        "sandling_quotient",
        &a.sandling_quotient,
        &b.sandling_quotient,
    );
    c.strict("jen", &a.jen, &b.jen);
    c.strict("two_generated", &a.two_generated, &b.two_generated);
    c.optional(
        "two_gen_quotient",
        &a.two_gen_quotient,
        &b.two_gen_quotient,
        |c, x, y| c.iso("two_gen_quotient", x, y),
    );
    c.optional("baginski", &a.baginski, &b.baginski, |c, x, y| {
        if x.log_index != y.log_index {
            c.push(
                "baginski",
                FieldStatus::Differs,
                format!("index p^{} vs p^{}", x.log_index, y.log_index),
            );
        } else {
            c.subgroup_type("baginski", &x.centralizer_type, &y.centralizer_type);
        }
    });
    let (la, lb) = (&a.lower_central, &b.lower_central);
    if la.hypotheses_hold || lb.hypotheses_hold {
        if la.terms.len() != lb.terms.len() {
            c.push(
                "lower_central",
                FieldStatus::Differs,
                format!("class {} vs {}", la.class, lb.class),
            );
        } else {
            let mut sub = Cmp {
                fields: Vec::new(),
                opts,
            };
            for (i, (x, y)) in la.terms.iter().zip(&lb.terms).enumerate() {
                sub.subgroup_type(&format!("gamma_{}", i + 2), x, y);
            }
            let status = [
                FieldStatus::Differs,
                FieldStatus::Unavailable,
                FieldStatus::Unknown,
            ]
            .into_iter()
            .find(|s| sub.fields.iter().any(|f| f.status == *s))
            .unwrap_or(FieldStatus::Equal);
            let detail = sub
                .fields
                .iter()
                .filter(|f| f.status != FieldStatus::Equal)
                .map(|f| format!("{}: {}", f.field, f.detail))
                .collect::<Vec<_>>()
                .join("; ");
            c.push("lower_central", status, detail);
        }
    } else {
        c.info("lower_central", la, lb);
    }
    c.optional("roggenkamp", &a.roggenkamp, &b.roggenkamp, |c, x, y| {
        c.strict("roggenkamp", x, y)
    });
    if a.p > 3 && a.p == b.p {
        c.strict("is_obelisk", &a.obelisk.is_obelisk, &b.obelisk.is_obelisk);
        if a.obelisk.is_obelisk && b.obelisk.is_obelisk {
            c.strict("framed", &a.obelisk.framed, &b.obelisk.framed);
        }
    } else {
        c.info("is_obelisk", &a.obelisk.is_obelisk, &b.obelisk.is_obelisk);
    }
    if a.truncated.m == b.truncated.m {
        c.strict("truncated", &a.truncated, &b.truncated);
    } else {
        c.push(
            "truncated",
            FieldStatus::Informational,
            "different truncation degrees".into(),
        );
    }

    let has = |s| c.fields.iter().any(|f| f.status == s);
    let verdict = if has(FieldStatus::Differs) {
        Verdict::Distinguished
    } else if has(FieldStatus::Unavailable) {
        Verdict::Inconclusive
    } else {
        Verdict::IndistinguishableByBattery
    };
    Comparison {
        verdict,
        fields: c.fields,
    }
}
