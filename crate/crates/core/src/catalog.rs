//! Built-in presentations, addressed as `catalog:<name>`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{MipError, Result};
use crate::pcgroup::PcGroup;
use crate::presentation::{parse_file, PresentationFile};

const FILES: &[(&str, &str)] = &[
    ("5_6_553", include_str!("../catalog/5_6_553.pc")),
    ("5_6_553_gap", include_str!("../catalog/5_6_553_gap.pc")),
    ("5_6_554", include_str!("../catalog/5_6_554.pc")),
    ("5_6_554_gap", include_str!("../catalog/5_6_554_gap.pc")),
    ("c2", include_str!("../catalog/c2.pc")),
    ("c25", include_str!("../catalog/c25.pc")),
    ("c27", include_str!("../catalog/c27.pc")),
    ("c2xc2", include_str!("../catalog/c2xc2.pc")),
    ("c2xc2xc2xc2", include_str!("../catalog/c2xc2xc2xc2.pc")),
    ("c2xd8", include_str!("../catalog/c2xd8.pc")),
    ("c3", include_str!("../catalog/c3.pc")),
    ("c3xc3", include_str!("../catalog/c3xc3.pc")),
    ("c4", include_str!("../catalog/c4.pc")),
    ("c4xc4", include_str!("../catalog/c4xc4.pc")),
    ("c5", include_str!("../catalog/c5.pc")),
    ("c5xc5", include_str!("../catalog/c5xc5.pc")),
    ("c7", include_str!("../catalog/c7.pc")),
    ("c9", include_str!("../catalog/c9.pc")),
    ("c9xc3", include_str!("../catalog/c9xc3.pc")),
    (
        "class2_3gen_3_5",
        include_str!("../catalog/class2_3gen_3_5.pc"),
    ),
    ("d16", include_str!("../catalog/d16.pc")),
    ("d32", include_str!("../catalog/d32.pc")),
    ("d64", include_str!("../catalog/d64.pc")),
    ("d8", include_str!("../catalog/d8.pc")),
    (
        "extraspecial_p2_3",
        include_str!("../catalog/extraspecial_p2_3.pc"),
    ),
    (
        "extraspecial_p2_5",
        include_str!("../catalog/extraspecial_p2_5.pc"),
    ),
    ("heis3", include_str!("../catalog/heis3.pc")),
    ("heis3xc9", include_str!("../catalog/heis3xc9.pc")),
    ("heis5", include_str!("../catalog/heis5.pc")),
    ("heis7", include_str!("../catalog/heis7.pc")),
    ("kg_3_6", include_str!("../catalog/kg_3_6.pc")),
    ("kg_5_6", include_str!("../catalog/kg_5_6.pc")),
    ("maxclass_3_4", include_str!("../catalog/maxclass_3_4.pc")),
    ("maxclass_3_5", include_str!("../catalog/maxclass_3_5.pc")),
    (
        "metacyclic_9_9",
        include_str!("../catalog/metacyclic_9_9.pc"),
    ),
    (
        "obelisk_5_5_framed",
        include_str!("../catalog/obelisk_5_5_framed.pc"),
    ),
    (
        "obelisk_5_5_nonframed",
        include_str!("../catalog/obelisk_5_5_nonframed.pc"),
    ),
    (
        "obelisk_5_6_framed",
        include_str!("../catalog/obelisk_5_6_framed.pc"),
    ),
    (
        "obelisk_5_6_nonframed",
        include_str!("../catalog/obelisk_5_6_nonframed.pc"),
    ),
    (
        "obelisk_7_5_framed",
        include_str!("../catalog/obelisk_7_5_framed.pc"),
    ),
    (
        "obelisk_7_5_nonframed",
        include_str!("../catalog/obelisk_7_5_nonframed.pc"),
    ),
    (
        "obelisk_7_6_framed",
        include_str!("../catalog/obelisk_7_6_framed.pc"),
    ),
    (
        "obelisk_7_6_nonframed",
        include_str!("../catalog/obelisk_7_6_nonframed.pc"),
    ),
    ("q16", include_str!("../catalog/q16.pc")),
    ("q8", include_str!("../catalog/q8.pc")),
    ("sd16", include_str!("../catalog/sd16.pc")),
    (
        "twogen_class3_3_5",
        include_str!("../catalog/twogen_class3_3_5.pc"),
    ),
];

/// Witness for the order `5^6` pair, images of the generators of
/// `5_6_554` in the small group algebra of `5_6_553`.
pub const WITNESS_553_554: &str = include_str!("../../../fixtures/553_554.wit");

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    #[serde(skip)]
    pub text: &'static str,
    pub metadata: BTreeMap<String, String>,
}

impl CatalogEntry {
    pub fn file(&self) -> PresentationFile {
        parse_file(self.text).expect("catalog files parse")
    }

    pub fn group(&self) -> PcGroup {
        self.file().build().expect("catalog files are consistent")
    }

    fn meta_usize(&self, key: &str) -> Option<usize> {
        self.metadata.get(key).and_then(|v| v.parse().ok())
    }

    /// Checks consistency and the `log_order`, `class` and `log_gamma2`
    /// metadata.
    pub fn self_check(&self) -> Result<()> {
        let g = parse_file(self.text)?.build()?;
        let facts = [
            ("log_order", g.n_gens()),
            ("class", g.nilpotency_class()),
            ("log_gamma2", g.gamma(2).log_order()),
        ];
        for (key, got) in facts {
            match self.meta_usize(key) {
                Some(want) if want == got => {}
                Some(want) => {
                    return Err(MipError::Internal(format!(
                        "catalog:{}: {key} is {got}, metadata says {want}",
                        self.name
                    )))
                }
                None => {
                    return Err(MipError::Internal(format!(
                        "catalog:{}: missing {key}",
                        self.name
                    )))
                }
            }
        }
        Ok(())
    }
}

pub fn entries() -> Vec<CatalogEntry> {
    FILES
        .iter()
        .map(|&(name, text)| CatalogEntry {
            name,
            text,
            metadata: parse_file(text).map(|f| f.metadata).unwrap_or_default(),
        })
        .collect()
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| MipError::usage(format!("no catalog entry `{name}`")))
}

pub fn group(name: &str) -> Result<PcGroup> {
    entry(name)?.file().build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::serialize_presentation;

    #[test]
    fn self_check() {
        for e in entries() {
            e.self_check().unwrap();
            assert_eq!(e.metadata["name"], e.name);
        }
    }

    #[test]
    fn round_trip() {
        for e in entries() {
            let g = e.group();
            let text = serialize_presentation(&g);
            let h = crate::presentation::parse_presentation(&text).unwrap();
            assert_eq!(serialize_presentation(&h), text, "{}", e.name);
            for i in 0..g.n_gens() {
                assert_eq!(g.power_word(i), h.power_word(i));
                for j in i + 1..g.n_gens() {
                    assert_eq!(g.comm_word(j, i), h.comm_word(j, i));
                }
            }
            // the file itself, up to whitespace and exponent normalization
            let mut f = e.file();
            f.metadata.clear();
            assert_eq!(f.build().unwrap().order(), g.order());
        }
    }

    #[test]
    fn gap_and_translated_forms_agree() {
        use crate::pcgroup::{iso_search, IsoVerdict};
        for (a, b) in [("5_6_553", "5_6_553_gap"), ("5_6_554", "5_6_554_gap")] {
            let v = iso_search(&group(a).unwrap(), &group(b).unwrap(), 2_000_000).unwrap();
            assert!(
                matches!(v, IsoVerdict::Isomorphic { .. }),
                "{a} vs {b}: {v:?}"
            );
        }
    }

    #[test]
    fn unknown_name() {
        assert!(matches!(entry("nope"), Err(MipError::Usage(_))));
    }
}
