//! Bounded random search for obelisks among small weighted presentations.
//!
//! Generators are `a = g1`, `b = g2`, `c = g3 = [b, a]`, `g4 = a^p`,
//! `g5 = b^p` and, for the class 4 family, `g6` spanning `gamma_4`. The
//! free parameters are the exponents in the remaining commutator and power
//! relations. A hit must be a consistent presentation that satisfies the
//! obelisk predicate; nothing else is trusted.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::pcgroup::{PcGroup, RawWord};

use super::{framed_report, is_obelisk};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObeliskFamily {
    /// Order `p^5`, class 3.
    Class3,
    /// Order `p^6`, class 4.
    Class4,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub family: ObeliskFamily,
    pub seed: u64,
    pub attempt: u64,
    pub framed: bool,
    #[serde(skip)]
    pub group: PcGroup,
    pub powers: Vec<RawWord>,
    pub comms: Vec<(usize, usize, RawWord)>,
}

fn word(pairs: &[(usize, i64)]) -> RawWord {
    pairs.iter().copied().filter(|&(_, e)| e != 0).collect()
}

fn candidate(
    family: ObeliskFamily,
    p: u64,
    rng: &mut ChaCha8Rng,
) -> (Vec<RawWord>, Vec<(usize, usize, RawWord)>) {
    let mut r = || rng.gen_range(0..p as i64);
    match family {
        ObeliskFamily::Class3 => {
            let (al, be, ga, de) = (r(), r(), r(), r());
            let powers = vec![vec![(3, 1)], vec![(4, 1)], vec![], vec![], vec![]];
            let comms = vec![
                (1, 0, vec![(2, 1)]),
                (2, 0, word(&[(3, al), (4, be)])),
                (2, 1, word(&[(3, ga), (4, de)])),
            ];
            (powers, comms)
        }
        ObeliskFamily::Class4 => {
            let (al, be, ga, de, x, y, e, u, v) = (r(), r(), r(), r(), r(), r(), r(), r(), r());
            let powers = vec![
                vec![(3, 1)],
                vec![(4, 1)],
                word(&[(5, e)]),
                vec![],
                vec![],
                vec![],
            ];
            let comms = vec![
                (1, 0, vec![(2, 1)]),
                (2, 0, word(&[(3, al), (4, be), (5, x)])),
                (2, 1, word(&[(3, ga), (4, de), (5, y)])),
                (3, 1, word(&[(5, u)])),
                (4, 0, word(&[(5, v)])),
            ];
            (powers, comms)
        }
    }
}

/// Samples up to `attempts` parameter choices and returns every obelisk
/// found, in sampling order.
pub fn search_obelisks(p: u64, family: ObeliskFamily, seed: u64, attempts: u64) -> Vec<SearchHit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = match family {
        ObeliskFamily::Class3 => 5,
        ObeliskFamily::Class4 => 6,
    };
    let mut hits = Vec::new();
    for attempt in 0..attempts {
        let (powers, comms) = candidate(family, p, &mut rng);
        let Ok(g) = PcGroup::from_relations(p, m, &powers, &comms) else {
            continue;
        };
        if !is_obelisk(&g) || g.nilpotency_class() != m - 2 {
            continue;
        }
        let Ok(f) = framed_report(&g) else { continue };
        let Some(framed) = f.framed() else { continue };
        hits.push(SearchHit {
            family,
            seed,
            attempt,
            framed,
            group: g,
            powers,
            comms,
        });
    }
    hits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obelisk::{dimension_series_check, rank_pattern_check};

    #[test]
    fn finds_class_four_obelisks() {
        let hits = search_obelisks(5, ObeliskFamily::Class4, 1, 1500);
        assert!(!hits.is_empty());
        assert!(hits.iter().any(|h| h.framed) && hits.iter().any(|h| !h.framed));
        for h in hits.iter().take(4) {
            assert_eq!(h.group.order(), 5usize.pow(6));
            let rp = rank_pattern_check(&h.group).unwrap();
            assert_eq!(rp.ranks, vec![2, 1, 2, 1]);
            assert!(rp.passed());
            assert!(dimension_series_check(&h.group)
                .unwrap()
                .iter()
                .all(|r| r.matches));
            let f = framed_report(&h.group).unwrap();
            assert_ne!(f.exceptional_shape_ok, Some(false));
        }
    }
}
