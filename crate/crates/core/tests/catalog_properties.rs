use std::sync::OnceLock;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mipkit::fpalgebra::{center_basis, AlgebraElement, AugmentationTower, JenningsData};
use mipkit::invariants::{self, FieldStatus, Verdict};
use mipkit::presentation::{parse_presentation, serialize_presentation};
use mipkit::smallalg::{self, BruteSmallAlgebra, SmallAlgebraModel, Witness};
use mipkit::{catalog, obelisk, PcGroup};

fn corpus() -> &'static [(&'static str, PcGroup)] {
    static C: OnceLock<Vec<(&'static str, PcGroup)>> = OnceLock::new();
    C.get_or_init(|| {
        catalog::entries()
            .into_iter()
            .map(|e| (e.name, e.group()))
            .collect()
    })
}

fn small() -> Vec<&'static (&'static str, PcGroup)> {
    corpus().iter().filter(|(_, g)| g.order() <= 243).collect()
}

fn hypothesis_groups() -> Vec<&'static (&'static str, PcGroup)> {
    small()
        .into_iter()
        .filter(|(_, g)| g.p() > 2 && smallalg::check_hypothesis(g).is_ok())
        .collect()
}

fn random_in_augmentation(g: &PcGroup, rng: &mut ChaCha8Rng, terms: usize) -> AlgebraElement {
    let p = g.p() as u8;
    let mut x = AlgebraElement::zero();
    for _ in 0..terms {
        let h = rng.gen_range(1..g.order());
        let c = rng.gen_range(1..p);
        x = x.add(&AlgebraElement::bar(h, p).scale(c, p), p);
    }
    x
}

#[test]
fn serialize_then_parse_is_the_identity() {
    for (name, g) in corpus() {
        let text = serialize_presentation(g);
        let back = parse_presentation(&text).unwrap();
        assert_eq!(serialize_presentation(&back), text, "{name}");
    }
}

#[test]
fn ideal_layers_count_jennings_monomials() {
    for (name, g) in small() {
        let tower = AugmentationTower::new(g).unwrap();
        let dims = tower.dims();
        let counts = JenningsData::new(g).monomial_weight_counts();
        for n in 1..dims.len() {
            let layer = dims[n - 1] - dims[n];
            assert_eq!(
                layer,
                counts.get(n).copied().unwrap_or(0),
                "{name}: layer {n}"
            );
        }
        assert_eq!(*dims.last().unwrap(), 0);
    }
}

#[test]
fn weights_are_superadditive_on_brackets_and_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, g) in small() {
        let jd = JenningsData::new(g);
        let p = g.p() as u32;
        for _ in 0..200 {
            let x = random_in_augmentation(g, &mut rng, 3);
            let y = random_in_augmentation(g, &mut rng, 3);
            let (Some(wx), Some(wy)) = (jd.weight(g, &x), jd.weight(g, &y)) else {
                continue;
            };
            if let Some(w) = jd.weight(g, &x.lie_bracket(g, &y)) {
                assert!(w >= wx + wy, "{name}: wt[x,y] = {w} < {wx} + {wy}");
            }
            if let Some(w) = jd.weight(g, &x.pow(g, p)) {
                assert!(
                    w >= p as usize * wx,
                    "{name}: wt(x^p) = {w} < p wt(x) = {}",
                    p as usize * wx
                );
            }
        }
    }
}

#[test]
fn center_basis_is_central() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, g) in small().into_iter().filter(|(_, g)| g.order() <= 81) {
        let z = center_basis(g).unwrap();
        for _ in 0..100 {
            let y = random_in_augmentation(g, &mut rng, 4);
            for c in z.rows() {
                assert_eq!(c.mul(g, &y), y.mul(g, c), "{name}");
            }
        }
    }
}

#[test]
fn identity_witness_passes_on_hypothesis_groups() {
    let groups = hypothesis_groups();
    assert!(groups.len() >= 10);
    for (name, g) in groups {
        let r = smallalg::verify_witness(g, g, &Witness::identity(g.n_gens())).unwrap();
        assert_eq!(r.verdict, smallalg::Verdict::Pass, "{name}: {}", r.note);
    }
}

#[test]
fn unit_group_order_of_the_small_algebra() {
    for (name, g) in hypothesis_groups() {
        let b = BruteSmallAlgebra::new(g).unwrap();
        let log_ab = g.n_gens() - g.gamma(2).log_order();
        let ab_order = (g.p() as usize).pow(log_ab as u32);
        assert_eq!(
            b.log_unit_order(),
            g.gamma(2).log_order() + ab_order - 1,
            "{name}"
        );
    }
}

#[test]
fn heavy_a_generators_are_central_in_class_three() {
    for (name, g) in hypothesis_groups() {
        let m = SmallAlgebraModel::new(g).unwrap();
        assert!(g.nilpotency_class() <= 3);
        for a in m.a_generators() {
            if a.delta.weight() >= 3 {
                assert!(a.is_central(), "{name}: {}", a.delta);
            }
        }
    }
}

#[test]
fn structure_report_on_hypothesis_groups() {
    for (name, g) in hypothesis_groups() {
        let r = smallalg::structure_report(g).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.clauses);
    }
}

#[test]
fn known_pairs() {
    let b = |n: &str| invariants::battery(&catalog::group(n).unwrap()).unwrap();
    for (x, y) in [
        ("c4", "c2xc2"),
        ("d8", "q8"),
        ("c9", "c3xc3"),
        ("heis3", "extraspecial_p2_3"),
    ] {
        let c = invariants::compare(&b(x), &b(y));
        assert_eq!(c.verdict, Verdict::Distinguished, "{x} vs {y}");
    }
    for (x, y) in [("5_6_553", "5_6_553_gap"), ("5_6_554", "5_6_554_gap")] {
        let c = invariants::compare(&b(x), &b(y));
        assert_eq!(c.verdict, Verdict::IndistinguishableByBattery, "{x} vs {y}");
        assert!(c.fields.iter().all(|f| f.status != FieldStatus::Differs));
    }
}

#[test]
fn k_g_contains_z2_and_is_exact() {
    let mut seen = 0;
    for (name, g) in corpus() {
        if let Ok(d) = invariants::compute_k_g(g) {
            assert!(d.z2.is_subgroup_of(g, &d.k), "{name}");
            assert!(d.exact(), "{name}: {d:?}");
            seen += 1;
        }
    }
    assert!(
        seen >= 2,
        "only {seen} catalog groups meet the K_G hypotheses"
    );
}

#[test]
fn catalog_obelisks_are_verified() {
    let obelisks: Vec<_> = corpus()
        .iter()
        .filter(|(n, _)| n.starts_with("obelisk_"))
        .collect();
    assert_eq!(obelisks.len(), 8);
    for (name, g) in obelisks {
        assert!(obelisk::is_obelisk(g), "{name}");
        assert!(obelisk::rank_pattern_check(g).unwrap().passed(), "{name}");
        assert!(
            obelisk::dimension_series_check(g)
                .unwrap()
                .iter()
                .all(|r| r.matches),
            "{name}"
        );
        let f = obelisk::framed_report(g).unwrap();
        let framed = f.framed().expect("both framing criteria agree");
        assert_eq!(
            framed,
            name.ends_with("_framed") && !name.ends_with("nonframed"),
            "{name}"
        );
    }
    for (name, g) in corpus() {
        if !name.starts_with("obelisk_") && g.p() > 3 && obelisk::is_obelisk(g) {
            // only the literal reading with gamma_3 = G^p = 1
            assert!(obelisk::obelisk_report(g).unwrap().degenerate, "{name}");
        }
    }
}

#[test]
fn roggenkamp_of_abelian_groups() {
    for (name, g) in corpus().iter().filter(|(_, g)| g.is_abelian()) {
        let want = (g.order() * g.rank()) as u64;
        assert_eq!(invariants::roggenkamp(g).unwrap(), want, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutator_expansions(k in 0usize..1000, a in 0usize..1 << 20, b in 0usize..1 << 20, c in 0usize..1 << 20) {
        let (_, g) = &corpus()[k % corpus().len()];
        let n = g.order();
        let (a, b, c) = (g.from_idx(a % n), g.from_idx(b % n), g.from_idx(c % n));
        // [a, bc] = [a, c][a, b]^c and [ab, c] = [a, c]^b [b, c]
        let lhs = g.comm(&a, &g.mul(&b, &c));
        let rhs = g.mul(&g.comm(&a, &c), &g.conj(&g.comm(&a, &b), &c));
        prop_assert_eq!(lhs, rhs);
        let lhs = g.comm(&g.mul(&a, &b), &c);
        let rhs = g.mul(&g.conj(&g.comm(&a, &c), &b), &g.comm(&b, &c));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
    }

    #[test]
    fn quotients_by_series_terms_are_homomorphic(k in 0usize..1000, i in 2usize..5, a in 0usize..1 << 20, b in 0usize..1 << 20) {
        let (_, g) = &corpus()[k % corpus().len()];
        let q = g.quotient(&g.gamma(i)).unwrap();
        let n = g.order();
        let (a, b) = (g.from_idx(a % n), g.from_idx(b % n));
        let qg = q.group();
        prop_assert_eq!(qg.mul(&q.project(g, &a), &q.project(g, &b)), q.project(g, &g.mul(&a, &b)));
    }

    #[test]
    fn series_logs_add_up(k in 0usize..1000) {
        let (_, g) = &corpus()[k % corpus().len()];
        let lcs = g.lower_central_series();
        let ucs = g.upper_central_series();
        prop_assert!(lcs.len() <= g.n_gens() + 1 && ucs.len() <= g.n_gens() + 1);
        prop_assert_eq!(lcs.first().unwrap().log_order(), g.n_gens());
        prop_assert!(lcs.last().unwrap().is_trivial());
        prop_assert_eq!(ucs.last().unwrap().log_order(), g.n_gens());
        prop_assert_eq!(lcs.len(), ucs.len());
        for w in lcs.windows(2) {
            prop_assert!(w[1].is_subgroup_of(g, &w[0]));
        }
    }

    #[test]
    fn lower_central_invariant_survives_relabeling(k in 0usize..1000, seed in any::<u64>()) {
        let (_, g) = &corpus()[k % corpus().len()];
        let h = g.random_relabeling(&mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let a = invariants::lower_central_invariant(g).unwrap();
        let b = invariants::lower_central_invariant(&h).unwrap();
        prop_assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
