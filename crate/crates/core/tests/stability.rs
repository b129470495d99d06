use std::collections::BTreeMap;
use wheelhouse::exactla::dim_irrep;
use wheelhouse::operads::{OperadSpec, OperadTable};
use wheelhouse::stability::*;
use wheelhouse::wheeledbar::{bigraded_homology, coprop_completion, trivial_wheeling};
use wheelhouse::Truncation;

fn pairs(max_p: usize) -> Vec<(usize, usize)> {
    (0..=max_p).flat_map(|p| (0..=p).map(move |q| (p, q))).collect()
}

fn value(r: &ComparisonReport, quantity: &str, n: usize, w: usize, d: usize, p: usize, q: usize) -> (usize, Option<usize>) {
    let b = r
        .blocks
        .iter()
        .find(|b| b.quantity == quantity && (b.dim_v, b.w, b.d, b.p, b.q) == (Some(n), w, d, p, q))
        .unwrap_or_else(|| panic!("no {quantity} row at {:?}", (n, w, d, p, q)));
    (b.left, b.right)
}

#[test]
fn main1_agrees_in_the_stable_range() {
    for name in ["com", "lie"] {
        let op = OperadTable::builtin(name, 5).unwrap();
        let r = compare_main1(&op, &[4], &Truncation::new(3, 3, 3), &pairs(3)).unwrap();
        assert!(r.passed(), "{}", r.to_table());
        let strict: Vec<_> = r.blocks.iter().filter(|b| b.dim_v.unwrap() > b.d + b.p).collect();
        assert!(strict.iter().all(|b| b.matches));
        for p in 0..=3 {
            for q in 0..=p {
                for d in 0..4 - p {
                    assert!(strict.iter().any(|b| (b.p, b.q, b.d, b.quantity.as_str()) == (p, q, d, "homology")));
                }
            }
        }
    }
}

#[test]
fn main1_frozen_values() {
    let com = OperadTable::builtin("com", 5).unwrap();
    let lie = OperadTable::builtin("lie", 5).unwrap();
    let t = Truncation::new(3, 3, 3);
    let rc = compare_main1(&com, &[4], &t, &pairs(3)).unwrap();
    let rl = compare_main1(&lie, &[4], &t, &pairs(3)).unwrap();
    // Der₁ paired with V*: the trace part of V* ⊗ S²V, resp. V* ⊗ Λ²V.
    assert_eq!(value(&rc, "homology", 4, 1, 1, 1, 0), (1, Some(1)));
    assert_eq!(value(&rl, "homology", 4, 1, 1, 1, 0), (1, Some(1)));
    // Pairing with Hom(V^{⊗2}, V): three contractions up to symmetry.
    assert_eq!(value(&rc, "homology", 4, 1, 1, 2, 1), (3, Some(3)));
    assert_eq!(value(&rl, "homology", 4, 1, 1, 2, 1), (3, Some(3)));
    // S²V ⊂ H₁^{(2)} of the free Lie derivations; nothing for com.
    assert_eq!(value(&rl, "homology", 4, 2, 1, 2, 0), (1, Some(1)));
    assert_eq!(value(&rc, "homology", 4, 2, 1, 2, 0), (0, Some(0)));
    assert_eq!(value(&rc, "chains", 4, 2, 1, 3, 1), (4, Some(4)));
    assert_eq!(value(&rl, "chains", 4, 2, 1, 3, 1), (8, Some(8)));
    // Constant coefficients, p = q: the Brauer count p!.
    assert_eq!(value(&rl, "homology", 4, 0, 0, 3, 3), (6, Some(6)));
}

#[test]
fn main1_reports_but_does_not_assert_outside_the_range() {
    let lie = OperadTable::builtin("lie", 5).unwrap();
    let r = compare_main1(&lie, &[3], &Truncation::new(2, 2, 2), &[(2, 0)]).unwrap();
    assert!(r.blocks.iter().any(|b| !b.in_stable_range));
    assert!(r.passed());
}

#[test]
fn main2_agrees_in_the_stable_range() {
    let com = OperadTable::builtin("com", 5).unwrap();
    let r = compare_main2(&com, &[3, 4], &Truncation::new(3, 3, 3), &pairs(3)).unwrap();
    assert!(r.passed(), "{}", r.to_table());
    assert_eq!(value(&r, "homology", 4, 1, 1, 2, 1), (1, Some(1)));
    assert_eq!(value(&r, "sder_homology", 4, 1, 1, 2, 1), (1, Some(1)));
    let ass = OperadTable::builtin("ass", 5).unwrap();
    let r = compare_main2(&ass, &[3], &Truncation::new(2, 2, 2), &pairs(2)).unwrap();
    assert!(r.passed(), "{}", r.to_table());
    assert!(r.blocks.iter().any(|b| b.quantity == "homology" && b.in_stable_range && b.left > 0));
}

#[test]
fn newfuchs_instances() {
    let com = OperadTable::builtin("com", 5).unwrap();
    let r = compare_newfuchs(&com, 4, 1, 3).unwrap();
    assert!(r.passed(), "{}", r.to_table());
    for d in [0, 2, 3] {
        assert_eq!(value(&r, "full_homology", 4, 1, d, 0, 0).0, 0);
    }
    // All of Der₁ = V* ⊗ S²V survives.
    assert_eq!(value(&r, "full_homology", 4, 1, 1, 0, 0), (40, None));
    assert_eq!(value(&r, "homology", 4, 1, 1, 2, 1), (3, Some(3)));

    let r = compare_newfuchs(&com, 5, 2, 3).unwrap();
    assert!(r.passed(), "{}", r.to_table());
    for d in [0, 1, 3] {
        assert_eq!(value(&r, "full_homology", 5, 2, d, 0, 0).0, 0);
    }
    // Λ²Der₁ modulo the image of Der₂.
    assert_eq!(value(&r, "full_homology", 5, 2, 2, 0, 0).0, 2775 - 175);
}

#[test]
fn lqt_instance() {
    let k = OperadTable::new(OperadSpec::alg1_ground_field()).unwrap();
    let r = compare_lqt(&k, 3, 4).unwrap();
    let col = |quantity: &str, n: usize| -> Vec<usize> { (0..n).map(|d| value(&r, quantity, 3, 0, d, 0, 0).0).collect() };
    assert_eq!(col("homology", 5), vec![1, 1, 0, 1, 1]);
    assert_eq!(col("sder_homology", 4), vec![1, 0, 0, 1]);
    assert!(r.blocks.iter().all(|b| b.matches), "{}", r.to_table());
    assert!(compare_lqt(&OperadTable::builtin("com", 4).unwrap(), 3, 2).is_err());
}

#[test]
fn report_round_trips_through_json() {
    let com = OperadTable::builtin("com", 4).unwrap();
    let r = compare_main1(&com, &[3], &Truncation::new(2, 2, 2), &pairs(2)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let (json, txt) = r.write(dir.path()).unwrap();
    assert!(json.ends_with("main1_com.json"));
    let back: ComparisonReport = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(back, r);
    let table = std::fs::read_to_string(txt).unwrap();
    assert!(table.starts_with("# main1 com PASS"));
    assert!(serde_json::to_value(&r).unwrap()["blocks"][0].get("n").is_none());
    assert!(serde_json::to_value(&r).unwrap()["blocks"][0].get("dimV").is_some());
}

fn isotypic(name: &str, t: &Truncation) -> (IsotypicHomology, wheelhouse::wheeledbar::BigradedHomology) {
    let op = OperadTable::builtin(name, t.max_arity + 2).unwrap();
    let wb = trivial_wheeling(&op).wheeled_bar(t, true).unwrap();
    (isotypic_bigraded(&wb, t).unwrap(), bigraded_homology(&wb, t).unwrap())
}

#[test]
fn multiplicities_account_for_the_coprop_dimension() {
    let t = Truncation::new(4, 4, 2);
    for name in ["com", "lie", "ass"] {
        let (iso, h) = isotypic(name, &t);
        for p in 0..=4 {
            for q in 0..=p.min(2) {
                let tt = Truncation::new(p, p - q, 2);
                let total: BTreeMap<_, _> = coprop_completion(&h, p, q, &tt).unwrap().into_iter().filter(|(_, v)| *v > 0).collect();
                let mut acc = BTreeMap::new();
                for (a, b) in shapes(p, q) {
                    let f = (dim_irrep(&a) * dim_irrep(&b)) as usize;
                    for (k, m) in repstab_multiplicities(&iso, &a, &b, &tt).unwrap() {
                        *acc.entry(k).or_insert(0) += m * f;
                    }
                }
                assert_eq!(acc, total, "{name} p={p} q={q}");
            }
        }
    }
}

#[test]
fn multiplicity_examples() {
    let t = Truncation::new(4, 4, 2);
    let (lie, h) = isotypic("lie", &t);
    let trivial = repstab_multiplicities(&lie, &[], &[], &Truncation::new(0, 0, 2)).unwrap();
    let c00: BTreeMap<_, _> = coprop_completion(&h, 0, 0, &Truncation::new(0, 0, 2)).unwrap().into_iter().filter(|(_, v)| *v > 0).collect();
    assert_eq!(trivial, c00);
    // S^n(V) ⊂ H₁^{(n)} for free Lie derivations.
    for n in 2..=4 {
        let m = repstab_multiplicities(&lie, &[n], &[], &Truncation::new(n, n, 2)).unwrap();
        assert_eq!(m.get(&(n, 1)), Some(&1), "n = {n}");
    }
    let (com, _) = isotypic("com", &t);
    let m = repstab_multiplicities(&com, &[1], &[], &Truncation::new(1, 1, 2)).unwrap();
    assert_eq!(m, BTreeMap::from([((1, 1), 1)]));
    let main1 = compare_main1(&OperadTable::builtin("com", 4).unwrap(), &[4], &Truncation::new(1, 1, 2), &[(1, 0)]).unwrap();
    assert_eq!(value(&main1, "homology", 4, 1, 1, 1, 0).0, 1);
    assert!(repstab_multiplicities(&com, &[], &[1], &Truncation::new(1, 1, 2)).unwrap().is_empty());
    assert!(repstab_multiplicities(&com, &[5], &[], &Truncation::new(5, 5, 2)).is_err());
}

#[test]
fn sder_matches_the_semidirect_algebra() {
    for name in ["com", "ass"] {
        let op = OperadTable::builtin(name, 4).unwrap();
        let r = compare_semidirect(&op, 3, 2, 2).unwrap();
        assert!(r.passed(), "{}", r.to_table());
        assert!(r.blocks.iter().all(|b| b.in_stable_range));
        assert!(r.blocks.iter().any(|b| b.left > 0 && b.w > 0));
    }
}

#[test]
fn calchom_as_a_comparison() {
    let lie = OperadTable::builtin("lie", 5).unwrap();
    let r = compare_calchom(&lie, &Truncation::new(3, 3, 3)).unwrap();
    assert!(r.passed(), "{}", r.to_table());
    assert!(r.blocks.iter().any(|b| b.quantity == "wheel_homology" && b.left > 0));
}
