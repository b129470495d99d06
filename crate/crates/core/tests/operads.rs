use wheelhouse::exactla::{q, rank_of_vectors, SparseVec};
use wheelhouse::operads::lie::Bracket;
use wheelhouse::operads::{Ass, Derivative, Operad, OperadSpec, OperadTable, WeightRule};
use wheelhouse::perm::{all_perms, factorial};

fn table(name: &str) -> OperadTable {
    OperadTable::builtin(name, 7).unwrap()
}

/// Expansion of a bracket tree as a sum of associative words.
fn ass_expand(t: &Bracket) -> Vec<(Vec<u8>, i64)> {
    match t {
        Bracket::Leaf(x) => vec![(vec![*x], 1)],
        Bracket::Br(a, b) => {
            let (ea, eb) = (ass_expand(a), ass_expand(b));
            let mut out = Vec::new();
            for (u, cu) in &ea {
                for (v, cv) in &eb {
                    out.push(([u.clone(), v.clone()].concat(), cu * cv));
                    out.push(([v.clone(), u.clone()].concat(), -cu * cv));
                }
            }
            out
        }
    }
}

fn ass_vec(ass: &Ass, t: &Bracket) -> SparseVec {
    SparseVec::from_unsorted(ass_expand(t).into_iter().map(|(w, c)| (ass.index(&w), q(c))))
}

fn lie_to_ass(lie: &OperadTable, ass: &Ass, n: usize, x: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (a, c) in x.iter() {
        let w: Vec<u8> = lie.tag(n, *a).chars().filter(|c| c.is_ascii_digit()).map(|c| c.to_digit(10).unwrap() as u8 - 1).collect();
        acc = acc.add_scaled(c, &ass_vec(ass, &Bracket::left_normed(&w)));
    }
    acc
}

#[test]
fn builtin_dimensions() {
    let (com, ass, lie, pl) = (table("com"), table("ass"), table("lie"), table("prelie"));
    for n in 1..=5 {
        assert_eq!(com.dim(n), 1);
        assert_eq!(ass.dim(n), factorial(n));
        assert_eq!(lie.dim(n), factorial(n - 1));
        assert_eq!(pl.dim(n), n.pow(n as u32 - 1));
    }
    assert_eq!(lie.dim(4), 6);
    assert_eq!(pl.dim(3), 9);
    let dual = OperadTable::new(OperadSpec::alg1_dual_numbers()).unwrap();
    assert_eq!((dual.dim(0), dual.dim(1), dual.dim(2)), (0, 2, 0));
}

#[test]
fn lie_dimension_from_bracket_span() {
    // every bracket tree on 4 leaves, expanded in Ass, spans a 6-dim space
    let ass = Ass::default();
    fn trees(leaves: &[u8]) -> Vec<Bracket> {
        if leaves.len() == 1 {
            return vec![Bracket::Leaf(leaves[0])];
        }
        let mut out = Vec::new();
        for k in 1..leaves.len() {
            for a in trees(&leaves[..k]) {
                for b in trees(&leaves[k..]) {
                    out.push(Bracket::br(a.clone(), b));
                }
            }
        }
        out
    }
    let mut vecs = Vec::new();
    for p in all_perms(4) {
        let w: Vec<u8> = p.iter().map(|&x| x as u8).collect();
        for t in trees(&w) {
            vecs.push(ass_vec(&ass, &t));
        }
    }
    assert_eq!(rank_of_vectors(&vecs, 24), 6);
}

#[test]
fn lie_straightening_agrees_with_associative_expansion() {
    let lie = table("lie");
    let ass = Ass::default();
    for n in 1..=4 {
        for m in 1..=4 {
            if n + m > 6 {
                continue;
            }
            for i in 0..n {
                for a in 0..lie.dim(n) {
                    for b in 0..lie.dim(m) {
                        let lhs = lie_to_ass(&lie, &ass, n + m - 1, &lie.compose(n, i, a, m, b));
                        let ea = lie_to_ass(&lie, &ass, n, &SparseVec::unit(a));
                        let eb = lie_to_ass(&lie, &ass, m, &SparseVec::unit(b));
                        let mut rhs = SparseVec::new();
                        for (x, cx) in ea.iter() {
                            for (y, cy) in eb.iter() {
                                rhs = rhs.add_scaled(&(cx * cy), &ass.compose(n, i, *x, m, *y));
                            }
                        }
                        assert_eq!(lhs, rhs, "({n},{i},{a}) ∘ ({m},{b})");
                    }
                }
            }
        }
    }
    for n in 2..=5 {
        for p in all_perms(n) {
            for a in 0..lie.dim(n) {
                let lhs = lie_to_ass(&lie, &ass, n, &lie.relabel(n, &p, a));
                let e = lie_to_ass(&lie, &ass, n, &SparseVec::unit(a));
                let mut rhs = SparseVec::new();
                for (x, c) in e.iter() {
                    rhs = rhs.add_scaled(c, &ass.relabel(n, &p, *x));
                }
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn axioms_hold_for_builtins() {
    for name in ["com", "ass", "lie", "prelie"] {
        table(name).check_axioms(4).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for spec in [OperadSpec::alg1_ground_field(), OperadSpec::alg1_dual_numbers()] {
        OperadTable::new(spec).unwrap().check_axioms(3).unwrap();
    }
}

#[test]
fn alg1_validation() {
    let mut bad = OperadSpec::alg1_dual_numbers();
    bad.weight_rule = None;
    assert!(OperadTable::new(bad).is_err());
    // e² = e with e in weight 1 breaks additivity
    let mut bad = OperadSpec::alg1_ground_field();
    bad.weight_rule = Some(WeightRule::IdealWeights(vec![1]));
    assert!(OperadTable::new(bad).is_err());
    // non-associative: e1 e1 = e2, e2 e1 = e1, everything else 0
    let c = |v: [&str; 2]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let spec = OperadSpec {
        name: "alg1".into(),
        arity1_structure_constants: Some(vec![vec![c(["0", "1"]), c(["0", "0"])], vec![c(["1", "0"]), c(["0", "0"])]]),
        weight_rule: Some(WeightRule::IdealWeights(vec![0, 0])),
        max_arity: 1,
    };
    assert!(OperadTable::new(spec).is_err());
    assert!(OperadTable::builtin("poisson", 4).is_err());
}

#[test]
fn derivative_dimensions() {
    for name in ["com", "ass", "lie", "prelie"] {
        let o = table(name);
        let d = Derivative::new(&o);
        for k in 0..4 {
            assert_eq!(d.dim(k), o.dim(k + 1));
        }
    }
}

#[test]
fn commutator_quotients() {
    let com = table("com");
    let lie = table("lie");
    let ass = table("ass");
    for k in 0..=4 {
        assert_eq!(Derivative::new(&com).commutator_quotient(k).dim(), 1);
        // necklaces on k distinct letters
        assert_eq!(Derivative::new(&lie).commutator_quotient(k).dim(), factorial(k.max(1) - 1));
    }
    // dense oracle on the 6-dim space ∂(Ass)(2)
    let d = Derivative::new(&ass);
    let rel = d.commutators(2, false);
    let r = rank_of_vectors(&rel, 6);
    assert_eq!(d.commutator_quotient(2).dim(), 6 - r);
}

#[test]
fn indecomposables() {
    let expect: [(&str, [usize; 5]); 4] = [("com", [1, 1, 0, 0, 0]), ("lie", [1, 1, 1, 1, 1]), ("ass", [1, 2, 2, 0, 0]), ("prelie", [1, 2, 5, 16, 65])];
    for (name, dims) in expect {
        let o = table(name);
        let d = Derivative::new(&o);
        for k in 0..=4 {
            assert_eq!(d.indecomposables_zero(k).dim(), dims[k], "{name} at {k}");
        }
        for (k, lhs, rhs) in d.freeness_witness(4) {
            assert_eq!(lhs, rhs, "{name} freeness at {k}");
        }
    }
}

#[test]
fn mu_rho_commute() {
    for name in ["ass", "lie", "prelie"] {
        let o = table(name);
        let d = Derivative::new(&o);
        for k1 in 0..=2 {
            for k2 in 1..=2 {
                for a in 0..d.dim(k1) {
                    for b in 0..d.dim(k2) {
                        for u in o.ideal_basis(2) {
                            let (ea, eb, eu) = (SparseVec::unit(a), SparseVec::unit(b), SparseVec::unit(u));
                            for j in 0..k2 {
                                let lhs = d.rho(k1 + k2, &d.mu(k1, &ea, k2, &eb), k1 + j, 2, &eu);
                                let rhs = d.mu(k1, &ea, k2 + 1, &d.rho(k2, &eb, j, 2, &eu));
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn disk_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cold = OperadTable::builtin("lie", 5).unwrap().with_cache_dir(dir.path());
    let t1 = cold.compose_tensor(3, 1, 2);
    let path = dir.path().join(&cold.hash).join("comp_3_1_2.json");
    assert!(path.exists());
    let warm = OperadTable::builtin("lie", 5).unwrap().with_cache_dir(dir.path());
    assert_eq!(*warm.compose_tensor(3, 1, 2), *t1);
}
