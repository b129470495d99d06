use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use wheelhouse::derlie::*;
use wheelhouse::exactla::{dim_irrep, partitions, q, rank_of_vectors, BlockKey, Rational, SparseVec};
use wheelhouse::operads::lie::Bracket;
use wheelhouse::operads::{Ass, Lie, OperadSpec, OperadTable, WeightRule};
use wheelhouse::perm::{all_perms, cycle_type, factorial};
use wheelhouse::Truncation;

fn table(name: &str, max_weight: usize) -> OperadTable {
    OperadTable::builtin(name, max_weight + 2).unwrap()
}

/// `dim O(k) ⊗_{S_k} V^{⊗k} = (1/k!) Σ_σ χ_O(σ) n^{cycles(σ)}`.
fn schur_dim_by_characters(op: &OperadTable, n: usize, k: usize) -> usize {
    let total: Rational = all_perms(k)
        .iter()
        .map(|s| {
            let trace: Rational = (0..op.dim(k)).map(|a| op.relabel(k, s, a).get(a)).sum();
            trace * q((n as i64).pow(cycle_type(s).len() as u32))
        })
        .sum();
    let d = total / q(factorial(k) as i64);
    assert!(d.is_integer());
    d.to_integer().try_into().unwrap()
}

#[test]
fn free_algebra_dims_match_characters() {
    for name in ["com", "ass", "lie", "prelie"] {
        for n in 1..=3 {
            let op = table(name, 3);
            let fa = FreeAlgebra::new(&op, n, 3).unwrap();
            for w in 0..=3 {
                assert_eq!(fa.basis(w).len(), schur_dim_by_characters(&op, n, w + 1), "{name} n={n} w={w}");
            }
        }
    }
}

/// Polynomials as maps from exponent vectors to coefficients.
type Poly = BTreeMap<Vec<u32>, i64>;

fn poly_of(fa: &FreeAlgebra, f: &Elem) -> Poly {
    let mut p = Poly::new();
    for (m, c) in f {
        let mut e = vec![0; fa.n];
        for &l in &m.word {
            e[l as usize] += 1;
        }
        *p.entry(e).or_default() += c.to_integer().try_into().unwrap_or(0i64);
        assert!(c.is_integer());
    }
    p.retain(|_, c| *c != 0);
    p
}

fn elem_of(fa: &FreeAlgebra, p: &Poly) -> Elem {
    fa.alg.collect(p.iter().map(|(e, &c)| {
        let word: Vec<u8> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i as u8).take(k as usize)).collect();
        (SparseVec::unit(0), word, q(c))
    }))
}

fn partial(p: &Poly, i: usize) -> Poly {
    let mut out = Poly::new();
    for (e, &c) in p {
        if e[i] > 0 {
            let mut f = e.clone();
            f[i] -= 1;
            *out.entry(f).or_default() += c * e[i] as i64;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e, x) in a {
        for (f, y) in b {
            let g: Vec<u32> = e.iter().zip(f).map(|(s, t)| s + t).collect();
            *out.entry(g).or_default() += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn add(a: &Poly, b: &Poly, s: i64) -> Poly {
    let mut out = a.clone();
    for (e, y) in b {
        *out.entry(e.clone()).or_default() += s * y;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `[X, Y]_i = Σ_j X_j ∂_j Y_i − Y_j ∂_j X_i`.
fn vector_field_bracket(x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    (0..x.len())
        .map(|i| {
            let mut acc = Poly::new();
            for j in 0..x.len() {
                acc = add(&acc, &mul(&x[j], &partial(&y[i], j)), 1);
                acc = add(&acc, &mul(&y[j], &partial(&x[i], j)), -1);
            }
            acc
        })
        .collect()
}

fn mono(e: &[u32]) -> Poly {
    Poly::from([(e.to_vec(), 1)])
}

#[test]
fn com_bracket_matches_vector_fields() {
    let op = table("com", 3);
    let fa = FreeAlgebra::new(&op, 2, 3).unwrap();
    let x = vec![Poly::new(), mono(&[2, 0])];
    let y = vec![mono(&[0, 2]), Poly::new()];
    let to_der = |v: &[Poly]| Derivation { images: v.iter().map(|p| elem_of(&fa, p)).collect() };
    let b = fa.bracket(&to_der(&x), &to_der(&y)).unwrap();
    let got: Vec<Poly> = b.images.iter().map(|f| poly_of(&fa, f)).collect();
    assert_eq!(got, vec![Poly::from([(vec![2, 1], 2)]), Poly::from([(vec![1, 2], -2)])]);
    assert_eq!(got, vector_field_bracket(&x, &y));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fa = FreeAlgebra::new(&op, 3, 3).unwrap();
    for _ in 0..30 {
        let mut field = |deg: u32| -> Vec<Poly> {
            (0..3)
                .map(|_| {
                    let mut p = Poly::new();
                    for _ in 0..2 {
                        let a = rng.gen_range(0..=deg);
                        let b = rng.gen_range(0..=deg - a);
                        *p.entry(vec![a, b, deg - a - b]).or_default() += rng.gen_range(-3..=3);
                    }
                    p.retain(|_, c| *c != 0);
                    p
                })
                .collect()
        };
        let (x, y) = (field(2), field(3));
        let b = fa.bracket(&to_der_n(&fa, &x), &to_der_n(&fa, &y)).unwrap();
        let got: Vec<Poly> = b.images.iter().map(|f| poly_of(&fa, f)).collect();
        assert_eq!(got, vector_field_bracket(&x, &y));
    }
}

fn to_der_n(fa: &FreeAlgebra, v: &[Poly]) -> Derivation {
    Derivation { images: v.iter().map(|p| elem_of(fa, p)).collect() }
}

fn random_derivation(fa: &FreeAlgebra, w: usize, rng: &mut ChaCha8Rng) -> Derivation {
    let basis = fa.der_basis(w);
    let mut d = Derivation::zero(fa.n);
    for _ in 0..3 {
        let k = &basis[rng.gen_range(0..basis.len())];
        let c = q(rng.gen_range(-4..=4));
        d = d.add_scaled(&c, &Derivation::basic(fa.n, k.gen, k.mono.clone()));
    }
    d
}

#[test]
fn bracket_is_antisymmetric_and_satisfies_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["com", "ass", "lie", "prelie"] {
        let op = table(name, 3);
        let fa = FreeAlgebra::new(&op, 2, 3).unwrap();
        for _ in 0..10 {
            let a = random_derivation(&fa, 1, &mut rng);
            let b = random_derivation(&fa, 1, &mut rng);
            let c = random_derivation(&fa, 1, &mut rng);
            assert!(fa.bracket(&a, &a).unwrap().is_zero());
            let sum = fa.bracket(&b, &a).unwrap().add_scaled(&q(1), &fa.bracket(&a, &b).unwrap());
            assert!(sum.is_zero());
            let j1 = fa.bracket(&a, &fa.bracket(&b, &c).unwrap()).unwrap();
            let j2 = fa.bracket(&b, &fa.bracket(&c, &a).unwrap()).unwrap();
            let j3 = fa.bracket(&c, &fa.bracket(&a, &b).unwrap()).unwrap();
            assert!(j1.add_scaled(&q(1), &j2).add_scaled(&q(1), &j3).is_zero(), "{name}");
        }
    }
    let op = table("com", 3);
    let fa = FreeAlgebra::new(&op, 2, 3).unwrap();
    // a linear derivation acts on generators linearly
    let swap = Derivation { images: vec![elem_of(&fa, &mono(&[0, 1])), elem_of(&fa, &mono(&[1, 0]))] };
    let d = to_der_n(&fa, &[mono(&[2, 0]), Poly::new()]);
    let got = fa.prelie(&d, &swap).unwrap();
    assert_eq!(got.images[1], elem_of(&fa, &mono(&[2, 0])));
    assert!(got.images[0].is_empty());
}

#[test]
fn universal_derivation_examples() {
    let op = table("ass", 2);
    let fa = FreeAlgebra::new(&op, 2, 2).unwrap();
    let x = fa.alg.collect([(SparseVec::unit(op.unit()), vec![0u8], q(1))]);
    let dx = fa.universal_derivation(&x);
    assert_eq!(dx[0], fa.env.collect([(SparseVec::unit(op.unit()), vec![], q(1))]));
    assert!(dx[1].is_empty());

    let ass = Ass::default();
    let xyx = fa.alg.collect([(SparseVec::unit(ass.index(&[0, 1, 2])), vec![0u8, 1, 0], q(1))]);
    let d = fa.universal_derivation(&xyx);
    let e = |order: &[u8], word: &[u8]| (SparseVec::unit(ass.index(order)), word.to_vec(), q(1));
    // l_{xy} + r_{yx} on dx, and x dy x on dy
    assert_eq!(d[0], fa.env.collect([e(&[0, 1, 2], &[0, 1]), e(&[2, 0, 1], &[1, 0])]));
    assert_eq!(d[1], fa.env.collect([e(&[0, 2, 1], &[0, 0])]));

    let op = table("com", 2);
    let fa = FreeAlgebra::new(&op, 2, 2).unwrap();
    let d = fa.universal_derivation(&elem_of(&fa, &mono(&[2, 1])));
    let c = |e: &[u32], k: i64| fa.env.collect([(SparseVec::unit(0), wordof(e), q(k))]);
    assert_eq!(d[0], c(&[1, 1], 2));
    assert_eq!(d[1], c(&[2, 0], 1));
}

fn wordof(e: &[u32]) -> Vec<u8> {
    e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(i as u8).take(k as usize)).collect()
}

#[test]
fn bergman_derivation_is_divergence_free() {
    let op = table("ass", 3);
    let fa = FreeAlgebra::new(&op, 2, 3).unwrap();
    let ass = Ass::default();
    // [x,y]^2 = xyxy − xyyx − yxxy + yxyx
    let terms = [([0u8, 1, 0, 1], 1), ([0, 1, 1, 0], -1), ([1, 0, 0, 1], -1), ([1, 0, 1, 0], 1)];
    let f = fa.alg.collect(terms.iter().map(|(w, c)| (SparseVec::unit(ass.index(&[0, 1, 2, 3])), w.to_vec(), q(*c))));
    let d = Derivation { images: vec![f, Vec::new()] };
    assert!(fa.divergence(&d).is_empty());
}

fn lie_elem(fa: &FreeAlgebra, t: &Bracket, word: &[u8]) -> Elem {
    fa.alg.collect([(Lie::default().coords(t), word.to_vec(), q(1))])
}

/// `ad_u = [u, −]` for `u` of arity `k` with letters `word`.
fn ad(fa: &FreeAlgebra, u: &Bracket, word: &[u8]) -> Derivation {
    let k = word.len() as u8;
    let shifted = u.clone();
    let t = Bracket::br(shifted, Bracket::Leaf(k));
    Derivation { images: (0..fa.n as u8).map(|i| lie_elem(fa, &t, &[word, &[i]].concat())).collect() }
}

#[test]
fn inner_derivations_of_lie_are_divergence_free() {
    let op = table("lie", 3);
    let fa = FreeAlgebra::new(&op, 2, 3).unwrap();
    let xy = Bracket::br(Bracket::Leaf(0), Bracket::Leaf(1));
    let d = ad(&fa, &xy, &[0, 1]);
    // 3 [[x,y], ⋆] before projection, zero in the commutator quotient
    let raw = fa.divergence_unprojected(&d);
    let star = fa.env.collect([(Lie::default().coords(&Bracket::br(xy.clone(), Bracket::Leaf(2))), vec![0u8, 1], q(3))]);
    assert_eq!(raw, star);
    assert!(fa.divergence(&d).is_empty());
    for word in [[0u8, 1, 0], [0, 1, 1]] {
        let u = Bracket::br(xy.clone(), Bracket::Leaf(2));
        assert!(fa.divergence(&ad(&fa, &u, &word)).is_empty());
    }
    assert!(fa.divergence(&Derivation::zero(2)).is_empty());
}

#[test]
fn divergence_of_matrices_is_the_trace() {
    // A₊ for A = k × k, two orthogonal idempotents
    let c = |i: usize, j: usize| -> Vec<String> { (0..2).map(|k| if i == j && j == k { "1".into() } else { "0".into() }).collect() };
    let spec = OperadSpec {
        name: "alg1".into(),
        arity1_structure_constants: Some((0..2).map(|i| (0..2).map(|j| c(i, j)).collect()).collect()),
        weight_rule: Some(WeightRule::IdealWeights(vec![0, 0])),
        max_arity: 1,
    };
    let op = OperadTable::new(spec).unwrap();
    let fa = FreeAlgebra::new(&op, 2, 0).unwrap();
    for i in 0..2u8 {
        for j in 0..2u8 {
            for e in 1..=2usize {
                let d =
                    Derivation { images: (0..2u8).map(|g| if g == i { fa.alg.collect([(SparseVec::unit(e), vec![j], q(1))]) } else { Vec::new() }).collect() };
                let div = fa.divergence(&d);
                let expect = if i == j { fa.tr.collect([(fa.tr.species.project(0, &SparseVec::unit(e)), vec![], q(1))]) } else { Vec::new() };
                assert_eq!(div, expect);
                if i == j {
                    assert_eq!(div.len(), 1);
                }
            }
        }
    }
    assert_eq!(fa.tr.basis(0).len(), 2);
}

#[test]
fn sder_of_com_in_weight_one() {
    let op = table("com", 1);
    let fa = FreeAlgebra::new(&op, 2, 1).unwrap();
    assert_eq!(fa.der_basis(1).len(), 6);
    let divs: Vec<SparseVec> = fa
        .der_basis(1)
        .iter()
        .map(|k| {
            let d = fa.divergence(&Derivation::basic(2, k.gen, k.mono.clone()));
            let idx: Vec<Mono> = fa.tr.basis(1);
            SparseVec::from_unsorted(d.into_iter().map(|(m, c)| (idx.iter().position(|x| *x == m).unwrap(), c)))
        })
        .collect();
    assert_eq!(rank_of_vectors(&divs, 2), 2);
    let s = DgLie::sder_plus(&fa).unwrap();
    assert_eq!(s.dim_by_weight(), BTreeMap::from([(1, 4)]));
}

/// `Div(D)` for the basis of `Der_w` against the trace module in weight `w`.
fn divergence_rank(fa: &FreeAlgebra, w: usize) -> (usize, usize) {
    let target: Vec<Mono> = (0..=fa.tr.max_arity).flat_map(|k| fa.tr.basis(k)).filter(|m| fa.tr.weight(m) == w).collect();
    let divs: Vec<SparseVec> = fa
        .der_basis(w)
        .iter()
        .map(|k| {
            let d = fa.divergence(&Derivation::basic(fa.n, k.gen, k.mono.clone()));
            SparseVec::from_unsorted(d.into_iter().map(|(m, c)| (target.iter().position(|x| *x == m).unwrap(), c)))
        })
        .collect();
    (rank_of_vectors(&divs, target.len()), target.len())
}

#[test]
fn divergence_is_surjective_below_dim_v() {
    for name in ["com", "ass", "lie"] {
        let n = 3;
        let op = table(name, 2);
        let fa = FreeAlgebra::new(&op, n, 2).unwrap();
        for w in 1..n {
            let (r, t) = divergence_rank(&fa, w);
            assert_eq!(r, t, "{name} w={w}");
        }
    }
}

#[test]
fn divergence_is_a_cocycle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for name in ["com", "ass", "lie"] {
        for n in [2, 3] {
            let op = table(name, 3);
            let fa = FreeAlgebra::new(&op, n, 3).unwrap();
            for trial in 0..50 {
                let w1 = 1 + trial % 2;
                let w2 = 1 + (trial / 2) % (3 - w1);
                let a = random_derivation(&fa, w1, &mut rng);
                let b = random_derivation(&fa, w2, &mut rng);
                let lhs = fa.divergence(&fa.bracket(&a, &b).unwrap());
                let rhs = wheelhouse::derlie::freealg::add_elems(
                    &fa.act_on_trace(&a, &fa.divergence(&b)).unwrap(),
                    &q(-1),
                    &fa.act_on_trace(&b, &fa.divergence(&a)).unwrap(),
                );
                assert_eq!(lhs, rhs, "{name} n={n} weights ({w1},{w2})");
            }
        }
    }
}

#[test]
fn ce_block_dimensions() {
    let op = table("com", 2);
    let fa = FreeAlgebra::new(&op, 2, 2).unwrap();
    let co = Coefficients { p: 0, q: 0, invariants: false };
    let c = ce_complex(LieKind::DerPlus, &fa, co, &Truncation::new(0, 2, 2)).unwrap();
    // Λ² of the six weight-one derivations
    assert_eq!(c.dim(BlockKey::new(0, 2, 2)), 15);
    assert_eq!(c.dim(BlockKey::new(0, 2, 1)), 8);
    c.check_d_squared().unwrap();
    // trivial coefficients: nothing to hit in degree zero
    for (k, m) in &c.differentials {
        if k.d == 1 {
            assert!(m.is_zero());
        }
    }
    for kind in [LieKind::SDerPlus, LieKind::Semidirect] {
        ce_complex(kind, &fa, co, &Truncation::new(0, 2, 2)).unwrap().check_d_squared().unwrap();
    }
}

#[test]
fn semidirect_needs_positive_weights() {
    let op = OperadTable::new(OperadSpec::alg1_ground_field()).unwrap();
    let fa = FreeAlgebra::new(&op, 2, 0).unwrap();
    assert!(matches!(DgLie::semidirect(&fa), Err(DerLieError::Unsupported(_))));
}

/// `Σ_{λ ⊢ r, ℓ(λ) ≤ n} (f^λ)²`: dimension of `End(V^{⊗r})^{gl(V)}`.
fn brauer_count(n: usize, r: usize) -> usize {
    partitions(r).iter().filter(|l| l.len() <= n).map(|l| (dim_irrep(l) * dim_irrep(l)) as usize).sum()
}

#[test]
fn tensor_invariant_counts() {
    assert_eq!(tensor_invariants(3, 1, 1), 1);
    assert_eq!(tensor_invariants(3, 0, 2), 0);
    assert_eq!(tensor_invariants(2, 2, 2), 2);
    assert_eq!(tensor_invariants(2, 2, 1), 0);
    for n in 1..=3 {
        for r in 0..=3 {
            assert_eq!(tensor_invariants(n, r, r), brauer_count(n, r), "n={n} r={r}");
        }
    }
}

#[test]
fn invariant_complex_restricts() {
    for name in ["com", "lie"] {
        let op = table(name, 2);
        let fa = FreeAlgebra::new(&op, 3, 2).unwrap();
        for (p, qq) in [(1, 0), (2, 0), (2, 1)] {
            let co = Coefficients { p, q: qq, invariants: true };
            let c = ce_complex(LieKind::DerPlus, &fa, co, &Truncation::new(0, 2, 2)).unwrap();
            c.check_d_squared().unwrap();
        }
    }
}

#[test]
fn general_linear_and_special_linear_homology() {
    let op = OperadTable::new(OperadSpec::alg1_ground_field()).unwrap();
    let fa = FreeAlgebra::new(&op, 3, 0).unwrap();
    let co = Coefficients { p: 0, q: 0, invariants: false };
    let t = Truncation::new(0, 0, 4);
    let dims = |kind| {
        let h = ce_complex(kind, &fa, co, &t).unwrap().homology_dims().unwrap();
        (0..=4).map(|d| h[&BlockKey::new(0, 0, d)]).collect::<Vec<_>>()
    };
    assert_eq!(dims(LieKind::DerPlus), vec![1, 1, 0, 1, 1]);
    assert_eq!(dims(LieKind::SDerPlus)[..4], [1, 0, 0, 1]);
}
