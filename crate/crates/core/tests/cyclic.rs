use std::collections::BTreeMap;
use wheelhouse::cyclic::*;
use wheelhouse::exactla::{BlockKey, SparseVec};
use wheelhouse::operads::{Derivative, OperadSpec, OperadTable, QuotientAlgebra, TwistedAlgebra, WeightRule};
use wheelhouse::perm::{binomial, factorial};
use wheelhouse::species::Species;
use wheelhouse::wheeledbar::{bar, bigraded_homology, trivial_wheeling};
use wheelhouse::Truncation;

/// A species with the zero product.
struct ZeroProduct(Species);

impl TwistedAlgebra for ZeroProduct {
    fn max_arity(&self) -> usize {
        self.0.max_arity()
    }
    fn dim(&self, k: usize) -> usize {
        self.0.dim(k)
    }
    fn mul_split(&self, _: &[usize], _: usize, _: &[usize], _: usize) -> SparseVec {
        SparseVec::new()
    }
    fn relabel(&self, k: usize, sigma: &[usize], x: usize) -> SparseVec {
        self.0.components[k].apply(sigma, x)
    }
    fn weight(&self, k: usize, x: usize) -> usize {
        self.0.components[k].weights[x]
    }
}

fn by_arity_degree(h: &BTreeMap<BlockKey, usize>) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for (k, v) in h {
        if *v > 0 {
            *out.entry((k.n, k.d)).or_default() += v;
        }
    }
    out
}

#[test]
fn zero_product_unit_gives_cyclic_words() {
    let n = 6;
    let a = ZeroProduct(Species::x(n));
    let t = Truncation::new(n, 0, n);
    let c = cyclic_complex(&a, &t, true).unwrap();
    c.complex.check_d_squared().unwrap();
    let h = by_arity_degree(&cyclic_homology(&a, &t).unwrap());
    let words = Species::x(n).suspend(1).cyc(&t).unwrap();
    let expect: BTreeMap<(usize, usize), usize> = (1..=n).map(|m| ((m, m - 1), words.dim(m))).collect();
    assert_eq!(h, expect);
    for m in 1..=n {
        assert_eq!(words.dim(m), factorial(m - 1));
    }
}

#[test]
fn derivative_of_lie_gives_hooks() {
    let n = 5;
    let op = OperadTable::builtin("lie", n + 1).unwrap();
    let a = QuotientAlgebra::reduced_indecomposables(&op, n);
    let h = cyclic_homology(&a, &Truncation::new(n, n, n)).unwrap();
    for (k, v) in &h {
        if *v > 0 {
            assert_eq!(k.w, k.n);
        }
    }
    let got = by_arity_degree(&h);
    let expect: BTreeMap<(usize, usize), usize> = (1..=n).flat_map(|w| (0..w).map(move |d| ((w, d), binomial(w - 1, d)))).collect();
    assert_eq!(got, expect);
}

#[test]
fn ground_field_is_periodic() {
    let op = OperadTable::new(OperadSpec::alg1_ground_field()).unwrap();
    let a = QuotientAlgebra::reduced_derivative(&op, 0);
    let h = cyclic_homology(&a, &Truncation::new(0, 0, 7)).unwrap();
    let dims: Vec<usize> = (0..=7).map(|d| h.get(&BlockKey::new(0, 0, d)).copied().unwrap_or(0)).collect();
    assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1, 0]);
}

#[test]
fn square_zero_line_survives_in_odd_lengths() {
    let op = OperadTable::new(OperadSpec::alg1_dual_numbers()).unwrap();
    let a = QuotientAlgebra::reduced_derivative(&op, 0);
    let h = cyclic_homology(&a, &Truncation::new(0, 6, 5)).unwrap();
    let nonzero: Vec<(usize, usize)> = h.iter().filter(|(_, v)| **v > 0).map(|(k, _)| (k.w, k.d)).collect();
    assert_eq!(nonzero, vec![(1, 0), (3, 2), (5, 4)]);
}

#[test]
fn hc_zero_is_the_commutator_quotient() {
    for name in ["com", "ass", "lie", "prelie"] {
        let n = 3;
        let op = OperadTable::builtin(name, n + 1).unwrap();
        let a = QuotientAlgebra::reduced_derivative(&op, n);
        let h = by_arity_degree(&cyclic_homology(&a, &Truncation::new(n, n, 1)).unwrap());
        let d = Derivative::new(&op);
        for k in 0..=n {
            assert_eq!(h.get(&(k, 0)).copied().unwrap_or(0), d.reduced_commutator_quotient(k).dim(), "{name} k={k}");
        }
    }
}

#[test]
fn calchom_matches_for_builtins() {
    for (name, n) in [("com", 4), ("lie", 4), ("ass", 3), ("prelie", 3)] {
        let op = OperadTable::builtin(name, n + 1).unwrap();
        let r = calchom_check(&op, &Truncation::new(n, n, n)).unwrap();
        assert_eq!(r.status, CalchomStatus::Match, "{name}: {:?}", r.blocks);
        assert!(r.operadic_matches_bar);
        assert!(r.freeness.iter().all(|(_, a, b)| a == b));
    }
}

#[test]
fn unital_algebras_have_acyclic_operadic_part() {
    // k × k with two orthogonal idempotents
    let c = |i: usize, j: usize| -> Vec<String> { (0..2).map(|k| if i == j && j == k { "1".to_string() } else { "0".to_string() }).collect() };
    let spec = OperadSpec {
        name: "alg1".into(),
        arity1_structure_constants: Some((0..2).map(|i| (0..2).map(|j| c(i, j)).collect()).collect()),
        weight_rule: Some(WeightRule::IdealWeights(vec![0, 0])),
        max_arity: 1,
    };
    for spec in [spec, OperadSpec::alg1_ground_field()] {
        let op = OperadTable::new(spec).unwrap();
        let t = Truncation::new(1, 0, 5);
        let h = bar(&op, &t, false).unwrap().homology().unwrap();
        let nonzero: Vec<(BlockKey, usize)> = h.into_iter().filter(|(k, v)| *v > 0 && k.d <= t.max_degree).collect();
        assert_eq!(nonzero, vec![(BlockKey::new(1, 0, 0), 1)]);
        let wb = trivial_wheeling(&op).wheeled_bar(&t, false).unwrap();
        let bh = bigraded_homology(&wb, &t).unwrap();
        assert_eq!(bh.operadic.values().sum::<usize>(), 1);
    }
}
