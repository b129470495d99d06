use proptest::prelude::*;
use wheelhouse::exactla::{q, rank, SparseMatrix};
use wheelhouse::operads::OperadTable;
use wheelhouse::perm::{all_perms, binomial, compose, factorial};
use wheelhouse::species::*;
use wheelhouse::wheeledbar::trivial_wheeling;
use wheelhouse::Truncation;

const N: usize = 5;

fn t(n: usize) -> Truncation {
    Truncation::new(n, 50, 50)
}

fn builtins(n: usize) -> Vec<Species> {
    vec![Species::x(n), Species::one(n), Species::com(n), Species::ucom(n), Species::ass(n), Species::uass(n), Species::com(n).suspend(1)]
}

#[test]
fn cauchy_examples() {
    assert_eq!(Species::x(2).cauchy(&Species::x(2), &t(2)).unwrap().dim(2), 2);
    let p = Species::ucom(2).cauchy(&Species::uass(2), &t(2)).unwrap();
    assert_eq!(p.dim(2), 5);
    for s in builtins(N) {
        let l = Species::one(N).cauchy(&s, &t(N)).unwrap();
        let r = s.cauchy(&Species::one(N), &t(N)).unwrap();
        assert_eq!(l.dims(), s.dims());
        assert_eq!(r.dims(), s.dims());
        assert!(l.check_braid());
    }
}

#[test]
fn cauchy_dimension_formula_and_associativity() {
    let sp = builtins(4);
    for a in &sp {
        for b in &sp {
            let ab = a.cauchy(b, &t(4)).unwrap();
            for n in 0..=4 {
                let expect: usize = (0..=n).map(|k| binomial(n, k) * a.dim(k) * b.dim(n - k)).sum();
                assert_eq!(ab.dim(n), expect);
            }
        }
    }
    let (a, b, c) = (Species::ucom(4), Species::ass(4), Species::x(4).suspend(1));
    let l = a.cauchy(&b, &t(4)).unwrap().cauchy(&c, &t(4)).unwrap();
    let r = a.cauchy(&b.cauchy(&c, &t(4)).unwrap(), &t(4)).unwrap();
    assert_eq!(l.graded_dims(), r.graded_dims());
    assert!(l.check_braid() && r.check_braid());
}

#[test]
fn derivative_examples_and_leibniz() {
    assert_eq!(Species::com(N).derivative().dims(), vec![1; N]);
    assert_eq!(Species::ass(3).derivative().dim(2), 6);
    let lie = Species::from_operad(&OperadTable::builtin("lie", N).unwrap(), N, false);
    let dl = lie.derivative();
    for n in 0..N {
        assert_eq!(dl.dim(n), factorial(n));
    }
    assert!(dl.check_braid());
    let sp = builtins(N);
    for a in &sp {
        for b in &sp {
            let lhs = a.cauchy(b, &t(N)).unwrap().derivative();
            let r1 = a.derivative().cauchy(&b.components[..N].iter().cloned().collect::<Vec<_>>().into_species(), &t(N - 1)).unwrap();
            let r2 = a.components[..N].iter().cloned().collect::<Vec<_>>().into_species().cauchy(&b.derivative(), &t(N - 1)).unwrap();
            for n in 0..N {
                assert_eq!(lhs.dim(n), r1.dim(n) + r2.dim(n));
            }
        }
    }
}

trait IntoSpecies {
    fn into_species(self) -> Species;
}

impl IntoSpecies for Vec<Component> {
    fn into_species(self) -> Species {
        Species { name: "S".into(), components: self }
    }
}

/// Bell numbers by the recurrence `B(n+1) = Σ C(n,k) B(k)`.
fn bell(n: usize) -> usize {
    let mut b = vec![1usize];
    for m in 0..n {
        b.push((0..=m).map(|k| binomial(m, k) * b[k]).sum());
    }
    b[n]
}

#[test]
fn composition_examples() {
    let cc = Species::com(N).compose(&Species::com(N), &t(N)).unwrap();
    assert_eq!(cc.dim(3), 5);
    for n in 1..=N {
        assert_eq!(cc.dim(n), bell(n));
    }
    for s in builtins(N) {
        let reduced = s.components.iter().cloned().enumerate().map(|(n, c)| if n == 0 { Component::default() } else { c }).collect::<Vec<_>>().into_species();
        let l = Species::x(N).compose(&reduced, &t(N)).unwrap();
        assert_eq!(l.graded_dims(), reduced.graded_dims());
        let r = s.compose(&Species::x(N), &t(N)).unwrap();
        assert_eq!(r.graded_dims(), s.graded_dims());
        assert!(r.check_braid());
    }
    let a = Species::com(N);
    let b = Species::ass(N);
    let c = Species::com(N).suspend(1);
    let l = a.compose(&b, &t(N)).unwrap().compose(&c, &t(N)).unwrap();
    let r = a.compose(&b.compose(&c, &t(N)).unwrap(), &t(N)).unwrap();
    assert_eq!(l.graded_dims(), r.graded_dims());
    assert!(Species::ucom(3).compose(&Species::ucom(3), &t(3)).is_err());
}

#[test]
fn cyclic_words_of_the_unit() {
    let c = Species::x(6).cyc(&t(6)).unwrap();
    for n in 1..=6 {
        assert_eq!(c.dim(n), factorial(n - 1));
    }
    let s = Species::x(6).suspend(1).cyc(&t(6)).unwrap();
    assert_eq!(s.dim(1), 1);
    for n in 1..=6 {
        assert_eq!(s.dim(n), signed_rotation_coinvariants(n), "n={n}");
    }
    assert!(c.check_braid() && s.check_braid());
}

/// Words in `n` distinct odd letters modulo `w ~ (−1)^{n−1} rot(w)`,
/// computed as `n! − rank(id − ρ)` on the dense regular representation.
fn signed_rotation_coinvariants(n: usize) -> usize {
    let words = all_perms(n);
    let index = |w: &Vec<usize>| words.iter().position(|x| x == w).unwrap();
    let s = if n % 2 == 1 { 1 } else { -1 };
    let rows: Vec<(usize, usize, wheelhouse::exactla::Rational)> = words
        .iter()
        .enumerate()
        .flat_map(|(i, w)| {
            let mut r: Vec<usize> = w[1..].to_vec();
            r.push(w[0]);
            vec![(i, i, q(1)), (i, index(&r), q(-s))]
        })
        .collect();
    let m = SparseMatrix::from_triplets(words.len(), words.len(), rows);
    words.len() - rank(&m)
}

#[test]
fn cyc_of_even_arity_zero_is_unbounded() {
    assert_eq!(Species::one(2).cyc(&t(2)).unwrap_err(), SpeciesError::Unbounded);
    let odd = Species::one(2).suspend(1).cyc(&Truncation::new(2, 0, 6)).unwrap();
    // words in one odd letter survive in odd length
    let d0 = &odd.graded_dims()[0];
    for m in 1..=6 {
        assert_eq!(d0.get(&(0, m as i32)).copied().unwrap_or(0), m % 2, "length {m}");
    }
}

#[test]
fn truncation_errors() {
    let s = Species::com(3);
    assert_eq!(s.cauchy(&s, &t(5)).unwrap_err(), SpeciesError::Truncation { needed: 5, have: 3 });
    assert!(s.cyc(&t(4)).is_err());
}

#[test]
fn json_round_trip() {
    let s = Species::uass(3).cauchy(&Species::com(3).suspend(1), &t(3)).unwrap();
    let back = Species::from_json(&s.to_json().unwrap()).unwrap();
    assert_eq!(back, s);
}

#[test]
fn wheel_basis_matches_cyclic_words_of_trees() {
    // Cyc(s∂Ō) ∘ T(sŌ) against the basis of the wheel part, by (w, d)
    for name in ["lie", "prelie", "ass", "com"] {
        let n = 3;
        let op = OperadTable::builtin(name, n + 1).unwrap();
        let tt = Truncation::new(n, 100, 100);
        let obar = Species::from_operad(&op, n + 1, true);
        let trees = free_operad_trees(&obar, &Truncation::new(n + 1, 100, 100)).unwrap();
        let trees = trees.components[..=n].to_vec().into_species();
        let wheels = obar.derivative().suspend(1).cyc(&tt).unwrap().compose(&trees, &tt).unwrap();
        assert!(wheels.check_braid());
        let gc = trivial_wheeling(&op).wheeled_part(&Truncation::new(n, 100, n + 1), false).unwrap();
        for (m, dims) in wheels.graded_dims().iter().enumerate() {
            for (&(w, d), &x) in dims {
                let k = wheelhouse::exactla::BlockKey::new(m, w, d as usize);
                assert_eq!(gc.complex.dim(k), x, "{name} {k:?}");
            }
        }
        let total: usize = gc.complex.blocks.iter().filter(|(k, _)| k.n <= n).map(|(_, v)| v).sum();
        assert_eq!(total, wheels.dims().iter().sum::<usize>(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn stored_actions_compose(ix in 0usize..4, a in 0usize..120, b in 0usize..120) {
        let n = 4;
        let sp = [
            Species::ucom(n).cauchy(&Species::ass(n).suspend(1), &t(n)).unwrap(),
            Species::com(n).suspend(1).compose(&Species::ass(n), &t(n)).unwrap(),
            Species::x(n).suspend(1).cyc(&t(n)).unwrap(),
            Species::ass(n + 1).derivative(),
        ];
        let s = &sp[ix];
        let perms = all_perms(n);
        let (x, y) = (&perms[a % 24], &perms[b % 24]);
        let c = &s.components[n];
        prop_assert_eq!(c.act(&compose(x, y)), c.act(x).mul(&c.act(y)));
    }
}
