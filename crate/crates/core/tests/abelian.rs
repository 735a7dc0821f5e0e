mod common;

use common::{ga, rng};
use galnorm::abelian::{cyclotomic, factorize, totient, AbelianDecomposition, CoprimeMerge, SamePrimeSplit};
use galnorm::error::Error;
use galnorm::group::{ga_mul, GroupAlgebraElem, Presentation};
use galnorm::poly::Poly;
use galnorm::scalar::{Fp, Rational, Scalar};
use proptest::prelude::*;

fn dec(orders: &[usize]) -> AbelianDecomposition<Rational> {
    AbelianDecomposition::new(&Presentation::abelian(orders.to_vec()).unwrap()).unwrap()
}

#[test]
fn cyclotomic_values() {
    assert_eq!(cyclotomic::<Rational>(1), Poly::from_i64(&[-1, 1]));
    assert_eq!(cyclotomic::<Rational>(2), Poly::from_i64(&[1, 1]));
    assert_eq!(cyclotomic::<Rational>(12), Poly::from_i64(&[1, 0, -1, 0, 1]));
    assert_eq!(cyclotomic::<Rational>(6), Poly::from_i64(&[1, -1, 1]));
    for d in 1..=60 {
        let phi = cyclotomic::<Rational>(d);
        assert_eq!(phi.degree(), Some(totient(d)));
        assert!(Poly::x_pow_minus_one(d).rem(&phi).unwrap().is_zero());
    }
    assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
}

#[test]
fn factor_lists() {
    let orders = |d: &AbelianDecomposition<Rational>| d.orders();
    assert_eq!(orders(&dec(&[4])), [1, 2, 4]);
    assert_eq!(orders(&dec(&[6])), [1, 2, 3, 6]);
    assert_eq!(orders(&dec(&[2, 2])), [1, 2, 2, 2]);
    for g in [vec![4], vec![6], vec![2, 2], vec![12], vec![2, 4], vec![60], vec![9, 3], vec![4, 6]] {
        let d = dec(&g);
        let n: usize = g.iter().product();
        assert_eq!(d.factors().iter().map(|f| f.dim()).sum::<usize>(), n);
        assert_eq!(d.dimension(), n);
    }
    let cyclic = Presentation::metacyclic(3, 2, 3, 2).unwrap();
    assert!(matches!(AbelianDecomposition::<Rational>::new(&cyclic), Err(Error::Unsupported(_))));
}

#[test]
fn z4_examples() {
    let d = dec(&[4]);
    let x = GroupAlgebraElem::<Rational>::delta(4, 1);
    assert_eq!(d.forward(&x).unwrap(), vec![Poly::from_i64(&[1]), Poly::from_i64(&[-1]), Poly::from_i64(&[0, 1])]);
    assert_eq!(d.forward(&GroupAlgebraElem::one(4)).unwrap(), vec![Poly::one(); 3]);
    assert_eq!(d.inverse(&x).unwrap(), GroupAlgebraElem::delta(4, 3));
    let all = GroupAlgebraElem::<Rational>::from_i64(&[1, 1, 1, 1]);
    assert!(!d.is_unit(&all).unwrap());
    assert_eq!(d.inverse(&all).unwrap_err(), Error::NotAUnit { factor: 1, order: 2 });
    let v4 = dec(&[2, 2]);
    assert!(!v4.is_unit(&GroupAlgebraElem::from_i64(&[1, 1, 1, 1])).unwrap());
    assert!(v4.is_unit(&GroupAlgebraElem::from_i64(&[2, 1, 0, 0])).unwrap());
}

#[test]
fn merges_and_splits() {
    let m = CoprimeMerge::<Rational>::new(2, 3).unwrap();
    assert_eq!(m.images, (3, 4));
    let mut one = vec![Rational::zero(); 2];
    one[0] = Rational::one();
    let mut out_one = vec![Rational::zero(); 2];
    out_one[0] = Rational::one();
    assert_eq!(m.forward(&one), out_one);
    assert!(CoprimeMerge::<Rational>::new(4, 6).is_err());
    let mut r = rng(30);
    for (a, b) in [(2, 3), (4, 3), (8, 5)] {
        let m = CoprimeMerge::<Rational>::new(a, b).unwrap();
        let (da, db) = m.input_dims();
        for _ in 0..100 {
            let v = common::small::<Rational>(&mut r, da * db, -5, 5);
            assert_eq!(m.backward(&m.forward(&v)), v);
        }
    }
    // A = F[x]/<x^2 + 1>, y -> x^2 = -1: a + b y is stored reduced as a - b
    let s = SamePrimeSplit::<Rational>::new(2, 2, 1).unwrap();
    assert_eq!((s.dims(), s.roots.clone()), ((2, 1), vec![2]));
    let (a, b) = (common::small::<Rational>(&mut r, 2, -5, 5), common::small::<Rational>(&mut r, 2, -5, 5));
    let reduced: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| x.sub(y)).collect();
    assert_eq!(s.forward(&reduced), reduced);
    let s = SamePrimeSplit::<Rational>::new(3, 1, 1).unwrap();
    assert_eq!(s.roots, [1, 2]);
    let c = vec![Rational::from_i64(7), Rational::zero(), Rational::zero(), Rational::zero()];
    assert_eq!(s.forward(&c), [7, 0, 7, 0].map(Rational::from_i64));
    for (p, c, cy) in [(2, 3, 2), (3, 2, 1), (3, 2, 2), (5, 1, 1)] {
        let s = SamePrimeSplit::<Rational>::new(p, c, cy).unwrap();
        let (d, k) = s.dims();
        let v = common::small::<Rational>(&mut r, d * k, -5, 5);
        assert_eq!(s.backward(&s.forward(&v)), v);
    }
}

#[test]
fn finite_field_backend_agrees() {
    let gp = Presentation::abelian(vec![2, 6]).unwrap();
    let d = AbelianDecomposition::<Fp>::new(&gp).unwrap();
    let mut r = rng(31);
    for _ in 0..20 {
        let (a, b) = (ga::<Fp>(12, &mut r), ga::<Fp>(12, &mut r));
        if let Ok(q) = d.divide(&a, &b) {
            assert_eq!(ga_mul(&gp, &a, &q).unwrap(), b);
        }
        assert_eq!(d.backward(&d.forward(&a).unwrap()).unwrap(), a);
    }
}

fn group() -> impl Strategy<Value = Vec<usize>> {
    prop_oneof![
        Just(vec![4]),
        Just(vec![6]),
        Just(vec![8]),
        Just(vec![12]),
        Just(vec![2, 2]),
        Just(vec![2, 4]),
        Just(vec![3, 3]),
        Just(vec![2, 2, 3]),
        Just(vec![5, 4]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homomorphism_and_inverse(orders in group(), seed in any::<u64>()) {
        let gp = Presentation::abelian(orders.clone()).unwrap();
        let d = AbelianDecomposition::<Rational>::new(&gp).unwrap();
        let n = gp.size();
        let mut r = rng(seed);
        let (a, b, eta) = (ga::<Rational>(n, &mut r), ga::<Rational>(n, &mut r), ga::<Rational>(n, &mut r));
        let fa = d.forward(&a).unwrap();
        prop_assert_eq!(d.backward(&fa).unwrap(), a.clone());
        let lhs = d.forward(&ga_mul(&gp, &a, &b).unwrap()).unwrap();
        prop_assert_eq!(lhs, d.mul_residues(&fa, &d.forward(&b).unwrap()).unwrap());
        let det_zero = galnorm::group::mult_matrix(&gp, &a).unwrap().determinant().unwrap().is_zero();
        prop_assert_eq!(d.is_unit(&a).unwrap(), !det_zero);
        if let Ok(q) = d.divide(&a, &eta) {
            prop_assert_eq!(ga_mul(&gp, &a, &q).unwrap(), eta);
        }
    }
}
