mod common;

use common::{ga, load, rng};
use galnorm::error::Error;
use galnorm::group::{ga_mul, mult_matrix, GroupAlgebraElem, Presentation};
use galnorm::metacyclic::{build_hankel, divide_metacyclic, is_unit_metacyclic, kernel_metacyclic, preferred_ordering, Ordering};
use galnorm::scalar::{Rational, Scalar};

fn groups() -> Vec<(&'static str, Presentation)> {
    vec![
        ("S3", Presentation::metacyclic(3, 2, 3, 2).unwrap()),
        ("D4", Presentation::metacyclic(4, 2, 4, 3).unwrap()),
        ("Q8", Presentation::metacyclic(4, 2, 2, 3).unwrap()),
        ("Z7:Z3", Presentation::metacyclic(7, 3, 7, 2).unwrap()),
    ]
}

#[test]
fn identity_expansion() {
    let gp = Presentation::metacyclic(3, 2, 3, 2).unwrap();
    let inv = gp.inverse_table().unwrap();
    let h = build_hankel(&gp, &GroupAlgebraElem::<Rational>::one(6), Ordering::TauOuter).unwrap();
    let d = h.to_dense();
    for r in 0..6 {
        for c in 0..6 {
            assert_eq!(d.get(r, c).is_one(), h.row_elems[r] == inv[h.col_elems[c]]);
        }
    }
    let v: Vec<Rational> = (1..=6).map(Rational::from_i64).collect();
    let mut sorted = h.matvec(&v).unwrap();
    sorted.sort_by_key(|x| x.to_string());
    let mut expect = v.clone();
    expect.sort_by_key(|x| x.to_string());
    assert_eq!(sorted, expect);
    assert!(h.matvec(&vec![Rational::zero(); 6]).unwrap().iter().all(Scalar::is_zero));
    assert!(matches!(h.matvec(&v[..3]), Err(Error::LengthMismatch { .. })));
}

#[test]
fn expansions_match_oracle() {
    let mut r = rng(40);
    for (name, gp) in groups() {
        let n = gp.size();
        for _ in 0..10 {
            let beta = ga::<Rational>(n, &mut r);
            let m = mult_matrix(&gp, &beta).unwrap();
            for ord in [Ordering::TauOuter, Ordering::SigmaOuter] {
                let h = build_hankel(&gp, &beta, ord).unwrap();
                let d = h.to_dense();
                for row in 0..n {
                    for col in 0..n {
                        assert_eq!(d.get(row, col), m.get(h.row_elems[row], h.col_elems[col]), "{name} {ord:?}");
                    }
                }
                let v = common::small::<Rational>(&mut r, n, -5, 5);
                assert_eq!(h.matvec(&v).unwrap(), d.matvec(&v).unwrap());
                let eta = ga::<Rational>(n, &mut r);
                let y = h.matvec(&h.input_coords(&gp, &eta).unwrap()).unwrap();
                assert_eq!(y, h.rhs(&ga_mul(&gp, &beta, &eta).unwrap()));
            }
        }
    }
}

#[test]
fn units_and_division() {
    let mut r = rng(41);
    for (name, gp) in groups() {
        let n = gp.size();
        for i in 0..30 {
            let mut beta = ga::<Rational>(n, &mut r);
            if i % 3 == 0 {
                let g = 1 + i % (n - 1);
                beta = ga_mul(&gp, &beta, &GroupAlgebraElem::one(n).add(&GroupAlgebraElem::delta(n, g))).unwrap();
            }
            let eta = ga::<Rational>(n, &mut r);
            let det_zero = mult_matrix(&gp, &beta).unwrap().determinant().unwrap().is_zero();
            assert_eq!(is_unit_metacyclic(&gp, &beta).unwrap(), !det_zero, "{name}");
            match divide_metacyclic(&gp, &beta, &eta) {
                Ok(q) => assert_eq!(ga_mul(&gp, &beta, &q).unwrap(), eta),
                Err(e) => {
                    assert_eq!(e, Error::SingularMultiplication);
                    let k = kernel_metacyclic(&gp, &beta).unwrap().unwrap();
                    assert!(ga_mul(&gp, &beta, &k).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn ordering_choice_and_errors() {
    assert_eq!(preferred_ordering(&Presentation::metacyclic(8, 2, 8, 7).unwrap()).unwrap(), Ordering::TauOuter);
    assert_eq!(preferred_ordering(&Presentation::metacyclic(3, 4, 3, 2).unwrap()).unwrap(), Ordering::SigmaOuter);
    let z4 = Presentation::abelian(vec![4]).unwrap();
    assert!(matches!(build_hankel(&z4, &GroupAlgebraElem::<Rational>::one(4), Ordering::TauOuter), Err(Error::Unsupported(_))));
    let s3 = load("s3");
    let gp = s3.presentation();
    let sigma = gp.index(&gp.generator(0));
    let q = divide_metacyclic(gp, &GroupAlgebraElem::<Rational>::delta(6, sigma), &GroupAlgebraElem::one(6)).unwrap();
    assert_eq!(q, GroupAlgebraElem::delta(6, gp.index(&gp.mul(&gp.generator(0), &gp.generator(0)).unwrap())));
    assert!(!is_unit_metacyclic(gp, &GroupAlgebraElem::<Rational>::from_i64(&[1; 6])).unwrap());
}
