#![allow(dead_code)]

use galnorm::ext::{ExtElem, LinearForm};
use galnorm::fixture::builtin;
use galnorm::galois::GaloisExtension;
use galnorm::group::GroupAlgebraElem;
use galnorm::scalar::{Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn load(name: &str) -> GaloisExtension<Rational> {
    builtin(name).unwrap().load().unwrap()
}

pub fn small<S: Scalar>(rng: &mut impl Rng, n: usize, lo: i64, hi: i64) -> Vec<S> {
    (0..n).map(|_| S::from_i64(rng.gen_range(lo..=hi))).collect()
}

pub fn elem<S: Scalar>(ext: &GaloisExtension<S>, rng: &mut impl Rng) -> ExtElem<S> {
    ext.field().elem(small(rng, ext.degree(), -5, 5)).unwrap()
}

pub fn form<S: Scalar>(ext: &GaloisExtension<S>, rng: &mut impl Rng) -> LinearForm<S> {
    LinearForm::new(small(rng, ext.degree(), -9, 9))
}

pub fn ga<S: Scalar>(n: usize, rng: &mut impl Rng) -> GroupAlgebraElem<S> {
    GroupAlgebraElem::new(small(rng, n, -5, 5))
}

pub mod strategy {
    use galnorm::poly::Poly;
    use galnorm::scalar::{Rational, Scalar};
    use proptest::prelude::*;

    pub fn ints(len: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-9i64..=9, len)
    }

    pub fn rationals(len: usize) -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-9i64..=9, 1i64..=4), len)
            .prop_map(|v| v.into_iter().map(|(p, q)| Rational::new(p, q)).collect())
    }

    pub fn poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
        (0..=max_len).prop_flat_map(rationals).prop_map(Poly::new)
    }

    pub fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Poly<Rational>> {
        poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
    }

    pub fn scalar_vec(len: usize) -> impl Strategy<Value = Vec<Rational>> {
        ints(len).prop_map(|v| v.into_iter().map(Rational::from_i64).collect())
    }
}
