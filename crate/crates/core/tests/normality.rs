mod common;

use common::{load, rng};
use galnorm::error::Error;
use galnorm::ext::LinearForm;
use galnorm::fixture::{Fixture, BUILTIN};
use galnorm::normality::{is_normal_oracle, normal_to_power, normal_to_power_brute, Normality, NormalityVerdict, RandomConfig};
use galnorm::scalar::{Fp, Rational, Scalar};
use proptest::prelude::*;

const FIXTURES: [&str; 6] = ["gaussian", "cyclotomic5", "cyclotomic7", "biquadratic", "s3", "d4"];

#[test]
fn fixtures_round_trip() {
    for (name, src) in BUILTIN {
        let fx = Fixture::from_json(src).unwrap();
        let ext = fx.load::<Rational>().unwrap();
        let again = Fixture::from_extension(fx.name.clone(), &ext);
        assert_eq!(Fixture::from_json(&again.to_json()).unwrap(), fx, "{name}");
    }
}

#[test]
fn degenerate_sample_set() {
    let ext = load("gaussian");
    let cfg = RandomConfig { sample_size: 1, budget: 3, ..RandomConfig::default() };
    assert_eq!(Normality::new(&ext).unwrap().find_normal(&cfg).unwrap_err(), Error::BudgetExhausted { attempts: 3 });
}

#[test]
fn unsupported_kind() {
    let mut fx = galnorm::fixture::builtin("cyclotomic5").unwrap();
    fx.group.kind = "polycyclic".into();
    let ext = fx.load::<Rational>().unwrap();
    assert!(matches!(Normality::new(&ext), Err(Error::Unsupported(_))));
    let alpha = ext.field().xi();
    let ell = LinearForm::new(vec![Rational::one(); 4]);
    assert_eq!(
        galnorm::orbit::project_orbit_sum(&ext, &alpha, &ell).unwrap(),
        galnorm::orbit::brute_orbit_sum(&ext, &alpha, &ell).unwrap()
    );
}

#[test]
fn finite_field_search() {
    let ext = galnorm::fixture::builtin("cyclotomic17").unwrap().load::<Fp>().unwrap();
    let t = Normality::new(&ext).unwrap();
    let cfg = RandomConfig::with_seed(5);
    let (alpha, v) = t.find_normal(&cfg).unwrap();
    assert!(v.is_normal());
    let c = galnorm::group::GroupAlgebraElem::new(common::small::<Fp>(&mut rng(1), 16, 0, 100));
    let u = t.normal_to_power(&alpha, &c).unwrap();
    assert_eq!(t.power_to_normal(&alpha, &u, &cfg).unwrap(), c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn certificates_are_sound(f in 0usize..FIXTURES.len(), seed in any::<u64>(), degenerate in any::<bool>()) {
        let ext = load(FIXTURES[f]);
        let t = Normality::new(&ext).unwrap();
        let mut r = rng(seed);
        let mut alpha = common::elem(&ext, &mut r);
        if degenerate {
            // project onto the fixed field of the first generator
            let g = &ext.generators()[0];
            let k = ext.field();
            let mut acc = alpha.clone();
            let mut cur = alpha.clone();
            for _ in 1..ext.presentation().orders()[0] {
                cur = k.apply_aut(g, &cur);
                acc = k.add(&acc, &cur);
            }
            alpha = acc;
        }
        let oracle = is_normal_oracle(&ext, &alpha, 64).unwrap();
        let verdict = t.is_normal_mc(&alpha, &RandomConfig::with_seed(seed)).unwrap();
        if let NormalityVerdict::Normal { certificate, .. } = &verdict {
            prop_assert!(oracle);
            prop_assert!(t.certifies(&alpha, certificate, &RandomConfig::default()).unwrap());
        }
        if degenerate {
            prop_assert!(!oracle && !verdict.is_normal());
        }
    }

    #[test]
    fn conversions_invert(f in 0usize..FIXTURES.len(), seed in any::<u64>()) {
        let ext = load(FIXTURES[f]);
        let t = Normality::new(&ext).unwrap();
        let cfg = RandomConfig::with_seed(seed);
        let (alpha, _) = t.find_normal(&cfg).unwrap();
        let mut r = rng(seed);
        let u = common::elem(&ext, &mut r);
        let c = t.power_to_normal(&alpha, &u, &cfg).unwrap();
        prop_assert_eq!(normal_to_power_brute(&ext, &alpha, &c).unwrap(), u.clone());
        prop_assert_eq!(normal_to_power(&ext, &alpha, &c).unwrap(), u);
    }
}

#[test]
fn schema_matches_format() {
    let schema: serde_json::Value = serde_json::from_str(include_str!("../../../docs/fixture.schema.json")).unwrap();
    let keys = |v: &serde_json::Value| -> Vec<String> {
        let mut k: Vec<String> = v["properties"].as_object().unwrap().keys().cloned().collect();
        k.sort();
        k
    };
    assert_eq!(keys(&schema), ["group", "modulus", "name"]);
    assert_eq!(keys(&schema["properties"]["group"]), ["generators", "kind", "m", "orders", "s", "t", "u"]);
    let mut extra: serde_json::Value = serde_json::from_str(&galnorm::fixture::builtin("gaussian").unwrap().to_json()).unwrap();
    extra["group"]["comment"] = serde_json::json!("x");
    assert!(Fixture::from_json(&extra.to_string()).is_err());
}
