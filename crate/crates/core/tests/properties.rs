use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ponzeta::fock::{Basis, FockVec};
use ponzeta::pon::{apply_pon, compose_pons, Flavor, PonOp};
use ponzeta::weyl::{normal_order, parse, NormalForm};

fn normal_form() -> impl Strategy<Value = NormalForm> {
    prop::collection::vec((0u32..4, 0u32..4, -5i64..=5), 0..5).prop_map(|terms| {
        terms.into_iter().fold(NormalForm::zero(), |acc, (j, k, c)| {
            acc.add(&NormalForm::monomial(j, k, BigRational::from_integer(BigInt::from(c))))
        })
    })
}

fn state(cutoff: u64) -> impl Strategy<Value = FockVec<BigRational>> {
    prop::collection::vec((1..=cutoff, -9i64..=9), 1..6).prop_map(move |terms| {
        let mut v = FockVec::new(Basis::DividedPower, cutoff);
        for (n, c) in terms {
            v.add_to(n, BigRational::from_integer(BigInt::from(c))).unwrap();
        }
        v
    })
}

proptest! {
    #[test]
    fn multiplication_routes_agree(x in normal_form(), y in normal_form()) {
        prop_assert_eq!(x.rewrite_mul(&y), x.pbw_mul(&y));
    }

    #[test]
    fn multiplication_is_associative(x in normal_form(), y in normal_form(), z in normal_form()) {
        prop_assert_eq!(x.pbw_mul(&y).pbw_mul(&z), x.pbw_mul(&y.pbw_mul(&z)));
    }

    #[test]
    fn printed_normal_form_reparses_to_itself(x in normal_form()) {
        let reparsed = normal_order(&parse(&x.to_string()).unwrap());
        prop_assert_eq!(reparsed, x);
    }

    #[test]
    fn annihilator_undoes_creator(m in 1u64..8, v in state(20)) {
        let up = apply_pon(&PonOp::create(m).unwrap(), &v.clone().with_cutoff(200).unwrap()).unwrap();
        let back = apply_pon(&PonOp::annihilate(m).unwrap(), &up).unwrap();
        prop_assert!(back.same_state(&v));
    }

    #[test]
    fn composition_matches_sequential_application(m in 1u64..6, n in 1u64..6, v in state(10)) {
        let v = v.with_cutoff(400).unwrap();
        let (am, an) = (PonOp::create(m).unwrap(), PonOp::create(n).unwrap());
        let sequential = apply_pon(&am, &apply_pon(&an, &v).unwrap()).unwrap();
        let composed = apply_pon(&compose_pons(Flavor::Create, &[am, an]).unwrap(), &v).unwrap();
        prop_assert_eq!(sequential, composed);
    }
}
