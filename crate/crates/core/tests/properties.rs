use num_rational::BigRational;
use proptest::prelude::*;

use cdstrat::exactlin::IntVector;
use cdstrat::toric::{self, Fan};

fn fans() -> impl Strategy<Value = Fan> {
    prop_oneof![(1usize..=4).prop_map(Fan::projective_space), (0i64..=4).prop_map(Fan::hirzebruch),]
}

fn fan_and_lambda() -> impl Strategy<Value = (Fan, Vec<i64>)> {
    fans().prop_flat_map(|f| {
        let d = f.rank();
        (Just(f), prop::collection::vec(-5i64..=5, d).prop_filter("nonzero", |l| l.iter().any(|&x| x != 0)))
    })
}

proptest! {
    #[test]
    fn negating_lambda_swaps_sink_and_source((fan, l) in fan_and_lambda()) {
        let r = toric::analyze(&fan, &IntVector::from(l.clone())).unwrap();
        let neg = toric::analyze(&fan, &IntVector::from(l.iter().map(|x| -x).collect::<Vec<_>>())).unwrap();
        prop_assert_eq!(r.components.len(), neg.components.len());
        for (a, b) in r.components.iter().zip(&neg.components) {
            prop_assert_eq!(&a.cone, &b.cone);
            prop_assert_eq!(a.dim_plus, b.dim_minus);
            prop_assert_eq!(a.dim_minus, b.dim_plus);
            prop_assert_eq!(a.is_sink, b.is_source);
        }
        prop_assert_eq!(r.cd_minus_sink, neg.cd_minus_source);
    }

    #[test]
    fn scaling_lambda_scales_coefficients_only((fan, l) in fan_and_lambda(), k in 2i64..=4) {
        let r = toric::analyze(&fan, &IntVector::from(l.clone())).unwrap();
        let s = toric::analyze(&fan, &IntVector::from(l.iter().map(|x| k * x).collect::<Vec<_>>())).unwrap();
        let k = BigRational::from_integer(k.into());
        for (a, b) in r.components.iter().zip(&s.components) {
            prop_assert_eq!(&a.cone, &b.cone);
            prop_assert_eq!((a.dim_y, a.dim_plus, a.dim_minus), (b.dim_y, b.dim_plus, b.dim_minus));
            let scaled: Vec<BigRational> = a.coefficients.iter().map(|c| c * &k).collect();
            prop_assert_eq!(&scaled, &b.coefficients);
        }
        prop_assert_eq!(r.cd_minus_sink, s.cd_minus_sink);
    }

    #[test]
    fn cd_is_below_dimension((fan, l) in fan_and_lambda()) {
        let r = toric::analyze(&fan, &IntVector::from(l)).unwrap();
        prop_assert!(r.cd_minus_sink < r.rank);
        prop_assert!(r.cd_minus_source < r.rank);
    }
}
