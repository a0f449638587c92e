//! Property checks that span modules: bijection round trips on random ped
//! partitions, and series coefficients against enumeration.

use proptest::prelude::*;

use ped_core::{
    enumerate_class, phi1, phi3, psi1, psi3, Bijection, CaseTag, Partition, PartitionClass, SeriesExpr,
};

fn ped_partition() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1u32..=30, 1..12).prop_filter_map("ped and nonempty", |parts| {
        let p = Partition::new(parts).ok()?;
        p.is_member(PartitionClass::Ped).then_some(p)
    })
}

proptest! {
    #[test]
    fn phi1_round_trips(lambda in ped_partition()) {
        let n = lambda.weight();
        let m = phi1(&lambda).unwrap();
        prop_assert!(m.image.is_member(PartitionClass::De1));
        prop_assert_eq!(m.target_weight, m.image.weight());
        let expected_weight = if m.case_tag == CaseTag::P1Case1 { n } else { n - 1 };
        prop_assert_eq!(m.target_weight, expected_weight);
        let back = psi1(&m.image, n).unwrap();
        prop_assert_eq!(&back.image, &lambda);
        prop_assert_eq!(back.case_tag, m.case_tag.partner());
    }

    #[test]
    fn phi3_round_trips(lambda in ped_partition()) {
        let n = lambda.weight();
        let m = phi3(&lambda).unwrap();
        prop_assert!(m.image.is_member(PartitionClass::De3));
        prop_assert_eq!(Some(m.case_tag), Bijection::Phi3.expected_case(&lambda));
        let shift: i64 = match m.case_tag {
            CaseTag::P3Case1 | CaseTag::P3Case2i => 2,
            CaseTag::P3Case2ii => -1,
            other => panic!("{other}"),
        };
        prop_assert_eq!(m.target_weight as i64, n as i64 + shift);
        let back = psi3(&m.image, n).unwrap();
        prop_assert_eq!(&back.image, &lambda);
        prop_assert_eq!(back.case_tag, m.case_tag.partner());
    }

    #[test]
    fn canonical_form_is_order_independent(mut parts in proptest::collection::vec(1u32..=20, 0..10)) {
        let a = Partition::new(parts.clone()).unwrap();
        parts.reverse();
        let b = Partition::new(parts.clone()).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.parts().windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(a.weight(), parts.iter().map(|&p| u64::from(p)).sum::<u64>());
    }
}

#[test]
fn generating_functions_count_their_classes() {
    let order = 36;
    let pairs = [
        (SeriesExpr::Ped, PartitionClass::Ped),
        (SeriesExpr::FourRegular, PartitionClass::FourRegular),
        (SeriesExpr::De1, PartitionClass::De1),
        (SeriesExpr::De2, PartitionClass::De2),
        (SeriesExpr::De3, PartitionClass::De3),
    ];
    for (expr, class) in pairs {
        let s = expr.build(order).unwrap();
        for n in 0..=order {
            assert_eq!(s.coeffs()[n], enumerate_class(n as u32, class).len() as i128, "{expr} at q^{n}");
        }
    }
}

#[test]
fn phi3_case_split_is_exhaustive() {
    for n in 1..=24 {
        for lambda in enumerate_class(n, PartitionClass::Ped) {
            let parts = lambda.parts();
            let head = parts[0];
            let second = parts.get(1).copied().unwrap_or(0);
            let conditions = [head % 2 == 1, head % 2 == 0 && second + 1 == head, head % 2 == 0 && second + 1 < head];
            assert_eq!(conditions.iter().filter(|&&c| c).count(), 1, "{lambda}");
        }
    }
}
