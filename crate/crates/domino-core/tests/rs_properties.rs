use domino_core::operators::tau;
use domino_core::weyl::Side;
use domino_core::{rs, Kind, SignedPerm};
use proptest::prelude::*;

fn signed_perm(max_rank: usize) -> impl Strategy<Value = SignedPerm> {
    (1..=max_rank)
        .prop_flat_map(|n| (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n)))
        .prop_map(|(perm, signs)| {
            let images = perm.into_iter().zip(signs).map(|(v, neg)| if neg { -v } else { v }).collect();
            SignedPerm::new(images).unwrap()
        })
}

proptest! {
    #[test]
    fn insert_is_invertible(w in signed_perm(9), b in any::<bool>()) {
        let kind = if b { Kind::B } else { Kind::C };
        let p = rs::insert(&w, kind);
        prop_assert!(p.left.is_valid() && p.right.is_valid());
        prop_assert_eq!(p.left.shape(), p.right.shape());
        prop_assert_eq!(rs::extract(&p).unwrap(), w.clone());
        prop_assert_eq!(rs::insert(&w.inverse(), kind), p.swap());
    }

    #[test]
    fn tau_matches_descents(w in signed_perm(8)) {
        let p = rs::insert(&w, Kind::C);
        prop_assert_eq!(tau(&p.left), w.descents(Side::Left));
        prop_assert_eq!(tau(&p.right), w.descents(Side::Right));
    }
}
