use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use symlattice::bijections::{phi, phi_inverse, psi, psi_inverse, AscentMarking, UpStepMask};
use symlattice::identities::{binomial_transform, inverse_binomial_transform};
use symlattice::paths::{LatticePath, Step};
use symlattice::riordan::RiordanArray;
use symlattice::series::TruncatedSeries;

const ORDER: usize = 32;

fn integer_series(order: usize, lead: &'static [i64]) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(-5i64..=5, order - lead.len()).prop_map(move |tail| {
        let all: Vec<i64> = lead.iter().copied().chain(tail).collect();
        TruncatedSeries::from_integers(all).unwrap()
    })
}

fn rational_series(order: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((-9i64..=9, 1i64..=4), order).prop_map(|pairs| {
        let coeffs = pairs
            .into_iter()
            .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
            .collect();
        TruncatedSeries::new(coeffs).unwrap()
    })
}

/// Riordan group member with small integer coefficients.
fn member(order: usize) -> impl Strategy<Value = RiordanArray> {
    (integer_series(order, &[1]), integer_series(order, &[0, 1]))
        .prop_map(|(g, f)| RiordanArray::new(g, f).unwrap())
}

/// Left half of a symmetric Dyck path: a coin sequence with forbidden dips flipped up.
fn dyck_half(max: usize) -> impl Strategy<Value = LatticePath> {
    prop::collection::vec(any::<bool>(), 0..=max).prop_map(|coins| {
        let mut h = 0i64;
        let steps = coins
            .into_iter()
            .map(|up| {
                let s = if up || h == 0 { Step::Up } else { Step::Down };
                h += s.rise();
                s
            })
            .collect();
        LatticePath::new(steps)
    })
}

/// Left half of a free symmetric Schroeder path, clipped to width `max`.
fn free_schroeder_half(max: usize) -> impl Strategy<Value = LatticePath> {
    prop::collection::vec(0u8..3, 0..=max).prop_map(move |picks| {
        let mut width = 0;
        let mut steps = Vec::new();
        for p in picks {
            let s = [Step::Up, Step::Down, Step::WideLevel][p as usize];
            if width + s.width() > max {
                break;
            }
            width += s.width();
            steps.push(s);
        }
        LatticePath::new(steps)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reversion_round_trips(f in integer_series(ORDER, &[0, 1])) {
        let g = f.revert().unwrap();
        let x = TruncatedSeries::x(ORDER);
        prop_assert_eq!(g.compose(&f).unwrap(), x.clone());
        prop_assert_eq!(f.compose(&g).unwrap(), x);
    }

    #[test]
    fn square_root_squares_back(a in integer_series(ORDER, &[1])) {
        let r = a.sqrt().unwrap();
        prop_assert_eq!(&r * &r, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_commutes(a in rational_series(16), b in rational_series(16)) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn division_inverts_multiplication(a in rational_series(16), b in rational_series(16)) {
        prop_assume!(!b.constant().is_zero());
        let q = a.div(&b).unwrap();
        prop_assert_eq!(&q * &b, a);
    }

    #[test]
    fn riordan_group_laws(a in member(10), b in member(10), c in member(10)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let id = RiordanArray::identity(10);
        prop_assert_eq!(a.multiply(&id).unwrap(), a.clone());
        prop_assert_eq!(id.multiply(&a).unwrap(), a.clone());
        let inv = a.inverse().unwrap();
        prop_assert_eq!(a.multiply(&inv).unwrap(), id.clone());
        prop_assert_eq!(inv.multiply(&a).unwrap(), id);
    }

    #[test]
    fn binomial_transform_is_invertible(values in prop::collection::vec(any::<i64>(), 1..=21)) {
        let a: Vec<BigInt> = values.into_iter().map(BigInt::from).collect();
        prop_assert_eq!(inverse_binomial_transform(&binomial_transform(&a)), a);
    }

    #[test]
    fn phi_lowers_by_twice_the_ascent(q in dyck_half(16), pick in any::<prop::sample::Index>()) {
        let k = AscentMarking::new(&q).unwrap().mid_height();
        let i = pick.index(k + 1);
        let p = phi(&q, i).unwrap();
        prop_assert_eq!(p.end_height(), k as i64 - 2 * i as i64);
        prop_assert_eq!(phi_inverse(&p).unwrap(), (q, i));
    }

    #[test]
    fn psi_round_trips(q in free_schroeder_half(16), bits in prop::collection::vec(any::<bool>(), 16)) {
        let ups = q.count_of(Step::Up);
        let mask = UpStepMask(bits[..ups].to_vec());
        let p = psi(&q, &mask).unwrap();
        prop_assert_eq!(psi_inverse(&p).unwrap(), (q, mask));
    }
}
