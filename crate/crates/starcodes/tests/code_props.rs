mod common;

use common::{all_words, brute_dmin, codes, field, full_support_codes};
use proptest::prelude::*;
use starcodes::code::parse_code;
use starcodes::metrics::{ddual, dmin};
use starcodes::{word, Echelon, LinearCode, SubfieldEmbedding};

const QS: &[u64] = &[2, 3, 4];

fn one(c: &LinearCode) -> LinearCode {
    LinearCode::repetition(c.field(), c.n())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn biduality_and_orthogonality(cs in codes(QS, 10, 1)) {
        let c = &cs[0];
        let d = c.dual();
        prop_assert_eq!(d.k(), c.n() - c.k());
        prop_assert_eq!(&d.dual(), c);
        let f = c.field();
        for x in c.rows() {
            for y in d.rows() {
                prop_assert_eq!(f.dot(x, y), 0);
            }
        }
    }

    #[test]
    fn semiring_laws(cs in codes(QS, 7, 3)) {
        let (a, b, c) = (&cs[0], &cs[1], &cs[2]);
        prop_assert_eq!(a.star(b).unwrap(), b.star(a).unwrap());
        prop_assert_eq!(a.star(&b.star(c).unwrap()).unwrap(), a.star(b).unwrap().star(c).unwrap());
        prop_assert_eq!(a.star(&b.sum(c).unwrap()).unwrap(), a.star(b).unwrap().sum(&a.star(c).unwrap()).unwrap());
        prop_assert_eq!(&a.star(&one(a)).unwrap(), a);
        let p = a.star(b).unwrap();
        prop_assert!(p.k() <= a.n().min(a.k() * b.k()));
    }

    #[test]
    fn power_law(cs in codes(QS, 6, 1), t in 0usize..3, s in 0usize..3) {
        let c = &cs[0];
        prop_assert_eq!(c.power(t).star(&c.power(s)).unwrap(), c.power(t + s));
        prop_assert_eq!(&c.power(1), c);
    }

    #[test]
    fn support_of_product(cs in codes(QS, 8, 3)) {
        let mut inter = cs[0].support();
        for c in &cs[1..] {
            let s = c.support();
            inter.retain(|j| s.contains(j));
        }
        prop_assert_eq!(LinearCode::star_all(&cs).unwrap().support(), inter);
    }

    #[test]
    fn product_matches_brute_force(cs in codes(QS, 6, 2)) {
        let (a, b) = (&cs[0], &cs[1]);
        let q = a.field().q() as u64;
        prop_assume!(q.pow((a.k() + b.k()) as u32) <= 4096);
        let f = a.field();
        let mut e = Echelon::new(f, a.n());
        for u in all_words(a) {
            for v in all_words(b) {
                e.insert(word::star(f, &u, &v));
            }
        }
        prop_assert_eq!(LinearCode::from_generator(&e.to_mat()), a.star(b).unwrap());
    }

    #[test]
    fn monotone_along_powers(cs in full_support_codes(QS, 6, 1)) {
        let c = &cs[0];
        let r = c.regularity().unwrap();
        let pw = c.powers(r + 2);
        for t in 0..=r + 1 {
            let (x, y) = (&pw[t], &pw[t + 1]);
            if t < r {
                prop_assert!(x.k() < y.k(), "dims must increase strictly below r");
            } else {
                prop_assert_eq!(x.k(), y.k());
            }
            if t >= 1 {
                prop_assert!(dmin(y).unwrap() <= dmin(x).unwrap());
                prop_assert!(ddual(y).unwrap() >= ddual(x).unwrap());
            }
        }
        prop_assert_eq!(pw[r].k(), c.projective_length());
        prop_assert!(r <= c.projective_length() + 1 - c.k());
    }

    #[test]
    fn adjunction(cs in codes(QS, 7, 3), extend in any::<bool>()) {
        let (c, c1) = (&cs[0], &cs[1]);
        // Half the time force C ∗ C1 ⊂ C2 so both sides of the equivalence get exercised.
        let c2 = if extend { c.star(c1).unwrap().sum(&cs[2]).unwrap() } else { cs[2].clone() };
        let lhs = c.star(c1).unwrap().is_subcode_of(&c2);
        let rhs = c.star(&c2.dual()).unwrap().is_subcode_of(&c1.dual());
        prop_assert_eq!(lhs, rhs);
        let cc = c.star(c1).unwrap().dual();
        prop_assert!(c.star(&cc).unwrap().is_subcode_of(&c1.dual()));
    }

    #[test]
    fn stabilizing_algebra_properties(cs in codes(QS, 7, 1), t in 1usize..4) {
        let c = &cs[0];
        let (ext, alg) = c.stabilizing_algebra();
        prop_assert_eq!(&ext, &c.dual().stabilizing_algebra().0);
        prop_assert_eq!(&alg.power(t).star(&LinearCode::indicator(c.field(), c.n(), &c.support())).unwrap(), &alg);
        prop_assert!(alg.power(t).is_subcode_of(&alg));
        prop_assert!(ext.is_subcode_of(&c.power(t).stabilizing_algebra().0));
        prop_assert_eq!(&ext.stabilizing_algebra().0, &ext);
        prop_assert!(c.star(&ext).unwrap().is_subcode_of(c));
    }

    #[test]
    fn stabilizing_algebra_direct(cs in codes(&[2, 3], 6, 1)) {
        let c = &cs[0];
        let q = c.field().q() as u64;
        prop_assume!(q.pow(c.n() as u32) <= 4096);
        let full = LinearCode::full(c.field(), c.n());
        let f = c.field();
        let direct: Vec<Vec<u32>> = all_words(&full).into_iter().filter(|a| c.rows().all(|g| c.contains(&word::star(f, a, g)))).collect();
        let direct = LinearCode::from_rows(f, c.n(), &direct).unwrap();
        prop_assert_eq!(direct, c.stabilizing_algebra().0);
    }

    #[test]
    fn decomposition_sums_back(cs in codes(QS, 7, 2)) {
        let c = cs[0].sum(&cs[1]).unwrap();
        prop_assume!(!c.is_zero());
        let (part, comps) = c.decompose().unwrap();
        let (_, alg) = c.stabilizing_algebra();
        prop_assert_eq!(part.len(), alg.k());
        let total = comps.iter().try_fold(LinearCode::zero(c.field(), c.n()), |acc, x| acc.sum(x)).unwrap();
        prop_assert_eq!(&total, &c);
        prop_assert_eq!(comps.iter().map(LinearCode::k).sum::<usize>(), c.k());
    }

    #[test]
    fn column_classes_of_product(cs in codes(QS, 7, 2)) {
        let (a, b) = (&cs[0], &cs[1]);
        let lhs = a.star(b).unwrap().repeated_columns();
        prop_assert_eq!(lhs, a.repeated_columns().meet(&b.repeated_columns()));
        prop_assert_eq!(a.repeated_columns().len(), a.projective_length());
    }

    #[test]
    fn scalar_extension(cs in codes(&[2, 3], 6, 2)) {
        let (a, b) = (&cs[0], &cs[1]);
        let emb = SubfieldEmbedding::of_orders(a.field().q() as u64, 2).unwrap();
        let (ak, bk) = (a.extend_scalars(&emb).unwrap(), b.extend_scalars(&emb).unwrap());
        prop_assert_eq!(ak.k(), a.k());
        if !a.is_zero() {
            prop_assert_eq!(dmin(&ak).unwrap(), brute_dmin(a).unwrap());
        }
        prop_assert_eq!(a.star(b).unwrap().extend_scalars(&emb).unwrap(), ak.star(&bk).unwrap());
        let down = ak.trace_descent(&emb).unwrap();
        prop_assert!(a.is_subcode_of(&down));
        prop_assert_eq!(down.support(), a.support());
    }

    #[test]
    fn full_support_word_found(cs in codes(QS, 7, 1)) {
        let c = &cs[0];
        prop_assume!(!c.is_zero());
        let (emb, w) = c.full_support_word().unwrap();
        prop_assert!(emb.degree() as usize <= c.k());
        prop_assert_eq!(word::support(&w), c.support());
        prop_assert!(c.extend_scalars(&emb).unwrap().contains(&w));
    }

    #[test]
    fn text_round_trip(cs in codes(&[2, 3, 4, 5, 7, 8, 9], 9, 1)) {
        let c = &cs[0];
        prop_assert_eq!(&parse_code(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn dim_it_counts_relations(cs in codes(QS, 6, 1), t in 1usize..4) {
        let c = &cs[0];
        let k = c.k() as u64;
        if k > 0 {
            let expect = starcodes::code::binomial(k + t as u64 - 1, t as u64) - c.power(t).k() as u128;
            prop_assert_eq!(c.dim_it(t), expect);
        }
        prop_assert_eq!(c.dim_it(1), 0);
    }
}

#[test]
fn mismatched_products_error() {
    let a = LinearCode::full(&field(2), 3);
    assert!(a.star(&LinearCode::full(&field(2), 4)).is_err());
    assert!(a.star(&LinearCode::full(&field(3), 3)).is_err());
}
