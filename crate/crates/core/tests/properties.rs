use crystal_core::exactlin::{inv_mod, sum_and_intersect};
use crystal_core::filtration::{dee_filtration, jadic_filtration};
use crystal_core::groups::{build_group_algebra, jennings_net, FiniteGroup};
use crystal_core::hopf::random_law_suite;
use crystal_core::pairing::{canonical_group_pairing, orthogonality_identity};
use crystal_core::{FieldSpec, LinearMap, Scalar, SparseVector, Subspace};
use proptest::prelude::*;

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::gf(2)),
        Just(FieldSpec::gf(3)),
        Just(FieldSpec::gf(5)),
        Just(FieldSpec::gf(7)),
        Just(FieldSpec::rationals()),
    ]
}

fn scalar(f: &FieldSpec, n: i64, d: i64) -> Scalar {
    match f.from_ratio(n, d) {
        Ok(s) => s,
        Err(_) => f.from_i64(n),
    }
}

fn vector(f: &FieldSpec, coeffs: &[(i64, i64)]) -> SparseVector {
    let dense: Vec<Scalar> = coeffs.iter().map(|&(n, d)| scalar(f, n, d)).collect();
    SparseVector::from_dense(&dense)
}

fn small_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::trivial(),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(4),
        FiniteGroup::zp_powers(2, &[1, 2]).unwrap(),
        FiniteGroup::zp_semidirect_zp2(2),
        FiniteGroup::symmetric(3).unwrap(),
        FiniteGroup::dihedral(4),
        FiniteGroup::quaternion(),
        FiniteGroup::cyclic(3),
        FiniteGroup::zp_powers(3, &[1, 1]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gf_inverse(p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 65_521]), a in 1u64..1_000_000) {
        let a = a % p;
        prop_assume!(a != 0);
        let inv = inv_mod(a, p).unwrap();
        prop_assert_eq!((a as u128 * inv as u128) % p as u128, 1);
        let f = FieldSpec::gf(p);
        let s = f.from_i64(a as i64);
        prop_assert!((&s * &s.inv().unwrap()).is_one());
    }

    #[test]
    fn field_laws(f in field_strategy(), a in (-50i64..50, 1i64..20), b in (-50i64..50, 1i64..20), c in (-50i64..50, 1i64..20)) {
        let (x, y, z) = (scalar(&f, a.0, a.1), scalar(&f, b.0, b.1), scalar(&f, c.0, c.1));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn rationals_never_overflow(a in any::<i64>(), b in any::<i64>(), e in 1u64..6) {
        let f = FieldSpec::rationals();
        let x = f.from_i64(a);
        let y = f.from_i64(b);
        let big = (&x * &y).pow(e);
        let back = &big - &(&x * &y).pow(e);
        prop_assert!(back.is_zero());
        if b != 0 {
            let q = &(&x * &y) * &y.inv().unwrap();
            prop_assert_eq!(q, x);
        }
    }

    #[test]
    fn dimension_formula(f in field_strategy(), rows in prop::collection::vec(prop::collection::vec((-3i64..4, 1i64..3), 5), 1..7), split in 0usize..7) {
        let vs: Vec<SparseVector> = rows.iter().map(|r| vector(&f, r)).collect();
        let k = split.min(vs.len());
        let u = Subspace::span(5, &vs[..k]).unwrap();
        let w = Subspace::span(5, &vs[k..]).unwrap();
        let (s, i) = sum_and_intersect(&u, &w).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
        prop_assert!(u.is_subspace_of(&s) && w.is_subspace_of(&s));
        for v in &vs {
            prop_assert!(s.contains(v));
        }
    }

    #[test]
    fn rank_nullity(f in field_strategy(), cols in prop::collection::vec(prop::collection::vec((-3i64..4, 1i64..3), 4), 1..7)) {
        let cs: Vec<SparseVector> = cols.iter().map(|c| vector(&f, c)).collect();
        let n = cs.len();
        let m = LinearMap::new(f, n, 4, cs).unwrap();
        let ker = m.kernel();
        prop_assert_eq!(ker.dim() + m.rank(), n);
        for v in ker.basis() {
            prop_assert!(m.apply(v).is_zero());
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn delta_laws_on_group_algebras(idx in 0usize..10, seed in any::<u64>(), fi in 0usize..3) {
        let g = &small_groups()[idx];
        let field = [FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::rationals()][fi];
        let h = build_group_algebra(g, field);
        let r = random_law_suite(&h, seed, 3, 3).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn filtrations_are_monotone_and_orthogonal(idx in 0usize..10, fi in 0usize..3) {
        let g = &small_groups()[idx];
        let field = [FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::rationals()][fi];
        let h = build_group_algebra(g, field);
        let j = jadic_filtration(&h).unwrap();
        let d = dee_filtration(&h).unwrap();
        for n in 0..=j.stable_index() {
            prop_assert!(j.term(n + 1).is_subspace_of(j.term(n)));
        }
        for n in 0..=d.stable_index() {
            prop_assert!(d.term(n).is_subspace_of(d.term(n + 1)));
        }
        let p = canonical_group_pairing(g, field).unwrap().swap();
        prop_assert!(orthogonality_identity(&p).is_ok());
    }

    #[test]
    fn jennings_poincare_is_palindromic(idx in 0usize..10, p in prop::sample::select(vec![2usize, 3])) {
        let g = &small_groups()[idx];
        prop_assume!(g.is_p_group(p));
        let net = jennings_net(g, p).unwrap();
        let poly = net.poincare();
        let mut rev = poly.clone();
        rev.reverse();
        prop_assert_eq!(&poly, &rev);
        prop_assert_eq!(poly.iter().sum::<usize>(), g.order());
    }
}
