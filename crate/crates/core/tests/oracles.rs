//! Library output against independently derived closed forms and frozen values.

use crystal_core::filtration::{dee_filtration, h_vee, jadic_filtration};
use crystal_core::graded::{extract_lie, graded_from_filtration};
use crystal_core::groups::jennings::{dimension_subgroups, eta};
use crystal_core::groups::lie::{build_restricted_enveloping, RestrictedLieInput};
use crystal_core::groups::{build_function_algebra, build_group_algebra, p_lower_central_series, FiniteGroup};
use crystal_core::rees::{drinfeld_prime, rees_of_filtration, DEFAULT_WINDOW_CAP};
use crystal_core::{FieldSpec, HopfAlgebraData, SparseVector};
use std::collections::BTreeSet;

fn poly_mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// ∏ over cyclic factors ℤ_{p^e} and 0 ≤ s < e of (1 + t^{p^s} + … + t^{(p−1)p^s}).
fn abelian_jennings_poly(p: usize, exps: &[u32]) -> Vec<usize> {
    let mut acc = vec![1];
    for &e in exps {
        for s in 0..e {
            let d = p.pow(s);
            let mut f = vec![0; (p - 1) * d + 1];
            for k in 0..p {
                f[k * d] = 1;
            }
            acc = poly_mul(&acc, &f);
        }
    }
    acc
}

fn closure(g: &FiniteGroup, gens: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = [g.identity()].into();
    let mut frontier: Vec<usize> = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// log_p of |G / ⟨[G,G], G^p⟩|, by brute force.
fn frattini_rank(g: &FiniteGroup, p: usize) -> usize {
    let mut gens = BTreeSet::new();
    for a in 0..g.order() {
        for b in 0..g.order() {
            gens.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
        }
        let mut x = g.identity();
        for _ in 0..p {
            x = g.mul(x, a);
        }
        gens.insert(x);
    }
    let n = closure(g, &gens).len();
    let mut q = g.order() / n;
    let mut r = 0;
    while q > 1 {
        assert_eq!(q % p, 0);
        q /= p;
        r += 1;
    }
    r
}

fn log_p(mut n: usize, p: usize) -> usize {
    let mut r = 0;
    while n > 1 {
        n /= p;
        r += 1;
    }
    r
}

fn power(h: &HopfAlgebraData, x: &SparseVector, k: u64) -> SparseVector {
    let mut acc = h.one().clone();
    for _ in 0..k {
        acc = h.mul(&acc, x);
    }
    acc
}

const ABELIAN: [(usize, &[u32]); 8] = [
    (2, &[1]),
    (2, &[2]),
    (2, &[3]),
    (2, &[1, 2]),
    (2, &[1, 1, 1]),
    (3, &[1]),
    (3, &[2]),
    (3, &[1, 1]),
];

#[test]
fn abelian_hat_profile_matches_generating_polynomial() {
    for (p, exps) in ABELIAN {
        let g = FiniteGroup::zp_powers(p, exps).unwrap();
        let h = build_group_algebra(&g, FieldSpec::gf(p as u64));
        let j = jadic_filtration(&h).unwrap();
        let expected = abelian_jennings_poly(p, exps);
        let hat = graded_from_filtration(&h, &j).unwrap();
        assert_eq!(hat.degree_profile(), expected, "p={p} exps={exps:?}");
        let mut remaining = g.order();
        for (n, c) in expected.iter().enumerate() {
            assert_eq!(j.term(n).dim(), remaining);
            remaining -= c;
        }
        assert_eq!(j.stable().dim(), 0);
    }
}

#[test]
fn abelian_eta_nilpotency_order_is_group_order() {
    for (p, exps) in ABELIAN {
        let g = FiniteGroup::zp_powers(p, exps).unwrap();
        let h = build_group_algebra(&g, FieldSpec::gf(p as u64));
        let hat = graded_from_filtration(&h, &jadic_filtration(&h).unwrap()).unwrap();
        for (i, &e) in exps.iter().enumerate() {
            let gi = g.index_of(&format!("g{}", i + 1)).unwrap();
            let x = hat.class_of(&eta(&h, &g, gi), -1);
            let q = (p as u64).pow(e);
            assert!(power(&hat.total, &x, q).is_zero());
            assert!(!power(&hat.total, &x, q - 1).is_zero());
        }
    }
}

fn group_fixtures() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("trivial", FiniteGroup::trivial()),
        ("Z2", FiniteGroup::cyclic(2)),
        ("Z4", FiniteGroup::cyclic(4)),
        ("Z2xZ4", FiniteGroup::zp_powers(2, &[1, 2]).unwrap()),
        ("Z2|xZ4", FiniteGroup::zp_semidirect_zp2(2)),
        ("S3", FiniteGroup::symmetric(3).unwrap()),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
    ]
}

#[test]
fn function_algebra_primitives_count_additive_characters() {
    for (name, g) in group_fixtures() {
        for p in [2usize, 3] {
            let a = build_function_algebra(&g, FieldSpec::gf(p as u64));
            assert_eq!(a.primitives().dim(), frattini_rank(&g, p), "{name} p={p}");
        }
        let a = build_function_algebra(&g, FieldSpec::rationals());
        assert_eq!(a.primitives().dim(), 0, "{name}");
    }
}

#[test]
fn function_algebra_dee_dims_complement_group_algebra_powers() {
    for (name, g) in group_fixtures() {
        for p in [2u64, 3] {
            let field = FieldSpec::gf(p);
            let j = jadic_filtration(&build_group_algebra(&g, field)).unwrap();
            let d = dee_filtration(&build_function_algebra(&g, field)).unwrap();
            for n in 0..=j.stable_index() + 1 {
                assert_eq!(d.term(n).dim(), g.order() - j.term(n + 1).dim(), "{name} p={p} n={n}");
            }
        }
    }
}

#[test]
fn hat_primitives_have_dimension_log_order() {
    for (name, g) in group_fixtures() {
        if !g.is_p_group(2) {
            continue;
        }
        let h = build_group_algebra(&g, FieldSpec::gf(2));
        let hat = graded_from_filtration(&h, &jadic_filtration(&h).unwrap()).unwrap();
        assert_eq!(extract_lie(&hat).unwrap().dim(), log_p(g.order(), 2), "{name}");
    }
}

#[test]
fn dimension_subgroups_by_definition() {
    for (name, g) in group_fixtures() {
        for p in [2usize, 3] {
            let field = FieldSpec::gf(p as u64);
            let h = build_group_algebra(&g, field);
            let j = jadic_filtration(&h).unwrap();
            let series = dimension_subgroups(&g, field).unwrap();
            for n in 1..=j.stable_index() + 1 {
                let direct: Vec<usize> = (0..g.order()).filter(|&x| j.term(n).contains(&eta(&h, &g, x))).collect();
                assert_eq!(series.term(n), direct.as_slice(), "{name} p={p} n={n}");
            }
        }
    }
}

#[test]
fn enveloping_tilde_profile_is_truncated_symmetric_algebra() {
    for lie in [RestrictedLieInput::abelian_line(2), RestrictedLieInput::affine(2), RestrictedLieInput::heisenberg(3)] {
        let env = build_restricted_enveloping(&lie).unwrap();
        let h = &env.algebra;
        let tilde = graded_from_filtration(h, &dee_filtration(h).unwrap()).unwrap();
        let p = lie.p();
        let mut expected = vec![1];
        for _ in 0..lie.dim() {
            expected = poly_mul(&expected, &vec![1; p]);
        }
        assert_eq!(tilde.degree_profile(), expected);
    }
}

#[test]
fn frozen_semidirect_values() {
    let g = FiniteGroup::zp_semidirect_zp2(2);
    let h = build_group_algebra(&g, FieldSpec::gf(2));
    let j = jadic_filtration(&h).unwrap();
    assert_eq!(j.dims(), vec![8, 7, 5, 3, 1, 0]);
    assert_eq!(p_lower_central_series(&g, 2).unwrap().orders(), vec![8, 2, 1]);
    let jr = rees_of_filtration(&h, &j).unwrap();
    let pr = drinfeld_prime(&jr, 12, DEFAULT_WINDOW_CAP).unwrap();
    assert!(pr.stabilized);
    assert_eq!(pr.rees.dims(), vec![(-2, 0), (-1, 4), (0, 8)]);
}

#[test]
fn frozen_symmetric_group_radicals() {
    let g = FiniteGroup::symmetric(3).unwrap();
    let q2 = h_vee(&build_group_algebra(&g, FieldSpec::gf(2))).unwrap();
    assert_eq!(q2.quotient.dim(), 2);
    let q3 = h_vee(&build_group_algebra(&g, FieldSpec::gf(3))).unwrap();
    assert_eq!(q3.quotient.dim(), 1);
    let q0 = h_vee(&build_group_algebra(&g, FieldSpec::rationals())).unwrap();
    assert_eq!(q0.quotient.dim(), 1);
}
