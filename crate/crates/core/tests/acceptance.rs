//! One line per acceptance criterion; exits non-zero if any fails.

use crystal_core::filtration::{dee_filtration, h_prime, h_vee, jadic_filtration};
use crystal_core::graded::{extract_lie, graded_from_filtration, is_truncated_on, poisson_on_graded, GradedBialgebraData};
use crystal_core::groups::jennings::{dimension_subgroups, eta, jennings_hall_check, poisson_group_check};
use crystal_core::groups::lie::{build_restricted_enveloping, RestrictedLieInput};
use crystal_core::groups::{
    build_function_algebra, build_group_algebra, build_monoid_bialgebra, p_lower_central_series, FiniteGroup,
    FiniteMonoid,
};
use crystal_core::hopf::random_law_suite;
use crystal_core::pairing::{canonical_group_pairing, orthogonality_identity};
use crystal_core::rees::{drinfeld_vee, fiber_t0, fiber_t1, rees_of_filtration, LaurentModule, SemiclassicalLimit, DEFAULT_WINDOW_CAP};
use crystal_core::{FieldSpec, HopfAlgebraData, SparseVector};
use std::time::Instant;

type Outcome = Result<String, String>;

fn groups() -> Vec<(&'static str, FiniteGroup)> {
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

fn fields() -> Vec<FieldSpec> {
    vec![FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::rationals()]
}

fn lies() -> Vec<(&'static str, RestrictedLieInput)> {
    vec![
        ("line/GF(2)", RestrictedLieInput::abelian_line(2)),
        ("affine/GF(2)", RestrictedLieInput::affine(2)),
        ("heisenberg/GF(3)", RestrictedLieInput::heisenberg(3)),
    ]
}

/// Every constructor on every fixture.
fn all_algebras() -> Vec<(String, HopfAlgebraData)> {
    let mut out = Vec::new();
    for (name, g) in groups() {
        for f in fields() {
            out.push((format!("k[{name}]/{}", f.label()), build_group_algebra(&g, f)));
            out.push((format!("A({name})/{}", f.label()), build_function_algebra(&g, f)));
        }
    }
    for (name, l) in lies() {
        out.push((format!("u({name})"), build_restricted_enveloping(&l).unwrap().algebra));
    }
    for f in fields() {
        out.push((format!("k[idempotent monoid]/{}", f.label()), build_monoid_bialgebra(&FiniteMonoid::idempotent(), f)));
    }
    out
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn c1_axioms() -> Outcome {
    let start = Instant::now();
    let algebras = all_algebras();
    for (name, h) in &algebras {
        let v = h.validate();
        if let Some(c) = v.checks.iter().find(|c| !c.passed) {
            return Err(format!("{name}: {} fails at {:?}", c.axiom, c.witness));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 10.0, || format!("took {secs:.2}s"))?;
    Ok(format!("{} algebras validated in {secs:.2}s", algebras.len()))
}

fn c2_group_algebra_prime() -> Outcome {
    let mut n = 0;
    for (name, g) in groups() {
        for f in fields() {
            let h = build_group_algebra(&g, f);
            let hp = h_prime(&h).map_err(err)?;
            let tilde = graded_from_filtration(&h, &dee_filtration(&h).map_err(err)?).map_err(err)?;
            check(hp.sub.dim() == 1 && tilde.dim() == 1, || {
                format!("{name}/{}: H′ dim {}, H̃ dim {}", f.label(), hp.sub.dim(), tilde.dim())
            })?;
            n += 1;
        }
    }
    Ok(format!("H′ = H̃ = k·1 on {n} group algebras"))
}

fn c3_function_algebra_vee() -> Outcome {
    let mut n = 0;
    for (name, g) in groups() {
        for f in fields() {
            let a = build_function_algebra(&g, f);
            let j = jadic_filtration(&a).map_err(err)?;
            let hv = h_vee(&a).map_err(err)?;
            let hat = graded_from_filtration(&a, &j).map_err(err)?;
            let ok = j.term(1) == j.term(2) && j.term(1) == j.stable() && hv.quotient.dim() == 1 && hat.dim() == 1;
            check(ok, || format!("{name}/{}: J dims {:?}", f.label(), j.dims()))?;
            n += 1;
        }
    }
    Ok(format!("J = J² = J^∞, A^∨ = Â = k on {n} function algebras"))
}

fn p_groups() -> Vec<(&'static str, FiniteGroup, usize)> {
    let mut out: Vec<(&'static str, FiniteGroup, usize)> = groups()
        .into_iter()
        .filter(|(_, g)| g.is_p_group(2) && g.order() <= 16)
        .map(|(n, g)| (n, g, 2))
        .collect();
    out.push(("Z2^4", FiniteGroup::zp_powers(2, &[1, 1, 1, 1]).unwrap(), 2));
    out.push(("D8", FiniteGroup::dihedral(8), 2));
    out.push(("Z3", FiniteGroup::cyclic(3), 3));
    out.push(("Z9", FiniteGroup::cyclic(9), 3));
    out.push(("Z3xZ3", FiniteGroup::zp_powers(3, &[1, 1]).unwrap(), 3));
    out.push(("trivial", FiniteGroup::trivial(), 3));
    out
}

fn c4_dimension_subgroups() -> Outcome {
    let start = Instant::now();
    let fixtures = p_groups();
    for (name, g, p) in &fixtures {
        let d = dimension_subgroups(g, FieldSpec::gf(*p as u64)).map_err(err)?;
        let s = p_lower_central_series(g, *p).map_err(err)?;
        let top = d.terms.len().max(s.terms.len()) + 1;
        for n in 1..=top {
            let (mut a, mut b) = (d.term(n).to_vec(), s.term(n).to_vec());
            a.sort_unstable();
            b.sort_unstable();
            check(a == b, || format!("{name}, p = {p}: differ at n = {n}"))?;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 60.0, || format!("took {secs:.2}s"))?;
    Ok(format!("{} p-groups agree term by term in {secs:.2}s", fixtures.len()))
}

fn c5_jennings_lie() -> Outcome {
    for (name, g, p) in p_groups() {
        let r = jennings_hall_check(&g, p).map_err(|e| format!("{name}: {e}"))?;
        let h = build_group_algebra(&g, FieldSpec::gf(p as u64));
        let hat = graded_from_filtration(&h, &jadic_filtration(&h).map_err(err)?).map_err(err)?;
        let counts: Vec<usize> = r.part_b.iter().map(|x| x.weighted_monomials).collect();
        let mut profile = hat.degree_profile();
        profile.resize(counts.len().max(profile.len()), 0);
        let mut counts_padded = counts.clone();
        counts_padded.resize(profile.len(), 0);
        check(profile == counts_padded, || format!("{name}: Ĥ {profile:?} vs monomials {counts:?}"))?;
    }
    let r = jennings_hall_check(&FiniteGroup::zp_semidirect_zp2(2), 2).map_err(err)?;
    let c = &r.part_e;
    let idx = |l: &str| c.labels.iter().position(|x| x == l).unwrap();
    let (nu, tau, tau2) = (idx("nu"), idx("tau"), idx("tau^2"));
    let bracket = c.bracket.iter().find(|x| x.0 == nu && x.1 == tau).map(|x| x.2.clone());
    let pmap = c.pmap.iter().find(|x| x.0 == tau).map(|x| x.1.clone());
    check(bracket == Some(vec![(tau2, 1)]), || format!("[x̄_ν, x̄_τ] = {bracket:?}"))?;
    check(pmap == Some(vec![(tau2, 1)]), || format!("x̄_τ^[2] = {pmap:?}"))?;
    check(c.pmap.iter().all(|x| x.0 == tau), || "unexpected p-map terms".into())?;
    Ok("graded dims = weighted monomials on all p-groups; Z2|xZ4: [x̄_ν, x̄_τ] = x̄_τ², x̄_τ^[2] = x̄_τ²".into())
}

fn c6_abelian_hat() -> Outcome {
    let g = FiniteGroup::zp_powers(2, &[1, 2]).unwrap();
    let h = build_group_algebra(&g, FieldSpec::gf(2));
    let hat = graded_from_filtration(&h, &jadic_filtration(&h).map_err(err)?).map_err(err)?;
    let profile = hat.degree_profile();
    check(profile == vec![1, 2, 2, 2, 1], || format!("profile {profile:?}"))?;
    let x: Vec<SparseVector> = ["g1", "g2"]
        .iter()
        .map(|l| hat.class_of(&eta(&h, &g, g.index_of(l).unwrap()), -1))
        .collect();
    let ok = is_truncated_on(&hat.total, &x, &[2, 4]).map_err(err)?;
    check(ok, || "monomials x1^a x2^b (a < 2, b < 4) are not a basis with x1² = x2⁴ = 0".into())?;
    Ok("Ĥ ≅ k[x1, x2]/(x1², x2⁴), profile (1,2,2,2,1)".into())
}

fn c7_orthogonality() -> Outcome {
    let mut n = 0;
    for (name, g) in groups() {
        for f in fields() {
            let p = canonical_group_pairing(&g, f).map_err(err)?.swap();
            let rows = orthogonality_identity(&p).map_err(|e| format!("{name}/{}: {e}", f.label()))?;
            n += rows.len();
        }
    }
    Ok(format!("D_n = (J^(n+1))^⊥ on {n} (group, field, n) triples"))
}

fn c8_enveloping() -> Outcome {
    for (name, l) in lies() {
        let env = build_restricted_enveloping(&l).map_err(err)?;
        let h = &env.algebra;
        let d = dee_filtration(h).map_err(err)?;
        check(d.chain() == env.standard_filtration().chain(), || format!("{name}: D differs from the standard filtration"))?;
        let tilde = graded_from_filtration(h, &d).map_err(err)?;
        let n = l.dim();
        let p = l.p() as u64;
        let xs: Vec<SparseVector> = (0..n).map(|i| tilde.class_of(&env.generator(i), 1)).collect();
        check(is_truncated_on(&tilde.total, &xs, &vec![p; n]).map_err(err)?, || format!("{name}: ũ(g) is not S(g)/(x^p)"))?;
        let poisson = poisson_on_graded(&tilde).map_err(err)?;
        for i in 0..n {
            for j in 0..n {
                let e = |k| SparseVector::unit(n, k, h.field().one());
                let lie = l.bracket(&e(i), &e(j));
                check(poisson.apply(&xs[i], &xs[j]) == tilde.class_of(&env.embed(&lie), 1), || {
                    format!("{name}: {{x{i}, x{j}}} differs from [x{i}, x{j}]")
                })?;
            }
        }
        let v = drinfeld_vee(&rees_of_filtration(h, &d).map_err(err)?, DEFAULT_WINDOW_CAP).map_err(err)?;
        check(v.module.same_layers(&LaurentModule::polynomial(h.clone())), || {
            format!("{name}: vee layers {:?}", v.dims())
        })?;
    }
    Ok("D = standard filtration, ũ(g) = S(g)/(x^p) with {x,y} = [x,y], (u(g)′_t)^∨ = u(g)_t".into())
}

fn c9_poisson_groups() -> Outcome {
    for (name, g, expect) in [
        ("Z2xZ2", FiniteGroup::zp_powers(2, &[1, 1]).unwrap(), true),
        ("Z4", FiniteGroup::cyclic(4), false),
        ("Z2|xZ4", FiniteGroup::zp_semidirect_zp2(2), false),
    ] {
        let r = poisson_group_check(&g, 2, None, DEFAULT_WINDOW_CAP).map_err(err)?.report;
        check(r.stabilized, || format!("{name}: prime functor did not stabilize"))?;
        check(r.equals_polynomial == expect, || format!("{name}: equals k[G]_t is {}", r.equals_polynomial))?;
        check(r.cotangent_matches_lie, || format!("{name}: cotangent bracket differs from the Lie ring"))?;
    }
    let g = FiniteGroup::zp_semidirect_zp2(2);
    let data = poisson_group_check(&g, 2, None, DEFAULT_WINDOW_CAP).map_err(err)?;
    let r = &data.report;
    check(r.truncated_presentation && r.fiber_dim == 8, || format!("{r:?}"))?;
    check(r.grouplike == ["tau", "nu"] && r.primitive == ["tau^2"], || format!("{r:?}"))?;
    let SemiclassicalLimit::Poisson { graded, bracket, .. } = &data.limit else {
        return Err("t = 0 fiber is not on the Poisson side".into());
    };
    let t = &graded.total;
    let (z2, z1, x3) = (&data.generators[0], &data.generators[1], &data.generators[2]);
    let rhs = t.mul(&t.mul(z1, z2), x3);
    check(bracket.apply(z1, z2) == rhs, || "{z1, z2} ≠ z1 z2 x3".into())?;
    check(t.is_commutative().is_none(), || "fiber not commutative".into())?;
    Ok("k[G]_t iff elementary abelian (Z2xZ2 yes, Z4 no); Z2|xZ4 fiber k[z1,z2,x3]/(z1²−1, z2²−1, x3²), {z1,z2} = z1z2x3".into())
}

fn homogeneous_nilpotent(g: &GradedBialgebraData, p: u64) -> bool {
    (0..g.dim()).filter(|&a| g.degree(a) > 0).all(|a| {
        let x = g.total.basis_vector(a);
        g.total.power(&x, p).is_zero()
    })
}

fn c10_crystal_properties() -> Outcome {
    let algebras = all_algebras();
    for (name, h) in &algebras {
        let j = jadic_filtration(h).map_err(err)?;
        let d = dee_filtration(h).map_err(err)?;
        let hat = graded_from_filtration(h, &j).map_err(|e| format!("{name}: {e}"))?;
        check(hat.total.is_cocommutative().is_none(), || format!("{name}: Ĥ not cocommutative"))?;
        let lie = extract_lie(&hat).map_err(|e| format!("{name}: {e}"))?;
        check(lie.generation_certified, || format!("{name}: Ĥ not generated by primitives"))?;
        let tilde = graded_from_filtration(h, &d).map_err(|e| format!("{name}: {e}"))?;
        check(tilde.total.is_commutative().is_none(), || format!("{name}: H̃ not commutative"))?;
        let p = h.field().characteristic();
        if p > 0 {
            check(homogeneous_nilpotent(&tilde, p), || format!("{name}: x^p ≠ 0 in H̃"))?;
        }
        let hv = h_vee(h).map_err(err)?.quotient;
        let jv = jadic_filtration(&hv).map_err(err)?;
        let jr = rees_of_filtration(&hv, &jv).map_err(err)?;
        check(fiber_t1(&jr).map_err(err)?.same_structure(&hv), || format!("{name}: J-Rees at t=1 ≠ H^∨"))?;
        let hat_v = graded_from_filtration(&hv, &jv).map_err(err)?;
        check(fiber_t0(&jr).map_err(err)?.same_structure(&hat_v), || format!("{name}: J-Rees at t=0 ≠ Ĥ"))?;
        let hp = h_prime(h).map_err(err)?.sub;
        let dr = rees_of_filtration(h, &d).map_err(err)?;
        check(fiber_t1(&dr).map_err(err)?.same_structure(&hp), || format!("{name}: D-Rees at t=1 ≠ H′"))?;
        check(fiber_t0(&dr).map_err(err)?.same_structure(&tilde), || format!("{name}: D-Rees at t=0 ≠ H̃"))?;
    }
    Ok(format!("crystal and Rees fiber identities on {} algebras", algebras.len()))
}

fn c11_random_laws() -> Outcome {
    let algebras = all_algebras();
    let mut checks = 0;
    for (i, (name, h)) in algebras.iter().enumerate() {
        let r = random_law_suite(h, 0x5eed + i as u64, 100, 3).map_err(err)?;
        check(r.passed(), || format!("{name}: {:?}", r.failures))?;
        checks += r.coassociativity_checks + r.product_checks;
    }
    Ok(format!("{checks} exact checks on 100 seeded elements per fixture"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("axiom suite on all constructors", c1_axioms),
        ("k[G]′ = k·1 and k[G]~ = k·1", c2_group_algebra_prime),
        ("A_k(G)^∨ = k·1", c3_function_algebra_vee),
        ("dimension subgroups = p-lower central series", c4_dimension_subgroups),
        ("Jennings basis and restricted Lie constants", c5_jennings_lie),
        ("Ĥ(k[Z2 x Z4]) truncated polynomial", c6_abelian_hat),
        ("D_n = (J^(n+1))^⊥ under the canonical pairing", c7_orthogonality),
        ("restricted enveloping algebras", c8_enveloping),
        ("prime functor and the Poisson group", c9_poisson_groups),
        ("crystal functor and Rees fiber properties", c10_crystal_properties),
        ("randomized δ laws", c11_random_laws),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {title} ({detail}) [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {title} ({detail}) [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
