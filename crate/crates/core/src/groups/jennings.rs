//! Dimension subgroups and Jennings-Hall cross-checks.

use super::{
    build_function_algebra, build_group_algebra, jennings_net, p_lower_central_series, FiniteGroup,
    JenningsNet, SeriesKind, SubgroupSeries,
};
use crate::error::{Error, Result};
use crate::exactlin::{rref, FieldSpec, SparseVector, Subspace};
use crate::filtration::{dee_filtration, h_vee, jadic_filtration};
use crate::graded::{graded_from_filtration, is_truncated_on, extract_lie, GradedBialgebraData, Layers};
use crate::hopf::{kron, HopfAlgebraData};
use crate::rees::{
    default_n_max, drinfeld_prime, drinfeld_vee, fiber_t0, rees_of_filtration, semiclassical_limit,
    LaurentModule, PrimeResult, SemiclassicalLimit,
};
use serde::Serialize;

/// η_g = g − 1 in k[G].
pub fn eta(h: &HopfAlgebraData, g: &FiniteGroup, x: usize) -> SparseVector {
    h.basis_vector(x).sub(&h.basis_vector(g.identity()))
}

fn trim(mut terms: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    while terms.len() > 1 && terms[terms.len() - 1] == terms[terms.len() - 2] {
        terms.pop();
    }
    terms
}

/// 𝒟_n = {g : η_g ∈ Jⁿ} for n up to one past the J-stabilization.
pub fn dimension_subgroups(g: &FiniteGroup, field: FieldSpec) -> Result<SubgroupSeries> {
    let h = build_group_algebra(g, field);
    let j = jadic_filtration(&h)?;
    let mut terms = Vec::new();
    for n in 1..=j.stable_index() + 1 {
        let t: Vec<usize> = (0..g.order()).filter(|&x| j.term(n).contains(&eta(&h, g, x))).collect();
        if !g.is_subgroup(&t) {
            return Err(Error::theorem("dimension subgroup is a subgroup", format!("n = {n}")));
        }
        terms.push(t);
    }
    Ok(SubgroupSeries {
        kind: SeriesKind::DimensionSubgroups,
        terms: trim(terms),
    })
}

/// Coordinates of c ∈ G_[n] modulo G_[n+1] on the weight-n net elements.
pub fn discrete_log(g: &FiniteGroup, series: &SubgroupSeries, net: &JenningsNet, c: usize, n: usize) -> Result<Vec<(usize, u64)>> {
    if !series.term(n).contains(&c) {
        return Err(Error::InternalConsistency(format!("{} is not in G_[{n}]", g.label(c))));
    }
    let lower = series.term(n + 1);
    let layer: Vec<usize> = (0..net.elements.len()).filter(|&i| net.elements[i].1 == n).collect();
    let p = net.p as u64;
    let cinv = g.inv(c);
    let mut exps = vec![0u64; layer.len()];
    loop {
        let mut prod = g.identity();
        for (k, &i) in layer.iter().enumerate() {
            prod = g.mul(prod, g.pow(net.elements[i].0, exps[k]));
        }
        if lower.contains(&g.mul(cinv, prod)) {
            return Ok(layer
                .iter()
                .zip(&exps)
                .filter(|(_, &e)| e != 0)
                .map(|(&i, &e)| (i, e))
                .collect());
        }
        let mut k = 0;
        loop {
            if k == layer.len() {
                return Err(Error::InternalConsistency(format!(
                    "{} has no coordinates on the weight-{n} net",
                    g.label(c)
                )));
            }
            exps[k] += 1;
            if exps[k] < p {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

/// Structure constants of 𝓛_p(G) on the net: brackets from commutators, p-map from p-th powers.
#[derive(Clone, Debug, Serialize)]
pub struct LieRingConstants {
    pub labels: Vec<String>,
    pub weights: Vec<usize>,
    pub bracket: Vec<(usize, usize, Vec<(usize, u64)>)>,
    pub pmap: Vec<(usize, Vec<(usize, u64)>)>,
}

pub fn lie_ring_constants(g: &FiniteGroup, p: usize) -> Result<LieRingConstants> {
    let series = p_lower_central_series(g, p)?;
    let net = jennings_net(g, p)?;
    let top = series.terms.len() + 1;
    let at = |c: usize, n: usize| -> Result<Vec<(usize, u64)>> {
        if n >= top {
            Ok(Vec::new())
        } else {
            discrete_log(g, &series, &net, c, n)
        }
    };
    let mut bracket = Vec::new();
    let mut pmap = Vec::new();
    for (i, &(a, da)) in net.elements.iter().enumerate() {
        for (j, &(b, db)) in net.elements.iter().enumerate() {
            let c = at(g.commutator(a, b), da + db)?;
            if !c.is_empty() {
                bracket.push((i, j, c));
            }
        }
        let c = at(g.pow(a, p as u64), p * da)?;
        if !c.is_empty() {
            pmap.push((i, c));
        }
    }
    Ok(LieRingConstants {
        labels: net.elements.iter().map(|&(b, _)| g.label(b).to_string()).collect(),
        weights: net.elements.iter().map(|e| e.1).collect(),
        bracket,
        pmap,
    })
}

/// Ordered η-monomials η_{b_1}^{e_1}…η_{b_r}^{e_r} with e_i < p, with their exponents.
pub fn net_monomials(h: &HopfAlgebraData, g: &FiniteGroup, net: &JenningsNet) -> Vec<(Vec<u64>, SparseVector)> {
    let mut out = vec![(Vec::new(), h.one().clone())];
    for &(b, _) in &net.elements {
        let e = eta(h, g, b);
        let mut next = Vec::new();
        for (exps, m) in &out {
            let mut x = m.clone();
            for k in 0..net.p as u64 {
                let mut ex = exps.clone();
                ex.push(k);
                next.push((ex, x.clone()));
                x = h.mul(&x, &e);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesRow {
    pub n: usize,
    pub dimension_subgroup_order: usize,
    pub p_series_order: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonomialRow {
    pub n: usize,
    pub weighted_monomials: usize,
    pub graded_dim: usize,
    pub spans: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RadicalReport {
    pub g_infinity_order: usize,
    pub j_infinity_dim: usize,
    pub generated_ideal_dim: usize,
    pub eta_span_dim: usize,
    pub vee_dim: usize,
    pub vee_is_quotient_group_algebra: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JenningsHallReport {
    pub p: usize,
    pub net: Vec<(String, usize)>,
    pub part_a: Vec<SeriesRow>,
    pub part_b: Vec<MonomialRow>,
    pub part_e: LieRingConstants,
    pub part_f: RadicalReport,
}

/// Dimension subgroups, Jennings basis, restricted Lie isomorphism and the ε-radical, all cross-checked.
pub fn jennings_hall_check(g: &FiniteGroup, p: usize) -> Result<JenningsHallReport> {
    let field = FieldSpec::new(p as u64)?;
    let h = build_group_algebra(g, field);
    let series = p_lower_central_series(g, p)?;
    let net = jennings_net(g, p)?;
    let dims = dimension_subgroups(g, field)?;

    let top = series.terms.len().max(dims.terms.len()) + 1;
    let mut part_a = Vec::new();
    for n in 1..=top {
        let mut a = dims.term(n).to_vec();
        let mut b = series.term(n).to_vec();
        a.sort_unstable();
        b.sort_unstable();
        let row = SeriesRow {
            n,
            dimension_subgroup_order: a.len(),
            p_series_order: b.len(),
            equal: a == b,
        };
        if !row.equal {
            return Err(Error::theorem("Jennings-Hall (a): dimension subgroups", format!("n = {n}")));
        }
        part_a.push(row);
    }

    let j = jadic_filtration(&h)?;
    let jinf = j.stable().clone();
    let monos = net_monomials(&h, g, &net);
    let weight = |ex: &[u64]| -> usize { ex.iter().zip(&net.elements).map(|(&e, b)| e as usize * b.1).sum() };
    let mut part_b = Vec::new();
    for n in 0..=j.stable_index() {
        let of_n: Vec<SparseVector> = monos.iter().filter(|(ex, _)| weight(ex) == n).map(|m| m.1.clone()).collect();
        let mut rows = of_n.clone();
        rows.extend(j.term(n + 1).basis().iter().cloned());
        let spans = rref(h.dim(), &rows)? == *j.term(n);
        let row = MonomialRow {
            n,
            weighted_monomials: of_n.len(),
            graded_dim: j.term(n).dim() - j.term(n + 1).dim(),
            spans,
        };
        if !row.spans || row.weighted_monomials != row.graded_dim {
            return Err(Error::theorem("Jennings-Hall (b): monomial basis", format!("n = {n}")));
        }
        part_b.push(row);
    }

    let gr = graded_from_filtration(&h, &j)?;
    let lie = extract_lie(&gr)?;
    let consts = lie_ring_constants(g, p)?;
    let t = &gr.total;
    let v: Vec<SparseVector> = net
        .elements
        .iter()
        .map(|&(b, d)| gr.class_of(&eta(&h, g, b), -(d as i64)))
        .collect();
    let comb = |c: &[(usize, u64)]| {
        let mut acc = SparseVector::zero(t.dim());
        for &(k, e) in c {
            acc = acc.add(&v[k].scale(&field.from_i64(e as i64)));
        }
        acc
    };
    if v.len() != lie.dim() || rref(t.dim(), &v)?.dim() != v.len() || !v.iter().all(|x| lie.basis.contains(x)) {
        return Err(Error::theorem(
            "Jennings-Hall (e): net classes form a basis of the primitives",
            format!("{} net elements, {} primitives", v.len(), lie.dim()),
        ));
    }
    for a in 0..v.len() {
        for b in 0..v.len() {
            let expect = consts
                .bracket
                .iter()
                .find(|x| x.0 == a && x.1 == b)
                .map(|x| comb(&x.2))
                .unwrap_or_else(|| SparseVector::zero(t.dim()));
            if t.commutator(&v[a], &v[b]) != expect {
                return Err(Error::theorem(
                    "Jennings-Hall (e): bracket constants",
                    format!("[{}, {}]", consts.labels[a], consts.labels[b]),
                ));
            }
        }
        let expect = consts
            .pmap
            .iter()
            .find(|x| x.0 == a)
            .map(|x| comb(&x.1))
            .unwrap_or_else(|| SparseVector::zero(t.dim()));
        if t.power(&v[a], p as u64) != expect {
            return Err(Error::theorem(
                "Jennings-Hall (e): p-map constants",
                consts.labels[a].clone(),
            ));
        }
    }

    let ginf = series.stable().to_vec();
    let etas: Vec<SparseVector> = ginf.iter().map(|&x| eta(&h, g, x)).collect();
    let eta_span = rref(h.dim(), &etas)?;
    let mut gen = Vec::new();
    for x in 0..g.order() {
        for e in &etas {
            gen.push(h.mul(&h.basis_vector(x), e));
        }
    }
    let ideal = rref(h.dim(), &gen)?;
    let vee = h_vee(&h)?;
    let coset = |x: usize| -> Vec<usize> {
        let mut c: Vec<usize> = ginf.iter().map(|&y| g.mul(x, y)).collect();
        c.sort_unstable();
        c
    };
    let images: Vec<SparseVector> = (0..g.order()).map(|x| vee.projection.apply(&h.basis_vector(x))).collect();
    let mut quotient_ok = vee.quotient.dim() * ginf.len() == g.order();
    for x in 0..g.order() {
        for y in 0..g.order() {
            if (images[x] == images[y]) != (coset(x) == coset(y)) {
                quotient_ok = false;
            }
        }
    }
    let part_f = RadicalReport {
        g_infinity_order: ginf.len(),
        j_infinity_dim: jinf.dim(),
        generated_ideal_dim: ideal.dim(),
        eta_span_dim: eta_span.dim(),
        vee_dim: vee.quotient.dim(),
        vee_is_quotient_group_algebra: quotient_ok,
    };
    if ideal != jinf || !quotient_ok {
        return Err(Error::theorem(
            "Jennings-Hall (f): J^∞ and k[G]^∨",
            format!("ideal dim {} vs J^∞ dim {}", ideal.dim(), jinf.dim()),
        ));
    }

    Ok(JenningsHallReport {
        p,
        net: net.elements.iter().map(|&(b, d)| (g.label(b).to_string(), d)).collect(),
        part_a,
        part_b,
        part_e: consts,
        part_f,
    })
}

/// Jⁿ = span{η-monomials of weight ≥ n} + J^∞ for every n.
pub fn jennings_basis_spans_rees_layers(g: &FiniteGroup, p: usize) -> Result<bool> {
    let field = FieldSpec::new(p as u64)?;
    let h = build_group_algebra(g, field);
    let j = jadic_filtration(&h)?;
    let net = jennings_net(g, p)?;
    let monos = net_monomials(&h, g, &net);
    for n in 0..=j.stable_index() + 1 {
        let mut rows: Vec<SparseVector> = monos
            .iter()
            .filter(|(ex, _)| ex.iter().zip(&net.elements).map(|(&e, b)| e as usize * b.1).sum::<usize>() >= n)
            .map(|m| m.1.clone())
            .collect();
        rows.extend(j.stable().basis().iter().cloned());
        if rref(h.dim(), &rows)? != *j.term(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Predicted layers of (k[G]_t^∨)′: ψ-monomials with Σ e_i(1 − d(b_i)) ≤ z, plus J^∞.
pub fn psi_monomial_module(g: &FiniteGroup, p: usize) -> Result<LaurentModule> {
    let field = FieldSpec::new(p as u64)?;
    let h = build_group_algebra(g, field);
    let j = jadic_filtration(&h)?;
    let net = jennings_net(g, p)?;
    let monos = net_monomials(&h, g, &net);
    let deg = |ex: &[u64]| -> i64 {
        ex.iter()
            .zip(&net.elements)
            .map(|(&e, b)| e as i64 * (1 - b.1 as i64))
            .sum()
    };
    let lo = monos.iter().map(|m| deg(&m.0)).min().unwrap_or(0) - 1;
    let layer = |z: i64| -> Result<Subspace> {
        let mut rows: Vec<SparseVector> = monos.iter().filter(|m| deg(&m.0) <= z).map(|m| m.1.clone()).collect();
        rows.extend(j.stable().basis().iter().cloned());
        rref(h.dim(), &rows)
    };
    let layers = (lo..=0).map(layer).collect::<Result<Vec<_>>>()?;
    let low = j.stable().clone();
    let high = Subspace::full(&field, h.dim());
    LaurentModule::new(h.clone(), Layers::new(lo, layers, low, high)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonGroupReport {
    pub stabilized: bool,
    pub n_max: usize,
    pub layer_dims: Vec<(i64, usize)>,
    pub matches_psi_monomials: bool,
    pub equals_polynomial: bool,
    pub fiber_dim: usize,
    pub grouplike: Vec<String>,
    pub primitive: Vec<String>,
    pub truncated_presentation: bool,
    pub cotangent_matches_lie: bool,
}

pub struct PoissonGroupData {
    pub report: PoissonGroupReport,
    pub prime: PrimeResult,
    pub limit: SemiclassicalLimit,
    /// class of b (weight 1) or of ψ_b (higher weight) in the t = 0 fiber, in net order
    pub generators: Vec<SparseVector>,
}

/// The prime functor on the J-Rees module of k[G], its closed form and the Poisson group at t = 0.
pub fn poisson_group_check(g: &FiniteGroup, p: usize, n_max: Option<usize>, window_cap: usize) -> Result<PoissonGroupData> {
    let field = FieldSpec::new(p as u64)?;
    let h = build_group_algebra(g, field);
    let jr = rees_of_filtration(&h, &jadic_filtration(&h)?)?;
    let n_max = n_max.unwrap_or_else(|| default_n_max(&jr));
    let prime = drinfeld_prime(&jr, n_max, window_cap)?;
    let predicted = psi_monomial_module(g, p)?;
    let matches_psi_monomials = prime.rees.module.same_layers(&predicted);
    let equals_polynomial = prime.rees.module.same_layers(&LaurentModule::polynomial(h.clone()));
    let limit = semiclassical_limit(&prime.rees)?;
    let (gr, bracket) = match &limit {
        SemiclassicalLimit::Poisson { graded, bracket, .. } => (graded, bracket),
        _ => unreachable!(),
    };
    let t = &gr.total;
    let net = jennings_net(g, p)?;
    let pu = p as u64;
    let mut generators = Vec::new();
    let mut grouplike = Vec::new();
    let mut primitive = Vec::new();
    let mut exps = Vec::new();
    for &(b, d) in &net.elements {
        if d == 1 {
            let z = gr.class_of(&h.basis_vector(b), 0);
            let ok = t.is_group_like(&z) && t.power(&z, pu) == *t.one();
            if !ok {
                return Err(Error::theorem("z_b is group-like with z_b^p = 1", g.label(b).to_string()));
            }
            grouplike.push(g.label(b).to_string());
            generators.push(z);
        } else {
            let x = gr.class_of(&eta(&h, g, b), 1 - d as i64);
            let prim = t.comul(&x) == kron(&x, t.one()).add(&kron(t.one(), &x));
            if !prim || !t.power(&x, pu).is_zero() {
                return Err(Error::theorem("x_b is primitive with x_b^p = 0", g.label(b).to_string()));
            }
            primitive.push(g.label(b).to_string());
            generators.push(x);
        }
        exps.push(pu);
    }
    // z_b^p = 1 rather than 0, so test the monomial basis on z_b − 1
    let shifted: Vec<SparseVector> = generators
        .iter()
        .zip(&net.elements)
        .map(|(x, &(_, d))| if d == 1 { x.sub(t.one()) } else { x.clone() })
        .collect();
    let truncated_presentation = is_truncated_on(t, &shifted, &exps)?;
    let consts = lie_ring_constants(g, p)?;
    let cotangent_matches_lie = cotangent_check(t, &shifted, &consts, |x, y| bracket.apply(x, y))?;
    let report = PoissonGroupReport {
        stabilized: prime.stabilized,
        n_max,
        layer_dims: prime.rees.dims(),
        matches_psi_monomials,
        equals_polynomial,
        fiber_dim: t.dim(),
        grouplike,
        primitive,
        truncated_presentation,
        cotangent_matches_lie,
    };
    Ok(PoissonGroupData {
        report,
        prime,
        limit,
        generators,
    })
}

/// {x_a, x_b} ≡ x_{(a,b)} modulo m², with m the augmentation ideal.
fn cotangent_check(
    t: &HopfAlgebraData,
    xs: &[SparseVector],
    consts: &LieRingConstants,
    br: impl Fn(&SparseVector, &SparseVector) -> SparseVector,
) -> Result<bool> {
    let m = t.augmentation_ideal();
    let mut sq = Vec::new();
    for u in m.basis() {
        for v in m.basis() {
            sq.push(t.mul(u, v));
        }
    }
    let m2 = rref(t.dim(), &sq)?;
    let field = t.field();
    for a in 0..xs.len() {
        for b in 0..xs.len() {
            let mut expect = SparseVector::zero(t.dim());
            if let Some(x) = consts.bracket.iter().find(|x| x.0 == a && x.1 == b) {
                for &(k, e) in &x.2 {
                    expect = expect.add(&xs[k].scale(&field.from_i64(e as i64)));
                }
            }
            if !m2.contains(&br(&xs[a], &xs[b]).sub(&expect)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Serialize)]
pub struct DualVeeReport {
    pub layer_dims: Vec<(i64, usize)>,
    pub fiber_dim: usize,
    pub commutative: bool,
    pub cocommutative: bool,
    pub lie_dim: usize,
}

/// The vee functor on the D-Rees module of A_k(G) for a p-group: a connected cocommutative limit of dimension |G|.
pub fn function_algebra_vee_check(g: &FiniteGroup, p: usize, window_cap: usize) -> Result<DualVeeReport> {
    let field = FieldSpec::new(p as u64)?;
    if !g.is_p_group(p) {
        return Err(Error::InvalidInput(format!("group of order {} is not a {p}-group", g.order())));
    }
    let a = build_function_algebra(g, field);
    let dr = rees_of_filtration(&a, &dee_filtration(&a)?)?;
    let vee = drinfeld_vee(&dr, window_cap)?;
    let limit = semiclassical_limit(&vee)?;
    let (gr, lie) = match &limit {
        SemiclassicalLimit::CoPoisson { graded, lie, .. } => (graded, lie),
        _ => unreachable!(),
    };
    let report = DualVeeReport {
        layer_dims: vee.dims(),
        fiber_dim: gr.dim(),
        commutative: gr.total.is_commutative().is_none(),
        cocommutative: gr.total.is_cocommutative().is_none(),
        lie_dim: lie.dim(),
    };
    if report.fiber_dim != g.order() || !report.commutative {
        return Err(Error::theorem(
            "vee limit of A_k(G) is commutative of dimension |G|",
            format!("dim {}", report.fiber_dim),
        ));
    }
    Ok(report)
}

/// Ĥ of k[G] reached through the t = 0 fiber of the J-Rees module.
pub fn hat_via_rees(g: &FiniteGroup, field: FieldSpec) -> Result<GradedBialgebraData> {
    let h = build_group_algebra(g, field);
    fiber_t0(&rees_of_filtration(&h, &jadic_filtration(&h)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rees::DEFAULT_WINDOW_CAP;

    #[test]
    fn semidirect_lie_constants() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let r = jennings_hall_check(&g, 2).unwrap();
        let lab = |i: usize| r.part_e.labels[i].as_str();
        let br: Vec<(&str, &str, &str)> = r
            .part_e
            .bracket
            .iter()
            .map(|(a, b, c)| (lab(*a), lab(*b), lab(c[0].0)))
            .collect();
        assert!(br.contains(&("nu", "tau", "tau^2")));
        let pm: Vec<(&str, &str)> = r.part_e.pmap.iter().map(|(a, c)| (lab(*a), lab(c[0].0))).collect();
        assert_eq!(pm, vec![("tau", "tau^2")]);
    }

    #[test]
    fn symmetric_three_radicals() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let r3 = jennings_hall_check(&g, 3).unwrap();
        assert_eq!(r3.part_f.g_infinity_order, 6);
        assert_eq!(r3.part_f.vee_dim, 1);
        let r2 = jennings_hall_check(&g, 2).unwrap();
        assert_eq!(r2.part_f.g_infinity_order, 3);
        assert_eq!(r2.part_f.vee_dim, 2);
        assert_eq!(r2.part_f.eta_span_dim, 2);
        assert_eq!(r2.part_f.j_infinity_dim, 4);
    }

    #[test]
    fn semidirect_poisson_group() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let d = poisson_group_check(&g, 2, None, DEFAULT_WINDOW_CAP).unwrap();
        let r = &d.report;
        assert!(r.stabilized && r.matches_psi_monomials && !r.equals_polynomial);
        assert!(r.truncated_presentation && r.cotangent_matches_lie);
        assert_eq!(r.fiber_dim, 8);
    }

    #[test]
    fn abelian_vee_of_function_algebra() {
        let g = FiniteGroup::zp_powers(2, &[1, 2]).unwrap();
        let r = function_algebra_vee_check(&g, 2, DEFAULT_WINDOW_CAP).unwrap();
        assert_eq!(r.fiber_dim, 8);
        assert!(r.cocommutative);
    }
}
