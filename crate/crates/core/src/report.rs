//! End-to-end analysis pipeline with a pass/fail ledger, rendered as
//! markdown or JSON.

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, SparseVector};
use crate::filtration::{dee_filtration, delta_kernel_crosscheck, h_prime, h_vee, jadic_filtration};
use crate::graded::{
    extract_lie, graded_from_filtration, is_truncated_on, poisson_on_graded, truncated_presentation,
    PresentationReport, RestrictedLieBialgebra,
};
use crate::groups::jennings::{
    eta, function_algebra_vee_check, jennings_basis_spans_rees_layers, jennings_hall_check,
    poisson_group_check,
};
use crate::groups::lie::RestrictedEnveloping;
use crate::groups::{build_function_algebra, build_group_algebra, p_lower_central_series, FiniteGroup};
use crate::hopf::{random_law_suite, AxiomCheck, HopfAlgebraData};
use crate::pairing::{
    canonical_group_pairing, induced_graded_pairing, orthogonality_identity, rees_pairing_identity, validate_pairing,
    PairingData,
};
use crate::rees::{
    default_n_max, drinfeld_prime, drinfeld_vee, fiber_t0, fiber_t1, rees_of_filtration, semiclassical_limit,
    LaurentModule, ReesBialgebra, SemiclassicalLimit, DEFAULT_WINDOW_CAP,
};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write;

const CROSSCHECK_BUDGET: usize = 1 << 18;

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub max_n: Option<usize>,
    pub window_cap: usize,
    pub seed: u64,
    pub law_samples: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            max_n: None,
            window_cap: DEFAULT_WINDOW_CAP,
            seed: 0,
            law_samples: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LedgerEntry {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Ledger(pub Vec<LedgerEntry>);

impl Ledger {
    pub fn push(&mut self, check: &str, passed: bool, detail: impl Into<String>) {
        self.0.push(LedgerEntry {
            check: check.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records a stage; resource and input errors abort, mathematical failures are logged.
    pub fn stage<T>(&mut self, check: &str, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(v) => {
                self.push(check, true, "");
                Ok(Some(v))
            }
            Err(e @ (Error::Resource { .. } | Error::Format(_) | Error::InvalidInput(_))) => Err(e),
            Err(e) => {
                self.push(check, false, e.to_string());
                Ok(None)
            }
        }
    }

    pub fn all_passed(&self) -> bool {
        self.0.iter().all(|e| e.passed)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Corners {
    pub h_vee: Option<usize>,
    pub hat: Option<usize>,
    pub h_prime: Option<usize>,
    pub tilde: Option<usize>,
    pub prime_limit: Option<usize>,
    pub vee_limit: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReesTable {
    pub name: String,
    pub layers: Vec<(i64, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
    pub data: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub field: String,
    pub dim: usize,
    pub kind: String,
    pub seed: u64,
    pub validation: Vec<AxiomCheck>,
    pub j_dims: Vec<usize>,
    pub d_dims: Vec<usize>,
    pub hat_components: Vec<(i64, usize)>,
    pub tilde_components: Vec<(i64, usize)>,
    pub lie: Option<RestrictedLieBialgebra>,
    pub tilde_presentation: Option<PresentationReport>,
    pub rees: Vec<ReesTable>,
    pub corners: Corners,
    pub sections: Vec<Section>,
    pub ledger: Ledger,
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.validation.iter().all(|c| c.passed) && self.ledger.all_passed()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Crystal duality report: {}\n", self.name);
        let _ = writeln!(s, "- field: {}\n- dimension: {}\n- structure: {}\n- seed: {}\n", self.field, self.dim, self.kind, self.seed);
        let _ = writeln!(s, "## Validation\n\n| axiom | result | witness |\n|---|---|---|");
        for c in &self.validation {
            let w = c.witness.as_ref().map(|w| format!("{w:?}")).unwrap_or_default();
            let _ = writeln!(s, "| {} | {} | {} |", c.axiom, if c.passed { "pass" } else { "FAIL" }, w);
        }
        if !self.j_dims.is_empty() || !self.d_dims.is_empty() {
            let _ = writeln!(s, "\n## Filtrations\n");
            let _ = writeln!(s, "- J-chain dims (n = 0, 1, ...): {}", join(&self.j_dims));
            let _ = writeln!(s, "- D-chain dims (n = 0, 1, ...): {}", join(&self.d_dims));
        }
        if !self.hat_components.is_empty() {
            let _ = writeln!(s, "\n## Crystal functors\n");
            let _ = writeln!(s, "- Ĥ components (degree, dim): {:?}", self.hat_components);
            let _ = writeln!(s, "- H̃ components (degree, dim): {:?}", self.tilde_components);
            if let Some(l) = &self.lie {
                let _ = writeln!(s, "- primitives of Ĥ: {} (degrees {:?})", l.dim(), l.degrees);
                for (a, lab) in l.labels.iter().enumerate() {
                    let _ = writeln!(s, "  - x{a} = {lab}");
                }
                for a in 0..l.dim() {
                    for b in a + 1..l.dim() {
                        let v = l.bracket_of(a, b);
                        if !v.is_zero() {
                            let _ = writeln!(s, "  - [x{a}, x{b}] = {}", lie_combo(v));
                        }
                    }
                    if let Some(pm) = &l.pmap {
                        if !pm[a].is_zero() {
                            let _ = writeln!(s, "  - x{a}^[p] = {}", lie_combo(&pm[a]));
                        }
                    }
                }
            }
            if let Some(p) = &self.tilde_presentation {
                let _ = writeln!(
                    s,
                    "- H̃ truncated presentation: {} generators of degrees {:?}, dim {}",
                    p.generator_labels.len(),
                    p.generator_degrees,
                    p.dim
                );
            }
        }
        if !self.rees.is_empty() {
            let _ = writeln!(s, "\n## Rees modules and Drinfeld functors\n\n| module | layers (z: dim) |\n|---|---|");
            for r in &self.rees {
                let layers: Vec<String> = r.layers.iter().map(|(z, d)| format!("{z}: {d}")).collect();
                let _ = writeln!(s, "| {} | {} |", r.name, layers.join(", "));
            }
            let _ = writeln!(s, "\n## Four corners\n\n```\n{}```", self.diagram());
        }
        for sec in &self.sections {
            let _ = writeln!(s, "\n## {}\n", sec.title);
            for l in &sec.lines {
                let _ = writeln!(s, "- {l}");
            }
        }
        let _ = writeln!(s, "\n## Ledger\n\n| check | result | detail |\n|---|---|---|");
        for e in &self.ledger.0 {
            let _ = writeln!(s, "| {} | {} | {} |", e.check, if e.passed { "pass" } else { "FAIL" }, e.detail);
        }
        s
    }

    pub fn diagram(&self) -> String {
        let c = &self.corners;
        let f = |x: Option<usize>| x.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        format!(
            "  Ĥ [{}]  <--t=0--  (H^∨)_t  --t=1-->  H^∨ [{}]\n     |                  |\n     |          ((H^∨)_t)′ at t=0: [{}]  commutative Poisson\n     |\n  H̃ [{}]  <--t=0--  (H′)_t   --t=1-->  H′ [{}]\n                        |\n                ((H′)_t)^∨ at t=0: [{}]  cocommutative co-Poisson\n",
            f(c.hat),
            f(c.h_vee),
            f(c.prime_limit),
            f(c.tilde),
            f(c.h_prime),
            f(c.vee_limit)
        )
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn lie_combo(v: &SparseVector) -> String {
    let parts: Vec<String> = v
        .entries()
        .iter()
        .map(|(i, c)| if c.is_one() { format!("x{i}") } else { format!("{c}·x{i}") })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn new_report(h: &HopfAlgebraData, name: &str, opts: &PipelineOptions) -> AnalysisReport {
    let v = h.validate();
    AnalysisReport {
        name: name.into(),
        field: h.field().label(),
        dim: h.dim(),
        kind: if v.flags.has_antipode {
            "Hopf algebra".into()
        } else if v.flags.is_bialgebra {
            "bialgebra".into()
        } else {
            "not a bialgebra".into()
        },
        seed: opts.seed,
        validation: v.checks,
        j_dims: Vec::new(),
        d_dims: Vec::new(),
        hat_components: Vec::new(),
        tilde_components: Vec::new(),
        lie: None,
        tilde_presentation: None,
        rees: Vec::new(),
        corners: Corners::default(),
        sections: Vec::new(),
        ledger: Ledger::default(),
    }
}

/// Validation only.
pub fn validate_report(h: &HopfAlgebraData, name: &str) -> AnalysisReport {
    new_report(h, name, &PipelineOptions::default())
}

fn rees_table(name: &str, r: &ReesBialgebra) -> ReesTable {
    ReesTable {
        name: name.into(),
        layers: r.dims(),
    }
}

/// Filtrations, crystal and connecting functors, Rees modules, Drinfeld functors and their limits.
pub fn analyze(h: &HopfAlgebraData, name: &str, opts: &PipelineOptions) -> Result<AnalysisReport> {
    let mut rep = new_report(h, name, opts);
    if rep.validation.iter().any(|c| !c.passed) {
        return Ok(rep);
    }
    let led = &mut rep.ledger;
    let j = jadic_filtration(h)?;
    let d = dee_filtration(h)?;
    rep.j_dims = j.dims();
    rep.d_dims = d.dims();
    let mut n_cross = d.stable_index() + 1;
    while n_cross > 0 && (h.dim() as f64).powi(n_cross as i32 + 1) > CROSSCHECK_BUDGET as f64 {
        n_cross -= 1;
    }
    let cross = delta_kernel_crosscheck(h, n_cross, CROSSCHECK_BUDGET)?;
    led.push("D_n equals Ker δ_(n+1)", cross.all_equal(), format!("n = 0..{n_cross}"));

    let vee = led.stage("J^∞ is a Hopf ideal; H^∨ = H/J^∞", h_vee(h))?;
    let prime = led.stage("H′ is a connected sub-bialgebra", h_prime(h))?;
    rep.corners.h_vee = vee.as_ref().map(|q| q.quotient.dim());
    rep.corners.h_prime = prime.as_ref().map(|s| s.sub.dim());

    if let Some(hat) = led.stage("ε-filtration is a bialgebra filtration", graded_from_filtration(h, &j))? {
        rep.hat_components = hat.components();
        rep.corners.hat = Some(hat.dim());
        rep.lie = led.stage("Ĥ cocommutative, co-Poisson, generated by primitives", extract_lie(&hat))?;
    }
    if let Some(tilde) = led.stage("δ-filtration is a bialgebra filtration", graded_from_filtration(h, &d))? {
        rep.tilde_components = tilde.components();
        rep.corners.tilde = Some(tilde.dim());
        led.stage("H̃ commutative with Poisson bracket", poisson_on_graded(&tilde))?;
        rep.tilde_presentation = led.stage("H̃ truncated polynomial presentation", truncated_presentation(&tilde))?;
    }

    if let Some(q) = &vee {
        let hv = &q.quotient;
        let jv = jadic_filtration(hv)?;
        if let Some(jr) = led.stage("J-Rees module of H^∨ closed", rees_of_filtration(hv, &jv))? {
            rep.rees.push(rees_table("J-Rees of H^∨", &jr));
            let t1 = fiber_t1(&jr)?;
            led.push("J-Rees fiber at t=1 equals H^∨", t1.same_structure(hv), "");
            let t0 = fiber_t0(&jr)?;
            let direct = graded_from_filtration(hv, &jv)?;
            led.push("J-Rees fiber at t=0 equals Ĥ", t0.same_structure(&direct), format!("dim {}", t0.dim()));
            let n_max = opts.max_n.unwrap_or_else(|| default_n_max(&jr));
            if let Some(pr) = led.stage("prime functor on J-Rees", drinfeld_prime(&jr, n_max, opts.window_cap))? {
                rep.rees.push(rees_table("(H^∨_t)′", &pr.rees));
                led.push("prime functor stabilized in n", pr.stabilized, format!("n_max = {}", pr.n_max));
                let back = fiber_t1(&pr.rees)?;
                led.push("(H^∨_t)′ at t=1 equals H^∨", back.same_structure(hv), "");
                if let Some(SemiclassicalLimit::Poisson { graded, .. }) =
                    led.stage("(H^∨_t)′ at t=0 is commutative Poisson, nilpotency p", semiclassical_limit(&pr.rees))?
                {
                    rep.corners.prime_limit = Some(graded.dim());
                }
                if let Some(round) = led.stage("vee functor on (H^∨_t)′", drinfeld_vee(&pr.rees, opts.window_cap))? {
                    led.push(
                        "((H^∨_t)′)^∨ equals H^∨_t",
                        round.module.same_layers(&jr.module),
                        format!("{:?}", round.dims()),
                    );
                }
            }
        }
    }
    if let Some(dr) = led.stage("D-Rees module of H closed", rees_of_filtration(h, &d))? {
        rep.rees.push(rees_table("D-Rees of H", &dr));
        let t1 = fiber_t1(&dr)?;
        if let Some(pr) = &prime {
            led.push("D-Rees fiber at t=1 equals H′", t1.same_structure(&pr.sub), "");
        }
        let t0 = fiber_t0(&dr)?;
        led.push("D-Rees fiber at t=0 equals H̃", t0.same_structure(&graded_from_filtration(h, &d)?), format!("dim {}", t0.dim()));
        if let Some(v) = led.stage("vee functor on D-Rees", drinfeld_vee(&dr, opts.window_cap))? {
            rep.rees.push(rees_table("(H′_t)^∨", &v));
            led.push("(H′_t)^∨ at t=1 equals H′", fiber_t1(&v)?.same_structure(&t1), "");
            if let Some(lim) = led.stage(
                "(H′_t)^∨ at t=0 is connected cocommutative, generated by primitives",
                semiclassical_limit(&v),
            )? {
                rep.corners.vee_limit = Some(lim.graded().dim());
            }
        }
    }
    if opts.law_samples > 0 {
        let laws = random_law_suite(h, opts.seed, opts.law_samples, 3)?;
        led.push(
            "δ coassociativity and product rule on random elements",
            laws.passed(),
            format!(
                "seed {}, {} samples, {} + {} checks",
                laws.seed, laws.samples, laws.coassociativity_checks, laws.product_checks
            ),
        );
    }
    Ok(rep)
}

/// The general pipeline on u(g) plus the restricted-enveloping identities.
pub fn analyze_enveloping(env: &RestrictedEnveloping, name: &str, opts: &PipelineOptions) -> Result<AnalysisReport> {
    let h = &env.algebra;
    let mut rep = analyze(h, name, opts)?;
    if !rep.validation.iter().all(|c| c.passed) {
        return Ok(rep);
    }
    let led = &mut rep.ledger;
    let n = env.lie.dim();
    let p = env.lie.p() as u64;
    let d = dee_filtration(h)?;
    led.push("D-filtration of u(g) equals the PBW standard filtration", d.chain() == env.standard_filtration().chain(), format!("{:?}", d.dims()));
    let tilde = graded_from_filtration(h, &d)?;
    let xs: Vec<SparseVector> = (0..n).map(|i| tilde.class_of(&env.generator(i), 1)).collect();
    let truncated = is_truncated_on(&tilde.total, &xs, &vec![p; n])?;
    led.push("ũ(g) = S(g)/(x^p)", truncated, format!("dim {}", tilde.dim()));
    let poisson = poisson_on_graded(&tilde)?;
    let mut same = true;
    for i in 0..n {
        for j in 0..n {
            let lie = env.lie.bracket(&SparseVector::unit(n, i, h.field().one()), &SparseVector::unit(n, j, h.field().one()));
            same &= poisson.apply(&xs[i], &xs[j]) == tilde.class_of(&env.embed(&lie), 1);
        }
    }
    led.push("Poisson bracket of ũ(g) on generators equals the Lie bracket", same, "");
    let dr = rees_of_filtration(h, &d)?;
    let v = drinfeld_vee(&dr, opts.window_cap)?;
    let poly = LaurentModule::polynomial(h.clone());
    led.push("(u(g)_t)^∨ = u(g)[t] layer by layer", v.module.same_layers(&poly), format!("{:?}", v.dims()));
    let jr = rees_of_filtration(h, &jadic_filtration(h)?)?;
    rep.sections.push(Section {
        title: "Restricted enveloping algebra".into(),
        lines: vec![
            format!("g has dimension {n}, u(g) has dimension {}", h.dim()),
            format!("J-Rees layers of u(g): {:?}", jr.dims()),
            format!("vee of D-Rees layers: {:?}", v.dims()),
        ],
        data: json!({ "standard_filtration": env.standard_filtration().dims() }),
    });
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupPipeline {
    Crystal,
    Jennings,
    Dual,
}

/// Generators and exponents when the group is a named product of cyclic p-groups.
#[derive(Clone, Debug, Default)]
pub struct GroupHints {
    pub cyclic_generators: Option<(Vec<usize>, Vec<u32>)>,
}

pub fn analyze_group(
    g: &FiniteGroup,
    name: &str,
    field: FieldSpec,
    pipeline: GroupPipeline,
    hints: &GroupHints,
    opts: &PipelineOptions,
) -> Result<AnalysisReport> {
    let p = field.characteristic() as usize;
    match pipeline {
        GroupPipeline::Crystal => {
            let h = build_group_algebra(g, field);
            let mut rep = analyze(&h, name, opts)?;
            let led = &mut rep.ledger;
            let hp = h_prime(&h)?;
            let tilde = graded_from_filtration(&h, &dee_filtration(&h)?)?;
            led.push(
                "k[G]′ = k·1 and k[G]~ = k·1",
                hp.sub.dim() == 1 && tilde.dim() == 1,
                format!("dims {} and {}", hp.sub.dim(), tilde.dim()),
            );
            if let (Some((gens, exps)), true) = (&hints.cyclic_generators, p > 0) {
                let hat = graded_from_filtration(&h, &jadic_filtration(&h)?)?;
                let xs: Vec<SparseVector> = gens.iter().map(|&x| hat.class_of(&eta(&h, g, x), -1)).collect();
                let bounds: Vec<u64> = exps.iter().map(|&e| (p as u64).pow(e)).collect();
                let ok = is_truncated_on(&hat.total, &xs, &bounds)?;
                let rel: Vec<String> = bounds.iter().enumerate().map(|(i, b)| format!("x{}^{b}", i + 1)).collect();
                led.push(
                    "Ĥ is truncated polynomial on the cyclic generators",
                    ok,
                    format!("k[x]/({}), degree profile {:?}", rel.join(", "), hat.degree_profile()),
                );
            }
            Ok(rep)
        }
        GroupPipeline::Jennings => {
            let h = build_group_algebra(g, field);
            let mut rep = new_report(&h, name, opts);
            if p == 0 {
                let j = jadic_filtration(&h)?;
                let all_g = (0..g.order()).all(|x| j.stable().contains(&eta(&h, g, x)));
                rep.j_dims = j.dims();
                rep.ledger.push(
                    "char 0: J = J^∞ and every dimension subgroup is G",
                    j.stable_index() <= 1 && all_g,
                    format!("J-chain {:?}", j.dims()),
                );
                return Ok(rep);
            }
            let led = &mut rep.ledger;
            if let Some(r) = led.stage("Jennings-Hall (a), (b), (e), (f)", jennings_hall_check(g, p))? {
                let mut lines = vec![
                    format!("net: {:?}", r.net),
                    format!(
                        "dimension subgroup orders: {:?}",
                        r.part_a.iter().map(|x| x.dimension_subgroup_order).collect::<Vec<_>>()
                    ),
                    format!(
                        "weighted monomial counts: {:?}",
                        r.part_b.iter().map(|x| x.weighted_monomials).collect::<Vec<_>>()
                    ),
                ];
                let lab = |i: usize| format!("x̄_{}", r.part_e.labels[i]);
                let combo = |c: &[(usize, u64)]| {
                    c.iter()
                        .map(|&(k, e)| if e == 1 { lab(k) } else { format!("{e}·{}", lab(k)) })
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                for (a, b, c) in &r.part_e.bracket {
                    if a < b {
                        lines.push(format!("[{}, {}] = {}", lab(*a), lab(*b), combo(c)));
                    }
                }
                for (a, c) in &r.part_e.pmap {
                    lines.push(format!("{}^[p] = {}", lab(*a), combo(c)));
                }
                lines.push(format!(
                    "G_∞ order {}, J^∞ dim {}, k[G]^∨ dim {}",
                    r.part_f.g_infinity_order, r.part_f.j_infinity_dim, r.part_f.vee_dim
                ));
                rep.j_dims = jadic_filtration(&h)?.dims();
                rep.sections.push(Section {
                    title: "Jennings-Hall".into(),
                    lines,
                    data: serde_json::to_value(&r).expect("serializes"),
                });
            }
            let led = &mut rep.ledger;
            let spans = jennings_basis_spans_rees_layers(g, p)?;
            led.push("χ-monomials span the J-Rees layers", spans, "");
            if let Some(pg) = led.stage("prime functor on k[G]_t^∨", poisson_group_check(g, p, opts.max_n, opts.window_cap))? {
                let r = &pg.report;
                let series = p_lower_central_series(g, p)?;
                let elementary = series.term(2).len() == 1 && series.stable().len() == 1;
                led.push("prime functor stabilized in n", r.stabilized, format!("n_max = {}", r.n_max));
                led.push("(k[G]_t^∨)′ equals the ψ-monomial closed form", r.matches_psi_monomials, format!("{:?}", r.layer_dims));
                led.push(
                    "(k[G]_t^∨)′ = k[G]_t iff G_[2] = 1 = G_∞",
                    r.equals_polynomial == elementary,
                    format!("equal: {}, elementary abelian: {}", r.equals_polynomial, elementary),
                );
                led.push(
                    "Γ_G: group-like z_b, primitive x_b, truncated presentation",
                    r.truncated_presentation,
                    format!("z: {:?}, x: {:?}", r.grouplike, r.primitive),
                );
                led.push("cotangent Poisson bracket matches 𝔨_G", r.cotangent_matches_lie, "");
                rep.rees.push(ReesTable {
                    name: "(k[G]_t^∨)′".into(),
                    layers: r.layer_dims.clone(),
                });
                rep.corners.prime_limit = Some(r.fiber_dim);
                rep.sections.push(Section {
                    title: "Poisson group Γ_G".into(),
                    lines: vec![
                        format!("fiber dimension {}", r.fiber_dim),
                        format!("group-like generators: {:?}", r.grouplike),
                        format!("primitive generators: {:?}", r.primitive),
                    ],
                    data: serde_json::to_value(r).expect("serializes"),
                });
            }
            Ok(rep)
        }
        GroupPipeline::Dual => {
            let a = build_function_algebra(g, field);
            let mut rep = analyze(&a, name, opts)?;
            let led = &mut rep.ledger;
            let j = jadic_filtration(&a)?;
            let j_ok = j.term(1) == j.term(2) && j.term(1) == j.stable();
            let vee = h_vee(&a)?;
            let hat = graded_from_filtration(&a, &j)?;
            led.push(
                "A_k(G): J = J² = J^∞, A^∨ = k·1, Â = k·1",
                j_ok && vee.quotient.dim() == 1 && hat.dim() == 1,
                format!("J dims {:?}", j.dims()),
            );
            let pairing = canonical_group_pairing(g, field)?.swap();
            if let Some(rows) = led.stage("D_n = (J^(n+1))^⊥ under the canonical pairing", orthogonality_identity(&pairing))? {
                rep.sections.push(Section {
                    title: "Orthogonality".into(),
                    lines: rows
                        .iter()
                        .map(|r| format!("n = {}: dim D_n = {}, dim J^(n+1) = {}", r.n, r.d_dim, r.j_next_dim))
                        .collect(),
                    data: serde_json::to_value(&rows).expect("serializes"),
                });
            }
            if let Some(gp) = led.stage("graded pairing Ĥ(k[G]) × H̃(A_k(G))", induced_graded_pairing(&pairing))? {
                let ranks: Vec<usize> = gp.hat_tilde.iter().map(|r| r.rank).collect();
                led.push("graded pairing perfect in every degree", gp.all_perfect(), format!("ranks {ranks:?}"));
            }
            let rees = rees_pairing_identity(&pairing)?;
            led.push(
                "J-Rees layers are the D-Rees annihilators",
                rees.iter().all(|r| r.equal),
                format!("{} layers", rees.len()),
            );
            if p > 0 && g.is_p_group(p) {
                if let Some(r) = led.stage("(A_k(G)′_t)^∨ at t=0 commutative of dim |G|", function_algebra_vee_check(g, p, opts.window_cap))? {
                    rep.sections.push(Section {
                        title: "Vee functor on A_k(G)".into(),
                        lines: vec![format!(
                            "layers {:?}, fiber dim {}, cocommutative {}, primitives {}",
                            r.layer_dims, r.fiber_dim, r.cocommutative, r.lie_dim
                        )],
                        data: serde_json::to_value(&r).expect("serializes"),
                    });
                }
            }
            Ok(rep)
        }
    }
}

/// Pairing axioms, kernels and the orthogonality identities.
pub fn analyze_pairing(p: &PairingData, name: &str) -> Result<AnalysisReport> {
    let mut rep = new_report(&p.left, name, &PipelineOptions::default());
    let right = p.right.validate();
    rep.validation.extend(right.checks.into_iter().map(|mut c| {
        c.axiom = format!("right: {}", c.axiom);
        c
    }));
    let v = validate_pairing(p);
    rep.validation.extend(v.checks.iter().cloned());
    let led = &mut rep.ledger;
    led.push(
        "pairing is non-degenerate",
        v.perfect(),
        format!("level {:?}, kernels {} and {}", v.level, v.left_kernel_dim, v.right_kernel_dim),
    );
    if !rep.validation.iter().all(|c| c.passed) {
        return Ok(rep);
    }
    if let Some(rows) = led.stage("D_n = (J^(n+1))^⊥", orthogonality_identity(p))? {
        rep.sections.push(Section {
            title: "Orthogonality".into(),
            lines: rows
                .iter()
                .map(|r| format!("n = {}: dim D_n = {}, dim J^(n+1) = {}", r.n, r.d_dim, r.j_next_dim))
                .collect(),
            data: serde_json::to_value(&rows).expect("serializes"),
        });
    }
    if let Some(gp) = led.stage("graded pairing of the crystal functors", induced_graded_pairing(p))? {
        let ranks: Vec<usize> = gp.hat_tilde.iter().map(|r| r.rank).collect();
        led.push("graded pairing perfect in every degree", gp.all_perfect(), format!("ranks {ranks:?}"));
    }
    if let Some(rows) = led.stage("Rees layers under the pairing", rees_pairing_identity(p))? {
        led.push("J-Rees layers are the D-Rees annihilators", rows.iter().all(|r| r.equal), format!("{} layers", rows.len()));
    }
    Ok(rep)
}

pub fn group_summary(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "abelian": g.is_abelian(), "labels": g.labels() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_corners() {
        let h = HopfAlgebraData::trivial(FieldSpec::gf(2));
        let r = analyze(&h, "k", &PipelineOptions { law_samples: 2, ..Default::default() }).unwrap();
        assert!(r.passed(), "{}", r.to_markdown());
        let c = &r.corners;
        assert_eq!((c.hat, c.h_vee, c.h_prime, c.tilde), (Some(1), Some(1), Some(1), Some(1)));
    }

    #[test]
    fn enveloping_ledger_passes() {
        use crate::groups::lie::{build_restricted_enveloping, RestrictedLieInput};
        let env = build_restricted_enveloping(&RestrictedLieInput::affine(2)).unwrap();
        let r = analyze_enveloping(&env, "u(aff)", &PipelineOptions { law_samples: 2, ..Default::default() }).unwrap();
        assert!(r.passed(), "{}", r.to_markdown());
    }

    #[test]
    fn canonical_pairing_report() {
        let g = FiniteGroup::zp_powers(2, &[1, 1]).unwrap();
        let p = canonical_group_pairing(&g, FieldSpec::gf(2)).unwrap().swap();
        let r = analyze_pairing(&p, "Z2 x Z2").unwrap();
        assert!(r.passed(), "{}", r.to_markdown());
    }

    #[test]
    fn semidirect_all_pipelines_pass() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let opts = PipelineOptions { law_samples: 2, ..Default::default() };
        for pl in [GroupPipeline::Crystal, GroupPipeline::Jennings, GroupPipeline::Dual] {
            let r = analyze_group(&g, "Z2 x| Z4", FieldSpec::gf(2), pl, &GroupHints::default(), &opts).unwrap();
            assert!(r.passed(), "{:?}\n{}", pl, r.to_markdown());
        }
    }
}
