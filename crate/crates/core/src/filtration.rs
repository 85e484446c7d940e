//! The ε-adic filtration {Jⁿ}, the δ•-filtration {D_n}, and the connecting
//! functors H ↦ H^∨ = H/J^∞ and H ↦ H′ = ∪ D_n.

use crate::error::{Error, Result};
use crate::exactlin::{quotient_data, rref, FieldSpec, LinearMap, QuotientData, SparseVector, Subspace};
use crate::hopf::{kron, tensor_dim, HopfAlgebraData};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Increasing,
    Decreasing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationKind {
    EpsilonAdic,
    DeltaBullet,
    Standard,
    Custom,
}

/// Monotone chain `chain[0..=stable_index]`; the last term repeats forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub kind: FiltrationKind,
    pub direction: Direction,
    chain: Vec<Subspace>,
}

impl Filtration {
    /// Accepts a chain that is monotone and whose last term is the stable one.
    pub fn custom(kind: FiltrationKind, direction: Direction, mut chain: Vec<Subspace>) -> Result<Self> {
        if chain.is_empty() {
            return Err(Error::InvalidInput("empty filtration".into()));
        }
        for w in chain.windows(2) {
            let ok = match direction {
                Direction::Increasing => w[0].is_subspace_of(&w[1]),
                Direction::Decreasing => w[1].is_subspace_of(&w[0]),
            };
            if !ok {
                return Err(Error::Containment("filtration is not monotone".into()));
            }
        }
        while chain.len() > 1 && chain[chain.len() - 1] == chain[chain.len() - 2] {
            chain.pop();
        }
        Ok(Filtration {
            kind,
            direction,
            chain,
        })
    }

    pub fn term(&self, n: usize) -> &Subspace {
        &self.chain[n.min(self.chain.len() - 1)]
    }

    pub fn chain(&self) -> &[Subspace] {
        &self.chain
    }

    pub fn stable_index(&self) -> usize {
        self.chain.len() - 1
    }

    pub fn stable(&self) -> &Subspace {
        self.chain.last().unwrap()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(|s| s.dim()).collect()
    }

    pub fn to_json(&self) -> Value {
        let bases: Vec<Vec<Value>> = self
            .chain
            .iter()
            .map(|s| s.basis().iter().map(vector_json).collect())
            .collect();
        json!({
            "kind": self.kind,
            "direction": self.direction,
            "dims": self.dims(),
            "stable_index": self.stable_index(),
            "bases": bases,
        })
    }
}

pub fn vector_json(v: &SparseVector) -> Value {
    Value::Array(
        v.entries()
            .iter()
            .map(|(i, c)| json!([i, c.to_string()]))
            .collect(),
    )
}

fn span_products(h: &HopfAlgebraData, a: &Subspace, b: &Subspace) -> Subspace {
    let mut rows = Vec::with_capacity(a.dim() * b.dim());
    for x in a.basis() {
        for y in b.basis() {
            rows.push(h.mul(x, y));
        }
    }
    rref(h.dim(), &rows).expect("products share dimension")
}

/// J⁰ = H ⊇ J ⊇ J² ⊇ … until two consecutive powers agree.
pub fn jadic_filtration(h: &HopfAlgebraData) -> Result<Filtration> {
    let j = h.augmentation_ideal();
    let mut chain = vec![Subspace::full(&h.field(), h.dim()), j.clone()];
    loop {
        let next = span_products(h, chain.last().unwrap(), &j);
        if &next == chain.last().unwrap() {
            if span_products(h, &next, &j) != next {
                return Err(Error::InternalConsistency("J-adic chain failed to stabilize".into()));
            }
            break;
        }
        chain.push(next);
    }
    Filtration::custom(FiltrationKind::EpsilonAdic, Direction::Decreasing, chain)
}

fn tensor_span(d: usize, left: &[SparseVector], right: &[SparseVector]) -> Vec<SparseVector> {
    let mut rows = Vec::with_capacity(left.len() * right.len());
    for a in left {
        for b in right {
            rows.push(kron(a, b));
        }
    }
    let _ = d;
    rows
}

fn comult_map(h: &HopfAlgebraData) -> LinearMap {
    LinearMap::from_fn(h.field(), h.dim(), h.dim() * h.dim(), |i| h.comult_basis(i).clone())
}

/// D₀ = k·1 and D_n = Δ⁻¹(H⊗D_{n−1} + D₀⊗H), computed in H⊗H.
pub fn dee_filtration(h: &HopfAlgebraData) -> Result<Filtration> {
    let d = h.dim();
    let full = Subspace::full(&h.field(), d);
    let d0 = rref(d, &[h.one().clone()])?;
    let delta = comult_map(h);
    let step = |prev: &Subspace| -> Result<Subspace> {
        let mut rows = tensor_span(d, full.basis(), prev.basis());
        rows.extend(tensor_span(d, d0.basis(), full.basis()));
        delta.preimage(&rref(d * d, &rows)?)
    };
    let mut chain = vec![d0.clone()];
    loop {
        let next = step(chain.last().unwrap())?;
        if &next == chain.last().unwrap() {
            if step(&next)? != next {
                return Err(Error::InternalConsistency("D-chain failed to stabilize".into()));
            }
            break;
        }
        chain.push(next);
    }
    Filtration::custom(FiltrationKind::DeltaBullet, Direction::Increasing, chain)
}

/// Dimensions of Ker(δ_{n+1}) next to D_n, for n up to `n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelCrosscheck {
    pub rows: Vec<(usize, usize, usize, bool)>,
}

impl KernelCrosscheck {
    pub fn all_equal(&self) -> bool {
        self.rows.iter().all(|r| r.3)
    }
}

pub fn delta_kernel_crosscheck(h: &HopfAlgebraData, n_max: usize, budget: usize) -> Result<KernelCrosscheck> {
    let dee = dee_filtration(h)?;
    let mut rows = Vec::new();
    for n in 0..=n_max {
        let amb = tensor_dim(h.dim(), n + 1)?;
        if amb > budget {
            return Err(Error::Resource {
                what: format!("Ker(δ_{}) in dimension {}^{}", n + 1, h.dim(), n + 1),
                needed: amb as u128,
                budget: budget as u128,
            });
        }
        let mut cols = Vec::with_capacity(h.dim());
        for i in 0..h.dim() {
            cols.push(h.delta_n(&h.basis_vector(i), n + 1)?.coeffs);
        }
        let ker = LinearMap::new(h.field(), h.dim(), amb, cols)?.kernel();
        let dn = dee.term(n);
        rows.push((n, ker.dim(), dn.dim(), &ker == dn));
    }
    Ok(KernelCrosscheck { rows })
}

fn label_for(h: &HopfAlgebraData, v: &SparseVector) -> String {
    match v.entries() {
        [(i, c)] if c.is_one() => h.labels()[*i].clone(),
        _ => format!("[{}]", h.format_vector(v)),
    }
}

/// Checks m(H⊗I + I⊗H) ⊆ I, Δ(I) ⊆ H⊗I + I⊗H, ε(I) = 0 and S(I) ⊆ I.
pub fn check_biideal(h: &HopfAlgebraData, ideal: &Subspace) -> Result<()> {
    let d = h.dim();
    let fail = |what: &str| Err(Error::InternalConsistency(format!("not a biideal: {what}")));
    for v in ideal.basis() {
        for i in 0..d {
            let e = h.basis_vector(i);
            if !ideal.contains(&h.mul(&e, v)) || !ideal.contains(&h.mul(v, &e)) {
                return fail("multiplication");
            }
        }
        if !h.counit_of(v).is_zero() {
            return fail("counit");
        }
        if let Some(s) = h.antipode_of(v) {
            if h.flags.has_antipode && !ideal.contains(&s) {
                return fail("antipode");
            }
        }
    }
    let full = Subspace::full(&h.field(), d);
    let mut rows = tensor_span(d, full.basis(), ideal.basis());
    rows.extend(tensor_span(d, ideal.basis(), full.basis()));
    let coideal = rref(d * d, &rows)?;
    if ideal.basis().iter().any(|v| !coideal.contains(&h.comul(v))) {
        return fail("coproduct");
    }
    Ok(())
}

/// H/I with structure constants on the canonical complement of I.
#[derive(Clone, Debug)]
pub struct QuotientHopf {
    pub ideal: Subspace,
    pub quotient: HopfAlgebraData,
    pub data: QuotientData,
    pub projection: LinearMap,
    pub section: LinearMap,
}

pub fn quotient_by(h: &HopfAlgebraData, ideal: &Subspace) -> Result<QuotientHopf> {
    check_biideal(h, ideal)?;
    let d = h.dim();
    let field = h.field();
    let data = quotient_data(&Subspace::full(&field, d), ideal)?;
    let q = data.dim();
    let sec = data.section().to_vec();
    let proj_basis: Vec<SparseVector> = (0..d).map(|i| data.project(&h.basis_vector(i))).collect();
    let proj = |v: &SparseVector| data.project(v);
    let proj2 = |t: &SparseVector| {
        let mut acc = crate::exactlin::Accumulator::new(q * q);
        for (idx, c) in t.entries() {
            acc.add_vector(c, &kron(&proj_basis[idx / d], &proj_basis[idx % d]));
        }
        acc.into_vector()
    };
    let mult = (0..q * q).map(|x| proj(&h.mul(&sec[x / q], &sec[x % q]))).collect();
    let comult = sec.iter().map(|s| proj2(&h.comul(s))).collect();
    let counit = sec.iter().map(|s| h.counit_of(s)).collect();
    let antipode = match h.antipode() {
        Some(_) if h.flags.has_antipode => Some(LinearMap::from_fn(field, q, q, |a| {
            proj(&h.antipode_of(&sec[a]).unwrap())
        })),
        _ => None,
    };
    let labels = sec.iter().map(|s| label_for(h, s)).collect();
    let quotient = HopfAlgebraData::validated(field, labels, mult, proj(h.one()), comult, counit, antipode)?;
    let projection = LinearMap::from_fn(field, d, q, |i| proj_basis[i].clone());
    let section = LinearMap::from_fn(field, q, d, |a| sec[a].clone());
    Ok(QuotientHopf {
        ideal: ideal.clone(),
        quotient,
        data,
        projection,
        section,
    })
}

/// H^∨ = H/J^∞.
pub fn h_vee(h: &HopfAlgebraData) -> Result<QuotientHopf> {
    let jf = jadic_filtration(h)?;
    quotient_by(h, jf.stable())
}

/// A sub-bialgebra with coordinates read at the carrier's pivots.
#[derive(Clone, Debug)]
pub struct SubHopf {
    pub carrier: Subspace,
    pub sub: HopfAlgebraData,
    pub inclusion: LinearMap,
}

pub fn restrict_to(h: &HopfAlgebraData, carrier: &Subspace) -> Result<SubHopf> {
    let d = h.dim();
    let field = h.field();
    let fail = |what: &str| Err(Error::InternalConsistency(format!("not a sub-bialgebra: {what}")));
    if !carrier.contains(h.one()) {
        return fail("unit");
    }
    let b = carrier.basis();
    let r = b.len();
    let piv = carrier.pivots();
    let mut mult = Vec::with_capacity(r * r);
    for x in b {
        for y in b {
            let m = h.mul(x, y);
            if !carrier.contains(&m) {
                return fail("multiplication");
            }
            mult.push(carrier.coords(&m));
        }
    }
    let mut comult = Vec::with_capacity(r);
    for x in b {
        let t = h.comul(x);
        let mut entries = Vec::new();
        for a in 0..r {
            for c in 0..r {
                if let Some(v) = t.get(piv[a] * d + piv[c]) {
                    entries.push((a * r + c, v.clone()));
                }
            }
        }
        let coords = SparseVector::from_entries(r * r, entries);
        let mut back = crate::exactlin::Accumulator::new(d * d);
        for (idx, c) in coords.entries() {
            back.add_vector(c, &kron(&b[idx / r], &b[idx % r]));
        }
        if back.into_vector() != t {
            return fail("coproduct");
        }
        comult.push(coords);
    }
    let antipode = match h.antipode() {
        Some(_) if h.flags.has_antipode => {
            let mut cols = Vec::with_capacity(r);
            for x in b {
                let s = h.antipode_of(x).unwrap();
                if !carrier.contains(&s) {
                    return fail("antipode");
                }
                cols.push(carrier.coords(&s));
            }
            Some(LinearMap::new(field, r, r, cols)?)
        }
        _ => None,
    };
    let labels = b.iter().map(|v| label_for(h, v)).collect();
    let sub = HopfAlgebraData::validated(
        field,
        labels,
        mult,
        carrier.coords(h.one()),
        comult,
        b.iter().map(|x| h.counit_of(x)).collect(),
        antipode,
    )?;
    Ok(SubHopf {
        carrier: carrier.clone(),
        sub,
        inclusion: LinearMap::from_fn(field, r, d, |a| b[a].clone()),
    })
}

/// H′ = ∪ D_n, certified connected.
pub fn h_prime(h: &HopfAlgebraData) -> Result<SubHopf> {
    let df = dee_filtration(h)?;
    let s = restrict_to(h, df.stable())?;
    let inner = dee_filtration(&s.sub)?;
    if inner.stable().dim() != s.sub.dim() {
        return Err(Error::theorem(
            "H′ is connected",
            format!("D-filtration of H′ reaches {} of {}", inner.stable().dim(), s.sub.dim()),
        ));
    }
    Ok(s)
}

/// Δ(F_n) ⊆ Σ_{r+s=n} F_r ⊗ F_s and F_r F_s ⊆ F_{r+s}, for n up to the stable index plus one.
pub fn check_bialgebra_filtration(h: &HopfAlgebraData, f: &Filtration) -> Result<()> {
    let d = h.dim();
    let top = f.stable_index() + 1;
    for r in 0..=top {
        for s in 0..=top - r {
            let prod = span_products(h, f.term(r), f.term(s));
            if !prod.is_subspace_of(f.term(r + s)) {
                return Err(Error::AxiomViolation {
                    axiom: "filtration multiplicative".into(),
                    witness: vec![r, s],
                });
            }
        }
    }
    for n in 0..=top {
        let mut rows = Vec::new();
        for r in 0..=n {
            rows.extend(tensor_span(d, f.term(r).basis(), f.term(n - r).basis()));
        }
        let target = rref(d * d, &rows)?;
        if f.term(n).basis().iter().any(|v| !target.contains(&h.comul(v))) {
            return Err(Error::AxiomViolation {
                axiom: "filtration comultiplicative".into(),
                witness: vec![n],
            });
        }
    }
    Ok(())
}

/// Whether the antipode preserves every term of the filtration.
pub fn antipode_preserves(h: &HopfAlgebraData, f: &Filtration) -> bool {
    f.chain().iter().all(|s| {
        s.basis()
            .iter()
            .all(|v| h.antipode_of(v).map(|w| s.contains(&w)).unwrap_or(true))
    })
}

pub fn field_of(h: &HopfAlgebraData) -> FieldSpec {
    h.field()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_function_algebra, build_group_algebra, FiniteGroup};

    #[test]
    fn semidirect_jadic_dims() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let h = build_group_algebra(&g, FieldSpec::gf(2));
        let j = jadic_filtration(&h).unwrap();
        assert_eq!(j.dims(), vec![8, 7, 5, 3, 1, 0]);
        check_bialgebra_filtration(&h, &j).unwrap();
    }

    #[test]
    fn function_algebra_dee_dims() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let a = build_function_algebra(&g, FieldSpec::gf(2));
        assert_eq!(dee_filtration(&a).unwrap().dims(), vec![1, 3, 5, 7, 8]);
        let j = jadic_filtration(&a).unwrap();
        assert_eq!(j.dims(), vec![8, 7]);
        assert_eq!(h_vee(&a).unwrap().quotient.dim(), 1);
        assert_eq!(h_prime(&a).unwrap().sub.dim(), 8);
    }

    #[test]
    fn group_algebra_is_not_connected() {
        let g = FiniteGroup::cyclic(4);
        for f in [FieldSpec::gf(2), FieldSpec::gf(3), FieldSpec::rationals()] {
            let h = build_group_algebra(&g, f);
            assert_eq!(dee_filtration(&h).unwrap().dims(), vec![1]);
            assert_eq!(h_prime(&h).unwrap().sub.dim(), 1);
        }
    }

    #[test]
    fn crosscheck_on_function_algebra() {
        let a = build_function_algebra(&FiniteGroup::cyclic(4), FieldSpec::gf(2));
        let r = delta_kernel_crosscheck(&a, 3, 1 << 12).unwrap();
        assert!(r.all_equal());
        assert!(matches!(delta_kernel_crosscheck(&a, 9, 1 << 12), Err(Error::Resource { .. })));
    }

    #[test]
    fn rational_group_algebra_collapses() {
        let h = build_group_algebra(&FiniteGroup::cyclic(2), FieldSpec::rationals());
        let j = jadic_filtration(&h).unwrap();
        assert_eq!(j.dims(), vec![2, 1]);
        assert_eq!(h_vee(&h).unwrap().quotient.dim(), 1);
    }
}
