//! Rees modules over k[t] as degree-indexed subspace families, their fibers,
//! the two Drinfeld functors and their semiclassical limits.

use crate::error::{Error, Result};
use crate::exactlin::{rref, FieldSpec, LinearMap, SparseVector, Subspace};
use crate::filtration::{dee_filtration, restrict_to, Filtration};
use crate::graded::{
    copoisson_on_graded, extract_lie, poisson_on_graded, AdaptedBasis, CoPoissonStructure,
    GradedBialgebraData, Layers, PoissonStructure, Provenance, RestrictedLieBialgebra, Weight,
};
use crate::hopf::{HopfAlgebraData, DEFAULT_TENSOR_BUDGET};
use serde::Serialize;

pub const DEFAULT_WINDOW_CAP: usize = 4;

/// Σ t^z V_z inside H[t, t⁻¹].
#[derive(Clone, Debug)]
pub struct LaurentModule {
    pub base: HopfAlgebraData,
    pub layers: Layers,
}

impl LaurentModule {
    pub fn new(base: HopfAlgebraData, layers: Layers) -> Result<Self> {
        if layers.ambient() != base.dim() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                found: layers.ambient(),
            });
        }
        Ok(LaurentModule { base, layers }.canonical())
    }

    /// k[t] ⊗ H: layers 0 below degree 0 and H from degree 0 on.
    pub fn polynomial(base: HopfAlgebraData) -> Self {
        let d = base.dim();
        let full = Subspace::full(&base.field(), d);
        let layers = Layers::new(-1, vec![Subspace::zero(d), full.clone()], Subspace::zero(d), full).unwrap();
        LaurentModule { base, layers }
    }

    /// Keeps exactly one copy of each stable end inside the window.
    pub fn canonical(mut self) -> Self {
        let l = &mut self.layers;
        if l.layers.is_empty() {
            l.layers.push(l.low.clone());
        }
        while l.layers.len() > 1 && l.layers[1] == l.low {
            l.layers.remove(0);
            l.zmin += 1;
        }
        while l.layers.len() > 1 && l.layers[l.layers.len() - 2] == l.high {
            l.layers.pop();
        }
        if l.layers[0] != l.low {
            let low = l.low.clone();
            l.layers.insert(0, low);
            l.zmin -= 1;
        }
        if *l.layers.last().unwrap() != l.high {
            let high = l.high.clone();
            l.layers.push(high);
        }
        self
    }

    pub fn window(&self) -> (i64, i64) {
        (self.layers.zmin, self.layers.zmax())
    }

    pub fn layer(&self, z: i64) -> &Subspace {
        self.layers.layer(z)
    }

    pub fn low(&self) -> &Subspace {
        &self.layers.low
    }

    pub fn high(&self) -> &Subspace {
        &self.layers.high
    }

    /// (z, dim V_z) across the window.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        let (lo, hi) = self.window();
        (lo..=hi).map(|z| (z, self.layer(z).dim())).collect()
    }

    /// Membership of Σ t^z x_z: every coefficient lies in its layer.
    pub fn contains(&self, terms: &[(i64, SparseVector)]) -> bool {
        terms.iter().all(|(z, x)| self.layer(*z).contains(x))
    }

    pub fn same_layers(&self, other: &LaurentModule) -> bool {
        self.layers == other.layers
    }

    /// Dimension of the associated graded, Σ dim V_z/V_{z−1}.
    pub fn graded_dim(&self) -> usize {
        self.layers.high.dim() - self.layers.low.dim()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "window": [self.window().0, self.window().1],
            "layer_dims": self.dims().iter().map(|(z, d)| serde_json::json!([z, d])).collect::<Vec<_>>(),
            "low_stable_dim": self.low().dim(),
            "high_stable_dim": self.high().dim(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReesKind {
    JRees,
    DRees,
    Prime,
    Vee,
    Custom,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClosureFlags {
    pub closed_under_product: bool,
    pub closed_under_coproduct: bool,
}

#[derive(Clone, Debug)]
pub struct ReesBialgebra {
    pub module: LaurentModule,
    pub kind: ReesKind,
    pub certified: ClosureFlags,
}

/// Checks product and coproduct closure of the layer family.
pub fn check_closure(m: &LaurentModule) -> Result<ClosureFlags> {
    let h = &m.base;
    let ab = AdaptedBasis::new(&m.layers)?;
    let inside: Vec<usize> = (0..ab.dim()).filter(|&a| ab.weights[a] != Weight::PosInf).collect();
    let fail = |axiom: &str, witness: Vec<usize>| {
        Err(Error::AxiomViolation {
            axiom: axiom.into(),
            witness,
        })
    };
    if ab.weight_of(h.one()).unwrap_or(Weight::NegInf) > Weight::Fin(0) {
        return fail("unit in degree 0", vec![]);
    }
    for &a in &inside {
        for &b in &inside {
            let w = ab.weight_of(&h.mul(&ab.vectors[a], &ab.vectors[b]));
            if w.is_some_and(|w| w > ab.weights[a].plus(ab.weights[b])) {
                return fail("Rees product closure", vec![a, b]);
            }
        }
    }
    for &a in &inside {
        let c = ab.coords2(&h.comul(&ab.vectors[a]));
        if c.entries().iter().any(|(idx, _)| ab.pair_weight(*idx) > ab.weights[a]) {
            return fail("Rees coproduct closure", vec![a]);
        }
        if ab.weights[a] < Weight::Fin(0) && !h.counit_of(&ab.vectors[a]).is_zero() {
            return fail("counit vanishes in negative degree", vec![a]);
        }
        if let Some(s) = h.antipode_of(&ab.vectors[a]) {
            if ab.weight_of(&s).is_some_and(|w| w > ab.weights[a]) {
                return fail("antipode preserves layers", vec![a]);
            }
        }
    }
    Ok(ClosureFlags {
        closed_under_product: true,
        closed_under_coproduct: true,
    })
}

impl ReesBialgebra {
    pub fn certify(module: LaurentModule, kind: ReesKind) -> Result<Self> {
        let certified = check_closure(&module)?;
        Ok(ReesBialgebra {
            module,
            kind,
            certified,
        })
    }

    pub fn base(&self) -> &HopfAlgebraData {
        &self.module.base
    }

    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.module.dims()
    }
}

pub fn rees_of_filtration(h: &HopfAlgebraData, f: &Filtration) -> Result<ReesBialgebra> {
    crate::filtration::check_bialgebra_filtration(h, f)?;
    let kind = match f.direction {
        crate::filtration::Direction::Decreasing => ReesKind::JRees,
        crate::filtration::Direction::Increasing => ReesKind::DRees,
    };
    ReesBialgebra::certify(LaurentModule::new(h.clone(), Layers::from_filtration(f))?, kind)
}

/// Specialization at t = 1: the bialgebra on the union of the layers.
pub fn fiber_t1(m: &ReesBialgebra) -> Result<HopfAlgebraData> {
    let high = m.module.high();
    if high.is_full() {
        Ok(m.base().clone())
    } else {
        Ok(restrict_to(m.base(), high)?.sub)
    }
}

fn provenance_of(kind: ReesKind) -> Provenance {
    match kind {
        ReesKind::JRees | ReesKind::Custom => Provenance::FromJ,
        ReesKind::DRees => Provenance::FromD,
        ReesKind::Prime => Provenance::DrinfeldPrime,
        ReesKind::Vee => Provenance::DrinfeldVee,
    }
}

/// Specialization at t = 0: the associated graded of the layers.
pub fn fiber_t0(m: &ReesBialgebra) -> Result<GradedBialgebraData> {
    GradedBialgebraData::from_layers(m.base(), &m.module.layers, provenance_of(m.kind))
}

fn annihilator(field: &FieldSpec, d: usize, functionals: &Subspace) -> Result<Subspace> {
    let rows = functionals.basis();
    let mut cols = vec![Vec::new(); d];
    for (i, f) in rows.iter().enumerate() {
        for (k, c) in f.entries() {
            cols[*k].push((i, c.clone()));
        }
    }
    let cols = cols
        .into_iter()
        .map(|e| SparseVector::from_entries(rows.len(), e))
        .collect();
    Ok(LinearMap::new(*field, d, rows.len(), cols)?.kernel())
}

/// Step function s ↦ G(s), decreasing, constant outside [lo, lo + vals.len()).
#[derive(Clone, Debug)]
struct Staircase {
    lo: i64,
    vals: Vec<Subspace>,
    below: Subspace,
    above: Subspace,
}

impl Staircase {
    fn at(&self, s: i64) -> &Subspace {
        if s < self.lo {
            &self.below
        } else if s >= self.lo + self.vals.len() as i64 {
            &self.above
        } else {
            &self.vals[(s - self.lo) as usize]
        }
    }
}

#[derive(Clone, Debug)]
pub struct PrimeResult {
    pub rees: ReesBialgebra,
    pub n_max: usize,
    pub stabilized: bool,
}

/// Default depth 2·N + 2 for a J-Rees input whose chain stabilizes at N.
pub fn default_n_max(m: &ReesBialgebra) -> usize {
    let (lo, hi) = m.module.window();
    2 * (hi - lo).max(0) as usize + 2
}

/// (B_t)′: elements whose δ_n-images are divisible by t^n, layer by layer.
///
/// The functional picking the adapted coordinate (a_1..a_n) of δ_n(x) is the
/// convolution product g_{a_1} * … * g_{a_n} with g_a = f_a ∘ (id − ε), so the
/// forbidden functionals in degree z are those with Σ (w(a_i) + 1) > z.
pub fn drinfeld_prime(m: &ReesBialgebra, n_max: usize, window_cap: usize) -> Result<PrimeResult> {
    if n_max < 2 {
        return Err(Error::InvalidInput("n_max must be at least 2".into()));
    }
    let h = m.base();
    let d = h.dim();
    let field = h.field();
    let tensor = (d as u128).pow(2);
    if tensor > DEFAULT_TENSOR_BUDGET {
        return Err(Error::Resource {
            what: "tensor square".into(),
            needed: tensor,
            budget: DEFAULT_TENSOR_BUDGET,
        });
    }
    let ab = AdaptedBasis::new(&m.module.layers)?;
    let dual = ab_dual(&ab, &field, d)?;
    let eps: Vec<_> = (0..d).map(|k| h.counit_basis(k).clone()).collect();
    let one = h.one();
    // g_a = f_a − f_a(1) ε
    let g: Vec<SparseVector> = (0..d)
        .map(|a| {
            let f1 = dual[a].dot(one, &field);
            let mut v = dual[a].clone();
            if !f1.is_zero() {
                let e = SparseVector::from_dense(&eps);
                v = v.sub(&e.scale(&f1));
            }
            v
        })
        .collect();
    let shifted = |a: usize| match ab.weights[a] {
        Weight::Fin(z) => Weight::Fin(z + 1),
        w => w,
    };
    let finite: Vec<usize> = (0..d).filter(|&a| matches!(ab.weights[a], Weight::Fin(_))).collect();
    let posinf: Vec<usize> = (0..d).filter(|&a| ab.weights[a] == Weight::PosInf).collect();
    let (wmin, wmax) = if finite.is_empty() {
        (0, 0)
    } else {
        let ws: Vec<i64> = finite
            .iter()
            .map(|&a| match shifted(a) {
                Weight::Fin(z) => z,
                _ => unreachable!(),
            })
            .collect();
        (*ws.iter().min().unwrap(), *ws.iter().max().unwrap())
    };
    let wfin = |a: usize| match shifted(a) {
        Weight::Fin(z) => z,
        _ => unreachable!(),
    };
    // right convolution by g_a, as a map on functionals
    let conv: Vec<LinearMap> = {
        let mut cols = vec![vec![Vec::new(); d]; d];
        for k in 0..d {
            for (idx, c) in h.comult_basis(k).entries() {
                let (i, j) = (idx / d, idx % d);
                for a in 0..d {
                    if let Some(gj) = g[a].get(j) {
                        cols[a][i].push((k, c * gj));
                    }
                }
            }
        }
        cols.into_iter()
            .map(|ca| {
                let cs = ca.into_iter().map(|e| SparseVector::from_entries(d, e)).collect();
                LinearMap::new(field, d, d, cs)
            })
            .collect::<Result<_>>()?
    };
    let span = |rows: Vec<SparseVector>| rref(d, &rows);
    let level = |s: i64| -> Result<Subspace> {
        span(
            finite
                .iter()
                .filter(|&&a| wfin(a) >= s)
                .chain(posinf.iter())
                .map(|&a| g[a].clone())
                .collect(),
        )
    };
    let mut stairs = Vec::with_capacity(n_max);
    let first = Staircase {
        lo: wmin,
        vals: (wmin..=wmax).map(level).collect::<Result<_>>()?,
        below: level(i64::MIN)?,
        above: level(i64::MAX)?,
    };
    stairs.push(first);
    for n in 2..=n_max as i64 {
        let prev = stairs.last().unwrap();
        let image = |sub: &Subspace, a: usize| conv[a].image_of(sub);
        let value = |s: Option<i64>| -> Result<Subspace> {
            let mut rows: Vec<SparseVector> = Vec::new();
            for &a in &finite {
                let src = match s {
                    Some(s) => prev.at(s - wfin(a)),
                    None => &prev.above,
                };
                rows.extend(image(src, a)?.basis().iter().cloned());
            }
            for &a in &posinf {
                rows.extend(image(&prev.below, a)?.basis().iter().cloned());
            }
            if s.is_none() {
                // products whose earlier factors already contain +∞
                for &a in &finite {
                    rows.extend(image(&prev.above, a)?.basis().iter().cloned());
                }
            }
            span(rows)
        };
        let lo = n * wmin;
        let hi = n * wmax;
        let vals = (lo..=hi).map(|s| value(Some(s))).collect::<Result<Vec<_>>>()?;
        let below = value(Some(lo - 1 - (wmax - wmin)))?;
        let above = value(None)?;
        stairs.push(Staircase { lo, vals, below, above });
    }
    let bad = |z: Option<i64>, upto: usize| -> Result<Subspace> {
        let mut rows = Vec::new();
        for st in &stairs[..upto] {
            let s = match z {
                Some(z) => st.at(z + 1),
                None => &st.below,
            };
            rows.extend(s.basis().iter().cloned());
        }
        span(rows)
    };
    let (in_lo, in_hi) = m.module.window();
    let width = (in_hi - in_lo + 1) as usize;
    let cap = width * window_cap.max(1);
    let compute = |upto: usize| -> Result<LaurentModule> {
        let low_out = m.module.low().intersect(&annihilator(&field, d, &bad(None, upto)?)?)?;
        let high_bad = bad(Some(i64::MAX - 1), upto)?;
        let high_out = m.module.high().intersect(&annihilator(&field, d, &high_bad)?)?;
        let layer = |z: i64| -> Result<Subspace> {
            m.module.layer(z).intersect(&annihilator(&field, d, &bad(Some(z), upto)?)?)
        };
        let mut lo = in_lo;
        let mut hi = in_hi;
        let mut layers: Vec<Subspace> = (lo..=hi).map(layer).collect::<Result<_>>()?;
        while layers[0] != low_out {
            lo -= 1;
            layers.insert(0, layer(lo)?);
            if layers.len() > cap {
                return Err(Error::Resource {
                    what: "drinfeld_prime window".into(),
                    needed: layers.len() as u128,
                    budget: cap as u128,
                });
            }
        }
        while *layers.last().unwrap() != high_out {
            hi += 1;
            layers.push(layer(hi)?);
            if layers.len() > cap {
                return Err(Error::Resource {
                    what: "drinfeld_prime window".into(),
                    needed: layers.len() as u128,
                    budget: cap as u128,
                });
            }
        }
        LaurentModule::new(h.clone(), Layers::new(lo, layers, low_out, high_out)?)
    };
    let full = compute(n_max)?;
    let shallow = compute(n_max - 1)?;
    let stabilized = full.same_layers(&shallow);
    let rees = ReesBialgebra::certify(full, ReesKind::Prime).map_err(|e| {
        Error::theorem("drinfeld_prime output is a Rees bialgebra", e.to_string())
    })?;
    Ok(PrimeResult {
        rees,
        n_max,
        stabilized,
    })
}

fn ab_dual(ab: &AdaptedBasis, field: &FieldSpec, d: usize) -> Result<Vec<SparseVector>> {
    let m = LinearMap::new(*field, d, d, ab.vectors.clone())?
        .inverse()
        .ok_or_else(|| Error::InternalConsistency("adapted basis is singular".into()))?
        .transpose();
    Ok(m.columns().to_vec())
}

/// (B′_t)^∨ = Σ_n (t⁻¹J′)^n, with layer z of t⁻¹J′ equal to V_{z+1} ∩ J.
pub fn drinfeld_vee(m: &ReesBialgebra, window_cap: usize) -> Result<ReesBialgebra> {
    let h = m.base();
    let d = h.dim();
    let aug = h.augmentation_ideal();
    let md = &m.module;
    let (in_lo, in_hi) = md.window();
    let x_of = |v: i64| md.layer(v + 1).intersect(&aug);
    let x_low = md.low().intersect(&aug)?;
    let x_high = md.high().intersect(&aug)?;
    let products = |a: &Subspace, b: &Subspace| -> Vec<SparseVector> {
        let mut rows = Vec::new();
        for u in a.basis() {
            for v in b.basis() {
                rows.push(h.mul(u, v));
            }
        }
        rows
    };
    let close_right = |start: &Subspace, by: &Subspace| -> Result<Subspace> {
        let mut s = start.clone();
        loop {
            let mut rows = s.basis().to_vec();
            rows.extend(products(&s, by));
            let next = rref(d, &rows)?;
            if next == s {
                return Ok(s);
            }
            s = next;
        }
    };
    let high_out = close_right(md.high(), &x_high)?;
    let mut seed = md.low().basis().to_vec();
    seed.extend(products(&high_out, &x_low));
    let low_out = close_right(&rref(d, &seed)?, &x_high)?;

    let cap = ((in_hi - in_lo + 1) as usize) * window_cap.max(1);
    let (mut lo, mut hi) = (in_lo, in_hi);
    let mut layers: Vec<Subspace> = (lo..=hi)
        .map(|z| md.layer(z).sum(&low_out))
        .collect::<Result<_>>()?;
    let (xlo, xhi) = (in_lo - 1, in_hi);
    loop {
        let get = |layers: &Vec<Subspace>, lo: i64, u: i64| -> Subspace {
            if u < lo {
                low_out.clone()
            } else if u > lo + layers.len() as i64 - 1 {
                high_out.clone()
            } else {
                layers[(u - lo) as usize].clone()
            }
        };
        let mut changed = false;
        let mut next = Vec::with_capacity(layers.len());
        for z in lo..=hi {
            let mut rows = get(&layers, lo, z).basis().to_vec();
            for v in xlo..=xhi + 1 {
                let xv = if v > xhi { x_high.clone() } else { x_of(v)? };
                if xv.dim() == 0 {
                    continue;
                }
                rows.extend(products(&get(&layers, lo, z - v), &xv));
            }
            let s = rref(d, &rows)?;
            if s != layers[(z - lo) as usize] {
                changed = true;
            }
            next.push(s);
        }
        layers = next;
        let mut grew = false;
        // products may land below the window
        let below = {
            let mut rows = low_out.basis().to_vec();
            for v in xlo..=xhi + 1 {
                let xv = if v > xhi { x_high.clone() } else { x_of(v)? };
                rows.extend(products(&get(&layers, lo, lo - 1 - v), &xv));
            }
            rref(d, &rows)?
        };
        if below != low_out {
            lo -= 1;
            layers.insert(0, below);
            grew = true;
        }
        if *layers.last().unwrap() != high_out {
            hi += 1;
            layers.push(high_out.clone());
            let last = layers.len() - 1;
            layers[last] = md.layer(hi).sum(&low_out)?;
            grew = true;
        }
        if layers.len() > cap {
            return Err(Error::Resource {
                what: "drinfeld_vee window".into(),
                needed: layers.len() as u128,
                budget: cap as u128,
            });
        }
        if !changed && !grew {
            break;
        }
    }
    let module = LaurentModule::new(h.clone(), Layers::new(lo, layers, low_out, high_out)?)?;
    ReesBialgebra::certify(module, ReesKind::Vee)
        .map_err(|e| Error::theorem("drinfeld_vee output is a Rees bialgebra", e.to_string()))
}

#[derive(Clone, Debug)]
pub enum SemiclassicalLimit {
    /// Commutative Poisson bialgebra of a function-algebra type deformation.
    Poisson {
        graded: GradedBialgebraData,
        bracket: PoissonStructure,
        nilpotency_checked: bool,
    },
    /// Connected cocommutative co-Poisson Hopf algebra of enveloping type.
    CoPoisson {
        graded: GradedBialgebraData,
        cobracket: CoPoissonStructure,
        lie: RestrictedLieBialgebra,
    },
}

impl SemiclassicalLimit {
    pub fn graded(&self) -> &GradedBialgebraData {
        match self {
            SemiclassicalLimit::Poisson { graded, .. } | SemiclassicalLimit::CoPoisson { graded, .. } => graded,
        }
    }
}

pub fn semiclassical_limit(m: &ReesBialgebra) -> Result<SemiclassicalLimit> {
    let graded = fiber_t0(m)?;
    match m.kind {
        ReesKind::Prime => {
            let bracket = poisson_on_graded(&graded)?;
            let t = &graded.total;
            let p = t.field().characteristic();
            let mut nilpotency_checked = false;
            if p > 0 {
                for x in t.augmentation_ideal().basis() {
                    if !t.power(x, p).is_zero() {
                        return Err(Error::theorem(
                            "augmentation ideal of the limit has nilpotency order p",
                            t.format_vector(x),
                        ));
                    }
                }
                nilpotency_checked = true;
            }
            Ok(SemiclassicalLimit::Poisson {
                graded,
                bracket,
                nilpotency_checked,
            })
        }
        ReesKind::Vee => {
            let cobracket = copoisson_on_graded(&graded)?;
            let lie = extract_lie(&graded)?;
            let t = &graded.total;
            let dee = dee_filtration(t)?;
            if !dee.stable().is_full() {
                return Err(Error::theorem(
                    "limit is connected",
                    format!("coradical filtration reaches {} of {}", dee.stable().dim(), t.dim()),
                ));
            }
            Ok(SemiclassicalLimit::CoPoisson {
                graded,
                cobracket,
                lie,
            })
        }
        _ => Err(Error::InvalidInput(
            "semiclassical limits are defined for Drinfeld functor outputs".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::jadic_filtration;
    use crate::groups::{build_group_algebra, build_restricted_enveloping, FiniteGroup, RestrictedLieInput};

    fn jrees(g: &FiniteGroup) -> ReesBialgebra {
        let h = build_group_algebra(g, FieldSpec::gf(2));
        rees_of_filtration(&h, &jadic_filtration(&h).unwrap()).unwrap()
    }

    #[test]
    fn semidirect_jrees_layers() {
        let r = jrees(&FiniteGroup::zp_semidirect_zp2(2));
        let dims: Vec<usize> = r.dims().iter().map(|x| x.1).collect();
        assert_eq!(r.module.window(), (-5, 0));
        assert_eq!(dims, vec![0, 1, 3, 5, 7, 8]);
        assert_eq!(fiber_t0(&r).unwrap().degree_profile(), vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn prime_on_elementary_abelian_is_polynomial() {
        let g = FiniteGroup::zp_powers(2, &[1, 1]).unwrap();
        let r = jrees(&g);
        let res = drinfeld_prime(&r, default_n_max(&r), DEFAULT_WINDOW_CAP).unwrap();
        assert!(res.stabilized);
        assert!(res.rees.module.same_layers(&LaurentModule::polynomial(r.base().clone())));
    }

    #[test]
    fn prime_on_cyclic_four_is_larger() {
        let r = jrees(&FiniteGroup::cyclic(4));
        let res = drinfeld_prime(&r, default_n_max(&r), DEFAULT_WINDOW_CAP).unwrap();
        assert!(res.stabilized);
        assert_eq!(res.rees.dims(), vec![(-2, 0), (-1, 2), (0, 4)]);
    }

    #[test]
    fn vee_of_enveloping_is_polynomial() {
        let u = build_restricted_enveloping(&RestrictedLieInput::affine(3)).unwrap();
        let h = u.algebra;
        let d = rees_of_filtration(&h, &dee_filtration(&h).unwrap()).unwrap();
        let v = drinfeld_vee(&d, DEFAULT_WINDOW_CAP).unwrap();
        assert!(v.module.same_layers(&LaurentModule::polynomial(h.clone())));
        let lim = semiclassical_limit(&v).unwrap();
        assert_eq!(lim.graded().dim(), 9);
    }
}
