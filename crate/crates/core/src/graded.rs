//! Associated graded bialgebras of layered filtrations, with the induced
//! Poisson bracket or co-Poisson cobracket, restricted Lie data, and
//! truncated polynomial presentations.

use crate::error::{Error, Result};
use crate::exactlin::{quotient_data, rref, Accumulator, LinearMap, SparseVector, Subspace};
use crate::filtration::{check_bialgebra_filtration, Direction, Filtration};
use crate::hopf::{flip, kron, HopfAlgebraData, TensorElement};
use serde::Serialize;

/// Filtration weight with the two stable ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Weight {
    NegInf,
    Fin(i64),
    PosInf,
}

impl Weight {
    pub fn plus(self, o: Weight) -> Weight {
        match (self, o) {
            (Weight::PosInf, _) | (_, Weight::PosInf) => Weight::PosInf,
            (Weight::NegInf, _) | (_, Weight::NegInf) => Weight::NegInf,
            (Weight::Fin(a), Weight::Fin(b)) => Weight::Fin(a + b),
        }
    }
}

/// Increasing family z ↦ V_z, constant below and above the window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layers {
    pub zmin: i64,
    pub layers: Vec<Subspace>,
    pub low: Subspace,
    pub high: Subspace,
}

impl Layers {
    pub fn new(zmin: i64, layers: Vec<Subspace>, low: Subspace, high: Subspace) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::InvalidInput("empty layer window".into()));
        }
        let l = Layers {
            zmin,
            layers,
            low,
            high,
        };
        let ok = l.low.is_subspace_of(&l.layers[0])
            && l.layers.windows(2).all(|w| w[0].is_subspace_of(&w[1]))
            && l.layers.last().unwrap().is_subspace_of(&l.high);
        if !ok {
            return Err(Error::Containment("layers are not increasing".into()));
        }
        Ok(l)
    }

    pub fn zmax(&self) -> i64 {
        self.zmin + self.layers.len() as i64 - 1
    }

    pub fn layer(&self, z: i64) -> &Subspace {
        if z < self.zmin {
            &self.low
        } else if z > self.zmax() {
            &self.high
        } else {
            &self.layers[(z - self.zmin) as usize]
        }
    }

    pub fn ambient(&self) -> usize {
        self.high.ambient()
    }

    /// Layers of a filtration: Jⁿ at z = −n, or D_n at z = n with 0 below.
    pub fn from_filtration(f: &Filtration) -> Self {
        let amb = f.term(0).ambient();
        match f.direction {
            Direction::Decreasing => {
                let n = f.stable_index() as i64;
                let layers = (0..=n).rev().map(|k| f.term(k as usize).clone()).collect();
                Layers::new(-n, layers, f.stable().clone(), f.term(0).clone()).unwrap()
            }
            Direction::Increasing => {
                let mut layers = vec![Subspace::zero(amb)];
                layers.extend(f.chain().iter().cloned());
                Layers::new(-1, layers, Subspace::zero(amb), f.stable().clone()).unwrap()
            }
        }
    }
}

/// Basis of k^d adapted to a layered family, with its inverse.
#[derive(Clone, Debug)]
pub struct AdaptedBasis {
    pub vectors: Vec<SparseVector>,
    pub weights: Vec<Weight>,
    inverse: LinearMap,
}

impl AdaptedBasis {
    pub fn new(layers: &Layers) -> Result<Self> {
        let d = layers.ambient();
        let field = match layers.high.basis().first().or(layers.low.basis().first()) {
            Some(v) => v.leading().unwrap().1.field(),
            None => {
                return Err(Error::InvalidInput("layers are all zero".into()));
            }
        };
        let mut vectors = Vec::with_capacity(d);
        let mut weights = Vec::with_capacity(d);
        for v in layers.low.basis() {
            vectors.push(v.clone());
            weights.push(Weight::NegInf);
        }
        let mut prev = &layers.low;
        for (k, vz) in layers.layers.iter().enumerate() {
            let q = quotient_data(vz, prev)?;
            for s in q.section() {
                vectors.push(s.clone());
                weights.push(Weight::Fin(layers.zmin + k as i64));
            }
            prev = vz;
        }
        let q = quotient_data(&layers.high, prev)?;
        for s in q.section() {
            vectors.push(s.clone());
            weights.push(Weight::Fin(layers.zmax() + 1));
        }
        let q = quotient_data(&Subspace::full(&field, d), &layers.high)?;
        for s in q.section() {
            vectors.push(s.clone());
            weights.push(Weight::PosInf);
        }
        if weights.iter().any(|w| *w == Weight::Fin(layers.zmax() + 1)) {
            return Err(Error::InvalidInput("top layer differs from the stable space".into()));
        }
        let inverse = LinearMap::new(field, d, d, vectors.clone())?
            .inverse()
            .ok_or_else(|| Error::InternalConsistency("adapted basis is singular".into()))?;
        Ok(AdaptedBasis {
            vectors,
            weights,
            inverse,
        })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn coords(&self, v: &SparseVector) -> SparseVector {
        self.inverse.apply(v)
    }

    pub fn coords2(&self, t: &SparseVector) -> SparseVector {
        let d = self.dim();
        let mut acc = Accumulator::new(d * d);
        for (idx, c) in t.entries() {
            acc.add_vector(
                c,
                &kron(self.inverse.column(idx / d), self.inverse.column(idx % d)),
            );
        }
        acc.into_vector()
    }

    /// Smallest z with v ∈ V_z.
    pub fn weight_of(&self, v: &SparseVector) -> Option<Weight> {
        self.coords(v)
            .entries()
            .iter()
            .map(|(i, _)| self.weights[*i])
            .max()
    }

    pub fn pair_weight(&self, idx: usize) -> Weight {
        let d = self.dim();
        self.weights[idx / d].plus(self.weights[idx % d])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    FromJ,
    FromD,
    DrinfeldPrime,
    DrinfeldVee,
}

impl Provenance {
    fn commutative_side(self) -> bool {
        matches!(self, Provenance::FromD | Provenance::DrinfeldPrime)
    }

    /// Display degree n for weight z.
    pub fn degree_of(self, z: i64) -> i64 {
        match self {
            Provenance::FromJ | Provenance::DrinfeldPrime => -z,
            Provenance::FromD | Provenance::DrinfeldVee => z,
        }
    }
}

/// Associated graded bialgebra ⊕ V_z/V_{z−1} on chosen section vectors.
#[derive(Clone, Debug)]
pub struct GradedBialgebraData {
    pub provenance: Provenance,
    pub parent: HopfAlgebraData,
    pub adapted: AdaptedBasis,
    /// adapted index of each graded basis vector
    pub slots: Vec<usize>,
    /// weight z of each graded basis vector
    pub weights: Vec<i64>,
    pub total: HopfAlgebraData,
}

fn filtration_error(axiom: &str, witness: Vec<usize>) -> Error {
    Error::AxiomViolation {
        axiom: axiom.into(),
        witness,
    }
}

impl GradedBialgebraData {
    pub fn from_layers(h: &HopfAlgebraData, layers: &Layers, provenance: Provenance) -> Result<Self> {
        let ab = AdaptedBasis::new(layers)?;
        let d = h.dim();
        let field = h.field();
        let mut slots: Vec<usize> = (0..d)
            .filter(|&i| matches!(ab.weights[i], Weight::Fin(_)))
            .collect();
        let wt = |i: usize| match ab.weights[i] {
            Weight::Fin(z) => z,
            _ => unreachable!(),
        };
        slots.sort_by_key(|&i| (provenance.degree_of(wt(i)), i));
        let r = slots.len();
        let mut gidx = vec![usize::MAX; d];
        for (a, &i) in slots.iter().enumerate() {
            gidx[i] = a;
        }
        let weights: Vec<i64> = slots.iter().map(|&i| wt(i)).collect();
        let sec = |a: usize| &ab.vectors[slots[a]];

        let part = |c: &SparseVector, target: i64, axiom: &str, w: Vec<usize>| -> Result<SparseVector> {
            let mut out = Vec::new();
            for (i, x) in c.entries() {
                match ab.weights[*i] {
                    Weight::Fin(z) if z == target => out.push((gidx[*i], x.clone())),
                    Weight::Fin(z) if z > target => return Err(filtration_error(axiom, w)),
                    Weight::PosInf => return Err(filtration_error(axiom, w)),
                    _ => {}
                }
            }
            Ok(SparseVector::from_entries(r, out))
        };
        let part2 = |c: &SparseVector, target: i64, axiom: &str, w: Vec<usize>| -> Result<SparseVector> {
            let mut out = Vec::new();
            for (idx, x) in c.entries() {
                let pw = ab.pair_weight(*idx);
                if pw == Weight::Fin(target) {
                    out.push((gidx[idx / d] * r + gidx[idx % d], x.clone()));
                } else if pw > Weight::Fin(target) {
                    return Err(filtration_error(axiom, w));
                }
            }
            Ok(SparseVector::from_entries(r * r, out))
        };

        let mut mult = Vec::with_capacity(r * r);
        for a in 0..r {
            for b in 0..r {
                let c = ab.coords(&h.mul(sec(a), sec(b)));
                mult.push(part(&c, weights[a] + weights[b], "filtration multiplicative", vec![a, b])?);
            }
        }
        let unit = part(&ab.coords(h.one()), 0, "unit in degree 0", vec![])?;
        let mut comult = Vec::with_capacity(r);
        for a in 0..r {
            let c = ab.coords2(&h.comul(sec(a)));
            comult.push(part2(&c, weights[a], "filtration comultiplicative", vec![a])?);
        }
        let counit = (0..r)
            .map(|a| {
                if weights[a] == 0 {
                    h.counit_of(sec(a))
                } else {
                    field.zero()
                }
            })
            .collect();
        let antipode = if h.flags.has_antipode {
            let mut cols = Vec::with_capacity(r);
            for a in 0..r {
                let s = h.antipode_of(sec(a)).unwrap();
                cols.push(part(&ab.coords(&s), weights[a], "antipode preserves filtration", vec![a])?);
            }
            Some(LinearMap::new(field, r, r, cols)?)
        } else {
            None
        };
        let labels = (0..r)
            .map(|a| match sec(a).entries() {
                [(i, c)] if c.is_one() => h.labels()[*i].clone(),
                _ => format!("[{}]", h.format_vector(sec(a))),
            })
            .collect();
        let total = HopfAlgebraData::validated(field, labels, mult, unit, comult, counit, antipode)?;
        Ok(GradedBialgebraData {
            provenance,
            parent: h.clone(),
            adapted: ab,
            slots,
            weights,
            total,
        })
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn degree(&self, a: usize) -> i64 {
        self.provenance.degree_of(self.weights[a])
    }

    pub fn section(&self, a: usize) -> &SparseVector {
        &self.adapted.vectors[self.slots[a]]
    }

    /// (display degree, dimension) for each nonzero component, ascending.
    pub fn components(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for a in 0..self.dim() {
            let n = self.degree(a);
            match out.last_mut() {
                Some((m, c)) if *m == n => *c += 1,
                _ => out.push((n, 1)),
            }
        }
        out
    }

    /// Component dimensions for degrees 0..=max, zeros included.
    pub fn degree_profile(&self) -> Vec<usize> {
        let comps = self.components();
        let top = comps.iter().map(|c| c.0).max().unwrap_or(0).max(0);
        (0..=top)
            .map(|n| comps.iter().find(|c| c.0 == n).map(|c| c.1).unwrap_or(0))
            .collect()
    }

    pub fn indices_of_degree(&self, n: i64) -> Vec<usize> {
        (0..self.dim()).filter(|&a| self.degree(a) == n).collect()
    }

    /// Graded class of a parent element in the given weight.
    pub fn class_of(&self, v: &SparseVector, z: i64) -> SparseVector {
        let c = self.adapted.coords(v);
        SparseVector::from_entries(
            self.dim(),
            self.slots
                .iter()
                .enumerate()
                .filter(|(a, _)| self.weights[*a] == z)
                .filter_map(|(a, &i)| c.get(i).map(|x| (a, x.clone()))),
        )
    }

    /// Structure-constant equality with another graded object, ignoring labels.
    pub fn same_structure(&self, other: &GradedBialgebraData) -> bool {
        self.weights == other.weights
            && (0..self.dim()).all(|a| self.section(a) == other.section(a))
            && self.total.same_structure(&other.total)
    }
}

pub fn graded_from_filtration(h: &HopfAlgebraData, f: &Filtration) -> Result<GradedBialgebraData> {
    check_bialgebra_filtration(h, f)?;
    let provenance = match f.direction {
        Direction::Decreasing => Provenance::FromJ,
        Direction::Increasing => Provenance::FromD,
    };
    GradedBialgebraData::from_layers(h, &Layers::from_filtration(f), provenance)
}

/// Bilinear operation table on the graded basis.
fn bilinear(table: &[SparseVector], r: usize, x: &SparseVector, y: &SparseVector, out_dim: usize) -> SparseVector {
    let mut acc = Accumulator::new(out_dim);
    for (a, p) in x.entries() {
        for (b, q) in y.entries() {
            acc.add_vector(&(p * q), &table[a * r + b]);
        }
    }
    acc.into_vector()
}

#[derive(Clone, Debug)]
pub struct PoissonStructure {
    pub dim: usize,
    /// {e_a, e_b} at a*r+b
    pub bracket: Vec<SparseVector>,
}

impl PoissonStructure {
    pub fn apply(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        bilinear(&self.bracket, self.dim, x, y, self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.bracket.iter().all(|v| v.is_zero())
    }
}

pub fn poisson_on_graded(g: &GradedBialgebraData) -> Result<PoissonStructure> {
    if !g.provenance.commutative_side() {
        return Err(Error::InvalidInput("Poisson bracket needs a commutative-side graded object".into()));
    }
    if let Some((a, b)) = g.total.is_commutative() {
        return Err(Error::theorem(
            "graded of a D-type filtration is commutative",
            format!("basis pair ({a},{b})"),
        ));
    }
    let r = g.dim();
    let h = &g.parent;
    let mut bracket = Vec::with_capacity(r * r);
    for a in 0..r {
        for b in 0..r {
            let c = g.adapted.coords(&h.commutator(g.section(a), g.section(b)));
            let target = g.weights[a] + g.weights[b] - 1;
            let mut out = Vec::new();
            for (i, x) in c.entries() {
                match g.adapted.weights[*i] {
                    Weight::Fin(z) if z == target => {
                        let k = g.slots.iter().position(|&s| s == *i).unwrap();
                        out.push((k, x.clone()));
                    }
                    Weight::Fin(z) if z > target => {
                        return Err(filtration_error("commutator drops one filtration step", vec![a, b]))
                    }
                    Weight::PosInf => {
                        return Err(filtration_error("commutator drops one filtration step", vec![a, b]))
                    }
                    _ => {}
                }
            }
            bracket.push(SparseVector::from_entries(r, out));
        }
    }
    let p = PoissonStructure { dim: r, bracket };
    check_poisson(&g.total, &p)?;
    Ok(p)
}

/// Antisymmetry, Jacobi and Leibniz on all basis triples.
pub fn check_poisson(total: &HopfAlgebraData, p: &PoissonStructure) -> Result<()> {
    let r = p.dim;
    let e = |i| total.basis_vector(i);
    let fail = |axiom: &str, w: Vec<usize>| Err(Error::theorem(axiom, format!("witness {w:?}")));
    for a in 0..r {
        for b in 0..r {
            if !p.bracket[a * r + b].add(&p.bracket[b * r + a]).is_zero() {
                return fail("Poisson antisymmetry", vec![a, b]);
            }
            for c in 0..r {
                let (x, y, z) = (e(a), e(b), e(c));
                let jac = p
                    .apply(&x, &p.apply(&y, &z))
                    .add(&p.apply(&y, &p.apply(&z, &x)))
                    .add(&p.apply(&z, &p.apply(&x, &y)));
                if !jac.is_zero() {
                    return fail("Poisson Jacobi", vec![a, b, c]);
                }
                let lhs = p.apply(&total.mul(&x, &y), &z);
                let rhs = total
                    .mul(&p.apply(&x, &z), &y)
                    .add(&total.mul(&x, &p.apply(&y, &z)));
                if lhs != rhs {
                    return fail("Poisson Leibniz", vec![a, b, c]);
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct CoPoissonStructure {
    pub dim: usize,
    /// δ(e_a) in k^{r*r}
    pub cobracket: Vec<SparseVector>,
}

impl CoPoissonStructure {
    pub fn apply(&self, x: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new(self.dim * self.dim);
        for (a, c) in x.entries() {
            acc.add_vector(c, &self.cobracket[*a]);
        }
        acc.into_vector()
    }

    pub fn is_zero(&self) -> bool {
        self.cobracket.iter().all(|v| v.is_zero())
    }
}

pub fn copoisson_on_graded(g: &GradedBialgebraData) -> Result<CoPoissonStructure> {
    if g.provenance.commutative_side() {
        return Err(Error::InvalidInput("cobracket needs a cocommutative-side graded object".into()));
    }
    if let Some(a) = g.total.is_cocommutative() {
        return Err(Error::theorem(
            "graded of a J-type filtration is cocommutative",
            format!("basis element {a}"),
        ));
    }
    let r = g.dim();
    let d = g.parent.dim();
    let h = &g.parent;
    let mut gidx = vec![usize::MAX; d];
    for (a, &i) in g.slots.iter().enumerate() {
        gidx[i] = a;
    }
    let mut cobracket = Vec::with_capacity(r);
    for a in 0..r {
        let s = g.section(a);
        let nabla = h.comul(s).sub(&h.comul_op(s));
        let c = g.adapted.coords2(&nabla);
        let target = g.weights[a] - 1;
        let mut out = Vec::new();
        for (idx, x) in c.entries() {
            let pw = g.adapted.pair_weight(*idx);
            if pw == Weight::Fin(target) {
                out.push((gidx[idx / d] * r + gidx[idx % d], x.clone()));
            } else if pw > Weight::Fin(target) {
                return Err(filtration_error("cocommutator drops one filtration step", vec![a]));
            }
        }
        cobracket.push(SparseVector::from_entries(r * r, out));
    }
    let cp = CoPoissonStructure { dim: r, cobracket };
    check_copoisson(&g.total, &cp)?;
    Ok(cp)
}

/// (i,j,k) ↦ (k,i,j) on H^{⊗3} coordinates.
fn cycle3(t: &SparseVector, r: usize) -> SparseVector {
    t.map_indices(r * r * r, |idx| {
        let (i, j, k) = (idx / (r * r), (idx / r) % r, idx % r);
        (k * r + i) * r + j
    })
}

/// Coantisymmetry, co-Jacobi and co-Leibniz on the basis.
pub fn check_copoisson(total: &HopfAlgebraData, cp: &CoPoissonStructure) -> Result<()> {
    let r = cp.dim;
    let fail = |axiom: &str, w: Vec<usize>| Err(Error::theorem(axiom, format!("witness {w:?}")));
    for a in 0..r {
        let da = &cp.cobracket[a];
        if !flip(da, r).add(da).is_zero() {
            return fail("co-antisymmetry", vec![a]);
        }
        let t = TensorElement::new(r, 2, da.clone())?;
        let dd = t.apply_slot(0, 2, |i| cp.cobracket[i].clone())?.coeffs;
        let s = dd.add(&cycle3(&dd, r)).add(&cycle3(&cycle3(&dd, r), r));
        if !s.is_zero() {
            return fail("co-Jacobi", vec![a]);
        }
    }
    for a in 0..r {
        for b in 0..r {
            let ab = total.mul(&total.basis_vector(a), &total.basis_vector(b));
            let lhs = cp.apply(&ab);
            let ta = TensorElement::new(r, 2, cp.cobracket[a].clone())?;
            let tb = TensorElement::new(r, 2, cp.cobracket[b].clone())?;
            let da = TensorElement::new(r, 2, total.comult_basis(a).clone())?;
            let db = TensorElement::new(r, 2, total.comult_basis(b).clone())?;
            let rhs = total
                .multiply_tensor(&ta, &db)?
                .coeffs
                .add(&total.multiply_tensor(&da, &tb)?.coeffs);
            if lhs != rhs {
                return fail("co-Leibniz", vec![a, b]);
            }
        }
    }
    Ok(())
}

/// Restricted Lie bialgebra of primitives, in coordinates of the graded total.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictedLieBialgebra {
    pub labels: Vec<String>,
    pub degrees: Vec<i64>,
    #[serde(skip)]
    pub basis: Subspace,
    /// [x_a, x_b] in Lie coordinates at a*n+b
    pub bracket: Vec<SparseVector>,
    pub pmap: Option<Vec<SparseVector>>,
    /// δ(x_a) in Lie coordinates, dimension n*n
    pub cobracket: Vec<SparseVector>,
    pub generation_certified: bool,
}

impl RestrictedLieBialgebra {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn bracket_of(&self, a: usize, b: usize) -> &SparseVector {
        &self.bracket[a * self.dim() + b]
    }

    /// Index of the basis element whose graded vector is `v`.
    pub fn position(&self, v: &SparseVector) -> Option<usize> {
        self.basis.basis().iter().position(|b| b == v)
    }

    pub fn vector(&self, a: usize) -> &SparseVector {
        &self.basis.basis()[a]
    }

    pub fn is_abelian(&self) -> bool {
        self.bracket.iter().all(|v| v.is_zero())
    }
}

/// Primitives of the graded total, degree by degree.
pub fn graded_primitives(g: &GradedBialgebraData) -> Result<(Subspace, Vec<i64>)> {
    let t = &g.total;
    let r = t.dim();
    let field = t.field();
    let mut rows = Vec::new();
    let mut degrees = Vec::new();
    let comps = g.components();
    for (n, _) in comps {
        let idx = g.indices_of_degree(n);
        let map = LinearMap::from_fn(field, idx.len(), r * r, |k| {
            let x = t.basis_vector(idx[k]);
            t.comul(&x).sub(&kron(&x, t.one())).sub(&kron(t.one(), &x))
        });
        for v in map.kernel().basis() {
            rows.push(v.map_indices(r, |k| idx[k]));
            degrees.push(n);
        }
    }
    let s = rref(r, &rows)?;
    let mut deg_sorted = Vec::new();
    for row in s.basis() {
        let (lead, _) = row.leading().unwrap();
        deg_sorted.push(g.degree(lead));
    }
    Ok((s, deg_sorted))
}

pub fn extract_lie(g: &GradedBialgebraData) -> Result<RestrictedLieBialgebra> {
    let cop = copoisson_on_graded(g)?;
    let t = &g.total;
    let r = t.dim();
    let field = t.field();
    let (prim, degrees) = graded_primitives(g)?;
    let n = prim.dim();
    let basis = prim.basis().to_vec();
    let in_lie = |v: &SparseVector, what: &str| -> Result<SparseVector> {
        if !prim.contains(v) {
            return Err(Error::theorem(
                "primitives form a restricted Lie algebra",
                format!("{what} leaves the primitives"),
            ));
        }
        Ok(prim.coords(v))
    };
    let mut bracket = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            bracket.push(in_lie(&t.commutator(&basis[a], &basis[b]), "bracket")?);
        }
    }
    let p = field.characteristic();
    let pmap = if p > 0 {
        let mut out = Vec::with_capacity(n);
        for x in &basis {
            out.push(in_lie(&t.power(x, p), "p-th power")?);
        }
        Some(out)
    } else {
        None
    };
    let piv = prim.pivots();
    let mut cobracket = Vec::with_capacity(n);
    for x in &basis {
        let dx = cop.apply(x);
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = dx.get(piv[a] * r + piv[b]) {
                    entries.push((a * n + b, c.clone()));
                }
            }
        }
        let coords = SparseVector::from_entries(n * n, entries);
        let mut back = Accumulator::new(r * r);
        for (idx, c) in coords.entries() {
            back.add_vector(c, &kron(&basis[idx / n], &basis[idx % n]));
        }
        if back.into_vector() != dx {
            return Err(Error::theorem(
                "cobracket restricts to the primitives",
                "cobracket leaves g⊗g".to_string(),
            ));
        }
        cobracket.push(coords);
    }
    let mut span = rref(r, &[t.one().clone()])?;
    loop {
        let mut rows = span.basis().to_vec();
        for s in span.basis() {
            for x in &basis {
                rows.push(t.mul(s, x));
            }
        }
        let next = rref(r, &rows)?;
        if next == span {
            break;
        }
        span = next;
    }
    if !span.is_full() {
        return Err(Error::theorem(
            "graded object generated by primitives",
            format!("primitives generate {} of {}", span.dim(), r),
        ));
    }
    let labels = basis.iter().map(|v| t.format_vector(v)).collect();
    let lie = RestrictedLieBialgebra {
        labels,
        degrees,
        basis: prim,
        bracket,
        pmap,
        cobracket,
        generation_certified: true,
    };
    check_lie_bialgebra(t, &lie)?;
    Ok(lie)
}

/// Antisymmetry, Jacobi, ad(x^[p]) = ad(x)^p, p-semilinearity and the cocycle condition.
pub fn check_lie_bialgebra(t: &HopfAlgebraData, lie: &RestrictedLieBialgebra) -> Result<()> {
    let n = lie.dim();
    let field = t.field();
    let br = |x: &SparseVector, y: &SparseVector| bilinear(&lie.bracket, n, x, y, n);
    let e = |i| SparseVector::unit(n, i, field.one());
    let fail = |axiom: &str, w: Vec<usize>| Err(Error::theorem(axiom, format!("witness {w:?}")));
    for a in 0..n {
        for b in 0..n {
            if !lie.bracket_of(a, b).add(lie.bracket_of(b, a)).is_zero() {
                return fail("Lie antisymmetry", vec![a, b]);
            }
            for c in 0..n {
                let j = br(&e(a), &br(&e(b), &e(c)))
                    .add(&br(&e(b), &br(&e(c), &e(a))))
                    .add(&br(&e(c), &br(&e(a), &e(b))));
                if !j.is_zero() {
                    return fail("Lie Jacobi", vec![a, b, c]);
                }
            }
        }
    }
    if let Some(pm) = &lie.pmap {
        let p = field.characteristic();
        for a in 0..n {
            for b in 0..n {
                let mut v = e(b);
                for _ in 0..p {
                    v = br(&e(a), &v);
                }
                if v != br(&pm[a], &e(b)) {
                    return fail("ad(x^[p]) = ad(x)^p", vec![a, b]);
                }
            }
            let lambda = field.from_i64(2);
            if !lambda.is_zero() {
                let x = lie.vector(a).scale(&lambda);
                let lhs = lie.basis.coords(&t.power(&x, p));
                if lhs != pm[a].scale(&lambda.pow(p)) {
                    return fail("p-semilinearity", vec![a]);
                }
            }
        }
    }
    // δ([x,y]) = x·δ(y) − y·δ(x), with x·(u⊗v) = [x,u]⊗v + u⊗[x,v]
    let act = |x: &SparseVector, t2: &SparseVector| {
        let mut acc = Accumulator::new(n * n);
        for (idx, c) in t2.entries() {
            let (u, v) = (e(idx / n), e(idx % n));
            acc.add_vector(c, &kron(&br(x, &u), &v));
            acc.add_vector(c, &kron(&u, &br(x, &v)));
        }
        acc.into_vector()
    };
    let cob = |x: &SparseVector| {
        let mut acc = Accumulator::new(n * n);
        for (a, c) in x.entries() {
            acc.add_vector(c, &lie.cobracket[*a]);
        }
        acc.into_vector()
    };
    for a in 0..n {
        for b in 0..n {
            let lhs = cob(&br(&e(a), &e(b)));
            let rhs = act(&e(a), &lie.cobracket[b]).sub(&act(&e(b), &lie.cobracket[a]));
            if lhs != rhs {
                return fail("cobracket is a 1-cocycle", vec![a, b]);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub generator_labels: Vec<String>,
    pub generator_degrees: Vec<i64>,
    #[serde(skip)]
    pub generators: Vec<SparseVector>,
    pub dim: usize,
    pub expected_dim: usize,
    pub nilpotency_checked: bool,
}

/// Span of ordered monomials g_1^{e_1}…g_k^{e_k} with e_i < bound_i.
pub fn monomial_span(t: &HopfAlgebraData, gens: &[SparseVector], bounds: &[u64]) -> Result<(Subspace, usize)> {
    let mut monos = vec![t.one().clone()];
    for (g, &b) in gens.iter().zip(bounds) {
        let mut next = Vec::with_capacity(monos.len() * b as usize);
        for m in &monos {
            let mut x = m.clone();
            for _ in 0..b {
                next.push(x.clone());
                x = t.mul(&x, g);
            }
        }
        monos = next;
    }
    Ok((rref(t.dim(), &monos)?, monos.len()))
}

/// Truncated polynomial presentation of a commutative connected graded algebra.
pub fn truncated_presentation(g: &GradedBialgebraData) -> Result<PresentationReport> {
    let t = &g.total;
    let r = t.dim();
    let field = t.field();
    if let Some((a, b)) = t.is_commutative() {
        return Err(Error::theorem(
            "graded object is commutative",
            format!("basis pair ({a},{b})"),
        ));
    }
    let positive: Vec<usize> = (0..r).filter(|&a| g.degree(a) != 0).collect();
    let mut prods = Vec::new();
    for &a in &positive {
        for &b in &positive {
            prods.push(t.mul(&t.basis_vector(a), &t.basis_vector(b)));
        }
    }
    let decomposables = rref(r, &prods)?;
    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    for (n, _) in g.components() {
        if n == 0 {
            continue;
        }
        let block: Vec<SparseVector> = g.indices_of_degree(n).iter().map(|&a| t.basis_vector(a)).collect();
        let block = rref(r, &block)?;
        let dec = block.intersect(&decomposables)?;
        for s in quotient_data(&block, &dec)?.section() {
            generators.push(s.clone());
            degrees.push(n);
        }
    }
    let p = field.characteristic();
    let mut nilpotency_checked = false;
    if p > 0 {
        for &a in &positive {
            if !t.power(&t.basis_vector(a), p).is_zero() {
                return Err(Error::theorem(
                    "positive-degree elements satisfy x^p = 0",
                    format!("basis element {a}"),
                ));
            }
        }
        nilpotency_checked = true;
    }
    let expected_dim = if p > 0 {
        (p as usize).pow(generators.len() as u32)
    } else if generators.is_empty() {
        1
    } else {
        usize::MAX
    };
    if expected_dim != r {
        return Err(Error::theorem(
            "truncated polynomial presentation",
            format!("{} generators predict dimension {expected_dim}, found {r}", generators.len()),
        ));
    }
    if p > 0 {
        let (span, _) = monomial_span(t, &generators, &vec![p; generators.len()])?;
        if !span.is_full() {
            return Err(Error::theorem(
                "truncated polynomial presentation",
                "restricted monomials do not span".to_string(),
            ));
        }
    }
    Ok(PresentationReport {
        generator_labels: generators.iter().map(|v| t.format_vector(v)).collect(),
        generator_degrees: degrees,
        generators,
        dim: r,
        expected_dim,
        nilpotency_checked,
    })
}

/// Whether the algebra is k[x_1..x_k]/(x_i^{e_i}) on the given generators.
pub fn is_truncated_on(t: &HopfAlgebraData, gens: &[SparseVector], exps: &[u64]) -> Result<bool> {
    if t.is_commutative().is_some() {
        return Ok(false);
    }
    for (g, &e) in gens.iter().zip(exps) {
        if !t.power(g, e).is_zero() || (e > 0 && t.power(g, e - 1).is_zero()) {
            return Ok(false);
        }
    }
    let (span, count) = monomial_span(t, gens, exps)?;
    Ok(span.is_full() && count == t.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::filtration::{dee_filtration, jadic_filtration};
    use crate::groups::{build_function_algebra, build_group_algebra, FiniteGroup};

    #[test]
    fn weights_add() {
        assert_eq!(Weight::Fin(2).plus(Weight::Fin(-3)), Weight::Fin(-1));
        assert_eq!(Weight::NegInf.plus(Weight::PosInf), Weight::PosInf);
        assert_eq!(Weight::NegInf.plus(Weight::Fin(4)), Weight::NegInf);
    }

    #[test]
    fn product_of_cyclics_hat() {
        let g = FiniteGroup::zp_powers(2, &[1, 2]).unwrap();
        let h = build_group_algebra(&g, FieldSpec::gf(2));
        let gr = graded_from_filtration(&h, &jadic_filtration(&h).unwrap()).unwrap();
        assert_eq!(gr.degree_profile(), vec![1, 2, 2, 2, 1]);
        let lie = extract_lie(&gr).unwrap();
        assert_eq!(lie.dim(), 3);
        assert!(lie.is_abelian());
    }

    #[test]
    fn semidirect_tilde_presentation() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let a = build_function_algebra(&g, FieldSpec::gf(2));
        let gr = graded_from_filtration(&a, &dee_filtration(&a).unwrap()).unwrap();
        assert_eq!(gr.degree_profile(), vec![1, 2, 2, 2, 1]);
        let pres = truncated_presentation(&gr).unwrap();
        assert_eq!(pres.generator_degrees, vec![1, 1, 2]);
        poisson_on_graded(&gr).unwrap();
    }

    #[test]
    fn square_zero_graded() {
        let u = crate::groups::build_restricted_enveloping(&crate::groups::RestrictedLieInput::abelian_line(2)).unwrap();
        let h = &u.algebra;
        let gr = graded_from_filtration(h, &jadic_filtration(h).unwrap()).unwrap();
        assert_eq!(gr.degree_profile(), vec![1, 1]);
    }
}
