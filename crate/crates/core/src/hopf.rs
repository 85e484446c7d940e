//! Finite-dimensional bialgebras and Hopf algebras given by structure constants.

use crate::error::{Error, Result};
use crate::exactlin::{Accumulator, FieldSpec, LinearMap, Scalar, SparseVector, Subspace};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// Largest tensor ambient dimension we are willing to index.
pub const DEFAULT_TENSOR_BUDGET: u128 = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KindFlags {
    pub is_bialgebra: bool,
    pub has_antipode: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebraData {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    /// Product of basis elements i and j at index i*d+j.
    mult: Vec<SparseVector>,
    unit: SparseVector,
    /// Coproduct of basis element i, in k^{d*d} with e_j⊗e_k at j*d+k.
    comult: Vec<SparseVector>,
    counit: Vec<Scalar>,
    antipode: Option<LinearMap>,
    pub flags: KindFlags,
}

/// Vector in H^{⊗n}, index (i_1..i_n) ↦ Σ i_k d^{n-k}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    pub base_dim: usize,
    pub arity: usize,
    pub coeffs: SparseVector,
}

pub fn tensor_dim(d: usize, n: usize) -> Result<usize> {
    let needed = (d as u128).checked_pow(n as u32);
    match needed {
        Some(v) if v <= DEFAULT_TENSOR_BUDGET && v <= usize::MAX as u128 => Ok(v as usize),
        _ => Err(Error::Resource {
            what: format!("tensor power {d}^{n}"),
            needed: needed.unwrap_or(u128::MAX),
            budget: DEFAULT_TENSOR_BUDGET,
        }),
    }
}

impl TensorElement {
    pub fn new(base_dim: usize, arity: usize, coeffs: SparseVector) -> Result<Self> {
        let amb = tensor_dim(base_dim, arity)?;
        if coeffs.dim() != amb {
            return Err(Error::DimensionMismatch {
                expected: amb,
                found: coeffs.dim(),
            });
        }
        Ok(TensorElement {
            base_dim,
            arity,
            coeffs,
        })
    }

    pub fn zero(base_dim: usize, arity: usize) -> Result<Self> {
        Ok(TensorElement {
            base_dim,
            arity,
            coeffs: SparseVector::zero(tensor_dim(base_dim, arity)?),
        })
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        for s in (0..self.arity).rev() {
            out[s] = idx % self.base_dim;
            idx /= self.base_dim;
        }
        out
    }

    pub fn encode(&self, multi: &[usize]) -> usize {
        multi.iter().fold(0, |acc, &i| acc * self.base_dim + i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Replaces slot `slot` by the image of each basis index, a vector in H^{⊗m}.
    pub fn apply_slot(
        &self,
        slot: usize,
        m: usize,
        f: impl Fn(usize) -> SparseVector,
    ) -> Result<TensorElement> {
        assert!(slot < self.arity);
        let d = self.base_dim;
        let out_arity = self.arity - 1 + m;
        let amb = tensor_dim(d, out_arity)?;
        let lo_size = tensor_dim(d, self.arity - 1 - slot)?;
        let dm = tensor_dim(d, m)?;
        let mut cache: Vec<Option<SparseVector>> = vec![None; d];
        let mut acc = Accumulator::new(amb);
        for (idx, c) in self.coeffs.entries() {
            let lo = idx % lo_size;
            let rest = idx / lo_size;
            let i = rest % d;
            let hi = rest / d;
            if cache[i].is_none() {
                cache[i] = Some(f(i));
            }
            for (k, a) in cache[i].as_ref().unwrap().entries() {
                acc.add((hi * dm + k) * lo_size + lo, c * a);
            }
        }
        TensorElement::new(d, out_arity, acc.into_vector())
    }

    /// Inserts the fixed vector `v` as a new slot at position `pos`.
    pub fn insert_slot(&self, pos: usize, v: &SparseVector) -> Result<TensorElement> {
        assert!(pos <= self.arity);
        let d = self.base_dim;
        let amb = tensor_dim(d, self.arity + 1)?;
        let lo_size = tensor_dim(d, self.arity - pos)?;
        let mut acc = Accumulator::new(amb);
        for (idx, c) in self.coeffs.entries() {
            let lo = idx % lo_size;
            let hi = idx / lo_size;
            for (k, a) in v.entries() {
                acc.add((hi * d + k) * lo_size + lo, c * a);
            }
        }
        TensorElement::new(d, self.arity + 1, acc.into_vector())
    }
}

/// Kronecker product of coordinate vectors.
pub fn kron(u: &SparseVector, v: &SparseVector) -> SparseVector {
    let dv = v.dim();
    let mut entries = Vec::with_capacity(u.nnz() * v.nnz());
    for (i, a) in u.entries() {
        for (j, b) in v.entries() {
            entries.push((i * dv + j, a * b));
        }
    }
    SparseVector::from_entries(u.dim() * dv, entries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
    pub flags: KindFlags,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn into_result(self) -> Result<ValidationReport> {
        match self.first_failure() {
            Some(c) => Err(Error::AxiomViolation {
                axiom: c.axiom.clone(),
                witness: c.witness.clone().unwrap_or_default(),
            }),
            None => Ok(self),
        }
    }
}

fn check(axiom: &str, witness: Option<Vec<usize>>) -> AxiomCheck {
    AxiomCheck {
        axiom: axiom.to_string(),
        passed: witness.is_none(),
        witness,
    }
}

impl HopfAlgebraData {
    /// Builds from structure constants, checking shapes only.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        mult: Vec<SparseVector>,
        unit: SparseVector,
        comult: Vec<SparseVector>,
        counit: Vec<Scalar>,
        antipode: Option<LinearMap>,
    ) -> Result<Self> {
        let d = labels.len();
        let fmt = |m: &str| Err(Error::Format(m.to_string()));
        if mult.len() != d * d || mult.iter().any(|v| v.dim() != d) {
            return fmt("multiplication table has wrong shape");
        }
        if unit.dim() != d {
            return fmt("unit has wrong dimension");
        }
        if comult.len() != d || comult.iter().any(|v| v.dim() != d * d) {
            return fmt("coproduct table has wrong shape");
        }
        if counit.len() != d {
            return fmt("counit has wrong dimension");
        }
        if let Some(s) = &antipode {
            if s.domain_dim() != d || s.codomain_dim() != d {
                return fmt("antipode has wrong shape");
            }
        }
        let has_antipode = antipode.is_some();
        Ok(HopfAlgebraData {
            field,
            dim: d,
            labels,
            mult,
            unit,
            comult,
            counit,
            antipode,
            flags: KindFlags {
                is_bialgebra: true,
                has_antipode,
            },
        })
    }

    /// Builds and replaces the flags by what actually holds.
    #[allow(clippy::too_many_arguments)]
    pub fn validated(
        field: FieldSpec,
        labels: Vec<String>,
        mult: Vec<SparseVector>,
        unit: SparseVector,
        comult: Vec<SparseVector>,
        counit: Vec<Scalar>,
        antipode: Option<LinearMap>,
    ) -> Result<Self> {
        let mut h = Self::new(field, labels, mult, unit, comult, counit, antipode)?;
        h.flags = h.validate().flags;
        Ok(h)
    }

    /// The one-dimensional Hopf algebra k·1.
    pub fn trivial(field: FieldSpec) -> Self {
        let one = SparseVector::unit(1, 0, field.one());
        HopfAlgebraData::new(
            field,
            vec!["1".into()],
            vec![one.clone()],
            one.clone(),
            vec![one.clone()],
            vec![field.one()],
            Some(LinearMap::identity(field, 1)),
        )
        .unwrap()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    pub fn one(&self) -> &SparseVector {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> SparseVector {
        SparseVector::unit(self.dim, i, self.field.one())
    }

    pub fn mult_basis(&self, i: usize, j: usize) -> &SparseVector {
        &self.mult[i * self.dim + j]
    }

    pub fn comult_basis(&self, i: usize) -> &SparseVector {
        &self.comult[i]
    }

    pub fn counit_basis(&self, i: usize) -> &Scalar {
        &self.counit[i]
    }

    pub fn counit_vector(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> Option<&LinearMap> {
        self.antipode.as_ref()
    }

    pub fn mul(&self, a: &SparseVector, b: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new(self.dim);
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                acc.add_vector(&(x * y), &self.mult[i * self.dim + j]);
            }
        }
        acc.into_vector()
    }

    pub fn commutator(&self, a: &SparseVector, b: &SparseVector) -> SparseVector {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    pub fn power(&self, a: &SparseVector, e: u64) -> SparseVector {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn comul(&self, x: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new(self.dim * self.dim);
        for (i, c) in x.entries() {
            acc.add_vector(c, &self.comult[*i]);
        }
        acc.into_vector()
    }

    /// Δ^op(x), the flipped coproduct.
    pub fn comul_op(&self, x: &SparseVector) -> SparseVector {
        flip(&self.comul(x), self.dim)
    }

    pub fn counit_of(&self, x: &SparseVector) -> Scalar {
        x.dot_dense(&self.counit, &self.field)
    }

    pub fn antipode_of(&self, x: &SparseVector) -> Option<SparseVector> {
        self.antipode.as_ref().map(|s| s.apply(x))
    }

    /// x − ε(x)·1
    pub fn augment_projection(&self, x: &SparseVector) -> SparseVector {
        let e = self.counit_of(x);
        x.axpy(&-e, &self.unit)
    }

    pub fn augmentation_ideal(&self) -> Subspace {
        LinearMap::from_fn(self.field, self.dim, 1, |i| {
            SparseVector::from_entries(1, [(0, self.counit[i].clone())])
        })
        .kernel()
    }

    /// Product m: H⊗H → H applied to a tensor coordinate vector.
    pub fn mul_tensor2(&self, t: &SparseVector) -> SparseVector {
        let d = self.dim;
        let mut acc = Accumulator::new(d);
        for (idx, c) in t.entries() {
            acc.add_vector(c, &self.mult[(idx / d) * d + idx % d]);
        }
        acc.into_vector()
    }

    pub fn tensor_one(&self, n: usize) -> Result<TensorElement> {
        let mut v = SparseVector::unit(1, 0, self.field.one());
        for _ in 0..n {
            v = kron(&v, &self.unit);
        }
        TensorElement::new(self.dim, n, v)
    }

    /// Δ^n(x): Δ⁰ = ε, Δ¹ = id, Δⁿ = (Δ⊗id)∘Δⁿ⁻¹.
    pub fn iterated_coproduct(&self, x: &SparseVector, n: usize) -> Result<TensorElement> {
        if n == 0 {
            let e = self.counit_of(x);
            return TensorElement::new(self.dim, 0, SparseVector::from_entries(1, [(0, e)]));
        }
        let mut t = TensorElement::new(self.dim, 1, x.clone())?;
        for _ in 1..n {
            t = t.apply_slot(0, 2, |i| self.comult[i].clone())?;
        }
        Ok(t)
    }

    /// δ_n = (id − u∘ε)^{⊗n} ∘ Δⁿ
    pub fn delta_n(&self, x: &SparseVector, n: usize) -> Result<TensorElement> {
        let mut t = self.iterated_coproduct(x, n)?;
        for s in 0..n {
            t = t.apply_slot(s, 1, |i| self.augment_projection(&self.basis_vector(i)))?;
        }
        Ok(t)
    }

    /// δ_Φ: δ_{|Φ|} placed in the slots of Φ (1-based), units elsewhere.
    pub fn delta_phi(&self, x: &SparseVector, phi: &[usize], n: usize) -> Result<TensorElement> {
        if phi.iter().any(|&s| s == 0 || s > n) || phi.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "{phi:?} is not a sorted subset of 1..={n}"
            )));
        }
        let mut t = self.delta_n(x, phi.len())?;
        for s in 1..=n {
            if !phi.contains(&s) {
                t = t.insert_slot(s - 1, &self.unit)?;
            }
        }
        Ok(t)
    }

    /// Slot-wise product in H^{⊗n}.
    pub fn multiply_tensor(&self, a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
        if a.arity != b.arity || a.base_dim != b.base_dim || a.base_dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: a.arity,
                found: b.arity,
            });
        }
        let n = a.arity;
        let d = self.dim;
        let amb = tensor_dim(d, n)?;
        let partners: Vec<Vec<usize>> = (0..d)
            .map(|i| (0..d).filter(|&j| !self.mult_basis(i, j).is_zero()).collect())
            .collect();
        let mut acc = Accumulator::new(amb);
        let entries = b.coeffs.entries();
        for (ia, ca) in a.coeffs.entries() {
            let ma = a.decode(*ia);
            self.join_slots(&ma, &partners, entries, 0, 0, 0, ca.clone(), &mut acc)?;
        }
        TensorElement::new(d, n, acc.into_vector())
    }

    /// Walks the entries of b (sorted, so each prefix is a contiguous run) slot by slot,
    /// only visiting second factors whose product with `ma[s]` is non-zero.
    #[allow(clippy::too_many_arguments)]
    fn join_slots(
        &self,
        ma: &[usize],
        partners: &[Vec<usize>],
        run: &[(usize, Scalar)],
        s: usize,
        offset: usize,
        out: usize,
        c: Scalar,
        acc: &mut Accumulator,
    ) -> Result<()> {
        let n = ma.len();
        if s == n {
            if let Some((_, cb)) = run.first() {
                acc.add(out, &c * cb);
            }
            return Ok(());
        }
        let block = tensor_dim(self.dim, n - 1 - s)?;
        for &j in &partners[ma[s]] {
            let lo = offset + j * block;
            let start = run.partition_point(|e| e.0 < lo);
            let end = run.partition_point(|e| e.0 < lo + block);
            if start == end {
                continue;
            }
            for (k, m) in self.mult_basis(ma[s], j).entries() {
                self.join_slots(ma, partners, &run[start..end], s + 1, lo, out * self.dim + k, &c * m, acc)?;
            }
        }
        Ok(())
    }

    pub fn primitives(&self) -> Subspace {
        let d = self.dim;
        LinearMap::from_fn(self.field, d, d * d, |i| {
            let x = self.basis_vector(i);
            self.comul(&x)
                .sub(&kron(&x, &self.unit))
                .sub(&kron(&self.unit, &x))
        })
        .kernel()
    }

    pub fn is_group_like(&self, x: &SparseVector) -> bool {
        self.counit_of(x).is_one() && self.comul(x) == kron(x, x)
    }

    pub fn is_commutative(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.mult_basis(i, j) != self.mult_basis(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_cocommutative(&self) -> Option<usize> {
        (0..self.dim).find(|&i| flip(&self.comult[i], self.dim) != self.comult[i])
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R, support: usize) -> SparseVector {
        let entries: Vec<_> = (0..support.min(self.dim))
            .map(|_| (rng.gen_range(0..self.dim), self.field.random(rng)))
            .collect();
        SparseVector::from_entries(self.dim, entries)
    }

    /// Checks every axiom on all basis pairs and triples.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim;
        let mut checks = Vec::new();

        let mut w = None;
        'a: for i in 0..d {
            for j in 0..d {
                let ij = self.mult_basis(i, j);
                for k in 0..d {
                    let left = self.mul(ij, &self.basis_vector(k));
                    let right = self.mul(&self.basis_vector(i), self.mult_basis(j, k));
                    if left != right {
                        w = Some(vec![i, j, k]);
                        break 'a;
                    }
                }
            }
        }
        checks.push(check("associativity", w));

        let w = (0..d)
            .find(|&i| {
                let e = self.basis_vector(i);
                self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e
            })
            .map(|i| vec![i]);
        checks.push(check("unit", w));

        let w = (0..d)
            .find(|&i| {
                let t = TensorElement::new(d, 2, self.comult[i].clone()).unwrap();
                let l = t.apply_slot(0, 2, |j| self.comult[j].clone()).unwrap();
                let r = t.apply_slot(1, 2, |j| self.comult[j].clone()).unwrap();
                l != r
            })
            .map(|i| vec![i]);
        checks.push(check("coassociativity", w));

        let w = (0..d)
            .find(|&i| {
                let e = self.basis_vector(i);
                let t = TensorElement::new(d, 2, self.comult[i].clone()).unwrap();
                let eps = |j: usize| SparseVector::from_entries(1, [(0, self.counit[j].clone())]);
                let l = t.apply_slot(0, 0, eps).unwrap().coeffs;
                let r = t.apply_slot(1, 0, eps).unwrap().coeffs;
                l != e || r != e
            })
            .map(|i| vec![i]);
        checks.push(check("counit", w));

        let mut w = None;
        if self.comul(&self.unit) != kron(&self.unit, &self.unit) {
            w = Some(vec![]);
        }
        'b: for i in 0..d {
            let ti = TensorElement::new(d, 2, self.comult[i].clone()).unwrap();
            for j in 0..d {
                if w.is_some() {
                    break 'b;
                }
                let tj = TensorElement::new(d, 2, self.comult[j].clone()).unwrap();
                let prod = self.multiply_tensor(&ti, &tj).unwrap().coeffs;
                if self.comul(self.mult_basis(i, j)) != prod {
                    w = Some(vec![i, j]);
                }
            }
        }
        checks.push(check("coproduct multiplicative", w));

        let mut w = None;
        if !self.counit_of(&self.unit).is_one() {
            w = Some(vec![]);
        }
        'c: for i in 0..d {
            for j in 0..d {
                if w.is_some() {
                    break 'c;
                }
                if self.counit_of(self.mult_basis(i, j)) != &self.counit[i] * &self.counit[j] {
                    w = Some(vec![i, j]);
                }
            }
        }
        checks.push(check("counit multiplicative", w));

        let is_bialgebra = checks.iter().all(|c| c.passed);
        let mut has_antipode = false;
        if let Some(s) = &self.antipode {
            let w = (0..d)
                .find(|&i| {
                    let t = TensorElement::new(d, 2, self.comult[i].clone()).unwrap();
                    let l = t.apply_slot(0, 1, |j| s.column(j).clone()).unwrap();
                    let r = t.apply_slot(1, 1, |j| s.column(j).clone()).unwrap();
                    let target = self.unit.scale(&self.counit[i]);
                    self.mul_tensor2(&l.coeffs) != target || self.mul_tensor2(&r.coeffs) != target
                })
                .map(|i| vec![i]);
            has_antipode = w.is_none();
            checks.push(check("antipode", w));
        }
        ValidationReport {
            checks,
            flags: KindFlags {
                is_bialgebra,
                has_antipode,
            },
        }
    }

    /// Same structure constants, ignoring labels and flags.
    pub fn same_structure(&self, other: &HopfAlgebraData) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mult == other.mult
            && self.unit == other.unit
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
    }

    pub fn to_json(&self) -> Value {
        let d = self.dim;
        let mut mult = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.mult_basis(i, j).entries() {
                    mult.push(json!([i, j, k, c.to_string()]));
                }
            }
        }
        let mut comult = Vec::new();
        for i in 0..d {
            for (idx, c) in self.comult[i].entries() {
                comult.push(json!([i, idx / d, idx % d, c.to_string()]));
            }
        }
        let unit: Vec<_> = self
            .unit
            .entries()
            .iter()
            .map(|(k, c)| json!([k, c.to_string()]))
            .collect();
        let counit: Vec<_> = self
            .counit
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!([k, c.to_string()]))
            .collect();
        let antipode = self.antipode.as_ref().map(|s| {
            let mut out = Vec::new();
            for j in 0..d {
                for (i, c) in s.column(j).entries() {
                    out.push(json!([i, j, c.to_string()]));
                }
            }
            out
        });
        json!({
            "field": {"char": self.field.characteristic()},
            "dim": d,
            "basis": self.labels,
            "mult": mult,
            "unit": unit,
            "comult": comult,
            "counit": counit,
            "antipode": antipode,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Format(m.to_string());
        let ch = v["field"]["char"]
            .as_u64()
            .ok_or_else(|| bad("missing field.char"))?;
        let field = FieldSpec::new(ch).map_err(|e| Error::Format(e.to_string()))?;
        let d = v["dim"].as_u64().ok_or_else(|| bad("missing dim"))? as usize;
        let labels: Vec<String> = match v.get("basis") {
            Some(Value::Array(a)) => a
                .iter()
                .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("bad label")))
                .collect::<Result<_>>()?,
            _ => (0..d).map(|i| format!("e{i}")).collect(),
        };
        if labels.len() != d {
            return Err(bad("basis length differs from dim"));
        }
        let scalar = |x: &Value| -> Result<Scalar> {
            match x {
                Value::String(s) => field.parse(s),
                Value::Number(n) => field.parse(&n.to_string()),
                _ => Err(bad("bad coefficient")),
            }
        };
        let idx = |x: &Value, bound: usize| -> Result<usize> {
            let i = x.as_u64().ok_or_else(|| bad("bad index"))? as usize;
            if i >= bound {
                return Err(Error::Format(format!("index {i} out of range {bound}")));
            }
            Ok(i)
        };
        let rows = |key: &str, width: usize| -> Result<Vec<Vec<Value>>> {
            match &v[key] {
                Value::Array(a) => a
                    .iter()
                    .map(|r| match r {
                        Value::Array(r) if r.len() == width => Ok(r.clone()),
                        _ => Err(Error::Format(format!("bad entry in {key}"))),
                    })
                    .collect(),
                _ => Err(Error::Format(format!("missing {key}"))),
            }
        };
        let mut mult: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d * d];
        for r in rows("mult", 4)? {
            let (i, j, k) = (idx(&r[0], d)?, idx(&r[1], d)?, idx(&r[2], d)?);
            mult[i * d + j].push((k, scalar(&r[3])?));
        }
        let mut unit = Vec::new();
        for r in rows("unit", 2)? {
            unit.push((idx(&r[0], d)?, scalar(&r[1])?));
        }
        let mut comult: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
        for r in rows("comult", 4)? {
            let (i, j, k) = (idx(&r[0], d)?, idx(&r[1], d)?, idx(&r[2], d)?);
            comult[i].push((j * d + k, scalar(&r[3])?));
        }
        let mut counit = vec![field.zero(); d];
        for r in rows("counit", 2)? {
            let i = idx(&r[0], d)?;
            counit[i] = &counit[i] + &scalar(&r[1])?;
        }
        let antipode = match &v["antipode"] {
            Value::Null => None,
            _ => {
                let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
                for r in rows("antipode", 3)? {
                    let (i, j) = (idx(&r[0], d)?, idx(&r[1], d)?);
                    cols[j].push((i, scalar(&r[2])?));
                }
                Some(LinearMap::new(
                    field,
                    d,
                    d,
                    cols.into_iter()
                        .map(|c| SparseVector::from_entries(d, c))
                        .collect(),
                )?)
            }
        };
        HopfAlgebraData::new(
            field,
            labels,
            mult.into_iter()
                .map(|e| SparseVector::from_entries(d, e))
                .collect(),
            SparseVector::from_entries(d, unit),
            comult
                .into_iter()
                .map(|e| SparseVector::from_entries(d * d, e))
                .collect(),
            counit,
            antipode,
        )
    }

    /// Renders a vector with the basis labels.
    pub fn format_vector(&self, v: &SparseVector) -> String {
        format_with_labels(v, &self.labels)
    }
}

pub fn format_with_labels(v: &SparseVector, labels: &[String]) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.entries()
        .iter()
        .map(|(i, c)| {
            if c.is_one() {
                labels[*i].clone()
            } else {
                format!("{}*{}", c, labels[*i])
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Swaps the two factors of a vector in k^{d*d}.
pub fn flip(v: &SparseVector, d: usize) -> SparseVector {
    v.map_indices(d * d, |idx| (idx % d) * d + idx / d)
}

/// δ_m of every basis element for m ≤ `m_max`, so δ_m(x) is a linear combination.
pub struct DeltaCache {
    base_dim: usize,
    by_arity: Vec<Vec<SparseVector>>,
}

impl DeltaCache {
    pub fn new(h: &HopfAlgebraData, m_max: usize) -> Result<Self> {
        let mut by_arity = Vec::new();
        for m in 0..=m_max {
            by_arity.push(
                (0..h.dim())
                    .map(|i| h.delta_n(&h.basis_vector(i), m).map(|t| t.coeffs))
                    .collect::<Result<_>>()?,
            );
        }
        Ok(DeltaCache {
            base_dim: h.dim(),
            by_arity,
        })
    }

    pub fn delta(&self, x: &SparseVector, m: usize) -> Result<TensorElement> {
        let mut acc = Accumulator::new(tensor_dim(self.base_dim, m)?);
        for (i, c) in x.entries() {
            acc.add_vector(c, &self.by_arity[m][*i]);
        }
        TensorElement::new(self.base_dim, m, acc.into_vector())
    }
}

/// (id^{⊗s} ⊗ δ_ℓ ⊗ id^{⊗(n−1−s)}) ∘ δ_n (x) = δ_{n+ℓ−1}(x).
pub fn delta_coassociativity_holds(h: &HopfAlgebraData, x: &SparseVector, n: usize, l: usize, s: usize) -> Result<bool> {
    coassociativity_with(&DeltaCache::new(h, n + l - 1)?, x, n, l, s)
}

fn coassociativity_with(cache: &DeltaCache, x: &SparseVector, n: usize, l: usize, s: usize) -> Result<bool> {
    let lhs = cache.delta(x, n)?.apply_slot(s, l, |i| cache.by_arity[l][i].clone())?;
    Ok(lhs.coeffs == cache.delta(x, n + l - 1)?.coeffs)
}

/// δ_n(ab) = Σ_{Λ ∪ Y = {1..n}} δ_Λ(a) · δ_Y(b).
pub fn delta_product_holds(h: &HopfAlgebraData, a: &SparseVector, b: &SparseVector, n: usize) -> Result<bool> {
    product_with(h, &DeltaCache::new(h, n)?, a, b, n)
}

fn product_with(h: &HopfAlgebraData, cache: &DeltaCache, a: &SparseVector, b: &SparseVector, n: usize) -> Result<bool> {
    let full = (1usize << n) - 1;
    let phi = |x: &SparseVector, mask: usize| -> Result<TensorElement> {
        let mut t = cache.delta(x, mask.count_ones() as usize)?;
        for slot in 0..n {
            if mask & (1 << slot) == 0 {
                t = t.insert_slot(slot, h.one())?;
            }
        }
        Ok(t)
    };
    let db: Vec<SparseVector> = (0..=full).map(|m| phi(b, m).map(|t| t.coeffs)).collect::<Result<_>>()?;
    let amb = tensor_dim(h.dim(), n)?;
    let one = h.field().one();
    let mut acc = Accumulator::new(amb);
    // group the Y by Λ: Σ_Λ δ_Λ(a) · Σ_{Y ⊇ Λ^c} δ_Y(b)
    for la in 0..=full {
        let need = full & !la;
        let mut sum = Accumulator::new(amb);
        for (y, v) in db.iter().enumerate() {
            if y & need == need {
                sum.add_vector(&one, v);
            }
        }
        let sum = TensorElement::new(h.dim(), n, sum.into_vector())?;
        acc.add_vector(&one, &h.multiply_tensor(&phi(a, la)?, &sum)?.coeffs);
    }
    Ok(acc.into_vector() == cache.delta(&h.mul(a, b), n)?.coeffs)
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub seed: u64,
    pub samples: usize,
    pub coassociativity_checks: usize,
    pub product_checks: usize,
    pub failures: Vec<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Both δ-laws on seeded random elements, for n, ℓ ≤ `n_max`.
pub fn random_law_suite(h: &HopfAlgebraData, seed: u64, samples: usize, n_max: usize) -> Result<LawReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = LawReport {
        seed,
        samples,
        coassociativity_checks: 0,
        product_checks: 0,
        failures: Vec::new(),
    };
    let cache = DeltaCache::new(h, 2 * n_max - 1)?;
    for k in 0..samples {
        let x = h.random_element(&mut rng, 3);
        let y = h.random_element(&mut rng, 3);
        for n in 1..=n_max {
            for l in 1..=n_max {
                for s in 0..n {
                    report.coassociativity_checks += 1;
                    if !coassociativity_with(&cache, &x, n, l, s)? {
                        report.failures.push(format!("sample {k}: coassociativity n={n} l={l} s={s}"));
                    }
                }
            }
            report.product_checks += 1;
            if !product_with(h, &cache, &x, &y, n)? {
                report.failures.push(format!("sample {k}: product rule n={n}"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_laws_on_group_algebra() {
        let g = crate::groups::FiniteGroup::zp_semidirect_zp2(2);
        let h = crate::groups::build_group_algebra(&g, FieldSpec::gf(2));
        let r = random_law_suite(&h, 7, 3, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.product_checks, 9);
    }

    /// k[Z_2] with basis 1, g.
    fn z2(field: FieldSpec) -> HopfAlgebraData {
        let o = field.one();
        let e = |i| SparseVector::unit(2, i, o.clone());
        let ee = |i| SparseVector::unit(4, i, o.clone());
        HopfAlgebraData::new(
            field,
            vec!["1".into(), "g".into()],
            vec![e(0), e(1), e(1), e(0)],
            e(0),
            vec![ee(0), ee(3)],
            vec![o.clone(), o.clone()],
            Some(LinearMap::identity(field, 2)),
        )
        .unwrap()
    }

    #[test]
    fn group_algebra_z2_validates() {
        let h = z2(FieldSpec::gf(2));
        let r = h.validate();
        assert!(r.all_passed());
        assert!(r.flags.has_antipode);
    }

    #[test]
    fn broken_associativity_has_witness() {
        let f = FieldSpec::gf(3);
        let mut h = z2(f);
        h.mult[1] = SparseVector::zero(2);
        let r = h.validate();
        let c = r.first_failure().unwrap();
        assert_eq!(c.axiom, "associativity");
        assert!(c.witness.is_some());
    }

    #[test]
    fn delta_of_group_like() {
        let f = FieldSpec::rationals();
        let h = z2(f);
        let g = h.basis_vector(1);
        let gm1 = h.augment_projection(&g);
        let t = h.delta_n(&g, 3).unwrap();
        assert_eq!(t.coeffs, kron(&kron(&gm1, &gm1), &gm1));
        let t = h.delta_phi(&g, &[1, 3], 3).unwrap();
        assert_eq!(t.coeffs, kron(&kron(&gm1, h.one()), &gm1));
        assert!(h.delta_n(h.one(), 2).unwrap().is_zero());
        assert_eq!(h.iterated_coproduct(&g, 1).unwrap().coeffs, g);
    }

    #[test]
    fn primitives_depend_on_characteristic() {
        // (g-1)⊗(g-1) survives in every characteristic
        assert_eq!(z2(FieldSpec::gf(2)).primitives().dim(), 0);
        assert_eq!(z2(FieldSpec::rationals()).primitives().dim(), 0);
    }

    #[test]
    fn json_round_trip() {
        let h = z2(FieldSpec::gf(5));
        let back = HopfAlgebraData::from_json(&h.to_json()).unwrap();
        assert!(back.same_structure(&h));
        let mut v = h.to_json();
        v["mult"][0][2] = json!(7);
        assert!(matches!(
            HopfAlgebraData::from_json(&v),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn group_like_membership() {
        let h = z2(FieldSpec::gf(2));
        assert!(h.is_group_like(h.one()));
        assert!(h.is_group_like(&h.basis_vector(1)));
        assert!(!h.is_group_like(&h.augment_projection(&h.basis_vector(1))));
    }
}
