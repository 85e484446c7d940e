//! Bialgebra pairings, orthogonal complements, and the duality between the
//! ε-adic filtration of one side and the δ-filtration of the other.

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, LinearMap, Scalar, SparseVector, Subspace};
use crate::filtration::{dee_filtration, jadic_filtration};
use crate::graded::{GradedBialgebraData, Layers};
use crate::groups::{build_function_algebra, build_group_algebra, FiniteGroup};
use crate::hopf::{AxiomCheck, HopfAlgebraData};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingLevel {
    Augmented,
    Bialgebra,
    Hopf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// ⟨·,·⟩ : left × right → k as a dense matrix indexed [left][right].
#[derive(Clone, Debug)]
pub struct PairingData {
    pub left: HopfAlgebraData,
    pub right: HopfAlgebraData,
    pub matrix: Vec<Vec<Scalar>>,
    pub level: PairingLevel,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub level: Option<PairingLevel>,
    pub checks: Vec<AxiomCheck>,
    pub left_kernel_dim: usize,
    pub right_kernel_dim: usize,
    pub perfect_left: bool,
    pub perfect_right: bool,
}

impl PairingReport {
    pub fn perfect(&self) -> bool {
        self.perfect_left && self.perfect_right
    }
}

impl PairingData {
    pub fn new(left: HopfAlgebraData, right: HopfAlgebraData, matrix: Vec<Vec<Scalar>>) -> Result<Self> {
        if left.field() != right.field() {
            return Err(Error::InvalidInput("pairing sides over different fields".into()));
        }
        if matrix.len() != left.dim() {
            return Err(Error::DimensionMismatch {
                expected: left.dim(),
                found: matrix.len(),
            });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != right.dim()) {
            return Err(Error::DimensionMismatch {
                expected: right.dim(),
                found: row.len(),
            });
        }
        let mut p = PairingData {
            left,
            right,
            matrix,
            level: PairingLevel::Augmented,
        };
        if let Some(level) = validate_pairing(&p).level {
            p.level = level;
        }
        Ok(p)
    }

    /// Matrix from JSON rows of scalar strings.
    pub fn from_json(left: HopfAlgebraData, right: HopfAlgebraData, v: &Value) -> Result<Self> {
        let field = left.field();
        let rows = v
            .get("matrix")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Format("pairing needs a \"matrix\" array".into()))?;
        let mut matrix = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Format("matrix rows must be arrays".into()))?;
            let mut r = Vec::with_capacity(row.len());
            for c in row {
                let s = match c {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(Error::Format(format!("bad matrix entry {c}"))),
                };
                r.push(field.parse(&s)?);
            }
            matrix.push(r);
        }
        PairingData::new(left, right, matrix)
    }

    pub fn field(&self) -> FieldSpec {
        self.left.field()
    }

    /// The same pairing with the sides exchanged.
    pub fn swap(&self) -> PairingData {
        let (l, r) = (self.left.dim(), self.right.dim());
        let matrix = (0..r).map(|j| (0..l).map(|i| self.matrix[i][j].clone()).collect()).collect();
        PairingData {
            left: self.right.clone(),
            right: self.left.clone(),
            matrix,
            level: self.level,
        }
    }

    pub fn eval(&self, x: &SparseVector, y: &SparseVector) -> Scalar {
        let mut s = self.field().zero();
        for (i, a) in x.entries() {
            for (j, b) in y.entries() {
                s = s + &(&(a * b) * &self.matrix[*i][*j]);
            }
        }
        s
    }

    /// ⟨u, v⟩ on two-fold tensors, slot by slot.
    pub fn eval2(&self, u: &SparseVector, v: &SparseVector) -> Scalar {
        let (l, r) = (self.left.dim(), self.right.dim());
        let mut s = self.field().zero();
        for (i, a) in u.entries() {
            for (j, b) in v.entries() {
                let m = &self.matrix[i / l][j / r] * &self.matrix[i % l][j % r];
                if !m.is_zero() {
                    s = s + &(&(a * b) * &m);
                }
            }
        }
        s
    }

    /// x ↦ ⟨x, ·⟩ as a map from the left space to right-dual coordinates.
    fn left_map(&self) -> Result<LinearMap> {
        let field = self.field();
        let cols = self
            .matrix
            .iter()
            .map(|row| SparseVector::from_dense(row))
            .collect();
        LinearMap::new(field, self.left.dim(), self.right.dim(), cols)
    }
}

pub fn canonical_group_pairing(g: &FiniteGroup, field: FieldSpec) -> Result<PairingData> {
    let a = build_function_algebra(g, field);
    let kg = build_group_algebra(g, field);
    let n = g.order();
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    PairingData::new(a, kg, matrix)
}

pub fn validate_pairing(p: &PairingData) -> PairingReport {
    let (l, r) = (p.left.dim(), p.right.dim());
    let (lh, rh) = (&p.left, &p.right);
    let el = |i| lh.basis_vector(i);
    let er = |j| rh.basis_vector(j);
    let mut checks = Vec::new();
    let mut record = |axiom: &str, witness: Option<Vec<usize>>| {
        checks.push(AxiomCheck {
            axiom: axiom.into(),
            passed: witness.is_none(),
            witness,
        });
    };
    let first = |f: &dyn Fn(&[usize]) -> bool, shape: &[usize]| -> Option<Vec<usize>> {
        let mut idx = vec![0usize; shape.len()];
        if shape.contains(&0) {
            return None;
        }
        loop {
            if !f(&idx) {
                return Some(idx);
            }
            let mut k = shape.len();
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < shape[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
    };
    let w = first(
        &|i| p.eval(&lh.mul(&el(i[0]), &el(i[1])), &er(i[2])) == p.eval2(&kron_basis(l, i[0], i[1], p), rh.comult_basis(i[2])),
        &[l, l, r],
    );
    record("product dual to coproduct", w);
    let w = first(&|i| p.eval(lh.one(), &er(i[0])) == rh.counit_basis(i[0]).clone(), &[r]);
    record("unit pairs to counit", w);
    let w = first(&|i| p.eval(&el(i[0]), rh.one()) == lh.counit_basis(i[0]).clone(), &[l]);
    record("counit pairs to unit", w);
    let w = first(
        &|i| p.eval(&el(i[0]), &rh.mul(&er(i[1]), &er(i[2]))) == p.eval2(lh.comult_basis(i[0]), &kron_basis(r, i[1], i[2], p)),
        &[l, r, r],
    );
    record("coproduct dual to product", w);
    let hopf_ok = match (lh.flags.has_antipode, rh.flags.has_antipode) {
        (true, true) => {
            let w = first(
                &|i| p.eval(&lh.antipode_of(&el(i[0])).unwrap(), &er(i[1])) == p.eval(&el(i[0]), &rh.antipode_of(&er(i[1])).unwrap()),
                &[l, r],
            );
            let ok = w.is_none();
            record("antipodes adjoint", w);
            ok
        }
        _ => false,
    };
    let passed = |k: usize| checks[k].passed;
    let level = if !(passed(0) && passed(1) && passed(2)) {
        None
    } else if !passed(3) {
        Some(PairingLevel::Augmented)
    } else if !hopf_ok {
        Some(PairingLevel::Bialgebra)
    } else {
        Some(PairingLevel::Hopf)
    };
    let (lk, rk) = kernels(p);
    PairingReport {
        level,
        checks,
        left_kernel_dim: lk.dim(),
        right_kernel_dim: rk.dim(),
        perfect_left: lk.dim() == 0,
        perfect_right: rk.dim() == 0,
    }
}

fn kron_basis(n: usize, i: usize, j: usize, p: &PairingData) -> SparseVector {
    SparseVector::unit(n * n, i * n + j, p.field().one())
}

/// (left kernel, right kernel).
pub fn kernels(p: &PairingData) -> (Subspace, Subspace) {
    let m = p.left_map().expect("pairing matrix shape");
    (m.kernel(), m.transpose().kernel())
}

/// Annihilator on the opposite side of a subspace of the given side.
pub fn orthogonal(p: &PairingData, s: &Subspace, side: Side) -> Result<Subspace> {
    let m = p.left_map()?;
    let (map, amb) = match side {
        Side::Left => (m, p.left.dim()),
        Side::Right => (m.transpose(), p.right.dim()),
    };
    if s.ambient() != amb {
        return Err(Error::DimensionMismatch {
            expected: amb,
            found: s.ambient(),
        });
    }
    // rows ⟨s_i, ·⟩ as functionals, then their common kernel
    let rows: Vec<SparseVector> = s.basis().iter().map(|v| map.apply(v)).collect();
    let other = map.codomain_dim();
    let mut cols = vec![Vec::new(); other];
    for (i, f) in rows.iter().enumerate() {
        for (k, c) in f.entries() {
            cols[*k].push((i, c.clone()));
        }
    }
    let cols = cols.into_iter().map(|e| SparseVector::from_entries(rows.len(), e)).collect();
    Ok(LinearMap::new(p.field(), other, rows.len(), cols)?.kernel())
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthogonalityRow {
    pub n: usize,
    pub d_dim: usize,
    pub j_next_dim: usize,
    pub j_next_perp_dim: usize,
    pub d_equals_perp: bool,
    pub j_inside_d_perp: bool,
    pub j_equals_d_perp: Option<bool>,
}

/// D_n(right) = (J^{n+1}(left))^⊥ for all n up to both stabilizations.
pub fn orthogonality_identity(p: &PairingData) -> Result<Vec<OrthogonalityRow>> {
    let j = jadic_filtration(&p.left)?;
    let d = dee_filtration(&p.right)?;
    let perfect = validate_pairing(p).perfect();
    let top = j.stable_index().max(d.stable_index()) + 1;
    let mut rows = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let jn = j.term(n + 1);
        let dn = d.term(n);
        let jperp = orthogonal(p, jn, Side::Left)?;
        let dperp = orthogonal(p, dn, Side::Right)?;
        let row = OrthogonalityRow {
            n,
            d_dim: dn.dim(),
            j_next_dim: jn.dim(),
            j_next_perp_dim: jperp.dim(),
            d_equals_perp: *dn == jperp,
            j_inside_d_perp: jn.is_subspace_of(&dperp),
            j_equals_d_perp: perfect.then(|| *jn == dperp),
        };
        if !row.d_equals_perp || !row.j_inside_d_perp || row.j_equals_d_perp == Some(false) {
            return Err(Error::theorem(
                "D_n = (J^(n+1))^⊥",
                format!("fails at n = {n}"),
            ));
        }
        rows.push(row);
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeRank {
    pub degree: i64,
    pub left_dim: usize,
    pub right_dim: usize,
    pub rank: usize,
}

impl DegreeRank {
    pub fn perfect(&self) -> bool {
        self.rank == self.left_dim && self.rank == self.right_dim
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedPairingReport {
    /// Ĥ(left) against H̃(right)
    pub hat_tilde: Vec<DegreeRank>,
    /// H̃(left) against Ĥ(right), when the pairing is at bialgebra level
    pub tilde_hat: Option<Vec<DegreeRank>>,
}

impl GradedPairingReport {
    pub fn all_perfect(&self) -> bool {
        self.hat_tilde.iter().all(DegreeRank::perfect)
            && self.tilde_hat.as_ref().is_none_or(|v| v.iter().all(DegreeRank::perfect))
    }
}

fn degree_ranks(p: &PairingData, hat: &GradedBialgebraData, tilde: &GradedBialgebraData, hat_left: bool) -> Result<Vec<DegreeRank>> {
    let field = p.field();
    let top = hat.degree_profile().len().max(tilde.degree_profile().len()) as i64;
    let mut out = Vec::new();
    for n in 0..top {
        let a = hat.indices_of_degree(n);
        let b = tilde.indices_of_degree(n);
        let cols: Vec<SparseVector> = b
            .iter()
            .map(|&j| {
                SparseVector::from_entries(
                    a.len(),
                    a.iter().enumerate().map(|(k, &i)| {
                        let (x, y) = (hat.section(i), tilde.section(j));
                        let v = if hat_left { p.eval(x, y) } else { p.eval(y, x) };
                        (k, v)
                    }),
                )
            })
            .collect();
        let rank = LinearMap::new(field, b.len(), a.len(), cols)?.rank();
        if a.is_empty() && b.is_empty() {
            continue;
        }
        let (left_dim, right_dim) = if hat_left { (a.len(), b.len()) } else { (b.len(), a.len()) };
        out.push(DegreeRank {
            degree: n,
            left_dim,
            right_dim,
            rank,
        });
    }
    Ok(out)
}

/// Degree-wise ranks of the pairings induced on associated graded objects.
pub fn induced_graded_pairing(p: &PairingData) -> Result<GradedPairingReport> {
    let report = validate_pairing(p);
    if report.level.is_none() {
        return Err(Error::InvalidInput("not a pairing at augmented level".into()));
    }
    let hat_l = crate::graded::graded_from_filtration(&p.left, &jadic_filtration(&p.left)?)?;
    let tilde_r = crate::graded::graded_from_filtration(&p.right, &dee_filtration(&p.right)?)?;
    let hat_tilde = degree_ranks(p, &hat_l, &tilde_r, true)?;
    let tilde_hat = if report.level >= Some(PairingLevel::Bialgebra) {
        let tilde_l = crate::graded::graded_from_filtration(&p.left, &dee_filtration(&p.left)?)?;
        let hat_r = crate::graded::graded_from_filtration(&p.right, &jadic_filtration(&p.right)?)?;
        Some(degree_ranks(p, &hat_r, &tilde_l, false)?)
    } else {
        None
    };
    let out = GradedPairingReport { hat_tilde, tilde_hat };
    if report.perfect() && !out.all_perfect() {
        return Err(Error::theorem(
            "perfect pairing induces perfect graded pairings",
            "rank deficit in some degree".to_string(),
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReesLayerRow {
    pub z: i64,
    pub j_layer_dim: usize,
    pub d_bullet_dim: usize,
    pub equal: bool,
}

/// J-Rees(left) layer z against {x : ⟨t^z x, D-Rees(right)⟩ ⊆ k[t]} = (D_{−z−1})^⊥.
pub fn rees_pairing_identity(p: &PairingData) -> Result<Vec<ReesLayerRow>> {
    let jl = Layers::from_filtration(&jadic_filtration(&p.left)?);
    let dl = Layers::from_filtration(&dee_filtration(&p.right)?);
    let lo = jl.zmin - 1;
    let hi = (-dl.zmin).max(1);
    let mut rows = Vec::new();
    for z in lo..=hi {
        let bullet = orthogonal(p, dl.layer(-z - 1), Side::Right)?;
        let jz = jl.layer(z);
        rows.push(ReesLayerRow {
            z,
            j_layer_dim: jz.dim(),
            d_bullet_dim: bullet.dim(),
            equal: *jz == bullet,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_is_perfect_hopf() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let p = canonical_group_pairing(&g, FieldSpec::gf(2)).unwrap();
        let r = validate_pairing(&p);
        assert_eq!(r.level, Some(PairingLevel::Hopf));
        assert!(r.perfect());
    }

    #[test]
    fn zero_matrix_fails_unit() {
        let g = FiniteGroup::cyclic(2);
        let p = canonical_group_pairing(&g, FieldSpec::gf(2)).unwrap();
        let z = vec![vec![FieldSpec::gf(2).zero(); 2]; 2];
        let q = PairingData::new(p.left, p.right, z).unwrap();
        let r = validate_pairing(&q);
        assert_eq!(r.level, None);
        assert!(!r.checks[1].passed);
    }

    #[test]
    fn semidirect_orthogonality() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let p = canonical_group_pairing(&g, FieldSpec::gf(2)).unwrap().swap();
        let rows = orthogonality_identity(&p).unwrap();
        let d: Vec<usize> = rows.iter().map(|r| r.d_dim).take(5).collect();
        let j: Vec<usize> = rows.iter().map(|r| r.j_next_dim).take(5).collect();
        assert_eq!(d, vec![1, 3, 5, 7, 8]);
        assert_eq!(j, vec![7, 5, 3, 1, 0]);
        let gr = induced_graded_pairing(&p).unwrap();
        let ranks: Vec<usize> = gr.hat_tilde.iter().map(|r| r.rank).collect();
        assert_eq!(ranks, vec![1, 2, 2, 2, 1]);
        assert!(gr.all_perfect());
        assert!(rees_pairing_identity(&p).unwrap().iter().all(|r| r.equal));
    }

    #[test]
    fn orthogonal_of_zero_and_full() {
        let p = canonical_group_pairing(&FiniteGroup::cyclic(3), FieldSpec::rationals()).unwrap();
        let z = orthogonal(&p, &Subspace::zero(3), Side::Left).unwrap();
        assert!(z.is_full());
        let f = orthogonal(&p, &Subspace::full(&p.field(), 3), Side::Left).unwrap();
        assert_eq!(f.dim(), 0);
    }
}
