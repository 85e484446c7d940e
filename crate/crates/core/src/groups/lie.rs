//! Restricted Lie algebras and their restricted enveloping algebras u(g).

use crate::error::{Error, Result};
use crate::exactlin::{Accumulator, FieldSpec, LinearMap, Scalar, SparseVector, Subspace};
use crate::filtration::{Direction, Filtration, FiltrationKind};
use crate::hopf::HopfAlgebraData;

pub const DEFAULT_LIE_DIM_CAP: usize = 3;
const REWRITE_STEP_CAP: usize = 1_000_000;

/// Restricted Lie algebra over GF(p) by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedLieInput {
    pub field: FieldSpec,
    pub labels: Vec<String>,
    /// [x_i, x_j] at i*n+j
    pub bracket: Vec<SparseVector>,
    pub pmap: Vec<SparseVector>,
}

impl RestrictedLieInput {
    /// Brackets are given for i < j and extended antisymmetrically.
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        brackets: &[(usize, usize, Vec<(usize, i64)>)],
        pmap: &[Vec<(usize, i64)>],
    ) -> Result<Self> {
        let n = labels.len();
        if field.characteristic() == 0 {
            return Err(Error::InvalidInput("restricted Lie algebras need char p".into()));
        }
        if pmap.len() != n {
            return Err(Error::Format("p-map needs one image per generator".into()));
        }
        let vec = |e: &[(usize, i64)]| -> Result<SparseVector> {
            SparseVector::try_from_entries(n, e.iter().map(|&(k, c)| (k, field.from_i64(c))))
        };
        let mut bracket = vec![SparseVector::zero(n); n * n];
        for (i, j, e) in brackets {
            if *i >= n || *j >= n {
                return Err(Error::Format("bracket index out of range".into()));
            }
            let v = vec(e)?;
            bracket[j * n + i] = v.neg();
            bracket[i * n + j] = v;
        }
        let pmap = pmap.iter().map(|e| vec(e)).collect::<Result<_>>()?;
        let g = RestrictedLieInput {
            field,
            labels,
            bracket,
            pmap,
        };
        g.validate()?;
        Ok(g)
    }

    /// Reads `{"field": {"char": p}, "restricted_lie": {"labels", "brackets": [[i, j, [[k, c], ..]], ..], "pmap": [[[k, c], ..], ..]}}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |m: &str| Error::Format(m.to_string());
        let ch = v["field"]["char"].as_u64().ok_or_else(|| bad("missing field.char"))?;
        let field = FieldSpec::new(ch).map_err(|e| Error::Format(e.to_string()))?;
        let g = &v["restricted_lie"];
        let labels: Vec<String> = g["labels"]
            .as_array()
            .ok_or_else(|| bad("missing restricted_lie.labels"))?
            .iter()
            .map(|x| x.as_str().map(String::from).ok_or_else(|| bad("bad label")))
            .collect::<Result<_>>()?;
        let combo = |x: &serde_json::Value| -> Result<Vec<(usize, i64)>> {
            x.as_array()
                .ok_or_else(|| bad("expected a list of [index, coefficient]"))?
                .iter()
                .map(|t| match (t.get(0).and_then(|a| a.as_u64()), t.get(1).and_then(|a| a.as_i64())) {
                    (Some(k), Some(c)) => Ok((k as usize, c)),
                    _ => Err(bad("bad [index, coefficient] pair")),
                })
                .collect()
        };
        let mut brackets = Vec::new();
        if let Some(bs) = g.get("brackets") {
            for b in bs.as_array().ok_or_else(|| bad("brackets must be an array"))? {
                let i = b.get(0).and_then(|x| x.as_u64()).ok_or_else(|| bad("bad bracket"))? as usize;
                let j = b.get(1).and_then(|x| x.as_u64()).ok_or_else(|| bad("bad bracket"))? as usize;
                brackets.push((i, j, combo(&b[2])?));
            }
        }
        let pmap = match g.get("pmap") {
            Some(pm) => pm
                .as_array()
                .ok_or_else(|| bad("pmap must be an array"))?
                .iter()
                .map(combo)
                .collect::<Result<Vec<_>>>()?,
            None => vec![Vec::new(); labels.len()],
        };
        RestrictedLieInput::new(field, labels, &brackets, &pmap)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn p(&self) -> usize {
        self.field.characteristic() as usize
    }

    pub fn bracket(&self, a: &SparseVector, b: &SparseVector) -> SparseVector {
        let n = self.dim();
        let mut acc = Accumulator::new(n);
        for (i, x) in a.entries() {
            for (j, y) in b.entries() {
                acc.add_vector(&(x * y), &self.bracket[i * n + j]);
            }
        }
        acc.into_vector()
    }

    fn e(&self, i: usize) -> SparseVector {
        SparseVector::unit(self.dim(), i, self.field.one())
    }

    /// Antisymmetry, Jacobi and ad(x^[p]) = ad(x)^p on the basis.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let fail = |axiom: &str, w: Vec<usize>| {
            Err(Error::AxiomViolation {
                axiom: axiom.into(),
                witness: w,
            })
        };
        for i in 0..n {
            for j in 0..n {
                if !self.bracket[i * n + j].add(&self.bracket[j * n + i]).is_zero() {
                    return fail("antisymmetry", vec![i, j]);
                }
                for k in 0..n {
                    let (x, y, z) = (self.e(i), self.e(j), self.e(k));
                    let s = self
                        .bracket(&x, &self.bracket(&y, &z))
                        .add(&self.bracket(&y, &self.bracket(&z, &x)))
                        .add(&self.bracket(&z, &self.bracket(&x, &y)));
                    if !s.is_zero() {
                        return fail("Jacobi", vec![i, j, k]);
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut v = self.e(j);
                for _ in 0..self.p() {
                    v = self.bracket(&self.e(i), &v);
                }
                if v != self.bracket(&self.pmap[i], &self.e(j)) {
                    return fail("ad(x^[p]) = ad(x)^p", vec![i, j]);
                }
            }
        }
        Ok(())
    }

    /// One generator, zero bracket, zero p-map.
    pub fn abelian_line(p: u64) -> Self {
        RestrictedLieInput::new(FieldSpec::gf(p), vec!["x".into()], &[], &[vec![]]).unwrap()
    }

    /// [x,y] = y, x^[p] = x, y^[p] = 0.
    pub fn affine(p: u64) -> Self {
        RestrictedLieInput::new(
            FieldSpec::gf(p),
            vec!["x".into(), "y".into()],
            &[(0, 1, vec![(1, 1)])],
            &[vec![(0, 1)], vec![]],
        )
        .unwrap()
    }

    /// [x,y] = z central, trivial p-map.
    pub fn heisenberg(p: u64) -> Self {
        RestrictedLieInput::new(
            FieldSpec::gf(p),
            vec!["x".into(), "y".into(), "z".into()],
            &[(0, 1, vec![(2, 1)])],
            &[vec![], vec![], vec![]],
        )
        .unwrap()
    }
}

/// u(g) together with its PBW bookkeeping.
#[derive(Clone, Debug)]
pub struct RestrictedEnveloping {
    pub algebra: HopfAlgebraData,
    pub lie: RestrictedLieInput,
    /// exponent vector of each PBW basis monomial
    pub exponents: Vec<Vec<usize>>,
}

impl RestrictedEnveloping {
    pub fn generator_index(&self, i: usize) -> usize {
        let n = self.lie.dim();
        self.lie.p().pow((n - 1 - i) as u32)
    }

    pub fn generator(&self, i: usize) -> SparseVector {
        self.algebra.basis_vector(self.generator_index(i))
    }

    /// Embeds a Lie element as a primitive of u(g).
    pub fn embed(&self, x: &SparseVector) -> SparseVector {
        SparseVector::from_entries(
            self.algebra.dim(),
            x.entries()
                .iter()
                .map(|(i, c)| (self.generator_index(*i), c.clone())),
        )
    }

    pub fn pbw_degree(&self, idx: usize) -> usize {
        self.exponents[idx].iter().sum()
    }

    /// Standard filtration: F_n spanned by PBW monomials of total degree ≤ n.
    pub fn standard_filtration(&self) -> Filtration {
        let d = self.algebra.dim();
        let top = (0..d).map(|i| self.pbw_degree(i)).max().unwrap_or(0);
        let field = self.algebra.field();
        let chain = (0..=top)
            .map(|n| {
                let rows: Vec<SparseVector> = (0..d)
                    .filter(|&i| self.pbw_degree(i) <= n)
                    .map(|i| SparseVector::unit(d, i, field.one()))
                    .collect();
                Subspace::span(d, &rows).expect("unit rows")
            })
            .collect();
        Filtration::custom(FiltrationKind::Standard, Direction::Increasing, chain).expect("increasing chain")
    }
}

fn monomial_index(a: &[usize], p: usize) -> usize {
    a.iter().fold(0, |acc, &x| acc * p + x)
}

/// Rewrites a word in the generators into the PBW basis.
fn normalize(g: &RestrictedLieInput, word: Vec<usize>, coeff: Scalar, out: &mut Accumulator) -> Result<()> {
    let n = g.dim();
    let p = g.p();
    let mut work = vec![(word, coeff)];
    let mut steps = 0;
    while let Some((w, c)) = work.pop() {
        steps += 1;
        if steps > REWRITE_STEP_CAP {
            return Err(Error::InvalidInput("PBW rewriting does not terminate".into()));
        }
        if c.is_zero() {
            continue;
        }
        if let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            work.push((swapped, c.clone()));
            for (k, b) in g.bracket[w[i] * n + w[i + 1]].entries() {
                let mut v = w[..i].to_vec();
                v.push(*k);
                v.extend_from_slice(&w[i + 2..]);
                work.push((v, &c * b));
            }
            continue;
        }
        if let Some(i) = (0..(w.len() + 1).saturating_sub(p)).find(|&i| w[i..i + p].iter().all(|&x| x == w[i])) {
            for (k, b) in g.pmap[w[i]].entries() {
                let mut v = w[..i].to_vec();
                v.push(*k);
                v.extend_from_slice(&w[i + p..]);
                work.push((v, &c * b));
            }
            continue;
        }
        let mut a = vec![0; n];
        for &x in &w {
            a[x] += 1;
        }
        out.add(monomial_index(&a, p), c);
    }
    Ok(())
}

fn word_of(a: &[usize]) -> Vec<usize> {
    a.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e))
        .collect()
}

fn binomial_mod(n: usize, k: usize, field: &FieldSpec) -> Scalar {
    let mut c = field.one();
    for i in 0..k {
        c = &(&c * &field.from_i64((n - i) as i64)) * &field.from_i64((i + 1) as i64).inv().unwrap();
    }
    c
}

pub fn build_restricted_enveloping(g: &RestrictedLieInput) -> Result<RestrictedEnveloping> {
    let n = g.dim();
    if n > DEFAULT_LIE_DIM_CAP {
        return Err(Error::Resource {
            what: "restricted Lie algebra dimension".into(),
            needed: n as u128,
            budget: DEFAULT_LIE_DIM_CAP as u128,
        });
    }
    let p = g.p();
    let field = g.field;
    let d = p.pow(n as u32);
    let exponents: Vec<Vec<usize>> = (0..d)
        .map(|mut x| {
            let mut a = vec![0; n];
            for i in (0..n).rev() {
                a[i] = x % p;
                x /= p;
            }
            a
        })
        .collect();
    let labels = exponents
        .iter()
        .map(|a| {
            let parts: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        g.labels[i].clone()
                    } else {
                        format!("{}^{}", g.labels[i], e)
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".into()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let mut mult = Vec::with_capacity(d * d);
    for a in &exponents {
        for b in &exponents {
            let mut w = word_of(a);
            w.extend(word_of(b));
            let mut acc = Accumulator::new(d);
            normalize(g, w, field.one(), &mut acc)?;
            mult.push(acc.into_vector());
        }
    }
    let comult = exponents
        .iter()
        .map(|a| {
            let mut acc = Accumulator::new(d * d);
            let mut b = vec![0; n];
            loop {
                let c = (0..n).fold(field.one(), |c, i| &c * &binomial_mod(a[i], b[i], &field));
                let rest: Vec<usize> = (0..n).map(|i| a[i] - b[i]).collect();
                acc.add(monomial_index(&b, p) * d + monomial_index(&rest, p), c);
                let mut i = n;
                loop {
                    if i == 0 {
                        return acc.into_vector();
                    }
                    i -= 1;
                    if b[i] < a[i] {
                        b[i] += 1;
                        break;
                    }
                    b[i] = 0;
                }
            }
        })
        .collect();
    let counit = (0..d)
        .map(|i| if i == 0 { field.one() } else { field.zero() })
        .collect();
    let mut antipode_cols = Vec::with_capacity(d);
    for a in &exponents {
        let mut w = word_of(a);
        w.reverse();
        let sign = if w.len().is_multiple_of(2) { field.one() } else { -field.one() };
        let mut acc = Accumulator::new(d);
        normalize(g, w, sign, &mut acc)?;
        antipode_cols.push(acc.into_vector());
    }
    let algebra = HopfAlgebraData::validated(
        field,
        labels,
        mult,
        SparseVector::unit(d, 0, field.one()),
        comult,
        counit,
        Some(LinearMap::new(field, d, d, antipode_cols)?),
    )?;
    if !algebra.flags.is_bialgebra || !algebra.flags.has_antipode {
        let report = algebra.validate();
        let c = report.first_failure().unwrap();
        return Err(Error::InvalidInput(format!(
            "PBW rewriting is not confluent: {} fails at {:?}",
            c.axiom, c.witness
        )));
    }
    Ok(RestrictedEnveloping {
        algebra,
        lie: g.clone(),
        exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dee_filtration_is_standard() {
        for g in [RestrictedLieInput::abelian_line(2), RestrictedLieInput::affine(2), RestrictedLieInput::heisenberg(3)] {
            let u = build_restricted_enveloping(&g).unwrap();
            let d = crate::filtration::dee_filtration(&u.algebra).unwrap();
            assert_eq!(d.chain(), u.standard_filtration().chain());
        }
    }

    #[test]
    fn line_is_truncated_polynomial() {
        let u = build_restricted_enveloping(&RestrictedLieInput::abelian_line(2)).unwrap();
        let x = u.generator(0);
        assert_eq!(u.algebra.dim(), 2);
        assert!(u.algebra.mul(&x, &x).is_zero());
        assert_eq!(u.algebra.primitives().dim(), 1);
    }

    #[test]
    fn affine_table() {
        let u = build_restricted_enveloping(&RestrictedLieInput::affine(2)).unwrap();
        let h = &u.algebra;
        let (x, y) = (u.generator(0), u.generator(1));
        assert_eq!(h.dim(), 4);
        assert_eq!(h.commutator(&x, &y), y);
        assert_eq!(h.mul(&x, &x), x);
        assert!(h.mul(&y, &y).is_zero());
        assert!(h.is_commutative().is_some());
        // y*x = x*y - y
        let xy = h.basis_vector(3);
        assert_eq!(h.mul(&y, &x), xy.sub(&y));
    }

    #[test]
    fn heisenberg_center() {
        let u = build_restricted_enveloping(&RestrictedLieInput::heisenberg(3)).unwrap();
        let z = u.generator(2);
        assert_eq!(u.algebra.dim(), 27);
        for i in 0..27 {
            let e = u.algebra.basis_vector(i);
            assert!(u.algebra.commutator(&z, &e).is_zero());
        }
        let g = u.algebra.primitives();
        for i in 0..3 {
            assert!(g.contains(&u.generator(i)));
        }
    }

    #[test]
    fn bad_constants_rejected() {
        let bad = RestrictedLieInput::new(
            FieldSpec::gf(2),
            vec!["x".into(), "y".into()],
            &[(0, 1, vec![(1, 1)])],
            &[vec![], vec![]],
        );
        assert!(bad.is_err());
    }
}
