//! Exact scalars over GF(p) and the rationals, sparse vectors, and the
//! subspace lattice in canonical reduced row-echelon form.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Ground field: characteristic 0 is the rationals, otherwise GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(rename = "char")]
    characteristic: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::InvalidInput(format!(
                "characteristic {characteristic} is neither 0 nor prime"
            )));
        }
        if characteristic >= 1 << 31 {
            return Err(Error::InvalidInput(format!(
                "characteristic {characteristic} too large"
            )));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn gf(p: u64) -> Self {
        FieldSpec::new(p).expect("prime characteristic")
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            p => Scalar::Fp {
                v: (n as i128).rem_euclid(p as i128) as u64,
                p,
            },
        }
    }

    pub fn from_ratio(&self, n: i64, d: i64) -> Result<Scalar> {
        let d = self.from_i64(d);
        let inv = d
            .inv()
            .ok_or_else(|| Error::InvalidInput("zero denominator".into()))?;
        Ok(&self.from_i64(n) * &inv)
    }

    /// Parses "3", "-2" or "2/7".
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::Format(format!("bad scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        match self.characteristic {
            0 => Ok(Scalar::Q(BigRational::new(n, d))),
            p => {
                let pb = BigInt::from(p);
                let nv = n.mod_floor(&pb).to_u64().unwrap();
                let dv = d.mod_floor(&pb).to_u64().unwrap();
                let di = inv_mod(dv, p).ok_or_else(bad)?;
                Ok(Scalar::Fp {
                    v: (nv as u128 * di as u128 % p as u128) as u64,
                    p,
                })
            }
        }
    }

    /// A small random scalar; over the rationals numerators and denominators stay tiny.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self.characteristic {
            0 => {
                let n = rng.gen_range(-3i64..=3);
                let d = rng.gen_range(1i64..=3);
                self.from_ratio(n, d).unwrap()
            }
            p => Scalar::Fp {
                v: rng.gen_range(0..p),
                p,
            },
        }
    }

    pub fn label(&self) -> String {
        match self.characteristic {
            0 => "Q".to_string(),
            p => format!("GF({p})"),
        }
    }
}

/// Exact field element. Residues lie in [0,p); fractions are reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fp { v: u64, p: u64 },
    Q(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Fp { p, .. } => Scalar::Fp { v: 0, p: *p },
            Scalar::Q(_) => Scalar::Q(BigRational::zero()),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Fp { p, .. } => Scalar::Fp { v: 1, p: *p },
            Scalar::Q(_) => Scalar::Q(BigRational::one()),
        }
    }

    /// In-place addition; integer rationals reuse their numerator buffer.
    pub fn add_assign(&mut self, o: &Scalar) {
        match (&mut *self, o) {
            (Scalar::Fp { v, p }, Scalar::Fp { v: b, p: q }) if p == q => *v = (*v + b) % *p,
            (Scalar::Q(a), Scalar::Q(b)) if a.is_integer() && b.is_integer() => {
                let (mut n, d) = std::mem::take(a).into_raw();
                n += b.numer();
                *a = BigRational::new_raw(n, d);
            }
            (Scalar::Q(a), Scalar::Q(b)) => *a = q_add(a, b),
            _ => mismatch(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Fp { v, p } => inv_mod(*v, *p).map(|v| Scalar::Fp { v, p: *p }),
            Scalar::Q(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Scalar::Q(q.recip()))
                }
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp { p, .. } => FieldSpec { characteristic: *p },
            Scalar::Q(_) => FieldSpec::rationals(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn small(a: &BigRational) -> Option<(i128, i128)> {
    Some((a.numer().to_i64()? as i128, a.denom().to_i64()? as i128))
}

fn from_small(n: i128, d: i128) -> BigRational {
    let g = n.gcd(&d);
    let (n, d) = if g > 1 { (n / g, d / g) } else { (n, d) };
    BigRational::new_raw(BigInt::from(n), BigInt::from(d))
}

/// Machine-word operands skip the big-integer gcd.
fn q_add(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let fast = match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) if ad == bd => Some((an + bn, ad)),
        (Some((an, ad)), Some((bn, bd))) => (an * bd).checked_add(bn * ad).map(|n| (n, ad * bd)),
        _ => None,
    };
    match fast {
        Some((n, d)) => from_small(n, d),
        None => a + b,
    }
}

fn q_mul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_one() {
        return b.clone();
    }
    if b.is_one() {
        return a.clone();
    }
    match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) => from_small(an * bn, ad * bd),
        _ => a * b,
    }
}

fn mismatch() -> ! {
    panic!("scalars from different fields combined")
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: (a + b) % p,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(q_add(a, b)),
            _ => mismatch(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: (a + p - b) % p,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(q_add(a, &-b)),
            _ => mismatch(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: a * b % p,
                p: *p,
            },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(q_mul(a, b)),
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (p - v) % p,
                p: *p,
            },
            Scalar::Q(a) => Scalar::Q(-a),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, Scalar)>,
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn unit(dim: usize, i: usize, one: Scalar) -> Self {
        assert!(i < dim, "index {i} out of range {dim}");
        SparseVector {
            dim,
            entries: vec![(i, one)],
        }
    }

    /// Builds a vector from arbitrary (index, coefficient) pairs, merging repeats.
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut acc = Accumulator::new(dim);
        for (i, c) in entries {
            acc.add(i, c);
        }
        acc.into_vector()
    }

    pub fn try_from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, Scalar)>,
    ) -> Result<Self> {
        let entries: Vec<_> = entries.into_iter().collect();
        if let Some((i, _)) = entries.iter().find(|(i, _)| *i >= dim) {
            return Err(Error::Format(format!("index {i} out of range {dim}")));
        }
        Ok(Self::from_entries(dim, entries))
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVector {
            dim: v.len(),
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, field: &FieldSpec) -> Vec<Scalar> {
        let mut out = vec![field.zero(); self.dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return SparseVector::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, a)| (*i, a * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, a)| (*i, -a)).collect(),
        }
    }

    /// self + c * other
    pub fn axpy(&self, c: &Scalar, other: &SparseVector) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in axpy");
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + &(c * &other.entries[b].1);
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVector {
            dim: self.dim,
            entries: out,
        }
    }

    pub fn add(&self, other: &SparseVector) -> Self {
        match other.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.axpy(&c.one_like(), other),
        }
    }

    pub fn sub(&self, other: &SparseVector) -> Self {
        match other.entries.first() {
            None => self.clone(),
            Some((_, c)) => self.axpy(&-c.one_like(), other),
        }
    }

    /// Sum of products with a dense covector.
    pub fn dot_dense(&self, w: &[Scalar], field: &FieldSpec) -> Scalar {
        let mut s = field.zero();
        for (i, c) in &self.entries {
            s = &s + &(c * &w[*i]);
        }
        s
    }

    pub fn dot(&self, other: &SparseVector, field: &FieldSpec) -> Scalar {
        let mut s = field.zero();
        for (i, c) in &self.entries {
            if let Some(d) = other.get(*i) {
                s = &s + &(c * d);
            }
        }
        s
    }

    /// Reinterprets the vector inside a larger or equal ambient space.
    pub fn with_dim(&self, dim: usize) -> Self {
        assert!(self.entries.iter().all(|(i, _)| *i < dim));
        SparseVector {
            dim,
            entries: self.entries.clone(),
        }
    }

    pub fn density(&self) -> f64 {
        if self.dim == 0 {
            0.0
        } else {
            self.entries.len() as f64 / self.dim as f64
        }
    }

    pub fn map_indices(&self, dim: usize, f: impl Fn(usize) -> usize) -> Self {
        SparseVector::from_entries(dim, self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }
}

const DENSE_ACCUMULATOR_LIMIT: usize = 1 << 16;

/// Sum of sparse terms that finalises into a sorted sparse vector; dense slots below a size limit, a hash map above.
pub struct Accumulator {
    dim: usize,
    dense: Vec<Option<Scalar>>,
    touched: Vec<usize>,
    map: HashMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        Accumulator {
            dim,
            dense: Vec::new(),
            touched: Vec::new(),
            map: HashMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, c: Scalar) {
        assert!(i < self.dim, "index {i} out of range {}", self.dim);
        if c.is_zero() {
            return;
        }
        if self.dim <= DENSE_ACCUMULATOR_LIMIT {
            if self.dense.is_empty() {
                self.dense = vec![None; self.dim];
            }
            match &mut self.dense[i] {
                Some(v) => v.add_assign(&c),
                slot => {
                    *slot = Some(c);
                    self.touched.push(i);
                }
            }
            return;
        }
        match self.map.get_mut(&i) {
            Some(v) => v.add_assign(&c),
            None => {
                self.map.insert(i, c);
            }
        }
    }

    pub fn add_vector(&mut self, c: &Scalar, v: &SparseVector) {
        if c.is_one() {
            for (i, a) in v.entries() {
                self.add(*i, a.clone());
            }
        } else {
            for (i, a) in v.entries() {
                self.add(*i, c * a);
            }
        }
    }

    pub fn into_vector(mut self) -> SparseVector {
        let mut entries: Vec<(usize, Scalar)> = if self.dim <= DENSE_ACCUMULATOR_LIMIT {
            self.touched.sort_unstable();
            let dense = &mut self.dense;
            self.touched
                .iter()
                .filter_map(|&i| dense[i].take().filter(|c| !c.is_zero()).map(|c| (i, c)))
                .collect()
        } else {
            let mut e: Vec<_> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            e.sort_by_key(|e| e.0);
            e
        };
        entries.shrink_to_fit();
        SparseVector {
            dim: self.dim,
            entries,
        }
    }
}

/// Incremental canonical row reduction.
#[derive(Clone, Debug)]
pub struct RrefBuilder {
    ambient: usize,
    rows: Vec<SparseVector>,
    pivots: Vec<usize>,
}

impl RrefBuilder {
    pub fn new(ambient: usize) -> Self {
        RrefBuilder {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_subspace(s: &Subspace) -> Self {
        RrefBuilder {
            ambient: s.ambient,
            rows: s.rows.clone(),
            pivots: s.pivots.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(a) = r.get(p) {
                let a = -a;
                r = r.axpy(&a, row);
            }
        }
        r
    }

    /// Adds a vector; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &SparseVector) -> Result<bool> {
        if v.dim() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: v.dim(),
            });
        }
        let r = self.reduce(v);
        let Some((c, lead)) = r.leading() else {
            return Ok(false);
        };
        let r = r.scale(&lead.inv().unwrap());
        for row in self.rows.iter_mut() {
            if let Some(a) = row.get(c) {
                let a = -a;
                *row = row.axpy(&a, &r);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, r);
        Ok(true)
    }

    pub fn finish(self) -> Subspace {
        Subspace {
            ambient: self.ambient,
            rows: self.rows,
            pivots: self.pivots,
        }
    }
}

fn rref_dense(ambient: usize, rows: &[SparseVector], field: &FieldSpec) -> Subspace {
    let mut m: Vec<Vec<Scalar>> = rows.iter().map(|r| r.to_dense(field)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ambient {
        if r == m.len() {
            break;
        }
        let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let a = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = &*x - &(&a * y);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Subspace {
        ambient,
        rows: m.iter().map(|row| SparseVector::from_dense(row)).collect(),
        pivots,
    }
}

/// Subspace of k^n stored as its canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVector>,
    pivots: Vec<usize>,
}

/// Canonical RREF of the row space. Switches to dense elimination when the
/// input is more than half full.
pub fn rref(ambient: usize, rows: &[SparseVector]) -> Result<Subspace> {
    if let Some(r) = rows.iter().find(|r| r.dim() != ambient) {
        return Err(Error::DimensionMismatch {
            expected: ambient,
            found: r.dim(),
        });
    }
    let nnz: usize = rows.iter().map(|r| r.nnz()).sum();
    let cells = rows.len() * ambient;
    if cells > 0 && cells <= 1 << 22 && 2 * nnz > cells {
        let field = rows
            .iter()
            .find_map(|r| r.leading().map(|(_, c)| c.field()))
            .unwrap();
        return Ok(rref_dense(ambient, rows, &field));
    }
    let mut b = RrefBuilder::new(ambient);
    for r in rows {
        b.insert(r)?;
    }
    Ok(b.finish())
}

/// Sparse-only elimination, exposed so tests can compare both paths.
pub fn rref_sparse(ambient: usize, rows: &[SparseVector]) -> Result<Subspace> {
    let mut b = RrefBuilder::new(ambient);
    for r in rows {
        b.insert(r)?;
    }
    Ok(b.finish())
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient)
                .map(|i| SparseVector::unit(ambient, i, field.one()))
                .collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(ambient: usize, rows: &[SparseVector]) -> Result<Self> {
        rref(ambient, rows)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Canonical remainder of `v` modulo the subspace.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(a) = r.get(p) {
                let a = -a;
                r = r.axpy(&a, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        v.dim() == self.ambient && self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.iter().all(|r| other.contains(r))
    }

    /// Coordinates of a member vector against the RREF basis.
    pub fn coords(&self, v: &SparseVector) -> SparseVector {
        SparseVector::from_entries(
            self.dim(),
            self.pivots
                .iter()
                .enumerate()
                .filter_map(|(k, p)| v.get(*p).map(|c| (k, c.clone()))),
        )
    }

    /// Member vector with the given coordinates.
    pub fn from_coords(&self, c: &SparseVector) -> SparseVector {
        let mut acc = Accumulator::new(self.ambient);
        for (k, a) in c.entries() {
            acc.add_vector(a, &self.rows[*k]);
        }
        acc.into_vector()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_same(self, other)?;
        let mut b = RrefBuilder::from_subspace(self);
        for r in &other.rows {
            b.insert(r)?;
        }
        Ok(b.finish())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        Ok(sum_and_intersect(self, other)?.1)
    }
}

fn check_same(u: &Subspace, w: &Subspace) -> Result<()> {
    if u.ambient != w.ambient {
        return Err(Error::DimensionMismatch {
            expected: u.ambient,
            found: w.ambient,
        });
    }
    Ok(())
}

/// Zassenhaus: eliminate rows (u|u) and (w|0) once; returns (U+W, U∩W).
pub fn sum_and_intersect(u: &Subspace, w: &Subspace) -> Result<(Subspace, Subspace)> {
    check_same(u, w)?;
    let n = u.ambient;
    let mut rows: Vec<(SparseVector, SparseVector)> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    let mut inter = Vec::new();
    let pairs = u
        .rows
        .iter()
        .map(|r| (r.clone(), r.clone()))
        .chain(w.rows.iter().map(|r| (r.clone(), SparseVector::zero(n))));
    for (mut left, mut right) in pairs {
        loop {
            match left.leading() {
                None => {
                    if !right.is_zero() {
                        inter.push(right);
                    }
                    break;
                }
                Some((c, a)) => {
                    if let Some(&k) = pivot_of.get(&c) {
                        let a = -a;
                        right = right.axpy(&a, &rows[k].1);
                        left = left.axpy(&a, &rows[k].0);
                    } else {
                        let inv = a.inv().unwrap();
                        pivot_of.insert(c, rows.len());
                        rows.push((left.scale(&inv), right.scale(&inv)));
                        break;
                    }
                }
            }
        }
    }
    let sum: Vec<_> = rows.into_iter().map(|r| r.0).collect();
    Ok((rref(n, &sum)?, rref(n, &inter)?))
}


/// Sparse column-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    field: FieldSpec,
    domain: usize,
    codomain: usize,
    columns: Vec<SparseVector>,
}

impl LinearMap {
    pub fn new(
        field: FieldSpec,
        domain: usize,
        codomain: usize,
        columns: Vec<SparseVector>,
    ) -> Result<Self> {
        if columns.len() != domain {
            return Err(Error::DimensionMismatch {
                expected: domain,
                found: columns.len(),
            });
        }
        if let Some(c) = columns.iter().find(|c| c.dim() != codomain) {
            return Err(Error::DimensionMismatch {
                expected: codomain,
                found: c.dim(),
            });
        }
        Ok(LinearMap {
            field,
            domain,
            codomain,
            columns,
        })
    }

    pub fn from_fn(
        field: FieldSpec,
        domain: usize,
        codomain: usize,
        f: impl FnMut(usize) -> SparseVector,
    ) -> Self {
        let columns: Vec<_> = (0..domain).map(f).collect();
        for c in &columns {
            assert_eq!(c.dim(), codomain, "column of wrong dimension");
        }
        LinearMap {
            field,
            domain,
            codomain,
            columns,
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        LinearMap::from_fn(field, n, n, |i| SparseVector::unit(n, i, field.one()))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn domain_dim(&self) -> usize {
        self.domain
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain
    }

    pub fn column(&self, j: usize) -> &SparseVector {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.columns[j]
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        assert_eq!(v.dim(), self.domain, "linear map applied to wrong dimension");
        let mut acc = Accumulator::new(self.codomain);
        for (j, c) in v.entries() {
            acc.add_vector(c, &self.columns[*j]);
        }
        acc.into_vector()
    }

    /// self ∘ g
    pub fn compose(&self, g: &LinearMap) -> Result<LinearMap> {
        if g.codomain != self.domain {
            return Err(Error::DimensionMismatch {
                expected: self.domain,
                found: g.codomain,
            });
        }
        Ok(LinearMap::from_fn(self.field, g.domain, self.codomain, |j| {
            self.apply(&g.columns[j])
        }))
    }

    pub fn image(&self) -> Subspace {
        rref(self.codomain, &self.columns).expect("columns share dimension")
    }

    pub fn rank(&self) -> usize {
        self.image().dim()
    }

    /// Column elimination on (f(e_j) | e_j); rows whose left half dies span the kernel.
    pub fn kernel(&self) -> Subspace {
        let one = self.field.one();
        let mut rows: Vec<(SparseVector, SparseVector)> = Vec::new();
        let mut pivot_of: HashMap<usize, usize> = HashMap::new();
        let mut ker = Vec::new();
        for j in 0..self.domain {
            let mut img = self.columns[j].clone();
            let mut dom = SparseVector::unit(self.domain, j, one.clone());
            loop {
                match img.leading() {
                    None => {
                        ker.push(dom);
                        break;
                    }
                    Some((c, a)) => {
                        if let Some(&k) = pivot_of.get(&c) {
                            let a = -a;
                            dom = dom.axpy(&a, &rows[k].1);
                            img = img.axpy(&a, &rows[k].0);
                        } else {
                            let inv = a.inv().unwrap();
                            pivot_of.insert(c, rows.len());
                            rows.push((img.scale(&inv), dom.scale(&inv)));
                            break;
                        }
                    }
                }
            }
        }
        rref(self.domain, &ker).expect("kernel vectors share dimension")
    }

    /// { v : f(v) ∈ W }
    pub fn preimage(&self, w: &Subspace) -> Result<Subspace> {
        if w.ambient() != self.codomain {
            return Err(Error::DimensionMismatch {
                expected: self.codomain,
                found: w.ambient(),
            });
        }
        let reduced = LinearMap::from_fn(self.field, self.domain, self.codomain, |j| {
            w.reduce(&self.columns[j])
        });
        Ok(reduced.kernel())
    }

    /// Image of a subspace.
    pub fn image_of(&self, s: &Subspace) -> Result<Subspace> {
        if s.ambient() != self.domain {
            return Err(Error::DimensionMismatch {
                expected: self.domain,
                found: s.ambient(),
            });
        }
        let imgs: Vec<_> = s.basis().iter().map(|v| self.apply(v)).collect();
        rref(self.codomain, &imgs)
    }

    pub fn transpose(&self) -> LinearMap {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.codomain];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, a) in c.entries() {
                cols[*i].push((j, a.clone()));
            }
        }
        LinearMap {
            field: self.field,
            domain: self.codomain,
            codomain: self.domain,
            columns: cols
                .into_iter()
                .map(|e| SparseVector {
                    dim: self.domain,
                    entries: e,
                })
                .collect(),
        }
    }

    /// Inverse of a square matrix via the reduced form of [A | I].
    pub fn inverse(&self) -> Option<LinearMap> {
        if self.domain != self.codomain {
            return None;
        }
        let n = self.domain;
        let t = self.transpose();
        let rows: Vec<_> = (0..n)
            .map(|i| {
                let mut e = t.columns[i].entries.clone();
                e.push((n + i, self.field.one()));
                SparseVector {
                    dim: 2 * n,
                    entries: e,
                }
            })
            .collect();
        let r = rref_sparse(2 * n, &rows).ok()?;
        if r.dim() != n || r.pivots().iter().enumerate().any(|(i, &p)| i != p) {
            return None;
        }
        let inv_rows = LinearMap::from_fn(self.field, n, n, |i| {
            SparseVector::from_entries(
                n,
                r.basis()[i]
                    .entries()
                    .iter()
                    .filter(|(k, _)| *k >= n)
                    .map(|(k, c)| (k - n, c.clone())),
            )
        });
        Some(inv_rows.transpose())
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::DimensionMismatch {
                expected: self.domain,
                found: other.domain,
            });
        }
        Ok(LinearMap::from_fn(self.field, self.domain, self.codomain, |j| {
            self.columns[j].add(&other.columns[j])
        }))
    }
}

/// Data for V/W with W ⊆ V: a complement basis (the section) and the projection
/// from the ambient space onto quotient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    pub sub: Subspace,
    pub complement: Subspace,
}

impl QuotientData {
    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    /// Section vectors spanning a complement of W in V.
    pub fn section(&self) -> &[SparseVector] {
        self.complement.basis()
    }

    /// Quotient coordinates of a vector of V.
    pub fn project(&self, v: &SparseVector) -> SparseVector {
        let r = self.sub.reduce(v);
        self.complement.coords(&r)
    }

    pub fn lift(&self, c: &SparseVector) -> SparseVector {
        self.complement.from_coords(c)
    }
}

pub fn quotient_data(v: &Subspace, w: &Subspace) -> Result<QuotientData> {
    check_same(v, w)?;
    if !w.is_subspace_of(v) {
        return Err(Error::Containment(format!(
            "subspace of dimension {} not contained in the space of dimension {}",
            w.dim(),
            v.dim()
        )));
    }
    let rems: Vec<_> = v.basis().iter().map(|r| w.reduce(r)).collect();
    Ok(QuotientData {
        sub: w.clone(),
        complement: rref(v.ambient(), &rems)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &FieldSpec, xs: &[i64]) -> SparseVector {
        SparseVector::from_dense(&xs.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>())
    }

    #[test]
    fn field_arithmetic() {
        let f = FieldSpec::gf(7);
        let a = f.from_i64(3);
        assert_eq!((&a * &a.inv().unwrap()), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(a.pow(6), f.one());
        assert!(FieldSpec::new(9).is_err());
        let q = FieldSpec::rationals();
        assert_eq!(q.parse("4/6").unwrap().to_string(), "2/3");
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
    }

    #[test]
    fn rref_is_canonical() {
        let f = FieldSpec::rationals();
        let a = Subspace::span(3, &[v(&f, &[1, 2, 3]), v(&f, &[2, 4, 7])]).unwrap();
        let b = Subspace::span(3, &[v(&f, &[0, 0, 1]), v(&f, &[3, 6, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.pivots(), &[0, 2]);
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        let f = FieldSpec::gf(5);
        let rows = vec![v(&f, &[1, 2, 3, 4]), v(&f, &[2, 2, 1, 1]), v(&f, &[3, 4, 4, 0])];
        assert_eq!(rref(4, &rows).unwrap(), rref_sparse(4, &rows).unwrap());
    }

    #[test]
    fn sum_and_intersection() {
        let f = FieldSpec::rationals();
        let u = Subspace::span(3, &[v(&f, &[1, 0, 0]), v(&f, &[0, 1, 0])]).unwrap();
        let w = Subspace::span(3, &[v(&f, &[0, 1, 0]), v(&f, &[0, 0, 1])]).unwrap();
        let (s, i) = sum_and_intersect(&u, &w).unwrap();
        assert!(s.is_full());
        assert_eq!(i, Subspace::span(3, &[v(&f, &[0, 1, 0])]).unwrap());
    }

    #[test]
    fn kernel_preimage_inverse() {
        let f = FieldSpec::rationals();
        let m = LinearMap::new(f, 3, 2, vec![v(&f, &[1, 0]), v(&f, &[0, 1]), v(&f, &[1, 1])])
            .unwrap();
        let k = m.kernel();
        assert_eq!(k, Subspace::span(3, &[v(&f, &[1, 1, -1])]).unwrap());
        let w = Subspace::span(2, &[v(&f, &[1, 0])]).unwrap();
        assert_eq!(m.preimage(&w).unwrap().dim(), 2);
        let a = LinearMap::new(f, 2, 2, vec![v(&f, &[1, 1]), v(&f, &[1, 2])]).unwrap();
        let ai = a.inverse().unwrap();
        assert_eq!(a.compose(&ai).unwrap(), LinearMap::identity(f, 2));
    }

    #[test]
    fn quotient_projection() {
        let f = FieldSpec::gf(3);
        let full = Subspace::full(&f, 3);
        let w = Subspace::span(3, &[v(&f, &[1, 1, 0])]).unwrap();
        let q = quotient_data(&full, &w).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.project(&v(&f, &[2, 2, 0])).is_zero());
        let x = v(&f, &[0, 1, 2]);
        assert!(w.contains(&x.sub(&q.lift(&q.project(&x)))));
        assert!(quotient_data(&w, &full).is_err());
    }
}
