//! Finite groups and monoids, central series, and the Hopf algebras built from them.

pub mod jennings;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, LinearMap, SparseVector};
use crate::hopf::HopfAlgebraData;
use serde::Serialize;
use serde_json::Value;
use std::collections::{BTreeSet, HashMap, VecDeque};

pub const DEFAULT_ORDER_CAP: usize = 1024;

/// Finite group given by its multiplication table; index 0 is not assumed to be the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Format("group table is not square over its index set".into()));
        }
        if labels.len() != n {
            return Err(Error::Format("label count differs from order".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidInput("table has no identity".into()))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidInput(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidInput(format!(
                            "table not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverse,
            labels,
        })
    }

    /// Closure of permutation generators acting on 0..degree.
    pub fn from_permutations(gens: &[Vec<usize>], degree: usize, cap: usize) -> Result<Self> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Format("generator is not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let prod: Vec<usize> = (0..degree).map(|x| g[elems[i][x]]).collect();
                if !index.contains_key(&prod) {
                    if elems.len() >= cap {
                        return Err(Error::Resource {
                            what: "permutation closure".into(),
                            needed: cap as u128 + 1,
                            budget: cap as u128,
                        });
                    }
                    index.insert(prod.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(prod);
                }
            }
        }
        let mut order: Vec<usize> = (0..elems.len()).collect();
        order.sort_by(|&a, &b| elems[a].cmp(&elems[b]));
        let elems: Vec<Vec<usize>> = order.iter().map(|&i| elems[i].clone()).collect();
        let index: HashMap<&Vec<usize>, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        // (a*b)(x) = a(b(x))
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| index[&(0..degree).map(|x| a[b[x]]).collect::<Vec<_>>()])
                    .collect()
            })
            .collect();
        let labels = elems.iter().map(|e| cycle_label(e)).collect();
        FiniteGroup::from_table(table, labels)
    }

    fn from_rule(order: usize, labels: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::from_table(table, labels).expect("family constructors produce groups")
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_rule(1, vec!["1".into()], |_, _| 0)
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|k| power_label("tau", k)).collect();
        FiniteGroup::from_rule(n, labels, |a, b| (a + b) % n)
    }

    /// ℤ_{p^{e_1}} × … × ℤ_{p^{e_k}} with generators g1, g2, …
    pub fn zp_powers(p: usize, exps: &[u32]) -> Result<Self> {
        let mods: Vec<usize> = exps.iter().map(|&e| p.pow(e)).collect();
        let order: usize = mods.iter().product();
        if order > DEFAULT_ORDER_CAP {
            return Err(Error::Resource {
                what: "group order".into(),
                needed: order as u128,
                budget: DEFAULT_ORDER_CAP as u128,
            });
        }
        let digits = |mut x: usize| {
            let mut d = vec![0; mods.len()];
            for i in (0..mods.len()).rev() {
                d[i] = x % mods[i];
                x /= mods[i];
            }
            d
        };
        let encode = |d: &[usize]| d.iter().zip(&mods).fold(0, |acc, (x, m)| acc * m + x);
        let labels = (0..order)
            .map(|x| {
                let parts: Vec<String> = digits(x)
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| power_label(&format!("g{}", i + 1), k))
                    .collect();
                if parts.is_empty() {
                    "1".into()
                } else {
                    parts.join("*")
                }
            })
            .collect();
        Ok(FiniteGroup::from_rule(order, labels, |a, b| {
            let (da, db) = (digits(a), digits(b));
            let s: Vec<usize> = (0..mods.len()).map(|i| (da[i] + db[i]) % mods[i]).collect();
            encode(&s)
        }))
    }

    /// ℤ_p ⋉ ℤ_{p²} = ⟨ν, τ | ν^p, τ^{p²}, ντν⁻¹ = τ^{1+p}⟩, element ν^a τ^b at a·p² + b.
    pub fn zp_semidirect_zp2(p: usize) -> Self {
        let q = p * p;
        let r = (q + 1 - p) % q;
        let rpow = |c: usize| (0..c).fold(1, |acc, _| acc * r % q);
        let labels = (0..p * q)
            .map(|x| {
                let (a, b) = (x / q, x % q);
                match (a, b) {
                    (0, 0) => "1".into(),
                    (0, _) => power_label("tau", b),
                    (_, 0) => power_label("nu", a),
                    _ => format!("{}*{}", power_label("nu", a), power_label("tau", b)),
                }
            })
            .collect();
        FiniteGroup::from_rule(p * q, labels, |x, y| {
            let (a, b, c, d) = (x / q, x % q, y / q, y % q);
            ((a + c) % p) * q + (b * rpow(c) + d) % q
        })
    }

    /// Dihedral group of order 2n, element r^k s^e at e·n + k.
    pub fn dihedral(n: usize) -> Self {
        let labels = (0..2 * n)
            .map(|x| {
                let (e, k) = (x / n, x % n);
                match (e, k) {
                    (0, 0) => "1".into(),
                    (0, _) => power_label("r", k),
                    (_, 0) => "s".into(),
                    _ => format!("{}*s", power_label("r", k)),
                }
            })
            .collect();
        FiniteGroup::from_rule(2 * n, labels, |x, y| {
            let (e, a, f, b) = (x / n, x % n, y / n, y % n);
            let k = if e == 0 { (a + b) % n } else { (a + n - b) % n };
            ((e + f) % 2) * n + k
        })
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 || n > 4 {
            return Err(Error::InvalidInput(format!("symmetric group S_{n} outside 1..=4")));
        }
        let mut gens = Vec::new();
        if n > 1 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        FiniteGroup::from_permutations(&gens, n, DEFAULT_ORDER_CAP)
    }

    /// Quaternion group; unit u ∈ {1,i,j,k} with sign s at 2u + s.
    pub fn quaternion() -> Self {
        // unit products as (sign, unit)
        const T: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let names = ["1", "i", "j", "k"];
        let labels = (0..8)
            .map(|x| {
                let (u, s) = (x / 2, x % 2);
                format!("{}{}", if s == 1 { "-" } else { "" }, names[u])
            })
            .collect();
        FiniteGroup::from_rule(8, labels, |x, y| {
            let (s, u) = T[x / 2][y / 2];
            2 * u + (s + x % 2 + y % 2) % 2
        })
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let m = b.order();
        let labels = (0..a.order() * m)
            .map(|x| {
                let (g, h) = (x / m, x % m);
                match (g == a.identity, h == b.identity) {
                    (true, true) => "1".into(),
                    (true, false) => format!("({})'", b.labels[h]),
                    (false, true) => a.labels[g].clone(),
                    _ => format!("{}*({})'", a.labels[g], b.labels[h]),
                }
            })
            .collect();
        FiniteGroup::from_rule(a.order() * m, labels, |x, y| {
            a.mul(x / m, y / m) * m + b.mul(x % m, y % m)
        })
    }

    /// Group from its JSON description: a table, permutation generators, or a named family.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Format(m.to_string());
        let usize_list = |x: &Value| -> Result<Vec<usize>> {
            x.as_array()
                .ok_or_else(|| bad("expected array"))?
                .iter()
                .map(|e| e.as_u64().map(|u| u as usize).ok_or_else(|| bad("expected integer")))
                .collect()
        };
        if let Some(t) = v.get("table") {
            let table = t
                .as_array()
                .ok_or_else(|| bad("table must be an array"))?
                .iter()
                .map(usize_list)
                .collect::<Result<Vec<_>>>()?;
            let labels = match v.get("labels") {
                Some(l) => l
                    .as_array()
                    .ok_or_else(|| bad("labels must be an array"))?
                    .iter()
                    .map(|s| s.as_str().map(String::from).ok_or_else(|| bad("bad label")))
                    .collect::<Result<Vec<_>>>()?,
                None => (0..table.len()).map(|i| format!("g{i}")).collect(),
            };
            return FiniteGroup::from_table(table, labels);
        }
        if let Some(g) = v.get("perm_generators") {
            let gens = g
                .as_array()
                .ok_or_else(|| bad("perm_generators must be an array"))?
                .iter()
                .map(usize_list)
                .collect::<Result<Vec<_>>>()?;
            let degree = v["degree"].as_u64().ok_or_else(|| bad("missing degree"))? as usize;
            return FiniteGroup::from_permutations(&gens, degree, DEFAULT_ORDER_CAP);
        }
        if let Some(f) = v.get("family").and_then(|f| f.as_str()) {
            let p = v.get("p").and_then(|x| x.as_u64()).map(|x| x as usize);
            let n = v.get("n").and_then(|x| x.as_u64()).map(|x| x as usize);
            let exps: Option<Vec<u32>> = v
                .get("exponents")
                .map(|e| usize_list(e).map(|l| l.into_iter().map(|x| x as u32).collect()))
                .transpose()?;
            return named_family(f, p, n, exps.as_deref());
        }
        Err(bad("group JSON needs table, perm_generators or family"))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// (a,b) = a b a⁻¹ b⁻¹
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    /// Sorted element set of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let gens: BTreeSet<usize> = gens.into_iter().collect();
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    pub fn commutator_subgroup(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut gens = BTreeSet::new();
        for &x in a {
            for &y in b {
                gens.insert(self.commutator(x, y));
            }
        }
        self.generated_subgroup(gens)
    }

    /// Subgroup generated by the p^e-th powers of the elements of `h`.
    pub fn power_subgroup(&self, h: &[usize], exponent: u64) -> Vec<usize> {
        self.generated_subgroup(h.iter().map(|&x| self.pow(x, exponent)))
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&self.identity)
            && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        (0..self.order()).all(|g| {
            h.iter()
                .all(|&x| set.contains(&self.mul(self.mul(g, x), self.inv(g))))
        })
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }
}

fn named_family(f: &str, p: Option<usize>, n: Option<usize>, exps: Option<&[u32]>) -> Result<FiniteGroup> {
    let need = |x: Option<usize>, what: &str| {
        x.ok_or_else(|| Error::Format(format!("family {f} needs {what}")))
    };
    let prime = |x: usize| {
        if crate::exactlin::is_prime(x as u64) {
            Ok(x)
        } else {
            Err(Error::InvalidInput(format!("{x} is not prime")))
        }
    };
    match f {
        "trivial" => Ok(FiniteGroup::trivial()),
        "cyclic" => Ok(FiniteGroup::cyclic(need(n, "n")?.max(1))),
        "Zp_powers" => {
            let p = prime(need(p, "p")?)?;
            let e = exps.ok_or_else(|| Error::Format("Zp_powers needs exponents".into()))?;
            FiniteGroup::zp_powers(p, e)
        }
        "Zp_semidirect_Zp2" => Ok(FiniteGroup::zp_semidirect_zp2(prime(need(p, "p")?)?)),
        "dihedral" => Ok(FiniteGroup::dihedral(need(n, "n")?.max(1))),
        "symmetric" => FiniteGroup::symmetric(need(n, "n")?),
        "quaternion" => Ok(FiniteGroup::quaternion()),
        _ => Err(Error::Format(format!("unknown group family {f}"))),
    }
}

fn power_label(base: &str, k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => base.into(),
        _ => format!("{base}^{k}"),
    }
}

fn cycle_label(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut cyc = vec![s];
        seen[s] = true;
        let mut x = perm[s];
        while x != s {
            seen[x] = true;
            cyc.push(x);
            x = perm[x];
        }
        out.push_str(&format!(
            "({})",
            cyc.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
        ));
    }
    if out.is_empty() {
        "1".into()
    } else {
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    LowerCentral,
    PLowerCentral,
    DimensionSubgroups,
}

/// Descending chain; `terms[n-1]` is the n-th term and the last term repeats forever.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupSeries {
    pub kind: SeriesKind,
    pub terms: Vec<Vec<usize>>,
}

impl SubgroupSeries {
    /// n-th term, 1-based.
    pub fn term(&self, n: usize) -> &[usize] {
        assert!(n >= 1);
        &self.terms[(n - 1).min(self.terms.len() - 1)]
    }

    pub fn stable(&self) -> &[usize] {
        self.terms.last().unwrap()
    }

    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.len()).collect()
    }
}

pub fn lower_central_series(g: &FiniteGroup) -> SubgroupSeries {
    let mut terms = vec![g.all()];
    loop {
        let next = g.commutator_subgroup(&g.all(), terms.last().unwrap());
        if &next == terms.last().unwrap() {
            break;
        }
        terms.push(next);
    }
    SubgroupSeries {
        kind: SeriesKind::LowerCentral,
        terms,
    }
}

/// G_[n] = ⟨ (G_(k))^{p^ℓ} : k p^ℓ ≥ n ⟩, listed until it is constant.
pub fn p_lower_central_series(g: &FiniteGroup, p: usize) -> Result<SubgroupSeries> {
    if !crate::exactlin::is_prime(p as u64) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let lcs = lower_central_series(g);
    let c = lcs.terms.len();
    // powers[k-1][l] = (G_(k))^{p^l}, extended until constant in l
    let mut powers: Vec<Vec<Vec<usize>>> = Vec::new();
    for k in 1..=c {
        let mut chain = vec![lcs.term(k).to_vec()];
        loop {
            let e = (p as u64).pow(chain.len() as u32);
            let next = g.power_subgroup(lcs.term(k), e);
            if &next == chain.last().unwrap() {
                break;
            }
            chain.push(next);
        }
        powers.push(chain);
    }
    let horizon = (1..=c)
        .map(|k| k * p.pow(powers[k - 1].len() as u32))
        .max()
        .unwrap()
        .max(c)
        + 1;
    let term = |n: usize| {
        let mut gens = BTreeSet::new();
        gens.extend(lcs.term(n).iter().copied());
        for k in 1..=c.min(n) {
            let mut l = 0;
            while k * p.pow(l as u32) < n {
                l += 1;
            }
            let chain = &powers[k - 1];
            gens.extend(chain[l.min(chain.len() - 1)].iter().copied());
        }
        g.generated_subgroup(gens)
    };
    let mut terms: Vec<Vec<usize>> = (1..=horizon).map(term).collect();
    while terms.len() > 1 && terms[terms.len() - 1] == terms[terms.len() - 2] {
        terms.pop();
    }
    Ok(SubgroupSeries {
        kind: SeriesKind::PLowerCentral,
        terms,
    })
}

/// Ordered p-l.c.s. net: representatives of bases of G_[k]/G_[k+1], weight-ordered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JenningsNet {
    pub p: usize,
    /// (element, weight d(b)) in net order
    pub elements: Vec<(usize, usize)>,
}

impl JenningsNet {
    pub fn weight_of(&self, b: usize) -> Option<usize> {
        self.elements.iter().find(|e| e.0 == b).map(|e| e.1)
    }

    pub fn of_weight(&self, k: usize) -> Vec<usize> {
        self.elements
            .iter()
            .filter(|e| e.1 == k)
            .map(|e| e.0)
            .collect()
    }

    /// Poincaré polynomial coefficients Π (1 + x^d + … + x^{(p-1)d}).
    pub fn poincare(&self) -> Vec<usize> {
        let mut poly = vec![1usize];
        for &(_, d) in &self.elements {
            let mut next = vec![0; poly.len() + (self.p - 1) * d];
            for (i, &c) in poly.iter().enumerate() {
                for e in 0..self.p {
                    next[i + e * d] += c;
                }
            }
            poly = next;
        }
        poly
    }
}

/// Weight function d(g) = n for g ∈ G_[n] \ G_[n+1]; None on the stable term.
pub fn weight(series: &SubgroupSeries, g: usize) -> Option<usize> {
    let last = series.terms.len();
    (1..last).find(|&n| series.term(n).contains(&g) && !series.term(n + 1).contains(&g))
}

pub fn jennings_net(g: &FiniteGroup, p: usize) -> Result<JenningsNet> {
    let series = p_lower_central_series(g, p)?;
    let mut elements = Vec::new();
    for k in 1..series.terms.len() {
        let upper = series.term(k);
        let lower = series.term(k + 1);
        for &a in upper {
            for &b in upper {
                if !lower.contains(&g.commutator(a, b)) {
                    return Err(Error::InternalConsistency(format!(
                        "G_[{k}]/G_[{}] is not abelian",
                        k + 1
                    )));
                }
            }
            if !lower.contains(&g.pow(a, p as u64)) {
                return Err(Error::InternalConsistency(format!(
                    "G_[{k}]/G_[{}] has exponent above p",
                    k + 1
                )));
            }
        }
        let mut span = lower.to_vec();
        for &a in upper {
            if !span.contains(&a) {
                elements.push((a, k));
                span = g.generated_subgroup(span.iter().copied().chain([a]));
            }
        }
        if span.len() != upper.len() {
            return Err(Error::InternalConsistency(format!("net fails to span G_[{k}]")));
        }
    }
    Ok(JenningsNet { p, elements })
}

/// k[G] with basis the group elements.
pub fn build_group_algebra(g: &FiniteGroup, field: FieldSpec) -> HopfAlgebraData {
    let n = g.order();
    let one = field.one();
    let e = |i| SparseVector::unit(n, i, one.clone());
    let mult = (0..n * n).map(|x| e(g.mul(x / n, x % n))).collect();
    let comult = (0..n)
        .map(|i| SparseVector::unit(n * n, i * n + i, one.clone()))
        .collect();
    let antipode = LinearMap::from_fn(field, n, n, |i| e(g.inv(i)));
    HopfAlgebraData::validated(
        field,
        g.labels.clone(),
        mult,
        e(g.identity),
        comult,
        vec![one.clone(); n],
        Some(antipode),
    )
    .expect("group algebra shapes")
}

/// A_k(G) = k^G with basis the delta functions φ_g.
pub fn build_function_algebra(g: &FiniteGroup, field: FieldSpec) -> HopfAlgebraData {
    let n = g.order();
    let one = field.one();
    let e = |i| SparseVector::unit(n, i, one.clone());
    let mult = (0..n * n)
        .map(|x| {
            if x / n == x % n {
                e(x / n)
            } else {
                SparseVector::zero(n)
            }
        })
        .collect();
    let comult = (0..n)
        .map(|k| {
            SparseVector::from_entries(
                n * n,
                (0..n).map(|a| (a * n + g.mul(g.inv(a), k), one.clone())),
            )
        })
        .collect();
    let counit = (0..n)
        .map(|i| if i == g.identity { one.clone() } else { field.zero() })
        .collect();
    let antipode = LinearMap::from_fn(field, n, n, |i| e(g.inv(i)));
    HopfAlgebraData::validated(
        field,
        g.labels.iter().map(|l| format!("phi[{l}]")).collect(),
        mult,
        SparseVector::from_entries(n, (0..n).map(|i| (i, one.clone()))),
        comult,
        counit,
        Some(antipode),
    )
    .expect("function algebra shapes")
}

/// Finite monoid: associative table with a two-sided identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    pub labels: Vec<String>,
}

impl FiniteMonoid {
    pub fn new(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 || labels.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Format("monoid table malformed".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidInput("monoid table has no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidInput(format!(
                            "monoid table not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteMonoid {
            table,
            identity,
            labels,
        })
    }

    /// {1, e} with e² = e.
    pub fn idempotent() -> Self {
        FiniteMonoid::new(vec![vec![0, 1], vec![1, 1]], vec!["1".into(), "e".into()]).unwrap()
    }
}

/// Monoid bialgebra k[M]; no antipode is emitted.
pub fn build_monoid_bialgebra(m: &FiniteMonoid, field: FieldSpec) -> HopfAlgebraData {
    let n = m.table.len();
    let one = field.one();
    let e = |i| SparseVector::unit(n, i, one.clone());
    HopfAlgebraData::validated(
        field,
        m.labels.clone(),
        (0..n * n).map(|x| e(m.table[x / n][x % n])).collect(),
        e(m.identity),
        (0..n)
            .map(|i| SparseVector::unit(n * n, i * n + i, one.clone()))
            .collect(),
        vec![one.clone(); n],
        None,
    )
    .expect("monoid bialgebra shapes")
}

pub mod lie;
pub use lie::{build_restricted_enveloping, RestrictedEnveloping, RestrictedLieInput};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semidirect_relations() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let nu = g.index_of("nu").unwrap();
        let tau = g.index_of("tau").unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.pow(nu, 2), g.identity());
        assert_eq!(g.element_order(tau), 4);
        assert_eq!(g.mul(g.mul(nu, tau), g.inv(nu)), g.pow(tau, 3));
    }

    #[test]
    fn small_families() {
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::quaternion().order(), 8);
        assert!(!FiniteGroup::quaternion().is_abelian());
        assert_eq!(FiniteGroup::dihedral(4).order(), 8);
        assert_eq!(FiniteGroup::trivial().order(), 1);
        let s3 = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![0, 2, 1]], 3, 100).unwrap();
        assert_eq!(s3.order(), 6);
    }

    #[test]
    fn central_series() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let tau2 = g.index_of("tau^2").unwrap();
        let lcs = lower_central_series(&g);
        assert_eq!(lcs.term(2), &[g.identity(), tau2]);
        assert_eq!(lcs.term(3), &[g.identity()]);
        let ps = p_lower_central_series(&g, 2).unwrap();
        assert_eq!(ps.orders(), vec![8, 2, 1]);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(lower_central_series(&s3).orders(), vec![6, 3]);
        let z8 = FiniteGroup::cyclic(8);
        assert_eq!(p_lower_central_series(&z8, 2).unwrap().orders(), vec![8, 4, 2, 2, 1]);
    }

    #[test]
    fn nets() {
        let g = FiniteGroup::zp_semidirect_zp2(2);
        let net = jennings_net(&g, 2).unwrap();
        let names: Vec<_> = net.elements.iter().map(|&(b, d)| (g.label(b), d)).collect();
        assert_eq!(names, vec![("tau", 1), ("nu", 1), ("tau^2", 2)]);
        assert_eq!(net.poincare(), vec![1, 2, 2, 2, 1]);
        let e = FiniteGroup::zp_powers(3, &[1, 1]).unwrap();
        assert!(jennings_net(&e, 3).unwrap().of_weight(2).is_empty());
    }

    #[test]
    fn builders_validate() {
        let f = FieldSpec::gf(2);
        let g = FiniteGroup::zp_semidirect_zp2(2);
        assert!(build_group_algebra(&g, f).validate().all_passed());
        assert!(build_function_algebra(&g, f).validate().all_passed());
        let m = build_monoid_bialgebra(&FiniteMonoid::idempotent(), f);
        let r = m.validate();
        assert!(r.flags.is_bialgebra && !r.flags.has_antipode);
    }

    #[test]
    fn function_algebra_of_z2_has_a_primitive_in_char_2() {
        let a = build_function_algebra(&FiniteGroup::cyclic(2), FieldSpec::gf(2));
        assert_eq!(a.primitives().dim(), 1);
    }
}
