//! The coend `R = K^∨ ⊗^{dwBr} (P′ ⊗ det)` degree by degree, the Albanese
//! spaces `W_i`, and Kan extensions along the downward inclusion.
//!
//! A class in `K^∨(p,q) ⊗_{Σ_p×Σ_q} (P′⊗det)(p,q)` is stored by its canonical
//! key: the multiset of blocks `(label index, sorted covariant indices)`.
//! Relations and classes are homogeneous for the diagonal torus, so each
//! weight space is solved on its own; weights in one `Σ_n`-orbit have the
//! same dimension and only dominant ones are solved for dimension counts.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{gl_dimension, multiplicities};
use crate::combinatorics::{
    enumerate_strict_partitions, multisets, sequence_sign, subsets, Bipartition, FiniteSetPair,
    LabeledPartition, Part,
};
use crate::error::{Error, Result};
use crate::guard::{binomial, Limits};
use crate::linalg::{quotient_from_echelon, Echelon, Quotient, Rational, SparseVec};
use crate::partition::kan_decompose;
use crate::tensor_rep::{decomposition_check_with, traceless_with, TensorSpace};

/// Torus weight: label multiplicities minus index multiplicities.
pub type Weight = Vec<i32>;

/// Canonical form of a class: blocks encoded as `[label+1 or 0, size, indices…]`,
/// concatenated in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey(Vec<u8>);

/// One block of a decoded class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassBlock {
    pub label: Option<u8>,
    pub indices: Vec<u8>,
}

impl ClassKey {
    pub fn blocks(&self) -> Vec<ClassBlock> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let label = self.0[i].checked_sub(1);
            let len = self.0[i + 1] as usize;
            out.push(ClassBlock {
                label,
                indices: self.0[i + 2..i + 2 + len].to_vec(),
            });
            i += 2 + len;
        }
        out
    }

    pub fn shape(&self) -> (usize, usize) {
        self.blocks().iter().fold((0, 0), |(p, q), b| {
            (p + b.indices.len(), q + usize::from(b.label.is_some()))
        })
    }

    pub fn weight(&self, n: usize) -> Weight {
        let mut w = vec![0; n];
        for b in self.blocks() {
            if let Some(l) = b.label {
                w[l as usize] += 1;
            }
            for &i in &b.indices {
                w[i as usize] -= 1;
            }
        }
        w
    }

    /// Canonical representative `(I, J, P)` of the class.
    pub fn representative(&self) -> (Vec<u8>, Vec<u8>, Vec<Part>) {
        let mut cov = Vec::new();
        let mut con = Vec::new();
        let mut parts = Vec::new();
        for b in self.blocks() {
            let start = cov.len();
            cov.extend(&b.indices);
            let label = b.label.map(|l| {
                con.push(l);
                con.len() - 1
            });
            parts.push(Part {
                block: (start..cov.len()).collect(),
                label,
            });
        }
        (cov, con, parts)
    }
}

/// 1-based, e.g. `[12;3|4;·]` for blocks `{e₁^#,e₂^#} ↦ e₃` and `{e₄^#}`.
impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let idx: String = b
                    .indices
                    .iter()
                    .map(|i| (i + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let label = b.label.map_or("·".to_string(), |l| (l + 1).to_string());
                format!("{idx};{label}")
            })
            .collect();
        write!(f, "[{}]", body.join("|"))
    }
}

fn encode_block(label: Option<u8>, indices: &[u8]) -> Vec<u8> {
    let mut e = Vec::with_capacity(indices.len() + 2);
    e.push(label.map_or(0, |l| l + 1));
    e.push(indices.len() as u8);
    e.extend_from_slice(indices);
    e
}

/// Whether two equal copies of this block may coexist without forcing the
/// class to vanish.
fn may_repeat(labeled: bool, size: usize) -> bool {
    size.is_multiple_of(2) != labeled
}

/// `[(I, J, P)] = ±[canonical]`, or `None` when the class is zero in the
/// coinvariants.
pub fn canonicalize(cov: &[u8], con: &[u8], parts: &[Part]) -> Option<(ClassKey, i8)> {
    let mut blocks: Vec<(Vec<u8>, Vec<usize>, Option<usize>)> = Vec::with_capacity(parts.len());
    for part in parts {
        let mut atoms = part.block.clone();
        atoms.sort_by_key(|&a| cov[a]);
        if atoms.windows(2).any(|w| cov[w[0]] == cov[w[1]]) {
            return None;
        }
        let indices: Vec<u8> = atoms.iter().map(|&a| cov[a]).collect();
        let enc = encode_block(part.label.map(|l| con[l]), &indices);
        blocks.push((enc, atoms, part.label));
    }
    blocks.sort_by(|a, b| a.0.cmp(&b.0));
    for w in blocks.windows(2) {
        if w[0].0 == w[1].0 && !may_repeat(w[0].2.is_some(), w[0].1.len()) {
            return None;
        }
    }
    let cov_order: Vec<usize> = blocks.iter().flat_map(|b| b.1.iter().copied()).collect();
    let con_order: Vec<usize> = blocks.iter().filter_map(|b| b.2).collect();
    let sign = sequence_sign(&cov_order) * sequence_sign(&con_order);
    let key = ClassKey(blocks.into_iter().flat_map(|b| b.0).collect());
    Some((key, sign))
}

/// Canonical class of `(I, J, P)` for a labeled partition.
pub fn class_of(cov: &[u8], con: &[u8], lp: &LabeledPartition) -> Option<(ClassKey, i8)> {
    canonicalize(cov, con, lp.parts())
}

/// Skeleton objects `(p, q)` with `p − q = degree` and `p ≥ 2q`.
pub fn skeleton(degree: usize) -> Vec<(usize, usize)> {
    (degree..=2 * degree).map(|p| (p, p - degree)).collect()
}

/// All nonzero canonical classes of shape `(p, q)` for the given `n`.
pub fn enumerate_classes(p: usize, q: usize, n: usize) -> Vec<ClassKey> {
    let mut candidates: Vec<(Vec<u8>, usize, bool)> = Vec::new();
    for size in 1..=p {
        for idx in subsets(n, size) {
            let idx: Vec<u8> = idx.into_iter().map(|i| i as u8).collect();
            candidates.push((encode_block(None, &idx), size, false));
            if size >= 2 {
                for l in 0..n as u8 {
                    candidates.push((encode_block(Some(l), &idx), size, true));
                }
            }
        }
    }
    candidates.sort();
    let mut out = Vec::new();
    let mut current: Vec<u8> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        candidates: &[(Vec<u8>, usize, bool)],
        start: usize,
        p_left: usize,
        q_left: usize,
        current: &mut Vec<u8>,
        out: &mut Vec<ClassKey>,
    ) {
        if p_left == 0 {
            if q_left == 0 {
                out.push(ClassKey(current.clone()));
            }
            return;
        }
        for c in start..candidates.len() {
            let (enc, size, labeled) = &candidates[c];
            if *size > p_left || (*labeled && q_left == 0) {
                continue;
            }
            // Labeled blocks have size ≥ 2, so the remaining labels need room.
            let q_next = q_left - usize::from(*labeled);
            if 2 * q_next > p_left - size {
                continue;
            }
            let len = current.len();
            current.extend_from_slice(enc);
            let next = if may_repeat(*labeled, *size) { c } else { c + 1 };
            rec(candidates, next, p_left - size, q_next, current, out);
            current.truncate(len);
        }
    }
    rec(&candidates, 0, p, q, &mut current, &mut out);
    out
}

/// Contract the last covariant and last contravariant positions of a strict
/// partition. The wedge-word sign of this contraction is `+1`.
fn contract_last(lp: &LabeledPartition) -> LabeledPartition {
    let (p, q) = (lp.p(), lp.q());
    let x = p - 1;
    let y = q - 1;
    let i = lp.part_of(x);
    let j = lp.part_labeled(y);
    let mut parts: Vec<Part> = Vec::new();
    for (k, part) in lp.parts().iter().enumerate() {
        if k != i && k != j {
            parts.push(part.clone());
        }
    }
    let rest: Vec<usize> = lp.parts()[i].block.iter().copied().filter(|&a| a != x).collect();
    if i == j {
        parts.push(Part {
            block: rest,
            label: None,
        });
    } else {
        let mut block = rest;
        block.extend(lp.parts()[j].block.iter().copied());
        parts.push(Part {
            block,
            label: lp.parts()[i].label,
        });
    }
    LabeledPartition::new(p - 1, q - 1, parts).expect("contraction of a strict partition")
}

fn weight_of(cov: &[u8], con: &[u8], n: usize) -> Weight {
    let mut w = vec![0; n];
    for &j in con {
        w[j as usize] += 1;
    }
    for &i in cov {
        w[i as usize] -= 1;
    }
    w
}

pub(crate) fn is_dominant(w: &[i32]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

pub(crate) fn orbit_size(w: &[i32]) -> u64 {
    let mut counts: BTreeMap<i32, u64> = BTreeMap::new();
    for &x in w {
        *counts.entry(x).or_default() += 1;
    }
    let fact = |k: u64| (1..=k).product::<u64>();
    counts.values().fold(fact(w.len() as u64), |acc, &m| acc / fact(m))
}

/// Which weight spaces to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightFilter {
    Dominant,
    All,
}

/// One solved weight space of `R_d`.
#[derive(Clone, Debug)]
pub struct WeightBlock {
    pub weight: Weight,
    pub classes: Vec<ClassKey>,
    index: HashMap<ClassKey, usize>,
    quotient: Quotient,
}

impl WeightBlock {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn relation_rank(&self) -> usize {
        self.quotient.relation_rank()
    }

    pub fn representatives(&self) -> Vec<ClassKey> {
        self.quotient
            .representatives()
            .iter()
            .map(|&c| self.classes[c].clone())
            .collect()
    }

    /// Coordinates of a combination of classes on the representatives.
    pub fn reduce(&self, v: &BTreeMap<ClassKey, Rational>) -> SparseVec {
        let local: SparseVec = v
            .iter()
            .map(|(k, c)| {
                let i = *self
                    .index
                    .get(k)
                    .unwrap_or_else(|| panic!("class {k} outside weight block"));
                (i, c.clone())
            })
            .collect();
        self.quotient.reduce(&local)
    }
}

/// The degree-`d` piece of the coend at fixed `n`, solved on a set of weights.
#[derive(Clone, Debug)]
pub struct CoendDegree {
    pub n: usize,
    pub degree: usize,
    pub blocks: BTreeMap<Weight, WeightBlock>,
}

impl CoendDegree {
    pub fn build(n: usize, degree: usize, filter: WeightFilter, limits: &Limits) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid("the coend needs n ≥ 2".into()));
        }
        let objects = skeleton(degree);
        let mut estimate: u128 = 0;
        for &(p, q) in &objects {
            if q > 0 {
                estimate += binomial((n + p - 2) as u128, (p - 1) as u128)
                    * binomial((n + q - 2) as u128, (q - 1) as u128)
                    * enumerate_strict_partitions(p, q).len() as u128;
            }
        }
        limits.check_wedge(&format!("coend relations at n={n}, degree {degree}"), estimate)?;

        let mut classes_by_weight: BTreeMap<Weight, Vec<ClassKey>> = BTreeMap::new();
        for &(p, q) in &objects {
            for key in enumerate_classes(p, q, n) {
                let w = key.weight(n);
                if filter == WeightFilter::All || is_dominant(&w) {
                    classes_by_weight.entry(w).or_default().push(key);
                }
            }
        }
        let mut rows_by_weight: BTreeMap<Weight, Vec<BTreeMap<ClassKey, i64>>> = BTreeMap::new();
        for &(p, q) in &objects {
            if q == 0 {
                continue;
            }
            let strict = enumerate_strict_partitions(p, q);
            let lowered: Vec<LabeledPartition> = strict.iter().map(contract_last).collect();
            for i0 in multisets(n, p - 1) {
                let i0: Vec<u8> = i0.into_iter().map(|i| i as u8).collect();
                for j0 in multisets(n, q - 1) {
                    let j0: Vec<u8> = j0.into_iter().map(|j| j as u8).collect();
                    let w = weight_of(&i0, &j0, n);
                    if !classes_by_weight.contains_key(&w) {
                        continue;
                    }
                    for (lp, low) in strict.iter().zip(&lowered) {
                        let mut row: BTreeMap<ClassKey, i64> = BTreeMap::new();
                        let mut cov = i0.clone();
                        cov.push(0);
                        let mut con = j0.clone();
                        con.push(0);
                        for i in 0..n as u8 {
                            cov[p - 1] = i;
                            con[q - 1] = i;
                            if let Some((k, s)) = class_of(&cov, &con, lp) {
                                *row.entry(k).or_default() += i64::from(s);
                            }
                        }
                        if let Some((k, s)) = class_of(&i0, &j0, low) {
                            *row.entry(k).or_default() -= i64::from(s);
                        }
                        row.retain(|_, v| *v != 0);
                        if !row.is_empty() {
                            rows_by_weight.entry(w.clone()).or_default().push(row);
                        }
                    }
                }
            }
        }
        let work: Vec<(Weight, Vec<ClassKey>, Vec<BTreeMap<ClassKey, i64>>)> = classes_by_weight
            .into_iter()
            .map(|(w, classes)| {
                let rows = rows_by_weight.remove(&w).unwrap_or_default();
                (w, classes, rows)
            })
            .collect();
        let blocks = work
            .into_par_iter()
            .map(|(weight, classes, rows)| {
                let index: HashMap<ClassKey, usize> =
                    classes.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
                let mut echelon = Echelon::new(classes.len());
                for row in rows {
                    let local: Vec<(usize, i64)> = row
                        .into_iter()
                        .map(|(k, v)| (index[&k], v))
                        .collect();
                    echelon.insert_i64(&local);
                }
                let block = WeightBlock {
                    weight: weight.clone(),
                    classes,
                    index,
                    quotient: quotient_from_echelon(echelon),
                };
                (weight, block)
            })
            .collect();
        Ok(CoendDegree { n, degree, blocks })
    }

    pub fn block(&self, w: &Weight) -> Option<&WeightBlock> {
        self.blocks.get(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSummary {
    pub weight: Weight,
    pub orbit: u64,
    pub ambient: usize,
    pub relation_rank: usize,
    pub dim: usize,
}

/// Dimension data for `R_d` at fixed `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoendPresentation {
    pub n: usize,
    pub degree: usize,
    pub objects: Vec<(usize, usize)>,
    pub ambient_dim: u64,
    pub relation_rank: u64,
    pub dim: u64,
    pub weights: Vec<WeightSummary>,
}

pub fn compute_r(n: usize, degree: usize) -> Result<CoendPresentation> {
    compute_r_with(n, degree, &Limits::from_env())
}

pub fn compute_r_with(n: usize, degree: usize, limits: &Limits) -> Result<CoendPresentation> {
    let solved = CoendDegree::build(n, degree, WeightFilter::Dominant, limits)?;
    Ok(summarize(&solved))
}

pub fn summarize(solved: &CoendDegree) -> CoendPresentation {
    let weights: Vec<WeightSummary> = solved
        .blocks
        .values()
        .map(|b| WeightSummary {
            weight: b.weight.clone(),
            orbit: orbit_size(&b.weight),
            ambient: b.classes.len(),
            relation_rank: b.relation_rank(),
            dim: b.dim(),
        })
        .collect();
    let total = |f: fn(&WeightSummary) -> usize| {
        weights.iter().map(|w| w.orbit * f(w) as u64).sum::<u64>()
    };
    CoendPresentation {
        n: solved.n,
        degree: solved.degree,
        objects: skeleton(solved.degree),
        ambient_dim: total(|w| w.ambient),
        relation_rank: total(|w| w.relation_rank),
        dim: total(|w| w.dim),
        weights,
    }
}

/// A homogeneous element of `R`, written on representative classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub degree: usize,
    pub terms: BTreeMap<ClassKey, Rational>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> RingElement {
        RingElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }
}

/// The coend ring at fixed `n`, with degrees solved on demand on all weights.
#[derive(Debug)]
pub struct CoendRing {
    n: usize,
    limits: Limits,
    degrees: HashMap<usize, CoendDegree>,
}

impl CoendRing {
    pub fn new(n: usize) -> Self {
        CoendRing::with_limits(n, Limits::from_env())
    }

    pub fn with_limits(n: usize, limits: Limits) -> Self {
        CoendRing {
            n,
            limits,
            degrees: HashMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&mut self, d: usize) -> Result<&CoendDegree> {
        if !self.degrees.contains_key(&d) {
            let solved = CoendDegree::build(self.n, d, WeightFilter::All, &self.limits)?;
            self.degrees.insert(d, solved);
        }
        Ok(&self.degrees[&d])
    }

    pub fn one(&mut self) -> Result<RingElement> {
        self.class(&ClassKey(Vec::new()))
    }

    /// The element of a single class, reduced.
    pub fn class(&mut self, key: &ClassKey) -> Result<RingElement> {
        let (p, q) = key.shape();
        let mut v = BTreeMap::new();
        v.insert(key.clone(), Rational::one());
        self.reduce(p - q, &v)
    }

    /// Reduce a combination of degree-`d` classes to representatives.
    pub fn reduce(&mut self, d: usize, v: &BTreeMap<ClassKey, Rational>) -> Result<RingElement> {
        let n = self.n;
        let solved = self.degree(d)?;
        let mut by_weight: BTreeMap<Weight, BTreeMap<ClassKey, Rational>> = BTreeMap::new();
        for (k, c) in v {
            by_weight.entry(k.weight(n)).or_default().insert(k.clone(), c.clone());
        }
        let mut terms = BTreeMap::new();
        for (w, part) in by_weight {
            let block = solved
                .block(&w)
                .ok_or_else(|| Error::Invalid(format!("weight {w:?} not in degree {d}")))?;
            let reps = block.quotient.representatives();
            for (i, c) in block.reduce(&part) {
                terms.insert(block.classes[reps[i]].clone(), c);
            }
        }
        Ok(RingElement { degree: d, terms })
    }

    /// Basis of `R_d` as representative classes.
    pub fn basis(&mut self, d: usize) -> Result<Vec<ClassKey>> {
        Ok(self
            .degree(d)?
            .blocks
            .values()
            .flat_map(|b| b.representatives())
            .collect())
    }

    pub fn multiply(&mut self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        let mut acc: BTreeMap<ClassKey, Rational> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                if let Some((k, s)) = product_class(ka, kb) {
                    let entry = acc.entry(k).or_insert_with(Rational::zero);
                    *entry += ca * cb * Rational::from_integer(s.into());
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        self.reduce(a.degree + b.degree, &acc)
    }
}

/// `ring_multiply` on a ring context.
pub fn ring_multiply(a: &RingElement, b: &RingElement, ring: &mut CoendRing) -> Result<RingElement> {
    ring.multiply(a, b)
}

/// Class of the concatenation of two classes, with the wedge-word sign.
pub fn product_class(a: &ClassKey, b: &ClassKey) -> Option<(ClassKey, i8)> {
    let (mut cov, mut con, mut parts) = a.representative();
    let (p1, q1) = (cov.len(), con.len());
    let (cov_b, con_b, parts_b) = b.representative();
    let p2 = cov_b.len();
    cov.extend(cov_b);
    con.extend(con_b);
    parts.extend(parts_b.into_iter().map(|part| Part {
        block: part.block.iter().map(|&x| x + p1).collect(),
        label: part.label.map(|l| l + q1),
    }));
    let (key, sign) = canonicalize(&cov, &con, &parts)?;
    let koszul = if (q1 * p2) % 2 == 0 { 1 } else { -1 };
    Some((key, sign * koszul))
}

/// `W_i(n)` with its predicted irreducible content.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlbaneseReport {
    pub i: usize,
    pub n: usize,
    pub dim: usize,
    pub content: BTreeMap<String, u64>,
    pub predicted_dim: String,
    pub matches: bool,
}

/// `⊕_{p−q=i} K°_{p,q}(n) ⊗_{Σ_p×Σ_q} (P′⊗det)(p,q)`, by rank of the images
/// of traceless tensors in the class space.
pub fn compute_w(i: usize, n: usize) -> Result<AlbaneseReport> {
    compute_w_with(i, n, &Limits::from_env())
}

pub fn compute_w_with(i: usize, n: usize, limits: &Limits) -> Result<AlbaneseReport> {
    if i == 0 {
        return Err(Error::Invalid("W_i needs i ≥ 1".into()));
    }
    let mut dim = 0;
    let mut content: BTreeMap<Bipartition, u64> = BTreeMap::new();
    for (p, q) in skeleton(i) {
        let space = TensorSpace::new(p, q, n);
        let basis = traceless_with(p, q, n, limits)?;
        let strict = enumerate_strict_partitions(p, q);
        let mut classes: HashMap<ClassKey, usize> = HashMap::new();
        let mut echelon_rows: Vec<SparseVec> = Vec::new();
        for v in &basis {
            for lp in &strict {
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                for (word, c) in v {
                    let w = space.decode(*word);
                    let cov: Vec<u8> = w[..p].iter().map(|&x| x as u8).collect();
                    let con: Vec<u8> = w[p..].iter().map(|&x| x as u8).collect();
                    if let Some((k, s)) = class_of(&cov, &con, lp) {
                        let next = classes.len();
                        let col = *classes.entry(k).or_insert(next);
                        *row.entry(col).or_insert_with(Rational::zero) +=
                            c * Rational::from_integer(s.into());
                    }
                }
                echelon_rows.push(row.into_iter().filter(|(_, x)| !x.is_zero()).collect());
            }
        }
        let mut echelon = Echelon::new(classes.len());
        for row in &echelon_rows {
            echelon.insert(row);
        }
        dim += echelon.rank();
        for (b, m) in multiplicities(p, q)?.entries {
            *content.entry(b).or_default() += m;
        }
    }
    let predicted: BigInt = content
        .iter()
        .map(|(b, &m)| gl_dimension(b, n) * BigInt::from(m))
        .sum();
    Ok(AlbaneseReport {
        i,
        n,
        dim,
        matches: predicted == BigInt::from(dim),
        predicted_dim: predicted.to_string(),
        content: content.into_iter().map(|(b, m)| (b.to_string(), m)).collect(),
    })
}

/// Functor on the downward category to extend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KanSource {
    StrictPartitions,
    Traceless { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanTerm {
    pub kept_cov: Vec<usize>,
    pub kept_con: Vec<usize>,
    pub matchings: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanExtension {
    pub shape: (usize, usize),
    pub source: KanSource,
    pub terms: Vec<KanTerm>,
    pub total: usize,
    pub target_dim: usize,
    pub image_rank: usize,
    pub surjective: bool,
    pub injective: bool,
}

/// `i_*(A)(S) = ⊕_{I ⊆ S} Q[M(S∖I)] ⊗ A(I)` and the comparison map to the
/// functor on the full category.
pub fn kan_extend(source: KanSource, s: &FiniteSetPair) -> Result<KanExtension> {
    kan_extend_with(source, s, &Limits::from_env())
}

pub fn kan_extend_with(source: KanSource, s: &FiniteSetPair, limits: &Limits) -> Result<KanExtension> {
    let (p, q) = s.shape();
    match source {
        KanSource::StrictPartitions => {
            let d = kan_decompose(p, q);
            let terms = d
                .summands
                .iter()
                .map(|t| KanTerm {
                    kept_cov: t.kept_cov.clone(),
                    kept_con: t.kept_con.clone(),
                    matchings: t.matchings,
                    dim: t.strict_partitions,
                })
                .collect();
            Ok(KanExtension {
                shape: (p, q),
                source,
                terms,
                total: d.total,
                target_dim: d.partitions,
                image_rank: if d.bijective { d.partitions } else { 0 },
                surjective: d.bijective,
                injective: d.bijective,
            })
        }
        KanSource::Traceless { n } => {
            let r = decomposition_check_with(s, n, limits)?;
            let mut terms: Vec<KanTerm> = Vec::new();
            for summand in &r.summands {
                match terms
                    .iter_mut()
                    .find(|t| t.kept_cov == summand.kept_cov && t.kept_con == summand.kept_con)
                {
                    Some(t) => t.matchings += 1,
                    None => terms.push(KanTerm {
                        kept_cov: summand.kept_cov.clone(),
                        kept_con: summand.kept_con.clone(),
                        matchings: 1,
                        dim: summand.dim,
                    }),
                }
            }
            Ok(KanExtension {
                shape: (p, q),
                source,
                terms,
                total: r.summand_sum,
                target_dim: r.total,
                image_rank: r.image_rank,
                surjective: r.image_rank == r.total,
                injective: r.image_rank == r.summand_sum,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn key(cov: &[u8], con: &[u8], lp: &str) -> Option<(ClassKey, i8)> {
        class_of(cov, con, &lp.parse().unwrap())
    }

    #[test]
    fn repeated_index_in_a_block_vanishes() {
        assert!(key(&[0, 0], &[1], "{1,2;1}").is_none());
        assert!(key(&[0, 1], &[1], "{1,2;1}").is_some());
    }

    #[test]
    fn swapping_inside_a_block_flips_sign() {
        let (a, s) = key(&[0, 1], &[2], "{1,2;1}").unwrap();
        let (b, t) = key(&[1, 0], &[2], "{1,2;1}").unwrap();
        assert_eq!(a, b);
        assert_eq!(s, -t);
    }

    #[test]
    fn identical_odd_unlabeled_blocks_vanish() {
        assert!(key(&[0, 0], &[], "{1;·|2;·}").is_none());
        assert!(key(&[0, 1], &[], "{1;·|2;·}").is_some());
    }

    #[test]
    fn enumeration_matches_canonicalization() {
        for (p, q) in [(2, 0), (3, 1), (4, 2), (2, 1)] {
            let n: usize = 3;
            let mut seen = std::collections::BTreeSet::new();
            for lp in enumerate_strict_partitions(p, q) {
                for c in 0..n.pow(p as u32) {
                    let cov: Vec<u8> = (0..p).map(|k| ((c / n.pow(k as u32)) % n) as u8).collect();
                    for d in 0..n.pow(q as u32) {
                        let con: Vec<u8> = (0..q).map(|k| ((d / n.pow(k as u32)) % n) as u8).collect();
                        if let Some((k, _)) = class_of(&cov, &con, &lp) {
                            seen.insert(k);
                        }
                    }
                }
            }
            let listed: std::collections::BTreeSet<_> = enumerate_classes(p, q, n).into_iter().collect();
            assert_eq!(seen, listed, "shape ({p},{q})");
        }
    }

    #[test]
    fn low_degree_dimensions() {
        assert_eq!(compute_r(3, 0).unwrap().dim, 1);
        assert_eq!(compute_r(3, 1).unwrap().dim, 9);
        assert_eq!(compute_r(4, 1).unwrap().dim, 24);
        assert_eq!(compute_r(3, 2).unwrap().dim, 18);
    }

    #[test]
    fn unit_and_commutativity() {
        let mut ring = CoendRing::new(3);
        let one = ring.one().unwrap();
        let basis = ring.basis(1).unwrap();
        let a = ring.class(&basis[0]).unwrap();
        let b = ring.class(&basis[5]).unwrap();
        assert_eq!(ring.multiply(&one, &a).unwrap(), a);
        let ab = ring.multiply(&a, &b).unwrap();
        let ba = ring.multiply(&b, &a).unwrap();
        assert_eq!(ab, ba.scale(&rat(-1)));
    }

    #[test]
    fn albanese_degree_one() {
        let r = compute_w(1, 3).unwrap();
        assert_eq!(r.dim, 9);
        assert!(r.matches);
    }

    #[test]
    fn kan_examples() {
        let k = kan_extend(KanSource::StrictPartitions, &FiniteSetPair::standard(2, 1)).unwrap();
        assert_eq!(k.total, 3);
        let k = kan_extend(KanSource::Traceless { n: 3 }, &FiniteSetPair::standard(1, 1)).unwrap();
        assert_eq!((k.total, k.target_dim), (9, 9));
        assert!(k.surjective && k.injective);
        let k = kan_extend(KanSource::Traceless { n: 1 }, &FiniteSetPair::standard(1, 1)).unwrap();
        assert!(k.surjective);
    }
}
