//! Finite set pairs, matchings, permutations with sign, labeled partitions and
//! their enumeration.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// An opaque atom name. Only equality and order matter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Atom(pub u32);

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An object of the walled Brauer category: a covariant list and a
/// contravariant list of atoms, all distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteSetPair {
    cov: Vec<Atom>,
    con: Vec<Atom>,
}

impl FiniteSetPair {
    pub fn new(cov: Vec<Atom>, con: Vec<Atom>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for a in cov.iter().chain(con.iter()) {
            if !seen.insert(*a) {
                return Err(Error::AtomCollision(format!("atom {a} occurs twice")));
            }
        }
        Ok(FiniteSetPair { cov, con })
    }

    /// `([1..p], [p+1..p+q])`.
    pub fn standard(p: usize, q: usize) -> Self {
        let cov = (1..=p as u32).map(Atom).collect();
        let con = (p as u32 + 1..=(p + q) as u32).map(Atom).collect();
        FiniteSetPair { cov, con }
    }

    pub fn empty() -> Self {
        FiniteSetPair::standard(0, 0)
    }

    pub fn cov(&self) -> &[Atom] {
        &self.cov
    }

    pub fn con(&self) -> &[Atom] {
        &self.con
    }

    pub fn p(&self) -> usize {
        self.cov.len()
    }

    pub fn q(&self) -> usize {
        self.con.len()
    }

    pub fn size(&self) -> usize {
        self.p() + self.q()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.p(), self.q())
    }

    pub fn max_atom(&self) -> Option<Atom> {
        self.cov.iter().chain(self.con.iter()).max().copied()
    }

    fn contains(&self, a: Atom) -> bool {
        self.cov.contains(&a) || self.con.contains(&a)
    }

    /// `self ⊔ other`. Atoms of `other` that collide are renamed past the
    /// largest atom in use; the renaming is returned.
    pub fn disjoint_union(&self, other: &FiniteSetPair) -> (FiniteSetPair, Vec<(Atom, Atom)>) {
        let collides = other
            .cov
            .iter()
            .chain(other.con.iter())
            .any(|a| self.contains(*a));
        let mut renaming = Vec::new();
        let mut rename = |a: Atom| -> Atom {
            if !collides {
                return a;
            }
            let base = self.max_atom().map_or(0, |m| m.0) + 1;
            let fresh = Atom(base + a.0);
            renaming.push((a, fresh));
            fresh
        };
        let ocov: Vec<Atom> = other.cov.iter().map(|a| rename(*a)).collect();
        let ocon: Vec<Atom> = other.con.iter().map(|a| rename(*a)).collect();
        let mut cov = self.cov.clone();
        cov.extend(ocov);
        let mut con = self.con.clone();
        con.extend(ocon);
        (FiniteSetPair { cov, con }, renaming)
    }

    /// Drop the covariant atom at `i` and the contravariant atom at `j`.
    pub fn without(&self, i: usize, j: usize) -> FiniteSetPair {
        let mut cov = self.cov.clone();
        cov.remove(i);
        let mut con = self.con.clone();
        con.remove(j);
        FiniteSetPair { cov, con }
    }

    /// Append a covariant and a contravariant atom.
    pub fn with(&self, x: Atom, y: Atom) -> Result<FiniteSetPair> {
        let mut cov = self.cov.clone();
        cov.push(x);
        let mut con = self.con.clone();
        con.push(y);
        FiniteSetPair::new(cov, con)
    }

    /// Fresh atoms not used by `self`.
    pub fn fresh_pair(&self) -> (Atom, Atom) {
        let m = self.max_atom().map_or(0, |a| a.0);
        (Atom(m + 1), Atom(m + 2))
    }
}

impl fmt::Display for FiniteSetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Atom]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.cov), join(&self.con))
    }
}

/// A bijection between the covariant and contravariant positions of a
/// balanced set pair: `pairs[k] = (cov position, con position)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BipartiteMatching {
    pub pairs: Vec<(usize, usize)>,
}

/// All `k!` matchings between `k` covariant and `k` contravariant positions,
/// in lexicographic order of the contravariant images.
pub fn enumerate_matchings(k: usize) -> Vec<BipartiteMatching> {
    permutations(k)
        .into_iter()
        .map(|perm| BipartiteMatching {
            pairs: perm.into_iter().enumerate().collect(),
        })
        .collect()
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        if !next_permutation(&mut current) {
            return out;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A permutation of `0..k` given by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPermutation {
    images: Vec<usize>,
}

impl SignedPermutation {
    pub fn identity(k: usize) -> Self {
        SignedPermutation {
            images: (0..k).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(SignedPermutation { images })
    }

    /// The permutation taking `from[i]` to the position of the same atom in `to`.
    pub fn between(from: &[Atom], to: &[Atom]) -> Result<Self> {
        if from.len() != to.len() {
            return Err(Error::SizeMismatch {
                left: from.len(),
                right: to.len(),
            });
        }
        let images = from
            .iter()
            .map(|a| {
                to.iter()
                    .position(|b| b == a)
                    .ok_or_else(|| Error::Invalid(format!("atom {a} missing")))
            })
            .collect::<Result<Vec<_>>>()?;
        SignedPermutation::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        SignedPermutation { images: inv }
    }

    pub fn sign(&self) -> i8 {
        sequence_sign(&self.images)
    }
}

/// Sign of the permutation sorting a sequence of distinct keys.
pub fn sequence_sign<T: Ord>(seq: &[T]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// One part of a labeled partition: a block of covariant positions with an
/// optional contravariant label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Part {
    pub block: Vec<usize>,
    pub label: Option<usize>,
}

/// A partition of the covariant positions `0..p` with an injective labeling
/// of some parts by the contravariant positions `0..q`. Every contravariant
/// position is used exactly once.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LabeledPartition {
    p: usize,
    q: usize,
    parts: Vec<Part>,
}

impl LabeledPartition {
    pub fn new(p: usize, q: usize, parts: Vec<Part>) -> Result<Self> {
        let mut cov_seen = vec![false; p];
        let mut con_seen = vec![false; q];
        for part in &parts {
            if part.block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &i in &part.block {
                if i >= p || std::mem::replace(&mut cov_seen[i], true) {
                    return Err(Error::Invalid(format!("bad covariant position {i}")));
                }
            }
            if let Some(l) = part.label {
                if l >= q || std::mem::replace(&mut con_seen[l], true) {
                    return Err(Error::Invalid(format!("bad label {l}")));
                }
            }
        }
        if cov_seen.iter().any(|s| !s) || con_seen.iter().any(|s| !s) {
            return Err(Error::Invalid("partition does not cover the set pair".into()));
        }
        Ok(Self::from_parts_unchecked(p, q, parts))
    }

    pub(crate) fn from_parts_unchecked(p: usize, q: usize, mut parts: Vec<Part>) -> Self {
        for part in &mut parts {
            part.block.sort_unstable();
        }
        parts.sort_by_key(|part| part.block[0]);
        LabeledPartition { p, q, parts }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    /// No labeled singletons.
    pub fn is_strict(&self) -> bool {
        !self
            .parts
            .iter()
            .any(|part| part.label.is_some() && part.block.len() == 1)
    }

    pub fn part_of(&self, cov: usize) -> usize {
        self.parts
            .iter()
            .position(|part| part.block.contains(&cov))
            .expect("position in range")
    }

    pub fn part_labeled(&self, con: usize) -> usize {
        self.parts
            .iter()
            .position(|part| part.label == Some(con))
            .expect("label in range")
    }

    /// Render with atom names from `pair`, e.g. `{1,2;4|3;·}`.
    pub fn render(&self, pair: &FiniteSetPair) -> String {
        let body: Vec<String> = self
            .parts
            .iter()
            .map(|part| {
                let block: Vec<String> =
                    part.block.iter().map(|&i| pair.cov()[i].to_string()).collect();
                let label = part
                    .label
                    .map_or("·".to_string(), |l| pair.con()[l].to_string());
                format!("{};{}", block.join(","), label)
            })
            .collect();
        format!("{{{}}}", body.join("|"))
    }
}

/// 1-based positions: `{1,2;1|3;·}`.
impl fmt::Display for LabeledPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .parts
            .iter()
            .map(|part| {
                let block: Vec<String> = part.block.iter().map(|i| (i + 1).to_string()).collect();
                let label = part.label.map_or("·".to_string(), |l| (l + 1).to_string());
                format!("{};{}", block.join(","), label)
            })
            .collect();
        write!(f, "{{{}}}", body.join("|"))
    }
}

/// Parses the 1-based form; the shape is inferred from the largest entries.
impl FromStr for LabeledPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected braces in {s:?}")))?;
        let mut parts = Vec::new();
        let mut p = 0;
        let mut q = 0;
        if !inner.trim().is_empty() {
            for chunk in inner.split('|') {
                let (block, label) = chunk
                    .split_once(';')
                    .ok_or_else(|| Error::Parse(format!("missing ';' in {chunk:?}")))?;
                let block = block
                    .split(',')
                    .map(parse_position)
                    .collect::<Result<Vec<_>>>()?;
                let label = match label.trim() {
                    "·" | "." | "-" | "" => None,
                    t => Some(parse_position(t)?),
                };
                p = p.max(block.iter().max().map_or(0, |m| m + 1));
                q = q.max(label.map_or(0, |l| l + 1));
                parts.push(Part { block, label });
            }
        }
        LabeledPartition::new(p, q, parts)
    }
}

fn parse_position(t: &str) -> Result<usize> {
    let v: usize = t
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad position {t:?}")))?;
    v.checked_sub(1)
        .ok_or_else(|| Error::Parse("positions are 1-based".into()))
}

/// All set partitions of `0..p` as lists of blocks, via restricted growth strings.
pub fn set_partitions(p: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; p];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == rgs.len() {
            let blocks = if rgs.is_empty() { 0 } else { max + 1 };
            let mut parts = vec![Vec::new(); blocks];
            for (pos, &b) in rgs.iter().enumerate() {
                parts[b].push(pos);
            }
            out.push(parts);
            return;
        }
        let limit = if i == 0 { 0 } else { max + 1 };
        for b in 0..=limit {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    rec(0, 0, &mut rgs, &mut out);
    out
}

/// All labeled partitions of the shape `(p, q)`, sorted.
pub fn enumerate_partitions(p: usize, q: usize) -> Vec<LabeledPartition> {
    enumerate_filtered(p, q, false)
}

/// Labeled partitions without labeled singletons, sorted.
pub fn enumerate_strict_partitions(p: usize, q: usize) -> Vec<LabeledPartition> {
    enumerate_filtered(p, q, true)
}

fn enumerate_filtered(p: usize, q: usize, strict: bool) -> Vec<LabeledPartition> {
    let mut out = Vec::new();
    for blocks in set_partitions(p) {
        if blocks.len() < q {
            continue;
        }
        let mut labels = vec![None; blocks.len()];
        assign_labels(&blocks, 0, q, strict, &mut labels, &mut |labels| {
            let parts = blocks
                .iter()
                .zip(labels.iter())
                .map(|(b, l)| Part {
                    block: b.clone(),
                    label: *l,
                })
                .collect();
            out.push(LabeledPartition::from_parts_unchecked(p, q, parts));
        });
    }
    out.sort();
    out
}

fn assign_labels(
    blocks: &[Vec<usize>],
    next: usize,
    q: usize,
    strict: bool,
    labels: &mut Vec<Option<usize>>,
    emit: &mut dyn FnMut(&[Option<usize>]),
) {
    if next == q {
        emit(labels);
        return;
    }
    for b in 0..blocks.len() {
        if labels[b].is_some() || (strict && blocks[b].len() == 1) {
            continue;
        }
        labels[b] = Some(next);
        assign_labels(blocks, next + 1, q, strict, labels, emit);
        labels[b] = None;
    }
}

/// A pair of integer partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bipartition {
    pub lambda: Vec<usize>,
    pub mu: Vec<usize>,
}

impl Bipartition {
    pub fn new(lambda: Vec<usize>, mu: Vec<usize>) -> Self {
        Bipartition { lambda, mu }
    }

    pub fn length(&self) -> usize {
        self.lambda.len() + self.mu.len()
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.lambda.iter().sum(), self.mu.iter().sum())
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[usize]| {
            if v.is_empty() {
                "∅".to_string()
            } else {
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            }
        };
        write!(f, "(({}),({}))", show(&self.lambda), show(&self.mu))
    }
}

/// Integer partitions of `k`, largest first in reverse lexicographic order.
pub fn integer_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// Strictly increasing `k`-subsets of `0..n`, lexicographic.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Non-decreasing `k`-tuples over `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_match_small_cases() {
        assert_eq!(enumerate_partitions(2, 1).len(), 3);
        assert_eq!(enumerate_strict_partitions(2, 1).len(), 1);
        assert_eq!(enumerate_strict_partitions(4, 2).len(), 6);
        assert_eq!(enumerate_partitions(3, 1).len(), 10);
        assert_eq!(enumerate_partitions(0, 0).len(), 1);
        assert!(enumerate_partitions(1, 2).is_empty());
    }

    #[test]
    fn text_round_trip() {
        for lp in enumerate_partitions(3, 2) {
            let parsed: LabeledPartition = lp.to_string().parse().unwrap();
            assert_eq!(parsed, lp);
        }
        let lp: LabeledPartition = "{1,2;1|3;·}".parse().unwrap();
        assert_eq!(lp.parts().len(), 2);
        assert!(lp.is_strict());
    }

    #[test]
    fn invalid_partitions_are_rejected() {
        assert!(LabeledPartition::new(2, 1, vec![Part { block: vec![0], label: Some(0) }]).is_err());
        assert!("{1;1|1;·}".parse::<LabeledPartition>().is_err());
    }

    #[test]
    fn permutation_signs() {
        let p = SignedPermutation::from_images(vec![1, 0, 2]).unwrap();
        assert_eq!(p.sign(), -1);
        assert_eq!(p.compose(&p), SignedPermutation::identity(3));
        let c = SignedPermutation::from_images(vec![1, 2, 0]).unwrap();
        assert_eq!(c.sign(), 1);
        assert_eq!(c.compose(&c.inverse()), SignedPermutation::identity(3));
        assert!(SignedPermutation::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn disjoint_union_relabels_on_collision() {
        let s = FiniteSetPair::standard(1, 1);
        let (u, renaming) = s.disjoint_union(&s);
        assert_eq!(u.shape(), (2, 2));
        assert_eq!(renaming.len(), 2);
        assert!(FiniteSetPair::new(u.cov().to_vec(), u.con().to_vec()).is_ok());
    }

    #[test]
    fn integer_partition_counts() {
        let counts: Vec<usize> = (0..8).map(|k| integer_partitions(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(integer_partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
    }
}
