//! The labeled-partition functor `P`, its strict subfunctor `P′`, the sign
//! functor `det`, and the combinatorial model of the wheeled classes `h_{p,i}`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::brauer::{factor_into_generators, Charge, GeneratorKind, WalledDiagram};
use crate::combinatorics::{
    enumerate_matchings, enumerate_partitions, enumerate_strict_partitions, sequence_sign,
    subsets, LabeledPartition, Part,
};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::poly::Poly;

/// A wedge word on each side: the order in which covariant and contravariant
/// positions appear in `det`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DetWord {
    pub cov: Vec<usize>,
    pub con: Vec<usize>,
}

impl DetWord {
    pub fn standard(p: usize, q: usize) -> Self {
        DetWord {
            cov: (0..p).collect(),
            con: (0..q).collect(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.cov.len(), self.con.len())
    }

    /// Remove `x` and `y`, paying one sign per letter standing after each.
    fn contract(&self, x: usize, y: usize) -> (i8, DetWord) {
        let (sx, cov) = remove_letter(&self.cov, x);
        let (sy, con) = remove_letter(&self.con, y);
        (sx * sy, DetWord { cov, con })
    }

    fn insert(&self) -> DetWord {
        let mut w = self.clone();
        w.cov.push(self.cov.len());
        w.con.push(self.con.len());
        w
    }

    fn relabel(&self, cov: &[usize], con: &[usize]) -> DetWord {
        DetWord {
            cov: self.cov.iter().map(|&i| cov[i]).collect(),
            con: self.con.iter().map(|&j| con[j]).collect(),
        }
    }

    /// Sign relating this word to the standard one.
    pub fn sign(&self) -> i8 {
        sequence_sign(&self.cov) * sequence_sign(&self.con)
    }
}

fn remove_letter(word: &[usize], x: usize) -> (i8, Vec<usize>) {
    let at = word.iter().position(|&a| a == x).expect("letter present");
    let after = word.len() - 1 - at;
    let rest = word
        .iter()
        .filter(|&&a| a != x)
        .map(|&a| if a > x { a - 1 } else { a })
        .collect();
    (if after.is_multiple_of(2) { 1 } else { -1 }, rest)
}

impl fmt::Display for DetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &[usize]| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|i| format!("{}", i + 1)).collect::<Vec<_>>().join("∧")
            }
        };
        write!(f, "{}⊗{}", show(&self.cov), show(&self.con))
    }
}

/// A scalar multiple of a wedge word: an element of `det(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetGenerator {
    pub coefficient: Rational,
    pub word: DetWord,
}

impl DetGenerator {
    pub fn standard(p: usize, q: usize) -> Self {
        DetGenerator {
            coefficient: Rational::from_integer(1.into()),
            word: DetWord::standard(p, q),
        }
    }

    /// Coefficient on the standard word.
    pub fn normalized(&self) -> Rational {
        &self.coefficient * Rational::from_integer(self.word.sign().into())
    }
}

/// Primitive actions every diagram factors into.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Step {
    Contract(usize, usize),
    Insert,
    Relabel { cov: Vec<usize>, con: Vec<usize> },
}

fn steps(m: &WalledDiagram) -> Result<Vec<Step>> {
    let unit = m.with_coefficient(Rational::from_integer(1.into()));
    let word = factor_into_generators(&unit)?;
    Ok(word
        .letters
        .iter()
        .map(|letter| match letter.kind {
            GeneratorKind::Contraction => {
                let (x, y) = letter.diagram.contractions()[0];
                Step::Contract(x, y)
            }
            GeneratorKind::Insertion => Step::Insert,
            GeneratorKind::Bijection => {
                let d = &letter.diagram;
                let mut cov = vec![0; d.source().p()];
                for (s, t) in d.cov_strands() {
                    cov[s] = t;
                }
                let mut con = vec![0; d.source().q()];
                for (t, s) in d.con_strands() {
                    con[s] = t;
                }
                Step::Relabel { cov, con }
            }
        })
        .collect())
}

/// Outcome of contracting a single labeled partition.
enum Contracted {
    Loop(LabeledPartition),
    Plain(LabeledPartition),
}

fn contract_partition(lp: &LabeledPartition, x: usize, y: usize) -> Contracted {
    let i = lp.part_of(x);
    let j = lp.part_labeled(y);
    let parts = lp.parts();
    let mut next: Vec<Part> = Vec::with_capacity(parts.len());
    let mut closed = false;
    for (k, part) in parts.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        next.push(part.clone());
    }
    let rest: Vec<usize> = parts[i].block.iter().copied().filter(|&a| a != x).collect();
    if i == j {
        if rest.is_empty() {
            closed = true;
        } else {
            next.push(Part {
                block: rest,
                label: None,
            });
        }
    } else {
        let mut block = rest;
        block.extend(parts[j].block.iter().copied());
        next.push(Part {
            block,
            label: parts[i].label,
        });
    }
    let shifted = next
        .into_iter()
        .map(|part| Part {
            block: part.block.iter().map(|&a| if a > x { a - 1 } else { a }).collect(),
            label: part.label.map(|l| if l > y { l - 1 } else { l }),
        })
        .collect();
    let out = LabeledPartition::from_parts_unchecked(lp.p() - 1, lp.q() - 1, shifted);
    if closed {
        Contracted::Loop(out)
    } else {
        Contracted::Plain(out)
    }
}

fn insert_partition(lp: &LabeledPartition) -> LabeledPartition {
    let mut parts = lp.parts().to_vec();
    parts.push(Part {
        block: vec![lp.p()],
        label: Some(lp.q()),
    });
    LabeledPartition::from_parts_unchecked(lp.p() + 1, lp.q() + 1, parts)
}

fn relabel_partition(lp: &LabeledPartition, cov: &[usize], con: &[usize]) -> LabeledPartition {
    let parts = lp
        .parts()
        .iter()
        .map(|part| Part {
            block: part.block.iter().map(|&a| cov[a]).collect(),
            label: part.label.map(|l| con[l]),
        })
        .collect();
    LabeledPartition::from_parts_unchecked(lp.p(), lp.q(), parts)
}

/// A formal combination of labeled partitions over a fixed shape `(p, q)`,
/// with polynomial coefficients in the loop value. In `P ⊗ det` each term
/// carries the standard wedge word; other words are folded into the sign.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PartitionVector {
    p: usize,
    q: usize,
    terms: BTreeMap<LabeledPartition, Poly>,
}

impl PartitionVector {
    pub fn zero(p: usize, q: usize) -> Self {
        PartitionVector {
            p,
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(lp: LabeledPartition) -> Self {
        let mut v = PartitionVector::zero(lp.p(), lp.q());
        v.add_term(lp, Poly::from_int(1));
        v
    }

    /// `n` times the empty partition.
    pub fn scalar(c: Poly) -> Self {
        let mut v = PartitionVector::zero(0, 0);
        v.add_term(LabeledPartition::from_parts_unchecked(0, 0, Vec::new()), c);
        v
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn terms(&self) -> &BTreeMap<LabeledPartition, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lp: LabeledPartition, c: Poly) {
        debug_assert_eq!((lp.p(), lp.q()), (self.p, self.q));
        let entry = self.terms.entry(lp).or_default();
        *entry = &*entry + &c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn add(&self, other: &PartitionVector) -> PartitionVector {
        let mut out = self.clone();
        for (lp, c) in &other.terms {
            out.add_term(lp.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> PartitionVector {
        let mut out = PartitionVector::zero(self.p, self.q);
        for (lp, v) in &self.terms {
            out.add_term(lp.clone(), v * c);
        }
        out
    }

    pub fn neg(&self) -> PartitionVector {
        self.scale(&Poly::from_int(-1))
    }

    /// Serialization records: coefficient, partition text, wedge word.
    pub fn records(&self) -> Vec<(String, String, String)> {
        let word = DetWord::standard(self.p, self.q).to_string();
        self.terms
            .iter()
            .map(|(lp, c)| (c.to_string(), lp.to_string(), word.clone()))
            .collect()
    }
}

impl Serialize for PartitionVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.records())
    }
}

impl fmt::Display for PartitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let body: Vec<String> = self.terms.iter().map(|(lp, c)| format!("{c}·{lp}")).collect();
        write!(f, "{}", body.join(" + "))
    }
}

fn check_source(m: &WalledDiagram, shape: (usize, usize)) -> Result<()> {
    if m.source().shape() != shape {
        return Err(Error::ObjectMismatch(format!(
            "diagram source {} does not match a vector of shape {shape:?}",
            m.source()
        )));
    }
    Ok(())
}

fn apply_steps(
    steps: &[Step],
    v: &PartitionVector,
    charge: &Poly,
    with_det: bool,
) -> PartitionVector {
    let mut cur = v.clone();
    for step in steps {
        let (p, q) = cur.shape();
        let mut next = match step {
            Step::Contract(..) => PartitionVector::zero(p - 1, q - 1),
            Step::Insert => PartitionVector::zero(p + 1, q + 1),
            Step::Relabel { .. } => PartitionVector::zero(p, q),
        };
        let word = DetWord::standard(p, q);
        for (lp, c) in &cur.terms {
            match step {
                Step::Contract(x, y) => {
                    let sign = if with_det { word.contract(*x, *y).0 } else { 1 };
                    let c = c.scale(&Rational::from_integer(sign.into()));
                    match contract_partition(lp, *x, *y) {
                        Contracted::Loop(out) => next.add_term(out, &c * charge),
                        Contracted::Plain(out) => next.add_term(out, c),
                    }
                }
                Step::Insert => next.add_term(insert_partition(lp), c.clone()),
                Step::Relabel { cov, con } => {
                    let sign = if with_det { word.relabel(cov, con).sign() } else { 1 };
                    next.add_term(
                        relabel_partition(lp, cov, con),
                        c.scale(&Rational::from_integer(sign.into())),
                    );
                }
            }
        }
        cur = next;
    }
    cur
}

/// `P(m)(v)`: the partition functor alone.
pub fn apply_p(m: &WalledDiagram, v: &PartitionVector, charge: &Charge) -> Result<PartitionVector> {
    check_source(m, v.shape())?;
    let out = apply_steps(&steps(m)?, v, &charge.as_poly(), false);
    Ok(out.scale(&Poly::constant(m.coefficient().clone())))
}

/// `(P ⊗ det)(m)(v)`.
pub fn apply_pdet(
    m: &WalledDiagram,
    v: &PartitionVector,
    charge: &Charge,
) -> Result<PartitionVector> {
    check_source(m, v.shape())?;
    let out = apply_steps(&steps(m)?, v, &charge.as_poly(), true);
    Ok(out.scale(&Poly::constant(m.coefficient().clone())))
}

/// `det(m)(w)` on an explicit wedge word. Contractions remove letters with
/// the sign of the letters after them, insertions append, bijections rename.
pub fn apply_det(m: &WalledDiagram, g: &DetGenerator) -> Result<DetGenerator> {
    check_source(m, g.word.shape())?;
    let mut coefficient = &g.coefficient * m.coefficient();
    let mut word = g.word.clone();
    for step in steps(m)? {
        match step {
            Step::Contract(x, y) => {
                let (sign, w) = word.contract(x, y);
                coefficient *= Rational::from_integer(sign.into());
                word = w;
            }
            Step::Insert => word = word.insert(),
            Step::Relabel { cov, con } => word = word.relabel(&cov, &con),
        }
    }
    Ok(DetGenerator { coefficient, word })
}

/// `u ⊗ v` over the concatenated shape. Wedge words concatenate, which costs
/// `(−1)^{q_u·p_v}` to bring back to standard form.
pub fn day_product(u: &PartitionVector, v: &PartitionVector) -> PartitionVector {
    let (p1, q1) = u.shape();
    let (p2, q2) = v.shape();
    let sign = if (q1 * p2) % 2 == 0 { 1 } else { -1 };
    let mut out = PartitionVector::zero(p1 + p2, q1 + q2);
    for (a, ca) in &u.terms {
        for (b, cb) in &v.terms {
            let mut parts = a.parts().to_vec();
            parts.extend(b.parts().iter().map(|part| Part {
                block: part.block.iter().map(|&x| x + p1).collect(),
                label: part.label.map(|l| l + q1),
            }));
            let lp = LabeledPartition::from_parts_unchecked(p1 + p2, q1 + q2, parts);
            out.add_term(lp, (ca * cb).scale(&Rational::from_integer(sign.into())));
        }
    }
    out
}

/// Contraction `ξ_{x,y}` (0-based positions) on a `P ⊗ det` vector.
pub fn contract(v: &PartitionVector, x: usize, y: usize, charge: &Charge) -> Result<PartitionVector> {
    let (p, q) = v.shape();
    if x >= p || y >= q {
        return Err(Error::Invalid(format!("no contraction ({x},{y}) in shape ({p},{q})")));
    }
    Ok(apply_steps(&[Step::Contract(x, y)], v, &charge.as_poly(), true))
}

/// Standard form of a labeled partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardShape {
    pub lambda: Vec<usize>,
    pub k: Vec<u8>,
    /// Covariant position → standard position.
    pub cov_map: Vec<usize>,
    /// Contravariant position → standard position.
    pub con_map: Vec<usize>,
    pub sign: i8,
}

/// Blocks ordered by size (largest first), labeled before unlabeled, then by
/// smallest element.
pub fn standardize(lp: &LabeledPartition) -> StandardShape {
    let mut order: Vec<&Part> = lp.parts().iter().collect();
    order.sort_by_key(|part| (std::cmp::Reverse(part.block.len()), part.label.is_none(), part.block[0]));
    let mut cov_map = vec![0; lp.p()];
    let mut con_map = vec![0; lp.q()];
    let mut next_cov = 0;
    let mut next_con = 0;
    for part in &order {
        for &a in &part.block {
            cov_map[a] = next_cov;
            next_cov += 1;
        }
        if let Some(l) = part.label {
            con_map[l] = next_con;
            next_con += 1;
        }
    }
    let sign = sequence_sign(&cov_map) * sequence_sign(&con_map);
    StandardShape {
        lambda: order.iter().map(|part| part.block.len()).collect(),
        k: order.iter().map(|part| u8::from(part.label.is_some())).collect(),
        cov_map,
        con_map,
        sign,
    }
}

/// The standard labeled partition of `(λ, k)`.
pub fn standard_partition(lambda: &[usize], k: &[u8]) -> Result<LabeledPartition> {
    if lambda.len() != k.len() {
        return Err(Error::SizeMismatch {
            left: lambda.len(),
            right: k.len(),
        });
    }
    let p: usize = lambda.iter().sum();
    let q = k.iter().filter(|&&b| b == 1).count();
    let mut parts = Vec::new();
    let mut start = 0;
    let mut label = 0;
    for (&size, &kk) in lambda.iter().zip(k) {
        parts.push(Part {
            block: (start..start + size).collect(),
            label: (kk == 1).then(|| {
                label += 1;
                label - 1
            }),
        });
        start += size;
    }
    LabeledPartition::new(p, q, parts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanSummand {
    pub kept_cov: Vec<usize>,
    pub kept_con: Vec<usize>,
    pub matchings: usize,
    pub strict_partitions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanDecomposition {
    pub shape: (usize, usize),
    pub summands: Vec<KanSummand>,
    pub total: usize,
    pub partitions: usize,
    pub bijective: bool,
}

/// The partition with strict part `strict` on the kept positions and one
/// labeled singleton per matched pair of removed positions.
pub fn kan_assemble(
    p: usize,
    q: usize,
    kept_cov: &[usize],
    kept_con: &[usize],
    matching: &[(usize, usize)],
    strict: &LabeledPartition,
) -> LabeledPartition {
    let mut parts: Vec<Part> = strict
        .parts()
        .iter()
        .map(|part| Part {
            block: part.block.iter().map(|&a| kept_cov[a]).collect(),
            label: part.label.map(|l| kept_con[l]),
        })
        .collect();
    parts.extend(matching.iter().map(|&(a, b)| Part {
        block: vec![a],
        label: Some(b),
    }));
    LabeledPartition::from_parts_unchecked(p, q, parts)
}

/// `P(S) ≅ ⊕_I Q[M(S∖I)] ⊗ P′(I)`, with the bijection checked by enumeration.
pub fn kan_decompose(p: usize, q: usize) -> KanDecomposition {
    let mut summands = Vec::new();
    let mut images = Vec::new();
    for k in 0..=p.min(q) {
        let matchings = enumerate_matchings(k);
        for removed_cov in subsets(p, k) {
            let kept_cov: Vec<usize> = (0..p).filter(|a| !removed_cov.contains(a)).collect();
            for removed_con in subsets(q, k) {
                let kept_con: Vec<usize> = (0..q).filter(|a| !removed_con.contains(a)).collect();
                let strict = enumerate_strict_partitions(kept_cov.len(), kept_con.len());
                for m in &matchings {
                    let pairs: Vec<(usize, usize)> = m
                        .pairs
                        .iter()
                        .map(|&(a, b)| (removed_cov[a], removed_con[b]))
                        .collect();
                    for s in &strict {
                        images.push(kan_assemble(p, q, &kept_cov, &kept_con, &pairs, s));
                    }
                }
                if !strict.is_empty() {
                    summands.push(KanSummand {
                        kept_cov: kept_cov.clone(),
                        kept_con,
                        matchings: matchings.len(),
                        strict_partitions: strict.len(),
                    });
                }
            }
        }
    }
    let total = summands
        .iter()
        .map(|s| s.matchings * s.strict_partitions)
        .sum();
    let basis = enumerate_partitions(p, q);
    images.sort();
    let bijective = images == basis;
    KanDecomposition {
        shape: (p, q),
        summands,
        total,
        partitions: basis.len(),
        bijective,
    }
}

/// Model class of `h_{p,1}`: one block labeled by the single output.
pub fn h_labeled(p: usize) -> PartitionVector {
    PartitionVector::basis(
        LabeledPartition::new(p, 1, vec![Part { block: (0..p).collect(), label: Some(0) }])
            .expect("valid"),
    )
}

/// Model class of `h_{p,0} = ξ_{1,1}(h_{p+1,1})`.
pub fn h_unlabeled(p: usize) -> PartitionVector {
    contract(&h_labeled(p + 1), 0, 0, &Charge::Symbolic).expect("valid contraction")
}

/// Vertical composite: the product `a ⊗ b` followed by `q` contractions of
/// the first input of `b` with the first output of `a`.
pub fn vertical_compose(a: &PartitionVector, b: &PartitionVector) -> Result<PartitionVector> {
    let (p, q) = a.shape();
    if b.shape().0 != q {
        return Err(Error::ObjectMismatch(format!(
            "cannot compose shapes {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let mut e = day_product(a, b);
    for _ in 0..q {
        e = contract(&e, p, 0, &Charge::Symbolic)?;
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WheeledReport {
    pub max_arity: usize,
    pub checks: Vec<IdentityCheck>,
}

impl WheeledReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn violations(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

/// Check the defining relations of `h_{2,1}` and the contraction identities
/// relating `h_{p,1}`, `h_{p,0}` in the `P ⊗ det` model, with `n` symbolic.
pub fn wheeled_model_check(max_arity: usize) -> Result<WheeledReport> {
    if max_arity < 2 {
        return Err(Error::Invalid("arity bound must be at least 2".into()));
    }
    let mut checks = Vec::new();
    let mut record = |name: String, holds: bool| checks.push(IdentityCheck { name, holds });
    let h = h_labeled(2);
    let one = h_labeled(1);

    let swap = WalledDiagram::permutation(
        &crate::combinatorics::FiniteSetPair::standard(2, 1),
        &crate::combinatorics::FiniteSetPair::standard(2, 1),
        &[1, 0],
        &[0],
    )?;
    let swapped = apply_pdet(&swap, &h, &Charge::Symbolic)?;
    record("antisymmetry".into(), h.add(&swapped).is_zero());

    let left = vertical_compose(&day_product(&one, &h), &h)?;
    let right = vertical_compose(&day_product(&h, &one), &h)?;
    record("three-term".into(), left.add(&right).is_zero());

    for p in 1..=max_arity {
        let lhs = contract(&h_labeled(p), 0, 0, &Charge::Symbolic)?;
        let rhs = if p == 1 {
            PartitionVector::scalar(Poly::var())
        } else {
            h_unlabeled(p - 1)
        };
        record(format!("trace h[{p},1] = h[{},0]", p - 1), lhs == rhs);
    }
    for p in 1..=max_arity {
        for p2 in 1..=max_arity {
            for labeled in [true, false] {
                let (second, expected, i) = if labeled {
                    (h_labeled(p2), h_labeled(p + p2 - 1), 1)
                } else {
                    (h_unlabeled(p2), h_unlabeled(p + p2 - 1), 0)
                };
                let lhs = contract(&day_product(&h_labeled(p), &second), p, 0, &Charge::Symbolic)?;
                record(
                    format!("graft h[{p},1]·h[{p2},{i}] = h[{},{i}]", p + p2 - 1),
                    lhs == expected,
                );
            }
        }
    }
    Ok(WheeledReport { max_arity, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::FiniteSetPair;

    fn lp(s: &str) -> LabeledPartition {
        s.parse().unwrap()
    }

    #[test]
    fn loop_case_multiplies_by_charge() {
        let v = PartitionVector::basis(lp("{1;1}"));
        let m = WalledDiagram::contraction(&FiniteSetPair::standard(1, 1), 0, 0).unwrap();
        let out = apply_p(&m, &v, &Charge::int(3)).unwrap();
        assert_eq!(out, PartitionVector::scalar(Poly::from_int(3)));
    }

    #[test]
    fn contraction_inside_a_block_unlabels_it() {
        let v = PartitionVector::basis(lp("{1,2;1}"));
        let m = WalledDiagram::contraction(&FiniteSetPair::standard(2, 1), 0, 0).unwrap();
        let out = apply_p(&m, &v, &Charge::Symbolic).unwrap();
        assert_eq!(out, PartitionVector::basis(LabeledPartition::new(1, 0, vec![Part { block: vec![0], label: None }]).unwrap()));
    }

    #[test]
    fn contraction_across_blocks_merges() {
        let v = PartitionVector::basis(lp("{1;2|2,3;1}"));
        let m = WalledDiagram::contraction(&FiniteSetPair::standard(3, 2), 0, 0).unwrap();
        let out = apply_p(&m, &v, &Charge::Symbolic).unwrap();
        assert_eq!(out, PartitionVector::basis(lp("{1,2;1}")));
    }

    #[test]
    fn standardize_examples() {
        let s = standardize(&lp("{1,2;1}"));
        assert_eq!((s.lambda, s.k, s.sign), (vec![2], vec![1], 1));
        let s = standardize(&lp("{2;·|1,3;1}"));
        assert_eq!((s.lambda, s.k), (vec![2, 1], vec![1, 0]));
    }

    #[test]
    fn kan_examples() {
        let d = kan_decompose(2, 1);
        assert_eq!(d.total, 3);
        assert_eq!(d.summands.len(), 3);
        assert!(d.bijective);
        assert_eq!(kan_decompose(1, 1).total, 1);
        assert_eq!(kan_decompose(3, 1).total, 10);
    }

    #[test]
    fn product_of_degree_one_classes_anticommutes() {
        let a = h_labeled(2);
        let b = h_labeled(2);
        let ab = day_product(&a, &b);
        let ba = day_product(&b, &a);
        let swap = WalledDiagram::permutation(
            &FiniteSetPair::standard(4, 2),
            &FiniteSetPair::standard(4, 2),
            &[2, 3, 0, 1],
            &[1, 0],
        )
        .unwrap();
        let moved = apply_pdet(&swap, &ab, &Charge::Symbolic).unwrap();
        assert_eq!(moved, ba.neg());
    }

    #[test]
    fn det_contraction_counts_letters_after() {
        let g = DetGenerator::standard(3, 1);
        let m = WalledDiagram::contraction(&FiniteSetPair::standard(3, 1), 0, 0).unwrap();
        let out = apply_det(&m, &g).unwrap();
        assert_eq!(out.normalized(), Rational::from_integer(1.into()));
        let m = WalledDiagram::contraction(&FiniteSetPair::standard(3, 1), 1, 0).unwrap();
        assert_eq!(apply_det(&m, &g).unwrap().normalized(), Rational::from_integer((-1).into()));
    }
}
