//! Walled Brauer diagrams and their composition.
//!
//! A diagram `S → T` is a perfect matching between the "left" endpoints
//! (covariant source atoms and contravariant target atoms) and the "right"
//! endpoints (covariant target atoms and contravariant source atoms).
//! Storing it as a bijection left → right makes the walled condition automatic.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{Atom, FiniteSetPair, SignedPermutation};
use crate::error::{Error, Result};
use crate::linalg::Rational;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Endpoint {
    /// Covariant atom of the source, by position.
    SourceCov(usize),
    /// Contravariant atom of the source.
    SourceCon(usize),
    TargetCov(usize),
    TargetCon(usize),
}

/// The loop value: a fixed rational or the formal variable `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Charge {
    Value(Rational),
    Symbolic,
}

impl Charge {
    pub fn int(n: i64) -> Charge {
        Charge::Value(Rational::from_integer(n.into()))
    }

    pub fn as_poly(&self) -> Poly {
        match self {
            Charge::Value(v) => Poly::constant(v.clone()),
            Charge::Symbolic => Poly::var(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WalledDiagram {
    source: FiniteSetPair,
    target: FiniteSetPair,
    /// `mates[l]` is the right endpoint index matched to left endpoint `l`.
    /// Left: source cov `0..ps`, then target con. Right: target cov `0..pt`,
    /// then source con.
    mates: Vec<usize>,
    coefficient: Rational,
}

impl WalledDiagram {
    /// Build from a left→right index bijection.
    pub fn from_mates(
        source: FiniteSetPair,
        target: FiniteSetPair,
        mates: Vec<usize>,
        coefficient: Rational,
    ) -> Result<Self> {
        let left = source.p() + target.q();
        let right = target.p() + source.q();
        if left != right || mates.len() != left {
            return Err(Error::ObjectMismatch(format!(
                "no perfect matching between {source} and {target}"
            )));
        }
        SignedPermutation::from_images(mates.clone())?;
        Ok(WalledDiagram {
            source,
            target,
            mates,
            coefficient,
        })
    }

    /// Build from endpoint pairs, in either orientation.
    pub fn new(
        source: FiniteSetPair,
        target: FiniteSetPair,
        pairs: &[(Endpoint, Endpoint)],
        coefficient: Rational,
    ) -> Result<Self> {
        let left_len = source.p() + target.q();
        let mut mates = vec![usize::MAX; left_len];
        for &(a, b) in pairs {
            let (l, r) = match (
                left_index(&source, a),
                right_index(&target, b),
                left_index(&source, b),
                right_index(&target, a),
            ) {
                (Some(l), Some(r), _, _) | (_, _, Some(l), Some(r)) => (l, r),
                _ => {
                    return Err(Error::Invalid(format!(
                        "pair {a:?}–{b:?} crosses the wall or is out of range"
                    )))
                }
            };
            if l >= left_len || mates[l] != usize::MAX {
                return Err(Error::Invalid(format!("endpoint {a:?} reused")));
            }
            mates[l] = r;
        }
        if mates.contains(&usize::MAX) {
            return Err(Error::Invalid("matching is not perfect".into()));
        }
        WalledDiagram::from_mates(source, target, mates, coefficient)
    }

    pub fn identity(s: &FiniteSetPair) -> Self {
        WalledDiagram::permutation(s, s, &(0..s.p()).collect::<Vec<_>>(), &(0..s.q()).collect::<Vec<_>>())
            .expect("identity is valid")
    }

    /// Through strands only: source cov `i` goes to target cov `cov[i]`,
    /// target con `j` goes to source con `con[j]`.
    pub fn permutation(
        source: &FiniteSetPair,
        target: &FiniteSetPair,
        cov: &[usize],
        con: &[usize],
    ) -> Result<Self> {
        if source.shape() != target.shape() || cov.len() != source.p() || con.len() != source.q() {
            return Err(Error::ObjectMismatch(format!(
                "{source} and {target} are not isomorphic this way"
            )));
        }
        let pt = target.p();
        let mut mates: Vec<usize> = cov.to_vec();
        mates.extend(con.iter().map(|&j| pt + j));
        WalledDiagram::from_mates(source.clone(), target.clone(), mates, Rational::one())
    }

    /// The bijection matching atoms with equal names. `target` must contain the
    /// same atoms as `source`, possibly reordered.
    pub fn bijection_by_name(source: &FiniteSetPair, target: &FiniteSetPair) -> Result<Self> {
        let cov = SignedPermutation::between(source.cov(), target.cov())?;
        let con = SignedPermutation::between(target.con(), source.con())?;
        WalledDiagram::permutation(source, target, cov.images(), con.images())
    }

    /// `λ_{x,y}: S → S ∖ {x, y}` for positions `x` (cov) and `y` (con).
    pub fn contraction(s: &FiniteSetPair, x: usize, y: usize) -> Result<Self> {
        if x >= s.p() || y >= s.q() {
            return Err(Error::Invalid(format!("no contraction ({x},{y}) on {s}")));
        }
        let target = s.without(x, y);
        let pt = target.p();
        let mut mates = Vec::with_capacity(s.p() + target.q());
        for i in 0..s.p() {
            mates.push(match i.cmp(&x) {
                std::cmp::Ordering::Less => i,
                std::cmp::Ordering::Equal => pt + y,
                std::cmp::Ordering::Greater => i - 1,
            });
        }
        for j in 0..target.q() {
            mates.push(pt + if j < y { j } else { j + 1 });
        }
        WalledDiagram::from_mates(s.clone(), target, mates, Rational::one())
    }

    /// `γ_{x,y}: S → S ⊔ {x, y}` appending fresh atoms `x` (cov) and `y` (con).
    pub fn insertion(s: &FiniteSetPair, x: Atom, y: Atom) -> Result<Self> {
        let target = s.with(x, y)?;
        let p = s.p();
        let q = s.q();
        let pt = target.p();
        let mut mates: Vec<usize> = (0..p).collect();
        for j in 0..q {
            mates.push(pt + j);
        }
        mates.push(p);
        WalledDiagram::from_mates(s.clone(), target, mates, Rational::one())
    }

    pub fn source(&self) -> &FiniteSetPair {
        &self.source
    }

    pub fn target(&self) -> &FiniteSetPair {
        &self.target
    }

    pub fn coefficient(&self) -> &Rational {
        &self.coefficient
    }

    pub fn with_coefficient(&self, c: Rational) -> Self {
        WalledDiagram {
            coefficient: c,
            ..self.clone()
        }
    }

    pub fn mates(&self) -> &[usize] {
        &self.mates
    }

    fn left_endpoint(&self, l: usize) -> Endpoint {
        let ps = self.source.p();
        if l < ps {
            Endpoint::SourceCov(l)
        } else {
            Endpoint::TargetCon(l - ps)
        }
    }

    fn right_endpoint(&self, r: usize) -> Endpoint {
        let pt = self.target.p();
        if r < pt {
            Endpoint::TargetCov(r)
        } else {
            Endpoint::SourceCon(r - pt)
        }
    }

    pub fn pairs(&self) -> Vec<(Endpoint, Endpoint)> {
        self.mates
            .iter()
            .enumerate()
            .map(|(l, &r)| (self.left_endpoint(l), self.right_endpoint(r)))
            .collect()
    }

    /// `(source cov, source con)` position pairs joined by a cap.
    pub fn contractions(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter_map(|pair| match pair {
                (Endpoint::SourceCov(i), Endpoint::SourceCon(j)) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// `(target cov, target con)` position pairs joined by a cup.
    pub fn insertions(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter_map(|pair| match pair {
                (Endpoint::TargetCon(j), Endpoint::TargetCov(i)) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// `(source cov, target cov)` through strands.
    pub fn cov_strands(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter_map(|pair| match pair {
                (Endpoint::SourceCov(i), Endpoint::TargetCov(j)) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    /// `(target con, source con)` through strands.
    pub fn con_strands(&self) -> Vec<(usize, usize)> {
        self.pairs()
            .into_iter()
            .filter_map(|pair| match pair {
                (Endpoint::TargetCon(j), Endpoint::SourceCon(i)) => Some((j, i)),
                _ => None,
            })
            .collect()
    }

    /// No cups: the diagram lies in the downward subcategory.
    pub fn is_downward(&self) -> bool {
        self.insertions().is_empty()
    }

    fn structurally_eq(&self, other: &WalledDiagram) -> bool {
        self.source == other.source && self.target == other.target && self.mates == other.mates
    }
}

fn left_index(source: &FiniteSetPair, e: Endpoint) -> Option<usize> {
    match e {
        Endpoint::SourceCov(i) if i < source.p() => Some(i),
        Endpoint::TargetCon(j) => Some(source.p() + j),
        _ => None,
    }
}

fn right_index(target: &FiniteSetPair, e: Endpoint) -> Option<usize> {
    match e {
        Endpoint::TargetCov(i) if i < target.p() => Some(i),
        Endpoint::SourceCon(j) => Some(target.p() + j),
        _ => None,
    }
}

/// `g ∘ f` with closed loops evaluated at `charge`.
pub fn compose(g: &WalledDiagram, f: &WalledDiagram, charge: &Rational) -> Result<WalledDiagram> {
    let (mates, loops) = compose_matching(g, f)?;
    let mut coefficient = &f.coefficient * &g.coefficient;
    for _ in 0..loops {
        coefficient *= charge;
    }
    WalledDiagram::from_mates(f.source.clone(), g.target.clone(), mates, coefficient)
}

/// Like [`compose`] but returning the loop count instead of evaluating it.
pub fn compose_counting(g: &WalledDiagram, f: &WalledDiagram) -> Result<(WalledDiagram, usize)> {
    let (mates, loops) = compose_matching(g, f)?;
    let d = WalledDiagram::from_mates(
        f.source.clone(),
        g.target.clone(),
        mates,
        &f.coefficient * &g.coefficient,
    )?;
    Ok((d, loops))
}

fn compose_matching(g: &WalledDiagram, f: &WalledDiagram) -> Result<(Vec<usize>, usize)> {
    if f.target != g.source {
        return Err(Error::ObjectMismatch(format!(
            "cannot compose: {} ≠ {}",
            f.target, g.source
        )));
    }
    let s = &f.source;
    let t = &f.target;
    let u = &g.target;
    let (ps, pt, pu) = (s.p(), t.p(), u.p());
    let mut seen_mid_cov = vec![false; pt];
    let mut seen_mid_con = vec![false; t.q()];

    // Result right endpoint for a walk entering f's right side at r, or None
    // when it continues at middle cov.
    let mut result = vec![usize::MAX; ps + u.q()];
    for (start, slot) in result.iter_mut().enumerate() {
        let mut use_f = start < ps;
        let mut idx = if use_f { start } else { pt + (start - ps) };
        loop {
            if use_f {
                let r = f.mates[idx];
                if r >= pt {
                    *slot = pu + (r - pt);
                    break;
                }
                seen_mid_cov[r] = true;
                use_f = false;
                idx = r;
            } else {
                let r = g.mates[idx];
                if r < pu {
                    *slot = r;
                    break;
                }
                let mid_con = r - pu;
                seen_mid_con[mid_con] = true;
                use_f = true;
                idx = ps + mid_con;
            }
        }
    }
    let mut loops = 0;
    for start in 0..pt {
        if seen_mid_cov[start] {
            continue;
        }
        loops += 1;
        let mut k = start;
        loop {
            seen_mid_cov[k] = true;
            let r = g.mates[k];
            let mid_con = r - pu;
            seen_mid_con[mid_con] = true;
            let next = f.mates[ps + mid_con];
            if next == start {
                break;
            }
            k = next;
        }
    }
    debug_assert!(seen_mid_con.iter().all(|&b| b));
    Ok((result, loops))
}

/// `f ⊗ g`, renaming colliding atoms of `g`.
pub fn tensor(f: &WalledDiagram, g: &WalledDiagram) -> WalledDiagram {
    tensor_recorded(f, g).0
}

/// `f ⊗ g` together with the renaming applied to the atoms of `g`.
pub fn tensor_recorded(f: &WalledDiagram, g: &WalledDiagram) -> (WalledDiagram, Vec<(Atom, Atom)>) {
    let (source, mut renaming) = f.source.disjoint_union(&g.source);
    let (target, renaming_t) = f.target.disjoint_union(&g.target);
    renaming.extend(renaming_t);
    renaming.sort();
    renaming.dedup();
    let mut pairs = Vec::new();
    let shift = |e: Endpoint, d: &WalledDiagram| match e {
        Endpoint::SourceCov(i) => Endpoint::SourceCov(i + d.source.p()),
        Endpoint::SourceCon(i) => Endpoint::SourceCon(i + d.source.q()),
        Endpoint::TargetCov(i) => Endpoint::TargetCov(i + d.target.p()),
        Endpoint::TargetCon(i) => Endpoint::TargetCon(i + d.target.q()),
    };
    pairs.extend(f.pairs());
    pairs.extend(g.pairs().into_iter().map(|(a, b)| (shift(a, f), shift(b, f))));
    let d = WalledDiagram::new(source, target, &pairs, &f.coefficient * &g.coefficient)
        .expect("tensor of valid diagrams is valid");
    (d, renaming)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    Bijection,
    Insertion,
    Contraction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub diagram: WalledDiagram,
}

/// Letters in application order: the first letter acts first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorWord {
    pub source: FiniteSetPair,
    pub letters: Vec<Generator>,
}

impl GeneratorWord {
    pub fn recompose(&self, charge: &Rational) -> Result<WalledDiagram> {
        let mut acc = WalledDiagram::identity(&self.source);
        for letter in &self.letters {
            acc = compose(&letter.diagram, &acc, charge)?;
        }
        Ok(acc)
    }
}

/// Contractions first, then insertions appending fresh atoms, then one
/// bijection (omitted when it is the identity). The diagram must have
/// coefficient 1.
pub fn factor_into_generators(f: &WalledDiagram) -> Result<GeneratorWord> {
    if !f.coefficient.is_one() {
        return Err(Error::Invalid(format!(
            "only coefficient-1 diagrams factor, got {}",
            f.coefficient
        )));
    }
    let mut letters = Vec::new();
    let mut current = f.source.clone();
    // Track source positions still present.
    let mut cov_alive: Vec<usize> = (0..f.source.p()).collect();
    let mut con_alive: Vec<usize> = (0..f.source.q()).collect();
    for (i, j) in f.contractions() {
        let x = cov_alive.iter().position(|&a| a == i).unwrap();
        let y = con_alive.iter().position(|&a| a == j).unwrap();
        let d = WalledDiagram::contraction(&current, x, y)?;
        current = d.target.clone();
        cov_alive.remove(x);
        con_alive.remove(y);
        letters.push(Generator {
            kind: GeneratorKind::Contraction,
            diagram: d,
        });
    }
    let cups = f.insertions();
    let mut cup_slots = Vec::new();
    for &(ti, tj) in &cups {
        let (x, y) = (f.target.cov()[ti], f.target.con()[tj]);
        let d = WalledDiagram::insertion(&current, x, y)
            .or_else(|_| {
                let (x, y) = fresh_beyond(&current, &f.target);
                WalledDiagram::insertion(&current, x, y)
            })?;
        current = d.target.clone();
        cup_slots.push((ti, tj));
        letters.push(Generator {
            kind: GeneratorKind::Insertion,
            diagram: d,
        });
    }
    // Final bijection current → target.
    let mut cov = vec![0; current.p()];
    for (i, t) in f.cov_strands() {
        let pos = cov_alive.iter().position(|&a| a == i).unwrap();
        cov[pos] = t;
    }
    let mut con = vec![0; current.q()];
    for (t, i) in f.con_strands() {
        con[t] = con_alive.iter().position(|&a| a == i).unwrap();
    }
    for (k, &(ti, tj)) in cup_slots.iter().enumerate() {
        cov[cov_alive.len() + k] = ti;
        con[tj] = con_alive.len() + k;
    }
    let last = WalledDiagram::permutation(&current, &f.target, &cov, &con)?;
    if !last.structurally_eq(&WalledDiagram::identity(&current)) || current != f.target {
        letters.push(Generator {
            kind: GeneratorKind::Bijection,
            diagram: last,
        });
    }
    Ok(GeneratorWord {
        source: f.source.clone(),
        letters,
    })
}

/// `S=(a,b|x); T=(c|y,z); m=[(a→y),...]; c=1` with endpoints tagged by side.
impl fmt::Display for WalledDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |e: Endpoint| match e {
            Endpoint::SourceCov(i) => format!("s:{}", self.source.cov()[i]),
            Endpoint::SourceCon(i) => format!("s:{}", self.source.con()[i]),
            Endpoint::TargetCov(i) => format!("t:{}", self.target.cov()[i]),
            Endpoint::TargetCon(i) => format!("t:{}", self.target.con()[i]),
        };
        let pairs: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| format!("({}→{})", name(a), name(b)))
            .collect();
        write!(
            f,
            "S={}; T={}; m=[{}]; c={}",
            self.source,
            self.target,
            pairs.join(","),
            self.coefficient
        )
    }
}

fn fresh_beyond(a: &FiniteSetPair, b: &FiniteSetPair) -> (Atom, Atom) {
    let m = a.max_atom().max(b.max_atom()).map_or(0, |x| x.0);
    (Atom(m + 1), Atom(m + 2))
}

/// Zero coefficient check used by callers that drop vanishing terms.
pub fn is_zero_diagram(d: &WalledDiagram) -> bool {
    d.coefficient.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn cap_after_cup_is_a_loop() {
        let e = FiniteSetPair::empty();
        let (x, y) = e.fresh_pair();
        let cup = WalledDiagram::insertion(&e, x, y).unwrap();
        let cap = WalledDiagram::contraction(cup.target(), 0, 0).unwrap();
        let (d, loops) = compose_counting(&cap, &cup).unwrap();
        assert_eq!(loops, 1);
        assert_eq!(d.source(), &e);
        let d = compose(&cap, &cup, &rat(5)).unwrap();
        assert_eq!(d.coefficient(), &rat(5));
    }

    #[test]
    fn zigzag_is_identity() {
        let s = FiniteSetPair::standard(1, 0);
        let (x, y) = s.fresh_pair();
        let cup = WalledDiagram::insertion(&s, x, y).unwrap();
        let cap = WalledDiagram::contraction(cup.target(), 0, 0).unwrap();
        let (d, loops) = compose_counting(&cap, &cup).unwrap();
        assert_eq!(loops, 0);
        assert_eq!(d.cov_strands(), vec![(0, 0)]);
        assert!(d.is_downward());
    }

    #[test]
    fn mismatched_objects_are_rejected() {
        let a = WalledDiagram::identity(&FiniteSetPair::standard(1, 1));
        let b = WalledDiagram::identity(&FiniteSetPair::standard(2, 1));
        assert!(compose(&a, &b, &rat(1)).is_err());
    }

    #[test]
    fn crossing_the_wall_is_rejected() {
        let s = FiniteSetPair::standard(1, 0);
        let t = FiniteSetPair::standard(0, 1);
        let r = WalledDiagram::new(
            s.clone(),
            t.clone(),
            &[(Endpoint::SourceCov(0), Endpoint::TargetCon(0))],
            rat(1),
        );
        assert!(r.is_err());
    }

    #[test]
    fn identity_factors_to_empty_word() {
        let s = FiniteSetPair::standard(2, 1);
        let w = factor_into_generators(&WalledDiagram::identity(&s)).unwrap();
        assert!(w.letters.is_empty());
    }
}
