//! Tensor spaces `H^{⊗p} ⊗ H^{∨⊗q}` for explicit `n`, the action of walled
//! Brauer diagrams on them, `GL_n(ℤ)`-invariants and traceless subspaces.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::brauer::{Endpoint, WalledDiagram};
use crate::combinatorics::{enumerate_matchings, subsets, FiniteSetPair};
use crate::error::{Error, Result};
use crate::guard::{power, Limits};
use crate::linalg::{rank, Echelon, Rational, RationalMatrix, SparseVec};

/// Standard basis of `K_{p,q}(n)`: covariant indices then contravariant
/// indices, first slot most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorSpace {
    pub p: usize,
    pub q: usize,
    pub n: usize,
}

impl TensorSpace {
    pub fn new(p: usize, q: usize, n: usize) -> Self {
        TensorSpace { p, q, n }
    }

    pub fn dim(&self) -> usize {
        self.n.pow((self.p + self.q) as u32)
    }

    pub fn slots(&self) -> usize {
        self.p + self.q
    }

    pub fn encode(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut word = vec![0; self.slots()];
        for slot in (0..self.slots()).rev() {
            word[slot] = index % self.n;
            index /= self.n;
        }
        word
    }

    fn check(&self, limits: &Limits) -> Result<()> {
        limits.check_tensor(
            &format!("tensor space ({},{}) at n={}", self.p, self.q, self.n),
            power(self.n, self.slots()),
        )
    }
}

/// Matrix of `K(m)` on standard bases, `n^{|T|} × n^{|S|}`.
pub fn k_on_morphism(m: &WalledDiagram, n: usize) -> Result<RationalMatrix> {
    k_on_morphism_with(m, n, &Limits::from_env())
}

pub fn k_on_morphism_with(m: &WalledDiagram, n: usize, limits: &Limits) -> Result<RationalMatrix> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let src = TensorSpace::new(m.source().p(), m.source().q(), n);
    let tgt = TensorSpace::new(m.target().p(), m.target().q(), n);
    src.check(limits)?;
    tgt.check(limits)?;
    let caps = m.contractions();
    let cups = m.insertions();
    let cov = m.cov_strands();
    let con = m.con_strands();
    let c = m.coefficient().clone();
    let mut columns: Vec<SparseVec> = Vec::with_capacity(src.dim());
    let mut out = vec![0usize; tgt.slots()];
    for col in 0..src.dim() {
        let word = src.decode(col);
        let mut entries = Vec::new();
        if caps.iter().all(|&(i, j)| word[i] == word[src.p + j]) {
            for &(s, t) in &cov {
                out[t] = word[s];
            }
            for &(t, s) in &con {
                out[tgt.p + t] = word[src.p + s];
            }
            for assignment in 0..n.pow(cups.len() as u32) {
                let mut a = assignment;
                for &(i, j) in &cups {
                    out[i] = a % n;
                    out[tgt.p + j] = a % n;
                    a /= n;
                }
                entries.push((tgt.encode(&out), c.clone()));
            }
        }
        columns.push(entries);
    }
    Ok(RationalMatrix::from_sparse_rows(tgt.dim(), columns).transpose())
}

/// `{I+E₁₂, n-cycle, (1 2), diag(−1,1,…,1)}`, generating `GL_n(ℤ)`.
pub fn gl_generators(n: usize) -> Vec<Vec<Vec<i64>>> {
    let identity = |n: usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    };
    let mut gens = Vec::new();
    let mut flip = identity(n);
    flip[0][0] = -1;
    if n >= 2 {
        let mut transvection = identity(n);
        transvection[0][1] = 1;
        gens.push(transvection);
        let cycle: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == (j + 1) % n)).collect())
            .collect();
        gens.push(cycle);
        let mut swap = identity(n);
        swap.swap(0, 1);
        gens.push(swap);
    }
    gens.push(flip);
    gens
}

fn invert(g: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = g.len();
    let mut a: Vec<Vec<Rational>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x.into())).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("invertible");
        a.swap(c, p);
        let lead = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x /= &lead;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let v = &f * &a[c][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// `ρ(g)` on `K_{p,q}(n)`: `g` on covariant slots, `g^{-T}` on contravariant ones.
pub fn group_action(space: TensorSpace, g: &[Vec<i64>]) -> RationalMatrix {
    let n = space.n;
    let inv = invert(g);
    // Per basis index: the nonzero images under g and g^{-T}.
    let cov_images: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&k| g[k][i] != 0)
                .map(|k| (k, Rational::from_integer(g[k][i].into())))
                .collect()
        })
        .collect();
    let con_images: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&k| !inv[j][k].is_zero())
                .map(|k| (k, inv[j][k].clone()))
                .collect()
        })
        .collect();
    let mut columns = Vec::with_capacity(space.dim());
    for col in 0..space.dim() {
        let word = space.decode(col);
        let mut partial: Vec<(usize, Rational)> = vec![(0, Rational::one())];
        for (slot, &i) in word.iter().enumerate() {
            let images = if slot < space.p { &cov_images[i] } else { &con_images[i] };
            let mut next = Vec::with_capacity(partial.len() * images.len());
            for (idx, c) in &partial {
                for (k, v) in images {
                    next.push((idx * n + k, c * v));
                }
            }
            partial = next;
        }
        columns.push(partial);
    }
    RationalMatrix::from_sparse_rows(space.dim(), columns).transpose()
}

/// `ω_m(1)` for a perfect matching of a balanced object.
fn matching_vector(space: TensorSpace, pairs: &[(usize, usize)]) -> SparseVec {
    let n = space.n;
    let mut word = vec![0; space.slots()];
    let mut out = Vec::new();
    for assignment in 0..n.pow(pairs.len() as u32) {
        let mut a = assignment;
        for &(i, j) in pairs {
            word[i] = a % n;
            word[space.p + j] = a % n;
            a /= n;
        }
        out.push((space.encode(&word), Rational::one()));
    }
    crate::linalg::normalize_sparse(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub shape: (usize, usize),
    pub n: usize,
    pub dim: usize,
    pub matchings: usize,
    /// Rank of the matching vectors `ω_m(1)`.
    pub matching_rank: usize,
    /// Every matching vector is invariant.
    pub matchings_invariant: bool,
    /// The matching vectors span the invariants.
    pub spanned: bool,
    #[serde(skip)]
    pub basis: Vec<SparseVec>,
}

pub fn invariants(s: &FiniteSetPair, n: usize) -> Result<InvariantReport> {
    invariants_with(s, n, &Limits::from_env())
}

pub fn invariants_with(s: &FiniteSetPair, n: usize, limits: &Limits) -> Result<InvariantReport> {
    if n < 2 {
        return Err(Error::Invalid("invariants need n ≥ 2".into()));
    }
    let space = TensorSpace::new(s.p(), s.q(), n);
    space.check(limits)?;
    let mut echelon = Echelon::new(space.dim());
    for g in gl_generators(n) {
        let rho = group_action(space, &g);
        for (i, mut row) in rho.rows().into_iter().enumerate() {
            row.push((i, -Rational::one()));
            echelon.insert(&row);
        }
    }
    let basis = echelon.kernel();
    let invariant_space = {
        let mut e = Echelon::new(space.dim());
        for v in &basis {
            e.insert(v);
        }
        e
    };
    let vectors: Vec<SparseVec> = if s.p() == s.q() {
        enumerate_matchings(s.p())
            .iter()
            .map(|m| matching_vector(space, &m.pairs))
            .collect()
    } else {
        Vec::new()
    };
    let matchings_invariant = vectors.iter().all(|v| invariant_space.contains(v));
    let matching_rank = rank(&RationalMatrix::from_sparse_rows(space.dim(), vectors.clone()));
    Ok(InvariantReport {
        shape: s.shape(),
        n,
        dim: basis.len(),
        matchings: vectors.len(),
        matching_rank,
        matchings_invariant,
        spanned: matchings_invariant && matching_rank == basis.len(),
        basis,
    })
}

/// Basis of the common kernel of all contractions.
pub fn traceless(s: &FiniteSetPair, n: usize) -> Result<Vec<SparseVec>> {
    traceless_with(s.p(), s.q(), n, &Limits::from_env())
}

pub fn traceless_with(p: usize, q: usize, n: usize, limits: &Limits) -> Result<Vec<SparseVec>> {
    let space = TensorSpace::new(p, q, n);
    space.check(limits)?;
    let s = FiniteSetPair::standard(p, q);
    let mut echelon = Echelon::new(space.dim());
    for i in 0..p {
        for j in 0..q {
            let m = k_on_morphism_with(&WalledDiagram::contraction(&s, i, j)?, n, limits)?;
            for row in m.rows() {
                echelon.insert(&row);
            }
        }
    }
    Ok(echelon.kernel())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionSummand {
    pub kept_cov: Vec<usize>,
    pub kept_con: Vec<usize>,
    pub matching: Vec<(usize, usize)>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub shape: (usize, usize),
    pub n: usize,
    pub total: usize,
    pub summand_sum: usize,
    pub image_rank: usize,
    pub direct: bool,
    pub summands: Vec<DecompositionSummand>,
}

/// The diagram `kept → S` with through strands on the kept positions and a
/// cup on each matched pair.
pub fn insertion_diagram(
    p: usize,
    q: usize,
    kept_cov: &[usize],
    kept_con: &[usize],
    matching: &[(usize, usize)],
) -> Result<WalledDiagram> {
    let source = FiniteSetPair::standard(kept_cov.len(), kept_con.len());
    let target = FiniteSetPair::standard(p, q);
    let mut pairs = Vec::new();
    for (a, &t) in kept_cov.iter().enumerate() {
        pairs.push((Endpoint::SourceCov(a), Endpoint::TargetCov(t)));
    }
    for (b, &t) in kept_con.iter().enumerate() {
        pairs.push((Endpoint::TargetCon(t), Endpoint::SourceCon(b)));
    }
    for &(i, j) in matching {
        pairs.push((Endpoint::TargetCon(j), Endpoint::TargetCov(i)));
    }
    WalledDiagram::new(source, target, &pairs, Rational::one())
}

/// `K_S(n) = Σ_{I ⊆ S} Σ_{m ∈ M(S∖I)} ω_m(K°_I(n))`, with the sum tested for
/// directness by rank.
pub fn decomposition_check(s: &FiniteSetPair, n: usize) -> Result<DecompositionReport> {
    decomposition_check_with(s, n, &Limits::from_env())
}

pub fn decomposition_check_with(
    s: &FiniteSetPair,
    n: usize,
    limits: &Limits,
) -> Result<DecompositionReport> {
    let (p, q) = s.shape();
    let space = TensorSpace::new(p, q, n);
    space.check(limits)?;
    let mut traceless_cache: HashMap<(usize, usize), Vec<SparseVec>> = HashMap::new();
    let mut echelon = Echelon::new(space.dim());
    let mut summands = Vec::new();
    for k in 0..=p.min(q) {
        let matchings = enumerate_matchings(k);
        for removed_cov in subsets(p, k) {
            let kept_cov: Vec<usize> = (0..p).filter(|a| !removed_cov.contains(a)).collect();
            for removed_con in subsets(q, k) {
                let kept_con: Vec<usize> = (0..q).filter(|a| !removed_con.contains(a)).collect();
                let shape = (kept_cov.len(), kept_con.len());
                if let std::collections::hash_map::Entry::Vacant(e) = traceless_cache.entry(shape) {
                    let basis = traceless_with(shape.0, shape.1, n, limits)?;
                    e.insert(basis);
                }
                let basis = &traceless_cache[&shape];
                for m in &matchings {
                    let pairs: Vec<(usize, usize)> = m
                        .pairs
                        .iter()
                        .map(|&(a, b)| (removed_cov[a], removed_con[b]))
                        .collect();
                    let omega = k_on_morphism_with(
                        &insertion_diagram(p, q, &kept_cov, &kept_con, &pairs)?,
                        n,
                        limits,
                    )?;
                    for v in basis {
                        echelon.insert(&omega.mul_vec(v));
                    }
                    summands.push(DecompositionSummand {
                        kept_cov: kept_cov.clone(),
                        kept_con: kept_con.clone(),
                        matching: pairs,
                        dim: basis.len(),
                    });
                }
            }
        }
    }
    let summand_sum = summands.iter().map(|s| s.dim).sum();
    let image_rank = echelon.rank();
    Ok(DecompositionReport {
        shape: (p, q),
        n,
        total: space.dim(),
        summand_sum,
        image_rank,
        direct: image_rank == summand_sum && summand_sum == space.dim(),
        summands,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::compose;
    use crate::linalg::rat;

    #[test]
    fn loop_is_n() {
        let e = FiniteSetPair::empty();
        let (x, y) = e.fresh_pair();
        let cup = WalledDiagram::insertion(&e, x, y).unwrap();
        let cap = WalledDiagram::contraction(cup.target(), 0, 0).unwrap();
        let a = k_on_morphism(&cap, 4).unwrap();
        let b = k_on_morphism(&cup, 4).unwrap();
        assert_eq!(a.mul(&b).unwrap().get(0, 0), rat(4));
        let d = compose(&cap, &cup, &rat(4)).unwrap();
        assert_eq!(k_on_morphism(&d, 4).unwrap().get(0, 0), rat(4));
    }

    #[test]
    fn zigzag_acts_as_identity() {
        let s = FiniteSetPair::standard(1, 0);
        let (x, y) = s.fresh_pair();
        let cup = WalledDiagram::insertion(&s, x, y).unwrap();
        let cap = WalledDiagram::contraction(cup.target(), 0, 0).unwrap();
        let m = k_on_morphism(&cap, 3).unwrap().mul(&k_on_morphism(&cup, 3).unwrap()).unwrap();
        assert_eq!(m, RationalMatrix::identity(3));
    }

    #[test]
    fn small_invariants() {
        let r = invariants(&FiniteSetPair::standard(1, 1), 4).unwrap();
        assert_eq!(r.dim, 1);
        assert!(r.spanned);
        assert_eq!(invariants(&FiniteSetPair::standard(1, 0), 3).unwrap().dim, 0);
    }

    #[test]
    fn traceless_dims() {
        assert_eq!(traceless(&FiniteSetPair::standard(1, 1), 5).unwrap().len(), 24);
        assert_eq!(traceless(&FiniteSetPair::standard(1, 0), 5).unwrap().len(), 5);
    }

    #[test]
    fn decomposition_examples() {
        let r = decomposition_check(&FiniteSetPair::standard(1, 1), 3).unwrap();
        assert_eq!((r.total, r.summand_sum), (9, 9));
        assert!(r.direct);
        let r = decomposition_check(&FiniteSetPair::standard(2, 1), 3).unwrap();
        assert_eq!(r.summands[0].dim, 21);
        assert!(r.direct);
        assert!(decomposition_check(&FiniteSetPair::empty(), 2).unwrap().direct);
    }

    #[test]
    fn guardrail_refuses_large_spaces() {
        let limits = Limits::default();
        let s = FiniteSetPair::standard(4, 3);
        let m = WalledDiagram::identity(&s);
        assert!(k_on_morphism_with(&m, 8, &limits).is_err());
    }
}
