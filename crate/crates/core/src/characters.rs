//! Symmetric-group characters and GL-multiplicity tables for `P′ ⊗ det`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::combinatorics::{
    enumerate_strict_partitions, integer_partitions, Bipartition, LabeledPartition, Part,
};
use crate::error::{Error, Result};
use crate::linalg::Rational;

fn beta_set(lambda: &[usize]) -> Vec<usize> {
    let l = lambda.len();
    lambda.iter().enumerate().map(|(i, &x)| x + l - 1 - i).collect()
}

fn from_beta(mut beta: Vec<usize>) -> Vec<usize> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let l = beta.len();
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (l - 1 - i))
        .filter(|&x| x > 0)
        .collect()
}

static CHARACTER_CACHE: Mutex<Option<HashMap<(Vec<usize>, Vec<usize>), i64>>> = Mutex::new(None);

/// `χ^λ(ρ)` by Murnaghan–Nakayama.
pub fn specht_character(lambda: &[usize], rho: &[usize]) -> Result<i64> {
    let a: usize = lambda.iter().sum();
    let b: usize = rho.iter().sum();
    if a != b {
        return Err(Error::SizeMismatch { left: a, right: b });
    }
    Ok(mn(lambda.to_vec(), rho.to_vec()))
}

fn mn(lambda: Vec<usize>, rho: Vec<usize>) -> i64 {
    if rho.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), rho.clone());
    if let Some(&v) = CHARACTER_CACHE
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .get(&key)
    {
        return v;
    }
    let r = rho[0];
    let rest = rho[1..].to_vec();
    let beta = beta_set(&lambda);
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut moved = beta.clone();
        moved[idx] = b - r;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(from_beta(moved), rest.clone());
    }
    CHARACTER_CACHE
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, total);
    total
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// Size of the conjugacy class of cycle type `rho` in `Σ_{|rho|}`.
pub fn class_size(rho: &[usize]) -> BigInt {
    let k: usize = rho.iter().sum();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &r in rho {
        *counts.entry(r).or_default() += 1;
    }
    let z = counts.iter().fold(BigInt::one(), |acc, (&i, &m)| {
        acc * BigInt::from(i).pow(m as u32) * factorial(m)
    });
    factorial(k) / z
}

/// `dim S^λ` as `χ^λ(1^k)`.
pub fn specht_dimension(lambda: &[usize]) -> i64 {
    let k: usize = lambda.iter().sum();
    mn(lambda.to_vec(), vec![1; k])
}

/// A permutation of `0..k` with the given cycle type, cycles on consecutive points.
fn representative(rho: &[usize]) -> Vec<usize> {
    let mut perm = Vec::new();
    let mut start = 0;
    for &r in rho {
        for i in 0..r {
            perm.push(start + (i + 1) % r);
        }
        start += r;
    }
    perm
}

fn perm_sign(perm: &[usize]) -> i64 {
    crate::combinatorics::sequence_sign(perm) as i64
}

/// Conjugacy class data of `Σ_p × Σ_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CycleTypePair {
    pub cov: Vec<usize>,
    pub con: Vec<usize>,
}

/// Trace of a class representative on `P′(p,q) ⊗ det`.
pub fn module_character(p: usize, q: usize, class: &CycleTypePair) -> Result<Rational> {
    let basis = enumerate_strict_partitions(p, q);
    module_character_on(&basis, p, q, class)
}

fn module_character_on(
    basis: &[LabeledPartition],
    p: usize,
    q: usize,
    class: &CycleTypePair,
) -> Result<Rational> {
    if class.cov.iter().sum::<usize>() != p || class.con.iter().sum::<usize>() != q {
        return Err(Error::Invalid(format!("class {class:?} is not of shape ({p},{q})")));
    }
    let sigma = representative(&class.cov);
    let tau = representative(&class.con);
    let fixed = basis
        .iter()
        .filter(|lp| {
            let moved = LabeledPartition::from_parts_unchecked(
                p,
                q,
                lp.parts()
                    .iter()
                    .map(|part| Part {
                        block: part.block.iter().map(|&a| sigma[a]).collect(),
                        label: part.label.map(|l| tau[l]),
                    })
                    .collect(),
            );
            &moved == *lp
        })
        .count();
    Ok(Rational::from_integer(
        (perm_sign(&sigma) * perm_sign(&tau) * fixed as i64).into(),
    ))
}

/// Which side of a bipartition records the contravariant content.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// `λ ⊢ p`, `μ ⊢ q`: the degree-one table reads `((1,1),(1))`.
    #[default]
    MuDual,
    /// The transposed reading.
    LambdaDual,
}

impl FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu-dual" => Ok(Convention::MuDual),
            "lambda-dual" => Ok(Convention::LambdaDual),
            other => Err(Error::Parse(format!("unknown convention {other:?}"))),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::MuDual => "mu-dual",
            Convention::LambdaDual => "lambda-dual",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityTable {
    pub degree: i64,
    /// Formal monomial in the `y` classes as a partition `i₁ ≥ i₂ ≥ …` of
    /// `y_{4i₁}·y_{4i₂}⋯`; empty for the algebraic part.
    pub y_monomial: Vec<usize>,
    pub entries: BTreeMap<Bipartition, u64>,
    pub n_min: usize,
}

impl MultiplicityTable {
    pub fn total_dimension(&self, n: usize) -> BigInt {
        self.entries
            .iter()
            .map(|(b, &m)| gl_dimension(b, n) * BigInt::from(m))
            .sum()
    }

    pub fn transposed(&self) -> MultiplicityTable {
        MultiplicityTable {
            entries: self
                .entries
                .iter()
                .map(|(b, &m)| (Bipartition::new(b.mu.clone(), b.lambda.clone()), m))
                .collect(),
            ..self.clone()
        }
    }
}

/// `⟨χ_{P′⊗det}, χ^λ × χ^μ⟩` over `Σ_p × Σ_q`.
pub fn multiplicities(p: usize, q: usize) -> Result<MultiplicityTable> {
    if p < 2 * q {
        return Err(Error::Invalid(format!("need p ≥ 2q, got ({p},{q})")));
    }
    let basis = enumerate_strict_partitions(p, q);
    let classes_p = integer_partitions(p);
    let classes_q = integer_partitions(q);
    let order = Rational::from_integer(factorial(p) * factorial(q));
    let mut chi = HashMap::new();
    for rho in &classes_p {
        for pi in &classes_q {
            let class = CycleTypePair {
                cov: rho.clone(),
                con: pi.clone(),
            };
            let value = module_character_on(&basis, p, q, &class)?;
            let weight = Rational::from_integer(class_size(rho) * class_size(pi));
            chi.insert((rho.clone(), pi.clone()), value * weight);
        }
    }
    let mut entries = BTreeMap::new();
    for lambda in &classes_p {
        for mu in &classes_q {
            let mut acc = Rational::zero();
            for rho in &classes_p {
                for pi in &classes_q {
                    let irr = mn(lambda.clone(), rho.clone()) * mn(mu.clone(), pi.clone());
                    acc += &chi[&(rho.clone(), pi.clone())] * Rational::from_integer(irr.into());
                }
            }
            let m = acc / &order;
            if !m.is_integer() || m.is_negative() {
                return Err(Error::Invalid(format!(
                    "character bug: multiplicity {m} for ({lambda:?},{mu:?})"
                )));
            }
            let m = m.to_integer().to_u64().expect("small multiplicity");
            if m > 0 {
                entries.insert(Bipartition::new(lambda.clone(), mu.clone()), m);
            }
        }
    }
    Ok(MultiplicityTable {
        degree: p as i64 - q as i64,
        y_monomial: Vec::new(),
        entries,
        n_min: stable_threshold(p as i64 - q as i64),
    })
}

/// Smallest `n` for which a degree-`d` table is asserted to describe the
/// stable cohomology: twice the degree plus the largest object size plus 3.
pub fn stable_threshold(degree: i64) -> usize {
    let d = degree.max(0) as usize;
    2 * d + 3 * d + 3
}

/// Weyl dimension of `V_{λ,μ}(n)`; zero when `l(λ) + l(μ) > n`.
pub fn gl_dimension(b: &Bipartition, n: usize) -> BigInt {
    if b.length() > n {
        return BigInt::zero();
    }
    let mut weight = vec![0i64; n];
    for (i, &x) in b.lambda.iter().enumerate() {
        weight[i] = x as i64;
    }
    for (i, &x) in b.mu.iter().enumerate() {
        weight[n - 1 - i] = -(x as i64);
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= weight[i] - weight[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    num / den
}

/// Multiplicity tables for degree `degree`: one block for the algebraic part
/// and, with `with_y`, one block per monomial in `y₄, y₈, …` of degree `≤ degree`.
pub fn stable_table(degree: usize, with_y: bool, convention: Convention) -> Result<Vec<MultiplicityTable>> {
    let mut out = Vec::new();
    let max_k = if with_y { degree / 4 } else { 0 };
    for k in 0..=max_k {
        let algebraic = degree - 4 * k;
        let monomials = if k == 0 { vec![Vec::new()] } else { integer_partitions(k) };
        let mut entries = BTreeMap::new();
        for p in algebraic..=2 * algebraic {
            let table = multiplicities(p, p - algebraic)?;
            for (b, m) in table.entries {
                *entries.entry(b).or_insert(0) += m;
            }
        }
        for y in monomials {
            let table = MultiplicityTable {
                degree: degree as i64,
                y_monomial: y,
                entries: entries.clone(),
                n_min: stable_threshold(degree as i64),
            };
            out.push(match convention {
                Convention::MuDual => table,
                Convention::LambdaDual => table.transposed(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn character_examples() {
        assert_eq!(specht_character(&[3], &[2, 1]).unwrap(), 1);
        assert_eq!(specht_character(&[1, 1], &[2]).unwrap(), -1);
        assert_eq!(specht_character(&[2, 1], &[1, 1, 1]).unwrap(), 2);
        assert_eq!(specht_character(&[2, 1], &[3]).unwrap(), -1);
        assert!(specht_character(&[2], &[1]).is_err());
    }

    #[test]
    fn module_character_examples() {
        let id = CycleTypePair { cov: vec![1, 1], con: vec![1] };
        assert_eq!(module_character(2, 1, &id).unwrap(), rat(1));
        let swap = CycleTypePair { cov: vec![2], con: vec![1] };
        assert_eq!(module_character(2, 1, &swap).unwrap(), rat(-1));
        let id = CycleTypePair { cov: vec![1; 4], con: vec![1, 1] };
        assert_eq!(module_character(4, 2, &id).unwrap(), rat(6));
    }

    #[test]
    fn low_degree_tables() {
        let t = multiplicities(1, 0).unwrap();
        assert_eq!(t.entries.len(), 1);
        assert_eq!(t.entries[&Bipartition::new(vec![1], vec![])], 1);
        let t = multiplicities(2, 1).unwrap();
        assert_eq!(t.entries.into_iter().collect::<Vec<_>>(), vec![(Bipartition::new(vec![1, 1], vec![1]), 1)]);
        let t = stable_table(0, false, Convention::MuDual).unwrap();
        assert_eq!(t[0].entries[&Bipartition::new(vec![], vec![])], 1);
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(gl_dimension(&Bipartition::new(vec![1], vec![]), 5), BigInt::from(5));
        assert_eq!(gl_dimension(&Bipartition::new(vec![1], vec![1]), 4), BigInt::from(15));
        assert_eq!(gl_dimension(&Bipartition::new(vec![1], vec![1, 1]), 3), BigInt::from(6));
        assert_eq!(gl_dimension(&Bipartition::new(vec![1, 1], vec![1, 1]), 3), BigInt::zero());
    }

    #[test]
    fn y_blocks_shift_degree() {
        let blocks = stable_table(4, true, Convention::MuDual).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[1].y_monomial, vec![1]);
        assert_eq!(blocks[1].entries, stable_table(0, false, Convention::MuDual).unwrap()[0].entries);
    }
}
