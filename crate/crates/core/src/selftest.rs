//! Built-in property suites at desk scale.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::brauer::{compose, compose_counting, Charge, WalledDiagram};
use crate::characters::{
    gl_dimension, specht_character, specht_dimension, stable_table, Convention,
};
use crate::coend::compute_w;
use crate::combinatorics::{enumerate_partitions, integer_partitions, Bipartition, FiniteSetPair};
use crate::error::{Error, Result};
use crate::graphs::{confluence_check, enumerate_graphs, graph_space};
use crate::linalg::Rational;
use crate::partition::{apply_det, apply_p, kan_decompose, wheeled_model_check, DetGenerator, PartitionVector};
use crate::presentation::{comparison_map, ring_pres_component};
use crate::tensor_rep::{decomposition_check, invariants, k_on_morphism, traceless};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(Error::Parse(format!("unknown selftest level {other:?}"))),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Quick => "quick",
            Level::Full => "full",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => CheckOutcome::new(name, passed, detail),
            Err(e) => CheckOutcome::new(name, false, e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestSummary {
    pub level: Level,
    pub n_max: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckOutcome>,
}

impl SelftestSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// A diagram `source → target` with a uniformly random matching.
pub fn random_diagram<R: Rng + ?Sized>(
    source: &FiniteSetPair,
    target: &FiniteSetPair,
    rng: &mut R,
) -> Result<WalledDiagram> {
    let mut mates: Vec<usize> = (0..source.p() + target.q()).collect();
    mates.shuffle(rng);
    WalledDiagram::from_mates(source.clone(), target.clone(), mates, Rational::one())
}

/// Three objects of total size at most `max_size` sharing `p − q`, and random
/// diagrams `f: S → T`, `g: T → U`.
pub fn random_composable_pair<R: Rng + ?Sized>(
    max_size: usize,
    rng: &mut R,
) -> Result<(WalledDiagram, WalledDiagram)> {
    let m = max_size as i64;
    let k = rng.gen_range(-m..=m);
    let shapes: Vec<(usize, usize)> = (0..=max_size)
        .filter_map(|q| {
            let p = q as i64 + k;
            (p >= 0 && p as usize + q <= max_size).then_some((p as usize, q))
        })
        .collect();
    let mut pick = || {
        let (p, q) = shapes[rng.gen_range(0..shapes.len())];
        FiniteSetPair::standard(p, q)
    };
    let (s, t, u) = (pick(), pick(), pick());
    Ok((random_diagram(&s, &t, rng)?, random_diagram(&t, &u, rng)?))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FunctorLawReport {
    pub pairs: usize,
    pub k_failures: usize,
    pub p_failures: usize,
    pub det_failures: usize,
    /// Det failures among pairs whose composite closes no loop.
    pub det_failures_without_loops: usize,
}

/// Compare `F(g∘f)` with `F(g)F(f)` for `K`, `P` and `det` on random pairs.
pub fn functor_laws(pairs: usize, max_size: usize, n_max: usize, seed: u64) -> Result<FunctorLawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = FunctorLawReport {
        pairs,
        ..Default::default()
    };
    for _ in 0..pairs {
        let (f, g) = random_composable_pair(max_size, &mut rng)?;
        let n = rng.gen_range(2..=n_max.max(2));
        let charge = Rational::from_integer(n.into());
        let gf = compose(&g, &f, &charge)?;
        let (_, loops) = compose_counting(&g, &f)?;

        if k_on_morphism(&gf, n)? != k_on_morphism(&g, n)?.mul(&k_on_morphism(&f, n)?)? {
            report.k_failures += 1;
        }

        let c = Charge::int(n as i64);
        let (p, q) = f.source().shape();
        for lp in enumerate_partitions(p, q) {
            let v = PartitionVector::basis(lp);
            if apply_p(&gf, &v, &c)? != apply_p(&g, &apply_p(&f, &v, &c)?, &c)? {
                report.p_failures += 1;
                break;
            }
        }

        let w = DetGenerator::standard(p, q);
        if apply_det(&gf, &w)?.normalized() != apply_det(&g, &apply_det(&f, &w)?)?.normalized() {
            report.det_failures += 1;
            if loops == 0 {
                report.det_failures_without_loops += 1;
            }
        }
    }
    Ok(report)
}

/// `Σ dim S^λ · dim S^μ · dim V_{λ,μ}(n)` over `λ ⊢ p`, `μ ⊢ q`.
pub fn schur_weyl_prediction(p: usize, q: usize, n: usize) -> BigInt {
    let mut total = BigInt::from(0);
    for lambda in integer_partitions(p) {
        for mu in integer_partitions(q) {
            let d = specht_dimension(&lambda) * specht_dimension(&mu);
            total += gl_dimension(&Bipartition::new(lambda.clone(), mu), n) * d;
        }
    }
    total
}

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn h1_dimension(n: usize) -> usize {
    n * n * (n - 1) / 2
}

type Check = Box<dyn Fn(usize) -> CheckOutcome + Send + Sync>;

fn quick_checks() -> Vec<Check> {
    vec![
        Box::new(|_| {
            let s = FiniteSetPair::standard(1, 1);
            let r = (|| {
                let id = WalledDiagram::identity(&s);
                let m = k_on_morphism(&id, 2)?;
                Ok((m == crate::linalg::RationalMatrix::identity(4), "K(id) = id at n = 2".into()))
            })();
            CheckOutcome::from_result("identity acts trivially", r)
        }),
        Box::new(|_| {
            let r = (|| {
                let s = FiniteSetPair::empty();
                let (x, y) = s.fresh_pair();
                let cup = WalledDiagram::insertion(&s, x, y)?;
                let cap = WalledDiagram::contraction(cup.target(), 0, 0)?;
                let d = compose(&cap, &cup, &Rational::from_integer(5.into()))?;
                Ok((*d.coefficient() == Rational::from_integer(5.into()), "closed loop at n = 5".into()))
            })();
            CheckOutcome::from_result("loop evaluates to the charge", r)
        }),
        Box::new(|_| {
            let counts: Vec<usize> = [(1, 1), (2, 1), (2, 0)]
                .iter()
                .map(|&(p, q)| enumerate_partitions(p, q).len())
                .collect();
            CheckOutcome::new("partition counts", counts == [1, 3, 2], format!("{counts:?}"))
        }),
        Box::new(|_| {
            let r = (|| {
                let one = enumerate_graphs(&FiniteSetPair::standard(1, 1))?.len();
                let none = enumerate_graphs(&FiniteSetPair::standard(1, 2))?.len();
                Ok((one == 1 && none == 0, format!("{one} graph over (1,1), {none} over (1,2)")))
            })();
            CheckOutcome::from_result("graph counts", r)
        }),
        Box::new(|_| {
            let r = (|| {
                let trivial = specht_character(&[3], &[2, 1])?;
                let sign = specht_character(&[1, 1], &[2])?;
                Ok((trivial == 1 && sign == -1, format!("trivial {trivial}, sign {sign}")))
            })();
            CheckOutcome::from_result("trivial and sign characters", r)
        }),
        Box::new(|_| {
            let ok = (2..=6).all(|n| {
                gl_dimension(&Bipartition::new(vec![1], vec![]), n) == BigInt::from(n)
                    && gl_dimension(&Bipartition::new(vec![1], vec![1]), n) == BigInt::from(n * n - 1)
            });
            CheckOutcome::new("standard and adjoint dimensions", ok, "n = 2..6")
        }),
        Box::new(|_| {
            let r = (|| {
                let t = stable_table(0, false, Convention::MuDual)?;
                let unit = t.len() == 1
                    && t[0].entries.len() == 1
                    && t[0].entries.get(&Bipartition::new(vec![], vec![])) == Some(&1);
                Ok((unit, format!("{} block(s)", t.len())))
            })();
            CheckOutcome::from_result("degree-zero table is the unit", r)
        }),
        Box::new(|_| {
            let r = (|| {
                let c = comparison_map(2, 0)?;
                Ok((c.dim == 1 && c.coend_dim == 1, format!("{}/{}", c.dim, c.coend_dim)))
            })();
            CheckOutcome::from_result("degree-zero comparison", r)
        }),
    ]
}

fn full_checks() -> Vec<Check> {
    vec![
        Box::new(|n_max| {
            let r = (|| {
                let mut cases = 0;
                let mut bad = Vec::new();
                for p in 0..=4 {
                    for q in 0..=4 - p {
                        for n in p + q + 3..=n_max.min(6) {
                            let dim = invariants(&FiniteSetPair::standard(p, q), n)?.dim;
                            let expected = if p == q { factorial(p) } else { 0 };
                            cases += 1;
                            if dim != expected {
                                bad.push(format!("({p},{q}) n={n}: {dim} ≠ {expected}"));
                            }
                        }
                    }
                }
                Ok((bad.is_empty(), format!("{cases} cases {}", bad.join("; "))))
            })();
            CheckOutcome::from_result("invariant dimensions", r)
        }),
        Box::new(|n_max| {
            let r = (|| {
                let mut cases = 0;
                let mut bad = Vec::new();
                for (p, q) in [(1, 1), (2, 1), (2, 2)] {
                    for n in (p + q).max(2)..=n_max.min(5) {
                        let d = decomposition_check(&FiniteSetPair::standard(p, q), n)?;
                        cases += 1;
                        if !d.direct || d.total != d.summand_sum {
                            bad.push(format!("({p},{q}) n={n}"));
                        }
                    }
                }
                Ok((bad.is_empty(), format!("{cases} cases {}", bad.join("; "))))
            })();
            CheckOutcome::from_result("decomposition into traceless parts", r)
        }),
        Box::new(|n_max| {
            let r = functor_laws(200, 4, n_max.min(4), 0x5eed).map(|f| {
                (
                    f.k_failures == 0 && f.p_failures == 0,
                    format!("{} pairs: K {} / P {} failures", f.pairs, f.k_failures, f.p_failures),
                )
            });
            CheckOutcome::from_result("K and P functor laws", r)
        }),
        Box::new(|n_max| {
            let r = functor_laws(200, 4, n_max.min(4), 0x5eed).map(|f| {
                (
                    f.det_failures == 0,
                    format!(
                        "{} pairs: {} failures, {} without closed loops",
                        f.pairs, f.det_failures, f.det_failures_without_loops
                    ),
                )
            });
            CheckOutcome::from_result("det functor law", r)
        }),
        Box::new(|_| {
            let mut bad = Vec::new();
            for p in 0..=6 {
                for q in 0..=3 {
                    let k = kan_decompose(p, q);
                    if k.total != k.partitions || !k.bijective {
                        bad.push(format!("({p},{q})"));
                    }
                }
            }
            CheckOutcome::new("Kan decomposition of partitions", bad.is_empty(), bad.join("; "))
        }),
        Box::new(|_| {
            let r = (|| {
                let mut bad = Vec::new();
                for p in 0..=5 {
                    for q in 0..=2.min(p) {
                        let g = graph_space(&FiniteSetPair::standard(p, q))?;
                        if g.dim != g.partitions || !g.normal_forms_consistent {
                            bad.push(format!("({p},{q}): {} vs {}", g.dim, g.partitions));
                        }
                    }
                }
                Ok((bad.is_empty(), bad.join("; ")))
            })();
            CheckOutcome::from_result("graph spaces match partitions", r)
        }),
        Box::new(|_| {
            let r = (|| {
                let mut graphs = 0;
                let mut bad = 0;
                for q in 0..=2 {
                    for v in 0..=4 {
                        let p = q + v;
                        if p + q > 6 {
                            continue;
                        }
                        for g in enumerate_graphs(&FiniteSetPair::standard(p, q))? {
                            graphs += 1;
                            if !confluence_check(&g).confluent {
                                bad += 1;
                            }
                        }
                    }
                }
                Ok((bad == 0, format!("{graphs} graphs, {bad} non-confluent")))
            })();
            CheckOutcome::from_result("rewriting confluence", r)
        }),
        Box::new(|_| {
            let r = wheeled_model_check(5).map(|w| {
                let names: Vec<String> = w.violations().iter().map(|c| c.name.clone()).collect();
                (w.all_hold(), format!("{} violations {}", names.len(), names.join("; ")))
            });
            CheckOutcome::from_result("wheeled relations", r)
        }),
        Box::new(|n_max| {
            let r = (|| {
                let mut rows = Vec::new();
                let mut ok = true;
                for n in 3..=n_max.min(6) {
                    let mut degrees = vec![0, 1, 2];
                    if n <= 4 {
                        degrees.push(3);
                    }
                    for d in degrees {
                        let c = comparison_map(n, d)?;
                        ok &= c.surjective && c.relations_vanish;
                        if d == 1 {
                            let h1 = h1_dimension(n) as u64;
                            ok &= c.dim == h1 && c.coend_dim == h1;
                        }
                        rows.push(format!("n={n} d={d}: {}/{} inj={}", c.dim, c.coend_dim, c.injective));
                    }
                }
                Ok((ok, rows.join("; ")))
            })();
            CheckOutcome::from_result("presentation comparison", r)
        }),
        Box::new(|n_max| {
            let r = (|| {
                let mut bad = Vec::new();
                for p in 0..=2 {
                    for q in 0..=2 {
                        for n in (p + q).max(2)..=n_max.min(5) {
                            let dim = traceless(&FiniteSetPair::standard(p, q), n)?.len();
                            let predicted = schur_weyl_prediction(p, q, n);
                            if BigInt::from(dim) != predicted {
                                bad.push(format!("({p},{q}) n={n}: {dim} ≠ {predicted}"));
                            }
                        }
                    }
                }
                Ok((bad.is_empty(), bad.join("; ")))
            })();
            CheckOutcome::from_result("Schur-Weyl dimensions", r)
        }),
        Box::new(|n_max| {
            let r = (|| {
                let t1 = stable_table(1, false, Convention::MuDual)?;
                let mut ok = (3..=n_max.max(3)).all(|n| t1[0].total_dimension(n) == BigInt::from(h1_dimension(n)));
                let n = n_max.clamp(5, 6);
                let t2: BigInt = stable_table(2, false, Convention::MuDual)?
                    .iter()
                    .map(|t| t.total_dimension(n))
                    .sum();
                let pres = ring_pres_component(n, 2)?.dim;
                ok &= t2 == BigInt::from(pres);
                Ok((ok, format!("degree 2 at n={n}: table {t2}, presented {pres}")))
            })();
            CheckOutcome::from_result("stable tables", r)
        }),
        Box::new(|n_max| {
            let r = (|| {
                let mut rows = Vec::new();
                let mut ok = true;
                for n in 3..=n_max.min(5) {
                    let w = compute_w(1, n)?;
                    ok &= w.dim == n * n * (n - 1) / 2 && w.matches;
                    rows.push(format!("n={n}: {}", w.dim));
                }
                Ok((ok, rows.join("; ")))
            })();
            CheckOutcome::from_result("Albanese degree one", r)
        }),
    ]
}

pub fn run_selftest(level: Level, n_max: usize) -> SelftestSummary {
    let mut checks = quick_checks();
    if level == Level::Full {
        checks.extend(full_checks());
    }
    let outcomes: Vec<CheckOutcome> = checks.par_iter().map(|c| c(n_max)).collect();
    let passed = outcomes.iter().filter(|c| c.passed).count();
    SelftestSummary {
        level,
        n_max,
        passed,
        failed: outcomes.len() - passed,
        checks: outcomes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let s = run_selftest(Level::Quick, 3);
        assert!(s.all_passed(), "{:?}", s.checks);
    }

    #[test]
    fn random_pairs_compose() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let (f, g) = random_composable_pair(4, &mut rng).unwrap();
            assert_eq!(f.target(), g.source());
            assert!(f.source().size() <= 4 && g.target().size() <= 4);
        }
    }

    #[test]
    fn schur_weyl_small() {
        assert_eq!(schur_weyl_prediction(1, 1, 3), BigInt::from(8));
    }
}
