//! Index sets, brute-force congruence solvers, and the classification reports: finite-type
//! objects, their Nichols algebras, and the resulting Hopf algebras over H_{p,-1}.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::DEFAULT_CAP;
use crate::nichols::graded_dims;
use crate::rewrite::{build_lifting, in_lambda3, Dimension, Family};
use crate::scalar::ScalarContext;
use crate::ydmod::{braiding, direct_sum, finiteness_verdict, in_lambda, make_simple, shared_h, Summand, Verdict};

pub const SCHEMA: u32 = 1;

type Pair = (i64, i64);

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

fn md(x: i64, p: usize) -> i64 {
    x.rem_euclid(2 * p as i64)
}

fn ord(e: i64, p: usize) -> i64 {
    let n = 2 * p as i64;
    n / num_integer::gcd(e.rem_euclid(n), n)
}

// ---------------------------------------------------------------------------
// index sets

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSets {
    pub p: usize,
    pub lambda: Vec<Pair>,
    pub lambda1: Vec<Pair>,
    pub lambda2: Vec<Pair>,
    pub lambda3: Vec<Pair>,
    pub lambda4: Vec<Pair>,
}

/// Λ and Λ¹..Λ⁴, each membership decided by evaluating the defining scalar identities.
pub fn lambda_sets(ctx: &ScalarContext) -> IndexSets {
    let p = ctx.p();
    let n = 2 * p as i64;
    let pi = p as i64;
    let one = ctx.one();
    let lambda: Vec<Pair> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| !ctx.xi_pow(pi * i - j).is_one()).collect();
    let pick = |f: &dyn Fn(i64, i64) -> bool| lambda.iter().copied().filter(|&(i, j)| f(i, j)).collect::<Vec<_>>();
    let lambda1 = pick(&|i, j| (&one + &ctx.xi_pow(-i * j)).is_zero());
    let lambda2 = pick(&|i, j| (&one + &ctx.xi_pow((pi - j) * (i + 1))).is_zero());
    let lambda3 = pick(&|i, j| in_lambda3(ctx, i, j));
    let lambda4 = pick(&|i, j| {
        ctx.xi_pow((pi + j) * (i - 1)).is_one() && ctx.xi_pow(3 * i * j).is_one() && ctx.xi_pow(3 * (i + 1)).is_one()
    });
    IndexSets { p, lambda, lambda1, lambda2, lambda3, lambda4 }
}

// ---------------------------------------------------------------------------
// congruence systems

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shape {
    /// (i,j): V_{i,j}
    Simple,
    /// (i,j,k): V_{i,j} ⊕ K_{χ^k}, connected case
    WithChi,
    /// (i,j,k,ℓ): V_{i,j} ⊕ V_{k,ℓ}
    Pair,
}

struct System {
    label: &'static str,
    equations: &'static [&'static str],
    holds: fn(&[i64], i64) -> bool,
}

struct Group {
    name: &'static str,
    shape: Shape,
    systems: Vec<System>,
    /// The stated solution set, for prime p.
    closed: fn(usize) -> Vec<Vec<i64>>,
    closed_text: &'static str,
}

fn c0(x: i64, p: i64) -> bool {
    x.rem_euclid(2 * p) == 0
}

fn cp(x: i64, p: i64) -> bool {
    x.rem_euclid(2 * p) == p
}

fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

fn groups() -> Vec<Group> {
    vec![
        Group {
            name: "simple: vertex label -1",
            shape: Shape::Simple,
            systems: vec![System { label: "S1", equations: &["ij ≡ p"], holds: |v, p| cp(v[0] * v[1], p) }],
            closed: |p| {
                let p = p as i64;
                (0..2 * p).filter(|&j| odd(j) && j != p).map(|j| vec![p, j]).collect()
            },
            closed_text: "i = p, j odd, j ≠ p",
        },
        Group {
            name: "simple: edge times label 1",
            shape: Shape::Simple,
            systems: vec![System { label: "S2", equations: &["pi − (i+1)j ≡ 0"], holds: |v, p| c0(p * v[0] - (v[0] + 1) * v[1], p) }],
            closed: |p| {
                let p = p as i64;
                (0..2 * p).filter(|&j| odd(p - j) && j != 0).map(|j| vec![p - 1, j]).collect()
            },
            closed_text: "i = p − 1, p − j odd, j ≠ 0",
        },
        Group {
            name: "simple: standard B2",
            shape: Shape::Simple,
            systems: vec![System { label: "S3", equations: &["pi − (2i+1)j ≡ 0"], holds: |v, p| c0(p * v[0] - (2 * v[0] + 1) * v[1], p) }],
            closed: |p| {
                if p % 2 == 0 {
                    return vec![];
                }
                let p = p as i64;
                let h = (p - 1) / 2;
                let mut out = vec![];
                for i in [h, h + p] {
                    for j in 0..2 * p {
                        if (j - i).rem_euclid(2) == 0 && j != 0 && j != p {
                            out.push(vec![i, j]);
                        }
                    }
                }
                out
            },
            closed_text: "i = (p−1)/2, j ≡ (p−1)/2 mod 2; i = (p−1)/2 + p, j ≡ (p−1)/2 + p mod 2",
        },
        Group {
            name: "simple: G2-type (ς of order 3)",
            shape: Shape::Simple,
            systems: vec![System {
                label: "S4",
                equations: &["3ij ≡ 0", "p(i+1) + (i−1)j ≡ 0"],
                holds: |v, p| c0(3 * v[0] * v[1], p) && c0(p * (v[0] + 1) + (v[0] - 1) * v[1], p),
            }],
            closed: |p| if p == 3 { vec![vec![1, 2], vec![1, 4], vec![4, 1], vec![4, 5]] } else { vec![] },
            closed_text: "p = 3: (1,2), (1,4), (4,1), (4,5)",
        },
        Group {
            name: "simple: ς of order 5",
            shape: Shape::Simple,
            systems: vec![
                System {
                    label: "S5",
                    equations: &["5ij ≡ 0", "pi + (2i−1)j ≡ 0"],
                    holds: |v, p| c0(5 * v[0] * v[1], p) && c0(p * v[0] + (2 * v[0] - 1) * v[1], p),
                },
                System {
                    label: "S6",
                    equations: &["5ij ≡ p", "p(i+1) + (i−1)j ≡ 0"],
                    holds: |v, p| cp(5 * v[0] * v[1], p) && c0(p * (v[0] + 1) + (v[0] - 1) * v[1], p),
                },
            ],
            closed: |p| {
                if p != 5 {
                    return vec![];
                }
                let mut out: Vec<Vec<i64>> = [2, 4, 6, 8].iter().map(|&j| vec![8, j]).collect();
                out.extend([1, 3, 7, 9].iter().map(|&j| vec![1, j]));
                out
            },
            closed_text: "p = 5: (8,j), j ∈ {2,4,6,8}; (1,j), j ∈ {1,3,7,9}",
        },
        Group {
            name: "with χ: rank-three chain, displayed form",
            shape: Shape::WithChi,
            systems: vec![
                System {
                    label: "C1",
                    equations: &["ij ≡ 0", "(k+1)(pi−j) ≡ 0", "k odd"],
                    holds: |v, p| c0(v[0] * v[1], p) && c0((v[2] + 1) * (p * v[0] - v[1]), p) && odd(v[2]),
                },
                System {
                    label: "C2",
                    equations: &["pi − (i+1)j ≡ 0", "kpi − (k+i)j ≡ 0", "k odd"],
                    holds: |v, p| c0(p * v[0] - (v[0] + 1) * v[1], p) && c0(v[2] * p * v[0] - (v[2] + v[0]) * v[1], p) && odd(v[2]),
                },
            ],
            closed: chi_chain_closed,
            closed_text: "i = p, j odd, j ≠ p, k = 2p−1; i = p−1, p−j odd, j ≠ 0, k = 1",
        },
        Group {
            name: "with χ: rank-three chain, reading ξ^{-ij} = −1",
            shape: Shape::WithChi,
            systems: vec![
                System {
                    label: "C1'",
                    equations: &["ij ≡ p", "(k+1)(pi−j) ≡ 0", "k odd"],
                    holds: |v, p| cp(v[0] * v[1], p) && c0((v[2] + 1) * (p * v[0] - v[1]), p) && odd(v[2]),
                },
                System {
                    label: "C2",
                    equations: &["pi − (i+1)j ≡ 0", "kpi − (k+i)j ≡ 0", "k odd"],
                    holds: |v, p| c0(p * v[0] - (v[0] + 1) * v[1], p) && c0(v[2] * p * v[0] - (v[2] + v[0]) * v[1], p) && odd(v[2]),
                },
            ],
            closed: chi_chain_closed,
            closed_text: "i = p, j odd, j ≠ p, k = 2p−1; i = p−1, p−j odd, j ≠ 0, k = 1",
        },
        Group {
            name: "with χ: rank-three, ς of order 3",
            shape: Shape::WithChi,
            systems: vec![
                System {
                    label: "C3",
                    equations: &["3ij ≡ 0", "pi − (i+1)j ≡ 0", "(k+1)(pi−j) ≡ 0", "k odd"],
                    holds: |v, p| {
                        c0(3 * v[0] * v[1], p) && c0(p * v[0] - (v[0] + 1) * v[1], p) && c0((v[2] + 1) * (p * v[0] - v[1]), p) && odd(v[2])
                    },
                },
                System {
                    label: "C4",
                    equations: &["3ij ≡ 0", "pki − (i+k)j ≡ 0", "(k+1)(pi−j) ≡ 0", "k odd"],
                    holds: |v, p| {
                        c0(3 * v[0] * v[1], p)
                            && c0(p * v[2] * v[0] - (v[0] + v[2]) * v[1], p)
                            && c0((v[2] + 1) * (p * v[0] - v[1]), p)
                            && odd(v[2])
                    },
                },
                System {
                    label: "C5",
                    equations: &["ij ≡ p", "3(pi−j) ≡ 0", "(k−1)(pi−j) ≡ 0", "k odd"],
                    holds: |v, p| cp(v[0] * v[1], p) && c0(3 * (p * v[0] - v[1]), p) && c0((v[2] - 1) * (p * v[0] - v[1]), p) && odd(v[2]),
                },
                System {
                    label: "C6",
                    equations: &["3ij ≡ p", "p(i+1) + (i−1)j ≡ 0", "(k−1)(pi−j) ≡ 0", "k odd"],
                    holds: |v, p| {
                        cp(3 * v[0] * v[1], p)
                            && c0(p * (v[0] + 1) + (v[0] - 1) * v[1], p)
                            && c0((v[2] - 1) * (p * v[0] - v[1]), p)
                            && odd(v[2])
                    },
                },
            ],
            closed: |p| {
                if p != 3 {
                    return vec![];
                }
                let mut out = vec![];
                for j in [2, 4] {
                    out.push(vec![2, j, 5]);
                    out.push(vec![4, j, 5]);
                }
                for j in [1, 5] {
                    out.push(vec![3, j, 1]);
                    out.push(vec![1, j, 1]);
                }
                out
            },
            closed_text: "p = 3: (2,j,5), (4,j,5) for j even ≠ 0; (3,j,1), (1,j,1) for j odd ≠ 3",
        },
        Group {
            name: "pair: rank-three chain, displayed form",
            shape: Shape::Pair,
            systems: vec![
                System {
                    label: "P1",
                    equations: &["kj + iℓ ≡ 0", "kℓ ≡ p", "ij ≡ p", "p(i+k) − (j+ℓ) ≡ 0"],
                    holds: |v, p| {
                        c0(v[2] * v[1] + v[0] * v[3], p) && cp(v[2] * v[3], p) && cp(v[0] * v[1], p) && c0(p * (v[0] + v[2]) - (v[1] + v[3]), p)
                    },
                },
                System {
                    label: "P2",
                    equations: &["kj + iℓ ≡ 0", "pk − (k+1)ℓ ≡ 0", "pi − (i+1)ℓ ≡ 0", "kℓ + ij ≡ 0"],
                    holds: |v, p| {
                        c0(v[2] * v[1] + v[0] * v[3], p)
                            && c0(p * v[2] - (v[2] + 1) * v[3], p)
                            && c0(p * v[0] - (v[0] + 1) * v[3], p)
                            && c0(v[2] * v[3] + v[0] * v[1], p)
                    },
                },
            ],
            closed: pair_chain_closed,
            closed_text: "i = k = p, j + ℓ ≡ 0, j odd ≠ p; i = k = p−1, j + ℓ ≡ 0, p−j odd, j ≠ 0",
        },
        Group {
            name: "pair: rank-three chain, reading pi − (i+1)j",
            shape: Shape::Pair,
            systems: vec![
                System {
                    label: "P1",
                    equations: &["kj + iℓ ≡ 0", "kℓ ≡ p", "ij ≡ p", "p(i+k) − (j+ℓ) ≡ 0"],
                    holds: |v, p| {
                        c0(v[2] * v[1] + v[0] * v[3], p) && cp(v[2] * v[3], p) && cp(v[0] * v[1], p) && c0(p * (v[0] + v[2]) - (v[1] + v[3]), p)
                    },
                },
                System {
                    label: "P2'",
                    equations: &["kj + iℓ ≡ 0", "pk − (k+1)ℓ ≡ 0", "pi − (i+1)j ≡ 0", "kℓ + ij ≡ 0"],
                    holds: |v, p| {
                        c0(v[2] * v[1] + v[0] * v[3], p)
                            && c0(p * v[2] - (v[2] + 1) * v[3], p)
                            && c0(p * v[0] - (v[0] + 1) * v[1], p)
                            && c0(v[2] * v[3] + v[0] * v[1], p)
                    },
                },
            ],
            closed: pair_chain_closed,
            closed_text: "i = k = p, j + ℓ ≡ 0, j odd ≠ p; i = k = p−1, j + ℓ ≡ 0, p−j odd, j ≠ 0",
        },
        Group {
            name: "pair: rank-three, ς of order 3",
            shape: Shape::Pair,
            systems: vec![
                System {
                    label: "P3",
                    equations: &["ij ≡ p", "kℓ ≡ p", "kj + iℓ ≡ 0", "p(k−i) − (ℓ−j) ≡ 0", "pi − 3j ≡ 0"],
                    holds: |v, p| {
                        cp(v[0] * v[1], p)
                            && cp(v[2] * v[3], p)
                            && c0(v[2] * v[1] + v[0] * v[3], p)
                            && c0(p * (v[2] - v[0]) - (v[3] - v[1]), p)
                            && c0(p * v[0] - 3 * v[1], p)
                    },
                },
                System {
                    label: "P4",
                    equations: &["3ij ≡ 0", "ij − kℓ ≡ 0", "pi − (i+1)j ≡ 0", "pk − (k+1)ℓ ≡ 0", "kj + iℓ + pi − j ≡ 0"],
                    holds: |v, p| {
                        c0(3 * v[0] * v[1], p)
                            && c0(v[0] * v[1] - v[2] * v[3], p)
                            && c0(p * v[0] - (v[0] + 1) * v[1], p)
                            && c0(p * v[2] - (v[2] + 1) * v[3], p)
                            && c0(v[2] * v[1] + v[0] * v[3] + p * v[0] - v[1], p)
                    },
                },
            ],
            closed: |p| {
                if p != 3 {
                    return vec![];
                }
                let mut out = vec![];
                for j in [1, 5] {
                    out.push(vec![3, j, 3, j]);
                }
                for j in [2, 4] {
                    out.push(vec![2, j, 2, j]);
                }
                out
            },
            closed_text: "p = 3: i = k = p, ℓ = j odd ≠ p; i = k = p−1, ℓ = j even ≠ 0",
        },
    ]
}

fn chi_chain_closed(p: usize) -> Vec<Vec<i64>> {
    let p = p as i64;
    let mut out = vec![];
    for j in 0..2 * p {
        if odd(j) && j != p {
            out.push(vec![p, j, 2 * p - 1]);
        }
        if odd(p - j) && j != 0 {
            out.push(vec![p - 1, j, 1]);
        }
    }
    out
}

fn pair_chain_closed(p: usize) -> Vec<Vec<i64>> {
    let p = p as i64;
    let mut out = vec![];
    for j in 0..2 * p {
        if odd(j) && j != p {
            out.push(vec![p, j, p, (-j).rem_euclid(2 * p)]);
        }
        if odd(p - j) && j != 0 {
            out.push(vec![p - 1, j, p - 1, (-j).rem_euclid(2 * p)]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemSolutions {
    pub label: String,
    pub equations: Vec<String>,
    pub solutions: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub group: String,
    pub only_enumerated: Vec<Vec<i64>>,
    pub only_stated: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupResult {
    pub name: String,
    pub shape: Shape,
    pub domain: String,
    pub systems: Vec<SystemSolutions>,
    pub union: Vec<Vec<i64>>,
    pub stated: Option<Vec<Vec<i64>>>,
    pub stated_text: String,
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub p: usize,
    pub groups: Vec<GroupResult>,
    pub discrepancies: Vec<Discrepancy>,
}

impl CongruenceReport {
    pub fn group(&self, name: &str) -> Option<&GroupResult> {
        self.groups.iter().find(|g| g.name == name)
    }
}

fn domain(shape: Shape, p: usize) -> Vec<Vec<i64>> {
    let n = 2 * p as i64;
    let pi = p as i64;
    let simple: Vec<Pair> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| in_lambda(p, i, j) && j != 0 && j != pi)
        .collect();
    match shape {
        Shape::Simple => simple.iter().map(|&(i, j)| vec![i, j]).collect(),
        Shape::WithChi => simple
            .iter()
            .flat_map(|&(i, j)| (0..n).filter(move |&k| !c0(k * (pi * i - j), pi)).map(move |k| vec![i, j, k]))
            .collect(),
        Shape::Pair => simple.iter().flat_map(|&(i, j)| simple.iter().map(move |&(k, l)| vec![i, j, k, l])).collect(),
    }
}

/// Enumerate every system over its finite domain and compare the union with the stated
/// solution set (prime p only). Mismatches are recorded, not raised.
pub fn solve_congruence_systems(ctx: &ScalarContext) -> CongruenceReport {
    let p = ctx.p();
    let pi = p as i64;
    let mut out = vec![];
    let mut discrepancies = vec![];
    for g in groups() {
        let dom = domain(g.shape, p);
        let systems: Vec<SystemSolutions> = g
            .systems
            .iter()
            .map(|s| SystemSolutions {
                label: s.label.into(),
                equations: s.equations.iter().map(|e| format!("{e} mod 2p")).collect(),
                solutions: dom.iter().filter(|v| (s.holds)(v, pi)).cloned().collect(),
            })
            .collect();
        let union: BTreeSet<Vec<i64>> = systems.iter().flat_map(|s| s.solutions.iter().cloned()).collect();
        let (stated, agrees) = if is_prime(p) {
            let st: BTreeSet<Vec<i64>> = (g.closed)(p).into_iter().collect();
            let ok = st == union;
            if !ok {
                discrepancies.push(Discrepancy {
                    group: g.name.into(),
                    only_enumerated: union.difference(&st).cloned().collect(),
                    only_stated: st.difference(&union).cloned().collect(),
                });
            }
            (Some(st.into_iter().collect()), Some(ok))
        } else {
            (None, None)
        };
        let domain = match g.shape {
            Shape::Simple => "(i,j) ∈ Λ_p, j ∉ {0,p}",
            Shape::WithChi => "(i,j) ∈ Λ_p, j ∉ {0,p}, k ∈ [0,2p), k(pi−j) ≢ 0",
            Shape::Pair => "(i,j), (k,ℓ) ∈ Λ_p, j, ℓ ∉ {0,p}",
        };
        out.push(GroupResult {
            name: g.name.into(),
            shape: g.shape,
            domain: domain.into(),
            systems,
            union: union.into_iter().collect(),
            stated,
            stated_text: g.closed_text.into(),
            agrees,
        });
    }
    CongruenceReport { p, groups: out, discrepancies }
}

pub fn solution_summands(shape: Shape, v: &[i64]) -> Vec<Summand> {
    match shape {
        Shape::Simple => vec![Summand::V(v[0], v[1])],
        Shape::WithChi => vec![Summand::V(v[0], v[1]), Summand::Chi(v[2])],
        Shape::Pair => vec![Summand::V(v[0], v[1]), Summand::V(v[2], v[3])],
    }
}

// ---------------------------------------------------------------------------
// quoted lists

fn sorted(mut v: Vec<Vec<Summand>>) -> Vec<Vec<Summand>> {
    for m in v.iter_mut() {
        m.sort();
    }
    v.sort();
    v.dedup();
    v
}

/// The finite-type objects of rank ≤ 2 summands, as stated (prime p or p = 4), excluding
/// sums of one-dimensional objects only.
pub fn quoted_finite_modules(p: usize) -> Option<Vec<Vec<Summand>>> {
    use Summand::{Chi, V};
    let pi = p as i64;
    let n = 2 * pi;
    let mut out: Vec<Vec<Summand>> = vec![];
    if p == 4 {
        let two_a = [(2, 2), (2, 6), (6, 2), (6, 6)];
        let two_b = [(4, 1), (4, 3), (4, 5), (4, 7)];
        let one_a = [(5, 2), (5, 6), (1, 2), (1, 6)];
        let one_b = [(3, 3), (3, 1), (3, 7), (3, 5)];
        let e3 = [(1, 1), (1, 3), (1, 5), (1, 7)];
        let e2 = [(6, 1), (6, 3), (6, 5), (6, 7)];
        for k in [1, 3, 5, 7] {
            out.push(vec![Chi(k)]);
        }
        for &(i, j) in two_a.iter().chain(&two_b).chain(&one_a).chain(&one_b).chain(&e3).chain(&e2) {
            out.push(vec![V(i, j)]);
        }
        for &(i, j) in &two_a {
            out.push(vec![V(i, j), Chi(3)]);
            out.push(vec![V(i, j), Chi(7)]);
        }
        for &(i, j) in &two_b {
            out.push(vec![V(i, j), Chi(7)]);
        }
        for &(i, j) in &one_a {
            out.push(vec![V(i, j), Chi(1)]);
            out.push(vec![V(i, j), Chi(5)]);
        }
        for &(i, j) in &one_b {
            out.push(vec![V(i, j), Chi(1)]);
        }
        for i in [2, 6] {
            out.push(vec![V(2, 2), V(i, 6)]);
            out.push(vec![V(6, 2), V(i, 6)]);
        }
        out.push(vec![V(4, 1), V(4, 7)]);
        out.push(vec![V(4, 3), V(4, 5)]);
        for i in [1, 5] {
            out.push(vec![V(5, 2), V(i, 6)]);
            out.push(vec![V(1, 2), V(i, 6)]);
        }
        out.push(vec![V(3, 3), V(3, 5)]);
        out.push(vec![V(3, 1), V(3, 7)]);
        return Some(sorted(out));
    }
    if !is_prime(p) {
        return None;
    }
    let js = |f: &dyn Fn(i64) -> bool| (0..n).filter(|&j| f(j)).collect::<Vec<_>>();
    let mut simple: Vec<Summand> = vec![];
    for k in (1..n).step_by(2) {
        out.push(vec![Chi(k)]);
    }
    for j in js(&|j| odd(j) && j != pi) {
        simple.push(V(pi, j));
    }
    for j in js(&|j| odd(pi - j) && j != 0) {
        simple.push(V(pi - 1, j));
    }
    if p > 2 {
        let h = (pi - 1) / 2;
        let even_h = h % 2 == 0;
        for j in js(&|j| if even_h { !odd(j) && j != 0 } else { odd(j) && j != pi }) {
            simple.push(V(h, j));
        }
        for j in js(&|j| if even_h { odd(j) && j != pi } else { !odd(j) && j != 0 }) {
            simple.push(V(h + pi, j));
        }
    }
    let mut special: Vec<Summand> = vec![];
    if p == 3 {
        special.extend([V(1, 2), V(1, 4), V(4, 1), V(4, 5)]);
    }
    if p == 5 {
        special.extend([1, 3, 7, 9].iter().map(|&j| V(1, j)));
        special.extend([2, 4, 6, 8].iter().map(|&j| V(8, j)));
    }
    for s in simple.iter().chain(&special) {
        out.push(vec![*s]);
    }
    // with a one-dimensional summand
    if p == 3 {
        for j in [1, 5] {
            out.push(vec![V(3, j), Chi(1)]);
            out.push(vec![V(1, j), Chi(1)]);
        }
        for j in [2, 4] {
            out.push(vec![V(2, j), Chi(5)]);
            out.push(vec![V(4, j), Chi(5)]);
        }
    }
    for j in js(&|j| odd(j) && j != pi) {
        out.push(vec![V(pi, j), Chi(n - 1)]);
    }
    for j in js(&|j| odd(pi - j) && j != 0) {
        out.push(vec![V(pi - 1, j), Chi(1)]);
    }
    if p > 2 {
        // (V ⊕ χ^p) for the listed simple V, and the p = 5 exceptional ones; p = 3's
        // exceptional ones are not in this list
        let extra: Vec<Summand> = if p == 5 { special.clone() } else { vec![] };
        for s in simple.iter().chain(&extra) {
            out.push(vec![*s, Chi(pi)]);
        }
    }
    // two two-dimensional summands
    for j in js(&|j| odd(j) && j != pi) {
        out.push(vec![V(pi, j), V(pi, md(-j, p))]);
    }
    for j in js(&|j| odd(pi - j) && j != 0) {
        out.push(vec![V(pi - 1, j), V(pi - 1, md(-j, p))]);
    }
    if p == 3 {
        for j in [1, 5] {
            out.push(vec![V(3, j), V(3, j)]);
        }
        for j in [2, 4] {
            out.push(vec![V(2, j), V(2, j)]);
        }
    }
    Some(sorted(out))
}

/// Hopf algebras with indecomposable infinitesimal braiding, as stated for p = 2 and p = 3.
pub fn quoted_hopf_list(p: usize) -> Option<Vec<String>> {
    let names: Vec<String> = match p {
        2 => vec!["∧K_{χ^1}#H", "∧K_{χ^3}#H", "B(V_{2,1})#H", "B(V_{2,3})#H", "A_{1,1}(μ)", "A_{1,3}(μ)"].into_iter().map(String::from).collect(),
        3 => {
            let mut v: Vec<String> = [1, 3, 5].iter().map(|k| format!("∧K_{{χ^{k}}}#H")).collect();
            for (i, j) in [(3, 1), (3, 5), (2, 2), (2, 4), (4, 1), (4, 5), (1, 1), (1, 5), (4, 2), (4, 4)] {
                v.push(format!("B(V_{{{i},{j}}})#H"));
            }
            v.push("A_{1,2}(μ)".into());
            v.push("A_{1,4}(μ)".into());
            v
        }
        _ => return None,
    };
    let mut names = names;
    names.sort();
    Some(names)
}

// ---------------------------------------------------------------------------
// report

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Evidence {
    /// A computed certificate (Nichols total, rewrite dimension).
    Executed,
    /// A dimension formula attached to a congruence-verified family.
    Formula,
    /// A statement taken over without computation.
    Quoted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleEntry {
    pub module: String,
    pub summands: Vec<Summand>,
    pub row: String,
    pub nichols_dim: Option<u64>,
    pub graded_dims: Option<Vec<usize>>,
    pub evidence: Evidence,
    /// Executed total and formula disagree.
    pub conflict: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum LiftingKind {
    /// A ≅ gr A.
    Trivial,
    /// A one-parameter family over the affine line.
    AffineLine { parameter: String },
    /// No lifting statement applies.
    Open,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfEntry {
    pub name: String,
    pub diagram: String,
    pub dim: Option<u64>,
    pub dim_evidence: Evidence,
    pub dim_formula: Option<String>,
    pub lifting: LiftingKind,
    pub lifting_evidence: Evidence,
    pub basic: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotedCheck {
    pub what: String,
    pub matches: bool,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
}

/// Number of simple Yetter–Drinfeld modules by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleCounts {
    pub one_dim: usize,
    pub two_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub p: usize,
    pub index_sets: IndexSets,
    pub simple_modules: SimpleCounts,
    #[serde(rename = "nichols")]
    pub finite_modules: Vec<ModuleEntry>,
    pub undetermined: usize,
    pub schemas: Vec<String>,
    #[serde(rename = "hopf_classification")]
    pub hopf_algebras: Vec<HopfEntry>,
    pub quoted_checks: Vec<QuotedCheck>,
    pub congruences: CongruenceReport,
    pub shape: Option<String>,
    pub shape_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    /// Compute Nichols totals (and lifting dimensions) where feasible.
    pub execute: bool,
    /// Largest p at which sums of two summands are executed.
    pub execute_sums_up_to: usize,
    /// Only Nichols algebras whose formula dimension is at most this are computed.
    pub max_executed_dim: u64,
    pub cap: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { execute: true, execute_sums_up_to: 3, max_executed_dim: 1024, cap: DEFAULT_CAP }
    }
}

/// V summands first, then one-dimensional ones, each group sorted.
pub fn module_name(s: &[Summand]) -> String {
    let mut s = s.to_vec();
    s.sort_by_key(|x| (matches!(x, Summand::Chi(_)), *x));
    s.iter()
        .map(|x| match x {
            Summand::Chi(k) => format!("K_{{χ^{k}}}"),
            Summand::V(i, j) => format!("V_{{{i},{j}}}"),
        })
        .collect::<Vec<_>>()
        .join("⊕")
}

fn nichols_total(ctx: &ScalarContext, s: &[Summand], cap: usize) -> Result<Option<Vec<usize>>> {
    let h = shared_h(ctx)?;
    let m = direct_sum(&s.iter().map(|x| make_simple(&h, *x)).collect::<Result<Vec<_>>>()?)?;
    match graded_dims(&braiding(&m), 64, cap) {
        Ok(g) if g.complete => Ok(Some(g.dims.into_iter().take_while(|&d| d > 0).collect())),
        Ok(_) | Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn candidates(p: usize) -> Vec<Vec<Summand>> {
    let n = 2 * p as i64;
    let lam: Vec<Pair> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| in_lambda(p, i, j)).collect();
    let mut out: Vec<Vec<Summand>> = (0..n).map(|k| vec![Summand::Chi(k)]).collect();
    out.extend(lam.iter().map(|&(i, j)| vec![Summand::V(i, j)]));
    for &(i, j) in &lam {
        for k in 0..n {
            out.push(vec![Summand::V(i, j), Summand::Chi(k)]);
        }
    }
    for (a, &(i, j)) in lam.iter().enumerate() {
        for &(k, l) in &lam[a..] {
            out.push(vec![Summand::V(i, j), Summand::V(k, l)]);
        }
    }
    out
}

/// The lifting statement that applies to a simple finite-type V.
fn simple_lifting(ctx: &ScalarContext, sets: &IndexSets, s: Summand) -> (String, LiftingKind, String, String) {
    let p = ctx.p();
    let pi = p as i64;
    match s {
        Summand::Chi(k) => (format!("∧K_{{χ^{k}}}#H"), LiftingKind::Trivial, "basic".into(), "exterior algebra on one odd generator".into()),
        Summand::V(i, j) => {
            let v = (i, j);
            let g3 = c0((pi + j) * (i - 1), pi) && c0(3 * i * j, pi);
            if sets.lambda3.contains(&v) {
                (
                    format!("A_{{{i},{j}}}(μ)"),
                    LiftingKind::AffineLine { parameter: "μ ∈ K".into() },
                    "basic iff μ = 0".into(),
                    "quadratic lifting family; μ = 0 is B(V)#H; whether different μ ≠ 0 give isomorphic algebras is left open".into(),
                )
            } else if sets.lambda1.contains(&v) || sets.lambda2.contains(&v) {
                (format!("B(V_{{{i},{j}}})#H"), LiftingKind::Trivial, "basic".into(), "non-trivial quadratic relations; no deformation".into())
            } else if g3 && sets.lambda4.contains(&v) {
                (
                    format!("A_{{{i},{j}}}(μ)"),
                    LiftingKind::AffineLine { parameter: "μ ∈ K".into() },
                    "basic iff μ = 0".into(),
                    "cubic lifting family; μ = 0 is B(V)#H; whether different μ ≠ 0 give isomorphic algebras is left open".into(),
                )
            } else if g3 {
                (format!("B(V_{{{i},{j}}})#H"), LiftingKind::Trivial, "basic".into(), "ς of order 3, 3(i+1) ≢ 0: no deformation".into())
            } else if c0(pi * i - j - 2 * i * j, pi) && is_prime(p) {
                (format!("B(V_{{{i},{j}}})#H"), LiftingKind::Trivial, "basic".into(), "standard B2 type: no deformation".into())
            } else if is_prime(p) && p > 5 {
                (format!("B(V_{{{i},{j}}})#H"), LiftingKind::Trivial, "basic".into(), "p > 5 prime: A ≅ gr A".into())
            } else {
                (format!("B(V_{{{i},{j}}})#H"), LiftingKind::Open, "unknown".into(), "no lifting statement covers this object".into())
            }
        }
    }
}

/// Assemble the classification report for p (prime, or p = 4).
pub fn classification_report(ctx: &ScalarContext, opts: &ReportOptions) -> Result<ClassificationReport> {
    let p = ctx.p();
    if !is_prime(p) && p != 4 {
        return Err(Error::UnsupportedP(p));
    }
    let pi = p as i64;
    let sets = lambda_sets(ctx);
    let mut finite = vec![];
    let mut undetermined = 0;
    for s in candidates(p) {
        match finiteness_verdict(ctx, &s, 0)? {
            Verdict::FiniteCertified { dim, formula, row } => {
                let mut entry = ModuleEntry {
                    module: module_name(&s),
                    summands: s.clone(),
                    row,
                    nichols_dim: dim,
                    graded_dims: None,
                    evidence: if dim.is_some() { Evidence::Formula } else { Evidence::Quoted },
                    conflict: None,
                };
                let run = opts.execute
                    && p <= 5
                    && (s.len() == 1 || p <= opts.execute_sums_up_to)
                    && dim.is_some_and(|d| d <= opts.max_executed_dim);
                if run {
                    if let Some(g) = nichols_total(ctx, &s, opts.cap)? {
                        let total: u64 = g.iter().map(|&d| d as u64).sum();
                        if let Some(d) = dim {
                            if d != total {
                                entry.conflict = Some(format!("executed total {total}, formula {} = {d}", formula.unwrap_or_default()));
                            }
                        }
                        entry.nichols_dim = Some(total);
                        entry.graded_dims = Some(g);
                        entry.evidence = Evidence::Executed;
                    }
                }
                finite.push(entry);
            }
            Verdict::InfiniteCertified { .. } => {}
            Verdict::Undetermined { .. } => undetermined += 1,
        }
    }
    let mut schemas = vec![format!("⊕_k K_{{χ^{{i_k}}}} with every i_k odd: B = exterior algebra, dim 2^n")];
    if p > 2 {
        schemas.push(format!("(⊕ K_{{χ^{pi}}}) ⊕ W for W in the rank-two list with W ⊕ K_{{χ^{pi}}} finite: B(V) = B(⊕K_{{χ^{pi}}}) ⊗ B(W)"));
    }

    // Hopf algebras with simple infinitesimal braiding
    let mut hopf = vec![];
    for e in finite.iter().filter(|e| e.summands.len() == 1) {
        let s = e.summands[0];
        if let Summand::Chi(k) = s {
            if !odd(k) {
                continue;
            }
        }
        let (name, lifting, basic, note) = simple_lifting(ctx, &sets, s);
        let mut entry = HopfEntry {
            name,
            diagram: e.module.clone(),
            dim: e.nichols_dim.map(|d| d * 4 * pi as u64),
            dim_evidence: e.evidence,
            dim_formula: None,
            lifting: lifting.clone(),
            lifting_evidence: Evidence::Quoted,
            basic,
            note,
        };
        if let Summand::V(i, j) = s {
            let v = (i, j);
            if sets.lambda1.contains(&v) {
                let n1 = ord(pi * i - j, p);
                entry.dim_formula = Some(format!("8pN₁ = {}", 8 * pi * n1));
            } else if sets.lambda2.contains(&v) && !sets.lambda3.contains(&v) {
                let n2 = ord(-i * j, p);
                entry.dim_formula = Some(format!("8pN₂ = {}", 8 * pi * n2));
            } else if sets.lambda3.contains(&v) {
                entry.dim_formula = Some(format!("32p = {}", 32 * pi));
            } else if sets.lambda4.contains(&v) {
                entry.dim_formula = Some(format!("72p = {}", 72 * pi));
            }
            // liftings are built and counted by rewriting where affordable
            if opts.execute && matches!(lifting, LiftingKind::AffineLine { .. }) && p <= 3 {
                let mut dims = BTreeSet::new();
                for mu in [0, 1, -1] {
                    let fam = if sets.lambda3.contains(&v) {
                        Family::A3 { i, j, mu: ctx.int(mu) }
                    } else {
                        Family::A4 { i, j, mu: ctx.int(mu) }
                    };
                    let l = build_lifting(ctx, fam)?;
                    dims.insert(l.pres.dimension(opts.cap)?);
                }
                if let [Dimension::Finite(d)] = dims.into_iter().collect::<Vec<_>>()[..] {
                    if entry.dim != Some(d as u64) {
                        entry.note = format!("{}; rewrite dimension {d} disagrees with dim B(V)·4p", entry.note);
                    }
                    entry.dim = Some(d as u64);
                    entry.dim_evidence = Evidence::Executed;
                }
            }
        }
        if let Summand::Chi(_) = s {
            entry.dim_formula = Some(format!("8p = {}", 8 * pi));
        }
        hopf.push(entry);
    }
    let (shape, shape_holds) = if is_prime(p) && p > 5 {
        for e in finite.iter().filter(|e| e.summands.len() == 2) {
            hopf.push(HopfEntry {
                name: format!("B({})#H", e.module),
                diagram: e.module.clone(),
                dim: e.nichols_dim.map(|d| d * 4 * pi as u64),
                dim_evidence: e.evidence,
                dim_formula: None,
                lifting: LiftingKind::Trivial,
                lifting_evidence: Evidence::Quoted,
                basic: "basic".into(),
                note: "p > 5 prime: A ≅ gr A".into(),
            });
        }
        let holds = hopf.iter().all(|h| h.lifting == LiftingKind::Trivial)
            && sets.lambda3.is_empty()
            && !finite.iter().any(|e| matches!(e.summands[..], [Summand::V(i, j)] if sets.lambda4.contains(&(i, j))));
        (Some("every finite-dimensional Hopf algebra over H is isomorphic to gr A, hence basic".to_string()), Some(holds))
    } else {
        (None, None)
    };
    hopf.sort_by(|a, b| a.name.cmp(&b.name));

    let mut quoted_checks = vec![];
    if let Some(q) = quoted_finite_modules(p) {
        let got: BTreeSet<String> = finite.iter().map(|e| e.module.clone()).collect();
        let want: BTreeSet<String> = q.iter().map(|s| module_name(s)).collect();
        quoted_checks.push(compare("finite-type objects with at most two summands", &want, &got));
    }
    if let Some(q) = quoted_hopf_list(p) {
        let want: BTreeSet<String> = q.into_iter().collect();
        let got: BTreeSet<String> = hopf.iter().map(|h| h.name.clone()).collect();
        quoted_checks.push(compare("Hopf algebras with indecomposable infinitesimal braiding", &want, &got));
    }

    Ok(ClassificationReport {
        schema: SCHEMA,
        p,
        simple_modules: SimpleCounts { one_dim: 2 * p, two_dim: sets.lambda.len() },
        index_sets: sets,
        finite_modules: finite,
        undetermined,
        schemas,
        hopf_algebras: hopf,
        quoted_checks,
        congruences: solve_congruence_systems(ctx),
        shape,
        shape_holds,
    })
}

fn compare(what: &str, want: &BTreeSet<String>, got: &BTreeSet<String>) -> QuotedCheck {
    QuotedCheck {
        what: what.into(),
        matches: want == got,
        missing: want.difference(got).cloned().collect(),
        extra: got.difference(want).cloned().collect(),
    }
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "classification report, p = {} (schema {})", self.p, self.schema);
        let ix = &self.index_sets;
        let _ = writeln!(
            s,
            "|Λ| = {}, |Λ¹| = {}, |Λ²| = {}, Λ³ = {:?}, Λ⁴ = {:?}",
            ix.lambda.len(),
            ix.lambda1.len(),
            ix.lambda2.len(),
            ix.lambda3,
            ix.lambda4
        );
        let _ = writeln!(s, "finite-type objects ({}; {} candidates undetermined):", self.finite_modules.len(), self.undetermined);
        for e in &self.finite_modules {
            let d = e.nichols_dim.map(|d| d.to_string()).unwrap_or_else(|| "?".into());
            let _ = writeln!(s, "  {:<24} dim B = {:<6} [{:?}] {}", e.module, d, e.evidence, e.row);
        }
        for sc in &self.schemas {
            let _ = writeln!(s, "  schema: {sc}");
        }
        let _ = writeln!(s, "Hopf algebras:");
        for h in &self.hopf_algebras {
            let d = h.dim.map(|d| d.to_string()).unwrap_or_else(|| "?".into());
            let lift = match &h.lifting {
                LiftingKind::Trivial => "trivial".to_string(),
                LiftingKind::AffineLine { parameter } => format!("family, {parameter}"),
                LiftingKind::Open => "open".to_string(),
            };
            let _ = writeln!(s, "  {:<24} dim {:<6} [{:?}] lifting {lift}; {}", h.name, d, h.dim_evidence, h.basic);
        }
        for q in &self.quoted_checks {
            let _ = writeln!(s, "check: {} — {}", q.what, if q.matches { "matches" } else { "MISMATCH" });
            for m in &q.missing {
                let _ = writeln!(s, "  missing {m}");
            }
            for m in &q.extra {
                let _ = writeln!(s, "  extra {m}");
            }
        }
        for d in &self.congruences.discrepancies {
            let _ = writeln!(s, "discrepancy: {} enumerated-only {:?} stated-only {:?}", d.group, d.only_enumerated, d.only_stated);
        }
        if let (Some(sh), Some(ok)) = (&self.shape, self.shape_holds) {
            let _ = writeln!(s, "shape: {sh}: {}", if ok { "holds" } else { "FAILS" });
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: usize) -> ScalarContext {
        ScalarContext::new(p).unwrap()
    }

    #[test]
    fn index_set_sizes() {
        for p in 2..=12 {
            let s = lambda_sets(&ctx(p));
            assert_eq!(s.lambda.len(), 4 * p * p - 2 * p, "p = {p}");
            assert!(s.lambda3.iter().all(|v| s.lambda2.contains(v)));
            let nonempty = p % 2 == 0 && (p / 2) % 2 == 1;
            assert_eq!(!s.lambda3.is_empty(), nonempty, "p = {p}");
            if nonempty {
                let pi = p as i64;
                assert_eq!(s.lambda3, vec![(pi - 1, pi / 2), (pi - 1, 3 * pi / 2)]);
            }
        }
        assert_eq!(lambda_sets(&ctx(2)).lambda3, vec![(1, 1), (1, 3)]);
        assert!(lambda_sets(&ctx(3)).lambda3.is_empty());
        assert_eq!(lambda_sets(&ctx(3)).lambda4, vec![(1, 0), (1, 2), (1, 4), (3, 0), (5, 0)]);
    }

    #[test]
    fn congruence_examples() {
        let r7 = solve_congruence_systems(&ctx(7));
        let g = r7.group("simple: vertex label -1").unwrap();
        assert_eq!(g.union, [1, 3, 5, 9, 11, 13].iter().map(|&j| vec![7, j]).collect::<Vec<_>>());
        let r3 = solve_congruence_systems(&ctx(3));
        assert_eq!(r3.group("simple: G2-type (ς of order 3)").unwrap().union, vec![vec![1, 2], vec![1, 4], vec![4, 1], vec![4, 5]]);
        let r5 = solve_congruence_systems(&ctx(5));
        let g = r5.group("simple: ς of order 5").unwrap();
        assert_eq!(g.systems[0].solutions, [2, 4, 6, 8].iter().map(|&j| vec![8, j]).collect::<Vec<_>>());
        assert_eq!(g.systems[1].solutions, [1, 3, 7, 9].iter().map(|&j| vec![1, j]).collect::<Vec<_>>());
    }

    #[test]
    fn solutions_are_certified_finite() {
        for p in [2, 3, 5, 7] {
            let k = ctx(p);
            for g in solve_congruence_systems(&k).groups {
                for v in &g.union {
                    let s = solution_summands(g.shape, v);
                    let verdict = finiteness_verdict(&k, &s, 0).unwrap();
                    assert!(verdict.is_finite() || !g.agrees.unwrap_or(true), "p = {p}, {}: {v:?} gives {verdict:?}", g.name);
                }
            }
        }
    }

    #[test]
    fn unsupported_p() {
        assert_eq!(classification_report(&ctx(6), &ReportOptions::default()).unwrap_err(), Error::UnsupportedP(6));
    }

    #[test]
    fn reports_match_quoted_lists() {
        for p in [2, 3, 5, 7] {
            let r = classification_report(&ctx(p), &ReportOptions::default()).unwrap();
            assert!(!r.quoted_checks.is_empty(), "p = {p}");
            for q in &r.quoted_checks {
                assert!(q.matches, "p = {p}, {}: missing {:?} extra {:?}", q.what, q.missing, q.extra);
            }
            for m in &r.finite_modules {
                assert_eq!(m.conflict, None, "p = {p}, {}", m.module);
            }
        }
    }

    #[test]
    fn p2_hopf_dimensions() {
        let r = classification_report(&ctx(2), &ReportOptions::default()).unwrap();
        let dims: Vec<(String, Option<u64>)> = r.hopf_algebras.iter().map(|h| (h.name.clone(), h.dim)).collect();
        assert_eq!(dims.len(), 6);
        for (n, d) in dims {
            let want = if n.starts_with('∧') { 16 } else { 64 };
            assert_eq!(d, Some(want), "{n}");
        }
    }

    #[test]
    fn report_is_deterministic_and_shape_holds() {
        let k = ctx(7);
        let a = classification_report(&k, &ReportOptions::default()).unwrap();
        let b = classification_report(&k, &ReportOptions::default()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.shape_holds, Some(true));
        let back: ClassificationReport = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }
}
