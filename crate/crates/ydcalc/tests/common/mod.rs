//! Shared property bodies and strategies, run by the `properties` suite and by the
//! acceptance target.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use ydcalc::exactla::{SparseMatrix, SparseVec};
use ydcalc::nichols::{braid_operator, matsumoto_lift, reduced_words, tensor_from, tensor_mul, word_permutation};
use ydcalc::rewrite::{build_lifting, Family, Lifting, Poly};
use ydcalc::ydmod::{braiding, direct_sum, in_lambda, make_simple, shared_h, Summand};
use ydcalc::{ScalarContext, ThetaScalar};

pub const CASES: u32 = 1000;

pub type Check = Result<(), TestCaseError>;

fn ctx(p: usize) -> ScalarContext {
    ScalarContext::new(p).unwrap()
}

/// Σ (a_k/d) ξ^k + θ Σ (b_k/d) ξ^k.
fn scalar(k: &ScalarContext, re: &[i64], th: &[i64], d: i64) -> ThetaScalar {
    let mut s = k.zero();
    for (e, &a) in re.iter().enumerate() {
        s = &s + &(&k.ratio(a, d) * &k.xi_pow(e as i64));
    }
    let mut t = k.zero();
    for (e, &b) in th.iter().enumerate() {
        t = &t + &(&k.ratio(b, d) * &k.xi_pow(e as i64));
    }
    &s + &(&k.theta() * &t)
}

pub type Coeffs = (Vec<i64>, Vec<i64>, i64);

pub fn coeffs() -> impl Strategy<Value = Coeffs> {
    (prop::collection::vec(-4i64..=4, 0..6), prop::collection::vec(-3i64..=3, 0..4), 1i64..=4)
}

fn cyclotomic(k: &ScalarContext, spec: &(i64, i64)) -> ThetaScalar {
    if spec.0 == 0 {
        k.zero()
    } else {
        &k.int(spec.0) * &k.xi_pow(spec.1)
    }
}

// ---------------------------------------------------------------------------
// scalars

pub fn ring_strategy() -> impl Strategy<Value = (usize, Coeffs, Coeffs, Coeffs)> {
    (2usize..=5, coeffs(), coeffs(), coeffs())
}

pub fn ring_axioms((p, a, b, c): (usize, Coeffs, Coeffs, Coeffs)) -> Check {
    let k = ctx(p);
    let x = scalar(&k, &a.0, &a.1, a.2);
    let y = scalar(&k, &b.0, &b.1, b.2);
    let z = scalar(&k, &c.0, &c.1, c.2);
    prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    prop_assert_eq!(&x + &y, &y + &x);
    prop_assert_eq!(&x * &y, &y * &x);
    prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    prop_assert_eq!(&x + &k.zero(), x.clone());
    prop_assert_eq!(&x * &k.one(), x.clone());
    prop_assert!((&x - &x).is_zero());
    prop_assert_eq!(k.parse(&x.to_text()).unwrap(), x.clone());
    if let Ok(inv) = x.try_inv() {
        prop_assert!((&x * &inv).is_one());
    } else {
        // only zero and zero divisors of Q(ζ)[θ] lack inverses
        prop_assert!(x.is_zero() || !x.is_unit());
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// linear algebra

pub type MatrixCase = (usize, usize, usize, Vec<(i64, i64)>);

pub fn matrix_strategy() -> impl Strategy<Value = MatrixCase> {
    (2usize..=5, 1usize..=5, 1usize..=6, prop::collection::vec((-2i64..=2, 0i64..12), 30))
}

pub fn rank_and_kernel((p, rows, cols, entries): MatrixCase) -> Check {
    let k = ctx(p);
    let dense: Vec<Vec<ThetaScalar>> = (0..rows).map(|r| (0..cols).map(|c| cyclotomic(&k, &entries[r * cols + c])).collect()).collect();
    let m = SparseMatrix::from_dense(&k, &dense);
    let rank = m.rank().unwrap();
    let ker = m.kernel_basis(&k).unwrap();
    prop_assert_eq!(rank + ker.dim(), cols);
    prop_assert_eq!(m.transpose().rank().unwrap(), rank);
    for v in &ker.vectors {
        prop_assert!(m.mul_vec(v).is_empty());
    }
    if !ker.vectors.is_empty() {
        let kmat = SparseMatrix::from_rows(cols, ker.vectors.clone());
        prop_assert_eq!(kmat.rank().unwrap(), ker.dim());
    }
    // a consistent right-hand side is solved exactly
    let x: SparseVec = (0..cols)
        .filter_map(|c| {
            let v = cyclotomic(&k, &entries[(c * 7) % entries.len()]);
            (!v.is_zero()).then_some((c, v))
        })
        .collect();
    let b = m.mul_vec(&x);
    let sol = m.solve(&b).unwrap().expect("consistent");
    prop_assert_eq!(m.mul_vec(&sol), b);
    Ok(())
}

// ---------------------------------------------------------------------------
// rewriting

fn lifting(which: usize) -> Lifting {
    let k2 = ctx(2);
    match which {
        0 => build_lifting(&k2, Family::A3 { i: 1, j: 1, mu: k2.one() }).unwrap(),
        1 => build_lifting(&k2, Family::A33 { mu: k2.one(), nu: k2.int(-1) }).unwrap(),
        _ => {
            let k3 = ctx(3);
            build_lifting(&k3, Family::A4 { i: 1, j: 2, mu: k3.one() }).unwrap()
        }
    }
}

thread_local! {
    static LIFTINGS: Vec<Lifting> = (0..3).map(lifting).collect();
}

fn word_poly(l: &Lifting, w: &[usize]) -> Poly {
    tensor_from([(l.pres.ctx.one(), w.to_vec())])
}

pub type WordCase = (usize, Vec<usize>, usize, u64);

pub fn word_strategy() -> impl Strategy<Value = WordCase> {
    (0usize..3, prop::collection::vec(0usize..6, 0..7), 0usize..7, any::<u64>())
}

/// Normal forms are irreducible and fixed by reduction, every reduction order reaches the
/// same normal form, and normal forms are compatible with concatenation.
pub fn normal_forms((which, letters, split, seed): WordCase) -> Check {
    LIFTINGS.with(|ls| {
        let l = &ls[which];
        let n = l.pres.generators.len();
        let w: Vec<usize> = letters.iter().map(|&g| g % n).collect();
        let nf = l.pres.normal_form(&w).unwrap();
        prop_assert_eq!(l.pres.reduce(&nf).unwrap(), nf.clone());
        for m in nf.keys() {
            prop_assert!(l.pres.is_irreducible(m));
        }
        let mut state = seed | 1;
        let mut choose = |len: usize| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % len as u64) as usize
        };
        let other = l.pres.reduce_with(&word_poly(l, &w), &mut choose, 1_000_000).unwrap();
        prop_assert_eq!(&other, &nf);
        let s = split.min(w.len());
        let left = l.pres.normal_form(&w[..s]).unwrap();
        let right = l.pres.normal_form(&w[s..]).unwrap();
        prop_assert_eq!(l.pres.reduce(&tensor_mul(&left, &right)).unwrap(), nf);
        Ok(())
    })
}

// ---------------------------------------------------------------------------
// braid group action

pub type BraidCase = (usize, i64, i64, Option<i64>, usize, u64, (u64, u64));

pub fn braid_strategy() -> impl Strategy<Value = BraidCase> {
    (2usize..=3, 0i64..12, 0i64..12, prop::option::of(0i64..12), 2usize..=4, any::<u64>(), any::<(u64, u64)>())
}

/// Any two reduced words of a permutation give the same operator on V^{⊗n}.
pub fn matsumoto_independence((p, i, j, chi, n, perm_seed, pick): BraidCase) -> Check {
    let k = ctx(p);
    let m2 = 2 * p as i64;
    let (i, j) = (i % m2, j % m2);
    if !in_lambda(p, i, j) {
        return Err(TestCaseError::reject("outside Λ"));
    }
    let h = shared_h(&k).unwrap();
    let v = make_simple(&h, Summand::V(i, j)).unwrap();
    let md = match chi {
        Some(e) => direct_sum(&[v, make_simple(&h, Summand::Chi(e % m2)).unwrap()]).unwrap(),
        None => v,
    };
    let c = braiding(&md);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = perm_seed;
    for a in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(a, (s >> 33) as usize % (a + 1));
    }
    let words = reduced_words(&perm);
    prop_assert!(words.iter().all(|w| word_permutation(w, n) == perm));
    let lift = matsumoto_lift(&perm);
    prop_assert!(words.contains(&lift));
    let w1 = &words[(pick.0 % words.len() as u64) as usize];
    let w2 = &words[(pick.1 % words.len() as u64) as usize];
    let a = braid_operator(&c, w1, n, 1 << 16).unwrap();
    let b = braid_operator(&c, w2, n, 1 << 16).unwrap();
    prop_assert_eq!(&a, &b);
    prop_assert_eq!(&a, &braid_operator(&c, &lift, n, 1 << 16).unwrap());
    Ok(())
}

/// Run one suite outside the proptest! macro; returns the number of passing cases.
pub fn run_suite<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Check) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map(|_| CASES).map_err(|e| e.to_string())
}
