//! Rewriting systems for presented algebras: normal forms, ambiguity resolution, irreducible
//! words and dimensions, and the lifting algebras over H_{p,-1} with their Hopf structure.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactla::{acc_add, from_map, SparseVec};
use crate::hopf::{solve_antipode, tensor_mul_with, verify_hopf, HopfAlgebra, HopfReport, LinMap};
use crate::nichols::{tensor_add, PresentationSpec, Tensor};
use crate::scalar::{ScalarContext, ThetaScalar};
use crate::ydmod::{in_lambda, YDModule};

pub type Word = Vec<usize>;

/// Noncommutative polynomial: words with nonzero coefficients.
pub type Poly = Tensor;

pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Rules the builders may add by completion before giving up.
pub const COMPLETION_CAP: usize = 32;

/// A monomial order on words.
///
/// Words are compared by (1) total weight, (2) the subword of positive-weight letters read
/// from the right, by `skeleton_rank`, (3) length, (4) lexicographically by generator index.
/// Each stage is compatible with concatenation, and each weight/length class is finite, so
/// this is a well-order. Degree-lex is the case of all weights zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordOrder {
    pub weight: Vec<u32>,
    pub skeleton_rank: Vec<u32>,
}

impl WordOrder {
    pub fn deglex(n: usize) -> Self {
        WordOrder { weight: vec![0; n], skeleton_rank: vec![0; n] }
    }

    pub fn cmp(&self, u: &[usize], v: &[usize]) -> Ordering {
        self.key(u).cmp(&self.key(v))
    }

    /// Sort key realising [`WordOrder::cmp`].
    pub fn key(&self, w: &[usize]) -> (u64, Vec<u32>, usize, Word) {
        let wt = w.iter().map(|&g| self.weight[g] as u64).sum();
        let skel = w.iter().rev().filter(|&&g| self.weight[g] > 0).map(|&g| self.skeleton_rank[g]).collect();
        (wt, skel, w.len(), w.to_vec())
    }
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub label: String,
    pub lhs: Word,
    pub rhs: Poly,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub ctx: ScalarContext,
    pub generators: Vec<String>,
    pub order: WordOrder,
    pub rules: Vec<Rule>,
    /// The relations as given, before orientation.
    pub relations: Vec<(String, Poly)>,
    /// Labels of rules added by completion.
    pub completion: Vec<String>,
    cache: RefCell<HashMap<Word, Poly>>,
}

pub fn word_text(names: &[String], w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut out = String::new();
    let mut k = 0;
    while k < w.len() {
        let mut e = 1;
        while k + e < w.len() && w[k + e] == w[k] {
            e += 1;
        }
        out.push_str(&names[w[k]]);
        if e > 1 {
            out.push_str(&format!("^{e}"));
        }
        k += e;
    }
    out
}

pub fn poly_text(names: &[String], p: &Poly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter().rev().map(|(w, c)| format!("({}){}", c.to_text(), word_text(names, w))).collect::<Vec<_>>().join(" + ")
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (w, c) in b {
        tensor_add(&mut out, w.clone(), -c.clone());
    }
    out
}

fn find_factor(w: &[usize], f: &[usize]) -> Option<usize> {
    if f.len() > w.len() {
        return None;
    }
    (0..=w.len() - f.len()).find(|&k| &w[k..k + f.len()] == f)
}

fn splice(w: &[usize], pos: usize, len: usize, mid: &[usize]) -> Word {
    let mut nw = Vec::with_capacity(w.len() - len + mid.len());
    nw.extend_from_slice(&w[..pos]);
    nw.extend_from_slice(mid);
    nw.extend_from_slice(&w[pos + len..]);
    nw
}

/// The outcome of adding one relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Added {
    /// Oriented into the rule with this leading word.
    Rule(Word),
    /// Reduced to zero by the existing rules.
    Redundant,
}

impl Presentation {
    pub fn new(name: impl Into<String>, ctx: &ScalarContext, generators: &[&str], order: WordOrder) -> Self {
        Presentation {
            name: name.into(),
            ctx: ctx.clone(),
            generators: generators.iter().map(|s| s.to_string()).collect(),
            order,
            rules: vec![],
            relations: vec![],
            completion: vec![],
            cache: RefCell::new(HashMap::new()),
        }
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn gen(&self, name: &str) -> usize {
        self.generators.iter().position(|g| g == name).expect("known generator")
    }

    /// Leading word of a nonzero polynomial.
    pub fn leading(&self, p: &Poly) -> Option<Word> {
        p.keys().max_by(|u, v| self.order.cmp(u, v)).cloned()
    }

    /// Record a relation and orient it into a rule, keeping the rule set inter-reduced on
    /// leading words: rules whose leading word contains the new one are re-added.
    pub fn add_relation(&mut self, label: &str, p: Poly) -> Result<Added> {
        self.relations.push((label.to_string(), p.clone()));
        self.insert(label, p)
    }

    fn insert(&mut self, label: &str, p: Poly) -> Result<Added> {
        let mut queue = vec![(label.to_string(), p)];
        let mut first = None;
        while let Some((lab, p)) = queue.pop() {
            let r = self.reduce(&p)?;
            let Some(lead) = self.leading(&r) else {
                first.get_or_insert(Added::Redundant);
                continue;
            };
            let c = r[&lead].clone();
            let inv = c.try_inv().map_err(|_| Error::NonInvertiblePivot(lead.len()))?;
            let mut rhs = Poly::new();
            for (w, x) in &r {
                if *w != lead {
                    tensor_add(&mut rhs, w.clone(), -(&inv * x));
                }
            }
            let (keep, requeue): (Vec<Rule>, Vec<Rule>) =
                std::mem::take(&mut self.rules).into_iter().partition(|rule| find_factor(&rule.lhs, &lead).is_none());
            self.rules = keep;
            for old in requeue {
                let mut q = old.rhs.clone();
                for (_, x) in q.iter_mut() {
                    *x = -x.clone();
                }
                tensor_add(&mut q, old.lhs.clone(), self.ctx.one());
                queue.push((old.label, q));
            }
            first.get_or_insert(Added::Rule(lead.clone()));
            self.rules.push(Rule { label: lab, lhs: lead, rhs });
            self.cache.borrow_mut().clear();
        }
        Ok(first.unwrap_or(Added::Redundant))
    }

    fn leftmost(&self, w: &[usize]) -> Option<(usize, usize)> {
        for pos in 0..w.len() {
            for (ri, r) in self.rules.iter().enumerate() {
                if w.len() - pos >= r.lhs.len() && w[pos..pos + r.lhs.len()] == r.lhs[..] {
                    return Some((pos, ri));
                }
            }
        }
        None
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        self.leftmost(w).is_none()
    }

    fn nf_word(&self, w: &[usize], steps: &mut usize, cap: usize) -> Result<Poly> {
        if let Some(p) = self.cache.borrow().get(w) {
            return Ok(p.clone());
        }
        let out = match self.leftmost(w) {
            None => {
                let mut p = Poly::new();
                p.insert(w.to_vec(), self.ctx.one());
                p
            }
            Some((pos, ri)) => {
                *steps += 1;
                if *steps > cap {
                    return Err(Error::StepCapExceeded(cap));
                }
                let rule = &self.rules[ri];
                let mut out = Poly::new();
                for (m, c) in &rule.rhs {
                    let nw = splice(w, pos, rule.lhs.len(), m);
                    for (u, x) in self.nf_word(&nw, steps, cap)? {
                        tensor_add(&mut out, u, c * &x);
                    }
                }
                out
            }
        };
        self.cache.borrow_mut().insert(w.to_vec(), out.clone());
        Ok(out)
    }

    /// Normal form of a word: rewrite the leftmost reducible factor until none is left.
    pub fn normal_form(&self, w: &[usize]) -> Result<Poly> {
        let mut steps = 0;
        self.nf_word(w, &mut steps, DEFAULT_STEP_CAP)
    }

    pub fn normal_form_capped(&self, w: &[usize], cap: usize) -> Result<Poly> {
        let mut steps = 0;
        self.nf_word(w, &mut steps, cap)
    }

    pub fn reduce(&self, p: &Poly) -> Result<Poly> {
        let mut steps = 0;
        let mut out = Poly::new();
        for (w, c) in p {
            for (u, x) in self.nf_word(w, &mut steps, DEFAULT_STEP_CAP)? {
                tensor_add(&mut out, u, c * &x);
            }
        }
        Ok(out)
    }

    /// Reduce with an arbitrary choice of occurrence at each step; `choose(n)` picks an index
    /// below n. The term rewritten is always the largest reducible one, so terms cannot pile
    /// up below it; which rule fires at which position is left to `choose`. No caching, for
    /// confluence tests.
    pub fn reduce_with(&self, p: &Poly, choose: &mut dyn FnMut(usize) -> usize, cap: usize) -> Result<Poly> {
        let occurrences = |w: &[usize]| -> Vec<(usize, usize)> {
            (0..w.len())
                .flat_map(|pos| {
                    self.rules.iter().enumerate().filter_map(move |(ri, r)| {
                        (w.len() - pos >= r.lhs.len() && w[pos..pos + r.lhs.len()] == r.lhs[..]).then_some((pos, ri))
                    })
                })
                .collect()
        };
        // reducible terms by order key; irreducible ones go straight to `out`
        let mut pending: BTreeMap<_, (ThetaScalar, Vec<(usize, usize)>)> = BTreeMap::new();
        let mut out = Poly::new();
        let push = |pending: &mut BTreeMap<_, (ThetaScalar, Vec<(usize, usize)>)>, out: &mut Poly, w: Word, c: ThetaScalar| {
            let occ = occurrences(&w);
            if occ.is_empty() {
                tensor_add(out, w, c);
                return;
            }
            let key = self.order.key(&w);
            match pending.entry(key) {
                Entry::Vacant(e) => {
                    e.insert((c, occ));
                }
                Entry::Occupied(mut e) => {
                    let sum = &e.get().0 + &c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        e.get_mut().0 = sum;
                    }
                }
            }
        };
        for (w, c) in p {
            push(&mut pending, &mut out, w.clone(), c.clone());
        }
        for _ in 0..cap {
            let Some((key, (c, occ))) = pending.pop_last() else {
                return Ok(out);
            };
            let w = key.3;
            let (pos, ri) = occ[choose(occ.len())];
            let rule = &self.rules[ri];
            for (m, x) in &rule.rhs {
                push(&mut pending, &mut out, splice(&w, pos, rule.lhs.len(), m), &c * x);
            }
        }
        Err(Error::StepCapExceeded(cap))
    }

    pub fn poly_text(&self, p: &Poly) -> String {
        poly_text(&self.generators, p)
    }

    pub fn word_text(&self, w: &[usize]) -> String {
        word_text(&self.generators, w)
    }

    /// Every overlap (suffix of one leading word = prefix of another) and inclusion
    /// ambiguity, as (word, (rule, position), (rule, position)).
    pub fn ambiguities(&self) -> Vec<(Word, (usize, usize), (usize, usize))> {
        let mut out = vec![];
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (a, b) = (&r1.lhs, &r2.lhs);
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        let mut w = a.clone();
                        w.extend_from_slice(&b[k..]);
                        out.push((w, (i, 0), (j, a.len() - k)));
                    }
                }
                if i != j && b.len() <= a.len() {
                    if let Some(q) = find_factor(a, b) {
                        out.push((a.clone(), (i, 0), (j, q)));
                    }
                }
            }
        }
        out
    }

    fn apply_at(&self, w: &[usize], (ri, pos): (usize, usize)) -> Result<Poly> {
        let r = &self.rules[ri];
        let mut p = Poly::new();
        for (m, c) in &r.rhs {
            tensor_add(&mut p, splice(w, pos, r.lhs.len(), m), c.clone());
        }
        self.reduce(&p)
    }

    /// Reduce every ambiguity both ways and compare.
    pub fn overlaps_resolvable(&self) -> Result<OverlapReport> {
        let amb = self.ambiguities();
        let mut failures = vec![];
        for (w, s1, s2) in &amb {
            let left = self.apply_at(w, *s1)?;
            let right = self.apply_at(w, *s2)?;
            if left != right {
                failures.push(OverlapFailure {
                    word: self.word_text(w),
                    rules: (self.rules[s1.0].label.clone(), self.rules[s2.0].label.clone()),
                    left: self.poly_text(&left),
                    right: self.poly_text(&right),
                });
            }
        }
        Ok(OverlapReport { checked: amb.len(), resolvable: failures.is_empty(), failures })
    }

    /// Add the differences of unresolved ambiguities as new rules until everything resolves,
    /// with at most `max_new` additions.
    pub fn complete(&mut self, max_new: usize) -> Result<usize> {
        let mut added = 0;
        loop {
            let amb = self.ambiguities();
            let mut diffs = vec![];
            for (w, s1, s2) in &amb {
                let d = poly_sub(&self.apply_at(w, *s1)?, &self.apply_at(w, *s2)?);
                if !d.is_empty() {
                    diffs.push((w.clone(), d));
                }
            }
            if diffs.is_empty() {
                return Ok(added);
            }
            let mut progressed = false;
            for (w, d) in diffs {
                let d = self.reduce(&d)?;
                if d.is_empty() {
                    continue;
                }
                if added >= max_new {
                    return Err(Error::CapExceeded { what: format!("completion of {}", self.name), needed: added + 1, cap: max_new });
                }
                let label = format!("overlap {}", self.word_text(&w));
                self.insert(&label, d)?;
                self.completion.push(label);
                added += 1;
                progressed = true;
            }
            if !progressed {
                return Ok(added);
            }
        }
    }

    /// Breadth-first enumeration of irreducible words (suffix-closed: a word is kept when
    /// its prefix is irreducible and no leading word is a suffix).
    pub fn irreducible_words(&self, cap: usize) -> Result<PbwBasis> {
        let mut words = vec![vec![]];
        let mut level: Vec<Word> = vec![vec![]];
        while !level.is_empty() {
            let mut next = vec![];
            for w in &level {
                for g in 0..self.ngens() {
                    let mut nw = w.clone();
                    nw.push(g);
                    if self.rules.iter().all(|r| !nw.ends_with(&r.lhs)) {
                        next.push(nw);
                    }
                }
            }
            if words.len() + next.len() > cap {
                return Err(Error::CapExceeded { what: format!("irreducible words of {}", self.name), needed: words.len() + next.len(), cap });
            }
            words.extend(next.iter().cloned());
            level = next;
        }
        Ok(PbwBasis { words, finite: true })
    }

    /// Finite or infinite, decided on the graph of irreducible words of length m−1 (m the
    /// longest leading word): the algebra is infinite-dimensional iff that graph has a cycle.
    pub fn dimension(&self, cap: usize) -> Result<Dimension> {
        let m = self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(1).max(2);
        let mut level: Vec<Word> = vec![vec![]];
        for _ in 0..m - 1 {
            let mut next = vec![];
            for w in &level {
                for g in 0..self.ngens() {
                    let mut nw = w.clone();
                    nw.push(g);
                    if self.rules.iter().all(|r| !nw.ends_with(&r.lhs)) {
                        next.push(nw);
                    }
                }
            }
            if next.len() > cap {
                return Err(Error::CapExceeded { what: format!("word graph of {}", self.name), needed: next.len(), cap });
            }
            level = next;
        }
        let index: HashMap<&Word, usize> = level.iter().enumerate().map(|(k, w)| (w, k)).collect();
        let succ: Vec<Vec<usize>> = level
            .iter()
            .map(|w| {
                (0..self.ngens())
                    .filter_map(|g| {
                        let mut nw = w.clone();
                        nw.push(g);
                        if !self.is_irreducible(&nw) {
                            return None;
                        }
                        index.get(&nw[1..].to_vec()).copied()
                    })
                    .collect()
            })
            .collect();
        if has_cycle(&succ) {
            return Ok(Dimension::Infinite);
        }
        Ok(Dimension::Finite(self.irreducible_words(cap)?.words.len()))
    }

    pub fn to_json(&self) -> Value {
        let poly = |p: &Poly| -> Value { p.iter().map(|(w, c)| json!([c.to_text(), self.word_text(w)])).collect() };
        json!({
            "name": self.name,
            "p": self.ctx.p(),
            "generators": self.generators,
            "order": self.order,
            "relations": self.relations.iter().map(|(l, p)| json!({"label": l, "poly": poly(p)})).collect::<Vec<_>>(),
            "rules": self.rules.iter().map(|r| json!({"label": r.label, "lhs": self.word_text(&r.lhs), "rhs": poly(&r.rhs)})).collect::<Vec<_>>(),
            "completion": self.completion,
        })
    }
}

fn has_cycle(succ: &[Vec<usize>]) -> bool {
    // iterative three-colour DFS
    let n = succ.len();
    let mut color = vec![0u8; n];
    for s in 0..n {
        if color[s] != 0 {
            continue;
        }
        let mut stack = vec![(s, 0usize)];
        color[s] = 1;
        while let Some((v, k)) = stack.pop() {
            if k < succ[v].len() {
                stack.push((v, k + 1));
                let u = succ[v][k];
                match color[u] {
                    1 => return true,
                    0 => {
                        color[u] = 1;
                        stack.push((u, 0));
                    }
                    _ => {}
                }
            } else {
                color[v] = 2;
            }
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapFailure {
    pub word: String,
    pub rules: (String, String),
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub checked: usize,
    pub resolvable: bool,
    pub failures: Vec<OverlapFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PbwBasis {
    pub words: Vec<Word>,
    pub finite: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

// ---------------------------------------------------------------------------
// builders

fn poly(terms: Vec<(ThetaScalar, Word)>) -> Poly {
    crate::nichols::tensor_from(terms)
}

fn apow(a: usize, k: i64, p: usize) -> Word {
    vec![a; k.rem_euclid(2 * p as i64) as usize]
}

fn cat(parts: &[&[usize]]) -> Word {
    parts.concat()
}

/// H_{p,-1} = ⟨a, b | a^{2p} = 1, b² = 0, ba = ξab⟩ in degree-lex order with a < b.
pub fn h_presentation(ctx: &ScalarContext) -> Result<Presentation> {
    let mut pr = Presentation::new(format!("H_{{{},-1}}", ctx.p()), ctx, &["a", "b"], WordOrder::deglex(2));
    push_h_relations(&mut pr, 0, 1)?;
    Ok(pr)
}

fn push_h_relations(pr: &mut Presentation, a: usize, b: usize) -> Result<()> {
    let ctx = pr.ctx.clone();
    let p = ctx.p();
    let one = ctx.one();
    pr.add_relation("a^{2p}", poly(vec![(one.clone(), vec![a; 2 * p]), (-one.clone(), vec![])]))?;
    pr.add_relation("b^2", poly(vec![(one.clone(), vec![b, b])]))?;
    pr.add_relation("ba", poly(vec![(one, vec![b, a]), (-ctx.xi(), vec![a, b])]))?;
    Ok(())
}

/// The coalgebra of a presented bialgebra, given on generators.
#[derive(Clone, Debug)]
pub struct CoalgebraData {
    /// Δ(g) as Σ c · u ⊗ v.
    pub delta: Vec<Vec<(ThetaScalar, Word, Word)>>,
    pub counit: Vec<ThetaScalar>,
}

fn h_coalgebra(ctx: &ScalarContext, n: usize, a: usize, b: usize, delta: &mut [Vec<(ThetaScalar, Word, Word)>], counit: &mut [ThetaScalar]) {
    let p = ctx.p();
    delta[a] = vec![(ctx.one(), vec![a], vec![a]), (ctx.lambda_inv(), vec![b], cat(&[&[b], &apow(a, p as i64, p)]))];
    delta[b] = vec![(ctx.one(), vec![b], apow(a, p as i64 + 1, p)), (ctx.one(), vec![a], vec![b])];
    counit[a] = ctx.one();
    counit[b] = ctx.zero();
    let _ = n;
}

/// The families of lifting algebras.
#[derive(Clone, Debug)]
pub enum Family {
    /// (i,j) ∈ Λ³: generators x, y, a, b; dimension 32p.
    A3 { i: i64, j: i64, mu: ThetaScalar },
    /// (i,j) ∈ Λ⁴: generators x, y (with z := xy), a, b; dimension 72p.
    A4 { i: i64, j: i64, mu: ThetaScalar },
    /// (i,j,k,ℓ) = (p−1, p/2, p−1, 3p/2): generators x, y, z, t, a, b; dimension 512p.
    A33 { mu: ThetaScalar, nu: ThetaScalar },
}

#[derive(Clone, Debug)]
pub struct Lifting {
    pub family: Family,
    pub pres: Presentation,
    pub coalg: CoalgebraData,
}

fn constraint(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::FamilyConstraintViolated(what.into()))
    }
}

pub fn in_lambda3(ctx: &ScalarContext, i: i64, j: i64) -> bool {
    let p = ctx.p() as i64;
    let m1 = ctx.int(-1);
    in_lambda(ctx.p(), i, j)
        && ctx.xi_pow((i + 1) * (p - j)) == m1
        && ctx.xi_pow(2 * (i + 1)).is_one()
        && (&ctx.one() + &ctx.xi_pow(2 * j)).is_zero()
}

pub fn lambda4_failure(p: usize, i: i64, j: i64) -> Option<&'static str> {
    let n = 2 * p as i64;
    let p = p as i64;
    if (p * i - j).rem_euclid(n) == 0 {
        Some("pi - j ≢ 0 mod 2p")
    } else if ((p + j) * (i - 1)).rem_euclid(n) != 0 {
        Some("(p+j)(i-1) ≡ 0 mod 2p")
    } else if (3 * i * j).rem_euclid(n) != 0 {
        Some("3ij ≡ 0 mod 2p")
    } else if (3 * (i + 1)).rem_euclid(n) != 0 {
        Some("3(i+1) ≡ 0 mod 2p")
    } else {
        None
    }
}

/// x₁ = θ⁻¹ξ^{p−1−i}((−1)^i + ξ^j), x₂ = θξ^{p+1+i}((−1)^i − ξ^j).
fn x1x2(ctx: &ScalarContext, i: i64, j: i64) -> (ThetaScalar, ThetaScalar) {
    let p = ctx.p() as i64;
    let s = ctx.sign(i);
    let x1 = &(&ctx.theta_inv() * &ctx.xi_pow(p - 1 - i)) * &(&s + &ctx.xi_pow(j));
    let x2 = &(&ctx.theta() * &ctx.xi_pow(p + 1 + i)) * &(&s - &ctx.xi_pow(j));
    (x1, x2)
}

/// Δ(x) = x⊗1 + a^{−j}⊗x + x₂θ⁻¹ba^{−1−j}⊗y and Δ(y) = y⊗1 + a^{p−j}⊗y + x₁θ⁻¹ba^{p−j−1}⊗x.
fn xy_coalgebra(ctx: &ScalarContext, (x, y, a, b): (usize, usize, usize, usize), i: i64, j: i64, delta: &mut [Vec<(ThetaScalar, Word, Word)>], counit: &mut [ThetaScalar]) {
    let p = ctx.p();
    let pi = p as i64;
    let (x1, x2) = x1x2(ctx, i, j);
    let ti = ctx.theta_inv();
    delta[x] = vec![
        (ctx.one(), vec![x], vec![]),
        (ctx.one(), apow(a, -j, p), vec![x]),
        (&x2 * &ti, cat(&[&[b], &apow(a, -1 - j, p)]), vec![y]),
    ];
    delta[y] = vec![
        (ctx.one(), vec![y], vec![]),
        (ctx.one(), apow(a, pi - j, p), vec![y]),
        (&x1 * &ti, cat(&[&[b], &apow(a, pi - j - 1, p)]), vec![x]),
    ];
    counit[x] = ctx.zero();
    counit[y] = ctx.zero();
}

/// The relations of a Λ³-type block in letters x, y (module index i):
/// ax = ξ^i xa, bx = ξ^i xb, ay + ya = λ⁻¹xba^p, by + yb = xa^{p+1}, x⁴ = 0,
/// xy + yx = μba^{−1}, y² + θ⁻²x² = ½μ(1 − a^p).
fn push_a3_block(pr: &mut Presentation, (x, y, a, b): (usize, usize, usize, usize), i: i64, mu: &ThetaScalar, tag: &str) -> Result<()> {
    let ctx = pr.ctx.clone();
    let p = ctx.p();
    let pi = p as i64;
    let one = ctx.one();
    let l = |s: &str| format!("{tag}{s}");
    pr.add_relation(&l("ax"), poly(vec![(one.clone(), vec![a, x]), (-ctx.xi_pow(i), vec![x, a])]))?;
    pr.add_relation(&l("bx"), poly(vec![(one.clone(), vec![b, x]), (-ctx.xi_pow(i), vec![x, b])]))?;
    pr.add_relation(
        &l("ay"),
        poly(vec![(one.clone(), vec![a, y]), (one.clone(), vec![y, a]), (-ctx.lambda_inv(), cat(&[&[x, b], &apow(a, pi, p)]))]),
    )?;
    pr.add_relation(&l("by"), poly(vec![(one.clone(), vec![b, y]), (one.clone(), vec![y, b]), (-one.clone(), cat(&[&[x], &apow(a, pi + 1, p)]))]))?;
    pr.add_relation(&l("x^4"), poly(vec![(one.clone(), vec![x; 4])]))?;
    pr.add_relation(&l("xy"), poly(vec![(one.clone(), vec![x, y]), (one.clone(), vec![y, x]), (-mu.clone(), cat(&[&[b], &apow(a, -1, p)]))]))?;
    let half = &ctx.ratio(1, 2) * mu;
    pr.add_relation(
        &l("y^2"),
        poly(vec![(one.clone(), vec![y, y]), (ctx.theta_inv_sq(), vec![x, x]), (-half.clone(), vec![]), (half, apow(a, pi, p))]),
    )?;
    Ok(())
}

/// Build a lifting algebra with its coalgebra on generators.
pub fn build_lifting(ctx: &ScalarContext, family: Family) -> Result<Lifting> {
    let p = ctx.p();
    let pi = p as i64;
    let one = ctx.one();
    match &family {
        Family::A3 { i, j, mu } => {
            let (i, j) = (*i, *j);
            if !in_lambda(p, i, j) {
                return Err(Error::NotInLambda { i, j });
            }
            constraint(in_lambda3(ctx, i, j), "(i,j) ∈ Λ³: 1 + ξ^{(p-j)(i+1)} = 0, ξ^{2(i+1)} = 1, 1 + ξ^{2j} = 0")?;
            // order y < x < a < b
            let order = WordOrder { weight: vec![1, 1, 0, 0], skeleton_rank: vec![2, 1, 0, 0] };
            let mut pr = Presentation::new(format!("A_{{{i},{j}}}(mu={})", mu.to_text()), ctx, &["y", "x", "a", "b"], order);
            let (y, x, a, b) = (0, 1, 2, 3);
            push_h_relations(&mut pr, a, b)?;
            push_a3_block(&mut pr, (x, y, a, b), i, mu, "")?;
            let mut delta = vec![vec![]; 4];
            let mut counit = vec![ctx.zero(); 4];
            h_coalgebra(ctx, 4, a, b, &mut delta, &mut counit);
            xy_coalgebra(ctx, (x, y, a, b), i, j, &mut delta, &mut counit);
            Ok(Lifting { family, pres: pr, coalg: CoalgebraData { delta, counit } })
        }
        Family::A4 { i, j, mu } => {
            let (i, j) = (*i, *j);
            if let Some(f) = lambda4_failure(p, i, j) {
                if f.starts_with("pi") {
                    return Err(Error::NotInLambda { i, j });
                }
                return Err(Error::FamilyConstraintViolated(f.into()));
            }
            // order y < z < x < b < a with z := xy atomic
            let order = WordOrder { weight: vec![1, 2, 1, 0, 0], skeleton_rank: vec![3, 2, 1, 0, 0] };
            let mut pr = Presentation::new(format!("A_{{{i},{j}}}(mu={})", mu.to_text()), ctx, &["y", "z", "x", "b", "a"], order);
            let (y, z, x, b, a) = (0, 1, 2, 3, 4);
            push_h_relations(&mut pr, a, b)?;
            pr.add_relation("z:=xy", poly(vec![(one.clone(), vec![x, y]), (-one.clone(), vec![z])]))?;
            pr.add_relation("ax", poly(vec![(one.clone(), vec![a, x]), (-ctx.xi_pow(i), vec![x, a])]))?;
            pr.add_relation("bx", poly(vec![(one.clone(), vec![b, x]), (-ctx.xi_pow(i), vec![x, b])]))?;
            pr.add_relation(
                "ay",
                poly(vec![(one.clone(), vec![a, y]), (-ctx.xi_pow(i + 1), vec![y, a]), (-ctx.lambda_inv(), cat(&[&[x, b], &apow(a, pi, p)]))]),
            )?;
            pr.add_relation(
                "by",
                poly(vec![(one.clone(), vec![b, y]), (-ctx.xi_pow(i + 1), vec![y, b]), (-one.clone(), cat(&[&[x], &apow(a, pi + 1, p)]))]),
            )?;
            pr.add_relation("x^3", poly(vec![(one.clone(), vec![x; 3])]))?;
            pr.add_relation(
                "x^2y",
                poly(vec![
                    (one.clone(), vec![x, x, y]),
                    (&ctx.sign(i + 1) * &ctx.xi_pow(2 * j), vec![x, y, x]),
                    (ctx.xi_pow(-2 * j), vec![y, x, x]),
                ]),
            )?;
            let al = {
                let t = &ctx.theta_inv_sq() * &ctx.xi_pow(-(i + 1) * (2 + j));
                &t * &(&one + &ctx.xi_pow(pi * i + j))
            };
            let (xj, x2j) = (ctx.xi_pow(-j), ctx.xi_pow(-2 * j));
            pr.add_relation(
                "y^3",
                poly(vec![
                    (one.clone(), vec![y; 3]),
                    (-(&(&al * &ctx.sign(i)) * &(&xj - &x2j)), vec![x, x, y]),
                    (-(&al * &(&xj + &x2j)), vec![y, x, x]),
                    (-al.clone(), vec![x, y, x]),
                    (-mu.clone(), vec![]),
                    (mu.clone(), apow(a, pi, p)),
                ]),
            )?;
            let c = &(&(&ctx.int(-2) * mu) * &ctx.xi_pow(1 + i + j)) * &(&ctx.sign(i) - &ctx.xi_pow(j));
            pr.add_relation(
                "xy^2",
                poly(vec![
                    (one.clone(), vec![x, y, y]),
                    (ctx.sign(i + 1), vec![y, x, y]),
                    (one.clone(), vec![y, y, x]),
                    (-c, cat(&[&[b], &apow(a, -1, p)])),
                ]),
            )?;
            let mut delta = vec![vec![]; 5];
            let mut counit = vec![ctx.zero(); 5];
            h_coalgebra(ctx, 5, a, b, &mut delta, &mut counit);
            xy_coalgebra(ctx, (x, y, a, b), i, j, &mut delta, &mut counit);
            // Δ(z) = Δ(x)Δ(y), expanded with z kept as a word xy
            delta[z] = vec![];
            for (c1, u1, v1) in delta[x].clone() {
                for (c2, u2, v2) in delta[y].clone() {
                    delta[z].push((&c1 * &c2, cat(&[&u1, &u2]), cat(&[&v1, &v2])));
                }
            }
            counit[z] = ctx.zero();
            pr.complete(COMPLETION_CAP)?;
            Ok(Lifting { family, pres: pr, coalg: CoalgebraData { delta, counit } })
        }
        Family::A33 { mu, nu } => {
            constraint(p % 2 == 0 && (p / 2) % 2 == 1, "p even and p/2 odd")?;
            let (i, j, k, l) = (pi - 1, pi / 2, pi - 1, 3 * pi / 2);
            let order = WordOrder { weight: vec![1, 1, 1, 1, 0, 0], skeleton_rank: vec![4, 3, 2, 1, 0, 0] };
            let mut pr = Presentation::new(
                format!("A_{{{i},{j},{k},{l}}}(mu={}, nu={})", mu.to_text(), nu.to_text()),
                ctx,
                &["t", "z", "y", "x", "a", "b"],
                order,
            );
            let (t, z, y, x, a, b) = (0, 1, 2, 3, 4, 5);
            push_h_relations(&mut pr, a, b)?;
            push_a3_block(&mut pr, (x, y, a, b), i, mu, "")?;
            push_a3_block(&mut pr, (z, t, a, b), k, nu, "2:")?;
            pr.add_relation("zx", poly(vec![(one.clone(), vec![z, x]), (-ctx.xi_pow(pi / 2), vec![x, z])]))?;
            pr.add_relation(
                "tx",
                poly(vec![(one.clone(), vec![t, x]), (one.clone(), vec![z, y]), (one.clone(), vec![y, z]), (one.clone(), vec![x, t])]),
            )?;
            pr.add_relation(
                "ty",
                poly(vec![
                    (one.clone(), vec![t, y]),
                    (one.clone(), vec![y, t]),
                    (&ctx.theta_inv_sq() * &(&one + &ctx.xi_pow(pi / 2)), vec![x, z]),
                ]),
            )?;
            let mut delta = vec![vec![]; 6];
            let mut counit = vec![ctx.zero(); 6];
            h_coalgebra(ctx, 6, a, b, &mut delta, &mut counit);
            xy_coalgebra(ctx, (x, y, a, b), i, j, &mut delta, &mut counit);
            xy_coalgebra(ctx, (z, t, a, b), k, l, &mut delta, &mut counit);
            pr.complete(COMPLETION_CAP)?;
            Ok(Lifting { family, pres: pr, coalg: CoalgebraData { delta, counit } })
        }
    }
}

/// B(V)#H presented by generators: the letters of V (in `letters` order, mapped through
/// `spec` names), a and b, with H's relations, the cross relations h·v = (h₁·v)h₂ read off the
/// YD action, and the Nichols relations of `spec`. The coalgebra is Δ(v) = v⊗1 + v₋₁⊗v₀.
///
/// `letters[s]` is the presentation generator used for basis vector s of `m`; the remaining
/// two generators must be named "a" and "b".
pub fn bosonization_presentation(m: &YDModule, spec: &PresentationSpec, mut pr: Presentation, letters: &[usize]) -> Result<(Presentation, CoalgebraData)> {
    let ctx = m.ctx().clone();
    let p = ctx.p();
    let n = 2 * p;
    let (a, b) = (pr.gen("a"), pr.gen("b"));
    if letters.len() != m.dim || spec.dim_v() != m.dim {
        return Err(Error::Shape("letters do not match the module".into()));
    }
    // H basis b^e a^k (index e·2p + k) as a word
    let hword = |g: usize| -> Word { cat(&[&vec![b; g / n], &vec![a; g % n]]) };
    push_h_relations(&mut pr, a, b)?;
    let h = &m.hopf;
    for (hname, hl, hidx) in [("a", a, 1usize), ("b", b, n)] {
        for s in 0..m.dim {
            let mut rel = Poly::new();
            tensor_add(&mut rel, vec![hl, letters[s]], ctx.one());
            for (uv, c) in &h.comult[hidx] {
                let (h1, h2) = (uv / h.dim, uv % h.dim);
                for (t, x) in &m.action[h1][s] {
                    tensor_add(&mut rel, cat(&[&[letters[*t]], &hword(h2)]), -(c * x));
                }
            }
            pr.add_relation(&format!("{hname}{}", pr.generators[letters[s]]), rel)?;
        }
    }
    for (label, rel) in &spec.relations {
        let mapped = rel.iter().map(|(w, c)| (c.clone(), w.iter().map(|&s| letters[s]).collect())).collect();
        pr.add_relation(&format!("B:{label}"), poly(mapped))?;
    }
    let g = pr.ngens();
    let mut delta = vec![vec![]; g];
    let mut counit = vec![ctx.zero(); g];
    h_coalgebra(&ctx, g, a, b, &mut delta, &mut counit);
    for s in 0..m.dim {
        let mut d = vec![(ctx.one(), vec![letters[s]], vec![])];
        for (hh, t, c) in m.coaction_terms(s) {
            d.push((c, hword(hh), vec![letters[t]]));
        }
        delta[letters[s]] = d;
        counit[letters[s]] = ctx.zero();
    }
    Ok((pr, CoalgebraData { delta, counit }))
}

// ---------------------------------------------------------------------------
// Hopf structure on a presented algebra

#[derive(Clone, Debug)]
pub struct PresentedHopfCheck {
    pub algebra: HopfAlgebra,
    pub report: HopfReport,
    pub basis: Vec<Word>,
}

/// Structure constants on the irreducible words: product by normal form, Δ extended
/// multiplicatively from the generators, ε multiplicatively; antipode solved as the
/// convolution inverse of id. Every axiom is then checked exactly.
pub fn hopf_check_presented(pres: &Presentation, coalg: &CoalgebraData, cap: usize) -> Result<PresentedHopfCheck> {
    let ov = pres.overlaps_resolvable()?;
    if !ov.resolvable {
        return Err(Error::InvalidParameter(format!("{} has {} unresolved ambiguities", pres.name, ov.failures.len())));
    }
    let basis = pres.irreducible_words(cap)?.words;
    let d = basis.len();
    let index: HashMap<&Word, usize> = basis.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let ctx = &pres.ctx;
    let to_vec = |p: &Poly| -> SparseVec {
        let mut v: SparseVec = p.iter().map(|(w, c)| (index[w], c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    };
    let mut mult = vec![vec![]; d * d];
    for (s, u) in basis.iter().enumerate() {
        for (t, v) in basis.iter().enumerate() {
            mult[s * d + t] = to_vec(&pres.normal_form(&cat(&[u, v]))?);
        }
    }
    let mut gen_delta = vec![];
    for terms in &coalg.delta {
        let mut acc = BTreeMap::new();
        for (c, u, v) in terms {
            for (k1, x) in to_vec(&pres.normal_form(u)?) {
                for (k2, y) in to_vec(&pres.normal_form(v)?) {
                    acc_add(&mut acc, k1 * d + k2, &(c * &x) * &y);
                }
            }
        }
        gen_delta.push(from_map(acc));
    }
    // Δ(g·w) = Δ(g)Δ(w); suffixes of irreducible words are irreducible
    let mut comult: Vec<SparseVec> = vec![vec![]; d];
    let mut counit = vec![ctx.zero(); d];
    for (s, w) in basis.iter().enumerate() {
        if w.is_empty() {
            comult[s] = vec![(0, ctx.one())];
            counit[s] = ctx.one();
            continue;
        }
        let rest = index[&w[1..].to_vec()];
        comult[s] = tensor_mul_with(&mult, d, &gen_delta[w[0]], &comult[rest]);
        counit[s] = &coalg.counit[w[0]] * &counit[rest];
    }
    let labels: Vec<String> = basis.iter().map(|w| pres.word_text(w)).collect();
    let gens: Vec<usize> = (0..pres.ngens()).filter_map(|g| index.get(&vec![g]).copied()).collect();
    let unit = vec![(0, ctx.one())];
    let identity: LinMap = (0..d).map(|k| vec![(k, ctx.one())]).collect();
    let probe = HopfAlgebra::from_parts(&pres.name, ctx, labels.clone(), mult.clone(), unit.clone(), comult.clone(), counit.clone(), identity, gens.clone())?;
    let pre = verify_hopf(&probe)?;
    if let Some(f) = pre.checks.iter().find(|c| !c.pass && !c.axiom.starts_with("antipode")) {
        return Err(Error::BialgebraAxiomFailed(format!("{}: {}", f.axiom, f.witness.clone().unwrap_or_default())));
    }
    let s = solve_antipode(&probe, d + 1)?;
    let algebra = HopfAlgebra::from_parts(&pres.name, ctx, labels, mult, unit, comult, counit, s, gens)
        .map_err(|e| Error::AntipodeNotFound(format!("convolution inverse is not bijective: {e}")))?;
    let report = verify_hopf(&algebra)?;
    if let Some(f) = report.checks.iter().find(|c| !c.pass) {
        return Err(Error::AntipodeNotFound(format!("{}: {}", f.axiom, f.witness.clone().unwrap_or_default())));
    }
    Ok(PresentedHopfCheck { algebra, report, basis })
}

/// Images of the basis words of `src` under the algebra map determined by generator images.
pub fn extend_on_words(basis: &[Word], gen_images: &[SparseVec], tgt: &HopfAlgebra) -> LinMap {
    basis
        .iter()
        .map(|w| {
            let mut v = tgt.unit.clone();
            for &g in w {
                v = tgt.mul(&v, &gen_images[g]);
            }
            v
        })
        .collect()
}

/// Do two presentations (on the same generators) define the same ideal? Each relation of
/// one must reduce to zero modulo the rules of the other; both must be confluent.
pub fn same_ideal(p1: &Presentation, p2: &Presentation) -> Result<bool> {
    for (pa, pb) in [(p1, p2), (p2, p1)] {
        for (_, r) in &pa.relations {
            if !pb.reduce(r)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Leading words of the rule set, sorted.
pub fn leading_words(p: &Presentation) -> BTreeSet<Word> {
    p.rules.iter().map(|r| r.lhs.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::DEFAULT_CAP;
    use crate::hopf::{bosonization, build_h, check_morphism};
    use crate::nichols::{nichols_braided_hopf, presentation_lambda2, NicholsQuotient};
    use crate::ydmod::{braiding, make_two_dim, shared_h};

    fn ctx(p: usize) -> ScalarContext {
        ScalarContext::new(p).unwrap()
    }

    #[test]
    fn h_presentation_basics() {
        let k = ctx(3);
        let h = h_presentation(&k).unwrap();
        assert_eq!(h.normal_form(&[1, 0]).unwrap(), poly(vec![(k.xi(), vec![0, 1])]));
        assert!(h.normal_form(&[1, 1]).unwrap().is_empty());
        assert!(h.overlaps_resolvable().unwrap().resolvable);
        let words = h.irreducible_words(100).unwrap().words;
        assert_eq!(words.len(), 12);
        assert!(words.iter().all(|w| w.windows(2).all(|p| p[0] <= p[1])));
        assert_eq!(h.dimension(100).unwrap(), Dimension::Finite(12));
        let mut free = Presentation::new("free", &k, &["u"], WordOrder::deglex(1));
        free.add_relation("none", Poly::new()).unwrap();
        assert_eq!(free.dimension(100).unwrap(), Dimension::Infinite);
    }

    #[test]
    fn a3_p2_dimension_and_overlaps() {
        let k = ctx(2);
        for j in [1, 3] {
            for mu in [0, 1, 2] {
                let l = build_lifting(&k, Family::A3 { i: 1, j, mu: k.int(mu) }).unwrap();
                let ov = l.pres.overlaps_resolvable().unwrap();
                assert!(ov.resolvable, "{:?}", ov.failures);
                assert_eq!(l.pres.dimension(DEFAULT_CAP).unwrap(), Dimension::Finite(64));
                // (xy)y = x(y²)
                let (y, x) = (0, 1);
                let lhs = l.pres.reduce(&l.pres.normal_form(&[x, y]).unwrap().into_iter().map(|(w, c)| (cat(&[&w, &[y]]), c)).collect()).unwrap();
                let rhs = l.pres.reduce(&l.pres.normal_form(&[y, y]).unwrap().into_iter().map(|(w, c)| (cat(&[&[x], &w]), c)).collect()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(matches!(build_lifting(&k, Family::A3 { i: 1, j: 2, mu: k.zero() }), Err(Error::FamilyConstraintViolated(_)) | Err(Error::NotInLambda { .. })));
    }

    #[test]
    fn corrupted_presentation_is_detected() {
        let k = ctx(2);
        let l = build_lifting(&k, Family::A3 { i: 1, j: 1, mu: k.one() }).unwrap();
        let mut pr = Presentation::new("corrupt", &k, &["y", "x", "a", "b"], l.pres.order.clone());
        for (lab, r) in &l.pres.relations {
            if lab == "x^4" {
                pr.add_relation("x^3", poly(vec![(k.one(), vec![1; 3])])).unwrap();
            } else {
                pr.add_relation(lab, r.clone()).unwrap();
            }
        }
        assert!(!pr.overlaps_resolvable().unwrap().resolvable);
    }

    #[test]
    fn a3_hopf_and_bosonization_iso() {
        let k = ctx(2);
        let hh = shared_h(&k).unwrap();
        let m = make_two_dim(&hh, 1, 1).unwrap();
        let q = NicholsQuotient::build(&braiding(&m), 10, DEFAULT_CAP).unwrap();
        let r = nichols_braided_hopf(&m, &q).unwrap();
        let boson = bosonization(&r, &hh).unwrap();
        let l = build_lifting(&k, Family::A3 { i: 1, j: 1, mu: k.zero() }).unwrap();
        let chk = hopf_check_presented(&l.pres, &l.coalg, DEFAULT_CAP).unwrap();
        assert_eq!(chk.algebra.dim, 64);
        let dh = hh.dim;
        let v1 = q.levels[1].words.iter().position(|w| w == &vec![0]).unwrap() + 1;
        let v2 = q.levels[1].words.iter().position(|w| w == &vec![1]).unwrap() + 1;
        let gens = vec![vec![(v2 * dh, k.one())], vec![(v1 * dh, k.one())], vec![(1, k.one())], vec![(2 * k.p(), k.one())]];
        let images = extend_on_words(&chk.basis, &gens, &boson);
        check_morphism(&chk.algebra, &boson, &images, true).unwrap();
        // μ = 0 relations agree with the bosonization presentation
        let spec = presentation_lambda2(&k, 1, 1).unwrap();
        let blank = Presentation::new("B(V)#H", &k, &["y", "x", "a", "b"], l.pres.order.clone());
        let (bp, _) = bosonization_presentation(&m, &spec, blank, &[1, 0]).unwrap();
        assert!(same_ideal(&bp, &l.pres).unwrap());
        let _ = build_h(&k).unwrap();
    }

    #[test]
    fn a3_mu1_hopf_and_corrupted_delta() {
        let k = ctx(2);
        let l = build_lifting(&k, Family::A3 { i: 1, j: 1, mu: k.one() }).unwrap();
        let chk = hopf_check_presented(&l.pres, &l.coalg, DEFAULT_CAP).unwrap();
        assert!(chk.report.all_pass());
        let mut bad = l.coalg.clone();
        bad.delta[1].pop();
        assert!(matches!(hopf_check_presented(&l.pres, &bad, DEFAULT_CAP), Err(Error::BialgebraAxiomFailed(_))));
    }
    #[test]
    fn a4_p3_dimension() {
        let k = ctx(3);
        for mu in [0, 1, -1] {
            let l = build_lifting(&k, Family::A4 { i: 1, j: 2, mu: k.int(mu) }).unwrap();
            assert!(l.pres.overlaps_resolvable().unwrap().resolvable);
            assert_eq!(l.pres.completion.len(), 3);
            assert_eq!(l.pres.dimension(DEFAULT_CAP).unwrap(), Dimension::Finite(72 * 3));
        }
        assert!(matches!(build_lifting(&k, Family::A4 { i: 1, j: 1, mu: k.zero() }), Err(Error::FamilyConstraintViolated(_))));
    }

    #[test]
    fn a4_p3_hopf() {
        let k = ctx(3);
        let l = build_lifting(&k, Family::A4 { i: 1, j: 2, mu: k.one() }).unwrap();
        let chk = hopf_check_presented(&l.pres, &l.coalg, DEFAULT_CAP).unwrap();
        assert_eq!(chk.algebra.dim, 216);
        assert!(chk.report.all_pass());
    }

    #[test]
    fn a33_p2_dimension() {
        let k = ctx(2);
        for mu in [0, 1, -1] {
            for nu in [0, 1, -1] {
                let l = build_lifting(&k, Family::A33 { mu: k.int(mu), nu: k.int(nu) }).unwrap();
                assert!(l.pres.relations.iter().any(|(lab, r)| lab == "tx" && r.len() == 4));
                assert!(l.pres.overlaps_resolvable().unwrap().resolvable);
                assert_eq!(l.pres.dimension(DEFAULT_CAP).unwrap(), Dimension::Finite(1024));
            }
        }
        assert!(matches!(build_lifting(&ctx(3), Family::A33 { mu: ctx(3).zero(), nu: ctx(3).zero() }), Err(Error::FamilyConstraintViolated(_))));
    }
}
